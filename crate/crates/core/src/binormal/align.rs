use nalgebra::{Matrix3, Vector3};

use crate::binormal::vec3::Vec3;
use crate::error::{usage, Result};
use crate::scalar::Real;

/// Least-squares rigid motion `q ≈ R p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidFit {
    pub rotation: [[f64; 3]; 3],
    pub translation: [f64; 3],
    pub max_error: f64,
    pub rms_error: f64,
}

impl RigidFit {
    pub fn apply(&self, p: [f64; 3]) -> [f64; 3] {
        let r = &self.rotation;
        let mut out = self.translation;
        for (i, o) in out.iter_mut().enumerate() {
            *o += r[i][0] * p[0] + r[i][1] * p[1] + r[i][2] * p[2];
        }
        out
    }
}

/// Kabsch fit of `p` onto `q` (proper rotations only).
pub fn rigid_fit<T: Real>(p: &[Vec3<T>], q: &[Vec3<T>]) -> Result<RigidFit> {
    if p.len() != q.len() || p.len() < 3 {
        return usage("rigid fit needs two equal sets of at least three points");
    }
    let v = |x: &Vec3<T>| Vector3::new(x[0].to_f64().unwrap_or(0.0), x[1].to_f64().unwrap_or(0.0), x[2].to_f64().unwrap_or(0.0));
    let n = p.len() as f64;
    let cp = p.iter().map(v).sum::<Vector3<f64>>() / n;
    let cq = q.iter().map(v).sum::<Vector3<f64>>() / n;
    let mut h = Matrix3::zeros();
    for (a, b) in p.iter().zip(q) {
        h += (v(a) - cp) * (v(b) - cq).transpose();
    }
    let svd = h.svd(true, true);
    let (u, vt) = match (svd.u, svd.v_t) {
        (Some(u), Some(vt)) => (u, vt),
        _ => return usage("rigid fit failed to decompose"),
    };
    let d = (vt.transpose() * u.transpose()).determinant().signum();
    let r = vt.transpose() * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, d)) * u.transpose();
    let t = cq - r * cp;
    let mut max_error: f64 = 0.0;
    let mut sq = 0.0;
    for (a, b) in p.iter().zip(q) {
        let e = (r * v(a) + t - v(b)).norm();
        max_error = max_error.max(e);
        sq += e * e;
    }
    let mut rotation = [[0.0; 3]; 3];
    for (i, row) in rotation.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = r[(i, j)];
        }
    }
    Ok(RigidFit { rotation, translation: [t[0], t[1], t[2]], max_error, rms_error: (sq / n).sqrt() })
}
