//! Scenario files: a model, an initial-data family with parameters, and
//! grid, integrator, event and output settings.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{schema, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Pointvortex,
    Filaments,
    Polygonflow,
    Collapse,
    Binormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub length: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSpec {
    pub dt: f64,
    pub t_end: f64,
    pub sample_every: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EventSpec {
    /// Filament collision when the separation ratio drops below this.
    pub collision_ratio: f64,
    /// Absolute collision distance (point vortices and filaments).
    pub collision_eps: Option<f64>,
    /// Polygon profile vanishes when `min |Φ|` drops below this.
    pub vanish_eps: f64,
    /// Step past thresholds to locate the closest approach.
    pub refine: bool,
}

impl Default for EventSpec {
    fn default() -> Self {
        EventSpec { collision_ratio: 0.05, collision_eps: None, vanish_eps: 1e-2, refine: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    pub timeseries: String,
    pub summary: String,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { timeseries: "timeseries.csv".into(), summary: "summary.json".into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Polygon {
    pub n: usize,
    pub gamma: f64,
    pub radius: f64,
    pub center_gamma: Option<f64>,
}

impl Default for Polygon {
    fn default() -> Self {
        Polygon { n: 3, gamma: 1.0, radius: 1.0, center_gamma: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoParams {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Custom {
    pub positions: Vec<[f64; 2]>,
    pub circulations: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PolygonFilaments {
    pub n: usize,
    pub radius: f64,
}

impl Default for PolygonFilaments {
    fn default() -> Self {
        PolygonFilaments { n: 3, radius: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShiftedGaussian {
    pub n: usize,
    pub amplitude: [f64; 2],
    pub width: f64,
}

impl Default for ShiftedGaussian {
    fn default() -> Self {
        ShiftedGaussian { n: 3, amplitude: [0.1, 0.0], width: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GaussianPolygon {
    pub n: usize,
    pub radius: f64,
    /// Size of the orthogonal tail added to the collapsing profile.
    pub tail: f64,
}

impl Default for GaussianPolygon {
    fn default() -> Self {
        GaussianPolygon { n: 4, radius: 1.0, tail: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShiftedTriangle {
    pub amplitude: [f64; 2],
    pub width: f64,
}

impl Default for ShiftedTriangle {
    fn default() -> Self {
        ShiftedTriangle { amplitude: [0.3, 0.1], width: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Parallelogram {
    pub u1: [f64; 2],
    pub u2: [f64; 2],
    pub width: f64,
}

impl Default for Parallelogram {
    fn default() -> Self {
        Parallelogram { u1: [0.1, 0.0], u2: [0.0, 0.05], width: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Omega {
    pub omega: f64,
}

impl Default for Omega {
    fn default() -> Self {
        Omega { omega: 1.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Collapsing {
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Bump {
    pub omega: f64,
    pub amplitude: f64,
    pub width: f64,
}

impl Default for Bump {
    fn default() -> Self {
        Bump { omega: 1.0, amplitude: 0.1, width: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Wave {
    pub c2: f64,
    pub omega: f64,
    /// Also build the twisted helix with this many filaments (0 for none).
    pub helix: usize,
}

impl Default for Wave {
    fn default() -> Self {
        Wave { c2: 1.95, omega: 1.0, helix: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Triangle {
    pub r0: f64,
    pub alpha: f64,
    pub kappa0: f64,
}

impl Default for Triangle {
    fn default() -> Self {
        Triangle { r0: 0.9, alpha: 3.0, kappa0: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Amplitude {
    pub p: f64,
    pub tol: f64,
}

impl Default for Amplitude {
    fn default() -> Self {
        Amplitude { p: 0.5, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SelfSimilar {
    pub a: f64,
    pub t0: f64,
    /// Arclength half-width of the open curve.
    pub s_max: f64,
    pub points: usize,
    /// Half-width of the comparison window.
    pub window: f64,
}

impl Default for SelfSimilar {
    fn default() -> Self {
        SelfSimilar { a: 0.5, t0: 1.0, s_max: 40.0, points: 4001, window: 10.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Corner {
    pub a: f64,
    pub window: f64,
    pub spacing: f64,
}

impl Default for Corner {
    fn default() -> Self {
        Corner { a: 0.5, window: 200.0, spacing: 0.01 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Circle {
    pub radius: f64,
    pub points: usize,
}

impl Default for Circle {
    fn default() -> Self {
        Circle { radius: 1.0, points: 128 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Helix {
    pub radius: f64,
    /// Angular advance per unit arclength.
    pub rate: f64,
    pub points: usize,
}

impl Default for Helix {
    fn default() -> Self {
        Helix { radius: 0.5, rate: 1.0, points: 128 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Knot {
    pub points: usize,
}

impl Default for Knot {
    fn default() -> Self {
        Knot { points: 256 }
    }
}

/// Initial-data families with their parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    VortexPolygon(Polygon),
    ThreeVortexCollapse,
    VortexCustom(Custom),
    EmptyPerturbation(PolygonFilaments),
    ShiftedGaussian(ShiftedGaussian),
    GaussianPolygonCollapse(GaussianPolygon),
    ShiftedTriangle(ShiftedTriangle),
    Parallelogram(Parallelogram),
    GaussianCollapse(Collapsing),
    GroundState(Omega),
    ProfileBump(Bump),
    TravelingWave(Wave),
    SelfSimilarTriangle(Triangle),
    CwAmplitude(Amplitude),
    SelfSimilarCurve(SelfSimilar),
    CornerAngle(Corner),
    CircleCurve(Circle),
    HelixCurve(Helix),
    KnotCurve(Knot),
}

/// Families accepted for each model.
pub const FAMILIES: &[(Model, &[&str])] = &[
    (Model::Pointvortex, &["polygon", "three-vortex-collapse", "custom"]),
    (Model::Filaments, &["empty-perturbation", "shifted-gaussian", "gaussian-polygon-collapse", "shifted-triangle", "parallelogram"]),
    (Model::Polygonflow, &["gaussian-collapse", "ground-state", "bump", "traveling-wave"]),
    (Model::Collapse, &["self-similar-triangle", "cw-amplitude"]),
    (Model::Binormal, &["self-similar", "corner", "circle", "helix", "knot"]),
];

fn typed<P: DeserializeOwned>(params: &Value) -> CliResult<P> {
    let value = if params.is_null() { Value::Object(Default::default()) } else { params.clone() };
    serde_path_to_error::deserialize(value).map_err(|e| CliError::Schema {
        path: format!("params.{}", e.path()),
        message: e.inner().to_string(),
    })
}

/// `given` with any missing keys taken from `default`.
fn overlay<T: Serialize + DeserializeOwned>(default: T, given: Option<Value>, prefix: &str) -> CliResult<T> {
    let Some(given) = given else { return Ok(default) };
    let Value::Object(fields) = given else { return schema(prefix, "expected an object") };
    let mut merged = serde_json::to_value(default).map_err(|e| CliError::Schema { path: prefix.into(), message: e.to_string() })?;
    if let Value::Object(m) = &mut merged {
        m.extend(fields);
    }
    serde_path_to_error::deserialize(merged).map_err(|e| CliError::Schema {
        path: format!("{prefix}.{}", e.path()),
        message: e.inner().to_string(),
    })
}

impl Family {
    fn parse(model: Model, name: &str, params: &Value) -> CliResult<Family> {
        let allowed = FAMILIES.iter().find(|(m, _)| *m == model).map(|(_, f)| *f).unwrap_or(&[]);
        if !allowed.contains(&name) {
            return schema("family", format!("unknown family `{name}` for this model; expected one of {allowed:?}"));
        }
        Ok(match name {
            "polygon" => Family::VortexPolygon(typed(params)?),
            "three-vortex-collapse" => {
                typed::<NoParams>(params)?;
                Family::ThreeVortexCollapse
            }
            "custom" => Family::VortexCustom(typed(params)?),
            "empty-perturbation" => Family::EmptyPerturbation(typed(params)?),
            "shifted-gaussian" => Family::ShiftedGaussian(typed(params)?),
            "gaussian-polygon-collapse" => Family::GaussianPolygonCollapse(typed(params)?),
            "shifted-triangle" => Family::ShiftedTriangle(typed(params)?),
            "parallelogram" => Family::Parallelogram(typed(params)?),
            "gaussian-collapse" => Family::GaussianCollapse(typed(params)?),
            "ground-state" => Family::GroundState(typed(params)?),
            "bump" => Family::ProfileBump(typed(params)?),
            "traveling-wave" => Family::TravelingWave(typed(params)?),
            "self-similar-triangle" => Family::SelfSimilarTriangle(typed(params)?),
            "cw-amplitude" => Family::CwAmplitude(typed(params)?),
            "self-similar" => Family::SelfSimilarCurve(typed(params)?),
            "corner" => Family::CornerAngle(typed(params)?),
            "circle" => Family::CircleCurve(typed(params)?),
            "helix" => Family::HelixCurve(typed(params)?),
            "knot" => Family::KnotCurve(typed(params)?),
            _ => unreachable!("family list and parser disagree"),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::VortexPolygon(_) => "polygon",
            Family::ThreeVortexCollapse => "three-vortex-collapse",
            Family::VortexCustom(_) => "custom",
            Family::EmptyPerturbation(_) => "empty-perturbation",
            Family::ShiftedGaussian(_) => "shifted-gaussian",
            Family::GaussianPolygonCollapse(_) => "gaussian-polygon-collapse",
            Family::ShiftedTriangle(_) => "shifted-triangle",
            Family::Parallelogram(_) => "parallelogram",
            Family::GaussianCollapse(_) => "gaussian-collapse",
            Family::GroundState(_) => "ground-state",
            Family::ProfileBump(_) => "bump",
            Family::TravelingWave(_) => "traveling-wave",
            Family::SelfSimilarTriangle(_) => "self-similar-triangle",
            Family::CwAmplitude(_) => "cw-amplitude",
            Family::SelfSimilarCurve(_) => "self-similar",
            Family::CornerAngle(_) => "corner",
            Family::CircleCurve(_) => "circle",
            Family::HelixCurve(_) => "helix",
            Family::KnotCurve(_) => "knot",
        }
    }

    fn params_value(&self) -> Value {
        let v = match self {
            Family::VortexPolygon(p) => serde_json::to_value(p),
            Family::ThreeVortexCollapse => serde_json::to_value(NoParams {}),
            Family::VortexCustom(p) => serde_json::to_value(p),
            Family::EmptyPerturbation(p) => serde_json::to_value(p),
            Family::ShiftedGaussian(p) => serde_json::to_value(p),
            Family::GaussianPolygonCollapse(p) => serde_json::to_value(p),
            Family::ShiftedTriangle(p) => serde_json::to_value(p),
            Family::Parallelogram(p) => serde_json::to_value(p),
            Family::GaussianCollapse(p) => serde_json::to_value(p),
            Family::GroundState(p) => serde_json::to_value(p),
            Family::ProfileBump(p) => serde_json::to_value(p),
            Family::TravelingWave(p) => serde_json::to_value(p),
            Family::SelfSimilarTriangle(p) => serde_json::to_value(p),
            Family::CwAmplitude(p) => serde_json::to_value(p),
            Family::SelfSimilarCurve(p) => serde_json::to_value(p),
            Family::CornerAngle(p) => serde_json::to_value(p),
            Family::CircleCurve(p) => serde_json::to_value(p),
            Family::HelixCurve(p) => serde_json::to_value(p),
            Family::KnotCurve(p) => serde_json::to_value(p),
        };
        v.unwrap_or(Value::Null)
    }

    fn default_grid(&self) -> GridSpec {
        let (length, points) = match self {
            Family::GaussianPolygonCollapse(p) if p.tail > 0.0 => (80.0, 1024),
            Family::GaussianPolygonCollapse(_) | Family::GaussianCollapse(_) => (40.0, 2048),
            Family::ShiftedGaussian(_) => (40.0, 1024),
            Family::TravelingWave(_) => (32.0, 2048),
            _ => (40.0, 256),
        };
        GridSpec { length, points }
    }

    fn default_integrator(&self) -> IntegratorSpec {
        let (dt, t_end, sample_every) = match self {
            Family::VortexPolygon(_) | Family::VortexCustom(_) => (1e-3, 1.0, 10),
            Family::ThreeVortexCollapse => (1e-3, 2.5, 10),
            Family::EmptyPerturbation(_) | Family::Parallelogram(_) => (1e-3, 0.5, 10),
            Family::ShiftedGaussian(_) => (1e-3, 1.0, 10),
            Family::GaussianPolygonCollapse(_) => (5e-4, 1.5, 20),
            Family::ShiftedTriangle(_) => (1e-3, 2.5, 20),
            Family::GaussianCollapse(_) => (5e-4, 1.5, 20),
            Family::GroundState(_) | Family::ProfileBump(_) => (1e-3, 1.0, 10),
            Family::TravelingWave(_) | Family::CornerAngle(_) => (1.0, 0.0, 1),
            Family::SelfSimilarTriangle(_) => (1e-3, 0.0, 10),
            Family::CwAmplitude(_) => (0.5, 2.0, 1),
            Family::SelfSimilarCurve(_) => (1e-4, 0.1, 100),
            Family::CircleCurve(_) => (1e-3, 0.1, 10),
            Family::HelixCurve(_) => (5e-4, 0.05, 10),
            Family::KnotCurve(_) => (1e-4, 0.1, 100),
        };
        IntegratorSpec { dt, t_end, sample_every }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    name: Option<String>,
    model: Option<Model>,
    family: Option<String>,
    #[serde(default)]
    params: Value,
    #[serde(default)]
    grid: Option<Value>,
    #[serde(default)]
    integrator: Option<Value>,
    #[serde(default)]
    events: EventSpec,
    #[serde(default)]
    output: OutputSpec,
}

/// A validated scenario with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub model: Model,
    pub family: Family,
    pub grid: GridSpec,
    pub integrator: IntegratorSpec,
    pub events: EventSpec,
    pub output: OutputSpec,
}

impl Scenario {
    pub fn from_json(text: &str) -> CliResult<Scenario> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Schema { path: "$".into(), message: e.to_string() })?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> CliResult<Scenario> {
        let raw: RawScenario = serde_path_to_error::deserialize(value)
            .map_err(|e| CliError::Schema { path: e.path().to_string(), message: e.inner().to_string() })?;
        let Some(model) = raw.model else { return schema("model", "missing field") };
        let Some(family_name) = raw.family else { return schema("family", "missing field") };
        let family = Family::parse(model, &family_name, &raw.params)?;
        let grid = overlay(family.default_grid(), raw.grid, "grid")?;
        let integrator = overlay(family.default_integrator(), raw.integrator, "integrator")?;
        let s = Scenario {
            name: raw.name.unwrap_or_else(|| format!("{}/{}", serde_json::to_value(model).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(), family_name)),
            model,
            family,
            grid,
            integrator,
            events: raw.events,
            output: raw.output,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> CliResult<()> {
        if !(self.grid.length > 0.0) {
            return schema("grid.length", "must be positive");
        }
        if !self.grid.points.is_power_of_two() || self.grid.points < 8 {
            return schema("grid.points", "must be a power of two, at least 8");
        }
        if !(self.integrator.dt > 0.0) || !self.integrator.dt.is_finite() {
            return schema("integrator.dt", "must be positive");
        }
        if !(self.integrator.t_end >= 0.0) {
            return schema("integrator.t_end", "must be non-negative");
        }
        if self.integrator.sample_every == 0 {
            return schema("integrator.sample_every", "must be at least 1");
        }
        if !(self.events.collision_ratio > 0.0 && self.events.collision_ratio < 1.0) {
            return schema("events.collision_ratio", "must lie in (0, 1)");
        }
        let positive = |path: &str, v: f64| if v > 0.0 && v.is_finite() { Ok(()) } else { schema(path, "must be positive") };
        let count = |path: &str, n: usize, min: usize| if n >= min { Ok(()) } else { schema(path, format!("must be at least {min}")) };
        match &self.family {
            Family::VortexPolygon(p) => {
                count("params.n", p.n, 2)?;
                positive("params.radius", p.radius)?;
            }
            Family::VortexCustom(p) => {
                if p.positions.len() != p.circulations.len() || p.positions.is_empty() {
                    return schema("params.circulations", "needs one circulation per position");
                }
            }
            Family::EmptyPerturbation(p) => {
                count("params.n", p.n, 2)?;
                positive("params.radius", p.radius)?;
            }
            Family::ShiftedGaussian(p) => {
                count("params.n", p.n, 2)?;
                positive("params.width", p.width)?;
            }
            Family::GaussianPolygonCollapse(p) => {
                count("params.n", p.n, 2)?;
                positive("params.radius", p.radius)?;
                if !(p.tail >= 0.0) {
                    return schema("params.tail", "must be non-negative");
                }
            }
            Family::ShiftedTriangle(p) => positive("params.width", p.width)?,
            Family::Parallelogram(p) => positive("params.width", p.width)?,
            Family::GaussianCollapse(Collapsing { omega }) | Family::GroundState(Omega { omega }) => {
                if !(*omega >= 0.0) {
                    return schema("params.omega", "must be non-negative");
                }
            }
            Family::ProfileBump(p) => {
                positive("params.width", p.width)?;
                if !(p.amplitude.abs() < 1.0) {
                    return schema("params.amplitude", "must lie in (-1, 1)");
                }
            }
            Family::TravelingWave(p) => {
                positive("params.omega", p.omega)?;
                positive("params.c2", p.c2)?;
                if p.helix == 1 {
                    return schema("params.helix", "a helix needs at least two filaments");
                }
            }
            Family::SelfSimilarTriangle(p) => {
                positive("params.alpha", p.alpha)?;
                positive("params.kappa0", p.kappa0)?;
                if !(p.r0 > 0.0 && p.r0 < 1.0) {
                    return schema("params.r0", "must lie in (0, 1)");
                }
            }
            Family::CwAmplitude(p) => {
                positive("params.tol", p.tol)?;
                if !(p.p > 0.0 && p.p < 1.0) {
                    return schema("params.p", "must lie in (0, 1)");
                }
            }
            Family::SelfSimilarCurve(p) => {
                positive("params.t0", p.t0)?;
                positive("params.s_max", p.s_max)?;
                positive("params.window", p.window)?;
                count("params.points", p.points, 32)?;
            }
            Family::CornerAngle(p) => {
                positive("params.window", p.window)?;
                positive("params.spacing", p.spacing)?;
            }
            Family::CircleCurve(p) => {
                positive("params.radius", p.radius)?;
                count("params.points", p.points, 8)?;
            }
            Family::HelixCurve(p) => {
                positive("params.rate", p.rate)?;
                if !(p.radius > 0.0 && p.radius * p.rate < 1.0) {
                    return schema("params.radius", "needs 0 < radius·rate < 1");
                }
                count("params.points", p.points, 8)?;
            }
            Family::KnotCurve(p) => count("params.points", p.points, 16)?,
            Family::ThreeVortexCollapse => {}
        }
        Ok(())
    }

    /// The resolved scenario, defaults included, as JSON.
    pub fn echo(&self) -> Value {
        serde_json::json!({
            "name": self.name,
            "model": self.model,
            "family": self.family.name(),
            "params": self.family.params_value(),
            "grid": self.grid,
            "integrator": self.integrator,
            "events": self.events,
            "output": self.output,
        })
    }
}
