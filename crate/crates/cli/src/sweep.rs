//! One-parameter sweeps over a scenario template.

use std::path::Path;

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{io, CliError, CliResult};
use crate::runner::{flat_metrics, run, RunSummary};
use crate::scenario::Scenario;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Dotted path into the scenario JSON, e.g. `params.alpha`.
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: Value,
    pub summary: RunSummary,
}

/// `count` equally spaced values in `[min, max]`, rounded when the template holds an integer.
pub fn sweep_values(template: &Value, spec: &SweepSpec) -> CliResult<Vec<Value>> {
    let current = lookup(template, &spec.param)?;
    if spec.count == 0 {
        return Err(CliError::Usage("sweep count must be positive".into()));
    }
    let integer = current.is_u64() || current.is_i64();
    let mut out = Vec::with_capacity(spec.count);
    for k in 0..spec.count {
        let x = if spec.count == 1 { spec.min } else { spec.min + (spec.max - spec.min) * k as f64 / (spec.count - 1) as f64 };
        out.push(if integer { Value::from(x.round() as i64) } else { Value::from(x) });
    }
    if integer {
        out.dedup();
    }
    Ok(out)
}

fn lookup<'a>(v: &'a Value, path: &str) -> CliResult<&'a Value> {
    let mut cur = v;
    for key in path.split('.') {
        cur = cur.get(key).ok_or_else(|| CliError::Usage(format!("parameter `{path}` is not set in the scenario template")))?;
    }
    Ok(cur)
}

fn assign(v: &mut Value, path: &str, x: Value) -> CliResult<()> {
    let mut cur = v;
    for key in path.split('.') {
        cur = cur.get_mut(key).ok_or_else(|| CliError::Usage(format!("parameter `{path}` is not set in the scenario template")))?;
    }
    *cur = x;
    Ok(())
}

/// Runs every value in parallel; rows come back in sweep order.
pub fn sweep(template: &Value, spec: &SweepSpec) -> CliResult<Vec<SweepRow>> {
    let values = sweep_values(template, spec)?;
    values
        .into_par_iter()
        .map(|x| {
            let mut v = template.clone();
            assign(&mut v, &spec.param, x.clone())?;
            let s = Scenario::from_value(v)?;
            Ok(SweepRow { value: x, summary: run(&s)?.summary })
        })
        .collect()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if !(n.is_i64() || n.is_u64()) => format!("{x:.16e}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string().replace(',', ";"),
    }
}

/// CSV with one row per value: the parameter, status, first event and every metric.
pub fn sweep_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut keys: Vec<String> = rows.iter().flat_map(|r| flat_metrics(&r.summary).into_keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = format!("{},status,event_kind,event_time", spec.param);
    for k in &keys {
        out.push(',');
        out.push_str(k);
    }
    out.push('\n');
    for r in rows {
        let status = serde_json::to_value(r.summary.status).unwrap_or(Value::Null);
        let ev = r.summary.events.first();
        let mut line = vec![
            cell(&r.value),
            cell(&status),
            ev.map_or(String::new(), |e| e.kind.clone()),
            ev.map_or(String::new(), |e| format!("{:.16e}", e.time)),
        ];
        let m = flat_metrics(&r.summary);
        for k in &keys {
            line.push(m.get(k).map_or(String::new(), cell));
        }
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn sweep_file(scenario: &Path, spec: &SweepSpec, out: &Path) -> CliResult<Vec<SweepRow>> {
    let text = std::fs::read_to_string(scenario).map_err(io(scenario))?;
    let template: Value = serde_json::from_str(&text).map_err(|e| CliError::Schema { path: "$".into(), message: e.to_string() })?;
    let rows = sweep(&template, spec)?;
    std::fs::create_dir_all(out).map_err(io(out))?;
    let path = out.join("sweep.csv");
    std::fs::write(&path, sweep_csv(spec, &rows)).map_err(io(&path))?;
    Ok(rows)
}
