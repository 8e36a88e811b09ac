use gammalcm::checker::{
    self, Confirmation, FdCrossCheck, GridSpec, Mode, ParamRange, SignTable, SweepOutcome,
    SweepRow, Verdict,
};
use gammalcm::families::FamilyTemplate;
use gammalcm::specfun;
use gammalcm::theorem;
use gammalcm::{Analytic, Result, Target};
use serde_json::json;

use crate::output::{num, Payload, Status};

pub fn eval(target: &Target, x: f64) -> Result<Payload> {
    let value = target.evaluate(x)?;
    let ln_value = target.ln_evaluate(x)?;
    Ok(Payload {
        status: Status::Ok,
        human: format!("{value}"),
        csv_header: vec!["x", "value", "ln_value"],
        csv_rows: vec![vec![num(x), num(value), num(ln_value)]],
        json: json!({ "target": target.to_string(), "x": x, "value": value, "ln_value": ln_value }),
    })
}

pub fn classify(a: f64, b: f64, c: f64) -> Result<Payload> {
    let r = theorem::classify(a, b, c)?;
    Ok(Payload {
        status: Status::Ok,
        human: format!("{}\nthreshold {}\nmargin {}", r.kind, r.threshold, r.margin),
        csv_header: vec!["a", "b", "c", "region", "threshold", "margin"],
        csv_rows: vec![vec![
            num(a),
            num(b),
            num(c),
            r.kind.to_string(),
            num(r.threshold),
            num(r.margin),
        ]],
        json: json!({
            "a": a, "b": b, "c": c,
            "region": r.kind, "threshold": r.threshold, "margin": r.margin,
            "guard": theorem::CLASSIFY_GUARD,
        }),
    })
}

fn describe(verdict: &Verdict) -> String {
    match verdict {
        Verdict::ConsistentUpTo { order, grid, tolerance } => format!(
            "consistent up to order {order} on {} {:?} points in [{}, {}] (tolerance {tolerance:e} relative)",
            grid.points, grid.spacing, grid.x_min, grid.x_max
        ),
        Verdict::Violation {
            k,
            x,
            value,
            tolerance,
            confirmation,
        } => {
            let how = match confirmation {
                Confirmation::ClosedForm { value } => format!("confirmed by closed form ({value:e})"),
                Confirmation::SeriesOnly => "series only".to_string(),
                Confirmation::Disputed { value } => format!("disputed by closed form ({value:e})"),
            };
            format!("violation at k = {k}, x = {x}: value {value:e} < -{tolerance:e}; {how}")
        }
    }
}

fn status_of(verdict: &Verdict) -> Status {
    if verdict.is_consistent() {
        Status::Ok
    } else {
        Status::Violation
    }
}

pub fn check(target: &Target, grid: &GridSpec, order: usize, mode: Mode) -> Result<Payload> {
    let table = match mode {
        Mode::Lcm => checker::lcm_sign_table(target, grid, order)?,
        Mode::Cm => checker::cm_sign_table(target, grid, order)?,
    };
    Ok(table_payload(target, &table))
}

fn table_payload(target: &Target, table: &SignTable) -> Payload {
    let mut rows = Vec::with_capacity(table.entries.len() * table.abscissae.len());
    for k in table.orders() {
        for (i, (&x, &v)) in table.abscissae.iter().zip(table.row(k)).enumerate() {
            let flag = if v < -table.tolerance(k, i) || !v.is_finite() {
                "violation"
            } else {
                "ok"
            };
            rows.push(vec![k.to_string(), num(x), num(v), flag.to_string()]);
        }
    }
    let entries: Vec<_> = table
        .orders()
        .map(|k| json!({ "k": k, "values": table.row(k) }))
        .collect();
    Payload {
        status: status_of(&table.verdict),
        human: format!("{target}: {}", describe(&table.verdict)),
        csv_header: vec!["k", "x", "value", "verdict"],
        csv_rows: rows,
        json: json!({
            "target": target.to_string(),
            "mode": table.mode,
            "max_order": table.max_order,
            "grid": table.grid,
            "tolerance": { "floor": checker::TOLERANCE, "relative": checker::TOLERANCE },
            "abscissae": table.abscissae,
            "entries": entries,
            "verdict": table.verdict,
        }),
    }
}

pub fn find_violation(a: f64, b: f64, c: f64, k: usize, x_max: f64) -> Result<Payload> {
    let found = theorem::find_violation(a, b, c, k, x_max)?;
    let tolerance = theorem::violation_tolerance(c);
    let (status, human, rows) = match found {
        Some((x, v)) => (
            Status::Violation,
            format!("violation at x = {x}: (-1)^{k} [ln h]^({k}) = {v:e}"),
            vec![vec![k.to_string(), num(x), num(v), "violation".to_string()]],
        ),
        None => (
            Status::Ok,
            format!("no violation of order {k} found on (0, {x_max}]"),
            vec![],
        ),
    };
    Ok(Payload {
        status,
        human,
        csv_header: vec!["k", "x", "value", "verdict"],
        csv_rows: rows,
        json: json!({
            "a": a, "b": b, "c": c, "k": k, "x_max": x_max,
            "tolerance": tolerance,
            "grid": {
                "x_min": theorem::VIOLATION_SCAN_FLOOR,
                "x_max": x_max,
                "points": theorem::VIOLATION_SCAN_POINTS,
                "spacing": "log",
            },
            "violation": found.map(|(x, v)| json!({ "x": x, "value": v })),
        }),
    })
}

pub fn sweep(
    template: &FamilyTemplate,
    free: &str,
    range: &ParamRange,
    grid: &GridSpec,
    order: usize,
) -> Result<Payload> {
    let rows: Vec<SweepRow> = checker::sweep(template, free, range, grid, order)?;
    let mut csv_rows = Vec::with_capacity(rows.len());
    let mut human = Vec::with_capacity(rows.len());
    let mut status = Status::Ok;
    for row in &rows {
        let p = num(row.param);
        match &row.outcome {
            SweepOutcome::Verdict(v @ Verdict::ConsistentUpTo { .. }) => {
                csv_rows.push(vec![
                    p,
                    v.label().into(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
            }
            SweepOutcome::Verdict(v @ Verdict::Violation { k, x, value, .. }) => {
                status = Status::Violation;
                csv_rows.push(vec![
                    p,
                    v.label().into(),
                    k.to_string(),
                    num(*x),
                    num(*value),
                ]);
            }
            SweepOutcome::Error { .. } => {
                csv_rows.push(vec![
                    p,
                    "error".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
            }
        }
        let line = match &row.outcome {
            SweepOutcome::Verdict(v) => describe(v),
            SweepOutcome::Error { message } => format!("error: {message}"),
        };
        human.push(format!("{free} = {}: {line}", row.param));
    }
    Ok(Payload {
        status,
        human: human.join("\n"),
        csv_header: vec!["param", "verdict", "k", "x", "value"],
        csv_rows,
        json: json!({
            "template": template.to_string(),
            "free": free,
            "range": range,
            "grid": grid,
            "max_order": order,
            "tolerance": checker::TOLERANCE,
            "rows": rows,
        }),
    })
}

fn oracle_payload(
    name: &str,
    fields: Vec<(&'static str, f64)>,
    rel_err: f64,
    tolerance: f64,
) -> Payload {
    let status = if rel_err <= tolerance {
        Status::Ok
    } else {
        Status::Violation
    };
    let mut header: Vec<&'static str> = fields.iter().map(|(k, _)| *k).collect();
    header.extend(["rel_err", "tolerance"]);
    let mut row: Vec<String> = fields.iter().map(|(_, v)| num(*v)).collect();
    row.extend([num(rel_err), num(tolerance)]);
    let mut obj = serde_json::Map::new();
    obj.insert("oracle".into(), json!(name));
    for (k, v) in &fields {
        obj.insert((*k).into(), json!(v));
    }
    obj.insert("rel_err".into(), json!(rel_err));
    obj.insert("tolerance".into(), json!(tolerance));
    obj.insert("pass".into(), json!(status == Status::Ok));
    let verdict = if status == Status::Ok {
        "agree"
    } else {
        "DISAGREE"
    };
    let detail: Vec<String> = fields.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    Payload {
        status,
        human: format!(
            "{name}: {verdict}, rel_err {rel_err:e} (tolerance {tolerance:e}); {}",
            detail.join(", ")
        ),
        csv_header: header,
        csv_rows: vec![row],
        json: serde_json::Value::Object(obj),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn oracle_polygamma(n: usize, x: f64, tolerance: f64) -> Result<Payload> {
    let series = specfun::polygamma(n, x)?;
    let quadrature = specfun::polygamma_quadrature(n, x)?;
    Ok(oracle_payload(
        "polygamma-quadrature",
        vec![
            ("n", n as f64),
            ("x", x),
            ("series", series),
            ("quadrature", quadrature),
        ],
        rel(series, quadrature),
        tolerance,
    ))
}

pub fn oracle_gamma(x: f64, tolerance: f64) -> Result<Payload> {
    let series = specfun::ln_gamma(x)?.exp();
    let quadrature = specfun::gamma_quadrature(x)?;
    Ok(oracle_payload(
        "gamma-quadrature",
        vec![("x", x), ("series", series), ("quadrature", quadrature)],
        rel(series, quadrature),
        tolerance,
    ))
}

pub fn oracle_fd(target: &Target, x: f64, k: usize, tolerance: f64) -> Result<Payload> {
    let r: FdCrossCheck = checker::finite_difference_crosscheck(target, x, k)?;
    let mut p = oracle_payload(
        "finite-difference",
        vec![
            ("k", k as f64),
            ("x", x),
            ("step", r.step),
            ("series", r.series),
            ("fd", r.fd),
            ("fd_error", r.fd_error),
        ],
        r.rel_err,
        tolerance,
    );
    if let serde_json::Value::Object(map) = &mut p.json {
        map.insert("target".into(), json!(target.to_string()));
    }
    Ok(p)
}
