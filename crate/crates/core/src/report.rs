//! Per-event estimate records and their CSV form.

use crate::estimate::Param;

pub const REPORT_HEADER: [&str; 9] =
    ["event_index", "param", "estimate", "oracle", "lower_bound", "upper_bound", "ok", "reinit_count", "phase"];

/// One row of the report. Eccentricity runs emit one row per vertex with
/// `param = "eccentricity:<v>"`. Verification columns are `None` when the
/// oracle was not consulted.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub event_index: usize,
    pub param: String,
    pub estimate: f64,
    pub oracle: Option<f64>,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub ok: Option<bool>,
    pub reinit_count: u64,
    pub phase: u64,
}

pub fn row_label(param: Param, vertex: Option<usize>) -> String {
    match (param, vertex) {
        (Param::Eccentricities, Some(v)) => format!("eccentricity:{v}"),
        _ => param.name().to_string(),
    }
}

/// Formats reals compactly: integers without a fraction, `inf` for infinity.
pub fn fmt_value(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.6}")
    }
}

pub fn write_report(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_HEADER).expect("writing to memory");
    for r in rows {
        let opt = |x: Option<f64>| x.map(fmt_value).unwrap_or_default();
        w.write_record([
            r.event_index.to_string(),
            r.param.clone(),
            fmt_value(r.estimate),
            opt(r.oracle),
            opt(r.lower_bound),
            opt(r.upper_bound),
            r.ok.map(|b| b.to_string()).unwrap_or_default(),
            r.reinit_count.to_string(),
            r.phase.to_string(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}
