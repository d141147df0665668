use std::fmt::Write as _;

use hermite_renyi::EntropyReport64;
use serde::Serialize;

pub const CSV_HEADER: &str = "n,p,method,log_W,renyi,spreading_log,err_estimate,caveat";

/// One output row; `log_w`/`renyi` are in the requested normalization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub n: u64,
    pub p: f64,
    pub method: &'static str,
    pub log_w: f64,
    pub renyi: f64,
    pub spreading_log: f64,
    pub err_estimate: f64,
    pub caveat: &'static str,
}

impl Row {
    pub fn from_report(r: &EntropyReport64, ln_norm_shift: f64) -> Self {
        let log_w = r.w_log + ln_norm_shift;
        let renyi = log_w / (1.0 - r.p);
        Row {
            n: r.n,
            p: r.p,
            method: r.method.label(),
            log_w,
            renyi,
            spreading_log: renyi,
            err_estimate: r.error_estimate,
            caveat: r.caveat.label(),
        }
    }
}

/// 17 significant digits: enough to round-trip any f64.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(128 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n,
            fmt17(r.p),
            r.method,
            fmt17(r.log_w),
            fmt17(r.renyi),
            fmt17(r.spreading_log),
            fmt17(r.err_estimate),
            r.caveat
        );
    }
    out
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
        assert_eq!(fmt17(f64::NAN), "NaN");
    }
}
