//! Growth measurements on formulas with one and two power-of-two quantifiers.
//!
//! Each base formula has one quantifier ranging over powers of two; its
//! extension adds a second one. The extension must grow strictly larger: its
//! peak `D_n`-weighted length over all iterations exceeds the base's.

use pow2qe_core::limits::Guard;
use pow2qe_core::pipeline::eliminate_all_with_report;

use crate::parse_formula;
use crate::report::GrowthReportJson;

/// `(one quantifier, two quantifiers)` pairs.
pub const PAIRS: [(&str, &str); 5] = [
    (
        "exists y. A(y) and y <= x and x < 2*y",
        "exists y. exists w. A(y) and A(w) and y <= x and x < 2*y and y < w and w < 3*x",
    ),
    ("exists y. D[2](y) and x*y = 1", "exists y. exists w. D[2](y) and A(w) and x*y = w and w < 8"),
    (
        "exists y. A(y) and x < y and y < 3*x",
        "exists y. exists w. A(y) and A(w) and x < y and y < 3*x and y < w*w and w < x",
    ),
    (
        "exists y. D[3](y) and z < y and y < x",
        "exists y. exists w. D[3](y) and D[2](w) and z < y and y < x and y < w and w < 2*x",
    ),
    ("exists y. A(y) and L(y*x) = 2*y", "exists y. exists w. A(y) and A(w) and L(y*x) = 2*w and w < y"),
];

#[derive(Clone, Debug)]
pub struct GrowthCase {
    pub text: &'static str,
    pub quantifiers: usize,
    pub report: Result<GrowthReportJson, String>,
}

impl GrowthCase {
    pub fn peak(&self) -> Option<usize> {
        let r = self.report.as_ref().ok()?;
        r.iterations.iter().map(|i| i.length_dn_weighted).max()
    }
}

pub fn measure(text: &'static str, quantifiers: usize, guard: &Guard) -> GrowthCase {
    let report = parse_formula(text).map_err(|e| e.to_string()).and_then(|f| {
        let (out, rep) = eliminate_all_with_report(&f, guard);
        out.map(|_| GrowthReportJson::from(&rep)).map_err(|e| e.to_string())
    });
    GrowthCase { text, quantifiers, report }
}

/// The ten cases, bases and extensions interleaved.
pub fn corpus(guard: &Guard) -> Vec<GrowthCase> {
    PAIRS.iter().flat_map(|(one, two)| [measure(one, 1, guard), measure(two, 2, guard)]).collect()
}

/// Problems found in a corpus run: failed runs, non-monotone reports and
/// extensions that do not grow past their base.
pub fn violations(cases: &[GrowthCase]) -> Vec<String> {
    let mut out = Vec::new();
    for c in cases {
        match &c.report {
            Err(e) => out.push(format!("{}: {e}", c.text)),
            Ok(r) if !r.is_monotone() => out.push(format!("{}: report not monotone", c.text)),
            Ok(_) => {}
        }
    }
    for pair in cases.chunks(2) {
        if let [one, two] = pair {
            if let (Some(a), Some(b)) = (one.peak(), two.peak()) {
                if b <= a {
                    out.push(format!("{}: peak {b} not above {a} of its base", two.text));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_differ_in_quantifier_count() {
        for (one, two) in PAIRS {
            let count = |s: &str| s.matches("exists").count();
            assert_eq!(count(one), 1);
            assert_eq!(count(two), 2);
        }
    }
}
