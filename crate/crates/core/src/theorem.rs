//! Closed-form machinery for `h_{a,b;c}(x) = [c Gamma(x+a) / Gamma(x+b)]^(1/x)`.
//!
//! With `F(x) = ln c + ln Gamma(x+a) - ln Gamma(x+b)`,
//!
//! ```text
//! H_k(x) = F(x) + sum_{i=1}^{k} (-x)^i / i! * [psi^(i-1)(x+a) - psi^(i-1)(x+b)]
//! (-1)^k [ln h]^(k)(x) = k! / x^(k+1) * H_k(x)
//! H_k'(x) = x^k / k! * [(-1)^k psi^(k)(x+a) - (-1)^k psi^(k)(x+b)]
//! H_k(0) = ln c - ln(Gamma(b) / Gamma(a))
//! ```
//!
//! `(-1)^k psi^(k)` is increasing, so `H_k` is monotone with the sign of `a - b`
//! and its sign on `(0, inf)` is pinned by `H_k(0)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::specfun::{gamma_ratio, ln_gamma, polygamma};

/// Largest derivative order handled here.
pub const MAX_THEOREM_ORDER: usize = 25;

/// Relative band around the threshold inside which `c` counts as equal to it.
pub const CLASSIFY_GUARD: f64 = 1e-12;

/// Terms larger than this multiple of `|H_k|` flag the sum as ill-conditioned.
pub const CONDITIONING_RATIO: f64 = 1e6;

/// Number of grid points scanned by [`find_violation`].
pub const VIOLATION_SCAN_POINTS: usize = 400;

/// Smallest abscissa scanned by [`find_violation`].
pub const VIOLATION_SCAN_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    /// `a > b` and `c >= Gamma(b)/Gamma(a)`: `h` is LCM.
    Case1LCM,
    /// `a < b` and `c <= Gamma(b)/Gamma(a)`: `1/h` is LCM.
    Case2ReciprocalLCM,
    Undetermined,
}

impl std::fmt::Display for RegionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegionKind::Case1LCM => "Case1LCM",
            RegionKind::Case2ReciprocalLCM => "Case2ReciprocalLCM",
            RegionKind::Undetermined => "Undetermined",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremRegion {
    pub kind: RegionKind,
    /// `Gamma(b) / Gamma(a)`.
    pub threshold: f64,
    /// `c - threshold`.
    pub margin: f64,
}

/// `H_k(x)` together with the size of its largest summand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HCapital {
    pub value: f64,
    pub largest_term: f64,
    pub ill_conditioned: bool,
}

/// Both sides of `(-1)^k [ln h]^(k)(x) = k!/x^(k+1) H_k(x)` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremEvaluation {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub k: usize,
    pub x: f64,
    pub h_value: f64,
    /// From the truncated-series engine.
    pub identity_lhs: f64,
    /// From the closed form.
    pub identity_rhs: f64,
}

impl TheoremEvaluation {
    pub fn relative_gap(&self) -> f64 {
        let scale = self.identity_lhs.abs().max(self.identity_rhs.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.identity_lhs - self.identity_rhs).abs() / scale
        }
    }
}

/// Neumaier's compensated summation.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
    largest: f64,
}

impl CompensatedSum {
    fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
        self.largest = self.largest.max(term.abs());
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn validate(a: f64, b: f64, c: f64) -> Result<()> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive, got {v}"
            )));
        }
    }
    Ok(())
}

fn validate_order(k: usize) -> Result<()> {
    if k == 0 || k > MAX_THEOREM_ORDER {
        return Err(Error::OrderExceeded {
            requested: k,
            available: MAX_THEOREM_ORDER,
        });
    }
    Ok(())
}

fn factorial(k: usize) -> f64 {
    (2..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `H_k(x)` with diagnostics; `x >= 0`.
pub fn h_capital_detailed(a: f64, b: f64, c: f64, k: usize, x: f64) -> Result<HCapital> {
    validate(a, b, c)?;
    validate_order(k)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::domain("H_k", x));
    }
    let mut sum = CompensatedSum::default();
    sum.add(c.ln());
    sum.add(ln_gamma(x + a)?);
    sum.add(-ln_gamma(x + b)?);
    if x > 0.0 {
        let mut weight = 1.0; // (-x)^i / i!
        for i in 1..=k {
            weight *= -x / i as f64;
            let diff = polygamma(i - 1, x + a)? - polygamma(i - 1, x + b)?;
            sum.add(weight * diff);
        }
    }
    let value = sum.value();
    Ok(HCapital {
        value,
        largest_term: sum.largest,
        ill_conditioned: sum.largest > CONDITIONING_RATIO * value.abs(),
    })
}

/// `H_k(x)`; logs a warning when the alternating sum cancels heavily.
pub fn h_capital(a: f64, b: f64, c: f64, k: usize, x: f64) -> Result<f64> {
    let h = h_capital_detailed(a, b, c, k, x)?;
    if h.ill_conditioned {
        log::warn!(
            "H_k(a={a}, b={b}, c={c}, k={k}, x={x}) = {:e} is ill-conditioned (largest term {:e})",
            h.value,
            h.largest_term
        );
    }
    Ok(h.value)
}

/// `H_k'(x) = x^k / k! [(-1)^k psi^(k)(x+a) - (-1)^k psi^(k)(x+b)]`, `x > 0`.
pub fn h_capital_derivative(a: f64, b: f64, c: f64, k: usize, x: f64) -> Result<f64> {
    validate(a, b, c)?;
    validate_order(k)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("H_k'", x));
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let weight = x.powi(k as i32) / factorial(k);
    Ok(weight * sign * (polygamma(k, x + a)? - polygamma(k, x + b)?))
}

/// `(-1)^k [ln h_{a,b;c}]^(k)(x)` from the closed form `k!/x^(k+1) H_k(x)`.
pub fn kth_log_derivative(a: f64, b: f64, c: f64, k: usize, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("kth_log_derivative", x));
    }
    let h = h_capital(a, b, c, k, x)?;
    Ok(factorial(k) / x.powi(k as i32 + 1) * h)
}

/// Evaluates both sides of the derivative identity, the left side through the
/// power-series engine.
pub fn evaluate_identity(a: f64, b: f64, c: f64, k: usize, x: f64) -> Result<TheoremEvaluation> {
    let h_value = h_capital(a, b, c, k, x)?;
    let identity_rhs = kth_log_derivative(a, b, c, k, x)?;
    let series = FamilySpec::general_ratio(a, b, c)?.ln_series_at(x, k)?;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(TheoremEvaluation {
        a,
        b,
        c,
        k,
        x,
        h_value,
        identity_lhs: sign * series.derivative(k)?,
        identity_rhs,
    })
}

/// Places `(a, b, c)` relative to the sufficient conditions for `h` or `1/h` to be LCM.
pub fn classify(a: f64, b: f64, c: f64) -> Result<TheoremRegion> {
    validate(a, b, c)?;
    let threshold = gamma_ratio(b, a)?;
    let margin = c - threshold;
    let tie = margin.abs() <= CLASSIFY_GUARD * threshold;
    let kind = if a > b && (margin >= 0.0 || tie) {
        RegionKind::Case1LCM
    } else if a < b && (margin <= 0.0 || tie) {
        RegionKind::Case2ReciprocalLCM
    } else {
        RegionKind::Undetermined
    };
    Ok(TheoremRegion {
        kind,
        threshold,
        margin,
    })
}

/// Threshold below which a closed-form value counts as a violation.
pub fn violation_tolerance(c: f64) -> f64 {
    1e-10 * (1.0 + c.ln().abs())
}

/// Log-spaced scan abscissae, ascending from [`VIOLATION_SCAN_FLOOR`] to `x_max`.
pub fn violation_scan_grid(x_max: f64) -> Result<Vec<f64>> {
    if !(x_max > VIOLATION_SCAN_FLOOR && x_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "x_max must exceed {VIOLATION_SCAN_FLOOR:e}, got {x_max}"
        )));
    }
    let n = VIOLATION_SCAN_POINTS;
    let ratio = (x_max / VIOLATION_SCAN_FLOOR).ln() / (n - 1) as f64;
    Ok((0..n)
        .map(|i| match i {
            0 => VIOLATION_SCAN_FLOOR,
            _ if i == n - 1 => x_max,
            _ => VIOLATION_SCAN_FLOOR * (ratio * i as f64).exp(),
        })
        .collect())
}

/// First scanned `x` (smallest first) where `(-1)^k [ln h]^(k)(x) < -tolerance`.
pub fn find_violation(a: f64, b: f64, c: f64, k: usize, x_max: f64) -> Result<Option<(f64, f64)>> {
    validate(a, b, c)?;
    validate_order(k)?;
    let tolerance = violation_tolerance(c);
    for x in violation_scan_grid(x_max)? {
        let v = kth_log_derivative(a, b, c, k, x)?;
        if v < -tolerance {
            return Ok(Some((x, v)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn boundary_value() {
        for k in [1, 5, 25] {
            let h = h_capital(1.0, 0.5, 2.0 * SQRT_PI, k, 0.0).unwrap();
            assert_relative_eq!(h, 2f64.ln(), max_relative = 1e-14);
            assert!(h_capital(1.0, 0.5, SQRT_PI, k, 0.0).unwrap().abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_signs() {
        assert!(h_capital_derivative(1.0, 0.5, 1.0, 2, 1.0).unwrap() > 0.0);
        assert!(h_capital_derivative(0.5, 1.0, 1.0, 2, 1.0).unwrap() < 0.0);
        assert_eq!(h_capital_derivative(1.5, 1.5, 3.0, 4, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_ratio_has_zero_derivatives() {
        for k in 1..=6 {
            assert_eq!(kth_log_derivative(2.0, 2.0, 1.0, k, 0.7).unwrap(), 0.0);
        }
    }

    #[test]
    fn classify_examples() {
        let r = classify(1.0, 0.5, 2.0 * SQRT_PI).unwrap();
        assert_eq!(r.kind, RegionKind::Case1LCM);
        assert_relative_eq!(r.threshold, SQRT_PI, max_relative = 1e-14);
        assert_relative_eq!(r.margin, SQRT_PI, max_relative = 1e-13);
        assert_eq!(
            classify(2.0, 2.0, 5.0).unwrap().kind,
            RegionKind::Undetermined
        );
        let r = classify(0.5, 1.0, 0.5).unwrap();
        assert_eq!(r.kind, RegionKind::Case2ReciprocalLCM);
        assert_relative_eq!(r.threshold, 1.0 / SQRT_PI, max_relative = 1e-14);
        assert!(r.margin < 0.0);
        // exactly at the threshold both inclusive cases apply
        assert_eq!(
            classify(1.0, 0.5, SQRT_PI).unwrap().kind,
            RegionKind::Case1LCM
        );
        assert_eq!(
            classify(0.5, 1.0, 1.0 / SQRT_PI).unwrap().kind,
            RegionKind::Case2ReciprocalLCM
        );
        assert_eq!(
            classify(1.0, 0.5, 1.7).unwrap().kind,
            RegionKind::Undetermined
        );
    }

    #[test]
    fn violation_examples() {
        let (x, v) = find_violation(1.0, 0.5, 0.9 * SQRT_PI, 1, 10.0)
            .unwrap()
            .unwrap();
        assert!(x < 1e-3 && v < 0.0, "x = {x}, v = {v}");
        for k in 1..=10 {
            assert_eq!(
                find_violation(1.0, 0.5, 2.0 * SQRT_PI, k, 100.0).unwrap(),
                None
            );
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(h_capital(0.0, 1.0, 1.0, 1, 1.0).is_err());
        assert!(h_capital(1.0, 1.0, 1.0, 0, 1.0).is_err());
        assert!(h_capital(1.0, 1.0, 1.0, 26, 1.0).is_err());
        assert!(h_capital(1.0, 1.0, 1.0, 3, -1.0).is_err());
        assert!(h_capital_derivative(1.0, 0.5, 1.0, 3, 0.0).is_err());
        assert!(kth_log_derivative(1.0, 0.5, 1.0, 3, 0.0).is_err());
        assert!(find_violation(1.0, 0.5, 1.0, 1, 1e-9).is_err());
    }

    #[test]
    fn scan_grid_endpoints() {
        let g = violation_scan_grid(100.0).unwrap();
        assert_eq!(g.len(), VIOLATION_SCAN_POINTS);
        assert_eq!(g[0], 1e-8);
        assert_eq!(g[g.len() - 1], 100.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn conditioning_flag() {
        let h = h_capital_detailed(1.0, 0.5, SQRT_PI, 3, 1e-4).unwrap();
        assert!(h.ill_conditioned);
        let h = h_capital_detailed(1.0, 0.5, 2.0 * SQRT_PI, 3, 1.0).unwrap();
        assert!(!h.ill_conditioned);
    }
}
