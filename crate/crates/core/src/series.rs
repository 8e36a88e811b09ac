//! Truncated power series in a local variable `u` around an expansion point `x0`.
//!
//! `coeffs[j]` is the Taylor coefficient `f^(j)(x0) / j!`, so arithmetic on series
//! is Taylor-mode differentiation to a fixed order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun;

/// Nodes used by [`PolySeries::divided_difference`] on its integral path.
const DIVIDED_DIFFERENCE_NODES: usize = 32;

/// Highest supported truncation order.
pub const MAX_SERIES_ORDER: usize = 25;

/// Coefficients above this magnitude are reported instead of silently overflowing.
pub const COEFFICIENT_GUARD: f64 = 1e150;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolySeries {
    x0: f64,
    coeffs: Vec<f64>,
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_SERIES_ORDER {
        Err(Error::OrderExceeded {
            requested: order,
            available: MAX_SERIES_ORDER,
        })
    } else {
        Ok(())
    }
}

impl PolySeries {
    pub fn new(x0: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a series needs at least one coefficient".into(),
            ));
        }
        check_order(coeffs.len() - 1)?;
        PolySeries { x0, coeffs }.guarded()
    }

    pub fn constant(x0: f64, value: f64, order: usize) -> Result<Self> {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self::new(x0, coeffs)
    }

    pub fn zero(x0: f64, order: usize) -> Result<Self> {
        Self::constant(x0, 0.0, order)
    }

    pub fn one(x0: f64, order: usize) -> Result<Self> {
        Self::constant(x0, 1.0, order)
    }

    /// `c0 + c1 * u`.
    pub fn affine(x0: f64, c0: f64, c1: f64, order: usize) -> Result<Self> {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c0;
        if order >= 1 {
            coeffs[1] = c1;
        }
        Self::new(x0, coeffs)
    }

    /// The identity `x0 + u`, i.e. the series of `x` itself.
    pub fn identity(x0: f64, order: usize) -> Result<Self> {
        Self::affine(x0, x0, 1.0, order)
    }

    /// Builds a series from derivative values `f(x0), f'(x0), ..., f^(K)(x0)`.
    pub fn from_derivatives(x0: f64, derivatives: &[f64]) -> Result<Self> {
        let mut fact = 1.0;
        let coeffs = derivatives
            .iter()
            .enumerate()
            .map(|(j, d)| {
                if j > 1 {
                    fact *= j as f64;
                }
                d / fact
            })
            .collect();
        Self::new(x0, coeffs)
    }

    /// Series of `u -> ln Gamma(x0 + shift + u)`.
    pub fn from_lngamma(x0: f64, shift: f64, order: usize) -> Result<Self> {
        Self::lngamma_affine(x0, shift, 1.0, order)
    }

    /// Series of `u -> ln Gamma(offset + slope * (x0 + u))`.
    pub fn lngamma_affine(x0: f64, offset: f64, slope: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        let y = offset + slope * x0;
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::domain("ln Gamma argument", y));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(specfun::ln_gamma(y)?);
        let mut scale = 1.0;
        for j in 1..=order {
            scale *= slope / j as f64;
            coeffs.push(if slope == 0.0 {
                0.0
            } else {
                specfun::polygamma(j - 1, y)? * scale
            });
        }
        Self::new(x0, coeffs)
    }

    /// Series of `u -> psi(x0 + shift + u)`.
    pub fn from_digamma(x0: f64, shift: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        let y = x0 + shift;
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = 1.0;
        for j in 0..=order {
            if j > 1 {
                fact *= j as f64;
            }
            coeffs.push(specfun::polygamma(j, y)? / fact);
        }
        Self::new(x0, coeffs)
    }

    /// Series at `x0` of the divided difference `g(x) = (F(x) - F(p)) / (x - p)`.
    ///
    /// `numerator` is the series of `F` at `x0`, `derivative(m, y)` returns `F^(m)(y)`
    /// for `m >= 1`, and `singularity_distance` bounds how far `F` stays analytic
    /// around `p`. Close to `p` the quotient cancels badly, so there the
    /// coefficients come from `g^(k)(x0) = int_0^1 s^k F^(k+1)(p + s (x0 - p)) ds`
    /// instead of from series division.
    pub fn divided_difference<D>(
        numerator: &PolySeries,
        p: f64,
        f_at_p: f64,
        singularity_distance: f64,
        derivative: D,
    ) -> Result<Self>
    where
        D: Fn(usize, f64) -> Result<f64>,
    {
        let x0 = numerator.x0;
        let order = numerator.order();
        let d = x0 - p;
        if d.abs() >= 2.0 * singularity_distance {
            let shifted = numerator.add_constant(-f_at_p);
            return shifted.div(&PolySeries::affine(x0, d, 1.0, order)?);
        }
        let rule = quad::gauss_legendre_unit(DIVIDED_DIFFERENCE_NODES);
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = 1.0;
        for k in 0..=order {
            if k > 1 {
                fact *= k as f64;
            }
            let mut acc = 0.0;
            for &(s, w) in &rule {
                acc += w * s.powi(k as i32) * derivative(k + 1, p + s * d)?;
            }
            coeffs.push(acc / fact);
        }
        Self::new(x0, coeffs)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `f^(k)(x0) = k! * coeffs[k]`.
    pub fn derivative(&self, k: usize) -> Result<f64> {
        let c = self.coeffs.get(k).ok_or(Error::OrderExceeded {
            requested: k,
            available: self.order(),
        })?;
        Ok((2..=k).fold(*c, |acc, i| acc * i as f64))
    }

    /// All derivatives `f^(0..=K)(x0)`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j > 1 {
                    fact *= j as f64;
                }
                c * fact
            })
            .collect()
    }

    fn guarded(self) -> Result<Self> {
        for (index, c) in self.coeffs.iter().enumerate() {
            if !c.is_finite() || c.abs() > COEFFICIENT_GUARD {
                return Err(Error::CoefficientOverflow {
                    index,
                    magnitude: c.abs(),
                });
            }
        }
        Ok(self)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.x0 != other.x0 || self.coeffs.len() != other.coeffs.len() {
            Err(Error::SeriesMismatch)
        } else {
            Ok(())
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(*a, *b))
            .collect();
        PolySeries {
            x0: self.x0,
            coeffs,
        }
        .guarded()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: f64) -> Result<Self> {
        PolySeries {
            x0: self.x0,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
        .guarded()
    }

    pub fn add_constant(&self, value: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += value;
        out
    }

    pub fn neg(&self) -> Self {
        PolySeries {
            x0: self.x0,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * other.coeffs[k - j]).sum())
            .collect();
        PolySeries {
            x0: self.x0,
            coeffs,
        }
        .guarded()
    }

    /// Series `r` with `r * other = self` to the common order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let q0 = other.coeffs[0];
        if q0 == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.coeffs.len();
        let mut r: Vec<f64> = Vec::with_capacity(n);
        for k in 0..n {
            let acc: f64 = (1..=k).map(|j| other.coeffs[j] * r[k - j]).sum();
            r.push((self.coeffs[k] - acc) / q0);
        }
        PolySeries {
            x0: self.x0,
            coeffs: r,
        }
        .guarded()
    }

    /// Natural logarithm; requires a positive constant term.
    pub fn ln_series(&self) -> Result<Self> {
        let p0 = self.coeffs[0];
        if !(p0 > 0.0) {
            return Err(Error::NonPositiveConstant(p0));
        }
        // k p_0 g_k = k p_k - sum_{j=1}^{k-1} j g_j p_{k-j}
        let n = self.coeffs.len();
        let mut g = vec![p0.ln(); n];
        for k in 1..n {
            let acc: f64 = (1..k).map(|j| j as f64 * g[j] * self.coeffs[k - j]).sum();
            g[k] = (self.coeffs[k] - acc / k as f64) / p0;
        }
        PolySeries {
            x0: self.x0,
            coeffs: g,
        }
        .guarded()
    }

    /// Exponential, via `e' = p' e`.
    pub fn exp_series(&self) -> Result<Self> {
        let n = self.coeffs.len();
        let mut e = vec![self.coeffs[0].exp(); n];
        for k in 1..n {
            let acc: f64 = (1..=k).map(|j| j as f64 * self.coeffs[j] * e[k - j]).sum();
            e[k] = acc / k as f64;
        }
        PolySeries {
            x0: self.x0,
            coeffs: e,
        }
        .guarded()
    }

    /// Reciprocal `1 / self`.
    pub fn recip(&self) -> Result<Self> {
        PolySeries::one(self.x0, self.order())?.div(self)
    }
}
