//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] stores `c_0, ..., c_N` of a power series together
//! with an optional bound on `sup |f|` over the unit disk. Series with
//! `sup_bound = 1` belong to the Schur class, so every coefficient is bounded
//! by one and the neglected tail at radius `r` is at most `r^(N+1) / (1 - r)`.
//! Evaluators use [`TruncatedSeries::check_truncation`] to turn that bound into
//! a hard error instead of a silent approximation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation order for series built by this crate.
pub const DEFAULT_ORDER: usize = 256;

/// Default bound on the neglected tail of a truncated sum.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-12;

/// Constant terms below this modulus are treated as zero by [`TruncatedSeries::reciprocal`].
pub const DEFAULT_ZERO_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
    sup_bound: Option<f64>,
    /// `true` when `coeffs` is the complete expansion (a polynomial that fits
    /// in the truncation order), so there is no neglected tail.
    exact: bool,
}

impl TruncatedSeries {
    /// Wraps raw coefficients `c_0..c_N`. The result carries no sup bound and
    /// is treated as a truncation of an infinite series.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self {
            coeffs,
            sup_bound: None,
            exact: false,
        })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// A polynomial padded with zeros up to `order`.
    ///
    /// Fails if the polynomial has more than `order + 1` coefficients.
    pub fn polynomial(coeffs: &[Complex64], order: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        let degree = effective_degree(coeffs);
        if degree > order {
            return Err(Error::out_of_range(
                "order",
                order as f64,
                "at least the polynomial degree",
            ));
        }
        let mut padded = vec![Complex64::new(0.0, 0.0); order + 1];
        padded[..=degree].copy_from_slice(&coeffs[..=degree]);
        Ok(Self {
            coeffs: padded,
            sup_bound: None,
            exact: true,
        })
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(Complex64::new(0.0, 0.0), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = c;
        Self {
            coeffs,
            sup_bound: Some(c.norm()),
            exact: true,
        }
    }

    /// `z^k` truncated at `order` (the zero series when `k > order`).
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        let exact = k <= order;
        if exact {
            coeffs[k] = Complex64::new(1.0, 0.0);
        }
        Self {
            coeffs,
            sup_bound: Some(1.0),
            exact,
        }
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, order)
    }

    pub fn with_sup_bound(mut self, bound: f64) -> Self {
        self.sup_bound = Some(bound);
        self
    }

    pub fn without_sup_bound(mut self) -> Self {
        self.sup_bound = None;
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `c_k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn sup_bound(&self) -> Option<f64> {
        self.sup_bound
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Index of the last nonzero coefficient (0 for the zero series).
    pub fn effective_degree(&self) -> usize {
        effective_degree(&self.coeffs)
    }

    /// Drops or zero-pads coefficients so that the order becomes `order`.
    pub fn resize(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        let keeps_everything = self.effective_degree() <= order;
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self {
            coeffs,
            sup_bound: self.sup_bound,
            exact: self.exact && keeps_everything,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k] + other.coeffs[k])
            .collect();
        let sup_bound = match (self.sup_bound, other.sup_bound) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self {
            coeffs,
            sup_bound,
            exact: self.exact
                && other.exact
                && self.effective_degree().max(other.effective_degree()) <= order,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
            sup_bound: self.sup_bound.map(|b| b * factor.norm()),
            exact: self.exact,
        }
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let (da, db) = (self.effective_degree(), other.effective_degree());
        // Iterate over the shorter effective support: O(N * min(da, db)).
        let (short, long, d_short) = if da <= db {
            (&self.coeffs, &other.coeffs, da)
        } else {
            (&other.coeffs, &self.coeffs, db)
        };
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=k.min(d_short) {
                acc += short[i] * long[k - i];
            }
            *slot = acc;
        }
        let sup_bound = match (self.sup_bound, other.sup_bound) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        Self {
            coeffs,
            sup_bound,
            exact: self.exact && other.exact && da + db <= order,
        }
    }

    /// Multiplicative inverse with the default zero tolerance.
    pub fn reciprocal(&self) -> Result<Self> {
        self.reciprocal_with_tol(DEFAULT_ZERO_TOL)
    }

    /// Multiplicative inverse via `g_0 = 1/c_0`,
    /// `g_k = -(1/c_0) * sum_{j=1..k} c_j g_{k-j}`.
    pub fn reciprocal_with_tol(&self, zero_tol: f64) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() <= zero_tol {
            return Err(Error::ZeroConstantTerm {
                modulus: c0.norm(),
                tol: zero_tol,
            });
        }
        let n = self.order();
        let degree = self.effective_degree();
        let inv_c0 = c0.inv();
        let mut g = vec![Complex64::new(0.0, 0.0); n + 1];
        g[0] = inv_c0;
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k.min(degree) {
                acc += self.coeffs[j] * g[k - j];
            }
            g[k] = -inv_c0 * acc;
        }
        Ok(Self {
            coeffs: g,
            sup_bound: None,
            exact: degree == 0,
        })
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Bound on the neglected tail at radius `r`: zero for exact series,
    /// `r^(N+1) / (1 - r)` otherwise (valid when every `|c_k| <= 1`).
    pub fn tail_bound(&self, r: f64) -> f64 {
        if self.exact {
            0.0
        } else {
            tail_bound(self.order(), r)
        }
    }

    pub fn check_truncation(&self, r: f64, tol: f64) -> Result<()> {
        check_truncation(self.order(), self.exact, r, tol)
    }

    /// The majorant `sum |c_k| r^k`, after checking the truncation tail.
    pub fn majorant(&self, r: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::RadiusOutOfRange(r));
        }
        self.check_truncation(r, DEFAULT_TRUNCATION_TOL)?;
        let mut power = 1.0;
        let mut sum = 0.0;
        for c in &self.coeffs {
            sum += c.norm() * power;
            power *= r;
        }
        Ok(sum)
    }
}

fn effective_degree(coeffs: &[Complex64]) -> usize {
    coeffs
        .iter()
        .rposition(|c| c.re != 0.0 || c.im != 0.0)
        .unwrap_or(0)
}

/// `r^(N+1) / (1 - r)`.
pub fn tail_bound(order: usize, r: f64) -> f64 {
    r.powi(order as i32 + 1) / (1.0 - r)
}

pub(crate) fn check_truncation(order: usize, exact: bool, r: f64, tol: f64) -> Result<()> {
    if exact {
        return Ok(());
    }
    let bound = tail_bound(order, r);
    if bound > tol {
        return Err(Error::TruncationInsufficient {
            order,
            r,
            bound,
            tol,
        });
    }
    Ok(())
}

/// Smallest order `N` for which `r^(N+1) / (1 - r) <= tol`, never below 64.
pub fn required_order(r: f64, tol: f64) -> usize {
    if r <= 0.0 {
        return 64;
    }
    let mut n = ((tol * (1.0 - r)).ln() / r.ln()).ceil().max(1.0) as usize - 1;
    while n > 0 && tail_bound(n - 1, r) <= tol {
        n -= 1;
    }
    while tail_bound(n, r) > tol {
        n += 1;
    }
    n.max(64)
}

/// `(a - s(z)) / (1 - a s(z))` for real `a` in `[0, 1)`.
///
/// The disk automorphism keeps the Schur class, so the result carries
/// `sup_bound = 1`.
pub fn mobius_map(a: f64, s: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::out_of_range("a", a, "[0, 1)"));
    }
    match s.sup_bound() {
        Some(b) if b <= 1.0 + 1e-12 => {}
        other => {
            return Err(Error::out_of_range(
                "sup_bound",
                other.unwrap_or(f64::INFINITY),
                "the inner series must map the disk into the closed disk",
            ))
        }
    }
    let order = s.order();
    let ac = Complex64::new(a, 0.0);
    let numerator = TruncatedSeries::constant(ac, order).add(&s.scale(Complex64::new(-1.0, 0.0)));
    let denominator = TruncatedSeries::one(order).add(&s.scale(-ac));
    let quotient = numerator.mul(&denominator.reciprocal()?);
    Ok(TruncatedSeries {
        exact: quotient.exact,
        sup_bound: Some(1.0),
        coeffs: quotient.coeffs,
    })
}

/// `z^m s(z^p)`: coefficient `s_k` moves to index `k p + m`.
pub fn monomial_lift(s: &TruncatedSeries, m: usize, p: usize) -> Result<TruncatedSeries> {
    if p == 0 {
        return Err(Error::out_of_range("p", 0.0, "p >= 1"));
    }
    let order = s.order() * p + m;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
    for (k, &c) in s.coeffs().iter().enumerate() {
        coeffs[k * p + m] = c;
    }
    Ok(TruncatedSeries {
        coeffs,
        sup_bound: s.sup_bound(),
        exact: s.is_exact(),
    })
}
