//! Left- and right-hand sides of the Bohr-type inequalities.
//!
//! Every functional depends only on coefficient moduli, so inputs are
//! [`LacunaryProfile`]s: the moduli `mu_k = |a_(kp+m)|` of a series supported on
//! the lattice `m, p + m, 2p + m, ...`. Full (non-lacunary) series use the
//! shape `m = 0, p = 1`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::powerseries::{check_truncation, TruncatedSeries, DEFAULT_TRUNCATION_TOL};

/// Default absolute tolerance on the margin for `satisfied`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Off-lattice coefficients above this modulus make a series incompatible
/// with a lacunary shape.
const LATTICE_TOL: f64 = 1e-12;

/// Gap `p >= 1` and offset `0 <= m <= p` of a lacunary series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub m: usize,
    pub p: usize,
}

impl Shape {
    pub fn new(m: usize, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::out_of_range("p", 0.0, "p >= 1"));
        }
        if m > p {
            return Err(Error::out_of_range("m", m as f64, "0 <= m <= p"));
        }
        Ok(Self { m, p })
    }

    /// The full power series shape `(m, p) = (0, 1)`.
    pub const FULL: Shape = Shape { m: 0, p: 1 };

    /// Series index of lattice position `k`.
    pub fn index(&self, k: usize) -> usize {
        k * self.p + self.m
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, p={})", self.m, self.p)
    }
}

/// Coefficient moduli of a lacunary series.
#[derive(Debug, Clone, PartialEq)]
pub struct LacunaryProfile {
    shape: Shape,
    mods: Vec<f64>,
    /// Truncation order of the underlying series.
    order: usize,
    exact: bool,
}

impl LacunaryProfile {
    /// Moduli of a truncated (infinite) series: `mods[k] = |a_(kp+m)|`.
    pub fn new(shape: Shape, mods: Vec<f64>) -> Result<Self> {
        Self::build(shape, mods, false)
    }

    /// Moduli of a polynomial; there is no neglected tail.
    pub fn polynomial(shape: Shape, mods: Vec<f64>) -> Result<Self> {
        Self::build(shape, mods, true)
    }

    fn build(shape: Shape, mods: Vec<f64>, exact: bool) -> Result<Self> {
        if mods.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(&bad) = mods.iter().find(|&&x| !(x >= 0.0 && x.is_finite())) {
            return Err(Error::out_of_range("mu", bad, "finite and nonnegative"));
        }
        let order = shape.index(mods.len() - 1);
        Ok(Self {
            shape,
            mods,
            order,
            exact,
        })
    }

    /// Reads the lattice moduli of `series`. Phases are dropped.
    pub fn from_series(series: &TruncatedSeries, shape: Shape) -> Result<Self> {
        let order = series.order();
        if order < shape.m {
            return Err(Error::ShapeMismatch(format!(
                "series of order {order} is too short for offset m = {}",
                shape.m
            )));
        }
        for (i, c) in series.coeffs().iter().enumerate() {
            let on_lattice = i >= shape.m && (i - shape.m).is_multiple_of(shape.p);
            if !on_lattice && c.norm() > LATTICE_TOL {
                return Err(Error::ShapeMismatch(format!(
                    "coefficient {i} has modulus {:e} off the lattice of {shape}",
                    c.norm()
                )));
            }
        }
        let count = (order - shape.m) / shape.p + 1;
        let mods = (0..count)
            .map(|k| series.coeff(shape.index(k)).norm())
            .collect();
        Ok(Self {
            shape,
            mods,
            order,
            exact: series.is_exact(),
        })
    }

    pub(crate) fn from_parts(shape: Shape, mods: Vec<f64>, order: usize, exact: bool) -> Self {
        Self {
            shape,
            mods,
            order,
            exact,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn mods(&self) -> &[f64] {
        &self.mods
    }

    /// `mu_k`, zero past the stored range.
    pub fn mu(&self, k: usize) -> f64 {
        self.mods.get(k).copied().unwrap_or(0.0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// `|f(0)|`: equal to `mu_0` for `m = 0`, zero otherwise.
    pub fn origin_value(&self) -> f64 {
        if self.shape.m == 0 {
            self.mods[0]
        } else {
            0.0
        }
    }

    /// `sum_{k >= from} mu_k^2 r^(2 k p)`, optionally with the extra `r^(2m)`.
    fn squares(&self, r: f64, from: usize, with_offset: bool) -> f64 {
        let step = r.powi(2 * self.shape.p as i32);
        let mut power = if with_offset {
            r.powi(2 * self.shape.m as i32)
        } else {
            1.0
        } * step.powi(from as i32);
        let mut sum = 0.0;
        for &mu in self.mods.iter().skip(from) {
            sum += mu * mu * power;
            power *= step;
        }
        sum
    }

    /// Terms `mu_k r^(kp+m)` for `k >= 0`, as an iterator.
    fn terms(&self, r: f64) -> impl Iterator<Item = (usize, f64)> + '_ {
        let step = r.powi(self.shape.p as i32);
        let mut power = r.powi(self.shape.m as i32);
        self.mods.iter().enumerate().map(move |(k, &mu)| {
            let term = mu * power;
            power *= step;
            (k, term)
        })
    }

    /// `(-1)^(kp+m)`.
    fn sign(&self, k: usize) -> f64 {
        if self.shape.index(k).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// Inequalities the crate can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// Classical Bohr inequality `B_f(r) <= 1`.
    ThmA,
    /// Alternating Bohr inequality `|A_f(r)| <= 1`.
    Alternating,
    /// Refined Bohr inequality.
    ThmB,
    /// Odd-index lacunary bound, unconditional on `[0, 1)`.
    LemmaDOdd,
    /// Even-index lacunary bound, unconditional on `[0, 1)`.
    LemmaDEven,
    /// Alternating lacunary inequality, `p` odd.
    ThmC,
    /// `|f(0)|^s` plus the refined Bohr functional.
    Thm31,
    /// Lacunary inequality for maps fixing the origin.
    Thm32,
    /// `Thm32` at `(m, p) = (0, 1)`.
    Cor33,
    /// Odd-index lacunary inequality with the squared tail.
    Thm34,
    /// Vector alternating inequality (same functional as `ThmC`).
    Thm41,
    /// Vector form of `Cor33` for maps `f = z g`.
    Cor42,
    /// Alternating inequality with the `Gamma` weight, `p` odd.
    Cor43,
    /// Even-index tail bound for `f = z g`.
    Lemma21,
    /// Bombieri envelope on `[1/3, 1/sqrt 2]`.
    BombieriUpper,
    /// Bombieri-Bourgain envelope on `(1/sqrt 2, 1)`.
    BBUpper,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::ThmA,
        TheoremId::Alternating,
        TheoremId::ThmB,
        TheoremId::LemmaDOdd,
        TheoremId::LemmaDEven,
        TheoremId::ThmC,
        TheoremId::Thm31,
        TheoremId::Thm32,
        TheoremId::Cor33,
        TheoremId::Thm34,
        TheoremId::Thm41,
        TheoremId::Cor42,
        TheoremId::Cor43,
        TheoremId::Lemma21,
        TheoremId::BombieriUpper,
        TheoremId::BBUpper,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::ThmA => "ThmA",
            TheoremId::Alternating => "Alternating",
            TheoremId::ThmB => "ThmB",
            TheoremId::LemmaDOdd => "LemmaDOdd",
            TheoremId::LemmaDEven => "LemmaDEven",
            TheoremId::ThmC => "ThmC",
            TheoremId::Thm31 => "Thm31",
            TheoremId::Thm32 => "Thm32",
            TheoremId::Cor33 => "Cor33",
            TheoremId::Thm34 => "Thm34",
            TheoremId::Thm41 => "Thm41",
            TheoremId::Cor42 => "Cor42",
            TheoremId::Cor43 => "Cor43",
            TheoremId::Lemma21 => "Lemma21",
            TheoremId::BombieriUpper => "BombieriUpper",
            TheoremId::BBUpper => "BBUpper",
        }
    }

    /// Whether the inequality needs an odd gap.
    pub fn requires_odd_gap(&self) -> bool {
        matches!(self, TheoremId::ThmC | TheoremId::Thm41 | TheoremId::Cor43)
    }

    /// Whether the functional is only defined for full series `(0, 1)`.
    pub fn requires_full_shape(&self) -> bool {
        matches!(
            self,
            TheoremId::ThmB | TheoremId::Thm31 | TheoremId::Cor33 | TheoremId::Cor42
        )
    }

    /// Whether the functional assumes `f(0) = 0` with no `z^m` term.
    pub fn fixes_origin(&self) -> bool {
        matches!(self, TheoremId::Thm32 | TheoremId::Cor33 | TheoremId::Cor42)
    }

    /// Whether the shape is admissible for this inequality.
    pub fn accepts(&self, shape: Shape) -> bool {
        (!self.requires_odd_gap() || shape.p % 2 == 1)
            && (!self.requires_full_shape() || shape == Shape::FULL)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Named real parameters of a theorem.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Extras {
    /// Exponent `s > 0` on `|f(0)|` in [`TheoremId::Thm31`].
    pub s: Option<f64>,
}

impl Extras {
    pub fn with_s(s: f64) -> Self {
        Self { s: Some(s) }
    }
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub theorem: TheoremId,
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub margin: f64,
}

/// Tolerances used when evaluating functionals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluator {
    /// Absolute tolerance on the margin.
    pub tol: f64,
    /// Bound the neglected tail must stay under.
    pub truncation_tol: f64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            truncation_tol: DEFAULT_TRUNCATION_TOL,
        }
    }
}

/// `w * s`, with the convention `w * 0 = 0` for the singular weights at `r = 0`.
fn weighted(weight: f64, sum: f64) -> f64 {
    if sum == 0.0 {
        0.0
    } else {
        weight * sum
    }
}

impl Evaluator {
    fn check(&self, theorem: TheoremId, r: f64, lhs: f64, rhs: f64) -> InequalityCheck {
        let margin = rhs - lhs;
        InequalityCheck {
            theorem,
            r,
            lhs,
            rhs,
            satisfied: margin >= -self.tol,
            margin,
        }
    }

    fn validate(&self, profile: &LacunaryProfile, r: f64) -> Result<()> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::RadiusOutOfRange(r));
        }
        check_truncation(profile.order, profile.exact, r, self.truncation_tol)
    }

    /// Bohr sum `B = sum mu_k r^(kp+m)` and alternating sum
    /// `A = sum (-1)^(kp+m) mu_k r^(kp+m)`.
    pub fn bohr_sums(&self, profile: &LacunaryProfile, r: f64) -> Result<(f64, f64)> {
        self.validate(profile, r)?;
        Ok(profile.terms(r).fold((0.0, 0.0), |(b, a), (k, term)| {
            (b + term, a + profile.sign(k) * term)
        }))
    }

    pub fn refined_thm_b(&self, profile: &LacunaryProfile, r: f64) -> Result<InequalityCheck> {
        if profile.shape != Shape::FULL {
            return Err(Error::ShapeMismatch(format!(
                "ThmB needs (m, p) = (0, 1), got {}",
                profile.shape
            )));
        }
        self.validate(profile, r)?;
        let mu0 = profile.mu(0);
        let linear: f64 = profile.terms(r).skip(1).map(|(_, t)| t).sum();
        let squares = profile.squares(r, 1, false);
        let lhs = linear + (1.0 / (1.0 + mu0) + r / (1.0 - r)) * squares;
        let rhs = r / (1.0 - r) * (1.0 - mu0 * mu0);
        Ok(self.check(TheoremId::ThmB, r, lhs, rhs))
    }

    /// The odd-index and even-index lacunary bounds.
    pub fn lemma_d_bounds(
        &self,
        profile: &LacunaryProfile,
        r: f64,
    ) -> Result<(InequalityCheck, InequalityCheck)> {
        self.validate(profile, r)?;
        let p = profile.shape.p as i32;
        let x = r.powi(p);
        let x2 = x * x;
        let mu0 = profile.mu(0);

        // Strip the common r^m: mu_k x^k.
        let mut odd_linear = 0.0;
        let mut even_linear = 0.0;
        let mut power = 1.0;
        for (k, &mu) in profile.mods.iter().enumerate() {
            if k > 0 {
                if k % 2 == 1 {
                    odd_linear += mu * power;
                } else {
                    even_linear += mu * power;
                }
            }
            power *= x;
        }
        let all_squares = profile.squares(r, 0, false);
        let tail_squares = profile.squares(r, 1, false);

        let odd_lhs = odd_linear + x / (1.0 - x2) * all_squares;
        let odd_rhs = x / (1.0 - x2);
        let even_lhs = even_linear + (1.0 / (1.0 + mu0) + x2 / (1.0 - x2)) * tail_squares;
        let even_rhs = (1.0 - mu0 * mu0) * x2 / (1.0 - x2);
        Ok((
            self.check(TheoremId::LemmaDOdd, r, odd_lhs, odd_rhs),
            self.check(TheoremId::LemmaDEven, r, even_lhs, even_rhs),
        ))
    }

    pub fn evaluate_theorem(
        &self,
        id: TheoremId,
        profile: &LacunaryProfile,
        r: f64,
        extras: Extras,
    ) -> Result<InequalityCheck> {
        let shape = profile.shape;
        if id.requires_odd_gap() && shape.p.is_multiple_of(2) {
            return Err(Error::OddGapRequired {
                id: id.name(),
                p: shape.p,
            });
        }
        if id.requires_full_shape() && shape != Shape::FULL {
            return Err(Error::ShapeMismatch(format!(
                "{id} needs (m, p) = (0, 1), got {shape}"
            )));
        }
        if id.fixes_origin() && profile.mu(0) > LATTICE_TOL {
            return Err(Error::ShapeMismatch(format!(
                "{id} needs a vanishing a_m term, got |a_m| = {}",
                profile.mu(0)
            )));
        }
        match id {
            TheoremId::ThmB => return self.refined_thm_b(profile, r),
            TheoremId::LemmaDOdd => return self.lemma_d_bounds(profile, r).map(|c| c.0),
            TheoremId::LemmaDEven => return self.lemma_d_bounds(profile, r).map(|c| c.1),
            TheoremId::BombieriUpper => {
                window(id, r, 1.0 / 3.0, FRAC_1_SQRT_2, true)?;
            }
            TheoremId::BBUpper => {
                window(id, r, FRAC_1_SQRT_2, 1.0, false)?;
            }
            _ => {}
        }
        self.validate(profile, r)?;

        let (m, p) = (shape.m as i32, shape.p as i32);
        let rp = r.powi(p);
        let r2p = rp * rp;
        let (lhs, rhs) = match id {
            TheoremId::ThmA => (self.bohr_sums(profile, r)?.0, 1.0),
            TheoremId::Alternating => (self.bohr_sums(profile, r)?.1.abs(), 1.0),
            TheoremId::ThmC => {
                let alt = alternating_tail(profile, r);
                let sign = parity_sign(shape.m + shape.p);
                let squares = profile.squares(r, 0, false);
                let lhs = alt + sign * r.powi(p + m) / (1.0 - r2p) * squares;
                (lhs.abs(), 1.0)
            }
            TheoremId::Thm41 => {
                let alt = alternating_tail(profile, r);
                let sign = parity_sign(shape.m + shape.p);
                let squares = profile.squares(r, 0, true);
                let lhs = alt + sign * (r.powi(p - m) / (1.0 - r2p)) * squares;
                (lhs.abs(), 1.0)
            }
            TheoremId::Thm31 => {
                let s = match extras.s {
                    Some(s) if s > 0.0 => s,
                    other => {
                        return Err(Error::out_of_range(
                            "s",
                            other.unwrap_or(f64::NAN),
                            "Thm31 needs an exponent s > 0",
                        ))
                    }
                };
                let mu0 = profile.mu(0);
                let linear: f64 = profile.terms(r).skip(1).map(|(_, t)| t).sum();
                let squares = profile.squares(r, 1, false);
                let lhs = mu0.powf(s) + linear + (1.0 / (1.0 + mu0) + r / (1.0 - r)) * squares;
                (lhs, 1.0)
            }
            TheoremId::Thm32 | TheoremId::Cor33 | TheoremId::Cor42 => {
                let linear: f64 = profile.terms(r).skip(1).map(|(_, t)| t).sum();
                let lambda = profile.mu(1) * r.powi(p + m);
                let squares = profile.squares(r, 2, true);
                let weight = 1.0 / (r.powi(p + m) + lambda) + r.powi(-m) / (1.0 - rp);
                (linear + weighted(weight, squares), 1.0)
            }
            TheoremId::Thm34 => {
                let odd: f64 = profile
                    .terms(r)
                    .filter(|(k, _)| k % 2 == 1)
                    .map(|(_, t)| t)
                    .sum();
                let squares = profile.squares(r, 0, true);
                (odd + r.powi(p - m) / (1.0 - r2p) * squares, 1.0)
            }
            TheoremId::Cor43 => {
                let alt = alternating_tail(profile, r);
                let gamma = profile.mu(0) * r.powi(m);
                let squares = profile.squares(r, 0, true);
                let weight = 1.0 / (r.powi(m) + gamma) + r.powi(2 * p - m) / (1.0 - r2p);
                let lhs = alt + parity_sign(shape.m) * weighted(weight, squares);
                (lhs.abs(), 1.0)
            }
            TheoremId::Lemma21 => {
                let even: f64 = profile
                    .terms(r)
                    .filter(|(k, _)| *k > 0 && k % 2 == 0)
                    .map(|(_, t)| t)
                    .sum();
                let head = profile.mu(0) * r.powi(m);
                let rhs = r.powi(2 * p - m) / (1.0 - r2p) * (r.powi(2 * m) - head * head);
                (even, rhs)
            }
            TheoremId::BombieriUpper => {
                let b = self.bohr_sums(profile, r)?.0;
                (b, (3.0 - (8.0 * (1.0 - r * r)).sqrt()) / r)
            }
            TheoremId::BBUpper => {
                let b = self.bohr_sums(profile, r)?.0;
                (b, 1.0 / (1.0 - r * r).sqrt())
            }
            TheoremId::ThmB | TheoremId::LemmaDOdd | TheoremId::LemmaDEven => unreachable!(),
        };
        Ok(self.check(id, r, lhs, rhs))
    }
}

/// `sum_{k >= 1} (-1)^(kp+m) mu_k r^(kp+m)`.
fn alternating_tail(profile: &LacunaryProfile, r: f64) -> f64 {
    profile
        .terms(r)
        .skip(1)
        .map(|(k, t)| profile.sign(k) * t)
        .sum()
}

fn parity_sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn window(id: TheoremId, r: f64, lo: f64, hi: f64, closed_hi: bool) -> Result<()> {
    let inside = if closed_hi {
        r >= lo && r <= hi
    } else {
        r > lo && r < hi
    };
    if inside {
        Ok(())
    } else {
        Err(Error::RadiusOutOfWindow {
            id: id.name(),
            r,
            lo,
            hi,
        })
    }
}

/// [`Evaluator::bohr_sums`] with default tolerances.
pub fn bohr_sums(profile: &LacunaryProfile, r: f64) -> Result<(f64, f64)> {
    Evaluator::default().bohr_sums(profile, r)
}

/// [`Evaluator::refined_thm_b`] with default tolerances.
pub fn refined_thm_b(profile: &LacunaryProfile, r: f64) -> Result<InequalityCheck> {
    Evaluator::default().refined_thm_b(profile, r)
}

/// [`Evaluator::lemma_d_bounds`] with default tolerances.
pub fn lemma_d_bounds(
    profile: &LacunaryProfile,
    r: f64,
) -> Result<(InequalityCheck, InequalityCheck)> {
    Evaluator::default().lemma_d_bounds(profile, r)
}

/// [`Evaluator::evaluate_theorem`] with default tolerances.
pub fn evaluate_theorem(
    id: TheoremId,
    profile: &LacunaryProfile,
    r: f64,
    extras: Extras,
) -> Result<InequalityCheck> {
    Evaluator::default().evaluate_theorem(id, profile, r, extras)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{extremal_family, ExtremalKind};

    fn family(kind: ExtremalKind, a: f64, m: usize, p: usize, shape: Shape) -> LacunaryProfile {
        let series = extremal_family(kind, a, m, p, 512).unwrap();
        LacunaryProfile::from_series(&series, shape).unwrap()
    }

    fn mobius(a: f64) -> LacunaryProfile {
        family(ExtremalKind::L1, a, 0, 1, Shape::FULL)
    }

    #[test]
    fn bohr_sum_of_mobius_profile() {
        let profile = mobius(0.5);
        let (b, _) = bohr_sums(&profile, 1.0 / 3.0).unwrap();
        assert!((b - 0.8).abs() < 1e-14, "{b}");
        let (b, _) = bohr_sums(&profile, 0.5).unwrap();
        assert!((b - 1.0).abs() < 1e-14, "{b}");
        let zero = LacunaryProfile::polynomial(Shape::FULL, vec![0.0; 4]).unwrap();
        assert_eq!(bohr_sums(&zero, 0.7).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn alternating_sum_closed_form() {
        // A = a - (1-a^2) r / (1 + a r) for the Mobius profile.
        let a = 0.5;
        let r = 0.4;
        let (_, alt) = bohr_sums(&mobius(a), r).unwrap();
        assert!((alt - (a - (1.0 - a * a) * r / (1.0 + a * r))).abs() < 1e-14);
    }

    #[test]
    fn refined_thm_b_equality_examples() {
        let c = refined_thm_b(&mobius(0.5), 0.2).unwrap();
        assert!((c.lhs - 0.1875).abs() < 1e-14 && (c.rhs - 0.1875).abs() < 1e-14);
        assert!(c.satisfied);
        let c = refined_thm_b(&mobius(0.5), 0.5).unwrap();
        assert!((c.lhs - 0.75).abs() < 1e-13 && (c.rhs - 0.75).abs() < 1e-14);

        let zero = LacunaryProfile::polynomial(Shape::FULL, vec![0.0]).unwrap();
        let c = refined_thm_b(&zero, 0.3).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert!((c.rhs - 0.3 / 0.7).abs() < 1e-15);
    }

    #[test]
    fn refined_thm_b_rejects_lacunary_shapes() {
        let p = LacunaryProfile::polynomial(Shape::new(1, 2).unwrap(), vec![0.5]).unwrap();
        assert!(matches!(
            refined_thm_b(&p, 0.2),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn lemma_d_examples() {
        let profile = family(ExtremalKind::LacunaryD, 0.5, 0, 1, Shape::FULL);
        let (odd, even) = lemma_d_bounds(&profile, 0.5).unwrap();
        assert!((even.lhs - 0.25).abs() < 1e-14 && (even.rhs - 0.25).abs() < 1e-15);
        assert!((odd.lhs - odd.rhs).abs() < 1e-13);

        let zero = LacunaryProfile::polynomial(Shape::new(0, 2).unwrap(), vec![0.0]).unwrap();
        let (odd, _) = lemma_d_bounds(&zero, 0.3).unwrap();
        assert_eq!(odd.lhs, 0.0);
        assert!((odd.rhs - 0.09 / (1.0 - 0.0081)).abs() < 1e-15);

        let shape = Shape::new(1, 2).unwrap();
        let profile = family(ExtremalKind::LacunaryD, 0.9, 1, 2, shape);
        let (odd, even) = lemma_d_bounds(&profile, 0.6).unwrap();
        assert!(odd.satisfied && even.satisfied);
    }

    #[test]
    fn thm31_boundary_case() {
        let c = evaluate_theorem(TheoremId::Thm31, &mobius(0.5), 0.4, Extras::with_s(1.0)).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-13, "{}", c.lhs);
        assert!(c.satisfied);
        assert!(evaluate_theorem(TheoremId::Thm31, &mobius(0.5), 0.4, Extras::default()).is_err());
    }

    #[test]
    fn thm34_monomial_at_root() {
        let shape = Shape::new(1, 1).unwrap();
        let profile = family(ExtremalKind::Monomial, 0.0, 1, 1, shape);
        let c =
            evaluate_theorem(TheoremId::Thm34, &profile, FRAC_1_SQRT_2, Extras::default()).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-14, "{}", c.lhs);
    }

    #[test]
    fn bombieri_envelope_meets_bohr_bound() {
        let c = evaluate_theorem(
            TheoremId::BombieriUpper,
            &mobius(0.3),
            1.0 / 3.0,
            Extras::default(),
        )
        .unwrap();
        assert!((c.rhs - 1.0).abs() < 1e-12);
        assert!(matches!(
            evaluate_theorem(
                TheoremId::BombieriUpper,
                &mobius(0.3),
                0.2,
                Extras::default()
            ),
            Err(Error::RadiusOutOfWindow { .. })
        ));
        assert!(matches!(
            evaluate_theorem(
                TheoremId::BBUpper,
                &mobius(0.3),
                FRAC_1_SQRT_2,
                Extras::default()
            ),
            Err(Error::RadiusOutOfWindow { .. })
        ));
    }

    #[test]
    fn thm32_matches_l2_closed_form() {
        for &(m, p) in &[(0, 1), (1, 1), (0, 2), (2, 3)] {
            let shape = Shape::new(m, p).unwrap();
            for &a in &[0.0, 0.3, 0.8] {
                let profile = family(ExtremalKind::L2, a, m, p, shape);
                for &r in &[0.2, 0.5, 0.7] {
                    let c =
                        evaluate_theorem(TheoremId::Thm32, &profile, r, Extras::default()).unwrap();
                    let (m, p) = (m as i32, p as i32);
                    let closed =
                        a * r.powi(p + m) + (1.0 - a * a) * r.powi(2 * p + m) / (1.0 - r.powi(p));
                    assert!(
                        (c.lhs - closed).abs() < 1e-13,
                        "{a} {r}: {} vs {closed}",
                        c.lhs
                    );
                }
            }
        }
    }

    #[test]
    fn odd_gap_and_origin_errors() {
        let even_gap = LacunaryProfile::polynomial(Shape::new(0, 2).unwrap(), vec![0.5]).unwrap();
        for id in [TheoremId::ThmC, TheoremId::Thm41, TheoremId::Cor43] {
            assert!(matches!(
                evaluate_theorem(id, &even_gap, 0.3, Extras::default()),
                Err(Error::OddGapRequired { .. })
            ));
        }
        assert!(matches!(
            evaluate_theorem(TheoremId::Thm32, &even_gap, 0.3, Extras::default()),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn radius_and_truncation_errors() {
        let profile = mobius(0.5);
        assert!(matches!(
            bohr_sums(&profile, 1.0),
            Err(Error::RadiusOutOfRange(_))
        ));
        assert!(matches!(
            bohr_sums(&profile, -0.1),
            Err(Error::RadiusOutOfRange(_))
        ));
        assert!(matches!(
            bohr_sums(&profile, 0.99),
            Err(Error::TruncationInsufficient { .. })
        ));
    }

    #[test]
    fn singular_weights_vanish_at_origin() {
        let shape = Shape::new(1, 1).unwrap();
        let profile = family(ExtremalKind::L2, 0.4, 1, 1, shape);
        let c = evaluate_theorem(TheoremId::Thm32, &profile, 0.0, Extras::default()).unwrap();
        assert_eq!(c.lhs, 0.0);
        let c = evaluate_theorem(
            TheoremId::Cor43,
            &family(ExtremalKind::LacunaryD, 0.4, 1, 1, shape),
            0.0,
            Extras::default(),
        )
        .unwrap();
        assert_eq!(c.lhs, 0.0);
    }

    #[test]
    fn profile_from_series_rejects_off_lattice() {
        let series = extremal_family(ExtremalKind::L1, 0.5, 0, 1, 16).unwrap();
        assert!(matches!(
            LacunaryProfile::from_series(&series, Shape::new(0, 2).unwrap()),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn theorem_names_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert!(matches!(
            "Thm99".parse::<TheoremId>(),
            Err(Error::UnknownTheorem(_))
        ));
    }
}
