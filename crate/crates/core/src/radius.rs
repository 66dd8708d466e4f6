//! Sharp-radius equations and their roots in `(0, 1)`.
//!
//! Roots are found by bisection on a verified sign change; closed forms are
//! used where they exist.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{Extras, Shape, TheoremId};

/// Default bisection tolerance on the bracket width.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Bisection stops after this many halvings.
pub const MAX_ITERATIONS: usize = 200;

/// Smallest tolerance bisection on `[0, 1]` can resolve.
pub const MIN_TOL: f64 = 1e-15;

/// Left end of the bracket for `G(r)`.
pub const THM32_BRACKET_START: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RadiusId {
    /// `r^(2p) + r^(p+m) - 1 = 0`, shared by the alternating and odd-index
    /// lacunary inequalities.
    ThmC34,
    /// `r_s = (1 - a0^s) / (2 - a0^2 - a0^s)`.
    Thm31,
    /// `G(r) = 5 r^(2p+m) - 2 r^(p+m) + r^m + 4 r^p - 4 = 0`.
    Thm32,
    /// `r^(2p+m) + 2 r^(2p) - 1 = 0`.
    Cor43,
    /// `3 r - 1 = 0`.
    ClassicBohr,
    /// `3 r^2 - 1 = 0`.
    Alternating,
}

impl RadiusId {
    pub const ALL: [RadiusId; 6] = [
        RadiusId::ThmC34,
        RadiusId::Thm31,
        RadiusId::Thm32,
        RadiusId::Cor43,
        RadiusId::ClassicBohr,
        RadiusId::Alternating,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RadiusId::ThmC34 => "ThmC34",
            RadiusId::Thm31 => "Thm31",
            RadiusId::Thm32 => "Thm32",
            RadiusId::Cor43 => "Cor43",
            RadiusId::ClassicBohr => "ClassicBohr",
            RadiusId::Alternating => "Alternating",
        }
    }
}

impl fmt::Display for RadiusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RadiusId {
    type Err = Error;

    /// Accepts radius names and, for convenience, the theorem ids that share
    /// a radius (`ThmC`, `Thm34`, `Thm41` map to `ThmC34`, and so on).
    fn from_str(s: &str) -> Result<Self> {
        if let Some(id) = RadiusId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
        {
            return Ok(id);
        }
        let theorem: TheoremId = s.parse()?;
        radius_id_for(theorem).ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

fn radius_id_for(theorem: TheoremId) -> Option<RadiusId> {
    match theorem {
        TheoremId::ThmC | TheoremId::Thm34 | TheoremId::Thm41 => Some(RadiusId::ThmC34),
        TheoremId::Thm32 | TheoremId::Cor33 | TheoremId::Cor42 => Some(RadiusId::Thm32),
        TheoremId::Cor43 => Some(RadiusId::Cor43),
        TheoremId::Thm31 => Some(RadiusId::Thm31),
        TheoremId::ThmA => Some(RadiusId::ClassicBohr),
        TheoremId::Alternating => Some(RadiusId::Alternating),
        _ => None,
    }
}

/// A radius equation with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusSpec {
    pub id: RadiusId,
    pub shape: Shape,
    /// `|f(0)|` for [`RadiusId::Thm31`].
    pub a0: Option<f64>,
    /// Exponent on `|f(0)|` for [`RadiusId::Thm31`].
    pub s: Option<f64>,
}

impl RadiusSpec {
    pub fn new(id: RadiusId, shape: Shape) -> Result<Self> {
        if id == RadiusId::Thm31 {
            return Err(Error::out_of_range(
                "a0",
                f64::NAN,
                "Thm31 radius needs a0 and s; use RadiusSpec::thm31",
            ));
        }
        Ok(Self {
            id,
            shape,
            a0: None,
            s: None,
        })
    }

    pub fn thm_c34(m: usize, p: usize) -> Result<Self> {
        Self::new(RadiusId::ThmC34, Shape::new(m, p)?)
    }

    pub fn thm32(m: usize, p: usize) -> Result<Self> {
        Self::new(RadiusId::Thm32, Shape::new(m, p)?)
    }

    pub fn cor43(m: usize, p: usize) -> Result<Self> {
        Self::new(RadiusId::Cor43, Shape::new(m, p)?)
    }

    pub fn classic_bohr() -> Self {
        Self {
            id: RadiusId::ClassicBohr,
            shape: Shape::FULL,
            a0: None,
            s: None,
        }
    }

    pub fn alternating() -> Self {
        Self {
            id: RadiusId::Alternating,
            ..Self::classic_bohr()
        }
    }

    pub fn thm31(a0: f64, s: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&a0) {
            return Err(Error::out_of_range("a0", a0, "[0, 1)"));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::out_of_range("s", s, "s > 0"));
        }
        Ok(Self {
            id: RadiusId::Thm31,
            shape: Shape::FULL,
            a0: Some(a0),
            s: Some(s),
        })
    }

    /// The radius equation governing `theorem`, if it has one.
    ///
    /// `a0` is only consulted for [`TheoremId::Thm31`], whose radius depends
    /// on `|f(0)|`.
    pub fn for_theorem(
        theorem: TheoremId,
        shape: Shape,
        extras: Extras,
        a0: Option<f64>,
    ) -> Result<Option<Self>> {
        let Some(id) = radius_id_for(theorem) else {
            return Ok(None);
        };
        let spec = match id {
            RadiusId::Thm31 => {
                let s = extras
                    .s
                    .ok_or_else(|| Error::out_of_range("s", f64::NAN, "Thm31 needs s"))?;
                let a0 = a0.ok_or_else(|| Error::out_of_range("a0", f64::NAN, "Thm31 needs a0"))?;
                Self::thm31(a0, s)?
            }
            RadiusId::ClassicBohr => Self::classic_bohr(),
            RadiusId::Alternating => Self::alternating(),
            _ => Self::new(id, shape)?,
        };
        Ok(Some(spec))
    }

    fn thm31_params(&self) -> (f64, f64) {
        (
            self.a0.expect("validated by RadiusSpec::thm31"),
            self.s.expect("validated by RadiusSpec::thm31"),
        )
    }
}

/// Value of the radius equation at `r`; the radius is its root in `(0, 1)`.
pub fn equation_value(spec: &RadiusSpec, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange(r));
    }
    Ok(equation_unchecked(spec, r))
}

fn equation_unchecked(spec: &RadiusSpec, r: f64) -> f64 {
    let (m, p) = (spec.shape.m as i32, spec.shape.p as i32);
    match spec.id {
        RadiusId::ThmC34 => r.powi(2 * p) + r.powi(p + m) - 1.0,
        RadiusId::Thm32 => {
            5.0 * r.powi(2 * p + m) - 2.0 * r.powi(p + m) + r.powi(m) + 4.0 * r.powi(p) - 4.0
        }
        RadiusId::Cor43 => r.powi(2 * p + m) + 2.0 * r.powi(2 * p) - 1.0,
        RadiusId::Thm31 => {
            let (a0, s) = spec.thm31_params();
            let a0s = a0.powf(s);
            r * (2.0 - a0 * a0 - a0s) - (1.0 - a0s)
        }
        RadiusId::ClassicBohr => 3.0 * r - 1.0,
        RadiusId::Alternating => 3.0 * r * r - 1.0,
    }
}

/// The alternating-lacunary radius equation in its factored form
/// `r^p (r^p + r^m) - 1`; algebraically the same as [`RadiusId::ThmC34`].
pub fn thm_c_equation(m: usize, p: usize, r: f64) -> f64 {
    let (m, p) = (m as i32, p as i32);
    r.powi(p) * (r.powi(p) + r.powi(m)) - 1.0
}

/// Closed form of the root when one is known.
pub fn closed_form(spec: &RadiusSpec) -> Option<f64> {
    let (m, p) = (spec.shape.m, spec.shape.p as f64);
    match spec.id {
        RadiusId::Thm31 => {
            let (a0, s) = spec.thm31_params();
            let a0s = a0.powf(s);
            Some((1.0 - a0s) / (2.0 - a0 * a0 - a0s))
        }
        RadiusId::Thm32 if m == 0 => Some(0.6f64.powf(1.0 / p)),
        RadiusId::Cor43 if m == 0 => Some(3f64.powf(-1.0 / (2.0 * p))),
        RadiusId::ThmC34 if m == spec.shape.p => Some(2f64.powf(-1.0 / (2.0 * p))),
        // r^p is the golden-ratio conjugate.
        RadiusId::ThmC34 if m == 0 => Some(((5f64.sqrt() - 1.0) / 2.0).powf(1.0 / p)),
        RadiusId::ClassicBohr => Some(1.0 / 3.0),
        RadiusId::Alternating => Some(1.0 / 3f64.sqrt()),
        _ => None,
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol < MIN_TOL {
        return Err(Error::ToleranceTooSmall(tol));
    }
    Ok(())
}

/// Root of the radius equation in `(0, 1)`: the closed form when available,
/// bisection otherwise.
pub fn solve_radius(spec: &RadiusSpec, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    match closed_form(spec) {
        Some(r) => Ok(r),
        None => solve_radius_bisection(spec, tol),
    }
}

/// Root by bisection only, ignoring closed forms.
pub fn solve_radius_bisection(spec: &RadiusSpec, tol: f64) -> Result<f64> {
    let lo = if spec.id == RadiusId::Thm32 {
        THM32_BRACKET_START
    } else {
        0.0
    };
    bisect(|r| equation_unchecked(spec, r), lo, 1.0, tol)
}

/// Bisection on `[lo, hi]` for an increasing sign change `f(lo) < 0 < f(hi)`.
/// Returns the midpoint of the final bracket of width at most `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = f(mid);
        if value == 0.0 {
            return Ok(mid);
        }
        if value < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= tol {
        Ok(0.5 * (lo + hi))
    } else {
        Err(Error::ToleranceTooSmall(tol))
    }
}

/// Radius at which the Bohr sum of `(a - z) / (1 - a z)` reaches one.
///
/// The Bohr sum is `a + (1 - a^2) r / (1 - a r)`; after removing the common
/// factor `1 - a` the equation is `(1 + a) r / (1 - a r) = 1`.
pub fn mobius_equality_radius(a: f64, tol: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::out_of_range("a", a, "[0, 1)"));
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    bisect(
        |r| (1.0 + a) * r / (1.0 - a * r) - 1.0,
        0.0,
        1.0,
        tol * 0.25,
    )
}

/// Infimum over `a` of the Mobius equality radius, on the grid
/// `a_k = 1 - 2^-k` refined until successive radii differ by less than `tol / 2`.
pub fn classical_bohr_radius(tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let mut best = mobius_equality_radius(0.5, tol)?;
    for k in 2..60 {
        let a = 1.0 - 0.5f64.powi(k);
        let r = mobius_equality_radius(a, tol)?;
        let step = best - r;
        best = best.min(r);
        if step.abs() < 0.5 * tol {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equation_examples() {
        let spec = RadiusSpec::thm_c34(1, 1).unwrap();
        assert_eq!(equation_value(&spec, 0.5).unwrap(), -0.5);
        assert!(equation_value(&spec, 1.0).unwrap() > 0.0);
        let g = RadiusSpec::thm32(0, 1).unwrap();
        assert!(equation_value(&g, 0.6).unwrap().abs() < 1e-15);
        assert!(matches!(
            equation_value(&g, 1.5),
            Err(Error::RadiusOutOfRange(_))
        ));
    }

    #[test]
    fn solve_examples() {
        let r = solve_radius(&RadiusSpec::thm_c34(1, 1).unwrap(), DEFAULT_TOL).unwrap();
        assert!((r - 0.5f64.sqrt()).abs() < 1e-12);
        let r = solve_radius(&RadiusSpec::thm32(0, 1).unwrap(), DEFAULT_TOL).unwrap();
        assert!((r - 0.6).abs() < 1e-12);
        let r = solve_radius(&RadiusSpec::cor43(0, 1).unwrap(), DEFAULT_TOL).unwrap();
        assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        for a0 in [0.0, 0.3, 0.9] {
            let r = solve_radius(&RadiusSpec::thm31(a0, 2.0).unwrap(), DEFAULT_TOL).unwrap();
            assert!((r - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn bisection_matches_closed_forms() {
        let tol = 1e-13;
        for p in [1usize, 2, 3, 5] {
            for m in 0..=p {
                for spec in [
                    RadiusSpec::thm_c34(m, p).unwrap(),
                    RadiusSpec::thm32(m, p).unwrap(),
                    RadiusSpec::cor43(m, p).unwrap(),
                ] {
                    let bis = solve_radius_bisection(&spec, tol).unwrap();
                    assert!(equation_value(&spec, bis - tol).unwrap() <= 1e-12);
                    if let Some(closed) = closed_form(&spec) {
                        assert!((bis - closed).abs() <= tol, "{spec:?}: {bis} vs {closed}");
                    }
                }
            }
        }
    }

    #[test]
    fn tolerance_errors() {
        let spec = RadiusSpec::thm_c34(1, 2).unwrap();
        assert!(matches!(
            solve_radius(&spec, 1e-20),
            Err(Error::ToleranceTooSmall(_))
        ));
        assert!(matches!(
            solve_radius(&spec, 0.0),
            Err(Error::ToleranceTooSmall(_))
        ));
        assert!(solve_radius(&spec, MIN_TOL).is_ok());
    }

    #[test]
    fn malformed_bracket_is_reported() {
        assert!(matches!(
            bisect(|r| r + 1.0, 0.0, 1.0, 1e-12),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn thm32_bracket_start_has_negative_sign() {
        for p in 1..=5 {
            for m in 0..=p {
                let spec = RadiusSpec::thm32(m, p).unwrap();
                assert!(equation_value(&spec, THM32_BRACKET_START).unwrap() < 0.0);
                let g0 = equation_value(&spec, 0.0).unwrap();
                let expected = if m == 0 { -3.0 } else { -4.0 };
                assert_eq!(g0, expected);
                assert_eq!(equation_value(&spec, 1.0).unwrap(), 4.0);
            }
        }
    }

    #[test]
    fn thm31_validation() {
        assert!(RadiusSpec::thm31(1.0, 1.0).is_err());
        assert!(RadiusSpec::thm31(0.5, 0.0).is_err());
        assert!(RadiusSpec::new(RadiusId::Thm31, Shape::FULL).is_err());
        let r = solve_radius(&RadiusSpec::thm31(0.5, 1.0).unwrap(), DEFAULT_TOL).unwrap();
        assert!((r - 0.4).abs() < 1e-15);
        let bis = solve_radius_bisection(&RadiusSpec::thm31(0.5, 1.0).unwrap(), 1e-14).unwrap();
        assert!((bis - 0.4).abs() < 1e-14);
    }

    #[test]
    fn mobius_equality_radius_examples() {
        assert_eq!(mobius_equality_radius(0.0, 1e-12).unwrap(), 1.0);
        assert!((mobius_equality_radius(0.5, 1e-12).unwrap() - 0.5).abs() < 1e-12);
        let r = classical_bohr_radius(1e-6).unwrap();
        assert!((r - 1.0 / 3.0).abs() <= 1e-6, "{r}");
        assert!(r >= 1.0 / 3.0);
    }

    #[test]
    fn radius_ids_parse_from_theorem_names() {
        assert_eq!("Thm34".parse::<RadiusId>().unwrap(), RadiusId::ThmC34);
        assert_eq!("cor42".parse::<RadiusId>().unwrap(), RadiusId::Thm32);
        assert_eq!(
            "ClassicBohr".parse::<RadiusId>().unwrap(),
            RadiusId::ClassicBohr
        );
        assert!("LemmaDOdd".parse::<RadiusId>().is_err());
    }
}
