//! Vector-valued mappings on the unit ball of `l_t^n`, reduced to slices.
//!
//! A mapping `f` is restricted to the complex line `lambda -> lambda z0`
//! through a unit direction `z0`. Each component becomes a one-variable series
//! `h_j(lambda) = f_j(lambda z0)`, and the homogeneous terms of `f` along `z`
//! have norms `max_j |coefficient_k(h_j)| r^k` with `r = ||z||_t`. Inequalities
//! for the mapping are then checked on the resulting [`LacunaryProfile`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::functionals::{Evaluator, Extras, InequalityCheck, LacunaryProfile, Shape, TheoremId};
use crate::powerseries::{
    check_truncation, mobius_map, monomial_lift, required_order, TruncatedSeries,
    DEFAULT_TRUNCATION_TOL,
};
use crate::schur::{extremal_family, inner_order, ExtremalKind};

const UNIT_NORM_TOL: f64 = 1e-12;

/// Exponent `t` of an `l_t` norm, `1 <= t <= infinity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LtIndex {
    Finite(f64),
    Infinity,
}

impl LtIndex {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_infinite() && t > 0.0 {
            return Ok(LtIndex::Infinity);
        }
        if t.is_nan() || t < 1.0 {
            return Err(Error::out_of_range("t", t, "t >= 1"));
        }
        Ok(LtIndex::Finite(t))
    }
}

impl fmt::Display for LtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LtIndex::Finite(t) => write!(f, "{t}"),
            LtIndex::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for LtIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(LtIndex::Infinity);
        }
        let t: f64 = s
            .parse()
            .map_err(|_| Error::out_of_range("t", f64::NAN, "a number >= 1 or `inf`"))?;
        LtIndex::new(t)
    }
}

/// Finite values serialize as numbers, infinity as the string `"inf"`.
impl Serialize for LtIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            LtIndex::Finite(t) => serializer.serialize_f64(*t),
            LtIndex::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for LtIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Number(t) => LtIndex::new(t),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// `(sum |v_i|^t)^(1/t)`, or `max |v_i|` for `t = infinity`.
pub fn lt_norm(v: &[Complex64], t: LtIndex) -> Result<f64> {
    if v.is_empty() {
        return Err(Error::out_of_range("n", 0.0, "a nonempty vector"));
    }
    let max = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    match t {
        LtIndex::Infinity => Ok(max),
        LtIndex::Finite(t) => {
            if t.is_nan() || t < 1.0 {
                return Err(Error::out_of_range("t", t, "t >= 1"));
            }
            if max == 0.0 {
                return Ok(0.0);
            }
            let sum: f64 = v.iter().map(|x| (x.norm() / max).powf(t)).sum();
            Ok(max * sum.powf(1.0 / t))
        }
    }
}

/// A unit vector of `l_t^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    z0: Vec<Complex64>,
    t: LtIndex,
}

impl Direction {
    pub fn new(z0: Vec<Complex64>, t: LtIndex) -> Result<Self> {
        let norm = lt_norm(&z0, t)?;
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::out_of_range("||z0||_t", norm, "1 within 1e-12"));
        }
        Ok(Self { z0, t })
    }

    /// `v / ||v||_t`.
    pub fn normalized(v: Vec<Complex64>, t: LtIndex) -> Result<Self> {
        let norm = lt_norm(&v, t)?;
        if norm == 0.0 {
            return Err(Error::out_of_range("||v||_t", 0.0, "a nonzero vector"));
        }
        let z0 = v.into_iter().map(|x| x / norm).collect();
        Ok(Self { z0, t })
    }

    /// The first standard basis vector of `C^n`.
    pub fn e1(n: usize, t: LtIndex) -> Result<Self> {
        let mut z0 = vec![Complex64::new(0.0, 0.0); n];
        *z0.first_mut()
            .ok_or_else(|| Error::out_of_range("n", 0.0, "n >= 1"))? = Complex64::new(1.0, 0.0);
        Self::new(z0, t)
    }

    /// A unit direction built from coordinates drawn uniformly in the unit
    /// square of each complex coordinate, from a generator keyed by `seed`.
    pub fn random(seed: u64, n: usize, t: LtIndex) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Self::normalized(v, t)
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.z0
    }

    pub fn t(&self) -> LtIndex {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.z0.len()
    }

    /// `||z0||_inf`.
    pub fn sup_coord(&self) -> f64 {
        self.z0.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// Whether the slice comes from a scalar map or from a map of the form
/// `f(z) = z g(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceKind {
    Scalar,
    ZG,
}

/// Mappings whose slices can be built.
#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    /// `f_j(z) = z_j z_1^(m-1) (a - z_1^p) / (1 - a z_1^p)`.
    SharpThm34 { a: f64, m: usize, p: usize },
    /// `f_j(z) = z_j z_1^(m+p-1)`.
    SharpThm41 { m: usize, p: usize },
    /// `f_j(z) = z_j (a - z_1) / (1 - a z_1)`.
    SharpCor42 { a: f64 },
    /// `f = z g` with `g(lambda z0)` supplied as a one-variable series. The
    /// series must carry a sup bound `b` with `||z0||_inf * b <= 1`.
    GeneralZG { g: TruncatedSeries, shape: Shape },
}

/// Component series `h_j(lambda) = f_j(lambda z0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceMapping {
    components: Vec<TruncatedSeries>,
    shape: Shape,
    t: LtIndex,
    kind: SliceKind,
    profile: LacunaryProfile,
}

impl SliceMapping {
    fn build(components: Vec<TruncatedSeries>, shape: Shape, t: LtIndex, kind: SliceKind) -> Self {
        let order = components.iter().map(|c| c.order()).min().unwrap_or(0);
        let exact = components.iter().all(|c| c.is_exact());
        let count = (order - shape.m) / shape.p + 1;
        let mods = (0..count)
            .map(|k| {
                let idx = shape.index(k);
                components
                    .iter()
                    .map(|h| h.coeff(idx).norm())
                    .fold(0.0, f64::max)
            })
            .collect();
        let profile = LacunaryProfile::from_parts(shape, mods, order, exact);
        Self {
            components,
            shape,
            t,
            kind,
            profile,
        }
    }

    /// The one-component slice of a scalar function (`n = 1`, where every
    /// `l_t` norm agrees).
    pub fn scalar(series: TruncatedSeries, shape: Shape) -> Result<Self> {
        LacunaryProfile::from_series(&series, shape)?;
        Ok(Self::build(
            vec![series],
            shape,
            LtIndex::Infinity,
            SliceKind::Scalar,
        ))
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn t(&self) -> LtIndex {
        self.t
    }

    pub fn kind(&self) -> SliceKind {
        self.kind
    }

    /// Raw lattice moduli `max_j |coefficient_(kp+m)(h_j)|`: the homogeneous
    /// term norms along the unit direction.
    pub fn profile(&self) -> &LacunaryProfile {
        &self.profile
    }
}

fn check_shape(m: usize, p: usize) -> Result<Shape> {
    if m == 0 {
        return Err(Error::ShapeMismatch(
            "maps f = z g need 1 <= m <= p, got m = 0".into(),
        ));
    }
    Shape::new(m, p)
}

fn first_coord(z0: &Direction) -> Result<Complex64> {
    let u = z0.coords()[0];
    if u.norm() == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    Ok(u)
}

/// `L(c lambda)` with `L(w) = (a - w) / (1 - a w)`, to `order`.
fn mobius_of_scaled(a: f64, c: Complex64, order: usize) -> Result<TruncatedSeries> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order.max(1) + 1];
    coeffs[1] = c;
    let inner = TruncatedSeries::polynomial(&coeffs, order.max(1))?.with_sup_bound(c.norm());
    mobius_map(a, &inner)
}

/// Restricts the mapping to the line through `z0`, expanding each component
/// to `order`.
pub fn slice_from_direction(map: &MapSpec, z0: &Direction, order: usize) -> Result<SliceMapping> {
    let coords = z0.coords();
    let (base, shape) = match map {
        MapSpec::SharpThm34 { a, m, p } => {
            let shape = check_shape(*m, *p)?;
            require_order(order, m + p)?;
            let u = first_coord(z0)?;
            let mob = mobius_of_scaled(*a, u.powu(*p as u32), inner_order(order, *m, *p))?;
            let base = monomial_lift(&mob, *m, *p)?
                .resize(order)
                .scale(u.powu(*m as u32 - 1));
            (base, shape)
        }
        MapSpec::SharpThm41 { m, p } => {
            let shape = check_shape(*m, *p)?;
            require_order(order, m + p)?;
            let u = first_coord(z0)?;
            let base = TruncatedSeries::monomial(m + p, order).scale(u.powu((m + p - 1) as u32));
            (base, shape)
        }
        MapSpec::SharpCor42 { a } => {
            require_order(order, 1)?;
            let u = first_coord(z0)?;
            let mob = mobius_of_scaled(*a, u, order - 1)?;
            (monomial_lift(&mob, 1, 1)?.resize(order), Shape::FULL)
        }
        MapSpec::GeneralZG { g, shape } => {
            let bound = g.sup_bound().ok_or_else(|| {
                Error::out_of_range("sup_bound", f64::NAN, "g must carry a sup bound")
            })?;
            let reach = z0.sup_coord() * bound;
            if reach > 1.0 + 1e-12 {
                return Err(Error::out_of_range(
                    "||z0||_inf * sup|g|",
                    reach,
                    "<= 1 so that z g maps into the closed polydisk",
                ));
            }
            let base = monomial_lift(g, 1, 1)?.resize(order);
            LacunaryProfile::from_series(&base, *shape)?;
            (base, *shape)
        }
    };
    let components = coords.iter().map(|&zj| base.scale(zj)).collect();
    Ok(SliceMapping::build(
        components,
        shape,
        z0.t(),
        SliceKind::ZG,
    ))
}

fn require_order(order: usize, min: usize) -> Result<()> {
    if order < min {
        return Err(Error::out_of_range("order", order as f64, "order >= m + p"));
    }
    Ok(())
}

/// Norms of the homogeneous terms at radius `r`, for lattice positions
/// `k = 0, 1, ...` (series index `kp + m`).
pub fn frechet_norms(slice: &SliceMapping, r: f64) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange(r));
    }
    let profile = slice.profile();
    check_truncation(
        profile.order(),
        profile.is_exact(),
        r,
        DEFAULT_TRUNCATION_TOL,
    )?;
    let shape = slice.shape;
    Ok(profile
        .mods()
        .iter()
        .enumerate()
        .map(|(k, &mu)| mu * r.powi(shape.index(k) as i32))
        .collect())
}

/// Inequalities stated for maps `f = z g`.
const ZG_THEOREMS: [TheoremId; 5] = [
    TheoremId::Thm34,
    TheoremId::Thm41,
    TheoremId::Cor42,
    TheoremId::Cor43,
    TheoremId::Lemma21,
];

/// Checks inequality `id` on a slice with the default evaluator.
pub fn vector_check(
    id: TheoremId,
    slice: &SliceMapping,
    r: f64,
    extras: Extras,
) -> Result<InequalityCheck> {
    vector_check_with(&Evaluator::default(), id, slice, r, extras)
}

pub fn vector_check_with(
    evaluator: &Evaluator,
    id: TheoremId,
    slice: &SliceMapping,
    r: f64,
    extras: Extras,
) -> Result<InequalityCheck> {
    if slice.kind == SliceKind::ZG {
        if !ZG_THEOREMS.contains(&id) {
            return Err(Error::ShapeMismatch(format!(
                "{id} is not an inequality for maps f = z g"
            )));
        }
        let shape = slice.shape;
        if id == TheoremId::Cor42 {
            if shape != Shape::FULL {
                return Err(Error::ShapeMismatch(format!(
                    "Cor42 slices have shape (0, 1), got {shape}"
                )));
            }
        } else if shape.m == 0 {
            return Err(Error::ShapeMismatch(format!(
                "{id} for f = z g needs 1 <= m <= p, got {shape}"
            )));
        }
    }
    evaluator.evaluate_theorem(id, slice.profile(), r, extras)
}

/// Largest extremal left-hand side over `a` in `a_grid` at radius `r`.
///
/// `Thm31` and `Thm32`-type ids use the closed-form envelopes
/// `a^s + (1 - a^2) r / (1 - r)` and
/// `a r^(p+m) + (1 - a^2) r^(2p+m) / (1 - r^p)`; `ThmA` uses the Mobius Bohr
/// sum. Lacunary ids evaluate the `z^m (a - z^p)/(1 - a z^p)` family and the
/// monomial `z^(m+p)`.
pub fn sharpness_scan(
    id: TheoremId,
    shape: Shape,
    r: f64,
    a_grid: &[f64],
    extras: Extras,
) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    if a_grid.is_empty() {
        return Err(Error::out_of_range("a_grid", 0.0, "a nonempty grid"));
    }
    if let Some(&bad) = a_grid.iter().find(|a| !(0.0..1.0).contains(*a)) {
        return Err(Error::out_of_range("a", bad, "[0, 1)"));
    }
    if !id.accepts(shape) {
        return Err(if id.requires_odd_gap() {
            Error::OddGapRequired {
                id: id.name(),
                p: shape.p,
            }
        } else {
            Error::ShapeMismatch(format!("{id} does not apply to {shape}"))
        });
    }
    let max_over = |f: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
        a_grid
            .iter()
            .try_fold(f64::NEG_INFINITY, |best, &a| Ok(best.max(f(a)?)))
    };
    let (m, p) = (shape.m as i32, shape.p as i32);
    match id {
        TheoremId::ThmA => max_over(&|a| Ok(a + (1.0 - a * a) * r / (1.0 - a * r))),
        TheoremId::Thm31 => {
            let s = extras
                .s
                .filter(|s| *s > 0.0)
                .ok_or_else(|| Error::out_of_range("s", f64::NAN, "Thm31 needs s > 0"))?;
            max_over(&|a| Ok(a.powf(s) + (1.0 - a * a) * r / (1.0 - r)))
        }
        TheoremId::Thm32 | TheoremId::Cor33 | TheoremId::Cor42 => max_over(&|a| {
            Ok(a * r.powi(p + m) + (1.0 - a * a) * r.powi(2 * p + m) / (1.0 - r.powi(p)))
        }),
        TheoremId::Thm34 | TheoremId::ThmC | TheoremId::Thm41 | TheoremId::Cor43 => {
            let evaluator = Evaluator::default();
            let order = required_order(r, evaluator.truncation_tol);
            let lhs_of = |series: TruncatedSeries| -> Result<f64> {
                let profile = LacunaryProfile::from_series(&series, shape)?;
                Ok(evaluator.evaluate_theorem(id, &profile, r, extras)?.lhs)
            };
            let family = max_over(&|a| {
                lhs_of(extremal_family(
                    ExtremalKind::LacunaryD,
                    a,
                    shape.m,
                    shape.p,
                    order,
                )?)
            })?;
            let monomial = lhs_of(extremal_family(
                ExtremalKind::Monomial,
                0.0,
                shape.m,
                shape.p,
                order,
            )?)?;
            Ok(family.max(monomial))
        }
        _ => Err(Error::UnknownTheorem(format!("{id} has no extremal scan"))),
    }
}
