//! Members of the Schur class: holomorphic self-maps of the unit disk.
//!
//! Random members come from the Schur-parameter recursion
//! `f_j = (g_j + z f_{j+1}) / (1 + conj(g_j) z f_{j+1})`, which reaches every
//! rational inner-or-contractive function of finite degree. The named extremal
//! families are built from [`mobius_map`] and [`monomial_lift`].

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::powerseries::{mobius_map, monomial_lift, TruncatedSeries};

/// Radius of the disk interior parameters are drawn from.
pub const SAMPLING_RADIUS: f64 = 0.95;

/// Schur parameters `g_0..g_M`: `|g_j| < 1` for `j < M`, `|g_M| <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurParameters {
    gammas: Vec<Complex64>,
}

impl SchurParameters {
    pub fn new(gammas: Vec<Complex64>) -> Result<Self> {
        let Some(last) = gammas.last() else {
            return Err(Error::out_of_range("depth", 0.0, "at least one parameter"));
        };
        if last.norm() > 1.0 {
            return Err(Error::out_of_range(
                "gamma",
                last.norm(),
                "|g_M| <= 1 for the last parameter",
            ));
        }
        if let Some(bad) = gammas[..gammas.len() - 1].iter().find(|g| g.norm() >= 1.0) {
            return Err(Error::out_of_range(
                "gamma",
                bad.norm(),
                "|g_j| < 1 for interior parameters",
            ));
        }
        Ok(Self { gammas })
    }

    pub fn gammas(&self) -> &[Complex64] {
        &self.gammas
    }

    /// Pointwise value of the function at `z` by running the recursion.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (last, rest) = self.gammas.split_last().expect("nonempty by construction");
        rest.iter().rev().fold(*last, |f, &g| {
            let zf = z * f;
            (g + zf) / (Complex64::new(1.0, 0.0) + g.conj() * zf)
        })
    }
}

/// Taylor series of the function with the given Schur parameters.
///
/// Each recursion step keeps `f_j = P_j / Q_j` as a pair of polynomials with
/// `Q_j(0) = 1`; the series is `P_0 * (1 / Q_0)` through
/// [`TruncatedSeries::reciprocal`].
pub fn schur_to_taylor(params: &SchurParameters, order: usize) -> Result<TruncatedSeries> {
    let gammas = params.gammas();
    let degree = gammas.len() - 1;
    let work_order = order.max(degree);
    let zero = Complex64::new(0.0, 0.0);

    let mut num = vec![zero; degree + 1];
    let mut den = vec![zero; degree + 1];
    num[0] = gammas[degree];
    den[0] = Complex64::new(1.0, 0.0);
    for &g in gammas[..degree].iter().rev() {
        // z * P shifted by one index.
        let shifted: Vec<Complex64> = std::iter::once(zero)
            .chain(num[..degree].iter().copied())
            .collect();
        let next_num: Vec<Complex64> = (0..=degree).map(|k| g * den[k] + shifted[k]).collect();
        let next_den: Vec<Complex64> = (0..=degree)
            .map(|k| den[k] + g.conj() * shifted[k])
            .collect();
        num = next_num;
        den = next_den;
    }

    let p = TruncatedSeries::polynomial(&num, work_order)?;
    let q = TruncatedSeries::polynomial(&den, work_order)?;
    let series = p.mul(&q.reciprocal()?).resize(order);
    Ok(series.with_sup_bound(1.0))
}

/// Draws `depth` parameters uniformly (by area) from the disk of radius
/// [`SAMPLING_RADIUS`] and expands the resulting function to `order`.
///
/// The generator is seeded from `seed` alone, so equal seeds give
/// bit-identical series.
pub fn sample_schur(seed: u64, depth: usize, order: usize) -> Result<TruncatedSeries> {
    schur_to_taylor(&sample_parameters(seed, depth)?, order)
}

pub fn sample_parameters(seed: u64, depth: usize) -> Result<SchurParameters> {
    if depth == 0 {
        return Err(Error::out_of_range("depth", 0.0, "depth >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gammas = (0..depth)
        .map(|_| {
            let radius = SAMPLING_RADIUS * rng.gen::<f64>().sqrt();
            Complex64::from_polar(radius, TAU * rng.gen::<f64>())
        })
        .collect();
    SchurParameters::new(gammas)
}

/// Per-sample seed for parallel campaigns.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

/// Named extremal families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalKind {
    /// `(a - z) / (1 - a z)`.
    L1,
    /// `z^m (a - z^p) / (1 - a z^p)`.
    LacunaryD,
    /// `z^(p+m) (a - z^p) / (1 - a z^p)`.
    L2,
    /// `z^(m+p)`; `a` is ignored.
    Monomial,
}

pub fn extremal_family(
    kind: ExtremalKind,
    a: f64,
    m: usize,
    p: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    if kind != ExtremalKind::Monomial && !(0.0..1.0).contains(&a) {
        return Err(Error::out_of_range("a", a, "[0, 1)"));
    }
    if p == 0 {
        return Err(Error::out_of_range("p", 0.0, "p >= 1"));
    }
    if matches!(kind, ExtremalKind::LacunaryD | ExtremalKind::L2) && m > p {
        return Err(Error::out_of_range("m", m as f64, "0 <= m <= p"));
    }
    let series = match kind {
        ExtremalKind::L1 => mobius_map(a, &TruncatedSeries::identity(order))?,
        ExtremalKind::LacunaryD => lifted_mobius(a, m, p, order)?,
        ExtremalKind::L2 => lifted_mobius(a, p + m, p, order)?,
        ExtremalKind::Monomial => TruncatedSeries::monomial(m + p, order),
    };
    Ok(series.with_sup_bound(1.0))
}

fn lifted_mobius(a: f64, offset: usize, p: usize, order: usize) -> Result<TruncatedSeries> {
    let inner = inner_order(order, offset, p);
    let mob = mobius_map(a, &TruncatedSeries::identity(inner.max(1)))?;
    Ok(monomial_lift(&mob, offset, p)?.resize(order))
}

/// Smallest inner order `K` with `K p + offset >= order`.
pub fn inner_order(order: usize, offset: usize, p: usize) -> usize {
    order.saturating_sub(offset).div_ceil(p)
}

/// `z^offset phi(z^p)` for a sampled `phi`, truncated at `order`.
///
/// `phi` must have order at least [`inner_order`]`(order, offset, p)` unless it
/// is exact.
pub fn lift_to_order(
    phi: &TruncatedSeries,
    offset: usize,
    p: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    if !phi.is_exact() && phi.order() < inner_order(order, offset, p) {
        return Err(Error::out_of_range(
            "order",
            phi.order() as f64,
            "inner series too short for the requested lifted order",
        ));
    }
    Ok(monomial_lift(phi, offset, p)?.resize(order))
}
