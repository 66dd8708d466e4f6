use bohrkit::functionals::{Evaluator, Extras, LacunaryProfile, Shape, TheoremId};
use bohrkit::harness::{render_report, run_campaign, CampaignConfig, Report, ReportFormat};
use bohrkit::multidim::{
    lt_norm, sharpness_scan, slice_from_direction, vector_check, Direction, LtIndex, MapSpec,
    SliceMapping,
};
use bohrkit::powerseries::{mobius_map, monomial_lift, required_order, TruncatedSeries};
use bohrkit::radius::{equation_value, solve_radius, RadiusSpec};
use bohrkit::schur::{extremal_family, inner_order, lift_to_order, sample_schur, ExtremalKind};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn series(max_len: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(complex(), 1..=max_len)
        .prop_map(|c| TruncatedSeries::new(c).expect("nonempty"))
}

fn shape() -> impl Strategy<Value = Shape> {
    (1usize..=4)
        .prop_flat_map(|p| (0..=p, Just(p)))
        .prop_map(|(m, p)| Shape::new(m, p).expect("m <= p"))
}

fn max_gap(a: &TruncatedSeries, b: &TruncatedSeries) -> f64 {
    let n = a.order().min(b.order());
    (0..=n)
        .map(|k| (a.coeff(k) - b.coeff(k)).norm())
        .fold(0.0, f64::max)
}

fn lifted_sample(
    seed: u64,
    depth: usize,
    shape: Shape,
    offset: usize,
    order: usize,
) -> TruncatedSeries {
    let phi = sample_schur(seed, depth, inner_order(order, offset, shape.p).max(1)).unwrap();
    lift_to_order(&phi, offset, shape.p, order).unwrap()
}

proptest! {
    #[test]
    fn mul_commutes_and_associates(a in series(16), b in series(16), c in series(16)) {
        prop_assert!(max_gap(&a.mul(&b), &b.mul(&a)) <= 1e-14);
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        prop_assert!(max_gap(&left, &right) <= 1e-14);
    }

    #[test]
    fn reciprocal_inverts(
        modulus in 0.1..1.0f64,
        angle in 0.0..std::f64::consts::TAU,
        tail in prop::collection::vec(complex(), 0..12),
    ) {
        let c0 = Complex64::from_polar(modulus, angle);
        let mut coeffs = vec![c0];
        coeffs.extend(tail.iter().map(|c| c * (modulus / 2.0)));
        let a = TruncatedSeries::new(coeffs).unwrap();
        let product = a.mul(&a.reciprocal().unwrap());
        let one = TruncatedSeries::one(a.order());
        prop_assert!(max_gap(&product, &one) <= 1e-12, "gap {}", max_gap(&product, &one));
    }

    #[test]
    fn mobius_is_an_involution(seed in any::<u64>(), depth in 1usize..8, a in 0.0..0.9f64) {
        let s = sample_schur(seed, depth, 48).unwrap();
        let back = mobius_map(a, &mobius_map(a, &s).unwrap()).unwrap();
        prop_assert!(max_gap(&back, &s) <= 1e-10);
    }

    #[test]
    fn monomial_lift_is_recoverable(s in series(20), shape in shape()) {
        let lifted = monomial_lift(&s, shape.m, shape.p).unwrap();
        for k in 0..=s.order() {
            prop_assert_eq!(lifted.coeff(shape.index(k)), s.coeff(k));
        }
    }

    #[test]
    fn wiener_and_cauchy_bounds(seed in any::<u64>(), depth in 1usize..12, a in 0.0..0.999f64) {
        let mut family = vec![sample_schur(seed, depth, 128).unwrap()];
        family.push(extremal_family(ExtremalKind::L1, a, 0, 1, 128).unwrap());
        family.push(extremal_family(ExtremalKind::LacunaryD, a, 1, 2, 128).unwrap());
        for f in family {
            prop_assert_eq!(f.sup_bound(), Some(1.0));
            let c0 = f.coeff(0).norm();
            for k in 1..=f.order() {
                prop_assert!(f.coeff(k).norm() <= 1.0 - c0 * c0 + 1e-12);
            }
            prop_assert!(f.coeff(0).norm() <= 1.0 + 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lhs_nondecreasing_in_r(seed in any::<u64>(), depth in 1usize..8, shape in shape(), r1 in 0.01..0.9f64, dr in 0.001..0.09f64) {
        let r2 = r1 + dr;
        let order = required_order(r2, 1e-12);
        let ev = Evaluator::default();
        let free = LacunaryProfile::from_series(&lifted_sample(seed, depth, shape, shape.m, order), shape).unwrap();
        let fixed = LacunaryProfile::from_series(
            &lifted_sample(seed, depth, shape, shape.m + shape.p, order),
            shape,
        )
        .unwrap();
        let mut ids = vec![
            (TheoremId::ThmA, &free),
            (TheoremId::LemmaDOdd, &free),
            (TheoremId::LemmaDEven, &free),
            (TheoremId::Lemma21, &free),
            (TheoremId::Thm34, &free),
            (TheoremId::Thm32, &fixed),
        ];
        if shape == Shape::FULL {
            ids.extend([(TheoremId::ThmB, &free), (TheoremId::Thm31, &free)]);
        }
        for (id, profile) in ids {
            let extras = Extras::with_s(1.5);
            let a = ev.evaluate_theorem(id, profile, r1, extras).unwrap().lhs;
            let b = ev.evaluate_theorem(id, profile, r2, extras).unwrap().lhs;
            prop_assert!(a <= b + 1e-15 * b.abs(), "{} at {} -> {}: {} > {}", id, r1, r2, a, b);
        }
    }

    #[test]
    fn extremal_families_attain_equality(a in 0.0..0.99f64, r in 0.01..0.9f64, shape in shape()) {
        let order = required_order(0.9, 1e-13);
        let ev = Evaluator::default();
        let l1 = extremal_family(ExtremalKind::L1, a, 0, 1, order).unwrap();
        let b = ev.refined_thm_b(&LacunaryProfile::from_series(&l1, Shape::FULL).unwrap(), r).unwrap();
        prop_assert!((b.lhs - b.rhs).abs() <= 1e-10);
        let d = extremal_family(ExtremalKind::LacunaryD, a, shape.m, shape.p, order).unwrap();
        let profile = LacunaryProfile::from_series(&d, shape).unwrap();
        let (_, even) = ev.lemma_d_bounds(&profile, r).unwrap();
        prop_assert!((even.lhs - even.rhs).abs() <= 1e-10);
    }

    #[test]
    fn n1_slices_match_scalar_evaluation(seed in any::<u64>(), shape in shape(), r in 0.01..0.95f64) {
        let order = required_order(0.95, 1e-12);
        let f = lifted_sample(seed, 6, shape, shape.m, order);
        let profile = LacunaryProfile::from_series(&f, shape).unwrap();
        let slice = SliceMapping::scalar(f, shape).unwrap();
        let ev = Evaluator::default();
        let mut ids = vec![TheoremId::ThmA, TheoremId::Alternating, TheoremId::LemmaDOdd, TheoremId::LemmaDEven, TheoremId::Thm34, TheoremId::Lemma21];
        if shape.p % 2 == 1 {
            ids.extend([TheoremId::ThmC, TheoremId::Thm41, TheoremId::Cor43]);
        }
        for id in ids {
            let v = vector_check(id, &slice, r, Extras::default()).unwrap();
            let s = ev.evaluate_theorem(id, &profile, r, Extras::default()).unwrap();
            prop_assert!((v.lhs - s.lhs).abs() <= 1e-14 && (v.rhs - s.rhs).abs() <= 1e-14);
        }
    }

    #[test]
    fn radius_equations_strictly_increase(p in 1usize..6, m_frac in 0.0..=1.0f64, a0 in 0.0..0.99f64, s in 0.1..4.0f64, r1 in 0.001..0.99f64, dr in 1e-6..0.01f64) {
        let m = (m_frac * p as f64).floor() as usize;
        let r2 = (r1 + dr).min(1.0);
        for spec in [
            RadiusSpec::thm_c34(m, p).unwrap(),
            RadiusSpec::cor43(m, p).unwrap(),
            RadiusSpec::thm31(a0, s).unwrap(),
        ] {
            let (a, b) = (equation_value(&spec, r1).unwrap(), equation_value(&spec, r2).unwrap());
            prop_assert!(a <= b);
            if r1 >= 0.05 {
                prop_assert!(a < b, "{:?} at {} -> {}", spec, r1, r2);
            }
        }
    }

    #[test]
    fn lt_norms_decrease_in_t(v in prop::collection::vec(complex(), 1..6), t1 in 1.0..32.0f64, dt in 0.0..32.0f64) {
        let a = lt_norm(&v, LtIndex::Finite(t1)).unwrap();
        let b = lt_norm(&v, LtIndex::Finite(t1 + dt)).unwrap();
        let inf = lt_norm(&v, LtIndex::Infinity).unwrap();
        prop_assert!(b <= a * (1.0 + 1e-14));
        prop_assert!(inf <= b * (1.0 + 1e-14));
        let t64 = lt_norm(&v, LtIndex::Finite(64.0)).unwrap();
        let n = v.len() as f64;
        prop_assert!(t64 - inf <= (n.powf(1.0 / 64.0) - 1.0) * inf + 1e-15);
    }
}

#[test]
fn thm32_equation_endpoints() {
    for p in 1..=5 {
        for m in 0..=p {
            let spec = RadiusSpec::thm32(m, p).unwrap();
            let at0 = equation_value(&spec, 0.0).unwrap();
            assert_eq!(at0, if m == 0 { -3.0 } else { -4.0 });
            assert_eq!(equation_value(&spec, 1.0).unwrap(), 4.0);
            let r = solve_radius(&spec, 1e-12).unwrap();
            // Exactly one sign change on a fine grid.
            let changes = (0..2000)
                .map(|i| equation_value(&spec, (i as f64 + 0.5) / 2000.0).unwrap() > 0.0)
                .collect::<Vec<_>>()
                .windows(2)
                .filter(|w| w[0] != w[1])
                .count();
            assert_eq!(changes, 1, "p={p} m={m} r={r}");
        }
    }
}

#[test]
fn lemma21_on_general_zg_slices() {
    let ev = Evaluator::default();
    let order = required_order(0.95, 1e-12);
    for t in [
        LtIndex::Finite(1.0),
        LtIndex::Finite(2.0),
        LtIndex::Infinity,
    ] {
        for i in 0..200u64 {
            let p = 1 + (i % 3) as usize;
            let m = 1 + (i / 3 % p as u64) as usize;
            let shape = Shape::new(m, p).unwrap();
            let g = lifted_sample(i, 6, shape, m - 1, order - 1);
            let z0 = Direction::random(i ^ 0xABCD, 4, t).unwrap();
            let slice = slice_from_direction(&MapSpec::GeneralZG { g, shape }, &z0, order).unwrap();
            for k in 1..=190 {
                let r = k as f64 * 0.005;
                let check = bohrkit::multidim::vector_check_with(
                    &ev,
                    TheoremId::Lemma21,
                    &slice,
                    r,
                    Extras::default(),
                )
                .unwrap();
                assert!(check.margin >= -1e-9, "t={t} i={i} r={r}: {}", check.margin);
            }
        }
    }
}

#[test]
fn thm32_scan_brackets_radius() {
    let grid: Vec<f64> = (0..2000).map(|i| i as f64 / 2000.0).collect();
    for p in 1..=3 {
        for m in 0..=p {
            let shape = Shape::new(m, p).unwrap();
            let r = solve_radius(&RadiusSpec::thm32(m, p).unwrap(), 1e-12).unwrap();
            let below = sharpness_scan(TheoremId::Thm32, shape, r - 0.02, &grid, Extras::default())
                .unwrap();
            let above = sharpness_scan(TheoremId::Thm32, shape, r + 0.02, &grid, Extras::default())
                .unwrap();
            assert!(below <= 1.0 && above > 1.0, "{shape}: {below} {above}");
        }
    }
}

fn small_config() -> CampaignConfig {
    CampaignConfig {
        theorems: vec![
            TheoremId::ThmC,
            TheoremId::Thm31,
            TheoremId::Thm34,
            TheoremId::LemmaDEven,
        ],
        pm: vec![[1, 0], [1, 1], [3, 2]],
        t_values: vec![LtIndex::Finite(1.5), LtIndex::Infinity],
        s_values: vec![0.5, 2.0],
        samples: 24,
        seed: 99,
        r_stop: 0.9,
        r_step: 0.02,
        ..Default::default()
    }
}

#[test]
fn campaigns_are_deterministic_across_thread_counts() {
    let config = small_config();
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| render_report(&run_campaign(&config).unwrap(), ReportFormat::Json).unwrap())
    };
    let serial = render(1);
    assert_eq!(serial, render(1));
    assert_eq!(serial, render(4));
}

#[test]
fn reports_round_trip_through_json() {
    let report = run_campaign(&small_config()).unwrap();
    assert!(!report.rows.is_empty());
    let json = render_report(&report, ReportFormat::Json).unwrap();
    assert_eq!(Report::from_json(&json).unwrap(), report);
}
