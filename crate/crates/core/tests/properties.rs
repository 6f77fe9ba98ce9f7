use approx_param::familygen::{generate_family, FamilySpec, MemberStatus};
use approx_param::hausdorff::{eta, lattice_scan};
use approx_param::io::{curve_to_string, parse_curve, parse_param, param_to_string};
use approx_param::paramalg::{approx_parametrize, implicitize, Parametrization};
use approx_param::rootfind::{isolating_interval, real_roots, IsolationMode, REAL_TOL};
use approx_param::{BiPoly, RatFun, UniPoly};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![-1e3..1e3f64, -1.0..1.0f64, Just(0.0), (-300i32..300).prop_map(|e| 10f64.powi(e))]
}

fn bipoly(max_deg: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, coeff()), 1..12).prop_map(|t| BiPoly::from_terms(&t))
}

/// Integer coefficients keep every derivative product exact.
fn int_bipoly(max_deg: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -1000i32..1000), 1..12)
        .prop_map(|t| BiPoly::from_terms(&t.into_iter().map(|(i, j, c)| (i, j, c as f64)).collect::<Vec<_>>()))
}

fn unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-10.0..10.0f64, 1..=max_deg + 1).prop_map(UniPoly::new)
}

fn first_rational_pair(seed: u64) -> Option<(BiPoly, BiPoly)> {
    let family = generate_family(&FamilySpec::new(seed));
    let m = family.into_iter().find(|m| m.status == MemberStatus::Rational)?;
    let fbar = implicitize(&approx_parametrize(&m.g, 0.01).ok()?).ok()?;
    Some((m.g, fbar))
}

proptest! {
    #[test]
    fn curve_text_round_trip(f in bipoly(6)) {
        prop_assert_eq!(parse_curve(&curve_to_string(&f)).unwrap(), f);
    }

    #[test]
    fn param_text_round_trip(
        n1 in unipoly(4), d1 in unipoly(4), n2 in unipoly(4), d2 in unipoly(4)
    ) {
        prop_assume!(!d1.is_zero() && !d2.is_zero());
        let p = Parametrization::new(RatFun::new(n1, d1).unwrap(), RatFun::new(n2, d2).unwrap());
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        prop_assert_eq!(parse_param(&param_to_string(&p)).unwrap(), p);
    }

    #[test]
    fn ratfun_denominator_is_monic(num in unipoly(4), den in unipoly(4)) {
        prop_assume!(!den.is_zero());
        let r = RatFun::new(num, den).unwrap();
        prop_assert_eq!(r.den().leading(), 1.0);
    }

    #[test]
    fn homogenize_round_trip(f in bipoly(5)) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(f.homogenize().dehomogenize(), f);
    }

    #[test]
    fn partials_commute(f in int_bipoly(5), a in 0usize..3, b in 0usize..3, c in 0usize..3, d in 0usize..3) {
        prop_assert_eq!(f.partial(a, b).partial(c, d), f.partial(c, d).partial(a, b));
    }

    #[test]
    fn compose_line_constant_term_is_value(
        x in -3.0..3.0f64, y in -3.0..3.0f64, u in -1.0..1.0f64, v in -1.0..1.0f64
    ) {
        let f = BiPoly::from_terms(&[(4, 0, 1.0), (2, 2, -3.0), (0, 4, 0.5), (1, 2, 2.0), (0, 0, -1.0)]);
        let line = f.compose_line((x, y), (u, v));
        prop_assert!((line.coeff(0) - f.eval(x, y)).abs() <= 1e-12 * (1.0 + f.eval(x, y).abs()));
    }

    #[test]
    fn real_roots_are_sorted_roots(roots in prop::collection::vec(-5.0..5.0f64, 1..6)) {
        let p = UniPoly::from_roots(&roots);
        let found = real_roots(&p, REAL_TOL).unwrap();
        prop_assert!(found.windows(2).all(|w| w[0] <= w[1]));
        for r in &found {
            prop_assert!(roots.iter().any(|s| (s - r).abs() < 1e-4));
        }
    }

    #[test]
    fn separating_interval_excludes_others(
        target in -5.0..5.0f64, others in prop::collection::vec(-5.0..5.0f64, 0..5)
    ) {
        let others: Vec<f64> = others.into_iter().filter(|o| (o - target).abs() > 1e-9).collect();
        let iv = isolating_interval(target, &others, IsolationMode::Separating { cap: 1.0 });
        prop_assert!(iv.contains(target));
        prop_assert!(iv.hi - iv.lo <= 2.0 + 1e-12);
        for o in &others {
            prop_assert!(!iv.contains_open(*o));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn eta_is_symmetric(seed in 0u64..40) {
        if let Some((f, fbar)) = first_rational_pair(seed) {
            let (a, b) = (eta(&f, &fbar).unwrap(), eta(&fbar, &f).unwrap());
            match (a, b) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a)),
                (a, b) => prop_assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn raising_tau_cap_never_lowers_m(seed in 0u64..40, cap in 1u32..6) {
        if let Some((f, fbar)) = first_rational_pair(seed) {
            let low = lattice_scan(&f, &fbar, 1e-3, cap).unwrap();
            let high = lattice_scan(&f, &fbar, 1e-3, cap + 3).unwrap();
            prop_assert!(low.m <= high.m);
            prop_assert!(high.tau.iter().zip(low.tau).all(|(h, l)| h.abs() >= l.abs()));
        }
    }

    #[test]
    fn eta_of_curve_with_itself_is_zero(seed in 0u64..40) {
        if let Some((f, _)) = first_rational_pair(seed) {
            prop_assert!(eta(&f, &f).unwrap().unwrap_or(0.0) == 0.0);
        }
    }
}
