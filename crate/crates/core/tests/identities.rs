use degenpoly::identities::{classical_family, verify, verify_all, IdentityId, Verdict, Verifier};
use degenpoly::{Catalog, FamilyKind, GaussRat, MPoly, Rat, Var};
use proptest::prelude::*;

fn x() -> MPoly {
    MPoly::var(Var::X)
}

fn l() -> MPoly {
    MPoly::var(Var::Lambda)
}

#[test]
fn whole_suite_holds_at_moderate_degree() {
    let (reports, summary) = verify_all(6, 8).unwrap();
    assert!(summary.success, "{summary:?}");
    assert_eq!(summary.fails, 0);
    assert_eq!(summary.variant_tags, vec!["T7_stirling_euler_cos"]);
    assert_eq!(summary.checks, reports.len());
    for w in reports.windows(2) {
        assert!(
            (w[0].id, w[0].n) <= (w[1].id, w[1].n),
            "reports out of order"
        );
    }
}

#[test]
fn rejected_cosine_reading_has_hand_residual() {
    // with binom(n,l) the k = 2, l = 1 term is counted twice: 2 x S2_l(2,1) instead of x S2_l(2,1)
    let reports = verify(IdentityId::CosEulerStirling, 2, 3).unwrap();
    let at_two = &reports[2];
    assert_eq!(at_two.verdict, Verdict::HoldsVariant);
    let expected = &(&l() * &x()) - &x();
    assert_eq!(at_two.variant_residual.as_ref().unwrap(), &expected);
    assert_eq!(expected.to_string(), "l*x - x");
}

#[test]
fn sine_reading_is_separated_only_from_degree_four() {
    // Es_0 = 0 hides the mismatch at n = 2 and C(3,1) = C(3,2) at n = 3
    let reports = verify(IdentityId::SinEulerStirling, 4, 5).unwrap();
    for r in &reports[..4] {
        assert!(
            r.variant_residual.as_ref().unwrap().is_zero(),
            "n = {}",
            r.n
        );
    }
    assert!(!reports[4].variant_residual.as_ref().unwrap().is_zero());
    assert!(reports.iter().all(|r| r.verdict == Verdict::Holds));
}

#[test]
fn classical_oracle_values() {
    let b = classical_family(FamilyKind::DegBernoulliNum, 12);
    assert_eq!(b[1], MPoly::constant(Rat::new(-1, 2).unwrap()));
    assert_eq!(b[12], MPoly::constant(Rat::new(-691, 2730).unwrap()));
    let e = classical_family(FamilyKind::DegEuler, 3);
    // E_1(x) = x - 1/2, E_2(x) = x^2 - x
    assert_eq!(e[1], &x() - &MPoly::constant(Rat::new(1, 2).unwrap()));
    assert_eq!(e[2], &x().pow(2) - &x());
}

#[test]
fn conjugation_matches_family_at_conjugate_point() {
    let c = Catalog::new(7);
    let minus_iy = &x() - &(&MPoly::i() * &MPoly::var(Var::Y));
    for n in 0..=7 {
        let conj = c.complex_euler(n).unwrap().conj();
        assert_eq!(
            conj,
            c.poly(FamilyKind::DegEuler, n)
                .substitute(Var::X, &minus_iy)
        );
    }
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-7i64..8, 1i64..6).prop_map(|(a, b)| Rat::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shift_holds_at_random_rationals(r in small_rat(), n in 0usize..7) {
        let c = Catalog::new(7);
        for kind in [FamilyKind::DegCosEuler, FamilyKind::DegSinBernoulli] {
            let f = c.family(kind);
            let rr = MPoly::constant(r.clone());
            let lhs = f[n].substitute(Var::X, &(&x() + &rr));
            let mut rhs = MPoly::zero();
            for j in 0..=n {
                let ff = degenpoly::combinat::gen_falling_factorial(&rr, n - j, degenpoly::combinat::LambdaStep::Falling);
                rhs = &rhs + &(&f[j] * &ff).scale_rat(c.binom(n, j));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn families_agree_at_random_points(lam in small_rat(), xv in small_rat(), yv in small_rat(), n in 0usize..7) {
        // evaluating both routes at a point agrees with evaluating the symbolic difference
        let c = Catalog::new(7);
        let at = [(Var::Lambda, lam), (Var::X, xv), (Var::Y, yv)]
            .into_iter()
            .map(|(v, q)| (v, GaussRat::real(q)))
            .collect();
        for kind in FamilyKind::TRIGONOMETRIC {
            let a = c.poly(kind, n).eval(&at).unwrap();
            let b = c.family_closed(kind).unwrap().polys[n].eval(&at).unwrap();
            prop_assert_eq!(a.clone(), b);
            prop_assert!(a.is_real());
        }
    }

    #[test]
    fn reflection_at_random_lambda(lam in small_rat(), n in 0usize..7) {
        let v = Verifier::new(7);
        let f = &v.catalog().family(FamilyKind::DegSinBernoulli)[n];
        let g = GaussRat::real(lam.clone());
        let lhs = f.substitute(Var::X, &(&MPoly::one() - &x())).bind(Var::Lambda, &g);
        let rhs = f.bind(Var::Lambda, &GaussRat::real(-lam));
        let sign = if n % 2 == 0 { -1 } else { 1 };
        prop_assert_eq!(lhs, rhs.scale_rat(&Rat::from(sign)));
    }
}
