mod common;

use common::*;
use fischerlab::fischer::{coordinates, FischerOperator};
use fischerlab::{
    dirichlet_solve, fischer_decompose, format_polynomial, linalg, parse_polynomial, Basis, Degree, Field, Poly,
    QuadricDomain, Scalar, SliceKind,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| Scalar::ratio(Field::Q, n, d))
}

fn gaussian() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| Scalar::gaussian(a.re().clone(), b.re().clone()))
}

fn poly_in(arity: usize, field: Field, max_degree: u32) -> impl Strategy<Value = Poly> {
    let coeff = match field {
        Field::Q => rational().boxed(),
        Field::Qi => gaussian().boxed(),
    };
    prop::collection::vec((prop::collection::vec(0..=max_degree, arity), coeff), 0..6).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(mut e, c)| {
                // clamp total degree
                while e.iter().sum::<u32>() > max_degree {
                    let k = e.iter().position(|&v| v > 0).unwrap();
                    e[k] -= 1;
                }
                (e, c)
            })
            .collect::<Vec<_>>();
        Poly::from_terms(arity, field, terms).unwrap()
    })
}

fn poly2() -> impl Strategy<Value = Poly> {
    poly_in(2, Field::Q, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly2(), b in poly2(), c in poly2()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn canonical_form_has_no_zero_terms(a in poly2(), b in poly2()) {
        let p = &(&a * &b) - &(&b * &a);
        prop_assert!(p.is_zero());
        for (_, c) in (&a + &b).terms() {
            prop_assert!(!c.is_zero());
        }
    }

    #[test]
    fn degree_is_additive(a in poly2(), b in poly2()) {
        prop_assert_eq!((&a * &b).degree(), a.degree() + b.degree());
    }

    #[test]
    fn homogeneous_components_sum_back(p in poly_in(3, Field::Q, 6)) {
        let mut sum = Poly::zero(3, Field::Q);
        for n in 0..=6 {
            sum = &sum + &p.homogeneous_component(n);
        }
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn laplacian_lowers_degree(p in poly_in(3, Field::Q, 7)) {
        let lap = p.laplacian();
        if let (Degree::Finite(dl), Degree::Finite(dp)) = (lap.degree(), p.degree()) {
            prop_assert!(dl + 2 <= dp);
        }
    }

    #[test]
    fn norm_squared_operator_is_the_laplacian(p in poly_in(2, Field::Q, 6)) {
        let op = Poly::norm_squared(2, Field::Q);
        prop_assert_eq!(p.apply_operator(&op).unwrap(), p.laplacian());
    }

    #[test]
    fn exact_evaluation_is_a_ring_homomorphism(a in poly2(), b in poly2(), x in rational(), y in rational()) {
        let pt = [x, y];
        let lhs = (&a * &b).evaluate(&pt).unwrap();
        let rhs = &a.evaluate(&pt).unwrap() * &b.evaluate(&pt).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&a + &b).evaluate(&pt).unwrap();
        let rhs = &a.evaluate(&pt).unwrap() + &b.evaluate(&pt).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn format_then_parse_is_identity(p in poly_in(3, Field::Q, 6), g in poly_in(3, Field::Qi, 4)) {
        let xyz = vars(&["x", "y", "z"]);
        prop_assert_eq!(parse_polynomial(&format_polynomial(&p, &xyz), &xyz, Field::Q).unwrap(), p);
        prop_assert_eq!(parse_polynomial(&format_polynomial(&g, &xyz), &xyz, Field::Qi).unwrap(), g);
    }

    #[test]
    fn json_round_trip(g in poly_in(3, Field::Qi, 4)) {
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Poly>(&text).unwrap(), g);
    }

    #[test]
    fn fischer_operator_is_linear(
        psi in poly_in(2, Field::Q, 3), a in rational(), b in rational(), q1 in poly2(), q2 in poly2(),
    ) {
        prop_assume!(!psi.is_constant());
        let op = FischerOperator::new(psi).unwrap();
        let combo = &q1.checked_scale(&a).unwrap() + &q2.checked_scale(&b).unwrap();
        let lhs = op.apply(&combo).unwrap();
        let rhs = &op.apply(&q1).unwrap().checked_scale(&a).unwrap() + &op.apply(&q2).unwrap().checked_scale(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fischer_degree_shift(psi in poly_in(3, Field::Q, 3), q in poly_in(3, Field::Q, 4)) {
        prop_assume!(!psi.is_constant());
        let op = FischerOperator::new(psi.clone()).unwrap();
        let image = op.apply(&q).unwrap();
        if let (Degree::Finite(di), Degree::Finite(dp), Degree::Finite(dq)) = (image.degree(), psi.degree(), q.degree()) {
            prop_assert!(di + 2 <= dp + dq);
        }
    }

    #[test]
    fn matrix_agrees_with_direct_application(psi in poly_in(2, Field::Q, 3), q in poly_in(2, Field::Q, 4)) {
        prop_assume!(!psi.is_constant());
        let op = FischerOperator::new(psi.clone()).unwrap();
        let source = Basis::new(2, SliceKind::Filtered(4)).unwrap();
        let target = Basis::new(2, SliceKind::Filtered(4 + psi.degree().finite().unwrap())).unwrap();
        let m = op.matrix(&source, &target).unwrap();
        let via_matrix = m.mul_vec(&coordinates(&q, &source).unwrap()).unwrap();
        prop_assert_eq!(via_matrix, coordinates(&op.apply(&q).unwrap(), &target).unwrap());
    }

    #[test]
    fn linalg_rank_nullity_and_transform(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7, r in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_low_rank(&mut rng, rows, cols, r);
        let rr = a.rref();
        prop_assert_eq!(rr.transform.mul(&a).unwrap(), rr.rref.clone());
        prop_assert_eq!(rr.rank + rr.nullspace_basis().len(), cols);
        prop_assert_eq!(rr.transform.rank(), rows);
        prop_assert!(rr.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        for v in rr.nullspace_basis() {
            prop_assert!(a.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
        if let Some(w) = rr.cokernel_witness() {
            prop_assert!(rr.rank < rows);
            prop_assert_eq!(linalg::solve(&a, &w).unwrap(), None);
        } else {
            prop_assert_eq!(rr.rank, rows);
        }
    }
}

#[test]
fn homogeneous_psi_never_overflows_homogeneous_slices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 1..=4u32 {
        let psi = loop {
            let p = random_poly(&mut rng, 3, Field::Q, k, 4).homogeneous_component(k);
            if !p.is_zero() {
                break p;
            }
        };
        let op = FischerOperator::new(psi).unwrap();
        for m in 0..=4u32 {
            let source = Basis::new(3, SliceKind::Homogeneous(m)).unwrap();
            let Some(n) = (m + k).checked_sub(2) else { continue };
            let target = Basis::new(3, SliceKind::Homogeneous(n)).unwrap();
            op.matrix(&source, &target).unwrap();
        }
    }
}

#[test]
fn fischer_apply_matches_finite_differences() {
    // independent oracle: the Laplacian of psi*q by a float stencil
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let psi = random_poly_of_degree(&mut rng, 2, 2, 4);
        let q = random_poly(&mut rng, 2, Field::Q, 3, 4);
        let product = &psi * &q;
        let image = FischerOperator::new(psi).unwrap().apply(&q).unwrap();
        for _ in 0..5 {
            let x = [rand::Rng::gen_range(&mut rng, -1.0..1.0), rand::Rng::gen_range(&mut rng, -1.0..1.0)];
            let fd = fd_laplacian(|p| product.evaluate_f64(p).unwrap(), &x, 1e-3);
            let exact = image.evaluate_f64(&x).unwrap();
            assert!((fd - exact).abs() < 1e-3 * (1.0 + exact.abs()), "{fd} vs {exact}");
        }
    }
}

#[test]
fn quadric_slices_are_square_and_ellipsoids_nonsingular() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..5 {
        let dom = random_ellipsoid(&mut rng, 2);
        let op = FischerOperator::new(dom.psi().clone()).unwrap();
        for m in 0..=6 {
            let b = Basis::new(2, SliceKind::Filtered(m)).unwrap();
            let a = op.matrix(&b, &b).unwrap();
            assert_eq!(a.rank(), b.len());
            assert_eq!(rank_mod_p(&a), Some(b.len()));
        }
    }
    // a general quadric still maps filtered(m) into itself
    let xy = vars(&["x", "y"]);
    let hyper = parse_polynomial("x^2 - 3*x*y + y - 2", &xy, Field::Q).unwrap();
    let op = FischerOperator::new(hyper).unwrap();
    let b = Basis::new(2, SliceKind::Filtered(5)).unwrap();
    op.matrix(&b, &b).unwrap();
}

#[test]
fn certificates_are_sound_by_recomputation() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..30 {
        let psi = random_ellipsoid(&mut rng, 2).psi().clone();
        let f = random_poly(&mut rng, 2, Field::Q, 6, 6);
        let cert = fischer_decompose(&psi, &f, 0).unwrap();
        // recompute independently of the certificate's own check routine
        assert!((&f - &(&(&psi * &cert.q) + &cert.h)).is_zero());
        assert!(cert.h.laplacian().is_zero());
    }
}

#[test]
fn ellipsoidal_solutions_preserve_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for k in 0..100 {
        let dom = random_ellipsoid(&mut rng, 2 + k % 2);
        let f = random_poly(&mut rng, dom.arity(), Field::Q, if dom.arity() == 2 { 8 } else { 5 }, 5);
        let sol = dirichlet_solve(&dom, &f).unwrap();
        assert!(sol.h.degree() <= f.degree());
        assert!(sol.verification.harmonic_exact && sol.verification.identity_exact);
    }
}

#[test]
fn solution_does_not_depend_on_basis_order() {
    // solve the slice system in a reversed basis order and compare
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..10 {
        let dom = random_ellipsoid(&mut rng, 2);
        let f = random_poly_of_degree(&mut rng, 2, 5, 6);
        let sol = dirichlet_solve(&dom, &f).unwrap();

        let slice = Basis::new(2, SliceKind::Filtered(3)).unwrap();
        let op = FischerOperator::new(dom.psi().clone()).unwrap();
        let a = op.matrix(&slice, &slice).unwrap();
        let n = slice.len();
        let rev_cols: Vec<Vec<Scalar>> = (0..n).rev().map(|j| a.column(j)).collect();
        let a_rev = fischerlab::ExactMatrix::from_columns(Field::Q, n, &rev_cols).unwrap();
        let b = coordinates(&f.laplacian(), &slice).unwrap();
        let x_rev = linalg::solve(&a_rev, &b).unwrap().unwrap();
        let q = Poly::from_terms(
            2,
            Field::Q,
            slice.monomials().iter().rev().zip(x_rev).map(|(m, c)| (m.exponents().to_vec(), c)),
        )
        .unwrap();
        assert_eq!(q, sol.q);
        assert_eq!(&f - &(dom.psi() * &q), sol.h);
    }
}

#[test]
fn rotated_ellipse_is_solved_but_not_flagged() {
    let xy = vars(&["x", "y"]);
    let psi = parse_polynomial("2*x^2 + 2*x*y + 3*y^2 - 1", &xy, Field::Q).unwrap();
    let dom = QuadricDomain::new(psi, vec![0.0, 0.0]).unwrap();
    assert!(!dom.is_ellipsoidal());
    let f = parse_polynomial("x^4 - y^3 + x*y", &xy, Field::Q).unwrap();
    let sol = dirichlet_solve(&dom, &f).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let v = fischerlab::verify_solution(&sol, 100, 1e-9, 1e-12, &mut rng).unwrap();
    assert!(v.passed, "{v:?}");
}

/// For phi(z) = z^2 the slack needed to cover filtered degree n grows as 2n + 2.
#[test]
fn khavinson_quadratic_phi_slack_grows_linearly() {
    use fischerlab::fischer::{khavinson_psi, rank_profile, ProfileMode, Verdict};
    let f = Field::Qi;
    let psi = khavinson_psi(&[Scalar::zero(f), Scalar::zero(f), Scalar::one(f)]).unwrap();
    let prof = rank_profile(&psi, 2, 6, ProfileMode::Filtered).unwrap();
    let slacks: Vec<u32> = prof
        .verdicts
        .iter()
        .map(|v| match v.verdict {
            Verdict::SurjectiveWithSlack { slack } => slack,
            ref other => panic!("degree {}: {other:?}", v.target_degree),
        })
        .collect();
    assert_eq!(slacks, [2, 4, 6]);

    // x1 has a preimage of degree 3 but none of degree <= 2.
    let op = FischerOperator::new(psi).unwrap();
    let x1 = Poly::var(3, f, 0).unwrap();
    for (m, solvable) in [(2, false), (3, true)] {
        let src = Basis::new(3, SliceKind::Filtered(m)).unwrap();
        let tgt = Basis::new(3, SliceKind::Filtered(m + 2)).unwrap();
        let a = op.matrix(&src, &tgt).unwrap();
        let b = coordinates(&x1, &tgt).unwrap();
        let sol = linalg::solve(&a, &b).unwrap();
        assert_eq!(sol.is_some(), solvable, "source degree {m}");
        if let Some(c) = sol {
            assert_eq!(a.mul_vec(&c).unwrap(), b);
        }
    }
}
