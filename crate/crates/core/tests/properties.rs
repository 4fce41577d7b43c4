use proptest::prelude::*;

use bvsaito::brieskorn::{lattice_reduce, lattice_reduce_series, phi_top_apply};
use bvsaito::jacobian::JacobianData;
use bvsaito::linalg::Matrix;
use bvsaito::polyring::{format_q, parse_poly, parse_q, q, MPoly, Mono, Names, WeightSystem, Q};
use bvsaito::rmatrix::{check_semisimple, r_matrix_dense, verify_r, PointData};

fn rational() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

/// Polynomials in x1, x2 with s1, s2 and z^-1..z^2 mixed in.
fn mpoly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), (0u32..3, 0u32..2), -1i32..3, rational()), 0..6).prop_map(|terms| {
        MPoly::from_terms(terms.into_iter().map(|((a, b), (c, d), z, v)| (Mono::new(vec![a, b], vec![c, d], z), v)))
    })
}

fn xpoly(n: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..6, n), rational()), 1..5)
        .prop_map(|terms| MPoly::from_terms(terms.into_iter().map(|(e, v)| (Mono::new(e, Vec::new(), 0), v))))
}

fn e7() -> JacobianData {
    let f = parse_poly("x1^3 + x1*x2^3", &Names::standard(2, 0)).unwrap();
    JacobianData::build(&f, WeightSystem::new(vec![q(1, 3), q(2, 9)]).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(v in rational()) {
        prop_assert_eq!(parse_q(&format_q(&v)).unwrap(), v);
    }

    #[test]
    fn display_parse_round_trip(p in mpoly()) {
        let names = Names::standard(2, 2);
        let text = p.display(&names).to_string();
        prop_assert_eq!(parse_poly(&text, &names).unwrap(), p);
    }

    #[test]
    fn ring_axioms(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule(a in mpoly(), b in mpoly()) {
        for k in 0..2 {
            prop_assert_eq!((&a * &b).diff_x(k), &(&a.diff_x(k) * &b) + &(&a * &b.diff_x(k)));
        }
    }

    #[test]
    fn decomposition_recomposes(g in xpoly(2)) {
        let j = e7();
        prop_assert_eq!(j.regseq_decompose(&g).recompose(&j), g);
    }

    #[test]
    fn exact_forms_vanish(h in xpoly(2)) {
        let j = e7();
        for k in 0..2 {
            let g = &(&j.partials()[k] * &h) + &h.diff_x(k).mul_z(1);
            prop_assert!(lattice_reduce(&j, &g).is_zero());
        }
    }

    #[test]
    fn two_reductions_agree(g in xpoly(2)) {
        let j = e7();
        prop_assert_eq!(lattice_reduce(&j, &g), lattice_reduce_series(&j, &g));
    }

    #[test]
    fn trivialization_intertwines(g in xpoly(2)) {
        let j = e7();
        let pg = phi_top_apply(&j, &g);
        for k in 0..2 {
            let dk = &j.partials()[k];
            prop_assert_eq!(phi_top_apply(&j, &(dk * &g)), &(dk * &pg) + &pg.diff_x(k).mul_z(1));
        }
    }

    #[test]
    fn inverse_is_two_sided(rows in prop::collection::vec(prop::collection::vec(rational(), 3), 3)) {
        let m = Matrix::from_rows(rows);
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(&m * &inv, Matrix::identity(3));
            prop_assert_eq!(&inv * &m, Matrix::identity(3));
        } else {
            prop_assert!(num_traits::Zero::is_zero(&m.det()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dense_r_is_symplectic_on_a2(s1 in rational(), s2 in rational()) {
        let f = parse_poly("(1/3)*x1^3", &Names::standard(1, 0)).unwrap();
        let j = JacobianData::build(&f, WeightSystem::new(vec![q(1, 3)]).unwrap()).unwrap();
        if let Ok(sp) = check_semisimple(&j, &[s1, s2]) {
            let pd = PointData::from_point(&j, &sp).unwrap();
            let r = r_matrix_dense(&pd, 3).unwrap();
            let report = verify_r(&r, &pd);
            prop_assert!(report.starts_at_identity && report.recursion_ok() && report.symplectic_ok(), "{}", report);
        }
    }
}
