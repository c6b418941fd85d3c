use g2calib::algebra::kform::{phi0, psi0, KForm};
use g2calib::algebra::metric::metric_from_three_form;
use g2calib::algebra::octonion::oct_mul;
use g2calib::algebra::{associator, chi_eval, cross, phi0_eval, psi0_eval};
use g2calib::{Octonion, Vector7};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn vector() -> impl Strategy<Value = Vector7> {
    prop::array::uniform7(-1.0f64..1.0).prop_map(Vector7)
}

fn form(degree: usize) -> impl Strategy<Value = KForm> {
    let n = [1, 7, 21, 35, 35, 21, 7, 1][degree];
    prop::collection::vec(-2.0f64..2.0, n).prop_map(move |c| KForm::from_coefficients(degree, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn cross_product_norm_identity(u in vector(), v in vector()) {
        let uv = cross(&u, &v);
        let lhs = uv.dot(&uv) + u.dot(&v).powi(2);
        prop_assert!((lhs - u.dot(&u) * v.dot(&v)).abs() <= TOL);
    }

    #[test]
    fn chi_is_the_associator(u in vector(), v in vector(), w in vector()) {
        prop_assert!((chi_eval(&u, &v, &w) - associator(&u, &v, &w)).max_abs() <= TOL);
    }

    #[test]
    fn psi_pairs_the_associator_with_the_fourth_slot(u in vector(), v in vector(), w in vector(), x in vector()) {
        let expansion = psi0::<f64>().eval(&[u, v, w, x]).unwrap();
        prop_assert!((psi0_eval(&u, &v, &w, &x) - expansion).abs() <= TOL);
        prop_assert!((associator(&u, &v, &w).dot(&x) - expansion).abs() <= TOL);
    }

    #[test]
    fn cross_pairs_to_phi(u in vector(), v in vector(), w in vector()) {
        let table = phi0::<f64>().eval(&[u, v, w]).unwrap();
        prop_assert!((cross(&u, &v).dot(&w) - table).abs() <= TOL);
        prop_assert!((phi0_eval(&u, &v, &w) - table).abs() <= TOL);
    }

    #[test]
    fn octonion_norm_is_multiplicative(a in -1.0f64..1.0, u in vector(), b in -1.0f64..1.0, v in vector()) {
        let p = Octonion::from_parts(a, &u);
        let q = Octonion::from_parts(b, &v);
        let pq = oct_mul(&p, &q);
        prop_assert!((pq.norm_squared() - p.norm_squared() * q.norm_squared()).abs() <= TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn wedge_is_graded_commutative(a in form(2), b in form(3), c in form(1)) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert!(ab.max_abs_diff(&ba).unwrap() <= TOL);
        let bc = b.wedge(&c).unwrap();
        let cb = c.wedge(&b).unwrap();
        prop_assert!(bc.max_abs_diff(&(-cb)).unwrap() <= TOL);
    }

    #[test]
    fn wedge_is_associative(a in form(1), b in form(2), c in form(2)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= TOL);
    }

    #[test]
    fn forms_are_alternating(a in form(3), u in vector(), v in vector(), w in vector()) {
        let x = a.eval(&[u, v, w]).unwrap();
        prop_assert!((a.eval(&[v, u, w]).unwrap() + x).abs() <= TOL);
        prop_assert!((a.eval(&[u, w, v]).unwrap() + x).abs() <= TOL);
        prop_assert!(a.eval(&[u, u, w]).unwrap().abs() <= TOL);
    }
}

#[test]
fn metric_of_phi0_in_floating_point() {
    let m = metric_from_three_form(&phi0::<f64>()).unwrap();
    assert!((m.vol - 1.0).abs() <= 1e-12);
    for (i, row) in m.gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((g - expected).abs() <= 1e-12);
        }
    }
}
