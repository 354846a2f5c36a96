mod common;

use common::*;
use foliation::polyforms::default_names;
use foliation::{rat, PForm, Polynomial, VectorField};
use proptest::prelude::*;

fn sign(k: usize) -> foliation::Rational {
    rat(if k.is_multiple_of(2) { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn d_squared_functions(f in poly_strategy(2, 4), g in poly_strategy(4, 4)) {
        prop_assert!(PForm::function(f).d().d().is_zero());
        prop_assert!(PForm::function(g).d().d().is_zero());
    }

    #[test]
    fn d_squared_one_forms(a in form_strategy(4, 1, 4)) {
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn leibniz(a in form_strategy(4, 1, 3), b in form_strategy(4, 1, 3)) {
        let lhs = a.wedge(&b).unwrap().d();
        let rhs = a.d().wedge(&b).unwrap().sub(&a.wedge(&b.d()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_function(f in poly_strategy(4, 4), b in form_strategy(4, 2, 3)) {
        let ff = PForm::function(f.clone());
        let lhs = b.mul_poly(&f).d();
        let rhs = ff.d().wedge(&b).unwrap().add(&b.d().mul_poly(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan(a in form_strategy(4, 1, 3), v in field_strategy(4, 2)) {
        prop_assert_eq!(a.lie_derivative(&v).unwrap(), a.lie_derivative_cartan(&v).unwrap());
    }

    #[test]
    fn cartan_two_forms(a in form_strategy(3, 2, 3), v in field_strategy(3, 2)) {
        prop_assert_eq!(a.lie_derivative(&v).unwrap(), a.lie_derivative_cartan(&v).unwrap());
    }

    #[test]
    fn contraction_twice_vanishes(a in form_strategy(4, 2, 3), v in field_strategy(4, 2)) {
        prop_assert!(a.contract(&v).unwrap().contract(&v).unwrap().is_zero());
    }

    #[test]
    fn contraction_is_antiderivation(a in form_strategy(4, 1, 3), b in form_strategy(4, 2, 2), v in field_strategy(4, 2)) {
        let lhs = a.wedge(&b).unwrap().contract(&v).unwrap();
        let rhs = a.contract(&v).unwrap().wedge(&b).unwrap()
            .sub(&a.wedge(&b.contract(&v).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_of_differential(f in poly_strategy(4, 4), v in field_strategy(4, 2)) {
        let c = PForm::function(f.clone()).d().contract(&v).unwrap();
        prop_assert_eq!(c.component(&[]), v.apply(&f));
    }

    #[test]
    fn wedge_graded_commutative(a in form_strategy(4, 1, 3), b in form_strategy(4, 2, 3)) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, ba.scale(&sign(2)));
        let aa = a.wedge(&a).unwrap();
        prop_assert!(aa.is_zero());
    }

    #[test]
    fn canonical_text_round_trip(f in poly_strategy(4, 4)) {
        let names = default_names(4);
        let text = f.display_with(&names).to_string();
        prop_assert_eq!(Polynomial::parse(&text, &names).unwrap(), f);
    }

    #[test]
    fn euler_identity(e in 0u32..=4, seed in 0u64..1000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = 3;
        let mut a = PForm::zero(m, 1);
        for i in 0..m {
            a = a.add(&PForm::dx(m, i).mul_poly(&random_homogeneous(&mut rng, m, e, 3)));
        }
        let r = VectorField::euler(m);
        let lhs = a.lie_derivative(&r).unwrap();
        prop_assert_eq!(lhs, a.scale(&rat(e as i64 + 1)));
    }
}

#[test]
fn basic_values() {
    let m = 3;
    assert!(PForm::dx(m, 0).wedge(&PForm::dx(m, 0)).unwrap().is_zero());
    let f = p("x0^2 x1 + 3 x2", m);
    let df = PForm::function(f).d();
    assert_eq!(df.component(&[0]), p("2 x0 x1", m));
    assert_eq!(df.component(&[2]), p("3", m));
}
