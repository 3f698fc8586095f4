mod common;

use common::*;
use proptest::prelude::*;

const N5: u16 = 5;
const N7: u16 = 7;

proptest! {
    #![proptest_config(runner_config(32, 0x6732))]

    #[test]
    fn coproduct_is_coassociative(x in element(N5, 4)) {
        let f = fixture();
        prop_assert_eq!(coassociative(&f.delta5, &f.delta5, &f.delta5, &x), Ok(()));
    }

    #[test]
    fn coproduct_counit(x in element(N5, 4)) {
        let f = fixture();
        prop_assert_eq!(counit_left_holds(&f.delta5, &x), Ok(()));
        prop_assert_eq!(counit_right_holds(&f.delta5, &x), Ok(()));
    }

    #[test]
    fn coproduct_is_multiplicative(x in element(N5, 3), y in element(N5, 3)) {
        let f = fixture();
        prop_assert_eq!(multiplicative(&f.delta5, &x, &y), Ok(()));
    }

    #[test]
    fn deformed_coproduct_is_coassociative_and_multiplicative(x in element(N7, 3), y in element(N7, 2)) {
        let f = fixture();
        prop_assert_eq!(coassociative(&f.delta_u, &f.delta_u, &f.delta_u, &x), Ok(()));
        prop_assert_eq!(counit_left_holds(&f.delta_u, &x), Ok(()));
        prop_assert_eq!(multiplicative(&f.delta_u, &x, &y), Ok(()));
    }

    #[test]
    fn right_coaction_axioms(x in element(N7, 3), y in element(N7, 2)) {
        let f = fixture();
        prop_assert_eq!(coassociative(&f.ctx.rho, &f.ctx.rho, &f.ctx.coproduct, &x), Ok(()));
        prop_assert_eq!(counit_right_holds(&f.ctx.rho, &x), Ok(()));
        prop_assert_eq!(multiplicative(&f.ctx.rho, &x, &y), Ok(()));
    }

    #[test]
    fn left_coaction_axioms(x in element(N7, 3), y in element(N7, 2)) {
        let f = fixture();
        prop_assert_eq!(coassociative(&f.ctx.delta, &f.delta_u, &f.ctx.delta, &x), Ok(()));
        prop_assert_eq!(counit_left_holds(&f.ctx.delta, &x), Ok(()));
        prop_assert_eq!(multiplicative(&f.ctx.delta, &x, &y), Ok(()));
    }

    #[test]
    fn normal_forms_are_stable(w in word(4), x in element(N7, 2), y in element(N7, 1)) {
        let f = fixture();
        for p in [&f.ctx.pre, &f.ctx.cleft, &f.ctx.lift] {
            prop_assert_eq!(normal_form_stable(p, &w, &x, &y), Ok(()));
        }
    }

    #[test]
    fn normal_forms_preserve_degree(w in word(5)) {
        let f = fixture();
        for p in [&f.pre5, &f.ctx.pre, &f.ctx.cleft, &f.ctx.lift] {
            prop_assert_eq!(graded(p, &w), Ok(()));
        }
    }
}
