use std::sync::OnceLock;

use kancalc::category::{connected_components, find_id_cone, functors, karoubi_closure, opposite};
use kancalc::corpus::{categories, posets, set_functors};
use kancalc::filtered::CommuteSetup;
use kancalc::harness::{glue_split_round_trip, lambda_adjunction};
use kancalc::poset::Poset;
use kancalc::presheaf::{check_kan_adjunction, colim_set, elements, lim_set, yoneda_lemma_check, Flavor, SetFunctor, Variance};
use kancalc::{Budget, CatRef, Error, FinFunctor};
use proptest::prelude::*;

fn small_categories() -> &'static [CatRef] {
    static C: OnceLock<Vec<CatRef>> = OnceLock::new();
    C.get_or_init(|| categories(2, 4, &Budget::unlimited()).unwrap())
}

fn tiny_categories() -> &'static [CatRef] {
    static C: OnceLock<Vec<CatRef>> = OnceLock::new();
    C.get_or_init(|| categories(2, 3, &Budget::unlimited()).unwrap().into_iter().filter(|c| c.num_objects() > 0).collect())
}

fn small_posets() -> &'static [Poset] {
    static P: OnceLock<Vec<Poset>> = OnceLock::new();
    P.get_or_init(|| posets(5))
}

fn pick<T: Clone>(items: &[T], k: usize) -> T {
    items[k % items.len()].clone()
}

fn set_functor(base: &CatRef, variance: Variance, max: usize, k: usize) -> SetFunctor {
    pick(&set_functors(base, variance, max, &Budget::unlimited()).unwrap(), k)
}

fn point() -> CatRef {
    tiny_categories().iter().find(|c| c.num_objects() == 1 && c.num_morphisms() == 1).unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn id_cone_iff_karoubi_terminal(k in any::<usize>()) {
        let c = pick(small_categories(), k);
        let cone = find_id_cone(&c, &Budget::unlimited()).unwrap();
        prop_assert_eq!(cone.is_some(), karoubi_closure(&c).cat.terminal_object().is_some());
    }

    #[test]
    fn opposite_is_an_involution(k in any::<usize>()) {
        let c = pick(small_categories(), k);
        prop_assert_eq!(opposite(&opposite(&c)).to_raw(), c.to_raw());
    }

    #[test]
    fn colimit_counts_components_of_elements(k in any::<usize>(), x in any::<usize>()) {
        let c = pick(tiny_categories(), k);
        let x = set_functor(&c, Variance::Covariant, 2, x);
        let el = elements(&x, Flavor::Covariant).unwrap();
        prop_assert_eq!(colim_set(&x).len(), connected_components(&el.cat).len());
    }

    #[test]
    fn yoneda_bijection(k in any::<usize>(), x in any::<usize>(), o in any::<usize>()) {
        let c = pick(tiny_categories(), k);
        let x = set_functor(&c, Variance::Contravariant, 2, x);
        let r = yoneda_lemma_check(&x, o % c.num_objects(), &Budget::unlimited()).unwrap();
        prop_assert!(r.bijective);
        prop_assert_eq!(r.maps, r.atoms);
    }

    #[test]
    fn kan_extensions_are_adjoint(a in any::<usize>(), b in any::<usize>(), g in any::<usize>(), x in any::<usize>(), y in any::<usize>()) {
        let (ca, cb) = (pick(tiny_categories(), a), pick(tiny_categories(), b));
        let gammas: Vec<FinFunctor> = functors(&ca, &cb, &Budget::unlimited()).unwrap();
        prop_assume!(!gammas.is_empty());
        let gamma = pick(&gammas, g);
        let x = set_functor(&ca, Variance::Contravariant, 2, x);
        let y = set_functor(&cb, Variance::Contravariant, 2, y);
        // hom sets out of left Kan extensions grow fast; oversized cases are skipped
        let r = check_kan_adjunction(&gamma, &x, &y, &Budget::new(200_000));
        prop_assume!(!matches!(r, Err(Error::BudgetExceeded { .. })));
        let r = r.unwrap();
        prop_assert!(r.left_bijective && r.right_bijective);
        prop_assert!(r.left_triangles && r.right_triangles);
    }

    #[test]
    fn glue_split_and_lambda(k in any::<usize>()) {
        let j = pick(small_posets(), k);
        prop_assert!(glue_split_round_trip(&j).unwrap());
        prop_assert!(lambda_adjunction(&j));
    }

    // With I a point the comparison is the identity on lim_J X; with J a
    // point it is the identity on colim_I X. Either way both sides must
    // match the generic set (co)limits.
    #[test]
    fn commute_matches_generic_limits(k in any::<usize>(), s in any::<usize>(), x in any::<usize>()) {
        let budget = Budget::unlimited();
        let j = pick(&posets(3), s).as_category_ref();
        let setup = CommuteSetup::new(&point(), &j, &budget).unwrap();
        let xj = set_functor(&setup.product, Variance::Covariant, 2, x);
        let r = setup.check(&xj, &budget).unwrap();
        let lim = lim_set(&xj, &budget).unwrap().len();
        prop_assert!(r.bijective);
        prop_assert_eq!((r.left, r.right), (lim, lim));

        let i = pick(tiny_categories(), k);
        let setup = CommuteSetup::new(&i, &point(), &budget).unwrap();
        let x = set_functor(&setup.product, Variance::Covariant, 2, x);
        let r = setup.check(&x, &budget).unwrap();
        let colim = colim_set(&x).len();
        prop_assert!(r.bijective);
        prop_assert_eq!((r.left, r.right), (colim, colim));
    }
}
