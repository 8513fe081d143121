use std::sync::Arc;

use super::constructions::assemble;
use super::functor::for_each_nat_transform;
use super::{CatRef, FinCat, FinFunctor, Mor, Obj};
use crate::budget::Budget;
use crate::error::Result;

/// A cone under a diagram `E: I → C`: legs `E(i) → vertex`.
///
/// For limits (see [`limit`]) the legs point the other way, `vertex → E(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    pub vertex: Obj,
    pub legs: Vec<Mor>,
}

impl Cone {
    pub fn label(&self, c: &FinCat) -> String {
        let legs: Vec<&str> = self.legs.iter().map(|&l| c.morphism_name(l)).collect();
        format!("⟨{}|{}⟩", c.object_name(self.vertex), legs.join(","))
    }
}

/// Visits cones in canonical order (vertex, then legs lexicographically).
pub fn for_each_cone(e: &FinFunctor, budget: &Budget, visit: &mut dyn FnMut(Cone) -> bool) -> Result<()> {
    let (dom, cod) = (e.dom(), e.cod());
    for v in 0..cod.num_objects() {
        let const_obj = vec![v; dom.num_objects()];
        let const_mor = vec![cod.identity(v); dom.num_morphisms()];
        let mut go_on = true;
        for_each_nat_transform(dom, cod, (e.obj_map(), e.mor_map()), (&const_obj, &const_mor), budget, &mut |legs| {
            go_on = visit(Cone { vertex: v, legs: legs.to_vec() });
            go_on
        })?;
        if !go_on {
            break;
        }
    }
    Ok(())
}

pub fn cones(e: &FinFunctor, budget: &Budget) -> Result<Vec<Cone>> {
    let mut out = Vec::new();
    for_each_cone(e, budget, &mut |c| {
        out.push(c);
        true
    })?;
    Ok(out)
}

/// First cone in canonical order.
pub fn find_cone(e: &FinFunctor, budget: &Budget) -> Result<Option<Cone>> {
    let mut found = None;
    for_each_cone(e, budget, &mut |c| {
        found = Some(c);
        false
    })?;
    Ok(found)
}

/// A cone over `id_C`.
pub fn find_id_cone(c: &CatRef, budget: &Budget) -> Result<Option<Cone>> {
    find_cone(&FinFunctor::identity(c), budget)
}

/// Morphisms `u: vertex → vertex'` with `u ∘ leg(i) = leg'(i)` for all `i`.
pub fn mediating_maps(c: &FinCat, from: &Cone, to: &Cone) -> Vec<Mor> {
    c.hom(from.vertex, to.vertex)
        .iter()
        .copied()
        .filter(|&u| from.legs.iter().zip(&to.legs).all(|(&l, &l2)| c.compose(u, l) == l2))
        .collect()
}

pub struct ConeCategory {
    pub cat: CatRef,
    pub cones: Vec<Cone>,
}

pub fn cone_category(e: &FinFunctor, budget: &Budget) -> Result<ConeCategory> {
    let cod = e.cod();
    let all = cones(e, budget)?;
    let objects: Vec<String> = all.iter().map(|k| k.label(cod)).collect();
    let mut arrows = Vec::new();
    for (s, a) in all.iter().enumerate() {
        for (t, b) in all.iter().enumerate() {
            budget.spend(cod.hom(a.vertex, b.vertex).len() as u64 + 1, "building the cone category")?;
            for u in mediating_maps(cod, a, b) {
                arrows.push((s, t, u, format!("{}[{}->{}]", cod.morphism_name(u), objects[s], objects[t])));
            }
        }
    }
    let (cat, _) = assemble(objects, arrows, |o| cod.identity(all[o].vertex), |g, f| cod.compose(*g, *f));
    Ok(ConeCategory { cat: Arc::new(cat), cones: all })
}

fn is_initial_among(c: &FinCat, cone: &Cone, all: &[Cone], budget: &Budget) -> Result<bool> {
    for other in all {
        budget.spend(c.hom(cone.vertex, other.vertex).len() as u64 + 1, "checking universality")?;
        if mediating_maps(c, cone, other).len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first initial cone in canonical order, if any. Over an empty
/// diagram this is the first initial object of `C`.
pub fn colimit(e: &FinFunctor, budget: &Budget) -> Result<Option<Cone>> {
    let all = cones(e, budget)?;
    for cone in &all {
        if is_initial_among(e.cod(), cone, &all, budget)? {
            return Ok(Some(cone.clone()));
        }
    }
    Ok(None)
}

/// Limit computed as the colimit of `E^o`; legs are `vertex → E(i)` in `C`.
pub fn limit(e: &FinFunctor, budget: &Budget) -> Result<Option<Cone>> {
    colimit(&e.opposite(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{karoubi_closure, product};
    use crate::poset::Poset;

    fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    #[test]
    fn id_cone_of_projector_category() {
        let p = projector();
        let cone = find_id_cone(&p, &Budget::default()).unwrap().unwrap();
        assert_eq!(cone.vertex, 0);
        assert_eq!(cone.legs, vec![1]);
        let disc = Arc::new(FinCat::discrete(&["a", "b"]));
        assert!(find_id_cone(&disc, &Budget::default()).unwrap().is_none());
    }

    #[test]
    fn colimit_over_terminal_index_is_value_there() {
        let i = Arc::new(Poset::chain(2).as_category());
        let e = FinFunctor::identity(&i);
        let colim = colimit(&e, &Budget::default()).unwrap().unwrap();
        assert_eq!(colim.vertex, 2);
        let lim = limit(&e, &Budget::default()).unwrap().unwrap();
        assert_eq!(lim.vertex, 0);
    }

    #[test]
    fn tautological_embedding_into_karoubi_closure() {
        let p = projector();
        let k = karoubi_closure(&p);
        let cc = cone_category(&k.epsilon, &Budget::default()).unwrap();
        // the universal cone and the non-universal a_! cone are both present
        assert!(cc.cones.len() >= 2);
        let colim = colimit(&k.epsilon, &Budget::default()).unwrap().unwrap();
        let image = k.object_of(0, 1).unwrap();
        assert_eq!(colim.vertex, image);
        assert!(cc.cones.iter().any(|c| c.vertex == k.object_of(0, 0).unwrap()));
    }

    #[test]
    fn coproduct_of_middle_objects_in_square() {
        let a = Arc::new(Poset::chain(1).as_category());
        let sq = product(&a, &a).cat;
        let disc = Arc::new(FinCat::discrete(&["a", "b"]));
        let e = FinFunctor::new(disc, sq.clone(), vec![1, 2], vec![sq.identity(1), sq.identity(2)]).unwrap();
        assert_eq!(colimit(&e, &Budget::default()).unwrap().unwrap().vertex, 3);
    }

    #[test]
    fn empty_diagram_colimit_is_initial_object() {
        let a = Arc::new(Poset::chain(1).as_category());
        let empty = Arc::new(FinCat::empty());
        let e = FinFunctor::new(empty, a, vec![], vec![]).unwrap();
        assert_eq!(colimit(&e, &Budget::default()).unwrap().unwrap().vertex, 0);
        assert_eq!(limit(&e, &Budget::default()).unwrap().unwrap().vertex, 1);
    }

    #[test]
    fn cone_category_is_a_category() {
        let p = projector();
        let cc = cone_category(&FinFunctor::identity(&p), &Budget::default()).unwrap();
        cc.cat.check_laws().unwrap();
        assert_eq!(cc.cones.len(), 1);
    }

    #[test]
    fn constant_discrete_diagram_first_cone() {
        let a = Arc::new(Poset::chain(1).as_category());
        let disc = Arc::new(FinCat::discrete(&["a", "b"]));
        let e = FinFunctor::constant(&disc, &a, 0);
        assert_eq!(find_cone(&e, &Budget::default()).unwrap().unwrap().vertex, 0);
    }
}
