use std::sync::Arc;

use super::{CatRef, FinCat, Mor, Obj};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    dom: CatRef,
    cod: CatRef,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    pub fn new(dom: CatRef, cod: CatRef, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> Result<FinFunctor> {
        if obj_map.len() != dom.num_objects() || mor_map.len() != dom.num_morphisms() {
            return Err(Error::Functor("object or morphism map has the wrong length".into()));
        }
        if let Some(&o) = obj_map.iter().find(|&&o| o >= cod.num_objects()) {
            return Err(Error::Functor(format!("object index {o} out of range")));
        }
        if let Some(&m) = mor_map.iter().find(|&&m| m >= cod.num_morphisms()) {
            return Err(Error::Functor(format!("morphism index {m} out of range")));
        }
        for f in 0..dom.num_morphisms() {
            let image = mor_map[f];
            if cod.src(image) != obj_map[dom.src(f)] || cod.tgt(image) != obj_map[dom.tgt(f)] {
                return Err(Error::Functor(format!("{} is not sent to a morphism between the image objects", dom.morphism_name(f))));
            }
        }
        for o in 0..dom.num_objects() {
            if mor_map[dom.identity(o)] != cod.identity(obj_map[o]) {
                return Err(Error::Functor(format!("identity of {} is not preserved", dom.object_name(o))));
            }
        }
        for g in 0..dom.num_morphisms() {
            for f in 0..dom.num_morphisms() {
                if let Some(gf) = dom.try_compose(g, f) {
                    if cod.compose(mor_map[g], mor_map[f]) != mor_map[gf] {
                        return Err(Error::Functor(format!(
                            "composite {} ∘ {} is not preserved",
                            dom.morphism_name(g),
                            dom.morphism_name(f)
                        )));
                    }
                }
            }
        }
        Ok(FinFunctor { dom, cod, obj_map, mor_map })
    }

    pub fn new_unchecked(dom: CatRef, cod: CatRef, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> FinFunctor {
        debug_assert_eq!(obj_map.len(), dom.num_objects());
        debug_assert_eq!(mor_map.len(), dom.num_morphisms());
        FinFunctor { dom, cod, obj_map, mor_map }
    }

    pub fn identity(c: &CatRef) -> FinFunctor {
        FinFunctor {
            dom: c.clone(),
            cod: c.clone(),
            obj_map: (0..c.num_objects()).collect(),
            mor_map: (0..c.num_morphisms()).collect(),
        }
    }

    /// The functor `E → C` constant at `object`.
    pub fn constant(dom: &CatRef, cod: &CatRef, object: Obj) -> FinFunctor {
        FinFunctor {
            dom: dom.clone(),
            cod: cod.clone(),
            obj_map: vec![object; dom.num_objects()],
            mor_map: vec![cod.identity(object); dom.num_morphisms()],
        }
    }

    pub fn dom(&self) -> &CatRef {
        &self.dom
    }

    pub fn cod(&self) -> &CatRef {
        &self.cod
    }

    pub fn ob(&self, o: Obj) -> Obj {
        self.obj_map[o]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinFunctor) -> FinFunctor {
        assert!(Arc::ptr_eq(&first.cod, &self.dom) || *first.cod == *self.dom, "functors are not composable");
        FinFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        }
    }

    /// The same maps read between the opposite categories.
    pub fn opposite(&self) -> FinFunctor {
        FinFunctor {
            dom: Arc::new(super::opposite(&self.dom)),
            cod: Arc::new(super::opposite(&self.cod)),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    /// Reinterprets the maps with new (structurally identical) endpoints.
    pub fn with_endpoints(&self, dom: CatRef, cod: CatRef) -> FinFunctor {
        FinFunctor { dom, cod, obj_map: self.obj_map.clone(), mor_map: self.mor_map.clone() }
    }

    pub fn is_fully_faithful(&self) -> bool {
        let n = self.dom.num_objects();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let image: Vec<Mor> = self.dom.hom(a, b).iter().map(|&m| self.mor_map[m]).collect();
                let target = self.cod.hom(self.obj_map[a], self.obj_map[b]);
                let mut sorted = image.clone();
                sorted.sort_unstable();
                sorted.dedup();
                sorted.len() == image.len() && sorted.len() == target.len()
            })
        })
    }

    /// Bijective on objects and on morphisms.
    pub fn is_isomorphism(&self) -> bool {
        fn bijective(map: &[usize], size: usize) -> bool {
            if map.len() != size {
                return false;
            }
            let mut seen = vec![false; size];
            map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        }
        bijective(&self.obj_map, self.cod.num_objects()) && bijective(&self.mor_map, self.cod.num_morphisms())
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.cod.num_objects()];
        for &o in &self.obj_map {
            seen[o] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// A natural transformation between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform {
    pub src: FinFunctor,
    pub tgt: FinFunctor,
    pub components: Vec<Mor>,
}

impl NatTransform {
    pub fn new(src: FinFunctor, tgt: FinFunctor, components: Vec<Mor>) -> Result<NatTransform> {
        if *src.dom != *tgt.dom || *src.cod != *tgt.cod {
            return Err(Error::NatTransform("functors are not parallel".into()));
        }
        let (dom, cod) = (src.dom.clone(), src.cod.clone());
        if components.len() != dom.num_objects() {
            return Err(Error::NatTransform("wrong number of components".into()));
        }
        for (o, &c) in components.iter().enumerate() {
            if cod.src(c) != src.ob(o) || cod.tgt(c) != tgt.ob(o) {
                return Err(Error::NatTransform(format!("component at {} has wrong endpoints", dom.object_name(o))));
            }
        }
        for f in 0..dom.num_morphisms() {
            let (a, b) = (dom.src(f), dom.tgt(f));
            if cod.compose(tgt.mor(f), components[a]) != cod.compose(components[b], src.mor(f)) {
                return Err(Error::NatTransform(format!("naturality fails at {}", dom.morphism_name(f))));
            }
        }
        Ok(NatTransform { src, tgt, components })
    }

    pub fn identity(f: &FinFunctor) -> NatTransform {
        let components = (0..f.dom.num_objects()).map(|o| f.cod.identity(f.ob(o))).collect();
        NatTransform { src: f.clone(), tgt: f.clone(), components }
    }

    /// Vertical composite `self ∘ first`.
    pub fn after(&self, first: &NatTransform) -> NatTransform {
        let cod = &self.src.cod;
        let components = first.components.iter().zip(&self.components).map(|(&a, &b)| cod.compose(b, a)).collect();
        NatTransform { src: first.src.clone(), tgt: self.tgt.clone(), components }
    }
}

/// Constraints for [`for_each_functor`].
#[derive(Default)]
pub struct FunctorSearch<'a> {
    /// Allowed images per object of the domain.
    pub object_candidates: Option<Vec<Vec<Obj>>>,
    /// Allowed `(domain morphism, image)` pairs.
    pub morphism_filter: Option<&'a dyn Fn(Mor, Mor) -> bool>,
    /// Only injective object and morphism maps.
    pub injective: bool,
}

struct Search<'a, 'b> {
    dom: &'a FinCat,
    cod: &'a FinCat,
    spec: &'a FunctorSearch<'b>,
    budget: &'a Budget,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
    used_obj: Vec<bool>,
    used_mor: Vec<bool>,
    // non-identity morphisms whose later endpoint is the key object
    closing_at_object: Vec<Vec<Mor>>,
    order: Vec<Mor>,
    // composable pairs (g, f) to verify once order[k] is assigned
    checks: Vec<Vec<(Mor, Mor, Mor)>>,
}

impl Search<'_, '_> {
    fn allowed(&self, m: Mor, image: Mor) -> bool {
        self.spec.morphism_filter.map_or(true, |f| f(m, image))
    }

    fn assign_objects(&mut self, k: usize, visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool) -> Result<bool> {
        if k == self.dom.num_objects() {
            for o in 0..self.dom.num_objects() {
                let id = self.dom.identity(o);
                let image = self.cod.identity(self.obj_map[o]);
                if !self.allowed(id, image) {
                    return Ok(true);
                }
                self.mor_map[id] = image;
            }
            if self.spec.injective {
                for o in 0..self.dom.num_objects() {
                    self.used_mor[self.cod.identity(self.obj_map[o])] = true;
                }
            }
            let go_on = self.assign_morphisms(0, visit)?;
            if self.spec.injective {
                for o in 0..self.dom.num_objects() {
                    self.used_mor[self.cod.identity(self.obj_map[o])] = false;
                }
            }
            return Ok(go_on);
        }
        let candidates: Vec<Obj> = match &self.spec.object_candidates {
            Some(c) => c[k].clone(),
            None => (0..self.cod.num_objects()).collect(),
        };
        for c in candidates {
            if self.spec.injective && self.used_obj[c] {
                continue;
            }
            self.budget.tick("enumerating functors")?;
            self.obj_map[k] = c;
            let feasible = self.closing_at_object[k].iter().all(|&m| {
                let (a, b) = (self.obj_map[self.dom.src(m)], self.obj_map[self.dom.tgt(m)]);
                self.cod.hom(a, b).iter().any(|&x| self.allowed(m, x))
            });
            if !feasible {
                continue;
            }
            self.used_obj[c] = true;
            let go_on = self.assign_objects(k + 1, visit)?;
            self.used_obj[c] = false;
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn assign_morphisms(&mut self, k: usize, visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool) -> Result<bool> {
        if k == self.order.len() {
            return Ok(visit(&self.obj_map, &self.mor_map));
        }
        let m = self.order[k];
        let (a, b) = (self.obj_map[self.dom.src(m)], self.obj_map[self.dom.tgt(m)]);
        let n_candidates = self.cod.hom(a, b).len();
        for idx in 0..n_candidates {
            let x = self.cod.hom(a, b)[idx];
            if (self.spec.injective && self.used_mor[x]) || !self.allowed(m, x) {
                continue;
            }
            self.budget.tick("enumerating functors")?;
            self.mor_map[m] = x;
            let ok = self.checks[k].iter().all(|&(g, f, gf)| self.cod.compose(self.mor_map[g], self.mor_map[f]) == self.mor_map[gf]);
            if !ok {
                continue;
            }
            self.used_mor[x] = true;
            let go_on = self.assign_morphisms(k + 1, visit)?;
            self.used_mor[x] = false;
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Visits every functor `dom → cod` satisfying `spec`, in canonical order
/// (objects lexicographically, then non-identity morphisms). The visitor
/// returns `false` to stop early.
pub fn for_each_functor(
    dom: &FinCat,
    cod: &FinCat,
    spec: &FunctorSearch<'_>,
    budget: &Budget,
    visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool,
) -> Result<()> {
    let n = dom.num_objects();
    if spec.injective && (n > cod.num_objects() || dom.num_morphisms() > cod.num_morphisms()) {
        return Ok(());
    }
    let order: Vec<Mor> = dom.non_identity_morphisms().collect();
    let mut pos = vec![usize::MAX; dom.num_morphisms()];
    for (k, &m) in order.iter().enumerate() {
        pos[m] = k;
    }
    let mut closing_at_object = vec![Vec::new(); n];
    for &m in &order {
        closing_at_object[dom.src(m).max(dom.tgt(m))].push(m);
    }
    let mut checks = vec![Vec::new(); order.len()];
    for &g in &order {
        for &f in &order {
            if let Some(gf) = dom.try_compose(g, f) {
                let last = pos[g].max(pos[f]).max(if dom.is_identity(gf) { 0 } else { pos[gf] });
                checks[last].push((g, f, gf));
            }
        }
    }
    let mut search = Search {
        dom,
        cod,
        spec,
        budget,
        obj_map: vec![0; n],
        mor_map: vec![0; dom.num_morphisms()],
        used_obj: vec![false; cod.num_objects()],
        used_mor: vec![false; cod.num_morphisms()],
        closing_at_object,
        order,
        checks,
    };
    search.assign_objects(0, visit)?;
    Ok(())
}

/// All functors `dom → cod` in canonical order.
pub fn functors(dom: &CatRef, cod: &CatRef, budget: &Budget) -> Result<Vec<FinFunctor>> {
    let mut out = Vec::new();
    for_each_functor(dom, cod, &FunctorSearch::default(), budget, &mut |o, m| {
        out.push(FinFunctor::new_unchecked(dom.clone(), cod.clone(), o.to_vec(), m.to_vec()));
        true
    })?;
    Ok(out)
}

/// Components of every natural transformation between functors given by
/// raw maps with common domain `dom` and codomain `cod`.
pub(crate) fn for_each_nat_transform(
    dom: &FinCat,
    cod: &FinCat,
    src: (&[Obj], &[Mor]),
    tgt: (&[Obj], &[Mor]),
    budget: &Budget,
    visit: &mut dyn FnMut(&[Mor]) -> bool,
) -> Result<()> {
    let n = dom.num_objects();
    let mut closing = vec![Vec::new(); n];
    for f in dom.non_identity_morphisms() {
        closing[dom.src(f).max(dom.tgt(f))].push(f);
    }
    fn go(
        k: usize,
        dom: &FinCat,
        cod: &FinCat,
        src: (&[Obj], &[Mor]),
        tgt: (&[Obj], &[Mor]),
        closing: &[Vec<Mor>],
        comps: &mut Vec<Mor>,
        budget: &Budget,
        visit: &mut dyn FnMut(&[Mor]) -> bool,
    ) -> Result<bool> {
        if k == dom.num_objects() {
            return Ok(visit(comps));
        }
        for &c in cod.hom(src.0[k], tgt.0[k]) {
            budget.tick("enumerating natural transformations")?;
            comps[k] = c;
            let natural = closing[k].iter().all(|&f| {
                let (a, b) = (dom.src(f), dom.tgt(f));
                cod.compose(tgt.1[f], comps[a]) == cod.compose(comps[b], src.1[f])
            });
            if natural && !go(k + 1, dom, cod, src, tgt, closing, comps, budget, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    let mut comps = vec![0; n];
    go(0, dom, cod, src, tgt, &closing, &mut comps, budget, visit)?;
    Ok(())
}

pub fn nat_transform_components(f: &FinFunctor, g: &FinFunctor, budget: &Budget) -> Result<Vec<Vec<Mor>>> {
    let mut out = Vec::new();
    for_each_nat_transform(&f.dom, &f.cod, (&f.obj_map, &f.mor_map), (&g.obj_map, &g.mor_map), budget, &mut |c| {
        out.push(c.to_vec());
        true
    })?;
    Ok(out)
}

pub fn nat_transforms(f: &FinFunctor, g: &FinFunctor, budget: &Budget) -> Result<Vec<NatTransform>> {
    Ok(nat_transform_components(f, g, budget)?
        .into_iter()
        .map(|components| NatTransform { src: f.clone(), tgt: g.clone(), components })
        .collect())
}

/// Searches for an isomorphism of categories `a → b`.
pub fn find_isomorphism(a: &CatRef, b: &CatRef, budget: &Budget) -> Result<Option<FinFunctor>> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    let profile = |c: &FinCat| {
        let mut p: Vec<(usize, usize, usize)> = (0..c.num_objects())
            .map(|o| {
                let out: usize = (0..c.num_objects()).map(|x| c.hom(o, x).len()).sum();
                let inc: usize = (0..c.num_objects()).map(|x| c.hom(x, o).len()).sum();
                (c.hom(o, o).len(), out, inc)
            })
            .collect();
        p.sort_unstable();
        p
    };
    if profile(a) != profile(b) {
        return Ok(None);
    }
    let mut found = None;
    let spec = FunctorSearch { injective: true, ..Default::default() };
    for_each_functor(a, b, &spec, budget, &mut |o, m| {
        found = Some(FinFunctor::new_unchecked(a.clone(), b.clone(), o.to_vec(), m.to_vec()));
        false
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::product;
    use crate::poset::Poset;

    fn arrow() -> CatRef {
        Arc::new(Poset::chain(1).as_category())
    }

    #[test]
    fn functors_between_arrows() {
        let a = arrow();
        let fs = functors(&a, &a, &Budget::default()).unwrap();
        // monotone self-maps of [1]
        assert_eq!(fs.len(), 3);
        for f in &fs {
            FinFunctor::new(f.dom().clone(), f.cod().clone(), f.obj_map().to_vec(), f.mor_map().to_vec()).unwrap();
        }
    }

    #[test]
    fn composition_of_functors_is_associative() {
        let a = arrow();
        let fs = functors(&a, &a, &Budget::default()).unwrap();
        for f in &fs {
            for g in &fs {
                for h in &fs {
                    assert_eq!(h.after(&g.after(f)), h.after(g).after(f));
                }
            }
        }
    }

    #[test]
    fn square_is_isomorphic_to_its_swap() {
        let a = arrow();
        let sq = product(&a, &a).cat;
        let iso = find_isomorphism(&sq, &sq, &Budget::default()).unwrap().unwrap();
        assert!(iso.is_isomorphism());
        let disc = Arc::new(FinCat::discrete(&["x", "y", "z", "w"]));
        assert!(find_isomorphism(&sq, &disc, &Budget::default()).unwrap().is_none());
    }

    #[test]
    fn nat_transforms_between_constant_functors() {
        let a = arrow();
        let c0 = FinFunctor::constant(&a, &a, 0);
        let c1 = FinFunctor::constant(&a, &a, 1);
        assert_eq!(nat_transforms(&c0, &c1, &Budget::default()).unwrap().len(), 1);
        assert!(nat_transforms(&c1, &c0, &Budget::default()).unwrap().is_empty());
        let id = FinFunctor::identity(&a);
        let t = nat_transforms(&c0, &id, &Budget::default()).unwrap();
        assert_eq!(t.len(), 1);
        NatTransform::new(c0.clone(), id.clone(), t[0].components.clone()).unwrap();
    }

    #[test]
    fn budget_is_enforced() {
        let a = arrow();
        let err = functors(&a, &a, &Budget::new(2)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
