use std::sync::Arc;

use super::constructions::assemble;
use super::{CatRef, FinCat, FinFunctor, Mor, Obj};

/// All idempotent endomorphisms `(carrier, p)` in morphism order.
pub fn projectors(c: &FinCat) -> Vec<(Obj, Mor)> {
    (0..c.num_morphisms())
        .filter(|&m| c.src(m) == c.tgt(m) && c.compose(m, m) == m)
        .map(|m| (c.src(m), m))
        .collect()
}

/// A splitting `p = section ∘ retraction`, `retraction ∘ section = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorImage {
    pub object: Obj,
    pub retraction: Mor,
    pub section: Mor,
}

pub fn image_of_projector(c: &FinCat, p: Mor) -> Option<ProjectorImage> {
    let carrier = c.src(p);
    for d in 0..c.num_objects() {
        for &r in c.hom(carrier, d) {
            for &s in c.hom(d, carrier) {
                if c.compose(s, r) == p && c.compose(r, s) == c.identity(d) {
                    return Some(ProjectorImage { object: d, retraction: r, section: s });
                }
            }
        }
    }
    None
}

pub fn is_karoubi_closed(c: &FinCat) -> bool {
    projectors(c).into_iter().all(|(_, p)| image_of_projector(c, p).is_some())
}

/// The Karoubi closure `P(C)` with the full embedding `ε: C → P(C)`.
pub struct Karoubi {
    pub cat: CatRef,
    pub epsilon: FinFunctor,
    /// `⟨c, p⟩` per object of `P(C)`.
    pub projectors: Vec<(Obj, Mor)>,
}

impl Karoubi {
    pub fn object_of(&self, carrier: Obj, p: Mor) -> Option<Obj> {
        self.projectors.iter().position(|&x| x == (carrier, p))
    }
}

pub fn karoubi_closure(c: &CatRef) -> Karoubi {
    let projs = projectors(c);
    let objects: Vec<String> =
        projs.iter().map(|&(o, p)| format!("⟨{},{}⟩", c.object_name(o), c.morphism_name(p))).collect();
    let mut arrows = Vec::new();
    for (s, &(a, p)) in projs.iter().enumerate() {
        for (t, &(b, q)) in projs.iter().enumerate() {
            for &f in c.hom(a, b) {
                if c.compose(q, f) == f && c.compose(f, p) == f {
                    arrows.push((s, t, f, format!("{}[{}->{}]", c.morphism_name(f), objects[s], objects[t])));
                }
            }
        }
    }
    let (cat, keys) = assemble(objects, arrows, |o| projs[o].1, |g, f| c.compose(*g, *f));
    let cat = Arc::new(cat);
    let obj_map: Vec<Obj> =
        (0..c.num_objects()).map(|o| projs.iter().position(|&x| x == (o, c.identity(o))).unwrap()).collect();
    let mor_map = (0..c.num_morphisms())
        .map(|f| {
            let (s, t) = (obj_map[c.src(f)], obj_map[c.tgt(f)]);
            *cat.hom(s, t).iter().find(|&&m| keys[m] == f).unwrap()
        })
        .collect();
    let epsilon = FinFunctor::new_unchecked(c.clone(), cat.clone(), obj_map, mor_map);
    Karoubi { cat, epsilon, projectors: projs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    #[test]
    fn karoubi_closure_of_projector_category() {
        let k = karoubi_closure(&projector());
        assert_eq!(k.cat.num_objects(), 2);
        assert_eq!(k.cat.num_morphisms(), 5);
        k.cat.check_laws().unwrap();
        let xp = k.object_of(0, 1).unwrap();
        assert_eq!(k.cat.initial_object(), Some(xp));
        assert_eq!(k.cat.terminal_object(), Some(xp));
        assert!(k.epsilon.is_fully_faithful());
        assert!(is_karoubi_closed(&k.cat));
        assert!(!is_karoubi_closed(&projector()));
    }

    #[test]
    fn posets_are_karoubi_closed() {
        let c = Arc::new(Poset::chain(2).as_category());
        let k = karoubi_closure(&c);
        assert_eq!(k.cat.num_objects(), 3);
        assert!(k.epsilon.is_isomorphism());
    }

    #[test]
    fn split_projector_has_image() {
        let k = karoubi_closure(&projector());
        let xid = k.object_of(0, 0).unwrap();
        let p_in_k = k.epsilon.mor(1);
        let img = image_of_projector(&k.cat, p_in_k).unwrap();
        assert_ne!(img.object, xid);
    }
}
