//! Explicit finite categories given by total composition tables.
//!
//! Objects and morphisms are addressed by dense indices ([`Obj`], [`Mor`]);
//! the index order is the canonical order used by every enumeration and
//! every "least" choice in this crate. Categories read from text are sorted
//! by identifier, constructed categories keep their construction order.

mod components;
mod cone;
pub(crate) mod constructions;
mod functor;
mod karoubi;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

pub use components::{connected_components, is_connected};
pub use cone::{colimit, cone_category, cones, find_cone, find_id_cone, for_each_cone, limit, mediating_maps, Cone, ConeCategory};
pub use constructions::{
    add_initial, add_terminal, bicone_collapse, comma_category, fiber_product, join, lax_fiber_product,
    left_comma_fiber, opposite, product, right_comma_fiber, CommaCategory, CommaFiber, CommaSide,
    LaxFiberProduct, Product,
};
pub use functor::{
    find_isomorphism, for_each_functor, functors, nat_transform_components, nat_transforms, FinFunctor,
    FunctorSearch, NatTransform,
};
pub use karoubi::{image_of_projector, is_karoubi_closed, karoubi_closure, projectors, Karoubi, ProjectorImage};

use crate::error::CategoryError;

pub type Obj = usize;
pub type Mor = usize;

pub type CatRef = Arc<FinCat>;

const UNDEFINED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category with a total composition table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Mor>,
    table: Vec<u32>,
    homs: Vec<Vec<Mor>>,
}

/// Unvalidated description of a category as it appears in a `.fc` file.
///
/// Identities are implicit and named `id_<object>`; `composites` holds
/// `(g, f, g∘f)` triples and normally lists only non-identity pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, String, String)>,
    pub composites: Vec<(String, String, String)>,
}

/// Name of the implicit identity morphism of an object.
pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

impl FinCat {
    /// Assembles a category from parts without checking the category laws.
    ///
    /// `compose(g, f)` is only called for composable pairs.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        compose: impl Fn(Mor, Mor) -> Mor,
    ) -> FinCat {
        let n = objects.len();
        let m = morphisms.len();
        let mut homs = vec![Vec::new(); n * n];
        for (k, mor) in morphisms.iter().enumerate() {
            homs[mor.src * n + mor.tgt].push(k);
        }
        let mut table = vec![UNDEFINED; m * m];
        for g in 0..m {
            let src_g = morphisms[g].src;
            for b in 0..n {
                for &f in &homs[b * n + src_g] {
                    table[g * m + f] = compose(g, f) as u32;
                }
            }
        }
        FinCat { objects, morphisms, identity, table, homs }
    }

    pub fn empty() -> FinCat {
        FinCat::from_parts(Vec::new(), Vec::new(), Vec::new(), |_, _| unreachable!())
    }

    /// The one-object one-morphism category.
    pub fn point() -> FinCat {
        FinCat::discrete(&["*"])
    }

    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCat {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(k, o)| Morphism { name: identity_name(o), src: k, tgt: k })
            .collect();
        let identity = (0..objects.len()).collect();
        FinCat::from_parts(objects, morphisms, identity, |g, _| g)
    }

    /// A one-object category from a monoid multiplication table on
    /// `names`, where `names[0]` is the unit.
    pub fn monoid<S: AsRef<str>>(object: &str, names: &[S], mul: impl Fn(usize, usize) -> usize) -> FinCat {
        let morphisms = names
            .iter()
            .map(|s| Morphism { name: s.as_ref().to_string(), src: 0, tgt: 0 })
            .collect();
        FinCat::from_parts(vec![object.to_string()], morphisms, vec![0], mul)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, m: Mor) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphism_name(&self, m: Mor) -> &str {
        &self.morphisms[m].name
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m].tgt
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identity[o]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.morphisms[m].src] == m
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a * self.objects.len() + b]
    }

    /// `g ∘ f`; panics when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        let v = self.table[g * self.morphisms.len() + f];
        assert!(v != UNDEFINED, "{} ∘ {} is not composable", self.morphisms[g].name, self.morphisms[f].name);
        v as Mor
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.morphisms[f].tgt != self.morphisms[g].src {
            return None;
        }
        Some(self.table[g * self.morphisms.len() + f] as Mor)
    }

    /// Composes a path given in diagrammatic order (`path[0]` first).
    pub fn compose_path(&self, start: Obj, path: &[Mor]) -> Mor {
        path.iter().fold(self.identity(start), |acc, &m| self.compose(m, acc))
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).filter(move |&m| !self.is_identity(m))
    }

    pub fn is_isomorphism(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let (a, b) = (self.src(m), self.tgt(m));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&k| self.compose(k, m) == self.identity(a) && self.compose(m, k) == self.identity(b))
    }

    /// True when every hom-set has at most one element and the only
    /// isomorphisms are identities.
    pub fn is_thin_skeletal(&self) -> bool {
        let n = self.num_objects();
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b).len();
                if h > 1 || (a != b && h == 1 && !self.hom(b, a).is_empty()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn terminal_object(&self) -> Option<Obj> {
        let n = self.num_objects();
        (0..n).find(|&t| (0..n).all(|x| self.hom(x, t).len() == 1))
    }

    pub fn initial_object(&self) -> Option<Obj> {
        let n = self.num_objects();
        (0..n).find(|&t| (0..n).all(|x| self.hom(t, x).len() == 1))
    }

    /// Checks identity laws, associativity and closure of the table.
    pub fn check_laws(&self) -> Result<(), CategoryError> {
        let m = self.num_morphisms();
        let name = |k: Mor| self.morphisms[k].name.clone();
        for g in 0..m {
            for f in 0..m {
                if self.morphisms[f].tgt != self.morphisms[g].src {
                    continue;
                }
                let v = self.table[g * m + f];
                if v == UNDEFINED || v as usize >= m {
                    return Err(CategoryError::MissingComposite { g: name(g), f: name(f) });
                }
                let v = v as usize;
                if self.src(v) != self.src(f) || self.tgt(v) != self.tgt(g) {
                    return Err(CategoryError::CompositeEndpoints { g: name(g), f: name(f), result: name(v) });
                }
            }
        }
        for f in 0..m {
            let (a, b) = (self.src(f), self.tgt(f));
            if self.compose(self.identity(b), f) != f {
                return Err(CategoryError::IdentityViolation { identity: name(self.identity(b)), morphism: name(f) });
            }
            if self.compose(f, self.identity(a)) != f {
                return Err(CategoryError::IdentityViolation { identity: name(self.identity(a)), morphism: name(f) });
            }
        }
        if let Some((h, g, f)) = self.first_associativity_failure() {
            return Err(CategoryError::AssociativityViolation { h: name(h), g: name(g), f: name(f) });
        }
        Ok(())
    }

    fn first_associativity_failure(&self) -> Option<(Mor, Mor, Mor)> {
        let n = self.num_objects();
        for f in 0..self.num_morphisms() {
            let b = self.tgt(f);
            for c in 0..n {
                for &g in self.hom(b, c) {
                    let gf = self.compose(g, f);
                    for d in 0..n {
                        for &h in self.hom(c, d) {
                            if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                                return Some((h, g, f));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// The full subcategory on `objs` (kept in the given order) with its inclusion.
    pub fn full_subcategory(self: &Arc<Self>, objs: &[Obj]) -> (CatRef, FinFunctor) {
        let mut obj_pos = vec![usize::MAX; self.num_objects()];
        for (k, &o) in objs.iter().enumerate() {
            obj_pos[o] = k;
        }
        let mut mor_map = Vec::new();
        let mut mor_pos = vec![usize::MAX; self.num_morphisms()];
        for (k, mor) in self.morphisms.iter().enumerate() {
            if obj_pos[mor.src] != usize::MAX && obj_pos[mor.tgt] != usize::MAX {
                mor_pos[k] = mor_map.len();
                mor_map.push(k);
            }
        }
        let objects = objs.iter().map(|&o| self.objects[o].clone()).collect();
        let morphisms = mor_map
            .iter()
            .map(|&k| {
                let mor = &self.morphisms[k];
                Morphism { name: mor.name.clone(), src: obj_pos[mor.src], tgt: obj_pos[mor.tgt] }
            })
            .collect();
        let identity = objs.iter().map(|&o| mor_pos[self.identity(o)]).collect();
        let sub = Arc::new(FinCat::from_parts(objects, morphisms, identity, |g, f| {
            mor_pos[self.compose(mor_map[g], mor_map[f])]
        }));
        let incl = FinFunctor::new_unchecked(sub.clone(), self.clone(), objs.to_vec(), mor_map);
        (sub, incl)
    }

    /// Renames objects and morphisms; `None` keeps the old name.
    pub fn renamed(
        &self,
        object_name: impl Fn(Obj, &str) -> String,
        morphism_name: impl Fn(Mor, &str) -> String,
    ) -> FinCat {
        let mut c = self.clone();
        for (k, o) in c.objects.iter_mut().enumerate() {
            *o = object_name(k, o);
        }
        for (k, mor) in c.morphisms.iter_mut().enumerate() {
            mor.name = morphism_name(k, &mor.name);
        }
        c
    }

    /// Non-identity composites in the form used by the `.fc` format.
    pub fn to_raw(&self) -> RawCategory {
        let mut objects = self.objects.clone();
        objects.sort();
        let mut morphisms: Vec<_> = self
            .non_identity_morphisms()
            .map(|k| {
                let mor = &self.morphisms[k];
                (mor.name.clone(), self.objects[mor.src].clone(), self.objects[mor.tgt].clone())
            })
            .collect();
        morphisms.sort();
        let name = |h: Mor| {
            if self.is_identity(h) {
                identity_name(&self.objects[self.src(h)])
            } else {
                self.morphism_name(h).to_string()
            }
        };
        let mut composites = Vec::new();
        for g in self.non_identity_morphisms() {
            for f in self.non_identity_morphisms() {
                if let Some(h) = self.try_compose(g, f) {
                    composites.push((name(g), name(f), name(h)));
                }
            }
        }
        composites.sort();
        RawCategory { objects, morphisms, composites }
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.iter().map(|m| format!("{}:{}->{}", m.name, self.objects[m.src], self.objects[m.tgt])).collect::<Vec<_>>())
            .finish()
    }
}

/// Validates a raw description, sorting objects and morphisms by identifier.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, CategoryError> {
    let mut objects = raw.objects.clone();
    objects.sort();
    if let Some(w) = objects.windows(2).find(|w| w[0] == w[1]) {
        return Err(CategoryError::DuplicateIdentifier(w[0].clone()));
    }
    let obj_index: HashMap<&str, Obj> = objects.iter().enumerate().map(|(k, o)| (o.as_str(), k)).collect();

    let mut decls: BTreeMap<String, (Obj, Obj, bool)> = BTreeMap::new();
    for (k, o) in objects.iter().enumerate() {
        decls.insert(identity_name(o), (k, k, true));
    }
    for (name, s, t) in &raw.morphisms {
        let lookup = |o: &String| {
            obj_index.get(o.as_str()).copied().ok_or_else(|| CategoryError::DanglingEndpoint { item: format!("morphism {name}"), name: o.clone() })
        };
        let (a, b) = (lookup(s)?, lookup(t)?);
        if decls.insert(name.clone(), (a, b, false)).is_some() {
            return Err(CategoryError::DuplicateIdentifier(name.clone()));
        }
    }
    let morphisms: Vec<Morphism> = decls.iter().map(|(name, &(src, tgt, _))| Morphism { name: name.clone(), src, tgt }).collect();
    let mor_index: HashMap<&str, Mor> = morphisms.iter().enumerate().map(|(k, m)| (m.name.as_str(), k)).collect();
    let identity: Vec<Mor> = objects.iter().map(|o| mor_index[identity_name(o).as_str()]).collect();
    let is_identity = |k: Mor| identity[morphisms[k].src] == k;

    let m = morphisms.len();
    let mut table = vec![UNDEFINED; m * m];
    for f in 0..m {
        table[identity[morphisms[f].tgt] * m + f] = f as u32;
        table[f * m + identity[morphisms[f].src]] = f as u32;
    }
    for (g, f, h) in &raw.composites {
        let lookup = |x: &String| {
            mor_index.get(x.as_str()).copied().ok_or_else(|| CategoryError::DanglingEndpoint { item: format!("composite {g} ∘ {f}"), name: x.clone() })
        };
        let (gi, fi, hi) = (lookup(g)?, lookup(f)?, lookup(h)?);
        if morphisms[fi].tgt != morphisms[gi].src {
            return Err(CategoryError::NotComposable { g: g.clone(), f: f.clone() });
        }
        if morphisms[hi].src != morphisms[fi].src || morphisms[hi].tgt != morphisms[gi].tgt {
            return Err(CategoryError::CompositeEndpoints { g: g.clone(), f: f.clone(), result: h.clone() });
        }
        if is_identity(gi) && hi != fi {
            return Err(CategoryError::IdentityViolation { identity: g.clone(), morphism: f.clone() });
        }
        if is_identity(fi) && hi != gi {
            return Err(CategoryError::IdentityViolation { identity: f.clone(), morphism: g.clone() });
        }
        let cell = &mut table[gi * m + fi];
        if *cell != UNDEFINED && *cell as usize != hi {
            return Err(CategoryError::ConflictingComposite { g: g.clone(), f: f.clone() });
        }
        *cell = hi as u32;
    }
    for g in 0..m {
        for f in 0..m {
            if morphisms[f].tgt == morphisms[g].src && table[g * m + f] == UNDEFINED {
                return Err(CategoryError::MissingComposite { g: morphisms[g].name.clone(), f: morphisms[f].name.clone() });
            }
        }
    }
    let cat = FinCat::from_parts(objects, morphisms, identity, |g, f| table[g * m + f] as Mor);
    cat.check_laws()?;
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(objects: &[&str], morphisms: &[(&str, &str, &str)], composites: &[(&str, &str, &str)]) -> RawCategory {
        let s = |t: &(&str, &str, &str)| (t.0.to_string(), t.1.to_string(), t.2.to_string());
        RawCategory {
            objects: objects.iter().map(|o| o.to_string()).collect(),
            morphisms: morphisms.iter().map(s).collect(),
            composites: composites.iter().map(s).collect(),
        }
    }

    #[test]
    fn projector_category_is_valid() {
        let p = validate_category(&raw(&["x"], &[("p", "x", "x")], &[("p", "p", "p")])).unwrap();
        assert_eq!(p.num_morphisms(), 2);
        let pm = p.morphism_index("p").unwrap();
        assert_eq!(p.compose(pm, pm), pm);
    }

    #[test]
    fn empty_category_is_valid() {
        let c = validate_category(&RawCategory::default()).unwrap();
        assert_eq!(c.num_objects(), 0);
        assert_eq!(c.num_morphisms(), 0);
    }

    #[test]
    fn involution_table_gives_cyclic_group() {
        let z2 = validate_category(&raw(&["x"], &[("p", "x", "x")], &[("p", "p", "id_x")])).unwrap();
        let pm = z2.morphism_index("p").unwrap();
        assert!(z2.is_isomorphism(pm));
        let missing = validate_category(&raw(&["x"], &[("p", "x", "x")], &[]));
        assert_eq!(missing, Err(CategoryError::MissingComposite { g: "p".into(), f: "p".into() }));
    }

    #[test]
    fn reports_each_violation_kind() {
        // (b∘a)∘b = b∘b = a while b∘(a∘b) = b∘a = b
        let bad = raw(
            &["x"],
            &[("a", "x", "x"), ("b", "x", "x")],
            &[("a", "a", "a"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "a")],
        );
        assert!(matches!(validate_category(&bad), Err(CategoryError::AssociativityViolation { .. })));
        let dangling = raw(&["x"], &[("p", "x", "y")], &[]);
        assert!(matches!(validate_category(&dangling), Err(CategoryError::DanglingEndpoint { .. })));
        let ident = raw(&["x"], &[("p", "x", "x")], &[("id_x", "p", "id_x"), ("p", "p", "p")]);
        assert!(matches!(validate_category(&ident), Err(CategoryError::IdentityViolation { .. })));
        let dup = raw(&["x", "x"], &[], &[]);
        assert!(matches!(validate_category(&dup), Err(CategoryError::DuplicateIdentifier(_))));
        let ends = raw(&["x", "y"], &[("f", "x", "y"), ("g", "y", "x")], &[("g", "f", "f")]);
        assert!(matches!(validate_category(&ends), Err(CategoryError::CompositeEndpoints { .. })));
        let noncomp = raw(&["x", "y"], &[("f", "x", "y")], &[("f", "f", "f")]);
        assert!(matches!(validate_category(&noncomp), Err(CategoryError::NotComposable { .. })));
    }

    #[test]
    fn raw_round_trip_is_stable() {
        let c = validate_category(&raw(&["b", "a"], &[("f", "a", "b"), ("e", "b", "b")], &[("e", "f", "f"), ("e", "e", "e")])).unwrap();
        let again = validate_category(&c.to_raw()).unwrap();
        assert_eq!(c, again);
        assert_eq!(c.objects(), &["a".to_string(), "b".to_string()]);
    }
}
