//! Finite-set-valued functors, categories of elements, and their limits
//! and colimits.

mod kan;

use std::collections::HashSet;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::budget::Budget;
use crate::category::constructions::assemble;
use crate::category::{opposite, CatRef, FinCat, FinFunctor, Mor, Obj};
use crate::error::{Error, Result};

pub use kan::{
    check_cofinal, check_final, check_kan_adjunction, check_localization_sample, check_yoneda_square,
    cofinal_iff_iso_check, elements_kan_check, elements_map, kan_left, kan_right, pullback_map,
    yoneda_colimit_decomposition,
    AdjunctionReport, CofinalIsoReport, CofinalityReport, ElementsKanReport, LeftKan, LocalizationReport, RightKan,
    YonedaDecomposition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }
}

/// A functor `I → Sets` or `I^o → Sets` with finite values.
///
/// `act[f]` is the function `X(from f) → X(to f)` where `from`/`to` are
/// source/target for covariant functors and swapped for presheaves.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFunctor {
    base: CatRef,
    variance: Variance,
    labels: Vec<Vec<String>>,
    act: Vec<Vec<usize>>,
}

impl std::fmt::Debug for SetFunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SetFunctor")
            .field("variance", &self.variance)
            .field("labels", &self.labels)
            .field("act", &self.act)
            .finish()
    }
}

impl SetFunctor {
    pub fn new(base: CatRef, variance: Variance, labels: Vec<Vec<String>>, act: Vec<Vec<usize>>) -> Result<SetFunctor> {
        let x = SetFunctor { base, variance, labels, act };
        x.validate()?;
        Ok(x)
    }

    pub fn new_unchecked(base: CatRef, variance: Variance, labels: Vec<Vec<String>>, act: Vec<Vec<usize>>) -> SetFunctor {
        SetFunctor { base, variance, labels, act }
    }

    pub(crate) fn act_mut(&mut self) -> &mut Vec<Vec<usize>> {
        &mut self.act
    }

    /// Atoms named `0, 1, …`.
    pub fn from_sizes(base: CatRef, variance: Variance, sizes: &[usize], act: Vec<Vec<usize>>) -> Result<SetFunctor> {
        let labels = sizes.iter().map(|&n| (0..n).map(|k| k.to_string()).collect()).collect();
        SetFunctor::new(base, variance, labels, act)
    }

    fn validate(&self) -> Result<()> {
        let c = &self.base;
        let err = |msg: String| Err(Error::SetFunctor(msg));
        if self.labels.len() != c.num_objects() {
            return err(format!("expected {} sets, got {}", c.num_objects(), self.labels.len()));
        }
        for (o, set) in self.labels.iter().enumerate() {
            let distinct: HashSet<&String> = set.iter().collect();
            if distinct.len() != set.len() {
                return err(format!("duplicate atom in the set at {}", c.object_name(o)));
            }
        }
        if self.act.len() != c.num_morphisms() {
            return err(format!("expected {} maps, got {}", c.num_morphisms(), self.act.len()));
        }
        for f in 0..c.num_morphisms() {
            let (a, b) = (self.from(f), self.to(f));
            if self.act[f].len() != self.size(a) || self.act[f].iter().any(|&y| y >= self.size(b)) {
                return err(format!(
                    "map of {} must send {} to {}",
                    c.morphism_name(f),
                    c.object_name(a),
                    c.object_name(b)
                ));
            }
        }
        for o in 0..c.num_objects() {
            let id = c.identity(o);
            if self.act[id].iter().enumerate().any(|(x, &y)| x != y) {
                return err(format!("{} does not act as the identity", c.morphism_name(id)));
            }
        }
        for g in 0..c.num_morphisms() {
            for f in 0..c.num_morphisms() {
                let Some(gf) = c.try_compose(g, f) else { continue };
                let (first, second) = match self.variance {
                    Variance::Covariant => (f, g),
                    Variance::Contravariant => (g, f),
                };
                let ok = (0..self.size(self.from(first))).all(|x| self.act[second][self.act[first][x]] == self.act[gf][x]);
                if !ok {
                    return err(format!(
                        "the maps of {} and {} do not compose to that of {}",
                        c.morphism_name(g),
                        c.morphism_name(f),
                        c.morphism_name(gf)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &CatRef {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn size(&self, o: Obj) -> usize {
        self.labels[o].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total_size(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, o: Obj) -> &[String] {
        &self.labels[o]
    }

    pub fn label(&self, o: Obj, x: usize) -> &str {
        &self.labels[o][x]
    }

    pub fn atom_index(&self, o: Obj, label: &str) -> Option<usize> {
        self.labels[o].iter().position(|l| l == label)
    }

    pub fn act(&self, f: Mor) -> &[usize] {
        &self.act[f]
    }

    pub fn apply(&self, f: Mor, x: usize) -> usize {
        self.act[f][x]
    }

    /// Object whose set `act(f)` reads from.
    pub fn from(&self, f: Mor) -> Obj {
        match self.variance {
            Variance::Covariant => self.base.src(f),
            Variance::Contravariant => self.base.tgt(f),
        }
    }

    pub fn to(&self, f: Mor) -> Obj {
        match self.variance {
            Variance::Covariant => self.base.tgt(f),
            Variance::Contravariant => self.base.src(f),
        }
    }

    /// The terminal functor `pt`.
    pub fn point(base: &CatRef, variance: Variance) -> SetFunctor {
        SetFunctor::constant(base, variance, &["*"])
    }

    pub fn constant<S: AsRef<str>>(base: &CatRef, variance: Variance, atoms: &[S]) -> SetFunctor {
        let labels = vec![atoms.iter().map(|s| s.as_ref().to_string()).collect(); base.num_objects()];
        let act = vec![(0..atoms.len()).collect(); base.num_morphisms()];
        SetFunctor { base: base.clone(), variance, labels, act }
    }

    /// The same data viewed on the opposite base, with flipped variance.
    pub fn on_opposite(&self, base_op: &CatRef) -> SetFunctor {
        SetFunctor { base: base_op.clone(), variance: self.variance.flip(), labels: self.labels.clone(), act: self.act.clone() }
    }

    pub fn to_opposite(&self) -> SetFunctor {
        self.on_opposite(&Arc::new(opposite(&self.base)))
    }

    /// Precomposition `γ^* Y = Y ∘ γ`.
    pub fn pullback(&self, gamma: &FinFunctor) -> Result<SetFunctor> {
        if **gamma.cod() != *self.base {
            return Err(Error::SetFunctor("pullback along a functor with a different codomain".into()));
        }
        let dom = gamma.dom();
        let labels = (0..dom.num_objects()).map(|o| self.labels[gamma.ob(o)].clone()).collect();
        let act = (0..dom.num_morphisms()).map(|f| self.act[gamma.mor(f)].clone()).collect();
        Ok(SetFunctor { base: dom.clone(), variance: self.variance, labels, act })
    }

    /// Same data with atoms renamed `0, 1, …`.
    pub fn with_numeric_labels(&self) -> SetFunctor {
        let labels = self.labels.iter().map(|s| (0..s.len()).map(|k| k.to_string()).collect()).collect();
        SetFunctor { labels, ..self.clone() }
    }
}

fn hom_positions(c: &FinCat) -> Vec<usize> {
    let mut pos = vec![0; c.num_morphisms()];
    for a in 0..c.num_objects() {
        for b in 0..c.num_objects() {
            for (k, &m) in c.hom(a, b).iter().enumerate() {
                pos[m] = k;
            }
        }
    }
    pos
}

/// The presheaf `Y(o) = Hom(−, o)`.
pub fn representable(c: &CatRef, o: Obj) -> SetFunctor {
    let pos = hom_positions(c);
    let labels = (0..c.num_objects())
        .map(|a| c.hom(a, o).iter().map(|&h| c.morphism_name(h).to_string()).collect())
        .collect();
    let act = (0..c.num_morphisms())
        .map(|f| c.hom(c.tgt(f), o).iter().map(|&h| pos[c.compose(h, f)]).collect())
        .collect();
    SetFunctor { base: c.clone(), variance: Variance::Contravariant, labels, act }
}

/// The covariant functor `Hom(o, −)`.
pub fn corepresentable(c: &CatRef, o: Obj) -> SetFunctor {
    let pos = hom_positions(c);
    let labels = (0..c.num_objects())
        .map(|a| c.hom(o, a).iter().map(|&h| c.morphism_name(h).to_string()).collect())
        .collect();
    let act = (0..c.num_morphisms())
        .map(|f| c.hom(o, c.src(f)).iter().map(|&h| pos[c.compose(f, h)]).collect())
        .collect();
    SetFunctor { base: c.clone(), variance: Variance::Covariant, labels, act }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `IX` for a presheaf: `f: ⟨i,x⟩ → ⟨i′,x′⟩` with `X(f)(x′) = x`.
    Presheaf,
    /// `I^⊥X` for a covariant functor: `X(f)(x) = x′`.
    Covariant,
}

/// A category of elements with its projection to the base.
#[derive(Clone, Debug)]
pub struct ElementsCat {
    pub cat: CatRef,
    pub proj: FinFunctor,
    /// `⟨i, x⟩` per object, ordered by `i` then `x`.
    pub points: Vec<(Obj, usize)>,
}

impl ElementsCat {
    pub fn point_index(&self, i: Obj, x: usize) -> Option<Obj> {
        self.points.iter().position(|&p| p == (i, x))
    }
}

pub fn elements(x: &SetFunctor, flavor: Flavor) -> Result<ElementsCat> {
    let expected = match flavor {
        Flavor::Presheaf => Variance::Contravariant,
        Flavor::Covariant => Variance::Covariant,
    };
    if x.variance != expected {
        return Err(Error::VarianceMismatch(format!("{flavor:?} elements need a {expected:?} functor")));
    }
    Ok(elements_of(x))
}

/// Elements in the flavour matching the variance of `x`.
pub fn elements_of(x: &SetFunctor) -> ElementsCat {
    let c = &x.base;
    let points: Vec<(Obj, usize)> =
        (0..c.num_objects()).flat_map(|i| (0..x.size(i)).map(move |a| (i, a))).collect();
    let objects: Vec<String> =
        points.iter().map(|&(i, a)| format!("⟨{},{}⟩", c.object_name(i), x.label(i, a))).collect();
    let mut arrows = Vec::new();
    for (s, &(i, a)) in points.iter().enumerate() {
        for (t, &(j, b)) in points.iter().enumerate() {
            for &f in c.hom(i, j) {
                let ok = match x.variance {
                    Variance::Contravariant => x.act[f][b] == a,
                    Variance::Covariant => x.act[f][a] == b,
                };
                if ok {
                    arrows.push((s, t, f, format!("{}[{}->{}]", c.morphism_name(f), objects[s], objects[t])));
                }
            }
        }
    }
    let (cat, keys) = assemble(objects, arrows, |o| c.identity(points[o].0), |g, f| c.compose(*g, *f));
    let cat = Arc::new(cat);
    let proj = FinFunctor::new_unchecked(cat.clone(), c.clone(), points.iter().map(|p| p.0).collect(), keys);
    ElementsCat { cat, proj, points }
}

/// `colim X` as the connected components of the elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetColimit {
    /// Members of each class; classes ordered by least member.
    pub classes: Vec<Vec<(Obj, usize)>>,
    /// Class of each atom, per object.
    pub class_of: Vec<Vec<usize>>,
}

impl SetColimit {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn colim_set(x: &SetFunctor) -> SetColimit {
    let c = &x.base;
    let mut offset = vec![0; c.num_objects() + 1];
    for o in 0..c.num_objects() {
        offset[o + 1] = offset[o] + x.size(o);
    }
    let total = offset[c.num_objects()];
    let mut uf = UnionFind::<usize>::new(total);
    for f in 0..c.num_morphisms() {
        let (a, b) = (x.from(f), x.to(f));
        for (atom, &image) in x.act[f].iter().enumerate() {
            uf.union(offset[a] + atom, offset[b] + image);
        }
    }
    let mut root_class = vec![usize::MAX; total];
    let mut classes: Vec<Vec<(Obj, usize)>> = Vec::new();
    let mut class_of = vec![Vec::new(); c.num_objects()];
    for o in 0..c.num_objects() {
        for atom in 0..x.size(o) {
            let r = uf.find(offset[o] + atom);
            if root_class[r] == usize::MAX {
                root_class[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[root_class[r]].push((o, atom));
            class_of[o].push(root_class[r]);
        }
    }
    SetColimit { classes, class_of }
}

/// Visits the sections of `x`: one atom per object, compatible with
/// every map.
pub fn for_each_section(x: &SetFunctor, budget: &Budget, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<()> {
    let c = &x.base;
    let n = c.num_objects();
    let mut closing = vec![Vec::new(); n];
    for f in 0..c.num_morphisms() {
        let (a, b) = (x.from(f), x.to(f));
        closing[a.max(b)].push(f);
    }
    let mut section = vec![0usize; n];
    fn go(
        k: usize,
        x: &SetFunctor,
        closing: &[Vec<Mor>],
        section: &mut Vec<usize>,
        budget: &Budget,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        if k == section.len() {
            return Ok(visit(section));
        }
        for atom in 0..x.size(k) {
            budget.tick("enumerating sections")?;
            section[k] = atom;
            if closing[k].iter().all(|&f| x.act[f][section[x.from(f)]] == section[x.to(f)])
                && !go(k + 1, x, closing, section, budget, visit)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
    go(0, x, &closing, &mut section, budget, visit)?;
    Ok(())
}

/// `lim X` as the set of sections, in lexicographic order.
pub fn lim_set(x: &SetFunctor, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_section(x, budget, &mut |s| {
        out.push(s.to_vec());
        true
    })?;
    Ok(out)
}

/// A natural map between parallel set functors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetNatMap {
    pub components: Vec<Vec<usize>>,
}

impl SetNatMap {
    pub fn new(x: &SetFunctor, y: &SetFunctor, components: Vec<Vec<usize>>) -> Result<SetNatMap> {
        let a = SetNatMap { components };
        if !a.is_natural(x, y) {
            return Err(Error::SetFunctor("components do not form a natural map".into()));
        }
        Ok(a)
    }

    pub fn identity(x: &SetFunctor) -> SetNatMap {
        SetNatMap { components: x.sizes().into_iter().map(|n| (0..n).collect()).collect() }
    }

    pub fn is_natural(&self, x: &SetFunctor, y: &SetFunctor) -> bool {
        let c = &x.base;
        if self.components.len() != c.num_objects() || x.variance != y.variance {
            return false;
        }
        for o in 0..c.num_objects() {
            if self.components[o].len() != x.size(o) || self.components[o].iter().any(|&v| v >= y.size(o)) {
                return false;
            }
        }
        (0..c.num_morphisms()).all(|f| {
            let (a, b) = (x.from(f), x.to(f));
            (0..x.size(a)).all(|atom| self.components[b][x.act[f][atom]] == y.act[f][self.components[a][atom]])
        })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SetNatMap) -> SetNatMap {
        let components = first
            .components
            .iter()
            .zip(&self.components)
            .map(|(f, g)| f.iter().map(|&v| g[v]).collect())
            .collect();
        SetNatMap { components }
    }

    pub fn is_iso(&self, x: &SetFunctor, y: &SetFunctor) -> bool {
        (0..self.components.len()).all(|o| {
            x.size(o) == y.size(o) && {
                let image: HashSet<usize> = self.components[o].iter().copied().collect();
                image.len() == y.size(o)
            }
        })
    }

    pub fn inverse(&self, y: &SetFunctor) -> SetNatMap {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(o, comp)| {
                let mut inv = vec![0; y.size(o)];
                for (a, &b) in comp.iter().enumerate() {
                    inv[b] = a;
                }
                inv
            })
            .collect();
        SetNatMap { components }
    }
}

/// Visits every natural map `x → y`, assigning atoms one at a time.
pub fn for_each_nat_map(
    x: &SetFunctor,
    y: &SetFunctor,
    budget: &Budget,
    visit: &mut dyn FnMut(&SetNatMap) -> bool,
) -> Result<()> {
    if x.variance != y.variance || x.base != y.base {
        return Err(Error::VarianceMismatch("natural maps need parallel functors".into()));
    }
    let c = &x.base;
    let n = c.num_objects();
    let mut vars = Vec::new();
    let mut var_of = vec![Vec::new(); n];
    for o in 0..n {
        for a in 0..x.size(o) {
            var_of[o].push(vars.len());
            vars.push((o, a));
        }
    }
    // (from object, atom, to object, f) checked once both ends are assigned
    let mut checks: Vec<Vec<(usize, usize, Mor)>> = vec![Vec::new(); vars.len()];
    for f in 0..c.num_morphisms() {
        let (a, b) = (x.from(f), x.to(f));
        for atom in 0..x.size(a) {
            let u = var_of[a][atom];
            let w = var_of[b][x.act[f][atom]];
            checks[u.max(w)].push((u, w, f));
        }
    }
    let mut value = vec![0usize; vars.len()];
    fn go(
        k: usize,
        vars: &[(Obj, usize)],
        checks: &[Vec<(usize, usize, Mor)>],
        value: &mut Vec<usize>,
        var_of: &[Vec<usize>],
        y: &SetFunctor,
        budget: &Budget,
        visit: &mut dyn FnMut(&SetNatMap) -> bool,
    ) -> Result<bool> {
        if k == vars.len() {
            let components = var_of.iter().map(|vs| vs.iter().map(|&v| value[v]).collect()).collect();
            return Ok(visit(&SetNatMap { components }));
        }
        let o = vars[k].0;
        for v in 0..y.size(o) {
            budget.tick("enumerating natural maps")?;
            value[k] = v;
            if checks[k].iter().all(|&(u, w, f)| value[w] == y.act[f][value[u]])
                && !go(k + 1, vars, checks, value, var_of, y, budget, visit)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
    go(0, &vars, &checks, &mut value, &var_of, y, budget, visit)?;
    Ok(())
}

pub fn hom_presheaves(x: &SetFunctor, y: &SetFunctor, budget: &Budget) -> Result<Vec<SetNatMap>> {
    let mut out = Vec::new();
    for_each_nat_map(x, y, budget, &mut |a| {
        out.push(a.clone());
        true
    })?;
    Ok(out)
}

/// An isomorphism `x ≅ y`, if any.
pub fn find_set_iso(x: &SetFunctor, y: &SetFunctor, budget: &Budget) -> Result<Option<SetNatMap>> {
    if x.sizes() != y.sizes() {
        return Ok(None);
    }
    let mut found = None;
    for_each_nat_map(x, y, budget, &mut |a| {
        if a.is_iso(x, y) {
            found = Some(a.clone());
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

/// The Yoneda bijection `Hom(Y(o), X) → X(o)`, `a ↦ a_o(id_o)`, checked
/// against its inverse `x ↦ (h ↦ X(h)(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YonedaCheck {
    pub maps: usize,
    pub atoms: usize,
    pub bijective: bool,
}

pub fn yoneda_lemma_check(x: &SetFunctor, o: Obj, budget: &Budget) -> Result<YonedaCheck> {
    if x.variance != Variance::Contravariant {
        return Err(Error::VarianceMismatch("the Yoneda lemma is stated for presheaves".into()));
    }
    let c = x.base.clone();
    let y = representable(&c, o);
    let maps = hom_presheaves(&y, x, budget)?;
    let id_pos = c.hom(o, o).iter().position(|&m| m == c.identity(o)).unwrap();
    let mut bijective = maps.len() == x.size(o);
    let mut seen = vec![false; x.size(o)];
    for a in &maps {
        let atom = a.components[o][id_pos];
        bijective &= !seen[atom];
        seen[atom] = true;
        let expected: Vec<Vec<usize>> =
            (0..c.num_objects()).map(|b| c.hom(b, o).iter().map(|&h| x.act[h][atom]).collect()).collect();
        bijective &= expected == a.components;
    }
    Ok(YonedaCheck { maps: maps.len(), atoms: x.size(o), bijective })
}

/// The full subcategory of presheaves on the given objects, with all
/// natural maps as morphisms.
pub struct PresheafCategory {
    pub cat: CatRef,
    pub maps: Vec<SetNatMap>,
}

pub fn presheaf_category(objects: &[(String, SetFunctor)], budget: &Budget) -> Result<PresheafCategory> {
    let mut arrows = Vec::new();
    for (s, (sn, x)) in objects.iter().enumerate() {
        for (t, (tn, y)) in objects.iter().enumerate() {
            let mut k = 0;
            for_each_nat_map(x, y, budget, &mut |a| {
                let name = if s == t && *a == SetNatMap::identity(x) {
                    crate::category::identity_name(sn)
                } else {
                    format!("{sn}->{tn}#{k}")
                };
                k += 1;
                arrows.push((s, t, a.clone(), name));
                true
            })?;
        }
    }
    let names = objects.iter().map(|(n, _)| n.clone()).collect();
    let (cat, maps) = assemble(names, arrows, |o| SetNatMap::identity(&objects[o].1), |g, f| g.after(f));
    Ok(PresheafCategory { cat: Arc::new(cat), maps })
}

/// Representables with the Yoneda embedding into their presheaf category.
pub fn yoneda(c: &CatRef, budget: &Budget) -> Result<(PresheafCategory, FinFunctor)> {
    let reps: Vec<(String, SetFunctor)> =
        (0..c.num_objects()).map(|o| (format!("Y({})", c.object_name(o)), representable(c, o))).collect();
    let pc = presheaf_category(&reps, budget)?;
    let pos = hom_positions(c);
    let mut mor_map = Vec::with_capacity(c.num_morphisms());
    for f in 0..c.num_morphisms() {
        let (a, b) = (c.src(f), c.tgt(f));
        let components: Vec<Vec<usize>> =
            (0..c.num_objects()).map(|d| c.hom(d, a).iter().map(|&h| pos[c.compose(f, h)]).collect()).collect();
        let m = pc
            .cat
            .hom(a, b)
            .iter()
            .copied()
            .find(|&m| pc.maps[m].components == components)
            .expect("post-composition is natural");
        mor_map.push(m);
    }
    let embedding = FinFunctor::new_unchecked(c.clone(), pc.cat.clone(), (0..c.num_objects()).collect(), mor_map);
    Ok((pc, embedding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{connected_components, product};
    use crate::poset::Poset;

    fn arrow() -> CatRef {
        Poset::chain(1).as_category_ref()
    }

    pub(crate) fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    #[test]
    fn representable_elements_have_terminal_object() {
        let c = arrow();
        let y1 = representable(&c, 1);
        let el = elements(&y1, Flavor::Presheaf).unwrap();
        assert_eq!(el.cat.num_objects(), 2);
        let t = el.cat.terminal_object().unwrap();
        assert_eq!(el.points[t], (1, 0));
        assert_eq!(colim_set(&y1).len(), 1);
        assert!(elements(&y1, Flavor::Covariant).is_err());
    }

    #[test]
    fn constant_point_elements_is_the_base() {
        let c = Poset::chain(2).as_category_ref();
        let el = elements(&SetFunctor::point(&c, Variance::Contravariant), Flavor::Presheaf).unwrap();
        assert!(el.proj.is_isomorphism());
    }

    #[test]
    fn hom_pairing_elements_is_twisted_arrows() {
        let c = arrow();
        let cop = Arc::new(opposite(&c));
        let pair = product(&c, &cop);
        // Hom(i', i) as a covariant functor of (i, i') on I × I^o
        let pc = &pair.cat;
        let labels: Vec<Vec<String>> = (0..pc.num_objects())
            .map(|o| {
                let (i, ip) = (o / 2, o % 2);
                c.hom(ip, i).iter().map(|&h| c.morphism_name(h).to_string()).collect()
            })
            .collect();
        let act = (0..pc.num_morphisms())
            .map(|m| {
                let (f, g) = (pair.p0.mor(m), pair.p1.mor(m));
                let (s, sp) = (pc.src(m) / 2, pc.src(m) % 2);
                c.hom(sp, s)
                    .iter()
                    .map(|&h| {
                        let r = c.compose(f, c.compose(h, g));
                        c.hom(c.src(r), c.tgt(r)).iter().position(|&x| x == r).unwrap()
                    })
                    .collect()
            })
            .collect();
        let x = SetFunctor::new(pc.clone(), Variance::Covariant, labels, act).unwrap();
        let el = elements(&x, Flavor::Covariant).unwrap();
        assert_eq!(el.cat.num_objects(), 3);
        assert_eq!(el.cat.non_identity_morphisms().count(), 2);
    }

    #[test]
    fn colimit_of_collapsing_projector_functor() {
        let p = projector();
        let x = SetFunctor::from_sizes(p, Variance::Covariant, &[2], vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(colim_set(&x).len(), 1);
        assert_eq!(lim_set(&x, &Budget::default()).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn limit_over_discrete_is_product() {
        let d = Arc::new(FinCat::discrete(&["a", "b"]));
        let x = SetFunctor::from_sizes(d, Variance::Contravariant, &[2, 3], vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(lim_set(&x, &Budget::default()).unwrap().len(), 6);
        assert_eq!(colim_set(&x).len(), 5);
    }

    #[test]
    fn invalid_functor_is_rejected() {
        let p = projector();
        // p ∘ p = p needs act(p) idempotent
        let bad = SetFunctor::from_sizes(p, Variance::Covariant, &[2], vec![vec![0, 1], vec![1, 0]]);
        assert!(matches!(bad, Err(Error::SetFunctor(_))));
    }

    #[test]
    fn yoneda_hom_counts() {
        let c = arrow();
        let b = Budget::default();
        assert_eq!(hom_presheaves(&representable(&c, 0), &representable(&c, 1), &b).unwrap().len(), 1);
        assert_eq!(hom_presheaves(&representable(&c, 1), &representable(&c, 0), &b).unwrap().len(), 0);
        let p = projector();
        let y = representable(&p, 0);
        let homs = hom_presheaves(&y, &y, &b).unwrap();
        assert_eq!(homs.len(), 2);
        assert!(homs.contains(&SetNatMap::identity(&y)));
    }

    #[test]
    fn yoneda_lemma_holds_on_examples() {
        let p = projector();
        let x = SetFunctor::from_sizes(p.clone(), Variance::Contravariant, &[3], vec![vec![0, 1, 2], vec![0, 0, 2]]).unwrap();
        let check = yoneda_lemma_check(&x, 0, &Budget::default()).unwrap();
        assert!(check.bijective);
        assert_eq!(check.maps, 3);
        let (pc, emb) = yoneda(&p, &Budget::default()).unwrap();
        assert!(emb.is_fully_faithful());
        pc.cat.check_laws().unwrap();
    }

    #[test]
    fn elements_components_match_colimit() {
        let c = Arc::new(FinCat::discrete(&["a", "b"]));
        let x = SetFunctor::constant(&c, Variance::Contravariant, &["u", "v"]);
        let el = elements_of(&x);
        assert_eq!(connected_components(&el.cat).len(), colim_set(&x).len());
    }
}
