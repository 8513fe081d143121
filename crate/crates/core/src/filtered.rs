//! Filteredness of finite categories and the checks built on it:
//! bounded cone search over dimension ≤ 1 shapes, cofinal subcategories,
//! functor categories, and commutation of filtered colimits with finite
//! limits.


use petgraph::unionfind::UnionFind;
use std::sync::Arc;

use crate::budget::Budget;
use crate::category::constructions::assemble;
use crate::category::{
    find_id_cone, for_each_functor, functors, karoubi_closure, nat_transform_components, product, CatRef,
    Cone, FinFunctor, FunctorSearch, Mor, Obj,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::presheaf::{
    check_cofinal, colim_set, elements, hom_presheaves, kan_left, Flavor, SetFunctor, SetNatMap, Variance,
};

pub use crate::category::find_cone;

/// Both exact criteria for a finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterReport {
    /// A cone over the identity exists.
    pub exact_filtered: bool,
    /// The Karoubi closure has a terminal object.
    pub karoubi_terminal: bool,
    pub witness: Option<Cone>,
}

impl FilterReport {
    pub fn agree(&self) -> bool {
        self.exact_filtered == self.karoubi_terminal
    }
}

pub fn filter_report(c: &CatRef, budget: &Budget) -> Result<FilterReport> {
    let witness = find_id_cone(c, budget)?;
    let karoubi_terminal = karoubi_closure(c).cat.terminal_object().is_some();
    Ok(FilterReport { exact_filtered: witness.is_some(), karoubi_terminal, witness })
}

/// A finite category is filtered iff the identity functor admits a cone.
pub fn is_filtered_exact(c: &CatRef, budget: &Budget) -> Result<bool> {
    Ok(find_id_cone(c, budget)?.is_some())
}

/// Result of a cone sweep over diagram shapes.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub holds: bool,
    pub shapes: usize,
    pub diagrams: usize,
    /// A shape and a diagram of that shape without a cone.
    pub witness: Option<(Poset, FinFunctor)>,
}

/// Posets of dimension at most 1 with fewer than `n` elements, up to
/// isomorphism.
pub fn dim1_shapes(n: usize) -> Vec<Poset> {
    corpus::posets(n.saturating_sub(1)).into_iter().filter(|p| p.dimension() <= 1).collect()
}

/// Every functor into `c` from a dimension ≤ 1 poset with fewer than `n`
/// elements admits a cone.
pub fn is_filtered_at_level(c: &CatRef, n: usize, budget: &Budget) -> Result<LevelReport> {
    let mut report = LevelReport { holds: true, shapes: 0, diagrams: 0, witness: None };
    for shape in dim1_shapes(n) {
        report.shapes += 1;
        let j = shape.as_category_ref();
        let mut failure = None;
        let mut err = None;
        for_each_functor(&j, c, &FunctorSearch::default(), budget, &mut |objs, mors| {
            report.diagrams += 1;
            let e = FinFunctor::new_unchecked(j.clone(), c.clone(), objs.to_vec(), mors.to_vec());
            match find_cone(&e, budget) {
                Ok(Some(_)) => true,
                Ok(None) => {
                    failure = Some(e);
                    false
                }
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        if let Some(e) = failure {
            report.holds = false;
            report.witness = Some((shape, e));
            return Ok(report);
        }
    }
    Ok(report)
}

/// Hypothesis and conclusions for a full subcategory of a filtered
/// category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalSubReport {
    pub filtered: bool,
    /// Every object maps to some object of the subcategory.
    pub hypothesis: bool,
    /// An object with no map into the subcategory.
    pub witness: Option<Obj>,
    pub sub_filtered: Option<bool>,
    pub cofinal: Option<bool>,
}

impl CofinalSubReport {
    /// The conclusions hold whenever the hypotheses do.
    pub fn holds(&self) -> bool {
        !(self.filtered && self.hypothesis) || (self.sub_filtered == Some(true) && self.cofinal == Some(true))
    }
}

pub fn check_cofinal_subcategory(c: &CatRef, objs: &[Obj], budget: &Budget) -> Result<CofinalSubReport> {
    let filtered = is_filtered_exact(c, budget)?;
    let witness = (0..c.num_objects()).find(|&x| objs.iter().all(|&y| c.hom(x, y).is_empty()));
    let mut report = CofinalSubReport { filtered, hypothesis: witness.is_none(), witness, sub_filtered: None, cofinal: None };
    if report.hypothesis {
        let (sub, incl) = c.full_subcategory(objs);
        report.sub_filtered = Some(is_filtered_exact(&sub, budget)?);
        report.cofinal = Some(check_cofinal(&incl).holds);
    }
    Ok(report)
}

/// Both sides of: `I^⊥X` is filtered iff `colim X` is a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConLeReport {
    pub elements_filtered: bool,
    pub colim_size: usize,
}

impl ConLeReport {
    pub fn agree(&self) -> bool {
        self.elements_filtered == (self.colim_size == 1)
    }
}

pub fn check_con_le(x: &SetFunctor, budget: &Budget) -> Result<ConLeReport> {
    if x.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch("expected a covariant set functor".into()));
    }
    if !is_filtered_exact(x.base(), budget)? {
        return Err(Error::PreconditionFailed("the base category is not filtered".into()));
    }
    let els = elements(x, Flavor::Covariant)?;
    Ok(ConLeReport { elements_filtered: is_filtered_exact(&els.cat, budget)?, colim_size: colim_set(x).len() })
}

/// `Fun(J, C)` with natural transformations as morphisms.
pub struct FunCat {
    pub cat: CatRef,
    pub functors: Vec<FinFunctor>,
    /// Components of each morphism.
    pub components: Vec<Vec<Mor>>,
}

impl FunCat {
    pub fn functor_index(&self, f: &FinFunctor) -> Option<Obj> {
        self.functors.iter().position(|g| g.obj_map() == f.obj_map() && g.mor_map() == f.mor_map())
    }
}

pub fn fun_cat(j: &CatRef, c: &CatRef, budget: &Budget) -> Result<FunCat> {
    let funs = functors(j, c, budget)?;
    let objects: Vec<String> = (0..funs.len()).map(|k| format!("F{k}")).collect();
    let mut arrows = Vec::new();
    for (s, f) in funs.iter().enumerate() {
        for (t, g) in funs.iter().enumerate() {
            for comp in nat_transform_components(f, g, budget)? {
                let name = if s == t && (0..j.num_objects()).all(|o| comp[o] == c.identity(f.ob(o))) {
                    crate::category::identity_name(&objects[s])
                } else {
                    let legs: Vec<&str> = comp.iter().map(|&m| c.morphism_name(m)).collect();
                    format!("F{s}->F{t}[{}]", legs.join(","))
                };
                arrows.push((s, t, comp, name));
            }
        }
    }
    let ids: Vec<Vec<Mor>> = funs.iter().map(|f| (0..j.num_objects()).map(|o| c.identity(f.ob(o))).collect()).collect();
    let (cat, components) = assemble(objects, arrows, |s| ids[s].clone(), |g: &Vec<Mor>, f: &Vec<Mor>| {
        g.iter().zip(f).map(|(&a, &b)| c.compose(a, b)).collect()
    });
    Ok(FunCat { cat: Arc::new(cat), functors: funs, components })
}

/// The constant-diagram functor `C → Fun(J, C)`.
pub fn constant_embedding(fc: &FunCat, j: &CatRef, c: &CatRef) -> Result<FinFunctor> {
    let obj_map: Vec<Obj> = (0..c.num_objects())
        .map(|o| fc.functor_index(&FinFunctor::constant(j, c, o)).expect("constant functor is enumerated"))
        .collect();
    let mor_map: Vec<Mor> = (0..c.num_morphisms())
        .map(|m| {
            let (s, t) = (obj_map[c.src(m)], obj_map[c.tgt(m)]);
            let comp = vec![m; j.num_objects()];
            *fc.cat.hom(s, t).iter().find(|&&x| fc.components[x] == comp).expect("constant transformation is enumerated")
        })
        .collect();
    FinFunctor::new(c.clone(), fc.cat.clone(), obj_map, mor_map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeLeReport {
    pub c_filtered: bool,
    pub objects: usize,
    pub fun_filtered: bool,
    pub constant_cofinal: bool,
}

impl ConeLeReport {
    pub fn holds(&self) -> bool {
        !self.c_filtered || (self.fun_filtered && self.constant_cofinal)
    }
}

pub fn check_cone_le(j: &CatRef, c: &CatRef, budget: &Budget) -> Result<ConeLeReport> {
    let fc = fun_cat(j, c, budget)?;
    let konst = constant_embedding(&fc, j, c)?;
    Ok(ConeLeReport {
        c_filtered: is_filtered_exact(c, budget)?,
        objects: fc.cat.num_objects(),
        fun_filtered: is_filtered_exact(&fc.cat, budget)?,
        constant_cofinal: check_cofinal(&konst).holds,
    })
}

/// The comparison `colim_I lim_J X → lim_J colim_I X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteReport {
    pub i_filtered: bool,
    /// `|colim_I lim_J X|`.
    pub left: usize,
    /// `|lim_J colim_I X|`.
    pub right: usize,
    /// Image of each element of the left side.
    pub comparison: Vec<usize>,
    pub bijective: bool,
    /// Two left elements with the same image, or a right element outside
    /// the image.
    pub witness: Option<String>,
}

pub fn filt_commute_check(i: &CatRef, j: &CatRef, x: &SetFunctor, budget: &Budget) -> Result<CommuteReport> {
    CommuteSetup::new(i, j, budget)?.check(x, budget)
}

/// `I × J` and the filteredness of `I`, shared by many checks.
#[derive(Clone, Debug)]
pub struct CommuteSetup {
    pub i: CatRef,
    pub j: CatRef,
    pub product: CatRef,
    pub i_filtered: bool,
}

impl CommuteSetup {
    pub fn new(i: &CatRef, j: &CatRef, budget: &Budget) -> Result<CommuteSetup> {
        Ok(CommuteSetup { i: i.clone(), j: j.clone(), product: product(i, j).cat, i_filtered: is_filtered_exact(i, budget)? })
    }

    pub fn check(&self, x: &SetFunctor, budget: &Budget) -> Result<CommuteReport> {
        let (i, j) = (&self.i, &self.j);
        if !(Arc::ptr_eq(x.base(), &self.product) || **x.base() == *self.product) || x.variance() != Variance::Covariant {
            return Err(Error::SetFunctor("expected a covariant set functor on I × J".into()));
        }
        commute(i, j, self.i_filtered, x, budget)
    }
}

/// Families `(s_0, …, s_{n-1})` with `s_k < sizes[k]` accepted by
/// `compatible`, in lexicographic order, stored row after row.
fn families(sizes: &[usize], budget: &Budget, compatible: impl Fn(&[usize]) -> bool) -> Result<Rows> {
    let n = sizes.len();
    let mut out = Rows { width: n, count: 0, data: Vec::new() };
    if sizes.iter().any(|&k| k == 0) {
        return Ok(out);
    }
    let mut s = vec![0usize; n];
    loop {
        budget.tick("enumerating families")?;
        if compatible(&s) {
            out.push(&s);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            s[k] += 1;
            if s[k] < sizes[k] {
                break;
            }
            s[k] = 0;
        }
    }
}

/// Equal-width rows in lexicographic order.
struct Rows {
    width: usize,
    count: usize,
    data: Vec<usize>,
}

impl Rows {
    fn len(&self) -> usize {
        self.count
    }

    fn push(&mut self, row: &[usize]) {
        self.data.extend_from_slice(row);
        self.count += 1;
    }

    fn row(&self, k: usize) -> &[usize] {
        &self.data[k * self.width..(k + 1) * self.width]
    }

    fn find(&self, key: &[usize]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.row(mid).cmp(key) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Connected components of a graph on `n` nodes, numbered by first node.
fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::<usize>::new(n);
    for (u, v) in edges {
        uf.union(u, v);
    }
    let mut id = vec![usize::MAX; n];
    let mut class = vec![0; n];
    let mut count = 0;
    for v in 0..n {
        let r = uf.find(v);
        if id[r] == usize::MAX {
            id[r] = count;
            count += 1;
        }
        class[v] = id[r];
    }
    (class, count)
}

fn commute(i: &CatRef, j: &CatRef, i_filtered: bool, x: &SetFunctor, budget: &Budget) -> Result<CommuteReport> {
    let (ni, nj) = (i.num_objects(), j.num_objects());
    let mj = j.num_morphisms();
    let ob = |a: Obj, b: Obj| a * nj + b;
    let mo = |f: Mor, g: Mor| f * mj + g;
    let j_arrows: Vec<Mor> = j.non_identity_morphisms().collect();
    let i_arrows: Vec<Mor> = i.non_identity_morphisms().collect();
    // lim_J X(a, -) for each a
    let row_lims: Vec<Rows> = (0..ni)
        .map(|a| {
            let sizes: Vec<usize> = (0..nj).map(|b| x.size(ob(a, b))).collect();
            families(&sizes, budget, |s| {
                j_arrows.iter().all(|&g| x.apply(mo(i.identity(a), g), s[j.src(g)]) == s[j.tgt(g)])
            })
        })
        .collect::<Result<_>>()?;
    let mut offset = vec![0usize; ni + 1];
    for a in 0..ni {
        offset[a + 1] = offset[a] + row_lims[a].len();
    }
    let mut edges = Vec::new();
    for &f in &i_arrows {
        let (a, a2) = (i.src(f), i.tgt(f));
        let mut image = vec![0; nj];
        for k in 0..row_lims[a].len() {
            let s = row_lims[a].row(k);
            for b in 0..nj {
                image[b] = x.apply(mo(f, j.identity(b)), s[b]);
            }
            let k2 = row_lims[a2].find(&image).expect("a compatible family maps to one");
            edges.push((offset[a] + k, offset[a2] + k2));
        }
    }
    let (left_class, left_len) = components(offset[ni], edges.into_iter());
    let mut left_rep = vec![(0, 0); left_len];
    for a in (0..ni).rev() {
        for k in (0..row_lims[a].len()).rev() {
            left_rep[left_class[offset[a] + k]] = (a, k);
        }
    }
    // colim_I X(-, b) for each b
    let mut col_class: Vec<Vec<usize>> = Vec::with_capacity(nj);
    let mut col_len = Vec::with_capacity(nj);
    let mut col_offset: Vec<Vec<usize>> = Vec::with_capacity(nj);
    for b in 0..nj {
        let mut off = vec![0usize; ni + 1];
        for a in 0..ni {
            off[a + 1] = off[a] + x.size(ob(a, b));
        }
        let edges = i_arrows.iter().flat_map(|&f| {
            let (a, a2) = (i.src(f), i.tgt(f));
            let m = mo(f, j.identity(b));
            let off = &off;
            (0..x.size(ob(a, b))).map(move |y| (off[a] + y, off[a2] + x.apply(m, y)))
        });
        let (class, len) = components(off[ni], edges);
        col_class.push(class);
        col_len.push(len);
        col_offset.push(off);
    }
    let class_at = |b: Obj, a: Obj, y: usize| col_class[b][col_offset[b][a] + y];
    // the colimit functor on J and its limit
    let col_rep: Vec<Vec<(Obj, usize)>> = (0..nj)
        .map(|b| {
            let mut rep = vec![(0, 0); col_len[b]];
            for a in (0..ni).rev() {
                for y in (0..x.size(ob(a, b))).rev() {
                    rep[class_at(b, a, y)] = (a, y);
                }
            }
            rep
        })
        .collect();
    let right = families(&col_len, budget, |c| {
        j_arrows.iter().all(|&g| {
            let (b, b2) = (j.src(g), j.tgt(g));
            let (a, y) = col_rep[b][c[b]];
            class_at(b2, a, x.apply(mo(i.identity(a), g), y)) == c[b2]
        })
    })?;
    let mut family = vec![0; nj];
    let comparison: Vec<usize> = left_rep
        .iter()
        .map(|&(a, k)| {
            let s = row_lims[a].row(k);
            for b in 0..nj {
                family[b] = class_at(b, a, s[b]);
            }
            right.find(&family).expect("the comparison lands in the limit")
        })
        .collect();
    let mut hit = vec![None; right.len()];
    let mut witness = None;
    for (k, &r) in comparison.iter().enumerate() {
        match hit[r] {
            Some(other) if witness.is_none() => {
                witness = Some(format!("left elements {other} and {k} both map to right element {r}"));
            }
            _ => hit[r] = Some(k),
        }
    }
    if witness.is_none() {
        if let Some(r) = hit.iter().position(Option::is_none) {
            witness = Some(format!(
                "{} elements on the left, {} on the right; right element {r} is not hit",
                left_len,
                right.len()
            ));
        }
    }
    Ok(CommuteReport { i_filtered, left: left_len, right: right.len(), comparison, bijective: witness.is_none(), witness })
}

/// `X` as a retract of `γ^o_!(pt)` for a dimension ≤ 1 shape `γ: J → I`.
#[derive(Clone, Debug)]
pub struct CompactWitness {
    pub shape: Poset,
    pub gamma: FinFunctor,
    pub extension: SetFunctor,
    /// `X → γ^o_! pt`.
    pub section: SetNatMap,
    /// `γ^o_! pt → X`.
    pub retraction: SetNatMap,
}

pub fn compact_witness_search(x: &SetFunctor, size_bound: usize, budget: &Budget) -> Result<Option<CompactWitness>> {
    if x.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch("expected a presheaf".into()));
    }
    let base = x.base();
    let id_x = SetNatMap::identity(x);
    for shape in dim1_shapes(size_bound) {
        let j = shape.as_category_ref();
        for gamma in functors(&j, base, budget)? {
            let pt = SetFunctor::point(&j, Variance::Contravariant);
            let ext = kan_left(&gamma, &pt)?.value;
            let sections = hom_presheaves(x, &ext, budget)?;
            if sections.is_empty() {
                continue;
            }
            for r in hom_presheaves(&ext, x, budget)? {
                if let Some(s) = sections.iter().find(|s| r.after(s) == id_x) {
                    return Ok(Some(CompactWitness {
                        shape,
                        gamma,
                        extension: ext,
                        section: s.clone(),
                        retraction: r,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `C0 × C1` is filtered iff both factors are.
pub fn check_product_filtered(c0: &CatRef, c1: &CatRef, budget: &Budget) -> Result<bool> {
    let both = is_filtered_exact(c0, budget)? && is_filtered_exact(c1, budget)?;
    Ok(is_filtered_exact(&product(c0, c1).cat, budget)? == both)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FinCat;
    use crate::presheaf::representable;

    fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    fn disc2() -> CatRef {
        Arc::new(FinCat::discrete(&["a", "b"]))
    }

    fn arrow() -> CatRef {
        Poset::chain(1).as_category_ref()
    }

    #[test]
    fn exact_criteria() {
        let b = Budget::default();
        let r = filter_report(&projector(), &b).unwrap();
        assert!(r.exact_filtered && r.agree());
        assert_eq!(r.witness.unwrap().legs, vec![1]);
        assert!(is_filtered_exact(&arrow(), &b).unwrap());
        let r = filter_report(&disc2(), &b).unwrap();
        assert!(!r.exact_filtered && r.agree());
    }

    #[test]
    fn level_sweeps() {
        let b = Budget::default();
        assert!(is_filtered_at_level(&Poset::chain(2).as_category_ref(), 5, &b).unwrap().holds);
        let r = is_filtered_at_level(&disc2(), 3, &b).unwrap();
        assert!(!r.holds);
        let (shape, _) = r.witness.unwrap();
        assert_eq!(shape.len(), 2);
        assert_eq!(shape.dimension(), 0);
        assert!(is_filtered_at_level(&projector(), 4, &b).unwrap().holds);
    }

    #[test]
    fn cofinal_subcategories() {
        let b = Budget::default();
        let p = projector();
        let pe = karoubi_closure(&p).cat;
        let image = (0..pe.num_objects()).find(|&o| pe.hom(o, o).len() == 1).unwrap();
        let r = check_cofinal_subcategory(&pe, &[image], &b).unwrap();
        assert!(r.hypothesis && r.sub_filtered == Some(true) && r.cofinal == Some(true));
        let r = check_cofinal_subcategory(&arrow(), &[0], &b).unwrap();
        assert!(!r.hypothesis);
        assert_eq!(r.witness, Some(1));
        assert!(r.holds());
    }

    #[test]
    fn con_le_examples() {
        let b = Budget::default();
        let p = projector();
        let collapsing = SetFunctor::from_sizes(p.clone(), Variance::Covariant, &[2], vec![vec![0, 1], vec![0, 0]]).unwrap();
        let r = check_con_le(&collapsing, &b).unwrap();
        assert!(r.elements_filtered && r.colim_size == 1);
        let pt = Arc::new(FinCat::point());
        let two = SetFunctor::constant(&pt, Variance::Covariant, &["u", "v"]);
        let r = check_con_le(&two, &b).unwrap();
        assert!(!r.elements_filtered && r.agree());
        assert!(check_con_le(&SetFunctor::point(&p, Variance::Covariant), &b).unwrap().agree());
        assert!(matches!(
            check_con_le(&SetFunctor::point(&disc2(), Variance::Covariant), &b),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn functor_categories() {
        let b = Budget::default();
        let fc = fun_cat(&arrow(), &arrow(), &b).unwrap();
        assert_eq!(fc.cat.num_objects(), 3);
        assert!(Poset::try_from_category(&fc.cat).is_some());
        let empty = Arc::new(FinCat::empty());
        assert_eq!(fun_cat(&empty, &projector(), &b).unwrap().cat.num_objects(), 1);
        let r = check_cone_le(&disc2(), &projector(), &b).unwrap();
        assert!(r.fun_filtered && r.constant_cofinal);
    }

    #[test]
    fn commutation() {
        let b = Budget::default();
        let p = projector();
        let j = disc2();
        let prod = product(&p, &j);
        // two P-sets of size 2 with collapsing projectors
        let act = (0..prod.cat.num_morphisms()).map(|m| if m / 2 == 0 { vec![0, 1] } else { vec![0, 0] }).collect();
        let x = SetFunctor::from_sizes(prod.cat.clone(), Variance::Covariant, &[2, 2], act).unwrap();
        let r = filt_commute_check(&p, &j, &x, &b).unwrap();
        assert!(r.i_filtered && r.bijective);
        assert_eq!((r.left, r.right), (1, 1));

        let d = disc2();
        let dd = product(&d, &d);
        let x = SetFunctor::point(&dd.cat, Variance::Covariant);
        let r = filt_commute_check(&d, &d, &x, &b).unwrap();
        assert!(!r.i_filtered && !r.bijective);
        assert_eq!((r.left, r.right), (2, 4));
        assert!(r.witness.is_some());

        let pt = Arc::new(FinCat::point());
        let pp = product(&p, &pt);
        let x = SetFunctor::from_sizes(pp.cat.clone(), Variance::Covariant, &[3], vec![vec![0, 1, 2], vec![0, 0, 2]]).unwrap();
        let r = filt_commute_check(&p, &pt, &x, &b).unwrap();
        assert!(r.bijective);
        assert_eq!(r.left, 2);
    }

    #[test]
    fn compact_witnesses() {
        let b = Budget::default();
        let j = arrow();
        let w = compact_witness_search(&representable(&j, 1), 3, &b).unwrap().unwrap();
        assert_eq!(w.shape.len(), 1);
        assert_eq!(w.gamma.ob(0), 1);
        let pt = Arc::new(FinCat::point());
        let two = SetFunctor::constant(&pt, Variance::Contravariant, &["u", "v"]);
        let w = compact_witness_search(&two, 3, &b).unwrap().unwrap();
        assert_eq!(w.shape.len(), 2);
        // the split projector on P: image of p acting on Y(x)
        let p = projector();
        let split = SetFunctor::from_sizes(p.clone(), Variance::Contravariant, &[1], vec![vec![0], vec![0]]).unwrap();
        let w = compact_witness_search(&split, 2, &b).unwrap().unwrap();
        assert_eq!(w.shape.len(), 1);
    }

    #[test]
    fn products_of_filtered() {
        let b = Budget::default();
        for (c0, c1) in [(projector(), arrow()), (disc2(), arrow()), (projector(), disc2())] {
            assert!(check_product_filtered(&c0, &c1, &b).unwrap());
        }
    }
}
