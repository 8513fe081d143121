//! Finite shadows of Ind-completion: presentations by filtered diagrams,
//! their Hom sets, the presheaves they present and recognition of
//! Ind-objects among presheaves.

use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{
    fiber_product, find_id_cone, karoubi_closure, lax_fiber_product, CatRef, FinCat, FinFunctor, Mor, Obj,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::filtered::compact_witness_search;
use crate::poset::Poset;
use crate::presheaf::{
    check_cofinal, colim_set, elements_of, find_set_iso, hom_presheaves, lim_set, SetColimit, SetFunctor, SetNatMap,
    Variance,
};

/// `⟨J, i⟩`: a filtered finite category with a functor to `I`.
#[derive(Clone, Debug)]
pub struct IndPresentation {
    diagram: FinFunctor,
}

impl IndPresentation {
    pub fn new(diagram: FinFunctor, budget: &Budget) -> Result<IndPresentation> {
        if find_id_cone(diagram.dom(), budget)?.is_none() {
            return Err(Error::PreconditionFailed("the index of a presentation must be filtered".into()));
        }
        Ok(IndPresentation { diagram })
    }

    /// `⟨pt, i⟩`.
    pub fn object(target: &CatRef, i: Obj) -> IndPresentation {
        let pt = Arc::new(FinCat::point());
        IndPresentation { diagram: FinFunctor::constant(&pt, target, i) }
    }

    pub fn index(&self) -> &CatRef {
        self.diagram.dom()
    }

    pub fn target(&self) -> &CatRef {
        self.diagram.cod()
    }

    pub fn diagram(&self) -> &FinFunctor {
        &self.diagram
    }
}

/// `lim_{j ∈ J^o} colim_{j′ ∈ J′} Hom(i_j, i′_{j′})`.
#[derive(Clone, Debug)]
pub struct IndHom {
    source: IndPresentation,
    colims: HomColimits,
    /// The presheaf `j ↦ colim_{J′} Hom(i_j, i′_−)` on `J`.
    pub presheaf: SetFunctor,
    /// One class per `j` for each element.
    pub elements: Vec<Vec<usize>>,
}

impl IndHom {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn class(&self, j: Obj, jp: Obj, h: Mor) -> usize {
        self.colims.class(j, jp, h)
    }

    /// A representative `(j′, h)` of the component of `element` at `j`.
    pub fn representative(&self, element: usize, j: Obj) -> (Obj, Mor) {
        self.colims.representative(j, self.elements[element][j])
    }

    pub fn position(&self, family: &[usize]) -> Option<usize> {
        self.elements.iter().position(|e| e == family)
    }
}

pub fn ind_hom(a: &IndPresentation, b: &IndPresentation, budget: &Budget) -> Result<IndHom> {
    if **a.target() != **b.target() {
        return Err(Error::PreconditionFailed("presentations have different targets".into()));
    }
    let (ia, c, j) = (&a.diagram, a.target(), a.index());
    budget.spend((j.num_objects() * b.index().num_objects()) as u64, "evaluating an Ind Hom set")?;
    let colims = HomColimits::new(ia.obj_map().to_vec(), &b.diagram);
    let labels = (0..j.num_objects()).map(|o| (0..colims.len(o)).map(|k| format!("[{k}]")).collect()).collect();
    let act = (0..j.num_morphisms())
        .map(|u| {
            let (s, t) = (j.src(u), j.tgt(u));
            (0..colims.len(t))
                .map(|k| {
                    let (q, h) = colims.representative(t, k);
                    colims.class(s, q, c.compose(h, ia.mor(u)))
                })
                .collect()
        })
        .collect();
    let presheaf = SetFunctor::new_unchecked(j.clone(), Variance::Contravariant, labels, act);
    let elements = lim_set(&presheaf, budget)?;
    Ok(IndHom { source: a.clone(), colims, presheaf, elements })
}

/// `ψ ∘ φ` for `φ ∈ ab`, `ψ ∈ bc`, as an element of `ac`.
pub fn ind_compose(ab: &IndHom, bc: &IndHom, ac: &IndHom, phi: usize, psi: usize) -> usize {
    let c = ab.source.target();
    let family: Vec<usize> = (0..ab.source.index().num_objects())
        .map(|j| {
            let (jp, h) = ab.representative(phi, j);
            let (jpp, k) = bc.representative(psi, jp);
            ac.class(j, jpp, c.compose(k, h))
        })
        .collect();
    ac.position(&family).expect("composites are compatible families")
}

/// The identity of `⟨J, i⟩` in `aa`.
pub fn ind_identity(aa: &IndHom) -> usize {
    let c = aa.source.target();
    let family: Vec<usize> =
        (0..aa.source.index().num_objects()).map(|j| aa.class(j, j, c.identity(aa.source.diagram.ob(j)))).collect();
    aa.position(&family).expect("the identity is a compatible family")
}

/// Associativity and unit laws for composition among presentations.
pub fn check_ind_composition(objects: &[IndPresentation], budget: &Budget) -> Result<bool> {
    let n = objects.len();
    let mut homs = Vec::with_capacity(n * n);
    for a in objects {
        for b in objects {
            homs.push(ind_hom(a, b, budget)?);
        }
    }
    let h = |a: usize, b: usize| &homs[a * n + b];
    for a in 0..n {
        let id_a = ind_identity(h(a, a));
        for b in 0..n {
            let id_b = ind_identity(h(b, b));
            for f in 0..h(a, b).len() {
                if ind_compose(h(a, a), h(a, b), h(a, b), id_a, f) != f || ind_compose(h(a, b), h(b, b), h(a, b), f, id_b) != f {
                    return Ok(false);
                }
                for c in 0..n {
                    for g in 0..h(b, c).len() {
                        let gf = ind_compose(h(a, b), h(b, c), h(a, c), f, g);
                        for d in 0..n {
                            for k in 0..h(c, d).len() {
                                let left = ind_compose(h(a, c), h(c, d), h(a, d), gf, k);
                                let kg = ind_compose(h(b, c), h(c, d), h(b, d), g, k);
                                if left != ind_compose(h(a, b), h(b, d), h(a, d), f, kg) {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

// `colim_{J} Hom(s, i_−)` for each source object `s`.
#[derive(Clone, Debug)]
struct HomColimits {
    diagram: FinFunctor,
    sources: Vec<Obj>,
    colims: Vec<SetColimit>,
}

impl HomColimits {
    fn new(sources: Vec<Obj>, diagram: &FinFunctor) -> HomColimits {
        let (c, j) = (diagram.cod(), diagram.dom());
        let colims = sources
            .iter()
            .map(|&o| {
                let labels: Vec<Vec<String>> = (0..j.num_objects())
                    .map(|q| c.hom(o, diagram.ob(q)).iter().map(|&h| c.morphism_name(h).to_string()).collect())
                    .collect();
                let act = (0..j.num_morphisms())
                    .map(|f| {
                        let t = diagram.ob(j.tgt(f));
                        c.hom(o, diagram.ob(j.src(f)))
                            .iter()
                            .map(|&h| c.hom(o, t).iter().position(|&x| x == c.compose(diagram.mor(f), h)).unwrap())
                            .collect()
                    })
                    .collect();
                colim_set(&SetFunctor::new_unchecked(j.clone(), Variance::Covariant, labels, act))
            })
            .collect();
        HomColimits { diagram: diagram.clone(), sources, colims }
    }

    fn len(&self, k: usize) -> usize {
        self.colims[k].len()
    }

    fn class(&self, k: usize, q: Obj, h: Mor) -> usize {
        let c = self.diagram.cod();
        let atom = c.hom(self.sources[k], self.diagram.ob(q)).iter().position(|&x| x == h).expect("a point of the colimit");
        self.colims[k].class_of[q][atom]
    }

    fn representative(&self, k: usize, class: usize) -> (Obj, Mor) {
        let (q, atom) = self.colims[k].classes[class][0];
        (q, self.diagram.cod().hom(self.sources[k], self.diagram.ob(q))[atom])
    }
}

/// `c ↦ colim_J Hom(c, i_j)`.
pub fn presheaf_of(a: &IndPresentation) -> SetFunctor {
    let (c, j) = (a.target(), a.index());
    let pr = HomColimits::new((0..a.target().num_objects()).collect(), &a.diagram);
    let labels: Vec<Vec<String>> = (0..c.num_objects())
        .map(|o| {
            (0..pr.len(o))
                .map(|k| {
                    let (q, h) = pr.representative(o, k);
                    format!("[{},{}]", j.object_name(q), c.morphism_name(h))
                })
                .collect()
        })
        .collect();
    let act = (0..c.num_morphisms())
        .map(|g| {
            let (s, t) = (c.src(g), c.tgt(g));
            (0..pr.len(t))
                .map(|k| {
                    let (q, h) = pr.representative(t, k);
                    pr.class(s, q, c.compose(h, g))
                })
                .collect()
        })
        .collect();
    SetFunctor::new_unchecked(c.clone(), Variance::Contravariant, labels, act)
}

/// The comparison `ind_hom(A, B) → Hom(presheaf_of A, presheaf_of B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullFaithfulness {
    pub ind: usize,
    pub presheaf: usize,
    pub bijective: bool,
}

pub fn check_presheaf_full_faithfulness(a: &IndPresentation, b: &IndPresentation, budget: &Budget) -> Result<FullFaithfulness> {
    let hom = ind_hom(a, b, budget)?;
    let (xa, xb) = (presheaf_of(a), presheaf_of(b));
    let all = hom_presheaves(&xa, &xb, budget)?;
    let c = a.target();
    let (pa, pb) = (HomColimits::new((0..a.target().num_objects()).collect(), &a.diagram), HomColimits::new((0..b.target().num_objects()).collect(), &b.diagram));
    let mut hit = vec![false; all.len()];
    let mut bijective = hom.len() == all.len();
    for e in 0..hom.len() {
        let components = (0..c.num_objects())
            .map(|o| {
                (0..xa.size(o))
                    .map(|x| {
                        let (q, h) = pa.representative(o, x);
                        let (qp, k) = hom.representative(e, q);
                        pb.class(o, qp, c.compose(k, h))
                    })
                    .collect()
            })
            .collect();
        let map = SetNatMap { components };
        match all.iter().position(|m| *m == map) {
            Some(k) if !hit[k] => hit[k] = true,
            _ => bijective = false,
        }
    }
    Ok(FullFaithfulness { ind: hom.len(), presheaf: all.len(), bijective })
}

/// Why a category of elements is not filtered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Empty,
    /// Two objects with no common target.
    Disjoint(Obj, Obj),
    /// A parallel pair no morphism equalizes.
    Parallel(Mor, Mor),
}

#[derive(Clone, Debug)]
pub struct IndRecognition {
    pub is_ind: bool,
    /// The elements category with its projection, when filtered.
    pub presentation: Option<IndPresentation>,
    /// `presheaf_of(presentation) ≅ X` by `[(⟨i,x⟩, h)] ↦ X(h)(x)`.
    pub canonical_iso: bool,
    pub obstruction: Option<Obstruction>,
}

/// The first failure of the pairwise conditions, or `None` when `c` is
/// filtered.
pub fn obstruction(c: &FinCat) -> Option<Obstruction> {
    let n = c.num_objects();
    if n == 0 {
        return Some(Obstruction::Empty);
    }
    for a in 0..n {
        for b in a + 1..n {
            if !(0..n).any(|t| !c.hom(a, t).is_empty() && !c.hom(b, t).is_empty()) {
                return Some(Obstruction::Disjoint(a, b));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let hom = c.hom(a, b);
            for (k, &f) in hom.iter().enumerate() {
                for &g in &hom[k + 1..] {
                    if !(0..n).any(|t| c.hom(b, t).iter().any(|&h| c.compose(h, f) == c.compose(h, g))) {
                        return Some(Obstruction::Parallel(f, g));
                    }
                }
            }
        }
    }
    None
}

pub fn is_ind_object(x: &SetFunctor, budget: &Budget) -> Result<IndRecognition> {
    if x.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch("expected a presheaf".into()));
    }
    let el = elements_of(x);
    if find_id_cone(&el.cat, budget)?.is_none() {
        return Ok(IndRecognition { is_ind: false, presentation: None, canonical_iso: false, obstruction: obstruction(&el.cat) });
    }
    let pres = IndPresentation { diagram: el.proj.clone() };
    let y = presheaf_of(&pres);
    let c = x.base();
    let pr = HomColimits::new((0..c.num_objects()).collect(), &pres.diagram);
    let components: Vec<Vec<usize>> = (0..c.num_objects())
        .map(|o| {
            (0..y.size(o))
                .map(|k| {
                    let (q, h) = pr.representative(o, k);
                    x.apply(h, el.points[q].1)
                })
                .collect()
        })
        .collect();
    let map = SetNatMap { components };
    let canonical_iso = map.is_natural(&y, x) && map.is_iso(&y, x);
    Ok(IndRecognition { is_ind: true, presentation: Some(pres), canonical_iso, obstruction: None })
}

/// `⟨c, p⟩ ↦ {h: d → c | p ∘ h = h}`.
pub fn split_idempotent_presheaf(c: &CatRef, carrier: Obj, p: Mor) -> SetFunctor {
    let fixed = |d: Obj| -> Vec<Mor> { c.hom(d, carrier).iter().copied().filter(|&h| c.compose(p, h) == h).collect() };
    let labels = (0..c.num_objects()).map(|d| fixed(d).iter().map(|&h| c.morphism_name(h).to_string()).collect()).collect();
    let act = (0..c.num_morphisms())
        .map(|g| {
            let (s, t) = (c.src(g), c.tgt(g));
            let target = fixed(s);
            fixed(t).iter().map(|&h| target.iter().position(|&x| x == c.compose(h, g)).unwrap()).collect()
        })
        .collect();
    SetFunctor::new_unchecked(c.clone(), Variance::Contravariant, labels, act)
}

#[derive(Clone, Debug)]
pub struct KaroubiIdReport {
    pub karoubi_objects: usize,
    /// Isomorphism classes of the Karoubi closure.
    pub iso_classes: usize,
    pub fully_faithful: bool,
    /// Per-object value-set bound of the sweep.
    pub size_bound: usize,
    /// Shape bound handed to the compactness search.
    pub shape_bound: usize,
    pub swept: usize,
    /// Swept presheaves isomorphic to a split idempotent.
    pub in_image: usize,
    /// Presheaves where the image and the recognizer disagree.
    pub mismatches: Vec<SetFunctor>,
    /// Presheaves where the image and the terminal-object test disagree.
    pub terminal_mismatches: Vec<SetFunctor>,
}

impl KaroubiIdReport {
    pub fn holds(&self) -> bool {
        self.fully_faithful && self.mismatches.is_empty() && self.terminal_mismatches.is_empty()
    }
}

pub fn karoubi_identification(c: &CatRef, size_bound: usize, shape_bound: usize, budget: &Budget) -> Result<KaroubiIdReport> {
    let k = karoubi_closure(c);
    let images: Vec<SetFunctor> = k.projectors.iter().map(|&(o, p)| split_idempotent_presheaf(c, o, p)).collect();
    let mut fully_faithful = true;
    for (s, &(a, p)) in k.projectors.iter().enumerate() {
        for (t, &(b, q)) in k.projectors.iter().enumerate() {
            let all = hom_presheaves(&images[s], &images[t], budget)?;
            let hom: Vec<Mor> =
                c.hom(a, b).iter().copied().filter(|&f| c.compose(q, f) == f && c.compose(f, p) == f).collect();
            if hom.len() != all.len() || hom.len() != k.cat.hom(s, t).len() {
                fully_faithful = false;
                continue;
            }
            let fixed = |x: Obj, e: Mor, d: Obj| -> Vec<Mor> {
                c.hom(d, x).iter().copied().filter(|&h| c.compose(e, h) == h).collect()
            };
            let mut hit = vec![false; all.len()];
            for f in hom {
                let components = (0..c.num_objects())
                    .map(|d| {
                        let target = fixed(b, q, d);
                        fixed(a, p, d).iter().map(|&h| target.iter().position(|&x| x == c.compose(f, h)).unwrap()).collect()
                    })
                    .collect();
                let map = SetNatMap { components };
                match all.iter().position(|x| *x == map) {
                    Some(i) if !hit[i] => hit[i] = true,
                    _ => fully_faithful = false,
                }
            }
        }
    }
    let n = k.cat.num_objects();
    let mut class = vec![usize::MAX; n];
    let mut iso_classes = 0;
    for a in 0..n {
        if class[a] != usize::MAX {
            continue;
        }
        for b in a..n {
            if class[b] == usize::MAX && k.cat.hom(a, b).iter().any(|&m| k.cat.is_isomorphism(m)) {
                class[b] = iso_classes;
            }
        }
        iso_classes += 1;
    }
    let mut report = KaroubiIdReport {
        karoubi_objects: n,
        iso_classes,
        fully_faithful,
        size_bound,
        shape_bound,
        swept: 0,
        in_image: 0,
        mismatches: Vec::new(),
        terminal_mismatches: Vec::new(),
    };
    let mut failure = None;
    corpus::for_each_set_functor(c, Variance::Contravariant, size_bound, budget, &mut |x| {
        report.swept += 1;
        let step = (|| -> Result<()> {
            let mut in_image = false;
            for y in &images {
                if find_set_iso(y, x, budget)?.is_some() {
                    in_image = true;
                    break;
                }
            }
            let recognized = is_ind_object(x, budget)?.is_ind
                && compact_witness_search(x, shape_bound, budget)?.is_some_and(|w| w.shape.len() == 1);
            let el = elements_of(x).cat;
            let terminal = karoubi_closure(&el).cat.terminal_object().is_some();
            report.in_image += usize::from(in_image);
            if in_image != recognized {
                report.mismatches.push(x.clone());
            }
            if in_image != terminal {
                report.terminal_mismatches.push(x.clone());
            }
            Ok(())
        })();
        match step {
            Ok(()) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

/// The finite truncation of the even/odd embeddings into a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProdDemoReport {
    pub n: usize,
    pub evens: Vec<usize>,
    pub odds: Vec<usize>,
    pub fiber_product_objects: usize,
    pub lax_fiber_product_objects: usize,
    pub even_cofinal: bool,
    pub odd_cofinal: bool,
}

pub fn pullback_failure_demo(n: usize) -> Result<ProdDemoReport> {
    if n < 2 {
        return Err(Error::PreconditionFailed("the chain needs N >= 2".into()));
    }
    let j = Poset::chain(n);
    let jc = j.as_category_ref();
    let evens: Vec<usize> = (0..=n).filter(|k| k % 2 == 0).collect();
    let odds: Vec<usize> = (0..=n).filter(|k| k % 2 == 1).collect();
    let (_, even) = jc.full_subcategory(&evens);
    let (_, odd) = jc.full_subcategory(&odds);
    Ok(ProdDemoReport {
        n,
        fiber_product_objects: fiber_product(&even, &odd).cat.num_objects(),
        lax_fiber_product_objects: lax_fiber_product(&even, &odd).cat.num_objects(),
        even_cofinal: check_cofinal(&even).holds,
        odd_cofinal: check_cofinal(&odd).holds,
        evens,
        odds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::{kan_left, representable};

    fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    // ⟨P, x with p⟩
    fn p_with_p() -> IndPresentation {
        IndPresentation::new(FinFunctor::identity(&projector()), &Budget::default()).unwrap()
    }

    #[test]
    fn hom_between_points_is_hom() {
        let b = Budget::default();
        let c = Poset::chain(1).as_category_ref();
        let (a0, a1) = (IndPresentation::object(&c, 0), IndPresentation::object(&c, 1));
        assert_eq!(ind_hom(&a0, &a1, &b).unwrap().len(), 1);
        assert_eq!(ind_hom(&a1, &a0, &b).unwrap().len(), 0);
    }

    #[test]
    fn split_idempotent_hom() {
        let b = Budget::default();
        let p = projector();
        let a = IndPresentation::object(&p, 0);
        let x = p_with_p();
        let hom = ind_hom(&a, &x, &b).unwrap();
        assert_eq!(hom.len(), 1);
        let (q, h) = hom.representative(0, 0);
        assert_eq!(hom.class(0, q, h), hom.class(0, 0, p.morphism_index("p").unwrap()));
        let y = presheaf_of(&x);
        assert_eq!(y.sizes(), vec![1]);
        assert!(find_set_iso(&y, &representable(&p, 0), &b).unwrap().is_none());
    }

    #[test]
    fn presheaf_of_matches_kan_extension() {
        let b = Budget::default();
        let x = p_with_p();
        let pt = SetFunctor::point(x.index(), Variance::Contravariant);
        let lk = kan_left(x.diagram(), &pt).unwrap();
        assert!(find_set_iso(&presheaf_of(&x), &lk.value, &b).unwrap().is_some());
    }

    #[test]
    fn terminal_index_collapses() {
        let b = Budget::default();
        let c = Poset::chain(1).as_category_ref();
        let bpres = IndPresentation::new(FinFunctor::identity(&c), &b).unwrap();
        for o in 0..2 {
            let a = IndPresentation::object(&c, o);
            let full = ind_hom(&a, &bpres, &b).unwrap().len();
            let top = ind_hom(&a, &IndPresentation::object(&c, 1), &b).unwrap().len();
            assert_eq!(full, top);
        }
        assert!(find_set_iso(&presheaf_of(&bpres), &representable(&c, 1), &b).unwrap().is_some());
    }

    #[test]
    fn composition_and_full_faithfulness() {
        let b = Budget::default();
        let p = projector();
        let objs = vec![IndPresentation::object(&p, 0), p_with_p()];
        assert!(check_ind_composition(&objs, &b).unwrap());
        for x in &objs {
            for y in &objs {
                assert!(check_presheaf_full_faithfulness(x, y, &b).unwrap().bijective);
            }
        }
    }

    #[test]
    fn recognition() {
        let b = Budget::default();
        let p = projector();
        let r = is_ind_object(&representable(&p, 0), &b).unwrap();
        assert!(r.is_ind && r.canonical_iso);
        let pt = Arc::new(FinCat::point());
        let two = SetFunctor::constant(&pt, Variance::Contravariant, &["a", "b"]);
        let r = is_ind_object(&two, &b).unwrap();
        assert!(!r.is_ind);
        assert_eq!(r.obstruction, Some(Obstruction::Disjoint(0, 1)));
        let split = presheaf_of(&p_with_p());
        assert!(is_ind_object(&split, &b).unwrap().is_ind);
    }

    #[test]
    fn karoubi_identifications() {
        let b = Budget::default();
        let pt = Arc::new(FinCat::point());
        let r = karoubi_identification(&pt, 2, 2, &b).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!((r.iso_classes, r.in_image), (1, 1));
        let r = karoubi_identification(&projector(), 2, 2, &b).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.iso_classes, 2);
        let r = karoubi_identification(&Poset::chain(1).as_category_ref(), 2, 2, &b).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!((r.iso_classes, r.in_image), (2, 2));
    }

    #[test]
    fn pullback_demo_parity() {
        let r = pullback_failure_demo(3).unwrap();
        assert_eq!((r.evens.clone(), r.odds.clone()), (vec![0, 2], vec![1, 3]));
        assert_eq!(r.fiber_product_objects, 0);
        assert!(r.lax_fiber_product_objects > 0);
        assert!(r.odd_cofinal && !r.even_cofinal);
        let r = pullback_failure_demo(4).unwrap();
        assert!(r.even_cofinal && !r.odd_cofinal);
        assert!(pullback_failure_demo(1).is_err());
    }
}
