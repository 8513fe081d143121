//! Truncated nerves, the last-element functor on simplices, and the
//! dimension ≤ 1 replacement `V(C) → C`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::category::constructions::assemble;
use crate::category::{
    for_each_functor, functors, identity_name, nat_transform_components, opposite, CatRef, FinCat, FinFunctor,
    FunctorSearch, Mor, Obj,
};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::presheaf::{check_localization_sample, elements, lim_set, Flavor, SetFunctor, Variance};

/// A chain `c0 → c1 → … → ck` of composable morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: Obj,
    pub arrows: Vec<Mor>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn objects(&self, c: &FinCat) -> Vec<Obj> {
        let mut out = vec![self.start];
        out.extend(self.arrows.iter().map(|&f| c.tgt(f)));
        out
    }

    pub fn last(&self, c: &FinCat) -> Obj {
        self.arrows.last().map_or(self.start, |&f| c.tgt(f))
    }

    pub fn is_degenerate(&self, c: &FinCat) -> bool {
        self.arrows.iter().any(|&f| c.is_identity(f))
    }

    /// Composite from position `i` to position `j ≥ i`.
    pub fn span(&self, c: &FinCat, i: usize, j: usize) -> Mor {
        let objs = self.objects(c);
        self.arrows[i..j].iter().fold(c.identity(objs[i]), |acc, &f| c.compose(f, acc))
    }

    pub fn label(&self, c: &FinCat) -> String {
        if self.arrows.is_empty() {
            return format!("({})", c.object_name(self.start));
        }
        let names: Vec<&str> = self.arrows.iter().map(|&f| c.morphism_name(f)).collect();
        format!("({})", names.join(","))
    }
}

/// Monotone maps `[m] → [k]` as value lists, in lexicographic order.
pub fn monotone_maps(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=k {
            cur.push(v);
            go(len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m + 1, k, &mut Vec::new(), &mut out);
    out
}

fn map_name(phi: &[usize]) -> String {
    let parts: Vec<String> = phi.iter().map(|v| v.to_string()).collect();
    format!("<{}>", parts.join(""))
}

/// The simplex category truncated at `[n]`: objects `[0] … [n]`,
/// morphisms the monotone maps.
pub fn delta(n: usize) -> CatRef {
    delta_with_maps(n).0
}

fn delta_with_maps(n: usize) -> (CatRef, Vec<Vec<usize>>) {
    let objects: Vec<String> = (0..=n).map(|k| format!("[{k}]")).collect();
    let mut arrows = Vec::new();
    for m in 0..=n {
        for k in 0..=n {
            for phi in monotone_maps(m, k) {
                let name = if m == k && phi.iter().enumerate().all(|(i, &v)| i == v) {
                    identity_name(&objects[m])
                } else {
                    map_name(&phi)
                };
                arrows.push((m, k, phi, name));
            }
        }
    }
    let (cat, maps) = assemble(objects, arrows, |m| (0..=m).collect::<Vec<usize>>(), |g: &Vec<usize>, f: &Vec<usize>| {
        f.iter().map(|&i| g[i]).collect()
    });
    (Arc::new(cat), maps)
}

/// Chains of length at most `max_dim` with all simplicial structure maps.
pub struct TruncatedNerve {
    cat: CatRef,
    max_dim: usize,
    chains: Vec<Vec<Chain>>,
    index: Vec<HashMap<Chain, usize>>,
}

impl std::fmt::Debug for TruncatedNerve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruncatedNerve").field("max_dim", &self.max_dim).field("counts", &self.chain_counts()).finish()
    }
}

pub fn nerve(c: &CatRef, max_dim: usize, budget: &Budget) -> Result<TruncatedNerve> {
    let mut chains: Vec<Vec<Chain>> = vec![(0..c.num_objects()).map(|o| Chain { start: o, arrows: Vec::new() }).collect()];
    for k in 1..=max_dim {
        let mut level = Vec::new();
        for x in &chains[k - 1] {
            let end = x.last(c);
            for b in 0..c.num_objects() {
                for &f in c.hom(end, b) {
                    budget.tick("enumerating chains")?;
                    let mut arrows = x.arrows.clone();
                    arrows.push(f);
                    level.push(Chain { start: x.start, arrows });
                }
            }
        }
        chains.push(level);
    }
    let index = chains.iter().map(|l| l.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()).collect();
    Ok(TruncatedNerve { cat: c.clone(), max_dim, chains, index })
}

impl TruncatedNerve {
    pub fn cat(&self) -> &CatRef {
        &self.cat
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn chains(&self, k: usize) -> &[Chain] {
        &self.chains[k]
    }

    pub fn chain_index(&self, x: &Chain) -> Option<usize> {
        self.index.get(x.len())?.get(x).copied()
    }

    pub fn chain_counts(&self) -> Vec<usize> {
        self.chains.iter().map(Vec::len).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        self.chains.iter().map(|l| l.iter().filter(|x| !x.is_degenerate(&self.cat)).count()).collect()
    }

    /// The structure map of `φ: [m] → [k]` applied to the `x`-th chain of
    /// length `k`.
    pub fn apply(&self, phi: &[usize], k: usize, x: usize) -> usize {
        let chain = &self.chains[k][x];
        let objs = chain.objects(&self.cat);
        let arrows = phi.windows(2).map(|w| chain.span(&self.cat, w[0], w[1])).collect();
        self.index[phi.len() - 1][&Chain { start: objs[phi[0]], arrows }]
    }

    /// `ψ^* φ^* = (φ ψ)^*` for all monotone maps within the truncation.
    pub fn check_simplicial_identities(&self) -> bool {
        let n = self.max_dim;
        for k in 0..=n {
            for m in 0..=n {
                for phi in monotone_maps(m, k) {
                    for l in 0..=n {
                        for psi in monotone_maps(l, m) {
                            let comp: Vec<usize> = psi.iter().map(|&i| phi[i]).collect();
                            for x in 0..self.chains[k].len() {
                                if self.apply(&psi, m, self.apply(&phi, k, x)) != self.apply(&comp, k, x) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// The nerve as a presheaf on the truncated simplex category.
    pub fn as_presheaf(&self) -> SetFunctor {
        self.presheaf_with_maps().0
    }

    fn presheaf_with_maps(&self) -> (SetFunctor, Vec<Vec<usize>>) {
        let (d, maps) = delta_with_maps(self.max_dim);
        let labels = self.chains.iter().map(|l| l.iter().map(|x| x.label(&self.cat)).collect()).collect();
        let act = (0..d.num_morphisms())
            .map(|f| {
                let k = d.tgt(f);
                (0..self.chains[k].len()).map(|x| self.apply(&maps[f], k, x)).collect()
            })
            .collect();
        (SetFunctor::new_unchecked(d, Variance::Contravariant, labels, act), maps)
    }
}

/// The last-element functor from the category of simplices to `C`.
pub struct Xi {
    pub simplices: crate::presheaf::ElementsCat,
    pub functor: FinFunctor,
}

pub fn xi(n: &TruncatedNerve) -> Result<Xi> {
    if n.max_dim < 1 {
        return Err(Error::PreconditionFailed("the last-element functor needs truncation at least 1".into()));
    }
    let (x, maps) = n.presheaf_with_maps();
    let els = elements(&x, Flavor::Presheaf)?;
    let c = &n.cat;
    let cat = els.cat.clone();
    let obj_map: Vec<Obj> = els.points.iter().map(|&(k, i)| n.chains[k][i].last(c)).collect();
    let mor_map: Vec<Mor> = (0..cat.num_morphisms())
        .map(|f| {
            // φ: ⟨[m], φ^*y⟩ → ⟨[k], y⟩ goes to y_{φ(m)} → y_k
            let phi = &maps[els.proj.mor(f)];
            let (k, y) = els.points[cat.tgt(f)];
            n.chains[k][y].span(c, *phi.last().expect("nonempty monotone map"), k)
        })
        .collect();
    let functor = FinFunctor::new(cat, c.clone(), obj_map, mor_map)?;
    Ok(Xi { simplices: els, functor })
}

/// Visits the maps of truncated nerves `N(C) → N(D)`, each given by its
/// images of objects and morphisms. Higher simplices are forced by their
/// edges; every structure map is checked.
pub fn nerve_maps(a: &TruncatedNerve, b: &TruncatedNerve, budget: &Budget) -> Result<Vec<(Vec<Obj>, Vec<Mor>)>> {
    if a.max_dim != b.max_dim || a.max_dim < 1 {
        return Err(Error::PreconditionFailed("nerves must share a truncation of at least 1".into()));
    }
    let n = a.max_dim;
    let mut out = Vec::new();
    let mut levels: Vec<Vec<usize>> = vec![vec![0; a.chains[0].len()], vec![0; a.chains[1].len()]];
    let maps: Vec<Vec<(usize, Vec<usize>)>> = (0..=n)
        .map(|k| (0..=n).flat_map(|m| monotone_maps(m, k).into_iter().map(move |phi| (m, phi))).collect())
        .collect();
    fn go(
        i: usize,
        a: &TruncatedNerve,
        b: &TruncatedNerve,
        levels: &mut Vec<Vec<usize>>,
        maps: &[Vec<(usize, Vec<usize>)>],
        budget: &Budget,
        out: &mut Vec<(Vec<Obj>, Vec<Mor>)>,
    ) -> Result<()> {
        let (n0, n1) = (a.chains[0].len(), a.chains[1].len());
        if i == n0 + n1 {
            let mut all = levels.clone();
            for k in 2..=a.max_dim {
                let mut level = Vec::with_capacity(a.chains[k].len());
                for x in &a.chains[k] {
                    let arrows: Vec<Mor> = x.arrows.iter().map(|&f| b.chains[1][all[1][f]].arrows[0]).collect();
                    let start = b.chains[0][all[0][x.start]].start;
                    match b.chain_index(&Chain { start, arrows }) {
                        Some(y) => level.push(y),
                        None => return Ok(()),
                    }
                }
                all.push(level);
            }
            for k in 0..=a.max_dim {
                for (m, phi) in &maps[k] {
                    for x in 0..a.chains[k].len() {
                        if all[*m][a.apply(phi, k, x)] != b.apply(phi, k, all[k][x]) {
                            return Ok(());
                        }
                    }
                }
            }
            out.push((all[0].clone(), all[1].iter().map(|&y| b.chains[1][y].arrows[0]).collect()));
            return Ok(());
        }
        let (level, pos) = if i < n0 { (0, i) } else { (1, i - n0) };
        for y in 0..b.chains[level].len() {
            budget.tick("enumerating nerve maps")?;
            if level == 1 {
                // faces of an edge must match the images of its endpoints
                let f = a.chains[1][pos].arrows[0];
                let g = b.chains[1][y].arrows[0];
                let (c, d) = (&a.cat, &b.cat);
                if d.src(g) != levels[0][c.src(f)] || d.tgt(g) != levels[0][c.tgt(f)] {
                    continue;
                }
            }
            levels[level][pos] = y;
            go(i + 1, a, b, levels, maps, budget, out)?;
        }
        Ok(())
    }
    go(0, a, b, &mut levels, &maps, budget, &mut out)?;
    Ok(out)
}

/// A point of `V(C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VPoint {
    Zero(Obj),
    One(Obj),
    Arrow(Mor),
}

/// The replacement poset `V(C)` with `q: V(C) → C`, `q_⊥: V(C) → C^o`
/// and the inverted layer with its projection to the objects.
pub struct VReplacement {
    pub cat: CatRef,
    pub points: Vec<VPoint>,
    pub vposet: Poset,
    pub vcat: CatRef,
    pub q: FinFunctor,
    pub q_perp: FinFunctor,
    /// The layer `⟨1, c⟩ ≤ ⟨o, f⟩` inverted by functors pulled back along `q`.
    pub zero_part: Vec<bool>,
    /// Projection of the inverted layer to the objects of `C`.
    pub p: Vec<Option<Obj>>,
}

pub fn v_replacement(c: &CatRef) -> Result<VReplacement> {
    let (n, m) = (c.num_objects(), c.num_morphisms());
    let mut points: Vec<VPoint> = (0..n).map(VPoint::Zero).collect();
    points.extend((0..n).map(VPoint::One));
    points.extend((0..m).map(VPoint::Arrow));
    let names = points
        .iter()
        .map(|p| match *p {
            VPoint::Zero(o) => format!("⟨0,{}⟩", c.object_name(o)),
            VPoint::One(o) => format!("⟨1,{}⟩", c.object_name(o)),
            VPoint::Arrow(f) => format!("⟨o,{}⟩", c.morphism_name(f)),
        })
        .collect();
    let mut gens = Vec::new();
    for f in 0..m {
        gens.push((c.src(f), 2 * n + f));
        gens.push((n + c.tgt(f), 2 * n + f));
    }
    let vposet = Poset::from_generators(names, &gens)?;
    let vcat = vposet.as_category_ref();
    let cop = Arc::new(opposite(c));
    let q_obj: Vec<Obj> = points
        .iter()
        .map(|p| match *p {
            VPoint::Zero(o) | VPoint::One(o) => o,
            VPoint::Arrow(f) => c.tgt(f),
        })
        .collect();
    let qp_obj: Vec<Obj> = points
        .iter()
        .map(|p| match *p {
            VPoint::Zero(o) | VPoint::One(o) => o,
            VPoint::Arrow(f) => c.src(f),
        })
        .collect();
    let mut q_mor = Vec::with_capacity(vcat.num_morphisms());
    let mut qp_mor = Vec::with_capacity(vcat.num_morphisms());
    for r in 0..vcat.num_morphisms() {
        let (a, b) = (vcat.src(r), vcat.tgt(r));
        match (points[a], points[b]) {
            (VPoint::Zero(_), VPoint::Arrow(f)) => {
                q_mor.push(f);
                qp_mor.push(c.identity(c.src(f)));
            }
            (VPoint::One(_), VPoint::Arrow(f)) => {
                q_mor.push(c.identity(c.tgt(f)));
                qp_mor.push(f);
            }
            _ => {
                q_mor.push(c.identity(q_obj[a]));
                qp_mor.push(c.identity(qp_obj[a]));
            }
        }
    }
    let q = FinFunctor::new(vcat.clone(), c.clone(), q_obj, q_mor)?;
    let q_perp = FinFunctor::new(vcat.clone(), cop, qp_obj, qp_mor)?;
    let zero_part = points.iter().map(|p| !matches!(p, VPoint::Zero(_))).collect();
    let p = points
        .iter()
        .map(|pt| match *pt {
            VPoint::Zero(_) => None,
            VPoint::One(o) => Some(o),
            VPoint::Arrow(f) => Some(c.tgt(f)),
        })
        .collect();
    Ok(VReplacement { cat: c.clone(), points, vposet, vcat, q, q_perp, zero_part, p })
}

impl VReplacement {
    pub fn point_index(&self, p: VPoint) -> usize {
        let n = self.cat.num_objects();
        match p {
            VPoint::Zero(o) => o,
            VPoint::One(o) => n + o,
            VPoint::Arrow(f) => 2 * n + f,
        }
    }

    /// Relations of `V(C)` inside the inverted layer.
    pub fn layer_relations(&self) -> Vec<Mor> {
        (0..self.vcat.num_morphisms())
            .filter(|&r| !self.vcat.is_identity(r) && self.zero_part[self.vcat.src(r)] && self.zero_part[self.vcat.tgt(r)])
            .collect()
    }

    /// Whether a functor `V(C) → E` is of the form `F ∘ q`: it inverts
    /// the layer to identities, sends `⟨0,c⟩ ≤ ⟨o,id_c⟩` to an identity,
    /// and sends relations over composable pairs to composites.
    pub fn in_q_image(&self, f: &FinFunctor) -> bool {
        let (c, e) = (&self.cat, f.cod());
        let v = &self.vcat;
        let rel = |a: VPoint, b: VPoint| v.hom(self.point_index(a), self.point_index(b))[0];
        if self.layer_relations().iter().any(|&r| !e.is_identity(f.mor(r))) {
            return false;
        }
        let image = |g: Mor| f.mor(rel(VPoint::Zero(c.src(g)), VPoint::Arrow(g)));
        (0..c.num_objects()).all(|o| e.is_identity(image(c.identity(o))))
            && (0..c.num_morphisms()).all(|g| {
                (0..c.num_morphisms())
                    .filter(|&h| c.src(h) == c.tgt(g))
                    .all(|h| image(c.compose(h, g)) == e.compose(image(h), image(g)))
            })
    }
}

/// Certificate for `Hom(F, G) ≅ lim_v Hom(F q_⊥ v, G q v)` and for full
/// faithfulness of `q^*` against one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VLocalizationReport {
    pub functors: usize,
    pub pairs: usize,
    pub maps: usize,
    pub bijective: bool,
    pub fully_faithful: bool,
    pub witness: Option<String>,
}

impl VLocalizationReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.fully_faithful
    }
}

/// The functor `v ↦ Hom(F q_⊥ v, G q v)` on `V(C)`.
pub fn v_hom_functor(v: &VReplacement, f: &FinFunctor, g: &FinFunctor) -> SetFunctor {
    let e = f.cod();
    let vc = &v.vcat;
    let homs: Vec<&[Mor]> = (0..vc.num_objects()).map(|p| e.hom(f.ob(v.q_perp.ob(p)), g.ob(v.q.ob(p)))).collect();
    let labels = homs.iter().map(|h| h.iter().map(|&x| e.morphism_name(x).to_string()).collect()).collect();
    let act = (0..vc.num_morphisms())
        .map(|r| {
            let (a, b) = (vc.src(r), vc.tgt(r));
            let pre = f.mor(v.q_perp.mor(r));
            let post = g.mor(v.q.mor(r));
            homs[a]
                .iter()
                .map(|&h| {
                    let x = e.compose(post, e.compose(h, pre));
                    homs[b].iter().position(|&y| y == x).expect("composite lands in the target hom-set")
                })
                .collect()
        })
        .collect();
    SetFunctor::new_unchecked(vc.clone(), Variance::Covariant, labels, act)
}

pub fn verify_v_localization(c: &CatRef, e: &CatRef, budget: &Budget) -> Result<VLocalizationReport> {
    let v = v_replacement(c)?;
    let funs = functors(c, e, budget)?;
    let mut report =
        VLocalizationReport { functors: funs.len(), pairs: 0, maps: 0, bijective: true, fully_faithful: true, witness: None };
    for f in &funs {
        for g in &funs {
            report.pairs += 1;
            let thetas = nat_transform_components(f, g, budget)?;
            let h = v_hom_functor(&v, f, g);
            let sections = lim_set(&h, budget)?;
            let index: HashMap<&[usize], usize> = sections.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let mut hit = vec![false; sections.len()];
            for theta in &thetas {
                let family: Vec<usize> = (0..v.vcat.num_objects())
                    .map(|p| {
                        let x = match v.points[p] {
                            VPoint::Zero(o) | VPoint::One(o) => theta[o],
                            VPoint::Arrow(k) => e.compose(g.mor(k), theta[c.src(k)]),
                        };
                        e.hom(f.ob(v.q_perp.ob(p)), g.ob(v.q.ob(p))).iter().position(|&y| y == x).expect("component in hom-set")
                    })
                    .collect();
                match index.get(family.as_slice()) {
                    Some(&i) if !hit[i] => hit[i] = true,
                    _ => {
                        report.bijective = false;
                    }
                }
            }
            report.maps += thetas.len();
            if hit.iter().any(|h| !h) || thetas.len() != sections.len() {
                report.bijective = false;
            }
            if !report.bijective && report.witness.is_none() {
                report.witness = Some(format!(
                    "{} natural maps against {} compatible families for F = {:?}, G = {:?}",
                    thetas.len(),
                    sections.len(),
                    f.obj_map(),
                    g.obj_map()
                ));
            }
        }
    }
    let loc = check_localization_sample(&v.q, std::slice::from_ref(e), budget)?;
    report.fully_faithful = loc.holds;
    if !loc.holds && report.witness.is_none() {
        report.witness = loc.witness;
    }
    Ok(report)
}

/// Both sides of the square comparing `Fun(C, E)` with functors on `V(C)`
/// that invert the layer over the objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VSquareReport {
    /// `|Fun(C, E)|`.
    pub from_c: usize,
    /// Compatible pairs in the fibre product of the other three corners.
    pub fiber_pairs: usize,
    /// Functors on `V(C)` in the image of `q^*`.
    pub image: usize,
    /// The exact image test agrees with `q^*` on every functor.
    pub image_agrees: bool,
    pub cartesian: bool,
    /// A compatible pair not coming from `C`.
    pub witness: Option<Vec<Obj>>,
}

pub fn verify_v_square(c: &CatRef, e: &CatRef, budget: &Budget) -> Result<VSquareReport> {
    let v = v_replacement(c)?;
    let from_c = functors(c, e, budget)?;
    let pulled: std::collections::HashSet<(Vec<Obj>, Vec<Mor>)> =
        from_c.iter().map(|f| f.after(&v.q)).map(|f| (f.obj_map().to_vec(), f.mor_map().to_vec())).collect();
    let layer = v.layer_relations();
    let filter = |r: Mor, x: Mor| !layer.contains(&r) || e.is_identity(x);
    let spec = FunctorSearch { morphism_filter: Some(&filter), ..FunctorSearch::default() };
    let mut report =
        VSquareReport { from_c: from_c.len(), fiber_pairs: 0, image: 0, image_agrees: true, cartesian: true, witness: None };
    let mut image_agrees = true;
    let mut witness = None;
    let mut fiber_pairs = 0;
    let mut image = 0;
    for_each_functor(&v.vcat, e, &spec, budget, &mut |objs, mors| {
        // the object functor C_0 → E is forced by the layer
        fiber_pairs += 1;
        let f = FinFunctor::new_unchecked(v.vcat.clone(), e.clone(), objs.to_vec(), mors.to_vec());
        let is_pulled = pulled.contains(&(objs.to_vec(), mors.to_vec()));
        if v.in_q_image(&f) != is_pulled {
            image_agrees = false;
        }
        if is_pulled {
            image += 1;
        } else if witness.is_none() {
            witness = Some(objs.to_vec());
        }
        true
    })?;
    report.fiber_pairs = fiber_pairs;
    report.image = image;
    report.image_agrees = image_agrees && image == from_c.len();
    report.cartesian = fiber_pairs == from_c.len();
    report.witness = witness;
    Ok(report)
}

/// The swap `⟨0,c⟩ ↔ ⟨1,c⟩` is an order isomorphism `V(C) ≅ V(C^o)`
/// exchanging `q` and `q_⊥` on objects.
pub fn check_v_swap(c: &CatRef) -> Result<bool> {
    let v = v_replacement(c)?;
    let w = v_replacement(&Arc::new(opposite(c)))?;
    let swap: Vec<usize> = v
        .points
        .iter()
        .map(|p| match *p {
            VPoint::Zero(o) => w.point_index(VPoint::One(o)),
            VPoint::One(o) => w.point_index(VPoint::Zero(o)),
            VPoint::Arrow(f) => w.point_index(VPoint::Arrow(f)),
        })
        .collect();
    let n = v.vposet.len();
    let iso = (0..n).all(|a| (0..n).all(|b| v.vposet.le(a, b) == w.vposet.le(swap[a], swap[b])));
    let exchange = (0..n).all(|a| w.q.ob(swap[a]) == v.q_perp.ob(a) && w.q_perp.ob(swap[a]) == v.q.ob(a));
    Ok(iso && exchange)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::karoubi_closure;

    fn arrow() -> CatRef {
        Poset::chain(1).as_category_ref()
    }

    fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    #[test]
    fn chain_counts() {
        let b = Budget::default();
        assert_eq!(nerve(&arrow(), 2, &b).unwrap().chain_counts(), vec![2, 3, 4]);
        assert_eq!(nerve(&Arc::new(FinCat::point()), 3, &b).unwrap().chain_counts(), vec![1; 4]);
        assert_eq!(nerve(&projector(), 3, &b).unwrap().nondegenerate_counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn simplicial_identities() {
        let b = Budget::default();
        for c in [arrow(), projector(), Poset::chain(2).as_category_ref()] {
            assert!(nerve(&c, 3, &b).unwrap().check_simplicial_identities());
        }
    }

    #[test]
    fn delta_counts() {
        // monotone maps [m] → [k] for m, k ≤ 1: 1 + 2 + 3 + 1 = 7
        assert_eq!(delta(1).num_morphisms(), 7);
        delta(2).check_laws().unwrap();
    }

    #[test]
    fn last_element_functor() {
        let b = Budget::default();
        let n = nerve(&arrow(), 2, &b).unwrap();
        let x = xi(&n).unwrap();
        let c = &x.simplices;
        let edge = n.chain_index(&Chain { start: 0, arrows: vec![n.cat().hom(0, 1)[0]] }).unwrap();
        assert_eq!(x.functor.ob(c.point_index(1, edge).unwrap()), 1);
        assert_eq!(x.functor.ob(c.point_index(0, 0).unwrap()), 0);
        let degenerate = n.chain_index(&Chain { start: 0, arrows: vec![0] }).unwrap();
        assert_eq!(x.functor.ob(c.point_index(1, degenerate).unwrap()), 0);
    }

    #[test]
    fn nerve_is_fully_faithful() {
        let b = Budget::default();
        for (c, d) in [(arrow(), arrow()), (projector(), arrow()), (arrow(), projector()), (projector(), projector())] {
            let (nc, nd) = (nerve(&c, 2, &b).unwrap(), nerve(&d, 2, &b).unwrap());
            let maps = nerve_maps(&nc, &nd, &b).unwrap();
            assert_eq!(maps.len(), functors(&c, &d, &b).unwrap().len());
        }
    }

    #[test]
    fn replacement_shapes() {
        let v = v_replacement(&Arc::new(FinCat::point())).unwrap();
        assert_eq!(v.vposet.len(), 3);
        let v = v_replacement(&arrow()).unwrap();
        assert_eq!(v.vposet.len(), 7);
        assert_eq!(v.vposet.strict_pairs().count(), 6);
        assert!(v.vposet.dimension() <= 1);
        assert!(check_v_swap(&arrow()).unwrap());
        assert!(check_v_swap(&projector()).unwrap());
    }

    #[test]
    fn localization_examples() {
        let b = Budget::default();
        let r = verify_v_localization(&Arc::new(FinCat::point()), &arrow(), &b).unwrap();
        assert!(r.holds());
        assert_eq!(r.maps, 3);
        assert!(verify_v_localization(&arrow(), &arrow(), &b).unwrap().holds());
        let p = projector();
        assert!(verify_v_localization(&p, &karoubi_closure(&p).cat, &b).unwrap().holds());
    }

    #[test]
    fn square_is_not_cartesian_for_strict_functors() {
        let b = Budget::default();
        let pt = Arc::new(FinCat::point());
        let r = verify_v_square(&pt, &arrow(), &b).unwrap();
        assert!(r.image_agrees);
        assert_eq!(r.from_c, 2);
        assert!(!r.cartesian);
        assert_eq!(r.witness, Some(vec![0, 1, 1]));
        let r = verify_v_square(&pt, &Arc::new(FinCat::discrete(&["u", "v"])), &b).unwrap();
        assert!(r.cartesian);
        let r = verify_v_square(&arrow(), &Poset::chain(2).as_category_ref(), &b).unwrap();
        assert!(r.image_agrees);
        assert_eq!(r.image, r.from_c);
    }

    #[test]
    fn non_inverting_functor_is_outside_the_image() {
        let v = v_replacement(&arrow()).unwrap();
        let e = arrow();
        let b = Budget::default();
        let mut found = false;
        for_each_functor(&v.vcat, &e, &FunctorSearch::default(), &b, &mut |objs, mors| {
            let f = FinFunctor::new_unchecked(v.vcat.clone(), e.clone(), objs.to_vec(), mors.to_vec());
            if v.layer_relations().iter().any(|&r| !e.is_identity(f.mor(r))) {
                assert!(!v.in_q_image(&f));
                found = true;
            }
            true
        })
        .unwrap();
        assert!(found);
    }
}
