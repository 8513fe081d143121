//! Kan extensions by the comma-fiber formula, cofinality and the checks
//! built on them.

use std::collections::HashMap;

use super::{colim_set, elements_of, hom_presheaves, lim_set, representable, SetColimit, SetFunctor, SetNatMap, Variance};
use crate::budget::Budget;
use crate::category::{
    connected_components, functors, left_comma_fiber, nat_transform_components, right_comma_fiber, CatRef, FinFunctor,
    Mor, Obj,
};
use crate::error::{Error, Result};

/// `γ` itself for covariant functors, `γ^o` for presheaves.
fn frame(gamma: &FinFunctor, variance: Variance) -> FinFunctor {
    match variance {
        Variance::Covariant => gamma.clone(),
        Variance::Contravariant => gamma.opposite(),
    }
}

fn in_frame(x: &SetFunctor, base: &CatRef) -> SetFunctor {
    match x.variance() {
        Variance::Covariant => x.clone(),
        Variance::Contravariant => x.on_opposite(base),
    }
}

fn check_base(gamma: &FinFunctor, x: &SetFunctor) -> Result<()> {
    if **gamma.dom() != **x.base() {
        return Err(Error::SetFunctor("the functor lives on a different category".into()));
    }
    Ok(())
}

/// `γ^* a`.
pub fn pullback_map(a: &SetNatMap, gamma: &FinFunctor) -> SetNatMap {
    SetNatMap { components: (0..gamma.dom().num_objects()).map(|i| a.components[gamma.ob(i)].clone()).collect() }
}

struct LeftFiber {
    index: HashMap<(Obj, Mor), usize>,
    points: Vec<(Obj, Mor)>,
    colim: SetColimit,
}

/// `γ_! X` with its classes `[(i, α, x)]`.
///
/// For a covariant `X` on `I`, `α: γ(i) → i′`; for a presheaf the
/// extension is along `γ^o` and `α: i′ → γ(i)`.
pub struct LeftKan {
    pub value: SetFunctor,
    frame: FinFunctor,
    fibers: Vec<LeftFiber>,
}

impl LeftKan {
    pub fn class_of(&self, target: Obj, i: Obj, alpha: Mor, x: usize) -> usize {
        let fib = &self.fibers[target];
        fib.colim.class_of[fib.index[&(i, alpha)]][x]
    }

    /// Least member `(i, α, x)` of a class.
    pub fn representative(&self, target: Obj, class: usize) -> (Obj, Mor, usize) {
        let fib = &self.fibers[target];
        let (p, x) = fib.colim.classes[class][0];
        let (i, alpha) = fib.points[p];
        (i, alpha, x)
    }

    /// `X → γ^* γ_! X`, `x ↦ [(i, id, x)]`.
    pub fn unit(&self, x: &SetFunctor) -> SetNatMap {
        let cod = self.frame.cod();
        let components = (0..x.base().num_objects())
            .map(|i| {
                let gi = self.frame.ob(i);
                (0..x.size(i)).map(|a| self.class_of(gi, i, cod.identity(gi), a)).collect()
            })
            .collect();
        SetNatMap { components }
    }

    /// For `self = γ_! γ^* Y`: `γ_! γ^* Y → Y`, `[(i, α, y)] ↦ Y(α)(y)`.
    pub fn counit(&self, y: &SetFunctor) -> SetNatMap {
        let components = (0..self.fibers.len())
            .map(|t| {
                (0..self.value.size(t))
                    .map(|k| {
                        let (_, alpha, a) = self.representative(t, k);
                        y.apply(alpha, a)
                    })
                    .collect()
            })
            .collect();
        SetNatMap { components }
    }

    /// `γ_! b` for `b: X → X′`, where `to = γ_! X′`.
    pub fn map(&self, to: &LeftKan, b: &SetNatMap) -> SetNatMap {
        let components = (0..self.fibers.len())
            .map(|t| {
                (0..self.value.size(t))
                    .map(|k| {
                        let (i, alpha, a) = self.representative(t, k);
                        to.class_of(t, i, alpha, b.components[i][a])
                    })
                    .collect()
            })
            .collect();
        SetNatMap { components }
    }
}

/// Left Kan extension `γ_! X`, pointwise a colimit over `C/i′`.
pub fn kan_left(gamma: &FinFunctor, x: &SetFunctor) -> Result<LeftKan> {
    check_base(gamma, x)?;
    let fr = frame(gamma, x.variance());
    let xc = in_frame(x, fr.dom());
    let (dom, cod) = (fr.dom(), fr.cod());
    let mut fibers = Vec::with_capacity(cod.num_objects());
    let mut labels = Vec::with_capacity(cod.num_objects());
    for t in 0..cod.num_objects() {
        let fib = left_comma_fiber(&fr, t);
        let colim = colim_set(&xc.pullback(&fib.proj)?);
        labels.push(
            colim
                .classes
                .iter()
                .map(|cl| {
                    let (p, a) = cl[0];
                    let (i, alpha) = fib.points[p];
                    format!("[{},{},{}]", dom.object_name(i), cod.morphism_name(alpha), x.label(i, a))
                })
                .collect(),
        );
        let index = fib.points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        fibers.push(LeftFiber { index, points: fib.points, colim });
    }
    let mut kan = LeftKan { value: SetFunctor::point(gamma.cod(), x.variance()), frame: fr, fibers };
    let cod = kan.frame.cod().clone();
    let act = (0..cod.num_morphisms())
        .map(|g| {
            let (s, t) = (cod.src(g), cod.tgt(g));
            (0..kan.fibers[s].colim.len())
                .map(|k| {
                    let (i, alpha, a) = kan.representative(s, k);
                    kan.class_of(t, i, cod.compose(g, alpha), a)
                })
                .collect()
        })
        .collect();
    kan.value = SetFunctor::new_unchecked(gamma.cod().clone(), x.variance(), labels, act);
    Ok(kan)
}

struct RightFiber {
    index: HashMap<(Obj, Mor), usize>,
    points: Vec<(Obj, Mor)>,
    sections: Vec<Vec<usize>>,
    section_index: HashMap<Vec<usize>, usize>,
}

/// `γ_* X` with families indexed by `i′ ∖ I`.
pub struct RightKan {
    pub value: SetFunctor,
    frame: FinFunctor,
    fibers: Vec<RightFiber>,
}

impl RightKan {
    /// Entries of a family, one per `(i, β)` in [`RightKan::points`].
    pub fn family(&self, target: Obj, atom: usize) -> &[usize] {
        &self.fibers[target].sections[atom]
    }

    pub fn points(&self, target: Obj) -> &[(Obj, Mor)] {
        &self.fibers[target].points
    }

    fn atom_of(&self, target: Obj, family: &[usize]) -> usize {
        self.fibers[target].section_index[family]
    }

    /// For `self = γ_* γ^* Y`: `Y → γ_* γ^* Y`, `y ↦ (Y(β) y)`.
    pub fn unit(&self, y: &SetFunctor) -> SetNatMap {
        let components = (0..self.fibers.len())
            .map(|t| {
                (0..y.size(t))
                    .map(|a| {
                        let family: Vec<usize> = self.fibers[t].points.iter().map(|&(_, beta)| y.apply(beta, a)).collect();
                        self.atom_of(t, &family)
                    })
                    .collect()
            })
            .collect();
        SetNatMap { components }
    }

    /// `γ^* γ_* X → X`, a family at `γ(i)` goes to its entry at `(i, id)`.
    pub fn counit(&self, x: &SetFunctor) -> SetNatMap {
        let cod = self.frame.cod();
        let components = (0..x.base().num_objects())
            .map(|i| {
                let gi = self.frame.ob(i);
                let p = self.fibers[gi].index[&(i, cod.identity(gi))];
                self.fibers[gi].sections.iter().map(|s| s[p]).collect()
            })
            .collect();
        SetNatMap { components }
    }

    /// `γ_* a` for `a: X → X′`, where `to = γ_* X′`.
    pub fn map(&self, to: &RightKan, a: &SetNatMap) -> SetNatMap {
        let components = (0..self.fibers.len())
            .map(|t| {
                let fib = &self.fibers[t];
                fib.sections
                    .iter()
                    .map(|s| {
                        let family: Vec<usize> =
                            s.iter().zip(&fib.points).map(|(&v, &(i, _))| a.components[i][v]).collect();
                        to.atom_of(t, &family)
                    })
                    .collect()
            })
            .collect();
        SetNatMap { components }
    }
}

/// Right Kan extension `γ_* X`, pointwise a limit over `i′ ∖ I`.
pub fn kan_right(gamma: &FinFunctor, x: &SetFunctor, budget: &Budget) -> Result<RightKan> {
    check_base(gamma, x)?;
    let fr = frame(gamma, x.variance());
    let xc = in_frame(x, fr.dom());
    let cod = fr.cod().clone();
    let mut fibers = Vec::with_capacity(cod.num_objects());
    let mut labels = Vec::with_capacity(cod.num_objects());
    for t in 0..cod.num_objects() {
        let fib = right_comma_fiber(&fr, t);
        let sections = lim_set(&xc.pullback(&fib.proj)?, budget)?;
        labels.push(
            sections
                .iter()
                .map(|s| {
                    let entries: Vec<&str> = s.iter().zip(&fib.points).map(|(&v, &(i, _))| x.label(i, v)).collect();
                    format!("({})", entries.join(","))
                })
                .collect(),
        );
        let index = fib.points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let section_index = sections.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        fibers.push(RightFiber { index, points: fib.points, sections, section_index });
    }
    let mut kan = RightKan { value: SetFunctor::point(gamma.cod(), x.variance()), frame: fr, fibers };
    let act = (0..cod.num_morphisms())
        .map(|g| {
            let (s, t) = (cod.src(g), cod.tgt(g));
            (0..kan.fibers[s].sections.len())
                .map(|k| {
                    let src = &kan.fibers[s];
                    let family: Vec<usize> = kan.fibers[t]
                        .points
                        .iter()
                        .map(|&(i, beta)| src.sections[k][src.index[&(i, cod.compose(beta, g))]])
                        .collect();
                    kan.atom_of(t, &family)
                })
                .collect()
        })
        .collect();
    kan.value = SetFunctor::new_unchecked(gamma.cod().clone(), x.variance(), labels, act);
    Ok(kan)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `|Hom(γ_! X, Y)|` and `|Hom(X, γ^* Y)|`.
    pub left_homs: (usize, usize),
    /// `|Hom(γ^* Y, X)|` and `|Hom(Y, γ_* X)|`.
    pub right_homs: (usize, usize),
    pub left_bijective: bool,
    pub right_bijective: bool,
    pub left_triangles: bool,
    pub right_triangles: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.left_bijective && self.right_bijective && self.left_triangles && self.right_triangles
    }
}

fn mutually_inverse(
    lhs: &[SetNatMap],
    rhs: &[SetNatMap],
    phi: impl Fn(&SetNatMap) -> SetNatMap,
    psi: impl Fn(&SetNatMap) -> SetNatMap,
) -> bool {
    lhs.len() == rhs.len()
        && lhs.iter().all(|a| {
            let b = phi(a);
            rhs.contains(&b) && psi(&b) == *a
        })
        && rhs.iter().all(|b| phi(&psi(b)) == *b)
}

/// Checks both adjunctions `γ_! ⊣ γ^* ⊣ γ_*` on `X` (on the domain) and
/// `Y` (on the codomain) through explicit units and counits.
pub fn check_kan_adjunction(gamma: &FinFunctor, x: &SetFunctor, y: &SetFunctor, budget: &Budget) -> Result<AdjunctionReport> {
    if x.variance() != y.variance() {
        return Err(Error::VarianceMismatch("X and Y must have the same variance".into()));
    }
    let ystar = y.pullback(gamma)?;

    let lk = kan_left(gamma, x)?;
    let lky = kan_left(gamma, &ystar)?;
    let eta = lk.unit(x);
    let eps = lky.counit(y);
    let hl = hom_presheaves(&lk.value, y, budget)?;
    let hr = hom_presheaves(x, &ystar, budget)?;
    let left_bijective = mutually_inverse(&hl, &hr, |a| pullback_map(a, gamma).after(&eta), |b| eps.after(&lk.map(&lky, b)));
    let lk2 = kan_left(gamma, &lk.value.pullback(gamma)?)?;
    let first = lk2.counit(&lk.value).after(&lk.map(&lk2, &eta));
    let second = pullback_map(&eps, gamma).after(&lky.unit(&ystar));
    let left_triangles = first == SetNatMap::identity(&lk.value) && second == SetNatMap::identity(&ystar);

    let rk = kan_right(gamma, x, budget)?;
    let rky = kan_right(gamma, &ystar, budget)?;
    let eta = rky.unit(y);
    let eps = rk.counit(x);
    let gl = hom_presheaves(&ystar, x, budget)?;
    let gr = hom_presheaves(y, &rk.value, budget)?;
    let right_bijective = mutually_inverse(&gl, &gr, |a| rky.map(&rk, a).after(&eta), |b| eps.after(&pullback_map(b, gamma)));
    let rk2 = kan_right(gamma, &rk.value.pullback(gamma)?, budget)?;
    let first = rk2.map(&rk, &eps).after(&rk2.unit(&rk.value));
    let second = rky.counit(&ystar).after(&pullback_map(&eta, gamma));
    let right_triangles = first == SetNatMap::identity(&rk.value) && second == SetNatMap::identity(&ystar);

    Ok(AdjunctionReport {
        left_homs: (hl.len(), hr.len()),
        right_homs: (gl.len(), gr.len()),
        left_bijective,
        right_bijective,
        left_triangles,
        right_triangles,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalityReport {
    pub holds: bool,
    /// An object whose comma-fiber is empty or disconnected.
    pub witness: Option<Obj>,
    /// Number of components of the witness fiber.
    pub components: usize,
}

fn fibers_connected(gamma: &FinFunctor, right: bool) -> CofinalityReport {
    for t in 0..gamma.cod().num_objects() {
        let fib = if right { right_comma_fiber(gamma, t) } else { left_comma_fiber(gamma, t) };
        let components = connected_components(&fib.cat).len();
        if components != 1 {
            return CofinalityReport { holds: false, witness: Some(t), components };
        }
    }
    CofinalityReport { holds: true, witness: None, components: 1 }
}

/// `γ: I → I′` is cofinal iff every `i′ ∖ I` is nonempty and connected.
pub fn check_cofinal(gamma: &FinFunctor) -> CofinalityReport {
    fibers_connected(gamma, true)
}

/// Dual of [`check_cofinal`], with the fibers `I / i′`.
pub fn check_final(gamma: &FinFunctor) -> CofinalityReport {
    fibers_connected(gamma, false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationReport {
    pub holds: bool,
    pub targets: usize,
    pub pairs: usize,
    pub witness: Option<String>,
}

/// Full faithfulness of `γ^*: Fun(I′, E) → Fun(I, E)` for each listed `E`.
pub fn check_localization_sample(gamma: &FinFunctor, targets: &[CatRef], budget: &Budget) -> Result<LocalizationReport> {
    let mut pairs = 0;
    for e in targets {
        let funs = functors(gamma.cod(), e, budget)?;
        let pulled: Vec<FinFunctor> = funs.iter().map(|f| f.after(gamma)).collect();
        for (a, f) in funs.iter().enumerate() {
            for (b, g) in funs.iter().enumerate() {
                pairs += 1;
                let full = nat_transform_components(f, g, budget)?;
                let restricted = nat_transform_components(&pulled[a], &pulled[b], budget)?;
                let mut images: Vec<Vec<Mor>> = full
                    .iter()
                    .map(|comp| (0..gamma.dom().num_objects()).map(|i| comp[gamma.ob(i)]).collect())
                    .collect();
                images.sort();
                images.dedup();
                if images.len() != full.len() || images.len() != restricted.len() {
                    return Ok(LocalizationReport {
                        holds: false,
                        targets: targets.len(),
                        pairs,
                        witness: Some(format!(
                            "target {e:?}: {} maps between the functors, {} between their restrictions",
                            full.len(),
                            restricted.len()
                        )),
                    });
                }
            }
        }
    }
    Ok(LocalizationReport { holds: true, targets: targets.len(), pairs, witness: None })
}

/// The functor `α: I′X′ → IX`, `⟨i′,x′⟩ ↦ ⟨γ(i′), a^†(x′)⟩`, for
/// `a: γ^o_! X′ → X`.
pub fn elements_map(gamma: &FinFunctor, xp: &SetFunctor, x: &SetFunctor, a: &SetNatMap) -> Result<FinFunctor> {
    if xp.variance() != Variance::Contravariant || x.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch("elements_map takes presheaves".into()));
    }
    let lk = kan_left(gamma, xp)?;
    if !a.is_natural(&lk.value, x) {
        return Err(Error::SetFunctor("a is not a natural map out of the left Kan extension".into()));
    }
    let (src, tgt) = (elements_of(xp), elements_of(x));
    let cod = gamma.cod();
    let obj_map: Vec<Obj> = src
        .points
        .iter()
        .map(|&(i, v)| {
            let gi = gamma.ob(i);
            let dagger = a.components[gi][lk.class_of(gi, i, cod.identity(gi), v)];
            tgt.point_index(gi, dagger).unwrap()
        })
        .collect();
    let mor_map = (0..src.cat.num_morphisms())
        .map(|m| {
            let base = gamma.mor(src.proj.mor(m));
            let (s, t) = (obj_map[src.cat.src(m)], obj_map[src.cat.tgt(m)]);
            *tgt.cat.hom(s, t).iter().find(|&&k| tgt.proj.mor(k) == base).expect("α is functorial")
        })
        .collect();
    FinFunctor::new(src.cat, tgt.cat, obj_map, mor_map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalIsoReport {
    pub iso: bool,
    pub cofinal: bool,
}

impl CofinalIsoReport {
    pub fn agree(&self) -> bool {
        self.iso == self.cofinal
    }
}

/// Evaluates both sides of "α is cofinal iff a is an isomorphism".
pub fn cofinal_iff_iso_check(gamma: &FinFunctor, xp: &SetFunctor, x: &SetFunctor, a: &SetNatMap) -> Result<CofinalIsoReport> {
    let lk = kan_left(gamma, xp)?;
    let iso = a.is_iso(&lk.value, x);
    let alpha = elements_map(gamma, xp, x, a)?;
    Ok(CofinalIsoReport { iso, cofinal: check_cofinal(&alpha).holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YonedaDecomposition {
    /// Number of objects of `IX`.
    pub indices: usize,
    /// `colim_{IX} Y(π⟨i,x⟩)(c) → X(c)` is bijective for every `c`.
    pub pointwise: bool,
    pub targets: usize,
    /// Cocones to each target correspond to maps out of `X`.
    pub universal: bool,
    pub witness: Option<usize>,
}

impl YonedaDecomposition {
    pub fn holds(&self) -> bool {
        self.pointwise && self.universal
    }
}

/// Certifies `X ≅ colim_{IX} Y(π⟨i,x⟩)` pointwise and by the universal
/// property against the presheaves in `targets`.
pub fn yoneda_colimit_decomposition(x: &SetFunctor, targets: &[SetFunctor], budget: &Budget) -> Result<YonedaDecomposition> {
    if x.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch("the decomposition is stated for presheaves".into()));
    }
    let c = x.base().clone();
    let el = elements_of(x);
    let mut pointwise = true;
    for o in 0..c.num_objects() {
        // the diagram c ↦ ⊔_p Hom(c, i_p) modulo post-composition
        let mut offsets = Vec::new();
        let mut members = Vec::new();
        for (p, &(i, _)) in el.points.iter().enumerate() {
            offsets.push(members.len());
            members.extend(c.hom(o, i).iter().map(|&h| (p, h)));
        }
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(members.len());
        for m in 0..el.cat.num_morphisms() {
            let (s, t) = (el.cat.src(m), el.cat.tgt(m));
            let f = el.proj.mor(m);
            for (k, &h) in c.hom(o, el.points[s].0).iter().enumerate() {
                let image = c.compose(f, h);
                let j = c.hom(o, el.points[t].0).iter().position(|&g| g == image).unwrap();
                uf.union(offsets[s] + k, offsets[t] + j);
            }
        }
        let mut value_of_root: HashMap<usize, usize> = HashMap::new();
        let mut hit = vec![false; x.size(o)];
        for (k, &(p, h)) in members.iter().enumerate() {
            let v = x.apply(h, el.points[p].1);
            let r = uf.find(k);
            match value_of_root.get(&r) {
                Some(&w) if w != v => pointwise = false,
                Some(_) => {}
                None => {
                    pointwise &= !hit[v];
                    hit[v] = true;
                    value_of_root.insert(r, v);
                }
            }
        }
        pointwise &= hit.iter().all(|&b| b);
    }
    let mut universal = true;
    let mut witness = None;
    for (k, z) in targets.iter().enumerate() {
        if z.variance() != Variance::Contravariant || **z.base() != *c {
            return Err(Error::SetFunctor("targets must be presheaves on the same base".into()));
        }
        let maps = hom_presheaves(x, z, budget)?;
        let cocones = lim_set(&z.pullback(&el.proj)?, budget)?;
        let mut images: Vec<Vec<usize>> =
            maps.iter().map(|b| el.points.iter().map(|&(i, v)| b.components[i][v]).collect()).collect();
        images.sort();
        images.dedup();
        if images.len() != maps.len() || maps.len() != cocones.len() {
            universal = false;
            witness = Some(k);
            break;
        }
    }
    Ok(YonedaDecomposition { indices: el.points.len(), pointwise, targets: targets.len(), universal, witness })
}

/// Checks `γ^o_! Y(i) ≅ Y(γ(i))` via `[(j, α, g)] ↦ γ(g) ∘ α`; returns
/// the first `i` where the comparison is not a natural bijection.
pub fn check_yoneda_square(gamma: &FinFunctor) -> Result<Option<Obj>> {
    let (dom, cod) = (gamma.dom(), gamma.cod());
    for i in 0..dom.num_objects() {
        let yi = representable(dom, i);
        let lk = kan_left(gamma, &yi)?;
        let target = representable(cod, gamma.ob(i));
        let components: Vec<Vec<usize>> = (0..cod.num_objects())
            .map(|t| {
                (0..lk.value.size(t))
                    .map(|k| {
                        let (j, alpha, g) = lk.representative(t, k);
                        let g = dom.hom(j, i)[g];
                        let h = cod.compose(gamma.mor(g), alpha);
                        cod.hom(t, gamma.ob(i)).iter().position(|&m| m == h).unwrap()
                    })
                    .collect()
            })
            .collect();
        let cmp = SetNatMap { components };
        if !cmp.is_natural(&lk.value, &target) || !cmp.is_iso(&lk.value, &target) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementsKanReport {
    /// `π^o_! pt ≅ X` via `[(⟨i,x⟩, α, *)] ↦ X(α)(x)`.
    pub recovers_x: bool,
    pub maps_checked: usize,
    /// Every checked map inverted by `π^o_!` was already invertible.
    pub conservative: bool,
}

/// Kan extension along the projection `π: IX → I`; conservativity is
/// tested on all maps between the given presheaves on `IX`.
pub fn elements_kan_check(x: &SetFunctor, on_elements: &[SetFunctor], budget: &Budget) -> Result<ElementsKanReport> {
    if x.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch("expected a presheaf".into()));
    }
    let el = elements_of(x);
    let pt = SetFunctor::point(&el.cat, Variance::Contravariant);
    let lk = kan_left(&el.proj, &pt)?;
    let components: Vec<Vec<usize>> = (0..x.base().num_objects())
        .map(|t| {
            (0..lk.value.size(t))
                .map(|k| {
                    let (p, alpha, _) = lk.representative(t, k);
                    x.apply(alpha, el.points[p].1)
                })
                .collect()
        })
        .collect();
    let cmp = SetNatMap { components };
    let recovers_x = cmp.is_natural(&lk.value, x) && cmp.is_iso(&lk.value, x);
    let kans: Vec<LeftKan> = on_elements.iter().map(|a| kan_left(&el.proj, a)).collect::<Result<_>>()?;
    let mut maps_checked = 0;
    let mut conservative = true;
    for (s, a) in on_elements.iter().enumerate() {
        for (t, b) in on_elements.iter().enumerate() {
            for f in hom_presheaves(a, b, budget)? {
                maps_checked += 1;
                let pushed = kans[s].map(&kans[t], &f);
                if pushed.is_iso(&kans[s].value, &kans[t].value) && !f.is_iso(a, b) {
                    conservative = false;
                }
            }
        }
    }
    Ok(ElementsKanReport { recovers_x, maps_checked, conservative })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::{comma_category, CommaSide, FinCat};
    use crate::poset::Poset;

    fn arrow() -> CatRef {
        Poset::chain(1).as_category_ref()
    }

    fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    fn inclusion(c: &CatRef, o: Obj) -> FinFunctor {
        let pt = Arc::new(FinCat::point());
        FinFunctor::new(pt, c.clone(), vec![o], vec![c.identity(o)]).unwrap()
    }

    #[test]
    fn kan_extensions_to_a_point_are_coproduct_and_product() {
        let d = Arc::new(FinCat::discrete(&["a", "b"]));
        let pt = Arc::new(FinCat::point());
        let gamma = FinFunctor::constant(&d, &pt, 0);
        let x = SetFunctor::from_sizes(d, Variance::Covariant, &[2, 3], vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(kan_left(&gamma, &x).unwrap().value.size(0), 5);
        assert_eq!(kan_right(&gamma, &x, &Budget::default()).unwrap().value.size(0), 6);
    }

    #[test]
    fn kan_along_identity_is_identity() {
        let p = projector();
        let x = SetFunctor::from_sizes(p.clone(), Variance::Covariant, &[2], vec![vec![0, 1], vec![0, 0]]).unwrap();
        let id = FinFunctor::identity(&p);
        let lk = kan_left(&id, &x).unwrap();
        assert!(crate::presheaf::find_set_iso(&lk.value, &x, &Budget::default()).unwrap().is_some());
    }

    #[test]
    fn extending_point_from_zero_into_arrow() {
        let c = arrow();
        let gamma = inclusion(&c, 0);
        let pt = SetFunctor::point(gamma.dom(), Variance::Covariant);
        let lk = kan_left(&gamma, &pt).unwrap();
        assert_eq!(lk.value.sizes(), vec![1, 1]);
        let lk = kan_left(&gamma, &SetFunctor::point(gamma.dom(), Variance::Contravariant)).unwrap();
        assert_eq!(lk.value.sizes(), vec![1, 0]);
    }

    #[test]
    fn adjunctions_hold_on_small_examples() {
        let c = arrow();
        let gamma = inclusion(&c, 0);
        let x = SetFunctor::from_sizes(gamma.dom().clone(), Variance::Covariant, &[2], vec![vec![0, 1]]).unwrap();
        let y = SetFunctor::from_sizes(c.clone(), Variance::Covariant, &[2, 1], vec![vec![0, 1], vec![0, 0], vec![0]]).unwrap();
        let r = check_kan_adjunction(&gamma, &x, &y, &Budget::default()).unwrap();
        assert!(r.holds(), "{r:?}");
        let p = projector();
        let to_pt = FinFunctor::constant(&p, &Arc::new(FinCat::point()), 0);
        let x = SetFunctor::from_sizes(p, Variance::Contravariant, &[3], vec![vec![0, 1, 2], vec![0, 0, 2]]).unwrap();
        let y = SetFunctor::constant(to_pt.cod(), Variance::Contravariant, &["u", "v"]);
        let r = check_kan_adjunction(&to_pt, &x, &y, &Budget::default()).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn cofinality_of_point_inclusions() {
        let c = arrow();
        assert!(check_cofinal(&inclusion(&c, 1)).holds);
        let r = check_cofinal(&inclusion(&c, 0));
        assert!(!r.holds);
        assert_eq!(r.witness, Some(1));
        assert!(check_final(&inclusion(&c, 0)).holds);
    }

    #[test]
    fn comma_unit_is_cofinal() {
        let c = arrow();
        let comma = comma_category(&FinFunctor::identity(&c), CommaSide::Left);
        assert!(check_cofinal(&comma.eta).holds);
    }

    #[test]
    fn localization_sample_for_identity() {
        let c = arrow();
        let r = check_localization_sample(&FinFunctor::identity(&c), &[c.clone()], &Budget::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.pairs, 9);
        let not_loc = check_localization_sample(&inclusion(&c, 0), &[c.clone()], &Budget::default()).unwrap();
        assert!(!not_loc.holds);
    }

    #[test]
    fn cofinal_iff_iso_examples() {
        let c = arrow();
        let gamma = inclusion(&c, 0);
        let xp = SetFunctor::point(gamma.dom(), Variance::Contravariant);
        let x = SetFunctor::point(&c, Variance::Contravariant);
        let lk = kan_left(&gamma, &xp).unwrap();
        let a = SetNatMap::new(&lk.value, &x, vec![vec![0], vec![]]).unwrap();
        let r = cofinal_iff_iso_check(&gamma, &xp, &x, &a).unwrap();
        assert!(!r.iso && !r.cofinal);

        let id = FinFunctor::identity(&c);
        let lk = kan_left(&id, &x).unwrap();
        let a = SetNatMap::new(&lk.value, &x, vec![vec![0], vec![0]]).unwrap();
        let r = cofinal_iff_iso_check(&id, &x, &x, &a).unwrap();
        assert!(r.iso && r.cofinal);
    }

    #[test]
    fn yoneda_square_and_decomposition() {
        let c = arrow();
        assert_eq!(check_yoneda_square(&inclusion(&c, 0)).unwrap(), None);
        let p = projector();
        assert_eq!(check_yoneda_square(&FinFunctor::constant(&p, &Arc::new(FinCat::point()), 0)).unwrap(), None);
        let y1 = representable(&c, 1);
        let targets = vec![SetFunctor::point(&c, Variance::Contravariant), y1.clone(), representable(&c, 0)];
        let d = yoneda_colimit_decomposition(&y1, &targets, &Budget::default()).unwrap();
        assert!(d.holds());
        assert_eq!(d.indices, 2);
    }

    #[test]
    fn elements_projection_recovers_presheaf() {
        let p = projector();
        let x = SetFunctor::from_sizes(p, Variance::Contravariant, &[3], vec![vec![0, 1, 2], vec![0, 0, 2]]).unwrap();
        let el = elements_of(&x);
        let on_el = vec![SetFunctor::point(&el.cat, Variance::Contravariant), representable(&el.cat, 0)];
        let r = elements_kan_check(&x, &on_el, &Budget::default()).unwrap();
        assert!(r.recovers_x && r.conservative);
    }
}
