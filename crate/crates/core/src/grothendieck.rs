//! Strict diagrams of categories over finite posets, their two
//! Grothendieck constructions, lax and co-lax limits as categories of
//! sections, twisted arrows and the relative Yoneda functor.

use std::sync::Arc;

use crate::budget::Budget;
use crate::category::constructions::assemble;
use crate::category::{
    comma_category, find_id_cone, for_each_functor, lax_fiber_product, nat_transform_components, product, CatRef,
    CommaSide, Cone, FinCat, FinFunctor, FunctorSearch, Mor, Obj,
};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::presheaf::{
    elements_map, elements_of, hom_presheaves, kan_left, lim_set, LeftKan, SetFunctor, SetNatMap,
    Variance,
};

/// A strict functor `J^o → Cat` on a finite poset `J`: a category per
/// element and, for `j ≤ j′`, a functor `at(j′) → at(j)`.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    index: Poset,
    base: CatRef,
    at: Vec<CatRef>,
    // indexed by the morphisms of `base`
    act: Vec<FinFunctor>,
}

impl CatDiagram {
    /// `act` lists the transition functors for strict pairs `j < j′`;
    /// identities are filled in.
    pub fn new(index: Poset, at: Vec<CatRef>, act: Vec<((usize, usize), FinFunctor)>) -> Result<CatDiagram> {
        let n = index.len();
        if at.len() != n {
            return Err(Error::Diagram(format!("{} fibers for {} index elements", at.len(), n)));
        }
        let base = index.as_category_ref();
        let mut slots: Vec<Option<FinFunctor>> = vec![None; base.num_morphisms()];
        for j in 0..n {
            slots[base.identity(j)] = Some(FinFunctor::identity(&at[j]));
        }
        for ((j, jp), f) in act {
            let m = index
                .morphism_index(j, jp)
                .ok_or_else(|| Error::Diagram(format!("{} is not below {}", index.name(j), index.name(jp))))?;
            if j == jp {
                if f.obj_map().iter().enumerate().any(|(a, &b)| a != b)
                    || f.mor_map().iter().enumerate().any(|(a, &b)| a != b)
                {
                    return Err(Error::Diagram(format!("transition at {} is not the identity", index.name(j))));
                }
                continue;
            }
            if **f.dom() != *at[jp] || **f.cod() != *at[j] {
                return Err(Error::Diagram(format!(
                    "transition for {} <= {} must go from the fiber at {} to the fiber at {}",
                    index.name(j),
                    index.name(jp),
                    index.name(jp),
                    index.name(j)
                )));
            }
            if slots[m].is_some() {
                return Err(Error::Diagram(format!("duplicate transition for {} <= {}", index.name(j), index.name(jp))));
            }
            slots[m] = Some(f.with_endpoints(at[jp].clone(), at[j].clone()));
        }
        let mut act = Vec::with_capacity(slots.len());
        for (m, f) in slots.into_iter().enumerate() {
            match f {
                Some(f) => act.push(f),
                None => {
                    return Err(Error::Diagram(format!("missing transition for {}", base.morphism_name(m))));
                }
            }
        }
        let d = CatDiagram { index, base, at, act };
        d.check_strict()?;
        Ok(d)
    }

    fn check_strict(&self) -> Result<()> {
        let n = self.index.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || !self.index.le(a, b) || !self.index.le(b, c) {
                        continue;
                    }
                    let composite = self.transition(a, b).after(self.transition(b, c));
                    let direct = self.transition(a, c);
                    if composite.obj_map() != direct.obj_map() || composite.mor_map() != direct.mor_map() {
                        return Err(Error::Diagram(format!(
                            "not strict: {} <= {} <= {}",
                            self.index.name(a),
                            self.index.name(b),
                            self.index.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The constant diagram with identity transitions.
    pub fn constant(index: &Poset, c: &CatRef) -> CatDiagram {
        let at = vec![c.clone(); index.len()];
        let act = index.strict_pairs().map(|p| (p, FinFunctor::identity(c))).collect();
        CatDiagram::new(index.clone(), at, act).expect("constant diagrams are strict")
    }

    /// `γ: C0 → C1` as a diagram over the poset `1 ≤ 0`.
    pub fn single_arrow(gamma: &FinFunctor) -> CatDiagram {
        let index = Poset::from_relation(vec!["0".into(), "1".into()], vec![true, false, true, true])
            .expect("a two-element chain");
        let at = vec![gamma.dom().clone(), gamma.cod().clone()];
        CatDiagram::new(index, at, vec![((1, 0), gamma.clone())]).expect("a single functor is strict")
    }

    /// A presheaf on the index poset read as a diagram of discrete
    /// categories.
    pub fn from_presheaf(index: &Poset, x: &SetFunctor) -> Result<CatDiagram> {
        let base = index.as_category_ref();
        if x.variance() != Variance::Contravariant || **x.base() != *base {
            return Err(Error::Diagram("expected a presheaf on the index poset".into()));
        }
        let at: Vec<CatRef> = (0..index.len()).map(|j| Arc::new(FinCat::discrete(x.labels(j)))).collect();
        let act = index
            .strict_pairs()
            .map(|(j, jp)| {
                let f = index.morphism_index(j, jp).unwrap();
                let obj_map = x.act(f).to_vec();
                let mor_map = obj_map.iter().map(|&o| at[j].identity(o)).collect::<Vec<_>>();
                let mor_map = (0..at[jp].num_morphisms()).map(|m| mor_map[at[jp].src(m)]).collect();
                ((j, jp), FinFunctor::new_unchecked(at[jp].clone(), at[j].clone(), obj_map, mor_map))
            })
            .collect();
        CatDiagram::new(index.clone(), at, act)
    }

    pub fn index(&self) -> &Poset {
        &self.index
    }

    /// The index poset as a category.
    pub fn base(&self) -> &CatRef {
        &self.base
    }

    pub fn at(&self, j: usize) -> &CatRef {
        &self.at[j]
    }

    pub fn fibers(&self) -> &[CatRef] {
        &self.at
    }

    /// `C(j ≤ j′): at(j′) → at(j)`.
    pub fn transition(&self, j: usize, jp: usize) -> &FinFunctor {
        &self.act[self.index.morphism_index(j, jp).expect("j <= j′")]
    }

    /// The transition along a morphism of [`CatDiagram::base`].
    pub fn along(&self, f: Mor) -> &FinFunctor {
        &self.act[f]
    }

    pub fn is_set_valued(&self) -> bool {
        self.at.iter().all(|c| c.num_morphisms() == c.num_objects())
    }

    /// The presheaf of objects when every fiber is discrete.
    pub fn to_presheaf(&self) -> Option<SetFunctor> {
        if !self.is_set_valued() {
            return None;
        }
        let labels = self.at.iter().map(|c| c.objects().to_vec()).collect();
        let act = self.act.iter().map(|f| f.obj_map().to_vec()).collect();
        SetFunctor::new(self.base.clone(), Variance::Contravariant, labels, act).ok()
    }
}

/// A Grothendieck construction with its projection to the index.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub cat: CatRef,
    pub proj: FinFunctor,
    /// `⟨j, c⟩` per object, ordered by `j` then `c`.
    pub points: Vec<(usize, Obj)>,
    /// `⟨f, g⟩` per morphism.
    pub keys: Vec<(Mor, Mor)>,
}

impl Grothendieck {
    pub fn point_index(&self, j: usize, c: Obj) -> Option<Obj> {
        self.points.iter().position(|&p| p == (j, c))
    }

    /// The morphism `⟨f, g⟩` between two given objects.
    pub fn find(&self, from: Obj, to: Obj, key: (Mor, Mor)) -> Option<Mor> {
        self.cat.hom(from, to).iter().copied().find(|&m| self.keys[m] == key)
    }
}

fn grothendieck(d: &CatDiagram, colax: bool) -> Grothendieck {
    let base = &d.base;
    let points: Vec<(usize, Obj)> =
        (0..d.index.len()).flat_map(|j| (0..d.at[j].num_objects()).map(move |c| (j, c))).collect();
    let objects: Vec<String> =
        points.iter().map(|&(j, c)| format!("⟨{},{}⟩", d.index.name(j), d.at[j].object_name(c))).collect();
    let mut arrows = Vec::new();
    for (s, &(i, c)) in points.iter().enumerate() {
        for (t, &(ip, cp)) in points.iter().enumerate() {
            let Some(f) = d.index.morphism_index(i, ip) else { continue };
            let fc = d.act[f].ob(cp);
            let hom = if colax { d.at[i].hom(fc, c) } else { d.at[i].hom(c, fc) };
            for &g in hom {
                let name = format!(
                    "⟨{},{}⟩[{}->{}]",
                    base.morphism_name(f),
                    d.at[i].morphism_name(g),
                    objects[s],
                    objects[t]
                );
                arrows.push((s, t, (f, g), name));
            }
        }
    }
    let (cat, keys) = assemble(
        objects,
        arrows,
        |o| {
            let (j, c) = points[o];
            (base.identity(j), d.at[j].identity(c))
        },
        |second, first| {
            let (f, g) = *first;
            let (fp, gp) = *second;
            let i = base.src(f);
            let pushed = d.act[f].mor(gp);
            let g2 = if colax { d.at[i].compose(g, pushed) } else { d.at[i].compose(pushed, g) };
            (base.compose(fp, f), g2)
        },
    );
    let cat = Arc::new(cat);
    let proj = FinFunctor::new_unchecked(
        cat.clone(),
        base.clone(),
        points.iter().map(|p| p.0).collect(),
        keys.iter().map(|k| k.0).collect(),
    );
    Grothendieck { cat, proj, points, keys }
}

/// `→IC`: morphisms `⟨f, g⟩` with `g: c → C(f)(c′)`.
pub fn groth_arrow(d: &CatDiagram) -> Grothendieck {
    grothendieck(d, false)
}

/// `←IC`: morphisms `⟨f, g⟩` with `g: C(f)(c′) → c`.
pub fn groth_colax(d: &CatDiagram) -> Grothendieck {
    grothendieck(d, true)
}

/// The category of sections of a functor `total → base`.
#[derive(Clone, Debug)]
pub struct SectionCat {
    pub total: CatRef,
    pub base: CatRef,
    pub proj: FinFunctor,
    pub cat: CatRef,
    pub sections: Vec<FinFunctor>,
    /// Components, per morphism of `cat`, indexed by base objects.
    pub components: Vec<Vec<Mor>>,
}

impl SectionCat {
    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }
}

/// Sections `s` with `π ∘ s = id`, and natural transformations between
/// them whose components lie over identities.
pub fn sections(proj: &FinFunctor, budget: &Budget) -> Result<SectionCat> {
    let (total, base) = (proj.dom().clone(), proj.cod().clone());
    let candidates: Vec<Vec<Obj>> = (0..base.num_objects())
        .map(|b| (0..total.num_objects()).filter(|&o| proj.ob(o) == b).collect())
        .collect();
    let filter = |m: Mor, image: Mor| proj.mor(image) == m;
    let spec = FunctorSearch { object_candidates: Some(candidates), morphism_filter: Some(&filter), injective: false };
    let mut found = Vec::new();
    for_each_functor(&base, &total, &spec, budget, &mut |objs, mors| {
        found.push(FinFunctor::new_unchecked(base.clone(), total.clone(), objs.to_vec(), mors.to_vec()));
        true
    })?;
    let objects: Vec<String> = (0..found.len()).map(|k| format!("s{k}")).collect();
    let mut arrows = Vec::new();
    for (a, s) in found.iter().enumerate() {
        for (b, t) in found.iter().enumerate() {
            let comps = nat_transform_components(s, t, budget)?;
            let mut k = 0;
            for c in comps {
                if c.iter().enumerate().all(|(o, &m)| proj.mor(m) == base.identity(o)) {
                    arrows.push((a, b, c, format!("s{a}->s{b}#{k}")));
                    k += 1;
                }
            }
        }
    }
    let (cat, components) = assemble(
        objects,
        arrows,
        |o| (0..base.num_objects()).map(|b| total.identity(found[o].ob(b))).collect(),
        |g: &Vec<Mor>, f: &Vec<Mor>| g.iter().zip(f).map(|(&x, &y)| total.compose(x, y)).collect(),
    );
    Ok(SectionCat { total, base, proj: proj.clone(), cat: Arc::new(cat), sections: found, components })
}

/// `Sec(J, →IC)`.
pub fn lax_limit(d: &CatDiagram, budget: &Budget) -> Result<SectionCat> {
    sections(&groth_arrow(d).proj, budget)
}

/// `Sec(J^o, (←IC)^o)`.
pub fn colax_limit(d: &CatDiagram, budget: &Budget) -> Result<SectionCat> {
    sections(&groth_colax(d).proj.opposite(), budget)
}

/// Fiber objects of a section and the `g`-part of its value on each
/// base morphism.
fn section_data(g: &Grothendieck, s: &FinFunctor) -> (Vec<Obj>, Vec<Mor>) {
    let objs = s.obj_map().iter().map(|&o| g.points[o].1).collect();
    let mors = s.mor_map().iter().map(|&m| g.keys[m].1).collect();
    (objs, mors)
}

/// The twisted arrow category with its projection to `I × I^o`.
#[derive(Clone, Debug)]
pub struct TwistedArrows {
    pub cat: CatRef,
    pub base: CatRef,
    /// The arrow of `I` per object.
    pub arrows: Vec<Mor>,
    /// `(down, up)` per morphism, `f0 = up ∘ f1 ∘ down`.
    pub keys: Vec<(Mor, Mor)>,
    pub proj: FinFunctor,
}

pub fn twisted_arrows(i: &CatRef) -> TwistedArrows {
    let arrows: Vec<Mor> = (0..i.num_morphisms()).collect();
    let objects: Vec<String> = arrows.iter().map(|&f| i.morphism_name(f).to_string()).collect();
    let mut list = Vec::new();
    for &f0 in &arrows {
        for &f1 in &arrows {
            for &down in i.hom(i.src(f0), i.src(f1)) {
                for &up in i.hom(i.tgt(f1), i.tgt(f0)) {
                    if i.compose(up, i.compose(f1, down)) == f0 {
                        let name = format!("⟨{},{}⟩[{}->{}]", i.morphism_name(down), i.morphism_name(up), objects[f0], objects[f1]);
                        list.push((f0, f1, (down, up), name));
                    }
                }
            }
        }
    }
    let (cat, keys) = assemble(
        objects,
        list,
        |f| (i.identity(i.src(f)), i.identity(i.tgt(f))),
        |second, first| (i.compose(second.0, first.0), i.compose(first.1, second.1)),
    );
    let cat = Arc::new(cat);
    let prod = product(i, &Arc::new(crate::category::opposite(i)));
    let (n, m) = (i.num_objects(), i.num_morphisms());
    let proj = FinFunctor::new_unchecked(
        cat.clone(),
        prod.cat,
        arrows.iter().map(|&f| i.src(f) * n + i.tgt(f)).collect(),
        keys.iter().map(|&(d, u)| d * m + u).collect(),
    );
    TwistedArrows { cat, base: i.clone(), arrows, keys, proj }
}

/// The Hom pairing as a presheaf on `I × I^o`.
pub fn hom_pairing(i: &CatRef) -> SetFunctor {
    let prod = product(i, &Arc::new(crate::category::opposite(i)));
    let (n, m) = (i.num_objects(), i.num_morphisms());
    let labels: Vec<Vec<String>> = (0..n * n)
        .map(|o| i.hom(o / n, o % n).iter().map(|&f| i.morphism_name(f).to_string()).collect())
        .collect();
    let act = (0..prod.cat.num_morphisms())
        .map(|k| {
            let (a, b) = (k / m, k % m);
            let (j, jp) = (i.tgt(a), i.src(b));
            i.hom(j, jp)
                .iter()
                .map(|&g| {
                    let h = i.compose(b, i.compose(g, a));
                    i.hom(i.src(a), i.tgt(b)).iter().position(|&x| x == h).unwrap()
                })
                .collect()
        })
        .collect();
    SetFunctor::new_unchecked(prod.cat, Variance::Contravariant, labels, act)
}

/// The direct twisted arrow category against the elements of the Hom
/// pairing: the canonical comparison is an isomorphism.
pub fn check_twisted_arrows(i: &CatRef) -> Result<bool> {
    let tw = twisted_arrows(i);
    let el = elements_of(&hom_pairing(i));
    let n = i.num_objects();
    let obj_map: Vec<Obj> = tw
        .arrows
        .iter()
        .map(|&f| {
            let (a, b) = (i.src(f), i.tgt(f));
            let pos = i.hom(a, b).iter().position(|&x| x == f).unwrap();
            el.point_index(a * n + b, pos).unwrap()
        })
        .collect();
    let mut mor_map = Vec::with_capacity(tw.cat.num_morphisms());
    for k in 0..tw.cat.num_morphisms() {
        let (s, t) = (obj_map[tw.cat.src(k)], obj_map[tw.cat.tgt(k)]);
        let want = tw.proj.mor(k);
        match el.cat.hom(s, t).iter().find(|&&e| el.proj.mor(e) == want) {
            Some(&e) => mor_map.push(e),
            None => return Ok(false),
        }
    }
    Ok(match FinFunctor::new(tw.cat.clone(), el.cat.clone(), obj_map, mor_map) {
        Ok(f) => f.is_isomorphism(),
        Err(_) => false,
    })
}

/// `tw(s): tw(J) → →IC`, `(f: i → i′) ↦ ⟨i, C(f)(s(i′))⟩`, for `s` in
/// the co-lax limit.
pub fn tw_section(d: &CatDiagram, arrow: &Grothendieck, colax: &Grothendieck, tw: &TwistedArrows, s: &FinFunctor) -> FinFunctor {
    let base = &d.base;
    let (objs, sigma) = section_data(colax, s);
    let obj_map: Vec<Obj> = tw
        .arrows
        .iter()
        .map(|&f| {
            let (i, ip) = (base.src(f), base.tgt(f));
            arrow.point_index(i, d.act[f].ob(objs[ip])).unwrap()
        })
        .collect();
    let mor_map = tw
        .keys
        .iter()
        .enumerate()
        .map(|(k, &(down, up))| {
            let f1 = tw.arrows[tw.cat.tgt(k)];
            let g = d.act[base.compose(f1, down)].mor(sigma[up]);
            arrow
                .find(obj_map[tw.cat.src(k)], obj_map[tw.cat.tgt(k)], (down, g))
                .expect("tw(s) is defined on every twisted arrow")
        })
        .collect();
    FinFunctor::new_unchecked(tw.cat.clone(), arrow.cat.clone(), obj_map, mor_map)
}

/// `Y_J(s)⟨i,c⟩ = Hom(c, s(i))`, a presheaf on `→IC` for `s` in the
/// co-lax limit. `⟨f,g⟩: ⟨i,c⟩ → ⟨i′,c′⟩` acts by `k ↦ σ_f ∘ C(f)(k) ∘ g`.
pub fn relative_yoneda(d: &CatDiagram, arrow: &Grothendieck, colax: &Grothendieck, s: &FinFunctor) -> SetFunctor {
    let (objs, sigma) = section_data(colax, s);
    let labels: Vec<Vec<String>> = arrow
        .points
        .iter()
        .map(|&(i, c)| d.at[i].hom(c, objs[i]).iter().map(|&h| d.at[i].morphism_name(h).to_string()).collect())
        .collect();
    let act = (0..arrow.cat.num_morphisms())
        .map(|m| {
            let (f, g) = arrow.keys[m];
            let (i, c) = arrow.points[arrow.cat.src(m)];
            let (ip, cp) = arrow.points[arrow.cat.tgt(m)];
            let ci = &d.at[i];
            d.at[ip]
                .hom(cp, objs[ip])
                .iter()
                .map(|&k| {
                    let h = ci.compose(sigma[f], ci.compose(d.act[f].mor(k), g));
                    ci.hom(c, objs[i]).iter().position(|&x| x == h).unwrap()
                })
                .collect()
        })
        .collect();
    SetFunctor::new_unchecked(arrow.cat.clone(), Variance::Contravariant, labels, act)
}

/// `tw(s)_! pt` on `→IC`.
pub fn yoneda_lax_kan(d: &CatDiagram, arrow: &Grothendieck, colax: &Grothendieck, tw: &TwistedArrows, s: &FinFunctor) -> Result<LeftKan> {
    let gamma = tw_section(d, arrow, colax, tw, s);
    kan_left(&gamma, &SetFunctor::point(&tw.cat, Variance::Contravariant))
}

/// The two computations of the relative Yoneda functor of one section.
#[derive(Clone, Debug)]
pub struct YonedaLaxReport {
    pub pointwise: SetFunctor,
    pub kan: SetFunctor,
    /// The comparison `[(f, ⟨u,g⟩)] ↦ σ_{f∘u} ∘ g` when it is a well
    /// defined natural isomorphism.
    pub iso: Option<SetNatMap>,
}

impl YonedaLaxReport {
    pub fn holds(&self) -> bool {
        self.iso.is_some()
    }
}

/// `s` is an object of [`colax_limit`].
pub fn check_yoneda_lax_kan(d: &CatDiagram, s: &FinFunctor) -> Result<YonedaLaxReport> {
    let (arrow, colax, tw) = (groth_arrow(d), groth_colax(d), twisted_arrows(&d.base));
    let base_op = Arc::new(crate::category::opposite(&d.base));
    let s = s.with_endpoints(base_op, Arc::new(crate::category::opposite(&colax.cat)));
    let pointwise = relative_yoneda(d, &arrow, &colax, &s);
    let lk = yoneda_lax_kan(d, &arrow, &colax, &tw, &s)?;
    let gamma = tw_section(d, &arrow, &colax, &tw, &s);
    let (objs, sigma) = section_data(&colax, &s);
    let base = &d.base;
    let mut components: Vec<Vec<Option<usize>>> =
        (0..arrow.cat.num_objects()).map(|t| vec![None; lk.value.size(t)]).collect();
    let mut consistent = true;
    for (target, comps) in components.iter_mut().enumerate() {
        let (i, c) = arrow.points[target];
        for (o, &f) in tw.arrows.iter().enumerate() {
            for &alpha in arrow.cat.hom(target, gamma.ob(o)) {
                let (u, g) = arrow.keys[alpha];
                let h = d.at[i].compose(sigma[base.compose(f, u)], g);
                let value = d.at[i].hom(c, objs[i]).iter().position(|&x| x == h).unwrap();
                let class = lk.class_of(target, o, alpha, 0);
                match comps[class] {
                    None => comps[class] = Some(value),
                    Some(v) if v != value => consistent = false,
                    _ => {}
                }
            }
        }
    }
    let iso = if consistent && components.iter().flatten().all(Option::is_some) {
        let map = SetNatMap { components: components.into_iter().map(|v| v.into_iter().flatten().collect()).collect() };
        (map.is_natural(&lk.value, &pointwise) && map.is_iso(&lk.value, &pointwise)).then_some(map)
    } else {
        None
    };
    Ok(YonedaLaxReport { pointwise, kan: lk.value, iso })
}

/// Explicit isomorphisms identifying the two limits over a single arrow
/// `γ: C0 → C1` with comma categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleArrowReport {
    /// Lax limit ≅ `C1 ∖_γ C0`.
    pub lax: bool,
    /// Co-lax limit ≅ `C0 /_γ C1`.
    pub colax: bool,
}

impl SingleArrowReport {
    pub fn holds(&self) -> bool {
        self.lax && self.colax
    }
}

fn section_comma_iso(sc: &SectionCat, g: &Grothendieck, comma: &crate::category::CommaCategory, over: Mor, flip: bool) -> bool {
    if sc.cat.num_objects() != comma.cat.num_objects() {
        return false;
    }
    let triple = |s: &FinFunctor| {
        let (objs, mors) = section_data(g, s);
        if flip {
            (objs[0], objs[1], mors[over])
        } else {
            (objs[1], objs[0], mors[over])
        }
    };
    let mut obj_map = Vec::with_capacity(sc.len());
    for s in &sc.sections {
        match comma.triples.iter().position(|&t| t == triple(s)) {
            Some(k) => obj_map.push(k),
            None => return false,
        }
    }
    let mut mor_map = Vec::with_capacity(sc.cat.num_morphisms());
    for (m, comps) in sc.components.iter().enumerate() {
        let h: Vec<Mor> = comps.iter().map(|&c| g.keys[c].1).collect();
        let key = if flip { (h[0], h[1]) } else { (h[1], h[0]) };
        let (a, b) = (obj_map[sc.cat.src(m)], obj_map[sc.cat.tgt(m)]);
        match comma.cat.hom(a, b).iter().find(|&&k| (comma.sigma.mor(k), comma.tau.mor(k)) == key) {
            Some(&k) => mor_map.push(k),
            None => return false,
        }
    }
    FinFunctor::new(sc.cat.clone(), comma.cat.clone(), obj_map, mor_map).is_ok_and(|f| f.is_isomorphism())
}

pub fn check_single_arrow(gamma: &FinFunctor, budget: &Budget) -> Result<SingleArrowReport> {
    let d = CatDiagram::single_arrow(gamma);
    let f = d.index.morphism_index(1, 0).unwrap();
    let arrow = groth_arrow(&d);
    let lax = section_comma_iso(&lax_limit(&d, budget)?, &arrow, &comma_category(gamma, CommaSide::Right), f, false);
    let colax_g = groth_colax(&d);
    let colax =
        section_comma_iso(&colax_limit(&d, budget)?, &colax_g, &comma_category(gamma, CommaSide::Left), f, true);
    Ok(SingleArrowReport { lax, colax })
}

/// Explicit isomorphisms for a diagram of discrete categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    pub arrow_is_elements: bool,
    pub colax_is_elements: bool,
    pub lax_is_limit: bool,
    pub colax_is_limit: bool,
}

impl DegenerationReport {
    pub fn holds(&self) -> bool {
        self.arrow_is_elements && self.colax_is_elements && self.lax_is_limit && self.colax_is_limit
    }
}

fn groth_is_elements(g: &Grothendieck, x: &SetFunctor) -> bool {
    let el = elements_of(x);
    if g.points != el.points {
        return false;
    }
    let mut mor_map = Vec::with_capacity(g.cat.num_morphisms());
    for m in 0..g.cat.num_morphisms() {
        let (s, t) = (g.cat.src(m), g.cat.tgt(m));
        match el.cat.hom(s, t).iter().find(|&&e| el.proj.mor(e) == g.keys[m].0) {
            Some(&e) => mor_map.push(e),
            None => return false,
        }
    }
    let obj_map = (0..g.cat.num_objects()).collect();
    FinFunctor::new(g.cat.clone(), el.cat.clone(), obj_map, mor_map).is_ok_and(|f| f.is_isomorphism())
}

fn sections_are_limit(sc: &SectionCat, g: &Grothendieck, limit: &[Vec<usize>]) -> bool {
    if sc.cat.num_morphisms() != sc.cat.num_objects() || sc.len() != limit.len() {
        return false;
    }
    let mut seen = vec![false; limit.len()];
    for s in &sc.sections {
        let (objs, _) = section_data(g, s);
        match limit.iter().position(|l| *l == objs) {
            Some(k) if !seen[k] => seen[k] = true,
            _ => return false,
        }
    }
    true
}

pub fn check_set_degeneration(d: &CatDiagram, budget: &Budget) -> Result<DegenerationReport> {
    let x = d.to_presheaf().ok_or_else(|| Error::PreconditionFailed("fibers are not discrete".into()))?;
    let (arrow, colax) = (groth_arrow(d), groth_colax(d));
    let limit = lim_set(&x, budget)?;
    Ok(DegenerationReport {
        arrow_is_elements: groth_is_elements(&arrow, &x),
        colax_is_elements: groth_is_elements(&colax, &x),
        lax_is_limit: sections_are_limit(&lax_limit(d, budget)?, &arrow, &limit),
        colax_is_limit: sections_are_limit(&colax_limit(d, budget)?, &colax, &limit),
    })
}

#[derive(Clone, Debug)]
pub struct Dim1Report {
    pub sections: usize,
    pub filtered: bool,
    pub witness: Option<Cone>,
}

/// With filtered fibers, the co-lax limit is filtered.
pub fn check_dim1_le(d: &CatDiagram, budget: &Budget) -> Result<Dim1Report> {
    for (j, c) in d.at.iter().enumerate() {
        if find_id_cone(c, budget)?.is_none() {
            return Err(Error::PreconditionFailed(format!("fiber at {} is not filtered", d.index.name(j))));
        }
    }
    let colax = colax_limit(d, budget)?;
    let witness = find_id_cone(&colax.cat, budget)?;
    Ok(Dim1Report { sections: colax.len(), filtered: witness.is_some(), witness })
}

/// Full faithfulness of the relative Yoneda functor on the co-lax limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxIndReport {
    pub sections: usize,
    pub pairs: usize,
    pub bijective: bool,
    /// A pair `(s, s′)` where the comparison is not a bijection.
    pub witness: Option<(usize, usize)>,
}

pub fn check_lax_ind_shadow(d: &CatDiagram, budget: &Budget) -> Result<LaxIndReport> {
    let (arrow, colax) = (groth_arrow(d), groth_colax(d));
    let lim = sections(&colax.proj.opposite(), budget)?;
    let ys: Vec<SetFunctor> = lim.sections.iter().map(|s| relative_yoneda(d, &arrow, &colax, s)).collect();
    let objs: Vec<Vec<Obj>> = lim.sections.iter().map(|s| section_data(&colax, s).0).collect();
    let mut report = LaxIndReport { sections: lim.len(), pairs: 0, bijective: true, witness: None };
    for a in 0..lim.len() {
        for b in 0..lim.len() {
            report.pairs += 1;
            let all = hom_presheaves(&ys[a], &ys[b], budget)?;
            let mut hit = vec![false; all.len()];
            let mut ok = lim.cat.hom(a, b).len() == all.len();
            for &m in lim.cat.hom(a, b) {
                let components = arrow
                    .points
                    .iter()
                    .map(|&(i, c)| {
                        let h = colax.keys[lim.components[m][i]].1;
                        let ci = &d.at[i];
                        ci.hom(c, objs[a][i])
                            .iter()
                            .map(|&k| ci.hom(c, objs[b][i]).iter().position(|&x| x == ci.compose(h, k)).unwrap())
                            .collect()
                    })
                    .collect();
                let theta = SetNatMap { components };
                match all.iter().position(|x| *x == theta) {
                    Some(k) if !hit[k] => hit[k] = true,
                    _ => ok = false,
                }
            }
            if !ok {
                report.bijective = false;
                report.witness.get_or_insert((a, b));
            }
        }
    }
    Ok(report)
}

/// Filteredness of the lax fiber product of element categories attached
/// to a triple `⟨X0, X1, α: γ0_! X0 → γ1_! X1⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxProductReport {
    pub factors_filtered: bool,
    pub objects: usize,
    pub filtered: bool,
}

impl LaxProductReport {
    pub fn holds(&self) -> bool {
        !self.factors_filtered || self.filtered
    }
}

pub fn check_lax_product_shadow(
    g0: &FinFunctor,
    g1: &FinFunctor,
    x0: &SetFunctor,
    x1: &SetFunctor,
    alpha: &SetNatMap,
    budget: &Budget,
) -> Result<LaxProductReport> {
    let x = kan_left(g1, x1)?.value;
    let f0 = elements_map(g0, x0, &x, alpha)?;
    let f1 = elements_map(g1, x1, &x, &SetNatMap::identity(&x))?;
    let factors_filtered =
        find_id_cone(f0.dom(), budget)?.is_some() && find_id_cone(f1.dom(), budget)?.is_some();
    let lax = lax_fiber_product(&f0, &f1);
    let filtered = find_id_cone(&lax.cat, budget)?.is_some();
    Ok(LaxProductReport { factors_filtered, objects: lax.cat.num_objects(), filtered })
}

/// Every strict diagram over `index` with fibers drawn from `fibers`.
pub fn for_each_cat_diagram(
    index: &Poset,
    fibers: &[CatRef],
    budget: &Budget,
    visit: &mut dyn FnMut(&CatDiagram) -> bool,
) -> Result<bool> {
    let n = index.len();
    let pairs: Vec<(usize, usize)> = index.strict_pairs().collect();
    let mut choice = vec![0usize; n];
    loop {
        let at: Vec<CatRef> = choice.iter().map(|&k| fibers[k].clone()).collect();
        let options: Vec<Vec<FinFunctor>> =
            pairs.iter().map(|&(j, jp)| crate::category::functors(&at[jp], &at[j], budget)).collect::<Result<_>>()?;
        let mut pick = vec![0usize; pairs.len()];
        if options.iter().all(|o| !o.is_empty()) {
            loop {
                budget.tick("enumerating diagrams")?;
                let act = pairs.iter().zip(&pick).zip(&options).map(|((&p, &k), o)| (p, o[k].clone())).collect();
                if let Ok(d) = CatDiagram::new(index.clone(), at.clone(), act) {
                    if !visit(&d) {
                        return Ok(false);
                    }
                }
                let mut k = 0;
                while k < pick.len() {
                    pick[k] += 1;
                    if pick[k] < options[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
            }
        }
        let mut k = 0;
        while k < n {
            choice[k] += 1;
            if choice[k] < fibers.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == n {
            return Ok(true);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::functors;

    fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    fn arrow1() -> CatRef {
        Poset::chain(1).as_category_ref()
    }

    #[test]
    fn constant_diagram_is_a_product() {
        let b = Budget::default();
        let j = Poset::chain(1);
        let d = CatDiagram::constant(&j, &arrow1());
        let prod = product(&j.as_category_ref(), &arrow1()).cat;
        for g in [groth_arrow(&d), groth_colax(&d)] {
            assert_eq!(g.cat.num_objects(), 4);
            assert_eq!(g.cat.num_morphisms(), 9);
            g.cat.check_laws().unwrap();
        }
        assert!(crate::category::find_isomorphism(&groth_arrow(&d).cat, &prod, &b).unwrap().is_some());
    }

    #[test]
    fn constant_over_discrete_gives_powers() {
        let b = Budget::default();
        let d = CatDiagram::constant(&Poset::discrete(&["a", "b"]), &arrow1());
        let lax = lax_limit(&d, &b).unwrap();
        let square = product(&arrow1(), &arrow1()).cat;
        assert!(crate::category::find_isomorphism(&lax.cat, &square, &b).unwrap().is_some());
    }

    #[test]
    fn single_arrow_limits_are_commas() {
        let b = Budget::default();
        let (p, a) = (projector(), arrow1());
        for (c0, c1) in [(p.clone(), a.clone()), (a.clone(), p.clone()), (a.clone(), a.clone())] {
            for g in functors(&c0, &c1, &b).unwrap() {
                let r = check_single_arrow(&g, &b).unwrap();
                assert!(r.holds(), "{r:?}");
            }
        }
    }

    #[test]
    fn twisted_arrows_of_small_categories() {
        let tw = twisted_arrows(&Arc::new(FinCat::point()));
        assert_eq!((tw.cat.num_objects(), tw.cat.num_morphisms()), (1, 1));
        let tw = twisted_arrows(&arrow1());
        assert_eq!(tw.cat.num_objects(), 3);
        assert_eq!(tw.cat.num_morphisms(), 5);
        for c in [arrow1(), projector(), Arc::new(FinCat::point())] {
            assert!(check_twisted_arrows(&c).unwrap());
        }
    }

    #[test]
    fn set_valued_diagrams_degenerate() {
        let b = Budget::default();
        let j = Poset::chain(1);
        let base = j.as_category_ref();
        for x in crate::corpus::set_functors(&base, Variance::Contravariant, 2, &b).unwrap() {
            let d = CatDiagram::from_presheaf(&j, &x).unwrap();
            assert!(check_set_degeneration(&d, &b).unwrap().holds());
        }
    }

    #[test]
    fn yoneda_over_a_point_is_representable() {
        let b = Budget::default();
        let d = CatDiagram::constant(&Poset::chain(0), &projector());
        let lim = colax_limit(&d, &b).unwrap();
        assert_eq!(lim.len(), 1);
        let r = check_yoneda_lax_kan(&d, &lim.sections[0]).unwrap();
        assert!(r.holds());
        assert_eq!(r.kan.sizes(), vec![2]);
    }

    #[test]
    fn pointwise_and_kan_agree_on_every_section() {
        let b = Budget::default();
        let (p, a) = (projector(), arrow1());
        let mut diagrams = vec![CatDiagram::constant(&Poset::chain(1), &a)];
        for (c0, c1) in [(p.clone(), a.clone()), (a.clone(), p.clone()), (a.clone(), a.clone())] {
            for g in functors(&c0, &c1, &b).unwrap() {
                diagrams.push(CatDiagram::single_arrow(&g));
            }
        }
        for d in &diagrams {
            for s in &colax_limit(d, &b).unwrap().sections {
                assert!(check_yoneda_lax_kan(d, s).unwrap().holds());
            }
        }
    }

    #[test]
    fn dim1_on_small_diagrams() {
        let b = Budget::default();
        let d = CatDiagram::constant(&Poset::chain(1), &projector());
        assert!(check_dim1_le(&d, &b).unwrap().filtered);
        let v = Poset::from_generators(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (0, 2)]).unwrap();
        let mut count = 0;
        for_each_cat_diagram(&v.opposite(), &[arrow1(), projector()], &b, &mut |d| {
            count += 1;
            assert!(check_dim1_le(d, &b).unwrap().filtered);
            true
        })
        .unwrap();
        assert!(count > 8);
        let bad = CatDiagram::constant(&Poset::chain(0), &Arc::new(FinCat::discrete(&["a", "b"])));
        assert!(matches!(check_dim1_le(&bad, &b), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn relative_yoneda_is_fully_faithful() {
        let b = Budget::default();
        let gamma = FinFunctor::constant(&arrow1(), &projector(), 0);
        for d in [
            CatDiagram::constant(&Poset::chain(0), &projector()),
            CatDiagram::constant(&Poset::chain(1), &arrow1()),
            CatDiagram::single_arrow(&gamma),
        ] {
            let r = check_lax_ind_shadow(&d, &b).unwrap();
            assert!(r.bijective, "{r:?}");
        }
    }

    #[test]
    fn lax_product_of_collapsing_presheaves() {
        let b = Budget::default();
        let p = projector();
        let x = SetFunctor::new(
            p.clone(),
            Variance::Contravariant,
            vec![vec!["a".into(), "b".into()]],
            vec![vec![0, 1], vec![0, 0]],
        )
        .unwrap();
        let id = FinFunctor::identity(&p);
        let lk = kan_left(&id, &x).unwrap();
        let alpha = crate::presheaf::find_set_iso(&lk.value, &lk.value, &b).unwrap().unwrap();
        let r = check_lax_product_shadow(&id, &id, &x, &x, &alpha, &b).unwrap();
        assert!(r.factors_filtered && r.filtered, "{r:?}");
    }
}
