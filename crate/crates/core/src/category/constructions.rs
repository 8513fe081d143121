use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::{identity_name, CatRef, FinCat, FinFunctor, Mor, Morphism, Obj};

/// Builds a category whose morphisms are identified by keys; `compose`
/// computes the key of `g ∘ f`. Every composite must be among `arrows`.
pub(crate) fn assemble<K: Clone + Eq + Hash>(
    objects: Vec<String>,
    arrows: Vec<(Obj, Obj, K, String)>,
    identity_key: impl Fn(Obj) -> K,
    compose: impl Fn(&K, &K) -> K,
) -> (FinCat, Vec<K>) {
    let mut index: HashMap<(Obj, Obj, K), Mor> = HashMap::with_capacity(arrows.len());
    let mut morphisms = Vec::with_capacity(arrows.len());
    let mut keys = Vec::with_capacity(arrows.len());
    for (k, (s, t, key, name)) in arrows.into_iter().enumerate() {
        index.insert((s, t, key.clone()), k);
        morphisms.push(Morphism { name, src: s, tgt: t });
        keys.push(key);
    }
    let identity = (0..objects.len()).map(|o| index[&(o, o, identity_key(o))]).collect();
    let cat = FinCat::from_parts(objects, morphisms.clone(), identity, |g, f| {
        let key = compose(&keys[g], &keys[f]);
        *index
            .get(&(morphisms[f].src, morphisms[g].tgt, key))
            .expect("construction is not closed under composition")
    });
    (cat, keys)
}

/// Opposite category: same indices and names, arrows reversed.
pub fn opposite(c: &FinCat) -> FinCat {
    let morphisms = c.morphisms().iter().map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src }).collect();
    let identity = (0..c.num_objects()).map(|o| c.identity(o)).collect();
    FinCat::from_parts(c.objects().to_vec(), morphisms, identity, |g, f| c.compose(f, g))
}

pub struct Product {
    pub cat: CatRef,
    pub p0: FinFunctor,
    pub p1: FinFunctor,
}

/// `C0 × C1`; object `(a, b)` has index `a * |C1| + b`, likewise for morphisms.
pub fn product(c0: &CatRef, c1: &CatRef) -> Product {
    let (n1, m1) = (c1.num_objects(), c1.num_morphisms());
    let mut objects = Vec::new();
    for a in c0.objects() {
        for b in c1.objects() {
            objects.push(format!("({a},{b})"));
        }
    }
    let mut morphisms = Vec::new();
    for f in c0.morphisms() {
        for g in c1.morphisms() {
            morphisms.push(Morphism { name: format!("({},{})", f.name, g.name), src: f.src * n1 + g.src, tgt: f.tgt * n1 + g.tgt });
        }
    }
    let identity = (0..c0.num_objects())
        .flat_map(|a| (0..n1).map(move |b| (a, b)))
        .map(|(a, b)| c0.identity(a) * m1 + c1.identity(b))
        .collect();
    let cat = Arc::new(FinCat::from_parts(objects, morphisms, identity, |g, f| {
        c0.compose(g / m1, f / m1) * m1 + c1.compose(g % m1, f % m1)
    }));
    let n = cat.num_objects();
    let m = cat.num_morphisms();
    let p0 = FinFunctor::new_unchecked(cat.clone(), c0.clone(), (0..n).map(|o| o / n1).collect(), (0..m).map(|k| k / m1).collect());
    let p1 = FinFunctor::new_unchecked(cat.clone(), c1.clone(), (0..n).map(|o| o % n1).collect(), (0..m).map(|k| k % m1).collect());
    Product { cat, p0, p1 }
}

/// The lax fiber product of `γ0: C0 → C` and `γ1: C1 → C`.
pub struct LaxFiberProduct {
    pub cat: CatRef,
    pub sigma: FinFunctor,
    pub tau: FinFunctor,
    /// `⟨c0, c1, α⟩` per object.
    pub triples: Vec<(Obj, Obj, Mor)>,
}

fn lax_fiber_product_filtered(g0: &FinFunctor, g1: &FinFunctor, keep: impl Fn(Mor) -> bool) -> LaxFiberProduct {
    assert!(**g0.cod() == **g1.cod(), "lax fiber product needs a common codomain");
    let (c0, c1, c) = (g0.dom(), g1.dom(), g0.cod());
    let mut triples = Vec::new();
    for a in 0..c0.num_objects() {
        for b in 0..c1.num_objects() {
            for &alpha in c.hom(g0.ob(a), g1.ob(b)) {
                if keep(alpha) {
                    triples.push((a, b, alpha));
                }
            }
        }
    }
    let objects: Vec<String> = triples
        .iter()
        .map(|&(a, b, alpha)| format!("⟨{},{},{}⟩", c0.object_name(a), c1.object_name(b), c.morphism_name(alpha)))
        .collect();
    let mut arrows = Vec::new();
    for (s, &(a, b, alpha)) in triples.iter().enumerate() {
        for (t, &(a2, b2, alpha2)) in triples.iter().enumerate() {
            for &f0 in c0.hom(a, a2) {
                for &f1 in c1.hom(b, b2) {
                    if c.compose(g1.mor(f1), alpha) == c.compose(alpha2, g0.mor(f0)) {
                        let name = format!("({},{})[{}->{}]", c0.morphism_name(f0), c1.morphism_name(f1), objects[s], objects[t]);
                        arrows.push((s, t, (f0, f1), name));
                    }
                }
            }
        }
    }
    let (cat, keys) = assemble(
        objects,
        arrows,
        |o| (c0.identity(triples[o].0), c1.identity(triples[o].1)),
        |g, f| (c0.compose(g.0, f.0), c1.compose(g.1, f.1)),
    );
    let cat = Arc::new(cat);
    let sigma = FinFunctor::new_unchecked(
        cat.clone(),
        c0.clone(),
        triples.iter().map(|t| t.0).collect(),
        keys.iter().map(|k| k.0).collect(),
    );
    let tau = FinFunctor::new_unchecked(
        cat.clone(),
        c1.clone(),
        triples.iter().map(|t| t.1).collect(),
        keys.iter().map(|k| k.1).collect(),
    );
    LaxFiberProduct { cat, sigma, tau, triples }
}

pub fn lax_fiber_product(g0: &FinFunctor, g1: &FinFunctor) -> LaxFiberProduct {
    lax_fiber_product_filtered(g0, g1, |_| true)
}

/// The full subcategory of the lax fiber product on invertible `α`.
pub fn fiber_product(g0: &FinFunctor, g1: &FinFunctor) -> LaxFiberProduct {
    let c = g0.cod().clone();
    lax_fiber_product_filtered(g0, g1, |alpha| c.is_isomorphism(alpha))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommaSide {
    /// `C / I`: triples `⟨c, i, α: π(c) → i⟩`.
    Left,
    /// `I ∖ C`: triples `⟨i, c, α: i → π(c)⟩`.
    Right,
}

pub struct CommaCategory {
    pub cat: CatRef,
    pub side: CommaSide,
    /// Projection to the first factor (`C` on the left, `I` on the right).
    pub sigma: FinFunctor,
    /// Projection to the second factor (`I` on the left, `C` on the right).
    pub tau: FinFunctor,
    /// The fully faithful adjoint `C → comma`, `c ↦ ⟨c, π(c), id⟩`.
    pub eta: FinFunctor,
    pub triples: Vec<(Obj, Obj, Mor)>,
}

pub fn comma_category(pi: &FinFunctor, side: CommaSide) -> CommaCategory {
    let base = pi.cod().clone();
    let id = FinFunctor::identity(&base);
    let c = pi.dom().clone();
    let lax = match side {
        CommaSide::Left => lax_fiber_product(pi, &id),
        CommaSide::Right => lax_fiber_product(&id, pi),
    };
    let lookup: HashMap<(Obj, Obj, Mor), Obj> = lax.triples.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let triple_of = |o: Obj| match side {
        CommaSide::Left => (o, pi.ob(o), base.identity(pi.ob(o))),
        CommaSide::Right => (pi.ob(o), o, base.identity(pi.ob(o))),
    };
    let obj_map: Vec<Obj> = (0..c.num_objects()).map(|o| lookup[&triple_of(o)]).collect();
    let mor_map = (0..c.num_morphisms())
        .map(|f| {
            let (s, t) = (obj_map[c.src(f)], obj_map[c.tgt(f)]);
            let want = match side {
                CommaSide::Left => (f, pi.mor(f)),
                CommaSide::Right => (pi.mor(f), f),
            };
            *lax.cat
                .hom(s, t)
                .iter()
                .find(|&&m| (lax.sigma.mor(m), lax.tau.mor(m)) == want)
                .expect("η is defined on every morphism")
        })
        .collect();
    let eta = FinFunctor::new_unchecked(c, lax.cat.clone(), obj_map, mor_map);
    CommaCategory { cat: lax.cat, side, sigma: lax.sigma, tau: lax.tau, eta, triples: lax.triples }
}

/// A comma-fiber `C / i` or `i ∖ C` with its forgetful functor to `C`.
pub struct CommaFiber {
    pub cat: CatRef,
    pub proj: FinFunctor,
    /// `⟨c, α⟩` per object.
    pub points: Vec<(Obj, Mor)>,
}

fn comma_fiber(pi: &FinFunctor, i: Obj, left: bool) -> CommaFiber {
    let (c, base) = (pi.dom(), pi.cod());
    let mut points = Vec::new();
    for o in 0..c.num_objects() {
        let hom = if left { base.hom(pi.ob(o), i) } else { base.hom(i, pi.ob(o)) };
        points.extend(hom.iter().map(|&alpha| (o, alpha)));
    }
    let objects: Vec<String> =
        points.iter().map(|&(o, alpha)| format!("⟨{},{}⟩", c.object_name(o), base.morphism_name(alpha))).collect();
    let mut arrows = Vec::new();
    for (s, &(a, alpha)) in points.iter().enumerate() {
        for (t, &(b, beta)) in points.iter().enumerate() {
            for &f in c.hom(a, b) {
                let ok = if left {
                    base.compose(beta, pi.mor(f)) == alpha
                } else {
                    base.compose(pi.mor(f), alpha) == beta
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
    CommaFiber { cat, proj, points }
}

/// `C /_π i`: pairs `⟨c, α: π(c) → i⟩`.
pub fn left_comma_fiber(pi: &FinFunctor, i: Obj) -> CommaFiber {
    comma_fiber(pi, i, true)
}

/// `i ∖_π C`: pairs `⟨c, α: i → π(c)⟩`.
pub fn right_comma_fiber(pi: &FinFunctor, i: Obj) -> CommaFiber {
    comma_fiber(pi, i, false)
}

fn fresh(taken: impl Fn(&str) -> bool, base: &str) -> String {
    let mut name = base.to_string();
    while taken(&name) {
        name.push('\'');
    }
    name
}

fn add_point(c: &CatRef, terminal: bool) -> (CatRef, FinFunctor) {
    let n = c.num_objects();
    let o = fresh(|s| c.object_index(s).is_some(), "o");
    let mut objects = c.objects().to_vec();
    objects.push(o.clone());
    let mut morphisms = c.morphisms().to_vec();
    let id_o = morphisms.len();
    morphisms.push(Morphism { name: fresh(|s| c.morphism_index(s).is_some(), &identity_name(&o)), src: n, tgt: n });
    let first_new = morphisms.len();
    let mark = if terminal { "!" } else { "¡" };
    for x in 0..n {
        let name = fresh(|s| c.morphism_index(s).is_some(), &format!("{mark}{}", c.object_name(x)));
        let (s, t) = if terminal { (x, n) } else { (n, x) };
        morphisms.push(Morphism { name, src: s, tgt: t });
    }
    let m = c.num_morphisms();
    let mut identity: Vec<Mor> = (0..n).map(|x| c.identity(x)).collect();
    identity.push(id_o);
    let cat = Arc::new(FinCat::from_parts(objects, morphisms.clone(), identity, |g, f| {
        if g < m && f < m {
            c.compose(g, f)
        } else if g == id_o {
            f
        } else if f == id_o {
            g
        } else if terminal {
            // g is !x, f: y -> x in C
            first_new + morphisms[f].src
        } else {
            // f is ¡x, g: x -> y in C
            first_new + morphisms[g].tgt
        }
    }));
    let eps = FinFunctor::new_unchecked(c.clone(), cat.clone(), (0..n).collect(), (0..m).collect());
    (cat, eps)
}

/// `C^>` with its embedding; the new object is last.
pub fn add_terminal(c: &CatRef) -> (CatRef, FinFunctor) {
    add_point(c, true)
}

/// `C^<` with its embedding; the new object is last.
pub fn add_initial(c: &CatRef) -> (CatRef, FinFunctor) {
    add_point(c, false)
}

/// `C0 * C1 = (C0^> × C1^>) ∖ {o × o}`.
pub fn join(c0: &CatRef, c1: &CatRef) -> CatRef {
    let (t0, _) = add_terminal(c0);
    let (t1, _) = add_terminal(c1);
    let prod = product(&t0, &t1);
    let keep: Vec<Obj> = (0..prod.cat.num_objects() - 1).collect();
    prod.cat.full_subcategory(&keep).0
}

/// The left adjoint `C0^> × C1^> → (C0 × C1)^>` sending every pair with
/// an `o` component to the new terminal object.
pub fn bicone_collapse(c0: &CatRef, c1: &CatRef) -> FinFunctor {
    let (t0, _) = add_terminal(c0);
    let (t1, _) = add_terminal(c1);
    let src = product(&t0, &t1).cat;
    let inner = product(c0, c1).cat;
    let (tgt, _) = add_terminal(&inner);
    let (n0, n1) = (c0.num_objects(), c1.num_objects());
    let (m1, mt1) = (c1.num_morphisms(), t1.num_morphisms());
    let o = tgt.num_objects() - 1;
    let obj_map: Vec<Obj> = (0..src.num_objects())
        .map(|k| {
            let (a, b) = (k / (n1 + 1), k % (n1 + 1));
            if a < n0 && b < n1 {
                a * n1 + b
            } else {
                o
            }
        })
        .collect();
    let mor_map = (0..src.num_morphisms())
        .map(|k| {
            let (f, g) = (k / mt1, k % mt1);
            let (s, t) = (obj_map[src.src(k)], obj_map[src.tgt(k)]);
            if t == o {
                tgt.hom(s, o)[0]
            } else {
                f * m1 + g
            }
        })
        .collect();
    FinFunctor::new_unchecked(src, tgt, obj_map, mor_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::category::{find_isomorphism, validate_category, RawCategory};
    use crate::poset::Poset;

    fn arrow() -> CatRef {
        Arc::new(Poset::chain(1).as_category())
    }

    fn projector() -> CatRef {
        Arc::new(FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)))
    }

    #[test]
    fn opposite_is_involutive() {
        let p = projector();
        assert_eq!(opposite(&p), *p);
        let a = arrow();
        let op = opposite(&a);
        assert_eq!(op.hom(1, 0).len(), 1);
        assert!(op.hom(0, 1).is_empty());
        assert_eq!(opposite(&op), *a);
    }

    #[test]
    fn product_counts() {
        let a = arrow();
        let sq = product(&a, &a);
        assert_eq!(sq.cat.num_objects(), 4);
        assert_eq!(sq.cat.num_morphisms(), 9);
        sq.cat.check_laws().unwrap();
        let pt = Arc::new(FinCat::point());
        let pc = product(&pt, &a);
        assert!(find_isomorphism(&pc.cat, &a, &Budget::default()).unwrap().is_some());
        let empty = Arc::new(FinCat::empty());
        assert!(product(&empty, &a).cat.is_empty());
    }

    #[test]
    fn left_comma_fiber_of_arrow_has_terminal_object() {
        let a = arrow();
        let fib = left_comma_fiber(&FinFunctor::identity(&a), 1);
        assert_eq!(fib.cat.num_objects(), 2);
        assert_eq!(fib.cat.num_morphisms(), 3);
        let t = fib.cat.terminal_object().unwrap();
        assert_eq!(fib.points[t], (1, a.identity(1)));
    }

    #[test]
    fn comma_over_point_is_the_category() {
        let p = projector();
        let pt = Arc::new(FinCat::point());
        let pi = FinFunctor::constant(&p, &pt, 0);
        let comma = comma_category(&pi, CommaSide::Left);
        assert!(comma.eta.is_isomorphism());
        FinFunctor::new(comma.eta.dom().clone(), comma.eta.cod().clone(), comma.eta.obj_map().to_vec(), comma.eta.mor_map().to_vec())
            .unwrap();
    }

    #[test]
    fn right_comma_fiber_can_be_empty() {
        let disc = Arc::new(FinCat::discrete(&["a", "b"]));
        let pt = Arc::new(FinCat::point());
        let pi = FinFunctor::constant(&pt, &disc, 0);
        assert!(right_comma_fiber(&pi, 1).cat.is_empty());
        assert_eq!(right_comma_fiber(&pi, 0).cat.num_objects(), 1);
    }

    #[test]
    fn comma_factorizations_hold() {
        let a = arrow();
        let pi = FinFunctor::identity(&a);
        for side in [CommaSide::Left, CommaSide::Right] {
            let comma = comma_category(&pi, side);
            comma.cat.check_laws().unwrap();
            let back = match side {
                CommaSide::Left => comma.tau.after(&comma.eta),
                CommaSide::Right => comma.sigma.after(&comma.eta),
            };
            assert_eq!(back, pi);
            assert!(comma.eta.is_fully_faithful());
        }
    }

    #[test]
    fn lax_fiber_product_of_identities_is_arrow_category() {
        let a = arrow();
        let id = FinFunctor::identity(&a);
        let lax = lax_fiber_product(&id, &id);
        assert_eq!(lax.cat.num_objects(), 3);
        let strict = fiber_product(&id, &id);
        assert_eq!(strict.cat.num_objects(), 2);
        let pt = Arc::new(FinCat::point());
        let idp = FinFunctor::identity(&pt);
        assert_eq!(lax_fiber_product(&idp, &idp).cat.num_morphisms(), 1);
    }

    #[test]
    fn join_of_points_and_star_identity() {
        let pt = Arc::new(FinCat::point());
        let j = join(&pt, &pt);
        assert_eq!(j.num_objects(), 3);
        assert!(j.initial_object().is_some());
        assert!(j.terminal_object().is_none());
        let (jt, _) = add_terminal(&j);
        let (t, _) = add_terminal(&pt);
        let sq = product(&t, &t).cat;
        assert!(find_isomorphism(&jt, &sq, &Budget::default()).unwrap().is_some());
    }

    #[test]
    fn add_terminal_to_empty_is_point() {
        let (t, _) = add_terminal(&Arc::new(FinCat::empty()));
        assert_eq!(t.num_objects(), 1);
        assert_eq!(t.num_morphisms(), 1);
        let a = arrow();
        let (t, _) = add_initial(&a);
        t.check_laws().unwrap();
        assert_eq!(t.initial_object(), Some(2));
    }

    #[test]
    fn bicone_collapse_is_a_functor() {
        let a = arrow();
        let p = projector();
        let f = bicone_collapse(&a, &p);
        FinFunctor::new(f.dom().clone(), f.cod().clone(), f.obj_map().to_vec(), f.mor_map().to_vec()).unwrap();
        let o = f.cod().num_objects() - 1;
        let src = f.dom();
        for k in 0..src.num_objects() {
            let name = src.object_name(k);
            if name.contains(",o)") || name.starts_with("(o,") {
                assert_eq!(f.ob(k), o);
            }
        }
    }

    #[test]
    fn assembled_constructions_pass_law_checks() {
        let raw = RawCategory {
            objects: vec!["x".into(), "y".into()],
            morphisms: vec![("f".into(), "x".into(), "y".into()), ("e".into(), "y".into(), "y".into())],
            composites: vec![("e".into(), "f".into(), "f".into()), ("e".into(), "e".into(), "e".into())],
        };
        let c = Arc::new(validate_category(&raw).unwrap());
        let id = FinFunctor::identity(&c);
        lax_fiber_product(&id, &id).cat.check_laws().unwrap();
        comma_category(&id, CommaSide::Right).cat.check_laws().unwrap();
        join(&c, &c).check_laws().unwrap();
    }
}
