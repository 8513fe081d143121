//! Finite posets, left-closed subsets, gluing along left-closed embeddings
//! and the height decomposition.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{for_each_functor, identity_name, CatRef, FinCat, FunctorSearch, Mor, Morphism};
use crate::error::{Error, Result};

/// A finite poset stored as its full `≤` relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<bool>,
    // index of the morphism a → b in `as_category`, or usize::MAX
    pair_index: Vec<usize>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rel: Vec<String> = self
            .strict_pairs()
            .map(|(a, b)| format!("{}<={}", self.elements[a], self.elements[b]))
            .collect();
        f.debug_struct("Poset").field("elements", &self.elements).field("lt", &rel).finish()
    }
}

impl Poset {
    /// Validates a full relation given as a row-major `n × n` matrix.
    pub fn from_relation(elements: Vec<String>, leq: Vec<bool>) -> Result<Poset> {
        let n = elements.len();
        if leq.len() != n * n {
            return Err(Error::Poset("relation matrix has the wrong size".into()));
        }
        let mut sorted = elements.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Poset(format!("duplicate element {}", w[0])));
        }
        for a in 0..n {
            if !leq[a * n + a] {
                return Err(Error::Poset(format!("relation is not reflexive at {}", elements[a])));
            }
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::Poset(format!("antisymmetry fails for {} and {}", elements[a], elements[b])));
                }
                for c in 0..n {
                    if leq[a * n + b] && leq[b * n + c] && !leq[a * n + c] {
                        return Err(Error::Poset(format!(
                            "transitivity fails for {} <= {} <= {}",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(Poset::new_unchecked(elements, leq))
    }

    fn new_unchecked(elements: Vec<String>, leq: Vec<bool>) -> Poset {
        let n = elements.len();
        let mut pair_index = vec![usize::MAX; n * n];
        let mut k = 0;
        for a in 0..n {
            for b in 0..n {
                if leq[a * n + b] {
                    pair_index[a * n + b] = k;
                    k += 1;
                }
            }
        }
        Poset { elements, leq, pair_index }
    }

    /// Reflexive-transitive closure of generating pairs `a ≤ b`.
    pub fn from_generators(elements: Vec<String>, generators: &[(usize, usize)]) -> Result<Poset> {
        let n = elements.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &(a, b) in generators {
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a * n + k] {
                    for b in 0..n {
                        if leq[k * n + b] {
                            leq[a * n + b] = true;
                        }
                    }
                }
            }
        }
        Poset::from_relation(elements, leq)
    }

    /// The chain `[n] = {0 < 1 < … < n}`.
    pub fn chain(n: usize) -> Poset {
        let elements: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
        let m = n + 1;
        let leq = (0..m * m).map(|k| k / m <= k % m).collect();
        Poset::new_unchecked(elements, leq)
    }

    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Poset {
        let n = names.len();
        let leq = (0..n * n).map(|k| k / n == k % n).collect();
        Poset::new_unchecked(names.iter().map(|s| s.as_ref().to_string()).collect(), leq)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn relation(&self) -> &[bool] {
        &self.leq
    }

    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n * n).map(move |k| (k / n, k % n)).filter(move |&(a, b)| self.lt(a, b))
    }

    /// Covering pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.strict_pairs().filter(|&(a, b)| !(0..n).any(|c| self.lt(a, c) && self.lt(c, b))).collect()
    }

    /// Index of the morphism `a → b` in [`Poset::as_category`].
    pub fn morphism_index(&self, a: usize, b: usize) -> Option<Mor> {
        let k = self.pair_index[a * self.len() + b];
        (k != usize::MAX).then_some(k)
    }

    /// One morphism per pair `a ≤ b`, ordered lexicographically by `(a, b)`;
    /// identities are `id_a`, the others `a<=b`.
    pub fn as_category(&self) -> FinCat {
        let n = self.len();
        let mut morphisms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.le(a, b) {
                    let name = if a == b {
                        identity_name(&self.elements[a])
                    } else {
                        format!("{}<={}", self.elements[a], self.elements[b])
                    };
                    morphisms.push(Morphism { name, src: a, tgt: b });
                }
            }
        }
        let identity = (0..n).map(|a| self.pair_index[a * n + a]).collect();
        let pairs = morphisms.clone();
        FinCat::from_parts(self.elements.clone(), morphisms, identity, |g, f| {
            self.pair_index[pairs[f].src * n + pairs[g].tgt]
        })
    }

    pub fn as_category_ref(&self) -> CatRef {
        Arc::new(self.as_category())
    }

    /// Inverse of [`Poset::as_category`] on thin skeletal categories.
    pub fn try_from_category(c: &FinCat) -> Option<Poset> {
        if !c.is_thin_skeletal() {
            return None;
        }
        let n = c.num_objects();
        let leq = (0..n * n).map(|k| !c.hom(k / n, k % n).is_empty()).collect();
        Some(Poset::new_unchecked(c.objects().to_vec(), leq))
    }

    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let leq = (0..n * n).map(|k| self.le(k % n, k / n)).collect();
        Poset::new_unchecked(self.elements.clone(), leq)
    }

    fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('\'');
        }
        name
    }

    /// `J^>`; the new element is last.
    pub fn with_top(&self) -> Poset {
        self.with_point(true)
    }

    /// `J^<`; the new element is last.
    pub fn with_bottom(&self) -> Poset {
        self.with_point(false)
    }

    fn with_point(&self, top: bool) -> Poset {
        let n = self.len();
        let mut elements = self.elements.clone();
        elements.push(self.fresh_name("o"));
        let m = n + 1;
        let leq = (0..m * m)
            .map(|k| {
                let (a, b) = (k / m, k % m);
                match (a == n, b == n) {
                    (false, false) => self.le(a, b),
                    (true, true) => true,
                    (false, true) => top,
                    (true, false) => !top,
                }
            })
            .collect();
        Poset::new_unchecked(elements, leq)
    }

    /// Full subposet on `members`, in the given order.
    pub fn full_subposet(&self, members: &[usize]) -> Poset {
        let m = members.len();
        let leq = (0..m * m).map(|k| self.le(members[k / m], members[k % m])).collect();
        Poset::new_unchecked(members.iter().map(|&a| self.elements[a].clone()).collect(), leq)
    }

    /// `J/j`.
    pub fn down_set(&self, j: usize) -> Vec<bool> {
        (0..self.len()).map(|a| self.le(a, j)).collect()
    }

    /// `J/'j = J/j ∖ {j}`.
    pub fn strict_down_set(&self, j: usize) -> Vec<bool> {
        (0..self.len()).map(|a| self.lt(a, j)).collect()
    }

    pub fn is_left_closed(&self, members: &[bool]) -> bool {
        self.strict_pairs().all(|(a, b)| !members[b] || members[a])
    }

    pub fn is_right_closed(&self, members: &[bool]) -> bool {
        self.strict_pairs().all(|(a, b)| !members[a] || members[b])
    }

    /// Longest strict chain ending at each element.
    pub fn height_map(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| self.le(b, a)).count());
        let mut height = vec![0; n];
        for &a in &order {
            height[a] = (0..n).filter(|&b| self.lt(b, a)).map(|b| height[b] + 1).max().unwrap_or(0);
        }
        height
    }

    /// Largest length of a non-degenerate chain; 0 for the empty poset.
    pub fn dimension(&self) -> usize {
        self.height_map().into_iter().max().unwrap_or(0)
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&g| (0..self.len()).all(|a| self.le(a, g)))
    }

    pub fn upper_bound(&self, members: &[usize]) -> Option<usize> {
        (0..self.len()).find(|&u| members.iter().all(|&a| self.le(a, u)))
    }

    /// Directedness: every pair (and the empty subset) has an upper bound.
    pub fn is_directed(&self) -> Directedness {
        let greatest = self.greatest();
        if self.is_empty() {
            return Directedness { directed: false, witness: None, greatest };
        }
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.upper_bound(&[a, b]).is_none() {
                    return Directedness { directed: false, witness: Some((a, b)), greatest };
                }
            }
        }
        Directedness { directed: true, witness: None, greatest }
    }

    /// An order isomorphism `self → other` as an element map, if one exists.
    pub fn isomorphism_to(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let profile = |p: &Poset, a: usize| {
            let down = (0..n).filter(|&b| p.le(b, a)).count();
            let up = (0..n).filter(|&b| p.le(a, b)).count();
            (down, up)
        };
        let ps: Vec<_> = (0..n).map(|a| profile(self, a)).collect();
        let po: Vec<_> = (0..n).map(|a| profile(other, a)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            k: usize,
            a: &Poset,
            b: &Poset,
            ps: &[(usize, usize)],
            po: &[(usize, usize)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if k == a.len() {
                return true;
            }
            for t in 0..b.len() {
                if used[t] || ps[k] != po[t] {
                    continue;
                }
                if (0..k).all(|j| a.le(j, k) == b.le(map[j], t) && a.le(k, j) == b.le(t, map[j])) {
                    map[k] = t;
                    used[t] = true;
                    if go(k + 1, a, b, ps, po, map, used) {
                        return true;
                    }
                    used[t] = false;
                }
            }
            false
        }
        go(0, self, other, &ps, &po, &mut map, &mut used).then_some(map)
    }

    /// Checks that `map: self → other` is monotone.
    pub fn is_monotone(&self, other: &Poset, map: &[usize]) -> bool {
        self.strict_pairs().all(|(a, b)| other.le(map[a], map[b]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Directedness {
    pub directed: bool,
    /// A pair without an upper bound.
    pub witness: Option<(usize, usize)>,
    pub greatest: Option<usize>,
}

/// Non-degenerate chains of each length `0..=max_len`.
pub fn chain_count(c: &FinCat, max_len: usize) -> Vec<u64> {
    let n = c.num_objects();
    let mut ending = vec![1u64; n];
    let mut counts = vec![n as u64];
    for _ in 0..max_len {
        let mut next = vec![0u64; n];
        for f in c.non_identity_morphisms() {
            next[c.tgt(f)] = next[c.tgt(f)].saturating_add(ending[c.src(f)]);
        }
        counts.push(next.iter().fold(0u64, |acc, &x| acc.saturating_add(x)));
        ending = next;
    }
    counts
}

/// A left-closed subset of an ambient poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftClosedSet {
    members: Vec<bool>,
}

impl LeftClosedSet {
    pub fn new(ambient: &Poset, members: Vec<bool>) -> Result<LeftClosedSet> {
        if members.len() != ambient.len() || !ambient.is_left_closed(&members) {
            return Err(Error::Poset("subset is not left-closed".into()));
        }
        Ok(LeftClosedSet { members })
    }

    pub fn empty(ambient: &Poset) -> LeftClosedSet {
        LeftClosedSet { members: vec![false; ambient.len()] }
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members[a]
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&a| self.members[a]).collect()
    }

    pub fn is_subset(&self, other: &LeftClosedSet) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn label(&self, ambient: &Poset) -> String {
        let names: Vec<&str> = self.members().into_iter().map(|a| ambient.name(a)).collect();
        if names.is_empty() {
            "∅".to_string()
        } else {
            format!("{{{}}}", names.join(","))
        }
    }
}

/// `Λ(S) = ⋃_{s ∈ S} J/s`.
pub fn lambda_closure(j: &Poset, s: &[bool]) -> LeftClosedSet {
    let n = j.len();
    let members = (0..n).map(|a| (0..n).any(|b| s[b] && j.le(a, b))).collect();
    LeftClosedSet { members }
}

/// `L(J)` ordered by inclusion, with the subsets in the same order.
pub fn left_closed_sets(j: &Poset) -> (Poset, Vec<LeftClosedSet>) {
    let n = j.len();
    assert!(n < 24, "too many subsets to enumerate");
    let mut sets = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<bool> = (0..n).map(|a| mask & (1 << a) != 0).collect();
        if j.is_left_closed(&members) {
            sets.push(LeftClosedSet { members });
        }
    }
    let m = sets.len();
    let leq = (0..m * m).map(|k| sets[k / m].is_subset(&sets[k % m])).collect();
    let names = sets.iter().map(|s| s.label(j)).collect();
    (Poset::new_unchecked(names, leq), sets)
}

/// `λ: J1 → L(J0)` describing how `J1` sits above `J0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingDatum {
    pub j0: Poset,
    pub j1: Poset,
    pub lambda: Vec<LeftClosedSet>,
}

impl GluingDatum {
    pub fn new(j0: Poset, j1: Poset, lambda: Vec<LeftClosedSet>) -> Result<GluingDatum> {
        if lambda.len() != j1.len() || lambda.iter().any(|l| l.members.len() != j0.len() || !j0.is_left_closed(&l.members)) {
            return Err(Error::Poset("λ must assign a left-closed subset of J0 to each element of J1".into()));
        }
        for (a, b) in j1.strict_pairs() {
            if !lambda[a].is_subset(&lambda[b]) {
                return Err(Error::NonMonotoneLambda { lower: j1.name(a).to_string(), upper: j1.name(b).to_string() });
            }
        }
        Ok(GluingDatum { j0, j1, lambda })
    }
}

/// `J0 ⊔_λ J1` with its two embeddings.
#[derive(Clone, Debug)]
pub struct Glued {
    pub poset: Poset,
    pub eps0: Vec<usize>,
    pub eps1: Vec<usize>,
}

pub fn glue(d: &GluingDatum) -> Result<Glued> {
    let (n0, n1) = (d.j0.len(), d.j1.len());
    let mut elements = d.j0.elements.clone();
    elements.extend(d.j1.elements.iter().cloned());
    let n = n0 + n1;
    let leq = (0..n * n)
        .map(|k| {
            let (a, b) = (k / n, k % n);
            match (a < n0, b < n0) {
                (true, true) => d.j0.le(a, b),
                (false, false) => d.j1.le(a - n0, b - n0),
                (true, false) => d.lambda[b - n0].contains(a),
                (false, true) => false,
            }
        })
        .collect();
    let poset = Poset::from_relation(elements, leq)?;
    Ok(Glued { poset, eps0: (0..n0).collect(), eps1: (n0..n).collect() })
}

/// Splits `J` along a left-closed `J0` with `λ = ε0^† ∘ Y ∘ ε1`.
pub fn split(j: &Poset, j0: &LeftClosedSet) -> (GluingDatum, Vec<usize>, Vec<usize>) {
    let lower = j0.members();
    let upper: Vec<usize> = (0..j.len()).filter(|&a| !j0.contains(a)).collect();
    let lambda = upper
        .iter()
        .map(|&u| LeftClosedSet { members: lower.iter().map(|&l| j.le(l, u)).collect() })
        .collect();
    let datum = GluingDatum { j0: j.full_subposet(&lower), j1: j.full_subposet(&upper), lambda };
    (datum, lower, upper)
}

/// `J ≅ J_{<n} ⊔_λ J_n` for `n = dim J`, with `λ(j) = J/'j`.
#[derive(Clone, Debug)]
pub struct HeightDecomposition {
    pub dimension: usize,
    pub datum: GluingDatum,
    /// Elements of `J` making up `J_{<n}` and `J_n`.
    pub lower: Vec<usize>,
    pub top: Vec<usize>,
}

pub fn height_decomposition(j: &Poset) -> HeightDecomposition {
    let dimension = j.dimension();
    let ht = j.height_map();
    let members = (0..j.len()).map(|a| ht[a] < dimension || j.len() == 0).collect();
    let (datum, lower, top) = split(j, &LeftClosedSet { members });
    HeightDecomposition { dimension, datum, lower, top }
}

/// The square `∐λ(j) → ∐λ(j)^>`, `∐λ(j) → J_{<n}`, both into `J`.
#[derive(Clone, Debug)]
pub struct PushoutSquare {
    pub corner: Poset,
    pub cones: Poset,
    pub lower: Poset,
    pub whole: Poset,
    pub corner_to_cones: Vec<usize>,
    pub corner_to_lower: Vec<usize>,
    pub cones_to_whole: Vec<usize>,
    pub lower_to_whole: Vec<usize>,
}

pub fn pushout_square(j: &Poset) -> PushoutSquare {
    let hd = height_decomposition(j);
    let lower = hd.datum.j0.clone();
    let mut corner_elems = Vec::new();
    let mut corner_to_lower = Vec::new();
    let mut cone_elems = Vec::new();
    let mut cone_src = Vec::new();
    let mut corner_to_cones = Vec::new();
    let mut cones_to_whole = Vec::new();
    // component index per element, for the disjoint-union orders
    let mut corner_comp = Vec::new();
    let mut cone_comp = Vec::new();
    for (t, &top) in hd.top.iter().enumerate() {
        for l in hd.datum.lambda[t].members() {
            corner_to_cones.push(cone_elems.len());
            corner_elems.push(format!("{}@{}", lower.name(l), j.name(top)));
            corner_to_lower.push(l);
            corner_comp.push(t);
            cone_elems.push(format!("{}@{}", lower.name(l), j.name(top)));
            cone_src.push(Some(l));
            cone_comp.push(t);
            cones_to_whole.push(hd.lower[l]);
        }
        cone_elems.push(format!("⊤@{}", j.name(top)));
        cone_src.push(None);
        cone_comp.push(t);
        cones_to_whole.push(top);
    }
    let nc = corner_elems.len();
    let corner_leq = (0..nc * nc)
        .map(|k| {
            let (a, b) = (k / nc, k % nc);
            corner_comp[a] == corner_comp[b] && lower.le(corner_to_lower[a], corner_to_lower[b])
        })
        .collect();
    let ne = cone_elems.len();
    let cone_leq = (0..ne * ne)
        .map(|k| {
            let (a, b) = (k / ne, k % ne);
            cone_comp[a] == cone_comp[b]
                && match (cone_src[a], cone_src[b]) {
                    (Some(x), Some(y)) => lower.le(x, y),
                    (_, None) => true,
                    (None, Some(_)) => false,
                }
        })
        .collect();
    PushoutSquare {
        corner: Poset::new_unchecked(corner_elems, corner_leq),
        cones: Poset::new_unchecked(cone_elems, cone_leq),
        lower,
        whole: j.clone(),
        corner_to_cones,
        corner_to_lower,
        cones_to_whole,
        lower_to_whole: hd.lower,
    }
}

/// Outcome of testing a square of posets against one target category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocartesianCheck {
    pub target: String,
    pub functors_from_whole: usize,
    pub compatible_pairs: usize,
    pub bijective: bool,
}

fn restrict(src: &Poset, dst: &Poset, along: &[usize], obj: &[usize], mor: &[Mor]) -> (Vec<usize>, Vec<Mor>) {
    let objs = along.iter().map(|&a| obj[a]).collect();
    let mut mors = Vec::new();
    for a in 0..src.len() {
        for b in 0..src.len() {
            if src.le(a, b) {
                mors.push(mor[dst.morphism_index(along[a], along[b]).expect("map is monotone")]);
            }
        }
    }
    (objs, mors)
}

type Restriction = (Vec<usize>, Vec<Mor>);

impl PushoutSquare {
    /// Compares functors `J → E` with compatible pairs of functors out of
    /// the two legs of the square.
    pub fn check_against(&self, target: &FinCat, budget: &Budget) -> Result<CocartesianCheck> {
        let (cones_cat, lower_cat, whole_cat) = (self.cones.as_category(), self.lower.as_category(), self.whole.as_category());
        let spec = FunctorSearch::default();
        let mut from_cones: HashMap<Restriction, Vec<Restriction>> = HashMap::new();
        for_each_functor(&cones_cat, target, &spec, budget, &mut |o, m| {
            let key = restrict(&self.corner, &self.cones, &self.corner_to_cones, o, m);
            from_cones.entry(key).or_default().push((o.to_vec(), m.to_vec()));
            true
        })?;
        let mut pairs: HashMap<(Restriction, Restriction), usize> = HashMap::new();
        for_each_functor(&lower_cat, target, &spec, budget, &mut |o, m| {
            let key = restrict(&self.corner, &self.lower, &self.corner_to_lower, o, m);
            if let Some(list) = from_cones.get(&key) {
                for b in list {
                    pairs.insert((b.clone(), (o.to_vec(), m.to_vec())), 0);
                }
            }
            true
        })?;
        let compatible_pairs = pairs.len();
        let mut functors_from_whole = 0;
        let mut injective = true;
        let mut all_hit = true;
        for_each_functor(&whole_cat, target, &spec, budget, &mut |o, m| {
            functors_from_whole += 1;
            let b = restrict(&self.cones, &self.whole, &self.cones_to_whole, o, m);
            let c = restrict(&self.lower, &self.whole, &self.lower_to_whole, o, m);
            match pairs.get_mut(&(b, c)) {
                Some(count) => {
                    *count += 1;
                    injective &= *count == 1;
                }
                None => all_hit = false,
            }
            true
        })?;
        let surjective = pairs.values().all(|&c| c == 1);
        Ok(CocartesianCheck {
            target: format!("{target:?}"),
            functors_from_whole,
            compatible_pairs,
            bijective: injective && surjective && all_hit,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_op() -> Poset {
        Poset::from_generators(vec!["0".into(), "1".into(), "o".into()], &[(0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn chain_as_category() {
        let c = Poset::chain(2).as_category();
        assert_eq!(c.num_morphisms(), 6);
        c.check_laws().unwrap();
        assert_eq!(Poset::try_from_category(&c).unwrap(), Poset::chain(2));
        assert_eq!(Poset::discrete(&["a", "b"]).as_category().num_morphisms(), 2);
    }

    #[test]
    fn chain_count_of_projector_category() {
        let p = FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b));
        assert_eq!(chain_count(&p, 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn dimensions_and_heights() {
        assert_eq!(Poset::chain(4).dimension(), 4);
        assert_eq!(Poset::chain(4).height_map(), vec![0, 1, 2, 3, 4]);
        let v = v_op();
        assert_eq!(v.dimension(), 1);
        assert_eq!(v.height_map(), vec![0, 0, 1]);
    }

    #[test]
    fn left_closed_sets_of_arrow() {
        let (l, sets) = left_closed_sets(&Poset::chain(1));
        assert_eq!(l.len(), 3);
        assert_eq!(sets.len(), 3);
        let j = Poset::chain(1);
        assert_eq!(lambda_closure(&j, &[false, true]).members(), vec![0, 1]);
        assert!(lambda_closure(&j, &[false, false]).members().is_empty());
    }

    #[test]
    fn glue_examples() {
        let a = Poset::discrete(&["a"]);
        let b = Poset::discrete(&["b"]);
        let d = GluingDatum::new(a.clone(), b, vec![LeftClosedSet::new(&a, vec![true]).unwrap()]).unwrap();
        let g = glue(&d).unwrap();
        assert!(g.poset.isomorphism_to(&Poset::chain(1)).is_some());

        let j0 = Poset::chain(1);
        let j1 = Poset::discrete(&["u", "v"]);
        let lam = vec![LeftClosedSet::new(&j0, vec![true, false]).unwrap(), LeftClosedSet::new(&j0, vec![true, true]).unwrap()];
        let g = glue(&GluingDatum::new(j0, j1, lam).unwrap()).unwrap();
        assert_eq!(g.poset.len(), 4);
        assert_eq!(g.poset.dimension(), 2);
    }

    #[test]
    fn non_monotone_lambda_is_rejected() {
        let j0 = Poset::chain(1);
        let j1 = Poset::chain(1);
        let lam = vec![LeftClosedSet::new(&j0, vec![true, true]).unwrap(), LeftClosedSet::new(&j0, vec![true, false]).unwrap()];
        assert!(matches!(GluingDatum::new(j0, j1, lam), Err(Error::NonMonotoneLambda { .. })));
    }

    #[test]
    fn split_and_reglue_chain() {
        let j = Poset::chain(2);
        let j0 = LeftClosedSet::new(&j, vec![true, true, false]).unwrap();
        let (d, _, _) = split(&j, &j0);
        assert_eq!(d.lambda[0].members(), vec![0, 1]);
        let g = glue(&d).unwrap();
        assert!(g.poset.isomorphism_to(&j).is_some());
    }

    #[test]
    fn height_decomposition_of_v() {
        let hd = height_decomposition(&v_op());
        assert_eq!(hd.lower, vec![0, 1]);
        assert_eq!(hd.top, vec![2]);
        assert_eq!(hd.datum.lambda[0].members(), vec![0, 1]);
        let hd = height_decomposition(&Poset::chain(1));
        assert_eq!(hd.datum.lambda[0].members(), vec![0]);
    }

    #[test]
    fn directedness() {
        assert!(Poset::chain(3).is_directed().directed);
        let d = Poset::discrete(&["a", "b"]).is_directed();
        assert!(!d.directed);
        assert_eq!(d.witness, Some((0, 1)));
        let (l, _) = left_closed_sets(&Poset::chain(2));
        assert!(l.is_directed().directed);
    }

    #[test]
    fn pushout_square_of_arrow_is_cocartesian() {
        let sq = pushout_square(&Poset::chain(1));
        let target = Poset::chain(2).as_category();
        let check = sq.check_against(&target, &Budget::default()).unwrap();
        assert!(check.bijective);
        assert_eq!(check.functors_from_whole, 6);
    }

    #[test]
    fn top_increases_dimension() {
        let v = v_op();
        assert_eq!(v.with_top().dimension(), v.dimension() + 1);
        assert_eq!(v.with_bottom().opposite().dimension(), 2);
    }
}
