//! Exhaustive enumeration of small categories, posets and set-valued
//! functors, each up to isomorphism where that is cheap to decide.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{identity_name, CatRef, FinCat, Mor, Morphism, Obj};
use crate::error::Result;
use crate::poset::Poset;
use crate::presheaf::{SetFunctor, Variance};

const UNSET: u8 = u8::MAX;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if k == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(k + 1, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn object_name(k: usize) -> String {
    const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "g", "h", "k"];
    NAMES.get(k).map_or_else(|| format!("o{k}"), |s| s.to_string())
}

/// Morphism layout for a hom-count matrix: hom-sets in row-major order,
/// identity first on the diagonal.
struct Layout {
    n: usize,
    counts: Vec<usize>,
    start: Vec<usize>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    is_id: Vec<bool>,
    identity: Vec<Mor>,
}

impl Layout {
    fn new(n: usize, counts: &[usize]) -> Layout {
        let (mut start, mut src, mut tgt, mut is_id) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let mut identity = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                start.push(src.len());
                for k in 0..counts[a * n + b] {
                    if a == b && k == 0 {
                        identity[a] = src.len();
                    }
                    src.push(a);
                    tgt.push(b);
                    is_id.push(a == b && k == 0);
                }
            }
        }
        Layout { n, counts: counts.to_vec(), start, src, tgt, is_id, identity }
    }

    fn m(&self) -> usize {
        self.src.len()
    }

    fn hom(&self, a: Obj, b: Obj) -> std::ops::Range<usize> {
        let s = self.start[a * self.n + b];
        s..s + self.counts[a * self.n + b]
    }

    fn non_identity(&self, a: Obj, b: Obj) -> std::ops::Range<usize> {
        let r = self.hom(a, b);
        if a == b {
            r.start + 1..r.end
        } else {
            r
        }
    }
}

/// Hom-count matrices with positive diagonal summing to `m`, lex-least
/// in their orbit under object permutations.
fn hom_matrices(n: usize, m: usize) -> Vec<Vec<usize>> {
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut cur = vec![0; n * n];
    fn go(k: usize, left: usize, n: usize, cur: &mut Vec<usize>, perms: &[Vec<usize>], out: &mut Vec<Vec<usize>>) {
        if k == n * n {
            if left == 0 {
                let canonical = perms.iter().all(|p| {
                    let permuted: Vec<usize> = (0..n * n).map(|i| cur[p[i / n] * n + p[i % n]]).collect();
                    *cur <= permuted
                });
                if canonical {
                    out.push(cur.clone());
                }
            }
            return;
        }
        let diag = k / n == k % n;
        let lo = usize::from(diag);
        for v in lo..=left {
            // reserve one identity for every later diagonal entry
            let later_diag = (k + 1..n * n).filter(|&i| i / n == i % n).count();
            if left - v < later_diag {
                break;
            }
            cur[k] = v;
            go(k + 1, left - v, n, cur, perms, out);
        }
        cur[k] = 0;
    }
    if n == 0 {
        return if m == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    go(0, m, n, &mut cur, &perms, &mut out);
    out
}

struct TableSearch<'a> {
    lay: &'a Layout,
    table: Vec<u8>,
    vars: Vec<(Mor, Mor)>,
    preimages: Vec<Vec<(Mor, Mor)>>,
}

impl TableSearch<'_> {
    fn get(&self, g: Mor, f: Mor) -> u8 {
        self.table[g * self.lay.m() + f]
    }

    fn consistent(&self, g: Mor, f: Mor) -> bool {
        let lay = self.lay;
        let k = self.get(g, f);
        let ok = |x: u8, z: u8| x == UNSET || z == UNSET || x == z;
        // (h, g, f): h ∘ k  vs  (h ∘ g) ∘ f
        for h in lay.hom(lay.tgt[g], lay.tgt[g]).chain(other_out(lay, lay.tgt[g])) {
            if lay.is_id[h] {
                continue;
            }
            let x = self.get(h, k as usize);
            let y = self.get(h, g);
            let z = if y == UNSET { UNSET } else { self.get(y as usize, f) };
            if !ok(x, z) {
                return false;
            }
        }
        // (g, f, e): (g ∘ f) ∘ e  vs  g ∘ (f ∘ e)
        for e in other_in(lay, lay.src[f]) {
            if lay.is_id[e] {
                continue;
            }
            let z = self.get(k as usize, e);
            let y = self.get(f, e);
            let x = if y == UNSET { UNSET } else { self.get(g, y as usize) };
            if !ok(x, z) {
                return false;
            }
        }
        // (g, x, y) with x ∘ y = f
        for &(x, y) in &self.preimages[f] {
            let gx = self.get(g, x);
            let z = if gx == UNSET { UNSET } else { self.get(gx as usize, y) };
            if !ok(k, z) {
                return false;
            }
        }
        // (x, y, f) with x ∘ y = g
        for &(x, y) in &self.preimages[g] {
            let yf = self.get(y, f);
            let z = if yf == UNSET { UNSET } else { self.get(x, yf as usize) };
            if !ok(k, z) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, v: usize, budget: &Budget, visit: &mut dyn FnMut(&[u8]) -> bool) -> Result<bool> {
        if v == self.vars.len() {
            return Ok(visit(&self.table));
        }
        let (g, f) = self.vars[v];
        let (a, c) = (self.lay.src[f], self.lay.tgt[g]);
        let m = self.lay.m();
        for k in self.lay.hom(a, c) {
            budget.tick("enumerating composition tables")?;
            self.table[g * m + f] = k as u8;
            self.preimages[k].push((g, f));
            let keep_going = !self.consistent(g, f) || self.run(v + 1, budget, visit)?;
            self.preimages[k].pop();
            if !keep_going {
                self.table[g * m + f] = UNSET;
                return Ok(false);
            }
        }
        self.table[g * m + f] = UNSET;
        Ok(true)
    }
}

// morphisms out of `a` other than endomorphisms
fn other_out(lay: &Layout, a: Obj) -> impl Iterator<Item = Mor> + '_ {
    (0..lay.n).filter(move |&b| b != a).flat_map(move |b| lay.hom(a, b))
}

// all morphisms into `a`
fn other_in(lay: &Layout, a: Obj) -> impl Iterator<Item = Mor> + '_ {
    (0..lay.n).flat_map(move |b| lay.hom(b, a))
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Isomorphism-invariant morphism colours by iterated refinement.
fn morphism_colours(lay: &Layout, table: &[u8]) -> Vec<u64> {
    let m = lay.m();
    let n = lay.n;
    let obj_sig: Vec<(Vec<usize>, Vec<usize>)> = (0..n)
        .map(|a| {
            let mut out: Vec<usize> = (0..n).map(|b| lay.counts[a * n + b]).collect();
            let mut inc: Vec<usize> = (0..n).map(|b| lay.counts[b * n + a]).collect();
            out.sort();
            inc.sort();
            (out, inc)
        })
        .collect();
    let mut colour: Vec<u64> = (0..m)
        .map(|f| {
            let endo = lay.src[f] == lay.tgt[f];
            let idem = endo && table[f * m + f] as usize == f;
            hash_of(&(lay.is_id[f], endo, idem, &obj_sig[lay.src[f]], &obj_sig[lay.tgt[f]]))
        })
        .collect();
    for _ in 0..3 {
        let next: Vec<u64> = (0..m)
            .map(|f| {
                let mut before: Vec<(u64, u64)> = Vec::new();
                let mut after: Vec<(u64, u64)> = Vec::new();
                for e in 0..m {
                    if lay.tgt[e] == lay.src[f] {
                        before.push((colour[e], colour[table[f * m + e] as usize]));
                    }
                    if lay.src[e] == lay.tgt[f] {
                        after.push((colour[e], colour[table[e * m + f] as usize]));
                    }
                }
                before.sort_unstable();
                after.sort_unstable();
                hash_of(&(colour[f], before, after))
            })
            .collect();
        colour = next;
    }
    colour
}

/// Least relabelled table among relabellings that list each hom-set in
/// increasing colour order.
fn canonical_table(lay: &Layout, table: &[u8], obj_perms: &[Vec<usize>]) -> Vec<u8> {
    let m = lay.m();
    let n = lay.n;
    let colour = morphism_colours(lay, table);
    let mut best: Option<Vec<u8>> = None;
    let mut rho = vec![0usize; m];
    for sigma in obj_perms {
        if (0..n * n).any(|i| lay.counts[sigma[i / n] * n + sigma[i % n]] != lay.counts[i]) {
            continue;
        }
        // groups: target slot ranges filled by same-coloured sources
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut feasible = true;
        for a in 0..n {
            rho[lay.identity[a]] = lay.identity[sigma[a]];
            for b in 0..n {
                let mut sources: Vec<usize> = lay.non_identity(a, b).collect();
                sources.sort_by_key(|&f| colour[f]);
                let slots: Vec<usize> = lay.non_identity(sigma[a], sigma[b]).collect();
                let mut i = 0;
                while i < sources.len() {
                    let mut j = i;
                    while j < sources.len() && colour[sources[j]] == colour[sources[i]] {
                        j += 1;
                    }
                    groups.push((sources[i..j].to_vec(), slots[i..j].to_vec()));
                    i = j;
                }
                feasible &= sources.len() == slots.len();
            }
        }
        if !feasible {
            continue;
        }
        fn assign(
            k: usize,
            groups: &[(Vec<usize>, Vec<usize>)],
            rho: &mut Vec<usize>,
            lay: &Layout,
            table: &[u8],
            best: &mut Option<Vec<u8>>,
        ) {
            if k == groups.len() {
                let m = lay.m();
                let mut inv = vec![0; m];
                for (f, &t) in rho.iter().enumerate() {
                    inv[t] = f;
                }
                let mut cand = Vec::with_capacity(m * m);
                for g in 0..m {
                    for f in 0..m {
                        if lay.tgt[f] == lay.src[g] && !lay.is_id[f] && !lay.is_id[g] {
                            cand.push(rho[table[inv[g] * m + inv[f]] as usize] as u8);
                        }
                    }
                }
                if best.as_ref().map_or(true, |b| cand < *b) {
                    *best = Some(cand);
                }
                return;
            }
            let (sources, slots) = &groups[k];
            for p in permutations(sources.len()) {
                for (i, &s) in sources.iter().enumerate() {
                    rho[s] = slots[p[i]];
                }
                assign(k + 1, groups, rho, lay, table, best);
            }
        }
        assign(0, &groups, &mut rho, lay, table, &mut best);
    }
    best.unwrap_or_default()
}

fn build(lay: &Layout, compact: &[u8]) -> FinCat {
    let m = lay.m();
    let objects: Vec<String> = (0..lay.n).map(object_name).collect();
    let mut next = 0;
    let morphisms: Vec<Morphism> = (0..m)
        .map(|f| {
            let name = if lay.is_id[f] {
                identity_name(&objects[lay.src[f]])
            } else {
                next += 1;
                format!("f{next}")
            };
            Morphism { name, src: lay.src[f], tgt: lay.tgt[f] }
        })
        .collect();
    let mut table = vec![0usize; m * m];
    let mut k = 0;
    for g in 0..m {
        for f in 0..m {
            if lay.tgt[f] != lay.src[g] {
                continue;
            }
            table[g * m + f] = if lay.is_id[f] {
                g
            } else if lay.is_id[g] {
                f
            } else {
                k += 1;
                compact[k - 1] as usize
            };
        }
    }
    FinCat::from_parts(objects, morphisms, lay.identity.clone(), |g, f| table[g * m + f])
}

/// Counts per stratum of an enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusStats {
    /// `(objects, morphisms, categories up to iso)` per completed stratum.
    pub strata: Vec<(usize, usize, usize)>,
    pub total: usize,
    /// False when the visitor stopped the enumeration early.
    pub complete: bool,
}

/// Visits every category with at most `max_objects` objects and
/// `max_morphisms` morphisms once up to isomorphism, by increasing
/// morphism count, then object count.
pub fn for_each_category(
    max_objects: usize,
    max_morphisms: usize,
    budget: &Budget,
    visit: &mut dyn FnMut(&CatRef) -> bool,
) -> Result<CorpusStats> {
    let mut stats = CorpusStats { complete: true, ..CorpusStats::default() };
    for m in 0..=max_morphisms {
        for n in 0..=max_objects.min(m) {
            let perms = permutations(n);
            let mut count = 0;
            for counts in hom_matrices(n, m) {
                let lay = Layout::new(n, &counts);
                let mut table = vec![UNSET; m * m];
                let mut vars = Vec::new();
                for g in 0..m {
                    for f in 0..m {
                        if lay.tgt[f] != lay.src[g] {
                            continue;
                        }
                        if lay.is_id[f] {
                            table[g * m + f] = g as u8;
                        } else if lay.is_id[g] {
                            table[g * m + f] = f as u8;
                        } else {
                            vars.push((g, f));
                        }
                    }
                }
                let mut search = TableSearch { lay: &lay, table, vars, preimages: vec![Vec::new(); m] };
                let mut seen: HashSet<Vec<u8>> = HashSet::new();
                let mut stopped = false;
                search.run(0, budget, &mut |t| {
                    let canon = canonical_table(&lay, t, &perms);
                    if seen.insert(canon.clone()) {
                        count += 1;
                        if !visit(&Arc::new(build(&lay, &canon))) {
                            stopped = true;
                            return false;
                        }
                    }
                    true
                })?;
                if stopped {
                    stats.total += count;
                    stats.complete = false;
                    return Ok(stats);
                }
            }
            stats.strata.push((n, m, count));
            stats.total += count;
        }
    }
    Ok(stats)
}

pub fn categories(max_objects: usize, max_morphisms: usize, budget: &Budget) -> Result<Vec<CatRef>> {
    let mut out = Vec::new();
    for_each_category(max_objects, max_morphisms, budget, &mut |c| {
        out.push(c.clone());
        true
    })?;
    Ok(out)
}

fn poset_canonical(p: &Poset) -> Vec<bool> {
    let n = p.len();
    let sig: Vec<(usize, usize)> = (0..n)
        .map(|a| ((0..n).filter(|&b| p.le(b, a)).count(), (0..n).filter(|&b| p.le(a, b)).count()))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| sig[a]);
    let mut best: Option<Vec<bool>> = None;
    // permute only within blocks of equal signature
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &a in &order {
        match blocks.last_mut() {
            Some(b) if sig[b[0]] == sig[a] => b.push(a),
            _ => blocks.push(vec![a]),
        }
    }
    fn go(k: usize, blocks: &[Vec<usize>], cur: &mut Vec<usize>, p: &Poset, best: &mut Option<Vec<bool>>) {
        if k == blocks.len() {
            let n = cur.len();
            let rel: Vec<bool> = (0..n * n).map(|i| p.le(cur[i / n], cur[i % n])).collect();
            if best.as_ref().map_or(true, |b| rel < *b) {
                *best = Some(rel);
            }
            return;
        }
        for perm in permutations(blocks[k].len()) {
            let len = cur.len();
            cur.extend(perm.iter().map(|&i| blocks[k][i]));
            go(k + 1, blocks, cur, p, best);
            cur.truncate(len);
        }
    }
    go(0, &blocks, &mut Vec::new(), p, &mut best);
    best.unwrap_or_default()
}

/// Posets with exactly `n` elements up to isomorphism, in canonical
/// form with elements named `0, 1, …`.
pub fn posets_of_size(n: usize) -> Vec<Poset> {
    let mut level: Vec<Poset> = vec![Poset::discrete::<&str>(&[])];
    for k in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &level {
            // add a new maximal element above a left-closed subset
            for mask in 0u32..(1 << k) {
                let members: Vec<bool> = (0..k).map(|a| mask & (1 << a) != 0).collect();
                if !p.is_left_closed(&members) {
                    continue;
                }
                let m = k + 1;
                let leq: Vec<bool> = (0..m * m)
                    .map(|i| {
                        let (a, b) = (i / m, i % m);
                        match (a == k, b == k) {
                            (false, false) => p.le(a, b),
                            (true, true) => true,
                            (false, true) => members[a],
                            (true, false) => false,
                        }
                    })
                    .collect();
                let names = (0..m).map(|a| a.to_string()).collect();
                let q = Poset::from_relation(names, leq).expect("extension of a poset by a maximal element");
                let canon = poset_canonical(&q);
                if seen.insert(canon.clone()) {
                    let names = (0..m).map(|a| a.to_string()).collect();
                    next.push(Poset::from_relation(names, canon).expect("relabelled poset"));
                }
            }
        }
        level = next;
    }
    level
}

/// Posets with at most `max` elements up to isomorphism, by size.
pub fn posets(max: usize) -> Vec<Poset> {
    (0..=max).flat_map(posets_of_size).collect()
}

/// Visits every set functor on `base` with value sets of size at most
/// `max_size`; atoms are named `0, 1, …`. Labelled enumeration: each
/// isomorphism class appears once per atom relabelling.
pub fn for_each_set_functor(
    base: &CatRef,
    variance: Variance,
    max_size: usize,
    budget: &Budget,
    visit: &mut dyn FnMut(&SetFunctor) -> bool,
) -> Result<bool> {
    let n = base.num_objects();
    let mut sizes = vec![0usize; n];
    loop {
        if !for_each_with_sizes(base, variance, &sizes, budget, visit)? {
            return Ok(false);
        }
        let mut k = 0;
        while k < n && sizes[k] == max_size {
            sizes[k] = 0;
            k += 1;
        }
        if k == n {
            return Ok(true);
        }
        sizes[k] += 1;
    }
}

/// Set functors with the given value-set sizes.
pub fn for_each_with_sizes(
    base: &CatRef,
    variance: Variance,
    sizes: &[usize],
    budget: &Budget,
    visit: &mut dyn FnMut(&SetFunctor) -> bool,
) -> Result<bool> {
    let c = base;
    let m = c.num_morphisms();
    let (from, to): (Vec<Obj>, Vec<Obj>) = (0..m)
        .map(|f| match variance {
            Variance::Covariant => (c.src(f), c.tgt(f)),
            Variance::Contravariant => (c.tgt(f), c.src(f)),
        })
        .unzip();
    let act: Vec<Vec<usize>> = (0..m).map(|f| if c.is_identity(f) { (0..sizes[from[f]]).collect() } else { Vec::new() }).collect();
    let labels: Vec<Vec<String>> = sizes.iter().map(|&s| (0..s).map(|k| k.to_string()).collect()).collect();

    // composites to check once g, f and g∘f are all assigned
    let composable: Vec<(Mor, Mor, Mor)> = (0..m)
        .flat_map(|g| (0..m).filter_map(move |f| c.try_compose(g, f).map(|gf| (g, f, gf))))
        .filter(|&(g, f, _)| !c.is_identity(g) && !c.is_identity(f))
        .collect();

    // Free morphisms first; a morphism whose value follows from two
    // already ordered ones is placed as soon as that happens.
    let mut vars: Vec<Mor> = Vec::new();
    let mut forced: Vec<Option<(Mor, Mor)>> = Vec::new();
    let mut placed: Vec<bool> = (0..m).map(|f| c.is_identity(f)).collect();
    let mut remaining: Vec<Mor> = c.non_identity_morphisms().collect();
    while !remaining.is_empty() {
        let next = composable
            .iter()
            .find(|&&(g, f, gf)| !placed[gf] && gf != g && gf != f && placed[g] && placed[f])
            .map(|&(g, f, gf)| (gf, Some((g, f))));
        let (f, how) = next.unwrap_or((remaining[0], None));
        placed[f] = true;
        remaining.retain(|&r| r != f);
        vars.push(f);
        forced.push(how);
    }
    let pos_of: Vec<usize> = {
        let mut p = vec![usize::MAX; m];
        for (k, &f) in vars.iter().enumerate() {
            p[f] = k;
        }
        p
    };
    let mut checks: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); vars.len()];
    for &(g, f, gf) in &composable {
        let last = [g, f, gf].iter().filter(|&&x| pos_of[x] != usize::MAX).map(|&x| pos_of[x]).max();
        if let Some(last) = last {
            checks[last].push((g, f, gf));
        }
    }
    struct Plan<'a> {
        vars: &'a [Mor],
        forced: &'a [Option<(Mor, Mor)>],
        from: &'a [Obj],
        to: &'a [Obj],
        sizes: &'a [usize],
        checks: &'a [Vec<(Mor, Mor, Mor)>],
        variance: Variance,
    }
    impl Plan<'_> {
        // X(g)∘X(f) covariantly, X(f)∘X(g) contravariantly
        fn composite(&self, act: &[Vec<usize>], g: Mor, f: Mor, x: usize) -> usize {
            match self.variance {
                Variance::Covariant => act[g][act[f][x]],
                Variance::Contravariant => act[f][act[g][x]],
            }
        }

        fn consistent(&self, act: &[Vec<usize>], k: usize) -> bool {
            self.checks[k].iter().all(|&(g, f, gf)| {
                let first = if self.variance == Variance::Covariant { f } else { g };
                (0..self.sizes[self.from[first]]).all(|x| self.composite(act, g, f, x) == act[gf][x])
            })
        }

        fn go(&self, k: usize, x: &mut SetFunctor, budget: &Budget, visit: &mut dyn FnMut(&SetFunctor) -> bool) -> Result<bool> {
            if k == self.vars.len() {
                return Ok(visit(x));
            }
            let act = x.act_mut();
            let f = self.vars[k];
            let (a, b) = (self.sizes[self.from[f]], self.sizes[self.to[f]]);
            if a > 0 && b == 0 {
                return Ok(true);
            }
            if let Some((g, h)) = self.forced[k] {
                budget.tick("enumerating set functors")?;
                act[f] = (0..a).map(|e| self.composite(act, g, h, e)).collect();
                return if self.consistent(act, k) { self.go(k + 1, x, budget, visit) } else { Ok(true) };
            }
            let mut func = vec![0usize; a];
            loop {
                budget.tick("enumerating set functors")?;
                let act = x.act_mut();
                act[f].clone_from(&func);
                if self.consistent(act, k) && !self.go(k + 1, x, budget, visit)? {
                    return Ok(false);
                }
                // next function in lexicographic order
                let mut i = 0;
                while i < a && func[i] + 1 == b {
                    func[i] = 0;
                    i += 1;
                }
                if i == a {
                    return Ok(true);
                }
                func[i] += 1;
            }
        }
    }
    let plan = Plan { vars: &vars, forced: &forced, from: &from, to: &to, sizes, checks: &checks, variance };
    let mut x = SetFunctor::new_unchecked(base.clone(), variance, labels, act);
    plan.go(0, &mut x, budget, visit)
}

pub fn set_functors(base: &CatRef, variance: Variance, max_size: usize, budget: &Budget) -> Result<Vec<SetFunctor>> {
    let mut out = Vec::new();
    for_each_set_functor(base, variance, max_size, budget, &mut |x| {
        out.push(x.clone());
        true
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(max_obj: usize, max_mor: usize) -> usize {
        categories(max_obj, max_mor, &Budget::default()).unwrap().len()
    }

    #[test]
    fn monoid_counts_match_known_values() {
        // monoids of order 1..=5 up to isomorphism: 1, 2, 7, 35, 228
        let b = Budget::default();
        let stats = for_each_category(1, 5, &b, &mut |c| {
            c.check_laws().unwrap();
            true
        })
        .unwrap();
        let monoids: Vec<usize> = stats.strata.iter().filter(|s| s.0 == 1).map(|s| s.2).collect();
        assert_eq!(monoids, vec![1, 2, 7, 35, 228]);
    }

    #[test]
    fn small_category_counts() {
        assert_eq!(count(0, 0), 1);
        // ∅, pt, pt+pt, Z/2, projector
        assert_eq!(count(2, 2), 5);
        // order-3 monoids, [1], Z/2 + pt, projector + pt
        assert_eq!(count(2, 3), 5 + 7 + 3);
    }

    #[test]
    fn poset_counts_match_known_values() {
        let counts: Vec<usize> = (0..=6).map(|n| posets_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn set_functor_counts() {
        let pt = Arc::new(FinCat::point());
        assert_eq!(set_functors(&pt, Variance::Covariant, 3, &Budget::default()).unwrap().len(), 4);
        let arrow = Poset::chain(1).as_category_ref();
        // sizes (a, b) with maps b^a: 1+1+1+1 + 1+2+4 + 0+1+... computed directly
        let all = set_functors(&arrow, Variance::Covariant, 2, &Budget::default()).unwrap();
        let expected: usize = (0..=2usize).flat_map(|a| (0..=2usize).map(move |b| b.pow(a as u32))).sum();
        assert_eq!(all.len(), expected);
        for x in &all {
            SetFunctor::new(x.base().clone(), x.variance(), (0..2).map(|o| x.labels(o).to_vec()).collect(), (0..3).map(|f| x.act(f).to_vec()).collect()).unwrap();
        }
    }
}
