//! Exhaustive lemma suites over the bounded corpus.
//!
//! Each suite enumerates its instances in canonical order, runs the
//! relevant check on every instance and counts failures. A suite stops at
//! its deadline and then reports how far it got; it never skips instances
//! silently.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::budget::Budget;
use crate::category::{
    colimit, connected_components, find_id_cone, for_each_functor, limit, product, CatRef, FinCat, FinFunctor,
    FunctorSearch, Morphism,
};
use crate::corpus::{categories, for_each_category, for_each_set_functor, posets, set_functors};
use crate::error::{Error, Result};
use crate::filtered::{
    check_con_le, check_cofinal_subcategory, check_cone_le, dim1_shapes, filt_commute_check, filter_report, CommuteSetup,
};
use crate::grothendieck::{
    check_dim1_le, check_lax_ind_shadow, check_set_degeneration, check_single_arrow, check_yoneda_lax_kan,
    colax_limit, for_each_cat_diagram, CatDiagram,
};
use crate::ind::{
    check_ind_composition, check_presheaf_full_faithfulness, is_ind_object, karoubi_identification, presheaf_of, IndPresentation,
};
use crate::nerve::verify_v_localization;
use crate::poset::{glue, lambda_closure, left_closed_sets, pushout_square, split, Poset};
use crate::presheaf::{
    check_kan_adjunction, check_yoneda_square, colim_set, elements, lim_set, yoneda_colimit_decomposition,
    yoneda_lemma_check, Flavor, SetFunctor, Variance,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    PLe,
    VLe,
    ConLe,
    FiltProp,
    CofLe,
    ConeLe,
    Dim1Le,
    YoInd,
    KaKa,
    LaxInd,
    Kan,
    Elements,
    Posets,
    Groth,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::PLe,
        Suite::VLe,
        Suite::ConLe,
        Suite::FiltProp,
        Suite::CofLe,
        Suite::ConeLe,
        Suite::Dim1Le,
        Suite::YoInd,
        Suite::KaKa,
        Suite::LaxInd,
        Suite::Kan,
        Suite::Elements,
        Suite::Posets,
        Suite::Groth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PLe => "p-le",
            Suite::VLe => "v-le",
            Suite::ConLe => "con-le",
            Suite::FiltProp => "filt-prop",
            Suite::CofLe => "cof-le",
            Suite::ConeLe => "cone-le",
            Suite::Dim1Le => "dim1-le",
            Suite::YoInd => "yo-ind",
            Suite::KaKa => "ka-ka",
            Suite::LaxInd => "lax-ind",
            Suite::Kan => "kan",
            Suite::Elements => "elements",
            Suite::Posets => "posets",
            Suite::Groth => "groth",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Bounds used when the caller gives none.
    pub fn default_limits(self) -> Limits {
        let l = Limits::default();
        match self {
            Suite::PLe => Limits { max_objects: 3, max_morphisms: 8, ..l },
            Suite::VLe => Limits { max_objects: 2, max_morphisms: 5, target_objects: 3, target_morphisms: 8, ..l },
            Suite::ConLe => Limits { max_objects: 3, max_morphisms: 4, max_values: 2, ..l },
            Suite::FiltProp => Limits { max_objects: 1, max_morphisms: 2, max_size: 4, max_values: 3, ..l },
            Suite::CofLe => Limits { max_objects: 3, max_morphisms: 6, ..l },
            Suite::ConeLe => Limits { max_objects: 2, max_morphisms: 4, max_size: 3, ..l },
            Suite::Dim1Le => Limits { max_size: 4, target_objects: 1, target_morphisms: 2, ..l },
            Suite::YoInd => Limits { max_objects: 3, max_morphisms: 5, target_objects: 2, target_morphisms: 3, ..l },
            Suite::KaKa => Limits { max_objects: 2, max_morphisms: 4, max_size: 3, max_values: 2, ..l },
            Suite::LaxInd => Limits { max_size: 3, target_objects: 2, target_morphisms: 3, ..l },
            Suite::Kan => Limits { max_objects: 3, max_morphisms: 4, max_values: 1, ..l },
            Suite::Elements => Limits { max_objects: 2, max_morphisms: 4, max_values: 2, ..l },
            Suite::Posets => Limits { max_objects: 3, max_morphisms: 6, max_size: 6, ..l },
            Suite::Groth => Limits { max_size: 4, target_objects: 2, target_morphisms: 3, max_values: 2, ..l },
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size bounds of a suite. Which fields matter depends on the suite:
/// `max_objects`/`max_morphisms` bound the main corpus, `target_*` a
/// secondary corpus (targets, bases or fibers), `max_size` posets and
/// shapes, `max_values` value sets of set functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub target_objects: usize,
    pub target_morphisms: usize,
    pub max_size: usize,
    pub max_values: usize,
    /// Step budget per instance and for the enumeration itself.
    pub budget: u64,
    pub time_limit: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: 2,
            max_morphisms: 3,
            target_objects: 2,
            target_morphisms: 3,
            max_size: 3,
            max_values: 2,
            budget: crate::budget::DEFAULT_BUDGET,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub limits: Limits,
    pub instances: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
    /// False when the deadline stopped the enumeration.
    pub complete: bool,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.complete && self.failures == 0
    }
}

struct Run {
    report: SuiteReport,
    deadline: Option<Instant>,
    error: Option<Error>,
    started: Instant,
}

impl Run {
    fn new(suite: Suite, limits: &Limits) -> Run {
        let started = Instant::now();
        Run {
            report: SuiteReport {
                suite,
                limits: limits.clone(),
                instances: 0,
                failures: 0,
                counterexample: None,
                complete: true,
                notes: Vec::new(),
                elapsed: Duration::ZERO,
            },
            deadline: limits.time_limit.map(|t| started + t),
            error: None,
            started,
        }
    }

    fn budget(&self) -> Budget {
        Budget::new(self.report.limits.budget).with_deadline(self.deadline)
    }

    fn enumeration_budget(&self) -> Budget {
        Budget::unlimited().with_deadline(self.deadline)
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() > d)
    }

    /// Records one instance; returns whether to keep going.
    fn check(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) -> bool {
        match outcome {
            Ok(ok) => {
                self.report.instances += 1;
                if !ok {
                    self.report.failures += 1;
                    if self.report.counterexample.is_none() {
                        self.report.counterexample = Some(describe());
                    }
                }
                !self.expired()
            }
            Err(e) => {
                self.fail(e);
                false
            }
        }
    }

    fn fail(&mut self, e: Error) {
        if self.error.is_none() {
            self.error = Some(e);
        }
    }

    /// Absorbs an enumeration result; returns whether to keep going.
    fn absorb<T>(&mut self, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(e);
                None
            }
        }
    }

    fn live(&self) -> bool {
        self.error.is_none() && !self.expired()
    }

    fn note(&mut self, s: impl Into<String>) {
        self.report.notes.push(s.into());
    }

    fn finish(mut self) -> Result<SuiteReport> {
        self.report.elapsed = self.started.elapsed();
        match self.error {
            Some(Error::Timeout { .. }) => {
                self.report.complete = false;
                Ok(self.report)
            }
            Some(e) => Err(e),
            None => {
                if self.expired() {
                    self.report.complete = false;
                }
                Ok(self.report)
            }
        }
    }
}

fn describe_cat(c: &FinCat) -> String {
    let raw = c.to_raw();
    let mors: Vec<String> = raw.morphisms.iter().map(|(n, s, t)| format!("{n}:{s}->{t}")).collect();
    let comps: Vec<String> = raw.composites.iter().map(|(g, f, h)| format!("{g}∘{f}={h}")).collect();
    format!("objects [{}] morphisms [{}] composites [{}]", raw.objects.join(" "), mors.join(" "), comps.join(" "))
}

fn describe_setfun(x: &SetFunctor) -> String {
    let c = x.base();
    let vals: Vec<String> = (0..c.num_objects()).map(|o| format!("{}:{}", c.object_name(o), x.size(o))).collect();
    let acts: Vec<String> =
        c.non_identity_morphisms().map(|f| format!("{}↦{:?}", c.morphism_name(f), x.act(f))).collect();
    format!("values [{}] maps [{}]", vals.join(" "), acts.join(" "))
}

fn describe_poset(p: &Poset) -> String {
    let rel: Vec<String> = p.covers().iter().map(|&(a, b)| format!("{}<{}", p.name(a), p.name(b))).collect();
    format!("{{{}}} covers [{}]", p.elements().join(","), rel.join(" "))
}

/// Categories of the main corpus that have a cone over the identity.
fn filtered_corpus(run: &mut Run, max_objects: usize, max_morphisms: usize) -> Vec<CatRef> {
    let budget = run.enumeration_budget();
    let all = match run.absorb(categories(max_objects, max_morphisms, &budget)) {
        Some(all) => all,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    for c in all {
        if let Some(Some(_)) = run.absorb(find_id_cone(&c, &run.budget())) {
            out.push(c);
        }
    }
    out
}

pub fn run_suite(suite: Suite, limits: &Limits) -> Result<SuiteReport> {
    let mut run = Run::new(suite, limits);
    match suite {
        Suite::PLe => p_le(&mut run),
        Suite::VLe => v_le(&mut run),
        Suite::ConLe => con_le(&mut run),
        Suite::FiltProp => filt_prop(&mut run),
        Suite::CofLe => cof_le(&mut run),
        Suite::ConeLe => cone_le(&mut run),
        Suite::Dim1Le => dim1_le(&mut run),
        Suite::YoInd => yo_ind(&mut run),
        Suite::KaKa => ka_ka(&mut run),
        Suite::LaxInd => lax_ind(&mut run),
        Suite::Kan => kan(&mut run),
        Suite::Elements => elements_suite(&mut run),
        Suite::Posets => posets_suite(&mut run),
        Suite::Groth => groth(&mut run),
    }
    run.finish()
}

fn corpus_note(run: &mut Run, what: &str, stats: &crate::corpus::CorpusStats) {
    let strata: Vec<String> = stats.strata.iter().map(|(n, m, k)| format!("{n}/{m}:{k}")).collect();
    run.note(format!("{what}: {} categories in completed strata (objects/morphisms:count) {}", stats.total, strata.join(" ")));
}

fn p_le(run: &mut Run) {
    let l = run.report.limits.clone();
    let budget = run.enumeration_budget();
    let stats = for_each_category(l.max_objects, l.max_morphisms, &budget, &mut |c| {
        let r = filter_report(c, &run.budget()).map(|r| r.agree());
        run.check(r, || describe_cat(c))
    });
    if let Some(stats) = run.absorb(stats) {
        corpus_note(run, "corpus", &stats);
    }
}

fn v_le(run: &mut Run) {
    let l = run.report.limits.clone();
    let Some(cs) = run.absorb(categories(l.max_objects, l.max_morphisms, &run.enumeration_budget())) else { return };
    let budget = run.enumeration_budget();
    let stats = for_each_category(l.target_objects, l.target_morphisms, &budget, &mut |e| {
        for c in &cs {
            let r = verify_v_localization(c, e, &run.budget()).map(|r| r.holds());
            if !run.check(r, || format!("C = {} ; E = {}", describe_cat(c), describe_cat(e))) {
                return false;
            }
        }
        true
    });
    if let Some(stats) = run.absorb(stats) {
        run.note(format!("{} source categories C", cs.len()));
        corpus_note(run, "targets E", &stats);
    }
}

fn con_le(run: &mut Run) {
    let l = run.report.limits.clone();
    for i in filtered_corpus(run, l.max_objects, l.max_morphisms) {
        let budget = run.enumeration_budget();
        let r = for_each_set_functor(&i, Variance::Covariant, l.max_values, &budget, &mut |x| {
            let r = check_con_le(x, &run.budget()).map(|r| r.agree());
            run.check(r, || format!("I = {} ; X = {}", describe_cat(&i), describe_setfun(x)))
        });
        run.absorb(r);
        if !run.live() {
            return;
        }
    }
}

/// The fixed negative instance: `I = J = disc 2`, `X = pt`.
pub fn discrete_commute_counterexample(budget: &Budget) -> Result<crate::filtered::CommuteReport> {
    let d2: CatRef = Arc::new(FinCat::discrete(&["a", "b"]));
    let prod = product(&d2, &d2);
    let x = SetFunctor::point(&prod.cat, Variance::Covariant);
    filt_commute_check(&d2, &d2, &x, budget)
}

fn filt_prop(run: &mut Run) {
    let l = run.report.limits.clone();
    let r = discrete_commute_counterexample(&run.budget());
    if let Some(r) = run.absorb(r) {
        let expected = !r.bijective && r.left == 2 && r.right == 4;
        run.check(Ok(expected), || format!("disc 2 × disc 2 gave {} vs {}", r.left, r.right));
        run.note(format!("negative instance I = J = disc 2: {} vs {}", r.left, r.right));
    }
    let shapes = dim1_shapes(l.max_size + 1);
    let corpus = filtered_corpus(run, l.max_objects, l.max_morphisms);
    run.note(format!("{} filtered index categories, {} shapes", corpus.len(), shapes.len()));
    'outer: for i in &corpus {
        for shape in &shapes {
            let j = shape.as_category_ref();
            let Some(setup) = run.absorb(CommuteSetup::new(i, &j, &run.budget())) else { break 'outer };
            let budget = run.enumeration_budget();
            let r = for_each_set_functor(&setup.product, Variance::Covariant, l.max_values, &budget, &mut |x| {
                let r = setup.check(x, &run.budget()).map(|r| r.bijective);
                run.check(r, || format!("I = {} ; J = {} ; X = {}", describe_cat(i), describe_poset(shape), describe_setfun(x)))
            });
            run.absorb(r);
            if !run.live() {
                break 'outer;
            }
        }
    }
}

fn cof_le(run: &mut Run) {
    let l = run.report.limits.clone();
    for c in filtered_corpus(run, l.max_objects, l.max_morphisms) {
        let n = c.num_objects();
        for mask in 1u32..(1 << n) {
            let objs: Vec<usize> = (0..n).filter(|&o| mask & (1 << o) != 0).collect();
            let r = check_cofinal_subcategory(&c, &objs, &run.budget()).map(|r| r.holds());
            if !run.check(r, || format!("C = {} ; subcategory {:?}", describe_cat(&c), objs)) {
                return;
            }
        }
    }
}

fn cone_le(run: &mut Run) {
    let l = run.report.limits.clone();
    let shapes = posets(l.max_size);
    let Some(cs) = run.absorb(categories(l.max_objects, l.max_morphisms, &run.enumeration_budget())) else { return };
    for shape in &shapes {
        let j = shape.as_category_ref();
        for c in &cs {
            let r = check_cone_le(&j, c, &run.budget()).map(|r| r.holds());
            if !run.check(r, || format!("J = {} ; C = {}", describe_poset(shape), describe_cat(c))) {
                return;
            }
        }
    }
}

fn dim1_le(run: &mut Run) {
    let l = run.report.limits.clone();
    let fibers = filtered_corpus(run, l.target_objects, l.target_morphisms);
    let shapes = dim1_shapes(l.max_size + 1);
    run.note(format!("{} filtered fibers, {} index posets", fibers.len(), shapes.len()));
    for index in &shapes {
        let budget = run.enumeration_budget();
        let r = for_each_cat_diagram(index, &fibers, &budget, &mut |d| {
            let r = check_dim1_le(d, &run.budget()).map(|r| r.filtered);
            run.check(r, || format!("index {}", describe_poset(index)))
        });
        run.absorb(r);
        if !run.live() {
            return;
        }
    }
}

/// Every presentation `⟨J, i⟩` with `J` filtered from the corpus.
fn presentations(run: &mut Run, c: &CatRef, indices: &[CatRef]) -> Vec<IndPresentation> {
    let mut out = Vec::new();
    for j in indices {
        let budget = run.budget();
        let mut found = Vec::new();
        let r = for_each_functor(j, c, &FunctorSearch::default(), &budget, &mut |o, m| {
            found.push(FinFunctor::new_unchecked(j.clone(), c.clone(), o.to_vec(), m.to_vec()));
            true
        });
        if run.absorb(r).is_none() {
            return out;
        }
        for f in found {
            if let Some(p) = run.absorb(IndPresentation::new(f, &run.budget())) {
                out.push(p);
            }
        }
    }
    out
}

fn describe_presentation(a: &IndPresentation) -> String {
    format!("J = {} ; i = {:?}", describe_cat(a.index()), a.diagram().obj_map())
}

fn yo_ind(run: &mut Run) {
    let l = run.report.limits.clone();
    let indices = filtered_corpus(run, l.max_objects, l.max_morphisms);
    let Some(bases) = run.absorb(categories(l.target_objects, l.target_morphisms, &run.enumeration_budget())) else {
        return;
    };
    let mut total = 0;
    for c in &bases {
        let pres = presentations(run, c, &indices);
        total += pres.len();
        for a in &pres {
            let r = is_ind_object(&presheaf_of(a), &run.budget()).map(|r| r.is_ind && r.canonical_iso);
            if !run.check(r, || format!("recognition of {}", describe_presentation(a))) {
                return;
            }
        }
        let sample = &pres[..pres.len().min(8)];
        let r = check_ind_composition(sample, &run.budget());
        if !run.check(r, || format!("composition over {}", describe_cat(c))) {
            return;
        }
        for a in &pres {
            for b in &pres {
                let r = check_presheaf_full_faithfulness(a, b, &run.budget()).map(|r| r.bijective);
                if !run.check(r, || format!("{} ; {}", describe_presentation(a), describe_presentation(b))) {
                    return;
                }
            }
        }
    }
    run.note(format!("{} filtered indices, {} bases, {} presentations", indices.len(), bases.len(), total));
}

fn ka_ka(run: &mut Run) {
    let l = run.report.limits.clone();
    let Some(cs) = run.absorb(categories(l.max_objects, l.max_morphisms, &run.enumeration_budget())) else { return };
    for c in &cs {
        if c.num_objects() == 0 {
            continue;
        }
        let r = karoubi_identification(c, l.max_values, l.max_size, &run.budget()).map(|r| r.holds());
        if !run.check(r, || describe_cat(c)) {
            return;
        }
    }
}

fn lax_ind(run: &mut Run) {
    let l = run.report.limits.clone();
    let Some(fibers) = run.absorb(categories(l.target_objects, l.target_morphisms, &run.enumeration_budget())) else {
        return;
    };
    let fibers: Vec<CatRef> = fibers.into_iter().filter(|c| c.num_objects() > 0).collect();
    for index in posets(l.max_size).iter().filter(|p| !p.is_empty()) {
        let budget = run.enumeration_budget();
        let r = for_each_cat_diagram(index, &fibers, &budget, &mut |d| {
            let r = check_lax_ind_shadow(d, &run.budget()).map(|r| r.bijective);
            run.check(r, || format!("index {}", describe_poset(index)))
        });
        run.absorb(r);
        if !run.live() {
            return;
        }
    }
}

fn kan(run: &mut Run) {
    let l = run.report.limits.clone();
    let Some(cs) = run.absorb(categories(l.max_objects, l.max_morphisms, &run.enumeration_budget())) else { return };
    let mut functor_count = 0;
    for i in &cs {
        for ip in &cs {
            let budget = run.budget();
            let mut gammas = Vec::new();
            let r = for_each_functor(i, ip, &FunctorSearch::default(), &budget, &mut |o, m| {
                gammas.push(FinFunctor::new_unchecked(i.clone(), ip.clone(), o.to_vec(), m.to_vec()));
                true
            });
            if run.absorb(r).is_none() {
                return;
            }
            for variance in [Variance::Contravariant, Variance::Covariant] {
                let Some(xs) = run.absorb(set_functors(i, variance, l.max_values, &run.enumeration_budget())) else {
                    return;
                };
                let Some(ys) = run.absorb(set_functors(ip, variance, l.max_values, &run.enumeration_budget())) else {
                    return;
                };
                for gamma in &gammas {
                    for x in &xs {
                        for y in &ys {
                            let r = check_kan_adjunction(gamma, x, y, &run.budget()).map(|r| r.holds());
                            let ok = run.check(r, || {
                                format!("γ = {:?} from {} ; X = {} ; Y = {}", gamma.obj_map(), describe_cat(i), describe_setfun(x), describe_setfun(y))
                            });
                            if !ok {
                                return;
                            }
                        }
                    }
                }
            }
            for gamma in &gammas {
                functor_count += 1;
                let r = check_yoneda_square(gamma).map(|w| w.is_none());
                if !run.check(r, || format!("Yoneda square for γ = {:?} from {}", gamma.obj_map(), describe_cat(i))) {
                    return;
                }
            }
        }
        let Some(xs) = run.absorb(set_functors(i, Variance::Contravariant, l.max_values + 1, &run.enumeration_budget()))
        else {
            return;
        };
        for x in &xs {
            for o in 0..i.num_objects() {
                let r = yoneda_lemma_check(x, o, &run.budget()).map(|r| r.bijective);
                if !run.check(r, || format!("Yoneda lemma on {} at {o}", describe_setfun(x))) {
                    return;
                }
            }
        }
    }
    run.note(format!("{} categories, {} functors", cs.len(), functor_count));
}

/// The category of sets `{0, …, k-1}` for `k ≤ max` and all functions.
pub fn finite_sets(max: usize) -> CatRef {
    let objects: Vec<String> = (0..=max).map(|k| k.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut functions: Vec<Vec<usize>> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut identity = vec![0; max + 1];
    for a in 0..=max {
        for b in 0..=max {
            let count = b.pow(a as u32);
            for r in 0..count {
                let f: Vec<usize> = (0..a).map(|k| (r / b.pow(k as u32)) % b).collect();
                if a == b && f.iter().enumerate().all(|(k, &v)| k == v) {
                    identity[a] = morphisms.len();
                }
                index.insert((b, f.clone()), morphisms.len());
                let name = format!("{a}->{b}:{}", f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""));
                morphisms.push(Morphism { name, src: a, tgt: b });
                functions.push(f);
            }
        }
    }
    let targets: Vec<usize> = morphisms.iter().map(|m| m.tgt).collect();
    Arc::new(FinCat::from_parts(objects, morphisms, identity, |g, f| {
        let h: Vec<usize> = functions[f].iter().map(|&x| functions[g][x]).collect();
        index[&(targets[g], h)]
    }))
}

/// A covariant set functor as a diagram in [`finite_sets`].
pub fn as_finite_sets_diagram(x: &SetFunctor, sets: &CatRef) -> FinFunctor {
    let c = x.base();
    let obj_map: Vec<usize> = (0..c.num_objects()).map(|o| x.size(o)).collect();
    let mor_map = (0..c.num_morphisms())
        .map(|f| {
            let (a, b) = (x.size(c.src(f)), x.size(c.tgt(f)));
            let rank: usize = x.act(f).iter().enumerate().map(|(k, &v)| v * b.pow(k as u32)).sum();
            sets.hom(a, b)[rank]
        })
        .collect();
    FinFunctor::new_unchecked(c.clone(), sets.clone(), obj_map, mor_map)
}

fn elements_suite(run: &mut Run) {
    let l = run.report.limits.clone();
    let Some(cs) = run.absorb(categories(l.max_objects, l.max_morphisms, &run.enumeration_budget())) else { return };
    let sets = finite_sets(l.max_values * l.max_objects.max(1));
    for c in &cs {
        let Some(xs) = run.absorb(set_functors(c, Variance::Covariant, l.max_values, &run.enumeration_budget())) else {
            return;
        };
        for x in &xs {
            let budget = run.budget();
            let r = (|| -> Result<bool> {
                let e = as_finite_sets_diagram(x, &sets);
                let colim = colim_set(x).len();
                let lim = lim_set(x, &budget)?.len();
                let oracle_colim = colimit(&e, &budget)?.map(|k| k.vertex);
                let oracle_lim = limit(&e, &budget)?.map(|k| k.vertex);
                let components = connected_components(&elements(x, Flavor::Covariant)?.cat).len();
                Ok(oracle_colim == Some(colim) && oracle_lim == Some(lim) && components == colim)
            })();
            if !run.check(r, || format!("C = {} ; X = {}", describe_cat(c), describe_setfun(x))) {
                return;
            }
        }
        let Some(ps) = run.absorb(set_functors(c, Variance::Contravariant, l.max_values, &run.enumeration_budget())) else {
            return;
        };
        for x in &ps {
            let r = yoneda_colimit_decomposition(x, &ps, &run.budget()).map(|r| r.holds());
            if !run.check(r, || format!("colimit certificate for C = {} ; X = {}", describe_cat(c), describe_setfun(x))) {
                return;
            }
        }
    }
}

/// Splitting at a left-closed subset and gluing back gives the poset
/// with its elements reordered lower part first.
pub fn glue_split_round_trip(j: &Poset) -> Result<bool> {
    let (_, sets) = left_closed_sets(j);
    for j0 in &sets {
        let (datum, lower, upper) = split(j, j0);
        let glued = glue(&datum)?;
        let order: Vec<usize> = lower.iter().chain(&upper).copied().collect();
        let n = j.len();
        if glued.poset.len() != n || (0..n).any(|a| (0..n).any(|b| glued.poset.le(a, b) != j.le(order[a], order[b]))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Λ(S) ⊆ L ⟺ S ⊆ L` for every subset `S` and left-closed `L`.
pub fn lambda_adjunction(j: &Poset) -> bool {
    let n = j.len();
    let (_, sets) = left_closed_sets(j);
    (0u32..(1 << n)).all(|mask| {
        let s: Vec<bool> = (0..n).map(|a| mask & (1 << a) != 0).collect();
        let ls = lambda_closure(j, &s);
        sets.iter().all(|l| ls.is_subset(l) == (0..n).all(|a| !s[a] || l.contains(a)))
            && sets.iter().all(|l| lambda_closure(j, l.mask()) == *l)
    })
}

fn posets_suite(run: &mut Run) {
    let l = run.report.limits.clone();
    for j in posets(l.max_size) {
        let r = glue_split_round_trip(&j);
        if !run.check(r, || format!("glue/split on {}", describe_poset(&j))) {
            return;
        }
    }
    for j in posets(l.max_size.saturating_sub(1)) {
        if !run.check(Ok(lambda_adjunction(&j)), || format!("Λ on {}", describe_poset(&j))) {
            return;
        }
    }
    let Some(targets) = run.absorb(categories(l.max_objects, l.max_morphisms, &run.enumeration_budget())) else {
        return;
    };
    let shapes = dim1_shapes(l.max_size.min(4) + 1);
    for j in &shapes {
        let square = pushout_square(j);
        for t in &targets {
            let r = square.check_against(t, &run.budget()).map(|r| r.bijective);
            if !run.check(r, || format!("square of {} against {}", describe_poset(j), describe_cat(t))) {
                return;
            }
        }
    }
    run.note(format!("squares over {} shapes and {} targets", shapes.len(), targets.len()));
}

fn groth(run: &mut Run) {
    let l = run.report.limits.clone();
    let Some(cs) = run.absorb(categories(l.target_objects, l.target_morphisms, &run.enumeration_budget())) else {
        return;
    };
    // single arrows
    for c0 in &cs {
        for c1 in &cs {
            let budget = run.budget();
            let mut gammas = Vec::new();
            let r = for_each_functor(c0, c1, &FunctorSearch::default(), &budget, &mut |o, m| {
                gammas.push(FinFunctor::new_unchecked(c0.clone(), c1.clone(), o.to_vec(), m.to_vec()));
                true
            });
            if run.absorb(r).is_none() {
                return;
            }
            for g in &gammas {
                let r = check_single_arrow(g, &run.budget()).map(|r| r.holds());
                if !run.check(r, || format!("single arrow {:?} from {} to {}", g.obj_map(), describe_cat(c0), describe_cat(c1))) {
                    return;
                }
            }
        }
    }
    run.note(format!("single arrows: {} instances", run.report.instances));
    // Set-valued degeneration
    let small = posets(l.max_size.min(3));
    for index in &small {
        let base = index.as_category_ref();
        let Some(xs) = run.absorb(set_functors(&base, Variance::Contravariant, l.max_values, &run.enumeration_budget()))
        else {
            return;
        };
        for x in &xs {
            let r = CatDiagram::from_presheaf(index, x).and_then(|d| check_set_degeneration(&d, &run.budget())).map(|r| r.holds());
            if !run.check(r, || format!("degeneration over {} ; X = {}", describe_poset(index), describe_setfun(x))) {
                return;
            }
        }
    }
    run.note(format!("through degeneration: {} instances", run.report.instances));
    // relative Yoneda two paths
    let fibers: Vec<CatRef> = cs.iter().filter(|c| c.num_objects() > 0).cloned().collect();
    for index in posets(2).iter().filter(|p| !p.is_empty()) {
        let budget = run.enumeration_budget();
        let r = for_each_cat_diagram(index, &fibers, &budget, &mut |d| {
            let lim = match colax_limit(d, &run.budget()) {
                Ok(lim) => lim,
                Err(e) => {
                    run.fail(e);
                    return false;
                }
            };
            for s in &lim.sections {
                let r = check_yoneda_lax_kan(d, s).map(|r| r.holds());
                if !run.check(r, || format!("two paths over {} at section {:?}", describe_poset(index), s.obj_map())) {
                    return false;
                }
            }
            true
        });
        run.absorb(r);
        if !run.live() {
            return;
        }
    }
    run.note(format!("through two paths: {} instances", run.report.instances));
    // dim1.le
    let filtered: Vec<CatRef> = fibers.iter().filter(|c| matches!(find_id_cone(c, &Budget::default()), Ok(Some(_)))).cloned().collect();
    // four-element indices only with one-object fibers
    let monoids: Vec<CatRef> = filtered.iter().filter(|c| c.num_objects() <= 1 && c.num_morphisms() <= 2).cloned().collect();
    run.note(format!("dim1 fibers: {} filtered, {} with one object for four-element indices", filtered.len(), monoids.len()));
    for index in dim1_shapes(l.max_size + 1).iter().filter(|p| !p.is_empty()) {
        let budget = run.enumeration_budget();
        let fibers = if index.len() <= 3 { &filtered } else { &monoids };
        let r = for_each_cat_diagram(index, fibers, &budget, &mut |d| {
            let r = check_dim1_le(d, &run.budget()).map(|r| r.filtered);
            run.check(r, || format!("dim1 over {}", describe_poset(index)))
        });
        run.absorb(r);
        if !run.live() {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(suite: Suite) -> Limits {
        Limits { max_objects: 1, max_morphisms: 2, target_objects: 1, target_morphisms: 2, max_size: 2, max_values: 1, ..suite.default_limits() }
    }

    #[test]
    fn finite_sets_is_a_category() {
        let s = finite_sets(2);
        assert_eq!(s.num_morphisms(), 1 + 1 + 2 + 1 + 4 + 0 + 0 + 1 + 1);
        s.check_laws().unwrap();
    }

    #[test]
    fn every_suite_passes_at_tiny_size() {
        for suite in Suite::ALL {
            let r = run_suite(suite, &tiny(suite)).unwrap();
            assert!(r.passed(), "{suite}: {r:?}");
            assert!(r.instances > 0, "{suite}");
        }
    }

    #[test]
    fn names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(Suite::from_name(suite.name()), Some(suite));
        }
    }

    #[test]
    fn deadline_stops_the_corpus() {
        let limits = Limits { time_limit: Some(Duration::from_millis(50)), ..Suite::PLe.default_limits() };
        let r = run_suite(Suite::PLe, &limits).unwrap();
        assert!(!r.complete);
        assert!(!r.passed());
    }

    #[test]
    fn negative_commute_instance() {
        let r = discrete_commute_counterexample(&Budget::default()).unwrap();
        assert_eq!((r.left, r.right, r.bijective), (2, 4, false));
    }
}
