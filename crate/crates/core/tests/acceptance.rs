//! One PASS/FAIL line per acceptance criterion. Each criterion runs its
//! suites under its own wall-clock limit; a suite cut off by the limit
//! counts as a failure and reports how far it got.

use std::time::{Duration, Instant};

use kancalc::category::{karoubi_closure, FinCat};
use kancalc::corpus::set_functors;
use kancalc::harness::{discrete_commute_counterexample, run_suite, Limits, Suite, SuiteReport};
use kancalc::ind::{karoubi_identification, pullback_failure_demo};
use kancalc::poset::Poset;
use kancalc::presheaf::{find_set_iso, representable, Variance};
use kancalc::{Budget, CatRef};

struct Outcome {
    passed: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { passed: true, details: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        self.passed &= ok;
        self.details.push(format!("{}{}", if ok { "" } else { "failed: " }, what.into()));
    }

    fn suite(&mut self, suite: Suite, limits: Limits, deadline: Instant) {
        let left = deadline.saturating_duration_since(Instant::now());
        let limits = Limits { time_limit: Some(left), budget: u64::MAX, ..limits };
        match run_suite(suite, &limits) {
            Ok(r) => {
                let ok = r.passed();
                self.require(ok, summary(&r));
            }
            Err(e) => self.require(false, format!("{suite}: {e}")),
        }
    }
}

fn summary(r: &SuiteReport) -> String {
    let state = match (r.complete, r.failures) {
        (false, _) => "incomplete at the time limit",
        (true, 0) => "complete",
        (true, _) => "counterexample found",
    };
    let mut s = format!("{}: {} instances, {} failures, {state}", r.suite, r.instances, r.failures);
    if let Some(c) = &r.counterexample {
        s.push_str(&format!("; first counterexample {c}"));
    }
    for n in &r.notes {
        s.push_str(&format!("; {n}"));
    }
    s
}

fn limits(suite: Suite, f: impl FnOnce(&mut Limits)) -> Limits {
    let mut l = suite.default_limits();
    f(&mut l);
    l
}

fn criterion(n: usize, name: &str, limit: u64, body: impl FnOnce(&mut Outcome, Instant)) -> bool {
    let start = Instant::now();
    let deadline = start + Duration::from_secs(limit);
    let mut out = Outcome::new();
    body(&mut out, deadline);
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(limit);
    let passed = out.passed && in_time;
    println!("{} criterion {n}: {name} ({:.1}s of {limit}s)", if passed { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    for d in &out.details {
        println!("    {d}");
    }
    passed
}

fn projector() -> CatRef {
    FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b)).into()
}

fn karoubi_criteria(out: &mut Outcome) {
    let budget = Budget::default();
    let p = projector();
    match karoubi_identification(&p, 2, 3, &budget) {
        Ok(r) => out.require(r.holds() && r.iso_classes == 2, format!("P: {} iso classes of split idempotents, {} of {} swept presheaves in the image", r.iso_classes, r.in_image, r.swept)),
        Err(e) => out.require(false, format!("P: {e}")),
    }
    let arrow = Poset::chain(1).as_category_ref();
    let result = (|| -> kancalc::Result<(bool, usize, usize)> {
        let r = karoubi_identification(&arrow, 2, 3, &budget)?;
        let identities = karoubi_closure(&arrow).projectors.iter().all(|&(o, e)| e == arrow.identity(o));
        let reps: Vec<_> = (0..arrow.num_objects()).map(|o| representable(&arrow, o)).collect();
        let mut representable_count = 0;
        for x in set_functors(&arrow, Variance::Contravariant, 2, &budget)? {
            let mut found = false;
            for y in &reps {
                found |= find_set_iso(y, &x, &budget)?.is_some();
            }
            representable_count += usize::from(found);
        }
        let exact = r.holds() && identities && r.karoubi_objects == 2 && r.in_image == representable_count;
        Ok((exact, r.in_image, representable_count))
    })();
    match result {
        Ok((ok, image, reps)) => out.require(ok, format!("[1]: image of the split idempotents has {image} swept presheaves, representables {reps}")),
        Err(e) => out.require(false, format!("[1]: {e}")),
    }
}

#[test]
fn acceptance() {
    let mut all = Vec::new();

    all.push(criterion(1, "id-cone existence iff Karoubi terminal object, ≤ 3 objects / ≤ 8 morphisms", 60, |out, d| {
        out.suite(Suite::PLe, limits(Suite::PLe, |l| (l.max_objects, l.max_morphisms) = (3, 8)), d);
    }));

    all.push(criterion(2, "V(C) bijection and localization, C ≤ 2/5, E ≤ 3/8", 120, |out, d| {
        out.suite(Suite::VLe, limits(Suite::VLe, |l| (l.max_objects, l.max_morphisms, l.target_objects, l.target_morphisms) = (2, 5, 3, 8)), d);
    }));

    all.push(criterion(3, "filtered colimits commute with finite limits, dim ≤ 1 shapes ≤ 4, values ≤ 3, disc 2 negative", 120, |out, d| {
        match discrete_commute_counterexample(&Budget::default()) {
            Ok(r) => out.require(!r.bijective && (r.left, r.right) == (2, 4), format!("disc 2 × disc 2: {} vs {}", r.left, r.right)),
            Err(e) => out.require(false, e.to_string()),
        }
        out.suite(Suite::FiltProp, limits(Suite::FiltProp, |l| (l.max_size, l.max_values) = (4, 3)), d);
    }));

    all.push(criterion(4, "Kan adjunctions, Yoneda lemma and square, |I|, |I′| ≤ 3", 60, |out, d| {
        out.suite(Suite::Kan, limits(Suite::Kan, |l| l.max_objects = 3), d);
    }));

    all.push(criterion(5, "set colimits and limits against the cone oracle, Yoneda colimit certificates", 60, |out, d| {
        out.suite(Suite::Elements, limits(Suite::Elements, |l| (l.max_objects, l.max_values) = (2, 2)), d);
    }));

    all.push(criterion(6, "glue/split ≤ 6, Λ ≤ 5, dimension 1 squares against targets ≤ 3 objects", 90, |out, d| {
        out.suite(Suite::Posets, limits(Suite::Posets, |l| (l.max_size, l.max_objects) = (6, 3)), d);
    }));

    all.push(criterion(7, "Ind homs, recognition of presheaf_of, Karoubi identification", 90, |out, d| {
        out.suite(Suite::YoInd, limits(Suite::YoInd, |l| (l.max_objects, l.target_objects) = (3, 2)), d);
        out.suite(Suite::KaKa, Suite::KaKa.default_limits(), d);
        karoubi_criteria(out);
    }));

    all.push(criterion(8, "even/odd embeddings into [N], N = 3, 4, 5", 5, |out, _| {
        for n in 3..=5 {
            match pullback_failure_demo(n) {
                Ok(r) => {
                    let top_even = n % 2 == 0;
                    let ok = r.fiber_product_objects == 0
                        && r.lax_fiber_product_objects > 0
                        && r.even_cofinal == top_even
                        && r.odd_cofinal == !top_even;
                    out.require(ok, format!("N = {n}: strict {} objects, lax {}, evens cofinal {}, odds cofinal {}", r.fiber_product_objects, r.lax_fiber_product_objects, r.even_cofinal, r.odd_cofinal));
                }
                Err(e) => out.require(false, format!("N = {n}: {e}")),
            }
        }
    }));

    all.push(criterion(9, "Grothendieck constructions, degeneration, two paths, dimension 1 lax limits over ≤ 4", 120, |out, d| {
        out.suite(Suite::Groth, limits(Suite::Groth, |l| l.max_size = 4), d);
    }));

    let passed = all.iter().filter(|&&p| p).count();
    println!("{passed} of {} criteria passed", all.len());
    assert_eq!(passed, all.len(), "some acceptance criteria failed");
}
