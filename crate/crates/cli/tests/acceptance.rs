//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p pq-cli --test acceptance`.

use std::io::Write;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use pq_cli::verify::{run_suite, Status, Suite, VerifyOptions, VerifyReport};
use pq_extremal::kneser::{build_kneser, KneserGuard, KneserSpec};
use pq_extremal::Rational;

struct Run {
    report: VerifyReport,
    elapsed: Duration,
    json_by_workers: Vec<String>,
}

fn run(suite: Suite) -> Run {
    let mut json_by_workers = Vec::new();
    let mut kept = None;
    for workers in [1, 4] {
        let opts = VerifyOptions {
            workers,
            ..VerifyOptions::default()
        };
        let clock = Instant::now();
        let report = run_suite(suite, &opts);
        let elapsed = clock.elapsed();
        json_by_workers.push(report.to_json());
        if workers == 4 {
            kept = Some((report, elapsed));
        }
    }
    let (report, elapsed) = kept.expect("ran with four workers");
    Run {
        report,
        elapsed,
        json_by_workers,
    }
}

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn all_pass(&mut self, report: &VerifyReport, prefix: &str, expected_count: usize) {
        let claims: Vec<_> = report.claims.iter().filter(|c| c.id.starts_with(prefix)).collect();
        self.require(
            claims.len() == expected_count,
            format!("{prefix}: {} claims, expected {expected_count}", claims.len()),
        );
        for c in claims {
            self.require(c.status == Status::Pass, format!("{} is {:?}: {}", c.id, c.status, c.computed));
        }
    }

    fn computed(&mut self, report: &VerifyReport, id: &str, expected: Value) {
        match report.claim(id) {
            Some(c) => self.require(c.computed == expected, format!("{id}: computed {} != {expected}", c.computed)),
            None => self.require(false, format!("{id} missing")),
        }
    }

    fn within(&mut self, elapsed: Duration, limit: Duration, what: &str) {
        self.require(elapsed <= limit, format!("{what} took {elapsed:?}, limit {limit:?}"));
    }
}

fn print_line(number: usize, title: &str, outcome: &Outcome, elapsed: Duration) -> bool {
    let ok = outcome.failures.is_empty();
    let mut line = format!(
        "criterion {number:>2} {} {title} ({:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    for f in &outcome.failures {
        line.push_str(&format!("\n    {f}"));
    }
    // written past the test harness capture so the lines always show
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
    ok
}

#[test]
fn acceptance_criteria() {
    let mut results = Vec::new();
    let mut determinism = Vec::new();

    // 1
    let r = run(Suite::Oracle);
    let mut o = Outcome::new();
    let mut grid = Vec::new();
    for (k, ns) in [(2, vec![4, 5, 6]), (3, vec![4, 5, 6])] {
        for n in ns {
            for p in 3..=5 {
                for q in 3..=p {
                    grid.push(format!("oracle/n{n}-k{k}-p{p}-q{q}"));
                }
            }
        }
    }
    let ids: Vec<&str> = r.report.claims.iter().map(|c| c.id.as_str()).collect();
    o.require(ids == grid.iter().map(String::as_str).collect::<Vec<_>>(), "oracle grid differs from the criterion grid");
    o.all_pass(&r.report, "oracle/", grid.len());
    o.within(r.elapsed, Duration::from_secs(600), "oracle suite");
    results.push(print_line(1, "branch and bound equals exhaustive enumeration", &o, r.elapsed));
    determinism.push(("oracle", r.json_by_workers));

    // 2
    let r = run(Suite::Theorem6);
    let mut o = Outcome::new();
    o.all_pass(&r.report, "theorem6/", 4);
    for (p, value) in [(4, 4), (5, 7), (6, 11)] {
        o.computed(&r.report, &format!("theorem6/p{p}"), json!(value));
    }
    o.within(r.elapsed, Duration::from_secs(120), "theorem6 suite");
    results.push(print_line(2, "ex(p, D_2(p,3)) = 4, 7, 11 for p = 4, 5, 6", &o, r.elapsed));
    determinism.push(("theorem6", r.json_by_workers));

    // 3
    let r = run(Suite::Lemma2);
    let mut o = Outcome::new();
    o.all_pass(&r.report, "lemma2/", 18);
    for c in &r.report.claims {
        o.require(c.computed["failures"] == json!(0), format!("{}: failures", c.id));
        let max_n = c.params["n"].as_array().and_then(|ns| ns.last()).cloned();
        o.require(max_n == Some(json!(12)), format!("{}: n range does not reach 12", c.id));
        o.require(c.params["random_placements"] == json!(20), format!("{}: placements", c.id));
    }
    results.push(print_line(3, "split family members have the (p,q)-property", &o, r.elapsed));
    determinism.push(("lemma2", r.json_by_workers));

    // 4, 5, 6 share the kneser suite
    let r = run(Suite::Kneser);
    let mut o = Outcome::new();
    o.all_pass(&r.report, "kneser/bridge-", 12);
    results.push(print_line(4, "alpha of K_q^p([n] choose 2) equals the extremal number", &o, r.elapsed));

    let mut o = Outcome::new();
    o.all_pass(&r.report, "kneser/petersen-", 4);
    o.computed(&r.report, "kneser/petersen-size", json!({ "vertices": 10, "edges": 15 }));
    o.computed(&r.report, "kneser/petersen-alpha", json!(4));
    o.computed(&r.report, "kneser/petersen-chi", json!({ "chi": 3, "sarkaria": 3 }));
    let half = json!(Rational::new(5, 2));
    o.computed(&r.report, "kneser/petersen-chi-f", json!({ "lp": half, "transitive": half }));
    results.push(print_line(5, "Petersen battery", &o, r.elapsed));

    let mut o = Outcome::new();
    o.all_pass(&r.report, "kneser/sarkaria-", 3);
    o.computed(&r.report, "kneser/sarkaria-n6-k2-p2-q2", json!({ "chi": 4, "raw": 4 }));
    o.computed(&r.report, "kneser/sarkaria-n7-k2-p2-q2", json!({ "chi": 5, "raw": 5 }));
    o.computed(&r.report, "kneser/sarkaria-n5-k2-p3-q2", json!({ "chi": 1, "raw": 1 }));
    let edgeless = build_kneser(KneserSpec::new(5, 2, 3, 2).unwrap(), &KneserGuard::default()).unwrap();
    o.require(edgeless.hypergraph.edge_count() == 0, "K_2^3([5] choose 2) has edges");
    results.push(print_line(6, "exact chromatic numbers match the Sarkaria formula", &o, r.elapsed));
    determinism.push(("kneser", r.json_by_workers));

    // 7
    let r = run(Suite::Lemma5);
    let mut o = Outcome::new();
    o.all_pass(&r.report, "lemma5/", 4);
    for n in [6, 7] {
        let c = r.report.claim(&format!("lemma5/n{n}"));
        o.require(
            c.is_some_and(|c| c.computed["counterexamples"] == json!(0)),
            format!("lemma5/n{n} counterexamples"),
        );
    }
    o.within(r.elapsed, Duration::from_secs(300), "lemma5 suite");
    results.push(print_line(7, "degree lemma exhaustive over K_6 and K_7", &o, r.elapsed));
    determinism.push(("lemma5", r.json_by_workers));

    // 8
    let r = run(Suite::Lemma3);
    let mut o = Outcome::new();
    o.all_pass(&r.report, "lemma3/", 2);
    o.require(
        r.report.claim("lemma3/random").is_some_and(|c| c.computed["instances"] == json!(100_000)),
        "random instance count",
    );
    for c in &r.report.claims {
        o.require(c.computed["counterexamples"] == json!(0), format!("{}: counterexamples", c.id));
        o.require(c.computed["certificate_failures"] == json!(0), format!("{}: certificates", c.id));
    }
    results.push(print_line(8, "bipartite t-matching lemma with Konig certificates", &o, r.elapsed));
    determinism.push(("lemma3", r.json_by_workers));

    // 9
    let clock = Instant::now();
    let report = run_suite(Suite::Corollary, &VerifyOptions::default());
    let mut o = Outcome::new();
    o.computed(&report, "corollary/n18-p3-q3", json!(Rational::from_integer(9)));
    for n in 18..=30 {
        o.computed(&report, &format!("corollary/n{n}-p3-q3"), json!(Rational::new(n as i64, 2)));
    }
    o.all_pass(&report, "corollary/n", 14);
    o.require(
        report
            .claim("corollary/end-to-end")
            .is_some_and(|c| c.status == Status::Skipped && c.reason.is_some()),
        "end-to-end corollary claim is not marked skipped with a reason",
    );
    results.push(print_line(9, "closed-form fractional chromatic number", &o, clock.elapsed()));

    // 10
    let clock = Instant::now();
    let mut o = Outcome::new();
    for (suite, jsons) in &determinism {
        o.require(jsons[0] == jsons[1], format!("{suite}: JSON differs between 1 and 4 workers"));
    }
    results.push(print_line(10, "reports identical for 1 and 4 workers", &o, clock.elapsed()));

    let passed = results.iter().filter(|&&ok| ok).count();
    assert_eq!(passed, results.len(), "{passed}/{} criteria passed", results.len());
}
