//! Registry of claim checks behind `pqx verify`.

use std::time::Instant;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use pq_extremal::binom::binomial;
use pq_extremal::constructions::{
    random_split_family_member, sarkaria_chi, split_family_member, tq_decompose, SplitFamilySpec,
};
use pq_extremal::extremal::{extremal_number, extremal_oracle, verify_lemma_p3};
use pq_extremal::kneser::{
    build_kneser, chromatic_number_exact, corollary_chi_f, fractional_chromatic_lp,
    fractional_chromatic_transitive, independence_number, FractionalBudget, KneserGuard, KneserSpec,
};
use pq_extremal::matching::{lemma3_check, BipartiteGraph, Verdict};
use pq_extremal::{has_pq_property, PQParams, Rational, SearchBudget};

use crate::SCHEMA_VERSION;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_SAMPLES: u64 = 100_000;
const PLACEMENTS: usize = 20;
const LEMMA3_CHUNK: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Paper,
    Lemma2,
    Lemma3,
    Lemma5,
    Theorem6,
    Oracle,
    Kneser,
    Corollary,
    Theorem1,
    All,
}

impl Suite {
    const ORDERED: [Suite; 8] = [
        Suite::Theorem6,
        Suite::Lemma2,
        Suite::Lemma3,
        Suite::Lemma5,
        Suite::Oracle,
        Suite::Kneser,
        Suite::Corollary,
        Suite::Theorem1,
    ];

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::Paper | Suite::All => Self::ORDERED.to_vec(),
            s => vec![s],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub max_p: Option<usize>,
    pub max_n: Option<usize>,
    pub seed: u64,
    pub samples: u64,
    /// Not part of the report: results never depend on it.
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_p: None,
            max_n: None,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            workers: 1,
            timings: false,
        }
    }
}

impl VerifyOptions {
    fn max_p(&self, default: usize) -> usize {
        self.max_p.unwrap_or(default)
    }

    fn max_n(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }

    fn budget(&self) -> SearchBudget {
        SearchBudget::default().with_workers(self.workers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub params: Value,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Claim {
    fn checked(id: String, statement: &str, params: Value, expected: Value, computed: Value, pass: bool) -> Self {
        Claim {
            id,
            statement: statement.to_string(),
            params,
            expected,
            computed,
            status: if pass { Status::Pass } else { Status::Fail },
            reason: None,
            elapsed_ms: None,
        }
    }

    fn equal(id: String, statement: &str, params: Value, expected: Value, computed: Value) -> Self {
        let pass = expected == computed;
        Self::checked(id, statement, params, expected, computed, pass)
    }

    fn skipped(id: &str, statement: &str, params: Value, expected: Value, reason: &str) -> Self {
        Claim {
            id: id.to_string(),
            statement: statement.to_string(),
            params,
            expected,
            computed: Value::Null,
            status: Status::Skipped,
            reason: Some(reason.to_string()),
            elapsed_ms: None,
        }
    }

    fn error(id: String, statement: &str, params: Value, expected: Value, err: impl ToString) -> Self {
        Self::checked(id, statement, params, expected, json!({ "error": err.to_string() }), false)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub suite: Suite,
    pub options: VerifyOptions,
    pub claims: Vec<Claim>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn table(&self) -> String {
        let width = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(5).max(5);
        let mut s = format!("{:<width$}  {:<7}  {}\n", "claim", "status", "expected / computed");
        for c in &self.claims {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let detail = match &c.reason {
                Some(r) => r.clone(),
                None => format!("{} / {}", c.expected, c.computed),
            };
            s.push_str(&format!("{:<width$}  {status:<7}  {detail}\n", c.id));
        }
        let m = &self.summary;
        s.push_str(&format!(
            "{} claims: {} passed, {} failed, {} skipped\n",
            m.total, m.pass, m.fail, m.skipped
        ));
        s
    }
}

/// Runs every claim of `suite` in registry order.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let mut claims = Vec::new();
    for s in suite.members() {
        let runner: fn(&VerifyOptions, &mut Vec<Claim>) = match s {
            Suite::Theorem6 => theorem6,
            Suite::Lemma2 => lemma2,
            Suite::Lemma3 => lemma3,
            Suite::Lemma5 => lemma5,
            Suite::Oracle => oracle,
            Suite::Kneser => kneser,
            Suite::Corollary => corollary,
            Suite::Theorem1 => theorem1,
            Suite::Paper | Suite::All => unreachable!("composite suites expand to members"),
        };
        runner(opts, &mut claims);
    }
    if !opts.timings {
        for c in &mut claims {
            c.elapsed_ms = None;
        }
    }
    let summary = Summary {
        total: claims.len(),
        pass: claims.iter().filter(|c| c.status == Status::Pass).count(),
        fail: claims.iter().filter(|c| c.status == Status::Fail).count(),
        skipped: claims.iter().filter(|c| c.status == Status::Skipped).count(),
    };
    VerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        suite,
        options: *opts,
        claims,
        summary,
    }
}

fn timed(f: impl FnOnce() -> Claim) -> Claim {
    let clock = Instant::now();
    let mut c = f();
    c.elapsed_ms = Some(clock.elapsed().as_millis() as u64);
    c
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
}

fn theorem6(opts: &VerifyOptions, out: &mut Vec<Claim>) {
    const STATEMENT: &str = "ex(p, D_2(p,3)) = C(p-1,2) + 1";
    for p in 3..=opts.max_p(6) {
        out.push(timed(|| {
            let id = format!("theorem6/p{p}");
            let params = json!({ "n": p, "k": 2, "p": p, "q": 3 });
            let expected = json!((p - 1) * (p - 2) / 2 + 1);
            match extremal_number(p, 2, p, 3, &opts.budget()) {
                Ok(r) => {
                    let pass = r.complete && expected == json!(r.value);
                    Claim::checked(id, STATEMENT, params, expected, json!(r.value), pass)
                }
                Err(e) => Claim::error(id, STATEMENT, params, expected, e),
            }
        }));
    }
}

fn lemma2(opts: &VerifyOptions, out: &mut Vec<Claim>) {
    const STATEMENT: &str = "every member of F_k(n,t,r) with p-1 = t(q-1)+r has the (p,q)-property";
    let max_n = opts.max_n(12);
    let pool = pool(opts.workers);
    for k in 2..=3 {
        for q in 3..=4 {
            for p in q..=opts.max_p(7) {
                out.push(timed(|| {
                    let (t, r) = tq_decompose(p, q).expect("p >= q >= 3");
                    let ns: Vec<usize> = (k.max(t)..=max_n)
                        .filter(|&n| SplitFamilySpec::new(n, k, t, r).is_ok())
                        .collect();
                    let params = json!({
                        "k": k, "p": p, "q": q, "t": t, "r": r,
                        "n": ns, "random_placements": PLACEMENTS,
                    });
                    let tallies: Vec<(usize, Vec<usize>)> = pool.install(|| {
                        ns.par_iter()
                            .map(|&n| lemma2_instances(n, k, p, q, t, r, opts.seed))
                            .collect()
                    });
                    let instances: usize = tallies.iter().map(|(i, _)| i).sum();
                    let failing_n: Vec<usize> = ns
                        .iter()
                        .zip(&tallies)
                        .filter(|(_, (_, f))| !f.is_empty())
                        .map(|(n, _)| *n)
                        .collect();
                    let failures: usize = tallies.iter().map(|(_, f)| f.len()).sum();
                    Claim::checked(
                        format!("lemma2/k{k}-p{p}-q{q}"),
                        STATEMENT,
                        params,
                        json!({ "failures": 0 }),
                        json!({ "instances": instances, "failures": failures, "failing_n": failing_n }),
                        failures == 0,
                    )
                }));
            }
        }
    }
}

/// Checks the canonical member and the random placements for one `n`.
/// Returns the instance count and the indices of failing instances.
fn lemma2_instances(n: usize, k: usize, p: usize, q: usize, t: usize, r: usize, seed: u64) -> (usize, Vec<usize>) {
    let params = PQParams::new(p, q).expect("validated");
    let spec = SplitFamilySpec::new(n, k, t, r).expect("filtered");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((k as u64) << 48) | ((n as u64) << 32) | ((p as u64) << 16) | q as u64);
    let mut members = vec![split_family_member(n, k, t, r).expect("valid spec")];
    for _ in 0..PLACEMENTS {
        members.push(random_split_family_member(spec, &mut rng).expect("valid spec"));
    }
    let failing = members
        .iter()
        .enumerate()
        .filter(|(_, h)| !has_pq_property(h, params))
        .map(|(i, _)| i)
        .collect();
    (members.len(), failing)
}

#[derive(Debug, Clone, Copy, Default)]
struct MatchingTally {
    instances: u64,
    checks: u64,
    premise_true: u64,
    counterexamples: u64,
    certificate_failures: u64,
}

impl MatchingTally {
    fn add(&mut self, g: &BipartiteGraph) {
        self.instances += 1;
        for t in 1..=g.left().max(1) {
            let rep = lemma3_check(g, t);
            self.checks += 1;
            self.premise_true += u64::from(rep.premise);
            self.counterexamples += u64::from(rep.verdict == Verdict::Counterexample);
            self.certificate_failures += u64::from(!rep.cover_certified);
        }
    }

    fn merge(self, o: MatchingTally) -> MatchingTally {
        MatchingTally {
            instances: self.instances + o.instances,
            checks: self.checks + o.checks,
            premise_true: self.premise_true + o.premise_true,
            counterexamples: self.counterexamples + o.counterexamples,
            certificate_failures: self.certificate_failures + o.certificate_failures,
        }
    }

    fn claim(self, id: &str, params: Value) -> Claim {
        const STATEMENT: &str =
            "|A| < |B| and e(G) > (t-1)|B| imply a t-matching; the Konig cover matches the matching size";
        Claim::checked(
            id.to_string(),
            STATEMENT,
            params,
            json!({ "counterexamples": 0, "certificate_failures": 0 }),
            json!({
                "instances": self.instances,
                "checks": self.checks,
                "premise_true": self.premise_true,
                "counterexamples": self.counterexamples,
                "certificate_failures": self.certificate_failures,
            }),
            self.counterexamples == 0 && self.certificate_failures == 0,
        )
    }
}

fn lemma3(opts: &VerifyOptions, out: &mut Vec<Claim>) {
    out.push(timed(|| {
        let mut tally = MatchingTally::default();
        for l in 0..=3 {
            for r in 0..=4 {
                for mask in 0u64..1 << (l * r) {
                    tally.add(&BipartiteGraph::from_mask(l, r, mask).expect("fits in 12 bits"));
                }
            }
        }
        tally.claim("lemma3/exhaustive", json!({ "max_a": 3, "max_b": 4, "t": "1..=|A|" }))
    }));

    out.push(timed(|| {
        let samples = opts.samples;
        let chunks = samples.div_ceil(LEMMA3_CHUNK);
        let seed = opts.seed;
        let tally = pool(opts.workers).install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    let mut tally = MatchingTally::default();
                    let len = LEMMA3_CHUNK.min(samples - c * LEMMA3_CHUNK);
                    for _ in 0..len {
                        tally.add(&random_bipartite(&mut rng));
                    }
                    tally
                })
                .reduce(MatchingTally::default, MatchingTally::merge)
        });
        tally.claim(
            "lemma3/random",
            json!({ "samples": samples, "seed": seed, "max_b": 8, "t": "1..=|A|" }),
        )
    }));
}

/// `|A| < |B| <= 8`, with an edge density drawn per instance.
fn random_bipartite(rng: &mut ChaCha8Rng) -> BipartiteGraph {
    let b = rng.gen_range(2..=8usize);
    let a = rng.gen_range(1..b);
    let density: f64 = rng.gen();
    let edges: Vec<(usize, usize)> = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    BipartiteGraph::new(a, b, edges).expect("edges within sides")
}

fn lemma5(opts: &VerifyOptions, out: &mut Vec<Claim>) {
    const STATEMENT: &str =
        "a graph with |support| = e(G) >= 3 has a vertex of degree >= 3 or is 2-regular on its support";
    for n in 4..=opts.max_n(7) {
        out.push(timed(|| {
            let id = format!("lemma5/n{n}");
            let params = json!({ "n": n });
            let expected = json!({ "counterexamples": 0 });
            match verify_lemma_p3(n, opts.workers) {
                Ok(r) => Claim::checked(
                    id,
                    STATEMENT,
                    params,
                    expected,
                    json!({
                        "graphs_enumerated": r.graphs_enumerated,
                        "graphs_checked": r.graphs_checked,
                        "with_degree_at_least_3": r.with_degree_at_least_3,
                        "two_regular": r.two_regular,
                        "counterexamples": r.counterexamples,
                        "strict_reading_failures": r.strict_reading_failures,
                    }),
                    r.counterexamples == 0,
                ),
                Err(e) => Claim::error(id, STATEMENT, params, expected, e),
            }
        }));
    }
}

fn oracle(opts: &VerifyOptions, out: &mut Vec<Claim>) {
    const STATEMENT: &str = "branch and bound extremal number equals exhaustive enumeration";
    for k in 2..=3 {
        for n in 4..=opts.max_n(6) {
            if binomial(n as u64, k as u64).is_none_or(|c| c > 21) {
                continue;
            }
            for p in 3..=opts.max_p(5) {
                for q in 3..=p {
                    out.push(timed(|| {
                        let id = format!("oracle/n{n}-k{k}-p{p}-q{q}");
                        let params = json!({ "n": n, "k": k, "p": p, "q": q });
                        let exact = match extremal_oracle(n, k, p, q, opts.workers) {
                            Ok(o) => o.value,
                            Err(e) => return Claim::error(id, STATEMENT, params, Value::Null, e),
                        };
                        let expected = json!(exact);
                        match extremal_number(n, k, p, q, &opts.budget()) {
                            Ok(r) => {
                                let pass = r.complete && r.value == exact;
                                Claim::checked(id, STATEMENT, params, expected, json!(r.value), pass)
                            }
                            Err(e) => Claim::error(id, STATEMENT, params, expected, e),
                        }
                    }));
                }
            }
        }
    }
}

fn guard() -> KneserGuard {
    KneserGuard::default()
}

fn kneser(opts: &VerifyOptions, out: &mut Vec<Claim>) {
    const BRIDGE: &str = "alpha(K_q^p([n] choose 2)) = ex_2(n, D_2(p,q))";
    for n in 4..=opts.max_n(6) {
        for (p, q) in [(2, 2), (3, 2), (3, 3), (4, 3)] {
            if p > opts.max_p(4) {
                continue;
            }
            out.push(timed(|| {
                let id = format!("kneser/bridge-n{n}-p{p}-q{q}");
                let params = json!({ "n": n, "k": 2, "p": p, "q": q });
                let ex = match extremal_number(n, 2, p, q, &opts.budget()) {
                    Ok(r) if r.complete => r.value,
                    Ok(_) => return Claim::error(id, BRIDGE, params, Value::Null, "search incomplete"),
                    Err(e) => return Claim::error(id, BRIDGE, params, Value::Null, e),
                };
                let built = KneserSpec::new(n, 2, p, q).and_then(|s| build_kneser(s, &guard()));
                match built {
                    Ok(kh) => {
                        let a = independence_number(&kh.hypergraph, &opts.budget());
                        let pass = a.complete && a.alpha == ex;
                        Claim::checked(id, BRIDGE, params, json!(ex), json!(a.alpha), pass)
                    }
                    Err(e) => Claim::error(id, BRIDGE, params, json!(ex), e),
                }
            }));
        }
    }

    let petersen = KneserSpec::new(5, 2, 2, 2).and_then(|s| build_kneser(s, &guard()));
    let petersen = match petersen {
        Ok(kh) => kh,
        Err(e) => {
            out.push(Claim::error("kneser/petersen".into(), "Petersen battery", json!({}), Value::Null, e));
            return;
        }
    };
    let params = json!({ "n": 5, "k": 2, "p": 2, "q": 2 });
    let h = &petersen.hypergraph;
    out.push(Claim::equal(
        "kneser/petersen-size".into(),
        "K_2^2([5] choose 2) has 10 vertices and 15 edges",
        params.clone(),
        json!({ "vertices": 10, "edges": 15 }),
        json!({ "vertices": h.n(), "edges": h.edge_count() }),
    ));
    out.push(timed(|| {
        let a = independence_number(h, &opts.budget());
        Claim::checked(
            "kneser/petersen-alpha".into(),
            "alpha of the Petersen graph is 4",
            params.clone(),
            json!(4),
            json!(a.alpha),
            a.complete && a.alpha == 4,
        )
    }));
    out.push(timed(|| {
        let formula = sarkaria_chi(5, 2, 2, 2).map(|s| s.clamped).ok();
        let statement = "chi of the Petersen graph is 3 and equals the Sarkaria formula";
        match chromatic_number_exact(h, &opts.budget()) {
            Ok(c) => Claim::checked(
                "kneser/petersen-chi".into(),
                statement,
                params.clone(),
                json!({ "chi": 3, "sarkaria": 3 }),
                json!({ "chi": c.upper, "sarkaria": formula }),
                c.complete && c.upper == 3 && formula == Some(3),
            ),
            Err(e) => Claim::error("kneser/petersen-chi".into(), statement, params.clone(), json!(3), e),
        }
    }));
    out.push(timed(|| {
        let statement = "chi_f of the Petersen graph is 5/2 by the LP and by C(n,k)/alpha";
        let expected = json!({ "lp": Rational::new(5, 2), "transitive": Rational::new(5, 2) });
        let lp = fractional_chromatic_lp(h, &FractionalBudget::default()).map(|r| r.value);
        let tr = KneserSpec::new(5, 2, 2, 2).and_then(|s| fractional_chromatic_transitive(s, &opts.budget()));
        match (lp, tr) {
            (Ok(lp), Ok(tr)) => Claim::equal(
                "kneser/petersen-chi-f".into(),
                statement,
                params.clone(),
                expected,
                json!({ "lp": lp, "transitive": tr }),
            ),
            (Err(e), _) | (_, Err(e)) => Claim::error("kneser/petersen-chi-f".into(), statement, params.clone(), expected, e),
        }
    }));

    const SARKARIA: &str = "exact chromatic number equals the Sarkaria formula";
    for (n, k, p, q) in [(6, 2, 2, 2), (7, 2, 2, 2), (5, 2, 3, 2)] {
        if n > opts.max_n(7) {
            continue;
        }
        out.push(timed(|| {
            let id = format!("kneser/sarkaria-n{n}-k{k}-p{p}-q{q}");
            let params = json!({ "n": n, "k": k, "p": p, "q": q });
            let formula = sarkaria_chi(n, k, p, q).expect("valid parameters");
            let expected = json!({ "chi": formula.clamped, "raw": formula.raw });
            let built = KneserSpec::new(n, k, p, q).and_then(|s| build_kneser(s, &guard()));
            let chi = built.and_then(|kh| chromatic_number_exact(&kh.hypergraph, &opts.budget()));
            match chi {
                Ok(c) => {
                    let computed = json!({ "chi": c.upper, "raw": formula.raw });
                    let pass = c.complete && expected == computed;
                    Claim::checked(id, SARKARIA, params, expected, computed, pass)
                }
                Err(e) => Claim::error(id, SARKARIA, params, expected, e),
            }
        }));
    }
}

fn corollary(_opts: &VerifyOptions, out: &mut Vec<Claim>) {
    const STATEMENT: &str = "chi_f(K_q^p([n] choose 2)) = C(n,2) / phi_2(n,p,q) for n >= 2p^2";
    let mut push = |n: usize, p: usize, q: usize, expected: Rational| {
        let id = format!("corollary/n{n}-p{p}-q{q}");
        let params = json!({ "n": n, "p": p, "q": q });
        out.push(match corollary_chi_f(n, p, q) {
            Ok(v) => Claim::equal(id, STATEMENT, params, json!(expected), json!(v.value)),
            Err(e) => Claim::error(id, STATEMENT, params, json!(expected), e),
        });
    };
    for n in 18..=30 {
        push(n, 3, 3, Rational::new(n as i64, 2));
    }
    push(32, 4, 3, Rational::new(31, 2));
    out.push(Claim::skipped(
        "corollary/end-to-end",
        STATEMENT,
        json!({ "n": 18, "p": 3, "q": 3 }),
        json!(Rational::from_integer(9)),
        "requires n >= 2p^2: the smallest case needs alpha of a hypergraph on 153 vertices; \
         its ingredients are covered by the oracle and kneser suites",
    ));
}

fn theorem1(opts: &VerifyOptions, out: &mut Vec<Claim>) {
    const STATEMENT: &str = "ex_2(n, D_2(p,q)) >= phi_2(n,p,q), with equality once n >= 2p^2";
    for n in 4..=opts.max_n(7) {
        for p in 3..=opts.max_p(5) {
            for q in 3..=p {
                let (t, _) = tq_decompose(p, q).expect("p >= q >= 3");
                if t > n {
                    continue;
                }
                out.push(timed(|| {
                    let id = format!("theorem1/lower-n{n}-p{p}-q{q}");
                    let params = json!({ "n": n, "k": 2, "p": p, "q": q });
                    let phi = pq_extremal::constructions::phi(n, 2, p, q).expect("t <= n");
                    let expected = json!({ "at_least": phi });
                    match extremal_number(n, 2, p, q, &opts.budget()) {
                        Ok(r) => {
                            let pass = r.complete && r.value as u128 >= phi;
                            Claim::checked(id, STATEMENT, params, expected, json!(r.value), pass)
                        }
                        Err(e) => Claim::error(id, STATEMENT, params, expected, e),
                    }
                }));
            }
        }
    }
    out.push(Claim::skipped(
        "theorem1/equality-regime",
        STATEMENT,
        json!({ "n": ">= 2p^2", "k": 2 }),
        json!("ex = phi"),
        "equality is claimed only for n >= 2p^2 (18 for p = 3), beyond exhaustive search",
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_instances_respect_side_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let g = random_bipartite(&mut rng);
            assert!(g.left() >= 1 && g.left() < g.right() && g.right() <= 8);
        }
    }

    #[test]
    fn composite_suites_expand_in_order() {
        assert_eq!(Suite::Paper.members(), Suite::All.members());
        assert_eq!(Suite::Paper.members().len(), 8);
        assert_eq!(Suite::Lemma3.members(), vec![Suite::Lemma3]);
    }

    #[test]
    fn sample_count_and_seed_are_honoured() {
        let opts = VerifyOptions {
            samples: 2500,
            ..VerifyOptions::default()
        };
        let a = run_suite(Suite::Lemma3, &opts);
        let b = run_suite(Suite::Lemma3, &VerifyOptions { workers: 3, ..opts });
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.claim("lemma3/random").unwrap().computed["instances"], json!(2500));
        let c = run_suite(Suite::Lemma3, &VerifyOptions { seed: 99, ..opts });
        assert_ne!(
            a.claim("lemma3/random").unwrap().computed,
            c.claim("lemma3/random").unwrap().computed
        );
    }

    #[test]
    fn table_lists_every_claim() {
        let report = run_suite(Suite::Corollary, &VerifyOptions::default());
        let table = report.table();
        assert!(report.claims.iter().all(|c| table.contains(&c.id)));
        assert!(table.contains("skipped"));
    }
}
