//! Handlers for each subcommand. Each returns the exit code, or an error
//! that the caller reports with exit code 2.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pq_extremal::constructions::{
    complete_plus_edge, phi, random_split_family_member, sarkaria_chi, split_family_member,
    split_hypergraph, tq_decompose, SplitFamilySpec,
};
use pq_extremal::extremal::{extremal_number, extremal_oracle};
use pq_extremal::kneser::{
    build_kneser, chromatic_number_exact, fractional_chromatic_lp, fractional_chromatic_transitive,
    independence_number, FractionalBudget, KneserGuard, KneserSpec,
};
use pq_extremal::{find_violation, Hypergraph, PQParams, SearchBudget, SearchStats};

use crate::verify::{run_suite, VerifyOptions};
use crate::{
    BudgetArgs, ChiFMethod, CheckArgs, Command, ConstructArgs, ExtremalArgs, Family, KneserArgs,
    ParamArgs, VerifyArgs, EXIT_NEGATIVE, EXIT_OK, SCHEMA_VERSION,
};

#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: io::Error },
    Usage(String),
    Core(pq_extremal::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<pq_extremal::Error> for CliError {
    fn from(e: pq_extremal::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CmdResult = Result<i32, CliError>;

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    writeln!(out, "{text}").map_err(stdout_err)
}

fn emit_text(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(stdout_err)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn stats_json(s: &SearchStats) -> Value {
    json!({ "nodes": s.nodes, "prunes": s.prunes, "elapsed_ms": s.elapsed_ms })
}

fn budget(b: &BudgetArgs) -> Result<SearchBudget, CliError> {
    let time = match b.budget_seconds {
        Some(s) if !(s.is_finite() && s > 0.0) => {
            return Err(CliError::Usage(format!("--budget-seconds must be positive, got {s}")))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(SearchBudget::new(b.budget_nodes, time, b.workers)?)
}

pub fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Check(a) => check(a, out),
        Command::Construct(a) => construct(a, out),
        Command::Phi(a) => cmd_phi(a, out),
        Command::Extremal(a) => extremal(a, out),
        Command::Kneser(a) => kneser(a, out),
        Command::Sarkaria(a) => sarkaria(a, out),
        Command::Verify(a) => verify(a, out),
    }
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed = if text.trim_start().starts_with('{') {
        Hypergraph::from_json(&text)
    } else {
        Hypergraph::parse(&text)
    };
    parsed.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn edge_lines(edges: &[Vec<usize>]) -> String {
    edges
        .iter()
        .map(|e| {
            let vs: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            format!("  {}\n", vs.join(" "))
        })
        .collect()
}

fn check(a: CheckArgs, out: &mut dyn Write) -> CmdResult {
    let h = read_hypergraph(&a.input)?;
    let params = PQParams::new(a.p, a.q)?;
    let witness = find_violation(&h, params).map(|v| v.edge_lists());
    let holds = witness.is_none();
    if a.json {
        emit_json(
            out,
            &json!({
                "schema_version": SCHEMA_VERSION,
                "command": "check",
                "n": h.n(),
                "k": h.k(),
                "edges": h.edge_count(),
                "p": a.p,
                "q": a.q,
                "holds": holds,
                "witness": witness,
            }),
        )?;
    } else {
        match &witness {
            None => emit_text(out, &format!("holds: the ({},{})-property is satisfied\n", a.p, a.q))?,
            Some(w) => emit_text(
                out,
                &format!(
                    "violated: {} edges with every vertex in at most {} of them\n{}",
                    a.p,
                    a.q - 1,
                    edge_lines(w)
                ),
            )?,
        }
    }
    Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> CmdResult {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--family needs --{flag}")))
    };
    let (h, name) = match a.family {
        Family::Split => {
            if a.r != 0 {
                return Err(CliError::Usage("--family split takes no extra edges; use --family member".into()));
            }
            (split_hypergraph(need(a.n, "n")?, a.k, need(a.t, "t")?)?, "split")
        }
        Family::Member => {
            let spec = SplitFamilySpec::new(need(a.n, "n")?, a.k, need(a.t, "t")?, a.r)?;
            let h = match a.seed {
                Some(seed) => random_split_family_member(spec, &mut ChaCha8Rng::seed_from_u64(seed))?,
                None => split_family_member(spec.n, spec.k, spec.t, spec.r)?,
            };
            (h, "member")
        }
        Family::CompletePlusEdge => (complete_plus_edge(need(a.p, "p")?)?, "complete_plus_edge"),
    };
    if let Some(path) = &a.output {
        write_file(path, &h.serialize())?;
    }
    if a.json {
        emit_json(
            out,
            &json!({
                "schema_version": SCHEMA_VERSION,
                "command": "construct",
                "family": name,
                "n": h.n(),
                "k": h.k(),
                "edge_count": h.edge_count(),
                "edges": h.edge_lists(),
            }),
        )?;
    } else if a.output.is_none() {
        emit_text(out, &h.serialize())?;
    }
    Ok(EXIT_OK)
}

fn cmd_phi(a: ParamArgs, out: &mut dyn Write) -> CmdResult {
    let value = phi(a.n, a.k, a.p, a.q)?;
    let (t, r) = tq_decompose(a.p, a.q)?;
    if a.json {
        emit_json(
            out,
            &json!({
                "schema_version": SCHEMA_VERSION,
                "command": "phi",
                "n": a.n, "k": a.k, "p": a.p, "q": a.q,
                "t": t, "r": r,
                "phi": value,
            }),
        )?;
    } else {
        emit_text(out, &format!("{value}\n"))?;
    }
    Ok(EXIT_OK)
}

fn extremal(a: ExtremalArgs, out: &mut dyn Write) -> CmdResult {
    let b = budget(&a.budget)?;
    let r = if a.oracle {
        extremal_oracle(a.n, a.k, a.p, a.q, b.workers)?
    } else {
        extremal_number(a.n, a.k, a.p, a.q, &b)?
    };
    if a.json {
        let mut doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "extremal",
            "n": a.n, "k": a.k, "p": a.p, "q": a.q,
            "method": r.method,
            "value": r.value,
            "complete": r.complete,
            "upper_bound": r.upper_bound,
            "phi": r.phi,
            "witness": r.witness.edge_lists(),
        });
        if a.stats {
            doc["stats"] = stats_json(&r.stats);
        }
        emit_json(out, &doc)?;
    } else {
        let mut s = if r.complete {
            format!("ex_{}({}, D_{}({},{})) = {}\n", a.k, a.n, a.k, a.p, a.q, r.value)
        } else {
            format!(
                "ex_{}({}, D_{}({},{})) in [{}, {}] (budget exhausted)\n",
                a.k, a.n, a.k, a.p, a.q, r.value, r.upper_bound
            )
        };
        if let Some(phi) = r.phi {
            s.push_str(&format!("phi = {phi}\n"));
        }
        s.push_str("witness:\n");
        s.push_str(&edge_lines(&r.witness.edge_lists()));
        if a.stats {
            s.push_str(&format!(
                "nodes {} prunes {} elapsed {} ms\n",
                r.stats.nodes, r.stats.prunes, r.stats.elapsed_ms
            ));
        }
        emit_text(out, &s)?;
    }
    Ok(EXIT_OK)
}

fn kneser(a: KneserArgs, out: &mut dyn Write) -> CmdResult {
    let spec = KneserSpec::new(a.n, a.k, a.p, a.q)?;
    let guard = KneserGuard {
        max_vertices: a.max_vertices,
        max_candidate_families: a.max_families,
    };
    let kh = build_kneser(spec, &guard)?;
    let h = &kh.hypergraph;
    let b = budget(&a.budget)?;
    let mut code = EXIT_OK;

    if let Some(path) = &a.emit {
        write_file(path, &h.serialize())?;
        let mut labels = String::from("# vertex\tk-subset of [n]\n");
        for (v, set) in kh.label_table() {
            let set: Vec<String> = set.iter().map(|x| x.to_string()).collect();
            labels.push_str(&format!("{v}\t{}\n", set.join(" ")));
        }
        let mut label_path = path.clone().into_os_string();
        label_path.push(".labels");
        write_file(Path::new(&label_path), &labels)?;
    }

    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "kneser",
        "n": a.n, "k": a.k, "p": a.p, "q": a.q,
        "vertices": h.n(),
        "edges": h.edge_count(),
    });
    let mut text = format!(
        "K_{}^{}([{}] choose {}): {} vertices, {} edges\n",
        a.q,
        a.p,
        a.n,
        a.k,
        h.n(),
        h.edge_count()
    );

    if a.alpha {
        let r = independence_number(h, &b);
        let witness: Vec<Vec<usize>> = r.witness.iter().map(|v| kh.labels[v - 1].to_vec()).collect();
        doc["alpha"] = json!({ "value": r.alpha, "complete": r.complete, "witness": witness });
        text.push_str(&format!(
            "alpha = {}{}\n",
            r.alpha,
            if r.complete { "" } else { " (lower bound, budget exhausted)" }
        ));
    }
    if a.chi {
        let r = chromatic_number_exact(h, &b)?;
        let formula = sarkaria_chi(a.n, a.k, a.p, a.q)?;
        doc["chi"] = json!({
            "value": r.upper,
            "lower": r.lower,
            "complete": r.complete,
            "coloring": r.coloring,
            "sarkaria": { "raw": formula.raw, "clamped": formula.clamped },
        });
        if r.complete {
            text.push_str(&format!("chi = {} (formula {})\n", r.upper, formula.clamped));
        } else {
            text.push_str(&format!("chi in [{}, {}] (budget exhausted)\n", r.lower, r.upper));
        }
    }
    if a.chi_f {
        let mut chi_f = json!({});
        let lp = matches!(a.method, ChiFMethod::Lp | ChiFMethod::Both)
            .then(|| fractional_chromatic_lp(h, &FractionalBudget::default()))
            .transpose()?;
        let tr = matches!(a.method, ChiFMethod::Transitive | ChiFMethod::Both)
            .then(|| fractional_chromatic_transitive(spec, &b))
            .transpose()?;
        if let Some(lp) = &lp {
            chi_f["lp"] = json!(lp.value);
            text.push_str(&format!("chi_f = {} (linear program)\n", lp.value));
        }
        if let Some(tr) = &tr {
            chi_f["transitive"] = json!(tr);
            text.push_str(&format!("chi_f = {tr} (vertices / alpha)\n"));
        }
        if let (Some(lp), Some(tr)) = (&lp, &tr) {
            let agree = lp.value == *tr;
            chi_f["agree"] = json!(agree);
            if !agree {
                code = EXIT_NEGATIVE;
            }
        }
        doc["chi_f"] = chi_f;
    }

    if a.json {
        emit_json(out, &doc)?;
    } else {
        emit_text(out, &text)?;
    }
    Ok(code)
}

fn sarkaria(a: ParamArgs, out: &mut dyn Write) -> CmdResult {
    let v = sarkaria_chi(a.n, a.k, a.p, a.q)?;
    if a.json {
        emit_json(
            out,
            &json!({
                "schema_version": SCHEMA_VERSION,
                "command": "sarkaria",
                "n": a.n, "k": a.k, "p": a.p, "q": a.q,
                "raw": v.raw,
                "chi": v.clamped,
            }),
        )?;
    } else {
        emit_text(out, &format!("{} (raw formula value {})\n", v.clamped, v.raw))?;
    }
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if a.workers == 0 {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    let opts = VerifyOptions {
        max_p: a.max_p,
        max_n: a.max_n,
        seed: a.seed,
        samples: a.samples,
        workers: a.workers,
        timings: a.timings,
    };
    let report = run_suite(a.suite, &opts);
    if a.json {
        writeln!(out, "{}", report.to_json()).map_err(stdout_err)?;
    } else {
        emit_text(out, &report.table())?;
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_NEGATIVE })
}
