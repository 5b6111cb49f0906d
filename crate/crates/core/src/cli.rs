//! The `njordan` command line. Exit codes: 0 success, 1 a check failed,
//! 2 usage, parse or guard error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cstar_num::{
    check_corollary_2_6, check_theorem_2_7, classify_njordan_functionals, random_linear_maps, step2_reduction_check,
    CstarError, LinearMapC, DEFAULT_SAMPLES,
};
use crate::derivation::{
    builtin, consequence_check, replay, verify_certificate, Certificate, ConsequenceOptions, ConsequenceResult,
    FieldTag, InstanceGuard, BUILTIN_SCRIPTS,
};
use crate::freealg::{Mode, Variable};
use crate::identities::HIdentity;
use crate::models::{
    paper_examples, predicate_report, search, ExamplesReport, Guard, ModelError, Predicate, RingSpec, SearchOptions,
};

#[derive(Parser, Debug)]
#[command(name = "njordan", version, about = "Derivations, certificates and finite models for n-Jordan maps")]
struct Cli {
    /// Worker threads; falls back to NJORDAN_THREADS, then 1.
    #[arg(long, global = true, env = "NJORDAN_THREADS", default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Replay a builtin derivation script.
    Replay(ReplayArgs),
    /// Decide whether an identity follows from instances of the seed.
    Consequence(ConsequenceArgs),
    /// Search additive maps between finite rings.
    Search(SearchArgs),
    /// Reproduce the finite-ring examples.
    Examples(ExamplesArgs),
    /// Numeric norm checks on ℂᵏ.
    Norm(NormArgs),
    /// Check a certificate file.
    VerifyCert(VerifyArgs),
}

#[derive(Args, Debug)]
struct ReplayArgs {
    #[arg(long)]
    script: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConsequenceArgs {
    #[arg(long)]
    n: u32,
    /// Comma separated substitution variables.
    #[arg(long, default_value = "x,y,z")]
    vars: String,
    #[arg(long, default_value_t = 1)]
    coeff_range: u32,
    #[arg(long)]
    target: String,
    /// `nc` or `c`.
    #[arg(long, default_value = "nc")]
    mode: String,
    /// `Q` or `GF(p)`.
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long, default_value = "certificate.json")]
    cert: PathBuf,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    unsafe_override: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Ring spec such as `zm:5`, `mat:2x2@2`, `upper:4@2`.
    #[arg(long)]
    domain: String,
    /// Defaults to the domain.
    #[arg(long)]
    codomain: Option<String>,
    #[arg(long)]
    n: u32,
    /// `jordan_not_ring`, `njordan_not_jordan` or `njordan`.
    #[arg(long, default_value = "jordan_not_ring")]
    predicate: String,
    #[arg(long, default_value_t = 10)]
    limit: usize,
    /// Sample this many maps instead of enumerating.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exit 1 if anything is found.
    #[arg(long)]
    expect_none: bool,
    #[arg(long)]
    unsafe_override: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    /// Run every reproduction (the default).
    #[arg(long)]
    all: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NormCheck {
    Classify,
    Contractive,
    Star,
    Step2,
    All,
}

#[derive(Args, Debug)]
struct NormArgs {
    #[arg(long, value_enum, default_value_t = NormCheck::All)]
    check: NormCheck,
    /// Domain dimension.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Codomain dimension.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Power for the classification and the character reduction.
    #[arg(long, default_value_t = 3)]
    n: u32,
    /// Largest power parameter for the star check.
    #[arg(long, default_value_t = 3)]
    power: u32,
    /// Random maps for the character reduction.
    #[arg(long, default_value_t = 1000)]
    maps: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Certificate file.
    #[arg(default_value = "certificate.json")]
    path: PathBuf,
}

/// Failures that map to exit code 2.
#[derive(Debug, thiserror::Error)]
enum UsageError {
    #[error("{0}")]
    Message(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Derivation(#[from] crate::derivation::DerivationError),
    #[error(transparent)]
    Identity(#[from] crate::identities::IdentityError),
    #[error(transparent)]
    Certificate(#[from] crate::derivation::CertificateError),
    #[error(transparent)]
    Cstar(#[from] CstarError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

type Outcome = Result<bool, UsageError>;

fn write_json(path: &Option<PathBuf>, value: &impl Serialize) -> Result<(), UsageError> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).expect("report serializes");
        write_file(path, &(text + "\n"))?;
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), UsageError> {
    fs::write(path, text).map_err(|source| UsageError::Io { path: path.display().to_string(), source })
}

/// Runs the command line on `argv` (including the program name) and
/// returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return 2;
        }
    };
    let threads = cli.threads.max(1);
    match pool.install(|| dispatch(cli.command, threads)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, threads: usize) -> Outcome {
    match command {
        Command::Replay(a) => run_replay(a),
        Command::Consequence(a) => run_consequence(a),
        Command::Search(a) => run_search(a, threads),
        Command::Examples(a) => run_examples(a),
        Command::Norm(a) => run_norm(a),
        Command::VerifyCert(a) => run_verify(a),
    }
}

fn run_replay(a: ReplayArgs) -> Outcome {
    let script = builtin(&a.script).ok_or_else(|| {
        UsageError::Message(format!("unknown script `{}`; known: {}", a.script, BUILTIN_SCRIPTS.join(", ")))
    })?;
    let trace = replay(&script)?;
    for r in &trace.assertions {
        let status = if r.passed { "ok  " } else { "FAIL" };
        println!("{status} {:>6}  {}", r.label, r.got);
        if !r.passed {
            println!("            expected {}", r.expected);
            if let Some(d) = &r.first_difference {
                println!("            {d}");
            }
        }
        if r.printed_mismatch {
            println!("            printed form differs: {}", r.printed.as_deref().unwrap_or(""));
        }
        if let Some(n) = &r.note {
            println!("            note: {n}");
        }
    }
    println!(
        "{}: {} in {:.3}s, denominators {:?}, final {}",
        trace.script,
        if trace.passed { "passed" } else { "failed" },
        trace.elapsed.as_secs_f64(),
        trace.denominators,
        trace.final_identity
    );
    if let Some(path) = &a.json {
        write_file(path, &(trace.to_json() + "\n"))?;
    }
    Ok(trace.passed)
}

fn parse_vars(list: &str) -> Result<Vec<Variable>, UsageError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Variable::from_name(s).ok_or_else(|| UsageError::Message(format!("bad variable `{s}`"))))
        .collect()
}

fn run_consequence(a: ConsequenceArgs) -> Outcome {
    let mode = Mode::from_tag(&a.mode)
        .ok_or_else(|| UsageError::Message(format!("mode must be nc or c, got `{}`", a.mode)))?;
    let field: FieldTag = a.field.parse()?;
    let vars = parse_vars(&a.vars)?;
    let target = HIdentity::parse(&a.target, mode)?;
    let opts = ConsequenceOptions { field, guard: InstanceGuard { unsafe_override: a.unsafe_override } };
    match consequence_check(a.n, &target, &vars, a.coeff_range, opts)? {
        ConsequenceResult::InSpan(cert) => {
            let valid = verify_certificate(&cert, &target);
            println!("in span over {field}: {} instances with nonzero coefficient", cert.instances.len());
            println!("certificate {} -> {}", if valid { "verified" } else { "FAILED verification" }, a.cert.display());
            write_file(&a.cert, &(cert.to_json() + "\n"))?;
            write_json(&a.json, &json!({"result": "InSpan", "verified": valid, "instances": cert.instances.len()}))?;
            Ok(valid)
        }
        ConsequenceResult::NotInSpan(report) => {
            println!(
                "not in span over {}: rank {} from {} instances on {} coordinates, {} with the target",
                report.field, report.rank, report.instances, report.coordinates, report.rank_with_target
            );
            println!("residual {}", report.residual);
            write_json(&a.json, &json!({"result": "NotInSpan", "report": report}))?;
            Ok(false)
        }
    }
}

fn run_search(a: SearchArgs, threads: usize) -> Outcome {
    let guard = Guard { unsafe_override: a.unsafe_override };
    let domain = Arc::new(a.domain.parse::<RingSpec>()?.build(guard)?);
    let codomain = match &a.codomain {
        Some(spec) => Arc::new(spec.parse::<RingSpec>()?.build(guard)?),
        None => domain.clone(),
    };
    let predicate = Predicate::parse(&a.predicate)
        .ok_or_else(|| UsageError::Message(format!("unknown predicate `{}`", a.predicate)))?;
    let opts = SearchOptions { threads, samples: a.samples, seed: a.seed };
    let found = search(&domain, &codomain, a.n, &predicate, a.limit, opts)?;
    println!(
        "{} -> {}, n = {}, {}: {} found (limit {}, {})",
        domain.label(),
        codomain.label(),
        a.n,
        a.predicate,
        found.len(),
        a.limit,
        match a.samples {
            Some(s) => format!("{s} samples, seed {}", a.seed),
            None => "exhaustive".into(),
        }
    );
    let mut reports = Vec::new();
    for h in &found {
        println!("  {}: {:?}", h.name(), h.rows());
        reports.push(predicate_report(h, &[2, a.n], &[2, a.n])?);
    }
    write_json(
        &a.json,
        &json!({
            "domain": domain.label(), "codomain": codomain.label(), "n": a.n,
            "predicate": a.predicate, "seed": a.seed, "samples": a.samples,
            "found": reports,
        }),
    )?;
    Ok(!(a.expect_none && !found.is_empty()))
}

fn examples_hold(r: &ExamplesReport) -> bool {
    let j = &r.negation.jordan;
    let negation = j.get(&3).is_some_and(|v| v.holds) && j.values().filter(|v| v.holds).count() == 1;
    let nil = &r.nilpotent_algebra;
    let nilpotent = nil.nilpotency_index == Some(4) && nil.triple_product.is_some() && nil.four_fold_product.is_none();
    let fun = r.function_ring.all_four_fold_products_zero && r.function_ring.all_fourth_powers_zero;
    let comm = r.commutative_jordan.iter().all(|c| c.jordan_maps == c.jordan_maps_that_are_ring);
    negation && nilpotent && fun && comm
}

fn run_examples(a: ExamplesArgs) -> Outcome {
    let _ = a.all;
    let r = paper_examples()?;
    let verdicts: Vec<String> =
        r.negation.jordan.iter().map(|(n, v)| format!("{n}-Jordan {}", if v.holds { "yes" } else { "no" })).collect();
    println!("negation on {}: {}", r.negation.ring, verdicts.join(", "));
    let nil = &r.nilpotent_algebra;
    println!(
        "{}: {} elements, unital {}, nilpotency index {:?}",
        nil.ring, nil.elements, nil.unital, nil.nilpotency_index
    );
    if let Some(w) = &nil.triple_product {
        println!("  nonzero triple product {} = {}", w.factors.join("*"), w.product);
    }
    println!("  nonzero four-fold product: {}", if nil.four_fold_product.is_some() { "found" } else { "none" });
    let f = &r.function_ring;
    println!(
        "{}: dim {}, four-fold basis products zero {} ({} checked), fourth powers zero {} ({} checked)",
        f.ring,
        f.dim,
        f.all_four_fold_products_zero,
        f.basis_tuples_checked,
        f.all_fourth_powers_zero,
        f.elements_checked
    );
    for c in &r.commutative_jordan {
        println!(
            "{}: {} additive maps, {} Jordan, {} of them ring maps",
            c.ring, c.maps, c.jordan_maps, c.jordan_maps_that_are_ring
        );
    }
    write_json(&a.json, &r)?;
    let ok = examples_hold(&r);
    println!("examples {}", if ok { "reproduced" } else { "NOT reproduced" });
    Ok(ok)
}

fn run_norm(a: NormArgs) -> Outcome {
    let want = |c: NormCheck| a.check == c || a.check == NormCheck::All;
    let mut report = serde_json::Map::new();
    let mut ok = true;
    report.insert("seed".into(), json!(a.seed));
    report.insert("samples".into(), json!(a.samples));

    if want(NormCheck::Classify) {
        let fs = classify_njordan_functionals(a.m, a.n)?;
        println!("{}-Jordan functionals on C^{}: {}", a.n, a.m, fs.len());
        for f in &fs {
            println!("  {}", f.name);
        }
        report.insert("classify".into(), json!(fs));
    }
    if want(NormCheck::Contractive) {
        let r = check_corollary_2_6(a.m, a.k)?;
        println!(
            "involution preserving 3-Jordan maps C^{} -> C^{}: {} checked, max norm {}",
            a.m,
            a.k,
            r.maps.len(),
            r.max_norm
        );
        let fake = LinearMapC::real(
            "2*proj1",
            a.m,
            &[{
                let mut row = vec![0.0; a.m];
                row[0] = 2.0;
                row
            }],
        )?;
        let rejected = matches!(
            crate::cstar_num::check_contractive_jordan(&[fake], a.samples, a.seed),
            Err(CstarError::Hypothesis { .. })
        );
        println!("  injected 2*proj1 rejected by the Jordan filter: {rejected}");
        ok &= rejected;
        report.insert("contractive".into(), json!({"report": r, "injected_rejected": rejected}));
    }
    if want(NormCheck::Star) {
        let mut rows = Vec::new();
        for power in 1..=a.power {
            for sigma in permutations(a.m) {
                let h = LinearMapC::permutation(&sigma)?;
                match check_theorem_2_7(&h, power, a.samples, a.seed) {
                    Ok(r) => rows.push(json!(r)),
                    Err(e) => {
                        ok = false;
                        println!("  {}: {e}", h.name);
                        rows.push(json!({"map": h, "power": power, "error": e.to_string()}));
                    }
                }
            }
        }
        let half = LinearMapC::permutation(&(0..a.m).collect::<Vec<_>>())?.scale(num_complex::Complex64::new(0.5, 0.0));
        let rejection = match check_theorem_2_7(&half, 1, a.samples, a.seed) {
            Err(CstarError::Hypothesis { hypothesis, .. }) => Some(hypothesis),
            _ => None,
        };
        let half_ok = rejection.as_deref() == Some("h(a*a)=h(a)*h(a)");
        ok &= half_ok;
        println!(
            "coordinate permutations of C^{} for powers 1..={}: {} checked, 0.5*id rejected by {}",
            a.m,
            a.power,
            rows.len(),
            rejection.as_deref().unwrap_or("nothing")
        );
        report.insert("star".into(), json!({"maps": rows, "half_identity_rejected_by": rejection}));
    }
    if want(NormCheck::Step2) {
        let maps = random_linear_maps(a.maps, 3, a.seed);
        let agree = maps.iter().filter(|h| step2_reduction_check(h, a.n, a.samples.min(64), a.seed)).count();
        println!("character reduction for n = {}: {agree} of {} random maps agree", a.n, maps.len());
        ok &= agree == maps.len();
        report.insert("step2".into(), json!({"maps": maps.len(), "agree": agree, "n": a.n}));
    }
    write_json(&a.json, &report)?;
    Ok(ok)
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let text =
        fs::read_to_string(&a.path).map_err(|source| UsageError::Io { path: a.path.display().to_string(), source })?;
    let cert = Certificate::from_json(&text)?;
    let valid = verify_certificate(&cert, &cert.target);
    println!("{}: {}", a.path.display(), if valid { "valid" } else { "INVALID" });
    Ok(valid)
}
