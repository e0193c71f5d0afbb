use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use regbound::atlas::{atlas_all, atlas_graph};
use regbound::bound::{dump_samples, linear_bound, machine_bound, two_term_bound, BoundCertificate};
use regbound::enumerate::{classify_with, cross_check, enumerate_regular, ClassificationReport, ClassifyOptions, DEFAULT_BUDGET};
use regbound::error::{Error, Result};
use regbound::graph::Graph;
use regbound::graph6;
use regbound::optimizer::{best_bound, optimize_nterm, OptimizerConfig, DEFAULT_SEED};
use regbound::record::{self, Payload, ResultRecord, SpectrumReport, CACHE_ENV};
use regbound::spectra::{adjacency_spectrum, trace_values};
use regbound::tables::verify_tables;

#[derive(Parser)]
#[command(name = "regbound", version, about = "Vertex bounds and classification for regular graphs with small second eigenvalue")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified upper bound on the number of vertices.
    Bound(BoundArgs),
    /// Enumerate every connected k-regular graph with mu1 <= z.
    Classify(ClassifyArgs),
    /// Adjacency spectrum and trace-formula values of one graph.
    Spectrum(SpectrumArgs),
    /// Recompute the published k = 4..10 tables and compare.
    VerifyTables(TablesArgs),
    /// Print every connected k-regular graph on n vertices as graph6.
    Enumerate(EnumerateArgs),
    /// Compare a graph6 file against the generator.
    Crosscheck(CrosscheckArgs),
    /// List the named graphs and check their spectra.
    Atlas(AtlasArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Linear,
    TwoTerm,
    Nterm,
    Machine,
    Best,
}

#[derive(Args)]
struct OptArgs {
    /// Number of Chebyshev terms V_1..V_N.
    #[arg(long, default_value_t = 6)]
    terms: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
}

impl OptArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            terms: self.terms,
            restarts: self.restarts,
            seed: self.seed,
            max_iters: self.max_iters,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, allow_hyphen_values = true)]
    z: f64,
    #[arg(long, value_enum, default_value = "best")]
    method: MethodArg,
    #[command(flatten)]
    opt: OptArgs,
    /// Shift for the machine bound.
    #[arg(long)]
    s: Option<f64>,
    /// Index m for the machine bound.
    #[arg(long)]
    m: Option<usize>,
    /// Coefficient of V_2 for the two-term bound.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    json: bool,
    /// Append the record to this JSONL file and reuse a matching one.
    #[arg(long, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// Print this many (x, f(x)) samples of the certificate on [-L, L].
    #[arg(long)]
    dump_samples: Option<usize>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, allow_hyphen_values = true)]
    z: f64,
    /// Enumerate up to this many vertices instead of the vertex bound.
    #[arg(long)]
    n_max: Option<usize>,
    /// Most vertices to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Refuse (exit 3) rather than stop at the budget.
    #[arg(long)]
    strict: bool,
    /// Write survivors as graph6 lines.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    #[arg(long)]
    graph6: Option<String>,
    #[arg(long)]
    atlas: Option<String>,
    /// File holding one graph6 line.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, default_value_t = 20)]
    mmax: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// Degrees to check, as `a..b` (inclusive) or a single number.
    #[arg(long, default_value = "4..10")]
    k_range: String,
    #[command(flatten)]
    opt: OptArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AtlasArgs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn fmt_num(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() < 1e-12 {
        format!("{r}")
    } else {
        format!("{x:.10}")
    }
}

fn print_certificate(c: &BoundCertificate) {
    println!("k = {}, z = {}, method = {}", c.k, fmt_num(c.z), c.method);
    if let Some(m) = c.m {
        println!("m = {m}");
    }
    if let Some(s) = c.s {
        println!("s = {s:.10}");
    }
    let terms: Vec<String> = c
        .f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != 0.0)
        .map(|(j, a)| format!("{a:.10} V{j}"))
        .collect();
    println!("f = {}", terms.join(" + "));
    println!("M1 = {:.12}", c.m1);
    println!("M2 = {:.12}", c.m2);
    println!("c0 = {:.12}", c.c0);
    println!("vertex bound = {:.10} (C >= {:.10})", c.vertex_bound, c.constant());
    println!("at most {} vertices", c.vertex_bound_int);
    for n in &c.notes {
        println!("note: {n}");
    }
}

fn emit(json: bool, rec: &ResultRecord, cache: Option<&PathBuf>, human: impl FnOnce()) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(rec)?);
    } else {
        human();
    }
    if let Some(path) = cache {
        record::append(path, rec)?;
    }
    Ok(())
}

fn cmd_bound(a: &BoundArgs) -> Result<ExitCode> {
    let cfg = a.opt.config();
    let method = match a.method {
        MethodArg::Linear => "linear",
        MethodArg::TwoTerm => "two-term",
        MethodArg::Nterm => "nterm",
        MethodArg::Machine => "machine",
        MethodArg::Best => "best",
    };
    let inputs = json!({
        "k": a.k, "z": a.z, "method": method, "terms": a.opt.terms, "restarts": a.opt.restarts,
        "max_iters": a.opt.max_iters, "s": a.s, "m": a.m, "sigma": a.sigma,
    });
    let seed = matches!(a.method, MethodArg::Nterm | MethodArg::Best).then_some(a.opt.seed);

    if let Some(path) = &a.cache {
        let probe = ResultRecord::new("bound", inputs.clone(), Payload::Tables(Vec::new()), seed);
        if let Some(hit) = record::lookup(path, &probe)? {
            if let Payload::Bound(c) = &hit.result {
                if a.json {
                    println!("{}", serde_json::to_string_pretty(&hit)?);
                } else {
                    print_certificate(c);
                    println!("(from cache {})", path.display());
                }
                return Ok(ExitCode::SUCCESS);
            }
        }
    }

    let cert = match a.method {
        MethodArg::Linear => linear_bound(a.k, a.z)?,
        MethodArg::TwoTerm => two_term_bound(a.k, a.z, a.sigma)?,
        MethodArg::Nterm => optimize_nterm(a.k, a.z, &cfg)?,
        MethodArg::Machine => machine_bound(a.k, a.z, a.m, a.s)?,
        MethodArg::Best => best_bound(a.k, a.z, &cfg)?,
    };
    let samples = match a.dump_samples {
        Some(count) => Some(dump_samples(&cert.f, a.k, count)?),
        None => None,
    };
    let rec = ResultRecord::new("bound", inputs, Payload::Bound(cert.clone()), seed);
    emit(a.json, &rec, a.cache.as_ref(), || print_certificate(&cert))?;
    if let Some(samples) = samples {
        for (x, y) in samples {
            eprintln!("{x:.10} {y:.10}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(r: &ClassificationReport) {
    println!("k = {}, z = {}, enumerated n <= {}", r.k, fmt_num(r.z), r.n_max);
    if let (Some(b), Some(m)) = (r.bound_used, r.bound_method) {
        println!("vertex bound {b} ({m})");
    }
    for c in &r.counts {
        println!("n = {:>2}: {:>6} graphs, {} with mu1 <= z", c.n, c.graphs, c.survivors);
    }
    println!("survivors: {}", r.survivors.len());
    for s in &r.survivors {
        println!(
            "  n = {:>2}  mu1 = {:>13.10}  {:<12} {}{}",
            s.n,
            s.mu1,
            s.graph6,
            s.atlas.as_deref().unwrap_or("(unnamed)"),
            if s.borderline { "  [borderline]" } else { "" }
        );
    }
    if let Some(m) = r.max_survivor_n {
        println!("largest survivor: {m} vertices");
    }
    if !r.complete {
        println!(
            "INCOMPLETE: enumerated to {} vertices but the bound is {}; larger graphs were not searched",
            r.n_max,
            r.bound_used.map_or("unknown".into(), |b| b.to_string())
        );
    }
    for v in &r.violations {
        println!("violation: {v}");
    }
}

fn cmd_classify(a: &ClassifyArgs) -> Result<ExitCode> {
    let opts = ClassifyOptions {
        n_max: a.n_max,
        budget: a.budget,
        strict: a.strict,
        optimizer: OptimizerConfig { seed: a.seed, ..OptimizerConfig::default() },
    };
    let report = classify_with(a.k, a.z, &opts)?;
    if let Some(path) = &a.out {
        let text: String = report.survivors.iter().map(|s| format!("{}\n", s.graph6)).collect();
        std::fs::write(path, text)?;
    }
    let inputs = json!({"k": a.k, "z": a.z, "n_max": a.n_max, "budget": a.budget, "strict": a.strict});
    let rec = ResultRecord::new("classify", inputs, Payload::Classification(report.clone()), Some(a.seed));
    emit(a.json, &rec, a.cache.as_ref(), || print_report(&report))?;
    Ok(if report.violations.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn load_graph(src: &GraphSource) -> Result<(String, Graph, Option<regbound::atlas::AtlasEntry>)> {
    if let Some(s) = &src.graph6 {
        return Ok((s.clone(), graph6::decode(s)?, None));
    }
    if let Some(name) = &src.atlas {
        let e = atlas_graph(name)?;
        return Ok((e.name.clone(), e.graph.clone(), Some(e)));
    }
    let path = src.file.as_ref().expect("clap requires one source");
    let text = std::fs::read_to_string(path)?;
    let graphs = graph6::decode_lines(&text)?;
    match graphs.as_slice() {
        [g] => Ok((path.display().to_string(), g.clone(), None)),
        _ => Err(Error::InvalidParameter(format!(
            "{} holds {} graphs; spectrum takes exactly one",
            path.display(),
            graphs.len()
        ))),
    }
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<ExitCode> {
    let (source, g, entry) = load_graph(&a.source)?;
    let sp = adjacency_spectrum(&g);
    let degree = g.is_regular();
    let mu1 = (g.is_connected() && g.n() >= 2).then(|| sp.values[1]);
    let trace = degree.filter(|&k| k >= 2).map(|k| trace_values(&sp.values, k, a.mmax));
    let atlas_check = entry.as_ref().map(|e| match regbound::atlas::verify(e) {
        Ok(_) => "matches expected spectrum".to_string(),
        Err(m) => format!("MISMATCH: {m}"),
    });
    let report = SpectrumReport {
        source,
        n: g.n(),
        degree,
        graph6: graph6::encode(&g),
        values: sp.values.clone(),
        multiplicities: sp.multiplicities(),
        mu1,
        trace_values: trace,
        atlas_check,
    };
    let failed = report.atlas_check.as_deref().is_some_and(|s| s.starts_with("MISMATCH"));
    let rec = ResultRecord::new("spectrum", json!({"source": report.source, "mmax": a.mmax}), Payload::Spectrum(report.clone()), None);
    emit(a.json, &rec, None, || {
        println!("{}: n = {}, graph6 {}", report.source, report.n, report.graph6);
        match report.degree {
            Some(k) => println!("{k}-regular, {}", if g.is_connected() { "connected" } else { "disconnected" }),
            None => println!("not regular"),
        }
        println!("spectrum: {{{}}}", sp.display());
        if let Some(m) = report.mu1 {
            println!("mu1 = {m:.12}");
        }
        if let Some(t) = &report.trace_values {
            for (m, v) in t.iter().enumerate() {
                println!("S_{m} = {v:.6}");
            }
        }
        if let Some(c) = &report.atlas_check {
            println!("{c}");
        }
    })?;
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u32>> {
    let bad = || Error::InvalidParameter(format!("bad k range `{s}`; use a..b or a single degree"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?)
        }
        None => {
            let k = s.trim().parse().map_err(|_| bad())?;
            Ok(k..=k)
        }
    }
}

fn cmd_tables(a: &TablesArgs) -> Result<ExitCode> {
    let ks = parse_range(&a.k_range)?;
    let checks = verify_tables(ks, &a.opt.config());
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
    let rec = ResultRecord::new(
        "verify-tables",
        json!({"k_range": a.k_range, "terms": a.opt.terms, "restarts": a.opt.restarts}),
        Payload::Tables(checks.clone()),
        Some(a.opt.seed),
    );
    emit(a.json, &rec, None, || {
        for c in &checks {
            let got = c.bound.map_or_else(|| c.error.clone().unwrap_or_default(), |b| b.to_string());
            println!(
                "{} k = {:>2}, z = {:>2}: bound {:>4} (limit {:>3}, published {:>3}) {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.k,
                c.z,
                got,
                c.limit,
                c.published,
                c.method.as_deref().unwrap_or("")
            );
        }
    })?;
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failing cells: {}", failed.iter().map(|c| format!("(k={}, z={})", c.k, c.z)).collect::<Vec<_>>().join(", "));
        Ok(ExitCode::from(1))
    }
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<ExitCode> {
    let graphs = enumerate_regular(a.k, a.n)?;
    let mut out = String::new();
    for g in &graphs {
        out.push_str(&graph6::encode(g));
        out.push('\n');
    }
    print!("{out}");
    eprintln!("{} connected {}-regular graphs on {} vertices", graphs.len(), a.k, a.n);
    Ok(ExitCode::SUCCESS)
}

fn cmd_crosscheck(a: &CrosscheckArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&a.file)?;
    let graphs = graph6::decode_lines(&text)?;
    let c = cross_check(&graphs)?;
    let ok = c.agrees();
    let rec = ResultRecord::new("crosscheck", json!({"file": a.file}), Payload::CrossCheck(c.clone()), None);
    emit(a.json, &rec, None, || {
        println!(
            "k = {}, n = {}: file has {} graphs ({} distinct), generator has {}",
            c.k, c.n, c.external, c.external_distinct, c.generated
        );
        for s in &c.missing_from_external {
            println!("missing from file: {s}");
        }
        for s in &c.missing_from_generated {
            println!("missing from generator: {s}");
        }
        for s in &c.rejected {
            println!("not a connected {}-regular graph on {} vertices: {s}", c.k, c.n);
        }
        println!("{}", if ok { "AGREE" } else { "DISAGREE" });
    })?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_atlas(a: &AtlasArgs) -> Result<ExitCode> {
    let entries = atlas_all(a.k);
    let mut all_ok = true;
    let mut rows = Vec::new();
    for e in &entries {
        let check = regbound::atlas::verify(e);
        all_ok &= check.is_ok();
        let sp = adjacency_spectrum(&e.graph);
        rows.push(json!({
            "name": e.name, "degree": e.degree, "n": e.graph.n(), "graph6": e.graph6(),
            "spectrum": sp.values, "ok": check.is_ok(),
        }));
        if !a.json {
            println!(
                "{:<11} k = {} n = {:>2} {:<10} {{{}}} {}",
                e.name,
                e.degree,
                e.graph.n(),
                e.graph6(),
                sp.display(),
                match &check {
                    Ok(_) => "ok".to_string(),
                    Err(m) => format!("MISMATCH: {m}"),
                }
            );
        }
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bound(a) => cmd_bound(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::VerifyTables(a) => cmd_tables(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Crosscheck(a) => cmd_crosscheck(a),
        Command::Atlas(a) => cmd_atlas(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::BudgetExceeded { required, .. } = e {
                eprintln!("required vertex bound: {required}; pass --n-max/--budget to go further");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
