//! Command-line front end. [`run`] parses arguments, performs one command and
//! returns the process exit code: 0 success or property holds, 1 property
//! violated, 2 usage or input error, 3 infeasible parameters or work budget
//! exceeded.

mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use crate::entropy_classify::{
    apply_qf_transduction, build_statistical_transduction, classify, eval_type_realization, find_distinguisher_c,
    geq_surj, type_count_bound, Logic, QfTransduction,
};
use crate::extension_axioms::{
    check_ea_graph, check_ea_hypergraph, check_ea_structure, estimate_ea_failure, EaKind, EaReport, Violation,
};
use crate::parity_transduction::apply_parity_transduction;
use crate::rado_construct::{rado_graph, rado_structure, Backend, RadoCertificate, RadoOptions};
use crate::structures::{
    graph_to_text, hypergraph_to_text, parse_any, sample_random_graph, sample_random_hypergraph,
    sample_random_structure, structure_to_text, Parsed, RelStructure, Signature,
};
use crate::{Budget, Error, Prng};

pub use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "radoforge", version, about = "Finite Rado structures, extension axioms and logical pseudorandomness")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel loops.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Construct or sample a graph, hypergraph or structure.
    #[command(subcommand)]
    Generate(Generate),
    /// Check a property of an input file.
    #[command(subcommand)]
    Check(Check),
    /// Monte Carlo estimates.
    #[command(subcommand)]
    Estimate(Estimate),
    /// Apply a transduction to an input file.
    #[command(subcommand)]
    Transduce(Transduce),
    /// Decide whether a pseudorandom generator exists between two signatures.
    Classify(ClassifyArgs),
    /// Synthesize transductions.
    #[command(subcommand)]
    Synthesize(Synthesize),
    /// Type-counting distinguishers.
    #[command(subcommand)]
    Distinguish(Distinguish),
}

#[derive(Args, Debug)]
struct Out {
    /// Output file; standard output when omitted (the report then goes to
    /// standard error).
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Seeded {
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Generate {
    RadoGraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Greedy)]
        backend: BackendArg,
        /// Also write the construction certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        verify_k: Option<usize>,
        #[command(flatten)]
        seed: Seeded,
        #[command(flatten)]
        out: Out,
    },
    RadoStructure {
        /// Signature such as "R 2; P 1".
        #[arg(long)]
        sig: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Greedy)]
        backend: BackendArg,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        verify_k: Option<usize>,
        #[command(flatten)]
        seed: Seeded,
        #[command(flatten)]
        out: Out,
    },
    RandomGraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify_k: Option<usize>,
        #[command(flatten)]
        seed: Seeded,
        #[command(flatten)]
        out: Out,
    },
    RandomStructure {
        #[arg(long)]
        sig: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify_k: Option<usize>,
        #[command(flatten)]
        seed: Seeded,
        #[command(flatten)]
        out: Out,
    },
    RandomHypergraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        verify_k: Option<usize>,
        #[command(flatten)]
        seed: Seeded,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Greedy,
    Randomized,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Greedy => Backend::Greedy,
            BackendArg::Randomized => Backend::Randomized,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Exhaustive k-extension axiom check of a graph, hypergraph or structure.
    Ea {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Validate a construction certificate and rebuild its object.
    Cert {
        #[arg(long)]
        input: PathBuf,
        /// Compare the rebuilt object with this file.
        #[arg(long)]
        against: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Graph,
    Hypergraph,
    Structure,
}

#[derive(Subcommand, Debug)]
enum Estimate {
    EaFailure {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Edge size, for hypergraphs.
        #[arg(long)]
        t: Option<usize>,
        /// Signature, for structures.
        #[arg(long)]
        sig: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[command(flatten)]
        seed: Seeded,
    },
}

#[derive(Subcommand, Debug)]
enum Transduce {
    /// Graph to t-hypergraph by common-neighbour parity.
    Parity {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Apply a quantifier-free transduction file to a structure.
    Qf {
        #[arg(long)]
        transduction_file: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Generator logic: FO, LFP or LFPparity.
    #[arg(long)]
    gen: String,
    /// Adversary logic: FO, LFP or LFPparity.
    #[arg(long)]
    adv: String,
    #[arg(long)]
    sig_from: String,
    #[arg(long)]
    sig_to: String,
}

#[derive(Subcommand, Debug)]
enum Synthesize {
    /// Quantifier-free transduction with exactly uniform output.
    StatTransduction {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum Distinguish {
    /// Compare (c,k)-type counts and optionally test a structure for them.
    Typecount {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: Option<usize>,
        /// A τ-structure to test for realization of every (c,k)-type.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

enum Fail {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Io(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Fail>;

/// Where the primary output of a command goes.
struct Sink<'a> {
    stdout: &'a mut dyn Write,
    stdout_used: bool,
}

impl Sink<'_> {
    fn emit(&mut self, out: &Out, text: &str, report: &mut RunReport) -> Res<()> {
        match &out.output {
            Some(p) => {
                std::fs::write(p, text).map_err(|e| Fail::Io(format!("{}: {e}", p.display())))?;
                report.metric("output", p.display().to_string());
            }
            None => {
                self.stdout.write_all(text.as_bytes())?;
                self.stdout_used = true;
            }
        }
        Ok(())
    }
}

fn read(p: &Path) -> Res<String> {
    std::fs::read_to_string(p).map_err(|e| Fail::Io(format!("{}: {e}", p.display())))
}

fn sig(s: &str) -> Res<Signature> {
    Signature::parse_inline(s).map_err(|e| Fail::Usage(format!("bad signature `{s}`: {e}")))
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // only the first call in a process can size the global pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let mut report = RunReport::new(command_name(&cli.cmd));
    let mut sink = Sink { stdout, stdout_used: false };
    let result = dispatch(cli.cmd, &mut report, &mut sink);
    let code = match result {
        Ok(code) => code,
        Err(Fail::Usage(m)) | Err(Fail::Io(m)) => {
            report.outcome = "error".into();
            report.metric("error", m);
            2
        }
        Err(Fail::Lib(e)) => {
            let code = match &e {
                Error::Infeasible { min_n, .. } => {
                    report.outcome = "infeasible".into();
                    report.metric("min_n", min_n.to_string());
                    3
                }
                Error::BudgetExceeded { required, budget } => {
                    report.outcome = "budget-exceeded".into();
                    report.metric("required_work", required.to_string());
                    report.metric("budget", *budget);
                    3
                }
                Error::Capacity { .. } | Error::ExhaustedTries { .. } => {
                    report.outcome = "infeasible".into();
                    3
                }
                _ => {
                    report.outcome = "error".into();
                    2
                }
            };
            report.metric("error", e.to_string());
            code
        }
    };
    report.finish();
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    let target: &mut dyn Write = if sink.stdout_used { stderr } else { sink.stdout };
    let _ = target.write_all(text.as_bytes());
    code
}

fn command_name(cmd: &Cmd) -> String {
    match cmd {
        Cmd::Generate(g) => format!(
            "generate {}",
            match g {
                Generate::RadoGraph { .. } => "rado-graph",
                Generate::RadoStructure { .. } => "rado-structure",
                Generate::RandomGraph { .. } => "random-graph",
                Generate::RandomStructure { .. } => "random-structure",
                Generate::RandomHypergraph { .. } => "random-hypergraph",
            }
        ),
        Cmd::Check(Check::Ea { .. }) => "check ea".into(),
        Cmd::Check(Check::Cert { .. }) => "check cert".into(),
        Cmd::Estimate(_) => "estimate ea-failure".into(),
        Cmd::Transduce(Transduce::Parity { .. }) => "transduce parity".into(),
        Cmd::Transduce(Transduce::Qf { .. }) => "transduce qf".into(),
        Cmd::Classify(_) => "classify".into(),
        Cmd::Synthesize(_) => "synthesize stat-transduction".into(),
        Cmd::Distinguish(_) => "distinguish typecount".into(),
    }
}

fn describe(v: &Violation, parsed: &Parsed) -> String {
    let set = |xs: &[usize]| format!("{{{}}}", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    match v {
        Violation::Graph { s, t } => format!("S={} T={}", set(s), set(t)),
        Violation::Hypergraph { s, target } => {
            format!("S={} target={{{}}}", set(s), target.iter().map(|e| set(e)).collect::<Vec<_>>().join(","))
        }
        Violation::Structure { fixed, missing } => {
            let display = match parsed {
                Parsed::Structure(a) => missing.display(a.sig()).to_string(),
                _ => format!("{missing:?}"),
            };
            format!("fixed={} missing={display}", set(fixed))
        }
    }
}

fn ea_check(parsed: &Parsed, k: usize, budget: &Budget) -> Res<EaReport> {
    Ok(match parsed {
        Parsed::Graph(g) => check_ea_graph(g, k, budget)?,
        Parsed::Hypergraph(h) => check_ea_hypergraph(h, k, budget)?,
        Parsed::Structure(a) => check_ea_structure(a, k, budget)?,
    })
}

/// Runs the checker and records the verdict; returns the exit code.
fn record_ea(parsed: &Parsed, k: usize, report: &mut RunReport) -> Res<i32> {
    let r = ea_check(parsed, k, &Budget::from_env())?;
    report.metric("ea_k", k);
    report.metric("ea_holds", r.holds());
    match &r.violation {
        None => Ok(0),
        Some(v) => {
            report.outcome = "violated".into();
            report.metric("witness", describe(v, parsed));
            Ok(1)
        }
    }
}

fn rado_opts(backend: BackendArg) -> RadoOptions {
    let b = Budget::from_env();
    RadoOptions { backend: backend.into(), budget: b, verify_budget: b, ..RadoOptions::default() }
}

fn dispatch(cmd: Cmd, report: &mut RunReport, sink: &mut Sink<'_>) -> Res<i32> {
    match cmd {
        Cmd::Generate(g) => generate(g, report, sink),
        Cmd::Check(Check::Ea { k, input }) => {
            report.param("k", k).param("input", input.display().to_string());
            let parsed = parse_any(&read(&input)?)?;
            record_ea(&parsed, k, report)
        }
        Cmd::Check(Check::Cert { input, against, out }) => {
            report.param("input", input.display().to_string());
            let cert = RadoCertificate::parse(&read(&input)?)?;
            let text = match &cert.range {
                crate::rado_construct::PatternRange::Universal(_) => graph_to_text(&cert.to_graph()?),
                _ => structure_to_text(&cert.to_structure()?),
            };
            report.metric("n", cert.n).metric("k", cert.k).metric("certificate_valid", true);
            if let Some(path) = against {
                report.param("against", path.display().to_string());
                let other = parse_any(&read(&path)?)?.to_text();
                let same = other == text;
                report.metric("matches", same);
                if !same {
                    report.outcome = "violated".into();
                    return Ok(1);
                }
            } else {
                sink.emit(&out, &text, report)?;
            }
            Ok(0)
        }
        Cmd::Estimate(Estimate::EaFailure { kind, n, k, t, sig: s, trials, seed }) => {
            report.param("n", n).param("k", k).param("trials", trials);
            report.seed = Some(seed.seed);
            let kind = match kind {
                KindArg::Graph => {
                    report.param("kind", "graph");
                    EaKind::Graph { n }
                }
                KindArg::Hypergraph => {
                    let t = t.ok_or_else(|| Fail::Usage("--t is required for hypergraphs".into()))?;
                    report.param("kind", "hypergraph").param("t", t);
                    EaKind::Hypergraph { n, t }
                }
                KindArg::Structure => {
                    let s = s.ok_or_else(|| Fail::Usage("--sig is required for structures".into()))?;
                    report.param("kind", "structure").param("sig", s.clone());
                    EaKind::Structure { sig: sig(&s)?, n }
                }
            };
            let est = estimate_ea_failure(&kind, k, trials, &mut Prng::new(seed.seed, 0), &Budget::from_env())?;
            report
                .metric("failures", est.failures)
                .metric("rate", est.rate)
                .metric("wilson_low", est.wilson.0)
                .metric("wilson_high", est.wilson.1);
            Ok(0)
        }
        Cmd::Transduce(Transduce::Parity { t, input, out }) => {
            report.param("t", t).param("input", input.display().to_string());
            let g = match parse_any(&read(&input)?)? {
                Parsed::Graph(g) => g,
                _ => return Err(Fail::Usage("parity transduction needs a GRAPH input".into())),
            };
            let h = apply_parity_transduction(&g, t)?;
            report.metric("hyperedges", h.edge_count());
            sink.emit(&out, &hypergraph_to_text(&h), report)?;
            Ok(0)
        }
        Cmd::Transduce(Transduce::Qf { transduction_file, input, out }) => {
            report
                .param("transduction_file", transduction_file.display().to_string())
                .param("input", input.display().to_string());
            let theta = QfTransduction::parse(&read(&transduction_file)?)?;
            let a = match parse_any(&read(&input)?)? {
                Parsed::Structure(a) => a,
                _ => return Err(Fail::Usage("qf transduction needs a STRUCTURE input".into())),
            };
            let b = apply_qf_transduction(&theta, &a)?;
            report.metric("tuples", b.total_tuples());
            sink.emit(&out, &structure_to_text(&b), report)?;
            Ok(0)
        }
        Cmd::Classify(a) => {
            let gen: Logic = a.gen.parse().map_err(|e: Error| Fail::Usage(e.to_string()))?;
            let adv: Logic = a.adv.parse().map_err(|e: Error| Fail::Usage(e.to_string()))?;
            let (s, t) = (sig(&a.sig_from)?, sig(&a.sig_to)?);
            report
                .param("gen", gen.to_string())
                .param("adv", adv.to_string())
                .param("sig_from", s.to_string())
                .param("sig_to", t.to_string());
            let c = classify(gen, adv, &s, &t)?;
            report.metric("verdict", c.verdict.to_string()).metric("reason", c.reason);
            Ok(0)
        }
        Cmd::Synthesize(Synthesize::StatTransduction { from, to, out }) => {
            let (s, t) = (sig(&from)?, sig(&to)?);
            report.param("from", s.to_string()).param("to", t.to_string());
            let theta = build_statistical_transduction(&s, &t)?;
            report.metric("formulas", theta.formulas().len());
            sink.emit(&out, &theta.to_text(), report)?;
            Ok(0)
        }
        Cmd::Distinguish(Distinguish::Typecount { from, to, k, c, input }) => {
            let (s, t) = (sig(&from)?, sig(&to)?);
            report.param("from", s.to_string()).param("to", t.to_string()).param("k", k);
            let surj = geq_surj(&s, &t);
            report.metric("sigma_geq_s_tau", surj.holds);
            let c = match c {
                Some(c) => c,
                None => find_distinguisher_c(&s, &t, k)?,
            };
            let (bs, bt) = (type_count_bound(&s, c, k), type_count_bound(&t, c, k));
            report
                .metric("c", c)
                .metric("log2_types_from", bs.to_string())
                .metric("log2_types_to", bt.to_string())
                .metric("distinguishes", bs < bt);
            if let Some(path) = input {
                report.param("input", path.display().to_string());
                let b = match parse_any(&read(&path)?)? {
                    Parsed::Structure(b) => b,
                    _ => return Err(Fail::Usage("typecount needs a STRUCTURE input".into())),
                };
                if b.sig() != &t {
                    return Err(Fail::Lib(Error::SignatureMismatch(format!("input has `{}`, expected `{t}`", b.sig()))));
                }
                let r = eval_type_realization(&b, c, k, &Budget::from_env())?;
                report.metric("realized_types", r.realized).metric("all_realized", r.all_realized);
                if let Some(m) = r.missing {
                    report.metric("missing", m.display(&t));
                    report.outcome = "violated".into();
                    return Ok(1);
                }
            }
            Ok(0)
        }
    }
}

fn generate(g: Generate, report: &mut RunReport, sink: &mut Sink<'_>) -> Res<i32> {
    let (parsed, out, verify_k) = match g {
        Generate::RadoGraph { n, k, backend, cert, verify_k, seed, out } => {
            report.param("n", n).param("k", k).param("backend", format!("{backend:?}").to_lowercase());
            report.seed = Some(seed.seed);
            let r = rado_graph(n, k, &mut Prng::new(seed.seed, 0), &rado_opts(backend))?;
            report.metric("edges", r.graph.edge_count()).metric("pattern_range", r.certificate.range.len());
            write_cert(cert.as_deref(), &r.certificate, report)?;
            (Parsed::Graph(r.graph), out, verify_k)
        }
        Generate::RadoStructure { sig: s, n, k, backend, cert, verify_k, seed, out } => {
            let s = sig(&s)?;
            report.param("sig", s.to_string()).param("n", n).param("k", k);
            report.param("backend", format!("{backend:?}").to_lowercase());
            report.seed = Some(seed.seed);
            let r = rado_structure(&s, n, k, &mut Prng::new(seed.seed, 0), &rado_opts(backend))?;
            report.metric("tuples", r.structure.total_tuples()).metric("pattern_range", r.certificate.range.len());
            write_cert(cert.as_deref(), &r.certificate, report)?;
            (Parsed::Structure(r.structure), out, verify_k)
        }
        Generate::RandomGraph { n, verify_k, seed, out } => {
            report.param("n", n);
            report.seed = Some(seed.seed);
            let g = sample_random_graph(n, &mut Prng::new(seed.seed, 0))?;
            report.metric("edges", g.edge_count());
            (Parsed::Graph(g), out, verify_k)
        }
        Generate::RandomStructure { sig: s, n, verify_k, seed, out } => {
            let s = sig(&s)?;
            report.param("sig", s.to_string()).param("n", n);
            report.seed = Some(seed.seed);
            let a: RelStructure = sample_random_structure(&s, n, &mut Prng::new(seed.seed, 0))?;
            report.metric("tuples", a.total_tuples());
            (Parsed::Structure(a), out, verify_k)
        }
        Generate::RandomHypergraph { n, t, verify_k, seed, out } => {
            report.param("n", n).param("t", t);
            report.seed = Some(seed.seed);
            let h = sample_random_hypergraph(n, t, &mut Prng::new(seed.seed, 0))?;
            report.metric("edges", h.edge_count());
            (Parsed::Hypergraph(h), out, verify_k)
        }
    };
    let code = match verify_k {
        Some(k) => record_ea(&parsed, k, report)?,
        None => 0,
    };
    sink.emit(&out, &parsed.to_text(), report)?;
    Ok(code)
}

fn write_cert(path: Option<&Path>, cert: &RadoCertificate, report: &mut RunReport) -> Res<()> {
    if let Some(p) = path {
        std::fs::write(p, cert.to_text()).map_err(|e| Fail::Io(format!("{}: {e}", p.display())))?;
        report.metric("certificate", p.display().to_string());
    }
    Ok(())
}
