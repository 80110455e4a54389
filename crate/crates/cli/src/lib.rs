//! Command-line front end: graph generation, labelling verification,
//! nice-walk counting, labelling construction, the bound calculus, badness
//! certificates, and the gamma table, all with reproducible seeds and
//! structured reports.

pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use goodlabel::bounds::{
    ab_sequences, certify_badness, epsilon, epsilon_capped, find_q_prime, find_q_prime_capped,
    g_value, girth_badness_params, girth_badness_params_capped, lll_min_k,
    recursion_identity_residual, walk_count_lower_bound, BadnessCertificate, BoundParams,
    PrimePowerSearch,
};
use goodlabel::format::{parse_graph, parse_labelling, write_graph, write_labelling};
use goodlabel::generate::{generate, Family};
use goodlabel::graph::{degree_stats, Graph};
use goodlabel::label::{
    exhaustive_decide_good, gamma, hypercube_labelling, mt_label, random_labelling,
    ExhaustiveStatus, DEFAULT_GAMMA_CAP,
};
use goodlabel::labelling::Labelling;
use goodlabel::rational::{parse_rational, ratio_string};
use goodlabel::walks::{
    count_nice_walks, enumerate_nondecreasing_paths, find_duplicate_nice_walks, is_good, GoodStatus,
};

use report::{InputDigest, Report};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "goodlabel",
    version,
    about = "Good edge-labellings: verify, count walks, certify badness, construct"
)]
struct Cli {
    /// Report format on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap the number of worker threads (output is identical regardless)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Hypercube,
    RandomRegular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Random,
    Mt,
    Exhaustive,
    Hypercube,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundsOp {
    Ab,
    G,
    Lemma1,
    Residual,
    Q,
    Epsilon,
    Lll,
    Corollary,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and emit it in edge-list format
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Vertex count (path, cycle, complete, random-regular)
        #[arg(long)]
        n: Option<usize>,
        /// Left side size (complete-bipartite)
        #[arg(long)]
        a: Option<usize>,
        /// Right side size (complete-bipartite)
        #[arg(long)]
        b: Option<usize>,
        /// Dimension (hypercube)
        #[arg(long)]
        dim: Option<u32>,
        /// Degree (random-regular)
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the edge-list document here instead of embedding it
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a labelling of a graph is good
    Verify {
        graph: PathBuf,
        labelling: PathBuf,
        /// Bound on the total number of paths explored
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
    },
    /// Count directed nice k-walks exactly
    Count {
        graph: PathBuf,
        labelling: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Construct a labelling (and report whether it is good)
    Label {
        /// Input graph (not used by --method hypercube)
        graph: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Path length for the resampler
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_rounds: u64,
        /// Dimension (hypercube method)
        #[arg(long)]
        dim: Option<u32>,
        /// Orderings budget (exhaustive method)
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Path-exploration cap for the goodness check
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        /// Run the resampler even when the girth is below 2k
        #[arg(long)]
        force: bool,
        /// Write the labelling document here instead of embedding it
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the graph (hypercube method)
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Evaluate the bound calculus in exact rational arithmetic
    Bounds {
        #[arg(long, value_enum)]
        op: BoundsOp,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = 1)]
        c: u32,
        /// Use q = 2^(-q_prime) directly (ab, g, residual)
        #[arg(long)]
        q_prime: Option<u32>,
        /// n as integer or rational (g, residual, lemma1)
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        /// m as integer or rational (g, residual, lemma1)
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        /// Maximum degree as integer or rational (g, residual, lemma1, lll)
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        /// Comma-separated a values, outermost level first (lemma1)
        #[arg(long)]
        schedule: Option<String>,
        /// Girth (corollary)
        #[arg(long)]
        g: Option<u32>,
        /// Override the q' search cap (q, epsilon, corollary); the default
        /// is 64 t^2
        #[arg(long)]
        q_prime_cap: Option<u32>,
    },
    /// Badness certificate for dense near-regular parameters
    Certify {
        /// Graph file; alternatively pass --n, --dbar and --delta directly
        graph: Option<PathBuf>,
        #[arg(long)]
        n: Option<u64>,
        /// Average degree as integer or rational
        #[arg(long)]
        dbar: Option<String>,
        /// Maximum degree
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 1)]
        c: u32,
    },
    /// Maximum number of edges of a good graph on n vertices, with witness
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_GAMMA_CAP)]
        cap: usize,
    },
    /// Search for two nice k-walks with equal ordered endpoints
    Dup {
        graph: PathBuf,
        labelling: PathBuf,
        #[arg(long)]
        k: u32,
        /// Enumeration budget (walk extension steps)
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Enumerate all nondecreasing simple paths out of one source vertex
    Paths {
        graph: PathBuf,
        labelling: PathBuf,
        #[arg(long)]
        source: usize,
        /// Bound on the number of paths explored
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Core(goodlabel::Error),
    Io {
        path: String,
        source: std::io::Error,
    },
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<goodlabel::Error> for CliError {
    fn from(e: goodlabel::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(goodlabel::Error::BudgetExhausted { .. }) => EXIT_INCONCLUSIVE,
            _ => EXIT_ERROR,
        }
    }
}

struct Outcome {
    payload: Value,
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
    exit: u8,
}

/// Parse and run; returns the process exit code. Reports go to `stdout`,
/// diagnostics (including wall time) to `stderr`.
pub fn run(args: &[String], stdout: &mut impl Write, stderr: &mut impl Write) -> u8 {
    let start = Instant::now();
    let full_args = std::iter::once("goodlabel".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(full_args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let target: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(target, "{err}");
            return code;
        }
    };

    let result = match cli.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build();
            match pool {
                Ok(pool) => pool.install(|| execute(&cli.command)),
                Err(e) => Err(CliError::Usage(format!("cannot build thread pool: {e}"))),
            }
        }
        None => execute(&cli.command),
    };

    let code = match result {
        Ok(outcome) => {
            let report = Report {
                command: args.to_vec(),
                inputs: outcome.inputs,
                seed: outcome.seed,
                payload: outcome.payload,
            };
            let rendered = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let _ = stdout.write_all(rendered.as_bytes());
            outcome.exit
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    };
    let _ = writeln!(stderr, "# wall_time_ms: {}", start.elapsed().as_millis());
    code
}

fn read_file(path: &Path) -> Result<(String, InputDigest), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let digest = InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    };
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Usage(format!("{} is not valid UTF-8", path.display())))?;
    Ok((text, digest))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn need<T: Clone>(value: &Option<T>, flag: &str, context: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::Usage(format!("{context} requires {flag}")))
}

fn load_graph(path: &Path) -> Result<(Graph, InputDigest), CliError> {
    let (text, digest) = read_file(path)?;
    Ok((parse_graph(&text)?, digest))
}

fn load_labelled(
    graph: &Path,
    labelling: &Path,
) -> Result<(Graph, Labelling, Vec<InputDigest>), CliError> {
    let (g, d1) = load_graph(graph)?;
    let (text, d2) = read_file(labelling)?;
    let phi = parse_labelling(&text, &g)?;
    Ok((g, phi, vec![d1, d2]))
}

fn status_str(status: GoodStatus) -> &'static str {
    match status {
        GoodStatus::Good => "good",
        GoodStatus::Bad => "bad",
        GoodStatus::Inconclusive => "inconclusive",
    }
}

fn rational_arg(
    value: &Option<String>,
    flag: &str,
    context: &str,
) -> Result<BigRational, CliError> {
    let raw = need(value, flag, context)?;
    Ok(parse_rational(&raw)?)
}

fn integer_arg<T: std::str::FromStr>(
    value: &Option<String>,
    flag: &str,
    context: &str,
) -> Result<T, CliError> {
    let raw = need(value, flag, context)?;
    raw.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{context}: {flag} must be an integer, got {raw:?}")))
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Gen {
            family,
            n,
            a,
            b,
            dim,
            degree,
            seed,
            output,
        } => {
            let (family, randomized) = match family {
                FamilyArg::Path => (
                    Family::Path {
                        n: need(n, "--n", "gen --family path")?,
                    },
                    false,
                ),
                FamilyArg::Cycle => (
                    Family::Cycle {
                        n: need(n, "--n", "gen --family cycle")?,
                    },
                    false,
                ),
                FamilyArg::Complete => (
                    Family::Complete {
                        n: need(n, "--n", "gen --family complete")?,
                    },
                    false,
                ),
                FamilyArg::CompleteBipartite => (
                    Family::CompleteBipartite {
                        a: need(a, "--a", "gen --family complete-bipartite")?,
                        b: need(b, "--b", "gen --family complete-bipartite")?,
                    },
                    false,
                ),
                FamilyArg::Hypercube => (
                    Family::Hypercube {
                        dim: need(dim, "--dim", "gen --family hypercube")?,
                    },
                    false,
                ),
                FamilyArg::RandomRegular => (
                    Family::RandomRegular {
                        n: need(n, "--n", "gen --family random-regular")?,
                        degree: need(degree, "--degree", "gen --family random-regular")?,
                    },
                    true,
                ),
            };
            let g = generate(&family, *seed)?;
            let document = write_graph(&g);
            let family_name = match family {
                Family::Path { .. } => "path",
                Family::Cycle { .. } => "cycle",
                Family::Complete { .. } => "complete",
                Family::CompleteBipartite { .. } => "complete-bipartite",
                Family::Hypercube { .. } => "hypercube",
                Family::RandomRegular { .. } => "random-regular",
            };
            let mut payload = json!({
                "family": family_name,
                "n": g.n(),
                "m": g.m(),
            });
            attach_document(&mut payload, "document", document, output.as_deref())?;
            Ok(Outcome {
                payload,
                inputs: vec![],
                seed: randomized.then_some(*seed),
                exit: EXIT_OK,
            })
        }

        Command::Verify {
            graph,
            labelling,
            cap,
        } => {
            let (g, phi, inputs) = load_labelled(graph, labelling)?;
            let verdict = is_good(&g, &phi, *cap)?;
            let witness = verdict.witness.as_ref().map(|w| {
                json!({
                    "pair": [w.endpoints.0, w.endpoints.1],
                    "first": w.first,
                    "second": w.second,
                })
            });
            let exit = if verdict.status == GoodStatus::Inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok(Outcome {
                payload: json!({
                    "status": status_str(verdict.status),
                    "witness": witness,
                    "paths_explored": verdict.paths_explored,
                    "cap_hit": verdict.cap_hit,
                }),
                inputs,
                seed: None,
                exit,
            })
        }

        Command::Count {
            graph,
            labelling,
            k,
        } => {
            let (g, phi, inputs) = load_labelled(graph, labelling)?;
            let count = count_nice_walks(&g, &phi, *k)?;
            Ok(Outcome {
                payload: json!({ "k": k, "count": count.to_string() }),
                inputs,
                seed: None,
                exit: EXIT_OK,
            })
        }

        Command::Label {
            graph,
            method,
            k,
            seed,
            max_rounds,
            dim,
            budget,
            cap,
            force,
            output,
            graph_out,
        } => run_label(
            graph.as_deref(),
            *method,
            *k,
            *seed,
            *max_rounds,
            *dim,
            *budget,
            *cap,
            *force,
            output.as_deref(),
            graph_out.as_deref(),
        ),

        Command::Bounds {
            op,
            t,
            c,
            q_prime,
            n,
            m,
            delta,
            k,
            schedule,
            g,
            q_prime_cap,
        } => run_bounds(
            *op,
            t,
            *c,
            q_prime,
            n,
            m,
            delta,
            k,
            schedule,
            g,
            q_prime_cap,
        ),

        Command::Certify {
            graph,
            n,
            dbar,
            delta,
            t,
            c,
        } => {
            let (n_val, dbar_val, delta_val, inputs) = match graph {
                Some(path) => {
                    let (g, digest) = load_graph(path)?;
                    let stats = degree_stats(&g)?;
                    (
                        g.n() as u64,
                        stats.avg_degree,
                        stats.max_degree as u64,
                        vec![digest],
                    )
                }
                None => (
                    need(n, "--n", "certify without a graph file")?,
                    rational_arg(dbar, "--dbar", "certify without a graph file")?,
                    need(delta, "--delta", "certify without a graph file")?,
                    vec![],
                ),
            };
            let cert = certify_badness(n_val, &dbar_val, delta_val, *t, *c)?;
            Ok(Outcome {
                payload: certificate_payload(&cert),
                inputs,
                seed: None,
                exit: EXIT_OK,
            })
        }

        Command::Gamma { n, cap } => {
            let entry = gamma(*n, *cap)?;
            Ok(Outcome {
                payload: json!({
                    "n": entry.n,
                    "gamma": entry.gamma,
                    "witness_graph": write_graph(&entry.witness_graph),
                    "witness_labelling": write_labelling(&entry.witness_graph, &entry.witness_labelling),
                }),
                inputs: vec![],
                seed: None,
                exit: EXIT_OK,
            })
        }

        Command::Paths {
            graph,
            labelling,
            source,
            cap,
        } => {
            let (g, phi, inputs) = load_labelled(graph, labelling)?;
            let result = enumerate_nondecreasing_paths(&g, &phi, *source, *cap)?;
            let by_target: Vec<Value> = result
                .paths
                .iter()
                .map(|(target, paths)| {
                    json!({
                        "target": target,
                        "paths": paths,
                    })
                })
                .collect();
            Ok(Outcome {
                payload: json!({
                    "source": source,
                    "targets": by_target,
                    "paths_explored": result.paths_explored,
                    "truncated": result.truncated,
                }),
                inputs,
                seed: None,
                exit: if result.truncated {
                    EXIT_INCONCLUSIVE
                } else {
                    EXIT_OK
                },
            })
        }

        Command::Dup {
            graph,
            labelling,
            k,
            budget,
        } => {
            let (g, phi, inputs) = load_labelled(graph, labelling)?;
            let found = find_duplicate_nice_walks(&g, &phi, *k, *budget)?;
            let payload = match found {
                Some(dup) => json!({
                    "k": k,
                    "found": true,
                    "endpoints": [dup.endpoints.0, dup.endpoints.1],
                    "first": dup.first.vertices,
                    "second": dup.second.vertices,
                }),
                None => json!({ "k": k, "found": false }),
            };
            Ok(Outcome {
                payload,
                inputs,
                seed: None,
                exit: EXIT_OK,
            })
        }
    }
}

fn attach_document(
    payload: &mut Value,
    key: &str,
    document: String,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let obj = payload.as_object_mut().expect("payload is an object");
    match output {
        Some(path) => {
            write_file(path, &document)?;
            obj.insert("output".into(), json!(path.display().to_string()));
        }
        None => {
            obj.insert(key.into(), json!(document));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_label(
    graph: Option<&Path>,
    method: MethodArg,
    k: Option<u32>,
    seed: u64,
    max_rounds: u64,
    dim: Option<u32>,
    budget: u64,
    cap: u64,
    force: bool,
    output: Option<&Path>,
    graph_out: Option<&Path>,
) -> Result<Outcome, CliError> {
    match method {
        MethodArg::Random => {
            let path = graph.ok_or_else(|| {
                CliError::Usage("label --method random requires a graph file".into())
            })?;
            let (g, digest) = load_graph(path)?;
            let phi = random_labelling(&g, seed);
            let verdict = is_good(&g, &phi, cap)?;
            let mut payload = json!({
                "method": "random",
                "verdict": status_str(verdict.status),
                "cap_hit": verdict.cap_hit,
            });
            attach_document(&mut payload, "labelling", write_labelling(&g, &phi), output)?;
            Ok(Outcome {
                payload,
                inputs: vec![digest],
                seed: Some(seed),
                exit: EXIT_OK,
            })
        }
        MethodArg::Hypercube => {
            let dim = dim
                .ok_or_else(|| CliError::Usage("label --method hypercube requires --dim".into()))?;
            let (g, phi) = hypercube_labelling(dim);
            let verdict = is_good(&g, &phi, cap)?;
            let mut payload = json!({
                "method": "hypercube",
                "dim": dim,
                "verdict": status_str(verdict.status),
                "cap_hit": verdict.cap_hit,
            });
            if let Some(path) = graph_out {
                write_file(path, &write_graph(&g))?;
            } else {
                payload
                    .as_object_mut()
                    .expect("object")
                    .insert("graph".into(), json!(write_graph(&g)));
            }
            attach_document(&mut payload, "labelling", write_labelling(&g, &phi), output)?;
            Ok(Outcome {
                payload,
                inputs: vec![],
                seed: None,
                exit: EXIT_OK,
            })
        }
        MethodArg::Mt => {
            let path = graph
                .ok_or_else(|| CliError::Usage("label --method mt requires a graph file".into()))?;
            let k = k.ok_or_else(|| CliError::Usage("label --method mt requires --k".into()))?;
            let (g, digest) = load_graph(path)?;
            let (phi, stats) = mt_label(&g, k, seed, max_rounds, force)?;
            let verdict = is_good(&g, &phi, cap)?;
            let mut payload = json!({
                "method": "mt",
                "k": k,
                "rounds": stats.rounds,
                "terminated": stats.terminated,
                "remaining_violations": stats.remaining_violations,
                "verdict": status_str(verdict.status),
                "cap_hit": verdict.cap_hit,
            });
            attach_document(&mut payload, "labelling", write_labelling(&g, &phi), output)?;
            Ok(Outcome {
                payload,
                inputs: vec![digest],
                seed: Some(seed),
                exit: if stats.terminated {
                    EXIT_OK
                } else {
                    EXIT_INCONCLUSIVE
                },
            })
        }
        MethodArg::Exhaustive => {
            let path = graph.ok_or_else(|| {
                CliError::Usage("label --method exhaustive requires a graph file".into())
            })?;
            let (g, digest) = load_graph(path)?;
            let outcome = exhaustive_decide_good(&g, budget);
            let (status, phi, exit) = match outcome.status {
                ExhaustiveStatus::Good(phi) => ("good", Some(phi), EXIT_OK),
                ExhaustiveStatus::Bad => ("bad", None, EXIT_OK),
                ExhaustiveStatus::BudgetExceeded => ("budget_exceeded", None, EXIT_INCONCLUSIVE),
            };
            let mut payload = json!({
                "method": "exhaustive",
                "status": status,
                "orderings_tried": outcome.orderings_tried,
            });
            if let Some(phi) = phi {
                attach_document(&mut payload, "labelling", write_labelling(&g, &phi), output)?;
            }
            Ok(Outcome {
                payload,
                inputs: vec![digest],
                seed: None,
                exit,
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_bounds(
    op: BoundsOp,
    t: &Option<u32>,
    c: u32,
    q_prime: &Option<u32>,
    n: &Option<String>,
    m: &Option<String>,
    delta: &Option<String>,
    k: &Option<u32>,
    schedule: &Option<String>,
    g: &Option<u32>,
    q_prime_cap: &Option<u32>,
) -> Result<Outcome, CliError> {
    let payload = match op {
        BoundsOp::Ab => {
            let t_val = need(t, "--t", "bounds --op ab")?;
            let qp = need(q_prime, "--q-prime", "bounds --op ab")?;
            let params = BoundParams::new(t_val, c, qp)?;
            let table = ab_sequences(t_val, &params);
            let rows: Vec<Value> = table
                .entries()
                .map(|(k, a, b)| json!({ "k": k, "a": ratio_string(a), "b": ratio_string(b) }))
                .collect();
            json!({
                "op": "ab",
                "t": t_val,
                "c": c,
                "q_prime": qp,
                "q": ratio_string(&params.q),
                "p": ratio_string(&params.p),
                "table": rows,
            })
        }
        BoundsOp::G => {
            let k_val = need(k, "--k", "bounds --op g")?;
            let qp = need(q_prime, "--q-prime", "bounds --op g")?;
            let params = BoundParams::new(k_val.max(1), c, qp)?;
            let n_val = rational_arg(n, "--n", "bounds --op g")?;
            let m_val = rational_arg(m, "--m", "bounds --op g")?;
            let delta_val = rational_arg(delta, "--delta", "bounds --op g")?;
            let value = g_value(&n_val, &m_val, &delta_val, k_val, &params);
            json!({
                "op": "g",
                "k": k_val,
                "q_prime": qp,
                "value": ratio_string(&value),
            })
        }
        BoundsOp::Lemma1 => {
            let k_val = need(k, "--k", "bounds --op lemma1")?;
            let n_val: u64 = integer_arg(n, "--n", "bounds --op lemma1")?;
            let m_val: u64 = integer_arg(m, "--m", "bounds --op lemma1")?;
            let delta_val: u64 = integer_arg(delta, "--delta", "bounds --op lemma1")?;
            let sched: Vec<u64> = match schedule {
                None if k_val == 1 => vec![],
                Some(raw) => raw
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| CliError::Usage(format!("bad schedule entry {s:?}")))
                    })
                    .collect::<Result<_, _>>()?,
                None => {
                    return Err(CliError::Usage(
                        "bounds --op lemma1 requires --schedule for k > 1".into(),
                    ))
                }
            };
            let value = walk_count_lower_bound(n_val, m_val, delta_val, &sched, k_val)?;
            json!({
                "op": "lemma1",
                "k": k_val,
                "schedule": sched,
                "value": ratio_string(&value),
            })
        }
        BoundsOp::Residual => {
            let k_val = need(k, "--k", "bounds --op residual")?;
            let qp = need(q_prime, "--q-prime", "bounds --op residual")?;
            let params = BoundParams::new(k_val.max(1), c, qp)?;
            let n_val = rational_arg(n, "--n", "bounds --op residual")?;
            let m_val = rational_arg(m, "--m", "bounds --op residual")?;
            let delta_val = rational_arg(delta, "--delta", "bounds --op residual")?;
            let value = recursion_identity_residual(&n_val, &m_val, &delta_val, k_val, &params)?;
            json!({
                "op": "residual",
                "k": k_val,
                "q_prime": qp,
                "value": ratio_string(&value),
            })
        }
        BoundsOp::Q => {
            let t_val = need(t, "--t", "bounds --op q")?;
            let params = match q_prime_cap {
                Some(cap) => find_q_prime_capped(t_val, c, *cap)?,
                None => find_q_prime(t_val, c)?,
            };
            json!({
                "op": "q",
                "t": t_val,
                "c": c,
                "q_prime": params.q_prime,
                "q": ratio_string(&params.q),
                "p": ratio_string(&params.p),
            })
        }
        BoundsOp::Epsilon => {
            let t_val = need(t, "--t", "bounds --op epsilon")?;
            let result = match q_prime_cap {
                Some(cap) => epsilon_capped(t_val, c, *cap)?,
                None => epsilon(t_val, c)?,
            };
            json!({
                "op": "epsilon",
                "t": t_val,
                "c": c,
                "q_prime": result.params.q_prime,
                "alpha": ratio_string(&result.alpha),
                "epsilon": ratio_string(&result.epsilon),
            })
        }
        BoundsOp::Lll => {
            let delta_val: u32 = integer_arg(delta, "--delta", "bounds --op lll")?;
            let threshold = lll_min_k(delta_val);
            json!({
                "op": "lll",
                "delta": delta_val,
                "k": threshold.k,
                "girth_threshold": threshold.girth_threshold,
            })
        }
        BoundsOp::Corollary => {
            let girth = need(g, "--g", "bounds --op corollary")?;
            let params = match q_prime_cap {
                Some(cap) => girth_badness_params_capped(girth, *cap)?,
                None => girth_badness_params(girth)?,
            };
            let d_min = params.d_min.map(|d| match d {
                PrimePowerSearch::Found(v) => json!(v),
                PrimePowerSearch::AboveSearchCap => json!("above search cap"),
            });
            json!({
                "op": "corollary",
                "girth": girth,
                "special_case": params.special_case,
                "t": params.t,
                "q_prime_cap_hit": params.q_prime_cap_hit,
                "epsilon": params.epsilon.as_ref().map(|e| ratio_string(&e.epsilon)),
                "threshold": params.threshold.as_ref().map(ratio_string),
                "d_min": d_min,
                "witness_inequality_holds": params.witness_inequality_holds,
            })
        }
    };
    Ok(Outcome {
        payload,
        inputs: vec![],
        seed: None,
        exit: EXIT_OK,
    })
}

fn certificate_payload(cert: &BadnessCertificate) -> Value {
    let trace = cert.trace.as_ref().map(|t| {
        json!({
            "r_prime": t.r_prime,
            "r": ratio_string(&t.r),
            "r_exceeds_pow": t.r_exceeds_pow,
            "integrality": t
                .integrality
                .iter()
                .map(|(v, ok)| json!({ "value": ratio_string(v), "integer": ok }))
                .collect::<Vec<_>>(),
            "g_value": ratio_string(&t.g_value),
            "n_squared": ratio_string(&t.n_squared),
            "g_exceeds_n_squared": t.g_exceeds_n_squared,
        })
    });
    json!({
        "n": cert.n,
        "dbar": ratio_string(&cert.dbar),
        "delta": cert.delta,
        "t": cert.epsilon.params.t,
        "c": cert.epsilon.params.c,
        "q_prime": cert.epsilon.params.q_prime,
        "alpha": ratio_string(&cert.epsilon.alpha),
        "epsilon": ratio_string(&cert.epsilon.epsilon),
        "degree_ok": cert.degree_ok,
        "size_ok": cert.size_ok,
        "applies": cert.applies,
        "trace": trace,
    })
}
