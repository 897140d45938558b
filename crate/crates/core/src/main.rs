//! Thin command-line front end. All computation lives in the library;
//! this file only parses arguments, shapes records, and sets exit codes:
//! 0 all checks pass, 1 a verified quantity violates its bound, 2 usage
//! or input errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use poset_entropy::bounds::{check_bounds, classify_special_case, edge_removal_experiment};
use poset_entropy::entropy::km_decompose;
use poset_entropy::error::Result;
use poset_entropy::exact::{rat_to_f64, ExactReal};
use poset_entropy::generate::{generate, CorpusSpec};
use poset_entropy::intervals::{
    breakpoints_and_epochs, build_q, canonical_intervals, phantom_edges, PhantomOrientation,
};
use poset_entropy::io::{read_poset, serialize, write_poset};
use poset_entropy::linext::{count_bruteforce, count_downsets, count_width2, BRUTEFORCE_LIMIT};
use poset_entropy::poset::Poset;
use poset_entropy::render::render_packing;
use poset_entropy::sortsim::{greedy_sort, random_extension};
use poset_entropy::Error;

const TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "poset-entropy", version, about = "Exact entropy, interval structure, and \
    linear-extension bounds for width-2 posets")]
struct Cli {
    /// Output format; sweep defaults to tsv, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Bits of working precision for printed enclosures.
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,
    /// Seed for random corpora and random hidden orders.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (or directory for `generate`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact incomparability-graph entropy via the chain-pair decomposition.
    Entropy {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Count linear extensions by independent methods and report agreement.
    Linext {
        #[arg(long)]
        poset: PathBuf,
    },
    /// The canonical interval representation, one row per element.
    Intervals {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Epoch structure of the canonical representation.
    Epochs {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Phantom edges and the interval extension built from them.
    Phantoms {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Check every entropy/extension-count bound; exit 1 on violation.
    VerifyBound {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Bound checks over a whole corpus, one row per poset.
    Sweep {
        #[arg(long)]
        corpus: String,
    },
    /// Delete one short-overlap incomparability; verify both deltas.
    EdgeRemoval {
        #[arg(long)]
        poset: PathBuf,
        /// Epoch whose shortest-overlap pair gets removed.
        #[arg(long, default_value_t = 0)]
        epoch: usize,
    },
    /// Sort a hidden linear extension with entropy-halving comparisons.
    SortSim {
        #[arg(long)]
        poset: PathBuf,
        /// Comma-separated ids, least first; random extension when absent.
        #[arg(long)]
        hidden: Option<String>,
    },
    /// Write the posets of a corpus to files.
    Generate {
        #[arg(long)]
        corpus: String,
    },
    /// Render the interval packing as SVG.
    Render {
        #[arg(long)]
        poset: PathBuf,
        /// Render the phantom-edge extension instead of the input.
        #[arg(long, default_value_t = false)]
        extension: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Tsv,
    JsonLines,
}

type Record = Vec<(&'static str, Value)>;

fn emit(out: &mut dyn Write, format: OutputFormat, records: &[Record]) -> io::Result<()> {
    match format {
        OutputFormat::Text => {
            for (i, rec) in records.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                for (k, v) in rec {
                    match v {
                        Value::String(s) => writeln!(out, "{k} = {s}")?,
                        other => writeln!(out, "{k} = {other}")?,
                    }
                }
            }
        }
        OutputFormat::Tsv => {
            let mut header: Vec<&str> = Vec::new();
            for rec in records {
                let keys: Vec<&str> = rec.iter().map(|(k, _)| *k).collect();
                if keys != header {
                    writeln!(out, "{}", keys.join("\t"))?;
                    header = keys;
                }
                let row: Vec<String> = rec
                    .iter()
                    .map(|(_, v)| match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                writeln!(out, "{}", row.join("\t"))?;
            }
        }
        OutputFormat::JsonLines => {
            for rec in records {
                let mut map = serde_json::Map::new();
                for (k, v) in rec {
                    map.insert((*k).to_string(), v.clone());
                }
                writeln!(out, "{}", Value::Object(map))?;
            }
        }
    }
    Ok(())
}

fn sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

/// Midpoint of the certified enclosure at the requested precision.
fn dec(x: &ExactReal, prec: u32) -> f64 {
    let (lo, hi) = x.interval(prec);
    (rat_to_f64(&lo) + rat_to_f64(&hi)) / 2.0
}

fn join_ids(p: &Poset, idx: &[usize]) -> String {
    idx.iter().map(|&v| p.ids()[v].as_str()).collect::<Vec<_>>().join(",")
}

fn relation_count(p: &Poset) -> usize {
    (0..p.n()).map(|u| (0..p.n()).filter(|&v| p.lt(u, v)).count()).sum()
}

fn run(cli: &Cli) -> Result<bool> {
    let prec = cli.precision;
    let format = cli.format.unwrap_or(match cli.cmd {
        Cmd::Sweep { .. } => OutputFormat::Tsv,
        _ => OutputFormat::Text,
    });
    match &cli.cmd {
        Cmd::Entropy { poset } => {
            let p = read_poset(poset)?;
            let chains = p.chain_cover_2()?;
            let km = km_decompose(&p, &chains)?;
            let pairs = km
                .pairs
                .iter()
                .map(|pr| {
                    let (a, b) = pr.ratio();
                    format!("[{}|{}] {a}:{b}", join_ids(&p, &pr.a), join_ids(&p, &pr.b))
                })
                .collect::<Vec<_>>()
                .join("; ");
            let x_star = (0..p.n())
                .map(|v| format!("{}={}", p.ids()[v], km.x_star[v]))
                .collect::<Vec<_>>()
                .join("; ");
            let n = p.n();
            let rec: Record = vec![
                ("n", json!(n)),
                ("chain_a", json!(join_ids(&p, &chains.a))),
                ("chain_b", json!(join_ids(&p, &chains.b))),
                ("pairs", json!(pairs)),
                ("x_star", json!(x_star)),
                ("entropy", json!(km.entropy.to_string())),
                ("entropy_bits", json!(dec(&km.entropy, prec))),
                ("n_entropy_bits", json!(n as f64 * dec(&km.entropy, prec))),
            ];
            emit(&mut *sink(&cli.out)?, format, &[rec])?;
            Ok(true)
        }
        Cmd::Linext { poset } => {
            let p = read_poset(poset)?;
            let chains = p.chain_cover_2()?;
            let e = count_width2(&p, &chains)?;
            let mut agree = e == count_downsets(&p)?;
            if p.n() <= BRUTEFORCE_LIMIT {
                agree &= e == count_bruteforce(&p)?;
            }
            let rec: Record = vec![
                ("n", json!(p.n())),
                ("extensions", json!(e.to_string())),
                ("log2_extensions", json!(dec(&ExactReal::log2_uint(&e), prec))),
                ("counters_agree", json!(agree)),
            ];
            emit(&mut *sink(&cli.out)?, format, &[rec])?;
            Ok(agree)
        }
        Cmd::Intervals { poset } => {
            let p = read_poset(poset)?;
            let chains = p.chain_cover_2()?;
            let km = km_decompose(&p, &chains)?;
            let rep = canonical_intervals(&p, &km);
            let records: Vec<Record> = (0..rep.n())
                .map(|v| {
                    let (lo, hi) = &rep.intervals[v];
                    vec![
                        ("id", json!(rep.ids[v])),
                        ("side", json!(if rep.side_a >> v & 1 == 1 { "A" } else { "B" })),
                        ("lo", json!(lo.to_string())),
                        ("hi", json!(hi.to_string())),
                        ("length", json!(rep.length(v).to_string())),
                    ]
                })
                .collect();
            emit(&mut *sink(&cli.out)?, format, &records)?;
            Ok(true)
        }
        Cmd::Epochs { poset } => {
            let p = read_poset(poset)?;
            let chains = p.chain_cover_2()?;
            let km = km_decompose(&p, &chains)?;
            let rep = canonical_intervals(&p, &km);
            let es = breakpoints_and_epochs(&rep);
            let records: Vec<Record> = es
                .epochs
                .iter()
                .enumerate()
                .map(|(i, ep)| {
                    let (psi, omega) = ep.sizes();
                    vec![
                        ("epoch", json!(i)),
                        ("start", json!(es.breakpoints[i].to_string())),
                        ("end", json!(es.breakpoints[i + 1].to_string())),
                        ("psi", json!(psi)),
                        ("omega", json!(omega)),
                        ("psi_ids", json!(join_ids(&p, &ep.psi))),
                        ("omega_ids", json!(join_ids(&p, &ep.omega))),
                    ]
                })
                .collect();
            emit(&mut *sink(&cli.out)?, format, &records)?;
            Ok(true)
        }
        Cmd::Phantoms { poset } => {
            let p = read_poset(poset)?;
            let chains = p.chain_cover_2()?;
            let km = km_decompose(&p, &chains)?;
            let rep = canonical_intervals(&p, &km);
            let es = breakpoints_and_epochs(&rep);
            let phantoms = phantom_edges(&p, &es)?;
            let (q, _) = build_q(&p, &rep, &phantoms);
            let mut records: Vec<Record> = phantoms
                .edges
                .iter()
                .map(|e| {
                    let orient = match e.orientation {
                        PhantomOrientation::PsiToOmega => "psi->omega",
                        PhantomOrientation::OmegaToPsi => "omega->psi",
                    };
                    vec![
                        ("u", json!(p.ids()[e.u])),
                        ("v", json!(p.ids()[e.v])),
                        ("between_epochs", json!(format!("{}..{}", e.between.0, e.between.1))),
                        ("orientation", json!(orient)),
                    ]
                })
                .collect();
            records.push(vec![
                ("extension_relations_added", json!(relation_count(&q) - relation_count(&p))),
                ("extension_equals_input", json!(q == p)),
            ]);
            emit(&mut *sink(&cli.out)?, format, &records)?;
            Ok(true)
        }
        Cmd::VerifyBound { poset } => {
            let p = read_poset(poset)?;
            let r = check_bounds(&p)?;
            let pass = r.slack1_lower >= -TOL
                && r.slack1_upper >= -TOL
                && r.slack2 >= -TOL
                && r.slack3 >= -TOL;
            let rec: Record = vec![
                ("n", json!(r.n)),
                ("extensions", json!(r.e.to_string())),
                ("kappa2", json!(r.kappa2)),
                ("lhs", json!(dec(&r.lhs, prec))),
                ("log_e", json!(dec(&r.log_e, prec))),
                ("rhs2", json!(dec(&r.rhs2, prec))),
                ("rhs3", json!(dec(&r.rhs3, prec))),
                ("slack1_lower", json!(r.slack1_lower)),
                ("slack1_upper", json!(r.slack1_upper)),
                ("slack2", json!(r.slack2)),
                ("slack3", json!(r.slack3)),
                ("tight", json!(r.tight)),
                ("pass", json!(pass)),
            ];
            emit(&mut *sink(&cli.out)?, format, &[rec])?;
            Ok(pass)
        }
        Cmd::Sweep { corpus } => {
            let spec = CorpusSpec::parse(corpus, cli.seed)?;
            let posets = generate(&spec)?;
            let stem = spec.stem();
            let mut pass = true;
            let mut records = Vec::with_capacity(posets.len());
            for (i, p) in posets.iter().enumerate() {
                let id =
                    if posets.len() == 1 { stem.clone() } else { format!("{stem}-{i:04}") };
                let r = check_bounds(p)?;
                let case = classify_special_case(p)?.case.to_string();
                pass &= r.slack1_lower >= -TOL
                    && r.slack1_upper >= -TOL
                    && r.slack2 >= -TOL
                    && r.slack3 >= -TOL;
                records.push(vec![
                    ("id", json!(id)),
                    ("n", json!(r.n)),
                    ("lhs", json!(dec(&r.lhs, prec))),
                    ("log_e", json!(dec(&r.log_e, prec))),
                    ("kappa2", json!(r.kappa2)),
                    ("slack2", json!(r.slack2)),
                    ("slack3", json!(r.slack3)),
                    ("tight", json!(r.tight)),
                    ("case", json!(case)),
                ]);
            }
            emit(&mut *sink(&cli.out)?, format, &records)?;
            Ok(pass)
        }
        Cmd::EdgeRemoval { poset, epoch } => {
            let p = read_poset(poset)?;
            let exp = edge_removal_experiment(&p, *epoch)?;
            let classes = exp
                .classes
                .as_ref()
                .map(|c| {
                    format!(
                        "count={} max_size={} backward={} good_forward={}",
                        c.class_count, c.max_class_size, c.backward, c.good_forward
                    )
                })
                .unwrap_or_else(|| "not-enumerated".into());
            let rec: Record = vec![
                ("u", json!(p.ids()[exp.pair.u])),
                ("v", json!(p.ids()[exp.pair.v])),
                ("psi", json!(exp.pair.psi)),
                ("omega", json!(exp.pair.omega)),
                ("overlap", json!(exp.overlap.to_string())),
                ("delta_h", json!(dec(&exp.delta_h, prec))),
                ("bound_h", json!(dec(&exp.bound_h, prec))),
                ("delta_e", json!(dec(&exp.delta_e, prec))),
                ("bound_e", json!(dec(&exp.bound_e, prec))),
                ("class_bound", json!(exp.class_bound.to_string())),
                (
                    "part_sizes",
                    json!(format!("{}+{}", exp.parts.0.n(), exp.parts.1.n())),
                ),
                (
                    "part_epoch_elements",
                    json!(format!("{}+{}", exp.part_epoch_sizes.0, exp.part_epoch_sizes.1)),
                ),
                ("classes", json!(classes)),
            ];
            emit(&mut *sink(&cli.out)?, format, &[rec])?;
            Ok(true)
        }
        Cmd::SortSim { poset, hidden } => {
            let p = read_poset(poset)?;
            let order = match hidden {
                Some(text) => text
                    .split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        p.ids()
                            .iter()
                            .position(|s| s == tok)
                            .ok_or_else(|| Error::UnknownElement(tok.to_string()))
                    })
                    .collect::<Result<Vec<usize>>>()?,
                None => random_extension(&p, &mut ChaCha8Rng::seed_from_u64(cli.seed)),
            };
            let t = greedy_sort(&p, &order)?;
            let sorted = t
                .final_order
                .iter()
                .map(|&v| p.ids()[v].as_str())
                .collect::<Vec<_>>()
                .join(" < ");
            let queries = t
                .queries
                .iter()
                .map(|&(u, v, ans)| {
                    let (lo, hi) = if ans { (u, v) } else { (v, u) };
                    format!("{}<{}", p.ids()[lo], p.ids()[hi])
                })
                .collect::<Vec<_>>()
                .join("; ");
            let rec: Record = vec![
                ("n", json!(p.n())),
                ("extensions", json!(t.e_sequence[0].to_string())),
                ("queries", json!(t.query_count())),
                ("budget", json!(t.budget2)),
                ("refined_budget", json!(t.refined_budget)),
                ("within_budget", json!(t.within_budget())),
                ("within_refined_budget", json!(t.within_refined_budget())),
                ("answers", json!(queries)),
                ("sorted", json!(sorted)),
            ];
            let pass = t.within_budget();
            emit(&mut *sink(&cli.out)?, format, &[rec])?;
            Ok(pass)
        }
        Cmd::Generate { corpus } => {
            let spec = CorpusSpec::parse(corpus, cli.seed)?;
            let posets = generate(&spec)?;
            let stem = spec.stem();
            match (&cli.out, posets.len()) {
                (None, 1) => {
                    print!("{}", serialize(&posets[0]));
                    Ok(true)
                }
                (None, k) => Err(Error::Precondition(format!(
                    "corpus yields {k} posets; pass --out DIRECTORY"
                ))),
                (Some(dir), _) => {
                    fs::create_dir_all(dir)?;
                    let mut records = Vec::new();
                    for (i, p) in posets.iter().enumerate() {
                        let name = if posets.len() == 1 {
                            format!("{stem}.poset")
                        } else {
                            format!("{stem}-{i:04}.poset")
                        };
                        let path = dir.join(&name);
                        write_poset(&path, p)?;
                        records.push(vec![
                            ("file", json!(path.display().to_string())),
                            ("n", json!(p.n())),
                        ]);
                    }
                    emit(&mut io::stdout().lock(), format, &records)?;
                    Ok(true)
                }
            }
        }
        Cmd::Render { poset, extension } => {
            let p = read_poset(poset)?;
            let chains = p.chain_cover_2()?;
            let km = km_decompose(&p, &chains)?;
            let rep = canonical_intervals(&p, &km);
            let svg = if *extension {
                let es = breakpoints_and_epochs(&rep);
                let phantoms = phantom_edges(&p, &es)?;
                let (q, qrep) = build_q(&p, &rep, &phantoms);
                let pairs: Vec<(usize, usize)> =
                    phantoms.edges.iter().map(|e| (e.u, e.v)).collect();
                render_packing(&q, &qrep, &pairs)?
            } else {
                render_packing(&p, &rep, &[])?
            };
            sink(&cli.out)?.write_all(svg.as_bytes())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // A closed pipe (e.g. piping into `head`) is not a failure.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::OracleMismatch(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
