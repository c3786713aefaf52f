//! Command-line front end for `skewcycle`: file formats, JSON certificates
//! and the commands behind the `skewcycle` binary.

pub mod cert;
pub mod format;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use skewcycle::applications::{alternating_graph, is_alternating_circuit};
use skewcycle::oracle::{generate, GenKind, GenSpec, Instance};
use skewcycle::{
    bidirected_to_skew, canonical_preprocess, decompose, decompose_strong, final_barrier,
    find_strong_separator, find_weak_separator, lift_walk, skew_to_bidirected, unique_matching,
    verify_certificate, verify_matching, BidirectedGraph, Certificate, Decomposed,
    MatchingInstance, MatchingVerdict, NodeMap, ReductionTrace, SkewGraph, Walk, WalkKind,
    WeakOutcome,
};

use cert::{CertFile, SkewIds};

#[derive(Parser, Debug)]
#[command(
    name = "skewcycle",
    version,
    about = "Weak acyclicity of skew-symmetric and bidirected graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test for a regular circuit (exit 1 if one exists).
    Check(Produce),
    /// Weak acyclic decomposition tree, or a regular circuit.
    Decompose(Produce),
    /// Strong acyclic decomposition tree, or a regular circuit. O(mn).
    DecomposeStrong(Produce),
    /// Root separator, strong separator or final barrier.
    Separator {
        #[command(flatten)]
        produce: Produce,
        #[arg(long, value_enum, default_value = "weak")]
        kind: SeparatorKind,
    },
    /// Whether the matching in a .mug file is the only perfect matching.
    MatchingUnique(Produce),
    /// Generate an instance.
    Gen {
        /// random-bidirected, strongly-acyclic, weakly-acyclic-composed,
        /// strongly-connected-weakly-acyclic or weakly-acyclic-pruned
        #[arg(long)]
        kind: String,
        /// Node pairs (nodes, for random-bidirected)
        #[arg(long)]
        pairs: usize,
        /// Arc pairs (edges, for random-bidirected)
        #[arg(long)]
        arcs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to bdg for random-bidirected, ssg otherwise
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against its input (exit 1 on a violation).
    Verify {
        certificate: PathBuf,
        input: PathBuf,
    },
    /// Convert between .ssg and .bdg.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: GraphFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
pub struct Produce {
    /// .ssg, .bdg or .mug file (recognized by its header).
    pub input: PathBuf,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeparatorKind {
    Weak,
    Strong,
    Barrier,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Ssg,
    Bdg,
}

/// What a command prints besides its certificate.
pub struct Outcome {
    pub code: i32,
    pub message: String,
    pub certificate: Option<String>,
}

/// Input or usage problem; exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<skewcycle::Error> for Failure {
    fn from(e: skewcycle::Error) -> Self {
        Failure(e.to_string())
    }
}

type Run<T> = Result<T, Failure>;

pub enum Input {
    Skew(SkewGraph),
    Bidirected(BidirectedGraph),
    Matching(MatchingInstance),
}

pub fn read_input(path: &Path) -> Run<Input> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_input(&text).map_err(|e| Failure(format!("{}: {}", path.display(), e.0)))
}

pub fn parse_input(text: &str) -> Run<Input> {
    let tag = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    Ok(match tag {
        "ssg" => Input::Skew(format::parse_ssg(text)?),
        "bdg" => Input::Bidirected(format::parse_bdg(text)?),
        "mug" => Input::Matching(format::parse_mug(text)?),
        _ => {
            return Err(Failure(
                "line 1: expected an `ssg`, `bdg` or `mug` header".into(),
            ))
        }
    })
}

/// The graph the algorithms run on, and how to map circuits back.
struct Prepared {
    graph: SkewGraph,
    back: Back,
}

enum Back {
    /// The input itself.
    Direct,
    /// Preprocessed image of a skew input that lacks the degree or loop
    /// property; circuits are lifted back onto `original`.
    Skew {
        original: SkewGraph,
        trace: ReductionTrace,
        map: NodeMap,
    },
    /// Preprocessed image of a bidirected input.
    Bidirected { trace: ReductionTrace, map: NodeMap },
}

fn prepare(input: Input) -> Run<Prepared> {
    match input {
        Input::Skew(g) if g.check_algorithm_preconditions().is_ok() => Ok(Prepared {
            graph: g,
            back: Back::Direct,
        }),
        Input::Skew(original) => {
            let bg = skew_to_bidirected(&original, &NodeMap::canonical(original.pair_count()));
            let (graph, trace, map) = canonical_preprocess(&bg)?;
            Ok(Prepared {
                graph,
                back: Back::Skew {
                    original,
                    trace,
                    map,
                },
            })
        }
        Input::Bidirected(bg) => {
            let (graph, trace, map) = canonical_preprocess(&bg)?;
            Ok(Prepared {
                graph,
                back: Back::Bidirected { trace, map },
            })
        }
        Input::Matching(_) => Err(Failure(
            "expected a graph file, found a matching file".into(),
        )),
    }
}

impl Prepared {
    fn circuit(&self, c: &Walk) -> Run<CertFile> {
        match &self.back {
            Back::Direct => Ok(cert::regular_circuit(&SkewIds::of(&self.graph), c)),
            Back::Skew {
                original,
                trace,
                map,
            } => {
                let bw = trace.pull_back_skew_circuit(&self.graph, map, c)?;
                let w = lift_walk(original, &bw, &NodeMap::canonical(original.pair_count()))?;
                if !original.is_regular_circuit(&w) {
                    return Err(Failure(
                        "internal error: lifted circuit is not regular".into(),
                    ));
                }
                Ok(cert::regular_circuit(&SkewIds::of(original), &w))
            }
            Back::Bidirected { trace, map } => {
                let bw = trace.pull_back_skew_circuit(&self.graph, map, c)?;
                let (nodes, edges) = cert::edge_walk(&bw);
                Ok(CertFile::RegularCircuit {
                    nodes,
                    arcs: None,
                    edges: Some(edges),
                })
            }
        }
    }

    fn certificate(&self, c: &Certificate) -> CertFile {
        let preprocessed = !matches!(self.back, Back::Direct);
        cert::from_certificate(&SkewIds::of(&self.graph), c).set_preprocessed(preprocessed)
    }
}

fn negative(p: &Prepared, c: &Walk) -> Run<Outcome> {
    Ok(Outcome {
        code: 1,
        message: "regular circuit found".into(),
        certificate: Some(p.circuit(c)?.to_json()),
    })
}

fn positive(message: &str, file: CertFile) -> Outcome {
    Outcome {
        code: 0,
        message: message.into(),
        certificate: Some(file.to_json()),
    }
}

pub fn execute(command: &Command) -> Run<Outcome> {
    match command {
        Command::Check(p) | Command::Decompose(p) => {
            let prep = prepare(read_input(&p.input)?)?;
            match decompose(&prep.graph)? {
                Decomposed::Circuit(c) => negative(&prep, &c),
                Decomposed::Tree(d) => Ok(positive(
                    "weakly acyclic",
                    prep.certificate(&Certificate::WeakDecomposition(d)),
                )),
            }
        }
        Command::DecomposeStrong(p) => {
            let prep = prepare(read_input(&p.input)?)?;
            match decompose_strong(&prep.graph)? {
                Decomposed::Circuit(c) => negative(&prep, &c),
                Decomposed::Tree(d) => Ok(positive(
                    "weakly acyclic",
                    prep.certificate(&Certificate::StrongDecomposition(d)),
                )),
            }
        }
        Command::Separator { produce, kind } => {
            let prep = prepare(read_input(&produce.input)?)?;
            separator(&prep, *kind)
        }
        Command::MatchingUnique(p) => {
            let Input::Matching(inst) = read_input(&p.input)? else {
                return Err(Failure("matching-unique expects a .mug file".into()));
            };
            matching(&inst)
        }
        Command::Gen {
            kind,
            pairs,
            arcs,
            seed,
            format,
            output,
        } => {
            let text = gen(kind, *pairs, *arcs, *seed, *format)?;
            write_or_print(output.as_deref(), &text)?;
            Ok(Outcome {
                code: 0,
                message: String::new(),
                certificate: None,
            })
        }
        Command::Verify { certificate, input } => {
            let text = std::fs::read_to_string(certificate)
                .map_err(|e| Failure(format!("{}: {e}", certificate.display())))?;
            let file = CertFile::from_json(&text)
                .map_err(|e| Failure(format!("{}: {e}", certificate.display())))?;
            let verdict = verify(&file, read_input(input)?)?;
            Ok(match verdict {
                Ok(()) => Outcome {
                    code: 0,
                    message: format!("{} certificate is valid", file.kind()),
                    certificate: None,
                },
                Err(v) => Outcome {
                    code: 1,
                    message: format!("{} certificate rejected: {v}", file.kind()),
                    certificate: None,
                },
            })
        }
        Command::Convert { input, to, output } => {
            let text = match (read_input(input)?, to) {
                (Input::Skew(g), GraphFormat::Ssg) => format::write_ssg(&g),
                (Input::Skew(g), GraphFormat::Bdg) => {
                    format::write_bdg(&skew_to_bidirected(&g, &NodeMap::canonical(g.pair_count())))
                }
                (Input::Bidirected(bg), GraphFormat::Bdg) => format::write_bdg(&bg),
                (Input::Bidirected(bg), GraphFormat::Ssg) => {
                    format::write_ssg(&bidirected_to_skew(&bg)?.0)
                }
                (Input::Matching(_), _) => {
                    return Err(Failure("cannot convert a matching file".into()))
                }
            };
            write_or_print(output.as_deref(), &text)?;
            Ok(Outcome {
                code: 0,
                message: String::new(),
                certificate: None,
            })
        }
    }
}

fn separator(prep: &Prepared, kind: SeparatorKind) -> Run<Outcome> {
    let g = &prep.graph;
    match kind {
        SeparatorKind::Weak => Ok(match find_weak_separator(g)? {
            WeakOutcome::Circuit(c) => return negative(prep, &c),
            WeakOutcome::Separator(s) => positive(
                "weak separator",
                prep.certificate(&Certificate::WeakSeparator(s)),
            ),
            WeakOutcome::StrongAcyclic(p) => positive(
                "strongly acyclic",
                prep.certificate(&Certificate::StrongAcyclic(p)),
            ),
        }),
        SeparatorKind::Strong => {
            if let Decomposed::Circuit(c) = decompose(g)? {
                return negative(prep, &c);
            }
            let s = find_strong_separator(g)?;
            Ok(positive(
                "strong separator",
                prep.certificate(&Certificate::StrongSeparator(s)),
            ))
        }
        SeparatorKind::Barrier => match final_barrier(g)? {
            Decomposed::Circuit(c) => negative(prep, &c),
            Decomposed::Tree(b) => Ok(positive(
                "barrier",
                prep.certificate(&Certificate::Barrier(b)),
            )),
        },
    }
}

fn matching(inst: &MatchingInstance) -> Run<Outcome> {
    Ok(match unique_matching(inst)? {
        MatchingVerdict::Unique => {
            // Positive certificate: the alternating graph is weakly acyclic.
            let (g, _, _) = canonical_preprocess(&alternating_graph(inst))?;
            let d = decompose(&g)?
                .tree()
                .ok_or_else(|| Failure("internal error: verdicts disagree".into()))?;
            let file = cert::from_certificate(&SkewIds::of(&g), &Certificate::WeakDecomposition(d))
                .set_preprocessed(true);
            positive("unique perfect matching", file)
        }
        MatchingVerdict::AlternatingCircuit(w) => {
            let (nodes, edges) = cert::edge_walk(&w);
            Outcome {
                code: 1,
                message: "alternating circuit found".into(),
                certificate: Some(CertFile::AlternatingCircuit { nodes, edges }.to_json()),
            }
        }
    })
}

fn gen(
    kind: &str,
    pairs: usize,
    arcs: usize,
    seed: u64,
    format: Option<GraphFormat>,
) -> Run<String> {
    let kind = GenKind::from_name(kind).ok_or_else(|| {
        let names: Vec<_> = GenKind::ALL.iter().map(|k| k.name()).collect();
        Failure(format!(
            "unknown kind `{kind}`; expected one of {}",
            names.join(", ")
        ))
    })?;
    let inst = generate(GenSpec {
        kind,
        pairs,
        arcs,
        seed,
    })?;
    Ok(match (inst, format) {
        (Instance::Skew(g), None | Some(GraphFormat::Ssg)) => format::write_ssg(&g),
        (Instance::Skew(g), Some(GraphFormat::Bdg)) => {
            format::write_bdg(&skew_to_bidirected(&g, &NodeMap::canonical(g.pair_count())))
        }
        (Instance::Bidirected(bg), None | Some(GraphFormat::Bdg)) => format::write_bdg(&bg),
        (Instance::Bidirected(bg), Some(GraphFormat::Ssg)) => {
            format::write_ssg(&bidirected_to_skew(&bg)?.0)
        }
    })
}

/// `Ok(Err(v))` is a rejected certificate, `Err` an unusable input.
pub fn verify(file: &CertFile, input: Input) -> Run<Result<(), skewcycle::Violation>> {
    let reject = |clause: &str, detail: &str| {
        Ok(Err(skewcycle::Violation {
            clause: clause.into(),
            detail: detail.into(),
        }))
    };
    match (file, input) {
        (CertFile::AlternatingCircuit { nodes, edges }, Input::Matching(inst)) => {
            if let Err(e) = verify_matching(&inst) {
                return Err(e.into());
            }
            let w = cert::edge_walk_in(nodes, edges);
            if is_alternating_circuit(&inst, &w) {
                Ok(Ok(()))
            } else {
                reject(
                    "alternating circuit",
                    "not a node-simple cycle alternating M and non-M edges",
                )
            }
        }
        (CertFile::AlternatingCircuit { .. }, _) => {
            Err(Failure("an alternating circuit needs a .mug input".into()))
        }
        (
            CertFile::RegularCircuit {
                nodes,
                edges: Some(edges),
                arcs: None,
            },
            Input::Bidirected(bg),
        ) => {
            let w = cert::edge_walk_in(nodes, edges);
            if !w.arcs.is_empty() && bg.is_walk(&w) && BidirectedGraph::is_edge_simple(&w) {
                Ok(Ok(()))
            } else {
                reject("cycle", "not an edge-simple cycle of the bidirected graph")
            }
        }
        (CertFile::RegularCircuit { .. }, Input::Skew(g)) => check_skew(&g, file),
        (CertFile::RegularCircuit { .. }, _) => Err(Failure(
            "regular-circuit certificate does not match the input kind".into(),
        )),
        (_, input) if file.preprocessed() => {
            let bg = match input {
                Input::Skew(g) => skew_to_bidirected(&g, &NodeMap::canonical(g.pair_count())),
                Input::Bidirected(bg) => bg,
                Input::Matching(inst) => {
                    verify_matching(&inst)?;
                    alternating_graph(&inst)
                }
            };
            let (g, _, _) = canonical_preprocess(&bg)?;
            check_skew(&g, file)
        }
        (_, Input::Skew(g)) => check_skew(&g, file),
        (_, _) => Err(Failure(format!(
            "a {} certificate for this input must be marked preprocessed",
            file.kind()
        ))),
    }
}

fn check_skew(g: &SkewGraph, file: &CertFile) -> Run<Result<(), skewcycle::Violation>> {
    Ok(cert::to_certificate(&SkewIds::of(g), file).and_then(|c| {
        if let Certificate::RegularCircuit(w) = &c {
            if w.kind != WalkKind::Cycle || w.nodes.len() != w.arcs.len() + 1 {
                return Err(skewcycle::Violation {
                    clause: "regular circuit".into(),
                    detail: "node and arc counts do not match".into(),
                });
            }
        }
        verify_certificate(g, &c)
    }))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Run<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs the command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let cert_path = match &cli.command {
        Command::Check(p)
        | Command::Decompose(p)
        | Command::DecomposeStrong(p)
        | Command::MatchingUnique(p)
        | Command::Separator { produce: p, .. } => p.certificate.clone(),
        _ => None,
    };
    match execute(&cli.command) {
        Ok(out) => {
            if let Some(text) = &out.certificate {
                if let Err(e) = write_or_print(cert_path.as_deref(), text) {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
            if !out.message.is_empty() {
                eprintln!("{}", out.message);
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
