//! `sx`: command-line front end to sx-core.
//!
//! JSON goes to stdout; `--pretty` adds a human summary on stderr. Exit
//! codes: 0 proved or success, 1 refuted or failure, 2 unknown, 64 usage,
//! 65 unreadable input.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use sx_core::certificate::MoveCertificate;
use sx_core::certify::{
    certify_k_shelled, certify_k_stacked_sphere, certify_k_stellated, collapse, ear_scan_with, flip_scan, is_in_class,
    is_k_stacked_ball, is_one_stacked_ball, is_tight_exhaustive, tightness_beta_condition, EarMode, SearchBudget,
    Verdict, WalkupClass,
};
use sx_core::claims::{verify, ClaimOptions};
use sx_core::constructions::{self, connected_sum, murai_nevo_bar_manifold, murai_nevo_bar_sphere};
use sx_core::homology::{betti, screen_homology_ball, screen_homology_sphere, CoefficientField};
use sx_core::io::{self as sxio, Format};
use sx_core::symmetry::{automorphism_group, is_isomorphic};
use sx_core::{corpus, moves, Complex, Error, Face, Label};

const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;

#[derive(Parser)]
#[command(name = "sx", version, about = "Stellated and stacked spheres and balls")]
struct Cli {
    /// Output format for complexes.
    #[arg(long, global = true, default_value = "fac")]
    format: FormatArg,
    /// Human-readable summary on stderr.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Fac,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Fac => Format::Fac,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Args, Clone)]
struct BudgetArgs {
    #[arg(long, default_value_t = 2_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 20_000)]
    budget_moves: u64,
    #[arg(long, default_value_t = 16)]
    restarts: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Decide stellatedness exactly (d ≥ 2k) instead of stopping at UNKNOWN.
    #[arg(long)]
    exhaustive: bool,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.budget_nodes,
            max_moves: self.budget_moves,
            seed: self.seed,
            restarts: self.restarts,
            jobs: self.jobs.max(1),
            exhaustive: self.exhaustive,
            ..SearchBudget::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, f-vector, digest and classification.
    Info { source: String },
    /// Pseudomanifold classification and homology sphere/ball screens.
    Classify {
        source: String,
        #[arg(long, value_delimiter = ',', default_values_t = [0u64, 2, 3])]
        fields: Vec<u64>,
    },
    /// Reduced Betti numbers over a field (0 for the rationals).
    Homology {
        source: String,
        #[arg(long, default_value_t = 0)]
        field: u64,
    },
    /// Every bistellar move with index in `lo..=hi`.
    Flips {
        source: String,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long)]
        hi: Option<i64>,
    },
    /// Run a certifier; the exit code follows the verdict.
    Certify {
        #[arg(value_enum)]
        what: CertifyKind,
        source: String,
        #[arg(short = 'k', long = "k", default_value_t = 1)]
        k: i64,
        #[arg(long, default_value_t = 0)]
        field: u64,
        #[arg(long, default_value_t = 16)]
        guard_vertices: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Reconstruct the stacked ball of a sphere and test it.
    Stacked {
        source: String,
        #[arg(short = 'k', long = "k")]
        k: i64,
    },
    /// The subset closure `S̄` of a sphere (or `M̄` with `--manifold`).
    Bar {
        source: String,
        #[arg(short = 'k', long = "k")]
        k: usize,
        #[arg(long)]
        manifold: bool,
    },
    /// Build a named construction.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Automorphism group: order, generators in cycle notation, orbits.
    Aut {
        source: String,
        #[arg(long, default_value_t = sx_core::symmetry::DEFAULT_GUARD)]
        guard_vertices: usize,
    },
    /// A vertex bijection between two complexes, or "none".
    Iso {
        first: String,
        second: String,
        #[arg(long, default_value_t = sx_core::symmetry::DEFAULT_GUARD)]
        guard_vertices: usize,
    },
    /// Connected sum along two facets, matched in listed order.
    Sum {
        first: String,
        second: String,
        /// Facet of the first complex, comma separated (default: its first facet).
        #[arg(long)]
        facet_first: Option<String>,
        /// Facet of the second complex (default: its first facet).
        #[arg(long)]
        facet_second: Option<String>,
    },
    /// Replay a move certificate and print the result.
    Replay { certificate: String },
    /// The bundled example complexes.
    Fixtures {
        #[command(subcommand)]
        what: Fixtures,
    },
    /// Run every acceptance claim and report each one.
    VerifyPaper {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Only these claims (comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CertifyKind {
    Stellated,
    Shelled,
    StackedBall,
    OneStacked,
    StackedSphere,
    ClassW,
    ClassK,
    Collapse,
    Ears,
    Tight,
    TightBeta,
}

#[derive(Subcommand)]
enum Generate {
    KleeNovik { k: i64, d: i64 },
    KleeNovikBar { k: i64, d: i64 },
    CrossPolytope { d: i64 },
    StandardSphere { d: i64 },
    StandardBall { d: i64 },
    /// Stacked ball at a vertex: its antistar coned from the vertex.
    VertexBall { source: String, vertex: String },
    /// The double-suspension family built from a homology 3-sphere.
    DoubleSuspension {
        source: String,
        apex: String,
        #[arg(value_enum, default_value = "s5")]
        part: SuspensionPart,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuspensionPart {
    D4,
    S5,
    D6,
    D7,
    S6,
}

#[derive(Subcommand)]
enum Fixtures {
    List,
    Export { name: String, file: Option<String> },
}

/// A failure carrying its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::Parse(_) | Error::Io(_) | Error::UnknownFixture(_) | Error::EmptyInput | Error::EmptyFace => EXIT_PARSE,
            Error::BadParameters(_) | Error::FieldTooLarge(_) | Error::NotPrime(_) => EXIT_USAGE,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

type Outcome = Result<u8, Fail>;

struct Ctx {
    format: Format,
    pretty: bool,
    stdin: Option<String>,
}

impl Ctx {
    fn text(&mut self, source: &str) -> Result<String, Fail> {
        if source == "-" {
            if self.stdin.is_none() {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(Error::from)?;
                self.stdin = Some(s);
            }
            return Ok(self.stdin.clone().unwrap_or_default());
        }
        std::fs::read_to_string(source).map_err(|e| Fail(EXIT_PARSE, format!("{source}: {e}")))
    }

    fn load(&mut self, source: &str) -> Result<Complex, Fail> {
        if let Some(name) = source.strip_prefix("fixtures:") {
            return Ok(corpus::complex(name)?);
        }
        let text = self.text(source)?;
        sxio::parse_any(&text).map_err(|e| Fail(EXIT_PARSE, e.to_string()))
    }

    fn emit<T: Serialize>(&self, value: &T) {
        println!("{}", serde_json::to_string(value).expect("output serializes"));
    }

    fn note(&self, text: impl AsRef<str>) {
        if self.pretty {
            eprintln!("{}", text.as_ref());
        }
    }

    fn complex(&self, x: &Complex) {
        let out = sxio::write(x, self.format, None);
        print!("{out}");
        if !out.ends_with('\n') {
            println!();
        }
    }

    fn verdict(&self, v: &Verdict) -> u8 {
        self.emit(v);
        self.note(format!("{}{}", v.status, v.notes.iter().map(|n| format!(" ({n})")).collect::<String>()));
        v.status.exit_code() as u8
    }
}

fn field(desc: u64) -> Result<CoefficientField, Fail> {
    CoefficientField::new(desc).map_err(|e| Fail(EXIT_USAGE, e.to_string()))
}

fn parse_face(x: &Complex, given: Option<&str>) -> Result<Face, Fail> {
    match given {
        None => Ok(x.facets()[0].clone()),
        Some(s) => {
            let labels = s.split(',').map(|t| t.trim().parse::<Label>()).collect::<Result<Vec<_>, _>>()?;
            Ok(Face::new(labels))
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let mut ctx = Ctx { format: cli.format.into(), pretty: cli.pretty, stdin: None };
    match cli.command {
        Command::Info { source } => {
            let x = ctx.load(&source)?;
            let info = json!({
                "dim": x.dim(),
                "vertices": x.vertex_count(),
                "facets": x.facet_count(),
                "f_vector": x.f_vector(),
                "euler_characteristic": x.euler_characteristic(),
                "classification": x.classify(),
                "digest": x.digest(),
            });
            ctx.emit(&info);
            ctx.note(format!("dim {} f-vector {}", x.dim(), x.f_vector()));
            Ok(0)
        }
        Command::Classify { source, fields } => {
            let x = ctx.load(&source)?;
            let fields = fields.into_iter().map(field).collect::<Result<Vec<_>, _>>()?;
            let out = json!({
                "classification": x.classify(),
                "sphere_screen": screen_homology_sphere(&x, &fields),
                "ball_screen": screen_homology_ball(&x, &fields),
            });
            ctx.emit(&out);
            Ok(0)
        }
        Command::Homology { source, field: f } => {
            let x = ctx.load(&source)?;
            let b = betti(&x, field(f)?);
            ctx.emit(&b);
            ctx.note(format!("{:?}", b.reduced_betti));
            Ok(0)
        }
        Command::Flips { source, lo, hi } => {
            let x = ctx.load(&source)?;
            let moves = flip_scan(&x, lo, hi.unwrap_or(x.dim()));
            ctx.emit(&moves);
            ctx.note(format!("{} moves", moves.len()));
            Ok(0)
        }
        Command::Certify { what, source, k, field: f, guard_vertices, budget } => {
            let x = ctx.load(&source)?;
            let budget = budget.budget();
            let v = match what {
                CertifyKind::Stellated => certify_k_stellated(&x, k, &budget),
                CertifyKind::Shelled => certify_k_shelled(&x, k, &budget),
                CertifyKind::StackedBall => is_k_stacked_ball(&x, k)?,
                CertifyKind::OneStacked => is_one_stacked_ball(&x)?,
                CertifyKind::StackedSphere => certify_k_stacked_sphere(&x, k),
                CertifyKind::ClassW => is_in_class(&x, k, WalkupClass::W, &budget),
                CertifyKind::ClassK => is_in_class(&x, k, WalkupClass::K, &budget),
                CertifyKind::Collapse => collapse(&x, &budget),
                CertifyKind::Tight => is_tight_exhaustive(&x, field(f)?, guard_vertices)?,
                CertifyKind::TightBeta => tightness_beta_condition(&x, k, field(f)?),
                CertifyKind::Ears => {
                    let r = ear_scan_with(&x, EarMode::Auto)?;
                    ctx.emit(&r);
                    ctx.note(format!("{} ears{}", r.ears.len(), if r.exact { "" } else { " (screened)" }));
                    return Ok(0);
                }
            };
            Ok(ctx.verdict(&v))
        }
        Command::Stacked { source, k } => {
            let x = ctx.load(&source)?;
            let v = certify_k_stacked_sphere(&x, k);
            Ok(ctx.verdict(&v))
        }
        Command::Bar { source, k, manifold } => {
            let x = ctx.load(&source)?;
            let bar = if manifold { murai_nevo_bar_manifold(&x, k) } else { murai_nevo_bar_sphere(&x, k) };
            ctx.complex(&bar);
            Ok(0)
        }
        Command::Generate { what } => {
            let x = match what {
                Generate::KleeNovik { k, d } => constructions::klee_novik(k, d)?,
                Generate::KleeNovikBar { k, d } => constructions::klee_novik_bar(k, d)?,
                Generate::CrossPolytope { d } => constructions::cross_polytope(d)?,
                Generate::StandardSphere { d } => moves::standard_sphere(d, None)?,
                Generate::StandardBall { d } => moves::standard_ball(d, None)?,
                Generate::VertexBall { source, vertex } => {
                    let s = ctx.load(&source)?;
                    constructions::vertex_ball(&s, &vertex.parse::<Label>()?)?
                }
                Generate::DoubleSuspension { source, apex, part } => {
                    let s = ctx.load(&source)?;
                    let p = constructions::double_suspension_pipeline(&s, &apex.parse::<Label>()?)?;
                    match part {
                        SuspensionPart::D4 => p.d4_16,
                        SuspensionPart::S5 => p.s5_18,
                        SuspensionPart::D6 => p.d6_18,
                        SuspensionPart::D7 => p.d7_19,
                        SuspensionPart::S6 => p.s6_19,
                    }
                }
            };
            ctx.complex(&x);
            Ok(0)
        }
        Command::Aut { source, guard_vertices } => {
            let x = ctx.load(&source)?;
            let g = automorphism_group(&x, guard_vertices)?;
            let out = json!({
                "order": g.order.to_string(),
                "generators": g.cycles(),
                "orbits": g.orbits,
                "vertex_transitive": g.is_vertex_transitive(),
            });
            ctx.emit(&out);
            ctx.note(format!("order {}", g.order));
            Ok(0)
        }
        Command::Iso { first, second, guard_vertices } => {
            let x = ctx.load(&first)?;
            let y = ctx.load(&second)?;
            match is_isomorphic(&x, &y, guard_vertices)? {
                Some(map) => {
                    let mut pairs: Vec<(Label, Label)> = map.into_iter().collect();
                    pairs.sort();
                    ctx.emit(&json!({ "isomorphic": true, "bijection": pairs }));
                    Ok(0)
                }
                None => {
                    ctx.emit(&json!({ "isomorphic": false, "bijection": "none" }));
                    ctx.note("none");
                    Ok(1)
                }
            }
        }
        Command::Sum { first, second, facet_first, facet_second } => {
            let x = ctx.load(&first)?;
            let mut y = ctx.load(&second)?;
            let fx = parse_face(&x, facet_first.as_deref())?;
            let mut fy = parse_face(&y, facet_second.as_deref())?;
            if y.labels().iter().any(|l| x.labels().contains(l)) {
                // keep the vertex sets apart by priming the second complex
                let rename: HashMap<Label, Label> =
                    y.labels().iter().map(|l| (l.clone(), Label::name(&format!("{l}p")))).collect();
                y = y.relabel(&rename)?;
                fy = Face::new(fy.labels().iter().map(|l| rename.get(l).cloned().unwrap_or_else(|| l.clone())));
            }
            let matching: Vec<(Label, Label)> = fx.labels().iter().cloned().zip(fy.labels().iter().cloned()).collect();
            let sum = connected_sum(&x, &y, &fx, &fy, &matching)?;
            ctx.complex(&sum);
            Ok(0)
        }
        Command::Replay { certificate } => {
            let cert = MoveCertificate::from_json(&ctx.text(&certificate)?).map_err(|e| Fail(EXIT_PARSE, e.to_string()))?;
            let r = cert.replay()?;
            ctx.note(format!("{} moves", r.length));
            ctx.complex(&r.result);
            Ok(0)
        }
        Command::Fixtures { what } => match what {
            Fixtures::List => {
                let list: Vec<Value> = corpus::list()
                    .iter()
                    .map(|n| {
                        let f = corpus::fixture(n).expect("listed fixtures load");
                        json!({ "name": n, "provenance": f.provenance })
                    })
                    .collect();
                ctx.emit(&list);
                Ok(0)
            }
            Fixtures::Export { name, file } => {
                let text = match corpus::complex(&name) {
                    Ok(x) => sxio::write(&x, ctx.format, Some(&name)),
                    Err(_) => corpus::certificate(&name)?.to_json(),
                };
                match file {
                    Some(path) if path != "-" => std::fs::write(&path, text).map_err(Error::from)?,
                    _ => {
                        print!("{text}");
                        if !text.ends_with('\n') {
                            println!();
                        }
                    }
                }
                Ok(0)
            }
        },
        Command::VerifyPaper { trials, seed, only } => {
            let opts = ClaimOptions { trials, seed, ..ClaimOptions::default() };
            let ids: Vec<u32> = if only.is_empty() { (1..=10).collect() } else { only };
            let claims: Vec<_> = ids.iter().map(|&i| verify(i, &opts)).collect();
            ctx.emit(&claims);
            for c in &claims {
                ctx.note(format!("{} {:>2} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.title));
                for f in c.checks.iter().filter(|x| !x.pass) {
                    ctx.note(format!("        {} {}", f.name, f.detail));
                }
            }
            Ok(if claims.iter().all(|c| c.pass) { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            return ExitCode::from(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            eprintln!("sx: {msg}");
            code
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
