//! `mvdual`: command-line front end for the `mvduality` library.
//!
//! Exit status is 0 on success, 1 when well-formed input fails
//! mathematically (an ill-defined homomorphism, a point off a domain), and
//! 2 on malformed input.

mod input;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvduality::algebra::{
    algebra_of_spectrum, bimorphism_split, coproduct_spectrum, relations_satisfied, spectrum, tensor_spectrum, Spectrum,
};
use mvduality::duality::{check_hom, dual_zmap, in_ideal, radical_equal, variety, HomSpec};
use mvduality::geometry::{Point, Polyhedron};
use mvduality::json::Json;
use mvduality::mcnaughton::{compile, factor, pl_equal, ZMap};
use mvduality::rational::to_text;
use mvduality::sampling;
use mvduality::tangents::{
    check_outgoing_tangent, extract_tangent, germ_in_polyhedron, outgoing_conditions, CurveGerm, OutgoingWitness,
    TangentTuple,
};
use mvduality::terms::{parse_relation, Presentation};
use rand::Rng;
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(String),
}

impl From<mvduality::Error> for CliError {
    fn from(e: mvduality::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

type Res<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "mvdual", version, about = "Exact MV-algebra and polyhedral duality computations")]
struct Cli {
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampling subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A presentation: `--rel` pairs over `--arity` variables, or `--pres FILE`.
#[derive(Args)]
struct PresArgs {
    #[arg(long)]
    arity: Option<usize>,
    /// A relation `s = t`; repeatable.
    #[arg(long = "rel")]
    rels: Vec<String>,
    /// Presentation JSON, inline or `@path`.
    #[arg(long, conflicts_with_all = ["arity", "rels"])]
    pres: Option<String>,
}

impl PresArgs {
    fn load(&self) -> Res<Presentation> {
        input::presentation(self.arity, &self.rels, self.pres.as_deref())
    }
}

/// Algebras: `--chain n` is the chain with n+1 elements, `--algebra` takes
/// JSON inline or `@path`. Chains come first.
#[derive(Args)]
struct AlgArgs {
    #[arg(long = "chain")]
    chains: Vec<usize>,
    #[arg(long = "algebra")]
    algebras: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a term and print it in sugared and core form.
    Parse { term: String },
    /// Evaluate a term at a point such as `1/2,1/3`.
    Eval {
        term: String,
        #[arg(long)]
        at: String,
    },
    /// Compile a term into its McNaughton function.
    Compile {
        term: String,
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Decide equality of two functions (terms or `@file` function JSON).
    PlEqual {
        f: String,
        g: String,
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Decide whether a term is a tautology.
    Taut {
        term: String,
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Decide equivalence of two terms.
    Equiv {
        s: String,
        t: String,
        #[arg(long)]
        arity: Option<usize>,
    },
    /// The solution polyhedron of a presentation.
    Variety(PresArgs),
    /// Whether the relation `s = t` holds on the variety of a presentation.
    InIdeal {
        #[command(flatten)]
        pres: PresArgs,
        relation: String,
    },
    /// Whether two presentations (JSON, inline or `@path`) have equal radicals.
    RadEq { left: String, right: String },
    /// Whether a homomorphism specification is well defined.
    CheckHom { hom: String },
    /// The dual ℤ-map of a homomorphism.
    DualHom { hom: String },
    /// Factor a ℤ-map through the coordinates its components use.
    Factor {
        /// ℤ-map JSON, or a homomorphism with `--hom`.
        input: String,
        /// Read the input as a homomorphism and dualize it first.
        #[arg(long)]
        hom: bool,
        /// Component indices such as `0,2`; all by default.
        #[arg(long)]
        select: Option<String>,
    },
    /// The spectrum of a finite algebra (several operands form their product).
    Spectrum(AlgArgs),
    /// The spectrum of the coproduct of two finite algebras.
    CoproductSpectrum(AlgArgs),
    /// The spectrum of the semisimple tensor product of two finite algebras.
    TensorSpectrum(AlgArgs),
    /// The finite algebra generated by the coordinate functions of a spectrum.
    AlgebraOfSpectrum { spectrum: String },
    /// Check a point of `[0,1]^(A×B)` against the bimorphism relations.
    TensorRelationsCheck {
        #[command(flatten)]
        algs: AlgArgs,
        #[arg(long)]
        point: String,
    },
    /// The k-tangent of a curve germ.
    TangentExtract {
        germ: String,
        #[arg(long)]
        k: usize,
    },
    /// Whether a germ eventually lies in a polyhedron.
    GermInPoly {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        germ: String,
    },
    /// Evaluate the outgoing-witness conditions for a tangent.
    OutgoingVerify {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        tangent: String,
        #[arg(long)]
        witness: String,
    },
    /// Check a germ's k-tangent against an outgoing witness.
    OutgoingCheck {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        germ: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        witness: String,
    },
    /// Search random polyhedra for rationally outgoing tangents.
    PolyFalsify {
        #[arg(long, default_value_t = 20)]
        polys: usize,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        /// Ambient dimension; alternates 2 and 3 when absent.
        #[arg(long)]
        dim: Option<usize>,
    },
}

fn arity_of(explicit: Option<usize>, args: &[&str]) -> Res<usize> {
    match explicit {
        Some(n) => Ok(n),
        None => args.iter().try_fold(0, |m, a| Ok(m.max(input::function_arity(a)?))),
    }
}

fn points(ps: &[Point]) -> Value {
    ps.iter().map(Json::to_json).collect()
}

fn run(cli: &Cli) -> Res<Value> {
    Ok(match &cli.cmd {
        Cmd::Parse { term } => {
            let t = input::term(term)?;
            json!({
                "term": t.to_string(),
                "core": t.to_core_string(),
                "arity": t.arity(),
                "depth": t.depth(),
                "size": t.size(),
            })
        }
        Cmd::Eval { term, at } => {
            let t = input::term(term)?;
            let p = Point::parse(at)?;
            json!(to_text(&t.eval(&p)?))
        }
        Cmd::Compile { term, arity } => {
            let t = input::term(term)?;
            compile(&t, arity.unwrap_or(t.arity()))?.to_json()
        }
        Cmd::PlEqual { f, g, arity } => {
            let n = arity_of(*arity, &[f, g])?;
            json!({ "equal": pl_equal(&input::function(f, n)?, &input::function(g, n)?)? })
        }
        Cmd::Taut { term, arity } => {
            let t = input::term(term)?;
            let n = arity.unwrap_or(t.arity());
            let ones = compile(&t, n)?.one_set();
            if ones.set_eq(&Polyhedron::cube(n))? {
                json!("TAUTOLOGY")
            } else {
                json!("NOT A TAUTOLOGY")
            }
        }
        Cmd::Equiv { s, t, arity } => {
            let (a, b) = (input::term(s)?, input::term(t)?);
            let n = arity.unwrap_or(a.arity().max(b.arity()));
            json!({ "equivalent": pl_equal(&compile(&a, n)?, &compile(&b, n)?)? })
        }
        Cmd::Variety(p) => variety(&p.load()?).to_json(),
        Cmd::InIdeal { pres, relation } => {
            let (s, t) = parse_relation(relation)?;
            json!({ "in_ideal": in_ideal(&variety(&pres.load()?), &s, &t)? })
        }
        Cmd::RadEq { left, right } => {
            let (a, b): (Presentation, Presentation) = (input::json(left)?, input::json(right)?);
            json!({ "radical_equal": radical_equal(&a, &b)? })
        }
        Cmd::CheckHom { hom } => json!({ "well_defined": check_hom(&input::json::<HomSpec>(hom)?)? }),
        Cmd::DualHom { hom } => dual_zmap(&input::json::<HomSpec>(hom)?)?.to_json(),
        Cmd::Factor { input: arg, hom, select } => {
            let eta = if *hom { dual_zmap(&input::json::<HomSpec>(arg)?)? } else { input::json::<ZMap>(arg)? };
            let selected = match select {
                Some(s) => input::indices(s)?,
                None => (0..eta.target_dim()).collect(),
            };
            let fz = factor(&eta, &selected)?;
            json!({
                "selected": selected,
                "coords": fz.coords,
                "xi": fz.xi.to_json(),
                "verified": fz.verify(&eta, &selected)?,
            })
        }
        Cmd::Spectrum(a) => spectrum(&input::one_algebra(&a.chains, &a.algebras)?).to_json(),
        Cmd::CoproductSpectrum(a) => {
            let (x, y) = input::two_algebras(&a.chains, &a.algebras)?;
            coproduct_spectrum(&x, &y).to_json()
        }
        Cmd::TensorSpectrum(a) => {
            let (x, y) = input::two_algebras(&a.chains, &a.algebras)?;
            let ts = tensor_spectrum(&x, &y);
            let factors: Vec<Value> = ts.factors.iter().map(|(p, q)| json!([p.to_json(), q.to_json()])).collect();
            json!({
                "spectrum": ts.spectrum.to_json(),
                "factors": factors,
                "injective": ts.is_injective(),
            })
        }
        Cmd::AlgebraOfSpectrum { spectrum: s } => algebra_of_spectrum(&input::json::<Spectrum>(s)?).to_json(),
        Cmd::TensorRelationsCheck { algs, point } => {
            let (x, y) = input::two_algebras(&algs.chains, &algs.algebras)?;
            let p = Point::parse(point)?;
            let split = bimorphism_split(&x, &y, &p)?.map(|(a, b)| points(&[a, b]));
            json!({ "relations_satisfied": relations_satisfied(&x, &y, &p)?, "split": split })
        }
        Cmd::TangentExtract { germ, k } => extract_tangent(&input::json::<CurveGerm>(germ)?, *k)?.to_json(),
        Cmd::GermInPoly { poly, germ } => {
            let x: Polyhedron = input::json(poly)?;
            json!({ "in_polyhedron": germ_in_polyhedron(&x, &input::json(germ)?)? })
        }
        Cmd::OutgoingVerify { poly, tangent, witness } => {
            let x: Polyhedron = input::json(poly)?;
            let u: TangentTuple = input::json(tangent)?;
            let w: OutgoingWitness = input::json(witness)?;
            let c = outgoing_conditions(&x, &u, &w)?;
            json!({
                "chain_in_simplex": c.chain_in_simplex,
                "chain_leaves_face": c.chain_leaves_face,
                "same_trace": c.same_trace,
                "outgoing": c.all(),
            })
        }
        Cmd::OutgoingCheck { poly, germ, k, witness } => {
            let x: Polyhedron = input::json(poly)?;
            let g: CurveGerm = input::json(germ)?;
            let w: OutgoingWitness = input::json(witness)?;
            json!({ "outgoing": check_outgoing_tangent(&x, &g, *k, &w)? })
        }
        Cmd::PolyFalsify { polys, cases, dim } => falsify(cli.seed, *polys, *cases, *dim)?,
    })
}

fn falsify(seed: u64, polys: usize, cases: usize, dim: Option<usize>) -> Res<Value> {
    if dim.is_some_and(|n| n < 2) {
        return Err(CliError::Input("--dim must be at least 2".into()));
    }
    let mut rng = sampling::rng(seed);
    let mut counterexamples = Vec::new();
    let (mut total, mut near) = (0, 0);
    for i in 0..polys {
        let n = dim.unwrap_or(2 + i % 2);
        let count = rng.gen_range(1..=3);
        let x = sampling::polyhedron(&mut rng, n, count, 4);
        let (mut found, mut attempts) = (0, 0);
        while found < cases {
            attempts += 1;
            if attempts > 40 * cases.max(1) {
                return Err(CliError::Domain(format!("polyhedron {i}: could not sample {cases} cases")));
            }
            let Some((g, k, w)) = sampling::falsification_case(&mut rng, &x) else { continue };
            if check_outgoing_tangent(&x, &g, k, &w)? {
                counterexamples.push(json!({
                    "polyhedron": x.to_json(),
                    "germ": g.to_json(),
                    "k": k,
                    "witness": w.to_json(),
                }));
            }
            let c = outgoing_conditions(&x, &extract_tangent(&g, k)?.canonical(), &w)?;
            near += usize::from(c.chain_in_simplex && c.chain_leaves_face);
            found += 1;
        }
        total += found;
    }
    Ok(json!({
        "seed": seed,
        "polyhedra": polys,
        "cases": total,
        "chain_conditions_met": near,
        "counterexamples": counterexamples,
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|v| {
        let body = match cli.format {
            Format::Json => serde_json::to_string_pretty(&v).expect("serialisable") + "\n",
            Format::Text => render::text(&v),
        };
        match &cli.out {
            Some(path) => fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
