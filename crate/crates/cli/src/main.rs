//! Command-line front end for `toric_realize`.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 a mathematical
//! precondition failed, 4 internal inconsistency or output failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_realize::chambers::{self, FacetCounts};
use toric_realize::cstar::{ActionContext, ActionReport};
use toric_realize::linalg::{parse_int_list, parse_rat, parse_rat_list, Int, Rat};
use toric_realize::polytope::{parse_polytope, write_off, write_polytope, RationalPolytope};
use toric_realize::realize::{self, MConvention, Realization};
use toric_realize::toric::{
    from_primitive_relations, parse_fan, parse_primitive_relations, projective_bundle, write_fan,
    ToricVariety, TorusDivisor,
};
use toric_realize::Error;

#[derive(Parser)]
#[command(
    name = "toric-realize",
    version,
    about = "Geometric realizations of toric birational maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Flags and class group of a toric variety.
    Describe(VarietyArgs),
    /// Geometric realization of the map between the models of A and B.
    Realize {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Divisor literal: `1,0,2` or `D1+2D6+D7`.
        #[arg(long = "A", alias = "a", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", alias = "b", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "1")]
        ell: String,
        #[command(flatten)]
        out: RealizationOut,
    },
    /// Realization made sharp by moving A inside its chamber.
    SharpRealize {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long = "A", alias = "a", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", alias = "b", allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: RealizationOut,
    },
    /// Fano realization of the map given by H.
    FanoRealize {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long = "H", alias = "h", allow_hyphen_values = true)]
        h: String,
        /// Test `-mK - H` for ampleness instead of `-mK + H`.
        #[arg(long)]
        prose_sign: bool,
        #[command(flatten)]
        out: RealizationOut,
    },
    /// Unpruning `L + a D_1 + b D_2` of `P(O(E) + O(F))`.
    Unpruning {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long = "E", alias = "e", allow_hyphen_values = true)]
        e: String,
        #[arg(long = "F", alias = "f", allow_hyphen_values = true)]
        f: String,
        #[arg(long = "a", default_value = "0")]
        ca: String,
        #[arg(long = "b", default_value = "0")]
        cb: String,
        #[command(flatten)]
        out: RealizationOut,
    },
    /// The `action_info` report of a polytope with a C*-action.
    ActionInfo {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// All geometric quotients, one polytope block each.
    Quotients {
        #[command(flatten)]
        action: ActionArgs,
    },
    /// The pruning `a <= u <= b`.
    Pruning {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long = "lo", allow_hyphen_values = true)]
        lo: String,
        #[arg(long = "hi", allow_hyphen_values = true)]
        hi: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mori chambers of the effective cone and their walls.
    Chambers(VarietyArgs),
    /// Generators of the movable cone in class coordinates.
    MovableCone(VarietyArgs),
    /// Facet-count wall test between the chambers of A and B.
    WallTest {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long = "A", alias = "a", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", alias = "b", allow_hyphen_values = true)]
        b: String,
    },
    /// Fan file from a primitive-relations file.
    FromPr {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fan of `P(O(M_0) + ... + O(M_t))` over a base fan.
    Bundle {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Rows separated by `;`, e.g. `0,0,0;0,0,1;0,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        twist: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VarietyArgs {
    /// Fan file.
    #[arg(long, conflicts_with = "pr", required_unless_present = "pr")]
    fan: Option<PathBuf>,
    /// Primitive-relations file.
    #[arg(long)]
    pr: Option<PathBuf>,
}

#[derive(Args)]
struct ActionArgs {
    /// Polytope file.
    #[arg(long)]
    polytope: PathBuf,
    /// Primitive functional, e.g. `1,1,1,1`.
    #[arg(long, conflicts_with = "coordinate", allow_hyphen_values = true)]
    functional: Option<String>,
    /// 0-based coordinate; the last one by default.
    #[arg(long)]
    coordinate: Option<usize>,
}

#[derive(Args)]
struct RealizationOut {
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Write the realization polytope here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write an OFF file (3-dimensional polytopes only).
    #[arg(long)]
    off: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Structured,
}

enum Failure {
    Input(String),
    Math(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Input(m),
            Error::Internal(_) => Failure::Internal(e.to_string()),
            e => Failure::Math(e),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Math(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Math(e) => write!(f, "{e}"),
            Failure::Internal(m) => write!(f, "{m}"),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))
}

fn parse_err(what: &str, s: &str) -> Failure {
    Failure::Input(format!("bad {what} {s:?}"))
}

fn load_variety(v: &VarietyArgs) -> Res<ToricVariety> {
    match (&v.fan, &v.pr) {
        (Some(f), _) => Ok(ToricVariety::new(parse_fan(&read(f)?)?)),
        (None, Some(p)) => Ok(from_primitive_relations(&parse_primitive_relations(
            &read(p)?,
        )?)?),
        (None, None) => Err(Failure::Input("need --fan or --pr".into())),
    }
}

fn divisor(x: &ToricVariety, s: &str) -> Res<TorusDivisor> {
    TorusDivisor::parse_for(s, x.ray_count()).map_err(|e| match e {
        Error::DimensionMismatch { expected, got } => Failure::Input(format!(
            "divisor {s:?} has {got} coefficients, the variety has {expected} rays"
        )),
        e => e.into(),
    })
}

fn int_arg(what: &str, s: &str) -> Res<Int> {
    s.trim().parse::<Int>().map_err(|_| parse_err(what, s))
}

fn rat_arg(what: &str, s: &str) -> Res<Rat> {
    parse_rat(s.trim()).ok_or_else(|| parse_err(what, s))
}

fn load_action(a: &ActionArgs) -> Res<ActionContext> {
    let p = parse_polytope(&read(&a.polytope)?)?;
    let ctx = match (&a.functional, a.coordinate) {
        (Some(u), _) => {
            let u = parse_int_list(u).ok_or_else(|| parse_err("functional", u))?;
            ActionContext::new(p, u)?
        }
        (None, Some(j)) => ActionContext::coordinate(p, j)?,
        (None, None) => ActionContext::last_coordinate(p)?,
    };
    Ok(ctx)
}

fn render(report: &ActionReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => report.text(),
        ReportFormat::Structured => report.structured(),
    }
}

fn emit_realization(r: &Realization, out: &RealizationOut) -> Res<String> {
    if let Some(path) = &out.out {
        write(path, &write_polytope(&r.polytope))?;
    }
    if let Some(path) = &out.off {
        write(path, &write_off(&r.polytope)?)?;
    }
    let report = r.action_info()?;
    let mut s = String::new();
    if let ReportFormat::Structured = out.report {
        writeln!(s, "realization v1").unwrap();
        writeln!(s, "vertices {}", r.polytope.vertex_count()).unwrap();
        writeln!(s, "scale {}", r.scale).unwrap();
        writeln!(s, "sharp {}", report.is_sharp()).unwrap();
        writeln!(s, "construction {}", r.construction).unwrap();
    }
    s.push_str(&render(&report, out.report));
    Ok(s)
}

fn describe(x: &ToricVariety) -> String {
    let cg = x.class_group();
    let torsion: Vec<String> = cg.torsion_orders().iter().map(|t| t.to_string()).collect();
    let mut s = String::new();
    writeln!(s, "dim {}", x.dim()).unwrap();
    writeln!(s, "rays {}", x.ray_count()).unwrap();
    writeln!(s, "max_cones {}", x.fan().cones().len()).unwrap();
    writeln!(s, "complete {}", x.is_complete()).unwrap();
    writeln!(s, "simplicial {}", x.is_simplicial()).unwrap();
    writeln!(s, "smooth {}", x.is_smooth()).unwrap();
    writeln!(s, "fano {}", x.is_complete() && x.is_fano()).unwrap();
    writeln!(
        s,
        "class_group rank {} torsion [{}]",
        cg.rank(),
        torsion.join(",")
    )
    .unwrap();
    s
}

fn run(cli: Cli) -> Res<String> {
    match cli.command {
        Command::Describe(v) => Ok(describe(&load_variety(&v)?)),
        Command::Realize {
            variety,
            a,
            b,
            ell,
            out,
        } => {
            let x = load_variety(&variety)?;
            let (a, b) = (divisor(&x, &a)?, divisor(&x, &b)?);
            let ell = int_arg("ell", &ell)?;
            let r = realize::geometric_realization(&x, &a, &b, &ell)?;
            emit_realization(&r, &out)
        }
        Command::SharpRealize {
            variety,
            a,
            b,
            seed,
            out,
        } => {
            let x = load_variety(&variety)?;
            let (a, b) = (divisor(&x, &a)?, divisor(&x, &b)?);
            let r = realize::sharp_realization(&x, &a, &b, seed)?;
            emit_realization(&r, &out)
        }
        Command::FanoRealize {
            variety,
            h,
            prose_sign,
            out,
        } => {
            let x = load_variety(&variety)?;
            let h = divisor(&x, &h)?;
            let conv = if prose_sign {
                MConvention::Prose
            } else {
                MConvention::Code
            };
            let r = realize::fano_realization(&x, &h, conv)?;
            emit_realization(&r, &out)
        }
        Command::Unpruning {
            variety,
            e,
            f,
            ca,
            cb,
            out,
        } => {
            let x = load_variety(&variety)?;
            let (e, f) = (divisor(&x, &e)?, divisor(&x, &f)?);
            let (ca, cb) = (int_arg("a", &ca)?, int_arg("b", &cb)?);
            let r = realize::unpruning(&x, &e, &f, &ca, &cb)?;
            emit_realization(&r, &out)
        }
        Command::ActionInfo { action, report } => {
            let ctx = load_action(&action)?;
            Ok(render(&ctx.action_info()?, report))
        }
        Command::Quotients { action } => {
            let ctx = load_action(&action)?;
            let q = ctx.geometric_quotients()?;
            let mut s = String::new();
            writeln!(s, "quotients {}", q.len()).unwrap();
            for (i, (t, p)) in ctx.quotient_parameters().iter().zip(&q).enumerate() {
                writeln!(s, "GX_{i} at {t}").unwrap();
                s.push_str(&write_polytope(p));
            }
            Ok(s)
        }
        Command::Pruning {
            action,
            lo,
            hi,
            out,
        } => {
            let ctx = load_action(&action)?;
            let p: RationalPolytope = ctx.pruning(&rat_arg("lo", &lo)?, &rat_arg("hi", &hi)?)?;
            let text = write_polytope(&p);
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Chambers(v) => {
            let x = load_variety(&v)?;
            let sf = chambers::secondary_fan(&x)?;
            Ok(chambers::write_chambers(&x, &sf)?)
        }
        Command::MovableCone(v) => {
            let x = load_variety(&v)?;
            let mov = chambers::movable_cone(&x)?;
            let mut s = String::new();
            writeln!(s, "movable_cone {}", mov.rays().len()).unwrap();
            for r in mov.rays() {
                let parts: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                writeln!(s, "({})", parts.join(",")).unwrap();
            }
            Ok(s)
        }
        Command::WallTest { variety, a, b } => {
            let x = load_variety(&variety)?;
            let pa = x.moment_polytope(&divisor(&x, &a)?)?;
            let pb = x.moment_polytope(&divisor(&x, &b)?)?;
            let c = FacetCounts::of(&pa, &pb)?;
            let mut s = String::new();
            writeln!(s, "facets {} {} {}", c.a, c.b, c.sum).unwrap();
            writeln!(s, "wall {}", c.is_wall_crossing()).unwrap();
            if c.is_wall_crossing() {
                writeln!(s, "type {}", c.coarse_type().key()).unwrap();
            }
            Ok(s)
        }
        Command::FromPr { input, out } => {
            let x = from_primitive_relations(&parse_primitive_relations(&read(&input)?)?)?;
            let text = write_fan(x.fan());
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Bundle {
            variety,
            twist,
            out,
        } => {
            let x = load_variety(&variety)?;
            let rows: Vec<Vec<Rat>> = twist
                .split(';')
                .map(|r| parse_rat_list(r).ok_or_else(|| parse_err("twist row", r)))
                .collect::<Res<_>>()?;
            let w = projective_bundle(&x, &rows)?;
            let text = write_fan(w.fan());
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("toric-realize: {f}");
            ExitCode::from(f.code())
        }
    }
}
