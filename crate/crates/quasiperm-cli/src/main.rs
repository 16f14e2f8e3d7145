//! Command line front end for the `quasiperm` library: weighted
//! quasisymmetric enumerators, f-polynomials, antipodes, dual-skeleton
//! degrees, collision sweeps, and a brute-force oracle.
//!
//! Exit codes: 0 success; 2 usage, parse, or validation errors; 3 size or
//! budget limits exceeded; 4 oracle mismatch.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, Sign};
use quasiperm::{
    compare_series, enumerate_fq, fq_from_provider, truncate, BuildingSet, BuildingSetProvider,
    CollisionGrouping, Error, Graph, GraphProvider, Matroid, MatroidProvider, QPolynomial,
    QSymExpr, RankProvider, DEFAULT_MAX_GROUND, DEFAULT_POINT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "quasiperm",
    version,
    about = "Exact weighted quasisymmetric enumerators for nestohedra, \
             graph associahedra, and matroid base polytopes."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the weighted enumerator F_q, grouped by descending powers of q.
    Fq(FqArgs),
    /// Print the f-polynomial (face counts by dimension).
    Fpoly(PlainArgs),
    /// Print the antipode S(F_q).
    Antipode(AntipodeArgs),
    /// Print the degree histogram of the dual polytope's 1-skeleton
    /// (graphs and building sets only).
    DualDegrees(PlainArgs),
    /// Group all n-vertex graphs up to isomorphism by their enumerator
    /// and report the colliding classes.
    Collisions(CollisionsArgs),
    /// Re-derive the truncated enumerator one weight vector at a time and
    /// compare it with the flag sum.
    Oracle(OracleArgs),
}

/// One input polytope, given as a file, a uniform matroid, or a built-in.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ObjectArgs {
    /// Graph file: first line the vertex count, then one `u v` edge per line.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Building-set file: first line the ground-set size, then one member
    /// per line as space-separated elements.
    #[arg(long, value_name = "FILE")]
    building_set: Option<PathBuf>,

    /// Matroid file: first line `n r`, then one basis per line as
    /// space-separated elements (`-` for the empty basis).
    #[arg(long, value_name = "FILE")]
    matroid: Option<PathBuf>,

    /// Uniform matroid U(n, r).
    #[arg(long, num_args = 2, value_names = ["N", "R"])]
    uniform: Option<Vec<usize>>,

    /// One of: gamma1, gamma2, gamma1-minus-15, gamma2-minus-15,
    /// gamma1-minus-15-26, gamma2-minus-15-26, m1, m2, octahedron,
    /// simplex-N, boolean-N.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args)]
struct CommonArgs {
    #[command(flatten)]
    object: ObjectArgs,

    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,

    /// Reject ground sets larger than this before enumerating flags.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_GROUND)]
    max_n: usize,
}

#[derive(Args)]
struct PlainArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FqArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Print only the q = 0 specialization.
    #[arg(long)]
    q0: bool,

    /// Composition orientation of the printed expression.
    #[arg(long, value_enum, default_value = "canonical")]
    orientation: Orientation,
}

#[derive(Args)]
struct AntipodeArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Composition orientation of the printed expression.
    #[arg(long, value_enum, default_value = "canonical")]
    orientation: Orientation,
}

#[derive(Args)]
struct CollisionsArgs {
    /// Number of vertices to sweep.
    #[arg(long, default_value_t = 6)]
    n: usize,

    /// Invariant used to group isomorphism classes.
    #[arg(long, value_enum, default_value = "q0")]
    grouping: GroupingArg,

    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Number of variables to truncate to (default: the ground-set size).
    #[arg(long, value_name = "M")]
    vars: Option<usize>,

    /// Largest number of weight vectors the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_POINT_BUDGET)]
    budget: u64,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Orientation {
    /// Blocks of each flag in increasing weight order.
    Canonical,
    /// Every composition reversed (decreasing weight order).
    Reversed,
}

#[derive(ValueEnum, Clone, Copy)]
enum GroupingArg {
    /// Group by the q = 0 part of the enumerator.
    Q0,
    /// Group by the full enumerator.
    Full,
}

enum Object {
    Graph(Graph),
    BuildingSet(BuildingSet),
    Matroid(Matroid),
}

impl Object {
    fn ground_size(&self) -> usize {
        match self {
            Object::Graph(g) => g.n(),
            Object::BuildingSet(b) => b.ground_size(),
            Object::Matroid(m) => m.ground_size(),
        }
    }

    fn fq(&self) -> Result<QSymExpr, Error> {
        match self {
            Object::Graph(g) => g.fq(),
            Object::BuildingSet(b) => b.fq_flag_sum(),
            Object::Matroid(m) => m.fq(),
        }
    }
}

type Failure = (u8, String);

fn fail(e: Error) -> Failure {
    let code = match e {
        Error::SizeOutOfRange { .. } | Error::BudgetExceeded(_) => 3,
        _ => 2,
    };
    (code, e.to_string())
}

/// Write to stdout, treating a closed pipe as a clean exit.
fn emit(text: &str) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Err((0, String::new())),
        Err(e) => Err((2, format!("cannot write output: {e}"))),
    }
}

fn emit_json(value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("values contain no non-string keys");
    emit(&format!("{text}\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err((0, _)) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Fq(args) => cmd_fq(args),
        Command::Fpoly(args) => cmd_fpoly(args),
        Command::Antipode(args) => cmd_antipode(args),
        Command::DualDegrees(args) => cmd_dual_degrees(args),
        Command::Collisions(args) => cmd_collisions(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn load(args: &ObjectArgs) -> Result<(String, Object), Failure> {
    let read = |path: &PathBuf| -> Result<String, Failure> {
        fs::read_to_string(path).map_err(|e| (2, format!("cannot read {}: {e}", path.display())))
    };
    if let Some(path) = &args.graph {
        let g = Graph::parse(&read(path)?).map_err(fail)?;
        return Ok((format!("graph {}", path.display()), Object::Graph(g)));
    }
    if let Some(path) = &args.building_set {
        let b = BuildingSet::parse(&read(path)?).map_err(fail)?;
        return Ok((format!("building set {}", path.display()), Object::BuildingSet(b)));
    }
    if let Some(path) = &args.matroid {
        let m = Matroid::parse(&read(path)?).map_err(fail)?;
        return Ok((format!("matroid {}", path.display()), Object::Matroid(m)));
    }
    if let Some(nr) = &args.uniform {
        let (n, r) = (nr[0], nr[1]);
        let m = Matroid::uniform(n, r).map_err(fail)?;
        return Ok((format!("U({n}, {r})"), Object::Matroid(m)));
    }
    let name = args.builtin.as_deref().expect("clap enforces one input");
    let object = match name {
        "gamma1" => Object::Graph(Graph::gamma1()),
        "gamma2" => Object::Graph(Graph::gamma2()),
        "gamma1-minus-15" => Object::Graph(Graph::gamma1().delete_edge(1, 5).map_err(fail)?),
        "gamma2-minus-15" => Object::Graph(Graph::gamma2().delete_edge(1, 5).map_err(fail)?),
        "gamma1-minus-15-26" => Object::Graph(
            Graph::gamma1()
                .delete_edge(1, 5)
                .and_then(|g| g.delete_edge(2, 6))
                .map_err(fail)?,
        ),
        "gamma2-minus-15-26" => Object::Graph(
            Graph::gamma2()
                .delete_edge(1, 5)
                .and_then(|g| g.delete_edge(2, 6))
                .map_err(fail)?,
        ),
        "m1" => Object::Matroid(Matroid::m1()),
        "m2" => Object::Matroid(Matroid::m2()),
        "octahedron" => Object::Matroid(Matroid::uniform(4, 2).map_err(fail)?),
        other => {
            let parameterized = other
                .strip_prefix("simplex-")
                .map(|s| (s, true))
                .or_else(|| other.strip_prefix("boolean-").map(|s| (s, false)));
            match parameterized {
                Some((suffix, simplex)) => {
                    let n: usize = suffix
                        .parse()
                        .map_err(|_| (2, format!("bad builtin size in {other:?}")))?;
                    let b = if simplex {
                        BuildingSet::simplex(n)
                    } else {
                        BuildingSet::boolean(n)
                    };
                    Object::BuildingSet(b.map_err(fail)?)
                }
                None => return Err((2, format!("unknown builtin {other:?}"))),
            }
        }
    };
    Ok((name.to_string(), object))
}

fn load_checked(common: &CommonArgs) -> Result<(String, Object), Failure> {
    let (desc, object) = load(&common.object)?;
    let n = object.ground_size();
    if n > common.max_n {
        return Err((3, format!("ground size {n} exceeds --max-n {}", common.max_n)));
    }
    Ok((desc, object))
}

fn cmd_fq(args: FqArgs) -> Result<(), Failure> {
    let (desc, object) = load_checked(&args.common)?;
    let mut expr = object.fq().map_err(fail)?;
    if args.orientation == Orientation::Reversed {
        expr = expr.reverse();
    }
    let label = if args.q0 {
        expr = q0_part(&expr);
        format!("F_0({desc})")
    } else {
        format!("F_q({desc})")
    };
    if args.common.json {
        emit_json(&serde_json::json!({
            "object": desc,
            "n": object.ground_size(),
            "expression": expr.to_json().map_err(fail)?,
        }))
    } else {
        emit(&render_grouped(&label, &expr))
    }
}

fn cmd_fpoly(args: PlainArgs) -> Result<(), Failure> {
    let (desc, object) = load_checked(&args.common)?;
    let expr = object.fq().map_err(fail)?;
    let f = quasiperm::fpolynomial(&expr).map_err(fail)?;
    if args.common.json {
        emit_json(&serde_json::json!({
            "object": desc,
            "coeffs": f.to_json(),
        }))
    } else {
        emit(&format!("f({desc}; q) = {}\n", render_poly(&f)))
    }
}

fn cmd_antipode(args: AntipodeArgs) -> Result<(), Failure> {
    let (desc, object) = load_checked(&args.common)?;
    let mut expr = object.fq().map_err(fail)?.antipode();
    if args.orientation == Orientation::Reversed {
        expr = expr.reverse();
    }
    if args.common.json {
        emit_json(&serde_json::json!({
            "object": desc,
            "n": object.ground_size(),
            "expression": expr.to_json().map_err(fail)?,
        }))
    } else {
        emit(&render_grouped(&format!("S(F_q)({desc})"), &expr))
    }
}

fn cmd_dual_degrees(args: PlainArgs) -> Result<(), Failure> {
    let (desc, object) = load_checked(&args.common)?;
    let histogram = match &object {
        Object::Graph(g) => g.dual_skeleton_degrees().map_err(fail)?,
        Object::BuildingSet(b) => b.nested_complex_skeleton().map_err(fail)?.degree_histogram(),
        Object::Matroid(_) => {
            return Err((2, "dual-degrees supports graphs and building sets".into()))
        }
    };
    if args.common.json {
        emit_json(&serde_json::json!({
            "object": desc,
            "histogram": histogram,
        }))
    } else {
        use std::fmt::Write;
        let mut text = format!("dual-skeleton degrees of {desc} (degree x count):\n");
        for (degree, count) in &histogram {
            writeln!(text, "  {degree} x {count}").expect("string write");
        }
        let vertices: usize = histogram.iter().map(|&(_, c)| c).sum();
        let edges: usize = histogram.iter().map(|&(d, c)| d * c).sum::<usize>() / 2;
        writeln!(text, "  ({vertices} vertices, {edges} edges)").expect("string write");
        emit(&text)
    }
}

fn cmd_collisions(args: CollisionsArgs) -> Result<(), Failure> {
    if args.n == 0 {
        return Err((2, "need at least one vertex".into()));
    }
    if args.n > 7 {
        return Err((3, format!("collision sweep supports at most 7 vertices, got {}", args.n)));
    }
    let grouping = match args.grouping {
        GroupingArg::Q0 => CollisionGrouping::FZero,
        GroupingArg::Full => CollisionGrouping::FullFq,
    };
    let report = Graph::collision_search(args.n, grouping).map_err(fail)?;
    if args.json {
        return emit_json(&serde_json::to_value(&report).expect("report serializes"));
    }
    use std::fmt::Write;
    let mut text = format!(
        "collisions among {}-vertex graphs (grouped by {}):\n",
        report.n, report.grouping
    );
    for (universe, name) in [(&report.connected, "connected"), (&report.all_graphs, "all")] {
        writeln!(
            text,
            "  {name}: {} classes, {} colliding pairs in {} groups",
            universe.class_count,
            universe.pair_count,
            universe.groups.len()
        )
        .expect("string write");
        for group in &universe.groups {
            writeln!(
                text,
                "    group of {} (full enumerators {}):",
                group.members.len(),
                if group.fq_equal { "equal" } else { "distinct" }
            )
            .expect("string write");
            for member in &group.members {
                writeln!(text, "      {member:?}").expect("string write");
            }
        }
    }
    emit(&text)
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    let (desc, object) = load_checked(&args.common)?;
    let n = object.ground_size();
    let vars = args.vars.unwrap_or(n);
    let report = match &object {
        Object::Graph(g) => oracle_report(&GraphProvider::new(g), vars, args.budget)?,
        Object::BuildingSet(b) => {
            oracle_report(&BuildingSetProvider::new(b).map_err(fail)?, vars, args.budget)?
        }
        Object::Matroid(m) => {
            oracle_report(&MatroidProvider::new(m).map_err(fail)?, vars, args.budget)?
        }
    };
    if args.common.json {
        emit_json(&serde_json::json!({
            "object": desc,
            "vars": vars,
            "report": report,
        }))?;
    } else if report.equal {
        emit(&format!(
            "oracle: {vars}^{n} brute-force weight vectors match the flag sum for {desc}\n"
        ))?;
    } else {
        use std::fmt::Write;
        let mut text = format!("oracle: MISMATCH for {desc} in {vars} variables; first differences:\n");
        for m in &report.mismatches {
            writeln!(
                text,
                "  x^{:?}: points give [{}], flags give [{}]",
                m.exponents,
                m.left.join(", "),
                m.right.join(", ")
            )
            .expect("string write");
        }
        emit(&text)?;
    }
    if report.equal {
        Ok(())
    } else {
        Err((4, format!("oracle mismatch for {desc}")))
    }
}

fn oracle_report<P: RankProvider>(
    provider: &P,
    vars: usize,
    budget: u64,
) -> Result<quasiperm::OracleReport, Failure> {
    let fq = fq_from_provider(provider).map_err(fail)?;
    let direct = enumerate_fq(provider, vars, budget).map_err(fail)?;
    let truncated = truncate(&fq, vars).map_err(fail)?;
    Ok(compare_series(&direct, &truncated))
}

/// The q = 0 specialization as an expression with constant coefficients.
fn q0_part(expr: &QSymExpr) -> QSymExpr {
    let mut out = QSymExpr::zero();
    for (alpha, value) in expr.eval_q(0) {
        out.add_term(alpha, &QPolynomial::constant(value));
    }
    out
}

/// Multi-line rendering grouped by descending powers of q, e.g.
/// `  q^3 ( M(4) )` / `+ q^2 ( 4 M(1,3) + 4 M(3,1) )`.
fn render_grouped(label: &str, expr: &QSymExpr) -> String {
    if expr.is_zero() {
        return format!("{label} = 0\n");
    }
    let mut by_power: BTreeMap<usize, Vec<(String, BigInt)>> = BTreeMap::new();
    for (alpha, p) in expr.terms() {
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.sign() != Sign::NoSign {
                by_power
                    .entry(k)
                    .or_default()
                    .push((format!("M{alpha}"), c.clone()));
            }
        }
    }
    let mut out = format!("{label} =\n");
    for (i, (power, terms)) in by_power.iter().rev().enumerate() {
        let joiner = if i == 0 { " " } else { "+" };
        out.push_str(&format!("{joiner} q^{power} ( {} )\n", join_terms(terms)));
    }
    out
}

fn join_terms(terms: &[(String, BigInt)]) -> String {
    let one = BigInt::from(1);
    let mut out = String::new();
    for (i, (monomial, coeff)) in terms.iter().enumerate() {
        let negative = coeff.sign() == Sign::Minus;
        let magnitude = if negative { -coeff } else { coeff.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude != one {
            out.push_str(&format!("{magnitude} "));
        }
        out.push_str(monomial);
    }
    out
}

/// One-line sparse polynomial rendering in ascending powers, e.g.
/// `6 + 12 q + 8 q^2 + q^3`.
fn render_poly(p: &QPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let one = BigInt::from(1);
    let mut out = String::new();
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.sign() == Sign::NoSign {
            continue;
        }
        let negative = c.sign() == Sign::Minus;
        let magnitude = if negative { -c } else { c.clone() };
        if first {
            if negative {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let coeff_part = if magnitude != one || k == 0 {
            format!("{magnitude}")
        } else {
            String::new()
        };
        let var_part = match k {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{k}"),
        };
        let sep = if coeff_part.is_empty() || var_part.is_empty() {
            ""
        } else {
            " "
        };
        out.push_str(&format!("{coeff_part}{sep}{var_part}"));
    }
    out
}
