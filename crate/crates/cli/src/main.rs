use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flowerlab::flowerpoly::{
    self, all_permutations, compute_cn_with, compute_pn_recursive_with, monic_report, pn_sequence,
    radius_polynomial_3, sample_permutations, specialization_report, symmetry_report, variety_sampling,
    CheckReport, DEFAULT_MAX_N, PETAL_VARS,
};
use flowerlab::geometry::{layout, render_svg, validate_flower, FlowerConfig, DEFAULT_TOLERANCE};
use flowerlab::pythag::{brute_force_triples, generate_triples_with, ParityRule};
use flowerlab::rational::{fraction_string, int, parse_rational};
use flowerlab::soddy::{
    check_param_constraints, descartes_holds, graham_generate, graham_inverse, integer_scale, printed_example_report,
    param_cosines, scan_with, soddy_curvatures, solve_radii_with, PrintedExample, QuadSurd, ScanReport, SoddyParams,
    DEFAULT_SCAN_LIMIT,
};
use flowerlab::{par, Error, Exec, SparsePoly};

#[derive(Parser)]
#[command(name = "flowerlab", version, about = "Flower polynomials, rational flowers and Soddy circles")]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Write data to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The flower polynomial P_n (two-factor recursion).
    Pn(PolyArgs),
    /// The squared flower polynomial C_n from its definition.
    Cn(PolyArgs),
    /// Structural checks of P_n and the worked examples.
    Verify(VerifyArgs),
    /// Cosines, radii and Descartes data for one parameter tuple.
    SoddyGen(SoddyGenArgs),
    /// Audit of the cosine parametrization over a parameter lattice.
    SoddyScan(ScanArgs),
    /// Integral Soddy quadruples from the Graham parametrization.
    Graham(GrahamArgs),
    /// Primitive solutions of x² + βy² = z².
    Pyth(PythArgs),
    /// Validate or draw a concrete flower.
    #[command(subcommand)]
    Flower(FlowerCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Svg,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long)]
    n: usize,
    /// Ceiling on n.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Square, symmetry, monicity, specialization and variety sampling.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    square: bool,
    #[arg(long)]
    symmetry: bool,
    #[arg(long)]
    monic: bool,
    #[arg(long)]
    specialization: bool,
    #[arg(long)]
    variety: bool,
    /// Block recursion for a composition of n, e.g. 2,1,2.
    #[arg(long, value_delimiter = ',')]
    composition: Option<Vec<usize>>,
    /// Compare the three-petal radius polynomial with the printed coefficients.
    #[arg(long)]
    radius: bool,
    /// Solver, validator and numeric sweep on the printed worked example.
    #[arg(long)]
    worked_example: bool,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

#[derive(Args)]
struct SoddyGenArgs {
    /// m1,n1,m2,n2
    #[arg(long, value_delimiter = ',', num_args = 1, conflicts_with = "curvatures")]
    params: Option<Vec<i64>>,
    /// k1,k2,k3: report both Descartes companions.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    curvatures: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    bound: i64,
    #[arg(long, default_value_t = DEFAULT_SCAN_LIMIT)]
    limit: i64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct GrahamArgs {
    /// Largest d2.
    #[arg(long, required_unless_present = "inverse")]
    bound: Option<i64>,
    /// m1,n1,m2,n2: report m/x, d1/x, d2/x instead.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    inverse: Option<Vec<i64>>,
}

#[derive(Args)]
struct PythArgs {
    #[arg(long)]
    beta: u64,
    #[arg(long)]
    bound: u64,
    /// List the exhaustive-search oracle instead.
    #[arg(long)]
    brute_force: bool,
    #[arg(long, value_enum, default_value = "sum")]
    rule: Rule,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Sum,
    Literal,
}

#[derive(Subcommand)]
enum FlowerCommand {
    /// Validation report for center radius followed by petal radii.
    Check {
        #[arg(required = true, num_args = 4.., allow_hyphen_values = true)]
        radii: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// SVG drawing of a valid flower.
    Render {
        #[arg(required = true, num_args = 4.., allow_hyphen_values = true)]
        radii: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. }
            | Error::BadRational(_)
            | Error::Parse { .. }
            | Error::Precondition(_)
            | Error::Json(_) => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn data(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(v) = std::env::var("FLOWERLAB_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                par::configure_threads(n);
            }
            _ => {
                eprintln!("error: FLOWERLAB_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let result = run(&cli.command, exec).and_then(|out| {
        emit(&out.text, cli.out.as_ref())?;
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn formats(format: Format, allowed: &[Format], what: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(usage(format!("unsupported --format for {what}")))
    }
}

fn poly_text(p: &SparsePoly, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", p.to_pretty()),
        _ => format!("{}\n", p.to_json()),
    }
}

fn ceiling(a: &PolyArgs) -> Result<(), Failure> {
    if a.n > a.max_n {
        return Err(usage(format!(
            "n = {} exceeds the ceiling {}; raise it with --max-n",
            a.n, a.max_n
        )));
    }
    Ok(())
}

fn run(command: &Command, exec: Exec) -> Result<Output, Failure> {
    match command {
        Command::Pn(a) => {
            formats(a.format, &[Format::Json, Format::Text], "pn")?;
            ceiling(a)?;
            let p = compute_pn_recursive_with(a.n, a.max_n, exec)?;
            Ok(Output::data(poly_text(&p, a.format)))
        }
        Command::Cn(a) => {
            formats(a.format, &[Format::Json, Format::Text], "cn")?;
            ceiling(a)?;
            let p = compute_cn_with(a.n, exec)?;
            Ok(Output::data(poly_text(&p, a.format)))
        }
        Command::Verify(a) => verify(a, exec),
        Command::SoddyGen(a) => soddy_gen(a),
        Command::SoddyScan(a) => {
            formats(a.format, &[Format::Json, Format::Csv], "soddy-scan")?;
            let report = scan_with(a.bound, a.limit, exec)?;
            eprintln!("{}", serde_json::to_string(&report.summary).expect("summary"));
            Ok(Output::data(match a.format {
                Format::Csv => report.to_csv(),
                _ => scan_json_lines(&report),
            }))
        }
        Command::Graham(a) => graham(a),
        Command::Pyth(a) => pyth(a, exec),
        Command::Flower(FlowerCommand::Check { radii, tol }) => {
            let f = FlowerConfig::parse(radii)?;
            let report = validate_flower(&f, *tol)?;
            Ok(Output {
                text: format!("{}\n", report.to_json()),
                ok: report.valid,
            })
        }
        Command::Flower(FlowerCommand::Render { radii }) => {
            let f = FlowerConfig::parse(radii)?;
            let placements = layout(&f)?;
            Ok(Output::data(render_svg(&placements)?))
        }
    }
}

fn scan_json_lines(report: &ScanReport) -> String {
    let mut out = String::new();
    for row in &report.rows {
        out.push_str(&row.to_json_value().to_string());
        out.push('\n');
    }
    out
}

fn check_json(r: &CheckReport) -> Value {
    serde_json::to_value(r).expect("check JSON")
}

fn verify(a: &VerifyArgs, exec: Exec) -> Result<Output, Failure> {
    let any_poly_check = a.all || a.square || a.symmetry || a.monic || a.specialization || a.variety;
    if !any_poly_check && a.composition.is_none() && !a.radius && !a.worked_example {
        return Err(usage("nothing to verify; pass --all or individual checks"));
    }
    let mut lines: Vec<Value> = Vec::new();
    let mut ok = true;
    let mut push = |v: Value, holds: bool| {
        ok &= holds;
        lines.push(v);
    };
    if (any_poly_check || a.composition.is_some())
        && (a.n < 2 || a.n > a.max_n) {
            return Err(Failure::from(Error::OutOfRange {
                what: "n",
                value: a.n as i64,
                range: format!("2..={}", a.max_n),
            }));
        }
    if any_poly_check {
        let seq = pn_sequence(a.n, exec);
        let pn = &seq[a.n - 1];
        if a.all || a.square {
            if a.n <= flowerpoly::PRODUCT_MAX_N {
                let r = flowerpoly::verify_square(a.n)?;
                let product = flowerpoly::compute_pn_product_with(a.n, exec)?;
                let r2 = CheckReport::compare(format!("P_{} product = recursive", a.n), &product, pn);
                push(check_json(&r), r.holds);
                push(check_json(&r2), r2.holds);
            } else {
                eprintln!("skipping C_n = P_n^2: definitional product limited to n ≤ {}", flowerpoly::PRODUCT_MAX_N);
            }
        }
        if a.all || a.symmetry {
            let perms = if a.n <= 4 { all_permutations(a.n) } else { sample_permutations(a.n, 40, a.seed) };
            let r = symmetry_report(pn, &perms);
            push(check_json(&r), r.holds);
        }
        if a.all || a.monic {
            let r = monic_report(pn);
            push(check_json(&r), r.holds);
        }
        if (a.all || a.specialization) && a.n >= 3 {
            for i in 0..a.n {
                let r = specialization_report(pn, &seq[a.n - 2], i);
                push(check_json(&r), r.holds);
            }
        }
        if (a.all || a.variety) && a.n >= 3 {
            let s = variety_sampling(pn, a.samples, a.seed, exec)?;
            let holds = s.max_residual <= a.tol;
            push(json!({"check": format!("P_{} vanishes on {} angle samples", a.n, a.samples),
                        "holds": holds, "maxResidual": s.max_residual, "worstAngles": s.worst_angles}), holds);
        }
    }
    if let Some(comp) = &a.composition {
        let r = flowerpoly::verify_general_recursion(a.n, comp)?;
        push(check_json(&r), r.holds);
    }
    if a.radius {
        let rp = radius_polynomial_3();
        let printed = flowerpoly::printed_radius_coefficients();
        let comparisons = rp.compare_printed(&printed);
        let g0_ok = rp.coefficient(0) == SparsePoly::parse_with("16*r1^4*r2^4*r3^4", &PETAL_VARS)?;
        let sym = rp.dihedral_symmetric();
        push(
            json!({"check": "radius polynomial", "holds": g0_ok && sym, "homogeneousDegree": rp.is_homogeneous(),
                   "dihedralSymmetric": sym, "g0": rp.coefficient(0).to_pretty_with(&PETAL_VARS),
                   "printedComparison": comparisons}),
            g0_ok && sym,
        );
    }
    if a.worked_example {
        let rep = printed_example_report(&PrintedExample::default())?;
        let mut v = rep.to_json_value();
        v["check"] = json!("worked example discrepancy harness");
        v["holds"] = json!(rep.agreement());
        push(v, rep.agreement());
    }
    let text = lines.iter().map(|v| format!("{v}\n")).collect();
    Ok(Output { text, ok })
}

fn soddy_params(v: &[i64]) -> Result<SoddyParams, Failure> {
    match v {
        [m1, n1, m2, n2] => Ok(SoddyParams::new(*m1, *n1, *m2, *n2)?),
        _ => Err(usage("expected four parameters m1,n1,m2,n2")),
    }
}

fn soddy_gen(a: &SoddyGenArgs) -> Result<Output, Failure> {
    if let Some(ks) = &a.curvatures {
        let ks = ks.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        let [k1, k2, k3] = ks.as_slice() else {
            return Err(usage("expected three curvatures k1,k2,k3"));
        };
        let branches = soddy_curvatures(k1, k2, k3)?;
        let holds = branches.iter().all(|k4| {
            descartes_holds(&[k1.clone().into(), k2.clone().into(), k3.clone().into(), k4.clone()])
        });
        let v = json!({
            "curvatures": [fraction_string(k1), fraction_string(k2), fraction_string(k3)],
            "companions": branches.iter().map(QuadSurd::to_json_value).collect::<Vec<_>>(),
            "display": branches.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "descartes": holds,
        });
        return Ok(Output { text: format!("{v}\n"), ok: holds });
    }
    let Some(params) = &a.params else {
        return Err(usage("pass --params m1,n1,m2,n2 or --curvatures k1,k2,k3"));
    };
    let p = soddy_params(params)?;
    let cos = param_cosines(&p);
    let ratios = graham_inverse(&p);
    let solution = solve_radii_with(&cos, a.tol)?;
    let flowers: Vec<Value> = solution
        .rational_flowers()
        .iter()
        .map(|f| {
            let (scale, center, petals) = integer_scale(&int(1), f).expect("positive radii");
            json!({
                "radii": f.iter().map(fraction_string).collect::<Vec<_>>(),
                "scale": scale.to_string(),
                "integerFlower": std::iter::once(center).chain(petals).map(|v| v.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let v = json!({
        "params": p,
        "constraints": check_param_constraints(&p),
        "constraintsHold": check_param_constraints(&p).all(),
        "cosines": cos.strings(),
        "grahamRatios": {
            "mOverX": fraction_string(&ratios.m_over_x),
            "d1OverX": fraction_string(&ratios.d1_over_x),
            "d2OverX": fraction_string(&ratios.d2_over_x),
            "identity": ratios.identity_holds(),
        },
        "solution": solution.to_json_value(),
        "rationalFlowers": flowers,
    });
    Ok(Output::data(format!("{v}\n")))
}

fn graham(a: &GrahamArgs) -> Result<Output, Failure> {
    if let Some(params) = &a.inverse {
        let p = soddy_params(params)?;
        let r = graham_inverse(&p);
        let v = json!({
            "params": p,
            "mOverX": fraction_string(&r.m_over_x),
            "d1OverX": fraction_string(&r.d1_over_x),
            "d2OverX": fraction_string(&r.d2_over_x),
            "identity": r.identity_holds(),
        });
        return Ok(Output { text: format!("{v}\n"), ok: r.identity_holds() });
    }
    let quads = graham_generate(a.bound.expect("required by clap"))?;
    let mut text = String::new();
    let mut ok = true;
    for q in &quads {
        let mut v = q.to_json_value();
        let holds = flowerlab::soddy::descartes_check(&q.quad);
        ok &= holds;
        v["descartes"] = json!(holds);
        text.push_str(&format!("{v}\n"));
    }
    Ok(Output { text, ok })
}

fn pyth(a: &PythArgs, exec: Exec) -> Result<Output, Failure> {
    let mut text = String::new();
    if a.brute_force {
        for (x, y, z) in brute_force_triples(a.beta, a.bound)? {
            text.push_str(&format!("{}\n", json!({"beta": a.beta, "x": x, "y": y, "z": z})));
        }
        return Ok(Output::data(text));
    }
    let rule = match a.rule {
        Rule::Sum => ParityRule::Sum,
        Rule::Literal => ParityRule::Literal,
    };
    let (solutions, skips) = generate_triples_with(a.beta, a.bound, rule, exec)?;
    eprintln!("{}", json!({"skipped": skips}));
    let mut ok = true;
    for s in &solutions {
        ok &= s.verify();
        text.push_str(&format!("{}\n", serde_json::to_string(s).expect("solution JSON")));
    }
    Ok(Output { text, ok })
}
