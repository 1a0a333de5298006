//! `gacalc`: expression evaluation and worked examples on the geometric
//! algebra kernel. Exit codes: 0 success, 2 parse/usage error, 3 math error.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gacalc_core::analytic::{inverse, AnalyticOps};
use gacalc_core::{
    fk3r, ik6r, Algebra, CgaModel, GaError, Multivector, PowerNetwork, RationalFunction,
    Result, RobotParams3R, RobotParams6R, Scalar, Session, Signature, SLOT_NAMES,
};

#[derive(Parser)]
#[command(name = "gacalc", about = "Geometric algebra calculator", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression in a chosen algebra
    Eval(EvalArgs),
    /// Forward kinematics of a 3R planar arm (PGA rotor chain)
    Fk3r(Fk3rArgs),
    /// Inverse position kinematics of a 6R arm (CGA sphere intersection)
    Ik6r(Ik6rArgs),
    /// Nodal analysis of the three-node power network over rational functions
    Power(PowerArgs),
    /// Time algebra construction and random inverses across signatures
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ScalarDomain {
    Float,
    Rational,
    Ratfun,
}

#[derive(Args)]
struct EvalArgs {
    /// Algebra signature p,q,r
    #[arg(long, value_name = "P,Q,R")]
    sig: Option<String>,
    /// Use the conformal model of an n-dimensional Euclidean base space
    #[arg(long, value_name = "N")]
    cga: Option<u32>,
    /// Coefficient domain (ratfun provides the Laplace variable s)
    #[arg(long, value_enum, default_value = "float")]
    scalars: ScalarDomain,
    /// Print the result as JSON instead of the verbose basis form
    #[arg(long)]
    json: bool,
    /// Expression to evaluate
    expr: String,
}

#[derive(Args)]
struct Fk3rArgs {
    /// Link lengths a,b,c
    #[arg(long, value_name = "A,B,C")]
    lengths: String,
    /// Joint angles x,y,z in radians
    #[arg(long, value_name = "X,Y,Z")]
    angles: String,
}

#[derive(Args)]
struct Ik6rArgs {
    #[arg(long)]
    d1: f64,
    #[arg(long)]
    a3: f64,
    #[arg(long)]
    d4: f64,
    /// Wrist-center target x,y,z
    #[arg(long, value_name = "X,Y,Z")]
    target: String,
    /// Write the classified intersection scene as JSON to this file
    #[arg(long, value_name = "FILE")]
    emit_geometry: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct PowerArgs {
    /// Network JSON config; defaults to the built-in example network
    #[arg(long, value_name = "FILE")]
    config: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Largest signature to construct, as p,q,r
    #[arg(long, value_name = "P,Q,R", default_value = "8,0,0")]
    max_sig: String,
}

fn main() {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Fk3r(args) => cmd_fk3r(args),
        Command::Ik6r(args) => cmd_ik6r(args),
        Command::Power(args) => cmd_power(args),
        Command::Bench(args) => cmd_bench(args),
    };
    if let Err(e) = res {
        eprintln!("error: {e}");
        std::process::exit(if e.is_parse() { 2 } else { 3 });
    }
}

fn parse_triple(text: &str, what: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(GaError::parse(1, format!("{what} needs three comma-separated values")));
    }
    let mut out = [0.0; 3];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .trim()
            .parse()
            .map_err(|_| GaError::parse(1, format!("bad number \"{p}\" in {what}")))?;
    }
    Ok(out)
}

fn parse_signature(text: &str) -> Result<Signature> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(GaError::parse(1, "signature must be p,q,r".to_string()));
    }
    let nums: Vec<u32> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| GaError::parse(1, format!("bad signature component \"{p}\"")))
        })
        .collect::<Result<_>>()?;
    Signature::new(nums[0], nums[1], nums[2])
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    match args.scalars {
        ScalarDomain::Float => eval_in::<f64>(&args, |_| {}),
        ScalarDomain::Rational => eval_in::<gacalc_core::Rational>(&args, |_| {}),
        ScalarDomain::Ratfun => eval_in::<RationalFunction>(&args, |session| {
            let s = Multivector::scalar(session.algebra(), RationalFunction::s());
            session.define("s", s);
        }),
    }
}

fn eval_in<S: Scalar + AnalyticOps>(
    args: &EvalArgs,
    prepare: impl FnOnce(&mut Session<S>),
) -> Result<()> {
    let mut session = match (args.cga, &args.sig) {
        (Some(n), _) => Session::conformal(CgaModel::<S>::new(n, 0)?),
        (None, Some(sig)) => Session::new(&Algebra::get(parse_signature(sig)?)),
        (None, None) => {
            return Err(GaError::parse(1, "pass --sig p,q,r or --cga n".to_string()))
        }
    };
    prepare(&mut session);
    let value = session.eval_text(&args.expr)?;
    if args.json {
        println!("{}", value.to_json());
    } else if value.is_zero() {
        println!("0");
    } else {
        println!("{}", session.render(&value));
    }
    Ok(())
}

fn cmd_fk3r(args: Fk3rArgs) -> Result<()> {
    let params = RobotParams3R {
        lengths: parse_triple(&args.lengths, "--lengths")?,
        angles: parse_triple(&args.angles, "--angles")?,
    };
    let (x, y, phi) = fk3r(&params)?;
    println!("x = {x:.6}");
    println!("y = {y:.6}");
    println!("phi = {phi:.6}");
    Ok(())
}

fn cmd_ik6r(args: Ik6rArgs) -> Result<()> {
    let params = RobotParams6R {
        d1: args.d1,
        a3: args.a3,
        d4: args.d4,
        target: parse_triple(&args.target, "--target")?,
    };
    let result = ik6r(&params)?;
    for (i, [t1, t2, t3]) in result.solutions.iter().enumerate() {
        println!("solution {}: theta1 = {t1:.4}, theta2 = {t2:.4}, theta3 = {t3:.4}", i + 1);
    }
    if let Some(path) = args.emit_geometry {
        std::fs::write(&path, serde_json::to_string_pretty(&result.geometry).expect("json"))
            .map_err(|e| GaError::Config(format!("cannot write {}: {e}", path.display())))?;
        println!("geometry written to {}", path.display());
    }
    Ok(())
}

fn cmd_power(args: PowerArgs) -> Result<()> {
    let network = match args.config {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| GaError::Config(format!("cannot read {}: {e}", path.display())))?;
            let json: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| GaError::parse(1, format!("invalid JSON config: {e}")))?;
            PowerNetwork::from_json(&json)?
        }
        None => PowerNetwork::example(),
    };
    let solution = network.solve()?;
    println!("transfer functions: slot = [(Na)*va + (Nb)*vb] / (D)");
    for (name, node) in [
        ("v1", &solution.v1),
        ("v2", &solution.v2),
        ("v3", &solution.v3),
        ("is", &solution.is),
    ] {
        for (slot, transfer) in SLOT_NAMES.iter().zip(node.slots.iter()) {
            println!("{name}.{slot}:");
            println!("  Na = {}", transfer.num_a);
            println!("  Nb = {}", transfer.num_b);
            println!("  D  = {}", transfer.den);
        }
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let max = parse_signature(&args.max_sig)?;
    let mut sigs: Vec<Signature> = (1..=max.p).map(|p| Signature::new(p, 0, 0)).collect::<Result<_>>()?;
    if max.q >= 1 {
        sigs.push(Signature::new(max.p, 1, 0)?);
    }
    let mut rng_state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        // xorshift is plenty for benchmark inputs
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        (rng_state >> 11) as f64 / (1u64 << 53) as f64
    };
    for sig in sigs {
        let t0 = Instant::now();
        let algebra = Algebra::get(sig);
        let construction = t0.elapsed();
        let coeffs: Vec<f64> = (0..algebra.dim()).map(|_| next()).collect();
        let a = Multivector::from_coeffs(&algebra, coeffs)?;
        let t1 = Instant::now();
        let inv = inverse(&a)?;
        let inversion = t1.elapsed();
        let residue = a
            .geometric_product(&inv)
            .sub(&Multivector::one(&algebra))
            .clean(1e-9);
        if !residue.is_zero() {
            return Err(GaError::Unreachable(format!(
                "inverse check failed in {sig}: nonzero residue"
            )));
        }
        println!(
            "{sig}: construction {:?}, random inverse {:?}, A*inv(A) = 1 ok",
            construction, inversion
        );
    }
    Ok(())
}
