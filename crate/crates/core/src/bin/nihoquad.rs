use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use nihoquad::conditions::{classify, thetas};
use nihoquad::curves::{build_curve_c, fq_points_off_diagonal, gamma_table, mu_square_points, HParams};
use nihoquad::field::{ExtElem, FieldSpec};
use nihoquad::identities::verify_identities;
use nihoquad::niho::{exponents, is_pp_exhaustive, is_pp_via_mu, CoefficientTriple, EXHAUSTIVE_LIMIT};
use nihoquad::sweep::{run_sweep, OutputFormat, PpOracle, SweepConfig, SweepMode};
use nihoquad::symbolic::corpus;
use nihoquad::{Error, Result};

/// Environment variable naming a modulus override file
/// (lines of `m=<int> modulus=<hex> k=<hex>`).
const MODULI_ENV: &str = "NIHOQUAD_MODULI";

#[derive(Parser)]
#[command(name = "nihoquad", version, about = "Niho-exponent permutation quadrinomials over GF(2^2m)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Degree of the base field GF(2^m).
    #[arg(long)]
    m: u32,
    /// Override the base-field modulus (hex); needs --k as well.
    #[arg(long, requires = "k")]
    modulus: Option<String>,
    /// Override the tower constant k of i^2 + i + k (hex, trace 1).
    #[arg(long, requires = "modulus")]
    k: Option<String>,
}

impl FieldArgs {
    fn spec(&self) -> Result<FieldSpec> {
        if let (Some(p), Some(k)) = (&self.modulus, &self.k) {
            let p = nihoquad::field::parse_hex(p)? as u32;
            let k = nihoquad::field::parse_hex(k)? as u32;
            return FieldSpec::with_params(self.m, p, k);
        }
        match std::env::var_os(MODULI_ENV) {
            Some(path) if !path.is_empty() => FieldSpec::from_override_file(self.m, path.as_ref()),
            _ => FieldSpec::new(self.m),
        }
    }
}

#[derive(Args)]
struct TripleArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Coefficient a1 as `A+B*i` (hex parts).
    #[arg(long, default_value = "0")]
    a1: String,
    #[arg(long, default_value = "0")]
    a2: String,
    #[arg(long, default_value = "0")]
    a3: String,
}

impl TripleArgs {
    fn parse(&self) -> Result<(FieldSpec, CoefficientTriple)> {
        let spec = self.field.spec()?;
        let t = CoefficientTriple::new(spec.parse_ext(&self.a1)?, spec.parse_ext(&self.a2)?, spec.parse_ext(&self.a3)?);
        Ok((spec, t))
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FieldOp {
    Add,
    Mul,
    Div,
    Inv,
    Pow,
    Norm,
    Frob,
    Order,
    InMu,
    IsCube,
}

#[derive(Copy, Clone, ValueEnum)]
enum CurveKind {
    /// C on the subgroup square, off the diagonal.
    C,
    /// H over GF(q), off the diagonal.
    H,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe the tower, or evaluate one operation on elements.
    Field {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, requires = "x")]
        op: Option<FieldOp>,
        #[arg(long)]
        x: Option<String>,
        /// Second operand; for `pow`, a decimal exponent.
        #[arg(long)]
        y: Option<String>,
    },
    /// Classify one triple and run the permutation oracles.
    Check {
        #[command(flatten)]
        triple: TripleArgs,
        /// Also count points of C on the subgroup square off the diagonal.
        #[arg(long)]
        points: bool,
    },
    /// Sweep triples and test both directions of the classification.
    Sweep {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "random")]
        mode: SweepMode,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "mu")]
        pp_oracle: PpOracle,
        #[arg(long, value_enum, default_value = "json-lines")]
        format: OutputFormat,
        /// Subfield degree for exhaustive-subfield mode.
        #[arg(long, default_value_t = 2)]
        subfield_degree: u32,
        /// Output file (stdout when absent).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List curve points as CSV `x_a,x_b,y_a,y_b` (hex).
    CurvePoints {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_enum, default_value = "c")]
        curve: CurveKind,
    },
    /// Check the polynomial identities on random triples.
    VerifyIdentities {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip replaying the diagonal proof script.
        #[arg(long)]
        no_diagonal: bool,
    },
    /// Replay proof scripts (`all`, `list`, or one id).
    Prove {
        target: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include per-step detail in the reports.
        #[arg(long)]
        steps: bool,
    },
}

/// Stdout that ends the process quietly once the reader goes away (`| head`).
struct PipeOut<W>(W);

impl<W: Write> PipeOut<W> {
    fn check<T>(r: io::Result<T>) -> io::Result<T> {
        match r {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
            r => r,
        }
    }
}

impl<W: Write> Write for PipeOut<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        Self::check(self.0.write(buf))
    }

    fn flush(&mut self) -> io::Result<()> {
        Self::check(self.0.flush())
    }
}

fn stdout() -> BufWriter<PipeOut<io::StdoutLock<'static>>> {
    BufWriter::new(PipeOut(io::stdout().lock()))
}

/// `println!` through [`stdout`].
macro_rules! out {
    ($($arg:tt)*) => {{
        let mut w = stdout();
        writeln!(w, $($arg)*)?;
        w.flush()?;
    }};
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    out!("{s}");
    Ok(())
}

fn cmd_field(args: &FieldArgs, op: Option<FieldOp>, x: Option<&str>, y: Option<&str>) -> Result<()> {
    let spec = args.spec()?;
    let Some(op) = op else {
        let mu = spec.mu_elements();
        let cubes = if (spec.q() + 1) % 3 == 0 {
            mu.iter().filter(|&&a| spec.is_cube_in_mu(a).unwrap_or(false)).count()
        } else {
            mu.len()
        };
        return print_json(&json!({
            "m": spec.m(),
            "q": spec.q(),
            "modulus": format!("0x{:x}", spec.modulus()),
            "k": spec.k(),
            "exponents": exponents(&spec),
            "mu_order": spec.q() + 1,
            "mu_generator": spec.mu_generator(),
            "mu_cubes": cubes,
        }));
    };
    let x = spec.parse_ext(x.expect("clap requires x"))?;
    let need_y = || -> Result<ExtElem> {
        spec.parse_ext(y.ok_or_else(|| Error::Parse("this operation needs --y".into()))?)
    };
    let value = match op {
        FieldOp::Add => json!(spec.ext_add(x, need_y()?)),
        FieldOp::Mul => json!(spec.ext_mul(x, need_y()?)),
        FieldOp::Div => json!(spec.ext_div(x, need_y()?)?),
        FieldOp::Inv => json!(spec.ext_inv(x)?),
        FieldOp::Pow => {
            let e: u64 = y
                .ok_or_else(|| Error::Parse("pow needs --y <decimal exponent>".into()))?
                .parse()
                .map_err(|_| Error::Parse("exponent must be a decimal integer".into()))?;
            json!(spec.ext_pow(x, e))
        }
        FieldOp::Norm => json!(spec.norm(x)),
        FieldOp::Frob => json!(spec.frobenius(x)),
        FieldOp::Order => json!(spec.ext_order(x)),
        FieldOp::InMu => json!(spec.in_mu(x)),
        FieldOp::IsCube => json!(spec.is_cube_in_mu(x)?),
    };
    out!("{value}");
    Ok(())
}

fn cmd_check(args: &TripleArgs, points: bool) -> Result<()> {
    let (spec, t) = args.parse()?;
    let report = classify(&spec, &t);
    let tv = thetas(&spec, &t);
    let pp_mu = is_pp_via_mu(&spec, t);
    let pp_exhaustive = (spec.q2() <= EXHAUSTIVE_LIMIT).then(|| is_pp_exhaustive(&spec, t)).transpose()?;
    let mut out = json!({
        "m": spec.m(),
        "a1": t.a1,
        "a2": t.a2,
        "a3": t.a3,
        "report": report,
        "thetas": tv,
        "pp_mu": pp_mu,
        "pp_exhaustive": pp_exhaustive,
        "agree": pp_exhaustive.map(|e| e == pp_mu),
    });
    if points {
        out["curve_c_points"] = json!(mu_square_points(&spec, &build_curve_c(&spec, &tv))?.len());
    }
    print_json(&out)
}

fn cmd_curve_points(args: &TripleArgs, curve: CurveKind) -> Result<()> {
    let (spec, t) = args.parse()?;
    let tv = thetas(&spec, &t);
    let mut w = stdout();
    writeln!(w, "x_a,x_b,y_a,y_b")?;
    match curve {
        CurveKind::C => {
            for (x, y) in mu_square_points(&spec, &build_curve_c(&spec, &tv))? {
                writeln!(w, "{},{},{},{}", x.a, x.b, y.a, y.b)?;
            }
        }
        CurveKind::H => {
            let l = gamma_table(&spec, &HParams::from_thetas(&spec, &tv)).to_poly();
            for (x, y) in fq_points_off_diagonal(&spec, &l)? {
                writeln!(w, "{x},0x0,{y},0x0")?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_sweep(field: &FieldArgs, cfg: SweepConfig, output: Option<&PathBuf>) -> Result<bool> {
    let spec = field.spec()?;
    let summary = match output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            let s = run_sweep(&spec, &cfg, &mut w)?;
            w.flush()?;
            s
        }
        None => {
            let mut w = stdout();
            let s = run_sweep(&spec, &cfg, &mut w)?;
            w.flush()?;
            s
        }
    };
    eprintln!("{summary}");
    if summary.necessity_exceptions > 0 && spec.m() < nihoquad::sweep::NECESSITY_MIN_M {
        eprintln!("note: permutations outside both conditions at m < 9 are outside the theorem's range");
    }
    Ok(summary.sufficiency_violations == 0)
}

fn cmd_verify_identities(field: &FieldArgs, count: u64, seed: u64, diagonal: bool) -> Result<bool> {
    let spec = field.spec()?;
    let report = verify_identities(&spec, count, seed, diagonal)?;
    print_json(&report)?;
    Ok(report.passed())
}

fn cmd_prove(target: &str, seed: u64, steps: bool) -> Result<bool> {
    if target == "list" {
        for e in corpus::entries() {
            out!("{:<32} {:?}", e.id, e.kind);
        }
        return Ok(true);
    }
    let reports = if target == "all" { corpus::prove_all(seed)? } else { vec![corpus::prove(target, seed)?] };
    let mut ok = true;
    for mut r in reports {
        ok &= r.passed;
        eprintln!(
            "{} {}: {}/{} assertions, {} resultant checks ({} failed)",
            if r.passed { "PASS" } else { "FAIL" },
            r.script,
            r.assertions_passed,
            r.assertions,
            r.resultant_checks,
            r.resultant_check_failures
        );
        if !steps {
            r.steps.clear();
        }
        let line = serde_json::to_string(&r).map_err(|e| Error::Io(e.to_string()))?;
        out!("{line}");
    }
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Field { field, op, x, y } => cmd_field(&field, op, x.as_deref(), y.as_deref()).map(|_| true),
        Cmd::Check { triple, points } => cmd_check(&triple, points).map(|_| true),
        Cmd::Sweep { field, mode, count, seed, pp_oracle, format, subfield_degree, output } => {
            let cfg = SweepConfig { m: field.m, mode, count, seed, pp_oracle, format, subfield_degree };
            cmd_sweep(&field, cfg, output.as_ref())
        }
        Cmd::CurvePoints { triple, curve } => cmd_curve_points(&triple, curve).map(|_| true),
        Cmd::VerifyIdentities { field, count, seed, no_diagonal } => {
            cmd_verify_identities(&field, count, seed, !no_diagonal)
        }
        Cmd::Prove { target, seed, steps } => cmd_prove(&target, seed, steps),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
