//! The `qef` command line.
//!
//! Exit codes: 0 ok, 1 I/O, parse or flag errors, 2 not dual-containing,
//! 3 synthesis failure, 4 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::circuit::CliffordCircuit;
use crate::code::{ea_extend, parse_matrix, random_dual_containing, write_matrix, EaCssCode, MatrixFormat};
use crate::encoder::{synth_nonft, verify_nonft};
use crate::error::Error;
use crate::faults::{
    bound_ft, bound_nonft, min_blocks, simulate, Factors, FaultModel, InjectionMode, PropagationReport,
};
use crate::ftencoder::{plan_blocks, synth_ft, verify_ft, BlockPartition, FtEncoder, FtLayout};
use crate::gf2;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_DUAL: i32 = 2;
pub const EXIT_SYNTH: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "qef",
    version,
    about = "Encoder synthesis and error-propagation analysis for CSS and EA-CSS codes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Report n, rho1, rho2, k and the number of preshared pairs needed.
    Check(CodeArgs),
    /// Append receiver columns so the checks commute.
    Extend {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out_hx: Option<PathBuf>,
        #[arg(long)]
        out_hz: Option<PathBuf>,
    },
    /// Synthesize an encoder and write it with its column layout.
    Synth {
        #[arg(value_enum)]
        mode: Mode,
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        blocks: BlockArgs,
        /// Circuit output path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Layout JSON output path.
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Re-check a circuit against a code and layout.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        layout: PathBuf,
    },
    /// Analytic propagation bounds.
    Bounds {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        blocks: BlockArgs,
        #[arg(long)]
        p: f64,
    },
    /// Monte Carlo fault injection on a synthesized encoder.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        blocks: BlockArgs,
        #[arg(long, value_enum, default_value = "ft")]
        mode: Mode,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Defaults to $QEF_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "per-fanout")]
        injection: Injection,
    },
    /// Smallest block count whose bound beats the non-fault-tolerant one.
    MinBlocks {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 3)]
        g_max: usize,
    },
    /// Write a random dual-containing pair [I|A], [A^T|I].
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho1: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out_hx: PathBuf,
        #[arg(long)]
        out_hz: PathBuf,
        #[arg(long, value_enum, default_value = "dense")]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct CodeArgs {
    #[arg(long)]
    hx: PathBuf,
    #[arg(long)]
    hz: PathBuf,
    #[arg(long, value_enum, default_value = "dense")]
    format: Format,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct BlockArgs {
    /// Number of near-equal blocks.
    #[arg(long, conflicts_with = "boundaries")]
    blocks: Option<usize>,
    /// 1-based data qubits after which a block ends, e.g. `6` or `4,8`.
    #[arg(long, value_delimiter = ',')]
    boundaries: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Mode {
    Nonft,
    Ft,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dense,
    Alist,
}

impl From<Format> for MatrixFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Dense => MatrixFormat::Dense,
            Format::Alist => MatrixFormat::Alist,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Injection {
    PerFanout,
    PerGate,
}

impl From<Injection> for InjectionMode {
    fn from(i: Injection) -> Self {
        match i {
            Injection::PerFanout => InjectionMode::PerFanout,
            Injection::PerGate => InjectionMode::PerGate,
        }
    }
}

/// Layout JSON written by `synth` and read by `verify`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum LayoutFile {
    Nonft {
        qubits: usize,
        /// Standard position `j` holds column `column_perm[j]`.
        column_perm: Vec<usize>,
        /// Columns prepared in `|0>` before encoding.
        ancillas: Vec<usize>,
        receivers: Vec<usize>,
    },
    Ft {
        qubits: usize,
        #[serde(flatten)]
        layout: FtLayout,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => EXIT_INPUT,
            Error::NotDualContaining { .. } => EXIT_NOT_DUAL,
            Error::Verification { .. } => EXIT_VERIFY,
            _ => EXIT_SYNTH,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_err(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load(args: &CodeArgs) -> Result<(gf2::BitMatrix, gf2::BitMatrix), Failure> {
    let fmt = args.format.into();
    let at = |p: &Path, e: Error| input_err(format!("{}: {e}", p.display()));
    let hx = parse_matrix(&read(&args.hx)?, fmt).map_err(|e| at(&args.hx, e))?;
    let hz = parse_matrix(&read(&args.hz)?, fmt).map_err(|e| at(&args.hz, e))?;
    if hx.cols() != hz.cols() {
        return Err(input_err(format!(
            "hx has {} columns but hz has {}",
            hx.cols(),
            hz.cols()
        )));
    }
    Ok((hx, hz))
}

fn load_ea(args: &CodeArgs) -> Result<EaCssCode, Failure> {
    let (hx, hz) = load(args)?;
    Ok(ea_extend(&hx, &hz)?)
}

fn check_p(p: f64) -> Result<FaultModel, Failure> {
    FaultModel::new(p).map_err(|e| input_err(e.to_string()))
}

fn partition(ea: &EaCssCode, b: &BlockArgs) -> Result<BlockPartition, Failure> {
    Ok(match (&b.boundaries, b.blocks) {
        (Some(cuts), _) => BlockPartition::from_boundaries(ea.n(), cuts)?,
        (None, Some(g)) => plan_blocks(ea.n(), g)?,
        (None, None) => plan_blocks(ea.n(), 2.min(ea.n()))?,
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

fn seed_or_env(seed: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var("QEF_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| input_err(format!("QEF_SEED='{v}' is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

#[derive(Serialize)]
struct CheckReport {
    n: usize,
    rho1: usize,
    rho2: usize,
    k: usize,
    c: usize,
    dual_containing: bool,
}

fn cmd_check(args: &CodeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (hx, hz) = load(args)?;
    let c = hx.mul(&hz.transpose()).rank();
    let n = hx.cols();
    let (r1, r2) = (hx.rank(), hz.rank());
    let rep = CheckReport {
        n,
        rho1: hx.rows(),
        rho2: hz.rows(),
        k: (n + c).saturating_sub(r1 + r2),
        c,
        dual_containing: c == 0,
    };
    if args.json {
        let _ = writeln!(out, "{}", to_json(&rep));
    } else {
        let _ = writeln!(
            out,
            "n = {}\nrho1 = {}\nrho2 = {}\nk = {}\nc = {}",
            rep.n, rep.rho1, rep.rho2, rep.k, rep.c
        );
        let _ = writeln!(
            out,
            "{}",
            if c == 0 {
                "dual-containing"
            } else {
                "not dual-containing"
            }
        );
    }
    Ok(if c == 0 { EXIT_OK } else { EXIT_NOT_DUAL })
}

fn cmd_extend(
    args: &CodeArgs,
    out_hx: Option<&Path>,
    out_hz: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let ea = load_ea(args)?;
    let fmt = args.format.into();
    let (tx, tz) = (write_matrix(ea.code().hx(), fmt), write_matrix(ea.code().hz(), fmt));
    match (out_hx, out_hz) {
        (Some(a), Some(b)) => {
            write_file(a, &tx)?;
            write_file(b, &tz)?;
        }
        (None, None) => {
            let _ = write!(out, "# hx\n{tx}# hz\n{tz}");
        }
        _ => return Err(input_err("--out-hx and --out-hz go together".into())),
    }
    Ok(EXIT_OK)
}

fn cmd_synth(
    mode: Mode,
    args: &CodeArgs,
    blocks: &BlockArgs,
    out_path: Option<&Path>,
    layout_path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let ea = load_ea(args)?;
    let (circuit, layout) = match mode {
        Mode::Nonft => {
            let enc = synth_nonft(ea.code())?;
            let sf = &enc.standard;
            let ancillas = sf.column_perm[..sf.rho1() + sf.rho2()].to_vec();
            verify_nonft(ea.code(), &enc.encoder, &ancillas)?;
            let layout = LayoutFile::Nonft {
                qubits: sf.n(),
                column_perm: sf.column_perm.clone(),
                ancillas,
                receivers: ea.receiver_cols(),
            };
            (enc.encoder, layout)
        }
        Mode::Ft => {
            let part = partition(&ea, blocks)?;
            let FtEncoder {
                encoder, layout, trace, ..
            } = synth_ft(&ea, &part)?;
            for w in &trace.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            verify_ft(&ea, &layout, &encoder)?;
            (
                encoder,
                LayoutFile::Ft {
                    qubits: layout.total(),
                    layout,
                },
            )
        }
    };
    let text = circuit.serialize();
    match out_path {
        Some(p) => write_file(p, &text)?,
        None => {
            let _ = write!(out, "{text}");
        }
    }
    if let Some(p) = layout_path {
        write_file(p, &(to_json(&layout) + "\n"))?;
    }
    if args.json && out_path.is_some() {
        let _ = writeln!(
            out,
            "{}",
            serde_json::json!({"qubits": circuit.qubits(), "gates": circuit.len(), "cx": circuit.cx_count()})
        );
    }
    Ok(EXIT_OK)
}

fn cmd_verify(circuit: &Path, args: &CodeArgs, layout: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let ea = load_ea(args)?;
    let c = CliffordCircuit::parse(&read(circuit)?).map_err(|e| input_err(format!("{}: {e}", circuit.display())))?;
    let lf: LayoutFile =
        serde_json::from_str(&read(layout)?).map_err(|e| input_err(format!("{}: {e}", layout.display())))?;
    match &lf {
        LayoutFile::Nonft { ancillas, .. } => verify_nonft(ea.code(), &c, ancillas)?,
        LayoutFile::Ft { layout, .. } => {
            verify_ft(&ea, layout, &c)?;
        }
    }
    if args.json {
        let _ = writeln!(out, "{}", serde_json::json!({"verified": true}));
    } else {
        let _ = writeln!(out, "ok");
    }
    Ok(EXIT_OK)
}

fn print_report(rep: &PropagationReport, json: bool, out: &mut dyn Write) {
    if json {
        let _ = writeln!(out, "{}", to_json(rep));
        return;
    }
    let _ = writeln!(out, "bound_nf  {:.6}", rep.bound_nf);
    let _ = writeln!(out, "bound_ft  {:.6}", rep.bound_ft);
    let f = &rep.factors;
    let _ = writeln!(out, "nonft weights  U {:?}  W {:?}", f.nonft_ab, f.nonft_a);
    let _ = writeln!(out, "ft weights     X {:?}  Z {:?}", f.ft_x, f.ft_z);
    if let Some(mc) = &rep.mc {
        let _ = writeln!(
            out,
            "mc  p={} trials={} seed={}  estimate {:.6} +/- {:.6}",
            mc.p, mc.trials, mc.seed, mc.estimate, mc.stderr
        );
    }
}

fn cmd_bounds(args: &CodeArgs, blocks: &BlockArgs, p: f64, out: &mut dyn Write) -> Result<i32, Failure> {
    check_p(p)?;
    let ea = load_ea(args)?;
    let nf = synth_nonft(ea.code())?;
    let ft = synth_ft(&ea, &partition(&ea, blocks)?)?;
    let rep = PropagationReport {
        bound_nf: bound_nonft(&nf.standard, p),
        bound_ft: bound_ft(&ft.trace, p),
        factors: Factors::new(&nf, Some(&ft.trace)),
        mc: None,
    };
    print_report(&rep, args.json, out);
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    args: &CodeArgs,
    blocks: &BlockArgs,
    mode: Mode,
    p: f64,
    trials: u64,
    seed: Option<u64>,
    injection: Injection,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let model = check_p(p)?;
    if trials == 0 {
        return Err(input_err("--trials must be at least 1".into()));
    }
    let seed = seed_or_env(seed)?;
    let ea = load_ea(args)?;
    let nf = synth_nonft(ea.code())?;
    let ft = synth_ft(&ea, &partition(&ea, blocks)?)?;
    let (circuit, protected) = match mode {
        Mode::Nonft => (&nf.encoder, ea.receiver_cols()),
        Mode::Ft => (&ft.encoder, ft.layout.protected_cols()),
    };
    let mc = simulate(circuit, model, trials, seed, &protected, injection.into())?;
    let rep = PropagationReport {
        bound_nf: bound_nonft(&nf.standard, p),
        bound_ft: bound_ft(&ft.trace, p),
        factors: Factors::new(&nf, Some(&ft.trace)),
        mc: Some(mc),
    };
    print_report(&rep, args.json, out);
    Ok(EXIT_OK)
}

fn cmd_min_blocks(args: &CodeArgs, p: f64, g_max: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    check_p(p)?;
    let ea = load_ea(args)?;
    let g = min_blocks(&ea, p, g_max)?;
    if args.json {
        let _ = writeln!(out, "{}", serde_json::json!({"p": p, "g_max": g_max, "min_blocks": g}));
    } else {
        match g {
            Some(g) => {
                let _ = writeln!(out, "{g}");
            }
            None => {
                let _ = writeln!(out, "none (no g <= {g_max} beats the non-fault-tolerant bound)");
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_random(
    n: usize,
    rho1: usize,
    seed: Option<u64>,
    out_hx: &Path,
    out_hz: &Path,
    format: Format,
) -> Result<i32, Failure> {
    if rho1 == 0 || rho1 >= n {
        return Err(input_err(format!("need 0 < rho1 < n, got rho1 = {rho1}, n = {n}")));
    }
    let (h1, h2) = random_dual_containing(n, rho1, seed_or_env(seed)?);
    write_file(out_hx, &write_matrix(&h1, format.into()))?;
    write_file(out_hz, &write_matrix(&h2, format.into()))?;
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.cmd {
        Cmd::Check(a) => cmd_check(a, out),
        Cmd::Extend { code, out_hx, out_hz } => cmd_extend(code, out_hx.as_deref(), out_hz.as_deref(), out),
        Cmd::Synth {
            mode,
            code,
            blocks,
            out: o,
            layout,
        } => cmd_synth(*mode, code, blocks, o.as_deref(), layout.as_deref(), out, err),
        Cmd::Verify { circuit, code, layout } => cmd_verify(circuit, code, layout, out),
        Cmd::Bounds { code, blocks, p } => cmd_bounds(code, blocks, *p, out),
        Cmd::Simulate {
            code,
            blocks,
            mode,
            p,
            trials,
            seed,
            injection,
        } => cmd_simulate(code, blocks, *mode, *p, *trials, *seed, *injection, out),
        Cmd::MinBlocks { code, p, g_max } => cmd_min_blocks(code, *p, *g_max, out),
        Cmd::Random {
            n,
            rho1,
            seed,
            out_hx,
            out_hz,
            format,
        } => cmd_random(*n, *rho1, *seed, out_hx, out_hz, *format),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
