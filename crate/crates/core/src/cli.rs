//! The `kdescent` command line. Every subcommand loads its inputs through
//! [`crate::format`], delegates to one library operation and prints a
//! byte-stable report.
//!
//! Exit codes: 0 success, 1 definitive mathematical failure, 2 input or
//! usage error.

use crate::complex::{tensor, ChainComplex};
use crate::descent::{canonical_solution, generate_system, reconstruct, truncate_extend, verify_assignment};
use crate::dg::{first_nonlinear, DGModule};
use crate::duality::{
    biduality_check, ext_sup_via_koszul, ext_table_with_budget, homothety_check_with_budget, koszul_sdc_transfer_with_budget, lifting_verify,
    Presentation, SdcOutcome, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::format::{complex_to_text, load, save, Object};
use crate::koszul::KoszulAlgebra;
use crate::ring::{parse_ring, Matrix, Ring, RingHom};
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "kdescent", version, about = "Koszul complexes, DG modules, descent systems and duality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Write the result to a file instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rings.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Chain complexes of free modules.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Koszul DG algebras.
    #[command(subcommand)]
    Koszul(KoszulCmd),
    /// DG modules over a Koszul algebra.
    #[command(subcommand)]
    Dg(DgCmd),
    /// Descent polynomial systems.
    #[command(subcommand)]
    System(SystemCmd),
    /// Extend a complex past degree m and verify the vanishing window.
    ExtendTrunc {
        #[arg(long)]
        koszul: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        s: i64,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Semidualizing checks.
    #[command(subcommand)]
    Sdc(SdcCmd),
    /// Ext modules.
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Liftings along R -> R/(x).
    #[command(subcommand)]
    Lift(LiftCmd),
}

#[derive(Subcommand, Debug)]
enum RingCmd {
    /// Parse a ring description and print its canonical form.
    New {
        description: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    /// Build a complex from ranks and differentials `d_{lo+1}, d_{lo+2}, ...`.
    New {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        /// Comma-separated ranks starting in degree `lo`.
        #[arg(long, value_delimiter = ',')]
        ranks: Vec<usize>,
        /// One matrix `[a, b; c, d]` per differential, in order.
        #[arg(long = "diff")]
        diffs: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Re-check `d^2 = 0` and report degrees, ranks and minimality.
    Check { file: PathBuf },
    /// Homology in every degree.
    Homology { file: PathBuf },
    /// Tensor product of two complexes.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Shift: degree n of the result is degree n - by of the input.
    Shift {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        by: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Brutal truncation keeping degrees >= below and/or <= above.
    Trunc {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        below: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        above: Option<i64>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum KoszulCmd {
    /// Koszul algebra on a comma-separated sequence.
    Build {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "")]
        seq: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check every DG algebra axiom on the stored matrices.
    Verify { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum DgCmd {
    /// The semifree extension `K ⊗ P`.
    Extend {
        #[arg(long)]
        koszul: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Check unitality, associativity and Leibniz.
    Verify { file: PathBuf },
    /// Check that a map between DG modules is a K-linear chain map.
    Klinear { source: PathBuf, target: PathBuf, map: PathBuf },
}

#[derive(Args, Debug)]
struct DescentInputs {
    #[arg(long)]
    koszul: PathBuf,
    #[arg(long)]
    complex: PathBuf,
    /// DG module structure on `K ⊗ P`; defaults to the canonical extension.
    #[arg(long)]
    dg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SystemCmd {
    /// Generate the polynomial system for `(K, P, F)`.
    Gen {
        #[command(flatten)]
        inputs: DescentInputs,
        /// Also write the canonical solution to this file.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate every equation at an assignment.
    Verify { system: PathBuf, assignment: PathBuf },
    /// Build the descended complex from a solution and re-check it.
    Reconstruct {
        #[command(flatten)]
        inputs: DescentInputs,
        system: PathBuf,
        assignment: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum SdcCmd {
    /// Homothety check for a module presentation; with `--koszul`, also
    /// the check for `K ⊗ C` over `K`.
    Check {
        module: PathBuf,
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        koszul: Option<PathBuf>,
    },
    /// Biduality `X -> RHom(RHom(X, C), C)`.
    Bidual {
        module: PathBuf,
        dualizer: PathBuf,
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ExtCmd {
    /// `Ext^i(M, N)` for `0 <= i <= window`.
    Table {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Largest nonvanishing Ext, directly and through `K ⊗ X`.
    Sup {
        m: PathBuf,
        x: PathBuf,
        #[arg(long)]
        koszul: PathBuf,
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
}

#[derive(Subcommand, Debug)]
enum LiftCmd {
    /// Whether `M` over `R` lifts `N` over `S = R/(x)`.
    Verify {
        m: PathBuf,
        n: PathBuf,
        /// The regular sequence, comma-separated elements of `R`.
        #[arg(long)]
        x: String,
        /// Images of the variables of `R` in `S`; defaults to matching names.
        #[arg(long)]
        images: Option<String>,
    },
}

/// A failure with its exit code.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), format!("error: {e}"))
    }
}

/// 1 for mathematical failures, 2 for malformed or unusable input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAComplex(_)
        | Error::NotAHomomorphism(_)
        | Error::NotMinimal { .. }
        | Error::RankMismatch(_)
        | Error::UnverifiedF(_)
        | Error::NonCanonicalF(_)
        | Error::VerificationFailed(_)
        | Error::WindowViolated(_)
        | Error::NotRegular(_) => 1,
        _ => 2,
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

/// Runs the command line on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "{msg}");
            code
        }
    }
}

fn read(path: &Path) -> Result<Object> {
    load(path).map_err(|e| match e {
        Error::Io(msg) => Error::Io(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn validated(path: &Path) -> Result<Object> {
    let obj = read(path)?;
    obj.validate()?;
    Ok(obj)
}

fn wrong_kind(path: &Path, obj: &Object, want: &str) -> Error {
    Error::Invalid(format!("{} holds a {}, expected {want}", path.display(), obj.kind()))
}

/// A complex, or the underlying complex of a Koszul algebra or DG module.
fn load_complex(path: &Path) -> Result<ChainComplex> {
    match validated(path)? {
        Object::Complex(c) => Ok(c),
        Object::Koszul(k) => Ok(k.complex().clone()),
        Object::Dg(m) => Ok(m.underlying().clone()),
        other => Err(wrong_kind(path, &other, "a complex")),
    }
}

fn load_koszul(path: &Path) -> Result<KoszulAlgebra> {
    match validated(path)? {
        Object::Koszul(k) => Ok(k),
        Object::Dg(m) => Ok(m.algebra().clone()),
        other => Err(wrong_kind(path, &other, "a Koszul algebra")),
    }
}

fn load_dg(path: &Path) -> Result<DGModule> {
    match validated(path)? {
        Object::Dg(m) => Ok(m),
        other => Err(wrong_kind(path, &other, "a DG module")),
    }
}

fn load_presentation(path: &Path) -> Result<Presentation> {
    match read(path)? {
        Object::Presentation(p) => Ok(p),
        Object::Ring(r) => Ok(Presentation::free(&r, 1)),
        other => Err(wrong_kind(path, &other, "a module presentation")),
    }
}

/// Writes `obj` to `-o` if given, otherwise returns its text.
fn emit(obj: &Object, out: &Output) -> Result<String> {
    match &out.output {
        Some(path) => {
            save(path, obj)?;
            Ok(String::new())
        }
        None => Ok(obj.to_text()),
    }
}

fn parse_list(r: &Ring, s: &str) -> Result<Vec<crate::ring::Elem>> {
    crate::ring::split_top_level(s).iter().filter(|t| !t.trim().is_empty()).map(|t| r.parse(t.trim())).collect()
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Ring(RingCmd::New { description, out }) => Ok((emit(&Object::Ring(parse_ring(&description)?), &out)?, 0)),
        Command::Complex(c) => complex_cmd(c),
        Command::Koszul(c) => koszul_cmd(c),
        Command::Dg(c) => dg_cmd(c),
        Command::System(c) => system_cmd(c),
        Command::ExtendTrunc { koszul, complex, s, budget, out } => {
            let k = load_koszul(&koszul)?;
            let a = load_complex(&complex)?;
            let cert = truncate_extend(&k, &a, s, budget)?;
            let mut text = format!(
                "# m={} s={} e={} top={} complete={}\n# H(M) = 0 in {}..={}\n# H(K⊗M) = 0 in {}..={}\n",
                cert.m,
                cert.s,
                cert.e,
                cert.top,
                cert.complete,
                cert.module_window.0,
                cert.module_window.1,
                cert.koszul_window.0,
                cert.koszul_window.1
            );
            match &out.output {
                Some(path) => save(path, &Object::Complex(cert.complex))?,
                None => text.push_str(&complex_to_text(&cert.complex)),
            }
            Ok((text, 0))
        }
        Command::Sdc(c) => sdc_cmd(c),
        Command::Ext(c) => ext_cmd(c),
        Command::Lift(LiftCmd::Verify { m, n, x, images }) => {
            let (m, n) = (load_presentation(&m)?, load_presentation(&n)?);
            let (r, s) = (m.ring().clone(), n.ring().clone());
            let f = match images {
                Some(text) => RingHom::new(&r, &s, parse_list(&s, &text)?)?,
                None if r.variables().is_empty() => RingHom::new(&r, &s, Vec::new())?,
                None => RingHom::by_names(&r, &s)?,
            };
            let v = lifting_verify(&f, &parse_list(&r, &x)?, &m, &n)?;
            Ok((format!("{v}\n"), if v.lifts() { 0 } else { 1 }))
        }
    }
}

fn complex_cmd(cmd: ComplexCmd) -> Outcome {
    match cmd {
        ComplexCmd::New { ring, lo, ranks, diffs, out } => {
            let r = parse_ring(&ring)?;
            if diffs.len() != ranks.len().saturating_sub(1) {
                return Err(Error::DimensionMismatch(format!("{} ranks need {} differentials", ranks.len(), ranks.len().saturating_sub(1))).into());
            }
            let ds = diffs
                .iter()
                .enumerate()
                .map(|(k, d)| Matrix::parse(&r, d, ranks[k], ranks[k + 1]))
                .collect::<Result<Vec<_>>>()?;
            let c = ChainComplex::new(&r, lo, ranks, ds)?;
            Ok((emit(&Object::Complex(c), &out)?, 0))
        }
        ComplexCmd::Check { file } => {
            let c = load_complex(&file)?;
            let ranks: Vec<String> = c.degrees().map(|n| c.rank(n).to_string()).collect();
            let mut text = match c.lo() {
                Some(lo) => format!("ok: d^2 = 0; degrees {lo}..{}; ranks {}\n", c.hi().unwrap(), ranks.join(",")),
                None => "ok: zero complex\n".to_string(),
            };
            if c.ring().is_local() {
                match c.first_unit_entry()? {
                    None => text.push_str("minimal: yes\n"),
                    Some((n, i, j)) => text.push_str(&format!("minimal: no (unit entry in d_{n} at row {i}, col {j})\n")),
                }
            }
            Ok((text, 0))
        }
        ComplexCmd::Homology { file } => {
            let c = load_complex(&file)?;
            let parts = c.degrees().map(|n| Ok(format!("H{n}: {}", c.homology(n)?.describe()))).collect::<Result<Vec<_>>>()?;
            let line = if parts.is_empty() { "0".to_string() } else { parts.join(", ") };
            Ok((line + "\n", 0))
        }
        ComplexCmd::Tensor { left, right, out } => {
            let (t, _) = tensor(&load_complex(&left)?, &load_complex(&right)?)?;
            Ok((emit(&Object::Complex(t), &out)?, 0))
        }
        ComplexCmd::Shift { file, by, out } => Ok((emit(&Object::Complex(load_complex(&file)?.shift(by)), &out)?, 0)),
        ComplexCmd::Trunc { file, below, above, out } => {
            let mut c = load_complex(&file)?;
            if below.is_none() && above.is_none() {
                return Err(Error::Invalid("give --below and/or --above".into()).into());
            }
            if let Some(m) = below {
                c = c.truncate_below(m);
            }
            if let Some(m) = above {
                c = c.truncate_above(m);
            }
            Ok((emit(&Object::Complex(c), &out)?, 0))
        }
    }
}

fn koszul_cmd(cmd: KoszulCmd) -> Outcome {
    match cmd {
        KoszulCmd::Build { ring, seq, out } => {
            let r = parse_ring(&ring)?;
            let k = KoszulAlgebra::new(&r, &parse_list(&r, &seq)?)?;
            Ok((emit(&Object::Koszul(k), &out)?, 0))
        }
        KoszulCmd::Verify { file } => {
            let Object::Koszul(k) = read(&file)? else { return Err(Error::Invalid("expected a Koszul algebra".into()).into()) };
            let report = k.verify();
            Ok((report.to_string(), if report.passed() { 0 } else { 1 }))
        }
    }
}

fn dg_cmd(cmd: DgCmd) -> Outcome {
    match cmd {
        DgCmd::Extend { koszul, complex, out } => {
            let f = DGModule::extend(&load_koszul(&koszul)?, &load_complex(&complex)?)?;
            Ok((emit(&Object::Dg(f), &out)?, 0))
        }
        DgCmd::Verify { file } => {
            let Object::Dg(m) = read(&file)? else { return Err(Error::Invalid("expected a DG module".into()).into()) };
            let report = m.verify();
            Ok((report.to_string(), if report.passed() { 0 } else { 1 }))
        }
        DgCmd::Klinear { source, target, map } => {
            let (s, t) = (load_dg(&source)?, load_dg(&target)?);
            let Object::Map(data) = read(&map)? else { return Err(Error::Invalid("expected a map".into()).into()) };
            let phi = match data.to_chain_map(s.underlying(), t.underlying()) {
                Ok(phi) => phi,
                Err(Error::NotAHomomorphism(msg)) => return Ok((format!("chain map FAIL: {msg}\n"), 1)),
                Err(e) => return Err(e.into()),
            };
            match first_nonlinear(&phi, &s, &t)? {
                None => Ok(("chain map ok\nK-linear ok\n".to_string(), 0)),
                Some((h, n)) => Ok((format!("chain map ok\nK-linear FAIL at {} in degree {n}\n", s.algebra().label(h)), 1)),
            }
        }
    }
}

fn descent_inputs(i: &DescentInputs) -> Result<(KoszulAlgebra, ChainComplex, DGModule)> {
    let k = load_koszul(&i.koszul)?;
    let p = load_complex(&i.complex)?;
    let f = match &i.dg {
        Some(path) => load_dg(path)?,
        None => DGModule::extend(&k, &p)?,
    };
    Ok((k, p, f))
}

fn system_cmd(cmd: SystemCmd) -> Outcome {
    match cmd {
        SystemCmd::Gen { inputs, solution, out } => {
            let (k, p, f) = descent_inputs(&inputs)?;
            let sys = generate_system(&k, &p, &f)?;
            if let Some(path) = solution {
                save(&path, &Object::Assignment(canonical_solution(&k, &p, &f)?))?;
            }
            Ok((emit(&Object::System(sys), &out)?, 0))
        }
        SystemCmd::Verify { system, assignment } => {
            let Object::System(sys) = read(&system)? else { return Err(Error::Invalid("expected a system".into()).into()) };
            let Object::Assignment(a) = read(&assignment)? else {
                return Err(Error::Invalid("expected an assignment".into()).into());
            };
            let report = verify_assignment(&sys, &a)?;
            Ok((format!("{report}\n"), if report.passed() { 0 } else { 1 }))
        }
        SystemCmd::Reconstruct { inputs, system, assignment, out } => {
            let (k, _, f) = descent_inputs(&inputs)?;
            let Object::System(sys) = read(&system)? else { return Err(Error::Invalid("expected a system".into()).into()) };
            let Object::Assignment(a) = read(&assignment)? else {
                return Err(Error::Invalid("expected an assignment".into()).into());
            };
            let cert = reconstruct(&k, &f, &sys, &a)?;
            Ok((emit(&Object::Complex(cert.a), &out)?, 0))
        }
    }
}

fn verdict_code(o: &SdcOutcome) -> i32 {
    match o {
        SdcOutcome::NotSemidualizing { .. } => 1,
        _ => 0,
    }
}

fn sdc_cmd(cmd: SdcCmd) -> Outcome {
    match cmd {
        SdcCmd::Check { module, window, budget, koszul } => {
            let c = load_presentation(&module)?;
            match koszul {
                None => {
                    let v = homothety_check_with_budget(&c, window, budget)?;
                    Ok((format!("{v}\n"), verdict_code(&v.outcome)))
                }
                Some(path) => {
                    let (base, dg) = koszul_sdc_transfer_with_budget(&load_koszul(&path)?, &c, window, budget)?;
                    let code = verdict_code(&base.outcome).max(verdict_code(&dg.outcome));
                    Ok((format!("R: {base}\nK: {dg}\n"), code))
                }
            }
        }
        SdcCmd::Bidual { module, dualizer, window } => {
            let v = biduality_check(&load_presentation(&module)?, &load_presentation(&dualizer)?, window)?;
            let code = match v.outcome {
                crate::duality::BidualityOutcome::Reflexive | crate::duality::BidualityOutcome::Inconclusive { .. } => 0,
                _ => 1,
            };
            Ok((format!("{v}\n"), code))
        }
    }
}

fn ext_cmd(cmd: ExtCmd) -> Outcome {
    match cmd {
        ExtCmd::Table { m, n, window, budget } => {
            let t = ext_table_with_budget(&load_presentation(&m)?, &load_presentation(&n)?, window, budget)?;
            Ok((t.to_string(), 0))
        }
        ExtCmd::Sup { m, x, koszul, window } => {
            let rep = ext_sup_via_koszul(&load_presentation(&m)?, &load_presentation(&x)?, &load_koszul(&koszul)?, window)?;
            Ok((format!("{rep}\n"), if rep.agree() { 0 } else { 1 }))
        }
    }
}
