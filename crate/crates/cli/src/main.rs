use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tenfold_cli::spec::{self, Command, GroupSpec, HomSpec, TauSpec};
use tenfold_cli::{parse_spec, run, Failure, JobSpec};

#[derive(Parser)]
#[command(name = "tenfold", version, about = "Twisted equivariant K-theory of finite symmetry groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hⁿ(X//G; A_φ) for A = Z, Z/m or U(1)
    Cohomology(Flags),
    /// The group of twists H²(G; U(1)_φ) × H¹(G; Z₂) under the graded sum
    Twists(Flags),
    /// Structure of Cl_{p,q}, its graded irreducibles and the ABS group
    Clifford(Flags),
    /// Tenfold-way blocks with provenance, next to the Wedderburn oracle
    Blocks(Flags),
    /// K-groups K^{(τ,c)+n} for n = 0, −1, …, −7
    Kgroup(Flags),
    /// Run verification suites; exits with status 1 if any check fails
    Verify(Flags),
    /// Wedderburn decomposition of the twisted group superalgebra
    Oracle(Flags),
    /// Run a TOML job spec
    Run {
        file: PathBuf,
        /// Override the output format of the spec
        #[arg(long)]
        format: Option<String>,
    },
}

#[derive(Args, Default)]
struct Flags {
    /// Preset name (Z2, Z2xZ2, Z4, D4, Q8, S3, Zn, ZaxZb, Dn, Dicn, Sn, A4)
    #[arg(long, default_value = "1")]
    group: String,
    /// Permutation generators in cycle notation, instead of --group
    #[arg(long, num_args = 1.., conflicts_with = "group")]
    perm: Vec<String>,
    /// trivial, id, p1, p2, p1p2, hom:k, or a sign table such as +-+-
    #[arg(long, default_value = "trivial", allow_hyphen_values = true)]
    phi: String,
    #[arg(long, default_value = "trivial", allow_hyphen_values = true)]
    c: String,
    /// Named cocycle (tau_id, tau_p1, tau_p2, mu, tau_klein, tau_phi), class:a,b or file:PATH
    #[arg(long)]
    tau: Option<String>,
    /// point, regular, cosets:g,h or subgroup:k
    #[arg(long)]
    gset: Option<String>,
    /// n, a..b or a,b,c
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<String>,
    /// Z, Z/m or U1
    #[arg(long, default_value = "Z")]
    coefficients: String,
    /// p,q for the clifford command
    #[arg(long)]
    signature: Option<String>,
    /// R or C
    #[arg(long, default_value = "R")]
    field: String,
    /// text or machine
    #[arg(long, default_value = "text")]
    format: String,
    /// all, or a comma-separated list of suites
    #[arg(long)]
    suite: Option<String>,
    /// Worker threads for verify sweeps (0: one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Largest group order in verify sweeps
    #[arg(long)]
    max_order: Option<usize>,
}

fn from_flags(command: Command, f: Flags) -> Result<JobSpec, Failure> {
    let arg = |name: &'static str| move |msg: String| Failure::parse(format!("--{name}: {msg}"));
    Ok(JobSpec {
        command,
        group: if f.perm.is_empty() { GroupSpec::Preset(f.group) } else { GroupSpec::Perm(f.perm) },
        phi: HomSpec::parse(&f.phi).map_err(arg("phi"))?,
        c: HomSpec::parse(&f.c).map_err(arg("c"))?,
        tau: f.tau.as_deref().map(TauSpec::parse).transpose().map_err(arg("tau"))?,
        gset: f.gset,
        degrees: f.degree.as_deref().map(spec::parse_degrees).transpose().map_err(arg("degree"))?,
        coefficients: f.coefficients.parse().map_err(arg("coefficients"))?,
        signature: f.signature.as_deref().map(spec::parse_signature).transpose().map_err(arg("signature"))?,
        field: spec::parse_field(&f.field).map_err(arg("field"))?,
        format: f.format.parse().map_err(arg("format"))?,
        suite: f.suite,
        jobs: f.jobs,
        max_order: f.max_order,
        seed: None,
    })
}

fn job(cli: Cli) -> Result<JobSpec, Failure> {
    let (command, flags) = match cli.command {
        Cmd::Cohomology(f) => (Command::Cohomology, f),
        Cmd::Twists(f) => (Command::Twists, f),
        Cmd::Clifford(f) => (Command::Clifford, f),
        Cmd::Blocks(f) => (Command::Blocks, f),
        Cmd::Kgroup(f) => (Command::Kgroup, f),
        Cmd::Verify(f) => (Command::Verify, f),
        Cmd::Oracle(f) => (Command::Oracle, f),
        Cmd::Run { file, format } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::validation(format!("{}: {e}", file.display())))?;
            let mut spec = parse_spec(&text).map_err(|e| Failure {
                message: format!("{}: {}", file.display(), e.message),
                ..e
            })?;
            if let Some(f) = format {
                spec.format = f.parse().map_err(|m: String| Failure::parse(format!("--format: {m}")))?;
            }
            return Ok(spec);
        }
    };
    from_flags(command, flags)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = job(cli).and_then(|spec| run(&spec).map(|out| (spec, out)));
    match outcome {
        Ok((spec, out)) => {
            print!("{}", out.render(spec.format));
            if out.success { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(e) => {
            eprintln!("tenfold: {e}");
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}
