mod commands;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact combinatorics of 1-admissible root data.
#[derive(Parser, Debug)]
#[command(name = "minuscule", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct DatumArgs {
    /// Catalog name: gl, gsp, gspin, sp, spin, spin-, e6, e7.
    pub name: Option<String>,
    /// Size parameter of the catalog family.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// JSON root datum file (use with --gamma).
    #[arg(long, conflicts_with = "name")]
    pub file: Option<PathBuf>,
    /// Distinguished coweight: a vector or a sum of names such as gamma+omega.
    #[arg(long)]
    pub gamma: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// 1-admissibility certificate.
    Admissible {
        #[command(subcommand)]
        verb: AdmissibleVerb,
    },
    /// The graded monoid of dominant coweights below multiples of gamma.
    Semigroup {
        #[command(subcommand)]
        verb: SemigroupVerb,
    },
    /// Standard Levi subgroups.
    Levi {
        #[command(subcommand)]
        verb: LeviVerb,
    },
    /// Representations of the dual group.
    Rep {
        #[command(subcommand)]
        verb: RepVerb,
    },
    /// Stratum dimensions.
    Strata {
        #[command(subcommand)]
        verb: StrataVerb,
    },
    /// Build (H x G_m)/mu_h from a simply connected H.
    Build(BuildArgs),
    /// Check every claim of the worked examples.
    Reproduce {
        /// Restrict to one section: gl, gsp, gspin, spin, e6, e7.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum AdmissibleVerb {
    Check(DatumArgs),
}

#[derive(Subcommand, Debug)]
enum SemigroupVerb {
    /// Elements of a given degree.
    Levels {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        k: u32,
    },
    /// Hilbert basis up to a degree.
    Basis {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
}

#[derive(Subcommand, Debug)]
enum LeviVerb {
    /// The degree-one level with its certificates.
    Theta {
        #[command(flatten)]
        datum: DatumArgs,
        /// Dynkin subset, 1-based (empty for the torus).
        #[arg(long, default_value = "")]
        parabolic: String,
    },
    /// The vanishing bound c(P).
    Bound {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, default_value = "")]
        parabolic: String,
        #[arg(long, default_value_t = 2)]
        genus: u32,
        /// Defaults to dim V^gamma.
        #[arg(long)]
        r: Option<u32>,
    },
}

#[derive(Args, Debug)]
struct LambdaArgs {
    #[command(flatten)]
    datum: DatumArgs,
    /// Highest weight (defaults to gamma).
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Subcommand, Debug)]
enum RepVerb {
    Dim(LambdaArgs),
    Char(LambdaArgs),
    Tensor {
        #[command(flatten)]
        args: LambdaArgs,
        /// Second factor (defaults to gamma).
        #[arg(long)]
        mu: Option<String>,
    },
    Wedge {
        #[command(flatten)]
        args: LambdaArgs,
        #[arg(long)]
        k: usize,
    },
    Sym {
        #[command(flatten)]
        args: LambdaArgs,
        #[arg(long)]
        k: usize,
    },
    Schur {
        #[command(flatten)]
        args: LambdaArgs,
        /// Partition such as 2,1.
        #[arg(long)]
        partition: String,
    },
}

#[derive(Subcommand, Debug)]
enum StrataVerb {
    /// Partitions of d*gamma + w0(mu) with their dimensions.
    Tau {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        d: u64,
        /// Element of the positive coroot cone (defaults to 0).
        #[arg(long)]
        mu: Option<String>,
    },
    /// Orbit and fibration strata for a Levi.
    Dims {
        #[command(flatten)]
        datum: DatumArgs,
        /// Dynkin subset, 1-based (empty for the torus).
        #[arg(long, default_value = "")]
        levi: String,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct BuildArgs {
    #[command(subcommand)]
    catalog: Option<BuildCatalog>,
    /// Cartan type A, B, C, D or E.
    #[arg(long = "type")]
    cartan_type: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// spin+, spin-, a 1-based fundamental index, or a vector.
    #[arg(long)]
    gamma_h: Option<String>,
}

#[derive(Subcommand, Debug)]
enum BuildCatalog {
    /// Build and certify all worked examples.
    AppendixCatalog {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let outcome = match cli.command {
        Command::Admissible { verb: AdmissibleVerb::Check(d) } => commands::admissible_check(&d),
        Command::Semigroup { verb } => match verb {
            SemigroupVerb::Levels { datum, k } => commands::semigroup_levels(&datum, k),
            SemigroupVerb::Basis { datum, max_degree } => commands::semigroup_basis(&datum, max_degree),
        },
        Command::Levi { verb } => match verb {
            LeviVerb::Theta { datum, parabolic } => commands::levi_theta(&datum, &parabolic),
            LeviVerb::Bound { datum, parabolic, genus, r } => commands::levi_bound(&datum, &parabolic, genus, r),
        },
        Command::Rep { verb } => match verb {
            RepVerb::Dim(a) => commands::rep_dim(&a.datum, a.lambda.as_deref()),
            RepVerb::Char(a) => commands::rep_char(&a.datum, a.lambda.as_deref()),
            RepVerb::Tensor { args, mu } => commands::rep_tensor(&args.datum, args.lambda.as_deref(), mu.as_deref()),
            RepVerb::Wedge { args, k } => commands::rep_power(&args.datum, args.lambda.as_deref(), k, true),
            RepVerb::Sym { args, k } => commands::rep_power(&args.datum, args.lambda.as_deref(), k, false),
            RepVerb::Schur { args, partition } => commands::rep_schur(&args.datum, args.lambda.as_deref(), &partition),
        },
        Command::Strata { verb } => match verb {
            StrataVerb::Tau { datum, d, mu } => commands::strata_tau(&datum, d, mu.as_deref()),
            StrataVerb::Dims { datum, levi } => commands::strata_dims(&datum, &levi),
        },
        Command::Build(b) => match b.catalog {
            Some(BuildCatalog::AppendixCatalog { n }) => commands::build_catalog(n),
            None => commands::build(b.cartan_type.as_deref(), b.n, b.gamma_h.as_deref()),
        },
        Command::Reproduce { only, n } => commands::reproduce(only.as_deref(), n),
    };
    match outcome {
        Ok(out) => {
            let report = commands::Report::new(argv, out.datum, out.result, out.passed);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", out.text);
                if !out.passed {
                    println!("verification FAILED");
                }
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
