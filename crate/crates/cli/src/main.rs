use clap::{Parser, Subcommand, ValueEnum};
use flatwell::{
    estimate, sweep_beta, table, wavefunction, CliError, EstimateMethod, PhysicalInputs,
    ReportFormat, WavefunctionSource, WellSpec,
};
use flatwell_core::potential::{PhysicalConstants, Potential};

/// Ground-state energy estimates for the potential family V(x) = μ·|x/a|^N.
#[derive(Parser)]
#[command(name = "flatwell", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate one well's ground-state energy from the matched trial state
    Estimate {
        /// Potential exponent N (a real number >= 2)
        #[arg(long)]
        n: f64,
        /// Well strength μ
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// Well width a
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Planck constant ħ
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// Particle mass m
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Evaluation method
        #[arg(long, value_enum, default_value_t = MethodArg::Gamma)]
        method: MethodArg,
    },
    /// Tabulate trial coefficients with reference-solver and error columns
    Table {
        /// Comma-separated exponents; the token `squarewell` adds the
        /// square-well row
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Reference-solver tolerance (at least 1e-8)
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Sweep the trial coefficient C(β) over a range of β
    SweepBeta {
        #[arg(long)]
        beta_from: f64,
        #[arg(long)]
        beta_to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Dump ground-state wavefunction samples as CSV for plotting
    Wavefunction {
        /// Potential exponent N, or `squarewell`
        #[arg(long)]
        n: String,
        /// Well strength μ
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// Well width a
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Planck constant ħ
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// Particle mass m
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Which wavefunction to sample
        #[arg(long, value_enum, default_value_t = SourceArg::Trial)]
        source: SourceArg,
        /// Number of samples (at least 16)
        #[arg(long, default_value_t = 129)]
        points: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Gamma,
    Quadrature,
    Optimized,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Trial,
    Reference,
}

impl From<MethodArg> for EstimateMethod {
    fn from(arg: MethodArg) -> Self {
        match arg {
            MethodArg::Gamma => EstimateMethod::Gamma,
            MethodArg::Quadrature => EstimateMethod::Quadrature,
            MethodArg::Optimized => EstimateMethod::Optimized,
        }
    }
}

impl From<FormatArg> for ReportFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

impl From<SourceArg> for WavefunctionSource {
    fn from(arg: SourceArg) -> Self {
        match arg {
            SourceArg::Trial => WavefunctionSource::Trial,
            SourceArg::Reference => WavefunctionSource::Reference,
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };

    match dispatch(cli.command) {
        Ok(report) => {
            print!("{report}");
            0
        }
        Err(err) => {
            eprintln!("{err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<String, CliError> {
    match command {
        Command::Estimate {
            n,
            mu,
            a,
            hbar,
            mass,
            method,
        } => {
            let inputs = PhysicalInputs {
                strength: mu,
                width: a,
                hbar,
                mass,
            };
            estimate(n, &inputs, method.into())
        }
        Command::Table {
            n_list,
            format,
            tol,
        } => {
            let wells = n_list
                .iter()
                .map(|token| WellSpec::parse(token))
                .collect::<Result<Vec<_>, _>>()?;
            table(&wells, format.into(), tol)
        }
        Command::SweepBeta {
            beta_from,
            beta_to,
            step,
            format,
        } => sweep_beta(beta_from, beta_to, step, format.into()),
        Command::Wavefunction {
            n,
            mu,
            a,
            hbar,
            mass,
            source,
            points,
        } => {
            let well = WellSpec::parse(&n)?;
            // Reduce the physical inputs to the dimensionless strength; the
            // samples themselves live in reduced coordinates.
            let mu_tilde = match well {
                WellSpec::Power(exponent) => {
                    let constants = PhysicalConstants::new(hbar, mass)?;
                    let potential = Potential::power_well(mu, a, exponent)?;
                    potential.reduce(&constants).as_power()?.0
                }
                WellSpec::SquareWell => {
                    PhysicalConstants::new(hbar, mass)?;
                    1.0
                }
            };
            wavefunction(well, mu_tilde, source.into(), points)
        }
    }
}
