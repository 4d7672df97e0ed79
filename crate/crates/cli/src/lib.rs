//! Report generation behind the `flatwell` command-line tool.
//!
//! Every numeric field is printed with nine significant digits
//! (see [`format_number`]), so identical invocations produce byte-identical
//! reports and parsing a report back reproduces its values to better than
//! one part in 1e8.

use std::fmt;

use flatwell_core::known;
use flatwell_core::potential::{PhysicalConstants, Potential, ReducedProblem};
use flatwell_core::solver;
use flatwell_core::trial::{self, Backend, Method};

/// Errors surfaced to the command line, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed invocation (exit code 1).
    Usage(String),
    /// Domain or convergence failure from the library (exit codes 2 and 3).
    Core(flatwell_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(flatwell_core::Error::Domain(_)) => 2,
            CliError::Core(flatwell_core::Error::Convergence(_)) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<flatwell_core::Error> for CliError {
    fn from(err: flatwell_core::Error) -> Self {
        CliError::Core(err)
    }
}

/// One well in a report: a power-law exponent or the square-well token.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WellSpec {
    Power(f64),
    SquareWell,
}

impl WellSpec {
    /// Parse a `--n-list` entry: a real number or the literal `squarewell`.
    pub fn parse(token: &str) -> Result<Self, CliError> {
        let token = token.trim();
        if token == "squarewell" {
            return Ok(WellSpec::SquareWell);
        }
        token
            .parse::<f64>()
            .map(WellSpec::Power)
            .map_err(|_| CliError::Usage(format!("'{token}' is neither a number nor 'squarewell'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    Gamma,
    Quadrature,
    Optimized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavefunctionSource {
    Trial,
    Reference,
}

/// Physical inputs shared by the commands; all default to 1.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalInputs {
    pub strength: f64,
    pub width: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl Default for PhysicalInputs {
    fn default() -> Self {
        Self {
            strength: 1.0,
            width: 1.0,
            hbar: 1.0,
            mass: 1.0,
        }
    }
}

/// Nine significant digits, scientific notation.
pub fn format_number(value: f64) -> String {
    format!("{value:.8e}")
}

fn format_optional(value: Option<f64>, format: ReportFormat) -> String {
    match (value, format) {
        (Some(v), _) => format_number(v),
        (None, ReportFormat::Csv) => String::new(),
        (None, ReportFormat::Json) => "null".to_string(),
    }
}

/// `estimate` command: one well, one method, text report.
pub fn estimate(
    exponent: f64,
    inputs: &PhysicalInputs,
    method: EstimateMethod,
) -> Result<String, CliError> {
    let constants = PhysicalConstants::new(inputs.hbar, inputs.mass)?;
    let potential = Potential::power_well(inputs.strength, inputs.width, exponent)?;
    let problem = potential.reduce(&constants);
    let estimate = match method {
        EstimateMethod::Gamma => trial::energy_matched(&problem, Backend::Gamma)?,
        EstimateMethod::Quadrature => trial::energy_matched(&problem, Backend::Quadrature)?,
        EstimateMethod::Optimized => trial::energy_optimized(&problem)?,
    };
    let method_name = match estimate.method {
        Method::Gamma => "gamma",
        Method::Quadrature => "quadrature",
        Method::OptimizedAlpha => "optimized-alpha",
    };
    let beta = trial::beta_for(exponent)?;
    let mut out = String::new();
    out.push_str(&format!("method: {method_name}\n"));
    out.push_str(&format!("exponent: {}\n", format_number(exponent)));
    out.push_str(&format!("beta: {}\n", format_number(beta)));
    out.push_str(&format!(
        "reduced_energy: {}\n",
        format_number(estimate.reduced_energy)
    ));
    out.push_str(&format!(
        "physical_energy: {}\n",
        format_number(estimate.physical_energy)
    ));
    out.push_str(&format!(
        "coefficient: {}\n",
        format_number(estimate.coefficient)
    ));
    out.push_str(&format!(
        "kinetic_exponent: {}\n",
        format_number(estimate.kinetic_exponent)
    ));
    out.push_str(&format!(
        "potential_exponent: {}\n",
        format_number(estimate.potential_exponent)
    ));
    out.push_str(&format!(
        "error_bound: {}\n",
        format_number(estimate.error_bound)
    ));
    Ok(out)
}

/// One row of the coefficient table. Trial columns are absent for the
/// square well, where the trial family has no member.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub well: WellSpec,
    pub beta: Option<f64>,
    pub c_trial_gamma: Option<f64>,
    pub c_trial_quadrature: Option<f64>,
    pub c_optimized: Option<f64>,
    pub c_reference: f64,
    pub c_known: Option<f64>,
    pub rel_error_vs_reference: Option<f64>,
}

pub const TABLE_HEADER: &str =
    "N,beta,C_trial_gamma,C_trial_quadrature,C_optimized,C_reference,C_known,rel_error_vs_reference";

/// Compute the rows of the `table` command. The reference column is solved
/// at μ̃ = 1 and divided by 2^{1−1/β} so every column shares the coefficient
/// convention.
pub fn table_rows(wells: &[WellSpec], solver_tol: f64) -> Result<Vec<TableRow>, CliError> {
    wells
        .iter()
        .map(|well| table_row(*well, solver_tol))
        .collect()
}

fn table_row(well: WellSpec, solver_tol: f64) -> Result<TableRow, CliError> {
    match well {
        WellSpec::Power(exponent) => {
            let problem = ReducedProblem::power(1.0, exponent)?;
            let beta = trial::beta_for(exponent)?;
            let gamma = trial::energy_matched(&problem, Backend::Gamma)?;
            let quadrature = trial::energy_matched(&problem, Backend::Quadrature)?;
            let optimized = trial::energy_optimized(&problem)?;
            let reference = solver::solve_ground_state(&problem, solver_tol)?;
            let c_reference = reference.reduced_energy / 2.0f64.powf(1.0 - 1.0 / beta);
            let rel_error = known::relative_error(gamma.coefficient, c_reference)?;
            Ok(TableRow {
                well,
                beta: Some(beta),
                c_trial_gamma: Some(gamma.coefficient),
                c_trial_quadrature: Some(quadrature.coefficient),
                c_optimized: Some(optimized.coefficient),
                c_reference,
                c_known: known::lookup(exponent).map(|k| k.coefficient),
                rel_error_vs_reference: Some(rel_error),
            })
        }
        WellSpec::SquareWell => {
            let problem = ReducedProblem::square_well();
            let reference = solver::solve_ground_state(&problem, solver_tol)?;
            // 1/β → 0 in the steep-wall limit, so the convention factor is 2.
            let c_reference = reference.reduced_energy / 2.0;
            Ok(TableRow {
                well,
                beta: None,
                c_trial_gamma: None,
                c_trial_quadrature: None,
                c_optimized: None,
                c_reference,
                c_known: known::lookup(f64::INFINITY).map(|k| k.coefficient),
                rel_error_vs_reference: None,
            })
        }
    }
}

/// Render table rows as CSV or JSON.
pub fn render_table(rows: &[TableRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from(TABLE_HEADER);
            out.push('\n');
            for row in rows {
                let n = match row.well {
                    WellSpec::Power(exponent) => format_number(exponent),
                    WellSpec::SquareWell => "squarewell".to_string(),
                };
                out.push_str(&format!(
                    "{n},{},{},{},{},{},{},{}\n",
                    format_optional(row.beta, format),
                    format_optional(row.c_trial_gamma, format),
                    format_optional(row.c_trial_quadrature, format),
                    format_optional(row.c_optimized, format),
                    format_number(row.c_reference),
                    format_optional(row.c_known, format),
                    format_optional(row.rel_error_vs_reference, format),
                ));
            }
            out
        }
        ReportFormat::Json => {
            let mut out = String::from("[\n");
            for (i, row) in rows.iter().enumerate() {
                let n = match row.well {
                    WellSpec::Power(exponent) => format_number(exponent),
                    WellSpec::SquareWell => "\"squarewell\"".to_string(),
                };
                out.push_str(&format!(
                    "  {{\"N\": {n}, \"beta\": {}, \"C_trial_gamma\": {}, \"C_trial_quadrature\": {}, \"C_optimized\": {}, \"C_reference\": {}, \"C_known\": {}, \"rel_error_vs_reference\": {}}}{}\n",
                    format_optional(row.beta, format),
                    format_optional(row.c_trial_gamma, format),
                    format_optional(row.c_trial_quadrature, format),
                    format_optional(row.c_optimized, format),
                    format_number(row.c_reference),
                    format_optional(row.c_known, format),
                    format_optional(row.rel_error_vs_reference, format),
                    if i + 1 < rows.len() { "," } else { "" },
                ));
            }
            out.push_str("]\n");
            out
        }
    }
}

/// `table` command.
pub fn table(
    wells: &[WellSpec],
    format: ReportFormat,
    solver_tol: f64,
) -> Result<String, CliError> {
    if wells.is_empty() {
        return Err(CliError::Usage(
            "--n-list must name at least one well".into(),
        ));
    }
    Ok(render_table(&table_rows(wells, solver_tol)?, format))
}

/// `sweep-beta` command: the trial coefficient C(β) and C(β)/β over a range.
pub fn sweep_beta(from: f64, to: f64, step: f64, format: ReportFormat) -> Result<String, CliError> {
    if !from.is_finite() || !to.is_finite() || from < 2.0 || from >= to {
        return Err(flatwell_core::Error::Domain(format!(
            "sweep range must satisfy 2 <= from < to, got [{from}, {to}]"
        ))
        .into());
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(flatwell_core::Error::Domain(format!(
            "sweep step must be positive, got {step}"
        ))
        .into());
    }

    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    let mut index = 0u64;
    loop {
        let beta = from + index as f64 * step;
        if beta > to * (1.0 + 1e-12) {
            break;
        }
        let c = trial::coefficient(beta, Backend::Gamma)?;
        rows.push((beta, c, c / beta));
        index += 1;
    }

    Ok(match format {
        ReportFormat::Csv => {
            let mut out = String::from("beta,C,C_over_beta\n");
            for (beta, c, ratio) in rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    format_number(beta),
                    format_number(c),
                    format_number(ratio)
                ));
            }
            out
        }
        ReportFormat::Json => {
            let mut out = String::from("[\n");
            for (i, (beta, c, ratio)) in rows.iter().enumerate() {
                out.push_str(&format!(
                    "  {{\"beta\": {}, \"C\": {}, \"C_over_beta\": {}}}{}\n",
                    format_number(*beta),
                    format_number(*c),
                    format_number(*ratio),
                    if i + 1 < rows.len() { "," } else { "" },
                ));
            }
            out.push_str("]\n");
            out
        }
    })
}

// Smallest power-of-two multiplier m with (points+1)·m − 1 interior nodes at
// least as fine as the solver's first grid; output samples land exactly on
// fine-grid nodes.
fn subsample_factor(points: usize) -> usize {
    let mut factor = 1usize;
    while (points + 1) * factor - 1 < 2047 {
        factor *= 2;
    }
    factor
}

/// `wavefunction` command: CSV `z,psi` samples of the trial or reference
/// ground state, both normalized to ∫ψ²dz = 1 in reduced coordinates.
pub fn wavefunction(
    well: WellSpec,
    mu_tilde: f64,
    source: WavefunctionSource,
    points: usize,
) -> Result<String, CliError> {
    if points < 16 {
        return Err(flatwell_core::Error::Domain(format!(
            "at least 16 points are required, got {points}"
        ))
        .into());
    }

    let (grid, values) = match (well, source) {
        (WellSpec::SquareWell, WavefunctionSource::Trial) => {
            return Err(flatwell_core::Error::Domain(
                "the trial family has no square-well member (beta is unbounded); use --source reference"
                    .into(),
            )
            .into());
        }
        (WellSpec::SquareWell, WavefunctionSource::Reference) => {
            sample_reference(&ReducedProblem::square_well(), 1.0, points)?
        }
        (WellSpec::Power(exponent), source) => {
            let problem = ReducedProblem::power(mu_tilde, exponent)?;
            match source {
                WavefunctionSource::Trial => {
                    let estimate = trial::energy_matched(&problem, Backend::Gamma)?;
                    let half_width = solver::auto_domain(&problem, estimate.reduced_energy)?;
                    let spacing = 2.0 * half_width / (points + 1) as f64;
                    let center = (points + 1) as f64 / 2.0;
                    let grid: Vec<f64> = (1..=points)
                        .map(|i| (i as f64 - center) * spacing)
                        .collect();
                    let samples = trial::sample_trial(
                        trial::matched_alpha(&problem)?,
                        trial::beta_for(exponent)?,
                        1.0,
                        &grid,
                    )?;
                    (samples.grid, samples.values)
                }
                WavefunctionSource::Reference => {
                    let half_width =
                        solver::recommended_domain(&problem, solver::DOMAIN_SAFETY_FACTOR)?;
                    sample_reference(&problem, half_width, points)?
                }
            }
        }
    };

    let mut out = String::from("z,psi\n");
    for (z, psi) in grid.iter().zip(values.iter()) {
        out.push_str(&format!("{},{}\n", format_number(*z), format_number(*psi)));
    }
    Ok(out)
}

fn sample_reference(
    problem: &ReducedProblem,
    half_width: f64,
    points: usize,
) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let factor = subsample_factor(points);
    let fine_points = (points + 1) * factor - 1;
    let samples = solver::ground_wavefunction(problem, half_width, fine_points)?;
    let mut grid = Vec::with_capacity(points);
    let mut values = Vec::with_capacity(points);
    for output_index in 1..=points {
        let fine_index = output_index * factor - 1;
        grid.push(samples.grid[fine_index]);
        values.push(samples.values[fine_index]);
    }
    Ok((grid, values))
}
