//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or validation error,
//! 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::design::MemberDesign;
use crate::error::{Error, Result};
use crate::model::{validate, DesignFactors, Scenario};
use crate::optimize::{minimize_total_cost, threshold_probability};
use crate::report;
use crate::risk::{progression_trace, total_expected_cost};
use crate::study::catalog::{parse_damage, parse_frame};
use crate::study::outputs;
use crate::study::scenario_file::parse_scenario;
use crate::study::sweep::{run_study, write_study, StudyDefinition};
use crate::study::table::Table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "framerisk", version, about = "Risk-based optimal design of plane frames under column loss")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Scenario JSON file; missing keys take reference values.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Catalog frame as STORIESxBAYS (L = 6 m, H = 3 m).
    #[arg(long, value_name = "NxM")]
    frame: Option<String>,
    /// Initial damage as COLUMNSxSTORIES.
    #[arg(long, value_name = "AxB")]
    damage: Option<String>,
    /// 50-year local damage probability.
    #[arg(long = "p-ld")]
    p_ld: Option<f64>,
    /// Catenary parameter.
    #[arg(long)]
    psi: Option<f64>,
}

impl ScenarioArgs {
    fn resolve(&self) -> Result<Scenario> {
        let mut s = match &self.scenario {
            Some(p) => parse_scenario(p)?,
            None => Scenario::reference(),
        };
        if let Some(f) = &self.frame {
            let g = parse_frame(f)?;
            let reinf = s.costs.n_reinf_s;
            let (l, h) = (s.geometry.bay_length, s.geometry.story_height);
            s.geometry = g;
            if self.scenario.is_some() {
                s.geometry.bay_length = l;
                s.geometry.story_height = h;
            }
            s.costs.n_reinf_s = reinf.min(g.n_s);
        }
        if let Some(d) = &self.damage {
            s.damage = parse_damage(d)?;
        }
        if let Some(p) = self.p_ld {
            s.p_ld = p;
        }
        if let Some(psi) = self.psi {
            s.psi = psi;
        }
        validate(&s)
    }
}

#[derive(Debug, Args)]
struct FactorArgs {
    #[arg(long = "lambda-b", default_value_t = 1.0)]
    lambda_b: f64,
    #[arg(long = "lambda-c", default_value_t = 1.0)]
    lambda_c: f64,
}

impl FactorArgs {
    fn factors(&self) -> Result<DesignFactors> {
        DesignFactors::new(self.lambda_b, self.lambda_c).validate()
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of CSV.
    #[arg(long, conflicts_with = "out")]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Member capacities and strengthening factors.
    Design {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Size for normal loading only.
        #[arg(long)]
        normal: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reliability grid by design state, mode and load horizon.
    Beta {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Optimized-column λ_B.
        #[arg(long = "lambda-b", default_value_t = report::REFERENCE_OPTIMUM.lambda_b)]
        lambda_b: f64,
        /// Optimized-column λ_C.
        #[arg(long = "lambda-c", default_value_t = report::REFERENCE_OPTIMUM.lambda_c)]
        lambda_c: f64,
        /// Catenary parameter of the catenary rows.
        #[arg(long = "grid-psi", default_value_t = report::GRID_PSI)]
        grid_psi: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Total expected cost at given design factors, term by term.
    Evaluate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        factors: FactorArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Progression chain rows.
    Trace {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        factors: FactorArgs,
        /// Trace the frame designed for normal loading only.
        #[arg(long)]
        normal: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimal design factors.
    Optimize {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Threshold local damage probability.
    Threshold {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a study definition.
    Sweep {
        /// Study definition JSON.
        #[arg(long)]
        study: PathBuf,
        /// Output directory; overrides the study's own.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to the number of logical cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Regenerate the reproduction tables and figure data.
    PaperTables {
        #[arg(long, default_value = "paper_tables")]
        out: PathBuf,
        /// Worker threads; defaults to the number of logical cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Numerical(_) => EXIT_NUMERICAL,
        _ => EXIT_DATA,
    }
}

fn emit<T: serde::Serialize>(table: &Table, value: &T, output: &OutputArgs, out: &mut dyn Write) -> Result<()> {
    if output.json {
        let text = serde_json::to_string_pretty(value).map_err(|e| Error::Numerical(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else if let Some(path) = &output.out {
        table.emit_csv(path)?;
    } else {
        table.write_csv(out)?;
    }
    Ok(())
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    pool.install(f)
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Design {
            scenario,
            normal,
            output,
        } => {
            let s = scenario.resolve()?;
            let d = if normal {
                MemberDesign::normal(&s)?
            } else {
                MemberDesign::strengthened(&s)?
            };
            emit(&outputs::design_table(&d), &d, &output, out)
        }
        Command::Beta {
            scenario,
            lambda_b,
            lambda_c,
            grid_psi,
            output,
        } => {
            let s = scenario.resolve()?;
            let f = DesignFactors::new(lambda_b, lambda_c).validate()?;
            let rows = report::beta_grid(&s, f, f, grid_psi)?;
            emit(&outputs::beta_grid_table(&rows), &rows, &output, out)
        }
        Command::Evaluate {
            scenario,
            factors,
            output,
        } => {
            let s = scenario.resolve()?;
            let f = factors.factors()?;
            let d = MemberDesign::strengthened(&s)?;
            let c = total_expected_cost(&s, &d, f)?;
            emit(&outputs::evaluate_table(f, &c), &c, &output, out)
        }
        Command::Trace {
            scenario,
            factors,
            normal,
            output,
        } => {
            let mut s = scenario.resolve()?;
            let d = if normal {
                s = s.unstrengthened();
                MemberDesign::normal(&s)?
            } else {
                MemberDesign::strengthened(&s)?
            };
            let rows = progression_trace(&s, &d, factors.factors()?)?;
            emit(&outputs::trace_table(&rows), &rows, &output, out)
        }
        Command::Optimize { scenario, output } => {
            let s = scenario.resolve()?;
            let d = MemberDesign::strengthened(&s)?;
            let r = minimize_total_cost(&s, &d)?;
            emit(&outputs::optimize_table(&r), &r, &output, out)
        }
        Command::Threshold { scenario, output } => {
            let s = scenario.resolve()?;
            let d = MemberDesign::strengthened(&s)?;
            let r = threshold_probability(&s, &d)?;
            emit(&outputs::threshold_table(&r), &r, &output, out)
        }
        Command::Sweep { study, out: dir, jobs } => {
            let def = StudyDefinition::load(&study)?;
            let outcome = with_jobs(jobs, || run_study(&def))?;
            let dir = dir.unwrap_or_else(|| def.output.clone());
            let (written, dropped) = write_study(&def, &outcome, &dir)?;
            report_written(&written, dropped, out, err)
        }
        Command::PaperTables { out: dir, jobs } => {
            let (written, dropped) = with_jobs(jobs, || outputs::write_reproduction_tables(&dir))?;
            report_written(&written, dropped, out, err)
        }
    }
}

fn report_written(written: &[PathBuf], dropped: usize, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    for p in written {
        writeln!(out, "{}", p.display())?;
    }
    if dropped > 0 {
        writeln!(err, "warning: {dropped} non-finite chart points dropped")?;
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command, writing to the
/// given streams. Returns the process exit code.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match run(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
