use std::path::PathBuf;
use std::process::ExitCode;

use bohrkit::functionals::{Extras, Shape, TheoremId};
use bohrkit::harness::{
    emit_report, format_g15, radius_table, render_radius_table, render_report, run_campaign_with,
    CampaignConfig, ReportFormat,
};
use bohrkit::multidim::{sharpness_scan, LtIndex};
use bohrkit::radius::{closed_form, solve_radius, RadiusId, RadiusSpec, DEFAULT_TOL};
use bohrkit::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bohrkit",
    version,
    about = "Bohr-type radii, certification campaigns and sharpness scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a radius equation.
    Radius {
        #[arg(long)]
        theorem: RadiusId,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// |f(0)|, for Thm31.
        #[arg(long)]
        a0: Option<f64>,
        /// Exponent on |f(0)|, for Thm31.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run a certification campaign from a config file or inline flags.
    Verify(VerifyArgs),
    /// Largest extremal left-hand side at radius r.
    Sharpness {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 2000)]
        a_steps: usize,
        #[arg(long)]
        s: Option<f64>,
    },
    /// Radii over the triangle 1 <= p <= p-max, 0 <= m <= p.
    Table {
        #[arg(long)]
        theorem: RadiusId,
        #[arg(long, default_value_t = 5)]
        p_max: usize,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Flat JSON campaign config.
    #[arg(long, conflicts_with_all = ["theorem", "p", "m", "samples", "seed", "r_stop", "r_step", "s", "t"])]
    config: Option<PathBuf>,
    #[arg(long)]
    theorem: Vec<TheoremId>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    r_stop: Option<f64>,
    #[arg(long)]
    r_step: Option<f64>,
    #[arg(long)]
    s: Vec<f64>,
    #[arg(long)]
    t: Vec<LtIndex>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<ReportFormat>,
}

impl VerifyArgs {
    fn into_config(self) -> Result<CampaignConfig, Error> {
        let mut config = match &self.config {
            Some(path) => CampaignConfig::from_file(path)?,
            None => {
                let defaults = CampaignConfig::default();
                CampaignConfig {
                    theorems: self.theorem,
                    pm: vec![[self.p.unwrap_or(1), self.m.unwrap_or(0)]],
                    samples: self.samples.unwrap_or(defaults.samples),
                    seed: self.seed.unwrap_or(defaults.seed),
                    r_stop: self.r_stop.unwrap_or(defaults.r_stop),
                    r_step: self.r_step.unwrap_or(defaults.r_step),
                    s_values: if self.s.is_empty() {
                        defaults.s_values.clone()
                    } else {
                        self.s
                    },
                    t_values: if self.t.is_empty() {
                        defaults.t_values.clone()
                    } else {
                        self.t
                    },
                    ..defaults
                }
            }
        };
        if let Some(output) = self.output {
            config.output = Some(output);
        }
        if let Some(format) = self.format {
            config.format = format;
        }
        config.validate()?;
        Ok(config)
    }
}

fn radius_spec(
    id: RadiusId,
    p: usize,
    m: usize,
    a0: Option<f64>,
    s: Option<f64>,
) -> Result<RadiusSpec, Error> {
    match id {
        RadiusId::Thm31 => {
            let a0 = a0.ok_or_else(|| Error::InvalidConfig("Thm31 needs --a0".into()))?;
            let s = s.ok_or_else(|| Error::InvalidConfig("Thm31 needs --s".into()))?;
            RadiusSpec::thm31(a0, s)
        }
        RadiusId::ClassicBohr => Ok(RadiusSpec::classic_bohr()),
        RadiusId::Alternating => Ok(RadiusSpec::alternating()),
        _ => RadiusSpec::new(id, Shape::new(m, p)?),
    }
}

fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::Radius {
            theorem,
            p,
            m,
            a0,
            s,
            tol,
        } => {
            let spec = radius_spec(theorem, p, m, a0, s)?;
            let radius = solve_radius(&spec, tol)?;
            println!("{}", format_g15(radius));
            if let Some(exact) = closed_form(&spec) {
                eprintln!("closed form {}", format_g15(exact));
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let config = args.into_config()?;
            let report = run_campaign_with(&config, &|row| {
                eprintln!(
                    "{} p={} m={}{} {}",
                    row.theorem,
                    row.p,
                    row.m,
                    row.t.map(|t| format!(" t={t}")).unwrap_or_default(),
                    if row.pass { "pass" } else { "FAIL" }
                );
            })?;
            match &config.output {
                Some(path) => emit_report(&report, config.format, path)?,
                None => print!("{}", with_newline(render_report(&report, config.format)?)),
            }
            Ok(report.passed())
        }
        Command::Sharpness {
            theorem,
            p,
            m,
            r,
            a_steps,
            s,
        } => {
            if a_steps == 0 {
                return Err(Error::InvalidConfig("--a-steps must be at least 1".into()));
            }
            let grid: Vec<f64> = (0..a_steps).map(|i| i as f64 / a_steps as f64).collect();
            let max = sharpness_scan(theorem, Shape::new(m, p)?, r, &grid, Extras { s })?;
            println!("{}", format_g15(max));
            eprintln!(
                "{}",
                if max > 1.0 {
                    "exceeds 1"
                } else {
                    "does not exceed 1"
                }
            );
            Ok(true)
        }
        Command::Table {
            theorem,
            p_max,
            format,
            tol,
        } => {
            let rows = radius_table(theorem, p_max, tol)?;
            print!("{}", with_newline(render_radius_table(&rows, format)?));
            Ok(true)
        }
    }
}

fn with_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
