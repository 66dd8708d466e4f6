//! Seeded certification campaigns, radius tables and report emission.
//!
//! A campaign walks every `(theorem, p, m)` combination of its config (and
//! every `t` for the vector inequalities, every `s` for `Thm31`), samples
//! Schur functions lifted to the lacunary shape, evaluates the inequality on
//! the r-grid below the radius and runs the extremal scan just above it.
//! Samples are evaluated in parallel and reduced in index order, so the
//! report does not depend on the worker count.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{Evaluator, Extras, LacunaryProfile, Shape, TheoremId};
use crate::multidim::{
    sharpness_scan, slice_from_direction, vector_check_with, Direction, LtIndex, MapSpec,
};
use crate::powerseries::{required_order, TruncatedSeries, DEFAULT_TRUNCATION_TOL};
use crate::radius::{closed_form, solve_radius, RadiusId, RadiusSpec};
use crate::schur::{derive_seed, inner_order, lift_to_order, sample_schur};

/// Tolerance for the radii a campaign solves.
pub const RADIUS_TOL: f64 = 1e-12;

/// Gap kept between the last certified grid point and the radius.
pub const RADIUS_GAP: f64 = 1e-3;

/// Offset above the radius where the extremal scan runs.
pub const SCAN_OFFSET: f64 = 0.01;

const MAX_R_STOP: f64 = 0.99;

/// Mixed into the campaign seed for direction draws.
const DIRECTION_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// Output format of reports and tables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" | "txt" => Ok(ReportFormat::Text),
            other => Err(Error::InvalidConfig(format!(
                "unknown format `{other}` (expected json, csv or text)"
            ))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Text => "text",
        })
    }
}

/// Campaign settings, read from flat JSON. Missing keys take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub theorems: Vec<TheoremId>,
    /// `[p, m]` pairs.
    pub pm: Vec<[usize; 2]>,
    /// Norm exponents for the vector inequalities.
    pub t_values: Vec<LtIndex>,
    /// Dimension `n` of the vector maps.
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    /// Number of Schur parameters per sample.
    pub depth: usize,
    /// Expansion order; derived from the largest grid radius when absent.
    pub order: Option<usize>,
    pub r_start: f64,
    pub r_stop: f64,
    pub r_step: f64,
    /// Allowed negative margin.
    pub tol: f64,
    /// Exponents for `Thm31`.
    pub s_values: Vec<f64>,
    /// Random unit directions per vector campaign, in addition to `e_1`.
    pub directions: usize,
    /// Points of the `a` grid in the extremal scans.
    pub a_steps: usize,
    pub output: Option<PathBuf>,
    pub format: ReportFormat,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            theorems: Vec::new(),
            pm: vec![[1, 0]],
            t_values: vec![
                LtIndex::Finite(1.0),
                LtIndex::Finite(2.0),
                LtIndex::Infinity,
            ],
            dim: 3,
            samples: 100,
            seed: 0,
            depth: 6,
            order: None,
            r_start: 0.005,
            r_stop: MAX_R_STOP,
            r_step: 0.005,
            tol: 1e-9,
            s_values: vec![1.0],
            directions: 50,
            a_steps: 2000,
            output: None,
            format: ReportFormat::Json,
        }
    }
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::from(e).context(format!("reading {}", path.display())))?;
        Self::from_json(&text).map_err(|e| e.context(format!("parsing {}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.r_stop > 0.0 && self.r_stop <= MAX_R_STOP) {
            return bad(format!(
                "r_stop must lie in (0, {MAX_R_STOP}], got {}",
                self.r_stop
            ));
        }
        if self.r_step.is_nan() || self.r_step <= 0.0 {
            return bad(format!("r_step must be positive, got {}", self.r_step));
        }
        if !(self.r_start >= 0.0 && self.r_start <= self.r_stop) {
            return bad(format!(
                "r_start must lie in [0, r_stop], got {}",
                self.r_start
            ));
        }
        if self.samples == 0 {
            return bad("samples must be at least 1".into());
        }
        if self.depth == 0 {
            return bad("depth must be at least 1".into());
        }
        if self.dim == 0 {
            return bad("dim must be at least 1".into());
        }
        if self.a_steps == 0 {
            return bad("a_steps must be at least 1".into());
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return bad(format!("tol must be nonnegative, got {}", self.tol));
        }
        if let Some(s) = self.s_values.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return bad(format!("s values must be positive, got {s}"));
        }
        for &[p, m] in &self.pm {
            Shape::new(m, p).map_err(|e| e.context(format!("pm entry [{p}, {m}]")))?;
        }
        Ok(())
    }

    fn r_grid(&self) -> Vec<f64> {
        let count = ((self.r_stop - self.r_start) / self.r_step + 1e-9).floor() as usize;
        (0..=count)
            .map(|k| (self.r_start + k as f64 * self.r_step).min(self.r_stop))
            .collect()
    }

    fn a_grid(&self) -> Vec<f64> {
        (0..self.a_steps)
            .map(|i| i as f64 / self.a_steps as f64)
            .collect()
    }
}

/// One `(theorem, p, m[, t])` line of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Theorem name; `Thm31` rows carry the exponent as `Thm31:s=<s>`.
    pub theorem: String,
    pub p: usize,
    pub m: usize,
    pub t: Option<LtIndex>,
    /// Radius the grid stops below; for `Thm31` the smallest per-sample radius.
    pub radius: Option<f64>,
    pub radius_closed_form: Option<f64>,
    pub samples: usize,
    pub grid_points: usize,
    /// Smallest `rhs - lhs` over all samples and grid points.
    pub min_margin: Option<f64>,
    /// Largest extremal left-hand side at `radius + 0.01`.
    pub sharpness_max: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|row| row.pass)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Copy)]
struct Task {
    id: TheoremId,
    shape: Shape,
    s: Option<f64>,
    t: Option<LtIndex>,
}

impl Task {
    fn label(&self) -> String {
        match self.s {
            Some(s) => format!("{}:s={s}", self.id),
            None => self.id.name().to_string(),
        }
    }

    fn extras(&self) -> Extras {
        Extras { s: self.s }
    }
}

/// Inequalities for maps `f = z g`, checked on slices.
fn is_vector(id: TheoremId) -> bool {
    matches!(
        id,
        TheoremId::Thm34
            | TheoremId::Thm41
            | TheoremId::Cor42
            | TheoremId::Cor43
            | TheoremId::Lemma21
    )
}

/// Whether a campaign runs `id` on `shape`. Incompatible combinations of the
/// `(p, m)` grid are skipped.
fn applies(id: TheoremId, shape: Shape) -> bool {
    if !id.accepts(shape) {
        return false;
    }
    match id {
        TheoremId::ThmA
        | TheoremId::Alternating
        | TheoremId::BombieriUpper
        | TheoremId::BBUpper => shape == Shape::FULL,
        TheoremId::Cor42 | TheoremId::Cor43 => true,
        id if is_vector(id) => shape.m >= 1,
        _ => true,
    }
}

/// Whether `id` on `shape` is checked on slices of maps `f = z g`. `Cor43`
/// with `m = 0` is the scalar-valued case and runs on scalar samples.
fn on_slices(id: TheoremId, shape: Shape) -> bool {
    is_vector(id) && !(id == TheoremId::Cor43 && shape.m == 0)
}

fn has_scan(id: TheoremId, shape: Shape) -> bool {
    match id {
        TheoremId::ThmA
        | TheoremId::Thm31
        | TheoremId::Thm32
        | TheoremId::Cor33
        | TheoremId::Cor42
        | TheoremId::ThmC
        | TheoremId::Thm34
        | TheoremId::Thm41 => true,
        // The lacunary extremals only reach the Cor43 radius for m = 0.
        TheoremId::Cor43 => shape.m == 0,
        _ => false,
    }
}

fn tasks(config: &CampaignConfig) -> Result<Vec<Task>> {
    let mut out = Vec::new();
    for &id in &config.theorems {
        for &[p, m] in &config.pm {
            let shape = Shape::new(m, p)?;
            if !applies(id, shape) {
                continue;
            }
            if id == TheoremId::Thm31 {
                out.extend(config.s_values.iter().map(|&s| Task {
                    id,
                    shape,
                    s: Some(s),
                    t: None,
                }));
            } else if on_slices(id, shape) {
                out.extend(config.t_values.iter().map(|&t| Task {
                    id,
                    shape,
                    s: None,
                    t: Some(t),
                }));
            } else {
                out.push(Task {
                    id,
                    shape,
                    s: None,
                    t: None,
                });
            }
        }
    }
    Ok(out)
}

/// Runs a campaign without progress output.
pub fn run_campaign(config: &CampaignConfig) -> Result<Report> {
    run_campaign_with(config, &|_| {})
}

/// Runs a campaign, calling `progress` after each finished row.
pub fn run_campaign_with(
    config: &CampaignConfig,
    progress: &(dyn Fn(&ReportRow) + Sync),
) -> Result<Report> {
    config.validate()?;
    let mut rows = Vec::new();
    for task in tasks(config)? {
        let row = run_task(config, &task).map_err(|e| {
            e.context(format!(
                "{} (p = {}, m = {}, seed = {})",
                task.label(),
                task.shape.p,
                task.shape.m,
                config.seed
            ))
        })?;
        progress(&row);
        rows.push(row);
    }
    Ok(Report { rows })
}

/// `sup_a` of the Thm31 radius over a grid; bounds the Thm31 grids.
fn thm31_radius_ceiling(s: f64) -> Result<f64> {
    let mut best: f64 = 0.0;
    for i in 0..1000 {
        let spec = RadiusSpec::thm31(i as f64 / 1000.0, s)?;
        best = best.max(closed_form(&spec).unwrap_or(0.0));
    }
    Ok(best + 0.01)
}

struct Window {
    lo: f64,
    lo_inclusive: bool,
    hi: f64,
}

impl Window {
    fn contains(&self, r: f64) -> bool {
        (if self.lo_inclusive {
            r >= self.lo
        } else {
            r > self.lo
        }) && r <= self.hi
    }
}

fn window(config: &CampaignConfig, id: TheoremId, radius: Option<f64>) -> Window {
    let top = match radius {
        Some(radius) => (radius - RADIUS_GAP).min(config.r_stop),
        None => config.r_stop,
    };
    match id {
        TheoremId::BombieriUpper => Window {
            lo: 1.0 / 3.0,
            lo_inclusive: true,
            hi: top.min(std::f64::consts::FRAC_1_SQRT_2),
        },
        TheoremId::BBUpper => Window {
            lo: std::f64::consts::FRAC_1_SQRT_2,
            lo_inclusive: false,
            hi: top,
        },
        _ => Window {
            lo: 0.0,
            lo_inclusive: true,
            hi: top,
        },
    }
}

struct SampleResult {
    min_margin: Option<f64>,
    points: usize,
    radius: Option<f64>,
}

fn run_task(config: &CampaignConfig, task: &Task) -> Result<ReportRow> {
    let (id, shape) = (task.id, task.shape);
    let spec = if id == TheoremId::Thm31 {
        None
    } else {
        RadiusSpec::for_theorem(id, shape, task.extras(), None)?
    };
    let radius = spec
        .as_ref()
        .map(|s| solve_radius(s, RADIUS_TOL))
        .transpose()?;
    let radius_closed_form = spec.as_ref().and_then(closed_form);

    let r_max = match id {
        TheoremId::Thm31 => thm31_radius_ceiling(task.s.unwrap_or(1.0))?.min(config.r_stop),
        _ => window(config, id, radius).hi,
    };
    let order = config
        .order
        .unwrap_or_else(|| required_order(r_max.max(0.0), DEFAULT_TRUNCATION_TOL));
    let grid = config.r_grid();
    let evaluator = Evaluator {
        tol: config.tol,
        truncation_tol: DEFAULT_TRUNCATION_TOL,
    };

    let results = (0..config.samples)
        .into_par_iter()
        .map(|i| run_sample(config, task, &evaluator, radius, order, &grid, i))
        .collect::<Result<Vec<_>>>()?;

    let min_margin = results.iter().filter_map(|r| r.min_margin).reduce(f64::min);
    let grid_points = results.iter().map(|r| r.points).max().unwrap_or(0);
    let radius = match id {
        TheoremId::Thm31 => results.iter().filter_map(|r| r.radius).reduce(f64::min),
        _ => radius,
    };

    let sharpness_max = match radius {
        Some(radius) if has_scan(id, shape) && radius + SCAN_OFFSET < 1.0 => Some(sharpness_scan(
            id,
            shape,
            radius + SCAN_OFFSET,
            &config.a_grid(),
            task.extras(),
        )?),
        _ => None,
    };
    let pass = min_margin.is_none_or(|m| m >= -config.tol) && sharpness_max.is_none_or(|s| s > 1.0);

    Ok(ReportRow {
        theorem: task.label(),
        p: shape.p,
        m: shape.m,
        t: task.t,
        radius,
        radius_closed_form,
        samples: config.samples,
        grid_points,
        min_margin,
        sharpness_max,
        pass,
    })
}

/// `phi(z)` lifted to `z^offset phi(z^p)` at `order`.
fn sampled_lift(
    config: &CampaignConfig,
    seed: u64,
    offset: usize,
    p: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    let phi = sample_schur(seed, config.depth, inner_order(order, offset, p).max(1))?;
    lift_to_order(&phi, offset, p, order)
}

fn direction_for(config: &CampaignConfig, index: usize, t: LtIndex) -> Result<Direction> {
    let slot = index % (config.directions + 1);
    if slot == 0 {
        Direction::e1(config.dim, t)
    } else {
        Direction::random(
            derive_seed(config.seed ^ DIRECTION_SALT, slot as u64),
            config.dim,
            t,
        )
    }
}

fn run_sample(
    config: &CampaignConfig,
    task: &Task,
    evaluator: &Evaluator,
    radius: Option<f64>,
    order: usize,
    grid: &[f64],
    index: usize,
) -> Result<SampleResult> {
    let (id, shape) = (task.id, task.shape);
    let seed = derive_seed(config.seed, index as u64);
    let extras = task.extras();

    let check: Box<dyn Fn(f64) -> Result<f64>>;
    let mut radius = radius;
    if let Some(t) = task.t {
        let g = sampled_lift(config, seed, shape.m.saturating_sub(1), shape.p, order - 1)?;
        let map = MapSpec::GeneralZG { g, shape };
        let slice = slice_from_direction(&map, &direction_for(config, index, t)?, order)?;
        check = Box::new(move |r| Ok(vector_check_with(evaluator, id, &slice, r, extras)?.margin));
    } else {
        let offset = if id.fixes_origin() {
            shape.m + shape.p
        } else {
            shape.m
        };
        let series = sampled_lift(config, seed, offset, shape.p, order)?;
        let profile = LacunaryProfile::from_series(&series, shape)?;
        if id == TheoremId::Thm31 {
            let s = task.s.unwrap_or(1.0);
            let spec = RadiusSpec::thm31(profile.mu(0), s)?;
            radius = Some(solve_radius(&spec, RADIUS_TOL)?);
        }
        check = Box::new(move |r| Ok(evaluator.evaluate_theorem(id, &profile, r, extras)?.margin));
    }

    let window = window(config, id, radius);
    let mut min_margin: Option<f64> = None;
    let mut points = 0;
    for &r in grid.iter().filter(|&&r| window.contains(r)) {
        let margin = check(r)?;
        min_margin = Some(min_margin.map_or(margin, |m| m.min(margin)));
        points += 1;
    }
    Ok(SampleResult {
        min_margin,
        points,
        radius,
    })
}

/// Radius of `id` for one shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusRow {
    pub p: usize,
    pub m: usize,
    pub radius: f64,
    pub closed_form: Option<f64>,
}

/// Radii over the triangle `1 <= p <= p_max`, `0 <= m <= p`. Shapes the
/// equation rejects (even gaps for `Cor43`) are left out; the classical and
/// alternating radii give one row.
pub fn radius_table(id: RadiusId, p_max: usize, tol: f64) -> Result<Vec<RadiusRow>> {
    let shapes: Vec<Shape> = match id {
        RadiusId::Thm31 => {
            return Err(Error::InvalidConfig(
                "the Thm31 radius depends on |f(0)|; use the radius command with --a0".into(),
            ))
        }
        RadiusId::ClassicBohr | RadiusId::Alternating => vec![Shape::FULL],
        _ => (1..=p_max)
            .flat_map(|p| (0..=p).map(move |m| Shape { m, p }))
            .filter(|s| id != RadiusId::Cor43 || s.p % 2 == 1)
            .collect(),
    };
    shapes
        .into_iter()
        .map(|shape| {
            let spec = RadiusSpec::new(id, shape)?;
            Ok(RadiusRow {
                p: shape.p,
                m: shape.m,
                radius: solve_radius(&spec, tol)?,
                closed_form: closed_form(&spec),
            })
        })
        .collect()
}

/// Formats `x` like C's `%.15g`.
pub fn format_g15(x: f64) -> String {
    const DIGITS: i32 = 15;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn text(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].len())
                    .chain([self.header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.header.clone());
        for row in &self.rows {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_g15).unwrap_or_default()
}

fn report_table(report: &Report) -> Table {
    Table {
        header: vec![
            "theorem",
            "p",
            "m",
            "t",
            "radius",
            "radius_closed_form",
            "samples",
            "grid_points",
            "min_margin",
            "sharpness_max",
            "pass",
        ],
        rows: report
            .rows
            .iter()
            .map(|row| {
                vec![
                    row.theorem.clone(),
                    row.p.to_string(),
                    row.m.to_string(),
                    row.t.map(|t| t.to_string()).unwrap_or_default(),
                    opt(row.radius),
                    opt(row.radius_closed_form),
                    row.samples.to_string(),
                    row.grid_points.to_string(),
                    opt(row.min_margin),
                    opt(row.sharpness_max),
                    row.pass.to_string(),
                ]
            })
            .collect(),
    }
}

pub fn render_report(report: &Report, format: ReportFormat) -> Result<String> {
    Ok(match format {
        ReportFormat::Json => serde_json::to_string_pretty(report)?,
        ReportFormat::Csv => report_table(report).csv(),
        ReportFormat::Text => report_table(report).text(),
    })
}

/// Writes the rendered report to `path`.
pub fn emit_report(report: &Report, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_report(report, format)?)
        .map_err(|e| Error::from(e).context(format!("writing {}", path.display())))
}

pub fn render_radius_table(rows: &[RadiusRow], format: ReportFormat) -> Result<String> {
    let table = Table {
        header: vec!["p", "m", "radius", "closed_form"],
        rows: rows
            .iter()
            .map(|row| {
                vec![
                    row.p.to_string(),
                    row.m.to_string(),
                    format_g15(row.radius),
                    opt(row.closed_form),
                ]
            })
            .collect(),
    };
    Ok(match format {
        ReportFormat::Json => serde_json::to_string_pretty(rows)?,
        ReportFormat::Csv => table.csv(),
        ReportFormat::Text => table.text(),
    })
}
