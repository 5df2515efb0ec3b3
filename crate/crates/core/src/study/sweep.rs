//! Parameter sweeps over scenario fields.
//!
//! A study document holds a base scenario, sweep axes and the operation to
//! run at every point. Points form the Cartesian product of the axes with
//! the first axis outermost; results keep that order whatever the
//! completion order of the workers.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::design::MemberDesign;
use crate::error::{Error, Result};
use crate::model::{DesignFactors, Scenario};
use crate::optimize::{minimize_total_cost, threshold_probability};
use crate::risk::total_expected_cost;
use crate::study::catalog::{parse_damage, parse_frame};
use crate::study::outputs::THRESHOLD_COLUMNS;
use crate::study::scenario_file::{is_scenario_leaf, scenario_from_value, set_path};
use crate::study::svg::{Chart, Series};
use crate::study::table::{Cell, Table};

/// Axis parameters besides scenario leaves: `frame` takes `NxM` strings,
/// `damage` takes `AxB` strings.
pub const FRAME_AXIS: &str = "frame";
pub const DAMAGE_AXIS: &str = "damage";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    #[default]
    Optimize,
    Threshold,
    Evaluate,
    Design,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    /// Dotted scenario key, `frame` or `damage`.
    pub parameter: String,
    pub values: Vec<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Emit {
    #[serde(default = "yes")]
    pub csv: bool,
    #[serde(default = "yes")]
    pub svg: bool,
}

fn yes() -> bool {
    true
}

impl Default for Emit {
    fn default() -> Self {
        Self { csv: true, svg: true }
    }
}

fn default_base() -> Value {
    Value::Object(Default::default())
}

fn default_output() -> PathBuf {
    PathBuf::from("study_out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyDefinition {
    /// Scenario document; missing keys take reference values.
    #[serde(default = "default_base")]
    pub base: Value,
    #[serde(default)]
    pub axes: Vec<Axis>,
    #[serde(default)]
    pub operation: Operation,
    /// (λ_B, λ_C) for `evaluate`; defaults to (1, 1).
    #[serde(default)]
    pub lambda: Option<[f64; 2]>,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub emit: Emit,
}

impl StudyDefinition {
    pub fn from_json(text: &str, source: &str) -> Result<Self> {
        let def: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: source.into(),
            message: e.to_string(),
        })?;
        def.check()?;
        Ok(def)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let source = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            path: source.clone(),
            message: e.to_string(),
        })?;
        Self::from_json(&text, &source)
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Error::Parse {
            path: "study".into(),
            message: m,
        };
        for axis in &self.axes {
            let p = axis.parameter.as_str();
            if p != FRAME_AXIS && p != DAMAGE_AXIS && !is_scenario_leaf(p) {
                return Err(bad(format!("axis `{p}` is not a scenario field")));
            }
            if axis.values.is_empty() {
                return Err(bad(format!("axis `{p}` has no values")));
            }
        }
        if let Some([b, c]) = self.lambda {
            DesignFactors::new(b, c).validate()?;
        }
        // catches base-document errors before any work starts
        self.points()?;
        Ok(())
    }

    /// Axis values of every point, first axis outermost.
    pub fn grid(&self) -> Vec<Vec<&Value>> {
        let mut out: Vec<Vec<&Value>> = vec![Vec::new()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.values.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Scenario of every point, in grid order.
    pub fn points(&self) -> Result<Vec<Scenario>> {
        self.grid()
            .iter()
            .enumerate()
            .map(|(i, values)| {
                let mut doc = self.base.clone();
                if !doc.is_object() {
                    return Err(Error::Parse {
                        path: "study.base".into(),
                        message: "base must be a JSON object".into(),
                    });
                }
                for (axis, value) in self.axes.iter().zip(values) {
                    apply(&mut doc, &axis.parameter, value)?;
                }
                scenario_from_value(&doc, &format!("study point {}", i + 1))
            })
            .collect()
    }
}

fn apply(doc: &mut Value, parameter: &str, value: &Value) -> Result<()> {
    let text = || {
        value.as_str().ok_or_else(|| Error::Parse {
            path: parameter.into(),
            message: format!("`{parameter}` values must be strings like \"8x8\""),
        })
    };
    match parameter {
        FRAME_AXIS => {
            let g = parse_frame(text()?)?;
            set_path(doc, "geometry.n_s", g.n_s.into())?;
            set_path(doc, "geometry.n_c", g.n_c.into())
        }
        DAMAGE_AXIS => {
            let d = parse_damage(text()?)?;
            set_path(doc, "damage.n_rc0", d.n_rc0.into())?;
            set_path(doc, "damage.n_rs0", d.n_rs0.into())
        }
        leaf => set_path(doc, leaf, value.clone()),
    }
}

fn value_cell(v: &Value) -> Cell {
    match v {
        Value::Number(n) => n.as_f64().map_or(Cell::Empty, Cell::Num),
        Value::String(s) => Cell::Text(s.clone()),
        other => Cell::Text(other.to_string()),
    }
}

impl Operation {
    pub fn columns(&self) -> Vec<&'static str> {
        match self {
            Operation::Optimize => vec![
                "lambda_B", "lambda_C", "C_TE", "beta_B", "beta_PL", "beta_PG", "beta_B_50",
                "beta_PG_50", "converged",
            ],
            Operation::Threshold => THRESHOLD_COLUMNS.to_vec(),
            Operation::Evaluate => vec![
                "construction", "intact_bending", "intact_pancake", "initial_damage",
                "damage_max", "total", "dominant",
            ],
            Operation::Design => vec!["B_y_nlc", "R_c_nlc", "B_y_0", "R_c_0", "B_sf", "R_sf"],
        }
    }

    /// Result columns drawn together, one chart per group.
    fn chart_groups(&self) -> Vec<(&'static str, Vec<&'static str>)> {
        match self {
            Operation::Optimize => vec![
                ("lambda", vec!["lambda_B", "lambda_C"]),
                ("beta", vec!["beta_B", "beta_PL", "beta_PG"]),
            ],
            Operation::Threshold => vec![("threshold", vec!["p_LD_th"])],
            Operation::Evaluate => vec![("cost", vec!["total", "construction"])],
            Operation::Design => vec![("factors", vec!["B_sf", "R_sf"])],
        }
    }

    pub fn run(&self, scenario: &Scenario, lambda: DesignFactors) -> Result<Vec<Cell>> {
        let design = MemberDesign::strengthened(scenario)?;
        Ok(match self {
            Operation::Optimize => {
                let r = minimize_total_cost(scenario, &design)?;
                vec![
                    r.lambda_star.lambda_b.into(),
                    r.lambda_star.lambda_c.into(),
                    r.c_te_star.into(),
                    r.damaged_betas.beta_b.into(),
                    r.damaged_betas.beta_pl.into(),
                    r.damaged_betas.beta_pg.into(),
                    r.intact_betas.beta_b.into(),
                    r.intact_betas.beta_pg.into(),
                    r.converged.into(),
                ]
            }
            Operation::Threshold => {
                let r = threshold_probability(scenario, &design)?;
                let (p, lo, hi) = match r.status {
                    crate::optimize::ThresholdStatus::Root {
                        p_ld,
                        log10_lower,
                        log10_upper,
                    } => (p_ld.into(), log10_lower.into(), log10_upper.into()),
                    _ => (Cell::Empty, Cell::Empty, Cell::Empty),
                };
                vec![r.label().into(), p, lo, hi]
            }
            Operation::Evaluate => {
                let c = total_expected_cost(scenario, &design, lambda)?;
                vec![
                    c.construction.into(),
                    c.intact_bending.into(),
                    c.intact_pancake.into(),
                    c.initial_damage.into(),
                    c.damage_max.into(),
                    c.total.into(),
                    c.dominant.label().into(),
                ]
            }
            Operation::Design => vec![
                design.beam_moment_nlc.into(),
                design.column_crush_nlc.into(),
                design.beam_moment.into(),
                design.column_crush.into(),
                design.beam_sf.into(),
                design.column_sf.into(),
            ],
        })
    }
}

/// Result table and charts of a study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyOutcome {
    pub table: Table,
    pub charts: Vec<(String, Chart)>,
}

/// Runs every point on the current rayon pool.
pub fn run_study(def: &StudyDefinition) -> Result<StudyOutcome> {
    let scenarios = def.points()?;
    let lambda = def
        .lambda
        .map_or(DesignFactors::UNIT, |[b, c]| DesignFactors::new(b, c));
    let results: Vec<Result<Vec<Cell>>> = scenarios
        .par_iter()
        .map(|s| def.operation.run(s, lambda))
        .collect();

    let mut table = Table::new(
        def.axes
            .iter()
            .map(|a| a.parameter.clone())
            .chain(def.operation.columns().into_iter().map(String::from)),
    );
    for (values, result) in def.grid().into_iter().zip(results) {
        let mut row: Vec<Cell> = values.into_iter().map(value_cell).collect();
        row.extend(result?);
        table.push(row);
    }
    let charts = charts(def, &table);
    Ok(StudyOutcome { table, charts })
}

fn charts(def: &StudyDefinition, table: &Table) -> Vec<(String, Chart)> {
    let Some(first) = def.axes.first() else {
        return Vec::new();
    };
    let numeric = first.values.iter().all(Value::is_number);
    let log_x = numeric
        && first.parameter == "p_LD"
        && first.values.iter().all(|v| v.as_f64().is_some_and(|x| x > 0.0));
    let n_first = first.values.len();
    let n_rest = table.rows.len() / n_first.max(1);
    let x_of = |row: usize| -> f64 {
        let i = row / n_rest;
        if numeric {
            first.values[i].as_f64().unwrap_or(f64::NAN)
        } else {
            (i + 1) as f64
        }
    };
    let group_label = |row: usize| -> String {
        table.rows[row][1..def.axes.len()]
            .iter()
            .zip(&def.axes[1..])
            .map(|(c, a)| format!("{}={}", a.parameter, c.render()))
            .collect::<Vec<_>>()
            .join(",")
    };

    let mut out = Vec::new();
    for (name, columns) in def.operation.chart_groups() {
        let mut series = Vec::new();
        for column in columns {
            let Some(ci) = table.column(column) else { continue };
            for offset in 0..n_rest {
                let rows: Vec<usize> = (0..n_first).map(|i| i * n_rest + offset).collect();
                let label = if n_rest > 1 {
                    format!("{column} {}", group_label(rows[0]))
                } else {
                    column.to_string()
                };
                let points = rows
                    .iter()
                    .map(|&r| {
                        let y = match table.rows[r][ci] {
                            Cell::Num(y) => y,
                            _ => f64::NAN,
                        };
                        (x_of(r), y)
                    })
                    .collect();
                series.push(Series::new(label, points));
            }
        }
        let x_label = if numeric {
            first.parameter.clone()
        } else {
            format!("{} (position)", first.parameter)
        };
        out.push((
            name.to_string(),
            Chart {
                title: format!("{name} vs {}", first.parameter),
                x_label,
                y_label: name.to_string(),
                log_x,
                series,
            },
        ));
    }
    out
}

/// Writes `results.csv` and one SVG per chart group as requested by the
/// emit flags. Returns written paths and the count of dropped chart points.
pub fn write_study(def: &StudyDefinition, outcome: &StudyOutcome, dir: &Path) -> Result<(Vec<PathBuf>, usize)> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut dropped = 0;
    if def.emit.csv {
        let p = dir.join("results.csv");
        outcome.table.emit_csv(&p)?;
        written.push(p);
    }
    if def.emit.svg {
        for (name, chart) in &outcome.charts {
            let p = dir.join(format!("{name}.svg"));
            dropped += chart.emit_svg(&p)?;
            written.push(p);
        }
    }
    Ok((written, dropped))
}
