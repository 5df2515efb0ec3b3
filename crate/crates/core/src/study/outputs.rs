//! Tables and charts built from domain results.

use std::path::{Path, PathBuf};

use crate::design::MemberDesign;
use crate::error::Result;
use crate::model::{DesignFactors, FrameGeometry, Scenario};
use crate::optimize::{OptimizationResult, ThresholdResult, ThresholdStatus};
use crate::report::{
    self, BetaGridRow, OptimumPoint, StrengtheningEntry, Variant, DAMAGE_CATALOG, FRAME_CATALOG,
};
use crate::risk::{ExpectedCost, ProgressionRow};
use crate::study::svg::{Chart, Series};
use crate::study::table::{Cell, Table};

fn frame_label(g: &FrameGeometry) -> String {
    format!("{}x{}", g.n_s, g.bays())
}

pub fn design_table(design: &MemberDesign) -> Table {
    let mut t = Table::new(["quantity", "value"]);
    for (k, v) in [
        ("B_y_nlc", design.beam_moment_nlc),
        ("R_c_nlc", design.column_crush_nlc),
        ("B_y_0", design.beam_moment),
        ("R_c_0", design.column_crush),
        ("B_sf", design.beam_sf),
        ("R_sf", design.column_sf),
    ] {
        t.push(vec![k.into(), v.into()]);
    }
    t
}

pub fn beta_grid_table(rows: &[BetaGridRow]) -> Table {
    let mut t = Table::new(["horizon", "mode", "nlc", "strengthened", "damaged", "optimized"]);
    for r in rows {
        let mut row: Vec<Cell> = vec![r.horizon.label().into(), r.mode.label().into()];
        row.extend(r.values.iter().map(|v| Cell::from(*v)));
        t.push(row);
    }
    t
}

pub fn evaluate_table(factors: DesignFactors, c: &ExpectedCost) -> Table {
    let mut t = Table::new(["term", "value"]);
    t.push(vec!["lambda_B".into(), factors.lambda_b.into()]);
    t.push(vec!["lambda_C".into(), factors.lambda_c.into()]);
    for (k, v) in [
        ("construction", c.construction),
        ("intact_bending", c.intact_bending),
        ("intact_pancake", c.intact_pancake),
        ("initial_damage", c.initial_damage),
        ("damage_max", c.damage_max),
        ("p_LD", c.p_ld),
        ("total", c.total),
    ] {
        t.push(vec![k.into(), v.into()]);
    }
    t.push(vec!["dominant".into(), c.dominant.label().into()]);
    t
}

pub fn trace_table(rows: &[ProgressionRow]) -> Table {
    let mut t = Table::new([
        "n_fc",
        "p_B",
        "p_PL",
        "p_PG",
        "C_B",
        "C_PL",
        "C_PG",
        "chain_probability",
        "adjacent_probability",
        "cumulative_probability",
        "stage_cost",
        "stage_expected_cost",
        "dominant",
    ]);
    for r in rows {
        t.push(vec![
            r.n_fc.into(),
            r.p_b.into(),
            r.p_pl.into(),
            r.p_pg.into(),
            r.c_b.into(),
            r.c_pl.into(),
            r.c_pg.into(),
            r.chain_probability.into(),
            r.adjacent_probability.into(),
            r.cumulative_probability.into(),
            r.stage_cost.into(),
            r.stage_expected_cost.into(),
            r.dominant.label().into(),
        ]);
    }
    t
}

/// λ* rounded to three decimals for display.
fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

pub fn optimize_table(r: &OptimizationResult) -> Table {
    let mut t = Table::new(["quantity", "value"]);
    let d = &r.damaged_betas;
    let i = &r.intact_betas;
    let rows: Vec<(&str, Cell)> = vec![
        ("lambda_B", round3(r.lambda_star.lambda_b).into()),
        ("lambda_C", round3(r.lambda_star.lambda_c).into()),
        ("C_TE", r.c_te_star.into()),
        ("beta_B_apt", d.beta_b.into()),
        ("beta_PL_apt", d.beta_pl.into()),
        ("beta_PG_apt", d.beta_pg.into()),
        ("beta_CAT_apt", d.beta_cat.into()),
        ("beta_B_50_intact", i.beta_b.into()),
        ("beta_PG_50_intact", i.beta_pg.into()),
        ("starts_used", r.starts_used.into()),
        ("converged", r.converged.into()),
    ];
    for (k, v) in rows {
        t.push(vec![k.into(), v]);
    }
    t
}

fn threshold_cells(r: &ThresholdResult) -> Vec<Cell> {
    let (p, lo, hi) = match r.status {
        ThresholdStatus::Root {
            p_ld,
            log10_lower,
            log10_upper,
        } => (Cell::Num(p_ld), Cell::Num(log10_lower), Cell::Num(log10_upper)),
        _ => (Cell::Empty, Cell::Empty, Cell::Empty),
    };
    vec![r.label().into(), p, lo, hi]
}

pub const THRESHOLD_COLUMNS: [&str; 4] = ["status", "p_LD_th", "log10_lower", "log10_upper"];

pub fn threshold_table(r: &ThresholdResult) -> Table {
    let mut t = Table::new(THRESHOLD_COLUMNS.iter().copied().chain(["beta_B_lower", "beta_B_upper"]));
    let mut row = threshold_cells(r);
    row.push(r.beta_at_lower.into());
    row.push(r.beta_at_upper.into());
    t.push(row);
    t
}

pub fn strengthening_table(entries: &[StrengtheningEntry]) -> Table {
    let damages: Vec<String> = DAMAGE_CATALOG.iter().map(|(a, b)| format!("{a}x{b}")).collect();
    let mut t = Table::new(
        ["frame", "factor"]
            .into_iter()
            .map(String::from)
            .chain(damages.iter().cloned()),
    );
    let per = DAMAGE_CATALOG.len();
    for chunk in entries.chunks(per) {
        let mut row: Vec<Cell> = vec![frame_label(&chunk[0].geometry).into(), "R_sf".into()];
        row.extend(chunk.iter().map(|e| Cell::Num(e.column_sf)));
        t.push(row);
    }
    if let Some(first) = entries.chunks(per).next() {
        let mut row: Vec<Cell> = vec!["all".into(), "B_sf".into()];
        row.extend(first.iter().map(|e| Cell::Num(e.beam_sf)));
        t.push(row);
    }
    t
}

pub fn optimum_curves_table(points: &[OptimumPoint]) -> Table {
    let mut t = Table::new([
        "frame", "p_LD", "lambda_B", "lambda_C", "beta_B", "beta_PL", "beta_PG", "C_TE",
    ]);
    for p in points {
        t.push(vec![
            frame_label(&p.geometry).into(),
            p.p_ld.into(),
            p.lambda_star.lambda_b.into(),
            p.lambda_star.lambda_c.into(),
            p.beta_b.into(),
            p.beta_pl.into(),
            p.beta_pg.into(),
            p.c_te_star.into(),
        ]);
    }
    t
}

pub fn thresholds_table(variants: &[Variant], results: &[ThresholdResult]) -> Table {
    let mut t = Table::new(
        [
            "set", "case", "n_s", "bays", "L", "H", "k_ductile", "k_brittle", "alpha_B",
            "alpha_C", "n_reinf_s", "damage",
        ]
        .into_iter()
        .chain(THRESHOLD_COLUMNS),
    );
    for (v, r) in variants.iter().zip(results) {
        let s = &v.scenario;
        let mut row: Vec<Cell> = vec![
            v.set.clone().into(),
            v.case.clone().into(),
            s.geometry.n_s.into(),
            s.geometry.bays().into(),
            s.geometry.bay_length.into(),
            s.geometry.story_height.into(),
            s.costs.k_ductile.into(),
            s.costs.k_brittle.into(),
            s.costs.alpha_b.into(),
            s.costs.alpha_c.into(),
            s.costs.n_reinf_s.into(),
            format!("{}x{}", s.damage.n_rc0, s.damage.n_rs0).into(),
        ];
        row.extend(threshold_cells(r));
        t.push(row);
    }
    t
}

fn curves_for<'a>(points: &'a [OptimumPoint], g: &'a FrameGeometry) -> impl Iterator<Item = &'a OptimumPoint> {
    points.iter().filter(move |p| p.geometry == *g)
}

/// Optimal design factors against p_LD for the tall, reference and low frames.
pub fn lambda_chart(points: &[OptimumPoint]) -> Chart {
    let mut series = Vec::new();
    for (n_s, bays) in [(16, 4), (8, 8), (4, 16)] {
        let g = FrameGeometry::stories_by_bays(n_s, bays);
        let label = frame_label(&g);
        series.push(Series::new(
            format!("lambda_B* {label}"),
            curves_for(points, &g).map(|p| (p.p_ld, p.lambda_star.lambda_b)).collect(),
        ));
        series.push(Series::new(
            format!("lambda_C* {label}"),
            curves_for(points, &g).map(|p| (p.p_ld, p.lambda_star.lambda_c)).collect(),
        ));
    }
    Chart {
        title: "Optimal design factors".into(),
        x_label: "p_LD".into(),
        y_label: "lambda*".into(),
        log_x: true,
        series,
    }
}

/// Optimal reliability indexes against p_LD.
pub fn beta_chart(points: &[OptimumPoint]) -> Chart {
    let reference = FrameGeometry::stories_by_bays(8, 8);
    let mut series: Vec<Series> = [
        ("beta_B* 8x8", 0),
        ("beta_PL* 8x8", 1),
        ("beta_PG* 8x8", 2),
    ]
    .into_iter()
    .map(|(name, k)| {
        Series::new(
            name,
            curves_for(points, &reference)
                .map(|p| (p.p_ld, [p.beta_b, p.beta_pl, p.beta_pg][k]))
                .collect(),
        )
    })
    .collect();
    for (n_s, bays) in [(16, 4), (4, 16)] {
        let g = FrameGeometry::stories_by_bays(n_s, bays);
        series.push(Series::new(
            format!("beta_B* {}", frame_label(&g)),
            curves_for(points, &g).map(|p| (p.p_ld, p.beta_b)).collect(),
        ));
    }
    Chart {
        title: "Optimal reliability indexes".into(),
        x_label: "p_LD".into(),
        y_label: "beta*".into(),
        log_x: true,
        series,
    }
}

/// Threshold probability against the frame aspect ratio n_s / bays.
pub fn threshold_chart(variants: &[Variant], results: &[ThresholdResult]) -> Chart {
    let points = variants
        .iter()
        .zip(results)
        .map(|(v, r)| {
            let g = &v.scenario.geometry;
            (
                f64::from(g.n_s) / f64::from(g.bays()),
                r.p_ld().map_or(f64::NAN, f64::log10),
            )
        })
        .collect();
    Chart {
        title: "Threshold local damage probability".into(),
        x_label: "n_s / bays".into(),
        y_label: "log10 p_LD_th".into(),
        log_x: true,
        series: vec![Series::new("aspect ratio", points)],
    }
}

/// Probabilities sampled for the optimum curves.
pub fn curve_p_grid() -> Vec<f64> {
    report::log_grid(-4, 0, 4)
}

/// Files written by [`write_reproduction_tables`], in order.
pub const REPRODUCTION_FILES: [&str; 7] = [
    "reliability_grid.csv",
    "strengthening_factors.csv",
    "optimum_curves.csv",
    "design_factors.svg",
    "reliability_indexes.svg",
    "thresholds.csv",
    "thresholds.svg",
];

/// Regenerates the reliability grid, the strengthening factor table and
/// the optimum and threshold data into `dir`. Returns written paths and
/// the number of chart points dropped as non-finite.
pub fn write_reproduction_tables(dir: &Path) -> Result<(Vec<PathBuf>, usize)> {
    std::fs::create_dir_all(dir)?;
    let reference = Scenario::reference();
    let cat = report::catenary_optimum(&reference, report::GRID_PSI)?;
    let grid = report::beta_grid(&reference, report::REFERENCE_OPTIMUM, cat, report::GRID_PSI)?;
    let sf = report::strengthening_table(&reference)?;
    let frames: Vec<Scenario> = FRAME_CATALOG
        .iter()
        .map(|&(n_s, b)| Scenario::for_geometry(FrameGeometry::stories_by_bays(n_s, b)))
        .collect();
    let curves = report::optimum_curves(&frames, &curve_p_grid())?;
    let mut variants = report::frame_variants();
    variants.extend(report::problem_variants());
    let th = report::thresholds(&variants)?;
    let n_frames = FRAME_CATALOG.len();

    let path = |name: &str| dir.join(name);
    let mut dropped = 0;
    beta_grid_table(&grid).emit_csv(&path(REPRODUCTION_FILES[0]))?;
    strengthening_table(&sf).emit_csv(&path(REPRODUCTION_FILES[1]))?;
    optimum_curves_table(&curves).emit_csv(&path(REPRODUCTION_FILES[2]))?;
    dropped += lambda_chart(&curves).emit_svg(&path(REPRODUCTION_FILES[3]))?;
    dropped += beta_chart(&curves).emit_svg(&path(REPRODUCTION_FILES[4]))?;
    thresholds_table(&variants, &th).emit_csv(&path(REPRODUCTION_FILES[5]))?;
    dropped += threshold_chart(&variants[..n_frames], &th[..n_frames]).emit_svg(&path(REPRODUCTION_FILES[6]))?;
    Ok((REPRODUCTION_FILES.iter().map(|f| path(f)).collect(), dropped))
}
