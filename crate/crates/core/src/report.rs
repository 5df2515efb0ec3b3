//! Reproduction tables: reliability grid, strengthening factors, optimal
//! designs versus local damage probability and threshold probabilities.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::design::MemberDesign;
use crate::error::Result;
use crate::mechanics::CollapseMode;
use crate::model::{CostParameters, DamageScenario, DesignFactors, FrameGeometry, Scenario};
use crate::optimize::{minimize_total_cost, threshold_probability, ThresholdResult};
use crate::reliability::{beta_damaged, beta_intact, LoadHorizon};

/// Aspect-ratio variants as (stories, bays), tall to low.
pub const FRAME_CATALOG: [(u32, u32); 7] = [
    (16, 4),
    (13, 5),
    (11, 6),
    (8, 8),
    (6, 11),
    (5, 13),
    (4, 16),
];

/// Initial damage variants as (removed columns, removed stories).
pub const DAMAGE_CATALOG: [(u32, u32); 4] = [(1, 1), (1, 0), (2, 1), (3, 2)];

/// Design factors of the reference optimum used for the reliability grid.
pub const REFERENCE_OPTIMUM: DesignFactors = DesignFactors {
    lambda_b: 0.9,
    lambda_c: 1.3,
};

/// Catenary parameter of the reliability grid.
pub const GRID_PSI: f64 = 2.0;

/// Design state columns of the reliability grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DesignState {
    /// Intact frame designed for normal loading only.
    Nlc,
    /// Intact strengthened frame at λ = (1, 1).
    Strengthened,
    /// Damaged strengthened frame at λ = (1, 1).
    Damaged,
    /// Damaged strengthened frame at the optimum.
    Optimized,
}

impl DesignState {
    pub const ALL: [DesignState; 4] = [
        DesignState::Nlc,
        DesignState::Strengthened,
        DesignState::Damaged,
        DesignState::Optimized,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            DesignState::Nlc => "nlc",
            DesignState::Strengthened => "strengthened",
            DesignState::Damaged => "damaged",
            DesignState::Optimized => "optimized",
        }
    }
}

/// One (horizon, mode) row of the reliability grid; `None` where the mode
/// does not exist for the frame state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaGridRow {
    pub horizon: LoadHorizon,
    pub mode: CollapseMode,
    pub values: [Option<f64>; 4],
}

impl BetaGridRow {
    pub fn get(&self, state: DesignState) -> Option<f64> {
        self.values[state as usize]
    }
}

/// Catenary optimum used for the optimized catenary cells: the minimum of
/// the objective with catenary-augmented bending strengths.
pub fn catenary_optimum(scenario: &Scenario, psi: f64) -> Result<DesignFactors> {
    let mut s = *scenario;
    s.psi = psi;
    s.catenary_in_objective = true;
    let design = MemberDesign::strengthened(&s)?;
    Ok(minimize_total_cost(&s, &design)?.lambda_star)
}

/// Reliability indexes by design state, mode and load horizon.
///
/// `optimized` feeds the optimized column of the ordinary modes and
/// `catenary_optimized` that of the catenary rows.
pub fn beta_grid(
    scenario: &Scenario,
    optimized: DesignFactors,
    catenary_optimized: DesignFactors,
    psi: f64,
) -> Result<Vec<BetaGridRow>> {
    let mut s = *scenario;
    s.psi = psi;
    let normal = MemberDesign::normal(&s)?;
    let strong = MemberDesign::strengthened(&s)?;
    let (n_rc, n_rs) = (s.damage.n_rc0, s.damage.n_rs0);
    let unit = DesignFactors::UNIT;
    let mut rows = Vec::new();
    for horizon in [LoadHorizon::Apt, LoadHorizon::FiftyYear] {
        for mode in CollapseMode::ALL {
            let intact = |d: &MemberDesign| -> Result<Option<f64>> {
                if mode == CollapseMode::LocalPancake {
                    Ok(None)
                } else {
                    beta_intact(&s, d, unit, mode, horizon).map(Some)
                }
            };
            let opt = if mode == CollapseMode::Catenary {
                catenary_optimized
            } else {
                optimized
            };
            let damaged = |f| beta_damaged(&s, &strong, f, n_rc, n_rs, mode, horizon).map(Some);
            rows.push(BetaGridRow {
                horizon,
                mode,
                values: [intact(&normal)?, intact(&strong)?, damaged(unit)?, damaged(opt)?],
            });
        }
    }
    Ok(rows)
}

/// Strengthening factors for one frame and damage variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrengtheningEntry {
    pub geometry: FrameGeometry,
    pub damage: DamageScenario,
    pub beam_sf: f64,
    pub column_sf: f64,
}

/// Strengthening factors over the frame and damage catalogs, frame-major.
pub fn strengthening_table(base: &Scenario) -> Result<Vec<StrengtheningEntry>> {
    let mut out = Vec::new();
    for (n_s, bays) in FRAME_CATALOG {
        for (a, b) in DAMAGE_CATALOG {
            let mut s = *base;
            s.geometry = FrameGeometry::new(n_s, bays + 1, base.geometry.bay_length, base.geometry.story_height);
            s.damage = DamageScenario::new(a, b);
            let d = MemberDesign::strengthened(&s)?;
            out.push(StrengtheningEntry {
                geometry: s.geometry,
                damage: s.damage,
                beam_sf: d.beam_sf,
                column_sf: d.column_sf,
            });
        }
    }
    Ok(out)
}

/// Optimal design and reliability for one local damage probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimumPoint {
    pub geometry: FrameGeometry,
    pub p_ld: f64,
    pub lambda_star: DesignFactors,
    pub c_te_star: f64,
    pub beta_b: f64,
    pub beta_pl: f64,
    pub beta_pg: f64,
}

/// Log-spaced probabilities 10^lo ..= 10^hi with `per_decade` steps.
pub fn log_grid(lo: i32, hi: i32, per_decade: u32) -> Vec<f64> {
    let n = (hi - lo) as u32 * per_decade;
    (0..=n)
        .map(|k| 10f64.powf(f64::from(lo) + f64::from(k) / f64::from(per_decade)))
        .collect()
}

/// Optimum for each scenario and probability, scenario-major.
pub fn optimum_curves(scenarios: &[Scenario], p_values: &[f64]) -> Result<Vec<OptimumPoint>> {
    let jobs: Vec<(Scenario, f64)> = scenarios
        .iter()
        .flat_map(|s| p_values.iter().map(move |&p| (*s, p)))
        .collect();
    jobs.par_iter()
        .map(|&(s, p)| {
            let mut s = s;
            s.p_ld = p;
            let d = MemberDesign::strengthened(&s)?;
            let r = minimize_total_cost(&s, &d)?;
            Ok(OptimumPoint {
                geometry: s.geometry,
                p_ld: p,
                lambda_star: r.lambda_star,
                c_te_star: r.c_te_star,
                beta_b: r.damaged_betas.beta_b,
                beta_pl: r.damaged_betas.beta_pl.unwrap_or(f64::NAN),
                beta_pg: r.damaged_betas.beta_pg,
            })
        })
        .collect()
}

/// A named problem variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variant {
    pub set: String,
    pub case: String,
    pub scenario: Scenario,
}

fn variant(set: &str, case: &str, scenario: Scenario) -> Variant {
    Variant {
        set: set.into(),
        case: case.into(),
        scenario,
    }
}

/// Aspect-ratio variants on the reference parameters.
pub fn frame_variants() -> Vec<Variant> {
    FRAME_CATALOG
        .iter()
        .map(|&(n_s, bays)| {
            variant(
                "aspect",
                &format!("{n_s}x{bays}"),
                Scenario::for_geometry(FrameGeometry::stories_by_bays(n_s, bays)),
            )
        })
        .collect()
}

/// Bay shape, cost multiplier, strengthening cost and damage extent variants.
pub fn problem_variants() -> Vec<Variant> {
    let r = Scenario::reference();
    let with_geometry = |l: f64, h: f64, bays: u32| {
        let mut s = r;
        s.geometry = FrameGeometry::new(8, bays + 1, l, h);
        s
    };
    let with_costs = |f: &dyn Fn(&mut CostParameters)| {
        let mut s = r;
        f(&mut s.costs);
        s
    };
    let with_damage = |a, b| {
        let mut s = r;
        s.damage = DamageScenario::new(a, b);
        s
    };
    vec![
        variant("bay", "L=2H", r),
        variant("bay", "L=H", with_geometry(3.0, 3.0, 8)),
        variant("bay", "L=2H,2n_c", with_geometry(3.0, 1.5, 16)),
        variant("bay", "L=3H", with_geometry(9.0, 3.0, 8)),
        variant("cost_multipliers", "20/40", r),
        variant("cost_multipliers", "40/40", with_costs(&|c| c.k_ductile = 40.0)),
        variant("cost_multipliers", "40/80", with_costs(&|c| {
            c.k_ductile = 40.0;
            c.k_brittle = 80.0;
        })),
        variant("cost_multipliers", "50/200", with_costs(&|c| {
            c.k_ductile = 50.0;
            c.k_brittle = 200.0;
        })),
        variant("strengthening_cost", "0.7/0.7", r),
        variant("strengthening_cost", "0.9/0.9", with_costs(&|c| {
            c.alpha_b = 0.9;
            c.alpha_c = 0.9;
        })),
        variant("strengthening_cost", "0.5/0.9", with_costs(&|c| {
            c.alpha_b = 0.5;
            c.alpha_c = 0.9;
        })),
        variant("strengthening_cost", "0.7/0.7,all", with_costs(&|c| c.n_reinf_s = 8)),
        variant("damage", "1x1", r),
        variant("damage", "1x0", with_damage(1, 0)),
        variant("damage", "2x1", with_damage(2, 1)),
        variant("damage", "3x2", with_damage(3, 2)),
    ]
}

/// Threshold probability for each variant, in input order.
pub fn thresholds(variants: &[Variant]) -> Result<Vec<ThresholdResult>> {
    variants
        .par_iter()
        .map(|v| {
            let d = MemberDesign::strengthened(&v.scenario)?;
            threshold_probability(&v.scenario, &d)
        })
        .collect()
}
