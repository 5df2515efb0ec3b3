//! Cornell reliability indexes for the intact and damaged frame.
//!
//! Limit states are linear in a single resistance variable and the loads,
//! all treated as Gaussian through their first two moments.

use serde::{Deserialize, Serialize};

use crate::design::MemberDesign;
use crate::error::{Error, Result};
use crate::mechanics::{self, CollapseMode};
use crate::model::{DesignFactors, RandomVarStats, Scenario};

/// Which live load accompanies the dead load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LoadHorizon {
    /// Arbitrary-point-in-time live load.
    Apt,
    /// 50-year maximum live load.
    FiftyYear,
}

impl LoadHorizon {
    pub fn label(&self) -> &'static str {
        match self {
            LoadHorizon::Apt => "apt",
            LoadHorizon::FiftyYear => "50",
        }
    }
}

/// Reliability indexes of one frame state. Any value may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaSet {
    pub beta_b: f64,
    /// Absent for the intact frame.
    pub beta_pl: Option<f64>,
    pub beta_pg: f64,
    pub beta_cat: Option<f64>,
}

/// Φ(x), computed from the complementary error function.
pub fn std_normal_cdf(x: f64) -> f64 {
    (0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)).clamp(0.0, 1.0)
}

/// (r μ_R − μ_D − μ_L) / sqrt(r² σ_R² + σ_D² + σ_L²).
pub fn cornell_beta(
    strength: f64,
    resistance: RandomVarStats,
    dead: RandomVarStats,
    live: RandomVarStats,
) -> Result<f64> {
    if !(strength > 0.0 && strength.is_finite()) {
        return Err(Error::Domain(format!("strength {strength} must be positive")));
    }
    let margin = strength * resistance.mean - (dead.mean + live.mean);
    let var = (strength * resistance.std).powi(2) + dead.std.powi(2) + live.std.powi(2);
    if !(var > 0.0) {
        return Err(Error::DegenerateStatistics(format!(
            "zero variance of the safety margin (mean margin {margin})"
        )));
    }
    Ok(margin / var.sqrt())
}

fn live(scenario: &Scenario, horizon: LoadHorizon) -> RandomVarStats {
    match horizon {
        LoadHorizon::Apt => scenario.loads.live_apt,
        LoadHorizon::FiftyYear => scenario.loads.live_50,
    }
}

fn beam_psi(scenario: &Scenario, mode: CollapseMode) -> f64 {
    if mode == CollapseMode::Catenary {
        scenario.psi
    } else {
        0.0
    }
}

/// Reliability of the intact frame with capacities λ_B·B_y and λ_C·R_c.
pub fn beta_intact(
    scenario: &Scenario,
    design: &MemberDesign,
    factors: DesignFactors,
    mode: CollapseMode,
    horizon: LoadHorizon,
) -> Result<f64> {
    let g = &scenario.geometry;
    let (r, resistance) = match mode {
        CollapseMode::Bending | CollapseMode::Catenary => (
            mechanics::intact_bending_strength(
                g,
                factors.lambda_b * design.beam_moment,
                beam_psi(scenario, mode),
            ),
            scenario.loads.beam_resistance,
        ),
        CollapseMode::GlobalPancake => (
            mechanics::intact_pancake_strength(g, factors.lambda_c * design.column_crush),
            scenario.loads.column_resistance,
        ),
        CollapseMode::LocalPancake => return Err(Error::Mode(mode.to_string())),
    };
    cornell_beta(r, resistance, scenario.loads.dead, live(scenario, horizon))
}

/// Conditional reliability given `n_rc` failed columns over `n_rs` stories.
pub fn beta_damaged(
    scenario: &Scenario,
    design: &MemberDesign,
    factors: DesignFactors,
    n_rc: u32,
    n_rs: u32,
    mode: CollapseMode,
    horizon: LoadHorizon,
) -> Result<f64> {
    let g = &scenario.geometry;
    let by = factors.lambda_b * design.beam_moment;
    let rc = factors.lambda_c * design.column_crush;
    let (r, resistance) = match mode {
        CollapseMode::Bending | CollapseMode::Catenary => (
            mechanics::damaged_bending_strength(g, by, n_rc, beam_psi(scenario, mode))?,
            scenario.loads.beam_resistance,
        ),
        CollapseMode::LocalPancake => (
            mechanics::local_pancake_strength(g, rc, n_rc, n_rs)?,
            scenario.loads.column_resistance,
        ),
        CollapseMode::GlobalPancake => {
            if n_rc == 0 {
                return Err(Error::Domain("damaged frame needs n_rc ≥ 1".into()));
            }
            (
                mechanics::global_pancake_strength(g, rc, n_rc, n_rs)?,
                scenario.loads.column_resistance,
            )
        }
    };
    cornell_beta(r, resistance, scenario.loads.dead, live(scenario, horizon))
}

/// Intact-frame betas; the catenary entry is present when ψ > 0.
pub fn intact_betas(
    scenario: &Scenario,
    design: &MemberDesign,
    factors: DesignFactors,
    horizon: LoadHorizon,
) -> Result<BetaSet> {
    Ok(BetaSet {
        beta_b: beta_intact(scenario, design, factors, CollapseMode::Bending, horizon)?,
        beta_pl: None,
        beta_pg: beta_intact(scenario, design, factors, CollapseMode::GlobalPancake, horizon)?,
        beta_cat: if scenario.psi > 0.0 {
            Some(beta_intact(scenario, design, factors, CollapseMode::Catenary, horizon)?)
        } else {
            None
        },
    })
}

/// Betas for the scenario's initial damage.
pub fn damaged_betas(
    scenario: &Scenario,
    design: &MemberDesign,
    factors: DesignFactors,
    horizon: LoadHorizon,
) -> Result<BetaSet> {
    let (n_rc, n_rs) = (scenario.damage.n_rc0, scenario.damage.n_rs0);
    let b = |mode| beta_damaged(scenario, design, factors, n_rc, n_rs, mode, horizon);
    Ok(BetaSet {
        beta_b: b(CollapseMode::Bending)?,
        beta_pl: Some(b(CollapseMode::LocalPancake)?),
        beta_pg: b(CollapseMode::GlobalPancake)?,
        beta_cat: if scenario.psi > 0.0 {
            Some(b(CollapseMode::Catenary)?)
        } else {
            None
        },
    })
}
