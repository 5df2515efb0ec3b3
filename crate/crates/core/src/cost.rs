//! Construction, strengthening and failure costs, normalized by the cost of
//! the frame designed for normal loading (its total member length).
//!
//! Unit beam and column costs are summed over all stories, so a local
//! collapse of `w` bays costs the full-height strip of those bays.

use serde::{Deserialize, Serialize};

use crate::design::MemberDesign;
use crate::model::{CostParameters, DesignFactors, FrameGeometry, Scenario};

/// Total member length L n_s (n_c − 1) + H n_s n_c.
pub fn reference_cost(geom: &FrameGeometry) -> f64 {
    geom.bay_length * geom.ns() * (geom.nc() - 1.0) + geom.story_height * geom.ns() * geom.nc()
}

fn unit_cost(lambda: f64, alpha: f64, sf: f64, n_reinf_s: u32, n_s: u32) -> f64 {
    let strengthened = f64::from(n_reinf_s);
    (f64::from(n_s) - strengthened) + strengthened * (lambda * alpha * sf + (1.0 - alpha))
}

/// Story-summed beam cost factor per unit length.
pub fn unit_beam_cost(lambda_b: f64, costs: &CostParameters, beam_sf: f64, n_s: u32) -> f64 {
    unit_cost(lambda_b, costs.alpha_b, beam_sf, costs.n_reinf_s, n_s)
}

/// Story-summed column cost factor per unit length.
pub fn unit_column_cost(lambda_c: f64, costs: &CostParameters, column_sf: f64, n_s: u32) -> f64 {
    unit_cost(lambda_c, costs.alpha_c, column_sf, costs.n_reinf_s, n_s)
}

pub fn construction_cost(scenario: &Scenario, design: &MemberDesign, factors: DesignFactors) -> f64 {
    let g = &scenario.geometry;
    let beams = unit_beam_cost(factors.lambda_b, &scenario.costs, design.beam_sf, g.n_s);
    let columns = unit_column_cost(factors.lambda_c, &scenario.costs, design.column_sf, g.n_s);
    (g.bay_length * (g.nc() - 1.0) * beams + g.story_height * g.nc() * columns)
        / reference_cost(g)
}

/// Cost of the initially removed members.
pub fn initial_damage_cost(scenario: &Scenario) -> f64 {
    let g = &scenario.geometry;
    let d = &scenario.damage;
    (2.0 * g.bay_length * f64::from(d.n_rs0) + g.story_height * f64::from(d.n_rc0))
        / reference_cost(g)
}

fn strip_cost(scenario: &Scenario, design: &MemberDesign, bays: u32, columns: u32) -> f64 {
    let g = &scenario.geometry;
    let beams = unit_beam_cost(1.0, &scenario.costs, design.beam_sf, g.n_s);
    let cols = unit_column_cost(1.0, &scenario.costs, design.column_sf, g.n_s);
    f64::from(bays) * g.bay_length * beams + f64::from(columns) * g.story_height * cols
}

/// Ductile bending collapse of the n_fc + 1 bays over the failed columns.
pub fn bending_collapse_cost(scenario: &Scenario, design: &MemberDesign, n_fc: u32) -> f64 {
    let g = &scenario.geometry;
    let bays = (n_fc + 1).min(g.n_c - 1);
    let cols = n_fc.min(g.n_c);
    scenario.costs.k_ductile / reference_cost(g) * strip_cost(scenario, design, bays, cols)
}

/// Brittle local pancake collapse reaching two more columns and bays.
pub fn local_pancake_cost(scenario: &Scenario, design: &MemberDesign, n_fc: u32) -> f64 {
    let g = &scenario.geometry;
    let bays = (n_fc + 3).min(g.n_c - 1);
    let cols = (n_fc + 2).min(g.n_c);
    scenario.costs.k_brittle / reference_cost(g) * strip_cost(scenario, design, bays, cols)
}

/// Collapse of the whole frame.
pub fn global_pancake_cost(scenario: &Scenario, design: &MemberDesign) -> f64 {
    scenario.costs.k_brittle * construction_cost(scenario, design, DesignFactors::UNIT)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub c_ref: f64,
    pub c_construction: f64,
    pub c_initial_damage: f64,
    pub c_bending: f64,
    pub c_local_pancake: f64,
    pub c_global_pancake: f64,
}

impl CostBreakdown {
    /// All cost terms, with failure costs for `n_fc` failed columns.
    pub fn evaluate(
        scenario: &Scenario,
        design: &MemberDesign,
        factors: DesignFactors,
        n_fc: u32,
    ) -> Self {
        Self {
            c_ref: reference_cost(&scenario.geometry),
            c_construction: construction_cost(scenario, design, factors),
            c_initial_damage: initial_damage_cost(scenario),
            c_bending: bending_collapse_cost(scenario, design, n_fc),
            c_local_pancake: local_pancake_cost(scenario, design, n_fc),
            c_global_pancake: global_pancake_cost(scenario, design),
        }
    }
}
