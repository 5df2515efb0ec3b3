//! Conditional failure probabilities, the progression chain and the total
//! expected cost objective.
//!
//! After the initial damage of n0 columns, local pancake collapse can
//! spread horizontally two columns at a time. Only the event with the
//! largest expected cost is charged, so the damage term never exceeds the
//! cost of global collapse.

use serde::{Deserialize, Serialize};

use crate::cost;
use crate::design::MemberDesign;
use crate::error::Result;
use crate::mechanics::CollapseMode;
use crate::model::{ChainWeighting, DesignFactors, Scenario};
use crate::reliability::{beta_damaged, beta_intact, std_normal_cdf, LoadHorizon};

/// Conditional probabilities of the three failure modes for a fixed number
/// of failed columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeProbabilities {
    pub bending: f64,
    pub local_pancake: f64,
    pub global_pancake: f64,
}

/// Term attaining a maximum, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DominantTerm {
    Bending,
    LocalPancake,
    GlobalPancake,
    /// Progression stage with this many failed columns.
    Progression(u32),
}

impl DominantTerm {
    pub fn label(&self) -> String {
        match self {
            DominantTerm::Bending => "bending".into(),
            DominantTerm::LocalPancake => "local_pancake".into(),
            DominantTerm::GlobalPancake => "global_pancake".into(),
            DominantTerm::Progression(j) => format!("progression_{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageCost {
    pub value: f64,
    pub dominant: DominantTerm,
}

/// First maximal element wins.
fn first_max(terms: impl IntoIterator<Item = (f64, DominantTerm)>) -> StageCost {
    let mut best = StageCost {
        value: f64::NEG_INFINITY,
        dominant: DominantTerm::Bending,
    };
    for (value, dominant) in terms {
        if value > best.value {
            best = StageCost { value, dominant };
        }
    }
    best
}

fn bending_mode(scenario: &Scenario) -> CollapseMode {
    if scenario.catenary_in_objective && scenario.psi > 0.0 {
        CollapseMode::Catenary
    } else {
        CollapseMode::Bending
    }
}

/// p = Φ(−β^apt) for each mode with n_fc failed columns over the initial
/// damage height.
pub fn mode_probabilities(
    scenario: &Scenario,
    design: &MemberDesign,
    factors: DesignFactors,
    n_fc: u32,
) -> Result<ModeProbabilities> {
    let n_rs = scenario.damage.n_rs0;
    let p = |mode| -> Result<f64> {
        let b = beta_damaged(scenario, design, factors, n_fc, n_rs, mode, LoadHorizon::Apt)?;
        Ok(std_normal_cdf(-b))
    };
    Ok(ModeProbabilities {
        bending: p(bending_mode(scenario))?,
        local_pancake: p(CollapseMode::LocalPancake)?,
        global_pancake: p(CollapseMode::GlobalPancake)?,
    })
}

struct Stage {
    n_fc: u32,
    probs: ModeProbabilities,
    c_b: f64,
    c_pl: f64,
    c_pg: f64,
}

impl Stage {
    fn evaluate(
        scenario: &Scenario,
        design: &MemberDesign,
        factors: DesignFactors,
        n_fc: u32,
        c_pg: f64,
    ) -> Result<Self> {
        Ok(Self {
            n_fc,
            probs: mode_probabilities(scenario, design, factors, n_fc)?,
            c_b: cost::bending_collapse_cost(scenario, design, n_fc),
            c_pl: cost::local_pancake_cost(scenario, design, n_fc),
            c_pg,
        })
    }

    /// The initial stage weights local pancake by its probability; later
    /// stages are already conditioned on local pancake having spread.
    fn cost(&self, initial: bool) -> StageCost {
        let pl = if initial {
            self.probs.local_pancake * self.c_pl
        } else {
            self.c_pl
        };
        first_max([
            (self.probs.bending * self.c_b, DominantTerm::Bending),
            (pl, DominantTerm::LocalPancake),
            (self.probs.global_pancake * self.c_pg, DominantTerm::GlobalPancake),
        ])
    }
}

/// Failed-column counts visited by the chain: n0, n0 + 2, ..., ≤ n_c − 2.
pub fn chain_stages(scenario: &Scenario) -> Vec<u32> {
    let n0 = scenario.damage.n_rc0;
    let last = scenario.geometry.n_c.saturating_sub(2);
    if n0 == 0 || n0 > last {
        return Vec::new();
    }
    (n0..=last).step_by(2).collect()
}

/// Maximum expected cost of one stage, without the chain weight.
pub fn stage_expected_cost(
    scenario: &Scenario,
    design: &MemberDesign,
    factors: DesignFactors,
    n_fc: u32,
    is_initial: bool,
) -> Result<StageCost> {
    let c_pg = cost::global_pancake_cost(scenario, design);
    Ok(Stage::evaluate(scenario, design, factors, n_fc, c_pg)?.cost(is_initial))
}

/// One row of the progression chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProgressionRow {
    pub n_fc: u32,
    pub p_b: f64,
    pub p_pl: f64,
    pub p_pg: f64,
    pub c_b: f64,
    pub c_pl: f64,
    pub c_pg: f64,
    /// Weight used in the objective, per the scenario's chain weighting.
    pub chain_probability: f64,
    /// p_PL(j − 2) · p_PL(j).
    pub adjacent_probability: f64,
    /// p_PL(n0) ··· p_PL(j).
    pub cumulative_probability: f64,
    /// Unweighted stage maximum.
    pub stage_cost: f64,
    /// chain_probability × stage_cost.
    pub stage_expected_cost: f64,
    pub dominant: DominantTerm,
}

pub fn progression_trace(
    scenario: &Scenario,
    design: &MemberDesign,
    factors: DesignFactors,
) -> Result<Vec<ProgressionRow>> {
    let c_pg = cost::global_pancake_cost(scenario, design);
    let mut rows = Vec::new();
    let mut prev_pl = 1.0;
    let mut cumulative = 1.0;
    for (i, n_fc) in chain_stages(scenario).into_iter().enumerate() {
        let stage = Stage::evaluate(scenario, design, factors, n_fc, c_pg)?;
        let initial = i == 0;
        let pl = stage.probs.local_pancake;
        let (adjacent, chain) = if initial {
            (1.0, 1.0)
        } else {
            cumulative *= pl;
            let adjacent = prev_pl * pl;
            let chain = match scenario.chain_weighting {
                ChainWeighting::Cumulative => cumulative,
                ChainWeighting::Adjacent => adjacent,
            };
            (adjacent, chain)
        };
        if initial {
            cumulative = pl;
        }
        let sc = stage.cost(initial);
        rows.push(ProgressionRow {
            n_fc: stage.n_fc,
            p_b: stage.probs.bending,
            p_pl: pl,
            p_pg: stage.probs.global_pancake,
            c_b: stage.c_b,
            c_pl: stage.c_pl,
            c_pg: stage.c_pg,
            chain_probability: chain,
            adjacent_probability: adjacent,
            cumulative_probability: if initial { 1.0 } else { cumulative },
            stage_cost: sc.value,
            stage_expected_cost: chain * sc.value,
            dominant: sc.dominant,
        });
        prev_pl = pl;
    }
    Ok(rows)
}

/// Total expected cost with every term broken out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedCost {
    pub construction: f64,
    /// C_const(1,1) Φ(−β_B^50).
    pub intact_bending: f64,
    /// C_PG Φ(−β_PG^50).
    pub intact_pancake: f64,
    pub initial_damage: f64,
    /// Largest expected cost among initial and progression events.
    pub damage_max: f64,
    pub dominant: DominantTerm,
    pub p_ld: f64,
    pub total: f64,
}

impl ExpectedCost {
    /// Everything multiplied by p_LD.
    pub fn damage_bracket(&self) -> f64 {
        self.initial_damage + self.damage_max
    }
}

pub fn total_expected_cost(
    scenario: &Scenario,
    design: &MemberDesign,
    factors: DesignFactors,
) -> Result<ExpectedCost> {
    let construction = cost::construction_cost(scenario, design, factors);
    let c_unit = cost::construction_cost(scenario, design, DesignFactors::UNIT);
    let c_pg = scenario.costs.k_brittle * c_unit;

    let intact_mode = bending_mode(scenario);
    let b50 = beta_intact(scenario, design, factors, intact_mode, LoadHorizon::FiftyYear)?;
    let pg50 = beta_intact(
        scenario,
        design,
        factors,
        CollapseMode::GlobalPancake,
        LoadHorizon::FiftyYear,
    )?;
    let intact_bending = c_unit * std_normal_cdf(-b50);
    let intact_pancake = c_pg * std_normal_cdf(-pg50);

    let rows = progression_trace(scenario, design, factors)?;
    let best = first_max(rows.iter().enumerate().flat_map(|(i, r)| {
        if i == 0 {
            vec![
                (r.p_b * r.c_b, DominantTerm::Bending),
                (r.p_pl * r.c_pl, DominantTerm::LocalPancake),
                (r.p_pg * r.c_pg, DominantTerm::GlobalPancake),
            ]
        } else {
            vec![(r.stage_expected_cost, DominantTerm::Progression(r.n_fc))]
        }
    }));
    // empty chain: no damage event to charge
    let (damage_max, dominant) = if rows.is_empty() {
        (0.0, DominantTerm::Bending)
    } else {
        (best.value, best.dominant)
    };

    let initial_damage = cost::initial_damage_cost(scenario);
    let total = construction
        + intact_bending
        + intact_pancake
        + scenario.p_ld * (initial_damage + damage_max);
    Ok(ExpectedCost {
        construction,
        intact_bending,
        intact_pancake,
        initial_damage,
        damage_max,
        dominant,
        p_ld: scenario.p_ld,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DamageScenario;
    use approx::assert_abs_diff_eq;

    fn reference() -> (Scenario, MemberDesign) {
        let s = Scenario::reference();
        let d = MemberDesign::strengthened(&s).unwrap();
        (s, d)
    }

    #[test]
    fn probabilities_follow_betas() {
        let (s, d) = reference();
        let p = mode_probabilities(&s, &d, DesignFactors::UNIT, 1).unwrap();
        assert_abs_diff_eq!(p.local_pancake, std_normal_cdf(-1.80), epsilon = 1e-3);
        assert_abs_diff_eq!(p.local_pancake, 0.0359, epsilon = 1e-3);
        let p = mode_probabilities(&s, &d, DesignFactors::new(0.9, 1.3), 1).unwrap();
        assert_abs_diff_eq!(p.bending, 0.0537, epsilon = 1e-3);
        let p = mode_probabilities(&s, &d, DesignFactors::new(50.0, 50.0), 1).unwrap();
        // β saturates at 1/COV of the resistance as capacity grows
        let floor = std_normal_cdf(-1.0 / 0.165);
        assert!(p.bending >= floor && p.bending < 1e-8);
        assert!(p.global_pancake >= std_normal_cdf(-1.0 / 0.184) && p.global_pancake < 1e-7);
    }

    #[test]
    fn chain_steps_by_two() {
        let (s, _) = reference();
        assert_eq!(chain_stages(&s), vec![1, 3, 5, 7]);
        let mut t = s;
        t.geometry.n_c = 5;
        assert_eq!(chain_stages(&t), vec![1, 3]);
        t.damage = DamageScenario::new(2, 1);
        assert_eq!(chain_stages(&t), vec![2]);
    }

    #[test]
    fn first_max_tie_break() {
        let s = first_max([
            (1.0, DominantTerm::Bending),
            (1.0, DominantTerm::LocalPancake),
            (0.5, DominantTerm::GlobalPancake),
        ]);
        assert_eq!(s.dominant, DominantTerm::Bending);
        let (s, d) = reference();
        let z = stage_expected_cost(&s, &d, DesignFactors::new(100.0, 100.0), 1, true).unwrap();
        assert!(z.value < 1e-4);
    }

    #[test]
    fn trace_rows() {
        let (s, d) = reference();
        let rows = progression_trace(&s, &d, DesignFactors::UNIT).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].n_fc, 1);
        assert_eq!(rows[0].chain_probability, 1.0);
        for w in rows.windows(2) {
            assert_eq!(w[1].n_fc, w[0].n_fc + 2);
            assert_abs_diff_eq!(w[1].adjacent_probability, w[0].p_pl * w[1].p_pl, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(
            rows[2].cumulative_probability,
            rows[0].p_pl * rows[1].p_pl * rows[2].p_pl,
            epsilon = 1e-15
        );
        let initial = stage_expected_cost(&s, &d, DesignFactors::UNIT, 1, true).unwrap();
        assert_eq!(rows[0].stage_cost, initial.value);
    }

    #[test]
    fn strengthened_beats_normal_frame() {
        let (s, d) = reference();
        let normal = MemberDesign::normal(&s).unwrap();
        let ns = s.unstrengthened();
        let a = progression_trace(&s, &d, DesignFactors::UNIT).unwrap();
        let b = progression_trace(&ns, &normal, DesignFactors::UNIT).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.stage_expected_cost < y.stage_expected_cost, "n_fc = {}", x.n_fc);
        }
    }

    #[test]
    fn no_threat_limit() {
        let (mut s, d) = reference();
        s.p_ld = 0.0;
        let n = s.unstrengthened();
        let c = total_expected_cost(&n, &d, DesignFactors::UNIT).unwrap();
        assert_abs_diff_eq!(c.total, 1.0 + c.intact_bending + c.intact_pancake, epsilon = 1e-15);
        assert_eq!(c.construction, 1.0);
    }

    #[test]
    fn probability_bound() {
        let (s, d) = reference();
        for f in [DesignFactors::new(0.1, 0.1), DesignFactors::UNIT, DesignFactors::new(3.0, 0.2)] {
            let c = total_expected_cost(&s, &d, f).unwrap();
            let c_unit = cost::construction_cost(&s, &d, DesignFactors::UNIT);
            let c_pg = 40.0 * c_unit;
            assert!(c.total <= c.construction + c_unit + c_pg + s.p_ld * (c.initial_damage + c_pg) + 1e-12);
        }
    }

    #[test]
    fn adjacent_weighting_differs_on_wide_frames() {
        let (s, d) = reference();
        let mut a = s;
        a.chain_weighting = ChainWeighting::Adjacent;
        let f = DesignFactors::new(0.9, 1.3);
        let cum = total_expected_cost(&s, &d, f).unwrap();
        let adj = total_expected_cost(&a, &d, f).unwrap();
        assert!(adj.total > cum.total);
        assert!(matches!(adj.dominant, DominantTerm::Progression(_)));
    }
}
