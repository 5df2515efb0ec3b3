//! Domain vocabulary shared by every other module.
//!
//! All quantities are in kN, kNm and m. Types are plain values; once a
//! [`Scenario`] has passed [`validate`] it can be shared freely between
//! threads.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Violation};

/// Geometry of a regular plane frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameGeometry {
    /// Number of stories.
    pub n_s: u32,
    /// Number of columns per story.
    pub n_c: u32,
    /// Bay length (m).
    #[serde(rename = "L")]
    pub bay_length: f64,
    /// Story height (m).
    #[serde(rename = "H")]
    pub story_height: f64,
}

impl FrameGeometry {
    pub fn new(n_s: u32, n_c: u32, bay_length: f64, story_height: f64) -> Self {
        Self {
            n_s,
            n_c,
            bay_length,
            story_height,
        }
    }

    /// Frame with `n_s` stories and `bays` bays using the reference bay (L = 2H = 6 m).
    pub fn stories_by_bays(n_s: u32, bays: u32) -> Self {
        Self::new(n_s, bays + 1, 6.0, 3.0)
    }

    pub fn bays(&self) -> u32 {
        self.n_c - 1
    }

    pub(crate) fn ns(&self) -> f64 {
        f64::from(self.n_s)
    }

    pub(crate) fn nc(&self) -> f64 {
        f64::from(self.n_c)
    }

    fn check(&self, out: &mut Vec<Violation>) {
        if self.n_s < 1 {
            out.push(Violation::new("geometry.n_s", "n_s ≥ 1 violated"));
        }
        if self.n_c < 2 {
            out.push(Violation::new("geometry.n_c", "n_c ≥ 2 violated"));
        }
        if !(self.bay_length > 0.0 && self.bay_length.is_finite()) {
            out.push(Violation::new("geometry.L", "L > 0 violated"));
        }
        if !(self.story_height > 0.0 && self.story_height.is_finite()) {
            out.push(Violation::new("geometry.H", "H > 0 violated"));
        }
    }
}

impl fmt::Display for FrameGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} x {})", self.n_s, self.n_c.saturating_sub(1))
    }
}

/// Discretionary initial damage the frame is strengthened for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DamageScenario {
    /// Initially removed columns.
    pub n_rc0: u32,
    /// Vertical extent of the removal, in stories.
    pub n_rs0: u32,
}

impl DamageScenario {
    pub fn new(n_rc0: u32, n_rs0: u32) -> Self {
        Self { n_rc0, n_rs0 }
    }
}

impl Default for DamageScenario {
    fn default() -> Self {
        Self::new(1, 1)
    }
}

impl fmt::Display for DamageScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} x {})", self.n_rc0, self.n_rs0)
    }
}

/// Multipliers on the strengthened beam and column capacities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignFactors {
    pub lambda_b: f64,
    pub lambda_c: f64,
}

impl DesignFactors {
    pub const UNIT: DesignFactors = DesignFactors {
        lambda_b: 1.0,
        lambda_c: 1.0,
    };

    pub fn new(lambda_b: f64, lambda_c: f64) -> Self {
        Self { lambda_b, lambda_c }
    }

    pub fn validate(&self) -> Result<Self, Error> {
        let mut v = Vec::new();
        if !(self.lambda_b > 0.0 && self.lambda_b.is_finite()) {
            v.push(Violation::new("lambda_B", "lambda_B > 0 violated"));
        }
        if !(self.lambda_c > 0.0 && self.lambda_c.is_finite()) {
            v.push(Violation::new("lambda_C", "lambda_C > 0 violated"));
        }
        if v.is_empty() {
            Ok(*self)
        } else {
            Err(Error::Validation(v))
        }
    }
}

/// Mean and standard deviation of a random variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomVarStats {
    pub mean: f64,
    pub std: f64,
}

impl RandomVarStats {
    pub fn new(mean: f64, std: f64) -> Self {
        Self { mean, std }
    }

    pub fn from_cov(mean: f64, cov: f64) -> Self {
        Self::new(mean, mean * cov)
    }
}

/// Nominal loads, load statistics and load-combination factors.
///
/// The distribution families of the live loads (Gamma for the
/// arbitrary-point-in-time value, Gumbel for the 50-year maximum) are kept
/// as labels only; reliability uses the second moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoadModel {
    /// Nominal dead load (kN/m).
    #[serde(rename = "D_n")]
    pub dead_nominal: f64,
    /// Nominal live load (kN/m).
    #[serde(rename = "L_n")]
    pub live_nominal: f64,
    pub dead: RandomVarStats,
    pub live_apt: RandomVarStats,
    pub live_50: RandomVarStats,
    pub beam_resistance: RandomVarStats,
    pub column_resistance: RandomVarStats,
    /// Dead and live factors of the normal-loading combination.
    pub nlc_dead_factor: f64,
    pub nlc_live_factor: f64,
    /// Dead and live factors of the element-removal combination.
    pub apm_dead_factor: f64,
    pub apm_live_factor: f64,
}

impl LoadModel {
    pub const LIVE_APT_DISTRIBUTION: &'static str = "Gamma";
    pub const LIVE_50_DISTRIBUTION: &'static str = "Gumbel";

    /// Default statistics for the given nominal loads.
    pub fn from_nominal(dead_nominal: f64, live_nominal: f64) -> Self {
        Self {
            dead_nominal,
            live_nominal,
            dead: RandomVarStats::from_cov(1.05 * dead_nominal, 0.10),
            live_apt: RandomVarStats::from_cov(0.25 * live_nominal, 0.55),
            live_50: RandomVarStats::from_cov(live_nominal, 0.25),
            beam_resistance: RandomVarStats::from_cov(1.22, 0.165),
            column_resistance: RandomVarStats::from_cov(1.20, 0.184),
            nlc_dead_factor: 1.2,
            nlc_live_factor: 1.6,
            apm_dead_factor: 1.2,
            apm_live_factor: 0.5,
        }
    }

    /// Factored load of the normal loading condition (1.2 D + 1.6 L by default).
    pub fn nlc_load(&self) -> f64 {
        self.nlc_dead_factor * self.dead_nominal + self.nlc_live_factor * self.live_nominal
    }

    /// Factored load for element removal (1.2 D + 0.5 L by default).
    pub fn apm_load(&self) -> f64 {
        self.apm_dead_factor * self.dead_nominal + self.apm_live_factor * self.live_nominal
    }

    fn check(&self, out: &mut Vec<Violation>) {
        if !(self.dead_nominal >= 0.0) {
            out.push(Violation::new("loads.D_n", "D_n ≥ 0 violated"));
        }
        if !(self.live_nominal >= 0.0) {
            out.push(Violation::new("loads.L_n", "L_n ≥ 0 violated"));
        }
        let stats = [
            ("loads.dead", self.dead),
            ("loads.live_apt", self.live_apt),
            ("loads.live_50", self.live_50),
            ("loads.beam_resistance", self.beam_resistance),
            ("loads.column_resistance", self.column_resistance),
        ];
        for (name, s) in stats {
            if !(s.std >= 0.0 && s.std.is_finite()) {
                out.push(Violation::new(format!("{name}.std"), "std ≥ 0 violated"));
            }
            if !s.mean.is_finite() {
                out.push(Violation::new(format!("{name}.mean"), "mean must be finite"));
            }
        }
        for (name, s) in [
            ("loads.beam_resistance", self.beam_resistance),
            ("loads.column_resistance", self.column_resistance),
        ] {
            if !(s.mean > 0.0) {
                out.push(Violation::new(format!("{name}.mean"), "mean > 0 violated"));
            }
        }
        if !(self.nlc_load() > 0.0) {
            out.push(Violation::new(
                "loads.nlc_dead_factor",
                "normal-loading combination must be positive",
            ));
        }
        if !(self.apm_load() > 0.0) {
            out.push(Violation::new(
                "loads.apm_dead_factor",
                "element-removal combination must be positive",
            ));
        }
    }
}

impl Default for LoadModel {
    fn default() -> Self {
        Self::from_nominal(1.0, 1.0)
    }
}

/// Cost participation factors, failure multipliers and strengthening extent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostParameters {
    #[serde(rename = "alpha_B")]
    pub alpha_b: f64,
    #[serde(rename = "alpha_C")]
    pub alpha_c: f64,
    pub k_ductile: f64,
    pub k_brittle: f64,
    /// Number of strengthened stories.
    pub n_reinf_s: u32,
}

impl Default for CostParameters {
    fn default() -> Self {
        Self {
            alpha_b: 0.7,
            alpha_c: 0.7,
            k_ductile: 20.0,
            k_brittle: 40.0,
            n_reinf_s: 2,
        }
    }
}

impl CostParameters {
    fn check(&self, n_s: u32, out: &mut Vec<Violation>) {
        if !(0.0..=1.0).contains(&self.alpha_b) {
            out.push(Violation::new("costs.alpha_B", "0 ≤ alpha_B ≤ 1 violated"));
        }
        if !(0.0..=1.0).contains(&self.alpha_c) {
            out.push(Violation::new("costs.alpha_C", "0 ≤ alpha_C ≤ 1 violated"));
        }
        if !(self.k_ductile > 0.0 && self.k_ductile.is_finite()) {
            out.push(Violation::new("costs.k_ductile", "k_ductile > 0 violated"));
        }
        if !(self.k_brittle > 0.0 && self.k_brittle.is_finite()) {
            out.push(Violation::new("costs.k_brittle", "k_brittle > 0 violated"));
        }
        if self.n_reinf_s > n_s {
            out.push(Violation::new("costs.n_reinf_s", "n_reinf_s ≤ n_s violated"));
        }
    }
}

/// How the probability that local pancake collapse keeps spreading is
/// accumulated along the progression chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainWeighting {
    /// p_PL(n0) · p_PL(n0+2) ··· p_PL(j).
    #[default]
    Cumulative,
    /// p_PL(j-2) · p_PL(j) only.
    Adjacent,
}

/// A complete study definition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub geometry: FrameGeometry,
    pub loads: LoadModel,
    pub damage: DamageScenario,
    pub costs: CostParameters,
    /// 50-year local damage probability.
    #[serde(rename = "p_LD")]
    pub p_ld: f64,
    /// Catenary parameter.
    pub psi: f64,
    /// When set, catenary-augmented bending strengths enter the objective.
    pub catenary_in_objective: bool,
    pub chain_weighting: ChainWeighting,
    pub phi_nlc: f64,
    pub phi_apm: f64,
}

impl Scenario {
    /// The 8-story, 8-bay reference case.
    pub fn reference() -> Self {
        Self::for_geometry(FrameGeometry::stories_by_bays(8, 8))
    }

    /// Reference-case parameters on another geometry.
    pub fn for_geometry(geometry: FrameGeometry) -> Self {
        let costs = CostParameters {
            n_reinf_s: geometry.n_s.min(2),
            ..CostParameters::default()
        };
        Self {
            geometry,
            loads: LoadModel::default(),
            damage: DamageScenario::default(),
            costs,
            p_ld: 0.1,
            psi: 0.0,
            catenary_in_objective: false,
            chain_weighting: ChainWeighting::Cumulative,
            phi_nlc: 0.85,
            phi_apm: 1.0,
        }
    }

    /// Catenary parameter used for bending inside the objective.
    pub fn objective_psi(&self) -> f64 {
        if self.catenary_in_objective {
            self.psi
        } else {
            0.0
        }
    }

    /// Same scenario without any strengthened stories.
    pub fn unstrengthened(&self) -> Self {
        let mut s = *self;
        s.costs.n_reinf_s = 0;
        s
    }

    pub fn validate(&self) -> Result<Self, Error> {
        validate(self)
    }
}

impl Default for Scenario {
    fn default() -> Self {
        Self::reference()
    }
}

/// Returns the scenario unchanged if every invariant holds, otherwise the
/// full list of violations.
pub fn validate(scenario: &Scenario) -> Result<Scenario, Error> {
    let mut v = Vec::new();
    let g = &scenario.geometry;
    g.check(&mut v);
    scenario.loads.check(&mut v);
    scenario.costs.check(g.n_s, &mut v);

    let d = &scenario.damage;
    if g.n_c >= 2 && d.n_rc0 > g.n_c - 2 {
        v.push(Violation::new("damage.n_rc0", "n_rc0 ≤ n_c − 2 violated"));
    }
    if d.n_rs0 > g.n_s {
        v.push(Violation::new("damage.n_rs0", "n_rs0 ≤ n_s violated"));
    }
    if !(0.0..=1.0).contains(&scenario.p_ld) {
        v.push(Violation::new("p_LD", "0 ≤ p_LD ≤ 1 violated"));
    }
    if !(scenario.psi >= 0.0) {
        v.push(Violation::new("psi", "psi ≥ 0 violated"));
    } else if scenario.psi > 4.0 {
        v.push(Violation::new("psi", "psi ≤ 4 violated"));
    }
    for (name, phi) in [("phi_nlc", scenario.phi_nlc), ("phi_apm", scenario.phi_apm)] {
        if !(phi > 0.0 && phi <= 1.0) {
            v.push(Violation::new(name, format!("0 < {name} ≤ 1 violated")));
        }
    }

    if v.is_empty() {
        Ok(*scenario)
    } else {
        Err(Error::Validation(v))
    }
}

/// Annual threat probability equivalent to a 50-year local damage
/// probability: −ln(1 − p_LD)/50.
pub fn annual_from_lifetime(p_ld: f64) -> Result<f64, Error> {
    if p_ld == 1.0 {
        return Err(Error::Domain(
            "p_LD = 1 has no finite annual equivalent".into(),
        ));
    }
    if !(0.0..1.0).contains(&p_ld) {
        return Err(Error::Domain(format!("p_LD = {p_ld} outside [0, 1)")));
    }
    Ok(-(-p_ld).ln_1p() / 50.0)
}
