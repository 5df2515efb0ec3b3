//! Risk-based optimal design of regular plane frames subject to column
//! loss: collapse mechanics, code design, reliability, expected-cost
//! optimization and parameter studies.

pub mod cost;
pub mod design;
pub mod error;
pub mod mechanics;
pub mod model;
pub mod optimize;
pub mod report;
pub mod reliability;
pub mod risk;
pub mod study;

pub use design::MemberDesign;
pub use error::{Error, Result, Violation};
pub use mechanics::CollapseMode;
pub use model::{
    annual_from_lifetime, ChainWeighting, CostParameters, DamageScenario, DesignFactors,
    FrameGeometry, LoadModel, RandomVarStats, Scenario,
};
pub use optimize::{minimize_total_cost, threshold_probability, OptimizationResult, ThresholdResult, ThresholdStatus};
pub use reliability::{std_normal_cdf, BetaSet, LoadHorizon};
pub use risk::{progression_trace, total_expected_cost, ExpectedCost, ProgressionRow};
