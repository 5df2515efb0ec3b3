//! Minimization of the total expected cost over (λ_B, λ_C) and the
//! threshold local damage probability.

use serde::{Deserialize, Serialize};

use crate::design::MemberDesign;
use crate::error::{Error, Result};
use crate::mechanics::CollapseMode;
use crate::model::{DesignFactors, Scenario};
use crate::reliability::{beta_damaged, damaged_betas, intact_betas, BetaSet, LoadHorizon};
use crate::risk::total_expected_cost;

/// Box enforced on the design factors.
pub const LAMBDA_BOUNDS: (f64, f64) = (0.05, 5.0);
/// Start grid per axis.
pub const START_GRID: (f64, f64, usize) = (0.2, 2.5, 5);

/// Stopping rules and limits for the simplex search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub x_tolerance: f64,
    pub f_tolerance: f64,
    pub max_evaluations: usize,
    pub initial_step: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            x_tolerance: 1e-4,
            f_tolerance: 1e-8,
            max_evaluations: 5_000,
            initial_step: 0.1,
            lower: LAMBDA_BOUNDS.0,
            upper: LAMBDA_BOUNDS.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Nelder–Mead search with vertices projected onto the box
/// `[options.lower, options.upper]^n`.
///
/// Converged when the simplex diameter is below `x_tolerance` and the
/// spread of function values below `f_tolerance`.
pub fn nelder_mead<F>(mut f: F, start: &[f64], options: &NelderMeadOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = start.len();
    let clamp = |x: &mut Vec<f64>| {
        for v in x.iter_mut() {
            *v = v.clamp(options.lower, options.upper);
        }
    };
    let mut evaluations = 0;
    let mut eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut x0 = start.to_vec();
    clamp(&mut x0);
    let mut simplex = vec![x0.clone()];
    for i in 0..n {
        let mut x = x0.clone();
        // step inward when the start sits on the upper bound
        x[i] = if x[i] + options.initial_step <= options.upper {
            x[i] + options.initial_step
        } else {
            x[i] - options.initial_step
        };
        clamp(&mut x);
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evaluations)).collect();

    let mut converged = false;
    while evaluations < options.max_evaluations {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let diameter = simplex[1..]
            .iter()
            .map(|x| {
                x.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        let spread = values[n] - values[0];
        if diameter < options.x_tolerance && spread < options.f_tolerance {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|x| x[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| {
            let mut x: Vec<f64> = centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect();
            clamp(&mut x);
            x
        };

        let xr = along(1.0);
        let fr = eval(&xr, &mut evaluations);
        if fr < values[0] {
            let xe = along(2.0);
            let fe = eval(&xe, &mut evaluations);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[n] {
            let xc = along(0.5);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        };
        if fc < values[n].min(fr) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=n {
            let x: Vec<f64> = simplex[i]
                .iter()
                .zip(&simplex[0])
                .map(|(a, b)| b + 0.5 * (a - b))
                .collect();
            values[i] = eval(&x, &mut evaluations);
            simplex[i] = x;
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)))
        .unwrap_or(0);
    SimplexResult {
        x: simplex[best].clone(),
        f: values[best],
        evaluations,
        converged,
    }
}

/// Starting points: the 5 × 5 grid plus the code design (1, 1).
pub fn start_points() -> Vec<DesignFactors> {
    let (lo, hi, k) = START_GRID;
    let axis: Vec<f64> = (0..k)
        .map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
        .collect();
    let mut pts: Vec<DesignFactors> = axis
        .iter()
        .flat_map(|&b| axis.iter().map(move |&c| DesignFactors::new(b, c)))
        .collect();
    pts.push(DesignFactors::UNIT);
    pts
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub lambda_star: DesignFactors,
    pub c_te_star: f64,
    /// Conditional (apt) betas for the initial damage at the optimum.
    pub damaged_betas: BetaSet,
    /// 50-year betas of the intact frame at the optimum.
    pub intact_betas: BetaSet,
    pub starts_used: usize,
    pub converged: bool,
}

/// Best local minimum of the total expected cost over all start points.
///
/// Ties are broken by lowest cost, then lexicographically smallest λ.
pub fn minimize_total_cost(scenario: &Scenario, design: &MemberDesign) -> Result<OptimizationResult> {
    let options = NelderMeadOptions::default();
    let objective = |x: &[f64]| {
        total_expected_cost(scenario, design, DesignFactors::new(x[0], x[1]))
            .map(|c| c.total)
            .unwrap_or(f64::INFINITY)
    };

    let mut best: Option<SimplexResult> = None;
    let mut starts_used = 0;
    for start in start_points() {
        let f0 = objective(&[start.lambda_b, start.lambda_c]);
        if !f0.is_finite() {
            continue;
        }
        starts_used += 1;
        let mut r = nelder_mead(objective, &[start.lambda_b, start.lambda_c], &options);
        if r.converged {
            // restart from the optimum to escape a collapsed simplex
            let again = nelder_mead(objective, &r.x, &options);
            if again.f <= r.f {
                r = SimplexResult {
                    evaluations: r.evaluations + again.evaluations,
                    ..again
                };
            }
        }
        if !r.f.is_finite() {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => r.f < b.f || (r.f == b.f && r.x < b.x),
        };
        if better {
            best = Some(r);
        }
    }

    let best = best.ok_or_else(|| {
        Error::Numerical("objective is non-finite at every start point".into())
    })?;
    let lambda_star = DesignFactors::new(best.x[0], best.x[1]);
    Ok(OptimizationResult {
        lambda_star,
        c_te_star: best.f,
        damaged_betas: damaged_betas(scenario, design, lambda_star, LoadHorizon::Apt)?,
        intact_betas: intact_betas(scenario, design, lambda_star, LoadHorizon::FiftyYear)?,
        starts_used,
        converged: best.converged,
    })
}

/// Interval searched for the threshold, in log10(p_LD).
pub const THRESHOLD_LOG10_RANGE: (f64, f64) = (-6.0, 0.0);
pub const THRESHOLD_LOG10_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ThresholdStatus {
    /// Sign change of β_B* bracketed within the tolerance.
    Root {
        p_ld: f64,
        log10_lower: f64,
        log10_upper: f64,
    },
    /// β_B* ≥ 0 over the whole range.
    AlwaysStrengthen,
    /// β_B* < 0 over the whole range.
    NeverStrengthen,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    #[serde(flatten)]
    pub status: ThresholdStatus,
    /// β_B* at the lower and upper ends of the search range.
    pub beta_at_lower: f64,
    pub beta_at_upper: f64,
    pub optimizations: usize,
}

impl ThresholdResult {
    pub fn p_ld(&self) -> Option<f64> {
        match self.status {
            ThresholdStatus::Root { p_ld, .. } => Some(p_ld),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.status {
            ThresholdStatus::Root { .. } => "root",
            ThresholdStatus::AlwaysStrengthen => "always-strengthen",
            ThresholdStatus::NeverStrengthen => "never-strengthen",
        }
    }
}

/// Conditional bending reliability (apt) at the optimum for the given
/// local damage probability. Uses the catenary strength whenever ψ > 0.
pub fn optimal_bending_beta(scenario: &Scenario, design: &MemberDesign, p_ld: f64) -> Result<f64> {
    let mut s = *scenario;
    s.p_ld = p_ld;
    let opt = minimize_total_cost(&s, design)?;
    let mode = if s.psi > 0.0 {
        CollapseMode::Catenary
    } else {
        CollapseMode::Bending
    };
    beta_damaged(
        &s,
        design,
        opt.lambda_star,
        s.damage.n_rc0,
        s.damage.n_rs0,
        mode,
        LoadHorizon::Apt,
    )
}

/// Bisection on log10(p_LD) for the sign change of the optimal bending
/// reliability index.
pub fn threshold_probability(scenario: &Scenario, design: &MemberDesign) -> Result<ThresholdResult> {
    let (mut lo, mut hi) = THRESHOLD_LOG10_RANGE;
    let g = |log_p: f64| optimal_bending_beta(scenario, design, 10f64.powf(log_p));
    let g_lo = g(lo)?;
    let g_hi = g(hi)?;
    let mut optimizations = 2;
    let mut result = ThresholdResult {
        status: ThresholdStatus::AlwaysStrengthen,
        beta_at_lower: g_lo,
        beta_at_upper: g_hi,
        optimizations,
    };
    let neg_lo = g_lo < 0.0;
    if neg_lo == (g_hi < 0.0) {
        result.status = if neg_lo {
            ThresholdStatus::NeverStrengthen
        } else {
            ThresholdStatus::AlwaysStrengthen
        };
        return Ok(result);
    }
    while hi - lo > THRESHOLD_LOG10_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let v = g(mid)?;
        optimizations += 1;
        if (v < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    result.status = ThresholdStatus::Root {
        p_ld: 10f64.powf(mid),
        log10_lower: lo,
        log10_upper: hi,
    };
    result.optimizations = optimizations;
    Ok(result)
}
