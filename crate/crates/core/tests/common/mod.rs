//! Property checks shared by the property tests and the acceptance suite.
//! Each returns a description of the first counterexample.

#![allow(dead_code)]

use framerisk::cost::construction_cost;
use framerisk::mechanics::{global_pancake_strength, intact_pancake_strength};
use framerisk::reliability::{beta_damaged, beta_intact, LoadHorizon};
use framerisk::report::FRAME_CATALOG;
use framerisk::risk::total_expected_cost;
use framerisk::study::outputs;
use framerisk::study::svg::{Chart, Series};
use framerisk::{CollapseMode, DesignFactors, FrameGeometry, MemberDesign, Scenario};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Check = Result<(), String>;

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Check {
    r.map_err(|e| e.to_string())
}

pub fn geometry_strategy() -> impl Strategy<Value = FrameGeometry> {
    (1u32..40, 3u32..40, 1.0f64..15.0, 1.0f64..8.0).prop_map(|(n_s, n_c, l, h)| FrameGeometry::new(n_s, n_c, l, h))
}

/// Global pancake strength with no removed column equals the intact
/// pancake strength exactly, for any vertical damage extent.
pub fn pancake_reduction(cases: u32) -> Check {
    finish(runner(cases, 1).run(&(geometry_strategy(), 1.0f64..1000.0, 0u32..40), |(g, rc, n_rs)| {
        let n_rs = n_rs.min(g.n_s);
        let damaged = global_pancake_strength(&g, rc, 0, n_rs).unwrap();
        let intact = intact_pancake_strength(&g, rc);
        prop_assert!(damaged == intact, "{damaged} != {intact} for {g:?}");
        let oracle = rc / g.bay_length * f64::from(g.n_c) / (f64::from(g.n_s) * f64::from(g.n_c - 1));
        prop_assert!((intact - oracle).abs() <= 1e-12 * oracle);
        Ok(())
    }))
}

/// Every reliability index strictly increases with its design factor.
pub fn beta_increasing(cases: u32) -> Check {
    let s = Scenario::reference();
    let d = MemberDesign::strengthened(&s).unwrap();
    let mut cat = s;
    cat.psi = 2.0;
    finish(runner(cases, 2).run(&(0.05f64..5.0, 0.05f64..5.0, 0.05f64..5.0), |(a, b, other)| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-6);
        for h in [LoadHorizon::Apt, LoadHorizon::FiftyYear] {
            let pairs = [
                (CollapseMode::Bending, DesignFactors::new(lo, other), DesignFactors::new(hi, other)),
                (CollapseMode::Catenary, DesignFactors::new(lo, other), DesignFactors::new(hi, other)),
                (CollapseMode::GlobalPancake, DesignFactors::new(other, lo), DesignFactors::new(other, hi)),
                (CollapseMode::LocalPancake, DesignFactors::new(other, lo), DesignFactors::new(other, hi)),
            ];
            for (mode, f_lo, f_hi) in pairs {
                let b = |f| beta_damaged(&cat, &d, f, 1, 1, mode, h).unwrap();
                prop_assert!(b(f_hi) > b(f_lo), "{mode} {h:?} damaged");
                if mode != CollapseMode::LocalPancake {
                    let b = |f| beta_intact(&cat, &d, f, mode, h).unwrap();
                    prop_assert!(b(f_hi) > b(f_lo), "{mode} {h:?} intact");
                }
            }
        }
        Ok(())
    }))
}

fn sampled_point() -> impl Strategy<Value = (Scenario, DesignFactors, f64, f64)> {
    (0..FRAME_CATALOG.len(), 0.05f64..5.0, 0.05f64..5.0, 0.0f64..1.0, 0.0f64..1.0, any::<bool>()).prop_map(
        |(f, lb, lc, p1, p2, adjacent)| {
            let (n_s, bays) = FRAME_CATALOG[f];
            let mut s = Scenario::for_geometry(FrameGeometry::stories_by_bays(n_s, bays));
            if adjacent {
                s.chain_weighting = framerisk::ChainWeighting::Adjacent;
            }
            (s, DesignFactors::new(lb, lc), p1.min(p2), p1.max(p2))
        },
    )
}

/// C_TE ≥ C_const, C_TE nondecreasing in p_LD, and the bracket multiplied
/// by p_LD bounded by C_ID + k_brittle·C_const(1,1).
pub fn expected_cost_bounds(cases: u32) -> Check {
    finish(runner(cases, 3).run(&sampled_point(), |(s, f, p_lo, p_hi)| {
        let d = MemberDesign::strengthened(&s).unwrap();
        let at = |p: f64| {
            let mut t = s;
            t.p_ld = p;
            total_expected_cost(&t, &d, f).map_err(|e| TestCaseError::fail(e.to_string()))
        };
        let (lo, hi) = (at(p_lo)?, at(p_hi)?);
        let c_const = construction_cost(&s, &d, f);
        prop_assert!(lo.total >= c_const && hi.total >= c_const);
        prop_assert!(hi.total >= lo.total);
        let bound = lo.initial_damage + s.costs.k_brittle * construction_cost(&s, &d, DesignFactors::UNIT);
        prop_assert!(lo.damage_bracket() <= bound + 1e-12, "{} > {}", lo.damage_bracket(), bound);
        Ok(())
    }))
}

/// Every emitter produces byte-identical output when rerun.
pub fn emitters_deterministic() -> Check {
    let s = Scenario::reference();
    let d = MemberDesign::strengthened(&s).unwrap();
    let rows = framerisk::progression_trace(&s, &d, DesignFactors::UNIT).map_err(|e| e.to_string())?;
    let trace = || outputs::trace_table(&rows).to_csv_string();
    if trace() != trace() {
        return Err("trace CSV differs between runs".into());
    }
    let empty = framerisk::study::table::Table::new(["a", "b"]);
    if empty.to_csv_string() != "a,b\n" {
        return Err("empty table is not header-only".into());
    }
    let chart = || Chart {
        title: "x".into(),
        x_label: "p".into(),
        y_label: "y".into(),
        log_x: true,
        series: vec![Series::new("s", vec![(1e-3, 1.0), (1e-1, f64::NAN), (1.0, 2.0)])],
    };
    if chart().render() != chart().render() {
        return Err("SVG differs between runs".into());
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        outputs::write_reproduction_tables(out).map_err(|e| e.to_string())?;
    }
    for name in outputs::REPRODUCTION_FILES {
        let x = std::fs::read(a.join(name)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.join(name)).map_err(|e| e.to_string())?;
        if x != y {
            return Err(format!("{name} differs between runs"));
        }
    }
    Ok(())
}
