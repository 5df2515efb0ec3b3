//! Closed-form collapse strengths of intact and damaged regular frames.
//!
//! Every strength is a uniformly distributed load intensity (kN/m). Beams
//! fail by plastic hinge mechanisms, columns by brittle crushing. The
//! dynamic amplification of column loads is already contained in the
//! local and global pancake expressions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::FrameGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CollapseMode {
    Bending,
    LocalPancake,
    GlobalPancake,
    Catenary,
}

impl CollapseMode {
    pub const ALL: [CollapseMode; 4] = [
        CollapseMode::GlobalPancake,
        CollapseMode::LocalPancake,
        CollapseMode::Bending,
        CollapseMode::Catenary,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            CollapseMode::Bending => "bending",
            CollapseMode::LocalPancake => "local_pancake",
            CollapseMode::GlobalPancake => "global_pancake",
            CollapseMode::Catenary => "catenary",
        }
    }
}

impl fmt::Display for CollapseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn check_removed(geom: &FrameGeometry, n_rc: u32) -> Result<()> {
    if n_rc == 0 {
        return Err(Error::Domain(
            "n_rc = 0 describes the intact frame; use the intact strength".into(),
        ));
    }
    if n_rc + 2 > geom.n_c {
        return Err(Error::Domain(format!(
            "n_rc = {n_rc} leaves fewer than two intact columns (n_c = {})",
            geom.n_c
        )));
    }
    Ok(())
}

/// Three-hinge beam mechanism of the intact frame, 16 B_y / L² · (1 + ψ/8).
pub fn intact_bending_strength(geom: &FrameGeometry, beam_moment: f64, psi: f64) -> f64 {
    let l = geom.bay_length;
    16.0 * beam_moment / (l * l) * (1.0 + psi / 8.0)
}

/// Beam mechanism bridging `n_rc` removed columns, 4 B_y / (n_rc L²) · (1 + ψ/4).
///
/// The squared effective span grows linearly with the number of removed
/// columns, which reproduces the beam strengthening factors 2.06, 4.13 and
/// 6.19 for one, two and three removed columns.
pub fn damaged_bending_strength(
    geom: &FrameGeometry,
    beam_moment: f64,
    n_rc: u32,
    psi: f64,
) -> Result<f64> {
    check_removed(geom, n_rc)?;
    let l = geom.bay_length;
    Ok(4.0 * beam_moment / (f64::from(n_rc) * l * l) * (1.0 + psi / 4.0))
}

/// Static crushing of all columns of the intact frame.
pub fn intact_pancake_strength(geom: &FrameGeometry, column_crush: f64) -> f64 {
    column_crush / (geom.bay_length * geom.ns()) * (geom.nc() / (geom.nc() - 1.0))
}

/// Overload of the two intact columns nearest to the removed ones.
pub fn local_pancake_strength(
    geom: &FrameGeometry,
    column_crush: f64,
    n_rc: u32,
    n_rs: u32,
) -> Result<f64> {
    check_removed(geom, n_rc)?;
    if n_rs > geom.n_s {
        return Err(Error::Domain(format!("n_rs = {n_rs} exceeds n_s")));
    }
    let (ns, nc) = (geom.ns(), geom.nc());
    let spread = 2.0 - (nc - 1.0) / nc + f64::from(n_rc) * (1.0 - f64::from(n_rs) / ns);
    Ok(column_crush / geom.bay_length / (ns * spread))
}

/// Crushing of all remaining columns of the damaged frame.
pub fn global_pancake_strength(
    geom: &FrameGeometry,
    column_crush: f64,
    n_rc: u32,
    n_rs: u32,
) -> Result<f64> {
    if n_rc >= geom.n_c {
        return Err(Error::Domain(format!(
            "n_rc = {n_rc} removes every column (n_c = {})",
            geom.n_c
        )));
    }
    if n_rs > geom.n_s {
        return Err(Error::Domain(format!("n_rs = {n_rs} exceeds n_s")));
    }
    let (ns, nc) = (geom.ns(), geom.nc());
    let (rc, rs) = (f64::from(n_rc), f64::from(n_rs));
    let denom = (nc - 1.0) * (nc + rc) - 2.0 * (rs / ns) * rc * nc;
    if denom <= 0.0 {
        return Err(Error::DegenerateGeometry(format!(
            "global pancake denominator {denom} ≤ 0 for n_rc = {n_rc}, n_rs = {n_rs}"
        )));
    }
    // integer-valued ratio first, so n_rc = 0 matches the intact form bit for bit
    Ok(column_crush / (geom.bay_length * ns) * (nc * (nc - rc) / denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn reference() -> FrameGeometry {
        FrameGeometry::stories_by_bays(8, 8)
    }

    #[test]
    fn intact_bending() {
        let g = reference();
        assert_relative_eq!(intact_bending_strength(&g, 7.4118, 0.0), 3.2941, epsilon = 1e-4);
        assert_relative_eq!(intact_bending_strength(&g, 7.4118, 2.0), 4.1176, epsilon = 1e-4);
        let q = intact_bending_strength(&g, 12.3, 0.0);
        assert_relative_eq!(q * 36.0 / 16.0, 12.3, epsilon = 1e-12);
    }

    #[test]
    fn damaged_bending() {
        let g = reference();
        assert_relative_eq!(damaged_bending_strength(&g, 15.3, 1, 0.0).unwrap(), 1.70, epsilon = 1e-12);
        assert_relative_eq!(damaged_bending_strength(&g, 15.3, 2, 0.0).unwrap(), 0.85, epsilon = 1e-12);
        let base = damaged_bending_strength(&g, 15.3, 1, 0.0).unwrap();
        let cat = damaged_bending_strength(&g, 15.3, 1, 2.0).unwrap();
        assert_relative_eq!(cat, 1.5 * base, epsilon = 1e-12);
        assert!(damaged_bending_strength(&g, 15.3, 0, 0.0).is_err());
        assert!(damaged_bending_strength(&g, 15.3, 8, 0.0).is_err());
    }

    #[test]
    fn intact_pancake() {
        let g = reference();
        assert_relative_eq!(intact_pancake_strength(&g, 140.55), 3.2941, epsilon = 1e-4);
        let tiny = FrameGeometry::new(1, 2, 1.0, 1.0);
        assert_relative_eq!(intact_pancake_strength(&tiny, 1.0), 2.0);
        assert_relative_eq!(
            intact_pancake_strength(&g, 280.0),
            2.0 * intact_pancake_strength(&g, 140.0)
        );
    }

    #[test]
    fn local_pancake() {
        let g = reference();
        assert_relative_eq!(local_pancake_strength(&g, 162.07, 1, 1).unwrap(), 1.7, epsilon = 1e-4);
        assert_relative_eq!(
            local_pancake_strength(&g, 162.07 * 1.3, 1, 1).unwrap(),
            2.21,
            epsilon = 1e-4
        );
        // full-height removal drops the n_rc term
        let full = local_pancake_strength(&g, 100.0, 3, 8).unwrap();
        let expected = 100.0 / 6.0 / (8.0 * (2.0 - 8.0 / 9.0));
        assert_relative_eq!(full, expected, epsilon = 1e-12);
    }

    #[test]
    fn global_pancake() {
        let g = reference();
        assert_relative_eq!(global_pancake_strength(&g, 162.07, 1, 1).unwrap(), 3.1268, epsilon = 1e-4);
        // one column left: finite, not zero
        let last = global_pancake_strength(&g, 162.07, 8, 0).unwrap();
        assert!(last > 0.0);
        assert!(global_pancake_strength(&g, 162.07, 9, 0).is_err());
        let squat = FrameGeometry::new(1, 3, 6.0, 3.0);
        assert!(matches!(
            global_pancake_strength(&squat, 1.0, 2, 1),
            Err(Error::DegenerateGeometry(_))
        ));
    }

    fn geometry() -> impl Strategy<Value = FrameGeometry> {
        (1u32..30, 2u32..30, 0.5f64..12.0, 0.5f64..6.0)
            .prop_map(|(s, c, l, h)| FrameGeometry::new(s, c, l, h))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn global_reduces_to_intact(g in geometry(), rc in 1.0f64..1e4, n_rs in 0u32..30) {
            let n_rs = n_rs.min(g.n_s);
            let a = global_pancake_strength(&g, rc, 0, n_rs).unwrap();
            let b = intact_pancake_strength(&g, rc);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn damage_weakens(g in geometry(), by in 0.1f64..100.0, rc in 1.0f64..1e4, n_rs in 0u32..29) {
            prop_assume!(g.n_c >= 4);
            let n_rs = n_rs.min(g.n_s - 1);
            for n in 1..g.n_c - 2 {
                let b0 = damaged_bending_strength(&g, by, n, 0.0).unwrap();
                let b1 = damaged_bending_strength(&g, by, n + 1, 0.0).unwrap();
                prop_assert!(b1 < b0);
                let p0 = local_pancake_strength(&g, rc, n, n_rs).unwrap();
                let p1 = local_pancake_strength(&g, rc, n + 1, n_rs).unwrap();
                prop_assert!(p1 < p0);
            }
        }

        #[test]
        fn homogeneous_in_capacity(g in geometry(), cap in 0.1f64..1e3, t in 0.1f64..10.0) {
            let tol = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1e-300);
            prop_assert!(tol(intact_bending_strength(&g, t * cap, 1.0), t * intact_bending_strength(&g, cap, 1.0)));
            prop_assert!(tol(intact_pancake_strength(&g, t * cap), t * intact_pancake_strength(&g, cap)));
            if g.n_c >= 3 {
                prop_assert!(tol(damaged_bending_strength(&g, t * cap, 1, 0.0).unwrap(), t * damaged_bending_strength(&g, cap, 1, 0.0).unwrap()));
                prop_assert!(tol(local_pancake_strength(&g, t * cap, 1, 0).unwrap(), t * local_pancake_strength(&g, cap, 1, 0).unwrap()));
                prop_assert!(tol(global_pancake_strength(&g, t * cap, 1, 0).unwrap(), t * global_pancake_strength(&g, cap, 1, 0).unwrap()));
            }
        }

        #[test]
        fn catenary_adds_strength(g in geometry(), by in 0.1f64..100.0, psi in 0.01f64..4.0) {
            prop_assert!(intact_bending_strength(&g, by, psi) > intact_bending_strength(&g, by, 0.0));
            if g.n_c >= 3 {
                prop_assert!(damaged_bending_strength(&g, by, 1, psi).unwrap() > damaged_bending_strength(&g, by, 1, 0.0).unwrap());
            }
        }
    }
}
