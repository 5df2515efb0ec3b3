//! Member sizing for the normal loading condition and strengthening for
//! discretionary column removal (alternate path method).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DamageScenario, FrameGeometry, LoadModel, Scenario};

/// Beam plastic moments (kNm) and column crushing capacities (kN).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemberDesign {
    /// B_y under the normal loading condition.
    pub beam_moment_nlc: f64,
    /// R_c under the normal loading condition.
    pub column_crush_nlc: f64,
    /// Strengthened B_y; design factors multiply this value.
    pub beam_moment: f64,
    /// Strengthened R_c; design factors multiply this value.
    pub column_crush: f64,
    pub beam_sf: f64,
    pub column_sf: f64,
}

impl MemberDesign {
    pub fn from_capacities(
        beam_moment_nlc: f64,
        column_crush_nlc: f64,
        beam_moment: f64,
        column_crush: f64,
    ) -> Self {
        let (beam_sf, column_sf) = strengthening_factors(
            beam_moment_nlc,
            column_crush_nlc,
            beam_moment,
            column_crush,
        );
        Self {
            beam_moment_nlc,
            column_crush_nlc,
            beam_moment,
            column_crush,
            beam_sf,
            column_sf,
        }
    }

    /// Strengthened frame for the scenario's discretionary damage.
    pub fn strengthened(scenario: &Scenario) -> Result<Self> {
        let (by, rc) = design_nlc(&scenario.geometry, &scenario.loads, scenario.phi_nlc)?;
        let (by0, rc0) = strengthen_apm(
            &scenario.geometry,
            &scenario.loads,
            &scenario.damage,
            scenario.phi_apm,
            rc,
        )?;
        Ok(Self::from_capacities(by, rc, by0, rc0))
    }

    /// Frame designed for normal loading only; its capacities are the NLC ones.
    pub fn normal(scenario: &Scenario) -> Result<Self> {
        let (by, rc) = design_nlc(&scenario.geometry, &scenario.loads, scenario.phi_nlc)?;
        Ok(Self::from_capacities(by, rc, by, rc))
    }

    /// Strengthened beams weaker than the NLC design. Never happens for
    /// L ≥ H with the default load factors.
    pub fn beam_below_nlc(&self) -> bool {
        self.beam_moment < self.beam_moment_nlc
    }
}

fn check_phi(phi: f64) -> Result<()> {
    if phi > 0.0 && phi <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("resistance factor {phi} outside (0, 1]")))
    }
}

/// Required beam moment and column crushing capacity under normal loading.
pub fn design_nlc(geom: &FrameGeometry, loads: &LoadModel, phi: f64) -> Result<(f64, f64)> {
    check_phi(phi)?;
    let q = loads.nlc_load();
    let l = geom.bay_length;
    let beam = l * l / (16.0 * phi) * q;
    let column = l * geom.ns() * (geom.nc() - 1.0) / (phi * geom.nc()) * q;
    Ok((beam, column))
}

/// Capacities required to bridge the discretionary damage.
///
/// Columns never drop below the NLC requirement; beams have no such floor.
pub fn strengthen_apm(
    geom: &FrameGeometry,
    loads: &LoadModel,
    damage: &DamageScenario,
    phi: f64,
    column_crush_nlc: f64,
) -> Result<(f64, f64)> {
    check_phi(phi)?;
    if damage.n_rc0 == 0 {
        return Err(Error::Domain(
            "no columns removed: nothing to strengthen, use the normal-loading design".into(),
        ));
    }
    if damage.n_rc0 + 2 > geom.n_c || damage.n_rs0 > geom.n_s {
        return Err(Error::Domain(format!(
            "damage {damage} does not fit frame {geom}"
        )));
    }
    let q = loads.apm_load();
    let (l, ns, nc) = (geom.bay_length, geom.ns(), geom.nc());
    let n_rc = f64::from(damage.n_rc0);
    let beam = n_rc * l * l / (4.0 * phi) * q;
    let spread = 2.0 - (nc - 1.0) / nc + n_rc * (1.0 - f64::from(damage.n_rs0) / ns);
    let column = column_crush_nlc.max(l * ns / phi * spread * q);
    Ok((beam, column))
}

/// (B_sf, R_sf): strengthened over NLC capacities.
pub fn strengthening_factors(
    beam_moment_nlc: f64,
    column_crush_nlc: f64,
    beam_moment: f64,
    column_crush: f64,
) -> (f64, f64) {
    (beam_moment / beam_moment_nlc, column_crush / column_crush_nlc)
}
