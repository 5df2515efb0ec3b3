//! `NxM` frame and `AxB` damage shorthands.

use crate::error::{Error, Result};
use crate::model::{DamageScenario, FrameGeometry};

fn pair(text: &str, what: &str) -> Result<(u32, u32)> {
    let bad = || Error::Domain(format!("{what} `{text}` is not of the form AxB"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

/// `stories x bays` on the reference bay (L = 6 m, H = 3 m).
pub fn parse_frame(text: &str) -> Result<FrameGeometry> {
    let (n_s, bays) = pair(text, "frame")?;
    if n_s == 0 || bays == 0 {
        return Err(Error::Domain(format!("frame `{text}` needs at least one story and bay")));
    }
    Ok(FrameGeometry::stories_by_bays(n_s, bays))
}

/// `removed columns x removed stories`.
pub fn parse_damage(text: &str) -> Result<DamageScenario> {
    let (a, b) = pair(text, "damage")?;
    Ok(DamageScenario::new(a, b))
}
