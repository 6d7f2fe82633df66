//! Replaying witness plans.

use serde::Serialize;

use crate::decide::{replay, retract_all, Question, WitnessPlan};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::invariants::warping_matrix;
use crate::transform::{apply_regions, toggle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub pass: bool,
    /// Constrained crossings whose outcome differs from the claim.
    pub diff: Vec<String>,
    /// Crossings changed between input and result.
    pub changed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warping_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl Verification {
    fn failed(why: String) -> Verification {
        Verification { pass: false, diff: Vec::new(), changed: Vec::new(), warping_zero: None, failure: Some(why) }
    }
}

/// Inserts the script, applies the regions, retracts everything and checks
/// the crossing changes against the plan's claim.
pub fn verify_witness(d: &Diagram, plan: &WitnessPlan) -> Result<Verification> {
    for x in plan.target.iter().chain(&plan.care) {
        d.crossing_index(x).map_err(|e| Error::Replay(e.to_string()))?;
    }
    let (e, recs) = replay(d, &plan.script)?;
    let faces = plan.regions.iter().map(|f| e.face_index(f)).collect::<Result<Vec<_>>>().map_err(|err| Error::Replay(err.to_string()))?;
    let flipped = apply_regions(&e, &faces);
    let back = match retract_all(&flipped, &recs) {
        Ok(b) => b,
        Err(Error::NotRetractable(m)) => return Ok(Verification::failed(format!("not retractable: {m}"))),
        Err(err) => return Err(err),
    };
    let changed = back.crossing_diff(d);
    let idx: Option<Vec<usize>> = changed.iter().map(|x| d.crossing_index(x).ok()).collect();
    if idx.is_none_or(|xs| toggle(d, &xs) != back) {
        return Ok(Verification::failed("retraction did not restore the input's shape".into()));
    }
    let diff: Vec<String> = plan.care.iter().filter(|x| changed.contains(x) != plan.target.contains(x)).cloned().collect();
    let warping_zero = (plan.question == Question::Splittable).then(|| warping_matrix(&back).is_zero());
    Ok(Verification { pass: diff.is_empty() && warping_zero != Some(false), diff, changed, warping_zero, failure: None })
}
