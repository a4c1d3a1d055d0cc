use anyhow::{bail, Context, Result};
use hardy_core::entanglement::{schmidt_spectrum, su_invariants};
use hardy_core::hardy::{DEFAULT_TOL_POS, DEFAULT_TOL_ZERO};
use hardy_core::linalg::norm_sqr;
use hardy_core::optimize::{maximize_q, OptimizeConfig};
use hardy_core::{hardy_state_max, verify_hardy_conditions, Scenario, SpinJ};
use serde::{Deserialize, Serialize};

use crate::args::{Format, StateArgs};
use crate::output::{angle_in, csv_bytes, fmt_f64, json_bytes};
use crate::Outcome;

/// State file; angles in radians, amplitudes as [re, im] in A-major order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub j: SpinJ,
    pub theta1: f64,
    pub theta2: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub angles_source: String,
    pub amplitudes: Vec<[f64; 2]>,
    pub norm_sqr: f64,
    pub q: f64,
    pub condition_probabilities: Vec<f64>,
    pub schmidt_spectrum: Vec<f64>,
    pub invariants: Vec<f64>,
    pub hardy_conditions_passed: bool,
}

pub fn state_file(a: &StateArgs) -> Result<StateFile> {
    let (t1, t2, source) = match (a.theta1, a.theta2) {
        (Some(t1), Some(t2)) => (angle_in(t1, a.radians), angle_in(t2, a.radians), "given"),
        (None, None) => {
            let r = maximize_q(a.j, &OptimizeConfig::default())?;
            (r.theta1_star, r.theta2_star, "optimized")
        }
        _ => bail!("give both --theta1 and --theta2, or neither"),
    };
    let (p1, p2) = (angle_in(a.phi1, a.radians), angle_in(a.phi2, a.radians));
    let sc = Scenario::from_angles(a.j, t1, t2, p1, p2).context("invalid angles")?;
    let psi = hardy_state_max(&sc)?;
    let rep = verify_hardy_conditions(&sc, &psi, DEFAULT_TOL_ZERO, DEFAULT_TOL_POS);
    Ok(StateFile {
        j: a.j,
        theta1: t1,
        theta2: t2,
        phi1: sc.dir_a().phi(),
        phi2: sc.dir_b().phi(),
        angles_source: source.to_string(),
        amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        norm_sqr: norm_sqr(psi.amplitudes()),
        q: rep.q,
        condition_probabilities: rep.probabilities.clone(),
        schmidt_spectrum: schmidt_spectrum(&psi).values,
        invariants: su_invariants(&psi).e,
        hardy_conditions_passed: rep.passed,
    })
}

pub fn run(a: &StateArgs) -> Result<Outcome> {
    let s = state_file(a)?;
    let bytes = match a.output.format_or(Format::Json) {
        Format::Json => json_bytes(&s)?,
        Format::Csv => {
            let d = s.j.dim();
            let rows: Vec<Vec<String>> = s
                .amplitudes
                .iter()
                .enumerate()
                .map(|(i, z)| {
                    vec![(i / d).to_string(), (i % d).to_string(), fmt_f64(z[0]), fmt_f64(z[1])]
                })
                .collect();
            csv_bytes(&["a", "b", "re", "im"], &rows)?
        }
    };
    Ok(Outcome::ok(bytes))
}
