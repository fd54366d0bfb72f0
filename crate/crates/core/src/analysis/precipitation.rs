//! Orbits of an ancilla stabilizer injected into an encoder with identity
//! logical inputs, and the reinjection schedule that drives a looping
//! orbit back to the identity memory.

use crate::diagram::StateDiagram;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecipitationOrbit {
    /// 1-based ancilla position.
    pub ancilla: usize,
    pub exponent: u8,
    /// Memory after each frame for a single injection: `o_1, o_2, …`,
    /// stopping at the identity or at the first repeated state.
    pub free_orbit: Vec<usize>,
    /// `t`: index into the orbit (1-based) where the loop starts.
    pub loop_start: Option<usize>,
    /// `l`: loop length.
    pub loop_len: Option<usize>,
    /// Frames at which `Z_i^a` is injected.
    pub injections: Vec<usize>,
    /// Memory after each frame of the scheduled run.
    pub trajectory: Vec<usize>,
    pub steps_to_identity: usize,
    /// `t + p·l`, or the free orbit length when no loop occurs.
    pub bound: usize,
}

impl PrecipitationOrbit {
    pub fn within_bound(&self) -> bool {
        self.steps_to_identity <= self.bound && self.trajectory.last().is_none_or(|&v| v == 0)
    }
}

/// Injects `Z_i^a` at frame 0 and follows all-identity inputs. If the orbit
/// enters a loop of length `l`, the injection is repeated at frames `j·l`
/// for `j < p`, so that `p` copies of the looping state coincide and cancel.
pub fn precipitation_orbit(d: &StateDiagram, ancilla: usize, exponent: u8, max_steps: usize) -> Result<PrecipitationOrbit> {
    let pr = *d.params();
    let p = pr.p();
    if ancilla == 0 || ancilla > pr.ancillas() {
        return Err(Error::InvalidParams(format!("ancilla index {ancilla} outside 1..={}", pr.ancillas())));
    }
    if exponent >= p {
        return Err(Error::InvalidParams(format!("exponent {exponent} outside [0, {p})")));
    }
    let label = exponent as usize * (p as usize).pow(ancilla as u32 - 1) * d.logical_label_count();
    let mut orbit = PrecipitationOrbit {
        ancilla,
        exponent,
        free_orbit: Vec::new(),
        loop_start: None,
        loop_len: None,
        injections: vec![0],
        trajectory: Vec::new(),
        steps_to_identity: 0,
        bound: 0,
    };
    if label == 0 {
        orbit.trajectory.push(0);
        return Ok(orbit);
    }

    let mut seen = vec![0usize; d.num_vertices()];
    let mut cur = d.target(0, label);
    loop {
        orbit.free_orbit.push(cur);
        let s = orbit.free_orbit.len();
        if cur == 0 {
            orbit.trajectory = orbit.free_orbit.clone();
            orbit.steps_to_identity = s;
            orbit.bound = s;
            return check_steps(orbit, max_steps);
        }
        if seen[cur] != 0 {
            orbit.loop_start = Some(seen[cur]);
            orbit.loop_len = Some(s - seen[cur]);
            orbit.free_orbit.pop();
            break;
        }
        seen[cur] = s;
        cur = d.target(cur, 0);
    }

    let (t, l) = (orbit.loop_start.unwrap_or(0), orbit.loop_len.unwrap_or(0));
    orbit.bound = t + p as usize * l;
    orbit.injections = (0..p as usize).map(|j| j * l).collect();
    let last = *orbit.injections.last().unwrap_or(&0);
    let mut state = 0usize;
    let mut frame = 0usize;
    loop {
        let input = if orbit.injections.binary_search(&frame).is_ok() { label } else { 0 };
        state = d.target(state, input);
        orbit.trajectory.push(state);
        frame += 1;
        if frame > last && state == 0 {
            orbit.steps_to_identity = frame;
            return check_steps(orbit, max_steps);
        }
        if frame >= max_steps {
            return Err(Error::MaxStepsExceeded { max_steps, trajectory: orbit.trajectory });
        }
    }
}

fn check_steps(orbit: PrecipitationOrbit, max_steps: usize) -> Result<PrecipitationOrbit> {
    if orbit.steps_to_identity > max_steps {
        return Err(Error::MaxStepsExceeded { max_steps, trajectory: orbit.trajectory });
    }
    Ok(orbit)
}
