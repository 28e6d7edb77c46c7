//! Plain `2^V` reference computations, independent of the propagation solver
//! and of the Gray-code walk. Used by `--oracle` and by the test suites.

use crate::complex::SurfaceComplex;
use crate::ising::{energy, is_satisfying, Constraint, SpinState};

pub const ORACLE_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCounts {
    pub satisfying_count: u64,
    pub min_energy: i64,
    pub degeneracy: u64,
}

/// Visit every state; `None` above [`ORACLE_MAX_VERTICES`].
pub fn brute_force(c: &SurfaceComplex, constraint: &Constraint) -> Option<OracleCounts> {
    let n = c.vertex_count();
    if n > ORACLE_MAX_VERTICES {
        return None;
    }
    let mut satisfying_count = 0;
    let mut min_energy = i64::MAX;
    let mut degeneracy = 0;
    for mask in 0..1u64 << n {
        let s = SpinState::from_mask(n, mask);
        if constraint.admits(&s) && is_satisfying(c, &s).unwrap() {
            satisfying_count += 1;
        }
        let h = energy(c, &s).unwrap();
        if h < min_energy {
            min_energy = h;
            degeneracy = 0;
        }
        if h == min_energy {
            degeneracy += 1;
        }
    }
    Some(OracleCounts {
        satisfying_count,
        min_energy,
        degeneracy,
    })
}

/// All satisfying states admitted by `constraint`, in lexicographic order.
pub fn satisfying_states(c: &SurfaceComplex, constraint: &Constraint) -> Option<Vec<SpinState>> {
    let n = c.vertex_count();
    if n > ORACLE_MAX_VERTICES {
        return None;
    }
    let mut out: Vec<SpinState> = (0..1u64 << n)
        .map(|mask| SpinState::from_mask(n, mask))
        .filter(|s| constraint.admits(s) && is_satisfying(c, s).unwrap())
        .collect();
    out.sort();
    Some(out)
}
