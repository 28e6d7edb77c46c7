//! Satisfying states of a closed complex versus perfect matchings of its
//! cubic dual: the monochromatic edges of a satisfying state meet every face
//! exactly once.

use std::collections::{BTreeSet, VecDeque};

use crate::complex::{dual_graph, Edge, SurfaceComplex};
use crate::ising::{is_satisfying, IsingError, Spin, SpinState};

/// Monochromatic edges of a satisfying state, as a set of dual edges.
pub fn matching_from_state(
    c: &SurfaceComplex,
    s: &SpinState,
) -> Result<BTreeSet<Edge>, IsingError> {
    if !c.is_closed() {
        return Err(IsingError::NotClosed);
    }
    if !is_satisfying(c, s)? {
        return Err(IsingError::NotSatisfying);
    }
    Ok(c.edges()
        .iter()
        .copied()
        .filter(|&e| s.is_monochromatic(e))
        .collect())
}

/// Checks that every face meets exactly one edge of `matching`.
pub fn check_perfect_matching(
    c: &SurfaceComplex,
    matching: &BTreeSet<Edge>,
) -> Result<(), IsingError> {
    if !c.is_closed() {
        return Err(IsingError::NotClosed);
    }
    let dual = dual_graph(c).map_err(|_| IsingError::NotClosed)?;
    let mut cover = vec![0usize; dual.node_count];
    for &e in matching {
        let id = c.edge_id(e).ok_or(IsingError::UnknownEdge(e))?;
        let (x, y) = dual.edges[id];
        cover[x] += 1;
        cover[y] += 1;
    }
    match cover.iter().position(|&k| k != 1) {
        Some(f) => Err(IsingError::NotAPerfectMatching(f, cover[f])),
        None => Ok(()),
    }
}

/// Reconstruct the ± pair whose monochromatic edges are exactly `matching`.
/// Matched edges force equal spins, all other edges opposite spins; `None`
/// when these parity constraints are inconsistent (possible off the sphere).
pub fn state_from_matching(
    c: &SurfaceComplex,
    matching: &BTreeSet<Edge>,
) -> Result<Option<(SpinState, SpinState)>, IsingError> {
    check_perfect_matching(c, matching)?;
    let n = c.vertex_count();
    let adj = c.adjacency();
    let mut spins = vec![0i8; n];
    spins[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            let want = if matching.contains(&Edge::new(u, v)) {
                spins[v]
            } else {
                -spins[v]
            };
            if spins[u] == 0 {
                spins[u] = want;
                queue.push_back(u);
            } else if spins[u] != want {
                return Ok(None);
            }
        }
    }
    let s = SpinState::new(spins.iter().map(|&x| Spin::from_sign(x)).collect());
    let neg = s.negated();
    Ok(Some((s, neg)))
}
