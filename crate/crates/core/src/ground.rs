//! Exact groundstate energy and degeneracy.
//!
//! Two exact methods share one report type:
//!
//! * exhaustive: Gray-code walk over all states with vertex 0 fixed to `+`
//!   (energy is sign-invariant), updating the energy in `O(deg v)` per flip;
//! * branch and bound: depth-first assignment in breadth-first vertex order,
//!   pruned with the geometric-frustration bound (every kept face needs a
//!   monochromatic edge, and an edge serves at most two faces).

use std::collections::{BinaryHeap, VecDeque};
use std::str::FromStr;

use rayon::prelude::*;

use crate::complex::SurfaceComplex;
use crate::ising::{IsingError, SpinState};
use crate::solve::DEFAULT_REPRESENTATIVE_CAP;

pub const DEFAULT_VERTEX_CEILING: usize = 26;
const MAX_EXHAUSTIVE_VERTICES: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    BranchAndBound,
    /// Exhaustive up to the vertex ceiling, branch and bound above it.
    Auto,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "bnb" | "branch_and_bound" | "branch-and-bound" => Ok(Method::BranchAndBound),
            "auto" => Ok(Method::Auto),
            _ => Err(format!(
                "unknown method `{s}` (expected exhaustive, bnb or auto)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundOptions {
    pub vertex_ceiling: usize,
    pub representative_cap: usize,
    pub jobs: usize,
}

impl Default for GroundOptions {
    fn default() -> Self {
        GroundOptions {
            vertex_ceiling: DEFAULT_VERTEX_CEILING,
            representative_cap: DEFAULT_REPRESENTATIVE_CAP,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundstateReport {
    pub min_energy: i64,
    pub degeneracy: u64,
    /// Sorted groundstates (both signs), capped.
    pub representatives: Vec<SpinState>,
    pub truncated: bool,
    pub method: Method,
}

/// Minimum states seen so far among states with vertex 0 up. Keys put
/// vertex 0 in the top bit so integer order is lexicographic order.
#[derive(Clone)]
struct Best {
    energy: i64,
    count: u64,
    keys: BinaryHeap<u64>,
    cap: usize,
}

impl Best {
    fn new(cap: usize) -> Self {
        Best {
            energy: i64::MAX,
            count: 0,
            keys: BinaryHeap::new(),
            cap,
        }
    }

    #[inline]
    fn offer(&mut self, energy: i64, key: u64) {
        if energy < self.energy {
            self.energy = energy;
            self.count = 0;
            self.keys.clear();
        }
        if energy == self.energy {
            self.count += 1;
            if self.keys.len() < self.cap {
                self.keys.push(key);
            } else if self.keys.peek().is_some_and(|&top| key < top) {
                self.keys.pop();
                self.keys.push(key);
            }
        }
    }

    fn merge(mut self, other: Best) -> Best {
        if other.energy < self.energy {
            return other.merge(self);
        }
        if other.energy == self.energy {
            self.count += other.count;
            for k in other.keys {
                if self.keys.len() < self.cap {
                    self.keys.push(k);
                } else if self.keys.peek().is_some_and(|&top| k < top) {
                    self.keys.pop();
                    self.keys.push(k);
                }
            }
        }
        self
    }
}

fn key_bit(v: usize) -> u64 {
    1u64 << (63 - v)
}

fn state_from_key(n: usize, key: u64) -> SpinState {
    let mask = (0..n).fold(
        0u64,
        |m, v| if key & key_bit(v) != 0 { m | 1 << v } else { m },
    );
    SpinState::from_mask(n, mask)
}

fn finish(n: usize, best: Best, cap: usize, method: Method) -> GroundstateReport {
    let mut up: Vec<SpinState> = best
        .keys
        .into_sorted_vec()
        .into_iter()
        .map(|k| state_from_key(n, k))
        .collect();
    let all_up_listed = best.count as usize == up.len();
    if all_up_listed && up.len() < cap {
        let mut down: Vec<SpinState> = up.iter().map(SpinState::negated).collect();
        down.sort();
        down.truncate(cap - up.len());
        up.extend(down);
    }
    let degeneracy = best.count * 2;
    GroundstateReport {
        min_energy: best.energy,
        degeneracy,
        truncated: degeneracy > up.len() as u64,
        representatives: up,
        method,
    }
}

pub fn groundstates(
    c: &SurfaceComplex,
    method: Method,
    options: &GroundOptions,
) -> Result<GroundstateReport, IsingError> {
    let n = c.vertex_count();
    let ceiling = options.vertex_ceiling.min(MAX_EXHAUSTIVE_VERTICES);
    match method {
        Method::Exhaustive => {
            if n > ceiling {
                return Err(IsingError::ResourceLimit {
                    vertices: n,
                    ceiling,
                });
            }
            Ok(exhaustive(c, options))
        }
        Method::BranchAndBound => Ok(branch_and_bound(c, options)),
        Method::Auto if n <= ceiling => Ok(exhaustive(c, options)),
        Method::Auto => Ok(branch_and_bound(c, options)),
    }
}

fn exhaustive(c: &SurfaceComplex, options: &GroundOptions) -> GroundstateReport {
    let n = c.vertex_count();
    let adj: Vec<Vec<usize>> = c.adjacency();
    let free = n - 1;
    // Vertices n-split..n are fixed per chunk; 1..n-split are walked.
    let split = free.min(8);
    let walked = free - split;
    let chunks: Vec<u64> = (0..1u64 << split).collect();
    let cap = options.representative_cap;

    let run_chunk = |chunk: u64| -> Best {
        let mut spins = vec![1i64; n];
        let mut key = 0u64;
        for j in 0..split {
            if chunk >> j & 1 == 1 {
                let v = n - split + j;
                spins[v] = -1;
                key |= key_bit(v);
            }
        }
        let mut field: Vec<i64> = (0..n)
            .map(|v| adj[v].iter().map(|&u| spins[u]).sum())
            .collect();
        let mut energy: i64 = (0..n).map(|v| spins[v] * field[v]).sum::<i64>() / 2;
        let mut best = Best::new(cap);
        best.offer(energy, key);
        for t in 1u64..(1u64 << walked) {
            let v = 1 + t.trailing_zeros() as usize;
            energy -= 2 * spins[v] * field[v];
            spins[v] = -spins[v];
            key ^= key_bit(v);
            let delta = 2 * spins[v];
            for &u in &adj[v] {
                field[u] += delta;
            }
            best.offer(energy, key);
        }
        best
    };

    let parts: Vec<Best> = if options.jobs <= 1 {
        chunks.into_iter().map(run_chunk).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| chunks.into_par_iter().map(run_chunk).collect())
    };
    let best = parts.into_iter().fold(Best::new(cap), Best::merge);
    finish(n, best, cap, Method::Exhaustive)
}

struct Bnb {
    order: Vec<usize>,
    adj: Vec<Vec<usize>>,
    /// Kept faces on each edge.
    edge_faces: Vec<Vec<usize>>,
    edge_of: std::collections::HashMap<(usize, usize), usize>,
    edge_count: i64,
}

struct BnbState {
    spins: Vec<i8>,
    mono: i64,
    face_mono: Vec<u8>,
    unresolved: i64,
    key: u64,
}

impl Bnb {
    fn lower_bound(&self, st: &BnbState) -> i64 {
        let extra = (st.unresolved + 1) / 2;
        let m = st.mono + extra;
        2 * m - self.edge_count
    }

    fn set(&self, st: &mut BnbState, v: usize, s: i8, sign: i64) {
        for &u in &self.adj[v] {
            if st.spins[u] == 0 {
                continue;
            }
            let e = self.edge_of[&(v.min(u), v.max(u))];
            if st.spins[u] == s {
                st.mono += sign;
                for &f in &self.edge_faces[e] {
                    if sign > 0 {
                        st.face_mono[f] += 1;
                        if st.face_mono[f] == 1 {
                            st.unresolved -= 1;
                        }
                    } else {
                        st.face_mono[f] -= 1;
                        if st.face_mono[f] == 0 {
                            st.unresolved += 1;
                        }
                    }
                }
            }
        }
    }

    fn dfs(&self, st: &mut BnbState, depth: usize, best: &mut Best) {
        if depth == self.order.len() {
            let energy = 2 * st.mono - self.edge_count;
            best.offer(energy, st.key);
            return;
        }
        let v = self.order[depth];
        let choices: &[i8] = if v == 0 { &[1] } else { &[1, -1] };
        for &s in choices {
            st.spins[v] = s;
            if s < 0 {
                st.key |= key_bit(v);
            }
            self.set(st, v, s, 1);
            if self.lower_bound(st) <= best.energy {
                self.dfs(st, depth + 1, best);
            }
            self.set(st, v, s, -1);
            st.spins[v] = 0;
            st.key &= !key_bit(v);
        }
    }
}

fn branch_and_bound(c: &SurfaceComplex, options: &GroundOptions) -> GroundstateReport {
    let n = c.vertex_count();
    assert!(n <= 64, "state keys hold at most 64 vertices");
    let adj = c.adjacency();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    let mut edge_faces = vec![Vec::new(); c.edges().len()];
    for (fi, t) in c.faces().iter().enumerate() {
        for e in t.edges() {
            edge_faces[c.edge_id(e).unwrap()].push(fi);
        }
    }
    let edge_of = c
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.ends(), i))
        .collect();
    let bnb = Bnb {
        order,
        adj,
        edge_faces,
        edge_of,
        edge_count: c.edges().len() as i64,
    };
    let mut st = BnbState {
        spins: vec![0; n],
        mono: 0,
        face_mono: vec![0; c.faces().len()],
        unresolved: c.faces().len() as i64,
        key: 0,
    };
    let mut best = Best::new(options.representative_cap);
    bnb.dfs(&mut st, 0, &mut best);
    finish(n, best, options.representative_cap, Method::BranchAndBound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, remove_faces};

    fn k4() -> SurfaceComplex {
        build_complex(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]], []).unwrap()
    }

    #[test]
    fn k4_groundstates() {
        for method in [Method::Exhaustive, Method::BranchAndBound, Method::Auto] {
            let r = groundstates(&k4(), method, &GroundOptions::default()).unwrap();
            assert_eq!((r.min_energy, r.degeneracy), (-2, 6), "{method:?}");
            let reps: Vec<String> = r.representatives.iter().map(|s| s.to_string()).collect();
            assert_eq!(reps, ["++--", "+-+-", "+--+", "-++-", "-+-+", "--++"]);
            assert!(!r.truncated);
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let opts = GroundOptions {
            vertex_ceiling: 3,
            ..GroundOptions::default()
        };
        assert_eq!(
            groundstates(&k4(), Method::Exhaustive, &opts).unwrap_err(),
            IsingError::ResourceLimit {
                vertices: 4,
                ceiling: 3
            }
        );
        assert_eq!(
            groundstates(&k4(), Method::Auto, &opts).unwrap().method,
            Method::BranchAndBound
        );
    }

    #[test]
    fn punctured_disk() {
        let d = remove_faces(&k4(), &[0]).unwrap();
        let a = groundstates(&d, Method::Exhaustive, &GroundOptions::default()).unwrap();
        let b = groundstates(&d, Method::BranchAndBound, &GroundOptions::default()).unwrap();
        assert_eq!(
            a,
            GroundstateReport {
                method: Method::Exhaustive,
                ..b
            }
        );
    }

    #[test]
    fn cap_keeps_smallest_states() {
        let opts = GroundOptions {
            representative_cap: 2,
            jobs: 3,
            ..GroundOptions::default()
        };
        let r = groundstates(&k4(), Method::Exhaustive, &opts).unwrap();
        assert_eq!(r.degeneracy, 6);
        let reps: Vec<String> = r.representatives.iter().map(|s| s.to_string()).collect();
        assert_eq!(reps, ["++--", "+-+-"]);
        assert!(r.truncated);
    }

    #[test]
    fn method_parse() {
        assert_eq!("bnb".parse::<Method>().unwrap(), Method::BranchAndBound);
        assert!("fast".parse::<Method>().is_err());
    }
}
