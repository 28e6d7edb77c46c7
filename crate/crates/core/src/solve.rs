//! Exact enumeration of satisfying spin-assignments.
//!
//! Backtracking over vertices in breadth-first order with one propagation
//! rule per kept face: two equal spins force the third vertex to the opposite
//! spin, and a face whose three spins are equal is a conflict. Required
//! (non-)monochromatic edges propagate the same way. When the constraint is
//! sign-symmetric vertex 0 is pinned to `+` and counts are doubled.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::complex::{Edge, SurfaceComplex, Vertex};
use crate::ising::{Constraint, IsingError, Spin, SpinState};

pub const DEFAULT_REPRESENTATIVE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub representative_cap: usize,
    /// Worker threads. Output does not depend on this value.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            representative_cap: DEFAULT_REPRESENTATIVE_CAP,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub satisfying_count: u64,
    /// `satisfying_count / 2`, present only for sign-symmetric constraints.
    pub pair_count: Option<u64>,
    /// Canonical, sorted; the smaller of each ± pair when sign-symmetric.
    pub representatives: Vec<SpinState>,
    pub truncated: bool,
    /// Edges monochromatic in every counted state; `None` when the count is 0.
    pub serious_edges: Option<Vec<Edge>>,
}

struct Problem {
    n: usize,
    order: Vec<Vertex>,
    face_pairs: Vec<Vec<(u32, u32)>>,
    /// (other end, must be equal)
    relations: Vec<Vec<(u32, bool)>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone)]
struct Node {
    spins: Vec<i8>,
    pos: usize,
}

struct Acc {
    count: u64,
    reps: BTreeSet<Vec<i8>>,
    cap: usize,
    serious: Option<Vec<bool>>,
}

impl Acc {
    fn new(cap: usize) -> Self {
        Acc {
            count: 0,
            reps: BTreeSet::new(),
            cap,
            serious: None,
        }
    }

    fn record(&mut self, spins: &[i8], edges: &[(usize, usize)]) {
        self.count += 1;
        // Up = +1 sorts first; compare on the negated sign so + < -.
        let key: Vec<i8> = spins.iter().map(|&s| -s).collect();
        if self.reps.len() < self.cap {
            self.reps.insert(key);
        } else if self.reps.last().is_some_and(|last| key < *last) {
            self.reps.insert(key);
            self.reps.pop_last();
        }
        match &mut self.serious {
            None => {
                self.serious = Some(edges.iter().map(|&(a, b)| spins[a] == spins[b]).collect());
            }
            Some(mask) => {
                for (m, &(a, b)) in mask.iter_mut().zip(edges) {
                    *m &= spins[a] == spins[b];
                }
            }
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.count += other.count;
        self.reps.extend(other.reps);
        while self.reps.len() > self.cap {
            self.reps.pop_last();
        }
        self.serious = match (self.serious, other.serious) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(a.iter().zip(&b).map(|(x, y)| *x && *y).collect()),
        };
        self
    }
}

impl Problem {
    fn new(c: &SurfaceComplex, constraint: &Constraint) -> Self {
        let n = c.vertex_count();
        let mut face_pairs = vec![Vec::new(); n];
        for t in c.faces() {
            let [a, b, x] = t.vertices();
            face_pairs[a].push((b as u32, x as u32));
            face_pairs[b].push((a as u32, x as u32));
            face_pairs[x].push((a as u32, b as u32));
        }
        let mut relations = vec![Vec::new(); n];
        for (set, eq) in [
            (&constraint.monochromatic, true),
            (&constraint.non_monochromatic, false),
        ] {
            for e in set {
                let (a, b) = e.ends();
                relations[a].push((b as u32, eq));
                relations[b].push((a as u32, eq));
            }
        }
        let seed = constraint.pinned.keys().next().copied().unwrap_or(0);
        let adj = c.adjacency();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([seed]);
        seen[seed] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        Problem {
            n,
            order,
            face_pairs,
            relations,
            edges: c.edges().iter().map(|e| e.ends()).collect(),
        }
    }

    /// Assign and propagate; false on conflict. Assigned vertices go on `trail`.
    fn assign(&self, spins: &mut [i8], trail: &mut Vec<usize>, v: usize, s: i8) -> bool {
        if spins[v] != 0 {
            return spins[v] == s;
        }
        spins[v] = s;
        trail.push(v);
        let mut head = trail.len() - 1;
        while head < trail.len() {
            let w = trail[head];
            head += 1;
            let sw = spins[w];
            for &(a, b) in &self.face_pairs[w] {
                let (a, b) = (a as usize, b as usize);
                let (sa, sb) = (spins[a], spins[b]);
                if sa == sw && sb == sw {
                    return false;
                }
                if sa == sw && sb == 0 {
                    spins[b] = -sw;
                    trail.push(b);
                } else if sb == sw && sa == 0 {
                    spins[a] = -sw;
                    trail.push(a);
                }
            }
            for &(u, eq) in &self.relations[w] {
                let u = u as usize;
                let want = if eq { sw } else { -sw };
                if spins[u] == 0 {
                    spins[u] = want;
                    trail.push(u);
                } else if spins[u] != want {
                    return false;
                }
            }
        }
        true
    }

    fn undo(spins: &mut [i8], trail: &mut Vec<usize>, mark: usize) {
        for &v in &trail[mark..] {
            spins[v] = 0;
        }
        trail.truncate(mark);
    }

    fn root(&self, constraint: &Constraint) -> Option<Node> {
        let mut spins = vec![0i8; self.n];
        let mut trail = Vec::new();
        let pins: Vec<(Vertex, Spin)> = if constraint.is_sign_symmetric() {
            vec![(0, Spin::Up)]
        } else {
            constraint.pinned.iter().map(|(&v, &s)| (v, s)).collect()
        };
        for (v, s) in pins {
            if !self.assign(&mut spins, &mut trail, v, s.value() as i8) {
                return None;
            }
        }
        Some(Node { spins, pos: 0 })
    }

    fn next_free(&self, node: &Node) -> Option<usize> {
        (node.pos..self.n).find(|&p| node.spins[self.order[p]] == 0)
    }

    fn children(&self, node: &Node) -> Vec<Node> {
        let Some(p) = self.next_free(node) else {
            return vec![node.clone()];
        };
        let v = self.order[p];
        [1i8, -1]
            .into_iter()
            .filter_map(|s| {
                let mut spins = node.spins.clone();
                let mut trail = Vec::new();
                self.assign(&mut spins, &mut trail, v, s)
                    .then_some(Node { spins, pos: p + 1 })
            })
            .collect()
    }

    fn search(&self, node: &mut Node, trail: &mut Vec<usize>, acc: &mut Acc) {
        let Some(p) = self.next_free(node) else {
            acc.record(&node.spins, &self.edges);
            return;
        };
        let v = self.order[p];
        let saved = node.pos;
        for s in [1i8, -1] {
            let mark = trail.len();
            if self.assign(&mut node.spins, trail, v, s) {
                node.pos = p + 1;
                self.search(node, trail, acc);
            }
            Self::undo(&mut node.spins, trail, mark);
        }
        node.pos = saved;
    }

    fn run(&self, node: Node, cap: usize) -> Acc {
        let mut acc = Acc::new(cap);
        let mut node = node;
        let mut trail = Vec::new();
        self.search(&mut node, &mut trail, &mut acc);
        acc
    }
}

/// Count all satisfying states meeting `constraint`, exactly.
pub fn enumerate_satisfying(
    c: &SurfaceComplex,
    constraint: &Constraint,
    options: &SolveOptions,
) -> Result<SolveReport, IsingError> {
    constraint.validate(c)?;
    let problem = Problem::new(c, constraint);
    let cap = options.representative_cap;
    let acc = match problem.root(constraint) {
        None => Acc::new(cap),
        Some(root) if options.jobs <= 1 => problem.run(root, cap),
        Some(root) => {
            let target = options.jobs * 8;
            let mut frontier = vec![root];
            for _ in 0..16 {
                if frontier.len() >= target {
                    break;
                }
                frontier = frontier.iter().flat_map(|n| problem.children(n)).collect();
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(options.jobs)
                .build()
                .expect("thread pool");
            let parts: Vec<Acc> = pool.install(|| {
                frontier
                    .into_par_iter()
                    .map(|n| problem.run(n, cap))
                    .collect()
            });
            parts.into_iter().fold(Acc::new(cap), Acc::merge)
        }
    };

    let symmetric = constraint.is_sign_symmetric();
    let factor = if symmetric { 2 } else { 1 };
    let serious_edges = acc.serious.map(|mask| {
        c.edges()
            .iter()
            .zip(mask)
            .filter(|(_, m)| *m)
            .map(|(&e, _)| e)
            .collect()
    });
    let satisfying_count = acc.count * factor;
    Ok(SolveReport {
        satisfying_count,
        pair_count: symmetric.then_some(satisfying_count / 2),
        truncated: acc.count > cap as u64,
        representatives: acc
            .reps
            .iter()
            .map(|key| SpinState::from_signs(&key.iter().map(|&s| -s).collect::<Vec<_>>()))
            .collect(),
        serious_edges,
    })
}

/// Edges monochromatic under every satisfying state.
pub fn serious_edges(c: &SurfaceComplex) -> Result<Vec<Edge>, IsingError> {
    enumerate_satisfying(c, &Constraint::none(), &SolveOptions::default())?
        .serious_edges
        .ok_or(IsingError::NoSatisfyingState)
}

/// Convenience: number of satisfying states without constraints.
pub fn satisfying_count(c: &SurfaceComplex) -> u64 {
    enumerate_satisfying(
        c,
        &Constraint::none(),
        &SolveOptions {
            representative_cap: 1,
            jobs: 1,
        },
    )
    .expect("empty constraint is always valid")
    .satisfying_count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::ising::is_satisfying;

    fn k4() -> SurfaceComplex {
        build_complex(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]], []).unwrap()
    }

    #[test]
    fn k4_has_three_pairs() {
        let r = enumerate_satisfying(&k4(), &Constraint::none(), &SolveOptions::default()).unwrap();
        assert_eq!(r.satisfying_count, 6);
        assert_eq!(r.pair_count, Some(3));
        let reps: Vec<String> = r.representatives.iter().map(|s| s.to_string()).collect();
        assert_eq!(reps, ["++--", "+-+-", "+--+"]);
        assert!(!r.truncated);
        assert_eq!(r.serious_edges, Some(vec![]));
    }

    #[test]
    fn k4_pins_break_symmetry() {
        let c = k4();
        let r = enumerate_satisfying(
            &c,
            &Constraint::none().pin(1, Spin::Down),
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(r.satisfying_count, 3);
        assert_eq!(r.pair_count, None);
        for s in &r.representatives {
            assert!(is_satisfying(&c, s).unwrap());
            assert_eq!(s.get(1), Spin::Down);
        }
    }

    #[test]
    fn k4_mono_edge() {
        let r = enumerate_satisfying(
            &k4(),
            &Constraint::none().mono(Edge::new(0, 1)),
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(r.satisfying_count, 2);
        assert_eq!(
            r.serious_edges,
            Some(vec![Edge::new(0, 1), Edge::new(2, 3)])
        );
    }

    #[test]
    fn contradictory_constraint_counts_zero() {
        let e = Edge::new(0, 1);
        let r = enumerate_satisfying(
            &k4(),
            &Constraint::none().mono(e).non_mono(e),
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(r.satisfying_count, 0);
        assert_eq!(r.serious_edges, None);
    }

    #[test]
    fn unknown_edge_in_constraint() {
        let c = crate::complex::remove_faces(&k4(), &[0]).unwrap();
        let err = enumerate_satisfying(
            &c,
            &Constraint::none().mono(Edge::new(0, 9)),
            &SolveOptions::default(),
        )
        .unwrap_err();
        assert_eq!(err, IsingError::UnknownEdge(Edge::new(0, 9)));
    }

    #[test]
    fn cap_truncates_but_count_is_exact() {
        let opts = SolveOptions {
            representative_cap: 1,
            jobs: 1,
        };
        let r = enumerate_satisfying(&k4(), &Constraint::none(), &opts).unwrap();
        assert_eq!(r.satisfying_count, 6);
        assert_eq!(r.representatives.len(), 1);
        assert!(r.truncated);
    }

    #[test]
    fn k4_serious_edges_empty() {
        assert_eq!(serious_edges(&k4()).unwrap(), vec![]);
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let c = k4();
        let one = enumerate_satisfying(&c, &Constraint::none(), &SolveOptions::default()).unwrap();
        let four = enumerate_satisfying(
            &c,
            &Constraint::none(),
            &SolveOptions {
                representative_cap: 2,
                jobs: 4,
            },
        )
        .unwrap();
        assert_eq!(one.satisfying_count, four.satisfying_count);
        assert_eq!(one.representatives[..2], four.representatives[..]);
    }
}
