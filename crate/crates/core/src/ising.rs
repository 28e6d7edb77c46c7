//! Antiferromagnetic Ising states on a [`SurfaceComplex`].
//!
//! The energy of a state is the sum of `σ_u σ_v` over all edges, so every
//! monochromatic (frustrated) edge costs +1 and every bichromatic edge -1.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::complex::{Edge, SurfaceComplex, Vertex};

/// A single spin. `Up` (+1) orders before `Down` (-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn value(self) -> i64 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    pub fn from_sign(s: i8) -> Spin {
        if s > 0 {
            Spin::Up
        } else {
            Spin::Down
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Spin::Up => '+',
            Spin::Down => '-',
        }
    }
}

impl FromStr for Spin {
    type Err = IsingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "+1" => Ok(Spin::Up),
            "-" | "-1" => Ok(Spin::Down),
            _ => Err(IsingError::BadSpinText(s.to_string())),
        }
    }
}

/// A spin per vertex. Ordered lexicographically with `+` before `-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinState(Vec<Spin>);

impl SpinState {
    pub fn new(spins: Vec<Spin>) -> Self {
        SpinState(spins)
    }

    pub fn uniform(n: usize, spin: Spin) -> Self {
        SpinState(vec![spin; n])
    }

    pub(crate) fn from_signs(signs: &[i8]) -> Self {
        SpinState(signs.iter().map(|&s| Spin::from_sign(s)).collect())
    }

    /// Bit `i` of `mask` set means vertex `i` is down.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        SpinState(
            (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Spin::Down
                    } else {
                        Spin::Up
                    }
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn spins(&self) -> &[Spin] {
        &self.0
    }

    pub fn get(&self, v: Vertex) -> Spin {
        self.0[v]
    }

    pub fn negated(&self) -> SpinState {
        SpinState(self.0.iter().map(|s| s.flip()).collect())
    }

    /// The smaller of `self` and `-self`.
    pub fn canonical(&self) -> SpinState {
        let neg = self.negated();
        match neg.cmp(self) {
            Ordering::Less => neg,
            _ => self.clone(),
        }
    }

    pub fn is_monochromatic(&self, e: Edge) -> bool {
        let (a, b) = e.ends();
        self.0[a] == self.0[b]
    }
}

impl fmt::Display for SpinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for SpinState {
    type Err = IsingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|ch| match ch {
                '+' => Ok(Spin::Up),
                '-' => Ok(Spin::Down),
                _ => Err(IsingError::BadSpinText(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SpinState)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsingError {
    #[error("state has {state} spins but the complex has {vertices} vertices")]
    LengthMismatch { state: usize, vertices: usize },
    #[error("cannot parse spin text `{0}`")]
    BadSpinText(String),
    #[error("constraint references vertex {0} outside the complex")]
    UnknownVertex(Vertex),
    #[error("constraint references {0}, which is not an edge of the complex")]
    UnknownEdge(Edge),
    #[error("no satisfying state exists")]
    NoSatisfyingState,
    #[error("{vertices} vertices exceed the exhaustive-search ceiling of {ceiling}")]
    ResourceLimit { vertices: usize, ceiling: usize },
    #[error("complex has holes; a closed complex is required")]
    NotClosed,
    #[error("state is not satisfying")]
    NotSatisfying,
    #[error(
        "edge set is not a perfect matching of the dual graph (face {0} is covered {1} times)"
    )]
    NotAPerfectMatching(usize, usize),
}

fn check_len(c: &SurfaceComplex, s: &SpinState) -> Result<(), IsingError> {
    if s.len() != c.vertex_count() {
        return Err(IsingError::LengthMismatch {
            state: s.len(),
            vertices: c.vertex_count(),
        });
    }
    Ok(())
}

/// `Σ_{uv ∈ E} σ_u σ_v`.
pub fn energy(c: &SurfaceComplex, s: &SpinState) -> Result<i64, IsingError> {
    check_len(c, s)?;
    Ok(c.edges()
        .iter()
        .map(|e| {
            let (a, b) = e.ends();
            s.get(a).value() * s.get(b).value()
        })
        .sum())
}

/// Edges whose ends carry equal spins, in edge order.
pub fn frustrated_edges(c: &SurfaceComplex, s: &SpinState) -> Result<Vec<Edge>, IsingError> {
    check_len(c, s)?;
    Ok(c.edges()
        .iter()
        .copied()
        .filter(|&e| s.is_monochromatic(e))
        .collect())
}

/// No kept face is monochromatic. Hole boundaries carry no constraint.
pub fn is_satisfying(c: &SurfaceComplex, s: &SpinState) -> Result<bool, IsingError> {
    check_len(c, s)?;
    Ok(c.faces().iter().all(|t| {
        let [a, b, x] = t.vertices();
        !(s.get(a) == s.get(b) && s.get(b) == s.get(x))
    }))
}

/// Extra requirements on satisfying states.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Constraint {
    pub pinned: BTreeMap<Vertex, Spin>,
    pub monochromatic: BTreeSet<Edge>,
    pub non_monochromatic: BTreeSet<Edge>,
}

impl Constraint {
    pub fn none() -> Self {
        Constraint::default()
    }

    pub fn pin(mut self, v: Vertex, s: Spin) -> Self {
        self.pinned.insert(v, s);
        self
    }

    pub fn mono(mut self, e: Edge) -> Self {
        self.monochromatic.insert(e);
        self
    }

    pub fn non_mono(mut self, e: Edge) -> Self {
        self.non_monochromatic.insert(e);
        self
    }

    /// Pins break the ± symmetry; edge requirements do not.
    pub fn is_sign_symmetric(&self) -> bool {
        self.pinned.is_empty()
    }

    pub fn validate(&self, c: &SurfaceComplex) -> Result<(), IsingError> {
        if let Some(&v) = self.pinned.keys().find(|&&v| v >= c.vertex_count()) {
            return Err(IsingError::UnknownVertex(v));
        }
        for &e in self
            .monochromatic
            .iter()
            .chain(self.non_monochromatic.iter())
        {
            if !c.has_edge(e) {
                return Err(IsingError::UnknownEdge(e));
            }
        }
        Ok(())
    }

    pub fn admits(&self, s: &SpinState) -> bool {
        self.pinned.iter().all(|(&v, &sp)| s.get(v) == sp)
            && self.monochromatic.iter().all(|&e| s.is_monochromatic(e))
            && self
                .non_monochromatic
                .iter()
                .all(|&e| !s.is_monochromatic(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use proptest::prelude::*;

    fn k4() -> SurfaceComplex {
        build_complex(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]], []).unwrap()
    }

    #[test]
    fn k4_energies() {
        let c = k4();
        assert_eq!(energy(&c, &"++++".parse().unwrap()).unwrap(), 6);
        assert_eq!(energy(&c, &"++--".parse().unwrap()).unwrap(), -2);
    }

    #[test]
    fn k4_frustrated_edges() {
        let c = k4();
        let s: SpinState = "++--".parse().unwrap();
        assert_eq!(
            frustrated_edges(&c, &s).unwrap(),
            vec![Edge::new(0, 1), Edge::new(2, 3)]
        );
        assert_eq!(
            frustrated_edges(&c, &"++++".parse().unwrap())
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn k4_satisfying() {
        let c = k4();
        assert!(is_satisfying(&c, &"++--".parse().unwrap()).unwrap());
        assert!(!is_satisfying(&c, &"+++-".parse().unwrap()).unwrap());
        assert!(!is_satisfying(&c, &"----".parse().unwrap()).unwrap());
    }

    #[test]
    fn length_mismatch() {
        let c = k4();
        let s: SpinState = "+-+".parse().unwrap();
        assert_eq!(
            energy(&c, &s).unwrap_err(),
            IsingError::LengthMismatch {
                state: 3,
                vertices: 4
            }
        );
        assert!(is_satisfying(&c, &s).is_err());
        assert!(frustrated_edges(&c, &s).is_err());
    }

    #[test]
    fn spin_text_round_trip_and_order() {
        let s: SpinState = "+-+-".parse().unwrap();
        assert_eq!(s.to_string(), "+-+-");
        assert!("+x".parse::<SpinState>().is_err());
        let a: SpinState = "++-".parse().unwrap();
        let b: SpinState = "+-+".parse().unwrap();
        assert!(a < b);
        assert_eq!(b.negated().canonical(), b);
    }

    proptest! {
        #[test]
        fn sign_symmetry_on_k4(mask in 0u64..16) {
            let c = k4();
            let s = SpinState::from_mask(4, mask);
            let n = s.negated();
            prop_assert_eq!(energy(&c, &s).unwrap(), energy(&c, &n).unwrap());
            prop_assert_eq!(is_satisfying(&c, &s).unwrap(), is_satisfying(&c, &n).unwrap());
        }

        #[test]
        fn energy_is_frustrated_minus_rest(mask in 0u64..16) {
            let c = k4();
            let s = SpinState::from_mask(4, mask);
            let f = frustrated_edges(&c, &s).unwrap().len() as i64;
            let e = c.edges().len() as i64;
            prop_assert_eq!(energy(&c, &s).unwrap(), f - (e - f));
        }

        #[test]
        fn triangle_non_mono_iff_exactly_one_mono_edge(a in any::<bool>(), b in any::<bool>(), x in any::<bool>()) {
            let mono_edges = [(a, b), (a, x), (b, x)].iter().filter(|(p, q)| p == q).count();
            let non_mono = !(a == b && b == x);
            prop_assert_eq!(non_mono, mono_edges == 1);
        }
    }
}
