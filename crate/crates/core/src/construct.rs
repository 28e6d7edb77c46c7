//! Constructions of triangulations with a unique satisfying pair.
//!
//! * [`delta`] builds the stack disk `Δₙ`: start from the triangle
//!   `{x, y₀, z}` and repeatedly put a new apex `yᵢ` over the outer boundary,
//!   joined to `x`, `yᵢ₋₁` and `z`. Its outer boundary `{x, yₙ, z}` is kept as
//!   a hole and `x–yₙ` is the fundamental edge.
//! * [`certify_supporting`] punctures a closed complex and checks that the
//!   satisfying pair stays unique.
//! * [`fill_hole`] glues a stack disk into a hole, fundamental edge onto
//!   fundamental edge; [`chain_connectors`] glues connectors along their
//!   connection cycles to raise the genus.
//! * [`build_torus`] and [`build_genus`] run the whole pipeline.
//!
//! Every gluing step is followed by a fresh exact count.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{
    build_complex, euler_genus, glue, remove_faces, ComplexError, Edge, GlueError, GluingSpec,
    SurfaceComplex, Triple, Vertex, CONNECTION_CYCLES, EXPANDABLE_CYCLES, FUNDAMENTAL_EDGES,
};
use crate::ising::{Constraint, SpinState};
use crate::solve::{enumerate_satisfying, SolveOptions};

/// `delta(n)` re-counts the satisfying states of its plane triangulation up to
/// this size.
pub const DELTA_VERIFY_CEILING: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("base triangulation has {0} satisfying states, not exactly 2")]
    BaseNotUniquelySatisfiable(u64),
    #[error("punctured triangulation has {0} satisfying states, more than the base's 2")]
    RemovalIncreasesSolutions(u64),
    #[error("face removal is invalid: {0}")]
    RemovalInvalid(ComplexError),
    #[error("punctured triangulation has {0} satisfying states, not exactly 2")]
    NotUniquelySatisfiable(u64),
    #[error("hole {0} is monochromatic under the witness")]
    HoleMonochromatic(Triple),
    #[error("no hole with index {0}")]
    NoSuchHole(usize),
    #[error("edge {edge} is not the fundamental edge {fundamental} of the hole")]
    Misaligned { edge: Edge, fundamental: Edge },
    #[error("entry {0} has no pair of vertex-disjoint holes")]
    NotAConnector(usize),
    #[error("gluing failed: {0}")]
    Glue(#[from] GlueError),
    #[error("certification lost after gluing: {0}")]
    CertificationLost(String),
    #[error("stack triangulation Δ{n} has {count} satisfying states with its fundamental edge monochromatic")]
    AugmentingFailed { n: usize, count: u64 },
    #[error("no supporting punctured triangulation available: {0}")]
    NoSupportingDataAvailable(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// The stack disk `Δₙ` with vertices `x = 0`, `z = 1`, `yᵢ = 2 + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingTriangulation {
    n: usize,
    complex: SurfaceComplex,
}

impl AugmentingTriangulation {
    pub const X: Vertex = 0;
    pub const Z: Vertex = 1;

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn y(&self, i: usize) -> Vertex {
        2 + i
    }

    /// The disk, with the outer boundary as its only hole.
    pub fn complex(&self) -> &SurfaceComplex {
        &self.complex
    }

    pub fn outer_cycle(&self) -> Triple {
        Triple::new(Self::X, self.y(self.n), Self::Z)
    }

    pub fn fundamental_edge(&self) -> Edge {
        Edge::new(Self::X, self.y(self.n))
    }

    /// The plane triangulation: the disk with its outer face kept.
    pub fn plane(&self) -> SurfaceComplex {
        let mut marks = crate::complex::Marks::default();
        marks.set_edges(FUNDAMENTAL_EDGES, vec![self.fundamental_edge()]);
        self.complex
            .filled()
            .with_marks(marks)
            .expect("fundamental edge is an edge")
            .with_comment(format!(
                "stack triangulation delta({}); outer face {{x, y{}, z}}",
                self.n, self.n
            ))
    }
}

pub fn delta(n: usize) -> Result<AugmentingTriangulation, ConstructError> {
    if n < 1 {
        return Err(ConstructError::InvalidParameter(format!(
            "delta needs n >= 1, got {n}"
        )));
    }
    let (x, z) = (AugmentingTriangulation::X, AugmentingTriangulation::Z);
    let y = |i: usize| 2 + i;
    let mut faces = vec![[x, y(0), z]];
    for i in 1..=n {
        faces.push([x, y(i - 1), y(i)]);
        faces.push([y(i - 1), z, y(i)]);
    }
    let outer = Triple::new(x, y(n), z);
    let mut labels = BTreeMap::from([("x".to_string(), x), ("z".to_string(), z)]);
    for i in 0..=n {
        labels.insert(format!("y{i}"), y(i));
    }
    let mut marks = crate::complex::Marks::default();
    marks.set_edges(FUNDAMENTAL_EDGES, vec![Edge::new(x, y(n))]);
    marks.set_cycles(EXPANDABLE_CYCLES, vec![outer]);
    let complex = build_complex(n + 3, faces, [outer.vertices()])?
        .with_labels(labels)?
        .with_marks(marks)?
        .with_comment(format!(
            "stack triangulation delta({n}); outer boundary {{x, y{n}, z}} is the hole"
        ));
    let d = AugmentingTriangulation { n, complex };
    if n <= DELTA_VERIFY_CEILING {
        let count = enumerate_satisfying(
            &d.plane(),
            &Constraint::none().mono(d.fundamental_edge()),
            &SolveOptions {
                representative_cap: 2,
                jobs: 1,
            },
        )
        .expect("fundamental edge exists")
        .satisfying_count;
        if count != 2 {
            return Err(ConstructError::AugmentingFailed { n, count });
        }
    }
    Ok(d)
}

/// A punctured triangulation with exactly one satisfying pair, and every
/// hole non-monochromatic under it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportingPunctured {
    pub complex: SurfaceComplex,
    /// The satisfying state with vertex 0 up.
    pub witness: SpinState,
    /// The monochromatic edge of each hole, in hole order.
    pub fundamental_edges: Vec<Edge>,
    /// Indices of two vertex-disjoint holes, when any exist.
    pub connection_cycles: Option<(usize, usize)>,
}

impl SupportingPunctured {
    pub fn is_connector(&self) -> bool {
        self.connection_cycles.is_some()
    }

    pub fn fundamental_edge_of(&self, hole: Triple) -> Option<Edge> {
        self.complex
            .hole_index(hole)
            .map(|i| self.fundamental_edges[i])
    }
}

/// Exact count plus the canonical witness when the count is 2.
fn unique_pair(c: &SurfaceComplex) -> (u64, Option<SpinState>) {
    let r = enumerate_satisfying(
        c,
        &Constraint::none(),
        &SolveOptions {
            representative_cap: 1,
            jobs: 1,
        },
    )
    .expect("empty constraint is always valid");
    let witness = (r.satisfying_count == 2).then(|| r.representatives[0].clone());
    (r.satisfying_count, witness)
}

fn first_disjoint_pair(holes: &[Triple]) -> Option<(usize, usize)> {
    (0..holes.len())
        .flat_map(|i| (i + 1..holes.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !holes[i].shares_vertex(holes[j]))
}

/// Derive witness, fundamental edges and connection cycles for a punctured
/// complex already known to have exactly one satisfying pair.
fn annotate(
    complex: SurfaceComplex,
    witness: SpinState,
    connection: Option<(Triple, Triple)>,
) -> Result<SupportingPunctured, ConstructError> {
    let mut fundamental_edges = Vec::with_capacity(complex.holes().len());
    for &h in complex.holes() {
        let mono: Vec<Edge> = h
            .edges()
            .into_iter()
            .filter(|&e| witness.is_monochromatic(e))
            .collect();
        if mono.len() != 1 {
            return Err(ConstructError::HoleMonochromatic(h));
        }
        fundamental_edges.push(mono[0]);
    }
    let connection_cycles = match connection {
        Some((a, b)) => Some((
            complex.hole_index(a).expect("connection cycle is a hole"),
            complex.hole_index(b).expect("connection cycle is a hole"),
        )),
        None => first_disjoint_pair(complex.holes()),
    };
    let mut marks = complex.marks().clone();
    marks.set_edges(FUNDAMENTAL_EDGES, fundamental_edges.clone());
    marks.set_cycles(EXPANDABLE_CYCLES, complex.holes().to_vec());
    marks.set_cycles(
        CONNECTION_CYCLES,
        connection_cycles
            .map(|(i, j)| vec![complex.holes()[i], complex.holes()[j]])
            .unwrap_or_default(),
    );
    let complex = complex.with_marks(marks)?;
    Ok(SupportingPunctured {
        complex,
        witness,
        fundamental_edges,
        connection_cycles,
    })
}

/// Certify a punctured complex directly (count must be exactly 2).
pub fn certify_punctured(c: SurfaceComplex) -> Result<SupportingPunctured, ConstructError> {
    match unique_pair(&c) {
        (_, Some(w)) => annotate(c, w, None),
        (count, None) => Err(ConstructError::NotUniquelySatisfiable(count)),
    }
}

/// Puncture a closed complex with a unique satisfying pair and check the
/// pair survives.
pub fn certify_supporting(
    c: &SurfaceComplex,
    removable_faces: &[usize],
) -> Result<SupportingPunctured, ConstructError> {
    if !c.is_closed() {
        return Err(ConstructError::Complex(ComplexError::NotClosed));
    }
    if removable_faces.is_empty() {
        return Err(ConstructError::InvalidParameter(
            "removable face set is empty".into(),
        ));
    }
    let (base, _) = unique_pair(c);
    if base != 2 {
        return Err(ConstructError::BaseNotUniquelySatisfiable(base));
    }
    let punctured = remove_faces(c, removable_faces).map_err(ConstructError::RemovalInvalid)?;
    match unique_pair(&punctured) {
        (_, Some(w)) => annotate(punctured, w, None),
        (count, None) => Err(ConstructError::RemovalIncreasesSolutions(count)),
    }
}

/// Result of filling one hole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filled {
    Closed(SurfaceComplex),
    Punctured(SupportingPunctured),
}

impl Filled {
    pub fn complex(&self) -> &SurfaceComplex {
        match self {
            Filled::Closed(c) => c,
            Filled::Punctured(t) => &t.complex,
        }
    }
}

/// Mark name recording the holes filled by `delta(n)`.
pub fn filled_mark_name(n: usize) -> String {
    format!("filled_delta{n}_cycles")
}

pub fn fill_hole(
    t: &SupportingPunctured,
    hole_index: usize,
    d: &AugmentingTriangulation,
) -> Result<Filled, ConstructError> {
    let fundamental = *t
        .fundamental_edges
        .get(hole_index)
        .ok_or(ConstructError::NoSuchHole(hole_index))?;
    fill_hole_aligned(t, hole_index, d, fundamental)
}

/// Like [`fill_hole`], with the hole edge that receives `x–yₙ` spelled out.
/// Anything other than the hole's fundamental edge is rejected.
pub fn fill_hole_aligned(
    t: &SupportingPunctured,
    hole_index: usize,
    d: &AugmentingTriangulation,
    target_edge: Edge,
) -> Result<Filled, ConstructError> {
    let hole = *t
        .complex
        .holes()
        .get(hole_index)
        .ok_or(ConstructError::NoSuchHole(hole_index))?;
    let fundamental = t.fundamental_edges[hole_index];
    if target_edge != fundamental {
        return Err(ConstructError::Misaligned {
            edge: target_edge,
            fundamental,
        });
    }
    let spec = GluingSpec {
        cycle_a: hole,
        cycle_b: d.outer_cycle(),
        edge_a: fundamental,
        edge_b: d.fundamental_edge(),
    };
    let glued = glue(&t.complex, d.complex(), &spec)?;
    let mut marks = glued.complex.marks().clone();
    let name = filled_mark_name(d.n());
    let mut filled = marks.cycle_list(&name).to_vec();
    filled.push(hole);
    marks.set_cycles(&name, filled);
    let complex = glued.complex.with_marks(marks)?;

    let (count, witness) = unique_pair(&complex);
    let Some(witness) = witness else {
        return Err(ConstructError::CertificationLost(format!(
            "{count} satisfying states after filling hole {hole}"
        )));
    };
    let old_n = t.complex.vertex_count();
    if witness.spins()[..old_n] != t.witness.spins()[..] {
        return Err(ConstructError::CertificationLost(
            "new witness does not restrict to the old one".into(),
        ));
    }
    if complex.is_closed() {
        return Ok(Filled::Closed(complex));
    }
    let connection = t.connection_cycles.and_then(|(i, j)| {
        (i != hole_index && j != hole_index).then(|| (t.complex.holes()[i], t.complex.holes()[j]))
    });
    let next = annotate(complex, witness, connection)?;
    let expected: Vec<Edge> = t
        .fundamental_edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != hole_index)
        .map(|(_, &e)| e)
        .collect();
    if next.fundamental_edges != expected {
        return Err(ConstructError::CertificationLost(
            "fundamental edges of the remaining holes changed".into(),
        ));
    }
    Ok(Filled::Punctured(next))
}

/// Glue connectors in sequence: the second connection cycle of each onto the
/// first connection cycle of the next, fundamental edges aligned.
pub fn chain_connectors(
    list: &[SupportingPunctured],
) -> Result<SupportingPunctured, ConstructError> {
    let first = list
        .first()
        .ok_or_else(|| ConstructError::InvalidParameter("no connectors to chain".into()))?;
    let cycles = |k: usize, t: &SupportingPunctured| -> Result<(Triple, Triple), ConstructError> {
        let (i, j) = t
            .connection_cycles
            .ok_or(ConstructError::NotAConnector(k))?;
        Ok((t.complex.holes()[i], t.complex.holes()[j]))
    };
    let (c1, mut c2) = cycles(0, first)?;
    let mut acc = first.clone();
    for (k, next) in list.iter().enumerate().skip(1) {
        let (n1, n2) = cycles(k, next)?;
        let spec = GluingSpec {
            cycle_a: c2,
            cycle_b: n1,
            edge_a: acc
                .fundamental_edge_of(c2)
                .expect("connection cycle is a hole"),
            edge_b: next
                .fundamental_edge_of(n1)
                .expect("connection cycle is a hole"),
        };
        let glued = glue(&acc.complex, &next.complex, &spec)?;
        let map = &glued.vertex_map;
        c2 = Triple::new(
            map[n2.vertices()[0]],
            map[n2.vertices()[1]],
            map[n2.vertices()[2]],
        );
        let complex = glued.complex;
        let (count, witness) = unique_pair(&complex);
        let Some(witness) = witness else {
            return Err(ConstructError::CertificationLost(format!(
                "{count} satisfying states after gluing connector {k}"
            )));
        };
        acc = annotate(complex, witness, Some((c1, c2)))?;
    }
    Ok(acc)
}

/// Split `deficit` extra vertices over `holes` stack disks, each at least
/// `delta(1)`: as even as possible, remainder to the lowest-indexed holes.
pub fn hole_sizes(deficit: usize, holes: usize) -> Vec<usize> {
    if holes == 0 {
        return Vec::new();
    }
    if deficit <= holes {
        return vec![1; holes];
    }
    let (q, r) = (deficit / holes, deficit % holes);
    (0..holes).map(|i| q + usize::from(i < r)).collect()
}

/// Fill every hole of `t` with stack disks so the result has at least
/// `min_vertices` vertices.
pub fn fill_all(
    t: &SupportingPunctured,
    min_vertices: usize,
) -> Result<SurfaceComplex, ConstructError> {
    let holes = t.complex.holes().len();
    if holes == 0 {
        return Err(ConstructError::NoSupportingDataAvailable(
            "supporting triangulation has no holes".into(),
        ));
    }
    let deficit = min_vertices.saturating_sub(t.complex.vertex_count());
    let sizes = hole_sizes(deficit, holes);
    let mut current = t.clone();
    for (k, &n) in sizes.iter().enumerate() {
        let d = delta(n)?;
        // Holes keep their order, so the next original hole is always first.
        match fill_hole(&current, 0, &d)? {
            Filled::Closed(c) => {
                debug_assert_eq!(k + 1, sizes.len());
                return Ok(c);
            }
            Filled::Punctured(next) => current = next,
        }
    }
    unreachable!("the last fill closes the complex")
}

pub fn build_torus_from(
    base: &SupportingPunctured,
    min_vertices: usize,
) -> Result<SurfaceComplex, ConstructError> {
    if min_vertices < 1 {
        return Err(ConstructError::InvalidParameter(
            "min_vertices must be >= 1".into(),
        ));
    }
    let genus = euler_genus(&base.complex)?;
    if genus != 1 {
        return Err(ConstructError::NoSupportingDataAvailable(format!(
            "base has genus {genus}, expected 1"
        )));
    }
    fill_all(base, min_vertices)
}

/// A closed toroidal triangulation with a unique satisfying pair and at
/// least `min_vertices` vertices, built on the bundled connector.
pub fn build_torus(min_vertices: usize) -> Result<SurfaceComplex, ConstructError> {
    build_torus_from(&crate::data::default_connector(), min_vertices)
}

pub fn build_genus_from(
    connector: &SupportingPunctured,
    genus: usize,
    min_vertices: usize,
) -> Result<SurfaceComplex, ConstructError> {
    if genus < 1 {
        return Err(ConstructError::InvalidParameter(
            "genus must be >= 1".into(),
        ));
    }
    if min_vertices < 1 {
        return Err(ConstructError::InvalidParameter(
            "min_vertices must be >= 1".into(),
        ));
    }
    if !connector.is_connector() {
        return Err(ConstructError::NotAConnector(0));
    }
    let chain = chain_connectors(&vec![connector.clone(); genus])?;
    let c = fill_all(&chain, min_vertices)?;
    let g = euler_genus(&c)?;
    if g != genus {
        return Err(ConstructError::CertificationLost(format!(
            "expected genus {genus}, got {g}"
        )));
    }
    Ok(c)
}

/// A closed genus-`genus` triangulation with a unique satisfying pair.
pub fn build_genus(genus: usize, min_vertices: usize) -> Result<SurfaceComplex, ConstructError> {
    build_genus_from(&crate::data::default_connector(), genus, min_vertices)
}
