//! Combinatorial model of (punctured) triangulations of closed orientable
//! surfaces.
//!
//! A [`SurfaceComplex`] is a vertex count plus two lists of vertex triples:
//! the kept faces and the holes (boundaries of removed faces). Every
//! constructor runs the full validation, so a value of this type always
//! describes a connected, orientable surface in which every edge borders
//! exactly two triangles (face or hole) and at least one kept face.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Vertex ids are `0..vertex_count`.
pub type Vertex = usize;

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn ends(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    fn map(self, f: impl Fn(Vertex) -> Vertex) -> Self {
        Edge::new(f(self.0), f(self.1))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Unordered vertex triple (a face or a hole boundary), stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([Vertex; 3]);

impl Triple {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        Triple(t)
    }

    pub fn vertices(self) -> [Vertex; 3] {
        self.0
    }

    pub fn edges(self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)]
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn contains_edge(self, e: Edge) -> bool {
        let (a, b) = e.ends();
        a != b && self.contains(a) && self.contains(b)
    }

    /// The vertex of the triple not on `e`. `e` must lie in the triple.
    pub fn opposite(self, e: Edge) -> Vertex {
        let (a, b) = e.ends();
        *self
            .0
            .iter()
            .find(|&&v| v != a && v != b)
            .expect("edge not contained in triple")
    }

    pub fn shares_vertex(self, other: Triple) -> bool {
        self.0.iter().any(|&v| other.contains(v))
    }

    fn is_degenerate(self) -> bool {
        self.0[0] == self.0[1] || self.0[1] == self.0[2]
    }

    fn map(self, f: impl Fn(Vertex) -> Vertex) -> Self {
        Triple::new(f(self.0[0]), f(self.0[1]), f(self.0[2]))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

impl From<[Vertex; 3]> for Triple {
    fn from(t: [Vertex; 3]) -> Self {
        Triple::new(t[0], t[1], t[2])
    }
}

pub const FUNDAMENTAL_EDGES: &str = "fundamental_edges";
pub const EXPANDABLE_CYCLES: &str = "expandable_cycles";
pub const CONNECTION_CYCLES: &str = "connection_cycles";
pub const FILLED_CYCLES: &str = "filled_cycles";

/// Named edge and cycle lists attached to a complex.
///
/// Marks are annotations: they are checked to reference existing edges and
/// 3-cycles, and they are carried through face removal and gluing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Marks {
    pub edges: BTreeMap<String, Vec<Edge>>,
    pub cycles: BTreeMap<String, Vec<Triple>>,
}

impl Marks {
    pub fn is_empty(&self) -> bool {
        self.edges.values().all(Vec::is_empty) && self.cycles.values().all(Vec::is_empty)
    }

    pub fn edge_list(&self, name: &str) -> &[Edge] {
        self.edges.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn cycle_list(&self, name: &str) -> &[Triple] {
        self.cycles.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn set_edges(&mut self, name: &str, edges: Vec<Edge>) {
        if edges.is_empty() {
            self.edges.remove(name);
        } else {
            self.edges.insert(name.to_string(), edges);
        }
    }

    pub fn set_cycles(&mut self, name: &str, cycles: Vec<Triple>) {
        if cycles.is_empty() {
            self.cycles.remove(name);
        } else {
            self.cycles.insert(name.to_string(), cycles);
        }
    }

    fn map(&self, f: impl Fn(Vertex) -> Vertex + Copy) -> Marks {
        Marks {
            edges: self
                .edges
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|e| e.map(f)).collect()))
                .collect(),
            cycles: self
                .cycles
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|t| t.map(f)).collect()))
                .collect(),
        }
    }

    fn merge(&mut self, other: Marks) {
        for (k, v) in other.edges {
            let list = self.edges.entry(k).or_default();
            for e in v {
                if !list.contains(&e) {
                    list.push(e);
                }
            }
        }
        for (k, v) in other.cycles {
            let list = self.cycles.entry(k).or_default();
            for t in v {
                if !list.contains(&t) {
                    list.push(t);
                }
            }
        }
    }

    /// Drop every cycle equal to `consumed` and every fundamental edge on it.
    fn forget_cycle(&mut self, consumed: Triple) {
        for list in self.cycles.values_mut() {
            list.retain(|&t| t != consumed);
        }
        if let Some(list) = self.edges.get_mut(FUNDAMENTAL_EDGES) {
            list.retain(|&e| !consumed.contains_edge(e));
        }
        self.edges.retain(|_, v| !v.is_empty());
        self.cycles.retain(|_, v| !v.is_empty());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("triple {triple:?} references vertex {vertex} outside 0..{vertex_count}")]
    VertexOutOfRange {
        triple: [Vertex; 3],
        vertex: Vertex,
        vertex_count: usize,
    },
    #[error("triple {0:?} repeats a vertex")]
    DegenerateTriple([Vertex; 3]),
    #[error("triple {0} occurs more than once")]
    DuplicateTriple(Triple),
    #[error("edge {edge} lies in {count} triangles (faces and holes), expected 2")]
    EdgeInWrongNumberOfTriples { edge: Edge, count: usize },
    #[error("edge {0} lies on holes only, not on any kept face")]
    EdgeWithoutFace(Edge),
    #[error("vertex {0} lies on no face or hole")]
    IsolatedVertex(Vertex),
    #[error("the triangles around vertex {0} do not form a single cycle")]
    PinchedVertex(Vertex),
    #[error("complex is disconnected (vertex {0} is unreachable from vertex 0)")]
    Disconnected(Vertex),
    #[error("no consistent orientation exists (conflict at edge {0})")]
    NonOrientable(Edge),
    #[error("Euler characteristic {0} does not give a non-negative integer genus")]
    InvalidEulerCharacteristic(i64),
    #[error("face index {index} out of range ({face_count} faces)")]
    IndexOutOfRange { index: usize, face_count: usize },
    #[error("removing the faces leaves edge {0} without a kept face")]
    EdgeLeftWithoutFace(Edge),
    #[error("marked edge {edge} in `{name}` is not an edge of the complex")]
    UnknownMarkedEdge { name: String, edge: Edge },
    #[error("marked cycle {cycle} in `{name}` is not a 3-cycle of the complex")]
    UnknownMarkedCycle { name: String, cycle: Triple },
    #[error("label `{name}` points at vertex {vertex} outside the complex")]
    UnknownLabelVertex { name: String, vertex: Vertex },
    #[error("complex has holes; the operation needs a closed complex")]
    NotClosed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("{0} is not a hole of the first complex")]
    CycleANotAHole(Triple),
    #[error("{0} is not a hole of the second complex")]
    CycleBNotAHole(Triple),
    #[error("edge {edge} is not contained in cycle {cycle}")]
    EdgeNotInCycle { edge: Edge, cycle: Triple },
    #[error("neither orientation of the identification yields an orientable surface")]
    NoValidOrientation,
    #[error("glued complex is invalid: {0}")]
    ResultInvalid(ComplexError),
}

/// A validated (possibly punctured) triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComplex {
    vertex_count: usize,
    faces: Vec<Triple>,
    holes: Vec<Triple>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, usize>,
    marks: Marks,
    labels: BTreeMap<String, Vertex>,
    comment: String,
}

/// Validate raw triples and build a complex. Faces are sorted; holes keep
/// their input order since hole indices are meaningful downstream.
pub fn build_complex<F, H>(
    vertex_count: usize,
    faces: F,
    holes: H,
) -> Result<SurfaceComplex, ComplexError>
where
    F: IntoIterator<Item = [Vertex; 3]>,
    H: IntoIterator<Item = [Vertex; 3]>,
{
    let faces = checked_triples(vertex_count, faces)?;
    let holes = checked_triples(vertex_count, holes)?;
    SurfaceComplex::from_triples(vertex_count, faces, holes)
}

fn checked_triples<I>(vertex_count: usize, raw: I) -> Result<Vec<Triple>, ComplexError>
where
    I: IntoIterator<Item = [Vertex; 3]>,
{
    raw.into_iter()
        .map(|t| {
            if let Some(&v) = t.iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange {
                    triple: t,
                    vertex: v,
                    vertex_count,
                });
            }
            let triple = Triple::from(t);
            if triple.is_degenerate() {
                return Err(ComplexError::DegenerateTriple(t));
            }
            Ok(triple)
        })
        .collect()
}

impl SurfaceComplex {
    fn from_triples(
        vertex_count: usize,
        mut faces: Vec<Triple>,
        holes: Vec<Triple>,
    ) -> Result<Self, ComplexError> {
        faces.sort_unstable();
        for w in faces.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateTriple(w[0]));
            }
        }
        let mut sorted_holes = holes.clone();
        sorted_holes.sort_unstable();
        for w in sorted_holes.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateTriple(w[0]));
            }
        }

        // Edge incidences over faces ∪ holes.
        let mut incidence: BTreeMap<Edge, (usize, usize)> = BTreeMap::new();
        for t in &faces {
            for e in t.edges() {
                incidence.entry(e).or_default().0 += 1;
            }
        }
        for t in &holes {
            for e in t.edges() {
                incidence.entry(e).or_default().1 += 1;
            }
        }
        for (&edge, &(in_faces, in_holes)) in &incidence {
            if in_faces + in_holes != 2 {
                return Err(ComplexError::EdgeInWrongNumberOfTriples {
                    edge,
                    count: in_faces + in_holes,
                });
            }
            if in_faces == 0 {
                return Err(ComplexError::EdgeWithoutFace(edge));
            }
        }

        let edges: Vec<Edge> = incidence.keys().copied().collect();
        let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        let all: Vec<Triple> = faces.iter().chain(holes.iter()).copied().collect();
        check_links(vertex_count, &all)?;
        check_connected(vertex_count, &edges)?;
        orient(&all)?;

        Ok(SurfaceComplex {
            vertex_count,
            faces,
            holes,
            edges,
            edge_index,
            marks: Marks::default(),
            labels: BTreeMap::new(),
            comment: String::new(),
        })
    }

    pub fn with_marks(mut self, marks: Marks) -> Result<Self, ComplexError> {
        for (name, list) in &marks.edges {
            for &edge in list {
                if !self.has_edge(edge) {
                    return Err(ComplexError::UnknownMarkedEdge {
                        name: name.clone(),
                        edge,
                    });
                }
            }
        }
        for (name, list) in &marks.cycles {
            for &cycle in list {
                if !cycle.edges().iter().all(|&e| self.has_edge(e)) {
                    return Err(ComplexError::UnknownMarkedCycle {
                        name: name.clone(),
                        cycle,
                    });
                }
            }
        }
        self.marks = marks;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: BTreeMap<String, Vertex>) -> Result<Self, ComplexError> {
        if let Some((name, &vertex)) = labels.iter().find(|(_, &v)| v >= self.vertex_count) {
            return Err(ComplexError::UnknownLabelVertex {
                name: name.clone(),
                vertex,
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = comment.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Triple] {
        &self.faces
    }

    pub fn holes(&self) -> &[Triple] {
        &self.holes
    }

    /// All edges, sorted. Hole edges are included (each borders a face too).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.edge_index.get(&e).copied()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_index.contains_key(&e)
    }

    pub fn is_closed(&self) -> bool {
        self.holes.is_empty()
    }

    pub fn marks(&self) -> &Marks {
        &self.marks
    }

    pub fn labels(&self) -> &BTreeMap<String, Vertex> {
        &self.labels
    }

    pub fn comment(&self) -> &str {
        &self.comment
    }

    /// Resolve a vertex reference: a label name or a decimal id.
    pub fn resolve_vertex(&self, name: &str) -> Option<Vertex> {
        if let Some(&v) = self.labels.get(name) {
            return Some(v);
        }
        name.parse::<Vertex>()
            .ok()
            .filter(|&v| v < self.vertex_count)
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            let (a, b) = e.ends();
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn hole_index(&self, t: Triple) -> Option<usize> {
        self.holes.iter().position(|&h| h == t)
    }

    pub fn face_index(&self, t: Triple) -> Option<usize> {
        self.faces.binary_search(&t).ok()
    }

    /// Turn every hole back into a face.
    pub fn filled(&self) -> SurfaceComplex {
        let faces = self
            .faces
            .iter()
            .chain(self.holes.iter())
            .copied()
            .collect();
        let mut c = SurfaceComplex::from_triples(self.vertex_count, faces, Vec::new())
            .expect("filling the holes of a valid complex yields a valid complex");
        c.labels = self.labels.clone();
        c.marks = self.marks.clone();
        c.comment = self.comment.clone();
        c
    }

    /// Every edge lies in some 3-cycle that is not a face boundary. On the
    /// torus this is the irreducibility (minimality) condition.
    pub fn every_edge_in_nonfacial_triangle(&self) -> bool {
        let adj = self.adjacency();
        let triangles: std::collections::HashSet<Triple> = self
            .faces
            .iter()
            .chain(self.holes.iter())
            .copied()
            .collect();
        self.edges.iter().all(|e| {
            let (a, b) = e.ends();
            adj[a].iter().any(|&c| {
                c != b
                    && adj[b].binary_search(&c).is_ok()
                    && !triangles.contains(&Triple::new(a, b, c))
            })
        })
    }
}

fn check_links(vertex_count: usize, triples: &[Triple]) -> Result<(), ComplexError> {
    // Link of v: one edge between the two other vertices of each triple at v.
    let mut link: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); vertex_count];
    for t in triples {
        let [a, b, c] = t.vertices();
        link[a].push((b, c));
        link[b].push((a, c));
        link[c].push((a, b));
    }
    for (v, edges) in link.iter().enumerate() {
        if edges.is_empty() {
            return Err(ComplexError::IsolatedVertex(v));
        }
        // Every link vertex has degree 2 (each edge at v borders two
        // triangles), so the link is a union of cycles; walk one of them.
        let mut seen = vec![false; edges.len()];
        let (start, mut cur) = edges[0];
        seen[0] = true;
        let mut walked = 1;
        while cur != start {
            let next = edges
                .iter()
                .enumerate()
                .find(|(i, &(x, y))| !seen[*i] && (x == cur || y == cur));
            match next {
                Some((i, &(x, y))) => {
                    seen[i] = true;
                    walked += 1;
                    cur = if x == cur { y } else { x };
                }
                None => return Err(ComplexError::PinchedVertex(v)),
            }
        }
        if walked != edges.len() {
            return Err(ComplexError::PinchedVertex(v));
        }
    }
    Ok(())
}

fn check_connected(vertex_count: usize, edges: &[Edge]) -> Result<(), ComplexError> {
    let mut adj = vec![Vec::new(); vertex_count];
    for e in edges {
        let (a, b) = e.ends();
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; vertex_count];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(ComplexError::Disconnected(v)),
        None => Ok(()),
    }
}

/// Propagate a cyclic orientation across shared edges. Returns the oriented
/// triples in input order.
fn orient(triples: &[Triple]) -> Result<Vec<[Vertex; 3]>, ComplexError> {
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (i, t) in triples.iter().enumerate() {
        for e in t.edges() {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut oriented: Vec<Option<[Vertex; 3]>> = vec![None; triples.len()];
    for root in 0..triples.len() {
        if oriented[root].is_some() {
            continue;
        }
        oriented[root] = Some(triples[root].vertices());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let o = oriented[i].unwrap();
            for k in 0..3 {
                let (a, b) = (o[k], o[(k + 1) % 3]);
                let e = Edge::new(a, b);
                for &j in &by_edge[&e] {
                    if j == i {
                        continue;
                    }
                    // j must traverse the shared edge as b -> a.
                    let c = triples[j].opposite(e);
                    let want = [b, a, c];
                    match oriented[j] {
                        None => {
                            oriented[j] = Some(want);
                            queue.push_back(j);
                        }
                        Some(have) => {
                            if !same_cyclic(have, want) {
                                return Err(ComplexError::NonOrientable(e));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(oriented.into_iter().map(Option::unwrap).collect())
}

fn same_cyclic(x: [Vertex; 3], y: [Vertex; 3]) -> bool {
    (0..3).any(|s| (0..3).all(|k| x[(k + s) % 3] == y[k]))
}

/// Genus of the closed surface obtained by filling every hole.
pub fn euler_genus(c: &SurfaceComplex) -> Result<usize, ComplexError> {
    let chi =
        c.vertex_count as i64 - c.edges.len() as i64 + c.faces.len() as i64 + c.holes.len() as i64;
    if chi > 2 || (2 - chi) % 2 != 0 {
        return Err(ComplexError::InvalidEulerCharacteristic(chi));
    }
    Ok(((2 - chi) / 2) as usize)
}

/// Move the listed faces to the hole list, appended in ascending index order.
pub fn remove_faces(
    c: &SurfaceComplex,
    face_indices: &[usize],
) -> Result<SurfaceComplex, ComplexError> {
    let mut indices: Vec<usize> = face_indices.to_vec();
    indices.sort_unstable();
    indices.dedup();
    if let Some(&index) = indices.iter().find(|&&i| i >= c.faces.len()) {
        return Err(ComplexError::IndexOutOfRange {
            index,
            face_count: c.faces.len(),
        });
    }
    let removed: Vec<Triple> = indices.iter().map(|&i| c.faces[i]).collect();
    let kept: Vec<Triple> = c
        .faces
        .iter()
        .enumerate()
        .filter(|(i, _)| indices.binary_search(i).is_err())
        .map(|(_, &t)| t)
        .collect();
    for t in &removed {
        for e in t.edges() {
            if !kept.iter().any(|k| k.contains_edge(e)) {
                return Err(ComplexError::EdgeLeftWithoutFace(e));
            }
        }
    }
    let mut holes = c.holes.clone();
    holes.extend(removed);
    let out = SurfaceComplex::from_triples(c.vertex_count, kept, holes)?;
    Ok(SurfaceComplex {
        marks: c.marks.clone(),
        labels: c.labels.clone(),
        comment: c.comment.clone(),
        ..out
    })
}

/// Identification of a hole of one complex with a hole of another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingSpec {
    pub cycle_a: Triple,
    pub cycle_b: Triple,
    pub edge_a: Edge,
    pub edge_b: Edge,
}

#[derive(Debug, Clone)]
pub struct Glued {
    pub complex: SurfaceComplex,
    /// New id of every vertex of the second complex.
    pub vertex_map: Vec<Vertex>,
    /// `false`: edge_b ends map in sorted order onto edge_a ends; `true`: crossed.
    pub crossed: bool,
    /// The other identification also produced a valid complex.
    pub alternative_valid: bool,
}

/// Glue `b` onto `a` along a hole of each, matching `edge_b` onto `edge_a`.
/// The result keeps the ids of `a`; surviving vertices of `b` are appended in
/// ascending order of their old ids. Holes of `a` come first, then those of `b`.
pub fn glue(a: &SurfaceComplex, b: &SurfaceComplex, spec: &GluingSpec) -> Result<Glued, GlueError> {
    if a.hole_index(spec.cycle_a).is_none() {
        return Err(GlueError::CycleANotAHole(spec.cycle_a));
    }
    if b.hole_index(spec.cycle_b).is_none() {
        return Err(GlueError::CycleBNotAHole(spec.cycle_b));
    }
    if !spec.cycle_a.contains_edge(spec.edge_a) {
        return Err(GlueError::EdgeNotInCycle {
            edge: spec.edge_a,
            cycle: spec.cycle_a,
        });
    }
    if !spec.cycle_b.contains_edge(spec.edge_b) {
        return Err(GlueError::EdgeNotInCycle {
            edge: spec.edge_b,
            cycle: spec.cycle_b,
        });
    }

    let attempts: Vec<(Result<SurfaceComplex, ComplexError>, Vec<Vertex>)> = [false, true]
        .into_iter()
        .map(|crossed| {
            let map = glue_map(a, b, spec, crossed);
            (glue_with(a, b, spec, &map), map)
        })
        .collect();

    let ok: Vec<usize> = (0..2).filter(|&i| attempts[i].0.is_ok()).collect();
    match ok.first() {
        Some(&i) => {
            let (res, map) = attempts.into_iter().nth(i).unwrap();
            Ok(Glued {
                complex: res.unwrap(),
                vertex_map: map,
                crossed: i == 1,
                alternative_valid: ok.len() == 2,
            })
        }
        None => {
            let errs: Vec<ComplexError> =
                attempts.into_iter().map(|(r, _)| r.unwrap_err()).collect();
            if errs
                .iter()
                .all(|e| matches!(e, ComplexError::NonOrientable(_)))
            {
                Err(GlueError::NoValidOrientation)
            } else {
                let e = errs
                    .into_iter()
                    .find(|e| !matches!(e, ComplexError::NonOrientable(_)))
                    .unwrap();
                Err(GlueError::ResultInvalid(e))
            }
        }
    }
}

fn glue_map(
    a: &SurfaceComplex,
    b: &SurfaceComplex,
    spec: &GluingSpec,
    crossed: bool,
) -> Vec<Vertex> {
    let (pa, qa) = spec.edge_a.ends();
    let (pb, qb) = spec.edge_b.ends();
    let ra = spec.cycle_a.opposite(spec.edge_a);
    let rb = spec.cycle_b.opposite(spec.edge_b);
    let mut next = a.vertex_count;
    (0..b.vertex_count)
        .map(|v| {
            if v == pb {
                if crossed {
                    qa
                } else {
                    pa
                }
            } else if v == qb {
                if crossed {
                    pa
                } else {
                    qa
                }
            } else if v == rb {
                ra
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

fn glue_with(
    a: &SurfaceComplex,
    b: &SurfaceComplex,
    spec: &GluingSpec,
    map: &[Vertex],
) -> Result<SurfaceComplex, ComplexError> {
    let f = |v: Vertex| map[v];
    let vertex_count = a.vertex_count + b.vertex_count - 3;
    let faces: Vec<Triple> = a
        .faces
        .iter()
        .copied()
        .chain(b.faces.iter().map(|t| t.map(f)))
        .collect();
    let holes: Vec<Triple> = a
        .holes
        .iter()
        .copied()
        .filter(|&t| t != spec.cycle_a)
        .chain(
            b.holes
                .iter()
                .filter(|&&t| t != spec.cycle_b)
                .map(|t| t.map(f)),
        )
        .collect();
    let out = SurfaceComplex::from_triples(vertex_count, faces, holes)?;
    let mut marks = a.marks.clone();
    marks.merge(b.marks.map(f));
    marks.forget_cycle(spec.cycle_a);
    Ok(SurfaceComplex {
        marks,
        labels: a.labels.clone(),
        comment: a.comment.clone(),
        ..out
    })
}

/// The dual of a closed complex: one node per face, one edge per primal edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub node_count: usize,
    /// Indexed like [`SurfaceComplex::edges`]: the two faces on each primal edge.
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.node_count];
        for &(x, y) in &self.edges {
            d[x] += 1;
            d[y] += 1;
        }
        d
    }
}

pub fn dual_graph(c: &SurfaceComplex) -> Result<DualGraph, ComplexError> {
    if !c.is_closed() {
        return Err(ComplexError::NotClosed);
    }
    let mut sides: Vec<Vec<usize>> = vec![Vec::with_capacity(2); c.edges.len()];
    for (fi, t) in c.faces.iter().enumerate() {
        for e in t.edges() {
            sides[c.edge_index[&e]].push(fi);
        }
    }
    Ok(DualGraph {
        node_count: c.faces.len(),
        edges: sides.into_iter().map(|s| (s[0], s[1])).collect(),
    })
}
