#![allow(dead_code)]

use proptest::prelude::*;
use tri_core::*;

pub fn k4() -> SurfaceComplex {
    build_complex(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]], []).unwrap()
}

pub fn octahedron() -> SurfaceComplex {
    // Poles 0 and 5 over the square 1-2-3-4.
    let mut f = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        f.push([0, a, b]);
        f.push([5, a, b]);
    }
    build_complex(6, f, []).unwrap()
}

pub fn icosahedron() -> SurfaceComplex {
    // Poles 0 and 11, upper ring 1..=5, lower ring 6..=10.
    let mut f = Vec::new();
    for i in 0..5 {
        let (u, un) = (1 + i, 1 + (i + 1) % 5);
        let (l, ln) = (6 + i, 6 + (i + 1) % 5);
        f.push([0, u, un]);
        f.push([11, l, ln]);
        f.push([u, un, l]);
        f.push([un, l, ln]);
    }
    build_complex(12, f, []).unwrap()
}

/// Closed complexes used across the property suites.
pub fn closed_corpus() -> Vec<(String, SurfaceComplex)> {
    let mut out = vec![
        ("k4".to_string(), k4()),
        ("octahedron".to_string(), octahedron()),
        ("icosahedron".to_string(), icosahedron()),
    ];
    for e in tri_core::data::catalog() {
        out.push((e.name, e.complex));
    }
    out.push(("connector-torus".into(), tri_core::data::connector_torus()));
    for n in [1, 2, 5, 9] {
        out.push((format!("delta{n}-plane"), delta(n).unwrap().plane()));
    }
    for n in [10, 13] {
        out.push((format!("torus-{n}"), build_torus(n).unwrap()));
    }
    out.push(("genus2".into(), build_genus(2, 1).unwrap()));
    out
}

/// Sphere triangulation grown from K4 by stacking a vertex into a face and
/// flipping edges.
pub fn grown_sphere(ops: &[(bool, usize)]) -> SurfaceComplex {
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut n = 4;
    for &(stack, pick) in ops {
        if stack {
            let [a, b, c] = faces.swap_remove(pick % faces.len());
            faces.extend([[a, b, n], [b, c, n], [a, c, n]]);
            n += 1;
        } else {
            flip(&mut faces, pick);
        }
    }
    build_complex(n, faces, []).unwrap()
}

fn flip(faces: &mut [[usize; 3]], pick: usize) {
    let i = pick % faces.len();
    let f = faces[i];
    let (a, b, c) = (f[0], f[1], f[2]);
    let Some(j) =
        (0..faces.len()).find(|&j| j != i && faces[j].contains(&a) && faces[j].contains(&b))
    else {
        return;
    };
    let d = *faces[j].iter().find(|&&v| v != a && v != b).unwrap();
    let exists = faces.iter().any(|t| t.contains(&c) && t.contains(&d));
    let degree = |v: usize| faces.iter().filter(|t| t.contains(&v)).count();
    if exists || c == d || degree(a) <= 3 || degree(b) <= 3 {
        return;
    }
    faces[i] = [a, c, d];
    faces[j] = [b, c, d];
}

pub fn arb_sphere(max_ops: usize) -> impl Strategy<Value = SurfaceComplex> {
    prop::collection::vec((any::<bool>(), 0usize..1000), 0..max_ops)
        .prop_map(|ops| grown_sphere(&ops))
}

/// A closed complex from the corpus or a grown sphere, optionally punctured.
pub fn arb_complex() -> impl Strategy<Value = SurfaceComplex> {
    let corpus: Vec<SurfaceComplex> = closed_corpus()
        .into_iter()
        .map(|(_, c)| c)
        .filter(|c| c.vertex_count() <= 14)
        .collect();
    let base = prop_oneof![arb_sphere(12), prop::sample::select(corpus)];
    (base, prop::collection::vec(0usize..1000, 0..3)).prop_map(|(c, picks)| {
        let faces: Vec<usize> = picks.iter().map(|p| p % c.faces().len()).collect();
        remove_faces(&c, &faces).unwrap_or(c)
    })
}

pub fn arb_constraint(c: &SurfaceComplex, picks: &[(u8, usize)]) -> Constraint {
    let mut k = Constraint::none();
    for &(kind, pick) in picks {
        match kind % 3 {
            0 => {
                let v = pick % c.vertex_count();
                k = k.pin(v, if pick % 2 == 0 { Spin::Up } else { Spin::Down });
            }
            1 => k = k.mono(c.edges()[pick % c.edges().len()]),
            _ => k = k.non_mono(c.edges()[pick % c.edges().len()]),
        }
    }
    k
}
