mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use tri_core::complex::dual_graph;
use tri_core::oracle::{brute_force, satisfying_states};
use tri_core::solve::satisfying_count;
use tri_core::*;

fn solve_all(c: &SurfaceComplex, k: &Constraint, jobs: usize) -> SolveReport {
    enumerate_satisfying(
        c,
        k,
        &SolveOptions {
            representative_cap: usize::MAX,
            jobs,
        },
    )
    .unwrap()
}

fn ground(c: &SurfaceComplex, method: Method, jobs: usize) -> GroundstateReport {
    groundstates(
        c,
        method,
        &GroundOptions {
            jobs,
            ..GroundOptions::default()
        },
    )
    .unwrap()
}

#[test]
fn k4_baseline() {
    let c = k4();
    let o = brute_force(&c, &Constraint::none()).unwrap();
    assert_eq!((o.satisfying_count, o.min_energy, o.degeneracy), (6, -2, 6));
    assert_eq!(satisfying_count(&c), 6);
    let g = ground(&c, Method::Exhaustive, 1);
    assert_eq!((g.min_energy, g.degeneracy), (-2, 6));
}

#[test]
fn corpus_matches_oracle() {
    for (name, c) in closed_corpus() {
        if c.vertex_count() > 20 {
            continue;
        }
        let o = brute_force(&c, &Constraint::none()).unwrap();
        let r = solve_all(&c, &Constraint::none(), 1);
        assert_eq!(r.satisfying_count, o.satisfying_count, "{name}");
        let mut expected = satisfying_states(&c, &Constraint::none()).unwrap();
        expected.retain(|s| s.get(0) == Spin::Up);
        assert_eq!(r.representatives, expected, "{name}");
        for m in [Method::Exhaustive, Method::BranchAndBound] {
            let g = ground(&c, m, 1);
            assert_eq!(
                (g.min_energy, g.degeneracy),
                (o.min_energy, o.degeneracy),
                "{name} {m:?}"
            );
        }
    }
}

#[test]
fn energy_identity_on_closed_corpus() {
    for (name, c) in closed_corpus() {
        let r = solve_all(&c, &Constraint::none(), 1);
        if r.satisfying_count == 0 {
            continue;
        }
        let (e, f) = (c.edges().len() as i64, c.faces().len() as i64);
        for s in r
            .representatives
            .iter()
            .flat_map(|s| [s.clone(), s.negated()])
        {
            assert_eq!(energy(&c, &s).unwrap(), f - e, "{name}");
            assert_eq!(3 * (f - e), -e, "{name}");
            assert_eq!(
                frustrated_edges(&c, &s).unwrap().len() as i64,
                f / 2,
                "{name}"
            );
        }
        if c.vertex_count() <= 26 {
            let g = ground(&c, Method::Exhaustive, 2);
            assert_eq!(g.min_energy, -e / 3, "{name}");
            assert_eq!(g.degeneracy, r.satisfying_count, "{name}");
        }
    }
}

#[test]
fn matchings_on_closed_corpus() {
    for (name, c) in closed_corpus() {
        let genus = euler_genus(&c).unwrap();
        let r = solve_all(&c, &Constraint::none(), 1);
        for s in &r.representatives {
            let m = matching_from_state(&c, s).unwrap();
            tri_core::matching::check_perfect_matching(&c, &m).unwrap();
            assert_eq!(m.len(), c.faces().len() / 2, "{name}");
            let back = state_from_matching(&c, &m).unwrap();
            if genus == 0 {
                assert_eq!(back, Some((s.clone(), s.negated())), "{name}");
            }
            if let Some((a, b)) = back {
                assert!(&a == s || &b == s, "{name}");
            }
        }
    }
}

/// Perfect matchings of a cubic graph given as an edge list.
fn perfect_matchings(nodes: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    fn go(
        edges: &[(usize, usize)],
        incident: &[Vec<usize>],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            out.push(chosen.iter().copied().collect());
            return;
        };
        for &e in &incident[v] {
            let (a, b) = edges[e];
            let u = if a == v { b } else { a };
            if u == v || covered[u] {
                continue;
            }
            covered[v] = true;
            covered[u] = true;
            chosen.push(e);
            go(edges, incident, covered, chosen, out);
            chosen.pop();
            covered[v] = false;
            covered[u] = false;
        }
    }
    let mut incident = vec![Vec::new(); nodes];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut out = Vec::new();
    go(
        edges,
        &incident,
        &mut vec![false; nodes],
        &mut Vec::new(),
        &mut out,
    );
    out
}

#[test]
fn toroidal_dual_has_matchings_without_states() {
    let c = tri_core::data::connector_torus();
    let dual = dual_graph(&c).unwrap();
    let all = perfect_matchings(dual.node_count, &dual.edges);
    let mut realized = 0;
    let mut conflicting = 0;
    for m in &all {
        let edges: BTreeSet<Edge> = m.iter().map(|&i| c.edges()[i]).collect();
        match state_from_matching(&c, &edges).unwrap() {
            Some((s, t)) => {
                assert_eq!(matching_from_state(&c, &s).unwrap(), edges);
                assert_eq!(t, s.negated());
                realized += 1;
            }
            None => conflicting += 1,
        }
    }
    assert_eq!(realized, 1);
    assert!(conflicting > 0);
}

#[test]
fn sphere_matchings_biject_with_pairs() {
    for c in [k4(), octahedron(), delta(4).unwrap().plane()] {
        let dual = dual_graph(&c).unwrap();
        let all = perfect_matchings(dual.node_count, &dual.edges);
        assert_eq!(all.len() as u64 * 2, satisfying_count(&c));
    }
}

#[test]
fn one_hole_torus_energies_differ() {
    let c = tri_core::data::one_hole_torus();
    let states = satisfying_states(&c, &Constraint::none()).unwrap();
    let energies: BTreeSet<i64> = states.iter().map(|s| energy(&c, s).unwrap()).collect();
    assert_eq!(energies, BTreeSet::from([-8, -6]));
    let g = ground(&c, Method::Exhaustive, 1);
    assert_eq!((g.min_energy, g.degeneracy), (-8, 2));
    let b = ground(&c, Method::BranchAndBound, 1);
    assert_eq!((b.min_energy, b.degeneracy), (-8, 2));
}

#[test]
fn ceiling_is_enforced() {
    let c = build_torus(20).unwrap();
    let opts = GroundOptions {
        vertex_ceiling: 12,
        ..GroundOptions::default()
    };
    assert_eq!(
        groundstates(&c, Method::Exhaustive, &opts).unwrap_err(),
        IsingError::ResourceLimit {
            vertices: 20,
            ceiling: 12
        }
    );
    let auto = groundstates(&c, Method::Auto, &opts).unwrap();
    assert_eq!(auto.method, Method::BranchAndBound);
    assert_eq!(auto.degeneracy, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_matches_oracle(c in arb_complex(), picks in prop::collection::vec((any::<u8>(), any::<usize>()), 0..3)) {
        let k = arb_constraint(&c, &picks);
        let o = satisfying_states(&c, &k).unwrap();
        let r = solve_all(&c, &k, 1);
        prop_assert_eq!(r.satisfying_count, o.len() as u64);
        if k.is_sign_symmetric() {
            prop_assert_eq!(r.pair_count, Some(o.len() as u64 / 2));
            let mut canon: Vec<SpinState> = o.iter().filter(|s| s.get(0) == Spin::Up).cloned().collect();
            canon.sort();
            prop_assert_eq!(&r.representatives, &canon);
        } else {
            prop_assert_eq!(&r.representatives, &o);
        }
        prop_assert_eq!(solve_all(&c, &k, 4), r);
    }

    #[test]
    fn groundstates_match_oracle(c in arb_complex()) {
        let o = brute_force(&c, &Constraint::none()).unwrap();
        for m in [Method::Exhaustive, Method::BranchAndBound] {
            let g = ground(&c, m, 1);
            prop_assert_eq!((g.min_energy, g.degeneracy), (o.min_energy, o.degeneracy));
            let g4 = ground(&c, m, 4);
            prop_assert_eq!(&g4, &g);
            for s in &g.representatives {
                prop_assert_eq!(energy(&c, s).unwrap(), g.min_energy);
            }
            prop_assert!(g.representatives.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn satisfying_set_is_sign_symmetric(c in arb_complex()) {
        let states = satisfying_states(&c, &Constraint::none()).unwrap();
        let set: BTreeSet<SpinState> = states.iter().cloned().collect();
        for s in &states {
            prop_assert!(set.contains(&s.negated()));
        }
    }

    #[test]
    fn closed_satisfying_states_are_groundstates(c in arb_sphere(14)) {
        let r = solve_all(&c, &Constraint::none(), 1);
        prop_assert!(r.satisfying_count > 0);
        let g = ground(&c, Method::Exhaustive, 1);
        prop_assert_eq!(g.degeneracy, r.satisfying_count);
        prop_assert_eq!(g.min_energy, -(c.edges().len() as i64) / 3);
    }

    #[test]
    fn sphere_matching_round_trip(c in arb_sphere(10)) {
        let r = solve_all(&c, &Constraint::none(), 1);
        for s in &r.representatives {
            let m = matching_from_state(&c, s).unwrap();
            prop_assert_eq!(state_from_matching(&c, &m).unwrap(), Some((s.clone(), s.negated())));
        }
    }

    #[test]
    fn serious_edges_are_mono_in_every_state(c in arb_complex()) {
        let states = satisfying_states(&c, &Constraint::none()).unwrap();
        match serious_edges(&c) {
            Ok(serious) => {
                let expected: Vec<Edge> = c.edges().iter().copied()
                    .filter(|&e| states.iter().all(|s| s.is_monochromatic(e)))
                    .collect();
                prop_assert_eq!(serious, expected);
            }
            Err(e) => {
                prop_assert_eq!(e, IsingError::NoSatisfyingState);
                prop_assert!(states.is_empty());
            }
        }
    }

    #[test]
    fn tri_text_round_trips(c in arb_complex()) {
        let text = to_tri_string(&c);
        let back = parse_tri(&text).unwrap();
        prop_assert_eq!(to_tri_string(&back), text);
        prop_assert_eq!(back, c);
    }

    #[test]
    fn removal_is_monotone(c in arb_complex(), pick in any::<usize>()) {
        let base = satisfying_count(&c);
        if let Ok(p) = remove_faces(&c, &[pick % c.faces().len()]) {
            prop_assert!(satisfying_count(&p) >= base);
        }
    }
}
