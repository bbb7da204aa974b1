mod common;

use harmless_core::gadgets::{
    build_reduction, construct_clique_solution, modulator_set, verify_reduction, ColouredEdge,
    MccInstance, ReductionOutput, VertexRole,
};
use harmless_core::random::{random_mcc, rng};
use harmless_core::solvers::BruteForce;
use rand::Rng;

fn edge(i: usize, x: usize, j: usize, y: usize) -> ColouredEdge {
    ColouredEdge { i, x, j, y }
}

fn choose2(k: usize) -> usize {
    k * (k - 1) / 2
}

/// Hand count per gadget, for inputs with an edge in every class pair:
/// selection 3n vertices and 2n edges; ports 4 and 4n edges per pair; test
/// 2n+1 vertices, 2n xor edges, 2n port edges and n apex edges; apex 1 per
/// pair; a_F adjacent to every forbidden vertex and b_F.
fn expected_counts(k: usize, n: usize, m: usize) -> (usize, usize) {
    let pairs = choose2(k);
    let vertices = 3 * n * k + 5 * pairs + (2 * n + 1) * m + 2;
    let forbidden = n * k + n * m + 5 * pairs;
    let edges = 2 * n * k + 4 * n * pairs + 5 * n * m + forbidden + 1;
    (vertices, edges)
}

fn check_thresholds(out: &ReductionOutput) {
    let n = out.source.n();
    for (v, role) in out.roles.iter().enumerate() {
        let t = out.instance.threshold(v);
        match role {
            VertexRole::SelectionXor { .. } | VertexRole::TestXor { .. } => assert_eq!(t, 2),
            VertexRole::PortPlus { .. } | VertexRole::PortMinus { .. } | VertexRole::Apex { .. } => {
                assert_eq!(t, n + 1)
            }
            VertexRole::ForbiddenA | VertexRole::ForbiddenB => assert_eq!(t, 1),
            _ => assert!(t > out.instance.graph().degree(v)),
        }
    }
}

fn xor_pairs(out: &ReductionOutput) -> Vec<(usize, usize)> {
    let g = out.instance.graph();
    out.roles
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r, VertexRole::SelectionXor { .. } | VertexRole::TestXor { .. }))
        .map(|(x, _)| {
            let nb: Vec<_> = g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&w| !out.roles[w].is_forbidden())
                .collect();
            assert_eq!(nb.len(), 2);
            (nb[0], nb[1])
        })
        .collect()
}

#[test]
fn size_identities_and_thresholds() {
    let mut r = rng(5);
    for _ in 0..60 {
        let k = r.gen_range(2..=4);
        let n = r.gen_range(1..=3);
        let mcc = random_mcc(&mut r, k, n, 0.5);
        let out = build_reduction(&mcc).unwrap();
        let (v, e) = if out.empty_pairs.is_empty() {
            expected_counts(k, n, mcc.num_edges())
        } else {
            (out.target() - 1 + 5 * choose2(k) + 2, 5 * choose2(k) + 1)
        };
        assert_eq!(out.instance.num_vertices(), v);
        assert_eq!(out.instance.graph().num_edges(), e);
        assert_eq!(out.roles.len(), v);
        assert_eq!(modulator_set(&out).len(), 5 * choose2(k) + 1);
        check_thresholds(&out);
    }
}

#[test]
fn worked_examples() {
    let single = MccInstance::new(2, 1, [edge(0, 0, 1, 0)]).unwrap();
    let out = build_reduction(&single).unwrap();
    assert_eq!(out.instance.num_vertices(), 16);
    let check = verify_reduction(&single, 40).unwrap();
    assert!(check.passed());
    assert_eq!((check.clique.is_some(), check.optimum), (true, 3));

    let triangle = MccInstance::new(3, 1, [edge(0, 0, 1, 0), edge(1, 0, 2, 0), edge(0, 0, 2, 0)]).unwrap();
    let check = verify_reduction(&triangle, 40).unwrap();
    assert!(check.passed());
    assert_eq!((check.clique.is_some(), check.optimum), (true, 6));

    let path = MccInstance::new(3, 1, [edge(0, 0, 1, 0), edge(1, 0, 2, 0)]).unwrap();
    let check = verify_reduction(&path, 40).unwrap();
    assert!(check.passed());
    assert_eq!(check.target, 5);
    assert!(check.clique.is_none() && check.optimum < 5);
    assert_eq!(build_reduction(&path).unwrap().empty_pairs, vec![(0, 2)]);

    let full = MccInstance::new(2, 2, (0..2).flat_map(|x| (0..2).map(move |y| edge(0, x, 1, y)))).unwrap();
    let out = build_reduction(&full).unwrap();
    assert_eq!(out.target(), 9);
    let s = construct_clique_solution(&out, &[0, 1]).unwrap();
    assert_eq!(s.len(), 9);
    assert!(common::is_harmless(&out.instance, &s));
}

#[test]
fn enumerated_harmless_sets_respect_the_gadgets() {
    let cases = [
        MccInstance::new(2, 1, [edge(0, 0, 1, 0)]).unwrap(),
        MccInstance::new(2, 2, [edge(0, 0, 1, 1)]).unwrap(),
        MccInstance::new(2, 2, [edge(0, 0, 1, 1), edge(0, 1, 1, 0)]).unwrap(),
        MccInstance::new(3, 1, [edge(0, 0, 1, 0), edge(1, 0, 2, 0)]).unwrap(),
    ];
    for mcc in cases {
        let out = build_reduction(&mcc).unwrap();
        let n = mcc.n();
        let xors = xor_pairs(&out);
        let sets = common::all_harmless_sets(&out.instance, None);
        assert!(!sets.is_empty());
        for s in &sets {
            assert!(s.iter().all(|&v| !out.roles[v].is_forbidden()), "{s:?}");
            for &(a, b) in &xors {
                assert!(!(s.contains(&a) && s.contains(&b)));
            }
            for colour in 0..mcc.k() {
                let in_gadget = s
                    .iter()
                    .filter(|&&v| {
                        matches!(
                            out.roles[v],
                            VertexRole::SelectionLight { colour: c, .. } | VertexRole::SelectionDark { colour: c, .. }
                                if c == colour
                        )
                    })
                    .count();
                assert!(in_gadget <= n);
            }
        }
    }
}

#[test]
fn every_clique_encodes_a_solution() {
    let mut r = rng(77);
    for _ in 0..80 {
        let k = r.gen_range(2..=4);
        let n = r.gen_range(1..=3);
        let mcc = random_mcc(&mut r, k, n, 0.7);
        let out = build_reduction(&mcc).unwrap();
        for clique in mcc.all_cliques() {
            let s = construct_clique_solution(&out, &clique).unwrap();
            assert_eq!(s.len(), out.target());
            assert!(common::is_harmless(&out.instance, &s));
        }
    }
}

#[test]
fn soundness_on_small_random_inputs() {
    let mut r = rng(91);
    for _ in 0..40 {
        let n = r.gen_range(1..=2);
        let mcc = random_mcc(&mut r, 3, n, 0.5);
        let out = build_reduction(&mcc).unwrap();
        let best = BruteForce { cap: 64, goal: Some(out.target()) }.solve(&out.instance).unwrap();
        assert_eq!(best.size >= out.target(), mcc.find_clique().is_some(), "{mcc:?}");
    }
}

#[test]
fn layout_is_reproducible() {
    let mcc = random_mcc(&mut rng(3), 3, 2, 0.5);
    let a = build_reduction(&mcc).unwrap();
    let b = build_reduction(&mcc).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        harmless_core::io::instance_to_string(&a.instance),
        harmless_core::io::instance_to_string(&b.instance)
    );
}

#[test]
fn invalid_sources_are_rejected() {
    assert!(MccInstance::new(2, 1, [edge(0, 0, 0, 0)]).is_err());
    assert!(MccInstance::from_classes(&[1, 2], []).is_err());
    let one_colour = MccInstance::new(1, 2, []).unwrap();
    assert!(build_reduction(&one_colour).is_err());
}
