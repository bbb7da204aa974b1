mod common;

use harmless_core::kernel::{
    kernelize, shrink_core_step, shrink_graph_step, signature, to_plain_kernel, CoreRule,
    CoreShrinkOutcome, KernelAction, KernelOutcome,
};
use harmless_core::random::{random_instance, rng};
use harmless_core::sparsity::WaterlilyParams;
use harmless_core::{AnnotatedInstance, Instance};
use rand::Rng;

fn annotated_optimum(ann: &AnnotatedInstance) -> usize {
    common::exhaustive_optimum(ann.instance(), Some(ann.core()))
}

fn decision(res: &KernelOutcome, k: usize) -> bool {
    match res {
        KernelOutcome::Yes { .. } => true,
        KernelOutcome::Reduced { kernel, .. } => annotated_optimum(kernel) >= k,
    }
}

/// Root 0 with `leaves` pendant vertices; the leaves form one large
/// signature class around the single root.
fn star(leaves: usize, root_t: usize, k: usize) -> Instance {
    let mut t = vec![2; leaves + 1];
    t[0] = root_t;
    Instance::from_parts(leaves + 1, (1..=leaves).map(|l| (0, l)), t, k).unwrap()
}

#[test]
fn decisions_survive_kernelization() {
    let mut r = rng(2024);
    for _ in 0..250 {
        let n = r.gen_range(1..=9);
        let p = r.gen_range(0.1..0.6);
        let base = random_instance(&mut r, n, p, n, 0);
        let opt = common::exhaustive_optimum(&base, None);
        for k in 0..=n {
            let inst = base.clone().with_k(k);
            let res = kernelize(&inst, None, &WaterlilyParams::default()).unwrap();
            assert_eq!(decision(&res.outcome, k), opt >= k, "{inst:?}");
            if let KernelOutcome::Yes { certificate, .. } = &res.outcome {
                assert!(certificate.len() >= k);
                assert!(common::is_harmless(&inst, certificate));
            }
        }
    }
}

#[test]
fn every_core_removal_keeps_the_optimum() {
    let mut r = rng(99);
    let mut removals = 0;
    for _ in 0..300 {
        let n = r.gen_range(2..=9);
        let p = r.gen_range(0.1..0.6);
        let k = r.gen_range(1..=n);
        let inst = random_instance(&mut r, n, p, k + 1, k);
        let mut ann = AnnotatedInstance::new(inst.clone(), (0..n).collect()).unwrap();
        let mut steps = 0;
        while let CoreShrinkOutcome::RemoveVertex { vertex, .. } =
            shrink_core_step(&ann, k + 1, &WaterlilyParams::default()).unwrap()
        {
            let before = annotated_optimum(&ann);
            let size = ann.core().len();
            let core: Vec<_> = ann.core().iter().copied().filter(|&v| v != vertex).collect();
            ann = AnnotatedInstance::new(inst.clone(), core).unwrap();
            assert_eq!(ann.core().len() + 1, size);
            assert_eq!(annotated_optimum(&ann), before);
            removals += 1;
            steps += 1;
            assert!(steps <= n);
        }
    }
    assert!(removals > 0);
}

#[test]
fn exchange_rule_fires_and_is_sound() {
    for leaves in 5..=8 {
        let inst = star(leaves, 3, 3);
        let ann = AnnotatedInstance::new(inst.clone(), inst.compute_core()).unwrap();
        let out = shrink_core_step(&ann, 4, &WaterlilyParams::default()).unwrap();
        let CoreShrinkOutcome::RemoveVertex { vertex, rule: CoreRule::Exchange { roots, class_size } } = out
        else {
            panic!("expected the exchange rule, got {out:?}");
        };
        assert_eq!(roots, vec![0]);
        assert!(class_size > 4);
        let smaller: Vec<_> = ann.core().iter().copied().filter(|&v| v != vertex).collect();
        let after = AnnotatedInstance::new(inst, smaller).unwrap();
        assert_eq!(annotated_optimum(&after), annotated_optimum(&ann));
    }
}

#[test]
fn exchange_respects_centre_thresholds() {
    // Five leaves of threshold 2 and one of threshold 3: the odd one is in a
    // class of its own and must survive.
    let mut inst = star(6, 3, 3);
    let mut t = inst.thresholds().as_slice().to_vec();
    t[6] = 3;
    inst = Instance::from_parts(7, (1..=6).map(|l| (0, l)), t, 3).unwrap();
    let ann = AnnotatedInstance::new(inst, (0..7).collect()).unwrap();
    match shrink_core_step(&ann, 4, &WaterlilyParams::default()).unwrap() {
        CoreShrinkOutcome::RemoveVertex { vertex, rule: CoreRule::Exchange { class_size, .. } } => {
            assert_ne!(vertex, 6);
            assert_eq!(class_size, 5);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn twin_removals_keep_the_optimum() {
    let mut r = rng(5);
    for _ in 0..300 {
        let n = r.gen_range(2..=10);
        let p = r.gen_range(0.1..0.6);
        let inst = random_instance(&mut r, n, p, n, 1);
        let core: Vec<_> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
        let mut ann = AnnotatedInstance::new(inst, core).unwrap();
        let mut rounds = 0;
        loop {
            let before = annotated_optimum(&ann);
            let vertices = ann.instance().num_vertices();
            let Some((v, ids)) = shrink_graph_step(&mut ann) else { break };
            assert!(v < vertices);
            assert_eq!(ids.len() + 1, vertices);
            assert_eq!(ann.instance().num_vertices() + 1, vertices);
            assert_eq!(annotated_optimum(&ann), before);
            rounds += 1;
        }
        assert!(rounds <= n);
    }
}

#[test]
fn report_traces_are_consistent() {
    let mut r = rng(8);
    for _ in 0..100 {
        let n = r.gen_range(1..=10);
        let k = r.gen_range(0..=n);
        let inst = random_instance(&mut r, n, 0.4, n, k);
        let res = kernelize(&inst, None, &WaterlilyParams::default()).unwrap();
        let rep = &res.report;
        assert!(rep.steps.len() <= rep.initial_core + rep.input_vertices);
        let mut core = rep.initial_core;
        let mut verts = rep.input_vertices;
        for step in &rep.steps {
            match step.action {
                KernelAction::RemoveFromCore { .. } => core -= 1,
                KernelAction::DeleteTwin { .. } => verts -= 1,
            }
            assert_eq!((step.core_after, step.vertices_after), (core, verts));
        }
        if let KernelOutcome::Reduced { kernel, origin } = &res.outcome {
            assert_eq!(origin.len(), kernel.instance().num_vertices());
            for (new, &old) in origin.iter().enumerate() {
                assert_eq!(kernel.instance().threshold(new), inst.threshold(old).min(inst.k() + 1));
            }
        }
    }
}

#[test]
fn worked_examples() {
    // Empty core with k >= 1 is a NO kernel.
    let inst = Instance::from_parts(2, [(0, 1)], vec![1, 1], 1).unwrap();
    let res = kernelize(&inst, None, &WaterlilyParams::default()).unwrap();
    match &res.outcome {
        KernelOutcome::Reduced { kernel, .. } => assert!(kernel.core().is_empty()),
        other => panic!("unexpected {other:?}"),
    }
    // k disjoint edges with thresholds 2 are an early YES.
    for k in 1..=4 {
        let inst = Instance::from_parts(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1)), vec![2; 2 * k], k).unwrap();
        let res = kernelize(&inst, None, &WaterlilyParams::default()).unwrap();
        assert!(matches!(res.outcome, KernelOutcome::Yes { .. }));
    }
    // A centre without outside neighbours has an empty signature; two
    // symmetric centres agree.
    let inst = star(4, 3, 2);
    assert!(signature(&inst, &[0], 1).unwrap().is_empty());
    let path = Instance::from_parts(5, [(0, 1), (1, 2), (2, 3), (3, 4)], vec![2, 3, 2, 3, 2], 1).unwrap();
    assert_eq!(signature(&path, &[2], 0).unwrap(), signature(&path, &[2], 4).unwrap());
    let one = signature(&path, &[2], 1).unwrap();
    assert_eq!(one.into_iter().collect::<Vec<_>>(), vec![(2, vec![])]);
    let leaf = signature(&path, &[2], 0).unwrap();
    assert_eq!(leaf.into_iter().collect::<Vec<_>>(), vec![(3, vec![2])]);
}

#[test]
fn plain_kernel_matches_annotated_optimum() {
    let mut r = rng(13);
    for _ in 0..200 {
        let n = r.gen_range(1..=8);
        let inst = random_instance(&mut r, n, 0.35, n, 1);
        let core: Vec<_> = (0..n).filter(|_| r.gen_bool(0.6)).collect();
        let ann = AnnotatedInstance::new(inst, core).unwrap();
        let plain = to_plain_kernel(&ann);
        assert_eq!(plain.num_vertices(), n + 2);
        assert_eq!(common::exhaustive_optimum(&plain, None), annotated_optimum(&ann));
    }
    let inst = Instance::from_parts(3, [(0, 1)], vec![2; 3], 1).unwrap();
    let full = AnnotatedInstance::new(inst, vec![0, 1, 2]).unwrap();
    let plain = to_plain_kernel(&full);
    assert_eq!(plain.graph().neighbors(3), &[4]);
}
