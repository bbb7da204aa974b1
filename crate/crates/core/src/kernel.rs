//! Polynomial kernel for the bounded-threshold problem on sparse graphs.
//!
//! Two phases. Core rules shrink the solution core `K` until it is small or
//! a solution is found outright; graph rules then delete vertices outside
//! `K` that are redundant.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask, Vertex};
use crate::instance::{AnnotatedInstance, Instance};
use crate::sparsity::{best_waterlily, domination_scattered, WaterlilyOutcome, WaterlilyParams};

/// Multiset-free description of how a vertex's outside neighbours see the
/// roots: every pair `(t(u), N(u) ∩ R)` over neighbours `u` of `v` not in `R`.
pub type Signature = BTreeSet<(usize, Vec<Vertex>)>;

pub fn signature(instance: &Instance, roots: &[Vertex], v: Vertex) -> Result<Signature> {
    let g = instance.graph();
    g.check_vertex(v)?;
    g.check_vertices(roots)?;
    let in_roots = mask(g.num_vertices(), roots);
    if in_roots[v] {
        return Err(Error::invalid(format!("vertex {v} is a root")));
    }
    Ok(g.neighbors(v)
        .iter()
        .filter(|&&u| !in_roots[u])
        .map(|&u| {
            let seen = g.neighbors(u).iter().copied().filter(|&w| in_roots[w]).collect();
            (instance.threshold(u), seen)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum CoreRule {
    /// The vertex has a neighbour of threshold one.
    FragileNeighbour,
    /// The vertex is one of more than `p * |roots|` waterlily centres with the
    /// same threshold and signature; any solution using it can swap it for a
    /// sibling whose pad it does not touch.
    Exchange { roots: Vec<Vertex>, class_size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreShrinkOutcome {
    /// A harmless set of size at least `k`, sorted.
    YesCertificate(Vec<Vertex>),
    RemoveVertex { vertex: Vertex, rule: CoreRule },
    Stuck(String),
}

/// One core-shrinking step. `p` must bound every threshold.
pub fn shrink_core_step(
    ann: &AnnotatedInstance,
    p: usize,
    params: &WaterlilyParams,
) -> Result<CoreShrinkOutcome> {
    let inst = ann.instance();
    let g = inst.graph();
    if p < inst.max_threshold() {
        return Err(Error::invalid(format!(
            "p = {p} is below the largest threshold {}",
            inst.max_threshold()
        )));
    }
    if let Some(&x) = ann
        .core()
        .iter()
        .find(|&&x| g.neighbors(x).iter().any(|&u| inst.is_fragile(u)))
    {
        return Ok(CoreShrinkOutcome::RemoveVertex {
            vertex: x,
            rule: CoreRule::FragileNeighbour,
        });
    }

    // Pairwise distance three means no vertex sees two of them, and no core
    // vertex has a fragile neighbour, so the set is harmless.
    let dom = domination_scattered(g, ann.core(), 1)?;
    if dom.scattered.len() >= ann.k() && inst.is_harmless(&dom.scattered)? {
        return Ok(CoreShrinkOutcome::YesCertificate(dom.scattered));
    }
    if ann.core().is_empty() {
        return Ok(CoreShrinkOutcome::Stuck("empty core".into()));
    }

    let lily = match best_waterlily(g, ann.core(), 2, 1, params)? {
        WaterlilyOutcome::Built(w) => w,
        WaterlilyOutcome::Failed(f) => {
            return Ok(CoreShrinkOutcome::Stuck(format!("no waterlily ({:?})", f.stage)));
        }
    };
    // The swapped-in centre must also tolerate the selected roots it sees,
    // so its own threshold is part of the class key.
    let mut by_signature: HashMap<(usize, Signature), Vec<Vertex>> = HashMap::new();
    for &c in &lily.centres {
        let key = (inst.threshold(c), signature(inst, &lily.roots, c)?);
        by_signature.entry(key).or_default().push(c);
    }
    let limit = p * lily.roots.len();
    let largest = by_signature
        .into_values()
        .max_by_key(|class| (class.len(), std::cmp::Reverse(class[0])))
        .expect("a built waterlily has centres");
    if largest.len() > limit {
        let vertex = *largest.iter().max().expect("non-empty");
        return Ok(CoreShrinkOutcome::RemoveVertex {
            vertex,
            rule: CoreRule::Exchange {
                roots: lily.roots,
                class_size: largest.len(),
            },
        });
    }
    Ok(CoreShrinkOutcome::Stuck(format!(
        "largest signature class has {} centres, needs more than {limit}",
        largest.len()
    )))
}

/// Deletes one vertex outside the core whose core neighbourhood equals that
/// of another outside vertex: the one with the larger threshold (ties: the
/// larger id). Returns its id before deletion and the old id of every
/// remaining vertex.
pub fn shrink_graph_step(ann: &mut AnnotatedInstance) -> Option<(Vertex, Vec<Vertex>)> {
    let inst = ann.instance();
    let g = inst.graph();
    let in_core = ann.core_mask();
    let mut first: HashMap<Vec<Vertex>, Vertex> = HashMap::new();
    let mut victim = None;
    for u in g.vertices().filter(|&u| !in_core[u]) {
        let key: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&w| in_core[w]).collect();
        if let Some(&twin) = first.get(&key) {
            victim = Some(if inst.threshold(twin) > inst.threshold(u) { twin } else { u });
            break;
        }
        first.insert(key, u);
    }
    let v = victim?;
    let ids = ann.delete_vertex(v);
    Some((v, ids))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum KernelAction {
    RemoveFromCore { vertex: Vertex, rule: CoreRule },
    DeleteTwin { vertex: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelStep {
    /// Vertex ids refer to the input instance.
    pub action: KernelAction,
    pub vertices_after: usize,
    pub core_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub k: usize,
    /// Threshold bound used by the exchange rule.
    pub p: usize,
    pub input_vertices: usize,
    pub input_edges: usize,
    pub initial_core: usize,
    pub steps: Vec<KernelStep>,
    /// Why the core rules stopped, when they did not find a solution.
    pub stuck: Option<String>,
    pub output_vertices: usize,
    pub output_edges: usize,
    pub output_core: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelOutcome {
    /// The reduced instance and, per vertex, its id in the input.
    Reduced {
        kernel: AnnotatedInstance,
        origin: Vec<Vertex>,
    },
    /// A solution was found. `kernel` is a fixed trivial YES instance.
    Yes {
        certificate: Vec<Vertex>,
        kernel: AnnotatedInstance,
    },
}

impl KernelOutcome {
    pub fn kernel(&self) -> &AnnotatedInstance {
        match self {
            KernelOutcome::Reduced { kernel, .. } | KernelOutcome::Yes { kernel, .. } => kernel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kernelization {
    pub outcome: KernelOutcome,
    pub report: KernelReport,
}

/// `k` isolated vertices of threshold one, all in the core.
pub fn trivial_yes_instance(k: usize) -> AnnotatedInstance {
    let inst = Instance::from_parts(k, [], vec![1; k], k).expect("valid by construction");
    AnnotatedInstance::new(inst, (0..k).collect()).expect("valid by construction")
}

/// Runs the core rules to exhaustion, then the twin rule.
///
/// Without `p`, thresholds are first capped at `k + 1` and `p = k + 1`. A
/// given `p` is raised to the largest threshold if it is smaller.
pub fn kernelize(instance: &Instance, p: Option<usize>, params: &WaterlilyParams) -> Result<Kernelization> {
    let working = match p {
        None => instance.cap_thresholds(),
        Some(_) => instance.clone(),
    };
    let p = p.unwrap_or(instance.k() + 1).max(working.max_threshold());
    let core = working.compute_core();
    let mut report = KernelReport {
        k: instance.k(),
        p,
        input_vertices: instance.num_vertices(),
        input_edges: instance.graph().num_edges(),
        initial_core: core.len(),
        steps: Vec::new(),
        stuck: None,
        output_vertices: 0,
        output_edges: 0,
        output_core: 0,
    };
    let mut ann = AnnotatedInstance::new(working, core)?;
    let mut origin: Vec<Vertex> = (0..instance.num_vertices()).collect();

    loop {
        match shrink_core_step(&ann, p, params)? {
            CoreShrinkOutcome::YesCertificate(set) => {
                let certificate: Vec<Vertex> = set.iter().map(|&v| origin[v]).collect();
                debug_assert!(instance.is_harmless(&certificate).unwrap_or(false));
                let kernel = trivial_yes_instance(instance.k());
                finish(&mut report, &kernel);
                return Ok(Kernelization {
                    outcome: KernelOutcome::Yes { certificate, kernel },
                    report,
                });
            }
            CoreShrinkOutcome::RemoveVertex { vertex, rule } => {
                ann.remove_from_core(vertex);
                report.steps.push(KernelStep {
                    action: KernelAction::RemoveFromCore {
                        vertex: origin[vertex],
                        rule,
                    },
                    vertices_after: ann.instance().num_vertices(),
                    core_after: ann.core().len(),
                });
            }
            CoreShrinkOutcome::Stuck(why) => {
                report.stuck = Some(why);
                break;
            }
        }
    }
    while let Some((v, ids)) = shrink_graph_step(&mut ann) {
        let removed = origin[v];
        origin = ids.iter().map(|&i| origin[i]).collect();
        report.steps.push(KernelStep {
            action: KernelAction::DeleteTwin { vertex: removed },
            vertices_after: ann.instance().num_vertices(),
            core_after: ann.core().len(),
        });
    }
    finish(&mut report, &ann);
    Ok(Kernelization {
        outcome: KernelOutcome::Reduced { kernel: ann, origin },
        report,
    })
}

fn finish(report: &mut KernelReport, kernel: &AnnotatedInstance) {
    report.output_vertices = kernel.instance().num_vertices();
    report.output_edges = kernel.graph().num_edges();
    report.output_core = kernel.core().len();
}

/// Encodes the core constraint with two extra vertices `a`, `b` of threshold
/// one: `a` is adjacent to `b` and to every vertex outside the core, so those
/// vertices can never be selected, and neither can `a` or `b`.
pub fn to_plain_kernel(ann: &AnnotatedInstance) -> Instance {
    let inst = ann.instance();
    let n = inst.num_vertices();
    let (a, b) = (n, n + 1);
    let in_core = ann.core_mask();
    let mut edges: Vec<(Vertex, Vertex)> = inst.graph().edges().collect();
    edges.extend((0..n).filter(|&v| !in_core[v]).map(|v| (v, a)));
    edges.push((a, b));
    let mut thresholds = inst.thresholds().as_slice().to_vec();
    thresholds.extend([1, 1]);
    Instance::from_parts(n + 2, edges, thresholds, inst.k()).expect("valid by construction")
}

/// Counts how often each rule fired.
pub fn rule_counts(report: &KernelReport) -> BTreeMap<&'static str, usize> {
    let mut counts = BTreeMap::new();
    for step in &report.steps {
        let name = match &step.action {
            KernelAction::RemoveFromCore {
                rule: CoreRule::FragileNeighbour,
                ..
            } => "fragile_neighbour",
            KernelAction::RemoveFromCore {
                rule: CoreRule::Exchange { .. },
                ..
            } => "exchange",
            KernelAction::DeleteTwin { .. } => "twin",
        };
        *counts.entry(name).or_insert(0) += 1;
    }
    counts
}
