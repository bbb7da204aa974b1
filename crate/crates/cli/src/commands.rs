use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use harmless_core::gadgets::{build_reduction, load_mcc, modulator_set, verify_reduction, MccInstance};
use harmless_core::io::{read_instance_str, save_instance, InstanceDocument};
use harmless_core::kernel::{kernelize, rule_counts, to_plain_kernel, KernelOutcome, KernelReport};
use harmless_core::random::{random_instance, rng};
use harmless_core::solvers::{vc_solve, BruteForce, VcOptions};
use harmless_core::sparsity::{
    best_waterlily, count_profiles, domination_scattered, projection_closure, Waterlily, WaterlilyOutcome,
};
use harmless_core::{Error, Instance, Vertex};
use rand::Rng;
use serde::Serialize;

use crate::report::{render, Report};
use crate::{Cli, Command, FuzzArgs, KernelizeArgs, Method, ReduceArgs, SolveArgs, StatsArgs, VerifyArgs};

pub struct Output {
    pub report: String,
    pub code: u8,
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Solve(a) => solve(cli, a),
        Command::Kernelize(a) => kernel(cli, a),
        Command::ReduceMcc(a) => reduce(cli, a),
        Command::VerifyReduction(a) => verify(cli, a),
        Command::Stats(a) => stats(cli, a),
        Command::Fuzz(a) => fuzz(cli, a),
    }
}

fn emit(cli: &Cli, name: &str, result: impl Serialize, code: u8) -> Result<Output> {
    let report = render(&Report::new(name, cli, result), cli.format)?;
    Ok(Output { report, code })
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_instance(path: &Path, k: Option<usize>) -> Result<Instance> {
    let inst = read_instance_str(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(match k {
        Some(k) => inst.with_k(k),
        None => inst,
    })
}

fn read_mcc(path: &Path) -> Result<MccInstance> {
    load_mcc(read_text(path)?.as_bytes()).with_context(|| format!("parsing {}", path.display()))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    if is_json(path) {
        serde_json::to_writer_pretty(&mut w, &InstanceDocument::from_instance(inst))?;
        writeln!(w)?;
    } else {
        save_instance(inst, &mut w)?;
    }
    w.flush()?;
    Ok(())
}

fn elapsed_ms(start: Instant, on: bool) -> Option<f64> {
    on.then(|| start.elapsed().as_secs_f64() * 1e3)
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Decision {
    Yes,
    No,
    Unknown,
}

#[derive(Serialize)]
struct SolveResult {
    vertices: usize,
    edges: usize,
    k: usize,
    optimum: usize,
    /// 0-based.
    witness: Vec<Vertex>,
    decision: Option<Decision>,
    elapsed_ms: Option<f64>,
}

fn solve(cli: &Cli, a: &SolveArgs) -> Result<Output> {
    let inst = read_instance(&a.input, a.k)?;
    let start = Instant::now();
    let opt = match a.method {
        Method::Brute => BruteForce::with_cap(a.caps.brute_cap).solve(&inst)?,
        Method::Vc => vc_solve(
            &inst,
            VcOptions {
                cover_cap: a.caps.cover_cap,
                workers: a.workers,
            },
        )?,
    };
    let elapsed = elapsed_ms(start, a.timing);
    let yes = opt.size >= inst.k();
    let result = SolveResult {
        vertices: inst.num_vertices(),
        edges: inst.graph().num_edges(),
        k: inst.k(),
        optimum: opt.size,
        witness: opt.witness,
        decision: a.decide.then_some(if yes { Decision::Yes } else { Decision::No }),
        elapsed_ms: elapsed,
    };
    emit(cli, "solve", result, u8::from(a.decide && !yes))
}

#[derive(Serialize)]
struct KernelResult {
    outcome: &'static str,
    decision: Decision,
    /// How the decision was reached.
    decided_by: Option<&'static str>,
    /// Solution found on the way, in input ids.
    certificate: Option<Vec<Vertex>>,
    /// Input ids of the kernel's core vertices.
    kernel_core: Vec<Vertex>,
    rules: std::collections::BTreeMap<&'static str, usize>,
    report: KernelReport,
    output: Option<PathBuf>,
    elapsed_ms: Option<f64>,
}

fn kernel(cli: &Cli, a: &KernelizeArgs) -> Result<Output> {
    let inst = read_instance(&a.input, a.k)?;
    let k = inst.k();
    let start = Instant::now();
    let res = kernelize(&inst, a.p, &a.lily.params())?;
    let elapsed = elapsed_ms(start, a.timing);
    let kernel = res.outcome.kernel();
    if let Some(path) = &a.output {
        write_instance(path, &to_plain_kernel(kernel))?;
    }
    let (decision, decided_by, certificate, kernel_core) = match &res.outcome {
        KernelOutcome::Yes { certificate, .. } => (Decision::Yes, Some("certificate"), Some(certificate.clone()), vec![]),
        KernelOutcome::Reduced { kernel, origin } => {
            let core: Vec<Vertex> = kernel.core().iter().map(|&v| origin[v]).collect();
            let (decision, by) = if core.len() < k {
                (Decision::No, Some("core_smaller_than_k"))
            } else {
                let search = BruteForce {
                    cap: a.brute_cap,
                    goal: Some(k),
                };
                match search.solve_within(kernel.instance(), kernel.core()) {
                    Ok(opt) if opt.size >= k => (Decision::Yes, Some("search_on_kernel")),
                    Ok(_) => (Decision::No, Some("search_on_kernel")),
                    Err(Error::ResourceLimit { .. }) => (Decision::Unknown, None),
                    Err(e) => return Err(e.into()),
                }
            };
            (decision, by, None, core)
        }
    };
    let code = u8::from(matches!(decision, Decision::No));
    let result = KernelResult {
        outcome: match res.outcome {
            KernelOutcome::Yes { .. } => "yes",
            KernelOutcome::Reduced { .. } => "reduced",
        },
        decision,
        decided_by,
        certificate,
        kernel_core,
        rules: rule_counts(&res.report),
        report: res.report,
        output: a.output.clone(),
        elapsed_ms: elapsed,
    };
    emit(cli, "kernelize", result, code)
}

#[derive(Serialize)]
struct RoleRegistry<'a> {
    source: &'a MccInstance,
    target: usize,
    roles: &'a [harmless_core::gadgets::VertexRole],
    layout: &'a harmless_core::gadgets::Layout,
    empty_pairs: &'a [(usize, usize)],
    modulator: Vec<Vertex>,
}

#[derive(Serialize)]
struct ReduceResult {
    k: usize,
    n: usize,
    m: usize,
    target: usize,
    vertices: usize,
    edges: usize,
    modulator_size: usize,
    empty_pairs: Vec<(usize, usize)>,
    instance: PathBuf,
    roles: PathBuf,
}

fn reduce(cli: &Cli, a: &ReduceArgs) -> Result<Output> {
    let mcc = read_mcc(&a.input)?;
    let out = build_reduction(&mcc)?;
    let roles_path = a.roles.clone().unwrap_or_else(|| {
        let mut s = a.output.clone().into_os_string();
        s.push(".roles.json");
        PathBuf::from(s)
    });
    write_instance(&a.output, &out.instance)?;
    let registry = RoleRegistry {
        source: &out.source,
        target: out.target(),
        roles: &out.roles,
        layout: &out.layout,
        empty_pairs: &out.empty_pairs,
        modulator: modulator_set(&out),
    };
    let json = serde_json::to_string_pretty(&registry)? + "\n";
    fs::write(&roles_path, json).with_context(|| format!("writing {}", roles_path.display()))?;
    let result = ReduceResult {
        k: mcc.k(),
        n: mcc.n(),
        m: mcc.num_edges(),
        target: out.target(),
        vertices: out.instance.num_vertices(),
        edges: out.instance.graph().num_edges(),
        modulator_size: registry.modulator.len(),
        empty_pairs: out.empty_pairs.clone(),
        instance: a.output.clone(),
        roles: roles_path,
    };
    emit(cli, "reduce-mcc", result, 0)
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Output> {
    let mcc = read_mcc(&a.input)?;
    let check = verify_reduction(&mcc, a.brute_cap)?;
    #[derive(Serialize)]
    struct VerifyResult {
        passed: bool,
        check: harmless_core::gadgets::ReductionCheck,
    }
    let passed = check.passed();
    let out = emit(cli, "verify-reduction", VerifyResult { passed, check }, 0)?;
    if !passed {
        print!("{}", out.report);
        bail!("reduction check failed");
    }
    Ok(out)
}

#[derive(Serialize)]
struct ProfileCount {
    radius: usize,
    profiles: usize,
    closure_size: usize,
}

#[derive(Serialize)]
struct StatsResult {
    vertices: usize,
    edges: usize,
    max_degree: usize,
    max_threshold: usize,
    k: usize,
    fragile: usize,
    core_size: usize,
    components: usize,
    targets: Vec<Vertex>,
    scattered_in_core: usize,
    profiles: Vec<ProfileCount>,
    waterlily: Option<LilyDump>,
}

#[derive(Serialize)]
struct LilyDump {
    built: bool,
    stage: Option<harmless_core::sparsity::WaterlilyStage>,
    lily: Option<Waterlily>,
    pads: Vec<Vec<Vertex>>,
    attempts: Vec<String>,
}

fn stats(cli: &Cli, a: &StatsArgs) -> Result<Output> {
    let inst = read_instance(&a.input, None)?;
    let g = inst.graph();
    let core = inst.compute_core();
    let dom = domination_scattered(g, &core, 1)?;
    let targets = match &a.targets {
        Some(t) => {
            g.check_vertices(t)?;
            let mut t = t.clone();
            t.sort_unstable();
            t.dedup();
            t
        }
        None => dom.dominating.clone(),
    };
    let profiles = (1..=a.radius)
        .map(|radius| -> Result<ProfileCount> {
            Ok(ProfileCount {
                radius,
                profiles: count_profiles(g, &targets, radius),
                closure_size: projection_closure(g, &targets, radius, a.lily.closure_bound)?.len(),
            })
        })
        .collect::<Result<_>>()?;
    let waterlily = if a.waterlily {
        Some(match best_waterlily(g, &core, a.lily_radius, a.lily_depth, &a.lily.params())? {
            WaterlilyOutcome::Built(lily) => LilyDump {
                built: true,
                stage: None,
                pads: lily.centres.iter().map(|&c| lily.pad(g, c)).collect(),
                lily: Some(lily),
                attempts: vec![],
            },
            WaterlilyOutcome::Failed(f) => LilyDump {
                built: false,
                stage: Some(f.stage),
                pads: vec![],
                lily: f.best,
                attempts: f.report,
            },
        })
    } else {
        None
    };
    let result = StatsResult {
        vertices: inst.num_vertices(),
        edges: g.num_edges(),
        max_degree: g.max_degree(),
        max_threshold: inst.max_threshold(),
        k: inst.k(),
        fragile: g.vertices().filter(|&v| inst.is_fragile(v)).count(),
        core_size: core.len(),
        components: g.components().len(),
        targets,
        scattered_in_core: dom.scattered.len(),
        profiles,
        waterlily,
    };
    emit(cli, "stats", result, 0)
}

#[derive(Serialize)]
struct FuzzResult {
    instances: usize,
    decisions: usize,
    corpus_files: usize,
    mismatches: Vec<String>,
}

/// Per instance: branch and bound against the cover-based solver on one and
/// on the configured number of workers, then the kernel's decision for
/// every k.
fn fuzz(cli: &Cli, a: &FuzzArgs) -> Result<Output> {
    let mut r = rng(a.seed);
    let mut mismatches = Vec::new();
    let mut decisions = 0;
    let mut files = 0;
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let brute = BruteForce::with_cap(a.caps.brute_cap);
    let params = Default::default();
    for i in 0..a.count {
        let n = r.gen_range(1..=a.max_n);
        let p = r.gen_range(0.05..0.7);
        let k = r.gen_range(0..=n);
        let inst = random_instance(&mut r, n, p, n, k);
        if let Some(dir) = &a.out {
            write_instance(&dir.join(format!("fuzz-{:06}.hs", i)), &inst)?;
            files += 1;
        }
        let exact = brute.solve(&inst)?;
        for workers in [Some(1), a.workers] {
            let vc = vc_solve(&inst, VcOptions { cover_cap: a.caps.cover_cap, workers })?;
            if vc.size != exact.size || !inst.is_harmless(&vc.witness)? {
                mismatches.push(format!("instance {i}: cover solver {} vs branch and bound {}", vc.size, exact.size));
            }
        }
        for k in 0..=n {
            let inst = inst.clone().with_k(k);
            let said = match kernelize(&inst, None, &params)?.outcome {
                KernelOutcome::Yes { .. } => true,
                KernelOutcome::Reduced { kernel, .. } => brute.solve(&to_plain_kernel(&kernel))?.size >= k,
            };
            decisions += 1;
            if said != (exact.size >= k) {
                mismatches.push(format!("instance {i}, k={k}: kernel says {said}, optimum {}", exact.size));
            }
        }
    }
    let failed = !mismatches.is_empty();
    let out = emit(
        cli,
        "fuzz",
        FuzzResult {
            instances: a.count,
            decisions,
            corpus_files: files,
            mismatches,
        },
        0,
    )?;
    if failed {
        print!("{}", out.report);
        bail!("fuzzing found mismatches");
    }
    Ok(out)
}
