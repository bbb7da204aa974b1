use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::Instance;

use super::mcc::{ColouredEdge, MccInstance};

/// What a vertex of the reduced instance stands for. Colours and indices are
/// 0-based; `index` is the position inside a gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "role")]
pub enum VertexRole {
    SelectionLight { colour: usize, index: usize },
    SelectionDark { colour: usize, index: usize },
    SelectionXor { colour: usize, index: usize },
    PortPlus { i: usize, j: usize, colour: usize },
    PortMinus { i: usize, j: usize, colour: usize },
    TestLight { edge: ColouredEdge, index: usize },
    TestDark { edge: ColouredEdge },
    TestXor { edge: ColouredEdge, index: usize },
    Apex { i: usize, j: usize },
    ForbiddenA,
    ForbiddenB,
    /// Isolated vertex of the stand-in NO instance.
    Filler { index: usize },
}

impl VertexRole {
    /// Roles that no harmless set can contain.
    pub fn is_forbidden(&self) -> bool {
        !matches!(
            self,
            VertexRole::SelectionLight { .. }
                | VertexRole::SelectionDark { .. }
                | VertexRole::TestLight { .. }
                | VertexRole::TestDark { .. }
                | VertexRole::Filler { .. }
        )
    }
}

/// Where each gadget sits in the vertex numbering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub n: usize,
    /// First vertex of each selection gadget: `n` lights, `n` darks, `n` xors.
    pub selection: Vec<Vertex>,
    pub pairs: Vec<PairLayout>,
    pub forbidden_a: Vertex,
    pub forbidden_b: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLayout {
    pub i: usize,
    pub j: usize,
    /// `p+_i, p-_i, p+_j, p-_j` in this order.
    pub ports: [Vertex; 4],
    /// One test gadget per edge of the pair: `n` lights, one dark, `n` xors.
    pub tests: Vec<(ColouredEdge, Vertex)>,
    pub apex: Vertex,
}

impl Layout {
    pub fn selection_light(&self, colour: usize, index: usize) -> Vertex {
        self.selection[colour] + index
    }

    pub fn selection_dark(&self, colour: usize, index: usize) -> Vertex {
        self.selection[colour] + self.n + index
    }

    pub fn selection_xor(&self, colour: usize, index: usize) -> Vertex {
        self.selection[colour] + 2 * self.n + index
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<&PairLayout> {
        self.pairs.iter().find(|p| (p.i, p.j) == (i, j))
    }
}

impl PairLayout {
    pub fn test_light(base: Vertex, index: usize) -> Vertex {
        base + index
    }

    pub fn test_dark(base: Vertex, n: usize) -> Vertex {
        base + n
    }

    pub fn test_xor(base: Vertex, n: usize, index: usize) -> Vertex {
        base + n + 1 + index
    }
}

/// The reduced instance with everything needed to interpret it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutput {
    pub source: MccInstance,
    /// Its `k` is the target size.
    pub instance: Instance,
    pub roles: Vec<VertexRole>,
    pub layout: Layout,
    /// Class pairs with no edge between them. Such inputs have no clique,
    /// and `instance` is then a fixed NO instance instead of the gadget
    /// construction: `target - 1` isolated vertices next to the port, apex
    /// and forbidden-pair vertices, which no harmless set can use.
    pub empty_pairs: Vec<(usize, usize)>,
}

impl ReductionOutput {
    pub fn target(&self) -> usize {
        self.instance.k()
    }
}

/// `C(k,2)(n-1) + kn + m`.
pub fn reduction_target_size(k: usize, n: usize, m: usize) -> Result<usize> {
    if k < 2 || n == 0 {
        return Err(Error::invalid(format!("need k >= 2 and n >= 1, got k={k}, n={n}")));
    }
    Ok(k * (k - 1) / 2 * (n - 1) + k * n + m)
}

/// Builds the harmless-set instance equivalent to `mcc` having a
/// multicoloured clique. It has a modulator of `5 C(k,2) + 1` vertices whose
/// removal leaves paths of length at most two plus isolated vertices.
pub fn build_reduction(mcc: &MccInstance) -> Result<ReductionOutput> {
    let (k, n) = (mcc.k(), mcc.n());
    let target = reduction_target_size(k, n, mcc.num_edges())?;
    let empty_pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| mcc.pair_edges(i, j).is_empty())
        .collect();
    if !empty_pairs.is_empty() {
        return trivial_no(mcc, target, empty_pairs);
    }

    let mut roles = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut selection = Vec::with_capacity(k);
    for colour in 0..k {
        let base = roles.len();
        selection.push(base);
        roles.extend((0..n).map(|index| VertexRole::SelectionLight { colour, index }));
        roles.extend((0..n).map(|index| VertexRole::SelectionDark { colour, index }));
        roles.extend((0..n).map(|index| VertexRole::SelectionXor { colour, index }));
        for s in 0..n {
            let xor = base + 2 * n + s;
            edges.push((base + s, xor));
            edges.push((base + n + s, xor));
        }
    }

    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let pb = roles.len();
            let ports = [pb, pb + 1, pb + 2, pb + 3];
            roles.push(VertexRole::PortPlus { i, j, colour: i });
            roles.push(VertexRole::PortMinus { i, j, colour: i });
            roles.push(VertexRole::PortPlus { i, j, colour: j });
            roles.push(VertexRole::PortMinus { i, j, colour: j });
            for (side, colour) in [(0, i), (1, j)] {
                let sel = selection[colour];
                for s in 0..n {
                    edges.push((ports[2 * side], sel + s));
                    edges.push((ports[2 * side + 1], sel + n + s));
                }
            }

            let pair_edges = mcc.pair_edges(i, j);
            let mut tests = Vec::with_capacity(pair_edges.len());
            for &edge in pair_edges {
                let base = roles.len();
                tests.push((edge, base));
                roles.extend((0..n).map(|index| VertexRole::TestLight { edge, index }));
                roles.push(VertexRole::TestDark { edge });
                roles.extend((0..n).map(|index| VertexRole::TestXor { edge, index }));
                let dark = PairLayout::test_dark(base, n);
                for s in 0..n {
                    let xor = PairLayout::test_xor(base, n, s);
                    edges.push((PairLayout::test_light(base, s), xor));
                    edges.push((dark, xor));
                }
                // With 1-based choice x, the first n - x lights go to the
                // plus port and the last x to the minus port.
                for (side, chosen) in [(0, edge.x), (1, edge.y)] {
                    let split = n - (chosen + 1);
                    for s in 0..n {
                        let port = if s < split { ports[2 * side] } else { ports[2 * side + 1] };
                        edges.push((port, PairLayout::test_light(base, s)));
                    }
                }
            }
            let apex = roles.len();
            roles.push(VertexRole::Apex { i, j });
            for &(_, base) in &tests {
                edges.extend((0..n).map(|s| (apex, PairLayout::test_light(base, s))));
            }
            pairs.push(PairLayout {
                i,
                j,
                ports,
                tests,
                apex,
            });
        }
    }

    let forbidden_a = roles.len();
    let forbidden_b = forbidden_a + 1;
    roles.push(VertexRole::ForbiddenA);
    roles.push(VertexRole::ForbiddenB);
    for (v, role) in roles[..forbidden_a].iter().enumerate() {
        if role.is_forbidden() {
            edges.push((forbidden_a, v));
        }
    }
    edges.push((forbidden_a, forbidden_b));

    let total = roles.len();
    let mut degree = vec![0usize; total];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let thresholds = roles
        .iter()
        .zip(&degree)
        .map(|(role, &d)| match role {
            VertexRole::SelectionXor { .. } | VertexRole::TestXor { .. } => 2,
            VertexRole::PortPlus { .. } | VertexRole::PortMinus { .. } | VertexRole::Apex { .. } => n + 1,
            VertexRole::ForbiddenA | VertexRole::ForbiddenB => 1,
            // Never binding.
            _ => d + 1,
        })
        .collect();
    let instance = Instance::from_parts(total, edges, thresholds, target)?;
    Ok(ReductionOutput {
        source: mcc.clone(),
        instance,
        roles,
        layout: Layout {
            n,
            selection,
            pairs,
            forbidden_a,
            forbidden_b,
        },
        empty_pairs,
    })
}

fn trivial_no(mcc: &MccInstance, target: usize, empty_pairs: Vec<(usize, usize)>) -> Result<ReductionOutput> {
    let (k, n) = (mcc.k(), mcc.n());
    let mut roles: Vec<VertexRole> = (0..target - 1).map(|index| VertexRole::Filler { index }).collect();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let pb = roles.len();
            roles.push(VertexRole::PortPlus { i, j, colour: i });
            roles.push(VertexRole::PortMinus { i, j, colour: i });
            roles.push(VertexRole::PortPlus { i, j, colour: j });
            roles.push(VertexRole::PortMinus { i, j, colour: j });
            roles.push(VertexRole::Apex { i, j });
            pairs.push(PairLayout {
                i,
                j,
                ports: [pb, pb + 1, pb + 2, pb + 3],
                tests: Vec::new(),
                apex: pb + 4,
            });
        }
    }
    let forbidden_a = roles.len();
    let forbidden_b = forbidden_a + 1;
    roles.push(VertexRole::ForbiddenA);
    roles.push(VertexRole::ForbiddenB);
    let mut edges: Vec<(Vertex, Vertex)> = (target - 1..forbidden_a).map(|v| (v, forbidden_a)).collect();
    edges.push((forbidden_a, forbidden_b));
    let thresholds = roles
        .iter()
        .map(|role| match role {
            VertexRole::Filler { .. } | VertexRole::ForbiddenA | VertexRole::ForbiddenB => 1,
            _ => n + 1,
        })
        .collect();
    Ok(ReductionOutput {
        source: mcc.clone(),
        instance: Instance::from_parts(roles.len(), edges, thresholds, target)?,
        roles,
        layout: Layout {
            n,
            selection: Vec::new(),
            pairs,
            forbidden_a,
            forbidden_b,
        },
        empty_pairs,
    })
}

/// The harmless set of size exactly the target that encodes the clique
/// `choice` (vertex `choice[i]` in class `i`, 0-based). Sorted.
pub fn construct_clique_solution(out: &ReductionOutput, choice: &[usize]) -> Result<Vec<Vertex>> {
    if !out.source.is_clique(choice) {
        return Err(Error::invalid(format!("{choice:?} is not a multicoloured clique")));
    }
    let lay = &out.layout;
    let n = lay.n;
    let mut set = Vec::with_capacity(out.target());
    for (colour, &x) in choice.iter().enumerate() {
        set.extend((0..=x).map(|s| lay.selection_light(colour, s)));
        set.extend((x + 1..n).map(|s| lay.selection_dark(colour, s)));
    }
    for pair in &lay.pairs {
        for &(edge, base) in &pair.tests {
            if edge.x == choice[pair.i] && edge.y == choice[pair.j] {
                set.extend((0..n).map(|s| PairLayout::test_light(base, s)));
            } else {
                set.push(PairLayout::test_dark(base, n));
            }
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// Ports, apexes and the first forbidden-pair vertex. Sorted.
pub fn modulator_set(out: &ReductionOutput) -> Vec<Vertex> {
    let mut set: Vec<Vertex> = out
        .layout
        .pairs
        .iter()
        .flat_map(|p| p.ports.iter().copied().chain([p.apex]))
        .collect();
    set.push(out.layout.forbidden_a);
    set.sort_unstable();
    set
}
