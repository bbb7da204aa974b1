use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An edge between vertex `x` of colour class `i` and vertex `y` of class
/// `j`, with `i < j`. Everything is 0-indexed. Ordered by class pair first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColouredEdge {
    pub i: usize,
    pub j: usize,
    pub x: usize,
    pub y: usize,
}

/// Multicoloured Clique: `k` colour classes of `n` vertices each. Only edges
/// between different classes exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MccInstance {
    k: usize,
    n: usize,
    /// Sorted, no duplicates.
    edges: Vec<ColouredEdge>,
}

impl MccInstance {
    /// Edges may be given in either orientation.
    pub fn new(k: usize, n: usize, edges: impl IntoIterator<Item = ColouredEdge>) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::invalid("need at least one colour class and one vertex per class"));
        }
        let mut list = Vec::new();
        for e in edges {
            if e.i >= k || e.j >= k || e.x >= n || e.y >= n {
                return Err(Error::invalid(format!("edge {e:?} out of range for k={k}, n={n}")));
            }
            if e.i == e.j {
                return Err(Error::invalid(format!("edge {e:?} joins two vertices of one class")));
            }
            list.push(if e.i < e.j {
                e
            } else {
                ColouredEdge {
                    i: e.j,
                    x: e.y,
                    j: e.i,
                    y: e.x,
                }
            });
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self { k, n, edges: list })
    }

    /// Like [`MccInstance::new`] but with explicit class sizes, which must
    /// all be equal.
    pub fn from_classes(sizes: &[usize], edges: impl IntoIterator<Item = ColouredEdge>) -> Result<Self> {
        let Some(&n) = sizes.first() else {
            return Err(Error::invalid("no colour classes"));
        };
        if let Some(i) = sizes.iter().position(|&s| s != n) {
            return Err(Error::invalid(format!(
                "class {i} has {} vertices, class 0 has {n}",
                sizes[i]
            )));
        }
        Self::new(sizes.len(), n, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[ColouredEdge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges between classes `i < j`, sorted by `(x, y)`.
    pub fn pair_edges(&self, i: usize, j: usize) -> &[ColouredEdge] {
        let lo = self.edges.partition_point(|e| (e.i, e.j) < (i, j));
        let hi = self.edges.partition_point(|e| (e.i, e.j) <= (i, j));
        &self.edges[lo..hi]
    }

    pub fn has_edge(&self, i: usize, x: usize, j: usize, y: usize) -> bool {
        let e = if i < j {
            ColouredEdge { i, x, j, y }
        } else {
            ColouredEdge { i: j, x: y, j: i, y: x }
        };
        self.edges.binary_search(&e).is_ok()
    }

    /// Whether choosing vertex `choice[i]` in every class `i` gives a clique.
    pub fn is_clique(&self, choice: &[usize]) -> bool {
        choice.len() == self.k
            && choice.iter().all(|&x| x < self.n)
            && (0..self.k).all(|i| (i + 1..self.k).all(|j| self.has_edge(i, choice[i], j, choice[j])))
    }

    /// Lexicographically first multicoloured clique, by exhaustive search.
    pub fn find_clique(&self) -> Option<Vec<usize>> {
        let mut found = None;
        self.search(&mut Vec::with_capacity(self.k), &mut |c| {
            found = Some(c.to_vec());
            false
        });
        found
    }

    /// Every multicoloured clique, in lexicographic order.
    pub fn all_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.search(&mut Vec::with_capacity(self.k), &mut |c| {
            out.push(c.to_vec());
            true
        });
        out
    }

    /// Depth-first over classes; `visit` returns whether to continue.
    fn search(&self, partial: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let i = partial.len();
        if i == self.k {
            return visit(partial);
        }
        for x in 0..self.n {
            if (0..i).all(|h| self.has_edge(h, partial[h], i, x)) {
                partial.push(x);
                let go_on = self.search(partial, visit);
                partial.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// Reads the text format: `c` comments, a header `p mcc <k> <n>` and edge
/// lines `e <i> <x> <j> <y>`, all 1-indexed. Vertices are implicit; optional
/// `v <colour> <index>` lines are range-checked and otherwise ignored.
pub fn load_mcc(reader: impl BufRead) -> Result<MccInstance> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let mut parts = line.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        let nums: Vec<&str> = parts.collect();
        let parse = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(lineno, format!("expected a non-negative integer, got '{s}'")))
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "second header line"));
                }
                if nums.len() != 3 || nums[0] != "mcc" {
                    return Err(Error::parse(lineno, "expected 'p mcc <k> <n>'"));
                }
                header = Some((parse(nums[1])?, parse(nums[2])?, lineno));
            }
            "v" => {
                let Some((k, n, _)) = header else {
                    return Err(Error::parse(lineno, "vertex before header"));
                };
                if nums.len() != 2 {
                    return Err(Error::parse(lineno, "expected 'v <colour> <index>'"));
                }
                let (c, x) = (parse(nums[0])?, parse(nums[1])?);
                if !(1..=k).contains(&c) || !(1..=n).contains(&x) {
                    return Err(Error::parse(lineno, format!("vertex ({c}, {x}) out of range")));
                }
            }
            "e" => {
                let Some((k, n, _)) = header else {
                    return Err(Error::parse(lineno, "edge before header"));
                };
                if nums.len() != 4 {
                    return Err(Error::parse(lineno, "expected 'e <i> <x> <j> <y>'"));
                }
                let v: Vec<usize> = nums.iter().map(|s| parse(s)).collect::<Result<_>>()?;
                let (i, x, j, y) = (v[0], v[1], v[2], v[3]);
                if !(1..=k).contains(&i) || !(1..=k).contains(&j) {
                    return Err(Error::parse(lineno, format!("colour out of range 1..={k}")));
                }
                if !(1..=n).contains(&x) || !(1..=n).contains(&y) {
                    return Err(Error::parse(lineno, format!("vertex index out of range 1..={n}")));
                }
                if i == j {
                    return Err(Error::parse(lineno, "edge inside one colour class"));
                }
                edges.push((
                    lineno,
                    ColouredEdge {
                        i: i - 1,
                        x: x - 1,
                        j: j - 1,
                        y: y - 1,
                    },
                ));
            }
            other => return Err(Error::parse(lineno, format!("unknown line type '{other}'"))),
        }
    }
    let Some((k, n, hline)) = header else {
        return Err(Error::parse(1, "missing 'p mcc' header"));
    };
    let mut seen = std::collections::HashSet::new();
    for (lineno, e) in &edges {
        let norm = if e.i < e.j { *e } else { ColouredEdge { i: e.j, x: e.y, j: e.i, y: e.x } };
        if !seen.insert(norm) {
            return Err(Error::parse(*lineno, "duplicate edge"));
        }
    }
    MccInstance::new(k, n, edges.into_iter().map(|(_, e)| e))
        .map_err(|e| Error::parse(hline, e.to_string()))
}

pub fn save_mcc(mcc: &MccInstance, mut w: impl Write) -> Result<()> {
    writeln!(w, "p mcc {} {}", mcc.k, mcc.n)?;
    for e in &mcc.edges {
        writeln!(w, "e {} {} {} {}", e.i + 1, e.x + 1, e.j + 1, e.y + 1)?;
    }
    Ok(())
}
