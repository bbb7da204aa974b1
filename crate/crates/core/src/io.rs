//! Reading and writing instances.
//!
//! The line format uses 1-based vertex ids:
//!
//! ```text
//! c any comment
//! p hs <n> <m>
//! e <u> <v>          (m lines)
//! t <v> <threshold>  (n lines)
//! k <k>              (optional, defaults to 0)
//! ```
//!
//! The structured format is a JSON object with 0-based ids
//! (`n`, `edges`, `thresholds`, `k`, optional `roles`).

use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadgets::VertexRole;
use crate::graph::{Graph, Vertex};
use crate::instance::{Instance, Thresholds};

pub fn load_instance(reader: impl BufRead) -> Result<Instance> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut seen_edges = HashSet::new();
    let mut thresholds: Vec<Option<usize>> = Vec::new();
    let mut k: Option<usize> = None;
    let mut last_line = 0;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let mut tok = line.split_whitespace();
        let Some(kind) = tok.next() else { continue };
        let args: Vec<&str> = tok.collect();
        let num = |i: usize| -> Result<usize> {
            let s = args
                .get(i)
                .ok_or_else(|| Error::parse(lineno, format!("missing field {} in '{kind}' line", i + 1)))?;
            s.parse()
                .map_err(|_| Error::parse(lineno, format!("'{s}' is not a non-negative integer")))
        };
        let arity = |want: usize| -> Result<()> {
            if args.len() == want {
                Ok(())
            } else {
                Err(Error::parse(
                    lineno,
                    format!("'{kind}' line takes {want} fields, found {}", args.len()),
                ))
            }
        };
        match kind {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate problem line"));
                }
                if args.first() != Some(&"hs") {
                    return Err(Error::parse(lineno, "expected 'p hs <n> <m>'"));
                }
                arity(3)?;
                let (n, m) = (num(1)?, num(2)?);
                thresholds = vec![None; n];
                header = Some((n, m, lineno));
            }
            "e" | "t" | "k" if header.is_none() => {
                return Err(Error::parse(lineno, format!("'{kind}' line before problem line")));
            }
            "e" => {
                arity(2)?;
                let n = thresholds.len();
                let (u, v) = (vertex_id(num(0)?, n, lineno)?, vertex_id(num(1)?, n, lineno)?);
                if u == v {
                    return Err(Error::parse(lineno, "self-loop"));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(lineno, "duplicate edge"));
                }
                edges.push((u, v));
            }
            "t" => {
                arity(2)?;
                let v = vertex_id(num(0)?, thresholds.len(), lineno)?;
                let t = num(1)?;
                if t < 1 {
                    return Err(Error::parse(lineno, "threshold must be at least 1"));
                }
                if thresholds[v].replace(t).is_some() {
                    return Err(Error::parse(lineno, "duplicate threshold line"));
                }
            }
            "k" => {
                arity(1)?;
                if k.replace(num(0)?).is_some() {
                    return Err(Error::parse(lineno, "duplicate 'k' line"));
                }
            }
            other => return Err(Error::parse(lineno, format!("unknown line type '{other}'"))),
        }
    }

    let (n, m, header_line) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing problem line"))?;
    if edges.len() != m {
        return Err(Error::parse(
            header_line,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    let thresholds = thresholds
        .into_iter()
        .enumerate()
        .map(|(v, t)| t.ok_or_else(|| Error::parse(last_line, format!("missing threshold for vertex {}", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(Graph::from_edges(n, edges)?, Thresholds::new(thresholds)?, k.unwrap_or(0))
}

fn vertex_id(one_based: usize, n: usize, lineno: usize) -> Result<Vertex> {
    if one_based == 0 || one_based > n {
        Err(Error::parse(lineno, format!("vertex {one_based} out of range 1..={n}")))
    } else {
        Ok(one_based - 1)
    }
}

pub fn save_instance(instance: &Instance, mut w: impl Write) -> Result<()> {
    let g = instance.graph();
    writeln!(w, "p hs {} {}", g.num_vertices(), g.num_edges())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    for v in g.vertices() {
        writeln!(w, "t {} {}", v + 1, instance.threshold(v))?;
    }
    writeln!(w, "k {}", instance.k())?;
    Ok(())
}

pub fn instance_to_string(instance: &Instance) -> String {
    let mut buf = Vec::new();
    save_instance(instance, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Structured form of an instance, optionally annotated with the gadget
/// role of every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    pub thresholds: Vec<usize>,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roles: Option<Vec<VertexRole>>,
}

impl InstanceDocument {
    pub fn from_instance(instance: &Instance) -> Self {
        Self {
            n: instance.num_vertices(),
            edges: instance.graph().edges().map(|(u, v)| [u, v]).collect(),
            thresholds: instance.thresholds().as_slice().to_vec(),
            k: instance.k(),
            roles: None,
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if let Some(roles) = &self.roles {
            if roles.len() != self.n {
                return Err(Error::invalid(format!("{} roles for {} vertices", roles.len(), self.n)));
            }
        }
        Instance::from_parts(
            self.n,
            self.edges.iter().map(|&[u, v]| (u, v)),
            self.thresholds.clone(),
            self.k,
        )
    }
}

/// Reads either format, deciding by the first non-blank character.
pub fn read_instance_str(text: &str) -> Result<Instance> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<InstanceDocument>(text)?.to_instance()
    } else {
        load_instance(text.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "c triangle\np hs 3 3\ne 1 2\ne 2 3\ne 1 3\nt 1 2\nt 2 2\nt 3 2\nk 1\n";

    #[test]
    fn parses_triangle() {
        let inst = load_instance(TRIANGLE.as_bytes()).unwrap();
        assert_eq!(inst.num_vertices(), 3);
        assert_eq!(inst.graph().num_edges(), 3);
        assert_eq!(inst.thresholds().as_slice(), &[2, 2, 2]);
        assert_eq!(inst.k(), 1);
    }

    #[test]
    fn round_trip_text() {
        let inst = load_instance(TRIANGLE.as_bytes()).unwrap();
        let text = instance_to_string(&inst);
        assert_eq!(load_instance(text.as_bytes()).unwrap(), inst);
        assert_eq!(text, instance_to_string(&load_instance(text.as_bytes()).unwrap()));
    }

    fn parse_err_line(text: &str) -> usize {
        match load_instance(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_threshold_is_an_error() {
        parse_err_line("p hs 2 1\ne 1 2\nt 1 1\n");
    }

    #[test]
    fn malformed_lines_report_their_number() {
        assert_eq!(parse_err_line("p hs 2 1\ne 1 3\nt 1 1\nt 2 1\n"), 2);
        assert_eq!(parse_err_line("p hs 2 0\nt 1 0\nt 2 1\n"), 2);
        assert_eq!(parse_err_line("p hs 2 0\nt 1 1\nt 2 x\n"), 3);
        assert_eq!(parse_err_line("p hs 2 1\ne 1 1\n"), 2);
        assert_eq!(parse_err_line("e 1 2\n"), 1);
        assert_eq!(parse_err_line("p hs 2 2\ne 1 2\ne 2 1\n"), 3);
        assert_eq!(parse_err_line("p hs 2 0\nq 1\n"), 2);
    }

    #[test]
    fn edge_count_must_match_header() {
        assert_eq!(parse_err_line("p hs 2 1\nt 1 1\nt 2 1\n"), 1);
    }

    #[test]
    fn k_defaults_to_zero() {
        let inst = load_instance("p hs 1 0\nt 1 3\n".as_bytes()).unwrap();
        assert_eq!(inst.k(), 0);
    }

    #[test]
    fn json_document_round_trip() {
        let inst = load_instance(TRIANGLE.as_bytes()).unwrap();
        let json = serde_json::to_string(&InstanceDocument::from_instance(&inst)).unwrap();
        assert_eq!(read_instance_str(&json).unwrap(), inst);
        assert_eq!(read_instance_str(TRIANGLE).unwrap(), inst);
    }
}
