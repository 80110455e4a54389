//! Text formats for graphs and labellings.
//!
//! Edge list: a header line `n m`, then `m` lines `u v`. Labelling: one line
//! `u v label` per edge, where the label is an integer, a decimal, or `p/q`.
//! In both formats tokens are whitespace-separated, blank lines are skipped,
//! and a line whose first non-blank character is `#` is a comment.

use std::collections::HashSet;
use std::fmt::Write as _;

use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labelling::Labelling;
use crate::rational::{compact_string, parse_rational};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t))
        }
    })
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} {token:?}"),
    })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header line \"n m\"".into(),
    })?;
    let mut tokens = header.split_whitespace();
    let (n_tok, m_tok) = (tokens.next(), tokens.next());
    let (n_tok, m_tok) = match (n_tok, m_tok, tokens.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header must be \"n m\", got {header:?}"),
            })
        }
    };
    let n = parse_usize(hline, n_tok, "vertex count")?;
    let m = parse_usize(hline, m_tok, "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("unexpected extra line after {m} edges"),
            });
        }
        let mut tokens = line.split_whitespace();
        let (u, v) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (
                parse_usize(lineno, a, "vertex id")?,
                parse_usize(lineno, b, "vertex id")?,
            ),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("edge line must be \"u v\", got {line:?}"),
                })
            }
        };
        if u == v {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexRange { vertex: w, n });
            }
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::validation(format!(
                "line {lineno}: duplicate edge {u} {v}"
            )));
        }
        edges.push(key);
    }
    if edges.len() != m {
        return Err(Error::validation(format!(
            "header promised {m} edges but the document has {}",
            edges.len()
        )));
    }
    Graph::new(n, edges)
}

/// Canonical edge-list document: `parse_graph(write_graph(g)) == g`.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parse a labelling document against its graph. Every edge of the graph
/// must be labelled exactly once.
pub fn parse_labelling(text: &str, g: &Graph) -> Result<Labelling> {
    let mut labels: Vec<Option<BigRational>> = vec![None; g.m()];
    for (lineno, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let (u, v, lab) = match (tokens.next(), tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), Some(l), None) => (
                parse_usize(lineno, a, "vertex id")?,
                parse_usize(lineno, b, "vertex id")?,
                l,
            ),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("labelling line must be \"u v label\", got {line:?}"),
                })
            }
        };
        for w in [u, v] {
            if w >= g.n() {
                return Err(Error::VertexRange {
                    vertex: w,
                    n: g.n(),
                });
            }
        }
        let e = g.edge_id(u, v).ok_or_else(|| {
            Error::validation(format!(
                "line {lineno}: {u} {v} is not an edge of the graph"
            ))
        })?;
        if labels[e].is_some() {
            return Err(Error::validation(format!(
                "line {lineno}: edge {u} {v} labelled twice"
            )));
        }
        let value = parse_rational(lab).map_err(|e| Error::Parse {
            line: lineno,
            msg: e.to_string(),
        })?;
        labels[e] = Some(value);
    }
    let missing = labels.iter().filter(|l| l.is_none()).count();
    if missing > 0 {
        return Err(Error::validation(format!(
            "labelling is missing {missing} of {} edges",
            g.m()
        )));
    }
    Labelling::new(g, labels.into_iter().map(|l| l.unwrap()).collect())
}

pub fn write_labelling(g: &Graph, phi: &Labelling) -> String {
    let mut out = String::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "{u} {v} {}", compact_string(phi.label(e)));
    }
    out
}
