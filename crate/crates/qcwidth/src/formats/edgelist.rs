//! Plain edge lists.
//!
//! One `u v` pair per line, optionally prefixed with `e` or `a`. Lines
//! starting with `c` or `#` are comments. With a `p <name> <n> <m>` header
//! the vertices are numbered from 1 and there are exactly `n` of them;
//! without one they are numbered from 0 and the largest id sets the count.

use qcwidth_core::layout::Graph;

use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let words: Vec<&str> = raw.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            [c, ..] if c.starts_with('c') || c.starts_with('#') => {}
            ["p", _, n, _] => {
                if declared.is_some() || !edges.is_empty() {
                    return Err(Error::parse(line, "header must come first"));
                }
                declared = Some(n.parse().map_err(|_| Error::parse(line, "bad vertex count"))?);
            }
            [u, v] | ["e" | "a", u, v] => {
                let id = |s: &str| -> Result<usize> {
                    let x: usize = s.parse().map_err(|_| Error::parse(line, format!("bad vertex `{s}`")))?;
                    match declared {
                        Some(n) if x == 0 || x > n => Err(Error::parse(line, format!("vertex {x} out of 1..={n}"))),
                        Some(_) => Ok(x - 1),
                        None => Ok(x),
                    }
                };
                edges.push((id(u)?, id(v)?));
            }
            _ => return Err(Error::parse(line, format!("cannot read `{}`", raw.trim()))),
        }
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(Graph::from_edges(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_based_without_header() {
        let g = parse_edge_list("0 1\n1 2\n# tail\n").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn one_based_with_header() {
        let g = parse_edge_list("p edge 4 2\ne 1 2\ne 3 4\n").unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.multiplicity(2, 3), 1);
        assert!(matches!(parse_edge_list("p edge 2 1\ne 0 1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
