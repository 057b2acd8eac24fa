//! Edge-list text format: a header line `n m`, then `m` lines `u v`.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::Graph;
use crate::{Error, Result};

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("{what} `{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            message: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(header, hline)?;
    let mut g = Graph::empty(n);
    let mut count = 0;
    let mut last_line = hline;
    for (lineno, line) in lines {
        let (u, v) = parse_pair(line, lineno)?;
        g.add_edge(u, v).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        count += 1;
        last_line = lineno;
    }
    if count != m {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {m} edges but {count} were given"),
        });
    }
    Ok(g)
}

impl Graph {
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, FamilySpec};

    #[test]
    fn round_trips_a_family_graph() {
        let g = build(&FamilySpec::R { a: 6, b: 10 }).unwrap();
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_edge_list("4 2\n0 1\n\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                message: "second field `x` is not a non-negative integer".into()
            }
        );
        let err = parse_edge_list("3 2\n0 1\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_edge_list("3 3\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_edge_list("# nothing\n").is_err());
    }

    #[test]
    fn accepts_comments() {
        let g = parse_edge_list("# c4\n4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, build(&FamilySpec::Cycle(4)).unwrap());
    }
}
