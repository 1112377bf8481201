//! Line-based text dump of a [`SeparationProblem`], for reproducing solver issues.
//!
//! ```text
//! # comment
//! var <initial> <offset>      one line per variable, in index order
//! pair <i> <j>
//! sep <left> <right> <gap>
//! ```

use std::fmt::Write;

use super::SeparationProblem;
use crate::error::SolverError;

pub fn write(problem: &SeparationProblem) -> String {
    let mut out = String::from("# separation problem\n");
    for (z, o) in problem.initial().iter().zip(problem.offsets()) {
        writeln!(out, "var {z} {o}").unwrap();
    }
    for (i, j) in problem.pairs() {
        writeln!(out, "pair {i} {j}").unwrap();
    }
    for c in problem.constraints() {
        writeln!(out, "sep {} {} {}", c.left, c.right, c.gap).unwrap();
    }
    out
}

pub fn parse(text: &str) -> Result<SeparationProblem, SolverError> {
    let mut vars = Vec::new();
    let mut pairs = Vec::new();
    let mut seps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let bad = |reason: &str| SolverError::Parse {
            line,
            reason: reason.to_string(),
        };
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let float = |s: &str| s.parse::<f64>().map_err(|_| bad("expected a number"));
        let index = |s: &str| s.parse::<usize>().map_err(|_| bad("expected an index"));
        match fields.as_slice() {
            ["var", z, o] => vars.push((float(z)?, float(o)?)),
            ["pair", i, j] => pairs.push((index(i)?, index(j)?, line)),
            ["sep", l, r, g] => seps.push((index(l)?, index(r)?, float(g)?, line)),
            _ => return Err(bad("unrecognized record")),
        }
    }
    let (initial, offsets) = vars.into_iter().unzip();
    let mut problem = SeparationProblem::new(initial, offsets)?;
    for (i, j, line) in pairs {
        problem.add_pair(i, j).map_err(|e| SolverError::Parse {
            line,
            reason: e.to_string(),
        })?;
    }
    for (l, r, g, line) in seps {
        problem
            .add_constraint(l, r, g)
            .map_err(|e| SolverError::Parse {
                line,
                reason: e.to_string(),
            })?;
    }
    Ok(problem)
}
