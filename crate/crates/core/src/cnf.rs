//! CNF formulas and DIMACS input.

use std::fmt;

use crate::error::{Error, Result};

/// A literal over variable `var` (1-based). `positive == false` is the negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn from_dimacs(x: i64) -> Literal {
        Literal { var: x.unsigned_abs() as usize, positive: x > 0 }
    }

    /// Whether setting the variable to `value` makes this literal true.
    pub fn satisfied_by(self, value: bool) -> bool {
        self.positive == value
    }
}

pub type Clause = Vec<Literal>;

/// Variables `x_1..x_n`, clauses `C_1..C_m` in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    n: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Checks the invariants: variables in `1..=n`, no empty clause, no clause with
    /// both polarities of a variable. Repeated literals inside a clause are merged.
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for (j, mut clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidArgument(format!("clause {} is empty", j + 1)));
            }
            clause.sort();
            clause.dedup();
            for lit in &clause {
                if lit.var == 0 || lit.var > n {
                    return Err(Error::InvalidArgument(format!(
                        "clause {} uses variable {} outside 1..={n}",
                        j + 1,
                        lit.var
                    )));
                }
            }
            if clause.windows(2).any(|w| w[0].var == w[1].var) {
                return Err(Error::InvalidArgument(format!(
                    "clause {} contains a variable in both polarities",
                    j + 1
                )));
            }
            out.push(clause);
        }
        Ok(CnfFormula { n, clauses: out })
    }

    /// Builds from DIMACS-style signed integers, one slice per clause.
    pub fn from_ints(n: usize, clauses: &[&[i64]]) -> Result<Self> {
        Self::new(
            n,
            clauses.iter().map(|c| c.iter().map(|&x| Literal::from_dimacs(x)).collect()).collect(),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// `assignment[i - 1]` is the value of `x_i`.
    pub fn clause_satisfied(&self, j: usize, assignment: &[bool]) -> bool {
        self.clauses[j].iter().any(|l| l.satisfied_by(assignment[l.var - 1]))
    }

    /// Index (0-based) of the first clause `assignment` falsifies.
    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        (0..self.clauses.len()).find(|&j| !self.clause_satisfied(j, assignment))
    }

    /// Exhaustive search over all `2^n` assignments. Only for small `n`.
    pub fn brute_force_satisfiable(&self) -> Option<Vec<bool>> {
        assert!(self.n < 32, "brute force limited to fewer than 32 variables");
        (0u64..1 << self.n)
            .map(|bits| (0..self.n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.first_unsatisfied(a).is_none())
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64;
                out.push_str(&format!("{} ", if l.positive { v } else { -v }));
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> =
                    c.iter().map(|l| format!("{}x{}", if l.positive { "" } else { "¬" }, l.var)).collect();
                format!("({})", lits.join(" ∨ "))
            })
            .collect();
        write!(f, "{}", parts.join(" ∧ "))
    }
}

/// Parses DIMACS CNF. Clauses may span lines and are terminated by `0`;
/// `c` lines are comments and a lone `%` ends the clause list.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        if l == "%" {
            break;
        }
        if l.starts_with('p') {
            if header.is_some() {
                return Err(perr(line, "duplicate problem line".into()));
            }
            let parts: Vec<&str> = l.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| perr(line, format!("malformed problem line `{l}`")))?);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(perr(line, "clause before `p cnf` line".into()));
        };
        for tok in l.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| perr(line, format!("bad literal `{tok}`")))?;
            if x == 0 {
                if current.is_empty() {
                    return Err(perr(line, "empty clause".into()));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if x.unsigned_abs() as usize > n {
                    return Err(perr(line, format!("literal {x} exceeds declared {n} variables")));
                }
                current.push(Literal::from_dimacs(x));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| perr(0, "missing `p cnf` line".into()))?;
    if !current.is_empty() {
        return Err(perr(last_line, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(perr(0, format!("declared {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(n, clauses).map_err(|e| perr(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_files() {
        let f = parse_dimacs("p cnf 1 1\n1 0").unwrap();
        assert_eq!(f, CnfFormula::from_ints(1, &[&[1]]).unwrap());
        let f = parse_dimacs("p cnf 1 2\n1 0\n-1 0").unwrap();
        assert_eq!(f.num_clauses(), 2);
        assert!(f.brute_force_satisfiable().is_none());
        let f = parse_dimacs("c example\np cnf 3 2\n1 -2 0\n2 3 0\n").unwrap();
        assert_eq!((f.num_vars(), f.num_clauses()), (3, 2));
        assert_eq!(f.clauses()[0], vec![Literal { var: 1, positive: true }, Literal { var: 2, positive: false }]);
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = parse_dimacs("p cnf 2 2\n1\n2 0 -1\n0\n%\n").unwrap();
        assert_eq!(f, CnfFormula::from_ints(2, &[&[1, 2], &[-1]]).unwrap());
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "1 0",
            "p cnf x 1\n1 0",
            "p cnf 1 1\n2 0",
            "p cnf 1 1\n1",
            "p cnf 1 2\n1 0",
            "p cnf 1 1\na 0",
            "p cnf 1 1\n0",
            "p cnf 1 1\n1 -1 0",
        ] {
            assert!(parse_dimacs(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let f = CnfFormula::from_ints(3, &[&[1, -2], &[2, 3], &[-3]]).unwrap();
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn brute_force_finds_model() {
        let f = CnfFormula::from_ints(2, &[&[1, 2], &[-1, 2]]).unwrap();
        let a = f.brute_force_satisfiable().unwrap();
        assert!(f.first_unsatisfied(&a).is_none());
        assert_eq!(f.first_unsatisfied(&[true, false]), Some(1));
    }
}
