//! Pass/fail reports with the first failing basis tuple as witness.

use std::fmt;

use crate::exactla::{Matrix, Vector};

/// A basis vector of the algebra (`e`) or of the second space (`f`), zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    E(usize),
    F(usize),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::E(i) => write!(f, "e{}", i + 1),
            Basis::F(i) => write!(f, "f{}", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub tuple: Vec<Basis>,
    /// Left-hand side minus right-hand side of the identity at `tuple`.
    pub residual: Vector,
}

impl Witness {
    pub fn tuple_string(&self) -> String {
        let parts: Vec<String> = self.tuple.iter().map(Basis::to_string).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub identity: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(identity: impl Into<String>) -> Self {
        Check {
            identity: identity.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(identity: impl Into<String>, witness: Option<Witness>) -> Self {
        Check {
            identity: identity.into(),
            pass: false,
            witness,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            return write!(f, "PASS {}", self.identity);
        }
        write!(f, "FAIL {}", self.identity)?;
        if let Some(w) = &self.witness {
            write!(f, " at {}, residual {}", w.tuple_string(), w.residual)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every identity renamed to `prefix: identity`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.identity = format!("{prefix}: {}", c.identity);
            c
        }));
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Evaluates `residual` on each tuple in order and records the first nonzero one.
pub(crate) fn search<I>(identity: impl Into<String>, tuples: I, mut residual: impl FnMut(&[Basis]) -> Vector) -> Check
where
    I: IntoIterator<Item = Vec<Basis>>,
{
    for t in tuples {
        let r = residual(&t);
        if !r.is_zero() {
            return Check::fail(identity, Some(Witness { tuple: t, residual: r }));
        }
    }
    Check::pass(identity)
}

/// Like [`search`], for identities between linear operators on the second space.
///
/// The residual operator for each tuple is probed column by column, so a
/// witness tuple ends with the carrier basis vector `f_k` that exposes it.
pub(crate) fn search_operator<I>(
    identity: impl Into<String>,
    tuples: I,
    mut residual: impl FnMut(&[Basis]) -> Matrix,
) -> Check
where
    I: IntoIterator<Item = Vec<Basis>>,
{
    for t in tuples {
        let m = residual(&t);
        for k in 0..m.cols() {
            let col = m.column(k);
            if !col.is_zero() {
                let mut tuple = t.clone();
                tuple.push(Basis::F(k));
                return Check::fail(identity, Some(Witness { tuple, residual: col }));
            }
        }
    }
    Check::pass(identity)
}

/// Tags a basis index with the space it belongs to.
pub(crate) type Tag = fn(usize) -> Basis;

/// The product of the given `(tag, size)` factors, in lexicographic order.
pub(crate) fn tuples(slots: &[(Tag, usize)]) -> Vec<Vec<Basis>> {
    let mut out = vec![Vec::new()];
    for &(tag, n) in slots {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut t = t.clone();
                t.push(tag(i));
                next.push(t);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn e_tuples(n: usize, arity: usize) -> Vec<Vec<Basis>> {
    tuples(&vec![(Basis::E as fn(usize) -> Basis, n); arity])
}

/// Index of a basis vector regardless of its tag.
pub(crate) fn idx(b: Basis) -> usize {
    match b {
        Basis::E(i) | Basis::F(i) => i,
    }
}
