//! Polynomial constraints on the entries of a relative Rota-Baxter operator, and a
//! solver for systems that reduce by linear elimination and one-variable steps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{int, ratio, write_term, Matrix, Scalar};
use crate::homcore::HomAlgebra;
use crate::homrep::{regular_representation, Action, Representation};
use crate::rbops::{check_relative_rbo, OperatorContext};
use crate::report::CheckReport;

/// A product of variables, stored as a sorted list of indices with repetition.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![v])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Monomial(v)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: usize) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(v), Scalar::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.0.iter().copied()).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, v) in &self.terms {
            p.add_term(m.clone(), v * c);
        }
        p
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, v) in &other.terms {
            p.add_term(m.clone(), v.clone());
        }
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }

    /// Replaces each variable `v` by `values[v]`.
    pub fn compose(&self, values: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for &v in &m.0 {
                t = t.mul(&values[v]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Replaces the single variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        if !self.variables().contains(&var) {
            return self.clone();
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            let mut rest = Vec::new();
            for &v in &m.0 {
                if v == var {
                    t = t.mul(value);
                } else {
                    rest.push(v);
                }
            }
            out = out.add(&t.mul(&Polynomial {
                terms: BTreeMap::from([(Monomial(rest), Scalar::one())]),
            }));
        }
        out
    }

    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in &m.0 {
                t *= &values[v];
            }
            acc += t;
        }
        acc
    }

    /// The same polynomial scaled so its first term has coefficient 1.
    fn monic(&self) -> Polynomial {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Terms in display order: higher degree first, then by variable index.
    fn display_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        t
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { p: self, names }
    }
}

struct PolyDisplay<'a> {
    p: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.p.display_terms().into_iter().enumerate() {
            let body = monomial_text(m, self.names);
            write_term(f, k == 0, c, body.as_deref())?;
        }
        Ok(())
    }
}

fn monomial_text(m: &Monomial, names: &[String]) -> Option<String> {
    if m.0.is_empty() {
        return None;
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < m.0.len() {
        let v = m.0[i];
        let mut e = 1;
        while i + e < m.0.len() && m.0[i + e] == v {
            e += 1;
        }
        parts.push(if e == 1 { names[v].clone() } else { format!("{}^{e}", names[v]) });
        i += e;
    }
    Some(parts.join(" "))
}

/// Polynomial equations `p = 0` in the entries of an unknown `rows x cols` matrix `T`.
///
/// Variable `i * cols + j` is the entry at row `i`, column `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    pub names: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    /// Letter used for the domain basis when printing solutions.
    pub domain_symbol: char,
    pub equations: Vec<Polynomial>,
}

impl PolySystem {
    pub fn var_index(&self, i: usize, j: usize) -> usize {
        i * self.cols + j
    }

    fn with_equations(&self, equations: Vec<Polynomial>) -> PolySystem {
        PolySystem {
            equations,
            ..self.clone()
        }
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            writeln!(f, "{} = 0", eq.display(&self.names))?;
        }
        Ok(())
    }
}

fn entry_names(rows: usize, cols: usize) -> Vec<String> {
    let wide = rows > 9 || cols > 9;
    let mut out = Vec::with_capacity(rows * cols);
    for i in 1..=rows {
        for j in 1..=cols {
            out.push(if wide { format!("a{i}_{j}") } else { format!("a{i}{j}") });
        }
    }
    out
}

/// The equations `Tφ = αT` and `Tu * Tv = T(l(Tu)v + r(Tv)u)` on basis pairs, one per coordinate.
///
/// Identically zero equations are dropped and equal equations (up to scaling) kept once.
pub fn generate_constraints(alg: &HomAlgebra, rep: &Representation) -> Result<PolySystem> {
    if rep.kind() != alg.kind() || rep.base_dim() != alg.dim() {
        return Err(Error::shape("representation does not belong to the algebra"));
    }
    let (n, m) = (alg.dim(), rep.carrier_dim());
    let t = |i: usize, j: usize| Polynomial::var(i * m + j);
    let mut eqs: Vec<Polynomial> = Vec::new();

    for i in 0..n {
        for j in 0..m {
            let mut p = Polynomial::zero();
            for k in 0..m {
                p = p.add(&t(i, k).scale(rep.phi().get(k, j)));
            }
            for k in 0..n {
                p = p.sub(&t(k, j).scale(alg.alpha().get(i, k)));
            }
            eqs.push(p);
        }
    }

    for (op, mu) in alg.tensors() {
        let (l, r) = match op {
            crate::homcore::Op::Dot => (Action::LambdaL, Action::LambdaR),
            crate::homcore::Op::Bracket => (Action::RhoL, Action::RhoR),
        };
        let (l, r) = (rep.action(l).expect("present"), rep.action(r).expect("present"));
        for p in 0..m {
            for q in 0..m {
                for k in 0..n {
                    let mut eq = Polynomial::zero();
                    for a in 0..n {
                        for b in 0..n {
                            let c = mu.get(a, b, k);
                            if !c.is_zero() {
                                eq = eq.add(&t(a, p).mul(&t(b, q)).scale(c));
                            }
                        }
                    }
                    for s in 0..m {
                        for a in 0..n {
                            let lc = l.basis(a).get(s, q);
                            if !lc.is_zero() {
                                eq = eq.sub(&t(k, s).mul(&t(a, p)).scale(lc));
                            }
                            let rc = r.basis(a).get(s, p);
                            if !rc.is_zero() {
                                eq = eq.sub(&t(k, s).mul(&t(a, q)).scale(rc));
                            }
                        }
                    }
                    eqs.push(eq);
                }
            }
        }
    }

    let domain_symbol = if *rep == regular_representation(alg) { 'e' } else { 'f' };
    Ok(PolySystem {
        names: entry_names(n, m),
        rows: n,
        cols: m,
        domain_symbol,
        equations: canonical_equations(eqs),
    })
}

fn canonical_equations(eqs: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in eqs {
        if e.is_zero() {
            continue;
        }
        let key = format!("{:?}", e.monic().terms);
        if seen.insert(key) {
            out.push(e);
        }
    }
    out
}

/// Equations together with the values already assigned to eliminated variables.
#[derive(Clone, Debug)]
struct State {
    equations: Vec<Polynomial>,
    /// `Some(expr)` for an eliminated variable, with `expr` in the remaining ones.
    assigned: Vec<Option<Polynomial>>,
}

impl State {
    fn new(sys: &PolySystem) -> Self {
        State {
            equations: canonical_equations(sys.equations.clone()),
            assigned: vec![None; sys.names.len()],
        }
    }

    /// Sets `var := value`. Returns `false` when a nonzero constant equation appears.
    fn assign(&mut self, var: usize, value: Polynomial) -> bool {
        for a in self.assigned.iter_mut().flatten() {
            *a = a.substitute(var, &value);
        }
        self.assigned[var] = Some(value.clone());
        let eqs = std::mem::take(&mut self.equations);
        self.equations = canonical_equations(eqs.into_iter().map(|e| e.substitute(var, &value)).collect());
        !self.equations.iter().any(|e| e.degree() == 0)
    }

    /// Eliminates degree-1 equations until none remain, pivoting on the highest-index variable.
    fn eliminate_linear(&mut self) -> bool {
        if self.equations.iter().any(|e| e.degree() == 0) {
            return false;
        }
        while let Some(pos) = self.equations.iter().position(|e| e.degree() == 1) {
            let eq = self.equations[pos].clone();
            let pivot = *eq.variables().iter().next_back().expect("degree 1");
            let c = eq.coefficient(&Monomial::var(pivot));
            let mut rest = eq.clone();
            rest.add_term(Monomial::var(pivot), -c.clone());
            if !self.assign(pivot, rest.scale(&(-c.recip()))) {
                return false;
            }
        }
        true
    }

    fn free(&self) -> Vec<usize> {
        (0..self.assigned.len()).filter(|&v| self.assigned[v].is_none()).collect()
    }

    /// Every variable as a polynomial in the free ones.
    fn values(&self) -> Vec<Polynomial> {
        (0..self.assigned.len())
            .map(|v| self.assigned[v].clone().unwrap_or_else(|| Polynomial::var(v)))
            .collect()
    }
}

/// Outcome of [`eliminate_linear`].
#[derive(Clone, Debug, PartialEq)]
pub enum Elimination {
    /// The linear part has no solution.
    Inconsistent,
    Reduced {
        /// The remaining equations, in the free variables only.
        system: PolySystem,
        /// Each variable as an affine expression in the free ones.
        substitution: Vec<Polynomial>,
        free: Vec<usize>,
    },
}

/// Solves the degree-1 equations exactly and substitutes into the rest, repeating
/// until no degree-1 equation remains.
pub fn eliminate_linear(sys: &PolySystem) -> Elimination {
    let mut st = State::new(sys);
    if !st.eliminate_linear() {
        return Elimination::Inconsistent;
    }
    Elimination::Reduced {
        system: sys.with_equations(st.equations.clone()),
        substitution: st.values(),
        free: st.free(),
    }
}

/// An affine set of matrices `particular + Σ_k t_k basis[k]`, one parameter per free entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    pub params: Vec<String>,
    pub particular: Matrix,
    pub basis: Vec<Matrix>,
}

impl Family {
    pub fn instantiate(&self, values: &[Scalar]) -> Matrix {
        assert_eq!(values.len(), self.basis.len(), "one value per parameter");
        let mut out = self.particular.clone();
        for (b, v) in self.basis.iter().zip(values) {
            out = &out + &b.scale(v);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolutionSet {
    /// Every solution, listed.
    Finite(Vec<Matrix>),
    /// A union of affine families, each verified to satisfy every equation identically.
    AffineFamily(Vec<Family>),
    /// Equations the solver could not reduce, returned unsolved.
    Residual(PolySystem),
}

enum Leaf {
    Solved(State),
    Stuck(State),
}

/// Smallest-first rational roots of a univariate polynomial of degree at most 2.
fn rational_roots(p: &Polynomial, v: usize) -> Vec<Scalar> {
    let a = p.coefficient(&Monomial(vec![v, v]));
    let b = p.coefficient(&Monomial::var(v));
    let c = p.constant_term();
    if a.is_zero() {
        return vec![-c / b];
    }
    let disc = &b * &b - int(4) * &a * &c;
    if disc.is_negative() {
        return Vec::new();
    }
    let Some(root) = rational_sqrt(&disc) else {
        return Vec::new();
    };
    let two_a = int(2) * &a;
    let mut r = vec![(-&b - &root) / &two_a, (-&b + &root) / &two_a];
    r.sort();
    r.dedup();
    r
}

fn rational_sqrt(q: &Scalar) -> Option<Scalar> {
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

fn solve_state(mut st: State, out: &mut Vec<Leaf>) {
    loop {
        if !st.eliminate_linear() {
            return;
        }
        if st.equations.is_empty() {
            out.push(Leaf::Solved(st));
            return;
        }
        // c·m = 0 with m a power of one variable forces that variable to zero.
        if let Some(v) = st.equations.iter().find_map(|e| {
            let vars = e.variables();
            (e.terms.len() == 1 && vars.len() == 1).then(|| *vars.iter().next().expect("one"))
        }) {
            if !st.assign(v, Polynomial::zero()) {
                return;
            }
            continue;
        }
        if let Some((e, v)) = st.equations.iter().find_map(|e| {
            let vars = e.variables();
            (vars.len() == 1 && e.degree() <= 2).then(|| (e.clone(), *vars.iter().next().expect("one")))
        }) {
            for r in rational_roots(&e, v) {
                let mut branch = st.clone();
                if branch.assign(v, Polynomial::constant(r)) {
                    solve_state(branch, out);
                }
            }
            return;
        }
        if let Some(vars) = st.equations.iter().find_map(|e| (e.terms.len() == 1).then(|| e.variables())) {
            for v in vars {
                let mut branch = st.clone();
                if branch.assign(v, Polynomial::zero()) {
                    solve_state(branch, out);
                }
            }
            return;
        }
        out.push(Leaf::Stuck(st));
        return;
    }
}

fn family_of(sys: &PolySystem, st: &State) -> Option<Family> {
    let values = st.values();
    if sys.equations.iter().any(|e| !e.compose(&values).is_zero()) {
        return None;
    }
    let free = st.free();
    let entry = |v: usize, f: &dyn Fn(&Polynomial) -> Scalar| f(&values[v]);
    let at = |f: &dyn Fn(&Polynomial) -> Scalar| {
        Matrix::from_fn(sys.rows, sys.cols, |i, j| entry(i * sys.cols + j, f))
    };
    if values.iter().any(|p| p.degree() > 1) {
        return None;
    }
    Some(Family {
        params: free.iter().map(|&v| sys.names[v].clone()).collect(),
        particular: at(&|p| p.constant_term()),
        basis: free
            .iter()
            .map(|&k| at(&|p: &Polynomial| p.coefficient(&Monomial::var(k))))
            .collect(),
    })
}

/// Linear elimination, then repeated one-variable reductions:
/// a single-term equation sets one of its variables to zero (branching when it has
/// several), a one-variable quadratic branches over its rational roots. Anything
/// else is returned as [`SolutionSet::Residual`].
pub fn solve(sys: &PolySystem) -> SolutionSet {
    let mut leaves = Vec::new();
    solve_state(State::new(sys), &mut leaves);
    let mut families: Vec<Family> = Vec::new();
    for leaf in leaves {
        match leaf {
            Leaf::Stuck(st) => return SolutionSet::Residual(sys.with_equations(st.equations)),
            Leaf::Solved(st) => match family_of(sys, &st) {
                Some(f) if !families.contains(&f) => families.push(f),
                Some(_) => {}
                None => return SolutionSet::Residual(sys.with_equations(st.equations)),
            },
        }
    }
    if families.iter().all(|f| f.params.is_empty()) {
        let mut points: Vec<Matrix> = families.into_iter().map(|f| f.particular).collect();
        points.sort_by_key(|m| m.to_string());
        SolutionSet::Finite(points)
    } else {
        SolutionSet::AffineFamily(families)
    }
}

/// The `i`-th value of the parameter sequence `1, -1, 2, -1/2, 3, -1/3, ...`.
pub fn sample_value(i: usize) -> Scalar {
    let k = (i / 2 + 1) as i64;
    if i.is_multiple_of(2) {
        int(k)
    } else {
        ratio(-1, i.div_ceil(2) as i64)
    }
}

/// Checks every point, and `samples` instantiations of every family, with [`check_relative_rbo`].
///
/// In sample `s`, parameter `k` takes [`sample_value`]`(s + k)`.
pub fn verify_solution(alg: &HomAlgebra, rep: &Representation, sol: &SolutionSet, samples: usize) -> Result<CheckReport> {
    let mut candidates: Vec<(String, Matrix)> = Vec::new();
    match sol {
        SolutionSet::Finite(points) => {
            for (i, p) in points.iter().enumerate() {
                candidates.push((format!("point {}", i + 1), p.clone()));
            }
        }
        SolutionSet::AffineFamily(families) => {
            for (fi, f) in families.iter().enumerate() {
                for s in 0..samples {
                    let values: Vec<Scalar> = (0..f.params.len()).map(|k| sample_value(s + k)).collect();
                    let label = f
                        .params
                        .iter()
                        .zip(&values)
                        .map(|(n, v)| format!("{n} = {v}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    candidates.push((format!("family {} at {}", fi + 1, label), f.instantiate(&values)));
                }
            }
        }
        SolutionSet::Residual(_) => {}
    }
    let mut report = CheckReport::new();
    for (label, t) in candidates {
        let ctx = OperatorContext::new(alg.clone(), rep.clone(), t.clone())?;
        let r = check_relative_rbo(&ctx);
        if !r.passed() {
            return Err(Error::Soundness(format!("{label}, T = {t}, is not a relative Rota-Baxter operator")));
        }
        report.extend_prefixed(&label, r);
    }
    Ok(report)
}

/// Solution-set text: `finite: { T = 0 }` or `family: a12 free; T(e2) = a12 e1 + 2 a12 e2`.
pub fn format_solution(sys: &PolySystem, sol: &SolutionSet) -> String {
    match sol {
        SolutionSet::Finite(points) => {
            let items: Vec<String> = points.iter().map(|p| format!("T = {}", format_point(sys, p))).collect();
            if items.is_empty() {
                "finite: { }".to_string()
            } else {
                format!("finite: {{ {} }}", items.join("; "))
            }
        }
        SolutionSet::AffineFamily(families) => families
            .iter()
            .map(|f| format_family(sys, f))
            .collect::<Vec<_>>()
            .join("\n"),
        SolutionSet::Residual(rest) => {
            let mut s = format!("residual: {} unsolved equations", rest.equations.len());
            for e in &rest.equations {
                s.push_str(&format!("\n  {} = 0", e.display(&rest.names)));
            }
            s
        }
    }
}

fn format_point(sys: &PolySystem, p: &Matrix) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let cols: Vec<String> = (0..sys.cols)
        .filter(|&j| !p.column(j).is_zero())
        .map(|j| {
            let mut s = String::new();
            let mut first = true;
            for i in 0..sys.rows {
                let c = p.get(i, j);
                if !c.is_zero() {
                    let b = format!("e{}", i + 1);
                    write_term(&mut s, first, c, Some(&b)).expect("string write");
                    first = false;
                }
            }
            format!("T({}{}) = {s}", sys.domain_symbol, j + 1)
        })
        .collect();
    cols.join(", ")
}

fn format_family(sys: &PolySystem, f: &Family) -> String {
    let mut columns = Vec::new();
    for j in 0..sys.cols {
        let mut s = String::new();
        let mut first = true;
        for i in 0..sys.rows {
            let mut terms: Vec<(Scalar, Option<String>)> = f
                .params
                .iter()
                .zip(&f.basis)
                .filter(|(_, b)| !b.get(i, j).is_zero())
                .map(|(n, b)| (b.get(i, j).clone(), Some(n.clone())))
                .collect();
            let c0 = f.particular.get(i, j);
            if !c0.is_zero() {
                terms.push((c0.clone(), None));
            }
            let basis = format!("e{}", i + 1);
            match terms.len() {
                0 => continue,
                1 => {
                    let (c, name) = &terms[0];
                    let body = match name {
                        Some(n) => format!("{n} {basis}"),
                        None => basis,
                    };
                    write_term(&mut s, first, c, Some(&body)).expect("string write");
                }
                _ => {
                    let mut inner = String::new();
                    for (k, (c, name)) in terms.iter().enumerate() {
                        write_term(&mut inner, k == 0, c, name.as_deref()).expect("string write");
                    }
                    write_term(&mut s, first, &Scalar::one(), Some(&format!("({inner}) {basis}")))
                        .expect("string write");
                }
            }
            first = false;
        }
        if !first {
            columns.push(format!("T({}{}) = {s}", sys.domain_symbol, j + 1));
        }
    }
    let params = if f.params.is_empty() {
        "no parameters".to_string()
    } else {
        format!("{} free", f.params.join(", "))
    };
    if columns.is_empty() {
        format!("family: {params}; T = 0")
    } else {
        format!("family: {params}; {}", columns.join(", "))
    }
}
