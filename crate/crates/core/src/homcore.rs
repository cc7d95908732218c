//! Hom-algebras given by structure constants, and their axiom checkers.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace, Vector};
use crate::report::{e_tuples, idx, search, Basis, Check, CheckReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Associative,
    Leibniz,
    Poisson,
}

impl Kind {
    pub fn has_dot(self) -> bool {
        matches!(self, Kind::Associative | Kind::Poisson)
    }

    pub fn has_bracket(self) -> bool {
        matches!(self, Kind::Leibniz | Kind::Poisson)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Associative => "assoc",
            Kind::Leibniz => "leibniz",
            Kind::Poisson => "poisson",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Kind> {
        match s {
            "assoc" => Some(Kind::Associative),
            "leibniz" => Some(Kind::Leibniz),
            "poisson" => Some(Kind::Poisson),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Which of the two multiplications of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Dot,
    Bracket,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Dot => "dot",
            Op::Bracket => "bracket",
        }
    }
}

/// Structure constants of a bilinear product: `μ(e_i, e_j) = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    dim: usize,
    c: Vec<Scalar>,
}

impl StructureTensor {
    pub fn zero(dim: usize) -> Self {
        StructureTensor {
            dim,
            c: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    /// Builds the tensor from the products of basis pairs.
    pub fn from_products(dim: usize, mut product: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut t = StructureTensor::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                assert_eq!(v.dim(), dim, "product of wrong dimension");
                for k in 0..dim {
                    t.set(i, j, k, v[k].clone());
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        self.c[(i * self.dim + j) * self.dim + k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        Vector::new((0..self.dim).map(|k| self.get(i, j, k).clone()).collect())
    }

    /// `μ(x, y)`. Panics on a dimension mismatch; see [`eval_product`].
    pub fn eval(&self, x: &Vector, y: &Vector) -> Vector {
        assert!(x.dim() == self.dim && y.dim() == self.dim, "product dimension mismatch");
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                out.add_scaled(&c, &self.basis_product(i, j));
            }
        }
        out
    }

    /// The tensor of `(x, y) ↦ μ(f x, g y)` pushed through `h`, for square maps of size `dim`.
    pub fn transform(&self, f: &Matrix, g: &Matrix, h: &Matrix) -> StructureTensor {
        StructureTensor::from_products(self.dim, |i, j| h.apply(&self.eval(&f.column(i), &g.column(j))))
    }
}

pub fn eval_product(t: &StructureTensor, x: &Vector, y: &Vector) -> Result<Vector> {
    if x.dim() != t.dim || y.dim() != t.dim {
        return Err(Error::shape(format!(
            "product on a {}-dimensional space applied to vectors of dimensions {} and {}",
            t.dim,
            x.dim(),
            y.dim()
        )));
    }
    Ok(t.eval(x, y))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomAlgebra {
    dim: usize,
    kind: Kind,
    dot: Option<StructureTensor>,
    bracket: Option<StructureTensor>,
    alpha: Matrix,
}

impl HomAlgebra {
    pub fn new(
        kind: Kind,
        dot: Option<StructureTensor>,
        bracket: Option<StructureTensor>,
        alpha: Matrix,
    ) -> Result<Self> {
        if !alpha.is_square() {
            return Err(Error::shape("twist map must be square"));
        }
        let dim = alpha.rows();
        if kind.has_dot() != dot.is_some() || kind.has_bracket() != bracket.is_some() {
            return Err(Error::Kind(format!(
                "a {kind} algebra needs {}",
                match kind {
                    Kind::Associative => "a dot product and no bracket",
                    Kind::Leibniz => "a bracket and no dot product",
                    Kind::Poisson => "both a dot product and a bracket",
                }
            )));
        }
        for t in dot.iter().chain(bracket.iter()) {
            if t.dim() != dim {
                return Err(Error::shape(format!(
                    "{}-dimensional product with a {dim}-dimensional twist",
                    t.dim()
                )));
            }
        }
        Ok(HomAlgebra {
            dim,
            kind,
            dot,
            bracket,
            alpha,
        })
    }

    pub fn associative(dot: StructureTensor, alpha: Matrix) -> Result<Self> {
        HomAlgebra::new(Kind::Associative, Some(dot), None, alpha)
    }

    pub fn leibniz(bracket: StructureTensor, alpha: Matrix) -> Result<Self> {
        HomAlgebra::new(Kind::Leibniz, None, Some(bracket), alpha)
    }

    pub fn poisson(dot: StructureTensor, bracket: StructureTensor, alpha: Matrix) -> Result<Self> {
        HomAlgebra::new(Kind::Poisson, Some(dot), Some(bracket), alpha)
    }

    /// All products zero.
    pub fn zero(kind: Kind, alpha: Matrix) -> Result<Self> {
        let n = alpha.rows();
        let z = || Some(StructureTensor::zero(n));
        HomAlgebra::new(
            kind,
            if kind.has_dot() { z() } else { None },
            if kind.has_bracket() { z() } else { None },
            alpha,
        )
    }

    /// Same kind and twist, products replaced by `f(op, tensor)`.
    pub fn map_tensors(&self, mut f: impl FnMut(Op, &StructureTensor) -> StructureTensor) -> Self {
        HomAlgebra {
            dim: self.dim,
            kind: self.kind,
            dot: self.dot.as_ref().map(|t| f(Op::Dot, t)),
            bracket: self.bracket.as_ref().map(|t| f(Op::Bracket, t)),
            alpha: self.alpha.clone(),
        }
    }

    pub fn with_alpha(&self, alpha: Matrix) -> Result<Self> {
        HomAlgebra::new(self.kind, self.dot.clone(), self.bracket.clone(), alpha)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn dot(&self) -> Option<&StructureTensor> {
        self.dot.as_ref()
    }

    pub fn bracket(&self) -> Option<&StructureTensor> {
        self.bracket.as_ref()
    }

    pub fn tensor(&self, op: Op) -> Option<&StructureTensor> {
        match op {
            Op::Dot => self.dot.as_ref(),
            Op::Bracket => self.bracket.as_ref(),
        }
    }

    /// The present products, dot first.
    pub fn tensors(&self) -> Vec<(Op, &StructureTensor)> {
        let mut out = Vec::new();
        if let Some(t) = &self.dot {
            out.push((Op::Dot, t));
        }
        if let Some(t) = &self.bracket {
            out.push((Op::Bracket, t));
        }
        out
    }

    /// `μ(x, y)` for a product known to be present.
    pub fn mul(&self, op: Op, x: &Vector, y: &Vector) -> Vector {
        self.tensor(op)
            .unwrap_or_else(|| panic!("{} algebra has no {}", self.kind, op.name()))
            .eval(x, y)
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.dim, i)
    }
}

fn check_square(m: &Matrix, n: usize, what: &str) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::shape(format!(
            "{what} is {}x{}, expected {n}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// `α(μ(e_i, e_j)) = μ(α e_i, α e_j)` for each present product.
pub fn check_multiplicative(alg: &HomAlgebra) -> CheckReport {
    let mut report = CheckReport::new();
    for (op, t) in alg.tensors() {
        report.push(multiplicative_check(&format!("multiplicativity({})", op.name()), t, &alg.alpha));
    }
    report
}

fn multiplicative_check(name: &str, t: &StructureTensor, alpha: &Matrix) -> Check {
    let a: Vec<Vector> = (0..t.dim()).map(|i| alpha.column(i)).collect();
    search(name, e_tuples(t.dim(), 2), |b| {
        let (i, j) = (idx(b[0]), idx(b[1]));
        &alpha.apply(&t.basis_product(i, j)) - &t.eval(&a[i], &a[j])
    })
}

/// `μ(μ(x, y), α z) = μ(α x, μ(y, z))` on all basis triples.
pub fn check_hom_associative(t: &StructureTensor, alpha: &Matrix) -> Result<CheckReport> {
    check_square(alpha, t.dim(), "twist")?;
    let n = t.dim();
    let a: Vec<Vector> = (0..n).map(|i| alpha.column(i)).collect();
    let check = search("hom-associativity(dot)", e_tuples(n, 3), |b| {
        let (i, j, k) = (idx(b[0]), idx(b[1]), idx(b[2]));
        let lhs = t.eval(&t.basis_product(i, j), &a[k]);
        let rhs = t.eval(&a[i], &t.basis_product(j, k));
        &lhs - &rhs
    });
    Ok(CheckReport { checks: vec![check] })
}

/// The right Leibniz identity `[[x, y], α z] = [α x, [y, z]] + [[x, z], α y]` on all basis triples.
pub fn check_hom_leibniz(t: &StructureTensor, alpha: &Matrix) -> Result<CheckReport> {
    check_square(alpha, t.dim(), "twist")?;
    let n = t.dim();
    let a: Vec<Vector> = (0..n).map(|i| alpha.column(i)).collect();
    let check = search("hom-leibniz(bracket)", e_tuples(n, 3), |b| {
        let (i, j, k) = (idx(b[0]), idx(b[1]), idx(b[2]));
        let lhs = t.eval(&t.basis_product(i, j), &a[k]);
        let r1 = t.eval(&a[i], &t.basis_product(j, k));
        let r2 = t.eval(&t.basis_product(i, k), &a[j]);
        &(&lhs - &r1) - &r2
    });
    Ok(CheckReport { checks: vec![check] })
}

/// `[x·y, α z] = α x · [y, z] + [x, z] · α y` on all basis triples.
pub fn check_poisson_compat(alg: &HomAlgebra) -> Result<CheckReport> {
    let (Some(dot), Some(br)) = (alg.dot(), alg.bracket()) else {
        return Err(Error::Kind(format!(
            "compatibility needs a poisson algebra, got {}",
            alg.kind
        )));
    };
    let n = alg.dim;
    let a: Vec<Vector> = (0..n).map(|i| alg.alpha.column(i)).collect();
    let check = search("poisson-compatibility", e_tuples(n, 3), |b| {
        let (i, j, k) = (idx(b[0]), idx(b[1]), idx(b[2]));
        let lhs = br.eval(&dot.basis_product(i, j), &a[k]);
        let r1 = dot.eval(&a[i], &br.basis_product(j, k));
        let r2 = dot.eval(&br.basis_product(i, k), &a[j]);
        &(&lhs - &r1) - &r2
    });
    Ok(CheckReport { checks: vec![check] })
}

/// Multiplicativity plus every identity the algebra's kind demands.
pub fn check_algebra(alg: &HomAlgebra) -> CheckReport {
    let mut report = check_multiplicative(alg);
    if let Some(dot) = alg.dot() {
        report.extend(check_hom_associative(dot, &alg.alpha).expect("shape checked at construction"));
    }
    if let Some(br) = alg.bracket() {
        report.extend(check_hom_leibniz(br, &alg.alpha).expect("shape checked at construction"));
    }
    if alg.kind == Kind::Poisson {
        report.extend(check_poisson_compat(alg).expect("kind checked"));
    }
    report
}

/// `f ∘ α_src = α_dst ∘ f` and `f(μ(e_i, e_j)) = μ'(f e_i, f e_j)` for each product.
pub fn check_morphism(f: &Matrix, src: &HomAlgebra, dst: &HomAlgebra) -> Result<CheckReport> {
    if src.kind != dst.kind {
        return Err(Error::Kind(format!("morphism from {} to {}", src.kind, dst.kind)));
    }
    if f.rows() != dst.dim || f.cols() != src.dim {
        return Err(Error::shape(format!(
            "map is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            dst.dim,
            src.dim
        )));
    }
    let mut report = CheckReport::new();
    let comm = &(f * &src.alpha) - &(&dst.alpha * f);
    report.push(search("commutes-with-alpha", e_tuples(src.dim, 1), |b| comm.column(idx(b[0]))));
    let fe: Vec<Vector> = (0..src.dim).map(|i| f.column(i)).collect();
    for (op, t) in src.tensors() {
        let t2 = dst.tensor(op).expect("same kind");
        report.push(search(format!("morphism({})", op.name()), e_tuples(src.dim, 2), |b| {
            let (i, j) = (idx(b[0]), idx(b[1]));
            &f.apply(&t.basis_product(i, j)) - &t2.eval(&fe[i], &fe[j])
        }));
    }
    Ok(report)
}

/// `α(I) ⊆ I`, `μ(I, A) ⊆ I` and `μ(A, I) ⊆ I` for the span `I` of `basis`.
///
/// Witness tuples name ideal generators as `f_p`; residuals are the parts of
/// the offending vector left after reduction against `I`.
pub fn check_ideal(basis: &[Vector], alg: &HomAlgebra) -> Result<CheckReport> {
    let span = Subspace::span(alg.dim, basis)?;
    let m = basis.len();
    let n = alg.dim;
    let gens = || crate::report::tuples(&[(Basis::F as fn(usize) -> Basis, m)]);
    let mut report = CheckReport::new();
    report.push(search("alpha-stable", gens(), |b| span.reduce(&alg.alpha.apply(&basis[idx(b[0])]))));
    for (op, t) in alg.tensors() {
        let name = op.name();
        report.push(search(
            format!("left-absorbing({name})"),
            crate::report::tuples(&[(Basis::F, m), (Basis::E, n)]),
            |b| span.reduce(&t.eval(&basis[idx(b[0])], &alg.basis(idx(b[1])))),
        ));
        report.push(search(
            format!("right-absorbing({name})"),
            crate::report::tuples(&[(Basis::E, n), (Basis::F, m)]),
            |b| span.reduce(&t.eval(&alg.basis(idx(b[0])), &basis[idx(b[1])])),
        ));
    }
    Ok(report)
}

/// Products `μ(β x, β y)` and twist `β ∘ α`, for a self-morphism `β`.
pub fn yau_twist(alg: &HomAlgebra, beta: &Matrix) -> Result<HomAlgebra> {
    let report = check_morphism(beta, alg, alg)?;
    if !report.passed() {
        return Err(Error::precondition("twisting map is not a self-morphism", report));
    }
    Ok(yau_twist_unchecked(alg, beta))
}

pub fn yau_twist_unchecked(alg: &HomAlgebra, beta: &Matrix) -> HomAlgebra {
    let id = Matrix::identity(alg.dim);
    let mut out = alg.map_tensors(|_, t| t.transform(beta, beta, &id));
    out.alpha = beta * &alg.alpha;
    out
}
