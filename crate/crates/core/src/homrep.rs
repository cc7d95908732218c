//! Representations of Hom-algebras, their axiom checker, and the standard constructions.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace, Vector};
use crate::homcore::{check_ideal, check_morphism, HomAlgebra, Kind, Op, StructureTensor};
use crate::report::{e_tuples, idx, search_operator, CheckReport};

/// A linear map `A -> gl(V)`, stored as one matrix per basis vector of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionTensor {
    base_dim: usize,
    carrier_dim: usize,
    mats: Vec<Matrix>,
}

impl ActionTensor {
    pub fn zero(base_dim: usize, carrier_dim: usize) -> Self {
        ActionTensor {
            base_dim,
            carrier_dim,
            mats: vec![Matrix::zeros(carrier_dim, carrier_dim); base_dim],
        }
    }

    pub fn new(carrier_dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        if let Some(m) = mats.iter().find(|m| m.rows() != carrier_dim || m.cols() != carrier_dim) {
            return Err(Error::shape(format!(
                "action matrix is {}x{}, expected {carrier_dim}x{carrier_dim}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(ActionTensor {
            base_dim: mats.len(),
            carrier_dim,
            mats,
        })
    }

    /// Builds the tensor from `act(i, v)`, the action of `e_i` on the carrier basis vector `v`.
    pub fn from_fn(base_dim: usize, carrier_dim: usize, mut act: impl FnMut(usize, usize) -> Vector) -> Self {
        let mats = (0..base_dim)
            .map(|i| {
                let cols: Vec<Vector> = (0..carrier_dim).map(|p| act(i, p)).collect();
                Matrix::from_columns(carrier_dim, &cols)
            })
            .collect();
        ActionTensor {
            base_dim,
            carrier_dim,
            mats,
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn basis(&self, i: usize) -> &Matrix {
        &self.mats[i]
    }

    pub fn set_entry(&mut self, i: usize, row: usize, col: usize, value: Scalar) {
        self.mats[i].set(row, col, value);
    }

    /// The operator `Σ_i x_i mats[i]`.
    pub fn at(&self, x: &Vector) -> Matrix {
        assert_eq!(x.dim(), self.base_dim, "action argument of wrong dimension");
        let mut out = Matrix::zeros(self.carrier_dim, self.carrier_dim);
        for (i, m) in self.mats.iter().enumerate() {
            if !num_traits::Zero::is_zero(&x[i]) {
                out = &out + &m.scale(&x[i]);
            }
        }
        out
    }

    /// `x ↦ self(β x)` for a map `β` into the base space.
    pub fn precompose(&self, beta: &Matrix) -> ActionTensor {
        assert_eq!(beta.rows(), self.base_dim, "precomposing map of wrong shape");
        ActionTensor {
            base_dim: beta.cols(),
            carrier_dim: self.carrier_dim,
            mats: (0..beta.cols()).map(|i| self.at(&beta.column(i))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Matrix::is_zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    LambdaL,
    LambdaR,
    RhoL,
    RhoR,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::LambdaL, Action::LambdaR, Action::RhoL, Action::RhoR];

    pub fn name(self) -> &'static str {
        match self {
            Action::LambdaL => "lambda_l",
            Action::LambdaR => "lambda_r",
            Action::RhoL => "rho_l",
            Action::RhoR => "rho_r",
        }
    }

    pub fn from_name(s: &str) -> Option<Action> {
        Action::ALL.into_iter().find(|a| a.name() == s)
    }

    /// The product this action belongs to.
    pub fn op(self) -> Op {
        match self {
            Action::LambdaL | Action::LambdaR => Op::Dot,
            Action::RhoL | Action::RhoR => Op::Bracket,
        }
    }

    fn present_for(self, kind: Kind) -> bool {
        match self.op() {
            Op::Dot => kind.has_dot(),
            Op::Bracket => kind.has_bracket(),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    kind: Kind,
    base_dim: usize,
    carrier_dim: usize,
    phi: Matrix,
    actions: [Option<ActionTensor>; 4],
}

impl Representation {
    /// `actions` is indexed like [`Action::ALL`]: `lambda_l, lambda_r, rho_l, rho_r`.
    pub fn new(kind: Kind, base_dim: usize, phi: Matrix, actions: [Option<ActionTensor>; 4]) -> Result<Self> {
        if !phi.is_square() {
            return Err(Error::shape("carrier twist must be square"));
        }
        let carrier_dim = phi.rows();
        for (a, t) in Action::ALL.into_iter().zip(&actions) {
            if a.present_for(kind) != t.is_some() {
                return Err(Error::Kind(format!(
                    "a {kind} representation {} {a}",
                    if t.is_some() { "cannot have" } else { "needs" }
                )));
            }
            if let Some(t) = t {
                if t.base_dim != base_dim || t.carrier_dim != carrier_dim {
                    return Err(Error::shape(format!(
                        "{a} acts {}-dimensional on {}-dimensional, expected {base_dim} on {carrier_dim}",
                        t.base_dim, t.carrier_dim
                    )));
                }
            }
        }
        Ok(Representation {
            kind,
            base_dim,
            carrier_dim,
            phi,
            actions,
        })
    }

    /// All actions zero.
    pub fn zero(kind: Kind, base_dim: usize, phi: Matrix) -> Result<Self> {
        let n = phi.rows();
        let actions = Action::ALL.map(|a| a.present_for(kind).then(|| ActionTensor::zero(base_dim, n)));
        Representation::new(kind, base_dim, phi, actions)
    }

    /// Builds each present action from `f(action)`.
    pub fn from_actions(
        kind: Kind,
        base_dim: usize,
        phi: Matrix,
        mut f: impl FnMut(Action) -> ActionTensor,
    ) -> Result<Self> {
        let actions = Action::ALL.map(|a| a.present_for(kind).then(|| f(a)));
        Representation::new(kind, base_dim, phi, actions)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn action(&self, a: Action) -> Option<&ActionTensor> {
        self.actions[a as usize].as_ref()
    }

    /// The present actions in [`Action::ALL`] order.
    pub fn actions(&self) -> impl Iterator<Item = (Action, &ActionTensor)> {
        Action::ALL
            .into_iter()
            .filter_map(|a| self.action(a).map(|t| (a, t)))
    }

    pub fn with_action(&self, a: Action, t: ActionTensor) -> Result<Self> {
        let mut actions = self.actions.clone();
        actions[a as usize] = Some(t);
        Representation::new(self.kind, self.base_dim, self.phi.clone(), actions)
    }

    pub fn with_phi(&self, phi: Matrix) -> Result<Self> {
        Representation::new(self.kind, self.base_dim, phi, self.actions.clone())
    }

    /// Same carrier and twist, every action replaced by `f(action, tensor)`.
    pub fn map_actions(&self, mut f: impl FnMut(Action, &ActionTensor) -> ActionTensor) -> Result<Self> {
        let actions = Action::ALL.map(|a| self.action(a).map(|t| f(a, t)));
        let base_dim = actions
            .iter()
            .flatten()
            .next()
            .map_or(self.base_dim, ActionTensor::base_dim);
        Representation::new(self.kind, base_dim, self.phi.clone(), actions)
    }

    fn get(&self, a: Action) -> &ActionTensor {
        self.action(a).expect("action present for kind")
    }
}

fn check_compatible(rep: &Representation, alg: &HomAlgebra) -> Result<()> {
    if rep.kind != alg.kind() {
        return Err(Error::Kind(format!(
            "{} representation of a {} algebra",
            rep.kind,
            alg.kind()
        )));
    }
    if rep.base_dim != alg.dim() {
        return Err(Error::shape(format!(
            "representation of a {}-dimensional algebra used with a {}-dimensional one",
            rep.base_dim,
            alg.dim()
        )));
    }
    Ok(())
}

/// Per-basis data shared by the operator identities.
struct OpData<'a> {
    alg: &'a HomAlgebra,
    rep: &'a Representation,
    /// `α e_i`.
    alpha_e: Vec<Vector>,
}

impl OpData<'_> {
    /// `a(x)` at a basis vector.
    fn at(&self, a: Action, i: usize) -> &Matrix {
        self.rep.get(a).basis(i)
    }

    /// `a(α e_i)`.
    fn at_alpha(&self, a: Action, i: usize) -> Matrix {
        self.rep.get(a).at(&self.alpha_e[i])
    }

    /// `a(μ(e_i, e_j)) φ`.
    fn at_product_phi(&self, a: Action, op: Op, i: usize, j: usize) -> Matrix {
        let p = self.alg.tensor(op).expect("present").basis_product(i, j);
        &self.rep.get(a).at(&p) * &self.rep.phi
    }
}

type PairIdentity = fn(&OpData, usize, usize) -> Matrix;

fn commute(a: Action) -> impl Fn(&OpData, usize) -> Matrix {
    move |d, i| &(&d.rep.phi * d.at(a, i)) - &(&d.at_alpha(a, i) * &d.rep.phi)
}

const ASSOC_PAIRS: &[(&str, PairIdentity)] = &[
    ("lambda_l-product", |d, i, j| {
        use Action::*;
        &d.at_product_phi(LambdaL, Op::Dot, i, j) - &(&d.at_alpha(LambdaL, i) * d.at(LambdaL, j))
    }),
    ("lambda_r-product", |d, i, j| {
        use Action::*;
        &d.at_product_phi(LambdaR, Op::Dot, i, j) - &(&d.at_alpha(LambdaR, j) * d.at(LambdaR, i))
    }),
    ("lambda-mixed", |d, i, j| {
        use Action::*;
        &(&d.at_alpha(LambdaL, i) * d.at(LambdaR, j)) - &(&d.at_alpha(LambdaR, j) * d.at(LambdaL, i))
    }),
];

const LEIBNIZ_PAIRS: &[(&str, PairIdentity)] = &[
    ("rho_l-bracket", |d, i, j| {
        use Action::*;
        let rhs = &(&d.at_alpha(RhoL, i) * d.at(RhoL, j)) + &(&d.at_alpha(RhoR, j) * d.at(RhoL, i));
        &d.at_product_phi(RhoL, Op::Bracket, i, j) - &rhs
    }),
    ("rho_r-rho_l", |d, i, j| {
        use Action::*;
        let rhs = &(&d.at_alpha(RhoL, i) * d.at(RhoR, j)) + &d.at_product_phi(RhoL, Op::Bracket, i, j);
        &(&d.at_alpha(RhoR, j) * d.at(RhoL, i)) - &rhs
    }),
    ("rho_r-bracket", |d, i, j| {
        use Action::*;
        let rhs = &d.at_product_phi(RhoR, Op::Bracket, i, j) + &(&d.at_alpha(RhoR, i) * d.at(RhoR, j));
        &(&d.at_alpha(RhoR, j) * d.at(RhoR, i)) - &rhs
    }),
    ("rho_r-antisymmetry", |d, i, j| {
        use Action::*;
        &d.at_product_phi(RhoR, Op::Bracket, i, j) + &d.at_product_phi(RhoR, Op::Bracket, j, i)
    }),
];

const POISSON_PAIRS: &[(&str, PairIdentity)] = &[
    ("rho_r-lambda_l", |d, i, j| {
        use Action::*;
        let rhs = &(&d.at_alpha(LambdaL, i) * d.at(RhoR, j)) + &d.at_product_phi(LambdaL, Op::Bracket, i, j);
        &(&d.at_alpha(RhoR, j) * d.at(LambdaL, i)) - &rhs
    }),
    ("rho_r-lambda_r", |d, i, j| {
        use Action::*;
        let rhs = &d.at_product_phi(LambdaR, Op::Bracket, i, j) + &(&d.at_alpha(LambdaR, i) * d.at(RhoR, j));
        &(&d.at_alpha(RhoR, j) * d.at(LambdaR, i)) - &rhs
    }),
    ("rho_l-dot", |d, i, j| {
        use Action::*;
        let rhs = &(&d.at_alpha(LambdaL, i) * d.at(RhoL, j)) + &(&d.at_alpha(LambdaR, j) * d.at(RhoL, i));
        &d.at_product_phi(RhoL, Op::Dot, i, j) - &rhs
    }),
];

/// Checks the operator identities of the representation's kind on all basis pairs of `A`.
///
/// Witness tuples are `(e_i, f_k)` or `(e_i, e_j, f_k)`, where `f_k` is the carrier
/// basis vector on which the residual operator is nonzero. The leibniz list ends with
/// `rho_r-antisymmetry`, a consequence of `rho_r-bracket` kept as a consistency check.
pub fn check_representation(rep: &Representation, alg: &HomAlgebra) -> Result<CheckReport> {
    check_compatible(rep, alg)?;
    let n = alg.dim();
    let d = OpData {
        alg,
        rep,
        alpha_e: (0..n).map(|i| alg.alpha().column(i)).collect(),
    };
    let mut report = CheckReport::new();
    let singles = |report: &mut CheckReport, actions: [Action; 2]| {
        for a in actions {
            let f = commute(a);
            report.push(search_operator(format!("phi-{a}-commute"), e_tuples(n, 1), |b| {
                f(&d, idx(b[0]))
            }));
        }
    };
    let pairs = |report: &mut CheckReport, list: &[(&str, PairIdentity)]| {
        for (name, f) in list {
            report.push(search_operator(*name, e_tuples(n, 2), |b| f(&d, idx(b[0]), idx(b[1]))));
        }
    };
    if rep.kind.has_dot() {
        singles(&mut report, [Action::LambdaL, Action::LambdaR]);
        pairs(&mut report, ASSOC_PAIRS);
    }
    if rep.kind.has_bracket() {
        singles(&mut report, [Action::RhoL, Action::RhoR]);
        pairs(&mut report, LEIBNIZ_PAIRS);
    }
    if rep.kind == Kind::Poisson {
        pairs(&mut report, POISSON_PAIRS);
    }
    Ok(report)
}

/// The algebra acting on itself by multiplication, with `φ = α`.
pub fn regular_representation(alg: &HomAlgebra) -> Representation {
    let n = alg.dim();
    Representation::from_actions(alg.kind(), n, alg.alpha().clone(), |a| {
        let t = alg.tensor(a.op()).expect("present for kind");
        ActionTensor::from_fn(n, n, |i, p| match a {
            Action::LambdaL | Action::RhoL => t.basis_product(i, p),
            Action::LambdaR | Action::RhoR => t.basis_product(p, i),
        })
    })
    .expect("regular representation is well formed")
}

/// `src` acting on the space of `dst` through a morphism `f: src -> dst`.
pub fn pullback_representation(f: &Matrix, src: &HomAlgebra, dst: &HomAlgebra) -> Result<Representation> {
    let report = check_morphism(f, src, dst)?;
    if !report.passed() {
        return Err(Error::precondition("map is not a morphism", report));
    }
    Ok(pullback_representation_unchecked(f, dst))
}

pub fn pullback_representation_unchecked(f: &Matrix, dst: &HomAlgebra) -> Representation {
    regular_representation(dst)
        .map_actions(|_, t| t.precompose(f))
        .expect("precomposition keeps shapes")
}

/// Every action precomposed with a self-morphism `β` of the base algebra.
pub fn twist_representation(rep: &Representation, beta: &Matrix, alg: &HomAlgebra) -> Result<Representation> {
    check_compatible(rep, alg)?;
    let report = check_morphism(beta, alg, alg)?;
    if !report.passed() {
        return Err(Error::precondition("twisting map is not a self-morphism", report));
    }
    Ok(twist_representation_unchecked(rep, beta))
}

pub fn twist_representation_unchecked(rep: &Representation, beta: &Matrix) -> Representation {
    rep.map_actions(|_, t| t.precompose(beta))
        .expect("precomposition keeps shapes")
}

/// Restriction of the regular representation to a two-sided ideal, in coordinates of `basis`.
pub fn ideal_representation(basis: &[Vector], alg: &HomAlgebra) -> Result<Representation> {
    let report = check_ideal(basis, alg)?;
    if !report.passed() {
        return Err(Error::precondition("span is not an ideal", report));
    }
    let span = Subspace::span(alg.dim(), basis)?;
    if !span.is_basis() {
        return Err(Error::Invalid("ideal generators are linearly dependent".into()));
    }
    let m = basis.len();
    let n = alg.dim();
    let coords = |v: &Vector| span.coordinates(v).expect("ideal is closed");
    let phi_cols: Vec<Vector> = basis.iter().map(|b| coords(&alg.alpha().apply(b))).collect();
    let phi = Matrix::from_columns(m, &phi_cols);
    Representation::from_actions(alg.kind(), n, phi, |a| {
        let t = alg.tensor(a.op()).expect("present for kind");
        ActionTensor::from_fn(n, m, |i, p| match a {
            Action::LambdaL | Action::RhoL => coords(&t.eval(&alg.basis(i), &basis[p])),
            Action::LambdaR | Action::RhoR => coords(&t.eval(&basis[p], &alg.basis(i))),
        })
    })
}

/// The algebra on `A ⊕ V` with `(x + u)(y + v) = xy + l(x)v + r(y)u` and twist `α ⊕ φ`.
///
/// The basis of `A` comes first. No validity gate: the product is a valid algebra
/// exactly when `alg` is one and `rep` passes [`check_representation`].
pub fn semidirect_product(alg: &HomAlgebra, rep: &Representation) -> Result<HomAlgebra> {
    check_compatible(rep, alg)?;
    let (n, m) = (alg.dim(), rep.carrier_dim);
    let sum = |op: Op, t: &StructureTensor| {
        let (l, r) = match op {
            Op::Dot => (rep.get(Action::LambdaL), rep.get(Action::LambdaR)),
            Op::Bracket => (rep.get(Action::RhoL), rep.get(Action::RhoR)),
        };
        StructureTensor::from_products(n + m, |i, j| match (i < n, j < n) {
            (true, true) => t.basis_product(i, j).concat(&Vector::zeros(m)),
            (true, false) => Vector::zeros(n).concat(&l.basis(i).column(j - n)),
            (false, true) => Vector::zeros(n).concat(&r.basis(j).column(i - n)),
            (false, false) => Vector::zeros(n + m),
        })
    };
    let alpha = alg.alpha().direct_sum(&rep.phi);
    HomAlgebra::new(
        alg.kind(),
        alg.dot().map(|t| sum(Op::Dot, t)),
        alg.bracket().map(|t| sum(Op::Bracket, t)),
        alpha,
    )
}
