//! Matched pairs: two algebras acting on each other, and their bicrossed sum on `A1 ⊕ A2`.
//!
//! Basis vectors of `A1` are written `e`, those of `A2` are written `f`.

use crate::error::{Error, Result};
use crate::exactla::Vector;
use crate::homcore::{check_algebra, HomAlgebra, Op, StructureTensor};
use crate::homrep::{check_representation, Action, Representation};
use crate::report::{idx, search, tuples, Basis, CheckReport};

#[derive(Clone, Debug, PartialEq)]
pub struct MatchedPair {
    a1: HomAlgebra,
    a2: HomAlgebra,
    on_2: Representation,
    on_1: Representation,
}

impl MatchedPair {
    /// `on_2` is `a1` acting on the space of `a2`; `on_1` is `a2` acting on the space of `a1`.
    pub fn new(a1: HomAlgebra, a2: HomAlgebra, on_2: Representation, on_1: Representation) -> Result<Self> {
        let kind = a1.kind();
        if a2.kind() != kind || on_2.kind() != kind || on_1.kind() != kind {
            return Err(Error::Kind("matched pair members must share one kind".into()));
        }
        if on_2.base_dim() != a1.dim() || on_2.carrier_dim() != a2.dim() {
            return Err(Error::shape("actions of the first algebra must act on the second"));
        }
        if on_1.base_dim() != a2.dim() || on_1.carrier_dim() != a1.dim() {
            return Err(Error::shape("actions of the second algebra must act on the first"));
        }
        if on_2.phi() != a2.alpha() || on_1.phi() != a1.alpha() {
            return Err(Error::Invalid(
                "each action's carrier twist must be the twist of the algebra it acts on".into(),
            ));
        }
        Ok(MatchedPair { a1, a2, on_2, on_1 })
    }

    pub fn a1(&self) -> &HomAlgebra {
        &self.a1
    }

    pub fn a2(&self) -> &HomAlgebra {
        &self.a2
    }

    pub fn actions_1_on_2(&self) -> &Representation {
        &self.on_2
    }

    pub fn actions_2_on_1(&self) -> &Representation {
        &self.on_1
    }
}

/// How the inner term of the associative condition on `(f, e, e)` tuples is read.
///
/// `Plain` is `(λ2l(u) x) · α1(y)`, the term forced by associativity of the sum.
/// `Twisted` is `(λ2l(α2 u) x) · α1(y)`, kept for comparison; it is not sufficient
/// for the sum to be Hom-associative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InnerTerm {
    #[default]
    Plain,
    Twisted,
}

/// One orientation of a matched pair: `p` acts on `q` through `pq`, `q` acts on `p` through `qp`.
struct Side<'a> {
    p: &'a HomAlgebra,
    q: &'a HomAlgebra,
    pq: &'a Representation,
    qp: &'a Representation,
    twisted: bool,
}

impl Side<'_> {
    /// `act(x) u` for `x` in `p`, `u` in `q`.
    fn a(&self, act: Action, x: &Vector, u: &Vector) -> Vector {
        self.pq.action(act).expect("present").at(x).apply(u)
    }

    /// `act(u) x` for `u` in `q`, `x` in `p`.
    fn b(&self, act: Action, u: &Vector, x: &Vector) -> Vector {
        self.qp.action(act).expect("present").at(u).apply(x)
    }

    fn mq(&self, op: Op, u: &Vector, v: &Vector) -> Vector {
        self.q.mul(op, u, v)
    }

    fn sp(&self, x: &Vector) -> Vector {
        self.p.alpha().apply(x)
    }

    fn sq(&self, u: &Vector) -> Vector {
        self.q.alpha().apply(u)
    }
}

/// A condition on `(x, u, v)` with `x` in `p` and `u, v` in `q`, valued in `q`.
type Condition = fn(&Side, &Vector, &Vector, &Vector) -> Vector;

use Action::{LambdaL as LL, LambdaR as LR, RhoL as RL, RhoR as RR};
use Op::{Bracket as BR, Dot as DOT};

fn sum(terms: &[(i64, Vector)]) -> Vector {
    let mut out = Vector::zeros(terms[0].1.dim());
    for (c, t) in terms {
        out.add_scaled(&crate::exactla::int(*c), t);
    }
    out
}

const ASSOC: &[(&str, Condition)] = &[
    // λl(αx)(u·v) = λl(λr(u)x)αv + (λl(x)u)·αv
    ("dot-left-action", |s, x, u, v| {
        let inner = if s.twisted { s.a(LL, &s.sp(x), u) } else { s.a(LL, x, u) };
        sum(&[
            (1, s.a(LL, &s.sp(x), &s.mq(DOT, u, v))),
            (-1, s.a(LL, &s.b(LR, u, x), &s.sq(v))),
            (-1, s.mq(DOT, &inner, &s.sq(v))),
        ])
    }),
    // λr(αx)(u·v) = λr(λl(v)x)αu + αu·(λr(x)v)
    ("dot-right-action", |s, x, u, v| {
        sum(&[
            (1, s.a(LR, &s.sp(x), &s.mq(DOT, u, v))),
            (-1, s.a(LR, &s.b(LL, v, x), &s.sq(u))),
            (-1, s.mq(DOT, &s.sq(u), &s.a(LR, x, v))),
        ])
    }),
    // λl(λl(u)x)αv + (λr(x)u)·αv = λr(λr(v)x)αu + αu·(λl(x)v)
    ("dot-mixed-action", |s, x, u, v| {
        sum(&[
            (1, s.a(LL, &s.b(LL, u, x), &s.sq(v))),
            (1, s.mq(DOT, &s.a(LR, x, u), &s.sq(v))),
            (-1, s.a(LR, &s.b(LR, v, x), &s.sq(u))),
            (-1, s.mq(DOT, &s.sq(u), &s.a(LL, x, v))),
        ])
    }),
];

const LEIBNIZ: &[(&str, Condition)] = &[
    // ρr(αx)[u,v] = [αu, ρr(x)v] + [ρr(x)u, αv] + ρr(ρl(v)x)αu + ρl(ρl(u)x)αv
    ("bracket-right-action", |s, x, u, v| {
        sum(&[
            (1, s.a(RR, &s.sp(x), &s.mq(BR, u, v))),
            (-1, s.mq(BR, &s.sq(u), &s.a(RR, x, v))),
            (-1, s.mq(BR, &s.a(RR, x, u), &s.sq(v))),
            (-1, s.a(RR, &s.b(RL, v, x), &s.sq(u))),
            (-1, s.a(RL, &s.b(RL, u, x), &s.sq(v))),
        ])
    }),
    // ρl(αx)[u,v] = [ρl(x)u, αv] - [ρl(x)v, αu] + ρl(ρr(u)x)αv - ρl(ρr(v)x)αu
    ("bracket-left-action", |s, x, u, v| {
        sum(&[
            (1, s.a(RL, &s.sp(x), &s.mq(BR, u, v))),
            (-1, s.mq(BR, &s.a(RL, x, u), &s.sq(v))),
            (1, s.mq(BR, &s.a(RL, x, v), &s.sq(u))),
            (-1, s.a(RL, &s.b(RR, u, x), &s.sq(v))),
            (1, s.a(RL, &s.b(RR, v, x), &s.sq(u))),
        ])
    }),
    // ρr(αx)[u,v] = [ρr(x)u, αv] - [αu, ρl(x)v] + ρl(ρl(u)x)αv - ρr(ρr(v)x)αu
    ("bracket-mixed-action", |s, x, u, v| {
        sum(&[
            (1, s.a(RR, &s.sp(x), &s.mq(BR, u, v))),
            (-1, s.mq(BR, &s.a(RR, x, u), &s.sq(v))),
            (1, s.mq(BR, &s.sq(u), &s.a(RL, x, v))),
            (-1, s.a(RL, &s.b(RL, u, x), &s.sq(v))),
            (1, s.a(RR, &s.b(RR, v, x), &s.sq(u))),
        ])
    }),
];

const POISSON: &[(&str, Condition)] = &[
    // λl(αx)[u,v] + (ρl(x)v)·αu + λl(ρr(v)x)αu = [λl(x)u, αv] + ρl(λr(u)x)αv
    ("compat-left-dot", |s, x, u, v| {
        sum(&[
            (1, s.a(LL, &s.sp(x), &s.mq(BR, u, v))),
            (1, s.mq(DOT, &s.a(RL, x, v), &s.sq(u))),
            (1, s.a(LL, &s.b(RR, v, x), &s.sq(u))),
            (-1, s.mq(BR, &s.a(LL, x, u), &s.sq(v))),
            (-1, s.a(RL, &s.b(LR, u, x), &s.sq(v))),
        ])
    }),
    // λr(αx)[u,v] + αu·(ρl(x)v) + λr(ρr(v)x)αu = [λr(x)u, αv] + ρl(λl(u)x)αv
    ("compat-right-dot", |s, x, u, v| {
        sum(&[
            (1, s.a(LR, &s.sp(x), &s.mq(BR, u, v))),
            (1, s.mq(DOT, &s.sq(u), &s.a(RL, x, v))),
            (1, s.a(LR, &s.b(RR, v, x), &s.sq(u))),
            (-1, s.mq(BR, &s.a(LR, x, u), &s.sq(v))),
            (-1, s.a(RL, &s.b(LL, u, x), &s.sq(v))),
        ])
    }),
    // ρr(αx)(u·v) = αu·(ρr(x)v) + λr(ρl(v)x)αu + (ρr(x)u)·αv + λl(ρl(u)x)αv
    ("compat-bracket-on-dot", |s, x, u, v| {
        sum(&[
            (1, s.a(RR, &s.sp(x), &s.mq(DOT, u, v))),
            (-1, s.mq(DOT, &s.sq(u), &s.a(RR, x, v))),
            (-1, s.a(LR, &s.b(RL, v, x), &s.sq(u))),
            (-1, s.mq(DOT, &s.a(RR, x, u), &s.sq(v))),
            (-1, s.a(LL, &s.b(RL, u, x), &s.sq(v))),
        ])
    }),
];

pub fn check_matched_pair(mp: &MatchedPair) -> Result<CheckReport> {
    check_matched_pair_with(mp, InnerTerm::default())
}

/// Checks both component algebras and every cross condition of the kind, in both orientations.
///
/// Identities ending in `[1 on 2]` are evaluated on `(e, f, f)` tuples and valued in `A2`;
/// their mirrors ending in `[2 on 1]` on `(f, e, e)` tuples, valued in `A1`.
/// Errors with a precondition failure when either set of actions is not a representation.
pub fn check_matched_pair_with(mp: &MatchedPair, inner: InnerTerm) -> Result<CheckReport> {
    for (rep, alg, what) in [
        (&mp.on_2, &mp.a1, "actions of the first algebra"),
        (&mp.on_1, &mp.a2, "actions of the second algebra"),
    ] {
        let r = check_representation(rep, alg)?;
        if !r.passed() {
            return Err(Error::precondition(format!("{what} do not form a representation"), r));
        }
    }
    let mut report = CheckReport::new();
    report.extend_prefixed("a1", check_algebra(&mp.a1));
    report.extend_prefixed("a2", check_algebra(&mp.a2));

    let kind = mp.a1.kind();
    let mut lists: Vec<&[(&str, Condition)]> = Vec::new();
    if kind.has_dot() {
        lists.push(ASSOC);
    }
    if kind.has_bracket() {
        lists.push(LEIBNIZ);
    }
    if kind == crate::homcore::Kind::Poisson {
        lists.push(POISSON);
    }
    let (n1, n2) = (mp.a1.dim(), mp.a2.dim());
    for list in lists {
        for (name, cond) in list {
            let fwd = Side {
                p: &mp.a1,
                q: &mp.a2,
                pq: &mp.on_2,
                qp: &mp.on_1,
                twisted: false,
            };
            let back = Side {
                p: &mp.a2,
                q: &mp.a1,
                pq: &mp.on_1,
                qp: &mp.on_2,
                twisted: inner == InnerTerm::Twisted,
            };
            report.push(search(
                format!("{name} [1 on 2]"),
                tuples(&[(Basis::E, n1), (Basis::F, n2), (Basis::F, n2)]),
                |t| {
                    let (x, u, v) = (mp.a1.basis(idx(t[0])), mp.a2.basis(idx(t[1])), mp.a2.basis(idx(t[2])));
                    cond(&fwd, &x, &u, &v)
                },
            ));
            report.push(search(
                format!("{name} [2 on 1]"),
                tuples(&[(Basis::F, n2), (Basis::E, n1), (Basis::E, n1)]),
                |t| {
                    let (u, x, y) = (mp.a2.basis(idx(t[0])), mp.a1.basis(idx(t[1])), mp.a1.basis(idx(t[2])));
                    cond(&back, &u, &x, &y)
                },
            ));
        }
    }
    Ok(report)
}

/// The algebra on `A1 ⊕ A2` (basis of `A1` first) with
/// `(x + u)(y + v) = (xy + l2(u)y + r2(v)x) + (uv + l1(x)v + r1(y)u)` and twist `α1 ⊕ α2`.
pub fn matched_sum(mp: &MatchedPair) -> Result<HomAlgebra> {
    let (n1, n2) = (mp.a1.dim(), mp.a2.dim());
    let act = |rep: &Representation, a: Action, i: usize, p: usize| rep.action(a).expect("present").basis(i).column(p);
    let build = |op: Op, t1: &StructureTensor| {
        let t2 = mp.a2.tensor(op).expect("same kind");
        let (l, r) = match op {
            Op::Dot => (LL, LR),
            Op::Bracket => (RL, RR),
        };
        StructureTensor::from_products(n1 + n2, |i, j| match (i < n1, j < n1) {
            (true, true) => t1.basis_product(i, j).concat(&Vector::zeros(n2)),
            (true, false) => act(&mp.on_1, r, j - n1, i).concat(&act(&mp.on_2, l, i, j - n1)),
            (false, true) => act(&mp.on_1, l, i - n1, j).concat(&act(&mp.on_2, r, j, i - n1)),
            (false, false) => Vector::zeros(n1).concat(&t2.basis_product(i - n1, j - n1)),
        })
    };
    HomAlgebra::new(
        mp.a1.kind(),
        mp.a1.dot().map(|t| build(Op::Dot, t)),
        mp.a1.bracket().map(|t| build(Op::Bracket, t)),
        mp.a1.alpha().direct_sum(mp.a2.alpha()),
    )
}
