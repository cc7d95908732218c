//! Rota-Baxter and relative Rota-Baxter operators, the structures they induce,
//! Nijenhuis operators, and the graph and lift characterizations.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Vector};
use crate::homcore::{check_algebra, check_morphism, HomAlgebra, Op, StructureTensor};
use crate::homrep::{check_representation, semidirect_product, Action, ActionTensor, Representation};
use crate::report::{e_tuples, idx, search, tuples, Basis, CheckReport};

/// A map `T: V -> A` together with the algebra `A` and its representation on `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorContext {
    alg: HomAlgebra,
    rep: Representation,
    t: Matrix,
}

impl OperatorContext {
    pub fn new(alg: HomAlgebra, rep: Representation, t: Matrix) -> Result<Self> {
        if rep.kind() != alg.kind() {
            return Err(Error::Kind(format!(
                "{} representation of a {} algebra",
                rep.kind(),
                alg.kind()
            )));
        }
        if rep.base_dim() != alg.dim() {
            return Err(Error::shape("representation belongs to an algebra of another dimension"));
        }
        if t.rows() != alg.dim() || t.cols() != rep.carrier_dim() {
            return Err(Error::shape(format!(
                "operator is {}x{}, expected {}x{}",
                t.rows(),
                t.cols(),
                alg.dim(),
                rep.carrier_dim()
            )));
        }
        Ok(OperatorContext { alg, rep, t })
    }

    /// `T` as an operator relative to the regular representation.
    pub fn regular(alg: HomAlgebra, t: Matrix) -> Result<Self> {
        let rep = crate::homrep::regular_representation(&alg);
        OperatorContext::new(alg, rep, t)
    }

    pub fn alg(&self) -> &HomAlgebra {
        &self.alg
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn with_t(&self, t: Matrix) -> Result<Self> {
        OperatorContext::new(self.alg.clone(), self.rep.clone(), t)
    }

    fn act(&self, a: Action, x: &Vector, v: &Vector) -> Vector {
        self.rep.action(a).expect("present for kind").at(x).apply(v)
    }

    /// `(left, right)` actions belonging to a product.
    fn pair(op: Op) -> (Action, Action) {
        match op {
            Op::Dot => (Action::LambdaL, Action::LambdaR),
            Op::Bracket => (Action::RhoL, Action::RhoR),
        }
    }

    /// `l(Tu)v + r(Tv)u`, the induced product of `u` and `v`.
    fn induced(&self, op: Op, u: &Vector, v: &Vector) -> Vector {
        let (l, r) = OperatorContext::pair(op);
        &self.act(l, &self.t.apply(u), v) + &self.act(r, &self.t.apply(v), u)
    }
}

fn commutation(name: &str, lhs: &Matrix, rhs: &Matrix, tag: fn(usize) -> Basis) -> crate::report::Check {
    let d = lhs - rhs;
    search(name, tuples(&[(tag, d.cols())]), |b| d.column(idx(b[0])))
}

/// `μ(Rx, Ry) = R(μ(Rx, y) + μ(x, Ry) + λ μ(x, y))` for every product, and `Rα = αR`.
pub fn check_rota_baxter(alg: &HomAlgebra, r: &Matrix, weight: &Scalar) -> Result<CheckReport> {
    let n = alg.dim();
    if r.rows() != n || r.cols() != n {
        return Err(Error::shape(format!("operator must be {n}x{n}")));
    }
    let mut report = CheckReport::new();
    report.push(commutation("commutes-with-alpha", &(r * alg.alpha()), &(alg.alpha() * r), Basis::E));
    let re: Vec<Vector> = (0..n).map(|i| r.column(i)).collect();
    for (op, t) in alg.tensors() {
        report.push(search(format!("rota-baxter({})", op.name()), e_tuples(n, 2), |b| {
            let (i, j) = (idx(b[0]), idx(b[1]));
            let (x, y) = (alg.basis(i), alg.basis(j));
            let mut inner = &t.eval(&re[i], &y) + &t.eval(&x, &re[j]);
            if !weight.is_zero() {
                inner.add_scaled(weight, &t.basis_product(i, j));
            }
            &t.eval(&re[i], &re[j]) - &r.apply(&inner)
        }));
    }
    Ok(report)
}

/// `Tφ = αT`, and `Tu * Tv = T(l(Tu)v + r(Tv)u)` for every product on all basis pairs of `V`.
pub fn check_relative_rbo(ctx: &OperatorContext) -> CheckReport {
    let m = ctx.rep.carrier_dim();
    let mut report = CheckReport::new();
    report.push(commutation(
        "commutes-with-twists",
        &(&ctx.t * ctx.rep.phi()),
        &(ctx.alg.alpha() * &ctx.t),
        Basis::F,
    ));
    let tf: Vec<Vector> = (0..m).map(|p| ctx.t.column(p)).collect();
    for (op, t) in ctx.alg.tensors() {
        report.push(search(
            format!("relative-rota-baxter({})", op.name()),
            tuples(&[(Basis::F, m), (Basis::F, m)]),
            |b| {
                let (p, q) = (idx(b[0]), idx(b[1]));
                let (u, v) = (Vector::basis(m, p), Vector::basis(m, q));
                &t.eval(&tf[p], &tf[q]) - &ctx.t.apply(&ctx.induced(op, &u, &v))
            },
        ));
    }
    report
}

fn gate(ctx: &OperatorContext) -> Result<()> {
    let report = check_relative_rbo(ctx);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::precondition("operator is not a relative Rota-Baxter operator", report))
    }
}

/// The algebra on `V` with products `l(Tu)v + r(Tv)u` and twist `φ`.
pub fn induced_algebra(ctx: &OperatorContext) -> Result<HomAlgebra> {
    gate(ctx)?;
    Ok(induced_algebra_unchecked(ctx))
}

pub fn induced_algebra_unchecked(ctx: &OperatorContext) -> HomAlgebra {
    let m = ctx.rep.carrier_dim();
    let build = |op: Op| {
        StructureTensor::from_products(m, |p, q| ctx.induced(op, &Vector::basis(m, p), &Vector::basis(m, q)))
    };
    HomAlgebra::new(
        ctx.alg.kind(),
        ctx.alg.dot().map(|_| build(Op::Dot)),
        ctx.alg.bracket().map(|_| build(Op::Bracket)),
        ctx.rep.phi().clone(),
    )
    .expect("induced algebra is well formed")
}

/// `T` as a morphism from the induced algebra on `V` to `A`.
pub fn check_morphism_property(ctx: &OperatorContext) -> Result<CheckReport> {
    gate(ctx)?;
    Ok(check_morphism_property_unchecked(ctx))
}

pub fn check_morphism_property_unchecked(ctx: &OperatorContext) -> CheckReport {
    check_morphism(&ctx.t, &induced_algebra_unchecked(ctx), &ctx.alg).expect("shapes agree by construction")
}

/// The induced algebra on `V` acting back on `A`, with twist `α`:
/// `l(u)x = Tu * x - T r(x)u` and `r(u)x = x * Tu - T l(x)u` for each product.
pub fn induced_representation(ctx: &OperatorContext) -> Result<Representation> {
    gate(ctx)?;
    Ok(induced_representation_unchecked(ctx))
}

pub fn induced_representation_unchecked(ctx: &OperatorContext) -> Representation {
    let (n, m) = (ctx.alg.dim(), ctx.rep.carrier_dim());
    Representation::from_actions(ctx.alg.kind(), m, ctx.alg.alpha().clone(), |a| {
        let (l, r) = OperatorContext::pair(a.op());
        let left = matches!(a, Action::LambdaL | Action::RhoL);
        ActionTensor::from_fn(m, n, |p, i| {
            let (u, x) = (Vector::basis(m, p), ctx.alg.basis(i));
            let tu = ctx.t.apply(&u);
            if left {
                &ctx.alg.mul(a.op(), &tu, &x) - &ctx.t.apply(&ctx.act(r, &x, &u))
            } else {
                &ctx.alg.mul(a.op(), &x, &tu) - &ctx.t.apply(&ctx.act(l, &x, &u))
            }
        })
    })
    .expect("induced representation is well formed")
}

/// Which slot of the bracket `A` uses when acting on its own copy inside `A ⊕ V`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BracketSide {
    /// `ρl(a)(b + v) = ρl(a)v` and `ρr(a)(b + v) = [b, a] + ρr(a)v`. Always a representation.
    #[default]
    Right,
    /// `ρl(a)(b + v) = [a, b] + ρl(a)v` and `ρr(a)(b + v) = ρr(a)v`. A representation
    /// only for special brackets; kept for comparison.
    Left,
}

/// `A` acting on `A ⊕ V`, with `T(a + v) = a`.
///
/// On the `A` summand the dot acts by `λl(a)b = a·b`, `λr(a)b = 0`, and the bracket
/// by the slot chosen in [`BracketSide`]; on `V` the given actions are kept.
pub fn projection_context(alg: &HomAlgebra, rep: &Representation) -> Result<OperatorContext> {
    projection_context_with(alg, rep, BracketSide::default())
}

pub fn projection_context_with(alg: &HomAlgebra, rep: &Representation, side: BracketSide) -> Result<OperatorContext> {
    let report = check_representation(rep, alg)?;
    if !report.passed() {
        return Err(Error::precondition("input is not a representation", report));
    }
    projection_context_unchecked(alg, rep, side)
}

pub fn projection_context_unchecked(
    alg: &HomAlgebra,
    rep: &Representation,
    side: BracketSide,
) -> Result<OperatorContext> {
    let (n, m) = (alg.dim(), rep.carrier_dim());
    if rep.base_dim() != n {
        return Err(Error::shape("representation belongs to an algebra of another dimension"));
    }
    let phi = alg.alpha().direct_sum(rep.phi());
    let sum_rep = Representation::from_actions(alg.kind(), n, phi, |a| {
        let t = alg.tensor(a.op()).expect("present for kind");
        let on_a: Option<fn(&StructureTensor, usize, usize) -> Vector> = match (a, side) {
            (Action::LambdaL, _) | (Action::RhoL, BracketSide::Left) => Some(|t, i, j| t.basis_product(i, j)),
            (Action::RhoR, BracketSide::Right) => Some(|t, i, j| t.basis_product(j, i)),
            _ => None,
        };
        let orig = rep.action(a).expect("present for kind");
        ActionTensor::from_fn(n, n + m, |i, p| {
            if p < n {
                let v = on_a.map_or_else(|| Vector::zeros(n), |f| f(t, i, p));
                v.concat(&Vector::zeros(m))
            } else {
                Vector::zeros(n).concat(&orig.basis(i).column(p - n))
            }
        })
    })?;
    let t = Matrix::from_fn(n, n + m, |i, j| if i == j { Scalar::from_integer(1.into()) } else { Scalar::zero() });
    OperatorContext::new(alg.clone(), sum_rep, t)
}

/// `Nα = αN`, and vanishing torsion `N(x)N(y) = N(N(x)y + xN(y) - N(xy))` for every product.
pub fn check_nijenhuis(alg: &HomAlgebra, n: &Matrix) -> Result<CheckReport> {
    let d = alg.dim();
    if n.rows() != d || n.cols() != d {
        return Err(Error::shape(format!("operator must be {d}x{d}")));
    }
    let mut report = CheckReport::new();
    report.push(commutation("commutes-with-alpha", &(n * alg.alpha()), &(alg.alpha() * n), Basis::E));
    let ne: Vec<Vector> = (0..d).map(|i| n.column(i)).collect();
    for (op, t) in alg.tensors() {
        report.push(search(format!("nijenhuis-torsion({})", op.name()), e_tuples(d, 2), |b| {
            let (i, j) = (idx(b[0]), idx(b[1]));
            let deformed = deformed_product(t, n, &ne[i], &ne[j], i, j, d);
            &t.eval(&ne[i], &ne[j]) - &n.apply(&deformed)
        }));
    }
    Ok(report)
}

/// `N(e_i)·e_j + e_i·N(e_j) - N(e_i·e_j)`.
fn deformed_product(t: &StructureTensor, n: &Matrix, ni: &Vector, nj: &Vector, i: usize, j: usize, d: usize) -> Vector {
    let (x, y) = (Vector::basis(d, i), Vector::basis(d, j));
    &(&t.eval(ni, &y) + &t.eval(&x, nj)) - &n.apply(&t.basis_product(i, j))
}

/// Products `x ·_N y = N(x)·y + x·N(y) - N(x·y)` for every product, same twist.
pub fn nijenhuis_deform(alg: &HomAlgebra, n: &Matrix) -> Result<HomAlgebra> {
    let report = check_nijenhuis(alg, n)?;
    if !report.passed() {
        return Err(Error::precondition("operator is not a Nijenhuis operator", report));
    }
    Ok(nijenhuis_deform_unchecked(alg, n))
}

pub fn nijenhuis_deform_unchecked(alg: &HomAlgebra, n: &Matrix) -> HomAlgebra {
    let d = alg.dim();
    let ne: Vec<Vector> = (0..d).map(|i| n.column(i)).collect();
    alg.map_tensors(|_, t| StructureTensor::from_products(d, |i, j| deformed_product(t, n, &ne[i], &ne[j], i, j, d)))
}

/// Closure of the graph `{(Tv, v)}` inside the semidirect product, under every product and `α ⊕ φ`.
///
/// Witness tuples name the graph vectors `(T f_p, f_p)`; residuals are taken modulo the graph.
pub fn graph_check(ctx: &OperatorContext) -> CheckReport {
    let (n, m) = (ctx.alg.dim(), ctx.rep.carrier_dim());
    let s = semidirect_product(&ctx.alg, &ctx.rep).expect("context shapes agree");
    let gens: Vec<Vector> = (0..m).map(|p| ctx.t.column(p).concat(&Vector::basis(m, p))).collect();
    let graph = crate::exactla::Subspace::span(n + m, &gens).expect("graph lies in the sum");
    let mut report = CheckReport::new();
    report.push(search("graph-twist-stable", tuples(&[(Basis::F, m)]), |b| {
        graph.reduce(&s.alpha().apply(&gens[idx(b[0])]))
    }));
    for (op, t) in s.tensors() {
        report.push(search(
            format!("graph-closed({})", op.name()),
            tuples(&[(Basis::F, m), (Basis::F, m)]),
            |b| graph.reduce(&t.eval(&gens[idx(b[0])], &gens[idx(b[1])])),
        ));
    }
    report
}

/// The block map `[[0, T], [0, 0]]` on `A ⊕ V`.
pub fn lift_operator(ctx: &OperatorContext) -> Matrix {
    let n = ctx.alg.dim();
    let m = ctx.rep.carrier_dim();
    Matrix::from_fn(n + m, n + m, |i, j| {
        if i < n && j >= n {
            ctx.t.get(i, j - n).clone()
        } else {
            Scalar::zero()
        }
    })
}

/// Same block matrix as [`lift_operator`], used as a Nijenhuis operator on the semidirect product.
pub fn nijenhuis_from_rbo(ctx: &OperatorContext) -> Matrix {
    lift_operator(ctx)
}

/// Verdicts of the four equivalent characterizations, in the order
/// relative Rota-Baxter, graph, lift, Nijenhuis.
pub fn characterization_verdicts(ctx: &OperatorContext) -> [bool; 4] {
    let s = semidirect_product(&ctx.alg, &ctx.rep).expect("context shapes agree");
    let lift = lift_operator(ctx);
    [
        check_relative_rbo(ctx).passed(),
        graph_check(ctx).passed(),
        check_rota_baxter(&s, &lift, &Scalar::zero()).expect("square").passed(),
        check_nijenhuis(&s, &nijenhuis_from_rbo(ctx)).expect("square").passed(),
    ]
}

/// Runs every check that the induced structures of a relative Rota-Baxter operator must pass.
pub fn check_induced_structures(ctx: &OperatorContext) -> Result<CheckReport> {
    let alg = induced_algebra(ctx)?;
    let mut report = CheckReport::new();
    report.extend_prefixed("induced algebra", check_algebra(&alg));
    report.extend_prefixed("morphism", check_morphism_property(ctx)?);
    let rep = induced_representation(ctx)?;
    report.extend_prefixed("induced representation", check_representation(&rep, &alg)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, ratio};
    use crate::fixtures::{a2_assoc, a2_leib, a2_poisson};
    use crate::homcore::Kind;
    use crate::homrep::regular_representation;

    fn family(a12: i64) -> Matrix {
        Matrix::from_int_rows(&[[0, a12], [0, 2 * a12]])
    }

    #[test]
    fn rota_baxter_trivial_cases() {
        let l = a2_leib();
        assert!(check_rota_baxter(&l, &Matrix::zeros(2, 2), &int(5)).unwrap().passed());
        assert!(check_rota_baxter(&l, &Matrix::identity(2), &int(-1)).unwrap().passed());
        assert!(check_rota_baxter(&l, &family(1), &int(0)).unwrap().passed());
        assert!(check_rota_baxter(&l, &Matrix::identity(3), &int(0)).is_err());
    }

    #[test]
    fn relative_rbo_on_fixtures() {
        let l = OperatorContext::regular(a2_leib(), family(1)).unwrap();
        assert!(check_relative_rbo(&l).passed());
        assert!(check_relative_rbo(&l.with_t(Matrix::zeros(2, 2)).unwrap()).passed());
        let a = OperatorContext::regular(a2_assoc(), family(1)).unwrap();
        assert!(!check_relative_rbo(&a).passed());
    }

    #[test]
    fn induced_structures_of_family() {
        for a12 in [1, -1, 2] {
            let ctx = OperatorContext::regular(a2_leib(), family(a12)).unwrap();
            let r = check_induced_structures(&ctx).unwrap();
            assert!(r.passed(), "{r}");
        }
        let ctx = OperatorContext::regular(a2_leib(), Matrix::zeros(2, 2)).unwrap();
        assert!(induced_algebra(&ctx).unwrap().bracket().unwrap().is_zero());
        assert!(induced_representation(&ctx).unwrap().actions().all(|(_, t)| t.is_zero()));
    }

    #[test]
    fn gates_reject_failing_operators() {
        let ctx = OperatorContext::regular(a2_leib(), Matrix::from_int_rows(&[[1, 0], [0, 0]])).unwrap();
        assert!(matches!(induced_algebra(&ctx), Err(Error::Precondition { .. })));
        assert!(matches!(check_morphism_property(&ctx), Err(Error::Precondition { .. })));
        assert!(matches!(induced_representation(&ctx), Err(Error::Precondition { .. })));
    }

    #[test]
    fn projection_contexts() {
        let l = a2_leib();
        let ctx = projection_context(&l, &regular_representation(&l)).unwrap();
        assert_eq!(ctx.t(), &Matrix::from_int_rows(&[[1, 0, 0, 0], [0, 1, 0, 0]]));
        assert!(check_relative_rbo(&ctx).passed());
        assert!(check_representation(ctx.rep(), &l).unwrap().passed());
        assert!(check_induced_structures(&ctx).unwrap().passed());

        let z = HomAlgebra::zero(Kind::Leibniz, Matrix::identity(1)).unwrap();
        let zr = Representation::zero(Kind::Leibniz, 1, Matrix::identity(1)).unwrap();
        assert!(check_relative_rbo(&projection_context(&z, &zr).unwrap()).passed());

        let p = a2_poisson();
        let ctx = projection_context_unchecked(&p, &regular_representation(&p), BracketSide::Right).unwrap();
        assert!(check_relative_rbo(&ctx).passed());
    }

    #[test]
    fn left_bracket_slot_is_not_a_representation_here() {
        let l = a2_leib();
        let ctx = projection_context_with(&l, &regular_representation(&l), BracketSide::Left).unwrap();
        assert!(check_relative_rbo(&ctx).passed());
        assert!(!check_representation(ctx.rep(), &l).unwrap().passed());
    }

    #[test]
    fn nijenhuis_trivial_cases() {
        let l = a2_leib();
        for n in [Matrix::zeros(2, 2), Matrix::identity(2)] {
            assert!(check_nijenhuis(&l, &n).unwrap().passed());
        }
        assert_eq!(nijenhuis_deform(&l, &Matrix::identity(2)).unwrap(), l);
        assert!(nijenhuis_deform(&l, &Matrix::zeros(2, 2)).unwrap().bracket().unwrap().is_zero());
    }

    #[test]
    fn characterizations_agree_on_examples() {
        let l = a2_leib();
        let good = OperatorContext::regular(l.clone(), family(1)).unwrap();
        assert_eq!(characterization_verdicts(&good), [true; 4]);
        let bad = good.with_t(Matrix::from_int_rows(&[[1, 0], [0, 0]])).unwrap();
        assert_eq!(characterization_verdicts(&bad), [false; 4]);
        let lift = lift_operator(&good);
        assert!((&lift * &lift).is_zero());
        let s = semidirect_product(&l, good.rep()).unwrap();
        let deformed = nijenhuis_deform(&s, &lift).unwrap();
        assert!(check_algebra(&deformed).passed());
        assert!(check_morphism(&lift, &deformed, &s).unwrap().passed());
    }

    #[test]
    fn weighted_rota_baxter_uses_weight() {
        let l = a2_leib();
        let r = Matrix::identity(2).scale(&ratio(1, 2));
        assert!(!check_rota_baxter(&l, &r, &int(0)).unwrap().passed());
        assert!(check_rota_baxter(&l, &r, &ratio(-1, 2)).unwrap().passed());
    }
}
