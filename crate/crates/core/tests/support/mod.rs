//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use homalg::exactla::{int, ratio, Matrix, Scalar};
use homalg::homcore::{check_algebra, check_morphism, yau_twist, HomAlgebra, Kind, StructureTensor};
use homalg::homio::{Document, Item};
use homalg::homrep::{pullback_representation, regular_representation, Action, ActionTensor, Representation};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero-biased rational from {-2, -1, -1/2, 0, 1/2, 1, 2, 3}.
pub fn small_scalar(r: &mut TestRng) -> Scalar {
    [int(-2), int(-1), ratio(-1, 2), int(0), ratio(1, 2), int(1), int(2), int(3)]
        .choose(r)
        .expect("nonempty")
        .clone()
}

pub fn nonzero_scalar(r: &mut TestRng) -> Scalar {
    loop {
        let s = small_scalar(r);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A matrix whose entries are zero with probability `1 - density`.
pub fn sparse_matrix(r: &mut TestRng, rows: usize, cols: usize, density: f64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        if r.gen_bool(density) {
            small_scalar(r)
        } else {
            Scalar::zero()
        }
    })
}

pub fn random_invertible(r: &mut TestRng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| int(r.gen_range(-2..=2)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

pub fn sparse_tensor(r: &mut TestRng, dim: usize, density: f64) -> StructureTensor {
    let mut t = StructureTensor::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if r.gen_bool(density) {
                    t.set(i, j, k, small_scalar(r));
                }
            }
        }
    }
    t
}

/// An algebra with arbitrary structure constants; almost never satisfies its identities.
pub fn random_algebra(r: &mut TestRng, kind: Kind, dim: usize) -> HomAlgebra {
    let dot = kind.has_dot().then(|| sparse_tensor(r, dim, 0.3));
    let bracket = kind.has_bracket().then(|| sparse_tensor(r, dim, 0.3));
    HomAlgebra::new(kind, dot, bracket, sparse_matrix(r, dim, dim, 0.5)).expect("shapes agree")
}

/// Transports the structure along `p`, whose columns are the new basis.
pub fn change_basis(alg: &HomAlgebra, p: &Matrix) -> HomAlgebra {
    let q = p.inverse().expect("invertible");
    alg.map_tensors(|_, t| t.transform(p, p, &q))
        .with_alpha(&(&q * alg.alpha()) * p)
        .expect("square")
}

/// Transports a representation along `p` on the base and `q` on the carrier.
pub fn change_rep_basis(rep: &Representation, p: &Matrix, q: &Matrix) -> Representation {
    let qi = q.inverse().expect("invertible");
    let m = rep.carrier_dim();
    rep.map_actions(|_, t| {
        let mats = t.precompose(p).mats().iter().map(|a| &(&qi * a) * q).collect();
        ActionTensor::new(m, mats).expect("shapes agree")
    })
    .and_then(|r| r.with_phi(&(&qi * rep.phi()) * q))
    .expect("shapes agree")
}

fn tensor(dim: usize, entries: &[(usize, usize, usize, i64)]) -> StructureTensor {
    let mut t = StructureTensor::zero(dim);
    for &(i, j, k, c) in entries {
        t.set(i, j, k, int(c));
    }
    t
}

fn commutator(dot: &StructureTensor) -> StructureTensor {
    let n = dot.dim();
    StructureTensor::from_products(n, |i, j| &dot.basis_product(i, j) - &dot.basis_product(j, i))
}

/// Untwisted associative algebras (α = id) with a few endomorphisms each.
fn associative_seeds(r: &mut TestRng) -> Vec<(StructureTensor, Vec<Matrix>)> {
    let c = nonzero_scalar(r);
    let d = nonzero_scalar(r);
    let diag = |v: Vec<Scalar>| {
        let n = v.len();
        Matrix::from_fn(n, n, |i, j| if i == j { v[i].clone() } else { Scalar::zero() })
    };
    vec![
        // A field.
        (tensor(1, &[(0, 0, 0, 1)]), vec![Matrix::identity(1), Matrix::zeros(1, 1)]),
        // Dual numbers: unit e1, e2^2 = 0.
        (
            tensor(2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]),
            vec![Matrix::identity(2), diag(vec![int(1), c.clone()])],
        ),
        // Two orthogonal idempotents.
        (
            tensor(2, &[(0, 0, 0, 1), (1, 1, 1, 1)]),
            vec![
                Matrix::identity(2),
                Matrix::from_int_rows(&[[0, 1], [1, 0]]),
                Matrix::from_int_rows(&[[1, 0], [0, 0]]),
            ],
        ),
        // Upper triangular 2x2 matrices in the basis E11, E12, E22.
        (
            tensor(3, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)]),
            vec![Matrix::identity(3), diag(vec![int(1), d.clone(), int(1)])],
        ),
        // x, x^2, x^3 in k[x]/(x^4).
        (
            tensor(3, &[(0, 0, 1, 1), (0, 1, 2, 1), (1, 0, 2, 1)]),
            vec![Matrix::identity(3), diag(vec![c.clone(), &c * &c, &(&c * &c) * &c])],
        ),
    ]
}

/// Untwisted Leibniz brackets with endomorphisms.
fn leibniz_seeds(r: &mut TestRng) -> Vec<(StructureTensor, Vec<Matrix>)> {
    let (a, b) = (nonzero_scalar(r), small_scalar(r));
    let c = nonzero_scalar(r);
    vec![
        // Non-abelian 2-dimensional Lie algebra.
        (
            tensor(2, &[(0, 1, 0, 1), (1, 0, 0, -1)]),
            vec![
                Matrix::identity(2),
                Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![int(0), int(1)]]).expect("2x2"),
            ],
        ),
        // Heisenberg algebra.
        (
            tensor(3, &[(0, 1, 2, 1), (1, 0, 2, -1)]),
            vec![
                Matrix::identity(3),
                Matrix::from_fn(3, 3, |i, j| match (i, j) {
                    (0, 0) => a.clone(),
                    (1, 1) => c.clone(),
                    (2, 2) => &a * &c,
                    _ => Scalar::zero(),
                }),
            ],
        ),
        // A non-Lie Leibniz algebra: [e2, e2] = e1.
        (
            tensor(2, &[(1, 1, 0, 1)]),
            vec![
                Matrix::identity(2),
                Matrix::from_rows(vec![vec![&c * &c, b.clone()], vec![int(0), c.clone()]]).expect("2x2"),
            ],
        ),
    ]
}

/// A valid multiplicative algebra of dimension at most 3: a Yau twist of an untwisted
/// seed by one of its endomorphisms, in a random basis.
///
/// Returns the algebra with a list of its self-morphisms.
pub fn valid_algebra(r: &mut TestRng, kind: Kind) -> (HomAlgebra, Vec<Matrix>) {
    let (dot, bracket, endos) = match kind {
        Kind::Associative => {
            let (t, e) = associative_seeds(r).choose(r).expect("nonempty").clone();
            (Some(t), None, e)
        }
        Kind::Leibniz => {
            let (t, e) = leibniz_seeds(r).choose(r).expect("nonempty").clone();
            (None, Some(t), e)
        }
        Kind::Poisson => {
            let (t, e) = associative_seeds(r).choose(r).expect("nonempty").clone();
            let b = commutator(&t);
            (Some(t), Some(b), e)
        }
    };
    let n = endos[0].rows();
    let base = HomAlgebra::new(kind, dot, bracket, Matrix::identity(n)).expect("shapes agree");
    let beta = endos.choose(r).expect("nonempty").clone();
    let twisted = yau_twist(&base, &beta).expect("seed endomorphism");
    // Endomorphisms commuting with the chosen one stay self-morphisms of the twist.
    let mut morphisms: Vec<Matrix> = endos
        .iter()
        .filter(|e| (*e * &beta) == (&beta * *e))
        .cloned()
        .collect();
    morphisms.push(Matrix::zeros(n, n));
    let p = random_invertible(r, n);
    let q = p.inverse().expect("invertible");
    let alg = change_basis(&twisted, &p);
    let morphisms = morphisms.iter().map(|m| &(&q * m) * &p).collect::<Vec<_>>();
    debug_assert!(check_algebra(&alg).passed());
    debug_assert!(morphisms
        .iter()
        .all(|m| check_morphism(m, &alg, &alg).map(|c| c.passed()).unwrap_or(false)));
    (alg, morphisms)
}

pub fn random_kind(r: &mut TestRng) -> Kind {
    *[Kind::Associative, Kind::Leibniz, Kind::Poisson].choose(r).expect("nonempty")
}

/// A representation of `alg` known to satisfy every identity: the regular one, a pullback
/// along a self-morphism, or zero actions with any twist, in a random carrier basis.
pub fn valid_representation(r: &mut TestRng, alg: &HomAlgebra, morphisms: &[Matrix]) -> Representation {
    let n = alg.dim();
    let rep = match r.gen_range(0..3) {
        0 => regular_representation(alg),
        1 => {
            let f = morphisms.choose(r).expect("nonempty");
            pullback_representation(f, alg, alg).expect("self-morphism")
        }
        _ => {
            let m = r.gen_range(1..=3);
            Representation::zero(alg.kind(), n, sparse_matrix(r, m, m, 0.5)).expect("shapes agree")
        }
    };
    let q = random_invertible(r, rep.carrier_dim());
    change_rep_basis(&rep, &Matrix::identity(n), &q)
}

/// A representation with arbitrary entries, carrier dimension at most 3.
pub fn random_representation(r: &mut TestRng, alg: &HomAlgebra) -> Representation {
    let n = alg.dim();
    let m = r.gen_range(1..=3);
    let phi = sparse_matrix(r, m, m, 0.5);
    Representation::from_actions(alg.kind(), n, phi, |_| {
        ActionTensor::new(m, (0..n).map(|_| sparse_matrix(r, m, m, 0.25)).collect()).expect("shapes agree")
    })
    .expect("shapes agree")
}

/// One entry of a representation: of `phi`, or of the matrix of an action at a base basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Phi(usize, usize),
    Action(Action, usize, usize, usize),
}

pub fn random_slot(r: &mut TestRng, rep: &Representation) -> Slot {
    let m = rep.carrier_dim();
    let (row, col) = (r.gen_range(0..m), r.gen_range(0..m));
    if r.gen_bool(0.2) {
        return Slot::Phi(row, col);
    }
    let present: Vec<Action> = rep.actions().map(|(a, _)| a).collect();
    let a = *present.choose(r).expect("nonempty");
    Slot::Action(a, r.gen_range(0..rep.base_dim()), row, col)
}

/// Adds `delta` to one entry.
pub fn perturb(rep: &Representation, slot: Slot, delta: &Scalar) -> Representation {
    match slot {
        Slot::Phi(row, col) => {
            let mut phi = rep.phi().clone();
            phi.set(row, col, phi.get(row, col) + delta);
            rep.with_phi(phi).expect("same shape")
        }
        Slot::Action(a, i, row, col) => {
            let mut t = rep.action(a).expect("present").clone();
            let v = t.basis(i).get(row, col) + delta;
            t.set_entry(i, row, col, v);
            rep.with_action(a, t).expect("same shape")
        }
    }
}

/// Adds a random nonzero amount to one random entry.
pub fn corrupt(r: &mut TestRng, rep: &Representation) -> Representation {
    let slot = random_slot(r, rep);
    let delta = nonzero_scalar(r);
    perturb(rep, slot, &delta)
}

/// A document of random algebras, representations and maps with unique names.
pub fn random_document(r: &mut TestRng) -> Document {
    let mut doc = Document::new();
    let mut algebras: Vec<(String, usize, Kind)> = Vec::new();
    let mut spaces: Vec<(String, usize)> = Vec::new();
    let count = r.gen_range(0..=5);
    for k in 0..count {
        let choice = if algebras.is_empty() { 0 } else { r.gen_range(0..3) };
        match choice {
            0 => {
                let kind = random_kind(r);
                let dim = r.gen_range(1..=3);
                let name = format!("A{k}");
                doc.push(name.clone(), Item::Algebra(random_algebra(r, kind, dim))).expect("fresh name");
                algebras.push((name.clone(), dim, kind));
                spaces.push((name, dim));
            }
            1 => {
                let (base, dim, kind) = algebras.choose(r).expect("nonempty").clone();
                let alg = random_algebra(r, kind, dim);
                let rep = random_representation(r, &alg);
                let name = format!("V{k}");
                let m = rep.carrier_dim();
                doc.push(name.clone(), Item::Representation { base, rep }).expect("fresh name");
                spaces.push((name, m));
            }
            _ => {
                let (src, sd) = spaces.choose(r).expect("nonempty").clone();
                let (dst, dd) = spaces.choose(r).expect("nonempty").clone();
                let matrix = sparse_matrix(r, dd, sd, 0.5);
                doc.push(format!("f{k}"), Item::Map { src, dst, matrix }).expect("fresh name");
            }
        }
    }
    doc
}

pub fn any_valid_algebra(r: &mut TestRng) -> (HomAlgebra, Vec<Matrix>) {
    let kind = random_kind(r);
    valid_algebra(r, kind)
}

/// A random algebra of the given kind and dimension 1 to 3.
pub fn random_small_algebra(r: &mut TestRng, kind: Kind) -> HomAlgebra {
    let dim = r.gen_range(1..=3);
    random_algebra(r, kind, dim)
}
