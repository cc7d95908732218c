//! The three worked 2-dimensional examples, shipped as constructors and as DSL text.
//!
//! All three share the twist `α e1 = -e1`, `α e2 = e1 + e2`.

use crate::exactla::{int, Matrix};
use crate::homcore::{HomAlgebra, StructureTensor};

/// DSL source defining `A2assoc`, `A2leib` and `A2poisson`.
pub const SOURCE: &str = include_str!("../fixtures/examples.hla");

pub fn twist() -> Matrix {
    Matrix::from_int_rows(&[[-1, 1], [0, 1]])
}

/// `e1·e2 = e2·e1 = -e1`, `e2·e2 = e1 + e2`.
pub fn dot() -> StructureTensor {
    let mut t = StructureTensor::zero(2);
    t.set(0, 1, 0, int(-1));
    t.set(1, 0, 0, int(-1));
    t.set(1, 1, 0, int(1));
    t.set(1, 1, 1, int(1));
    t
}

/// `[e1, e2] = e1 = -[e2, e1]`.
pub fn bracket() -> StructureTensor {
    let mut t = StructureTensor::zero(2);
    t.set(0, 1, 0, int(1));
    t.set(1, 0, 0, int(-1));
    t
}

pub fn a2_assoc() -> HomAlgebra {
    HomAlgebra::associative(dot(), twist()).expect("valid fixture")
}

pub fn a2_leib() -> HomAlgebra {
    HomAlgebra::leibniz(bracket(), twist()).expect("valid fixture")
}

pub fn a2_poisson() -> HomAlgebra {
    HomAlgebra::poisson(dot(), bracket(), twist()).expect("valid fixture")
}
