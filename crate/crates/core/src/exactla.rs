//! Exact rational vectors, matrices and Gaussian elimination.
//!
//! Matrices use the column convention: the map represented by `M` sends the
//! basis vector `e_j` to `sum_i M[i][j] e_i`, and `a * b` is the composite
//! "apply `b`, then `a`".

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7"` or `"3/4"`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Writes `c body` as a term of a sum, folding the sign into the separator.
pub fn write_term(f: &mut impl fmt::Write, first: bool, c: &Scalar, body: Option<&str>) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let a = c.abs();
    match body {
        None => write!(f, "{a}"),
        Some(b) if a.is_one() => f.write_str(b),
        Some(b) => write!(f, "{a} {b}"),
    }
}

/// `Σ c_i s{i+1}` with zero terms omitted, e.g. `3/2 e1 - e2`; `0` when every coefficient vanishes.
pub fn format_lincomb(coeffs: &[Scalar], symbol: char) -> String {
    let mut s = String::new();
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            write_term(&mut s, first, c, Some(&format!("{symbol}{}", i + 1))).expect("string write");
            first = false;
        }
    }
    if first {
        s.push('0');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector {
            entries: vec![Scalar::zero(); dim],
        }
    }

    /// The `i`-th standard basis vector of dimension `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.entries[i] = Scalar::one();
        v
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Vector::new(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn set(&mut self, i: usize, value: Scalar) {
        self.entries[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector::new(self.entries.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (x, y) in self.entries.iter_mut().zip(&other.entries) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }

    /// Concatenation, used for direct sums `A ⊕ V` with `A` first.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Vector::new(entries)
    }

    pub fn slice(&self, start: usize, len: usize) -> Vector {
        Vector::new(self.entries[start..start + len].to_vec())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector::new(self.entries.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        Matrix::from_fn(rows.len(), cols, |i, j| int(rows[i].as_ref()[j]))
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("ragged rows"));
        }
        let n = rows.len();
        Matrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        assert!(columns.iter().all(|c| c.dim() == rows), "column dimension mismatch");
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// Applies the map to a vector. Panics on a dimension mismatch.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for j in 0..self.cols {
                let (a, b) = (self.get(i, j), &v[j]);
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            out.push(acc);
        }
        Vector::new(out)
    }

    pub fn try_apply(&self, v: &Vector) -> Result<Vector> {
        if self.cols != v.dim() {
            return Err(Error::shape(format!(
                "{}x{} matrix applied to a vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(self.apply(v))
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows, self.cols);
        Matrix::from_fn(r + other.rows, c + other.cols, |i, j| {
            match (i < r, j < c) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - r, j - c).clone(),
                _ => Scalar::zero(),
            }
        })
    }

    /// Row-reduced echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `None` for singular or non-square matrices.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.augmented(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// `[self | other]`.
    fn augmented(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// `a * b` with a shape check.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(Matrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = Scalar::zero();
        for k in 0..a.cols {
            let (x, y) = (a.get(i, k), b.get(k, j));
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        acc
    }))
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        mat_mul(self, rhs).expect("matrix shape mismatch")
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(&int(-1))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Solutions of `A x = b`: every `particular + sum t_k kernel[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

/// Solves `A x = b`. `Ok(None)` means the system is inconsistent.
pub fn solve_linear(a: &Matrix, b: &Vector) -> Result<Option<AffineSolution>> {
    if a.rows != b.dim() {
        return Err(Error::shape(format!(
            "{}x{} system with a right-hand side of dimension {}",
            a.rows,
            a.cols,
            b.dim()
        )));
    }
    let n = a.cols;
    let aug = Matrix::from_fn(a.rows, n + 1, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = Vector::zeros(n);
    for (row, &c) in pivots.iter().enumerate() {
        particular.set(c, r.get(row, n).clone());
    }
    Ok(Some(AffineSolution {
        particular,
        kernel: kernel_from_rref(&r, &pivots, n),
    }))
}

/// A basis of `{x : A x = 0}`, one vector per free column.
pub fn kernel_basis(a: &Matrix) -> Vec<Vector> {
    let (r, pivots) = a.rref();
    kernel_from_rref(&r, &pivots, a.cols)
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], n: usize) -> Vec<Vector> {
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = Vector::basis(n, free);
            for (row, &c) in pivots.iter().enumerate() {
                v.set(c, -r.get(row, free));
            }
            v
        })
        .collect()
}

/// A subspace of `K^n` kept in reduced echelon form, for membership tests.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    generators: Vec<Vector>,
    echelon: Vec<(usize, Vector)>,
}

impl Subspace {
    pub fn span(ambient: usize, generators: &[Vector]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != ambient) {
            return Err(Error::shape(format!(
                "generator of dimension {} in K^{ambient}",
                g.dim()
            )));
        }
        let m = Matrix::from_fn(generators.len(), ambient, |i, j| generators[i][j].clone());
        let (r, pivots) = m.rref();
        let echelon = pivots
            .iter()
            .enumerate()
            .map(|(row, &c)| (c, r.row(row)))
            .collect();
        Ok(Subspace {
            ambient,
            generators: generators.to_vec(),
            echelon,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.len()
    }

    /// True when the generators are linearly independent.
    pub fn is_basis(&self) -> bool {
        self.dim() == self.generators.len()
    }

    /// The remainder of `v` after reduction by the echelon rows; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim(), self.ambient, "vector outside the ambient space");
        let mut out = v.clone();
        for (c, row) in &self.echelon {
            let f = out[*c].clone();
            if !f.is_zero() {
                out.add_scaled(&-f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` with respect to the generators, when they form a basis and `v` lies in the span.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        if !self.is_basis() {
            return None;
        }
        let g = Matrix::from_columns(self.ambient, &self.generators);
        solve_linear(&g, v).ok().flatten().map(|s| s.particular)
    }
}
