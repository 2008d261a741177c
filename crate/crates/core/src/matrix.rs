//! Dense matrices over the coefficient rings, and exact kernels over the
//! rationals by fraction-free (Bareiss) elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::scalars::{LaurentPoly, Rational, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &R) {
        self.data[i * self.cols + j].accumulate(v);
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &a.times(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.accumulate(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn plus(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn minus(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.times(c)).collect(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Rows `rs` and columns `cs`, in the given order.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Matrix<R> {
        let mut out = Matrix::zeros(rs.len(), cs.len());
        for (a, &i) in rs.iter().enumerate() {
            for (b, &j) in cs.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> R {
        let mut acc = R::zero();
        for i in 0..self.rows.min(self.cols) {
            acc.accumulate(self.get(i, i));
        }
        acc
    }
}

impl Matrix<LaurentPoly> {
    /// Specializes `x = x0` entrywise.
    pub fn eval(&self, x0: &Rational) -> Result<Matrix<Rational>> {
        self.try_map(|p| p.eval(x0))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Clears denominators and divides out the content, giving a primitive integer
/// row spanning the same line.
fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in &mut row {
            *v /= &g;
        }
    }
    row
}

/// Row echelon form of an integer matrix by Bareiss elimination. Every
/// division is exact, so entries stay integral and bounded by minors of the
/// input. Returns the nonzero echelon rows and their pivot columns.
pub fn bareiss_echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
        }
        prev = rows[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Accumulates rows of a linear system and reports its exact kernel.
///
/// Rows are folded in batch by batch; after each batch the echelon basis is
/// re-reduced and made primitive so coefficient growth stays bounded by a
/// single batch. Once the rank reaches the column count, further rows are
/// ignored.
#[derive(Clone, Debug)]
pub struct KernelAccumulator {
    cols: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl KernelAccumulator {
    pub fn new(cols: usize) -> Self {
        KernelAccumulator {
            cols,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.basis.len() == self.cols
    }

    pub fn add_rows<'a>(&mut self, rows: impl IntoIterator<Item = &'a [Rational]>) {
        if self.is_full_rank() {
            return;
        }
        let mut all = std::mem::take(&mut self.basis);
        let before = all.len();
        for row in rows {
            assert_eq!(row.len(), self.cols);
            if row.iter().any(|v| !v.is_zero()) {
                all.push(primitive_integer_row(row));
            }
        }
        if all.len() == before {
            self.basis = all;
            return;
        }
        let (echelon, pivots) = bareiss_echelon(all, self.cols);
        self.basis = echelon.into_iter().map(make_primitive).collect();
        self.pivots = pivots;
    }

    pub fn add_matrix(&mut self, m: &Matrix<Rational>) {
        self.add_rows((0..m.rows()).map(|i| m.row(i)));
    }

    /// A basis of the kernel, one vector per free column, each scaled to a
    /// primitive integer vector with positive leading entry.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Rational::zero(); self.cols];
            x[f] = Rational::one();
            for (k, &p) in self.pivots.iter().enumerate().rev() {
                let row = &self.basis[k];
                let mut s = Rational::zero();
                for j in p + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += Rational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[p] = -s / Rational::from_integer(row[p].clone());
            }
            out.push(normalize_vector(x));
        }
        out
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}

fn normalize_vector(v: Vec<Rational>) -> Vec<Rational> {
    let ints = primitive_integer_row(&v);
    let flip = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    ints.into_iter()
        .map(|c| Rational::from_integer(if flip { -c } else { c }))
        .collect()
}

pub fn rank(m: &Matrix<Rational>) -> usize {
    let mut acc = KernelAccumulator::new(m.cols());
    acc.add_matrix(m);
    acc.rank()
}

pub fn kernel(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let mut acc = KernelAccumulator::new(m.cols());
    acc.add_matrix(m);
    acc.kernel()
}
