//! Cell modules `M_X(λ) = I_n^{n-t} u_{n,t} ⊗ S^λ` and their radicals at
//! rational values of `x`.
//!
//! Basis vectors are pairs (cell diagram, standard tableau), flattened as
//! `diagram_index * f + tableau_index`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::Element;
use crate::diagrams::{cell_basis_diagrams, enumerate, Diagram, Family};
use crate::error::{Error, Result};
use crate::matrix::{KernelAccumulator, Matrix};
use crate::par::{self, Exec};
use crate::perm::Perm;
use crate::scalars::{LaurentPoly, Rational, Ring};
use crate::symgroup::{Partition, SpechtRep};

/// Diagrams acting per batch while the radical kernel is accumulated.
const KERNEL_BATCH: usize = 64;

#[derive(Clone, Debug)]
pub struct CellModule {
    family: Family,
    n: usize,
    t: usize,
    lambda: Partition,
    diagrams: Vec<Diagram>,
    specht: SpechtRep,
    perm_matrices: BTreeMap<Perm, Matrix<Rational>>,
}

impl CellModule {
    pub fn new(family: Family, n: usize, lambda: &Partition) -> Result<Self> {
        if family == Family::S && lambda.size() != n {
            return Err(Error::InvalidT {
                n,
                t: n.saturating_sub(lambda.size()),
            });
        }
        let t = n
            .checked_sub(lambda.size())
            .ok_or(Error::InvalidT { n, t: lambda.size() })?;
        let specht = SpechtRep::new(lambda);
        Ok(CellModule {
            family,
            n,
            t,
            lambda: lambda.clone(),
            diagrams: cell_basis_diagrams(family, n, t)?,
            perm_matrices: specht.all_perm_actions(),
            specht,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Rank of the cell diagrams, `n - t`.
    pub fn rank(&self) -> usize {
        self.n - self.t
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn specht(&self) -> &SpechtRep {
        &self.specht
    }

    pub fn specht_dim(&self) -> usize {
        self.specht.dim()
    }

    pub fn dim(&self) -> usize {
        self.diagrams.len() * self.specht.dim()
    }

    pub fn index(&self, diagram_index: usize, tableau_index: usize) -> usize {
        diagram_index * self.specht.dim() + tableau_index
    }

    /// Splits a flat basis index into (diagram index, tableau index).
    pub fn split_index(&self, idx: usize) -> (usize, usize) {
        (idx / self.specht.dim(), idx % self.specht.dim())
    }

    pub fn diagram_index(&self, d: &Diagram) -> Option<usize> {
        self.diagrams.binary_search(d).ok()
    }

    fn check_operand(&self, d: &Diagram) -> Result<()> {
        if d.n() != self.n {
            return Err(Error::StrandMismatch {
                left: d.n(),
                right: self.n,
            });
        }
        if !d.belongs_to(self.family) {
            return Err(Error::NotInFamily {
                diagram: d.to_text(),
                family: self.family.to_string(),
            });
        }
        Ok(())
    }

    /// `d` acting on basis vector `(a, j)`, as sparse `(index, coefficient)`
    /// pairs in increasing index order.
    pub fn act(&self, d: &Diagram, a: usize, j: usize) -> Result<Vec<(usize, LaurentPoly)>> {
        self.check_operand(d)?;
        Ok(self.act_unchecked(d, a, j))
    }

    fn act_unchecked(&self, d: &Diagram, a: usize, j: usize) -> Vec<(usize, LaurentPoly)> {
        let r = d.compose(&self.diagrams[a]).expect("strand counts checked");
        if r.diagram.rank() < self.rank() {
            return Vec::new();
        }
        let (b, sigma) = r.diagram.factor_noncrossing_unchecked();
        let bi = self
            .diagram_index(&b)
            .expect("noncrossing factor lies in the cell basis");
        let weight = LaurentPoly::x_pow(r.loops_total as i32);
        let rho = &self.perm_matrices[&sigma];
        (0..self.specht.dim())
            .filter(|&k| !rho.get(k, j).is_zero())
            .map(|k| {
                (
                    self.index(bi, k),
                    weight.times(&LaurentPoly::constant(rho.get(k, j).clone())),
                )
            })
            .collect()
    }

    /// Matrix of `d` on the module; column `c` is the image of basis vector `c`.
    pub fn action_matrix(&self, d: &Diagram) -> Result<Matrix<LaurentPoly>> {
        self.check_operand(d)?;
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for col in 0..dim {
            let (a, j) = self.split_index(col);
            for (row, c) in self.act_unchecked(d, a, j) {
                m.set(row, col, c);
            }
        }
        Ok(m)
    }

    /// Matrix of a linear combination of diagrams.
    pub fn element_matrix(&self, e: &Element) -> Result<Matrix<LaurentPoly>> {
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for (d, c) in e.terms() {
            acc = acc.plus(&self.action_matrix(d)?.scale(c));
        }
        Ok(acc)
    }

    /// Diagrams of the family with exactly the cell rank `n - t`.
    pub fn operand_diagrams(&self) -> Vec<Diagram> {
        enumerate(self.family, self.n)
            .into_iter()
            .filter(|d| d.rank() == self.rank())
            .collect()
    }

    /// Action matrices of every rank-`(n - t)` diagram of the family, in
    /// canonical diagram order.
    pub fn module_rep(&self, exec: Exec) -> Vec<(Diagram, Matrix<LaurentPoly>)> {
        let ops = self.operand_diagrams();
        par::map(exec, &ops, |d| {
            (d.clone(), self.action_matrix(d).expect("operand in family"))
        })
    }

    /// Basis of the joint kernel of all rank-`(n - t)` diagrams at `x = x0`.
    pub fn radical(&self, x0: &Rational, exec: Exec) -> Result<Vec<Vec<Rational>>> {
        if x0.is_zero() {
            return Err(Error::EvalAtZero);
        }
        let ops = self.operand_diagrams();
        let mut acc = KernelAccumulator::new(self.dim());
        for chunk in ops.chunks(KERNEL_BATCH) {
            if acc.is_full_rank() {
                break;
            }
            let mats = par::map(exec, chunk, |d| {
                self.action_matrix(d).expect("operand in family").eval(x0)
            });
            for m in mats {
                acc.add_matrix(&m?);
            }
        }
        Ok(acc.kernel())
    }

    pub fn radical_dim(&self, x0: &Rational, exec: Exec) -> Result<usize> {
        Ok(self.radical(x0, exec)?.len())
    }

    pub fn is_irreducible(&self, x0: &Rational, exec: Exec) -> Result<bool> {
        Ok(self.radical(x0, exec)?.is_empty())
    }
}

/// Number of partial matchings (involutions) of `t` points.
pub fn involution_count(t: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128);
    for k in 1..t {
        let c = b + k as u128 * a;
        a = b;
        b = c;
    }
    if t == 0 {
        1
    } else {
        b
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Number of cell diagrams: `C(n,t)·i(t)` for family A, `C(n,t)` for L.
pub fn cell_diagram_count(family: Family, n: usize, t: usize) -> u128 {
    match family {
        Family::A => binomial(n, t) * involution_count(t),
        Family::L => binomial(n, t),
        Family::S => u128::from(t == 0),
    }
}

/// Closed form for the module dimension.
pub fn module_dim_formula(family: Family, n: usize, lambda: &Partition) -> u128 {
    match n.checked_sub(lambda.size()) {
        Some(t) => cell_diagram_count(family, n, t) * lambda.dim(),
        None => 0,
    }
}
