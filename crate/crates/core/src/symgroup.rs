//! Partitions, standard tableaux and Specht modules of the symmetric group in
//! Young's seminormal form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::perm::Perm;
use crate::scalars::{rat, Rational};

/// A weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("not a partition: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Boxes as `(row, column)`, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    pub fn contents_sum(&self) -> i64 {
        self.cells().map(|(r, c)| c as i64 - r as i64).sum()
    }

    /// Rows whose last box can be removed.
    fn removable_rows(&self) -> impl Iterator<Item = usize> + '_ {
        let p = &self.0;
        (0..p.len()).filter(move |&i| i + 1 == p.len() || p[i] > p[i + 1])
    }

    fn remove_box(&self, row: usize) -> Partition {
        let mut q = self.0.clone();
        q[row] -= 1;
        if q[row] == 0 {
            q.pop();
        }
        Partition(q)
    }

    /// Shapes obtained by removing one box, in reverse-lexicographic order.
    pub fn inner_corners(&self) -> Vec<Partition> {
        let mut out: Vec<Partition> = self.removable_rows().map(|i| self.remove_box(i)).collect();
        out.reverse();
        out
    }

    /// Shapes obtained by adding one box, in reverse-lexicographic order.
    pub fn outer_corners(&self) -> Vec<Partition> {
        let p = &self.0;
        let mut out: Vec<Partition> = (0..p.len())
            .filter(|&i| i == 0 || p[i - 1] > p[i])
            .map(|i| {
                let mut q = p.clone();
                q[i] += 1;
                Partition(q)
            })
            .collect();
        let mut q = p.clone();
        q.push(1);
        out.push(Partition(q));
        out
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..first)
                .map(|c| self.0.iter().filter(|&&len| len > c).count())
                .collect(),
        )
    }

    /// `f^λ` by the hook-length formula.
    pub fn dim(&self) -> u128 {
        let conj = self.conjugate();
        let mut num: u128 = (1..=self.size() as u128).product();
        let mut den: u128 = 1;
        for (r, c) in self.cells() {
            let hook = (self.0[r] - c) + (conj.0[c] - r) - 1;
            den *= hook as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        num / den
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `2,1`, `(2,1)`, and `()`, `-` or the empty string for the empty
/// partition.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        let inner = inner.trim();
        if inner.is_empty() || inner == "-" || inner == "∅" {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `m` in reverse-lexicographic order.
pub fn partitions_of(m: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// A standard tableau stored as the `(row, column)` of each entry `0..m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tableau(Vec<(usize, usize)>);

impl Tableau {
    pub fn position(&self, entry: usize) -> (usize, usize) {
        self.0[entry]
    }

    pub fn content(&self, entry: usize) -> i64 {
        let (r, c) = self.0[entry];
        c as i64 - r as i64
    }

    fn swapped(&self, i: usize) -> Tableau {
        let mut t = self.0.clone();
        t.swap(i, i + 1);
        Tableau(t)
    }
}

/// Standard tableaux of shape `lambda`, built by placing the largest entry in
/// each removable corner in turn.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    if lambda.is_empty() {
        return vec![Tableau(Vec::new())];
    }
    let mut out = Vec::new();
    for row in lambda.removable_rows() {
        let col = lambda.0[row] - 1;
        for mut t in standard_tableaux(&lambda.remove_box(row)) {
            t.0.push((row, col));
            out.push(t);
        }
    }
    out
}

/// The Specht module `S^λ` with exact matrices for the adjacent transpositions.
#[derive(Clone, Debug)]
pub struct SpechtRep {
    lambda: Partition,
    tableaux: Vec<Tableau>,
    gens: Vec<Matrix<Rational>>,
}

impl SpechtRep {
    pub fn new(lambda: &Partition) -> Self {
        let tableaux = standard_tableaux(lambda);
        let index: BTreeMap<Vec<(usize, usize)>, usize> =
            tableaux.iter().enumerate().map(|(k, t)| (t.0.clone(), k)).collect();
        let m = lambda.size();
        let f = tableaux.len();
        let gens = (0..m.saturating_sub(1))
            .map(|i| {
                let mut g = Matrix::zeros(f, f);
                for (k, t) in tableaux.iter().enumerate() {
                    let (ra, ca) = t.position(i);
                    let (rb, cb) = t.position(i + 1);
                    if ra == rb {
                        g.set(k, k, Rational::one());
                    } else if ca == cb {
                        g.set(k, k, -Rational::one());
                    } else {
                        let r = Rational::new(1.into(), (t.content(i + 1) - t.content(i)).into());
                        let other = index[&t.swapped(i).0];
                        let coupling = if ra < rb {
                            Rational::one()
                        } else {
                            Rational::one() - &r * &r
                        };
                        g.set(k, k, r);
                        g.set(other, k, coupling);
                    }
                }
                g
            })
            .collect();
        SpechtRep {
            lambda: lambda.clone(),
            tableaux,
            gens,
        }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn degree(&self) -> usize {
        self.lambda.size()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    /// Matrix of `s_i`, swapping `i` and `i + 1` (0-based).
    pub fn generator(&self, i: usize) -> &Matrix<Rational> {
        &self.gens[i]
    }

    pub fn generators(&self) -> &[Matrix<Rational>] {
        &self.gens
    }

    /// `ρ(σ)` as the product of generator matrices along a reduced word, so
    /// that `ρ(a.then(b)) = ρ(a) ρ(b)`.
    pub fn perm_action(&self, sigma: &Perm) -> Matrix<Rational> {
        assert_eq!(sigma.len(), self.degree(), "permutation size mismatch");
        sigma
            .reduced_word()
            .iter()
            .fold(Matrix::identity(self.dim()), |acc, &i| acc.mul(&self.gens[i]))
    }

    /// Matrices for every permutation of the degree.
    pub fn all_perm_actions(&self) -> BTreeMap<Perm, Matrix<Rational>> {
        Perm::all(self.degree())
            .into_iter()
            .map(|p| {
                let m = self.perm_action(&p);
                (p, m)
            })
            .collect()
    }

    /// `Σ_{i<j} ρ((i j))`.
    pub fn transposition_class_sum(&self) -> Matrix<Rational> {
        let m = self.degree();
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for i in 0..m {
            for j in i + 1..m {
                acc = acc.plus(&self.perm_action(&Perm::transposition(m, i, j)));
            }
        }
        acc
    }
}

/// Shapes in a restriction or induction, with the dimension count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branching {
    pub shapes: Vec<Partition>,
    pub dim_sum: u128,
    pub expected: u128,
}

impl Branching {
    pub fn holds(&self) -> bool {
        self.dim_sum == self.expected
    }
}

pub fn branch_restrict(lambda: &Partition) -> Branching {
    let shapes = lambda.inner_corners();
    Branching {
        dim_sum: shapes.iter().map(Partition::dim).sum(),
        expected: if lambda.is_empty() { 0 } else { lambda.dim() },
        shapes,
    }
}

pub fn branch_induce(lambda: &Partition) -> Branching {
    let shapes = lambda.outer_corners();
    Branching {
        dim_sum: shapes.iter().map(Partition::dim).sum(),
        expected: (lambda.size() as u128 + 1) * lambda.dim(),
        shapes,
    }
}

/// Action of `sigma ∈ S_{m+1}` on the induced module
/// `F[S_{m+1}] ⊗_{S_m} S^λ`, with basis vectors `(w, j)` standing for
/// `τ_j ⊗ w`, `τ_j = (j m)` and `τ_m = id` (0-based `j` in `0..=m`).
///
/// Returns `(ρ(π) w, s)` where `s` is the unique coset index with
/// `σ τ_j = τ_s π`, `π` fixing `m`.
pub fn induced_action(rep: &SpechtRep, sigma: &Perm, w: &[Rational], j: usize) -> (Vec<Rational>, usize) {
    let m = rep.degree();
    assert_eq!(sigma.len(), m + 1);
    assert!(j <= m);
    let s = sigma.inverse().apply(j);
    let pi = Perm::transposition(m + 1, s, m)
        .then(sigma)
        .then(&Perm::transposition(m + 1, j, m));
    debug_assert_eq!(pi.apply(m), m);
    let small = Perm(pi.images()[..m].to_vec());
    (rep.perm_action(&small).mul_vec(w), s)
}

/// `contents_sum(λ)` as a rational, for matrix comparisons.
pub fn contents_scalar(lambda: &Partition) -> Rational {
    rat(lambda.contents_sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// χ^λ(μ) by removing rim hooks of the cycle lengths in `mu`.
    fn mn_character(lambda: &[usize], mu: &[usize]) -> i64 {
        let Some((&k, rest)) = mu.split_first() else {
            return 1;
        };
        // Beta-numbers: first-column hook lengths.
        let len = lambda.len();
        let beta: Vec<i64> = (0..len).map(|i| (lambda[i] + len - 1 - i) as i64).collect();
        let mut total = 0;
        for (i, &b) in beta.iter().enumerate() {
            let nb = b - k as i64;
            if nb < 0 || beta.contains(&nb) {
                continue;
            }
            let height = beta.iter().filter(|&&c| c > nb && c < b).count() as i64;
            let mut new_beta = beta.clone();
            new_beta[i] = nb;
            new_beta.sort_unstable_by(|a, b| b.cmp(a));
            let l = new_beta.len();
            let parts: Vec<usize> = (0..l)
                .map(|j| (new_beta[j] - (l - 1 - j) as i64) as usize)
                .filter(|&x| x > 0)
                .collect();
            let sign = if height % 2 == 0 { 1 } else { -1 };
            total += sign * mn_character(&parts, rest);
        }
        total
    }

    fn cycle_type(s: &Perm) -> Vec<usize> {
        let mut seen = vec![false; s.len()];
        let mut out = Vec::new();
        for i in 0..s.len() {
            if !seen[i] {
                let mut len = 0;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = s.apply(j);
                    len += 1;
                }
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p("3"), p("2,1"), p("1,1,1")]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(6).len(), 11);
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(p("(2,1)"), p("2,1"));
        assert_eq!(p("").to_string(), "()");
        assert_eq!(p("-"), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p("3,1").to_string(), "(3,1)");
    }

    #[test]
    fn contents_and_corners() {
        assert_eq!(p("4").contents_sum(), 6);
        assert_eq!(p("1,1,1,1").contents_sum(), -6);
        assert_eq!(p("2,1").contents_sum(), 0);
        assert_eq!(p("2,1").inner_corners(), vec![p("2"), p("1,1")]);
        assert_eq!(p("2,1").outer_corners(), vec![p("3,1"), p("2,2"), p("2,1,1")]);
        assert!(Partition::empty().inner_corners().is_empty());
        assert_eq!(Partition::empty().outer_corners(), vec![p("1")]);
        assert_eq!(p("3").inner_corners(), vec![p("2")]);
        assert_eq!(p("3").outer_corners(), vec![p("4"), p("3,1")]);
    }

    #[test]
    fn tableau_counts_match_hook_lengths() {
        for m in 0..=7 {
            for lam in partitions_of(m) {
                assert_eq!(standard_tableaux(&lam).len() as u128, lam.dim(), "{lam}");
            }
        }
        assert_eq!(p("2,2").dim(), 2);
        assert_eq!(p("2,1").dim(), 2);
    }

    #[test]
    fn coxeter_relations() {
        for m in 0..=5 {
            for lam in partitions_of(m) {
                let rep = SpechtRep::new(&lam);
                let id = Matrix::identity(rep.dim());
                let g = rep.generators();
                for i in 0..g.len() {
                    assert_eq!(g[i].mul(&g[i]), id);
                    for j in i + 1..g.len() {
                        if j == i + 1 {
                            assert_eq!(g[i].mul(&g[j]).mul(&g[i]), g[j].mul(&g[i]).mul(&g[j]));
                        } else {
                            assert_eq!(g[i].mul(&g[j]), g[j].mul(&g[i]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_row_is_trivial() {
        let rep = SpechtRep::new(&p("4"));
        assert_eq!(rep.dim(), 1);
        for g in rep.generators() {
            assert_eq!(*g, Matrix::identity(1));
        }
    }

    #[test]
    fn characters_match_rim_hook_rule() {
        for m in 1..=5 {
            for lam in partitions_of(m) {
                let rep = SpechtRep::new(&lam);
                for s in Perm::all(m) {
                    let tr = rep.perm_action(&s).trace();
                    assert_eq!(tr, rat(mn_character(lam.parts(), &cycle_type(&s))), "{lam} {s:?}");
                }
            }
        }
    }

    #[test]
    fn homomorphism_on_all_pairs() {
        let rep = SpechtRep::new(&p("2,1,1"));
        let acts = rep.all_perm_actions();
        for (a, ma) in &acts {
            for (b, mb) in &acts {
                assert_eq!(acts[&a.then(b)], ma.mul(mb));
            }
        }
    }

    #[test]
    fn class_sum_is_contents_scalar() {
        for m in 0..=5 {
            for lam in partitions_of(m) {
                let rep = SpechtRep::new(&lam);
                let expect = Matrix::identity(rep.dim()).scale(&contents_scalar(&lam));
                assert_eq!(rep.transposition_class_sum(), expect, "{lam}");
            }
        }
    }

    #[test]
    fn branching_dimensions() {
        let r = branch_restrict(&p("2,1"));
        assert_eq!(r.shapes, vec![p("2"), p("1,1")]);
        assert!(r.holds());
        let i = branch_induce(&p("1"));
        assert_eq!(i.shapes, vec![p("2"), p("1,1")]);
        assert!(i.holds());
        for m in 0..=6 {
            for lam in partitions_of(m) {
                assert!(branch_induce(&lam).holds());
                if m > 0 {
                    assert!(branch_restrict(&lam).holds());
                }
            }
        }
    }

    #[test]
    fn induced_model() {
        let lam = p("2,1");
        let rep = SpechtRep::new(&lam);
        let m = 3;
        let w = vec![rat(2), rat(-1)];
        let (v, s) = induced_action(&rep, &Perm::identity(m + 1), &w, 1);
        assert_eq!((v, s), (w.clone(), 1));
        for k in 0..=m {
            let (v, s) = induced_action(&rep, &Perm::transposition(m + 1, k, m), &w, m);
            assert_eq!((v, s), (w.clone(), k));
        }
        // a left action of (S_{m+1}, then): acting by a then b equals acting by b first then a
        let perms = Perm::all(m + 1);
        let basis: Vec<Vec<Rational>> = (0..rep.dim())
            .map(|i| (0..rep.dim()).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
            .collect();
        for a in perms.iter().step_by(5) {
            for b in perms.iter().step_by(3) {
                for e in &basis {
                    for j in 0..=m {
                        let (v1, s1) = induced_action(&rep, b, e, j);
                        let (v2, s2) = induced_action(&rep, a, &v1, s1);
                        let (v3, s3) = induced_action(&rep, &a.then(b), e, j);
                        assert_eq!((v2, s2), (v3, s3));
                    }
                }
            }
        }
    }
}
