//! Permutations in one-line notation, 0-based.
//!
//! Composition order is fixed crate-wide: `a.then(&b)` applies `a` first and
//! then `b`. This is the order in which permutation diagrams multiply when
//! stacked (`a` above `b`), so `perm_diagram(a) * perm_diagram(b) =
//! perm_diagram(a.then(b))`, and every matrix representation in this crate is
//! a homomorphism for this product.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub(crate) Vec<usize>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &p in &images {
            if p >= images.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
        }
        Ok(Perm(images))
    }

    /// Transposition of `i` and `j` (0-based) in `S_m`.
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(m);
        p.0.swap(i, j);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "permutation size mismatch");
        Perm(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Perm(inv)
    }

    /// Pads with fixed points up to size `m`.
    pub fn extend(&self, m: usize) -> Perm {
        assert!(m >= self.len());
        let mut v = self.0.clone();
        v.extend(self.len()..m);
        Perm(v)
    }

    pub fn inversions(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| v[i] > v[j])
            .count()
    }

    /// A reduced word `[i1, i2, ...]` with `self = s_i1.then(s_i2).then(...)`,
    /// where `s_i` swaps `i` and `i + 1`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.inversions());
        let mut cur = self.0.clone();
        // s_i.then(p) is p with positions i, i+1 swapped; peel off descents.
        'outer: loop {
            for i in 0..cur.len().saturating_sub(1) {
                if cur[i] > cur[i + 1] {
                    cur.swap(i, i + 1);
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// All of `S_m` in lexicographic order of the one-line notation.
    pub fn all(m: usize) -> Vec<Perm> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if prefix.len() == used.len() {
                out.push(Perm(prefix.clone()));
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn then_order() {
        let a = Perm(vec![1, 2, 0]);
        let b = Perm::transposition(3, 0, 1);
        // a first: 0 -> 1, then b: 1 -> 0
        assert_eq!(a.then(&b).apply(0), 0);
        assert_eq!(a.then(&a.inverse()), Perm::identity(3));
    }

    #[test]
    fn reduced_words_rebuild() {
        for p in Perm::all(4) {
            let w = p.reduced_word();
            assert_eq!(w.len(), p.inversions());
            let rebuilt = w
                .iter()
                .fold(Perm::identity(4), |acc, &i| acc.then(&Perm::transposition(4, i, i + 1)));
            assert_eq!(rebuilt, p);
        }
    }

    #[test]
    fn all_is_sorted() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Perm::all(0), vec![Perm::identity(0)]);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![2, 0]).is_err());
    }
}
