//! Partial 1-factor diagrams on two rows of `n` vertices.
//!
//! Endpoint `i` in `0..n` is top vertex `i + 1`; endpoint `n + j` is bottom
//! vertex `(j + 1)'`. A diagram stores the partner of every endpoint; a vertex
//! that is its own partner is isolated and carries a loop.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Which diagram set to work with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// All partial 1-factors (loops and horizontal arcs allowed).
    A,
    /// No horizontal arcs.
    L,
    /// Permutation diagrams: only vertical arcs.
    S,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::L => "L",
            Family::S => "S",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "L" | "l" => Ok(Family::L),
            "S" | "s" => Ok(Family::S),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// The three generator shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Horizontal arcs `(i, i+1)` and `(i', (i+1)')`.
    E,
    /// Loops at `i` and `i'`.
    U,
    /// Crossing `(i, (i+1)')`, `(i+1, i')`.
    G,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    partner: Vec<usize>,
}

/// Result of stacking two diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeResult {
    pub diagram: Diagram,
    /// Inner components of either kind.
    pub loops_total: usize,
    /// Inner components that are closed cycles.
    pub loops_cycles: usize,
    /// Inner components that are lines with a loop at each end.
    pub loops_looplines: usize,
}

#[derive(Clone, Copy)]
enum Reached {
    Top(usize),
    Bottom(usize),
    Loop,
}

impl Diagram {
    pub fn from_partner(n: usize, partner: Vec<usize>) -> Result<Self> {
        if partner.len() != 2 * n {
            return Err(Error::Parse(format!(
                "expected {} partner entries for n = {n}, got {}",
                2 * n,
                partner.len()
            )));
        }
        for (e, &p) in partner.iter().enumerate() {
            if p >= 2 * n || partner[p] != e {
                return Err(Error::Parse(format!(
                    "partner array is not an involution at endpoint {e}"
                )));
            }
        }
        Ok(Diagram { n, partner })
    }

    /// Builds a diagram from arcs between endpoint indices; unmentioned
    /// endpoints get loops.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut partner: Vec<usize> = (0..2 * n).collect();
        for &(a, b) in arcs {
            if a >= 2 * n || b >= 2 * n || a == b || partner[a] != a || partner[b] != b {
                return Err(Error::Parse(format!("bad arc ({a}, {b}) for n = {n}")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Ok(Diagram { n, partner })
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..n).map(|i| n + i).chain(0..n).collect();
        Diagram { n, partner }
    }

    /// Permutation diagram joining top `i` to bottom `sigma(i)'`; pads with
    /// straight verticals when `sigma` is smaller than `n`.
    pub fn from_perm(sigma: &Perm, n: usize) -> Self {
        assert!(sigma.len() <= n);
        let mut partner = vec![0; 2 * n];
        for i in 0..n {
            let j = if i < sigma.len() { sigma.apply(i) } else { i };
            partner[i] = n + j;
            partner[n + j] = i;
        }
        Diagram { n, partner }
    }

    /// `e_i`, `u_i` or `g_i` (1-based `i`).
    pub fn generator(kind: GeneratorKind, i: usize, n: usize) -> Result<Self> {
        let max = match kind {
            GeneratorKind::E | GeneratorKind::G => n.saturating_sub(1),
            GeneratorKind::U => n,
        };
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut d = Diagram::identity(n);
        let (a, b) = (i - 1, i);
        match kind {
            GeneratorKind::E => {
                d.link(a, b);
                d.link(n + a, n + b);
            }
            GeneratorKind::U => {
                d.link(a, a);
                d.link(n + a, n + a);
            }
            GeneratorKind::G => {
                d.link(a, n + b);
                d.link(b, n + a);
            }
        }
        Ok(d)
    }

    /// Straight verticals except loops at the last `t` top and bottom vertices.
    pub fn u_nt(n: usize, t: usize) -> Result<Self> {
        if t > n {
            return Err(Error::InvalidT { n, t });
        }
        let mut d = Diagram::identity(n);
        for i in n - t..n {
            d.link(i, i);
            d.link(n + i, n + i);
        }
        Ok(d)
    }

    fn link(&mut self, a: usize, b: usize) {
        self.partner[a] = b;
        self.partner[b] = a;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, e: usize) -> usize {
        self.partner[e]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.partner[e] == e
    }

    pub fn is_top(&self, e: usize) -> bool {
        e < self.n
    }

    pub fn is_vertical(&self, e: usize) -> bool {
        let p = self.partner[e];
        p != e && self.is_top(e) != self.is_top(p)
    }

    pub fn is_horizontal(&self, e: usize) -> bool {
        let p = self.partner[e];
        p != e && self.is_top(e) == self.is_top(p)
    }

    /// Number of vertical arcs (the propagating number).
    pub fn rank(&self) -> usize {
        (0..self.n).filter(|&i| self.is_vertical(i)).count()
    }

    pub fn has_horizontal_arcs(&self) -> bool {
        (0..2 * self.n).any(|e| self.is_horizontal(e))
    }

    pub fn has_loops(&self) -> bool {
        (0..2 * self.n).any(|e| self.is_loop(e))
    }

    pub fn belongs_to(&self, family: Family) -> bool {
        match family {
            Family::A => true,
            Family::L => !self.has_horizontal_arcs(),
            Family::S => !self.has_horizontal_arcs() && !self.has_loops(),
        }
    }

    /// Reads a permutation diagram back as a permutation.
    pub fn to_perm(&self) -> Option<Perm> {
        if self.rank() != self.n {
            return None;
        }
        Perm::from_images((0..self.n).map(|i| self.partner[i] - self.n).collect()).ok()
    }

    /// Row transpose, the involution `a -> a*`.
    pub fn star(&self) -> Diagram {
        let n = self.n;
        let swap = |e: usize| if e < n { e + n } else { e - n };
        let mut partner = vec![0; 2 * n];
        for e in 0..2 * n {
            partner[swap(e)] = swap(self.partner[e]);
        }
        Diagram { n, partner }
    }

    /// Adds top vertex `n+1` and bottom vertex `(n+1)'` joined by a vertical.
    pub fn embed(&self) -> Diagram {
        let n = self.n;
        let m = n + 1;
        let shift = |e: usize| if e < n { e } else { e + 1 };
        let mut partner = vec![0; 2 * m];
        for e in 0..2 * n {
            partner[shift(e)] = shift(self.partner[e]);
        }
        partner[n] = m + n;
        partner[m + n] = n;
        Diagram { n: m, partner }
    }

    /// Stacks `self` above `other` and returns the outer diagram together with
    /// the inner components, split into cycles and loop-ended lines.
    pub fn compose(&self, other: &Diagram) -> Result<ComposeResult> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(compose_unchecked(self, other))
    }

    /// Bottom row equals that of `u_nt(n, t)`: verticals land on `1'..(n-t)'`
    /// and the remaining bottom vertices are looped.
    pub fn has_cell_bottom(&self, t: usize) -> bool {
        let n = self.n;
        t <= n
            && (0..n).all(|j| {
                let e = n + j;
                if j < n - t {
                    self.partner[e] < n
                } else {
                    self.is_loop(e)
                }
            })
    }

    /// Top endpoints (ascending) that lie on vertical arcs.
    pub fn vertical_tops(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_vertical(i)).collect()
    }

    /// Writes `c` as `b * perm_diagram(sigma)` with `b` a cell diagram whose
    /// verticals do not cross. Requires `c` to have rank `n - t` and the bottom
    /// row of `u_nt(n, t)`.
    pub fn factor_noncrossing(&self, t: usize) -> Result<(Diagram, Perm)> {
        let n = self.n;
        if t > n {
            return Err(Error::InvalidT { n, t });
        }
        let r = self.rank();
        if r != n - t {
            return Err(Error::RankMismatch {
                expected: n - t,
                found: r,
            });
        }
        if !self.has_cell_bottom(t) {
            return Err(Error::BadBottomRow);
        }
        Ok(self.factor_noncrossing_unchecked())
    }

    pub(crate) fn factor_noncrossing_unchecked(&self) -> (Diagram, Perm) {
        let n = self.n;
        let tops = self.vertical_tops();
        let mut b = self.clone();
        let mut images = Vec::with_capacity(tops.len());
        for (k, &p) in tops.iter().enumerate() {
            images.push(self.partner[p] - n);
            b.link(p, n + k);
        }
        (b, Perm(images))
    }

    /// Canonical text form `n; p0 p1 ... p(2n-1)`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.partner.iter().map(|p| p.to_string()).collect();
        format!("{}; {}", self.n, parts.join(" "))
    }

    /// Recognizes the identity and the named generators, otherwise falls back
    /// to the text form wrapped in brackets.
    pub fn name(&self) -> String {
        let n = self.n;
        if *self == Diagram::identity(n) {
            return "id".into();
        }
        for (kind, tag) in [
            (GeneratorKind::E, "e"),
            (GeneratorKind::U, "u"),
            (GeneratorKind::G, "g"),
        ] {
            for i in 1..=n {
                if Diagram::generator(kind, i, n).is_ok_and(|g| g == *self) {
                    return format!("{tag}{i}");
                }
            }
        }
        format!("[{}]", self.to_text())
    }

    /// Two-row ASCII rendering: each vertex shows its partner label, `o` for a
    /// loop.
    pub fn ascii(&self) -> String {
        let n = self.n;
        let label = |e: usize| -> String {
            let p = self.partner[e];
            if p == e {
                "o".into()
            } else if p < n {
                format!("{}", p + 1)
            } else {
                format!("{}'", p - n + 1)
            }
        };
        let top: Vec<String> = (0..n).map(|i| format!("{:>3}", label(i))).collect();
        let bot: Vec<String> = (0..n).map(|j| format!("{:>3}", label(n + j))).collect();
        format!("{}\n{}", top.join(""), bot.join(""))
    }
}

fn trace(a: &Diagram, b: &Diagram, start_in_a: bool, start: usize, seen: &mut [bool]) -> Reached {
    let n = a.n;
    let (mut in_a, mut v) = (start_in_a, start);
    loop {
        if in_a {
            let p = a.partner[v];
            if p == v {
                return Reached::Loop;
            }
            if p < n {
                return Reached::Top(p);
            }
            let k = p - n;
            seen[k] = true;
            in_a = false;
            v = k;
        } else {
            let q = b.partner[v];
            if q == v {
                return Reached::Loop;
            }
            if q >= n {
                return Reached::Bottom(q - n);
            }
            seen[q] = true;
            in_a = true;
            v = n + q;
        }
    }
}

fn compose_unchecked(a: &Diagram, b: &Diagram) -> ComposeResult {
    const UNSET: usize = usize::MAX;
    let n = a.n;
    let mut partner = vec![UNSET; 2 * n];
    let mut seen = vec![false; n];

    for e in 0..2 * n {
        if partner[e] != UNSET {
            continue;
        }
        let reached = if e < n {
            trace(a, b, true, e, &mut seen)
        } else {
            trace(a, b, false, e, &mut seen)
        };
        let q = match reached {
            Reached::Top(p) => p,
            Reached::Bottom(j) => n + j,
            Reached::Loop => e,
        };
        partner[e] = q;
        partner[q] = e;
    }

    // Whatever middle vertex is still unseen lies on an inner component. Each
    // middle vertex has at most one arc from each side, so a component is a
    // cycle exactly when every vertex has both.
    let mut cycles = 0;
    let mut lines = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut closed = true;
        while let Some(k) = stack.pop() {
            let up = a.partner[n + k];
            let down = b.partner[k];
            for (nb, own) in [(up.wrapping_sub(n), up == n + k), (down, down == k)] {
                if own {
                    closed = false;
                } else if !seen[nb] {
                    seen[nb] = true;
                    stack.push(nb);
                }
            }
        }
        if closed {
            cycles += 1;
        } else {
            lines += 1;
        }
    }

    ComposeResult {
        diagram: Diagram { n, partner },
        loops_total: cycles + lines,
        loops_cycles: cycles,
        loops_looplines: lines,
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", self.to_text())
    }
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `n; p0 p1 ...`, got {s:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad strand count in {s:?}")))?;
        let partner = rest
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partner index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::from_partner(n, partner)
    }
}

/// JSON form: the bare partner array.
impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.partner.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let partner = Vec::<usize>::deserialize(d)?;
        if partner.len() % 2 != 0 {
            return Err(serde::de::Error::custom("odd partner array length"));
        }
        Diagram::from_partner(partner.len() / 2, partner).map_err(serde::de::Error::custom)
    }
}

/// Every diagram of the family on `n` strands, sorted by partner array.
pub fn enumerate(family: Family, n: usize) -> Vec<Diagram> {
    if family == Family::S {
        return Perm::all(n).iter().map(|p| Diagram::from_perm(p, n)).collect();
    }
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; 2 * n];
    involutions(&mut partner, 0, &mut |p| {
        let d = Diagram { n, partner: p.to_vec() };
        if d.belongs_to(family) {
            out.push(d);
        }
    });
    out.sort();
    out
}

fn involutions(partner: &mut [usize], from: usize, emit: &mut impl FnMut(&[usize])) {
    let Some(i) = (from..partner.len()).find(|&i| partner[i] == usize::MAX) else {
        emit(partner);
        return;
    };
    partner[i] = i;
    involutions(partner, i + 1, emit);
    for j in i + 1..partner.len() {
        if partner[j] == usize::MAX {
            partner[i] = j;
            partner[j] = i;
            involutions(partner, i + 1, emit);
            partner[j] = usize::MAX;
        }
    }
    partner[i] = usize::MAX;
}

/// All involutions of `points` (each point paired with another or fixed),
/// returned as partner maps restricted to `points`.
fn partial_matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let Some((&first, rest)) = points.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for mut m in partial_matchings(rest) {
        m.push((first, first));
        out.push(m);
    }
    for (idx, &other) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != idx)
            .map(|(_, &p)| p)
            .collect();
        for mut m in partial_matchings(&remaining) {
            m.push((first, other));
            out.push(m);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Rank-`(n - t)` diagrams with the bottom row of `u_nt(n, t)` and
/// noncrossing verticals: the diagram part of a cell-module basis.
pub fn cell_basis_diagrams(family: Family, n: usize, t: usize) -> Result<Vec<Diagram>> {
    if t > n {
        return Err(Error::InvalidT { n, t });
    }
    let mut out = Vec::new();
    for verticals in subsets(n, n - t) {
        let mut base: Vec<usize> = (0..2 * n).collect();
        for (k, &top) in verticals.iter().enumerate() {
            base[top] = n + k;
            base[n + k] = top;
        }
        let free: Vec<usize> = (0..n).filter(|i| !verticals.contains(i)).collect();
        let tops = match family {
            Family::A => partial_matchings(&free),
            Family::L => vec![free.iter().map(|&p| (p, p)).collect()],
            Family::S => {
                if t == 0 {
                    vec![Vec::new()]
                } else {
                    Vec::new()
                }
            }
        };
        for matching in tops {
            let mut partner = base.clone();
            for (p, q) in matching {
                partner[p] = q;
                partner[q] = p;
            }
            out.push(Diagram { n, partner });
        }
    }
    out.sort();
    Ok(out)
}

/// Closed-form size of the diagram set (the enumeration is the independent
/// check).
pub fn family_size_formula(family: Family, n: usize) -> u128 {
    let binom = |a: u128, b: u128| -> u128 {
        if b > a {
            return 0;
        }
        (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
    };
    let fact = |m: u128| (1..=m).product::<u128>();
    let n = n as u128;
    match family {
        Family::A => (0..=n)
            .map(|j| {
                let m = n - j;
                let brauer: u128 = (0..m).map(|i| 2 * m - 1 - 2 * i).product();
                binom(2 * n, 2 * j) * brauer
            })
            .sum(),
        Family::L => (0..=n).map(|j| binom(n, j) * binom(n, j) * fact(n - j)).sum(),
        Family::S => fact(n),
    }
}
