//! Formal linear combinations of diagrams and their products.
//!
//! One-parameter elements carry [`LaurentPoly`] coefficients (every inner
//! component weighs `x`); two-parameter elements carry [`BiPoly`]
//! coefficients (cycles weigh `x1`, loop-ended lines `x2`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::diagrams::{enumerate, ComposeResult, Diagram, Family, GeneratorKind};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::scalars::{BiPoly, LaurentPoly, Rational, Ring};

/// Coefficient rings that know how to weigh the inner components of a product.
pub trait LoopWeight: Ring {
    fn weight(r: &ComposeResult) -> Self;
}

impl LoopWeight for LaurentPoly {
    fn weight(r: &ComposeResult) -> Self {
        LaurentPoly::x_pow(r.loops_total as i32)
    }
}

impl LoopWeight for BiPoly {
    fn weight(r: &ComposeResult) -> Self {
        BiPoly::monomial(Rational::one(), r.loops_cycles as u32, r.loops_looplines as u32)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<C> {
    n: usize,
    coeffs: BTreeMap<Diagram, C>,
}

pub type Element = AlgebraElement<LaurentPoly>;
pub type TwoParamElement = AlgebraElement<BiPoly>;

impl<C: Ring> AlgebraElement<C> {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(d: Diagram) -> Self {
        Self::monomial(C::one(), d)
    }

    pub fn monomial(c: C, d: Diagram) -> Self {
        let mut e = Self::zero(d.n());
        e.add_term(d, &c);
        e
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(Diagram::identity(n))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (C, Diagram)>) -> Result<Self> {
        let mut e = Self::zero(n);
        for (c, d) in terms {
            if d.n() != n {
                return Err(Error::StrandMismatch { left: n, right: d.n() });
            }
            e.add_term(d, &c);
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &C)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, d: &Diagram) -> C {
        self.coeffs.get(d).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Diagram> {
        self.coeffs.keys()
    }

    fn add_term(&mut self, d: Diagram, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().accumulate(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(d.clone(), c);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scale(&C::one().negated()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        for (d, v) in &self.coeffs {
            out.add_term(d.clone(), &v.times(c));
        }
        out
    }

    /// Linear extension of the diagram involution.
    pub fn star(&self) -> Self {
        AlgebraElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(d, c)| (d.star(), c.clone())).collect(),
        }
    }

    /// Keeps only the diagrams accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&Diagram) -> bool) -> Self {
        AlgebraElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(d, _)| keep(d))
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<C: LoopWeight> AlgebraElement<C> {
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let r = a.compose(b)?;
                let c = ca.times(cb).times(&C::weight(&r));
                out.add_term(r.diagram, &c);
            }
        }
        Ok(out)
    }

    /// Product of several factors, left to right.
    pub fn product<'a>(n: usize, factors: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        C: 'a,
    {
        factors.into_iter().try_fold(Self::identity(n), |acc, f| acc.mul(f))
    }
}

impl TwoParamElement {
    /// Substitutes `x1 = x2 = x`.
    pub fn collapse(&self) -> Element {
        let mut out = Element::zero(self.n);
        for (d, c) in &self.coeffs {
            out.add_term(d.clone(), &c.collapse());
        }
        out
    }
}

fn check_n(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::StrandMismatch { left, right })
    }
}

/// One-parameter product.
pub fn multiply(a: &Element, b: &Element) -> Result<Element> {
    a.mul(b)
}

/// Two-parameter product.
pub fn multiply_two_param(a: &TwoParamElement, b: &TwoParamElement) -> Result<TwoParamElement> {
    a.mul(b)
}

/// Product in the rank-`m` quotient: inputs must consist of rank-`m`
/// diagrams, and product diagrams of smaller rank are dropped.
pub fn multiply_in_quotient<C: LoopWeight>(
    a: &AlgebraElement<C>,
    b: &AlgebraElement<C>,
    m: usize,
) -> Result<AlgebraElement<C>> {
    for d in a.support().chain(b.support()) {
        if d.rank() != m {
            return Err(Error::RankMismatch {
                expected: m,
                found: d.rank(),
            });
        }
    }
    Ok(a.mul(b)?.filter(|d| d.rank() >= m))
}

impl<C: Ring + fmt::Display> fmt::Display for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let name = d.name();
            let text = c.to_string();
            if c.is_one() {
                write!(f, "{name}")?;
            } else if text.contains(' ') {
                write!(f, "({text}) * {name}")?;
            } else {
                write!(f, "{text} * {name}")?;
            }
        }
        Ok(())
    }
}

impl<C: Ring + fmt::Display> fmt::Debug for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement(n={}, {self})", self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn gen(kind: GeneratorKind, i: usize, n: usize) -> Element {
    Element::basis(Diagram::generator(kind, i, n).expect("generator index in range"))
}

fn check(name: String, lhs: &Element, rhs: &Element) -> RelationCheck {
    RelationCheck {
        name,
        holds: lhs == rhs,
        detail: (lhs != rhs).then(|| format!("{lhs} != {rhs}")),
    }
}

/// Where a diagram not fixing `n` falls in the generator decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionCase {
    /// `n` and `n'` are joined, so the diagram lives on the first `n - 1` strands.
    Embedded,
    /// Neither or both of `n`, `n'` carry loops.
    NoneOrBoth,
    /// Exactly one of `n`, `n'` is looped, and the opposite row has another loop.
    OneWithOpposite,
    /// Exactly one of `n`, `n'` is looped, and the opposite row has no other loop.
    OneAlone,
}

pub fn extension_case(d: &Diagram) -> ExtensionCase {
    let n = d.n();
    assert!(n >= 1);
    let (top, bot) = (n - 1, 2 * n - 1);
    if d.partner(top) == bot {
        return ExtensionCase::Embedded;
    }
    match (d.is_loop(top), d.is_loop(bot)) {
        (true, true) | (false, false) => ExtensionCase::NoneOrBoth,
        (top_loop, _) => {
            let opposite = if top_loop { n..2 * n - 1 } else { 0..n - 1 };
            if opposite.into_iter().any(|e| d.is_loop(e)) {
                ExtensionCase::OneWithOpposite
            } else {
                ExtensionCase::OneAlone
            }
        }
    }
}

/// The four special diagrams used to decompose diagrams with exactly one
/// loop at `n` or `n'`, as explicit arc lists (`n >= 3`).
pub fn special_pictures(n: usize) -> Result<[Diagram; 4]> {
    if n < 3 {
        return Err(Error::IndexOutOfRange { index: n, n: 3 });
    }
    let b = |j: usize| n + j;
    let verticals = |k: usize| (0..k).map(|i| (i, b(i))).collect::<Vec<_>>();
    let mut d1 = verticals(n - 3);
    d1.extend([(n - 3, n - 2), (b(n - 2), b(n - 1))]);
    let mut d2 = verticals(n - 2);
    d2.push((n - 2, b(n - 1)));
    let mut d3 = verticals(n - 3);
    d3.extend([(n - 3, b(n - 1)), (b(n - 3), b(n - 2))]);
    let mut d4 = verticals(n - 2);
    d4.push((b(n - 2), b(n - 1)));
    Ok([
        Diagram::from_arcs(n, &d1)?,
        Diagram::from_arcs(n, &d2)?,
        Diagram::from_arcs(n, &d3)?,
        Diagram::from_arcs(n, &d4)?,
    ])
}

/// Classical Brauer relations, the loop relations between the last two
/// strands, and the generator words for the special pictures.
pub fn check_relations(n: usize) -> Result<Vec<RelationCheck>> {
    use GeneratorKind::{E, G, U};
    let mut out = Vec::new();
    let x = LaurentPoly::x();
    for i in 1..n {
        let e = gen(E, i, n);
        out.push(check(format!("e{i}^2 = x*e{i}"), &e.mul(&e)?, &e.scale(&x)));
        let s = gen(G, i, n);
        out.push(check(format!("g{i}^2 = id"), &s.mul(&s)?, &Element::identity(n)));
        if i + 1 < n {
            let e2 = gen(E, i + 1, n);
            let s2 = gen(G, i + 1, n);
            out.push(check(
                format!("e{i}*e{}*e{i} = e{i}", i + 1),
                &Element::product(n, [&e, &e2, &e])?,
                &e,
            ));
            out.push(check(
                format!("e{}*e{i}*e{} = e{}", i + 1, i + 1, i + 1),
                &Element::product(n, [&e2, &e, &e2])?,
                &e2,
            ));
            out.push(check(
                format!("g{i}*g{}*g{i} = g{}*g{i}*g{}", i + 1, i + 1, i + 1),
                &Element::product(n, [&s, &s2, &s])?,
                &Element::product(n, [&s2, &s, &s2])?,
            ));
        }
    }
    for i in 1..=n {
        let u = gen(U, i, n);
        out.push(check(format!("u{i}^2 = x*u{i}"), &u.mul(&u)?, &u.scale(&x)));
    }
    if n >= 2 {
        let (un, um) = (gen(U, n, n), gen(U, n - 1, n));
        let (em, gm) = (gen(E, n - 1, n), gen(G, n - 1, n));
        let m = n - 1;
        out.push(check(format!("u{n}*e{m} = u{m}*e{m}"), &un.mul(&em)?, &um.mul(&em)?));
        out.push(check(format!("g{m}*u{m} = u{n}*g{m}"), &gm.mul(&um)?, &un.mul(&gm)?));
        out.push(check(format!("u{m}*g{m} = g{m}*u{n}"), &um.mul(&gm)?, &gm.mul(&un)?));
    }
    if n >= 3 {
        let pics = special_pictures(n)?;
        let words: [(&str, Vec<Element>); 4] = [
            (
                "e{n-2}*u{n-1}*u{n-2}*e{n-1}",
                vec![gen(E, n - 2, n), gen(U, n - 1, n), gen(U, n - 2, n), gen(E, n - 1, n)],
            ),
            ("u{n}*g{n-1}", vec![gen(U, n, n), gen(G, n - 1, n)]),
            (
                "u{n}*e{n-1}*e{n-2}",
                vec![gen(U, n, n), gen(E, n - 1, n), gen(E, n - 2, n)],
            ),
            ("u{n-1}*e{n-1}", vec![gen(U, n - 1, n), gen(E, n - 1, n)]),
        ];
        let expected_case = [
            ExtensionCase::OneWithOpposite,
            ExtensionCase::OneWithOpposite,
            ExtensionCase::OneAlone,
            ExtensionCase::OneAlone,
        ];
        for (k, ((word, factors), pic)) in words.iter().zip(&pics).enumerate() {
            let prod = Element::product(n, factors)?;
            // The word reproduces the picture up to a power of x.
            let power = match prod.terms().collect::<Vec<_>>().as_slice() {
                [(d, c)] if *d == pic => c.as_monomial().filter(|(coef, _)| coef.is_one()).map(|(_, e)| e),
                _ => None,
            };
            out.push(RelationCheck {
                name: format!("d{} = {word}", k + 1),
                holds: power.is_some(),
                detail: Some(match power {
                    Some(0) => "exact".to_string(),
                    Some(p) => format!("up to x^{p}"),
                    None => format!("{prod} vs {}", pic.name()),
                }),
            });
            for (tag, d) in [("", pic.clone()), ("*", pic.star())] {
                let case = extension_case(&d);
                out.push(RelationCheck {
                    name: format!("d{}{tag} case", k + 1),
                    holds: case == expected_case[k],
                    detail: Some(format!("{case:?}")),
                });
            }
        }
    }
    Ok(out)
}

/// Diagrams reachable as products of generator diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub n: usize,
    pub reachable: Vec<Diagram>,
}

impl SpanReport {
    pub fn len(&self) -> usize {
        self.reachable.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reachable.is_empty()
    }

    pub fn contains(&self, d: &Diagram) -> bool {
        self.reachable.binary_search(d).is_ok()
    }

    /// Whether the reachable set is exactly the diagram set of `family`.
    pub fn equals_family(&self, family: Family) -> bool {
        self.reachable == enumerate(family, self.n)
    }
}

/// Closes the identity and the supports of `gens` under multiplication,
/// ignoring coefficients: a product of diagrams is always a nonzero monomial
/// times one diagram.
pub fn generated_subalgebra<C: Ring>(gens: &[AlgebraElement<C>], n: usize) -> Result<SpanReport> {
    let mut letters = BTreeSet::new();
    for g in gens {
        check_n(n, g.n())?;
        letters.extend(g.support().cloned());
    }
    let letters: Vec<Diagram> = letters.into_iter().collect();
    let mut seen = BTreeSet::from([Diagram::identity(n)]);
    let mut frontier = vec![Diagram::identity(n)];
    while let Some(a) = frontier.pop() {
        for g in &letters {
            let d = a.compose(g)?.diagram;
            if seen.insert(d.clone()) {
                frontier.push(d);
            }
        }
    }
    Ok(SpanReport {
        n,
        reachable: seen.into_iter().collect(),
    })
}

/// The symmetric group together with `extra` generators of the given kinds at
/// their top index.
pub fn symmetric_plus(n: usize, extra: &[GeneratorKind]) -> Vec<Element> {
    let mut gens: Vec<Element> = (1..n).map(|i| gen(GeneratorKind::G, i, n)).collect();
    for &k in extra {
        let i = match k {
            GeneratorKind::U => n,
            _ => n - 1,
        };
        if let Ok(d) = Diagram::generator(k, i, n) {
            gens.push(Element::basis(d));
        }
    }
    gens
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "one-param")]
    OneParam,
    #[serde(rename = "two-param")]
    TwoParam,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::OneParam => "one-param",
            Mode::TwoParam => "two-param",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-param" | "one" | "1" => Ok(Mode::OneParam),
            "two-param" | "two" | "2" => Ok(Mode::TwoParam),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// One product of basis diagrams: result index and loop exponents. In
/// one-parameter mode `loops.1` is always 0 and `loops.0` is the total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub product: usize,
    pub loops: (u32, u32),
}

pub const TABLE_VERSION: &str = "v1";
const TABLE_MAGIC: &str = "LOOPBRAUER-TABLE";

/// Structure constants over the canonical enumeration of a diagram set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    family: Family,
    n: usize,
    mode: Mode,
    basis: Vec<Diagram>,
    entries: Vec<Entry>,
}

impl MultTable {
    pub fn generate(family: Family, n: usize, mode: Mode, exec: Exec) -> Self {
        let basis = enumerate(family, n);
        let dim = basis.len();
        let rows = par::map_range(exec, dim, |i| {
            basis
                .iter()
                .map(|b| {
                    let r = basis[i].compose(b).expect("same strand count");
                    let product = basis.binary_search(&r.diagram).expect("family closed under products");
                    let loops = match mode {
                        Mode::OneParam => (r.loops_total as u32, 0),
                        Mode::TwoParam => (r.loops_cycles as u32, r.loops_looplines as u32),
                    };
                    Entry { product, loops }
                })
                .collect::<Vec<_>>()
        });
        MultTable {
            family,
            n,
            mode,
            basis,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn basis(&self) -> &[Diagram] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.basis.len() + j]
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.basis.binary_search(d).ok()
    }

    fn header(family: Family, n: usize, mode: Mode) -> String {
        format!("{TABLE_MAGIC} {TABLE_VERSION} {family} {n} {mode}")
    }

    pub fn to_cache_string(&self) -> String {
        let dim = self.basis.len();
        let mut s = Self::header(self.family, self.n, self.mode);
        s.push('\n');
        for (idx, e) in self.entries.iter().enumerate() {
            let (i, j) = (idx / dim, idx % dim);
            match self.mode {
                Mode::OneParam => s.push_str(&format!("{i} {j} -> {} {}\n", e.product, e.loops.0)),
                Mode::TwoParam => s.push_str(&format!("{i} {j} -> {} {} {}\n", e.product, e.loops.0, e.loops.1)),
            }
        }
        s
    }

    /// Parses a cache file body, which must match the expected key exactly.
    pub fn from_cache_str(text: &str, family: Family, n: usize, mode: Mode) -> Result<Self> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or_default();
        let expected = Self::header(family, n, mode);
        if header != expected {
            let mut words = header.split_whitespace();
            if words.next() != Some(TABLE_MAGIC) {
                return Err(Error::CorruptCache("missing table header".into()));
            }
            return Err(Error::CacheVersionMismatch {
                expected,
                found: header.to_string(),
            });
        }
        let basis = enumerate(family, n);
        let dim = basis.len();
        let mut entries = Vec::with_capacity(dim * dim);
        let corrupt = |line: &str| Error::CorruptCache(format!("bad entry line {line:?}"));
        for line in lines.filter(|l| !l.is_empty()) {
            let nums: Vec<usize> = line
                .split_whitespace()
                .filter(|w| *w != "->")
                .map(|w| w.parse().map_err(|_| corrupt(line)))
                .collect::<Result<_>>()?;
            let want = if mode == Mode::OneParam { 4 } else { 5 };
            if nums.len() != want {
                return Err(corrupt(line));
            }
            let idx = entries.len();
            if nums[0] != idx / dim.max(1) || nums[1] != idx % dim.max(1) || nums[2] >= dim {
                return Err(corrupt(line));
            }
            let loops = (nums[3] as u32, nums.get(4).copied().unwrap_or(0) as u32);
            entries.push(Entry {
                product: nums[2],
                loops,
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::CorruptCache(format!(
                "expected {} entries, found {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(MultTable {
            family,
            n,
            mode,
            basis,
            entries,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_cache_string())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path, family: Family, n: usize, mode: Mode) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_cache_str(&text, family, n, mode)
    }

    pub fn cache_path(dir: &Path, family: Family, n: usize, mode: Mode) -> PathBuf {
        dir.join(format!("table-{TABLE_VERSION}-{family}-{n}-{mode}.txt"))
    }

    /// Loads the table from `dir` if present, otherwise generates and stores it.
    /// A present but unreadable cache file is reported, not overwritten.
    pub fn cached(dir: &Path, family: Family, n: usize, mode: Mode, exec: Exec) -> Result<Self> {
        let path = Self::cache_path(dir, family, n, mode);
        if path.exists() {
            return Self::load(&path, family, n, mode);
        }
        let table = Self::generate(family, n, mode, exec);
        table.save(&path)?;
        Ok(table)
    }

    /// Number of triples `(a, b, c)` with `(ab)c != a(bc)`, loop exponents
    /// included.
    pub fn associativity_failures(&self, exec: Exec) -> usize {
        let dim = self.basis.len();
        let add = |p: (u32, u32), q: (u32, u32)| (p.0 + q.0, p.1 + q.1);
        par::map_range(exec, dim, |a| {
            let mut bad = 0;
            for b in 0..dim {
                let ab = self.get(a, b);
                for c in 0..dim {
                    let left = self.get(ab.product, c);
                    let bc = self.get(b, c);
                    let right = self.get(a, bc.product);
                    if left.product != right.product || add(ab.loops, left.loops) != add(bc.loops, right.loops) {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .into_iter()
        .sum()
    }

    /// Product of basis diagrams `i` and `j` as a one-parameter element.
    pub fn product(&self, i: usize, j: usize) -> Element {
        let e = self.get(i, j);
        Element::monomial(
            LaurentPoly::x_pow((e.loops.0 + e.loops.1) as i32),
            self.basis[e.product].clone(),
        )
    }
}
