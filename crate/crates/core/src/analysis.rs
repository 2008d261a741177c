//! Checks of the structural theorems: restriction and induction of cell
//! modules, central-element identities, the content equation for degenerate
//! parameters, and radical scans over sample values of `x`.

use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Element, RelationCheck};
use crate::cellmod::CellModule;
use crate::diagrams::{Diagram, Family, GeneratorKind};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::par::{self, Exec};
use crate::perm::Perm;
use crate::scalars::{format_rational, LaurentPoly, Rational};
use crate::symgroup::{partitions_of, Partition};

fn module_dim(family: Family, n: usize, lambda: &Partition) -> Result<usize> {
    Ok(CellModule::new(family, n, lambda)?.dim())
}

/// Generators of the copy of the algebra on the first `n - 1` strands.
pub fn embedded_generators(family: Family, n: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        out.push(Diagram::generator(GeneratorKind::G, i, n).expect("index in range"));
        if family == Family::A {
            out.push(Diagram::generator(GeneratorKind::E, i, n).expect("index in range"));
        }
    }
    for j in 1..n {
        out.push(Diagram::generator(GeneratorKind::U, j, n).expect("index in range"));
    }
    out
}

/// Drops the last top and bottom vertex, which must either both carry loops
/// or be joined to each other.
pub fn remove_last_strand(d: &Diagram) -> Option<Diagram> {
    let n = d.n();
    let (top, bot) = (n.checked_sub(1)?, 2 * n - 1);
    let looped = d.is_loop(top) && d.is_loop(bot);
    if !looped && d.partner(top) != bot {
        return None;
    }
    let shrink = |e: usize| if e < n { e } else { e - 1 };
    let partner = (0..2 * n)
        .filter(|&e| e != top && e != bot)
        .map(|e| shrink(d.partner(e)))
        .collect();
    Diagram::from_partner(n - 1, partner).ok()
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub lambda: Partition,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchingReport {
    pub family: Family,
    pub n: usize,
    pub t: usize,
    pub lambda: Partition,
    pub dim: usize,
    /// Shapes `α ⊏ λ` followed by `α = λ` (the latter only when `t >= 1`).
    pub sub_terms: Vec<Term>,
    pub quotient_terms: Vec<Term>,
    /// Basis vectors with top vertex `n` on a vertical.
    pub vertical_block: usize,
    /// Basis vectors with a loop at top vertex `n`.
    pub loop_block: usize,
    pub dimension_holds: bool,
    pub blocks_match: bool,
    pub witness_invariant: bool,
    pub loop_block_intertwines: bool,
}

impl BranchingReport {
    pub fn holds(&self) -> bool {
        self.dimension_holds && self.blocks_match && self.witness_invariant && self.loop_block_intertwines
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_terms.iter().map(|t| t.dim).sum()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_terms.iter().map(|t| t.dim).sum()
    }
}

/// Restriction of `M_{X_n}(λ)` to the algebra on the first `n - 1` strands.
pub fn branching_check(family: Family, n: usize, lambda: &Partition) -> Result<BranchingReport> {
    if n == 0 || lambda.size() > n {
        return Err(Error::InvalidT {
            n,
            t: n.saturating_sub(lambda.size()),
        });
    }
    let module = CellModule::new(family, n, lambda)?;
    let t = module.t();
    let mut sub_terms = Vec::new();
    for alpha in lambda.inner_corners() {
        sub_terms.push(Term {
            dim: module_dim(family, n - 1, &alpha)?,
            lambda: alpha,
        });
    }
    let mut loop_terms = 0;
    if t >= 1 {
        loop_terms = module_dim(family, n - 1, lambda)?;
        sub_terms.push(Term {
            lambda: lambda.clone(),
            dim: loop_terms,
        });
    }
    let mut quotient_terms = Vec::new();
    if family == Family::A && t >= 2 {
        for beta in lambda.outer_corners() {
            quotient_terms.push(Term {
                dim: module_dim(family, n - 1, &beta)?,
                lambda: beta,
            });
        }
    }

    let last = n - 1;
    let f = module.specht_dim();
    let in_witness: Vec<bool> = (0..module.dim())
        .map(|idx| {
            let d = &module.diagrams()[module.split_index(idx).0];
            d.is_vertical(last) || d.is_loop(last)
        })
        .collect();
    let vertical_block = module.diagrams().iter().filter(|d| d.is_vertical(last)).count() * f;
    let loop_block = module.diagrams().iter().filter(|d| d.is_loop(last)).count() * f;
    let vertical_expected: usize = lambda
        .inner_corners()
        .iter()
        .map(|a| module_dim(family, n - 1, a))
        .sum::<Result<usize>>()?;

    let gens = embedded_generators(family, n);
    let mut witness_invariant = true;
    for g in &gens {
        let m = module.action_matrix(g)?;
        for col in (0..module.dim()).filter(|&c| in_witness[c]) {
            if (0..module.dim()).any(|row| !in_witness[row] && !m.get(row, col).is_zero()) {
                witness_invariant = false;
            }
        }
    }

    // The loop block is a copy of M_{X_{n-1}}(λ) with the last strand removed.
    let mut loop_block_intertwines = true;
    if t >= 1 {
        let smaller = CellModule::new(family, n - 1, lambda)?;
        let to_small: Vec<Option<usize>> = module
            .diagrams()
            .iter()
            .map(|d| {
                if d.is_loop(last) {
                    remove_last_strand(d).and_then(|s| smaller.diagram_index(&s))
                } else {
                    None
                }
            })
            .collect();
        if to_small.iter().flatten().count() != smaller.diagrams().len() {
            loop_block_intertwines = false;
        }
        for g in &gens {
            let Some(g_small) = remove_last_strand(g) else {
                loop_block_intertwines = false;
                continue;
            };
            for (a, small_a) in to_small.iter().enumerate() {
                let Some(small_a) = small_a else { continue };
                for j in 0..f {
                    let big: Vec<(Option<usize>, usize, LaurentPoly)> = module
                        .act(g, a, j)?
                        .into_iter()
                        .map(|(idx, c)| {
                            let (b, k) = module.split_index(idx);
                            (to_small[b], k, c)
                        })
                        .collect();
                    let small = smaller.act(&g_small, *small_a, j)?;
                    let mapped: Option<Vec<(usize, LaurentPoly)>> = big
                        .into_iter()
                        .map(|(b, k, c)| b.map(|b| (smaller.index(b, k), c)))
                        .collect();
                    match mapped {
                        Some(mut mapped) => {
                            mapped.sort_by_key(|(i, _)| *i);
                            if mapped != small {
                                loop_block_intertwines = false;
                            }
                        }
                        None => loop_block_intertwines = false,
                    }
                }
            }
        }
    }

    let sub_dim: usize = sub_terms.iter().map(|t| t.dim).sum();
    let quotient_dim: usize = quotient_terms.iter().map(|t| t.dim).sum();
    Ok(BranchingReport {
        family,
        n,
        t,
        lambda: lambda.clone(),
        dim: module.dim(),
        dimension_holds: module.dim() == sub_dim + quotient_dim,
        blocks_match: vertical_block == vertical_expected
            && loop_block == loop_terms
            && vertical_block + loop_block == sub_dim,
        sub_terms,
        quotient_terms,
        vertical_block,
        loop_block,
        witness_invariant,
        loop_block_intertwines,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndResReport {
    pub family: Family,
    pub n: usize,
    pub lambda: Partition,
    /// `dim M_{X_{n+2}}(λ)`.
    pub restricted_dim: usize,
    pub sub_dim: usize,
    pub quotient_dim: usize,
    pub dimension_holds: bool,
    pub witness_invariant: bool,
}

impl IndResReport {
    pub fn holds(&self) -> bool {
        self.dimension_holds && self.witness_invariant
    }
}

/// Restriction of `M_{X_{n+2}}(λ)` to `X_{n+1}`, compared against the
/// filtration by cell modules of `X_{n+1}`.
pub fn ind_res_check(family: Family, n: usize, lambda: &Partition) -> Result<IndResReport> {
    if lambda.size() > n {
        return Err(Error::InvalidT { n, t: lambda.size() });
    }
    let b = branching_check(family, n + 2, lambda)?;
    Ok(IndResReport {
        family,
        n,
        lambda: lambda.clone(),
        restricted_dim: b.dim,
        sub_dim: b.sub_dim(),
        quotient_dim: b.quotient_dim(),
        dimension_holds: b.dimension_holds,
        witness_invariant: b.witness_invariant,
    })
}

/// Whether identities are checked with `x` symbolic or at a rational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XMode {
    Symbolic,
    At(Rational),
}

fn loop_product(n: usize, set: &[usize]) -> Diagram {
    let mut p: Vec<usize> = Diagram::identity(n).partners().to_vec();
    for &i in set {
        p[i] = i;
        p[n + i] = n + i;
    }
    Diagram::from_partner(n, p).expect("valid")
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = k_subsets(n - 1, k);
    for mut s in k_subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// `U_t = Σ u_{i_1} ... u_{i_t}` over increasing index tuples.
pub fn u_sum(n: usize, t: usize) -> Element {
    let mut e = Element::zero(n);
    for s in k_subsets(n, t) {
        e = e.plus(&Element::basis(loop_product(n, &s))).expect("same n");
    }
    e
}

fn pair_diagram(n: usize, i: usize, j: usize, bottom_arc: bool) -> Diagram {
    let mut p: Vec<usize> = Diagram::identity(n).partners().to_vec();
    p[i] = j;
    p[j] = i;
    if bottom_arc {
        p[n + i] = n + j;
        p[n + j] = n + i;
    } else {
        p[n + i] = n + i;
        p[n + j] = n + j;
    }
    Diagram::from_partner(n, p).expect("valid")
}

/// `V_2`: top arc `(i, j)` with loops at `i', j'`, summed over `i < j`.
pub fn v2_sum(n: usize) -> Element {
    let mut e = Element::zero(n);
    for s in k_subsets(n, 2) {
        e = e
            .plus(&Element::basis(pair_diagram(n, s[0], s[1], false)))
            .expect("same n");
    }
    e
}

/// `H_2`: top arc `(i, j)` and bottom arc `(i', j')`, summed over `i < j`.
pub fn h2_sum(n: usize) -> Element {
    let mut e = Element::zero(n);
    for s in k_subsets(n, 2) {
        e = e
            .plus(&Element::basis(pair_diagram(n, s[0], s[1], true)))
            .expect("same n");
    }
    e
}

fn compare(name: String, lhs: &Matrix<LaurentPoly>, rhs: &Matrix<LaurentPoly>, mode: &XMode) -> Result<RelationCheck> {
    let holds = match mode {
        XMode::Symbolic => lhs == rhs,
        XMode::At(x0) => lhs.eval(x0)? == rhs.eval(x0)?,
    };
    Ok(RelationCheck {
        name,
        holds,
        detail: None,
    })
}

/// Central-element identities on the cell modules of `X_n`.
///
/// Family L: `U_t` acts as `x^t` on every module with `t` loops. Family A:
/// `U_1 = x` on modules with one loop; on modules with `t = 2`, the actions of
/// `U_2`, `V_2`, `H_2` between the arc block and the loop block, and the
/// arc-block identity `H_2 = (x - 1) + Σ τ_(i,j) - Σ τ̃_(a,b)`.
pub fn central_checks(family: Family, n: usize, mode: &XMode) -> Result<Vec<RelationCheck>> {
    if let XMode::At(x0) = mode {
        if x0.is_zero() {
            return Err(Error::EvalAtZero);
        }
    }
    let mut out = Vec::new();
    match family {
        Family::L | Family::S => {
            for t in 0..=n {
                let ut = u_sum(n, t);
                for mu in partitions_of(n - t) {
                    let m = CellModule::new(family, n, &mu)?;
                    if m.dim() == 0 {
                        continue;
                    }
                    let lhs = m.element_matrix(&ut)?;
                    let rhs = Matrix::identity(m.dim()).scale(&LaurentPoly::x_pow(t as i32));
                    out.push(compare(format!("U{t} = x^{t} on L{n}{mu}"), &lhs, &rhs, mode)?);
                }
            }
        }
        Family::A => {
            if n >= 1 {
                let u1 = u_sum(n, 1);
                for mu in partitions_of(n - 1) {
                    let m = CellModule::new(family, n, &mu)?;
                    let lhs = m.element_matrix(&u1)?;
                    let rhs = Matrix::identity(m.dim()).scale(&LaurentPoly::x());
                    out.push(compare(format!("U1 = x on A{n}{mu}"), &lhs, &rhs, mode)?);
                }
            }
            if n >= 2 {
                for mu in partitions_of(n - 2) {
                    out.extend(rank_two_identities(n, &mu, mode)?);
                }
            }
        }
    }
    Ok(out)
}

fn rank_two_identities(n: usize, mu: &Partition, mode: &XMode) -> Result<Vec<RelationCheck>> {
    let m = CellModule::new(Family::A, n, mu)?;
    let dim = m.dim();
    let f = m.specht_dim();
    // Pair each arc diagram with the diagram carrying loops in place of the arc.
    let mut cap_idx = Vec::new();
    let mut circ_of_cap = Vec::new();
    for (a, d) in m.diagrams().iter().enumerate() {
        if let Some(i) = (0..n).find(|&i| d.is_horizontal(i)) {
            let mut p = d.partners().to_vec();
            let j = p[i];
            p[i] = i;
            p[j] = j;
            let circ = Diagram::from_partner(n, p)?;
            cap_idx.push(a);
            circ_of_cap.push(m.diagram_index(&circ).expect("loop partner in basis"));
        }
    }
    let x = LaurentPoly::x();
    let x2 = LaurentPoly::x_pow(2);
    // Matrices sending each arc (resp. loop) basis vector to c times its partner.
    let to_circ = |c: &LaurentPoly| {
        let mut mat = Matrix::zeros(dim, dim);
        for (&a, &b) in cap_idx.iter().zip(&circ_of_cap) {
            for k in 0..f {
                mat.set(m.index(b, k), m.index(a, k), c.clone());
            }
        }
        mat
    };
    let to_cap = |c: &LaurentPoly| {
        let mut mat = Matrix::zeros(dim, dim);
        for (&a, &b) in cap_idx.iter().zip(&circ_of_cap) {
            for k in 0..f {
                mat.set(m.index(a, k), m.index(b, k), c.clone());
            }
        }
        mat
    };
    let on_circ = |c: &LaurentPoly| {
        let mut mat = Matrix::zeros(dim, dim);
        for &b in &circ_of_cap {
            for k in 0..f {
                mat.set(m.index(b, k), m.index(b, k), c.clone());
            }
        }
        mat
    };
    let on_cap = |c: &LaurentPoly| {
        let mut mat = Matrix::zeros(dim, dim);
        for &a in &cap_idx {
            for k in 0..f {
                mat.set(m.index(a, k), m.index(a, k), c.clone());
            }
        }
        mat
    };
    let cap_cols: Vec<usize> = cap_idx.iter().flat_map(|&a| (0..f).map(move |k| a * f + k)).collect();
    let circ_cols: Vec<usize> = circ_of_cap
        .iter()
        .flat_map(|&b| (0..f).map(move |k| b * f + k))
        .collect();
    let all: Vec<usize> = (0..dim).collect();
    let restrict_cols = |mat: &Matrix<LaurentPoly>, cols: &[usize]| mat.submatrix(&all, cols);

    let u2 = m.element_matrix(&u_sum(n, 2))?;
    let v2 = m.element_matrix(&v2_sum(n))?;
    let h2 = m.element_matrix(&h2_sum(n))?;
    let tag = format!("A{n}{mu}");
    let mut out = vec![
        compare(
            format!("U2 a^cap = x a^circ on {tag}"),
            &restrict_cols(&u2, &cap_cols),
            &restrict_cols(&to_circ(&x), &cap_cols),
            mode,
        )?,
        compare(
            format!("U2 a^circ = x^2 a^circ on {tag}"),
            &restrict_cols(&u2, &circ_cols),
            &restrict_cols(&on_circ(&x2), &circ_cols),
            mode,
        )?,
        compare(
            format!("V2 a^cap = x a^cap on {tag}"),
            &restrict_cols(&v2, &cap_cols),
            &restrict_cols(&on_cap(&x), &cap_cols),
            mode,
        )?,
        compare(
            format!("V2 a^circ = x^2 a^cap on {tag}"),
            &restrict_cols(&v2, &circ_cols),
            &restrict_cols(&to_cap(&x2), &circ_cols),
            mode,
        )?,
        compare(
            format!("H2 a^circ = x a^cap on {tag}"),
            &restrict_cols(&h2, &circ_cols),
            &restrict_cols(&to_cap(&x), &circ_cols),
            mode,
        )?,
    ];

    // Arc block: (x - 1) + Σ left transpositions - Σ right transpositions.
    let mut rhs = on_cap(&(x.clone() - LaurentPoly::one()));
    for s in k_subsets(n, 2) {
        let tau = Diagram::from_perm(&Perm::transposition(n, s[0], s[1]), n);
        rhs = rhs.plus(&m.action_matrix(&tau)?);
    }
    let deg = n - 2;
    let mut right = Matrix::zeros(dim, dim);
    for s in k_subsets(deg, 2) {
        let rho = m.specht().perm_action(&Perm::transposition(deg, s[0], s[1]));
        for &a in &cap_idx {
            for j in 0..f {
                for k in 0..f {
                    right.add_at(
                        m.index(a, k),
                        m.index(a, j),
                        &LaurentPoly::constant(rho.get(k, j).clone()),
                    );
                }
            }
        }
    }
    let rhs = rhs.minus(&right);
    out.push(compare(
        format!("H2 on a^cap = (x-1) + sum tau - sum tau~ on {tag}"),
        &h2.submatrix(&cap_cols, &cap_cols),
        &rhs.submatrix(&cap_cols, &cap_cols),
        mode,
    )?);
    // H2 keeps the arc block inside itself.
    let leak = circ_cols
        .iter()
        .any(|&r| cap_cols.iter().any(|&c| !h2.get(r, c).is_zero()));
    out.push(RelationCheck {
        name: format!("H2 preserves the arc block on {tag}"),
        holds: !leak,
        detail: None,
    });
    Ok(out)
}

/// Which degenerate configuration the content equation describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ContentCase {
    /// `μ ⊢ n - 2`, both the arc and the loop components nonzero.
    Mixed,
    /// `μ ⊢ n - 2`, loop component zero.
    LoopFree,
    /// `μ ⊢ n - 1`.
    Single,
}

/// The value of `x` at which a copy of `S^λ` could sit in the radical of
/// `M(μ)`; always an integer.
pub fn content_identity(lambda: &Partition, mu: &Partition, case: ContentCase) -> Result<Rational> {
    let h = lambda.size() as isize - mu.size() as isize;
    let c = lambda.contents_sum() - mu.contents_sum();
    let x = match (h, case) {
        (1, _) | (2, ContentCase::Single) => 0,
        (2, ContentCase::Mixed) => 2 - c,
        (2, ContentCase::LoopFree) => 1 - c,
        _ => return Err(Error::InvalidShapes(h)),
    };
    Ok(Rational::from_integer(x.into()))
}

/// All content-equation values for shapes `λ ⊢ m ≤ n` and `μ ⊢ m - 2`,
/// ascending and deduplicated.
pub fn content_candidates(n: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    for m in 2..=n {
        for lambda in partitions_of(m) {
            for mu in partitions_of(m - 2) {
                for case in [ContentCase::Mixed, ContentCase::LoopFree] {
                    out.push(content_identity(&lambda, &mu, case).expect("sizes differ by 2"));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub t: usize,
    pub lambda: Partition,
    pub dim: usize,
    #[serde(serialize_with = "ser_rational")]
    pub x0: Rational,
    pub radical_dim: usize,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Flag {
    pub t: usize,
    pub lambda: Partition,
    #[serde(serialize_with = "ser_rational")]
    pub x0: Rational,
    pub radical_dim: usize,
    pub content_candidate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub family: Family,
    pub n: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub x0: Vec<Rational>,
    pub probes: Vec<Probe>,
    pub flagged: Vec<Flag>,
    pub elapsed_ms: f64,
}

impl ProbeReport {
    pub fn all_zero(&self) -> bool {
        self.flagged.is_empty()
    }
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn ser_rationals<S: serde::Serializer>(r: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(format_rational))
}

/// Radical dimension of every cell module of `X_n` at every `x0`, ordered by
/// `(t, λ, x0)`. Nonzero radicals are flagged and compared against the
/// content-equation values.
pub fn radical_scan(family: Family, n: usize, x0s: &[Rational], exec: Exec) -> Result<ProbeReport> {
    if x0s.iter().any(Zero::is_zero) {
        return Err(Error::EvalAtZero);
    }
    let start = Instant::now();
    let mut jobs = Vec::new();
    for t in 0..=n {
        for lambda in partitions_of(n - t) {
            for x0 in x0s {
                jobs.push((t, lambda.clone(), x0.clone()));
            }
        }
    }
    let results = par::map(exec, &jobs, |(t, lambda, x0)| -> Result<Probe> {
        let begin = Instant::now();
        let m = CellModule::new(family, n, lambda)?;
        let radical_dim = m.radical_dim(x0, Exec::Sequential)?;
        Ok(Probe {
            t: *t,
            lambda: lambda.clone(),
            dim: m.dim(),
            x0: x0.clone(),
            radical_dim,
            elapsed_ms: begin.elapsed().as_secs_f64() * 1e3,
        })
    });
    let probes = results.into_iter().collect::<Result<Vec<_>>>()?;
    let candidates = content_candidates(n);
    let flagged = probes
        .iter()
        .filter(|p| p.radical_dim > 0)
        .map(|p| Flag {
            t: p.t,
            lambda: p.lambda.clone(),
            x0: p.x0.clone(),
            radical_dim: p.radical_dim,
            content_candidate: candidates.contains(&p.x0),
        })
        .collect();
    Ok(ProbeReport {
        family,
        n,
        x0: x0s.to_vec(),
        probes,
        flagged,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Formula count, enumeration count, and `Σ dim(M)^2` over all cell modules.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionSummary {
    pub family: Family,
    pub n: usize,
    pub formula: u128,
    pub enumerated: usize,
    pub sum_of_squares: u128,
}

impl DimensionSummary {
    pub fn holds(&self) -> bool {
        self.formula == self.enumerated as u128 && self.sum_of_squares == self.formula
    }
}

pub fn dimension_summary(family: Family, n: usize) -> Result<DimensionSummary> {
    let mut sum_of_squares = 0u128;
    for t in 0..=n {
        for lambda in partitions_of(n - t) {
            let d = module_dim(family, n, &lambda)? as u128;
            sum_of_squares += d * d;
        }
    }
    Ok(DimensionSummary {
        family,
        n,
        formula: crate::diagrams::family_size_formula(family, n),
        enumerated: crate::diagrams::enumerate(family, n).len(),
        sum_of_squares,
    })
}
