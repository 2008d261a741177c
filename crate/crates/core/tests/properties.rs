use proptest::prelude::*;

use loopbrauer::algebra::{Element, Mode, MultTable, TwoParamElement};
use loopbrauer::cellmod::CellModule;
use loopbrauer::diagrams::{enumerate, Diagram, Family};
use loopbrauer::par::Exec;
use loopbrauer::scalars::{rat, LaurentPoly, Rational};
use loopbrauer::symgroup::{partitions_of, Partition};

fn basis(family: Family, n: usize) -> Vec<Diagram> {
    enumerate(family, n)
}

fn triple(family: Family, n: usize) -> impl Strategy<Value = (Diagram, Diagram, Diagram)> {
    let b = basis(family, n);
    let len = b.len();
    (0..len, 0..len, 0..len).prop_map(move |(i, j, k)| (b[i].clone(), b[j].clone(), b[k].clone()))
}

fn apply(m: &loopbrauer::matrix::Matrix<LaurentPoly>, x0: &Rational, v: &[Rational]) -> Vec<Rational> {
    m.eval(x0).unwrap().mul_vec(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associative_and_star_reverses((a, b, c) in triple(Family::A, 3)) {
        let (a, b, c) = (Element::basis(a), Element::basis(b), Element::basis(c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().star(), b.star().mul(&a.star()).unwrap());
    }

    #[test]
    fn two_param_associative((a, b, c) in triple(Family::A, 3)) {
        let (a, b, c) = (TwoParamElement::basis(a), TwoParamElement::basis(b), TwoParamElement::basis(c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn two_param_collapses_to_one_param((a, b, _c) in triple(Family::A, 3)) {
        let two = TwoParamElement::basis(a.clone()).mul(&TwoParamElement::basis(b.clone())).unwrap();
        let one = Element::basis(a).mul(&Element::basis(b)).unwrap();
        prop_assert_eq!(two.collapse(), one);
    }

    #[test]
    fn rank_never_grows((a, b, _c) in triple(Family::A, 3)) {
        let p = a.compose(&b).unwrap().diagram;
        prop_assert!(p.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn loopless_family_is_closed((a, b, _c) in triple(Family::L, 4)) {
        prop_assert!(a.compose(&b).unwrap().diagram.belongs_to(Family::L));
    }

    #[test]
    fn cell_action_is_a_representation((a, b, _c) in triple(Family::A, 3), pick in 0usize..7) {
        let shapes: Vec<Partition> = (0..=3).flat_map(partitions_of).collect();
        let m = CellModule::new(Family::A, 3, &shapes[pick % shapes.len()]).unwrap();
        let ab = Element::basis(a.clone()).mul(&Element::basis(b.clone())).unwrap();
        let lhs = m.element_matrix(&ab).unwrap();
        let rhs = m.action_matrix(&a).unwrap().mul(&m.action_matrix(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn loopless_modules_are_representations() {
    let b = basis(Family::L, 3);
    for lambda in (0..=3).flat_map(partitions_of) {
        let m = CellModule::new(Family::L, 3, &lambda).unwrap();
        for a in b.iter().step_by(3) {
            for c in b.iter().step_by(5) {
                let ac = Element::basis(a.clone()).mul(&Element::basis(c.clone())).unwrap();
                assert_eq!(
                    m.element_matrix(&ac).unwrap(),
                    m.action_matrix(a).unwrap().mul(&m.action_matrix(c).unwrap())
                );
            }
        }
    }
}

/// Every diagram maps the radical into itself.
fn assert_radical_invariant(family: Family, n: usize, lambda: &str, x0: i64) -> usize {
    let m = CellModule::new(family, n, &lambda.parse().unwrap()).unwrap();
    let x0 = rat(x0);
    let rad = m.radical(&x0, Exec::Sequential).unwrap();
    let ops = m.operand_diagrams();
    for d in enumerate(family, n) {
        let act = m.action_matrix(&d).unwrap();
        for v in &rad {
            let w = apply(&act, &x0, v);
            for o in &ops {
                let image = apply(&m.action_matrix(o).unwrap(), &x0, &w);
                assert!(
                    image.iter().all(|c| c == &rat(0)),
                    "{d:?} moves {v:?} out of the radical"
                );
            }
        }
    }
    rad.len()
}

#[test]
fn radicals_are_submodules() {
    assert_eq!(assert_radical_invariant(Family::A, 2, "", 1), 1);
    assert!(assert_radical_invariant(Family::A, 3, "1", 2) > 0);
    assert!(assert_radical_invariant(Family::A, 3, "1", -1) > 0);
}

#[test]
fn quotient_at_a_degenerate_parameter() {
    // A2 with the empty partition at x = 1 has a one dimensional radical, so
    // the quotient is a character of the algebra.
    let m = CellModule::new(Family::A, 2, &Partition::empty()).unwrap();
    let x0 = rat(1);
    let rad = m.radical(&x0, Exec::Parallel).unwrap();
    assert_eq!((m.dim(), rad.len()), (2, 1));
    let v = &rad[0];
    let phi = |w: &[Rational]| v[0].clone() * w[1].clone() - v[1].clone() * w[0].clone();
    let w0: Vec<Rational> = if phi(&[rat(1), rat(0)]) != rat(0) {
        vec![rat(1), rat(0)]
    } else {
        vec![rat(0), rat(1)]
    };
    let chi = |e: &Element| {
        let w = apply(&m.element_matrix(e).unwrap(), &x0, &w0);
        phi(&w) / phi(&w0)
    };
    let all = enumerate(Family::A, 2);
    for a in &all {
        for b in &all {
            let (ea, eb) = (Element::basis(a.clone()), Element::basis(b.clone()));
            assert_eq!(chi(&ea.mul(&eb).unwrap()), chi(&ea) * chi(&eb), "{a:?} {b:?}");
        }
    }
}

#[test]
fn cached_tables_match_fresh_ones() {
    let dir = tempfile::tempdir().unwrap();
    for mode in [Mode::OneParam, Mode::TwoParam] {
        let fresh = MultTable::generate(Family::L, 3, mode, Exec::Sequential);
        let cold = MultTable::cached(dir.path(), Family::L, 3, mode, Exec::Parallel).unwrap();
        let warm = MultTable::cached(dir.path(), Family::L, 3, mode, Exec::Parallel).unwrap();
        assert_eq!(fresh.to_cache_string(), cold.to_cache_string());
        assert_eq!(cold.to_cache_string(), warm.to_cache_string());
    }
}

#[test]
fn corrupt_cache_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = MultTable::cache_path(dir.path(), Family::A, 2, Mode::OneParam);
    std::fs::write(&path, "not a table\n").unwrap();
    assert!(MultTable::cached(dir.path(), Family::A, 2, Mode::OneParam, Exec::Sequential).is_err());
}

#[test]
fn sequential_and_parallel_agree() {
    let a = MultTable::generate(Family::A, 3, Mode::TwoParam, Exec::Sequential);
    let b = MultTable::generate(Family::A, 3, Mode::TwoParam, Exec::Parallel);
    assert_eq!(a.to_cache_string(), b.to_cache_string());
    let m = CellModule::new(Family::A, 3, &"1".parse().unwrap()).unwrap();
    for x0 in [rat(2), rat(3)] {
        assert_eq!(
            m.radical(&x0, Exec::Sequential).unwrap(),
            m.radical(&x0, Exec::Parallel).unwrap()
        );
    }
}
