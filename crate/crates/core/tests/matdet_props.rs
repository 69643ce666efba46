use std::collections::HashMap;

use factdisp::matdet::{
    adjugate, coupled_b_expansion, det, factorize_coupled, first_order_diagonal, first_order_trace,
    laplace_expand, markus_expansion, CoupledSystem, IndexSet, Matrix, MatrixError, PolyMatrix,
    RationalMatrix,
};
use factdisp::polyalg::{int, rat, MultiPoly, Rational};
use itertools::Itertools;
use num::Zero;
use proptest::prelude::*;

/// Permutation-sum determinant, independent of the library algorithms.
fn leibniz(m: &RationalMatrix) -> Rational {
    let n = m.dim();
    let mut acc = Rational::zero();
    for perm in (0..n).permutations(n) {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut p = if inversions % 2 == 0 { int(1) } else { int(-1) };
        for (i, &j) in perm.iter().enumerate() {
            p *= m.get(i, j);
        }
        acc += p;
    }
    acc
}

fn int_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-6i64..7, n * n)
        .prop_map(move |v| Matrix::from_fn(n, |i, j| int(v[i * n + j])))
}

fn rat_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((-6i64..7, 1i64..5), n * n)
        .prop_map(move |v| Matrix::from_fn(n, |i, j| rat(v[i * n + j].0, v[i * n + j].1)))
}

fn sized<F, S>(f: F) -> impl Strategy<Value = RationalMatrix>
where
    F: Fn(usize) -> S + Clone + 'static,
    S: Strategy<Value = RationalMatrix> + 'static,
{
    (1usize..=5).prop_flat_map(move |n| f(n))
}

fn to_poly(m: &RationalMatrix) -> PolyMatrix {
    m.map(|x| MultiPoly::constant(x.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn elimination_matches_permutation_sum(m in sized(rat_matrix)) {
        prop_assert_eq!(det(&m), leibniz(&m));
    }

    #[test]
    fn symbolic_det_commutes_with_evaluation(m in sized(int_matrix), t in -4i64..5) {
        // Entries a_ij + t_var * (i - j) force the symbolic path.
        let sym = Matrix::from_fn(m.dim(), |i, j| {
            MultiPoly::constant(m.get(i, j).clone())
                + MultiPoly::var("t").scale(&int(i as i64 - j as i64))
        });
        let mut at = HashMap::new();
        at.insert("t".to_string(), int(t));
        let num = Matrix::from_fn(m.dim(), |i, j| m.get(i, j) + int(t * (i as i64 - j as i64)));
        let d = det(&sym).with_vars(&["t"]).eval_exact(&at).unwrap();
        prop_assert_eq!(d, leibniz(&num));
    }

    #[test]
    fn laplace_is_row_choice_invariant(m in sized(int_matrix)) {
        let d = det(&m);
        let n = m.dim();
        for r in 1..=n {
            for rows in IndexSet::all(r, n) {
                prop_assert_eq!(laplace_expand(&m, &rows).unwrap(), d.clone());
            }
        }
    }

    #[test]
    fn adjugate_identity(m in sized(rat_matrix)) {
        let adj = adjugate(&m);
        let d = det(&m);
        let expect = Matrix::identity(m.dim()).scale(&d);
        prop_assert_eq!(adj.mul(&m).unwrap(), expect.clone());
        prop_assert_eq!(m.mul(&adj).unwrap(), expect);
    }

    #[test]
    fn markus_matches_sum(n in 2usize..=5, seed in any::<u64>()) {
        let (a, b) = seeded_pair(n, seed);
        prop_assert_eq!(markus_expansion(&a, &b).unwrap(), leibniz(&a.add(&b).unwrap()));
    }

    #[test]
    fn coupled_expansion_reassembles(n in 1usize..=4, seed in any::<u64>()) {
        let (a, b0) = seeded_pair(n, seed);
        let (b1, _) = seeded_pair(n, seed.wrapping_add(1));
        let bv = MultiPoly::var("b");
        // B(b) = B0 + b B1
        let bpoly = Matrix::from_fn(n, |i, j| {
            MultiPoly::constant(b0.get(i, j).clone()) + bv.scale(b1.get(i, j))
        });
        let a = to_poly(&a);
        let exp = coupled_b_expansion(&a, &bpoly, "b").unwrap();
        let full = a.add(&bpoly.scale(&bv)).unwrap();
        prop_assert_eq!(exp.reassemble("b"), det(&full));
        let total = det(&full).with_vars(&["b"]);
        let c1_at0 = first_order_trace(&a, &bpoly.map(|e| e.substitute("b", &MultiPoly::zero()))).unwrap();
        prop_assert_eq!(total.coefficients_in("b").get(1).cloned().unwrap_or_default(), c1_at0);
        if n > 1 {
            prop_assert_eq!(exp.coeffs[0].clone(), first_order_trace(&a, &bpoly).unwrap());
        }
    }

    #[test]
    fn identity_plus_tau(m in sized(int_matrix)) {
        let tau = MultiPoly::var("tau");
        let p = Matrix::identity(m.dim()).add(&to_poly(&m).scale(&tau)).unwrap();
        let rest = det(&p) - (MultiPoly::one() + &tau * &MultiPoly::constant(m.trace()));
        let cs = rest.with_vars(&["tau"]).coefficients_in("tau");
        for c in cs.iter().take(2) {
            prop_assert!(c.is_zero());
        }
    }
}

fn seeded_pair(n: usize, seed: u64) -> (RationalMatrix, RationalMatrix) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut gen = || {
        let v: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-5..6)).collect();
        Matrix::from_fn(n, |i, j| int(v[i * n + j]))
    };
    let a = gen();
    let b = gen();
    (a, b)
}

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

#[test]
fn two_by_two_symbolic() {
    let m: PolyMatrix = "[a, b; c, d]".parse().unwrap();
    assert_eq!(det(&m), p("a*d - b*c"));
    let rows = IndexSet::new(vec![1], 2).unwrap();
    assert_eq!(laplace_expand(&m, &rows).unwrap(), p("a*d - b*c"));
    let all = IndexSet::new(vec![1, 2], 2).unwrap();
    assert_eq!(laplace_expand(&m, &all).unwrap(), p("a*d - b*c"));
}

#[test]
fn diagonal_cases() {
    let d: PolyMatrix = Matrix::diag(vec![p("d1"), p("d2"), p("d3"), p("d4")]);
    assert_eq!(det(&d), p("d1*d2*d3*d4"));
    let d3: PolyMatrix = Matrix::diag(vec![p("d1"), p("d2"), p("d3")]);
    assert_eq!(
        adjugate(&d3),
        Matrix::diag(vec![p("d2*d3"), p("d1*d3"), p("d1*d2")])
    );
    assert_eq!(adjugate(&PolyMatrix::identity(3)), PolyMatrix::identity(3));
    assert_eq!(
        adjugate(&PolyMatrix::diag(vec![p("x")])),
        PolyMatrix::identity(1)
    );
}

#[test]
fn markus_hand_example() {
    let a: PolyMatrix = "[2, 0; 0, 3]".parse().unwrap();
    let ones: PolyMatrix = "[1, 1; 1, 1]".parse().unwrap();
    assert_eq!(
        markus_expansion(&a, &ones).unwrap(),
        MultiPoly::from_i64(11)
    );
    let i2 = PolyMatrix::identity(2);
    assert_eq!(
        markus_expansion(&i2, &PolyMatrix::zeros(2)).unwrap(),
        MultiPoly::one()
    );
    let exp = coupled_b_expansion(&a, &ones, "b").unwrap();
    assert_eq!(exp.det_a, MultiPoly::from_i64(6));
    assert_eq!(exp.coeffs, vec![MultiPoly::from_i64(5)]);
    assert_eq!(exp.det_b, MultiPoly::zero());
    assert!(markus_expansion(&a, &PolyMatrix::identity(3)).is_err());
}

#[test]
fn identity_first_order_is_trace() {
    let b: PolyMatrix = "[b*x, 1, 2; 3, y, 4; 5, 6, z]".parse().unwrap();
    let i3 = PolyMatrix::identity(3);
    let exp = coupled_b_expansion(&i3, &b, "b").unwrap();
    assert_eq!(exp.coeffs[0], b.trace());
    assert_eq!(first_order_diagonal(&i3, &b).unwrap(), b.trace());
}

#[test]
fn diagonal_first_order_formula() {
    let a: PolyMatrix = "[w^2 - 1, 0, 0; 0, w^2 - 4, 0; 0, 0, w^2 - 9]"
        .parse()
        .unwrap();
    let b: PolyMatrix = "[k, 1, 0; 1, k^2, 2; 0, 2, 3]".parse().unwrap();
    assert_eq!(
        first_order_trace(&a, &b).unwrap(),
        first_order_diagonal(&a, &b).unwrap()
    );
    assert!(first_order_diagonal(&b, &a).is_err());
}

#[test]
fn expansion_rejects_b_in_a() {
    let a: PolyMatrix = "[b, 0; 0, 1]".parse().unwrap();
    assert!(matches!(
        coupled_b_expansion(&a, &PolyMatrix::identity(2), "b"),
        Err(MatrixError::DependsOnCoupling(_))
    ));
}

#[test]
fn oscillator_pair_expansion() {
    // Lambda = diag(w^2 - s1, w^2 - s2), coupling b*[[0, c/m1], [c/m2, 0]]
    let a: PolyMatrix = "[w^2 - s1, 0; 0, w^2 - s2]".parse().unwrap();
    let b: PolyMatrix = "[0, c/1*u1; c*u2, 0]".parse().unwrap();
    let exp = coupled_b_expansion(&a, &b, "b").unwrap();
    assert!(exp.coeffs[0].is_zero());
    assert_eq!(
        exp.reassemble("b"),
        p("(w^2 - s1)*(w^2 - s2) - b^2*c^2*u1*u2")
    );
}

#[test]
fn factorization_checks_coupling() {
    let l1: PolyMatrix = "[w^2 - 1]".parse().unwrap();
    let l2: PolyMatrix = "[w^2 - 4]".parse().unwrap();
    let c: PolyMatrix = "[0, b*k; b*k, b^2]".parse().unwrap();
    let sys = CoupledSystem::new(l1.clone(), l2.clone(), c, "b").unwrap();
    let f = factorize_coupled(&sys).unwrap();
    assert_eq!(f.g1, p("w^2 - 1"));
    assert_eq!(f.g2, p("w^2 - 4"));
    assert_eq!(f.remainder, p("b^2*(w^2 - 1) - b^2*k^2"));
    assert!(f.remainder.substitute("b", &MultiPoly::zero()).is_zero());
    let bad: PolyMatrix = "[0, 1; 1, 0]".parse().unwrap();
    let sys = CoupledSystem::new(l1.clone(), l2.clone(), bad, "b").unwrap();
    assert_eq!(factorize_coupled(&sys), Err(MatrixError::CouplingAtZero));
    let none = CoupledSystem::new(l1, l2, PolyMatrix::zeros(2), "b").unwrap();
    assert!(factorize_coupled(&none).unwrap().remainder.is_zero());
}

#[test]
fn index_set_validation() {
    assert!(IndexSet::new(vec![2, 1], 3).is_err());
    assert!(IndexSet::new(vec![0], 3).is_err());
    assert!(IndexSet::new(vec![4], 3).is_err());
    assert!(IndexSet::new(vec![], 3).is_err());
    let s = IndexSet::new(vec![1, 3], 4).unwrap();
    assert_eq!(s.complement(), vec![2, 4]);
    assert_eq!(s.weight(), 4);
    let m: PolyMatrix = PolyMatrix::identity(3);
    assert!(laplace_expand(&m, &s).is_err());
}

#[test]
fn matrix_text_roundtrip() {
    let m: PolyMatrix = "[w^2-k^2, b*k; b*k, w^2-4*k^2]".parse().unwrap();
    let back: PolyMatrix = m.to_string().parse().unwrap();
    assert_eq!(back, m);
    assert!("[1, 2; 3]".parse::<PolyMatrix>().is_err());
    assert!("1, 2".parse::<PolyMatrix>().is_err());
}
