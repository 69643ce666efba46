use std::collections::HashMap;

use factdisp::branches::*;
use factdisp::matdet::det;
use factdisp::models::{
    kirchhoff_radial, mindlin_factorized, wing_matrix, KirchhoffParams, MindlinParams, WingParams,
};
use factdisp::polyalg::rational::{int, rat, to_f64};
use factdisp::{MultiPoly, Num, Rational};
use num::Zero;
use proptest::prelude::*;

fn mindlin_a(b: Rational) -> MultiPoly {
    let p = MindlinParams::unit(b.clone());
    let (_, a) = mindlin_factorized(&p.coeffs());
    a.substitute("b", &MultiPoly::constant(b))
}

fn mindlin_f(b: Rational) -> MultiPoly {
    let p = MindlinParams::unit(b.clone());
    let (f, _) = mindlin_factorized(&p.coeffs());
    f.substitute("b", &MultiPoly::constant(b))
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

#[test]
fn roots_of_simple_quadratic() {
    let p: MultiPoly = "w^2 - 4".parse().unwrap();
    let r = expand_roots(&real_roots(&p, "w", 1e-12).unwrap());
    assert!((r[0] + 2.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12 && r.len() == 2);
    let zero = MultiPoly::zero().with_vars(&["w"]);
    assert_eq!(
        real_roots(&zero, "w", 1e-12),
        Err(BranchError::ZeroPolynomial)
    );
    assert_eq!(
        real_roots(&p, "w", -1.0),
        Err(BranchError::BadTolerance(-1.0))
    );
}

#[test]
fn mindlin_threshold_roots_at_zero_wavenumber() {
    let a = mindlin_a(rat(1, 10)).substitute("k", &MultiPoly::zero());
    let roots = real_roots(&a, "w", 1e-13).unwrap();
    let w0 = 0.2 * 3f64.sqrt();
    assert_eq!(roots.len(), 3);
    assert!((roots[0].value + w0).abs() < 1e-12);
    assert_eq!((roots[1].value, roots[1].multiplicity), (0.0, 2));
    assert!((roots[2].value - w0).abs() < 1e-12);
    let all = expand_roots(&roots);
    assert_eq!(all.len(), 4);
    // nothing strictly between 0 and omega0
    assert!(all.iter().all(|w| *w == 0.0 || w.abs() > w0 - 1e-12));
}

#[test]
fn wing_unit_roots_are_double() {
    let d = det(&wing_matrix(&WingParams::unit().coeffs()))
        .substitute("b", &MultiPoly::zero())
        .substitute("k", &MultiPoly::one());
    let r = real_roots(&d, "w", 1e-12).unwrap();
    assert_eq!(
        r,
        vec![
            Root {
                value: -1.0,
                multiplicity: 2
            },
            Root {
                value: 1.0,
                multiplicity: 2
            }
        ]
    );
}

proptest! {
    #[test]
    fn recovers_planted_roots(rs in prop::collection::vec((-40i64..40, 1i64..9), 1..6)) {
        let mut p = MultiPoly::one();
        let mut planted: Vec<f64> = Vec::new();
        for (n, d) in &rs {
            let r = rat(*n, *d);
            planted.push(to_f64(&r));
            p = p * (MultiPoly::var("w") - MultiPoly::constant(r));
        }
        planted.sort_by(f64::total_cmp);
        let found = expand_roots(&real_roots(&p, "w", 1e-12).unwrap());
        prop_assert_eq!(found.len(), planted.len());
        for (a, b) in found.iter().zip(&planted) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn traced_samples_are_roots() {
    for b in 0i64..4 {
        let a = mindlin_a(rat(b, 20));
        let traces =
            trace_branches(&a, "k", &grid(-0.3, 0.3, 31), "mindlin-A", b as f64 / 20.0).unwrap();
        for t in &traces {
            assert!(t.samples.windows(2).all(|w| w[1].0 > w[0].0));
            for &(k, w) in &t.samples {
                let env: HashMap<String, f64> = [("k".to_string(), k), ("w".to_string(), w)].into();
                let scale = a.term_magnitude(&env).unwrap().max(1e-300);
                assert!(a.eval(&env).unwrap().abs() <= 1e-9 * scale);
            }
        }
    }
}

#[test]
fn kirchhoff_traces_two_parabolas() {
    let p = KirchhoffParams {
        rho: int(1),
        h: int(1),
        d: int(1),
    };
    let d = kirchhoff_radial(&p).unwrap();
    let traces = trace_branches(&d, "k", &grid(-1.0, 1.0, 41), "kirchhoff", 0.0).unwrap();
    assert_eq!(traces.len(), 2);
    for t in &traces {
        assert_eq!(t.samples.len(), 41);
        let s = t.samples[0].1.signum();
        for &(k, w) in &t.samples {
            assert!((w - s * k * k).abs() < 1e-12);
        }
    }
    assert_eq!(
        trace_branches(&d, "k", &[], "x", 0.0),
        Err(BranchError::EmptyGrid)
    );
    assert_eq!(
        trace_branches(&d, "k", &[1.0, 1.0], "x", 0.0),
        Err(BranchError::GridNotIncreasing)
    );
}

#[test]
fn uncoupled_mindlin_gives_straight_lines() {
    let a = mindlin_a(Rational::zero());
    let traces = trace_branches(&a, "k", &grid(-0.3, 0.3, 61), "mindlin-A", 0.0).unwrap();
    assert_eq!(traces.len(), 4);
    let mut slopes: Vec<f64> = traces
        .iter()
        .map(|t| {
            let (k0, w0) = t.samples[0];
            let (k1, w1) = *t.samples.last().unwrap();
            let s = (w1 - w0) / (k1 - k0);
            for &(k, w) in &t.samples {
                assert!((w - s * k).abs() < 1e-10, "branch is not straight");
            }
            s
        })
        .collect();
    slopes.sort_by(f64::total_cmp);
    let s12 = 12f64.sqrt();
    for (a, b) in slopes.iter().zip([-s12, -1.0, 1.0, s12]) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn f_branch_is_lifted() {
    let f = mindlin_f(rat(1, 10));
    let roots = roots_at(&f, "k", 0.0).unwrap();
    let w0 = 0.1 * 12f64.sqrt();
    assert_eq!(roots.len(), 2);
    assert!((roots[1] - w0).abs() < 1e-12 && (roots[0] + w0).abs() < 1e-12);
}

#[test]
fn series_coefficients_at_unit_data() {
    let p = MindlinParams::unit(rat(1, 10));
    let lo = lower_series(&p).unwrap();
    assert_eq!(lo.values[0], Num::Exact(int(10)));
    assert!(lo.values.iter().all(Num::is_exact));
    let up = upper_series(&p).unwrap();
    assert!((up.values[0].to_f64() - 0.2 * 3f64.sqrt()).abs() < 1e-15);
    let d1 = 3f64.sqrt() * (1.0 + 1.0 / 12.0) / 0.1;
    assert!((up.values[1].to_f64() - d1).abs() < 1e-12);
    assert!(up.values[2].to_f64() < 0.0);
    let (_, _, r) = pqr(&p);
    assert_eq!(r, Num::Exact(rat(1, 5)));
    assert_eq!(
        lower_series(&MindlinParams::unit(Rational::zero())),
        Err(BranchError::ZeroCoupling)
    );
    assert!(upper_series(&MindlinParams::unit(Rational::zero())).is_err());
}

#[test]
fn lower_series_residual_order() {
    let p = MindlinParams::unit(rat(1, 10));
    let a = mindlin_a(p.b.clone());
    let s = lower_series(&p).unwrap();
    let est = residual_order(
        |k| {
            let kr = Rational::from_float(k).unwrap();
            let w = s.eval_exact(&kr).unwrap();
            let at: HashMap<String, Rational> =
                [("k".to_string(), kr), ("w".to_string(), w)].into();
            newton_residual_exact(&a, &at).unwrap()
        },
        &log_samples(1e-3, 1e-1, 9),
    )
    .unwrap();
    assert!(est.passes(8.0, ORDER_TOL), "{est}");
}

#[test]
fn upper_series_residual_order() {
    let p = MindlinParams::unit(rat(1, 10));
    let a = mindlin_a(p.b.clone());
    let s = upper_series(&p).unwrap();
    let est = residual_order(
        |k| newton_residual(&a, "k", k, s.eval(k)).unwrap(),
        &log_samples(1e-3, 1e-1, 9),
    )
    .unwrap();
    assert!(est.passes(6.0, ORDER_TOL), "{est}");
}

fn exact_series(s: &factdisp::TruncSeries<Num>, w: &Rational) -> Rational {
    s.terms()
        .map(|(e, c)| {
            let e: i32 = e.to_integer().try_into().unwrap();
            c.as_exact().unwrap() * num::pow::Pow::pow(w, e)
        })
        .fold(Rational::zero(), |a, b| a + b)
}

#[test]
fn laurent_series_of_s() {
    let p = MindlinParams::unit(rat(1, 10));
    let sp = laurent_s(&p, SBranch::Plus, 5).unwrap();
    let sm = laurent_s(&p, SBranch::Minus, 5).unwrap();
    let (pp, _, _) = pqr(&p);
    let sum = sp.add(&sm);
    for (e, c) in sum.terms() {
        let expected = if e.is_zero() {
            pp.clone() / int(2) * int(2) / (&p.kappa * &p.g * &p.d)
        } else {
            Rational::zero()
        };
        assert_eq!(c.as_exact().unwrap(), &expected, "exponent {e}");
    }
    // Vieta: S+ S- leading term -R^2/(4 (kappa G D)^2) w^-2
    let prod = sp.mul(&sm);
    assert_eq!(prod.coeff_at(&int(-2)).unwrap(), Num::Exact(rat(-1, 100)));
    assert_eq!(
        prod.coeff_at(&int(-1)).unwrap(),
        Num::Exact(Rational::zero())
    );
    for s in [&sp, &sm] {
        let res = s_quadratic_residual(&p, s);
        assert_eq!(res.order(), Some(&int(4)));
        assert!(res.vanishes_below(&int(4), 0.0));
        let est = residual_order(
            |w| {
                let wr = Rational::from_float(w).unwrap();
                let sv = exact_series(s, &wr);
                let (pp, _, _) = pqr(&p);
                let v = &p.kappa * &p.g * &p.d * &sv * &sv - pp * &sv + int(1) / int(12)
                    - rat(1, 100) / (&wr * &wr);
                to_f64(&v)
            },
            &log_samples(1e-3, 1e-1, 9),
        )
        .unwrap();
        assert!(est.passes(4.0, ORDER_TOL), "{est}");
    }
    assert!(laurent_s(&MindlinParams::unit(Rational::zero()), SBranch::Plus, 3).is_err());
}

#[test]
fn exact_branch_reports_exact() {
    let p = KirchhoffParams {
        rho: int(1),
        h: int(1),
        d: int(1),
    };
    let d = kirchhoff_radial(&p).unwrap();
    let est = residual_order(
        |k| newton_residual(&d, "k", k, k * k).unwrap(),
        &[0.5, 1.0, 2.0, 50.0],
    )
    .unwrap();
    assert_eq!(est, OrderEstimate::Exact);
    assert!(residual_order(|k| k, &[1.0, 2.0]).is_err());
    assert!(residual_order(|k| k, &[-1.0, 200.0]).is_err());
    let est = residual_order(|k| 3.0 * k.powi(5), &log_samples(1e-2, 1.0, 5)).unwrap();
    assert!(est.passes(5.0, 1e-9));
}

#[test]
fn large_k_slopes() {
    let p = MindlinParams::unit(rat(1, 5));
    let (s1, s2) = asymptotic_slopes(&p);
    assert_eq!(s1, Num::Exact(int(1)));
    assert!((s2.to_f64() - 12f64.sqrt()).abs() < 1e-15);
    assert_eq!(s_infinity(&p), (int(1), rat(1, 12)));
    let a = mindlin_a(p.b.clone());
    let roots = roots_at(&a, "k", 100.0).unwrap();
    assert_eq!(roots.len(), 4);
    for w in roots {
        let r = (w / 100.0).abs();
        let d = (r - 1.0).abs().min((r - 12f64.sqrt()).abs());
        assert!(d <= 1e-3, "{r}");
    }
    let mut last = f64::INFINITY;
    for k in [10.0, 20.0, 40.0, 80.0] {
        let worst = roots_at(&a, "k", k)
            .unwrap()
            .iter()
            .map(|w| {
                let r = (w / k).abs();
                (r - 1.0).abs().min((r - 12f64.sqrt()).abs())
            })
            .fold(0.0, f64::max);
        assert!(worst < last);
        last = worst;
    }
}

#[test]
fn lower_branch_opens_more_slowly_with_coupling() {
    let lower = |b: Rational| {
        roots_at(&mindlin_a(b), "k", 0.01)
            .unwrap()
            .into_iter()
            .filter(|w| *w > 0.0)
            .fold(f64::INFINITY, f64::min)
    };
    let (w1, w2) = (lower(rat(1, 10)), lower(rat(1, 5)));
    assert!(w2 < w1);
    assert!((w1 - 1e-4 / 0.1).abs() < 1e-5);
}

#[test]
fn s_route_agrees_with_quartic() {
    let p = MindlinParams::unit(rat(1, 10));
    let a = mindlin_a(p.b.clone());
    for k in [0.01, 0.05, 0.2] {
        for w in roots_at(&a, "k", k).unwrap() {
            let s = k * k / (w * w);
            let v = s_quadratic_value(&p, s, w);
            let scale = 1.0 + s * s + 0.01 / (w * w);
            assert!(v.abs() <= 1e-10 * scale, "k={k} w={w} v={v}");
        }
    }
}

#[test]
fn csv_layout() {
    let t = BranchTrace {
        id: 3,
        samples: vec![(0.5, -0.25)],
        model: "m".into(),
        b: 0.1,
    };
    let mut out = Vec::new();
    write_csv(&[t], &mut out).unwrap();
    let s = String::from_utf8(out).unwrap();
    assert_eq!(
        s,
        "k,omega,branch,b,model\n5.0000000000000000e-1,-2.5000000000000000e-1,3,0.1,m\n"
    );
}
