use std::collections::HashMap;

use factdisp::matdet::{det, factorize_coupled, ComplexMatrix, Matrix, PolyMatrix};
use factdisp::models::*;
use factdisp::polyalg::rational::{int, rat, to_f64};
use factdisp::{MultiPoly, Rational};
use num::complex::Complex64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn var(s: &str) -> MultiPoly {
    MultiPoly::var(s)
}

fn k_const(r: Rational) -> MultiPoly {
    MultiPoly::constant(r)
}

fn twt_params() -> TwtParams {
    TwtParams {
        c: int(2),
        l: rat(1, 2),
        c_c: int(4),
        beta: int(3),
        omega_rp: int(2),
        v0: int(1),
        b: rat(1, 2),
    }
}

fn subst_matrix(m: &PolyMatrix, name: &str, value: &MultiPoly) -> PolyMatrix {
    m.map(|e| e.substitute(name, value))
}

fn eval_c(m: &ComplexMatrix, vals: &[(&str, f64)]) -> Vec<Vec<Complex64>> {
    let env: HashMap<String, f64> = vals.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    m.rows()
        .iter()
        .map(|r| r.iter().map(|e| e.eval(&env).unwrap()).collect())
        .collect()
}

fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

fn real_matrix(t: &[[f64; 3]; 3]) -> Vec<Vec<Complex64>> {
    t.iter()
        .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .collect()
}

fn transpose(a: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

#[test]
fn twt_at_zero_coupling_is_block_diagonal() {
    let p = twt_params();
    let m = subst_matrix(&twt_matrix(&p).unwrap(), "b", &MultiPoly::zero());
    // k^2 + (omega_c^2 - w^2)/W^2 with W^2 = 1/(CL), omega_c^2 = 1/(C_c L)
    let w2 = p.w_squared();
    let oc2 = p.omega_c_squared();
    let expected = var("k").pow(2)
        + (k_const(oc2) - var("w").pow(2)).scale(&(Rational::from_integer(1.into()) / w2));
    assert_eq!(m.get(0, 0), &expected);
    assert!(m.get(0, 1).is_zero());
    assert!(m.get(1, 1).is_zero());
}

#[test]
fn twt_scaling_identity() {
    let p = twt_params();
    for m in [twt_matrix(&p).unwrap(), twt_u_matrix(&p).unwrap()] {
        let m1 = subst_matrix(&m, "b", &MultiPoly::one());
        let db = Matrix::diag(vec![MultiPoly::one(), var("b")]);
        let rebuilt = db.mul(&m1).unwrap().mul(&db).unwrap();
        assert_eq!(rebuilt, m);
    }
}

#[test]
fn twt_det_at_zero_wavenumber() {
    let p = twt_params();
    let d = det(&twt_matrix(&p).unwrap()).substitute("k", &MultiPoly::zero());
    let w2 = var("w").pow(2);
    let first = (k_const(p.omega_c_squared()) - &w2)
        .scale(&(Rational::from_integer(1.into()) / p.w_squared()));
    let second = var("b").pow(2)
        * (k_const(&p.omega_rp * &p.omega_rp) - &w2)
            .scale(&(Rational::from_integer(1.into()) / p.gamma()));
    assert_eq!(d, first * second);
}

#[test]
fn twt_u_form_is_k_form_times_u_squared() {
    let p = twt_params();
    let mk = twt_matrix(&p).unwrap();
    let mu = twt_u_matrix(&p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (u, w, b): (f64, f64, f64) = (
            rng.gen_range(0.3..3.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-1.0..1.0),
        );
        let k = w / u;
        let ek: HashMap<String, f64> = [("k", k), ("w", w), ("b", b)]
            .iter()
            .map(|(a, v)| (a.to_string(), *v))
            .collect();
        let eu: HashMap<String, f64> = [("u", u), ("w", w), ("b", b)]
            .iter()
            .map(|(a, v)| (a.to_string(), *v))
            .collect();
        for (x, y) in mk.entries().zip(mu.entries()) {
            let lhs = u * u * x.eval(&ek).unwrap();
            let rhs = y.eval(&eu).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()),
                "{lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn twt_physical_form_agrees_at_the_fixed_coupling() {
    let p = twt_params();
    let b = k_const(p.b.clone());
    let a = subst_matrix(&twt_matrix(&p).unwrap(), "b", &b);
    let c = subst_matrix(&twt_matrix_physical(&p).unwrap(), "b", &b);
    assert_eq!(a, c);
}

#[test]
fn twt_rejects_bad_parameters() {
    let mut p = twt_params();
    p.b = Rational::zero();
    assert_eq!(twt_matrix(&p), Err(ModelError::ZeroGamma));
    assert!(twt_matrix_physical(&p).is_ok());
    p.c = int(-1);
    assert_eq!(twt_matrix_physical(&p), Err(ModelError::NonPositive("C")));
}

#[test]
fn wing_determinant_matches_factorized_form() {
    let c = WingCoeffs::symbolic();
    assert_eq!(det(&wing_matrix(&c)), wing_dispersion(&c));
    let f = factorize_coupled(&wing_system(&c)).unwrap();
    let expected = -(var("b").pow(2)
        * var("a").pow(2)
        * var("EI")
        * var("k").pow(4)
        * var("m")
        * var("w").pow(2));
    assert_eq!(f.remainder, expected);
    assert_eq!(&f.g1 * &f.g2 + &f.remainder, wing_dispersion(&c));
    assert!(f.remainder.substitute("b", &MultiPoly::zero()).is_zero());
}

#[test]
fn wing_unit_remainder_and_branch() {
    let f = factorize_coupled(&wing_system(&WingParams::unit().coeffs())).unwrap();
    let r = f.remainder.div_var("b").unwrap().div_var("b").unwrap();
    let mut at = HashMap::new();
    at.insert("k".to_string(), int(1));
    at.insert("w".to_string(), int(1));
    assert_eq!(r.eval_exact(&at).unwrap(), int(-1));

    let mut p = WingParams::unit();
    p.gj = int(4);
    let g1 = factorize_coupled(&wing_system(&p.coeffs())).unwrap().g1;
    assert!(g1.substitute("w", &var("k").scale(&int(2))).is_zero());
    let full0 = det(&wing_matrix(&p.coeffs())).substitute("b", &MultiPoly::zero());
    let f = factorize_coupled(&wing_system(&p.coeffs())).unwrap();
    assert_eq!(full0, &f.g1 * &f.g2);
}

#[test]
fn wing_origin_is_on_the_dispersion_set() {
    let d = wing_dispersion(&WingParams::unit().coeffs());
    let at = d
        .substitute("k", &MultiPoly::zero())
        .substitute("w", &MultiPoly::zero());
    assert!(at.is_zero());
}

#[test]
fn mindlin_det_cb_is_h_f_a() {
    let c = MindlinCoeffs::symbolic();
    let (f, a) = mindlin_factorized(&c);
    let d = det(&mindlin_c_matrix(&c));
    assert!(d.is_real());
    assert_eq!(d.re, var("h") * f * a);
}

#[test]
fn mindlin_det_full_matches_radial_form() {
    let c = MindlinCoeffs::symbolic();
    let full = det(&mindlin_full_matrix(&c));
    assert!(full.is_real());
    let radial = det(&mindlin_c_matrix(&c)).re;
    let k2 = var("kx").pow(2) + var("ky").pow(2);
    assert_eq!(radial.substitute_square("k", &k2).unwrap(), full.re);
}

#[test]
fn mindlin_reduced_block_factorizes() {
    let c = MindlinCoeffs::symbolic();
    let f = factorize_coupled(&mindlin_reduced_system(&c)).unwrap();
    let total = (&f.g1 * &f.g2 + f.remainder.clone()).re;
    assert_eq!(total, var("h") * c.a());
    assert!(f.remainder.substitute("b", &MultiPoly::zero()).is_zero());
}

#[test]
fn mindlin_at_zero_coupling() {
    let c = MindlinCoeffs::symbolic();
    let m = mindlin_full_matrix(&c).map(|e| e.substitute("b", &MultiPoly::zero()));
    assert!(m.get(0, 2).is_zero() && m.get(1, 2).is_zero());
    assert!(m.get(2, 0).is_zero() && m.get(2, 1).is_zero());
    let cb = mindlin_c_matrix(&c).map(|e| e.substitute("b", &MultiPoly::zero()));
    assert!(cb.is_diagonal());
    let (_, a) = mindlin_factorized(&c);
    let a0 = a.substitute("b", &MultiPoly::zero());
    let rot = var("rho") * var("h").pow(3) * var("w").pow(2);
    let expected = (rot.scale(&rat(1, 12)) - var("D") * var("k").pow(2))
        * (var("rho") * var("w").pow(2) - var("kappa") * var("G") * var("k").pow(2));
    assert_eq!(a0, expected);
}

#[test]
fn mindlin_axis_aligned_coupling() {
    let c = MindlinCoeffs::symbolic();
    let m = mindlin_full_matrix(&c).map(|e| e.substitute("ky", &MultiPoly::zero()));
    assert!(m.get(0, 2).is_zero() && m.get(2, 0).is_zero());
    assert!(!m.get(1, 2).is_zero() && !m.get(2, 1).is_zero());
    let t = t_matrix(1.0, 0.0).unwrap();
    for row in t {
        let nz: Vec<f64> = row.iter().copied().filter(|x| *x != 0.0).collect();
        assert_eq!(nz.len(), 1);
        assert_eq!(nz[0].abs(), 1.0);
    }
}

#[test]
fn mindlin_zero_intercepts() {
    let p = MindlinParams::unit(rat(1, 10));
    let (f, a) = mindlin_factorized(&p.coeffs());
    // omega0^2 = 12 b^2 kappa G / (rho h^2) = 12/100
    let w2 = rat(12, 100);
    let mut at = HashMap::new();
    at.insert("k".to_string(), int(0));
    at.insert("b".to_string(), p.b.clone());
    let f0 = f.eval_partial(&at).unwrap();
    let a0 = a.eval_partial(&at).unwrap();
    let f0 = f0.substitute_square("w", &k_const(w2.clone())).unwrap();
    let a0 = a0.substitute_square("w", &k_const(w2)).unwrap();
    assert!(f0.is_zero());
    assert!(a0.is_zero());
}

fn random_mindlin(rng: &mut ChaCha8Rng) -> MindlinParams {
    let mut r = |lo: i64, hi: i64| rat(rng.gen_range(lo..hi), 10);
    MindlinParams {
        rho: r(5, 30),
        h: r(2, 15),
        d: r(5, 30),
        nu: r(-5, 5),
        kappa: r(5, 12),
        g: r(5, 30),
        b: r(0, 5),
    }
}

#[test]
fn mindlin_hermitian_and_similarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let p = random_mindlin(&mut rng);
        p.validate().unwrap();
        let c = p.coeffs();
        let kx: f64 = rng.gen_range(-2.0..2.0);
        let ky: f64 = rng.gen_range(-2.0..2.0);
        let w: f64 = rng.gen_range(-3.0..3.0);
        let b = to_f64(&p.b);
        let bb = eval_c(
            &mindlin_full_matrix(&c),
            &[("kx", kx), ("ky", ky), ("w", w), ("b", b)],
        );
        for i in 0..3 {
            for j in 0..3 {
                assert!((bb[i][j] - bb[j][i].conj()).norm() < 1e-12);
            }
        }
        let (t, cb) = mindlin_block_diag(&c, kx, ky).unwrap();
        let cb = eval_c(&cb, &[("w", w), ("b", b)]);
        let tc = real_matrix(&t);
        let tt = transpose(&tc);
        let id = matmul(&tc, &tt);
        let rebuilt = matmul(&matmul(&tc, &cb), &tt);
        let scale = bb.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((id[i][j] - e).norm() < 1e-14);
                assert!((rebuilt[i][j] - bb[i][j]).norm() <= 1e-10 * scale);
            }
        }
        // tau_3 and the invariant complement
        let tau: Vec<Vec<Complex64>> = (0..3).map(|j| (0..3).map(|i| tc[i][j]).collect()).collect();
        let apply = |v: &[Complex64]| -> Vec<Complex64> {
            (0..3)
                .map(|i| (0..3).map(|j| bb[i][j] * v[j]).sum())
                .collect()
        };
        let f_val = cb[2][2];
        let b3 = apply(&tau[2]);
        for i in 0..3 {
            assert!((b3[i] - f_val * tau[2][i]).norm() <= 1e-10 * scale);
        }
        for v in tau.iter().take(2) {
            let bv = apply(v);
            let dot: Complex64 = (0..3).map(|i| bv[i] * tau[2][i].conj()).sum();
            assert!(dot.norm() <= 1e-10 * scale);
        }
    }
}

#[test]
fn mindlin_block_diag_requires_nonzero_k() {
    let c = MindlinParams::unit(Rational::zero()).coeffs();
    assert!(matches!(
        mindlin_block_diag(&c, 0.0, 0.0),
        Err(ModelError::ZeroWavenumber)
    ));
    assert!(t_matrix(0.0, 0.0).is_err());
}

#[test]
fn mindlin_params_validation() {
    let mut p = MindlinParams::unit(Rational::zero());
    assert!(p.validate().is_ok());
    p.nu = rat(3, 5);
    assert!(matches!(p.validate(), Err(ModelError::Poisson(_))));
    p.nu = int(-1);
    assert!(p.validate().is_err());
    p.nu = Rational::zero();
    p.kappa = Rational::zero();
    assert_eq!(p.validate(), Err(ModelError::NonPositive("kappa")));
}

#[test]
fn wave_speed_relations() {
    for nu in [-0.9, -0.3, 0.0, 0.1, 0.25, 0.3, 0.45, 0.499] {
        let s = wave_speeds(2.5, nu, 1.3).unwrap();
        let ratio = s.c_t * s.c_t / (s.c_p * s.c_p);
        assert!((ratio - (1.0 - nu) / 2.0).abs() < 1e-14, "nu={nu}");
        assert!(s.c_l > s.c_t);
    }
    let s = wave_speeds(2.0, 0.0, 0.5).unwrap();
    assert!((s.c_p - 2.0).abs() < 1e-15);
    assert!((s.c_t - 2f64.sqrt()).abs() < 1e-15);
    let s = wave_speeds(1.0, 0.3, 1.0).unwrap();
    assert!((s.c_t * s.c_t / (s.c_p * s.c_p) - 0.35).abs() < 1e-15);
    assert_eq!(wave_speeds(1.0, 0.5, 1.0), Err(ModelError::Incompressible));
    assert!(wave_speeds(1.0, 0.7, 1.0).is_err());
    assert!(wave_speeds(0.0, 0.3, 1.0).is_err());
}

#[test]
fn plane_stress_lambda_is_consistent() {
    for (e, nu) in [
        (int(1), rat(3, 10)),
        (rat(7, 2), rat(-1, 4)),
        (int(200), rat(1, 3)),
    ] {
        let lp = plane_stress_lambda(&e, &nu);
        let one = Rational::from_integer(1.into());
        assert_eq!(lp, &nu * &e / (&one - &nu * &nu));
        let mu = shear_modulus(&e, &nu);
        // c_P^2 rho = lambda' + 2 mu = E / (1 - nu^2)
        assert_eq!(&lp + &mu * int(2), &e / (&one - &nu * &nu));
    }
}

#[test]
fn velocity_residual_nondispersive_roots() {
    let mut p = MindlinParams::unit(Rational::zero());
    p.kappa = rat(5, 6);
    let ct = to_f64(&p.ct_squared()).sqrt();
    let cp = to_f64(&p.cp_squared()).sqrt();
    for k in [0.1, 1.0, 7.0] {
        assert!(
            velocity_residual_a(&p, p_kappa(&p).sqrt() * ct, k)
                .unwrap()
                .abs()
                < 1e-12
        );
        assert!(velocity_residual_a(&p, cp, k).unwrap().abs() < 1e-12);
        assert!(velocity_residual_a(&p, 0.5 * cp, k).unwrap().abs() > 1e-3);
    }
    assert_eq!(
        velocity_residual_a(&p, 0.0, 1.0),
        Err(ModelError::ZeroSpeed)
    );
}

fn p_kappa(p: &MindlinParams) -> f64 {
    to_f64(&p.kappa)
}

#[test]
fn f_branch_speed_behaviour() {
    let p0 = MindlinParams::unit(Rational::zero());
    for k in [0.01, 0.5, 3.0, 100.0] {
        assert_eq!(f_branch_speed(&p0, k).unwrap(), 1.0);
    }
    let p = MindlinParams::unit(rat(1, 5));
    let mut prev = f64::INFINITY;
    for k in [10.0, 20.0, 40.0, 80.0] {
        let gap =
            (f_branch_speed(&p, k).unwrap() - f_branch_speed_asymptotic(&p, k).unwrap()).abs();
        let scaled = gap * k.powi(4);
        assert!(scaled < 1.0 && scaled <= prev * 1.01);
        prev = scaled;
    }
    assert!(f_branch_speed(&p, 0.0).is_err());
}

#[test]
fn f_branch_speed_solves_f_for_consistent_parameters() {
    let p = MindlinParams::from_young(
        int(3),
        rat(1, 4),
        rat(6, 5),
        rat(1, 2),
        rat(5, 6),
        rat(3, 10),
    )
    .unwrap();
    let (f, _) = mindlin_factorized(&p.coeffs());
    for k in [0.2, 1.0, 5.0] {
        let c = f_branch_speed(&p, k).unwrap();
        let env: HashMap<String, f64> = [("k", k), ("w", c * k), ("b", 0.3)]
            .iter()
            .map(|(a, v)| (a.to_string(), *v))
            .collect();
        let scale = f.term_magnitude(&env).unwrap();
        assert!(f.eval(&env).unwrap().abs() <= 1e-12 * scale);
    }
}

#[test]
fn kirchhoff_unit_roots() {
    let p = KirchhoffParams {
        rho: int(1),
        h: int(1),
        d: int(1),
    };
    let d = kirchhoff_radial(&p)
        .unwrap()
        .substitute("k", &MultiPoly::one());
    assert_eq!(d.to_univariate("w").unwrap(), vec![int(-1), int(0), int(1)]);
    let d0 = kirchhoff_radial(&p)
        .unwrap()
        .substitute("w", &MultiPoly::zero());
    assert_eq!(d0, -var("k").pow(4));
    let full = kirchhoff_dispersion(&p).unwrap();
    let k2 = var("kx").pow(2) + var("ky").pow(2);
    assert_eq!(
        kirchhoff_radial(&p)
            .unwrap()
            .substitute_square("k", &k2)
            .unwrap(),
        full
    );
}
