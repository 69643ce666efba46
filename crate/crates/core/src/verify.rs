//! Programmatic checks of the library's identities, grouped into suites.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num::complex::Complex64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::branches::{expand_roots, real_roots};
use crate::branches::{
    laurent_s, log_samples, lower_series, newton_residual, newton_residual_exact, pqr,
    residual_order, roots_at, s_quadratic_residual, trace_branches, upper_series, SBranch,
    ORDER_TOL,
};
use crate::crosspoint::{
    crosspoint_coeffs, crosspoint_lagrangian, deviation, normal_form, solve_delta, CrossPointData,
    DeltaRoots, QuadDispersion,
};
use crate::lagparse::parse_lagrangian;
use crate::lagrangian::{dispersion_poly, match_up_to_signs, symbol_matrix, SignPattern};
use crate::library;
use crate::matdet::{
    adjugate, coupled_b_expansion, det, first_order_diagonal, first_order_trace, laplace_expand,
    markus_expansion, ComplexMatrix, IndexSet, Matrix, PolyMatrix, RationalMatrix,
};
use crate::mechanalog::{
    characteristic_system, crossing_param, eigenfreqs, linspace, min_gap, partial_freqs, sweep,
    OscillatorPair, P_RANGE, P_STEPS,
};
use crate::models::{
    f_branch_speed, f_branch_speed_asymptotic, kirchhoff_dispersion, mindlin_block_diag,
    mindlin_c_matrix, mindlin_factorized, mindlin_full_matrix, twt_matrix, twt_matrix_physical,
    twt_u_matrix, wave_speeds, wing_dispersion, wing_matrix, KirchhoffParams, MindlinCoeffs,
    MindlinParams, TwtParams, WingCoeffs,
};
use crate::polyalg::rational::{int, rat, to_f64};
use crate::polyalg::{ComplexPoly, MultiPoly, Num, Rational};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{mark}] {:>2} {:<34} {}",
            self.criterion, self.name, self.detail
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Detexp,
    Pipeline,
    Mindlin,
    Crosspoint,
    Mech,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
            Suite::Detexp => &[1, 2],
            Suite::Pipeline => &[3, 4, 11],
            Suite::Mindlin => &[5, 6, 7, 8],
            Suite::Crosspoint => &[9],
            Suite::Mech => &[10],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "detexp" => Suite::Detexp,
            "pipeline" => Suite::Pipeline,
            "mindlin" => Suite::Mindlin,
            "crosspoint" => Suite::Crosspoint,
            "mech" => Suite::Mech,
            _ => return Err(format!("unknown suite `{s}`")),
        })
    }
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    suite
        .criteria()
        .iter()
        .flat_map(|&c| run_criterion(c))
        .collect()
}

/// Checks for one numbered criterion; empty for unknown numbers.
pub fn run_criterion(n: u8) -> Vec<Check> {
    let list: Vec<(&'static str, CheckFn)> = match n {
        1 => vec![
            ("markus expansion", markus as fn() -> Outcome),
            ("coupled reassembly", reassembly),
            ("first-order trace", first_order),
            ("diagonal first order", diagonal_first_order),
        ],
        2 => vec![
            ("adjugate identity", adjugate_identity as fn() -> Outcome),
            ("laplace row-set invariance", laplace),
            ("det(I + tau A) low orders", identity_plus_tau),
        ],
        3 => vec![("wing determinant", wing as fn() -> Outcome)],
        4 => vec![
            ("twt scaling (k form)", twt_k as fn() -> Outcome),
            ("twt scaling (u form)", twt_u),
        ],
        5 => vec![
            ("det C_b = h f A", mindlin_det as fn() -> Outcome),
            ("similarity B = T C T^t", mindlin_similarity),
            ("tau_3 eigenvector", mindlin_eigenvector),
        ],
        6 => vec![
            ("omega_0", omega0 as fn() -> Outcome),
            ("c_1", c1),
            ("lower series order", lower_order),
            ("upper series order", upper_order),
            ("laurent S residual", laurent_order),
        ],
        7 => vec![
            ("large-k slopes", large_k as fn() -> Outcome),
            ("lower branch curvature", curvature),
        ],
        8 => vec![
            ("c_T^2 / c_P^2", speed_ratio as fn() -> Outcome),
            ("f-branch speed root", f_speed_root),
            ("f-branch speed expansion", f_speed_order),
        ],
        9 => vec![
            ("hyperbola invariant", hyperbola as fn() -> Outcome),
            ("asymptotic deviation", cp_deviation),
            ("lagrangian round trip", cp_round_trip),
        ],
        10 => vec![
            ("p* and Omega*", mech_crossing as fn() -> Outcome),
            ("split law", mech_split),
            ("closed form vs det roots", mech_roots),
            ("min-gap location", mech_min_gap),
        ],
        11 => vec![
            ("wing .lag", pipe_wing as fn() -> Outcome),
            ("twt .lag", pipe_twt),
            ("kirchhoff .lag + null term", pipe_kirchhoff),
            ("mindlin .lag", pipe_mindlin),
            ("crosspoint .lag", pipe_crosspoint),
        ],
        _ => vec![],
    };
    list.into_iter()
        .map(|(name, f)| {
            let (pass, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Check {
                criterion: n,
                name,
                pass,
                detail,
            }
        })
        .collect()
}

type Outcome = Result<String, String>;
type CheckFn = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn poly(s: &str) -> MultiPoly {
    s.parse().expect("valid literal")
}

/// Permutation-sum determinant, independent of elimination.
fn leibniz(m: &RationalMatrix) -> Rational {
    let n = m.dim();
    let mut acc = Rational::zero();
    for perm in (0..n).permutations(n) {
        let inv = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut p = if inv % 2 == 0 { int(1) } else { int(-1) };
        for (i, &j) in perm.iter().enumerate() {
            p *= m.get(i, j);
        }
        acc += p;
    }
    acc
}

fn int_matrix(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let v: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-5..6)).collect();
    Matrix::from_fn(n, |i, j| int(v[i * n + j]))
}

fn rat_matrix(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let v: Vec<(i64, i64)> = (0..n * n)
        .map(|_| (rng.gen_range(-6..7), rng.gen_range(1..5)))
        .collect();
    Matrix::from_fn(n, |i, j| rat(v[i * n + j].0, v[i * n + j].1))
}

fn to_poly(m: &RationalMatrix) -> PolyMatrix {
    m.map(|x| MultiPoly::constant(x.clone()))
}

fn markus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in 2..=5 {
        for _ in 0..100 {
            let (a, b) = (int_matrix(&mut rng, n), int_matrix(&mut rng, n));
            let m = markus_expansion(&a, &b).map_err(err)?;
            let d = leibniz(&a.add(&b).map_err(err)?);
            ensure(m == d, || format!("n={n}: {m} != {d}"))?;
        }
    }
    Ok("400 pairs, n = 2..5, exact".into())
}

/// `A` constant, `B(b) = B0 + b B1`.
fn coupled_pair(rng: &mut ChaCha8Rng, n: usize) -> (PolyMatrix, PolyMatrix) {
    let a = to_poly(&int_matrix(rng, n));
    let b0 = int_matrix(rng, n);
    let b1 = int_matrix(rng, n);
    let bv = MultiPoly::var("b");
    let bp = Matrix::from_fn(n, |i, j| {
        MultiPoly::constant(b0.get(i, j).clone()) + bv.scale(b1.get(i, j))
    });
    (a, bp)
}

fn reassembly() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let bv = MultiPoly::var("b");
    for n in 2..=5 {
        for _ in 0..20 {
            let (a, bp) = coupled_pair(&mut rng, n);
            let exp = coupled_b_expansion(&a, &bp, "b").map_err(err)?;
            let full = det(&a.add(&bp.scale(&bv)).map_err(err)?);
            ensure(exp.reassemble("b") == full, || {
                format!("n={n}: reassembly differs")
            })?;
        }
    }
    Ok("80 systems, exact polynomial equality in b".into())
}

fn first_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let bv = MultiPoly::var("b");
    for n in 2..=5 {
        for _ in 0..20 {
            let (a, bp) = coupled_pair(&mut rng, n);
            let full = det(&a.add(&bp.scale(&bv)).map_err(err)?).with_vars(&["b"]);
            let c1 = full
                .coefficients_in("b")
                .get(1)
                .cloned()
                .unwrap_or_default();
            let b0 = bp.map(|e| e.substitute("b", &MultiPoly::zero()));
            let tr = first_order_trace(&a, &b0).map_err(err)?;
            ensure(c1 == tr, || format!("n={n}: {c1} != {tr}"))?;
        }
    }
    Ok("b^1 coefficient = tr(adj(A) B(0)), exact".into())
}

fn diagonal_first_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for n in 2..=5 {
        for _ in 0..20 {
            let d = int_matrix(&mut rng, n);
            let a = to_poly(&Matrix::from_fn(n, |i, j| {
                if i == j {
                    d.get(i, j).clone()
                } else {
                    int(0)
                }
            }));
            let b = to_poly(&int_matrix(&mut rng, n));
            let x = first_order_diagonal(&a, &b).map_err(err)?;
            let y = first_order_trace(&a, &b).map_err(err)?;
            ensure(x == y, || format!("n={n}: {x} != {y}"))?;
        }
    }
    Ok("80 diagonal cases, exact".into())
}

fn adjugate_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for n in 1..=5 {
        for _ in 0..20 {
            let m = rat_matrix(&mut rng, n);
            let expect = Matrix::identity(n).scale(&leibniz(&m));
            ensure(adjugate(&m).mul(&m).map_err(err)? == expect, || {
                format!("n={n}")
            })?;
        }
    }
    Ok("100 rational matrices, n <= 5, exact".into())
}

fn laplace() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for n in 1..=5 {
        for _ in 0..5 {
            let m = rat_matrix(&mut rng, n);
            let d = leibniz(&m);
            for r in 1..=n {
                for rows in IndexSet::all(r, n) {
                    let l = laplace_expand(&m, &rows).map_err(err)?;
                    ensure(l == d, || format!("n={n} rows={:?}", rows.indices()))?;
                }
            }
        }
    }
    Ok("every row set, n <= 5, exact".into())
}

fn identity_plus_tau() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    let tau = MultiPoly::var("tau");
    for n in 1..=5 {
        for _ in 0..10 {
            let m = rat_matrix(&mut rng, n);
            let p = Matrix::identity(n)
                .add(&to_poly(&m).scale(&tau))
                .map_err(err)?;
            let cs = det(&p).with_vars(&["tau"]).coefficients_in("tau");
            let c0 = cs.first().cloned().unwrap_or_default();
            let c1 = cs.get(1).cloned().unwrap_or_default();
            ensure(
                c0 == MultiPoly::one() && c1 == MultiPoly::constant(m.trace()),
                || format!("n={n}"),
            )?;
        }
    }
    Ok("coefficients (1, tr A), exact".into())
}

fn wing() -> Outcome {
    let c = WingCoeffs::symbolic();
    let d = det(&wing_matrix(&c));
    let expected = poly("(Im*w^2 - GJ*k^2)*(m*w^2 - EI*k^4) - b^2*a^2*EI*k^4*m*w^2");
    ensure(d == expected, || format!("det = {d}"))?;
    ensure(d == wing_dispersion(&c), || "closed form differs".into())?;
    Ok("exact; remainder carries k^4 (matrix form taken as authoritative)".into())
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

fn scaling(m: &PolyMatrix) -> Outcome {
    let m1 = m.map(|e| e.substitute("b", &MultiPoly::one()));
    let db = Matrix::diag(vec![MultiPoly::one(), MultiPoly::var("b")]);
    let rebuilt = db.mul(&m1).map_err(err)?.mul(&db).map_err(err)?;
    ensure(&rebuilt == m, || "D_b M(1) D_b differs".into())?;
    Ok("exact in (k, w, b)".into())
}

fn twt_k() -> Outcome {
    scaling(&twt_matrix(&twt_params()).map_err(err)?)
}

fn twt_u() -> Outcome {
    scaling(&twt_u_matrix(&twt_params()).map_err(err)?)
}

fn mindlin_det() -> Outcome {
    let c = MindlinCoeffs::symbolic();
    let (f, a) = mindlin_factorized(&c);
    let d = det(&mindlin_c_matrix(&c));
    ensure(d.is_real() && d.re == MultiPoly::var("h") * f * a, || {
        "det differs".into()
    })?;
    Ok("exact in (k, w, b) with symbolic parameters".into())
}

type CMat = Vec<Vec<Complex64>>;

fn eval_c(m: &ComplexMatrix, env: &HashMap<String, f64>) -> Result<CMat, String> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|e| e.eval(env).map_err(err)).collect())
        .collect()
}

fn matmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

fn env(vals: &[(&str, f64)]) -> HashMap<String, f64> {
    vals.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

struct MindlinPoint {
    full: CMat,
    cb: CMat,
    t: CMat,
    scale: f64,
}

fn mindlin_points() -> Result<Vec<MindlinPoint>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let mut out = Vec::new();
    for _ in 0..50 {
        let mut r = |lo: i64, hi: i64| rat(rng.gen_range(lo..hi), 10);
        let p = MindlinParams {
            rho: r(5, 30),
            h: r(2, 15),
            d: r(5, 30),
            nu: r(-5, 5),
            kappa: r(5, 12),
            g: r(5, 30),
            b: r(0, 5),
        };
        let c = p.coeffs();
        let (kx, ky, w): (f64, f64, f64) = (
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-3.0..3.0),
        );
        let b = to_f64(&p.b);
        let full = eval_c(
            &mindlin_full_matrix(&c),
            &env(&[("kx", kx), ("ky", ky), ("w", w), ("b", b)]),
        )?;
        let (t, cb) = mindlin_block_diag(&c, kx, ky).map_err(err)?;
        let cb = eval_c(&cb, &env(&[("w", w), ("b", b)]))?;
        let t = t
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        let scale = full.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
        out.push(MindlinPoint { full, cb, t, scale });
    }
    Ok(out)
}

fn mindlin_similarity() -> Outcome {
    let mut worst: f64 = 0.0;
    for pt in mindlin_points()? {
        let tt: CMat = (0..3)
            .map(|i| (0..3).map(|j| pt.t[j][i]).collect())
            .collect();
        let rebuilt = matmul(&matmul(&pt.t, &pt.cb), &tt);
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((rebuilt[i][j] - pt.full[i][j]).norm() / pt.scale);
            }
        }
    }
    ensure(worst <= 1e-10, || format!("relative error {worst:.2e}"))?;
    Ok(format!("50 points, max relative error {worst:.1e}"))
}

fn mindlin_eigenvector() -> Outcome {
    let mut worst: f64 = 0.0;
    for pt in mindlin_points()? {
        let tau3: Vec<Complex64> = (0..3).map(|i| pt.t[i][2]).collect();
        let f = pt.cb[2][2];
        for i in 0..3 {
            let bv: Complex64 = (0..3).map(|j| pt.full[i][j] * tau3[j]).sum();
            worst = worst.max((bv - f * tau3[i]).norm() / pt.scale);
        }
    }
    ensure(worst <= 1e-12, || format!("relative error {worst:.2e}"))?;
    Ok(format!("B tau_3 = f tau_3, max relative error {worst:.1e}"))
}

fn mindlin_a_at(b: &Rational) -> MultiPoly {
    let (_, a) = mindlin_factorized(&MindlinParams::unit(b.clone()).coeffs());
    a.substitute("b", &MultiPoly::constant(b.clone()))
}

fn omega0() -> Outcome {
    let p = MindlinParams::unit(rat(1, 10));
    let w0 = upper_series(&p).map_err(err)?.values[0].to_f64();
    let want = 0.2 * 3f64.sqrt();
    ensure((w0 - want).abs() <= 1e-12, || format!("{w0} vs {want}"))?;
    let a0 = mindlin_a_at(&p.b).substitute("k", &MultiPoly::zero());
    let roots = expand_roots(&real_roots(&a0, "w", 1e-14).map_err(err)?);
    let top = roots.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    ensure((top - want).abs() <= 1e-12, || {
        format!("root {top} vs {want}")
    })?;
    Ok(format!("{w0:.15}"))
}

fn c1() -> Outcome {
    let s = lower_series(&MindlinParams::unit(rat(1, 10))).map_err(err)?;
    ensure(s.values[0] == Num::Exact(int(10)), || {
        format!("c1 = {}", s.values[0])
    })?;
    Ok("c1 = 10 exact".into())
}

fn lower_order() -> Outcome {
    let p = MindlinParams::unit(rat(1, 10));
    let a = mindlin_a_at(&p.b);
    let s = lower_series(&p).map_err(err)?;
    let est = residual_order(
        |k| {
            let kr = Rational::from_float(k).expect("finite");
            let w = s.eval_exact(&kr).expect("exact coefficients");
            let at: HashMap<String, Rational> =
                [("k".to_string(), kr), ("w".to_string(), w)].into();
            newton_residual_exact(&a, &at).unwrap_or(f64::NAN)
        },
        &log_samples(1e-3, 1e-1, 9),
    )
    .map_err(err)?;
    ensure(est.passes(8.0, ORDER_TOL), || format!("order {est}"))?;
    Ok(format!("order {est}"))
}

fn upper_order() -> Outcome {
    let p = MindlinParams::unit(rat(1, 10));
    let a = mindlin_a_at(&p.b);
    let s = upper_series(&p).map_err(err)?;
    let est = residual_order(
        |k| newton_residual(&a, "k", k, s.eval(k)).unwrap_or(f64::NAN),
        &log_samples(1e-3, 1e-1, 9),
    )
    .map_err(err)?;
    ensure(est.passes(6.0, ORDER_TOL), || format!("order {est}"))?;
    Ok(format!("order {est}"))
}

fn laurent_order() -> Outcome {
    let p = MindlinParams::unit(rat(1, 10));
    let (pp, _, _) = pqr(&p);
    let mut notes = Vec::new();
    for sign in [SBranch::Plus, SBranch::Minus] {
        let s = laurent_s(&p, sign, 5).map_err(err)?;
        let res = s_quadratic_residual(&p, &s);
        ensure(res.vanishes_below(&int(4), 0.0), || {
            format!("{sign:?}: low orders survive")
        })?;
        let est = residual_order(
            |w| {
                let wr = Rational::from_float(w).expect("finite");
                let sv = s
                    .terms()
                    .map(|(e, c)| {
                        let e: i32 = e.to_integer().try_into().expect("small exponent");
                        c.as_exact().expect("exact") * num::pow::Pow::pow(&wr, e)
                    })
                    .fold(Rational::zero(), |a, b| a + b);
                let v = &p.kappa * &p.g * &p.d * &sv * &sv - &pp * &sv + rat(1, 12)
                    - rat(1, 100) / (&wr * &wr);
                to_f64(&v)
            },
            &log_samples(1e-3, 1e-1, 9),
        )
        .map_err(err)?;
        ensure(est.passes(4.0, ORDER_TOL), || {
            format!("{sign:?}: order {est}")
        })?;
        notes.push(format!("{sign:?} {est}"));
    }
    Ok(notes.join(", "))
}

fn large_k() -> Outcome {
    let b = rat(1, 5);
    let a = mindlin_a_at(&b);
    let grid = log_samples(1.0, 100.0, 21);
    let traces = trace_branches(&a, "k", &grid, "mindlin-A", 0.2).map_err(err)?;
    let s12 = 12f64.sqrt();
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for t in &traces {
        let Some(w) = t.omega_at(grid[grid.len() - 1]) else {
            continue;
        };
        let r = (w / 100.0).abs();
        worst = worst.max((r - 1.0).abs().min((r - s12).abs()));
        n += 1;
    }
    ensure(n == 4, || format!("{n} branches at k = 100"))?;
    ensure(worst <= 1e-3, || format!("|w/k - s| = {worst:.2e}"))?;
    Ok(format!("4 branches, max |w/k - s| = {worst:.1e}"))
}

fn curvature() -> Outcome {
    let k = 0.01;
    let h = 1e-3;
    let lower = |b: &Rational, k: f64| -> Result<f64, String> {
        Ok(roots_at(&mindlin_a_at(b), "k", k)
            .map_err(err)?
            .into_iter()
            .filter(|w| *w > 0.0)
            .fold(f64::INFINITY, f64::min))
    };
    let mut curv = Vec::new();
    for b in [rat(1, 10), rat(1, 5)] {
        let c = (lower(&b, k + h)? - 2.0 * lower(&b, k)? + lower(&b, k - h)?) / (h * h);
        curv.push(c);
    }
    ensure(curv[1] < curv[0], || format!("{curv:?}"))?;
    Ok(format!(
        "w'' = {:.4} (b=0.1), {:.4} (b=0.2)",
        curv[0], curv[1]
    ))
}

fn speed_ratio() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let nu = i as f64 * 0.05;
        let s = wave_speeds(2.5, nu, 1.3).map_err(err)?;
        worst = worst.max((s.c_t * s.c_t / (s.c_p * s.c_p) - (1.0 - nu) / 2.0).abs());
    }
    ensure(worst <= 1e-14, || format!("error {worst:.2e}"))?;
    Ok(format!("nu = 0..0.45, max error {worst:.1e}"))
}

fn f_speed_root() -> Outcome {
    let p = MindlinParams::from_young(
        int(3),
        rat(1, 4),
        rat(6, 5),
        rat(1, 2),
        rat(5, 6),
        rat(3, 10),
    )
    .map_err(err)?;
    let (f, _) = mindlin_factorized(&p.coeffs());
    for k in [0.2, 1.0, 5.0, 50.0] {
        let c = f_branch_speed(&p, k).map_err(err)?;
        let e = env(&[("k", k), ("w", c * k), ("b", 0.3)]);
        let scale = f.term_magnitude(&e).map_err(err)?;
        let v = f.eval(&e).map_err(err)?.abs();
        ensure(v <= 1e-12 * scale, || format!("k={k}: residual {v:.2e}"))?;
    }
    Ok("closed-form speed solves f".into())
}

fn f_speed_order() -> Outcome {
    let p = MindlinParams::unit(rat(1, 5));
    let est = residual_order(
        |x| {
            let k = 1.0 / x;
            match (f_branch_speed(&p, k), f_branch_speed_asymptotic(&p, k)) {
                (Ok(a), Ok(b)) => a - b,
                _ => f64::NAN,
            }
        },
        &log_samples(1e-3, 1e-1, 9),
    )
    .map_err(err)?;
    ensure(est.passes(4.0, ORDER_TOL), || format!("order {est}"))?;
    Ok(format!("order {est} in 1/k"))
}

const CP_SETS: [(f64, f64); 6] = [
    (0.4, 1.0),
    (0.4, -1.0),
    (2.0, 1.0),
    (2.0, -1.0),
    (4.0, 1.0),
    (4.0, -1.0),
];

fn hyperbola() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    let mut worst: f64 = 0.0;
    for (gamma, gg) in CP_SETS {
        let cp = CrossPointData::normalized(1.0, 10.0, gamma, gg);
        let mut n = 0;
        while n < 1000 {
            let kappa: f64 = rng.gen_range(-3.0..3.0);
            if let DeltaRoots::Real(a, b) = solve_delta(&cp, kappa) {
                for d in [a, b] {
                    let (x, y) = normal_form(&cp, d, kappa).map_err(err)?;
                    worst = worst.max((x * x - y * y - cp.coupling_raw()).abs());
                }
                n += 1;
            }
        }
    }
    ensure(worst <= 1e-10, || format!("error {worst:.2e}"))?;
    Ok(format!("6 x 1000 samples, max error {worst:.1e}"))
}

fn cp_deviation() -> Outcome {
    let kappa = 1e3;
    let mut worst: f64 = 0.0;
    for (gamma, gg) in CP_SETS {
        let cp = CrossPointData::normalized(1.0, 10.0, gamma, gg);
        let DeltaRoots::Real(a, b) = solve_delta(&cp, kappa) else {
            return Err(format!("no real roots at kappa = {kappa}"));
        };
        let near = if (a + kappa).abs() < (b + kappa).abs() {
            a
        } else {
            b
        };
        let target = gamma * gg / 9.0;
        let rel = ((kappa * deviation(&cp, kappa, near) - target) / target).abs();
        worst = worst.max(rel);
    }
    ensure(worst <= 0.01, || format!("relative error {worst:.2e}"))?;
    Ok(format!("kappa = 1e3, max relative error {worst:.1e}"))
}

fn cp_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(902);
    for _ in 0..100 {
        let mut r = || rat(rng.gen_range(-50..50), rng.gen_range(1..12));
        let q = QuadDispersion {
            a: r(),
            b: r(),
            c: r(),
            d: r(),
        };
        let d = dispersion_poly(&crosspoint_lagrangian(&q)).map_err(err)?;
        ensure(d == q.poly(), || format!("{d} vs {}", q.poly()))?;
    }
    Ok("100 random coefficient sets, exact".into())
}

fn mech_crossing() -> Outcome {
    let o = OscillatorPair::reference();
    let p = crossing_param(&o).map_err(err)?;
    ensure(p == rat(1, 11), || format!("p* = {p}"))?;
    let (w1, w2) = partial_freqs(&o, &p).map_err(err)?;
    ensure(w1 == rat(12, 11) && w2 == rat(12, 11), || {
        format!("Omega*^2 = {w1}, {w2}")
    })?;
    let star = to_f64(&w1).sqrt();
    ensure(format!("{star:.3}") == "1.044", || {
        format!("Omega* = {star}")
    })?;
    Ok(format!("p* = 1/11, Omega*^2 = 12/11, Omega* = {star:.7}"))
}

fn mech_split() -> Outcome {
    let o = OscillatorPair::reference();
    let ps = rat(1, 11);
    for b in [rat(1, 5), rat(2, 5), rat(3, 5)] {
        let (m, p) = eigenfreqs(&o, &ps, &b).map_err(err)?;
        ensure(
            m == Num::Exact(rat(12, 11) - &b) && p == Num::Exact(rat(12, 11) + &b),
            || format!("b={b}: {m}, {p}"),
        )?;
    }
    Ok("12/11 +- b exact for b = 0.2, 0.4, 0.6".into())
}

fn mech_roots() -> Outcome {
    let o = OscillatorPair::reference();
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let p = rat(-1, 20) + rat(28 * i, 900);
        let d0 = det(&characteristic_system(&o, &p).map_err(err)?.system_matrix());
        for j in 0..10 {
            let b = rat(j, 15);
            let (m, pl) = eigenfreqs(&o, &p, &b).map_err(err)?;
            let d = d0.substitute("b", &MultiPoly::constant(b.clone()));
            let roots = expand_roots(&real_roots(&d, "w", 1e-15).map_err(err)?);
            let mut sq: Vec<f64> = roots.iter().filter(|w| **w > 0.0).map(|w| w * w).collect();
            sq.sort_by(f64::total_cmp);
            if sq.len() == 1 {
                sq.push(sq[0]);
            }
            ensure(sq.len() == 2, || format!("p={p} b={b}: {} roots", sq.len()))?;
            worst = worst
                .max((sq[0] - m.to_f64()).abs())
                .max((sq[1] - pl.to_f64()).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("error {worst:.2e}"))?;
    Ok(format!("100 (p, b) points, max error {worst:.1e}"))
}

fn mech_min_gap() -> Outcome {
    let o = OscillatorPair::reference();
    let grid = linspace(P_RANGE.0, P_RANGE.1, P_STEPS);
    let step = grid[1] - grid[0];
    let bs = [0.2, 0.4, 0.6];
    let traces = sweep(&o, &grid, &bs, P_RANGE.1).map_err(err)?;
    let mut worst: f64 = 0.0;
    for b in bs {
        let (p, _) = min_gap(&traces, b).ok_or("empty sweep")?;
        worst = worst.max((p - 1.0 / 11.0).abs());
    }
    ensure(worst <= step, || {
        format!("offset {worst:.2e} > step {step:.2e}")
    })?;
    Ok(format!("offset {worst:.1e} <= step {step:.1e}"))
}

fn complexify(m: &PolyMatrix) -> ComplexMatrix {
    m.map(|e| ComplexPoly::real(e.clone()))
}

fn pipe_wing() -> Outcome {
    let lag = parse_lagrangian(library::WING).map_err(err)?;
    let s = symbol_matrix(&lag).matrix;
    let hand = complexify(&wing_matrix(&WingCoeffs::symbolic()));
    let pat = match_up_to_signs(&s, &hand, &int(1)).ok_or("no sign pattern")?;
    ensure(
        pat == SignPattern {
            overall: 1,
            signs: vec![1, -1],
        },
        || format!("{pat:?}"),
    )?;
    let d = dispersion_poly(&lag).map_err(err)?;
    ensure(d == wing_dispersion(&WingCoeffs::symbolic()), || {
        "dispersion differs".into()
    })?;
    Ok("field signs (+, -), dispersion identical".into())
}

fn pipe_twt() -> Outcome {
    let lag = parse_lagrangian(library::TWT)
        .map_err(err)?
        .specialize(&["b"]);
    let s = symbol_matrix(&lag).matrix;
    let hand = twt_matrix_physical(&twt_params()).map_err(err)?;
    let pat = match_up_to_signs(&s, &complexify(&hand), &rat(1, 2)).ok_or("no sign pattern")?;
    ensure(
        pat == SignPattern {
            overall: -1,
            signs: vec![1, 1],
        },
        || format!("{pat:?}"),
    )?;
    let d = dispersion_poly(&lag).map_err(err)?;
    ensure(d.scale(&int(4)) == det(&hand), || {
        "dispersion differs".into()
    })?;
    Ok("matrix = -(1/2) physical form, 4 det = det".into())
}

fn pipe_kirchhoff() -> Outcome {
    let a = parse_lagrangian(library::KIRCHHOFF).map_err(err)?;
    let b = parse_lagrangian(library::KIRCHHOFF_NULL).map_err(err)?;
    let da = dispersion_poly(&a).map_err(err)?;
    ensure(da == dispersion_poly(&b).map_err(err)?, || {
        "null term changes dispersion".into()
    })?;
    ensure(da == poly("rho*h*w^2 - D*(kx^2 + ky^2)^2"), || {
        format!("{da}")
    })?;
    let unit = KirchhoffParams {
        rho: int(1),
        h: int(1),
        d: int(1),
    };
    ensure(
        dispersion_poly(&a.specialize(&[])).map_err(err)?
            == kirchhoff_dispersion(&unit).map_err(err)?,
        || "numeric form differs".into(),
    )?;
    Ok("exact, null term inert".into())
}

fn pipe_mindlin() -> Outcome {
    let lag = parse_lagrangian(library::MINDLIN).map_err(err)?;
    ensure(
        symbol_matrix(&lag).matrix == mindlin_full_matrix(&MindlinCoeffs::symbolic()),
        || "matrix differs".into(),
    )?;
    Ok("symbol matrix identical".into())
}

fn pipe_crosspoint() -> Outcome {
    let lag = parse_lagrangian(library::CROSSPOINT).map_err(err)?;
    let d = dispersion_poly(&lag).map_err(err)?;
    ensure(d == poly("(w + g1*k)*(w + g2*k) - gamma*ggamma"), || {
        format!("{d}")
    })?;
    let q = crosspoint_coeffs(&int(1), &int(10), &rat(2, 5), &int(1));
    let num = dispersion_poly(&lag.specialize(&[])).map_err(err)?;
    ensure(num == q.poly(), || format!("{num}"))?;
    Ok("dispersion identical".into())
}
