use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use factdisp::branches::{trace_branches, write_csv, BranchTrace};
use factdisp::crosspoint::{solve_delta, CrossPointData, DeltaRoots};
use factdisp::lagparse::{check_lagrangian, parse_lagrangian, Severity};
use factdisp::lagrangian::{dispersion_poly, symbol_matrix};
use factdisp::library;
use factdisp::matdet::{coupled_b_expansion, det, MatrixError, PolyMatrix};
use factdisp::mechanalog::{self, OscillatorPair};
use factdisp::models::{
    kirchhoff_radial, mindlin_factorized, twt_matrix_physical, wing_dispersion, KirchhoffParams,
    MindlinParams, TwtParams, WingParams,
};
use factdisp::polyalg::rational::{parse_rational, to_f64};
use factdisp::verify::{run_suite, Suite};
use factdisp::{MultiPoly, Rational};

use crate::{
    output, usage, CrosspointArgs, Emit, ExpandArgs, LagrangianArgs, MechArgs, ModelArgs,
    ModelName, VerifyArgs,
};

fn parse_value(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| usage(format!("`{s}` is not a number")))
}

fn parse_set(s: &str) -> Result<(String, Rational)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| usage(format!("expected NAME=VALUE, got `{s}`")))?;
    Ok((name.trim().to_string(), parse_value(value.trim())?))
}

pub fn lagrangian(a: &LagrangianArgs) -> Result<ExitCode> {
    let (src, label) = match (&a.file, &a.builtin) {
        (Some(p), _) => (
            fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?,
            p.display().to_string(),
        ),
        (None, Some(n)) => (
            library::source(n)
                .ok_or_else(|| {
                    usage(format!(
                        "unknown built-in `{n}`; known: {}",
                        library::names().collect::<Vec<_>>().join(", ")
                    ))
                })?
                .to_string(),
            n.clone(),
        ),
        (None, None) => return Err(usage("no input file")),
    };
    let diags = check_lagrangian(&src);
    for d in &diags {
        eprintln!("{label}:{d}");
    }
    if diags.iter().any(|d| d.severity == Severity::Error) {
        return Ok(ExitCode::from(1));
    }
    let mut lag = parse_lagrangian(&src).map_err(|e| anyhow::anyhow!("{e}"))?;
    for s in &a.set {
        let (name, value) = parse_set(s)?;
        if !lag.params().contains_key(&name) {
            return Err(usage(format!("`{name}` is not a declared parameter")));
        }
        lag.set_param(&name, value);
    }
    if a.numeric {
        let keep: Vec<&str> = a.keep.iter().map(String::as_str).collect();
        lag = lag.specialize(&keep);
    }
    let mut out = output(None)?;
    match a.emit {
        Emit::Matrix => writeln!(out, "{}", symbol_matrix(&lag))?,
        Emit::Dispersion => writeln!(out, "{}", dispersion_poly(&lag)?)?,
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn k_grid(a: &ModelArgs) -> Result<Vec<f64>> {
    let (lo, hi, n) = if a.grid.zoom {
        (-0.05, 0.05, 501)
    } else {
        (a.grid.k_min, a.grid.k_max, a.grid.k_steps)
    };
    if n < 2 || lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(usage("k grid needs k-min < k-max and at least 2 steps"));
    }
    Ok(mechanalog::linspace(lo, hi, n))
}

/// Feeds `NAME=VALUE` overrides to `assign`, which reports unknown names.
fn apply(set: &[String], mut assign: impl FnMut(&str, Rational) -> bool) -> Result<()> {
    for s in set {
        let (name, value) = parse_set(s)?;
        if !assign(&name, value) {
            return Err(usage(format!("unknown parameter `{name}`")));
        }
    }
    Ok(())
}

fn default_twt() -> TwtParams {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    TwtParams {
        c: r(2, 1),
        l: r(1, 2),
        c_c: r(4, 1),
        beta: r(3, 1),
        omega_rp: r(2, 1),
        v0: r(1, 1),
        b: r(1, 2),
    }
}

fn at_b(p: &MultiPoly, b: &Rational) -> MultiPoly {
    p.substitute("b", &MultiPoly::constant(b.clone()))
}

pub fn model(a: &ModelArgs) -> Result<ExitCode> {
    let grid = k_grid(a)?;
    let default_b: &[&str] = match a.name {
        ModelName::Mindlin => &["0", "0.1", "0.2"],
        ModelName::Wing => &["1"],
        ModelName::Twt => &["1/2"],
        ModelName::Kirchhoff => &["0"],
    };
    let bs: Vec<Rational> = if a.b.is_empty() {
        default_b
            .iter()
            .map(|s| parse_value(s))
            .collect::<Result<_>>()?
    } else {
        a.b.iter().map(|s| parse_value(s)).collect::<Result<_>>()?
    };
    // (model tag, dispersion in (k, w, b))
    let polys: Vec<(&str, MultiPoly)> = match a.name {
        ModelName::Mindlin => {
            let mut p = MindlinParams::unit(Rational::from_integer(0.into()));
            apply(&a.set, |n, v| {
                match n {
                    "rho" => p.rho = v,
                    "h" => p.h = v,
                    "D" => p.d = v,
                    "nu" => p.nu = v,
                    "kappa" => p.kappa = v,
                    "G" => p.g = v,
                    _ => return false,
                }
                true
            })?;
            p.validate().map_err(|e| usage(e.to_string()))?;
            let (f, amat) = mindlin_factorized(&p.coeffs());
            vec![("mindlin-f", f), ("mindlin-A", amat)]
        }
        ModelName::Wing => {
            let mut p = WingParams::unit();
            apply(&a.set, |n, v| {
                match n {
                    "m" => p.m = v,
                    "Im" => p.im = v,
                    "EI" => p.ei = v,
                    "GJ" => p.gj = v,
                    "a" => p.a = v,
                    _ => return false,
                }
                true
            })?;
            p.validate().map_err(|e| usage(e.to_string()))?;
            vec![("wing", wing_dispersion(&p.coeffs()))]
        }
        ModelName::Twt => {
            let mut p = default_twt();
            apply(&a.set, |n, v| {
                match n {
                    "C" => p.c = v,
                    "L" => p.l = v,
                    "Cc" => p.c_c = v,
                    "beta" => p.beta = v,
                    "omega_rp" => p.omega_rp = v,
                    "v0" => p.v0 = v,
                    _ => return false,
                }
                true
            })?;
            let m = twt_matrix_physical(&p).map_err(|e| usage(e.to_string()))?;
            vec![("twt", det(&m))]
        }
        ModelName::Kirchhoff => {
            let one = Rational::from_integer(1.into());
            let mut p = KirchhoffParams {
                rho: one.clone(),
                h: one.clone(),
                d: one,
            };
            apply(&a.set, |n, v| {
                match n {
                    "rho" => p.rho = v,
                    "h" => p.h = v,
                    "D" => p.d = v,
                    _ => return false,
                }
                true
            })?;
            vec![(
                "kirchhoff",
                kirchhoff_radial(&p).map_err(|e| usage(e.to_string()))?,
            )]
        }
    };
    let mut traces: Vec<BranchTrace> = Vec::new();
    for (tag, poly) in &polys {
        for b in &bs {
            traces.extend(trace_branches(&at_b(poly, b), "k", &grid, tag, to_f64(b))?);
        }
    }
    let mut out = output(a.out.as_deref())?;
    write_csv(&traces, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn label(b: f64) -> String {
    format!("{b}")
}

pub fn crosspoint(a: &CrosspointArgs) -> Result<ExitCode> {
    let (lo, hi) = a
        .kappa_range
        .split_once(':')
        .and_then(|(l, h)| Some((l.trim().parse::<f64>().ok()?, h.trim().parse::<f64>().ok()?)))
        .ok_or_else(|| {
            usage(format!(
                "kappa range must be lo:hi, got `{}`",
                a.kappa_range
            ))
        })?;
    if a.kappa_steps < 2 || lo >= hi {
        return Err(usage("kappa grid needs lo < hi and at least 2 steps"));
    }
    if a.g1 == a.g2 {
        return Err(usage("g1 and g2 must differ"));
    }
    let gammas = if a.gamma.is_empty() {
        vec![0.4, 2.0, 4.0]
    } else {
        a.gamma.clone()
    };
    let ggs = if a.ggamma.is_empty() {
        vec![1.0, -1.0]
    } else {
        a.ggamma.clone()
    };
    let grid = mechanalog::linspace(lo, hi, a.kappa_steps);
    let mut out = output(a.out.as_deref())?;
    writeln!(out, "kappa,delta,branch")?;
    for &gg in &ggs {
        for &gamma in &gammas {
            let cp = CrossPointData::normalized(a.g1, a.g2, gamma, gg);
            let tag = format!("gamma={};ggamma={}", label(gamma), label(gg));
            let roots: Vec<(f64, f64, f64)> = grid
                .iter()
                .filter_map(|&k| match solve_delta(&cp, k) {
                    DeltaRoots::Real(x, y) => Some((k, x, y)),
                    DeltaRoots::Gap => None,
                })
                .collect();
            for (name, pick) in [("minus", 0usize), ("plus", 1)] {
                for &(k, x, y) in &roots {
                    let d = if pick == 0 { x } else { y };
                    writeln!(out, "{k:.16e},{d:.16e},{name};{tag}")?;
                }
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn mech(a: &MechArgs) -> Result<ExitCode> {
    if a.p_steps == 0 || a.p_min > a.p_max {
        return Err(usage("p grid needs p-min <= p-max and at least 1 step"));
    }
    let mut o = OscillatorPair::reference();
    apply(&a.set, |n, v| {
        match n {
            "m1" => o.m1 = v,
            "m2" => o.m2 = v,
            "kappa1" => o.kappa1 = v,
            "kappa2" => o.kappa2 = v,
            "kappa" => o.kappa = v,
            "alpha1" => o.alpha1 = v,
            "alpha2" => o.alpha2 = v,
            _ => return false,
        }
        true
    })?;
    o.validate().map_err(|e| usage(e.to_string()))?;
    let bound = to_f64(&parse_value(&a.p_bound)?);
    let bs = if a.b.is_empty() {
        vec![0.0, 0.2, 0.4, 0.6]
    } else {
        a.b.clone()
    };
    let grid = mechanalog::linspace(a.p_min, a.p_max, a.p_steps);
    let traces = mechanalog::sweep(&o, &grid, &bs, bound).map_err(|e| usage(e.to_string()))?;
    let mut out = output(a.out.as_deref())?;
    mechanalog::write_csv(&traces, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn read_matrix(path: &std::path::Path) -> Result<PolyMatrix> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text.trim()
        .parse::<PolyMatrix>()
        .with_context(|| format!("{}", path.display()))
}

pub fn expand(a: &ExpandArgs) -> Result<ExitCode> {
    let am = read_matrix(&a.a)?;
    let bm = read_matrix(&a.b)?;
    let exp = coupled_b_expansion(&am, &bm, &a.var).map_err(|e| match e {
        MatrixError::DimensionMismatch { .. } | MatrixError::DependsOnCoupling(_) => {
            usage(e.to_string())
        }
        other => other.into(),
    })?;
    let full = exp.reassemble(&a.var);
    let mut out = output(None)?;
    writeln!(out, "det A: {}", exp.det_a)?;
    for (r, c) in exp.coeffs.iter().enumerate() {
        writeln!(out, "c{}: {}", r + 1, c)?;
    }
    writeln!(out, "det B: {}", exp.det_b)?;
    writeln!(out, "det(A + {v} B): {full}", v = a.var)?;
    writeln!(out, "remainder: {}", &full - &exp.det_a)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    let suite: Suite = a.suite.parse().map_err(usage)?;
    let checks = run_suite(suite);
    let mut out = output(None)?;
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    writeln!(out, "{} checks, {} failed", checks.len(), failed)?;
    out.flush()?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
