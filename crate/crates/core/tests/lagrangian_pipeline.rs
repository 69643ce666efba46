use factdisp::lagparse::{check_lagrangian, parse_lagrangian, render_lagrangian, Severity};
use factdisp::lagrangian::{dispersion_poly, symbol_matrix, FieldDeriv, QuadraticLagrangian};
use factdisp::polyalg::{int, rat, ComplexPoly, MultiPoly};
use proptest::prelude::*;

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

const WAVE: &str = "dim 1\nfields u\nparam c 1\nterm 1/2 dt(u) dt(u)\nterm -1/2*c^2 dx(u) dx(u)\n";

#[test]
fn wave_equation_symbol() {
    let lag = parse_lagrangian(WAVE).unwrap();
    let s = symbol_matrix(&lag);
    assert_eq!(s.dim(), 1);
    let (e, imag) = s.entry_flagged(0, 0).unwrap();
    assert!(!imag);
    // The Euler-Lagrange operator is -u_tt + c^2 u_xx; its symbol is w^2 - c^2 k^2.
    assert_eq!(e, p("w^2 - c^2*k^2"));
    assert_eq!(dispersion_poly(&lag).unwrap(), p("w^2 - c^2*k^2"));
}

#[test]
fn mixed_first_order_terms_are_hermitian() {
    let src = "dim 1\nfields u v\nparam g 3\nterm 1/2 dt(u) dt(u)\nterm g dt(u) dx(v)\nterm 1 d(u) dx(v)\nterm -1/2 dx(v) dx(v)\n";
    let lag = parse_lagrangian(src).unwrap();
    let s = symbol_matrix(&lag);
    assert!(s.is_hermitian());
    let d = dispersion_poly(&lag).unwrap();
    assert!(d.contains_var("g"));
}

const KIRCHHOFF: &str = "\
dim 2
fields w0
param rho 1
param h 1
param D 1
term 1/2*rho*h dt(w0) dt(w0)
term -1/2*D dxx(w0) dxx(w0)
term -1*D dxx(w0) dyy(w0)
term -1/2*D dyy(w0) dyy(w0)
";

#[test]
fn kirchhoff_plate_symbol() {
    let lag = parse_lagrangian(KIRCHHOFF).unwrap();
    let d = dispersion_poly(&lag).unwrap();
    assert_eq!(d, p("rho*h*w^2 - D*(kx^2 + ky^2)^2"));
}

#[test]
fn null_lagrangian_drops_out() {
    let with_null = format!(
        "{KIRCHHOFF}param nu 1/3\nterm D dxx(w0) dyy(w0)\nterm -1*D*nu dxx(w0) dyy(w0)\nterm -1*D dxy(w0) dxy(w0)\nterm D*nu dxy(w0) dxy(w0)\n"
    );
    let a = parse_lagrangian(KIRCHHOFF).unwrap();
    let b = parse_lagrangian(&with_null).unwrap();
    assert_ne!(a.coeffs(), b.coeffs());
    assert_eq!(dispersion_poly(&a).unwrap(), dispersion_poly(&b).unwrap());
}

#[test]
fn scaling_multiplies_by_power() {
    let src = "dim 1\nfields u v\nparam b 1\nterm 1/2 dt(u) dt(u)\nterm -1/2 dx(u) dx(u)\nterm 1/2 dt(v) dt(v)\nterm -2 dx(v) dx(v)\nterm b dx(u) dx(v)\n";
    let lag = parse_lagrangian(src).unwrap();
    let d = dispersion_poly(&lag).unwrap();
    let l = rat(-3, 2);
    let d2 = dispersion_poly(&lag.scale(&l)).unwrap();
    assert_eq!(d2, d.scale(&(&l * &l)));
}

fn errs(src: &str) -> Vec<(usize, usize, String)> {
    parse_lagrangian(src)
        .unwrap_err()
        .0
        .into_iter()
        .filter(|d| d.severity == Severity::Error)
        .map(|d| (d.line, d.column, d.message))
        .collect()
}

#[test]
fn diagnostics_point_at_tokens() {
    let e = errs("dim 1\nfields u\nterm 1 dt(u) dx(q)\n");
    assert_eq!(e, vec![(3, 17, "unknown field `q`".to_string())]);
    let e = errs("dim 1\nfields u\nterm 1 dy(u) dx(u)\n");
    assert_eq!(e, vec![(3, 9, "axis `y` exceeds dimension 1".to_string())]);
    let e = errs("dim 1\nfields u v u\n");
    assert_eq!(e, vec![(2, 12, "duplicate field `u`".to_string())]);
    let e = errs("dim 1\nfields u\nparam c 1.2.3\n");
    assert_eq!(
        e,
        vec![(3, 9, "`1.2.3` is not a rational number".to_string())]
    );
    let e = errs("dim 1\nfields u\nterm 1/0 dt(u) dt(u)\n");
    assert_eq!(
        e,
        vec![(3, 6, "`1/0` is not a rational number".to_string())]
    );
    let e = errs("dim 1\nfields u\nterm 2*c dt(u) dt(u)\nparam c 1\n");
    assert_eq!(e, vec![(3, 8, "undeclared parameter `c`".to_string())]);
    let e = errs("dim 1\nfields u\nparam k 1\n");
    assert_eq!(e, vec![(3, 7, "`k` is reserved".to_string())]);
    let e = errs("fields u\n");
    assert_eq!(e[0].2, "missing `dim` declaration");
    let e = errs("dim 1\nfields u\nterm 1 dt(u)\n");
    assert_eq!(e, vec![(3, 6, "term is not quadratic".to_string())]);
    let e = errs("dim 1\nfields u\nfoo 1\n");
    assert_eq!(e, vec![(3, 1, "unknown keyword `foo`".to_string())]);
}

#[test]
fn diagnostic_columns_fall_inside_tokens() {
    let sources = [
        "dim 1\nfields u\nterm 1 dt(u) dx(q)\n",
        "dim 2\nfields u\nterm   -1/2*zz dt(u) dx(u)\n",
        "dim 1\nfields u\nterm 1 dtq(u) dx(u)\n",
        "dim 1\n  fields u u\n",
        "dim 1\nfields u\nparam c x\n",
    ];
    for src in sources {
        for d in check_lagrangian(src) {
            let line: Vec<char> = src.lines().nth(d.line - 1).unwrap().chars().collect();
            let c = line.get(d.column - 1).copied().unwrap_or(' ');
            assert!(!c.is_whitespace(), "{src:?}: {d}");
        }
    }
}

#[test]
fn unused_parameter_is_a_warning() {
    let src = "dim 1\nfields u\nparam c 2\nterm 1 dt(u) dt(u)\n";
    let diags = check_lagrangian(src);
    assert_eq!(diags.len(), 1);
    assert_eq!(diags[0].severity, Severity::Warning);
    assert!(parse_lagrangian(src).is_ok());
}

#[test]
fn param_order_is_irrelevant() {
    let a = "dim 1\nfields u\nparam a 2\nparam b 3\ncoupling b\nterm a*b dt(u) dx(u)\n";
    let b = "dim 1\nfields u\nparam b 3\nparam a 2\ncoupling b\nterm a*b dt(u) dx(u)\n";
    assert_eq!(parse_lagrangian(a).unwrap(), parse_lagrangian(b).unwrap());
    assert_eq!(parse_lagrangian(a).unwrap().coupling(), Some("b"));
}

#[test]
fn comments_and_blank_lines() {
    let src = "# wave\n\ndim 1   # one axis\nfields u\nterm 1/2 dt(u) dt(u) # kinetic\n";
    assert!(parse_lagrangian(src).is_ok());
}

fn lagrangian() -> impl Strategy<Value = QuadraticLagrangian> {
    let deriv = (0usize..2, prop::collection::vec(0u32..3, 3));
    let term = (deriv.clone(), deriv, -5i64..6, 1i64..4, 0u32..3);
    prop::collection::vec(term, 0..8).prop_map(|terms| {
        let mut lag = QuadraticLagrangian::new(2, vec!["u".into(), "v".into()]).unwrap();
        lag.set_param("m", rat(3, 2));
        for ((f1, i1), (f2, i2), n, d, e) in terms {
            let c = MultiPoly::var("m").pow(e).scale(&rat(n, d));
            lag.add_term(FieldDeriv::new(f1, i1), FieldDeriv::new(f2, i2), &c)
                .unwrap();
        }
        lag
    })
}

proptest! {
    #[test]
    fn render_parse_roundtrip(lag in lagrangian()) {
        let text = render_lagrangian(&lag);
        let back = parse_lagrangian(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, lag);
    }

    #[test]
    fn symbol_is_hermitian(lag in lagrangian()) {
        prop_assert!(lag.is_symmetric());
        let s = symbol_matrix(&lag);
        prop_assert!(s.is_hermitian());
        let d = dispersion_poly(&lag);
        prop_assert!(d.is_ok());
    }
}

#[test]
fn time_derivative_cross_term_is_imaginary() {
    let src = "dim 1\nfields u v\nterm 1 dt(u) d(v)\n";
    let lag = parse_lagrangian(src).unwrap();
    let s = symbol_matrix(&lag);
    // Entry(u, v) = -a * symbol(dt) = i w; entry(v, u) = -i w.
    assert_eq!(*s.matrix.get(0, 1), ComplexPoly::imag(p("w")));
    assert_eq!(*s.matrix.get(1, 0), ComplexPoly::imag(p("-w")));
    let _ = int(0);
}
