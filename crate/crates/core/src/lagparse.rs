//! Line-oriented `.lag` format.
//!
//! ```text
//! dim 1
//! fields u
//! param c 1
//! term 1/2 dt(u) dt(u)
//! term -1/2*c^2 dx(u) dx(u)
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::lagrangian::{FieldDeriv, QuadraticLagrangian, RESERVED};
use crate::polyalg::rational::{format_rational, parse_rational};
use crate::polyalg::{MultiPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}: {}: {}",
            self.line, self.column, sev, self.message
        )
    }
}

/// Diagnostics from a failed parse.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct Diagnostics(pub Vec<ParseDiagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Word {
    col: usize,
    text: String,
}

fn words(line: &str) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur: Option<Word> = None;
    for (i, c) in line.chars().enumerate() {
        if c.is_whitespace() {
            if let Some(w) = cur.take() {
                out.push(w);
            }
        } else {
            cur.get_or_insert_with(|| Word {
                col: i + 1,
                text: String::new(),
            })
            .text
            .push(c);
        }
    }
    out.extend(cur);
    out
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn looks_like_deriv(s: &str) -> bool {
    s.starts_with('d')
        && s.contains('(')
        && s[1..s.find('(').unwrap_or(1)]
            .chars()
            .all(|c| c.is_ascii_alphabetic())
}

struct PendingTerm {
    line: usize,
    coef_words: Vec<Word>,
    derivs: Vec<Word>,
}

struct State {
    diags: Vec<ParseDiagnostic>,
    dim: Option<usize>,
    fields: Vec<String>,
    fields_seen: bool,
    params: BTreeMap<String, Rational>,
    param_lines: BTreeMap<String, usize>,
    used: BTreeSet<String>,
    coupling: Option<String>,
    terms: Vec<PendingTerm>,
}

impl State {
    fn error(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.diags.push(ParseDiagnostic {
            line,
            column,
            message: message.into(),
            severity: Severity::Error,
        });
    }

    fn warn(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.diags.push(ParseDiagnostic {
            line,
            column,
            message: message.into(),
            severity: Severity::Warning,
        });
    }
}

/// Parses a `.lag` source into a symmetrized Lagrangian.
pub fn parse_lagrangian(src: &str) -> Result<QuadraticLagrangian, Diagnostics> {
    let (lag, diags) = analyze(src);
    match lag {
        Some(l) => Ok(l),
        None => Err(Diagnostics(diags)),
    }
}

/// Every diagnostic for `src`, warnings included.
pub fn check_lagrangian(src: &str) -> Vec<ParseDiagnostic> {
    analyze(src).1
}

fn analyze(src: &str) -> (Option<QuadraticLagrangian>, Vec<ParseDiagnostic>) {
    let mut st = State {
        diags: Vec::new(),
        dim: None,
        fields: Vec::new(),
        fields_seen: false,
        params: BTreeMap::new(),
        param_lines: BTreeMap::new(),
        used: BTreeSet::new(),
        coupling: None,
        terms: Vec::new(),
    };
    let mut last_line = 1;
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let text = raw.split('#').next().unwrap_or("");
        let ws = words(text);
        let Some(head) = ws.first() else { continue };
        let rest = &ws[1..];
        match head.text.as_str() {
            "dim" => parse_dim(&mut st, line, head, rest),
            "fields" => parse_fields(&mut st, line, head, rest),
            "param" => parse_param(&mut st, line, head, rest),
            "coupling" => parse_coupling(&mut st, line, head, rest),
            "term" => {
                if st.dim.is_none() {
                    st.error(line, head.col, "`dim` must be declared before terms");
                    continue;
                }
                let split = rest
                    .iter()
                    .position(|w| looks_like_deriv(&w.text))
                    .unwrap_or(rest.len());
                st.terms.push(PendingTerm {
                    line,
                    coef_words: rest[..split].to_vec(),
                    derivs: rest[split..].to_vec(),
                });
                if split == 0 {
                    st.error(line, head.col, "term needs a coefficient");
                }
            }
            other => st.error(line, head.col, format!("unknown keyword `{other}`")),
        }
    }
    if st.dim.is_none() {
        st.error(1.min(last_line), 1, "missing `dim` declaration");
    }
    let dim = st.dim.unwrap_or(0);
    let mut lag = match QuadraticLagrangian::new(dim, st.fields.clone()) {
        Ok(l) => l,
        Err(e) => {
            st.error(1, 1, e.to_string());
            return (None, st.diags);
        }
    };
    let terms = std::mem::take(&mut st.terms);
    for t in &terms {
        let coef = if t.coef_words.is_empty() {
            None
        } else {
            parse_coef(&mut st, t.line, &t.coef_words)
        };
        if t.derivs.len() != 2 {
            let col = t
                .derivs
                .get(2)
                .or(t.coef_words.first())
                .map(|w| w.col)
                .unwrap_or(1);
            st.error(t.line, col, "term is not quadratic");
            continue;
        }
        let x = parse_deriv(&mut st, t.line, &t.derivs[0], dim);
        let y = parse_deriv(&mut st, t.line, &t.derivs[1], dim);
        if let (Some(c), Some(x), Some(y)) = (coef, x, y) {
            if c.is_zero() {
                st.warn(t.line, t.coef_words[0].col, "term has a zero coefficient");
            }
            lag.add_term(x, y, &c).expect("validated term");
        }
    }
    for (name, line) in st.param_lines.clone() {
        if !st.used.contains(&name) && st.coupling.as_deref() != Some(name.as_str()) {
            st.warn(line, 7, format!("parameter `{name}` is never used"));
        }
    }
    for (name, v) in &st.params {
        lag.set_param(name, v.clone());
    }
    lag.set_coupling(st.coupling.as_deref());
    let ok = st.diags.iter().all(|d| d.severity != Severity::Error);
    st.diags.sort_by_key(|d| (d.line, d.column));
    (ok.then_some(lag), st.diags)
}

fn parse_dim(st: &mut State, line: usize, head: &Word, rest: &[Word]) {
    if st.dim.is_some() {
        st.error(line, head.col, "duplicate `dim` declaration");
        return;
    }
    match rest {
        [w] => match w.text.parse::<usize>() {
            Ok(n) if n <= 3 => st.dim = Some(n),
            Ok(_) => st.error(line, w.col, "dimension must be 0, 1, 2 or 3"),
            Err(_) => st.error(line, w.col, format!("bad dimension `{}`", w.text)),
        },
        _ => st.error(line, head.col, "`dim` takes exactly one value"),
    }
}

fn parse_fields(st: &mut State, line: usize, head: &Word, rest: &[Word]) {
    if st.fields_seen {
        st.error(line, head.col, "duplicate `fields` declaration");
        return;
    }
    st.fields_seen = true;
    for w in rest {
        if !is_ident(&w.text) {
            st.error(line, w.col, format!("bad field name `{}`", w.text));
        } else if st.fields.contains(&w.text) {
            st.error(line, w.col, format!("duplicate field `{}`", w.text));
        } else {
            st.fields.push(w.text.clone());
        }
    }
}

fn parse_param(st: &mut State, line: usize, head: &Word, rest: &[Word]) {
    let [name, value] = rest else {
        st.error(line, head.col, "`param` takes a name and a rational value");
        return;
    };
    if !is_ident(&name.text) {
        st.error(
            line,
            name.col,
            format!("bad parameter name `{}`", name.text),
        );
        return;
    }
    if RESERVED.contains(&name.text.as_str()) {
        st.error(line, name.col, format!("`{}` is reserved", name.text));
        return;
    }
    if st.params.contains_key(&name.text) {
        st.error(
            line,
            name.col,
            format!("duplicate parameter `{}`", name.text),
        );
        return;
    }
    match parse_rational(&value.text) {
        Ok(v) => {
            st.params.insert(name.text.clone(), v);
            st.param_lines.insert(name.text.clone(), line);
        }
        Err(_) => st.error(
            line,
            value.col,
            format!("`{}` is not a rational number", value.text),
        ),
    }
}

fn parse_coupling(st: &mut State, line: usize, head: &Word, rest: &[Word]) {
    let [name] = rest else {
        st.error(line, head.col, "`coupling` takes one parameter name");
        return;
    };
    if st.coupling.is_some() {
        st.error(line, head.col, "duplicate `coupling` declaration");
    } else if !st.params.contains_key(&name.text) {
        st.error(
            line,
            name.col,
            format!("undeclared parameter `{}`", name.text),
        );
    } else {
        st.coupling = Some(name.text.clone());
    }
}

/// Product of signed rationals and parameter powers, e.g. `-1/2*c^2`.
fn parse_coef(st: &mut State, line: usize, ws: &[Word]) -> Option<MultiPoly> {
    // Join the words, remembering the source column of every character.
    let mut chars: Vec<(char, usize)> = Vec::new();
    for w in ws {
        chars.extend(w.text.chars().enumerate().map(|(i, c)| (c, w.col + i)));
    }
    let mut acc = MultiPoly::one();
    let mut ok = true;
    for piece in chars.split(|(c, _)| *c == '*') {
        let Some(&(_, col)) = piece.first() else {
            let col = chars.first().map(|c| c.1).unwrap_or(1);
            st.error(line, col, "empty factor in coefficient");
            return None;
        };
        let text: String = piece.iter().map(|(c, _)| c).collect();
        match parse_factor(st, line, &text) {
            Ok(f) => acc = acc * f,
            Err(msg) => {
                st.error(line, col, msg);
                ok = false;
            }
        }
    }
    ok.then_some(acc)
}

fn parse_factor(st: &mut State, line: usize, text: &str) -> Result<MultiPoly, String> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, text),
    };
    let first = body
        .chars()
        .next()
        .ok_or_else(|| "empty factor".to_string())?;
    let value = if first.is_ascii_digit() || first == '.' {
        let r = parse_rational(body).map_err(|_| format!("`{body}` is not a rational number"))?;
        MultiPoly::constant(r)
    } else {
        let (name, power) = match body.split_once('^') {
            Some((n, p)) => {
                let e: u32 = p.parse().map_err(|_| format!("bad exponent `{p}`"))?;
                (n, e)
            }
            None => (body, 1),
        };
        if !is_ident(name) {
            return Err(format!("`{name}` is not a rational number or parameter"));
        }
        if st.param_lines.get(name).map_or(true, |&l| l > line) {
            return Err(format!("undeclared parameter `{name}`"));
        }
        st.used.insert(name.to_string());
        MultiPoly::var(name).pow(power)
    };
    Ok(if neg { -value } else { value })
}

fn parse_deriv(st: &mut State, line: usize, w: &Word, dim: usize) -> Option<FieldDeriv> {
    let t = &w.text;
    let open = t.find('(')?;
    let mut index = vec![0u32; dim + 1];
    let mut ok = true;
    for (i, c) in t[1..open].chars().enumerate() {
        let col = w.col + 1 + i;
        let axis = match c {
            't' => 0,
            'x' => 1,
            'y' => 2,
            'z' => 3,
            _ => {
                st.error(line, col, format!("unknown axis `{c}`"));
                ok = false;
                continue;
            }
        };
        if axis > dim {
            st.error(line, col, format!("axis `{c}` exceeds dimension {dim}"));
            ok = false;
            continue;
        }
        index[axis] += 1;
    }
    let Some(name) = t[open + 1..].strip_suffix(')') else {
        st.error(line, w.col, format!("malformed derivative `{t}`"));
        return None;
    };
    let field = match st.fields.iter().position(|f| f == name) {
        Some(f) => f,
        None => {
            st.error(line, w.col + open + 1, format!("unknown field `{name}`"));
            return None;
        }
    };
    ok.then(|| FieldDeriv::new(field, index))
}

fn render_coef(c: &Rational, vars: &[String], exps: &[u32]) -> String {
    let mut s = format_rational(c);
    for (v, &e) in vars.iter().zip(exps) {
        match e {
            0 => {}
            1 => s.push_str(&format!("*{v}")),
            _ => s.push_str(&format!("*{v}^{e}")),
        }
    }
    s
}

/// Canonical text; `parse_lagrangian(render_lagrangian(l)) == l`.
pub fn render_lagrangian(lag: &QuadraticLagrangian) -> String {
    let mut out = format!("dim {}\nfields", lag.dim());
    for f in lag.fields() {
        out.push(' ');
        out.push_str(f);
    }
    out.push('\n');
    for (name, v) in lag.params() {
        out.push_str(&format!("param {name} {}\n", format_rational(v)));
    }
    if let Some(c) = lag.coupling() {
        out.push_str(&format!("coupling {c}\n"));
    }
    let half = Rational::new(1.into(), 2.into());
    for ((x, y), c) in lag.coeffs() {
        if x > y {
            continue;
        }
        let c = if x == y { c.scale(&half) } else { c.clone() };
        let dx = format!("{}({})", x.index.token(), lag.fields()[x.field]);
        let dy = format!("{}({})", y.index.token(), lag.fields()[y.field]);
        for (e, coef) in c.terms() {
            out.push_str(&format!(
                "term {} {dx} {dy}\n",
                render_coef(coef, c.vars(), e)
            ));
        }
    }
    out
}
