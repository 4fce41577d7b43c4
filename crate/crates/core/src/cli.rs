//! Command-line front end: reads a singularity description from a TOML
//! file, runs one computation and prints exact results.
//!
//! Input format (all rationals are strings `"p/q"`):
//!
//! ```toml
//! variables = ["x1", "x2"]
//! weights = ["1/3", "2/9"]
//! f = "x1^3 + x1*x2^3"
//! # basis = ["1", "x1", ...]          optional, must start with 1
//! # good_basis = ["1", "x1 + z", ...]  optional, polynomials in x and z
//! allow_unverified_basis = false
//!
//! [orders]
//! s_order = 3   # order in the deformation parameters
//! z_order = 8   # deepest power z^-k allowed in the period series
//! r_order = 3   # number of R-matrix terms
//!
//! [point]       # optional, parameters s1..s_mu, missing ones are 0
//! s2 = "1"
//! ```
//!
//! Machine output is a JSON document `{"schema_version", "command", "result"}`;
//! on failure `{"schema_version", "command", "error": {"exit_code", "message"}}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::brieskorn::{lattice_reduce, lattice_reduce_series, phi_top_apply, trivialization_identity_check, LatticeElement, Unfolding};
use crate::frobenius::{is_self_adjoint, is_skew_adjoint, wdvv_check, FrobeniusData};
use crate::goodbasis::{Certification, GoodBasis};
use crate::jacobian::JacobianData;
use crate::linalg::Matrix;
use crate::polyring::{format_q, parse_poly, parse_q, MPoly, Mono, Names, STruncation, WeightSystem, Q};
use crate::primform::{j_function_with_floor, oracle_primitive_form, primitive_form};
use crate::rmatrix::{self, RReport, RSeries};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit status when `check` finds a failing invariant.
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Milnor,
    Pairing,
    Decompose,
    Trivialize,
    Reduce,
    PrimitiveForm,
    Potential,
    Rmatrix,
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "bvsaito", version, about = "Exact Brieskorn lattice, primitive form and Frobenius manifold computations")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Input file.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value = "human")]
    pub mode: Mode,
    /// Overrides `s_order` (or `r_order` for `rmatrix`).
    #[arg(long)]
    pub order: Option<u32>,
    /// Polynomial argument of `decompose`, `trivialize` and `reduce`.
    #[arg(long)]
    pub input: Option<String>,
    /// Point `s1=...,s2=...` for `rmatrix` and `check`.
    #[arg(long)]
    pub point: Option<String>,
}

fn default_s_order() -> u32 {
    2
}

fn default_z_order() -> u32 {
    8
}

fn default_r_order() -> u32 {
    2
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Orders {
    #[serde(default = "default_s_order")]
    pub s_order: u32,
    #[serde(default = "default_z_order")]
    pub z_order: u32,
    #[serde(default = "default_r_order")]
    pub r_order: u32,
}

impl Default for Orders {
    fn default() -> Self {
        Orders { s_order: default_s_order(), z_order: default_z_order(), r_order: default_r_order() }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub variables: Vec<String>,
    pub weights: Vec<String>,
    pub f: String,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub good_basis: Option<Vec<String>>,
    #[serde(default)]
    pub orders: Orders,
    #[serde(default)]
    pub point: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub allow_unverified_basis: bool,
}

impl InputSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::validation("spec", e.message().to_string()))
    }
}

fn at(path: String) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Validation { .. } => e,
        Error::Syntax { .. } | Error::UnknownVariable(_) => Error::validation(path.clone(), e.to_string()),
        other => other,
    }
}

fn basis_path(e: Error, path: &str) -> Error {
    match e {
        Error::BasisMismatch(msg) => Error::validation(path, msg),
        other => other,
    }
}

/// A validated input with its Jacobian algebra and good basis.
#[derive(Clone, Debug)]
pub struct Session {
    pub spec: InputSpec,
    pub jac: JacobianData,
    pub gb: GoodBasis,
}

impl Session {
    pub fn new(spec: InputSpec) -> Result<Self> {
        let n = spec.variables.len();
        if n == 0 {
            return Err(Error::validation("variables", "at least one variable is required"));
        }
        for (i, v) in spec.variables.iter().enumerate() {
            let reserved = v == "z"
                || ((v.starts_with('s') || v.starts_with('t')) && v.len() > 1 && v[1..].chars().all(|c| c.is_ascii_digit()));
            let ident = v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ident || reserved {
                return Err(Error::validation(format!("variables[{i}]"), format!("`{v}` is not a usable variable name")));
            }
            if spec.variables[..i].contains(v) {
                return Err(Error::validation(format!("variables[{i}]"), format!("duplicate variable `{v}`")));
            }
        }
        if spec.weights.len() != n {
            return Err(Error::validation("weights", format!("expected {n} weights, got {}", spec.weights.len())));
        }
        let mut q = Vec::with_capacity(n);
        for (i, w) in spec.weights.iter().enumerate() {
            let v = parse_q(w).map_err(at(format!("weights[{i}]")))?;
            if v <= Q::from_integer(0.into()) || v >= Q::from_integer(1.into()) {
                return Err(Error::validation(format!("weights[{i}]"), "weights must lie strictly between 0 and 1"));
            }
            q.push(v);
        }
        let weights = WeightSystem::new(q).map_err(at("weights".into()))?;
        let x_names = Names::new(spec.variables.clone(), Vec::new());
        let f = parse_poly(&spec.f, &x_names).map_err(at("f".into()))?;
        let basis = match &spec.basis {
            None => None,
            Some(b) => Some(
                b.iter()
                    .enumerate()
                    .map(|(i, t)| parse_poly(t, &x_names).map_err(at(format!("basis[{i}]"))))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        if let (Some(b), Some(g)) = (&spec.basis, &spec.good_basis) {
            if b.len() != g.len() {
                return Err(Error::validation("good_basis", "length differs from basis"));
            }
        }
        let jac = JacobianData::build_with_basis(&f, weights, basis)
            .map_err(|e| basis_path(e, "basis"))?
            .with_x_names(spec.variables.clone());
        let gb = match &spec.good_basis {
            None => GoodBasis::monomial(&jac)?,
            Some(g) => {
                let names = Names::new(spec.variables.clone(), Vec::new());
                let omegas = g
                    .iter()
                    .enumerate()
                    .map(|(i, t)| parse_poly(t, &names).map_err(at(format!("good_basis[{i}]"))))
                    .collect::<Result<Vec<_>>>()?;
                GoodBasis::custom(&jac, omegas, spec.allow_unverified_basis).map_err(|e| basis_path(e, "good_basis"))?
            }
        };
        Ok(Session { spec, jac, gb })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Self::new(InputSpec::from_toml(text)?)
    }

    fn names(&self) -> &Names {
        &self.jac.names
    }

    fn parse_input(&self, text: &str) -> Result<MPoly> {
        parse_poly(text, self.names()).map_err(at("--input".into()))
    }

    /// Point from `--point` if given, else from the input file.
    pub fn point(&self, flag: Option<&str>) -> Result<Option<Vec<Q>>> {
        let entries: Vec<(String, String, String)> = match (flag, &self.spec.point) {
            (Some(text), _) => {
                let mut out = Vec::new();
                for part in text.split(',').filter(|p| !p.trim().is_empty()) {
                    let (k, v) = part
                        .split_once('=')
                        .ok_or_else(|| Error::validation("--point", format!("`{part}` is not of the form name=value")))?;
                    out.push((k.trim().to_string(), v.trim().to_string(), "--point".to_string()));
                }
                out
            }
            (None, Some(map)) => map.iter().map(|(k, v)| (k.clone(), v.clone(), format!("point.{k}"))).collect(),
            (None, None) => return Ok(None),
        };
        let mut s0 = vec![Q::from_integer(0.into()); self.jac.mu()];
        for (k, v, path) in entries {
            let idx = self
                .names()
                .s
                .iter()
                .position(|s| *s == k)
                .ok_or_else(|| Error::validation(path.clone(), format!("unknown parameter `{k}`")))?;
            s0[idx] = parse_q(&v).map_err(at(path))?;
        }
        Ok(Some(s0))
    }
}

fn matrix_json(m: &Matrix<Q>) -> Value {
    json!(m.to_strings())
}

fn qs(v: &[Q]) -> Value {
    json!(v.iter().map(format_q).collect::<Vec<_>>())
}

fn poly_str(p: &MPoly, names: &Names) -> String {
    p.display(names).to_string()
}

fn lattice_json(e: &LatticeElement, jac: &JacobianData, suffix: &str) -> Value {
    json!({
        "class": e.display(jac).with_suffix(suffix).to_string(),
        "components": e.coeffs.iter().map(|c| poly_str(c, &jac.names)).collect::<Vec<_>>(),
    })
}

fn report_json(r: &RReport) -> Value {
    let mut v = json!({
        "starts_at_identity": r.starts_at_identity,
        "recursion": r.recursion.iter().map(|m| json!({"pass": m.is_zero(), "residual": matrix_json(m)})).collect::<Vec<_>>(),
        "symplectic": r.symplectic.iter().map(|m| json!({"pass": m.is_zero(), "residual": matrix_json(m)})).collect::<Vec<_>>(),
        "all_pass": r.all_ok(),
    });
    if let Some(h) = r.homogeneity_ok() {
        v["homogeneity"] = json!(h);
    }
    v
}

fn r_json(r: &RSeries<Q>) -> Value {
    json!(r.terms.iter().map(matrix_json).collect::<Vec<_>>())
}

fn milnor(s: &Session) -> Value {
    let jac = &s.jac;
    json!({
        "mu": jac.mu(),
        "basis": jac.basis().iter().map(|p| poly_str(p, jac.names())).collect::<Vec<_>>(),
        "basis_weights": qs(jac.basis_weights()),
        "parameter_weights": qs(jac.s_weights()),
        "central_charge": format_q(&jac.central_charge()),
        "hessian_class": qs(jac.hess_class()),
    })
}

impl JacobianData {
    fn names(&self) -> &Names {
        &self.names
    }
}

fn pairing(s: &Session) -> Result<Value> {
    Ok(json!({
        "residue_pairing": matrix_json(&s.jac.gram_matrix()?),
        "good_basis_metric": matrix_json(&s.gb.eta),
    }))
}

fn partial_label(names: &Names, k: usize, e: u32) -> String {
    let base = format!("(df/d{})", names.x[k]);
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

fn decompose(s: &Session, g: &MPoly) -> Value {
    let jac = &s.jac;
    let dec = jac.regseq_decompose(g);
    let mut terms = Vec::new();
    let mut text = Vec::new();
    for ((p, a), c) in &dec.terms {
        let mut factors: Vec<String> =
            p.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| partial_label(jac.names(), k, e)).collect();
        let phi = &jac.basis()[*a];
        if *phi != MPoly::one() || factors.is_empty() {
            factors.push(poly_str(phi, jac.names()));
        }
        let body = factors.join("*");
        let coeff = poly_str(c, jac.names());
        text.push(if coeff == "1" { body } else if c.len() == 1 { format!("{coeff}*{body}") } else { format!("({coeff})*{body}") });
        terms.push(json!({"partial_powers": p, "basis_index": a + 1, "coefficient": coeff}));
    }
    json!({
        "input": poly_str(g, jac.names()),
        "terms": terms,
        "decomposition": if text.is_empty() { "0".to_string() } else { text.join(" + ").replace("+ -", "- ") },
    })
}

/// Reduces in the unfolding when `g` involves s or an order was requested, else on the central fiber.
fn reduce(s: &Session, g: &MPoly, order: u32, unfold: bool) -> Result<Value> {
    let jac = &s.jac;
    if unfold || g.has_s() {
        let unf = Unfolding::new(jac, STruncation::bounded(order));
        let e = unf.lattice_reduce_strict(jac, g)?;
        Ok(json!({"input": poly_str(g, jac.names()), "s_order": order, "reduction": lattice_json(&e, jac, "_F")}))
    } else {
        let e = lattice_reduce(jac, g);
        Ok(json!({"input": poly_str(g, jac.names()), "reduction": lattice_json(&e, jac, "_f")}))
    }
}

fn primitive(s: &Session, order: u32) -> Result<Value> {
    let zeta = primitive_form(&s.gb, order as usize);
    j_function_with_floor(&s.gb, &zeta, -(s.spec.orders.z_order as i32))?;
    let parts: Vec<Value> = zeta.zeta.iter().map(|z| lattice_json(z, &s.jac, "")).collect();
    Ok(json!({"order": order, "trivial_corrections": zeta.is_trivial(), "components": parts, "basis": "good basis"}))
}

fn potential(s: &Session, order: u32) -> Result<Value> {
    let fd = FrobeniusData::build(&s.gb, order)?;
    let t = s.jac.names.with_t();
    Ok(json!({
        "order": order,
        "potential": poly_str(&fd.potential, &t),
        "flat_coordinates": fd.t_of_s.iter().map(|p| poly_str(p, s.jac.names())).collect::<Vec<_>>(),
        "metric": matrix_json(&fd.eta_from_potential()),
        "b_infinity": matrix_json(&fd.b_infinity()),
        "wdvv": wdvv_check(&fd.potential, &fd.gb.eta, order),
        "euler": fd.euler_check(),
    }))
}

fn rmatrix_cmd(s: &Session, s0: &[Q], order: u32) -> Result<Value> {
    let (comp, pd, report) = rmatrix::compute_and_verify(&s.jac, s0, order as usize)?;
    let reference = rmatrix::r_matrix_dense(&pd, order as usize)?;
    let ref_report = rmatrix::verify_r(&reference, &pd);
    let mut cp = String::new();
    for (k, c) in comp.point.charpoly.iter().enumerate() {
        let _ = write!(cp, "{}{}", if k > 0 { " " } else { "" }, format_q(c));
    }
    Ok(json!({
        "point": qs(s0),
        "order": order,
        "characteristic_polynomial": qs(&comp.point.charpoly),
        "inverse_series": comp.a.iter().map(|a| qs(a)).collect::<Vec<_>>(),
        "b0": matrix_json(&pd.b0),
        "b_infinity": matrix_json(&pd.b_inf),
        "metric": matrix_json(&pd.eta),
        "r": r_json(&comp.r),
        "report": report_json(&report),
        "reference": {"r": r_json(&reference), "report": report_json(&ref_report)},
    }))
}

/// Monomials in `n` variables of total degree at most `deg`.
fn monomials(n: usize, deg: u32) -> Vec<MPoly> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=deg - used).map(move |k| {
                    let mut v = e.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|e| MPoly::term(Mono::new(e, Vec::new(), 0), Q::from_integer(1.into()))).collect()
}

fn check(s: &Session, order: u32, point: Option<Vec<Q>>) -> Result<(Value, bool)> {
    let jac = &s.jac;
    let mut rows: Vec<(String, bool)> = Vec::new();
    let samples = monomials(jac.n(), 4);

    rows.push((
        "trivialization identity".into(),
        samples.iter().all(|g| (0..jac.n()).all(|k| trivialization_identity_check(jac, g, k))),
    ));
    rows.push((
        "lattice reduction agrees with the inverse series".into(),
        samples.iter().all(|g| lattice_reduce(jac, g) == lattice_reduce_series(jac, g)),
    ));
    rows.push((
        "exact forms reduce to zero".into(),
        samples.iter().all(|g| {
            (0..jac.n()).all(|k| lattice_reduce(jac, &(&(&jac.partials()[k] * g) + &g.diff_x(k).mul_z(1))).is_zero())
        }),
    ));
    let gram = jac.gram_matrix()?;
    let mu = Q::from_integer((jac.mu() as i64).into());
    rows.push((
        "residue pairing symmetric with eta(1, hess) = mu".into(),
        gram.is_symmetric() && jac.residue_functional(jac.hess_class()) == mu,
    ));
    rows.push(("good basis certified".into(), s.gb.certification == Certification::Certified));

    let zeta = primitive_form(&s.gb, order as usize);
    rows.push(("primitive form matches the fixed-point solve".into(), oracle_primitive_form(&s.gb, order as usize)? == zeta));
    let j = j_function_with_floor(&s.gb, &zeta, -(s.spec.orders.z_order as i32))?;
    rows.push(("positive z-part of J vanishes".into(), j.iter().all(|c| c.pi_pos().is_zero())));

    let fd = FrobeniusData::build(&s.gb, order)?;
    rows.push(("WDVV".into(), wdvv_check(&fd.potential, &fd.gb.eta, order)));
    rows.push(("Euler homogeneity".into(), fd.euler_check()));
    rows.push(("metric from the potential".into(), fd.eta_from_potential() == s.gb.eta));
    rows.push(("B_inf skew-adjoint".into(), is_skew_adjoint(&fd.b_infinity(), &s.gb.eta)));

    if let Some(s0) = point {
        let (comp, pd, report) = rmatrix::compute_and_verify(jac, &s0, s.spec.orders.r_order as usize)?;
        let residual = rmatrix::a_series_residual(&comp.point.quotient, &comp.a);
        rows.push(("F times the inverse series is 1".into(), residual.iter().flatten().all(|v| *v == Q::from_integer(0.into()))));
        rows.push(("B_0 self-adjoint at the point".into(), is_self_adjoint(&pd.b0, &pd.eta)));
        rows.push(("R_0 = Id".into(), report.starts_at_identity));
        rows.push(("R recursion [B_0, R_(m+1)] = (m + B_inf) R_m".into(), report.recursion_ok()));
        rows.push(("R symplectic".into(), report.symplectic_ok()));
        rows.push(("R homogeneous".into(), report.homogeneity_ok() == Some(true)));
        let reference = rmatrix::r_matrix_dense(&pd, s.spec.orders.r_order as usize)?;
        rows.push(("R agrees with the dense solve".into(), reference == comp.r));
    }
    let all = rows.iter().all(|(_, ok)| *ok);
    let list: Vec<Value> = rows.iter().map(|(name, ok)| json!({"name": name, "pass": ok})).collect();
    Ok((json!({"checks": list, "all_pass": all}), all))
}

/// Runs one command; returns the result document and whether `check` passed.
pub fn run(args: &Args, session: &Session) -> Result<(Value, bool)> {
    let orders = &session.spec.orders;
    let s_order = args.order.unwrap_or(orders.s_order);
    let need_input = || {
        args.input
            .as_deref()
            .ok_or_else(|| Error::validation("--input", "this command needs --input POLY"))
            .and_then(|t| session.parse_input(t))
    };
    let v = match args.command {
        Command::Milnor => milnor(session),
        Command::Pairing => pairing(session)?,
        Command::Decompose => decompose(session, &need_input()?),
        Command::Trivialize => {
            let g = need_input()?;
            if g.has_s() || g.has_z() {
                return Err(Error::validation("--input", "expected a polynomial in x only"));
            }
            json!({"input": poly_str(&g, session.names()), "output": poly_str(&phi_top_apply(&session.jac, &g), session.names())})
        }
        Command::Reduce => reduce(session, &need_input()?, s_order, args.order.is_some())?,
        Command::PrimitiveForm => primitive(session, s_order)?,
        Command::Potential => potential(session, s_order)?,
        Command::Rmatrix => {
            let s0 = session
                .point(args.point.as_deref())?
                .ok_or_else(|| Error::validation("point", "rmatrix needs a point (--point or [point])"))?;
            rmatrix_cmd(session, &s0, args.order.unwrap_or(orders.r_order))?
        }
        Command::Check => return check(session, s_order, session.point(args.point.as_deref())?),
    };
    Ok((v, true))
}

/// Command by its command-line name, e.g. `primitive-form`.
pub fn parse_command(name: &str) -> Option<Command> {
    Command::from_str(name, false).ok()
}

fn command_name(c: Command) -> String {
    c.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn is_matrix(v: &Value) -> bool {
    match v {
        Value::Array(rows) => !rows.is_empty() && rows.iter().all(|r| matches!(r, Value::Array(c) if c.iter().all(Value::is_string))),
        _ => false,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_human(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_human(val, indent + 2, out);
                    }
                    _ if is_matrix(val) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_matrix(val, indent + 2, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for (i, item) in items.iter().enumerate() {
                            if item.is_object() {
                                let _ = writeln!(out, "{pad}  [{i}]");
                                render_human(item, indent + 4, out);
                            } else if is_matrix(item) {
                                let _ = writeln!(out, "{pad}  [{i}]");
                                render_matrix(item, indent + 4, out);
                            } else {
                                let _ = writeln!(out, "{pad}  [{i}] {}", item);
                            }
                        }
                    }
                    Value::Array(items) => {
                        let _ = writeln!(out, "{pad}{k:width$}  {}", items.iter().map(scalar).collect::<Vec<_>>().join(", "));
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k:width$}  {}", scalar(val));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn render_matrix(v: &Value, indent: usize, out: &mut String) {
    let rows: Vec<Vec<String>> =
        v.as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(scalar).collect()).collect();
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(String::len).max().unwrap_or(0)).collect();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(j, c)| format!("{c:>w$}", w = widths[j])).collect();
        let _ = writeln!(out, "{}[ {} ]", " ".repeat(indent), cells.join("  "));
    }
}

fn render_check_human(v: &Value, out: &mut String) {
    let checks = v["checks"].as_array().unwrap();
    let width = checks.iter().map(|c| c["name"].as_str().unwrap().len()).max().unwrap_or(0);
    for c in checks {
        let status = if c["pass"].as_bool().unwrap() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{:width$}  {status}", c["name"].as_str().unwrap());
    }
}

/// Formats a result document; deterministic for identical inputs.
pub fn render(command: Command, mode: Mode, result: &Value) -> String {
    match mode {
        Mode::Machine => {
            let doc = json!({"schema_version": SCHEMA_VERSION, "command": command_name(command), "result": result});
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Mode::Human => {
            let mut out = String::new();
            match command {
                Command::Trivialize => {
                    let _ = writeln!(out, "{}", scalar(&result["output"]));
                }
                Command::Check => render_check_human(result, &mut out),
                _ => render_human(result, 0, &mut out),
            }
            out
        }
    }
}

/// Machine-mode error document.
pub fn error_document(command: Option<Command>, e: &Error) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command.map(command_name),
        "error": {"exit_code": e.exit_code(), "message": e.to_string()},
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn render_error(command: Option<Command>, mode: Mode, e: &Error) -> (String, String) {
    let msg = format!("error: {e}\n");
    match mode {
        Mode::Machine => (error_document(command, e), msg),
        Mode::Human => (String::new(), msg),
    }
}

/// Parses arguments, runs, and returns `(exit code, stdout, stderr)`.
pub fn execute(argv: &[String]) -> (i32, String, String) {
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return if code == 0 { (0, e.to_string(), String::new()) } else { (code, String::new(), e.to_string()) };
        }
    };
    let outcome = std::fs::read_to_string(&args.spec)
        .map_err(|e| Error::validation("--spec", format!("cannot read {}: {e}", args.spec.display())))
        .and_then(|text| Session::from_toml(&text))
        .and_then(|s| run(&args, &s));
    match outcome {
        Ok((v, passed)) => (if passed { 0 } else { EXIT_CHECK_FAILED }, render(args.command, args.mode, &v), String::new()),
        Err(e) => {
            let (out, err) = render_error(Some(args.command), args.mode, &e);
            (e.exit_code(), out, err)
        }
    }
}

pub fn main_with_args(argv: Vec<String>) -> i32 {
    let (code, out, err) = execute(&argv);
    print!("{out}");
    eprint!("{err}");
    code
}
