//! Brieskorn lattice: reduction of `[g d^N x]` to the basis `[phi_a d^N x]`,
//! the topological trivialization and its unfolding variant.

use std::fmt;


use crate::jacobian::JacobianData;
use crate::polyring::{MPoly, Names, STruncation, Q};
use crate::{Error, Result};

/// `sum_a coeffs[a] * [phi_a d^N x]` with coefficients in `Q[s][z, 1/z]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeElement {
    pub coeffs: Vec<MPoly>,
    /// Set when terms beyond the `s`-degree cap were discarded.
    pub truncated: bool,
}

impl LatticeElement {
    pub fn zero(mu: usize) -> Self {
        LatticeElement { coeffs: vec![MPoly::zero(); mu], truncated: false }
    }

    pub fn basis(mu: usize, a: usize) -> Self {
        let mut e = Self::zero(mu);
        e.coeffs[a] = MPoly::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<MPoly>) -> Self {
        LatticeElement { coeffs, truncated: false }
    }

    pub fn mu(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MPoly::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        LatticeElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            truncated: self.truncated || o.truncated,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        LatticeElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
            truncated: self.truncated || o.truncated,
        }
    }

    pub fn scale(&self, c: &MPoly) -> Self {
        LatticeElement { coeffs: self.coeffs.iter().map(|a| a * c).collect(), truncated: self.truncated }
    }

    fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> Self {
        LatticeElement { coeffs: self.coeffs.iter().map(f).collect(), truncated: self.truncated }
    }

    /// Keeps strictly positive powers of `z`.
    pub fn pi_pos(&self) -> Self {
        self.map(MPoly::z_positive)
    }

    /// Keeps non-positive powers of `z`.
    pub fn pi_nonpos(&self) -> Self {
        self.map(MPoly::z_nonpositive)
    }

    /// Coefficient of `z^k`.
    pub fn z_coeff(&self, k: i32) -> Self {
        self.map(|c| c.z_coeff(k))
    }

    pub fn mul_z(&self, k: i32) -> Self {
        self.map(|c| c.mul_z(k))
    }

    /// Lowest and highest power of `z` present.
    pub fn z_range(&self) -> Option<(i32, i32)> {
        self.coeffs.iter().filter_map(MPoly::z_range).reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }

    pub fn eval_s(&self, point: &[Q]) -> Self {
        self.map(|c| c.eval_s(point))
    }

    /// Scalar coefficients; panics on `s`- or `z`-dependence.
    pub fn scalars(&self) -> Vec<Q> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(!c.has_s() && !c.has_z(), "coefficient is not a scalar");
                c.constant_term()
            })
            .collect()
    }

    /// `sum_a coeffs[a] phi_a` as a polynomial representative.
    pub fn to_poly(&self, jac: &JacobianData) -> MPoly {
        jac.combine(&self.coeffs)
    }

    pub fn display<'a>(&'a self, jac: &'a JacobianData) -> LatticeDisplay<'a> {
        LatticeDisplay { e: self, basis: jac.basis(), names: &jac.names, suffix: "" }
    }
}

pub struct LatticeDisplay<'a> {
    e: &'a LatticeElement,
    basis: &'a [MPoly],
    names: &'a Names,
    suffix: &'a str,
}

impl<'a> LatticeDisplay<'a> {
    /// Appends a subscript to each bracket, e.g. `_F`.
    pub fn with_suffix(mut self, suffix: &'a str) -> Self {
        self.suffix = suffix;
        self
    }
}

impl fmt::Display for LatticeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, phi) in self.e.coeffs.iter().zip(self.basis) {
            if c.is_zero() {
                continue;
            }
            let bracket = format!("[{}]{}", phi.display(self.names), self.suffix);
            let body = if *c == MPoly::one() {
                bracket
            } else if *c == -MPoly::one() {
                format!("-{bracket}")
            } else if c.len() == 1 {
                format!("{}*{bracket}", c.display(self.names))
            } else {
                format!("({})*{bracket}", c.display(self.names))
            };
            if first {
                write!(f, "{body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `(df/dx_k + z d/dx_k) g`.
pub(crate) fn twisted_derivative(jac: &JacobianData, k: usize, g: &MPoly) -> MPoly {
    &(&jac.partials()[k] * g) + &g.diff_x(k).mul_z(1)
}

/// The topological trivialization: expand `g` in the special basis and
/// replace each `prod (df/dx_k)^{p_k} phi_a` by `prod (df/dx_k + z d/dx_k)^{p_k} phi_a`.
pub fn phi_top_apply(jac: &JacobianData, g: &MPoly) -> MPoly {
    let mut out = MPoly::zero();
    for ((p, a), c) in &jac.regseq_decompose(g).terms {
        let mut t = &jac.basis()[*a] * c;
        for (k, &e) in p.iter().enumerate() {
            for _ in 0..e {
                t = twisted_derivative(jac, k, &t);
            }
        }
        out += &t;
    }
    out
}

/// Whether `Phi((df/dx_k) g) = (df/dx_k + z d/dx_k) Phi(g)`.
pub fn trivialization_identity_check(jac: &JacobianData, g: &MPoly, k: usize) -> bool {
    let lhs = phi_top_apply(jac, &(&jac.partials()[k] * g));
    let rhs = twisted_derivative(jac, k, &phi_top_apply(jac, g));
    lhs == rhs
}

/// Class of `[g d^N x]`: rewrite every `h (df/dx_k)` as `-z dh/dx_k` until
/// only basis elements remain.
pub fn lattice_reduce(jac: &JacobianData, g: &MPoly) -> LatticeElement {
    let mut out = LatticeElement::zero(jac.mu());
    let mut work = g.clone();
    while !work.is_zero() {
        let nf = jac.normal_form(&work);
        for (o, c) in out.coeffs.iter_mut().zip(&nf.coeffs) {
            *o += c;
        }
        let mut next = MPoly::zero();
        for (k, h) in nf.cofactors.iter().enumerate() {
            next -= &h.diff_x(k).mul_z(1);
        }
        work = next;
    }
    out
}

/// The same class through the inverse series `sum_m (-1)^m N^m`,
/// `N = Phi^top - Id`, followed by the Jacobian normal form.
pub fn lattice_reduce_series(jac: &JacobianData, g: &MPoly) -> LatticeElement {
    let mut total = MPoly::zero();
    let mut term = g.clone();
    let mut sign = true;
    while !term.is_zero() {
        if sign {
            total += &term;
        } else {
            total -= &term;
        }
        term = &phi_top_apply(jac, &term) - &term;
        sign = !sign;
    }
    LatticeElement::from_coeffs(jac.normal_form(&total).coeffs)
}

/// Data of the universal unfolding `F = f + sum_a s_a phi_a` under an `s`-degree cap.
#[derive(Clone, Debug)]
pub struct Unfolding {
    pub trunc: STruncation,
    pub big_f: MPoly,
    /// `dF/dx_k - df/dx_k = sum_a s_a dphi_a/dx_k`.
    deltas: Vec<MPoly>,
}

impl Unfolding {
    pub fn new(jac: &JacobianData, trunc: STruncation) -> Self {
        let mut big_f = jac.f.clone();
        for (a, phi) in jac.basis().iter().enumerate() {
            big_f += &(&MPoly::s_var(a) * phi);
        }
        let deltas = (0..jac.n()).map(|k| &big_f.diff_x(k) - &jac.partials()[k]).collect();
        Unfolding { trunc, big_f, deltas }
    }

    fn reduce(&self, jac: &JacobianData, g: &MPoly, with_z: bool) -> LatticeElement {
        let mut out = LatticeElement::zero(jac.mu());
        let (mut work, mut dropped) = self.trunc.apply(g);
        while !work.is_zero() {
            let nf = jac.normal_form(&work);
            for (o, c) in out.coeffs.iter_mut().zip(&nf.coeffs) {
                *o += c;
            }
            let mut next = MPoly::zero();
            for (k, h) in nf.cofactors.iter().enumerate() {
                if h.is_zero() {
                    continue;
                }
                if with_z {
                    next -= &h.diff_x(k).mul_z(1);
                }
                next -= &(h * &self.deltas[k]);
            }
            let (kept, d) = self.trunc.apply(&next);
            dropped |= d;
            work = kept;
        }
        out.truncated = dropped;
        out
    }

    /// Class of `[g d^N x]` in the unfolded lattice, in the basis `[phi_a]_F`.
    pub fn lattice_reduce(&self, jac: &JacobianData, g: &MPoly) -> LatticeElement {
        self.reduce(jac, g, true)
    }

    /// Like [`Unfolding::lattice_reduce`] but fails if anything was cut off.
    pub fn lattice_reduce_strict(&self, jac: &JacobianData, g: &MPoly) -> Result<LatticeElement> {
        self.check(self.lattice_reduce(jac, g))
    }

    /// Class of `g` in `Jac(F)`, with `s`-polynomial coefficients.
    pub fn normal_form(&self, jac: &JacobianData, g: &MPoly) -> LatticeElement {
        self.reduce(jac, g, false)
    }

    pub fn check(&self, e: LatticeElement) -> Result<LatticeElement> {
        match (e.truncated, self.trunc.max_total_s_degree) {
            (true, Some(bound)) => Err(Error::TruncationExhausted { bound }),
            _ => Ok(e),
        }
    }
}

/// Outcome of the grading test for the higher residue pairings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingVerdict {
    /// The grading forces `K^(p)(a, b) = 0`.
    ForcedZero,
    /// The grading allows a nonzero value.
    Vacuous,
}

/// Weight of a homogeneous lattice element, counting `z` with weight 1.
pub fn lattice_weight(jac: &JacobianData, e: &LatticeElement) -> Result<Q> {
    let mut w: Option<Q> = None;
    for (c, bw) in e.coeffs.iter().zip(jac.basis_weights()) {
        if c.is_zero() {
            continue;
        }
        let cw = jac.weights.wt(c)?.ok_or_else(|| Error::NotHomogeneous("lattice coefficient".into()))? + bw;
        match &w {
            Some(v) if *v != cw => return Err(Error::NotHomogeneous("lattice element".into())),
            _ => w = Some(cw),
        }
    }
    w.ok_or_else(|| Error::NotHomogeneous("zero lattice element".into()))
}

/// `K^(p)(a, b)` vanishes unless `wt a + wt b = p + sum (1 - 2 q_k)`.
pub fn k_pairing_grading_check(jac: &JacobianData, a: &LatticeElement, b: &LatticeElement, p: i64) -> Result<GradingVerdict> {
    let total = lattice_weight(jac, a)? + lattice_weight(jac, b)?;
    if total == Q::from_integer(p.into()) + jac.central_charge() {
        Ok(GradingVerdict::Vacuous)
    } else {
        Ok(GradingVerdict::ForcedZero)
    }
}
