//! R-matrix at a semisimple point of the unfolding.
//!
//! Everything here works in the Jacobian ring of `F(x, s0)` and in the
//! Brieskorn lattice of `F(x, s0)`, with the basis `phi_a` of the central
//! fiber. A class in the lattice is a vector of `z`-series coefficients,
//! `series[k][a]` being the coefficient of `z^k phi_a`.
//!
//! [`r_matrix`] assembles the operator `a + z A_0 a - sum_k z^k wt(a) B_k(a)`
//! from the inverse series of multiplication by `F` and reads it in the
//! `phi` basis. [`r_matrix_dense`] solves the recursion
//! `[B_0, R_{m+1}] = (m + B_inf) R_m` directly, with the diagonal fixed by
//! homogeneity, and serves as the reference solution. [`verify_r`] checks
//! any candidate against that recursion and the symplectic identity.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::frobenius::FrobeniusData;
use crate::jacobian::JacobianData;
use crate::linalg::{charpoly, Matrix};
use crate::polyring::{format_q, hessian, Exps, Field, GroebnerBasis, MPoly, RatFunc, XPoly, Q};
use crate::{Error, Result};

/// Jacobian ring and Brieskorn lattice of `F(x, s0)` over a coefficient field:
/// `Q` at a numeric point, rational functions of `s` in symbolic mode.
#[derive(Clone, Debug)]
pub struct Quotient<K: Field> {
    gb: GroebnerBasis<K>,
    staircase: Vec<Exps>,
    phis: Vec<XPoly<K>>,
    /// Staircase coordinates to `phi` coordinates.
    to_phi: Matrix<K>,
    big_f: XPoly<K>,
}

fn specialize<K: Field>(p: &MPoly, coeff: &impl Fn(&MPoly) -> K) -> XPoly<K> {
    let mut out = XPoly::zero();
    for (sz, xp) in p.split_sz() {
        let c = coeff(&MPoly::term(sz, Q::one()));
        out.add_assign(&xp.map_coeffs(K::from_q).scale(&c));
    }
    out
}

fn unfolding(jac: &JacobianData) -> MPoly {
    let mut big_f = jac.f.clone();
    for (a, phi) in jac.basis().iter().enumerate() {
        big_f += &(&MPoly::s_var(a) * phi);
    }
    big_f
}

impl<K: Field> Quotient<K> {
    /// `coeff` maps an `s`-monomial to its value in `K`.
    pub fn new(jac: &JacobianData, coeff: impl Fn(&MPoly) -> K) -> Result<Self> {
        let n = jac.n();
        let big_f = specialize(&unfolding(jac), &coeff);
        let gb = GroebnerBasis::new((0..n).map(|k| big_f.diff(k)).collect());
        let staircase = gb.standard_monomials(n).ok_or(Error::NonIsolated)?;
        if staircase.len() != jac.mu() {
            return Err(Error::DegenerateCriticalLocus { found: staircase.len(), mu: jac.mu() });
        }
        let phis: Vec<XPoly<K>> = jac.basis().iter().map(|p| specialize(p, &coeff)).collect();
        let mut q = Quotient { gb, staircase, phis, to_phi: Matrix::identity(jac.mu()), big_f };
        let cols: Vec<Vec<K>> = q.phis.iter().map(|p| q.stair_coords(&q.gb.reduce(p).remainder)).collect();
        q.to_phi = Matrix::from_columns(cols)
            .inverse()
            .ok_or_else(|| Error::Singular("basis classes are dependent at the point".into()))?;
        Ok(q)
    }

    pub fn mu(&self) -> usize {
        self.phis.len()
    }

    pub fn big_f(&self) -> &XPoly<K> {
        &self.big_f
    }

    fn stair_coords(&self, r: &XPoly<K>) -> Vec<K> {
        let mut v = vec![K::zero(); self.mu()];
        for (e, c) in r.terms() {
            let i = self.staircase.iter().position(|s| s == e).expect("remainder outside staircase");
            v[i] = c.clone();
        }
        v
    }

    /// Coordinates of the class of `p` in the basis `phi`.
    pub fn class(&self, p: &XPoly<K>) -> Vec<K> {
        self.to_phi.apply(&self.stair_coords(&self.gb.reduce(p).remainder))
    }

    /// `sum_a v_a phi_a`.
    pub fn rep(&self, v: &[K]) -> XPoly<K> {
        let mut out = XPoly::zero();
        for (c, phi) in v.iter().zip(&self.phis) {
            if !c.is_zero() {
                out.add_assign(&phi.scale(c));
            }
        }
        out
    }

    /// Column `b` is the class of `p * phi_b`.
    pub fn mult_matrix(&self, p: &XPoly<K>) -> Matrix<K> {
        Matrix::from_columns(self.phis.iter().map(|phi| self.class(&p.mul(phi))).collect())
    }

    /// Multiplication by `F(x, s0)`.
    pub fn f_matrix(&self) -> Matrix<K> {
        self.mult_matrix(&self.big_f)
    }

    /// Lattice class of `sum_j z^j series[j]` through `z^order`, obtained by
    /// rewriting `h dF/dx_k` as `-z dh/dx_k`.
    pub fn lattice_reduce(&self, series: &[XPoly<K>], order: usize) -> Vec<Vec<K>> {
        let mu = self.mu();
        let mut work: Vec<XPoly<K>> = (0..=order).map(|j| series.get(j).cloned().unwrap_or_default()).collect();
        let mut out = vec![vec![K::zero(); mu]; order + 1];
        for j in 0..=order {
            let w = std::mem::take(&mut work[j]);
            if w.is_zero() {
                continue;
            }
            let c = self.class(&w);
            let red = self.gb.reduce(&w.sub(&self.rep(&c)));
            debug_assert!(red.remainder.is_zero());
            out[j] = c;
            if j < order {
                for (k, h) in red.cofactors.iter().enumerate() {
                    if !h.is_zero() {
                        work[j + 1] = work[j + 1].sub(&h.diff(k));
                    }
                }
            }
        }
        out
    }
}

impl Quotient<Q> {
    pub fn at_point(jac: &JacobianData, s0: &[Q]) -> Result<Self> {
        Quotient::new(jac, |m| m.eval_s(s0).constant_term())
    }
}

impl Quotient<RatFunc> {
    /// Coefficients kept as rational functions of all parameters.
    pub fn symbolic(jac: &JacobianData) -> Result<Self> {
        Quotient::new(jac, |m| RatFunc::from_poly(m.clone()))
    }
}

fn trim(p: &mut Vec<Q>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap().clone() / &lc;
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(Q::zero());
    }
    trim(&mut r);
    r
}

fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    let lc = a.last().unwrap().clone();
    a.iter().map(|c| c / &lc).collect()
}

fn fmt_univariate(p: &[Q]) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let m = match k {
            0 => String::new(),
            1 => "T".into(),
            _ => format!("T^{k}"),
        };
        parts.push(match (m.is_empty(), c.is_one()) {
            (true, _) => format_q(c),
            (false, true) => m,
            (false, false) => format!("({})*{m}", format_q(c)),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// A point of the parameter space where multiplication by `F` on the
/// Jacobian ring has simple nonzero spectrum.
#[derive(Clone, Debug)]
pub struct SemisimplePoint {
    pub s0: Vec<Q>,
    pub f_at_s0: MPoly,
    pub quotient: Quotient<Q>,
    /// Multiplication by `F(x, s0)` in the basis `phi`.
    pub b0: Matrix<Q>,
    /// Characteristic polynomial of `b0`, constant term first.
    pub charpoly: Vec<Q>,
}

/// Certifies semisimplicity at `s0`: the characteristic polynomial of
/// multiplication by `F` is coprime to its derivative, and `F` is invertible
/// in the Jacobian ring (no critical value is zero).
pub fn check_semisimple(jac: &JacobianData, s0: &[Q]) -> Result<SemisimplePoint> {
    if s0.len() != jac.mu() {
        return Err(Error::validation("point", format!("expected {} coordinates, got {}", jac.mu(), s0.len())));
    }
    let quotient = Quotient::at_point(jac, s0)?;
    let b0 = quotient.f_matrix();
    let cp = charpoly(&b0);
    let deriv: Vec<Q> = cp.iter().enumerate().skip(1).map(|(k, c)| c * Q::from_integer((k as i64).into())).collect();
    let g = poly_gcd(&cp, &deriv);
    if g.len() > 1 {
        return Err(Error::NotSemisimple(format!(
            "characteristic polynomial {} shares the factor {} with its derivative",
            fmt_univariate(&cp),
            fmt_univariate(&g)
        )));
    }
    if cp[0].is_zero() {
        return Err(Error::NotSemisimple(format!(
            "multiplication by F is singular: characteristic polynomial {} vanishes at 0",
            fmt_univariate(&cp)
        )));
    }
    Ok(SemisimplePoint { s0: s0.to_vec(), f_at_s0: unfolding(jac).eval_s(s0), quotient, b0, charpoly: cp })
}

/// `A_0, ..., A_order` with `F * sum A_k z^k = 1` in the lattice; `A_k` in `phi` coordinates.
pub fn a_series<K: Field>(q: &Quotient<K>, order: usize) -> Result<Vec<Vec<K>>> {
    let mu = q.mu();
    let f_inv = q
        .f_matrix()
        .inverse()
        .ok_or_else(|| Error::Singular("multiplication by F is not invertible".into()))?;
    let mut one = vec![K::zero(); mu];
    one[0] = K::one();
    let mut a = vec![f_inv.apply(&one)];
    // reds[j][i]: coefficient of z^i in the class of A_j * F
    let mut reds = vec![q.lattice_reduce(&[q.rep(&a[0]).mul(q.big_f())], order)];
    for k in 1..=order {
        let mut rhs = vec![K::zero(); mu];
        for i in 1..=k {
            for (r, v) in rhs.iter_mut().zip(&reds[k - i][i]) {
                *r = r.clone() + v.clone();
            }
        }
        let ak: Vec<K> = f_inv.apply(&rhs).into_iter().map(|v| -v).collect();
        reds.push(q.lattice_reduce(&[q.rep(&ak).mul(q.big_f())], order - k));
        a.push(ak);
    }
    Ok(a)
}

/// `[z^k] (F * A(z)) - delta_{k0}` for `k = 0..=order`; zero for a correct series.
pub fn a_series_residual<K: Field>(q: &Quotient<K>, a: &[Vec<K>]) -> Vec<Vec<K>> {
    let order = a.len() - 1;
    let series: Vec<XPoly<K>> = a.iter().map(|ak| q.rep(ak).mul(q.big_f())).collect();
    let mut out = q.lattice_reduce(&series, order);
    out[0][0] = out[0][0].clone() - K::one();
    out
}

fn series_from_classes<K: Field>(q: &Quotient<K>, a: &[Vec<K>]) -> Vec<XPoly<K>> {
    a.iter().map(|v| q.rep(v)).collect()
}

/// `b[alpha][k]` is `B_k(phi_alpha)` in `phi` coordinates for `k = 1..=order`
/// (index 0 holds zeros). `weights[alpha]` is the grading of `phi_alpha`.
pub fn b_series<K: Field>(q: &Quotient<K>, a: &[Vec<K>], weights: &[Q], order: usize) -> Vec<Vec<Vec<K>>> {
    let mu = q.mu();
    let a_poly = series_from_classes(q, a);
    let mut out = Vec::with_capacity(mu);
    for (alpha, phi) in q.phis.iter().enumerate() {
        let wt = K::from_q(&weights[alpha]);
        let mut b = vec![vec![K::zero(); mu]; order + 1];
        if order >= 1 {
            b[1] = q.class(&a_poly[0].mul(phi)).into_iter().map(|v| -v).collect();
        }
        for p in 2..=order {
            // -A(z) * sum_{k<p} k wt z^{k+1} B_k
            let mut prod: Vec<XPoly<K>> = vec![XPoly::zero(); p + 1];
            for (k, bk) in b.iter().enumerate().take(p).skip(1) {
                let scaled = q.rep(bk).scale(&(K::from_q(&Q::from_integer((k as i64).into())) * wt.clone()));
                if scaled.is_zero() {
                    continue;
                }
                for (j, aj) in a_poly.iter().enumerate() {
                    if j + k < p {
                        prod[j + k + 1] = prod[j + k + 1].sub(&aj.mul(&scaled));
                    }
                }
            }
            b[p] = q.lattice_reduce(&prod, p).swap_remove(p);
        }
        out.push(b);
    }
    out
}

/// Truncated series `R_0 + R_1 z + ... + R_K z^K`; column `b` of `R_k` is
/// the image of `phi_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSeries<K: Field> {
    pub terms: Vec<Matrix<K>>,
}

impl<K: Field> RSeries<K> {
    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn mu(&self) -> usize {
        self.terms[0].rows()
    }
}

/// Reads `a + z A_0 a - sum_{k>=2} z^k wt(a) B_k(a)` in the lattice basis, for `a = phi_b`.
pub fn r_matrix<K: Field>(q: &Quotient<K>, a: &[Vec<K>], b: &[Vec<Vec<K>>], weights: &[Q], order: usize) -> RSeries<K> {
    let mu = q.mu();
    let a0 = q.rep(&a[0]);
    let mut cols: Vec<Vec<Vec<K>>> = Vec::with_capacity(mu);
    for (beta, phi) in q.phis.iter().enumerate() {
        let wt = K::from_q(&weights[beta]);
        let mut series = vec![XPoly::zero(); order + 1];
        series[0] = phi.clone();
        if order >= 1 {
            series[1] = a0.mul(phi);
        }
        for (k, s) in series.iter_mut().enumerate().skip(2) {
            *s = q.rep(&b[beta][k]).scale(&(-wt.clone()));
        }
        cols.push(q.lattice_reduce(&series, order));
    }
    let terms = (0..=order).map(|k| Matrix::from_columns(cols.iter().map(|c| c[k].clone()).collect())).collect();
    RSeries { terms }
}

/// Inputs of the R-matrix recursion at one point: the operators `B_0`,
/// `B_inf` and the metric, all in the same frame.
#[derive(Clone, Debug, PartialEq)]
pub struct PointData {
    pub b0: Matrix<Q>,
    pub b_inf: Matrix<Q>,
    pub eta: Matrix<Q>,
}

impl PointData {
    /// Frame of the basis `phi`: `B_0` is multiplication by `F`, `B_inf` is
    /// `diag(wt(phi_a) - d/2)` and the metric is the residue pairing of `F(x, s0)`.
    pub fn from_point(jac: &JacobianData, sp: &SemisimplePoint) -> Result<Self> {
        let q = &sp.quotient;
        let half_d = jac.central_charge() / Q::from_integer(2.into());
        let b_inf = Matrix::diagonal(jac.basis_weights().iter().map(|w| w - &half_d).collect());
        let hess = hessian(&unfolding(jac), jac.n()).eval_s(&sp.s0);
        let hess_x = specialize(&hess, &|m: &MPoly| m.constant_term());
        let hess_inv = q
            .mult_matrix(&hess_x)
            .inverse()
            .ok_or_else(|| Error::Singular("Hessian is not invertible at the point".into()))?;
        let mu = q.mu();
        let mut eta = Matrix::zeros(mu, mu);
        for a in 0..mu {
            for b in a..mu {
                let prod = q.phis[a].mul(&q.phis[b]);
                let v = (&q.mult_matrix(&prod) * &hess_inv).trace();
                eta[(a, b)] = v.clone();
                eta[(b, a)] = v;
            }
        }
        Ok(PointData { b0: sp.b0.clone(), b_inf, eta })
    }

    /// Flat frame of a Frobenius manifold at the flat coordinates `t0`.
    pub fn from_frobenius(fd: &FrobeniusData, t0: &[Q]) -> Self {
        PointData { b0: fd.b_zero(t0), b_inf: fd.b_infinity(), eta: fd.gb.eta.clone() }
    }
}

/// Solves `[B_0, R_{m+1}] = (m + B_inf) R_m` order by order, fixing the part
/// invisible to `[B_0, .]` by `tr(B_0^j (m + 1 + B_inf) R_{m+1}) = 0`.
pub fn r_matrix_dense(pd: &PointData, order: usize) -> Result<RSeries<Q>> {
    let mu = pd.b0.rows();
    let idx = |i: usize, j: usize| i * mu + j;
    let powers: Vec<Matrix<Q>> = (0..mu as u32).map(|j| pd.b0.pow(j)).collect();
    let mut terms = vec![Matrix::identity(mu)];
    for m in 0..order {
        let shift = |c: usize| &Matrix::<Q>::identity(mu).scale(&Q::from_integer((c as i64).into())) + &pd.b_inf;
        let target = &shift(m) * &terms[m];
        let next_shift = shift(m + 1);
        let mut sys = Matrix::zeros(mu * mu + mu, mu * mu);
        let mut rhs = Matrix::zeros(mu * mu + mu, 1);
        for i in 0..mu {
            for j in 0..mu {
                let row = idx(i, j);
                for l in 0..mu {
                    sys[(row, idx(l, j))] += &pd.b0[(i, l)];
                    sys[(row, idx(i, l))] -= &pd.b0[(l, j)];
                }
                rhs[(row, 0)] = target[(i, j)].clone();
            }
        }
        for (j, pw) in powers.iter().enumerate() {
            let w = pw * &next_shift;
            for i in 0..mu {
                for l in 0..mu {
                    sys[(mu * mu + j, idx(l, i))] += &w[(i, l)];
                }
            }
        }
        let (x, unique) = sys
            .solve(&rhs)
            .ok_or_else(|| Error::NotSemisimple(format!("no solution of the R-matrix recursion at order {}", m + 1)))?;
        if !unique {
            return Err(Error::NotSemisimple(format!("R-matrix recursion is underdetermined at order {}", m + 1)));
        }
        let mut r = Matrix::zeros(mu, mu);
        for i in 0..mu {
            for j in 0..mu {
                r[(i, j)] = x[(idx(i, j), 0)].clone();
            }
        }
        terms.push(r);
    }
    Ok(RSeries { terms })
}

/// Residuals of the R-matrix checks; every matrix is zero when the check passes.
#[derive(Clone, Debug, PartialEq)]
pub struct RReport {
    pub starts_at_identity: bool,
    /// `[B_0, R_{m+1}] - (m + B_inf) R_m` for `m = 0..K-1`.
    pub recursion: Vec<Matrix<Q>>,
    /// `z^k` coefficient of `R(z) eta^{-1} R^T(-z) - eta^{-1}` for `k = 0..=K`.
    pub symplectic: Vec<Matrix<Q>>,
    /// `R_k(lambda . s0) - lambda^{wt} R_k(s0)` entrywise, when computed.
    pub homogeneity: Option<Vec<Matrix<Q>>>,
}

impl RReport {
    pub fn recursion_ok(&self) -> bool {
        self.recursion.iter().all(Matrix::is_zero)
    }

    pub fn symplectic_ok(&self) -> bool {
        self.symplectic.iter().all(Matrix::is_zero)
    }

    pub fn homogeneity_ok(&self) -> Option<bool> {
        self.homogeneity.as_ref().map(|h| h.iter().all(Matrix::is_zero))
    }

    pub fn all_ok(&self) -> bool {
        self.starts_at_identity && self.recursion_ok() && self.symplectic_ok() && self.homogeneity_ok() != Some(false)
    }
}

impl fmt::Display for RReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "R_0 = Id: {}", word(self.starts_at_identity))?;
        for (m, r) in self.recursion.iter().enumerate() {
            writeln!(f, "recursion m = {m}: {}", word(r.is_zero()))?;
        }
        for (k, r) in self.symplectic.iter().enumerate() {
            writeln!(f, "symplectic z^{k}: {}", word(r.is_zero()))?;
        }
        if let Some(ok) = self.homogeneity_ok() {
            writeln!(f, "homogeneity: {}", word(ok))?;
        }
        Ok(())
    }
}

/// Checks the recursion with the given `B_0`, `B_inf` and the symplectic identity.
pub fn verify_r(r: &RSeries<Q>, pd: &PointData) -> RReport {
    let mu = r.mu();
    let k_max = r.order();
    let recursion = (0..k_max)
        .map(|m| {
            let shift = &Matrix::<Q>::identity(mu).scale(&Q::from_integer((m as i64).into())) + &pd.b_inf;
            &pd.b0.commutator(&r.terms[m + 1]) - &(&shift * &r.terms[m])
        })
        .collect();
    let eta_inv = pd.eta.inverse().expect("nondegenerate metric");
    let symplectic = (0..=k_max)
        .map(|k| {
            let mut acc = Matrix::zeros(mu, mu);
            for i in 0..=k {
                let j = k - i;
                let term = &(&r.terms[i] * &eta_inv) * &r.terms[j].transpose();
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            if k == 0 {
                acc = &acc - &eta_inv;
            }
            acc
        })
        .collect();
    RReport { starts_at_identity: r.terms[0] == Matrix::identity(mu), recursion, symplectic, homogeneity: None }
}

fn q_pow(base: &Q, e: i64) -> Q {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        Q::one() / p
    } else {
        p
    }
}

/// `(lambda, lambda^{wt(s)} . s0)` with `lambda = 2^L`, `L` the common
/// denominator of the weights, so that every power stays rational.
pub fn scaled_point(jac: &JacobianData, s0: &[Q]) -> (Q, Vec<Q>) {
    let l = jac.weights.q.iter().fold(num_bigint::BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let l: i64 = l.try_into().expect("weight denominators fit in i64");
    let two = Q::from_integer(2.into());
    let lambda = q_pow(&two, l);
    let scaled = s0
        .iter()
        .zip(jac.s_weights())
        .map(|(s, w)| {
            let e = w * Q::from_integer(l.into());
            debug_assert!(e.is_integer());
            s * q_pow(&two, e.to_integer().try_into().unwrap())
        })
        .collect();
    (lambda, scaled)
}

/// `R_k(scaled)_{ab} - lambda^{wt(phi_b) - wt(phi_a) - k} R_k(s0)_{ab}`.
pub fn homogeneity_residual(jac: &JacobianData, lambda: &Q, r: &RSeries<Q>, r_scaled: &RSeries<Q>) -> Vec<Matrix<Q>> {
    let l = jac.weights.q.iter().fold(num_bigint::BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let l = Q::from_integer(l);
    // lambda = 2^L, so lambda^w = 2^{L w}
    let two = Q::from_integer(2.into());
    let log2 = |w: Q| -> i64 { (w * &l).to_integer().try_into().unwrap() };
    debug_assert_eq!(q_pow(&two, log2(Q::one())), *lambda);
    let wts = jac.basis_weights();
    let mu = r.mu();
    (0..=r.order())
        .map(|k| {
            let mut m = Matrix::zeros(mu, mu);
            for a in 0..mu {
                for b in 0..mu {
                    let w = &wts[b] - &wts[a] - Q::from_integer((k as i64).into());
                    m[(a, b)] = &r_scaled.terms[k][(a, b)] - &(q_pow(&two, log2(w)) * &r.terms[k][(a, b)]);
                }
            }
            m
        })
        .collect()
}

/// Everything computed at one numeric point by the 𝒜/B construction.
#[derive(Clone, Debug)]
pub struct RComputation {
    pub point: SemisimplePoint,
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Vec<Vec<Q>>>,
    pub r: RSeries<Q>,
}

pub fn compute_at_point(jac: &JacobianData, s0: &[Q], order: usize) -> Result<RComputation> {
    let point = check_semisimple(jac, s0)?;
    let q = &point.quotient;
    let a = a_series(q, order)?;
    let b = b_series(q, &a, jac.basis_weights(), order);
    let r = r_matrix(q, &a, &b, jac.basis_weights(), order);
    Ok(RComputation { point, a, b, r })
}

/// [`compute_at_point`] followed by [`verify_r`] in the `phi` frame and the
/// homogeneity comparison against the rescaled point.
pub fn compute_and_verify(jac: &JacobianData, s0: &[Q], order: usize) -> Result<(RComputation, PointData, RReport)> {
    let comp = compute_at_point(jac, s0, order)?;
    let pd = PointData::from_point(jac, &comp.point)?;
    let mut report = verify_r(&comp.r, &pd);
    let (lambda, scaled) = scaled_point(jac, s0);
    let other = compute_at_point(jac, &scaled, order)?;
    report.homogeneity = Some(homogeneity_residual(jac, &lambda, &comp.r, &other.r));
    Ok((comp, pd, report))
}

/// Entry `(a, b)` of every `R_k` as exact strings, keyed by `k`.
pub fn r_to_strings(r: &RSeries<Q>) -> BTreeMap<usize, Vec<Vec<String>>> {
    r.terms.iter().enumerate().map(|(k, m)| (k, m.to_strings())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, q, qi, Names, WeightSystem};

    fn a2() -> JacobianData {
        let n = Names::standard(1, 0);
        JacobianData::build(&parse_poly("(1/3)*x1^3", &n).unwrap(), WeightSystem::new(vec![q(1, 3)]).unwrap()).unwrap()
    }

    fn a1() -> JacobianData {
        let n = Names::standard(1, 0);
        JacobianData::build(&parse_poly("(1/2)*x1^2", &n).unwrap(), WeightSystem::new(vec![q(1, 2)]).unwrap()).unwrap()
    }

    fn rf(num: &str, den: &str) -> RatFunc {
        let n = Names::standard(0, 2);
        RatFunc::new(parse_poly(num, &n).unwrap(), parse_poly(den, &n).unwrap())
    }

    #[test]
    fn semisimplicity_gate() {
        let jac = a2();
        assert!(check_semisimple(&jac, &[qi(0), qi(1)]).is_ok());
        // 4 s2^3 + 9 s1^2 = 0
        assert!(matches!(check_semisimple(&jac, &[qi(0), qi(0)]), Err(Error::NotSemisimple(_))));
        assert!(matches!(check_semisimple(&jac, &[qi(18), qi(-9)]), Err(Error::NotSemisimple(_))));
        // s2 = 0, s1 != 0: repeated critical value, still invertible
        let e = check_semisimple(&jac, &[qi(1), qi(0)]).unwrap_err();
        assert!(e.to_string().contains("shares the factor"), "{e}");
        assert!(check_semisimple(&a1(), &[q(3, 7)]).is_ok());
        assert!(matches!(check_semisimple(&jac, &[qi(1)]), Err(Error::Validation { .. })));
    }

    #[test]
    fn a2_inverse_series_symbolic() {
        let jac = a2();
        let q = Quotient::symbolic(&jac).unwrap();
        let a = a_series(&q, 2).unwrap();
        let d = "4*s2^3 + 9*s1^2";
        let d2 = format!("({d})^2");
        let d3 = format!("({d})^3");
        assert_eq!(a[0], vec![rf("9*s1", d), rf("-6*s2", d)]);
        assert_eq!(a[1], vec![rf("27*s1^2 - 24*s2^3", &d2), rf("-54*s1*s2", &d2)]);
        assert_eq!(a[2], vec![rf("9*(9*s1^3 - 32*s1*s2^3)", &d3), rf("6*s2*(8*s2^3 - 63*s1^2)", &d3)]);
        assert!(a_series_residual(&q, &a).iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn inverse_series_is_homogeneous() {
        // A_k has weight -(k+1): A_k(lambda.s) = lambda^{-(k+1)} A_k(s) on the weight-0 component
        let jac = a2();
        let s0 = [q(2, 5), qi(1)];
        let (lambda, scaled) = scaled_point(&jac, &s0);
        let qa = Quotient::at_point(&jac, &s0).unwrap();
        let qb = Quotient::at_point(&jac, &scaled).unwrap();
        let a = a_series(&qa, 3).unwrap();
        let b = a_series(&qb, 3).unwrap();
        for k in 0..=3 {
            let e = -(k as i64 + 1);
            assert_eq!(b[k][0], q_pow(&lambda, e) * &a[k][0]);
        }
    }

    #[test]
    fn b_series_small_cases() {
        let jac = a2();
        let sp = check_semisimple(&jac, &[qi(0), qi(1)]).unwrap();
        let qt = &sp.quotient;
        let a = a_series(qt, 3).unwrap();
        let b = b_series(qt, &a, jac.basis_weights(), 3);
        // B_1(1) = -A_0 and B_k(1) = 0 for k >= 2
        assert_eq!(b[0][1], a[0].iter().map(|v| -v).collect::<Vec<_>>());
        assert!(b[0][2..].iter().flatten().all(Zero::is_zero));
        // oracle in C[x]/(x^2 + 1): A_0 = -(3/2) x, B_1(x) = -A_0 x = (3/2) x^2 = -3/2,
        // B_2(x) = -(1/3) A_0 B_1(x) = -(1/3)(-(3/2) x)(-3/2) = -(3/4) x
        assert_eq!(a[0], vec![qi(0), q(-3, 2)]);
        assert_eq!(b[1][1], vec![q(-3, 2), qi(0)]);
        assert_eq!(b[1][2], vec![qi(0), q(-3, 4)]);
    }

    #[test]
    fn dense_solution_is_the_airy_series() {
        let jac = a2();
        let sp = check_semisimple(&jac, &[qi(0), qi(1)]).unwrap();
        let pd = PointData::from_point(&jac, &sp).unwrap();
        assert_eq!(pd.eta, Matrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]]));
        assert_eq!(pd.b0, Matrix::from_rows(vec![vec![qi(0), q(-2, 3)], vec![q(2, 3), qi(0)]]));
        let r = r_matrix_dense(&pd, 3).unwrap();
        assert_eq!(r.terms[1], Matrix::from_rows(vec![vec![qi(0), q(7, 48)], vec![q(5, 48), qi(0)]]));
        assert_eq!(r.terms[2], Matrix::from_rows(vec![vec![q(455, 4608), qi(0)], vec![qi(0), q(-385, 4608)]]));
        let rep = verify_r(&r, &pd);
        assert!(rep.recursion_ok() && rep.symplectic_ok() && rep.starts_at_identity, "{rep}");
    }

    #[test]
    fn dense_solution_is_homogeneous() {
        let jac = a2();
        let s0 = [q(1, 2), qi(1)];
        let (lambda, scaled) = scaled_point(&jac, &s0);
        let solve = |s: &[Q]| {
            let sp = check_semisimple(&jac, s).unwrap();
            r_matrix_dense(&PointData::from_point(&jac, &sp).unwrap(), 3).unwrap()
        };
        let res = homogeneity_residual(&jac, &lambda, &solve(&s0), &solve(&scaled));
        assert!(res.iter().all(Matrix::is_zero));
    }

    #[test]
    fn a1_dense_is_identity() {
        let jac = a1();
        let sp = check_semisimple(&jac, &[q(3, 7)]).unwrap();
        let pd = PointData::from_point(&jac, &sp).unwrap();
        let r = r_matrix_dense(&pd, 4).unwrap();
        assert!(r.terms[1..].iter().all(Matrix::is_zero));
    }

    #[test]
    fn construction_at_a2_point() {
        let jac = a2();
        let (comp, pd, report) = compute_and_verify(&jac, &[qi(0), qi(1)], 3).unwrap();
        assert_eq!(comp.r.terms[0], Matrix::identity(2));
        // R_1 is multiplication by A_0 = -(3/2) x1 at (0, 1)
        assert_eq!(comp.r.terms[1], Matrix::from_rows(vec![vec![qi(0), q(3, 2)], vec![q(-3, 2), qi(0)]]));
        assert_eq!(report.homogeneity_ok(), Some(true));
        // [B_0, multiplication] = 0 while B_inf != 0
        assert!(!report.recursion[0].is_zero());
        assert_eq!(report.recursion[0], &Matrix::<Q>::zeros(2, 2) - &pd.b_inf);
        let mut faulty = comp.r.clone();
        faulty.terms[1][(0, 0)] += &qi(1);
        assert!(!verify_r(&faulty, &pd).symplectic_ok());
    }

    #[test]
    fn construction_on_a1() {
        // A_0 = 1/s1 is a scalar, so the z-term survives and R(z) R(-z) = 1 - z^2/s1^2
        let (comp, _, report) = compute_and_verify(&a1(), &[qi(2)], 2).unwrap();
        assert_eq!(comp.r.terms[1], Matrix::from_rows(vec![vec![q(1, 2)]]));
        assert!(report.recursion[0].is_zero());
        assert_eq!(report.recursion[1], Matrix::from_rows(vec![vec![q(-1, 2)]]));
        assert!(report.symplectic[1].is_zero());
        assert_eq!(report.symplectic[2], Matrix::from_rows(vec![vec![q(-1, 4)]]));
    }

    #[test]
    fn fault_injection_breaks_symplectic() {
        let jac = a2();
        let sp = check_semisimple(&jac, &[qi(0), qi(1)]).unwrap();
        let pd = PointData::from_point(&jac, &sp).unwrap();
        let mut r = r_matrix_dense(&pd, 3).unwrap();
        r.terms[1][(0, 0)] += &qi(1);
        let rep = verify_r(&r, &pd);
        assert!(!rep.symplectic_ok());
    }

    #[test]
    fn univariate_gcd() {
        // (T - 1)^2 (T + 2) and its derivative share T - 1
        let p = vec![qi(2), qi(-3), qi(0), qi(1)];
        let d = vec![qi(-3), qi(0), qi(3)];
        assert_eq!(poly_gcd(&p, &d), vec![qi(-1), qi(1)]);
        assert_eq!(fmt_univariate(&p), "T^3 + (-3)*T + 2");
    }
}
