//! Frobenius manifold of a good basis and its primitive form, to a fixed
//! order in the deformation parameters: flat coordinates, structure
//! constants, potential, Euler field and the operators `B_0`, `B_inf`.
//!
//! Polynomials in the flat coordinates `t` reuse the `s`-slots of [`MPoly`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::brieskorn::Unfolding;
use crate::goodbasis::{GoodBasis, PolyMatrix};
use crate::linalg::Matrix;
use crate::polyring::{MPoly, Mono, STruncation, Q};
use crate::primform::{j_function, primitive_form, PrimitiveFormSeries};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub gb: GoodBasis,
    pub zeta: PrimitiveFormSeries,
    /// Order in `s` (and `t`) of the structure constants.
    pub order: u32,
    pub d: Q,
    /// `psi[a][b] = dt^b/ds_a`.
    pub psi: Vec<Vec<MPoly>>,
    pub t_of_s: Vec<MPoly>,
    pub s_of_t: Vec<MPoly>,
    /// `c_{ijk}(t)` for `i <= j <= k`.
    pub c: BTreeMap<(usize, usize, usize), MPoly>,
    pub potential: MPoly,
    /// `wt(t_a) = 1 - wt(omega_a)`.
    pub t_weights: Vec<Q>,
}

fn sorted3(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut v = [i, j, k];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

fn truncate(p: &MPoly, deg: u32) -> MPoly {
    STruncation::bounded(deg).truncate(p)
}

/// Inverse of `L + N(s)` with `L` constant and `N = O(s)`, truncated at `s`-degree `deg`.
fn inverse_series(m: &PolyMatrix, deg: u32) -> Result<PolyMatrix> {
    let l = m.map(|e| e.s_homogeneous_part(0));
    let l_inv = PolyMatrix::from_scalar(
        &l.z_coeff(0).inverse().ok_or_else(|| Error::Singular("period map is degenerate at s = 0".into()))?,
    );
    let t = l_inv.mul(&m.sub(&l)).map(|e| -e);
    let mut sum = PolyMatrix::identity(m.dim());
    let mut power = PolyMatrix::identity(m.dim());
    for _ in 0..deg {
        power = power.mul(&t).map(|e| truncate(e, deg));
        sum = sum.add(&power);
    }
    Ok(sum.mul(&l_inv))
}

impl FrobeniusData {
    /// Builds the data to order `order`: `c_{ijk}` correct through `t`-degree
    /// `order`, potential through degree `order + 3`.
    pub fn build(gb: &GoodBasis, order: u32) -> Result<Self> {
        let jac = &gb.jac;
        let mu = gb.mu();
        let p = order as usize;
        let zeta = primitive_form(gb, p + 1);
        let j = j_function(gb, &zeta);

        // Flat coordinates: the z^{-1} part of J.
        let mut t_of_s = vec![MPoly::zero(); mu];
        for jp in &j[1..] {
            for (t, c) in t_of_s.iter_mut().zip(&jp.coeffs) {
                *t += &c.z_coeff(-1);
            }
        }
        if t_of_s.iter().any(|t| t.has_x()) {
            return Err(Error::NonIntegrable("flat coordinates depend on x".into()));
        }
        let psi: Vec<Vec<MPoly>> = (0..mu).map(|a| t_of_s.iter().map(|t| t.diff_s(a)).collect()).collect();

        // s(t) by fixed-point iteration: s = (t - h(s)) L^{-1}, L = psi(0).
        let lin = Matrix::from_rows(psi.iter().map(|row| row.iter().map(|e| e.constant_term()).collect()).collect());
        let lin_inv = lin.inverse().ok_or_else(|| Error::Singular("period map is degenerate at s = 0".into()))?;
        let higher: Vec<MPoly> = t_of_s.iter().map(|t| t.filter(|m| m.s_degree() >= 2)).collect();
        let tvars: Vec<MPoly> = (0..mu).map(MPoly::s_var).collect();
        let mut s_of_t = vec![MPoly::zero(); mu];
        for _ in 0..=order + 1 {
            let h: Vec<MPoly> = higher.iter().map(|hb| hb.compose_s(&s_of_t, Some(order + 1))).collect();
            s_of_t = (0..mu)
                .map(|a| {
                    let mut acc = MPoly::zero();
                    for b in 0..mu {
                        let c = &lin_inv[(b, a)];
                        if !c.is_zero() {
                            acc += &(&tvars[b] - &h[b]).scale(c);
                        }
                    }
                    acc
                })
                .collect();
        }

        // Psi as a matrix (column b, row a) and its inverse.
        let psi_m = PolyMatrix { cols: (0..mu).map(|b| (0..mu).map(|a| truncate(&psi[a][b], order)).collect()).collect() };
        let psi_inv = inverse_series(&psi_m, order)?;

        // Structure constants of Jac(F) in the frame d/ds.
        let unf = Unfolding::new(jac, STruncation::bounded(order));
        let mut prod = vec![vec![Vec::new(); mu]; mu];
        for a in 0..mu {
            for b in a..mu {
                let nf = unf.normal_form(jac, &(&jac.basis()[a] * &jac.basis()[b]));
                prod[a][b] = nf.coeffs.clone();
                prod[b][a] = nf.coeffs;
            }
        }

        let eta = &gb.eta;
        let mut c = BTreeMap::new();
        for i in 0..mu {
            for jj in i..mu {
                // X_i o X_j in the frame d/ds, X_i = sum_a psi_inv[i][a] d/ds_a.
                let mut d_gamma = vec![MPoly::zero(); mu];
                for a in 0..mu {
                    let pia = psi_inv.entry(i, a);
                    if pia.is_zero() {
                        continue;
                    }
                    for b in 0..mu {
                        let pjb = psi_inv.entry(jj, b);
                        if pjb.is_zero() {
                            continue;
                        }
                        let w = truncate(&(pia * pjb), order);
                        for g in 0..mu {
                            if !prod[a][b][g].is_zero() {
                                d_gamma[g] += &truncate(&(&w * &prod[a][b][g]), order);
                            }
                        }
                    }
                }
                // To the flat frame: d/ds_g = sum_l psi[g][l] d/dt_l.
                let mut flat = vec![MPoly::zero(); mu];
                for (g, dg) in d_gamma.iter().enumerate() {
                    if dg.is_zero() {
                        continue;
                    }
                    for (l, f) in flat.iter_mut().enumerate() {
                        if !psi_m.entry(g, l).is_zero() {
                            *f += &truncate(&(dg * psi_m.entry(g, l)), order);
                        }
                    }
                }
                for k in jj..mu {
                    let mut v = MPoly::zero();
                    for (l, f) in flat.iter().enumerate() {
                        if !eta[(l, k)].is_zero() && !f.is_zero() {
                            v += &f.scale(&eta[(l, k)]);
                        }
                    }
                    c.insert((i, jj, k), v.compose_s(&s_of_t, Some(order)));
                }
            }
        }

        let t_weights: Vec<Q> = (0..mu).map(|a| Q::one() - gb.omega_weight(a)).collect();
        let mut fd = FrobeniusData {
            gb: gb.clone(),
            zeta,
            order,
            d: jac.central_charge(),
            psi,
            t_of_s,
            s_of_t,
            c,
            potential: MPoly::zero(),
            t_weights,
        };
        fd.potential = fd.integrate_potential()?;
        Ok(fd)
    }

    pub fn mu(&self) -> usize {
        self.gb.mu()
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &MPoly {
        &self.c[&sorted3(i, j, k)]
    }

    /// `F_n = (1 / (n (n-1) (n-2))) sum t_i t_j t_k c^{(n-3)}_{ijk}`, then checks `d^3 F = c`.
    fn integrate_potential(&self) -> Result<MPoly> {
        let mu = self.mu();
        let mut pot = MPoly::zero();
        for (&(i, j, k), v) in &self.c {
            let mult = if i == j && j == k {
                1
            } else if i == j || j == k {
                3
            } else {
                6
            };
            let mono = &(&MPoly::s_var(i) * &MPoly::s_var(j)) * &MPoly::s_var(k);
            for (m, coeff) in v.terms() {
                let n = i64::from(m.s_degree()) + 3;
                let f = Q::from_integer((mult).into()) / Q::from_integer((n * (n - 1) * (n - 2)).into());
                pot += &(&mono * &MPoly::term(m.clone(), coeff * &f));
            }
        }
        for i in 0..mu {
            for j in i..mu {
                for k in j..mu {
                    if pot.diff_s(i).diff_s(j).diff_s(k) != *self.c(i, j, k) {
                        return Err(Error::NonIntegrable(format!("structure constants c_({},{},{}) do not integrate", i + 1, j + 1, k + 1)));
                    }
                }
            }
        }
        Ok(pot)
    }

    /// `eta_ij = d^3 F / dt_1 dt_i dt_j`.
    pub fn eta_from_potential(&self) -> Matrix<Q> {
        let mu = self.mu();
        let d1 = self.potential.diff_s(0);
        let mut m = Matrix::zeros(mu, mu);
        for i in 0..mu {
            for j in 0..mu {
                m[(i, j)] = d1.diff_s(i).diff_s(j).constant_term();
            }
        }
        m
    }

    /// `E = sum wt(t_a) t_a d/dt_a`.
    pub fn euler_apply(&self, p: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (a, w) in self.t_weights.iter().enumerate() {
            if !w.is_zero() {
                out += &(&MPoly::s_var(a) * &p.diff_s(a)).scale(w);
            }
        }
        out
    }

    /// `E F - (3 - d) F`, which must consist of terms of degree at most 2.
    pub fn euler_residual(&self) -> MPoly {
        let three_minus_d = Q::from_integer(3.into()) - &self.d;
        &self.euler_apply(&self.potential) - &self.potential.scale(&three_minus_d)
    }

    pub fn euler_check(&self) -> bool {
        self.euler_residual().terms().all(|(m, _)| m.s_degree() <= 2)
    }

    /// `diag((2 - d)/2 - wt(t_a))`.
    pub fn b_infinity(&self) -> Matrix<Q> {
        let base = (Q::from_integer(2.into()) - &self.d) / Q::from_integer(2.into());
        Matrix::diagonal(self.t_weights.iter().map(|w| &base - w).collect())
    }

    /// `c_{ij}^k(t0)`: column `j` of the returned matrix for `i` is `d_i o d_j`.
    fn structure_matrix(&self, i: usize, t0: &[Q]) -> Matrix<Q> {
        let mu = self.mu();
        let eta_inv = self.gb.eta.inverse().expect("nondegenerate pairing");
        let mut low = Matrix::zeros(mu, mu);
        for j in 0..mu {
            for l in 0..mu {
                low[(l, j)] = self.c(i, j, l).eval_s(t0).constant_term();
            }
        }
        &eta_inv * &low
    }

    /// Matrix of `E o` at the point `t0`.
    pub fn b_zero(&self, t0: &[Q]) -> Matrix<Q> {
        let mu = self.mu();
        let mut out = Matrix::zeros(mu, mu);
        for (a, w) in self.t_weights.iter().enumerate() {
            let coeff = w * &t0[a];
            if !coeff.is_zero() {
                out = &out + &self.structure_matrix(a, t0).scale(&coeff);
            }
        }
        out
    }

    /// Topological part of the potential: `(1/3!) sum eta(phi_a phi_b, phi_c) t_a t_b t_c`.
    pub fn cubic_part(&self) -> MPoly {
        self.potential.filter(|m| m.s_degree() == 3)
    }
}

/// Third derivatives of a potential, for all sorted triples.
pub fn third_derivatives(pot: &MPoly, mu: usize) -> BTreeMap<(usize, usize, usize), MPoly> {
    let mut out = BTreeMap::new();
    for i in 0..mu {
        let di = pot.diff_s(i);
        for j in i..mu {
            let dij = di.diff_s(j);
            for k in j..mu {
                out.insert((i, j, k), dij.diff_s(k));
            }
        }
    }
    out
}

/// Largest nonzero WDVV residual term of `t`-degree at most `max_deg`, if any,
/// as `(i, j, k, n, residual)`.
pub fn wdvv_residual(
    pot: &MPoly,
    eta: &Matrix<Q>,
    max_deg: u32,
) -> Option<(usize, usize, usize, usize, MPoly)> {
    let mu = eta.rows();
    let d3 = third_derivatives(pot, mu);
    let get = |i: usize, j: usize, k: usize| &d3[&sorted3(i, j, k)];
    let eta_inv = eta.inverse().expect("nondegenerate pairing");
    for i in 0..mu {
        for j in 0..mu {
            for k in (j + 1)..mu {
                for n in 0..mu {
                    let mut res = MPoly::zero();
                    for l in 0..mu {
                        for m in 0..mu {
                            let e = &eta_inv[(l, m)];
                            if e.is_zero() {
                                continue;
                            }
                            let lhs = truncate(&(get(i, j, l) * get(m, k, n)), max_deg);
                            let rhs = truncate(&(get(i, k, l) * get(m, j, n)), max_deg);
                            res += &(&lhs - &rhs).scale(e);
                        }
                    }
                    if !res.is_zero() {
                        return Some((i, j, k, n, res));
                    }
                }
            }
        }
    }
    None
}

/// `true` if WDVV holds through `t`-degree `max_deg`.
pub fn wdvv_check(pot: &MPoly, eta: &Matrix<Q>, max_deg: u32) -> bool {
    wdvv_residual(pot, eta, max_deg).is_none()
}

/// `eta(B a, b) + eta(a, B b)` vanishes for all `a, b`.
pub fn is_skew_adjoint(b: &Matrix<Q>, eta: &Matrix<Q>) -> bool {
    (&(&b.transpose() * eta) + &(eta * b)).is_zero()
}

/// `eta(B a, b) = eta(a, B b)` for all `a, b`.
pub fn is_self_adjoint(b: &Matrix<Q>, eta: &Matrix<Q>) -> bool {
    (&(&b.transpose() * eta) - &(eta * b)).is_zero()
}

/// Monomial `t^e` helper for tests and the CLI.
pub fn t_monomial(exps: Vec<u32>) -> MPoly {
    MPoly::term(Mono::new(Vec::new(), exps, 0), Q::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::JacobianData;
    use crate::polyring::{parse_poly, q, qi, Names, WeightSystem};

    fn jac(f: &str, n: usize, w: Vec<Q>) -> JacobianData {
        JacobianData::build(&parse_poly(f, &Names::standard(n, 0)).unwrap(), WeightSystem::new(w).unwrap()).unwrap()
    }

    #[test]
    fn a2_potential() {
        let j = jac("(1/3)*x1^3", 1, vec![q(1, 3)]);
        let gb = GoodBasis::monomial(&j).unwrap();
        let fd = FrobeniusData::build(&gb, 3).unwrap();
        let t = Names::standard(1, 2).with_t();
        assert_eq!(fd.potential, parse_poly("(1/2)*t1^2*t2 - t2^4/24", &t).unwrap());
        assert_eq!(fd.t_of_s, vec![MPoly::s_var(0), MPoly::s_var(1)]);
        assert_eq!(fd.c(1, 1, 1), &parse_poly("-t2", &t).unwrap());
        assert_eq!(fd.eta_from_potential(), gb.eta);
        assert!(fd.euler_check());
        assert_eq!(fd.b_infinity(), Matrix::diagonal(vec![q(-1, 6), q(1, 6)]));
        assert!(is_skew_adjoint(&fd.b_infinity(), &gb.eta));
        let b0 = fd.b_zero(&[qi(0), qi(1)]);
        assert!(is_self_adjoint(&b0, &gb.eta));
        assert!(wdvv_check(&fd.potential, &gb.eta, 3));
    }

    #[test]
    fn a1_cubic_only() {
        let j = jac("x1^2", 1, vec![q(1, 2)]);
        let gb = GoodBasis::monomial(&j).unwrap();
        let fd = FrobeniusData::build(&gb, 3).unwrap();
        assert_eq!(fd.potential, t_monomial(vec![3]).scale(&(gb.eta[(0, 0)].clone() / qi(6))));
    }

    #[test]
    fn e7_order_three() {
        let j = jac("x1^3 + x1*x2^3", 2, vec![q(1, 3), q(2, 9)]);
        let gb = GoodBasis::monomial(&j).unwrap();
        let fd = FrobeniusData::build(&gb, 3).unwrap();
        assert_eq!(fd.eta_from_potential(), gb.eta);
        assert!(wdvv_check(&fd.potential, &gb.eta, 3));
        assert!(fd.euler_check());
        assert!(!wdvv_check(&(&fd.potential + &t_monomial(vec![0, 5])), &gb.eta, 3));
        for (b, t) in fd.t_of_s.iter().enumerate() {
            assert_eq!(truncate(&t.compose_s(&fd.s_of_t, Some(4)), 4), MPoly::s_var(b));
        }
        assert!(is_skew_adjoint(&fd.b_infinity(), &gb.eta));
        let t0: Vec<Q> = (1..=7).map(|v| q(v, 7)).collect();
        assert!(is_self_adjoint(&fd.b_zero(&t0), &gb.eta));
        for i in 0..7 {
            for k in 0..7 {
                assert_eq!(fd.c(0, i, k), &MPoly::constant(gb.eta[(i, k)].clone()));
            }
        }
    }
}
