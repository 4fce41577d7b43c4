//! Good bases of the Brieskorn lattice and the trivialization `M * Phi^top`.

use num_traits::Zero;

use crate::brieskorn::{k_pairing_grading_check, lattice_reduce, twisted_derivative, GradingVerdict, LatticeElement};
use crate::jacobian::JacobianData;
use crate::linalg::Matrix;
use crate::polyring::{MPoly, Q};
use crate::{Error, Result};

/// Square matrix with entries in `Q[s][z, 1/z]`, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub cols: Vec<Vec<MPoly>>,
}

impl PolyMatrix {
    pub fn identity(n: usize) -> Self {
        PolyMatrix { cols: (0..n).map(|j| (0..n).map(|i| if i == j { MPoly::one() } else { MPoly::zero() }).collect()).collect() }
    }

    pub fn from_scalar(m: &Matrix<Q>) -> Self {
        PolyMatrix { cols: (0..m.cols()).map(|j| m.column(j).into_iter().map(MPoly::constant).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MPoly {
        &self.cols[j][i]
    }

    pub fn apply(&self, v: &[MPoly]) -> Vec<MPoly> {
        let n = self.dim();
        let mut out = vec![MPoly::zero(); n];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let e = &self.cols[j][i];
                if !e.is_zero() {
                    *o += &(e * vj);
                }
            }
        }
        out
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        PolyMatrix { cols: o.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        PolyMatrix { cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect() }
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        PolyMatrix { cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().flatten().all(MPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> PolyMatrix {
        PolyMatrix { cols: self.cols.iter().map(|c| c.iter().map(&f).collect()).collect() }
    }

    /// Scalar matrix of the `z^k` coefficients; panics if an entry depends on `s`.
    pub fn z_coeff(&self, k: i32) -> Matrix<Q> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                let c = self.cols[j][i].z_coeff(k);
                assert!(!c.has_s(), "entry depends on s");
                m[(i, j)] = c.constant_term();
            }
        }
        m
    }

    /// Inverse of a matrix whose constant term in `z` is invertible and whose
    /// higher part is nilpotent, by the geometric series.
    pub fn inverse_nilpotent(&self, max_terms: usize) -> Result<PolyMatrix> {
        let m0 = self.map(|e| e.z_coeff(0));
        let m0_inv = PolyMatrix::from_scalar(
            &m0.z_coeff(0).inverse().ok_or_else(|| Error::Singular("z = 0 part of M is not invertible".into()))?,
        );
        let t = m0_inv.mul(&self.sub(&m0));
        let mut sum = PolyMatrix::identity(self.dim());
        let mut power = PolyMatrix::identity(self.dim());
        for _ in 0..max_terms {
            power = power.mul(&t).map(|e| -e);
            if power.is_zero() {
                return Ok(sum.mul(&m0_inv));
            }
            sum = sum.add(&power);
        }
        Err(Error::Singular(format!("geometric series for the inverse did not terminate after {max_terms} terms")))
    }
}

/// Pairs that the grading does not force to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Certified,
    /// `(a, b, p)` with `a <= b`, zero-based.
    Unverified(Vec<(usize, usize, i64)>),
}

#[derive(Clone, Debug)]
pub struct GoodBasis {
    pub jac: JacobianData,
    /// Representatives of `omega_a` in `Q[x, z]`.
    pub omegas: Vec<MPoly>,
    /// Column `a` is the class of `omega_a` in the basis `[phi_b d^N x]`.
    pub m: PolyMatrix,
    pub m_inv: PolyMatrix,
    pub eta: Matrix<Q>,
    pub certification: Certification,
}

fn certify(jac: &JacobianData, omegas: &[LatticeElement]) -> Result<Certification> {
    let mu = omegas.len();
    let mut open = Vec::new();
    let d = jac.central_charge();
    for a in 0..mu {
        for b in a..mu {
            let excess = crate::brieskorn::lattice_weight(jac, &omegas[a])? + crate::brieskorn::lattice_weight(jac, &omegas[b])? - &d;
            if !excess.is_integer() || excess <= Q::zero() {
                continue;
            }
            let p: i64 = excess.to_integer().try_into().expect("weight excess fits in i64");
            debug_assert_eq!(k_pairing_grading_check(jac, &omegas[a], &omegas[b], p)?, GradingVerdict::Vacuous);
            // K^(p)(w, w) vanishes for odd p by the symmetry K^(p)(b, a) = (-1)^p K^(p)(a, b).
            if a == b && p % 2 == 1 {
                continue;
            }
            open.push((a, b, p));
        }
    }
    Ok(if open.is_empty() { Certification::Certified } else { Certification::Unverified(open) })
}

impl GoodBasis {
    /// `omega_a = [phi_a d^N x]` for the Milnor basis of `jac`.
    pub fn monomial(jac: &JacobianData) -> Result<Self> {
        Self::build(jac, jac.basis().to_vec())
    }

    /// Validates user-supplied elements of `B[z]`. Fails with
    /// [`Error::GradingInconclusive`] unless every pair is certified or
    /// `allow_unverified` is set.
    pub fn custom(jac: &JacobianData, omegas: Vec<MPoly>, allow_unverified: bool) -> Result<Self> {
        let gb = Self::build(jac, omegas)?;
        gb.require_certified(allow_unverified)?;
        Ok(gb)
    }

    pub fn require_certified(&self, allow_unverified: bool) -> Result<()> {
        match &self.certification {
            Certification::Unverified(open) if !allow_unverified => {
                let (a, b, p) = open[0];
                Err(Error::GradingInconclusive(a + 1, b + 1, p))
            }
            _ => Ok(()),
        }
    }

    fn build(jac: &JacobianData, omegas: Vec<MPoly>) -> Result<Self> {
        let mu = jac.mu();
        if omegas.len() != mu {
            return Err(Error::BasisMismatch(format!("{} good-basis elements given, Milnor number is {mu}", omegas.len())));
        }
        let mut classes = Vec::with_capacity(mu);
        for (a, w) in omegas.iter().enumerate() {
            if w.has_s() || w.x_span() > jac.n() {
                return Err(Error::validation(format!("good_basis[{a}]"), "must be a polynomial in x and z"));
            }
            if w.z_range().is_some_and(|(lo, _)| lo < 0) {
                return Err(Error::validation(format!("good_basis[{a}]"), "negative powers of z are not allowed"));
            }
            if jac.weights.wt(w).map_err(|e| Error::NotHomogeneous(format!("good_basis[{a}]: {e}")))?.is_none() {
                return Err(Error::NotHomogeneous(format!("good_basis[{a}] is not weight-homogeneous")));
            }
            classes.push(lattice_reduce(jac, w));
        }
        let m = PolyMatrix { cols: classes.iter().map(|c| c.coeffs.clone()).collect() };
        let c = m.z_coeff(0);
        for a in 0..mu {
            if c.column(a).iter().all(Zero::is_zero) {
                return Err(Error::ModZViolated(format!("good_basis[{a}] vanishes modulo z")));
            }
        }
        if c.inverse().is_none() {
            return Err(Error::ModZViolated("the classes modulo z are not a basis of the Jacobian algebra".into()));
        }
        let m_inv = m.inverse_nilpotent(4 * mu + 4)?;
        let g = jac.gram_matrix()?;
        let eta = &(&c.transpose() * &g) * &c;
        let certification = certify(jac, &classes)?;
        Ok(GoodBasis { jac: jac.clone(), omegas, m, m_inv, eta, certification })
    }

    pub fn mu(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.omegas.as_slice() == self.jac.basis()
    }

    /// `M * Phi^top`: expand `g` in the special basis and replace
    /// `prod (df/dx_k)^{p_k} phi_a` by `prod (df/dx_k + z d/dx_k)^{p_k} omega_a`.
    pub fn phi_omega_apply(&self, g: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for ((p, a), c) in &self.jac.regseq_decompose(g).terms {
            let mut t = &self.omegas[*a] * c;
            for (k, &e) in p.iter().enumerate() {
                for _ in 0..e {
                    t = twisted_derivative(&self.jac, k, &t);
                }
            }
            out += &t;
        }
        out
    }

    /// Rewrites a class given in the basis `[phi_a d^N x]` in the good basis.
    pub fn to_omega_coords(&self, e: &LatticeElement) -> LatticeElement {
        LatticeElement { coeffs: self.m_inv.apply(&e.coeffs), truncated: e.truncated }
    }

    /// Good-basis coordinates of `[g d^N x]`.
    pub fn phi_omega_inverse(&self, g: &MPoly) -> LatticeElement {
        self.to_omega_coords(&lattice_reduce(&self.jac, g))
    }

    /// `sum_a c_a omega_a` for good-basis coordinates `c`.
    pub fn representative(&self, e: &LatticeElement) -> MPoly {
        let mut out = MPoly::zero();
        for (c, w) in e.coeffs.iter().zip(&self.omegas) {
            if !c.is_zero() {
                out += &(c * w);
            }
        }
        out
    }

    /// Weight of `omega_a` (equal to that of its class modulo `z`).
    pub fn omega_weight(&self, a: usize) -> Q {
        self.jac.weights.wt(&self.omegas[a]).ok().flatten().expect("validated homogeneous")
    }

    /// Whether `Phi^omega((df/dx_k) g) = (df/dx_k + z d/dx_k) Phi^omega(g)`.
    pub fn trivialization_identity_check(&self, g: &MPoly, k: usize) -> bool {
        let lhs = self.phi_omega_apply(&(&self.jac.partials()[k] * g));
        lhs == twisted_derivative(&self.jac, k, &self.phi_omega_apply(g))
    }

    pub fn unit(&self, a: usize) -> LatticeElement {
        LatticeElement::basis(self.mu(), a)
    }

    pub fn is_identity_m(&self) -> bool {
        self.m == PolyMatrix::identity(self.mu())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brieskorn::phi_top_apply;
    use crate::polyring::{parse_poly, q, qi, Names, WeightSystem};

    fn e7() -> JacobianData {
        let f = parse_poly("x1^3 + x1*x2^3", &Names::standard(2, 0)).unwrap();
        JacobianData::build(&f, WeightSystem::new(vec![q(1, 3), q(2, 9)]).unwrap()).unwrap()
    }

    fn p(t: &str) -> MPoly {
        parse_poly(t, &Names::standard(2, 7)).unwrap()
    }

    #[test]
    fn monomial_basis_is_certified() {
        let j = e7();
        let gb = GoodBasis::monomial(&j).unwrap();
        assert_eq!(gb.certification, Certification::Certified);
        assert!(gb.is_identity_m());
        assert_eq!(gb.eta, j.gram_matrix().unwrap());
        for g in ["x1^3", "x1^4", "x1^3*x2", "x2^5"] {
            assert_eq!(gb.phi_omega_apply(&p(g)), phi_top_apply(&j, &p(g)));
        }
        for a in 0..7 {
            assert_eq!(gb.phi_omega_inverse(&gb.omegas[a]), gb.unit(a));
        }
    }

    #[test]
    fn rejects_inhomogeneous_and_mod_z() {
        let j = e7();
        let mut om: Vec<MPoly> = j.basis().to_vec();
        om[2] = p("x1^2 + z");
        assert!(matches!(GoodBasis::custom(&j, om, false), Err(Error::NotHomogeneous(_))));
        let mut om: Vec<MPoly> = j.basis().to_vec();
        // [x1^3] = -(2/9) z [1]: weight 1, zero modulo z
        om[6] = p("x1^3");
        assert!(matches!(GoodBasis::custom(&j, om, false), Err(Error::ModZViolated(_))));
        let mut om: Vec<MPoly> = j.basis().to_vec();
        om[6] = p("x1^2");
        assert!(matches!(GoodBasis::custom(&j, om, false), Err(Error::ModZViolated(_))));
    }

    #[test]
    fn permuted_basis() {
        let j = e7();
        let mut om: Vec<MPoly> = j.basis().to_vec();
        om.swap(1, 3);
        let gb = GoodBasis::custom(&j, om.clone(), false).unwrap();
        for a in 0..7 {
            assert_eq!(gb.phi_omega_inverse(&om[a]), gb.unit(a));
        }
        assert_eq!(gb.m.z_coeff(0)[(3, 1)], qi(1));
        assert!(gb.trivialization_identity_check(&p("x1*x2"), 0));
        assert!(gb.trivialization_identity_check(&p("x1^2*x2^3"), 1));
    }

    #[test]
    fn z_dependent_m_inverts() {
        let names = Names::standard(3, 0);
        let f = parse_poly("x1^3 + x2^3 + x3^3", &names).unwrap();
        let j = JacobianData::build(&f, WeightSystem::new(vec![q(1, 3); 3]).unwrap()).unwrap();
        let top = j.top_index();
        let mut om: Vec<MPoly> = j.basis().to_vec();
        om[top] = &om[top] + &parse_poly("2*z", &names).unwrap();
        let gb = GoodBasis::custom(&j, om.clone(), false).unwrap();
        assert_eq!(gb.m.entry(0, top), &parse_poly("2*z", &names).unwrap());
        assert_eq!(gb.m_inv.entry(0, top), &parse_poly("-2*z", &names).unwrap());
        for a in 0..j.mu() {
            assert_eq!(gb.phi_omega_inverse(&om[a]), gb.unit(a));
        }
        assert!(gb.trivialization_identity_check(&parse_poly("x1*x2^2", &names).unwrap(), 2));
    }
}
