//! Jacobian algebra of a quasihomogeneous isolated singularity: normal forms
//! with cofactors, the Milnor basis, the residue pairing and the
//! regular-sequence decomposition.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::polyring::{hessian, partials, Exps, GroebnerBasis, MPoly, Mono, Names, WeightSystem, XPoly, Q};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct JacobianData {
    pub f: MPoly,
    pub weights: WeightSystem,
    pub names: Names,
    partials: Vec<MPoly>,
    gb: GroebnerBasis<Q>,
    staircase: Vec<Exps>,
    basis: Vec<MPoly>,
    /// Inverse of the matrix whose columns are the staircase coordinates of the basis.
    staircase_to_basis: Matrix<Q>,
    /// Ideal cofactors of `phi_a - sum_e C[e][a] e`, one row per basis element.
    basis_cofactors: Vec<Vec<MPoly>>,
    basis_weights: Vec<Q>,
    top: usize,
    hess_class: Vec<Q>,
}

/// `g = sum_a coeffs[a] * phi_a + sum_k cofactors[k] * df/dx_k`.
/// Coefficients live in `Q[s, z, 1/z]`; cofactors may involve `x`, `s`, `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub coeffs: Vec<MPoly>,
    pub cofactors: Vec<MPoly>,
}

impl NormalForm {
    /// Constant coefficients; panics if any coefficient depends on `s` or `z`.
    pub fn scalar_coeffs(&self) -> Vec<Q> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(!c.has_s() && !c.has_z(), "coefficient is not a scalar");
                c.constant_term()
            })
            .collect()
    }
}

/// Coefficients indexed by `(p, a)`, standing for `prod_k (df/dx_k)^{p_k} * phi_a`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Decomposition {
    pub terms: BTreeMap<(Vec<u32>, usize), MPoly>,
}

impl Decomposition {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, p: Vec<u32>, a: usize, c: MPoly) {
        if c.is_zero() {
            return;
        }
        let key = (p, a);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn recompose(&self, jac: &JacobianData) -> MPoly {
        let mut out = MPoly::zero();
        for ((p, a), c) in &self.terms {
            let mut t = &jac.basis[*a] * c;
            for (k, &e) in p.iter().enumerate() {
                t = &t * &jac.partials[k].pow(e);
            }
            out += &t;
        }
        out
    }
}

fn x_weight(weights: &WeightSystem, e: &Exps) -> Q {
    e.to_vec().iter().zip(&weights.q).map(|(&k, w)| w * Q::from_integer(k.into())).sum()
}

impl JacobianData {
    /// Builds the Jacobian algebra with the default monomial basis.
    pub fn build(f: &MPoly, weights: WeightSystem) -> Result<Self> {
        Self::build_with_basis(f, weights, None)
    }

    /// Builds the Jacobian algebra. A user basis must start with `1`, consist
    /// of weight-homogeneous `x`-polynomials, and project onto a basis of the quotient.
    pub fn build_with_basis(f: &MPoly, weights: WeightSystem, basis: Option<Vec<MPoly>>) -> Result<Self> {
        let n = weights.n();
        if f.has_s() || f.has_z() {
            return Err(Error::NotQuasihomogeneous("f must be a polynomial in x only".into()));
        }
        if f.x_span() > n {
            return Err(Error::validation("f", format!("f uses more than {n} variables")));
        }
        if f.is_zero() {
            return Err(Error::NotQuasihomogeneous("f is zero".into()));
        }
        for (m, _) in f.terms() {
            let w = weights.mono_weight(m);
            if !w.is_one() {
                return Err(Error::NotQuasihomogeneous(format!("a term of f has weight {w}, expected 1")));
            }
        }
        let parts = partials(f, n);
        let gb = GroebnerBasis::new(parts.iter().map(MPoly::to_xpoly).collect());
        let mut staircase = gb.standard_monomials(n).ok_or(Error::NonIsolated)?;
        // Last variable most significant, so that E7 yields 1, x1, x1^2, x2, ...
        staircase.sort_by(|a, b| a.padded(n).iter().rev().cmp(b.padded(n).iter().rev()));
        let mu = staircase.len();
        let stair_index: BTreeMap<Exps, usize> = staircase.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();

        let basis = match basis {
            None => staircase.iter().map(|e| MPoly::from_xpoly(&XPoly::monomial(e.clone(), Q::one()), &Mono::one())).collect(),
            Some(b) => b,
        };
        if basis.len() != mu {
            return Err(Error::BasisMismatch(format!("basis has {} elements, Milnor number is {mu}", basis.len())));
        }
        if basis[0] != MPoly::one() {
            return Err(Error::BasisMismatch("the first basis element must be 1".into()));
        }
        let mut basis_weights = Vec::with_capacity(mu);
        let mut columns = Vec::with_capacity(mu);
        let mut basis_cofactors = Vec::with_capacity(mu);
        for (a, phi) in basis.iter().enumerate() {
            if phi.has_s() || phi.has_z() || phi.x_span() > n {
                return Err(Error::BasisMismatch(format!("basis element {} is not a polynomial in x", a + 1)));
            }
            let w = weights
                .wt(phi)
                .map_err(|_| Error::BasisMismatch(format!("basis element {} is zero", a + 1)))?
                .ok_or_else(|| Error::BasisMismatch(format!("basis element {} is not weight-homogeneous", a + 1)))?;
            basis_weights.push(w);
            let red = gb.reduce(&phi.to_xpoly());
            let mut col = vec![Q::zero(); mu];
            for (e, c) in red.remainder.terms() {
                col[stair_index[e]] = c.clone();
            }
            columns.push(col);
            basis_cofactors.push(red.cofactors.iter().map(|h| MPoly::from_xpoly(h, &Mono::one())).collect());
        }
        let basis_in_staircase = Matrix::from_columns(columns);
        let staircase_to_basis = basis_in_staircase
            .inverse()
            .ok_or_else(|| Error::BasisMismatch("basis classes are linearly dependent".into()))?;

        let d = weights.hessian_weight();
        let tops: Vec<usize> = (0..mu).filter(|&a| basis_weights[a] == d).collect();
        if tops.len() != 1 {
            return Err(Error::BasisMismatch(format!("{} basis elements have the top weight {d}", tops.len())));
        }
        let top = tops[0];
        let mut jac = JacobianData {
            f: f.clone(),
            names: Names::standard(n, mu),
            weights,
            partials: parts,
            gb,
            staircase,
            basis,
            staircase_to_basis,
            basis_cofactors,
            basis_weights,
            top,
            hess_class: Vec::new(),
        };
        let s_weights = jac.basis_weights.iter().map(|w| Q::one() - w).collect();
        jac.weights = jac.weights.clone().with_s_weights(s_weights);
        let hess = hessian(f, n);
        let hc = jac.normal_form(&hess).scalar_coeffs();
        if hc.iter().enumerate().any(|(a, c)| (a == top) == c.is_zero()) {
            return Err(Error::DegeneratePairing);
        }
        jac.hess_class = hc;
        Ok(jac)
    }

    /// Replaces the variable names used for printing and parsing; `s` names
    /// default to `s1..s_mu`.
    pub fn with_x_names(mut self, x: Vec<String>) -> Self {
        self.names = Names::new(x, self.names.s.clone());
        self
    }

    pub fn n(&self) -> usize {
        self.weights.n()
    }

    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MPoly] {
        &self.basis
    }

    pub fn staircase(&self) -> &[Exps] {
        &self.staircase
    }

    pub fn partials(&self) -> &[MPoly] {
        &self.partials
    }

    pub fn basis_weights(&self) -> &[Q] {
        &self.basis_weights
    }

    /// `wt(s_a) = 1 - wt(phi_a)`.
    pub fn s_weights(&self) -> &[Q] {
        &self.weights.s_weights
    }

    /// Index of the unique basis element of weight `sum (1 - 2 q_k)`.
    pub fn top_index(&self) -> usize {
        self.top
    }

    pub fn hess_class(&self) -> &[Q] {
        &self.hess_class
    }

    /// `sum_k (1 - 2 q_k)`.
    pub fn central_charge(&self) -> Q {
        self.weights.hessian_weight()
    }

    pub fn class_to_poly(&self, v: &[Q]) -> MPoly {
        let mut out = MPoly::zero();
        for (c, phi) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                out += &phi.scale(c);
            }
        }
        out
    }

    /// `sum_a c_a phi_a` for coefficients in `Q[s, z, 1/z]`.
    pub fn combine(&self, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (c, phi) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out += &(c * phi);
            }
        }
        out
    }

    fn reduce_x(&self, g: &XPoly<Q>) -> (Vec<Q>, Vec<XPoly<Q>>) {
        let mu = self.mu();
        let red = self.gb.reduce(g);
        let mut stair = vec![Q::zero(); mu];
        for (e, c) in red.remainder.terms() {
            let i = self.staircase.iter().position(|s| s == e).expect("remainder outside staircase");
            stair[i] = c.clone();
        }
        let coeffs = self.staircase_to_basis.apply(&stair);
        let mut cofactors = red.cofactors;
        // Remainder sum_e c_e e = sum_a d_a phi_a - sum_a d_a (ideal part of phi_a).
        for (a, d) in coeffs.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for (k, h) in self.basis_cofactors[a].iter().enumerate() {
                if !h.is_zero() {
                    cofactors[k] = cofactors[k].sub(&h.to_xpoly().scale(d));
                }
            }
        }
        (coeffs, cofactors)
    }

    /// Reduction modulo the Jacobian ideal, linear over `Q[s, z, 1/z]`.
    pub fn normal_form(&self, g: &MPoly) -> NormalForm {
        let n = self.n();
        let mut coeffs = vec![MPoly::zero(); self.mu()];
        let mut cofactors = vec![MPoly::zero(); n];
        for (sz, xp) in g.split_sz() {
            let (c, h) = self.reduce_x(&xp);
            let szp = MPoly::term(sz.clone(), Q::one());
            for (a, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    coeffs[a] += &szp.scale(&v);
                }
            }
            for (k, hk) in h.iter().enumerate() {
                if !hk.is_zero() {
                    cofactors[k] += &MPoly::from_xpoly(hk, &sz);
                }
            }
        }
        NormalForm { coeffs, cofactors }
    }

    /// Class of an `x`-polynomial with scalar coefficients.
    pub fn class_of(&self, g: &MPoly) -> Vec<Q> {
        self.normal_form(g).scalar_coeffs()
    }

    /// Class of `a * b`.
    pub fn product(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.class_of(&(&self.class_to_poly(a) * &self.class_to_poly(b)))
    }

    /// `eta(a, b) = mu * lambda`, where `lambda` is the coefficient of
    /// `[hess f]` in the class of `a * b`.
    pub fn residue_pairing(&self, a: &[Q], b: &[Q]) -> Q {
        let ab = self.product(a, b);
        let mu = Q::from_integer((self.mu() as i64).into());
        mu * &ab[self.top] / &self.hess_class[self.top]
    }

    /// Residue pairing as a linear functional: `eta(g, 1)` for a class `g`.
    pub fn residue_functional(&self, g: &[Q]) -> Q {
        let mu = Q::from_integer((self.mu() as i64).into());
        mu * &g[self.top] / &self.hess_class[self.top]
    }

    pub fn gram_matrix(&self) -> Result<Matrix<Q>> {
        let mu = self.mu();
        let mut g = Matrix::zeros(mu, mu);
        for a in 0..mu {
            for b in a..mu {
                let v = self.residue_functional(&self.class_of(&(&self.basis[a] * &self.basis[b])));
                g[(a, b)] = v.clone();
                g[(b, a)] = v;
            }
        }
        if g.det().is_zero() {
            return Err(Error::DegeneratePairing);
        }
        Ok(g)
    }

    /// Matrix of multiplication by the class `a` (column `b` is the class of `a * phi_b`).
    pub fn multiplication_matrix(&self, a: &[Q]) -> Matrix<Q> {
        let pa = self.class_to_poly(a);
        Matrix::from_columns(self.basis.iter().map(|phi| self.class_of(&(&pa * phi))).collect())
    }

    /// Expands `g` in the special basis `prod (df/dx_k)^{p_k} phi_a` by
    /// reducing and recursively decomposing the cofactors.
    pub fn regseq_decompose(&self, g: &MPoly) -> Decomposition {
        let n = self.n();
        let mut out = Decomposition::default();
        for (sz, xp) in g.split_sz() {
            let mut by_weight: BTreeMap<Q, XPoly<Q>> = BTreeMap::new();
            for (e, c) in xp.terms() {
                by_weight.entry(x_weight(&self.weights, e)).or_default().add_term(e.clone(), c.clone());
            }
            for part in by_weight.values() {
                self.decompose_rec(part, vec![0; n], &sz, &mut out);
            }
        }
        out
    }

    fn decompose_rec(&self, g: &XPoly<Q>, p: Vec<u32>, sz: &Mono, out: &mut Decomposition) {
        if g.is_zero() {
            return;
        }
        let (coeffs, cofactors) = self.reduce_x(g);
        for (a, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                out.add(p.clone(), a, MPoly::term(sz.clone(), c));
            }
        }
        for (k, h) in cofactors.iter().enumerate() {
            let mut pk = p.clone();
            pk[k] += 1;
            self.decompose_rec(h, pk, sz, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, q, qi};

    pub(crate) fn e7() -> JacobianData {
        let names = Names::standard(2, 0);
        let f = parse_poly("x1^3 + x1*x2^3", &names).unwrap();
        JacobianData::build(&f, WeightSystem::new(vec![q(1, 3), q(2, 9)]).unwrap()).unwrap()
    }

    fn p(t: &str) -> MPoly {
        parse_poly(t, &Names::standard(2, 7)).unwrap()
    }

    fn unit(mu: usize, a: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); mu];
        v[a] = Q::one();
        v
    }

    #[test]
    fn e7_basis_and_hessian() {
        let j = e7();
        assert_eq!(j.mu(), 7);
        let shown: Vec<String> = j.basis().iter().map(|b| b.display(&j.names).to_string()).collect();
        assert_eq!(shown, ["1", "x1", "x1^2", "x2", "x1*x2", "x1^2*x2", "x2^2"]);
        assert_eq!(j.top_index(), 5);
        assert_eq!(j.hess_class()[5], qi(63));
        assert_eq!(j.central_charge(), q(8, 9));
    }

    #[test]
    fn e7_normal_forms() {
        let j = e7();
        let nf = j.normal_form(&p("x2^3"));
        assert_eq!(nf.scalar_coeffs(), {
            let mut v = vec![Q::zero(); 7];
            v[2] = qi(-3);
            v
        });
        assert_eq!(nf.cofactors, vec![MPoly::one(), MPoly::zero()]);
        let nf = j.normal_form(&p("x1*x2^2"));
        assert!(nf.coeffs.iter().all(MPoly::is_zero));
        assert_eq!(nf.cofactors, vec![MPoly::zero(), MPoly::constant(q(1, 3))]);
        // s- and z-coefficients pass through linearly
        let nf = j.normal_form(&p("s2*z*x2^3 + s1"));
        assert_eq!(nf.coeffs[2], p("-3*s2*z"));
        assert_eq!(nf.coeffs[0], p("s1"));
    }

    #[test]
    fn e7_pairing() {
        let j = e7();
        assert_eq!(j.residue_pairing(&unit(7, 0), &unit(7, 5)), q(1, 9));
        assert_eq!(j.residue_pairing(&unit(7, 0), &unit(7, 0)), qi(0));
        assert_eq!(j.residue_pairing(&unit(7, 6), &unit(7, 6)), q(-1, 3));
        let g = j.gram_matrix().unwrap();
        assert!(g.is_symmetric());
        assert_eq!(g[(0, 5)], q(1, 9));
        let hess = j.class_of(&hessian(&j.f, 2));
        assert_eq!(j.residue_pairing(&unit(7, 0), &hess), qi(7));
    }

    #[test]
    fn a2_and_a1() {
        let names = Names::standard(1, 0);
        let f = parse_poly("(1/3)*x1^3", &names).unwrap();
        let j = JacobianData::build(&f, WeightSystem::new(vec![q(1, 3)]).unwrap()).unwrap();
        assert_eq!(j.mu(), 2);
        assert_eq!(j.gram_matrix().unwrap(), Matrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]]));
        let f = parse_poly("x1^2", &names).unwrap();
        let j = JacobianData::build(&f, WeightSystem::new(vec![q(1, 2)]).unwrap()).unwrap();
        assert_eq!(j.mu(), 1);
    }

    #[test]
    fn build_errors() {
        let names = Names::standard(2, 0);
        let f = parse_poly("x1^3 + x2^2", &names).unwrap();
        let w = WeightSystem::new(vec![q(1, 3), q(1, 3)]).unwrap();
        assert!(matches!(JacobianData::build(&f, w), Err(Error::NotQuasihomogeneous(_))));
        let f = parse_poly("x1^2*x2", &names).unwrap();
        let w = WeightSystem::new(vec![q(1, 2), q(0, 1) + q(1, 2)]).unwrap();
        let f2 = parse_poly("x1^2", &names).unwrap();
        assert_eq!(JacobianData::build(&f2, w).unwrap_err(), Error::NonIsolated);
        let w = WeightSystem::new(vec![q(1, 3), q(1, 3)]).unwrap();
        assert!(JacobianData::build(&f, w).is_err());
    }

    #[test]
    fn e7_decompositions() {
        let j = e7();
        let d = j.regseq_decompose(&p("x1^3"));
        let expected: BTreeMap<(Vec<u32>, usize), MPoly> =
            [((vec![1, 0], 1), MPoly::constant(q(1, 3))), ((vec![0, 1], 3), MPoly::constant(q(-1, 9)))].into();
        assert_eq!(d.terms, expected);
        let d = j.regseq_decompose(&p("x1^4"));
        let expected: BTreeMap<(Vec<u32>, usize), MPoly> =
            [((vec![1, 0], 2), MPoly::constant(q(1, 3))), ((vec![0, 1], 4), MPoly::constant(q(-1, 9)))].into();
        assert_eq!(d.terms, expected);
        let d = j.regseq_decompose(&p("x1*x2"));
        assert_eq!(d.terms.len(), 1);
        assert!(j.regseq_decompose(&MPoly::zero()).is_empty());
        for g in ["x1^5*x2^3 + 3*x2^7", "s1*z^2*x1^6 - x2^9 + 2", "x1^3*x2^4"] {
            assert_eq!(j.regseq_decompose(&p(g)).recompose(&j), p(g), "{g}");
        }
    }

    #[test]
    fn user_basis() {
        let names = Names::standard(2, 0);
        let f = parse_poly("x1^3 + x1*x2^3", &names).unwrap();
        let w = WeightSystem::new(vec![q(1, 3), q(2, 9)]).unwrap();
        let basis: Vec<MPoly> =
            ["1", "x1", "x1^2 + x2^3", "x2", "x1*x2", "x1^2*x2", "x2^2"].iter().map(|t| p(t)).collect();
        let j = JacobianData::build_with_basis(&f, w.clone(), Some(basis)).unwrap();
        let nf = j.normal_form(&p("x1^2"));
        let back = &j.combine(&nf.coeffs) + &(&(&nf.cofactors[0] * &j.partials()[0]) + &(&nf.cofactors[1] * &j.partials()[1]));
        assert_eq!(back, p("x1^2"));
        // x1^2 + x2^3 = -2 x1^2 mod ideal
        assert_eq!(nf.scalar_coeffs()[2], q(-1, 2));
        let bad: Vec<MPoly> = ["1", "x1", "x1^2", "x2", "x1*x2", "x1^2*x2", "x1^2"].iter().map(|t| p(t)).collect();
        assert!(matches!(JacobianData::build_with_basis(&f, w, Some(bad)), Err(Error::BasisMismatch(_))));
    }
}
