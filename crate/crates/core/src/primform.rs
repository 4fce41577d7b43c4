//! Perturbative primitive form `zeta = sum_p zeta_(p)` and the associated
//! `J = e^{(F - f)/z} zeta`, with coordinates in a good basis.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

use crate::brieskorn::LatticeElement;
use crate::goodbasis::GoodBasis;
use crate::jacobian::JacobianData;
use crate::linalg::Matrix;
use crate::polyring::{MPoly, Mono, Q};
use crate::{Error, Result};

/// `zeta[p]` holds the component of total `s`-degree `p`, in good-basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveFormSeries {
    pub zeta: Vec<LatticeElement>,
}

impl PrimitiveFormSeries {
    pub fn order(&self) -> usize {
        self.zeta.len() - 1
    }

    /// All corrections `zeta_(p)`, `p >= 1`, vanish.
    pub fn is_trivial(&self) -> bool {
        self.zeta[1..].iter().all(LatticeElement::is_zero)
    }
}

/// `F - f = sum_a s_a phi_a`.
pub fn deformation(jac: &JacobianData) -> MPoly {
    let mut out = MPoly::zero();
    for (a, phi) in jac.basis().iter().enumerate() {
        out += &(&MPoly::s_var(a) * phi);
    }
    out
}

/// Checks that a user-given `F` is the unfolding by the Milnor basis.
pub fn check_unfolding(jac: &JacobianData, big_f: &MPoly) -> Result<()> {
    if big_f - &jac.f != deformation(jac) {
        return Err(Error::BasisMismatch("F - f is not sum_a s_a phi_a for the chosen basis".into()));
    }
    Ok(())
}

fn factorial(a: usize) -> Q {
    (1..=a).fold(Q::one(), |acc, k| acc * Q::from_integer((k as i64).into()))
}

/// `(F - f)^a / a!` for `a = 0..=order`.
fn exp_terms(jac: &JacobianData, order: usize) -> Vec<MPoly> {
    let d = deformation(jac);
    let mut out = vec![MPoly::one()];
    for a in 1..=order {
        let next = &out[a - 1] * &d;
        out.push(next);
    }
    out.into_iter().enumerate().map(|(a, t)| t.scale(&(Q::one() / factorial(a)))).collect()
}

/// `zeta_(0) = [d^N x]`, `zeta_(p) = -pi_{>0} (Phi^omega)^{-1} sum_{a=1}^p (F-f)^a / (a! z^a) zeta_(p-a)`.
pub fn primitive_form(gb: &GoodBasis, order: usize) -> PrimitiveFormSeries {
    let e = exp_terms(&gb.jac, order);
    let mut reps = vec![MPoly::one()];
    let mut zeta = vec![gb.phi_omega_inverse(&MPoly::one())];
    for p in 1..=order {
        let mut acc = MPoly::zero();
        for a in 1..=p {
            if !reps[p - a].is_zero() {
                acc += &(&e[a] * &reps[p - a]).mul_z(-(a as i32));
            }
        }
        let z = gb.phi_omega_inverse(&acc).pi_pos().scale(&-MPoly::one());
        reps.push(gb.representative(&z));
        zeta.push(z);
    }
    PrimitiveFormSeries { zeta }
}

/// `J_(p) = sum_{a=0}^p (Phi^omega)^{-1} ((F-f)^a / (a! z^a) zeta_(p-a))`.
pub fn j_function(gb: &GoodBasis, zeta: &PrimitiveFormSeries) -> Vec<LatticeElement> {
    let order = zeta.order();
    let e = exp_terms(&gb.jac, order);
    let reps: Vec<MPoly> = zeta.zeta.iter().map(|z| gb.representative(z)).collect();
    (0..=order)
        .map(|p| {
            let mut acc = MPoly::zero();
            for a in 0..=p {
                acc += &(&e[a] * &reps[p - a]).mul_z(-(a as i32));
            }
            gb.phi_omega_inverse(&acc)
        })
        .collect()
}

/// [`j_function`], failing if a component reaches below `z^floor`.
pub fn j_function_with_floor(gb: &GoodBasis, zeta: &PrimitiveFormSeries, floor: i32) -> Result<Vec<LatticeElement>> {
    let j = j_function(gb, zeta);
    let lowest = j.iter().filter_map(LatticeElement::z_range).map(|r| r.0).min().unwrap_or(0);
    if lowest < floor {
        return Err(Error::ZFloorTooShallow { required: lowest });
    }
    Ok(j)
}

/// Largest power of `z` that a weight-zero `zeta_(p)` can carry.
fn z_bound(gb: &GoodBasis, p: usize) -> i32 {
    let most_negative = gb.jac.s_weights().iter().map(|w| -w).fold(Q::zero(), |m, w| if w > m { w } else { m });
    (most_negative * Q::from_integer((p as i64).into())).floor().to_integer().try_into().expect("z bound fits in i32")
}

/// Solves `pi_{>0} J_(p) = 0` order by order as a linear system in the
/// coefficients of `zeta_(p)` (normalized by `pi_0 zeta_(p) = 0` for `p >= 1`),
/// with the exponential operator expanded into its matrix entries
/// `(Phi^omega)^{-1}((F-f)^a z^{j-a} / a! omega_b)`.
pub fn oracle_primitive_form(gb: &GoodBasis, order: usize) -> Result<PrimitiveFormSeries> {
    let mu = gb.mu();
    let e = exp_terms(&gb.jac, order);
    let mut entries: HashMap<(usize, usize, i32), LatticeElement> = HashMap::new();
    let mut entry = |a: usize, b: usize, j: i32| -> LatticeElement {
        entries
            .entry((a, b, j))
            .or_insert_with(|| gb.phi_omega_inverse(&(&e[a] * &gb.omegas[b]).mul_z(j - a as i32)))
            .clone()
    };

    let mut zeta = vec![gb.phi_omega_inverse(&MPoly::one())];
    for p in 1..=order {
        // Known part: sum_{a>=1} of the expanded operator applied to zeta_(p-a).
        let mut known = LatticeElement::zero(mu);
        for a in 1..=p {
            for (b, c) in zeta[p - a].coeffs.iter().enumerate() {
                for (m, v) in c.terms() {
                    let col = entry(a, b, m.z());
                    let s_only = MPoly::term(Mono::new(Vec::new(), m.s().to_vec(), 0), v.clone());
                    known = known.add(&col.scale(&s_only));
                }
            }
        }
        let zmax = z_bound(gb, p);
        // Columns of the unknown block: (b, j) for j = 1..=zmax.
        let unknowns: Vec<(usize, i32)> = (0..mu).flat_map(|b| (1..=zmax).map(move |j| (b, j))).collect();
        let images: Vec<LatticeElement> = unknowns.iter().map(|&(b, j)| entry(0, b, j)).collect();

        // Group the equations by s-monomial.
        let mut s_monos: BTreeSet<Vec<u32>> = BTreeSet::new();
        for c in &known.coeffs {
            for (m, _) in c.terms() {
                if m.z() > 0 {
                    s_monos.insert(m.s().to_vec());
                }
            }
        }
        let mut zp = LatticeElement::zero(mu);
        for s in s_monos {
            let mut rows: BTreeSet<(usize, i32)> = BTreeSet::new();
            for (g, c) in known.coeffs.iter().enumerate() {
                for (m, _) in c.terms() {
                    if m.z() > 0 && m.s() == s.as_slice() {
                        rows.insert((g, m.z()));
                    }
                }
            }
            for im in &images {
                for (g, c) in im.coeffs.iter().enumerate() {
                    for (m, _) in c.terms() {
                        if m.z() > 0 {
                            rows.insert((g, m.z()));
                        }
                    }
                }
            }
            let rows: Vec<(usize, i32)> = rows.into_iter().collect();
            let coeff_at = |el: &LatticeElement, g: usize, j: i32, s: &[u32]| el.coeffs[g].coeff(&Mono::new(Vec::new(), s.to_vec(), j));
            let mut a_mat = Matrix::<Q>::zeros(rows.len(), unknowns.len());
            let mut rhs = Matrix::<Q>::zeros(rows.len(), 1);
            for (r, &(g, j)) in rows.iter().enumerate() {
                for (c, im) in images.iter().enumerate() {
                    a_mat[(r, c)] = coeff_at(im, g, j, &[]);
                }
                rhs[(r, 0)] = -coeff_at(&known, g, j, &s);
            }
            let (x, unique) = a_mat
                .solve(&rhs)
                .ok_or_else(|| Error::Singular(format!("primitive-form system at order {p} is inconsistent")))?;
            if !unique {
                return Err(Error::Singular(format!("primitive-form system at order {p} is underdetermined")));
            }
            for (c, &(b, j)) in unknowns.iter().enumerate() {
                let v = &x[(c, 0)];
                if !v.is_zero() {
                    zp.coeffs[b].add_term(Mono::new(Vec::new(), s.clone(), j), v.clone());
                }
            }
        }
        zeta.push(zp);
    }
    Ok(PrimitiveFormSeries { zeta })
}

/// Coefficients of `J_(1)`'s `z^{-1}` part: `t^b(s)` to first order.
pub fn z_minus_one_part(j: &[LatticeElement]) -> Vec<MPoly> {
    let mu = j[0].mu();
    let mut out = vec![MPoly::zero(); mu];
    for jp in &j[1..] {
        for (o, c) in out.iter_mut().zip(&jp.coeffs) {
            *o += &c.z_coeff(-1);
        }
    }
    out
}

/// Weight of each term of `zeta_(p)` relative to `zeta_(0)`; empty when `zeta_(p) = 0`.
pub fn zeta_weights(gb: &GoodBasis, z: &LatticeElement) -> BTreeMap<Q, usize> {
    let mut out = BTreeMap::new();
    for (b, c) in z.coeffs.iter().enumerate() {
        for (m, v) in c.terms() {
            if v.is_positive() || v.is_negative() {
                *out.entry(gb.jac.weights.mono_weight(m) + gb.omega_weight(b)).or_insert(0) += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, q, Names, WeightSystem};

    fn jac(f: &str, n: usize, w: Vec<Q>) -> JacobianData {
        JacobianData::build(&parse_poly(f, &Names::standard(n, 0)).unwrap(), WeightSystem::new(w).unwrap()).unwrap()
    }

    #[test]
    fn a2_trivial_and_j() {
        let j = jac("(1/3)*x1^3", 1, vec![q(1, 3)]);
        let gb = GoodBasis::monomial(&j).unwrap();
        let z = primitive_form(&gb, 4);
        assert!(z.is_trivial());
        assert_eq!(z.zeta[0], LatticeElement::basis(2, 0));
        assert_eq!(oracle_primitive_form(&gb, 4).unwrap(), z);
        let jf = j_function(&gb, &z);
        let names = Names::standard(1, 2);
        assert_eq!(jf[1].coeffs, vec![parse_poly("s1/z", &names).unwrap(), parse_poly("s2/z", &names).unwrap()]);
        assert!(jf.iter().all(|c| c.pi_pos().is_zero()));
        assert!(matches!(j_function_with_floor(&gb, &z, -1), Err(Error::ZFloorTooShallow { .. })));
    }

    #[test]
    fn e7_structure() {
        let j = jac("x1^3 + x1*x2^3", 2, vec![q(1, 3), q(2, 9)]);
        let gb = GoodBasis::monomial(&j).unwrap();
        let z = primitive_form(&gb, 3);
        assert_eq!(oracle_primitive_form(&gb, 3).unwrap(), z);
        let jf = j_function(&gb, &z);
        assert!(jf.iter().all(|c| c.pi_pos().is_zero()));
        assert_eq!(jf[0].z_coeff(0), LatticeElement::basis(7, 0));
        assert!(check_unfolding(&j, &(&j.f + &deformation(&j))).is_ok());
        assert!(check_unfolding(&j, &j.f).is_err());
    }

    #[test]
    fn negative_weight_corrections_match_oracle() {
        let j = jac("x1^3 + x2^3 + x3^3 + x4^3", 4, vec![q(1, 3); 4]);
        let gb = GoodBasis::monomial(&j).unwrap();
        let z = primitive_form(&gb, 3);
        assert!(z.zeta[1].is_zero() && z.zeta[2].is_zero() && !z.zeta[3].is_zero());
        for p in 1..=3 {
            assert!(zeta_weights(&gb, &z.zeta[p]).keys().all(Q::is_zero), "order {p}");
        }
        assert_eq!(oracle_primitive_form(&gb, 3).unwrap(), z);
        let jf = j_function(&gb, &z);
        assert!(jf.iter().all(|c| c.pi_pos().is_zero()));
    }
}
