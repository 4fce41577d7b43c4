use std::collections::{BTreeSet, VecDeque};

use super::{Exps, Field, XPoly};

#[derive(Clone, Debug)]
struct Element<K: Field> {
    poly: XPoly<K>,
    lead: Exps,
    lead_coeff: K,
    /// `poly = sum_k cofactors[k] * generators[k]`
    cofactors: Vec<XPoly<K>>,
}

/// Gröbner basis (graded lexicographic) of an ideal given by generators,
/// where every basis element remembers how it is built from the generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K: Field> {
    generators: Vec<XPoly<K>>,
    elems: Vec<Element<K>>,
}

/// Result of dividing by a [`GroebnerBasis`]: `input = remainder + sum_k cofactors[k] * generators[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<K: Field> {
    pub remainder: XPoly<K>,
    pub cofactors: Vec<XPoly<K>>,
}

impl<K: Field> Element<K> {
    fn new(poly: XPoly<K>, cofactors: Vec<XPoly<K>>) -> Option<Self> {
        let (lead, lc) = poly.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        Some(Element { poly, lead, lead_coeff: lc, cofactors })
    }

    fn monic(self) -> Self {
        let inv = self.lead_coeff.inv();
        Element {
            poly: self.poly.scale(&inv),
            cofactors: self.cofactors.iter().map(|c| c.scale(&inv)).collect(),
            lead: self.lead,
            lead_coeff: K::one(),
        }
    }
}

impl<K: Field> GroebnerBasis<K> {
    /// Buchberger's algorithm with the product criterion. Zero generators are
    /// kept in `generators` (their cofactor is always zero) but never used.
    pub fn new(generators: Vec<XPoly<K>>) -> Self {
        let n = generators.len();
        let unit = |k: usize| -> Vec<XPoly<K>> {
            (0..n).map(|j| if j == k { XPoly::constant(K::one()) } else { XPoly::zero() }).collect()
        };
        let mut gb = GroebnerBasis { generators: generators.clone(), elems: Vec::new() };
        for (k, g) in generators.iter().enumerate() {
            if let Some(e) = Element::new(g.clone(), unit(k)) {
                gb.elems.push(e);
            }
        }
        let originals = gb.elems.len();
        let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
        for j in 0..gb.elems.len() {
            for i in 0..j {
                pairs.push_back((i, j));
            }
        }
        while let Some((i, j)) = pairs.pop_front() {
            let (a, b) = (&gb.elems[i], &gb.elems[j]);
            let l = a.lead.lcm(&b.lead);
            if l == a.lead.mul(&b.lead) {
                continue;
            }
            let fa = a.lead.quotient_of(&l);
            let fb = b.lead.quotient_of(&l);
            let ca = a.lead_coeff.inv();
            let cb = b.lead_coeff.inv();
            let s = a.poly.mul_term(&fa, &ca).sub(&b.poly.mul_term(&fb, &cb));
            let cof: Vec<XPoly<K>> = (0..n)
                .map(|k| a.cofactors[k].mul_term(&fa, &ca).sub(&b.cofactors[k].mul_term(&fb, &cb)))
                .collect();
            let red = gb.reduce(&s);
            if red.remainder.is_zero() {
                continue;
            }
            let cof: Vec<XPoly<K>> = (0..n).map(|k| cof[k].sub(&red.cofactors[k])).collect();
            let e = Element::new(red.remainder, cof).expect("nonzero").monic();
            let new = gb.elems.len();
            gb.elems.push(e);
            for i in 0..new {
                pairs.push_back((i, new));
            }
        }
        // drop redundant non-original elements (leading term divisible by another's)
        let mut keep = Vec::new();
        for (i, e) in gb.elems.iter().enumerate() {
            let redundant = i >= originals
                && gb.elems.iter().enumerate().any(|(j, o)| j != i && o.lead.divides(&e.lead) && (o.lead != e.lead || j < i));
            if !redundant {
                keep.push(e.clone());
            }
        }
        gb.elems = keep;
        gb
    }

    pub fn generators(&self) -> &[XPoly<K>] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<Exps> {
        self.elems.iter().map(|e| e.lead.clone()).collect()
    }

    /// Full division. When several basis elements have a leading monomial that
    /// divides the current term, the earliest one wins; the generators come
    /// first, in their given order.
    pub fn reduce(&self, p: &XPoly<K>) -> Reduction<K> {
        let n = self.generators.len();
        let mut cur = p.clone();
        let mut remainder = XPoly::zero();
        let mut cofactors = vec![XPoly::zero(); n];
        while let Some((lt, lc)) = cur.leading().map(|(e, c)| (e.clone(), c.clone())) {
            match self.elems.iter().find(|e| e.lead.divides(&lt)) {
                Some(e) => {
                    let m = e.lead.quotient_of(&lt);
                    let c = lc / e.lead_coeff.clone();
                    cur = cur.sub(&e.poly.mul_term(&m, &c));
                    for (k, cof) in e.cofactors.iter().enumerate() {
                        if !cof.is_zero() {
                            cofactors[k].add_assign(&cof.mul_term(&m, &c));
                        }
                    }
                }
                None => {
                    cur.add_term(lt.clone(), -lc.clone());
                    remainder.add_term(lt, lc);
                }
            }
        }
        Reduction { remainder, cofactors }
    }

    /// Monomials outside the leading-term staircase, sorted ascending, or
    /// `None` when there are infinitely many.
    pub fn standard_monomials(&self, nvars: usize) -> Option<Vec<Exps>> {
        let leads = self.leading_monomials();
        for k in 0..nvars {
            let pure = leads.iter().any(|l| l.get(k) > 0 && (0..nvars).all(|j| j == k || l.get(j) == 0));
            if !pure {
                return None;
            }
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([Exps::one()]);
        while let Some(m) = queue.pop_front() {
            if seen.contains(&m) || leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for k in 0..nvars {
                queue.push_back(m.mul(&Exps::var(k)));
            }
            seen.insert(m);
        }
        Some(seen.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{q, qi, Q};

    fn xp(terms: &[(&[u32], Q)]) -> XPoly<Q> {
        let mut p = XPoly::zero();
        for (e, c) in terms {
            p.add_term(Exps::new(e.to_vec()), c.clone());
        }
        p
    }

    #[test]
    fn e7_jacobian_staircase() {
        // partials of x1^3 + x1 x2^3
        let d1 = xp(&[(&[2, 0], qi(3)), (&[0, 3], qi(1))]);
        let d2 = xp(&[(&[1, 2], qi(3))]);
        let gb = GroebnerBasis::new(vec![d1.clone(), d2.clone()]);
        let std = gb.standard_monomials(2).unwrap();
        assert_eq!(std.len(), 7);
        // x1^3 = (x1/3) d1 - (x2/9) d2
        let r = gb.reduce(&xp(&[(&[3, 0], qi(1))]));
        assert!(r.remainder.is_zero());
        assert_eq!(r.cofactors[0], xp(&[(&[1], q(1, 3))]));
        assert_eq!(r.cofactors[1], xp(&[(&[0, 1], q(-1, 9))]));
    }

    #[test]
    fn non_isolated_is_detected() {
        // partials of x1^2 x2: (2 x1 x2, x1^2), the x2-axis is critical
        let gb = GroebnerBasis::new(vec![xp(&[(&[1, 1], qi(2))]), xp(&[(&[2], qi(1))])]);
        assert!(gb.standard_monomials(2).is_none());
    }
}
