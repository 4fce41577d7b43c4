use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::Field;

/// Exponent vector in the `x`-variables, ordered graded-lexicographically
/// with `x1 > x2 > ... > xN`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exps(Vec<u32>);

impl Exps {
    pub fn new(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Exps(v)
    }

    pub fn one() -> Self {
        Exps(Vec::new())
    }

    pub fn var(k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = 1;
        Exps(v)
    }

    pub fn get(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.0.clone()
    }

    pub fn padded(&self, n: usize) -> Vec<u32> {
        (0..n).map(|k| self.get(k)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Exps) -> Exps {
        let n = self.0.len().max(o.0.len());
        Exps((0..n).map(|k| self.get(k) + o.get(k)).collect())
    }

    pub fn divides(&self, o: &Exps) -> bool {
        self.0.iter().enumerate().all(|(k, &e)| e <= o.get(k))
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Exps) -> Exps {
        let n = o.0.len();
        Exps::new((0..n).map(|k| o.get(k) - self.get(k)).collect())
    }

    pub fn lcm(&self, o: &Exps) -> Exps {
        let n = self.0.len().max(o.0.len());
        Exps((0..n).map(|k| self.get(k).max(o.get(k))).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for k in 0..n {
                match self.get(k).cmp(&other.get(k)) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the `x`-variables over a field `K`.
#[derive(Clone, PartialEq, Debug)]
pub struct XPoly<K: Field> {
    terms: BTreeMap<Exps, K>,
}

impl<K: Field> Default for XPoly<K> {
    fn default() -> Self {
        XPoly { terms: BTreeMap::new() }
    }
}

impl<K: Field> XPoly<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(Exps::one(), c)
    }

    pub fn monomial(e: Exps, c: K) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: Exps, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let nv = v.clone() + c;
                if nv.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = nv;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &K)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Exps, &K)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, e: &Exps) -> K {
        self.terms.get(e).cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XPoly { terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Exps, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XPoly { terms: self.terms.iter().map(|(e, v)| (e.mul(m), v.clone() * c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.mul(e2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn diff(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let d = e.get(k);
            if d == 0 {
                continue;
            }
            let mut v = e.to_vec();
            v[k] -= 1;
            out.add_term(Exps::new(v), c.clone() * K::from_q(&super::qi(d as i64)));
        }
        out
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> XPoly<L> {
        let mut out = XPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl<K: Field> fmt::Display for XPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(k, &d)| if d == 1 { format!("x{}", k + 1) } else { format!("x{}^{d}", k + 1) })
                    .collect();
                if vars.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
