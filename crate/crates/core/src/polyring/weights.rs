use num_traits::{One, Zero};

use super::{MPoly, Mono, Q};
use crate::{Error, Result};

/// Rational weights: `wt(x_k) = q_k`, `wt(z) = 1`, and `wt(s_a) = 1 - wt(phi_a)`
/// once a Milnor basis is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub q: Vec<Q>,
    pub s_weights: Vec<Q>,
}

impl WeightSystem {
    /// Checks `0 < q_k <= 1/2`.
    pub fn new(q: Vec<Q>) -> Result<Self> {
        let half = Q::new(1.into(), 2.into());
        for (k, w) in q.iter().enumerate() {
            if *w <= Q::zero() || *w > half {
                return Err(Error::validation(format!("weights[{k}]"), format!("weight {w} outside (0, 1/2]")));
            }
        }
        Ok(WeightSystem { q, s_weights: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn with_s_weights(mut self, s_weights: Vec<Q>) -> Self {
        self.s_weights = s_weights;
        self
    }

    pub fn mono_weight(&self, m: &Mono) -> Q {
        let mut w = Q::from_integer(m.z().into());
        for (k, &e) in m.x().iter().enumerate() {
            if e > 0 {
                w += &self.q[k] * Q::from_integer(e.into());
            }
        }
        for (a, &e) in m.s().iter().enumerate() {
            if e > 0 {
                w += &self.s_weights[a] * Q::from_integer(e.into());
            }
        }
        w
    }

    /// `Ok(Some(w))` if every term has weight `w`, `Ok(None)` if the weights
    /// differ; the zero polynomial has no weight.
    pub fn wt(&self, p: &MPoly) -> Result<Option<Q>> {
        let mut it = p.terms().map(|(m, _)| self.mono_weight(m));
        let first = it.next().ok_or_else(|| Error::NotHomogeneous("zero polynomial has no weight".into()))?;
        Ok(it.all(|w| w == first).then_some(first))
    }

    /// Splits into weight-homogeneous components, ascending by weight.
    pub fn homogeneous_parts(&self, p: &MPoly) -> Vec<(Q, MPoly)> {
        let mut parts: std::collections::BTreeMap<Q, MPoly> = Default::default();
        for (m, c) in p.terms() {
            parts.entry(self.mono_weight(m)).or_default().add_term(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// `sum_k (1 - 2 q_k)`, the weight of the Hessian.
    pub fn hessian_weight(&self) -> Q {
        self.q.iter().map(|w| Q::one() - w * Q::from_integer(2.into())).sum()
    }
}

/// Cap on the total `s`-degree carried through a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct STruncation {
    pub max_total_s_degree: Option<u32>,
}

impl STruncation {
    pub fn bounded(b: u32) -> Self {
        STruncation { max_total_s_degree: Some(b) }
    }

    pub fn unbounded() -> Self {
        STruncation { max_total_s_degree: None }
    }

    pub fn admits(&self, m: &Mono) -> bool {
        self.max_total_s_degree.is_none_or(|b| m.s_degree() <= b)
    }

    /// Removes terms above the cap; the flag reports whether anything nonzero was dropped.
    pub fn apply(&self, p: &MPoly) -> (MPoly, bool) {
        let kept = p.filter(|m| self.admits(m));
        let dropped = kept.len() != p.len();
        (kept, dropped)
    }

    pub fn truncate(&self, p: &MPoly) -> MPoly {
        self.apply(p).0
    }
}
