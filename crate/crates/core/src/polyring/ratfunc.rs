use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, MPoly, Names, Q};

/// Quotient of two polynomials in the `s`-variables. Used only where a
/// result is wanted as an explicit rational function of the parameters;
/// no gcd is taken, only exact cancellation when one side divides the other.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

/// Exact quotient `a / b` when `b` divides `a`.
pub(crate) fn div_exact(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let (bl, bc) = b.terms().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut rest = a.clone();
    let mut quot = MPoly::zero();
    loop {
        let last = rest.terms().next_back().map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = last else { break };
        let divisible = (0..m.s().len().max(bl.s().len())).all(|i| bl.s_exp(i) <= m.s_exp(i))
            && (0..m.x().len().max(bl.x().len())).all(|i| bl.x_exp(i) <= m.x_exp(i))
            && bl.z() <= m.z();
        if !divisible {
            return None;
        }
        let qm = super::Mono::new(
            (0..m.x().len()).map(|i| m.x_exp(i) - bl.x_exp(i)).collect(),
            (0..m.s().len()).map(|i| m.s_exp(i) - bl.s_exp(i)).collect(),
            m.z() - bl.z(),
        );
        let qc = c / bc.clone();
        rest -= &b.mul_mono(&qm, &qc);
        quot.add_term(qm, qc);
    }
    Some(quot)
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }.normalize()
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc { num: p, den: MPoly::one() }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    /// Substitutes rational values; `None` if the denominator vanishes.
    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let d = self.den.eval_s(point).constant_term();
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_s(point).constant_term() / d)
    }

    fn normalize(self) -> Self {
        if self.num.is_zero() {
            return RatFunc { num: MPoly::zero(), den: MPoly::one() };
        }
        if let Some(q) = div_exact(&self.num, &self.den) {
            return RatFunc { num: q, den: MPoly::one() };
        }
        let lc = self.den.terms().next_back().map(|(_, c)| c.clone()).unwrap();
        let inv = Q::one() / lc;
        RatFunc { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }

    pub fn display<'a>(&'a self, names: &'a Names) -> String {
        if self.den == MPoly::one() {
            format!("{}", self.num.display(names))
        } else {
            format!("({})/({})", self.num.display(names), self.den.display(names))
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Names::standard(0, self.num.s_span().max(self.den.s_span()));
        write!(f, "{}", self.display(&names))
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den);
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self + (-o)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel before multiplying
        let (n1, d2) = match div_exact(&self.num, &o.den) {
            Some(q) => (q, MPoly::one()),
            None => (self.num, o.den),
        };
        let (n2, d1) = match div_exact(&o.num, &self.den) {
            Some(q) => (q, MPoly::one()),
            None => (o.num, self.den),
        };
        RatFunc::new(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, o: RatFunc) -> RatFunc {
        assert!(!o.num.is_zero(), "division by zero rational function");
        self * RatFunc { num: o.den, den: o.num }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: MPoly::zero(), den: MPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: MPoly::one(), den: MPoly::one() }
    }
}

impl Field for RatFunc {
    fn from_q(v: &Q) -> Self {
        RatFunc::from_poly(MPoly::constant(v.clone()))
    }
}
