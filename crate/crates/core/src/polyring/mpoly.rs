use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{format_q, qi, Exps, XPoly, Q};

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn get(v: &[u32], i: usize) -> u32 {
    v.get(i).copied().unwrap_or(0)
}

fn cmp_padded(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        match get(a, i).cmp(&get(b, i)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn add_padded(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n).map(|i| get(a, i) + get(b, i)).collect()
}

/// A monomial `x^a s^b z^c`. Exponent vectors are stored without trailing
/// zeros so that equal monomials compare equal regardless of how many
/// variables the surrounding context declares.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    x: Vec<u32>,
    s: Vec<u32>,
    z: i32,
}

impl Mono {
    pub fn new(x: Vec<u32>, s: Vec<u32>, z: i32) -> Self {
        Mono { x: trim(x), s: trim(s), z }
    }

    pub fn one() -> Self {
        Mono::default()
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn z(&self) -> i32 {
        self.z
    }

    pub fn x_exp(&self, k: usize) -> u32 {
        get(&self.x, k)
    }

    pub fn s_exp(&self, a: usize) -> u32 {
        get(&self.s, a)
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn s_degree(&self) -> u32 {
        self.s.iter().sum()
    }

    fn total(&self) -> i64 {
        self.x_degree() as i64 + self.s_degree() as i64 + self.z as i64
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono { x: add_padded(&self.x, &other.x), s: add_padded(&self.s, &other.s), z: self.z + other.z }
    }

    pub fn with_x(&self, x: Vec<u32>) -> Mono {
        Mono::new(x, self.s.clone(), self.z)
    }

    /// The `(s, z)` part with the `x` exponents cleared.
    pub fn sz_part(&self) -> Mono {
        Mono { x: Vec::new(), s: self.s.clone(), z: self.z }
    }
}

impl Ord for Mono {
    /// Graded lexicographic over `(x, s, z)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| cmp_padded(&self.x, &other.x))
            .then_with(|| cmp_padded(&self.s, &other.s))
            .then_with(|| self.z.cmp(&other.z))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable names used for parsing and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names {
    pub x: Vec<String>,
    pub s: Vec<String>,
    pub z: String,
}

impl Names {
    pub fn new(x: Vec<String>, s: Vec<String>) -> Self {
        Names { x, s, z: "z".to_string() }
    }

    /// `x1..xn` and `s1..sm`.
    pub fn standard(n: usize, m: usize) -> Self {
        Names::new((1..=n).map(|i| format!("x{i}")).collect(), (1..=m).map(|i| format!("s{i}")).collect())
    }

    /// Same `x` names, parameters renamed `t1..tm` (flat coordinates).
    pub fn with_t(&self) -> Self {
        Names::new(self.x.clone(), (1..=self.s.len()).map(|i| format!("t{i}")).collect())
    }
}

/// Exact polynomial in `x` and `s` with integer (possibly negative) powers of `z`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Q>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Q) -> Self {
        MPoly::term(Mono::one(), c)
    }

    pub fn one() -> Self {
        MPoly::constant(Q::one())
    }

    pub fn term(m: Mono, c: Q) -> Self {
        let mut p = MPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn x_var(k: usize) -> Self {
        let mut x = vec![0; k + 1];
        x[k] = 1;
        MPoly::term(Mono::new(x, vec![], 0), Q::one())
    }

    pub fn s_var(a: usize) -> Self {
        let mut s = vec![0; a + 1];
        s[a] = 1;
        MPoly::term(Mono::new(vec![], s, 0), Q::one())
    }

    pub fn z_pow(k: i32) -> Self {
        MPoly::term(Mono::new(vec![], vec![], k), Q::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Constant term, i.e. the coefficient of the empty monomial.
    pub fn constant_term(&self) -> Q {
        self.coeff(&Mono::one())
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> MPoly {
        MPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn map_monos(&self, f: impl Fn(&Mono) -> Option<Mono>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if let Some(m2) = f(m) {
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    pub fn mul_z(&self, k: i32) -> MPoly {
        self.map_monos(|m| Some(Mono { x: m.x.clone(), s: m.s.clone(), z: m.z + k }))
    }

    /// Terms with `z`-exponent strictly positive.
    pub fn z_positive(&self) -> MPoly {
        self.filter(|m| m.z > 0)
    }

    /// Terms with `z`-exponent `<= 0`.
    pub fn z_nonpositive(&self) -> MPoly {
        self.filter(|m| m.z <= 0)
    }

    /// Coefficient of `z^k`, as a `z`-free polynomial.
    pub fn z_coeff(&self, k: i32) -> MPoly {
        self.map_monos(|m| (m.z == k).then(|| Mono { x: m.x.clone(), s: m.s.clone(), z: 0 }))
    }

    /// Component of total `s`-degree exactly `p`.
    pub fn s_homogeneous_part(&self, p: u32) -> MPoly {
        self.filter(|m| m.s_degree() == p)
    }

    pub fn max_s_degree(&self) -> u32 {
        self.terms.keys().map(Mono::s_degree).max().unwrap_or(0)
    }

    pub fn z_range(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.z);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), z| (lo.min(z), hi.max(z))))
    }

    pub fn has_x(&self) -> bool {
        self.terms.keys().any(|m| !m.x.is_empty())
    }

    pub fn has_s(&self) -> bool {
        self.terms.keys().any(|m| !m.s.is_empty())
    }

    pub fn has_z(&self) -> bool {
        self.terms.keys().any(|m| m.z != 0)
    }

    /// Number of `x`-variables actually occurring.
    pub fn x_span(&self) -> usize {
        self.terms.keys().map(|m| m.x.len()).max().unwrap_or(0)
    }

    pub fn s_span(&self) -> usize {
        self.terms.keys().map(|m| m.s.len()).max().unwrap_or(0)
    }

    pub fn diff_x(&self, k: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.x_exp(k);
            if e == 0 {
                continue;
            }
            let mut x = m.x.clone();
            x[k] -= 1;
            out.add_term(Mono::new(x, m.s.clone(), m.z), c * qi(e as i64));
        }
        out
    }

    pub fn diff_s(&self, a: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.s_exp(a);
            if e == 0 {
                continue;
            }
            let mut s = m.s.clone();
            s[a] -= 1;
            out.add_term(Mono::new(m.x.clone(), s, m.z), c * qi(e as i64));
        }
        out
    }

    /// Substitutes rational values for the `s`-variables.
    pub fn eval_s(&self, point: &[Q]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (a, &e) in m.s.iter().enumerate() {
                if e > 0 {
                    let base = point.get(a).cloned().unwrap_or_else(Q::zero);
                    v *= num_traits::pow(base, e as usize);
                }
            }
            out.add_term(Mono::new(m.x.clone(), vec![], m.z), v);
        }
        out
    }

    /// Substitutes polynomials for the `s`-variables (truncating at `max_s` if given).
    pub fn compose_s(&self, subs: &[MPoly], max_s: Option<u32>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = MPoly::term(Mono::new(m.x.clone(), vec![], m.z), c.clone());
            for (a, &e) in m.s.iter().enumerate() {
                for _ in 0..e {
                    acc = &acc * &subs[a];
                    if let Some(b) = max_s {
                        acc = acc.filter(|mm| mm.s_degree() <= b);
                    }
                }
            }
            out += &acc;
        }
        out
    }

    /// Splits into `x`-polynomials indexed by the `(s, z)` part of each term.
    pub fn split_sz(&self) -> BTreeMap<Mono, XPoly<Q>> {
        let mut out: BTreeMap<Mono, XPoly<Q>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.sz_part()).or_default().add_term(Exps::new(m.x.clone()), c.clone());
        }
        out
    }

    pub fn from_xpoly(p: &XPoly<Q>, sz: &Mono) -> MPoly {
        MPoly::from_terms(p.terms().map(|(e, c)| (Mono::new(e.to_vec(), sz.s.clone(), sz.z), c.clone())))
    }

    /// `x`-only view; panics in debug builds if `s` or `z` occur.
    pub fn to_xpoly(&self) -> XPoly<Q> {
        debug_assert!(!self.has_s() && !self.has_z());
        let mut p = XPoly::zero();
        for (m, c) in &self.terms {
            p.add_term(Exps::new(m.x.clone()), c.clone());
        }
        p
    }

    pub fn display<'a>(&'a self, names: &'a Names) -> Display<'a> {
        Display { p: self, names }
    }
}

/// Printer borrowing a name table.
pub struct Display<'a> {
    p: &'a MPoly,
    names: &'a Names,
}

fn push_var(out: &mut Vec<String>, name: &str, e: i64) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        e if e < 0 => out.push(format!("{name}^({e})")),
        e => out.push(format!("{name}^{e}")),
    }
}

fn var_name(list: &[String], prefix: &str, i: usize) -> String {
    list.get(i).cloned().unwrap_or_else(|| format!("{prefix}{}", i + 1))
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        // descending order: leading term first
        for (i, (m, c)) in self.p.terms.iter().rev().enumerate() {
            let mut vars = Vec::new();
            for (k, &e) in m.x.iter().enumerate() {
                push_var(&mut vars, &var_name(&self.names.x, "x", k), e as i64);
            }
            for (a, &e) in m.s.iter().enumerate() {
                push_var(&mut vars, &var_name(&self.names.s, "s", a), e as i64);
            }
            push_var(&mut vars, &self.names.z, m.z as i64);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let coeff = if abs.denom().is_one() { format_q(&abs) } else { format!("({})", format_q(&abs)) };
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let (a, b) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = MPoly::zero();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
