use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p`, `-p` or `p/q` with arbitrary-precision integers.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = |msg: &str| Error::Syntax { pos: 0, msg: format!("{msg} in rational `{t}`") };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Q::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_formats() {
        assert_eq!(format_q(&q(6, -4)), "-3/2");
        assert_eq!(format_q(&qi(7)), "7");
        assert_eq!(parse_q(" -3/2 ").unwrap(), q(-3, 2));
        assert_eq!(parse_q("12345678901234567890").unwrap().numer().to_string(), "12345678901234567890");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("a").is_err());
    }
}
