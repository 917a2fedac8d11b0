//! Exact rational scalars and small vector helpers.
//!
//! Every coordinate, coefficient and right-hand side in the crate is a
//! [`Rational`]: an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. Nothing in the crate ever rounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use crate::scalar::Rational;

/// A point (or dual vector) in rational coordinates.
pub type Point = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

pub fn ints(vs: &[i64]) -> Point {
    vs.iter().map(|&v| int(v)).collect()
}

pub fn zeros(n: usize) -> Point {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Point {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

/// Parses `"p/q"` or an integer string `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::from_bigints(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from(p))
        }
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

pub fn add(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Point {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> Point {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// The positive factor that turns `v` into a primitive integer vector
/// (integer entries with gcd 1). `None` for the zero vector.
pub fn primitive_factor(v: &[Rational]) -> Option<Rational> {
    if is_zero_vec(v) {
        return None;
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let gcd = v
        .iter()
        .map(|x| (x.numer() * (&lcm / x.denom())).abs())
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    Some(Rational::from_bigints(lcm, gcd))
}

/// Scales a nonzero vector to a primitive integer vector, keeping its sign.
pub fn primitive(v: &[Rational]) -> Option<Point> {
    primitive_factor(v).map(|s| scale(v, &s))
}

/// Like [`primitive`] but additionally flips the sign so that the first
/// nonzero coordinate is positive. Used for lines and equations.
pub fn primitive_unsigned(v: &[Rational]) -> Option<Point> {
    let p = primitive(v)?;
    let first = p.iter().find(|x| !x.is_zero())?;
    if first.is_negative() {
        Some(neg(&p))
    } else {
        Some(p)
    }
}

pub fn lex_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter().cmp(b.iter())
}

/// A rational extended by the two infinities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extended {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        use Extended::*;
        match (self, other) {
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInfinity => write!(f, "-inf"),
            Extended::Finite(r) => write!(f, "{}", format_rational(r)),
            Extended::PosInfinity => write!(f, "+inf"),
        }
    }
}

/// Rank of a rational matrix given as rows, by exact Gaussian elimination.
pub fn rank(rows: &[Point]) -> usize {
    let mut m: Vec<Point> = rows.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for j in c..ncols {
                let delta = &factor * &m[r][j];
                m[i][j] -= delta;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![frac(1, 2), frac(-3, 4), int(0)];
        assert_eq!(primitive(&v).unwrap(), ints(&[2, -3, 0]));
        assert_eq!(primitive_unsigned(&neg(&v)).unwrap(), ints(&[2, -3, 0]));
        assert_eq!(primitive(&ints(&[0, -4, 6])).unwrap(), ints(&[0, -2, 3]));
        assert!(primitive(&zeros(3)).is_none());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![ints(&[1, 2, 3]), ints(&[2, 4, 6]), ints(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[zeros(2)]), 0);
    }

    #[test]
    fn extended_order() {
        assert!(Extended::NegInfinity < Extended::Finite(int(-100)));
        assert!(Extended::Finite(int(100)) < Extended::PosInfinity);
        assert!(Extended::Finite(frac(1, 3)) < Extended::Finite(frac(1, 2)));
    }
}
