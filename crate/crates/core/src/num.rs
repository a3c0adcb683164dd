//! Scalar helpers over arbitrary-precision integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. `BigRational` keeps itself reduced with a positive denominator.
pub type Rat = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ints(vs: &[i64]) -> Vec<BigInt> {
    vs.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rat(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn to_rats(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(to_rat).collect()
}

pub fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(vals: I) -> BigInt {
    vals.into_iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Integral rational vector to integers, `None` if some entry is fractional.
pub fn rats_to_ints(v: &[Rat]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Scale a rational vector to the primitive integer vector with the same direction.
pub fn primitive_from_rats(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * to_rat(&lcm)).to_integer()).collect();
    make_primitive(scaled)
}

pub fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = gcd_all(&v);
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn inf_norm_rat(v: &[Rat]) -> Rat {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
}

pub fn inf_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Number of nonzero entries.
pub fn support_size(v: &[BigInt]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

pub fn support(v: &[BigInt]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Conversion for the desk-scale fast paths; fails loudly rather than wrapping.
pub fn to_i64(v: &BigInt, what: &str) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::SearchSpaceTooLarge(format!("{what} does not fit in 64 bits")))
}

pub fn to_i64_vec(v: &[BigInt], what: &str) -> Result<Vec<i64>> {
    v.iter().map(|x| to_i64(x, what)).collect()
}

/// Largest integer `k` with `k^2 <= n` for nonnegative `n`.
pub fn isqrt(n: &BigInt) -> BigInt {
    if n.is_negative() {
        return BigInt::zero();
    }
    n.sqrt()
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `p/q` or a terminating decimal into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rat::new(n, d);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(Rat::from_integer)
}

/// Rational decimal approximation for human-facing output only.
pub fn approx(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
