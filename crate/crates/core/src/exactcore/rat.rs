//! Rational scalars and vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored reduced with positive denominator.
pub type Rat = BigRational;
/// Dense rational vector.
pub type QVec = Vec<Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer string.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(","))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Rat, a: &[Rat]) -> QVec {
    a.iter().map(|x| s * x).collect()
}

pub fn neg(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

/// `a + s*b`
pub fn axpy(a: &[Rat], s: &Rat, b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn is_integral(r: &Rat) -> bool {
    r.is_integer()
}

pub fn is_integral_vec(a: &[Rat]) -> bool {
    a.iter().all(Rat::is_integer)
}

/// `⌈z⌉ - z`, which lies in `[0,1)`.
pub fn frac_up(z: &Rat) -> Rat {
    z.ceil() - z
}

pub fn ceil_int(z: &Rat) -> BigInt {
    z.ceil().to_integer()
}

pub fn floor_int(z: &Rat) -> BigInt {
    z.floor().to_integer()
}

/// Least common multiple of the denominators.
pub fn common_denominator(a: &[Rat]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Integer vector obtained by clearing denominators of `a`.
pub fn clear_denominators(a: &[Rat]) -> Vec<BigInt> {
    let d = common_denominator(a);
    a.iter().map(|x| (x * Rat::from_integer(d.clone())).to_integer()).collect()
}

/// The primitive integer vector on the ray through `a` (zero stays zero).
pub fn primitive(a: &[Rat]) -> QVec {
    let ints = clear_denominators(a);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return a.to_vec();
    }
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

pub fn primitive_int(a: &[Rat]) -> Vec<BigInt> {
    primitive(a).into_iter().map(|x| x.to_integer()).collect()
}

pub fn to_i64(r: &Rat) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::Invariant(format!("{r} is not an integer")));
    }
    r.to_integer().to_i64().ok_or(Error::Overflow)
}

pub fn to_i64_vec(a: &[Rat]) -> Result<Vec<i64>> {
    a.iter().map(to_i64).collect()
}

pub fn from_i64_vec(a: &[i64]) -> QVec {
    qvec(a)
}

pub fn from_bigints(a: &[BigInt]) -> QVec {
    a.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Maximum of `|x_i|` over an integer vector.
pub fn linf(a: &[i64]) -> i64 {
    a.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// All integer vectors of length `dim` with entries in `[-bound, bound]`, in lexicographic order.
pub fn int_grid(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-bound; dim];
    if dim == 0 {
        return vec![vec![]];
    }
    loop {
        out.push(cur.clone());
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -bound;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7/12", "1/2"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(fmt_rat(&parse_rat("4/8").unwrap()), "1/2");
        assert_eq!(fmt_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn fractional_part_rounds_up() {
        assert_eq!(frac_up(&rat(1, 2)), rat(1, 2));
        assert_eq!(frac_up(&rat(-1, 3)), rat(1, 3));
        assert_eq!(frac_up(&int(2)), int(0));
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[rat(-1, 2), int(1)]), qvec(&[-1, 2]));
        assert_eq!(primitive(&qvec(&[4, -6])), qvec(&[2, -3]));
        assert_eq!(primitive(&qvec(&[0, 0])), qvec(&[0, 0]));
    }

    #[test]
    fn grid_size() {
        assert_eq!(int_grid(2, 1).len(), 9);
        assert_eq!(int_grid(1, 2), vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
    }
}
