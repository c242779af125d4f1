//! Elements of `T*(P) = ℝ^(r+m) / T(P)^⊥`.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::exactcore::rat::{add, fmt_rat, is_integral_vec, neg, scale, sub, QVec, Rat};

/// A linear form on `T(P)`, identified by its values on the canonical basis of `T_ℤ(P)`.
///
/// The optional raw lift is a representative in `ℝ^(r+m)`; lifts differing by `T(P)^⊥` give the
/// same functional, so equality, ordering and hashing only look at the canonical coordinates.
#[derive(Debug, Clone)]
pub struct Functional {
    coords: QVec,
    raw: Option<QVec>,
}

impl Functional {
    pub fn new(coords: QVec, raw: Option<QVec>) -> Self {
        Functional { coords, raw }
    }

    pub fn zero(rank: usize) -> Self {
        Functional { coords: vec![Rat::from_integer(0.into()); rank], raw: None }
    }

    /// Values on the basis of `T_ℤ(P)`.
    pub fn coords(&self) -> &QVec {
        &self.coords
    }

    pub fn raw(&self) -> Option<&QVec> {
        self.raw.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| *x == Rat::from_integer(0.into()))
    }

    /// Membership in the dual lattice `T*_ℤ(P)`.
    pub fn is_integral(&self) -> bool {
        is_integral_vec(&self.coords)
    }

    pub fn scale(&self, s: &Rat) -> Functional {
        Functional { coords: scale(s, &self.coords), raw: self.raw.as_ref().map(|r| scale(s, r)) }
    }

    pub fn scale_int(&self, s: i64) -> Functional {
        self.scale(&Rat::from_integer(s.into()))
    }

    /// Canonical coordinates formatted as `"p/q"` strings.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rat).collect()
    }

    pub fn to_json(&self) -> FunctionalJson {
        FunctionalJson { basis_values: self.coord_strings(), raw: self.raw.as_ref().map(|r| r.iter().map(fmt_rat).collect()) }
    }
}

/// JSON form `{"basis_values": [...], "raw": [...]}`.
#[derive(Debug, Clone, Serialize)]
pub struct FunctionalJson {
    pub basis_values: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw: Option<Vec<String>>,
}

impl PartialEq for Functional {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for Functional {}

impl PartialOrd for Functional {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Functional {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl Hash for Functional {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

fn zip_raw(a: &Option<QVec>, b: &Option<QVec>, f: impl Fn(&[Rat], &[Rat]) -> QVec) -> Option<QVec> {
    match (a, b) {
        (Some(x), Some(y)) => Some(f(x, y)),
        _ => None,
    }
}

impl Add for &Functional {
    type Output = Functional;
    fn add(self, o: &Functional) -> Functional {
        Functional { coords: add(&self.coords, &o.coords), raw: zip_raw(&self.raw, &o.raw, add) }
    }
}

impl Sub for &Functional {
    type Output = Functional;
    fn sub(self, o: &Functional) -> Functional {
        Functional { coords: sub(&self.coords, &o.coords), raw: zip_raw(&self.raw, &o.raw, sub) }
    }
}

impl Neg for &Functional {
    type Output = Functional;
    fn neg(self) -> Functional {
        Functional { coords: neg(&self.coords), raw: self.raw.as_ref().map(|r| neg(r)) }
    }
}

impl Add for Functional {
    type Output = Functional;
    fn add(self, o: Functional) -> Functional {
        &self + &o
    }
}

impl Sub for Functional {
    type Output = Functional;
    fn sub(self, o: Functional) -> Functional {
        &self - &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{qvec, rat};

    #[test]
    fn equality_ignores_raw_lift() {
        let a = Functional::new(qvec(&[1, 2]), Some(qvec(&[1, 0, 0])));
        let b = Functional::new(qvec(&[1, 2]), Some(qvec(&[0, 1, 0])));
        assert_eq!(a, b);
        let c = &a + &b;
        assert_eq!(c.coords(), &qvec(&[2, 4]));
        assert_eq!(c.raw(), Some(&qvec(&[1, 1, 0])));
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn integrality() {
        assert!(Functional::new(qvec(&[1, -3]), None).is_integral());
        assert!(!Functional::new(vec![rat(1, 2)], None).is_integral());
        assert!(Functional::zero(3).is_integral());
    }
}
