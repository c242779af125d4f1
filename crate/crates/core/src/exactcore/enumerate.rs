//! Lattice points of bounded rational polyhedra.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::dd::double_description;
use super::lattice::IntLattice;
use super::rat::{dot, QVec, Rat};
use crate::error::{Error, Result};

/// Lattice points of `{x : a·x ≥ b for all (a, b)}`, sorted lexicographically.
///
/// Only points of `lattice` are returned, so the region only needs to be bounded inside the
/// span of the lattice.
pub fn enumerate_lattice_points(hrep: &[(QVec, Rat)], lattice: &IntLattice) -> Result<Vec<QVec>> {
    let p = lattice.rank();
    if p == 0 {
        let origin = vec![Rat::zero(); lattice.ambient_dim()];
        let inside = hrep.iter().all(|(a, b)| dot(a, &origin) >= *b);
        return Ok(if inside { vec![origin] } else { vec![] });
    }
    // Constraints in lattice coordinates, homogenized with a last coordinate h ≥ 0.
    let mut ineqs: Vec<QVec> = hrep
        .iter()
        .map(|(a, b)| {
            let mut row: QVec = lattice.basis().iter().map(|bi| dot(a, bi)).collect();
            row.push(-b.clone());
            row
        })
        .collect();
    let mut h = vec![Rat::zero(); p + 1];
    h[p] = Rat::from_integer(1.into());
    ineqs.push(h);
    let gens = double_description(p + 1, &ineqs, &[]);
    let vertices: Vec<QVec> =
        gens.rays.iter().filter(|r| r[p].is_positive()).map(|r| r[..p].iter().map(|x| x / &r[p]).collect()).collect();
    if vertices.is_empty() {
        return Ok(vec![]);
    }
    if !gens.lineality.is_empty() || gens.rays.iter().any(|r| r[p].is_zero()) {
        return Err(Error::UnboundedRegion);
    }
    let mut lo = Vec::with_capacity(p);
    let mut hi = Vec::with_capacity(p);
    for i in 0..p {
        let min = vertices.iter().map(|v| &v[i]).min().expect("nonempty");
        let max = vertices.iter().map(|v| &v[i]).max().expect("nonempty");
        lo.push(min.ceil().to_integer());
        hi.push(max.floor().to_integer());
    }
    let mut out = Vec::new();
    let mut cur: Vec<BigInt> = lo.clone();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(out);
    }
    let size: f64 = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1u32).to_f64().unwrap_or(f64::MAX)).product();
    if size > 5e7 {
        return Err(Error::Invariant(format!("bounding box too large ({size:.0} points)")));
    }
    loop {
        let coords: QVec = cur.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let x = lattice.point(&coords);
        if hrep.iter().all(|(a, b)| dot(a, &x) >= *b) {
            out.push(x);
        }
        let mut i = p;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                cur[i + 1..p].clone_from_slice(&lo[i + 1..p]);
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{int, qvec, rat};

    #[test]
    fn square_has_nine_points() {
        let hrep = vec![(qvec(&[1, 0]), int(0)), (qvec(&[0, 1]), int(0)), (qvec(&[-1, 0]), int(-2)), (qvec(&[0, -1]), int(-2))];
        let pts = enumerate_lattice_points(&hrep, &IntLattice::standard(2)).unwrap();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], qvec(&[0, 0]));
        assert_eq!(pts[8], qvec(&[2, 2]));
    }

    #[test]
    fn half_integral_segment() {
        let hrep = vec![(qvec(&[1]), rat(-1, 2)), (qvec(&[-1]), rat(-1, 2))];
        let pts = enumerate_lattice_points(&hrep, &IntLattice::standard(1)).unwrap();
        assert_eq!(pts, vec![qvec(&[0])]);
    }

    #[test]
    fn unbounded_region_is_rejected() {
        let hrep = vec![(qvec(&[1, 0]), int(0))];
        assert_eq!(enumerate_lattice_points(&hrep, &IntLattice::standard(2)), Err(Error::UnboundedRegion));
    }

    #[test]
    fn empty_region() {
        let hrep = vec![(qvec(&[1]), int(1)), (qvec(&[-1]), int(0))];
        assert!(enumerate_lattice_points(&hrep, &IntLattice::standard(1)).unwrap().is_empty());
    }
}
