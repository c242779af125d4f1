use proptest::prelude::*;

use minkext::etaspace::EtaSpace;
use minkext::exactcore::rat::{add, ceil_int, dot, qvec, rat, scale, QVec, Rat};
use minkext::minkowski::{kodaira_spencer_of, lattice_friendly_set, psi_summand, Xi};
use minkext::polyhedron::Polyhedron;
use minkext::semigroup::samples::ray_pair;
use minkext::semigroup::{AffineSemigroup, QuotientGroup, SemigroupPair};

fn endpoint() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

/// A rational interval of positive length.
fn interval() -> impl Strategy<Value = Polyhedron> {
    (endpoint(), endpoint())
        .prop_filter("positive length", |(a, b)| a != b)
        .prop_map(|(a, b)| Polyhedron::polytope(1, &[vec![a], vec![b]]).unwrap())
}

/// An interval with endpoints `n/d`, `|n| ≤ 4`, `d ≤ 4`, keeping `B` small.
fn short_interval() -> impl Strategy<Value = Polyhedron> {
    let end = || (-4i64..=4, 1i64..=4).prop_map(|(n, d)| rat(n, d));
    (end(), end())
        .prop_filter("positive length", |(a, b)| a != b)
        .prop_map(|(a, b)| Polyhedron::polytope(1, &[vec![a], vec![b]]).unwrap())
}

fn hexagon() -> Polyhedron {
    let pts = [[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]];
    Polyhedron::polytope(2, &pts.iter().map(|p| qvec(p)).collect::<Vec<_>>()).unwrap()
}

/// A nonnegative integer combination of the rays of `T₊(P)`.
fn t_plus_sample(sp: &EtaSpace, weights: &[u8]) -> QVec {
    let n = sp.tspace().ambient();
    sp.tspace()
        .t_plus()
        .rays()
        .iter()
        .zip(weights.iter().cycle())
        .fold(vec![rat(0, 1); n], |acc, (r, &w)| add(&acc, &scale(&rat(w as i64, 1), r)))
}

fn summand(sp: &EtaSpace, x: &[Rat]) -> Polyhedron {
    psi_summand(sp, &Xi::new(sp, x.to_vec()).unwrap(), true).unwrap().polyhedron
}

fn eta_z(p: &Polyhedron, c: i64) -> num_bigint::BigInt {
    let c = qvec(&[c]);
    ceil_int(&-p.vertices().iter().map(|v| dot(v, &c)).min().unwrap())
}

fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Writes `x = Σ kᵢ gᵢ` for linearly independent `gᵢ` in the plane.
fn coefficients(x: &[i64], gens: &[Vec<i64>]) -> Option<Vec<i64>> {
    match gens {
        [g] => {
            let k = if g[0] != 0 { x[0] / g[0] } else { x[1] / g[1] };
            (g[0] * k == x[0] && g[1] * k == x[1]).then(|| vec![k])
        }
        [g, h] => {
            let det = cross(g, h);
            let (a, b) = (cross(x, h), cross(g, x));
            (a % det == 0 && b % det == 0).then(|| vec![a / det, b / det])
        }
        _ => None,
    }
}

fn combination(gens: &[Vec<i64>], k: &[i64]) -> Vec<i64> {
    (0..2).map(|c| gens.iter().zip(k).map(|(g, &k)| g[c] * k).sum()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn psi_is_additive_on_intervals(p in interval(), a in prop::collection::vec(0u8..3, 4), b in prop::collection::vec(0u8..3, 4)) {
        let sp = EtaSpace::new(&p).unwrap();
        let (x, y) = (t_plus_sample(&sp, &a), t_plus_sample(&sp, &b));
        let sum = summand(&sp, &x).minkowski_sum(&summand(&sp, &y)).unwrap();
        prop_assert_eq!(sum, summand(&sp, &add(&x, &y)));
    }

    #[test]
    fn psi_is_additive_on_the_hexagon(a in prop::collection::vec(0u8..3, 5), b in prop::collection::vec(0u8..3, 5)) {
        let sp = EtaSpace::new(&hexagon()).unwrap();
        let (x, y) = (t_plus_sample(&sp, &a), t_plus_sample(&sp, &b));
        let sum = summand(&sp, &x).minkowski_sum(&summand(&sp, &y)).unwrap();
        prop_assert_eq!(sum, summand(&sp, &add(&x, &y)));
    }

    #[test]
    fn independence_notions_agree(p in interval(), c1 in -6i64..=6, c2 in -6i64..=6) {
        let sp = EtaSpace::new(&p).unwrap();
        let q = sp.polyhedron();
        let scalar = eta_z(q, c1) + eta_z(q, c2) - eta_z(q, c1 + c2);
        let f = |c: i64| sp.eta_tilde_z(&qvec(&[c])).unwrap();
        let lifted = &(&f(c1) + &f(c2)) - &f(c1 + c2);
        prop_assert_eq!(scalar == 0.into(), lifted.is_zero());
    }

    #[test]
    fn kappa_inverts_psi_on_b(p in short_interval()) {
        let sp = EtaSpace::new(&p).unwrap();
        for x in lattice_friendly_set(&sp).unwrap() {
            let k = kodaira_spencer_of(sp.polyhedron(), &summand(&sp, &x)).unwrap();
            prop_assert_eq!(k.raw(), x);
        }
    }

    #[test]
    fn quotient_is_injective_on_boundary_iff_free(
        a in 1i64..=3,
        b in 1i64..=3,
        picks in prop::collection::vec(0usize..16, 1..=2),
    ) {
        let s = ray_pair(a, b, 0).unwrap().s().clone();
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for i in picks {
            let g = s.generators()[i % s.generators().len()].clone();
            if gens.iter().all(|h| cross(h, &g) != 0) {
                gens.push(g);
            }
        }
        let pair = SemigroupPair::new(AffineSemigroup::new(2, &gens).unwrap(), s).unwrap();
        let q = QuotientGroup::new(&pair);
        for c in pair.collisions(4) {
            prop_assert!(q.same_class(&c.decompositions[0].0, &c.decompositions[1].0));
        }
        let boundary = pair.relative_boundary(4);
        for (i, x) in boundary.iter().enumerate() {
            for y in &boundary[i + 1..] {
                if !q.same_class(x, y) {
                    continue;
                }
                let diff: Vec<i64> = x.iter().zip(y).map(|(u, v)| u - v).collect();
                let k = coefficients(&diff, &gens).unwrap();
                let t_x = combination(&gens, &k.iter().map(|&v| (-v).max(0)).collect::<Vec<_>>());
                let element: Vec<i64> = x.iter().zip(&t_x).map(|(u, v)| u + v).collect();
                prop_assert!(pair.decompositions(&element).len() >= 2);
            }
        }
    }
}
