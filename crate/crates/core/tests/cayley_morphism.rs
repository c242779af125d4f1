use minkext::exactcore::rat::{int, qvec, rat, QVec, Rat};
use minkext::extension::{initial_morphism, kodaira_dual_map, RelationOracle, UpperPair};
use minkext::minkowski::{cayley_diagram, psi_summand, Xi};
use minkext::polyhedron::Polyhedron;

fn pinkham() -> Polyhedron {
    Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap()
}

fn morphism_matrix(u: &UpperPair, xis: &[QVec], bound: u32) -> Vec<Vec<i64>> {
    let space = u.oracle().space();
    let summands: Vec<Polyhedron> =
        xis.iter().map(|x| psi_summand(space, &Xi::new(space, x.clone()).unwrap(), true).unwrap().polyhedron).collect();
    let target = cayley_diagram(u.oracle(), &summands).unwrap();
    let m = initial_morphism(u, &target, bound).unwrap();
    let d = space.polyhedron().dim();
    let forms: Vec<Vec<i64>> = (0..xis.len()).map(|i| (0..d + xis.len()).map(|j| i64::from(j == d + i)).collect()).collect();
    m.matrix(&forms)
}

#[test]
fn initial_morphism_matches_dual_map_on_pinkham() {
    let u = UpperPair::build(RelationOracle::new(&pinkham()).unwrap(), 4, 6).unwrap();
    let artin: Vec<QVec> = vec![vec![rat(1, 2), int(1), int(0)], vec![rat(1, 2), int(0), int(1)]];
    let qg: Vec<QVec> = vec![qvec(&[0, 1, 1]), qvec(&[1, 0, 0])];
    for xis in [artin, qg] {
        assert_eq!(morphism_matrix(&u, &xis, 4), kodaira_dual_map(&u, &xis).unwrap());
    }
}

#[test]
fn qg_cayley_generators() {
    let oracle = RelationOracle::new(&pinkham()).unwrap();
    let q0 = Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(-1, 2)]]).unwrap();
    let q1 = Polyhedron::polytope(1, &[vec![Rat::from_integer(0.into())], vec![int(1)]]).unwrap();
    let d = cayley_diagram(&oracle, &[q0, q1]).unwrap();
    let expected: Vec<Vec<i64>> =
        vec![vec![-2, -1, 2], vec![-1, 0, 1], vec![0, 0, 1], vec![0, 1, 0], vec![1, 1, 0], vec![2, 1, 0]];
    assert_eq!(d.upper().s().generators(), &expected[..]);
}
