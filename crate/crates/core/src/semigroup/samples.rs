//! Families of extension diagrams used to exercise the co-Cartesian criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::affine::AffineSemigroup;
use super::diagram::ExtensionDiagram;
use super::pair::SemigroupPair;
use crate::error::Result;
use crate::exactcore::rat::from_i64_vec;
use crate::polyhedron::Cone;

fn eye(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// `0 ↪ ⟨2,3⟩` over `0 ↪ ℕ` via the identity: C2 holds, C1 fails.
pub fn numerical_gap_diagram() -> ExtensionDiagram {
    let upper = SemigroupPair::new(AffineSemigroup::zero(1), AffineSemigroup::new(1, &[vec![2], vec![3]]).unwrap()).unwrap();
    let lower = SemigroupPair::new(AffineSemigroup::zero(1), AffineSemigroup::new(1, &[vec![1]]).unwrap()).unwrap();
    ExtensionDiagram::new(upper, lower, vec![vec![1]]).unwrap()
}

/// `0 ↪ ℕ` over `ℕ·(1,1) ↪ ℕ²` via `t ↦ (t, t)`: C3 holds, C2 fails.
pub fn diagonal_diagram() -> ExtensionDiagram {
    let upper = SemigroupPair::new(AffineSemigroup::zero(1), AffineSemigroup::new(1, &[vec![1]]).unwrap()).unwrap();
    let lower = SemigroupPair::new(
        AffineSemigroup::new(2, &[vec![1, 1]]).unwrap(),
        AffineSemigroup::new(2, &[vec![1, 0], vec![0, 1]]).unwrap(),
    )
    .unwrap();
    ExtensionDiagram::new(upper, lower, vec![vec![1], vec![1]]).unwrap()
}

/// `S = cone{[-a,1],[b,1]} ∩ ℤ²` with the ray `T = ℕ·[c,1]`.
pub fn ray_pair(a: i64, b: i64, c: i64) -> Result<SemigroupPair> {
    let cone = Cone::from_generators(2, &[from_i64_vec(&[-a, 1]), from_i64_vec(&[b, 1])], &[]);
    let s = AffineSemigroup::saturated(&cone)?;
    SemigroupPair::new(AffineSemigroup::new(2, &[vec![c, 1]])?, s)
}

/// `(T × ℕᵏ, S × ℕᵏ)` over `(T, S)` via `(s, f) ↦ s + Σ fᵢ·mᵢ·τ` for the generator `τ` of a ray `T`.
pub fn product_extension(pair: &SemigroupPair, multiples: &[i64]) -> Result<ExtensionDiagram> {
    let n = pair.rank();
    let k = multiples.len();
    let tau = pair.t().generators()[0].clone();
    let lift = |g: &Vec<i64>| -> Vec<i64> { g.iter().cloned().chain(std::iter::repeat_n(0, k)).collect() };
    let extra: Vec<Vec<i64>> = (0..k).map(|i| (0..n + k).map(|j| i64::from(j == n + i)).collect()).collect();
    let mut t_gens: Vec<Vec<i64>> = pair.t().generators().iter().map(lift).collect();
    t_gens.extend(extra.iter().cloned());
    let mut s_gens: Vec<Vec<i64>> = pair.s().generators().iter().map(lift).collect();
    s_gens.extend(extra);
    let upper = SemigroupPair::new(AffineSemigroup::new(n + k, &t_gens)?, AffineSemigroup::new(n + k, &s_gens)?)?;
    let pi: Vec<Vec<i64>> =
        (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).chain(multiples.iter().map(|m| m * tau[r])).collect()).collect();
    ExtensionDiagram::new(upper, pair.clone(), pi)
}

/// `(ℕ·mτ, S)` over `(ℕ·τ, S)` via the identity: `π_T` is not onto.
pub fn thinned_ray(pair: &SemigroupPair, m: i64) -> Result<ExtensionDiagram> {
    let tau = &pair.t().generators()[0];
    let t = AffineSemigroup::new(pair.rank(), &[tau.iter().map(|x| x * m).collect()])?;
    let upper = SemigroupPair::new(t, pair.s().clone())?;
    ExtensionDiagram::new(upper, pair.clone(), eye(pair.rank()))
}

/// `(T, S')` over `(T, S)` via the identity, where `S'` drops one generator of `S` but keeps `T`.
pub fn dropped_generator(pair: &SemigroupPair, drop: usize) -> Result<ExtensionDiagram> {
    let tau = &pair.t().generators()[0];
    let mut gens: Vec<Vec<i64>> = pair.s().generators().to_vec();
    let i = drop % gens.len();
    if &gens[i] != tau {
        gens.remove(i);
    }
    if !gens.contains(tau) {
        gens.push(tau.clone());
    }
    let upper = SemigroupPair::new(pair.t().clone(), AffineSemigroup::new(pair.rank(), &gens)?)?;
    ExtensionDiagram::new(upper, pair.clone(), eye(pair.rank()))
}

/// `(T × 0, S × ℕ)` over `(T, S)` via `(s, f) ↦ s + f·g`: the new generator collides with `g`,
/// so C3 fails.
pub fn merged_generator(pair: &SemigroupPair, g: &[i64]) -> Result<ExtensionDiagram> {
    let n = pair.rank();
    let lift = |v: &Vec<i64>| -> Vec<i64> { v.iter().cloned().chain([0]).collect() };
    let t_gens: Vec<Vec<i64>> = pair.t().generators().iter().map(lift).collect();
    let mut s_gens: Vec<Vec<i64>> = pair.s().generators().iter().map(lift).collect();
    s_gens.push((0..=n).map(|j| i64::from(j == n)).collect());
    let upper = SemigroupPair::new(AffineSemigroup::new(n + 1, &t_gens)?, AffineSemigroup::new(n + 1, &s_gens)?)?;
    let pi = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).chain([g[r]]).collect()).collect();
    ExtensionDiagram::new(upper, pair.clone(), pi)
}

/// A random ray inside a random two-dimensional saturated cone.
fn sample_pair(rng: &mut ChaCha8Rng) -> SemigroupPair {
    let a = rng.gen_range(1..=3);
    let b = rng.gen_range(1..=3);
    let c = rng.gen_range(-a..=b);
    ray_pair(a, b, c).expect("ray pairs are valid")
}

/// `count` diagrams: the two counterexamples first, then seeded random instances cycling through
/// identities, product extensions, thinned rays, dropped generators and merged generators.
pub fn generated_diagrams(seed: u64, count: usize) -> Vec<(String, ExtensionDiagram)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        ("numerical gap 0-><2,3> over 0->N".to_string(), numerical_gap_diagram()),
        ("diagonal 0->N over N(1,1)->N^2".to_string(), diagonal_diagram()),
    ];
    let mut kind = 0;
    while out.len() < count {
        let pair = sample_pair(&mut rng);
        let tau = pair.t().generators()[0].clone();
        let entry = match kind % 5 {
            0 => Ok((format!("identity over ray {tau:?}"), ExtensionDiagram::identity(&pair))),
            1 => {
                let k = rng.gen_range(1..=2);
                let mult: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=2)).collect();
                product_extension(&pair, &mult).map(|d| (format!("product extension over ray {tau:?}, multiples {mult:?}"), d))
            }
            2 => {
                let m = rng.gen_range(2..=3);
                thinned_ray(&pair, m).map(|d| (format!("ray {tau:?} thinned by {m}"), d))
            }
            3 => {
                let i = rng.gen_range(0..pair.s().generators().len());
                dropped_generator(&pair, i).map(|d| (format!("ray {tau:?}, generator {i} dropped"), d))
            }
            _ => {
                let i = rng.gen_range(0..pair.s().generators().len());
                let g = pair.s().generators()[i].clone();
                merged_generator(&pair, &g).map(|d| (format!("ray {tau:?}, generator {g:?} merged"), d))
            }
        };
        kind += 1;
        if let Ok(e) = entry {
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::affine::apply;

    #[test]
    fn product_extension_maps_boundary_onto_boundary() {
        let pair = ray_pair(2, 2, 0).unwrap();
        let d = product_extension(&pair, &[1, 2]).unwrap();
        for b in d.upper().relative_boundary(3) {
            assert!(pair.is_boundary(&apply(d.pi(), &b)));
        }
    }
}
