//! Seeded random objects.
//!
//! The generator is ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64(seed)` and switched to stream `trial` for trial number
//! `trial`. Seed and trial index therefore determine every sampled object.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grassmann::Subspace;
use crate::matlin::Matrix;
use crate::relations::LinearRelation;
use crate::scalars::{Field, FieldSpec};

pub fn rng_for(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn random_matrix<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    field: &FieldSpec,
) -> Matrix<F> {
    Matrix::from_fn(rows, cols, field, |_, _| F::random(rng, field))
}

pub fn random_invertible<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: &FieldSpec,
) -> Matrix<F> {
    loop {
        let m = random_matrix(rng, n, n, field);
        if m.rank() == n {
            return m;
        }
    }
}

/// Subspace of exact dimension `dim`.
pub fn random_subspace_of_dim<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    field: &FieldSpec,
    ambient: usize,
    dim: usize,
) -> Subspace<F> {
    loop {
        let m = random_matrix(rng, dim, ambient, field);
        let s = Subspace::span(ambient, &m).expect("width");
        if s.dim() == dim {
            return s;
        }
    }
}

/// Dimension uniform in `0..=ambient`, then a random subspace of it.
pub fn random_subspace<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    field: &FieldSpec,
    ambient: usize,
) -> Subspace<F> {
    let dim = rng.gen_range(0..=ambient);
    random_subspace_of_dim(rng, field, ambient, dim)
}

/// `k` subspaces; each entry after the first repeats, meets or joins earlier
/// entries with probability 1/3, so degenerate coincidences are common.
pub fn random_tuple<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    field: &FieldSpec,
    ambient: usize,
    k: usize,
) -> Vec<Subspace<F>> {
    let mut out: Vec<Subspace<F>> = Vec::with_capacity(k);
    for _ in 0..k {
        let s = if !out.is_empty() && rng.gen_ratio(1, 3) {
            let i = rng.gen_range(0..out.len());
            let j = rng.gen_range(0..out.len());
            match rng.gen_range(0..3) {
                0 => out[i].clone(),
                1 => out[i].meet_unchecked(&out[j]),
                _ => out[i].join_unchecked(&out[j]),
            }
        } else {
            random_subspace(rng, field, ambient)
        };
        out.push(s);
    }
    out
}

/// Subspace transversal to every member of `avoid` (same dimension as the
/// complement of the first), or `None` after `attempts` rejections.
pub fn random_transversal<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    field: &FieldSpec,
    avoid: &[&Subspace<F>],
    attempts: usize,
) -> Option<Subspace<F>> {
    let first = avoid.first()?;
    let n = first.ambient();
    let dim = n - first.dim();
    (0..attempts).find_map(|_| {
        let s = random_subspace_of_dim(rng, field, n, dim);
        avoid.iter().all(|a| s.is_transversal(a)).then_some(s)
    })
}

/// Arbitrary linear relation: a random subspace of `W ⊕ W`.
pub fn random_relation<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    field: &FieldSpec,
    half: usize,
) -> LinearRelation<F> {
    LinearRelation::from_subspace(random_subspace(rng, field, 2 * half)).expect("even ambient")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fp;

    #[test]
    fn same_seed_and_trial_repeat() {
        let f5 = FieldSpec::prime(5).unwrap();
        let a: Vec<Subspace<Fp>> = random_tuple(&mut rng_for(9, 3), &f5, 4, 5);
        let b: Vec<Subspace<Fp>> = random_tuple(&mut rng_for(9, 3), &f5, 4, 5);
        let c: Vec<Subspace<Fp>> = random_tuple(&mut rng_for(9, 4), &f5, 4, 5);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn transversal_sampler() {
        let f3 = FieldSpec::prime(3).unwrap();
        let mut rng = rng_for(1, 0);
        let a: Subspace<Fp> = random_subspace_of_dim(&mut rng, &f3, 4, 2);
        let b: Subspace<Fp> = random_subspace_of_dim(&mut rng, &f3, 4, 2);
        let x = random_transversal(&mut rng, &f3, &[&a, &b], 200).unwrap();
        assert!(x.is_transversal(&a) && x.is_transversal(&b));
    }
}
