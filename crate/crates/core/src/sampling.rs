//! Seeded random dims, states and local operators. Everything is driven by a
//! `ChaCha8Rng`, so a seed fully determines the output.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rank::determinant;
use crate::scalar::ExactScalar;
use crate::state::{Dims, QuditState};

/// Resampling cap for [`random_ilo`].
pub const MAX_ILO_ATTEMPTS: usize = 1000;

pub const DEFAULT_ENTRY_BOUND: i64 = 3;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_entry<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> ExactScalar {
    ExactScalar::gaussian(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| gaussian_entry(rng, bound))
}

/// `d x d` Gaussian-integer matrix with exactly nonzero determinant.
pub fn random_ilo_with<R: Rng + ?Sized>(rng: &mut R, d: usize, entry_bound: i64) -> Result<ExactMatrix> {
    check_args(d, entry_bound)?;
    for _ in 0..MAX_ILO_ATTEMPTS {
        let m = random_matrix(rng, d, d, entry_bound);
        if determinant(&m).is_some_and(|det| !num_traits::Zero::is_zero(&det)) {
            return Ok(m);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_ILO_ATTEMPTS,
    })
}

pub fn random_ilo(d: usize, seed: u64, entry_bound: i64) -> Result<ExactMatrix> {
    random_ilo_with(&mut rng_from_seed(seed), d, entry_bound)
}

/// With `force_singular`, a sum of `r < d` random outer products (so the
/// determinant is exactly zero); otherwise an unconstrained random matrix.
pub fn random_local_possibly_singular_with<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    entry_bound: i64,
    force_singular: bool,
) -> Result<ExactMatrix> {
    check_args(d, entry_bound)?;
    if !force_singular {
        return Ok(random_matrix(rng, d, d, entry_bound));
    }
    let r = rng.gen_range(1..d);
    let u = random_matrix(rng, d, r, entry_bound);
    let v = random_matrix(rng, r, d, entry_bound);
    u.mul(&v)
}

pub fn random_local_possibly_singular(d: usize, seed: u64, entry_bound: i64, force_singular: bool) -> Result<ExactMatrix> {
    random_local_possibly_singular_with(&mut rng_from_seed(seed), d, entry_bound, force_singular)
}

fn check_args(d: usize, entry_bound: i64) -> Result<()> {
    if d < 2 || entry_bound < 1 {
        return Err(Error::InvalidParameters(format!(
            "need d >= 2 and entry_bound >= 1, got d={d}, entry_bound={entry_bound}"
        )));
    }
    Ok(())
}

/// `n` uniform in `2..=max_n`, each `d_k` uniform in `2..=max_d`.
pub fn random_dims<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_d: usize) -> Result<Dims> {
    if max_n < 2 || max_d < 2 {
        return Err(Error::InvalidParameters(format!("need max_n, max_d >= 2, got {max_n}, {max_d}")));
    }
    let n = rng.gen_range(2..=max_n);
    Dims::new((0..n).map(|_| rng.gen_range(2..=max_d)).collect())
}

/// Random nonzero state with Gaussian-integer amplitudes. A quarter of the
/// draws are dense; the rest have between 1 and 8 terms, which keeps
/// low-rank states common.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dims: &Dims, entry_bound: i64) -> QuditState {
    let total = dims.total();
    loop {
        let amps: Vec<(usize, ExactScalar)> = if rng.gen_bool(0.25) {
            (0..total).map(|i| (i, gaussian_entry(rng, entry_bound))).collect()
        } else {
            let terms = rng.gen_range(1..=total.min(8));
            rand::seq::index::sample(rng, total, terms)
                .into_iter()
                .map(|i| (i, gaussian_entry(rng, entry_bound)))
                .collect()
        };
        if let Ok(s) = QuditState::from_flat(dims.clone(), amps) {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::rank_exact;
    use num_traits::Zero;

    #[test]
    fn ilo_is_invertible_and_reproducible() {
        for seed in 0..20 {
            let m = random_ilo(2, seed, 3).unwrap();
            assert!(!determinant(&m).unwrap().is_zero());
        }
        assert_eq!(random_ilo(3, 42, 3).unwrap(), random_ilo(3, 42, 3).unwrap());
        assert!(random_ilo(1, 0, 3).is_err());
        assert!(random_ilo(2, 0, 0).is_err());
    }

    #[test]
    fn forced_singular() {
        for seed in 0..20 {
            let m2 = random_local_possibly_singular(2, seed, 3, true).unwrap();
            assert!(determinant(&m2).unwrap().is_zero());
            let m4 = random_local_possibly_singular(4, seed, 3, true).unwrap();
            assert!(rank_exact(&m4).rank <= 3);
        }
        assert_eq!(
            random_local_possibly_singular(3, 9, 3, false).unwrap(),
            random_local_possibly_singular(3, 9, 3, false).unwrap()
        );
    }

    #[test]
    fn random_states_are_nonzero() {
        let mut rng = rng_from_seed(1);
        for _ in 0..50 {
            let dims = random_dims(&mut rng, 4, 3).unwrap();
            let s = random_state(&mut rng, &dims, 2);
            assert!(s.support_len() > 0);
            assert!(s.iter().all(|(_, a)| !a.is_zero()));
        }
    }
}
