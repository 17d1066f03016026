//! Slow, direct reference computations for cross-checking `qudit-slocc`.
//!
//! Every function here works from the textbook definition and shares no code
//! path with the library beyond the exact scalar type: digits are decoded
//! locally, ranks are taken modulo a prime, partial traces are summed pair by
//! pair.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use qudit_slocc::{ExactMatrix, ExactScalar, QuditState};

/// A prime `p ≡ 1 (mod 4)`, so `-1` has a square root mod `p` and Gaussian
/// rationals reduce to field elements.
pub const PRIME: u64 = 1_000_000_009;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Some `x` with `x^2 = -1 (mod p)`.
pub fn sqrt_minus_one(p: u64) -> u64 {
    assert_eq!(p % 4, 1, "need p = 1 mod 4");
    (2..p)
        .map(|g| pow_mod(g, (p - 1) / 4, p))
        .find(|&x| mul_mod(x, x, p) == p - 1)
        .expect("a quadratic non-residue exists")
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

/// Image of `re + i*im` in `F_p`; `None` when a denominator vanishes mod `p`.
pub fn scalar_mod(x: &ExactScalar, p: u64, i_mod: u64) -> Option<u64> {
    let part = |r: &num_bigint::BigInt, d: &num_bigint::BigInt| {
        let dm = bigint_mod(d, p);
        (dm != 0).then(|| mul_mod(bigint_mod(r, p), inv_mod(dm, p), p))
    };
    let re = part(x.re().numer(), x.re().denom())?;
    let im = part(x.im().numer(), x.im().denom())?;
    Some((re + mul_mod(im, i_mod, p)) % p)
}

/// Rank of the reduction of `m` modulo `p`: a lower bound on the exact rank,
/// equal to it unless `p` divides every maximal nonzero minor.
pub fn modular_rank(m: &ExactMatrix, p: u64) -> usize {
    let i_mod = sqrt_minus_one(p);
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| scalar_mod(m.get(r, c), p, i_mod).expect("denominator coprime to p"))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][c], p);
        for r in rank + 1..rows {
            if a[r][c] == 0 {
                continue;
            }
            let f = mul_mod(a[r][c], inv, p);
            for k in c..cols {
                let sub = mul_mod(f, a[rank][k], p);
                a[r][k] = (a[r][k] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Digits of a flat index, site 1 most significant.
pub fn digits_of(mut flat: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        out[k] = flat % sizes[k];
        flat /= sizes[k];
    }
    out
}

fn flat_of(digits: &[usize], sizes: &[usize]) -> usize {
    digits.iter().zip(sizes).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Coefficient matrix straight from the definition: after swapping each
/// pair in `transpositions` (1-based sites), the first `l` positions index rows.
pub fn naive_matricize(state: &QuditState, l: usize, transpositions: &[(usize, usize)]) -> ExactMatrix {
    let sizes = state.dims().sizes();
    let n = sizes.len();
    let mut at: Vec<usize> = (0..n).collect();
    for &(a, b) in transpositions {
        at.swap(a - 1, b - 1);
    }
    // position j holds site at[j]
    let new_sizes: Vec<usize> = at.iter().map(|&s| sizes[s]).collect();
    let rows: usize = new_sizes[..l].iter().product();
    let cols: usize = new_sizes[l..].iter().product();
    let mut data = vec![ExactScalar::zero(); rows * cols];
    for (flat, amp) in state.iter() {
        let d = digits_of(flat, sizes);
        let moved: Vec<usize> = at.iter().map(|&s| d[s]).collect();
        let r = flat_of(&moved[..l], &new_sizes[..l]);
        let c = flat_of(&moved[l..], &new_sizes[l..]);
        data[r * cols + c] = amp.clone();
    }
    ExactMatrix::new(rows, cols, data).expect("shape")
}

/// `(F_1 ⊗ ... ⊗ F_n) ψ` as a full sum: every output amplitude collects
/// `prod_k F_k[out_k][in_k] * ψ[in]` over the support.
pub fn naive_image(state: &QuditState, factors: &[ExactMatrix]) -> Vec<ExactScalar> {
    let sizes = state.dims().sizes();
    let total: usize = sizes.iter().product();
    let support: Vec<(Vec<usize>, &ExactScalar)> = state.iter().map(|(f, a)| (digits_of(f, sizes), a)).collect();
    (0..total)
        .map(|out| {
            let o = digits_of(out, sizes);
            let mut acc = ExactScalar::zero();
            for (i, a) in &support {
                let mut term = (*a).clone();
                for k in 0..sizes.len() {
                    term = &term * factors[k].get(o[k], i[k]);
                    if term.is_zero() {
                        break;
                    }
                }
                acc += &term;
            }
            acc
        })
        .collect()
}

/// Partial trace over every site not in `keep`, by summing
/// `ψ[x] conj(ψ[y])` over support pairs that agree off `keep`.
pub fn brute_partial_trace(state: &QuditState, keep: &[usize]) -> ExactMatrix {
    let sizes = state.dims().sizes();
    let keep_sizes: Vec<usize> = keep.iter().map(|&s| sizes[s - 1]).collect();
    let dim: usize = keep_sizes.iter().product();
    let split = |flat: usize| {
        let d = digits_of(flat, sizes);
        let kept: Vec<usize> = keep.iter().map(|&s| d[s - 1]).collect();
        let rest: Vec<usize> = (1..=sizes.len()).filter(|s| !keep.contains(s)).map(|s| d[s - 1]).collect();
        (flat_of(&kept, &keep_sizes), rest)
    };
    let terms: Vec<(usize, Vec<usize>, &ExactScalar)> = state
        .iter()
        .map(|(f, a)| {
            let (k, r) = split(f);
            (k, r, a)
        })
        .collect();
    let mut rho = vec![ExactScalar::zero(); dim * dim];
    for (a, ra, x) in &terms {
        for (b, rb, y) in &terms {
            if ra == rb {
                rho[a * dim + b] += &(*x * &y.conj());
            }
        }
    }
    ExactMatrix::new(dim, dim, rho).expect("shape")
}

/// `n! / prod(k_i!)` for `n = sum(k_i)`.
pub fn multinomial(occupations: &[usize]) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let n: usize = occupations.iter().sum();
    occupations.iter().fold(fact(n), |acc, &k| acc / fact(k))
}

/// Number of digit strings over `occupations.len()` levels with exactly
/// those occupation counts, by enumerating all `levels^n` strings.
pub fn count_arrangements(occupations: &[usize]) -> usize {
    let levels = occupations.len();
    let n: usize = occupations.iter().sum();
    let sizes = vec![levels; n];
    (0..levels.pow(n as u32))
        .filter(|&f| {
            let mut counts = vec![0; levels];
            for x in digits_of(f, &sizes) {
                counts[x] += 1;
            }
            counts == occupations
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use qudit_slocc::matricize::{coefficient_matrix, permutation_set, reduced_density, QuditPermutation, Split};
    use qudit_slocc::rank::rank_exact;
    use qudit_slocc::sampling::{random_ilo_with, random_local_possibly_singular_with, random_state, rng_from_seed};
    use qudit_slocc::slocc::{apply_local, theorem1_sides, LocalOperatorSet};
    use qudit_slocc::state::Dims;
    use qudit_slocc::table1::{table1_corrections, table1_split};
    use qudit_slocc::{dicke_state, gen_dicke3, gen_dicke4, signature, SplitChoice};
    use rand::Rng;

    fn small_dims<R: Rng>(rng: &mut R) -> Dims {
        let n = rng.gen_range(2..=4);
        Dims::new((0..n).map(|_| rng.gen_range(2..=3)).collect()).unwrap()
    }

    #[test]
    fn modular_arithmetic_basics() {
        let i = sqrt_minus_one(PRIME);
        assert_eq!(mul_mod(i, i, PRIME), PRIME - 1);
        assert_eq!(mul_mod(inv_mod(7, PRIME), 7, PRIME), 1);
        assert_eq!(scalar_mod(&ExactScalar::from_ratio(1, 2), PRIME, i), Some(inv_mod(2, PRIME)));
    }

    #[test]
    fn modular_rank_matches_exact_rank() {
        let mut rng = rng_from_seed(11);
        for _ in 0..60 {
            let (r, k, c) = (rng.gen_range(1..=7), rng.gen_range(1..=4), rng.gen_range(1..=7));
            let u = ExactMatrix::from_fn(r, k, |_, _| ExactScalar::gaussian(rng.gen_range(-4..=4), rng.gen_range(-2..=2)));
            let v = ExactMatrix::from_fn(k, c, |_, _| ExactScalar::gaussian(rng.gen_range(-4..=4), rng.gen_range(-2..=2)));
            let m = u.mul(&v).unwrap();
            assert_eq!(modular_rank(&m, PRIME), rank_exact(&m).rank, "{m}");
            assert!(rank_exact(&m).rank <= k);
        }
    }

    #[test]
    fn coefficient_matrix_matches_definition() {
        let mut rng = rng_from_seed(3);
        for _ in 0..40 {
            let dims = small_dims(&mut rng);
            let s = random_state(&mut rng, &dims, 3);
            let n = dims.n();
            for l in 1..n {
                let split = Split::new(l, n).unwrap();
                for sigma in &permutation_set(n, split) {
                    let cm = coefficient_matrix(&s, split, sigma).unwrap();
                    assert_eq!(cm.matrix, naive_matricize(&s, l, sigma.transpositions()), "l={l} σ={sigma}");
                }
            }
        }
    }

    #[test]
    fn local_image_and_transformation_law_match_naive_sum() {
        let mut rng = rng_from_seed(5);
        for trial in 0..40 {
            let dims = small_dims(&mut rng);
            let s = random_state(&mut rng, &dims, 3);
            let factors: Vec<ExactMatrix> = dims
                .sizes()
                .iter()
                .map(|&d| {
                    if trial % 2 == 0 {
                        random_ilo_with(&mut rng, d, 3).unwrap()
                    } else {
                        let singular = rng.gen_bool(0.5);
                        random_local_possibly_singular_with(&mut rng, d, 3, singular).unwrap()
                    }
                })
                .collect();
            let ops = LocalOperatorSet::new(&dims, factors.clone()).unwrap();
            let image = naive_image(&s, &factors);
            let all_zero = image.iter().all(|x| x.is_zero());
            match apply_local(&s, &ops) {
                Ok(img) => assert_eq!(img.to_dense(), image),
                Err(qudit_slocc::Error::ZeroState) => assert!(all_zero),
                Err(e) => panic!("{e}"),
            }
            let n = dims.n();
            for l in 1..n {
                let split = Split::new(l, n).unwrap();
                for sigma in &permutation_set(n, split) {
                    let (lhs, rhs) = theorem1_sides(&s, &ops, split, sigma).unwrap();
                    assert_eq!(lhs, rhs, "trial {trial} l={l} σ={sigma}");
                    if !all_zero {
                        let img = QuditState::from_dense(dims.clone(), image.clone()).unwrap();
                        assert_eq!(lhs, naive_matricize(&img, l, sigma.transpositions()));
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_density_is_partial_trace() {
        let mut rng = rng_from_seed(9);
        for _ in 0..40 {
            let dims = small_dims(&mut rng);
            let s = random_state(&mut rng, &dims, 3);
            let n = dims.n();
            for site in 1..=n {
                let rho = reduced_density(&s, &[site]).unwrap();
                assert_eq!(rho, brute_partial_trace(&s, &[site]));
                assert!(rho.is_hermitian());
            }
            if n >= 3 {
                let keep = [n, 1];
                assert_eq!(reduced_density(&s, &keep).unwrap(), brute_partial_trace(&s, &keep));
            }
        }
    }

    #[test]
    fn dicke_supports_have_multinomial_size() {
        assert_eq!(multinomial(&[3, 3, 3]), 1680);
        assert_eq!(multinomial(&[2, 2, 2, 2]), 2520);
        assert_eq!(gen_dicke3(9, 3, 3).unwrap().support_len(), 1680);
        assert_eq!(gen_dicke4(8, 2, 2, 2).unwrap().support_len(), 2520);
        for occ in [vec![2, 1, 1], vec![3, 0, 2], vec![1, 2, 1, 1], vec![4, 1]] {
            let s = dicke_state(&occ).unwrap();
            assert_eq!(s.support_len(), count_arrangements(&occ));
            assert_eq!(s.support_len() as u128, multinomial(&occ));
        }
    }

    #[test]
    fn corrected_table_rows_reproduce() {
        for (row, ranks, state) in table1_corrections().unwrap() {
            let sig = signature(&state, SplitChoice::Fixed(table1_split().get())).unwrap();
            assert_eq!(sig.ranks, ranks, "row {row}");
            let sigmas = permutation_set(4, table1_split());
            for (k, sigma) in sigmas.iter().enumerate() {
                let m = naive_matricize(&state, 2, sigma.transpositions());
                assert_eq!(modular_rank(&m, PRIME), ranks[k], "row {row} σ={sigma}");
            }
        }
        assert!(QuditPermutation::identity().is_identity());
    }
}
