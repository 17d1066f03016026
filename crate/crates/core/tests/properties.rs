use num_traits::Zero;
use proptest::prelude::*;

use qudit_slocc::matricize::{coefficient_matrix, front_permutation, permutation_set, reduced_density, Split};
use qudit_slocc::sampling::{random_ilo_with, random_state, rng_from_seed};
use qudit_slocc::slocc::{apply_local, LocalOperatorSet};
use qudit_slocc::{
    flat_index, gen_dicke3, multiindex_of, permute_qudits, rank_exact, signature, Dims, ExactMatrix, ExactScalar,
    QuditPermutation, QuditState, SitePermutation, SplitChoice,
};

fn dims_strategy(max_n: usize, max_d: usize) -> impl Strategy<Value = Dims> {
    prop::collection::vec(2..=max_d, 2..=max_n).prop_map(|v| Dims::new(v).unwrap())
}

fn images_strategy(n: usize) -> impl Strategy<Value = SitePermutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| SitePermutation::from_images(v).unwrap())
}

fn gaussian() -> impl Strategy<Value = ExactScalar> {
    (-4i64..=4, -2i64..=2).prop_map(|(re, im)| ExactScalar::gaussian(re, im))
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(gaussian(), r * c).prop_map(move |d| ExactMatrix::new(r, c, d).unwrap())
    })
}

fn low_rank_strategy(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max, 1..=3usize).prop_flat_map(|(r, c, k)| {
        (prop::collection::vec(gaussian(), r * k), prop::collection::vec(gaussian(), k * c)).prop_map(move |(u, v)| {
            ExactMatrix::new(r, k, u)
                .unwrap()
                .mul(&ExactMatrix::new(k, c, v).unwrap())
                .unwrap()
        })
    })
}

fn state_for(dims: &Dims, seed: u64) -> QuditState {
    random_state(&mut rng_from_seed(seed), dims, 3)
}

fn local_rank(state: &QuditState, row_sites: &[usize]) -> usize {
    let perm = front_permutation(state.n(), row_sites).unwrap();
    let moved = permute_qudits(state, &perm).unwrap();
    let split = Split::new(row_sites.len(), state.n()).unwrap();
    rank_exact(&coefficient_matrix(&moved, split, &QuditPermutation::identity()).unwrap().matrix).rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flat_index_round_trips(dims in dims_strategy(5, 4), frac in 0.0f64..1.0) {
        let i = ((dims.total() as f64) * frac) as usize;
        let digits = multiindex_of(i, &dims).unwrap();
        prop_assert_eq!(flat_index(&digits, &dims).unwrap(), i);
        prop_assert!(digits.iter().zip(dims.sizes()).all(|(x, d)| x < d));
    }

    #[test]
    fn composition_matches_sequential_application(
        (p, q) in (2usize..=5).prop_flat_map(|n| (images_strategy(n), images_strategy(n))),
        seed in any::<u64>(),
        d in 2usize..=3,
    ) {
        let n = p.n();
        let dims = Dims::new((0..n).map(|k| d + k % 2).collect()).unwrap();
        let s = state_for(&dims, seed);
        let sequential = permute_qudits(&permute_qudits(&s, &q).unwrap(), &p).unwrap();
        prop_assert_eq!(&sequential, &permute_qudits(&s, &p.compose(&q)).unwrap());
        prop_assert_eq!(p.compose(&p.inverse()), SitePermutation::identity(n));
        let back = permute_qudits(&permute_qudits(&s, &p).unwrap(), &p.inverse()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn rank_ignores_transpose_and_adjoint(m in matrix_strategy(7)) {
        let r = rank_exact(&m).rank;
        prop_assert!(r <= m.rows().min(m.cols()));
        prop_assert_eq!(rank_exact(&m.transpose()).rank, r);
        prop_assert_eq!(rank_exact(&m.adjoint()).rank, r);
    }

    #[test]
    fn rank_ignores_row_swaps_and_nonzero_scaling(m in low_rank_strategy(7), a in 0usize..7, b in 0usize..7, k in gaussian()) {
        prop_assume!(!k.is_zero());
        let r = rank_exact(&m).rank;
        let mut swapped = m.clone();
        swapped.swap_rows(a % m.rows(), b % m.rows());
        prop_assert_eq!(rank_exact(&swapped).rank, r);
        let mut scaled = m.clone();
        scaled.scale_row(a % m.rows(), &k);
        prop_assert_eq!(rank_exact(&scaled).rank, r);
        let cols_swapped = ExactMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            let j = if j == a % m.cols() { b % m.cols() } else if j == b % m.cols() { a % m.cols() } else { j };
            m.get(i, j).clone()
        });
        prop_assert_eq!(rank_exact(&cols_swapped).rank, r);
    }

    #[test]
    fn product_rank_is_bounded(a in low_rank_strategy(6), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let b = ExactMatrix::from_fn(a.cols(), 4, |_, _| {
            ExactScalar::gaussian(rand::Rng::gen_range(&mut rng, -3..=3), 0)
        });
        let ab = a.mul(&b).unwrap();
        prop_assert!(rank_exact(&ab).rank <= rank_exact(&a).rank.min(rank_exact(&b).rank));
    }

    #[test]
    fn gram_matrix_keeps_rank(m in low_rank_strategy(6)) {
        let gram = m.mul(&m.adjoint()).unwrap();
        prop_assert!(gram.is_hermitian());
        prop_assert_eq!(rank_exact(&gram).rank, rank_exact(&m).rank);
    }

    #[test]
    fn in_block_relabelling_keeps_ranks(dims in dims_strategy(5, 3), seed in any::<u64>(), l_frac in 0.0f64..1.0) {
        let n = dims.n();
        let l = 1 + ((n - 1) as f64 * l_frac) as usize % (n - 1);
        let s = state_for(&dims, seed);
        // reverse the row block and the column block separately
        let mut images: Vec<usize> = (1..=l).rev().collect();
        images.extend((l + 1..=n).rev());
        let within = SitePermutation::from_images(images).unwrap();
        let moved = permute_qudits(&s, &within).unwrap();
        let split = Split::new(l, n).unwrap();
        let id = QuditPermutation::identity();
        let before = rank_exact(&coefficient_matrix(&s, split, &id).unwrap().matrix).rank;
        let after = rank_exact(&coefficient_matrix(&moved, split, &id).unwrap().matrix).rank;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn local_rank_equals_reduced_density_rank(dims in dims_strategy(4, 3), seed in any::<u64>()) {
        let s = state_for(&dims, seed);
        for site in 1..=dims.n() {
            let rho = reduced_density(&s, &[site]).unwrap();
            prop_assert!(rho.is_hermitian());
            prop_assert_eq!(rank_exact(&rho).rank, local_rank(&s, &[site]));
        }
    }

    #[test]
    fn invertible_operators_round_trip(dims in dims_strategy(4, 3), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let s = random_state(&mut rng, &dims, 3);
        let factors = dims.sizes().iter().map(|&d| random_ilo_with(&mut rng, d, 3).unwrap()).collect();
        let ops = LocalOperatorSet::new(&dims, factors).unwrap();
        prop_assert!(ops.is_invertible());
        let image = apply_local(&s, &ops).unwrap();
        let back = apply_local(&image, &ops.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, s.clone());
        let l = SplitChoice::Fixed(1);
        prop_assert_eq!(signature(&image, l).unwrap().ranks, signature(&s, l).unwrap().ranks);
    }

    #[test]
    fn product_states_have_unit_ranks(dims in dims_strategy(4, 3), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let factors: Vec<Vec<ExactScalar>> = dims
            .sizes()
            .iter()
            .map(|&d| {
                let mut v: Vec<ExactScalar> = (0..d).map(|_| ExactScalar::gaussian(rand::Rng::gen_range(&mut rng, -2..=2), 0)).collect();
                v[0] = ExactScalar::from_integer(1);
                v
            })
            .collect();
        let dense: Vec<ExactScalar> = (0..dims.total())
            .map(|i| {
                multiindex_of(i, &dims)
                    .unwrap()
                    .iter()
                    .enumerate()
                    .fold(ExactScalar::from_integer(1), |acc, (k, &x)| &acc * &factors[k][x])
            })
            .collect();
        let s = QuditState::from_dense(dims.clone(), dense).unwrap();
        let n = dims.n();
        for l in 1..n {
            let sig = signature(&s, SplitChoice::Fixed(l)).unwrap();
            prop_assert!(sig.is_all_ones(), "l={} {:?}", l, sig.ranks);
        }
    }

    #[test]
    fn dicke3_is_symmetric_under_level_swap(n in 3usize..=6, a in 0usize..=5, b in 0usize..=5) {
        prop_assume!(a + b <= n - 1);
        let l = SplitChoice::Fixed(n / 2);
        let s = signature(&gen_dicke3(n, a, b).unwrap(), l).unwrap();
        let t = signature(&gen_dicke3(n, b, a).unwrap(), l).unwrap();
        prop_assert_eq!(s.ranks, t.ranks);
    }
}

#[test]
fn unit_ranks_only_for_products() {
    // a rank-one vector at every split forces a product; two-term superpositions
    // differing at one site stay products, differing at two sites do not
    let dims = Dims::uniform(3, 2).unwrap();
    let product = QuditState::from_kets(dims.clone(), &["000", "001"]).unwrap();
    let entangled = QuditState::from_kets(dims, &["000", "011"]).unwrap();
    for l in 1..3 {
        assert!(signature(&product, SplitChoice::Fixed(l)).unwrap().is_all_ones());
    }
    let sigs: Vec<_> = (1..3).map(|l| signature(&entangled, SplitChoice::Fixed(l)).unwrap()).collect();
    assert!(sigs.iter().any(|s| !s.is_all_ones()));
}

#[test]
fn every_split_sigma_pair_is_covered() {
    let dims = Dims::uniform(5, 2).unwrap();
    let s = state_for(&dims, 4);
    for l in 1..5 {
        let split = Split::new(l, 5).unwrap();
        for sigma in &permutation_set(5, split) {
            let cm = coefficient_matrix(&s, split, sigma).unwrap();
            assert_eq!(cm.rows() * cm.cols(), 32);
        }
    }
}
