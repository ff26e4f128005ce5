//! Seeded random instances for property tests and the CLI `--seed` flag.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::exactalg::{FieldSpec, Matrix};
use crate::forms::{validate_arrangement, Arrangement, FormList, LinearForm};
use crate::gsc::is_c_general_position;

pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_row<R: Rng>(rng: &mut R, k: usize, range: i64) -> Vec<i64> {
    loop {
        let row: Vec<i64> = (0..k).map(|_| rng.gen_range(-range..=range)).collect();
        if row.iter().any(|&c| c != 0) {
            return row;
        }
    }
}

/// An essential arrangement with `2 ≤ k ≤ max_k`, `2 ≤ m ≤ max_m` and
/// components of codimension between 1 and `k - 1`.
pub fn random_arrangement<R: Rng>(rng: &mut R, max_k: usize, max_m: usize) -> Arrangement {
    let q = FieldSpec::Rational;
    loop {
        let k = rng.gen_range(2..=max_k.max(2));
        let m = rng.gen_range(2..=max_m.max(2));
        let gens: Vec<Matrix> = (0..m)
            .map(|_| {
                let c = rng.gen_range(1..k);
                let rows: Vec<Vec<i64>> = (0..c).map(|_| random_row(rng, k, 2)).collect();
                let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                Matrix::from_ints(q, &refs).expect("consistent shape")
            })
            .collect();
        if let Some(arr) = validate_arrangement(q, k, &gens).arrangement {
            return arr;
        }
    }
}

/// An essential list of `n` forms in `k` variables, `k ≤ max_k`,
/// `k ≤ n ≤ max_n`.
pub fn random_lambda<R: Rng>(rng: &mut R, max_n: usize, max_k: usize) -> FormList {
    let q = FieldSpec::Rational;
    loop {
        let k = rng.gen_range(2..=max_k.max(2));
        let n = rng.gen_range(k..=max_n.max(k));
        let forms: Vec<LinearForm> = (0..n)
            .map(|_| LinearForm::from_ints(q, &random_row(rng, k, 2)).expect("nonzero row"))
            .collect();
        let lambda = FormList::new(q, k, forms).expect("consistent shape");
        if lambda.is_essential() {
            return lambda;
        }
    }
}

/// A list of `n` forms in `k` variables in which every `c` forms are
/// independent, with `1 ≤ c ≤ k`. Returns the list and `c`.
pub fn random_general_position<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_k: usize,
) -> (FormList, usize) {
    let q = FieldSpec::Rational;
    let budget = Budget::default();
    loop {
        let k = rng.gen_range(2..=max_k.max(2));
        let c = rng.gen_range(1..=k);
        let n = rng.gen_range(k..=max_n.max(k));
        let forms: Vec<LinearForm> = (0..n)
            .map(|_| LinearForm::from_ints(q, &random_row(rng, k, 4)).expect("nonzero row"))
            .collect();
        let lambda = FormList::new(q, k, forms).expect("consistent shape");
        let general = c <= n
            && lambda.is_essential()
            && is_c_general_position(&lambda, c, &budget).unwrap_or(false);
        if general {
            return (lambda, c);
        }
    }
}
