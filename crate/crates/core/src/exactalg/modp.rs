//! Reduction of rational data modulo a prime and brute-force scans of
//! projective space over `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::subsets::{binomial, Combinations};

use super::{FieldSpec, Matrix, Scalar};

/// Primes tried in order when a computation needs a good reduction.
pub const FALLBACK_PRIMES: [u32; 12] = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157];

/// The primitive integer vector proportional to a rational vector, with its
/// first nonzero entry positive.
pub fn primitive_integer(coeffs: &[Scalar]) -> Option<Vec<BigInt>> {
    let qs: Vec<_> = coeffs
        .iter()
        .map(|s| s.as_rational())
        .collect::<Option<_>>()?;
    let lcm = qs.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = qs.iter().map(|q| (q.numer() * &lcm) / q.denom()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return Some(ints);
    }
    let lead_negative = ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    for v in ints.iter_mut() {
        *v = &*v / &g;
        if lead_negative {
            *v = -&*v;
        }
    }
    Some(ints)
}

/// Reduces a vector of scalars to residues modulo `p`. Rational vectors are
/// first scaled to primitive integer vectors, so a nonzero input never
/// reduces to zero.
pub fn reduce_vector(coeffs: &[Scalar], p: u32) -> Result<Vec<u32>> {
    let Some(first) = coeffs.first() else {
        return Ok(Vec::new());
    };
    match first.field() {
        FieldSpec::Rational => {
            let ints = primitive_integer(coeffs).ok_or(Error::FieldMismatch(
                FieldSpec::Rational,
                FieldSpec::Prime(p),
            ))?;
            let pb = BigInt::from(p);
            Ok(ints
                .iter()
                .map(|v| v.mod_floor(&pb).to_u32().expect("residue fits"))
                .collect())
        }
        FieldSpec::Prime(q) if q == p => coeffs
            .iter()
            .map(|s| match s {
                Scalar::Residue { value, modulus } if *modulus == p => Ok(*value),
                other => Err(Error::FieldMismatch(FieldSpec::Prime(p), other.field())),
            })
            .collect(),
        other => Err(Error::FieldMismatch(other, FieldSpec::Prime(p))),
    }
}

pub fn dot_mod(a: &[u32], b: &[u32], p: u32) -> u32 {
    let p = u64::from(p);
    (a.iter().zip(b).fold(0u64, |acc, (&x, &y)| {
        (acc + u64::from(x) * u64::from(y)) % p
    })) as u32
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let mut e = p - 2;
    let p64 = u64::from(p);
    let mut b = u64::from(a) % p64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        e >>= 1;
    }
    acc as u32
}

/// Rank of a list of residue vectors.
pub fn rank_mod(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| u64::from(v)).collect())
        .collect();
    let p = u64::from(p);
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = u64::from(inv_mod(m[rank][c] as u32, p as u32));
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for j in c..cols {
                    row[j] = (row[j] + p - f * pivot[j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of points of `P^{k-1}(F_p)`.
pub fn projective_count(p: u32, k: usize) -> u128 {
    let p = u128::from(p);
    (0..k).map(|i| p.pow(i as u32)).sum()
}

/// The `index`-th point of `P^{k-1}(F_p)` in the canonical enumeration:
/// representatives have their first nonzero coordinate equal to 1, ordered by
/// the position of that coordinate and then lexicographically.
pub fn projective_point(p: u32, k: usize, mut index: u128) -> Vec<u32> {
    let p128 = u128::from(p);
    for lead in 0..k {
        let block = p128.pow((k - 1 - lead) as u32);
        if index < block {
            let mut v = vec![0u32; k];
            v[lead] = 1;
            for j in (lead + 1..k).rev() {
                v[j] = (index % p128) as u32;
                index /= p128;
            }
            return v;
        }
        index -= block;
    }
    panic!("projective point index out of range")
}

/// Scales a nonzero residue vector so its first nonzero entry is 1.
pub fn normalize(v: &[u32], p: u32) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = u64::from(inv_mod(lead, p));
    Some(
        v.iter()
            .map(|&x| (u64::from(x) * inv % u64::from(p)) as u32)
            .collect(),
    )
}

/// All points of `P^{k-1}(F_p)` satisfying `keep`, in canonical order.
pub fn scan_projective<F>(p: u32, k: usize, budget: &Budget, keep: F) -> Result<Vec<Vec<u32>>>
where
    F: Fn(&[u32]) -> bool + Sync,
{
    let total = projective_count(p, k);
    budget.check_scan(total)?;
    let total = total as u64;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|i| {
            let pt = projective_point(p, k, u128::from(i));
            keep(&pt).then_some(pt)
        })
        .collect())
}

/// Checks that reduction modulo `p` preserves the rank of every subset of
/// at most `k` rows, which makes the whole linear matroid of the rows
/// survive reduction. Returns the reduced rows.
pub fn good_reduction(rows: &Matrix, p: u32, budget: &Budget) -> Result<Vec<Vec<u32>>> {
    let reduced: Vec<Vec<u32>> = rows
        .row_iter()
        .map(|r| reduce_vector(r, p))
        .collect::<Result<_>>()?;
    if rows.field() == FieldSpec::Prime(p) {
        return Ok(reduced);
    }
    let n = rows.rows();
    let k = rows.cols().min(n);
    let required: u128 = (1..=k).map(|r| binomial(n, r)).sum();
    budget.check_subsets(required)?;
    for r in 1..=k {
        let bad = Combinations::new(n, r)
            .collect::<Vec<_>>()
            .into_par_iter()
            .any(|idx| {
                let exact = rows.select_rows(&idx).rank();
                // reduction can only lose rank, so independent sets are the ones to check
                exact == r && {
                    let sub: Vec<Vec<u32>> = idx.iter().map(|&i| reduced[i].clone()).collect();
                    rank_mod(&sub, p) != r
                }
            });
        if bad {
            return Err(Error::BadReduction(p));
        }
    }
    Ok(reduced)
}

/// First prime from `candidates` (then [`FALLBACK_PRIMES`]) with good
/// reduction for `rows`.
pub fn choose_good_prime(
    rows: &Matrix,
    candidates: &[u32],
    budget: &Budget,
) -> Result<(u32, Vec<Vec<u32>>)> {
    if let FieldSpec::Prime(p) = rows.field() {
        return Ok((p, good_reduction(rows, p, budget)?));
    }
    let mut last = None;
    for &p in candidates.iter().chain(FALLBACK_PRIMES.iter()) {
        match good_reduction(rows, p, budget) {
            Ok(r) => return Ok((p, r)),
            Err(Error::BadReduction(q)) => last = Some(q),
            Err(e) => return Err(e),
        }
    }
    Err(Error::BadReduction(last.unwrap_or(0)))
}
