//! Radical decomposition of `I_a(Λ)`.
//!
//! The radical of the ideal of all `a`-fold products of `Λ` is the
//! intersection of the spans of all `(n-a+1)`-subsets of `Λ`. The minimal
//! primes are therefore the inclusion-minimal such spans, found here by full
//! subset enumeration.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactalg::modp::{dot_mod, reduce_vector, scan_projective};
use crate::forms::{Arrangement, FormList, LinearSpan};
use crate::subsets::{binomial, chunked, Combinations};

const CHUNK: usize = 4096;

/// A generalized star configuration: the list `Λ` and the product size `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gsc {
    lambda: FormList,
    a: usize,
}

impl Gsc {
    pub fn new(lambda: FormList, a: usize) -> Result<Self> {
        if a == 0 || a > lambda.len() {
            return Err(Error::SizeOutOfRange { a, n: lambda.len() });
        }
        if !lambda.is_essential() {
            return Err(Error::Invalid(
                "the forms do not generate the irrelevant ideal".into(),
            ));
        }
        Ok(Gsc { lambda, a })
    }

    pub fn lambda(&self) -> &FormList {
        &self.lambda
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    /// `n - a + 1`, the number of forms cutting out each component.
    pub fn witness_size(&self) -> usize {
        self.n() - self.a + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPrime {
    pub span: LinearSpan,
    /// Lexicographically first `(n-a+1)`-subset (zero-based) whose span this is.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPrimeSet {
    /// Sorted by codimension, then by canonical basis.
    pub primes: Vec<MinimalPrime>,
    pub height: usize,
    /// Number of distinct spans seen before inclusion filtering.
    pub distinct_spans: usize,
}

impl MinimalPrimeSet {
    pub fn spans(&self) -> Vec<LinearSpan> {
        self.primes.iter().map(|p| p.span.clone()).collect()
    }

    /// True when the only minimal prime is the irrelevant ideal.
    pub fn is_empty_variety(&self) -> bool {
        self.primes.len() == 1 && self.primes[0].span.codim() == self.primes[0].span.ambient()
    }
}

fn distinct_spans(g: &Gsc, budget: &Budget) -> Result<BTreeMap<LinearSpan, Vec<usize>>> {
    let n = g.n();
    let r = g.witness_size();
    budget.check_subsets(binomial(n, r))?;
    let m = g.lambda.matrix();
    let mut seen: BTreeMap<LinearSpan, Vec<usize>> = BTreeMap::new();
    for batch in chunked(n, r, CHUNK) {
        let spans: Vec<(LinearSpan, Vec<usize>)> = batch
            .into_par_iter()
            .map(|idx| (LinearSpan::from_matrix(&m.select_rows(&idx)), idx))
            .collect();
        for (s, idx) in spans {
            // batches arrive in lexicographic order, so the first witness is the smallest
            seen.entry(s).or_insert(idx);
        }
    }
    Ok(seen)
}

pub fn minimal_primes(g: &Gsc, budget: &Budget) -> Result<MinimalPrimeSet> {
    let seen = distinct_spans(g, budget)?;
    let height = seen.keys().map(LinearSpan::codim).min().unwrap_or(0);
    let distinct = seen.len();
    let mut by_codim: Vec<(LinearSpan, Vec<usize>)> = seen.into_iter().collect();
    by_codim.sort_by(|a, b| a.0.cmp(&b.0));
    let mut kept: Vec<MinimalPrime> = Vec::new();
    for (span, witness) in by_codim {
        // kept spans all have codim <= this one; a distinct one inside it makes it non-minimal
        let redundant = kept
            .iter()
            .any(|k| k.span.codim() < span.codim() && span.contains(&k.span).expect("same ring"));
        if !redundant {
            kept.push(MinimalPrime { span, witness });
        }
    }
    Ok(MinimalPrimeSet {
        primes: kept,
        height,
        distinct_spans: distinct,
    })
}

/// Height of `I_a(Λ)`: the least rank of an `(n-a+1)`-subset of `Λ`.
pub fn height(g: &Gsc, budget: &Budget) -> Result<usize> {
    let n = g.n();
    let r = g.witness_size();
    budget.check_subsets(binomial(n, r))?;
    let m = g.lambda.matrix();
    let mut best = usize::MAX;
    for batch in chunked(n, r, CHUNK) {
        let low = batch
            .into_par_iter()
            .map(|idx| m.select_rows(&idx).rank())
            .min()
            .unwrap_or(usize::MAX);
        best = best.min(low);
    }
    Ok(best)
}

/// Set comparison of the minimal primes against an arrangement's components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    pub equal: bool,
    /// Components of the arrangement that are not minimal primes.
    pub missing: Vec<LinearSpan>,
    /// Minimal primes that are not components of the arrangement.
    pub extra: Vec<LinearSpan>,
}

pub fn compare_spans(found: &[LinearSpan], target: &[LinearSpan]) -> EqualityReport {
    let missing: Vec<LinearSpan> = target
        .iter()
        .filter(|t| !found.contains(t))
        .cloned()
        .collect();
    let extra: Vec<LinearSpan> = found
        .iter()
        .filter(|f| !target.contains(f))
        .cloned()
        .collect();
    EqualityReport {
        equal: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
    }
}

pub fn radical_equals_arrangement(
    g: &Gsc,
    arrangement: &Arrangement,
    budget: &Budget,
) -> Result<EqualityReport> {
    if arrangement.ambient() != g.lambda.ambient() {
        return Err(Error::DimensionMismatch {
            expected: g.lambda.ambient(),
            found: arrangement.ambient(),
        });
    }
    let primes = minimal_primes(g, budget)?;
    Ok(compare_spans(&primes.spans(), arrangement.components()))
}

fn reduced_forms(lambda: &FormList, p: u32) -> Result<Vec<Vec<u32>>> {
    lambda
        .forms()
        .iter()
        .map(|f| reduce_vector(f.coeffs(), p))
        .collect()
}

/// Projective `F_p`-points where every `a`-fold product of `Λ mod p`
/// vanishes, i.e. where at most `a-1` of the forms are nonzero.
pub fn zero_locus_mod_p(g: &Gsc, p: u32, budget: &Budget) -> Result<Vec<Vec<u32>>> {
    let forms = reduced_forms(&g.lambda, p)?;
    let a = g.a;
    scan_projective(p, g.lambda.ambient(), budget, |pt| {
        forms.iter().filter(|f| dot_mod(f, pt, p) != 0).count() < a
    })
}

/// Projective `F_p`-points lying on at least one minimal prime, each prime
/// taken as the common zeros of its witness forms reduced mod `p`.
pub fn prime_points_mod_p(
    lambda: &FormList,
    primes: &MinimalPrimeSet,
    p: u32,
    budget: &Budget,
) -> Result<Vec<Vec<u32>>> {
    let forms = reduced_forms(lambda, p)?;
    let witnesses: Vec<Vec<&Vec<u32>>> = primes
        .primes
        .iter()
        .map(|mp| mp.witness.iter().map(|&i| &forms[i]).collect())
        .collect();
    scan_projective(p, lambda.ambient(), budget, |pt| {
        witnesses
            .iter()
            .any(|w| w.iter().all(|f| dot_mod(f, pt, p) == 0))
    })
}

/// Whether every `c` forms of `Λ` are linearly independent.
pub fn is_c_general_position(lambda: &FormList, c: usize, budget: &Budget) -> Result<bool> {
    let n = lambda.len();
    let k = lambda.ambient();
    if c == 0 || c > n.min(k) {
        return Err(Error::SizeOutOfRange { a: c, n: n.min(k) });
    }
    budget.check_subsets(binomial(n, c))?;
    let m = lambda.matrix();
    Ok(Combinations::new(n, c)
        .collect::<Vec<_>>()
        .into_par_iter()
        .all(|idx| m.select_rows(&idx).rank() == c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Any `k` forms independent and `n-k+2 <= a <= n`.
    pub usual_star: bool,
    pub codim: usize,
}

pub fn classify(g: &Gsc, budget: &Budget) -> Result<Classification> {
    let (n, k, a) = (g.n(), g.lambda.ambient(), g.a);
    let in_range = n >= k && a + k >= n + 2;
    let usual_star = in_range && is_c_general_position(&g.lambda, k, budget)?;
    Ok(Classification {
        usual_star,
        codim: height(g, budget)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FieldSpec, Matrix};
    use crate::forms::LinearForm;

    const Q: FieldSpec = FieldSpec::Rational;

    pub(crate) fn skew_lines() -> FormList {
        FormList::from_int_rows(
            Q,
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[1, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[0, 0, 1, 1],
            ],
        )
        .unwrap()
    }

    /// (x, z, w, x+z+w, y, x+y, x-y) in variables (x, y, z, w).
    fn two_block() -> FormList {
        FormList::from_int_rows(
            Q,
            &[
                &[1, 0, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 0, 1, 1],
                &[0, 1, 0, 0],
                &[1, 1, 0, 0],
                &[1, -1, 0, 0],
            ],
        )
        .unwrap()
    }

    fn span(rows: &[&[i64]]) -> LinearSpan {
        LinearSpan::from_matrix(&Matrix::from_ints(Q, rows).unwrap())
    }

    #[test]
    fn skew_lines_primes() {
        let g = Gsc::new(skew_lines(), 4).unwrap();
        let b = Budget::default();
        let mp = minimal_primes(&g, &b).unwrap();
        assert_eq!(
            mp.spans(),
            vec![
                span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]),
                span(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]),
            ]
        );
        assert_eq!(mp.primes[0].witness, vec![0, 1, 2]);
        assert_eq!(mp.height, 2);
        assert_eq!(height(&g, &b).unwrap(), 2);
    }

    #[test]
    fn two_block_primes() {
        let g = Gsc::new(two_block(), 4).unwrap();
        let mp = minimal_primes(&g, &Budget::default()).unwrap();
        let mut got = mp.spans();
        got.sort();
        let mut want = vec![
            span(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn extreme_sizes() {
        let b = Budget::default();
        // a = n: one prime per proportionality class
        let l =
            FormList::from_int_rows(Q, &[&[1, 0, 0], &[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let g = Gsc::new(l.clone(), 4).unwrap();
        let mp = minimal_primes(&g, &b).unwrap();
        assert_eq!(mp.primes.len(), 3);
        assert!(mp.primes.iter().all(|p| p.span.codim() == 1));
        assert_eq!(height(&g, &b).unwrap(), 1);
        // a = 1: the irrelevant ideal, empty variety
        let g1 = Gsc::new(l, 1).unwrap();
        let mp1 = minimal_primes(&g1, &b).unwrap();
        assert!(mp1.is_empty_variety());
        assert!(zero_locus_mod_p(&g1, 5, &b).unwrap().is_empty());
    }

    #[test]
    fn general_lines_height() {
        let l =
            FormList::from_int_rows(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let g = Gsc::new(l, 3).unwrap();
        assert_eq!(height(&g, &Budget::default()).unwrap(), 2);
    }

    #[test]
    fn arrangement_comparison() {
        let b = Budget::default();
        let target = Arrangement::from_spans(vec![
            span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]),
            span(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]),
        ])
        .unwrap();
        let g4 = Gsc::new(skew_lines(), 4).unwrap();
        assert!(radical_equals_arrangement(&g4, &target, &b).unwrap().equal);
        // a = 5: pairs of forms, e.g. <x1, x3>, give extra codim-2 primes
        let g5 = Gsc::new(skew_lines(), 5).unwrap();
        let r = radical_equals_arrangement(&g5, &target, &b).unwrap();
        assert!(!r.equal);
        assert!(r.extra.contains(&span(&[&[1, 0, 0, 0], &[0, 0, 1, 0]])));
    }

    #[test]
    fn skew_lines_locus_mod_5() {
        let b = Budget::default();
        let g = Gsc::new(skew_lines(), 4).unwrap();
        let locus = zero_locus_mod_p(&g, 5, &b).unwrap();
        // two disjoint projective lines over F_5, 6 points each
        assert_eq!(locus.len(), 12);
        let mp = minimal_primes(&g, &b).unwrap();
        assert_eq!(prime_points_mod_p(g.lambda(), &mp, 5, &b).unwrap(), locus);
    }

    #[test]
    fn locus_of_a_product() {
        let l = FormList::from_int_rows(Q, &[&[1, 0], &[0, 1]]).unwrap();
        let g = Gsc::new(l, 2).unwrap();
        assert_eq!(
            zero_locus_mod_p(&g, 3, &Budget::default()).unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
    }

    #[test]
    fn general_position() {
        let b = Budget::default();
        // exhaustive over the 21 pairs: all independent (no proportional forms)
        assert!(is_c_general_position(&two_block(), 2, &b).unwrap());
        // x, z, w, x+z+w lie in a rank-3 span, so 4 of them are dependent
        assert!(!is_c_general_position(&two_block(), 4, &b).unwrap());
        let dup = FormList::from_int_rows(Q, &[&[1, 0], &[2, 0], &[0, 1]]).unwrap();
        assert!(!is_c_general_position(&dup, 2, &b).unwrap());
        assert!(is_c_general_position(&dup, 3, &b).is_err());
    }

    #[test]
    fn classification() {
        let b = Budget::default();
        let five = FormList::from_int_rows(
            Q,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]],
        )
        .unwrap();
        let c = classify(&Gsc::new(five, 4).unwrap(), &b).unwrap();
        assert_eq!(
            c,
            Classification {
                usual_star: true,
                codim: 2
            }
        );
        let h = classify(&Gsc::new(skew_lines(), 4).unwrap(), &b).unwrap();
        assert!(!h.usual_star);
        let xy = FormList::from_int_rows(Q, &[&[1, 0], &[0, 1]]).unwrap();
        let c2 = classify(&Gsc::new(xy, 2).unwrap(), &b).unwrap();
        assert_eq!(
            c2,
            Classification {
                usual_star: true,
                codim: 1
            }
        );
    }

    #[test]
    fn budget_is_enforced() {
        let g = Gsc::new(skew_lines(), 4).unwrap();
        let tight = Budget {
            subsets: 10,
            scan: 10,
        };
        assert_eq!(
            minimal_primes(&g, &tight),
            Err(Error::BudgetExceeded {
                required: 20,
                budget: 10
            })
        );
        assert!(matches!(
            zero_locus_mod_p(&g, 5, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rejects_bad_input() {
        let thin =
            FormList::new(Q, 3, vec![LinearForm::from_ints(Q, &[1, 0, 0]).unwrap()]).unwrap();
        assert!(Gsc::new(thin, 1).is_err());
        assert!(Gsc::new(skew_lines(), 0).is_err());
        assert!(Gsc::new(skew_lines(), 7).is_err());
    }
}
