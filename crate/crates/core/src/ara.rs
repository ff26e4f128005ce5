//! Generators of `I_a(Λ)` up to radical.
//!
//! The `a`-subsets of `{0, …, n-1}` are split into `j + 1 = n - a + 1`
//! families `P_0, …, P_j`, and `q_l` is the sum of the products in `P_l`
//! (optionally raised to exponents). A classical lemma says the `q_l`
//! have the same radical as all the products as soon as `P_0` is a single
//! product and, for any two products of one family, some product of a lower
//! family divides their product. Those conditions are checked here at the
//! level of index sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactalg::modp::{good_reduction, scan_projective};
use crate::forms::{Arrangement, FormList};
use crate::gsc::{height, minimal_primes, zero_locus_mod_p, Gsc};
use crate::poly::{product_of_forms, vanishes_on_span, Polynomial};
use crate::subsets::{binomial, Combinations};

/// Families of zero-based `a`-subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SVPartition {
    pub n: usize,
    pub a: usize,
    pub families: Vec<Vec<Vec<usize>>>,
}

impl SVPartition {
    /// `j = n - a`.
    pub fn j(&self) -> usize {
        self.n - self.a
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.families.iter().map(Vec::len).collect()
    }
}

pub fn sv_partition(n: usize, a: usize) -> Result<SVPartition> {
    if a == 0 || a > n {
        return Err(Error::SizeOutOfRange { a, n });
    }
    let j = n - a;
    let mut families = vec![vec![(j..n).collect::<Vec<usize>>()]];
    for u in 1..=j {
        let lead = j - u;
        let rest: Vec<usize> = (lead + 1..n).collect();
        let family = Combinations::new(rest.len(), a - 1)
            .map(|pick| {
                let mut set = vec![lead];
                set.extend(pick.iter().map(|&i| rest[i]));
                set
            })
            .collect();
        families.push(family);
    }
    Ok(SVPartition { n, a, families })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum SvViolation {
    /// Condition (i): the families do not partition the `a`-subsets.
    Missing {
        subset: Vec<usize>,
    },
    Repeated {
        subset: Vec<usize>,
    },
    Malformed {
        subset: Vec<usize>,
    },
    /// Condition (ii).
    FirstFamilySize {
        size: usize,
    },
    /// Condition (iii): no product from a lower family divides `p · p''`.
    NoDivisor {
        family: usize,
        pair: (Vec<usize>, Vec<usize>),
    },
}

impl SvViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            SvViolation::Missing { .. }
            | SvViolation::Repeated { .. }
            | SvViolation::Malformed { .. } => "i",
            SvViolation::FirstFamilySize { .. } => "ii",
            SvViolation::NoDivisor { .. } => "iii",
        }
    }
}

fn one_based(s: &[usize]) -> String {
    let v: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

impl fmt::Display for SvViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SvViolation::Missing { subset } => {
                write!(f, "(i) {} is in no family", one_based(subset))
            }
            SvViolation::Repeated { subset } => {
                write!(f, "(i) {} appears twice", one_based(subset))
            }
            SvViolation::Malformed { subset } => {
                write!(
                    f,
                    "(i) {} is not a subset of the right size",
                    one_based(subset)
                )
            }
            SvViolation::FirstFamilySize { size } => write!(f, "(ii) P_0 has {size} elements"),
            SvViolation::NoDivisor { family, pair } => write!(
                f,
                "(iii) nothing below P_{family} divides the product of {} and {}",
                one_based(&pair.0),
                one_based(&pair.1)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SvCheck {
    pub holds: bool,
    pub pairs_checked: u64,
    pub violation: Option<SvViolation>,
}

/// Checks conditions (i)–(iii) and reports the first violation found.
pub fn verify_sv_conditions(part: &SVPartition, budget: &Budget) -> Result<SvCheck> {
    let fail = |v: SvViolation, pairs| {
        Ok(SvCheck {
            holds: false,
            pairs_checked: pairs,
            violation: Some(v),
        })
    };
    let (n, a) = (part.n, part.a);
    let mut family_of: HashMap<Vec<usize>, usize> = HashMap::new();
    for (u, fam) in part.families.iter().enumerate() {
        for s in fam {
            let sorted = s.windows(2).all(|w| w[0] < w[1]);
            if s.len() != a || !sorted || s.iter().any(|&i| i >= n) {
                return fail(SvViolation::Malformed { subset: s.clone() }, 0);
            }
            if family_of.insert(s.clone(), u).is_some() {
                return fail(SvViolation::Repeated { subset: s.clone() }, 0);
            }
        }
    }
    if family_of.len() as u128 != binomial(n, a) {
        budget.check_subsets(binomial(n, a))?;
        let subset = Combinations::new(n, a)
            .find(|s| !family_of.contains_key(s))
            .expect("fewer sets than subsets");
        return fail(SvViolation::Missing { subset }, 0);
    }
    let first = part.families.first().map_or(0, Vec::len);
    if first != 1 {
        return fail(SvViolation::FirstFamilySize { size: first }, 0);
    }
    let pairs: u128 = part.families[1..]
        .iter()
        .map(|f| binomial(f.len(), 2))
        .sum();
    budget.check_subsets(pairs)?;
    let mut checked = 0u64;
    for (u, fam) in part.families.iter().enumerate().skip(1) {
        let bad = Combinations::new(fam.len(), 2)
            .collect::<Vec<_>>()
            .into_par_iter()
            .find_first(|ij| {
                let union: Vec<usize> = fam[ij[0]]
                    .iter()
                    .chain(&fam[ij[1]])
                    .copied()
                    .collect::<BTreeSet<usize>>()
                    .into_iter()
                    .collect();
                // a divisor of p·p'' at the index level is an a-subset of the union
                !Combinations::new(union.len(), a).any(|pick| {
                    let s: Vec<usize> = pick.iter().map(|&i| union[i]).collect();
                    family_of.get(&s).is_some_and(|&v| v < u)
                })
            });
        if let Some(ij) = bad {
            let pair = (fam[ij[0]].clone(), fam[ij[1]].clone());
            return fail(SvViolation::NoDivisor { family: u, pair }, checked);
        }
        checked += binomial(fam.len(), 2) as u64;
    }
    Ok(SvCheck {
        holds: true,
        pairs_checked: checked,
        violation: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SVSystem {
    pub lambda: FormList,
    pub a: usize,
    pub partition: SVPartition,
    /// Exponents different from 1, keyed by zero-based index set.
    pub exponents: BTreeMap<Vec<usize>, u32>,
    pub q: Vec<Polynomial>,
}

impl SVSystem {
    pub fn exponent(&self, s: &[usize]) -> u32 {
        self.exponents.get(s).copied().unwrap_or(1)
    }
}

/// Builds `q_0, …, q_j` for the input order of `Λ`.
pub fn sv_generators(
    lambda: &FormList,
    a: usize,
    exponents: &BTreeMap<Vec<usize>, u32>,
    budget: &Budget,
) -> Result<SVSystem> {
    let g = Gsc::new(lambda.clone(), a)?;
    let partition = sv_partition(g.n(), a)?;
    let check = verify_sv_conditions(&partition, budget)?;
    if let Some(v) = check.violation {
        return Err(Error::Verification(v.to_string()));
    }
    let all: BTreeSet<&Vec<usize>> = partition.families.iter().flatten().collect();
    for (s, &e) in exponents {
        if e == 0 || !all.contains(s) {
            return Err(Error::Invalid(format!(
                "exponent {e} for {} is not a positive exponent of a generator",
                one_based(s)
            )));
        }
    }
    let q = partition
        .families
        .par_iter()
        .map(|fam| {
            fam.iter().try_fold(
                Polynomial::zero(lambda.field(), lambda.ambient()),
                |acc, s| {
                    let e = exponents.get(s).copied().unwrap_or(1);
                    acc.add(&product_of_forms(lambda, s)?.pow(e))
                },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SVSystem {
        lambda: lambda.clone(),
        a,
        partition,
        exponents: exponents.clone(),
        q,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeLocus {
    pub p: u32,
    /// Points where every `q_l` vanishes.
    pub system_points: usize,
    /// Points where every `a`-fold product vanishes.
    pub product_points: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusReport {
    /// Every `q_l` vanishes on every minimal prime.
    pub symbolic: bool,
    pub primes: Vec<PrimeLocus>,
    pub all_match: bool,
}

/// Compares `V(q_0, …, q_j)` with `V(I_a(Λ))` over each `F_p`.
pub fn verify_zero_locus_match(
    sys: &SVSystem,
    primes: &[u32],
    budget: &Budget,
) -> Result<LocusReport> {
    let g = Gsc::new(sys.lambda.clone(), sys.a)?;
    let mp = minimal_primes(&g, budget)?;
    let mut symbolic = true;
    for q in &sys.q {
        for span in mp.spans() {
            if !vanishes_on_span(q, &span)? {
                symbolic = false;
            }
        }
    }
    let k = sys.lambda.ambient();
    let mut rows = Vec::new();
    for &p in primes {
        good_reduction(&sys.lambda.matrix(), p, budget)?;
        let reduced = sys
            .q
            .iter()
            .map(|q| q.reduce_mod(p))
            .collect::<Result<Vec<_>>>()?;
        let system = scan_projective(p, k, budget, |x| reduced.iter().all(|q| q.eval(x) == 0))?;
        let products = zero_locus_mod_p(&g, p, budget)?;
        rows.push(PrimeLocus {
            p,
            system_points: system.len(),
            product_points: products.len(),
            matches: system == products,
        });
    }
    let all_match = symbolic && rows.iter().all(|r| r.matches);
    Ok(LocusReport {
        symbolic,
        primes: rows,
        all_match,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// `n - a + 1` for a GSC, `1 + Σ (c_i - 1)` for an arrangement.
    pub sv_bound: usize,
    /// `k - 1`, when the variety lies in a hyperplane.
    pub ee_bound: Option<usize>,
    pub height: usize,
    pub min: usize,
    /// The best upper bound equals the height.
    pub stci_certified: bool,
}

fn report(sv_bound: usize, ee_bound: Option<usize>, height: usize) -> BoundReport {
    let min = ee_bound.map_or(sv_bound, |e| e.min(sv_bound));
    BoundReport {
        sv_bound,
        ee_bound,
        height,
        min,
        stci_certified: min == height,
    }
}

pub fn arrangement_bounds(arr: &Arrangement) -> BoundReport {
    let codims = arr.codims();
    let sv = 1 + codims.iter().map(|c| c - 1).sum::<usize>();
    let height = codims.iter().copied().min().unwrap_or(0);
    report(sv, Some(arr.ambient() - 1), height)
}

pub fn gsc_bounds(g: &Gsc, budget: &Budget) -> Result<BoundReport> {
    let h = height(g, budget)?;
    let k = g.lambda().ambient();
    let ee = (h < k).then(|| k - 1);
    Ok(report(g.witness_size(), ee, h))
}

/// Certifies `I_a(Λ)` as a set-theoretic complete intersection when its
/// height reaches `n - a + 1`; the system from [`sv_generators`] is then the
/// witness.
pub fn stci_certificate(g: &Gsc, budget: &Budget) -> Result<BoundReport> {
    let h = height(g, budget)?;
    let mut r = gsc_bounds(g, budget)?;
    r.stci_certified = h == g.witness_size();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FieldSpec, Matrix};
    use crate::forms::{default_variables, LinearSpan};

    const Q: FieldSpec = FieldSpec::Rational;

    fn skew_lines() -> FormList {
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

    fn span(rows: &[&[i64]]) -> LinearSpan {
        LinearSpan::from_matrix(&Matrix::from_ints(Q, rows).unwrap())
    }

    #[test]
    fn partition_shapes() {
        let p = sv_partition(6, 4).unwrap();
        assert_eq!(p.sizes(), vec![1, 4, 10]);
        assert_eq!(p.families[0], vec![vec![2, 3, 4, 5]]);
        assert!(p.families[1].iter().all(|s| s[0] == 1));
        assert!(p.families[2].iter().all(|s| s[0] == 0));
        assert_eq!(
            sv_partition(4, 4).unwrap().families,
            vec![vec![vec![0, 1, 2, 3]]]
        );
        let small = sv_partition(3, 2).unwrap();
        assert_eq!(
            small.families,
            vec![vec![vec![1, 2]], vec![vec![0, 1], vec![0, 2]]]
        );
        assert!(sv_partition(3, 0).is_err());
        assert!(sv_partition(3, 4).is_err());
    }

    #[test]
    fn partition_totals() {
        for n in 1..=12 {
            for a in 1..=n {
                let p = sv_partition(n, a).unwrap();
                assert_eq!(p.sizes().iter().sum::<usize>() as u128, binomial(n, n - a));
                assert_eq!(p.families.len(), n - a + 1);
            }
        }
    }

    #[test]
    fn conditions_hold_for_the_construction() {
        let b = Budget::default();
        for n in 1..=9 {
            for a in 1..=n {
                let c = verify_sv_conditions(&sv_partition(n, a).unwrap(), &b).unwrap();
                assert!(c.holds, "n={n} a={a}: {:?}", c.violation);
            }
        }
    }

    #[test]
    fn broken_partitions() {
        let b = Budget::default();
        let mut two_first = sv_partition(6, 4).unwrap();
        let moved = two_first.families[1].remove(0);
        two_first.families[0].push(moved);
        let c = verify_sv_conditions(&two_first, &b).unwrap();
        assert_eq!(c.violation.unwrap().condition(), "ii");

        let mut missing = sv_partition(6, 4).unwrap();
        let dropped = missing.families[2].pop().unwrap();
        let c = verify_sv_conditions(&missing, &b).unwrap();
        assert_eq!(c.violation, Some(SvViolation::Missing { subset: dropped }));

        let mut repeated = sv_partition(6, 4).unwrap();
        let dup = repeated.families[2][0].clone();
        repeated.families[1].push(dup);
        let c = verify_sv_conditions(&repeated, &b).unwrap();
        assert_eq!(c.violation.unwrap().condition(), "i");

        // n=3, a=2 with the lower and upper families swapped
        let swapped = SVPartition {
            n: 3,
            a: 2,
            families: vec![vec![vec![0, 1]], vec![vec![0, 2], vec![1, 2]]],
        };
        let c = verify_sv_conditions(&swapped, &b).unwrap();
        assert!(c.holds);
        let bad = SVPartition {
            n: 4,
            a: 2,
            families: vec![
                vec![vec![0, 1]],
                vec![vec![2, 3], vec![0, 2], vec![1, 3], vec![0, 3], vec![1, 2]],
            ],
        };
        let c = verify_sv_conditions(&bad, &b).unwrap();
        assert_eq!(c.violation.unwrap().condition(), "iii");
    }

    #[test]
    fn skew_lines_generators() {
        let b = Budget::default();
        let sys = sv_generators(&skew_lines(), 4, &BTreeMap::new(), &b).unwrap();
        assert_eq!(sys.q.len(), 3);
        let vars = default_variables(4);
        let q0 = product_of_forms(&skew_lines(), &[2, 3, 4, 5]).unwrap();
        assert_eq!(sys.q[0], q0);
        assert!(sys
            .q
            .iter()
            .all(|q| q.is_homogeneous() && q.degree() == Some(4)));
        assert_eq!(
            sys.q[0].render(&vars),
            "x1*x3^2*x4+x1*x3*x4^2+x2*x3^2*x4+x2*x3*x4^2"
        );
        let report = verify_zero_locus_match(&sys, &[5, 7], &b).unwrap();
        assert!(report.symbolic);
        assert!(report.all_match, "{report:?}");
        assert_eq!(report.primes[0].system_points, 12);
        assert_eq!(report.primes[1].system_points, 16);
    }

    #[test]
    fn dropped_summand_is_detected() {
        let b = Budget::default();
        let lambda = skew_lines();
        let mut sys = sv_generators(&lambda, 4, &BTreeMap::new(), &b).unwrap();
        let summand = product_of_forms(&lambda, &sys.partition.families[1][0]).unwrap();
        sys.q[1] = sys.q[1].sub(&summand).unwrap();
        let report = verify_zero_locus_match(&sys, &[5, 7], &b).unwrap();
        assert!(!report.all_match);
        assert!(report.primes.iter().any(|r| !r.matches));
    }

    #[test]
    fn exponents_change_degrees_not_loci() {
        let b = Budget::default();
        let mut e = BTreeMap::new();
        e.insert(vec![0, 1, 2, 3], 2);
        let sys = sv_generators(&skew_lines(), 4, &e, &b).unwrap();
        assert_eq!(sys.exponent(&[0, 1, 2, 3]), 2);
        assert!(!sys.q[2].is_homogeneous());
        let report = verify_zero_locus_match(&sys, &[5], &b).unwrap();
        assert!(report.all_match);
        let mut bad = BTreeMap::new();
        bad.insert(vec![0, 1], 2);
        assert!(sv_generators(&skew_lines(), 4, &bad, &b).is_err());
    }

    #[test]
    fn product_case() {
        let b = Budget::default();
        let lambda =
            FormList::from_int_rows(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let sys = sv_generators(&lambda, 4, &BTreeMap::new(), &b).unwrap();
        assert_eq!(sys.q.len(), 1);
        assert!(verify_zero_locus_match(&sys, &[3], &b).unwrap().all_match);
        let cert = stci_certificate(&Gsc::new(lambda, 4).unwrap(), &b).unwrap();
        assert!(cert.stci_certified);
        assert_eq!((cert.sv_bound, cert.height), (1, 1));
    }

    #[test]
    fn four_general_lines() {
        let b = Budget::default();
        let lambda =
            FormList::from_int_rows(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let sys = sv_generators(&lambda, 3, &BTreeMap::new(), &b).unwrap();
        assert_eq!(sys.q.len(), 2);
        let report = verify_zero_locus_match(&sys, &[7], &b).unwrap();
        assert!(report.all_match);
        assert_eq!(report.primes[0].system_points, 6);
    }

    #[test]
    fn bounds() {
        let b = Budget::default();
        let ex22 = Arrangement::from_spans(vec![
            span(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]),
        ])
        .unwrap();
        let r = arrangement_bounds(&ex22);
        assert_eq!((r.sv_bound, r.ee_bound, r.min), (4, Some(3), 3));
        let hart = Arrangement::from_spans(vec![
            span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]),
            span(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]),
        ])
        .unwrap();
        assert_eq!(arrangement_bounds(&hart).sv_bound, 3);
        let g = Gsc::new(skew_lines(), 4).unwrap();
        let cert = stci_certificate(&g, &b).unwrap();
        assert_eq!((cert.height, cert.sv_bound), (2, 3));
        assert!(!cert.stci_certified);
        for (r, t) in [(2usize, 2usize), (2, 3), (3, 2)] {
            let k = r * t;
            let blocks: Vec<LinearSpan> = (0..r)
                .map(|blk| {
                    let rows: Vec<Vec<i64>> = (0..t)
                        .map(|i| (0..k).map(|c| i64::from(c == blk * t + i)).collect())
                        .collect();
                    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                    span(&refs)
                })
                .collect();
            let arr = Arrangement::from_spans(blocks).unwrap();
            assert_eq!(arrangement_bounds(&arr).sv_bound, r * (t - 1) + 1);
        }
    }

    #[test]
    fn general_position_certifies() {
        let b = Budget::default();
        // any 3 of these 5 forms in 3 variables are independent
        let lambda = FormList::from_int_rows(
            Q,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]],
        )
        .unwrap();
        let g = Gsc::new(lambda, 3).unwrap();
        let cert = stci_certificate(&g, &b).unwrap();
        assert!(cert.stci_certified);
        assert_eq!(cert.height, 3);
    }
}
