//! Sparse multivariate polynomials with exact coefficients.
//!
//! Only what products of linear forms and their sums need: ring operations,
//! evaluation, and linear substitution for vanishing tests.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::modp::reduce_vector;
use crate::exactalg::{FieldSpec, Scalar};
use crate::forms::{FormList, LinearForm, LinearSpan};
use crate::subsets::Combinations;

/// Exponent vector. Ordered graded-lexicographically (total degree first,
/// then the exponent of `x_1`, then `x_2`, …).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(k: usize) -> Self {
        Monomial(vec![0; k])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    k: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, k: usize) -> Self {
        Polynomial {
            field,
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, k: usize) -> Self {
        let mut p = Polynomial::zero(c.field(), k);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(k), c);
        }
        p
    }

    pub fn from_form(f: &LinearForm) -> Self {
        Polynomial::linear(f.coeffs())
    }

    /// `Σ c_i x_i` from a coefficient vector; the vector may be zero.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let k = coeffs.len();
        let field = coeffs.first().map_or(FieldSpec::Rational, Scalar::field);
        let mut p = Polynomial::zero(field, k);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; k];
                e[i] = 1;
                p.terms.insert(Monomial(e), c.clone());
            }
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        if self.field != other.field && !self.is_zero() && !other.is_zero() {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        if out.is_zero() {
            out.field = other.field;
        }
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            k: self.k,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let field = if self.is_zero() {
            other.field
        } else {
            self.field
        };
        let mut out = Polynomial::zero(field, self.k);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.field.one(), self.k);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, bad.field()));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ images[i]`; all images live in one common ring.
    pub fn compose(&self, images: &[Polynomial], target_vars: usize) -> Result<Polynomial> {
        if images.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: images.len(),
            });
        }
        let mut out = Polynomial::zero(self.field, target_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), target_vars);
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&img.pow(e))?;
                }
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Residue-coefficient copy for fast evaluation over `F_p`.
    pub fn reduce_mod(&self, p: u32) -> Result<ModPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v = match c {
                    Scalar::Rational(q) => {
                        let s = FieldSpec::Prime(p).from_rational(q)?;
                        reduce_vector(&[s], p)?[0]
                    }
                    Scalar::Residue { value, modulus } if *modulus == p => *value,
                    other => return Err(Error::FieldMismatch(other.field(), FieldSpec::Prime(p))),
                };
                Ok((m.0.clone(), v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModPoly { p, terms })
    }

    /// Renders in decreasing graded-lex order, e.g. `x1^2*x3-2*x2*x4`.
    pub fn render(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> =
                m.0.iter()
                    .zip(vars)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, v)| {
                        if *e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            let cs = c.to_string();
            let (neg, mag) = if c.is_negative() {
                (true, cs.trim_start_matches('-').to_string())
            } else {
                (false, cs)
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (1..=self.k).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&vars))
    }
}

/// A polynomial with coefficients reduced modulo `p`.
#[derive(Clone, Debug)]
pub struct ModPoly {
    p: u32,
    terms: Vec<(Vec<u32>, u32)>,
}

impl ModPoly {
    pub fn eval(&self, point: &[u32]) -> u32 {
        let p = u64::from(self.p);
        let mut acc = 0u64;
        for (exps, c) in &self.terms {
            let mut t = u64::from(*c);
            for (&x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    t = t * u64::from(x) % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc as u32
    }
}

/// `ℓ_I = Π_{i ∈ I} ℓ_i` for a multiset of zero-based indices.
pub fn product_of_forms(lambda: &FormList, indices: &[usize]) -> Result<Polynomial> {
    let k = lambda.ambient();
    let mut acc = Polynomial::constant(lambda.field().one(), k);
    for &i in indices {
        if i >= lambda.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: lambda.len(),
            });
        }
        acc = acc.mul(&Polynomial::from_form(lambda.get(i)))?;
    }
    Ok(acc)
}

/// All `a`-subsets of `{0, …, n-1}`, increasing, in lexicographic order.
pub fn afold_index_sets(n: usize, a: usize) -> Result<Vec<Vec<usize>>> {
    if a == 0 || a > n {
        return Err(Error::SizeOutOfRange { a, n });
    }
    Ok(Combinations::new(n, a).collect())
}

/// Whether `f` vanishes identically on the zero set of `span`, tested by
/// substituting the generic point `Σ t_u b_u` of that zero set.
pub fn vanishes_on_span(f: &Polynomial, span: &LinearSpan) -> Result<bool> {
    if f.ambient() != span.ambient() {
        return Err(Error::DimensionMismatch {
            expected: span.ambient(),
            found: f.ambient(),
        });
    }
    let kernel = span.zero_set_basis();
    let d = kernel.rows();
    let field = span.field();
    // image of x_i is Σ_u kernel[u][i] t_u
    let images: Vec<Polynomial> = (0..f.ambient())
        .map(|i| {
            let coeffs: Vec<Scalar> = (0..d).map(|u| kernel.get(u, i).clone()).collect();
            if d == 0 {
                Polynomial::zero(field, 0)
            } else {
                Polynomial::linear(&coeffs)
            }
        })
        .collect();
    Ok(f.compose(&images, d)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Matrix;
    use crate::forms::default_variables;
    use proptest::prelude::*;

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

    fn point(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Q.from_int(x)).collect()
    }

    #[test]
    fn products() {
        let xy = FormList::from_int_rows(Q, &[&[1, 0], &[0, 1]]).unwrap();
        let p = product_of_forms(&xy, &[0, 1]).unwrap();
        assert_eq!(p.render(&default_variables(2)), "x*y");
        assert_eq!(p.degree(), Some(2));

        let h = skew_lines();
        let vars = default_variables(4);
        assert_eq!(
            product_of_forms(&h, &[0, 1]).unwrap().render(&vars),
            "x1*x2"
        );

        let sq = FormList::from_int_rows(Q, &[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(
            product_of_forms(&sq, &[0, 0])
                .unwrap()
                .render(&default_variables(2)),
            "x^2"
        );
        assert_eq!(
            product_of_forms(&sq, &[2]),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn index_sets() {
        assert_eq!(afold_index_sets(6, 4).unwrap().len(), 15);
        assert_eq!(afold_index_sets(3, 3).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(afold_index_sets(9, 6).unwrap().len(), 84);
        assert!(afold_index_sets(3, 0).is_err());
        assert!(afold_index_sets(3, 4).is_err());
    }

    #[test]
    fn evaluation() {
        let xy = FormList::from_int_rows(Q, &[&[1, 0], &[0, 1]]).unwrap();
        let p = product_of_forms(&xy, &[0, 1]).unwrap();
        assert_eq!(p.evaluate(&point(&[1, 1])).unwrap(), Q.one());

        // (x1+x2) x3 x4 (x3+x4) at (0,0,1,0): the x4 factor kills it
        let q0 = product_of_forms(&skew_lines(), &[2, 3, 4, 5]).unwrap();
        assert!(q0.evaluate(&point(&[0, 0, 1, 0])).unwrap().is_zero());
        assert!(!q0.evaluate(&point(&[1, 0, 1, 1])).unwrap().is_zero());

        let f = Polynomial::from_form(&LinearForm::from_ints(Q, &[1, 1, -2]).unwrap());
        assert!(f.evaluate(&point(&[1, 1, 1])).unwrap().is_zero());
        assert!(f.evaluate(&point(&[1, 1])).is_err());
    }

    fn span(rows: &[&[i64]]) -> LinearSpan {
        LinearSpan::from_matrix(&Matrix::from_ints(Q, rows).unwrap())
    }

    #[test]
    fn vanishing_on_spans() {
        let xy = FormList::from_int_rows(Q, &[&[1, 0], &[0, 1]]).unwrap();
        let prod = product_of_forms(&xy, &[0, 1]).unwrap();
        assert!(vanishes_on_span(&prod, &span(&[&[1, 0]])).unwrap());
        let sum = Polynomial::from_form(&LinearForm::from_ints(Q, &[1, 1]).unwrap());
        assert!(!vanishes_on_span(&sum, &span(&[&[1, 0]])).unwrap());

        let q0 = product_of_forms(&skew_lines(), &[2, 3, 4, 5]).unwrap();
        assert!(vanishes_on_span(&q0, &span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap());
        assert!(!vanishes_on_span(&q0, &span(&[&[1, -1, 0, 0], &[0, 0, 1, -2]])).unwrap());
    }

    #[test]
    fn sums_can_cancel() {
        let xy = FormList::from_int_rows(Q, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let a = product_of_forms(&xy, &[0, 2]).unwrap(); // x^2 + xy
        let b = product_of_forms(&xy, &[0, 0]).unwrap(); // x^2
        let diff = a.sub(&b).unwrap();
        assert_eq!(diff.render(&default_variables(2)), "x*y");
        assert!(diff.sub(&diff).unwrap().is_zero());
    }

    #[test]
    fn modular_evaluation_agrees() {
        let f = LinearForm::new(vec![Q.parse_scalar("1/2").unwrap(), Q.one()]).unwrap();
        let p = Polynomial::from_form(&f).pow(3);
        let m = p.reduce_mod(7).unwrap();
        for x in 0..7u32 {
            for y in 0..7u32 {
                let exact = p.evaluate(&point(&[x as i64, y as i64])).unwrap();
                let r = FieldSpec::Prime(7)
                    .from_rational(exact.as_rational().unwrap())
                    .unwrap();
                assert_eq!(
                    Scalar::Residue {
                        value: m.eval(&[x, y]),
                        modulus: 7
                    },
                    r
                );
            }
        }
    }

    fn arb_forms() -> impl Strategy<Value = FormList> {
        (2usize..4, 1usize..5).prop_flat_map(|(k, n)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..3, k), n).prop_filter_map(
                "nonzero forms",
                move |rows| {
                    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                    FormList::from_int_rows(Q, &refs).ok()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative(l in arb_forms(), pt in proptest::collection::vec(-3i64..4, 3)) {
            let k = l.ambient();
            let x = point(&pt[..k]);
            let all: Vec<usize> = (0..l.len()).collect();
            let f = product_of_forms(&l, &all[..l.len() / 2 + 1]).unwrap();
            let g = product_of_forms(&l, &all[l.len() / 2..]).unwrap();
            let fg = f.mul(&g).unwrap();
            let sum = f.add(&g).unwrap();
            let (fx, gx) = (f.evaluate(&x).unwrap(), g.evaluate(&x).unwrap());
            prop_assert_eq!(fg.evaluate(&x).unwrap(), &fx * &gx);
            if f.degree() == g.degree() {
                prop_assert_eq!(sum.evaluate(&x).unwrap(), &fx + &gx);
            }
        }

        // prime avoidance for linear primes: a product vanishes on a span
        // exactly when one of its factors lies in the span
        #[test]
        fn products_vanish_iff_a_factor_does(l in arb_forms(), s in arb_forms()) {
            prop_assume!(l.ambient() == s.ambient());
            let sp = LinearSpan::span_of(s.forms()).unwrap();
            let all: Vec<usize> = (0..l.len()).collect();
            let f = product_of_forms(&l, &all).unwrap();
            let factor_in = l.forms().iter().any(|g| sp.contains_form(g).unwrap());
            prop_assert_eq!(vanishes_on_span(&f, &sp).unwrap(), factor_in);
        }
    }
}
