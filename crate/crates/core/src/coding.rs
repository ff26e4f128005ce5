//! The linear code `C_Λ` whose generator matrix has the coefficient vectors
//! of `Λ` as columns.
//!
//! A message `x ∈ K^k` encodes to `(ℓ_1(x), …, ℓ_n(x))`. Subcodes are images
//! `φ(V)` of subspaces `V ⊆ K^k` and are identified by the canonical basis of
//! `V`. When `(Λ, a)` interpolates an arrangement, the maximal subcodes of
//! support at most `a - 1` are the images of its components.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactalg::modp::{
    dot_mod, good_reduction, projective_count, projective_point, rank_mod, scan_projective,
};
use crate::exactalg::{span_contains, FieldSpec, Matrix, Scalar};
use crate::forms::{FormList, LinearSpan, ValidationFailure};
use crate::subsets::{binomial, Combinations};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    lambda: FormList,
    matrix: Matrix,
}

pub fn generator_matrix(lambda: &FormList) -> Result<GeneratorMatrix> {
    let rows = lambda.matrix();
    let rank = rows.rank();
    if rank < lambda.ambient() {
        return Err(Error::InvalidArrangement(vec![
            ValidationFailure::NotEssential {
                rank,
                ambient: lambda.ambient(),
            },
        ]));
    }
    Ok(GeneratorMatrix {
        lambda: lambda.clone(),
        matrix: rows.transpose(),
    })
}

impl GeneratorMatrix {
    /// The `k × n` matrix.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn lambda(&self) -> &FormList {
        &self.lambda
    }

    pub fn field(&self) -> FieldSpec {
        self.lambda.field()
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn k(&self) -> usize {
        self.lambda.ambient()
    }

    pub fn encode(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.lambda.matrix().mul_vec(x)
    }

    /// `φ(V)` for the subspace of `K^k` spanned by the rows of `v`.
    pub fn subcode(&self, v: &Matrix) -> Result<Subcode> {
        if v.cols() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: v.cols(),
            });
        }
        let preimage = v.row_space_basis();
        let rows: Vec<Vec<Scalar>> = preimage
            .row_iter()
            .map(|x| self.encode(x))
            .collect::<Result<_>>()?;
        let image = Matrix::from_rows(self.field(), self.n(), rows)?;
        let support = (0..self.n())
            .filter(|&i| (0..image.rows()).any(|r| !image.get(r, i).is_zero()))
            .collect();
        Ok(Subcode {
            preimage,
            image,
            support,
        })
    }
}

pub fn weight(word: &[Scalar]) -> usize {
    word.iter().filter(|c| !c.is_zero()).count()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subcode {
    /// Canonical basis of `V ⊆ K^k`.
    pub preimage: Matrix,
    /// `φ` applied to the preimage basis.
    pub image: Matrix,
    /// Zero-based coordinates where some codeword is nonzero.
    pub support: Vec<usize>,
}

impl Subcode {
    pub fn dim(&self) -> usize {
        self.preimage.rows()
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.preimage.rows() == 0
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subcode) -> Result<bool> {
        span_contains(&other.preimage, &self.preimage)
    }
}

/// The largest subcode supported inside `s`: messages killed by every form
/// outside `s`.
pub fn coordinate_subcode(g: &GeneratorMatrix, s: &[usize]) -> Result<Subcode> {
    let n = g.n();
    if let Some(&bad) = s.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    let outside: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
    let v = if outside.is_empty() {
        Matrix::identity(g.field(), g.k())
    } else {
        g.lambda.matrix().select_rows(&outside).kernel_basis()
    };
    g.subcode(&v)
}

/// All subcodes of support size at most `s` that are maximal under
/// inclusion, in canonical order.
pub fn maximal_subcodes_of_support_at_most(
    g: &GeneratorMatrix,
    s: usize,
    budget: &Budget,
) -> Result<Vec<Subcode>> {
    let s = s.min(g.n());
    if s == 0 {
        return Ok(Vec::new());
    }
    budget.check_subsets(binomial(g.n(), s))?;
    let mut found: BTreeMap<Matrix, Subcode> = BTreeMap::new();
    for idx in Combinations::new(g.n(), s) {
        let sub = coordinate_subcode(g, &idx)?;
        if !sub.is_zero() {
            found.entry(sub.preimage.clone()).or_insert(sub);
        }
    }
    let all: Vec<Subcode> = found.into_values().collect();
    let mut maximal = Vec::new();
    for (i, d) in all.iter().enumerate() {
        let mut dominated = false;
        for (j, e) in all.iter().enumerate() {
            if i != j && e.dim() > d.dim() && e.contains(d)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            maximal.push(d.clone());
        }
    }
    Ok(maximal)
}

/// `D_i = φ(V_i)` for each component, given by its ideal.
pub fn component_subcodes(g: &GeneratorMatrix, components: &[LinearSpan]) -> Result<Vec<Subcode>> {
    components
        .iter()
        .map(|c| g.subcode(&c.zero_set_basis()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodewordClass {
    /// Normalized message in `P^{k-1}(F_p)`.
    pub message: Vec<u32>,
    pub codeword: Vec<u32>,
    pub support: Vec<usize>,
}

impl CodewordClass {
    pub fn weight(&self) -> usize {
        self.support.len()
    }
}

fn reduced_columns(g: &GeneratorMatrix, p: u32, budget: &Budget) -> Result<Vec<Vec<u32>>> {
    good_reduction(&g.lambda.matrix(), p, budget)
}

fn class_of(forms: &[Vec<u32>], x: &[u32], p: u32) -> CodewordClass {
    let codeword: Vec<u32> = forms.iter().map(|f| dot_mod(f, x, p)).collect();
    let support = (0..codeword.len()).filter(|&i| codeword[i] != 0).collect();
    CodewordClass {
        message: x.to_vec(),
        codeword,
        support,
    }
}

/// Minimum nonzero weight over `F_p`, by scanning every projective message.
pub fn min_distance(g: &GeneratorMatrix, p: u32, budget: &Budget) -> Result<usize> {
    let forms = reduced_columns(g, p, budget)?;
    let k = g.k();
    let total = projective_count(p, k);
    budget.check_scan(total)?;
    Ok((0..total as u64)
        .into_par_iter()
        .map(|i| {
            let x = projective_point(p, k, u128::from(i));
            forms.iter().filter(|f| dot_mod(f, &x, p) != 0).count()
        })
        .min()
        .unwrap_or(0))
}

/// Projective classes of minimal codewords of weight at most `w` over `F_p`.
///
/// A codeword is minimal when the forms vanishing on its message have rank
/// `k - 1`, so no smaller support carries a codeword.
pub fn minimal_codewords_upto(
    g: &GeneratorMatrix,
    w: usize,
    p: u32,
    budget: &Budget,
) -> Result<Vec<CodewordClass>> {
    if w == 0 {
        return Ok(Vec::new());
    }
    let forms = reduced_columns(g, p, budget)?;
    let k = g.k();
    let hits = scan_projective(p, k, budget, |x| {
        let zeros: Vec<Vec<u32>> = forms
            .iter()
            .filter(|f| dot_mod(f, x, p) == 0)
            .cloned()
            .collect();
        forms.len() - zeros.len() <= w && rank_mod(&zeros, p) + 1 == k
    })?;
    Ok(hits.iter().map(|x| class_of(&forms, x, p)).collect())
}

/// Minimum-weight projective classes over `F_p`.
pub fn minimum_weight_classes(
    g: &GeneratorMatrix,
    p: u32,
    budget: &Budget,
) -> Result<Vec<CodewordClass>> {
    let d = min_distance(g, p, budget)?;
    let forms = reduced_columns(g, p, budget)?;
    let hits = scan_projective(p, g.k(), budget, |x| {
        forms.iter().filter(|f| dot_mod(f, x, p) != 0).count() == d
    })?;
    Ok(hits.iter().map(|x| class_of(&forms, x, p)).collect())
}
