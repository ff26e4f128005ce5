//! Realizing an essential subspace arrangement as a generalized star
//! configuration.
//!
//! With `ℵ = 1 + Σ (c_i - 1)`, each component `V_i` of codimension `c_i`
//! receives a frame of `ℵ` forms from its ideal, any `c_i` of which generate
//! it. Taking `Λ` to be the union of the frames and `a = n - ℵ + 1`, every
//! `ℵ`-subset of `Λ` contains `c_i` forms from some frame (the deficits
//! `c_i - count_i` sum to `m - 1 < m`), so `√I_a(Λ) = I(V)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Matrix, Scalar};
use crate::forms::{Arrangement, FormList, LinearForm, LinearSpan};
use crate::gsc::{radical_equals_arrangement, EqualityReport, Gsc};
use crate::subsets::{binomial, chunked, Combinations};

/// A form that more than one frame produced; it appears in `Λ` once per copy
/// needed by the frame that uses it most.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedupEntry {
    pub form: LinearForm,
    pub components: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct InterpolationResult {
    pub lambda: FormList,
    pub a: usize,
    pub aleph: usize,
    pub frames: Vec<FormList>,
    /// For each frame, the positions in `lambda` its forms occupy.
    pub frame_positions: Vec<Vec<usize>>,
    pub dedup_log: Vec<DedupEntry>,
    pub components: Vec<LinearSpan>,
    pub verification: EqualityReport,
}

impl InterpolationResult {
    pub fn gsc(&self) -> Gsc {
        Gsc::new(self.lambda.clone(), self.a).expect("interpolation output is a valid GSC")
    }
}

pub fn aleph(codims: &[usize]) -> usize {
    1 + codims.iter().map(|c| c - 1).sum::<usize>()
}

/// The parameters `0, 1, …, ℵ-1`, or an error if the field is too small.
pub fn default_params(field: FieldSpec, aleph: usize) -> Result<Vec<Scalar>> {
    if !field.has_at_least(aleph) {
        return Err(Error::FieldTooSmall {
            p: field.characteristic(),
            needed: aleph,
        });
    }
    Ok((0..aleph).map(|t| field.from_int(t as i64)).collect())
}

/// Vandermonde frame of a span: `f_j = Σ_u t_j^u g_u` over the canonical
/// basis `g_0, …, g_{c-1}`. Any `c` of the forms are independent; this is
/// checked exhaustively rather than assumed.
pub fn component_frame(span: &LinearSpan, aleph: usize, params: &[Scalar]) -> Result<FormList> {
    if params.len() != aleph {
        return Err(Error::DimensionMismatch {
            expected: aleph,
            found: params.len(),
        });
    }
    let field = span.field();
    if !field.has_at_least(aleph) {
        return Err(Error::FieldTooSmall {
            p: field.characteristic(),
            needed: aleph,
        });
    }
    for (i, t) in params.iter().enumerate() {
        if t.field() != field {
            return Err(Error::FieldMismatch(field, t.field()));
        }
        if params[..i].contains(t) {
            return Err(Error::Invalid(format!("repeated frame parameter {t}")));
        }
    }
    let k = span.ambient();
    let c = span.codim();
    let basis = span.basis();
    let forms = params
        .iter()
        .map(|t| {
            let mut coeffs = vec![field.zero(); k];
            let mut power = field.one();
            for u in 0..c {
                for (x, g) in coeffs.iter_mut().zip(basis.row(u)) {
                    *x = &*x + &(&power * g);
                }
                power = &power * t;
            }
            LinearForm::new(coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    let frame = FormList::new(field, k, forms)?;
    let m = frame.matrix();
    for idx in Combinations::new(aleph, c.min(aleph)) {
        if m.select_rows(&idx).rank() != c {
            return Err(Error::Verification(format!(
                "frame forms {idx:?} do not generate the component"
            )));
        }
    }
    Ok(frame)
}

pub fn interpolate(arrangement: &Arrangement, budget: &Budget) -> Result<InterpolationResult> {
    let field = arrangement.field();
    let k = arrangement.ambient();
    let codims = arrangement.codims();
    let aleph = aleph(&codims);
    let params = default_params(field, aleph)?;
    let frames = arrangement
        .components()
        .iter()
        .map(|s| component_frame(s, aleph, &params))
        .collect::<Result<Vec<_>>>()?;

    let mut lambda: Vec<LinearForm> = Vec::new();
    let mut frame_positions = Vec::with_capacity(frames.len());
    let mut owners: BTreeMap<LinearForm, Vec<usize>> = BTreeMap::new();
    for (i, frame) in frames.iter().enumerate() {
        let mut positions = Vec::with_capacity(aleph);
        let mut used: BTreeMap<&LinearForm, usize> = BTreeMap::new();
        for f in frame.forms() {
            let nth = used.entry(f).or_insert(0);
            let existing: Vec<usize> = lambda
                .iter()
                .enumerate()
                .filter(|(_, g)| *g == f)
                .map(|(j, _)| j)
                .collect();
            let pos = match existing.get(*nth) {
                Some(&j) => j,
                None => {
                    lambda.push(f.clone());
                    lambda.len() - 1
                }
            };
            *nth += 1;
            positions.push(pos);
            let o = owners.entry(f.clone()).or_default();
            if o.last() != Some(&i) {
                o.push(i);
            }
        }
        frame_positions.push(positions);
    }
    let dedup_log = owners
        .into_iter()
        .filter(|(_, comps)| comps.len() > 1)
        .map(|(form, components)| DedupEntry { form, components })
        .collect();

    let lambda = FormList::new(field, k, lambda)?;
    let a = lambda.len() - aleph + 1;
    let g = Gsc::new(lambda.clone(), a)?;
    let verification = radical_equals_arrangement(&g, arrangement, budget)?;
    if !verification.equal {
        return Err(Error::Verification(format!(
            "radical of I_{a} has {} missing and {} extra primes",
            verification.missing.len(),
            verification.extra.len()
        )));
    }
    Ok(InterpolationResult {
        lambda,
        a,
        aleph,
        frames,
        frame_positions,
        dedup_log,
        components: arrangement.components().to_vec(),
        verification,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PigeonholeReport {
    pub holds: bool,
    pub subsets_checked: u128,
    /// First `ℵ`-subset (zero-based) that covers no component, if any.
    pub counterexample: Option<Vec<usize>>,
}

/// Checks that every `ℵ`-subset of `Λ` contains forms spanning the ideal of
/// some component.
pub fn verify_pigeonhole(r: &InterpolationResult, budget: &Budget) -> Result<PigeonholeReport> {
    let n = r.lambda.len();
    let total = binomial(n, r.aleph);
    budget.check_subsets(total)?;
    let m = r.lambda.matrix();
    // membership[i][j]: form j lies in component i's ideal
    let membership: Vec<Vec<bool>> = r
        .components
        .iter()
        .map(|s| {
            r.lambda
                .forms()
                .iter()
                .map(|f| s.contains_form(f).expect("same ring"))
                .collect()
        })
        .collect();
    let covers = |idx: &[usize]| {
        r.components.iter().zip(&membership).any(|(s, inside)| {
            let hits: Vec<usize> = idx.iter().copied().filter(|&j| inside[j]).collect();
            hits.len() >= s.codim() && m.select_rows(&hits).rank() == s.codim()
        })
    };
    for batch in chunked(n, r.aleph, 4096) {
        let ok: Vec<bool> = batch.par_iter().map(|idx| covers(idx)).collect();
        if let Some(pos) = ok.iter().position(|&b| !b) {
            return Ok(PigeonholeReport {
                holds: false,
                subsets_checked: total,
                counterexample: Some(batch[pos].clone()),
            });
        }
    }
    Ok(PigeonholeReport {
        holds: true,
        subsets_checked: total,
        counterexample: None,
    })
}

/// Builds the arrangement `{span(Λ_i)}` from hand-picked frames and packages
/// them like [`interpolate`] output, so the pigeonhole property of a given
/// `Λ` can be checked. A form listed in several frames is stored once.
pub fn from_frames(
    field: FieldSpec,
    k: usize,
    frames: &[Vec<LinearForm>],
    budget: &Budget,
) -> Result<InterpolationResult> {
    let components = frames
        .iter()
        .map(|f| LinearSpan::span_of(f))
        .collect::<Result<Vec<_>>>()?;
    let gens: Vec<Matrix> = components.iter().map(|s| s.basis().clone()).collect();
    let arrangement = Arrangement::new(field, k, &gens)?;
    let aleph = aleph(&arrangement.codims());
    let mut lambda: Vec<LinearForm> = Vec::new();
    let mut frame_positions = Vec::new();
    let mut owners: BTreeMap<LinearForm, Vec<usize>> = BTreeMap::new();
    for (i, frame) in frames.iter().enumerate() {
        if frame.len() != aleph {
            return Err(Error::DimensionMismatch {
                expected: aleph,
                found: frame.len(),
            });
        }
        let mut positions = Vec::new();
        for f in frame {
            let pos = match lambda.iter().position(|g| g == f) {
                Some(j) if owners.get(f).is_some_and(|o| !o.contains(&i)) => j,
                _ => {
                    lambda.push(f.clone());
                    lambda.len() - 1
                }
            };
            positions.push(pos);
            let o = owners.entry(f.clone()).or_default();
            if !o.contains(&i) {
                o.push(i);
            }
        }
        frame_positions.push(positions);
    }
    let lambda = FormList::new(field, k, lambda)?;
    let a = lambda.len() - aleph + 1;
    let g = Gsc::new(lambda.clone(), a)?;
    let verification = radical_equals_arrangement(&g, &arrangement, budget)?;
    Ok(InterpolationResult {
        lambda,
        a,
        aleph,
        frames: frames
            .iter()
            .map(|f| FormList::new(field, k, f.clone()))
            .collect::<Result<_>>()?,
        frame_positions,
        dedup_log: owners
            .into_iter()
            .filter(|(_, c)| c.len() > 1)
            .map(|(form, components)| DedupEntry { form, components })
            .collect(),
        components: arrangement.components().to_vec(),
        verification,
    })
}
