//! Interpolating finite point sets in `P^2` with connecting lines.
//!
//! For `X = {P_1, …, P_m}` (not all collinear), every line through two points
//! of `X` is taken `s - 1` times, where `s` is the number of points of `X` on
//! it. Each `P_i` then lies on exactly `m - 1` of these lines counted with
//! multiplicity, and every other intersection point on at most `m - 2`, so
//! `V_{|Λ_X| - m + 2}(Λ_X) = X`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactalg::modp::primitive_integer;
use crate::exactalg::{FieldSpec, Matrix, Scalar};
use crate::forms::{Arrangement, FormList, LinearForm, LinearSpan};
use crate::gsc::{radical_equals_arrangement, EqualityReport, Gsc};

const Q: FieldSpec = FieldSpec::Rational;

/// A point of `P^2` as a primitive integer triple with first nonzero entry
/// positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([BigInt; 3]);

fn primitive(v: [BigInt; 3]) -> Option<[BigInt; 3]> {
    let scalars: Vec<Scalar> = v.iter().map(|x| Q.from_bigint(x)).collect();
    if scalars.iter().all(Scalar::is_zero) {
        return None;
    }
    let ints = primitive_integer(&scalars)?;
    Some([ints[0].clone(), ints[1].clone(), ints[2].clone()])
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

impl ProjPoint {
    pub fn new(coords: [BigInt; 3]) -> Result<Self> {
        primitive(coords)
            .map(ProjPoint)
            .ok_or_else(|| Error::Invalid("[0,0,0] is not a projective point".into()))
    }

    pub fn from_ints(c: [i64; 3]) -> Result<Self> {
        ProjPoint::new(c.map(BigInt::from))
    }

    /// From rational homogeneous coordinates; denominators are cleared.
    pub fn from_scalars(c: &[Scalar]) -> Result<Self> {
        if c.len() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: c.len(),
            });
        }
        let ints = primitive_integer(c)
            .ok_or_else(|| Error::Invalid("planar points need rational coordinates".into()))?;
        ProjPoint::new([ints[0].clone(), ints[1].clone(), ints[2].clone()])
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.0
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.0.iter().map(|x| Q.from_bigint(x)).collect()
    }

    /// The ideal of the point: the two-dimensional span of forms vanishing
    /// there.
    pub fn ideal(&self) -> LinearSpan {
        let row = Matrix::from_rows(Q, 3, vec![self.to_scalars()]).expect("3 coordinates");
        LinearSpan::from_matrix(&row.kernel_basis())
    }

    /// The line `ax + by + cz` dual to `[a, b, c]`.
    pub fn dual_line(&self) -> LinearForm {
        LinearForm::new(self.to_scalars()).expect("nonzero point")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.0[0], self.0[1], self.0[2])
    }
}

/// Deduplicates the input and checks there are at least three points, not
/// all on one line. Order of first appearance is kept.
pub fn point_set(points: &[ProjPoint]) -> Result<Vec<ProjPoint>> {
    let mut out: Vec<ProjPoint> = Vec::new();
    for p in points {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    if out.len() < 3 {
        return Err(Error::Invalid(format!(
            "need at least 3 distinct points, got {}",
            out.len()
        )));
    }
    let line = cross(&out[0].0, &out[1].0);
    if out.iter().all(|p| dot(&line, &p.0).is_zero()) {
        return Err(Error::Invalid("all points are collinear".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingLine {
    pub form: LinearForm,
    /// Primitive integer coefficients of the line.
    pub coeffs: [BigInt; 3],
    /// Zero-based indices into `X` of the points on the line.
    pub points_on: Vec<usize>,
    /// `s - 1` for `s` points on the line.
    pub multiplicity: usize,
}

/// Every line through two points of `X`, in order of the first pair
/// `(i, j)` it contains.
pub fn connecting_lines(points: &[ProjPoint]) -> Result<Vec<ConnectingLine>> {
    let x = point_set(points)?;
    let m = x.len();
    let mut covered = vec![vec![false; m]; m];
    let mut lines = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if covered[i][j] {
                continue;
            }
            let coeffs = primitive(cross(&x[i].0, &x[j].0)).expect("distinct points");
            let on: Vec<usize> = (0..m)
                .filter(|&t| dot(&coeffs, &x[t].0).is_zero())
                .collect();
            for &a in &on {
                for &b in &on {
                    covered[a][b] = true;
                }
            }
            let scalars: Vec<Scalar> = coeffs.iter().map(|c| Q.from_bigint(c)).collect();
            lines.push(ConnectingLine {
                form: LinearForm::new(scalars)?,
                coeffs,
                multiplicity: on.len() - 1,
                points_on: on,
            });
        }
    }
    Ok(lines)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: ProjPoint,
    /// Lines through the point counted with multiplicity.
    pub nu: usize,
    /// Distinct lines through the point.
    pub lines: usize,
    pub in_x: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityProfile {
    /// Points of `X` first (in input order), then the others in canonical order.
    pub table: Vec<SingularPoint>,
    pub profile_ok: bool,
}

/// Intersection points of distinct connecting lines with their multiplicities.
/// The profile is good when `ν = m - 1` on `X` and `ν ≤ m - 2` elsewhere.
pub fn singularity_profile(lines: &[ConnectingLine], points: &[ProjPoint]) -> SingularityProfile {
    let m = points.len();
    let mut found: BTreeMap<ProjPoint, ()> = BTreeMap::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(q) = primitive(cross(&a.coeffs, &b.coeffs)) {
                found.insert(ProjPoint(q), ());
            }
        }
    }
    let describe = |q: &ProjPoint| {
        let through: Vec<&ConnectingLine> = lines
            .iter()
            .filter(|l| dot(&l.coeffs, &q.0).is_zero())
            .collect();
        SingularPoint {
            point: q.clone(),
            nu: through.iter().map(|l| l.multiplicity).sum(),
            lines: through.len(),
            in_x: points.contains(q),
        }
    };
    let mut table: Vec<SingularPoint> = points
        .iter()
        .filter(|p| found.contains_key(*p))
        .map(describe)
        .collect();
    table.extend(found.keys().filter(|q| !points.contains(q)).map(describe));
    let all_of_x = table.iter().filter(|s| s.in_x).count() == m;
    let profile_ok = all_of_x
        && table
            .iter()
            .all(|s| if s.in_x { s.nu == m - 1 } else { s.nu + 2 <= m });
    SingularityProfile { table, profile_ok }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoincareCheck {
    /// Sum of Möbius values over the rank-2 flats of the dual arrangement.
    pub sum_mu: i64,
    pub lambda_size: usize,
    pub matches: bool,
}

/// Computes the rank-2 Möbius sum of the line arrangement dual to `X`
/// directly from its intersection lattice and compares it with `|Λ_X|`.
pub fn poincare_crosscheck(points: &[ProjPoint]) -> Result<PoincareCheck> {
    let x = point_set(points)?;
    let duals: Vec<[BigInt; 3]> = x.iter().map(|p| p.0.clone()).collect();
    // rank-2 flats: the distinct intersection points of the dual lines
    let mut flats: BTreeMap<[BigInt; 3], Vec<usize>> = BTreeMap::new();
    for i in 0..duals.len() {
        for j in i + 1..duals.len() {
            let q = primitive(cross(&duals[i], &duals[j])).expect("distinct dual lines");
            flats.entry(q).or_default();
        }
    }
    for (q, above) in flats.iter_mut() {
        *above = (0..duals.len())
            .filter(|&t| dot(&duals[t], q).is_zero())
            .collect();
    }
    // μ(bottom) = 1, μ(line) = -1, μ(flat) = -(μ(bottom) + Σ_{lines ⊇ flat} μ(line))
    let mu_bottom: i64 = 1;
    let mu_line: i64 = -mu_bottom;
    let sum_mu: i64 = flats
        .values()
        .map(|above| -(mu_bottom + mu_line * above.len() as i64))
        .sum();
    let lambda_size: usize = connecting_lines(&x)?.iter().map(|l| l.multiplicity).sum();
    Ok(PoincareCheck {
        sum_mu,
        lambda_size,
        matches: sum_mu == lambda_size as i64,
    })
}

#[derive(Clone, Debug)]
pub struct PlanarInterpolation {
    pub points: Vec<ProjPoint>,
    pub lines: Vec<ConnectingLine>,
    pub lambda: FormList,
    pub a: usize,
    pub profile: SingularityProfile,
    pub verification: EqualityReport,
}

impl PlanarInterpolation {
    pub fn gsc(&self) -> Gsc {
        Gsc::new(self.lambda.clone(), self.a).expect("planar output is a valid GSC")
    }

    pub fn point_ideals(&self) -> Vec<LinearSpan> {
        self.points.iter().map(ProjPoint::ideal).collect()
    }
}

pub fn planar_interpolate(points: &[ProjPoint], budget: &Budget) -> Result<PlanarInterpolation> {
    let x = point_set(points)?;
    let m = x.len();
    let lines = connecting_lines(&x)?;
    let forms: Vec<LinearForm> = lines
        .iter()
        .flat_map(|l| std::iter::repeat_n(l.form.clone(), l.multiplicity))
        .collect();
    let lambda = FormList::new(Q, 3, forms)?;
    let a = lambda.len() + 2 - m;
    let profile = singularity_profile(&lines, &x);
    if !profile.profile_ok {
        return Err(Error::Verification(
            "connecting lines do not have the expected singularity profile".into(),
        ));
    }
    let target = Arrangement::from_spans(x.iter().map(ProjPoint::ideal).collect())?;
    let verification = radical_equals_arrangement(&Gsc::new(lambda.clone(), a)?, &target, budget)?;
    if !verification.equal {
        return Err(Error::Verification(format!(
            "radical of I_{a}(Λ_X) differs from the ideal of X ({} missing, {} extra)",
            verification.missing.len(),
            verification.extra.len()
        )));
    }
    Ok(PlanarInterpolation {
        points: x,
        lines,
        lambda,
        a,
        profile,
        verification,
    })
}

/// Whether three points are collinear; exposed for property tests.
pub fn collinear(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    dot(&cross(&a.0, &b.0), &c.0).is_zero()
}

/// Number of points of `X` on the line with integer coefficients `line`.
pub fn points_on_line(line: &[BigInt; 3], points: &[ProjPoint]) -> usize {
    points.iter().filter(|p| dot(line, &p.0).is_zero()).count()
}
