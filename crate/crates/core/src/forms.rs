//! Linear forms, lists of forms, linear spans and subspace arrangements.
//!
//! A [`LinearSpan`] stands for the linear prime ideal generated by its rows;
//! its zero set is a projective subspace of codimension equal to the rank.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::modp::primitive_integer;
use crate::exactalg::{span_contains, FieldSpec, Matrix, Scalar};

/// Default variable names: `x, y, z` up to three variables, `x1..xk` beyond.
pub fn default_variables(k: usize) -> Vec<String> {
    if k <= 3 {
        ["x", "y", "z"][..k].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=k).map(|i| format!("x{i}")).collect()
    }
}

/// Scales a nonzero coefficient vector so its first nonzero entry is 1.
pub fn canonicalize(coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
    let lead = coeffs
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(Error::ZeroForm)?;
    let inv = lead.inv().expect("nonzero");
    Ok(coeffs.iter().map(|c| c * &inv).collect())
}

/// A nonzero linear form, stored monic in its first nonzero coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if let Some(first) = coeffs.first() {
            let f = first.field();
            if let Some(bad) = coeffs.iter().find(|c| c.field() != f) {
                return Err(Error::FieldMismatch(f, bad.field()));
            }
        }
        Ok(LinearForm {
            coeffs: canonicalize(&coeffs)?,
        })
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Result<Self> {
        LinearForm::new(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// The `i`-th coordinate form `x_i` (zero-based) in `k` variables.
    pub fn coordinate(field: FieldSpec, k: usize, i: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs[i] = field.one();
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn field(&self) -> FieldSpec {
        self.coeffs[0].field()
    }

    /// Number of variables.
    pub fn ambient(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                found: point.len(),
            });
        }
        let mut acc = self.field().zero();
        for (c, v) in self.coeffs.iter().zip(point) {
            acc = acc.try_add(&c.try_mul(v)?)?;
        }
        Ok(acc)
    }

    /// Renders the form as an integer combination of `vars` when the field is
    /// the rationals (the primitive integer multiple, e.g. `2x+y-2z`), or with
    /// residues in `[0, p)` otherwise.
    pub fn render(&self, vars: &[String]) -> String {
        let shown: Vec<String> = match primitive_integer(&self.coeffs) {
            Some(ints) => ints.iter().map(|v| v.to_string()).collect(),
            None => self.coeffs.iter().map(|c| c.to_string()).collect(),
        };
        render_terms(&shown, vars)
    }
}

fn render_terms(coeffs: &[String], vars: &[String]) -> String {
    let mut out = String::new();
    for (c, v) in coeffs.iter().zip(vars) {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c.as_str()),
        };
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if mag != "1" {
            out.push_str(mag);
        }
        out.push_str(v);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The list `Λ = (ℓ_1, …, ℓ_n)`: ordered, repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormList {
    field: FieldSpec,
    k: usize,
    forms: Vec<LinearForm>,
}

impl FormList {
    pub fn new(field: FieldSpec, k: usize, forms: Vec<LinearForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::Invalid("a form list needs at least one form".into()));
        }
        for f in &forms {
            if f.ambient() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: f.ambient(),
                });
            }
            if f.field() != field {
                return Err(Error::FieldMismatch(field, f.field()));
            }
        }
        Ok(FormList { field, k, forms })
    }

    pub fn from_int_rows(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let k = rows.first().map_or(0, |r| r.len());
        let forms = rows
            .iter()
            .map(|r| LinearForm::from_ints(field, r))
            .collect::<Result<Vec<_>>>()?;
        FormList::new(field, k, forms)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Number of variables `k`.
    pub fn ambient(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn get(&self, i: usize) -> &LinearForm {
        &self.forms[i]
    }

    /// Coefficient matrix with one row per form.
    pub fn matrix(&self) -> Matrix {
        let rows = self.forms.iter().map(|f| f.coeffs.clone()).collect();
        Matrix::from_rows(self.field, self.k, rows).expect("forms share field and length")
    }

    /// Whether the forms generate the irrelevant ideal `⟨x_1, …, x_k⟩`.
    pub fn is_essential(&self) -> bool {
        self.matrix().rank() == self.k
    }

    /// Span of the forms at the given (zero-based) positions.
    pub fn span_of_indices(&self, idx: &[usize]) -> LinearSpan {
        LinearSpan::from_matrix(&self.matrix().select_rows(idx))
    }

    pub fn render(&self, vars: &[String]) -> Vec<String> {
        self.forms.iter().map(|f| f.render(vars)).collect()
    }
}

/// Free-function form of [`FormList::is_essential`].
pub fn is_essential(lambda: &FormList) -> bool {
    lambda.is_essential()
}

/// A linear subspace of forms, kept as a canonical reduced row-echelon basis.
/// Two spans are equal exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSpan {
    basis: Matrix,
}

fn lead(row: &[Scalar]) -> usize {
    row.iter().position(|c| !c.is_zero()).unwrap_or(row.len())
}

// Forms sort by the position of their leading variable, then coefficients, so
// that x sorts before y and x+y before x+2y.
impl Ord for LinearForm {
    fn cmp(&self, other: &Self) -> Ordering {
        lead(&self.coeffs)
            .cmp(&lead(&other.coeffs))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for LinearForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Spans sort by codimension, then by pivot columns, then by basis entries.
impl Ord for LinearSpan {
    fn cmp(&self, other: &Self) -> Ordering {
        let pivots = |s: &LinearSpan| -> Vec<usize> { s.basis.row_iter().map(lead).collect() };
        self.codim()
            .cmp(&other.codim())
            .then_with(|| pivots(self).cmp(&pivots(other)))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl PartialOrd for LinearSpan {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl LinearSpan {
    pub fn from_matrix(m: &Matrix) -> Self {
        LinearSpan {
            basis: m.row_space_basis(),
        }
    }

    /// The span of a nonempty collection of forms.
    pub fn span_of(forms: &[LinearForm]) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::Invalid("span of an empty collection".into()))?;
        let k = first.ambient();
        let list = FormList::new(first.field(), k, forms.to_vec())?;
        Ok(LinearSpan::from_matrix(&list.matrix()))
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Number of minimal generators, i.e. the codimension of the zero set.
    pub fn codim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &LinearSpan) -> Result<bool> {
        span_contains(&other.basis, &self.basis)
    }

    pub fn contains_form(&self, f: &LinearForm) -> Result<bool> {
        let row = Matrix::from_rows(f.field(), f.ambient(), vec![f.coeffs.to_vec()])?;
        span_contains(&row, &self.basis)
    }

    /// Basis of the common zero set of the span inside `K^k`.
    pub fn zero_set_basis(&self) -> Matrix {
        self.basis.kernel_basis()
    }

    pub fn generators(&self) -> Vec<LinearForm> {
        self.basis
            .row_iter()
            .map(|r| LinearForm::new(r.to_vec()).expect("basis rows are nonzero"))
            .collect()
    }

    pub fn render(&self, vars: &[String]) -> String {
        let gens: Vec<String> = self.generators().iter().map(|g| g.render(vars)).collect();
        format!("<{}>", gens.join(", "))
    }
}

/// Why a candidate arrangement was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum ValidationFailure {
    TooFewComponents {
        m: usize,
    },
    DimensionMismatch {
        component: usize,
        expected: usize,
        found: usize,
    },
    DegenerateComponent {
        component: usize,
        codim: usize,
        ambient: usize,
    },
    Comparable {
        smaller: usize,
        larger: usize,
    },
    NotEssential {
        rank: usize,
        ambient: usize,
    },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::TooFewComponents { m } => {
                write!(f, "need at least 2 components, got {m}")
            }
            ValidationFailure::DimensionMismatch {
                component,
                expected,
                found,
            } => write!(
                f,
                "component {component} has {found} coordinates, expected {expected}"
            ),
            ValidationFailure::DegenerateComponent {
                component,
                codim,
                ambient,
            } => write!(
                f,
                "component {component} has codimension {codim}, outside 1..={}",
                ambient - 1
            ),
            ValidationFailure::Comparable { smaller, larger } => write!(
                f,
                "ideal of component {smaller} is contained in that of component {larger}"
            ),
            ValidationFailure::NotEssential { rank, ambient } => write!(
                f,
                "components generate a rank {rank} ideal, not the irrelevant ideal of rank {ambient}"
            ),
        }
    }
}

/// An essential subspace arrangement `V = V_1 ∪ … ∪ V_m`, each component given
/// by its (linear prime) defining ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: FieldSpec,
    k: usize,
    components: Vec<LinearSpan>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
    pub codims: Vec<usize>,
    pub arrangement: Option<Arrangement>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the standing hypotheses on an arrangement given by generator
/// matrices of its component ideals, normalizing each to a canonical span.
pub fn validate_arrangement(field: FieldSpec, k: usize, generators: &[Matrix]) -> ValidationReport {
    let mut failures = Vec::new();
    let m = generators.len();
    if m < 2 {
        failures.push(ValidationFailure::TooFewComponents { m });
    }
    let mut spans = Vec::with_capacity(m);
    for (i, g) in generators.iter().enumerate() {
        if g.cols() != k || g.field() != field {
            failures.push(ValidationFailure::DimensionMismatch {
                component: i,
                expected: k,
                found: g.cols(),
            });
            continue;
        }
        spans.push((i, LinearSpan::from_matrix(g)));
    }
    let codims: Vec<usize> = spans.iter().map(|(_, s)| s.codim()).collect();
    for (i, s) in &spans {
        if s.codim() == 0 || s.codim() >= k {
            failures.push(ValidationFailure::DegenerateComponent {
                component: *i,
                codim: s.codim(),
                ambient: k,
            });
        }
    }
    for (a, (i, si)) in spans.iter().enumerate() {
        for (j, sj) in spans.iter().skip(a + 1) {
            if sj.contains(si).unwrap_or(false) {
                failures.push(ValidationFailure::Comparable {
                    smaller: *i,
                    larger: *j,
                });
            } else if si.contains(sj).unwrap_or(false) {
                failures.push(ValidationFailure::Comparable {
                    smaller: *j,
                    larger: *i,
                });
            }
        }
    }
    if !spans.is_empty() {
        let stacked = spans
            .iter()
            .skip(1)
            .fold(spans[0].1.basis.clone(), |acc, (_, s)| {
                acc.vstack(&s.basis).expect("checked shapes")
            });
        let rank = stacked.rank();
        if rank != k {
            failures.push(ValidationFailure::NotEssential { rank, ambient: k });
        }
    }
    let arrangement = failures.is_empty().then(|| Arrangement {
        field,
        k,
        components: spans.into_iter().map(|(_, s)| s).collect(),
    });
    ValidationReport {
        failures,
        codims,
        arrangement,
    }
}

impl Arrangement {
    pub fn new(field: FieldSpec, k: usize, generators: &[Matrix]) -> Result<Self> {
        let report = validate_arrangement(field, k, generators);
        report
            .arrangement
            .ok_or(Error::InvalidArrangement(report.failures))
    }

    pub fn from_spans(spans: Vec<LinearSpan>) -> Result<Self> {
        let first = spans.first().ok_or(Error::InvalidArrangement(vec![
            ValidationFailure::TooFewComponents { m: 0 },
        ]))?;
        let (field, k) = (first.field(), first.ambient());
        let gens: Vec<Matrix> = spans.into_iter().map(|s| s.basis).collect();
        Arrangement::new(field, k, &gens)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.k
    }

    pub fn components(&self) -> &[LinearSpan] {
        &self.components
    }

    pub fn codims(&self) -> Vec<usize> {
        self.components.iter().map(LinearSpan::codim).collect()
    }

    pub fn is_essential(&self) -> bool {
        let stacked = self
            .components
            .iter()
            .skip(1)
            .fold(self.components[0].basis.clone(), |acc, s| {
                acc.vstack(&s.basis).expect("validated shapes")
            });
        stacked.rank() == self.k
    }
}
