use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// `F_p`, rejecting composites and `p >= 2^31`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    /// Parses `rational` (or `q`) and `fp:<p>`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t.to_ascii_lowercase().as_str() {
            "rational" | "q" => return Ok(FieldSpec::Rational),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Invalid(format!("bad prime in field spec {t:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Invalid(format!("unknown field {t:?}")))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// Whether the field has at least `n` distinct elements.
    pub fn has_at_least(self, n: usize) -> bool {
        match self {
            FieldSpec::Rational => true,
            FieldSpec::Prime(p) => n <= p as usize,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(i64::from(p)) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u32().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// Maps a rational into the field; fails in `F_p` when `p` divides the
    /// denominator.
    pub fn from_rational(self, v: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rational => Ok(Scalar::Rational(v.clone())),
            FieldSpec::Prime(p) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                let inv = den.inv().ok_or(Error::BadReduction(p))?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses an integer or a `p/q` rational literal into the field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::Invalid(format!("bad coefficient {t:?}"));
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self * other)
    }
}

fn pow_mod(base: u32, mut e: u32, m: u32) -> u32 {
    let m64 = u64::from(m);
    let mut b = u64::from(base) % m64;
    let mut acc = 1u64 % m64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m64;
        }
        b = b * b % m64;
        e >>= 1;
    }
    acc as u32
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "scalar arithmetic across fields {} and {}",
        a.field(),
        b.field()
    )
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Residue {
                value: ((u64::from(*a) + u64::from(*b)) % u64::from(*p)) as u32,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Residue {
                value: (u64::from(*a) * u64::from(*b) % u64::from(*p)) as u32,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for canonical sorting: by field, then by value
/// (rationals numerically, residues by representative in `[0, p)`).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) => (p, a).cmp(&(q, b)),
            _ => self.field().cmp(&other.field()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}
