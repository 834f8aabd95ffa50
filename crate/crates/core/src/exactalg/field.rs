//! Coefficient fields: the rationals and prime fields GF(p).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default prime for the modular fast path.
pub const DEFAULT_PRIME: u32 = 32003;

/// Tag selecting the coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Gfp(u32),
}

impl Field {
    /// GF(p) for a prime `p < 2^31`.
    pub fn gfp(p: u32) -> Result<Field> {
        if p >= 1 << 31 {
            return Err(Error::Field(format!("prime {p} too large (must be < 2^31)")));
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        Ok(Field::Gfp(p))
    }

    pub fn zero(self) -> FieldElement {
        match self {
            Field::Q => FieldElement::Q(BigRational::zero()),
            Field::Gfp(p) => FieldElement::Fp { value: 0, p },
        }
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        match self {
            Field::Q => FieldElement::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Gfp(p) => FieldElement::Fp { value: v.rem_euclid(p as i64) as u32, p },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> FieldElement {
        match self {
            Field::Q => FieldElement::Q(BigRational::from_integer(v.clone())),
            Field::Gfp(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElement::Fp { value: r.to_u32().expect("reduced residue fits"), p }
            }
        }
    }

    /// Image of a rational number; fails in GF(p) when p divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<FieldElement> {
        match self {
            Field::Q => Ok(FieldElement::Q(q.clone())),
            Field::Gfp(p) => {
                let den = self.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(Error::Field(format!("denominator {} vanishes mod {p}", q.denom())));
                }
                Ok(self.from_bigint(q.numer()).mul(&den.inv()))
            }
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Field::Q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "q"),
            Field::Gfp(p) => write!(f, "gfp:{p}"),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar. Rationals are kept in lowest terms with a positive
/// denominator; residues mod p are kept in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Q(BigRational),
    Fp { value: u32, p: u32 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Q(_) => Field::Q,
            FieldElement::Fp { p, .. } => Field::Gfp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Q(q) => q.is_zero(),
            FieldElement::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Q(q) => q.is_one(),
            FieldElement::Fp { value, .. } => *value == 1,
        }
    }

    /// True when the printed form would carry a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Q(q) => q.is_negative(),
            FieldElement::Fp { .. } => false,
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a + b),
            (FieldElement::Fp { value: a, p }, FieldElement::Fp { value: b, p: q }) => {
                debug_assert_eq!(p, q);
                let s = *a as u64 + *b as u64;
                FieldElement::Fp { value: (s % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch in addition"),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a * b),
            (FieldElement::Fp { value: a, p }, FieldElement::Fp { value: b, p: q }) => {
                debug_assert_eq!(p, q);
                FieldElement::Fp { value: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch in multiplication"),
        }
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Q(a) => FieldElement::Q(-a),
            FieldElement::Fp { value, p } => FieldElement::Fp { value: if *value == 0 { 0 } else { p - value }, p: *p },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElement::Q(a) => FieldElement::Q(a.recip()),
            FieldElement::Fp { value, p } => {
                let mut base = *value as u64;
                let m = *p as u64;
                let mut e = m - 2;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                FieldElement::Fp { value: acc as u32, p: *p }
            }
        }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The rational value, if this is an element of Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Q(q) => Some(q),
            FieldElement::Fp { .. } => None,
        }
    }

    /// Integer value when the element is an integer (residues count as integers).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Q(q) if q.is_integer() => q.to_integer().to_i64(),
            FieldElement::Q(_) => None,
            FieldElement::Fp { value, .. } => Some(*value as i64),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}
