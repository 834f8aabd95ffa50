//! Picard-lattice arithmetic on the blow-up of `P^n` along `X`, on `M_2` and
//! on its blow-up `M~_2`, with entries that are rational functions of the
//! symbols `n`, `r`, `k`; plus the vanishing-threshold formulas.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElement, MonomialOrder, Polynomial, Ring};

fn symbol_ring() -> &'static Arc<Ring> {
    static RING: OnceLock<Arc<Ring>> = OnceLock::new();
    RING.get_or_init(|| Ring::new(vec!["n".into(), "r".into(), "k".into()], Field::Q, MonomialOrder::Grevlex))
}

/// A rational function of `n`, `r`, `k` over ℚ.
#[derive(Clone, Debug)]
pub struct Sym {
    num: Polynomial,
    den: Polynomial,
}

impl Sym {
    pub fn int(v: i64) -> Sym {
        Sym::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn rational(q: BigRational) -> Sym {
        let ring = symbol_ring();
        Sym { num: Polynomial::constant(ring, FieldElement::Q(q)), den: ring.one() }
    }

    pub fn frac(a: i64, b: i64) -> Sym {
        Sym::rational(BigRational::new(a.into(), b.into()))
    }

    pub fn n() -> Sym {
        Sym::var(0)
    }

    pub fn r() -> Sym {
        Sym::var(1)
    }

    pub fn k() -> Sym {
        Sym::var(2)
    }

    fn var(i: usize) -> Sym {
        let ring = symbol_ring();
        Sym { num: ring.var(i), den: ring.one() }
    }

    /// Parses a polynomial expression in `n`, `r`, `k`.
    pub fn parse(text: &str) -> Result<Sym> {
        Ok(Sym::from_poly(symbol_ring().parse(text)?))
    }

    fn from_poly(p: Polynomial) -> Sym {
        Sym { num: p, den: symbol_ring().one() }
    }

    pub fn add(&self, o: &Sym) -> Sym {
        if self.den == o.den {
            return Sym { num: self.num.add(&o.num), den: self.den.clone() }.normalized();
        }
        Sym { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }.normalized()
    }

    pub fn neg(&self) -> Sym {
        Sym { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Sym) -> Sym {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Sym) -> Sym {
        Sym { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalized()
    }

    pub fn div(&self, o: &Sym) -> Result<Sym> {
        if o.num.is_zero() {
            return Err(Error::InvalidArgument("division by the zero expression".into()));
        }
        Ok(Sym { num: self.num.mul(&o.den), den: self.den.mul(&o.num) }.normalized())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Makes the denominator monic, and cancels it when it divides the
    /// numerator by a constant.
    fn normalized(self) -> Sym {
        if self.num.is_zero() {
            return Sym { num: self.num, den: symbol_ring().one() };
        }
        let lc = self.den.leading_coefficient().expect("nonzero denominator").inv();
        let (num, den) = (self.num.scale(&lc), self.den.scale(&lc));
        if num == den {
            return Sym::int(1);
        }
        Sym { num, den }
    }

    /// Value at rational `(n, r, k)`; `None` where the denominator vanishes.
    pub fn eval(&self, n: &BigRational, r: &BigRational, k: &BigRational) -> Option<BigRational> {
        let pt = [FieldElement::Q(n.clone()), FieldElement::Q(r.clone()), FieldElement::Q(k.clone())];
        let d = self.den.eval(&pt);
        if d.is_zero() {
            return None;
        }
        let v = self.num.eval(&pt).div(&d);
        v.as_rational().cloned()
    }

    pub fn eval_int(&self, n: i64, r: i64, k: i64) -> Option<BigRational> {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        self.eval(&q(n), &q(r), &q(k))
    }

    /// The constant value, when the expression has no symbols.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            let z = BigRational::zero();
            self.eval(&z, &z, &z)
        } else {
            None
        }
    }
}

impl PartialEq for Sym {
    fn eq(&self, o: &Sym) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            let c = self.den.leading_coefficient().expect("nonzero").inv();
            write!(f, "{}", self.num.scale(&c))
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<i64> for Sym {
    fn from(v: i64) -> Sym {
        Sym::int(v)
    }
}

/// The lattices modelled: `Pic` of the blow-up of `P^n` along `X` (basis
/// `H, E`), of `M_2` (basis `H, E`), and of `M~_2` (basis `H, E_1, E_2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    BlownUpPn,
    M2,
    M2Tilde,
}

impl Space {
    pub fn rank(self) -> usize {
        match self {
            Space::BlownUpPn | Space::M2 => 2,
            Space::M2Tilde => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::BlownUpPn => "blown-up-pn",
            Space::M2 => "m2",
            Space::M2Tilde => "m2-tilde",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A divisor class with symbolic coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorClass {
    pub space: Space,
    pub coeffs: Vec<Sym>,
}

impl DivisorClass {
    pub fn new(space: Space, coeffs: Vec<Sym>) -> Result<DivisorClass> {
        if coeffs.len() != space.rank() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a lattice of rank {}",
                coeffs.len(),
                space.rank()
            )));
        }
        Ok(DivisorClass { space, coeffs })
    }

    pub fn ints(space: Space, coeffs: &[i64]) -> Result<DivisorClass> {
        DivisorClass::new(space, coeffs.iter().map(|&c| Sym::int(c)).collect())
    }

    pub fn zero(space: Space) -> DivisorClass {
        DivisorClass { space, coeffs: vec![Sym::int(0); space.rank()] }
    }

    fn same_space(&self, o: &DivisorClass) -> Result<()> {
        if self.space != o.space {
            return Err(Error::SpaceMismatch(self.space.to_string(), o.space.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, o: &DivisorClass) -> Result<DivisorClass> {
        self.same_space(o)?;
        Ok(DivisorClass {
            space: self.space,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, o: &DivisorClass) -> Result<DivisorClass> {
        self.add(&o.scale(&Sym::int(-1)))
    }

    pub fn scale(&self, q: &Sym) -> DivisorClass {
        DivisorClass { space: self.space, coeffs: self.coeffs.iter().map(|c| c.mul(q)).collect() }
    }

    /// Coefficients at integer `(n, r, k)`.
    pub fn eval_int(&self, n: i64, r: i64, k: i64) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.eval_int(n, r, k)).collect()
    }

    /// True when one class is a scalar multiple of the other (all 2×2 minors vanish).
    pub fn proportional(&self, o: &DivisorClass) -> Result<bool> {
        self.same_space(o)?;
        let m = self.coeffs.len();
        for i in 0..m {
            for j in i + 1..m {
                if self.coeffs[i].mul(&o.coeffs[j]) != self.coeffs[j].mul(&o.coeffs[i]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Compact line-bundle notation, e.g. `O(-n-1, n-r-1, n-2r-2)`.
    pub fn bundle_notation(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string().replace([' ', '*'], "")).collect();
        format!("O({})", parts.join(", "))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}({})", self.space, parts.join(", "))
    }
}

/// Lattice operation for [`class_arith`].
#[derive(Clone, Debug)]
pub enum ClassOp {
    Add,
    /// Multiplies the first operand by the scalar; the second only fixes the space.
    Scale(Sym),
}

pub fn class_arith(a: &DivisorClass, b: &DivisorClass, op: ClassOp) -> Result<DivisorClass> {
    a.same_space(b)?;
    match op {
        ClassOp::Add => a.add(b),
        ClassOp::Scale(q) => Ok(a.scale(&q)),
    }
}

/// Canonical class: `(-n-1, codim-1)` with `codim = n - r` on the blow-up
/// of `P^n`, and `(-n-1, n-r-1, n-2r-2)` on `M~_2`.
pub fn canonical_class(space: Space, n: &Sym, r: &Sym) -> Result<DivisorClass> {
    let one = Sym::int(1);
    match space {
        Space::BlownUpPn => DivisorClass::new(space, vec![n.neg().sub(&one), n.sub(r).sub(&one)]),
        Space::M2Tilde => DivisorClass::new(
            space,
            vec![n.neg().sub(&one), n.sub(r).sub(&one), n.sub(&r.mul(&Sym::int(2))).sub(&Sym::int(2))],
        ),
        Space::M2 => Err(Error::InvalidArgument("the canonical class is modelled on blown-up-pn and m2-tilde".into())),
    }
}

/// Whether `n - 2r - 1 >= 2`, the standing assumption on `M~_2`.
pub fn m2_assumption_holds(n: i64, r: i64) -> bool {
    n - 2 * r > 2
}

/// `L_k = (2k-1)H - kE_1 - E_2` on `M~_2`.
pub fn lk_class(k: &Sym) -> DivisorClass {
    DivisorClass { space: Space::M2Tilde, coeffs: vec![k.mul(&Sym::int(2)).sub(&Sym::int(1)), k.neg(), Sym::int(-1)] }
}

/// The class `B = (2k-1, -k, -2)`.
pub fn kv_class() -> DivisorClass {
    let k = Sym::k();
    DivisorClass { space: Space::M2Tilde, coeffs: vec![k.mul(&Sym::int(2)).sub(&Sym::int(1)), k.neg(), Sym::int(-2)] }
}

/// Both sides of `B - K = (n-2r) L_α + (2,0,0)` with `α = (k+n-r-1)/(n-2r)`.
pub fn kv_sides(b: &DivisorClass) -> Result<(DivisorClass, DivisorClass)> {
    let (n, r, k) = (Sym::n(), Sym::r(), Sym::k());
    let lhs = b.sub(&canonical_class(Space::M2Tilde, &n, &r)?)?;
    let m = n.sub(&r.mul(&Sym::int(2)));
    let alpha = k.add(&n).sub(&r).sub(&Sym::int(1)).div(&m)?;
    let rhs = lk_class(&alpha).scale(&m).add(&DivisorClass::ints(Space::M2Tilde, &[2, 0, 0])?)?;
    Ok((lhs, rhs))
}

/// Symbolic check of the rewrite for `B = (2k-1, -k, -2)`.
pub fn verify_kv_rewrite() -> Result<bool> {
    verify_kv_rewrite_for(&kv_class())
}

pub fn verify_kv_rewrite_for(b: &DivisorClass) -> Result<bool> {
    let (lhs, rhs) = kv_sides(b)?;
    Ok(lhs == rhs)
}

/// Pullback along `M~_2 -> M_2`: `(a, b) ↦ (a, b, a + 2b)`.
pub fn pullback_h(c: &DivisorClass) -> Result<DivisorClass> {
    if c.space != Space::M2 {
        return Err(Error::SpaceMismatch(c.space.to_string(), Space::M2.to_string()));
    }
    let (a, b) = (&c.coeffs[0], &c.coeffs[1]);
    DivisorClass::new(Space::M2Tilde, vec![a.clone(), b.clone(), a.add(&b.mul(&Sym::int(2)))])
}

/// Which vanishing threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThresholdVariant {
    /// `k >= d(e+a-1) - (n+1)`.
    Little,
    /// `k > 3/2 (e+a-1) - (n+1)`.
    Veronese,
    /// `a > n - 3r - 1`, at twist `2a - 1`.
    Second,
}

impl FromStr for ThresholdVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "little" => Ok(ThresholdVariant::Little),
            "veronese" => Ok(ThresholdVariant::Veronese),
            "second" => Ok(ThresholdVariant::Second),
            other => Err(Error::InvalidArgument(format!("unknown threshold variant '{other}'"))),
        }
    }
}

impl fmt::Display for ThresholdVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdVariant::Little => "little",
            ThresholdVariant::Veronese => "veronese",
            ThresholdVariant::Second => "second",
        })
    }
}

/// An evaluated threshold: the bound on `k` (or on `a` for `Second`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdFormula {
    pub variant: ThresholdVariant,
    pub d: i64,
    pub e: i64,
    pub a: i64,
    pub n: i64,
    pub r: i64,
    pub bound: BigRational,
    pub strict: bool,
    /// The fixed twist `2a - 1` for `Second`.
    pub twist: Option<i64>,
}

impl ThresholdFormula {
    pub fn expression(&self) -> &'static str {
        match self.variant {
            ThresholdVariant::Little => "k >= d(e+a-1)-(n+1)",
            ThresholdVariant::Veronese => "k > 3/2(e+a-1)-(n+1)",
            ThresholdVariant::Second => "a > n-3r-1, k = 2a-1",
        }
    }

    /// Whether the bounded quantity `x` satisfies the inequality.
    pub fn holds(&self, x: i64) -> bool {
        let x = BigRational::from_integer(BigInt::from(x));
        if self.strict {
            x > self.bound
        } else {
            x >= self.bound
        }
    }

    /// Smallest integer satisfying the inequality.
    pub fn first_integer(&self) -> i64 {
        let floor = self.bound.floor().to_integer();
        let ceil = self.bound.ceil().to_integer();
        let v = if self.strict { floor + 1 } else { ceil };
        i64::try_from(v).expect("small bound")
    }
}

pub fn threshold(variant: ThresholdVariant, d: i64, e: i64, a: i64, n: i64, r: i64) -> Result<ThresholdFormula> {
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let (bound, strict, twist) = match variant {
        ThresholdVariant::Little => (q(d * (e + a - 1) - (n + 1)), false, None),
        ThresholdVariant::Veronese => (BigRational::new(3.into(), 2.into()) * q(e + a - 1) - q(n + 1), true, None),
        ThresholdVariant::Second => (q(n - 3 * r - 1), true, Some(2 * a - 1)),
    };
    if n < 1 || (variant == ThresholdVariant::Little && d < 1) {
        return Err(Error::InvalidArgument("parameters must be positive".into()));
    }
    Ok(ThresholdFormula { variant, d, e, a, n, r, bound, strict, twist })
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}{}/{}", if q.is_negative() { "-" } else { "" }, q.numer().abs(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &DivisorClass, n: i64, r: i64, k: i64) -> Vec<String> {
        c.eval_int(n, r, k).unwrap().iter().map(format_rational).collect()
    }

    #[test]
    fn arithmetic_examples() {
        let a = DivisorClass::ints(Space::BlownUpPn, &[2, -1]).unwrap();
        let b = DivisorClass::ints(Space::BlownUpPn, &[1, 0]).unwrap();
        assert_eq!(class_arith(&a, &b, ClassOp::Add).unwrap(), DivisorClass::ints(Space::BlownUpPn, &[3, -1]).unwrap());
        let m = Sym::n().sub(&Sym::r().mul(&Sym::int(2)));
        let l = lk_class(&Sym::k());
        let scaled = class_arith(&l, &l, ClassOp::Scale(m.clone())).unwrap();
        assert_eq!(scaled.coeffs[1], Sym::k().neg().mul(&m));
        let c = DivisorClass::ints(Space::M2Tilde, &[1, 0, 0]).unwrap();
        assert!(matches!(a.add(&c), Err(Error::SpaceMismatch(_, _))));
    }

    #[test]
    fn canonical_classes() {
        let k = canonical_class(Space::M2Tilde, &Sym::n(), &Sym::r()).unwrap();
        assert_eq!(k.coeffs[0], Sym::parse("-n-1").unwrap());
        assert_eq!(k.coeffs[1], Sym::parse("n-r-1").unwrap());
        assert_eq!(k.coeffs[2], Sym::parse("n-2*r-2").unwrap());
        let p = canonical_class(Space::BlownUpPn, &Sym::int(3), &Sym::int(1)).unwrap();
        assert_eq!(ints(&p, 0, 0, 0), vec!["-4", "1"]);
        let boundary = canonical_class(Space::M2Tilde, &Sym::int(5), &Sym::int(2)).unwrap();
        assert_eq!(ints(&boundary, 0, 0, 0)[2], "-1");
        assert!(!m2_assumption_holds(5, 2));
        assert!(canonical_class(Space::M2, &Sym::n(), &Sym::r()).is_err());
    }

    #[test]
    fn lk_examples() {
        assert_eq!(ints(&lk_class(&Sym::int(2)), 0, 0, 0), vec!["3", "-2", "-1"]);
        assert_eq!(ints(&lk_class(&Sym::frac(1, 2)), 0, 0, 0), vec!["0", "-1/2", "-1"]);
    }

    #[test]
    fn kv_rewrite() {
        assert!(verify_kv_rewrite().unwrap());
        let (lhs, rhs) = kv_sides(&kv_class()).unwrap();
        assert_eq!(ints(&lhs, 7, 1, 5), vec!["17", "-10", "-5"]);
        assert_eq!(ints(&rhs, 7, 1, 5), ints(&lhs, 7, 1, 5));
        let expected = DivisorClass::new(
            Space::M2Tilde,
            vec![Sym::parse("2*k+n").unwrap(), Sym::parse("-k-n+r+1").unwrap(), Sym::parse("-n+2*r").unwrap()],
        )
        .unwrap();
        assert_eq!(lhs, expected);
        let k = Sym::k();
        let perturbed = DivisorClass::new(Space::M2Tilde, vec![k.mul(&Sym::int(2)), k.neg(), Sym::int(-2)]).unwrap();
        assert!(!verify_kv_rewrite_for(&perturbed).unwrap());
    }

    #[test]
    fn pullbacks() {
        let f = |a, b| pullback_h(&DivisorClass::ints(Space::M2, &[a, b]).unwrap()).unwrap();
        assert_eq!(ints(&f(3, -2), 0, 0, 0), vec!["3", "-2", "-1"]);
        assert_eq!(ints(&f(2, -1), 0, 0, 0), vec!["2", "-1", "0"]);
        assert_eq!(ints(&f(0, 0), 0, 0, 0), vec!["0", "0", "0"]);
        assert!(pullback_h(&DivisorClass::zero(Space::M2Tilde)).is_err());
    }

    #[test]
    fn thresholds() {
        let t = threshold(ThresholdVariant::Little, 2, 2, 1, 3, 1).unwrap();
        assert_eq!((t.first_integer(), t.strict), (0, false));
        let s = threshold(ThresholdVariant::Second, 0, 0, 1, 4, 1).unwrap();
        assert_eq!(format_rational(&s.bound), "0");
        assert_eq!(s.twist, Some(1));
        assert!(s.holds(1) && !s.holds(0));
        let v = threshold(ThresholdVariant::Veronese, 0, 3, 2, 5, 0).unwrap();
        assert_eq!(format_rational(&v.bound), "0");
        assert_eq!(v.first_integer(), 1);
        assert!("quartic".parse::<ThresholdVariant>().is_err());
    }

    #[test]
    fn boundary_rays_are_distinct() {
        for k in 2..=12 {
            let a = pullback_h(&DivisorClass::ints(Space::M2, &[2, -1]).unwrap()).unwrap();
            let b = pullback_h(&DivisorClass::ints(Space::M2, &[2 * k - 1, -k]).unwrap()).unwrap();
            assert!(!a.proportional(&b).unwrap());
        }
    }
}
