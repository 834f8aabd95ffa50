use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::{Field, FieldElement};
use super::monomial::{Monomial, MonomialOrder};

/// A graded polynomial ring `k[x0..xn]` with its variable names, field and order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(vars: Vec<String>, field: Field, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { vars, field, order })
    }

    /// Ring with variables `prefix0 .. prefix{n-1}` over `field` with grevlex.
    pub fn with_prefix(prefix: &str, nvars: usize, field: Field) -> Arc<Ring> {
        Ring::new((0..nvars).map(|i| format!("{prefix}{i}")).collect(), field, MonomialOrder::Grevlex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Ring::new(self.vars.clone(), self.field, order)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        Polynomial::constant(self, self.field.one())
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn vars_polys(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Parses a polynomial written in this ring's variables.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        crate::input::parse_polynomial(self, text)
    }

    /// Same-shape check used for ring-mismatch errors.
    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{} vars over {} ({:?}) vs {} vars over {} ({:?})",
                self.nvars(),
                self.field,
                self.order,
                other.nvars(),
                other.field,
                other.order
            )))
        }
    }
}

/// A sparse polynomial. Terms are strictly decreasing under the ring order and
/// carry no zero coefficients. Values are immutable; arithmetic builds new ones.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Checked sum or product.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    f.ring.check_same(&g.ring)?;
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Mul => f.mul(g),
    })
}

/// Leading monomial and coefficient under the ring order.
pub fn leading_data(f: &Polynomial) -> Result<(Monomial, FieldElement)> {
    f.terms.first().cloned().ok_or(Error::ZeroPolynomial)
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> Polynomial {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: FieldElement) -> Polynomial {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, FieldElement)>) -> Polynomial {
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, FieldElement)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree (maximum over terms); `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of a given monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn uses_variable(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(i) > 0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(*self.ring, *other.ring);
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca.add(cb);
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    /// `c * m * self`; order is preserved since monomial orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(*self.ring, *other.ring);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.ring.nvars(), "evaluation point has wrong length");
        let mut acc = self.ring.field().zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v = v.mul(&point[i].pow(e as u32));
                }
            }
            acc = acc.add(&v);
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::VariableCount { expected: self.ring.nvars(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            target.check_same(&p.ring)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in a ring with the same variable count and
    /// field (typically the same ring under another monomial order).
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        assert_eq!(ring.field(), self.ring.field());
        if **ring == *self.ring {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Maps variable `i` to variable `map[i]` of `ring` (a pure renaming or embedding).
    pub fn rename_into(&self, ring: &Arc<Ring>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::with_prefix("x", n, Field::Q)
    }

    #[test]
    fn binomial_square() {
        let r = ring(2);
        let s = r.var(0).add(&r.var(1));
        let sq = poly_arith(&s, &s, PolyOp::Mul).unwrap();
        assert_eq!(sq.to_string(), "x0^2 + 2*x0*x1 + x1^2");
        assert!(sq.is_homogeneous());
    }

    #[test]
    fn annihilation_and_mismatch() {
        let r = ring(2);
        let f = r.parse("x0^3 - 2/3*x1").unwrap();
        assert!(f.mul(&r.zero()).is_zero());
        let other = ring(3);
        assert!(matches!(poly_arith(&f, &other.var(0), PolyOp::Add), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn frobenius_in_characteristic_five() {
        let r = Ring::with_prefix("x", 2, Field::gfp(5).unwrap());
        let s = r.var(0).add(&r.var(1));
        assert_eq!(s.pow(5), r.var(0).pow(5).add(&r.var(1).pow(5)));
    }

    #[test]
    fn leading_data_examples() {
        let r = ring(3);
        // Oracle: enumerate both monomials through the order before fixing the answer.
        let a = Monomial::from_exponents(&[1, 0, 1]);
        let b = Monomial::from_exponents(&[0, 2, 0]);
        let expected = if MonomialOrder::Grevlex.cmp(&a, &b) == Ordering::Greater { a } else { b };
        let f = r.parse("x0*x2 - x1^2").unwrap();
        let (m, c) = leading_data(&f).unwrap();
        assert_eq!(m, expected);
        // grevlex ranks x1^2 above x0*x2, so the lead carries the minus sign.
        assert_eq!(m, Monomial::from_exponents(&[0, 2, 0]));
        assert_eq!(c, Field::Q.from_i64(-1));

        let mono = r.parse("3*x1^2*x2").unwrap();
        assert_eq!(leading_data(&mono).unwrap(), mono.terms()[0].clone());
        let five = r.parse("5").unwrap();
        assert_eq!(leading_data(&five).unwrap(), (Monomial::one(3), Field::Q.from_i64(5)));
        assert_eq!(leading_data(&r.zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn substitution_composes() {
        let r = ring(2);
        let f = r.parse("x0^2 - x1").unwrap();
        let t = ring(1);
        let img = vec![t.var(0), t.var(0).pow(2)];
        assert!(f.substitute(&img).unwrap().is_zero());
    }

    pub(crate) fn arb_poly(r: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
        let n = r.nvars();
        proptest::collection::vec((proptest::collection::vec(0u16..3, n), -5i64..5, 1i64..4), 0..6).prop_map(
            move |ts| {
                let terms = ts
                    .into_iter()
                    .map(|(e, a, b)| {
                        let q = num_rational::BigRational::new(a.into(), b.into());
                        (Monomial::from_exponents(&e), Field::Q.from_rational(&q).unwrap())
                    })
                    .collect();
                Polynomial::from_terms(&r, terms)
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(ring(3)), g in arb_poly(ring(3)), h in arb_poly(ring(3))) {
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert!(f.sub(&f).is_zero());
        }

        #[test]
        fn print_parse_round_trip(f in arb_poly(ring(3))) {
            let r = f.ring().clone();
            prop_assert_eq!(r.parse(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn homogeneous_sum_stays_homogeneous(f in arb_poly(ring(3)), g in arb_poly(ring(3))) {
            let (a, b) = (f.homogeneous_part(2), g.homogeneous_part(2));
            prop_assert!(a.add(&b).is_homogeneous());
        }
    }
}
