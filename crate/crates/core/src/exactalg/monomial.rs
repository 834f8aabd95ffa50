use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exps = SmallVec<[u16; 16]>;

/// A power product `x0^e0 * ... * xn^en` with its total degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(nvars: usize, index: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        Monomial { exps: SmallVec::from_slice(exps), degree: exps.iter().map(|&e| e as u32).sum() }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Structural key, used where any fixed total order will do.
    pub(crate) fn key(&self) -> &[u16] {
        &self.exps
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in lex-descending order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if n == 0 {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        if i == n - 1 {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

/// A monomial order. `Block(k)` compares the first `k` variables by grevlex
/// and breaks ties by grevlex on the rest, so it eliminates the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Block(usize),
}

fn grevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    /// Compares two monomials with the same variable count.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let k = k.min(a.exps.len());
                grevlex_slice(&a.exps[..k], &b.exps[..k]).then_with(|| grevlex_slice(&a.exps[k..], &b.exps[k..]))
            }
        }
    }

    /// True when the order compares total degree first.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex | MonomialOrder::Block(0))
    }
}

/// Checked comparison under `order`.
pub fn mono_compare(order: MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::VariableCount { expected: a.nvars(), got: b.nvars() });
    }
    if let MonomialOrder::Block(k) = order {
        if k > a.nvars() {
            return Err(Error::InvalidArgument(format!("block size {k} exceeds variable count {}", a.nvars())));
        }
    }
    Ok(order.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(mono_compare(MonomialOrder::Grevlex, &m(&[2, 0]), &m(&[1, 1])).unwrap(), Ordering::Greater);
        assert_eq!(mono_compare(MonomialOrder::Lex, &m(&[1, 0]), &m(&[0, 5])).unwrap(), Ordering::Greater);
        assert_eq!(mono_compare(MonomialOrder::Grevlex, &m(&[1, 2]), &m(&[1, 2])).unwrap(), Ordering::Equal);
        assert!(mono_compare(MonomialOrder::Grevlex, &m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn grevlex_reverse_on_last_variable() {
        // x0*x2 vs x1^2 in three variables: x1^2 has the smaller last exponent.
        let a = m(&[1, 0, 1]);
        let b = m(&[0, 2, 0]);
        assert_eq!(MonomialOrder::Grevlex.cmp(&b, &a), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let order = MonomialOrder::Block(1);
        // x0 beats any power of the remaining variables.
        assert_eq!(order.cmp(&m(&[1, 0, 0]), &m(&[0, 7, 3])), Ordering::Greater);
    }

    #[test]
    fn enumerates_degree_pieces() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(1, 4), vec![m(&[4])]);
        assert_eq!(monomials_of_degree(2, 1), vec![m(&[1, 0]), m(&[0, 1])]);
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, n).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![Just(MonomialOrder::Grevlex), Just(MonomialOrder::Lex), (0usize..=4).prop_map(MonomialOrder::Block)]
    }

    proptest! {
        #[test]
        fn total_order_axioms(o in arb_order(), a in arb_mono(4), b in arb_mono(4), c in arb_mono(4)) {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            if o.cmp(&a, &b) == Ordering::Greater && o.cmp(&b, &c) == Ordering::Greater {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Greater);
            }
            if o.cmp(&a, &b) == Ordering::Greater {
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Greater);
            }
            prop_assert_ne!(o.cmp(&a.mul(&c), &a), Ordering::Less);
        }
    }
}
