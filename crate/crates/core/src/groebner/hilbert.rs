//! Hilbert series of `S/I` read off the leading-term ideal.

use crate::error::{Error, Result};
use crate::exactalg::Monomial;

use super::Ideal;

/// Hilbert data of `S/I`: series `h(t)/(1-t)^(dim+1)` with `h(1) = degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Reduced numerator `h(t)`, lowest degree first.
    pub numerator: Vec<i64>,
    /// Projective dimension of the scheme, −1 when empty.
    pub dimension: i64,
    pub degree: i64,
}

fn poly_trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, sign: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += sign * c;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of the series `N(t)/(1-t)^n` of `S/M`, `M` monomial.
pub(crate) fn monomial_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut next = acc.clone();
            poly_add_shifted(&mut next, &acc, g.degree() as usize, -1);
            acc = next;
        }
        return poly_trim(acc);
    }
    // Pivot on the variable shared by the most generators.
    let n = gens[0].nvars();
    let mut counts = vec![0usize; n];
    for g in &gens {
        for v in g.support() {
            counts[v] += 1;
        }
    }
    let var = (0..n).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("nonempty");
    let mut exps: Vec<u16> = gens.iter().map(|g| g.exponent(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pe = vec![0u16; n];
    pe[var] = e;
    let pivot = Monomial::from_exponents(&pe);

    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = g.exponents().to_vec();
            ex[var] = ex[var].saturating_sub(e);
            Monomial::from_exponents(&ex)
        })
        .collect();
    let mut acc = monomial_numerator(plus);
    poly_add_shifted(&mut acc, &monomial_numerator(colon), e as usize, 1);
    poly_trim(acc)
}

/// Numerator over `(1-t)^nvars` of the Hilbert series of `S/I`.
pub fn hilbert_numerator(ideal: &Ideal) -> Result<Vec<i64>> {
    if !ideal.is_homogeneous() {
        return Err(Error::Inhomogeneous("Hilbert data needs a homogeneous ideal".into()));
    }
    let leads = ideal.gb()?.iter().filter_map(|g| g.leading_monomial().cloned()).collect();
    Ok(monomial_numerator(leads))
}

/// Exact Hilbert series data for a homogeneous ideal.
pub fn hilbert_data(ideal: &Ideal) -> Result<HilbertData> {
    let mut num = hilbert_numerator(ideal)?;
    let n = ideal.ring().nvars() as i64;
    if num.is_empty() {
        return Ok(HilbertData { numerator: Vec::new(), dimension: -1, degree: 0 });
    }
    let mut pole = n;
    while pole > 0 && num.iter().sum::<i64>() == 0 {
        // Synthetic division by (1 - t).
        let mut q = Vec::with_capacity(num.len() - 1);
        let mut run = 0;
        for c in &num[..num.len() - 1] {
            run += c;
            q.push(run);
        }
        num = poly_trim(q);
        pole -= 1;
    }
    let degree = num.iter().sum();
    Ok(HilbertData { numerator: num, dimension: pole - 1, degree })
}

/// `C(x + m, m)` as a polynomial in the integer `x`.
fn binomial_poly(x: i64, m: i64) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..=m {
        num *= (x + i) as i128;
        den *= i as i128;
    }
    num / den
}

impl HilbertData {
    fn pole(&self) -> i64 {
        self.dimension + 1
    }

    /// `dim_k (S/I)_k`.
    pub fn hilbert_function(&self, k: i64) -> i128 {
        let d = self.pole();
        self.numerator
            .iter()
            .enumerate()
            .filter(|(j, _)| k - (*j as i64) >= 0)
            .map(|(j, &h)| {
                let x = k - j as i64;
                let term = if d == 0 { i128::from(x == 0) } else { binomial_poly(x, d - 1) };
                h as i128 * term
            })
            .sum()
    }

    /// Hilbert polynomial of `S/I` evaluated at `k` (any integer).
    pub fn hilbert_polynomial(&self, k: i64) -> i128 {
        let d = self.pole();
        if d == 0 {
            return 0;
        }
        self.numerator.iter().enumerate().map(|(j, &h)| h as i128 * binomial_poly(k - j as i64, d - 1)).sum()
    }
}
