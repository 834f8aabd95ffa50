//! Gröbner bases and the ideal operations built on them: normal forms,
//! elimination, quotients, saturation, Hilbert data and ring-map kernels.

mod engine;
mod hilbert;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use engine::{GbOptions, PairSelection, DEFAULT_DEGREE_CAP};
pub use hilbert::{hilbert_data, hilbert_numerator, HilbertData};

pub(crate) use engine::{
    groebner, groebner_with_target, normal_form as row_normal_form, HilbertTarget, ModuleOrder, Row, Term,
};

use crate::error::{Error, Result};
use crate::exactalg::{monomials_of_degree, FieldElement, Monomial, MonomialOrder, Polynomial, Ring};
use crate::linalg::SpanReducer;

/// Converts a vector of polynomials into a module row, placing entry `i` in
/// component `offset + i`.
pub(crate) fn vector_to_terms(entries: &[Polynomial], offset: u32) -> Vec<Term> {
    entries
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.terms().iter().map(move |(m, c)| Term { mono: m.clone(), comp: offset + i as u32, coeff: c.clone() })
        })
        .collect()
}

/// Splits a row back into `len` polynomials taken from components `offset..offset+len`.
pub(crate) fn terms_to_vector(terms: &[Term], ring: &Arc<Ring>, offset: u32, len: usize) -> Vec<Polynomial> {
    let mut buckets: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); len];
    for t in terms {
        if t.comp >= offset && ((t.comp - offset) as usize) < len {
            buckets[(t.comp - offset) as usize].push((t.mono.clone(), t.coeff.clone()));
        }
    }
    buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect()
}

/// A finitely generated ideal of a polynomial ring.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    opts: GbOptions,
    gb: OnceLock<Vec<Polynomial>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        f.debug_struct("Ideal").field("vars", &self.ring.vars()).field("gens", &gens).finish()
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            ring.check_same(g.ring())?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, opts: GbOptions::default(), gb: OnceLock::new() })
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal { ring: ring.clone(), gens: Vec::new(), opts: GbOptions::default(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).expect("same ring")
    }

    /// The homogeneous maximal ideal `(x0, ..., xn)`.
    pub fn irrelevant(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, ring.vars_polys()).expect("same ring")
    }

    /// Parses each generator in `ring`.
    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn with_options(mut self, opts: GbOptions) -> Ideal {
        self.opts = opts;
        self.gb = OnceLock::new();
        self
    }

    pub fn options(&self) -> &GbOptions {
        &self.opts
    }

    /// A new ideal in the same ring, inheriting the options.
    pub(crate) fn derive(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(&self.ring, gens).expect("same ring").with_options(self.opts.clone())
    }

    pub(crate) fn derive_in(&self, ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ok(Ideal::new(ring, gens)?.with_options(self.opts.clone()))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Reduced Gröbner basis under the ring's own order (cached).
    pub fn gb(&self) -> Result<&[Polynomial]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = compute_gb(&self.ring, &self.gens, &self.opts)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.iter().any(Polynomial::is_constant))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self, self.ring.order())?.is_zero())
    }

    /// Same ideal, decided by reduced Gröbner basis equality.
    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        Ok(self.gb()? == other.gb()?)
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derive(gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g));
            }
        }
        Ok(self.derive(gens))
    }

    /// Generators of `I^a` (all products of `a` generators).
    pub fn power(&self, a: u32) -> Ideal {
        if a == 0 {
            return self.derive(vec![self.ring.one()]);
        }
        let mut cur: Vec<(usize, Polynomial)> = self.gens.iter().cloned().enumerate().collect();
        for _ in 1..a {
            let mut next = Vec::new();
            for (last, p) in &cur {
                for (i, g) in self.gens.iter().enumerate().skip(*last) {
                    next.push((i, p.mul(g)));
                }
            }
            cur = next;
        }
        self.derive(cur.into_iter().map(|(_, p)| p).collect())
    }

    /// Minimal homogeneous generators, by increasing degree.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        if !self.is_homogeneous() {
            return Err(Error::Inhomogeneous("minimal generators need a homogeneous ideal".into()));
        }
        let vectors: Vec<Vec<Polynomial>> = self.gens.iter().map(|g| vec![g.clone()]).collect();
        let keep = crate::syzygy::minimal_subset(&self.ring, &vectors, &[0])?;
        Ok(keep.into_iter().map(|i| self.gens[i].clone()).collect())
    }

    /// Same ideal presented by its minimal generators.
    pub fn trimmed(&self) -> Result<Ideal> {
        Ok(self.derive(self.minimal_generators()?))
    }

    /// Basis of the degree-`d` component `I_d`, in echelon form.
    pub fn degree_part(&self, d: u32) -> Result<Vec<Polynomial>> {
        if !self.is_homogeneous() {
            return Err(Error::Inhomogeneous("graded pieces need a homogeneous ideal".into()));
        }
        let n = self.ring.nvars();
        let mut rows: Vec<BTreeMap<Vec<u16>, FieldElement>> = Vec::new();
        let mut reducer: SpanReducer<Vec<u16>> = SpanReducer::new();
        for g in &self.gens {
            let gd = g.degree().unwrap_or(0);
            if gd > d {
                continue;
            }
            for m in monomials_of_degree(n, d - gd) {
                let p = g.mul_term(&m, &self.ring.field().one());
                let v = reducer.reduce(poly_to_sparse(&p));
                if !v.is_empty() {
                    rows.push(v.clone());
                    reducer.insert(v);
                }
            }
        }
        let mut basis = Vec::with_capacity(rows.len());
        for r in rows {
            let terms = r.into_iter().map(|(k, c)| (Monomial::from_exponents(&k), c)).collect();
            basis.push(Polynomial::from_terms(&self.ring, terms).monic());
        }
        Ok(basis)
    }
}

pub(crate) fn poly_to_sparse(p: &Polynomial) -> BTreeMap<Vec<u16>, FieldElement> {
    p.terms().iter().map(|(m, c)| (m.key().to_vec(), c.clone())).collect()
}

fn compute_gb(ring: &Arc<Ring>, gens: &[Polynomial], opts: &GbOptions) -> Result<Vec<Polynomial>> {
    let order = ModuleOrder::rank_one(ring.order());
    let rows = gens.iter().map(|g| Row::new(&order, vector_to_terms(std::slice::from_ref(g), 0))).collect();
    let homogeneous = gens.iter().all(Polynomial::is_homogeneous);
    let gb = if ring.order() != MonomialOrder::Grevlex && homogeneous && !gens.is_empty() {
        // The grevlex basis is usually cheap and fixes the Hilbert series,
        // which lets the harder order skip pairs in finished degrees.
        let grevlex = compute_gb(&ring.with_order(MonomialOrder::Grevlex), gens, opts)?;
        let leads = grevlex.iter().filter_map(|g| g.leading_monomial().cloned()).collect();
        let target = HilbertTarget::new(hilbert::monomial_numerator(leads), ring.nvars());
        groebner_with_target(&order, rows, opts, target)?
    } else {
        groebner(&order, rows, opts)?
    };
    Ok(gb.into_iter().map(|r| terms_to_vector(&r.terms, ring, 0, 1).remove(0)).collect())
}

/// Reduced Gröbner basis of `ideal` under `order`, expressed in the ring
/// carrying that order.
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Result<Vec<Polynomial>> {
    if order == ideal.ring.order() {
        return Ok(ideal.gb()?.to_vec());
    }
    if let MonomialOrder::Block(k) = order {
        if k > ideal.ring.nvars() {
            return Err(Error::InvalidArgument(format!("block size {k} out of range")));
        }
    }
    let ring = ideal.ring.with_order(order);
    let gens: Vec<Polynomial> = ideal.gens.iter().map(|g| g.to_ring(&ring)).collect();
    compute_gb(&ring, &gens, &ideal.opts)
}

/// Remainder of `f` on division by the reduced basis of `ideal` under `order`,
/// returned in `f`'s ring. Zero exactly when `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, ideal: &Ideal, order: MonomialOrder) -> Result<Polynomial> {
    ideal.ring.check_same(f.ring())?;
    let gb = groebner_basis(ideal, order)?;
    let ring = ideal.ring.with_order(order);
    let morder = ModuleOrder::rank_one(order);
    let basis: Vec<Row> = gb.iter().map(|g| Row::new(&morder, vector_to_terms(std::slice::from_ref(g), 0))).collect();
    let fr = Row::new(&morder, vector_to_terms(&[f.to_ring(&ring)], 0));
    let r = row_normal_form(&morder, &basis, fr);
    Ok(terms_to_vector(&r.terms, &ring, 0, 1).remove(0).to_ring(f.ring()))
}

/// `I ∩ k[x_k, ..., x_n]`, returned as an ideal of the ring on the remaining
/// variables (grevlex).
pub fn eliminate(ideal: &Ideal, first_block: usize) -> Result<Ideal> {
    let n = ideal.ring.nvars();
    if first_block > n {
        return Err(Error::InvalidArgument(format!("block size {first_block} exceeds {n} variables")));
    }
    let rest = Ring::new(ideal.ring.vars()[first_block..].to_vec(), ideal.ring.field(), MonomialOrder::Grevlex);
    if first_block == 0 {
        let gens = ideal.gb()?.iter().map(|g| g.to_ring(&rest)).collect();
        return ideal.derive_in(&rest, gens);
    }
    // A nonzero element of the elimination ideal has a leading monomial in
    // the kept variables under every order, so none under grevlex means zero.
    let grevlex = groebner_basis(ideal, MonomialOrder::Grevlex)?;
    let kept_only = |m: &Monomial| (0..first_block).all(|i| m.exponent(i) == 0);
    if !grevlex.iter().filter_map(Polynomial::leading_monomial).any(kept_only) {
        return Ok(Ideal::zero(&rest).with_options(ideal.opts.clone()));
    }
    let gb = groebner_basis(ideal, MonomialOrder::Block(first_block))?;
    let map: Vec<usize> = (0..n).map(|i| i.saturating_sub(first_block)).collect();
    let gens = gb
        .into_iter()
        .filter(|g| (0..first_block).all(|i| !g.uses_variable(i)))
        .map(|g| g.rename_into(&rest, &map))
        .collect();
    ideal.derive_in(&rest, gens)
}

/// Elements of a two-block module Gröbner basis that vanish on block 0,
/// restricted to the block-1 components.
fn second_block_part(
    ring: &Arc<Ring>,
    first: usize,
    second: usize,
    rows: Vec<Vec<Term>>,
    opts: &GbOptions,
) -> Result<Vec<Vec<Polynomial>>> {
    let order = ModuleOrder::two_blocks(ring.order(), first, second);
    let input = rows.into_iter().map(|t| Row::new(&order, t)).collect();
    let gb = groebner(&order, input, opts)?;
    Ok(gb
        .into_iter()
        .filter(|r| (r.lead().comp as usize) >= first)
        .map(|r| terms_to_vector(&r.terms, ring, first as u32, second))
        .collect())
}

/// `I ∩ J`, computed in the module `S^2` so homogeneity is preserved.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.ring.check_same(&j.ring)?;
    let zero = i.ring.zero();
    let mut rows = Vec::new();
    for f in &i.gens {
        rows.push(vector_to_terms(&[f.clone(), zero.clone()], 0));
    }
    for g in &j.gens {
        rows.push(vector_to_terms(&[g.clone(), g.clone()], 0));
    }
    let parts = second_block_part(&i.ring, 1, 1, rows, &i.opts)?;
    Ok(i.derive(parts.into_iter().map(|mut v| v.remove(0)).collect()))
}

/// Ideal quotient `I : J = { a : aJ ⊆ I }`.
pub fn quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.ring.check_same(&j.ring)?;
    let s = j.gens.len();
    if s == 0 {
        return Ok(i.derive(vec![i.ring.one()]));
    }
    let zero = i.ring.zero();
    let mut rows = Vec::new();
    // [h_1, ..., h_s | 1] together with [g e_k | 0]: block-0-free elements
    // carry exactly the a with a*h_k in I for every k.
    let mut head: Vec<Polynomial> = j.gens.clone();
    head.push(i.ring.one());
    rows.push(vector_to_terms(&head, 0));
    for g in &i.gens {
        for k in 0..s {
            let mut v = vec![zero.clone(); s + 1];
            v[k] = g.clone();
            rows.push(vector_to_terms(&v, 0));
        }
    }
    let parts = second_block_part(&i.ring, s, 1, rows, &i.opts)?;
    Ok(i.derive(parts.into_iter().map(|mut v| v.remove(0)).collect()))
}

/// Saturation `I : J^∞` by iterated quotients, stopping once the reduced
/// basis stabilizes.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let mut cur = i.clone();
    loop {
        let next = quotient(&cur, j)?;
        if next.gb()? == cur.gb()? {
            return Ok(cur.derive(cur.gb()?.to_vec()));
        }
        cur = next.derive(next.gb()?.to_vec());
    }
}

/// Saturation by the irrelevant ideal.
pub fn saturate_irrelevant(i: &Ideal) -> Result<Ideal> {
    saturate(i, &Ideal::irrelevant(&i.ring))
}

pub fn is_saturated(i: &Ideal) -> Result<bool> {
    let q = quotient(i, &Ideal::irrelevant(&i.ring))?;
    Ok(q.gb()? == i.gb()?)
}

/// Kernel of `k[y_0..y_m] -> k[x]/source`, `y_i ↦ images[i]`, via the graph
/// ideal and elimination of the `x` block.
pub fn kernel_of_map_mod(source: &Ideal, images: &[Polynomial]) -> Result<Ideal> {
    let sring = source.ring();
    let d = match images.first() {
        Some(f) => f.degree().unwrap_or(0),
        None => return Err(Error::InvalidArgument("no images".into())),
    };
    for f in images {
        sring.check_same(f.ring())?;
        if !f.is_homogeneous() || (!f.is_zero() && f.degree() != Some(d)) {
            return Err(Error::Inhomogeneous("images must be forms of one common degree".into()));
        }
    }
    let n = sring.nvars();
    let m = images.len();
    let mut vars: Vec<String> = sring.vars().to_vec();
    let target_names: Vec<String> = (0..m).map(|i| format!("y{i}")).collect();
    vars.extend(target_names.iter().cloned());
    let graph_ring = Ring::new(vars, sring.field(), MonomialOrder::Block(n));
    let embed: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = source.gens().iter().map(|g| g.rename_into(&graph_ring, &embed)).collect();
    for (i, f) in images.iter().enumerate() {
        gens.push(graph_ring.var(n + i).sub(&f.rename_into(&graph_ring, &embed)));
    }
    let graph = source.derive_in(&graph_ring, gens)?;
    let kernel = eliminate(&graph, n)?;
    let target = Ring::new(target_names, sring.field(), MonomialOrder::Grevlex);
    let gens = kernel.gens().iter().map(|g| g.to_ring(&target)).collect();
    source.derive_in(&target, gens)
}

/// Ideal of algebraic relations among `images` (forms of equal degree in a
/// ring with `source_vars` variables).
pub fn kernel_of_map(source_vars: usize, images: &[Polynomial]) -> Result<Ideal> {
    let ring = images.first().ok_or_else(|| Error::InvalidArgument("no images".into()))?.ring();
    if ring.nvars() != source_vars {
        return Err(Error::VariableCount { expected: source_vars, got: ring.nvars() });
    }
    kernel_of_map_mod(&Ideal::zero(ring), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::with_prefix("x", n, Field::Q)
    }

    #[test]
    fn hilbert_driven_block_basis_matches_plain_buchberger() {
        let tc = twisted_cubic();
        let block = tc.ring().with_order(MonomialOrder::Block(2));
        let gens: Vec<Polynomial> = tc.gens().iter().map(|g| g.to_ring(&block)).collect();
        let driven = compute_gb(&block, &gens, &GbOptions::default()).unwrap();
        let order = ModuleOrder::rank_one(block.order());
        let rows = gens.iter().map(|g| Row::new(&order, vector_to_terms(std::slice::from_ref(g), 0))).collect();
        let plain: Vec<Polynomial> = groebner(&order, rows, &GbOptions::default())
            .unwrap()
            .into_iter()
            .map(|r| terms_to_vector(&r.terms, &block, 0, 1).remove(0))
            .collect();
        assert_eq!(driven, plain);
    }

    #[test]
    fn elimination_of_independent_variables_is_zero() {
        // x2, x3 are free modulo (x0^2 - x1 x2, x1^3 - x0 x3).
        let i = Ideal::parse(&ring(4), &["x0^2-x1*x2", "x1^3-x0*x3"]).unwrap();
        assert!(eliminate(&i, 2).unwrap().is_zero_ideal());
        let tc = twisted_cubic();
        assert_eq!(eliminate(&tc, 1).unwrap().gens().len(), 1);
    }

    fn twisted_cubic() -> Ideal {
        Ideal::parse(&ring(4), &["x0*x2-x1^2", "x1*x3-x2^2", "x0*x3-x1*x2"]).unwrap()
    }

    #[test]
    fn linear_generators() {
        let r = ring(2);
        let i = Ideal::parse(&r, &["x0", "x0+x1"]).unwrap();
        let gb = groebner_basis(&i, MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb, vec![r.var(1), r.var(0)]);
    }

    #[test]
    fn principal_ideal_is_monic_generator() {
        let r = ring(3);
        let i = Ideal::parse(&r, &["3*x0^2 - x1*x2"]).unwrap();
        assert_eq!(i.gb().unwrap(), &[r.parse("x0^2 - 1/3*x1*x2").unwrap()]);
    }

    #[test]
    fn twisted_cubic_minors_are_a_basis() {
        let i = twisted_cubic();
        let gb = i.gb().unwrap();
        assert_eq!(gb.len(), 3);
        for g in i.gens() {
            let monic = g.monic();
            assert!(gb.contains(&monic) || gb.contains(&monic.neg()), "{g} not in basis");
        }
    }

    #[test]
    fn normal_form_examples() {
        let i = twisted_cubic();
        let r = i.ring().clone();
        for g in i.gens() {
            assert!(normal_form(g, &i, MonomialOrder::Grevlex).unwrap().is_zero());
        }
        // x1^2 leads x0*x2 - x1^2 under grevlex, so x1^2 reduces to x0*x2.
        let nf = normal_form(&r.parse("x1^2").unwrap(), &i, MonomialOrder::Grevlex).unwrap();
        assert_eq!(nf, r.parse("x0*x2").unwrap());
        let nf = normal_form(&r.parse("x0*x2").unwrap(), &i, MonomialOrder::Grevlex).unwrap();
        assert_eq!(nf, r.parse("x0*x2").unwrap());
        assert_eq!(normal_form(&r.one(), &i, MonomialOrder::Grevlex).unwrap(), r.one());
    }

    #[test]
    fn eliminate_parametrized_cusp() {
        let r = Ring::new(vec!["x".into(), "z".into(), "w".into()], Field::Q, MonomialOrder::Grevlex);
        let i = Ideal::parse(&r, &["z - x^2", "w - x^3"]).unwrap();
        let e = eliminate(&i, 1).unwrap();
        assert_eq!(e.gens().len(), 1);
        // Oracle: the generator vanishes on the parametrization (t^2, t^3).
        let t = ring(1);
        let g = &e.gens()[0];
        assert!(g.substitute(&[t.var(0).pow(2), t.var(0).pow(3)]).unwrap().is_zero());
        assert_eq!(g.degree(), Some(3));

        let same = eliminate(&i, 0).unwrap();
        assert_eq!(same.gens().len(), i.gb().unwrap().len());

        let xy = Ideal::parse(&ring(2), &["x0*x1"]).unwrap();
        assert!(eliminate(&xy, 1).unwrap().gens().is_empty());
        assert!(eliminate(&xy, 3).is_err());
    }

    #[test]
    fn saturation_examples() {
        let r = ring(2);
        let i = Ideal::parse(&r, &["x0^2"]).unwrap();
        assert!(saturate(&i, &Ideal::unit(&r)).unwrap().same_as(&i).unwrap());
        assert!(saturate_irrelevant(&i).unwrap().same_as(&i).unwrap());

        let j = Ideal::parse(&r, &["x0^2", "x0*x1"]).unwrap();
        let s = saturate_irrelevant(&j).unwrap();
        assert!(s.same_as(&Ideal::parse(&r, &["x0"]).unwrap()).unwrap());
        assert!(!is_saturated(&j).unwrap());
        assert!(is_saturated(&s).unwrap());
    }

    #[test]
    fn intersection_and_quotient() {
        let r = ring(2);
        let a = Ideal::parse(&r, &["x0"]).unwrap();
        let b = Ideal::parse(&r, &["x1"]).unwrap();
        let ab = intersect(&a, &b).unwrap();
        assert!(ab.same_as(&Ideal::parse(&r, &["x0*x1"]).unwrap()).unwrap());
        let q = quotient(&ab, &a).unwrap();
        assert!(q.same_as(&b).unwrap());
    }

    #[test]
    fn conic_is_kernel_of_quadrics() {
        let s = ring(2);
        let images = vec![s.parse("x0^2").unwrap(), s.parse("x0*x1").unwrap(), s.parse("x1^2").unwrap()];
        let k = kernel_of_map(2, &images).unwrap();
        assert_eq!(k.gens().len(), 1);
        let g = &k.gens()[0];
        assert!(g.substitute(&images).unwrap().is_zero());
        assert_eq!(g.monic(), k.ring().parse("y0*y2 - y1^2").unwrap().monic());

        assert!(kernel_of_map(2, &s.vars_polys()).unwrap().gens().is_empty());
        let sq = vec![s.parse("x0^2").unwrap(), s.parse("x1^2").unwrap()];
        assert!(kernel_of_map(2, &sq).unwrap().gens().is_empty());
        let bad = vec![s.parse("x0^2").unwrap(), s.parse("x1").unwrap()];
        assert!(matches!(kernel_of_map(2, &bad), Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn degree_part_dimensions() {
        let i = twisted_cubic();
        assert_eq!(i.degree_part(2).unwrap().len(), 3);
        // dim I_3 = 20 - HF(S/I, 3) = 20 - 10.
        assert_eq!(i.degree_part(3).unwrap().len(), 10);
    }
}
