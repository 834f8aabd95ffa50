//! Syzygies, module membership with certificates, minimal free resolutions
//! and Betti tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{monomials_of_degree, FieldElement, Polynomial, Ring};
use crate::groebner::{
    groebner, row_normal_form, terms_to_vector, vector_to_terms, GbOptions, Ideal, ModuleOrder, Row,
};
use crate::linalg::SpanReducer;

/// An element of a graded free module `⊕ S(-shifts[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyElement {
    pub entries: Vec<Polynomial>,
    pub shifts: Vec<u32>,
    pub degree: u32,
}

impl SyzygyElement {
    /// Builds an element, checking that it is homogeneous for the grading.
    pub fn new(entries: Vec<Polynomial>, shifts: Vec<u32>) -> Result<SyzygyElement> {
        if entries.len() != shifts.len() {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a free module of rank {}",
                entries.len(),
                shifts.len()
            )));
        }
        let degree = vector_degree(&entries, &shifts)?.unwrap_or(0);
        Ok(SyzygyElement { entries, shifts, degree })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.entries[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// `Σ entries[i] * f[i]`.
    pub fn contract(&self, f: &[Polynomial]) -> Result<Polynomial> {
        if f.len() != self.entries.len() {
            return Err(Error::InvalidArgument("contraction against a list of the wrong length".into()));
        }
        let mut acc = self.ring().zero();
        for (a, g) in self.entries.iter().zip(f) {
            acc = acc.add(&a.mul(g));
        }
        Ok(acc)
    }

    /// Largest degree of an entry.
    pub fn max_entry_degree(&self) -> u32 {
        self.entries.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }
}

impl fmt::Display for SyzygyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Common total degree of a homogeneous vector, `None` for the zero vector.
fn vector_degree(entries: &[Polynomial], shifts: &[u32]) -> Result<Option<u32>> {
    let mut degree = None;
    for (e, &s) in entries.iter().zip(shifts) {
        if e.is_zero() {
            continue;
        }
        if !e.is_homogeneous() {
            return Err(Error::Inhomogeneous(format!("entry {e} is not homogeneous")));
        }
        let d = e.degree().expect("nonzero") + s;
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => {
                return Err(Error::Inhomogeneous(format!("vector mixes degrees {prev} and {d}")));
            }
            _ => {}
        }
    }
    Ok(degree)
}

type SparseKey = (u32, Vec<u16>);

fn vector_to_sparse(v: &[Polynomial]) -> BTreeMap<SparseKey, FieldElement> {
    let mut out = BTreeMap::new();
    for (i, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            out.insert((i as u32, m.key().to_vec()), c.clone());
        }
    }
    out
}

/// Indices of a minimal homogeneous generating subset of the submodule of
/// `⊕ S(-shifts)` spanned by `vectors`, chosen greedily by degree.
pub(crate) fn minimal_subset(ring: &Arc<Ring>, vectors: &[Vec<Polynomial>], shifts: &[u32]) -> Result<Vec<usize>> {
    let mut graded: Vec<(u32, usize)> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Some(d) = vector_degree(v, shifts)? {
            graded.push((d, i));
        }
    }
    graded.sort();
    let n = ring.nvars();
    let one = ring.field().one();
    let mut kept: Vec<(u32, usize)> = Vec::new();
    let mut idx = 0;
    while idx < graded.len() {
        let d = graded[idx].0;
        let mut span: SpanReducer<SparseKey> = SpanReducer::new();
        for &(kd, k) in &kept {
            for m in monomials_of_degree(n, d - kd) {
                let v: Vec<Polynomial> = vectors[k].iter().map(|p| p.mul_term(&m, &one)).collect();
                span.insert(vector_to_sparse(&v));
            }
        }
        while idx < graded.len() && graded[idx].0 == d {
            let i = graded[idx].1;
            if span.insert(vector_to_sparse(&vectors[i])) {
                kept.push((d, i));
            }
            idx += 1;
        }
    }
    Ok(kept.into_iter().map(|(_, i)| i).collect())
}

/// Minimal generating subset of homogeneous module elements.
pub fn minimalize(elements: &[SyzygyElement]) -> Result<Vec<SyzygyElement>> {
    let Some(first) = elements.first() else { return Ok(Vec::new()) };
    let vectors: Vec<Vec<Polynomial>> = elements.iter().map(|e| e.entries.clone()).collect();
    let keep = minimal_subset(first.ring(), &vectors, &first.shifts)?;
    Ok(keep.into_iter().map(|i| elements[i].clone()).collect())
}

/// Generators of the kernel of `⊕ S(-source) -> ⊕ S(-target)` sending `e_j`
/// to `columns[j]`, as vectors of length `columns.len()` (not minimalized).
pub(crate) fn kernel_generators(
    ring: &Arc<Ring>,
    columns: &[Vec<Polynomial>],
    target: &[u32],
    source: &[u32],
    opts: &GbOptions,
) -> Result<Vec<Vec<Polynomial>>> {
    let (m, k) = (target.len(), columns.len());
    let mut shifts = target.to_vec();
    shifts.extend_from_slice(source);
    let order = ModuleOrder::two_blocks(ring.order(), m, k).with_shifts(shifts);
    let rows = columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut terms = vector_to_terms(col, 0);
            terms.push(crate::groebner::Term {
                mono: crate::exactalg::Monomial::one(ring.nvars()),
                comp: (m + j) as u32,
                coeff: ring.field().one(),
            });
            Row::new(&order, terms)
        })
        .collect();
    let gb = groebner(&order, rows, opts)?;
    Ok(gb
        .into_iter()
        .filter(|r| r.lead().comp as usize >= m)
        .map(|r| terms_to_vector(&r.terms, ring, m as u32, k))
        .collect())
}

/// Minimal generators of the first syzygy module of the forms `f`.
pub fn syzygies(f: &[Polynomial]) -> Result<Vec<SyzygyElement>> {
    syzygies_with(f, &GbOptions::default())
}

pub fn syzygies_with(f: &[Polynomial], opts: &GbOptions) -> Result<Vec<SyzygyElement>> {
    let Some(first) = f.first() else { return Ok(Vec::new()) };
    let ring = first.ring().clone();
    let mut shifts = Vec::with_capacity(f.len());
    for g in f {
        ring.check_same(g.ring())?;
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous(format!("{g} is not homogeneous")));
        }
        shifts.push(g.degree().unwrap_or(0));
    }
    let columns: Vec<Vec<Polynomial>> = f.iter().map(|g| vec![g.clone()]).collect();
    module_syzygies(&ring, &columns, &[0], &shifts, opts)
}

/// Minimal syzygies among module vectors `columns` of `⊕ S(-target)`, where
/// `columns[j]` has degree `source[j]`.
pub(crate) fn module_syzygies(
    ring: &Arc<Ring>,
    columns: &[Vec<Polynomial>],
    target: &[u32],
    source: &[u32],
    opts: &GbOptions,
) -> Result<Vec<SyzygyElement>> {
    let gens = kernel_generators(ring, columns, target, source, opts)?;
    let keep = minimal_subset(ring, &gens, source)?;
    keep.into_iter().map(|i| SyzygyElement::new(gens[i].clone(), source.to_vec())).collect()
}

/// Outcome of a module membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub is_member: bool,
    /// Coefficients `c` with `v = Σ c_j gens[j]` when `is_member`.
    pub certificate: Option<Vec<Polynomial>>,
    /// Nonzero normal form of `v` modulo the submodule otherwise.
    pub witness: Option<Vec<Polynomial>>,
}

/// Decides `v ∈ ⟨gens⟩` and returns a certificate or a normal-form witness.
pub fn module_member(v: &SyzygyElement, gens: &[SyzygyElement]) -> Result<Membership> {
    module_member_with(v, gens, &GbOptions::default())
}

pub fn module_member_with(v: &SyzygyElement, gens: &[SyzygyElement], opts: &GbOptions) -> Result<Membership> {
    Submodule::new(v.ring(), gens, &v.shifts, opts)?.member(v)
}

/// A submodule of a graded free module with a Gröbner basis that tracks how
/// each basis element is built from the generators.
pub struct Submodule {
    ring: Arc<Ring>,
    order: ModuleOrder,
    basis: Vec<Row>,
    shifts: Vec<u32>,
    ngens: usize,
}

impl Submodule {
    pub fn new(ring: &Arc<Ring>, gens: &[SyzygyElement], shifts: &[u32], opts: &GbOptions) -> Result<Submodule> {
        let m = shifts.len();
        for g in gens {
            if g.entries.len() != m || g.shifts != shifts {
                return Err(Error::InvalidArgument("module element shapes differ".into()));
            }
            ring.check_same(g.ring())?;
        }
        let k = gens.len();
        let mut all = shifts.to_vec();
        all.extend(gens.iter().map(|g| g.degree));
        let order = ModuleOrder::two_blocks(ring.order(), m, k).with_shifts(all);
        let one = ring.field().one();
        let rows = gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let mut terms = vector_to_terms(&g.entries, 0);
                terms.push(crate::groebner::Term {
                    mono: crate::exactalg::Monomial::one(ring.nvars()),
                    comp: (m + j) as u32,
                    coeff: one.clone(),
                });
                Row::new(&order, terms)
            })
            .collect();
        let basis = groebner(&order, rows, opts)?;
        Ok(Submodule { ring: ring.clone(), order, basis, shifts: shifts.to_vec(), ngens: k })
    }

    pub fn member(&self, v: &SyzygyElement) -> Result<Membership> {
        let m = self.shifts.len();
        if v.entries.len() != m || v.shifts != self.shifts {
            return Err(Error::InvalidArgument("module element shapes differ".into()));
        }
        self.ring.check_same(v.ring())?;
        let r = row_normal_form(&self.order, &self.basis, Row::new(&self.order, vector_to_terms(&v.entries, 0)));
        let first = terms_to_vector(&r.terms, &self.ring, 0, m);
        if first.iter().all(Polynomial::is_zero) {
            let cert =
                terms_to_vector(&r.terms, &self.ring, m as u32, self.ngens).into_iter().map(|p| p.neg()).collect();
            Ok(Membership { is_member: true, certificate: Some(cert), witness: None })
        } else {
            Ok(Membership { is_member: false, certificate: None, witness: Some(first) })
        }
    }
}

/// Graded Betti numbers `β_{i,j}` of a minimal free resolution of an ideal
/// (`i = 0` counts the minimal generators).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum()
    }

    /// Internal degrees with nonzero `β_{i,·}`.
    pub fn degrees(&self, i: usize) -> Vec<u32> {
        self.entries.keys().filter(|(k, _)| *k == i).map(|(_, j)| *j).collect()
    }

    /// Number of homological positions present.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u32), usize> {
        &self.entries
    }

    fn add(&mut self, i: usize, j: u32) {
        *self.entries.entry((i, j)).or_insert(0) += 1;
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, j), b) in &self.entries {
            writeln!(f, "beta[{i},{j}] = {b}")?;
        }
        Ok(())
    }
}

/// A map of graded free modules, stored by columns (images of source basis vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: Vec<u32>,
    pub target: Vec<u32>,
    pub columns: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    /// Applies the map to a source vector.
    pub fn apply(&self, v: &[Polynomial], ring: &Arc<Ring>) -> Vec<Polynomial> {
        let mut out = vec![ring.zero(); self.target.len()];
        for (c, col) in v.iter().zip(&self.columns) {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(col) {
                *o = o.add(&c.mul(e));
            }
        }
        out
    }
}

/// Minimal graded free resolution `... -> F_1 -> F_0 -> I -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Arc<Ring>,
    /// `maps[0]` sends `F_0` onto the generators of `I` (target `S`), and
    /// `maps[i]` sends `F_i` to `F_{i-1}`.
    pub maps: Vec<GradedMap>,
    pub betti: BettiTable,
}

pub const DEFAULT_MAX_LENGTH: usize = 3;

/// Resolves `ideal` through `F_{max_length}` or until the syzygies vanish.
pub fn free_resolution(ideal: &Ideal, max_length: usize) -> Result<Resolution> {
    if !ideal.is_homogeneous() {
        return Err(Error::Inhomogeneous("resolutions need a homogeneous ideal".into()));
    }
    let ring = ideal.ring().clone();
    let opts = ideal.options().clone();
    let mut betti = BettiTable::default();
    let mut maps = Vec::new();
    if ideal.gb()?.is_empty() {
        return Ok(Resolution { ring, maps, betti });
    }
    let gens = ideal.minimal_generators()?;
    let mut degrees: Vec<u32> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
    for &d in &degrees {
        betti.add(0, d);
    }
    maps.push(GradedMap {
        source: degrees.clone(),
        target: vec![0],
        columns: gens.iter().map(|g| vec![g.clone()]).collect(),
    });
    for i in 1..=max_length {
        let prev = maps.last().expect("nonempty");
        let syz = module_syzygies(&ring, &prev.columns, &prev.target, &prev.source, &opts)?;
        if syz.is_empty() {
            break;
        }
        let source: Vec<u32> = syz.iter().map(|s| s.degree).collect();
        for &d in &source {
            betti.add(i, d);
        }
        maps.push(GradedMap {
            source: source.clone(),
            target: degrees.clone(),
            columns: syz.into_iter().map(|s| s.entries).collect(),
        });
        degrees = source;
    }
    Ok(Resolution { ring, maps, betti })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::with_prefix("x", n, Field::Q)
    }

    fn tc() -> Ideal {
        Ideal::parse(&ring(4), &["x0*x2-x1^2", "x1*x3-x2^2", "x0*x3-x1*x2"]).unwrap()
    }

    #[test]
    fn koszul_pair() {
        let r = ring(2);
        let syz = syzygies(&r.vars_polys()).unwrap();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].degree, 2);
        let e = &syz[0].entries;
        assert!(syz[0].contract(&r.vars_polys()).unwrap().is_zero());
        assert_eq!(e[0].degree(), Some(1));
        assert!(e[0].mul(&r.var(0)).add(&e[1].mul(&r.var(1))).is_zero());
    }

    #[test]
    fn single_form_has_no_syzygy() {
        let r = ring(3);
        assert!(syzygies(&[r.parse("x0^2+x1*x2").unwrap()]).unwrap().is_empty());
    }

    #[test]
    fn twisted_cubic_linear_syzygies() {
        let i = tc();
        let syz = syzygies(i.gens()).unwrap();
        assert_eq!(syz.len(), 2);
        for s in &syz {
            assert_eq!(s.degree, 3);
            assert!(s.contract(i.gens()).unwrap().is_zero());
            assert!(s.entries.iter().all(|e| e.is_zero() || e.degree() == Some(1)));
        }
        let res = free_resolution(&i, DEFAULT_MAX_LENGTH).unwrap();
        assert_eq!(res.betti.get(0, 2), 3);
        assert_eq!(res.betti.get(1, 3), 2);
        assert_eq!(res.betti.length(), 2);
    }

    #[test]
    fn complete_intersection_koszul() {
        let r = ring(4);
        let i = Ideal::parse(&r, &["x0^2+x1*x2", "x3^2-x0*x1"]).unwrap();
        let res = free_resolution(&i, 3).unwrap();
        assert_eq!(res.betti.get(0, 2), 2);
        assert_eq!(res.betti.get(1, 4), 1);
        assert_eq!(res.betti.total(1), 1);
        assert_eq!(res.betti.length(), 2);
    }

    #[test]
    fn zero_ideal_resolution() {
        let res = free_resolution(&Ideal::zero(&ring(3)), 3).unwrap();
        assert!(res.maps.is_empty());
        assert_eq!(res.betti.length(), 0);
    }

    #[test]
    fn composition_is_zero() {
        let i = Ideal::parse(&ring(3), &["x0^2", "x0*x1", "x1^2", "x1*x2"]).unwrap();
        let res = free_resolution(&i, 3).unwrap();
        for w in res.maps.windows(2) {
            for col in &w[1].columns {
                let img = w[0].apply(col, &res.ring);
                assert!(img.iter().all(Polynomial::is_zero));
            }
        }
    }

    #[test]
    fn membership_certificates() {
        let i = tc();
        let syz = syzygies(i.gens()).unwrap();
        let f = i.gens();
        let shifts = vec![2, 2, 2];
        let zero = i.ring().zero();
        for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let mut e = vec![zero.clone(); 3];
            e[a] = f[b].clone();
            e[b] = f[a].neg();
            let v = SyzygyElement::new(e, shifts.clone()).unwrap();
            let m = module_member(&v, &syz).unwrap();
            assert!(m.is_member);
            let cert = m.certificate.unwrap();
            let mut acc = vec![zero.clone(); 3];
            for (c, s) in cert.iter().zip(&syz) {
                for (x, y) in acc.iter_mut().zip(&s.entries) {
                    *x = x.add(&c.mul(y));
                }
            }
            assert_eq!(acc, v.entries);
        }
        let own = module_member(&syz[0], &syz).unwrap();
        assert!(own.is_member);
    }

    #[test]
    fn koszul_of_two_quadrics_not_linear() {
        let r = ring(4);
        let f = [r.parse("x0^2+x1*x2").unwrap(), r.parse("x3^2-x0*x1").unwrap()];
        let v = SyzygyElement::new(vec![f[1].clone(), f[0].neg()], vec![2, 2]).unwrap();
        let m = module_member(&v, &[]).unwrap();
        assert!(!m.is_member);
        assert_eq!(m.witness.unwrap(), v.entries);
    }
}
