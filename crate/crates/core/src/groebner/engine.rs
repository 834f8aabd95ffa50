//! Buchberger's algorithm over submodules of graded free modules.
//!
//! Ideals are the rank-one case. Module terms are ordered by a block of the
//! component first (lower block dominates), then by the monomial order, then
//! by component index; this makes "position over term" between blocks and
//! "term over position" inside a block, which is what elimination of a
//! leading block of components (syzygies, lifting, quotients) needs.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{FieldElement, Monomial, MonomialOrder};

use super::hilbert::monomial_numerator;

/// Default ceiling on the degree of any basis element.
pub const DEFAULT_DEGREE_CAP: u32 = 40;

/// How critical pairs are picked from the queue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairSelection {
    /// Smallest (sugar, lcm, index) first.
    #[default]
    Sugar,
    /// Uniformly random pending pair from a seeded stream. Test-only use.
    Shuffled(u64),
}

/// Guardrails and strategy knobs for a Gröbner computation.
#[derive(Clone, Debug)]
pub struct GbOptions {
    pub degree_cap: u32,
    pub selection: PairSelection,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { degree_cap: DEFAULT_DEGREE_CAP, selection: PairSelection::Sugar, cancel: None }
    }
}

impl PartialEq for GbOptions {
    fn eq(&self, other: &Self) -> bool {
        self.degree_cap == other.degree_cap && self.selection == other.selection
    }
}

impl GbOptions {
    pub fn with_degree_cap(cap: u32) -> GbOptions {
        GbOptions { degree_cap: cap, ..GbOptions::default() }
    }

    fn check_cancel(&self) -> Result<()> {
        match &self.cancel {
            Some(flag) if flag.load(AtomicOrdering::Relaxed) => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: FieldElement,
}

/// Order on module terms; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModuleOrder {
    pub mono: MonomialOrder,
    pub blocks: Vec<u32>,
    /// Degree of each basis vector; compared before the monomial order when
    /// the latter is graded. Empty means all zero.
    pub shifts: Vec<u32>,
}

impl ModuleOrder {
    pub fn rank_one(mono: MonomialOrder) -> ModuleOrder {
        ModuleOrder { mono, blocks: vec![0], shifts: Vec::new() }
    }

    /// `first` components in block 0, `rest` components in block 1.
    pub fn two_blocks(mono: MonomialOrder, first: usize, rest: usize) -> ModuleOrder {
        let mut blocks = vec![0; first];
        blocks.extend(std::iter::repeat_n(1, rest));
        ModuleOrder { mono, blocks, shifts: Vec::new() }
    }

    pub fn with_shifts(mut self, shifts: Vec<u32>) -> ModuleOrder {
        debug_assert_eq!(shifts.len(), self.blocks.len());
        self.shifts = shifts;
        self
    }

    #[inline]
    pub fn shift(&self, comp: u32) -> u32 {
        self.shifts.get(comp as usize).copied().unwrap_or(0)
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        if ac == bc {
            return self.mono.cmp(am, bm);
        }
        let (ba, bb) = (self.blocks[ac as usize], self.blocks[bc as usize]);
        bb.cmp(&ba)
            .then_with(|| {
                if self.shifts.is_empty() || !self.mono.is_graded() {
                    Ordering::Equal
                } else {
                    (am.degree() + self.shift(ac)).cmp(&(bm.degree() + self.shift(bc)))
                }
            })
            .then_with(|| self.mono.cmp(am, bm))
            .then_with(|| bc.cmp(&ac))
    }

    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(&a.mono, a.comp, &b.mono, b.comp)
    }
}

/// A module element: terms strictly decreasing, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Row {
    pub terms: Vec<Term>,
    pub sugar: u32,
}

impl Row {
    pub fn new(order: &ModuleOrder, mut terms: Vec<Term>) -> Row {
        terms.sort_by(|a, b| order.cmp_terms(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => last.coeff = last.coeff.add(&t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        let sugar = out.iter().map(|t| t.mono.degree() + order.shift(t.comp)).max().unwrap_or(0);
        Row { terms: out, sugar }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    fn monic(mut self) -> Row {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.inv();
                for t in &mut self.terms {
                    t.coeff = t.coeff.mul(&inv);
                }
            }
        }
        self
    }
}

fn divmask(m: &Monomial) -> u64 {
    m.support().fold(0u64, |acc, i| acc | (1u64 << (i % 64)))
}

/// `prefix ++ (rest - c*m*g)`, where every term of `m*g` sits below the prefix.
fn sub_multiple(
    order: &ModuleOrder,
    f: &[Term],
    split: usize,
    c: &FieldElement,
    m: &Monomial,
    g: &[Term],
) -> Vec<Term> {
    let rest = &f[split..];
    let mut out = Vec::with_capacity(f.len() + g.len());
    out.extend_from_slice(&f[..split]);
    let (mut i, mut j) = (0, 0);
    let neg_c = c.neg();
    while i < rest.len() && j < g.len() {
        let a = &rest[i];
        let gm = g[j].mono.mul(m);
        match order.cmp(&a.mono, a.comp, &gm, g[j].comp) {
            Ordering::Greater => {
                out.push(a.clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { mono: gm, comp: g[j].comp, coeff: g[j].coeff.mul(&neg_c) });
                j += 1;
            }
            Ordering::Equal => {
                let v = a.coeff.add(&g[j].coeff.mul(&neg_c));
                if !v.is_zero() {
                    out.push(Term { mono: gm, comp: a.comp, coeff: v });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&rest[i..]);
    for t in &g[j..] {
        out.push(Term { mono: t.mono.mul(m), comp: t.comp, coeff: t.coeff.mul(&neg_c) });
    }
    out
}

/// Lead index over a set of monic rows.
struct Leads {
    entries: Vec<(Monomial, u32, u64, usize)>,
}

impl Leads {
    fn new() -> Leads {
        Leads { entries: Vec::new() }
    }

    fn push(&mut self, row: &Row, index: usize) {
        let l = row.lead();
        self.entries.push((l.mono.clone(), l.comp, divmask(&l.mono), index));
    }

    fn find_divisor(&self, m: &Monomial, comp: u32) -> Option<usize> {
        let mask = divmask(m);
        self.entries.iter().find(|(lm, lc, lmask, _)| *lc == comp && lmask & !mask == 0 && lm.divides(m)).map(|e| e.3)
    }
}

/// Reduces `f` by monic `rows` (indexed by `leads`). With `full` the tail is
/// reduced as well; otherwise only the leading term is driven irreducible.
/// `start` leaves a prefix of terms untouched.
fn reduce_with(order: &ModuleOrder, rows: &[Row], leads: &Leads, f: Row, full: bool, start: usize) -> Row {
    let mut terms = f.terms;
    let mut sugar = f.sugar;
    let mut pos = start;
    while pos < terms.len() {
        let t = &terms[pos];
        match leads.find_divisor(&t.mono, t.comp) {
            Some(idx) => {
                let g = &rows[idx];
                let m = g.lead().mono.quotient_of(&t.mono);
                sugar = sugar.max(g.sugar + m.degree());
                let c = t.coeff.clone();
                terms = sub_multiple(order, &terms, pos, &c, &m, &g.terms);
            }
            None => {
                if !full {
                    break;
                }
                pos += 1;
            }
        }
    }
    Row { terms, sugar }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: u32,
}

struct Buchberger<'a> {
    order: &'a ModuleOrder,
    opts: &'a GbOptions,
    rank_one: bool,
    rows: Vec<Row>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    rng: Option<ChaCha8Rng>,
    target: Option<HilbertTarget>,
}

/// Known Hilbert series of a homogeneous ideal, used to discard pairs in
/// degrees where the leading terms already span the initial ideal.
pub(crate) struct HilbertTarget {
    pub numerator: Vec<i64>,
    pub nvars: usize,
    complete: Vec<u32>,
}

impl HilbertTarget {
    pub fn new(numerator: Vec<i64>, nvars: usize) -> Self {
        HilbertTarget { numerator, nvars, complete: Vec::new() }
    }
}

impl<'a> Buchberger<'a> {
    fn new(order: &'a ModuleOrder, opts: &'a GbOptions) -> Self {
        let rng = match opts.selection {
            PairSelection::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            PairSelection::Sugar => None,
        };
        Buchberger {
            order,
            opts,
            rank_one: order.blocks.len() == 1,
            rows: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            rng,
            target: None,
        }
    }

    fn active_leads(&self) -> Leads {
        let mut leads = Leads::new();
        for &i in &self.active {
            leads.push(&self.rows[i], i);
        }
        leads
    }

    fn make_pair(&self, i: usize, j: usize) -> Option<Pair> {
        let (a, b) = (self.rows[i].lead(), self.rows[j].lead());
        if a.comp != b.comp {
            return None;
        }
        let lcm = a.mono.lcm(&b.mono);
        let si = self.rows[i].sugar + lcm.degree() - a.mono.degree();
        let sj = self.rows[j].sugar + lcm.degree() - b.mono.degree();
        Some(Pair { i, j, lcm, comp: a.comp, sugar: si.max(sj) })
    }

    /// Gebauer–Möller update for the new element at index `h`.
    fn update(&mut self, h: usize) {
        let hl = self.rows[h].lead().clone();
        let mut candidates: Vec<Pair> = self.active.iter().filter_map(|&g| self.make_pair(h, g)).collect();

        let mut kept: Vec<Pair> = Vec::new();
        while !candidates.is_empty() {
            let p = candidates.remove(0);
            let coprime = self.rank_one && hl.mono.is_coprime(&self.rows[p.j].lead().mono);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        if self.rank_one {
            kept.retain(|p| !hl.mono.is_coprime(&self.rows[p.j].lead().mono));
        }

        let rows = &self.rows;
        self.pairs.retain(|p| {
            if p.comp != hl.comp || !hl.mono.divides(&p.lcm) {
                return true;
            }
            let li = rows[p.i].lead().mono.lcm(&hl.mono);
            let lj = rows[p.j].lead().mono.lcm(&hl.mono);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| {
            let gl = rows[g].lead();
            !(gl.comp == hl.comp && hl.mono.divides(&gl.mono))
        });
        self.active.push(h);
    }

    fn insert(&mut self, row: Row) -> Result<()> {
        let deg = row.max_degree();
        if deg > self.opts.degree_cap {
            return Err(Error::DegreeCap { cap: self.opts.degree_cap, reached: deg });
        }
        self.rows.push(row.monic());
        self.update(self.rows.len() - 1);
        Ok(())
    }

    fn select(&mut self) -> Pair {
        let idx = match &mut self.rng {
            Some(rng) => rng.gen_range(0..self.pairs.len()),
            None => {
                let order = self.order;
                let mut best = 0;
                for k in 1..self.pairs.len() {
                    let (a, b) = (&self.pairs[k], &self.pairs[best]);
                    let ord = a
                        .sugar
                        .cmp(&b.sugar)
                        .then_with(|| order.cmp(&a.lcm, a.comp, &b.lcm, b.comp))
                        .then_with(|| (a.i.max(a.j), a.i.min(a.j)).cmp(&(b.i.max(b.j), b.i.min(b.j))));
                    if ord == Ordering::Less {
                        best = k;
                    }
                }
                best
            }
        };
        self.pairs.swap_remove(idx)
    }

    fn spoly(&self, p: &Pair) -> Row {
        let (f, g) = (&self.rows[p.i], &self.rows[p.j]);
        let mf = f.lead().mono.quotient_of(&p.lcm);
        let mg = g.lead().mono.quotient_of(&p.lcm);
        let scaled: Vec<Term> =
            f.terms.iter().map(|t| Term { mono: t.mono.mul(&mf), comp: t.comp, coeff: t.coeff.clone() }).collect();
        let one = f.lead().coeff.field().one();
        // Leads cancel exactly since both rows are monic.
        let mut terms = sub_multiple(self.order, &scaled, 0, &one, &mg, &g.terms);
        if terms.first().is_some_and(|t| t.mono == p.lcm && t.comp == p.comp) {
            terms.remove(0);
        }
        Row { terms, sugar: p.sugar }
    }

    fn run(mut self, mut input: Vec<Row>) -> Result<Vec<Row>> {
        let order = self.order;
        input.retain(|r| !r.is_zero());
        input.sort_by(|a, b| a.sugar.cmp(&b.sugar).then_with(|| order.cmp_terms(a.lead(), b.lead())));
        for row in input {
            let leads = self.active_leads();
            let r = reduce_with(order, &self.rows, &leads, row, false, 0);
            if !r.is_zero() {
                self.insert(r)?;
            }
        }
        while !self.pairs.is_empty() {
            self.opts.check_cancel()?;
            let p = self.select();
            if self.degree_complete(p.sugar) {
                continue;
            }
            if p.sugar > self.opts.degree_cap.saturating_mul(2) {
                return Err(Error::DegreeCap { cap: self.opts.degree_cap, reached: p.sugar });
            }
            let s = self.spoly(&p);
            let leads = self.active_leads();
            let r = reduce_with(order, &self.rows, &leads, s, false, 0);
            if !r.is_zero() {
                self.insert(r)?;
            }
        }
        Ok(self.finish())
    }

    /// True when the current leads span the initial ideal in degree `d`, so
    /// every pair of that degree reduces to zero.
    fn degree_complete(&mut self, d: u32) -> bool {
        let Some(target) = &self.target else { return false };
        if target.complete.contains(&d) {
            return true;
        }
        let leads: Vec<Monomial> =
            self.active.iter().map(|&i| self.rows[i].lead().mono.clone()).filter(|m| m.degree() <= d).collect();
        let current = hilbert_function_from(&monomial_numerator(leads), target.nvars, d);
        let wanted = hilbert_function_from(&target.numerator, target.nvars, d);
        if current == wanted {
            let target = self.target.as_mut().expect("checked");
            target.complete.push(d);
            self.pairs.retain(|q| q.sugar != d);
            return true;
        }
        false
    }

    /// Interreduces the minimal basis into the reduced one, sorted by lead ascending.
    fn finish(self) -> Vec<Row> {
        let order = self.order;
        let mut basis: Vec<Row> = self.active.iter().map(|&i| self.rows[i].clone()).collect();
        basis.sort_by(|a, b| order.cmp_terms(a.lead(), b.lead()));
        let mut leads = Leads::new();
        for (i, r) in basis.iter().enumerate() {
            leads.push(r, i);
        }
        let mut reduced = Vec::with_capacity(basis.len());
        for (i, r) in basis.iter().enumerate() {
            // Tail terms are below the lead, so only other elements can divide them.
            let mut others = Leads::new();
            for e in leads.entries.iter().filter(|e| e.3 != i) {
                others.entries.push(e.clone());
            }
            let row = reduce_with(order, &basis, &others, r.clone(), true, 1);
            reduced.push(row.monic());
        }
        reduced
    }
}

/// Reduced Gröbner basis of the module generated by `input`.
pub(crate) fn groebner(order: &ModuleOrder, input: Vec<Row>, opts: &GbOptions) -> Result<Vec<Row>> {
    Buchberger::new(order, opts).run(input)
}

/// Hilbert-driven variant for homogeneous rank-one input whose Hilbert
/// series (under any order) is already known.
pub(crate) fn groebner_with_target(
    order: &ModuleOrder,
    input: Vec<Row>,
    opts: &GbOptions,
    target: HilbertTarget,
) -> Result<Vec<Row>> {
    let mut engine = Buchberger::new(order, opts);
    engine.target = Some(target);
    engine.run(input)
}

/// Value at `d` of the series `num(t)/(1-t)^nvars`.
fn hilbert_function_from(num: &[i64], nvars: usize, d: u32) -> i128 {
    let mut total = 0i128;
    for (i, c) in num.iter().enumerate() {
        let Some(m) = (d as usize).checked_sub(i) else { break };
        total += *c as i128 * binomial(m + nvars - 1, nvars.saturating_sub(1));
    }
    total
}

fn binomial(n: usize, k: usize) -> i128 {
    let k = k.min(n - k);
    let mut acc = 1i128;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Full normal form of `f` with respect to a (monic) Gröbner basis.
pub(crate) fn normal_form(order: &ModuleOrder, basis: &[Row], f: Row) -> Row {
    let mut leads = Leads::new();
    for (i, r) in basis.iter().enumerate() {
        leads.push(r, i);
    }
    reduce_with(order, basis, &leads, f, true, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;

    fn row(order: &ModuleOrder, terms: &[(&[u16], u32, i64)]) -> Row {
        Row::new(
            order,
            terms
                .iter()
                .map(|(e, c, v)| Term { mono: Monomial::from_exponents(e), comp: *c, coeff: Field::Q.from_i64(*v) })
                .collect(),
        )
    }

    #[test]
    fn linear_reduction() {
        let o = ModuleOrder::rank_one(MonomialOrder::Grevlex);
        let gb = groebner(
            &o,
            vec![row(&o, &[(&[1, 0], 0, 1)]), row(&o, &[(&[1, 0], 0, 1), (&[0, 1], 0, 1)])],
            &GbOptions::default(),
        )
        .unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.iter().all(|r| r.terms.len() == 1));
    }

    #[test]
    fn degree_cap_trips() {
        let o = ModuleOrder::rank_one(MonomialOrder::Lex);
        // x - y^2, forcing high powers in lex is not needed; cap of 1 trips on insertion.
        let input = vec![row(&o, &[(&[1, 0], 0, 1), (&[0, 2], 0, -1)])];
        let err = groebner(&o, input, &GbOptions::with_degree_cap(1)).unwrap_err();
        assert!(matches!(err, Error::DegreeCap { cap: 1, .. }));
    }
}
