//! Sheaf cohomology of twisted ideal sheaves and structure sheaves on `P^n`
//! through graded local duality: a minimal free resolution is dualized and
//! `Ext^j(M, S)_t` is measured degree by degree with exact linear algebra.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{monomials_of_degree, FieldElement, Polynomial, Ring};
use crate::flipcalc::{threshold, ThresholdVariant};
use crate::groebner::{hilbert_data, saturate_irrelevant, HilbertData, Ideal};
use crate::linalg::SpanReducer;
use crate::syzygy::free_resolution;

/// Which graded module of a homogeneous ideal `J` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// `J` itself; its sheaf is the ideal sheaf.
    Ideal,
    /// `S/J`; its sheaf is the structure sheaf of the scheme.
    Quotient,
}

/// Saturation of `I^a` by the irrelevant ideal.
pub fn ideal_power_saturated(ideal: &Ideal, a: u32) -> Result<Ideal> {
    if a < 1 {
        return Err(Error::InvalidArgument("the power must be at least 1".into()));
    }
    let base = ideal.trimmed()?;
    saturate_irrelevant(&base.power(a))?.trimmed()
}

fn binomial_i128(x: i64, m: i64) -> i128 {
    // C(x + m, m) as a polynomial in x.
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..=m {
        num *= (x + i) as i128;
        den *= i as i128;
    }
    num / den
}

/// `dim S_t` for `S` with `nvars` variables.
fn ring_dim(nvars: usize, t: i64) -> u64 {
    if t < 0 {
        0
    } else {
        binomial_i128(t, nvars as i64 - 1) as u64
    }
}

/// A dualized resolution ready to answer cohomology queries at any twist.
pub struct CohomologyEngine {
    ring: Arc<Ring>,
    kind: ModuleKind,
    hilbert: HilbertData,
    /// Basis degrees of `G_0, ..., G_L`.
    degrees: Vec<Vec<i64>>,
    /// `maps[j]` : `G_{j+1} -> G_j`, by columns.
    maps: Vec<Vec<Vec<Polynomial>>>,
}

impl CohomologyEngine {
    pub fn new(ideal: &Ideal, kind: ModuleKind) -> Result<CohomologyEngine> {
        if !ideal.is_homogeneous() {
            return Err(Error::Inhomogeneous("cohomology needs a homogeneous ideal".into()));
        }
        let ring = ideal.ring().clone();
        let hilbert = hilbert_data(ideal)?;
        let res = free_resolution(ideal, ring.nvars())?;
        let mut degrees: Vec<Vec<i64>> = Vec::new();
        let mut maps: Vec<Vec<Vec<Polynomial>>> = Vec::new();
        if kind == ModuleKind::Quotient {
            degrees.push(vec![0]);
        }
        for (i, m) in res.maps.iter().enumerate() {
            degrees.push(m.source.iter().map(|&d| d as i64).collect());
            if i > 0 || kind == ModuleKind::Quotient {
                maps.push(m.columns.clone());
            }
        }
        Ok(CohomologyEngine { ring, kind, hilbert, degrees, maps })
    }

    /// Projective dimension `n` of the ambient `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.ring.nvars() - 1
    }

    pub fn hilbert(&self) -> &HilbertData {
        &self.hilbert
    }

    /// `dim M_k`.
    pub fn module_dim(&self, k: i64) -> i128 {
        let quotient = self.hilbert.hilbert_function(k);
        match self.kind {
            ModuleKind::Quotient => quotient,
            ModuleKind::Ideal => ring_dim(self.ring.nvars(), k) as i128 - quotient,
        }
    }

    /// Hilbert polynomial of `M` at `k`, the expected Euler characteristic.
    pub fn hilbert_polynomial(&self, k: i64) -> i128 {
        let quotient = self.hilbert.hilbert_polynomial(k);
        match self.kind {
            ModuleKind::Quotient => quotient,
            ModuleKind::Ideal => binomial_i128(k, self.ambient_dim() as i64) - quotient,
        }
    }

    fn cochain_dim(&self, j: usize, t: i64) -> u64 {
        self.degrees.get(j).map_or(0, |ds| ds.iter().map(|&a| ring_dim(self.ring.nvars(), t + a)).sum())
    }

    /// Rank in degree `t` of the dual of `G_j -> G_{j-1}` (for `1 <= j <= L`).
    fn dual_rank(&self, j: usize, t: i64) -> usize {
        let Some(columns) = self.maps.get(j - 1) else { return 0 };
        let targets = &self.degrees[j - 1];
        let one = self.ring.field().one();
        let mut span: SpanReducer<(u32, Vec<u16>)> = SpanReducer::new();
        for (r, &a) in targets.iter().enumerate() {
            let deg = t + a;
            if deg < 0 {
                continue;
            }
            for u in monomials_of_degree(self.ring.nvars(), deg as u32) {
                let mut v: BTreeMap<(u32, Vec<u16>), FieldElement> = BTreeMap::new();
                for (c, col) in columns.iter().enumerate() {
                    for (m, coeff) in col[r].mul_term(&u, &one).terms() {
                        v.insert((c as u32, m.key().to_vec()), coeff.clone());
                    }
                }
                span.insert(v);
            }
        }
        span.rank()
    }

    /// `dim Ext^j(M, S)_t` for `j = 0, ..., n+1`.
    pub fn ext_dims(&self, t: i64) -> Vec<u64> {
        let top = self.ring.nvars();
        let ranks: Vec<usize> = (0..=top + 1).map(|j| if j == 0 { 0 } else { self.dual_rank(j, t) }).collect();
        (0..=top)
            .map(|j| {
                let c = self.cochain_dim(j, t) as i64;
                (c - ranks[j] as i64 - ranks[j + 1] as i64) as u64
            })
            .collect()
    }

    /// `(h^0, ..., h^n)` of the sheaf of `M` twisted by `k`.
    pub fn sheaf_cohomology(&self, k: i64) -> Vec<u64> {
        let n = self.ambient_dim();
        let t = -k - n as i64 - 1;
        let ext = self.ext_dims(t);
        let mut h = vec![0u64; n + 1];
        for (i, hi) in h.iter_mut().enumerate().skip(1) {
            *hi = ext[n - i];
        }
        // H^0 of the sheaf from the four-term sequence with local cohomology.
        h[0] = (self.module_dim(k) - ext[n + 1] as i128 + ext[n] as i128) as u64;
        h
    }

    pub fn euler_characteristic(h: &[u64]) -> i128 {
        h.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { v as i128 } else { -(v as i128) }).sum()
    }
}

/// Convenience wrapper: cohomology of `M~(k)` for one twist.
pub fn sheaf_cohomology(ideal: &Ideal, kind: ModuleKind, k: i64) -> Result<Vec<u64>> {
    Ok(CohomologyEngine::new(ideal, kind)?.sheaf_cohomology(k))
}

/// `h^i(P^n, I^a(k))` values keyed by `(i, a, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    pub n: usize,
    pub ideal_id: String,
    pub entries: BTreeMap<(usize, u32, i64), u64>,
    /// Twists `(a, k)` where the Euler characteristic disagreed with the Hilbert polynomial.
    pub euler_mismatches: Vec<(u32, i64)>,
    /// Twists where `h^0` disagreed with the degree-`k` dimension of the saturated power.
    pub h0_mismatches: Vec<(u32, i64)>,
}

impl CohomologyTable {
    pub fn new(n: usize, ideal: &Ideal) -> CohomologyTable {
        CohomologyTable { n, ideal_id: ideal_fingerprint(ideal), ..Default::default() }
    }

    pub fn get(&self, i: usize, a: u32, k: i64) -> Option<u64> {
        self.entries.get(&(i, a, k)).copied()
    }

    fn record(&mut self, engine: &CohomologyEngine, a: u32, k: i64, h: &[u64]) {
        for (i, &v) in h.iter().enumerate() {
            self.entries.insert((i, a, k), v);
        }
        if CohomologyEngine::euler_characteristic(h) != engine.hilbert_polynomial(k) {
            self.euler_mismatches.push((a, k));
        }
        if h[0] as i128 != engine.module_dim(k) {
            self.h0_mismatches.push((a, k));
        }
    }
}

/// Deterministic 64-bit FNV-1a fingerprint of an ideal's reduced basis.
pub fn ideal_fingerprint(ideal: &Ideal) -> String {
    let text = match ideal.gb() {
        Ok(gb) => gb.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","),
        Err(_) => ideal.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","),
    };
    let mut h: u64 = 0xcbf29ce484222325;
    for b in ideal.ring().vars().join(" ").bytes().chain(text.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// A nonzero higher cohomology group inside the range where vanishing is asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub a: u32,
    pub k: i64,
    pub value: u64,
}

/// Below-bound values, recorded for information only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub a: u32,
    pub k: i64,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct VanishingScan {
    pub d: u32,
    pub n: usize,
    pub r: i64,
    pub e: i64,
    /// `(a, first k)` where vanishing is asserted.
    pub bounds: Vec<(u32, i64)>,
    pub table: CohomologyTable,
    pub violations: Vec<Violation>,
    pub probes: Vec<Probe>,
}

impl VanishingScan {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.table.euler_mismatches.is_empty() && self.table.h0_mismatches.is_empty()
    }
}

fn variety_dims(ideal: &Ideal) -> Result<(usize, i64, i64)> {
    let n = ideal.ring().nvars() - 1;
    let r = hilbert_data(ideal)?.dimension;
    if r < 0 {
        return Err(Error::InvalidArgument("the ideal defines the empty scheme".into()));
    }
    Ok((n, r, n as i64 - r))
}

/// Checks `h^i(I^a(k)) = 0` for `i > 0` and `k` from `d(e+a-1)-(n+1)` through
/// `k_window` further twists, for each `a` in `a_range`.
pub fn vanishing_scan(ideal: &Ideal, d: u32, a_range: RangeInclusive<u32>, k_window: i64) -> Result<VanishingScan> {
    let (n, r, e) = variety_dims(ideal)?;
    let mut table = CohomologyTable::new(n, ideal);
    let mut violations = Vec::new();
    let mut probes = Vec::new();
    let mut bounds = Vec::new();
    for a in a_range {
        let power = ideal_power_saturated(ideal, a)?;
        let engine = CohomologyEngine::new(&power, ModuleKind::Ideal)?;
        let formula = threshold(ThresholdVariant::Little, d as i64, e, a as i64, n as i64, r)?;
        let bound = formula.first_integer();
        bounds.push((a, bound));
        let below = engine.sheaf_cohomology(bound - 1);
        table.record(&engine, a, bound - 1, &below);
        probes.push(Probe { a, k: bound - 1, values: below });
        for k in bound..=bound + k_window {
            let h = engine.sheaf_cohomology(k);
            table.record(&engine, a, k, &h);
            for (i, &v) in h.iter().enumerate().skip(1) {
                if v != 0 {
                    violations.push(Violation { i, a, k, value: v });
                }
            }
        }
    }
    Ok(VanishingScan { d, n, r, e, bounds, table, violations, probes })
}

#[derive(Clone, Debug)]
pub struct SecondVanishing {
    pub a: u32,
    pub twist: i64,
    /// Whether `a > n - 3r - 1`.
    pub in_range: bool,
    pub values: Vec<u64>,
    pub violations: Vec<Violation>,
    pub euler_consistent: bool,
}

/// Checks `h^i(I^a(2a-1)) = 0` for `i > 0`.
pub fn second_vanishing(ideal: &Ideal, a: u32) -> Result<SecondVanishing> {
    let (n, r, _) = variety_dims(ideal)?;
    let formula = threshold(ThresholdVariant::Second, 0, 0, a as i64, n as i64, r)?;
    let twist = 2 * a as i64 - 1;
    let power = ideal_power_saturated(ideal, a)?;
    let engine = CohomologyEngine::new(&power, ModuleKind::Ideal)?;
    let values = engine.sheaf_cohomology(twist);
    let violations = values
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| Violation { i, a, k: twist, value: v })
        .collect();
    let euler_consistent = CohomologyEngine::euler_characteristic(&values) == engine.hilbert_polynomial(twist);
    Ok(SecondVanishing { a, twist, in_range: formula.holds(a as i64), values, violations, euler_consistent })
}
