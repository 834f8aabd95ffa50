//! Checkable hypotheses on a system of forms: the linear-syzygy condition
//! (K_d), condition (N_2), restriction to linear subspaces and lines,
//! reduced four-point spans, and lines contained in a variety.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{CohomologyEngine, ModuleKind};
use crate::corpus::{identify, CorpusEntry};
use crate::error::{Error, Result};
use crate::exactalg::{FieldElement, Monomial, MonomialOrder, Polynomial, Ring};
use crate::groebner::{is_saturated, GbOptions, Ideal};
use crate::linalg::Matrix;
use crate::syzygy::{free_resolution, syzygies_with, Submodule, SyzygyElement};

/// Outcome for one Koszul relation `F_j e_i - F_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulCheck {
    pub i: usize,
    pub j: usize,
    pub member: bool,
    /// Coefficients over the linear syzygies when `member`.
    pub certificate: Option<Vec<Polynomial>>,
    /// Normal form modulo the linear syzygies otherwise.
    pub witness: Option<Vec<Polynomial>>,
}

#[derive(Clone, Debug)]
pub struct KdReport {
    pub holds: bool,
    pub d: u32,
    pub linear_syzygies: Vec<SyzygyElement>,
    pub pairs: Vec<KoszulCheck>,
}

impl KdReport {
    pub fn linear_syzygy_count(&self) -> usize {
        self.linear_syzygies.len()
    }
}

fn check_degrees(forms: &[Polynomial], d: u32) -> Result<()> {
    for f in forms {
        if !f.is_homogeneous() {
            return Err(Error::Inhomogeneous(format!("{f} is not homogeneous")));
        }
        if let Some(found) = f.degree() {
            if found != d {
                return Err(Error::MixedDegrees { expected: d, found });
            }
        }
    }
    Ok(())
}

/// Tests whether every Koszul relation among `forms` (all of degree `d`)
/// lies in the submodule generated by the syzygies with linear entries.
pub fn check_kd(forms: &[Polynomial], d: u32) -> Result<KdReport> {
    check_kd_with(forms, d, &GbOptions::default())
}

pub fn check_kd_with(forms: &[Polynomial], d: u32, opts: &GbOptions) -> Result<KdReport> {
    check_degrees(forms, d)?;
    let forms: Vec<Polynomial> = forms.iter().filter(|f| !f.is_zero()).cloned().collect();
    let Some(first) = forms.first() else {
        return Ok(KdReport { holds: true, d, linear_syzygies: Vec::new(), pairs: Vec::new() });
    };
    let ring = first.ring().clone();
    let shifts = vec![d; forms.len()];
    let linear: Vec<SyzygyElement> =
        syzygies_with(&forms, opts)?.into_iter().filter(|s| s.max_entry_degree() <= 1).collect();
    let sub = Submodule::new(&ring, &linear, &shifts, opts)?;
    let mut pairs = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let mut e = vec![ring.zero(); forms.len()];
            e[i] = forms[j].clone();
            e[j] = forms[i].neg();
            let m = sub.member(&SyzygyElement::new(e, shifts.clone())?)?;
            pairs.push(KoszulCheck { i, j, member: m.is_member, certificate: m.certificate, witness: m.witness });
        }
    }
    let holds = pairs.iter().all(|p| p.member);
    Ok(KdReport { holds, d, linear_syzygies: linear, pairs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N2Report {
    pub quadric_generation: bool,
    pub linear_first_syzygies: bool,
    pub projective_normality_checked_to: i64,
    pub projectively_normal_in_range: bool,
}

impl N2Report {
    pub fn holds(&self) -> bool {
        self.quadric_generation && self.linear_first_syzygies && self.projectively_normal_in_range
    }
}

/// Default degree bound for the normality check: `2d + 2`.
pub fn default_normality_bound(d: u32) -> i64 {
    2 * d as i64 + 2
}

/// Condition (N_2) for a saturated ideal: quadric generators, linear first
/// syzygies, and `H^1(I_X(k)) = 0` for `0 <= k <= bound`, which is the
/// surjectivity of `S_k -> H^0(O_X(k))`.
pub fn check_n2(ideal: &Ideal, bound: i64) -> Result<N2Report> {
    if !ideal.is_homogeneous() {
        return Err(Error::Inhomogeneous("(N2) needs a homogeneous ideal".into()));
    }
    if !is_saturated(ideal)? {
        return Err(Error::Unsaturated);
    }
    let res = free_resolution(ideal, 1)?;
    let quadric_generation = !res.betti.degrees(0).is_empty() && res.betti.degrees(0).iter().all(|&j| j == 2);
    let linear_first_syzygies = res.betti.degrees(1).iter().all(|&j| j == 3);
    let engine = CohomologyEngine::new(ideal, ModuleKind::Ideal)?;
    let projectively_normal_in_range = (0..=bound).all(|k| engine.sheaf_cohomology(k)[1] == 0);
    Ok(N2Report {
        quadric_generation,
        linear_first_syzygies,
        projective_normality_checked_to: bound,
        projectively_normal_in_range,
    })
}

/// Restricts forms to the linear subspace cut out by `subspace`, written in
/// coordinates `t0, ..., t_m` of a basis of its kernel.
pub fn restrict_system(forms: &[Polynomial], subspace: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let ring = match forms.first().or(subspace.first()) {
        Some(f) => f.ring().clone(),
        None => return Ok(Vec::new()),
    };
    let n = ring.nvars();
    let field = ring.field();
    let mut rows = Vec::new();
    for l in subspace {
        ring.check_same(l.ring())?;
        if !l.is_homogeneous() || l.degree() != Some(1) {
            return Err(Error::InvalidArgument(format!("{l} is not a nonzero linear form")));
        }
        rows.push((0..n).map(|i| l.coefficient(&Monomial::var(n, i))).collect::<Vec<_>>());
    }
    let basis = if rows.is_empty() {
        (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
    } else {
        let m = Matrix::from_rows(field, rows);
        if m.rank() < subspace.len() {
            return Err(Error::InvalidArgument("subspace forms are linearly dependent".into()));
        }
        m.kernel()
    };
    let target = Ring::with_prefix("t", basis.len().max(1), field);
    if basis.is_empty() {
        return Err(Error::InvalidArgument("the subspace is empty".into()));
    }
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let terms = basis.iter().enumerate().map(|(j, v)| (Monomial::var(basis.len(), j), v[i].clone())).collect();
            Polynomial::from_terms(&target, terms)
        })
        .collect();
    forms
        .iter()
        .map(|f| {
            ring.check_same(f.ring())?;
            f.substitute(&images)
        })
        .collect()
}

fn point_rank(points: &[&[FieldElement]]) -> usize {
    let field = points[0][0].field();
    Matrix::from_rows(field, points.iter().map(|p| p.to_vec()).collect()).rank()
}

/// Rank of the restriction of degree-2 forms to the line through `p` and `q`.
pub fn line_restriction_rank(forms: &[Polynomial], p: &[FieldElement], q: &[FieldElement]) -> Result<usize> {
    check_degrees(forms, 2)?;
    let Some(first) = forms.first() else { return Ok(0) };
    let ring = first.ring();
    let n = ring.nvars();
    if p.len() != n || q.len() != n {
        return Err(Error::VariableCount { expected: n, got: p.len().min(q.len()) });
    }
    if point_rank(&[p, q]) < 2 {
        return Err(Error::CoincidentPoints);
    }
    let line = Ring::new(vec!["s".into(), "t".into()], ring.field(), MonomialOrder::Grevlex);
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            Polynomial::from_terms(
                &line,
                vec![(Monomial::var(2, 0), p[i].clone()), (Monomial::var(2, 1), q[i].clone())],
            )
        })
        .collect();
    let monos =
        [Monomial::from_exponents(&[2, 0]), Monomial::from_exponents(&[1, 1]), Monomial::from_exponents(&[0, 2])];
    let mut rows = Vec::new();
    for f in forms {
        let g = f.substitute(&images)?;
        rows.push(monos.iter().map(|m| g.coefficient(m)).collect());
    }
    Ok(Matrix::from_rows(ring.field(), rows).rank())
}

#[derive(Clone, Debug)]
pub struct FourPointReport {
    pub all_passed: bool,
    pub trials: usize,
    /// Quadruples whose span was smaller than a `P^3`.
    pub failures: Vec<Vec<Vec<FieldElement>>>,
    /// Draws discarded because two points coincided.
    pub resampled: usize,
    /// Registry certificate that `X` has no lines and no conics (`None` if unknown).
    pub conic_free: Option<bool>,
}

impl FourPointReport {
    /// Reduced spot checks only support 4-very-ampleness when `X` is also
    /// certified free of lines and conics.
    pub fn supports_four_very_ample(&self) -> bool {
        self.all_passed && self.conic_free == Some(true)
    }
}

fn projectively_equal(a: &[FieldElement], b: &[FieldElement]) -> bool {
    point_rank(&[a, b]) < 2
}

/// Samples `trials` quadruples of distinct points of `X` from its registered
/// parametrization and checks that each spans a `P^3`.
pub fn four_point_span_check(ideal: &Ideal, trials: usize, seed: u64) -> Result<FourPointReport> {
    let entry = identify(ideal)?
        .ok_or_else(|| Error::SamplingUnavailable("no registered parametrization matches this ideal".into()))?;
    four_point_span_check_entry(&entry, trials, seed)
}

pub fn four_point_span_check_entry(entry: &CorpusEntry, trials: usize, seed: u64) -> Result<FourPointReport> {
    let param = entry.require_parametrization()?;
    let mut failures = Vec::new();
    let mut resampled = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut pts: Vec<Vec<FieldElement>> = Vec::new();
        while pts.len() < 4 {
            let p = param.sample(&mut rng);
            if pts.iter().any(|q| projectively_equal(q, &p)) {
                resampled += 1;
                continue;
            }
            pts.push(p);
        }
        let refs: Vec<&[FieldElement]> = pts.iter().map(Vec::as_slice).collect();
        if point_rank(&refs) < 4 {
            failures.push(pts);
        }
    }
    Ok(FourPointReport {
        all_passed: failures.is_empty(),
        trials,
        failures,
        resampled,
        conic_free: entry.family.conic_free(),
    })
}

/// Lines in one affine chart of the Grassmannian of lines.
#[derive(Clone, Debug)]
pub struct FanoChart {
    pub i: usize,
    pub j: usize,
    /// Conditions on the chart coordinates `a_k, b_k` for the line to lie in `X`.
    pub ideal: Ideal,
    pub empty: bool,
}

#[derive(Clone, Debug)]
pub struct FanoReport {
    pub contains_line: bool,
    pub charts: Vec<FanoChart>,
}

/// Largest projective dimension accepted by [`fano_lines`].
pub const FANO_MAX_N: usize = 5;

/// Decides whether `X` contains a line by covering `G(1, n)` with the charts
/// spanned by `P = e_i + Σ a_k e_k` and `Q = e_j + Σ b_k e_k` (`k ∉ {i, j}`).
pub fn fano_lines(ideal: &Ideal) -> Result<FanoReport> {
    let ring = ideal.ring();
    let n1 = ring.nvars();
    if n1 < 2 || n1 - 1 > FANO_MAX_N {
        return Err(Error::CapExceeded(format!("line search supports 1 <= n <= {FANO_MAX_N}")));
    }
    let gens = ideal.trimmed()?.gens().to_vec();
    let mut charts = Vec::new();
    for i in 0..n1 {
        for j in i + 1..n1 {
            let free: Vec<usize> = (0..n1).filter(|&k| k != i && k != j).collect();
            let m = free.len();
            let mut names: Vec<String> = free.iter().map(|k| format!("a{k}")).collect();
            names.extend(free.iter().map(|k| format!("b{k}")));
            names.push("s".into());
            names.push("t".into());
            let big = Ring::new(names, ring.field(), MonomialOrder::Grevlex);
            let (s, t) = (big.var(2 * m), big.var(2 * m + 1));
            let images: Vec<Polynomial> = (0..n1)
                .map(|x| {
                    if x == i {
                        s.clone()
                    } else if x == j {
                        t.clone()
                    } else {
                        let pos = free.iter().position(|&k| k == x).expect("free index");
                        s.mul(&big.var(pos)).add(&t.mul(&big.var(m + pos)))
                    }
                })
                .collect();
            let chart_ring = Ring::new(big.vars()[..2 * m].to_vec(), ring.field(), MonomialOrder::Grevlex);
            let mut conditions = Vec::new();
            for g in &gens {
                let sub = g.substitute(&images)?;
                let mut by_st: BTreeMap<(u16, u16), Vec<(Monomial, FieldElement)>> = BTreeMap::new();
                for (mono, c) in sub.terms() {
                    let e = mono.exponents();
                    by_st
                        .entry((e[2 * m], e[2 * m + 1]))
                        .or_default()
                        .push((Monomial::from_exponents(&e[..2 * m]), c.clone()));
                }
                for (_, terms) in by_st {
                    conditions.push(Polynomial::from_terms(&chart_ring, terms));
                }
            }
            let chart_ideal = Ideal::new(&chart_ring, conditions)?.with_options(ideal.options().clone());
            let empty = chart_ideal.is_unit()?;
            charts.push(FanoChart { i, j, ideal: chart_ideal, empty });
        }
    }
    Ok(FanoReport { contains_line: charts.iter().any(|c| !c.empty), charts })
}

/// Quadric part `I_2` of an ideal, as an echelon basis.
pub fn quadric_system(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    ideal.degree_part(2)
}
