//! Secant varieties by join elimination, the deficiency formula, fibers of
//! the quadric map and cubic generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conditions::line_restriction_rank;
use crate::corpus::{parametrization_for, Parametrization};
use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElement, MonomialOrder, Polynomial, Ring};
use crate::groebner::{eliminate, hilbert_data, kernel_of_map_mod, saturate, saturate_irrelevant, HilbertData, Ideal};

/// Ideal of the secant variety: `I(y) + I(z - y)` in `k[y, z]`, eliminate
/// `y`, saturate and trim. The result lives in a ring with the variable names
/// of `I`.
pub fn secant_ideal(ideal: &Ideal) -> Result<Ideal> {
    if !ideal.is_homogeneous() {
        return Err(Error::Inhomogeneous("secant ideals need a homogeneous ideal".into()));
    }
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut names: Vec<String> = (0..n).map(|i| format!("_y{i}")).collect();
    names.extend(ring.vars().iter().cloned());
    let join = Ring::new(names, ring.field(), MonomialOrder::Block(n));
    let ys: Vec<Polynomial> = (0..n).map(|i| join.var(i)).collect();
    let diffs: Vec<Polynomial> = (0..n).map(|i| join.var(n + i).sub(&join.var(i))).collect();
    let base = ideal.trimmed()?;
    let mut gens = Vec::new();
    for g in base.gens() {
        gens.push(g.substitute(&ys)?);
        gens.push(g.substitute(&diffs)?);
    }
    let cone = eliminate(&base.derive_in(&join, gens)?, n)?;
    let out = cone.derive_in(ring, cone.gens().iter().map(|g| g.to_ring(ring)).collect())?;
    saturate_irrelevant(&out)?.trimmed()
}

/// True iff every minimal generator has degree at most 3.
pub fn cubic_generation(sigma: &Ideal) -> Result<bool> {
    Ok(sigma.minimal_generators()?.iter().all(|g| g.degree().is_some_and(|d| d <= 3)))
}

#[derive(Clone, Debug)]
pub struct SecantReport {
    pub sigma: Ideal,
    /// Dimension of `X`.
    pub r: i64,
    pub dim_sigma: i64,
    pub delta: i64,
    /// `None` when `Σ` fills the ambient space.
    pub degree: Option<i64>,
    pub generated_in_degree_le_3: bool,
    /// Dimension of the image of `Σ` under the quadrics through `X`.
    pub dim_y: i64,
    pub formula_consistent: bool,
}

/// Secant variety, deficiency and image dimension of a variety cut out by
/// quadrics.
pub fn secant_report(ideal: &Ideal) -> Result<SecantReport> {
    let quadrics = ideal.degree_part(2)?;
    if quadrics.is_empty() {
        return Err(Error::EmptySystem);
    }
    let r = hilbert_data(ideal)?.dimension;
    let sigma = secant_ideal(ideal)?;
    let hs = hilbert_data(&sigma)?;
    let dim_sigma = hs.dimension;
    let delta = 2 * r + 1 - dim_sigma;
    let degree =
        if sigma.is_zero_ideal() || sigma.gb()?.iter().all(Polynomial::is_zero) { None } else { Some(hs.degree) };
    let generated_in_degree_le_3 = cubic_generation(&sigma)?;
    let dim_y = hilbert_data(&kernel_of_map_mod(&sigma, &quadrics)?)?.dimension;
    Ok(SecantReport {
        sigma,
        r,
        dim_sigma,
        delta,
        degree,
        generated_in_degree_le_3,
        dim_y,
        formula_consistent: 2 * delta == 2 * r - dim_y,
    })
}

/// Fiber through `p` of the map given by degree-2 forms: the scheme
/// `F_i(z) F_j(p) - F_j(z) F_i(p) = 0` with the base locus `(V)` and the
/// irrelevant ideal saturated away.
pub fn fiber_ideal(forms: &[Polynomial], p: &[FieldElement]) -> Result<Ideal> {
    let ring = forms.first().ok_or(Error::EmptySystem)?.ring().clone();
    for f in forms {
        ring.check_same(f.ring())?;
        if !f.is_homogeneous() || f.degree() != Some(2) {
            return Err(Error::MixedDegrees { expected: 2, found: f.degree().unwrap_or(0) });
        }
    }
    if p.len() != ring.nvars() {
        return Err(Error::VariableCount { expected: ring.nvars(), got: p.len() });
    }
    let t: Vec<FieldElement> = forms.iter().map(|f| f.eval(p)).collect();
    if t.iter().all(FieldElement::is_zero) {
        return Err(Error::PointOnBaseScheme);
    }
    let mut gens = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let g = forms[i].scale(&t[j]).sub(&forms[j].scale(&t[i]));
            if !g.is_zero() {
                gens.push(g);
            }
        }
    }
    let s = Ideal::new(&ring, gens)?;
    let base = Ideal::new(&ring, forms.to_vec())?;
    let off_base = saturate(&s, &base)?;
    saturate_irrelevant(&off_base)?.trimmed()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberKind {
    /// The single reduced point `{p}`.
    ReducedPoint,
    /// A linear `P^k`, `k >= 1`, meeting `X` in a quadric hypersurface of it.
    LinearSpace { dim: i64 },
    /// Anything else (a violation of the dichotomy).
    Other { dim: i64, degree: i64 },
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub fiber: Ideal,
    pub hilbert: HilbertData,
    /// Hilbert data of the fiber intersected with `X`, when the fiber is linear.
    pub meet: Option<HilbertData>,
    pub kind: FiberKind,
}

/// Classifies a fiber against the variety `X`.
pub fn classify_fiber(fiber: &Ideal, x: &Ideal, p: &[FieldElement]) -> Result<FiberReport> {
    let hilbert = hilbert_data(fiber)?;
    let linear = fiber.trimmed()?.gens().iter().all(|g| g.degree() == Some(1));
    let contains_p = fiber.gb()?.iter().all(|g| g.eval(p).is_zero());
    let mut meet = None;
    let kind = if !linear || !contains_p || hilbert.dimension < 0 {
        FiberKind::Other { dim: hilbert.dimension, degree: hilbert.degree }
    } else if hilbert.dimension == 0 {
        FiberKind::ReducedPoint
    } else {
        let m = hilbert_data(&saturate_irrelevant(&fiber.sum(x)?)?)?;
        let ok = m.numerator == [1, 1] && m.dimension == hilbert.dimension - 1;
        meet = Some(m);
        if ok {
            FiberKind::LinearSpace { dim: hilbert.dimension }
        } else {
            FiberKind::Other { dim: hilbert.dimension, degree: hilbert.degree }
        }
    };
    Ok(FiberReport { fiber: fiber.clone(), hilbert, meet, kind })
}

/// Fiber of the quadric system of `X` through `p`, classified.
pub fn fiber_report(x: &Ideal, p: &[FieldElement]) -> Result<FiberReport> {
    let quadrics = x.degree_part(2)?;
    if quadrics.is_empty() {
        return Err(Error::EmptySystem);
    }
    let fiber = fiber_ideal(&quadrics, p)?;
    classify_fiber(&fiber, x, p)
}

/// One sampled fiber.
#[derive(Clone, Debug)]
pub struct SampledFiber {
    pub point: Vec<FieldElement>,
    pub on_secant: bool,
    pub kind: FiberKind,
}

impl SampledFiber {
    /// Points on `Σ` must have linear fibers of positive dimension, all others a reduced point.
    pub fn consistent(&self) -> bool {
        match self.kind {
            FiberKind::ReducedPoint => !self.on_secant,
            FiberKind::LinearSpace { .. } => self.on_secant,
            FiberKind::Other { .. } => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiberSample {
    pub fibers: Vec<SampledFiber>,
}

impl FiberSample {
    pub fn violations(&self) -> usize {
        self.fibers.iter().filter(|f| !f.consistent()).count()
    }
}

fn random_point(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    loop {
        let p: Vec<FieldElement> = (0..n).map(|_| field.from_i64(rng.gen_range(-9..=9))).collect();
        if p.iter().any(|c| !c.is_zero()) {
            return p;
        }
    }
}

fn chord_point(param: &Parametrization, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let (a, b) = (param.sample(rng), param.sample(rng));
    let field = param.source.field();
    let (l, m) = (field.from_i64(rng.gen_range(1..=9)), field.from_i64(rng.gen_range(1..=9)));
    a.iter().zip(&b).map(|(x, y)| x.mul(&l).add(&y.mul(&m))).collect()
}

fn vanishes(ideal: &Ideal, p: &[FieldElement]) -> bool {
    ideal.gens().iter().all(|g| g.eval(p).is_zero())
}

/// Fibers through `trials` seeded points off `X`: even trials lie on chords of
/// `X`, odd trials are random points of the ambient space.
pub fn fiber_sample(x: &Ideal, trials: usize, seed: u64) -> Result<FiberSample> {
    let param = parametrization_for(x)?;
    let sigma = secant_ideal(x)?;
    let n = x.ring().nvars();
    let mut fibers = Vec::new();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let point = loop {
            let p = if trial % 2 == 0 {
                chord_point(&param, &mut rng)
            } else {
                random_point(x.ring().field(), n, &mut rng)
            };
            if !vanishes(x, &p) {
                break p;
            }
        };
        let rep = fiber_report(x, &point)?;
        fibers.push(SampledFiber { on_secant: vanishes(&sigma, &point), point, kind: rep.kind });
    }
    Ok(FiberSample { fibers })
}

/// Ranks of the quadric system restricted to seeded lines.
#[derive(Clone, Debug, Default)]
pub struct LineSample {
    /// Lines missing `X` and not contained in `Σ`.
    pub general: Vec<usize>,
    /// Lines through two sampled points of `X`.
    pub secant: Vec<usize>,
    /// Random lines skipped because they met `X` or lay in `Σ`.
    pub skipped: usize,
}

impl LineSample {
    pub fn general_surjective(&self) -> bool {
        self.general.iter().all(|&r| r == 3)
    }

    pub fn secant_deficient(&self) -> bool {
        self.secant.iter().all(|&r| r <= 2)
    }
}

/// Restricts the quadrics of `X` to `general` seeded lines that miss `X` and
/// are not contained in `Σ`, and to `secant` seeded chords of `X`.
pub fn line_sample(x: &Ideal, general: usize, secant: usize, seed: u64) -> Result<LineSample> {
    let param = parametrization_for(x)?;
    let sigma = secant_ideal(x)?;
    let quadrics = x.degree_part(2)?;
    if quadrics.is_empty() {
        return Err(Error::EmptySystem);
    }
    let ring = x.ring();
    let n = ring.nvars();
    let line = Ring::new(vec!["s".into(), "t".into()], ring.field(), MonomialOrder::Grevlex);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LineSample::default();
    while out.general.len() < general {
        let p = random_point(ring.field(), n, &mut rng);
        let q = random_point(ring.field(), n, &mut rng);
        let rank = match line_restriction_rank(&quadrics, &p, &q) {
            Ok(rank) => rank,
            Err(Error::CoincidentPoints) => continue,
            Err(e) => return Err(e),
        };
        let images: Vec<Polynomial> = (0..n).map(|i| line.var(0).scale(&p[i]).add(&line.var(1).scale(&q[i]))).collect();
        let on_line =
            |ideal: &Ideal| -> Result<Vec<Polynomial>> { ideal.gens().iter().map(|g| g.substitute(&images)).collect() };
        let meets_x = hilbert_data(&Ideal::new(&line, on_line(x)?)?)?.dimension >= 0;
        let inside_sigma = on_line(&sigma)?.iter().all(Polynomial::is_zero);
        if meets_x || inside_sigma {
            out.skipped += 1;
            continue;
        }
        out.general.push(rank);
    }
    while out.secant.len() < secant {
        let (p, q) = (param.sample(&mut rng), param.sample(&mut rng));
        match line_restriction_rank(&quadrics, &p, &q) {
            Ok(rank) => out.secant.push(rank),
            Err(Error::CoincidentPoints) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
