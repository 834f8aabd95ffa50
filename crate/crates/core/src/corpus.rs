//! Generators for the example families: rational normal curves, Veronese
//! and Segre embeddings, and seeded complete intersections. Each family
//! with a rational parametrization can also sample points of its variety.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{monomials_of_degree, Field, FieldElement, Monomial, MonomialOrder, Polynomial, Ring};
use crate::groebner::{hilbert_data, Ideal};
use crate::input::InputModel;

/// Largest total variable count a generated family may use.
pub const MAX_VARIABLES: usize = 12;

/// A corpus family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    RationalNormalCurve { d: usize },
    Veronese { n: usize, d: usize },
    Segre { a: usize, b: usize },
    CompleteIntersection { n: usize, degrees: Vec<u32>, seed: u64 },
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl Family {
    /// Number of ambient variables.
    pub fn nvars(&self) -> usize {
        match self {
            Family::RationalNormalCurve { d } => d + 1,
            Family::Veronese { n, d } => binomial(n + d, *d),
            Family::Segre { a, b } => (a + 1) * (b + 1),
            Family::CompleteIntersection { n, .. } => n + 1,
        }
    }

    /// Short identifier used as the ideal name in generated input.
    pub fn label(&self) -> String {
        match self {
            Family::RationalNormalCurve { d } => format!("RNC{d}"),
            Family::Veronese { n, d } => format!("V{n}_{d}"),
            Family::Segre { a, b } => format!("SEG{a}_{b}"),
            Family::CompleteIntersection { n, degrees, seed } => {
                let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                format!("CI{n}_{}_s{seed}", ds.join("_"))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(format!("{self}: {m}")));
        match self {
            Family::RationalNormalCurve { d } if *d < 1 => return bad("degree must be at least 1"),
            Family::Veronese { n, d } if *n < 1 || *d < 1 => return bad("n and d must be at least 1"),
            Family::Segre { a, b } if *a < 1 || *b < 1 => return bad("factors must have dimension at least 1"),
            Family::CompleteIntersection { n, degrees, .. } => {
                if degrees.is_empty() || degrees.len() > *n {
                    return bad("need between 1 and n forms");
                }
                if degrees.iter().any(|&d| d < 1) {
                    return bad("degrees must be positive");
                }
            }
            _ => {}
        }
        if self.nvars() > MAX_VARIABLES {
            return Err(Error::CapExceeded(format!("{self} needs {} variables (cap {MAX_VARIABLES})", self.nvars())));
        }
        Ok(())
    }

    /// Generates the family's ideal over `field`, verified against its parametrization.
    pub fn generate(&self, field: Field) -> Result<CorpusEntry> {
        self.validate()?;
        let ring = Ring::with_prefix("x", self.nvars(), field);
        let (gens, param) = match self {
            Family::RationalNormalCurve { d } => {
                let rows: Vec<Vec<Polynomial>> =
                    vec![(0..*d).map(|i| ring.var(i)).collect(), (1..=*d).map(|i| ring.var(i)).collect()];
                let gens = two_by_two_minors(&rows);
                let source = Ring::new(vec!["s".into(), "t".into()], field, MonomialOrder::Grevlex);
                let images = monomials_of_degree(2, *d as u32)
                    .into_iter()
                    .map(|m| Polynomial::monomial(&source, m, field.one()))
                    .collect();
                (gens, Some(Parametrization { source, images }))
            }
            Family::Veronese { n, d } => {
                let monos = monomials_of_degree(n + 1, *d as u32);
                let gens = veronese_quadrics(&ring, &monos);
                let source = Ring::with_prefix("s", n + 1, field);
                let images = monos.into_iter().map(|m| Polynomial::monomial(&source, m, field.one())).collect();
                (gens, Some(Parametrization { source, images }))
            }
            Family::Segre { a, b } => {
                let rows: Vec<Vec<Polynomial>> =
                    (0..=*a).map(|i| (0..=*b).map(|j| ring.var(i * (b + 1) + j)).collect()).collect();
                let gens = two_by_two_minors(&rows);
                let mut names: Vec<String> = (0..=*a).map(|i| format!("u{i}")).collect();
                names.extend((0..=*b).map(|j| format!("v{j}")));
                let source = Ring::new(names, field, MonomialOrder::Grevlex);
                let images = (0..=*a)
                    .flat_map(|i| (0..=*b).map(move |j| (i, j)))
                    .map(|(i, j)| source.var(i).mul(&source.var(a + 1 + j)))
                    .collect();
                (gens, Some(Parametrization { source, images }))
            }
            Family::CompleteIntersection { n, degrees, seed } => {
                (smooth_complete_intersection(&ring, *n, degrees, *seed)?, None)
            }
        };
        let ideal = Ideal::new(&ring, gens)?.trimmed()?;
        if let Some(p) = &param {
            for g in ideal.gens() {
                if !g.substitute(&p.images)?.is_zero() {
                    return Err(Error::InvalidArgument(format!("{self}: parametrization violates {g}")));
                }
            }
        }
        Ok(CorpusEntry { family: self.clone(), ideal, parametrization: param })
    }

    /// Certificate for "contains no lines and no conics", when known.
    pub fn conic_free(&self) -> Option<bool> {
        match self {
            // An irreducible curve of degree at least 3 contains no line or conic.
            Family::RationalNormalCurve { d } => Some(*d >= 3),
            // Lines of P^n map to conics under v_2; for d >= 3 images of lines have degree d.
            Family::Veronese { d, .. } => Some(*d >= 3),
            // Segre varieties are swept out by linear spaces.
            Family::Segre { .. } => Some(false),
            Family::CompleteIntersection { .. } => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::RationalNormalCurve { d } => write!(f, "rational-normal-curve:{d}"),
            Family::Veronese { n, d } => write!(f, "veronese:{n},{d}"),
            Family::Segre { a, b } => write!(f, "segre:{a},{b}"),
            Family::CompleteIntersection { n, degrees, seed } => {
                let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                write!(f, "complete-intersection:{n}:{}:{seed}", ds.join(","))
            }
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `rational-normal-curve:d`, `veronese:n,d`, `segre:a,b`,
    /// `complete-intersection:n:d1,d2,...[:seed]`.
    fn from_str(s: &str) -> Result<Family> {
        let bad = || Error::InvalidArgument(format!("unrecognized corpus family '{s}'"));
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let nums = |t: &str| -> Result<Vec<usize>> {
            t.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        match name {
            "rational-normal-curve" | "rnc" => match nums(params)?.as_slice() {
                [d] => Ok(Family::RationalNormalCurve { d: *d }),
                _ => Err(bad()),
            },
            "veronese" => match nums(params)?.as_slice() {
                [n, d] => Ok(Family::Veronese { n: *n, d: *d }),
                _ => Err(bad()),
            },
            "segre" => match nums(params)?.as_slice() {
                [a, b] => Ok(Family::Segre { a: *a, b: *b }),
                _ => Err(bad()),
            },
            "complete-intersection" | "ci" => {
                let parts: Vec<&str> = params.split(':').collect();
                let (n, degs, seed) = match parts.as_slice() {
                    [n, d] => (*n, *d, "0"),
                    [n, d, s] => (*n, *d, *s),
                    _ => return Err(bad()),
                };
                let n = n.trim().parse().map_err(|_| bad())?;
                let degrees = nums(degs)?.into_iter().map(|d| d as u32).collect();
                let seed = seed.trim().parse().map_err(|_| bad())?;
                Ok(Family::CompleteIntersection { n, degrees, seed })
            }
            _ => Err(bad()),
        }
    }
}

/// All 2×2 minors of a matrix of forms, row pairs outer, column pairs inner.
fn two_by_two_minors(rows: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let cols = rows[0].len();
    for r1 in 0..rows.len() {
        for r2 in r1 + 1..rows.len() {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    out.push(rows[r1][c1].mul(&rows[r2][c2]).sub(&rows[r1][c2].mul(&rows[r2][c1])));
                }
            }
        }
    }
    out
}

/// Quadratic binomials `y_a y_b - y_c y_e` with `m_a m_b = m_c m_e`, the
/// catalecticant 2×2 minors up to span.
fn veronese_quadrics(ring: &Arc<Ring>, monos: &[Monomial]) -> Vec<Polynomial> {
    let mut pairs: Vec<(Monomial, usize, usize)> = Vec::new();
    for i in 0..monos.len() {
        for j in i..monos.len() {
            pairs.push((monos[i].mul(&monos[j]), i, j));
        }
    }
    let mut out = Vec::new();
    for (k, (prod, i, j)) in pairs.iter().enumerate() {
        for (prod2, i2, j2) in &pairs[k + 1..] {
            if prod == prod2 {
                out.push(ring.var(*i).mul(&ring.var(*j)).sub(&ring.var(*i2).mul(&ring.var(*j2))));
            }
        }
    }
    out
}

/// Seeded forms with small integer coefficients, redrawn until the
/// scheme is a smooth complete intersection (empty singular locus).
fn smooth_complete_intersection(ring: &Arc<Ring>, n: usize, degrees: &[u32], seed: u64) -> Result<Vec<Polynomial>> {
    let field = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..32 {
        let forms: Vec<Polynomial> = degrees
            .iter()
            .map(|&d| {
                let terms = monomials_of_degree(n + 1, d)
                    .into_iter()
                    .map(|m| (m, field.from_i64(rng.gen_range(-3..=3))))
                    .collect();
                Polynomial::from_terms(ring, terms)
            })
            .collect();
        if forms.iter().any(Polynomial::is_zero) {
            continue;
        }
        let ideal = Ideal::new(ring, forms.clone())?;
        let hd = hilbert_data(&ideal)?;
        if hd.dimension != (n - degrees.len()) as i64 {
            continue;
        }
        if singular_locus_empty(&ideal, &forms)? {
            return Ok(forms);
        }
    }
    Err(Error::InvalidArgument("no smooth complete intersection found for this seed".into()))
}

/// True when `I + (maximal minors of the Jacobian)` defines the empty scheme.
fn singular_locus_empty(ideal: &Ideal, forms: &[Polynomial]) -> Result<bool> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let c = forms.len();
    let jac: Vec<Vec<Polynomial>> = forms.iter().map(|f| (0..n).map(|i| derivative(f, i)).collect()).collect();
    let mut gens = forms.to_vec();
    for cols in combinations(n, c) {
        let sub: Vec<Vec<Polynomial>> = jac.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        gens.push(determinant(&sub, ring));
    }
    let sing = Ideal::new(ring, gens)?;
    Ok(hilbert_data(&sing)?.dimension < 0)
}

pub(crate) fn derivative(f: &Polynomial, i: usize) -> Polynomial {
    let field = f.ring().field();
    let terms = f
        .terms()
        .iter()
        .filter(|(m, _)| m.exponent(i) > 0)
        .map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            let k = e[i];
            e[i] -= 1;
            (Monomial::from_exponents(&e), c.mul(&field.from_i64(k as i64)))
        })
        .collect();
    Polynomial::from_terms(f.ring(), terms)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
pub(crate) fn determinant(m: &[Vec<Polynomial>], ring: &Arc<Ring>) -> Polynomial {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        k => {
            let mut acc = ring.zero();
            for j in 0..k {
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = m[0][j].mul(&determinant(&minor, ring));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// A rational parametrization `source -> X` by forms of one degree.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub source: Arc<Ring>,
    pub images: Vec<Polynomial>,
}

impl Parametrization {
    /// Image of a source point.
    pub fn evaluate(&self, params: &[FieldElement]) -> Vec<FieldElement> {
        self.images.iter().map(|f| f.eval(params)).collect()
    }

    /// A point of `X` from small random source coordinates.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
        let field = self.source.field();
        loop {
            let params: Vec<FieldElement> =
                (0..self.source.nvars()).map(|_| field.from_i64(rng.gen_range(-9..=9))).collect();
            let p = self.evaluate(&params);
            if p.iter().any(|c| !c.is_zero()) {
                return p;
            }
        }
    }
}

/// A generated example: the family, its ideal and its parametrization.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub family: Family,
    pub ideal: Ideal,
    pub parametrization: Option<Parametrization>,
}

impl CorpusEntry {
    pub fn to_model(&self) -> InputModel {
        let mut model = InputModel::new("R", self.ideal.ring().clone());
        model.ideals.push((self.family.label(), self.ideal.clone()));
        model
    }

    pub fn require_parametrization(&self) -> Result<&Parametrization> {
        self.parametrization
            .as_ref()
            .ok_or_else(|| Error::SamplingUnavailable(format!("{} has no registered parametrization", self.family)))
    }
}

/// Families whose ambient variable count is `nvars`, in a fixed order.
fn candidates(nvars: usize) -> Vec<Family> {
    let mut out = Vec::new();
    if nvars >= 2 {
        out.push(Family::RationalNormalCurve { d: nvars - 1 });
    }
    for n in 1..nvars {
        for d in 2..nvars {
            let f = Family::Veronese { n, d };
            let m = f.nvars();
            if m == nvars && n > 1 {
                out.push(f);
            }
            if m > nvars {
                break;
            }
        }
    }
    for a in 1..nvars {
        for b in a..nvars {
            if (a + 1) * (b + 1) == nvars {
                out.push(Family::Segre { a, b });
            }
        }
    }
    out
}

/// Finds the registered family whose ideal equals `ideal` in these coordinates.
pub fn identify(ideal: &Ideal) -> Result<Option<CorpusEntry>> {
    let n = ideal.ring().nvars();
    for family in candidates(n) {
        let entry = family.generate(ideal.ring().field())?;
        let theirs = entry.ideal.gens().iter().map(|g| g.to_ring(ideal.ring())).collect();
        if Ideal::new(ideal.ring(), theirs)?.same_as(ideal)? {
            return Ok(Some(CorpusEntry { ideal: ideal.clone(), ..entry }));
        }
    }
    Ok(None)
}

/// The parametrization registered for `ideal`, or a sampling error.
pub fn parametrization_for(ideal: &Ideal) -> Result<Parametrization> {
    match identify(ideal)? {
        Some(entry) => Ok(entry.require_parametrization()?.clone()),
        None => Err(Error::SamplingUnavailable("no registered parametrization matches this ideal".into())),
    }
}

/// The default example corpus.
pub fn default_corpus() -> Vec<Family> {
    vec![
        Family::RationalNormalCurve { d: 3 },
        Family::RationalNormalCurve { d: 4 },
        Family::Veronese { n: 2, d: 2 },
        Family::Segre { a: 1, b: 2 },
        Family::CompleteIntersection { n: 3, degrees: vec![2, 2], seed: 0 },
    ]
}
