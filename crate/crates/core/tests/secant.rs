use quadsec_core::conditions::line_restriction_rank;
use quadsec_core::corpus::{CorpusEntry, Family};
use quadsec_core::groebner::hilbert_data;
use quadsec_core::secant::{fiber_report, secant_ideal, secant_report, FiberKind};
use quadsec_core::{Field, FieldElement, Ideal, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn entry(f: Family) -> CorpusEntry {
    f.generate(Field::Q).unwrap()
}

fn combine(p: &[FieldElement], q: &[FieldElement], l: i64, m: i64) -> Vec<FieldElement> {
    let (l, m) = (Field::Q.from_i64(l), Field::Q.from_i64(m));
    p.iter().zip(q).map(|(a, b)| a.mul(&l).add(&b.mul(&m))).collect()
}

fn on(ideal: &Ideal, p: &[FieldElement]) -> bool {
    ideal.gens().iter().all(|g| g.eval(p).is_zero())
}

/// Every point of 50 seeded chords satisfies the secant ideal.
fn chord_oracle(e: &CorpusEntry, sigma: &Ideal, seed: u64) {
    let param = e.require_parametrization().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let p = param.sample(&mut rng);
        let q = param.sample(&mut rng);
        let (l, m) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
        assert!(on(sigma, &combine(&p, &q, l, m)), "{}", e.family);
    }
}

#[test]
fn twisted_cubic() {
    let e = entry(Family::RationalNormalCurve { d: 3 });
    let rep = secant_report(&e.ideal).unwrap();
    assert!(rep.sigma.gb().unwrap().is_empty());
    assert_eq!((rep.dim_sigma, rep.delta, rep.dim_y), (3, 0, 2));
    assert_eq!(rep.degree, None);
    assert!(rep.formula_consistent);
}

#[test]
fn rational_normal_quartic() {
    let e = entry(Family::RationalNormalCurve { d: 4 });
    let rep = secant_report(&e.ideal).unwrap();
    assert_eq!(rep.sigma.gens().len(), 1);
    assert_eq!(rep.sigma.gens()[0].degree(), Some(3));
    assert_eq!((rep.r, rep.dim_sigma, rep.delta, rep.degree, rep.dim_y), (1, 3, 0, Some(3), 2));
    assert!(rep.formula_consistent && rep.generated_in_degree_le_3);
    chord_oracle(&e, &rep.sigma, 1);
    // X lies on its secant variety.
    for g in rep.sigma.gens() {
        assert!(e.ideal.contains(g).unwrap());
    }
}

#[test]
fn veronese_surface() {
    let e = entry(Family::Veronese { n: 2, d: 2 });
    let rep = secant_report(&e.ideal).unwrap();
    assert_eq!(rep.sigma.gens().len(), 1);
    assert_eq!(rep.sigma.gens()[0].degree(), Some(3));
    assert_eq!((rep.r, rep.dim_sigma, rep.delta, rep.degree, rep.dim_y), (2, 4, 1, Some(3), 2));
    assert!(rep.formula_consistent && rep.generated_in_degree_le_3);
    chord_oracle(&e, &rep.sigma, 2);
}

#[test]
fn segre_secant_fills_space() {
    let e = entry(Family::Segre { a: 1, b: 2 });
    let sigma = secant_ideal(&e.ideal).unwrap();
    assert!(sigma.gb().unwrap().is_empty());
}

fn fiber_dichotomy(f: Family, seed: u64) -> (usize, usize) {
    let e = entry(f.clone());
    let sigma = secant_ideal(&e.ideal).unwrap();
    let param = e.require_parametrization().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = e.ideal.ring().nvars();
    let (mut on_sec, mut off_sec) = (0, 0);
    for i in 0..20 {
        let p = if i % 2 == 0 {
            let (a, b) = (param.sample(&mut rng), param.sample(&mut rng));
            combine(&a, &b, rng.gen_range(1..=9), rng.gen_range(1..=9))
        } else {
            (0..n).map(|_| Field::Q.from_i64(rng.gen_range(-9..=9))).collect()
        };
        if on(&e.ideal, &p) {
            continue;
        }
        let rep = fiber_report(&e.ideal, &p).unwrap();
        if on(&sigma, &p) {
            on_sec += 1;
            assert!(matches!(rep.kind, FiberKind::LinearSpace { .. }), "{f}: {:?}", rep.kind);
        } else {
            off_sec += 1;
            assert_eq!(rep.kind, FiberKind::ReducedPoint, "{f}");
        }
    }
    (on_sec, off_sec)
}

#[test]
fn quartic_fibers() {
    let (on_sec, off_sec) = fiber_dichotomy(Family::RationalNormalCurve { d: 4 }, 5);
    assert!(on_sec > 0 && off_sec > 0);
}

#[test]
fn veronese_fibers_are_planes_on_the_secant() {
    let e = entry(Family::Veronese { n: 2, d: 2 });
    let param = e.require_parametrization().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let p = combine(&param.sample(&mut rng), &param.sample(&mut rng), 1, 1);
    let rep = fiber_report(&e.ideal, &p).unwrap();
    assert_eq!(rep.kind, FiberKind::LinearSpace { dim: 2 });
    assert_eq!(rep.meet.unwrap().degree, 2);
    let (on_sec, off_sec) = fiber_dichotomy(Family::Veronese { n: 2, d: 2 }, 6);
    assert!(on_sec > 0 && off_sec > 0);
}

#[test]
fn line_restrictions_on_the_quartic() {
    let e = entry(Family::RationalNormalCurve { d: 4 });
    let sigma = secant_ideal(&e.ideal).unwrap();
    let quadrics = e.ideal.degree_part(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut general = 0;
    while general < 200 {
        let p: Vec<FieldElement> = (0..5).map(|_| Field::Q.from_i64(rng.gen_range(-9..=9))).collect();
        let q: Vec<FieldElement> = (0..5).map(|_| Field::Q.from_i64(rng.gen_range(-9..=9))).collect();
        let Ok(rank) = line_restriction_rank(&quadrics, &p, &q) else { continue };
        // Restrict X and Σ to the line through p and q.
        let line = quadsec_core::Ring::with_prefix("s", 2, Field::Q);
        let images: Vec<Polynomial> = (0..5).map(|i| line.var(0).scale(&p[i]).add(&line.var(1).scale(&q[i]))).collect();
        let meet = Ideal::new(&line, e.ideal.gens().iter().map(|g| g.substitute(&images).unwrap()).collect()).unwrap();
        let misses_x = hilbert_data(&meet).unwrap().dimension < 0;
        let inside_sigma = sigma.gens().iter().all(|g| g.substitute(&images).unwrap().is_zero());
        if misses_x && !inside_sigma {
            assert_eq!(rank, 3);
            general += 1;
        }
    }
    let param = e.require_parametrization().unwrap();
    for _ in 0..50 {
        let (p, q) = (param.sample(&mut rng), param.sample(&mut rng));
        if let Ok(rank) = line_restriction_rank(&quadrics, &p, &q) {
            assert!(rank <= 2);
        }
    }
}
