//! Fixtures shared by the benchmark targets.

use quadsec_core::corpus::Family;
use quadsec_core::{Field, Ideal};

/// Ideal of a corpus family over the rationals.
pub fn corpus_ideal(family: Family) -> Ideal {
    family.generate(Field::Q).expect("corpus family generates").ideal
}

/// A fresh copy with no cached Gröbner basis.
pub fn uncached(ideal: &Ideal) -> Ideal {
    Ideal::new(ideal.ring(), ideal.gens().to_vec()).expect("same ring")
}

pub fn twisted_cubic() -> Ideal {
    corpus_ideal(Family::RationalNormalCurve { d: 3 })
}

pub fn rational_normal_quartic() -> Ideal {
    corpus_ideal(Family::RationalNormalCurve { d: 4 })
}

pub fn veronese_surface() -> Ideal {
    corpus_ideal(Family::Veronese { n: 2, d: 2 })
}

pub fn quadric_intersection() -> Ideal {
    corpus_ideal(Family::CompleteIntersection { n: 3, degrees: vec![2, 2], seed: 0 })
}
