use num_rational::BigRational;
use quadsec_core::flipcalc::{
    canonical_class, kv_class, kv_sides, m2_assumption_holds, pullback_h, verify_kv_rewrite, DivisorClass, Space, Sym,
};

#[test]
fn kv_rewrite_symbolically_and_on_the_integer_grid() {
    assert!(verify_kv_rewrite().unwrap());
    let (lhs, rhs) = kv_sides(&kv_class()).unwrap();
    let mut checked = 0;
    for r in 1..=4 {
        for n in 2 * r + 3..=12 {
            assert!(m2_assumption_holds(n, r));
            for k in 2..=10 {
                let l: Vec<BigRational> = lhs.eval_int(n, r, k).unwrap();
                assert_eq!(Some(l.clone()), rhs.eval_int(n, r, k), "n={n} r={r} k={k}");
                let ints: Vec<i64> = vec![2 * k + n, -k - n + r + 1, -n + 2 * r];
                assert_eq!(l, ints.into_iter().map(|v| BigRational::from_integer(v.into())).collect::<Vec<_>>());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn canonical_class_notation() {
    let k = canonical_class(Space::M2Tilde, &Sym::n(), &Sym::r()).unwrap();
    assert_eq!(k.bundle_notation(), "O(-n-1, n-r-1, n-2r-2)");
}

#[test]
fn pullback_of_the_flipping_bundle() {
    let c = DivisorClass::ints(Space::M2, &[3, -2]).unwrap();
    let pulled = pullback_h(&c).unwrap();
    assert_eq!(pulled, DivisorClass::ints(Space::M2Tilde, &[3, -2, -1]).unwrap());
    assert_eq!(pulled.bundle_notation(), "O(3, -2, -1)");
}
