use ering::equivalence::Permutation;
use ering::ring::{e_add, e_inner, e_mul, pi, EElem, EMatrix, EVector};
use proptest::prelude::*;

const SYMBOLS: [char; 4] = ['0', 'k', 't', 'z'];

/// The multiplication table written out by hand, rows are the left factor.
const TABLE: [[char; 4]; 4] = [
    ['0', '0', '0', '0'],
    ['0', 'k', 'k', '0'],
    ['0', 't', 't', '0'],
    ['0', 'z', 'z', '0'],
];

/// Addition written out by hand: κ + τ = ζ and characteristic 2.
const SUMS: [[char; 4]; 4] = [
    ['0', 'k', 't', 'z'],
    ['k', '0', 'z', 't'],
    ['t', 'z', '0', 'k'],
    ['z', 't', 'k', '0'],
];

fn sym(c: char) -> EElem {
    EElem::from_symbol(c).unwrap()
}

fn all() -> impl Iterator<Item = EElem> {
    SYMBOLS.iter().map(|&c| sym(c))
}

fn evec(n: usize) -> impl Strategy<Value = Vec<EElem>> {
    prop::collection::vec((0usize..4).prop_map(|i| sym(SYMBOLS[i])), n)
}

#[test]
fn products_match_table() {
    for (i, &a) in SYMBOLS.iter().enumerate() {
        for (j, &b) in SYMBOLS.iter().enumerate() {
            assert_eq!(e_mul(sym(a), sym(b)), sym(TABLE[i][j]), "{a}*{b}");
            assert_eq!(sym(a) * sym(b), sym(TABLE[i][j]));
            assert_eq!(e_add(sym(a), sym(b)), sym(SUMS[i][j]), "{a}+{b}");
        }
    }
}

#[test]
fn named_identities() {
    let (k, t, z) = (EElem::KAPPA, EElem::TAU, EElem::ZETA);
    assert_eq!(k + t, z);
    assert_eq!(z + t, k);
    assert_eq!(k * t, k);
    assert_eq!(t * k, t);
    assert_eq!(z * k, z);
    assert_eq!(z * z, EElem::ZERO);
    assert!(pi(k) && pi(t) && !pi(EElem::ZERO) && !pi(z));
    for x in all() {
        assert_eq!(x + x, EElem::ZERO);
        assert_eq!(x * k, x);
        assert_eq!(x * t, x);
        assert_eq!(x * z, EElem::ZERO);
        assert_eq!(x.is_zero() || x == z, !x.pi());
    }
}

#[test]
fn associative_and_distributive() {
    for x in all() {
        for y in all() {
            for w in all() {
                assert_eq!((x * y) * w, x * (y * w));
                assert_eq!(x * (y + w), x * y + x * w);
                assert_eq!((y + w) * x, y * x + w * x);
            }
        }
    }
}

#[test]
fn zeta_ideal_is_two_sided() {
    let j = [EElem::ZERO, EElem::ZETA];
    for x in all() {
        for &y in &j {
            assert!(j.contains(&(x * y)));
            assert!(j.contains(&(y * x)));
        }
    }
}

#[test]
fn reduction_is_a_ring_map() {
    for x in all() {
        for y in all() {
            assert_eq!(pi(x + y), pi(x) ^ pi(y));
            assert_eq!(pi(x * y), pi(x) & pi(y));
        }
    }
}

#[test]
fn symbols_round_trip() {
    for &c in &SYMBOLS {
        assert_eq!(sym(c).symbol(), c);
    }
    assert!(EElem::from_symbol('q').is_err());
    let v: EVector = "k0k0".parse().unwrap();
    assert_eq!(v.elems(), vec![EElem::KAPPA, EElem::ZERO, EElem::KAPPA, EElem::ZERO]);
}

#[test]
fn inner_product_examples() {
    let kk: EVector = "kk".parse().unwrap();
    assert_eq!(e_inner(&kk, &kk).unwrap(), EElem::ZERO);
    let t0: EVector = "t0".parse().unwrap();
    assert_eq!(e_inner(&t0, &kk).unwrap(), EElem::TAU);
    assert!(e_inner(&kk, &"k".parse().unwrap()).is_err());
}

#[test]
fn ematrix_text_format() {
    let m: EMatrix = "E 1 2\nk k\n".parse().unwrap();
    assert_eq!(m, EMatrix::from_strs(&["kk"]).unwrap());
    let m: EMatrix = "E 2 4\nk 0 k 0\n0 k 0 k\n".parse().unwrap();
    assert_eq!(m, EMatrix::from_strs(&["k0k0", "0k0k"]).unwrap());
    assert_eq!(m.to_text(), "E 2 4\nk 0 k 0\n0 k 0 k\n");
    let compact: EMatrix = "E 2 4\nk0k0\n0k0k\n".parse().unwrap();
    assert_eq!(compact, m);
    assert!("E 2 4\nk 0 k 0\n".parse::<EMatrix>().is_err());
    assert!("E 1 4\nk 0 k\n".parse::<EMatrix>().is_err());
    assert!("F 1 4\nk 0 k 0\n".parse::<EMatrix>().is_err());
}

fn definitional_inner(w: &[EElem], z: &[EElem]) -> EElem {
    w.iter().zip(z).fold(EElem::ZERO, |acc, (&a, &b)| {
        let i = SYMBOLS.iter().position(|&c| c == a.symbol()).unwrap();
        let j = SYMBOLS.iter().position(|&c| c == b.symbol()).unwrap();
        acc + sym(TABLE[i][j])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inner_closed_form_matches_definition((w, z) in (1usize..=12).prop_flat_map(|n| (evec(n), evec(n)))) {
        let got = e_inner(&EVector::from_elems(&w), &EVector::from_elems(&z)).unwrap();
        prop_assert_eq!(got, definitional_inner(&w, &z));
    }

    #[test]
    fn inner_product_is_permutation_invariant(
        (w, z, perm) in (1usize..=10).prop_flat_map(|n| {
            (evec(n), evec(n), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let p = Permutation::new(perm).unwrap();
        let apply = |x: &[EElem]| EVector::from_elems(&p.mapping().iter().map(|&j| x[j]).collect::<Vec<_>>());
        let before = e_inner(&EVector::from_elems(&w), &EVector::from_elems(&z)).unwrap();
        prop_assert_eq!(e_inner(&apply(&w), &apply(&z)).unwrap(), before);
    }

    #[test]
    fn ematrix_round_trip(rows in 0usize..5, cols in 1usize..9, seed in prop::collection::vec(0usize..4, 40)) {
        let mut m = EMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, sym(SYMBOLS[seed[(r * cols + c) % seed.len()]]));
            }
        }
        prop_assert_eq!(m.to_text().parse::<EMatrix>().unwrap(), m);
    }
}
