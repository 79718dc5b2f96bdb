use ering::gf2::{self, BitMatrix, BitVector};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), cols), rows).prop_map(move |bits| {
        let vs: Vec<BitVector> = bits.iter().map(|r| BitVector::from_bits(r)).collect();
        BitMatrix::from_rows(cols, &vs)
    })
}

fn sized(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| matrix(r, c))
}

fn pair(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (BitMatrix, BitMatrix)> {
    (0..=max_rows, 0..=max_rows, 1..=max_cols).prop_flat_map(|(r1, r2, c)| (matrix(r1, c), matrix(r2, c)))
}

/// Plain Gaussian elimination on a `Vec<Vec<u8>>`, independent of the packed code.
fn naive_rank(m: &BitMatrix) -> usize {
    let mut a: Vec<Vec<u8>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) as u8).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] == 1) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                row.iter_mut().zip(&pivot).for_each(|(x, p)| *x ^= p);
            }
        }
        rank += 1;
    }
    rank
}

/// All codewords by summing every subset of rows.
fn naive_codewords(m: &BitMatrix) -> Vec<Vec<bool>> {
    let k = m.rows();
    (0u32..1 << k)
        .map(|mask| {
            (0..m.cols())
                .map(|c| {
                    (0..k)
                        .filter(|&r| mask >> r & 1 == 1)
                        .fold(false, |acc, r| acc ^ m.get(r, c))
                })
                .collect()
        })
        .collect()
}

fn construction_example() -> BitMatrix {
    BitMatrix::from_strs(&["100010", "010011", "001001", "000111"]).unwrap()
}

#[test]
fn rref_of_identity() {
    let r = gf2::rref(&BitMatrix::identity(3));
    assert_eq!(r.reduced, BitMatrix::identity(3));
    assert_eq!(r.pivots, vec![0, 1, 2]);
    assert_eq!(r.rank, 3);
}

#[test]
fn example_ranks_and_hull() {
    let g = construction_example();
    assert_eq!(gf2::rank(&g), 4);
    let gram = gf2::mul_transpose(&g, &g).unwrap();
    assert_eq!((gram.rows(), gram.cols()), (4, 4));
    assert_eq!(gf2::rank(&gram), 2);
    // hull dimension by brute force: codewords orthogonal to every row
    let hull = naive_codewords(&g)
        .into_iter()
        .filter(|w| {
            let w = BitVector::from_bits(w);
            g.row_vectors().all(|r| !r.dot(&w))
        })
        .count();
    assert_eq!(hull, 4);
    let inter = gf2::intersect_row_spaces(&g, &gf2::nullspace(&g)).unwrap();
    assert_eq!(inter.rows(), 2);
}

#[test]
fn zero_matrix_rank() {
    assert_eq!(gf2::rank(&BitMatrix::zeros(3, 5)), 0);
}

#[test]
fn even_all_ones_row_is_self_orthogonal() {
    let ones = BitMatrix::from_strs(&["111111"]).unwrap();
    assert!(gf2::mul_transpose(&ones, &ones).unwrap().is_zero());
}

#[test]
fn nullspace_examples() {
    assert_eq!(gf2::nullspace(&BitMatrix::identity(4)).rows(), 0);
    let g = BitMatrix::from_strs(&["1000", "0100"]).unwrap();
    let expected = BitMatrix::from_strs(&["0010", "0001"]).unwrap();
    assert!(gf2::row_space_equal(&gf2::nullspace(&g), &expected).unwrap());
    assert!(!gf2::row_space_equal(&g, &gf2::nullspace(&g)).unwrap());
}

#[test]
fn complementary_coordinates_meet_in_zero() {
    let a = BitMatrix::from_strs(&["1000", "0100"]).unwrap();
    let b = BitMatrix::from_strs(&["0010", "0001"]).unwrap();
    assert_eq!(gf2::intersect_row_spaces(&a, &b).unwrap().rows(), 0);
    assert!(gf2::mul_transpose(&a, &BitMatrix::zeros(1, 3)).is_err());
    assert!(gf2::intersect_row_spaces(&a, &BitMatrix::zeros(1, 3)).is_err());
}

#[test]
fn min_weight_examples() {
    assert_eq!(
        gf2::min_weight_rowspace(&BitMatrix::from_strs(&["1100"]).unwrap()).unwrap(),
        2
    );
    assert_eq!(
        gf2::min_weight_rowspace(&BitMatrix::from_strs(&["111111"]).unwrap()).unwrap(),
        6
    );
    let ext_hamming = BitMatrix::from_strs(&["10001101", "01000111", "00101110", "00011011"]).unwrap();
    assert_eq!(gf2::min_weight_rowspace(&ext_hamming).unwrap(), 4);
    assert!(gf2::min_weight_rowspace(&BitMatrix::zeros(2, 4)).is_err());
}

#[test]
fn text_round_trip() {
    let g = construction_example();
    let text = g.to_text();
    assert!(text.starts_with("GF2 4 6\n100010\n"));
    assert_eq!(BitMatrix::parse_text(&text).unwrap(), g);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rref_is_idempotent(m in sized(8, 70)) {
        let r = gf2::rref(&m);
        prop_assert_eq!(&gf2::rref(&r.reduced), &r);
        prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(r.reduced.rows(), r.rank);
    }

    #[test]
    fn rank_matches_naive_elimination(m in matrix(6, 10)) {
        prop_assert_eq!(gf2::rank(&m), naive_rank(&m));
    }

    #[test]
    fn rank_of_transpose(m in sized(12, 12)) {
        prop_assert_eq!(gf2::rank(&m), gf2::rank(&m.transpose()));
    }

    #[test]
    fn nullity_law(m in sized(10, 20)) {
        let ns = gf2::nullspace(&m);
        prop_assert_eq!(ns.rows() + gf2::rank(&m), m.cols());
        prop_assert!(gf2::mul_transpose(&m, &ns).unwrap().is_zero());
        prop_assert_eq!(gf2::rank(&ns), ns.rows());
    }

    #[test]
    fn mul_transpose_matches_double_loop((a, b) in pair(6, 12)) {
        let p = gf2::mul_transpose(&a, &b).unwrap();
        for i in 0..a.rows() {
            for j in 0..b.rows() {
                let s = (0..a.cols()).fold(false, |acc, c| acc ^ (a.get(i, c) & b.get(j, c)));
                prop_assert_eq!(p.get(i, j), s);
            }
        }
    }

    #[test]
    fn intersection_dimension_law((a, b) in pair(6, 10)) {
        let i = gf2::intersect_row_spaces(&a, &b).unwrap();
        let s = gf2::sum_row_spaces(&a, &b).unwrap();
        prop_assert!(gf2::row_space_contains(&a, &i).unwrap());
        prop_assert!(gf2::row_space_contains(&b, &i).unwrap());
        prop_assert_eq!(i.rows() + s.rows(), gf2::rank(&a) + gf2::rank(&b));
        prop_assert!(gf2::row_space_equal(&gf2::intersect_row_spaces(&a, &a).unwrap(), &a).unwrap());
    }

    #[test]
    fn row_space_equality_ignores_row_order(m in sized(6, 10)) {
        let mut rows: Vec<BitVector> = m.row_vectors().collect();
        rows.reverse();
        let r = BitMatrix::from_rows(m.cols(), &rows);
        prop_assert!(gf2::row_space_equal(&m, &r).unwrap());
        prop_assert!(gf2::row_space_equal(&m, &gf2::rref(&m).reduced).unwrap());
    }

    #[test]
    fn min_weight_matches_naive_scan(m in matrix(5, 9)) {
        let naive = naive_codewords(&m)
            .iter()
            .map(|w| w.iter().filter(|&&b| b).count())
            .filter(|&w| w > 0)
            .min();
        match naive {
            Some(w) => prop_assert_eq!(gf2::min_weight_rowspace(&m).unwrap(), w),
            None => prop_assert!(gf2::min_weight_rowspace(&m).is_err()),
        }
    }

    #[test]
    fn transpose_keeps_pad_bits_clear(m in sized(5, 70)) {
        let t = m.transpose();
        prop_assert_eq!(t.transpose(), m);
    }
}
