use std::collections::{BTreeMap, BTreeSet};

use ering::classify::{
    census, classify, classify_all, enumerate_binary_subspaces, gaussian_binomial, verify_tables, Status, TableFixture,
    MAX_CLASSIFY_LEN,
};
use ering::equivalence::{e_equivalent, permute_columns, Permutation};
use ering::gf2::{self, BitMatrix};
use ering::ring::EMatrix;
use ering::ECode;

/// q-binomial for q = 2 from the product formula, in rationals reduced step by step.
fn q_binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    assert_eq!(num % den, 0);
    num / den
}

/// Every subspace of F_2^n of dimension k, as a sorted list of its vectors.
fn subspaces_by_closure(n: usize, k: usize) -> BTreeSet<Vec<u32>> {
    fn close(gens: &[u32]) -> Vec<u32> {
        let mut set = BTreeSet::from([0u32]);
        for &g in gens {
            let more: Vec<u32> = set.iter().map(|&x| x ^ g).collect();
            set.extend(more);
        }
        set.into_iter().collect()
    }
    fn go(n: usize, k: usize, from: u32, gens: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
        let span = close(gens);
        if gens.len() == k {
            out.insert(span);
            return;
        }
        for v in from..1 << n {
            if !span.contains(&v) {
                gens.push(v);
                go(n, k, v + 1, gens, out);
                gens.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(n, k, 1, &mut Vec::new(), &mut out);
    out
}

fn hull_dim(words: &[u32]) -> usize {
    let hull = words
        .iter()
        .filter(|&&x| words.iter().all(|&y| (x & y).count_ones() % 2 == 0))
        .count();
    hull.trailing_zeros() as usize
}

fn min_weight(words: &[u32]) -> Option<usize> {
    words.iter().filter(|&&x| x != 0).map(|x| x.count_ones() as usize).min()
}

/// A basis of the closed set, with bit j of a word as coordinate j.
fn basis_of(n: usize, words: &[u32]) -> BitMatrix {
    let rows: Vec<String> = words
        .iter()
        .map(|w| (0..n).map(|j| if w >> j & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    gf2::rref(&BitMatrix::from_strs(&refs).unwrap()).reduced
}

fn brute_equivalent(a: &BitMatrix, b: &BitMatrix) -> bool {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        perms(n - 1)
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    q
                })
            })
            .collect()
    }
    perms(a.cols())
        .into_iter()
        .any(|m| gf2::row_space_equal(&permute_columns(a, &Permutation::new(m).unwrap()).unwrap(), b).unwrap())
}

#[test]
fn subspace_counts_match_q_binomial() {
    assert_eq!(q_binomial(3, 1), 7);
    assert_eq!(q_binomial(4, 2), 35);
    assert_eq!(q_binomial(8, 4), 200787);
    for n in 0..=MAX_CLASSIFY_LEN {
        for k in 0..=n {
            let expect = q_binomial(n as u32, k as u32);
            assert_eq!(gaussian_binomial(n, k), expect, "({n},{k})");
            let count = enumerate_binary_subspaces(n, k).unwrap().count() as u128;
            assert_eq!(count, expect, "enumerated ({n},{k})");
        }
    }
}

#[test]
fn enumerated_subspaces_are_distinct_and_reduced() {
    for (n, k) in [(4, 2), (5, 2), (5, 3), (6, 3)] {
        let all: Vec<BitMatrix> = enumerate_binary_subspaces(n, k).unwrap().collect();
        for g in &all {
            assert_eq!(&gf2::rref(g).reduced, g);
            assert_eq!(g.rows(), k);
        }
        let distinct: BTreeSet<Vec<u64>> = all.iter().map(|g| (0..k).map(|r| g.word_row(r)).collect()).collect();
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn census_of_length_two() {
    let c = census(2, 1).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!((c[&0].count, c[&0].best_d), (2, Some(1)));
    assert_eq!((c[&1].count, c[&1].best_d), (1, Some(2)));
}

#[test]
fn census_matches_closure_oracle() {
    for n in 1..=5 {
        for k in 1..=n {
            if n == 5 && k > 3 {
                continue;
            }
            let mut expect: BTreeMap<usize, (u64, Option<usize>)> = BTreeMap::new();
            for words in subspaces_by_closure(n, k) {
                let e = expect.entry(hull_dim(&words)).or_insert((0, None));
                e.0 += 1;
                e.1 = e.1.max(min_weight(&words));
            }
            let got: BTreeMap<usize, (u64, Option<usize>)> = census(n, k)
                .unwrap()
                .into_iter()
                .map(|(l, e)| (l, (e.count, e.best_d)))
                .collect();
            assert_eq!(got, expect, "[{n},{k}]");
            let total: u64 = got.values().map(|e| e.0).sum();
            assert_eq!(total as u128, q_binomial(n as u32, k as u32));
        }
    }
}

#[test]
fn census_totals_match_q_binomial() {
    for n in 1..=7 {
        for k in 1..=n {
            let total: u64 = census(n, k).unwrap().values().map(|e| e.count).sum();
            assert_eq!(total as u128, q_binomial(n as u32, k as u32), "[{n},{k}]");
        }
    }
}

#[test]
fn self_dual_four_two() {
    let self_dual = subspaces_by_closure(4, 2)
        .into_iter()
        .filter(|w| hull_dim(w) == 2)
        .count() as u64;
    assert_eq!(self_dual, 3);
    assert_eq!(census(4, 2).unwrap()[&2].count, self_dual);
}

#[test]
fn classes_match_closure_oracle() {
    for n in 1..=5 {
        for k in 1..=n.min(3) {
            let mut by_l: BTreeMap<usize, Vec<Vec<u32>>> = BTreeMap::new();
            for words in subspaces_by_closure(n, k) {
                by_l.entry(hull_dim(&words)).or_default().push(words);
            }
            for l in 1..=k {
                let rec = classify(n, k, l).unwrap();
                let cell = by_l.remove(&l).unwrap_or_default();
                let best = cell.iter().filter_map(|w| min_weight(w)).max();
                assert_eq!(rec.optimal_d, best, "[{n},{k}] l={l}");
                let optimal: Vec<BitMatrix> = cell
                    .iter()
                    .filter(|w| min_weight(w) == best)
                    .map(|w| basis_of(n, w))
                    .collect();
                assert_eq!(rec.optimal_count, optimal.len() as u64);
                let reps: Vec<BitMatrix> = rec.representatives.iter().map(EMatrix::residue).collect();
                for (i, a) in reps.iter().enumerate() {
                    for b in &reps[i + 1..] {
                        assert!(!brute_equivalent(a, b), "[{n},{k}] l={l}: duplicate class");
                    }
                }
                for g in &optimal {
                    assert!(
                        reps.iter().any(|r| brute_equivalent(r, g)),
                        "[{n},{k}] l={l}: missed class"
                    );
                }
            }
        }
    }
}

#[test]
fn four_two_self_dual_class() {
    let rec = classify(4, 2, 2).unwrap();
    assert_eq!(rec.optimal_d, Some(2));
    assert_eq!(rec.representatives.len(), 1);
    let rep = ECode::from_generators(&rec.representatives[0]).unwrap();
    let target = ECode::from_generators(&EMatrix::from_strs(&["k0k0", "0k0k"]).unwrap()).unwrap();
    assert!(e_equivalent(&rep, &target).unwrap().is_some());
}

#[test]
fn small_and_self_dual_cells() {
    let rec = classify(2, 1, 1).unwrap();
    assert_eq!(rec.representatives, vec![EMatrix::from_strs(&["kk"]).unwrap()]);
    assert_eq!(rec.optimal_d, Some(2));
    let rec = classify(8, 4, 4).unwrap();
    assert_eq!(rec.optimal_d, Some(4));
    assert_eq!(rec.representatives.len(), 1);
    assert!(classify(9, 2, 1).is_err());
    assert!(classify(4, 2, 3).is_err());
    assert!(classify(4, 2, 0).is_err());
}

#[test]
fn representatives_have_their_parameters() {
    for n in 2..=7 {
        for k in 1..=n {
            for rec in classify_all(n, k).unwrap() {
                let Some(d) = rec.optimal_d else {
                    assert!(rec.representatives.is_empty());
                    continue;
                };
                assert!(d <= n - k + 1, "singleton bound");
                for g in &rec.representatives {
                    let c = ECode::from_generators(g).unwrap();
                    assert!(c.is_free());
                    assert_eq!(c.rank(), Some(k));
                    assert_eq!(c.hull_rank().unwrap(), rec.hull_rank);
                    assert_eq!(c.min_distance().unwrap(), d);
                    assert!(g.row_vectors().all(|r| r.elems().iter().all(|e| e.is_zero() || e.pi())));
                }
            }
        }
    }
}

#[test]
fn classification_is_deterministic() {
    let a = classify_all(7, 3).unwrap();
    let b = classify_all(7, 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(classify(7, 3, 1).unwrap(), a[0]);
}

#[test]
fn embedded_fixture_parses() {
    let f = TableFixture::embedded();
    assert_eq!(f.entries.len(), 117);
    for e in &f.entries {
        assert_eq!(
            (e.generator.rows(), e.generator.cols()),
            (e.k, e.n),
            "{} line {}",
            e.table,
            e.line
        );
    }
    assert!(TableFixture::parse("E 1 2\nk k\n").is_err());
    assert!(TableFixture::parse("E 1 2\nk k\nexpect n=2 k=1 d=2 l=1\n").is_err());
}

#[test]
fn small_table_entries_verify() {
    let text = "\
E 1 3
k k 0
expect n=3 k=1 d=2 l=1 table=x

E 2 6
k 0 k 0 k k
0 k k k 0 k
expect n=6 k=2 d=4 l=2 table=x

E 3 7
k 0 0 0 k k k
0 k 0 k k 0 k
0 0 k k 0 k k
expect n=7 k=3 d=4 l=3 table=x
";
    let report = verify_tables(&TableFixture::parse(text).unwrap());
    assert!(report.is_clean(), "{report}");
    assert!(report.count(Status::Pass) >= 6);
}

#[test]
fn wrong_claim_is_reported() {
    let text = "E 1 3\nk k 0\nexpect n=3 k=1 d=3 l=1 table=x\n";
    let report = verify_tables(&TableFixture::parse(text).unwrap());
    assert!(!report.is_clean());
    assert!(report.failures().any(|f| f.status == Status::Fail));
}
