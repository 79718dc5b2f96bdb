#![allow(dead_code)]

use ering::gf2::{self, BitMatrix};
use ering::ring::{EElem, EMatrix};
use ering::ECode;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn same(a: &BitMatrix, b: &BitMatrix) -> bool {
    gf2::row_space_equal(a, b).unwrap()
}

fn perp(a: &BitMatrix) -> BitMatrix {
    gf2::dual_space(a)
}

fn meet(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    gf2::intersect_row_spaces(a, b).unwrap()
}

fn within(a: &BitMatrix, b: &BitMatrix) -> bool {
    gf2::row_space_contains(b, a).unwrap()
}

fn binary_hull(a: &BitMatrix) -> BitMatrix {
    meet(a, &perp(a))
}

/// Names of the structural identities that fail for `c`.
pub fn theorem_violations(c: &ECode) -> Vec<&'static str> {
    let n = c.len();
    let full = BitMatrix::identity(n);
    let zero = BitMatrix::empty(n);
    let (res, tor) = (c.residue(), c.torsion());
    let (ld, rd, d) = (c.left_dual(), c.right_dual(), c.dual());
    let (lh, rh, h) = (c.lhull(), c.rhull(), c.hull());
    let free = c.is_free();
    let tor_full = same(&tor, &full);
    let mut bad = Vec::new();
    let mut check = |ok: bool, name: &'static str| {
        if !ok {
            bad.push(name);
        }
    };

    check(
        c.dim() < 64 && c.codewords().count() == 1usize << c.dim(),
        "|C| = 2^dim",
    );
    check(
        c.codewords().all(|x| {
            [EElem::KAPPA, EElem::TAU, EElem::ZETA]
                .iter()
                .all(|&a| c.contains(&x.scale_left(a)))
        }),
        "closed under left multiplication",
    );
    check(within(&res, &tor), "C_Res within C_Tor");

    check(same(&ld.residue(), &perp(&res)), "left dual residue");
    check(same(&ld.torsion(), &perp(&res)), "left dual torsion");
    check(same(&rd.residue(), &perp(&tor)), "right dual residue");
    check(same(&rd.torsion(), &full), "right dual torsion is everything");
    check(same(&d.residue(), &perp(&tor)), "dual residue");
    check(same(&d.torsion(), &perp(&res)), "dual torsion");

    check(ld.is_free(), "left dual is free");
    check(rd.is_free() == c.is_zero(), "right dual is free only for the zero code");
    check(d.is_free() == free, "dual free iff code free");

    check(same(&lh.residue(), &meet(&res, &perp(&res))), "left hull residue");
    check(same(&rh.torsion(), &tor), "right hull torsion");
    check(same(&h.residue(), &meet(&res, &perp(&tor))), "hull residue");
    check(same(&h.torsion(), &meet(&perp(&res), &tor)), "hull torsion");

    check(
        within(&h.residue(), &binary_hull(&res)),
        "hull residue within residue hull",
    );
    check(
        within(&binary_hull(&tor), &h.torsion()),
        "torsion hull within hull torsion",
    );
    if free {
        check(same(&h.residue(), &binary_hull(&res)), "free: hull residue equality");
        check(same(&h.torsion(), &binary_hull(&tor)), "free: hull torsion equality");
    }

    check(d.dual() == *c, "double dual");
    check(h == d.hull(), "hull of dual");
    if free {
        check(ld.left_dual() == *c, "free: left of left");
        check(rd.left_dual() == *c, "free: left of right");
        check(lh == ld.lhull(), "free: left hull of left dual");
        check(rh == rd.lhull(), "free: right hull vs left hull of right dual");
        if same(&res, &perp(&res)) {
            check(
                lh == ld.rhull(),
                "free, self-dual residue: left hull vs right hull of left dual",
            );
        }
        check(lh == h, "free: left hull equals hull");
        check(h.is_free() && lh.is_free(), "free: hulls are free");
        let k = res.rows();
        let gram = gf2::mul_transpose(&res, &res).unwrap();
        let l = c.hull_rank().unwrap();
        check(l == binary_hull(&res).rows(), "hull-rank is residue hull dimension");
        check(l == k - gf2::rank(&gram), "hull-rank is k - rank(GG^T)");
        check(l == h.rank().unwrap(), "hull-rank is rank of the hull");
        check(
            ECode::from_generators(&c.hull_generator_free().unwrap()).unwrap() == h,
            "hull generator",
        );
    }
    if tor_full {
        check(ld.right_dual() == *c, "full torsion: right of left");
        if same(&meet(&res, &perp(&tor)), &zero) {
            check(rh == rd.rhull(), "right hull of right dual");
        }
        if res.rows() == 0 {
            check(rd.right_dual() == *c, "zero residue, full torsion: right of right");
        }
    }
    bad
}

const SELF_DUAL: [&[&str]; 3] = [&["11"], &["1100", "0011"], &["110000", "001100", "000011"]];

fn random_entries(rng: &mut StdRng, rows: usize, n: usize, symbols: &[EElem]) -> EMatrix {
    let mut g = EMatrix::zeros(rows, n);
    for r in 0..rows {
        for c in 0..n {
            g.set(r, c, *symbols.choose(rng).unwrap());
        }
    }
    g
}

fn stack(a: &EMatrix, b: &EMatrix) -> EMatrix {
    let rows: Vec<_> = a.row_vectors().chain(b.row_vectors()).collect();
    EMatrix::from_rows(a.cols(), &rows).unwrap()
}

fn zeta_identity(n: usize) -> EMatrix {
    let mut g = EMatrix::zeros(n, n);
    for i in 0..n {
        g.set(i, i, EElem::ZETA);
    }
    g
}

/// A reproducible mix of free and non-free codes of length `1..=max_n`,
/// including codes with full torsion, zero residue and self-dual residue.
pub fn sweep_codes(seed: u64, count: usize, max_n: usize) -> Vec<ECode> {
    let mut rng = StdRng::seed_from_u64(seed);
    let all = [EElem::ZERO, EElem::KAPPA, EElem::TAU, EElem::ZETA];
    let kappa = [EElem::ZERO, EElem::KAPPA];
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_n);
            let rows = rng.gen_range(0..=n.min(4));
            let g = match i % 8 {
                0..=2 => random_entries(&mut rng, rows, n, &all),
                3 | 4 => random_entries(&mut rng, rows, n, &kappa),
                5 => {
                    let r = rng.gen_range(0..=2);
                    stack(&random_entries(&mut rng, r, n, &all), &zeta_identity(n))
                }
                6 => zeta_identity(n),
                _ => {
                    let sd = SELF_DUAL[rng.gen_range(0..SELF_DUAL.len())];
                    let m = sd[0].len();
                    let mut perm: Vec<usize> = (0..m).collect();
                    perm.shuffle(&mut rng);
                    let base = BitMatrix::from_strs(sd).unwrap();
                    EMatrix::kappa(&base.select_columns(&perm))
                }
            };
            ECode::from_generators(&g).unwrap()
        })
        .collect()
}
