//! Exhaustive classification of free E-codes of length at most 8 by hull-rank.
//!
//! A free `[n, k]` code is `κG` for a binary `[n, k]` code `G`, its hull-rank
//! is the hull dimension of `G` and its minimum distance is that of `G`. So
//! the search runs over binary subspaces, each enumerated once through its
//! reduced row echelon form: choose the pivot columns, then fill every entry
//! right of a pivot that is not itself a pivot column.
//!
//! The scan is split by pivot set and runs in parallel; optimal candidates are
//! sorted by their row words before deduplication, so the output does not
//! depend on scheduling.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::ECode;
use crate::equivalence::{e_equivalent, prepared_equivalent, Invariants, Prepared};
use crate::error::{Error, Result};
use crate::gf2::{self, parse_header, BitMatrix};
use crate::ring::{parse_row_into, EMatrix};

pub const MAX_CLASSIFY_LEN: usize = 8;

/// Number of `k`-dimensional subspaces of `GF(2)ⁿ`.
pub fn gaussian_binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * ((1u128 << (n - i)) - 1) / ((1u128 << (i + 1)) - 1);
    }
    acc
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n > MAX_CLASSIFY_LEN || k > n {
        return Err(Error::OutOfRange(format!(
            "need 0 <= k <= n <= {MAX_CLASSIFY_LEN}, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..=n - (k - cur.len()) {
            cur.push(c);
            go(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Row words (bit `j` is column `j`) of every RREF matrix with the given pivots.
fn rref_fillings(n: usize, pivots: Vec<usize>) -> impl Iterator<Item = Vec<u64>> {
    let is_pivot = |c: usize| pivots.contains(&c);
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (p + 1..n).filter(|&c| !is_pivot(c)).map(move |c| (i, c)))
        .collect();
    let base: Vec<u64> = pivots.iter().map(|&p| 1u64 << p).collect();
    (0..1u64 << free.len()).map(move |mask| {
        let mut rows = base.clone();
        for (bit, &(i, c)) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rows[i] |= 1 << c;
            }
        }
        rows
    })
}

/// Every `k`-dimensional subspace of `GF(2)ⁿ` exactly once, as its RREF basis.
pub fn enumerate_binary_subspaces(n: usize, k: usize) -> Result<impl Iterator<Item = BitMatrix>> {
    check_nk(n, k)?;
    Ok(pivot_sets(n, k)
        .into_iter()
        .flat_map(move |p| rref_fillings(n, p))
        .map(move |rows| BitMatrix::from_word_rows(n, &rows)))
}

/// Hull dimension and minimum weight of the binary code with the given independent rows.
fn measure(n: usize, rows: &[u64]) -> (usize, Option<usize>) {
    let k = rows.len();
    let gram: Vec<u64> = rows
        .iter()
        .map(|&a| {
            rows.iter()
                .enumerate()
                .fold(0u64, |acc, (j, &b)| acc | (((a & b).count_ones() as u64 & 1) << j))
        })
        .collect();
    let l = k - gf2::rank(&BitMatrix::from_word_rows(k, &gram));
    if k == 0 {
        return (l, None);
    }
    let mut cur = 0u64;
    let mut best = n;
    for i in 1u64..1 << k {
        cur ^= rows[i.trailing_zeros() as usize];
        best = best.min(cur.count_ones() as usize);
    }
    (l, Some(best))
}

#[derive(Clone, Debug, Default)]
struct Cell {
    count: u64,
    by_d: BTreeMap<usize, u64>,
    best: Option<usize>,
    optimal: Vec<Vec<u64>>,
}

impl Cell {
    fn add(&mut self, d: Option<usize>, rows: &[u64], keep: bool) {
        self.count += 1;
        let Some(d) = d else { return };
        *self.by_d.entry(d).or_default() += 1;
        if self.best.is_none_or(|b| d > b) {
            self.best = Some(d);
            self.optimal.clear();
        }
        if keep && self.best == Some(d) {
            self.optimal.push(rows.to_vec());
        }
    }

    fn merge(mut self, other: Cell) -> Cell {
        self.count += other.count;
        for (d, c) in other.by_d {
            *self.by_d.entry(d).or_default() += c;
        }
        match self.best.cmp(&other.best) {
            std::cmp::Ordering::Less => {
                self.best = other.best;
                self.optimal = other.optimal;
            }
            std::cmp::Ordering::Equal => self.optimal.extend(other.optimal),
            std::cmp::Ordering::Greater => {}
        }
        self
    }
}

#[derive(Clone, Debug, Default)]
struct Scan {
    examined: u64,
    cells: BTreeMap<usize, Cell>,
}

impl Scan {
    fn merge(mut self, other: Scan) -> Scan {
        self.examined += other.examined;
        for (l, cell) in other.cells {
            let mine = self.cells.remove(&l).unwrap_or_default();
            self.cells.insert(l, mine.merge(cell));
        }
        self
    }
}

/// One pass over all `[n, k]` subspaces; optimal candidates are kept for the
/// hull dimensions accepted by `keep`.
fn scan(n: usize, k: usize, keep: impl Fn(usize) -> bool + Sync) -> Scan {
    pivot_sets(n, k)
        .into_par_iter()
        .map(|p| {
            let mut s = Scan::default();
            for rows in rref_fillings(n, p) {
                let (l, d) = measure(n, &rows);
                s.examined += 1;
                s.cells.entry(l).or_default().add(d, &rows, keep(l));
            }
            s
        })
        .reduce(Scan::default, Scan::merge)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub count: u64,
    pub best_d: Option<usize>,
}

/// Number of free `[n, k]` codes and the best minimum distance for each hull-rank.
pub fn census(n: usize, k: usize) -> Result<BTreeMap<usize, CensusEntry>> {
    check_nk(n, k)?;
    Ok(scan(n, k, |_| false)
        .cells
        .into_iter()
        .map(|(l, c)| {
            (
                l,
                CensusEntry {
                    count: c.count,
                    best_d: c.best,
                },
            )
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    /// All `[n, k]` subspaces scanned.
    pub examined: u64,
    /// Those with the requested hull-rank.
    pub in_cell: u64,
    /// Codes of the requested hull-rank by minimum distance.
    pub by_d: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub n: usize,
    pub k: usize,
    pub hull_rank: usize,
    /// Absent when no free `[n, k]` code has this hull-rank.
    pub optimal_d: Option<usize>,
    /// Number of optimal codes before removing equivalent ones.
    pub optimal_count: u64,
    /// Pairwise inequivalent optimal codes, as `κG`.
    pub representatives: Vec<EMatrix>,
    pub census: Census,
}

impl fmt::Display for ClassRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.optimal_d.map_or("-".to_string(), |d| d.to_string());
        writeln!(
            f,
            "n={} k={} l={}: optimal d={d}, {} optimal codes, {} inequivalent",
            self.n,
            self.k,
            self.hull_rank,
            self.optimal_count,
            self.representatives.len()
        )?;
        for (i, r) in self.representatives.iter().enumerate() {
            writeln!(f, "# representative {}", i + 1)?;
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Keeps the first code of each equivalence class, in sorted order.
fn dedupe(n: usize, mut candidates: Vec<Vec<u64>>) -> Vec<BitMatrix> {
    candidates.sort_unstable();
    let prepared: Vec<Prepared> = candidates
        .par_iter()
        .map(|rows| Prepared::new(&BitMatrix::from_word_rows(n, rows)))
        .collect();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<&Invariants, usize> = HashMap::new();
    for (i, p) in prepared.iter().enumerate() {
        let g = *index.entry(p.invariants()).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    let mut keep: Vec<usize> = groups
        .par_iter()
        .flat_map_iter(|members| {
            let mut reps: Vec<usize> = Vec::new();
            for &i in members {
                if !reps
                    .iter()
                    .any(|&r| prepared_equivalent(&prepared[r], &prepared[i]).is_some())
                {
                    reps.push(i);
                }
            }
            reps
        })
        .collect();
    keep.sort_unstable();
    keep.into_iter()
        .map(|i| BitMatrix::from_word_rows(n, &candidates[i]))
        .collect()
}

fn record(n: usize, k: usize, l: usize, examined: u64, cell: Cell) -> ClassRecord {
    let optimal_count = cell.optimal.len() as u64;
    let representatives = dedupe(n, cell.optimal).iter().map(EMatrix::kappa).collect();
    ClassRecord {
        n,
        k,
        hull_rank: l,
        optimal_d: cell.best,
        optimal_count,
        representatives,
        census: Census {
            examined,
            in_cell: cell.count,
            by_d: cell.by_d,
        },
    }
}

/// Optimal free `[n, k]` codes of hull-rank `l`, up to permutation equivalence.
pub fn classify(n: usize, k: usize, l: usize) -> Result<ClassRecord> {
    check_nk(n, k)?;
    if l == 0 || l > k {
        return Err(Error::OutOfRange(format!("need 1 <= l <= k, got l={l}, k={k}")));
    }
    let mut s = scan(n, k, |x| x == l);
    let cell = s.cells.remove(&l).unwrap_or_default();
    Ok(record(n, k, l, s.examined, cell))
}

/// [`classify`] for every hull-rank `1..=k` from a single scan.
pub fn classify_all(n: usize, k: usize) -> Result<Vec<ClassRecord>> {
    check_nk(n, k)?;
    let mut s = scan(n, k, |x| x >= 1);
    Ok((1..=k)
        .map(|l| {
            let cell = s.cells.remove(&l).unwrap_or_default();
            record(n, k, l, s.examined, cell)
        })
        .collect())
}

/// One transcribed table entry with its claimed parameters.
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub generator: EMatrix,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub l: usize,
    pub table: String,
    /// Line of the matrix header in the fixture text.
    pub line: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TableFixture {
    pub entries: Vec<TableEntry>,
}

/// The transcribed optimal-code tables shipped with the crate.
pub const EMBEDDED_FIXTURE: &str = include_str!("../data/tables.fixture");

impl TableFixture {
    /// Blocks of an `E r c` matrix followed by
    /// `expect n=<n> k=<k> d=<d> l=<l> table=<id>`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<TableFixture> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let mut entries = Vec::new();
        while let Some((hline, header)) = lines.next() {
            let (rows, cols) = parse_header(header, "E", hline)?;
            let mut generator = EMatrix::zeros(rows, cols);
            for r in 0..rows {
                let (lno, line) = lines.next().ok_or_else(|| Error::Parse {
                    line: hline + r + 1,
                    column: 1,
                    message: format!("expected {rows} rows"),
                })?;
                parse_row_into(&mut generator, r, lno, line)?;
            }
            let (eline, expect) = lines.next().ok_or_else(|| Error::Parse {
                line: hline + rows + 1,
                column: 1,
                message: "missing expect line".into(),
            })?;
            entries.push(parse_expect(generator, hline, eline, expect)?);
        }
        Ok(TableFixture { entries })
    }

    pub fn embedded() -> TableFixture {
        TableFixture::parse(EMBEDDED_FIXTURE).expect("embedded fixture parses")
    }
}

fn parse_expect(generator: EMatrix, line: usize, eline: usize, text: &str) -> Result<TableEntry> {
    let err = |column: usize, message: String| Error::Parse {
        line: eline,
        column,
        message,
    };
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some("expect") {
        return Err(err(1, "expected \"expect n=.. k=.. d=.. l=.. table=..\"".into()));
    }
    let mut fields: HashMap<&str, &str> = HashMap::new();
    for t in tokens {
        let (key, value) = t
            .split_once('=')
            .ok_or_else(|| err(1, format!("expected key=value, found {t:?}")))?;
        fields.insert(key, value);
    }
    let num = |key: &str| -> Result<usize> {
        fields
            .get(key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err(1, format!("missing or invalid {key}=")))
    };
    Ok(TableEntry {
        n: num("n")?,
        k: num("k")?,
        d: num("d")?,
        l: num("l")?,
        table: fields
            .get("table")
            .ok_or_else(|| err(1, "missing table=".into()))?
            .to_string(),
        generator,
        line,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub status: Status,
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub findings: Vec<Finding>,
}

impl TableReport {
    fn push(&mut self, status: Status, subject: String, detail: String) {
        self.findings.push(Finding {
            status,
            subject,
            detail,
        });
    }

    pub fn count(&self, status: Status) -> usize {
        self.findings.iter().filter(|f| f.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.status == Status::Fail)
    }

    pub fn is_clean(&self) -> bool {
        self.count(Status::Fail) == 0
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.findings {
            writeln!(f, "{} {}: {}", x.status, x.subject, x.detail)?;
        }
        write!(
            f,
            "{} PASS, {} WARN, {} FAIL",
            self.count(Status::Pass),
            self.count(Status::Warn),
            self.count(Status::Fail)
        )
    }
}

struct Recomputed {
    code: Option<ECode>,
    k: Option<usize>,
    d: Option<usize>,
    l: Option<usize>,
}

fn recompute(g: &EMatrix) -> Recomputed {
    let Ok(code) = ECode::from_generators(g) else {
        return Recomputed {
            code: None,
            k: None,
            d: None,
            l: None,
        };
    };
    let free = code.is_free();
    Recomputed {
        k: code.rank(),
        d: code.min_distance().ok(),
        l: if free { code.hull_rank().ok() } else { None },
        code: free.then_some(code),
    }
}

fn show(x: Option<usize>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

/// Checks every entry's claimed `(n, k, d, l)`, compares `d` with the
/// classification optimum of its cell and tests the entries of each cell for
/// pairwise inequivalence. A cell listing a different number of codes than the
/// classification finds is a warning.
pub fn verify_tables(fixture: &TableFixture) -> TableReport {
    let mut report = TableReport::default();
    let mut per_table: HashMap<&str, usize> = HashMap::new();
    let mut names = Vec::with_capacity(fixture.entries.len());
    let recomputed: Vec<Recomputed> = fixture.entries.par_iter().map(|e| recompute(&e.generator)).collect();

    for (e, r) in fixture.entries.iter().zip(&recomputed) {
        let idx = per_table.entry(&e.table).or_default();
        *idx += 1;
        let name = format!("{} #{} [{},{},{}] l={}", e.table, idx, e.n, e.k, e.d, e.l);
        let shape_ok = e.generator.cols() == e.n && e.generator.rows() == e.k;
        let got = format!(
            "recomputed [{},{},{}] l={}",
            e.generator.cols(),
            show(r.k),
            show(r.d),
            show(r.l)
        );
        let ok = shape_ok && r.code.is_some() && r.k == Some(e.k) && r.d == Some(e.d) && r.l == Some(e.l);
        let detail = match (&r.code, shape_ok) {
            (_, false) => format!(
                "matrix is {}x{}, expected {}x{}",
                e.generator.rows(),
                e.generator.cols(),
                e.k,
                e.n
            ),
            (None, _) => "generated code is not free".into(),
            _ => got,
        };
        report.push(if ok { Status::Pass } else { Status::Fail }, name.clone(), detail);
        names.push(name);
    }

    let mut cells: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in fixture.entries.iter().enumerate() {
        cells.entry((e.n, e.k, e.l)).or_default().push(i);
    }
    let mut nk: Vec<(usize, usize)> = cells
        .keys()
        .filter(|(n, k, l)| *n <= MAX_CLASSIFY_LEN && *k <= *n && 1 <= *l && *l <= *k)
        .map(|&(n, k, _)| (n, k))
        .collect();
    nk.dedup();
    let classified: HashMap<(usize, usize, usize), ClassRecord> = nk
        .iter()
        .flat_map(|&(n, k)| classify_all(n, k).expect("checked ranges"))
        .map(|rec| ((rec.n, rec.k, rec.hull_rank), rec))
        .collect();

    for ((n, k, l), members) in &cells {
        let cell = format!("cell [{n},{k}] l={l}");
        match classified.get(&(*n, *k, *l)) {
            None => report.push(
                Status::Warn,
                cell.clone(),
                "outside the classification range, optimality not checked".into(),
            ),
            Some(rec) => {
                for &i in members {
                    let e = &fixture.entries[i];
                    let status = if rec.optimal_d == Some(e.d) {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    report.push(
                        status,
                        names[i].clone(),
                        format!("claimed d={}, classification optimum d={}", e.d, show(rec.optimal_d)),
                    );
                }
                let found = rec.representatives.len();
                let listed = members.len();
                report.push(
                    if found == listed { Status::Pass } else { Status::Warn },
                    cell.clone(),
                    format!("{listed} codes listed, {found} inequivalent optimal codes exist"),
                );
            }
        }
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                let (Some(ci), Some(cj)) = (&recomputed[i].code, &recomputed[j].code) else {
                    continue;
                };
                if let Ok(Some(w)) = e_equivalent(ci, cj) {
                    report.push(
                        Status::Fail,
                        cell.clone(),
                        format!("{} and {} are equivalent via {w}", names[i], names[j]),
                    );
                }
            }
        }
    }
    report
}
