//! Reference sequences and class enumeration.
//!
//! Large Schröder numbers are counted as lattice paths from `(0,0)` to
//! `(k,k)` with steps `(1,0)`, `(0,1)` and `(1,1)` that never rise above the
//! diagonal. A second, unrelated route through the three-term recurrence is
//! kept alongside so the two can be checked against each other. All
//! sequence values are exact `u128`s; indices stop at [`SEQUENCE_CAP`].
//!
//! Enumeration walks every permutation of a given length, split by first
//! entry across the rayon pool.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algorithm::di_sort;
use crate::error::{Error, Result};
use crate::machine::{MachineConfig, StackRestriction};
use crate::oracle::Oracle;
use crate::permutation::{PatternSet, Permutation, Permutations};

/// Largest sequence index accepted by the sequence functions.
pub const SEQUENCE_CAP: usize = 30;
/// Longest permutations enumerated with the DI algorithm or by avoidance.
pub const ALGORITHM_CAP: usize = 10;
/// Longest permutations enumerated with the exhaustive oracle.
pub const ORACLE_CAP: usize = 9;
pub const CLOSURE_CAP: usize = 6;
pub const BASIS_CAP: usize = 8;
pub const CROSSCHECK_CAP: usize = 7;

fn check_index(k: usize) -> Result<()> {
    if k > SEQUENCE_CAP {
        return Err(Error::limit("sequence index", k, SEQUENCE_CAP));
    }
    Ok(())
}

/// Large Schröder number `R(k)` by counting lattice paths.
pub fn schroder_large(k: usize) -> Result<u128> {
    check_index(k)?;
    // paths[x][y]: number of paths reaching (x, y) with y <= x.
    let mut paths = vec![vec![0u128; k + 1]; k + 1];
    paths[0][0] = 1;
    for x in 0..=k {
        for y in 0..=x {
            if x == 0 && y == 0 {
                continue;
            }
            let mut total = 0;
            if y < x {
                total += paths[x - 1][y];
            }
            if y > 0 {
                total += paths[x][y - 1];
            }
            if x > 0 && y > 0 {
                total += paths[x - 1][y - 1];
            }
            paths[x][y] = total;
        }
    }
    Ok(paths[k][k])
}

/// Large Schröder number `R(k)` from
/// `(k+1) R(k) = 3(2k-1) R(k-1) - (k-2) R(k-2)`, `R(0) = 1`, `R(1) = 2`.
pub fn schroder_large_recurrence(k: usize) -> Result<u128> {
    check_index(k)?;
    let (mut before, mut last) = (1u128, 2u128);
    if k == 0 {
        return Ok(before);
    }
    for i in 2..=k as u128 {
        let numerator = 3 * (2 * i - 1) * last - (i - 2) * before;
        if numerator % (i + 1) != 0 {
            return Err(Error::Internal(format!(
                "Schröder recurrence is not integral at {i}"
            )));
        }
        (before, last) = (last, numerator / (i + 1));
    }
    Ok(last)
}

/// Small Schröder number, half of `R(k)`, for `1 <= k <= 30`.
pub fn schroder_small(k: usize) -> Result<u128> {
    if k == 0 {
        return Err(Error::Unsupported(
            "small Schröder numbers are indexed from 1".into(),
        ));
    }
    let large = schroder_large(k)?;
    if large % 2 != 0 {
        return Err(Error::Internal(format!(
            "large Schröder number R({k}) = {large} is odd"
        )));
    }
    Ok(large / 2)
}

/// Catalan number by the convolution `C(m+1) = sum C(i) C(m-i)`.
pub fn catalan(k: usize) -> Result<u128> {
    check_index(k)?;
    let mut terms: Vec<u128> = Vec::with_capacity(k + 1);
    terms.push(1);
    for m in 0..k {
        let next = (0..=m).map(|i| terms[i] * terms[m - i]).sum();
        terms.push(next);
    }
    Ok(terms[k])
}

/// How membership of a permutation in a class is decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    /// The deterministic DI algorithm; DI machine only.
    Algorithm,
    /// Exhaustive search on the given machine.
    Oracle,
    /// Avoidance of every pattern in the set.
    Avoidance(PatternSet),
}

impl Method {
    pub fn cap(&self) -> usize {
        match self {
            Method::Oracle => ORACLE_CAP,
            Method::Algorithm | Method::Avoidance(_) => ALGORITHM_CAP,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Algorithm => "algorithm",
            Method::Oracle => "oracle",
            Method::Avoidance(_) => "avoidance",
        }
    }

    /// Membership test for one permutation. Oracle runs use the default
    /// search cap.
    pub fn accepts(&self, perm: &Permutation, config: &MachineConfig) -> Result<bool> {
        match self {
            Method::Algorithm => {
                require_di(config)?;
                Ok(di_sort(perm, true).is_sorted())
            }
            Method::Oracle => Oracle::default().sortable(perm, config),
            Method::Avoidance(patterns) => Ok(perm.avoids_all(patterns)),
        }
    }
}

fn require_di(config: &MachineConfig) -> Result<()> {
    if !config.is_di() {
        return Err(Error::Unsupported(format!(
            "the algorithm method only applies to the DI machine, not {config}"
        )));
    }
    Ok(())
}

/// One lexicographic block of the length-`n` permutations per first entry.
fn blocks(n: usize) -> Vec<impl Iterator<Item = Permutation>> {
    (1..=n as u32)
        .map(move |first| {
            let start: Vec<u32> = std::iter::once(first)
                .chain((1..=n as u32).filter(move |&v| v != first))
                .collect();
            Permutations::starting_at(start).take_while(move |p| p.values()[0] == first)
        })
        .collect()
}

/// Number of length-`n` permutations satisfying `pred`.
fn count_where<F>(n: usize, pred: F) -> Result<u64>
where
    F: Fn(&Permutation) -> Result<bool> + Sync,
{
    if n == 0 {
        return Ok(u64::from(pred(&Permutation::empty())?));
    }
    blocks(n)
        .into_par_iter()
        .map(|block| {
            let mut count = 0;
            for perm in block {
                if pred(&perm)? {
                    count += 1;
                }
            }
            Ok(count)
        })
        .sum()
}

/// Every length-`n` permutation satisfying `pred`, lexicographically.
fn collect_where<F>(n: usize, pred: F) -> Result<Vec<Permutation>>
where
    F: Fn(&Permutation) -> Result<bool> + Sync,
{
    if n == 0 {
        let empty = Permutation::empty();
        return Ok(if pred(&empty)? { vec![empty] } else { vec![] });
    }
    let parts: Vec<Vec<Permutation>> = blocks(n)
        .into_par_iter()
        .map(|block| {
            let mut kept = Vec::new();
            for perm in block {
                if pred(&perm)? {
                    kept.push(perm);
                }
            }
            Ok(kept)
        })
        .collect::<Result<_>>()?;
    Ok(parts.concat())
}

/// Number of length-`n` permutations accepted by `method` on `config`.
pub fn enumerate_sortable(n: usize, config: &MachineConfig, method: &Method) -> Result<u64> {
    if n > method.cap() {
        return Err(Error::limit("enumeration length", n, method.cap()));
    }
    if *method == Method::Algorithm {
        require_di(config)?;
    }
    count_where(n, |perm| method.accepts(perm, config))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub n: usize,
    pub count: u64,
    pub reference: u128,
    pub matches: bool,
}

impl CountRow {
    pub fn new(n: usize, count: u64, reference: u128) -> Self {
        CountRow {
            n,
            count,
            reference,
            matches: u128::from(count) == reference,
        }
    }
}

/// Observed counts against a reference sequence, one row per length
/// starting at `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

const HEADER: [&str; 4] = ["n", "count", "reference", "matches"];

impl CountTable {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn last(&self) -> Option<&CountRow> {
        self.rows.last()
    }

    fn cells(&self) -> Vec<[String; 4]> {
        self.rows
            .iter()
            .map(|r| {
                [
                    r.n.to_string(),
                    r.count.to_string(),
                    r.reference.to_string(),
                    r.matches.to_string(),
                ]
            })
            .collect()
    }

    /// Right-aligned columns under a header line.
    pub fn to_text(&self) -> String {
        let cells = self.cells();
        let mut widths = HEADER.map(str::len);
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let header = HEADER.map(String::from);
        for row in std::iter::once(&header).chain(&cells) {
            let line: Vec<String> = row
                .iter()
                .zip(widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            writeln!(out, "{}", line.join("  ")).unwrap();
        }
        out
    }

    /// Tab-separated, one row per line, header first.
    pub fn to_records(&self) -> String {
        let mut out = HEADER.join("\t");
        out.push('\n');
        for row in self.cells() {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// DI-sortable counts for `n = 1..=n_max` against `R(n-1)`.
pub fn schroder_check(n_max: usize, method: &Method) -> Result<CountTable> {
    let di = MachineConfig::di();
    let rows = (1..=n_max)
        .map(|n| {
            let count = enumerate_sortable(n, &di, method)?;
            Ok(CountRow::new(n, count, schroder_large(n - 1)?))
        })
        .collect::<Result<_>>()?;
    Ok(CountTable { rows })
}

/// Sum-decomposable DI-sortable counts, compared with the small Schröder
/// numbers at the index `n + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub table: CountTable,
    /// The shift that fits the `n = 2..=5` data, if any does.
    pub offset: Option<i64>,
}

impl Census {
    pub fn describe_offset(&self) -> String {
        match self.offset {
            Some(0) => "reference: small Schröder number at index n".into(),
            Some(d) if d < 0 => format!("reference: small Schröder number at index n - {}", -d),
            Some(d) => format!("reference: small Schröder number at index n + {d}"),
            None => "reference: no offset fits the small Schröder numbers".into(),
        }
    }
}

const OFFSET_CANDIDATES: [i64; 5] = [0, -1, 1, -2, 2];
const OFFSET_FIT_RANGE: std::ops::RangeInclusive<usize> = 2..=5;

fn small_at(n: usize, offset: i64) -> Result<Option<u128>> {
    let index = n as i64 + offset;
    if index < 1 {
        return Ok(None);
    }
    schroder_small(index as usize).map(Some)
}

pub fn decomposable_census(n_max: usize) -> Result<Census> {
    if n_max > ALGORITHM_CAP {
        return Err(Error::limit("census length", n_max, ALGORITHM_CAP));
    }
    let counts: Vec<u64> = (1..=n_max)
        .map(|n| {
            count_where(n, |perm| {
                Ok(perm.is_sum_decomposable()? && di_sort(perm, true).is_sorted())
            })
        })
        .collect::<Result<_>>()?;
    let count_at = |n: usize| counts[n - 1];

    let fit_range: Vec<usize> = OFFSET_FIT_RANGE.filter(|&n| n <= n_max).collect();
    let mut offset = None;
    if !fit_range.is_empty() {
        for d in OFFSET_CANDIDATES {
            let mut fits = true;
            for &n in &fit_range {
                if small_at(n, d)? != Some(u128::from(count_at(n))) {
                    fits = false;
                    break;
                }
            }
            if fits {
                offset = Some(d);
                break;
            }
        }
    }

    // Indices below 1 have no small Schröder number; those rows compare
    // against 0.
    let rows = (1..=n_max)
        .map(|n| {
            let reference = match offset {
                Some(d) => small_at(n, d)?.unwrap_or(0),
                None => 0,
            };
            let mut row = CountRow::new(n, count_at(n), reference);
            row.matches &= offset.is_some();
            Ok(row)
        })
        .collect::<Result<_>>()?;

    Ok(Census {
        table: CountTable { rows },
        offset,
    })
}

fn di_sortable_up_to(max_len: usize) -> Result<Vec<Permutation>> {
    let mut all = Vec::new();
    for n in 1..=max_len {
        all.extend(collect_where(
            n,
            |perm| Ok(di_sort(perm, true).is_sorted()),
        )?);
    }
    Ok(all)
}

/// A pair of DI-sortable permutations of lengths `1..=max_len` whose direct
/// sum is not DI-sortable. All pairs are tried when there are at most
/// `sample_size` of them; otherwise `sample_size` pairs drawn from a
/// fixed-seed generator.
pub fn closure_counterexample(
    sample_size: usize,
    max_len: usize,
) -> Result<Option<(Permutation, Permutation)>> {
    if max_len > CLOSURE_CAP {
        return Err(Error::limit("closure length", max_len, CLOSURE_CAP));
    }
    let sortable = di_sortable_up_to(max_len)?;
    let summand_sorts = |pair: &(usize, usize)| {
        let (a, b) = (&sortable[pair.0], &sortable[pair.1]);
        di_sort(&a.direct_sum(b), true).is_sorted()
    };

    let total = sortable.len() * sortable.len();
    let failure = if total <= sample_size {
        (0..total)
            .into_par_iter()
            .map(|i| (i / sortable.len(), i % sortable.len()))
            .find_first(|pair| !summand_sorts(pair))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let pairs: Vec<(usize, usize)> = (0..sample_size)
            .map(|_| {
                (
                    rng.gen_range(0..sortable.len()),
                    rng.gen_range(0..sortable.len()),
                )
            })
            .collect();
        pairs
            .into_par_iter()
            .find_first(|pair| !summand_sorts(pair))
    };
    Ok(failure.map(|(a, b)| (sortable[a].clone(), sortable[b].clone())))
}

/// True iff no checked pair of DI-sortable permutations has an unsortable
/// direct sum; see [`closure_counterexample`].
pub fn closure_check(sample_size: usize, max_len: usize) -> Result<bool> {
    Ok(closure_counterexample(sample_size, max_len)?.is_none())
}

/// Minimal unsortable permutations of length at most `max_len`: those the
/// oracle rejects although every one-entry deletion is sortable.
pub fn basis_search(max_len: usize, config: &MachineConfig) -> Result<PatternSet> {
    if max_len > BASIS_CAP {
        return Err(Error::limit("basis length", max_len, BASIS_CAP));
    }
    let oracle = Oracle::default();
    let mut basis = PatternSet::new();
    // The empty permutation is sortable by every machine.
    let mut shorter_sortable: HashSet<Permutation> =
        std::iter::once(Permutation::empty()).collect();

    for n in 1..=max_len {
        let verdicts: Vec<(Permutation, bool)> = collect_where(n, |_| Ok(true))?
            .into_par_iter()
            .map(|perm| {
                let ok = oracle.sortable(&perm, config)?;
                Ok((perm, ok))
            })
            .collect::<Result<_>>()?;

        let mut sortable = HashSet::new();
        for (perm, ok) in verdicts {
            if ok {
                sortable.insert(perm);
            } else if (0..n).all(|i| shorter_sortable.contains(&perm.delete_entry(i))) {
                basis.insert(perm);
            }
        }
        shorter_sortable = sortable;
    }
    Ok(basis)
}

/// Two increasing stacks in series against the 1342-avoiders, by length.
pub fn av1342_crosscheck(n_max: usize) -> Result<CountTable> {
    if n_max > CROSSCHECK_CAP {
        return Err(Error::limit("cross-check length", n_max, CROSSCHECK_CAP));
    }
    let two_increasing = MachineConfig::new(vec![
        StackRestriction::Increasing,
        StackRestriction::Increasing,
    ])?;
    let avoid_1342 =
        Method::Avoidance(std::iter::once(Permutation::new(vec![1, 3, 4, 2])?).collect());
    let rows = (1..=n_max)
        .map(|n| {
            let sortable = enumerate_sortable(n, &two_increasing, &Method::Oracle)?;
            let avoiders = enumerate_sortable(n, &two_increasing, &avoid_1342)?;
            Ok(CountRow::new(n, sortable, u128::from(avoiders)))
        })
        .collect::<Result<_>>()?;
    Ok(CountTable { rows })
}
