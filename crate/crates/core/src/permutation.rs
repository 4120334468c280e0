//! Permutations in one-line notation, classical pattern containment, direct
//! sums and exhaustive enumeration.
//!
//! A [`Permutation`] of length `n` holds each of `1..=n` exactly once. The
//! empty permutation is a valid value: it is contained in every permutation
//! and avoids every nonempty pattern.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default ceiling on the length accepted by [`all_permutations`].
pub const ENUMERATION_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Checks that `values` is a rearrangement of `1..=values.len()`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let idx = v as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::NotAPermutation { len: n, values });
            }
            seen[idx - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    /// Replaces every value by its rank among `values`. The input must hold
    /// distinct entries.
    pub fn from_ranks(values: &[u32]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i]);
        let mut ranked = vec![0; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            ranked[i] = rank as u32 + 1;
        }
        Permutation { values: ranked }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn is_identity(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    /// True iff some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        contains_pattern(self, pattern)
    }

    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        avoids_all(self, patterns)
    }

    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        direct_sum(self, other)
    }

    pub fn is_sum_decomposable(&self) -> Result<bool> {
        is_sum_decomposable(self)
    }

    /// Removes the entry at `index` and renormalizes the rest.
    pub fn delete_entry(&self, index: usize) -> Permutation {
        let removed = self.values[index];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Permutation { values }
    }

    /// Digit-string form such as `24513`, available only while every entry is
    /// a single digit.
    pub fn to_compact_string(&self) -> Option<String> {
        if self.len() > 9 {
            return None;
        }
        Some(self.values.iter().map(|v| v.to_string()).collect())
    }
}

/// Shortest first, then lexicographic.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.values.cmp(&other.values))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Always the separated form, e.g. `2 4 5 1 3`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Accepts whitespace- or comma-separated integers (`2 4 5 1 3`, `2,4,5,1,3`)
/// or a bare digit string (`24513`) of at most nine entries.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |detail: String| Error::Parse {
            what: "permutation",
            detail,
        };
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();

        let values: Vec<u32> = match tokens.as_slice() {
            [] => Vec::new(),
            [single] if single.len() > 1 && single.bytes().all(|b| b.is_ascii_digit()) => {
                if single.len() > 9 {
                    return Err(parse_err(format!(
                        "digit string {single:?} is ambiguous beyond nine entries; separate the values"
                    )));
                }
                single.bytes().map(|b| u32::from(b - b'0')).collect()
            }
            _ => tokens
                .iter()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| parse_err(format!("{t:?} is not a positive integer")))
                })
                .collect::<Result<_>>()?,
        };
        Permutation::new(values)
    }
}

/// A set of patterns, iterated shortest first and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternSet {
    patterns: BTreeSet<Permutation>,
}

impl PatternSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The two patterns whose avoidance characterizes DI-sortability.
    pub fn di_basis() -> Self {
        [vec![3, 1, 4, 2], vec![3, 2, 4, 1]]
            .into_iter()
            .map(|v| Permutation::new(v).expect("valid pattern"))
            .collect()
    }

    /// Basis of the single-stack sortable class.
    pub fn stack_basis() -> Self {
        std::iter::once(Permutation::new(vec![2, 3, 1]).expect("valid pattern")).collect()
    }

    pub fn insert(&mut self, pattern: Permutation) -> bool {
        self.patterns.insert(pattern)
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        self.patterns.contains(pattern)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.patterns.iter()
    }

    /// No member contains a different member.
    pub fn is_antichain(&self) -> bool {
        self.patterns.iter().all(|p| {
            self.patterns
                .iter()
                .all(|q| p == q || !p.contains_pattern(q))
        })
    }
}

impl FromIterator<Permutation> for PatternSet {
    fn from_iter<T: IntoIterator<Item = Permutation>>(iter: T) -> Self {
        PatternSet {
            patterns: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a Permutation;
    type IntoIter = std::collections::btree_set::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match p.to_compact_string() {
                Some(s) => f.write_str(&s)?,
                None => write!(f, "[{p}]")?,
            }
        }
        f.write_str("}")
    }
}

/// Backtracking subsequence search. Entry `j` of the pattern may only be
/// matched by a value lying strictly between the values already matched to
/// its nearest neighbours (in value) among pattern entries `0..j`.
pub fn contains_pattern(perm: &Permutation, pattern: &Permutation) -> bool {
    let k = pattern.len();
    if k == 0 {
        return true;
    }
    if k > perm.len() {
        return false;
    }

    // For each pattern position j: the earlier positions holding the closest
    // smaller and closest larger pattern value.
    let pat = pattern.values();
    let bounds: Vec<(Option<usize>, Option<usize>)> = (0..k)
        .map(|j| {
            let below = (0..j).filter(|&i| pat[i] < pat[j]).max_by_key(|&i| pat[i]);
            let above = (0..j).filter(|&i| pat[i] > pat[j]).min_by_key(|&i| pat[i]);
            (below, above)
        })
        .collect();

    let mut chosen = vec![0u32; k];
    extend_match(perm.values(), &bounds, &mut chosen, 0, 0)
}

fn extend_match(
    text: &[u32],
    bounds: &[(Option<usize>, Option<usize>)],
    chosen: &mut [u32],
    depth: usize,
    start: usize,
) -> bool {
    let k = bounds.len();
    if depth == k {
        return true;
    }
    let (below, above) = bounds[depth];
    let lo = below.map_or(0, |i| chosen[i]);
    let hi = above.map_or(u32::MAX, |i| chosen[i]);
    let last_start = text.len() - (k - depth);
    for pos in start..=last_start {
        let v = text[pos];
        if v > lo && v < hi {
            chosen[depth] = v;
            if extend_match(text, bounds, chosen, depth + 1, pos + 1) {
                return true;
            }
        }
    }
    false
}

pub fn avoids_all(perm: &Permutation, patterns: &PatternSet) -> bool {
    patterns.iter().all(|p| !contains_pattern(perm, p))
}

/// `alpha` followed by `beta` shifted up by `alpha.len()`.
pub fn direct_sum(alpha: &Permutation, beta: &Permutation) -> Permutation {
    let shift = alpha.len() as u32;
    let values = alpha
        .values()
        .iter()
        .copied()
        .chain(beta.values().iter().map(|&v| v + shift))
        .collect();
    Permutation { values }
}

/// True iff some proper nonempty prefix of length `k` holds exactly `1..=k`.
pub fn is_sum_decomposable(perm: &Permutation) -> Result<bool> {
    if perm.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    let mut max = 0;
    for (i, &v) in perm.values()[..perm.len() - 1].iter().enumerate() {
        max = max.max(v);
        if max as usize == i + 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All permutations of length `n` in lexicographic order, refusing `n` above
/// [`ENUMERATION_CAP`].
pub fn all_permutations(n: usize) -> Result<Permutations> {
    all_permutations_capped(n, ENUMERATION_CAP)
}

pub fn all_permutations_capped(n: usize, cap: usize) -> Result<Permutations> {
    if n > cap {
        return Err(Error::limit("permutation length", n, cap));
    }
    Ok(Permutations {
        next: Some((1..=n as u32).collect()),
    })
}

/// Lexicographic permutation stream; see [`all_permutations`].
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<u32>>,
}

impl Permutations {
    /// Continues from `start` (inclusive) without any length check.
    pub(crate) fn starting_at(start: Vec<u32>) -> Self {
        Permutations { next: Some(start) }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        if next_lexicographic(&mut successor) {
            self.next = Some(successor);
        }
        Some(Permutation { values: current })
    }
}

/// Advances `v` to its lexicographic successor; false when `v` is the last.
pub(crate) fn next_lexicographic(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(pivot) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let swap = (pivot + 1..v.len())
        .rev()
        .find(|&j| v[j] > v[pivot])
        .expect("a larger entry follows the pivot");
    v.swap(pivot, swap);
    v[pivot + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn containment_examples() {
        assert!(p("24513").contains_pattern(&p("2341")));
        assert!(!p("123456").contains_pattern(&p("231")));
        assert!(!p("24513").contains_pattern(&p("3142")));
        assert!(p("3142").contains_pattern(&Permutation::empty()));
        assert!(Permutation::empty().contains_pattern(&Permutation::empty()));
        assert!(!p("12").contains_pattern(&p("123")));
    }

    #[test]
    fn avoidance_examples() {
        let basis = PatternSet::di_basis();
        assert!(p("24513").avoids_all(&basis));
        assert!(!p("3142").avoids_all(&basis));
        assert!(Permutation::empty().avoids_all(&basis));
        assert!(p("3142").avoids_all(&PatternSet::new()));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(p("21").direct_sum(&p("1")), p("213"));
        assert_eq!(p("1").direct_sum(&p("21")), p("132"));
        assert_eq!(Permutation::empty().direct_sum(&p("312")), p("312"));
        assert_eq!(p("312").direct_sum(&Permutation::empty()), p("312"));
    }

    #[test]
    fn decomposability() {
        assert_eq!(p("2134").is_sum_decomposable(), Ok(true));
        assert_eq!(p("24513").is_sum_decomposable(), Ok(false));
        assert_eq!(p("1").is_sum_decomposable(), Ok(false));
        assert_eq!(
            Permutation::empty().is_sum_decomposable(),
            Err(Error::EmptyPermutation)
        );
    }

    #[test]
    fn enumeration_order() {
        let zero: Vec<_> = all_permutations(0).unwrap().collect();
        assert_eq!(zero, vec![Permutation::empty()]);

        let two: Vec<_> = all_permutations(2).unwrap().collect();
        assert_eq!(two, vec![p("12"), p("21")]);

        let four: Vec<_> = all_permutations(4).unwrap().collect();
        assert_eq!(four.len(), 24);
        assert_eq!(four.first(), Some(&p("1234")));
        assert_eq!(four.last(), Some(&p("4321")));
        assert!(four.windows(2).all(|w| w[0].values() < w[1].values()));
    }

    #[test]
    fn enumeration_cap() {
        let err = all_permutations(11).unwrap_err();
        assert!(err.is_limit());
        assert!(all_permutations_capped(11, 11).is_ok());
    }

    #[test]
    fn parsing() {
        assert_eq!(p("2 4 5 1 3"), p("24513"));
        assert_eq!(p("2,4,5,1,3"), p("24513"));
        assert_eq!(p(" 2, 4 ,5 1\t3 "), p("24513"));
        assert_eq!(p(""), Permutation::empty());
        assert_eq!(p("1"), Permutation::identity(1));
        assert_eq!(
            p("10 9 8 7 6 5 4 3 2 1").values(),
            &[10, 9, 8, 7, 6, 5, 4, 3, 2, 1]
        );
        assert!("1234567891".parse::<Permutation>().is_err());
        assert!("1 3".parse::<Permutation>().is_err());
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
        assert!("2 x 1".parse::<Permutation>().is_err());
        assert!("-1".parse::<Permutation>().is_err());
    }

    #[test]
    fn display_is_separated() {
        assert_eq!(p("24513").to_string(), "2 4 5 1 3");
        assert_eq!(p("24513").to_compact_string().as_deref(), Some("24513"));
        assert_eq!(Permutation::identity(10).to_compact_string(), None);
    }

    #[test]
    fn deletion_renormalizes() {
        assert_eq!(p("3142").delete_entry(0), p("132"));
        assert_eq!(p("3142").delete_entry(2), p("312"));
        assert_eq!(Permutation::from_ranks(&[7, 2, 9]), p("213"));
    }

    #[test]
    fn pattern_set_order_and_antichain() {
        let set: PatternSet = [p("3241"), p("231"), p("3142")].into_iter().collect();
        let order: Vec<String> = set.iter().map(|q| q.to_compact_string().unwrap()).collect();
        assert_eq!(order, ["231", "3142", "3241"]);
        assert!(!set.is_antichain());
        assert!(PatternSet::di_basis().is_antichain());
        assert_eq!(PatternSet::di_basis().to_string(), "{3142, 3241}");
    }
}
