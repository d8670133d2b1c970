//! Permutations in one-line notation, pattern containment, and the
//! decomposition helpers used by the gadget constructions: cyclic
//! completion, the 132-avoiding set mapper, conjugation of cyclic
//! permutations, and the sorted-halves Grassmannian.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("one-line notation must be a bijection of 1..={0}")]
    NotABijection(usize),
    #[error("permutation must have at least one element")]
    Empty,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("pattern of length {pattern} longer than permutation of length {host}")]
    PatternTooLong { pattern: usize, host: usize },
    #[error("parts sum to {sum}, expected {expected}")]
    BadSplitParts { sum: usize, expected: usize },
    #[error("unsupported pattern for cyclic completion: {0}")]
    UnsupportedPattern(String),
    #[error("permutation is not cyclic")]
    NotCyclic,
    #[error("position sets have different cardinalities: {0} vs {1}")]
    CardinalityMismatch(usize, usize),
    #[error("position {pos} out of range 1..={n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("split point {m} out of range 1..={n}")]
    SplitPointOutOfRange { m: usize, n: usize },
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// A permutation of `{1..n}` in one-line notation: `mapping[i-1]` is the
/// image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
}

/// Patterns are permutations of `{1..m}`; containment is order-isomorphism.
pub type Pattern = Permutation;

impl Permutation {
    pub fn from_one_line(mapping: Vec<usize>) -> Result<Self, PermError> {
        if mapping.is_empty() {
            return Err(PermError::Empty);
        }
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &v in &mapping {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotABijection(n));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have at least one element");
        Permutation {
            mapping: (1..=n).collect(),
        }
    }

    /// `[n, n-1, ..., 1]`.
    pub fn reverse(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            mapping: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.mapping.len()
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.mapping.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { mapping: inv }
    }

    /// Composition `(self · rho)(i) = self(rho(i))`.
    pub fn compose(&self, rho: &Permutation) -> Result<Permutation, PermError> {
        if self.n() != rho.n() {
            return Err(PermError::SizeMismatch(self.n(), rho.n()));
        }
        Ok(Permutation {
            mapping: rho.mapping.iter().map(|&i| self.mapping[i - 1]).collect(),
        })
    }

    /// Positions `k` with `pi(k) > pi(k+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&k| self.mapping[k - 1] > self.mapping[k])
            .collect()
    }

    /// At most one descent.
    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    /// Exactly one cycle.
    pub fn is_cyclic(&self) -> bool {
        let n = self.n();
        let mut i = 1;
        for _ in 1..n {
            i = self.apply(i);
            if i == 1 {
                return false;
            }
        }
        true
    }

    /// Number of pairs `i < j` with `i` appearing after `j`.
    pub fn inversion_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.mapping[i] > self.mapping[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Inversions as value pairs `(a, b)`, `a < b`, sorted.
    pub fn inversion_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.mapping[i] > self.mapping[j] {
                    pairs.push((self.mapping[j], self.mapping[i]));
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }

    /// True iff some subsequence of `self` is order-isomorphic to `p`.
    pub fn contains_pattern(&self, p: &Pattern) -> Result<bool, PermError> {
        let m = p.n();
        let n = self.n();
        if m > n {
            return Err(PermError::PatternTooLong {
                pattern: m,
                host: n,
            });
        }
        // Direct scan over index choices; the patterns that matter here
        // never exceed length 4, so O(n^m) is fine.
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        Ok(self.pattern_scan(p, &mut chosen, 0))
    }

    fn pattern_scan(&self, p: &Pattern, chosen: &mut Vec<usize>, start: usize) -> bool {
        let k = chosen.len();
        if k == p.n() {
            return true;
        }
        for idx in start..self.n() {
            let ok = (0..k).all(|j| {
                (self.mapping[chosen[j]] < self.mapping[idx]) == (p.mapping[j] < p.mapping[k])
            });
            if ok {
                chosen.push(idx);
                if self.pattern_scan(p, chosen, idx + 1) {
                    chosen.pop();
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// True iff `self` maps each consecutive interval of the given
    /// lengths to itself.
    pub fn is_split(&self, parts: &[usize]) -> Result<bool, PermError> {
        let sum: usize = parts.iter().sum();
        if sum != self.n() {
            return Err(PermError::BadSplitParts {
                sum,
                expected: self.n(),
            });
        }
        let mut lo = 1;
        for &len in parts {
            let hi = lo + len;
            for i in lo..hi {
                let v = self.apply(i);
                if v < lo || v >= hi {
                    return Ok(false);
                }
            }
            lo = hi;
        }
        Ok(true)
    }

    /// The values at positions `lo..=hi`, relabeled to `1..=(hi-lo+1)` by rank.
    pub fn block_pattern(&self, lo: usize, hi: usize) -> Permutation {
        relabel_by_rank(&self.mapping[lo - 1..hi])
    }

    /// Conjugate by the reversal: `rev · self · rev`.
    pub fn reverse_conjugate(&self) -> Permutation {
        let n = self.n();
        let mapping = (1..=n).map(|i| n + 1 - self.apply(n + 1 - i)).collect();
        Permutation { mapping }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mapping.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses comma-separated one-line notation, e.g. `"3,1,2"`.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let mut mapping = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let v: usize = tok.parse().map_err(|_| PermError::Parse(s.to_string()))?;
            mapping.push(v);
        }
        Permutation::from_one_line(mapping)
    }
}

/// Relabel a sequence of distinct integers to a permutation of `1..=len`
/// preserving relative order.
pub fn relabel_by_rank(values: &[usize]) -> Permutation {
    let mut sorted: Vec<usize> = values.to_vec();
    sorted.sort_unstable();
    let mapping = values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect();
    Permutation { mapping }
}

/// A subset of `{1..n}` with its ambient size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionSet {
    n: usize,
    members: Vec<usize>,
}

impl PositionSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, PermError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m == 0 || m > n {
                return Err(PermError::PositionOutOfRange { pos: m, n });
            }
        }
        Ok(PositionSet { n, members })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

fn completion_kind(p: &Pattern) -> Option<&'static str> {
    match p.one_line() {
        [3, 1, 2] => Some("312"),
        [2, 3, 1] => Some("231"),
        [2, 1, 3] => Some("213"),
        [1, 3, 2] => Some("132"),
        _ => None,
    }
}

/// Finds a `p`-avoiding permutation `sigma` such that `sigma · pi` is
/// cyclic, for `p` one of 312, 231, 213, 132.
///
/// The 312 case runs the rainbow-interval iteration: while the working
/// permutation is not cyclic, rotate the leftmost maximal interval of
/// length >= 2 whose elements lie in pairwise distinct cycles. The other
/// patterns reduce to it through reversal and conjugation.
pub fn cyclic_completion(pi: &Permutation, p: &Pattern) -> Result<Permutation, PermError> {
    let kind =
        completion_kind(p).ok_or_else(|| PermError::UnsupportedPattern(p.to_string()))?;
    let n = pi.n();
    let rev = Permutation::reverse(n);
    match kind {
        "312" => Ok(completion_312(pi)),
        "231" => Ok(completion_312(&pi.reverse_conjugate()).reverse_conjugate()),
        "213" => completion_312(&rev.compose(pi)?).compose(&rev),
        "132" => {
            let conj = pi.reverse_conjugate();
            let sigma = completion_312(&rev.compose(&conj)?).compose(&rev)?;
            Ok(sigma.reverse_conjugate())
        }
        _ => unreachable!(),
    }
}

fn completion_312(pi: &Permutation) -> Permutation {
    let n = pi.n();
    let mut tau = pi.clone();
    let mut sigma = Permutation::identity(n);
    while n >= 2 && !tau.is_cyclic() {
        let (a, b) = leftmost_maximal_rainbow(&tau).expect("non-cyclic permutation has one");
        // Rotation of [a, b]: a -> a+1, ..., b-1 -> b, b -> a.
        let mut kappa: Vec<usize> = (1..=n).collect();
        for i in a..b {
            kappa[i - 1] = i + 1;
        }
        kappa[b - 1] = a;
        let kappa = Permutation { mapping: kappa };
        tau = kappa.compose(&tau).unwrap();
        sigma = kappa.compose(&sigma).unwrap();
    }
    sigma
}

/// Leftmost maximal interval `[a, b]`, `b > a`, whose elements belong to
/// pairwise distinct cycles of `tau`. Returns `None` when `tau` is cyclic.
fn leftmost_maximal_rainbow(tau: &Permutation) -> Option<(usize, usize)> {
    let n = tau.n();
    let mut cycle_id = vec![0usize; n + 1];
    let mut next_id = 0;
    for start in 1..=n {
        if cycle_id[start] == 0 {
            next_id += 1;
            let mut i = start;
            loop {
                cycle_id[i] = next_id;
                i = tau.apply(i);
                if i == start {
                    break;
                }
            }
        }
    }
    // Two-pointer sweep; reach(a) is nondecreasing, and [a, reach(a)] is
    // maximal iff it is not contained in [a-1, reach(a-1)].
    let mut counts = vec![0usize; next_id + 1];
    let mut b = 0usize;
    let mut prev_reach = 0usize;
    for a in 1..=n {
        if b < a {
            b = a;
            counts.fill(0);
            counts[cycle_id[a]] = 1;
        }
        while b < n && counts[cycle_id[b + 1]] == 0 {
            b += 1;
            counts[cycle_id[b]] += 1;
        }
        if b > prev_reach && b >= a + 1 {
            return Some((a, b));
        }
        prev_reach = b;
        counts[cycle_id[a]] -= 1;
    }
    None
}

/// Finds a 132-avoiding permutation mapping set `a` onto set `b`.
///
/// Case analysis on conforming corner pairs; when both sets are empty or
/// both are all of `{1..n}` the identity is returned.
pub fn mixer(a: &PositionSet, b: &PositionSet) -> Result<Permutation, PermError> {
    if a.ambient() != b.ambient() {
        return Err(PermError::SizeMismatch(a.ambient(), b.ambient()));
    }
    if a.len() != b.len() {
        return Err(PermError::CardinalityMismatch(a.len(), b.len()));
    }
    let n = a.ambient();
    let mut in_a = vec![false; n];
    let mut in_b = vec![false; n];
    for &x in a.members() {
        in_a[x - 1] = true;
    }
    for &x in b.members() {
        in_b[x - 1] = true;
    }
    Ok(Permutation {
        mapping: mixer_impl(&in_a, &in_b),
    })
}

/// `in_a[i]` is membership of `i+1`; returns one-line values of length `n`.
fn mixer_impl(in_a: &[bool], in_b: &[bool]) -> Vec<usize> {
    let n = in_a.len();
    if n == 0 {
        return Vec::new();
    }
    let size = in_a.iter().filter(|&&x| x).count();
    if n == 1 || size == 0 || size == n {
        return (1..=n).collect();
    }
    let complement = |v: &[bool]| -> Vec<bool> { v.iter().map(|x| !x).collect() };
    // Case 1: pair (n, 1) conforming.
    if in_a[n - 1] == in_b[0] {
        if in_a[n - 1] {
            return mixer_impl(&complement(in_a), &complement(in_b));
        }
        // sigma maps A onto B-1 inside {1..n-1}; put 1 last, lift the rest.
        let sigma = mixer_impl(&in_a[..n - 1], &in_b[1..]);
        let mut out: Vec<usize> = sigma.iter().map(|v| v + 1).collect();
        out.push(1);
        return out;
    }
    // Case 2: pair (1, n) conforming.
    if in_a[0] == in_b[n - 1] {
        if in_a[0] {
            return mixer_impl(&complement(in_a), &complement(in_b));
        }
        let sigma = mixer_impl(&in_a[1..], &in_b[..n - 1]);
        let mut out = Vec::with_capacity(n);
        out.push(n);
        out.extend(sigma);
        return out;
    }
    // Case 3: pair (n, n) conforming.
    if in_a[n - 1] == in_b[n - 1] {
        let mut out = mixer_impl(&in_a[..n - 1], &in_b[..n - 1]);
        out.push(n);
        return out;
    }
    // Case 4: none of the corner pairs conform; arrange 1, n in A and not in B.
    if !in_a[0] {
        return mixer_impl(&complement(in_a), &complement(in_b));
    }
    // Smallest k in [2, n-2] where the prefix of A and suffix of B balance.
    let mut k = 0;
    let mut pref = 0usize;
    let mut suffix_counts = vec![0usize; n + 1];
    for kk in 1..=n {
        suffix_counts[kk] = in_b[n - kk..].iter().filter(|&&x| x).count();
    }
    for kk in 2..=n.saturating_sub(2) {
        pref = in_a[..kk].iter().filter(|&&x| x).count();
        if pref == suffix_counts[kk] {
            k = kk;
            break;
        }
    }
    let _ = pref;
    assert!(k != 0, "balancing index must exist in case 4");
    let pi1 = mixer_impl(&in_a[..k], &in_b[n - k..]);
    let pi2 = mixer_impl(&in_a[k..], &in_b[..n - k]);
    let mut out: Vec<usize> = pi1.iter().map(|v| v + n - k).collect();
    out.extend(pi2);
    out
}

/// For cyclic `c1`, `c2` of equal size, returns `alpha` with
/// `c1 = alpha · c2 · alpha^-1`, anchored by `alpha(c2^k(1)) = c1^k(1)`.
pub fn conjugator(c1: &Permutation, c2: &Permutation) -> Result<Permutation, PermError> {
    if c1.n() != c2.n() {
        return Err(PermError::SizeMismatch(c1.n(), c2.n()));
    }
    if !c1.is_cyclic() || !c2.is_cyclic() {
        return Err(PermError::NotCyclic);
    }
    let n = c1.n();
    let mut mapping = vec![0usize; n];
    let (mut x, mut y) = (1usize, 1usize);
    for _ in 0..n {
        mapping[x - 1] = y;
        x = c2.apply(x);
        y = c1.apply(y);
    }
    Ok(Permutation { mapping })
}

/// The Grassmannian `tau` whose first `m` entries are `pi(1..m)` sorted
/// ascending and whose remaining entries are `pi(m+1..n)` sorted ascending.
/// `tau^-1 · pi` is then `(m, n-m)`-split.
pub fn grassmannian_of_halves(pi: &Permutation, m: usize) -> Result<Permutation, PermError> {
    let n = pi.n();
    if m == 0 || m > n {
        return Err(PermError::SplitPointOutOfRange { m, n });
    }
    let mut left: Vec<usize> = pi.one_line()[..m].to_vec();
    let mut right: Vec<usize> = pi.one_line()[m..].to_vec();
    left.sort_unstable();
    right.sort_unstable();
    left.extend(right);
    Ok(Permutation { mapping: left })
}
