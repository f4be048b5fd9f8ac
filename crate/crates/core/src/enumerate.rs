//! Exhaustive counting of pattern-avoiding signed and plain permutations.
//!
//! This is the ground truth every formula in the crate is checked against.
//! Permutations are built one position at a time; after each placement only
//! occurrences ending at the new position are tested, and a prefix that
//! already contains a forbidden pattern is cut, since containment survives
//! any extension.
//!
//! The top level fans out over the n·r choices of the first entry. Each
//! branch keeps its own tally and the tallies are summed at the end, so
//! sequential and parallel runs return the same count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{factorial, pow};
use crate::containment::{avoids, occurs, occurs_ending_at, RawPattern};
use crate::error::{Error, Result};
use crate::pattern::{next_permutation, PatternSet, PlainPattern, SignedPermutation};

/// Default bound on search-tree nodes visited by a single count.
pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

/// Environment variable the CLI reads to override [`DEFAULT_NODE_LIMIT`].
pub const NODE_LIMIT_ENV: &str = "SIGNPERM_NODE_LIMIT";

const FLUSH_EVERY: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_limit: u64,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            node_limit: DEFAULT_NODE_LIMIT,
            parallel: true,
        }
    }
}

impl SearchConfig {
    pub fn sequential() -> Self {
        Self {
            parallel: false,
            ..Self::default()
        }
    }

    pub fn with_node_limit(self, node_limit: u64) -> Self {
        Self { node_limit, ..self }
    }
}

/// |E_n^r(T)| for n = 0..=nmax at a fixed r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSequence {
    pub sign_bound: u32,
    /// Pattern set in literal form.
    pub pattern_set: String,
    #[serde(with = "decimal_vec")]
    pub counts: Vec<BigUint>,
}

impl CountSequence {
    pub fn nmax(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Counts as `u64`, for tests and golden-data comparison.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(|c| c.try_into().ok()).collect()
    }
}

/// Big integers travel as decimal strings.
pub(crate) mod decimal_vec {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_str_radix(10)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

struct Budget<'a> {
    shared: &'a AtomicU64,
    abort: &'a AtomicBool,
    limit: u64,
    local: u64,
}

impl Budget<'_> {
    /// Charges one node; false once the shared budget is exhausted.
    #[inline]
    fn charge(&mut self) -> bool {
        self.local += 1;
        if self.local >= FLUSH_EVERY {
            return self.flush();
        }
        true
    }

    fn flush(&mut self) -> bool {
        let total = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.limit {
            self.abort.store(true, Ordering::Relaxed);
            return false;
        }
        !self.abort.load(Ordering::Relaxed)
    }
}

struct Search<'a> {
    n: usize,
    sign_bound: u32,
    patterns: Vec<RawPattern<'a>>,
    symbols: Vec<u32>,
    /// Empty when searching plain permutations.
    signs: Vec<u32>,
    used: Vec<bool>,
    tally: BigUint,
}

impl<'a> Search<'a> {
    fn new(n: usize, sign_bound: u32, patterns: Vec<RawPattern<'a>>, signed: bool) -> Self {
        Self {
            n,
            sign_bound,
            patterns,
            symbols: vec![0; n],
            signs: if signed { vec![0; n] } else { Vec::new() },
            used: vec![false; n + 1],
            tally: BigUint::zero(),
        }
    }

    fn signed(&self) -> bool {
        !self.signs.is_empty()
    }

    /// Places `(symbol, sign)` at `pos`; false if that creates an occurrence.
    #[inline]
    fn admissible(&self, pos: usize) -> bool {
        let signs = self.signed().then_some(&self.signs[..]);
        !self
            .patterns
            .iter()
            .any(|p| occurs_ending_at(&self.symbols, signs, *p, pos))
    }

    fn descend(&mut self, pos: usize, budget: &mut Budget<'_>) -> bool {
        if pos == self.n {
            self.tally += 1u32;
            return true;
        }
        let sign_range = if self.signed() { 1..=self.sign_bound } else { 0..=0 };
        for sym in 1..=self.n as u32 {
            if self.used[sym as usize] {
                continue;
            }
            self.symbols[pos] = sym;
            for sign in sign_range.clone() {
                if self.signed() {
                    self.signs[pos] = sign;
                }
                if !budget.charge() {
                    return false;
                }
                if self.admissible(pos) {
                    self.used[sym as usize] = true;
                    let ok = self.descend(pos + 1, budget);
                    self.used[sym as usize] = false;
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Explores the subtree whose first entry is `(sym, sign)`.
    fn branch(mut self, sym: u32, sign: u32, budget: &mut Budget<'_>) -> Option<BigUint> {
        self.symbols[0] = sym;
        if self.signed() {
            self.signs[0] = sign;
        }
        if !budget.charge() {
            return None;
        }
        if self.admissible(0) {
            self.used[sym as usize] = true;
            if !self.descend(1, budget) {
                return None;
            }
        }
        if !budget.flush() {
            return None;
        }
        Some(self.tally)
    }
}

fn run_search(
    n: usize,
    sign_bound: u32,
    patterns: Vec<RawPattern<'_>>,
    signed: bool,
    config: &SearchConfig,
) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::one());
    }
    let shared = AtomicU64::new(1);
    let abort = AtomicBool::new(false);
    let signs: Vec<u32> = if signed { (1..=sign_bound).collect() } else { vec![0] };
    let branches: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|a| signs.iter().map(move |&s| (a, s)))
        .collect();

    let explore = |&(sym, sign): &(u32, u32)| {
        let mut budget = Budget {
            shared: &shared,
            abort: &abort,
            limit: config.node_limit,
            local: 0,
        };
        Search::new(n, sign_bound, patterns.clone(), signed).branch(sym, sign, &mut budget)
    };
    let parts: Vec<Option<BigUint>> = if config.parallel {
        branches.par_iter().map(explore).collect()
    } else {
        branches.iter().map(explore).collect()
    };

    let explored = shared.load(Ordering::Relaxed);
    if abort.load(Ordering::Relaxed) || explored > config.node_limit {
        return Err(Error::Capacity {
            what: "search nodes",
            value: explored as u128,
            limit: config.node_limit as u128,
        });
    }
    Ok(parts
        .into_iter()
        .map(|p| p.expect("no abort recorded"))
        .sum())
}

fn check_sign_bound(set: &PatternSet, sign_bound: u32) -> Result<()> {
    if sign_bound == 0 {
        return Err(Error::Validation("sign bound must be at least 1".into()));
    }
    if set.sign_bound() > sign_bound {
        return Err(Error::Validation(format!(
            "pattern set uses sign bound {} but counting is over r = {sign_bound}",
            set.sign_bound()
        )));
    }
    Ok(())
}

/// |E_n^r(T)| with the default search configuration.
pub fn count_avoiders(n: usize, sign_bound: u32, set: &PatternSet) -> Result<BigUint> {
    count_avoiders_with(n, sign_bound, set, &SearchConfig::default())
}

pub fn count_avoiders_with(
    n: usize,
    sign_bound: u32,
    set: &PatternSet,
    config: &SearchConfig,
) -> Result<BigUint> {
    check_sign_bound(set, sign_bound)?;
    let patterns = set
        .iter()
        .filter(|p| p.len() <= n)
        .map(RawPattern::signed)
        .collect();
    run_search(n, sign_bound, patterns, true, config)
}

/// |S_n(T)| for plain patterns.
pub fn count_plain_avoiders(n: usize, patterns: &[PlainPattern]) -> Result<BigUint> {
    count_plain_avoiders_with(n, patterns, &SearchConfig::default())
}

pub fn count_plain_avoiders_with(
    n: usize,
    patterns: &[PlainPattern],
    config: &SearchConfig,
) -> Result<BigUint> {
    let raw = patterns
        .iter()
        .filter(|p| p.len() <= n)
        .map(RawPattern::plain)
        .collect();
    run_search(n, 1, raw, false, config)
}

/// Counts by generating every element of E_n^r and testing it against `set`
/// with no pruning. Only meant for cross-checking the pruned search on
/// small inputs.
pub fn count_avoiders_unpruned(n: usize, sign_bound: u32, set: &PatternSet) -> Result<BigUint> {
    check_sign_bound(set, sign_bound)?;
    let total = factorial(n) * pow(sign_bound as u64, n);
    if total > BigUint::from(DEFAULT_NODE_LIMIT) {
        return Err(Error::Capacity {
            what: "elements of E_n^r",
            value: u128::try_from(&total).unwrap_or(u128::MAX),
            limit: DEFAULT_NODE_LIMIT as u128,
        });
    }
    let set = set.with_sign_bound(sign_bound)?;
    let mut count = BigUint::zero();
    let mut symbols: Vec<u32> = (1..=n as u32).collect();
    loop {
        let mut signs = vec![1u32; n];
        loop {
            let perm = SignedPermutation::from_parts_unchecked(symbols.clone(), signs.clone(), sign_bound);
            if avoids(&perm, &set)? {
                count += 1u32;
            }
            // Odometer over [r]^n.
            let Some(i) = signs.iter().rposition(|&s| s < sign_bound) else {
                break;
            };
            signs[i] += 1;
            signs[i + 1..].fill(1);
        }
        if !next_permutation(&mut symbols) {
            break;
        }
    }
    Ok(count)
}

/// Plain counterpart of [`count_avoiders_unpruned`].
pub fn count_plain_avoiders_unpruned(n: usize, patterns: &[PlainPattern]) -> BigUint {
    let mut symbols: Vec<u32> = (1..=n as u32).collect();
    let mut count = BigUint::zero();
    loop {
        if !patterns
            .iter()
            .any(|p| occurs(&symbols, None, RawPattern::plain(p)))
        {
            count += 1u32;
        }
        if !next_permutation(&mut symbols) {
            break;
        }
    }
    count
}

/// The count sequence of `set` for n = 0..=nmax.
pub fn fingerprint(set: &PatternSet, sign_bound: u32, nmax: usize) -> Result<CountSequence> {
    fingerprint_with(set, sign_bound, nmax, &SearchConfig::default())
}

pub fn fingerprint_with(
    set: &PatternSet,
    sign_bound: u32,
    nmax: usize,
    config: &SearchConfig,
) -> Result<CountSequence> {
    let counts = (0..=nmax)
        .map(|n| count_avoiders_with(n, sign_bound, set, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountSequence {
        sign_bound,
        pattern_set: set.to_string(),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn ascending_sign1_pair_in_e22() {
        let t = PatternSet::parse("1^1 2^1", 2).unwrap();
        assert_eq!(count_avoiders(2, 2, &t).unwrap(), big(7));
    }

    #[test]
    fn empty_permutation() {
        let t = PatternSet::parse("1^1 2^1; 1^1", 3).unwrap();
        assert_eq!(count_avoiders(0, 3, &t).unwrap(), big(1));
        assert_eq!(count_plain_avoiders(0, &["1".parse().unwrap()]).unwrap(), big(1));
    }

    #[test]
    fn table_row_one_at_n3() {
        let t = PatternSet::parse("1^1 2^1; 2^1 1^1", 5).unwrap();
        assert_eq!(count_avoiders(3, 5, &t).unwrap(), big(672));
    }

    #[test]
    fn plain_counts() {
        assert_eq!(count_plain_avoiders(4, &["123".parse().unwrap()]).unwrap(), big(14));
        assert_eq!(count_plain_avoiders(3, &["12".parse().unwrap()]).unwrap(), big(1));
        assert_eq!(count_plain_avoiders(5, &[]).unwrap(), big(120));
    }

    #[test]
    fn unrestricted() {
        for r in 1..=4u32 {
            for n in 0..=5usize {
                let expected = factorial(n) * pow(r as u64, n);
                assert_eq!(count_avoiders(n, r, &PatternSet::empty(r)).unwrap(), expected);
            }
        }
    }

    #[test]
    fn fingerprints() {
        let fp = fingerprint(&PatternSet::empty(2), 2, 3).unwrap();
        assert_eq!(fp.to_u64().unwrap(), vec![1, 2, 8, 48]);
    }

    #[test]
    fn capacity_guard_trips() {
        let config = SearchConfig::default().with_node_limit(1000);
        let err = count_avoiders_with(6, 3, &PatternSet::empty(3), &config).unwrap_err();
        assert!(matches!(err, Error::Capacity { limit: 1000, .. }), "{err:?}");
        let err =
            count_avoiders_with(6, 3, &PatternSet::empty(3), &config.with_node_limit(1000)).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
        // Same outcome sequentially.
        let seq = SearchConfig::sequential().with_node_limit(1000);
        assert!(count_avoiders_with(6, 3, &PatternSet::empty(3), &seq).is_err());
    }

    #[test]
    fn pattern_bound_above_r_is_rejected() {
        let t = PatternSet::parse("1^3", 3).unwrap();
        assert!(count_avoiders(2, 2, &t).is_err());
        // A smaller bound is accepted.
        let t = PatternSet::parse("1^1 2^1", 1).unwrap();
        assert_eq!(count_avoiders(2, 2, &t).unwrap(), big(7));
    }

    #[test]
    fn count_sequence_json_uses_decimal_strings() {
        let fp = fingerprint(&PatternSet::empty(3), 3, 2).unwrap();
        let json = serde_json::to_string(&fp).unwrap();
        assert!(json.contains(r#""counts":["1","3","18"]"#), "{json}");
        let back: CountSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fp);
    }
}
