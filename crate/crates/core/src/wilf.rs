//! Wilf classification of pairs of 2-letter signed patterns.
//!
//! Pairs are first reduced to symmetry-orbit representatives, then
//! partitioned by their count sequences up to a chosen depth. Two orbits in
//! one class have been shown equal only through that depth.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{fingerprint_with, CountSequence, SearchConfig};
use crate::error::Result;
use crate::pattern::{PatternSet, SignedPattern};
use crate::symmetry::canonical_form;

/// Recommended fingerprint depth: Table-style data needs n = 5 before all
/// classes come apart.
pub const DEFAULT_DEPTH: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WilfClass {
    /// Least canonical form among the members.
    pub representative: String,
    /// Canonical forms of the symmetry orbits in this class.
    pub members: Vec<String>,
    /// Number of unordered pairs (before symmetry reduction) in the class.
    pub pair_count: usize,
    pub fingerprint: CountSequence,
    /// Fingerprints were compared for n = 0..=depth only.
    pub depth: usize,
    #[serde(skip)]
    pub member_sets: Vec<PatternSet>,
}

impl WilfClass {
    /// More than one orbit was merged on fingerprint evidence alone.
    pub fn merged_by_fingerprint(&self) -> bool {
        self.members.len() > 1
    }
}

/// All 2r² signed patterns of length 2 over r signs.
pub fn two_letter_patterns(r: u32) -> Vec<SignedPattern> {
    let mut out = Vec::new();
    for symbols in [[1u32, 2], [2, 1]] {
        for a in 1..=r {
            for b in 1..=r {
                out.push(SignedPattern::new(symbols.to_vec(), vec![a, b], r).expect("valid"));
            }
        }
    }
    out
}

/// Every unordered pair of distinct 2-letter patterns over r signs.
pub fn two_letter_pairs(r: u32) -> Vec<PatternSet> {
    let pats = two_letter_patterns(r);
    let mut out = Vec::new();
    for i in 0..pats.len() {
        for j in i + 1..pats.len() {
            out.push(PatternSet::new([pats[i].clone(), pats[j].clone()], r).expect("valid"));
        }
    }
    out
}

/// Orbit representatives with their pair multiplicities.
pub fn pair_orbits(r: u32) -> Result<BTreeMap<PatternSet, usize>> {
    let canon = two_letter_pairs(r)
        .par_iter()
        .map(canonical_form)
        .collect::<Result<Vec<_>>>()?;
    let mut out = BTreeMap::new();
    for c in canon {
        *out.entry(c).or_insert(0) += 1;
    }
    Ok(out)
}

/// Partitions the given sets by fingerprint through `depth`.
pub fn classify_sets(
    sets: &BTreeMap<PatternSet, usize>,
    r: u32,
    depth: usize,
    config: &SearchConfig,
) -> Result<Vec<WilfClass>> {
    let entries: Vec<(&PatternSet, &usize)> = sets.iter().collect();
    let prints = entries
        .par_iter()
        .map(|(set, _)| fingerprint_with(set, r, depth, config))
        .collect::<Result<Vec<_>>>()?;

    let mut by_counts: BTreeMap<Vec<BigUint>, Vec<usize>> = BTreeMap::new();
    for (i, fp) in prints.iter().enumerate() {
        by_counts.entry(fp.counts.clone()).or_default().push(i);
    }
    let mut classes: Vec<WilfClass> = by_counts
        .into_values()
        .map(|idx| {
            // `entries` is sorted, so idx[0] is the least member.
            let member_sets: Vec<PatternSet> = idx.iter().map(|&i| entries[i].0.clone()).collect();
            WilfClass {
                representative: member_sets[0].to_string(),
                members: member_sets.iter().map(|s| s.to_string()).collect(),
                pair_count: idx.iter().map(|&i| *entries[i].1).sum(),
                fingerprint: CountSequence {
                    pattern_set: member_sets[0].to_string(),
                    ..prints[idx[0]].clone()
                },
                depth,
                member_sets,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.member_sets[0].cmp(&b.member_sets[0]));
    Ok(classes)
}

/// Wilf classes of pairs of distinct 2-letter signed patterns over r signs,
/// separated by count sequences through n = depth.
pub fn classify_pairs(r: u32, depth: usize) -> Result<Vec<WilfClass>> {
    classify_pairs_with(r, depth, &SearchConfig::default())
}

pub fn classify_pairs_with(r: u32, depth: usize, config: &SearchConfig) -> Result<Vec<WilfClass>> {
    classify_sets(&pair_orbits(r)?, r, depth, config)
}

/// Number of classes found by [`classify_pairs`]. A depth that is too small
/// can only merge classes, never split one.
pub fn wc(r: u32, depth: usize) -> Result<usize> {
    Ok(classify_pairs(r, depth)?.len())
}

/// One line of the reference table of pairs at r = 5.
#[derive(Debug, Clone, Copy)]
pub struct Table1Entry {
    pub row: usize,
    pub first: &'static str,
    pub second: &'static str,
    pub expected: [u64; 6],
    pub family: Option<&'static str>,
}

pub const TABLE1_SIGN_BOUND: u32 = 5;

const CASE1: [u64; 6] = [1, 5, 48, 672, 12288, 276480];
const CASE2: [u64; 6] = [1, 5, 48, 668, 12046, 265062];
const CASE3: [u64; 6] = [1, 5, 48, 670, 12168, 270856];

pub const TABLE1: [Table1Entry; 17] = [
    Table1Entry { row: 1, first: "1^1 2^1", second: "2^1 1^1", expected: CASE1, family: Some("case1") },
    Table1Entry { row: 2, first: "1^1 2^1", second: "1^1 2^2", expected: CASE1, family: Some("case1") },
    Table1Entry { row: 3, first: "1^1 2^2", second: "2^1 1^2", expected: CASE1, family: Some("case1") },
    Table1Entry { row: 4, first: "1^1 2^2", second: "2^2 1^1", expected: CASE1, family: Some("case1") },
    Table1Entry { row: 5, first: "1^1 2^2", second: "1^1 2^3", expected: CASE1, family: Some("case1") },
    Table1Entry { row: 6, first: "1^1 2^1", second: "1^2 2^2", expected: CASE2, family: Some("case2") },
    Table1Entry { row: 7, first: "1^1 2^1", second: "2^2 1^2", expected: CASE2, family: Some("case2") },
    Table1Entry { row: 8, first: "1^1 2^1", second: "1^2 2^3", expected: CASE2, family: Some("case2") },
    Table1Entry { row: 9, first: "1^1 2^1", second: "2^2 1^3", expected: CASE2, family: Some("case2") },
    Table1Entry { row: 10, first: "1^1 2^2", second: "1^3 2^4", expected: CASE2, family: Some("case2") },
    Table1Entry { row: 11, first: "1^1 2^2", second: "2^3 1^4", expected: CASE2, family: Some("case2") },
    Table1Entry { row: 12, first: "1^1 2^2", second: "2^1 1^3", expected: CASE3, family: Some("case3") },
    Table1Entry { row: 13, first: "1^1 2^2", second: "2^2 1^3", expected: CASE3, family: Some("case3") },
    Table1Entry { row: 14, first: "1^1 2^2", second: "2^3 1^1", expected: CASE3, family: Some("case3") },
    Table1Entry { row: 15, first: "1^1 2^1", second: "2^1 1^2", expected: [1, 5, 48, 671, 12288, 273665], family: Some("case4") },
    Table1Entry { row: 16, first: "1^1 2^2", second: "1^2 2^3", expected: [1, 5, 48, 669, 12106, 267867], family: None },
    Table1Entry { row: 17, first: "1^1 2^2", second: "1^2 2^1", expected: [1, 5, 48, 670, 12166, 270672], family: None },
];

/// Row groups sharing a count sequence.
pub const TABLE1_GROUPS: [&[usize]; 6] = [
    &[1, 2, 3, 4, 5],
    &[6, 7, 8, 9, 10, 11],
    &[12, 13, 14],
    &[15],
    &[16],
    &[17],
];

impl Table1Entry {
    /// The pair as a pattern set over `r` signs (needs r ≥ largest sign used).
    pub fn pattern_set(&self, r: u32) -> Result<PatternSet> {
        PatternSet::parse(&format!("{}; {}", self.first, self.second), r)
    }

    /// Largest sign appearing in the pair.
    pub fn max_sign(&self) -> u32 {
        self.pattern_set(TABLE1_SIGN_BOUND)
            .expect("table literal")
            .max_sign_used()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub row: usize,
    pub patterns: String,
    pub expected: Vec<u64>,
    pub computed: Vec<String>,
    pub matches: bool,
}

/// Brute-force fingerprints of all 17 reference pairs at r = 5, n = 0..=5,
/// each compared against the stored sequence. Mismatches are reported per
/// row rather than raised.
pub fn table1(config: &SearchConfig) -> Result<Vec<Table1Report>> {
    TABLE1
        .par_iter()
        .map(|entry| {
            let set = entry.pattern_set(TABLE1_SIGN_BOUND)?;
            let fp = fingerprint_with(&set, TABLE1_SIGN_BOUND, entry.expected.len() - 1, config)?;
            let matches = fp
                .counts
                .iter()
                .zip(entry.expected)
                .all(|(c, e)| *c == BigUint::from(e));
            Ok(Table1Report {
                row: entry.row,
                patterns: set.to_string(),
                expected: entry.expected.to_vec(),
                computed: fp.counts.iter().map(|c| c.to_string()).collect(),
                matches,
            })
        })
        .collect()
}
