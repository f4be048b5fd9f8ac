//! Signed permutations, signed patterns and pattern sets.
//!
//! Symbols and signs are 1-based everywhere in the public API: a signed
//! permutation of length `n` over sign bound `r` has symbols forming a
//! permutation of `{1..n}` and every sign in `{1..r}`.
//!
//! The textual form used throughout (CLI, fixtures, FFI) writes each entry
//! as `SYMBOL^SIGN`, entries separated by whitespace, and patterns inside a
//! set separated by `;`:
//!
//! ```text
//! 1^1 2^2; 2^3 1^1
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of E_n^r: a permutation of `{1..n}` with a sign in `{1..r}` at each position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    symbols: Vec<u32>,
    signs: Vec<u32>,
    sign_bound: u32,
}

fn check_permutation(symbols: &[u32]) -> Result<()> {
    let n = symbols.len();
    let mut seen = vec![false; n];
    for (i, &s) in symbols.iter().enumerate() {
        if s == 0 || s as usize > n {
            return Err(Error::Validation(format!(
                "symbol {s} at position {} is outside 1..={n}",
                i + 1
            )));
        }
        if std::mem::replace(&mut seen[s as usize - 1], true) {
            return Err(Error::Validation(format!(
                "symbol {s} repeated; symbols must be a permutation of 1..={n}"
            )));
        }
    }
    Ok(())
}

impl SignedPermutation {
    pub fn new(symbols: Vec<u32>, signs: Vec<u32>, sign_bound: u32) -> Result<Self> {
        if sign_bound == 0 {
            return Err(Error::Validation("sign bound must be at least 1".into()));
        }
        if symbols.len() != signs.len() {
            return Err(Error::Validation(format!(
                "{} symbols but {} signs",
                symbols.len(),
                signs.len()
            )));
        }
        check_permutation(&symbols)?;
        if let Some((i, &s)) = signs
            .iter()
            .enumerate()
            .find(|(_, &s)| s == 0 || s > sign_bound)
        {
            return Err(Error::Validation(format!(
                "sign {s} at position {} is outside 1..={sign_bound}",
                i + 1
            )));
        }
        Ok(Self {
            symbols,
            signs,
            sign_bound,
        })
    }

    /// Builds from `(symbol, sign)` pairs.
    pub fn from_pairs(pairs: &[(u32, u32)], sign_bound: u32) -> Result<Self> {
        let (symbols, signs) = pairs.iter().copied().unzip();
        Self::new(symbols, signs, sign_bound)
    }

    /// The empty signed permutation (n = 0).
    pub fn empty(sign_bound: u32) -> Self {
        Self {
            symbols: Vec::new(),
            signs: Vec::new(),
            sign_bound: sign_bound.max(1),
        }
    }

    // Callers inside the crate guarantee the invariants.
    pub(crate) fn from_parts_unchecked(symbols: Vec<u32>, signs: Vec<u32>, sign_bound: u32) -> Self {
        debug_assert!(Self::new(symbols.clone(), signs.clone(), sign_bound).is_ok());
        Self {
            symbols,
            signs,
            sign_bound,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn signs(&self) -> &[u32] {
        &self.signs
    }

    pub fn sign_bound(&self) -> u32 {
        self.sign_bound
    }

    /// True when every sign is the same (a homogeneous element).
    pub fn is_homogeneous(&self) -> bool {
        self.signs.windows(2).all(|w| w[0] == w[1])
    }

    /// Same element viewed under a (not smaller) sign bound.
    pub fn with_sign_bound(&self, sign_bound: u32) -> Result<Self> {
        Self::new(self.symbols.clone(), self.signs.clone(), sign_bound)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, s)) in self.symbols.iter().zip(&self.signs).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}^{s}")?;
        }
        Ok(())
    }
}

/// A signed permutation of length k ≥ 1 used as a forbidden configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPattern(SignedPermutation);

impl SignedPattern {
    pub fn new(symbols: Vec<u32>, signs: Vec<u32>, sign_bound: u32) -> Result<Self> {
        Self::try_from(SignedPermutation::new(symbols, signs, sign_bound)?)
    }

    pub fn from_pairs(pairs: &[(u32, u32)], sign_bound: u32) -> Result<Self> {
        Self::try_from(SignedPermutation::from_pairs(pairs, sign_bound)?)
    }

    /// The homogeneous pattern `τ_(u)`.
    pub fn homogeneous(plain: &PlainPattern, sign: u32, sign_bound: u32) -> Result<Self> {
        Self::new(
            plain.symbols().to_vec(),
            vec![sign; plain.len()],
            sign_bound,
        )
    }

    pub fn as_permutation(&self) -> &SignedPermutation {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[u32] {
        self.0.symbols()
    }

    pub fn signs(&self) -> &[u32] {
        self.0.signs()
    }

    pub fn sign_bound(&self) -> u32 {
        self.0.sign_bound()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    /// The unsigned pattern underneath.
    pub fn plain(&self) -> PlainPattern {
        PlainPattern(self.symbols().to_vec())
    }

    pub fn with_sign_bound(&self, sign_bound: u32) -> Result<Self> {
        Ok(Self(self.0.with_sign_bound(sign_bound)?))
    }
}

impl TryFrom<SignedPermutation> for SignedPattern {
    type Error = Error;

    fn try_from(perm: SignedPermutation) -> Result<Self> {
        if perm.is_empty() {
            return Err(Error::Validation("a pattern must have length at least 1".into()));
        }
        Ok(Self(perm))
    }
}

impl Ord for SignedPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.symbols().cmp(other.symbols()))
            .then_with(|| self.signs().cmp(other.signs()))
            .then_with(|| self.sign_bound().cmp(&other.sign_bound()))
    }
}

impl PartialOrd for SignedPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A finite set of signed patterns sharing one sign bound, kept sorted by
/// (length, symbols, signs) and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternSet {
    patterns: Vec<SignedPattern>,
    sign_bound: u32,
}

impl PatternSet {
    pub fn empty(sign_bound: u32) -> Self {
        Self {
            patterns: Vec::new(),
            sign_bound: sign_bound.max(1),
        }
    }

    pub fn new(patterns: impl IntoIterator<Item = SignedPattern>, sign_bound: u32) -> Result<Self> {
        if sign_bound == 0 {
            return Err(Error::Validation("sign bound must be at least 1".into()));
        }
        let mut patterns: Vec<_> = patterns.into_iter().collect();
        if let Some(p) = patterns.iter().find(|p| p.sign_bound() != sign_bound) {
            return Err(Error::Validation(format!(
                "pattern {p} has sign bound {} but the set uses {sign_bound}",
                p.sign_bound()
            )));
        }
        patterns.sort();
        patterns.dedup();
        Ok(Self {
            patterns,
            sign_bound,
        })
    }

    /// Builds from `(symbol, sign)` lists, one per pattern.
    pub fn from_pairs(patterns: &[&[(u32, u32)]], sign_bound: u32) -> Result<Self> {
        let pats = patterns
            .iter()
            .map(|p| SignedPattern::from_pairs(p, sign_bound))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pats, sign_bound)
    }

    /// Parses the `1^1 2^2; 2^3 1^1` literal form. An empty (or `{}`) literal
    /// is the empty set.
    pub fn parse(literal: &str, sign_bound: u32) -> Result<Self> {
        parse_pattern_set(literal, sign_bound)
    }

    pub fn patterns(&self) -> &[SignedPattern] {
        &self.patterns
    }

    pub fn sign_bound(&self) -> u32 {
        self.sign_bound
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SignedPattern> {
        self.patterns.iter()
    }

    pub fn contains_pattern(&self, p: &SignedPattern) -> bool {
        self.patterns.binary_search(p).is_ok()
    }

    /// Returns a new set with `p` added.
    pub fn with(&self, p: SignedPattern) -> Result<Self> {
        Self::new(self.patterns.iter().cloned().chain(Some(p)), self.sign_bound)
    }

    /// Re-labels the set under a larger (or equal) sign bound.
    pub fn with_sign_bound(&self, sign_bound: u32) -> Result<Self> {
        let pats = self
            .patterns
            .iter()
            .map(|p| p.with_sign_bound(sign_bound))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pats, sign_bound)
    }

    /// Largest sign actually used by any pattern (0 for the empty set).
    pub fn max_sign_used(&self) -> u32 {
        self.patterns
            .iter()
            .flat_map(|p| p.signs().iter().copied())
            .max()
            .unwrap_or(0)
    }
}

impl Ord for PatternSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.patterns
            .cmp(&other.patterns)
            .then_with(|| self.sign_bound.cmp(&other.sign_bound))
    }
}

impl PartialOrd for PatternSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a SignedPattern;
    type IntoIter = std::slice::Iter<'a, SignedPattern>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.patterns.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// An ordinary (unsigned) pattern: a permutation of `{1..k}`, k ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlainPattern(Vec<u32>);

impl PlainPattern {
    pub fn new(symbols: Vec<u32>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Validation("a pattern must have length at least 1".into()));
        }
        check_permutation(&symbols)?;
        Ok(Self(symbols))
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All k! patterns of length k, in lexicographic order.
    pub fn all_of_length(k: usize) -> Vec<PlainPattern> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (1..=k as u32).collect();
        loop {
            out.push(PlainPattern(cur.clone()));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

/// Advances `v` to the next permutation in lexicographic order; false once
/// the last one has been passed (and `v` is left sorted ascending again).
pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        v.reverse();
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl fmt::Display for PlainPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.len() > 9;
        for (i, s) in self.0.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for PlainPattern {
    type Err = Error;

    /// Accepts `132` (single-digit symbols) or `1 3 2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let symbols: Vec<u32> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Validation(format!("bad symbol '{t}'")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Validation(format!("bad symbol '{c}'")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(symbols)
    }
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

/// Parses one `SYMBOL^SIGN` token starting at byte `offset`.
fn parse_entry(token: &str, offset: usize, sign_bound: u32) -> Result<(u32, u32)> {
    let Some(caret) = token.find('^') else {
        return Err(parse_error(
            offset,
            format!("expected SYMBOL^SIGN, found '{token}'"),
        ));
    };
    let (sym, sign) = (&token[..caret], &token[caret + 1..]);
    let sym: u32 = sym
        .parse()
        .map_err(|_| parse_error(offset, format!("bad symbol '{sym}'")))?;
    let sign_offset = offset + caret + 1;
    let sign: u32 = sign
        .parse()
        .map_err(|_| parse_error(sign_offset, format!("bad sign '{sign}'")))?;
    if sign == 0 || sign > sign_bound {
        return Err(parse_error(
            sign_offset,
            format!("sign {sign} out of range 1..={sign_bound}"),
        ));
    }
    Ok((sym, sign))
}

fn parse_pattern_set(literal: &str, sign_bound: u32) -> Result<PatternSet> {
    if sign_bound == 0 {
        return Err(Error::Validation("sign bound must be at least 1".into()));
    }
    let trimmed = literal.trim();
    if trimmed.is_empty() || trimmed == "{}" {
        return Ok(PatternSet::empty(sign_bound));
    }
    let mut patterns = Vec::new();
    let mut start = 0usize;
    for chunk in literal.split(';') {
        let chunk_start = start;
        start += chunk.len() + 1;
        let mut entries = Vec::new();
        let mut token_start = None;
        for (i, c) in chunk.char_indices().chain(Some((chunk.len(), ' '))) {
            match (c.is_whitespace(), token_start) {
                (false, None) => token_start = Some(i),
                (true, Some(s)) => {
                    entries.push(parse_entry(&chunk[s..i], chunk_start + s, sign_bound)?);
                    token_start = None;
                }
                _ => {}
            }
        }
        if entries.is_empty() {
            return Err(parse_error(chunk_start, "empty pattern"));
        }
        let (symbols, signs): (Vec<u32>, Vec<u32>) = entries.into_iter().unzip();
        if let Err(Error::Validation(msg)) = check_permutation(&symbols) {
            return Err(parse_error(
                chunk_start,
                format!("symbols not a permutation: {msg}"),
            ));
        }
        patterns.push(SignedPattern::new(symbols, signs, sign_bound)?);
    }
    PatternSet::new(patterns, sign_bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_two_patterns() {
        let t = PatternSet::parse("1^1 2^2; 2^1 1^3", 3).unwrap();
        let expected = PatternSet::from_pairs(&[&[(1, 1), (2, 2)], &[(2, 1), (1, 3)]], 3).unwrap();
        assert_eq!(t, expected);
        assert_eq!(t.to_string(), "1^1 2^2; 2^1 1^3");
    }

    #[test]
    fn parse_rejects_repeated_symbol() {
        let err = PatternSet::parse("1^1 1^2", 3).unwrap_err();
        assert!(matches!(err, Error::Parse { position: 0, ref message } if message.contains("not a permutation")));
    }

    #[test]
    fn parse_rejects_sign_out_of_range() {
        let err = PatternSet::parse("1^1 2^4", 3).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                position: 6,
                message: "sign 4 out of range 1..=3".into()
            }
        );
    }

    #[test]
    fn parse_reports_offset_in_later_pattern() {
        let err = PatternSet::parse("1^1 2^1; 2^1 1x1", 2).unwrap_err();
        assert!(matches!(err, Error::Parse { position: 13, .. }), "{err:?}");
    }

    #[test]
    fn parse_empty_set() {
        assert!(PatternSet::parse("", 2).unwrap().is_empty());
        assert!(PatternSet::parse(" {} ", 2).unwrap().is_empty());
        assert!(PatternSet::parse("1^1 2^1;", 2).is_err());
    }

    #[test]
    fn sets_are_sorted_and_deduplicated() {
        let t = PatternSet::parse("2^1 1^1; 1^2; 1^1 2^1; 2^1 1^1", 2).unwrap();
        assert_eq!(t.to_string(), "1^2; 1^1 2^1; 2^1 1^1");
    }

    #[test]
    fn validation() {
        assert!(SignedPermutation::new(vec![1, 3], vec![1, 1], 2).is_err());
        assert!(SignedPermutation::new(vec![1, 2], vec![1, 3], 2).is_err());
        assert!(SignedPermutation::new(vec![1, 2], vec![1], 2).is_err());
        assert!(SignedPattern::new(vec![], vec![], 2).is_err());
        let p = SignedPattern::from_pairs(&[(1, 1)], 2).unwrap();
        assert!(PatternSet::new([p], 3).is_err());
    }

    #[test]
    fn plain_patterns() {
        assert_eq!(PlainPattern::all_of_length(3).len(), 6);
        assert_eq!("132".parse::<PlainPattern>().unwrap().symbols(), &[1, 3, 2]);
        assert_eq!("1 3 2".parse::<PlainPattern>().unwrap().to_string(), "132");
        assert!("122".parse::<PlainPattern>().is_err());
    }
}
