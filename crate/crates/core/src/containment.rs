//! The containment predicate for signed (and plain) patterns.

use crate::error::{Error, Result};
use crate::pattern::{PatternSet, PlainPattern, SignedPattern, SignedPermutation};

/// Raw view of a pattern used by the search loops.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RawPattern<'a> {
    pub symbols: &'a [u32],
    /// `None` for plain patterns.
    pub signs: Option<&'a [u32]>,
}

impl<'a> RawPattern<'a> {
    pub fn signed(p: &'a SignedPattern) -> Self {
        Self {
            symbols: p.symbols(),
            signs: Some(p.signs()),
        }
    }

    pub fn plain(p: &'a PlainPattern) -> Self {
        Self {
            symbols: p.symbols(),
            signs: None,
        }
    }

    fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    fn admits(&self, j: usize, sign: Option<u32>) -> bool {
        match (self.signs, sign) {
            (Some(ps), Some(s)) => ps[j] == s,
            _ => true,
        }
    }
}

/// Can pattern position `j` sit at text index `idx`, given the text indices
/// `chosen[..j]` already matched to positions `0..j`?
#[inline]
fn consistent(text: &[u32], pat: &[u32], chosen: &[usize], j: usize, idx: usize) -> bool {
    chosen[..j]
        .iter()
        .zip(&pat[..j])
        .all(|(&c, &pv)| (text[c] < text[idx]) == (pv < pat[j]))
}

fn extend(
    text: &[u32],
    signs: Option<&[u32]>,
    pat: RawPattern<'_>,
    chosen: &mut [usize],
    j: usize,
    from: usize,
    upto: usize,
) -> bool {
    let k = pat.len();
    if j == k {
        return true;
    }
    // Leave room for the remaining k - j - 1 positions.
    let last = upto - (k - j - 1);
    for idx in from..last {
        if !pat.admits(j, signs.map(|s| s[idx])) {
            continue;
        }
        if !consistent(text, pat.symbols, chosen, j, idx) {
            continue;
        }
        chosen[j] = idx;
        if extend(text, signs, pat, chosen, j + 1, idx + 1, upto) {
            return true;
        }
    }
    false
}

/// Any occurrence of `pat` in the sequence `text` (with optional signs).
pub(crate) fn occurs(text: &[u32], signs: Option<&[u32]>, pat: RawPattern<'_>) -> bool {
    let k = pat.len();
    if k > text.len() {
        return false;
    }
    if k == 2 {
        return occurs_pair(text, signs, pat, text.len());
    }
    let mut chosen = vec![0usize; k];
    extend(text, signs, pat, &mut chosen, 0, 0, text.len())
}

fn occurs_pair(text: &[u32], signs: Option<&[u32]>, pat: RawPattern<'_>, upto: usize) -> bool {
    let ascending = pat.symbols[0] < pat.symbols[1];
    for j in 1..upto {
        if !pat.admits(1, signs.map(|s| s[j])) {
            continue;
        }
        for i in 0..j {
            if pat.admits(0, signs.map(|s| s[i])) && (text[i] < text[j]) == ascending {
                return true;
            }
        }
    }
    false
}

/// An occurrence of `pat` whose last index is exactly `end`, within the
/// prefix `text[..=end]`. Values in the prefix need only be distinct.
pub(crate) fn occurs_ending_at(
    text: &[u32],
    signs: Option<&[u32]>,
    pat: RawPattern<'_>,
    end: usize,
) -> bool {
    let k = pat.len();
    if k > end + 1 {
        return false;
    }
    if !pat.admits(k - 1, signs.map(|s| s[end])) {
        return false;
    }
    if k == 1 {
        return true;
    }
    if k == 2 {
        let ascending = pat.symbols[0] < pat.symbols[1];
        return (0..end).any(|i| {
            pat.admits(0, signs.map(|s| s[i])) && (text[i] < text[end]) == ascending
        });
    }
    // Match the last position first, then search the prefix for the rest.
    let mut chosen = vec![0usize; k];
    chosen[k - 1] = end;
    extend_with_tail(text, signs, pat, &mut chosen, 0, 0, end)
}

fn extend_with_tail(
    text: &[u32],
    signs: Option<&[u32]>,
    pat: RawPattern<'_>,
    chosen: &mut [usize],
    j: usize,
    from: usize,
    upto: usize,
) -> bool {
    let k = pat.len();
    if j == k - 1 {
        return true;
    }
    let last = upto - (k - 1 - j - 1);
    for idx in from..last {
        if !pat.admits(j, signs.map(|s| s[idx])) {
            continue;
        }
        if !consistent(text, pat.symbols, chosen, j, idx) {
            continue;
        }
        // Relation to the fixed tail element.
        let tail = chosen[k - 1];
        if (text[idx] < text[tail]) != (pat.symbols[j] < pat.symbols[k - 1]) {
            continue;
        }
        chosen[j] = idx;
        if extend_with_tail(text, signs, pat, chosen, j + 1, idx + 1, upto) {
            return true;
        }
    }
    false
}

/// Does `perm` contain the signed pattern `pat`?
///
/// A pattern longer than `perm` simply does not occur. A pattern whose sign
/// bound exceeds the permutation's is rejected.
pub fn contains(perm: &SignedPermutation, pat: &SignedPattern) -> Result<bool> {
    if pat.sign_bound() > perm.sign_bound() {
        return Err(Error::Validation(format!(
            "pattern sign bound {} exceeds permutation sign bound {}",
            pat.sign_bound(),
            perm.sign_bound()
        )));
    }
    Ok(occurs(
        perm.symbols(),
        Some(perm.signs()),
        RawPattern::signed(pat),
    ))
}

/// True iff `perm` contains no pattern of `set`.
pub fn avoids(perm: &SignedPermutation, set: &PatternSet) -> Result<bool> {
    if set.sign_bound() > perm.sign_bound() {
        return Err(Error::Validation(format!(
            "pattern set sign bound {} exceeds permutation sign bound {}",
            set.sign_bound(),
            perm.sign_bound()
        )));
    }
    for p in set {
        if contains(perm, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classical containment of a plain pattern in a plain permutation.
pub fn contains_plain(perm: &[u32], pat: &PlainPattern) -> bool {
    occurs(perm, None, RawPattern::plain(pat))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(pairs: &[(u32, u32)], r: u32) -> SignedPermutation {
        SignedPermutation::from_pairs(pairs, r).unwrap()
    }

    fn pat(pairs: &[(u32, u32)], r: u32) -> SignedPattern {
        SignedPattern::from_pairs(pairs, r).unwrap()
    }

    #[test]
    fn decreasing_with_mixed_signs_avoids_21_sign1() {
        let phi = sp(&[(3, 1), (2, 2), (1, 2)], 2);
        let p = pat(&[(2, 1), (1, 1)], 2);
        assert!(!contains(&phi, &p).unwrap());
        let t = PatternSet::new([p], 2).unwrap();
        assert!(avoids(&phi, &t).unwrap());
    }

    #[test]
    fn pattern_equal_to_permutation() {
        let p = pat(&[(2, 1), (1, 1)], 1);
        assert!(contains(p.as_permutation(), &p).unwrap());
    }

    #[test]
    fn occurrence_at_non_adjacent_indices() {
        let phi = sp(&[(1, 1), (2, 2), (3, 1)], 2);
        assert!(contains(&phi, &pat(&[(1, 1), (2, 1)], 2)).unwrap());
    }

    #[test]
    fn avoids_edge_cases() {
        let phi = sp(&[(1, 1), (2, 1)], 1);
        assert!(avoids(&phi, &PatternSet::empty(1)).unwrap());
        let t = PatternSet::parse("1^1 2^1; 2^1 1^1", 1).unwrap();
        assert!(!avoids(&phi, &t).unwrap());
    }

    #[test]
    fn longer_pattern_never_occurs() {
        let phi = sp(&[(1, 1)], 1);
        assert!(!contains(&phi, &pat(&[(1, 1), (2, 1)], 1)).unwrap());
    }

    #[test]
    fn sign_bound_mismatch_is_an_error() {
        let phi = sp(&[(1, 1), (2, 1)], 1);
        assert!(contains(&phi, &pat(&[(1, 1)], 2)).is_err());
        // A smaller pattern bound is fine.
        let phi = sp(&[(1, 2), (2, 1)], 3);
        assert!(!contains(&phi, &pat(&[(1, 1), (2, 1)], 2)).unwrap());
    }

    #[test]
    fn three_letter_patterns() {
        let phi = sp(&[(2, 1), (4, 2), (1, 1), (3, 1)], 2);
        // 2 . 1 3 is 213 with signs 1,1,1
        assert!(contains(&phi, &pat(&[(2, 1), (1, 1), (3, 1)], 2)).unwrap());
        assert!(!contains(&phi, &pat(&[(1, 1), (2, 1), (3, 1)], 2)).unwrap());
        // 2 4 3 is 132 with signs 1,2,1
        assert!(contains(&phi, &pat(&[(1, 1), (3, 2), (2, 1)], 2)).unwrap());
        assert!(!contains(&phi, &pat(&[(1, 1), (3, 1), (2, 1)], 2)).unwrap());
    }

    #[test]
    fn plain_containment() {
        let p123: PlainPattern = "123".parse().unwrap();
        assert!(contains_plain(&[1, 3, 2, 4], &p123));
        assert!(!contains_plain(&[3, 2, 1, 4], &p123));
    }

    #[test]
    fn ending_at_agrees_with_full_scan() {
        let text = [3u32, 1, 4, 2, 5];
        let signs = [1u32, 2, 1, 1, 2];
        let p = pat(&[(1, 1), (3, 2), (2, 1)], 2);
        let raw = RawPattern::signed(&p);
        for end in 0..text.len() {
            let full = occurs(&text[..=end], Some(&signs[..=end]), raw);
            let any_end = (0..=end).any(|e| occurs_ending_at(&text, Some(&signs), raw, e));
            assert_eq!(full, any_end, "prefix ending at {end}");
        }
    }
}
