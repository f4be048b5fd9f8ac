//! Count-preserving symmetries of E_n^r and orbit canonicalization.
//!
//! The group used here is generated by reversal, complement and every sign
//! relabeling δ ∈ S_r. The sign-complement u ↦ r+1−u is the relabeling
//! (r, r−1, …, 1). Reversal acts on positions, complement on symbols and
//! relabelings on signs, so all three kinds commute and every element has
//! the normal form `reverse^ε · complement^η · relabel(δ)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pattern::{next_permutation, PatternSet, SignedPattern, SignedPermutation};

/// Largest sign bound for which the r! relabelings are enumerated.
pub const MAX_ORBIT_SIGN_BOUND: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryElement {
    reverse: bool,
    complement: bool,
    /// `sign_map[u - 1]` is the image of sign `u`.
    sign_map: Vec<u32>,
}

impl SymmetryElement {
    pub fn new(reverse: bool, complement: bool, sign_map: Vec<u32>) -> Result<Self> {
        let r = sign_map.len();
        let mut seen = vec![false; r];
        for &s in &sign_map {
            if s == 0 || s as usize > r || std::mem::replace(&mut seen[s as usize - 1], true) {
                return Err(Error::Validation(format!(
                    "sign map {sign_map:?} is not a permutation of 1..={r}"
                )));
            }
        }
        if r == 0 {
            return Err(Error::Validation("sign map must be non-empty".into()));
        }
        Ok(Self {
            reverse,
            complement,
            sign_map,
        })
    }

    pub fn identity(sign_bound: u32) -> Self {
        Self {
            reverse: false,
            complement: false,
            sign_map: (1..=sign_bound).collect(),
        }
    }

    pub fn reversal(sign_bound: u32) -> Self {
        Self {
            reverse: true,
            ..Self::identity(sign_bound)
        }
    }

    pub fn complement(sign_bound: u32) -> Self {
        Self {
            complement: true,
            ..Self::identity(sign_bound)
        }
    }

    /// u ↦ r + 1 − u.
    pub fn sign_complement(sign_bound: u32) -> Self {
        Self {
            reverse: false,
            complement: false,
            sign_map: (1..=sign_bound).rev().collect(),
        }
    }

    pub fn relabel(sign_map: Vec<u32>) -> Result<Self> {
        Self::new(false, false, sign_map)
    }

    pub fn is_reverse(&self) -> bool {
        self.reverse
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    pub fn sign_map(&self) -> &[u32] {
        &self.sign_map
    }

    pub fn sign_bound(&self) -> u32 {
        self.sign_map.len() as u32
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.sign_bound())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.sign_map.len() != other.sign_map.len() {
            return Err(Error::Validation(format!(
                "cannot compose symmetries over sign bounds {} and {}",
                self.sign_bound(),
                other.sign_bound()
            )));
        }
        Ok(Self {
            reverse: self.reverse ^ other.reverse,
            complement: self.complement ^ other.complement,
            sign_map: other
                .sign_map
                .iter()
                .map(|&u| self.sign_map[u as usize - 1])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.sign_map.len()];
        for (i, &s) in self.sign_map.iter().enumerate() {
            inv[s as usize - 1] = i as u32 + 1;
        }
        Self {
            reverse: self.reverse,
            complement: self.complement,
            sign_map: inv,
        }
    }

    fn check_arity(&self, sign_bound: u32) -> Result<()> {
        if self.sign_bound() != sign_bound {
            return Err(Error::Validation(format!(
                "sign map has arity {} but the object has sign bound {sign_bound}",
                self.sign_bound()
            )));
        }
        Ok(())
    }

    /// Image of a signed permutation: relabel signs, then complement, then reverse.
    pub fn apply(&self, perm: &SignedPermutation) -> Result<SignedPermutation> {
        self.check_arity(perm.sign_bound())?;
        let n = perm.len() as u32;
        let mut signs: Vec<u32> = perm
            .signs()
            .iter()
            .map(|&u| self.sign_map[u as usize - 1])
            .collect();
        let mut symbols: Vec<u32> = if self.complement {
            perm.symbols().iter().map(|&a| n + 1 - a).collect()
        } else {
            perm.symbols().to_vec()
        };
        if self.reverse {
            symbols.reverse();
            signs.reverse();
        }
        Ok(SignedPermutation::from_parts_unchecked(
            symbols,
            signs,
            perm.sign_bound(),
        ))
    }

    pub fn apply_pattern(&self, pat: &SignedPattern) -> Result<SignedPattern> {
        SignedPattern::try_from(self.apply(pat.as_permutation())?)
    }

    /// Elementwise image of a set, re-sorted into canonical order.
    pub fn apply_set(&self, set: &PatternSet) -> Result<PatternSet> {
        self.check_arity(set.sign_bound())?;
        let pats = set
            .iter()
            .map(|p| self.apply_pattern(p))
            .collect::<Result<Vec<_>>>()?;
        PatternSet::new(pats, set.sign_bound())
    }
}

fn check_orbit_guard(sign_bound: u32) -> Result<()> {
    if sign_bound > MAX_ORBIT_SIGN_BOUND {
        return Err(Error::Capacity {
            what: "sign bound for orbit enumeration",
            value: sign_bound as u128,
            limit: MAX_ORBIT_SIGN_BOUND as u128,
        });
    }
    Ok(())
}

/// Every element of ⟨er, ec, h_δ : δ ∈ S_r⟩, 4·r! of them.
pub fn group_elements(sign_bound: u32) -> Result<Vec<SymmetryElement>> {
    check_orbit_guard(sign_bound)?;
    let mut maps = Vec::new();
    let mut delta: Vec<u32> = (1..=sign_bound).collect();
    loop {
        maps.push(delta.clone());
        if !next_permutation(&mut delta) {
            break;
        }
    }
    let mut out = Vec::with_capacity(4 * maps.len());
    for reverse in [false, true] {
        for complement in [false, true] {
            for m in &maps {
                out.push(SymmetryElement {
                    reverse,
                    complement,
                    sign_map: m.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Closure of `generators` under composition.
pub fn generated_subgroup(generators: &[SymmetryElement]) -> Result<Vec<SymmetryElement>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let mut seen: BTreeSet<SymmetryElement> = BTreeSet::new();
    seen.insert(SymmetryElement::identity(first.sign_bound()));
    let mut frontier: Vec<SymmetryElement> = seen.iter().cloned().collect();
    while let Some(g) = frontier.pop() {
        for h in generators {
            let gh = h.compose(&g)?;
            if seen.insert(gh.clone()) {
                frontier.push(gh);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Multiplicative order of a group element.
pub fn element_order(g: &SymmetryElement) -> usize {
    let id = SymmetryElement::identity(g.sign_bound());
    let mut cur = g.clone();
    let mut k = 1;
    while cur != id {
        cur = g.compose(&cur).expect("same arity");
        k += 1;
    }
    k
}

/// All images of `set` under the full symmetry group.
pub fn symmetry_orbit(set: &PatternSet) -> Result<BTreeSet<PatternSet>> {
    let r = set.sign_bound();
    group_elements(r)?
        .iter()
        .map(|g| g.apply_set(set))
        .collect()
}

/// Lexicographically least member of the orbit.
pub fn canonical_form(set: &PatternSet) -> Result<PatternSet> {
    Ok(symmetry_orbit(set)?
        .into_iter()
        .next()
        .expect("orbit contains the set itself"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(pairs: &[(u32, u32)], r: u32) -> SignedPermutation {
        SignedPermutation::from_pairs(pairs, r).unwrap()
    }

    #[test]
    fn reversal_complement_sign_complement() {
        let phi = sp(&[(1, 1), (3, 2), (2, 1)], 2);
        let er = SymmetryElement::reversal(2).apply(&phi).unwrap();
        assert_eq!(er, sp(&[(2, 1), (3, 2), (1, 1)], 2));
        let ec = SymmetryElement::complement(2).apply(&phi).unwrap();
        assert_eq!(ec, sp(&[(3, 1), (1, 2), (2, 1)], 2));
        // (2^1, 1^2, 3^1) is the image under reversal-then-complement.
        let erec = SymmetryElement::new(true, true, vec![1, 2]).unwrap().apply(&phi).unwrap();
        assert_eq!(erec, sp(&[(2, 1), (1, 2), (3, 1)], 2));
        let es = SymmetryElement::sign_complement(2).apply(&phi).unwrap();
        assert_eq!(es, sp(&[(1, 2), (3, 1), (2, 2)], 2));
    }

    #[test]
    fn arity_mismatch() {
        let phi = sp(&[(1, 1)], 2);
        assert!(SymmetryElement::identity(3).apply(&phi).is_err());
        assert!(SymmetryElement::relabel(vec![1, 1]).is_err());
    }

    #[test]
    fn apply_to_sets() {
        let t = PatternSet::parse("1^1 2^2", 2).unwrap();
        let er = SymmetryElement::reversal(2).apply_set(&t).unwrap();
        assert_eq!(er, PatternSet::parse("2^2 1^1", 2).unwrap());
        assert_eq!(SymmetryElement::identity(2).apply_set(&t).unwrap(), t);

        let r = 5;
        let t = PatternSet::parse("1^1 2^2; 1^2 2^3", r).unwrap();
        let swap12 = SymmetryElement::relabel(vec![2, 1, 3, 4, 5]).unwrap();
        assert_eq!(
            swap12.apply_set(&t).unwrap(),
            PatternSet::parse("1^2 2^1; 1^1 2^3", r).unwrap()
        );
    }

    #[test]
    fn orbits() {
        let t = PatternSet::parse("1^1 2^1", 1).unwrap();
        let orbit = symmetry_orbit(&t).unwrap();
        let expected: BTreeSet<_> = [
            PatternSet::parse("1^1 2^1", 1).unwrap(),
            PatternSet::parse("2^1 1^1", 1).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(orbit, expected);

        let empty = PatternSet::empty(3);
        assert_eq!(symmetry_orbit(&empty).unwrap().len(), 1);

        let t = PatternSet::parse("1^1 2^2", 2).unwrap();
        let orbit = symmetry_orbit(&t).unwrap();
        assert_eq!(orbit.len(), 4);
        // Every orbit member is a single 2-letter pattern with distinct signs.
        for s in &orbit {
            assert_eq!(s.len(), 1);
            let p = &s.patterns()[0];
            assert_ne!(p.signs()[0], p.signs()[1]);
        }
    }

    #[test]
    fn canonical_representative() {
        let t = PatternSet::parse("2^1 1^1", 1).unwrap();
        assert_eq!(canonical_form(&t).unwrap(), PatternSet::parse("1^1 2^1", 1).unwrap());
    }

    #[test]
    fn orbit_guard() {
        let t = PatternSet::empty(9);
        assert!(matches!(symmetry_orbit(&t), Err(Error::Capacity { .. })));
    }

    #[test]
    fn group_sizes() {
        assert_eq!(group_elements(1).unwrap().len(), 4);
        assert_eq!(group_elements(3).unwrap().len(), 24);
    }

    #[test]
    fn reversal_complement_sign_complement_generate_an_elementary_abelian_group() {
        for r in 2..=5 {
            let gens = [
                SymmetryElement::reversal(r),
                SymmetryElement::complement(r),
                SymmetryElement::sign_complement(r),
            ];
            let group = generated_subgroup(&gens).unwrap();
            assert_eq!(group.len(), 8);
            // No element of order 4, so this is (Z/2)^3 rather than a dihedral group.
            assert!(group.iter().all(|g| element_order(g) <= 2));
        }
        let group = generated_subgroup(&[
            SymmetryElement::reversal(1),
            SymmetryElement::complement(1),
            SymmetryElement::sign_complement(1),
        ])
        .unwrap();
        assert_eq!(group.len(), 4);
    }

    #[test]
    fn compose_and_inverse() {
        let g = SymmetryElement::new(true, false, vec![2, 3, 1]).unwrap();
        let id = SymmetryElement::identity(3);
        assert_eq!(g.compose(&g.inverse()).unwrap(), id);
        assert_eq!(element_order(&g), 6);
    }
}
