//! Maps pattern sets to the counting families that have a formula,
//! recurrence or generating function, up to symmetry.
//!
//! Recognition works on canonical forms, so any symmetric variant of a
//! registered set (reversed, complemented, signs relabeled) is matched.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::enumerate::{count_avoiders_with, SearchConfig};
use crate::error::{Error, Result};
use crate::formulas::{
    case1_count, case1_counts_rec, case3_counts_rec, case4_counts_rec, chain_counts_rec, d_count,
    full_chain_product, full_closure_count, good_set_count, length1_count, multi_line_count,
    unrestricted_count, GoodSetSpec,
};
use crate::pattern::{PatternSet, PlainPattern};
use crate::series::{
    egf_case3, egf_case4, egf_chain, egf_length1, egf_to_counts, egf_unrestricted, PowerSeries,
};
use crate::symmetry::{canonical_form, MAX_ORBIT_SIGN_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Formula,
    Recurrence,
    Series,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Brute, Method::Formula, Method::Recurrence, Method::Series];

    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Formula => "formula",
            Method::Recurrence => "recurrence",
            Method::Series => "series",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown method '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// T = ∅.
    Unrestricted,
    /// A single pattern of length 1.
    SingleLetter,
    /// {(1^b, 2^{a_1}), …, (1^b, 2^{a_l})} with b ≤ a_1 < … < a_l.
    /// `base_in_chain` records whether b is one of the a_j.
    Chain { l: u32, base_in_chain: bool },
    /// Every sign decoration of one plain pattern.
    FullClosure(PlainPattern),
    /// Only homogeneous patterns.
    GoodSet(GoodSetSpec),
    /// The five pairs counted by n!(n+r−1)(r−1)^{n−1}.
    Case1,
    /// The pairs counted by the two-line path sum.
    Case2,
    /// The three pairs whose EGF integrates d_{r−1}(x)².
    Case3,
    /// {(1^1,2^1),(2^1,1^2)} and its images.
    Case4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Unrestricted => f.write_str("unrestricted"),
            Family::SingleLetter => f.write_str("single-letter"),
            Family::Chain { l, base_in_chain } => write!(
                f,
                "chain(l={l}, base {})",
                if *base_in_chain { "in chain" } else { "outside chain" }
            ),
            Family::FullClosure(tau) => write!(f, "full-closure({tau})"),
            Family::GoodSet(spec) => write!(f, "good-set(p={})", spec.components().len()),
            Family::Case1 => f.write_str("case1"),
            Family::Case2 => f.write_str("case2"),
            Family::Case3 => f.write_str("case3"),
            Family::Case4 => f.write_str("case4"),
        }
    }
}

fn set(lit: &str, r: u32) -> PatternSet {
    PatternSet::parse(lit, r).expect("registry literal")
}

/// Representatives of the symmetry-matched families valid at sign bound r.
fn representatives(r: u32) -> Vec<(Family, PatternSet)> {
    let mut out = vec![
        (Family::Unrestricted, PatternSet::empty(r)),
        (Family::SingleLetter, set("1^1", r)),
    ];
    for l in 1..=r {
        let lit: Vec<String> = (1..=l).map(|a| format!("1^1 2^{a}")).collect();
        out.push((Family::Chain { l, base_in_chain: true }, set(&lit.join("; "), r)));
        if l < r {
            let lit: Vec<String> = (2..=l + 1).map(|a| format!("1^1 2^{a}")).collect();
            out.push((Family::Chain { l, base_in_chain: false }, set(&lit.join("; "), r)));
        }
    }
    let case1: &[(&str, u32)] = &[
        ("1^1 2^1; 2^1 1^1", 1),
        ("1^1 2^1; 1^1 2^2", 2),
        ("1^1 2^2; 2^1 1^2", 2),
        ("1^1 2^2; 2^2 1^1", 2),
        ("1^1 2^2; 1^1 2^3", 3),
    ];
    let mut case2: Vec<(String, u32)> = Vec::new();
    for b in 2..=r {
        for a in 2..=b {
            case2.push((format!("1^1 2^1; 1^{a} 2^{b}"), b));
            case2.push((format!("1^1 2^1; 2^{a} 1^{b}"), b));
        }
    }
    case2.push(("1^1 2^2; 1^3 2^4".into(), 4));
    case2.push(("1^1 2^2; 2^3 1^4".into(), 4));
    let case3: &[(&str, u32)] = &[
        ("1^1 2^2; 2^1 1^3", 3),
        ("1^1 2^2; 2^2 1^3", 3),
        ("1^1 2^2; 2^3 1^1", 3),
    ];
    let case4: &[(&str, u32)] = &[("1^1 2^1; 2^1 1^2", 2)];

    let mut push_all = |family: Family, lits: Vec<(String, u32)>| {
        for (lit, min_r) in lits {
            if r >= min_r {
                out.push((family.clone(), set(&lit, r)));
            }
        }
    };
    let owned = |v: &[(&str, u32)]| v.iter().map(|(s, m)| (s.to_string(), *m)).collect();
    push_all(Family::Case1, owned(case1));
    push_all(Family::Case2, case2);
    push_all(Family::Case3, owned(case3));
    push_all(Family::Case4, owned(case4));
    out
}

fn length_profile(set: &PatternSet) -> Vec<usize> {
    set.iter().map(|p| p.len()).collect()
}

fn full_closure_of(set: &PatternSet) -> Option<PlainPattern> {
    let first = set.patterns().first()?;
    let k = first.len();
    if set.iter().any(|p| p.symbols() != first.symbols()) {
        return None;
    }
    // Patterns are deduplicated, so r^k distinct members means every decoration.
    let expected = (set.sign_bound() as u128).checked_pow(k as u32)?;
    (set.len() as u128 == expected).then(|| first.plain())
}

/// Every registered family `set` belongs to, most specific first.
pub fn recognize(set: &PatternSet) -> Result<Vec<Family>> {
    let r = set.sign_bound();
    let mut found = Vec::new();
    if r <= MAX_ORBIT_SIGN_BOUND {
        let canon = canonical_form(set)?;
        let profile = length_profile(set);
        for (family, rep) in representatives(r) {
            if length_profile(&rep) != profile || found.contains(&family) {
                continue;
            }
            if canonical_form(&rep)? == canon {
                found.push(family);
            }
        }
    }
    if let Some(tau) = full_closure_of(set) {
        found.push(Family::FullClosure(tau));
    }
    if !set.is_empty() && set.iter().all(|p| p.is_homogeneous()) {
        found.push(Family::GoodSet(GoodSetSpec::from_pattern_set(set)?));
    }
    Ok(found)
}

fn series_counts(f: PowerSeries, nmax: usize) -> Result<Vec<BigUint>> {
    egf_to_counts(&f, nmax)
}

/// Counts for n = 0..=nmax of `family` at sign bound r by a non-brute
/// method; `Ok(None)` when the family has nothing registered for it.
pub fn family_counts(
    family: &Family,
    method: Method,
    r: u32,
    nmax: usize,
) -> Result<Option<Vec<BigUint>>> {
    let per_n = |f: &dyn Fn(usize) -> Result<BigUint>| -> Result<Option<Vec<BigUint>>> {
        (0..=nmax).map(f).collect::<Result<Vec<_>>>().map(Some)
    };
    let order = nmax.max(1);
    match (family, method) {
        (_, Method::Brute) => Ok(None),

        (Family::Unrestricted, Method::Formula) => per_n(&|n| Ok(unrestricted_count(n, r))),
        (Family::Unrestricted, Method::Recurrence) => {
            Ok(Some(simple_recurrence(nmax, r as u64)))
        }
        (Family::Unrestricted, Method::Series) => {
            series_counts(egf_unrestricted(r, order), nmax).map(Some)
        }

        (Family::SingleLetter, Method::Formula) => per_n(&|n| length1_count(n, r, 1)),
        (Family::SingleLetter, Method::Recurrence) => {
            Ok(Some(simple_recurrence(nmax, r as u64 - 1)))
        }
        (Family::SingleLetter, Method::Series) => {
            series_counts(egf_length1(r, order), nmax).map(Some)
        }

        (Family::Chain { l, .. }, Method::Formula) => match *l {
            1 => per_n(&|n| Ok(d_count(n, r))),
            2 => per_n(&|n| Ok(case1_count(n, r))),
            l if l == r => per_n(&|n| Ok(full_chain_product(n, r))),
            _ => Ok(None),
        },
        (Family::Chain { l, .. }, Method::Recurrence) => chain_counts_rec(nmax, r, *l).map(Some),
        (Family::Chain { l, .. }, Method::Series) => {
            series_counts(egf_chain(r, *l, order)?, nmax).map(Some)
        }

        (Family::FullClosure(tau), Method::Formula) => per_n(&|n| full_closure_count(n, r, tau)),
        (Family::FullClosure(_), _) => Ok(None),

        (Family::GoodSet(spec), Method::Formula) => per_n(&|n| good_set_count(n, spec)),
        (Family::GoodSet(_), _) => Ok(None),

        (Family::Case1, Method::Formula) => per_n(&|n| Ok(case1_count(n, r))),
        (Family::Case1, Method::Recurrence) => Ok(Some(case1_counts_rec(nmax, r))),
        (Family::Case1, Method::Series) => series_counts(egf_chain(r, 2, order)?, nmax).map(Some),

        (Family::Case2, Method::Formula) => per_n(&|n| multi_line_count(n, r, 2)),
        (Family::Case2, Method::Recurrence) => {
            let spec = GoodSetSpec::new(
                vec![
                    (vec!["12".parse()?], 1),
                    (vec!["12".parse()?], 2),
                ],
                r,
            )?;
            per_n(&|n| good_set_count(n, &spec))
        }
        (Family::Case2, Method::Series) => Ok(None),

        (Family::Case3, Method::Recurrence) => case3_counts_rec(nmax, r).map(Some),
        (Family::Case3, Method::Series) => series_counts(egf_case3(r, order)?, nmax).map(Some),
        (Family::Case4, Method::Recurrence) => case4_counts_rec(nmax, r).map(Some),
        (Family::Case4, Method::Series) => series_counts(egf_case4(r, order)?, nmax).map(Some),
        (Family::Case3 | Family::Case4, Method::Formula) => Ok(None),
    }
}

/// p_n = c·n·p_{n−1}, p_0 = 1.
fn simple_recurrence(nmax: usize, c: u64) -> Vec<BigUint> {
    let mut p = vec![BigUint::one()];
    for n in 1..=nmax {
        let next = &p[n - 1] * c * n as u64;
        p.push(next);
    }
    p
}

/// Result of counting a pattern set by one method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodCounts {
    pub method: Method,
    /// Family that supplied the values; `None` for brute force.
    pub family: Option<Family>,
    pub counts: Vec<BigUint>,
}

/// |E_n^r(T)| for n = 0..=nmax by `method`. Non-brute methods use the
/// first recognized family that supports them.
pub fn count_by_method(
    set: &PatternSet,
    r: u32,
    nmax: usize,
    method: Method,
    config: &SearchConfig,
) -> Result<MethodCounts> {
    if method == Method::Brute {
        let counts = (0..=nmax)
            .map(|n| count_avoiders_with(n, r, set, config))
            .collect::<Result<Vec<_>>>()?;
        return Ok(MethodCounts {
            method,
            family: None,
            counts,
        });
    }
    let set = set.with_sign_bound(r)?;
    let families = recognize(&set)?;
    if families.is_empty() {
        return Err(Error::Domain(format!(
            "pattern set {set} does not match any registered family; use --method brute"
        )));
    }
    for family in &families {
        if let Some(counts) = family_counts(family, method, r, nmax)? {
            return Ok(MethodCounts {
                method,
                family: Some(family.clone()),
                counts,
            });
        }
    }
    let names: Vec<String> = families.iter().map(|f| f.to_string()).collect();
    Err(Error::Domain(format!(
        "no {method} evaluator registered for family {}",
        names.join(", ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_symmetric_variants() {
        let t = PatternSet::parse("2^3 1^3; 2^3 1^1", 3).unwrap();
        // reversal of {(1^3,2^3),(1^1,2^3)}; relabel 3 <-> 1 gives row 2's shape.
        let fams = recognize(&t).unwrap();
        assert!(fams.contains(&Family::Chain { l: 2, base_in_chain: true }), "{fams:?}");
        assert!(fams.contains(&Family::Case1));
    }

    #[test]
    fn unregistered_set() {
        let t = PatternSet::parse("1^1 2^2; 1^2 2^3", 5).unwrap();
        assert!(recognize(&t).unwrap().is_empty());
        assert!(count_by_method(&t, 5, 3, Method::Formula, &SearchConfig::default()).is_err());
    }

    #[test]
    fn full_closure_detected() {
        let t = crate::formulas::full_closure_set(&"21".parse().unwrap(), 2).unwrap();
        let fams = recognize(&t).unwrap();
        assert!(matches!(fams.last(), Some(Family::FullClosure(_))) || fams.iter().any(|f| matches!(f, Family::FullClosure(_))));
    }

    #[test]
    fn method_names() {
        assert_eq!("series".parse::<Method>().unwrap(), Method::Series);
        assert!("magic".parse::<Method>().is_err());
    }
}
