//! Closed forms and recurrences for |E_n^r(T)| over the pattern-set families
//! that admit one, plus the exact check of the two-sided summation identity
//! obtained by counting the same family in two ways.
//!
//! Every evaluator here has a brute-force counterpart in [`crate::enumerate`];
//! the integration tests pin them against each other.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::{binomial, factorials, for_each_weak_composition, multinomial, pow};
use crate::enumerate::count_plain_avoiders;
use crate::error::{Error, Result};
use crate::pattern::{PatternSet, PlainPattern, SignedPattern};

/// d_r(n) = Σ_j j!·(r−1)^j·C(n,j)²: the count for any single 2-letter signed pattern.
pub fn d_count(n: usize, r: u32) -> BigUint {
    let facts = factorials(n);
    (0..=n)
        .map(|j| &facts[j] * pow(r as u64 - 1, j) * binomial(n, j).pow(2))
        .sum()
}

/// `[d_r(0), …, d_r(nmax)]`.
pub fn d_counts(nmax: usize, r: u32) -> Vec<BigUint> {
    (0..=nmax).map(|n| d_count(n, r)).collect()
}

/// |E_n^r({1^a})| = n!·(r−1)^n, independent of a.
pub fn length1_count(n: usize, r: u32, a: u32) -> Result<BigUint> {
    if a == 0 || a > r {
        return Err(Error::Domain(format!("sign {a} outside 1..={r}")));
    }
    Ok(factorials(n)[n].clone() * pow(r as u64 - 1, n))
}

/// n!·r^n.
pub fn unrestricted_count(n: usize, r: u32) -> BigUint {
    factorials(n)[n].clone() * pow(r as u64, n)
}

/// |E_n^r(T_(u))| for a set T of plain patterns, all carrying sign u:
/// Σ_j C(n,j)²·|S_j(T)|·(n−j)!·(r−1)^{n−j}.
///
/// The entries signed u form a T-avoider of some length j; the other n−j
/// entries are unrestricted over the remaining r−1 signs.
pub fn homogeneous_count(n: usize, r: u32, set: &[PlainPattern], u: u32) -> Result<BigUint> {
    if u == 0 || u > r {
        return Err(Error::Domain(format!("sign {u} outside 1..={r}")));
    }
    let facts = factorials(n);
    let mut total = BigUint::zero();
    for j in 0..=n {
        let avoiders = count_plain_avoiders(j, set)?;
        total += binomial(n, j).pow(2) * avoiders * &facts[n - j] * pow(r as u64 - 1, n - j);
    }
    Ok(total)
}

/// F_τ: every sign decoration of τ over r signs.
pub fn full_closure_set(tau: &PlainPattern, r: u32) -> Result<PatternSet> {
    let k = tau.len();
    let mut pats = Vec::new();
    let mut signs = vec![1u32; k];
    loop {
        pats.push(SignedPattern::new(tau.symbols().to_vec(), signs.clone(), r)?);
        let Some(i) = signs.iter().rposition(|&s| s < r) else {
            break;
        };
        signs[i] += 1;
        signs[i + 1..].fill(1);
    }
    PatternSet::new(pats, r)
}

/// |E_n^r(F_τ)| = r^n·|S_n(τ)|.
pub fn full_closure_count(n: usize, r: u32, tau: &PlainPattern) -> Result<BigUint> {
    Ok(pow(r as u64, n) * count_plain_avoiders(n, std::slice::from_ref(tau))?)
}

fn check_chain(r: u32, l: u32) -> Result<()> {
    if l == 0 || l > r {
        return Err(Error::Domain(format!("chain length {l} outside 1..={r}")));
    }
    Ok(())
}

/// p_0..p_nmax for p_n = (r−1)·n·p_{n−1} + Σ_{i=1}^n C(n−1,i−1)·(n−i)!·(r−l)^{n−i}·p_{i−1}.
pub fn chain_counts_rec(nmax: usize, r: u32, l: u32) -> Result<Vec<BigUint>> {
    check_chain(r, l)?;
    let facts = factorials(nmax);
    let mut p: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=nmax {
        let mut next = &p[n - 1] * (r as u64 - 1) * n as u64;
        for i in 1..=n {
            next += binomial(n - 1, i - 1) * &facts[n - i] * pow((r - l) as u64, n - i) * &p[i - 1];
        }
        p.push(next);
    }
    Ok(p)
}

/// |E_n^r(T_{b;a_1..a_l})| for b ≤ a_1 < … < a_l, via the first-entry recurrence.
pub fn chain_count_rec(n: usize, r: u32, l: u32) -> Result<BigUint> {
    Ok(chain_counts_rec(n, r, l)?.pop().expect("nonempty"))
}

/// Π_{j=0}^n (j(r−1)+1): the chain count when l = r.
pub fn full_chain_product(n: usize, r: u32) -> BigUint {
    (0..=n as u64).map(|j| BigUint::from(j * (r as u64 - 1) + 1)).product()
}

/// A good set: a union of homogeneous pieces `(T_i)_(u_i)` with distinct signs u_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSetSpec {
    components: Vec<(Vec<PlainPattern>, u32)>,
    sign_bound: u32,
}

impl GoodSetSpec {
    pub fn new(components: Vec<(Vec<PlainPattern>, u32)>, sign_bound: u32) -> Result<Self> {
        if components.len() > sign_bound as usize {
            return Err(Error::Domain(format!(
                "{} components but only {sign_bound} signs",
                components.len()
            )));
        }
        let mut signs: Vec<u32> = components.iter().map(|c| c.1).collect();
        if let Some(&u) = signs.iter().find(|&&u| u == 0 || u > sign_bound) {
            return Err(Error::Domain(format!("sign {u} outside 1..={sign_bound}")));
        }
        signs.sort_unstable();
        if signs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("component signs must be pairwise distinct".into()));
        }
        Ok(Self {
            components,
            sign_bound,
        })
    }

    /// Splits an all-homogeneous pattern set into its sign classes.
    pub fn from_pattern_set(set: &PatternSet) -> Result<Self> {
        let mut by_sign: std::collections::BTreeMap<u32, Vec<PlainPattern>> = Default::default();
        for p in set {
            if !p.is_homogeneous() {
                return Err(Error::Domain(format!("pattern {p} is not homogeneous")));
            }
            by_sign.entry(p.signs()[0]).or_default().push(p.plain());
        }
        Self::new(
            by_sign.into_iter().map(|(u, t)| (t, u)).collect(),
            set.sign_bound(),
        )
    }

    pub fn components(&self) -> &[(Vec<PlainPattern>, u32)] {
        &self.components
    }

    pub fn sign_bound(&self) -> u32 {
        self.sign_bound
    }

    pub fn to_pattern_set(&self) -> Result<PatternSet> {
        let pats = self
            .components
            .iter()
            .flat_map(|(t, u)| t.iter().map(move |p| SignedPattern::homogeneous(p, *u, self.sign_bound)))
            .collect::<Result<Vec<_>>>()?;
        PatternSet::new(pats, self.sign_bound)
    }
}

/// |E_n^r(T)| for a good set, peeling one homogeneous component at a time:
/// f(m, r', [T_1, …]) = Σ_j C(m,j)²·|S_j(T_1)|·f(m−j, r'−1, [T_2, …]),
/// f(m, r', []) = m!·r'^m.
pub fn good_set_count(n: usize, spec: &GoodSetSpec) -> Result<BigUint> {
    let p = spec.components.len();
    let facts = factorials(n);
    // avoiders[c][j] = |S_j(T_c)|
    let avoiders = spec
        .components
        .iter()
        .map(|(t, _)| (0..=n).map(|j| count_plain_avoiders(j, t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    // Bottom-up over components: level[m] = f(m, r − c, components[c..]).
    let free_signs = (spec.sign_bound as usize - p) as u64;
    let mut level: Vec<BigUint> = (0..=n).map(|m| &facts[m] * pow(free_signs, m)).collect();
    for c in (0..p).rev() {
        level = (0..=n)
            .map(|m| {
                (0..=m)
                    .map(|j| binomial(m, j).pow(2) * &avoiders[c][j] * &level[m - j])
                    .sum()
            })
            .collect();
    }
    Ok(level.swap_remove(n))
}

/// Σ over i_1+…+i_l ≤ n of multinomial(n; i_1..i_l, rest)²·rest!·(r−l)^rest:
/// the count for l homogeneous 2-letter patterns carrying l distinct signs.
pub fn multi_line_count(n: usize, r: u32, l: u32) -> Result<BigUint> {
    if l > r {
        return Err(Error::Domain(format!("{l} lines but only {r} signs")));
    }
    let facts = factorials(n);
    let mut total = BigUint::zero();
    for_each_weak_composition(n, l as usize, |parts| {
        let rest = n - parts.iter().sum::<usize>();
        total += multinomial(n, parts).pow(2) * &facts[rest] * pow((r - l) as u64, rest);
    });
    Ok(total)
}

/// n!·(n+r−1)·(r−1)^{n−1}, with value 1 at n = 0.
pub fn case1_count(n: usize, r: u32) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    factorials(n)[n].clone() * (n as u64 + r as u64 - 1) * pow(r as u64 - 1, n - 1)
}

/// p_n = n(r−1)p_{n−1} + n!(r−1)^{n−1}, p_0 = 1.
pub fn case1_counts_rec(nmax: usize, r: u32) -> Vec<BigUint> {
    let facts = factorials(nmax);
    let mut p = vec![BigUint::one()];
    for n in 1..=nmax {
        let next = &p[n - 1] * n as u64 * (r as u64 - 1) + &facts[n] * pow(r as u64 - 1, n - 1);
        p.push(next);
    }
    p
}

/// p_n = n(r−1)p_{n−1} + Σ_{i=1}^n C(n−1,i−1)·d_{r−1}(n−i)·d_{r−1}(i−1).
pub fn case3_counts_rec(nmax: usize, r: u32) -> Result<Vec<BigUint>> {
    if r < 3 {
        return Err(Error::Domain(format!("case-3 family needs r >= 3, got {r}")));
    }
    let d = d_counts(nmax, r - 1);
    let mut p = vec![BigUint::one()];
    for n in 1..=nmax {
        let mut next = &p[n - 1] * n as u64 * (r as u64 - 1);
        for i in 1..=n {
            next += binomial(n - 1, i - 1) * &d[n - i] * &d[i - 1];
        }
        p.push(next);
    }
    Ok(p)
}

pub fn case3_count_rec(n: usize, r: u32) -> Result<BigUint> {
    Ok(case3_counts_rec(n, r)?.pop().expect("nonempty"))
}

/// p_n = n(r−1)p_{n−1} + Σ_{i=1}^n C(n−1,i−1)·(n−i)!·(r−1)^{n−i}·d_{r−1}(i−1).
pub fn case4_counts_rec(nmax: usize, r: u32) -> Result<Vec<BigUint>> {
    if r < 2 {
        return Err(Error::Domain(format!("case-4 family needs r >= 2, got {r}")));
    }
    let d = d_counts(nmax, r - 1);
    let facts = factorials(nmax);
    let mut p = vec![BigUint::one()];
    for n in 1..=nmax {
        let mut next = &p[n - 1] * n as u64 * (r as u64 - 1);
        for i in 1..=n {
            next += binomial(n - 1, i - 1) * &facts[n - i] * pow(r as u64 - 1, n - i) * &d[i - 1];
        }
        p.push(next);
    }
    Ok(p)
}

pub fn case4_count_rec(n: usize, r: u32) -> Result<BigUint> {
    Ok(case4_counts_rec(n, r)?.pop().expect("nonempty"))
}

/// Both sides of the identity, divided by n!².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub n: usize,
    pub r: u32,
    pub l: u32,
    /// Σ (r−l)^rest / (Π i_j!² · rest!)
    pub lhs: BigRational,
    /// Σ (r−2l)^rest · Π d_2(i_j) / (Π i_j!² · rest!)
    pub rhs: BigRational,
    pub equal: bool,
}

/// Evaluates, for r ≥ 2l, the two sums over i_1+…+i_l ≤ n that count
/// l homogeneous pairs and l pairs with distinct signs respectively.
pub fn identity_check(n: usize, r: u32, l: u32) -> Result<IdentityCheck> {
    if l == 0 {
        return Err(Error::Domain("l must be at least 1".into()));
    }
    if r < 2 * l {
        return Err(Error::Domain(format!("identity needs r >= 2l, got r={r}, l={l}")));
    }
    let facts = factorials(n);
    let d2 = d_counts(n, 2);
    let int = |v: BigUint| BigRational::from_integer(BigInt::from(v));
    let mut lhs = BigRational::zero();
    let mut rhs = BigRational::zero();
    for_each_weak_composition(n, l as usize, |parts| {
        let rest = n - parts.iter().sum::<usize>();
        let denom: BigUint = parts.iter().map(|&i| facts[i].pow(2)).product::<BigUint>() * &facts[rest];
        let denom = int(denom);
        lhs += int(pow((r - l) as u64, rest)) / &denom;
        let d_prod: BigUint = parts.iter().map(|&i| d2[i].clone()).product();
        rhs += int(pow((r - 2 * l) as u64, rest) * d_prod) / &denom;
    });
    let equal = lhs == rhs;
    Ok(IdentityCheck {
        n,
        r,
        l,
        lhs,
        rhs,
        equal,
    })
}
