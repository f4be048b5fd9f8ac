//! Big-integer combinatorial helpers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `[0!, 1!, …, n!]`.
pub fn factorials(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigUint::one());
    for k in 1..=n {
        let next = &out[k - 1] * k as u64;
        out.push(next);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// n! / (k_1! ⋯ k_m! (n − Σk)!); zero when Σk > n.
pub fn multinomial(n: usize, parts: &[usize]) -> BigUint {
    let mut rest = n;
    let mut acc = BigUint::one();
    for &k in parts {
        if k > rest {
            return BigUint::zero();
        }
        acc *= binomial(rest, k);
        rest -= k;
    }
    acc
}

/// `base^exp` with the convention 0^0 = 1.
pub fn pow(base: u64, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// Calls `f` on every composition `(i_1, …, i_parts)` with Σ i_j ≤ n.
pub fn for_each_weak_composition(n: usize, parts: usize, mut f: impl FnMut(&[usize])) {
    fn rec(budget: usize, slot: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if slot == cur.len() {
            f(cur);
            return;
        }
        for i in 0..=budget {
            cur[slot] = i;
            rec(budget - i, slot + 1, cur, f);
        }
    }
    let mut cur = vec![0; parts];
    rec(n, 0, &mut cur, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorials(4)[4], BigUint::from(24u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(multinomial(5, &[2, 1]), BigUint::from(30u32));
        assert_eq!(multinomial(2, &[2, 1]), BigUint::zero());
        assert_eq!(pow(0, 0), BigUint::one());
        assert_eq!(pow(0, 2), BigUint::zero());
    }

    #[test]
    fn compositions() {
        let mut count = 0;
        for_each_weak_composition(3, 2, |c| {
            assert!(c.iter().sum::<usize>() <= 3);
            count += 1;
        });
        // C(3 + 2, 2)
        assert_eq!(count, 10);
        let mut seen = Vec::new();
        for_each_weak_composition(2, 0, |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![Vec::<usize>::new()]);
    }
}
