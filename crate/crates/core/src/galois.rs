//! Modular arithmetic and cyclotomic cosets.
//!
//! The extension field `F_{q^m}` is never materialised: a power `α^i` of the
//! fixed generator is represented by its exponent `i mod μ`, `μ = q^m - 1`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest code length accepted by [`CodeFieldParams::new`].
pub const DEFAULT_MAX_LENGTH: u64 = 1 << 24;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n` in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `(p, k)` with `q = p^k` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    Some((p, k))
}

/// Smallest `m >= 1` with `q^m ≡ 1 (mod n)`.
pub fn multiplicative_order(q: u64, n: u64) -> Result<u64> {
    if q < 2 || n < 2 {
        return Err(Error::params(format!(
            "multiplicative order needs q >= 2 and n >= 2 (got q = {q}, n = {n})"
        )));
    }
    if gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    let q = q % n;
    let mut acc = q;
    let mut m = 1;
    while acc != 1 {
        acc = mul_mod(acc, q, n);
        m += 1;
    }
    Ok(m)
}

/// `q`, `n`, `m = ord_n(q)` and `μ = q^m - 1` for a code of length `n` over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeFieldParams {
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub mu: u64,
}

impl CodeFieldParams {
    pub fn new(q: u64, n: u64) -> Result<Self> {
        Self::with_max_length(q, n, DEFAULT_MAX_LENGTH)
    }

    pub fn with_max_length(q: u64, n: u64, max_length: u64) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        if n > max_length {
            return Err(Error::params(format!(
                "length {n} exceeds the configured cap {max_length}"
            )));
        }
        let m = multiplicative_order(q, n)?;
        let mu = u32::try_from(m)
            .ok()
            .and_then(|e| q.checked_pow(e))
            .map(|p| p - 1)
            .ok_or_else(|| Error::params(format!("q^m overflows for q = {q}, m = {m}")))?;
        let low = q.pow((m / 2) as u32);
        if !(low < n && n <= mu) {
            return Err(Error::params(format!(
                "length must satisfy q^floor(m/2) = {low} < n = {n} <= q^m - 1 = {mu}"
            )));
        }
        Ok(CodeFieldParams { q, n, m, mu })
    }

    /// Like [`CodeFieldParams::new`] but also checks `m` against a caller-supplied value.
    pub fn with_order(q: u64, m: u64, n: u64) -> Result<Self> {
        let p = Self::new(q, n)?;
        if p.m != m {
            return Err(Error::params(format!(
                "ord_{n}({q}) = {}, not the requested m = {m}",
                p.m
            )));
        }
        Ok(p)
    }

    /// `q^⌈m/2⌉`.
    pub fn q_half_up(&self) -> u64 {
        self.q.pow(self.m.div_ceil(2) as u32)
    }

    /// `⌊n q^⌈m/2⌉ / (q^m - 1)⌋`, the upper end of the equal-size coset range.
    pub fn coset_size_limit(&self) -> u64 {
        ((self.n as u128 * self.q_half_up() as u128) / self.mu as u128) as u64
    }
}

/// The orbit `C_x = { x q^i mod n }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicCoset {
    pub leader: u64,
    pub elements: Vec<u64>,
    pub modulus: u64,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

pub fn cyclotomic_coset(x: u64, n: u64, q: u64) -> Result<CyclotomicCoset> {
    if n == 0 {
        return Err(Error::params("modulus must be positive"));
    }
    if gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    let start = x % n;
    let mut elements = vec![start];
    let mut y = mul_mod(start, q, n);
    while y != start {
        elements.push(y);
        y = mul_mod(y, q, n);
    }
    elements.sort_unstable();
    Ok(CyclotomicCoset {
        leader: elements[0],
        elements,
        modulus: n,
    })
}

/// All cosets modulo `n`, sorted by leader.
pub fn coset_leaders(n: u64, q: u64) -> Result<Vec<CyclotomicCoset>> {
    if n == 0 {
        return Err(Error::params("modulus must be positive"));
    }
    if gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    let size = usize::try_from(n).map_err(|_| Error::params("modulus too large"))?;
    let mut seen = vec![false; size];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x as usize] {
            continue;
        }
        let mut elements = Vec::new();
        let mut y = x;
        loop {
            seen[y as usize] = true;
            elements.push(y);
            y = mul_mod(y, q, n);
            if y == x {
                break;
            }
        }
        elements.sort_unstable();
        out.push(CyclotomicCoset {
            leader: x,
            elements,
            modulus: n,
        });
    }
    Ok(out)
}

/// True iff `1 <= x <= n q^⌈m/2⌉ / (q^m - 1)`, the range on which every coset
/// has exactly `m` elements.
pub fn coset_size_bound_holds(x: u64, n: u64, q: u64, m: u64) -> bool {
    if x == 0 {
        return false;
    }
    let (Some(half), Some(full)) = (
        u32::try_from(m.div_ceil(2))
            .ok()
            .and_then(|e| (q as u128).checked_pow(e)),
        u32::try_from(m).ok().and_then(|e| (q as u128).checked_pow(e)),
    ) else {
        return false;
    };
    (x as u128) * (full - 1) <= (n as u128) * half
}

/// Primes `n` in `(q^⌊m/2⌋, q^m - 1]` with `ord_n(q) = m`.
///
/// Any such `n` divides `q^m - 1`, so the candidates are its prime factors.
pub fn find_prime_lengths(q: u64, m: u64) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::params("m must be at least 2"));
    }
    let mu = u32::try_from(m)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .map(|p| p - 1)
        .ok_or_else(|| Error::params(format!("q^m overflows for q = {q}, m = {m}")))?;
    let low = q.pow((m / 2) as u32);
    let mut out: Vec<u64> = prime_factors(mu)
        .into_iter()
        .filter(|&p| p > low && gcd(p, q) == 1)
        .filter(|&p| multiplicative_order(q, p).map(|o| o == m).unwrap_or(false))
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(q: u64, n: u64) -> u64 {
        (1..=n).find(|&j| pow_mod(q, j, n) == 1).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 31).unwrap(), 5);
        assert_eq!(multiplicative_order(2, 3).unwrap(), 2);
        assert_eq!(multiplicative_order(2, 23).unwrap(), brute_order(2, 23));
        assert_eq!(brute_order(2, 23), 11);
        assert!(matches!(multiplicative_order(2, 6), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn order_is_minimal() {
        for q in 2..8u64 {
            for n in 2..300u64 {
                if gcd(q, n) != 1 {
                    continue;
                }
                let m = multiplicative_order(q, n).unwrap();
                assert_eq!(pow_mod(q, m, n), 1);
                assert!((1..m).all(|j| pow_mod(q, j, n) != 1));
            }
        }
    }

    #[test]
    fn cosets_mod_31() {
        assert_eq!(cyclotomic_coset(1, 31, 2).unwrap().elements, vec![1, 2, 4, 8, 16]);
        let c3 = cyclotomic_coset(3, 31, 2).unwrap();
        assert_eq!(c3.elements, vec![3, 6, 12, 17, 24]);
        assert_eq!(cyclotomic_coset(0, 31, 2).unwrap().elements, vec![0]);
        // any member normalises to the same leader
        assert_eq!(cyclotomic_coset(24, 31, 2).unwrap(), c3);
    }

    #[test]
    fn leaders() {
        let l: Vec<u64> = coset_leaders(31, 2).unwrap().iter().map(|c| c.leader).collect();
        assert_eq!(l, vec![0, 1, 3, 5, 7, 11, 15]);
        let c = coset_leaders(3, 2).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].elements, vec![1, 2]);
        let c = coset_leaders(5, 4).unwrap();
        assert_eq!(c[1].elements, vec![1, 4]);
        assert_eq!(c[2].elements, vec![2, 3]);
    }

    #[test]
    fn cosets_partition_and_are_closed() {
        for q in [2u64, 3, 4, 5, 7] {
            for n in 1..400u64 {
                if gcd(q, n) != 1 {
                    continue;
                }
                let cosets = coset_leaders(n, q).unwrap();
                let mut all: Vec<u64> = cosets.iter().flat_map(|c| c.elements.clone()).collect();
                all.sort_unstable();
                assert_eq!(all, (0..n).collect::<Vec<_>>());
                for c in &cosets {
                    assert_eq!(c.leader, c.elements[0]);
                    let mut scaled: Vec<u64> = c.elements.iter().map(|&e| e * q % n).collect();
                    scaled.sort_unstable();
                    assert_eq!(scaled, c.elements);
                }
            }
        }
    }

    #[test]
    fn size_bound() {
        assert!(coset_size_bound_holds(1, 31, 2, 5));
        assert_eq!(cyclotomic_coset(1, 31, 2).unwrap().len(), 5);
        assert!(coset_size_bound_holds(8, 31, 2, 5));
        assert!(!coset_size_bound_holds(9, 31, 2, 5));
        assert!(!coset_size_bound_holds(30, 31, 2, 5));
        assert!(!coset_size_bound_holds(0, 31, 2, 5));
    }

    // Equal coset sizes on the guarded range, exhaustively for n <= 10^4.
    #[test]
    fn guarded_cosets_have_size_m() {
        for q in [2u64, 3, 4, 5] {
            for n in 2..=10_000u64 {
                let Ok(p) = CodeFieldParams::new(q, n) else {
                    continue;
                };
                for x in 1..=p.coset_size_limit() {
                    assert!(coset_size_bound_holds(x, n, q, p.m));
                    let c = cyclotomic_coset(x, n, q).unwrap();
                    assert_eq!(c.len() as u64, p.m, "q={q} n={n} x={x}");
                }
                assert!(!coset_size_bound_holds(p.coset_size_limit() + 1, n, q, p.m));
            }
        }
    }

    #[test]
    fn prime_lengths() {
        assert!(find_prime_lengths(2, 5).unwrap().contains(&31));
        assert!(find_prime_lengths(2, 7).unwrap().contains(&127));
        assert!(find_prime_lengths(2, 4).unwrap().contains(&5));
        assert!(find_prime_lengths(2, 6).unwrap().is_empty());
        // compare with a direct scan over the whole interval
        for q in [2u64, 3] {
            for m in 2..=9u64 {
                let mu = q.pow(m as u32) - 1;
                let low = q.pow((m / 2) as u32);
                let scan: Vec<u64> = (low + 1..=mu)
                    .filter(|&n| is_prime(n) && gcd(n, q) == 1)
                    .filter(|&n| multiplicative_order(q, n).unwrap() == m)
                    .collect();
                assert_eq!(find_prime_lengths(q, m).unwrap(), scan, "q={q} m={m}");
            }
        }
    }

    #[test]
    fn params_validation() {
        let p = CodeFieldParams::new(2, 31).unwrap();
        assert_eq!((p.m, p.mu), (5, 31));
        assert!(matches!(CodeFieldParams::new(6, 31), Err(Error::NotPrimePower(6))));
        assert!(matches!(CodeFieldParams::new(2, 30), Err(Error::NotCoprime { .. })));
        // ord_7(2) = 3, q^1 = 2 < 7 <= 7
        assert!(CodeFieldParams::new(2, 7).is_ok());
        // n = 3, q = 4: ord = 1, μ = 3 but q^0 = 1 < 3 <= 3
        assert!(CodeFieldParams::new(4, 3).is_ok());
        assert!(CodeFieldParams::with_order(2, 4, 31).is_err());
        assert!(CodeFieldParams::with_max_length(2, 31, 16).is_err());
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
    }
}
