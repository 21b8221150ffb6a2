//! Segmented sieve of Eratosthenes over odd numbers.

const SEGMENT_LEN: u64 = 1 << 18;

/// Primes `<= n` by a plain sieve; used for base primes and small ranges.
pub fn small_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Streams the primes `<= limit` in increasing order, one segment at a time.
#[derive(Debug)]
pub struct Primes {
    limit: u64,
    base: Vec<u64>,
    // odd numbers lo, lo + 2, .. covered by the current segment
    lo: u64,
    composite: Vec<bool>,
    pos: usize,
    emitted_two: bool,
}

impl Primes {
    pub fn up_to(limit: u64) -> Self {
        let base = small_primes(isqrt(limit)).into_iter().skip(1).collect();
        let mut s = Self {
            limit,
            base,
            lo: 1,
            composite: Vec::new(),
            pos: 0,
            emitted_two: false,
        };
        s.fill_segment();
        s
    }

    fn fill_segment(&mut self) {
        let lo = self.lo;
        if lo > self.limit {
            self.composite.clear();
            self.pos = 0;
            return;
        }
        let hi = (lo + 2 * SEGMENT_LEN).min(self.limit + 1); // exclusive
        let len = (hi - lo).div_ceil(2) as usize;
        self.composite.clear();
        self.composite.resize(len, false);
        for &p in &self.base {
            if p * p >= hi {
                break;
            }
            // first odd multiple of p that is >= max(p*p, lo)
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut j = ((start - lo) / 2) as usize;
            while j < len {
                self.composite[j] = true;
                j += p as usize;
            }
        }
        if lo == 1 {
            self.composite[0] = true;
        }
        self.pos = 0;
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.emitted_two {
            self.emitted_two = true;
            if self.limit >= 2 {
                return Some(2);
            }
        }
        loop {
            if self.composite.is_empty() {
                return None;
            }
            while self.pos < self.composite.len() {
                let i = self.pos;
                self.pos += 1;
                if !self.composite[i] {
                    return Some(self.lo + 2 * i as u64);
                }
            }
            self.lo += 2 * SEGMENT_LEN;
            self.fill_segment();
        }
    }
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, `(p, e)` with `p` increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segmented_matches_plain() {
        for limit in [0, 1, 2, 3, 10, 97, 100, 1000, 1 << 19, (1 << 19) + 1, 2_000_003] {
            let seg: Vec<u64> = Primes::up_to(limit).collect();
            assert_eq!(seg, small_primes(limit), "limit = {limit}");
        }
    }

    #[test]
    fn prime_counts() {
        assert_eq!(Primes::up_to(1_000_000).count(), 78_498);
        assert_eq!(Primes::up_to(10_000_000).count(), 664_579);
    }

    #[test]
    fn primality() {
        let ps = small_primes(10_000);
        for n in 0..10_000 {
            assert_eq!(is_prime(n), ps.binary_search(&n).is_ok(), "n = {n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(isqrt(99), 9);
        assert_eq!(isqrt(100), 10);
    }
}
