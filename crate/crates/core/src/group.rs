//! Finite abelian groups given by invariant factors, and the sets of
//! minimal zero-sum multisets over them.
//!
//! Elements are exponent vectors `(e_1, .., e_r)` with `0 <= e_i < n_i`.
//! The canonical element order is lexicographic on exponent vectors, which
//! coincides with the mixed-radix index used internally (first component
//! most significant). Class index 0 is always the identity.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// Largest group order accepted by the exhaustive zero-sum searches.
pub const MAX_ENUMERATION_ORDER: u64 = 64;
/// Largest pattern length accepted by [`enumerate_minimal_zero_sums`].
pub const MAX_PATTERN_LENGTH: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
    order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    exponents: Vec<u64>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Builds a group from its invariant factors `n_1 | n_2 | .. | n_r`.
pub fn make_group(invariant_factors: &[u64]) -> Result<FiniteAbelianGroup> {
    FiniteAbelianGroup::new(invariant_factors)
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: &[u64]) -> Result<Self> {
        let chain_ok =
            invariant_factors.iter().all(|&n| n >= 2) && invariant_factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain_ok {
            return Err(Error::NotDivisibilityChain {
                given: invariant_factors.to_vec(),
                hint: normalization_hint(invariant_factors),
            });
        }
        let order = invariant_factors
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| out_of_range("group order", "overflow", "fits in 64 bits"))?;
        Ok(Self {
            invariant_factors: invariant_factors.to_vec(),
            order,
        })
    }

    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
            order: 1,
        }
    }

    /// The cyclic group of order `n`; `n = 1` yields the trivial group.
    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(out_of_range("cyclic order", 0, ">= 1")),
            1 => Ok(Self::trivial()),
            n => Self::new(&[n]),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exponents: vec![0; self.rank()],
        }
    }

    /// Element with the given canonical index.
    pub fn element(&self, index: u64) -> GroupElement {
        assert!(index < self.order, "element index out of range");
        let mut exponents = vec![0; self.rank()];
        let mut rest = index;
        for (slot, &n) in exponents.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = rest % n;
            rest /= n;
        }
        GroupElement { exponents }
    }

    pub fn index_of(&self, g: &GroupElement) -> u64 {
        g.exponents
            .iter()
            .zip(&self.invariant_factors)
            .fold(0, |acc, (&e, &n)| acc * n + e)
    }

    /// Reduces an arbitrary integer vector into a group element.
    pub fn reduce(&self, exponents: &[i64]) -> Result<GroupElement> {
        if exponents.len() != self.rank() {
            return Err(Error::LengthMismatch {
                what: "exponent vector",
                expected: self.rank(),
                got: exponents.len(),
            });
        }
        let exponents = exponents
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&e, &n)| e.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { exponents })
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let exponents = a
            .exponents
            .iter()
            .zip(&b.exponents)
            .zip(&self.invariant_factors)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        GroupElement { exponents }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let exponents = a
            .exponents
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        GroupElement { exponents }
    }

    pub fn scale(&self, a: &GroupElement, k: u64) -> GroupElement {
        let exponents = a
            .exponents
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &n)| ((x as u128 * k as u128) % n as u128) as u64)
            .collect();
        GroupElement { exponents }
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.order > MAX_ENUMERATION_ORDER {
            return Err(Error::GroupTooLarge {
                order: self.order,
                cap: MAX_ENUMERATION_ORDER,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "C1");
        }
        for (i, n) in self.invariant_factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "C{n}")?;
        }
        Ok(())
    }
}

/// Suggests the invariant-factor form of the group the caller probably meant.
fn normalization_hint(factors: &[u64]) -> String {
    if factors.contains(&0) {
        return "factors must be positive".to_string();
    }
    // prime -> exponents of that prime across all factors
    let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for &n in factors.iter().filter(|&&n| n > 1) {
        for (p, e) in factorize(n) {
            match by_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, es)) => es.push(e),
                None => by_prime.push((p, vec![e])),
            }
        }
    }
    let rank = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
    let mut normalized = vec![1u64; rank];
    for (p, mut es) in by_prime {
        es.sort_unstable();
        let offset = rank - es.len();
        for (slot, e) in normalized[offset..].iter_mut().zip(es) {
            *slot *= p.pow(e);
        }
    }
    if normalized.is_empty() {
        "use an empty list for the trivial group".to_string()
    } else {
        format!("the normalized invariant factors are {normalized:?}")
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A minimal multiset of group elements summing to the identity.
///
/// Stored as `(element, count)` pairs sorted by element, counts nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZeroSumPattern {
    counts: Vec<(GroupElement, u32)>,
    total: u32,
}

impl ZeroSumPattern {
    /// Builds a pattern from arbitrary `(element, count)` pairs, merging
    /// duplicates and dropping zero counts. Does not check the invariants;
    /// see [`ZeroSumPattern::is_minimal_zero_sum`].
    pub fn from_counts(pairs: impl IntoIterator<Item = (GroupElement, u32)>) -> Self {
        let mut counts: Vec<(GroupElement, u32)> = Vec::new();
        for (g, c) in pairs {
            if c == 0 {
                continue;
            }
            match counts.iter_mut().find(|(h, _)| *h == g) {
                Some((_, k)) => *k += c,
                None => counts.push((g, c)),
            }
        }
        counts.sort();
        let total = counts.iter().map(|(_, c)| c).sum();
        Self { counts, total }
    }

    pub fn counts(&self) -> &[(GroupElement, u32)] {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn count_of(&self, g: &GroupElement) -> u32 {
        self.counts.iter().find(|(h, _)| h == g).map_or(0, |&(_, c)| c)
    }

    /// The tuple `(k_1, .., k_h)` indexed by canonical class order.
    pub fn multiplicities(&self, group: &FiniteAbelianGroup) -> Vec<u32> {
        let mut k = vec![0; group.order() as usize];
        for (g, c) in &self.counts {
            k[group.index_of(g) as usize] = *c;
        }
        k
    }

    pub fn sum(&self, group: &FiniteAbelianGroup) -> GroupElement {
        self.counts.iter().fold(group.identity(), |acc, (g, c)| {
            group.add(&acc, &group.scale(g, *c as u64))
        })
    }

    /// Checks both invariants: the pattern is nonempty, sums to the
    /// identity, and no proper nonempty sub-multiset does. Minimality is
    /// decided by a DP over the set of achievable sub-multiset sums.
    pub fn is_minimal_zero_sum(&self, group: &FiniteAbelianGroup) -> bool {
        if self.total == 0 || !self.sum(group).is_identity() {
            return false;
        }
        // Drop one copy of some element; the remainder must be zero-sum free.
        let elements: Vec<u64> = self
            .counts
            .iter()
            .flat_map(|(g, c)| std::iter::repeat_n(group.index_of(g), *c as usize))
            .skip(1)
            .collect();
        let order = group.order() as usize;
        let mut reachable = vec![false; order];
        for &g in &elements {
            let mut next = reachable.clone();
            next[g as usize] = true;
            for (s, _) in reachable.iter().enumerate().filter(|(_, &r)| r) {
                let t = group.index_of(&group.add(&group.element(s as u64), &group.element(g)));
                next[t as usize] = true;
            }
            reachable = next;
        }
        !reachable[0]
    }
}

impl fmt::Display for ZeroSumPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (g, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}x{c}")?;
        }
        write!(f, "}}")
    }
}

/// Index-level view of a group used by the searches: addition table and
/// subset-sum masks as `u64` bitsets (one bit per element).
struct Table {
    order: usize,
    add: Vec<u8>,
    neg: Vec<u8>,
}

impl Table {
    fn new(group: &FiniteAbelianGroup) -> Self {
        let order = group.order() as usize;
        let elems: Vec<GroupElement> = group.elements().collect();
        let mut add = vec![0u8; order * order];
        for i in 0..order {
            for j in 0..order {
                add[i * order + j] = group.index_of(&group.add(&elems[i], &elems[j])) as u8;
            }
        }
        let neg = elems.iter().map(|g| group.index_of(&group.neg(g)) as u8).collect();
        Self { order, add, neg }
    }

    #[inline]
    fn sum(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    /// Achievable sums after adding element `g` to a multiset with
    /// achievable (nonempty) sub-multiset sums `mask`.
    #[inline]
    fn extend(&self, mask: u64, g: usize) -> u64 {
        let mut next = mask | (1 << g);
        let mut rest = mask;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= 1 << self.sum(s, g);
        }
        next
    }
}

/// The set `D_m`: every minimal zero-sum multiset of size `m`, in
/// canonical order.
pub fn enumerate_minimal_zero_sums(group: &FiniteAbelianGroup, m: u32) -> Result<Vec<ZeroSumPattern>> {
    if m == 0 {
        return Err(out_of_range("pattern length m", 0, ">= 1"));
    }
    if m > MAX_PATTERN_LENGTH {
        return Err(out_of_range("pattern length m", m, "<= 64"));
    }
    group.check_enumerable()?;
    if m == 1 {
        return Ok(vec![ZeroSumPattern::from_counts([(group.identity(), 1)])]);
    }
    if m as u64 > group.order() {
        return Ok(Vec::new());
    }

    let table = Table::new(group);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(m as usize);
    search_prefixes(&table, m as usize - 1, 1, 0, 0, &mut prefix, &mut |prefix, sum| {
        let last = table.neg[sum] as usize;
        if last != 0 && last >= *prefix.last().unwrap() {
            let seq = prefix.iter().copied().chain([last]);
            out.push(pattern_from_indices(group, seq));
        }
    });
    out.sort();
    Ok(out)
}

/// Depth-first walk over nondecreasing zero-sum-free sequences of
/// nonidentity elements; `visit` is called on every sequence of length
/// `target` with its total.
fn search_prefixes<F: FnMut(&[usize], usize)>(
    table: &Table,
    target: usize,
    start: usize,
    mask: u64,
    sum: usize,
    prefix: &mut Vec<usize>,
    visit: &mut F,
) {
    if prefix.len() == target {
        visit(prefix, sum);
        return;
    }
    for g in start..table.order {
        let next = table.extend(mask, g);
        if next & 1 != 0 {
            continue;
        }
        prefix.push(g);
        search_prefixes(table, target, g, next, table.sum(sum, g), prefix, visit);
        prefix.pop();
    }
}

fn pattern_from_indices(group: &FiniteAbelianGroup, seq: impl Iterator<Item = usize>) -> ZeroSumPattern {
    ZeroSumPattern::from_counts(seq.map(|i| (group.element(i as u64), 1)))
}

/// Length of the longest zero-sum-free sequence.
fn max_zero_sum_free_length(table: &Table) -> usize {
    fn walk(table: &Table, start: usize, mask: u64, depth: usize, best: &mut usize) {
        *best = (*best).max(depth);
        for g in start..table.order {
            let next = table.extend(mask, g);
            if next & 1 == 0 {
                walk(table, g, next, depth + 1, best);
            }
        }
    }
    let mut best = 0;
    walk(table, 1, 0, 0, &mut best);
    best
}

/// `max { m : D_m nonempty }`, by exhaustive search.
///
/// This is one more than the length of the longest zero-sum-free sequence:
/// appending the negated total to such a sequence yields a minimal zero-sum
/// multiset, and dropping any element of a minimal one yields a zero-sum-free
/// sequence.
pub fn davenport_constant(group: &FiniteAbelianGroup) -> Result<u32> {
    group.check_enumerable()?;
    let table = Table::new(group);
    Ok(max_zero_sum_free_length(&table) as u32 + 1)
}

/// Closed forms for `(D_h, D_{h-1})` over `C_h = <c>`:
/// `h` copies of `c^k`, and `h - 2` copies of `c^k` plus one `c^{2k}`, for
/// every unit `k`. Duplicate multisets are merged.
pub fn cyclic_extremal_patterns(h: u64) -> Result<(Vec<ZeroSumPattern>, Vec<ZeroSumPattern>)> {
    if h < 2 {
        return Err(out_of_range("cyclic order h", h, ">= 2"));
    }
    let group = FiniteAbelianGroup::cyclic(h)?;
    let generator = group.element(1);
    let mut top = Vec::new();
    let mut next = Vec::new();
    for k in (1..=h).filter(|k| k.gcd(&h) == 1) {
        let ck = group.scale(&generator, k);
        let c2k = group.scale(&generator, 2 * k);
        top.push(ZeroSumPattern::from_counts([(ck.clone(), h as u32)]));
        next.push(ZeroSumPattern::from_counts([(ck, h as u32 - 2), (c2k, 1)]));
    }
    for v in [&mut top, &mut next] {
        v.sort();
        v.dedup();
    }
    Ok((top, next))
}

/// Every group of order at most `max_order`, as invariant-factor chains.
pub fn groups_up_to_order(max_order: u64) -> Vec<FiniteAbelianGroup> {
    fn extend(prefix: &mut Vec<u64>, order: u64, max_order: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let last = prefix.last().copied().unwrap_or(1);
        let mut n = if last == 1 { 2 } else { last };
        while order * n <= max_order {
            if n % last == 0 {
                prefix.push(n);
                extend(prefix, order * n, max_order, out);
                prefix.pop();
            }
            n += 1;
        }
    }
    let mut chains = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut chains);
    let mut groups: Vec<FiniteAbelianGroup> = chains
        .into_iter()
        .map(|c| FiniteAbelianGroup::new(&c).expect("chain is valid by construction"))
        .collect();
    groups.sort_by_key(|g| (g.order(), g.invariant_factors().to_vec()));
    groups
}
