//! Subsets of `[n]` as little-endian bit masks (bit `i-1` holds element `i`),
//! families of such subsets, and the brute-force full-chain machinery.

pub mod format;

pub use format::{parse_family_json, parse_family_text, write_family_json, write_family_text};

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{check_dimension, Error, Result};
use crate::exec::{self, Exec};

pub type Mask = u32;

/// Largest dimension for operations that scan the whole lattice.
pub const MAX_ENUM_N: usize = 24;
/// Largest dimension for the `n!` full-chain oracle.
pub const MAX_CHAIN_ORACLE_N: usize = 8;
/// Largest dimension accepted by closed formulas.
pub const MAX_FORMULA_N: usize = 62;

#[inline]
pub fn full_mask(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        ((1u64 << n) - 1) as Mask
    }
}

#[inline]
pub fn popcount(m: Mask) -> usize {
    m.count_ones() as usize
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

#[inline]
pub fn is_proper_subset(a: Mask, b: Mask) -> bool {
    a != b && a & !b == 0
}

#[inline]
pub fn comparable(a: Mask, b: Mask) -> bool {
    is_subset(a, b) || is_subset(b, a)
}

/// Elements of `m`, 1-based, ascending.
pub fn elements(m: Mask) -> Vec<usize> {
    (0..32).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Mask of a list of 1-based elements.
pub fn mask_of(n: usize, elems: &[usize]) -> Result<Mask> {
    let mut m = 0;
    for &e in elems {
        if e == 0 || e > n {
            return Err(Error::BadParameter(format!("element {e} not in [{n}]")));
        }
        m |= 1 << (e - 1);
    }
    Ok(m)
}

/// Compact display used in reports: `{}` for the empty set, otherwise the
/// elements concatenated (`123`) when n < 10, space-separated otherwise.
pub fn mask_label(n: usize, m: Mask) -> String {
    if m == 0 {
        return "{}".to_string();
    }
    let sep = if n < 10 { "" } else { " " };
    elements(m)
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// A duplicate-free family of subsets of `[n]`, stored sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetFamily {
    n: usize,
    masks: Vec<Mask>,
}

impl SetFamily {
    pub fn new(n: usize, masks: impl IntoIterator<Item = Mask>) -> Result<Self> {
        check_dimension("SetFamily", n, 0, MAX_ENUM_N)?;
        let full = full_mask(n);
        let mut masks: Vec<Mask> = masks.into_iter().collect();
        if let Some(&bad) = masks.iter().find(|&&m| m & !full != 0) {
            return Err(Error::MaskOutOfRange {
                mask: bad as u64,
                n,
            });
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(SetFamily { n, masks })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// All of `2^[n]`.
    pub fn full(n: usize) -> Result<Self> {
        check_dimension("full lattice", n, 0, MAX_ENUM_N)?;
        Ok(SetFamily {
            n,
            masks: (0..=full_mask(n)).collect(),
        })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, masks: Vec<Mask>) -> Self {
        debug_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        SetFamily { n, masks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.masks.binary_search(&m).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Mask> + '_ {
        self.masks.iter().copied()
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        let mut masks = self.masks.clone();
        masks.extend_from_slice(&other.masks);
        masks.sort_unstable();
        masks.dedup();
        SetFamily {
            n: self.n.max(other.n),
            masks,
        }
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.masks.iter().all(|&m| other.contains(m))
    }

    /// Membership table over all of `2^[n]`.
    pub(crate) fn indicator(&self) -> Vec<bool> {
        let mut ind = vec![false; 1usize << self.n];
        for &m in &self.masks {
            ind[m as usize] = true;
        }
        ind
    }
}

/// All sets whose size lies in `ks`.
pub fn level_family(n: usize, ks: &[usize]) -> Result<SetFamily> {
    check_dimension("level_family", n, 0, MAX_ENUM_N)?;
    if let Some(&k) = ks.iter().find(|&&k| k > n) {
        return Err(Error::LevelOutOfRange { level: k, n });
    }
    let mut want = [false; MAX_ENUM_N + 1];
    for &k in ks {
        want[k] = true;
    }
    let masks = (0..=full_mask(n))
        .filter(|&m| want[popcount(m)])
        .collect();
    Ok(SetFamily::from_sorted_unchecked(n, masks))
}

/// Number of `k`-element chains `A_1 ⊊ … ⊊ A_k` inside `family`.
pub fn count_k_chains(family: &SetFamily, k: usize) -> BigUint {
    BigUint::from(count_k_chains_u128(family, k))
}

/// Machine-word version of [`count_k_chains`]. Chains of `k` nested subsets of
/// `[n]` number at most `(k+1)^n`, which stays below `u128::MAX` for n ≤ 24.
pub(crate) fn count_k_chains_u128(family: &SetFamily, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    let m = family.len();
    if k == 1 || m == 0 {
        return m as u128;
    }
    let n = family.n;
    let lattice_work = (n as u128) << n;
    if n <= 20 && (m as u128) * (m as u128) > lattice_work {
        return chains_by_zeta(family, k);
    }
    // Members sorted by size so every proper subset precedes its supersets.
    let mut by_size: Vec<Mask> = family.masks.clone();
    by_size.sort_by_key(|&x| (popcount(x), x));
    let mut cur: Vec<u128> = vec![1; m];
    for _ in 1..k {
        let mut next = vec![0u128; m];
        for (i, &top) in by_size.iter().enumerate() {
            let mut s = 0u128;
            for (j, &below) in by_size[..i].iter().enumerate() {
                if is_proper_subset(below, top) {
                    s += cur[j];
                }
            }
            next[i] = s;
        }
        cur = next;
    }
    cur.iter().sum()
}

fn chains_by_zeta(family: &SetFamily, k: usize) -> u128 {
    let n = family.n;
    let size = 1usize << n;
    let ind = family.indicator();
    let mut cur: Vec<u128> = ind.iter().map(|&b| b as u128).collect();
    for _ in 1..k {
        let mut h = cur.clone();
        for bit in 0..n {
            let b = 1usize << bit;
            for x in 0..size {
                if x & b != 0 {
                    h[x] += h[x ^ b];
                }
            }
        }
        for x in 0..size {
            cur[x] = if ind[x] { h[x] - cur[x] } else { 0 };
        }
    }
    cur.iter().sum()
}

/// Every ordered pair `(A, B)` with `A ⊊ B`, both members, sorted.
pub fn containment_pairs(family: &SetFamily) -> Vec<(Mask, Mask)> {
    let mut out = Vec::new();
    for &a in &family.masks {
        for &b in &family.masks {
            if is_proper_subset(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Sets sandwiched between two members (closed at both ends).
pub fn convex_hull(family: &SetFamily) -> SetFamily {
    let n = family.n;
    if family.is_empty() {
        return family.clone();
    }
    let size = 1usize << n;
    let ind = family.indicator();
    // above[x]: x contains some member. below[x]: x is inside some member.
    let mut above = ind.clone();
    for x in 0..size {
        if !above[x] {
            let mut rest = x;
            while rest != 0 {
                let b = rest & rest.wrapping_neg();
                if above[x ^ b] {
                    above[x] = true;
                    break;
                }
                rest ^= b;
            }
        }
    }
    let mut below = ind;
    let full = size - 1;
    for x in (0..size).rev() {
        if !below[x] {
            let mut rest = full & !x;
            while rest != 0 {
                let b = rest & rest.wrapping_neg();
                if below[x | b] {
                    below[x] = true;
                    break;
                }
                rest ^= b;
            }
        }
    }
    let masks = (0..size)
        .filter(|&x| above[x] && below[x])
        .map(|x| x as Mask)
        .collect();
    SetFamily::from_sorted_unchecked(n, masks)
}

/// One connected component of the comparability graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Members, ascending.
    pub members: Vec<Mask>,
    /// Number of comparable (containment) pairs inside the component.
    pub edges: usize,
}

/// Partition of a family into comparability components, ordered by their
/// smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparabilityComponents {
    pub n: usize,
    pub components: Vec<Component>,
}

impl ComparabilityComponents {
    pub fn total_edges(&self) -> usize {
        self.components.iter().map(|c| c.edges).sum()
    }

    pub fn total_vertices(&self) -> usize {
        self.components.iter().map(|c| c.members.len()).sum()
    }
}

pub fn comparability_components(family: &SetFamily) -> ComparabilityComponents {
    let m = family.len();
    let masks = &family.masks;
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut edge_pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if comparable(masks[i], masks[j]) {
                edge_pairs.push(i);
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Component> = BTreeMap::new();
    for (i, &mask) in masks.iter().enumerate() {
        let r = find(&mut parent, i);
        groups
            .entry(r)
            .or_insert_with(|| Component {
                members: Vec::new(),
                edges: 0,
            })
            .members
            .push(mask);
    }
    for i in edge_pairs {
        let r = find(&mut parent, i);
        groups.get_mut(&r).expect("root present").edges += 1;
    }
    ComparabilityComponents {
        n: family.n,
        components: groups.into_values().collect(),
    }
}

/// Replace each member by its complement in `[n]`.
pub fn complement_family(family: &SetFamily) -> SetFamily {
    let full = full_mask(family.n);
    let mut masks: Vec<Mask> = family.masks.iter().map(|&m| m ^ full).collect();
    masks.sort_unstable();
    SetFamily::from_sorted_unchecked(family.n, masks)
}

/// A maximal chain `∅ = C_0 ⊂ C_1 ⊂ … ⊂ C_n = [n]`, encoded by the order in
/// which elements are added (0-based element indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FullChain {
    order: Vec<u8>,
}

impl FullChain {
    pub fn from_order(order: Vec<u8>) -> Result<Self> {
        let n = order.len();
        let mut seen = 0u64;
        for &e in &order {
            if e as usize >= n || seen >> e & 1 == 1 {
                return Err(Error::BadParameter(format!(
                    "{order:?} is not a permutation of 0..{n}"
                )));
            }
            seen |= 1 << e;
        }
        Ok(FullChain { order })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// `C_0, C_1, …, C_n`.
    pub fn sets(&self) -> impl Iterator<Item = Mask> + '_ {
        std::iter::once(0).chain(self.order.iter().scan(0 as Mask, |acc, &e| {
            *acc |= 1 << e;
            Some(*acc)
        }))
    }
}

/// Advance `perm` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(perm: &mut [u8]) -> bool {
    let len = perm.len();
    if len < 2 {
        return false;
    }
    let mut i = len - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = len - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Calls `visit` with the prefix-set sequence of every full chain whose first
/// added element is `first`.
pub(crate) fn for_each_chain_starting_with(
    n: usize,
    first: usize,
    mut visit: impl FnMut(&[Mask]),
) {
    let mut rest: Vec<u8> = (0..n as u8).filter(|&e| e as usize != first).collect();
    let mut sets = vec![0 as Mask; n + 1];
    loop {
        sets[1] = 1 << first;
        for (i, &e) in rest.iter().enumerate() {
            sets[i + 2] = sets[i + 1] | 1 << e;
        }
        visit(&sets);
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

/// Iterator over all `n!` full chains in lexicographic order of the element
/// insertion sequence.
pub fn full_chains(n: usize) -> Result<impl Iterator<Item = FullChain>> {
    check_dimension("full_chains", n, 0, MAX_CHAIN_ORACLE_N)?;
    let mut state: Option<Vec<u8>> = Some((0..n as u8).collect());
    Ok(std::iter::from_fn(move || {
        let cur = state.take()?;
        let mut next = cur.clone();
        if next_permutation(&mut next) {
            state = Some(next);
        }
        Some(FullChain { order: cur })
    }))
}

/// Brute-force count of full chains that meet at least one member.
pub fn chains_meeting(n: usize, family: &SetFamily) -> Result<BigUint> {
    chains_meeting_with(Exec::default(), n, family)
}

pub fn chains_meeting_with(exec: Exec, n: usize, family: &SetFamily) -> Result<BigUint> {
    Ok(BigUint::from(chains_meeting_u64(exec, n, family)?))
}

pub(crate) fn chains_meeting_u64(exec: Exec, n: usize, family: &SetFamily) -> Result<u64> {
    check_dimension("chains_meeting", n, 0, MAX_CHAIN_ORACLE_N)?;
    if family.n() != n {
        return Err(Error::Precondition(format!(
            "family lives in dimension {} but n={n}",
            family.n()
        )));
    }
    let ind = family.indicator();
    if n == 0 {
        return Ok(ind[0] as u64);
    }
    let total = exec::sum_range(exec, n, |first| {
        let mut hits = 0u128;
        for_each_chain_starting_with(n, first, |sets| {
            if sets.iter().any(|&s| ind[s as usize]) {
                hits += 1;
            }
        });
        hits
    });
    Ok(total as u64)
}
