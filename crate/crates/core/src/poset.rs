//! Finite strict partial orders, the named catalog, and the path-Hasse
//! families `𝒫_k`.
//!
//! A poset of size `m` stores, for every element, bitsets of the elements
//! strictly below and strictly above it. The relation is always transitively
//! closed.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest poset the crate handles.
pub const MAX_POSET_SIZE: usize = 16;

/// Canonical form: element invariants in canonical order plus the relation
/// rows of the canonical relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct CanonicalForm {
    invariants: Vec<(usize, usize, usize)>,
    rows: Vec<u32>,
    perm: Vec<usize>,
}

#[derive(Clone)]
pub struct Poset {
    below: Vec<u32>,
    above: Vec<u32>,
    labels: Vec<String>,
    canon: OnceLock<CanonicalForm>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.below == other.below
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({})", self.to_dsl())
    }
}

fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

impl Poset {
    /// Transitive closure of `relations` (each `(lo, hi)` meaning `lo < hi`).
    pub fn from_relations(size: usize, relations: &[(usize, usize)]) -> Result<Poset> {
        if size > MAX_POSET_SIZE {
            return Err(Error::BadParameter(format!(
                "poset of size {size} exceeds {MAX_POSET_SIZE}"
            )));
        }
        let mut below = vec![0u32; size];
        for &(lo, hi) in relations {
            for index in [lo, hi] {
                if index >= size {
                    return Err(Error::ElementOutOfRange { index, size });
                }
            }
            below[hi] |= 1 << lo;
        }
        // Warshall on bit rows.
        for k in 0..size {
            for i in 0..size {
                if below[i] >> k & 1 == 1 {
                    below[i] |= below[k];
                }
            }
        }
        if let Some(i) = (0..size).find(|&i| below[i] >> i & 1 == 1) {
            return Err(Error::Cycle(i));
        }
        Ok(Self::from_closed(below, (0..size).map(default_label).collect()))
    }

    fn from_closed(below: Vec<u32>, labels: Vec<String>) -> Poset {
        let size = below.len();
        let mut above = vec![0u32; size];
        for (hi, &row) in below.iter().enumerate() {
            for (lo, up) in above.iter_mut().enumerate() {
                if row >> lo & 1 == 1 {
                    *up |= 1 << hi;
                }
            }
        }
        Poset {
            below,
            above,
            labels,
            canon: OnceLock::new(),
        }
    }

    pub fn antichain(size: usize) -> Result<Poset> {
        Self::from_relations(size, &[])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.size() {
            return Err(Error::BadParameter(format!(
                "{} labels for poset of size {}",
                labels.len(),
                self.size()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.below.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `lo < hi` in the strict order.
    pub fn less(&self, lo: usize, hi: usize) -> bool {
        self.below[hi] >> lo & 1 == 1
    }

    /// Bitset of elements strictly below `i`.
    pub fn below(&self, i: usize) -> u32 {
        self.below[i]
    }

    /// Bitset of elements strictly above `i`.
    pub fn above(&self, i: usize) -> u32 {
        self.above[i]
    }

    /// Number of elements comparable to `i`.
    pub fn degree(&self, i: usize) -> usize {
        (self.below[i] | self.above[i]).count_ones() as usize
    }

    /// All pairs `(lo, hi)` of the closed relation, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let m = self.size();
        let mut out = Vec::new();
        for lo in 0..m {
            for hi in 0..m {
                if self.less(lo, hi) {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    pub fn relation_count(&self) -> usize {
        self.below.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Cover relations `(lo, hi)`: `lo < hi` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(lo, hi)| self.above[lo] & self.below[hi] == 0)
            .collect()
    }

    /// Number of elements on a longest chain ending at each element.
    fn rank_from_bottom(&self) -> Vec<usize> {
        let m = self.size();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| self.below[i].count_ones());
        let mut rank = vec![1usize; m];
        for &i in &order {
            for j in 0..m {
                if self.less(j, i) {
                    rank[i] = rank[i].max(rank[j] + 1);
                }
            }
        }
        rank
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> usize {
        self.rank_from_bottom().into_iter().max().unwrap_or(0)
    }

    pub fn is_chain(&self) -> bool {
        let m = self.size();
        self.relation_count() == m * m.saturating_sub(1) / 2
    }

    pub fn dual(&self) -> Poset {
        Poset {
            below: self.above.clone(),
            above: self.below.clone(),
            labels: self.labels.clone(),
            canon: OnceLock::new(),
        }
    }

    fn canonical(&self) -> &CanonicalForm {
        self.canon.get_or_init(|| canonical_form(self))
    }

    /// True iff an order isomorphism exists.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.size() == other.size()
            && self.relation_count() == other.relation_count()
            && self.canonical().invariants == other.canonical().invariants
            && self.canonical().rows == other.canonical().rows
    }

    /// Stable isomorphism-invariant key: `size:lo<hi,lo<hi,...` over the
    /// closed relation of the canonical relabeling.
    pub fn canonical_key(&self) -> String {
        let c = self.canonical();
        let pos_of = inverse(&c.perm);
        let mut pairs: Vec<(usize, usize)> = self
            .relations()
            .into_iter()
            .map(|(lo, hi)| (pos_of[lo], pos_of[hi]))
            .collect();
        pairs.sort_unstable();
        let body: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        format!("{}:{}", self.size(), body.join(","))
    }

    /// Hasse-diagram rendering in the inline DSL: `a<b; c<b; c<d`. Isolated
    /// elements appear as bare identifiers.
    pub fn to_dsl(&self) -> String {
        let mut parts: Vec<String> = self
            .hasse_edges()
            .iter()
            .map(|&(lo, hi)| format!("{}<{}", self.labels[lo], self.labels[hi]))
            .collect();
        for i in 0..self.size() {
            if self.degree(i) == 0 {
                parts.push(self.labels[i].clone());
            }
        }
        parts.join("; ")
    }
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (pos, &e) in perm.iter().enumerate() {
        inv[e] = pos;
    }
    inv
}

/// Lexicographically least relation encoding over relabelings that list
/// elements by ascending (rank, down-degree, up-degree). Backtracking with
/// prefix pruning; the invariants restrict each position to one class.
fn canonical_form(p: &Poset) -> CanonicalForm {
    let m = p.size();
    let rank = p.rank_from_bottom();
    let inv: Vec<(usize, usize, usize)> = (0..m)
        .map(|i| {
            (
                rank[i],
                p.below[i].count_ones() as usize,
                p.above[i].count_ones() as usize,
            )
        })
        .collect();
    let mut sorted_inv = inv.clone();
    sorted_inv.sort_unstable();

    struct Search<'a> {
        p: &'a Poset,
        inv: &'a [(usize, usize, usize)],
        target: &'a [(usize, usize, usize)],
        perm: Vec<usize>,
        rows: Vec<u32>,
        used: u32,
        best: Option<(Vec<u32>, Vec<usize>)>,
    }

    impl Search<'_> {
        fn row(&self, pos: usize, e: usize) -> u32 {
            let mut r = 0u32;
            for (q, &f) in self.perm[..pos].iter().enumerate() {
                if self.p.less(f, e) {
                    r |= 1 << q;
                }
                if self.p.less(e, f) {
                    r |= 1 << (q + 16);
                }
            }
            r
        }

        fn run(&mut self, pos: usize, tight: bool) {
            let m = self.inv.len();
            if pos == m {
                let better = match &self.best {
                    None => true,
                    Some((rows, _)) => self.rows < *rows,
                };
                if better {
                    self.best = Some((self.rows.clone(), self.perm.clone()));
                }
                return;
            }
            for e in 0..m {
                if self.used >> e & 1 == 1 || self.inv[e] != self.target[pos] {
                    continue;
                }
                let r = self.row(pos, e);
                let mut still_tight = false;
                if tight {
                    if let Some((best_rows, _)) = &self.best {
                        match r.cmp(&best_rows[pos]) {
                            std::cmp::Ordering::Greater => continue,
                            std::cmp::Ordering::Equal => still_tight = true,
                            std::cmp::Ordering::Less => {}
                        }
                    }
                }
                self.perm.push(e);
                self.rows.push(r);
                self.used |= 1 << e;
                self.run(pos + 1, still_tight || (tight && self.best.is_none()));
                self.used &= !(1 << e);
                self.rows.pop();
                self.perm.pop();
            }
        }
    }

    let mut s = Search {
        p,
        inv: &inv,
        target: &sorted_inv,
        perm: Vec::with_capacity(m),
        rows: Vec::with_capacity(m),
        used: 0,
        best: None,
    };
    s.run(0, true);
    let (rows, perm) = s.best.unwrap_or_default();
    CanonicalForm {
        invariants: sorted_inv,
        rows,
        perm,
    }
}

pub fn poset_from_relations(size: usize, relations: &[(usize, usize)]) -> Result<Poset> {
    Poset::from_relations(size, relations)
}

pub fn dual_poset(p: &Poset) -> Poset {
    p.dual()
}

pub fn poset_isomorphic(p: &Poset, q: &Poset) -> bool {
    p.is_isomorphic(q)
}

/// A list of pairwise non-isomorphic posets, in insertion order.
#[derive(Clone, Debug, Default)]
pub struct PosetFamily {
    members: Vec<Poset>,
}

impl PosetFamily {
    /// Keeps the first representative of each isomorphism class.
    pub fn new(posets: impl IntoIterator<Item = Poset>) -> PosetFamily {
        let mut seen = HashSet::new();
        let members = posets
            .into_iter()
            .filter(|p| seen.insert(p.canonical_key()))
            .collect();
        PosetFamily { members }
    }

    pub fn single(p: Poset) -> PosetFamily {
        PosetFamily { members: vec![p] }
    }

    pub fn members(&self) -> &[Poset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Poset> {
        self.members.iter()
    }

    pub fn contains_isomorphic(&self, p: &Poset) -> bool {
        self.members.iter().any(|q| q.is_isomorphic(p))
    }

    /// Order-independent key: sorted member keys joined by `|`.
    pub fn canonical_key(&self) -> String {
        let mut keys: Vec<String> = self.members.iter().map(Poset::canonical_key).collect();
        keys.sort();
        keys.join("|")
    }

    pub fn extend(&mut self, other: PosetFamily) {
        let mut all = std::mem::take(&mut self.members);
        all.extend(other.members);
        *self = PosetFamily::new(all);
    }
}

/// Names accepted by [`named_poset`] (case-insensitive).
pub const CATALOG_NAMES: &[&str] = &[
    "chain",
    "kst",
    "butterfly",
    "k22",
    "fork",
    "crown",
    "diamond",
    "n",
    "w",
    "m",
    "s",
];

fn labelled(size: usize, relations: &[(usize, usize)], labels: &[&str]) -> Result<Poset> {
    Poset::from_relations(size, relations)?
        .with_labels(labels.iter().map(|s| s.to_string()).collect())
}

fn expect_arity(name: &str, params: &[usize], allowed: &[usize]) -> Result<()> {
    if allowed.contains(&params.len()) {
        Ok(())
    } else {
        Err(Error::BadParameter(format!(
            "{name} takes {allowed:?} parameters, got {}",
            params.len()
        )))
    }
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        Err(Error::BadParameter(format!("{name} parameter must be positive")))
    } else {
        Ok(v)
    }
}

/// Catalog poset by name: `chain(k)`, `Kst(s,t)`, `butterfly`/`K22`,
/// `fork(r)`, `crown(l)`, `diamond` / `diamond(r)`, `N`, `W`, `M`, `S`.
pub fn named_poset(name: &str, params: &[usize]) -> Result<Poset> {
    let key = name.to_ascii_lowercase();
    match key.as_str() {
        "chain" => {
            expect_arity(name, params, &[1])?;
            let k = positive(name, params[0])?;
            let rels: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
            Poset::from_relations(k, &rels)
        }
        "kst" => {
            expect_arity(name, params, &[2])?;
            let s = positive(name, params[0])?;
            let t = positive(name, params[1])?;
            let mut rels = Vec::new();
            for lo in 0..s {
                for hi in s..s + t {
                    rels.push((lo, hi));
                }
            }
            Poset::from_relations(s + t, &rels)
        }
        "butterfly" | "k22" => {
            expect_arity(name, params, &[0])?;
            labelled(4, &[(0, 2), (0, 3), (1, 2), (1, 3)], &["p1", "p2", "q1", "q2"])
        }
        "fork" => {
            expect_arity(name, params, &[1])?;
            let r = positive(name, params[0])?;
            let rels: Vec<_> = (1..=r).map(|b| (0, b)).collect();
            Poset::from_relations(r + 1, &rels)
        }
        "crown" => {
            expect_arity(name, params, &[1])?;
            let l = params[0];
            if l < 2 {
                return Err(Error::BadParameter("crown needs l >= 2".into()));
            }
            let mut rels = Vec::new();
            for i in 0..l {
                rels.push((i, l + i));
                rels.push((i, l + (i + 1) % l));
            }
            Poset::from_relations(2 * l, &rels)
        }
        "diamond" => {
            expect_arity(name, params, &[0, 1])?;
            let r = positive(name, params.first().copied().unwrap_or(2))?;
            let mut rels = Vec::new();
            for b in 1..=r {
                rels.push((0, b));
                rels.push((b, r + 1));
            }
            Poset::from_relations(r + 2, &rels)
        }
        "n" => {
            expect_arity(name, params, &[0])?;
            labelled(4, &[(0, 2), (1, 2), (1, 3)], &["p1", "p2", "q1", "q2"])
        }
        "w" => {
            expect_arity(name, params, &[0])?;
            labelled(5, &[(1, 0), (1, 2), (3, 2), (3, 4)], &["a", "b", "c", "d", "e"])
        }
        "m" => {
            expect_arity(name, params, &[0])?;
            Ok(named_poset("W", &[])?.dual())
        }
        "s" => {
            expect_arity(name, params, &[0])?;
            labelled(
                5,
                &[(1, 0), (1, 2), (2, 3), (4, 3)],
                &["a", "b1", "b2", "b3", "c"],
            )
        }
        _ => Err(Error::UnknownPoset(name.to_string())),
    }
}

pub fn chain(k: usize) -> Poset {
    named_poset("chain", &[k]).expect("k >= 1")
}

pub fn butterfly() -> Poset {
    named_poset("butterfly", &[]).expect("catalog")
}

pub fn n_poset() -> Poset {
    named_poset("N", &[]).expect("catalog")
}

pub fn w_poset() -> Poset {
    named_poset("W", &[]).expect("catalog")
}

pub fn m_poset() -> Poset {
    named_poset("M", &[]).expect("catalog")
}

pub fn s_poset() -> Poset {
    named_poset("S", &[]).expect("catalog")
}

/// `𝒫_k`: posets on `k` elements whose undirected Hasse diagram is a path,
/// up to isomorphism, optionally restricted to one height.
pub fn path_hasse_family(k: usize, height_filter: Option<usize>) -> Result<PosetFamily> {
    if !(2..=8).contains(&k) {
        return Err(Error::BadParameter(format!("path family needs 2 <= k <= 8, got {k}")));
    }
    let mut all = Vec::new();
    for orient in 0u32..1 << (k - 1) {
        let rels: Vec<(usize, usize)> = (0..k - 1)
            .map(|i| if orient >> i & 1 == 1 { (i, i + 1) } else { (i + 1, i) })
            .collect();
        let p = Poset::from_relations(k, &rels)?;
        let mut hasse: Vec<(usize, usize)> = p
            .hasse_edges()
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        hasse.sort_unstable();
        let path: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        assert_eq!(hasse, path, "orientation {orient:b} collapsed a Hasse edge");
        all.push(p);
    }
    let fam = PosetFamily::new(all);
    Ok(match height_filter {
        None => fam,
        Some(h) => PosetFamily::new(fam.members.into_iter().filter(|p| p.height() == h)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force isomorphism over all bijections.
    fn iso_brute(p: &Poset, q: &Poset) -> bool {
        let m = p.size();
        if m != q.size() {
            return false;
        }
        let mut perm: Vec<u8> = (0..m as u8).collect();
        loop {
            let ok = (0..m).all(|i| {
                (0..m).all(|j| p.less(i, j) == q.less(perm[i] as usize, perm[j] as usize))
            });
            if ok {
                return true;
            }
            if !crate::lattice::next_permutation(&mut perm) {
                return false;
            }
        }
    }

    #[test]
    fn closure_and_cycles() {
        let n = poset_from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(n.is_isomorphic(&n_poset()));
        let anti = poset_from_relations(2, &[]).unwrap();
        assert_eq!(anti.relation_count(), 0);
        let p3 = poset_from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p3.less(0, 2));
        assert!(p3.is_isomorphic(&chain(3)));
        assert_eq!(
            poset_from_relations(2, &[(0, 1), (1, 0)]).unwrap_err(),
            Error::Cycle(0)
        );
        assert!(matches!(
            poset_from_relations(2, &[(0, 5)]),
            Err(Error::ElementOutOfRange { index: 5, size: 2 })
        ));
    }

    #[test]
    fn duals() {
        assert_eq!(w_poset().dual(), m_poset());
        assert!(chain(4).dual().is_isomorphic(&chain(4)));
        let k23 = named_poset("Kst", &[2, 3]).unwrap();
        let k32 = named_poset("Kst", &[3, 2]).unwrap();
        assert!(k23.dual().is_isomorphic(&k32));
        assert!(!k23.is_isomorphic(&k32));
    }

    #[test]
    fn isomorphism_examples() {
        let n = n_poset();
        let d = n.dual();
        assert!(n.is_isomorphic(&d));
        // p1↦q2, q1↦p2, p2↦q1, q2↦p1 with indices p1=0,p2=1,q1=2,q2=3.
        let map = [3usize, 2, 1, 0];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(n.less(i, j), d.less(map[i], map[j]));
            }
        }
        assert!(!w_poset().is_isomorphic(&m_poset()));
        assert!(!chain(3).is_isomorphic(&named_poset("fork", &[2]).unwrap()));
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(chain(4).relation_count(), 6);
        let b = named_poset("Kst", &[2, 2]).unwrap();
        assert!(b.is_isomorphic(&butterfly()));
        assert_eq!(b.relation_count(), 4);
        assert!(named_poset("K22", &[]).unwrap().is_isomorphic(&butterfly()));
        assert!(named_poset("BUTTERFLY", &[]).is_ok());
        let s = s_poset();
        assert_eq!(s.size(), 5);
        let l = s.labels();
        let idx = |name: &str| l.iter().position(|x| x == name).unwrap();
        assert!(s.less(idx("b1"), idx("a")));
        assert!(s.less(idx("b1"), idx("b2")));
        assert!(s.less(idx("b2"), idx("b3")));
        assert!(s.less(idx("c"), idx("b3")));
        assert_eq!(s.hasse_edges().len(), 4);
        for l in 2..=5 {
            let c = named_poset("crown", &[l]).unwrap();
            assert_eq!(c.size(), 2 * l);
            assert_eq!(c.relation_count(), 2 * l);
        }
        assert!(named_poset("crown", &[2]).unwrap().is_isomorphic(&butterfly()));
        for (s, t) in [(1, 1), (2, 3), (3, 4)] {
            assert_eq!(named_poset("kst", &[s, t]).unwrap().relation_count(), s * t);
        }
        let d3 = named_poset("diamond", &[3]).unwrap();
        assert_eq!((d3.size(), d3.relation_count()), (5, 7));
        assert_eq!(named_poset("fork", &[3]).unwrap().relation_count(), 3);
        assert!(matches!(named_poset("zzz", &[]), Err(Error::UnknownPoset(_))));
        assert!(matches!(named_poset("crown", &[1]), Err(Error::BadParameter(_))));
        assert!(matches!(named_poset("chain", &[]), Err(Error::BadParameter(_))));
        assert!(matches!(named_poset("chain", &[0]), Err(Error::BadParameter(_))));
    }

    #[test]
    fn path_family_k4() {
        let fam = path_hasse_family(4, None).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(fam.contains_isomorphic(&chain(4)));
        assert!(fam.contains_isomorphic(&n_poset()));
        // Chain of three plus a pendant: the two orientations are dual.
        let pend_top = poset_from_relations(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        let pend_bottom = pend_top.dual();
        assert!(fam.contains_isomorphic(&pend_top));
        assert!(fam.contains_isomorphic(&pend_bottom));
        assert!(!pend_top.is_isomorphic(&pend_bottom));
        let h2 = path_hasse_family(4, Some(2)).unwrap();
        assert_eq!(h2.len(), 1);
        assert!(h2.members()[0].is_isomorphic(&n_poset()));
    }

    #[test]
    fn path_family_k5() {
        let fam = path_hasse_family(5, None).unwrap();
        assert!(fam.contains_isomorphic(&chain(5)));
        assert!(fam.contains_isomorphic(&s_poset()));
        let h2 = path_hasse_family(5, Some(2)).unwrap();
        assert_eq!(h2.len(), 2);
        assert!(h2.contains_isomorphic(&w_poset()));
        assert!(h2.contains_isomorphic(&m_poset()));
    }

    #[test]
    fn path_family_sizes_against_brute_force_dedup() {
        // Independent count: dedupe orientations with brute-force isomorphism.
        for k in 2..=7 {
            let mut reps: Vec<Poset> = Vec::new();
            for orient in 0u32..1 << (k - 1) {
                let rels: Vec<_> = (0..k - 1)
                    .map(|i| if orient >> i & 1 == 1 { (i, i + 1) } else { (i + 1, i) })
                    .collect();
                let p = Poset::from_relations(k, &rels).unwrap();
                if !reps.iter().any(|r| iso_brute(r, &p)) {
                    reps.push(p);
                }
            }
            let fam = path_hasse_family(k, None).unwrap();
            assert_eq!(fam.len(), reps.len(), "k={k}");
            for p in fam.iter() {
                assert_eq!(p.size(), k);
                assert_eq!(p.hasse_edges().len(), k - 1);
            }
            let h2 = path_hasse_family(k, Some(2)).unwrap();
            if k >= 3 {
                let expect = if k % 2 == 0 { 1 } else { 2 };
                assert_eq!(h2.len(), expect, "k={k}");
                if k % 2 == 1 {
                    assert!(h2.members()[0].dual().is_isomorphic(&h2.members()[1]));
                } else {
                    assert!(h2.members()[0].dual().is_isomorphic(&h2.members()[0]));
                }
            }
        }
        assert!(path_hasse_family(1, None).is_err());
        assert!(path_hasse_family(9, None).is_err());
    }

    #[test]
    fn path_family_sizes() {
        // Frozen from the brute-force dedup above.
        let sizes: Vec<usize> = (2..=8).map(|k| path_hasse_family(k, None).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 3, 4, 10, 16, 36, 64]);
    }

    #[test]
    fn canonical_form_agrees_with_brute_force() {
        let mut posets = vec![chain(4), n_poset(), butterfly(), w_poset(), m_poset(), s_poset()];
        for k in 3..=6 {
            posets.extend(path_hasse_family(k, None).unwrap().members().iter().cloned());
        }
        posets.push(named_poset("diamond", &[]).unwrap());
        posets.push(named_poset("fork", &[3]).unwrap());
        for p in &posets {
            for q in &posets {
                assert_eq!(p.is_isomorphic(q), iso_brute(p, q), "{p:?} vs {q:?}");
                assert_eq!(p.is_isomorphic(q), p.canonical_key() == q.canonical_key());
            }
            assert_eq!(p.dual().dual(), *p);
            assert_eq!(p.dual().height(), p.height());
        }
    }

    #[test]
    fn heights() {
        assert_eq!(chain(5).height(), 5);
        assert_eq!(n_poset().height(), 2);
        assert_eq!(s_poset().height(), 3);
        assert_eq!(Poset::antichain(3).unwrap().height(), 1);
        assert_eq!(Poset::antichain(0).unwrap().height(), 0);
    }
}
