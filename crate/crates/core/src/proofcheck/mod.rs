//! Mechanized checks of the counting arguments: blue/red colorings and
//! critical pairs, the component structure of N-free families, the six-set
//! zigzag lemma for W and M, the Erdős–Gallai edge bound, and per-component
//! diagnostics for `𝒫_5`-free families.

mod lemmas;

pub use lemmas::{random_zigzag, verify_all, verify_lemma, zigzag_sequences, Lemma, LemmaReport};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::embedding::{find_embedding, first_violation, is_free, EmbeddingWitness};
use crate::error::{check_dimension, Error, Result};
use crate::formulas::{binomial, factorial};
use crate::lattice::{
    self, comparability_components, comparable, convex_hull, full_mask, is_proper_subset,
    popcount, ComparabilityComponents, Mask, SetFamily, MAX_CHAIN_ORACLE_N,
};
use crate::poset::{m_poset, n_poset, path_hasse_family, w_poset, PosetFamily};

/// Largest dimension for [`color_family`].
pub const MAX_COLOR_N: usize = 12;

/// Blue/red labeling of `2^[n]` relative to a family: a set is blue when it
/// is strictly contained in at least `t` members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    family: SetFamily,
    t: usize,
    blue: Vec<bool>,
    critical_pairs: Vec<(Mask, Mask)>,
}

impl Coloring {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn threshold(&self) -> usize {
        self.t
    }

    pub fn is_blue(&self, m: Mask) -> bool {
        self.blue[m as usize]
    }

    pub fn blue_sets(&self) -> Vec<Mask> {
        (0..self.blue.len() as Mask).filter(|&m| self.is_blue(m)).collect()
    }

    /// Pairs `(G, G')` with `G ⊊ G'`, `|G'| = |G|+1`, `G` blue, `G'` red.
    pub fn critical_pairs(&self) -> &[(Mask, Mask)] {
        &self.critical_pairs
    }

    pub fn blue_is_downset(&self) -> bool {
        (0..self.blue.len()).all(|x| {
            !self.blue[x] || (0..self.n).all(|i| x >> i & 1 == 0 || self.blue[x ^ 1 << i])
        })
    }

    pub fn red_is_upset(&self) -> bool {
        (0..self.blue.len()).all(|x| {
            self.blue[x] || (0..self.n).all(|i| x >> i & 1 == 1 || !self.blue[x | 1 << i])
        })
    }
}

pub fn color_family(n: usize, family: &SetFamily, t: usize) -> Result<Coloring> {
    check_dimension("color_family", n, 0, MAX_COLOR_N)?;
    if family.n() != n {
        return Err(Error::Precondition(format!(
            "family lives in dimension {} but n={n}",
            family.n()
        )));
    }
    if t == 0 {
        return Err(Error::BadParameter("threshold t must be at least 1".into()));
    }
    // above[x] = members containing x (superset sums), minus x itself.
    let size = 1usize << n;
    let mut above: Vec<u32> = vec![0; size];
    for m in family.iter() {
        above[m as usize] = 1;
    }
    for bit in 0..n {
        let b = 1 << bit;
        for x in 0..size {
            if x & b == 0 {
                above[x] += above[x | b];
            }
        }
    }
    let blue: Vec<bool> = (0..size)
        .map(|x| (above[x] - family.contains(x as Mask) as u32) as usize >= t)
        .collect();
    let mut critical_pairs = Vec::new();
    for g in 0..size {
        if !blue[g] {
            continue;
        }
        for i in 0..n {
            let up = g | 1 << i;
            if up != g && !blue[up] {
                critical_pairs.push((g as Mask, up as Mask));
            }
        }
    }
    critical_pairs.sort_unstable();
    Ok(Coloring {
        n,
        family: family.clone(),
        t,
        blue,
        critical_pairs,
    })
}

/// Number of critical pairs lying on each full chain, indexed by chain in
/// lexicographic order of the insertion sequence.
pub fn critical_pairs_per_chain(n: usize, coloring: &Coloring) -> Result<Vec<usize>> {
    check_dimension("critical_pairs_per_chain", n, 0, MAX_CHAIN_ORACLE_N)?;
    if coloring.n != n {
        return Err(Error::Precondition("coloring dimension mismatch".into()));
    }
    let mut out = Vec::new();
    for first in 0..n {
        lattice::for_each_chain_starting_with(n, first, |sets| {
            let hits = sets
                .windows(2)
                .filter(|w| coloring.is_blue(w[0]) && !coloring.is_blue(w[1]))
                .count();
            out.push(hits);
        });
    }
    if n == 0 {
        out.push(0);
    }
    Ok(out)
}

/// Every full chain carries at most one critical pair.
pub fn check_one_critical_pair_per_chain(n: usize, coloring: &Coloring) -> Result<bool> {
    Ok(critical_pairs_per_chain(n, coloring)?.iter().all(|&c| c <= 1))
}

/// Shape of a component of an N-free family's comparability graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ComponentClass {
    /// Three nested sets, nothing else comparable to them.
    Triangle { chain: [Mask; 3] },
    /// A center comparable to every leaf, leaves pairwise incomparable.
    /// Singletons are stars with no leaves.
    Star { center: Mask, leaves: Vec<Mask> },
}

/// Why [`classify_nfree_components`] refused its input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    /// The family contains N; the witness maps `p1, p2, q1, q2` to members.
    NotNFree(EmbeddingWitness),
    /// A component fits neither shape (impossible for N-free input).
    Unclassified(Vec<Mask>),
}

fn classify_component(members: &[Mask]) -> Option<ComponentClass> {
    if members.len() == 3 {
        let mut c = [members[0], members[1], members[2]];
        c.sort_by_key(|&m| (popcount(m), m));
        if is_proper_subset(c[0], c[1]) && is_proper_subset(c[1], c[2]) {
            return Some(ComponentClass::Triangle { chain: c });
        }
    }
    let center = members
        .iter()
        .copied()
        .find(|&c| members.iter().all(|&x| x == c || comparable(x, c)))?;
    let leaves: Vec<Mask> = members.iter().copied().filter(|&x| x != center).collect();
    let antichain = leaves
        .iter()
        .enumerate()
        .all(|(i, &a)| leaves[i + 1..].iter().all(|&b| !comparable(a, b)));
    antichain.then_some(ComponentClass::Star { center, leaves })
}

pub fn classify_nfree_components(
    family: &SetFamily,
) -> std::result::Result<Vec<ComponentClass>, Refusal> {
    if let Some((_, w)) = first_violation(family, &PosetFamily::single(n_poset())) {
        return Err(Refusal::NotNFree(w));
    }
    comparability_components(family)
        .components
        .iter()
        .map(|c| classify_component(&c.members).ok_or_else(|| Refusal::Unclassified(c.members.clone())))
        .collect()
}

/// Which of the two height-2 five-element zigzags was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WOrM {
    W,
    M,
}

impl WOrM {
    fn flip(self) -> WOrM {
        match self {
            WOrM::W => WOrM::M,
            WOrM::M => WOrM::W,
        }
    }
}

/// Five of the six sets forming a W or an M. `indices[j]` is the position in
/// the input sequence of the set playing element `j` of the poset (elements
/// `a, b, c, d, e` as in the catalog). `run` is the longest run of
/// consecutive sets forming a chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagWitness {
    pub which: WOrM,
    pub indices: [usize; 5],
    pub run: usize,
}

/// Picks five of six sets `A_1..A_6` (consecutive ones comparable, all
/// distinct) that form W or M, by case analysis on the longest consecutive
/// chain run `m`. A 5-chain is reported as W.
pub fn zigzag_find_wm(n: usize, seq: &[Mask]) -> Result<ZigzagWitness> {
    check_dimension("zigzag_find_wm", n, 0, lattice::MAX_ENUM_N)?;
    if seq.len() != 6 {
        return Err(Error::Precondition(format!("need 6 sets, got {}", seq.len())));
    }
    if seq.iter().any(|&m| m & !full_mask(n) != 0) {
        return Err(Error::Precondition("set outside [n]".into()));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            if seq[i] == seq[j] {
                return Err(Error::Precondition(format!("sets {i} and {j} coincide")));
            }
        }
    }
    // up[i]: A_i ⊂ A_{i+1}.
    let mut up = [false; 5];
    for i in 0..5 {
        if is_proper_subset(seq[i], seq[i + 1]) {
            up[i] = true;
        } else if !is_proper_subset(seq[i + 1], seq[i]) {
            return Err(Error::Precondition(format!("sets {i} and {} incomparable", i + 1)));
        }
    }
    // Longest run of equal steps; first occurrence wins.
    let (mut start, mut steps) = (0, 1);
    let mut i = 0;
    while i < 5 {
        let mut j = i;
        while j + 1 < 5 && up[j + 1] == up[i] {
            j += 1;
        }
        if j - i + 1 > steps {
            start = i;
            steps = j - i + 1;
        }
        i = j + 1;
    }
    let m = steps + 1;
    // Analysis is written for an increasing run; a decreasing run is its dual.
    let ascending = up[start];
    let orient = |w: WOrM| if ascending { w } else { w.flip() };
    let s = start;
    let (which, idx) = match m {
        5 | 6 => {
            // s1 ⊂ s2 ⊂ s3 ⊂ s4 ⊂ s5 as W: b=s1, d=s2, a=s3, c=s4, e=s5.
            let c: Vec<usize> = if ascending {
                (s..s + 5).collect()
            } else {
                (s..s + 5).rev().collect()
            };
            (WOrM::W, [c[2], c[0], c[3], c[1], c[4]])
        }
        4 => {
            if s >= 1 {
                (orient(WOrM::W), [s - 1, s, s + 2, s + 1, s + 3])
            } else {
                (orient(WOrM::M), [s, s + 2, s + 1, s + 3, s + 4])
            }
        }
        3 => {
            if s <= 1 {
                if up[s + 3] == ascending {
                    (orient(WOrM::W), [s + 1, s, s + 2, s + 3, s + 4])
                } else {
                    (orient(WOrM::W), [s + 1, s, s + 2, s + 4, s + 3])
                }
            } else if up[s - 2] == ascending {
                (orient(WOrM::M), [s - 2, s - 1, s, s + 2, s + 1])
            } else {
                (orient(WOrM::M), [s - 1, s - 2, s, s + 2, s + 1])
            }
        }
        2 => {
            if up[0] {
                (WOrM::M, [0, 1, 2, 3, 4])
            } else {
                (WOrM::W, [0, 1, 2, 3, 4])
            }
        }
        _ => unreachable!("run length between 2 and 6"),
    };
    Ok(ZigzagWitness {
        which,
        indices: idx,
        run: m,
    })
}

/// Re-checks a zigzag witness: the named assignment must respect every
/// relation of W (or M), and the embedding engine must find the same poset
/// in the five chosen sets.
pub fn verify_zigzag_witness(seq: &[Mask], w: &ZigzagWitness) -> bool {
    let p = match w.which {
        WOrM::W => w_poset(),
        WOrM::M => m_poset(),
    };
    let img: Vec<Mask> = w.indices.iter().map(|&i| seq[i]).collect();
    let mut distinct = img.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 5 {
        return false;
    }
    let direct = p
        .relations()
        .into_iter()
        .all(|(lo, hi)| is_proper_subset(img[lo], img[hi]));
    let n = seq.iter().map(|&m| 32 - m.leading_zeros() as usize).max().unwrap_or(0);
    let fam = SetFamily::new(n, distinct).expect("masks in range");
    direct && find_embedding(&fam, &p).is_some()
}

/// Whether a graph on `members` (edges = comparable pairs) has a simple path
/// through `k` vertices.
pub fn has_path_on(members: &[Mask], k: usize) -> bool {
    fn extend(members: &[Mask], path: &mut Vec<usize>, k: usize) -> bool {
        if path.len() == k {
            return true;
        }
        let last = members[*path.last().expect("non-empty path")];
        for i in 0..members.len() {
            if !path.contains(&i) && comparable(last, members[i]) {
                path.push(i);
                if extend(members, path, k) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    if k == 0 {
        return true;
    }
    (0..members.len()).any(|s| extend(members, &mut vec![s], k))
}

/// `|E| ≤ 2|V|` for a comparability graph without a 6-vertex path.
pub fn erdos_gallai_check(components: &ComparabilityComponents) -> Result<bool> {
    if let Some(c) = components.components.iter().find(|c| has_path_on(&c.members, 6)) {
        return Err(Error::Precondition(format!(
            "comparability graph has a 6-vertex path in component {:?}",
            c.members
        )));
    }
    Ok(components.total_edges() <= 2 * components.total_vertices())
}

/// Containment bound above which the type I argument is not used.
pub const TYPE_I_MAX_CONTAINMENTS: usize = 100;
/// Antichain share (numerator, denominator) that makes a component type II.
pub const TYPE_II_ANTICHAIN_SHARE: (usize, usize) = (5, 6);
/// Members per component beyond which the exact antichain search is refused.
pub const MAX_COMPONENT_MEMBERS: usize = 20;

/// Diagnostics for one component of a `𝒫_5`-free family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P5ComponentRecord {
    pub members: Vec<Mask>,
    /// Containments `c` inside the component.
    pub containments: usize,
    pub hull_size: usize,
    pub max_antichain: usize,
    #[serde(with = "crate::bignum")]
    pub chains_meeting_hull: BigUint,
    /// `c·n!/(5·C(n−2,⌊n/2⌋−1))`, as `num/den`.
    pub threshold: String,
    /// `chains_meeting_hull / threshold`, absent when `c = 0`.
    pub ratio: Option<String>,
    pub below_threshold: bool,
    /// `c ≤ 100` and hull has at least `c` sets.
    pub type_i: bool,
    /// Largest antichain holds at least `5c/6` members.
    pub type_ii: bool,
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn max_antichain(members: &[Mask]) -> usize {
    fn go(members: &[Mask], i: usize, chosen: &mut Vec<Mask>, best: &mut usize) {
        if chosen.len() + (members.len() - i) <= *best {
            return;
        }
        if i == members.len() {
            *best = chosen.len();
            return;
        }
        let x = members[i];
        if chosen.iter().all(|&c| !comparable(c, x)) {
            chosen.push(x);
            go(members, i + 1, chosen, best);
            chosen.pop();
        }
        go(members, i + 1, chosen, best);
    }
    let mut best = 0;
    go(members, 0, &mut Vec::new(), &mut best);
    best
}

pub fn p5_component_report(n: usize, family: &SetFamily) -> Result<Vec<P5ComponentRecord>> {
    check_dimension("p5_component_report", n, 2, 7)?;
    if family.n() != n {
        return Err(Error::Precondition("family dimension mismatch".into()));
    }
    if !is_free(family, &path_hasse_family(5, None)?) {
        return Err(Error::Precondition("family contains a member of 𝒫_5".into()));
    }
    let denom = binomial(n - 2, n / 2 - 1) * 5u32;
    let mut out = Vec::new();
    for comp in comparability_components(family).components {
        if comp.members.len() > MAX_COMPONENT_MEMBERS {
            return Err(Error::Precondition(format!(
                "component with {} members exceeds {MAX_COMPONENT_MEMBERS}",
                comp.members.len()
            )));
        }
        let c = comp.edges;
        let sub = SetFamily::new(n, comp.members.iter().copied())?;
        let hull = convex_hull(&sub);
        let meeting = lattice::chains_meeting(n, &hull)?;
        let threshold = BigRational::new(
            BigInt::from(factorial(n) * c),
            BigInt::from(denom.clone()),
        );
        let ratio = (!threshold.is_zero())
            .then(|| BigRational::from_integer(BigInt::from(meeting.clone())) / &threshold);
        let anti = max_antichain(&comp.members);
        let (num, den) = TYPE_II_ANTICHAIN_SHARE;
        out.push(P5ComponentRecord {
            containments: c,
            hull_size: hull.len(),
            max_antichain: anti,
            below_threshold: BigRational::from_integer(BigInt::from(meeting.clone())) < threshold,
            chains_meeting_hull: meeting,
            threshold: rational_string(&threshold),
            ratio: ratio.as_ref().map(rational_string),
            type_i: c <= TYPE_I_MAX_CONTAINMENTS && hull.len() >= c,
            type_ii: anti * den >= num * c,
            members: comp.members,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{middle_two_levels, p5_construction, p6_construction, MiddleVariant};
    use crate::lattice::level_family;

    fn fam(n: usize, masks: &[Mask]) -> SetFamily {
        SetFamily::new(n, masks.iter().copied()).unwrap()
    }

    #[test]
    fn coloring_examples() {
        let f = middle_two_levels(4, MiddleVariant::Low).unwrap();
        let c = color_family(4, &f, 2).unwrap();
        for m in 0..16 {
            assert_eq!(c.is_blue(m), popcount(m) <= 2, "mask {m:b}");
        }
        assert_eq!(c.critical_pairs().len(), 12);
        let per_chain = critical_pairs_per_chain(4, &c).unwrap();
        assert_eq!(per_chain.len(), 24);
        assert!(per_chain.iter().all(|&k| k == 1));

        let empty = color_family(3, &SetFamily::empty(3).unwrap(), 1).unwrap();
        assert!(empty.blue_sets().is_empty());
        assert!(empty.critical_pairs().is_empty());

        let full = color_family(3, &SetFamily::full(3).unwrap(), 1).unwrap();
        assert_eq!(full.blue_sets(), (0..7).collect::<Vec<_>>());
        assert_eq!(full.critical_pairs(), &[(3, 7), (5, 7), (6, 7)]);
        assert!(check_one_critical_pair_per_chain(3, &full).unwrap());

        assert!(color_family(13, &SetFamily::empty(13).unwrap(), 1).is_err());
        assert!(color_family(3, &SetFamily::empty(3).unwrap(), 0).is_err());
        assert!(check_one_critical_pair_per_chain(9, &color_family(9, &SetFamily::empty(9).unwrap(), 1).unwrap()).is_err());
    }

    #[test]
    fn coloring_structure_on_random_families() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let masks: Vec<Mask> = (0..32).filter(|_| rng.gen_bool(0.3)).collect();
            let f = fam(5, &masks);
            for t in [2, 3] {
                let c = color_family(5, &f, t).unwrap();
                assert!(c.blue_is_downset() && c.red_is_upset());
                assert!(check_one_critical_pair_per_chain(5, &c).unwrap());
                for &(g, h) in c.critical_pairs() {
                    assert!(c.is_blue(g) && !c.is_blue(h));
                    assert!(is_proper_subset(g, h) && popcount(h) == popcount(g) + 1);
                }
            }
        }
    }

    #[test]
    fn nfree_classification_examples() {
        assert_eq!(
            classify_nfree_components(&fam(3, &[0, 1, 2, 4])).unwrap(),
            vec![ComponentClass::Star { center: 0, leaves: vec![1, 2, 4] }]
        );
        assert_eq!(
            classify_nfree_components(&fam(3, &[1, 3, 7])).unwrap(),
            vec![ComponentClass::Triangle { chain: [1, 3, 7] }]
        );
        match classify_nfree_components(&fam(3, &[0, 1, 2, 4, 7])) {
            Err(Refusal::NotNFree(w)) => {
                assert!(w.is_valid_for(&n_poset(), &fam(3, &[0, 1, 2, 4, 7])));
            }
            other => panic!("expected refusal, got {other:?}"),
        }
        let singles = classify_nfree_components(&level_family(3, &[1]).unwrap()).unwrap();
        assert_eq!(singles.len(), 3);
    }

    #[test]
    fn zigzag_examples() {
        // 6-chain ∅ ⊂ 1 ⊂ 12 ⊂ 123 ⊂ 1234 ⊂ 12345.
        let seq = [0, 1, 3, 7, 15, 31];
        let w = zigzag_find_wm(5, &seq).unwrap();
        assert_eq!(w.which, WOrM::W);
        assert_eq!(w.run, 6);
        let mut used = w.indices.to_vec();
        used.sort_unstable();
        assert_eq!(used, vec![0, 1, 2, 3, 4]);
        assert!(verify_zigzag_witness(&seq, &w));
        // A 5-chain also carries M.
        let chain5 = fam(5, &seq[..5]);
        assert!(find_embedding(&chain5, &m_poset()).is_some());

        // ∅ ⊂ 12 ⊃ 1 ⊂ 13 ⊃ 3 ⊂ 23.
        let seq = [0, 3, 1, 5, 4, 6];
        let w = zigzag_find_wm(3, &seq).unwrap();
        assert_eq!(w.which, WOrM::M);
        assert_eq!(w.indices, [0, 1, 2, 3, 4]);
        assert!(verify_zigzag_witness(&seq, &w));
        // The other five form W.
        let rest = fam(3, &seq[1..]);
        assert!(find_embedding(&rest, &w_poset()).is_some());

        assert!(zigzag_find_wm(3, &[0, 1, 3, 7, 1, 0]).is_err());
        assert!(zigzag_find_wm(3, &[0, 1, 2, 3, 5, 7]).is_err());
        assert!(zigzag_find_wm(3, &[0, 1, 3]).is_err());
    }

    #[test]
    fn zigzag_each_run_length() {
        // Hand-built sequences covering m = 3 and m = 4 in both directions.
        let cases: &[[Mask; 6]] = &[
            [1, 3, 7, 15, 14, 30],   // m=4 at start
            [3, 1, 5, 13, 29, 28],   // m=4 after a down step
            [1, 3, 7, 6, 14, 12],    // m=3 at start, then down
            [1, 3, 7, 6, 4, 12],     // m=3 at start, then down, down
            [6, 2, 3, 7, 15, 13],    // m=3 late
            [30, 14, 6, 2, 3, 1],    // decreasing m=4
        ];
        for seq in cases {
            let w = zigzag_find_wm(5, seq).unwrap();
            assert!(verify_zigzag_witness(seq, &w), "{seq:?} -> {w:?}");
        }
    }

    #[test]
    fn erdos_gallai_examples() {
        let star = comparability_components(&fam(5, &[0, 1, 2, 4, 8, 16]));
        assert!(erdos_gallai_check(&star).unwrap());
        let tri = comparability_components(&fam(3, &[1, 3, 7]));
        assert!(erdos_gallai_check(&tri).unwrap());
        let p6 = comparability_components(&p6_construction(5).unwrap());
        assert_eq!((p6.total_edges(), p6.total_vertices()), (21, 12));
        assert!(erdos_gallai_check(&p6).unwrap());
        let long = comparability_components(&fam(5, &[0, 1, 3, 7, 15, 31]));
        assert!(erdos_gallai_check(&long).is_err());
    }

    #[test]
    fn p5_reports() {
        let f = p5_construction(6).unwrap();
        let r = p5_component_report(6, &f).unwrap();
        assert_eq!(r.len(), 6);
        for rec in &r {
            assert_eq!((rec.containments, rec.hull_size, rec.max_antichain), (5, 4, 2));
            // Interval of width 2 through a 2-set in [6]: 720 / C(4,2).
            assert_eq!(rec.chains_meeting_hull, BigUint::from(120u32));
            assert_eq!(rec.threshold, "120");
            assert_eq!(rec.ratio.as_deref(), Some("1"));
            assert!(!rec.below_threshold);
        }

        let r = p5_component_report(5, &fam(5, &[1, 3, 7])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].containments, 3);
        assert_eq!(r[0].hull_size, 4);
        assert_eq!(r[0].chains_meeting_hull, lattice::chains_meeting(5, &fam(5, &[1, 3, 5, 7])).unwrap());

        let r = p5_component_report(6, &level_family(6, &[3]).unwrap()).unwrap();
        assert_eq!(r.len(), 20);
        assert!(r.iter().all(|x| x.containments == 0 && x.ratio.is_none()));

        assert!(p5_component_report(5, &fam(5, &[0, 1, 3, 7, 15])).is_err());
        assert!(p5_component_report(8, &SetFamily::empty(8).unwrap()).is_err());
    }

    #[test]
    fn path_search() {
        assert!(has_path_on(&[0, 1, 3], 3));
        assert!(!has_path_on(&[1, 2, 4], 2));
    }
}
