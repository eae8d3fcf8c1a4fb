//! Seeded property suites over the proof machinery. Every random instance
//! draws from its own ChaCha stream keyed by (seed, lemma, index), so
//! reports are identical across thread counts and execution modes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    check_one_critical_pair_per_chain, classify_nfree_components, color_family,
    erdos_gallai_check, has_path_on, verify_zigzag_witness, zigzag_find_wm, ComponentClass,
    WOrM, ZigzagWitness,
};
use crate::embedding::is_free;
use crate::error::{Error, Result};
use crate::exec::{map_range, Exec};
use crate::formulas::{katona_nagy, sublattice};
use crate::lattice::{
    chains_meeting_u64, comparability_components, comparable, full_mask, is_proper_subset,
    is_subset, popcount, Mask, SetFamily,
};
use crate::poset::{n_poset, path_hasse_family, PosetFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    Sublattice,
    Chaincount,
    Coloring,
    Zigzag,
    NfreeComponents,
    ErdosGallai,
}

impl Lemma {
    pub const ALL: [Lemma; 6] = [
        Lemma::Sublattice,
        Lemma::Chaincount,
        Lemma::Coloring,
        Lemma::Zigzag,
        Lemma::NfreeComponents,
        Lemma::ErdosGallai,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Sublattice => "sublattice",
            Lemma::Chaincount => "chaincount",
            Lemma::Coloring => "coloring",
            Lemma::Zigzag => "zigzag",
            Lemma::NfreeComponents => "nfree-components",
            Lemma::ErdosGallai => "erdos-gallai",
        }
    }

    fn stream_tag(self) -> u64 {
        Lemma::ALL.iter().position(|&l| l == self).expect("listed") as u64 + 1
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Lemma> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown lemma {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub instances_checked: u64,
    pub failures: u64,
    pub seed: u64,
    /// Description of the first failing instance, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Outcome of one instance: `None` on success, a description otherwise.
type Outcome = Option<String>;

struct Tally {
    checked: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            checked: 0,
            failures: 0,
            first: None,
        }
    }

    fn add(&mut self, outcomes: impl IntoIterator<Item = Outcome>) {
        for o in outcomes {
            self.checked += 1;
            if let Some(msg) = o {
                self.failures += 1;
                self.first.get_or_insert(msg);
            }
        }
    }
}

fn instance_rng(seed: u64, lemma: Lemma, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(lemma.stream_tag() << 48 | index);
    rng
}

fn random_family(rng: &mut ChaCha8Rng, n: usize) -> SetFamily {
    let p: f64 = rng.gen_range(0.05..0.6);
    let masks: Vec<Mask> = (0..=full_mask(n)).filter(|_| rng.gen_bool(p)).collect();
    SetFamily::new(n, masks).expect("masks within [n]")
}

fn random_t_family(rng: &mut ChaCha8Rng, n: usize, t: usize) -> SetFamily {
    let all: Vec<Mask> = (0..=full_mask(n)).collect();
    let pick: Vec<Mask> = all.choose_multiple(rng, t).copied().collect();
    SetFamily::new(n, pick).expect("masks within [n]")
}

/// Grows a family in random order, keeping each set only if `keep` still
/// holds afterwards, and stops at a random target size.
fn random_greedy_family(
    rng: &mut ChaCha8Rng,
    n: usize,
    keep: impl Fn(&SetFamily) -> bool,
) -> SetFamily {
    let mut order: Vec<Mask> = (0..=full_mask(n)).collect();
    order.shuffle(rng);
    let target = rng.gen_range(1..=order.len());
    let mut cur = SetFamily::empty(n).expect("n in range");
    for m in order {
        if cur.len() >= target {
            break;
        }
        let next = cur.union(&SetFamily::new(n, [m]).expect("in range"));
        if keep(&next) {
            cur = next;
        }
    }
    cur
}

fn all_families(n: usize) -> impl Iterator<Item = SetFamily> {
    let size = 1usize << n;
    (0u64..1 << size).map(move |bits| {
        let masks = (0..size as Mask).filter(|&m| bits >> m & 1 == 1);
        SetFamily::new(n, masks).expect("in range")
    })
}

fn sublattice_suite(exec: Exec) -> Tally {
    let mut tally = Tally::new();
    for n in 3..=6 {
        let full = full_mask(n);
        let pairs: Vec<(Mask, Mask)> = (0..=full)
            .flat_map(|b| (0..=full).filter(move |&a| is_proper_subset(a, b)).map(move |a| (a, b)))
            .collect();
        tally.add(map_range(exec, pairs.len(), |i| {
            let (a, b) = pairs[i];
            let interval: Vec<Mask> = (0..=full).filter(|&x| is_subset(a, x) && is_subset(x, b)).collect();
            let fam = SetFamily::new(n, interval).expect("in range");
            let brute = chains_meeting_u64(Exec::Sequential, n, &fam).expect("n ≤ 8");
            let closed = sublattice(n, popcount(a), popcount(b)).expect("a < b ≤ n");
            (closed != brute.into()).then(|| format!("n={n} A={a:b} B={b:b}: {closed} vs {brute}"))
        }));
    }
    tally
}

fn chaincount_check(n: usize, fam: &SetFamily) -> Outcome {
    let chains = chains_meeting_u64(Exec::Sequential, n, fam).expect("n ≤ 8");
    let bound = katona_nagy(n, fam.len()).expect("t ≥ 1");
    (BigRational::from_integer(BigInt::from(chains)) < bound)
        .then(|| format!("n={n} F={:?}: {chains} < {bound}", fam.masks()))
}

fn chaincount_suite(seed: u64, exec: Exec) -> Tally {
    let mut tally = Tally::new();
    for t in 1..=4 {
        let subsets = k_subsets(16, t);
        tally.add(map_range(exec, subsets.len(), |i| {
            chaincount_check(4, &SetFamily::new(4, subsets[i].iter().copied()).expect("in range"))
        }));
    }
    for (slot, n) in [6usize, 8].into_iter().enumerate() {
        tally.add(map_range(exec, 1000, |i| {
            let mut rng = instance_rng(seed, Lemma::Chaincount, (slot * 1000 + i) as u64);
            let t = rng.gen_range(1..=6);
            chaincount_check(n, &random_t_family(&mut rng, n, t))
        }));
    }
    tally
}

fn k_subsets(size: u32, k: usize) -> Vec<Vec<Mask>> {
    (0u32..1 << size)
        .filter(|b| b.count_ones() as usize == k)
        .map(|b| (0..size).filter(|i| b >> i & 1 == 1).collect())
        .collect()
}

fn coloring_check(n: usize, fam: &SetFamily, t: usize) -> Outcome {
    let c = color_family(n, fam, t).expect("n ≤ 12, t ≥ 1");
    let pairs_ok = c.critical_pairs().iter().all(|&(g, h)| {
        c.is_blue(g) && !c.is_blue(h) && is_proper_subset(g, h) && popcount(h) == popcount(g) + 1
    });
    let ok = c.blue_is_downset()
        && c.red_is_upset()
        && pairs_ok
        && check_one_critical_pair_per_chain(n, &c).expect("n ≤ 8");
    (!ok).then(|| format!("n={n} t={t} F={:?}", fam.masks()))
}

fn coloring_suite(seed: u64, exec: Exec) -> Tally {
    let mut tally = Tally::new();
    let fams: Vec<SetFamily> = all_families(3).collect();
    tally.add(
        map_range(exec, fams.len(), |i| {
            (1..=3).filter_map(|t| coloring_check(3, &fams[i], t)).next()
        }),
    );
    tally.add(map_range(exec, 500, |i| {
        let n = 4 + i % 5;
        let mut rng = instance_rng(seed, Lemma::Coloring, i as u64);
        let fam = random_family(&mut rng, n);
        (1..=3).filter_map(|t| coloring_check(n, &fam, t)).next()
    }));
    tally
}

/// Every sequence of six distinct subsets of `[n]` with consecutive sets
/// comparable.
pub fn zigzag_sequences(n: usize) -> Vec<[Mask; 6]> {
    fn extend(n: usize, seq: &mut Vec<Mask>, out: &mut Vec<[Mask; 6]>) {
        if seq.len() == 6 {
            out.push(seq[..].try_into().expect("six sets"));
            return;
        }
        let last = *seq.last().expect("non-empty");
        for m in 0..=full_mask(n) {
            if m != last && comparable(m, last) && !seq.contains(&m) {
                seq.push(m);
                extend(n, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..=full_mask(n) {
        extend(n, &mut vec![s], &mut out);
    }
    out
}

/// A random zigzag 6-sequence in `2^[n]`: a walk that steps to a uniformly
/// chosen unused comparable set, restarting on dead ends.
pub fn random_zigzag(rng: &mut impl Rng, n: usize) -> [Mask; 6] {
    assert!(n >= 3, "2^[2] has fewer than six sets");
    loop {
        let mut seq = vec![rng.gen_range(0..=full_mask(n))];
        while seq.len() < 6 {
            let last = *seq.last().expect("non-empty");
            let options: Vec<Mask> = (0..=full_mask(n))
                .filter(|&m| m != last && comparable(m, last) && !seq.contains(&m))
                .collect();
            match options.choose(rng) {
                Some(&m) => seq.push(m),
                None => break,
            }
        }
        if seq.len() == 6 {
            return seq[..].try_into().expect("six sets");
        }
    }
}

fn zigzag_check(n: usize, seq: &[Mask; 6]) -> Outcome {
    match zigzag_find_wm(n, seq) {
        Ok(w) if verify_zigzag_witness(seq, &w) => None,
        Ok(w) => Some(format!("{seq:?}: unverified {w:?}")),
        Err(e) => Some(format!("{seq:?}: {e}")),
    }
}

/// For an alternating sequence, `A_1..A_5` in order realize one of M and W
/// and `A_2..A_6` in order realize the other.
fn alternating_windows_check(seq: &[Mask; 6]) -> Outcome {
    let in_order = |start: usize, which: WOrM| {
        let w = ZigzagWitness {
            which,
            indices: [start, start + 1, start + 2, start + 3, start + 4],
            run: 2,
        };
        verify_zigzag_witness(seq, &w)
    };
    let ok = (in_order(0, WOrM::M) && in_order(1, WOrM::W))
        || (in_order(0, WOrM::W) && in_order(1, WOrM::M));
    (!ok).then(|| format!("{seq:?}: windows do not realize one M and one W"))
}

fn zigzag_suite(seed: u64, exec: Exec) -> Tally {
    let mut tally = Tally::new();
    let seqs = zigzag_sequences(3);
    tally.add(map_range(exec, seqs.len(), |i| {
        let seq = &seqs[i];
        zigzag_check(3, seq).or_else(|| {
            let alternating = zigzag_find_wm(3, seq).map(|w| w.run == 2).unwrap_or(false);
            if alternating {
                alternating_windows_check(seq)
            } else {
                None
            }
        })
    }));
    tally.add(map_range(exec, 10_000, |i| {
        let n = 4 + i % 5;
        let mut rng = instance_rng(seed, Lemma::Zigzag, i as u64);
        zigzag_check(n, &random_zigzag(&mut rng, n))
    }));
    tally
}

fn nfree_check(fam: &SetFamily) -> Outcome {
    match classify_nfree_components(fam) {
        Ok(classes) => {
            let comps = comparability_components(fam);
            let shapes_ok = classes.len() == comps.components.len()
                && classes.iter().zip(&comps.components).all(|(c, comp)| match c {
                    ComponentClass::Triangle { chain } => {
                        comp.members.len() == 3 && comp.edges == 3 && chain.iter().all(|m| comp.members.contains(m))
                    }
                    ComponentClass::Star { center, leaves } => {
                        comp.members.len() == leaves.len() + 1
                            && comp.members.contains(center)
                            && comp.edges == leaves.len()
                    }
                });
            (!shapes_ok).then(|| format!("F={:?}: inconsistent classes", fam.masks()))
        }
        Err(e) => Some(format!("F={:?}: refused {e:?}", fam.masks())),
    }
}

fn nfree_suite(seed: u64, exec: Exec) -> Tally {
    let mut tally = Tally::new();
    let n_family = PosetFamily::single(n_poset());
    let fams: Vec<SetFamily> = all_families(3).filter(|f| is_free(f, &n_family)).collect();
    tally.add(map_range(exec, fams.len(), |i| nfree_check(&fams[i])));
    tally.add(map_range(exec, 500, |i| {
        let n = 4 + i % 2;
        let mut rng = instance_rng(seed, Lemma::NfreeComponents, i as u64);
        let fam = random_greedy_family(&mut rng, n, |f| is_free(f, &n_family));
        nfree_check(&fam)
    }));
    tally
}

fn no_six_path(fam: &SetFamily) -> bool {
    comparability_components(fam)
        .components
        .iter()
        .all(|c| !has_path_on(&c.members, 6))
}

fn erdos_gallai_instance(fam: &SetFamily, p6: &PosetFamily) -> Outcome {
    // Path search and the embedding engine must agree on the precondition.
    if is_free(fam, p6) != no_six_path(fam) {
        return Some(format!("F={:?}: path search disagrees with 𝒫_6 freeness", fam.masks()));
    }
    match erdos_gallai_check(&comparability_components(fam)) {
        Ok(true) => None,
        Ok(false) => Some(format!("F={:?}: more than 2|V| edges", fam.masks())),
        Err(e) => Some(format!("F={:?}: {e}", fam.masks())),
    }
}

fn erdos_gallai_suite(seed: u64, exec: Exec) -> Tally {
    let mut tally = Tally::new();
    let p6 = path_hasse_family(6, None).expect("k in range");
    // Exhaustive at n=3: families with a 6-path are checked for agreement
    // between the two freeness tests only.
    let fams: Vec<SetFamily> = all_families(3).collect();
    tally.add(map_range(exec, fams.len(), |i| {
        let fam = &fams[i];
        if no_six_path(fam) {
            erdos_gallai_instance(fam, &p6)
        } else {
            is_free(fam, &p6)
                .then(|| format!("F={:?}: 6-path missed by 𝒫_6 check", fam.masks()))
        }
    }));
    tally.add(map_range(exec, 300, |i| {
        let n = 4 + i % 3;
        let mut rng = instance_rng(seed, Lemma::ErdosGallai, i as u64);
        let fam = random_greedy_family(&mut rng, n, no_six_path);
        erdos_gallai_instance(&fam, &p6)
    }));
    tally
}

pub fn verify_lemma(lemma: Lemma, seed: u64, exec: Exec) -> LemmaReport {
    let tally = match lemma {
        Lemma::Sublattice => sublattice_suite(exec),
        Lemma::Chaincount => chaincount_suite(seed, exec),
        Lemma::Coloring => coloring_suite(seed, exec),
        Lemma::Zigzag => zigzag_suite(seed, exec),
        Lemma::NfreeComponents => nfree_suite(seed, exec),
        Lemma::ErdosGallai => erdos_gallai_suite(seed, exec),
    };
    LemmaReport {
        lemma: lemma.name().to_string(),
        instances_checked: tally.checked,
        failures: tally.failures,
        seed,
        first_failure: tally.first,
    }
}

pub fn verify_all(seed: u64, exec: Exec) -> Vec<LemmaReport> {
    Lemma::ALL.iter().map(|&l| verify_lemma(l, seed, exec)).collect()
}
