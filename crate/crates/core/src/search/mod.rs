//! Exact `La(n, forbidden, #Q)`: the largest number of copies of `Q` in a
//! subfamily of `2^[n]` containing no member of `forbidden` as a weak
//! subposet.
//!
//! [`la_exact`] runs an include/exclude depth-first search over the lattice
//! elements (middle levels first). A branch is cut when including an element
//! creates a forbidden copy, or when the copies available in
//! `current ∪ remaining` cannot beat the incumbent. The top of the tree is
//! split into independent subtrees, each seeded with the same greedy lower
//! bound, so reports do not depend on the thread count.

mod cache;

pub use cache::{la_exact_cached, CacheRecord, ResultCache, CACHE_ENV_VAR, DEFAULT_CACHE_FILE};

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::embedding::{self, count_copies_u128, embeds_using, find_embedding_seeded, longest_chain};
use crate::error::{check_dimension, Error, Result};
use crate::exec::{self, Exec};
use crate::formulas::{chain_count_in_levels, LevelTuple};
use crate::lattice::{full_mask, is_subset, level_family, popcount, Mask, SetFamily};
use crate::poset::{Poset, PosetFamily};

/// Default number of witness families kept in a report.
pub const DEFAULT_WITNESS_CAP: usize = 16;
/// Largest `n` searched without a node budget.
pub const MAX_EXACT_N: usize = 4;
/// Largest `n` searched at all (needs a budget).
pub const MAX_BUDGETED_N: usize = 5;
/// Elements decided before the tree is split into independent subtrees.
const SPLIT_DEPTH: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Node limit; `None` means unlimited.
    pub budget: Option<u64>,
    pub witness_cap: usize,
    /// Disable the copy-count bound (pruning on forbidden copies stays on).
    pub no_bound: bool,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            witness_cap: DEFAULT_WITNESS_CAP,
            no_bound: false,
            exec: Exec::default(),
        }
    }
}

/// Outcome of an exact or level-restricted search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    /// Canonical keys of the forbidden posets.
    pub forbidden: Vec<String>,
    /// Canonical key of the counted poset.
    pub q: String,
    #[serde(with = "crate::bignum")]
    pub optimum: BigUint,
    /// Optimal families (ascending mask lists), lexicographically least first.
    pub witnesses: Vec<Vec<Mask>>,
    /// For level searches: the optimal level sets.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness_levels: Vec<Vec<usize>>,
    pub nodes_explored: u64,
    /// True only when the whole space was covered or soundly pruned.
    pub complete: bool,
    pub budget: Option<u64>,
}

/// Search order: `|2·|x| − n|` ascending, ties by mask value.
pub fn element_order(n: usize) -> Vec<Mask> {
    let mut order: Vec<Mask> = (0..=full_mask(n)).collect();
    order.sort_by_key(|&m| ((2 * popcount(m)).abs_diff(n), m));
    order
}

fn copies(exec: Exec, masks: &[Mask], n: usize, q: &Poset) -> u128 {
    let fam = SetFamily::new(n, masks.iter().copied()).expect("masks in range");
    count_copies_u128(exec, &fam, q)
}

struct Problem<'a> {
    n: usize,
    order: Vec<Mask>,
    forbidden: &'a PosetFamily,
    q: &'a Poset,
    no_bound: bool,
    witness_cap: usize,
}

impl Problem<'_> {
    /// Does adding `x` to `current` (already free) create a forbidden copy?
    fn breaks_freeness(&self, current: &[Mask], x: Mask) -> bool {
        if self.forbidden.is_empty() {
            return false;
        }
        let mut with: Vec<Mask> = current.to_vec();
        with.push(x);
        let fam = SetFamily::new(self.n, with).expect("masks in range");
        self.forbidden.iter().any(|p| {
            if p.is_chain() {
                longest_chain(&fam) >= p.size()
            } else {
                embeds_using(&fam, p, x)
            }
        })
    }

    /// Greedy free family in search order; its value seeds every subtree.
    fn greedy_seed(&self) -> (u128, Vec<Mask>) {
        let mut current = Vec::new();
        for &x in &self.order {
            if !self.breaks_freeness(&current, x) {
                current.push(x);
            }
        }
        current.sort_unstable();
        (copies(Exec::Sequential, &current, self.n, self.q), current)
    }
}

/// Per-subtree search state.
struct Subtree<'a> {
    problem: &'a Problem<'a>,
    seed: u128,
    budget: Option<u64>,
    nodes: u64,
    aborted: bool,
    best: Option<u128>,
    witnesses: BTreeSet<Vec<Mask>>,
    current: Vec<Mask>,
    excluded: Vec<bool>,
}

impl Subtree<'_> {
    fn incumbent(&self) -> u128 {
        self.best.map_or(self.seed, |b| b.max(self.seed))
    }

    fn record(&mut self, value: u128) {
        match self.best {
            Some(b) if value < b => return,
            Some(b) if value == b => {}
            _ => {
                self.best = Some(value);
                self.witnesses.clear();
            }
        }
        if value < self.seed {
            return;
        }
        let mut w = self.current.clone();
        w.sort_unstable();
        self.witnesses.insert(w);
        while self.witnesses.len() > self.problem.witness_cap {
            self.witnesses.pop_last();
        }
    }

    fn upper_bound(&self, depth: usize) -> u128 {
        let p = self.problem;
        let mut avail = self.current.clone();
        avail.extend(
            p.order[depth..]
                .iter()
                .enumerate()
                .filter(|(i, _)| !self.excluded[depth + i])
                .map(|(_, &m)| m),
        );
        copies(Exec::Sequential, &avail, p.n, p.q)
    }

    fn dfs(&mut self, depth: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.aborted = true;
                return;
            }
        }
        let p = self.problem;
        if depth == p.order.len() {
            let v = copies(Exec::Sequential, &self.current, p.n, p.q);
            self.record(v);
            return;
        }
        if !p.no_bound && self.upper_bound(depth) < self.incumbent() {
            return;
        }
        let x = p.order[depth];
        if !p.breaks_freeness(&self.current, x) {
            self.current.push(x);
            self.dfs(depth + 1);
            self.current.pop();
        }
        self.excluded[depth] = true;
        self.dfs(depth + 1);
        self.excluded[depth] = false;
    }
}

/// A fixed include/exclude decision for the first `SPLIT_DEPTH` elements.
#[derive(Clone)]
struct Prefix {
    current: Vec<Mask>,
    excluded: Vec<bool>,
}

fn enumerate_prefixes(problem: &Problem, depth: usize) -> (Vec<Prefix>, u64) {
    let mut out = vec![Prefix {
        current: Vec::new(),
        excluded: Vec::new(),
    }];
    let mut internal = 0u64;
    for d in 0..depth {
        let x = problem.order[d];
        let mut next = Vec::with_capacity(out.len() * 2);
        for pre in out {
            internal += 1;
            if !problem.breaks_freeness(&pre.current, x) {
                let mut inc = pre.clone();
                inc.current.push(x);
                inc.excluded.push(false);
                next.push(inc);
            }
            let mut exc = pre;
            exc.excluded.push(true);
            next.push(exc);
        }
        out = next;
    }
    (out, internal)
}

/// Exact `La(n, forbidden, #q)` for `n ≤ 4`; `n = 5` requires a budget and
/// reports `complete = false` if it runs out.
pub fn la_exact(
    n: usize,
    forbidden: &PosetFamily,
    q: &Poset,
    options: &SearchOptions,
) -> Result<SearchReport> {
    check_dimension("la_exact", n, 0, MAX_BUDGETED_N)?;
    if n > MAX_EXACT_N && options.budget.is_none() {
        return Err(Error::BadParameter(format!(
            "la_exact at n={n} needs a node budget"
        )));
    }
    if options.witness_cap == 0 {
        return Err(Error::BadParameter("witness cap must be positive".into()));
    }
    let problem = Problem {
        n,
        order: element_order(n),
        forbidden,
        q,
        no_bound: options.no_bound,
        witness_cap: options.witness_cap,
    };
    let (seed, seed_family) = problem.greedy_seed();
    let split = SPLIT_DEPTH.min(problem.order.len());
    let (prefixes, internal) = enumerate_prefixes(&problem, split);
    let per_budget = options
        .budget
        .map(|b| b.div_ceil(prefixes.len() as u64).max(1));
    let results = exec::map_slice(options.exec, &prefixes, |pre| {
        let mut excluded = pre.excluded.clone();
        excluded.resize(problem.order.len(), false);
        let mut st = Subtree {
            problem: &problem,
            seed,
            budget: per_budget,
            nodes: 0,
            aborted: false,
            best: None,
            witnesses: BTreeSet::new(),
            current: pre.current.clone(),
            excluded,
        };
        st.dfs(split);
        (st.best, st.witnesses, st.nodes.min(per_budget.unwrap_or(u64::MAX)), st.aborted)
    });
    let mut best: Option<u128> = None;
    let mut witnesses: BTreeSet<Vec<Mask>> = BTreeSet::new();
    let mut nodes = internal;
    let mut complete = true;
    for (b, w, nd, aborted) in results {
        nodes += nd;
        complete &= !aborted;
        let Some(b) = b else { continue };
        match best {
            Some(cur) if b < cur => {}
            Some(cur) if b == cur => witnesses.extend(w),
            _ => {
                best = Some(b);
                witnesses = w;
            }
        }
    }
    // Only possible when the budget ran out before the seed family was reached.
    if best.is_none_or(|b| b < seed) {
        best = Some(seed);
        witnesses = BTreeSet::from([seed_family]);
    }
    while witnesses.len() > options.witness_cap {
        witnesses.pop_last();
    }
    Ok(SearchReport {
        n,
        forbidden: forbidden.iter().map(Poset::canonical_key).collect(),
        q: q.canonical_key(),
        optimum: BigUint::from(best.unwrap_or(0)),
        witnesses: witnesses.into_iter().collect(),
        witness_levels: Vec::new(),
        nodes_explored: nodes,
        complete,
        budget: options.budget,
    })
}

/// Whether the union of the levels in `levels` (bitmask over `0..=n`) is
/// free of every forbidden poset. Uses the `S_n` symmetry of level unions:
/// the first placed element may be fixed to one set per level.
fn level_union_free(n: usize, levels: &[usize], forbidden: &PosetFamily) -> bool {
    let fam = level_family(n, levels).expect("levels in range");
    let reps: Vec<Mask> = levels.iter().map(|&k| full_mask(k)).collect();
    forbidden.iter().all(|p| {
        if p.is_chain() {
            levels.len() < p.size()
        } else {
            find_embedding_seeded(&fam, p, &reps).is_none()
        }
    })
}

/// Best union of whole levels: the optimum over all `2^(n+1)` level sets whose
/// union is free of every forbidden poset. Copies of a chain are counted by
/// formula (`n ≤ 16`); other `q` are counted by enumeration (`n ≤ 8`).
pub fn la_levels(n: usize, forbidden: &PosetFamily, q: &Poset) -> Result<SearchReport> {
    let max_n = if q.is_chain() { 16 } else { 8 };
    check_dimension("la_levels", n, 0, max_n)?;
    let all: Vec<u32> = {
        let mut v: Vec<u32> = (0..1u32 << (n + 1)).collect();
        v.sort_by_key(|&s| (s.count_ones(), s));
        v
    };
    let mut bad_minimal: Vec<u32> = Vec::new();
    let mut best: Option<BigUint> = None;
    let mut argmax: Vec<Vec<usize>> = Vec::new();
    let mut checked = 0u64;
    for s in all {
        // Supersets of a non-free level set are not free either.
        if bad_minimal.iter().any(|&b| is_subset(b, s)) {
            continue;
        }
        checked += 1;
        let levels: Vec<usize> = (0..=n).filter(|&k| s >> k & 1 == 1).collect();
        if !level_union_free(n, &levels, forbidden) {
            bad_minimal.push(s);
            continue;
        }
        let value = if q.is_chain() {
            if levels.len() < q.size() {
                BigUint::default()
            } else {
                let t = LevelTuple::new(n, levels.clone())?;
                chain_count_in_levels(n, q.size(), &t)?
            }
        } else {
            embedding::count_copies(&level_family(n, &levels)?, q)
        };
        match &best {
            Some(b) if value < *b => {}
            Some(b) if value == *b => argmax.push(levels),
            _ => {
                best = Some(value);
                argmax = vec![levels];
            }
        }
    }
    argmax.sort();
    let witnesses = if n <= 10 {
        argmax
            .iter()
            .take(DEFAULT_WITNESS_CAP)
            .map(|l| level_family(n, l).map(|f| f.masks().to_vec()))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(SearchReport {
        n,
        forbidden: forbidden.iter().map(Poset::canonical_key).collect(),
        q: q.canonical_key(),
        optimum: best.unwrap_or_default(),
        witnesses,
        witness_levels: argmax,
        nodes_explored: checked,
        complete: true,
        budget: None,
    })
}

/// Certificate check for a claimed family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub free: bool,
    #[serde(with = "crate::bignum")]
    pub copies: BigUint,
}

pub fn verify_witness(family: &SetFamily, forbidden: &PosetFamily, q: &Poset) -> WitnessCheck {
    WitnessCheck {
        free: embedding::is_free(family, forbidden),
        copies: embedding::count_copies(family, q),
    }
}
