//! Weak-subposet embedding: an injection `f` from poset elements to family
//! members with `p < q ⇒ f(p) ⊊ f(q)`. Incomparable elements carry no
//! constraint.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::exec::{self, Exec};
use crate::lattice::{self, full_mask, is_proper_subset, Mask, SetFamily};
use crate::poset::{Poset, PosetFamily};

/// Image of every poset element, indexed by element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EmbeddingWitness {
    pub assignment: Vec<Mask>,
}

impl EmbeddingWitness {
    /// Re-checks injectivity and order preservation.
    pub fn is_valid_for(&self, p: &Poset, family: &SetFamily) -> bool {
        let a = &self.assignment;
        if a.len() != p.size() || !a.iter().all(|&m| family.contains(m)) {
            return false;
        }
        let distinct: HashSet<Mask> = a.iter().copied().collect();
        distinct.len() == a.len()
            && p.relations()
                .into_iter()
                .all(|(lo, hi)| is_proper_subset(a[lo], a[hi]))
    }
}

/// Assignment order plus, per step, the already-placed elements below and
/// above the element being placed.
struct Plan {
    order: Vec<usize>,
    below_placed: Vec<Vec<usize>>,
    above_placed: Vec<Vec<usize>>,
}

impl Plan {
    /// Highest-degree element first (ties by index); afterwards the element
    /// with most relations into the placed set, then degree, then index.
    fn new(p: &Poset, first: Option<usize>) -> Plan {
        let m = p.size();
        let mut placed = 0u32;
        let mut order = Vec::with_capacity(m);
        for step in 0..m {
            let pick = match (step, first) {
                (0, Some(e)) => e,
                _ => (0..m)
                    .filter(|&e| placed >> e & 1 == 0)
                    .max_by_key(|&e| {
                        let links = ((p.below(e) | p.above(e)) & placed).count_ones();
                        (links, p.degree(e), std::cmp::Reverse(e))
                    })
                    .expect("unplaced element"),
            };
            order.push(pick);
            placed |= 1 << pick;
        }
        let mut below_placed = Vec::with_capacity(m);
        let mut above_placed = Vec::with_capacity(m);
        for (i, &e) in order.iter().enumerate() {
            below_placed.push(order[..i].iter().copied().filter(|&f| p.less(f, e)).collect());
            above_placed.push(order[..i].iter().copied().filter(|&f| p.less(e, f)).collect());
        }
        Plan {
            order,
            below_placed,
            above_placed,
        }
    }
}

struct Backtrack<'a> {
    plan: &'a Plan,
    family: &'a [Mask],
    full: Mask,
    image: Vec<Mask>,
}

impl Backtrack<'_> {
    /// Candidate filter for step `step` given the current partial image.
    fn bounds(&self, step: usize) -> (Mask, Mask) {
        let lower = self.plan.below_placed[step]
            .iter()
            .fold(0, |acc, &f| acc | self.image[f]);
        let upper = self.plan.above_placed[step]
            .iter()
            .fold(self.full, |acc, &f| acc & self.image[f]);
        (lower, upper)
    }

    fn used(&self, step: usize, c: Mask) -> bool {
        self.plan.order[..step].iter().any(|&f| self.image[f] == c)
    }

    fn fits(&self, step: usize, c: Mask, lower: Mask, upper: Mask) -> bool {
        c & lower == lower && c & !upper == 0 && !self.used(step, c)
    }

    /// Depth-first search; `visit` returns false to stop.
    fn run(&mut self, step: usize, visit: &mut dyn FnMut(&[Mask]) -> bool) -> bool {
        if step == self.plan.order.len() {
            return visit(&self.image);
        }
        let (lower, upper) = self.bounds(step);
        let e = self.plan.order[step];
        for &c in self.family {
            if self.fits(step, c, lower, upper) {
                self.image[e] = c;
                if !self.run(step + 1, visit) {
                    return false;
                }
            }
        }
        true
    }
}

fn search_from(
    family: &SetFamily,
    p: &Poset,
    plan: &Plan,
    first_candidates: &[Mask],
    visit: &mut dyn FnMut(&[Mask]) -> bool,
) {
    if p.size() == 0 {
        visit(&[]);
        return;
    }
    let mut bt = Backtrack {
        plan,
        family: family.masks(),
        full: full_mask(family.n()),
        image: vec![0; p.size()],
    };
    let e = plan.order[0];
    for &c in first_candidates {
        bt.image[e] = c;
        if !bt.run(1, visit) {
            return;
        }
    }
}

/// Lexicographically least witness under the assignment order, if any.
pub fn find_embedding(family: &SetFamily, p: &Poset) -> Option<EmbeddingWitness> {
    find_embedding_seeded(family, p, family.masks())
}

/// Like [`find_embedding`] but the first placed element only ranges over
/// `first_candidates`. Sound whenever every embedding can be moved onto one
/// whose first image lies in that list (e.g. orbit representatives of a
/// symmetric family).
pub(crate) fn find_embedding_seeded(
    family: &SetFamily,
    p: &Poset,
    first_candidates: &[Mask],
) -> Option<EmbeddingWitness> {
    if p.size() > family.len() {
        return None;
    }
    let plan = Plan::new(p, None);
    let mut found = None;
    search_from(family, p, &plan, first_candidates, &mut |img| {
        found = Some(img.to_vec());
        false
    });
    found.map(|assignment| EmbeddingWitness { assignment })
}

/// Whether some embedding of `p` into `family` uses the member `must`.
pub(crate) fn embeds_using(family: &SetFamily, p: &Poset, must: Mask) -> bool {
    if p.size() > family.len() || !family.contains(must) {
        return false;
    }
    (0..p.size()).any(|e| {
        let plan = Plan::new(p, Some(e));
        let mut hit = false;
        search_from(family, p, &plan, &[must], &mut |_| {
            hit = true;
            false
        });
        hit
    })
}

/// Number of elements on a longest chain of the family.
pub fn longest_chain(family: &SetFamily) -> usize {
    let mut by_size: Vec<Mask> = family.masks().to_vec();
    by_size.sort_by_key(|&m| (m.count_ones(), m));
    let mut best = vec![1usize; by_size.len()];
    for i in 0..by_size.len() {
        for j in 0..i {
            if is_proper_subset(by_size[j], by_size[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// True iff no member of `forbidden` is a weak subposet of `family`.
pub fn is_free(family: &SetFamily, forbidden: &PosetFamily) -> bool {
    first_violation(family, forbidden).is_none()
}

/// First forbidden poset (by position) that embeds, with its witness.
pub fn first_violation(
    family: &SetFamily,
    forbidden: &PosetFamily,
) -> Option<(usize, EmbeddingWitness)> {
    forbidden.iter().enumerate().find_map(|(i, p)| {
        if p.is_chain() && longest_chain(family) < p.size() {
            return None;
        }
        find_embedding(family, p).map(|w| (i, w))
    })
}

/// Number of `|Q|`-element subfamilies that `Q` embeds onto.
pub fn count_copies(family: &SetFamily, q: &Poset) -> BigUint {
    count_copies_with(Exec::default(), family, q)
}

pub fn count_copies_with(exec: Exec, family: &SetFamily, q: &Poset) -> BigUint {
    BigUint::from(count_copies_u128(exec, family, q))
}

pub(crate) fn count_copies_u128(exec: Exec, family: &SetFamily, q: &Poset) -> u128 {
    if q.size() > family.len() {
        return 0;
    }
    if q.is_chain() {
        return lattice::count_k_chains_u128(family, q.size());
    }
    let plan = Plan::new(q, None);
    let per_first: Vec<HashSet<Vec<Mask>>> = exec::map_slice(exec, family.masks(), |&c| {
        let mut supports = HashSet::new();
        search_from(family, q, &plan, &[c], &mut |img| {
            let mut s = img.to_vec();
            s.sort_unstable();
            supports.insert(s);
            true
        });
        supports
    });
    let mut all: HashSet<Vec<Mask>> = HashSet::new();
    for s in per_first {
        all.extend(s);
    }
    all.len() as u128
}
