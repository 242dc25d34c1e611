//! Pareto fronts of (load, weak load) pairs and their linear-time merge.

use crate::rational::{Ext, Rational};

/// One non-dominated (load, weak load) pair, with a pointer `back` for rebuilding
/// the set that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoEntry<B> {
    pub load: Rational,
    pub weak_load: Ext,
    pub back: B,
}

/// Sorts by load and drops dominated entries. What remains has strictly
/// increasing loads and strictly decreasing weak loads. Of two identical
/// pairs the one with the smaller `back` survives.
pub fn prune_front<B: Ord>(mut entries: Vec<ParetoEntry<B>>) -> Vec<ParetoEntry<B>> {
    entries.sort_by(|a, b| (&a.load, &a.weak_load, &a.back).cmp(&(&b.load, &b.weak_load, &b.back)));
    let mut front: Vec<ParetoEntry<B>> = Vec::with_capacity(entries.len());
    for e in entries {
        if front.last().is_none_or(|last| e.weak_load < last.weak_load) {
            front.push(e);
        }
    }
    front
}

/// A chosen pair from a merge: indices into the two fronts and the combined
/// `(max load, max weak load)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeOutcome {
    pub load: Rational,
    pub weak_load: Ext,
    pub left: usize,
    pub right: usize,
}

fn cross_ok<B>(a: &ParetoEntry<B>, b: &ParetoEntry<B>, beta: &Rational) -> bool {
    (&b.weak_load + &a.load).le(beta) && (&a.weak_load + &b.load).le(beta)
}

fn outcome<B>(
    left: &[ParetoEntry<B>],
    right: &[ParetoEntry<B>],
    j: usize,
    k: usize,
) -> MergeOutcome {
    MergeOutcome {
        load: left[j].load.max(right[k].load),
        weak_load: Ext::max_of(&left[j].weak_load, &right[k].weak_load),
        left: j,
        right: k,
    }
}

/// Combines two fronts glued at a common vertex. A pair is compatible when
/// `load₁ + wload₂ ≤ β` and `wload₁ + load₂ ≤ β`.
///
/// With `cap = Some(λ)`, only entries of load ≤ λ take part, and the result
/// minimises the combined weak load, then the combined load. With no cap, it
/// minimises the combined load, then the weak load. `None` stands for (∞, ∞).
/// Both fronts must be sorted as [`prune_front`] leaves them. Runs in linear time.
pub fn pareto_merge<B>(
    left: &[ParetoEntry<B>],
    right: &[ParetoEntry<B>],
    beta: &Rational,
    cap: Option<&Rational>,
) -> Option<MergeOutcome> {
    match cap {
        Some(lambda) => merge_capped(left, right, beta, lambda),
        None => merge_uncapped(left, right, beta),
    }
}

fn merge_capped<B>(
    left: &[ParetoEntry<B>],
    right: &[ParetoEntry<B>],
    beta: &Rational,
    lambda: &Rational,
) -> Option<MergeOutcome> {
    let jn = left.partition_point(|e| e.load <= *lambda);
    let kn = right.partition_point(|e| e.load <= *lambda);
    if jn == 0 || kn == 0 {
        return None;
    }
    // Walk down from the largest loads (smallest weak loads). An entry is
    // dropped only when it clashes with every remaining entry of the other
    // front, so the first compatible pair minimises the weak load.
    let (mut j, mut k) = (jn - 1, kn - 1);
    loop {
        if !(&right[k].weak_load + &left[j].load).le(beta) {
            j = j.checked_sub(1)?;
        } else if !(&left[j].weak_load + &right[k].load).le(beta) {
            k = k.checked_sub(1)?;
        } else {
            break;
        }
    }
    // Lower the load of the side that does not set the weak load, as long as
    // the weak load stays put and the pair stays compatible.
    if left[j].weak_load >= right[k].weak_load {
        while k > 0
            && right[k - 1].weak_load <= left[j].weak_load
            && cross_ok(&left[j], &right[k - 1], beta)
        {
            k -= 1;
        }
    } else {
        while j > 0
            && left[j - 1].weak_load <= right[k].weak_load
            && cross_ok(&left[j - 1], &right[k], beta)
        {
            j -= 1;
        }
    }
    Some(outcome(left, right, j, k))
}

fn merge_uncapped<B>(
    left: &[ParetoEntry<B>],
    right: &[ParetoEntry<B>],
    beta: &Rational,
) -> Option<MergeOutcome> {
    // For each j the cheapest usable k is the first with load_j + wload_k ≤ β;
    // it only moves right as j grows, and max(load_j, load_k) never shrinks,
    // so the first j with a compatible partner gives the least load.
    let mut k = 0;
    for j in 0..left.len() {
        while k < right.len() && !(&right[k].weak_load + &left[j].load).le(beta) {
            k += 1;
        }
        if k == right.len() {
            return None;
        }
        if (&left[j].weak_load + &right[k].load).le(beta) {
            let least = left[j].load.max(right[k].load);
            let best = merge_capped(left, right, beta, &least)
                .expect("the pair just found qualifies under its own load");
            debug_assert_eq!(best.load, least);
            return Some(best);
        }
    }
    None
}

/// Reference answer by trying all pairs; used to test [`pareto_merge`].
pub fn naive_merge<B>(
    left: &[ParetoEntry<B>],
    right: &[ParetoEntry<B>],
    beta: &Rational,
    cap: Option<&Rational>,
) -> Option<(Rational, Ext)> {
    let mut best: Option<(Rational, Ext)> = None;
    for a in left {
        for b in right {
            if !cross_ok(a, b, beta) {
                continue;
            }
            if cap.is_some_and(|l| a.load > *l || b.load > *l) {
                continue;
            }
            let load = a.load.max(b.load);
            let weak = Ext::max_of(&a.weak_load, &b.weak_load);
            let better = match &best {
                None => true,
                Some((bl, bw)) => match cap {
                    Some(_) => (&weak, &load) < (bw, bl),
                    None => (&load, &weak) < (bl, bw),
                },
            };
            if better {
                best = Some((load, weak));
            }
        }
    }
    best
}
