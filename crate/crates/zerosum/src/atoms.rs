//! Atoms of monoids of zero-sum sequences: irreducibility testing, complete
//! enumeration over finite ground sets, Davenport constants and the
//! constructive atom builders.

use num_integer::Integer;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groundspec::GroundSpec;
use crate::sequence::{Ambient, Sequence};

/// Subset-sum counter over a fixed integer window.  `counts[s]` is the
/// number of sub-multisets with sum `s`, saturated at 3; that is enough to
/// decide atomicity (an atom has exactly two zero-sum sub-multisets, the
/// empty one and the full one).
#[derive(Clone, Debug)]
pub(crate) struct SumCounter {
    lo: i64,
    counts: Vec<u8>,
}

impl SumCounter {
    pub(crate) fn new(lo: i64, hi: i64) -> SumCounter {
        debug_assert!(lo <= 0 && hi >= 0);
        let mut counts = vec![0u8; (hi - lo + 1) as usize];
        counts[(-lo) as usize] = 1; // the empty sub-multiset
        SumCounter { lo, counts }
    }

    /// Fold in `mult` copies of `g`; sums escaping the window are discarded
    /// (they cannot return to it, the window spans the full reachable range
    /// whenever it is `[σ(S⁻), σ(S⁺)]`).
    pub(crate) fn add(&mut self, g: i64, mult: u64) {
        let n = self.counts.len() as i64;
        for _ in 0..mult {
            if g > 0 {
                for idx in (0..n).rev() {
                    let src = idx - g;
                    if src >= 0 && self.counts[src as usize] > 0 {
                        let c = self.counts[src as usize];
                        let slot = &mut self.counts[idx as usize];
                        *slot = slot.saturating_add(c).min(3);
                    }
                }
            } else {
                for idx in 0..n {
                    let src = idx - g;
                    if src < n && self.counts[src as usize] > 0 {
                        let c = self.counts[src as usize];
                        let slot = &mut self.counts[idx as usize];
                        *slot = slot.saturating_add(c).min(3);
                    }
                }
            }
        }
    }

    pub(crate) fn zero_count(&self) -> u8 {
        self.counts[(-self.lo) as usize]
    }
}

/// Cyclic variant of the counter, indices mod n.
#[derive(Clone, Debug)]
pub(crate) struct CyclicSumCounter {
    counts: Vec<u8>,
}

impl CyclicSumCounter {
    pub(crate) fn new(n: u64) -> CyclicSumCounter {
        let mut counts = vec![0u8; n as usize];
        counts[0] = 1;
        CyclicSumCounter { counts }
    }

    pub(crate) fn add(&mut self, g: i64, mult: u64) {
        let n = self.counts.len();
        let g = (g.rem_euclid(n as i64)) as usize;
        for _ in 0..mult {
            let old = self.counts.clone();
            for (s, &c) in old.iter().enumerate() {
                if c > 0 {
                    let slot = &mut self.counts[(s + g) % n];
                    *slot = slot.saturating_add(c).min(3);
                }
            }
        }
    }

    pub(crate) fn zero_count(&self) -> u8 {
        self.counts[0]
    }
}

fn zero_sum_submultiset_count(s: &Sequence) -> Result<u8> {
    match s.ambient() {
        Ambient::Integers => {
            let (plus, minus, v0) = s.split_signs()?;
            let hi = plus.sum()?;
            let lo = minus.sum()?;
            let mut dp = SumCounter::new(lo, hi);
            for (g, m) in s.iter() {
                if g != 0 {
                    dp.add(g, m);
                }
            }
            let mut c = dp.zero_count();
            // each copy of 0 doubles the count of zero-sum sub-multisets
            for _ in 0..v0 {
                c = c.saturating_mul(2).min(3);
            }
            Ok(c)
        }
        Ambient::Cyclic(n) => {
            let mut dp = CyclicSumCounter::new(n);
            for (g, m) in s.iter() {
                dp.add(g, m);
            }
            Ok(dp.zero_count())
        }
    }
}

/// True iff `u` is an atom: nonempty, zero-sum, and without a proper
/// nonempty zero-sum subsequence.
pub fn is_atom(u: &Sequence) -> bool {
    if u.is_empty() {
        return false;
    }
    match u.is_zero_sum() {
        Ok(true) => {}
        _ => return false,
    }
    matches!(zero_sum_submultiset_count(u), Ok(2))
}

/// True iff no nonempty subsequence of `s` has sum zero.
///
/// This is the standard notion, under which a nonempty zero-sum sequence is
/// never zero-sum free.  Some sources instead exclude only *proper*
/// zero-sum subsequences, which for zero-sum input coincides with
/// [`is_atom`]; both readings are therefore available, and this helper
/// deliberately keeps the standard one.
pub fn is_zero_sum_free(s: &Sequence) -> bool {
    matches!(zero_sum_submultiset_count(s), Ok(1))
}

/// A complete catalogue of atoms over a finite ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSet {
    pub ambient: Ambient,
    /// The finite ground set used, sorted ascending.
    pub ground: Vec<i64>,
    /// Deduplicated, canonically sorted atoms.
    pub atoms: Vec<Sequence>,
}

impl AtomSet {
    /// Davenport constant: the maximal atom length (0 for an empty
    /// catalogue).
    pub fn davenport(&self) -> u64 {
        self.atoms.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Restrict the catalogue to atoms supported on a subset of the ground.
    pub fn restrict(&self, subset: &[i64]) -> AtomSet {
        let keep: std::collections::BTreeSet<i64> = subset.iter().copied().collect();
        AtomSet {
            ambient: self.ambient,
            ground: self.ground.iter().copied().filter(|g| keep.contains(g)).collect(),
            atoms: self
                .atoms
                .iter()
                .filter(|a| a.support().all(|g| keep.contains(&g)))
                .cloned()
                .collect(),
        }
    }

    pub fn covers_support(&self, s: &Sequence) -> bool {
        s.ambient() == self.ambient && s.support().all(|g| self.ground.binary_search(&g).is_ok())
    }

    /// Indices of atoms containing `g`.
    pub fn atoms_containing(&self, g: i64) -> Vec<usize> {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| a.multiplicity(g) > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Ground negative part (ℤ ambient).
    pub fn ground_negatives(&self) -> Vec<i64> {
        self.ground.iter().copied().filter(|&g| g < 0).collect()
    }
}

/// Enumerate the complete atom catalogue over a finite condensed ground set
/// `G₀ ⊂ ℤ`.  The search is bounded by the two one-sided length bounds: an
/// atom has `|U⁺| ≤ |min G₀|` and, symmetrically, `|U⁻| ≤ max G₀`.
pub fn enumerate_atoms(ground: &[i64], budget: &Budget) -> Result<AtomSet> {
    let mut sorted: Vec<i64> = ground.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let has_zero = sorted.contains(&0);
    let core: Vec<i64> = sorted.iter().copied().filter(|&g| g != 0).collect();
    let has_pos = core.iter().any(|&g| g > 0);
    let has_neg = core.iter().any(|&g| g < 0);
    if !(has_pos && has_neg) && !core.is_empty() {
        return Err(Error::invalid(
            "ground set is not condensed (needs both signs, or be a subset of {0})",
        ));
    }

    let mut atoms: Vec<Sequence> = Vec::new();
    if has_zero {
        atoms.push(Sequence::singleton(Ambient::Integers, 0));
    }
    if core.is_empty() {
        return Ok(AtomSet {
            ambient: Ambient::Integers,
            ground: sorted,
            atoms,
        });
    }

    let positives: Vec<i64> = core.iter().copied().filter(|&g| g > 0).collect();
    let negatives: Vec<i64> = core.iter().copied().filter(|&g| g < 0).collect();
    let max_plus_len = negatives.iter().map(|&g| -g).max().unwrap() as u64;
    let max_minus_len = *positives.iter().max().unwrap() as u64;

    let mut meter = budget.meter("enumerating atoms");
    let mut positive_part: Vec<(i64, u64)> = Vec::new();
    let outcome = enumerate_positive_parts(
        &positives,
        &negatives,
        max_plus_len,
        max_minus_len,
        0,
        0,
        0,
        &mut positive_part,
        &mut atoms,
        &mut meter,
    );
    atoms.sort();
    match outcome {
        Ok(()) => Ok(AtomSet {
            ambient: Ambient::Integers,
            ground: sorted,
            atoms,
        }),
        Err(Error::BudgetExceeded { context, .. }) => Err(Error::BudgetExceeded {
            context,
            partial_atoms: Some(Box::new(AtomSet {
                ambient: Ambient::Integers,
                ground: sorted,
                atoms,
            })),
        }),
        Err(e) => Err(e),
    }
}

/// Recursive generator of positive parts.  Each multiset is completed with
/// negatives exactly once, at the node where its last element was pushed.
#[allow(clippy::too_many_arguments)]
fn enumerate_positive_parts(
    positives: &[i64],
    negatives: &[i64],
    max_plus_len: u64,
    max_minus_len: u64,
    idx: usize,
    used: u64,
    sum: i64,
    positive_part: &mut Vec<(i64, u64)>,
    out: &mut Vec<Sequence>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    meter.tick()?;
    if used == max_plus_len || idx == positives.len() {
        return Ok(());
    }
    // leave positives[idx] out entirely
    enumerate_positive_parts(
        positives,
        negatives,
        max_plus_len,
        max_minus_len,
        idx + 1,
        used,
        sum,
        positive_part,
        out,
        meter,
    )?;
    // or include it with every feasible multiplicity
    let g = positives[idx];
    let mut k = 1u64;
    while used + k <= max_plus_len {
        positive_part.push((g, k));
        let part_sum = sum + g * k as i64;
        {
            let mut dp = SumCounter::new(-part_sum, part_sum);
            for &(h, m) in positive_part.iter() {
                dp.add(h, m);
            }
            let mut negative_part: Vec<(i64, u64)> = Vec::new();
            complete_negatives(
                negatives,
                max_minus_len,
                0,
                0,
                part_sum,
                dp,
                positive_part,
                &mut negative_part,
                out,
                meter,
            )?;
        }
        enumerate_positive_parts(
            positives,
            negatives,
            max_plus_len,
            max_minus_len,
            idx + 1,
            used + k,
            part_sum,
            positive_part,
            out,
            meter,
        )?;
        positive_part.pop();
        k += 1;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn complete_negatives(
    negatives: &[i64],
    max_minus_len: u64,
    idx: usize,
    used: u64,
    target: i64, // remaining positive mass to cancel
    dp: SumCounter,
    positive_part: &[(i64, u64)],
    negative_part: &mut Vec<(i64, u64)>,
    out: &mut Vec<Sequence>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    meter.tick()?;
    if target == 0 {
        if dp.zero_count() == 2 {
            let terms = positive_part
                .iter()
                .chain(negative_part.iter())
                .copied()
                .collect::<Vec<_>>();
            let atom = Sequence::from_terms(Ambient::Integers, terms)?;
            debug_assert!(is_atom(&atom));
            out.push(atom);
        }
        return Ok(());
    }
    if idx == negatives.len() || used == max_minus_len {
        return Ok(());
    }
    // negatives are processed most-negative first, so the largest remaining
    // absolute value bounds what later elements can still cancel
    let largest_abs = -negatives[idx];
    if target > largest_abs * (max_minus_len - used) as i64 {
        return Ok(());
    }
    // skip this value
    complete_negatives(
        negatives,
        max_minus_len,
        idx + 1,
        used,
        target,
        dp.clone(),
        positive_part,
        negative_part,
        out,
        meter,
    )?;
    // or take k >= 1 copies
    let g = negatives[idx];
    let a = -g;
    let mut k = 1u64;
    let mut dp_k = dp;
    while used + k <= max_minus_len && target - a * k as i64 >= 0 {
        dp_k.add(g, 1);
        // a proper zero-sum subsequence formed below the full candidate can
        // never be cancelled by adding more terms
        let remaining = target - a * k as i64;
        if remaining > 0 && dp_k.zero_count() >= 2 {
            return Ok(());
        }
        negative_part.push((g, k));
        complete_negatives(
            negatives,
            max_minus_len,
            idx + 1,
            used + k,
            remaining,
            dp_k.clone(),
            positive_part,
            negative_part,
            out,
            meter,
        )?;
        negative_part.pop();
        k += 1;
    }
    Ok(())
}

/// Enumerate atoms over a subset of ℤ/nℤ.  Every atom over ℤ/nℤ has length
/// at most n, which bounds the search.
pub fn enumerate_atoms_cyclic(n: u64, subset: &[i64], budget: &Budget) -> Result<AtomSet> {
    let ambient = Ambient::cyclic(n)?;
    let mut ground: Vec<i64> = subset.iter().map(|&g| ambient.normalize(g)).collect();
    ground.sort_unstable();
    ground.dedup();
    let mut atoms = Vec::new();
    let mut meter = budget.meter("enumerating atoms over a cyclic group");
    let mut stack: Vec<(i64, u64)> = Vec::new();
    cyclic_rec(
        n,
        &ground,
        0,
        0,
        0,
        CyclicSumCounter::new(n),
        &mut stack,
        &mut atoms,
        &mut meter,
    )?;
    atoms.sort();
    Ok(AtomSet {
        ambient,
        ground,
        atoms,
    })
}

#[allow(clippy::too_many_arguments)]
fn cyclic_rec(
    n: u64,
    ground: &[i64],
    idx: usize,
    used: u64,
    sum: i64,
    dp: CyclicSumCounter,
    stack: &mut Vec<(i64, u64)>,
    out: &mut Vec<Sequence>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    meter.tick()?;
    if idx == ground.len() || used == n {
        return Ok(());
    }
    cyclic_rec(n, ground, idx + 1, used, sum, dp.clone(), stack, out, meter)?;
    let g = ground[idx];
    let mut dp_k = dp;
    let mut k = 1u64;
    let mut s = sum;
    while used + k <= n {
        dp_k.add(g, 1);
        s = (s + g).rem_euclid(n as i64);
        let zc = dp_k.zero_count();
        if s == 0 {
            // the current stack is itself zero-sum; it is an atom iff no
            // smaller piece is, and every extension of it would contain it
            // as a proper zero-sum subsequence
            if zc == 2 {
                stack.push((g, k));
                let atom = Sequence::from_terms(
                    Ambient::Cyclic(n),
                    stack.to_vec(),
                )?;
                out.push(atom);
                stack.pop();
            }
            break;
        }
        if zc >= 2 {
            // a nonempty zero-sum formed strictly inside; no extension of
            // this branch can be an atom
            break;
        }
        stack.push((g, k));
        cyclic_rec(n, ground, idx + 1, used + k, s, dp_k.clone(), stack, out, meter)?;
        stack.pop();
        k += 1;
    }
    Ok(())
}

/// D(G₀) for a finite condensed ground set.
pub fn davenport(ground: &[i64], budget: &Budget) -> Result<u64> {
    Ok(enumerate_atoms(ground, budget)?.davenport())
}

/// The unique atom with support `{a, b}` for `a < 0 < b`:
/// `a^(lcm/|a|) b^(lcm/b)` with `lcm = lcm(|a|, b)`.
pub fn two_support_atom(a: i64, b: i64) -> Result<Sequence> {
    if !(a < 0 && b > 0) {
        return Err(Error::invalid("need a < 0 < b"));
    }
    let l = (-a).lcm(&b);
    Sequence::from_terms(
        Ambient::Integers,
        [(a, (l / -a) as u64), (b, (l / b) as u64)],
    )
}

/// Smallest integer `c` with `c + ℕ₀` inside the numerical monoid generated
/// by `parts` (which must have gcd 1).
fn conductor(parts: &[u64]) -> u64 {
    debug_assert!(!parts.is_empty());
    let max = *parts.iter().max().unwrap();
    if parts.contains(&1) {
        return 0;
    }
    let bound = (max * max + max + 2) as usize;
    let mut reach = vec![false; bound + 1];
    reach[0] = true;
    for x in 1..=bound {
        for &p in parts {
            let p = p as usize;
            if p <= x && reach[x - p] {
                reach[x] = true;
                break;
            }
        }
    }
    let mut c = 0;
    for x in (0..=bound).rev() {
        if !reach[x] {
            c = x + 1;
            break;
        }
    }
    c as u64
}

/// Write `target` as a sum of the given parts (gcd-normalized), returning
/// multiplicities; `None` when not representable.
fn represent(parts: &[u64], target: u64) -> Option<Vec<u64>> {
    let t = target as usize;
    let mut from: Vec<Option<usize>> = vec![None; t + 1];
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for x in 1..=t {
        for (pi, &p) in parts.iter().enumerate() {
            let p = p as usize;
            if p <= x && reach[x - p] {
                reach[x] = true;
                from[x] = Some(pi);
                break;
            }
        }
    }
    if !reach[t] {
        return None;
    }
    let mut counts = vec![0u64; parts.len()];
    let mut x = t;
    while x > 0 {
        let pi = from[x].unwrap();
        counts[pi] += 1;
        x -= parts[pi] as usize;
    }
    Some(counts)
}

/// Extend a sequence over the negative part of a condensed ground set with
/// infinitely many positives to a full atom that it divides.
///
/// Construction: with `d = gcd(G₀⁻)` and `g` the least positive integer such
/// that every `-(g+k)d`, k ≥ 1, is a sum of elements of `G₀⁻`, pick the
/// smallest positive member `b > |σ(S)| + g·d`, the least `β ∈ [1,d]` with
/// `β·b ∈ dℕ`, and complete `b^β S` to a zero-sum with further negatives.
/// The outcome is re-verified to be an atom.
pub fn extend_to_atom(s: &Sequence, spec: &GroundSpec) -> Result<Sequence> {
    if !spec.is_condensed() {
        return Err(Error::invalid("ground set is not condensed"));
    }
    if !spec.positives_infinite() {
        return Err(Error::Inapplicable(
            "the positive part of the ground set is bounded".into(),
        ));
    }
    let negatives = spec.negatives()?;
    if negatives.is_empty() {
        return Err(Error::invalid("ground set has no negative part"));
    }
    if (s.ambient() != Ambient::Integers || s.support().any(|g| g >= 0))
        && !s.is_empty() {
            return Err(Error::invalid("the seed must be a sequence over G₀⁻"));
        }
    if s.support().any(|g| !negatives.contains(&g)) {
        return Err(Error::invalid("the seed has terms outside the ground set"));
    }

    if s.is_empty() {
        let a = *negatives.last().unwrap(); // max G₀⁻
        let b = spec.min_positive().ok_or_else(|| Error::internal("no positive member"))?;
        return two_support_atom(a, b);
    }

    let d: i64 = negatives.iter().fold(0i64, |acc, &g| acc.gcd(&-g));
    let parts: Vec<u64> = negatives.iter().map(|&g| (-g / d) as u64).collect();
    let g_min = conductor(&parts).saturating_sub(1).max(1);

    let sigma_abs = -s.sum()?;
    let b = spec
        .smallest_positive_ge(sigma_abs + g_min as i64 * d + 1)
        .ok_or_else(|| Error::Inapplicable("no large enough positive member".into()))?;
    let beta = (d / b.gcd(&d)) as u64;
    let t = (beta as i64 * b - sigma_abs) / d;
    debug_assert_eq!((beta as i64 * b - sigma_abs) % d, 0);
    let counts = represent(&parts, t as u64)
        .ok_or_else(|| Error::internal("completion target not representable"))?;
    let mut terms: Vec<(i64, u64)> = vec![(b, beta)];
    terms.extend(s.iter());
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            terms.push((negatives[i], c));
        }
    }
    let atom = Sequence::from_terms(Ambient::Integers, terms)?;
    if !is_atom(&atom) {
        return Err(Error::internal("extension failed to produce an atom"));
    }
    Ok(atom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundspec::Progression;

    fn seq(s: &str) -> Sequence {
        s.parse().unwrap()
    }

    #[test]
    fn is_atom_examples() {
        assert!(is_atom(&seq("1 -1")));
        assert!(!is_atom(&seq("1^2 -1^2")));
        assert!(is_atom(&seq("3 1 -2^2")));
        assert!(!is_atom(&seq("")));
        assert!(!is_atom(&seq("1")));
        assert!(is_atom(&seq("0")));
        assert!(!is_atom(&seq("0^2")));
    }

    #[test]
    fn zero_sum_free_examples() {
        assert!(is_zero_sum_free(&seq("1^3")));
        assert!(is_zero_sum_free(&seq("1 -2")));
        assert!(!is_zero_sum_free(&seq("1 -1 -2")));
        assert!(is_zero_sum_free(&seq("")));
    }

    #[test]
    fn enumerate_small_grounds() {
        let b = Budget::default();
        let atoms = enumerate_atoms(&[-1, 1], &b).unwrap();
        assert_eq!(atoms.atoms, vec![seq("-1 1")]);
        assert_eq!(atoms.davenport(), 2);

        let atoms = enumerate_atoms(&[-4, 2], &b).unwrap();
        assert_eq!(atoms.atoms, vec![seq("-4 2^2")]);

        let atoms = enumerate_atoms(&[-2, -1, 1, 2], &b).unwrap();
        let expect = vec![seq("-2 1^2"), seq("-2 2"), seq("-1 1"), seq("-1^2 2")];
        assert_eq!(atoms.atoms, expect);
        assert_eq!(atoms.davenport(), 3);
    }

    #[test]
    fn davenport_of_segment_grounds() {
        let b = Budget::default();
        for n in 2..=6 {
            let atoms = enumerate_atoms(&[-n, 1], &b).unwrap();
            assert_eq!(atoms.davenport(), (n + 1) as u64);
        }
    }

    #[test]
    fn zero_in_ground() {
        let b = Budget::default();
        let atoms = enumerate_atoms(&[-1, 0, 1], &b).unwrap();
        assert_eq!(atoms.atoms, vec![seq("-1 1"), seq("0")]);
    }

    #[test]
    fn cyclic_davenport() {
        let b = Budget::default();
        for n in 1..=8u64 {
            let all: Vec<i64> = (0..n as i64).collect();
            let atoms = enumerate_atoms_cyclic(n, &all, &b).unwrap();
            assert_eq!(atoms.davenport(), n, "D(Z/{n})");
        }
    }

    #[test]
    fn two_support_examples() {
        assert_eq!(two_support_atom(-1, 1).unwrap(), seq("-1 1"));
        assert_eq!(two_support_atom(-4, 6).unwrap(), seq("-4^3 6^2"));
        assert_eq!(two_support_atom(-2, 3).unwrap(), seq("-2^3 3^2"));
        assert!(is_atom(&two_support_atom(-4, 6).unwrap()));
    }

    #[test]
    fn extend_to_atom_examples() {
        // odd positives: g = 1, so b must exceed |σ(S)| + 2
        let spec = GroundSpec::from_parts([-2], vec![Progression::new(1, 2).unwrap()]);
        let u = extend_to_atom(&seq("-2^3"), &spec).unwrap();
        assert_eq!(u, seq("-2^9 9^2"));
        assert!(is_atom(&u));

        // all positives: the construction picks b = 4 here
        let spec = GroundSpec::from_parts([-1], vec![Progression::new(1, 1).unwrap()]);
        let u = extend_to_atom(&seq("-1^2"), &spec).unwrap();
        assert!(is_atom(&u));
        assert!(seq("-1^2").divides(&u));
        assert_eq!(u, seq("-1^4 4"));

        // empty seed: smallest two-support atom
        let u = extend_to_atom(&Sequence::empty(Ambient::Integers), &spec).unwrap();
        assert_eq!(u, seq("-1 1"));

        // bounded positives: inapplicable
        let spec = GroundSpec::finite_set([-2, 5]);
        assert!(matches!(
            extend_to_atom(&seq("-2"), &spec),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn budget_error_carries_progress() {
        let b = Budget::new(10, 10);
        match enumerate_atoms(&[-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6], &b) {
            Err(Error::BudgetExceeded { partial_atoms, .. }) => {
                assert!(partial_atoms.is_some());
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
