//! Complete enumeration of Z(B), sets of lengths and their derived
//! statistics, and pattern containment.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::atoms::AtomSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::sequence::Sequence;

/// All factorizations of one element.  `complete == false` means a budget
/// ran out and `all` is only a subset of Z(B); every statistic derived from
/// it is then a lower bound.
#[derive(Clone, Debug)]
pub struct FactorizationSet {
    pub element: Sequence,
    pub all: Vec<Factorization>,
    pub complete: bool,
    /// Search nodes spent enumerating.
    pub nodes_used: u64,
}

impl FactorizationSet {
    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn length_set(&self) -> LengthSet {
        LengthSet {
            lengths: self.all.iter().map(|z| z.len()).collect(),
            complete: self.complete,
        }
    }

    /// Members of a given length.
    pub fn of_length(&self, k: u64) -> Vec<&Factorization> {
        self.all.iter().filter(|z| z.len() == k).collect()
    }
}

/// A set of factorization lengths, L(B).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSet {
    pub lengths: BTreeSet<u64>,
    pub complete: bool,
}

impl LengthSet {
    pub fn from_lengths(lengths: impl IntoIterator<Item = u64>) -> Self {
        LengthSet {
            lengths: lengths.into_iter().collect(),
            complete: true,
        }
    }

    pub fn min(&self) -> Option<u64> {
        self.lengths.iter().next().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.lengths.iter().next_back().copied()
    }

    /// Δ(L): gaps between adjacent elements.
    pub fn delta(&self) -> BTreeSet<u64> {
        let v: Vec<u64> = self.lengths.iter().copied().collect();
        v.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// ρ(L) = max L / min L, with ρ({0}) = 1.
    pub fn elasticity(&self) -> Result<BigRational> {
        let min = self
            .min()
            .ok_or_else(|| Error::invalid("elasticity of an empty length set"))?;
        let max = self.max().unwrap();
        if min == 0 {
            if self.lengths.len() == 1 {
                return Ok(BigRational::from_integer(BigInt::from(1)));
            }
            return Err(Error::invalid("length set contains 0 alongside other lengths"));
        }
        Ok(BigRational::new(BigInt::from(max), BigInt::from(min)))
    }

    /// Two lengths are adjacent when nothing of L lies strictly between
    /// them; returns the neighbours of `k` inside L.
    pub fn adjacent(&self, k: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if let Some(&below) = self.lengths.range(..k).next_back() {
            out.push(below);
        }
        if let Some(&above) = self.lengths.range(k + 1..).next() {
            out.push(above);
        }
        out
    }

    pub fn contains(&self, k: u64) -> bool {
        self.lengths.contains(&k)
    }
}

/// Smallest shift `y` with `y + pattern ⊆ L`, if any.
pub fn pattern_contains(l: &LengthSet, pattern: &BTreeSet<i64>) -> Option<i64> {
    let first = *pattern.iter().next()?;
    for &anchor in &l.lengths {
        let y = anchor as i64 - first;
        if pattern
            .iter()
            .all(|&p| y + p >= 0 && l.lengths.contains(&((y + p) as u64)))
        {
            return Some(y);
        }
    }
    None
}

/// Enumerate the complete factorization set of a zero-sum sequence.
///
/// `atoms` must be a complete catalogue for the support of `b`.  The
/// recursion always covers the smallest remaining term, and when consecutive
/// pivots are equal the covering atoms are forced to be non-decreasing, so
/// each factorization is produced exactly once.
pub fn factorizations(b: &Sequence, atoms: &AtomSet, budget: &Budget) -> Result<FactorizationSet> {
    if b.ambient() != atoms.ambient {
        return Err(Error::invalid("element and atom catalogue use different groups"));
    }
    if !b.is_zero_sum()? {
        return Err(Error::invalid("the element is not a zero-sum sequence"));
    }
    let (core, v0) = b.strip_identity();
    if !atoms.covers_support(&core) {
        return Err(Error::invalid(
            "atom catalogue does not cover the support of the element",
        ));
    }

    let mut state = Enumerator {
        atoms,
        nodes: 0,
        budget: *budget,
        complete: true,
        stack: Vec::new(),
        out: Vec::new(),
    };
    state.run(&core);

    let identity_atom = Sequence::singleton(b.ambient(), b.ambient().identity());
    let mut all = Vec::with_capacity(state.out.len());
    for atom_list in state.out {
        let mut z = Factorization::from_atom_powers(b.ambient(), atom_list)?;
        if v0 > 0 {
            z.push(&identity_atom, v0)?;
        }
        all.push(z);
    }
    all.sort();
    all.dedup();
    Ok(FactorizationSet {
        element: b.clone(),
        all,
        complete: state.complete,
        nodes_used: state.nodes,
    })
}

struct Enumerator<'a> {
    atoms: &'a AtomSet,
    nodes: u64,
    budget: Budget,
    complete: bool,
    stack: Vec<(usize, u64)>, // (atom index, multiplicity)
    out: Vec<Vec<(Sequence, u64)>>,
}

impl<'a> Enumerator<'a> {
    fn run(&mut self, core: &Sequence) {
        self.recurse(core, None);
    }

    /// `floor`: when the previous step covered the same pivot, the index of
    /// the atom it used; smaller atoms would recreate a permutation of the
    /// same factorization.
    fn recurse(&mut self, remaining: &Sequence, floor: Option<(i64, usize)>) {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes || self.out.len() as u64 >= self.budget.max_results {
            self.complete = false;
            return;
        }
        let pivot = match remaining.min_term() {
            None => {
                let mut atom_list: Vec<(Sequence, u64)> = Vec::with_capacity(self.stack.len());
                for &(idx, mult) in &self.stack {
                    atom_list.push((self.atoms.atoms[idx].clone(), mult));
                }
                self.out.push(atom_list);
                return;
            }
            Some(p) => p,
        };
        let start = match floor {
            Some((g, idx)) if g == pivot => idx,
            _ => 0,
        };
        for idx in start..self.atoms.atoms.len() {
            let atom = &self.atoms.atoms[idx];
            if atom.multiplicity(pivot) == 0 || !atom.divides(remaining) {
                continue;
            }
            let next = atom.div_into(remaining).expect("divisibility checked");
            if let Some(last) = self.stack.last_mut() {
                if last.0 == idx {
                    last.1 += 1;
                    self.recurse(&next, Some((pivot, idx)));
                    self.stack.last_mut().unwrap().1 -= 1;
                    continue;
                }
            }
            self.stack.push((idx, 1));
            self.recurse(&next, Some((pivot, idx)));
            self.stack.pop();
        }
    }
}

/// Z_k(B): the factorizations of length k.
pub fn z_k(b: &Sequence, atoms: &AtomSet, k: u64, budget: &Budget) -> Result<FactorizationSet> {
    let full = factorizations(b, atoms, budget)?;
    Ok(FactorizationSet {
        element: full.element.clone(),
        all: full.all.into_iter().filter(|z| z.len() == k).collect(),
        complete: full.complete,
        nodes_used: full.nodes_used,
    })
}

/// L(B) through the full enumeration path.
pub fn length_set(b: &Sequence, atoms: &AtomSet, budget: &Budget) -> Result<LengthSet> {
    Ok(factorizations(b, atoms, budget)?.length_set())
}

/// Memoizing lengths-only engine.  L(B) satisfies
/// `L(B) = { 1 + l : A | B covering min(B), l ∈ L(B/A) }` with `L(1) = {0}`,
/// and quotients of zero-sum sequences recur across a sweep, so one shared
/// cache makes exhaustive scans cheap.  No deduplication is needed because
/// only lengths are collected.
pub struct LengthsCache<'a> {
    atoms: &'a AtomSet,
    memo: HashMap<Sequence, Rc<BTreeSet<u64>>>,
    by_pivot: HashMap<i64, Vec<usize>>,
    pub nodes: u64,
}

impl<'a> LengthsCache<'a> {
    pub fn new(atoms: &'a AtomSet) -> Self {
        let mut by_pivot: HashMap<i64, Vec<usize>> = HashMap::new();
        for &g in &atoms.ground {
            by_pivot.insert(g, atoms.atoms_containing(g));
        }
        LengthsCache {
            atoms,
            memo: HashMap::new(),
            by_pivot,
            nodes: 0,
        }
    }

    /// Exact L(B).  Errors on non-zero-sum input or a budget trip.
    pub fn lengths(&mut self, b: &Sequence, budget: &Budget) -> Result<Rc<BTreeSet<u64>>> {
        if !b.is_zero_sum()? {
            return Err(Error::invalid("the element is not a zero-sum sequence"));
        }
        let (core, v0) = b.strip_identity();
        let base = self.core_lengths(&core, budget)?;
        if v0 == 0 {
            return Ok(base);
        }
        Ok(Rc::new(base.iter().map(|&l| l + v0).collect()))
    }

    fn core_lengths(&mut self, core: &Sequence, budget: &Budget) -> Result<Rc<BTreeSet<u64>>> {
        if let Some(hit) = self.memo.get(core) {
            return Ok(hit.clone());
        }
        self.nodes += 1;
        if self.nodes > budget.max_nodes {
            return Err(Error::budget("computing sets of lengths"));
        }
        let pivot = match core.min_term() {
            None => {
                let set = Rc::new(BTreeSet::from([0u64]));
                self.memo.insert(core.clone(), set.clone());
                return Ok(set);
            }
            Some(p) => p,
        };
        let mut acc = BTreeSet::new();
        let candidates = self.by_pivot.get(&pivot).cloned().unwrap_or_default();
        for idx in candidates {
            let atom = &self.atoms.atoms[idx];
            if !atom.divides(core) {
                continue;
            }
            let rest = atom.div_into(core)?;
            let sub = self.core_lengths(&rest, budget)?;
            for &l in sub.iter() {
                acc.insert(l + 1);
            }
        }
        let set = Rc::new(acc);
        self.memo.insert(core.clone(), set.clone());
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::{enumerate_atoms, is_atom};
    use crate::sequence::Ambient;

    fn seq(s: &str) -> Sequence {
        s.parse().unwrap()
    }

    fn atoms_for(ground: &[i64]) -> AtomSet {
        enumerate_atoms(ground, &Budget::default()).unwrap()
    }

    #[test]
    fn empty_element() {
        let atoms = atoms_for(&[-1, 1]);
        let zs = factorizations(&Sequence::empty(Ambient::Integers), &atoms, &Budget::default())
            .unwrap();
        assert_eq!(zs.len(), 1);
        assert!(zs.all[0].is_empty());
        assert_eq!(zs.length_set().lengths, BTreeSet::from([0]));
    }

    #[test]
    fn forced_factorization() {
        let atoms = atoms_for(&[-2, -1, 1]);
        let zs = factorizations(&seq("-2^2 1^4"), &atoms, &Budget::default()).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs.length_set().lengths, BTreeSet::from([2]));
    }

    #[test]
    fn two_length_example() {
        // L(B) = {4, 5} for B = 3^2 2^3 (-2)^3 (-1)^6 over {-2,-1,2,3}
        let atoms = atoms_for(&[-2, -1, 2, 3]);
        let b = seq("3^2 2^3 -2^3 -1^6");
        let zs = factorizations(&b, &atoms, &Budget::default()).unwrap();
        assert!(zs.complete);
        let l = zs.length_set();
        assert_eq!(l.lengths, BTreeSet::from([4, 5]));
        assert_eq!(l.delta(), BTreeSet::from([1]));
        assert_eq!(
            l.elasticity().unwrap(),
            BigRational::new(BigInt::from(5), BigInt::from(4))
        );
        // z_k picks out (3^2 (-2)^3) * (2 (-1)^2)^3 at length 4
        let z4 = z_k(&b, &atoms, 4, &Budget::default()).unwrap();
        assert_eq!(z4.len(), 1);
        let expected = Factorization::from_atom_powers(
            Ambient::Integers,
            [(seq("3^2 -2^3"), 1), (seq("2 -1^2"), 3)],
        )
        .unwrap();
        assert_eq!(z4.all[0], expected);
        // everything multiplies back and is made of atoms
        for z in &zs.all {
            assert_eq!(z.product(), &b);
            for (a, _) in z.iter() {
                assert!(is_atom(a));
            }
        }
    }

    #[test]
    fn gap_example() {
        // B = 5 1^6 (-1)^5 (-6) has L = {2, 6}
        let atoms = atoms_for(&[-6, -1, 1, 5]);
        let l = length_set(&seq("5 1^6 -1^5 -6"), &atoms, &Budget::default()).unwrap();
        assert_eq!(l.lengths, BTreeSet::from([2, 6]));
        assert_eq!(l.delta(), BTreeSet::from([4]));
        assert_eq!(
            l.elasticity().unwrap(),
            BigRational::from_integer(BigInt::from(3))
        );
    }

    #[test]
    fn counts_match_naive_model() {
        // (1(-1))^k has exactly one factorization; products of distinct
        // two-support atoms multiply counts
        let atoms = atoms_for(&[-1, 1]);
        for k in 1..6u64 {
            let b = seq("1 -1").pow(k).unwrap();
            let zs = factorizations(&b, &atoms, &Budget::default()).unwrap();
            assert_eq!(zs.len(), 1);
        }
    }

    #[test]
    fn zero_terms_shift_lengths() {
        let atoms = atoms_for(&[-1, 0, 1]);
        let b = seq("0^2 1 -1");
        let zs = factorizations(&b, &atoms, &Budget::default()).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs.all[0].len(), 3);
    }

    #[test]
    fn lengths_cache_agrees_with_enumeration() {
        let atoms = atoms_for(&[-2, -1, 1, 2]);
        let mut cache = LengthsCache::new(&atoms);
        let budget = Budget::default();
        for b in [seq("1 -1"), seq("2^2 -2 1^2 -1^4"), seq("2^3 -2^3"), seq("0 1 -1")] {
            let via_cache = cache.lengths(&b, &budget).unwrap();
            let via_enum = length_set(&b, &atoms, &budget).unwrap();
            assert_eq!(*via_cache, via_enum.lengths, "element {b}");
        }
    }

    #[test]
    fn pattern_examples() {
        let l = LengthSet::from_lengths([4, 5]);
        assert_eq!(pattern_contains(&l, &BTreeSet::from([0, 1])), Some(4));
        assert_eq!(pattern_contains(&l, &BTreeSet::from([0, 2])), None);
    }

    #[test]
    fn rejects_nonzero_sum() {
        let atoms = atoms_for(&[-1, 1]);
        assert!(factorizations(&seq("1"), &atoms, &Budget::default()).is_err());
    }
}
