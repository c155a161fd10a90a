//! Pair monoids over the negative part, the relative Davenport constant,
//! the refinement-maximal factorizations Υ(B), and the negative-swap chain
//! builders.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::atoms::{is_atom, AtomSet};
use crate::budget::Budget;
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::factorize::{factorizations, FactorizationSet};
use crate::hilbert::kernel_hilbert_basis;
use crate::sequence::{Ambient, Sequence};

/// A pair of sequences over the negative part.  It belongs to the equal-sum
/// monoid when the two sums agree, to the symmetric submonoid when the two
/// sides coincide.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairSequence {
    pub left: Sequence,
    pub right: Sequence,
}

impl PairSequence {
    pub fn new(left: Sequence, right: Sequence) -> Self {
        PairSequence { left, right }
    }

    pub fn is_balanced(&self) -> Result<bool> {
        Ok(self.left.sum()? == self.right.sum()?)
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
    }

    pub fn divides(&self, other: &PairSequence) -> bool {
        self.left.divides(&other.left) && self.right.divides(&other.right)
    }

    pub fn div_into(&self, other: &PairSequence) -> Result<PairSequence> {
        Ok(PairSequence {
            left: self.left.div_into(&other.left)?,
            right: self.right.div_into(&other.right)?,
        })
    }

    pub fn mul(&self, other: &PairSequence) -> Result<PairSequence> {
        Ok(PairSequence {
            left: self.left.mul(&other.left)?,
            right: self.right.mul(&other.right)?,
        })
    }

    pub fn is_unit(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    /// Exponent-vector difference left − right over the given value order;
    /// zero exactly for symmetric pairs.
    pub fn difference_vector(&self, values: &[i64]) -> Vec<i64> {
        values
            .iter()
            .map(|&g| self.left.multiplicity(g) as i64 - self.right.multiplicity(g) as i64)
            .collect()
    }
}

/// Complete atom list of the equal-sum pair monoid over a finite negative
/// set.  An atom `(S1, S2)` embeds as the ordinary atom `S1·(-S2)` over
/// `G₀⁻ ∪ -G₀⁻`, so `|S1| + |S2| <= D(G₀⁻ ∪ -G₀⁻)` bounds the search.
pub fn e_atoms(gminus: &[i64], budget: &Budget) -> Result<Vec<PairSequence>> {
    let mut negatives: Vec<i64> = gminus.to_vec();
    negatives.sort_unstable();
    negatives.dedup();
    if negatives.is_empty() || negatives.iter().any(|&g| g >= 0) {
        return Err(Error::invalid("need a nonempty set of negative integers"));
    }
    let mut symmetric_ground = negatives.clone();
    symmetric_ground.extend(negatives.iter().map(|&g| -g));
    let cap = crate::atoms::enumerate_atoms(&symmetric_ground, budget)?.davenport();

    let mut out: Vec<PairSequence> = Vec::new();
    let mut meter = budget.meter("enumerating equal-sum pair atoms");
    // enumerate left sides by total length, then right sides of matching sum
    let mut left_stack: Vec<(i64, u64)> = Vec::new();
    e_left_rec(&negatives, cap, 0, 0, 0, &mut left_stack, &mut out, &mut meter)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn e_left_rec(
    negatives: &[i64],
    cap: u64,
    idx: usize,
    used: u64,
    sum: i64,
    stack: &mut Vec<(i64, u64)>,
    out: &mut Vec<PairSequence>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    meter.tick()?;
    if idx == negatives.len() || used >= cap {
        return Ok(());
    }
    e_left_rec(negatives, cap, idx + 1, used, sum, stack, out, meter)?;
    let g = negatives[idx];
    let mut k = 1;
    while used + k < cap {
        stack.push((g, k));
        let new_sum = sum + g * k as i64;
        {
            // complete this left side exactly once, at its push point
            let left = Sequence::from_terms(Ambient::Integers, stack.iter().copied())?;
            let mut right_stack: Vec<(i64, u64)> = Vec::new();
            e_right_rec(
                negatives,
                cap - (used + k),
                0,
                new_sum,
                &left,
                &mut right_stack,
                out,
                meter,
            )?;
        }
        e_left_rec(negatives, cap, idx + 1, used + k, new_sum, stack, out, meter)?;
        stack.pop();
        k += 1;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn e_right_rec(
    negatives: &[i64],
    slots: u64,
    idx: usize,
    target: i64,
    left: &Sequence,
    stack: &mut Vec<(i64, u64)>,
    out: &mut Vec<PairSequence>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    meter.tick()?;
    if target == 0 && !stack.is_empty() {
        let right = Sequence::from_terms(Ambient::Integers, stack.iter().copied())?;
        let pair = PairSequence::new(left.clone(), right);
        if pair_is_atom(&pair)? {
            out.push(pair);
        }
        return Ok(());
    }
    if idx == negatives.len() || slots == 0 {
        return Ok(());
    }
    e_right_rec(negatives, slots, idx + 1, target, left, stack, out, meter)?;
    let g = negatives[idx];
    let mut k = 1u64;
    while k <= slots && target - g * k as i64 <= 0 {
        stack.push((g, k));
        e_right_rec(
            negatives,
            slots - k,
            idx + 1,
            target - g * k as i64,
            left,
            stack,
            out,
            meter,
        )?;
        stack.pop();
        k += 1;
    }
    Ok(())
}

/// Minimality in the pair monoid: a balanced pair is an atom iff the only
/// common subsequence-sum of the two sides is the full sum (the empty sum 0
/// is shared trivially and proper subsequences of a negative sequence have
/// strictly larger sums).
fn pair_is_atom(pair: &PairSequence) -> Result<bool> {
    let s = pair.left.sum()?;
    if s != pair.right.sum()? || pair.left.is_empty() {
        return Ok(false);
    }
    let sums_left = pair.left.subsequence_sums(None)?;
    let sums_right = pair.right.subsequence_sums(None)?;
    Ok(sums_left.intersection(&sums_right).all(|&v| v == s))
}

/// Factor an equal-sum pair into atoms of the pair monoid, greedily by the
/// catalogue order.
fn factor_pair(pair: &PairSequence, catalogue: &[PairSequence]) -> Result<Vec<PairSequence>> {
    let mut rest = pair.clone();
    let mut out = Vec::new();
    'outer: while !rest.is_unit() {
        for atom in catalogue {
            if atom.divides(&rest) {
                rest = atom.div_into(&rest)?;
                out.push(atom.clone());
                continue 'outer;
            }
        }
        return Err(Error::internal("pair escaped the atom catalogue"));
    }
    Ok(out)
}

/// Relative Davenport constant of the symmetric pairs inside the equal-sum
/// pairs: the longest minimal zero-sum multiset of difference vectors of
/// pair atoms.
pub fn relative_davenport(gminus: &[i64], budget: &Budget) -> Result<u64> {
    let atoms = e_atoms(gminus, budget)?;
    let mut values: Vec<i64> = gminus.to_vec();
    values.sort_unstable();
    values.dedup();
    let mut vectors: Vec<Vec<i64>> = atoms
        .iter()
        .map(|p| p.difference_vector(&values))
        .collect();
    vectors.sort();
    vectors.dedup();
    let (basis, _) = kernel_hilbert_basis(&vectors, budget, crate::hilbert::DEGREE_CAP)?;
    Ok(basis
        .iter()
        .map(|m| m.iter().sum::<u64>())
        .max()
        .unwrap_or(0))
}

/// Positive parts of the atoms of `z`, as a sorted multiset.
fn plus_profile(z: &Factorization) -> Result<Vec<Sequence>> {
    z.plus_parts()
}

/// Does `fine` refine `coarse`: can the members of `fine` be grouped so the
/// groups' multiset unions are exactly the members of `coarse`?
fn refines(coarse: &[Sequence], fine: &[Sequence]) -> bool {
    fn assign(bins: &mut Vec<Sequence>, fine: &[Sequence], idx: usize) -> bool {
        if idx == fine.len() {
            return bins.iter().all(|b| b.is_empty());
        }
        let part = fine[idx].clone();
        // bins holding the same residual value are interchangeable
        let mut tried: Vec<Sequence> = Vec::new();
        for i in 0..bins.len() {
            if part.divides(&bins[i]) && !tried.contains(&bins[i]) {
                tried.push(bins[i].clone());
                let saved = bins[i].clone();
                bins[i] = part.div_into(&bins[i]).expect("divisibility checked");
                if assign(bins, fine, idx + 1) {
                    return true;
                }
                bins[i] = saved;
            }
        }
        false
    }
    if coarse.is_empty() {
        return fine.is_empty();
    }
    let coarse_total: u64 = coarse.iter().map(|s| s.len()).sum();
    let fine_total: u64 = fine.iter().map(|s| s.len()).sum();
    if coarse_total != fine_total {
        return false;
    }
    let mut bins = coarse.to_vec();
    assign(&mut bins, fine, 0)
}

/// A block assignment: for each coarse atom, which fine atoms make it up.
fn block_assignment(coarse: &[Sequence], fine: &[Sequence]) -> Option<Vec<Vec<usize>>> {
    fn assign(
        bins: &mut Vec<Sequence>,
        groups: &mut Vec<Vec<usize>>,
        fine: &[Sequence],
        idx: usize,
    ) -> bool {
        if idx == fine.len() {
            return bins.iter().all(|b| b.is_empty());
        }
        let part = &fine[idx];
        for i in 0..bins.len() {
            if part.divides(&bins[i]) {
                let saved = bins[i].clone();
                bins[i] = part.div_into(&bins[i]).expect("divisibility checked");
                groups[i].push(idx);
                if assign(bins, groups, fine, idx + 1) {
                    return true;
                }
                groups[i].pop();
                bins[i] = saved;
            }
        }
        false
    }
    let mut bins = coarse.to_vec();
    let mut groups = vec![Vec::new(); coarse.len()];
    if assign(&mut bins, &mut groups, fine, 0) {
        Some(groups)
    } else {
        None
    }
}

/// Υ(B): the factorizations whose positive-part profile is maximal in the
/// refinement order.  When `max L(B) = |B⁺|` this is exactly the set of
/// maximal-length factorizations.
pub fn upsilon(b: &Sequence, atoms: &AtomSet, budget: &Budget) -> Result<FactorizationSet> {
    let zs = factorizations(b, atoms, budget)?;
    if !zs.complete {
        return Err(Error::budget("complete factorization enumeration required"));
    }
    let keep = upsilon_indices(&zs)?;
    Ok(FactorizationSet {
        element: zs.element.clone(),
        all: keep.into_iter().map(|i| zs.all[i].clone()).collect(),
        complete: true,
        nodes_used: zs.nodes_used,
    })
}

fn upsilon_indices(zs: &FactorizationSet) -> Result<Vec<usize>> {
    // strip identity atoms: they play no role in the positive profiles
    let profiles: Vec<Vec<Sequence>> = zs
        .all
        .iter()
        .map(plus_profile)
        .collect::<Result<Vec<_>>>()?;
    let mut distinct: Vec<&Vec<Sequence>> = Vec::new();
    for p in &profiles {
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    let mut maximal: Vec<&Vec<Sequence>> = Vec::new();
    for p in &distinct {
        let beaten = distinct
            .iter()
            .any(|q| q != p && refines(p, q));
        if !beaten {
            maximal.push(p);
        }
    }
    Ok((0..zs.all.len())
        .filter(|&i| maximal.contains(&&profiles[i]))
        .collect())
}

/// Ground data shared by the swap-based chain builders.
struct SwapContext {
    catalogue: Vec<PairSequence>,
    values: Vec<i64>,
    rel_davenport: u64,
    m_const: u64,
}

impl SwapContext {
    fn new(b: &Sequence, atoms: &AtomSet, budget: &Budget) -> Result<SwapContext> {
        let negatives = atoms.ground_negatives();
        if negatives.is_empty() {
            return Err(Error::invalid("ground has no negative part"));
        }
        let catalogue = e_atoms(&negatives, budget)?;
        let rel_davenport = relative_davenport(&negatives, budget)?;
        let m_const = b
            .support()
            .map(|g| if g < 0 { (-g) as u64 } else { 0 })
            .max()
            .unwrap_or(0);
        Ok(SwapContext {
            catalogue,
            values: negatives,
            rel_davenport,
            m_const,
        })
    }
}

/// Smallest nonempty sub-multiset of the labelled pair atoms whose
/// difference vectors cancel; its size never exceeds the relative Davenport
/// constant.
fn minimal_symmetric_submultiset(
    labelled: &[(usize, PairSequence)],
    values: &[i64],
    cap: u64,
) -> Option<Vec<usize>> {
    let vecs: Vec<Vec<i64>> = labelled
        .iter()
        .map(|(_, p)| p.difference_vector(values))
        .collect();
    for size in 1..=(cap as usize).min(labelled.len()) {
        let mut chosen = Vec::new();
        if symmetric_search(&vecs, 0, size, &mut chosen, &mut vec![0i64; values.len()]) {
            return Some(chosen);
        }
    }
    None
}

fn symmetric_search(
    vecs: &[Vec<i64>],
    from: usize,
    size: usize,
    chosen: &mut Vec<usize>,
    acc: &mut Vec<i64>,
) -> bool {
    if chosen.len() == size {
        return acc.iter().all(|&x| x == 0);
    }
    if vecs.len() - from < size - chosen.len() {
        return false;
    }
    for idx in from..vecs.len() {
        for (a, v) in acc.iter_mut().zip(&vecs[idx]) {
            *a += v;
        }
        chosen.push(idx);
        if symmetric_search(vecs, idx + 1, size, chosen, acc) {
            return true;
        }
        chosen.pop();
        for (a, v) in acc.iter_mut().zip(&vecs[idx]) {
            *a -= v;
        }
    }
    false
}

/// One negative-swap round against a fixed refinement target.
///
/// Returns the rewritten factorization; `z⁺` never decreases, and the step
/// distance is at most `m_const · rel_davenport` in the strict case and
/// `rel_davenport` when the profile stays fixed.
fn swap_round(
    z: &Factorization,
    target: &Factorization,
    ctx: &SwapContext,
    atoms: &AtomSet,
    budget: &Budget,
) -> Result<Option<Factorization>> {
    let z_atoms = z.expanded();
    let t_atoms = target.expanded();
    let z_profile: Vec<Sequence> = z_atoms
        .iter()
        .map(|a| a.plus_part())
        .collect::<Result<Vec<_>>>()?;
    let t_profile: Vec<Sequence> = t_atoms
        .iter()
        .map(|a| a.plus_part())
        .collect::<Result<Vec<_>>>()?;
    let groups = block_assignment(&z_profile, &t_profile)
        .ok_or_else(|| Error::internal("target does not refine the factorization"))?;

    // per coarse atom: equal-sum pair of negative parts, factored into atoms
    let mut labelled: Vec<(usize, PairSequence)> = Vec::new();
    for (j, atom) in z_atoms.iter().enumerate() {
        let mut block_minus = Sequence::empty(Ambient::Integers);
        for &i in &groups[j] {
            block_minus = block_minus.mul(&t_atoms[i].minus_part()?)?;
        }
        let pair = PairSequence::new(atom.minus_part()?, block_minus);
        for piece in factor_pair(&pair, &ctx.catalogue)? {
            if !piece.is_symmetric() {
                labelled.push((j, piece));
            }
        }
    }
    if labelled.is_empty() {
        return Ok(None); // z already matches the target block by block
    }
    let chosen = minimal_symmetric_submultiset(&labelled, &ctx.values, ctx.rel_davenport)
        .ok_or_else(|| Error::internal("no symmetric sub-multiset within the bound"))?;

    // aggregate the swap per coarse atom
    let mut swaps: BTreeMap<usize, PairSequence> = BTreeMap::new();
    for &c in &chosen {
        let (j, ref piece) = labelled[c];
        let entry = swaps
            .entry(j)
            .or_insert_with(|| PairSequence::new(
                Sequence::empty(Ambient::Integers),
                Sequence::empty(Ambient::Integers),
            ));
        *entry = entry.mul(piece)?;
    }

    let mut new_z = Factorization::empty(z.ambient());
    for (j, atom) in z_atoms.iter().enumerate() {
        match swaps.get(&j) {
            None => new_z.push(atom, 1)?,
            Some(pair) => {
                // replace X_j by Y_j inside the negative part
                let without = pair.left.div_into(atom)?;
                let replaced = without.mul(&pair.right)?;
                let sub = factorizations(&replaced, atoms, budget)?;
                if sub.is_empty() {
                    return Err(Error::internal("swapped block has no factorization"));
                }
                // keep the profile fixed when possible: prefer a single atom
                if is_atom(&replaced) {
                    new_z.push(&replaced, 1)?;
                } else {
                    for (a, m) in sub.all[0].iter() {
                        new_z.push(a, m)?;
                    }
                }
            }
        }
    }
    debug_assert_eq!(new_z.product(), z.product());
    Ok(Some(new_z))
}

/// Nondecreasing chain from `z` to a refinement-maximal factorization.
/// Every step swaps only negative terms inside at most `rel_davenport`
/// pair-atoms, so its distance is at most
/// `max(m_const · rel_davenport, 2)` where `m_const = |min supp(B)|`.
pub fn chain_to_upsilon(
    b: &Sequence,
    z: &Factorization,
    atoms: &AtomSet,
    budget: &Budget,
) -> Result<Chain> {
    if z.product() != b {
        return Err(Error::invalid("the factorization does not factor the element"));
    }
    let (core, v0) = b.strip_identity();
    let z_core = strip_identity_atoms(z)?;
    let ctx = SwapContext::new(&core, atoms, budget)?;
    let zs = factorizations(&core, atoms, budget)?;
    if !zs.complete {
        return Err(Error::budget("complete factorization enumeration required"));
    }
    let up = upsilon_indices(&zs)?;
    let up_set: Vec<&Factorization> = up.iter().map(|&i| &zs.all[i]).collect();

    let mut steps = vec![z_core.clone()];
    let mut meter = budget.meter("building a chain into the maximal set");
    'outer: loop {
        meter.tick()?;
        let current = steps.last().unwrap().clone();
        let current_profile = plus_profile(&current)?;
        // done when the current profile is maximal
        if up_set
            .iter()
            .any(|y| plus_profile(y).map(|p| p == current_profile).unwrap_or(false))
        {
            break 'outer;
        }
        // a maximal factorization refining the current one
        let target = up_set
            .iter()
            .filter(|y| {
                plus_profile(y)
                    .map(|p| refines(&current_profile, &p))
                    .unwrap_or(false)
            })
            .min_by_key(|y| (**y).clone())
            .ok_or_else(|| Error::internal("no dominating maximal factorization"))?;
        let mut inner = current.clone();
        loop {
            meter.tick()?;
            match swap_round(&inner, target, &ctx, atoms, budget)? {
                None => {
                    // block-by-block equality: the target itself is reached
                    if &&inner != target {
                        steps.push((*target).clone());
                    }
                    break 'outer;
                }
                Some(next) => {
                    let grew = next.len() > inner.len();
                    steps.push(next.clone());
                    inner = next;
                    if grew {
                        continue 'outer; // profile strictly increased; retarget
                    }
                }
            }
        }
    }
    let steps = reattach_identity(steps, b.ambient(), v0)?;
    let chain = Chain::new(steps)?;
    let cap = (ctx.m_const * ctx.rel_davenport).max(2);
    if chain.max_step > cap {
        return Err(Error::internal(format!(
            "swap chain step {} exceeded the bound {cap}",
            chain.max_step
        )));
    }
    Ok(chain)
}

fn strip_identity_atoms(z: &Factorization) -> Result<Factorization> {
    let id = Sequence::singleton(z.ambient(), z.ambient().identity());
    let have = z.atom_multiplicity(&id);
    if have == 0 {
        Ok(z.clone())
    } else {
        z.remove(&id, have)
    }
}

fn reattach_identity(
    steps: Vec<Factorization>,
    ambient: Ambient,
    v0: u64,
) -> Result<Vec<Factorization>> {
    if v0 == 0 {
        return Ok(steps);
    }
    let id = Sequence::singleton(ambient, ambient.identity());
    steps
        .into_iter()
        .map(|mut z| {
            z.push(&id, v0)?;
            Ok(z)
        })
        .collect()
}

/// Length-preserving chain between two refinement-maximal factorizations
/// with the same positive profile; steps swap negatives inside at most
/// `rel_davenport` pair-atoms, so `d <= max(rel_davenport, 2)`.
pub fn equal_plus_chain(
    b: &Sequence,
    z: &Factorization,
    y: &Factorization,
    atoms: &AtomSet,
    budget: &Budget,
) -> Result<Chain> {
    if z.product() != b || y.product() != b {
        return Err(Error::invalid("endpoints do not factor the element"));
    }
    let (core, v0) = b.strip_identity();
    let z_core = strip_identity_atoms(z)?;
    let y_core = strip_identity_atoms(y)?;
    if plus_profile(&z_core)? != plus_profile(&y_core)? {
        return Err(Error::invalid("the positive profiles differ"));
    }
    let ctx = SwapContext::new(&core, atoms, budget)?;

    let mut steps = vec![z_core.clone()];
    let mut meter = budget.meter("building an equal-profile chain");
    loop {
        meter.tick()?;
        let current = steps.last().unwrap().clone();
        if current == y_core {
            break;
        }
        match swap_round(&current, &y_core, &ctx, atoms, budget)? {
            None => {
                if current != y_core {
                    steps.push(y_core.clone());
                }
                break;
            }
            Some(next) => {
                if next.len() != current.len() {
                    return Err(Error::internal("equal-profile swap changed the length"));
                }
                steps.push(next);
            }
        }
    }
    let steps = reattach_identity(steps, b.ambient(), v0)?;
    let chain = Chain::new(steps)?;
    let cap = ctx.rel_davenport.max(2);
    if chain.max_step > cap {
        return Err(Error::internal(format!(
            "equal-profile step {} exceeded the bound {cap}",
            chain.max_step
        )));
    }
    Ok(chain)
}

/// Either a strictly increasing chain reaching length |B⁺| with steps at
/// most M², or a witness that the obstruction case applies.
#[derive(Clone, Debug)]
pub enum SplitOutcome {
    Chain(Chain),
    /// A subset A of the negative support and a factorization all of whose
    /// atoms have multiplicity at most 2M-2 outside A, while A fails to
    /// generate the positive support's subgroup.
    Witness {
        subset: Vec<i64>,
        factorization: Factorization,
    },
}

/// Drive a factorization of a large-positives element up to the maximal
/// length `|B⁺|` by swapping negatives between atoms.  Needs
/// `0 ∉ supp(B)`, `M = |min supp(B)| >= 2` and `min supp(B)⁺ >= M(M²-1)`.
pub fn m2_chain(
    b: &Sequence,
    z: &Factorization,
    atoms: &AtomSet,
    budget: &Budget,
) -> Result<SplitOutcome> {
    if z.product() != b {
        return Err(Error::invalid("the factorization does not factor the element"));
    }
    if b.multiplicity(0) > 0 {
        return Err(Error::invalid("0 must not divide the element"));
    }
    let (plus, minus, _) = b.split_signs()?;
    let m_const = minus
        .support()
        .map(|g| -g)
        .max()
        .ok_or_else(|| Error::invalid("the element has no negative part"))?;
    if m_const < 2 {
        return Err(Error::invalid("need |min supp(B)| >= 2"));
    }
    let min_pos = plus
        .support()
        .min()
        .ok_or_else(|| Error::invalid("the element has no positive part"))?;
    if min_pos < m_const * (m_const * m_const - 1) {
        return Err(Error::invalid(
            "need min supp(B)+ >= M(M^2-1) for the swap procedure",
        ));
    }
    let target_len = plus.len();
    let cap = (m_const * m_const) as u64;

    let mut steps = vec![z.clone()];
    let mut meter = budget.meter("building a maximal-length chain");
    loop {
        meter.tick()?;
        let current = steps.last().unwrap().clone();
        if current.len() == target_len {
            let chain = Chain::new(steps)?;
            if chain.max_step > cap {
                return Err(Error::internal(format!(
                    "swap step {} exceeded M² = {cap}",
                    chain.max_step
                )));
            }
            return Ok(SplitOutcome::Chain(chain));
        }
        let current_atoms = current.expanded();
        let u0_idx = current_atoms
            .iter()
            .position(|a| a.plus_part().map(|p| p.len() >= 2).unwrap_or(false))
            .ok_or_else(|| Error::internal("short factorization without a split candidate"))?;
        // A: values carried with multiplicity >= 2M-1 by some atom
        let mut a_set: Vec<i64> = Vec::new();
        for g in b.support() {
            if current_atoms
                .iter()
                .any(|v| v.multiplicity(g) >= (2 * m_const - 1) as u64)
            {
                a_set.push(g);
            }
        }
        // does <supp(B+)> lie inside <A>?
        let gcd_a = a_set.iter().fold(0i64, |acc, &g| acc.gcd(&g));
        let contained = gcd_a != 0 && plus.support().all(|p| p % gcd_a == 0);
        if !contained {
            // the witness case: every atom obeys the multiplicity cap
            // outside A by construction of A
            return Ok(SplitOutcome::Witness {
                subset: a_set,
                factorization: current,
            });
        }
        let next = split_swap(&current, u0_idx, &a_set, m_const, atoms, budget)?;
        if next.len() <= current.len() {
            return Err(Error::internal("swap round failed to increase the length"));
        }
        steps.push(next);
    }
}

/// The negative-swap round: move negative mass between the chosen atom and
/// donors so that the chosen atom stops being irreducible, then refactor.
fn split_swap(
    z: &Factorization,
    u0_idx: usize,
    a_set: &[i64],
    m_const: i64,
    atoms: &AtomSet,
    budget: &Budget,
) -> Result<Factorization> {
    let current_atoms = z.expanded();
    let u0 = &current_atoms[u0_idx];
    let heavy = (2 * m_const - 1) as u64;

    // split A by the multiplicity already inside u0
    let mut takers: Vec<i64> = Vec::new(); // need a top-up to M-1
    let mut rich: Vec<i64> = Vec::new();
    for &a in a_set {
        if u0.multiplicity(a) <= (m_const - 2) as u64 {
            takers.push(a);
        } else {
            rich.push(a);
        }
    }

    // donors: one atom per taker value, rich in that value
    let mut donor_for: BTreeMap<i64, usize> = BTreeMap::new();
    let mut used: Vec<usize> = vec![u0_idx];
    for &a in &takers {
        let donor = (0..current_atoms.len())
            .find(|&i| !used.contains(&i) && current_atoms[i].multiplicity(a) >= heavy)
            .ok_or_else(|| Error::internal("no donor atom for a heavy value"))?;
        used.push(donor);
        donor_for.insert(a, donor);
    }

    // pool: u0's negatives minus a reserve of M-1 copies of each rich value
    let mut pool: BTreeMap<i64, u64> = u0.iter().filter(|&(g, _)| g < 0).collect();
    for &a in &rich {
        let slot = pool.get_mut(&a).ok_or_else(|| Error::internal("reserve missing"))?;
        *slot = slot.saturating_sub((m_const - 1) as u64);
    }

    // choose swap material c^{|a|} from the pool for each taker, smallest
    // (most negative) values first, until |a|-mass >= M-1 per taker
    let mut new_atoms: Vec<Sequence> = current_atoms.clone();
    for &a in &takers {
        let need = (m_const - 1) as u64;
        let mut got = 0u64;
        let mut moves: Vec<i64> = Vec::new();
        while got < need {
            let pick = pool
                .iter()
                .filter(|&(&c, &have)| c != a && have >= (-a) as u64)
                .map(|(&c, _)| c)
                .next()
                .ok_or_else(|| Error::internal("swap pool exhausted"))?;
            *pool.get_mut(&pick).unwrap() -= (-a) as u64;
            moves.push(pick);
            got += (-pick) as u64;
        }
        // perform the exchange: u0 gives c^{|a|} for each move, takes a^{|c|}
        let donor = donor_for[&a];
        for c in moves {
            let give = Sequence::from_terms(Ambient::Integers, [(c, (-a) as u64)])?;
            let take = Sequence::from_terms(Ambient::Integers, [(a, (-c) as u64)])?;
            new_atoms[u0_idx] = give.div_into(&new_atoms[u0_idx])?.mul(&take)?;
            new_atoms[donor] = take.div_into(&new_atoms[donor])?.mul(&give)?;
        }
    }

    if is_atom(&new_atoms[u0_idx]) {
        return Err(Error::internal("swapped block remained an atom"));
    }
    let mut out = Factorization::empty(z.ambient());
    for (i, a) in new_atoms.iter().enumerate() {
        if used.contains(&i) {
            let sub = factorizations(a, atoms, budget)?;
            if sub.is_empty() {
                return Err(Error::internal("swapped block has no factorization"));
            }
            for (atom, m) in sub.all[0].iter() {
                out.push(atom, m)?;
            }
        } else {
            out.push(a, 1)?;
        }
    }
    debug_assert_eq!(out.product(), z.product());
    Ok(out)
}

/// Analysis of an atom with at least two positive terms: the negative
/// values of multiplicity at least M-1 form a nonempty subsequence R; no
/// residue class `-L + aℤ` with `a ∈ supp(R)` meets `Σ(U⁻)`; and R extends
/// to a subsequence R' whose support generates `nℤ` avoiding L with at most
/// n-2 negative terms left outside.  Here `M = |min supp(U)|`.
#[derive(Clone, Debug)]
pub struct BreakApart {
    pub high_multiplicity: Sequence,
    pub extended: Sequence,
    pub modulus: u64,
}

pub fn breakapart_analysis(u: &Sequence, l: i64) -> Result<BreakApart> {
    if !is_atom(u) {
        return Err(Error::invalid("input is not an atom"));
    }
    let (plus, minus, _) = u.split_signs()?;
    if plus.len() < 2 {
        return Err(Error::invalid("need |U+| >= 2"));
    }
    let m_const = minus
        .support()
        .map(|g| -g)
        .max()
        .ok_or_else(|| Error::invalid("the atom has no negative part"))?;
    let plus_sums = plus.subsequence_sums(None)?;
    let sigma_plus = plus.sum()?;
    if l == sigma_plus || !plus_sums.contains(&l) {
        return Err(Error::invalid(
            "L must be a proper nonempty positive subsequence sum",
        ));
    }
    let floor = (m_const - 1) * (m_const - 1);
    if l < floor {
        return Err(Error::invalid(format!("need L >= (M-1)^2 = {floor}")));
    }
    if sigma_plus < l + floor {
        return Err(Error::invalid(format!(
            "need sigma(U+) >= L + (M-1)^2 = {}",
            l + floor
        )));
    }

    // part 1: the high-multiplicity subsequence is nonempty
    let r_terms: Vec<(i64, u64)> = minus
        .iter()
        .filter(|&(_, m)| m >= (m_const - 1) as u64)
        .collect();
    if r_terms.is_empty() {
        return Err(Error::internal("no negative value of multiplicity >= M-1"));
    }
    let r = Sequence::from_terms(Ambient::Integers, r_terms.clone())?;

    // part 2: -L + aZ misses Σ(U⁻)
    let minus_sums = minus.subsequence_sums(None)?;
    for &(a, _) in &r_terms {
        if minus_sums.iter().any(|&s| (s - (-l)).rem_euclid(-a) == 0) {
            return Err(Error::internal(format!(
                "the class -L + {a}Z meets the negative subsequence sums"
            )));
        }
    }

    // part 3: grow the support of R to a subgroup avoiding L
    let r_support: Vec<i64> = r.support().collect();
    let all_support: Vec<i64> = minus.support().collect();
    let extras: Vec<i64> = all_support
        .iter()
        .copied()
        .filter(|g| !r_support.contains(g))
        .collect();
    for mask in 0..(1u32 << extras.len()) {
        let mut support = r_support.clone();
        for (i, &g) in extras.iter().enumerate() {
            if mask & (1 << i) != 0 {
                support.push(g);
            }
        }
        let n = support.iter().fold(0i64, |acc, &g| acc.gcd(&g));
        if n == 0 || l % n == 0 {
            continue;
        }
        let outside: u64 = minus
            .iter()
            .filter(|(g, _)| !support.contains(g))
            .map(|(_, m)| m)
            .sum();
        if outside as i64 <= n - 2 {
            let extended = Sequence::from_terms(
                Ambient::Integers,
                minus.iter().filter(|(g, _)| support.contains(g)),
            )?;
            return Ok(BreakApart {
                high_multiplicity: r,
                extended,
                modulus: n as u64,
            });
        }
    }
    Err(Error::internal("no qualifying extension of the heavy subsequence"))
}
