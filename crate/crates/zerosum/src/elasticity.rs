//! Exact global elasticity, and the unions-of-length-sets profiles ρ_k, λ_k,
//! V_k for finite grounds.
//!
//! For a finite ground set the elasticity is computed directly from a
//! Hilbert basis of the kernel-pair monoid of the atom catalogue.  For a
//! ground set with infinitely many positives (and a finite negative part)
//! the positive part is first collapsed to finitely many classes: two large
//! positive elements are interchangeable inside positive parts of atoms when
//! they are congruent mod lcm(G₀⁻), which makes the class-level pair monoid
//! finitely generated and its extreme length ratio equal to the elasticity.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::atoms::{enumerate_atoms, is_atom, AtomSet};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factorize::LengthsCache;
use crate::groundspec::GroundSpec;
use crate::hilbert::{hilbert_basis, HilbertMethod, PairAtom};
use crate::sequence::{Ambient, Sequence};
use crate::structure::structure_condition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaKind {
    /// A single small element.
    Singleton,
    /// All members `>= threshold` in a fixed residue class mod lcm(G₀⁻).
    Residue { residue: i64, modulus: i64 },
}

/// One class of the partition of G₀⁺.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaClass {
    /// Smallest member of the class.
    pub representative: i64,
    pub kind: KappaKind,
}

/// The finite partition of the positive part: members below
/// `B = |G₀⁻| · |min G₀⁻| · lcm(G₀⁻)` are singletons, members at or above it
/// are grouped by residue mod lcm(G₀⁻).
pub fn kappa_classes(spec: &GroundSpec) -> Result<Vec<KappaClass>> {
    let negatives = spec.negatives()?;
    if negatives.is_empty() {
        return Err(Error::invalid("the ground set has no negative part"));
    }
    let min_abs = -negatives[0];
    let lcm: i64 = negatives.iter().fold(1i64, |acc, &g| acc.lcm(&-g));
    let threshold = negatives.len() as i64 * min_abs * lcm;

    let mut classes: Vec<KappaClass> = Vec::new();
    for g in spec.members_in(1, threshold - 1) {
        classes.push(KappaClass {
            representative: g,
            kind: KappaKind::Singleton,
        });
    }

    // residue classes occupied at or above the threshold
    let mut reps: BTreeMap<i64, i64> = BTreeMap::new();
    for &g in spec.finite_part() {
        if g >= threshold {
            let r = g.rem_euclid(lcm);
            reps.entry(r).and_modify(|m| *m = (*m).min(g)).or_insert(g);
        }
    }
    for p in spec.ups() {
        let step = p.step as i64;
        let first = if p.start >= threshold {
            p.start
        } else {
            p.start + ((threshold - p.start + step - 1) / step) * step
        };
        // one lcm's worth of steps covers every residue the progression hits
        for k in 0..lcm {
            let g = first + k * step;
            let r = g.rem_euclid(lcm);
            reps.entry(r).and_modify(|m| *m = (*m).min(g)).or_insert(g);
        }
    }
    for (r, g) in reps {
        classes.push(KappaClass {
            representative: g,
            kind: KappaKind::Residue {
                residue: r,
                modulus: lcm,
            },
        });
    }
    Ok(classes)
}

/// A class-level generator: the class multiset of the positive part of some
/// atom, with a concrete lift realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaGenerator {
    /// Indices into the class list, sorted, with multiplicity.
    pub classes: Vec<usize>,
    /// The representative positive part.
    pub lift: Sequence,
}

/// All class multisets of length at most |min G₀⁻| whose representative lift
/// extends to an atom (membership does not depend on the choice of lift).
pub fn kappa_generators(
    spec: &GroundSpec,
    budget: &Budget,
) -> Result<(Vec<KappaClass>, Vec<KappaGenerator>)> {
    let classes = kappa_classes(spec)?;
    let negatives = spec.negatives()?;
    let max_len = (-negatives[0]) as u64;
    let mut meter = budget.meter("searching class-level generators");

    let mut out: Vec<KappaGenerator> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    gen_rec(
        &classes,
        &negatives,
        max_len,
        0,
        &mut stack,
        &mut out,
        &mut meter,
    )?;
    Ok((classes, out))
}

fn gen_rec(
    classes: &[KappaClass],
    negatives: &[i64],
    slots_left: u64,
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<KappaGenerator>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    meter.tick()?;
    if !stack.is_empty() {
        let lift = Sequence::from_terms(
            Ambient::Integers,
            stack.iter().map(|&i| (classes[i].representative, 1)),
        )?;
        if extends_to_atom(&lift, negatives, meter)? {
            out.push(KappaGenerator {
                classes: stack.clone(),
                lift,
            });
        }
    }
    if slots_left == 0 {
        return Ok(());
    }
    for i in start..classes.len() {
        stack.push(i);
        gen_rec(classes, negatives, slots_left - 1, i, stack, out, meter)?;
        stack.pop();
    }
    Ok(())
}

/// Does some negative completion R (σ(R) = -σ(F)) make F·R an atom?
fn extends_to_atom(
    lift: &Sequence,
    negatives: &[i64],
    meter: &mut crate::budget::Meter,
) -> Result<bool> {
    let target = lift.sum()?;
    let mut partial: Vec<(i64, u64)> = Vec::new();
    completion_rec(lift, negatives, 0, target, &mut partial, meter)
}

fn completion_rec(
    lift: &Sequence,
    negatives: &[i64],
    idx: usize,
    target: i64,
    partial: &mut Vec<(i64, u64)>,
    meter: &mut crate::budget::Meter,
) -> Result<bool> {
    meter.tick()?;
    if target == 0 {
        let candidate = lift.mul(&Sequence::from_terms(
            Ambient::Integers,
            partial.iter().copied(),
        )?)?;
        return Ok(is_atom(&candidate));
    }
    if idx == negatives.len() {
        return Ok(false);
    }
    let a = -negatives[idx];
    let max_k = target / a;
    for k in (0..=max_k).rev() {
        if k > 0 {
            partial.push((negatives[idx], k as u64));
        }
        let hit = completion_rec(lift, negatives, idx + 1, target - a * k, partial, meter)?;
        if k > 0 {
            partial.pop();
        }
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Accepted {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElasticityMethod {
    /// Extreme ratio of the kernel-pair cone, by exact LP.  The optimum sits
    /// on an extreme ray, so it equals the maximal pair-atom ratio.
    KernelCone,
    /// Full pair-atom basis (cross-check route for small systems).
    PairAtoms(HilbertMethod),
}

#[derive(Clone, Debug)]
pub struct ElasticityReport {
    pub rho: BigRational,
    pub accepted: Accepted,
    /// Number of classes in the positive-part partition (0 on the finite
    /// route, which needs no partition).
    pub kappa_classes: usize,
    /// Number of pair-monoid generators used.
    pub generators: usize,
    pub method: ElasticityMethod,
}

fn max_ratio(pairs: &[PairAtom]) -> BigRational {
    let one = BigRational::from_integer(BigInt::from(1));
    let mut best = one;
    for p in pairs {
        let (x, y) = (p.left_len(), p.right_len());
        if y == 0 {
            continue;
        }
        let r = BigRational::new(BigInt::from(x), BigInt::from(y));
        if r > best {
            best = r;
        }
    }
    best
}

/// Exponent-vector columns of the atom catalogue of a finite ground.
pub fn atom_columns(ground: &[i64], budget: &Budget) -> Result<(usize, Vec<Vec<i64>>)> {
    let atoms = enumerate_atoms(ground, budget)?;
    let members: Vec<i64> = atoms.ground.clone();
    let index: BTreeMap<i64, usize> = members.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let cols = atoms
        .atoms
        .iter()
        .map(|a| {
            let mut col = vec![0i64; members.len()];
            for (g, m) in a.iter() {
                col[index[&g]] = m as i64;
            }
            col
        })
        .collect();
    Ok((atoms.atoms.len(), cols))
}

/// Class-exponent columns of the class-level generator system.
pub fn kappa_columns(spec: &GroundSpec, budget: &Budget) -> Result<(usize, usize, Vec<Vec<i64>>)> {
    let (classes, generators) = kappa_generators(spec, budget)?;
    let cols = generators
        .iter()
        .map(|g| {
            let mut col = vec![0i64; classes.len()];
            for &c in &g.classes {
                col[c] += 1;
            }
            col
        })
        .collect();
    Ok((classes.len(), generators.len(), cols))
}

/// Maximal |x|/|y| over the full pair-atom basis of a generator system.
/// Exponential in bad cases; used as the independent route on small
/// systems.
pub fn elasticity_via_pair_atoms(
    columns: &[Vec<i64>],
    budget: &Budget,
) -> Result<(BigRational, HilbertMethod)> {
    let basis = hilbert_basis(columns, budget)?;
    Ok((max_ratio(&basis.pairs), basis.method))
}

/// Exact elasticity of the monoid of zero-sum sequences over the set
/// described by `spec`.  The negative part must be finite and nonempty (use
/// the negated set otherwise).
///
/// Finite ground: extreme length ratio of the kernel-pair cone over the atom
/// catalogue (the value is accepted).  Infinite positive part: the same
/// ratio over the class-level generator system.
pub fn exact_elasticity(spec: &GroundSpec, budget: &Budget) -> Result<ElasticityReport> {
    let (spec, _had_zero) = spec.strip_zero();
    if !spec.is_condensed() {
        return Err(Error::invalid("ground set is not condensed"));
    }
    let negatives = spec.negatives()?;
    if negatives.is_empty() {
        return Err(Error::invalid("the ground set has no negative part"));
    }

    if let Some(members) = spec.finite_members() {
        let (generators, cols) = atom_columns(&members, budget)?;
        return Ok(ElasticityReport {
            rho: crate::lp::max_pair_ratio(&cols)?,
            accepted: Accepted::Yes,
            kappa_classes: 0,
            generators,
            method: ElasticityMethod::KernelCone,
        });
    }

    let (kappa_classes, generators, cols) = kappa_columns(&spec, budget)?;
    let rho = crate::lp::max_pair_ratio(&cols)?;

    let accepted = if rho == BigRational::from_integer(BigInt::from(1)) {
        // half-factorial: the bound 1 is attained by every atom
        Accepted::Yes
    } else if structure_condition(&spec).unwrap_or(false) {
        // ground of shape {-d,-1} ∪ positives with 1, infinitely many
        // positives, structure condition satisfied, not half-factorial:
        // the elasticity is then known to be unattained
        Accepted::No
    } else {
        Accepted::Unknown
    };

    Ok(ElasticityReport {
        rho,
        accepted,
        kappa_classes,
        generators,
        method: ElasticityMethod::KernelCone,
    })
}

/// V_k, ρ_k and λ_k for a finite ground set: enumerate every product of k
/// atoms (deduplicated by the product), and take the union of their sets of
/// lengths.
#[derive(Clone, Debug)]
pub struct KProfile {
    pub k: u64,
    pub v_k: BTreeSet<u64>,
    pub rho_k: u64,
    pub lambda_k: u64,
}

pub fn k_profile(ground: &[i64], k: u64, budget: &Budget) -> Result<KProfile> {
    if k == 0 {
        return Ok(KProfile {
            k,
            v_k: BTreeSet::from([0]),
            rho_k: 0,
            lambda_k: 0,
        });
    }
    let atoms = enumerate_atoms(ground, budget)?;
    if atoms.atoms.is_empty() {
        return Ok(KProfile {
            k,
            v_k: BTreeSet::from([k]),
            rho_k: k,
            lambda_k: k,
        });
    }
    let mut products: BTreeSet<Sequence> = BTreeSet::new();
    let mut meter = budget.meter("enumerating k-atom products");
    product_rec(
        &atoms,
        0,
        k,
        &Sequence::empty(Ambient::Integers),
        &mut products,
        &mut meter,
    )?;

    let mut cache = LengthsCache::new(&atoms);
    let mut v_k: BTreeSet<u64> = BTreeSet::new();
    for b in &products {
        let l = cache.lengths(b, budget)?;
        debug_assert!(l.contains(&k));
        v_k.extend(l.iter().copied());
    }
    let rho_k = *v_k.iter().next_back().unwrap();
    let lambda_k = *v_k.iter().next().unwrap();
    Ok(KProfile {
        k,
        v_k,
        rho_k,
        lambda_k,
    })
}

fn product_rec(
    atoms: &AtomSet,
    start: usize,
    slots: u64,
    acc: &Sequence,
    out: &mut BTreeSet<Sequence>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    meter.tick()?;
    if slots == 0 {
        out.insert(acc.clone());
        return Ok(());
    }
    for idx in start..atoms.atoms.len() {
        let next = acc.mul(&atoms.atoms[idx])?;
        product_rec(atoms, idx, slots - 1, &next, out, meter)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundspec::Progression;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn kappa_classes_shapes() {
        // G₀⁻ = {-1}: threshold 1, a single residue class
        let spec = GroundSpec::from_parts([-1], vec![Progression::new(1, 1).unwrap()]);
        let classes = kappa_classes(&spec).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].representative, 1);
        assert!(matches!(classes[0].kind, KappaKind::Residue { .. }));

        // {-2,-1} ∪ odd positives: threshold 8, singletons 1,3,5,7 plus one
        // residue class
        let spec = GroundSpec::from_parts([-2, -1], vec![Progression::new(1, 2).unwrap()]);
        let classes = kappa_classes(&spec).unwrap();
        let singles: Vec<i64> = classes
            .iter()
            .filter(|c| c.kind == KappaKind::Singleton)
            .map(|c| c.representative)
            .collect();
        assert_eq!(singles, vec![1, 3, 5, 7]);
        let residues: Vec<&KappaClass> = classes
            .iter()
            .filter(|c| matches!(c.kind, KappaKind::Residue { .. }))
            .collect();
        assert_eq!(residues.len(), 1);
        assert_eq!(residues[0].representative, 9);

        // finite positive part entirely below the threshold: all singletons
        let spec = GroundSpec::finite_set([-2, -1, 1, 3]);
        let classes = kappa_classes(&spec).unwrap();
        assert!(classes.iter().all(|c| c.kind == KappaKind::Singleton));
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn kappa_generator_examples() {
        // {-1} ∪ ℕ: every positive extends, one class, one generator
        let spec = GroundSpec::from_parts([-1], vec![Progression::new(1, 1).unwrap()]);
        let (_, gens) = kappa_generators(&spec, &Budget::default()).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].classes.len(), 1);

        // {-4, 2}: the only generator is the class pair of 2²
        let spec = GroundSpec::finite_set([-4, 2]);
        let (_, gens) = kappa_generators(&spec, &Budget::default()).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].lift, "2^2".parse().unwrap());

        // {-2,-1} ∪ odd positives: includes κ(1) and κ(1)²
        let spec = GroundSpec::from_parts([-2, -1], vec![Progression::new(1, 2).unwrap()]);
        let (classes, gens) = kappa_generators(&spec, &Budget::default()).unwrap();
        let k1 = classes.iter().position(|c| c.representative == 1).unwrap();
        assert!(gens.iter().any(|g| g.classes == vec![k1]));
        assert!(gens.iter().any(|g| g.classes == vec![k1, k1]));
    }

    #[test]
    fn elasticity_examples() {
        let b = Budget::default();
        let r = exact_elasticity(&GroundSpec::finite_set([-4, 2]), &b).unwrap();
        assert_eq!(r.rho, rat(1, 1));
        assert_eq!(r.accepted, Accepted::Yes);

        let spec = GroundSpec::from_parts([-1], vec![Progression::new(1, 1).unwrap()]);
        let r = exact_elasticity(&spec, &b).unwrap();
        assert_eq!(r.rho, rat(1, 1));

        let spec = GroundSpec::from_parts([-2, -1], vec![Progression::new(1, 2).unwrap()]);
        let r = exact_elasticity(&spec, &b).unwrap();
        assert_eq!(r.rho, rat(2, 1));
        assert_eq!(r.accepted, Accepted::No);

        let r = exact_elasticity(&GroundSpec::finite_set([-2, -1, 1, 2]), &b).unwrap();
        assert_eq!(r.rho, rat(3, 2));
    }

    #[test]
    fn k_profile_basics() {
        let b = Budget::default();
        for ground in [&[-2, -1, 1, 2][..], &[-4, 2][..]] {
            let p = k_profile(ground, 1, &b).unwrap();
            assert_eq!(p.v_k, BTreeSet::from([1]), "rho_1 = 1 on {ground:?}");
        }
        // half-factorial ground: V_k = {k}
        for k in 1..=4 {
            let p = k_profile(&[-4, 2], k, &b).unwrap();
            assert_eq!(p.v_k, BTreeSet::from([k]));
        }
    }
}
