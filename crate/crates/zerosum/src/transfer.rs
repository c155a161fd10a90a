//! Transfer maps: the collapse of a single-negative-value ground onto a
//! finite cyclic group, the collapse of the multiples of d onto d itself,
//! and fidelity checks for both (sets of lengths and the distances between
//! length classes must survive the map).

use std::collections::BTreeSet;

use crate::atoms::AtomSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factorization::{distance, Factorization};
use crate::factorize::{factorizations, FactorizationSet};
use crate::sequence::{Ambient, Sequence};

/// For a ground with negative part `{-n}`: drop the `(-n)` terms and read
/// every remaining term mod n.  The image is a zero-sum sequence over ℤ/nℤ
/// with the same factorization lengths.
pub fn transfer_to_cyclic(b: &Sequence, n: u64) -> Result<Sequence> {
    if b.ambient() != Ambient::Integers {
        return Err(Error::UnsupportedAmbient("expected a sequence over ℤ".into()));
    }
    if n == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let bad: Vec<i64> = b.support().filter(|&g| g < 0 && g != -(n as i64)).collect();
    if !bad.is_empty() {
        return Err(Error::invalid(format!(
            "negative support must be exactly {{-{n}}}, found {bad:?}"
        )));
    }
    if !b.is_zero_sum()? {
        return Err(Error::invalid("the element is not a zero-sum sequence"));
    }
    let ambient = Ambient::cyclic(n)?;
    let image = Sequence::from_terms(
        ambient,
        b.iter().filter(|&(g, _)| g != -(n as i64)),
    )?;
    debug_assert!(image.is_zero_sum()?);
    Ok(image)
}

/// The subgroup of ℤ/nℤ generated by the image classes, reported as its
/// index-generating gcd: the class group of the collapse is all of ℤ/nℤ iff
/// this is 1.
pub fn cyclic_class_gcd(b: &Sequence, n: u64) -> Result<u64> {
    let image = transfer_to_cyclic(b, n)?;
    let mut g = n;
    for (r, _) in image.iter() {
        g = num_integer::gcd(g, r as u64);
    }
    Ok(g)
}

/// ψ: replace every term `kd` (k ≥ 1) by `d^k`.  Needs negative support
/// inside `{-d, -1}`.
pub fn psi_collapse(b: &Sequence, d: i64) -> Result<Sequence> {
    if b.ambient() != Ambient::Integers {
        return Err(Error::UnsupportedAmbient("expected a sequence over ℤ".into()));
    }
    if d < 1 {
        return Err(Error::invalid("d must be positive"));
    }
    if b.support().any(|g| g < 0 && g != -d && g != -1) {
        return Err(Error::invalid("negative support must lie in {-d, -1}"));
    }
    let mut terms: Vec<(i64, u64)> = Vec::new();
    for (g, m) in b.iter() {
        if g > 0 && g % d == 0 {
            terms.push((d, (g / d) as u64 * m));
        } else {
            terms.push((g, m));
        }
    }
    Sequence::from_terms(Ambient::Integers, terms)
}

/// The induced map on factorizations.  An atom containing a term `kd`
/// (k ≥ 1) must have that term as its only positive; it maps to the unique
/// factorization `(d(-1)^d)^l (d(-d))^(k-l)` of its ψ-image.  Other atoms
/// are untouched.  |ψ̄(z)| − |z| = σ(F)/d − |F| where F is the part of the
/// product supported on the multiples of d.
pub fn psi_bar(z: &Factorization, d: i64) -> Result<Factorization> {
    if d < 1 {
        return Err(Error::invalid("d must be positive"));
    }
    let mut out = Factorization::empty(z.ambient());
    for (atom, mult) in z.iter() {
        let multiples: Vec<(i64, u64)> =
            atom.iter().filter(|&(g, _)| g > 0 && g % d == 0).collect();
        if multiples.is_empty() {
            out.push(atom, mult)?;
            continue;
        }
        let plus = atom.plus_part()?;
        if plus.len() != multiples[0].1 || multiples.len() != 1 || multiples[0].1 != 1 {
            return Err(Error::invalid(format!(
                "atom {atom} has a multiple of {d} alongside other positives; \
                 it cannot belong to a ground with negative part {{-{d},-1}}"
            )));
        }
        let kd = multiples[0].0;
        let k = (kd / d) as u64;
        let v1 = atom.multiplicity(-1);
        if v1 % d as u64 != 0 {
            return Err(Error::invalid(format!(
                "atom {atom}: the (-1)-multiplicity is not a multiple of {d}"
            )));
        }
        let l = v1 / d as u64;
        if l > k || atom.multiplicity(-d) != k - l {
            return Err(Error::invalid(format!("atom {atom} is not of collapse shape")));
        }
        if l > 0 {
            out.push(
                &Sequence::from_terms(Ambient::Integers, [(d, 1), (-1, d as u64)])?,
                l * mult,
            )?;
        }
        if k - l > 0 {
            out.push(
                &Sequence::from_terms(Ambient::Integers, [(d, 1), (-d, 1)])?,
                (k - l) * mult,
            )?;
        }
    }
    Ok(out)
}

/// Which transfer a fidelity check is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferKind {
    /// Collapse onto ℤ/nℤ; lengths and class distances must match exactly.
    Cyclic { n: u64 },
    /// Multiples-of-d collapse; lengths match after the documented shift and
    /// class distances may only grow.
    Psi { d: i64 },
    /// Identity (sanity checks).
    Identity,
}

#[derive(Clone, Debug)]
pub struct FidelityReport {
    pub kind: TransferKind,
    pub passed: bool,
    pub source_lengths: BTreeSet<u64>,
    pub image_lengths: BTreeSet<u64>,
    /// The length shift applied to the source lengths (ψ only).
    pub shift: i64,
    pub detail: Vec<String>,
    pub counterexample: Option<String>,
}

fn pair_distance_table(zs: &FactorizationSet) -> Vec<(u64, u64, u64)> {
    let lengths: BTreeSet<u64> = zs.all.iter().map(|z| z.len()).collect();
    let lv: Vec<u64> = lengths.into_iter().collect();
    let mut out = Vec::new();
    for i in 0..lv.len() {
        for j in i + 1..lv.len() {
            let xs = zs.of_length(lv[i]);
            let ys = zs.of_length(lv[j]);
            let mut best = u64::MAX;
            for x in &xs {
                for y in &ys {
                    best = best.min(distance(x, y));
                }
            }
            out.push((lv[i], lv[j], best));
        }
    }
    out
}

/// Enumerate both sides of a transfer and compare sets of lengths and the
/// distances between length classes.  Any mismatch is reported with the
/// witnessing data rather than a bare boolean.
pub fn verify_transfer_fidelity(
    b: &Sequence,
    kind: TransferKind,
    atoms_src: &AtomSet,
    atoms_dst: &AtomSet,
    budget: &Budget,
) -> Result<FidelityReport> {
    let src = factorizations(b, atoms_src, budget)?;
    if !src.complete {
        return Err(Error::budget("source enumeration incomplete"));
    }
    let (image, shift): (Sequence, i64) = match kind {
        TransferKind::Cyclic { n } => (transfer_to_cyclic(b, n)?, 0),
        TransferKind::Psi { d } => {
            let image = psi_collapse(b, d)?;
            // σ(F)/d − |F| over the multiples of d
            let mut shift = 0i64;
            for (g, m) in b.iter() {
                if g > 0 && g % d == 0 {
                    shift += (g / d - 1) * m as i64;
                }
            }
            (image, shift)
        }
        TransferKind::Identity => (b.clone(), 0),
    };
    let dst = factorizations(&image, atoms_dst, budget)?;
    if !dst.complete {
        return Err(Error::budget("image enumeration incomplete"));
    }

    let source_lengths: BTreeSet<u64> = src.all.iter().map(|z| z.len()).collect();
    let image_lengths: BTreeSet<u64> = dst.all.iter().map(|z| z.len()).collect();
    let shifted: BTreeSet<u64> = source_lengths
        .iter()
        .map(|&l| (l as i64 + shift) as u64)
        .collect();

    let mut detail = Vec::new();
    let mut counterexample = None;
    let mut passed = true;

    if shifted != image_lengths {
        passed = false;
        counterexample = Some(format!(
            "lengths: source {source_lengths:?} (shift {shift}) vs image {image_lengths:?} for {b}"
        ));
    } else {
        detail.push(format!(
            "lengths agree ({} values, shift {shift})",
            image_lengths.len()
        ));
    }

    if passed {
        let src_table = pair_distance_table(&src);
        let dst_table = pair_distance_table(&dst);
        for ((k, l, ds), (_, _, dd)) in src_table.iter().zip(dst_table.iter()) {
            let ok = match kind {
                TransferKind::Psi { .. } => ds <= dd,
                _ => ds == dd,
            };
            if !ok {
                passed = false;
                counterexample = Some(format!(
                    "d(Z_{k}, Z_{l}) = {ds} in the source but {dd} in the image for {b}"
                ));
                break;
            }
        }
        if passed && !src_table.is_empty() {
            detail.push(format!("{} length-class distances compared", src_table.len()));
        }
    }

    Ok(FidelityReport {
        kind,
        passed,
        source_lengths,
        image_lengths,
        shift,
        detail,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::{enumerate_atoms, enumerate_atoms_cyclic};
    use crate::factorize::length_set;

    fn seq(s: &str) -> Sequence {
        s.parse().unwrap()
    }

    #[test]
    fn cyclic_images() {
        let img = transfer_to_cyclic(&seq("2^2 -4"), 4).unwrap();
        assert_eq!(
            img,
            Sequence::from_terms(Ambient::Cyclic(4), [(2, 2)]).unwrap()
        );
        let img = transfer_to_cyclic(&seq("1^3 -3"), 3).unwrap();
        assert_eq!(
            img,
            Sequence::from_terms(Ambient::Cyclic(3), [(1, 3)]).unwrap()
        );
        assert!(transfer_to_cyclic(&seq("1 -1"), 4).is_err());
    }

    #[test]
    fn cyclic_lengths_preserved() {
        let budget = Budget::default();
        let atoms_src = enumerate_atoms(&[-4, 1, 2, 3], &budget).unwrap();
        let atoms_dst = enumerate_atoms_cyclic(4, &[1, 2, 3], &budget).unwrap();
        for b in [seq("1^4 -4"), seq("2^4 -4^2"), seq("1^2 3^2 -4^2"), seq("3^4 -4^3")] {
            let l_src = length_set(&b, &atoms_src, &budget).unwrap();
            let img = transfer_to_cyclic(&b, 4).unwrap();
            let l_dst = length_set(&img, &atoms_dst, &budget).unwrap();
            assert_eq!(l_src.lengths, l_dst.lengths, "element {b}");
            let rep =
                verify_transfer_fidelity(&b, TransferKind::Cyclic { n: 4 }, &atoms_src, &atoms_dst, &budget)
                    .unwrap();
            assert!(rep.passed, "fidelity for {b}: {:?}", rep.counterexample);
        }
    }

    #[test]
    fn class_group_of_collapse() {
        // {-4, 2}: the image classes generate a proper subgroup of Z/4Z
        assert_eq!(cyclic_class_gcd(&seq("2^2 -4"), 4).unwrap(), 2);
        assert_eq!(cyclic_class_gcd(&seq("1^4 -4"), 4).unwrap(), 1);
    }

    #[test]
    fn psi_collapse_examples() {
        // no multiples of d: unchanged
        let b = seq("1^2 -1^2");
        assert_eq!(psi_collapse(&b, 2).unwrap(), b);
        // 4 -> 2^2
        let b = seq("4 -2^2");
        assert_eq!(psi_collapse(&b, 2).unwrap(), seq("2^2 -2^2"));
    }

    #[test]
    fn psi_bar_and_shift() {
        // B = 4 (-2)^2: single atom, image splits into (2(-2))^2
        let atoms = enumerate_atoms(&[-2, -1, 1, 2, 4], &Budget::default()).unwrap();
        let zs = factorizations(&seq("4 -2^2"), &atoms, &Budget::default()).unwrap();
        assert_eq!(zs.len(), 1);
        let z = &zs.all[0];
        let img = psi_bar(z, 2).unwrap();
        assert_eq!(img.len(), z.len() + 1); // shift = 4/2 - 1 = 1
        assert_eq!(img.product(), &seq("2^2 -2^2"));
    }

    #[test]
    fn psi_fidelity() {
        let budget = Budget::default();
        let atoms_src = enumerate_atoms(&[-2, -1, 1, 3, 4, 6], &budget).unwrap();
        let atoms_dst = enumerate_atoms(&[-2, -1, 1, 2, 3], &budget).unwrap();
        for b in [seq("4 -2^2"), seq("6 1^2 -2^4"), seq("4 3 -1^3 -2^2"), seq("4 6 -2^5")] {
            let rep =
                verify_transfer_fidelity(&b, TransferKind::Psi { d: 2 }, &atoms_src, &atoms_dst, &budget)
                    .unwrap();
            assert!(rep.passed, "psi fidelity for {b}: {:?}", rep.counterexample);
        }
    }

    #[test]
    fn psi_bar_surjectivity_small() {
        // ψ̄(Z(B)) = Z(ψ(B)) on a small instance
        let budget = Budget::default();
        let atoms_src = enumerate_atoms(&[-2, -1, 1, 3, 4, 6], &budget).unwrap();
        let atoms_dst = enumerate_atoms(&[-2, -1, 1, 2, 3], &budget).unwrap();
        let b = seq("4 3 1 -2^3 -1^2");
        let src = factorizations(&b, &atoms_src, &budget).unwrap();
        let img = psi_collapse(&b, 2).unwrap();
        let dst = factorizations(&img, &atoms_dst, &budget).unwrap();
        let mapped: BTreeSet<Factorization> =
            src.all.iter().map(|z| psi_bar(z, 2).unwrap()).collect();
        let expect: BTreeSet<Factorization> = dst.all.into_iter().collect();
        assert_eq!(mapped, expect);
    }
}
