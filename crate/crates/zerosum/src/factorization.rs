//! Factorizations: multisets of atoms with a cached product, and the
//! distance between two factorizations.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::{Ambient, Sequence};

/// A multiset of atoms together with its product.  Nothing here checks that
/// the parts are atoms; enumeration code only ever inserts atoms and the
/// test suites re-verify.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Factorization {
    ambient: Ambient,
    atoms: BTreeMap<Sequence, u64>,
    product: Sequence,
}

impl Factorization {
    pub fn empty(ambient: Ambient) -> Self {
        Factorization {
            ambient,
            atoms: BTreeMap::new(),
            product: Sequence::empty(ambient),
        }
    }

    pub fn from_atoms<I>(ambient: Ambient, atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = Sequence>,
    {
        let mut z = Factorization::empty(ambient);
        for a in atoms {
            z.push(&a, 1)?;
        }
        Ok(z)
    }

    pub fn from_atom_powers<I>(ambient: Ambient, atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Sequence, u64)>,
    {
        let mut z = Factorization::empty(ambient);
        for (a, k) in atoms {
            z.push(&a, k)?;
        }
        Ok(z)
    }

    pub fn push(&mut self, atom: &Sequence, count: u64) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        if atom.ambient() != self.ambient {
            return Err(Error::invalid("atom over a different group"));
        }
        self.product = self.product.mul(&atom.pow(count)?)?;
        *self.atoms.entry(atom.clone()).or_insert(0) += count;
        Ok(())
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Number of atoms counted with multiplicity, |z|.
    pub fn len(&self) -> u64 {
        self.atoms.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn product(&self) -> &Sequence {
        &self.product
    }

    pub fn atom_multiplicity(&self, atom: &Sequence) -> u64 {
        self.atoms.get(atom).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sequence, u64)> + '_ {
        self.atoms.iter().map(|(a, &m)| (a, m))
    }

    /// Atoms expanded with multiplicity.
    pub fn expanded(&self) -> Vec<Sequence> {
        let mut out = Vec::new();
        for (a, &m) in &self.atoms {
            for _ in 0..m {
                out.push(a.clone());
            }
        }
        out
    }

    pub fn contains_atom(&self, atom: &Sequence) -> bool {
        self.atom_multiplicity(atom) > 0
    }

    /// Multiset union of two factorizations.
    pub fn mul(&self, other: &Factorization) -> Result<Factorization> {
        let mut out = self.clone();
        for (a, m) in other.iter() {
            out.push(a, m)?;
        }
        Ok(out)
    }

    /// Remove `count` copies of `atom`.
    pub fn remove(&self, atom: &Sequence, count: u64) -> Result<Factorization> {
        let have = self.atom_multiplicity(atom);
        if have < count {
            return Err(Error::invalid("factorization does not contain that atom"));
        }
        let mut atoms = self.atoms.clone();
        if have == count {
            atoms.remove(atom);
        } else {
            *atoms.get_mut(atom).unwrap() -= count;
        }
        let product = atom.pow(count)?.div_into(&self.product)?;
        Ok(Factorization {
            ambient: self.ambient,
            atoms,
            product,
        })
    }

    /// Multiset gcd with another factorization.
    pub fn gcd(&self, other: &Factorization) -> Factorization {
        let mut atoms = BTreeMap::new();
        let mut product = Sequence::empty(self.ambient);
        for (a, m) in self.iter() {
            let k = m.min(other.atom_multiplicity(a));
            if k > 0 {
                atoms.insert(a.clone(), k);
                product = product.mul(&a.pow(k).expect("gcd product")).expect("gcd product");
            }
        }
        Factorization {
            ambient: self.ambient,
            atoms,
            product,
        }
    }

    /// Multiset of positive parts of the atoms (only over ℤ); used by the
    /// refinement partial order on factorizations.
    pub fn plus_parts(&self) -> Result<Vec<Sequence>> {
        let mut out = Vec::new();
        for (a, m) in self.iter() {
            let p = a.plus_part()?;
            for _ in 0..m {
                out.push(p.clone());
            }
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (a, &m) in &self.atoms {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "({a})")?;
            } else {
                write!(f, "({a})^{m}")?;
            }
        }
        Ok(())
    }
}

/// d(z, z'): cancel the common atom multiset, then take the larger residual
/// length.  The products need not be equal.
pub fn distance(z: &Factorization, w: &Factorization) -> u64 {
    debug_assert_eq!(z.ambient(), w.ambient());
    let mut common = 0u64;
    for (a, m) in z.iter() {
        common += m.min(w.atom_multiplicity(a));
    }
    (z.len() - common).max(w.len() - common)
}

/// min over pairs of `distance`, i.e. d(X, Y) for sets of factorizations.
pub fn set_distance(xs: &[&Factorization], ys: &[&Factorization]) -> Option<u64> {
    let mut best: Option<u64> = None;
    for x in xs {
        for y in ys {
            let d = distance(x, y);
            if best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
    }
    best
}
