//! Sequences (finite multisets of group elements) over ℤ or ℤ/nℤ.
//!
//! A sequence is written multiplicatively: `-2^3 1^4 5` is the multiset with
//! three copies of -2, four copies of 1 and one copy of 5.  Multiplication of
//! sequences is multiset union, divisibility is multiset containment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum multiplicity a single term may carry.  Keeps every sum that the
/// library computes comfortably inside `i128` before it is checked back into
/// `i64`.
pub const MAX_MULTIPLICITY: u64 = u32::MAX as u64;

/// The group a sequence lives in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Ambient {
    Integers,
    /// ℤ/nℤ with elements stored as representatives in `0..n`.
    Cyclic(u64),
}

impl Ambient {
    pub fn cyclic(n: u64) -> Result<Ambient> {
        if n == 0 {
            return Err(Error::invalid("cyclic modulus must be at least 1"));
        }
        Ok(Ambient::Cyclic(n))
    }

    /// Canonical representative of `g` in this group.
    pub fn normalize(&self, g: i64) -> i64 {
        match self {
            Ambient::Integers => g,
            Ambient::Cyclic(n) => g.rem_euclid(*n as i64),
        }
    }

    pub fn identity(&self) -> i64 {
        0
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, Ambient::Cyclic(_))
    }
}

/// A finite multiset of group elements.
///
/// Equality is multiset equality; the derived order (ambient, then the sorted
/// term list) is the canonical order used everywhere deduplicated output is
/// produced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sequence {
    ambient: Ambient,
    terms: BTreeMap<i64, u64>,
}

impl Sequence {
    pub fn empty(ambient: Ambient) -> Self {
        Sequence {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    /// Build from `(element, multiplicity)` pairs.  Multiplicities of equal
    /// elements accumulate; zero multiplicities are dropped.
    pub fn from_terms<I>(ambient: Ambient, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, u64)>,
    {
        let mut map = BTreeMap::new();
        for (g, m) in terms {
            if m == 0 {
                continue;
            }
            let g = ambient.normalize(g);
            let slot = map.entry(g).or_insert(0u64);
            *slot = slot
                .checked_add(m)
                .ok_or_else(|| Error::Overflow("term multiplicity".into()))?;
            if *slot > MAX_MULTIPLICITY {
                return Err(Error::Overflow(format!(
                    "multiplicity of {} exceeds {}",
                    g, MAX_MULTIPLICITY
                )));
            }
        }
        Ok(Sequence { ambient, terms: map })
    }

    pub fn singleton(ambient: Ambient, g: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(ambient.normalize(g), 1);
        Sequence { ambient, terms }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Multiplicity of `g`.
    pub fn multiplicity(&self, g: i64) -> u64 {
        self.terms.get(&self.ambient.normalize(g)).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.terms.iter().map(|(&g, &m)| (g, m))
    }

    pub fn min_term(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_term(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Sum of all terms with multiplicity.  The empty sequence sums to the
    /// identity.
    pub fn sum(&self) -> Result<i64> {
        match self.ambient {
            Ambient::Integers => {
                let mut acc: i128 = 0;
                for (&g, &m) in &self.terms {
                    acc = acc
                        .checked_add((g as i128) * (m as i128))
                        .ok_or_else(|| Error::Overflow("sequence sum".into()))?;
                }
                i64::try_from(acc).map_err(|_| Error::Overflow("sequence sum".into()))
            }
            Ambient::Cyclic(n) => {
                let n = n as i128;
                let mut acc: i128 = 0;
                for (&g, &m) in &self.terms {
                    acc = (acc + (g as i128 % n) * (m as i128 % n)) % n;
                }
                Ok(acc.rem_euclid(n) as i64)
            }
        }
    }

    pub fn is_zero_sum(&self) -> Result<bool> {
        Ok(self.sum()? == self.ambient.identity())
    }

    /// Multiset union.
    pub fn mul(&self, other: &Sequence) -> Result<Sequence> {
        if self.ambient != other.ambient {
            return Err(Error::invalid("cannot multiply sequences over different groups"));
        }
        let mut terms = self.terms.clone();
        for (&g, &m) in &other.terms {
            let slot = terms.entry(g).or_insert(0);
            *slot = slot
                .checked_add(m)
                .ok_or_else(|| Error::Overflow("term multiplicity".into()))?;
            if *slot > MAX_MULTIPLICITY {
                return Err(Error::Overflow("term multiplicity".into()));
            }
        }
        Ok(Sequence {
            ambient: self.ambient,
            terms,
        })
    }

    pub fn pow(&self, k: u64) -> Result<Sequence> {
        let mut terms = BTreeMap::new();
        for (&g, &m) in &self.terms {
            let v = m
                .checked_mul(k)
                .ok_or_else(|| Error::Overflow("term multiplicity".into()))?;
            if v > MAX_MULTIPLICITY {
                return Err(Error::Overflow("term multiplicity".into()));
            }
            if v > 0 {
                terms.insert(g, v);
            }
        }
        Ok(Sequence {
            ambient: self.ambient,
            terms,
        })
    }

    /// True iff `self` divides `other` as multisets.
    pub fn divides(&self, other: &Sequence) -> bool {
        self.ambient == other.ambient
            && self
                .terms
                .iter()
                .all(|(g, m)| other.terms.get(g).copied().unwrap_or(0) >= *m)
    }

    /// `other / self`; errors unless `self | other`.
    pub fn div_into(&self, other: &Sequence) -> Result<Sequence> {
        if !self.divides(other) {
            return Err(Error::invalid("sequence does not divide"));
        }
        let mut terms = other.terms.clone();
        for (g, m) in &self.terms {
            let slot = terms.get_mut(g).unwrap();
            *slot -= m;
            if *slot == 0 {
                terms.remove(g);
            }
        }
        Ok(Sequence {
            ambient: self.ambient,
            terms,
        })
    }

    /// Pointwise negation, `-S`.
    pub fn neg(&self) -> Sequence {
        let terms = self
            .terms
            .iter()
            .map(|(&g, &m)| (self.ambient.normalize(-g), m))
            .collect();
        Sequence {
            ambient: self.ambient,
            terms,
        }
    }

    /// Positive part, negative part and the multiplicity of 0.  Only defined
    /// over ℤ; recombining the three pieces reproduces the sequence.
    pub fn split_signs(&self) -> Result<(Sequence, Sequence, u64)> {
        if self.ambient != Ambient::Integers {
            return Err(Error::UnsupportedAmbient(
                "sign split needs the ambient group ℤ".into(),
            ));
        }
        let mut plus = BTreeMap::new();
        let mut minus = BTreeMap::new();
        let mut v0 = 0;
        for (&g, &m) in &self.terms {
            match g.cmp(&0) {
                std::cmp::Ordering::Greater => {
                    plus.insert(g, m);
                }
                std::cmp::Ordering::Less => {
                    minus.insert(g, m);
                }
                std::cmp::Ordering::Equal => v0 = m,
            }
        }
        Ok((
            Sequence {
                ambient: self.ambient,
                terms: plus,
            },
            Sequence {
                ambient: self.ambient,
                terms: minus,
            },
            v0,
        ))
    }

    pub fn plus_part(&self) -> Result<Sequence> {
        Ok(self.split_signs()?.0)
    }

    pub fn minus_part(&self) -> Result<Sequence> {
        Ok(self.split_signs()?.1)
    }

    /// Drop all identity terms, returning the core and the identity
    /// multiplicity.
    pub fn strip_identity(&self) -> (Sequence, u64) {
        let id = self.ambient.identity();
        let v0 = self.terms.get(&id).copied().unwrap_or(0);
        if v0 == 0 {
            return (self.clone(), 0);
        }
        let mut terms = self.terms.clone();
        terms.remove(&id);
        (
            Sequence {
                ambient: self.ambient,
                terms,
            },
            v0,
        )
    }

    /// Σ(S) (sums of all nonempty subsequences) or Σ_k(S) when `k` is given.
    ///
    /// Computed by dynamic programming over multiplicities rather than over
    /// the 2^|S| subsequences.
    pub fn subsequence_sums(&self, k: Option<u64>) -> Result<BTreeSet<i64>> {
        match k {
            None => self.sums_any(),
            Some(k) => self.sums_exact(k),
        }
    }

    fn sums_any(&self) -> Result<BTreeSet<i64>> {
        // Count subsequences per sum, saturating at 2: a sum of 0 belongs to
        // Σ(S) only when it is achieved by something other than the empty
        // subsequence.
        let mut counts: BTreeMap<i64, u8> = BTreeMap::new();
        counts.insert(0, 1);
        for (&g, &m) in &self.terms {
            let snapshot: Vec<(i64, u8)> = counts.iter().map(|(&s, &c)| (s, c)).collect();
            for (s, c) in snapshot {
                let mut acc = s as i128;
                for _ in 0..m {
                    acc += g as i128;
                    let key = match self.ambient {
                        Ambient::Integers => {
                            i64::try_from(acc).map_err(|_| Error::Overflow("subsequence sum".into()))?
                        }
                        Ambient::Cyclic(n) => acc.rem_euclid(n as i128) as i64,
                    };
                    let slot = counts.entry(key).or_insert(0);
                    *slot = slot.saturating_add(c);
                }
            }
        }
        let mut out = BTreeSet::new();
        for (&s, &c) in &counts {
            if s != 0 || c >= 2 {
                out.insert(s);
            }
        }
        Ok(out)
    }

    fn sums_exact(&self, k: u64) -> Result<BTreeSet<i64>> {
        if k > self.len() {
            return Ok(BTreeSet::new());
        }
        let k = k as usize;
        // by_size[j] = sums achievable with exactly j terms
        let mut by_size: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); k + 1];
        by_size[0].insert(0);
        for (&g, &m) in &self.terms {
            for j in (0..k).rev() {
                let base: Vec<i64> = by_size[j].iter().copied().collect();
                for s in base {
                    let mut acc = s as i128;
                    for t in 1..=m {
                        let idx = j + t as usize;
                        if idx > k {
                            break;
                        }
                        acc += g as i128;
                        let key = match self.ambient {
                            Ambient::Integers => i64::try_from(acc)
                                .map_err(|_| Error::Overflow("subsequence sum".into()))?,
                            Ambient::Cyclic(n) => acc.rem_euclid(n as i128) as i64,
                        };
                        by_size[idx].insert(key);
                    }
                }
            }
        }
        Ok(by_size[k].clone())
    }

    /// JSON form: `{"ambient":"Z"|{"mod":n}, "terms":{"<g>":count,...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let ambient = match self.ambient {
            Ambient::Integers => serde_json::Value::String("Z".into()),
            Ambient::Cyclic(n) => serde_json::json!({ "mod": n }),
        };
        let mut terms = serde_json::Map::new();
        for (&g, &m) in &self.terms {
            terms.insert(g.to_string(), serde_json::Value::from(m));
        }
        serde_json::json!({ "ambient": ambient, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Sequence> {
        let ambient = match v.get("ambient") {
            Some(serde_json::Value::String(s)) if s == "Z" => Ambient::Integers,
            Some(obj) => {
                let n = obj
                    .get("mod")
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| Error::invalid("ambient must be \"Z\" or {\"mod\":n}"))?;
                Ambient::cyclic(n)?
            }
            None => return Err(Error::invalid("sequence JSON needs an \"ambient\" field")),
        };
        let terms = v
            .get("terms")
            .and_then(|t| t.as_object())
            .ok_or_else(|| Error::invalid("sequence JSON needs a \"terms\" object"))?;
        let mut pairs = Vec::new();
        for (key, count) in terms {
            let g: i64 = key
                .parse()
                .map_err(|_| Error::invalid(format!("bad term {key:?}")))?;
            let m = count
                .as_u64()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::invalid(format!("bad multiplicity for term {key}")))?;
            pairs.push((g, m));
        }
        Sequence::from_terms(ambient, pairs)
    }
}

impl fmt::Display for Sequence {
    /// Canonical text: terms ascending, `term^exp` with the exponent omitted
    /// when it is 1, e.g. `-2^3 1^4 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&g, &m) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    /// Parse the canonical text grammar over ℤ: whitespace-separated `term`
    /// or `term^exp`, terms signed decimal integers, exp ≥ 1.
    fn from_str(s: &str) -> Result<Sequence> {
        let mut pairs = Vec::new();
        for tok in s.split_whitespace() {
            let (term, exp) = match tok.split_once('^') {
                Some((t, e)) => {
                    let exp: u64 = e
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad exponent in {tok:?}")))?;
                    if exp == 0 {
                        return Err(Error::invalid(format!("exponent must be >= 1 in {tok:?}")));
                    }
                    (t, exp)
                }
                None => (tok, 1),
            };
            let g: i64 = term
                .parse()
                .map_err(|_| Error::invalid(format!("bad term {tok:?}")))?;
            pairs.push((g, exp));
        }
        Sequence::from_terms(Ambient::Integers, pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        s.parse().unwrap()
    }

    #[test]
    fn sum_examples() {
        assert_eq!(Sequence::empty(Ambient::Integers).sum().unwrap(), 0);
        assert_eq!(seq("-2^3 1^4").sum().unwrap(), -2);
        let c = Sequence::from_terms(Ambient::Cyclic(4), [(2, 2)]).unwrap();
        assert_eq!(c.sum().unwrap(), 0);
    }

    #[test]
    fn split_signs_examples() {
        let s = seq("3 1^5 -1^4 -2^2");
        let (p, m, v0) = s.split_signs().unwrap();
        assert_eq!(p, seq("3 1^5"));
        assert_eq!(m, seq("-1^4 -2^2"));
        assert_eq!(v0, 0);
        let recombined = p.mul(&m).unwrap();
        assert_eq!(recombined, s);

        let (p, m, v0) = seq("0^3").split_signs().unwrap();
        assert!(p.is_empty() && m.is_empty());
        assert_eq!(v0, 3);

        let (p, m, v0) = seq("-5^2").split_signs().unwrap();
        assert!(p.is_empty());
        assert_eq!(m, seq("-5^2"));
        assert_eq!(v0, 0);

        let cyc = Sequence::from_terms(Ambient::Cyclic(3), [(1, 1)]).unwrap();
        assert!(cyc.split_signs().is_err());
    }

    #[test]
    fn subsequence_sums_examples() {
        let s = seq("1^2");
        assert_eq!(
            s.subsequence_sums(None).unwrap(),
            BTreeSet::from([1, 2])
        );
        let s = seq("-1 1");
        assert_eq!(
            s.subsequence_sums(None).unwrap(),
            BTreeSet::from([-1, 0, 1])
        );
        let s = seq("-2^3");
        assert_eq!(s.subsequence_sums(Some(2)).unwrap(), BTreeSet::from([-4]));
    }

    #[test]
    fn display_roundtrip() {
        let s = seq("-2^3 1^4 5");
        assert_eq!(s.to_string(), "-2^3 1^4 5");
        assert_eq!(seq(&s.to_string()), s);
        assert_eq!(Sequence::empty(Ambient::Integers).to_string(), "");
        assert_eq!(seq(""), Sequence::empty(Ambient::Integers));
    }

    #[test]
    fn json_roundtrip() {
        let s = seq("-4 2^2");
        let j = s.to_json();
        assert_eq!(Sequence::from_json(&j).unwrap(), s);
        let c = Sequence::from_terms(Ambient::Cyclic(4), [(2, 2)]).unwrap();
        assert_eq!(Sequence::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn division() {
        let b = seq("-2^2 1^4");
        let a = seq("-2 1^2");
        assert!(a.divides(&b));
        assert_eq!(a.div_into(&b).unwrap(), a);
        assert!(!seq("-3").divides(&b));
    }
}
