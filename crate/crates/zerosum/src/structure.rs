//! Almost-arithmetical-(multi)progression recognition, the structure
//! condition for grounds of shape `{-d,-1} ∪ positives`, and validated
//! generators for the explicit witness families.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::atoms::{enumerate_atoms, is_atom};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::factorize::{factorizations, LengthSet};
use crate::groundspec::GroundSpec;
use crate::sequence::{Ambient, Sequence};

/// A witness that a finite set is an almost arithmetical multiprogression:
/// `L = y + (L' ∪ L* ∪ L'') ⊆ y + D + dℤ` with `min L* = 0`,
/// `L* = (D + dℤ) ∩ [0, max L*]`, `L' ⊆ [-M,-1]`, `L'' ⊆ max L* + [1,M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AampWitness {
    pub y: i64,
    pub d: u64,
    /// Period: subset of [0, d] containing 0 and d.
    pub period: BTreeSet<u64>,
    pub core: BTreeSet<i64>,
    pub head: BTreeSet<i64>,
    pub tail: BTreeSet<i64>,
    pub bound: u64,
}

impl AampWitness {
    /// Replay the witness against the defining clauses and the original set.
    pub fn replay(&self, l: &BTreeSet<u64>) -> bool {
        let d = self.d as i64;
        let m = self.bound as i64;
        if self.core.is_empty() || *self.core.iter().next().unwrap() != 0 {
            return false;
        }
        let max_core = *self.core.iter().next_back().unwrap();
        if !self.period.contains(&0) || !self.period.contains(&self.d) {
            return false;
        }
        if self.period.iter().any(|&p| p > self.d) {
            return false;
        }
        // L* = (D + dZ) ∩ [0, max L*]
        let residues: BTreeSet<i64> = self.period.iter().map(|&p| (p as i64) % d).collect();
        for x in 0..=max_core {
            let in_pattern = residues.contains(&(x % d));
            if in_pattern != self.core.contains(&x) {
                return false;
            }
        }
        if !self.head.iter().all(|&x| -m <= x && x <= -1) {
            return false;
        }
        if !self.tail.iter().all(|&x| max_core < x && x <= max_core + m) {
            return false;
        }
        // union reproduces L and stays inside y + D + dZ
        let mut rebuilt: BTreeSet<i64> = BTreeSet::new();
        for &x in self.head.iter().chain(self.core.iter()).chain(self.tail.iter()) {
            let v = self.y + x;
            if v < 0 || !residues.contains(&(x.rem_euclid(d))) {
                return false;
            }
            rebuilt.insert(v);
        }
        rebuilt == l.iter().map(|&x| x as i64).collect()
    }
}

/// Search for an AAMP witness for `L` with a difference from `deltas` and
/// bound `M`.  The shift `y` must lie in `[min L, min L + M]` and be a
/// member of L, which makes the search finite.
pub fn recognize_aamp(
    l: &LengthSet,
    deltas: &BTreeSet<u64>,
    bound: u64,
) -> Option<AampWitness> {
    let min = l.min()?;
    let max = l.max()?;
    for &y in l.lengths.range(min..=min.saturating_add(bound)) {
        let shifted: BTreeSet<i64> = l.lengths.iter().map(|&x| x as i64 - y as i64).collect();
        for &d in deltas {
            if d == 0 {
                continue;
            }
            // candidate max L*: descending, prefer the largest core
            let mut candidates: Vec<i64> =
                shifted.iter().copied().filter(|&x| x >= 0).collect();
            candidates.reverse();
            for &m_core in &candidates {
                if (max as i64 - y as i64) > m_core + bound as i64 {
                    continue; // tail would overflow the bound
                }
                let core: BTreeSet<i64> =
                    shifted.range(0..=m_core).copied().collect();
                let head: BTreeSet<i64> = shifted.range(..0).copied().collect();
                let tail: BTreeSet<i64> = shifted.range(m_core + 1..).copied().collect();
                let residues: BTreeSet<i64> =
                    core.iter().map(|&x| x.rem_euclid(d as i64)).collect();
                let mut period: BTreeSet<u64> =
                    residues.iter().map(|&r| r as u64).collect();
                period.insert(0);
                period.insert(d);
                let witness = AampWitness {
                    y: y as i64,
                    d,
                    period,
                    core,
                    head,
                    tail,
                    bound,
                };
                if witness.replay(&l.lengths) {
                    return Some(witness);
                }
            }
        }
    }
    None
}

/// For a ground of shape `{-d,-1} ∪ positives` with `1 ∈ G₀⁺`: do all sets
/// of lengths stay structured?  True iff `G₀⁺ \ dℤ` is finite or contained
/// in `1 + dℤ`; decidable from the progressions' residues.
pub fn structure_condition(spec: &GroundSpec) -> Result<bool> {
    let negatives = spec.negatives()?;
    if negatives.len() > 2 || negatives.is_empty() || *negatives.last().unwrap() != -1 {
        return Err(Error::invalid(
            "structure condition needs a ground with negative part {-d,-1}",
        ));
    }
    if !spec.contains(1) {
        return Err(Error::invalid("structure condition needs 1 in the positive part"));
    }
    let d = -negatives[0];
    if d == 1 {
        return Ok(true);
    }
    // finite part never matters for finiteness; progressions decide
    let mut outside_is_finite = true;
    let mut outside_in_one_class = true;
    for p in spec.ups() {
        let step = p.step as i64;
        let g = step.gcd(&d);
        // residues mod d hit infinitely often: start + (step)Z mod d
        let mut r = p.start.rem_euclid(d);
        loop {
            if r != 0 {
                outside_is_finite = false;
                if r != 1 {
                    outside_in_one_class = false;
                }
            }
            r = (r + g).rem_euclid(d);
            if r == p.start.rem_euclid(d) {
                break;
            }
        }
    }
    if outside_is_finite {
        return Ok(true);
    }
    if !outside_in_one_class {
        return Ok(false);
    }
    // infinitely many residues ≡ 1; finite-part members outside dZ are
    // finitely many and do not matter, progressions with residues other
    // than {0,1} were already rejected
    Ok(true)
}

/// The structure-failure criterion on a single set of lengths: the first
/// window `[min L, min L + N]` only meets `min L + eℤ`, yet the whole set
/// escapes `min L + eℤ`.
pub fn lemt_check(l: &LengthSet, e: u64, n: u64) -> bool {
    let min = match l.min() {
        Some(m) => m,
        None => return false,
    };
    if e == 0 {
        return false;
    }
    let window_ok = l
        .lengths
        .range(min..=min.saturating_add(n))
        .all(|&x| (x - min) % e == 0);
    let escapes = l.lengths.iter().any(|&x| (x - min) % e != 0);
    window_ok && escapes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Verified by full enumeration.
    Enumerated,
    /// Verified structurally (atomicity, membership, arithmetic) without
    /// enumerating Z(B).
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimValue {
    Int(i64),
    Lengths(BTreeSet<u64>),
    LowerBound(u64),
    Flag(bool),
}

/// One verified statement embedded in a family instance.
#[derive(Clone, Debug)]
pub struct Claim {
    pub formula: String,
    pub value: ClaimValue,
    pub mode: CheckMode,
}

/// A constructed element together with distinguished factorizations and
/// claims; every claim is re-verified during construction.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub name: String,
    pub parameters: BTreeMap<String, i64>,
    pub element: Sequence,
    pub distinguished: Vec<Factorization>,
    pub claims: Vec<Claim>,
    /// False when the parameters are outside the range for which the
    /// source construction guarantees its conclusion; claims are still
    /// checked.
    pub guaranteed: bool,
}

fn seq(terms: &[(i64, u64)]) -> Result<Sequence> {
    Sequence::from_terms(Ambient::Integers, terms.iter().copied())
}

fn check_factorization(z: &Factorization, b: &Sequence) -> Result<()> {
    if z.product() != b {
        return Err(Error::internal("distinguished factorization has wrong product"));
    }
    for (a, _) in z.iter() {
        if !is_atom(a) {
            return Err(Error::internal(format!("factorization part {a} is not an atom")));
        }
    }
    Ok(())
}

/// Ground `{-d,-1,1,e+dk}` with `gcd(e,d) > 1`: a long factorization gap.
/// `B = (e+dk)^f (-d)^(u+fk) (-1)^(d(u+fk)) 1^(d(u+fk))` where `f` is
/// minimal with `ef ∈ dℕ` and `u = ef/d`; the two distinguished
/// factorizations have lengths `1 + d(u+fk)` and `f + u + fk`, which differ
/// by something outside `(d-1)ℤ`.
pub fn family_gcd_gap(d: i64, e: i64, k: i64) -> Result<FamilyInstance> {
    if d < 4 || e < 2 || e > d - 1 || k < 1 {
        return Err(Error::invalid("need d >= 4, e in [2, d-1], k >= 1"));
    }
    if e.gcd(&d) <= 1 {
        return Err(Error::invalid("need gcd(e, d) > 1"));
    }
    let f = d / e.gcd(&d);
    let u = e / e.gcd(&d);
    let big = e + d * k;
    let reps = (u + f * k) as u64;
    let b = seq(&[
        (big, f as u64),
        (-d, reps),
        (-1, d as u64 * reps),
        (1, d as u64 * reps),
    ])?;

    let a_big = seq(&[(big, f as u64), (-d, reps)])?;
    let z1 = Factorization::from_atom_powers(
        Ambient::Integers,
        [(a_big, 1), (seq(&[(1, 1), (-1, 1)])?, d as u64 * reps)],
    )?;
    let a_each = seq(&[(big, 1), (-1, big as u64)])?;
    let a_dblock = seq(&[(-d, 1), (1, d as u64)])?;
    let z2 = Factorization::from_atom_powers(
        Ambient::Integers,
        [(a_each, f as u64), (a_dblock, reps)],
    )?;
    check_factorization(&z1, &b)?;
    check_factorization(&z2, &b)?;
    let len1 = 1 + d as u64 * reps;
    let len2 = (f + u + f * k) as u64;
    if z1.len() != len1 || z2.len() != len2 {
        return Err(Error::internal("length formulas violated"));
    }
    if (len1 as i64 - len2 as i64).rem_euclid(d - 1) == 0 {
        return Err(Error::internal("length discrepancy fell into (d-1)Z"));
    }

    Ok(FamilyInstance {
        name: "gcd-gap".into(),
        parameters: BTreeMap::from([("d".into(), d), ("e".into(), e), ("k".into(), k)]),
        element: b,
        distinguished: vec![z1, z2],
        claims: vec![
            Claim {
                formula: "|z1| = 1 + d(u+fk)".into(),
                value: ClaimValue::Int(len1 as i64),
                mode: CheckMode::Structural,
            },
            Claim {
                formula: "|z2| = f + u + fk".into(),
                value: ClaimValue::Int(len2 as i64),
                mode: CheckMode::Structural,
            },
            Claim {
                formula: "|z1| - |z2| not in (d-1)Z".into(),
                value: ClaimValue::Flag(true),
                mode: CheckMode::Structural,
            },
        ],
        guaranteed: k >= 10,
    })
}

/// Ground `{-d,-1,1,e+dk,f+dl}` with `gcd(e,d) = 1` and `f` in a third
/// residue class: the coprime analogue of the factorization gap.
pub fn family_coprime_gap(d: i64, e: i64, f: i64, l: i64, k: i64) -> Result<FamilyInstance> {
    if d < 3 || e < 1 || e > d - 1 || e.gcd(&d) != 1 {
        return Err(Error::invalid("need d >= 3, e in [1, d-1] with gcd(e, d) = 1"));
    }
    if f < 1 || f > d - 1 || f == e {
        return Err(Error::invalid("need f in [1, d-1] distinct from e"));
    }
    if l < 0 || k < 1 {
        return Err(Error::invalid("need l >= 0 and k >= 1"));
    }
    if e + d * k < f + d * l {
        return Err(Error::invalid("need e + dk >= f + dl"));
    }
    let x = (1..d)
        .find(|&x| (f + x * e).rem_euclid(d) == 0)
        .ok_or_else(|| Error::internal("no multiplier x"))?;
    let u = (f + x * e) / d;
    let big = e + d * k;
    let small = f + d * l;
    let reps = (u + x * k + l) as u64;
    let b = seq(&[
        (small, 1),
        (big, x as u64),
        (-d, reps),
        (-1, d as u64 * reps),
        (1, d as u64 * reps),
    ])?;

    let a_top = seq(&[(small, 1), (big, x as u64), (-d, reps)])?;
    let z1 = Factorization::from_atom_powers(
        Ambient::Integers,
        [(a_top, 1), (seq(&[(1, 1), (-1, 1)])?, d as u64 * reps)],
    )?;
    let z2 = Factorization::from_atom_powers(
        Ambient::Integers,
        [
            (seq(&[(small, 1), (-1, small as u64)])?, 1),
            (seq(&[(big, 1), (-1, big as u64)])?, x as u64),
            (seq(&[(-d, 1), (1, d as u64)])?, reps),
        ],
    )?;
    check_factorization(&z1, &b)?;
    check_factorization(&z2, &b)?;
    let len1 = 1 + d as u64 * reps;
    let len2 = 1 + x as u64 + reps;
    if z1.len() != len1 || z2.len() != len2 {
        return Err(Error::internal("length formulas violated"));
    }
    if (len1 as i64 - len2 as i64).rem_euclid(d - 1) == 0 {
        return Err(Error::internal("length discrepancy fell into (d-1)Z"));
    }

    Ok(FamilyInstance {
        name: "coprime-gap".into(),
        parameters: BTreeMap::from([
            ("d".into(), d),
            ("e".into(), e),
            ("f".into(), f),
            ("l".into(), l),
            ("k".into(), k),
        ]),
        element: b,
        distinguished: vec![z1, z2],
        claims: vec![
            Claim {
                formula: "|z1| = 1 + d(u+xk+l)".into(),
                value: ClaimValue::Int(len1 as i64),
                mode: CheckMode::Structural,
            },
            Claim {
                formula: "|z2| = 1 + x + (u+xk+l)".into(),
                value: ClaimValue::Int(len2 as i64),
                mode: CheckMode::Structural,
            },
            Claim {
                formula: "|z1| - |z2| not in (d-1)Z".into(),
                value: ClaimValue::Flag(true),
                mode: CheckMode::Structural,
            },
        ],
        guaranteed: k >= 3 * d,
    })
}

/// Over `{-d,-1} ∪ (1+dℕ₀) ∪ dℕ₀`:
/// `B = (1+kd)^d d^(1+kd) (-d)^(1+kd) (-1)^(d(1+kd))` has exactly the two
/// lengths `{2+kd, 1+d+kd}`, and its long factorization sits at distance
/// `1+d+kd` from the unique short one.
pub fn family_two_lengths(d: i64, k: i64, budget: &Budget) -> Result<FamilyInstance> {
    if d < 2 || k < 1 {
        return Err(Error::invalid("need d >= 2 and k >= 1"));
    }
    let q = (1 + k * d) as u64;
    let big = 1 + k * d;
    let b = seq(&[(big, d as u64), (d, q), (-d, q), (-1, d as u64 * q)])?;

    let z_short = Factorization::from_atom_powers(
        Ambient::Integers,
        [
            (seq(&[(big, d as u64), (-d, q)])?, 1),
            (seq(&[(d, 1), (-1, d as u64)])?, q),
        ],
    )?;
    let z_long = Factorization::from_atom_powers(
        Ambient::Integers,
        [
            (seq(&[(big, 1), (-1, big as u64)])?, d as u64),
            (seq(&[(d, 1), (-d, 1)])?, q),
        ],
    )?;
    check_factorization(&z_short, &b)?;
    check_factorization(&z_long, &b)?;
    let expected: BTreeSet<u64> = BTreeSet::from([(2 + k * d) as u64, (1 + d + k * d) as u64]);
    if z_short.len() != (2 + k * d) as u64 || z_long.len() != (1 + d + k * d) as u64 {
        return Err(Error::internal("length formulas violated"));
    }

    // enumerate when it fits in the budget
    let ground: Vec<i64> = vec![-d, -1, d, big];
    let mode = match enumerate_atoms(&ground, budget)
        .and_then(|atoms| factorizations(&b, &atoms, budget))
    {
        Ok(zs) if zs.complete => {
            let got = zs.length_set();
            if got.lengths != expected {
                return Err(Error::internal(format!(
                    "enumerated lengths {:?} disagree with {:?}",
                    got.lengths, expected
                )));
            }
            if zs.of_length((2 + k * d) as u64).len() != 1 {
                return Err(Error::internal("short factorization is not unique"));
            }
            CheckMode::Enumerated
        }
        _ => CheckMode::Structural,
    };

    let delta_lb = (1 + d + k * d) as u64;
    Ok(FamilyInstance {
        name: "two-lengths".into(),
        parameters: BTreeMap::from([("d".into(), d), ("k".into(), k)]),
        element: b,
        distinguished: vec![z_short, z_long],
        claims: vec![
            Claim {
                formula: "L(B) = {2+kd, 1+d+kd}".into(),
                value: ClaimValue::Lengths(expected),
                mode,
            },
            Claim {
                formula: "delta(B) >= 1+d+kd".into(),
                value: ClaimValue::LowerBound(delta_lb),
                mode,
            },
        ],
        guaranteed: true,
    })
}

/// `B = (e+kd)(-e+ld) 1^((k+l)d) (-1)^((k+l)d) (-d)^(k+l)`; its set of
/// lengths has the closed form
/// `{1+k+l+(k+l)(d-1)} ∪ {1+e+k+l+i(d-1) : i ∈ [k, k+l-1]}
/// ∪ {2-e+k+l+i(d-1) : i ∈ [l, l+k]} ∪ {2+k+l+i(d-1) : i ∈ [0, k+l-1]}`.
pub fn family_mirror_pair(d: i64, e: i64, k: i64, l: i64, budget: &Budget) -> Result<FamilyInstance> {
    if d < 2 || e < 1 || e > d - 1 || k < 1 || l < 1 {
        return Err(Error::invalid("need d >= 2, e in [1, d-1], k, l >= 1"));
    }
    let p1 = e + k * d;
    let p2 = -e + l * d;
    let m = ((k + l) * d) as u64;
    let b = seq(&[(p1, 1), (p2, 1), (1, m), (-1, m), (-d, (k + l) as u64)])?;

    let mut closed: BTreeSet<u64> = BTreeSet::new();
    closed.insert((1 + k + l + (k + l) * (d - 1)) as u64);
    for i in k..=(k + l - 1) {
        closed.insert((1 + e + k + l + i * (d - 1)) as u64);
    }
    for i in l..=(l + k) {
        closed.insert((2 - e + k + l + i * (d - 1)) as u64);
    }
    for i in 0..=(k + l - 1) {
        closed.insert((2 + k + l + i * (d - 1)) as u64);
    }

    let ground: Vec<i64> = vec![-d, -1, 1, p2, p1];
    let mode = match enumerate_atoms(&ground, budget)
        .and_then(|atoms| factorizations(&b, &atoms, budget))
    {
        Ok(zs) if zs.complete => {
            let got = zs.length_set();
            if got.lengths != closed {
                return Err(Error::internal(format!(
                    "enumerated lengths {:?} disagree with the closed form {:?}",
                    got.lengths, closed
                )));
            }
            CheckMode::Enumerated
        }
        _ => CheckMode::Structural,
    };

    Ok(FamilyInstance {
        name: "mirror-pair".into(),
        parameters: BTreeMap::from([
            ("d".into(), d),
            ("e".into(), e),
            ("k".into(), k),
            ("l".into(), l),
        ]),
        element: b,
        distinguished: Vec::new(),
        claims: vec![Claim {
            formula: "closed form for L(B)".into(),
            value: ClaimValue::Lengths(closed),
            mode,
        }],
        guaranteed: true,
    })
}

/// Half-factoriality of `{a1, a2, b}` (a1, a2 < 0 < b) by the congruence
/// criterion `a1·gcd(a2,b)/g ≡ a2·gcd(a1,b)/g (mod b)` with
/// `g = gcd(a1, a2, b)`.
pub fn is_half_factorial_three(a1: i64, a2: i64, b: i64) -> Result<bool> {
    if !(a1 < 0 && a2 < 0 && b > 0) {
        return Err(Error::invalid("need a1, a2 < 0 < b"));
    }
    let g = a1.gcd(&a2).gcd(&b);
    let lhs = a1 * (a2.gcd(&b)) / g;
    let rhs = a2 * (a1.gcd(&b)) / g;
    Ok((lhs - rhs).rem_euclid(b) == 0)
}

/// Pattern-ideal witness family: over `{a1, a2, b, N}` with `{a1, a2, b}`
/// half-factorial and `lcm(|a2|,b) > lcm(|a1|,b)`, builds the atom `U_N`
/// with minimal `v_N` and minimal `v_b`, the element `A_N = U_N U_2^{M_1}`,
/// and a ladder of factorizations showing lengths `M_1 + 1 + d·k`.
pub fn family_pattern_ladder(a1: i64, a2: i64, b: i64, n: i64) -> Result<FamilyInstance> {
    if !(a1 < 0 && a2 < 0 && b > 0) || n <= 0 || n == b {
        return Err(Error::invalid("need a1, a2 < 0 < b and a positive N distinct from b"));
    }
    if !is_half_factorial_three(a1, a2, b)? {
        return Err(Error::Inapplicable(
            "half-factoriality criterion not met by {a1, a2, b}".into(),
        ));
    }
    let g = a1.gcd(&a2).gcd(&b);
    if a1 * (a2.gcd(&b)) / g == a2 * (a1.gcd(&b)) / g {
        return Err(Error::Inapplicable(
            "the two obstruction values coincide; no length ladder exists".into(),
        ));
    }
    // arrange d > 0 by swapping the two negative values if necessary
    let (a1, a2) = {
        let d = a1 * (b / a1.gcd(&b)) - a2 * (b / a2.gcd(&b));
        if d > 0 {
            (a1, a2)
        } else {
            (a2, a1)
        }
    };
    let alpha1 = b / a1.gcd(&b);
    let beta1 = -a1 / a1.gcd(&b);
    let alpha2 = b / a2.gcd(&b);
    let beta2 = -a2 / a2.gcd(&b);
    let d = a1 * alpha1 - a2 * alpha2;
    debug_assert!(d > 0);

    let u1 = seq(&[(a1, alpha1 as u64), (b, beta1 as u64)])?;
    let u2 = seq(&[(a2, alpha2 as u64), (b, beta2 as u64)])?;
    if !is_atom(&u1) || !is_atom(&u2) {
        return Err(Error::internal("two-support atoms failed the atom test"));
    }

    // U_N: minimal v_N, then minimal v_b, then m2 < |a1|
    let mut found: Option<(i64, i64, i64, i64)> = None; // (gamma, beta, m1, m2)
    'outer: for gamma in 1..=(-a1) {
        for beta in 0..=(-a1 * b) {
            for m2 in 0..(-a1) {
                let mass = gamma * n + beta * b + a2 * m2;
                if mass < 0 || mass % (-a1) != 0 {
                    continue;
                }
                let m1 = mass / (-a1);
                let candidate = seq(&[
                    (n, gamma as u64),
                    (b, beta as u64),
                    (a1, m1 as u64),
                    (a2, m2 as u64),
                ])?;
                if is_atom(&candidate) {
                    found = Some((gamma, beta, m1, m2));
                    break 'outer;
                }
            }
        }
    }
    let (gamma, beta, m1, m2) =
        found.ok_or_else(|| Error::internal("no atom containing N was found"))?;
    let u_n = seq(&[(n, gamma as u64), (b, beta as u64), (a1, m1 as u64), (a2, m2 as u64)])?;

    let a_n = u_n.mul(&u2.pow(m1 as u64)?)?;
    let ladder_cap = m1 / ((-a2) * alpha1 * alpha2);
    let mut lengths: BTreeSet<u64> = BTreeSet::new();
    let mut distinguished = Vec::new();
    for kk in 0..=ladder_cap {
        let rung = seq(&[
            (n, gamma as u64),
            (b, beta as u64),
            (a1, (m1 + a2 * alpha1 * alpha2 * kk) as u64),
            (a2, (m2 - a1 * alpha1 * alpha2 * kk) as u64),
        ])?;
        if !is_atom(&rung) {
            return Err(Error::internal("ladder rung is not an atom"));
        }
        let z = Factorization::from_atom_powers(
            Ambient::Integers,
            [
                (rung, 1),
                (u1.clone(), (-a2 * alpha2 * kk) as u64),
                (u2.clone(), (m1 + a1 * alpha1 * kk) as u64),
            ],
        )?;
        check_factorization(&z, &a_n)?;
        let expect = (m1 + 1 + d * kk) as u64;
        if z.len() != expect {
            return Err(Error::internal("ladder length formula violated"));
        }
        lengths.insert(expect);
        distinguished.push(z);
    }

    let guaranteed = m1 >= -a2 * alpha1 * alpha2;
    Ok(FamilyInstance {
        name: "pattern-ladder".into(),
        parameters: BTreeMap::from([
            ("a1".into(), a1),
            ("a2".into(), a2),
            ("b".into(), b),
            ("N".into(), n),
            ("d".into(), d),
            ("M1".into(), m1),
            ("gamma".into(), gamma),
            ("m2".into(), m2),
        ]),
        element: a_n,
        distinguished,
        claims: vec![
            Claim {
                formula: "{a1,a2,b} is half-factorial".into(),
                value: ClaimValue::Flag(true),
                mode: CheckMode::Structural,
            },
            Claim {
                formula: "L(A_N) contains {M1+1+dk}".into(),
                value: ClaimValue::Lengths(lengths),
                mode: CheckMode::Structural,
            },
        ],
        guaranteed,
    })
}

/// The monotone-obstruction family over `{L, -d2, -d1, d1·d2}`:
/// `B = L^(2 d1 d2 N) (-d2)^(2 d1 L N) (-d1)^(2 d2 L N) (d1 d2)^(2 L N)`
/// with `L ≡ d1 (mod d2)`, `L ≡ d2 (mod d1)`, `L > d2·M`, carrying two
/// factorizations whose lengths differ by exactly `d = gcd(d1-1, d2-1)`.
pub fn family_monotone_obstruction(d1: i64, d2: i64, n: i64, m: i64) -> Result<FamilyInstance> {
    if !(3 <= d1 && d1 < d2) || d1.gcd(&d2) != 1 {
        return Err(Error::invalid("need 3 <= d1 < d2 with gcd(d1, d2) = 1"));
    }
    if (d2 - 1) % (d1 - 1) == 0 {
        return Err(Error::invalid("need d1 - 1 to not divide d2 - 1"));
    }
    if n < d2 - 1 || m < d1 {
        return Err(Error::invalid("need N >= d2 - 1 and M >= d1"));
    }
    let d = (d1 - 1).gcd(&(d2 - 1));
    if d > d1 - 2 {
        return Err(Error::internal("gap exceeds d1 - 2"));
    }

    // minimal L > d2*M with L ≡ d1 mod d2 and L ≡ d2 mod d1 (CRT)
    let modulus = d1 * d2;
    let mut l_val = 0;
    for r in 0..modulus {
        if r % d2 == d1 % d2 && r % d1 == d2 % d1 {
            l_val = r;
            break;
        }
    }
    while l_val <= d2 * m {
        l_val += modulus;
    }

    let big_n = n;
    let a1 = seq(&[(l_val, d1 as u64), (-d1, l_val as u64)])?;
    let a2 = seq(&[(l_val, d2 as u64), (-d2, l_val as u64)])?;
    let b1 = seq(&[(d1 * d2, 1), (-d1, d2 as u64)])?;
    let b2 = seq(&[(d1 * d2, 1), (-d2, d1 as u64)])?;
    let a0 = seq(&[(l_val, 1), (-d2, ((l_val - d1) / d2) as u64), (-d1, 1)])?;
    for (label, atom) in [("A1", &a1), ("A2", &a2), ("B1", &b1), ("B2", &b2), ("A0", &a0)] {
        if !is_atom(atom) {
            return Err(Error::internal(format!("{label} failed the atom test")));
        }
    }

    let b_elem = seq(&[
        (l_val, (2 * d1 * d2 * big_n) as u64),
        (-d2, (2 * d1 * l_val * big_n) as u64),
        (-d1, (2 * d2 * l_val * big_n) as u64),
        (d1 * d2, (2 * l_val * big_n) as u64),
    ])?;

    let z = Factorization::from_atom_powers(
        Ambient::Integers,
        [
            (a1.clone(), (d2 * big_n) as u64),
            (a2.clone(), (d1 * big_n) as u64),
            (b1.clone(), (l_val * big_n) as u64),
            (b2.clone(), (l_val * big_n) as u64),
        ],
    )?;
    check_factorization(&z, &b_elem)?;

    let little_l = (1..d2)
        .find(|&x| (x * (d2 - d1) + d).rem_euclid(d2 - 1) == 0)
        .ok_or_else(|| Error::internal("no ladder multiplier"))?;
    let l_prime = (little_l * (d2 - d1) + d) / (d2 - 1);
    if !(1 <= l_prime && l_prime <= little_l) {
        return Err(Error::internal("ladder multiplier out of range"));
    }
    let z_prime = Factorization::from_atom_powers(
        Ambient::Integers,
        [
            (a1.clone(), (d2 * big_n - little_l * d2) as u64),
            (a2.clone(), (d1 * big_n + little_l * d1 - l_prime) as u64),
            (a0.clone(), (l_prime * d2) as u64),
            (b1.clone(), (l_val * big_n + little_l * l_val - l_prime) as u64),
            (b2.clone(), (l_val * big_n - little_l * l_val + l_prime) as u64),
        ],
    )?;
    check_factorization(&z_prime, &b_elem)?;
    if z_prime.len() != z.len() + d as u64 {
        return Err(Error::internal("the two lengths do not differ by d"));
    }

    Ok(FamilyInstance {
        name: "monotone-obstruction".into(),
        parameters: BTreeMap::from([
            ("d1".into(), d1),
            ("d2".into(), d2),
            ("N".into(), n),
            ("M".into(), m),
            ("L".into(), l_val),
            ("d".into(), d),
        ]),
        element: b_elem,
        distinguished: vec![z, z_prime],
        claims: vec![
            Claim {
                formula: "|z'| = |z| + d <= |z| + d1 - 2".into(),
                value: ClaimValue::Int(d),
                mode: CheckMode::Structural,
            },
            Claim {
                formula: "all five building blocks are atoms".into(),
                value: ClaimValue::Flag(true),
                mode: CheckMode::Structural,
            },
        ],
        guaranteed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundspec::Progression;

    #[test]
    fn aamp_recognition() {
        let l = LengthSet::from_lengths([3, 5, 7]);
        let w = recognize_aamp(&l, &BTreeSet::from([2]), 0).unwrap();
        assert_eq!(w.y, 3);
        assert_eq!(w.period, BTreeSet::from([0, 2]));

        let singleton = LengthSet::from_lengths([4]);
        let w = recognize_aamp(&singleton, &BTreeSet::from([3]), 0).unwrap();
        assert_eq!(w.core, BTreeSet::from([0]));

        let l = LengthSet::from_lengths([0, 1, 5]);
        assert!(recognize_aamp(&l, &BTreeSet::from([1]), 1).is_none());
    }

    #[test]
    fn structure_condition_examples() {
        // {-2,-1} ∪ (1 + 2N0): true
        let spec = GroundSpec::from_parts([-2, -1], vec![Progression::new(1, 2).unwrap()]);
        assert!(structure_condition(&spec).unwrap());

        // {-4,-1,1} ∪ (2 + 4N0): infinite class with gcd > 1 -> false
        let spec = GroundSpec::from_parts([-4, -1, 1], vec![Progression::new(2, 4).unwrap()]);
        assert!(!structure_condition(&spec).unwrap());

        // finite positive part: trivially true
        let spec = GroundSpec::finite_set([-3, -1, 1, 5, 7]);
        assert!(structure_condition(&spec).unwrap());

        // wrong negative shape: error
        let spec = GroundSpec::finite_set([-3, -2, 1]);
        assert!(structure_condition(&spec).is_err());
    }

    #[test]
    fn lemt_check_examples() {
        let ap = LengthSet::from_lengths([2, 5, 8, 11]);
        assert!(!lemt_check(&ap, 3, 20));
        let l = LengthSet::from_lengths([0, 3, 6, 7]);
        assert!(lemt_check(&l, 3, 5));
        assert!(!lemt_check(&l, 3, 7));
    }

    #[test]
    fn gcd_gap_instances() {
        let inst = family_gcd_gap(4, 2, 10).unwrap();
        assert_eq!(inst.parameters["d"], 4);
        assert!(inst.guaranteed);
        // f = 2, u = 1
        assert_eq!(inst.distinguished[1].len(), (2 + 1 + 2 * 10) as u64);
        let inst = family_gcd_gap(6, 3, 10).unwrap();
        assert!(inst.guaranteed);
        assert!(family_gcd_gap(4, 3, 10).is_err()); // gcd(3,4) = 1
    }

    #[test]
    fn coprime_gap_instances() {
        let inst = family_coprime_gap(3, 1, 2, 0, 2).unwrap();
        // x = 1, u = 1
        assert_eq!(inst.distinguished[0].len(), 1 + 3 * 3);
        assert_eq!(inst.distinguished[1].len(), 1 + 1 + 3);
        let inst = family_coprime_gap(4, 1, 2, 0, 3).unwrap();
        assert_eq!(inst.parameters["k"], 3);
        assert!(family_coprime_gap(3, 1, 1, 0, 1).is_err()); // f = e
    }

    #[test]
    fn two_lengths_instances() {
        let b = Budget::default();
        let inst = family_two_lengths(2, 1, &b).unwrap();
        assert_eq!(inst.element, "3^2 2^3 -2^3 -1^6".parse().unwrap());
        match &inst.claims[0].value {
            ClaimValue::Lengths(l) => assert_eq!(l, &BTreeSet::from([4, 5])),
            other => panic!("unexpected claim {other:?}"),
        }
        assert_eq!(inst.claims[0].mode, CheckMode::Enumerated);

        // d = 3, k = 1: {2+kd, 1+d+kd} = {5, 7}
        let inst = family_two_lengths(3, 1, &b).unwrap();
        match &inst.claims[0].value {
            ClaimValue::Lengths(l) => assert_eq!(l, &BTreeSet::from([5, 7])),
            other => panic!("unexpected claim {other:?}"),
        }

        let inst = family_two_lengths(2, 2, &b).unwrap();
        match &inst.claims[0].value {
            ClaimValue::Lengths(l) => assert_eq!(l, &BTreeSet::from([6, 7])),
            other => panic!("unexpected claim {other:?}"),
        }
    }

    #[test]
    fn mirror_pair_instances() {
        let b = Budget::default();
        let inst = family_mirror_pair(2, 1, 1, 1, &b).unwrap();
        match &inst.claims[0].value {
            ClaimValue::Lengths(l) => assert_eq!(l, &BTreeSet::from([4, 5])),
            other => panic!("unexpected claim {other:?}"),
        }
        assert_eq!(inst.claims[0].mode, CheckMode::Enumerated);
        // larger instances must agree with enumeration as well
        let inst = family_mirror_pair(3, 1, 1, 1, &b).unwrap();
        assert_eq!(inst.claims[0].mode, CheckMode::Enumerated);
    }

    #[test]
    fn half_factorial_criterion() {
        assert!(is_half_factorial_three(-1, -3, 2).unwrap());
        // degenerate equal classes
        assert!(is_half_factorial_three(-2, -2, 3).unwrap());
    }

    #[test]
    fn pattern_ladder_instance() {
        let inst = family_pattern_ladder(-1, -3, 2, 13).unwrap();
        assert_eq!(inst.parameters["d"], 4);
        assert!(inst.distinguished.len() >= 2);
        assert!(inst.guaranteed);
    }

    #[test]
    fn monotone_obstruction_instance() {
        let inst = family_monotone_obstruction(4, 5, 4, 4).unwrap();
        assert_eq!(inst.parameters["L"], 29);
        assert_eq!(inst.parameters["d"], 1);
        // (3,5,...) rejected: 2 divides 4
        assert!(family_monotone_obstruction(3, 5, 4, 3).is_err());
        // (4,7,...) rejected: 3 divides 6
        assert!(family_monotone_obstruction(4, 7, 6, 4).is_err());
    }
}
