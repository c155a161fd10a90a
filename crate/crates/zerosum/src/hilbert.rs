//! Hilbert bases of homogeneous linear Diophantine systems, and the
//! kernel-pair form used for elasticity computations.
//!
//! The solver works on the integer kernel lattice of the system: a lattice
//! basis comes out of integer row reduction, a completion procedure
//! (normal-form / critical-pair saturation under the sign-compatible order)
//! turns it into the set of conformally minimal lattice vectors, and the
//! nonnegative ones among those are exactly the minimal solutions of
//! `A u = 0, u >= 0`.  A coordinate-sum safeguard guards against runaway
//! systems; when it trips on a small system the solver falls back to
//! bounded brute force and reports the bound it used.

#![allow(clippy::needless_range_loop)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// How a basis was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbertMethod {
    Completion,
    BoundedFallback { bound: u64 },
}

/// A minimal solution (x, y) of `M x = M y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairAtom {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
}

impl PairAtom {
    pub fn left_len(&self) -> u64 {
        self.left.iter().sum()
    }

    pub fn right_len(&self) -> u64 {
        self.right.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct HilbertBasis {
    pub pairs: Vec<PairAtom>,
    pub method: HilbertMethod,
}

/// Default coordinate-sum safeguard.
pub const DEGREE_CAP: u64 = 512;

/// Basis of the integer kernel `{w : Σ w_j · columns[j] = 0}` by integer
/// row reduction of the transposed system alongside an identity block.
fn integer_kernel_basis(columns: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = columns.len();
    let m = if n == 0 { 0 } else { columns[0].len() };
    // rows: (column_j , e_j)
    let mut rows: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut r: Vec<i128> = columns[j].iter().map(|&x| x as i128).collect();
            for i in 0..n {
                r.push(if i == j { 1 } else { 0 });
            }
            r
        })
        .collect();

    let mut rank = 0usize;
    for col in 0..m {
        loop {
            // smallest nonzero pivot candidate in this column
            let pivot = (rank..n)
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].unsigned_abs());
            let pivot = match pivot {
                Some(p) => p,
                None => break,
            };
            rows.swap(rank, pivot);
            let mut finished = true;
            let head = rows[rank][col];
            for r in rank + 1..n {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(head);
                    if q != 0 {
                        for c in 0..m + n {
                            let sub = q
                                .checked_mul(rows[rank][c])
                                .and_then(|x| rows[r][c].checked_sub(x))
                                .ok_or_else(|| Error::Overflow("kernel reduction".into()))?;
                            rows[r][c] = sub;
                        }
                    }
                    if rows[r][col] != 0 {
                        finished = false;
                    }
                }
            }
            if finished {
                rank += 1;
                break;
            }
        }
    }

    let mut basis = Vec::new();
    for r in rank..n {
        debug_assert!(rows[r][..m].iter().all(|&x| x == 0));
        let w: Vec<i64> = rows[r][m..]
            .iter()
            .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("kernel vector".into())))
            .collect::<Result<_>>()?;
        if w.iter().any(|&x| x != 0) {
            basis.push(w);
        }
    }
    Ok(basis)
}

/// Sign-compatible divisibility: every coordinate of `g` points the same
/// way as `h` and is no larger in magnitude.
fn conforms(g: &[i64], h: &[i64]) -> bool {
    g.iter()
        .zip(h)
        .all(|(&a, &b)| a.checked_mul(b).is_some_and(|p| p >= 0) && a.abs() <= b.abs())
}

fn one_norm(v: &[i64]) -> u64 {
    v.iter().map(|&x| x.unsigned_abs()).sum()
}

/// The conformally minimal nonzero vectors of the lattice spanned by
/// `basis`: completion by normal forms of pairwise sums.
fn graver_completion(
    basis: &[Vec<i64>],
    budget: &Budget,
    degree_cap: u64,
) -> Result<(Vec<Vec<i64>>, bool)> {
    let mut store: Vec<Vec<i64>> = Vec::new();
    let mut queue: BinaryHeap<Reverse<(u64, Vec<i64>)>> = BinaryHeap::new();
    for b in basis {
        queue.push(Reverse((one_norm(b), b.clone())));
        let neg: Vec<i64> = b.iter().map(|&x| -x).collect();
        queue.push(Reverse((one_norm(&neg), neg)));
    }
    let mut meter = budget.meter("completing a lattice basis");
    let mut tripped = false;

    while let Some(Reverse((_, mut h))) = queue.pop() {
        meter.tick()?;
        // normal form against the current store
        'reduce: loop {
            for g in &store {
                if conforms(g, &h) {
                    for (x, y) in h.iter_mut().zip(g) {
                        *x -= y;
                    }
                    if h.iter().all(|&x| x == 0) {
                        break 'reduce;
                    }
                    continue 'reduce;
                }
            }
            break;
        }
        if h.iter().all(|&x| x == 0) {
            continue;
        }
        if one_norm(&h) > degree_cap {
            tripped = true;
            continue;
        }
        for g in &store {
            let sum: Vec<i64> = g.iter().zip(&h).map(|(&a, &b)| a + b).collect();
            if sum.iter().any(|&x| x != 0) {
                queue.push(Reverse((one_norm(&sum), sum)));
            }
        }
        store.push(h);
    }

    // keep only the conformally minimal vectors
    let mut minimal: Vec<Vec<i64>> = Vec::new();
    for (i, v) in store.iter().enumerate() {
        let reducible = store
            .iter()
            .enumerate()
            .any(|(j, w)| i != j && conforms(w, v));
        if !reducible {
            minimal.push(v.clone());
        }
    }
    minimal.sort();
    minimal.dedup();
    Ok((minimal, tripped))
}

fn dominates(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Node slice granted to the direct completion before switching to the
/// lattice route.
const DIRECT_SLICE: u64 = 200_000;

/// Direct completion from unit vectors: grow candidates only along columns
/// that push the defect toward zero, prune everything dominating a known
/// solution.  Fast when solutions are plentiful, hopeless when the kernel
/// is (nearly) trivial; `None` means the slice ran out.
fn direct_completion(
    columns: &[Vec<i64>],
    slice: u64,
    degree_cap: u64,
) -> Option<(Vec<Vec<u64>>, bool)> {
    let n = columns.len();
    let mut nodes = 0u64;
    let mut tripped = false;
    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<(Vec<u64>, Vec<i64>)> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
    for (j, col) in columns.iter().enumerate() {
        let mut u = vec![0u64; n];
        u[j] = 1;
        seen.insert(u.clone());
        frontier.push((u, col.clone()));
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (u, val) in frontier.drain(..) {
            nodes += 1;
            if nodes > slice {
                return None;
            }
            if val.iter().all(|&v| v == 0) {
                if !solutions.iter().any(|s| dominates(&u, s)) {
                    solutions.push(u);
                }
                continue;
            }
            if u.iter().sum::<u64>() >= degree_cap {
                tripped = true;
                continue;
            }
            for (j, col) in columns.iter().enumerate() {
                let dot: i128 = val
                    .iter()
                    .zip(col)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                if dot >= 0 {
                    continue;
                }
                let mut u2 = u.clone();
                u2[j] += 1;
                if solutions.iter().any(|s| dominates(&u2, s)) {
                    continue;
                }
                if !seen.insert(u2.clone()) {
                    continue;
                }
                let val2: Vec<i64> = val.iter().zip(col).map(|(&a, &b)| a + b).collect();
                next.push((u2, val2));
            }
        }
        frontier = next;
    }
    let mut minimal: Vec<Vec<u64>> = solutions
        .iter()
        .filter(|s| {
            !solutions
                .iter()
                .any(|t| t != *s && dominates(s, t) && t.iter().any(|&x| x > 0))
        })
        .cloned()
        .collect();
    minimal.sort();
    minimal.dedup();
    Some((minimal, tripped))
}

/// Minimal nonzero solutions of `A u = 0`, `u ∈ ℕ^n`, where `columns[j]` is
/// the j-th column of A.
///
/// Two complementary complete routes: the direct completion from unit
/// vectors (cheap when solutions are dense enough to prune the frontier),
/// and, when its node slice runs out, the conformally minimal vectors of
/// the integer kernel lattice filtered to the nonnegative orthant (cheap
/// when the kernel is small).
pub fn kernel_hilbert_basis(
    columns: &[Vec<i64>],
    budget: &Budget,
    degree_cap: u64,
) -> Result<(Vec<Vec<u64>>, HilbertMethod)> {
    let n = columns.len();
    if n == 0 {
        return Ok((Vec::new(), HilbertMethod::Completion));
    }
    let rows = columns[0].len();
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::invalid("ragged matrix"));
    }

    let slice = DIRECT_SLICE.min(budget.max_nodes);
    let tripped = match direct_completion(columns, slice, degree_cap) {
        Some((sols, false)) => return Ok((sols, HilbertMethod::Completion)),
        Some((_, true)) => true,
        None => {
            let lattice = integer_kernel_basis(columns)?;
            let (minimal, tripped) = graver_completion(&lattice, budget, degree_cap)?;
            if !tripped {
                let mut sols: Vec<Vec<u64>> = minimal
                    .into_iter()
                    .filter(|w| w.iter().all(|&x| x >= 0))
                    .map(|w| w.into_iter().map(|x| x as u64).collect())
                    .collect();
                sols.sort();
                return Ok((sols, HilbertMethod::Completion));
            }
            true
        }
    };
    debug_assert!(tripped);
    if n <= 14 {
        let brute = bounded_brute_force(columns, degree_cap.min(64), budget)?;
        return Ok((
            brute,
            HilbertMethod::BoundedFallback {
                bound: degree_cap.min(64),
            },
        ));
    }
    Err(Error::budget(
        "kernel completion hit the degree safeguard on a large system",
    ))
}

/// All minimal nonzero solutions with coordinate sum at most `bound`,
/// by direct search.  Minimal-within-the-bound equals globally-minimal for
/// solutions inside the bound, since domination only shrinks coordinates.
pub fn bounded_brute_force(
    columns: &[Vec<i64>],
    bound: u64,
    budget: &Budget,
) -> Result<Vec<Vec<u64>>> {
    let n = columns.len();
    let rows = if n == 0 { 0 } else { columns[0].len() };
    let mut meter = budget.meter("brute forcing kernel solutions");
    let mut sols: Vec<Vec<u64>> = Vec::new();
    let mut u = vec![0u64; n];
    let mut val = vec![0i64; rows];

    fn rec(
        columns: &[Vec<i64>],
        idx: usize,
        left: u64,
        u: &mut Vec<u64>,
        val: &mut Vec<i64>,
        sols: &mut Vec<Vec<u64>>,
        meter: &mut crate::budget::Meter,
    ) -> Result<()> {
        meter.tick()?;
        if idx == columns.len() {
            if val.iter().all(|&v| v == 0) && u.iter().any(|&x| x > 0) {
                sols.push(u.clone());
            }
            return Ok(());
        }
        let mut k = 0u64;
        loop {
            rec(columns, idx + 1, left - k, u, val, sols, meter)?;
            if k == left {
                break;
            }
            k += 1;
            u[idx] += 1;
            for (v, c) in val.iter_mut().zip(&columns[idx]) {
                *v += c;
            }
        }
        u[idx] = 0;
        for (v, c) in val.iter_mut().zip(&columns[idx]) {
            *v -= c * k as i64;
        }
        Ok(())
    }
    rec(columns, 0, bound, &mut u, &mut val, &mut sols, &mut meter)?;

    let mut minimal: Vec<Vec<u64>> = Vec::new();
    for (i, s) in sols.iter().enumerate() {
        let dominated = sols
            .iter()
            .enumerate()
            .any(|(j, t)| i != j && dominates(s, t) && s != t);
        if !dominated && !minimal.contains(s) {
            minimal.push(s.clone());
        }
    }
    minimal.sort();
    Ok(minimal)
}

/// Minimal nonzero pairs (x, y) with `M x = M y`, where `generator_columns[j]`
/// is the exponent vector of generator j.  These are exactly the atoms of the
/// kernel-pair monoid `{(x,y) : π(x) = π(y)}`.
///
/// A minimal pair with difference `w = x - y != 0` must have `x` and `y` of
/// disjoint support (otherwise subtracting a diagonal `(e_i, e_i)` gives a
/// proper divisor), so `x = w⁺`, `y = w⁻`, and minimality of the pair is
/// conformal minimality of `w` in the integer kernel of M.  The atoms are
/// therefore the diagonal pairs plus the split kernel-lattice Graver
/// vectors.
pub fn hilbert_basis(generator_columns: &[Vec<i64>], budget: &Budget) -> Result<HilbertBasis> {
    let s = generator_columns.len();
    let lattice = integer_kernel_basis(generator_columns)?;
    let (minimal, tripped) = graver_completion(&lattice, budget, DEGREE_CAP)?;
    if tripped {
        if 2 * s <= 14 {
            let mut columns: Vec<Vec<i64>> = generator_columns.to_vec();
            for c in generator_columns {
                columns.push(c.iter().map(|&x| -x).collect());
            }
            let bound = DEGREE_CAP.min(64);
            let sols = bounded_brute_force(&columns, bound, budget)?;
            let mut pairs: Vec<PairAtom> = sols
                .into_iter()
                .map(|u| PairAtom {
                    left: u[..s].to_vec(),
                    right: u[s..].to_vec(),
                })
                .collect();
            pairs.sort();
            return Ok(HilbertBasis {
                pairs,
                method: HilbertMethod::BoundedFallback { bound },
            });
        }
        return Err(Error::budget(
            "pair completion hit the degree safeguard on a large system",
        ));
    }
    let mut pairs: Vec<PairAtom> = Vec::with_capacity(s + minimal.len());
    for j in 0..s {
        let mut left = vec![0u64; s];
        left[j] = 1;
        pairs.push(PairAtom {
            left: left.clone(),
            right: left,
        });
    }
    for w in minimal {
        let left: Vec<u64> = w.iter().map(|&x| x.max(0) as u64).collect();
        let right: Vec<u64> = w.iter().map(|&x| (-x).max(0) as u64).collect();
        pairs.push(PairAtom { left, right });
    }
    pairs.sort();
    pairs.dedup();
    Ok(HilbertBasis {
        pairs,
        method: HilbertMethod::Completion,
    })
}
