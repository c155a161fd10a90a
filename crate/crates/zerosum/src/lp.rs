//! Exact rational linear programming (dense two-phase simplex with Bland's
//! rule).  Small systems only; used to evaluate extreme length ratios over
//! kernel-pair cones, where the optimum is attained on an extreme ray and
//! hence at a minimal lattice solution.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn rat(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Maximize `c · u` subject to `A u = b`, `u >= 0`.  Returns the optimum and
/// an optimal point.  Errors when infeasible or unbounded.
pub fn maximize(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
) -> Result<(BigRational, Vec<BigRational>)> {
    let m = a.len();
    let n = if m == 0 { c.len() } else { a[0].len() };
    if b.len() != m || a.iter().any(|row| row.len() != n) || c.len() != n {
        return Err(Error::invalid("inconsistent LP dimensions"));
    }

    // tableau over n real + m artificial variables
    let total = n + m;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<BigRational> = Vec::with_capacity(total + 1);
        let flip = b[i].is_negative();
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..total).collect();

    // phase 1: minimize the artificial sum
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); total + 1];
    for j in n..total {
        obj[j] = -BigRational::one();
    }
    for i in 0..m {
        let row = t[i].clone();
        for j in 0..=total {
            let v = obj[j].clone() + &row[j];
            obj[j] = v;
        }
    }
    simplex(&mut t, &mut basis, &mut obj, total)?;
    if !obj[total].is_zero() {
        return Err(Error::invalid("infeasible linear program"));
    }
    // pivot remaining artificial variables out of the basis where possible
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, &mut obj, i, j, total);
            }
        }
    }

    // phase 2: the real objective, artificial columns frozen at zero
    let mut obj2: Vec<BigRational> = vec![BigRational::zero(); total + 1];
    for (j, cj) in c.iter().enumerate() {
        obj2[j] = cj.clone();
    }
    for i in 0..m {
        if basis[i] < n && !obj2[basis[i]].is_zero() {
            let coeff = obj2[basis[i]].clone();
            for j in 0..=total {
                let v = obj2[j].clone() - &coeff * &t[i][j];
                obj2[j] = v;
            }
        }
    }
    simplex_phase2(&mut t, &mut basis, &mut obj2, n, total)?;

    let mut point = vec![BigRational::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            point[basis[i]] = t[i][total].clone();
        }
    }
    Ok((-obj2[total].clone(), point))
}

fn simplex(
    t: &mut [Vec<BigRational>],
    basis: &mut [usize],
    obj: &mut [BigRational],
    total: usize,
) -> Result<()> {
    loop {
        // Bland: smallest improving column
        let enter = (0..total).find(|&j| obj[j].is_positive());
        let enter = match enter {
            Some(j) => j,
            None => return Ok(()),
        };
        let leave = ratio_test(t, enter, total, basis)?;
        pivot_into(t, basis, obj, leave, enter, total);
    }
}

fn simplex_phase2(
    t: &mut [Vec<BigRational>],
    basis: &mut [usize],
    obj: &mut [BigRational],
    n: usize,
    total: usize,
) -> Result<()> {
    loop {
        let enter = (0..n).find(|&j| obj[j].is_positive());
        let enter = match enter {
            Some(j) => j,
            None => return Ok(()),
        };
        let leave = ratio_test(t, enter, total, basis)?;
        pivot_into(t, basis, obj, leave, enter, total);
    }
}

fn ratio_test(
    t: &[Vec<BigRational>],
    enter: usize,
    total: usize,
    basis: &[usize],
) -> Result<usize> {
    let mut best: Option<(BigRational, usize, usize)> = None; // (ratio, basis var, row)
    for (i, row) in t.iter().enumerate() {
        if row[enter].is_positive() {
            let ratio = &row[total] / &row[enter];
            let key = (ratio.clone(), basis[i]);
            match &best {
                None => best = Some((key.0, key.1, i)),
                Some((r, v, _)) => {
                    // Bland: break ratio ties by smallest basis variable
                    if &key.0 < r || (&key.0 == r && key.1 < *v) {
                        best = Some((key.0, key.1, i));
                    }
                }
            }
        }
    }
    best.map(|(_, _, i)| i)
        .ok_or_else(|| Error::invalid("unbounded linear program"))
}

fn pivot_into(
    t: &mut [Vec<BigRational>],
    basis: &mut [usize],
    obj: &mut [BigRational],
    row: usize,
    col: usize,
    total: usize,
) {
    let piv = t[row][col].clone();
    for j in 0..=total {
        let v = &t[row][j] / &piv;
        t[row][j] = v;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let f = t[i][col].clone();
            for j in 0..=total {
                let v = t[i][j].clone() - &f * &t[row][j];
                t[i][j] = v;
            }
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for j in 0..=total {
            let v = obj[j].clone() - &f * &t[row][j];
            obj[j] = v;
        }
    }
    basis[row] = col;
}

fn pivot(
    t: &mut [Vec<BigRational>],
    basis: &mut [usize],
    obj: &mut [BigRational],
    row: usize,
    col: usize,
    total: usize,
) {
    pivot_into(t, basis, obj, row, col, total);
}

/// sup of Σx / Σy over nonzero `(x, y) >= 0` with `M x = M y`, where
/// `columns[j]` is the j-th generator's exponent vector.  The supremum is
/// finite whenever every column is nonzero and nonnegative, and it is
/// attained on an extreme ray of the cone, i.e. at a minimal lattice pair.
pub fn max_pair_ratio(columns: &[Vec<i64>]) -> Result<BigRational> {
    let s = columns.len();
    if s == 0 {
        return Ok(rat(1));
    }
    let rows = columns[0].len();
    // variables: x_0..x_{s-1}, y_0..y_{s-1}
    let n = 2 * s;
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(rows + 1);
    for r in 0..rows {
        let mut row = Vec::with_capacity(n);
        for col in columns {
            row.push(rat(col[r]));
        }
        for col in columns {
            row.push(rat(-col[r]));
        }
        a.push(row);
    }
    // normalization Σy = 1
    let mut norm = vec![BigRational::zero(); n];
    for j in s..n {
        norm[j] = BigRational::one();
    }
    a.push(norm);
    let mut b = vec![BigRational::zero(); rows];
    b.push(BigRational::one());
    let mut c = vec![BigRational::zero(); n];
    for item in c.iter_mut().take(s) {
        *item = BigRational::one();
    }
    let (value, _) = maximize(&a, &b, &c)?;
    Ok(value.max(rat(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_lp() {
        // max x + y s.t. x + 2y = 4, x,y >= 0  -> x = 4
        let a = vec![vec![rat(1), rat(2)]];
        let b = vec![rat(4)];
        let c = vec![rat(1), rat(1)];
        let (v, p) = maximize(&a, &b, &c).unwrap();
        assert_eq!(v, rat(4));
        assert_eq!(p[0], rat(4));
    }

    #[test]
    fn infeasible_detected() {
        let a = vec![vec![rat(1)], vec![rat(1)]];
        let b = vec![rat(1), rat(2)];
        let c = vec![rat(0)];
        assert!(maximize(&a, &b, &c).is_err());
    }

    #[test]
    fn pair_ratio_single_column() {
        assert_eq!(max_pair_ratio(&[vec![2, 1]]).unwrap(), rat(1));
    }

    #[test]
    fn pair_ratio_split_column() {
        // generators e1+e2, e1, e2: the compound splits in two
        let cols = vec![vec![1, 1], vec![1, 0], vec![0, 1]];
        assert_eq!(
            max_pair_ratio(&cols).unwrap(),
            BigRational::new(BigInt::from(2), BigInt::from(1))
        );
    }
}
