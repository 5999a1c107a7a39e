//! Integer and rational matrix routines for fan computations: Smith and
//! Hermite normal forms, determinants and rational linear solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;

fn to_wide(a: &[Vec<i64>]) -> Vec<Vec<i128>> {
    a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn to_narrow(a: Vec<Vec<i128>>) -> Result<Matrix> {
    a.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    i64::try_from(x).map_err(|_| Error::ResourceLimit("integer overflow in lattice reduction".into()))
                })
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with each entry
/// dividing the next. Only `U` is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    /// Nonzero invariant factors, positive.
    pub invariants: Vec<i64>,
    pub left: Matrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors other than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<i64> {
        self.invariants.iter().copied().filter(|&d| d != 1).collect()
    }
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<Smith> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = to_wide(a);
    let mut u = identity(rows);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].abs())
        else {
            break;
        };
        m.swap(t, pr);
        u.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut done = true;
            for r in t + 1..rows {
                let q = Integer::div_floor(&m[r][t], &m[t][t]);
                if q != 0 {
                    for c in 0..cols {
                        m[r][c] -= q * m[t][c];
                    }
                    for c in 0..rows {
                        u[r][c] -= q * u[t][c];
                    }
                }
                if m[r][t] != 0 {
                    done = false;
                }
            }
            for c in t + 1..cols {
                let q = Integer::div_floor(&m[t][c], &m[t][t]);
                if q != 0 {
                    for row in m.iter_mut() {
                        row[c] -= q * row[t];
                    }
                }
                if m[t][c] != 0 {
                    done = false;
                }
            }
            if done {
                // divisibility of the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| m[r][c] % m[t][t] != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        for c in 0..cols {
                            m[t][c] += m[r][c];
                        }
                        for c in 0..rows {
                            u[t][c] += u[r][c];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let (br, bc) = std::iter::once((t, t))
                .chain((t + 1..rows).map(|r| (r, t)))
                .chain((t + 1..cols).map(|c| (t, c)))
                .filter(|&(r, c)| m[r][c] != 0)
                .min_by_key(|&(r, c)| m[r][c].abs())
                .unwrap();
            if (br, bc) != (t, t) {
                m.swap(t, br);
                u.swap(t, br);
                for row in m.iter_mut() {
                    row.swap(t, bc);
                }
            }
        }
        if m[t][t] < 0 {
            for c in 0..cols {
                m[t][c] = -m[t][c];
            }
            for c in 0..rows {
                u[t][c] = -u[t][c];
            }
        }
        t += 1;
    }
    let invariants = (0..t)
        .map(|i| i64::try_from(m[i][i]).map_err(|_| Error::ResourceLimit("overflow".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Smith {
        invariants,
        left: to_narrow(u)?,
    })
}

/// Row-style Hermite normal form: upper triangular, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows dropped.
pub fn hermite_normal_form(a: &[Vec<i64>]) -> Result<Matrix> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = to_wide(a);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let Some(p) = (r..rows).filter(|&i| m[i][c] != 0).min_by_key(|&i| m[i][c].abs()) else {
                break;
            };
            m.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                let q = Integer::div_floor(&m[i][c], &m[r][c]);
                if q != 0 {
                    for k in 0..cols {
                        m[i][k] -= q * m[r][k];
                    }
                }
                if m[i][c] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for k in 0..cols {
                m[r][k] = -m[r][k];
            }
        }
        for i in 0..r {
            let q = Integer::div_floor(&m[i][c], &m[r][c]);
            if q != 0 {
                for k in 0..cols {
                    m[i][k] -= q * m[r][k];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    to_narrow(m)
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Row reduction over Q: returns the reduced rows and pivot columns.
fn rref(mut m: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (m, pivots)
}

/// Rank over Q.
pub fn rational_rank(a: &[Vec<i64>]) -> usize {
    let ncols = a.first().map_or(0, |r| r.len());
    let m = a.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect();
    rref(m, ncols).1.len()
}

/// Some `x` with `A x = b`, or `None` if the system is inconsistent. Free
/// variables are set to zero.
pub fn solve_rational(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, &y)| r.iter().map(|&x| rational(x)).chain(std::iter::once(rational(y))).collect())
        .collect();
    let (m, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Determinant of a square integer matrix.
pub fn determinant(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                let pivot_row = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    det.to_integer()
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &[Vec<i64>]) -> Option<Matrix> {
    let n = a.len();
    if determinant(a).abs() != BigInt::one() {
        return None;
    }
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .map(|&x| rational(x))
                .chain((0..n).map(|j| rational(i64::from(i == j))))
                .collect()
        })
        .collect();
    let (m, _) = rref(aug, n);
    m.iter()
        .map(|r| r[n..].iter().map(|x| x.to_integer().to_i64()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Matrix {
    let k = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..cols).map(|c| (0..k).map(|i| r[i] * b[i][c]).sum()).collect())
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Matrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|c| a.iter().map(|r| r[c]).collect()).collect()
}

/// Scale a rational vector to the primitive integer vector on its ray.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<i64> {
    let denom = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| if g.is_zero() { 0 } else { (x / &g).to_i64().expect("small entries") })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_hirzebruch_rays() {
        let p = vec![vec![1, 0], vec![0, 1], vec![-1, 3], vec![0, -1]];
        let s = smith_normal_form(&p).unwrap();
        assert_eq!(s.invariants, vec![1, 1]);
        // the last two rows of U annihilate the rays
        for row in &s.left[2..] {
            for c in 0..2 {
                assert_eq!((0..4).map(|i| row[i] * p[i][c]).sum::<i64>(), 0);
            }
        }
        assert_eq!(determinant(&s.left).abs(), BigInt::one());
    }

    #[test]
    fn smith_detects_torsion() {
        let p = vec![vec![2, 1], vec![0, 3]];
        let s = smith_normal_form(&p).unwrap();
        assert_eq!(s.invariants, vec![1, 6]);
        assert_eq!(s.torsion(), vec![6]);
    }

    #[test]
    fn hermite_form() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let h = hermite_normal_form(&a).unwrap();
        assert_eq!(h.len(), 3);
        for (r, row) in h.iter().enumerate() {
            let p = row.iter().position(|&x| x != 0).unwrap();
            assert_eq!(p, r);
            assert!(row[p] > 0);
            for above in &h[..r] {
                assert!(above[p] >= 0 && above[p] < row[p]);
            }
        }
        assert_eq!(determinant(&h).abs(), determinant(&a).abs());
    }

    #[test]
    fn rational_solve_and_primitive() {
        let x = solve_rational(&[vec![1, 1], vec![3, -2]], &[1, 1]).unwrap();
        assert_eq!(primitive_integer_vector(&x), vec![3, 2]);
        assert!(solve_rational(&[vec![1, 1], vec![2, 2]], &[1, 3]).is_none());
        let inv = unimodular_inverse(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(inv, vec![vec![1, -1], vec![-1, 2]]);
    }
}
