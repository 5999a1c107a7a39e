//! Dense exact linear algebra over a [`Field`].

use crate::field::Field;

/// An incrementally built row-echelon basis of a subspace of `k^ncols`.
///
/// Rows are normalized (pivot entry one) and each row vanishes on the pivot
/// columns of all rows inserted before it. Reducing a vector against the
/// rows in insertion order therefore clears every pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Columns without a pivot, ascending. Their unit vectors span a
    /// complement of the row space.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Reduce `v` in place so that it vanishes on every pivot column.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
    }

    /// Insert a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let f = &self.field;
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }
}

/// Rank of a matrix given by rows.
pub fn rank<F: Field>(field: &F, ncols: usize, rows: impl IntoIterator<Item = Vec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field.clone(), ncols);
    for r in rows {
        e.insert(r);
        if e.rank() == ncols {
            break;
        }
    }
    e.rank()
}

/// A basis of the kernel `{x : A x = 0}` for `A` given by rows.
pub fn kernel<F: Field>(field: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut e = Echelon::new(field.clone(), ncols);
    for r in rows {
        e.insert(r.clone());
    }
    // back-substitute to reduced row echelon form
    let rref = e.reduced_rows();
    let free = e.free_columns();
    let mut out = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut x = vec![field.zero(); ncols];
        x[fc] = field.one();
        for (row, &p) in rref.iter().zip(e.pivots()) {
            if !field.is_zero(&row[fc]) {
                x[p] = field.neg(&row[fc]);
            }
        }
        out.push(x);
    }
    out
}

impl<F: Field> Echelon<F> {
    /// The rows in fully reduced form: every row vanishes on all other
    /// pivot columns.
    pub fn reduced_rows(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut rows = self.rows.clone();
        for k in (0..rows.len()).rev() {
            let pk = self.pivots[k];
            let (before, after) = rows.split_at_mut(k);
            let rk = &after[0];
            for r in before.iter_mut() {
                if f.is_zero(&r[pk]) {
                    continue;
                }
                let c = r[pk].clone();
                for (x, y) in r.iter_mut().zip(rk) {
                    if !f.is_zero(y) {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                }
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Vec<Vec<num_rational::BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&Rationals, 3, a.clone()), 2);
        let k = kernel(&Rationals, 3, &a);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot = row
                .iter()
                .zip(&k[0])
                .fold(Rationals.zero(), |acc, (x, y)| acc + x * y);
            assert!(Rationals.is_zero(&dot));
        }
    }

    #[test]
    fn prime_field_rank_drops() {
        let f = PrimeField::new(3).unwrap();
        let rows = vec![vec![1u32, 1], vec![1, 2 + 2]];
        // over GF(3) the second row is (1,1)
        let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % 3).collect()).collect();
        assert_eq!(rank(&f, 2, rows), 1);
    }

    #[test]
    fn echelon_reduce_clears_pivots() {
        let mut e = Echelon::new(Rationals, 3);
        for r in q(&[&[0, 1, 1], &[1, 1, 0]]) {
            assert!(e.insert(r));
        }
        let mut v = q(&[&[3, 5, 7]]).remove(0);
        e.reduce(&mut v);
        for &p in e.pivots() {
            assert!(Rationals.is_zero(&v[p]));
        }
        assert_eq!(e.free_columns(), vec![2]);
    }
}
