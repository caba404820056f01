//! Reduced row-echelon form over an exact field.

use crate::field::Field;

/// A matrix in reduced row-echelon form: pivot columns strictly increase,
/// every pivot is 1, and each pivot column is zero outside its pivot row.
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn empty(field: F, ncols: usize) -> Self {
        Rref {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Gauss-Jordan elimination of `rows` (each of length `ncols`).
    pub fn new(field: F, rows: Vec<Vec<F::Elem>>, ncols: usize) -> Self {
        let mut m = rows;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            let inv = field.inv(&m[r][c]);
            for v in m[r].iter_mut().skip(c) {
                *v = field.mul(v, &inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || field.is_zero(&row[c]) {
                    continue;
                }
                let factor = row[c].clone();
                for j in c..ncols {
                    if !field.is_zero(&pivot_row[j]) {
                        let t = field.mul(&factor, &pivot_row[j]);
                        row[j] = field.sub(&row[j], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Rref {
            field,
            ncols,
            rows: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Columns that carry no pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[c]) {
                continue;
            }
            let factor = out[c].clone();
            for j in c..self.ncols {
                if !f.is_zero(&row[j]) {
                    let t = f.mul(&factor, &row[j]);
                    out[j] = f.sub(&out[j], &t);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the row space. Returns false when it was already there.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[c]);
        for x in w.iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..self.ncols {
                if !f.is_zero(&w[j]) {
                    let t = f.mul(&factor, &w[j]);
                    row[j] = f.sub(&row[j], &t);
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, w);
        true
    }
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, ncols: usize) -> usize {
    Rref::new(field.clone(), rows, ncols).rank()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let aug: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let red = Rref::new(field.clone(), aug, 2 * n);
    if red.rank() < n || red.pivots()[n - 1] >= n {
        return None;
    }
    Some(red.rows().iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix.
pub fn vec_mul<F: Field>(field: &F, v: &[F::Elem], m: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = vec![field.zero(); ncols];
    for (a, row) in v.iter().zip(m) {
        if field.is_zero(a) {
            continue;
        }
        for (o, b) in out.iter_mut().zip(row) {
            if !field.is_zero(b) {
                *o = field.add(o, &field.mul(a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn is_canonical<F: Field>(r: &Rref<F>) -> bool {
        let f = r.field();
        r.pivots().windows(2).all(|w| w[0] < w[1])
            && r.rows().iter().zip(r.pivots()).all(|(row, &c)| {
                row[c] == f.one() && row[..c].iter().all(|x| f.is_zero(x))
            })
            && r.pivots().iter().enumerate().all(|(i, &c)| {
                r.rows()
                    .iter()
                    .enumerate()
                    .all(|(j, row)| j == i || f.is_zero(&row[c]))
            })
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        let r = Rref::new(Rationals, rows, 3);
        assert_eq!(r.rank(), 2);
        assert_eq!(r.pivots(), &[0, 1]);
        assert!(is_canonical(&r));
        assert_eq!(r.free_columns(), vec![2]);
    }

    #[test]
    fn incremental_insert_matches_batch() {
        let f = PrimeField::new(101).unwrap();
        let rows: Vec<Vec<u64>> = vec![vec![0, 3, 1, 4], vec![2, 0, 0, 1], vec![2, 3, 1, 5], vec![0, 0, 7, 7]];
        let batch = Rref::new(f, rows.clone(), 4);
        let mut inc = Rref::empty(f, 4);
        let added: Vec<bool> = rows.iter().map(|r| inc.insert(r)).collect();
        assert_eq!(added, vec![true, true, false, true]);
        assert_eq!(batch.rows(), inc.rows());
        assert_eq!(batch.pivots(), inc.pivots());
        assert!(is_canonical(&inc));
    }

    #[test]
    fn inverse_and_singular() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&Rationals, &m).unwrap();
        assert_eq!(vec_mul(&Rationals, &[q(1), q(0)], &inv), vec![q(1), q(-1)]);
        let s = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&Rationals, &s).is_none());
        assert_eq!(inverse(&Rationals, &[]), Some(Vec::new()));
    }
}
