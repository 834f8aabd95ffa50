//! Exact linear algebra over a coefficient field.

use std::collections::BTreeMap;

use crate::exactalg::{Field, FieldElement};

/// Dense matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
    field: Field,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols], field }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElement>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), field }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, f).neg();
                }
                v
            })
            .collect()
    }
}

/// Incrementally maintained echelon basis of a space of sparse vectors.
/// Keys are ordered; the pivot of a row is its largest key.
#[derive(Clone, Debug)]
pub struct SpanReducer<K: Ord + Clone> {
    pivots: BTreeMap<K, BTreeMap<K, FieldElement>>,
}

impl<K: Ord + Clone> Default for SpanReducer<K> {
    fn default() -> Self {
        SpanReducer { pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SpanReducer<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Top-reduces `v` against the basis; empty result means `v` is in the span.
    pub fn reduce(&self, mut v: BTreeMap<K, FieldElement>) -> BTreeMap<K, FieldElement> {
        v.retain(|_, c| !c.is_zero());
        while let Some((k, c)) = v.last_key_value() {
            let Some(row) = self.pivots.get(k) else { break };
            let c = c.clone();
            for (rk, rc) in row {
                let entry = v.entry(rk.clone()).or_insert_with(|| c.field().zero());
                *entry = entry.sub(&c.mul(rc));
                if entry.is_zero() {
                    v.remove(rk);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns false when it was already there.
    pub fn insert(&mut self, v: BTreeMap<K, FieldElement>) -> bool {
        let r = self.reduce(v);
        let Some((k, c)) = r.last_key_value() else { return false };
        let (k, inv) = (k.clone(), c.inv());
        let row = r.into_iter().map(|(key, val)| (key, val.mul(&inv))).collect();
        self.pivots.insert(k, row);
        true
    }

    pub fn contains(&self, v: BTreeMap<K, FieldElement>) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> FieldElement {
        Field::Q.from_i64(v)
    }

    #[test]
    fn rank_and_kernel() {
        let m =
            Matrix::from_rows(Field::Q, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        for i in 0..3 {
            let s = (0..3).fold(q(0), |acc, j| acc.add(&m.get(i, j).mul(&ker[0][j])));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn span_reducer_detects_dependence() {
        let mut s = SpanReducer::new();
        let v = |a: i64, b: i64| BTreeMap::from([(0u32, q(a)), (1u32, q(b))]);
        assert!(s.insert(v(1, 1)));
        assert!(s.insert(v(1, -1)));
        assert!(!s.insert(v(3, 5)));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(v(7, 0)));
    }
}
