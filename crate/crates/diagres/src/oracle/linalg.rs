//! Incremental row echelon forms over a `Field`.

use super::field::Field;

type Sparse<E> = Vec<(usize, E)>;

/// A subspace of `F^ncols` held in echelon form. Each stored row has its
/// pivot as leading entry with coefficient one.
#[derive(Debug, Clone)]
pub struct Span<'f, F: Field> {
    field: &'f F,
    ncols: usize,
    rows: Vec<Sparse<F::E>>,
    pivot_row: Vec<Option<usize>>,
}

impl<'f, F: Field> Span<'f, F> {
    pub fn new(field: &'f F, ncols: usize) -> Self {
        Span {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn zero_vec(&self) -> Vec<F::E> {
        vec![self.field.zero(); self.ncols]
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut [F::E]) {
        let f = self.field;
        for c in 0..self.ncols {
            if f.is_zero(&v[c]) {
                continue;
            }
            if let Some(k) = self.pivot_row[c] {
                let coef = v[c].clone();
                for (j, a) in &self.rows[k] {
                    v[*j] = f.sub(&v[*j], &f.mul(&coef, a));
                }
            }
        }
    }

    pub fn contains(&self, v: &[F::E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|a| self.field.is_zero(a))
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, mut v: Vec<F::E>) -> bool {
        self.reduce(&mut v);
        self.insert_reduced(v)
    }

    fn insert_reduced(&mut self, v: Vec<F::E>) -> bool {
        let f = self.field;
        let Some(lead) = v.iter().position(|a| !f.is_zero(a)) else {
            return false;
        };
        let inv = f.inv(&v[lead]);
        let row: Sparse<F::E> = v
            .into_iter()
            .enumerate()
            .skip(lead)
            .filter(|(_, a)| !f.is_zero(a))
            .map(|(j, a)| (j, f.mul(&a, &inv)))
            .collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Adds the unit vector at column `c`.
    pub fn insert_unit(&mut self, c: usize) -> bool {
        let mut v = self.zero_vec();
        v[c] = self.field.one();
        self.insert(v)
    }
}

/// Kernel of the linear map sending the i-th basis vector to `images[i]`,
/// each image a dense vector of length `ncols`.
pub fn kernel<F: Field>(field: &F, images: &[Vec<F::E>], ncols: usize) -> Vec<Vec<F::E>> {
    let k = images.len();
    let mut rows: Vec<(Sparse<F::E>, Sparse<F::E>)> = Vec::new();
    let mut pivot_row: Vec<Option<usize>> = vec![None; ncols];
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut comb = vec![field.zero(); k];
        comb[i] = field.one();
        for c in 0..ncols {
            if field.is_zero(&v[c]) {
                continue;
            }
            if let Some(r) = pivot_row[c] {
                let coef = v[c].clone();
                let (row, rc) = &rows[r];
                for (j, a) in row {
                    v[*j] = field.sub(&v[*j], &field.mul(&coef, a));
                }
                for (j, a) in rc {
                    comb[*j] = field.sub(&comb[*j], &field.mul(&coef, a));
                }
            }
        }
        match v.iter().position(|a| !field.is_zero(a)) {
            None => out.push(comb),
            Some(lead) => {
                let inv = field.inv(&v[lead]);
                let row = v
                    .into_iter()
                    .enumerate()
                    .skip(lead)
                    .filter(|(_, a)| !field.is_zero(a))
                    .map(|(j, a)| (j, field.mul(&a, &inv)))
                    .collect();
                let comb = comb
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !field.is_zero(a))
                    .map(|(j, a)| (j, field.mul(a, &inv)))
                    .collect();
                pivot_row[lead] = Some(rows.len());
                rows.push((row, comb));
            }
        }
    }
    out
}

/// Rank of a list of dense vectors.
pub fn rank<F: Field>(field: &F, vectors: &[Vec<F::E>], ncols: usize) -> usize {
    let mut span = Span::new(field, ncols);
    vectors.iter().filter(|v| span.insert((*v).clone())).count()
}

#[cfg(test)]
mod tests {
    use super::super::field::{Fp, Qf};
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn span_basics() {
        let f = Fp(5);
        let mut s = Span::new(&f, 3);
        assert!(s.insert(vec![1, 2, 3]));
        assert!(s.insert(vec![0, 1, 1]));
        assert!(!s.insert(vec![1, 3, 4]));
        assert_eq!(s.dim(), 2);
        assert!(s.insert_unit(2));
        assert!(s.is_full());
    }

    #[test]
    fn kernel_over_q() {
        let q = Qf;
        let r = |a: i64| BigRational::from_integer(a.into());
        let imgs = vec![vec![r(1), r(2)], vec![r(2), r(4)], vec![r(0), r(1)]];
        let ker = kernel(&q, &imgs, 2);
        assert_eq!(ker.len(), 1);
        assert_eq!(q.integerize(&ker[0]), vec![2.into(), (-1).into(), 0.into()]);
        assert_eq!(rank(&q, &imgs, 2), 2);
    }
}
