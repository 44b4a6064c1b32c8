//! Dense exact matrices over a [`Field`], with deterministic Gaussian
//! elimination (first-nonzero pivot in column order).

use crate::scalar::{Field, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>, // row-major
}

impl Mat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Mat::zero(field, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let cur = self.at(i, j).clone();
        self.set(i, j, &cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&o.data) {
            *a = &*a + b;
        }
        m
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&o.data) {
            *a = &*a - b;
        }
        m
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = &*a * c;
        }
        m
    }

    pub fn neg(&self) -> Mat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = a.neg();
        }
        m
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in matrix product");
        let mut m = Mat::zero(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = m.at(i, j).clone();
                    m.set(i, j, &cur + &(a * b));
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Stack vertically: [self; other].
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut m = Mat::zero(self.field, self.rows + o.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..self.cols {
                m.set(self.rows + i, j, o.at(i, j).clone());
            }
        }
        m
    }

    /// Concatenate horizontally: [self | other].
    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut m = Mat::zero(self.field, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.at(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry in column order
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.at(r, c).inv();
            for j in 0..m.cols {
                let v = m.at(r, j).clone();
                m.set(r, j, &v * &inv);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = &m.at(i, j).clone() - &(&f * m.at(r, j));
                        m.set(i, j, v);
                    }
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

    /// Basis of the null space, as columns of a cols × nullity matrix.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zero(self.field, self.cols, free.len());
        for (fj, &fc) in free.iter().enumerate() {
            k.set(fc, fj, Scalar::one(self.field));
            for (pi, &pc) in pivots.iter().enumerate() {
                k.set(pc, fj, r.at(pi, fc).neg());
            }
        }
        k
    }

    /// Basis of the column space: the pivot columns of the original matrix,
    /// as columns of a rows × rank matrix.
    pub fn image(&self) -> Mat {
        let (_, pivots) = self.rref();
        let mut m = Mat::zero(self.field, self.rows, pivots.len());
        for (j, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, j, self.at(i, c).clone());
            }
        }
        m
    }

    /// Solve self · x = b; `None` if infeasible. Free coordinates are set to
    /// zero, which makes the particular solution deterministic and canonical.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zero(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(pi, self.cols).clone();
        }
        Some(x)
    }

    /// Entrywise reduction mod p; `None` on a denominator divisible by p.
    pub fn reduce_mod(&self, p: u64) -> Option<Mat> {
        let mut m = Mat::zero(Field::Prime(p), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).reduce_mod(p)?);
            }
        }
        Some(m)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(Field::Rational, n)
    }

    #[test]
    fn rref_and_rank() {
        let m = Mat::from_rows(
            Field::Rational,
            vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)], vec![s(1), s(0), s(1)]],
        );
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_feasible_and_not() {
        let m = Mat::from_rows(Field::Rational, vec![vec![s(1), s(1)], vec![s(2), s(2)]]);
        assert_eq!(m.solve(&[s(1), s(2)]).map(|x| m.mul_vec(&x)), Some(vec![s(1), s(2)]));
        assert!(m.solve(&[s(1), s(3)]).is_none());
    }

    #[test]
    fn image_spans() {
        let m = Mat::from_rows(Field::Rational, vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        let im = m.image();
        assert_eq!(im.cols, 1);
        assert_eq!(im.column(0), vec![s(1), s(2)]);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..=3, 12)) {
            let m = Mat::from_rows(
                Field::Rational,
                entries.chunks(4).map(|r| r.iter().map(|&v| s(v)).collect()).collect(),
            );
            prop_assert_eq!(m.rank() + m.kernel().cols, m.cols);
            prop_assert!(m.mul(&m.kernel()).is_zero());
        }

        #[test]
        fn modular_agrees_with_rational(entries in proptest::collection::vec(-3i64..=3, 12)) {
            let m = Mat::from_rows(
                Field::Rational,
                entries.chunks(4).map(|r| r.iter().map(|&v| s(v)).collect()).collect(),
            );
            // rank over F_p can only drop; rref of the reduction equals reduction
            // of the rref whenever no pivot denominator dies mod p
            let mp = m.reduce_mod(5).unwrap();
            prop_assert!(mp.rank() <= m.rank());
            if let Some(red) = m.rref().0.reduce_mod(5) {
                if mp.rank() == m.rank() {
                    prop_assert_eq!(red, mp.rref().0);
                }
            }
        }
    }
}
