use alloc::vec::Vec;

use crate::derivation::Derivation;
use crate::ratfunc::RatFunc;

/// Rectangular matrix over the fraction field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    ncols: usize,
    rows: Vec<Vec<RatFunc>>,
}

/// Reduced row echelon form: `rows[k][pivots[k]] == 1` and every other entry
/// of a pivot column is zero. Zero rows follow the pivot rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<RatFunc>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_rows(&self) -> &[Vec<RatFunc>] {
        &self.rows[..self.pivots.len()]
    }
}

impl RMatrix {
    /// Panics if the rows are ragged.
    pub fn new(ncols: usize, rows: Vec<Vec<RatFunc>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        RMatrix { ncols, rows }
    }

    pub fn from_derivations<'a>(nvars: usize, vs: impl IntoIterator<Item = &'a Derivation>) -> Self {
        RMatrix::new(nvars, vs.into_iter().map(|d| d.coeffs().to_vec()).collect())
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<RatFunc>] {
        &self.rows
    }

    /// Gauss-Jordan elimination. Among the candidate rows of each column the
    /// pivot with the smallest numerator-plus-denominator degree is taken,
    /// earliest row on ties.
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by_key(|&i| rows[i][col].weight())
            else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip().expect("pivot is nonzero");
            for v in rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = &*v - &(&factor * p);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        Echelon { rows, pivots }
    }
}

/// Dimension of the R-span of `vs`.
pub fn rank_over_r(vs: &[Derivation]) -> usize {
    let Some(first) = vs.first() else { return 0 };
    RMatrix::from_derivations(first.nvars(), vs).echelon().rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use alloc::vec;

    fn x(i: usize) -> RatFunc {
        RatFunc::variable(2, i)
    }

    #[test]
    fn echelon_examples() {
        let (o, z) = (RatFunc::one(2), RatFunc::zero(2));
        let m = RMatrix::new(2, vec![vec![o.clone(), z.clone()], vec![x(1), z.clone()], vec![z.clone(), o.clone()]]);
        let e = m.echelon();
        assert_eq!(e.pivots, vec![0, 1]);
        assert!(e.rows[2].iter().all(RatFunc::is_zero));

        let zero = RMatrix::new(2, vec![vec![z.clone(), z.clone()]; 2]);
        assert_eq!(zero.echelon().rank(), 0);

        let id = RMatrix::new(2, vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]]);
        let e = id.echelon();
        assert_eq!(e.rows, id.rows().to_vec());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn rank_examples() {
        let d1 = Derivation::partial(2, 0);
        let fam = vec![
            d1.clone(),
            d1.scale(&x(1)),
            d1.scale(&(&x(1) * &x(1)).scale(&frac(1, 2))),
            Derivation::partial(2, 1),
        ];
        assert_eq!(rank_over_r(&fam), 2);
        assert_eq!(rank_over_r(&[]), 0);
        let units: Vec<_> = (0..3).map(|i| Derivation::partial(3, i)).collect();
        assert_eq!(rank_over_r(&units), 3);
    }
}
