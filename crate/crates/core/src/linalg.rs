//! Exact Gaussian elimination over rational functions.

use crate::coeff::RationalFunction;

type RF = RationalFunction;

/// A matrix in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<Vec<RF>>,
    pivots: Vec<usize>,
    width: usize,
}

impl Echelon {
    pub fn new(rows: &[Vec<RF>], width: usize) -> Self {
        let mut m: Vec<Vec<RF>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..width {
            let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][col].recip().expect("nonzero pivot");
            m[r] = m[r].iter().map(|x| x * &inv).collect();
            for i in 0..m.len() {
                if i != r && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    let pivot_row = m[r].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *x = &*x - &(&f * p);
                        }
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        Echelon { rows: m, pivots, width }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The part of `v` left after eliminating every pivot column; zero iff
    /// `v` lies in the row space.
    pub fn reduce(&self, v: &[RF]) -> Vec<RF> {
        let mut out = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if out[col].is_zero() {
                continue;
            }
            let f = out[col].clone();
            for (x, p) in out.iter_mut().zip(row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[RF]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// A basis of {v : Mv = 0}.
    pub fn null_space(&self) -> Vec<Vec<RF>> {
        (0..self.width)
            .filter(|c| !self.pivots.contains(c))
            .map(|free| {
                let mut v = vec![RF::zero(); self.width];
                v[free] = RF::one();
                for (row, &col) in self.rows.iter().zip(&self.pivots) {
                    v[col] = -&row[free];
                }
                v
            })
            .collect()
    }
}
