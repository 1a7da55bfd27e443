//! Smith normal form over the integers with unimodular witnesses.

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

/// `left · input · right = diagonal`, with `left` and `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries; each divides the next.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let k = self
            .diagonal
            .len()
            .min(self.diagonal.first().map_or(0, Vec::len));
        (0..k)
            .map(|i| self.diagonal[i][i])
            .filter(|&d| d != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .map(|(&x, brow)| x.checked_mul(brow[j]).expect("overflow in mat_mul"))
                        .fold(0i64, |acc, x| {
                            acc.checked_add(x).expect("overflow in mat_mul")
                        })
                })
                .collect()
        })
        .collect()
}

fn axpy(target: i64, factor: i64, source: i64) -> i64 {
    factor
        .checked_mul(source)
        .and_then(|p| target.checked_sub(p))
        .expect("integer overflow in Smith normal form")
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
    }

    /// row_i -= f · row_t
    fn sub_row(&mut self, i: usize, t: usize, f: i64) {
        for j in 0..self.cols {
            self.a[i][j] = axpy(self.a[i][j], f, self.a[t][j]);
        }
        for j in 0..self.rows {
            self.u[i][j] = axpy(self.u[i][j], f, self.u[t][j]);
        }
    }

    /// col_j -= f · col_t
    fn sub_col(&mut self, j: usize, t: usize, f: i64) {
        for i in 0..self.rows {
            self.a[i][j] = axpy(self.a[i][j], f, self.a[i][t]);
        }
        for i in 0..self.cols {
            self.v[i][j] = axpy(self.v[i][j], f, self.v[i][t]);
        }
    }

    /// Smallest nonzero magnitude in the trailing block, first in row-major
    /// order on ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let m = self.a[i][j].unsigned_abs();
                if m != 0 && best.is_none_or(|(b, _, _)| m < b) {
                    best = Some((m, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) {
        for t in 0..self.rows.min(self.cols) {
            loop {
                let Some((pi, pj)) = self.pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[t][t];
                let mut clean = true;
                for i in t + 1..self.rows {
                    let f = self.a[i][t] / p;
                    if f != 0 {
                        self.sub_row(i, t, f);
                    }
                    clean &= self.a[i][t] == 0;
                }
                for j in t + 1..self.cols {
                    let f = self.a[t][j] / p;
                    if f != 0 {
                        self.sub_col(j, t, f);
                    }
                    clean &= self.a[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                let offender =
                    (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| self.a[i][j] % p != 0));
                match offender {
                    Some(i) => self.sub_row(t, i, -1),
                    None => break,
                }
            }
            if self.a[t][t] < 0 {
                for x in &mut self.a[t] {
                    *x = -*x;
                }
                for x in &mut self.u[t] {
                    *x = -*x;
                }
            }
        }
    }
}

/// Exact Smith normal form. Pivots are the smallest-magnitude nonzero entry
/// of the remaining block, so the result is deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut r = Reducer {
        a: m.clone(),
        u: identity_matrix(rows),
        v: identity_matrix(cols),
        rows,
        cols,
    };
    r.run();
    SmithForm {
        diagonal: r.a,
        left: r.u,
        right: r.v,
    }
}
