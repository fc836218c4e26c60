use crate::Scalar;

pub type Matrix<E> = Vec<Vec<E>>;

/// `u * m * v == d`, with `u`, `v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf<E> {
    pub d: Matrix<E>,
    pub u: Matrix<E>,
    pub v: Matrix<E>,
}

impl<E: Scalar> Snf<E> {
    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<E> {
        let n = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..n)
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

pub fn identity<E: Scalar>(n: usize) -> Matrix<E> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { E::one() } else { E::zero() }).collect())
        .collect()
}

pub fn mat_mul<E: Scalar>(a: &Matrix<E>, b: &Matrix<E>, inner: usize, cols: usize) -> Matrix<E> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(E::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc + row[k].clone() * b[k][j].clone()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

struct Work<E> {
    a: Matrix<E>,
    u: Matrix<E>,
    v: Matrix<E>,
    rows: usize,
    cols: usize,
}

impl<E: Scalar> Work<E> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in self.a.iter_mut() {
                r.swap(i, j);
            }
            for r in self.v.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &E) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = self.a[j][c].clone() * q.clone();
            self.a[i][c] = self.a[i][c].clone() - t;
        }
        for c in 0..self.rows {
            let t = self.u[j][c].clone() * q.clone();
            self.u[i][c] = self.u[i][c].clone() - t;
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &E) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = self.a[r][j].clone() * q.clone();
            self.a[r][i] = self.a[r][i].clone() - t;
        }
        for r in 0..self.cols {
            let t = self.v[r][j].clone() * q.clone();
            self.v[r][i] = self.v[r][i].clone() - t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

pub fn smith_normal_form<E: Scalar>(m: &Matrix<E>) -> Snf<E> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = Work { a: m.clone(), u: identity(rows), v: identity(cols), rows, cols };

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.smallest_in(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_sub(i, t, &q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_sub(j, t, &q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it in and repeat
                let (pi, pj) = smallest_in_cross(&w, t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // pivot must divide the remaining block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[i][j].is_multiple_of(&w.a[t][t]));
            match bad {
                Some((i, _)) => {
                    let minus_one = -E::one();
                    w.row_sub(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }

    let snf = Snf { d: w.a, u: w.u, v: w.v };
    let um = mat_mul(&snf.u, m, rows, cols);
    let umv = mat_mul(&um, &snf.v, cols, cols);
    assert_eq!(umv, snf.d, "smith normal form failed U*M*V = D");
    snf
}

fn smallest_in_cross<E: Scalar>(w: &Work<E>, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut val = w.a[t][t].abs();
    for i in t + 1..w.rows {
        let x = w.a[i][t].abs();
        if !x.is_zero() && x < val {
            best = (i, t);
            val = x;
        }
    }
    for j in t + 1..w.cols {
        let x = w.a[t][j].abs();
        if !x.is_zero() && x < val {
            best = (t, j);
            val = x;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let m: Matrix<i64> = vec![vec![2, 4], vec![6, 8]];
        let s = smith_normal_form(&m);
        assert_eq!(s.d, vec![vec![2, 0], vec![0, 4]]);
    }

    #[test]
    fn identity_and_zero() {
        let id: Matrix<i64> = identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.d, id);
        assert_eq!(s.u, id);
        assert_eq!(s.v, id);
        let z: Matrix<i64> = vec![vec![0; 3]; 2];
        assert_eq!(smith_normal_form(&z).d, z);
    }

    #[test]
    fn empty() {
        let m: Matrix<i64> = vec![];
        assert!(smith_normal_form(&m).d.is_empty());
    }
}
