//! Exact Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b.iter()).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

fn row_axpy(m: &mut Matrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (a, b) = m.split_at_mut(src);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = m.split_at_mut(target);
        (&mut b[0], &a[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

fn col_axpy(m: &mut Matrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let v = &row[src] * q;
        row[target] -= v;
    }
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_row(m: &mut Matrix, r: usize) {
    for x in m[r].iter_mut() {
        *x = -&*x;
    }
}

#[derive(Clone, Debug)]
pub struct Hermite {
    /// Row echelon form with positive pivots and reduced entries above each pivot.
    pub h: Matrix,
    /// Unimodular with `u * input = h`.
    pub u: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(input: &Matrix) -> Hermite {
    let m = input.len();
    let n = input.first().map_or(0, |r| r.len());
    let mut a = input.clone();
    let mut u = identity(m);
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        if row == m {
            break;
        }
        loop {
            let best = (row..m)
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(p) = best else { break };
            a.swap(row, p);
            u.swap(row, p);
            let mut clean = true;
            for r in row + 1..m {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].div_floor(&a[row][col]);
                row_axpy(&mut a, r, row, &q);
                row_axpy(&mut u, r, row, &q);
                if !a[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[row][col].is_zero() {
            continue;
        }
        if a[row][col].is_negative() {
            negate_row(&mut a, row);
            negate_row(&mut u, row);
        }
        for r in 0..row {
            let q = a[r][col].div_floor(&a[row][col]);
            row_axpy(&mut a, r, row, &q);
            row_axpy(&mut u, r, row, &q);
        }
        pivots.push(col);
        row += 1;
    }
    Hermite {
        h: a,
        u,
        rank: row,
        pivots,
    }
}

pub fn rank(m: &Matrix) -> usize {
    hermite_normal_form(m).rank
}

#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero diagonal entries d₁ | d₂ | … of `u * input * v`.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: Matrix,
    pub v: Matrix,
    pub d: Matrix,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(input: &Matrix) -> Smith {
    let m = input.len();
    let n = input.first().map_or(0, |r| r.len());
    let mut a = input.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let best = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut done = true;
            for i in t + 1..m {
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if !done {
                // move the smallest remainder in row/column t onto the pivot
                let col_best = (t + 1..m)
                    .filter(|&i| !a[i][t].is_zero())
                    .min_by(|&x, &y| a[x][t].abs().cmp(&a[y][t].abs()));
                let row_best = (t + 1..n)
                    .filter(|&j| !a[t][j].is_zero())
                    .min_by(|&x, &y| a[t][x].abs().cmp(&a[t][y].abs()));
                match (col_best, row_best) {
                    (Some(i), Some(j)) if a[t][j].abs() < a[i][t].abs() => {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                    }
                    (Some(i), _) => {
                        a.swap(t, i);
                        u.swap(t, i);
                    }
                    (None, Some(j)) => {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                    }
                    (None, None) => {}
                }
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match bad {
                Some((i, _)) => {
                    let one = -BigInt::one();
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    Smith {
        rank: diagonal.len(),
        diagonal,
        u,
        v,
        d: a,
    }
}

/// Basis (as rows) of the integer left kernel {x : x·g = 0}.
pub fn left_kernel(g: &Matrix, rows: usize) -> Matrix {
    if g.is_empty() || g[0].is_empty() {
        return identity(rows);
    }
    let hnf = hermite_normal_form(g);
    hnf.u[hnf.rank..].to_vec()
}

/// Echelon basis of the row lattice.
pub fn lattice_basis(rows: &Matrix) -> Matrix {
    let hnf = hermite_normal_form(rows);
    hnf.h[..hnf.rank].to_vec()
}

/// Reduce `v` against an echelon basis (as returned by `lattice_basis`); zero iff `v` is in the lattice.
pub fn reduce(basis: &Matrix, v: &[BigInt]) -> Vec<BigInt> {
    let mut w = v.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if w[p].is_zero() {
            continue;
        }
        let (q, _) = w[p].div_rem(&row[p]);
        if q.is_zero() {
            continue;
        }
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    w
}

pub fn lattice_contains(basis: &Matrix, v: &[BigInt]) -> bool {
    reduce(basis, v).iter().all(|x| x.is_zero())
}

/// Coordinates of `v` with respect to the rows of `basis` (independent rows), if `v` lies in their span over ℤ.
pub fn coordinates(basis: &Matrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = basis.len();
    let hnf = hermite_normal_form(basis);
    // v = c'·H with H = U·basis, so v = (c'·U)·basis
    let mut w = v.to_vec();
    let mut c = vec![BigInt::zero(); k];
    for (r, &p) in hnf.pivots.iter().enumerate() {
        let (q, rem) = w[p].div_rem(&hnf.h[r][p]);
        if !rem.is_zero() {
            return None;
        }
        for (x, y) in w.iter_mut().zip(&hnf.h[r]) {
            *x -= &q * y;
        }
        c[r] = q;
    }
    if w.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let coords = (0..k)
        .map(|j| (0..k).map(|r| &c[r] * &hnf.u[r][j]).sum())
        .collect();
    Some(coords)
}

/// Incrementally maintained echelon basis of a sublattice of ℤ^n.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: std::collections::BTreeMap<usize, Vec<BigInt>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rows<'a>(rows: impl IntoIterator<Item = &'a Vec<BigInt>>) -> Self {
        let mut e = Self::new();
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Matrix {
        self.rows.values().cloned().collect()
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        loop {
            let Some(p) = v.iter().position(|x| !x.is_zero()) else {
                return;
            };
            let Some(row) = self.rows.get(&p) else {
                if v[p].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(p, v);
                return;
            };
            let (a, b) = (row[p].clone(), v[p].clone());
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &q * y;
                }
                continue;
            }
            let e = a.extended_gcd(&b);
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            let combined: Vec<BigInt> = row
                .iter()
                .zip(&v)
                .map(|(x, y)| &e.x * x + &e.y * y)
                .collect();
            let rest: Vec<BigInt> = row.iter().zip(&v).map(|(x, y)| &ag * y - &bg * x).collect();
            let mut combined = combined;
            if combined[p].is_negative() {
                combined.iter_mut().for_each(|x| *x = -&*x);
            }
            self.rows.insert(p, combined);
            v = rest;
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        for (&p, row) in &self.rows {
            if w[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            if w[p].is_zero() {
                continue;
            }
            if !w[p].is_multiple_of(&row[p]) {
                return false;
            }
            let q = &w[p] / &row[p];
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        w.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn tiny_cases() {
        let s = smith_normal_form(&m(&[&[2]]));
        assert_eq!(s.rank, 1);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2)]);
        let s = smith_normal_form(&m(&[&[1, 0], &[0, 0]]));
        assert_eq!(s.rank, 1);
        assert_eq!(2 - s.rank, 1);
    }

    #[test]
    fn smith_transform_identity() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(mat_mul(&mat_mul(&s.u, &a), &s.v), s.d);
        assert_eq!(
            s.diagonal,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn hermite_transform_identity() {
        let a = m(&[&[3, 3, 1], &[0, 2, 4], &[6, 8, 6]]);
        let h = hermite_normal_form(&a);
        assert_eq!(mat_mul(&h.u, &a), h.h);
        assert_eq!(h.rank, 2);
    }

    #[test]
    fn kernel_and_coordinates() {
        let g = m(&[&[1, 0], &[1, 1], &[1, 2]]);
        let k = left_kernel(&g, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_mul(&k, &g).iter().flatten().all(|x| x.is_zero()));
        let v: Vec<BigInt> = k[0].iter().map(|x| x * 3).collect();
        assert_eq!(coordinates(&k, &v), Some(vec![BigInt::from(3)]));
        let basis = lattice_basis(&m(&[&[2, 0], &[0, 3]]));
        assert!(lattice_contains(
            &basis,
            &[BigInt::from(4), BigInt::from(-3)]
        ));
        assert!(!lattice_contains(
            &basis,
            &[BigInt::from(1), BigInt::from(0)]
        ));
        let e = Echelon::from_rows(&m(&[&[4, 6], &[6, 9], &[0, 3]]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[BigInt::from(2), BigInt::from(0)]));
        assert!(!e.contains(&[BigInt::from(1), BigInt::from(0)]));
    }
}
