//! Hives on the triangle Δ^r_3 and Littlewood–Richardson coefficients.
//!
//! Vertex (a, b, c): (r,0,0) is the lower-left corner, (0,r,0) the lower-right
//! corner and (0,0,r) the top.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{malformed, Error, Result};
use crate::mconvex::{simplex_points, MConvexSet, Point};
use crate::representations::Representation;
use crate::tracts::{TractId, Unit};

/// Obtuse vertices first: h(obtuse₀) + h(obtuse₁) ≥ h(acute₀) + h(acute₁).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rhombus {
    pub obtuse: [Point; 2],
    pub acute: [Point; 2],
}

fn bump(g: &[i64], x: usize, y: usize) -> Point {
    let mut p = g.to_vec();
    p[x] += 1;
    p[y] += 1;
    p
}

/// For γ ∈ Δ^{r−2}_3 and a direction i with {j, k} the other two:
/// h(γ+εᵢ+εⱼ) + h(γ+εᵢ+ε_k) ≥ h(γ+2εᵢ) + h(γ+εⱼ+ε_k).
pub fn rhombus_inequalities(r: i64) -> Vec<Rhombus> {
    let mut out = Vec::new();
    if r < 2 {
        return out;
    }
    for g in simplex_points(3, r - 2) {
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            out.push(Rhombus {
                obtuse: [bump(&g, i, j), bump(&g, i, k)],
                acute: [bump(&g, i, i), bump(&g, j, k)],
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiveLabeling {
    pub r: i64,
    pub labels: BTreeMap<Point, BigRational>,
}

impl HiveLabeling {
    pub fn new(r: i64, labels: BTreeMap<Point, BigRational>) -> Self {
        Self { r, labels }
    }

    pub fn from_integers(r: i64, labels: impl IntoIterator<Item = (Point, i64)>) -> Self {
        let labels = labels
            .into_iter()
            .map(|(p, v)| (p, BigRational::from_integer(BigInt::from(v))))
            .collect();
        Self { r, labels }
    }

    pub fn vertex_count(&self) -> usize {
        ((self.r + 1) * (self.r + 2) / 2) as usize
    }

    fn get(&self, p: &Point) -> Result<&BigRational> {
        self.labels
            .get(p)
            .ok_or_else(|| Error::MissingLabel(format!("({},{},{})", p[0], p[1], p[2])))
    }

    /// Labels read row by row from the top, each row from left to right.
    pub fn rows(&self) -> Vec<Vec<Option<&BigRational>>> {
        (0..=self.r)
            .map(|t| {
                (0..=t)
                    .rev()
                    .map(|a| self.labels.get(&vec![a, t - a, self.r - t]))
                    .collect()
            })
            .collect()
    }
}

pub fn is_hive(h: &HiveLabeling) -> Result<bool> {
    for p in simplex_points(3, h.r) {
        h.get(&p)?;
    }
    for rh in rhombus_inequalities(h.r) {
        let obtuse = h.get(&rh.obtuse[0])? + h.get(&rh.obtuse[1])?;
        let acute = h.get(&rh.acute[0])? + h.get(&rh.acute[1])?;
        if obtuse < acute {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weakly decreasing nonnegative parts; trailing zeros are dropped.
pub type Partition = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTriple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

fn check_partition(name: &str, p: &[i64]) -> Result<Partition> {
    if p.iter().any(|&x| x < 0) || p.windows(2).any(|w| w[0] < w[1]) {
        return malformed(format!("{name} = {p:?} is not a partition"));
    }
    Ok(p.iter().copied().filter(|&x| x > 0).collect())
}

impl PartitionTriple {
    pub fn new(lambda: &[i64], mu: &[i64], nu: &[i64]) -> Result<Self> {
        let t = Self {
            lambda: check_partition("lambda", lambda)?,
            mu: check_partition("mu", mu)?,
            nu: check_partition("nu", nu)?,
        };
        if t.nu.iter().sum::<i64>() != t.lambda.iter().sum::<i64>() + t.mu.iter().sum::<i64>() {
            return malformed("|nu| must equal |lambda| + |mu|");
        }
        Ok(t)
    }

    pub fn max_parts(&self) -> usize {
        self.lambda.len().max(self.mu.len()).max(self.nu.len())
    }

    pub fn scaled(&self, k: i64) -> Self {
        let s = |p: &Partition| p.iter().map(|x| x * k).collect();
        Self {
            lambda: s(&self.lambda),
            mu: s(&self.mu),
            nu: s(&self.nu),
        }
    }
}

fn partial(p: &[i64], k: i64) -> i64 {
    p.iter().take(k as usize).sum()
}

/// Border labels: ν partial sums on the left edge, λ partial sums on the right edge,
/// |λ| + μ₁ + … + μ_a along the bottom.
pub fn border_labels(t: &PartitionTriple, r: i64) -> Result<HiveLabeling> {
    if r < 1 || t.max_parts() > r as usize {
        return malformed(format!("partitions need at most r = {r} parts"));
    }
    let lam: i64 = t.lambda.iter().sum();
    let mut labels = BTreeMap::new();
    for p in simplex_points(3, r) {
        let (a, b, c) = (p[0], p[1], p[2]);
        let v = if b == 0 {
            partial(&t.nu, a)
        } else if a == 0 {
            partial(&t.lambda, b)
        } else if c == 0 {
            lam + partial(&t.mu, a)
        } else {
            continue;
        };
        labels.insert(p, v);
    }
    Ok(HiveLabeling::from_integers(r, labels))
}

/// Number of integral hives with the border of `t`.
pub fn lr_coefficient(t: &PartitionTriple, r: i64) -> Result<u64> {
    Ok(enumerate_hives(t, r, false)?.0)
}

/// Count integral hives and optionally collect them.
pub fn enumerate_hives(
    t: &PartitionTriple,
    r: i64,
    collect: bool,
) -> Result<(u64, Vec<HiveLabeling>)> {
    let border = border_labels(t, r)?;
    let points = simplex_points(3, r);
    let index: BTreeMap<Point, usize> = points
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, p)| (p, k))
        .collect();
    let mut vals: Vec<Option<i64>> = vec![None; points.len()];
    for (p, v) in &border.labels {
        vals[index[p]] = Some(v.to_integer().to_i64().expect("border labels fit in i64"));
    }
    let rhombi: Vec<([usize; 2], [usize; 2])> = rhombus_inequalities(r)
        .iter()
        .map(|rh| {
            (
                [index[&rh.obtuse[0]], index[&rh.obtuse[1]]],
                [index[&rh.acute[0]], index[&rh.acute[1]]],
            )
        })
        .collect();
    // rhombi living entirely on the border are decided up front
    for (o, a) in &rhombi {
        if let (Some(o0), Some(o1), Some(a0), Some(a1)) =
            (vals[o[0]], vals[o[1]], vals[a[0]], vals[a[1]])
        {
            if o0 + o1 < a0 + a1 {
                return Ok((0, Vec::new()));
            }
        }
    }
    // interior vertices from the top row down, each row from left to right
    let mut order: Vec<usize> = Vec::new();
    for c in (1..r).rev() {
        for a in (1..r - c).rev() {
            order.push(index[&vec![a, r - c - a, c]]);
        }
    }
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for (k, (o, a)) in rhombi.iter().enumerate() {
        for v in o.iter().chain(a) {
            touching[*v].push(k);
        }
    }
    let mut found = Vec::new();
    let mut count = 0;
    let mut dfs = Dfs {
        points: &points,
        rhombi: &rhombi,
        touching: &touching,
        order: &order,
        r,
        collect,
        found: &mut found,
        count: &mut count,
    };
    dfs.run(0, &mut vals);
    Ok((count, found))
}

struct Dfs<'a> {
    points: &'a [Point],
    rhombi: &'a [([usize; 2], [usize; 2])],
    touching: &'a [Vec<usize>],
    order: &'a [usize],
    r: i64,
    collect: bool,
    found: &'a mut Vec<HiveLabeling>,
    count: &'a mut u64,
}

impl Dfs<'_> {
    fn bounds(&self, v: usize, vals: &[Option<i64>]) -> (Option<i64>, Option<i64>) {
        let (mut lo, mut hi): (Option<i64>, Option<i64>) = (None, None);
        for &k in &self.touching[v] {
            let (o, a) = &self.rhombi[k];
            let others: Vec<usize> = o.iter().chain(a).copied().filter(|&x| x != v).collect();
            if others.iter().any(|&x| vals[x].is_none()) {
                continue;
            }
            let val = |x: usize| vals[x].unwrap();
            if o.contains(&v) {
                let other = if o[0] == v { o[1] } else { o[0] };
                let b = val(a[0]) + val(a[1]) - val(other);
                lo = Some(lo.map_or(b, |l| l.max(b)));
            } else {
                let other = if a[0] == v { a[1] } else { a[0] };
                let b = val(o[0]) + val(o[1]) - val(other);
                hi = Some(hi.map_or(b, |h| h.min(b)));
            }
        }
        (lo, hi)
    }

    fn run(&mut self, depth: usize, vals: &mut Vec<Option<i64>>) {
        if depth == self.order.len() {
            *self.count += 1;
            if self.collect {
                let labels = self
                    .points
                    .iter()
                    .cloned()
                    .zip(vals.iter().map(|v| v.unwrap()));
                self.found.push(HiveLabeling::from_integers(self.r, labels));
            }
            return;
        }
        let v = self.order[depth];
        let (lo, hi) = self.bounds(v, vals);
        let (lo, hi) = (
            lo.expect("interior vertex has a lower bound"),
            hi.expect("interior vertex has an upper bound"),
        );
        for x in lo..=hi {
            vals[v] = Some(x);
            // every rhombus is enforced by the bounds of its last vertex in `order`
            self.run(depth + 1, vals);
        }
        vals[v] = None;
    }
}

/// Count LR tableaux of shape ν/λ and content μ whose reverse reading word is a lattice word.
pub fn lr_tableau_oracle(t: &PartitionTriple) -> u64 {
    let (lam, mu, nu) = (&t.lambda, &t.mu, &t.nu);
    if lam.len() > nu.len() || lam.iter().zip(nu).any(|(a, b)| a > b) {
        return 0;
    }
    let lam_at = |row: usize| lam.get(row).copied().unwrap_or(0) as usize;
    // cells in reading order: rows top to bottom, each right to left
    let mut cells = Vec::new();
    for (row, &len) in nu.iter().enumerate() {
        for col in (lam_at(row)..len as usize).rev() {
            cells.push((row, col));
        }
    }
    let width = nu.first().copied().unwrap_or(0) as usize;
    let mut grid = vec![vec![0usize; width]; nu.len()];
    let mut used = vec![0i64; mu.len() + 1];
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        used: &mut Vec<i64>,
        mu: &[i64],
        nu: &[i64],
        lam_at: &dyn Fn(usize) -> usize,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (row, col) = cells[k];
        let mut total = 0;
        for v in 1..=mu.len() {
            if used[v] >= mu[v - 1] || (v > 1 && used[v] + 1 > used[v - 1]) {
                continue;
            }
            if col + 1 < nu[row] as usize && grid[row][col + 1] < v {
                continue;
            }
            if row > 0 && col >= lam_at(row - 1) && grid[row - 1][col] >= v {
                continue;
            }
            grid[row][col] = v;
            used[v] += 1;
            total += go(k + 1, cells, grid, used, mu, nu, lam_at);
            used[v] -= 1;
            grid[row][col] = 0;
        }
        total
    }
    go(0, &cells, &mut grid, &mut used, mu, nu, &lam_at)
}

/// Labels become 𝕋₀ log-values on Δ^r_3 (𝕋₀ᶻ when every label is an integer).
pub fn hive_to_representation(h: &HiveLabeling) -> Result<Representation> {
    let set = MConvexSet::simplex(3, h.r);
    let integral = h.labels.values().all(|v| v.is_integer());
    let tract = if integral { TractId::T0Z } else { TractId::T0 };
    let mut entries = Vec::new();
    for p in set.bases() {
        entries.push((p.clone(), Unit::Log(h.get(p)?.clone())));
    }
    Representation::new(set, tract, entries)
}

pub fn representation_to_hive(rho: &Representation) -> Result<HiveLabeling> {
    if !matches!(rho.tract(), TractId::T0 | TractId::T0Z) {
        return Err(Error::TractMismatch("t0".into(), rho.tract().to_string()));
    }
    let set = rho.set();
    if set.n() != 3 || *set != MConvexSet::simplex(3, set.r()) {
        return Err(Error::SupportMismatch);
    }
    let labels = rho
        .entries()
        .map(|(p, u)| (p.clone(), u.log_value().unwrap().clone()))
        .collect();
    Ok(HiveLabeling::new(set.r(), labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(x: i64) -> HiveLabeling {
        let rows = [vec![0], vec![3, 2], vec![5, x, 3], vec![6, 6, 5, 3]];
        let mut labels = Vec::new();
        for (t, row) in rows.iter().enumerate() {
            let t = t as i64;
            for (pos, &v) in row.iter().enumerate() {
                let a = t - pos as i64;
                labels.push((vec![a, t - a, 3 - t], v));
            }
        }
        HiveLabeling::from_integers(3, labels)
    }

    #[test]
    fn example_window() {
        let ok: Vec<i64> = (0..10).filter(|&x| is_hive(&example(x)).unwrap()).collect();
        assert_eq!(ok, vec![4, 5]);
    }

    #[test]
    fn counts() {
        assert_eq!(rhombus_inequalities(1).len(), 0);
        assert_eq!(rhombus_inequalities(2).len(), 3);
        assert_eq!(rhombus_inequalities(3).len(), 9);
        let t = PartitionTriple::new(&[2, 1], &[2, 1], &[3, 2, 1]).unwrap();
        assert_eq!(lr_coefficient(&t, 3).unwrap(), 2);
        assert_eq!(lr_tableau_oracle(&t), 2);
        let border = border_labels(&t, 3).unwrap();
        let mut expected = example(0);
        expected.labels.remove(&vec![1, 1, 1]);
        assert_eq!(border, expected);
    }
}
