//! M-convex sets (discrete polymatroids) and their operation algebra.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{malformed, Error, Result};

pub type Point = Vec<i64>;

pub fn norm(v: &[i64]) -> i64 {
    v.iter().sum()
}

pub fn unit(n: usize, i: usize) -> Point {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

pub fn add(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn sup(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn inf(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

/// All points of the dilated simplex Δ^r_n in ascending lexicographic order.
pub fn simplex_points(n: usize, r: i64) -> Vec<Point> {
    fn rec(n: usize, left: i64, cur: &mut Point, out: &mut Vec<Point>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(n, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r < 0 {
        return out;
    }
    if n == 0 {
        if r == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(n, r, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Number of lattice points in Δ^r_n, saturating.
pub fn simplex_size(n: usize, r: i64) -> usize {
    if r < 0 {
        return 0;
    }
    if n == 0 {
        return usize::from(r == 0);
    }
    // binom(n - 1 + r, n - 1)
    let k = (n - 1) as u128;
    let top = k + r as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// A failed instance of the exchange axiom: no valid `j` for `alpha`, `beta`, `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub alpha: Point,
    pub beta: Point,
    pub i: usize,
}

fn contains_sorted(set: &[Point], p: &[i64]) -> bool {
    set.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
}

/// Scan the symmetric exchange axiom on a sorted, deduplicated point list.
pub fn exchange_witness(points: &[Point]) -> Option<ExchangeWitness> {
    let n = points.first().map_or(0, |p| p.len());
    for a in points {
        for b in points {
            for i in 0..n {
                if a[i] <= b[i] {
                    continue;
                }
                let ok = (0..n).any(|j| {
                    if a[j] >= b[j] {
                        return false;
                    }
                    let mut a2 = a.clone();
                    a2[i] -= 1;
                    a2[j] += 1;
                    if !contains_sorted(points, &a2) {
                        return false;
                    }
                    let mut b2 = b.clone();
                    b2[i] += 1;
                    b2[j] -= 1;
                    contains_sorted(points, &b2)
                });
                if !ok {
                    return Some(ExchangeWitness {
                        alpha: a.clone(),
                        beta: b.clone(),
                        i,
                    });
                }
            }
        }
    }
    None
}

/// Validate shape (length, sign, common norm) and return the rank with the sorted point list.
pub fn normalize_points(n: usize, r: Option<i64>, points: &[Point]) -> Result<(i64, Vec<Point>)> {
    if points.is_empty() {
        return malformed("point set is empty");
    }
    let rank = r.unwrap_or_else(|| norm(&points[0]));
    for p in points {
        if p.len() != n {
            return malformed(format!("point {p:?} has length {} but n = {n}", p.len()));
        }
        if p.iter().any(|&x| x < 0) {
            return malformed(format!("point {p:?} has a negative entry"));
        }
        if norm(p) != rank {
            return malformed(format!("point {p:?} does not have norm {rank}"));
        }
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    Ok((rank, sorted))
}

pub fn is_m_convex(n: usize, r: i64, points: &[Point]) -> Result<bool> {
    let (_, sorted) = normalize_points(n, Some(r), points)?;
    Ok(exchange_witness(&sorted).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MConvexSet {
    n: usize,
    r: i64,
    bases: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub delta_minus: Point,
    pub delta_plus: Point,
    pub delta: Point,
    pub width: Point,
    pub effective_rank: i64,
    pub reduction: MConvexSet,
}

/// `set` together with its embedding `alpha -> alpha + shift` into the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedMinor {
    pub set: MConvexSet,
    pub shift: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutedMinors {
    pub nu: Point,
    pub mu: Point,
    pub tau: Point,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<Vec<usize>>,
    pub components: Vec<MConvexSet>,
}

impl Decomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

impl MConvexSet {
    pub fn new(n: usize, points: Vec<Point>) -> Result<Self> {
        let (r, bases) = normalize_points(n, None, &points)?;
        if exchange_witness(&bases).is_some() {
            return Err(Error::NotMConvex);
        }
        Ok(Self { n, r, bases })
    }

    pub fn with_rank(n: usize, r: i64, points: Vec<Point>) -> Result<Self> {
        let (r, bases) = normalize_points(n, Some(r), &points)?;
        if exchange_witness(&bases).is_some() {
            return Err(Error::NotMConvex);
        }
        Ok(Self { n, r, bases })
    }

    /// Caller guarantees the points form a nonempty M-convex set of common norm `r`.
    pub(crate) fn from_points_unchecked(n: usize, r: i64, mut bases: Vec<Point>) -> Self {
        bases.sort();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        debug_assert!(bases.iter().all(|b| b.len() == n && norm(b) == r));
        Self { n, r, bases }
    }

    /// The full simplex Δ^r_n.
    pub fn simplex(n: usize, r: i64) -> Self {
        Self {
            n,
            r,
            bases: simplex_points(n, r),
        }
    }

    /// The uniform matroid U_{r,n}.
    pub fn uniform(r: usize, n: usize) -> Self {
        let bases = (0..n)
            .combinations(r)
            .map(|c| {
                let mut p = vec![0; n];
                for i in c {
                    p[i] = 1;
                }
                p
            })
            .collect();
        Self::from_points_unchecked(n, r as i64, bases)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn bases(&self) -> &[Point] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.n && contains_sorted(&self.bases, p)
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.bases.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }

    pub fn delta_minus(&self) -> Point {
        (0..self.n)
            .map(|i| self.bases.iter().map(|b| b[i]).min().unwrap())
            .collect()
    }

    pub fn delta_plus(&self) -> Point {
        (0..self.n)
            .map(|i| self.bases.iter().map(|b| b[i]).max().unwrap())
            .collect()
    }

    pub fn delta(&self) -> Point {
        add(&self.delta_minus(), &self.delta_plus())
    }

    pub fn width(&self) -> Point {
        sub(&self.delta_plus(), &self.delta_minus())
    }

    pub fn effective_rank(&self) -> i64 {
        self.r - norm(&self.delta_minus())
    }

    pub fn reduction(&self) -> MConvexSet {
        let dm = self.delta_minus();
        let bases = self.bases.iter().map(|b| sub(b, &dm)).collect();
        Self {
            n: self.n,
            r: self.r - norm(&dm),
            bases,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.delta_minus().iter().all(|&x| x == 0)
    }

    pub fn invariants(&self) -> Invariants {
        let delta_minus = self.delta_minus();
        let delta_plus = self.delta_plus();
        Invariants {
            delta: add(&delta_minus, &delta_plus),
            width: sub(&delta_plus, &delta_minus),
            effective_rank: self.effective_rank(),
            reduction: self.reduction(),
            delta_minus,
            delta_plus,
        }
    }

    pub fn translate(&self, tau: &[i64]) -> Result<MConvexSet> {
        if tau.len() != self.n {
            return malformed(format!(
                "translation vector has length {} but n = {}",
                tau.len(),
                self.n
            ));
        }
        let bases: Vec<Point> = self.bases.iter().map(|b| add(b, tau)).collect();
        if bases.iter().any(|b| b.iter().any(|&x| x < 0)) {
            return Err(Error::OutOfOrthant);
        }
        Ok(Self {
            n: self.n,
            r: self.r + norm(tau),
            bases,
        })
    }

    pub fn dual(&self) -> MConvexSet {
        let d = self.delta();
        let bases = self.bases.iter().map(|b| sub(&d, b)).collect();
        Self::from_points_unchecked(self.n, norm(&d) - self.r, bases)
    }

    fn check_vector(&self, v: &[i64], what: &str) -> Result<()> {
        if v.len() != self.n {
            return malformed(format!("{what} has length {} but n = {}", v.len(), self.n));
        }
        if v.iter().any(|&x| x < 0) {
            return malformed(format!("{what} has a negative entry"));
        }
        Ok(())
    }

    /// J/μ = {α − μ | α ∈ J, μ + δ⁻ ≤ α}.
    pub fn contract(&self, mu: &[i64]) -> Result<MConvexSet> {
        self.check_vector(mu, "contraction vector")?;
        let lower = add(mu, &self.delta_minus());
        let bases: Vec<Point> = self
            .bases
            .iter()
            .filter(|b| leq(&lower, b))
            .map(|b| sub(b, mu))
            .collect();
        if bases.is_empty() {
            return Err(Error::NotIndependent(format!("{mu:?}")));
        }
        Ok(Self {
            n: self.n,
            r: self.r - norm(mu),
            bases,
        })
    }

    /// J∖ν = {α ∈ J | α ≤ δ⁺ − ν}.
    pub fn delete(&self, nu: &[i64]) -> Result<MConvexSet> {
        self.check_vector(nu, "deletion vector")?;
        let upper = sub(&self.delta_plus(), nu);
        let bases: Vec<Point> = self
            .bases
            .iter()
            .filter(|b| leq(b, &upper))
            .cloned()
            .collect();
        if bases.is_empty() {
            return Err(Error::NotCoindependent(format!("{nu:?}")));
        }
        Ok(Self {
            n: self.n,
            r: self.r,
            bases,
        })
    }

    /// (J∖ν)/μ + τ with the embedding α ↦ α + μ − τ.
    pub fn embedded_minor(&self, nu: &[i64], mu: &[i64], tau: &[i64]) -> Result<EmbeddedMinor> {
        let set = self.delete(nu)?.contract(mu)?.translate(tau)?;
        Ok(EmbeddedMinor {
            set,
            shift: sub(mu, tau),
        })
    }

    /// Intersection with the cube {β ≤ α ≤ γ}, realized as an embedded minor.
    pub fn truncate(&self, lo: &[i64], hi: &[i64]) -> Result<EmbeddedMinor> {
        let zero = vec![0; self.n];
        let nu = sup(&zero, &sub(&self.delta_plus(), hi));
        let deleted = self.delete(&nu)?;
        let mu = sup(&zero, &sub(lo, &deleted.delta_minus()));
        self.embedded_minor(&nu, &mu, &mu)
    }

    /// Exchange the order of deletion and contraction: (J∖ν)/μ′ = (J/μ)∖ν′ + τ′.
    pub fn commute_minors(&self, nu: &[i64], mu: &[i64]) -> Result<CommutedMinors> {
        self.check_vector(nu, "deletion vector")?;
        self.check_vector(mu, "contraction vector")?;
        let lo = add(&self.delta_minus(), mu);
        let hi = sub(&self.delta_plus(), nu);
        if !self.bases.iter().any(|b| leq(&lo, b) && leq(b, &hi)) {
            return Err(Error::Precondition(
                "no basis between delta_minus + mu and delta_plus - nu".into(),
            ));
        }
        let zero = vec![0; self.n];
        let contracted = self.contract(mu)?;
        let deleted = self.delete(nu)?;
        let nu2 = sup(
            &zero,
            &add(
                &sub(nu, &self.delta_plus()),
                &add(&contracted.delta_plus(), mu),
            ),
        );
        let mu2 = sup(
            &zero,
            &add(&sub(&self.delta_minus(), &deleted.delta_minus()), mu),
        );
        let tau = sub(mu, &mu2);
        let lhs = deleted.contract(&mu2)?;
        let rhs = contracted.delete(&nu2)?.translate(&tau)?;
        Ok(CommutedMinors {
            nu: nu2,
            mu: mu2,
            tau,
            holds: lhs == rhs,
        })
    }

    /// Returns δ_{J∖ν} + ν − δ_J and whether (J∖ν)* = J*/ν + shift.
    pub fn deletion_duality_shift(&self, nu: &[i64]) -> Result<(Point, bool)> {
        let deleted = self.delete(nu)?;
        let shift = sub(&add(&deleted.delta(), nu), &self.delta());
        let rhs = self.dual().contract(nu).and_then(|c| c.translate(&shift));
        Ok((shift, rhs.map(|s| s == deleted.dual()).unwrap_or(false)))
    }

    /// Returns δ_{J/μ} + μ − δ_J and whether (J/μ)* = J*∖μ + shift.
    pub fn contraction_duality_shift(&self, mu: &[i64]) -> Result<(Point, bool)> {
        let contracted = self.contract(mu)?;
        let shift = sub(&add(&contracted.delta(), mu), &self.delta());
        let rhs = self.dual().delete(mu).and_then(|c| c.translate(&shift));
        Ok((shift, rhs.map(|s| s == contracted.dual()).unwrap_or(false)))
    }

    /// ι_σ: coordinate `i` moves to position `sigma[i]`.
    pub fn permute(&self, sigma: &[usize]) -> Result<MConvexSet> {
        let mut seen = vec![false; self.n];
        if sigma.len() != self.n
            || sigma
                .iter()
                .any(|&s| s >= self.n || std::mem::replace(&mut seen[s], true))
        {
            return malformed(format!("{sigma:?} is not a permutation of 0..{}", self.n));
        }
        let bases = self
            .bases
            .iter()
            .map(|b| {
                let mut p = vec![0; self.n];
                for (i, &s) in sigma.iter().enumerate() {
                    p[s] = b[i];
                }
                p
            })
            .collect();
        Ok(Self::from_points_unchecked(self.n, self.r, bases))
    }

    pub fn extend(&self) -> MConvexSet {
        let bases = self
            .bases
            .iter()
            .map(|b| {
                let mut p = b.clone();
                p.push(0);
                p
            })
            .collect();
        Self {
            n: self.n + 1,
            r: self.r,
            bases,
        }
    }

    pub fn restrict(&self) -> Result<MConvexSet> {
        if self.n == 0 {
            return Err(Error::NotRestrictable);
        }
        self.drop_coordinate(self.n - 1)
    }

    /// Remove coordinate `i`, which must vanish on every basis.
    pub fn drop_coordinate(&self, i: usize) -> Result<MConvexSet> {
        if i >= self.n || self.bases.iter().any(|b| b[i] != 0) {
            return Err(Error::NotRestrictable);
        }
        let bases = self
            .bases
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        Ok(Self {
            n: self.n - 1,
            r: self.r,
            bases,
        })
    }

    pub fn is_matroid_translate(&self) -> bool {
        self.width().iter().all(|&w| w <= 1)
    }

    pub fn is_proper(&self) -> bool {
        !self.is_matroid_translate()
    }

    pub fn canonical_form(&self) -> MConvexSet {
        let red = self.reduction();
        let width = red.width();
        let keep: Vec<usize> = (0..red.n).filter(|&i| width[i] > 0).collect();
        let bases: Vec<Point> = red
            .bases
            .iter()
            .map(|b| keep.iter().map(|&i| b[i]).collect())
            .collect();
        let m = keep.len();
        let core = Self::from_points_unchecked(m, red.r, bases);
        if m <= 1 {
            return core;
        }
        // coordinates are ordered by an invariant key; only orders within equal keys are searched
        let keys: Vec<(i64, Vec<i64>)> = (0..m)
            .map(|i| {
                let mut col: Vec<i64> = core.bases.iter().map(|b| b[i]).collect();
                col.sort();
                (width[keep[i]], col)
            })
            .collect();
        let mut coords: Vec<usize> = (0..m).collect();
        coords.sort_by(|a, b| keys[*a].cmp(&keys[*b]));
        let groups: Vec<Vec<usize>> = coords
            .iter()
            .chunk_by(|&&i| keys[i].clone())
            .into_iter()
            .map(|(_, g)| g.copied().collect())
            .collect();
        let mut best: Option<Vec<Point>> = None;
        let per_group: Vec<Vec<Vec<usize>>> = groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect())
            .collect();
        for choice in per_group.iter().map(|v| v.iter()).multi_cartesian_product() {
            // order[k] = original coordinate placed at position k
            let order: Vec<usize> = choice.into_iter().flatten().copied().collect();
            let mut cand: Vec<Point> = core
                .bases
                .iter()
                .map(|b| order.iter().map(|&i| b[i]).collect())
                .collect();
            cand.sort();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        Self {
            n: m,
            r: core.r,
            bases: best.unwrap(),
        }
    }

    pub fn combinatorially_equivalent(&self, other: &MConvexSet) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn direct_sum(&self, other: &MConvexSet) -> MConvexSet {
        let bases = self
            .bases
            .iter()
            .cartesian_product(other.bases.iter())
            .map(|(a, b)| a.iter().chain(b.iter()).copied().collect())
            .collect();
        Self::from_points_unchecked(self.n + other.n, self.r + other.r, bases)
    }

    /// Connected components of the exchange graph on [n]: `i ~ j` when α and α+εᵢ−εⱼ are both bases.
    pub fn decompose(&self) -> Decomposition {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for b in &self.bases {
            for i in 0..n {
                for j in 0..n {
                    if i == j || b[j] == 0 {
                        continue;
                    }
                    let mut c = b.clone();
                    c[i] += 1;
                    c[j] -= 1;
                    if self.contains(&c) {
                        let (a, z) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = z;
                    }
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_block: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let root = find(&mut parent, i);
            match root_block[root] {
                Some(k) => blocks[k].push(i),
                None => {
                    root_block[root] = Some(blocks.len());
                    blocks.push(vec![i]);
                }
            }
        }
        let components = blocks.iter().map(|blk| self.project(blk)).collect();
        Decomposition { blocks, components }
    }

    fn project(&self, coords: &[usize]) -> MConvexSet {
        let bases: BTreeSet<Point> = self
            .bases
            .iter()
            .map(|b| coords.iter().map(|&i| b[i]).collect())
            .collect();
        let bases: Vec<Point> = bases.into_iter().collect();
        let r = norm(&bases[0]);
        Self {
            n: coords.len(),
            r,
            bases,
        }
    }

    pub fn component_count(&self) -> usize {
        self.decompose().count()
    }

    pub fn rank_function(&self) -> RankFunction {
        assert!(self.n < 31, "rank functions are tabulated for n < 31");
        let values = (0u32..(1u32 << self.n))
            .map(|mask| {
                self.bases
                    .iter()
                    .map(|b| {
                        (0..self.n)
                            .filter(|&i| mask >> i & 1 == 1)
                            .map(|i| b[i])
                            .sum::<i64>()
                    })
                    .max()
                    .unwrap()
            })
            .collect();
        RankFunction { n: self.n, values }
    }

    /// Compare single-element minors of the rank function with the embedded minors
    /// J∖μ − τ and J/μ − τ for μ = ωᵢεᵢ, τ = δ⁻ᵢεᵢ.
    pub fn whittle_check(&self, i: usize) -> Result<bool> {
        if i >= self.n {
            return malformed(format!("element {i} outside 0..{}", self.n));
        }
        let rf = self.rank_function();
        let mut mu = vec![0; self.n];
        mu[i] = self.width()[i];
        let mut tau = vec![0; self.n];
        tau[i] = -self.delta_minus()[i];
        let del = self.delete(&mu)?.translate(&tau)?.drop_coordinate(i)?;
        let con = self.contract(&mu)?.translate(&tau)?.drop_coordinate(i)?;
        Ok(del.rank_function() == rf.whittle_delete(i)
            && con.rank_function() == rf.whittle_contract(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunction {
    pub n: usize,
    /// indexed by subset bitmask
    pub values: Vec<i64>,
}

impl RankFunction {
    pub fn get(&self, subset: &[usize]) -> i64 {
        let mask = subset.iter().fold(0usize, |m, &i| m | (1 << i));
        self.values[mask]
    }

    pub fn is_normalized(&self) -> bool {
        self.values[0] == 0
    }

    pub fn is_monotone(&self) -> bool {
        (0..self.values.len())
            .all(|m| (0..self.n).all(|i| self.values[m] <= self.values[m | (1 << i)]))
    }

    pub fn is_submodular(&self) -> bool {
        let len = self.values.len();
        (0..len).all(|a| {
            (0..len)
                .all(|b| self.values[a | b] + self.values[a & b] <= self.values[a] + self.values[b])
        })
    }

    fn squeeze(&self, i: usize, f: impl Fn(usize) -> i64) -> RankFunction {
        let n = self.n - 1;
        let values = (0..(1usize << n))
            .map(|m| {
                let low = m & ((1 << i) - 1);
                let high = (m >> i) << (i + 1);
                f(low | high)
            })
            .collect();
        RankFunction { n, values }
    }

    /// r∖i(S) = r(S) on the remaining elements.
    pub fn whittle_delete(&self, i: usize) -> RankFunction {
        self.squeeze(i, |m| self.values[m])
    }

    /// r/i(S) = r(S ∪ i) − r(i).
    pub fn whittle_contract(&self, i: usize) -> RankFunction {
        let ri = self.values[1 << i];
        self.squeeze(i, |m| self.values[m | (1 << i)] - ri)
    }
}

pub const DEFAULT_GUARD: usize = 22;

/// All nonempty M-convex subsets of Δ^r_n, in order of the subset bitmask over the
/// lexicographically sorted simplex points.
pub fn enumerate_mconvex(n: usize, r: i64, guard: usize) -> Result<Vec<MConvexSet>> {
    let size = simplex_size(n, r);
    if size > guard || size >= 63 {
        return Err(Error::Guard { size, guard });
    }
    let pts = simplex_points(n, r);
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << size) {
        let sub: Vec<Point> = (0..size)
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| pts[k].clone())
            .collect();
        if exchange_witness(&sub).is_none() {
            out.push(MConvexSet { n, r, bases: sub });
        }
    }
    Ok(out)
}

/// Named sets used throughout examples and tests.
pub mod named {
    use super::*;

    pub fn u23_plus() -> MConvexSet {
        MConvexSet::from_points_unchecked(
            3,
            2,
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]],
        )
    }

    pub fn fano() -> MConvexSet {
        let lines: [[usize; 3]; 7] = [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ];
        let bases = (0..7)
            .combinations(3)
            .filter(|c| !lines.iter().any(|l| l[..] == c[..]))
            .map(|c| {
                let mut p = vec![0; 7];
                for i in c {
                    p[i] = 1;
                }
                p
            })
            .collect();
        MConvexSet::from_points_unchecked(7, 3, bases)
    }
}
