//! Plücker relations of M-convex sets, indexed on the reduced set.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::Result;
use crate::mconvex::{add, leq, norm, normalize_points, simplex_points, sub, MConvexSet, Point};
use crate::tracts::{TractId, Unit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Full,
    ThreeTerm,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerIndex {
    pub s: usize,
    pub alpha: Point,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

/// The k-th term is `±x[beta]·x[gamma]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub k: usize,
    pub beta: Point,
    pub gamma: Point,
    pub negative: bool,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub index: PluckerIndex,
    pub terms: Vec<Term>,
}

impl Relation {
    pub fn nonzero_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| t.nonzero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.nonzero_terms().count()
    }

    /// `s | alpha | i-list | j-list | terms`
    pub fn dump(&self) -> String {
        let fmt_pt = |p: &Point| p.iter().join(",");
        let one_based = |v: &[usize]| v.iter().map(|x| x + 1).join(",");
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.nonzero {
                    format!(
                        "{}x[{}]·x[{}]",
                        if t.negative { "-" } else { "+" },
                        fmt_pt(&t.beta),
                        fmt_pt(&t.gamma)
                    )
                } else {
                    "0".to_string()
                }
            })
            .join(" ");
        format!(
            "{} | {} | {} | {} | {}",
            self.index.s,
            fmt_pt(&self.index.alpha),
            one_based(&self.index.i),
            one_based(&self.index.j),
            terms
        )
    }

    /// Term multiset with the global sign normalized away.
    fn key(&self) -> Vec<(Point, Point, bool, bool)> {
        let build = |flip: bool| {
            let mut v: Vec<(Point, Point, bool, bool)> = self
                .terms
                .iter()
                .map(|t| {
                    let (a, b) = if t.beta <= t.gamma {
                        (t.beta.clone(), t.gamma.clone())
                    } else {
                        (t.gamma.clone(), t.beta.clone())
                    };
                    (a, b, t.nonzero, t.nonzero && (t.negative ^ flip))
                })
                .collect();
            v.sort();
            v
        };
        build(false).min(build(true))
    }
}

fn sign_negative(k: usize, ik: usize, j: &[usize]) -> bool {
    (k + j.iter().filter(|&&x| x < ik).count()) % 2 == 1
}

/// Instantiate one index against a support predicate.
pub fn relation_terms(
    alpha: &[i64],
    i: &[usize],
    j: &[usize],
    contains: &dyn Fn(&[i64]) -> bool,
) -> Vec<Term> {
    let mut base_i = alpha.to_vec();
    for &x in i {
        base_i[x] += 1;
    }
    let mut base_j = alpha.to_vec();
    for &x in j {
        base_j[x] += 1;
    }
    i.iter()
        .enumerate()
        .map(|(k, &ik)| {
            let mut beta = base_i.clone();
            beta[ik] -= 1;
            let mut gamma = base_j.clone();
            gamma[ik] += 1;
            let nonzero = contains(&beta) && contains(&gamma);
            Term {
                k,
                beta,
                gamma,
                negative: sign_negative(k, ik, j),
                nonzero,
            }
        })
        .collect()
}

/// Relations on points of norm `rank` in n coordinates, with optional upper bound
/// on α + Σεᵢ + Σεⱼ. Relations without nonzero terms are skipped; duplicate term
/// multisets (up to global sign) are emitted once, at their first index in
/// lexicographic (s, α, i, j) order.
pub fn relations_on(
    n: usize,
    rank: i64,
    bound: Option<&[i64]>,
    kind: Kind,
    contains: &dyn Fn(&[i64]) -> bool,
) -> Vec<Relation> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    if n == 0 {
        return out;
    }
    let max_s = if kind == Kind::ThreeTerm {
        2.min(rank.max(0) as usize)
    } else {
        rank.max(0) as usize
    };
    for s in 2..=max_s {
        for alpha in simplex_points(n, rank - s as i64) {
            let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
            if kind == Kind::ThreeTerm {
                for m in (0..n).combinations_with_replacement(4) {
                    candidates.push((m[..3].to_vec(), m[3..].to_vec()));
                }
            } else {
                for i in (0..n).combinations_with_replacement(s + 1) {
                    for j in (0..n).combinations_with_replacement(s - 1) {
                        candidates.push((i.clone(), j));
                    }
                }
            }
            for (i, j) in candidates {
                if let Some(b) = bound {
                    let mut top = alpha.clone();
                    for &x in i.iter().chain(&j) {
                        top[x] += 1;
                    }
                    if !leq(&top, b) {
                        continue;
                    }
                }
                let terms = relation_terms(&alpha, &i, &j, contains);
                if terms.iter().all(|t| !t.nonzero) {
                    continue;
                }
                let rel = Relation {
                    index: PluckerIndex {
                        s,
                        alpha: alpha.clone(),
                        i,
                        j,
                    },
                    terms,
                };
                if seen.insert(rel.key()) {
                    out.push(rel);
                }
            }
        }
    }
    out
}

/// Bounded relations of J, indexed on the reduction J̄ with bound ω_J.
pub fn enumerate_relations(j: &MConvexSet, kind: Kind) -> Vec<Relation> {
    let red = j.reduction();
    let width = j.width();
    relations_on(red.n(), red.r(), Some(&width), kind, &|p| red.contains(p))
}

/// Unbounded relations on all of Δ^r_n for the zero-extension of J.
pub fn enumerate_unbounded(j: &MConvexSet, kind: Kind) -> Vec<Relation> {
    relations_on(j.n(), j.r(), None, kind, &|p| j.contains(p))
}

/// Bounded relations for an arbitrary point set (reduced by its infimum).
pub fn relations_for_points(n: usize, points: &[Point], kind: Kind) -> Result<Vec<Relation>> {
    let (r, sorted) = normalize_points(n, None, points)?;
    let lo: Point = (0..n)
        .map(|i| sorted.iter().map(|p| p[i]).min().unwrap())
        .collect();
    let hi: Point = (0..n)
        .map(|i| sorted.iter().map(|p| p[i]).max().unwrap())
        .collect();
    let reduced: Vec<Point> = sorted.iter().map(|p| sub(p, &lo)).collect();
    let width = sub(&hi, &lo);
    let contains = |p: &[i64]| reduced.binary_search_by(|q| q.as_slice().cmp(p)).is_ok();
    Ok(relations_on(
        n,
        r - norm(&lo),
        Some(&width),
        kind,
        &contains,
    ))
}

/// 𝕂-Plücker criterion: the characteristic function of the point set satisfies every
/// bounded full relation (no relation has exactly one nonzero term).
pub fn krasner_criterion(n: usize, points: &[Point]) -> Result<bool> {
    Ok(relations_for_points(n, points, Kind::Full)?
        .iter()
        .all(|r| r.nonzero_count() != 1))
}

/// A relation with exactly two nonzero terms, read as x_β x_γ = ±x_β′ x_γ′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateRelation {
    pub index: PluckerIndex,
    pub lhs: (Point, Point),
    pub rhs: (Point, Point),
    /// `true` when the surviving terms carry the same sign, so x_β x_γ = −x_β′ x_γ′.
    pub sign_bit: bool,
}

fn degenerate_from(j: &MConvexSet, rels: Vec<Relation>) -> Vec<DegenerateRelation> {
    let proper = j.is_proper();
    rels.into_iter()
        .filter(|r| r.nonzero_count() == 2)
        .map(|r| {
            let t: Vec<&Term> = r.nonzero_terms().collect();
            DegenerateRelation {
                lhs: (t[0].beta.clone(), t[0].gamma.clone()),
                rhs: (t[1].beta.clone(), t[1].gamma.clone()),
                sign_bit: !proper && t[0].negative == t[1].negative,
                index: r.index,
            }
        })
        .collect()
}

pub fn degenerate_relations(j: &MConvexSet) -> Vec<DegenerateRelation> {
    degenerate_from(j, enumerate_relations(j, Kind::ThreeTerm))
}

pub fn degenerate_full_relations(j: &MConvexSet) -> Vec<DegenerateRelation> {
    degenerate_from(j, enumerate_relations(j, Kind::Full))
}

/// Symbolic 𝕋₀ constraint of one relation: the maximum of the listed log-sums is attained twice.
/// Each term is the pair of points whose log-values are added.
pub fn tropical_constraint(rel: &Relation) -> Vec<(Point, Point)> {
    rel.nonzero_terms()
        .map(|t| (t.beta.clone(), t.gamma.clone()))
        .collect()
}

/// A linear condition on log-values v = log ρ implied by one relation over 𝕋₀.
/// Each side is a monomial: a multiset of points of J, sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogConstraint {
    Equal(Vec<Point>, Vec<Point>),
    AtLeast(Vec<Point>, Vec<Point>),
    /// The maximum over the listed monomials (with multiplicity) is attained at least twice.
    MaxTwice(Vec<Vec<Point>>),
}

fn fmt_monomial(m: &[Point]) -> String {
    let v = |p: &Point| format!("v({})", p.iter().join(","));
    let mut out = Vec::new();
    for (p, group) in &m.iter().chunk_by(|p| *p) {
        match group.count() {
            1 => out.push(v(p)),
            c => out.push(format!("{c}{}", v(p))),
        }
    }
    out.join("+")
}

impl std::fmt::Display for LogConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogConstraint::Equal(a, b) => write!(f, "{} = {}", fmt_monomial(a), fmt_monomial(b)),
            LogConstraint::AtLeast(a, b) => write!(f, "{} ≥ {}", fmt_monomial(a), fmt_monomial(b)),
            LogConstraint::MaxTwice(ms) => {
                write!(
                    f,
                    "max{{{}}} attained twice",
                    ms.iter().map(|m| fmt_monomial(m)).join(", ")
                )
            }
        }
    }
}

/// Log-constraints of the full relations of `j`, in terms of the points of J.
/// Relations that hold for every assignment are dropped.
pub fn log_constraints(j: &MConvexSet) -> Vec<LogConstraint> {
    let dm = j.delta_minus();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rel in enumerate_relations(j, Kind::Full) {
        let mut terms: Vec<Vec<Point>> = rel
            .nonzero_terms()
            .map(|t| {
                let mut m = vec![add(&t.beta, &dm), add(&t.gamma, &dm)];
                m.sort_by(|a, b| b.cmp(a));
                m
            })
            .collect();
        terms.sort_by(|a, b| b.cmp(a));
        let counts = terms.iter().counts();
        if counts.len() < 2 {
            continue;
        }
        let singles: Vec<&Vec<Point>> = terms.iter().filter(|m| counts[m] == 1).collect();
        let repeated: Vec<&Vec<Point>> = terms.iter().filter(|m| counts[m] > 1).unique().collect();
        let c = if terms.len() == 2 {
            LogConstraint::Equal(terms[0].clone(), terms[1].clone())
        } else if singles.is_empty() {
            continue;
        } else if singles.len() == 1 && repeated.len() == 1 {
            LogConstraint::AtLeast(repeated[0].clone(), singles[0].clone())
        } else {
            LogConstraint::MaxTwice(terms.clone())
        };
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out
}

/// Signed unit of one term, `±ρ(β)ρ(γ)`.
pub fn term_value(tract: TractId, term: &Term, rb: &Unit, rg: &Unit) -> Unit {
    let v = tract.mul(rb, rg);
    if term.negative {
        tract.neg(&v)
    } else {
        v
    }
}

/// The upper corner α + Σεᵢ + Σεⱼ of an index.
pub fn index_top(idx: &PluckerIndex) -> Point {
    let mut top = idx.alpha.clone();
    for &x in idx.i.iter().chain(&idx.j) {
        top[x] += 1;
    }
    top
}

/// Point β + γ shared by all terms of a relation.
pub fn relation_weight(rel: &Relation) -> Point {
    let t = &rel.terms[0];
    add(&t.beta, &t.gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mconvex::named;

    #[test]
    fn delta22_log_constraint() {
        let cs = log_constraints(&MConvexSet::simplex(2, 2));
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].to_string(), "2v(1,1) ≥ v(2,0)+v(0,2)");
        assert!(log_constraints(&MConvexSet::new(2, vec![vec![1, 1]]).unwrap()).is_empty());
    }

    #[test]
    fn delta22_has_one_relation() {
        let j = MConvexSet::simplex(2, 2);
        let rels = enumerate_relations(&j, Kind::ThreeTerm);
        assert_eq!(rels.len(), 1);
        let mut pairs: Vec<(Point, Point)> = rels[0]
            .terms
            .iter()
            .map(|t| {
                (
                    t.beta.clone().min(t.gamma.clone()),
                    t.beta.clone().max(t.gamma.clone()),
                )
            })
            .collect();
        pairs.sort();
        assert_eq!(
            pairs,
            vec![
                (vec![0, 2], vec![2, 0]),
                (vec![1, 1], vec![1, 1]),
                (vec![1, 1], vec![1, 1])
            ]
        );
        assert!(rels[0].terms.iter().all(|t| t.nonzero));
        assert!(degenerate_relations(&j).is_empty());
    }

    #[test]
    fn u23_plus_relation() {
        let rels = enumerate_relations(&named::u23_plus(), Kind::ThreeTerm);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].nonzero_count(), 3);
    }

    #[test]
    fn u24_no_degenerate() {
        assert!(degenerate_relations(&MConvexSet::uniform(2, 4)).is_empty());
    }

    #[test]
    fn u12_sum_degenerate() {
        let j = MConvexSet::uniform(1, 2).direct_sum(&MConvexSet::uniform(1, 2));
        let d = degenerate_relations(&j);
        assert_eq!(d.len(), 1);
        let mut sides = vec![d[0].lhs.clone(), d[0].rhs.clone()];
        for s in sides.iter_mut() {
            if s.0 > s.1 {
                std::mem::swap(&mut s.0, &mut s.1);
            }
        }
        sides.sort();
        // x13 x24 against x14 x23
        assert_eq!(
            sides,
            vec![
                (vec![0, 1, 0, 1], vec![1, 0, 1, 0]),
                (vec![0, 1, 1, 0], vec![1, 0, 0, 1])
            ]
        );
    }

    #[test]
    fn three_term_sign_pattern() {
        let j = MConvexSet::uniform(2, 4);
        let rels = enumerate_relations(&j, Kind::ThreeTerm);
        assert_eq!(rels.len(), 1);
        let signs: Vec<bool> = rels[0].terms.iter().map(|t| t.negative).collect();
        assert_eq!(signs, vec![false, true, false]);
        assert_eq!(rels[0].dump(), "2 | 0,0,0,0 | 1,2,3 | 4 | +x[0,1,1,0]·x[1,0,0,1] -x[1,0,1,0]·x[0,1,0,1] +x[1,1,0,0]·x[0,0,1,1]");
    }
}
