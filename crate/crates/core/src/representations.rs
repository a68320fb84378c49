//! Representations of M-convex sets over tracts.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{malformed, Error, Result};
use crate::mconvex::{add, is_m_convex, norm, simplex_points, sub, unit, MConvexSet, Point};
use crate::plucker::{enumerate_relations, term_value, Kind, PluckerIndex, Relation};
use crate::tracts::{FormalSum, TractId, TractMorphism, Unit};

/// Unit values on the bases of the reduction J̄, aligned with `reduced.bases()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    set: MConvexSet,
    reduced: MConvexSet,
    tract: TractId,
    values: Vec<Unit>,
}

impl Representation {
    /// `entries` are keyed by points of J̄ and must cover it exactly.
    pub fn new(set: MConvexSet, tract: TractId, entries: Vec<(Point, Unit)>) -> Result<Self> {
        let reduced = set.reduction();
        let mut slots: Vec<Option<Unit>> = vec![None; reduced.len()];
        for (p, u) in entries {
            tract.check_unit(&u)?;
            let Some(k) = reduced.index_of(&p) else {
                return Err(Error::SupportMismatch);
            };
            if slots[k].replace(u).is_some() {
                return malformed(format!("basis {p:?} listed twice"));
            }
        }
        let values = slots
            .into_iter()
            .collect::<Option<Vec<Unit>>>()
            .ok_or(Error::SupportMismatch)?;
        Ok(Self {
            set,
            reduced,
            tract,
            values,
        })
    }

    pub fn from_fn(set: MConvexSet, tract: TractId, f: impl Fn(&Point) -> Unit) -> Self {
        let reduced = set.reduction();
        let values = reduced.bases().iter().map(f).collect();
        Self {
            set,
            reduced,
            tract,
            values,
        }
    }

    pub fn set(&self) -> &MConvexSet {
        &self.set
    }

    pub fn reduced(&self) -> &MConvexSet {
        &self.reduced
    }

    pub fn tract(&self) -> TractId {
        self.tract
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Point, &Unit)> {
        self.reduced.bases().iter().zip(&self.values)
    }

    /// Value at a point of J̄; `None` off the support.
    pub fn value(&self, p: &[i64]) -> Option<&Unit> {
        self.reduced.index_of(p).map(|k| &self.values[k])
    }
}

/// Signed products of the nonzero terms of `rel`, evaluated on ρ.
pub fn instantiate(rel: &Relation, rho: &Representation) -> Result<FormalSum> {
    let t = rho.tract;
    let mut units = Vec::new();
    for term in rel.nonzero_terms() {
        let (Some(b), Some(g)) = (rho.value(&term.beta), rho.value(&term.gamma)) else {
            return Err(Error::SupportMismatch);
        };
        units.push(term_value(t, term, b, g));
    }
    FormalSum::new(t, units)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strong,
    Weak,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "strong" => Ok(Mode::Strong),
            "weak" => Ok(Mode::Weak),
            _ => malformed(format!("unknown mode {s:?}")),
        }
    }

    fn kind(self) -> Kind {
        match self {
            Mode::Strong => Kind::Full,
            Mode::Weak => Kind::ThreeTerm,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Violated(Vec<PluckerIndex>),
    /// 1 ≠ −1 in the tract and J is not a matroid translate, so no representation exists.
    IdempotencyObstruction,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

pub fn verify(rho: &Representation, mode: Mode) -> Result<Verdict> {
    if !rho.tract.minus_one_is_one() && rho.set.is_proper() {
        return Ok(Verdict::IdempotencyObstruction);
    }
    verify_relations(rho, &enumerate_relations(&rho.set, mode.kind()))
}

fn verify_relations(rho: &Representation, rels: &[Relation]) -> Result<Verdict> {
    let mut bad = Vec::new();
    for rel in rels {
        if !instantiate(rel, rho)?.is_null() {
            bad.push(rel.index.clone());
        }
    }
    Ok(if bad.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Violated(bad)
    })
}

pub fn characteristic_representation(set: &MConvexSet, tract: TractId) -> Result<Representation> {
    if !tract.is_idempotent() {
        return Err(Error::NotIdempotent(tract.to_string()));
    }
    Ok(Representation::from_fn(set.clone(), tract, |_| tract.one()))
}

pub fn pushforward(rho: &Representation, m: &TractMorphism) -> Result<Representation> {
    if m.source != rho.tract {
        return Err(Error::TractMismatch(
            m.source.to_string(),
            rho.tract.to_string(),
        ));
    }
    Ok(Representation {
        set: rho.set.clone(),
        reduced: rho.reduced.clone(),
        tract: m.target,
        values: rho.values.iter().map(|u| m.apply(u)).collect(),
    })
}

/// (a, t) acting by ρ(ᾱ) ↦ a·Πtᵢ^ᾱᵢ·ρ(ᾱ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    pub a: Unit,
    pub t: Vec<Unit>,
}

impl TorusElement {
    pub fn identity(tract: TractId, n: usize) -> Self {
        Self {
            a: tract.one(),
            t: vec![tract.one(); n],
        }
    }
}

pub fn rescale(rho: &Representation, g: &TorusElement) -> Result<Representation> {
    let tract = rho.tract;
    if g.t.len() != rho.set.n() {
        return malformed(format!(
            "torus element has {} entries but n = {}",
            g.t.len(),
            rho.set.n()
        ));
    }
    tract.check_unit(&g.a)?;
    for u in &g.t {
        tract.check_unit(u)?;
    }
    let values = rho
        .entries()
        .map(|(p, v)| {
            let mut acc = tract.mul(&g.a, v);
            for (ti, &e) in g.t.iter().zip(p) {
                acc = tract.mul(&acc, &tract.pow(ti, e));
            }
            acc
        })
        .collect();
    Ok(Representation {
        values,
        ..rho.clone()
    })
}

/// Sign of the shuffle (β, ground∖β) for a 0/1 vector β on the ground set {ωᵢ = 1}.
fn shuffle_sign(beta: &[i64], width: &[i64]) -> bool {
    let ground: Vec<usize> = (0..beta.len()).filter(|&i| width[i] > 0).collect();
    let mut inversions = 0;
    let mut taken = 0;
    for (pos, &i) in ground.iter().enumerate() {
        if beta[i] > 0 {
            inversions += pos - taken;
            taken += 1;
        }
    }
    inversions % 2 == 1
}

/// ρ*(ω − β) = sign(β, β*)·ρ(β) on J̄* = ω − J̄.
pub fn dual_representation(rho: &Representation) -> Representation {
    let tract = rho.tract;
    let width = rho.set.width();
    let matroid = rho.set.is_matroid_translate();
    let dual = rho.set.dual();
    let mut map = BTreeMap::new();
    for (p, v) in rho.entries() {
        let sign = matroid && shuffle_sign(p, &width);
        let val = if sign { tract.neg(v) } else { v.clone() };
        map.insert(sub(&width, p), val);
    }
    Representation::from_fn(dual, tract, |p| map[p].clone())
}

/// Restriction of ρ to the embedded minor (J∖ν)/μ + τ.
pub fn minor_representation(
    rho: &Representation,
    nu: &[i64],
    mu: &[i64],
    tau: &[i64],
) -> Result<Representation> {
    if !rho.tract.minus_one_is_one() && rho.set.is_proper() {
        return Err(Error::SignedProper);
    }
    let em = rho.set.embedded_minor(nu, mu, tau)?;
    let minor_lo = em.set.delta_minus();
    let parent_lo = rho.set.delta_minus();
    let lookup = |p: &Point| {
        let q = sub(&add(&add(p, &minor_lo), &em.shift), &parent_lo);
        rho.value(&q)
            .cloned()
            .expect("embedded minor basis lies in the parent")
    };
    Ok(Representation::from_fn(em.set, rho.tract, lookup))
}

pub fn direct_sum_representation(a: &Representation, b: &Representation) -> Result<Representation> {
    if a.tract != b.tract {
        return Err(Error::TractMismatch(
            a.tract.to_string(),
            b.tract.to_string(),
        ));
    }
    let tract = a.tract;
    let n1 = a.set.n();
    let lookup = |p: &Point| {
        let x = a.value(&p[..n1]).expect("first block basis");
        let y = b.value(&p[n1..]).expect("second block basis");
        tract.mul(x, y)
    };
    Ok(Representation::from_fn(
        a.set.direct_sum(&b.set),
        tract,
        lookup,
    ))
}

/// A tuple (α, i, j, k, l) with α ∈ Δ^{r̄−2} and α+εᵢ+ε_k, α+εⱼ+ε_l, α+εᵢ+ε_l, α+εⱼ+ε_k in J̄.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaTuple {
    pub alpha: Point,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl OmegaTuple {
    pub fn new(alpha: Point, i: usize, j: usize, k: usize, l: usize) -> Self {
        Self { alpha, i, j, k, l }
    }

    fn pt(&self, a: usize, b: usize) -> Point {
        let mut p = self.alpha.clone();
        p[a] += 1;
        p[b] += 1;
        p
    }

    /// Numerator points α+εᵢ+ε_k, α+εⱼ+ε_l and denominator points α+εᵢ+ε_l, α+εⱼ+ε_k.
    pub fn points(&self) -> [Point; 4] {
        [
            self.pt(self.i, self.k),
            self.pt(self.j, self.l),
            self.pt(self.i, self.l),
            self.pt(self.j, self.k),
        ]
    }

    pub fn in_omega(&self, reduced: &MConvexSet) -> bool {
        self.alpha.len() == reduced.n()
            && self.alpha.iter().all(|&x| x >= 0)
            && norm(&self.alpha) == reduced.r() - 2
            && [self.i, self.j, self.k, self.l]
                .iter()
                .all(|&x| x < reduced.n())
            && self.points().iter().all(|p| reduced.contains(p))
    }

    /// Degenerate when α+εᵢ+εⱼ or α+ε_k+ε_l is not a basis.
    pub fn is_degenerate(&self, reduced: &MConvexSet) -> bool {
        !reduced.contains(&self.pt(self.i, self.j)) || !reduced.contains(&self.pt(self.k, self.l))
    }

    /// Least of the symmetric forms (ij|kl), (kl|ij), (ji|lk), (lk|ji).
    pub fn canonical(&self) -> OmegaTuple {
        let (i, j, k, l) = (self.i, self.j, self.k, self.l);
        [(i, j, k, l), (k, l, i, j), (j, i, l, k), (l, k, j, i)]
            .into_iter()
            .map(|(a, b, c, d)| OmegaTuple::new(self.alpha.clone(), a, b, c, d))
            .min()
            .unwrap()
    }
}

/// Ω_J on the reduction, in lexicographic order of (α, i, j, k, l).
pub fn omega(set: &MConvexSet) -> Vec<OmegaTuple> {
    let red = set.reduction();
    let n = red.n();
    let mut out = Vec::new();
    if red.r() < 2 {
        return out;
    }
    for alpha in simplex_points(n, red.r() - 2) {
        // α+εᵢ+ε_k etc. must be bases; prune on the pair (i, k) first
        for i in 0..n {
            for k in 0..n {
                let ik = add(&add(&alpha, &unit(n, i)), &unit(n, k));
                if !red.contains(&ik) {
                    continue;
                }
                for j in 0..n {
                    for l in 0..n {
                        let t = OmegaTuple::new(alpha.clone(), i, j, k, l);
                        if t.in_omega(&red) {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Ω_J^◇: the nondegenerate tuples.
pub fn omega_nondegenerate(set: &MConvexSet) -> Vec<OmegaTuple> {
    let red = set.reduction();
    omega(set)
        .into_iter()
        .filter(|t| !t.is_degenerate(&red))
        .collect()
}

/// ρ(α+εᵢ+ε_k)ρ(α+εⱼ+ε_l) / (ρ(α+εᵢ+ε_l)ρ(α+εⱼ+ε_k)).
pub fn cross_ratio(rho: &Representation, w: &OmegaTuple) -> Result<Unit> {
    if !w.in_omega(&rho.reduced) {
        return Err(Error::NotInOmega);
    }
    let t = rho.tract;
    let [a, b, c, d] = w.points().map(|p| rho.value(&p).unwrap().clone());
    Ok(t.mul(&t.mul(&a, &b), &t.inv(&t.mul(&c, &d))))
}

/// Cross ratios on canonical representatives of Ω_J^◇.
pub fn cross_ratio_vector(rho: &Representation) -> Vec<(OmegaTuple, Unit)> {
    let mut reps: Vec<OmegaTuple> = omega_nondegenerate(&rho.set)
        .iter()
        .map(|t| t.canonical())
        .collect();
    reps.sort();
    reps.dedup();
    reps.into_iter()
        .map(|w| {
            let v = cross_ratio(rho, &w).expect("canonical tuple stays in Ω");
            (w, v)
        })
        .collect()
}

pub fn is_in_lineality(rho: &Representation) -> Result<bool> {
    if !rho.tract.is_idempotent() {
        return Err(Error::NotIdempotent(rho.tract.to_string()));
    }
    let one = rho.tract.one();
    for w in omega(&rho.set) {
        if cross_ratio(rho, &w)? != one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks only the degenerate 3-term relations.
pub fn is_in_degeneracy_locus(
    set: &MConvexSet,
    tract: TractId,
    entries: Vec<(Point, Unit)>,
) -> Result<bool> {
    let rho = Representation::new(set.clone(), tract, entries)?;
    let rels: Vec<Relation> = enumerate_relations(set, Kind::ThreeTerm)
        .into_iter()
        .filter(|r| r.nonzero_count() == 2)
        .collect();
    Ok(verify_relations(&rho, &rels)?.is_valid())
}

/// Whether two representations of the same set lie in the same T̂(F)-orbit.
pub fn same_orbit(a: &Representation, b: &Representation) -> Result<bool> {
    if a.tract != b.tract {
        return Err(Error::TractMismatch(
            a.tract.to_string(),
            b.tract.to_string(),
        ));
    }
    if a.set.reduction() != b.set.reduction() {
        return Err(Error::SupportMismatch);
    }
    let tract = a.tract;
    if tract.is_idempotent() {
        return Ok(cross_ratio_vector(a) == cross_ratio_vector(b));
    }
    // finite unit groups {1} or {±1}: enumerate (a, t)
    let units = tract
        .units()
        .expect("non-idempotent tracts in the catalog are finite");
    let n = a.set.n();
    let choices = units.len().pow(n as u32 + 1);
    for code in 0..choices {
        let mut c = code;
        let mut pick = || {
            let u = units[c % units.len()].clone();
            c /= units.len();
            u
        };
        let g = TorusElement {
            a: pick(),
            t: (0..n).map(|_| pick()).collect(),
        };
        if rescale(a, &g)?.values == b.values {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Value of a function on Δ^r_n; `None` is +∞.
pub type FunctionValue = Option<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionCheck {
    /// Exchange axiom f(α)+f(β) ≥ f(α−εᵢ+εⱼ)+f(β+εᵢ−εⱼ) checked on all pairs.
    pub by_exchange: bool,
    /// Local exchange inequalities on an M-convex domain.
    pub by_local_exchange: bool,
    /// M-convex support and ρ = e^{−f} verifies strongly over 𝕋₀.
    pub by_representation: bool,
}

impl FunctionCheck {
    pub fn agree(&self) -> bool {
        self.by_exchange == self.by_local_exchange && self.by_exchange == self.by_representation
    }

    pub fn is_m_convex(&self) -> bool {
        self.by_exchange
    }
}

fn fsum(a: &FunctionValue, b: &FunctionValue) -> FunctionValue {
    Some(a.as_ref()? + b.as_ref()?)
}

/// `a ≥ b` with ∞ as the top element.
fn fge(a: &FunctionValue, b: &FunctionValue) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x >= y,
    }
}

fn fmin(a: FunctionValue, b: FunctionValue) -> FunctionValue {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

pub fn mconvex_function_check(
    n: usize,
    r: i64,
    f: &[(Point, FunctionValue)],
) -> Result<FunctionCheck> {
    let mut table: BTreeMap<Point, FunctionValue> = BTreeMap::new();
    for (p, v) in f {
        if p.len() != n || p.iter().any(|&x| x < 0) || norm(p) != r {
            return malformed(format!(
                "{p:?} is not a point of the simplex of rank {r} in {n} coordinates"
            ));
        }
        if table.insert(p.clone(), v.clone()).is_some() {
            return malformed(format!("point {p:?} listed twice"));
        }
    }
    let get = |p: &Point| -> FunctionValue { table.get(p).cloned().flatten() };
    let support: Vec<Point> = table
        .iter()
        .filter(|(_, v)| v.is_some())
        .map(|(p, _)| p.clone())
        .collect();
    if support.is_empty() {
        return Err(Error::Precondition("function has empty support".into()));
    }

    let mut by_exchange = true;
    'outer: for a in &support {
        for b in &support {
            for i in 0..n {
                if a[i] <= b[i] {
                    continue;
                }
                let lhs = fsum(&get(a), &get(b));
                let ok = (0..n).filter(|&j| a[j] < b[j]).any(|j| {
                    let a2 = add(&sub(a, &unit(n, i)), &unit(n, j));
                    let b2 = add(&sub(b, &unit(n, j)), &unit(n, i));
                    fge(&lhs, &fsum(&get(&a2), &get(&b2)))
                });
                if !ok {
                    by_exchange = false;
                    break 'outer;
                }
            }
        }
    }

    let domain_ok = is_m_convex(n, r, &support)?;
    let mut local = domain_ok;
    if local && r >= 2 {
        let at =
            |alpha: &Point, x: usize, y: usize| get(&add(&add(alpha, &unit(n, x)), &unit(n, y)));
        'local: for alpha in simplex_points(n, r - 2) {
            for i in 0..n {
                for k in 0..n {
                    for j in 0..n {
                        for l in 0..n {
                            if [j, l].contains(&i) || [j, l].contains(&k) {
                                continue;
                            }
                            let lhs = fsum(&at(&alpha, i, k), &at(&alpha, j, l));
                            let rhs = fmin(
                                fsum(&at(&alpha, i, j), &at(&alpha, k, l)),
                                fsum(&at(&alpha, i, l), &at(&alpha, j, k)),
                            );
                            if !fge(&lhs, &rhs) {
                                local = false;
                                break 'local;
                            }
                        }
                    }
                }
            }
        }
    }

    let by_representation = domain_ok && {
        let set = MConvexSet::with_rank(n, r, support.clone())?;
        let lo = set.delta_minus();
        let entries = support
            .iter()
            .map(|p| (sub(p, &lo), Unit::Log(-get(p).unwrap())))
            .collect();
        let rho = Representation::new(set, TractId::T0, entries)?;
        verify(&rho, Mode::Strong)?.is_valid()
    };

    Ok(FunctionCheck {
        by_exchange,
        by_local_exchange: local,
        by_representation,
    })
}

/// ρ(ᾱ) = e^{−f(ᾱ + δ⁻)} as 𝕋₀ log-values.
pub fn tropical_representation(
    set: &MConvexSet,
    f: impl Fn(&Point) -> BigRational,
) -> Representation {
    let lo = set.delta_minus();
    Representation::from_fn(set.clone(), TractId::T0, |p| Unit::Log(-f(&add(p, &lo))))
}

pub fn is_zero_function(f: &[(Point, FunctionValue)]) -> bool {
    f.iter()
        .all(|(_, v)| v.as_ref().is_none_or(|x| x.is_zero()))
}
