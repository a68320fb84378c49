//! Concrete tracts: unit arithmetic and null-set membership.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{malformed, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TractId {
    K,
    Fpm,
    F2,
    F3,
    S,
    T0,
    T0Z,
    T1,
    Tinf,
}

pub const ALL_TRACTS: [TractId; 9] = [
    TractId::K,
    TractId::Fpm,
    TractId::F2,
    TractId::F3,
    TractId::S,
    TractId::T0,
    TractId::T0Z,
    TractId::T1,
    TractId::Tinf,
];

pub const MAX_SUM_TERMS: usize = 1 << 16;

impl TractId {
    pub fn name(self) -> &'static str {
        match self {
            TractId::K => "k",
            TractId::Fpm => "fpm",
            TractId::F2 => "f2",
            TractId::F3 => "f3",
            TractId::S => "s",
            TractId::T0 => "t0",
            TractId::T0Z => "t0z",
            TractId::T1 => "t1",
            TractId::Tinf => "tinf",
        }
    }

    pub fn parse(s: &str) -> Result<TractId> {
        ALL_TRACTS
            .iter()
            .copied()
            .find(|t| t.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Malformed(format!("unknown tract {s:?}")))
    }

    /// 1 = −1 holds in the tract.
    pub fn minus_one_is_one(self) -> bool {
        !matches!(self, TractId::Fpm | TractId::F3 | TractId::S)
    }

    /// 1 = −1 and 1+1+1 is null.
    pub fn is_idempotent(self) -> bool {
        self.minus_one_is_one() && self.is_null(&[self.one(), self.one(), self.one()]).unwrap()
    }

    /// 1 = −1 and 1+1+x is null for some unit x. In this catalog that coincides
    /// with idempotency (F2 has 1 = −1 but no such x).
    pub fn is_near_idempotent(self) -> bool {
        self.is_idempotent()
    }

    pub fn is_fusion(self) -> bool {
        true
    }

    /// Every sum with at least three terms is null.
    pub fn is_degenerate(self) -> bool {
        matches!(self, TractId::K | TractId::Tinf)
    }

    pub fn is_finite(self) -> bool {
        matches!(
            self,
            TractId::K | TractId::Fpm | TractId::F2 | TractId::F3 | TractId::S
        )
    }

    pub fn one(self) -> Unit {
        match self {
            TractId::K | TractId::F2 => Unit::One,
            TractId::Fpm | TractId::F3 | TractId::S => Unit::Sign(false),
            TractId::T0 | TractId::T0Z => Unit::Log(BigRational::zero()),
            TractId::T1 | TractId::Tinf => Unit::Pos(BigRational::one()),
        }
    }

    pub fn minus_one(self) -> Unit {
        self.neg(&self.one())
    }

    /// The finite unit group, if the tract is finite.
    pub fn units(self) -> Option<Vec<Unit>> {
        match self {
            TractId::K | TractId::F2 => Some(vec![Unit::One]),
            TractId::Fpm | TractId::F3 | TractId::S => {
                Some(vec![Unit::Sign(false), Unit::Sign(true)])
            }
            _ => None,
        }
    }

    pub fn check_unit(self, u: &Unit) -> Result<()> {
        let ok = match (self, u) {
            (TractId::K | TractId::F2, Unit::One) => true,
            (TractId::Fpm | TractId::F3 | TractId::S, Unit::Sign(_)) => true,
            (TractId::T0, Unit::Log(_)) => true,
            (TractId::T0Z, Unit::Log(v)) => v.is_integer(),
            (TractId::T1 | TractId::Tinf, Unit::Pos(v)) => v.is_positive(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            malformed(format!("{u} is not a unit of {}", self.name()))
        }
    }

    pub fn mul(self, a: &Unit, b: &Unit) -> Unit {
        match (a, b) {
            (Unit::One, Unit::One) => Unit::One,
            (Unit::Sign(x), Unit::Sign(y)) => Unit::Sign(x ^ y),
            (Unit::Log(x), Unit::Log(y)) => Unit::Log(x + y),
            (Unit::Pos(x), Unit::Pos(y)) => Unit::Pos(x * y),
            _ => panic!("mixed unit payloads {a} and {b} in {}", self.name()),
        }
    }

    pub fn inv(self, a: &Unit) -> Unit {
        match a {
            Unit::One | Unit::Sign(_) => a.clone(),
            Unit::Log(x) => Unit::Log(-x),
            Unit::Pos(x) => Unit::Pos(x.recip()),
        }
    }

    pub fn neg(self, a: &Unit) -> Unit {
        match a {
            Unit::Sign(x) => Unit::Sign(!x),
            _ => a.clone(),
        }
    }

    pub fn pow(self, a: &Unit, k: i64) -> Unit {
        match a {
            Unit::One => Unit::One,
            Unit::Sign(x) => Unit::Sign(*x && k.rem_euclid(2) == 1),
            Unit::Log(x) => Unit::Log(x * BigRational::from_integer(BigInt::from(k))),
            Unit::Pos(x) => {
                let base = if k < 0 { x.recip() } else { x.clone() };
                let mut acc = BigRational::one();
                for _ in 0..k.unsigned_abs() {
                    acc *= &base;
                }
                Unit::Pos(acc)
            }
        }
    }

    /// The unit `(-1)^e`.
    pub fn sign_unit(self, negative: bool) -> Unit {
        if negative {
            self.minus_one()
        } else {
            self.one()
        }
    }

    pub fn is_null(self, terms: &[Unit]) -> Result<bool> {
        if terms.len() > MAX_SUM_TERMS {
            return Err(Error::SumTooLarge(MAX_SUM_TERMS));
        }
        for t in terms {
            self.check_unit(t)?;
        }
        let len = terms.len();
        let negatives = terms
            .iter()
            .filter(|t| matches!(t, Unit::Sign(true)))
            .count();
        let positives = len - negatives;
        Ok(match self {
            TractId::K => len != 1,
            TractId::Fpm => positives == negatives,
            TractId::F2 => len.is_multiple_of(2),
            TractId::F3 => (positives as i64 - negatives as i64).rem_euclid(3) == 0,
            TractId::S => len == 0 || (positives > 0 && negatives > 0),
            TractId::T0 | TractId::T0Z => {
                let max = terms.iter().max();
                len == 0 || terms.iter().filter(|t| Some(*t) == max).count() >= 2
            }
            TractId::T1 => {
                if len == 0 {
                    true
                } else if len == 1 {
                    false
                } else {
                    let vals: Vec<&BigRational> = terms.iter().map(|t| t.rational()).collect();
                    let max = vals.iter().max().unwrap();
                    let sum: BigRational = vals.iter().copied().sum();
                    BigRational::from_integer(2.into()) * *max <= sum
                }
            }
            TractId::Tinf => len == 0 || len >= 3 || (len == 2 && terms[0] == terms[1]),
        })
    }

    pub fn parse_unit(self, s: &str) -> Result<Option<Unit>> {
        let s = s.trim();
        let tropical = matches!(self, TractId::T0 | TractId::T0Z);
        if (s == "0" && !tropical) || (tropical && s == "-inf") {
            return Ok(None);
        }
        let unit = match self {
            TractId::K | TractId::F2 => match s {
                "1" | "+1" | "-1" => Unit::One,
                _ => return malformed(format!("bad {} unit {s:?}", self.name())),
            },
            TractId::Fpm | TractId::F3 | TractId::S => match s {
                "1" | "+1" => Unit::Sign(false),
                "-1" => Unit::Sign(true),
                _ => return malformed(format!("bad {} unit {s:?}", self.name())),
            },
            TractId::T0 | TractId::T0Z => Unit::Log(parse_rational(s)?),
            TractId::T1 | TractId::Tinf => Unit::Pos(parse_rational(s)?),
        };
        self.check_unit(&unit)?;
        Ok(Some(unit))
    }

    pub fn format_unit(self, u: &Unit) -> String {
        match u {
            Unit::One => "1".into(),
            Unit::Sign(false) => "+1".into(),
            Unit::Sign(true) => "-1".into(),
            Unit::Log(x) | Unit::Pos(x) => format_rational(x),
        }
    }
}

impl fmt::Display for TractId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A unit payload. Tropical tracts store log-values, triangular ones positive reals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    One,
    /// `true` is −1
    Sign(bool),
    Log(BigRational),
    Pos(BigRational),
}

impl Unit {
    pub fn log(v: i64) -> Unit {
        Unit::Log(BigRational::from_integer(v.into()))
    }

    pub fn log_ratio(p: i64, q: i64) -> Unit {
        Unit::Log(BigRational::new(p.into(), q.into()))
    }

    pub fn pos(p: i64, q: i64) -> Unit {
        Unit::Pos(BigRational::new(p.into(), q.into()))
    }

    fn rational(&self) -> &BigRational {
        match self {
            Unit::Log(x) | Unit::Pos(x) => x,
            _ => panic!("unit {self} has no rational payload"),
        }
    }

    pub fn log_value(&self) -> Option<&BigRational> {
        match self {
            Unit::Log(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unit::One => write!(f, "1"),
            Unit::Sign(false) => write!(f, "+1"),
            Unit::Sign(true) => write!(f, "-1"),
            Unit::Log(x) => write!(f, "e^{}", format_rational(x)),
            Unit::Pos(x) => write!(f, "{}", format_rational(x)),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Malformed(format!("bad rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.trim_start_matches('+').parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Tract element: zero or a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub tract: TractId,
    pub unit: Option<Unit>,
}

impl Element {
    pub fn zero(tract: TractId) -> Element {
        Element { tract, unit: None }
    }

    pub fn unit(tract: TractId, u: Unit) -> Result<Element> {
        tract.check_unit(&u)?;
        Ok(Element {
            tract,
            unit: Some(u),
        })
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        if self.tract != other.tract {
            return Err(Error::MixedTract(
                self.tract.to_string(),
                other.tract.to_string(),
            ));
        }
        let unit = match (&self.unit, &other.unit) {
            (Some(a), Some(b)) => Some(self.tract.mul(a, b)),
            _ => None,
        };
        Ok(Element {
            tract: self.tract,
            unit,
        })
    }

    pub fn inv(&self) -> Result<Element> {
        match &self.unit {
            Some(u) => Ok(Element {
                tract: self.tract,
                unit: Some(self.tract.inv(u)),
            }),
            None => Err(Error::InverseOfZero),
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            tract: self.tract,
            unit: self.unit.as_ref().map(|u| self.tract.neg(u)),
        }
    }
}

/// Multiset of units submitted to null-set membership.
#[derive(Clone, Debug)]
pub struct FormalSum {
    pub tract: TractId,
    terms: Vec<Unit>,
}

impl FormalSum {
    pub fn new(tract: TractId, mut terms: Vec<Unit>) -> Result<FormalSum> {
        if terms.len() > MAX_SUM_TERMS {
            return Err(Error::SumTooLarge(MAX_SUM_TERMS));
        }
        for t in &terms {
            tract.check_unit(t)?;
        }
        terms.sort();
        Ok(FormalSum { tract, terms })
    }

    /// Zeros are dropped; mixing tracts is an error.
    pub fn from_elements(tract: TractId, elems: &[Element]) -> Result<FormalSum> {
        let mut terms = Vec::new();
        for e in elems {
            if e.tract != tract {
                return Err(Error::MixedTract(tract.to_string(), e.tract.to_string()));
            }
            if let Some(u) = &e.unit {
                terms.push(u.clone());
            }
        }
        FormalSum::new(tract, terms)
    }

    pub fn terms(&self) -> &[Unit] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn union(&self, other: &FormalSum) -> Result<FormalSum> {
        if self.tract != other.tract {
            return Err(Error::MixedTract(
                self.tract.to_string(),
                other.tract.to_string(),
            ));
        }
        FormalSum::new(
            self.tract,
            self.terms.iter().chain(&other.terms).cloned().collect(),
        )
    }

    pub fn scale(&self, c: &Unit) -> FormalSum {
        let terms = self.terms.iter().map(|t| self.tract.mul(t, c)).collect();
        FormalSum::new(self.tract, terms).expect("scaling preserves validity")
    }

    pub fn is_null(&self) -> bool {
        self.tract
            .is_null(&self.terms)
            .expect("validated on construction")
    }
}

impl PartialEq for FormalSum {
    fn eq(&self, other: &Self) -> bool {
        self.tract == other.tract && self.terms == other.terms
    }
}

impl Eq for FormalSum {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TractMorphism {
    pub source: TractId,
    pub target: TractId,
}

impl TractMorphism {
    pub fn apply(&self, u: &Unit) -> Unit {
        let (s, t) = (self.source, self.target);
        if s == t {
            return u.clone();
        }
        match (s, u) {
            (TractId::Fpm, Unit::Sign(neg)) => t.sign_unit(*neg),
            (TractId::T0Z, Unit::Log(x)) if t == TractId::T0 => Unit::Log(x.clone()),
            _ if t == TractId::K => Unit::One,
            _ => unreachable!("morphism {s} -> {t} outside the catalog"),
        }
    }

    pub fn apply_element(&self, e: &Element) -> Element {
        Element {
            tract: self.target,
            unit: e.unit.as_ref().map(|u| self.apply(u)),
        }
    }

    /// Re-check 1 ↦ 1, −1 ↦ −1 and null preservation on a generating family of the source.
    pub fn validate(&self) -> bool {
        let (s, t) = (self.source, self.target);
        if self.apply(&s.one()) != t.one() || self.apply(&s.minus_one()) != t.minus_one() {
            return false;
        }
        null_family(s).iter().all(|sum| {
            let mapped: Vec<Unit> = sum.iter().map(|u| self.apply(u)).collect();
            t.is_null(&mapped).unwrap_or(false)
        })
    }
}

/// Small sample of units covering the structure of each tract.
pub fn sample_units(t: TractId) -> Vec<Unit> {
    match t {
        TractId::T0 => vec![
            Unit::log(-1),
            Unit::log(0),
            Unit::log_ratio(1, 2),
            Unit::log(1),
        ],
        TractId::T0Z => vec![Unit::log(-1), Unit::log(0), Unit::log(1), Unit::log(2)],
        TractId::T1 | TractId::Tinf => vec![
            Unit::pos(1, 2),
            Unit::pos(1, 1),
            Unit::pos(2, 1),
            Unit::pos(3, 1),
        ],
        _ => t.units().unwrap(),
    }
}

/// All null sums with at most four terms drawn from `sample_units`.
pub fn null_family(t: TractId) -> Vec<Vec<Unit>> {
    use itertools::Itertools;
    let units = sample_units(t);
    let mut out = Vec::new();
    for k in 0..=4 {
        for combo in units.iter().cloned().combinations_with_replacement(k) {
            if t.is_null(&combo).unwrap() {
                out.push(combo);
            }
        }
    }
    out
}

pub fn morphism(source: TractId, target: TractId) -> Result<TractMorphism> {
    let known = source == target
        || target == TractId::K
        || source == TractId::Fpm
        || (source == TractId::T0Z && target == TractId::T0);
    let m = TractMorphism { source, target };
    if known && m.validate() {
        Ok(m)
    } else {
        Err(Error::NoMorphism(source.to_string(), target.to_string()))
    }
}
