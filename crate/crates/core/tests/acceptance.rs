mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{exchange_oracle, family, subsets, SHAPES};
use num_rational::BigRational;
use polytract::hives::{lr_coefficient, lr_tableau_oracle, PartitionTriple};
use polytract::mconvex::{add, enumerate_mconvex, named, norm, simplex_points, sub, unit};
use polytract::plucker::{krasner_criterion, log_constraints};
use polytract::presentations::normal_forms::{from_i64, rank};
use polytract::presentations::{
    foundation_unit_group, idempotency_witness, lineality_rank, rank_formula_check, tutte_rank,
    verify_bijection_theorem, verify_cross_ratios_generate, MinusOne, WitnessForm,
};
use polytract::representations::{
    characteristic_representation, is_in_lineality, mconvex_function_check, rescale,
    tropical_representation, verify, FunctionValue, Mode, Representation, TorusElement, Verdict,
};
use polytract::tracts::{TractId, Unit};
use polytract::{MConvexSet, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn bounded(limit: Duration, start: Instant) -> Outcome {
    let t = start.elapsed();
    ensure!(t <= limit, "took {t:?}, limit {limit:?}");
    Ok(())
}

fn exhaustive() -> Vec<MConvexSet> {
    SHAPES.iter().flat_map(|&(n, r)| family(n, r)).collect()
}

fn partitions(total: i64, max_part: i64, max_len: usize) -> Vec<Vec<i64>> {
    if total == 0 {
        return vec![vec![]];
    }
    if max_len == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=total.min(max_part)).rev() {
        for mut rest in partitions(total - first, first, max_len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn lr_single() -> Outcome {
    let start = Instant::now();
    let t = PartitionTriple::new(&[2, 1], &[2, 1], &[3, 2, 1]).map_err(|e| e.to_string())?;
    let c = lr_coefficient(&t, 3).map_err(|e| e.to_string())?;
    ensure!(c == 2, "got {c}");
    bounded(Duration::from_secs(1), start)
}

fn lr_oracle() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for size in 0..=8 {
        for nu in partitions(size, size, 4) {
            for a in 0..=size {
                for lambda in partitions(a, a, 4) {
                    for mu in partitions(size - a, size - a, 4) {
                        let t =
                            PartitionTriple::new(&lambda, &mu, &nu).map_err(|e| e.to_string())?;
                        let expected = lr_tableau_oracle(&t);
                        let parts = lambda.len().max(mu.len()).max(nu.len()).max(1);
                        for r in parts..=4 {
                            let got = lr_coefficient(&t, r as i64).map_err(|e| e.to_string())?;
                            ensure!(
                                got == expected,
                                "{lambda:?} {mu:?} {nu:?} r={r}: hives {got}, tableaux {expected}"
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    ensure!(checked > 1000, "only {checked} triples");
    bounded(Duration::from_secs(120), start)
}

fn plucker_exchange() -> Outcome {
    let start = Instant::now();
    for (n, r, count) in [(3, 2, 63), (2, 3, 15), (4, 2, 1023)] {
        let all = subsets(n, r);
        ensure!(all.len() == count, "Δ^{r}_{n} has {} subsets", all.len());
        for pts in all {
            let k = krasner_criterion(n, &pts).map_err(|e| e.to_string())?;
            ensure!(k == exchange_oracle(&pts), "{pts:?}");
        }
    }
    bounded(Duration::from_secs(60), start)
}

fn foundations() -> Outcome {
    let start = Instant::now();
    let minus_e2 = MConvexSet::new(
        3,
        simplex_points(3, 2)
            .into_iter()
            .filter(|p| p != &vec![0, 2, 0])
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let cases = [
        ("U22", MConvexSet::uniform(2, 2), 0, MinusOne::OrderTwo),
        ("U23", MConvexSet::uniform(2, 3), 0, MinusOne::OrderTwo),
        ("U24", MConvexSet::uniform(2, 4), 2, MinusOne::OrderTwo),
        ("Fano", named::fano(), 0, MinusOne::Trivial),
        ("U23+", named::u23_plus(), 1, MinusOne::Trivial),
        ("D22", MConvexSet::simplex(2, 2), 1, MinusOne::Trivial),
        ("D23-e2", minus_e2, 2, MinusOne::Trivial),
        ("D23", MConvexSet::simplex(3, 2), 3, MinusOne::Trivial),
        ("D32", MConvexSet::simplex(2, 3), 2, MinusOne::Trivial),
    ];
    for (name, j, free, m1) in cases {
        let g = foundation_unit_group(&j);
        ensure!(
            (g.free_rank, g.minus_one) == (free, m1),
            "{name}: ({}, {})",
            g.free_rank,
            g.minus_one.name()
        );
    }
    bounded(Duration::from_secs(10), start)
}

fn tutte_ranks() -> Outcome {
    let single = MConvexSet::new(2, vec![vec![1, 1]]).map_err(|e| e.to_string())?;
    for (name, j, tau) in [
        ("D22", MConvexSet::simplex(2, 2), 2),
        ("D23", MConvexSet::simplex(3, 2), 5),
        ("D32", MConvexSet::simplex(2, 3), 3),
        ("{(1,1)}", single, 0),
    ] {
        let got = tutte_rank(&j);
        ensure!(got == tau, "{name}: {got}");
        let f = foundation_unit_group(&j).free_rank;
        ensure!(
            got == f + j.n() - j.component_count(),
            "{name}: inconsistent with the foundation rank {f}"
        );
    }
    Ok(())
}

fn rank_formula() -> Outcome {
    let start = Instant::now();
    for j in exhaustive() {
        ensure!(rank_formula_check(&j), "{:?}", j.bases());
    }
    bounded(Duration::from_secs(300), start)
}

fn bijection_family() -> Vec<MConvexSet> {
    [(2, 3), (3, 3), (4, 2)]
        .into_iter()
        .flat_map(|(n, r)| family(n, r))
        .collect()
}

fn bijection() -> Outcome {
    let start = Instant::now();
    for j in bijection_family() {
        ensure!(verify_bijection_theorem(&j), "{:?}", j.bases());
    }
    bounded(Duration::from_secs(300), start)
}

fn cross_ratios() -> Outcome {
    for j in bijection_family() {
        ensure!(verify_cross_ratios_generate(&j), "{:?}", j.bases());
    }
    Ok(())
}

fn duality_minors() -> Outcome {
    for j in exhaustive() {
        let d = j.dual();
        ensure!(
            d.dual() == j,
            "dual is not an involution on {:?}",
            j.bases()
        );
        ensure!(
            d.delta() == j.delta(),
            "duality vector changes on {:?}",
            j.bases()
        );
        let n = j.n();
        for i in 0..n {
            let e = unit(n, i);
            let cap = sub(&vec![norm(&e); n], &e);
            let within = |gap: &Point| gap.iter().zip(&cap).all(|(g, c)| 0 <= *g && g <= c);
            if let Ok(c) = j.contract(&e) {
                ensure!(
                    c.delta_minus() == j.delta_minus(),
                    "δ⁻ of {:?} / {e:?}",
                    j.bases()
                );
                ensure!(
                    within(&sub(&j.delta(), &add(&c.delta(), &e))),
                    "bound for {:?} / {e:?}",
                    j.bases()
                );
                ensure!(
                    j.contraction_duality_shift(&e)
                        .map_err(|x| x.to_string())?
                        .1,
                    "(J/μ)* for {:?}",
                    j.bases()
                );
            }
            if let Ok(del) = j.delete(&e) {
                ensure!(
                    del.delta_plus() == sub(&j.delta_plus(), &e),
                    "δ⁺ of {:?} \\ {e:?}",
                    j.bases()
                );
                ensure!(
                    within(&sub(&add(&del.delta(), &e), &j.delta())),
                    "bound for {:?} \\ {e:?}",
                    j.bases()
                );
                ensure!(
                    j.deletion_duality_shift(&e).map_err(|x| x.to_string())?.1,
                    "(J∖ν)* for {:?}",
                    j.bases()
                );
            }
            for k in 0..n {
                if let Ok(c) = j.commute_minors(&e, &unit(n, k)) {
                    ensure!(
                        c.holds,
                        "minors do not commute on {:?} with ν={e:?}, μ=ε{k}",
                        j.bases()
                    );
                }
            }
        }
    }
    Ok(())
}

fn idempotency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for j in exhaustive() {
        let w = idempotency_witness(&j);
        if j.is_matroid_translate() {
            ensure!(
                w.is_none(),
                "matroid translate {:?} has a witness",
                j.bases()
            );
            continue;
        }
        let Some(w) = w else {
            return Err(format!("proper {:?} has no witness", j.bases()));
        };
        if j.width().iter().any(|&x| x >= 3) {
            ensure!(
                w.form == WitnessForm::OnePlusOnePlusOne,
                "{:?}: expected 1+1+1",
                j.bases()
            );
        }
        let red = j.reduction();
        let entries = red
            .bases()
            .iter()
            .map(|p| (p.clone(), Unit::Sign(rng.gen_bool(0.5))))
            .collect();
        let rho =
            Representation::new(j.clone(), TractId::F3, entries).map_err(|e| e.to_string())?;
        let v = verify(&rho, Mode::Strong).map_err(|e| e.to_string())?;
        ensure!(
            v == Verdict::IdempotencyObstruction,
            "{:?} over F3: {v:?}",
            j.bases()
        );
    }
    Ok(())
}

fn rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> BigRational {
    BigRational::new(
        rng.gen_range(lo..=hi).into(),
        rng.gen_range(1..=4i64).into(),
    )
}

/// A mix of arbitrary functions and M-convex ones (separable and laminar convex
/// functions on box-bounded domains), some of them perturbed at one point.
fn random_function(
    rng: &mut ChaCha8Rng,
    n: usize,
    r: i64,
    kind: usize,
) -> Vec<(Point, FunctionValue)> {
    let pts = simplex_points(n, r);
    if kind == 0 {
        return pts
            .into_iter()
            .map(|p| (p, rng.gen_bool(0.8).then(|| rat(rng, -6, 6))))
            .collect();
    }
    let hi: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=r)).collect();
    let quad: Vec<BigRational> = (0..n).map(|_| rat(rng, 0, 4)).collect();
    let lin: Vec<BigRational> = (0..n).map(|_| rat(rng, -4, 4)).collect();
    let chain: Vec<BigRational> = (0..n)
        .map(|_| {
            if kind == 2 {
                rat(rng, 0, 4)
            } else {
                BigRational::from_integer(0.into())
            }
        })
        .collect();
    let mut f: Vec<(Point, FunctionValue)> = pts
        .into_iter()
        .map(|p| {
            let inside = p.iter().zip(&hi).all(|(x, h)| x <= h);
            let mut v = BigRational::from_integer(0.into());
            let mut prefix = 0;
            for i in 0..n {
                let x = BigRational::from_integer(p[i].into());
                v += &quad[i] * &x * &x + &lin[i] * &x;
                prefix += p[i];
                let s = BigRational::from_integer(prefix.into());
                v += &chain[i] * &s * &s;
            }
            (p, inside.then_some(v))
        })
        .collect();
    if kind == 3 {
        let k = rng.gen_range(0..f.len());
        if let Some(v) = f[k].1.as_mut() {
            *v += rat(rng, -3, 3);
        }
    }
    f
}

fn t0_equivalence() -> Outcome {
    let start = Instant::now();
    let mut positives = 0;
    for (shape, &(n, r)) in [(2usize, 2i64), (2, 3), (3, 2), (3, 3)].iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + shape as u64);
        let mut done = 0;
        while done < 500 {
            let f = random_function(&mut rng, n, r, done % 4);
            let support: Vec<Point> = f
                .iter()
                .filter(|(_, v)| v.is_some())
                .map(|(p, _)| p.clone())
                .collect();
            if support.is_empty() {
                continue;
            }
            done += 1;
            let c = mconvex_function_check(n, r, &f).map_err(|e| e.to_string())?;
            let weak = match MConvexSet::with_rank(n, r, support) {
                Ok(set) => {
                    let table: std::collections::BTreeMap<Point, BigRational> = f
                        .iter()
                        .filter_map(|(p, v)| v.clone().map(|v| (p.clone(), v)))
                        .collect();
                    let rho = tropical_representation(&set, |p| table[p].clone());
                    verify(&rho, Mode::Weak)
                        .map_err(|e| e.to_string())?
                        .is_valid()
                }
                Err(_) => false,
            };
            ensure!(
                c.by_local_exchange == c.by_representation
                    && c.by_representation == weak
                    && weak == c.by_exchange,
                "({n},{r}) {f:?}: exchange {}, local {}, strong {}, weak {weak}",
                c.by_exchange,
                c.by_local_exchange,
                c.by_representation
            );
            positives += usize::from(weak);
        }
    }
    ensure!(
        positives >= 500 && 2000 - positives >= 300,
        "unbalanced sample: {positives} of 2000 M-convex"
    );
    bounded(Duration::from_secs(60), start)
}

fn polygrassmannian() -> Outcome {
    let strata = enumerate_mconvex(2, 2, 22).map_err(|e| e.to_string())?;
    ensure!(strata.len() == 6, "{} strata", strata.len());
    let d22 = MConvexSet::simplex(2, 2);
    ensure!(strata.contains(&d22), "Δ²₂ is not a stratum");
    let text: Vec<String> = log_constraints(&d22)
        .iter()
        .map(|c| c.to_string())
        .collect();
    ensure!(text == ["2v(1,1) ≥ v(2,0)+v(0,2)"], "{text:?}");
    Ok(())
}

fn lineality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let err = |e: polytract::Error| e.to_string();
    for j in exhaustive() {
        let n = j.n();
        let chi = characteristic_representation(&j, TractId::T0).map_err(err)?;
        ensure!(
            is_in_lineality(&chi).map_err(err)?,
            "χ_J for {:?}",
            j.bases()
        );
        for _ in 0..3 {
            let g = TorusElement {
                a: Unit::log(rng.gen_range(-3..4)),
                t: (0..n).map(|_| Unit::log(rng.gen_range(-3..4))).collect(),
            };
            ensure!(
                is_in_lineality(&rescale(&chi, &g).map_err(err)?).map_err(err)?,
                "rescaled χ_J for {:?}",
                j.bases()
            );
        }
        // exponent lattice spanned by the one-parameter subgroups, modulo global scaling
        let generators = std::iter::once(TorusElement {
            a: Unit::log(1),
            t: vec![Unit::log(0); n],
        })
        .chain((0..n).map(|i| TorusElement {
            a: Unit::log(0),
            t: (0..n).map(|k| Unit::log(i64::from(k == i))).collect(),
        }));
        let mut rows = Vec::new();
        for g in generators {
            let moved = rescale(&chi, &g).map_err(err)?;
            let row: Vec<i64> = moved
                .entries()
                .map(|(_, u)| {
                    u.log_value()
                        .and_then(|x| i64::try_from(x.to_integer()).ok())
                        .expect("integral exponent")
                })
                .collect();
            rows.push(row);
        }
        let orbit_rank = rank(&from_i64(&rows)) - 1;
        let expected = n - j.component_count();
        ensure!(
            orbit_rank == expected,
            "{:?}: orbit rank {orbit_rank}, n − c(J) = {expected}",
            j.bases()
        );
        ensure!(
            lineality_rank(&j) == expected,
            "{:?}: lineality_rank {}",
            j.bases(),
            lineality_rank(&j)
        );
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("LR count for (2,1),(2,1),(3,2,1)", lr_single),
        ("hive counts equal tableau counts", lr_oracle),
        (
            "Krasner Plücker relations detect M-convexity",
            plucker_exchange,
        ),
        ("foundation unit group ranks and -1", foundations),
        ("Tutte ranks", tutte_ranks),
        ("rank formula", rank_formula),
        ("bijection theorem", bijection),
        ("cross ratios generate the foundation", cross_ratios),
        ("duality and minor algebra", duality_minors),
        ("idempotency principle", idempotency),
        ("tropical equivalence of M-convex functions", t0_equivalence),
        (
            "polygrassmannian strata and Dressian constraint",
            polygrassmannian,
        ),
        ("lineality space", lineality),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(()) => println!(
                "criterion {:>2} PASS {:>9.3}s  {name}",
                k + 1,
                t.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL {:>9.3}s  {name}: {why}",
                    k + 1,
                    t.as_secs_f64()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
