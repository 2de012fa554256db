//! Seeded verification sweeps: every structural fast path is replayed
//! against the general Smith engine (or the minor oracle) over a
//! deterministic instance set. Used by `companion-smith verify` and by the
//! acceptance suite.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::matrix::poly_of_companion;
use crate::poly::{cyclotomic, gcd_with_monic, resultant, IntPolynomial};
use crate::smith::{determinantal_divisors_with_cap, smith_form};
use crate::structured::{
    alexander_polynomial, cyclotomic_companion_smith, first_determinantal_divisor,
    last_nonzero_determinantal_divisor, smith_direct_sum_split, smith_product_split,
    smith_via_reduction, torus_circulant_smith,
};

/// Outcome of one sweep: the instance count and the failing instances'
/// descriptions (empty on success).
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub name: &'static str,
    pub total: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> usize {
        self.total - self.failures.len()
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `check` over `items` with `jobs` workers; failure messages come
/// back in input order regardless of scheduling.
fn run_items<T, F>(name: &'static str, items: Vec<T>, jobs: usize, check: F) -> SweepReport
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync,
{
    let total = items.len();
    let failures = if jobs <= 1 || total <= 1 {
        items.iter().filter_map(&check).collect()
    } else {
        let next = AtomicUsize::new(0);
        let collected: Mutex<Vec<(usize, String)>> = Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(total) {
                scope.spawn(|| loop {
                    let index = next.fetch_add(1, Ordering::Relaxed);
                    if index >= total {
                        break;
                    }
                    if let Some(message) = check(&items[index]) {
                        collected.lock().unwrap().push((index, message));
                    }
                });
            }
        });
        let mut collected = collected.into_inner().unwrap();
        collected.sort_by_key(|(index, _)| *index);
        collected.into_iter().map(|(_, message)| message).collect()
    };
    SweepReport {
        name,
        total,
        failures,
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> IntPolynomial {
    let deg = rng.gen_range(0..=max_deg);
    IntPolynomial::from_coeffs(
        (0..=deg)
            .map(|_| rng.gen_range(-bound..=bound))
            .collect::<Vec<i64>>(),
    )
}

fn random_monic(rng: &mut ChaCha8Rng, min_deg: usize, max_deg: usize, bound: i64) -> IntPolynomial {
    let deg = rng.gen_range(min_deg..=max_deg);
    let mut coeffs: Vec<BigInt> = (0..deg)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    coeffs.push(BigInt::one());
    IntPolynomial::from_coeffs(coeffs)
}

/// Closed-form cyclotomic Smith forms vs. the engine, for all
/// `1 <= n <= m <= max_index`.
pub fn cyclotomic_sweep(max_index: u64, jobs: usize) -> SweepReport {
    let items: Vec<(u64, u64)> = (1..=max_index)
        .flat_map(|n| (n..=max_index).map(move |m| (m, n)))
        .collect();
    run_items("cyclotomic", items, jobs, |&(m, n)| {
        let closed = cyclotomic_companion_smith(m, n).unwrap();
        let matrix = poly_of_companion(&cyclotomic(m).unwrap(), &cyclotomic(n).unwrap()).unwrap();
        let engine = smith_form(&matrix, false);
        (closed.invariant_factors() != engine.invariant_factors()).then(|| {
            format!(
                "(m={m}, n={n}): closed {:?} vs engine {:?}",
                closed.invariant_factors(),
                engine.invariant_factors()
            )
        })
    })
}

/// Closed-form torus circulant Smith forms vs. the engine, for all coprime
/// `2 <= r < s <= max_rs` and `2 <= n <= max_n`.
pub fn dunwoody_sweep(max_rs: u64, max_n: u64, jobs: usize) -> SweepReport {
    let mut items = Vec::new();
    for r in 2..=max_rs {
        for s in r + 1..=max_rs {
            if r.gcd(&s) != 1 {
                continue;
            }
            for n in 2..=max_n {
                items.push((r, s, n));
            }
        }
    }
    run_items("dunwoody", items, jobs, |&(r, s, n)| {
        let closed = torus_circulant_smith(r, s, n).unwrap();
        let f = alexander_polynomial(r, s).unwrap();
        let g = IntPolynomial::power_minus_one(n as usize);
        let engine = smith_form(&poly_of_companion(&f, &g).unwrap(), false);
        (closed.invariant_factors() != engine.invariant_factors()).then(|| {
            format!(
                "(r={r}, s={s}, n={n}): closed {:?} vs engine {:?}",
                closed.invariant_factors(),
                engine.invariant_factors()
            )
        })
    })
}

/// Gcd-reduction Smith forms vs. the engine on seeded random `(f, g)`
/// pairs, including the rank law `rank = deg g - deg gcd(f, g)`.
pub fn reduction_sweep(instances: usize, seed: u64, jobs: usize) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(IntPolynomial, IntPolynomial)> = (0..instances)
        .map(|_| (random_poly(&mut rng, 12, 9), random_monic(&mut rng, 1, 8, 9)))
        .collect();
    run_items("theorem-c", items, jobs, |(f, g)| {
        let fast = smith_via_reduction(f, g).unwrap();
        let engine = smith_form(&poly_of_companion(f, g).unwrap(), false);
        if fast.invariant_factors() != engine.invariant_factors() {
            return Some(format!(
                "f={f}, g={g}: fast {:?} vs engine {:?}",
                fast.invariant_factors(),
                engine.invariant_factors()
            ));
        }
        let z = gcd_with_monic(f, g).unwrap();
        let expected_rank = g.degree().unwrap() - z.degree().unwrap();
        (fast.rank() != expected_rank)
            .then(|| format!("f={f}, g={g}: rank {} vs {expected_rank}", fast.rank()))
    })
}

/// `|res(F, G)|` vs. the rank-th determinantal divisor from the minor
/// oracle on seeded random pairs with `deg g <= 6`.
pub fn last_divisor_sweep(
    instances: usize,
    seed: u64,
    jobs: usize,
    minor_cap: usize,
) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(IntPolynomial, IntPolynomial)> = (0..instances)
        .map(|_| (random_poly(&mut rng, 12, 9), random_monic(&mut rng, 1, 6, 9)))
        .collect();
    run_items("corollary-d", items, jobs, move |(f, g)| {
        let matrix = poly_of_companion(f, g).unwrap();
        let rank = smith_form(&matrix, false).rank();
        match last_nonzero_determinantal_divisor(f, g) {
            Ok(value) => {
                let gammas = match determinantal_divisors_with_cap(&matrix, rank, minor_cap) {
                    Ok(gammas) => gammas,
                    Err(e) => return Some(format!("f={f}, g={g}: minor oracle refused: {e}")),
                };
                (value != gammas[rank - 1]).then(|| {
                    format!(
                        "f={f}, g={g}: |res(F, G)| = {value} vs gamma_{rank} = {}",
                        gammas[rank - 1]
                    )
                })
            }
            Err(Error::AllZeroMatrix) => {
                (rank != 0).then(|| format!("f={f}, g={g}: zero matrix claimed at rank {rank}"))
            }
            Err(e) => Some(format!("f={f}, g={g}: unexpected error {e}")),
        }
    })
}

/// `det f(C_g) = res(f, g)` on seeded random pairs with `deg g <= 7`.
pub fn determinant_resultant_sweep(instances: usize, seed: u64, jobs: usize) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(IntPolynomial, IntPolynomial)> = (0..instances)
        .map(|_| (random_poly(&mut rng, 12, 9), random_monic(&mut rng, 1, 7, 9)))
        .collect();
    run_items("eq1-resultant", items, jobs, |(f, g)| {
        let det = poly_of_companion(f, g).unwrap().determinant().unwrap();
        let res = resultant(f, g).unwrap();
        (det != res).then(|| format!("f={f}, g={g}: det {det} vs res {res}"))
    })
}

/// The content of `f mod g` vs. `gamma_1` from the minor oracle on seeded
/// random pairs with `deg g <= 6`.
pub fn first_divisor_sweep(
    instances: usize,
    seed: u64,
    jobs: usize,
    minor_cap: usize,
) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(IntPolynomial, IntPolynomial)> = (0..instances)
        .map(|_| (random_poly(&mut rng, 12, 9), random_monic(&mut rng, 1, 6, 9)))
        .collect();
    run_items("lemma-gamma1", items, jobs, move |(f, g)| {
        let fast = first_determinantal_divisor(f, g).unwrap();
        let matrix = poly_of_companion(f, g).unwrap();
        let gamma1 = match determinantal_divisors_with_cap(&matrix, 1, minor_cap) {
            Ok(mut gammas) => gammas.remove(0),
            Err(e) => return Some(format!("f={f}, g={g}: minor oracle refused: {e}")),
        };
        (fast != gamma1).then(|| format!("f={f}, g={g}: cont {fast} vs gamma_1 {gamma1}"))
    })
}

enum SplitInstance {
    Product {
        f1: IntPolynomial,
        f2: IntPolynomial,
        g: IntPolynomial,
        coprime: bool,
    },
    DirectSum {
        f: IntPolynomial,
        g1: IntPolynomial,
        g2: IntPolynomial,
        coprime: bool,
    },
}

/// Factorization splittings vs. the direct engine. Draws candidates until
/// `instances` of them satisfy the coprime-resultant hypothesis; candidates
/// that violate it are kept as instances that must raise
/// [`Error::ResultantsNotCoprime`].
pub fn factor_split_sweep(instances: usize, seed: u64, jobs: usize) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();
    let mut accepted = 0usize;
    let mut product_turn = true;
    while accepted < instances {
        if product_turn {
            let f1 = random_poly(&mut rng, 5, 9);
            let f2 = random_poly(&mut rng, 5, 9);
            let g = random_monic(&mut rng, 1, 5, 9);
            let coprime = resultant(&f1, &g)
                .unwrap()
                .gcd(&resultant(&f2, &g).unwrap())
                .is_one();
            accepted += coprime as usize;
            items.push(SplitInstance::Product { f1, f2, g, coprime });
        } else {
            let f = random_poly(&mut rng, 6, 9);
            let g1 = random_monic(&mut rng, 1, 4, 9);
            let g2 = random_monic(&mut rng, 1, 4, 9);
            let coprime = resultant(&f, &g1)
                .unwrap()
                .gcd(&resultant(&f, &g2).unwrap())
                .is_one();
            accepted += coprime as usize;
            items.push(SplitInstance::DirectSum { f, g1, g2, coprime });
        }
        product_turn = !product_turn;
    }
    run_items("factor-splits", items, jobs, |item| match item {
        SplitInstance::Product { f1, f2, g, coprime } => {
            let split = smith_product_split(f1, f2, g);
            if !*coprime {
                return (!matches!(split, Err(Error::ResultantsNotCoprime { .. }))).then(|| {
                    format!("f1={f1}, f2={f2}, g={g}: expected ResultantsNotCoprime")
                });
            }
            let split = split.unwrap();
            let engine = smith_form(&poly_of_companion(&(f1 * f2), g).unwrap(), false);
            (split.invariant_factors() != engine.invariant_factors()).then(|| {
                format!(
                    "f1={f1}, f2={f2}, g={g}: split {:?} vs engine {:?}",
                    split.invariant_factors(),
                    engine.invariant_factors()
                )
            })
        }
        SplitInstance::DirectSum { f, g1, g2, coprime } => {
            let split = smith_direct_sum_split(f, g1, g2);
            if !*coprime {
                return (!matches!(split, Err(Error::ResultantsNotCoprime { .. }))).then(|| {
                    format!("f={f}, g1={g1}, g2={g2}: expected ResultantsNotCoprime")
                });
            }
            let split = split.unwrap();
            let engine = smith_form(&poly_of_companion(f, &(g1 * g2)).unwrap(), false);
            (split.invariant_factors() != engine.invariant_factors()).then(|| {
                format!(
                    "f={f}, g1={g1}, g2={g2}: split {:?} vs engine {:?}",
                    split.invariant_factors(),
                    engine.invariant_factors()
                )
            })
        }
    })
}

/// Default scales for the named suites, matching the acceptance criteria.
pub mod defaults {
    pub const CYCLOTOMIC_MAX_INDEX: u64 = 36;
    pub const DUNWOODY_MAX_RS: u64 = 9;
    pub const DUNWOODY_MAX_N: u64 = 12;
    pub const REDUCTION_INSTANCES: usize = 500;
    pub const LAST_DIVISOR_INSTANCES: usize = 500;
    pub const DET_RES_INSTANCES: usize = 500;
    pub const FIRST_DIVISOR_INSTANCES: usize = 200;
    pub const FACTOR_SPLIT_INSTANCES: usize = 100;
}

/// Runs one named suite at its configured scale. `max` rescales the swept
/// bound (cyclotomic, dunwoody) or the instance count (seeded suites).
pub fn run_suite(
    name: &str,
    max: Option<u64>,
    seed: u64,
    jobs: usize,
    minor_cap: usize,
) -> Option<Vec<SweepReport>> {
    let scaled = |default: usize| max.map(|m| m as usize).unwrap_or(default);
    let report = match name {
        "theorem-c" => reduction_sweep(scaled(defaults::REDUCTION_INSTANCES), seed, jobs),
        "corollary-d" => last_divisor_sweep(
            scaled(defaults::LAST_DIVISOR_INSTANCES),
            seed,
            jobs,
            minor_cap,
        ),
        "cyclotomic" => cyclotomic_sweep(max.unwrap_or(defaults::CYCLOTOMIC_MAX_INDEX), jobs),
        "dunwoody" => dunwoody_sweep(
            max.unwrap_or(defaults::DUNWOODY_MAX_RS),
            defaults::DUNWOODY_MAX_N,
            jobs,
        ),
        "eq1-resultant" => {
            determinant_resultant_sweep(scaled(defaults::DET_RES_INSTANCES), seed, jobs)
        }
        "factor-splits" => factor_split_sweep(scaled(defaults::FACTOR_SPLIT_INSTANCES), seed, jobs),
        "lemma-gamma1" => first_divisor_sweep(
            scaled(defaults::FIRST_DIVISOR_INSTANCES),
            seed,
            jobs,
            minor_cap,
        ),
        "all" => {
            return Some(vec![
                reduction_sweep(defaults::REDUCTION_INSTANCES, seed, jobs),
                last_divisor_sweep(defaults::LAST_DIVISOR_INSTANCES, seed, jobs, minor_cap),
                cyclotomic_sweep(defaults::CYCLOTOMIC_MAX_INDEX, jobs),
                dunwoody_sweep(defaults::DUNWOODY_MAX_RS, defaults::DUNWOODY_MAX_N, jobs),
                determinant_resultant_sweep(defaults::DET_RES_INSTANCES, seed, jobs),
                factor_split_sweep(defaults::FACTOR_SPLIT_INSTANCES, seed, jobs),
                first_divisor_sweep(defaults::FIRST_DIVISOR_INSTANCES, seed, jobs, minor_cap),
            ]);
        }
        _ => return None,
    };
    Some(vec![report])
}

/// The suite names accepted by [`run_suite`].
pub const SUITE_NAMES: [&str; 8] = [
    "theorem-c",
    "corollary-d",
    "cyclotomic",
    "dunwoody",
    "eq1-resultant",
    "factor-splits",
    "lemma-gamma1",
    "all",
];
