//! Exit criteria. Each criterion prints one PASS/FAIL line; the process fails
//! if any criterion fails.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twoside::campaign::trial_seed;
use twoside::digital::{DigitalValue, Finite, Infinity};
use twoside::digital_kex::{attack as digital_attack, DigitalExchange};
use twoside::field::{gauss_solve, rank, FieldCtx, FpMatrix, PrimeField};
use twoside::matrix::{Circulant, Matrix};
use twoside::solver::LinearSystem;
use twoside::twisted::{Dihedral, Subspace, TwistedCtx, TwistedElement};
use twoside::twisted_kex::{attack as twisted_attack, attack_system, attack_with_order, HMode, TwistedExchange};

const DIGITAL_NS: [usize; 5] = [2, 3, 4, 6, 8];
const TWISTED_GRID: [(u64, usize, usize); 5] = [(2, 2, 3), (3, 2, 4), (5, 1, 6), (2, 3, 5), (7, 1, 8)];
const INSTANCES: usize = 100;
const ENTRY_BOUND: u64 = 1_000_000_000;
const TIME_LIMIT: Duration = Duration::from_secs(1);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

// 1
fn digital_attack_success() -> Outcome {
    let mut ok = 0;
    let mut slowest = Duration::ZERO;
    for (point, &n) in DIGITAL_NS.iter().enumerate() {
        for trial in 0..INSTANCES {
            let ex = DigitalExchange::seeded(n, ENTRY_BOUND, trial_seed(1, point, trial)).unwrap();
            let start = Instant::now();
            let result = digital_attack(&ex.params, &ex.alice.pk, &ex.bob.pk);
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            if matches!(&result, Ok(a) if a.key == ex.alice_key && a.unknowns == n * n && a.equations == n * n)
                && elapsed < TIME_LIMIT
            {
                ok += 1;
            }
        }
    }
    let total = DIGITAL_NS.len() * INSTANCES;
    outcome(ok == total, format!("{ok}/{total} keys recovered, slowest {slowest:.2?}"))
}

// 2
fn twisted_attack_success() -> Outcome {
    let mut ok = 0;
    let mut slowest = Duration::ZERO;
    for (point, &(p, n, m)) in TWISTED_GRID.iter().enumerate() {
        for trial in 0..INSTANCES {
            let ex = TwistedExchange::seeded(p, n, m, trial_seed(2, point, trial), HMode::Full).unwrap();
            let start = Instant::now();
            let result = twisted_attack(&ex.params, &ex.alice.pk, &ex.bob.pk);
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            if matches!(&result, Ok(a) if a.key == ex.bob_key) && elapsed < TIME_LIMIT {
                ok += 1;
            }
        }
    }
    let total = TWISTED_GRID.len() * INSTANCES;
    outcome(ok == total, format!("{ok}/{total} keys recovered, slowest {slowest:.2?}"))
}

// 3
fn small_value(rng: &mut ChaCha8Rng) -> DigitalValue {
    if rng.gen_ratio(1, 20) {
        Infinity
    } else {
        Finite(rng.gen_range(0..=200))
    }
}

fn solver_vs_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let domain: Vec<DigitalValue> = (0..=200).map(Finite).chain([Infinity]).collect();
    let systems = 1200;
    let mut discrepancies = 0;
    let mut solvable = 0;
    for s in 0..systems {
        let len = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=2);
        let columns: Vec<Vec<_>> = (0..k).map(|_| (0..len).map(|_| small_value(&mut rng)).collect()).collect();
        // half the systems have a planted solution, the rest a random target
        let target: Vec<_> = if s % 2 == 0 {
            let z: Vec<_> = (0..k).map(|_| small_value(&mut rng)).collect();
            (0..len)
                .map(|l| (0..k).fold(Finite(0), |acc, i| acc.add(z[i].mul(columns[i][l]))))
                .collect()
        } else {
            (0..len).map(|_| small_value(&mut rng)).collect()
        };
        let sys = LinearSystem::new(columns.clone(), target.clone()).unwrap();
        let candidate = sys.maximal_solution();

        // exhaustive search over the bounded domain, plus the candidate's own values
        let mut values = domain.clone();
        values.extend(sys.candidate());
        let satisfies = |z: &[DigitalValue]| {
            (0..len).all(|l| (0..k).fold(Finite(0), |acc, i| acc.add(z[i].mul(columns[i][l]))) == target[l])
        };
        let mut found = Vec::new();
        if k == 1 {
            for &a in &values {
                if satisfies(&[a]) {
                    found.push(vec![a]);
                }
            }
        } else {
            for &a in &values {
                for &b in &values {
                    if satisfies(&[a, b]) {
                        found.push(vec![a, b]);
                    }
                }
            }
        }
        let agrees = match &candidate {
            None => found.is_empty(),
            Some(z) => {
                solvable += 1;
                satisfies(z) && !found.is_empty() && found.iter().all(|f| f.iter().zip(z).all(|(fi, zi)| fi.leq_w(*zi)))
            }
        };
        if !agrees {
            discrepancies += 1;
        }
    }
    outcome(
        discrepancies == 0,
        format!("{systems} systems ({solvable} solvable), {discrepancies} discrepancies"),
    )
}

// 4
fn with_digit_sum(rng: &mut ChaCha8Rng, sum: u32) -> u64 {
    // spread `sum` over up to 18 decimal digits
    let mut digits = [0u64; 18];
    let mut left = sum.min(18 * 9);
    while left > 0 {
        let slot = rng.gen_range(0..18);
        if digits[slot] < 9 {
            digits[slot] += 1;
            left -= 1;
        }
    }
    digits.iter().fold(0, |acc, d| acc * 10 + d)
}

fn random_w(rng: &mut ChaCha8Rng) -> DigitalValue {
    match rng.gen_range(0..10) {
        0 => Infinity,
        1..=4 => Finite(rng.gen_range(0..1000)),
        _ => Finite(rng.gen()),
    }
}

fn semiring_axioms(rng: &mut ChaCha8Rng) -> usize {
    let mut failures = 0;
    for i in 0..10_000 {
        let (a, b, c) = match i % 3 {
            0 => (random_w(rng), random_w(rng), random_w(rng)),
            1 => {
                let s = rng.gen_range(0..40);
                (
                    Finite(with_digit_sum(rng, s)),
                    Finite(with_digit_sum(rng, s)),
                    Finite(with_digit_sum(rng, s)),
                )
            }
            _ => {
                let s = rng.gen_range(0..40);
                (Finite(with_digit_sum(rng, s)), Finite(with_digit_sum(rng, s)), random_w(rng))
            }
        };
        let checks = [
            a.add(b).add(c) == a.add(b.add(c)),
            a.mul(b).mul(c) == a.mul(b.mul(c)),
            a.add(b) == b.add(a),
            a.mul(b) == b.mul(a),
            a.mul(b.add(c)) == a.mul(b).add(a.mul(c)),
            b.add(c).mul(a) == b.mul(a).add(c.mul(a)),
            a.add(a) == a && a.mul(a) == a,
            a.add(Finite(0)) == a && a.mul(Infinity) == a,
            a.mul(Finite(0)) == Finite(0) && a.add(Infinity) == Infinity,
            a.mul(b).leq_w(a) && a.mul(b).leq_w(b),
            a.add(b) == a || a.add(b) == b,
            a.mul(b) == a || a.mul(b) == b,
            a.leq_w(a),
            !(a.leq_w(b) && b.leq_w(a)) || a == b,
            !(a.leq_w(b) && b.leq_w(c)) || a.leq_w(c),
            a.leq_w(b) == (a.add(b) == b),
        ];
        failures += checks.iter().filter(|ok| !**ok).count();
    }
    failures
}

fn circulant_commutativity(rng: &mut ChaCha8Rng) -> usize {
    (0..1000)
        .filter(|_| {
            let n = rng.gen_range(1..=8);
            let mut draw = || Circulant::new((0..n).map(|_| random_w(rng)).collect()).unwrap().expand();
            let (a, b): (Matrix<DigitalValue>, _) = (draw(), draw());
            a.mul(&b).unwrap() != b.mul(&a).unwrap()
        })
        .count()
}

fn grid_fields() -> Vec<FieldCtx> {
    TWISTED_GRID.iter().map(|&(p, n, _)| FieldCtx::new(p, n, 17).unwrap()).collect()
}

fn cocycle_axioms() -> usize {
    let mut failures = 0;
    for field in grid_fields() {
        for m in 1..=8 {
            let ctx = TwistedCtx::new(field.clone(), m).unwrap();
            let k = ctx.field();
            let one = Dihedral::identity(m);
            for g in Dihedral::all(m) {
                if ctx.cocycle(g, one) != k.one() || ctx.cocycle(one, g) != k.one() {
                    failures += 1;
                }
                for h in Dihedral::all(m) {
                    let gh = g.mul(h).unwrap();
                    for l in Dihedral::all(m) {
                        let lhs = k.mul(&ctx.cocycle(g, h), &ctx.cocycle(gh, l));
                        let rhs = k.mul(&ctx.cocycle(g, h.mul(l).unwrap()), &ctx.cocycle(h, l));
                        if lhs != rhs {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    failures
}

fn grid_contexts() -> Vec<TwistedCtx> {
    TWISTED_GRID
        .iter()
        .map(|&(p, n, m)| TwistedCtx::new(FieldCtx::new(p, n, 23).unwrap(), m).unwrap())
        .collect()
}

fn random_element(ctx: &TwistedCtx, rng: &mut ChaCha8Rng) -> TwistedElement {
    ctx.element((0..2 * ctx.m()).map(|_| ctx.field().random(rng)).collect()).unwrap()
}

fn ring_axioms(rng: &mut ChaCha8Rng) -> usize {
    let ctxs = grid_contexts();
    (0..1000)
        .filter(|i| {
            let ctx = &ctxs[i % ctxs.len()];
            let (a, b, c) = (random_element(ctx, rng), random_element(ctx, rng), random_element(ctx, rng));
            let assoc = ctx.mul(&ctx.mul(&a, &b).unwrap(), &c).unwrap() == ctx.mul(&a, &ctx.mul(&b, &c).unwrap()).unwrap();
            let bc = ctx.add(&b, &c).unwrap();
            let left = ctx.mul(&a, &bc).unwrap()
                == ctx.add(&ctx.mul(&a, &b).unwrap(), &ctx.mul(&a, &c).unwrap()).unwrap();
            let right = ctx.mul(&bc, &a).unwrap()
                == ctx.add(&ctx.mul(&b, &a).unwrap(), &ctx.mul(&c, &a).unwrap()).unwrap();
            !(assoc && left && right)
        })
        .count()
}

fn commutation_bullets(rng: &mut ChaCha8Rng) -> [usize; 3] {
    let ctxs = grid_contexts();
    let mut failures = [0; 3];
    for i in 0..1000 {
        let ctx = &ctxs[i % ctxs.len()];
        let mut seed = || rng.gen::<u64>();
        let mul = |a: &TwistedElement, b: &TwistedElement| ctx.mul(a, b).unwrap();
        let adj = |a: &TwistedElement| ctx.adjoint(a).unwrap();

        let (h1, h2) = (ctx.sample(Subspace::R1, seed()), ctx.sample(Subspace::R1, seed()));
        if mul(&h1, &h2) != mul(&h2, &h1) {
            failures[0] += 1;
        }
        let (h1, h2) = (ctx.sample(Subspace::A2, seed()), ctx.sample(Subspace::A2, seed()));
        if mul(&h1, &adj(&h2)) != mul(&h2, &adj(&h1)) || mul(&adj(&h1), &h2) != mul(&adj(&h2), &h1) {
            failures[1] += 1;
        }
        let (h1, h2) = (ctx.sample(Subspace::A1, seed()), ctx.sample(Subspace::A2, seed()));
        if mul(&h1, &h2) != mul(&h2, &adj(&h1)) {
            failures[2] += 1;
        }
    }
    failures
}

fn algebra_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let semiring = semiring_axioms(&mut rng);
    let circulant = circulant_commutativity(&mut rng);
    let cocycle = cocycle_axioms();
    let ring = ring_axioms(&mut rng);
    let [b1, b2, b3] = commutation_bullets(&mut rng);
    let total = semiring + circulant + cocycle + ring + b1 + b2 + b3;
    outcome(
        total == 0,
        format!(
            "failures: semiring {semiring}, circulant {circulant}, cocycle {cocycle}, ring {ring}, \
             R1 commute {b1}, A2 adjoint swap {b2}, A1/A2 swap {b3}"
        ),
    )
}

// 5
fn protocol_correctness() -> Outcome {
    let mut agree = 0;
    let mut total = 0;
    for (point, &n) in DIGITAL_NS.iter().enumerate() {
        for trial in 0..INSTANCES {
            total += 1;
            agree += usize::from(DigitalExchange::seeded(n, ENTRY_BOUND, trial_seed(5, point, trial)).unwrap().keys_agree());
        }
    }
    for (point, &(p, n, m)) in TWISTED_GRID.iter().enumerate() {
        for mode in [HMode::Full, HMode::Uniform, HMode::ZeroDivisor] {
            for trial in 0..INSTANCES {
                total += 1;
                let seed = trial_seed(50 + mode as u64, point, trial);
                agree += usize::from(TwistedExchange::seeded(p, n, m, seed, mode).unwrap().keys_agree());
            }
        }
    }
    outcome(agree == total, format!("{agree}/{total} exchanges agree"))
}

// 6
fn solution_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut instances = 0;
    let mut good = 0;
    let mut keys_ok = 0;
    for (point, &(p, n, m)) in TWISTED_GRID.iter().enumerate() {
        for trial in 0..8 {
            instances += 1;
            let ex = TwistedExchange::seeded(p, n, m, trial_seed(6, point, trial), HMode::Full).unwrap();
            let base = twisted_attack(&ex.params, &ex.alice.pk, &ex.bob.pk).unwrap();
            let (mat, rhs) = attack_system(&ex.params, &ex.alice.pk).unwrap();
            let fp = ex.params.ctx.field().prime_field();
            let mut order: Vec<usize> = (0..mat.cols()).collect();
            order.reverse();
            let mut distinct = false;
            let mut same_key = true;
            for _ in 0..4 {
                let alt = attack_with_order(&ex.params, &ex.alice.pk, &ex.bob.pk, Some(&order)).unwrap();
                same_key &= alt.key == base.key && alt.key == ex.bob_key && mat.mul_vec(fp, &alt.z).unwrap() == rhs;
                distinct |= alt.z != base.z;
                order.shuffle(&mut rng);
            }
            keys_ok += usize::from(same_key);
            if distinct && same_key {
                good += 1;
            }
        }
    }
    outcome(
        keys_ok == instances && good >= 20,
        format!("{good}/{instances} instances with a distinct solution, {keys_ok}/{instances} with identical key (need 20)"),
    )
}

// 7
fn gaussian_solver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut residual_failures = 0;
    for i in 0..10_000 {
        let p = [2u64, 3, 5, 7][i % 4];
        let fp = PrimeField::new(p).unwrap();
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let a = FpMatrix::from_rows((0..r).map(|_| (0..c).map(|_| rng.gen_range(0..p as u32)).collect()).collect()).unwrap();
        let z: Vec<u32> = (0..c).map(|_| rng.gen_range(0..p as u32)).collect();
        let b = a.mul_vec(fp, &z).unwrap();
        match gauss_solve(fp, &a, &b).unwrap() {
            Some(sol) if a.mul_vec(fp, &sol).unwrap() == b => {}
            _ => residual_failures += 1,
        }
    }

    let mut detection_failures = 0;
    let mut checked = 0;
    for p in [2u64, 3] {
        let fp = PrimeField::new(p).unwrap();
        for _ in 0..500 {
            let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
            let a = FpMatrix::from_rows((0..r).map(|_| (0..c).map(|_| rng.gen_range(0..p as u32)).collect()).collect()).unwrap();
            let b: Vec<u32> = (0..r).map(|_| rng.gen_range(0..p as u32)).collect();
            let exists = (0..(p as u32).pow(c as u32)).any(|code| {
                let z: Vec<u32> = (0..c).map(|j| code / (p as u32).pow(j as u32) % p as u32).collect();
                a.mul_vec(fp, &z).unwrap() == b
            });
            let mut augmented = FpMatrix::zeros(r, c + 1);
            for (i, &bi) in b.iter().enumerate() {
                for j in 0..c {
                    augmented.set(i, j, a.get(i, j));
                }
                augmented.set(i, c, bi);
            }
            let rank_gap = rank(fp, &a) < rank(fp, &augmented);
            let reported = gauss_solve(fp, &a, &b).unwrap();
            checked += 1;
            if reported.is_some() != exists || rank_gap == exists {
                detection_failures += 1;
            }
        }
    }
    outcome(
        residual_failures == 0 && detection_failures == 0,
        format!(
            "10000 consistent systems, {residual_failures} non-zero residuals; \
             {checked} exhaustive consistency checks, {detection_failures} disagreements"
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 digital attack success (n in {2,3,4,6,8}, 100 each, <1s)", digital_attack_success),
        ("2 twisted attack success (5 grid points, 100 each, <1s)", twisted_attack_success),
        ("3 maximal solution vs exhaustive oracle", solver_vs_oracle),
        ("4 algebra axiom suites", algebra_axioms),
        ("5 protocol correctness K_A = K_B", protocol_correctness),
        ("6 solution independence of the recovered key", solution_independence),
        ("7 Gaussian elimination over F_p", gaussian_solver),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = run();
        let verdict = if result.passed { "PASS" } else { "FAIL" };
        println!("[{verdict}] criterion {name}: {} ({:.2?})", result.detail, start.elapsed());
        failed += usize::from(!result.passed);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
