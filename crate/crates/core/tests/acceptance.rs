//! Acceptance criteria, one line per criterion. Exits non-zero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lightsum_core::decimal::{pow10, Decimal};
use lightsum_core::*;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rat(s: &str) -> BigRational {
    Decimal::parse(s).unwrap().to_rational()
}

fn random_instance(rng: &mut ChaCha8Rng, n_max: usize, a_max: u64, b_slack: u64) -> Instance {
    let n = rng.random_range(1..=n_max);
    let values: Vec<u64> = (0..n).map(|_| rng.random_range(1..=a_max)).collect();
    let sum: u64 = values.iter().sum();
    let target = rng.random_range(0..=sum + b_slack);
    Instance::new(values, target).unwrap()
}

fn simulate(inst: &Instance, params: &PhysicalParams) -> DetectionReport {
    let profile = propagate(&compile(inst, params).unwrap());
    detect(&profile, inst, params).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0001);
    let params = PhysicalParams::default();
    let (mut yes, mut total) = (0, 0);
    for i in 0..500 {
        let inst = random_instance(&mut rng, 20, 10_000, 10);
        let sim = simulate(&inst, &params).verdict;
        let dp = solve_dp(&inst, false).map_err(|e| e.to_string())?.verdict;
        let brute = solve_bruteforce(&inst).map_err(|e| e.to_string())?.verdict;
        ensure!(
            sim == dp && sim == brute,
            "instance {i} ({:?}, B={}): simulator {sim}, dp {dp}, brute {brute}",
            inst.values(),
            inst.target()
        );
        yes += sim.is_yes() as u32;
        total += 1;
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}, limit 60 s");
    Ok(format!(
        "{total}/{total} agree ({yes} YES) in {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn figure_four() -> Outcome {
    let params = PhysicalParams::default();
    let third_node = propagate(&compile(&Instance::new(vec![1, 2], 0).unwrap(), &params).unwrap());
    let got: Vec<(u128, BigUint)> = third_node.iter().collect();
    let want: Vec<(u128, BigUint)> = [2, 3, 4, 5].into_iter().map(|t| (t, BigUint::one())).collect();
    ensure!(got == want, "node-3 profile {got:?}");

    let inst = Instance::new(vec![1, 2, 4, 8], 0).unwrap();
    let dest = propagate(&compile(&inst, &params).unwrap());
    let got: Vec<(u128, BigUint)> = dest.iter().collect();
    let want: Vec<(u128, BigUint)> = (4..=19).map(|t| (t, BigUint::one())).collect();
    ensure!(got == want, "destination profile for {{1,2,4,8}}: {got:?}");
    Ok("{2:1,3:1,4:1,5:1} and 16 unit entries at 4..=19".into())
}

fn profile_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);
    for i in 0..100 {
        let inst = random_instance(&mut rng, 16, 10_000, 0);
        let k: u64 = rng.random_range(1..=10);
        let params = PhysicalParams::default().with_offset_k(k);
        let p = propagate(&compile(&inst, &params).unwrap());
        let (n, k, sigma) = (inst.len() as u128, k as u128, inst.sum());
        ensure!(
            p.total_count() == BigUint::one() << inst.len(),
            "instance {i}: count not 2^n"
        );
        ensure!(
            p.count_at(n * k) == BigUint::one(),
            "instance {i}: empty-set count"
        );
        ensure!(
            p.count_at(sigma + n * k) == BigUint::one(),
            "instance {i}: full-set count"
        );
        for (t, c) in p.iter() {
            ensure!(
                p.count_at(sigma + 2 * n * k - t) == c,
                "instance {i}: asymmetric at t={t}"
            );
        }
    }
    Ok("100 instances: conservation, complement symmetry, unit extremes".into())
}

fn size_bounds() -> Outcome {
    let params = PhysicalParams {
        delay_quantum_s: pow10(-12),
        light_speed_m_s: rat("3e8"),
        velocity_factor: BigRational::one(),
        ..PhysicalParams::default()
    };
    ensure!(
        params.quantum_length_m() == rat("0.0003"),
        "quantum {}",
        params.quantum_length_m()
    );
    let three_km = max_encodable(&rat("3000"), &params).map_err(|e| e.to_string())?;
    let three_hundred_km = max_encodable(&rat("300000"), &params).map_err(|e| e.to_string())?;
    ensure!(three_km == BigUint::from(10u64.pow(7)), "3 km -> {three_km}");
    ensure!(
        three_hundred_km == BigUint::from(10u64.pow(9)),
        "300 km -> {three_hundred_km}"
    );
    Ok(format!("3 km -> {three_km}, 300 km -> {three_hundred_km}"))
}

fn power_model() -> Outcome {
    for t in ["1", "0.9", "0.5"] {
        let params = PhysicalParams {
            source_power_w: BigRational::one(),
            splitter_transmission: rat(t),
            ..PhysicalParams::default()
        };
        let factor = rat(t) / BigRational::from_integer(BigInt::from(2));
        for n in 0..80 {
            ensure!(
                per_ray_power(n + 1, &params) == per_ray_power(n, &params) * &factor,
                "transmission {t}, stage {n}"
            );
        }
    }
    let params = PhysicalParams {
        source_power_w: BigRational::one(),
        detection_threshold_w: BigRational::one(),
        detector_gain: pow10(8),
        splitter_transmission: BigRational::one(),
        ..PhysicalParams::default()
    };
    let n = max_detectable_n(&params);
    ensure!(n == 26, "max_detectable_n = {n}");
    // The boundary itself: a gain of exactly 2^26 still reaches 26 stages, one less does not.
    let at = |gain: u64| {
        max_detectable_n(&PhysicalParams {
            detector_gain: BigRational::from_integer(gain.into()),
            ..params.clone()
        })
    };
    ensure!(
        at(1 << 26) == 26 && at((1 << 26) - 1) == 25 && at((1 << 27) - 1) == 26,
        "boundary gains"
    );
    Ok("per-stage factor exact for 80 stages; max_detectable_n(10^8) = 26".into())
}

fn epsilon_device() -> Outcome {
    let inst = Instance::new(vec![5, 9, 10, 11], 8).unwrap();
    let demo =
        epsilon_false_positive_demo(&inst, 1, &PhysicalParams::default()).map_err(|e| e.to_string())?;
    let dp = solve_dp(&inst, false).unwrap().verdict;
    let brute = solve_bruteforce(&inst).unwrap().verdict;
    ensure!(
        demo.epsilon_verdict == Verdict::Yes,
        "epsilon device said {}",
        demo.epsilon_verdict
    );
    ensure!(
        demo.offset_verdict == Verdict::No,
        "offset device said {}",
        demo.offset_verdict
    );
    ensure!(
        dp == Verdict::No && brute == Verdict::No,
        "oracles said {dp}/{brute}"
    );
    Ok("epsilon YES at t=8 (spurious), offset NO, dp NO, brute NO".into())
}

fn perturbation() -> Outcome {
    let params = PhysicalParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
    let mut suite = Vec::new();
    for _ in 0..20 {
        suite.push(random_instance(&mut rng, 10, 40, 3));
    }

    let mut zero_total = 0;
    let mut bounded_total = 0;
    for (i, inst) in suite.iter().enumerate() {
        let layout = compile(inst, &params).unwrap();
        let zero = perturb_and_classify(
            &layout,
            inst,
            &params,
            &BigRational::from_integer(0.into()),
            1000,
            i as u64,
        )
        .map_err(|e| e.to_string())?;
        ensure!(zero.misclassified == 0, "zero error, instance {i}: {zero:?}");
        zero_total += zero.trials;

        let n = inst.len() as i64;
        let bound = params.quantum_length_m() / BigRational::from_integer((2 * n).into())
            * BigRational::new(999.into(), 1000.into());
        let cut = perturb_and_classify(&layout, inst, &params, &bound, 1000, 1000 + i as u64)
            .map_err(|e| e.to_string())?;
        ensure!(
            cut.misclassified == 0,
            "sub-half-quantum error, instance {i}: {cut:?}"
        );
        bounded_total += cut.trials;
    }

    // Every cable p·Δ + 0.4Δ long: subset {3} arrives at 7.2 quanta, inside
    // the window around B + n·k = 7 although no subset sums to 4.
    let crafted = Instance::new(vec![2, 3, 7], 4).unwrap();
    let layout = compile(&crafted, &params).unwrap();
    let q = params.quantum_length_m() * rat("0.4");
    let r = perturb_and_classify_with_offset(
        &layout,
        &crafted,
        &params,
        &BigRational::from_integer(0.into()),
        &q,
        1000,
        7,
    )
    .map_err(|e| e.to_string())?;
    ensure!(r.misclassified >= 1, "crafted layout: {r:?}");
    Ok(format!(
        "0/{zero_total} at zero error, 0/{bounded_total} below quantum/(2n), crafted {}/{} misclassified",
        r.misclassified, r.trials
    ))
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);
    let base = PhysicalParams::default();
    let factors = [rat("1"), rat("0.6"), rat("1e-7")];
    for i in 0..50 {
        let inst = random_instance(&mut rng, 12, 500, 5);
        let reference = simulate(&inst, &base).verdict;
        for k in [1u64, 5, 1000] {
            for f in &factors {
                let params =
                    slow_light_rescale(&base.clone().with_offset_k(k), f).map_err(|e| e.to_string())?;
                let r = simulate(&inst, &params);
                ensure!(
                    r.verdict == reference,
                    "instance {i}, k={k}, factor {f}: verdict changed"
                );
                let moment = inst.target() as u128 + inst.len() as u128 * k as u128;
                ensure!(
                    r.checked_moment == moment,
                    "instance {i}: moment {}",
                    r.checked_moment
                );

                let layout = compile(&inst, &params).unwrap();
                let reference_lengths = cable_lengths(&layout, &base.clone().with_offset_k(k));
                for (scaled, unscaled) in cable_lengths(&layout, &params).iter().zip(&reference_lengths) {
                    ensure!(
                        *scaled == unscaled * f,
                        "instance {i}: lengths did not scale by {f}"
                    );
                }
            }
        }
    }
    let slow = slow_light_rescale(&base, &rat("1e-7")).unwrap();
    let bound = max_encodable(&rat("3000"), &slow).unwrap().to_u64().unwrap();
    Ok(format!(
        "50 instances x 3 offsets x 3 speeds unchanged; 3 km now encodes {bound}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 figure-4 profiles", figure_four),
        ("3 profile invariants", profile_invariants),
        ("4 cable size bounds", size_bounds),
        ("5 power model", power_model),
        ("6 epsilon device", epsilon_device),
        ("7 perturbation robustness", perturbation),
        ("8 offset and slow-light invariance", invariance),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
