//! Acceptance checks. Runs without the libtest harness so each criterion
//! prints exactly one PASS/FAIL line, timed on its own.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use choquet_dist::asymptotic::{alpha, beta2, mixture_approx, power_weight_game, QuadOptions, WeightFunction};
use choquet_dist::divided::{tp_dd_distinct, tp_minus_dd, tp_plus_dd, Truncation};
use choquet_dist::exponential::{exp_moments, ExponentialChoquetDist};
use choquet_dist::montecarlo::{ks_band_1pct, sample};
use choquet_dist::order_stats::{DavidJohnson, NormalQuantile, UniformMoments, UniformQuantile};
use choquet_dist::quadrature::integrate_with_breaks;
use choquet_dist::rng::{open_unit, stream};
use choquet_dist::uniform::{mean_closed_form, raw_moment, second_moment_closed_form};
use choquet_dist::{
    moments_report, orness, second_raw_moment, Law, Limits, SeriesOrder, SetFunction,
    UniformChoquetDist,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn example() -> SetFunction {
    SetFunction::make_game(
        3,
        [
            (vec![1], 0.1),
            (vec![2], 0.2),
            (vec![3], 0.55),
            (vec![1, 2], 0.7),
            (vec![1, 3], 0.8),
            (vec![2, 3], 0.6),
            (vec![1, 2, 3], 1.0),
        ],
        &Limits::default(),
    )
    .unwrap()
}

fn example_uniform() -> Outcome {
    let g = example();
    let limits = Limits::default();
    let m1 = raw_moment(&g, 1, &limits).unwrap();
    let m2 = raw_moment(&g, 2, &limits).unwrap();
    let sd = (m2 - m1 * m1).sqrt();
    let c1 = mean_closed_form(&g);
    let csd = (second_moment_closed_form(&g) - c1 * c1).sqrt();
    Outcome {
        pass: within(m1, 0.495, 0.001)
            && within(sd, 0.183, 0.001)
            && within(c1, 0.495, 0.001)
            && within(csd, 0.183, 0.001),
        detail: format!("mean {m1:.6} sd {sd:.6} (closed form {c1:.6}, {csd:.6}); want 0.495 ± 0.001, 0.183 ± 0.001"),
    }
}

fn example_exponential() -> Outcome {
    let r = exp_moments(&example()).unwrap();
    Outcome {
        pass: within(r.mean, 0.963, 0.001) && within(r.sd, 0.624, 0.001),
        detail: format!("mean {:.6} sd {:.6}; want 0.963 ± 0.001, 0.624 ± 0.001", r.mean, r.sd),
    }
}

fn example_normal() -> Outcome {
    let dj = DavidJohnson::new(&NormalQuantile, 3, SeriesOrder::Third).unwrap();
    let r = moments_report(&example(), &dj).unwrap();
    Outcome {
        pass: within(r.mean, -0.014, 0.003) && within(r.sd, 0.615, 0.01),
        detail: format!(
            "series order 3: mean {:.6} sd {:.6}; want -0.014 ± 0.003, 0.615 ± 0.01",
            r.mean, r.sd
        ),
    }
}

fn example_orness() -> Outcome {
    let g = example();
    let o = orness(&g).unwrap();
    let n = g.n() as f64;
    let m = mean_closed_form(&g);
    let identity = ((n + 1.0) * m - 1.0) / (n - 1.0);
    Outcome {
        pass: within(o, 0.49, 0.005) && within(o, identity, 1e-12),
        detail: format!("orness {o:.6}, from mean {identity:.6}; want 0.49 ± 0.005, identity to 1e-12"),
    }
}

fn stigler() -> Outcome {
    let j = WeightFunction::Power(2.0);
    let opts = QuadOptions::for_law(Law::Uniform);
    let a = alpha(&j, &UniformQuantile, opts).unwrap();
    let b = beta2(&j, &UniformQuantile, opts).unwrap();
    Outcome {
        pass: within(a, 0.25, 1e-6) && within(b, 1.0 / 112.0, 1e-6),
        detail: format!("alpha {a:.9} beta2 {b:.9}; want 0.25, {:.9} ± 1e-6", 1.0 / 112.0),
    }
}

fn normalization() -> Outcome {
    let limits = Limits::default();
    let mut worst_u: f64 = 0.0;
    let mut worst_e: f64 = 0.0;
    let mut regular = 0;
    for k in 0..20u64 {
        let n = 2 + (k % 5) as usize;
        let g = SetFunction::random_capacity(n, &mut stream(600 + k, 0)).unwrap();
        let d = UniformChoquetDist::new(g.clone(), &limits).unwrap();
        let (lo, hi) = d.support();
        let total = integrate_with_breaks(|y| d.pdf(y), lo, hi, &d.knot_locations(), 1e-10).unwrap();
        worst_u = worst_u.max((total - 1.0).abs());
        if let Ok(e) = ExponentialChoquetDist::new(&g, &limits) {
            regular += 1;
            let upper = 60.0 * e.max_scale();
            let total = integrate_with_breaks(|y| e.pdf(y), 0.0, upper, &[], 1e-10).unwrap();
            worst_e = worst_e.max((total - 1.0).abs());
        }
    }
    Outcome {
        pass: worst_u <= 1e-7 && worst_e <= 1e-6 && regular > 0,
        detail: format!(
            "20 capacities, worst |∫pdf - 1|: uniform {worst_u:.2e}, exponential {worst_e:.2e} over {regular} regular"
        ),
    }
}

fn monte_carlo_means() -> Outcome {
    let mut pass = true;
    let mut worst = 0.0f64;
    for k in 0..5u64 {
        let g = SetFunction::random_capacity(4, &mut stream(700 + k, 0)).unwrap();
        for law in [Law::Uniform, Law::Exponential, Law::Normal] {
            let provider = law.provider(4, SeriesOrder::default()).unwrap();
            let exact = moments_report(&g, provider.as_ref()).unwrap().mean;
            let mc = sample(&g, law, 1_000_000, 7000 + k).unwrap();
            let mut tol = 3.0 * mc.standard_error;
            if law == Law::Normal {
                tol = tol.max(0.005);
            }
            let gap = (exact - mc.mean).abs();
            worst = worst.max(gap / tol);
            pass &= gap <= tol;
        }
    }
    Outcome {
        pass,
        detail: format!("5 capacities x 3 laws, 1e6 draws each; worst gap/tolerance {worst:.3}"),
    }
}

fn ks_agreement() -> Outcome {
    let g = example();
    let limits = Limits::default();
    let m = 100_000;
    let band = ks_band_1pct(m);
    let u = UniformChoquetDist::new(g.clone(), &limits).unwrap();
    let e = ExponentialChoquetDist::new(&g, &limits).unwrap();
    let du = sample(&g, Law::Uniform, m, 11).unwrap().compare(|y| u.cdf(y));
    let de = sample(&g, Law::Exponential, m, 12).unwrap().compare(|y| e.cdf(y));
    Outcome {
        pass: du < band && de < band,
        detail: format!("KS uniform {du:.5}, exponential {de:.5}; band {band:.5}"),
    }
}

fn stratified_knots(seed: u64) -> Vec<f64> {
    let mut rng = stream(seed, 0);
    let len = 2 + (open_unit(&mut rng) * 8.0) as usize;
    let mut k: Vec<f64> = (0..len)
        .map(|i| (i as f64 + 0.25 + 0.5 * open_unit(&mut rng)) / len as f64)
        .collect();
    for i in (1..len).rev() {
        let j = ((open_unit(&mut rng) * (i + 1) as f64) as usize).min(i);
        k.swap(i, j);
    }
    k
}

fn consistency() -> Outcome {
    let limits = Limits::default();
    let mut prop = 0.0f64;
    let mut general = 0.0f64;
    for k in 0..12u64 {
        let n = 1 + (k % 6) as usize;
        let g = SetFunction::random_capacity(n, &mut stream(800 + k, 0)).unwrap();
        let m1 = raw_moment(&g, 1, &limits).unwrap();
        let m2 = raw_moment(&g, 2, &limits).unwrap();
        prop = prop
            .max((m1 - mean_closed_form(&g)).abs())
            .max((m2 - second_moment_closed_form(&g)).abs());
        let u = UniformMoments::new(n);
        let d = UniformChoquetDist::new(g.clone(), &limits).unwrap();
        general = general
            .max((moments_report(&g, &u).unwrap().mean - d.mean()).abs())
            .max((second_raw_moment(&g, &u).unwrap() - d.second_moment()).abs());
    }
    let mut rel = 0.0f64;
    let mut complement = 0.0f64;
    for s in 0..100u64 {
        let knots = stratified_knots(900 + s);
        let y = open_unit(&mut stream(900 + s, 1));
        let deg = knots.len() as i32 - 2;
        let rec = tp_plus_dd(&knots, y);
        let rat = tp_dd_distinct(&knots, y, Truncation::Plus, deg).unwrap();
        rel = rel.max((rec - rat).abs() / rec.abs().max(1.0));
        let rec_minus = tp_minus_dd(&knots, y);
        let rat_minus = tp_dd_distinct(&knots, y, Truncation::Minus, deg + 1).unwrap();
        rel = rel.max((rec_minus - rat_minus).abs() / rec_minus.abs().max(1.0));
        let plus_full = tp_dd_distinct(&knots, y, Truncation::Plus, deg + 1).unwrap();
        complement = complement.max((rec_minus + plus_full - 1.0).abs());
    }
    Outcome {
        pass: prop <= 1e-13 && general <= 1e-10 && rel <= 1e-9 && complement <= 1e-10,
        detail: format!(
            "level maps vs closed form {prop:.1e}; order statistics vs chains {general:.1e}; \
             recurrence vs rational {rel:.1e}; complement {complement:.1e}"
        ),
    }
}

fn asymptotic_trend() -> Outcome {
    let limits = Limits::default();
    let gaps = |n: usize| {
        let g = power_weight_game(n, 2.0).unwrap();
        let c = mixture_approx(&g, &UniformMoments::new(n), &limits).unwrap().components[0];
        ((c.mean - 0.25).abs(), (n as f64 * c.variance - 1.0 / 112.0).abs())
    };
    let (m5, v5) = gaps(5);
    let (m20, v20) = gaps(20);
    Outcome {
        pass: m20 < m5 && v20 < v5,
        detail: format!("mean gap {m5:.2e} -> {m20:.2e}; n*variance gap {v5:.2e} -> {v20:.2e} (n = 5 -> 20)"),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("uniform example moments", example_uniform, 1),
        ("exponential example moments", example_exponential, 1),
        ("normal example moments", example_normal, 1),
        ("orness", example_orness, 1),
        ("Stigler constants", stigler, 1),
        ("density normalization", normalization, 30),
        ("Monte Carlo mean agreement", monte_carlo_means, 120),
        ("KS agreement", ks_agreement, 30),
        ("internal consistency", consistency, 10),
        ("asymptotic trend", asymptotic_trend, 1),
    ];
    let mut failures = 0;
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let pass = outcome.pass && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} {}: {name}: {} [{:.2} s of {budget} s]",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
