//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;

use common::*;
use toric_crn::linalg::{Integer, Rational, RationalMatrix};
use toric_crn::multistat::{
    extreme_rays, multistat_analyze, reconstruct_rates, MultistatOutcome, DEFAULT_TOLERANCE,
};
use toric_crn::network::{
    build_matrices, fixtures, graph_summary, stoichiometric_matrix, RateAssignment, ReactionNetwork,
};
use toric_crn::phospho::{conservation_values, index, phospho_network, PhosphoSystem};
use toric_crn::toric::{
    binomial_generators, eval_parametrization, find_certificate, toric_analyze, AnalyzeOptions, Multiplier,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        {
            let ok: bool = $cond;
            if !ok {
                return Err(format!($($fmt)+));
            }
        }
    };
}

fn to_rows(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn oracle_rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    cols - null_space(rows, cols).len()
}

fn sorted_blocks(p: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut p: Vec<Vec<usize>> = p.iter().map(|b| {
        let mut b = b.clone();
        b.sort();
        b
    }).collect();
    p.sort();
    p
}

fn triangle_draw(rng: &mut impl rand::Rng, symmetric: bool) -> RateAssignment {
    let mut k: [Rational; 6] = std::array::from_fn(|_| rand_rat(rng));
    if symmetric {
        k[5] = k[3].clone();
    } else {
        while k[5] == k[3] {
            k[5] = rand_rat(rng);
        }
    }
    fixtures::triangle_rates(k)
}

fn criterion_1() -> Outcome {
    let net = fixtures::triangle();
    let mut rng = rng(1);
    for symmetric in [true, false] {
        for draw in 0..50 {
            let rates = triangle_draw(&mut rng, symmetric);
            let m = build_matrices(&net, &rates).map_err(|e| e.to_string())?;
            match find_certificate(&m.sigma, &m.y) {
                Ok(cert) => {
                    ensure!(symmetric, "certificate found with k31 != k32 (draw {draw})");
                    ensure!(
                        cert.partition == vec![vec![0, 1], vec![2]],
                        "partition {:?}",
                        cert.partition
                    );
                }
                Err(e) => ensure!(!symmetric, "no certificate with k31 = k32 (draw {draw}): {e}"),
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let net = fixtures::phos2();
    let mut rng = rng(2);
    let opts = AnalyzeOptions {
        preferred_pins: vec![0, 7, 8],
        ..Default::default()
    };
    for draw in 0..10 {
        let rates = RateAssignment::random(&net, &mut rng);
        let a = toric_analyze(&net, &rates, &opts).map_err(|e| e.to_string())?;
        let cert = a.certificate.as_ref().map_err(|e| e.to_string())?;
        ensure!(
            cert.partition == vec![vec![0, 3, 6, 8], vec![1, 4, 7, 9], vec![2], vec![5]],
            "partition {:?}",
            cert.partition
        );
        let (b1, b2) = phos2_b1_b2(&rates);
        ensure!(positive_multiple(&b1, &cert.basis[0]), "b1 mismatch at draw {draw}");
        ensure!(positive_multiple(&b2, &cert.basis[1]), "b2 mismatch at draw {draw}");
        let c3 = a.condition3.as_ref().ok_or("no Condition 3 data")?;
        let delta = rows_of(&c3.delta);
        ensure!(oracle_rank(&delta, c3.delta.cols()) == 6, "rank(Delta) != 6");
        ensure!(c3.u.cols() == 0, "U is not empty");
        let par = a.parametrization.as_ref().ok_or("no parametrization")?;
        let x = par.x_tilde.exact().ok_or("x~ not exact")?;
        ensure!(x == phos2_x_tilde(&b1, &b2).as_slice(), "x~ {x:?} at draw {draw}");
    }
    Ok(())
}

fn closure_case(name: &str, net: &ReactionNetwork, rates: &RateAssignment, rng: &mut impl rand::Rng) -> Outcome {
    let a = toric_analyze(net, rates, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    let par = a.parametrization.as_ref().ok_or_else(|| format!("{name}: {:?}", a.failure))?;
    ensure!(par.x_tilde.exact().is_some(), "{name}: x~ not rational");
    let m = build_matrices(net, rates).map_err(|e| e.to_string())?;
    for _ in 0..20 {
        let t: Vec<Rational> = (0..par.w()).map(|_| rand_rat(rng)).collect();
        let x = eval_parametrization(par, &t).map_err(|e| e.to_string())?;
        let psi = m.psi(&x).map_err(|e| e.to_string())?;
        ensure!(m.sigma.mul_vec(&psi).iter().all(Zero::is_zero), "{name}: Sigma*Psi(x(t)) != 0 at t={t:?}");
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    // x_B/x_A is the square root of a rate ratio, which is rational for
    // proportional-to-unit rates but not for a generic k31 = k32 draw.
    let tri = fixtures::triangle();
    let c = rand_rat(&mut rng);
    closure_case("triangle", &tri, &fixtures::triangle_rates(std::array::from_fn(|_| c.clone())), &mut rng)?;
    for (name, net) in [
        ("phos1", fixtures::phos1()),
        ("phos2", fixtures::phos2()),
        ("n=3", phospho_network(3).map_err(|e| e.to_string())?),
        ("n=4", phospho_network(4).map_err(|e| e.to_string())?),
    ] {
        let rates = RateAssignment::random(&net, &mut rng);
        closure_case(name, &net, &rates, &mut rng)?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let net = fixtures::shinar_feinberg();
    let mut rng = rng(4);
    let x7 = {
        let mut a = vec![0u32; 9];
        a[6] = 1;
        a
    };
    let multipliers: Vec<Multiplier> = [0, 2, 7, 8]
        .into_iter()
        .map(|equation| Multiplier { alpha: x7.clone(), equation })
        .collect();
    let expected = sorted_blocks(&[
        vec![3],
        vec![9],
        vec![12],
        vec![13, 14],
        vec![15, 16],
        vec![0, 1, 2, 4, 5, 6, 7, 8, 10, 11],
    ]);
    let x = |e: &[(usize, u32)]| {
        let mut v = vec![Integer::zero(); 9];
        for &(i, c) in e {
            v[i] = c.into();
        }
        v
    };
    let added = vec![x(&[(0, 1), (6, 2)]), x(&[(8, 1), (6, 1)]), x(&[(2, 1), (6, 2)]), x(&[(7, 1), (6, 1)])];
    for draw in 0..20 {
        let rates = RateAssignment::random(&net, &mut rng);
        let m = build_matrices(&net, &rates).map_err(|e| e.to_string())?;
        ensure!(find_certificate(&m.sigma, &m.y).is_err(), "original system passed at draw {draw}");
        for opts in [
            AnalyzeOptions { multipliers: multipliers.clone(), ..Default::default() },
            AnalyzeOptions { search_bound: 1, ..Default::default() },
        ] {
            let a = toric_analyze(&net, &rates, &opts).map_err(|e| e.to_string())?;
            ensure!(a.multipliers == multipliers, "multipliers {:?}", a.multipliers);
            let cert = a.certificate.as_ref().map_err(|e| format!("draw {draw}: {e}"))?;
            ensure!(sorted_blocks(&cert.partition) == expected, "partition {:?}", cert.partition);
            let extra: Vec<Vec<Integer>> = (a.original_monomials..a.exponents.rows())
                .map(|i| a.exponents.row(i).to_vec())
                .collect();
            ensure!(extra == added, "added monomials {extra:?}");
            let cols = a.sigma.cols();
            let coeffs: Vec<Vec<Rational>> =
                binomial_generators(cert).iter().map(|b| b.coefficient_vector(cols)).collect();
            let sigma = to_rows(&a.sigma);
            let r_sigma = oracle_rank(&sigma, cols);
            let r_b = oracle_rank(&coeffs, cols);
            let both: Vec<Vec<Rational>> = sigma.iter().chain(&coeffs).cloned().collect();
            ensure!(
                r_b == r_sigma && oracle_rank(&both, cols) == r_sigma,
                "binomial span rank {r_b}, row space rank {r_sigma}"
            );
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    for n in 1..=5 {
        for draw in 0..20 {
            let sys = PhosphoSystem::random(n, &mut rng).map_err(|e| e.to_string())?;
            let dets = sys.determinants();
            ensure!(dets.family.len() == 3 * n, "n={n}: {} determinants", dets.family.len() + 1);
            ensure!(dets.sign_constant(), "n={n}, draw {draw}: signs {dets:?}");
        }
    }
    for _ in 0..10 {
        let sys = PhosphoSystem::random(1, &mut rng).map_err(|e| e.to_string())?;
        let dets = sys.determinants();
        let (d, d1) = phos1_closed_forms(&sys.rates);
        ensure!(dets.d == d && dets.get(1) == Some(&d1), "n=1 closed forms");
        let sys = PhosphoSystem::random(2, &mut rng).map_err(|e| e.to_string())?;
        let dets = sys.determinants();
        let [d, d2, d5, d8] = phos2_closed_forms(&sys.rates);
        ensure!(dets.d == d, "n=2: D");
        ensure!(dets.get(2) == Some(&d2), "n=2: D2");
        ensure!(dets.get(5) == Some(&d5), "n=2: D5");
        ensure!(dets.get(8) == Some(&d8), "n=2: D8");
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    for n in 1..=4 {
        let sys = PhosphoSystem::random(n, &mut rng).map_err(|e| e.to_string())?;
        let sp = sys.sigma_blocks().sigma_prime;
        let rows = to_rows(&sp);
        ensure!(oracle_rank(&rows, sp.cols()) == 3 * n, "n={n}: rank(Sigma') != 3n");
        for j in 1..=n {
            let mut block: Vec<usize> = sys.ells(j).to_vec();
            block.push(index::fs(n, j));
            let block: Vec<usize> = block
                .into_iter()
                .map(|k| index::sigma_prime_column(n, k).expect("kept") - 1)
                .collect();
            for a in 0..block.len() {
                for b in a + 1..block.len() {
                    let keep: Vec<usize> = (0..sp.cols()).filter(|&c| c != block[a] && c != block[b]).collect();
                    let sub: Vec<Vec<Rational>> =
                        rows.iter().map(|r| keep.iter().map(|&c| r[c].clone()).collect()).collect();
                    ensure!(oracle_rank(&sub, keep.len()) < 3 * n, "n={n}, j={j}: full rank after deletion");
                }
            }
            ensure!(sys.vanishing_minors_check(j), "library check disagrees at n={n}, j={j}");
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    for n in 2..=4 {
        for _ in 0..10 {
            let sys = PhosphoSystem::random(n, &mut rng).map_err(|e| e.to_string())?;
            let shifted = sys.shifted().map_err(|e| e.to_string())?;
            let r = |name: &str| rate(&sys.rates, name);
            let factor = -(r("kon0") * r("kcat0") * r("lon0"));
            let (dets, sdets) = (sys.determinants(), shifted.determinants());
            for j in 2..=n {
                for (l, ls) in sys.ells(j).into_iter().zip(shifted.ells(j - 1)) {
                    let lhs = dets.get(l).ok_or("missing D")?;
                    let rhs = &factor * sdets.get(ls).ok_or("missing D'")?;
                    ensure!(*lhs == rhs, "n={n}, j={j}, l={l}: {lhs} != {rhs}");
                }
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for (name, net) in [("triangle", fixtures::triangle()), ("phos1", fixtures::phos1()), ("phos2", fixtures::phos2())] {
        let n = stoichiometric_matrix(&net);
        let dd: Vec<Vec<Rational>> = extreme_rays(&n)
            .rays
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let brute = brute_force_rays(&n);
        ensure!(same_rays(&dd, &brute), "{name}: {} DD rays vs {} brute-force rays", dd.len(), brute.len());
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut rng = rng(9);
    let mut tested = 0;
    for net in [fixtures::triangle(), fixtures::phos1(), fixtures::phos2(), fixtures::shinar_feinberg()] {
        let cone = extreme_rays(&stoichiometric_matrix(&net));
        if cone.degenerate {
            continue;
        }
        tested += 1;
        for _ in 0..50 {
            let x: Vec<Rational> = (0..net.num_species()).map(|_| rand_rat(&mut rng)).collect();
            let lambda: Vec<Rational> = (0..cone.rays.len()).map(|_| rand_rat(&mut rng)).collect();
            let k = reconstruct_rates(&net, &x, &lambda, &cone).map_err(|e| e.to_string())?;
            let rates = RateAssignment::from_pairs(net.rate_names().into_iter().zip(k)).map_err(|e| e.to_string())?;
            let m = build_matrices(&net, &rates).map_err(|e| e.to_string())?;
            ensure!(m.rhs_flux(&x).map_err(|e| e.to_string())?.iter().all(Zero::is_zero), "nonzero residual");
            ensure!(m.rhs(&x).map_err(|e| e.to_string())?.iter().all(Zero::is_zero), "nonzero residual");
        }
    }
    ensure!(tested >= 3, "only {tested} non-degenerate fixtures");
    Ok(())
}

fn criterion_10() -> Outcome {
    let mut rng = rng(10);
    let tri = fixtures::triangle();
    let probes = [RateAssignment::unit(&tri), triangle_draw(&mut rng, true)];
    let a = multistat_analyze(&tri, &probes, None, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    ensure!(matches!(a.outcome, MultistatOutcome::NoCapacity), "triangle: {:?}", a.outcome);

    let p1 = fixtures::phos1();
    let probes = [RateAssignment::random(&p1, &mut rng), RateAssignment::random(&p1, &mut rng)];
    let a = multistat_analyze(&p1, &probes, None, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    ensure!(matches!(a.outcome, MultistatOutcome::NoCapacity), "phos1: {:?}", a.outcome);

    let p2 = fixtures::phos2();
    let probes = [RateAssignment::random(&p2, &mut rng), RateAssignment::random(&p2, &mut rng)];
    let a = multistat_analyze(&p2, &probes, None, 1e-9).map_err(|e| e.to_string())?;
    let MultistatOutcome::Witness { witness, verification } = &a.outcome else {
        return Err(format!("phos2: {:?}", a.outcome));
    };
    ensure!(verification.passed(), "verification {verification:?}");
    ensure!(witness.x1 != witness.x2, "x1 == x2");
    let zt = a.z.transpose().to_rational();
    ensure!(zt.mul_vec(&witness.sigma).iter().all(Zero::is_zero), "Z^t sigma != 0");
    let c1 = conservation_values(2, &witness.x1);
    let c2 = conservation_values(2, &witness.x2);
    for (u, v) in [(c1.0, c2.0), (c1.1, c2.1), (c1.2, c2.2)] {
        ensure!((u - v).abs() <= 1e-9 * u.abs().max(v.abs()), "conserved totals differ: {u} vs {v}");
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let g = graph_summary(&fixtures::phos1());
    ensure!(g.formula_valid && g.deficiency == 1 && g.regular(), "phos1: deficiency {}", g.deficiency);
    let mut rng = rng(11);
    for n in 1..=5 {
        let sys = PhosphoSystem::random(n, &mut rng).map_err(|e| e.to_string())?;
        let g = graph_summary(&sys.net);
        ensure!(g.formula_valid, "n={n}: deficiency formula not valid");
        ensure!(g.deficiency == n as i64, "n={n}: deficiency {}", g.deficiency);
        let sigma = sys.sigma_blocks().sigma;
        ensure!(oracle_rank(&to_rows(&sigma), sigma.cols()) == 3 * n, "n={n}: rank(Sigma) != 3n");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("triangle biconditional", criterion_1),
        ("2-site reproduction", criterion_2),
        ("parametrization closure", criterion_3),
        ("Shinar-Feinberg enlargement", criterion_4),
        ("phosphorylation determinant signs", criterion_5),
        ("vanishing minors", criterion_6),
        ("determinant induction identity", criterion_7),
        ("extreme-ray oracle equivalence", criterion_8),
        ("rate reconstruction roundtrip", criterion_9),
        ("multistationarity verdicts", criterion_10),
        ("deficiency", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2}. {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2}. {name} ({secs:.1}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
