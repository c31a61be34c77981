//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ski_cli::run;
use ski_core::exact::{cone_parameter, evaluation_point, int, rat, validate_holonomy, LaurentPoly, QPoly, Rational};
use ski_core::floer::generate::{perturb_diagonal, random_compatible_pair, random_similar_pair};
use ski_core::floer::{
    check_splitting_identity, dual_complex, euler_characteristic, flip_complex, h_invariant, homology, lefschetz,
    trace_powers_determine_charpoly, validate, CobordismEndomorphism, GradedComplex,
};
use ski_core::invariants::{
    mapping_torus_holonomies, mapping_torus_lambda, normalized_holonomy, product_case, zero_dim_series,
    GeometricHypotheses, MappingTorusInput,
};
use ski_core::knotcore::{
    admissible, alexander_polynomial, clh_invariant, levine_tristram_signature, signature_at_point, signature_jumps,
    torus_knot, AmbientSphere, SeifertKnot, SeifertMatrix,
};
use ski_core::novikov::{loop_energy, loop_grading, minimal_period_generator, LoopClass, NovikovElement};
use tempfile::NamedTempFile;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ski(args: &[&str]) -> ski_cli::Outcome {
    run(std::iter::once("ski").chain(args.iter().copied()))
}

fn knot_file(k: &SeifertKnot) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(ski_cli::formats::write_knot(k).as_bytes()).unwrap();
    f
}

fn stdout_value(out: &str, key: &str) -> Option<String> {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" = ")))
        .map(str::to_string)
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn budget(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:?}, budget {limit:?}");
    Ok(format!("{:.2}s", t.as_secs_f64()))
}

fn cone() -> Check {
    let start = Instant::now();
    let o = ski(&["cone", "--alpha", "1/4"]);
    ensure!(o.stdout == "nu = 2\n", "cone --alpha 1/4 printed {:?}", o.stdout);
    let mut n = 0;
    for q in 1..=50i64 {
        for p in 1..q {
            let a = rat(p, q);
            let brute = (1u64..).find(|&nu| (&a * int(2 * nu as i64)).is_integer()).unwrap();
            ensure!(cone_parameter(&a) == brute, "alpha = {a}: {} vs {brute}", cone_parameter(&a));
            n += 1;
        }
    }
    Ok(format!("{n} fractions, {}", budget(start, Duration::from_secs(1))?))
}

fn small_alphas(max_den: i64) -> Vec<Rational> {
    let mut s = BTreeSet::new();
    for q in 3..=max_den {
        for p in 1..q {
            let a = rat(p, q);
            if a < rat(1, 2) {
                s.insert(a);
            }
        }
    }
    s.into_iter().collect()
}

fn oracle(rng: &mut ChaCha8Rng) -> Check {
    let start = Instant::now();
    let pool = small_alphas(30);
    let mut checked = 0;
    for a in 2..=17i64 {
        for b in (a + 1)..=17 {
            if a * b > 35 || a.gcd(&b) != 1 {
                continue;
            }
            let knot = torus_knot(a, b).map_err(e)?;
            let mut alphas = pool.clone();
            alphas.shuffle(rng);
            let chosen: Vec<_> = alphas
                .into_iter()
                .filter(|x| admissible(&knot, &validate_holonomy(x).unwrap()))
                .take(10)
                .collect();
            ensure!(chosen.len() == 10, "T({a},{b}): too few admissible alphas");
            for x in chosen {
                let h = validate_holonomy(&x).map_err(e)?;
                let r = ski_core::su2oracle::herald_consistency(a, b, &h, 2000).map_err(e)?;
                let sigma = levine_tristram_signature(&knot, &h).map_err(e)?;
                ensure!(
                    r.oracle_count as i64 == (sigma / 2).abs() && r.pass,
                    "T({a},{b}) alpha = {x}: oracle {} vs |sigma/2| = {}",
                    r.oracle_count,
                    (sigma / 2).abs()
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (knot, alpha) pairs, {}", budget(start, Duration::from_secs(60))?))
}

fn mapping_torus() -> Check {
    let lifts = mapping_torus_holonomies(&rat(1, 15), 3).map_err(e)?;
    ensure!(lifts == vec![rat(1, 15), rat(2, 5), rat(11, 15)], "lifts {lifts:?}");
    ensure!(normalized_holonomy(&rat(11, 15)) == rat(7, 30), "11/15 normalizes wrongly");

    let trefoil = SeifertKnot::trefoil();
    let f = knot_file(&trefoil);
    let o = ski(&[
        "fo",
        "mapping-torus",
        f.path().to_str().unwrap(),
        "--alpha-prime",
        "1/15",
        "--p",
        "3",
        "--casson",
        "0",
        "--assert-geometry",
    ]);
    ensure!(o.code == 0, "cli failed: {}", o.stderr);
    let cli: i64 = stdout_value(&o.stdout, "lambda_FO").ok_or("no lambda_FO line")?.parse().map_err(e)?;

    let reps = [rat(1, 15), rat(2, 5), rat(7, 30)];
    let mut sum = 0;
    for r in &reps {
        sum += levine_tristram_signature(&trefoil, &validate_holonomy(r).map_err(e)?).map_err(e)?;
    }
    ensure!(cli == sum && cli == -4, "cli {cli}, signature sum {sum}");

    let raw = signature_at_point(&trefoil, &evaluation_point(&rat(11, 15))).map_err(e)?;
    let norm = signature_at_point(&trefoil, &evaluation_point(&rat(7, 30))).map_err(e)?;
    ensure!(raw == norm, "sigma at 11/15 is {raw}, at 7/30 is {norm}");

    let input = MappingTorusInput {
        p: 3,
        alpha_prime: rat(1, 15),
        base_casson: 0,
        base_knot: trefoil,
    };
    let rep = mapping_torus_lambda(&input, GeometricHypotheses::asserted()).map_err(e)?;
    let got: Vec<_> = rep.lifts.iter().map(|l| (l.alpha.clone(), l.representative.clone())).collect();
    ensure!(
        got == vec![(rat(1, 15), rat(1, 15)), (rat(2, 5), rat(2, 5)), (rat(11, 15), rat(7, 30))],
        "lift table {got:?}"
    );
    Ok(format!("lambda_FO = {cli}"))
}

/// Zero maps; homology is the chain groups and the trace of the identity is
/// the Euler characteristic.
fn synthetic(chi: i64) -> GradedComplex {
    let n = chi.unsigned_abs() as usize;
    GradedComplex::zero(if chi >= 0 { [n, 0, 0, 0] } else { [0, n, 0, 0] })
}

fn product() -> Check {
    let knots = [
        SeifertKnot::trefoil(),
        SeifertKnot::trefoil().mirror(),
        torus_knot(2, 5).map_err(e)?,
        torus_knot(3, 4).map_err(e)?,
        SeifertKnot::new("5_2", SeifertMatrix::new(vec![vec![-1, 1], vec![0, -2]]).map_err(e)?, false),
    ];
    let mut pairs = 0;
    for knot in &knots {
        let f = knot_file(knot);
        for casson in [0i64, -1] {
            for (p, q) in [(1, 4), (1, 3), (1, 5), (2, 5), (3, 7), (1, 7)] {
                let h = validate_holonomy(&rat(p, q)).map_err(e)?;
                if !admissible(knot, &h) {
                    continue;
                }
                let y = AmbientSphere::with_casson(casson);
                let clh = clh_invariant(&y, knot, &h).map_err(e)?;
                let alpha = format!("{p}/{q}");
                let cs = casson.to_string();
                let o = ski(&["fo", "product", f.path().to_str().unwrap(), "--alpha", &alpha, "--casson", &cs]);
                ensure!(o.code == 0, "{}: {}", knot.name, o.stderr);
                let lam: i64 = stdout_value(&o.stdout, "lambda_FO").ok_or("no lambda_FO")?.parse().map_err(e)?;
                ensure!(lam == 2 * clh, "{} at {alpha}: {lam} vs 2*{clh}", knot.name);
                let d0_lines = o.stdout.lines().filter(|l| l.starts_with("D0(")).count();
                ensure!(d0_lines == 1 && o.stdout.contains("D0(0) = "), "series not one-term: {}", o.stdout);

                let (lambda, series) = product_case(&y, knot, &h).map_err(e)?;
                ensure!(series.coefficients.keys().all(|&k| k == 0), "nonzero k in series");
                let z = zero_dim_series(&series).map_err(e)?;
                let c = synthetic(lambda);
                ensure!(euler_characteristic(&homology(&c).map_err(e)?) == lambda, "synthetic chi");
                let l = lefschetz(&c, &CobordismEndomorphism::identity(c.ranks), 10).map_err(e)?;
                ensure!(z == l, "{} at {alpha}: series {z} vs lefschetz {l}", knot.name);
                pairs += 1;
            }
        }
    }
    ensure!(pairs >= 20, "only {pairs} admissible pairs");
    Ok(format!("{pairs} pairs"))
}

fn shuffled(rng: &mut ChaCha8Rng, ranks: [usize; 4]) -> [Vec<usize>; 4] {
    std::array::from_fn(|i| {
        let mut v: Vec<usize> = (0..ranks[i]).collect();
        v.shuffle(rng);
        v
    })
}

fn floer_suite(rng: &mut ChaCha8Rng) -> Check {
    let start = Instant::now();
    let mut nonzero_h = 0;
    for n in 0..100 {
        let (c, m) = random_compatible_pair(rng, 12).map_err(e)?;
        ensure!(c.total_rank() <= 12, "rank {}", c.total_rank());
        ensure!(validate(&c).passed(), "complex {n} invalid");
        let hc = homology(&c).map_err(e)?.dims;
        let perm = shuffled(rng, c.ranks);
        let cp = c.permute(&perm);
        ensure!(homology(&cp).map_err(e)?.dims == hc, "complex {n}: order changes homology");
        ensure!(
            lefschetz(&c, &m, 4).map_err(e)? == lefschetz(&cp, &m.permute(&perm), 12).map_err(e)?,
            "complex {n}: depth or order changes the Lefschetz number"
        );
        let r = check_splitting_identity(&c, &m, 10).map_err(e)?;
        ensure!(r.passed(), "complex {n}: {r}");
        nonzero_h += (r.h != 0) as usize;
        let d = dual_complex(&c).map_err(e)?;
        ensure!(validate(&d).passed(), "complex {n}: dual invalid");
        let hd = homology(&d).map_err(e)?.dims;
        ensure!(
            hd == std::array::from_fn(|j| hc[(7 - j) % 4]),
            "complex {n}: dual dims {hd:?} vs {hc:?}"
        );
        let f = flip_complex(&c);
        ensure!(
            validate(&f).passed() && h_invariant(&f).map_err(e)? == r.h,
            "complex {n}: flip changes h"
        );
    }
    Ok(format!("{nonzero_h}/100 with h != 0, {}", budget(start, Duration::from_secs(30))?))
}

fn random_element(rng: &mut ChaCha8Rng) -> NovikovElement {
    let terms = (0..rng.gen_range(1..=5)).map(|_| {
        let q = *[1i64, 2, 3, 6].choose(rng).unwrap();
        let c = rat(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3));
        (rat(rng.gen_range(-6..=6), q), c)
    });
    NovikovElement::from_terms(terms.collect::<Vec<_>>(), None)
}

fn novikov(rng: &mut ChaCha8Rng) -> Check {
    let zero = NovikovElement::zero();
    let one = NovikovElement::one();
    for i in 0..1000 {
        let (a, b, c) = (random_element(rng), random_element(rng), random_element(rng));
        ensure!(a.add(&b).add(&c) == a.add(&b.add(&c)), "additive associativity, sample {i}");
        ensure!(a.add(&b) == b.add(&a), "additive commutativity, sample {i}");
        ensure!(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), "multiplicative associativity, sample {i}");
        ensure!(a.mul(&b) == b.mul(&a), "multiplicative commutativity, sample {i}");
        ensure!(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), "distributivity, sample {i}");
        ensure!(a.add(&zero) == a && a.mul(&one) == a, "identities, sample {i}");
        ensure!(a.sub(&a).is_zero() && a.add(&a.neg()).is_zero(), "additive inverse, sample {i}");
        if !a.is_zero() && a.num_terms() == 1 {
            ensure!(a.mul(&a.invert(10).map_err(e)?) == one, "monomial inverse, sample {i}");
        }
    }
    let mut inverses = 0;
    while inverses < 200 {
        let x = random_element(rng);
        if x.is_zero() {
            continue;
        }
        let prod = x.mul(&x.invert(10).map_err(e)?);
        ensure!(prod.agrees_with(&one) && prod.coeff(&int(0)) == int(1), "x * x^-1 = {prod} for x = {x}");
        inverses += 1;
    }
    let mut grid = 0;
    for k in -5..5 {
        for l in -5..5 {
            for q in 3..13 {
                let alpha = rat(1, q);
                let z = LoopClass::new(k, l);
                let rhs = rat(loop_grading(z), 8) + int(l) * (&alpha * int(4) - int(1)) / int(2);
                ensure!(loop_energy(z, &alpha) == rhs, "energy-grading at k={k} l={l} alpha={alpha}");
                grid += 1;
            }
        }
    }
    for k in -10..=10 {
        for alpha in small_alphas(12) {
            let z = LoopClass::new(k, -2 * k);
            ensure!(loop_grading(z) == 0, "grading of ({k}, {})", -2 * k);
            ensure!(
                loop_energy(z, &alpha) == int(k) * minimal_period_generator(&alpha),
                "annihilator energy at k={k} alpha={alpha}"
            );
        }
    }
    Ok(format!("1000 axiom samples, 200 inverses, {grid} grid points"))
}

fn random_seifert(rng: &mut ChaCha8Rng) -> SeifertKnot {
    let g = rng.gen_range(1..=2);
    let n = 2 * g;
    let mut v = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-2..=2);
            v[i][j] = x;
            v[j][i] = x;
        }
    }
    for b in 0..g {
        v[2 * b][2 * b + 1] += 1;
    }
    if rng.gen_bool(0.5) {
        // P^T V P with P an elementary unimodular matrix
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let s = rng.gen_range(-2..=2);
            let mut p = vec![vec![0i64; n]; n];
            for (d, row) in p.iter_mut().enumerate() {
                row[d] = 1;
            }
            p[i][j] = s;
            let vp: Vec<Vec<i64>> =
                (0..n).map(|r| (0..n).map(|c| (0..n).map(|t| v[r][t] * p[t][c]).sum()).collect()).collect();
            v = (0..n).map(|r| (0..n).map(|c| (0..n).map(|t| p[t][r] * vp[t][c]).sum()).collect()).collect();
        }
    }
    SeifertKnot::new("random", SeifertMatrix::new(v).expect("unimodular skew part"), false)
}

fn torus_alexander(a: i64, b: i64) -> LaurentPoly {
    let xn = |n: i64| {
        let mut c = vec![0i64; n as usize + 1];
        c[0] = -1;
        c[n as usize] = 1;
        QPoly::from_ints(&c)
    };
    let (q, r) = (&xn(a * b) * &xn(1)).div_rem(&(&xn(a) * &xn(b)));
    assert!(r.is_zero());
    let deg = q.degree().unwrap() as i64;
    LaurentPoly::new(-deg / 2, q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn signatures(rng: &mut ChaCha8Rng) -> Check {
    let start = Instant::now();
    let jumps = signature_jumps(&SeifertKnot::trefoil()).map_err(e)?;
    let exact: Vec<_> = jumps.iter().map(|j| j.exact.clone()).collect();
    ensure!(exact == vec![Some(rat(1, 12)), Some(rat(5, 12))], "trefoil jumps {exact:?}");

    let alphas = small_alphas(16);
    let mut evaluations = 0;
    for n in 0..50 {
        let k = random_seifert(rng);
        let m = k.mirror();
        for a in &alphas {
            let h = validate_holonomy(a).map_err(e)?;
            if !admissible(&k, &h) {
                continue;
            }
            let s = levine_tristram_signature(&k, &h).map_err(e)?;
            ensure!(s % 2 == 0, "matrix {n}: odd signature {s} at {a}");
            ensure!(levine_tristram_signature(&m, &h).map_err(e)? == -s, "matrix {n}: mirror at {a}");
            ensure!(
                levine_tristram_signature(&k, &h.flip()).map_err(e)? == s,
                "matrix {n}: flip at {a}"
            );
            evaluations += 1;
        }
    }
    let mut torus = 0;
    for a in 2..=7i64 {
        for b in (a + 1)..=7 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let d = alexander_polynomial(&torus_knot(a, b).map_err(e)?);
            ensure!(d == torus_alexander(a, b), "T({a},{b}): {d}");
            torus += 1;
        }
    }
    Ok(format!(
        "{evaluations} signatures, {torus} torus knots, {}",
        budget(start, Duration::from_secs(10))?
    ))
}

fn traces(rng: &mut ChaCha8Rng) -> Check {
    let start = Instant::now();
    for n in 0..50 {
        let (a, b) = random_similar_pair(rng, 3);
        let r = trace_powers_determine_charpoly(&a, &b, 1).map_err(e)?;
        ensure!(r.hypothesis_holds && r.outcome(), "similar pair {n}: {r:?}");
        let bad = perturb_diagonal(rng, &b);
        let r = trace_powers_determine_charpoly(&a, &bad, 1).map_err(e)?;
        ensure!(r.distinguished(), "perturbed pair {n} not distinguished");
    }
    Ok(format!("100 pairs, {}", budget(start, Duration::from_secs(10))?))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Check>)> = vec![
        ("cone parameter", Box::new(|_| cone())),
        ("oracle vs CLH", Box::new(oracle)),
        ("mapping torus", Box::new(|_| mapping_torus())),
        ("product case", Box::new(|_| product())),
        ("floer algebra", Box::new(floer_suite)),
        ("novikov field", Box::new(novikov)),
        ("signatures", Box::new(signatures)),
        ("trace lemma", Box::new(traces)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(&mut rng)))
            .unwrap_or_else(|_| Err("panicked".into()));
        match res {
            Ok(msg) => println!("criterion {}: PASS {name} ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    std::io::stdout().flush().unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
