//! Desk-scale acceptance run. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use common::*;
use curvemin::cli::{BatchLine, CurveDocument, ResultDocument};
use curvemin::elliptic::{minimize_all, scaling_minimize};
use curvemin::superelliptic::{reduce_all, Certificate};
use curvemin::{factorize, laska_minimize, BinaryForm, GL2Matrix, Integer, Rational, SuperellipticCurve, WeierstrassEquation};
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;
type Check<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_matrix(rng: &mut impl Rng) -> GL2Matrix {
    loop {
        let e: [i64; 4] = [0; 4].map(|_| rng.gen_range(-4..=4));
        if e[0] * e[3] != e[1] * e[2] {
            return GL2Matrix::from_i64(e[0], e[1], e[2], e[3]).unwrap();
        }
    }
}

fn covariance() -> Outcome {
    let mut rng = rng(101);
    let mut skipped = 0;
    for d in 2..=8usize {
        let mut checked = 0;
        while checked < 200 {
            let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
            if c[0] == 0 {
                c[0] = rng.gen_range(1..=9);
            }
            let f = BinaryForm::from_integers(c).unwrap();
            let m = random_matrix(&mut rng);
            let fm = f.act(&m);
            if fm.coeffs()[0].is_zero() {
                skipped += 1;
                continue;
            }
            let factor = num_traits::pow(Rational::from_integer(m.det()), d * (d - 1));
            let lhs = fm.discriminant().map_err(|e| e.to_string())?;
            let rhs = factor * f.discriminant().map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("d = {d}, f = {f}, M = {m:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("1400 pairs, {skipped} images with vanishing leading coefficient redrawn"))
}

fn subsets(pool: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        for mut rest in subsets(&pool[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn root_product() -> Outcome {
    let pool: Vec<i64> = (-3..=3).collect();
    let mut count = 0;
    for d in 2..=6 {
        for roots in subsets(&pool, d) {
            for a0 in [1, -1, 2, -3, 5] {
                let a0 = Rational::from_integer(a0.into());
                let roots: Vec<Rational> = roots.iter().map(|&r| Rational::from_integer(r.into())).collect();
                let f = form_from_roots(&a0, &roots);
                let got = f.discriminant().map_err(|e| e.to_string())?;
                ensure(got == root_product_discriminant(&a0, &roots), || format!("{f}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} forms"))
}

fn random_transformation(rng: &mut impl Rng) -> curvemin::Transformation {
    let u = [-3, -2, -1, 1, 2, 3, 4, 5, 6][rng.gen_range(0..9)];
    let [r, s, t] = [0; 3].map(|_: i32| rng.gen_range(-20..=20));
    curvemin::Transformation::from_i64(u, r, s, t).unwrap()
}

fn elliptic_scaling_law() -> Outcome {
    let mut rng = rng(103);
    for _ in 0..500 {
        let target = random_weierstrass(&mut rng, 50);
        let t = random_transformation(&mut rng);
        let e = WeierstrassEquation::new(inflate(&target.coeffs(), &t.u, &t.r, &t.s, &t.t)).unwrap();
        let image = e.transform(&t).map_err(|e| e.to_string())?;
        ensure(image == target, || format!("{e} under {t}"))?;
        ensure(image.discriminant() * ipow(&t.u, 12) == e.discriminant(), || format!("{e} under {t}"))?;
        ensure(b_discriminant(&image.coeffs()) == image.discriminant(), || format!("{image}"))?;
    }
    Ok("500 pairs".into())
}

fn laska_oracle() -> Outcome {
    let mut rng = rng(104);
    let mut corpus = Vec::new();
    while corpus.len() < 50 {
        let base = random_weierstrass(&mut rng, 10);
        // twelfth-power-free discriminants keep the true minimum within u <= 6
        if !twelfth_power_free(i128::try_from(base.discriminant()).unwrap()) {
            continue;
        }
        let u = int([2, 3, 5, 6][corpus.len() % 4]);
        let [r, s, t] = [0; 3].map(|_: i32| int(rng.gen_range(-5..=5)));
        corpus.push(WeierstrassEquation::new(inflate(&base.coeffs(), &u, &r, &s, &t)).unwrap());
    }
    for (e, res) in corpus.iter().zip(minimize_all(&corpus)) {
        let (m, t) = res.map_err(|err| format!("{e}: {err}"))?;
        ensure(e.transform(&t).ok().as_ref() == Some(&m), || format!("{e}: transformation does not map to output"))?;
        let (oracle, _) = brute_force_min_delta(to_i128(&e.coeffs()), 6, 60);
        let got = i128::try_from(m.discriminant().abs()).unwrap();
        ensure(got == oracle, || format!("{e}: |delta| {got} vs oracle {oracle}"))?;
    }
    Ok("50 inflated curves match".into())
}

fn worked_example() -> Outcome {
    let e = WeierstrassEquation::from_i64([0, 0, 0, 0, 64]).unwrap();
    let oracle = brute_force_min_delta(to_i128(&e.coeffs()), 6, 60);
    ensure(oracle == (432, 2), || format!("oracle gave {oracle:?}"))?;
    let (m, t) = laska_minimize(&e).map_err(|e| e.to_string())?;
    ensure(m.discriminant() == int(-432) && t.u == int(2), || format!("got {m} via {t}"))?;
    Ok(format!("{m}, u = 2"))
}

struct SuperCase {
    base: SuperellipticCurve,
    big: SuperellipticCurve,
    u: Integer,
    weight: u32,
}

fn super_corpus() -> Vec<SuperCase> {
    let mut rng = rng(106);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            let d = rng.gen_range(3..=8);
            let base = random_superelliptic(&mut rng, n, d, 9);
            let p = int(*[2, 3, 5].choose(&mut rng).unwrap());
            let e = rng.gen_range(1..=2);
            let u = ipow(&p, e);
            let big = SuperellipticCurve::new(n, inflate_superelliptic(&base, &u)).unwrap();
            let weight = n * (d * (d - 1)) as u32;
            SuperCase { base, big, u, weight }
        })
        .collect()
}

fn super_scaling_law(corpus: &[SuperCase]) -> Outcome {
    let bigs: Vec<_> = corpus.iter().map(|c| c.big.clone()).collect();
    for (case, (reduced, s)) in corpus.iter().zip(reduce_all(&bigs)) {
        ensure(s.u == case.u, || format!("{}: u = {} expected {}", case.big, s.u, case.u))?;
        ensure(reduced == case.base, || format!("{}: reduced to {reduced}", case.big))?;
        ensure(&s.new_delta * ipow(&case.u, case.weight) == s.old_delta, || format!("{}", case.big))?;
        ensure(is_scaling_isomorphism(case.big.coeffs(), reduced.coeffs(), case.big.n(), &s.u), || {
            format!("{}: not a scaling isomorphism", case.big)
        })?;
    }
    Ok("200 curves".into())
}

fn exhaustion(corpus: &[SuperCase]) -> Outcome {
    let mut primes = 0;
    for case in corpus {
        let (reduced, _) = case.big.reduce();
        for p in factorize(reduced.discriminant()).unwrap().primes() {
            let e = reduced.scaling_exponent_at(p).map_err(|e| e.to_string())?;
            ensure(e == 0, || format!("{reduced}: exponent {e} at {p}"))?;
            ensure(!any_integral_scaling(reduced.coeffs(), reduced.n(), p, 1), || format!("{reduced} at {p}"))?;
            primes += 1;
        }
    }
    Ok(format!("{primes} (curve, prime) pairs"))
}

fn certificate(corpus: &[SuperCase]) -> Outcome {
    let (mut certified, mut inconclusive) = (0, 0);
    for case in corpus {
        for curve in [&case.big, &case.big.reduce().0] {
            let a0 = &curve.coeffs()[0];
            for (p, status) in curve.minimality_certificate() {
                if status == Certificate::Inconclusive {
                    inconclusive += 1;
                    continue;
                }
                certified += 1;
                // any scaling by p^e needs p^(e n d) | a0, so this range is exhaustive
                let max_e = v_p(a0, &p) / (curve.n() * curve.degree() as u32) + 1;
                ensure(!any_integral_scaling(curve.coeffs(), curve.n(), &p, max_e), || {
                    format!("{curve}: certified at {p} but a scaling exists")
                })?;
            }
        }
    }
    Ok(format!("{certified} certified primes confirmed, {inconclusive} inconclusive"))
}

fn consistency() -> Outcome {
    let mut rng = rng(109);
    let mut checked = 0;
    while checked < 50 {
        let (a4, a6) = (int(rng.gen_range(-30..=30)), int(rng.gen_range(-30..=30)));
        let Ok(curve) = SuperellipticCurve::new(2, vec![a6, a4, int(0), int(1)]) else { continue };
        let big = curve.scale_up(&int(rng.gen_range(1..=6))).unwrap();
        let c = big.coeffs();
        let e = WeierstrassEquation::new([int(0), int(0), int(0), c[1].clone(), c[0].clone()]).unwrap();
        let (reduced, _) = big.reduce();
        let (emin, _) = scaling_minimize(&e).map_err(|e| e.to_string())?;
        // Weierstrass delta of y^2 = f is 16 disc(f)
        let expected: Integer = reduced.discriminant() * 16;
        ensure(emin.discriminant().abs() == expected.abs(), || format!("{big}: {emin}"))?;
        checked += 1;
    }
    Ok("50 short models".into())
}

enum Expect {
    Ok(CurveDocument),
    Code(i32),
}

fn mixed_documents() -> Vec<(String, Expect)> {
    let mut rng = rng(110);
    let mut docs = Vec::new();
    for i in 0..100 {
        let entry = match i % 10 {
            0..=3 => {
                let base = random_weierstrass(&mut rng, 10);
                let u = int(rng.gen_range(1..=6));
                let [r, s, t] = [0; 3].map(|_: i32| int(rng.gen_range(-4..=4)));
                let e = WeierstrassEquation::new(inflate(&base.coeffs(), &u, &r, &s, &t)).unwrap();
                let (m, _) = laska_minimize(&e).unwrap();
                let a: Vec<String> = e.coeffs().iter().map(|c| format!("\"{c}\"")).collect();
                (
                    format!(r#"{{"kind":"elliptic","a":[{}]}}"#, a.join(",")),
                    Expect::Ok(CurveDocument::elliptic(m.coeffs())),
                )
            }
            4..=6 => {
                let n = rng.gen_range(2..=4);
                let d = rng.gen_range(3..=6);
                let base = random_superelliptic(&mut rng, n, d, 9);
                let big = base.scale_up(&int(rng.gen_range(1..=4))).unwrap();
                let (reduced, _) = big.reduce();
                let f: Vec<String> = big.coeffs().iter().map(|c| format!("\"{c}\"")).collect();
                (
                    format!(r#"{{"kind":"superelliptic","n":{n},"f":[{}],"point":[1,2]}}"#, f.join(",")),
                    Expect::Ok(CurveDocument::superelliptic(reduced.n(), reduced.coeffs())),
                )
            }
            7 => {
                let c = rng.gen_range(1..=20);
                let singular = [
                    r#"{"kind":"elliptic","a":[0,0,0,0,0]}"#.to_string(),
                    format!(r#"{{"kind":"superelliptic","n":3,"f":[0,0,{c},0,1]}}"#),
                    format!(r#"{{"kind":"superelliptic","n":2,"f":[0,{},{},1]}}"#, c * c, 2 * c),
                ];
                (singular.choose(&mut rng).unwrap().clone(), Expect::Code(3))
            }
            8 => {
                let malformed = [
                    "{not json",
                    r#"{"kind":"elliptic","a":[1,2,3,4]}"#,
                    r#"{"kind":"superelliptic","n":3,"f":[1,0,0,0,0]}"#,
                    r#"{"kind":"superelliptic","n":2,"f":[1,1]}"#,
                    r#"{"kind":"hyperbolic","a":[0,0,0,0,1]}"#,
                    r#"{"kind":"elliptic","a":["x",0,0,0,1]}"#,
                ];
                (malformed.choose(&mut rng).unwrap().to_string(), Expect::Code(2))
            }
            _ => (r#"{"kind":"form","f":[1,0,1]}"#.to_string(), Expect::Code(2)),
        };
        docs.push(entry);
    }
    docs
}

fn run_binary(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_curvemin"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn cli_round_trip() -> Outcome {
    let docs = mixed_documents();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("mixed.jsonl");
    let body: Vec<&str> = docs.iter().map(|(d, _)| d.as_str()).collect();
    std::fs::write(&path, body.join("\n")).map_err(|e| e.to_string())?;

    let (code, out) = run_binary(&["--json", "--certificate", "minimize", "--batch", path.to_str().unwrap()], "");
    ensure(code == 3, || format!("batch exit code {code}, expected worst code 3"))?;
    let lines: Vec<&str> = out.lines().collect();
    ensure(lines.len() == docs.len(), || format!("{} output lines", lines.len()))?;

    for ((input, expect), line) in docs.iter().zip(&lines) {
        let parsed: BatchLine = serde_json::from_str(line).map_err(|e| format!("{line}: {e}"))?;
        ensure(serde_json::to_string(&parsed).unwrap() == *line, || format!("re-emit differs: {line}"))?;
        match (expect, &parsed) {
            (Expect::Ok(model), BatchLine::Result(r)) => {
                ensure(&r.minimal_model == model, || format!("{input}: model {line}"))?;
                ensure(r.satisfies_scaling_law(), || format!("{input}: scaling law"))?;
                let again: ResultDocument = serde_json::from_str(line).unwrap();
                ensure(again == **r, || format!("{input}: lossy"))?;
            }
            (Expect::Code(c), BatchLine::Error { error }) => {
                ensure(error.code == *c, || format!("{input}: code {} expected {c}", error.code))?;
            }
            _ => return Err(format!("{input}: unexpected line {line}")),
        }
        let (single, _) = run_binary(&["--json", "minimize"], input);
        let expected = match expect {
            Expect::Ok(_) => 0,
            Expect::Code(c) => *c,
        };
        ensure(single == expected, || format!("{input}: exit {single} expected {expected}"))?;
    }
    Ok("100 documents".into())
}

fn main() {
    let corpus = super_corpus();
    let criteria: Vec<Check> = vec![
        (1, "discriminant covariance", Duration::from_secs(10), Box::new(covariance)),
        (2, "root-product oracle", Duration::from_secs(5), Box::new(root_product)),
        (3, "elliptic scaling law", Duration::from_secs(5), Box::new(elliptic_scaling_law)),
        (4, "Laska oracle equivalence", Duration::from_secs(60), Box::new(laska_oracle)),
        (5, "worked elliptic reduction", Duration::from_secs(1), Box::new(worked_example)),
        (6, "superelliptic scaling law", Duration::from_secs(30), Box::new(|| super_scaling_law(&corpus))),
        (7, "exhaustion invariant", Duration::from_secs(10), Box::new(|| exhaustion(&corpus))),
        (8, "minimality certificate", Duration::from_secs(30), Box::new(|| certificate(&corpus))),
        (9, "consistency n = 2, d = 3", Duration::from_secs(10), Box::new(consistency)),
        (10, "CLI round trip", Duration::from_secs(10), Box::new(cli_round_trip)),
    ];
    let mut failures = 0;
    for (n, name, budget, check) in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()))
            .and_then(|detail| {
                let elapsed = start.elapsed();
                if elapsed > *budget {
                    Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
                } else {
                    Ok(detail)
                }
            });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {n}: {name} ({detail}) in {elapsed:.2?}"),
            Err(why) => {
                failures += 1;
                println!("[FAIL] criterion {n}: {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
