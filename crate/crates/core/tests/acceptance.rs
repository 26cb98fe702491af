//! Acceptance suite: each test drives one release criterion end to end, at
//! the documented bound, and prints a one-line PASS with its runtime (visible
//! with `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde_json::Value;

use squareful::arith::is_perfect_square;
use squareful::curves::{
    integral_points_bounded, pull_x, push_point, quartic_to_weierstrass, IntegralPoint,
    QuarticCurve, WeierstrassCurve,
};
use squareful::pell::base_solutions;
use squareful::powerful::enumerate_powerful;

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["squareful"];
    argv.extend(args);
    let mut buf = Vec::new();
    let code = squareful::cli::run(argv.iter().map(|s| s.to_string()), &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["squareful", "--json"];
    argv.extend(args);
    let mut buf = Vec::new();
    let code = squareful::cli::run(argv.iter().map(|s| s.to_string()), &mut buf);
    (code, serde_json::from_slice(&buf).expect("valid JSON envelope"))
}

fn pass(criterion: u32, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "criterion {criterion} took {elapsed:?}, budget {budget:?}"
    );
    println!(
        "acceptance {criterion:>2} PASS ({:>6} ms): {what}",
        elapsed.as_millis()
    );
}

#[test]
fn acceptance_01_powerful_list_matches_initial_segment() {
    let t = Instant::now();
    let (code, out) = run_cli(&["powerful", "list", "--limit", "72"]);
    assert_eq!(code, 0);
    let values: Vec<u64> = out
        .split_whitespace()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(values, vec![1, 4, 8, 9, 16, 25, 27, 32, 36, 49, 64, 72]);
    pass(1, "powerful list --limit 72 is exact", t, Duration::from_secs(1));
}

#[test]
fn acceptance_02_pell_d3_fundamental_and_stream() {
    let t = Instant::now();
    let (code, v) = run_json(&["pell", "solve", "3", "--count", "10"]);
    assert_eq!(code, 0);
    let unit = &v["result"]["fundamental_unit"];
    assert_eq!((unit["x"].as_u64(), unit["y"].as_u64()), (Some(2), Some(1)));
    let sols: Vec<(u64, u64)> = v["result"]["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["x"].as_u64().unwrap(), s["y"].as_u64().unwrap()))
        .collect();
    assert_eq!(&sols[..4], &[(2, 1), (7, 4), (26, 15), (97, 56)]);
    for w in sols.windows(3) {
        assert_eq!(w[2].0, 4 * w[1].0 - w[0].0, "x recurrence");
        assert_eq!(w[2].1, 4 * w[1].1 - w[0].1, "y recurrence");
    }
    pass(2, "pell solve 3 fundamental + recurrence", t, Duration::from_secs(1));
}

#[test]
fn acceptance_03_generalized_pell_3_minus_2() {
    let t = Instant::now();
    let (code, v) = run_json(&["pell", "solve", "3", "--n", "-2", "--count", "4"]);
    assert_eq!(code, 0);
    let sols: Vec<(i64, i64)> = v["result"]["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["x"].as_i64().unwrap(), s["y"].as_i64().unwrap()))
        .collect();
    assert_eq!(sols, vec![(1, 1), (5, 3), (19, 11), (71, 41)]);
    for (x, y) in sols {
        assert_eq!(x * x - 3 * y * y, -2);
    }
    pass(3, "pell solve 3 --n -2 stream", t, Duration::from_secs(1));
}

#[test]
fn acceptance_04_curve_lists_at_one_million() {
    let t = Instant::now();
    let bound = BigUint::from(1_000_000u32);
    let expect = |pts: &[(i64, i64)]| -> Vec<IntegralPoint> {
        let mut v: Vec<IntegralPoint> = pts
            .iter()
            .map(|&(x, y)| IntegralPoint::new(x, y))
            .collect();
        v.sort();
        v
    };
    let cases: Vec<(WeierstrassCurve, Vec<IntegralPoint>)> = vec![
        (WeierstrassCurve::new(-3, 9, 0), expect(&[(0, 0)])),
        (
            WeierstrassCurve::new(3, 9, 0),
            expect(&[(0, 0), (3, 9), (3, -9)]),
        ),
        (
            WeierstrassCurve::new(0, 0, 1),
            expect(&[(-1, 0), (0, 1), (0, -1), (2, 3), (2, -3)]),
        ),
        (WeierstrassCurve::new(0, 0, -1), expect(&[(1, 0)])),
    ];
    for (curve, expected) in cases {
        let found = integral_points_bounded(&curve, &bound);
        assert_eq!(
            found, expected,
            "curve Y^2 = X^3 + {}X^2 + {}X + {}",
            curve.a2, curve.a4, curve.a6
        );
    }
    pass(4, "four registry curves reproduced at 10^6", t, Duration::from_secs(30));
}

#[test]
fn acceptance_05_theorem_to_ten_thousand() {
    let t = Instant::now();
    let (code, v) = run_json(&["verify", "theorem", "--max", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["counterexamples"].as_array().unwrap().len(), 0);
    assert_eq!(v["result"]["incomplete"].as_array().unwrap().len(), 0);
    assert_eq!(v["result"]["examined"].as_u64(), Some(9999));
    pass(5, "verify theorem --max 10000 clean", t, Duration::from_secs(600));
}

#[test]
fn acceptance_06_corollary_to_one_thousand() {
    let t = Instant::now();
    let (code, v) = run_json(&["verify", "corollary", "--max", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["counterexamples"].as_array().unwrap().len(), 0);
    let notes = v["result"]["notes"].as_array().unwrap();
    let x1 = notes
        .iter()
        .map(|n| n.as_str().unwrap())
        .find(|n| n.starts_with("x=1:"))
        .expect("x = 1 must be logged");
    assert!(x1.contains("63 = 3^2 * 7"), "{x1}");
    pass(6, "verify corollary --max 1000 clean, x=1 via 63", t, Duration::from_secs(600));
}

/// Trial-division powerful test used as the independent oracle.
fn oracle_is_powerful(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            if e < 2 {
                return false;
            }
        }
        p += 1;
    }
    m == 1
}

#[test]
fn acceptance_07_triples_scan_to_ten_billion() {
    let t = Instant::now();
    let (code, v) = run_json(&["verify", "triples", "--limit", "10000000000"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["counterexamples"].as_array().unwrap().len(), 0);
    let starts: Vec<u64> = v["result"]["observations"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|o| o["label"] == "pair_run_start")
        .map(|o| o["value"].as_u64().unwrap())
        .collect();
    for required in [8, 288, 675, 9800] {
        assert!(starts.contains(&required), "missing pair start {required}");
    }
    // Cross-check every reported pair below 10^6 against the brute oracle.
    let below_million: Vec<u64> = starts.iter().copied().filter(|&s| s < 1_000_000).collect();
    let mut brute = Vec::new();
    for n in 2u64..1_000_000 {
        if oracle_is_powerful(n) && oracle_is_powerful(n + 1) {
            brute.push(n);
        }
    }
    assert_eq!(below_million, brute);
    pass(7, "verify triples --limit 10^10, pairs oracle-checked", t, Duration::from_secs(300));
}

#[test]
fn acceptance_08_lemma_and_gcd_suites_to_one_million() {
    let t = Instant::now();
    for suite in [
        ["verify", "lemmas", "--max", "1000000"],
        ["verify", "gcds", "--max", "1000000"],
    ] {
        let (code, v) = run_json(&suite);
        assert_eq!(code, 0, "{suite:?}");
        assert_eq!(v["status"], "ok", "{suite:?}");
        assert_eq!(
            v["result"]["counterexamples"].as_array().unwrap().len(),
            0,
            "{suite:?}"
        );
        assert_eq!(v["result"]["examined"].as_u64(), Some(1_000_000));
    }
    pass(8, "lemma + gcd identity suites at 10^6", t, Duration::from_secs(120));
}

#[test]
fn acceptance_09_sequence_collision_to_k200() {
    let t = Instant::now();
    let (code, v) = run_json(&["verify", "collision", "--kmax", "200"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["counterexamples"].as_array().unwrap().len(), 0);
    let notes: Vec<&str> = v["result"]["notes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n.as_str().unwrap())
        .collect();
    assert!(notes.iter().any(|n| n.contains("only at k = l = 1")));
    pass(9, "verify collision --kmax 200 identities", t, Duration::from_secs(5));
}

/// Small deterministic xorshift so the 200 quartics are reproducible.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

#[test]
fn acceptance_10_quartic_transform_property_suite() {
    let t = Instant::now();
    let mut rng = Rng(0x5eed_cafe_f00d_1234);
    let mut curves = 0;
    let mut points = 0;
    while curves < 200 {
        let a = rng.in_range(-20, 20);
        if a == 0 {
            continue;
        }
        let c = rng.in_range(-20, 20);
        let e = rng.in_range(-20, 20);
        curves += 1;
        let q = QuarticCurve::new(a, c, e);
        let w = quartic_to_weierstrass(&q);
        for x in -50i64..=50 {
            if x == 0 {
                continue;
            }
            let x = BigInt::from(x);
            let rhs = q.eval(&x);
            if rhs < BigInt::zero() {
                continue;
            }
            if let Some(y) = is_perfect_square(rhs.magnitude()) {
                points += 1;
                let p = push_point(&q, &x, &BigInt::from(y)).unwrap();
                assert!(w.contains(&p.x, &p.y), "a={a} c={c} e={e} x={x}");
                if x > BigInt::zero() {
                    assert_eq!(pull_x(&q, &p), x.to_biguint(), "a={a} c={c} e={e}");
                }
            }
        }
    }
    assert!(points > 0, "the sample must exercise real points");
    pass(
        10,
        "200 random quartics push/pull with zero failures",
        t,
        Duration::from_secs(5),
    );
}

#[test]
fn acceptance_11_oracle_equivalences() {
    let t = Instant::now();
    // Enumeration against the brute-force predicate on [1, 10^5].
    let enumerated: Vec<u64> = enumerate_powerful(&BigUint::from(100_000u32))
        .map(|v| v.to_u64().unwrap())
        .collect();
    let brute: Vec<u64> = (1..=100_000u64).filter(|&n| oracle_is_powerful(n)).collect();
    assert_eq!(enumerated, brute);

    // Class representatives against brute force y <= 10^4.
    for (d, n, expected) in [
        (3u64, 1i64, vec![(2u64, 1u64)]),
        (3, -2, vec![(1, 1)]),
        (2, 1, vec![(3, 2)]),
        (3, 2, vec![]),
    ] {
        let got: Vec<(u64, u64)> = base_solutions(&BigUint::from(d), &BigInt::from(n))
            .unwrap()
            .into_iter()
            .map(|s| (s.x.to_u64().unwrap(), s.y.to_u64().unwrap()))
            .collect();
        assert_eq!(got, expected, "D={d} N={n}");
        // Brute force: minimal positive solution, if any, matches the first
        // representative.
        let mut minimal: Option<(u64, u64)> = None;
        'scan: for y in 1..=10_000u64 {
            let val = n as i128 + (d as i128) * (y as i128) * (y as i128);
            if val <= 0 {
                continue;
            }
            let x = (val as f64).sqrt() as u64;
            for cand in [x.saturating_sub(1), x, x + 1] {
                if cand > 0 && (cand as i128) * (cand as i128) == val {
                    minimal = Some((cand, y));
                    break 'scan;
                }
            }
        }
        assert_eq!(minimal, expected.first().copied(), "D={d} N={n}");
    }
    pass(11, "enumeration + base solutions oracle equivalence", t, Duration::from_secs(60));
}
