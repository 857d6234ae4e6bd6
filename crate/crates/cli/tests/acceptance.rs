//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hirz_core::construction::VerifyReport;
use hirz_core::gaeta::{brute_force_feasible, find_l, threshold_met, GaetaSearch};
use hirz_core::general_betti::{betti, is_special, Speciality};
use hirz_core::global_generation::{gg_hirzebruch, gg_p2, Generation, GgClause, P2Character};
use hirz_core::ampleness::ample_status_p2;
use hirz_core::line_cohomology::{cohomology, cohomology_oracle};
use hirz_core::rational::{frac, int, Q};
use hirz_core::{ChernCharacter, DivisorClass, Error, Grid, Surface};
use num_bigint::BigInt;
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn line_bundle_oracle() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for e in 0..=4 {
        let s = Surface::new(e);
        for a in -10..=10 {
            for b in -10..=10 {
                let d = DivisorClass::new(a, b);
                let got = cohomology(s, d).numbers();
                let want = cohomology_oracle(s, d).numbers();
                check(got == want, || format!("e={e} D={d}: {got:?} vs oracle {want:?}"))?;
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    check(cases == 5 * 441, || format!("{cases} cases"))?;
    Ok(format!("{cases} cases equal, {elapsed:.2?}"))
}

fn acyclic_families() -> Outcome {
    let mut cases = 0;
    for e in 0..=4u32 {
        let s = Surface::new(e);
        let ei = i64::from(e);
        let mut family = vec![DivisorClass::new(0, -1), DivisorClass::new(-2, -(ei + 1))];
        family.extend((-10..=10).map(|b| DivisorClass::new(-1, b)));
        for d in family {
            check(cohomology(s, d).is_zero(), || format!("e={e} D={d} has cohomology"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} line bundles with (0,0,0)"))
}

fn betti_consistency(points: &[(Surface, ChernCharacter)]) -> Outcome {
    let start = Instant::now();
    let (mut checked, mut reversed, mut skipped) = (0, 0, 0);
    for (s, v) in points {
        let b = match betti(*s, v) {
            Ok(b) => b.triple,
            Err(Error::UnsupportedRankOne) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(format!("{v} on {s}: {e}")),
        };
        check(b.euler_characteristic() == v.chi(*s), || format!("{v} on {s}: {b} vs chi {}", v.chi(*s)))?;
        checked += 1;
        if v.rank >= 2 {
            let dual = betti(*s, &v.serre_dual(*s)).map_err(|e| format!("dual of {v} on {s}: {e}"))?.triple;
            check(b.reversed().numbers() == dual.numbers(), || format!("{v} on {s}: {b} vs dual {dual}"))?;
            reversed += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "chi exact on {checked} characters, Serre reversal on {reversed}, {skipped} unsupported rank-one skipped, {elapsed:.2?}"
    ))
}

fn construction_agreement() -> Outcome {
    let start = Instant::now();
    let report: VerifyReport = hirz_cli::verify_grid(&Grid::full());
    let elapsed = start.elapsed();
    if let Some((s, v, why)) = report.failures.first() {
        return Err(format!("{} failures, first {v} on {s}: {why}", report.failures.len()));
    }
    within(elapsed, Duration::from_secs(30))?;
    check(report.matches > 0, || "no matches".into())?;
    Ok(format!(
        "{} points, {} matches (100% of non-abstentions), {} abstentions (rate {:.1}%), {} unsupported, {elapsed:.2?}",
        report.grid_size,
        report.matches,
        report.abstentions,
        100.0 * report.abstention_rate(),
        report.unsupported
    ))
}

fn gaeta_thresholds(points: &[(Surface, ChernCharacter)]) -> Outcome {
    let (mut guaranteed, mut found, mut infeasible) = (0, 0, 0);
    for (s, v) in points {
        let must = threshold_met(*s, &v.delta(*s));
        match find_l(*s, v).map_err(|e| format!("{v} on {s}: {e}"))? {
            GaetaSearch::Found { resolution, .. } => {
                check(resolution.character(*s) == *v, || format!("{v} on {s}: reconstruction fails"))?;
                check(resolution.exponents.rank() == BigInt::from(v.rank), || format!("{v} on {s}: rank"))?;
                found += 1;
            }
            GaetaSearch::Infeasible { .. } => {
                check(!must, || format!("{v} on {s}: no twist although threshold holds"))?;
                infeasible += 1;
            }
        }
        if must {
            guaranteed += 1;
        }
    }
    Ok(format!(
        "{guaranteed} characters above threshold all resolved; {found} resolutions reconstruct exactly; {infeasible} below-threshold infeasible"
    ))
}

fn gaeta_counterexample() -> Outcome {
    let s = Surface::new(0);
    let v = ChernCharacter::from_parts(6, 3, 3, int(1));
    check(v.delta(s) == frac(1, 12), || format!("delta {}", v.delta(s)))?;
    match find_l(s, &v).map_err(|e| e.to_string())? {
        GaetaSearch::Infeasible { guaranteed: false, region } => {
            let hits = brute_force_feasible(s, &v, &region);
            check(hits.is_empty(), || format!("exhaustive scan found {hits:?}"))?;
            Ok(format!("Infeasible, guaranteed=false; exhaustive scan of {} box points empty", region.point_count()))
        }
        other => Err(format!("{other:?}")),
    }
}

/// Riemann-Roch written out for this test: χ(r, kE+lF, ch2) = ch2 - ke/2 + k + l + r,
/// with twists by -D = -(aE+bF) expanded by hand.
fn hand_chi(e: i64, r: i64, k: i64, l: i64, ch2: Q, a: i64, b: i64) -> Q {
    // c1·D = -ek·a + k·b + l·a;  D² = -e·a² + 2ab
    let c1_dot_d = -e * k * a + k * b + l * a;
    let d_sq = -e * a * a + 2 * a * b;
    let (k2, l2) = (k - r * a, l - r * b);
    let ch2_2 = ch2 - int(c1_dot_d) + frac(r * d_sq, 2);
    ch2_2 - frac(k2 * e, 2) + int(k2 + l2 + r)
}

fn worked_gaeta() -> Outcome {
    let s = Surface::new(2);
    let v = ChernCharacter::from_parts(2, 0, 0, int(-1));
    let chi = |a, b| hand_chi(2, 2, 0, 0, int(-1), a, b);
    let hand = [-chi(1, 1), -chi(1, 0), -chi(0, 1), chi(0, 0)];
    check(hand == [int(1), int(1), int(1), int(1)], || format!("hand exponents {hand:?}"))?;
    match find_l(s, &v).map_err(|e| e.to_string())? {
        GaetaSearch::Found { resolution, .. } => {
            check(resolution.l == DivisorClass::ZERO, || format!("L = {}", resolution.l))?;
            let x = &resolution.exponents;
            let got = [&x.alpha, &x.beta, &x.gamma, &x.delta].map(|n| Q::from_integer(n.clone()));
            check(got == hand, || format!("exponents {x}"))?;
            check(x.rank() == BigInt::from(2), || format!("rank {}", x.rank()))?;
            Ok(format!("L = O, exponents {x}, 1+1+1-1 = 2"))
        }
        other => Err(format!("{other:?}")),
    }
}

fn global_generation(points: &[(Surface, ChernCharacter)]) -> Outcome {
    let f1 = Surface::new(1);
    for r in 2..=10 {
        let v = ChernCharacter::from_parts(r, 2, 2, int(-2));
        check(v.chi(f1) == BigInt::from(r + 1), || format!("chi of {v}"))?;
        let g = gg_hirzebruch(f1, &v).map_err(|e| e.to_string())?;
        check(g.clause == Some(GgClause::Exceptional), || format!("{v}: {g}"))?;
        let p = P2Character::new(r, 2, int(-2));
        let g = gg_p2(&p).map_err(|e| e.to_string())?;
        check(g.clause == Some(GgClause::Exceptional), || format!("{p}: {g}"))?;
    }
    let g = gg_hirzebruch(f1, &ChernCharacter::from_parts(2, 0, 2, int(-1))).map_err(|e| e.to_string())?;
    check(g.verdict == Generation::NotGloballyGenerated, || format!("(2, 2F, -1): {g}"))?;
    let mut generated = 0;
    for (s, v) in points {
        if let Ok(g) = gg_hirzebruch(*s, v) {
            if g.is_globally_generated() {
                let sp = is_special(*s, v).map_err(|e| format!("{v} on {s}: {e}"))?;
                check(sp.verdict == Speciality::Nonspecial, || format!("{v} on {s} generated but special"))?;
                generated += 1;
            }
        }
    }
    Ok(format!("clause 4 on F_1 and P2 for r in [2,10]; (2,2F,-1) not generated; {generated} generated grid characters all nonspecial"))
}

fn ampleness_boundary() -> Outcome {
    let mut holds = Vec::new();
    for d in 2..=12 {
        let v = P2Character::new(2, 2 * d - 4, int(2 - d * d));
        let st = ample_status_p2(&v).map_err(|e| e.to_string())?;
        check(st.star_lhs == frac((d - 2) * (d - 2), 2), || format!("d={d} lhs {}", st.star_lhs))?;
        check(st.star_rhs == frac((d - 1) * (d - 1), 3), || format!("d={d} rhs {}", st.star_rhs))?;
        check(st.star_holds() == (d >= 7), || format!("d={d}: star {}", st.star_holds()))?;
        if st.star_holds() {
            holds.push(d);
        }
    }
    Ok(format!("(*) holds exactly for d in {holds:?}"))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = hirz_cli::run(std::iter::once("hirz").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

fn batch_requests() -> Vec<Value> {
    let mut items = Vec::new();
    for e in 0..=3 {
        for (r, k, l, ch2) in [(2, 1, -1, "-2"), (2, 0, 0, "-1"), (3, 2, 5, "0"), (6, 3, 3, "1"), (2, 2, 2, "-2")] {
            for cmd in ["betti", "special", "gaeta", "gg", "ample"] {
                items.push(json!({"cmd": cmd, "surface": {"type": "fe", "e": e}, "rank": r, "c1": [k, l], "ch2": ch2}));
            }
        }
        items.push(json!({"cmd": "lb", "surface": {"type": "fe", "e": e}, "c1": [-3, 1]}));
    }
    for d in 2..=8 {
        items.push(json!({"cmd": "ample", "surface": {"type": "p2"}, "rank": 2, "c1": 2 * d - 4, "ch2": (2 - d * d).to_string()}));
        items.push(json!({"cmd": "gg", "surface": {"type": "p2"}, "rank": 3, "c1": d, "ch2": "-2"}));
    }
    items
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("in.json");
    let items = batch_requests();
    std::fs::write(&input, serde_json::to_string(&items).unwrap()).map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for i in 0..3 {
        let out = dir.path().join(format!("out{i}.json"));
        let (code, _) = run_cli(&["batch", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        check(code == 0, || format!("batch exit {code}"))?;
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    check(outputs.windows(2).all(|w| w[0] == w[1]), || "batch runs differ".into())?;

    // Sequential evaluation gives the same bytes as the parallel batch.
    let sequential = Value::Array(items.iter().map(hirz_cli::request::respond).collect());
    let sequential = serde_json::to_string_pretty(&sequential).unwrap() + "\n";
    check(sequential.as_bytes() == outputs[0].as_slice(), || "parallel and sequential differ".into())?;

    // Strip results from the emitted JSON, rerun, compare.
    let emitted: Vec<Value> = serde_json::from_slice(&outputs[0]).map_err(|e| e.to_string())?;
    let stripped: Vec<Value> = emitted
        .iter()
        .map(|v| {
            let mut m = v.as_object().unwrap().clone();
            m.remove("result");
            Value::Object(m)
        })
        .collect();
    let again = serde_json::to_string_pretty(&Value::Array(hirz_cli::run_batch(&stripped))).unwrap() + "\n";
    check(again.as_bytes() == outputs[0].as_slice(), || "round trip differs".into())?;

    let single = ["gaeta", "--e", "2", "--r", "2", "--c1", "0,0", "--ch2", "-1", "--all", "--json"];
    let (c1, o1) = run_cli(&single);
    let (c2, o2) = run_cli(&single);
    check(c1 == 0 && c2 == 0 && o1 == o2, || "single command output differs".into())?;
    Ok(format!("{} requests: 3 parallel batch runs, sequential run and JSON round trip byte-identical", items.len()))
}

fn main() -> ExitCode {
    let points = Grid::full().points();
    let criteria: Vec<Criterion> = vec![
        ("line-bundle cohomology equals pushforward oracle", Box::new(line_bundle_oracle)),
        ("line bundles without cohomology", Box::new(acyclic_families)),
        ("Betti chi-consistency and Serre reversal on the grid", Box::new(|| betti_consistency(&points))),
        ("direct-sum models agree with Betti numbers", Box::new(construction_agreement)),
        ("Gaeta thresholds and reconstruction", Box::new(|| gaeta_thresholds(&points))),
        ("Gaeta counterexample (6, 3E+3F, 1) on F_0", Box::new(gaeta_counterexample)),
        ("worked Gaeta resolution (2, 0, -1) on F_2", Box::new(worked_gaeta)),
        ("global generation", Box::new(|| global_generation(&points))),
        ("ampleness boundary for (2, 2d-4, 2-d^2) on P2", Box::new(ampleness_boundary)),
        ("determinism of JSON output", Box::new(determinism)),
    ];
    println!("grid: {} ({} characters)", Grid::full(), points.len());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
