//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gdwn::beatty::beatty_a;
use gdwn::ordering::OrderingProblem;
use gdwn::sequence::{density_profile, partial_sum_compare};
use gdwn::split::{estimate_slopes, sector_census, upper_indices, verify_recurrence, DEFAULT_TAIL_FRACTION};
use gdwn::{fast_p_sequence, verify_equivalence, GameSpec, Rational};
use gdwn_cli::run_with;
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use serde_json::Value;

const MAX_A: u64 = 50_000;
const EQUIVALENCE_BOUND: u64 = 300;
const DENSITY_SLACK: (u64, u64) = (1, 50);
const DENSITY_FROM: u64 = 1_000;
const DENSITY_STEP: u64 = 1_000;
const SPLIT_ALPHA: &str = "2";
const SPLIT_EPSILON: &str = "0.05";
const SPLIT_MAX_LAST_HIT_FRACTION: f64 = 0.1;
const SPLIT_MIN_SIDE: usize = 100;
const UPPER_SLOPE_RANGE: (f64, f64) = (2.227, 2.267);
const MID_SLOPE_RANGE: (f64, f64) = (1.457, 1.497);
const ORDERING_INSTANCES: usize = 200;
const ORDERING_MAX_SET: usize = 10;
const ORDERING_MAX_HORIZON: u64 = 25;
const BEATTY_SAMPLES: usize = 1_000;
const BEATTY_MAX_N: u64 = 1_000_000_000_000;
const BEATTY_DIGITS: u32 = 200;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("gdwn").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn wythoff_rows() -> Outcome {
    let (code, out) = cli(&["wythoff-table", "--max-n", "6"]);
    ensure(code == 0, || format!("exit code {code}"))?;
    let mut cols: [Vec<u64>; 3] = Default::default();
    for line in out.lines().skip(1) {
        let f: Vec<u64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        for (c, v) in cols.iter_mut().zip(&f[1..]) {
            c.push(*v);
        }
    }
    ensure(out.starts_with("n,A,B,Delta\n"), || "missing header".into())?;
    ensure(cols[0] == [0, 1, 3, 4, 6, 8, 9], || format!("A = {:?}", cols[0]))?;
    ensure(cols[1] == [0, 2, 5, 7, 10, 13, 15], || format!("B = {:?}", cols[1]))?;
    ensure(cols[2] == [0, 1, 2, 3, 4, 5, 6], || format!("Delta = {:?}", cols[2]))?;
    Ok("A, B and Delta match exactly".into())
}

fn gdwn12_rows() -> Outcome {
    let (code, out) = cli(&["solve", "--game", "gdwn:1,2", "--max-a", "9"]);
    ensure(code == 0, || format!("exit code {code}"))?;
    let rows: Vec<(u64, u64, u64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    let expected = [(0, 0, 0), (1, 3, 2), (2, 6, 4), (4, 5, 1), (7, 10, 3), (8, 14, 6), (9, 17, 8)];
    ensure(rows == expected, || format!("rows {rows:?}"))?;
    Ok("7 pairs and differences match exactly".into())
}

fn bad_prefix() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("bad_prefix.csv");
    std::fs::write(&path, "n,a,b\n0,0,0\n1,1,2\n2,3,5\n3,4,6\n4,7,10\n5,8,13\n6,9,15\n").map_err(|e| e.to_string())?;
    let (code, out) = cli(&["propw", "--in", path.to_str().unwrap()]);
    ensure(code == 2, || format!("exit code {code}, expected 2"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let viol = &v["result"]["details"]["violation"];
    ensure(
        viol["kind"] == "duplicate_delta" && viol["index_i"] == 2 && viol["index_j"] == 3,
        || format!("violation {viol}"),
    )?;
    Ok("duplicate_delta at (2,3)".into())
}

fn equivalence() -> Outcome {
    let mut cells = 0;
    for g in ["nim", "wythoff", "gdwn:1,2", "gdwn:2,3"] {
        let rep = verify_equivalence(g.parse().unwrap(), EQUIVALENCE_BOUND).map_err(|e| e.to_string())?;
        ensure(rep.agree, || format!("{g}: {:?}", rep.first_mismatch))?;
        ensure(rep.oracle_checked == (g == "wythoff"), || format!("{g}: closed form not consulted"))?;
        cells += rep.cells_checked;
    }
    Ok(format!("4 games agree on {cells} cells (closed form included for wythoff)"))
}

fn gdwn12() -> GameSpec {
    GameSpec::gdwn(1, 2).unwrap()
}

fn recurrence() -> Outcome {
    let seq = fast_p_sequence(gdwn12(), MAX_A);
    let beam = upper_indices(&seq, 1, 2);
    let rep = verify_recurrence(&seq, &beam).map_err(|e| e.to_string())?;
    ensure(rep.ok && rep.failures == 0, || format!("{} failures, first {:?}", rep.failures, rep.first_failure))?;
    ensure(rep.pairs_checked > 0, || "empty beam".into())?;
    Ok(format!("{} consecutive beam pairs, 0 failures", rep.pairs_checked))
}

fn density() -> Outcome {
    let samples: Vec<u64> = (1..=MAX_A / DENSITY_STEP).map(|i| i * DENSITY_STEP).collect();
    let slack = Rational::new(DENSITY_SLACK.0, DENSITY_SLACK.1);
    let mut notes = Vec::new();
    let mut failed = false;
    for g in ["gdwn:1,2", "gdwn:2,3"] {
        let seq = fast_p_sequence(g.parse().unwrap(), MAX_A);
        let prof = density_profile(&seq, &samples).map_err(|e| e.to_string())?;
        let min = prof
            .samples
            .iter()
            .filter(|s| s.n >= DENSITY_FROM)
            .map(|s| s.tau)
            .fold(f64::INFINITY, f64::min);
        match prof.lower_bound_violation(slack, DENSITY_FROM) {
            None => notes.push(format!("{g} tau ok (min {min:.4})")),
            Some(s) => {
                failed = true;
                notes.push(format!("{g} tau({}) = {:.4} below bound", s.n, s.tau));
            }
        }
        let sums = partial_sum_compare(&seq).map_err(|e| e.to_string())?;
        if sums.ok {
            notes.push(format!("{g} prefix sums ok"));
        } else {
            failed = true;
            notes.push(format!(
                "{g} prefix sums fail at {} prefixes (first n={}, last n={}) although Property W holds",
                sums.failures,
                sums.first_failure.unwrap(),
                sums.last_failure.unwrap()
            ));
        }
    }
    let text = notes.join("; ");
    if failed {
        Err(text)
    } else {
        Ok(text)
    }
}

fn split_census() -> Outcome {
    let seq = fast_p_sequence(gdwn12(), MAX_A);
    let alpha: Rational = SPLIT_ALPHA.parse().unwrap();
    let eps: Rational = SPLIT_EPSILON.parse().unwrap();
    let c = sector_census(&seq, alpha, eps).map_err(|e| e.to_string())?;
    let fraction = c.last_hit_index.map_or(0.0, |i| i as f64 / c.sequence_length as f64);
    ensure(fraction <= SPLIT_MAX_LAST_HIT_FRACTION, || format!("last hit fraction {fraction}"))?;
    ensure(
        c.total_below > SPLIT_MIN_SIDE && c.total_above > SPLIT_MIN_SIDE,
        || format!("below {}, above {}", c.total_below, c.total_above),
    )?;
    Ok(format!(
        "{} hits (last index {:?} of {}), below {}, above {}; emptiness reported, not proved",
        c.hits.len(),
        c.last_hit_index,
        c.sequence_length,
        c.total_below,
        c.total_above
    ))
}

fn slopes() -> Outcome {
    let seq = fast_p_sequence(gdwn12(), MAX_A);
    let beam = upper_indices(&seq, 1, 2);
    let est = estimate_slopes(&seq, &beam, DEFAULT_TAIL_FRACTION).map_err(|e| e.to_string())?;
    let up = est.upper_slope.ok_or("no upper beam")?;
    let within = |x: f64, (lo, hi): (f64, f64)| lo <= x && x <= hi;
    ensure(within(up, UPPER_SLOPE_RANGE), || format!("upper slope {up}"))?;
    ensure(within(est.mid_slope, MID_SLOPE_RANGE), || format!("mid slope {}", est.mid_slope))?;
    Ok(format!("upper {up:.6}, mid {:.6}", est.mid_slope))
}

/// Definition-only search over injective assignments, cut only when a
/// difference repeats or too few slots remain for unmet mandatory elements.
fn exhaustive_ordering(set: &[u64], horizon: u64, positive: bool) -> bool {
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        set: &[u64],
        comp: &[u64],
        mandatory: &HashSet<u64>,
        positive: bool,
        used: &mut [bool],
        diffs: &mut HashSet<i64>,
        unmet: usize,
    ) -> bool {
        if unmet > set.len() - i {
            return false;
        }
        if i == set.len() {
            return true;
        }
        for j in 0..comp.len() {
            let d = comp[j] as i64 - set[i] as i64;
            if used[j] || (positive && d <= 0) || diffs.contains(&d) {
                continue;
            }
            let m = mandatory.contains(&comp[j]) as usize;
            used[j] = true;
            diffs.insert(d);
            let ok = go(i + 1, set, comp, mandatory, positive, used, diffs, unmet - m);
            diffs.remove(&d);
            used[j] = false;
            if ok {
                return true;
            }
        }
        false
    }
    let comp: Vec<u64> = (1..=horizon).filter(|v| !set.contains(v)).collect();
    let max_s = set.iter().copied().max().unwrap_or(0);
    let mandatory: HashSet<u64> = comp.iter().copied().filter(|&c| c < max_s).collect();
    let mut used = vec![false; comp.len()];
    go(0, set, &comp, &mandatory, positive, &mut used, &mut HashSet::new(), mandatory.len())
}

fn ordering() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x0dd_0de);
    let mut found = 0;
    for _ in 0..ORDERING_INSTANCES {
        let horizon = rng.gen_range(2..=ORDERING_MAX_HORIZON);
        let k = rng.gen_range(1..=ORDERING_MAX_SET.min(horizon as usize / 2));
        let mut set: Vec<u64> = sample(&mut rng, horizon as usize, k).into_iter().map(|v| v as u64 + 1).collect();
        set.sort_unstable();
        let positive = rng.gen_bool(0.5);
        let prob = OrderingProblem::new(&set, horizon, positive).map_err(|e| e.to_string())?;
        let res = prob.solve();
        let truth = exhaustive_ordering(&set, horizon, positive);
        ensure(res.exists == truth, || format!("{set:?} horizon {horizon}: solver {}, exhaustive {truth}", res.exists))?;
        if let Some(w) = &res.witness {
            let ts: Vec<u64> = w.iter().map(|a| a.t).collect();
            ensure(prob.is_witness(&ts), || format!("{set:?}: invalid witness {ts:?}"))?;
            found += 1;
        }
    }
    Ok(format!("{ORDERING_INSTANCES} instances agree ({found} feasible)"))
}

fn beatty() -> Outcome {
    let scale = BigUint::from(10u32).pow(BEATTY_DIGITS);
    let phi = ((BigUint::from(5u32) * &scale * &scale).sqrt() + &scale) / 2u32;
    let mut rng = StdRng::seed_from_u64(0x00be_a77e);
    for _ in 0..BEATTY_SAMPLES {
        let n = rng.gen_range(1..=BEATTY_MAX_N);
        let reference = u64::try_from((BigUint::from(n) * &phi) / &scale).map_err(|e| e.to_string())?;
        let got = beatty_a(n).map_err(|e| e.to_string())?;
        ensure(got == reference, || format!("n = {n}: {got} vs {reference}"))?;
    }
    Ok(format!("{BEATTY_SAMPLES} values match a {BEATTY_DIGITS}-digit expansion"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "Wythoff table", limit: Duration::from_secs(1), run: wythoff_rows },
        Criterion { id: 2, name: "gdwn:1,2 table", limit: Duration::from_secs(1), run: gdwn12_rows },
        Criterion { id: 3, name: "invalid prefix rejected", limit: Duration::from_secs(1), run: bad_prefix },
        Criterion { id: 4, name: "oracle equivalence to 300", limit: Duration::from_secs(120), run: equivalence },
        Criterion { id: 5, name: "slope-two recurrence", limit: Duration::from_secs(60), run: recurrence },
        Criterion { id: 6, name: "density bound and prefix sums", limit: Duration::from_secs(60), run: density },
        Criterion { id: 7, name: "sector census (2, 0.05)", limit: Duration::from_secs(60), run: split_census },
        Criterion { id: 8, name: "beam slopes", limit: Duration::from_secs(60), run: slopes },
        Criterion { id: 9, name: "ordering vs exhaustive search", limit: Duration::from_secs(60), run: ordering },
        Criterion { id: 10, name: "Beatty exactness", limit: Duration::from_secs(10), run: beatty },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {:>2} {} ({elapsed:.2?}): {detail}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
