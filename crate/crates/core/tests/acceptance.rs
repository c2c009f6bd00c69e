//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so that every line is printed whether it
//! passes or not. Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use nbch_ldpc::analysis::{
    find_four_cycle, gf2_rank, girth, peeling_stopping_distance, stopping_distance, stopping_distance_with,
    structure_report, AnalysisConfig, SearchStatus, StoppingConfig,
};
use nbch_ldpc::bch::{bch_dimension, bch_dimension_oracle, delta_max, BchSpec};
use nbch_ldpc::cli_io::{read_alist, write_alist};
use nbch_ldpc::construct::{build_type1, build_type2, select_cosets, BinaryMatrix, LdpcCode};
use nbch_ldpc::galois::{cyclotomic_coset, find_prime_lengths, CodeFieldParams};
use nbch_ldpc::sim::{emit_csv, run_sweep, SimChannel, SimPlan};
use nbch_ldpc::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

static FIG1_CSV: OnceLock<String> = OnceLock::new();

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn type1(q: u64, m: u64, n: u64, delta: u64) -> LdpcCode {
    build_type1(&BchSpec::from_values(q, m, n, delta).expect("valid parameters"))
}

fn example_type2() -> LdpcCode {
    let cosets: Vec<_> = [1, 3, 5].iter().map(|&x| cyclotomic_coset(x, 31, 2).unwrap()).collect();
    build_type2(31, 2, &cosets).expect("valid cosets")
}

fn c1_dimension_formula() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 3] {
        for m in 2..=10 {
            for n in find_prime_lengths(q, m).map_err(|e| e.to_string())? {
                let p = CodeFieldParams::with_order(q, m, n).map_err(|e| e.to_string())?;
                for delta in 2..=delta_max(&p) {
                    let spec = BchSpec::new(p, delta).unwrap();
                    let k = bch_dimension(&spec).map_err(|e| e.to_string())?;
                    let oracle = bch_dimension_oracle(n, q, delta).map_err(|e| e.to_string())?;
                    ensure(k == oracle, || {
                        format!("q={q} n={n} delta={delta}: formula {k}, oracle {oracle}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    let p = CodeFieldParams::with_order(2, 5, 31).unwrap();
    for (delta, want) in [(5, 21), (3, 26), (7, 16)] {
        let k = bch_dimension(&BchSpec::new(p, delta).unwrap()).unwrap();
        ensure(k == want, || format!("n=31 delta={delta}: k={k}, expected {want}"))?;
    }
    Ok(format!(
        "{checked} (q, n, delta) triples agree; anchors k=21, 26, 16 at n=31"
    ))
}

fn c2_rank_theorem() -> Outcome {
    let mut ranks = Vec::new();
    for delta in 3..=8u64 {
        let code = type1(2, 5, 31, delta);
        let rank = gf2_rank(&code.h);
        let formula = (delta as usize - 1) * 31 - (delta as usize - 2);
        ensure(rank == formula, || {
            format!("delta={delta}: rank {rank}, formula {formula}")
        })?;
        ranks.push(rank);
    }
    ensure([ranks[0], ranks[2], ranks[3], ranks[4]] == [61, 121, 151, 181], || {
        format!("table ranks {ranks:?}")
    })?;
    Ok(format!("ranks for delta 3..8: {ranks:?}"))
}

fn c3_rank_at_scale() -> Outcome {
    let start = Instant::now();
    let code = type1(2, 7, 127, 5);
    let (rows, cols) = (code.h.rows(), code.h.cols());
    ensure((rows, cols) == (508, 16129), || format!("shape {rows}x{cols}"))?;
    let rank = gf2_rank(&code.h);
    let secs = start.elapsed().as_secs_f64();
    ensure(rank == 505, || format!("rank {rank}"))?;
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("508x16129, rank 505 in {secs:.2}s"))
}

fn c4_girth() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (m, n) in [(5u64, 31u64), (7, 127)] {
        let dmax = delta_max(&CodeFieldParams::with_order(2, m, n).unwrap());
        for delta in 3..=dmax {
            let code = type1(2, m, n, delta);
            if let Some(w) = find_four_cycle(&code.h) {
                failures.push(format!("n={n} delta={delta}: 4-cycle {w:?}"));
            }
            let g = girth(&code.h);
            if g != Some(6) {
                failures.push(format!("n={n} delta={delta}: girth {g:?}"));
            }
            checked += 1;
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} codes are 4-cycle free with girth 6"))
    } else {
        Err(format!(
            "{checked} codes checked, all 4-cycle free; {}",
            failures.join("; ")
        ))
    }
}

fn c5_type2_example() -> Outcome {
    let code = example_type2();
    let h = &code.h;
    ensure((h.rows(), h.cols()) == (31, 93), || {
        format!("shape {}x{}", h.rows(), h.cols())
    })?;
    ensure((code.col_weight, code.row_weight) == (Some(5), Some(15)), || {
        format!("weights {:?} {:?}", code.col_weight, code.row_weight)
    })?;
    let rank = gf2_rank(h);
    ensure(rank == 31 && h.cols() - rank == 62, || format!("rank {rank}"))?;
    ensure(code.design_rate() == Ratio::new(2, 3), || {
        format!("design rate {}", code.design_rate())
    })?;
    let true_rate = Ratio::new((h.cols() - rank) as u64, h.cols() as u64);
    ensure(true_rate == Ratio::new(2, 3), || format!("true rate {true_rate}"))?;
    let start = Instant::now();
    let s = stopping_distance(h, 3).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(s.status == SearchStatus::LowerBoundOnly && s.lower_bound() >= 4, || {
        format!("stopping search {s:?}")
    })?;
    ensure(secs < 1.0, || format!("search took {secs:.2}s"))?;
    let summary = format!(
        "31x93, (5,15), rank 31, rate 2/3, s >= {} in {secs:.3}s",
        s.lower_bound()
    );
    match find_four_cycle(h) {
        None => Ok(format!("{summary}, no 4-cycles")),
        Some(w) => Err(format!(
            "{summary}; but 4-cycle on rows {:?} and columns {:?}, girth {:?}",
            w.rows,
            w.cols,
            girth(h)
        )),
    }
}

fn random_sparse(rng: &mut ChaCha8Rng) -> BinaryMatrix {
    let rows = rng.random_range(3..15);
    let cols = rng.random_range(4..=22);
    let mut supports = vec![Vec::new(); rows];
    for c in 0..cols {
        let w = rng.random_range(1..=3usize.min(rows));
        let mut picked = Vec::new();
        while picked.len() < w {
            let r = rng.random_range(0..rows);
            if !picked.contains(&r) {
                picked.push(r);
            }
        }
        for r in picked {
            supports[r].push(c);
        }
    }
    BinaryMatrix::from_row_supports(rows, cols, &supports).unwrap()
}

fn c6_stopping_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let unlimited = StoppingConfig { work_limit: u128::MAX };
    let mut exact = 0;
    for i in 0..200 {
        let h = random_sparse(&mut rng);
        let search = stopping_distance_with(&h, h.cols(), &unlimited).map_err(|e| e.to_string())?;
        let peel = peeling_stopping_distance(&h, 22).map_err(|e| e.to_string())?;
        let enumerated = (search.status == SearchStatus::Exact).then_some(search.value);
        ensure(enumerated == peel, || {
            format!("matrix {i}: search {enumerated:?}, peeling {peel:?}")
        })?;
        exact += enumerated.is_some() as usize;
    }
    Ok(format!("200 matrices agree ({exact} with a stopping set)"))
}

fn fig1_plan() -> SimPlan {
    SimPlan {
        seed: 0x5EED,
        ..SimPlan::new(SimChannel::Awgn, vec![3.0, 5.5])
    }
}

fn c7_fig1() -> Outcome {
    let code = type1(2, 5, 31, 5);
    let start = Instant::now();
    let r = run_sweep(&code, &fig1_plan()).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let _ = FIG1_CSV.set(emit_csv(&r));
    let (low, high) = (&r.points[0], &r.points[1]);
    let summary = format!(
        "BER {:.3e} at 3.0 dB ({} errors, {} frames), {:.3e} at 5.5 dB ({} errors, {} frames), {secs:.1}s",
        low.ber, low.bit_errors, low.frames, high.ber, high.bit_errors, high.frames
    );
    ensure(low.ber >= 10.0 * high.ber, || format!("{summary}; ratio below 10"))?;
    if high.bit_errors == 0 {
        // zero-failure 95% upper bound
        let bound = 3.0 / high.bits as f64;
        return Err(format!(
            "{summary}; BER at 5.5 dB below {bound:.1e}, under the [1e-5, 1e-3] band"
        ));
    }
    ensure((1e-5..=1e-3).contains(&high.ber), || {
        format!("{summary}; outside [1e-5, 1e-3]")
    })?;
    Ok(summary)
}

fn c8_determinism() -> Outcome {
    let code = type1(2, 5, 31, 5);
    let a = match FIG1_CSV.get() {
        Some(csv) => csv.clone(),
        None => emit_csv(&run_sweep(&code, &fig1_plan()).map_err(|e| e.to_string())?),
    };
    // a different thread count from the first run
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let b = pool
        .install(|| run_sweep(&code, &fig1_plan()))
        .map_err(|e| e.to_string())?;
    let b = emit_csv(&b);
    ensure(a == b, || format!("CSV differs:\n{a}\nvs\n{b}"))?;
    Ok(format!("{} identical CSV bytes across thread counts", a.len()))
}

fn c9_alist() -> Outcome {
    let mut codes: Vec<(String, BinaryMatrix)> = Vec::new();
    for (m, n) in [(5u64, 31u64), (7, 127)] {
        let dmax = delta_max(&CodeFieldParams::with_order(2, m, n).unwrap());
        for delta in 3..=dmax {
            codes.push((format!("type1 n={n} delta={delta}"), type1(2, m, n, delta).h));
        }
    }
    codes.push(("type2 31 {1,3,5}".into(), example_type2().h));
    codes.push((
        "type2 31 l=4".into(),
        build_type2(31, 2, &select_cosets(31, 2, 4).unwrap()).unwrap().h,
    ));
    for (name, h) in &codes {
        let back = read_alist(&write_alist(h)).map_err(|e| format!("{name}: {e}"))?;
        ensure(&back == h, || format!("{name}: round trip differs"))?;
    }
    Ok(format!("{} matrices round-trip bit-exactly", codes.len()))
}

fn c10_dimension_840() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let alist = dir.path().join("t1.alist");
    let report = dir.path().join("t1.json");
    let a = alist.to_str().unwrap();
    let r = report.to_str().unwrap();
    let code = nbch_ldpc::cli_io::run([
        "nbch-ldpc",
        "construct",
        "type1",
        "--q",
        "2",
        "--m",
        "5",
        "--n",
        "31",
        "--delta",
        "5",
        "--out",
        a,
    ]);
    ensure(code == 0, || format!("construct exit {code}"))?;
    let code = nbch_ldpc::cli_io::run(["nbch-ldpc", "analyze", "--in", a, "--report", r]);
    ensure(code == 0, || format!("analyze exit {code}"))?;
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    ensure(json["dimension"] == 840, || format!("dimension {}", json["dimension"]))?;
    ensure(json["rank"] == 121, || format!("rank {}", json["rank"]))?;
    // the library path agrees with the CLI
    let lib = structure_report(&type1(2, 5, 31, 5), &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    ensure(lib.dimension == 840, || format!("library dimension {}", lib.dimension))?;
    Ok("analyze report states dimension 840 = 961 - 121".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 dimension formula vs coset oracle", c1_dimension_formula),
        ("2 rank (delta-1)mu-(delta-2) at n=31", c2_rank_theorem),
        ("3 rank at n=127, delta=5", c3_rank_at_scale),
        ("4 no 4-cycles and girth 6", c4_girth),
        ("5 type-II worked example", c5_type2_example),
        ("6 stopping search vs peeling oracle", c6_stopping_oracle),
        ("7 BER band at 5.5 dB", c7_fig1),
        ("8 deterministic CSV", c8_determinism),
        ("9 alist round trip", c9_alist),
        ("10 reported dimension 840", c10_dimension_840),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.starts_with(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} [{secs:.1}s]: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
