//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built without the libtest harness so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use boolsep::circuits::{parse_circuit, Circuit};
use boolsep::classify::{is_bent, max_pc_degree_from_spectrum, lhe_bound, satisfies_sac, BentVerdict};
use boolsep::dyadic::Dyadic;
use boolsep::generate::{mm_bent, monotone_words, random_function_stream, MmSpec};
use boolsep::harness::{census, fact2_experiment, fact3_experiment, fact4_experiment, half_n, monotone_influence_bound};
use boolsep::influence::{average_sensitivity, total_influence};
use boolsep::spectral::wht;
use boolsep::threshold::{is_ltf, is_ptf};
use boolsep::{Budget, TruthTable};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn parseval() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=12 {
        for s in 0..1000 {
            let t = random_function_stream(n, 0xA1, s).unwrap();
            let sum = wht(&t).parseval_sum();
            ensure(sum == 1i128 << (2 * n), || format!("n={n} stream={s}: sum {sum}"))?;
            checked += 1;
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} tables, {took:.2?}"))
}

fn influence_equals_sensitivity() -> Outcome {
    let mut checked = 0u64;
    let check = |t: &TruthTable| -> Result<(), String> {
        let (i, s) = (total_influence(t), average_sensitivity(t));
        ensure(i == s, || format!("{t}: I={i} s={s}"))
    };
    for n in 1..=4 {
        for w in 0..1u64 << (1 << n) {
            check(&TruthTable::from_word(n, w).unwrap())?;
            checked += 1;
        }
    }
    let expected: u64 = (1..=4).map(|n| 1u64 << (1 << n)).sum();
    ensure(checked == expected, || format!("exhaustive count {checked}"))?;
    for n in 5..=12 {
        for s in 0..10_000 {
            check(&random_function_stream(n, 0xA2, s).unwrap())?;
            checked += 1;
        }
    }
    Ok(format!("{checked} tables"))
}

fn bsp_half_n() -> Outcome {
    let start = Instant::now();
    let c = census(4, Budget::Standard).map_err(|e| e.to_string())?;
    let bad = c.intersection("bsp-influence-not-half-n").unwrap();
    ensure(bad.count == 0, || format!("{} BSP members with I != 2: {:?}", bad.count, bad.witnesses))?;
    for e in c.extremal.iter().filter(|e| ["bent", "sac", "pc1", "bsp"].contains(&e.class)) {
        let two = Some(Dyadic::from_int(2));
        ensure(e.min_total_influence == two && e.max_total_influence == two, || format!("{e:?}"))?;
    }
    for m in [3, 4, 5] {
        for seed in 0..100 {
            let f = mm_bent(&MmSpec::random(m, seed).unwrap()).unwrap();
            let i = total_influence(&f);
            ensure(i == half_n(2 * m), || format!("MM m={m} seed={seed}: I={i}"))?;
        }
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!("{} BSP functions at n=4, 300 MM instances, {took:.2?}", c.counts.bsp))
}

fn monotone_disjointness() -> Outcome {
    let c4 = census(4, Budget::Standard).map_err(|e| e.to_string())?;
    let meet = c4.intersection("monotone-bsp").unwrap();
    ensure(meet.count == 0, || format!("n=4 intersection {:?}", meet.witnesses))?;
    ensure(c4.passed(), || "n=4 census rows failed".into())?;
    let c2 = census(2, Budget::Standard).map_err(|e| e.to_string())?;
    let w2 = &c2.intersection("monotone-bent").unwrap().witnesses;
    ensure(w2.contains(&"08".to_string()), || format!("n=2 witnesses {w2:?}"))?;
    let c3 = census(3, Budget::Standard).map_err(|e| e.to_string())?;
    let w3 = &c3.intersection("monotone-sac").unwrap().witnesses;
    ensure(w3 == &["e8".to_string()], || format!("n=3 witnesses {w3:?}"))?;
    let maj3 = TruthTable::majority(3).unwrap();
    ensure(maj3.to_hex() == "e8" && satisfies_sac(&maj3), || "MAJ3 oracle".into())?;
    Ok(format!("n=4 empty; n=2 witnesses {w2:?}; n=3 witnesses {w3:?}"))
}

/// Monotone functions by brute force at `n <= 4`, and at `n = 5` as pairs
/// `lo <= hi` of brute-forced 4-variable ones.
fn brute_monotone_count(n: usize) -> u64 {
    let brute = |k: usize| -> Vec<u64> {
        (0..1u64 << (1 << k))
            .filter(|&w| {
                let t = TruthTable::from_word(k, w).unwrap();
                (0..t.len()).all(|j| (0..k).all(|b| j >> b & 1 == 0 || t.bit(j) || !t.bit(j ^ 1 << b)))
            })
            .collect()
    };
    if n <= 4 {
        return brute(n).len() as u64;
    }
    assert_eq!(n, 5);
    let m4 = brute(4);
    // x_5 = +1 half must lie below the x_5 = -1 half in the -1 > +1 order.
    m4.iter().map(|&lo| m4.iter().filter(|&&hi| lo & !hi == 0).count() as u64).sum()
}

fn fact2() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for n in 1..=5 {
        let r = fact2_experiment(n, Budget::Standard).map_err(|e| e.to_string())?;
        ensure(r.rows.iter().all(|row| !row.failed()), || format!("n={n} rows {:?}", r.rows))?;
        let words = monotone_words(n, Budget::Standard).map_err(|e| e.to_string())?;
        ensure(words.len() as u64 == r.monotone_count, || format!("n={n} count mismatch"))?;
        let brute = brute_monotone_count(n);
        ensure(r.monotone_count == brute, || format!("n={n}: recursion {} vs brute {brute}", r.monotone_count))?;
        ensure(r.max_total_influence <= monotone_influence_bound(n), || format!("n={n} max I"))?;
        notes.push(format!("n={n}: {} fns, max I={} at {}", r.monotone_count, r.max_total_influence, r.argmax));
    }
    let took = within(start, Duration::from_secs(600))?;
    ensure(notes[3].contains("168 fns"), || notes[3].clone())?;
    Ok(format!("{}; {took:.2?}", notes.join("; ")))
}

fn fact3() -> Outcome {
    let start = Instant::now();
    let mut maxima = Vec::new();
    for n in [4, 8, 12, 16] {
        let r = fact3_experiment(n, 10_000, 0xA6).map_err(|e| e.to_string())?;
        for (model, values) in &r.influences {
            ensure(values.len() == 10_000, || "sample count".into())?;
            for (s, &i) in values.iter().enumerate() {
                let two = i.scale_pow2(1);
                ensure(two * two <= Dyadic::from_int(16 * n as i128), || format!("n={n} {model:?} stream={s}: I={i}"))?;
            }
            maxima.push(format!("n={n} {model:?} max I={}", values.iter().max().unwrap().to_f64()));
        }
        ensure(r.rows.iter().all(|row| !row.failed()), || format!("n={n} failing row"))?;
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!("8x10^4 LTFs; {}; {took:.2?}", maxima.join(", ")))
}

fn fact4() -> Outcome {
    let mut cases = 0;
    for k in 0..=10usize {
        let ns: Vec<usize> = (k + 2..=12).filter(|n| (n - k) % 2 == 0).collect();
        let rows = fact4_experiment(k, &ns).map_err(|e| e.to_string())?;
        ensure(rows.iter().all(|r| !r.failed()), || format!("k={k} failing rows"))?;
        cases += ns.len();
    }
    Ok(format!("{cases} (n, k) pairs"))
}

fn bent_chain() -> Outcome {
    let mut found = Vec::new();
    for n in [2usize, 4] {
        let mut bent = 0;
        for w in 0..1u64 << (1 << n) {
            let t = TruthTable::from_word(n, w).unwrap();
            let spec = wht(&t);
            if is_bent(&spec) != BentVerdict::Yes {
                continue;
            }
            bent += 1;
            ensure(max_pc_degree_from_spectrum(&spec) == n as u32, || format!("{t} not PC(n)"))?;
            ensure(satisfies_sac(&t), || format!("{t} not SAC"))?;
        }
        found.push(format!("n={n}: {bent} bent"));
    }
    Ok(found.join(", "))
}

fn ltf_soundness() -> Outcome {
    let maj3 = TruthTable::majority(3).unwrap();
    let cert = is_ltf(&maj3).map_err(|e| e.to_string())?;
    ensure(cert.is_member() && cert.verify(&maj3), || "MAJ3".into())?;
    for n in 2..=4 {
        let p = TruthTable::parity(n).unwrap();
        let lin = is_ptf(&p, 1).map_err(|e| e.to_string())?;
        ensure(!lin.is_member() && lin.verify(&p), || format!("parity{n} at d=1"))?;
        let full = is_ptf(&p, n).map_err(|e| e.to_string())?;
        ensure(full.is_member() && full.verify(&p), || format!("parity{n} at d=n"))?;
    }
    let mut members = 0;
    let mut total = 0;
    for n in 1..=3 {
        let oracle: std::collections::HashSet<u64> = small_integer_ltfs(n);
        for w in 0..1u64 << (1 << n) {
            let t = TruthTable::from_word(n, w).unwrap();
            let cert = is_ltf(&t).map_err(|e| e.to_string())?;
            ensure(cert.verify(&t), || format!("{t}: certificate fails"))?;
            ensure(cert.is_member() == oracle.contains(&w), || format!("{t}: disagrees with oracle"))?;
            members += cert.is_member() as usize;
            total += 1;
        }
    }
    Ok(format!("{members}/{total} LTFs at n<=3 match the |w|<=3 oracle"))
}

fn small_integer_ltfs(n: usize) -> std::collections::HashSet<u64> {
    let mut out = std::collections::HashSet::new();
    let cols = n + 1;
    for code in 0..7usize.pow(cols as u32) {
        let w: Vec<i64> = (0..cols).map(|c| (code / 7usize.pow(c as u32) % 7) as i64 - 3).collect();
        let t = TruthTable::from_bits_fn(n, |j| {
            let s = w[0] + (1..=n).map(|i| if j >> (i - 1) & 1 == 0 { w[i] } else { -w[i] }).sum::<i64>();
            s <= 0
        })
        .unwrap();
        out.insert(t.as_word().unwrap());
    }
    out
}

fn entropy() -> Outcome {
    let mut bent_checked = 0;
    for n in [2usize, 4] {
        for w in 0..1u64 << (1 << n) {
            let spec = wht(&TruthTable::from_word(n, w).unwrap());
            if is_bent(&spec) == BentVerdict::Yes {
                let h = spec.fourier_entropy();
                ensure((h - n as f64).abs() < 1e-12, || format!("n={n} word={w:x}: H={h}"))?;
                bent_checked += 1;
            }
        }
    }
    for seed in 0..1000 {
        let spec = wht(&mm_bent(&MmSpec::random(3, seed).unwrap()).unwrap());
        let h = spec.fourier_entropy();
        ensure((h - 6.0).abs() < 1e-12, || format!("MM n=6 seed={seed}: H={h}"))?;
        bent_checked += 1;
    }
    for n in 1..=10 {
        let h = wht(&TruthTable::parity(n).unwrap()).fourier_entropy();
        ensure(h == 0.0, || format!("parity{n}: H={h}"))?;
    }
    let mut members = 0;
    for n in 4..=10 {
        for c in [0.1, 0.25, 0.4] {
            for s in 0..1000 {
                let t = random_function_stream(n, 0xAA, s).unwrap();
                let r = lhe_bound(&t, c).map_err(|e| e.to_string())?;
                if r.member {
                    members += 1;
                    ensure(r.holds, || format!("LHE violation n={n} c={c} stream={s}: H={} bound={}", r.entropy, r.bound))?;
                }
            }
        }
    }
    Ok(format!("{bent_checked} bent spectra; {members} LHE members, no violations"))
}

fn circuits() -> Outcome {
    for s in 0..1000u64 {
        let n = 1 + (s % 8) as usize;
        let t = random_function_stream(n, 0xAB, s).unwrap();
        let c = Circuit::canonical_dnf(&t).map_err(|e| e.to_string())?;
        let reparsed = parse_circuit(&c.to_string()).map_err(|e| e.to_string())?;
        ensure(reparsed == c, || format!("n={n} stream={s}: text round-trip"))?;
        ensure(reparsed.evaluate() == t, || format!("n={n} stream={s}: evaluation"))?;
    }
    let maj3 = parse_circuit(
        "circuit n=3\nlevel 1 AND\ng1.1 = x1, x2\ng1.2 = x1, x3\ng1.3 = x2, x3\nlevel 2 OR\ng2.1 = g1.1, g1.2, g1.3\n",
    )
    .map_err(|e| e.to_string())?;
    ensure(maj3.evaluate() == TruthTable::majority(3).unwrap(), || format!("MAJ3 circuit gave {}", maj3.evaluate()))?;
    Ok("1000 DNF round-trips, MAJ3 circuit".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("Parseval exactness", parseval),
        ("total influence equals average sensitivity", influence_equals_sensitivity),
        ("bent/SAC/PC members have I = n/2", bsp_half_n),
        ("monotone class is 4-disjoint from bent/SAC/PC", monotone_disjointness),
        ("monotone influence bound", fact2),
        ("LTF influence bound 2 sqrt(n)", fact3),
        ("padded bent plateaued witnesses", fact4),
        ("bent implies PC(n) implies SAC", bent_chain),
        ("LTF decision soundness", ltf_soundness),
        ("Fourier entropy and LHE inequality", entropy),
        ("circuit DNF round-trip", circuits),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}) [{:.2?}]", i + 1, start.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name}: {why} [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
