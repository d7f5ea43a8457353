//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mckay_core::arith;
use mckay_core::borel::{
    central_partition, count_pprime, count_sigma_fixed, count_sigma_fixed_via_extension, Level,
};
use mckay_core::ff::{mk_field, FieldCtx};
use mckay_core::labelcalc::{count_fixed_labels, label_set_size, GaloisParam, LabelSpace};
use mckay_core::rootdata::{all_types_up_to, build_root_datum, build_twist, LieType};
use mckay_core::sscls::{enumerate_ss_classes_gu3, GlModel, GlobalLabel};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

/// Quadratic character of `kappa` in `F_q^x`, by Euler's criterion.
fn is_square(fq: &FieldCtx, kappa: u64) -> bool {
    let x = fq.from_int(kappa as i64);
    fq.pow(x, (fq.size() - 1) / 2) == fq.one()
}

const CN_FIELDS: [(u64, u32); 3] = [(3, 1), (5, 1), (3, 2)];

fn ac1_closed_forms() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut classes_seen = BTreeSet::new();
    for n in 1..=3u32 {
        let rd = build_root_datum(LieType::C, n as usize).map_err(|e| e.to_string())?;
        for (p, f) in CN_FIELDS {
            let q = p.pow(f);
            let fq = mk_field(p, f).map_err(|e| e.to_string())?;
            for e in 0..=2 * f as u64 {
                for kappa in 1..p {
                    let even = is_square(&fq, kappa);
                    classes_seen.insert((q, even));
                    let s = arith::gcd(e, f as u64) as u32;
                    let want = if even {
                        p.pow(s * n) + 3 * p.pow(s * (n - 1))
                    } else {
                        p.pow(s * n) - p.pow(s * (n - 1))
                    };
                    let got = count_sigma_fixed(&rd, q, Level::B, &GaloisParam { e, kappa })
                        .map_err(|e| e.to_string())?;
                    ensure(got == want, || {
                        format!("C{n} q={q} e={e} kappa={kappa}: got {got}, want {want}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    // both classes occur for q = 3, 5; every kappa in F_3 is a square in F_9
    for q in [3, 5] {
        ensure(classes_seen.contains(&(q, true)) && classes_seen.contains(&(q, false)), || {
            format!("q={q}: both kappa classes must be exercised")
        })?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} cases in {:.2?}", start.elapsed()))
}

fn ac2_identity_case() -> Outcome {
    let mut checked = 0;
    for n in 1..=3u32 {
        let rd = build_root_datum(LieType::C, n as usize).map_err(|e| e.to_string())?;
        for (p, f) in CN_FIELDS {
            let q = p.pow(f);
            let got = count_pprime(&rd, q, Level::B).map_err(|e| e.to_string())?;
            let want = q.pow(n) + 3 * q.pow(n - 1);
            ensure(got == want, || format!("C{n} q={q}: got {got}, want {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cases"))
}

const UNTWISTED_QS: [u64; 6] = [3, 4, 5, 7, 8, 9];

fn ac3_label_cardinality() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut skipped = 0;
    for (t, n) in all_types_up_to(4) {
        let rd = build_root_datum(t, n).map_err(|e| e.to_string())?;
        let tw = build_twist(&rd, 1).map_err(|e| e.to_string())?;
        for q in UNTWISTED_QS {
            if tw.excluded(q).is_some() {
                skipped += 1;
                continue;
            }
            let local = count_pprime(&rd, q, Level::BTilde).map_err(|e| e.to_string())?;
            let labels = label_set_size(&tw, q).map_err(|e| e.to_string())?;
            let formula = (q - 1).pow(rd.d() as u32) * q.pow(n as u32);
            ensure(local == labels && labels == formula, || {
                format!("{t}{n} q={q}: local {local}, labels {labels}, formula {formula}")
            })?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{checked} cases ({skipped} excluded) in {:.2?}", start.elapsed()))
}

fn ac4_galois_equivariance() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (t, n) in all_types_up_to(4) {
        let rd = build_root_datum(t, n).map_err(|e| e.to_string())?;
        let tw = build_twist(&rd, 1).map_err(|e| e.to_string())?;
        for q in UNTWISTED_QS {
            if tw.excluded(q).is_some() {
                continue;
            }
            let (p, f) = arith::prime_power(q).expect("prime power");
            let space = LabelSpace::new(&tw, q).map_err(|e| e.to_string())?;
            for e in 0..=2 * f as u64 {
                let formula = count_fixed_labels(&tw, q, &GaloisParam { e, kappa: 1 })
                    .map_err(|e| e.to_string())?;
                let enumerated = space.count_fixed_by_enumeration(&GaloisParam { e, kappa: 1 });
                ensure(formula == enumerated, || {
                    format!("{t}{n} q={q} e={e}: formula {formula}, enumeration {enumerated}")
                })?;
                for kappa in 1..p {
                    let local = count_sigma_fixed(&rd, q, Level::BTilde, &GaloisParam { e, kappa })
                        .map_err(|e| e.to_string())?;
                    ensure(local == formula, || {
                        format!("{t}{n} q={q} e={e} kappa={kappa}: local {local}, labels {formula}")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (type, q, e) points in {:.2?}", start.elapsed()))
}

fn ac5_global_equals_local() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in [1usize, 2] {
        let rd = build_root_datum(LieType::A, n).map_err(|e| e.to_string())?;
        let tw = build_twist(&rd, 1).map_err(|e| e.to_string())?;
        for q in [3u64, 4, 5, 7, 9] {
            let gl = GlModel::new(n as u32 + 1, q).map_err(|e| e.to_string())?;
            for e in 0..=2 * gl.f as u64 {
                let g = GaloisParam { e, kappa: 1 };
                let classes = gl.count_sigma_fixed_classes(&g);
                let labels = count_fixed_labels(&tw, q, &g).map_err(|e| e.to_string())?;
                let local = count_sigma_fixed(&rd, q, Level::BTilde, &g).map_err(|e| e.to_string())?;
                ensure(classes == labels && labels == local, || {
                    format!("A{n} q={q} e={e}: classes {classes}, labels {labels}, local {local}")
                })?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} cases in {:.2?}", start.elapsed()))
}

fn ac6_steinberg_map() -> Outcome {
    let mut classes_total = 0;
    for size in [2u32, 3] {
        for q in [2u64, 3, 4, 5] {
            let gl = GlModel::new(size, q).map_err(|e| e.to_string())?;
            let classes = gl.enumerate_ss_classes();
            let want = (q - 1) * q.pow(size - 1);
            ensure(classes.len() as u64 == want, || {
                format!("GL{size}({q}): {} classes, want {want}", classes.len())
            })?;
            let labels: BTreeSet<GlobalLabel> = classes.iter().map(|c| gl.steinberg_label(c)).collect();
            ensure(labels.len() == classes.len(), || format!("GL{size}({q}): labels collide"))?;
            for c in &classes {
                let lab = gl.steinberg_label(c);
                let powered = gl.steinberg_label(&gl.class_power(c, gl.p));
                let ok = powered.b0 == gl.fq.pow(lab.b0, gl.p)
                    && powered.b.len() == lab.b.len()
                    && powered.b.iter().zip(&lab.b).all(|(&x, &y)| x == gl.fq.pow(y, gl.p));
                ensure(ok, || format!("GL{size}({q}): p-th power fails on {c:?}"))?;
            }
            classes_total += classes.len();
        }
    }
    Ok(format!("{classes_total} classes"))
}

fn ac7_two_methods() -> Outcome {
    let mut checked = 0;
    for (t, n) in [(LieType::A, 1), (LieType::A, 2), (LieType::C, 2)] {
        let rd = build_root_datum(t, n).map_err(|e| e.to_string())?;
        for q in [3u64, 5, 9] {
            let (p, f) = arith::prime_power(q).expect("prime power");
            for e in 0..=2 * f as u64 {
                for kappa in 1..p {
                    let g = GaloisParam { e, kappa };
                    let a = count_sigma_fixed(&rd, q, Level::B, &g).map_err(|e| e.to_string())?;
                    let b = count_sigma_fixed_via_extension(&rd, q, &g).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("{t}{n} q={q} e={e} kappa={kappa}: {a} vs {b}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} cases"))
}

fn ac8_central_partition() -> Outcome {
    let a1 = build_root_datum(LieType::A, 1).map_err(|e| e.to_string())?;
    let parts = central_partition(&a1, 5, &GaloisParam::identity()).map_err(|e| e.to_string())?;
    let split: Vec<u64> = parts.values().map(|c| c.total).collect();
    ensure(split == vec![4, 4], || format!("A1 q=5 split {split:?}, want [4, 4]"))?;
    ensure(parts.values().all(|c| c.fixed == c.total), || "identity must fix everything".into())?;
    let mut checked = 1;
    for (t, n, q) in [(LieType::A, 1, 5u64), (LieType::A, 1, 9), (LieType::C, 2, 3), (LieType::C, 2, 5), (LieType::A, 2, 7), (LieType::A, 3, 5)] {
        let rd = build_root_datum(t, n).map_err(|e| e.to_string())?;
        let (p, f) = arith::prime_power(q).expect("prime power");
        let pprime = count_pprime(&rd, q, Level::B).map_err(|e| e.to_string())?;
        for e in 0..=2 * f as u64 {
            for kappa in 1..p {
                let g = GaloisParam { e, kappa };
                let parts = central_partition(&rd, q, &g).map_err(|e| e.to_string())?;
                let total: u64 = parts.values().map(|c| c.total).sum();
                let fixed: u64 = parts.values().map(|c| c.fixed).sum();
                let want_fixed = count_sigma_fixed(&rd, q, Level::B, &g).map_err(|e| e.to_string())?;
                ensure(total == pprime && fixed == want_fixed, || {
                    format!("{t}{n} q={q} e={e} kappa={kappa}: sums {total}/{fixed}, want {pprime}/{want_fixed}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} partitions, A1 q=5 split 4+4"))
}

fn ac9_exclusions() -> Outcome {
    // (type, rank, p, w, reason, table row)
    let cases = [
        ("D", 4, 2, 2, "D_4, q=2, w=2 excluded", "D_n | q=2, w=2"),
        ("D", 5, 2, 2, "D_5, q=2, w=2 excluded", "D_n | q=2, w=2"),
        ("B", 2, 2, 1, "B_2, q=2, w=1 excluded", "B_n, C_n, D_n, G_2, F_4 | q=2, w=1"),
        ("B", 3, 2, 1, "B_3, q=2, w=1 excluded", "B_n, C_n, D_n, G_2, F_4 | q=2, w=1"),
        ("C", 3, 2, 1, "C_3, q=2, w=1 excluded", "B_n, C_n, D_n, G_2, F_4 | q=2, w=1"),
        ("D", 4, 2, 1, "D_4, q=2, w=1 excluded", "B_n, C_n, D_n, G_2, F_4 | q=2, w=1"),
        ("G", 2, 2, 1, "G_2, q=2, w=1 excluded", "B_n, C_n, D_n, G_2, F_4 | q=2, w=1"),
        ("F", 4, 2, 1, "F_4, q=2, w=1 excluded", "B_n, C_n, D_n, G_2, F_4 | q=2, w=1"),
        ("G", 2, 3, 1, "G_2, q=3, w=1 excluded", "G_2 | q=3, w=1"),
    ];
    for (t, rank, p, w, reason, row) in cases {
        for level in ["B", "labels"] {
            if w != 1 && level == "B" {
                continue;
            }
            let out = Command::new(env!("CARGO_BIN_EXE_mckay"))
                .args(["count", "--type", t, "--rank", &rank.to_string(), "--p", &p.to_string()])
                .args(["--w", &w.to_string(), "--level", level])
                .output()
                .map_err(|e| e.to_string())?;
            let err = String::from_utf8_lossy(&out.stderr);
            ensure(out.status.code() == Some(2), || {
                format!("{t}{rank} p={p} w={w} {level}: exit {:?}", out.status.code())
            })?;
            ensure(err.contains(reason) && err.contains(row), || {
                format!("{t}{rank} p={p} w={w}: reason {err:?}")
            })?;
        }
    }
    Ok(format!("{} table rows incl. B_2(2), F_4(2), G_2(3)", cases.len()))
}

fn ac10_twisted_labels() -> Outcome {
    let tw = build_twist(&build_root_datum(LieType::A, 2).map_err(|e| e.to_string())?, 2)
        .map_err(|e| e.to_string())?;
    let mut seen = vec![];
    for q in [2u64, 3, 5] {
        let labels = label_set_size(&tw, q).map_err(|e| e.to_string())?;
        let classes = enumerate_ss_classes_gu3(q).map_err(|e| e.to_string())?;
        ensure(labels == classes, || format!("q={q}: labels {labels}, GU3 classes {classes}"))?;
        seen.push(format!("q={q}:{labels}"));
    }
    Ok(seen.join(" "))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 10] = [
        ("AC1", "C_n closed forms for sigma-fixed B-characters", ac1_closed_forms),
        ("AC2", "C_n B-level count q^n + 3q^(n-1)", ac2_identity_case),
        ("AC3", "Bt count = label count = (q-1)^d q^n", ac3_label_cardinality),
        ("AC4", "Bt sigma-fixed count kappa-free, = labels (formula and enumeration)", ac4_galois_equivariance),
        ("AC5", "type A classes = labels = Bt sigma-fixed", ac5_global_equals_local),
        ("AC6", "trace labels separate GL2/GL3 classes and commute with p-th powers", ac6_steinberg_map),
        ("AC7", "direct and extension-based sigma-fixed counts agree", ac7_two_methods),
        ("AC8", "central-character partition", ac8_central_partition),
        ("AC9", "excluded configurations exit 2 with reason", ac9_exclusions),
        ("AC10", "2A2 label count = GU3 semisimple classes", ac10_twisted_labels),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
