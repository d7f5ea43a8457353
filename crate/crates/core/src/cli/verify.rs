//! `verify`: desk-scale invariant suites over all modules.

use std::collections::BTreeSet;

use clap::ValueEnum;
use serde::Serialize;

use crate::arith;
use crate::borel::{self, Level};
use crate::ff::mk_field;
use crate::labelcalc::{count_fixed_labels, label_set_size, GaloisParam, LabelSpace};
use crate::rootdata::{
    all_types_up_to, build_root_datum, build_twist, twisted_types_up_to, LieType, RootDatum,
};
use crate::sscls::{enumerate_ss_classes_gu3, GlModel, GlobalLabel};
use crate::zmodlin::{kernel_shape, smith_normal_form, solve_mod, torsion_count, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fields,
    Linalg,
    Rootdata,
    Labels,
    Borel,
    Global,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Recorder { suite, checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { suite: self.suite, name: name.into(), status, detail: detail.into() });
    }

    fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            status: Status::Skip,
            detail: reason.into(),
        });
    }
}

fn fields() -> Vec<Check> {
    let mut r = Recorder::new("fields");
    let sizes = [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2)];
    for (p, m) in sizes {
        let k = mk_field(p, m).expect("small field");
        let order = k.size() - 1;
        r.check(
            format!("F_{p}^{m} generator order"),
            k.multiplicative_order(k.generator()) == Some(order),
            format!("order {order}"),
        );
        let dlog_ok = (0..order).all(|e| k.dlog(k.gen_pow(e)) == Ok(e));
        r.check(format!("F_{p}^{m} dlog round trip"), dlog_ok, "");
        let frob_ok = (0..=2 * m as u64).all(|e| {
            k.elements().filter(|&x| k.frobenius_pow(x, e) == x).count() as u64
                == k.count_frobenius_fixed(e)
        });
        r.check(format!("F_{p}^{m} Frobenius fixed points"), frob_ok, "");
        for a in (1..m).filter(|a| m % a == 0) {
            let small = mk_field(p, a).expect("subfield");
            let emb = small.embedding_into(&k).expect("subfield embeds");
            let ring = small.elements().all(|x| {
                small.elements().all(|y| {
                    emb.apply(&small, &k, small.add(x, y))
                        == k.add(emb.apply(&small, &k, x), emb.apply(&small, &k, y))
                        && emb.apply(&small, &k, small.mul(x, y))
                            == k.mul(emb.apply(&small, &k, x), emb.apply(&small, &k, y))
                })
            });
            r.check(format!("F_{p}^{a} -> F_{p}^{m} ring embedding"), ring, "");
        }
    }
    r.checks
}

fn brute_kernel(m: &IntMatrix, n: i64) -> Vec<Vec<i64>> {
    let cols = m.cols();
    let total = (n as u64).pow(cols as u32);
    (0..total)
        .map(|mut idx| {
            (0..cols)
                .map(|_| {
                    let x = (idx % n as u64) as i64;
                    idx /= n as u64;
                    x
                })
                .collect::<Vec<i64>>()
        })
        .filter(|x| m.mul_vec_mod(x, n).iter().all(|&y| y == 0))
        .collect()
}

fn linalg() -> Vec<Check> {
    let mut r = Recorder::new("linalg");
    for (t, n) in all_types_up_to(8) {
        let rd = build_root_datum(t, n).expect("supported");
        for (name, m) in [("cartan", rd.cartan.clone()), ("cartan^T", rd.cartan.transpose())] {
            let s = smith_normal_form(&m);
            let ok = s.u.mul(&m).mul(&s.v).to_rows_i64() == s.d.to_rows_i64()
                && s.d.is_diagonal()
                && s.u.mul(&s.u_inv).to_rows_i64() == IntMatrix::identity(n).to_rows_i64()
                && s.v.mul(&s.v_inv).to_rows_i64() == IntMatrix::identity(n).to_rows_i64();
            let diag: Vec<i64> = (0..n).map(|i| s.d.get_i64(i, i)).collect();
            let chain = diag.windows(2).all(|w| w[0] != 0 && w[1] % w[0] == 0);
            r.check(format!("SNF {}{n} {name}", t), ok && chain, format!("{diag:?}"));
        }
    }
    for (t, n) in all_types_up_to(3) {
        let rd = build_root_datum(t, n).expect("supported");
        for modulus in [2i64, 3, 4, 6, 8] {
            let ker = brute_kernel(&rd.cartan, modulus);
            let shape = kernel_shape(&rd.cartan, modulus);
            r.check(
                format!("kernel {t}{n} mod {modulus}"),
                shape.order() == ker.len() as u64,
                format!("{shape}"),
            );
            for tt in [0u64, 1, 2, 3] {
                let brute = ker
                    .iter()
                    .filter(|x| x.iter().all(|&c| c * tt as i64 % modulus == 0))
                    .count() as u64;
                r.check(
                    format!("torsion {t}{n} mod {modulus} by {tt}"),
                    torsion_count(&shape, tt) == brute,
                    "",
                );
            }
            let image: BTreeSet<Vec<i64>> = brute_kernel(&IntMatrix::zeros(0, n), modulus)
                .iter()
                .map(|x| rd.cartan.mul_vec_mod(x, modulus))
                .collect();
            let solvable_ok = brute_kernel(&IntMatrix::zeros(0, n), modulus)
                .iter()
                .all(|b| solve_mod(&rd.cartan, b, modulus).is_some() == image.contains(b));
            r.check(format!("solve_mod {t}{n} mod {modulus}"), solvable_ok, "");
        }
    }
    r.checks
}

fn rootdata() -> Vec<Check> {
    let mut r = Recorder::new("rootdata");
    let expected_roots = |t: LieType, n: usize| match t {
        LieType::A => n * (n + 1) / 2,
        LieType::B | LieType::C => n * n,
        LieType::D => n * (n - 1),
        LieType::E => [36, 63, 120][n - 6],
        LieType::F => 24,
        LieType::G => 6,
    };
    for (t, n) in all_types_up_to(8) {
        let rd = build_root_datum(t, n).expect("supported");
        r.check(
            format!("{t}{n} positive roots"),
            rd.positive_roots.len() == expected_roots(t, n),
            format!("{}", rd.positive_roots.len()),
        );
        r.check(
            format!("{t}{n} center order"),
            rd.cartan.det() == num_bigint::BigInt::from(rd.fund_group_order),
            format!("{}", rd.fund_group_order),
        );
    }
    let mut kinds: Vec<(LieType, usize, u32)> =
        all_types_up_to(8).into_iter().map(|(t, n)| (t, n, 1)).collect();
    kinds.extend(twisted_types_up_to(8));
    for (t, n, w) in kinds {
        let tw = build_twist(&build_root_datum(t, n).expect("supported"), w).expect("supported");
        let c = tw.datum.cartan_i64();
        let ok = (0..n).all(|i| (0..n).all(|j| c[tw.tau[i]][tw.tau[j]] == c[i][j]))
            && tw.center_orders(5).len() == tw.dbar;
        r.check(format!("{} automorphism", tw.label()), ok, format!("orbits {:?}", tw.orbits));
    }
    for (t, n, w, q) in [
        (LieType::B, 2, 1, 2u64),
        (LieType::C, 3, 1, 2),
        (LieType::D, 4, 1, 2),
        (LieType::D, 5, 2, 2),
        (LieType::G, 2, 1, 2),
        (LieType::G, 2, 1, 3),
        (LieType::F, 4, 1, 2),
    ] {
        let tw = build_twist(&build_root_datum(t, n).expect("supported"), w).expect("supported");
        let ex = tw.excluded(q);
        r.check(
            format!("{} q={q} excluded", tw.label()),
            ex.is_some(),
            ex.map(|e| e.to_string()).unwrap_or_default(),
        );
    }
    r.checks
}

fn label_grid() -> Vec<(LieType, usize, u32, u64)> {
    let mut kinds: Vec<(LieType, usize, u32)> =
        all_types_up_to(4).into_iter().map(|(t, n)| (t, n, 1)).collect();
    kinds.extend(twisted_types_up_to(4));
    let mut out = Vec::new();
    for (t, n, w) in kinds {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            if q.pow(w) <= 81 {
                out.push((t, n, w, q));
            }
        }
    }
    out
}

fn labels() -> Vec<Check> {
    let mut r = Recorder::new("labels");
    for (t, n, w, q) in label_grid() {
        let tw = build_twist(&build_root_datum(t, n).expect("supported"), w).expect("supported");
        let name = format!("{} q={q}", tw.label());
        if let Some(ex) = tw.excluded(q) {
            r.skip(name, ex.to_string());
            continue;
        }
        let size = label_set_size(&tw, q).expect("not excluded");
        if w == 1 {
            r.check(
                format!("{name} size formula"),
                size == (q - 1).pow(tw.d as u32) * q.pow(n as u32),
                format!("{size}"),
            );
        }
        if size > 50_000 {
            r.skip(format!("{name} enumeration"), format!("{size} labels"));
            continue;
        }
        let space = LabelSpace::new(&tw, q).expect("not excluded");
        r.check(format!("{name} enumerated size"), space.size() == size, format!("{size}"));
        for e in 0..=2 * space.f as u64 * w as u64 {
            let g = GaloisParam { e, kappa: 1 };
            let formula = count_fixed_labels(&tw, q, &g).expect("not excluded");
            let counted = space.count_fixed_by_enumeration(&g);
            r.check(
                format!("{name} e={e} fixed labels"),
                formula == counted,
                format!("formula {formula}, enumeration {counted}"),
            );
        }
    }
    r.checks
}

fn c_type(n: usize) -> RootDatum {
    if n == 1 {
        build_root_datum(LieType::A, 1).expect("supported")
    } else {
        build_root_datum(LieType::C, n).expect("supported")
    }
}

fn borel_suite() -> Vec<Check> {
    let mut r = Recorder::new("borel");
    for n in 1..=3usize {
        let rd = c_type(n);
        for (p, f) in [(3u64, 1u32), (5, 1), (3, 2)] {
            let q = p.pow(f);
            let fq = mk_field(p, f).expect("small field");
            for e in 0..=2 * f as u64 {
                for kappa in 1..p {
                    let g = GaloisParam { e, kappa };
                    let even = g.kappa_dlog(&fq) % 2 == 0;
                    let got = borel::count_sigma_fixed(&rd, q, Level::B, &g).expect("valid");
                    let want = borel::closed_form_cn(n as u32, p, f, e, even).expect("odd p");
                    r.check(
                        format!("C{n} q={q} e={e} kappa={kappa} closed form"),
                        got == want,
                        format!("{got} vs {want}"),
                    );
                }
            }
        }
    }
    for (t, n) in all_types_up_to(4) {
        let rd = build_root_datum(t, n).expect("supported");
        let tw = build_twist(&rd, 1).expect("untwisted");
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let name = format!("{t}{n} q={q}");
            if let Some(ex) = tw.excluded(q) {
                r.skip(name, ex.to_string());
                continue;
            }
            let local = borel::count_pprime(&rd, q, Level::BTilde).expect("valid");
            let labels = label_set_size(&tw, q).expect("valid");
            r.check(format!("{name} Bt count = labels"), local == labels, format!("{local}"));
            let (p, f) = arith::prime_power(q).expect("prime power");
            for e in 0..=2 * f as u64 {
                let want = count_fixed_labels(&tw, q, &GaloisParam { e, kappa: 1 }).expect("valid");
                let all_equal = (1..p).all(|kappa| {
                    borel::count_sigma_fixed(&rd, q, Level::BTilde, &GaloisParam { e, kappa })
                        .expect("valid")
                        == want
                });
                r.check(format!("{name} e={e} Bt fixed = labels, all kappa"), all_equal, format!("{want}"));
            }
        }
    }
    for (t, n) in [(LieType::A, 1), (LieType::A, 2), (LieType::C, 2)] {
        let rd = build_root_datum(t, n).expect("supported");
        for q in [3u64, 5, 9] {
            let (p, f) = arith::prime_power(q).expect("prime power");
            for e in 0..=2 * f as u64 {
                for kappa in 1..p {
                    let g = GaloisParam { e, kappa };
                    let a = borel::count_sigma_fixed(&rd, q, Level::B, &g).expect("valid");
                    let b = borel::count_sigma_fixed_via_extension(&rd, q, &g).expect("valid");
                    r.check(format!("{t}{n} q={q} e={e} kappa={kappa} two methods"), a == b, format!("{a} vs {b}"));
                    let parts = borel::central_partition(&rd, q, &g).expect("valid");
                    let total: u64 = parts.values().map(|c| c.total).sum();
                    let fixed: u64 = parts.values().map(|c| c.fixed).sum();
                    let pprime = borel::count_pprime(&rd, q, Level::B).expect("valid");
                    r.check(
                        format!("{t}{n} q={q} e={e} kappa={kappa} central partition"),
                        total == pprime && fixed == a,
                        format!("{} classes", parts.len()),
                    );
                }
            }
        }
    }
    r.checks
}

fn global() -> Vec<Check> {
    let mut r = Recorder::new("global");
    for n in [1usize, 2] {
        let tw = build_twist(&build_root_datum(LieType::A, n).expect("supported"), 1).expect("untwisted");
        let rd = &tw.datum;
        for q in [3u64, 4, 5, 7, 9] {
            let gl = GlModel::new(n as u32 + 1, q).expect("desk scale");
            for e in 0..=2 * gl.f as u64 {
                let g = GaloisParam { e, kappa: 1 };
                let classes = gl.count_sigma_fixed_classes(&g);
                let labels = count_fixed_labels(&tw, q, &g).expect("valid");
                let local = borel::count_sigma_fixed(rd, q, Level::BTilde, &g).expect("valid");
                r.check(
                    format!("A{n} q={q} e={e} classes = labels = Bt"),
                    classes == labels && labels == local,
                    format!("{classes} / {labels} / {local}"),
                );
            }
        }
    }
    for size in [2u32, 3] {
        for q in [2u64, 3, 4, 5] {
            let gl = GlModel::new(size, q).expect("desk scale");
            let classes = gl.enumerate_ss_classes();
            let labels: BTreeSet<GlobalLabel> = classes.iter().map(|c| gl.steinberg_label(c)).collect();
            r.check(
                format!("GL{size}({q}) separation"),
                labels.len() == classes.len(),
                format!("{} classes", classes.len()),
            );
            let p_power = classes.iter().all(|c| {
                let lab = gl.steinberg_label(c);
                let powered = gl.steinberg_label(&gl.class_power(c, gl.p));
                powered.b0 == gl.fq.pow(lab.b0, gl.p)
                    && powered.b.iter().zip(&lab.b).all(|(&x, &y)| x == gl.fq.pow(y, gl.p))
            });
            r.check(format!("GL{size}({q}) p-th power"), p_power, "");
        }
    }
    let a2 = build_twist(&build_root_datum(LieType::A, 2).expect("supported"), 2).expect("supported");
    for q in [2u64, 3, 5] {
        let classes = enumerate_ss_classes_gu3(q).expect("desk scale");
        let labels = label_set_size(&a2, q).expect("not excluded");
        r.check(format!("2A2 q={q} labels = GU3 classes"), classes == labels, format!("{classes}"));
    }
    r.checks
}

pub fn run(suite: Suite) -> Summary {
    let checks: Vec<Check> = match suite {
        Suite::Fields => fields(),
        Suite::Linalg => linalg(),
        Suite::Rootdata => rootdata(),
        Suite::Labels => labels(),
        Suite::Borel => borel_suite(),
        Suite::Global => global(),
        Suite::All => [fields(), linalg(), rootdata(), labels(), borel_suite(), global()].concat(),
    };
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Summary {
        schema: 1,
        suite,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        checks,
    }
}
