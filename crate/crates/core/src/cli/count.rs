//! `count`: total and sigma-fixed counts for one configuration.

use std::fmt::Write as _;

use serde::Serialize;

use super::config::{CountLevel, Format, KappaClass, RunConfig, Validated};
use crate::arith;
use crate::borel::{self, Level};
use crate::error::{Error, Result};
use crate::ff::mk_field;
use crate::labelcalc::{self, GaloisParam};
use crate::sscls::GlModel;

#[derive(Clone, Debug, Serialize)]
pub struct CentralRow {
    pub key: String,
    pub total: u64,
    pub fixed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub e: u64,
    pub kappa: u64,
    pub kappa_class: KappaClass,
    pub total: u64,
    pub fixed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central: Option<Vec<CentralRow>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub schema: u32,
    pub group: String,
    pub q: u64,
    pub config: RunConfig,
    pub rows: Vec<CountRow>,
}

/// Per-central-character split at label level: the central part of a label
/// is an element of `prod_j Z/z_j`; each class carries `prod_i q^{|A_i|}`
/// labels, all fixed iff the central part is.
fn label_central_rows(v: &Validated, p: u64, g: &GaloisParam) -> Result<Vec<CentralRow>> {
    let z = v.twist.center_orders(v.q);
    let classes: u64 = z.iter().product();
    if classes > 1 << 16 {
        return Err(Error::ScaleBound(format!("{classes} central characters")));
    }
    let per_class = labelcalc::label_set_size(&v.twist, v.q)? / classes;
    let fixed_per_class = labelcalc::count_fixed_labels(&v.twist, v.q, g)?
        / z.iter().map(|&zj| arith::gcd(zj, arith::pe_minus_one_mod(p, g.e, zj))).product::<u64>();
    let mut rows = Vec::new();
    let mut idx = vec![0u64; z.len()];
    loop {
        let fixed = idx
            .iter()
            .zip(&z)
            .all(|(&k, &zj)| k * arith::pe_minus_one_mod(p, g.e, zj) % zj == 0);
        rows.push(CentralRow {
            key: key_string(&idx.iter().map(|&x| x as i64).collect::<Vec<_>>()),
            total: per_class,
            fixed: if fixed { fixed_per_class } else { 0 },
        });
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(rows);
            }
            idx[i] += 1;
            if idx[i] < z[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn key_string(key: &[i64]) -> String {
    if key.is_empty() {
        "trivial".to_string()
    } else {
        key.iter().map(i64::to_string).collect::<Vec<_>>().join(":")
    }
}

pub fn compute(cfg: &RunConfig) -> Result<CountReport> {
    let v = cfg.validate()?;
    let q = v.q;
    let fq = mk_field(cfg.p, cfg.f)?;
    let rd = &v.twist.datum;
    let params = cfg.galois_params(&fq)?;
    let classes = match cfg.level {
        CountLevel::Classes => Some(GlModel::new(cfg.rank as u32 + 1, q)?),
        _ => None,
    };
    let total = match cfg.level {
        CountLevel::B => borel::count_pprime(rd, q, Level::B)?,
        CountLevel::BTilde => borel::count_pprime(rd, q, Level::BTilde)?,
        CountLevel::Labels => labelcalc::label_set_size(&v.twist, q)?,
        CountLevel::Classes => classes.as_ref().expect("built above").enumerate_ss_classes().len() as u64,
    };
    let mut rows = Vec::new();
    for (g, kappa_class) in params {
        let fixed = match cfg.level {
            CountLevel::B => borel::count_sigma_fixed(rd, q, Level::B, &g)?,
            CountLevel::BTilde => borel::count_sigma_fixed(rd, q, Level::BTilde, &g)?,
            CountLevel::Labels => labelcalc::count_fixed_labels(&v.twist, q, &g)?,
            CountLevel::Classes => classes.as_ref().expect("built above").count_sigma_fixed_classes(&g),
        };
        let central = if cfg.per_central_character {
            Some(match cfg.level {
                CountLevel::B => borel::central_partition(rd, q, &g)?
                    .into_iter()
                    .map(|(k, c)| CentralRow { key: key_string(&k), total: c.total, fixed: c.fixed })
                    .collect(),
                CountLevel::Labels => label_central_rows(&v, cfg.p, &g)?,
                other => {
                    return Err(Error::Unsupported(format!(
                        "per-central-character breakdown is available at levels B and labels, not {other}"
                    )))
                }
            })
        } else {
            None
        };
        rows.push(CountRow { e: g.e, kappa: g.kappa, kappa_class, total, fixed, central });
    }
    Ok(CountReport { schema: 1, group: v.twist.label(), q, config: cfg.clone(), rows })
}

pub fn render(report: &CountReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(report).expect("serializable");
            out.push('\n');
        }
        Format::Csv => {
            if report.config.per_central_character {
                out.push_str("e,kappa,kappa_class,central,total,fixed\n");
                for r in &report.rows {
                    for c in r.central.iter().flatten() {
                        let _ = writeln!(out, "{},{},{},{},{},{}", r.e, r.kappa, r.kappa_class, c.key, c.total, c.fixed);
                    }
                }
            } else {
                out.push_str("e,kappa,kappa_class,total,fixed\n");
                for r in &report.rows {
                    let _ = writeln!(out, "{},{},{},{},{}", r.e, r.kappa, r.kappa_class, r.total, r.fixed);
                }
            }
        }
        Format::Table => {
            let _ = writeln!(out, "{} q={} level={}", report.group, report.q, report.config.level);
            let _ = writeln!(out, "{:>3} {:>6} {:>10} {:>12} {:>12}", "e", "kappa", "class", "total", "fixed");
            for r in &report.rows {
                let _ = writeln!(
                    out,
                    "{:>3} {:>6} {:>10} {:>12} {:>12}",
                    r.e, r.kappa, r.kappa_class.to_string(), r.total, r.fixed
                );
                for c in r.central.iter().flatten() {
                    let _ = writeln!(out, "{:>21} {:>10} {:>12} {:>12}", "central", c.key, c.total, c.fixed);
                }
            }
        }
    }
    out
}
