//! `report`: one record per grid point, as CSV or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use super::config::{resolve_kappas, type_label, validate_point, CountLevel, KappaClass};
use crate::arith;
use crate::borel::{self, Level};
use crate::error::{Error, Result};
use crate::ff::mk_field;
use crate::labelcalc::{self, GaloisParam, LabelSpace};
use crate::rootdata::LieType;
use crate::sscls::GlModel;

/// Labels enumerated one by one for the `method_b` column at label level.
const LABEL_ENUMERATION_LIMIT: u64 = 50_000;

#[derive(Clone, Debug, Serialize)]
pub struct Grid {
    /// `(type, w)` pairs.
    pub types: Vec<(LieType, u32)>,
    pub ranks: Vec<usize>,
    pub qs: Vec<u64>,
    pub levels: Vec<CountLevel>,
    pub kappa_classes: Vec<KappaClass>,
    /// Defaults to `2f` per `q`.
    pub e_max: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Record {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub q: u64,
    pub e: u64,
    pub kappa_class: KappaClass,
    pub level: CountLevel,
    pub kappa: u64,
    pub total: Option<u64>,
    pub fixed: Option<u64>,
    pub method_a: Option<u64>,
    pub method_b: Option<u64>,
    pub label_count: Option<u64>,
    pub class_count: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub config: Grid,
    pub records: Vec<Record>,
    /// Grid points left out, with the reason.
    pub skipped: Vec<String>,
}

fn ok_or_na(r: Result<u64>) -> Result<Option<u64>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::ScaleBound(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn compute(grid: &Grid) -> Result<Report> {
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for &(t, w) in &grid.types {
        for &rank in &grid.ranks {
            for &q in &grid.qs {
                let (p, f) = arith::prime_power(q)
                    .ok_or_else(|| Error::InvalidArgument(format!("q={q} is not a prime power")))?;
                let fq = mk_field(p, f)?;
                let kappas: Vec<(u64, KappaClass)> = resolve_kappas(super::config::KappaSelector::All, &fq)?
                    .into_iter()
                    .filter(|(_, c)| grid.kappa_classes.contains(c))
                    .fold(Vec::new(), |mut acc, (k, c)| {
                        if !acc.iter().any(|&(_, c2)| c2 == c) {
                            acc.push((k, c));
                        }
                        acc
                    });
                for &level in &grid.levels {
                    let point = format!("{}{rank} q={q} level={level}", type_label(t, w));
                    let v = match validate_point(t, rank, p, f, w, level) {
                        Ok(v) => v,
                        Err(Error::InvalidRootDatum(_)) => continue,
                        Err(e) => {
                            skipped.push(format!("{point}: {e}"));
                            continue;
                        }
                    };
                    let rd = &v.twist.datum;
                    let label_count = ok_or_na(labelcalc::label_set_size(&v.twist, q))?;
                    let gl = if t == LieType::A && w == 1 { GlModel::new(rank as u32 + 1, q).ok() } else { None };
                    let class_count = gl.as_ref().map(|g| g.enumerate_ss_classes().len() as u64);
                    let labels = match level {
                        CountLevel::Labels if label_count.is_some_and(|n| n <= LABEL_ENUMERATION_LIMIT) => {
                            Some(LabelSpace::new(&v.twist, q)?)
                        }
                        _ => None,
                    };
                    let total = match level {
                        CountLevel::B => Some(borel::count_pprime(rd, q, Level::B)?),
                        CountLevel::BTilde => Some(borel::count_pprime(rd, q, Level::BTilde)?),
                        CountLevel::Labels => label_count,
                        CountLevel::Classes => match &class_count {
                            Some(c) => Some(*c),
                            None => {
                                skipped.push(format!("{point}: class enumeration out of range"));
                                continue;
                            }
                        },
                    };
                    for e in 0..=grid.e_max.unwrap_or(2 * f as u64) {
                        for &(kappa, kappa_class) in &kappas {
                            let g = GaloisParam { e, kappa };
                            let (method_a, method_b) = match level {
                                CountLevel::B => (
                                    Some(borel::count_sigma_fixed(rd, q, Level::B, &g)?),
                                    ok_or_na(borel::count_sigma_fixed_via_extension(rd, q, &g))?,
                                ),
                                CountLevel::BTilde => {
                                    (Some(borel::count_sigma_fixed(rd, q, Level::BTilde, &g)?), None)
                                }
                                CountLevel::Labels => (
                                    ok_or_na(labelcalc::count_fixed_labels(&v.twist, q, &g))?,
                                    labels.as_ref().map(|s| s.count_fixed_by_enumeration(&g)),
                                ),
                                CountLevel::Classes => {
                                    (gl.as_ref().map(|m| m.count_sigma_fixed_classes(&g)), None)
                                }
                            };
                            records.push(Record {
                                type_label: type_label(t, w),
                                rank,
                                q,
                                e,
                                kappa_class,
                                level,
                                kappa,
                                total,
                                fixed: method_a,
                                method_a,
                                method_b,
                                label_count,
                                class_count,
                            });
                        }
                    }
                }
            }
        }
    }
    records.sort();
    Ok(Report { schema: 1, config: grid.clone(), records, skipped })
}

pub const CSV_HEADER: &str =
    "type,rank,q,e,kappa_class,level,kappa,total,fixed,method_a,method_b,label_count,class_count";

pub fn render_csv(report: &Report) -> String {
    let na = |x: Option<u64>| x.map_or_else(|| "NA".to_string(), |v| v.to_string());
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.type_label,
            r.rank,
            r.q,
            r.e,
            r.kappa_class,
            r.level,
            r.kappa,
            na(r.total),
            na(r.fixed),
            na(r.method_a),
            na(r.method_b),
            na(r.label_count),
            na(r.class_count)
        );
    }
    out
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serializable");
    s.push('\n');
    s
}
