//! Validated run configuration shared by the subcommands.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::FieldCtx;
use crate::labelcalc::GaloisParam;
use crate::rootdata::{build_root_datum, build_twist, LieType, TwistData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, ValueEnum)]
pub enum CountLevel {
    #[value(name = "B")]
    B,
    #[value(name = "Bt", alias = "Btilde")]
    #[serde(rename = "Bt")]
    BTilde,
    #[value(name = "labels")]
    #[serde(rename = "labels")]
    Labels,
    #[value(name = "classes")]
    #[serde(rename = "classes")]
    Classes,
}

impl fmt::Display for CountLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountLevel::B => "B",
            CountLevel::BTilde => "Bt",
            CountLevel::Labels => "labels",
            CountLevel::Classes => "classes",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Which values of `kappa in F_p^x` to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KappaSelector {
    All,
    /// Smallest `kappa` that is a square in `F_q^x`.
    Square,
    /// Smallest `kappa` that is a nonsquare in `F_q^x`, if any.
    Nonsquare,
    Value(u64),
}

impl FromStr for KappaSelector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(KappaSelector::All),
            "square" => Ok(KappaSelector::Square),
            "nonsquare" => Ok(KappaSelector::Nonsquare),
            other => other
                .parse()
                .map(KappaSelector::Value)
                .map_err(|_| format!("expected all, square, nonsquare or an integer, got {s:?}")),
        }
    }
}

/// Quadratic class of `kappa` inside `F_q^x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KappaClass {
    Square,
    Nonsquare,
}

impl fmt::Display for KappaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KappaClass::Square => "square",
            KappaClass::Nonsquare => "nonsquare",
        })
    }
}

pub fn kappa_class(fq: &FieldCtx, kappa: u64) -> KappaClass {
    let c = fq.dlog(fq.from_int(kappa as i64)).expect("kappa is nonzero");
    if c % 2 == 0 {
        KappaClass::Square
    } else {
        KappaClass::Nonsquare
    }
}

/// Representative `kappa` of each requested class, smallest first.
pub fn resolve_kappas(sel: KappaSelector, fq: &FieldCtx) -> Result<Vec<(u64, KappaClass)>> {
    let p = fq.p();
    let all: Vec<(u64, KappaClass)> = (1..p).map(|k| (k, kappa_class(fq, k))).collect();
    let pick = |class| all.iter().copied().filter(|&(_, c)| c == class).take(1).collect();
    Ok(match sel {
        KappaSelector::All => all,
        KappaSelector::Square => pick(KappaClass::Square),
        KappaSelector::Nonsquare => pick(KappaClass::Nonsquare),
        KappaSelector::Value(k) => {
            if k % p == 0 {
                return Err(Error::InvalidArgument(format!("kappa={k} is zero in F_{p}")));
            }
            vec![(k % p, kappa_class(fq, k % p))]
        }
    })
}

/// A `(type, rank, w)` triple written as e.g. `C`, `2A`, `3D`.
pub fn parse_twisted_type(s: &str) -> Result<(LieType, u32)> {
    let s = s.trim();
    let (w, ty) = match s.chars().next() {
        Some(c) if c.is_ascii_digit() => (c.to_digit(10).expect("digit"), &s[1..]),
        _ => (1, s),
    };
    Ok((LieType::parse(ty)?, w))
}

pub fn type_label(t: LieType, w: u32) -> String {
    if w == 1 {
        t.to_string()
    } else {
        format!("{w}{t}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub rank: usize,
    pub p: u64,
    pub f: u32,
    pub w: u32,
    pub e_values: Vec<u64>,
    pub kappa: KappaSelector,
    pub level: CountLevel,
    pub per_central_character: bool,
    pub format: Format,
}

/// Result of validating a configuration against the root datum tables.
#[derive(Debug)]
pub struct Validated {
    pub twist: TwistData,
    pub q: u64,
}

/// `(E_6, 2)` and `(E_7, 3)` are the bad-prime cases with nontrivial
/// center of `G^F` possible; everything else at a bad prime has trivial
/// center and is allowed.
fn bad_prime_blocked(twist: &TwistData, p: u64) -> bool {
    let rd = &twist.datum;
    twist.w == 1
        && !crate::rootdata::is_good_prime(rd, p)
        && matches!((rd.lie_type, rd.rank, p), (LieType::E, 6, 2) | (LieType::E, 7, 3))
}

pub fn validate_point(
    lie_type: LieType,
    rank: usize,
    p: u64,
    f: u32,
    w: u32,
    level: CountLevel,
) -> Result<Validated> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f == 0 {
        return Err(Error::InvalidArgument("f must be positive".into()));
    }
    let q = arith::checked_pow(p, f)
        .ok_or_else(|| Error::ScaleBound(format!("{p}^{f} overflows")))?;
    let rd = build_root_datum(lie_type, rank)?;
    let twist = build_twist(&rd, w)?;
    if let Some(ex) = twist.excluded(q) {
        return Err(Error::Excluded(ex));
    }
    match level {
        CountLevel::B | CountLevel::BTilde if w != 1 => {
            return Err(Error::Unsupported(format!(
                "the Borel model covers untwisted types only, got {}",
                twist.label()
            )))
        }
        CountLevel::B if bad_prime_blocked(&twist, p) => {
            return Err(Error::Unsupported(format!(
                "{} at the bad prime {p} has nontrivial center; B-level counts are not covered",
                twist.label()
            )))
        }
        CountLevel::Classes if lie_type != LieType::A || w != 1 => {
            return Err(Error::Unsupported(format!(
                "semisimple classes are modeled for untwisted type A only, got {}",
                twist.label()
            )))
        }
        _ => {}
    }
    Ok(Validated { twist, q })
}

impl RunConfig {
    pub fn validate(&self) -> Result<Validated> {
        validate_point(self.lie_type, self.rank, self.p, self.f, self.w, self.level)
    }

    pub fn galois_params(&self, fq: &FieldCtx) -> Result<Vec<(GaloisParam, KappaClass)>> {
        let kappas = resolve_kappas(self.kappa, fq)?;
        Ok(self
            .e_values
            .iter()
            .flat_map(|&e| kappas.iter().map(move |&(kappa, class)| (GaloisParam { e, kappa }, class)))
            .collect())
    }
}

/// Maps library errors to process exit codes.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Excluded(_) => 2,
        _ => 3,
    }
}
