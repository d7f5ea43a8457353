//! The label set `A = prod_j mu_{z_j} x prod_i F_{q^{|A_i|}}`, the Galois
//! action on labels and fixed-point counting.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{mk_field, FieldCtx, FieldElem};
use crate::rootdata::TwistData;

/// An `(e, p)`-Galois automorphism: `p'`-roots of unity go to their
/// `p^e`-th power, `zeta_p` goes to `zeta_p^kappa`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisParam {
    pub e: u64,
    /// Image of `k` in `F_p^x`, as an integer in `1..p`.
    pub kappa: u64,
}

impl GaloisParam {
    pub fn new(e: u64, kappa: u64, p: u64) -> Result<Self> {
        if kappa % p == 0 {
            return Err(Error::InvalidArgument(format!("kappa must be nonzero mod {p}")));
        }
        Ok(GaloisParam { e, kappa: kappa % p })
    }

    pub fn identity() -> Self {
        GaloisParam { e: 0, kappa: 1 }
    }

    /// `gcd(e, m)` with `gcd(0, m) = m`.
    pub fn s(&self, m: u64) -> u64 {
        arith::gcd(self.e, m)
    }

    /// `p^e mod n`.
    pub fn k_mod(&self, p: u64, n: u64) -> u64 {
        arith::pow_mod(p, self.e, n)
    }

    /// Discrete log of `kappa` inside `F_q^x`.
    pub fn kappa_dlog(&self, fq: &FieldCtx) -> u64 {
        fq.dlog(fq.from_int(self.kappa as i64)).expect("kappa is nonzero")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    /// Central part, one entry per generator of `Z(G~^F)`.
    pub c0: Vec<FieldElem>,
    /// One entry per tau-orbit; zero marks an index outside the support.
    pub ci: Vec<FieldElem>,
}

/// Splits `q` and rejects excluded configurations.
fn checked_q(twist: &TwistData, q: u64) -> Result<(u64, u32)> {
    let (p, f) = arith::prime_power(q)
        .ok_or_else(|| Error::InvalidArgument(format!("q={q} is not a prime power")))?;
    if let Some(ex) = twist.excluded(q) {
        return Err(Error::Excluded(ex));
    }
    Ok((p, f))
}

fn checked_product(factors: impl IntoIterator<Item = u64>) -> Result<u64> {
    factors.into_iter().try_fold(1u64, |acc, x| {
        acc.checked_mul(x).ok_or_else(|| Error::ScaleBound("label count overflows u64".into()))
    })
}

/// `|A| = prod_j z_j * prod_i q^{|A_i|}`.
pub fn label_set_size(twist: &TwistData, q: u64) -> Result<u64> {
    checked_q(twist, q)?;
    let sizes = twist.orbit_sizes();
    let per_orbit = sizes.iter().map(|&a| arith::checked_pow(q, a as u32));
    let per_orbit: Option<Vec<u64>> = per_orbit.collect();
    let per_orbit = per_orbit.ok_or_else(|| Error::ScaleBound("label count overflows u64".into()))?;
    checked_product(twist.center_orders(q).into_iter().chain(per_orbit))
}

/// Number of labels fixed by the `p^e`-power map, by the closed form
/// `prod_j gcd(z_j, p^e - 1) * prod_i p^{gcd(e, f |A_i|)}`.
pub fn count_fixed_labels(twist: &TwistData, q: u64, g: &GaloisParam) -> Result<u64> {
    let (p, f) = checked_q(twist, q)?;
    let central = twist
        .center_orders(q)
        .into_iter()
        .map(|z| arith::gcd(z, arith::pe_minus_one_mod(p, g.e, z)));
    let orbits: Option<Vec<u64>> = twist
        .orbit_sizes()
        .into_iter()
        .map(|a| arith::checked_pow(p, g.s(f as u64 * a as u64) as u32))
        .collect();
    let orbits = orbits.ok_or_else(|| Error::ScaleBound("label count overflows u64".into()))?;
    checked_product(central.chain(orbits))
}

/// Componentwise `p^e`-th power. Independent of `kappa`.
pub fn galois_act_label(field: &FieldCtx, lab: &Label, g: &GaloisParam) -> Label {
    let act = |x: &FieldElem| field.frobenius_pow(*x, g.e);
    Label { c0: lab.c0.iter().map(act).collect(), ci: lab.ci.iter().map(act).collect() }
}

pub fn central_character_of_label(lab: &Label) -> Vec<FieldElem> {
    lab.c0.clone()
}

/// The concrete label set of `(G, F)` over `F_q`, realised inside `F_{q^w}`.
#[derive(Debug)]
pub struct LabelSpace {
    pub twist: TwistData,
    pub q: u64,
    pub p: u64,
    pub f: u32,
    /// `F_{q^w}`.
    pub field: FieldCtx,
    /// Choices for each central slot, then for each orbit slot.
    slots: Vec<Vec<FieldElem>>,
}

impl LabelSpace {
    pub fn new(twist: &TwistData, q: u64) -> Result<Self> {
        let (p, f) = checked_q(twist, q)?;
        let field = mk_field(p, f * twist.w)?;
        let big = field.size() - 1;
        let mut slots = Vec::new();
        for z in twist.center_orders(q) {
            debug_assert_eq!(big % z, 0);
            let step = big / z;
            slots.push((0..z).map(|k| field.gen_pow(k * step)).collect());
        }
        for a in twist.orbit_sizes() {
            let sub = f * a as u32;
            slots.push(field.elements().filter(|&x| field.in_subfield(x, sub)).collect());
        }
        Ok(LabelSpace { twist: twist.clone(), q, p, f, field, slots })
    }

    pub fn size(&self) -> u64 {
        self.slots.iter().map(|s| s.len() as u64).product()
    }

    fn dbar(&self) -> usize {
        self.twist.dbar
    }

    pub fn contains(&self, lab: &Label) -> bool {
        let z = self.twist.center_orders(self.q);
        lab.c0.len() == z.len()
            && lab.ci.len() == self.twist.r()
            && lab.c0.iter().zip(&z).all(|(&c, &zj)| {
                self.field.multiplicative_order(c).is_some_and(|o| zj % o == 0)
            })
            && lab
                .ci
                .iter()
                .zip(self.twist.orbit_sizes())
                .all(|(&c, a)| self.field.in_subfield(c, self.f * a as u32))
    }

    pub fn act(&self, lab: &Label, g: &GaloisParam) -> Label {
        galois_act_label(&self.field, lab, g)
    }

    /// All labels, in lexicographic order of slot indices.
    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        let dbar = self.dbar();
        let mut idx = vec![0usize; self.slots.len()];
        let mut done = self.slots.iter().any(Vec::is_empty);
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let picks: Vec<FieldElem> =
                idx.iter().zip(&self.slots).map(|(&i, s)| s[i]).collect();
            let mut k = 0;
            loop {
                if k == idx.len() {
                    done = true;
                    break;
                }
                idx[k] += 1;
                if idx[k] < self.slots[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            Some(Label { c0: picks[..dbar].to_vec(), ci: picks[dbar..].to_vec() })
        })
    }

    /// Fixed labels counted one by one.
    pub fn count_fixed_by_enumeration(&self, g: &GaloisParam) -> u64 {
        self.iter().filter(|lab| self.act(lab, g) == *lab).count() as u64
    }

    pub fn format(&self, lab: &Label) -> String {
        LabelDisplay { space: self, lab }.to_string()
    }
}

struct LabelDisplay<'a> {
    space: &'a LabelSpace,
    lab: &'a Label,
}

impl fmt::Display for LabelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |xs: &[FieldElem]| {
            xs.iter().map(|&x| self.space.field.format_dlog(x)).collect::<Vec<_>>().join(",")
        };
        write!(f, "(({}),({}))", show(&self.lab.c0), show(&self.lab.ci))
    }
}
