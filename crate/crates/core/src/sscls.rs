//! Semisimple classes of `GL_{n+1}(q)` as multisets of Frobenius orbits of
//! eigenvalues, the exterior-power trace labels and the power map on classes.
//!
//! Eigenvalues live in a splitting field `F_{q^L}`, `L = lcm(1..=n+1)`, and
//! are stored by their discrete log there.

use std::collections::HashMap;

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{mk_field, FieldCtx, FieldElem};
use crate::labelcalc::GaloisParam;

/// Largest splitting field built for class computations.
const SPLITTING_FIELD_LIMIT: u64 = 1 << 20;
/// Desk-scale bound on `q^n`.
const CLASS_COUNT_LIMIT: u64 = 100_000;

/// One orbit of eigenvalues: the smallest exponent in the orbit and its size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EigenOrbit {
    pub exponent: u64,
    pub degree: u32,
}

/// A semisimple class: sorted multiset of eigenvalue orbits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SsClass {
    pub orbits: Vec<EigenOrbit>,
}

/// Trace-function label `(b_0, (b_1, .., b_n))` with values in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlobalLabel {
    /// Determinant.
    pub b0: FieldElem,
    /// `b_i = tr(Lambda^i)`, `i = 1..=n`.
    pub b: Vec<FieldElem>,
}

/// Orbits of `k -> mult * k` on `Z/modulus` of size at most `max_size`,
/// each given by its minimal element.
fn small_orbits(mult: u64, modulus: u64, max_size: u32) -> Vec<EigenOrbit> {
    let mut out = Vec::new();
    let mut power = 1u64;
    for j in 1..=max_size {
        power = (power as u128 * mult as u128 % modulus as u128) as u64;
        let fixed_by = arith::gcd((power + modulus - 1) % modulus, modulus);
        let step = modulus / fixed_by;
        for t in 0..fixed_by {
            let k = t * step;
            let orbit = orbit_of(k, mult, modulus);
            if orbit.len() == j as usize && orbit.iter().all(|&x| x >= k) {
                out.push(EigenOrbit { exponent: k, degree: j });
            }
        }
    }
    out.sort();
    out
}

fn orbit_of(k: u64, mult: u64, modulus: u64) -> Vec<u64> {
    let mut orbit = vec![k];
    let mut x = (k as u128 * mult as u128 % modulus as u128) as u64;
    while x != k {
        orbit.push(x);
        x = (x as u128 * mult as u128 % modulus as u128) as u64;
    }
    orbit
}

/// Multisets of orbits (nondecreasing index lists) of total degree `total`.
fn orbit_multisets(orbits: &[EigenOrbit], total: u32) -> Vec<Vec<EigenOrbit>> {
    fn go(
        orbits: &[EigenOrbit],
        start: usize,
        left: u32,
        cur: &mut Vec<EigenOrbit>,
        out: &mut Vec<Vec<EigenOrbit>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..orbits.len() {
            if orbits[i].degree <= left {
                cur.push(orbits[i]);
                go(orbits, i, left - orbits[i].degree, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(orbits, 0, total, &mut Vec::new(), &mut out);
    out
}

/// `GL_{n+1}(q)` together with its splitting field.
#[derive(Debug)]
pub struct GlModel {
    /// Matrix size `n + 1`.
    pub size: u32,
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub fq: FieldCtx,
    pub splitting: FieldCtx,
    /// `|F_{q^L}^x|`.
    order: u64,
    to_fq: HashMap<FieldElem, FieldElem>,
}

impl GlModel {
    pub fn new(size: u32, q: u64) -> Result<Self> {
        let (p, f) = arith::prime_power(q)
            .ok_or_else(|| Error::InvalidArgument(format!("q={q} is not a prime power")))?;
        if size == 0 {
            return Err(Error::InvalidArgument("matrix size must be positive".into()));
        }
        let n = size - 1;
        if arith::checked_pow(q, n).is_none_or(|x| x > CLASS_COUNT_LIMIT) {
            return Err(Error::ScaleBound(format!("q^n = {q}^{n} exceeds {CLASS_COUNT_LIMIT}")));
        }
        let l = (1..=size as u64).fold(1, arith::lcm) as u32;
        let fq = mk_field(p, f)?;
        let splitting = FieldCtx::with_bound(p, f * l, SPLITTING_FIELD_LIMIT)
            .map_err(|_| Error::ScaleBound(format!("splitting field F_{q}^{l} is too large")))?;
        let embedding = fq.embedding_into(&splitting)?;
        let to_fq = fq.elements().map(|x| (embedding.apply(&fq, &splitting, x), x)).collect();
        let order = splitting.size() - 1;
        Ok(GlModel { size, q, p, f, fq, splitting, order, to_fq })
    }

    fn orbits(&self) -> Vec<EigenOrbit> {
        small_orbits(self.q % self.order, self.order, self.size)
    }

    /// All semisimple classes, sorted.
    pub fn enumerate_ss_classes(&self) -> Vec<SsClass> {
        let mut out: Vec<SsClass> = orbit_multisets(&self.orbits(), self.size)
            .into_iter()
            .map(|orbits| SsClass { orbits })
            .collect();
        out.sort();
        out
    }

    /// Eigenvalues with multiplicity, in the splitting field.
    pub fn eigenvalues(&self, cls: &SsClass) -> Vec<FieldElem> {
        cls.orbits
            .iter()
            .flat_map(|o| orbit_of(o.exponent, self.q % self.order, self.order))
            .map(|k| self.splitting.gen_pow(k))
            .collect()
    }

    fn down(&self, x: FieldElem) -> FieldElem {
        *self.to_fq.get(&x).expect("value lies in F_q")
    }

    /// Coefficients of `prod (1 + lambda t)` in the splitting field: the
    /// elementary symmetric functions `e_0, .., e_{n+1}`.
    fn elementary(&self, cls: &SsClass) -> Vec<FieldElem> {
        let k = &self.splitting;
        let mut coeffs = vec![k.one()];
        for lambda in self.eigenvalues(cls) {
            let mut next = coeffs.clone();
            next.push(k.zero());
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = k.add(next[i + 1], k.mul(c, lambda));
            }
            coeffs = next;
        }
        coeffs
    }

    /// Characteristic polynomial over `F_q`, low degree first, monic.
    pub fn charpoly(&self, cls: &SsClass) -> Vec<FieldElem> {
        let k = &self.splitting;
        let e = self.elementary(cls);
        let m = self.size as usize;
        (0..=m)
            .map(|j| {
                // coefficient of x^j is (-1)^{m-j} e_{m-j}
                let c = e[m - j];
                self.down(if (m - j) % 2 == 1 { k.neg(c) } else { c })
            })
            .collect()
    }

    pub fn steinberg_label(&self, cls: &SsClass) -> GlobalLabel {
        let e = self.elementary(cls);
        let m = self.size as usize;
        GlobalLabel { b0: self.down(e[m]), b: e[1..m].iter().map(|&x| self.down(x)).collect() }
    }

    /// Class of `s^k`.
    pub fn class_power(&self, cls: &SsClass, k: u64) -> SsClass {
        let mult = self.q % self.order;
        let k = k % self.order;
        let mut orbits = Vec::new();
        for o in &cls.orbits {
            let image = o.exponent as u128 * k as u128 % self.order as u128;
            let orbit = orbit_of(image as u64, mult, self.order);
            let rep = EigenOrbit {
                exponent: *orbit.iter().min().expect("nonempty"),
                degree: orbit.len() as u32,
            };
            for _ in 0..o.degree / rep.degree {
                orbits.push(rep);
            }
        }
        orbits.sort();
        SsClass { orbits }
    }

    /// `p^e` reduced modulo the multiplicative order of the splitting field.
    pub fn galois_exponent(&self, g: &GaloisParam) -> u64 {
        arith::pow_mod(self.p, g.e, self.order)
    }

    pub fn count_sigma_fixed_classes(&self, g: &GaloisParam) -> u64 {
        let k = self.galois_exponent(g);
        self.enumerate_ss_classes().iter().filter(|c| self.class_power(c, k) == **c).count() as u64
    }
}

pub fn enumerate_ss_classes(size: u32, q: u64) -> Result<Vec<SsClass>> {
    Ok(GlModel::new(size, q)?.enumerate_ss_classes())
}

pub fn count_sigma_fixed_classes(size: u32, q: u64, g: &GaloisParam) -> Result<u64> {
    Ok(GlModel::new(size, q)?.count_sigma_fixed_classes(g))
}

/// Number of semisimple classes of `GU_3(q)`: multisets of size 3 of orbits
/// of `x -> x^{-q}` on `F_{q^6}^x`.
pub fn enumerate_ss_classes_gu3(q: u64) -> Result<u64> {
    let (p, f) = arith::prime_power(q)
        .ok_or_else(|| Error::InvalidArgument(format!("q={q} is not a prime power")))?;
    if q > 7 {
        return Err(Error::ScaleBound(format!("GU_3 enumeration is limited to q <= 7, got {q}")));
    }
    let big = arith::checked_pow(p, 6 * f)
        .filter(|&x| x <= SPLITTING_FIELD_LIMIT)
        .ok_or_else(|| Error::ScaleBound(format!("F_{q}^6 is too large")))?;
    let order = big - 1;
    let mult = order - q % order;
    Ok(orbit_multisets(&small_orbits(mult, order, 3), 3).len() as u64)
}
