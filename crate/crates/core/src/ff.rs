//! Exact arithmetic in small finite fields `F_{p^m}`.
//!
//! Elements are stored as a single integer: the coefficient vector
//! `(c_0, .., c_{m-1})` of the polynomial-basis representation read as the
//! base-`p` number `c_0 + c_1 p + .. + c_{m-1} p^{m-1}`. This is also the
//! order used for "lexicographically smallest" below (the top coefficient is
//! the most significant digit).

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::arith;
use crate::error::{Error, Result};

/// Default cap on `p^m`.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

const FROBENIUS_TABLE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Immutable description of `F_{p^m}`.
pub struct FieldCtx {
    p: u64,
    m: u32,
    size: u64,
    /// Monic modulus, low degree first, length `m + 1`.
    modulus: Vec<u64>,
    generator: FieldElem,
    order_primes: Vec<u64>,
    frobenius: OnceLock<Vec<u32>>,
    baby_steps: OnceLock<(HashMap<u32, u64>, u64, FieldElem)>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

/// Builds `F_{p^m}` with the default size bound.
pub fn mk_field(p: u64, m: u32) -> Result<FieldCtx> {
    FieldCtx::with_bound(p, m, DEFAULT_FIELD_BOUND)
}

impl FieldCtx {
    /// Builds `F_{p^m}`: the modulus is the smallest monic irreducible of
    /// degree `m`, the generator the smallest element of order `p^m - 1`.
    pub fn with_bound(p: u64, m: u32, bound: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let size = match arith::checked_pow(p, m) {
            Some(s) if s <= bound && s <= u32::MAX as u64 => s,
            _ => return Err(Error::FieldTooLarge { p, m, bound }),
        };
        let modulus = smallest_irreducible(p, m as usize);
        let mut ctx = FieldCtx {
            p,
            m,
            size,
            modulus,
            generator: FieldElem(0),
            order_primes: arith::prime_factors(size - 1),
            frobenius: OnceLock::new(),
            baby_steps: OnceLock::new(),
        };
        ctx.generator = (1..size as u32)
            .map(FieldElem)
            .find(|&x| ctx.has_full_order(x))
            .expect("multiplicative group of a finite field is cyclic");
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// `p^m`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, a: i64) -> FieldElem {
        FieldElem(a.rem_euclid(self.p as i64) as u32)
    }

    pub fn elem(&self, index: u32) -> Result<FieldElem> {
        if (index as u64) < self.size {
            Ok(FieldElem(index))
        } else {
            Err(Error::InvalidArgument(format!("index {index} outside F_{}", self.size)))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size as u32).map(FieldElem)
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        let mut v = x.0 as u64;
        (0..self.m)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        assert!(coeffs.len() <= self.m as usize, "too many coefficients");
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = acc * self.p + c % self.p;
        }
        FieldElem(acc as u32)
    }

    /// True iff `x` is the image of an element of the prime field.
    pub fn is_prime_field(&self, x: FieldElem) -> bool {
        (x.0 as u64) < self.p
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&sum)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let c: Vec<u64> = self.coeffs(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem(0);
        }
        let m = self.m as usize;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, x) in ca.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        reduce_in_place(&mut prod, &self.modulus, self.p);
        prod.truncate(m);
        self.from_coeffs(&prod)
    }

    pub fn pow(&self, x: FieldElem, exp: u64) -> FieldElem {
        if exp == 0 {
            return self.one();
        }
        if x.is_zero() {
            return x;
        }
        let mut e = exp % (self.size - 1);
        if e == 0 {
            return self.one();
        }
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: FieldElem) -> Option<FieldElem> {
        if x.is_zero() {
            None
        } else {
            Some(self.pow(x, self.size - 2))
        }
    }

    /// `g^k` for the fixed generator `g`.
    pub fn gen_pow(&self, k: u64) -> FieldElem {
        self.pow(self.generator, k)
    }

    pub fn multiplicative_order(&self, x: FieldElem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut order = self.size - 1;
        for &l in &self.order_primes {
            while order % l == 0 && self.pow(x, order / l) == self.one() {
                order /= l;
            }
        }
        Some(order)
    }

    fn has_full_order(&self, x: FieldElem) -> bool {
        !x.is_zero()
            && self
                .order_primes
                .iter()
                .all(|&l| self.pow(x, (self.size - 1) / l) != self.one())
    }

    fn frobenius_once(&self, x: FieldElem) -> FieldElem {
        if self.size <= FROBENIUS_TABLE_LIMIT {
            let table = self.frobenius.get_or_init(|| {
                (0..self.size as u32).map(|i| self.pow(FieldElem(i), self.p).0).collect()
            });
            FieldElem(table[x.0 as usize])
        } else {
            self.pow(x, self.p)
        }
    }

    /// `x^{p^e}`.
    pub fn frobenius_pow(&self, x: FieldElem, e: u64) -> FieldElem {
        let mut y = x;
        for _ in 0..e % self.m as u64 {
            y = self.frobenius_once(y);
        }
        y
    }

    /// `#{x : x^{p^e} = x} = p^{gcd(e, m)}`.
    pub fn count_frobenius_fixed(&self, e: u64) -> u64 {
        self.p.pow(arith::gcd(e, self.m as u64) as u32)
    }

    /// True iff `x` lies in the subfield `F_{p^j}` (requires nothing of `j`).
    pub fn in_subfield(&self, x: FieldElem, j: u32) -> bool {
        self.frobenius_pow(x, j as u64) == x
    }

    /// Discrete logarithm to the base of the fixed generator, by baby-step
    /// giant-step. Result lies in `[0, p^m - 2]`.
    pub fn dlog(&self, x: FieldElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DlogOfZero);
        }
        let order = self.size - 1;
        let (baby, step, giant) = self.baby_steps.get_or_init(|| {
            let step = (order as f64).sqrt().ceil() as u64;
            let step = step.max(1);
            let mut table = HashMap::with_capacity(step as usize);
            let mut y = self.one();
            for j in 0..step {
                table.entry(y.0).or_insert(j);
                y = self.mul(y, self.generator);
            }
            let giant = self.inv(self.gen_pow(step)).expect("nonzero");
            (table, step, giant)
        });
        let mut y = x;
        for i in 0..=*step {
            if let Some(j) = baby.get(&y.0) {
                return Ok((i * step + j) % order);
            }
            y = self.mul(y, *giant);
        }
        unreachable!("every nonzero element is a power of the generator")
    }

    /// Ring embedding of `self` into `target`, which must have degree a
    /// multiple of `self.degree()`.
    pub fn embedding_into(&self, target: &FieldCtx) -> Result<Embedding> {
        if self.p != target.p {
            return Err(Error::CharacteristicMismatch(self.p, target.p));
        }
        if target.m % self.m != 0 {
            return Err(Error::NotSubfield { p: self.p, from: self.m, to: target.m });
        }
        let index = (target.size - 1) / (self.size - 1);
        let h = target.gen_pow(index);
        let eval_modulus = |t: FieldElem| {
            self.modulus
                .iter()
                .rev()
                .fold(target.zero(), |acc, &c| target.add(target.mul(acc, t), target.from_int(c as i64)))
        };
        let mut roots = Vec::new();
        if eval_modulus(target.zero()).is_zero() {
            roots.push(target.zero());
        }
        let mut t = target.one();
        for _ in 0..self.size - 1 {
            if eval_modulus(t).is_zero() {
                roots.push(t);
            }
            t = target.mul(t, h);
        }
        debug_assert_eq!(roots.len(), self.m as usize);
        let basis_for = |root: FieldElem| -> Vec<FieldElem> {
            let mut out = Vec::with_capacity(self.m as usize);
            let mut acc = target.one();
            for _ in 0..self.m {
                out.push(acc);
                acc = target.mul(acc, root);
            }
            out
        };
        let apply_with = |basis: &[FieldElem], x: FieldElem| -> FieldElem {
            self.coeffs(x).iter().zip(basis).fold(target.zero(), |acc, (&c, &b)| {
                target.add(acc, target.mul(target.from_int(c as i64), b))
            })
        };
        // Prefer the root sending the generator to h; otherwise the first root found.
        let basis = roots
            .iter()
            .map(|&r| basis_for(r))
            .find(|b| apply_with(b, self.generator) == h)
            .unwrap_or_else(|| basis_for(roots[0]));
        Ok(Embedding { source_degree: self.m, target_degree: target.m, p: self.p, basis })
    }

    /// Convenience wrapper around [`FieldCtx::embedding_into`].
    pub fn embed(&self, x: FieldElem, target: &FieldCtx) -> Result<FieldElem> {
        Ok(self.embedding_into(target)?.apply(self, target, x))
    }

    /// `"0"` or `"g^k"`.
    pub fn format_dlog(&self, x: FieldElem) -> String {
        match self.dlog(x) {
            Ok(k) => format!("g^{k}"),
            Err(_) => "0".to_string(),
        }
    }
}

/// A fixed ring embedding `F_{p^m} -> F_{p^{m'}}`, stored as the images of
/// the polynomial basis `1, θ, .., θ^{m-1}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source_degree: u32,
    target_degree: u32,
    p: u64,
    basis: Vec<FieldElem>,
}

impl Embedding {
    pub fn apply(&self, source: &FieldCtx, target: &FieldCtx, x: FieldElem) -> FieldElem {
        assert_eq!((source.p, source.m), (self.p, self.source_degree));
        assert_eq!((target.p, target.m), (self.p, self.target_degree));
        source.coeffs(x).iter().zip(&self.basis).fold(target.zero(), |acc, (&c, &b)| {
            target.add(acc, target.mul(target.from_int(c as i64), b))
        })
    }
}

// ---- polynomials over F_p, coefficient vectors low degree first ----

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn reduce_in_place(prod: &mut [u64], modulus: &[u64], p: u64) {
    let m = modulus.len() - 1;
    for k in (m..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for i in 0..=m {
            let idx = k - m + i;
            prod[idx] = (prod[idx] + (p - c) * modulus[i]) % p;
        }
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let m = modulus.len() - 1;
    if prod.len() > m {
        reduce_in_place(&mut prod, modulus, p);
        prod.truncate(m);
    }
    trim(&mut prod);
    prod
}

fn poly_powmod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = arith::inv_mod(b[db] as i64, p as i64).expect("nonzero lead") as u64;
    while r.len() - 1 >= db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + (p - c) * b[i] % p) % p;
        }
        trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    r
}

fn poly_gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x.len() - 1
}

/// Irreducibility by `gcd(x^{p^j} - x, f) = 1` for `j <= deg f / 2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m <= 1 {
        return m == 1;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=m / 2 {
        h = poly_powmod(&h, p, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if diff.len() == 1 && diff[0] == 0 {
            return false;
        }
        if poly_gcd_degree(f, &diff, p) > 0 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let lower = p.pow(m as u32);
    (0..lower)
        .map(|idx| {
            let mut f = Vec::with_capacity(m + 1);
            let mut v = idx;
            for _ in 0..m {
                f.push(v % p);
                v /= p;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
