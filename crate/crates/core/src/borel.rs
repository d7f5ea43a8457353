//! Clifford-theory model of the `p'`-characters of the Borel subgroup in the
//! untwisted case.
//!
//! Linear characters of `U/[U,U]` are tuples `(c_1, .., c_n)` over `F_q`;
//! nonzero coordinates are stored by their discrete log, so the torus
//! `T^F = (Z/N)^n`, `N = q - 1`, acts by translation through the Cartan
//! matrix. A `p'`-character of `B` is a pair (torus orbit, character of the
//! stabilizer). Nothing below materializes character values.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{mk_field, FieldCtx};
use crate::labelcalc::GaloisParam;
use crate::rootdata::{build_twist, RootDatum};
use crate::zmodlin::{
    kernel_generators, kernel_shape, smith_normal_form, solve_mod, AbelianGroupShape, Cokernel,
    IntMatrix,
};

/// Largest character group enumerated element by element.
const ENUMERATION_LIMIT: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Level {
    /// `B = T U` inside the simply connected group.
    B,
    /// `B~ = T~ U` inside the regular embedding.
    BTilde,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::B => "B",
            Level::BTilde => "Bt",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    /// Support `S`, 0-based simple-root indices.
    pub support: Vec<usize>,
    /// Discrete logs of the coordinates on `S`.
    pub orbit_rep: Vec<i64>,
    pub level: Level,
    pub stabilizer: AbelianGroupShape,
    pub orbit_size: u64,
    /// Number of extensions, `|Irr(stabilizer)|`.
    pub count_lambda: u64,
}

/// Exponent matrix of the `T`-action on the coordinates: row `i` gives the
/// exponents of `s_1, .., s_n` scaling `c_i`.
pub fn torus_action_matrix(rd: &RootDatum) -> IntMatrix {
    rd.cartan.clone()
}

/// Cocharacter model of `T~` for the regular embedding.
///
/// `Y(T~) = Z^{n+d}`; `action` (`n x (n+d)`) is the surjection onto the
/// adjoint torus, `embed` (`(n+d) x n`) the saturated inclusion of `Y(T)`,
/// with `action * embed = cartan`.
#[derive(Clone, Debug)]
pub struct ExtendedTorus {
    pub n: usize,
    pub d: usize,
    pub action: IntMatrix,
    pub embed: IntMatrix,
}

pub fn extended_torus(rd: &RootDatum) -> ExtendedTorus {
    let n = rd.rank;
    let snf = smith_normal_form(&rd.cartan);
    let diag: Vec<i64> = (0..n).map(|i| snf.d.get_i64(i, i)).collect();
    let nontrivial: Vec<usize> = (0..n).filter(|&i| diag[i] != 1).collect();
    let d = nontrivial.len();

    let mut proj = IntMatrix::zeros(n, n + d);
    for i in 0..n {
        proj[(i, i)] = 1.into();
    }
    let action = snf.u_inv.mul(&proj);

    let mut embed_snf = IntMatrix::zeros(n + d, n);
    for i in 0..n {
        embed_snf[(i, i)] = diag[i].into();
    }
    for (k, &i) in nontrivial.iter().enumerate() {
        embed_snf[(n + k, i)] = (-1).into();
    }
    let embed = embed_snf.mul(&snf.v_inv);
    debug_assert_eq!(action.mul(&embed).to_rows_i64(), rd.cartan.to_rows_i64());
    ExtendedTorus { n, d, action, embed }
}

struct Setup {
    p: u64,
    modulus: i64,
    fq: FieldCtx,
}

fn setup(rd: &RootDatum, q: u64) -> Result<Setup> {
    let (p, f) = arith::prime_power(q)
        .ok_or_else(|| Error::InvalidArgument(format!("q={q} is not a prime power")))?;
    if let Some(ex) = build_twist(rd, 1)?.excluded(q) {
        return Err(Error::Excluded(ex));
    }
    let fq = mk_field(p, f)?;
    Ok(Setup { p, modulus: (q - 1) as i64, fq })
}

fn supports(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

fn action_at(rd: &RootDatum, level: Level) -> IntMatrix {
    match level {
        Level::B => torus_action_matrix(rd),
        Level::BTilde => extended_torus(rd).action,
    }
}

fn scalar_vector(len: usize, c: i64) -> Vec<i64> {
    vec![c; len]
}

fn columns_to_matrix(rows: usize, cols: &[Vec<i64>]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            m[(i, j)] = x.into();
        }
    }
    m
}

pub fn enum_orbits(rd: &RootDatum, q: u64, level: Level) -> Result<Vec<OrbitClass>> {
    let st = setup(rd, q)?;
    let action = action_at(rd, level);
    let torus_rank = action.cols() as u32;
    let torus_order = (st.modulus as u64).pow(torus_rank);
    let mut out = Vec::new();
    for support in supports(rd.rank) {
        let a = action.select_rows(&support);
        let stabilizer = kernel_shape(&a, st.modulus);
        let coker = Cokernel::new(&a, st.modulus);
        if level == Level::BTilde {
            assert_eq!(coker.order(), 1, "adjoint action is transitive on each support");
            assert_eq!(
                stabilizer,
                AbelianGroupShape::new(vec![st.modulus as u64; torus_rank as usize - support.len()])
            );
        }
        let stab_order = stabilizer.order();
        for rep in coker.representatives() {
            out.push(OrbitClass {
                support: support.clone(),
                orbit_rep: rep,
                level,
                stabilizer: stabilizer.clone(),
                orbit_size: torus_order / stab_order,
                count_lambda: stab_order,
            });
        }
    }
    Ok(out)
}

/// `|Irr_{p'}|` at the given level: sum over orbits of `|Irr(stabilizer)|`.
pub fn count_pprime(rd: &RootDatum, q: u64, level: Level) -> Result<u64> {
    let st = setup(rd, q)?;
    let action = action_at(rd, level);
    Ok(supports(rd.rank)
        .map(|s| {
            let a = action.select_rows(&s);
            Cokernel::new(&a, st.modulus).order() * kernel_shape(&a, st.modulus).order()
        })
        .sum())
}

/// Pairs `(O, lambda)` with `kappa O = O` and `lambda^{p^e} = lambda`.
pub fn count_sigma_fixed(rd: &RootDatum, q: u64, level: Level, g: &GaloisParam) -> Result<u64> {
    let st = setup(rd, q)?;
    let action = action_at(rd, level);
    let c = g.kappa_dlog(&st.fq) as i64;
    let r = arith::pe_minus_one_mod(st.p, g.e, st.modulus as u64);
    let mut total = 0;
    for s in supports(rd.rank) {
        let a = action.select_rows(&s);
        let stable = solve_mod(&a, &scalar_vector(s.len(), c), st.modulus).is_some();
        if level == Level::BTilde {
            assert!(stable, "adjoint action is surjective");
        }
        if stable {
            let orbits = Cokernel::new(&a, st.modulus).order();
            total += orbits * crate::zmodlin::torsion_count(&kernel_shape(&a, st.modulus), r);
        }
    }
    Ok(total)
}

/// Second count of the sigma-fixed characters of `B`, through `B~`.
///
/// For each support, `t~` is the element of `T~` acting as the scalar
/// `kappa`. A character of `B` under `psi in Irr(B~ | phi_S)` is fixed iff
/// `t~` lies in `Stab_{T~}(phi_S) T` and the restriction of `psi` to `B` is
/// fixed. The latter holds iff `(p^e - 1) lambda~` lies in the characters
/// trivial on `Stab` plus those trivial on `T`. Each such `psi` restricts to
/// `c` constituents, each lying under `m` such `psi`.
pub fn count_sigma_fixed_via_extension(rd: &RootDatum, q: u64, g: &GaloisParam) -> Result<u64> {
    let st = setup(rd, q)?;
    let n = st.modulus;
    let tt = extended_torus(rd);
    let big = tt.n + tt.d;
    let small_order = (n as u64).pow(tt.n as u32);
    let big_order = (n as u64).pow(big as u32);
    let c = g.kappa_dlog(&st.fq) as i64;
    let r = arith::pe_minus_one_mod(st.p, g.e, n as u64) as i64;
    let t_scalar =
        solve_mod(&tt.action, &scalar_vector(tt.n, c), n).expect("adjoint action is surjective");
    let trivial_on_t = kernel_generators(&tt.embed.transpose(), n);
    let cartan = torus_action_matrix(rd);

    let mut total = 0u64;
    for s in supports(rd.rank) {
        let a = tt.action.select_rows(&s);
        let stab_gens = kernel_generators(&a, n);
        let inertia = columns_to_matrix(big, &stab_gens).hconcat(&tt.embed);
        if solve_mod(&inertia, &t_scalar, n).is_none() {
            continue;
        }
        let stab_big = kernel_shape(&a, n).order();
        let stab_small = kernel_shape(&cartan.select_rows(&s), n).order();
        let stab_times_t = stab_big * small_order / stab_small;
        let constituents = big_order / stab_times_t;
        let over_each = stab_times_t / small_order;

        let dual_stab = Cokernel::new(&a.transpose(), n);
        if dual_stab.order() > ENUMERATION_LIMIT {
            return Err(Error::ScaleBound(format!(
                "{} characters of a stabilizer exceed the enumeration limit",
                dual_stab.order()
            )));
        }
        let allowed = Cokernel::new(&a.transpose().hconcat(&columns_to_matrix(big, &trivial_on_t)), n);
        let fixed_psi = dual_stab
            .representatives()
            .into_iter()
            .filter(|chi| {
                let scaled: Vec<i64> = chi.iter().map(|&x| x * r % n).collect();
                allowed.key(&scaled).iter().all(|&k| k == 0)
            })
            .count() as u64;
        let numerator = fixed_psi * constituents;
        assert_eq!(numerator % over_each, 0, "fixed characters of B come in whole packets");
        total += numerator / over_each;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CentralCount {
    pub total: u64,
    pub fixed: u64,
}

/// Characters of `B` grouped by their restriction to `Z(G^F) = ker(cartan)`.
/// Keys are canonical coordinates of the central character.
pub fn central_partition(
    rd: &RootDatum,
    q: u64,
    g: &GaloisParam,
) -> Result<BTreeMap<Vec<i64>, CentralCount>> {
    let st = setup(rd, q)?;
    let n = st.modulus;
    let cartan = torus_action_matrix(rd);
    let center_dual = Cokernel::new(&cartan.transpose(), n);
    let c = g.kappa_dlog(&st.fq) as i64;
    let r = arith::pe_minus_one_mod(st.p, g.e, n as u64) as i64;
    let mut out: BTreeMap<Vec<i64>, CentralCount> = center_dual
        .representatives()
        .iter()
        .map(|v| (center_dual.key(v), CentralCount::default()))
        .collect();
    for s in supports(rd.rank) {
        let a = cartan.select_rows(&s);
        let orbits = Cokernel::new(&a, n).order();
        let stable = solve_mod(&a, &scalar_vector(s.len(), c), n).is_some();
        let dual_stab = Cokernel::new(&a.transpose(), n);
        if dual_stab.order() > ENUMERATION_LIMIT {
            return Err(Error::ScaleBound(format!(
                "{} characters of a stabilizer exceed the enumeration limit",
                dual_stab.order()
            )));
        }
        for v in dual_stab.representatives() {
            let entry = out.get_mut(&center_dual.key(&v)).expect("key of a central character");
            entry.total += orbits;
            let scaled: Vec<i64> = v.iter().map(|&x| x * r % n).collect();
            if stable && dual_stab.key(&scaled).iter().all(|&k| k == 0) {
                entry.fixed += orbits;
            }
        }
    }
    Ok(out)
}

/// Closed forms for type `C_n`: `p^{sn} + 3 p^{s(n-1)}` when `dlog(kappa)`
/// is even, `p^{sn} - p^{s(n-1)}` when odd, `s = gcd(e, f)`.
pub fn closed_form_cn(n: u32, p: u64, f: u32, e: u64, c_even: bool) -> Result<u64> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("closed form needs an odd prime, got {p}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let s = arith::gcd(e, f as u64) as u32;
    let big = p.pow(s * n);
    let small = p.pow(s * (n - 1));
    Ok(if c_even { big + 3 * small } else { big - small })
}
