//! Indecomposable root data, diagram automorphisms and the combinatorial
//! invariants attached to a pair `(G, F)`.
//!
//! Simple roots follow Bourbaki numbering. The Cartan matrix is stored with
//! `C[i][j] = <α_i, α_j^∨>`, so that `α_i(α_j^∨(s)) = s^{C[i][j]}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::zmodlin::{smith_normal_form, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieType {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(Error::InvalidRootDatum(format!("unknown type {other:?}"))),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub lie_type: LieType,
    pub rank: usize,
    pub cartan: IntMatrix,
    /// Positive roots in the simple-root basis, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    /// `|Z(G)|` for simply connected `G`, i.e. `det(cartan)`.
    pub fund_group_order: u64,
    /// Elementary divisors of the fundamental group (nontrivial ones only).
    pub fund_group_divisors: Vec<u64>,
    /// Exponent of the fundamental group.
    pub l: u64,
    pub bad_primes: BTreeSet<u64>,
}

impl RootDatum {
    pub fn label(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }

    /// `d`: maximal number of generators of `Z(G)` over all characteristics.
    pub fn d(&self) -> usize {
        self.fund_group_divisors.len()
    }

    /// `d_p`: number of generators of `Z(G)` in characteristic `p`.
    pub fn d_p(&self, p: u64) -> usize {
        self.fund_group_divisors
            .iter()
            .filter(|&&k| {
                let mut k = k;
                while k % p == 0 {
                    k /= p;
                }
                k > 1
            })
            .count()
    }

    pub fn cartan_i64(&self) -> Vec<Vec<i64>> {
        self.cartan.to_rows_i64()
    }
}

/// `(lie_type, rank)` -> Dynkin edges and relative squared root lengths.
fn dynkin(lie_type: LieType, n: usize) -> Result<(Vec<(usize, usize)>, Vec<i64>)> {
    let invalid = || Error::InvalidRootDatum(format!("{lie_type}{n}"));
    let chain = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let out = match lie_type {
        LieType::A if n >= 1 => (chain(n), vec![1; n]),
        // B_1 and C_1 coincide with A_1.
        LieType::B | LieType::C if n == 1 => (vec![], vec![1]),
        LieType::B if n >= 2 => {
            let mut len = vec![2; n];
            len[n - 1] = 1;
            (chain(n), len)
        }
        LieType::C if n >= 2 => {
            let mut len = vec![1; n];
            len[n - 1] = 2;
            (chain(n), len)
        }
        LieType::D if n >= 4 => {
            let mut edges = chain(n - 1);
            edges.push((n - 3, n - 1));
            (edges, vec![1; n])
        }
        LieType::E if (6..=8).contains(&n) => {
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            edges.extend((3..n - 1).map(|i| (i, i + 1)));
            (edges, vec![1; n])
        }
        LieType::F if n == 4 => (chain(4), vec![2, 2, 1, 1]),
        LieType::G if n == 2 => (chain(2), vec![1, 3]),
        _ => return Err(invalid()),
    };
    Ok(out)
}

fn cartan_from_dynkin(edges: &[(usize, usize)], len: &[i64]) -> Vec<Vec<i64>> {
    let n = len.len();
    // gram[i][j] = 2 (α_i, α_j) with (α_i, α_i) = len[i].
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        gram[i][i] = 2 * len[i];
    }
    for &(i, j) in edges {
        let w = -len[i].max(len[j]);
        gram[i][j] = w;
        gram[j][i] = w;
    }
    // <α_i, α_j^∨> = 2 (α_i, α_j) / (α_j, α_j)
    (0..n).map(|i| (0..n).map(|j| gram[i][j] / len[j]).collect()).collect()
}

/// Positive roots by the string-closure algorithm on the Cartan matrix.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut all: BTreeSet<Vec<i64>> = (0..n).map(simple).collect();
    let mut layer: Vec<Vec<i64>> = (0..n).map(simple).collect();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                // <β, α_i^∨>
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                // r = largest k with β - kα_i a root
                let mut r = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= r + 1;
                    if down.iter().all(|&x| x >= 0) && all.contains(&down) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                if r - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

pub fn build_root_datum(lie_type: LieType, n: usize) -> Result<RootDatum> {
    let (edges, len) = dynkin(lie_type, n)?;
    let c = cartan_from_dynkin(&edges, &len);
    let cartan = IntMatrix::from_rows(&c, n);
    let positive_roots = positive_roots(&c);
    let highest_root = positive_roots.last().expect("nonempty").clone();
    let snf = smith_normal_form(&cartan);
    let divisors: Vec<u64> = snf
        .diagonal()
        .iter()
        .map(|x| num_traits::ToPrimitive::to_u64(x).expect("nonnegative"))
        .filter(|&x| x != 1)
        .collect();
    let fund_group_order = divisors.iter().product();
    let l = divisors.iter().copied().fold(1, arith::lcm);
    let bad_primes = highest_root
        .iter()
        .flat_map(|&c| arith::prime_factors(c as u64))
        .collect();
    Ok(RootDatum {
        lie_type,
        rank: n,
        cartan,
        positive_roots,
        highest_root,
        fund_group_order,
        fund_group_divisors: divisors,
        l,
        bad_primes,
    })
}

pub fn is_good_prime(rd: &RootDatum, p: u64) -> bool {
    !rd.bad_primes.contains(&p)
}

/// One row of the exclusion table, with the concrete configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    /// The table row, e.g. `"D_n | q=2, w=2"`.
    pub row: &'static str,
    pub reason: String,
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (table row {})", self.reason, self.row)
    }
}

/// Data attached to `(G, F)`: diagram automorphism, orbits and the
/// regular-embedding invariants.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub datum: RootDatum,
    /// Order of τ: 1, 2 or 3.
    pub w: u32,
    /// τ as a permutation of `0..n` (0-based simple-root indices).
    pub tau: Vec<usize>,
    /// τ-orbits `A_1, .., A_r`, each sorted, ordered by representative.
    pub orbits: Vec<Vec<usize>>,
    /// Representatives `a_i` (smallest index of each orbit).
    pub reps: Vec<usize>,
    pub d: usize,
    pub dbar: usize,
}

/// Shape of each component of `Z(G~^F)` as a function of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterOrder {
    QMinusOne,
    QPlusOne,
    QSquaredMinusOne,
}

impl CenterOrder {
    pub fn eval(self, q: u64) -> u64 {
        match self {
            CenterOrder::QMinusOne => q - 1,
            CenterOrder::QPlusOne => q + 1,
            CenterOrder::QSquaredMinusOne => q * q - 1,
        }
    }
}

impl TwistData {
    pub fn r(&self) -> usize {
        self.orbits.len()
    }

    pub fn n(&self) -> usize {
        self.datum.rank
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn label(&self) -> String {
        if self.w == 1 {
            self.datum.label()
        } else {
            format!("{}{}", self.w, self.datum.label())
        }
    }

    pub fn center_order_kinds(&self) -> Vec<CenterOrder> {
        let rd = &self.datum;
        match (rd.lie_type, self.w) {
            (_, 1) => vec![CenterOrder::QMinusOne; self.d],
            (LieType::A, 2) | (LieType::E, 2) => vec![CenterOrder::QPlusOne],
            (LieType::D, 2) if rd.rank % 2 == 0 => vec![CenterOrder::QSquaredMinusOne],
            (LieType::D, 2) => vec![CenterOrder::QPlusOne],
            (LieType::D, 3) => vec![],
            _ => unreachable!("build_twist rejects other twists"),
        }
    }

    /// Orders `z_j` of the generators of `Z(G~^F)`; length `dbar`.
    pub fn center_orders(&self, q: u64) -> Vec<u64> {
        self.center_order_kinds().into_iter().map(|k| k.eval(q)).collect()
    }

    /// Exclusion table check.
    pub fn excluded(&self, q: u64) -> Option<Exclusion> {
        is_excluded(self, q)
    }
}

pub fn build_twist(rd: &RootDatum, w: u32) -> Result<TwistData> {
    let n = rd.rank;
    let unsupported = || Error::UnsupportedTwist(format!("{} with w={w}", rd.label()));
    let tau: Vec<usize> = match (rd.lie_type, n, w) {
        (_, _, 1) => (0..n).collect(),
        (LieType::A, n, 2) if n >= 2 => (0..n).map(|i| n - 1 - i).collect(),
        (LieType::D, n, 2) if n >= 4 => {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(n - 2, n - 1);
            t
        }
        // Bourbaki D_4: outer nodes 1, 3, 4 cycled.
        (LieType::D, 4, 3) => vec![2, 1, 3, 0],
        (LieType::E, 6, 2) => vec![5, 1, 4, 3, 2, 0],
        _ => return Err(unsupported()),
    };
    let c = rd.cartan_i64();
    for i in 0..n {
        for j in 0..n {
            debug_assert_eq!(c[tau[i]][tau[j]], c[i][j], "τ must preserve the Cartan matrix");
        }
    }
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![];
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = tau[i];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let reps = orbits.iter().map(|o| o[0]).collect();
    let d = rd.d();
    let dbar = match (rd.lie_type, n % 2 == 0, w) {
        (LieType::D, true, 2) => 1,
        (LieType::D, true, 3) => 0,
        _ => d,
    };
    Ok(TwistData { datum: rd.clone(), w, tau, orbits, reps, d, dbar })
}

/// Rows of the exclusion table, plus the triple `B_2(2), F_4(2), G_2(3)`
/// (all of which are covered by the rows).
pub fn is_excluded(twist: &TwistData, q: u64) -> Option<Exclusion> {
    let rd = &twist.datum;
    let name = format!("{}_{}", rd.lie_type, rd.rank);
    let hit = |row: &'static str| {
        Some(Exclusion { row, reason: format!("{name}, q={q}, w={} excluded", twist.w) })
    };
    let ty = rd.lie_type;
    match (ty, q, twist.w) {
        (LieType::D, 2, 2) => hit("D_n | q=2, w=2"),
        (LieType::B | LieType::C, 2, 1) if rd.rank >= 2 => hit("B_n, C_n, D_n, G_2, F_4 | q=2, w=1"),
        (LieType::D | LieType::G | LieType::F, 2, 1) => hit("B_n, C_n, D_n, G_2, F_4 | q=2, w=1"),
        (LieType::G, 3, 1) => hit("G_2 | q=3, w=1"),
        _ => None,
    }
}

/// Every supported `(type, rank)` with rank in `1..=max_rank` (aliases such
/// as `B_1`, `C_1` skipped).
pub fn all_types_up_to(max_rank: usize) -> Vec<(LieType, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push((LieType::A, n));
        if n >= 2 {
            out.push((LieType::B, n));
            out.push((LieType::C, n));
        }
        if n >= 4 {
            out.push((LieType::D, n));
        }
        if (6..=8).contains(&n) {
            out.push((LieType::E, n));
        }
        if n == 4 {
            out.push((LieType::F, 4));
        }
        if n == 2 {
            out.push((LieType::G, 2));
        }
    }
    out
}

/// Supported twists `(type, rank, w)` with `w > 1` and rank `<= max_rank`.
pub fn twisted_types_up_to(max_rank: usize) -> Vec<(LieType, usize, u32)> {
    let mut out = Vec::new();
    for n in 2..=max_rank {
        out.push((LieType::A, n, 2));
        if n >= 4 {
            out.push((LieType::D, n, 2));
        }
        if n == 4 {
            out.push((LieType::D, 4, 3));
        }
        if n == 6 {
            out.push((LieType::E, 6, 2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(t: LieType, n: usize) -> RootDatum {
        build_root_datum(t, n).unwrap()
    }

    #[test]
    fn a1() {
        let a1 = rd(LieType::A, 1);
        assert_eq!(a1.positive_roots.len(), 1);
        assert_eq!(a1.fund_group_order, 2);
        assert_eq!(a1.l, 2);
        assert!(a1.bad_primes.is_empty());
    }

    #[test]
    fn c2() {
        let c2 = rd(LieType::C, 2);
        assert_eq!(c2.cartan_i64(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(c2.positive_roots.len(), 4);
        assert_eq!(c2.highest_root, vec![2, 1]);
        assert_eq!(c2.bad_primes, BTreeSet::from([2]));
    }

    #[test]
    fn e8() {
        let e8 = rd(LieType::E, 8);
        assert_eq!(e8.positive_roots.len(), 120);
        assert_eq!(e8.fund_group_order, 1);
        assert_eq!(e8.bad_primes, BTreeSet::from([2, 3, 5]));
        assert_eq!(*e8.highest_root.iter().max().unwrap(), 6);
    }

    #[test]
    fn classical_counts_and_centers() {
        for n in 1..=8 {
            let a = rd(LieType::A, n);
            assert_eq!(a.positive_roots.len(), n * (n + 1) / 2);
            assert_eq!(a.fund_group_order, n as u64 + 1);
            assert_eq!(a.d(), 1);
            if n >= 2 {
                for t in [LieType::B, LieType::C] {
                    let x = rd(t, n);
                    assert_eq!(x.positive_roots.len(), n * n);
                    assert_eq!(x.fund_group_order, 2);
                }
            }
            if n >= 4 {
                let dn = rd(LieType::D, n);
                assert_eq!(dn.positive_roots.len(), n * (n - 1));
                assert_eq!(dn.fund_group_order, 4);
                assert_eq!(dn.d(), if n % 2 == 0 { 2 } else { 1 });
                assert_eq!(dn.l, if n % 2 == 0 { 2 } else { 4 });
            }
        }
        for (t, n, roots, z) in [
            (LieType::E, 6, 36, 3),
            (LieType::E, 7, 63, 2),
            (LieType::E, 8, 120, 1),
            (LieType::F, 4, 24, 1),
            (LieType::G, 2, 6, 1),
        ] {
            let x = rd(t, n);
            assert_eq!(x.positive_roots.len(), roots, "{t}{n}");
            assert_eq!(x.fund_group_order, z, "{t}{n}");
        }
    }

    #[test]
    fn cartan_shape() {
        for (t, n) in all_types_up_to(8) {
            let x = rd(t, n);
            let c = x.cartan_i64();
            for i in 0..n {
                assert_eq!(c[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(c[i][j] <= 0);
                        assert_eq!(c[i][j] == 0, c[j][i] == 0);
                    }
                }
            }
            assert_eq!(x.cartan.det(), num_bigint::BigInt::from(x.fund_group_order));
        }
    }

    #[test]
    fn bad_primes_by_type() {
        assert!(is_good_prime(&rd(LieType::A, 5), 2));
        assert!(!is_good_prime(&rd(LieType::G, 2), 3));
        assert!(!is_good_prime(&rd(LieType::C, 3), 2));
        assert_eq!(rd(LieType::F, 4).bad_primes, BTreeSet::from([2, 3]));
        assert_eq!(rd(LieType::E, 6).bad_primes, BTreeSet::from([2, 3]));
        assert_eq!(rd(LieType::E, 7).bad_primes, BTreeSet::from([2, 3]));
        assert_eq!(rd(LieType::D, 5).bad_primes, BTreeSet::from([2]));
        assert_eq!(rd(LieType::B, 3).bad_primes, BTreeSet::from([2]));
    }

    #[test]
    fn invalid_pairs() {
        assert!(build_root_datum(LieType::E, 9).is_err());
        assert!(build_root_datum(LieType::D, 3).is_err());
        assert!(build_root_datum(LieType::A, 0).is_err());
        assert!(build_root_datum(LieType::G, 3).is_err());
    }

    #[test]
    fn twists() {
        let a3 = build_twist(&rd(LieType::A, 3), 2).unwrap();
        assert_eq!(a3.tau, vec![2, 1, 0]);
        assert_eq!(a3.orbits, vec![vec![0, 2], vec![1]]);
        assert_eq!(a3.r(), 2);
        let d4 = build_twist(&rd(LieType::D, 4), 3).unwrap();
        assert_eq!(d4.dbar, 0);
        assert_eq!(d4.orbits, vec![vec![0, 2, 3], vec![1]]);
        let c2 = build_twist(&rd(LieType::C, 2), 1).unwrap();
        assert_eq!((c2.r(), c2.d, c2.dbar), (2, 1, 1));
        let d6 = build_twist(&rd(LieType::D, 6), 2).unwrap();
        assert_eq!(d6.dbar, 1);
        assert_eq!(d6.center_orders(3), vec![8]);
        assert!(build_twist(&rd(LieType::C, 3), 2).is_err());
        assert!(build_twist(&rd(LieType::A, 1), 2).is_err());
    }

    #[test]
    fn twist_invariants() {
        let mut all: Vec<(LieType, usize, u32)> =
            all_types_up_to(8).into_iter().map(|(t, n)| (t, n, 1)).collect();
        all.extend(twisted_types_up_to(8));
        for (t, n, w) in all {
            let tw = build_twist(&rd(t, n), w).unwrap();
            let c = tw.datum.cartan_i64();
            let mut power: Vec<usize> = (0..n).collect();
            for _ in 0..w {
                power = power.iter().map(|&i| tw.tau[i]).collect();
            }
            assert_eq!(power, (0..n).collect::<Vec<_>>());
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(c[tw.tau[i]][tw.tau[j]], c[i][j]);
                }
            }
            assert_eq!(tw.orbit_sizes().iter().sum::<usize>(), n);
            assert!(tw.orbit_sizes().iter().all(|&s| w as usize % s == 0));
            assert_eq!(tw.center_orders(5).len(), tw.dbar);
            if w == 1 {
                assert_eq!(tw.dbar, tw.d);
            }
        }
    }

    #[test]
    fn exclusions() {
        let g2 = build_twist(&rd(LieType::G, 2), 1).unwrap();
        let ex = is_excluded(&g2, 3).unwrap();
        assert_eq!(ex.reason, "G_2, q=3, w=1 excluded");
        assert_eq!(ex.row, "G_2 | q=3, w=1");
        let d5 = build_twist(&rd(LieType::D, 5), 2).unwrap();
        assert_eq!(is_excluded(&d5, 2).unwrap().row, "D_n | q=2, w=2");
        let a2 = build_twist(&rd(LieType::A, 2), 1).unwrap();
        assert!(is_excluded(&a2, 2).is_none());
        for (t, n) in [(LieType::B, 2), (LieType::F, 4)] {
            assert!(is_excluded(&build_twist(&rd(t, n), 1).unwrap(), 2).is_some());
        }
        assert!(is_excluded(&g2, 4).is_none());
    }

    #[test]
    fn d_p_drops_p_parts() {
        let a2 = rd(LieType::A, 2);
        assert_eq!(a2.d_p(3), 0);
        assert_eq!(a2.d_p(2), 1);
        let d4 = rd(LieType::D, 4);
        assert_eq!(d4.d_p(2), 0);
        assert_eq!(d4.d_p(3), 2);
    }
}
