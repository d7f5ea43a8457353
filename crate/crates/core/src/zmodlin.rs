//! Integer linear algebra: Smith normal form over `Z` and the derived
//! computations modulo `N` (solvability, kernels, cokernels, torsion).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// From row vectors; every row must have length `cols`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        self[(i, j)].to_i64().expect("entry fits in i64")
    }

    pub fn to_rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get_i64(i, j)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn select_rows(&self, which: &[usize]) -> Self {
        let mut m = Self::zeros(which.len(), self.cols);
        for (r, &i) in which.iter().enumerate() {
            for j in 0..self.cols {
                m[(r, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += t;
                }
            }
        }
        m
    }

    pub fn mul_vec_mod(&self, x: &[i64], n: i64) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        let nb = BigInt::from(n);
        (0..self.rows)
            .map(|i| {
                let s: BigInt = (0..self.cols).map(|j| &self[(i, j)] * x[j]).sum();
                s.mod_floor(&nb).to_i64().unwrap()
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free Gaussian elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = c * &self[(src, j)];
            self[(dst, j)] += t;
        }
    }

    /// `col[dst] += c * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = c * &self[(i, src)];
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, its diagonal a
/// divisibility chain of nonnegative integers. Inverses of `U` and `V` are
/// tracked alongside.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    // Row op E on the left: a <- E a, u <- E u, u_inv <- u_inv E^{-1}.
    // Column op E on the right: a <- a E, v <- v E, v_inv <- E^{-1} v_inv.
    'outer: for t in 0..r.min(c) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
            let Some((pi, pj)) = pivot else { break 'outer };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut dirty = false;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                let nq = -&q;
                a.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                u_inv.add_col(t, i, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                let nq = -&q;
                a.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                v_inv.add_row(t, j, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column of the pivot are clear; enforce divisibility.
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            if let Some((i, _)) = bad {
                let one = BigInt::one();
                a.add_row(t, i, &one);
                u.add_row(t, i, &one);
                u_inv.add_col(i, t, &(-&one));
                continue;
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
                u_inv.negate_col(t);
            }
            break;
        }
    }
    Snf { u, u_inv, d: a, v, v_inv }
}

/// Finite abelian group `Z/d_1 x .. x Z/d_t` with `d_1 | d_2 | .. | d_t`,
/// all `d_i > 1`. The trivial group has no divisors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroupShape {
    divisors: Vec<u64>,
}

impl AbelianGroupShape {
    pub fn new(mut divisors: Vec<u64>) -> Self {
        divisors.retain(|&d| d != 1);
        assert!(divisors.iter().all(|&d| d > 0), "divisors must be positive");
        divisors.sort_unstable();
        for w in divisors.windows(2) {
            assert!(w[1] % w[0] == 0, "not a divisibility chain: {divisors:?}");
        }
        AbelianGroupShape { divisors }
    }

    pub fn trivial() -> Self {
        AbelianGroupShape { divisors: Vec::new() }
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    /// Number of cyclic factors of order exactly `n`.
    pub fn rank_of(&self, n: u64) -> usize {
        self.divisors.iter().filter(|&&d| d == n).count()
    }
}

impl fmt::Display for AbelianGroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn reduce(x: &BigInt, n: i64) -> i64 {
    x.mod_floor(&BigInt::from(n)).to_i64().unwrap()
}

fn diag_mod_gcd(snf: &Snf, i: usize, n: i64) -> i64 {
    let d = reduce(&snf.d[(i, i)], n);
    arith::gcd(d as u64, n as u64) as i64
}

/// Some `x` with `M x = b (mod n)`, or `None`. Entries of `x` lie in `[0, n)`.
pub fn solve_mod(m: &IntMatrix, b: &[i64], n: i64) -> Option<Vec<i64>> {
    assert!(n >= 1, "modulus must be positive");
    assert_eq!(b.len(), m.rows, "right-hand side has wrong length");
    let snf = smith_normal_form(m);
    let rhs = snf.u.mul_vec_mod(b, n);
    let k = m.rows.min(m.cols);
    let mut y = vec![0i64; m.cols];
    for (i, &ci) in rhs.iter().enumerate() {
        if i < k {
            let di = reduce(&snf.d[(i, i)], n);
            let g = arith::gcd(di as u64, n as u64) as i64;
            if ci % g != 0 {
                return None;
            }
            let ng = n / g;
            if ng > 1 {
                let inv = arith::inv_mod(di / g, ng).expect("coprime after dividing by gcd");
                y[i] = ((ci / g) % ng * inv).rem_euclid(ng);
            }
        } else if ci != 0 {
            return None;
        }
    }
    Some(snf.v.mul_vec_mod(&y, n))
}

/// Elementary divisors of `{x in (Z/n)^cols : M x = 0 (mod n)}`.
pub fn kernel_shape(m: &IntMatrix, n: i64) -> AbelianGroupShape {
    assert!(n >= 1, "modulus must be positive");
    let snf = smith_normal_form(m);
    let k = m.rows.min(m.cols);
    let mut divisors: Vec<u64> = (0..k).map(|i| diag_mod_gcd(&snf, i, n) as u64).collect();
    divisors.extend(std::iter::repeat(n as u64).take(m.cols - k));
    AbelianGroupShape::new(divisors)
}

/// Generators of the kernel of `M` modulo `n`, as vectors in `[0, n)^cols`.
pub fn kernel_generators(m: &IntMatrix, n: i64) -> Vec<Vec<i64>> {
    let snf = smith_normal_form(m);
    let k = m.rows.min(m.cols);
    (0..m.cols)
        .filter_map(|i| {
            let scale = if i < k { n / diag_mod_gcd(&snf, i, n) } else { 1 };
            if scale == n {
                return None;
            }
            let col: Vec<i64> = (0..m.cols).map(|r| reduce(&(&snf.v[(r, i)] * scale), n)).collect();
            Some(col)
        })
        .collect()
}

/// The cokernel `(Z/n)^rows / M (Z/n)^cols`, with canonical coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    u: IntMatrix,
    u_inv: IntMatrix,
    moduli: Vec<i64>,
    n: i64,
}

impl Cokernel {
    pub fn new(m: &IntMatrix, n: i64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        let snf = smith_normal_form(m);
        let k = m.rows.min(m.cols);
        let moduli = (0..m.rows).map(|i| if i < k { diag_mod_gcd(&snf, i, n) } else { n }).collect();
        Cokernel { u: snf.u, u_inv: snf.u_inv, moduli, n }
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&x| x as u64).product()
    }

    pub fn shape(&self) -> AbelianGroupShape {
        AbelianGroupShape::new(self.moduli.iter().map(|&x| x as u64).collect())
    }

    /// Canonical key of the class of `v`; equal keys iff `v - w` lies in the image.
    pub fn key(&self, v: &[i64]) -> Vec<i64> {
        self.u.mul_vec_mod(v, self.n).iter().zip(&self.moduli).map(|(x, m)| x % m).collect()
    }

    /// One representative per class, in `[0, n)^rows`.
    pub fn representatives(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut z = vec![0i64; self.moduli.len()];
        loop {
            out.push(self.u_inv.mul_vec_mod(&z, self.n));
            let mut i = 0;
            loop {
                if i == z.len() {
                    return out;
                }
                z[i] += 1;
                if z[i] < self.moduli[i] {
                    break;
                }
                z[i] = 0;
                i += 1;
            }
        }
    }
}

/// `|image of M mod n|`.
pub fn image_order(m: &IntMatrix, n: i64) -> u64 {
    (n as u64).pow(m.rows as u32) / Cokernel::new(m, n).order()
}

/// `prod_i gcd(d_i, t)` with `gcd(d, 0) = d`: the number of elements of the
/// group killed by `t`, equivalently the number of characters with `λ^t = 1`.
pub fn torsion_count(shape: &AbelianGroupShape, t: u64) -> u64 {
    shape.divisors().iter().map(|&d| arith::gcd(d, t)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols)
    }

    fn check_snf(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    fn brute_kernel(m: &IntMatrix, n: i64) -> u64 {
        all_vectors(m.cols(), n).filter(|x| m.mul_vec_mod(x, n).iter().all(|&y| y == 0)).count() as u64
    }

    fn all_vectors(len: usize, n: i64) -> impl Iterator<Item = Vec<i64>> {
        let total = (n as u64).pow(len as u32);
        (0..total).map(move |mut idx| {
            (0..len)
                .map(|_| {
                    let v = (idx % n as u64) as i64;
                    idx /= n as u64;
                    v
                })
                .collect()
        })
    }

    #[test]
    fn snf_examples() {
        let s = check_snf(&IntMatrix::identity(2));
        assert_eq!(s.diagonal(), vec![BigInt::one(), BigInt::one()]);
        let c2 = mat(&[&[2, -1], &[-2, 2]]);
        let s = check_snf(&c2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(c2.det(), BigInt::from(2));
        let s = check_snf(&IntMatrix::zeros(2, 3));
        assert!(s.diagonal().iter().all(|d| d.is_zero()));
    }

    #[test]
    fn solve_mod_examples() {
        assert_eq!(solve_mod(&mat(&[&[2]]), &[1], 4), None);
        assert_eq!(solve_mod(&mat(&[&[2]]), &[2], 4), Some(vec![1]));
        let m = mat(&[&[2, 3], &[4, 0]]);
        assert_eq!(solve_mod(&m, &[1, 4], 6), None);
        let b = [5, 4];
        let x = solve_mod(&m, &b, 6).expect("consistent");
        assert_eq!(m.mul_vec_mod(&x, 6), b.to_vec());
        let brute = all_vectors(2, 6).any(|x| m.mul_vec_mod(&x, 6) == b.to_vec());
        assert!(brute);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_shape(&mat(&[&[2]]), 4), AbelianGroupShape::new(vec![2]));
        assert_eq!(brute_kernel(&mat(&[&[2]]), 4), 2);
        let empty = IntMatrix::zeros(0, 3);
        assert_eq!(kernel_shape(&empty, 5), AbelianGroupShape::new(vec![5, 5, 5]));
        assert_eq!(kernel_shape(&IntMatrix::identity(3), 7), AbelianGroupShape::trivial());
    }

    #[test]
    fn torsion_examples() {
        let z2 = AbelianGroupShape::new(vec![2]);
        for (p, e) in [(3u64, 1u32), (5, 2), (7, 3)] {
            assert_eq!(torsion_count(&z2, p.pow(e) - 1), 2);
        }
        let s = AbelianGroupShape::new(vec![2, 4, 12]);
        assert_eq!(torsion_count(&s, 0), s.order());
        assert_eq!(torsion_count(&AbelianGroupShape::new(vec![4]), 2), 2);
    }

    #[test]
    fn cokernel_representatives_are_distinct_and_complete() {
        let m = mat(&[&[2, -1], &[-2, 2]]);
        let ck = Cokernel::new(&m, 4);
        let reps = ck.representatives();
        assert_eq!(reps.len() as u64, ck.order());
        let mut keys: Vec<_> = reps.iter().map(|r| ck.key(r)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), reps.len());
        assert_eq!(image_order(&m, 4) * ck.order(), 16);
    }

    fn small_matrix() -> impl Strategy<Value = (IntMatrix, i64)> {
        (0usize..=3, 1usize..=3, 1i64..=8).prop_flat_map(|(r, c, n)| {
            prop::collection::vec(-4i64..=4, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c.max(1)).map(|ch| ch.to_vec()).collect();
                (IntMatrix::from_rows(&rows[..r.min(rows.len())], c), n)
            })
        })
    }

    proptest! {
        #[test]
        fn snf_invariants((m, _n) in small_matrix()) {
            check_snf(&m);
        }

        #[test]
        fn kernel_and_solvability_match_brute_force((m, n) in small_matrix(), b in prop::collection::vec(0i64..8, 3)) {
            let ker = kernel_shape(&m, n);
            prop_assert_eq!(ker.order(), brute_kernel(&m, n));
            let gens = kernel_generators(&m, n);
            for g in &gens {
                prop_assert!(m.mul_vec_mod(g, n).iter().all(|&y| y == 0));
            }
            let rhs: Vec<i64> = b.iter().take(m.rows()).map(|x| x % n).collect();
            if rhs.len() == m.rows() {
                let brute = all_vectors(m.cols(), n).any(|x| m.mul_vec_mod(&x, n) == rhs);
                let got = solve_mod(&m, &rhs, n);
                prop_assert_eq!(got.is_some(), brute);
                if let Some(x) = got {
                    prop_assert_eq!(m.mul_vec_mod(&x, n), rhs);
                }
            }
            let ck = Cokernel::new(&m, n);
            prop_assert_eq!(image_order(&m, n) * ker.order(), (n as u64).pow(m.cols() as u32));
            prop_assert_eq!(ck.order() * image_order(&m, n), (n as u64).pow(m.rows() as u32));
        }

        #[test]
        fn kernel_generators_span((m, n) in small_matrix()) {
            // The subgroup generated by the generators has the kernel's order.
            let gens = kernel_generators(&m, n);
            let mut seen = std::collections::BTreeSet::new();
            seen.insert(vec![0i64; m.cols()]);
            let mut frontier: Vec<Vec<i64>> = vec![vec![0; m.cols()]];
            while let Some(v) = frontier.pop() {
                for g in &gens {
                    let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b) % n).collect();
                    if seen.insert(w.clone()) {
                        frontier.push(w);
                    }
                }
            }
            prop_assert_eq!(seen.len() as u64, kernel_shape(&m, n).order());
        }

        #[test]
        fn torsion_matches_brute_force(ds in prop::collection::vec(1u64..=4, 0..=3), t in 0u64..12) {
            // Build a chain d1 | d1 d2 | d1 d2 d3, capped at order 64.
            let mut chain = Vec::new();
            let mut acc = 1;
            for d in ds { acc *= d; chain.push(acc); }
            let shape = AbelianGroupShape::new(chain.clone());
            prop_assume!(shape.order() <= 64);
            let divs = shape.divisors().to_vec();
            let total = shape.order();
            let mut count = 0;
            for mut idx in 0..total {
                let mut ok = true;
                for &d in &divs {
                    let x = idx % d;
                    idx /= d;
                    if (x * t) % d != 0 { ok = false; }
                }
                if ok { count += 1; }
            }
            prop_assert_eq!(torsion_count(&shape, t), count);
        }
    }
}
