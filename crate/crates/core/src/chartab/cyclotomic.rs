//! Exact elements of `Z[zeta_n]` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, AddAssign, Neg, Sub};

use crate::ffield::gcd;

/// `sum c_k zeta_n^k`, reduced modulo the `n`-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Cyclotomic { n, coeffs: vec![0; euler_phi(n) as usize] }
    }

    pub fn integer(n: u32, v: i64) -> Self {
        let mut z = Cyclotomic::zero(n);
        z.coeffs[0] = v;
        z
    }

    /// Builds from already reduced coefficients; the length must be `phi(n)`.
    pub fn from_coeffs(n: u32, coeffs: Vec<i64>) -> Option<Self> {
        (coeffs.len() == euler_phi(n) as usize).then_some(Cyclotomic { n, coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The value as an integer, if it is rational.
    pub fn as_integer(&self) -> Option<i64> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|&c| c * k).collect() }
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.n, other.n, "cyclotomic conductors differ");
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_ring(rhs);
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.same_ring(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_ring(rhs);
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

/// Total order used to sort character table rows: conductor, then
/// coefficients lexicographically from the constant term.
impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Arithmetic context for `Z[zeta_n]`: the cyclotomic polynomial and the
/// reduced powers of `zeta_n`.
#[derive(Clone, Debug)]
pub struct CyclotomicRing {
    n: u32,
    phi: usize,
    /// Non-leading terms `(degree, coefficient)` of `Phi_n`.
    tail: Vec<(usize, i64)>,
}

impl CyclotomicRing {
    pub fn new(n: u32) -> Self {
        assert!(n > 0);
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let tail = poly[..phi].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        CyclotomicRing { n, phi, tail }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(self.n)
    }

    pub fn integer(&self, v: i64) -> Cyclotomic {
        Cyclotomic::integer(self.n, v)
    }

    /// Reduces a polynomial of any degree in `zeta` modulo `Phi_n`.
    fn reduce_poly(&self, mut p: Vec<i64>) -> Cyclotomic {
        for d in (self.phi..p.len()).rev() {
            let c = p[d];
            if c != 0 {
                p[d] = 0;
                let base = d - self.phi;
                for &(t, ct) in &self.tail {
                    p[base + t] -= c * ct;
                }
            }
        }
        p.resize(self.phi, 0);
        Cyclotomic { n: self.n, coeffs: p }
    }

    /// `sum_k w[k] zeta_n^k` for a vector indexed by exponents mod `n`.
    pub fn from_group_ring(&self, w: &[i64]) -> Cyclotomic {
        assert_eq!(w.len(), self.n as usize);
        self.reduce_poly(w.to_vec())
    }

    /// `zeta_n^k`.
    pub fn root(&self, k: i64) -> Cyclotomic {
        let k = k.rem_euclid(self.n as i64) as usize;
        let mut p = vec![0i64; k + 1];
        p[k] = 1;
        self.reduce_poly(p)
    }

    pub fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        assert!(a.n == self.n && b.n == self.n, "cyclotomic conductors differ");
        let mut p = vec![0i64; 2 * self.phi];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    p[i + j] += x * y;
                }
            }
        }
        self.reduce_poly(p)
    }

    /// `a * zeta_n^k`.
    pub fn mul_root(&self, a: &Cyclotomic, k: i64) -> Cyclotomic {
        let mut w = vec![0i64; self.n as usize];
        accumulate_rotated(&mut w, a, k);
        self.from_group_ring(&w)
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self, a: &Cyclotomic) -> Cyclotomic {
        assert_eq!(a.n, self.n);
        let n = self.n as usize;
        let mut w = vec![0i64; n];
        for (k, &c) in a.coeffs.iter().enumerate() {
            w[(n - k) % n] += c;
        }
        self.from_group_ring(&w)
    }

    /// Re-expresses an element of `Z[zeta_m]`, `m | n`, inside `Z[zeta_n]`.
    pub fn lift(&self, a: &Cyclotomic) -> Cyclotomic {
        assert!(self.n.is_multiple_of(a.n), "Q(zeta_{}) is not a subfield of Q(zeta_{})", a.n, self.n);
        let step = (self.n / a.n) as usize;
        let mut w = vec![0i64; self.n as usize];
        for (k, &c) in a.coeffs.iter().enumerate() {
            w[k * step] += c;
        }
        self.from_group_ring(&w)
    }
}

/// Adds `a * zeta_n^shift` into a group-ring accumulator of length `n`.
pub fn accumulate_rotated(acc: &mut [i64], a: &Cyclotomic, shift: i64) {
    accumulate_rotated_scaled(acc, a, shift, 1)
}

pub fn accumulate_rotated_scaled(acc: &mut [i64], a: &Cyclotomic, shift: i64, scale: i64) {
    let n = acc.len();
    debug_assert_eq!(n as u32, a.n);
    let s = shift.rem_euclid(n as i64) as usize;
    for (k, &c) in a.coeffs.iter().enumerate() {
        if c != 0 {
            let idx = k + s;
            let idx = if idx >= n { idx - n } else { idx };
            acc[idx] += c * scale;
        }
    }
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if m > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coefficients of `Phi_n`, constant term first, via
/// `Phi_n = prod_{d | n} (x^d - 1)^mu(n/d)`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            // multiply by x^d - 1
            let d = d as usize;
            let mut out = vec![0i64; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                out[i + d] += c;
                out[i] -= c;
            }
            poly = out;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // exact division by x^d - 1
            let d = d as usize;
            let deg = poly.len() - 1;
            let mut quot = vec![0i64; deg + 1 - d];
            let mut rem = poly.clone();
            for i in (d..=deg).rev() {
                let c = rem[i];
                quot[i - d] = c;
                rem[i] -= c;
                rem[i - d] += c;
            }
            debug_assert!(rem.iter().all(|&c| c == 0));
            poly = quot;
        }
    }
    if poly[poly.len() - 1] < 0 {
        poly.iter_mut().for_each(|c| *c = -*c);
    }
    poly
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    (a as u64 / gcd(a as u64, b as u64) * b as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(30), vec![1, 1, 0, -1, -1, -1, 0, 1, 1]);
        assert_eq!(cyclotomic_polynomial(720).len() as u32 - 1, euler_phi(720));
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [2u32, 3, 4, 6, 8, 12, 15, 24, 80, 720] {
            let r = CyclotomicRing::new(n);
            let mut acc = r.zero();
            for k in 0..n {
                acc += &r.root(k as i64);
            }
            assert!(acc.is_zero(), "n = {n}");
            assert_eq!(r.root(n as i64), r.integer(1));
        }
    }

    #[test]
    fn multiplication_matches_exponents() {
        let r = CyclotomicRing::new(24);
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(r.mul(&r.root(a), &r.root(b)), r.root(a + b));
            }
            assert_eq!(r.conj(&r.root(a)), r.root(-a));
            assert_eq!(r.mul_root(&r.root(a), 5), r.root(a + 5));
        }
    }

    #[test]
    fn lift_between_conductors() {
        let small = CyclotomicRing::new(3);
        let big = CyclotomicRing::new(12);
        let z = small.root(1);
        assert_eq!(big.lift(&z), big.root(4));
        // 1 + zeta_3 + zeta_3^2 = 0 after lifting too
        let s = &(&small.root(0) + &small.root(1)) + &small.root(2);
        assert!(big.lift(&s).is_zero());
    }

    #[test]
    fn norms_of_roots() {
        let r = CyclotomicRing::new(20);
        for k in 0..20 {
            let z = r.root(k);
            assert_eq!(r.mul(&z, &r.conj(&z)).as_integer(), Some(1));
        }
    }
}
