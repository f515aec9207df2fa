//! Linear algebra over a prime field `F_l` with `l < 2^32`.

use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPrime {
    pub l: u64,
}

impl ModPrime {
    pub fn new(l: u64) -> Self {
        debug_assert!(l < (1 << 32));
        ModPrime { l }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.l {
            s - self.l
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.l - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.l;
        a %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.l), "inverse of zero mod {}", self.l);
        self.pow(a, self.l - 2)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.l as i64) as u64
    }

    /// Smallest generator of `F_l^x`.
    pub fn primitive_root(self) -> u64 {
        let m = self.l - 1;
        let factors = prime_factors(m);
        (2..self.l).find(|&g| factors.iter().all(|&f| self.pow(g, m / f) != 1)).unwrap_or(1)
    }
}

pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Smallest prime `l` with `l = 1 (mod e)`, `l > bound` and `l` not dividing `avoid`.
pub fn prime_one_mod(e: u64, bound: u64, avoid: u64, limit: u64) -> Option<u64> {
    let mut l = (bound / e + 1) * e + 1;
    while l < limit {
        if l > bound && l < (1 << 32) && is_prime(l as u32) && !avoid.is_multiple_of(l) {
            return Some(l);
        }
        l += e;
    }
    None
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref(f: ModPrime, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for k in 0..ncols {
                    let t = f.mul(factor, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : A v = 0}` for a square matrix given by rows.
pub fn nullspace(f: ModPrime, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut rows = a.to_vec();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, rows[r][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)`, constant term first, via
/// reduction to upper Hessenberg form.
pub fn charpoly(f: ModPrime, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = f.inv(h[m][m - 1]);
        for i in m + 1..n {
            let u = f.mul(h[i][m - 1], inv);
            if u == 0 {
                continue;
            }
            for k in 0..n {
                let t = f.mul(u, h[m][k]);
                h[i][k] = f.sub(h[i][k], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[m] = f.add(row[m], t);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut pk = vec![0u64; k + 1];
        for (i, &c) in prev.iter().enumerate() {
            pk[i + 1] = f.add(pk[i + 1], c);
            pk[i] = f.sub(pk[i], f.mul(h[k - 1][k - 1], c));
        }
        let mut t = 1u64;
        for i in 1..k {
            t = f.mul(t, h[k - i][k - i - 1]);
            let coef = f.mul(t, h[k - i - 1][k - 1]);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[k - i - 1].iter().enumerate() {
                pk[d] = f.sub(pk[d], f.mul(coef, c));
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// All roots in `F_l` of a polynomial, by exhaustive evaluation.
pub fn roots(f: ModPrime, poly: &[u64]) -> Vec<u64> {
    (0..f.l).filter(|&x| poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0).collect()
}

pub fn mat_vec(f: ModPrime, a: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    a.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion_matrix() {
        let f = ModPrime::new(101);
        // companion matrix of x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let a = vec![vec![0, 0, 6], vec![1, 0, f.from_i64(-11)], vec![0, 1, 6]];
        let p = charpoly(f, &a);
        assert_eq!(p, vec![f.from_i64(-6), 11, f.from_i64(-6), 1]);
        assert_eq!(roots(f, &p), vec![1, 2, 3]);
    }

    #[test]
    fn charpoly_agrees_with_brute_force_determinant() {
        let f = ModPrime::new(13);
        let a = vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8], vec![9, 10, 11, 12], vec![1, 0, 2, 5]];
        let p = charpoly(f, &a);
        for x in 0..13u64 {
            let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&c| f.sub(0, c)).collect()).collect();
            for i in 0..4 {
                m[i][i] = f.add(m[i][i], x);
            }
            let det = det_by_permutations(f, &m);
            let val = p.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
            assert_eq!(det, val);
        }
    }

    fn det_by_permutations(f: ModPrime, m: &[Vec<u64>]) -> u64 {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0;
        loop {
            let mut sign = 1i64;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        sign = -sign;
                    }
                }
            }
            let prod = (0..n).fold(1, |acc, i| f.mul(acc, m[i][perm[i]]));
            total = if sign > 0 { f.add(total, prod) } else { f.sub(total, prod) };
            // next permutation
            let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        total
    }

    #[test]
    fn nullspace_dimension() {
        let f = ModPrime::new(7);
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let ns = nullspace(f, &a);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(f, &a, &ns[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn primes_congruent_to_one() {
        assert_eq!(prime_one_mod(60, 53, 720, 1 << 20), Some(61));
        let l = prime_one_mod(720, 644, 103_680, 1 << 20).unwrap();
        assert_eq!(l % 720, 1);
        let f = ModPrime::new(l);
        let g = f.primitive_root();
        assert_eq!(f.pow(g, l - 1), 1);
    }
}
