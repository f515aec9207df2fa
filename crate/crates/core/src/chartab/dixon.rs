//! Dixon–Schneider: common eigenvectors of the class matrices over `F_l`,
//! lifted to exact values through the eigenvalue multiplicities on cyclic
//! subgroups.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::cyclotomic::CyclotomicRing;
use super::modular::{charpoly, nullspace, prime_one_mod, roots, rref, ModPrime};
use super::CharacterTable;
use crate::conj::{ClassSummary, EnumeratedClasses};
use crate::ffield::lcm;
use crate::gsp4::Gsp4;
use crate::{Error, Result};

const PRIME_LIMIT: u64 = 1 << 31;

fn table_error(msg: alloc::string::String) -> Error {
    Error::CharacterTable(msg)
}

/// Class matrix `M_j` applied to a column vector: `(M_j v)_i = sum_k a_{jik} v_k`.
fn apply(fp: ModPrime, a: &[u64], r: usize, j: usize, v: &[u64]) -> Vec<u64> {
    (0..r)
        .map(|i| {
            let row = &a[(j * r + i) * r..(j * r + i + 1) * r];
            row.iter().zip(v).fold(0, |acc, (&x, &y)| fp.add(acc, fp.mul(x, y)))
        })
        .collect()
}

/// Splits the row space `basis` (in reduced echelon form) into eigenspaces of `M_j`.
fn split(fp: ModPrime, a: &[u64], r: usize, j: usize, basis: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let pivots: Vec<usize> = basis.iter().map(|b| b.iter().position(|&x| x != 0).unwrap()).collect();
    // restricted matrix, A[t][s] = coordinate t of M_j b_s
    let mut restricted = vec![vec![0u64; d]; d];
    for (s, b) in basis.iter().enumerate() {
        let img = apply(fp, a, r, j, b);
        for (t, &p) in pivots.iter().enumerate() {
            restricted[t][s] = img[p];
        }
    }
    let poly = charpoly(fp, &restricted);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots(fp, &poly) {
        let mut shifted = restricted.clone();
        for (t, row) in shifted.iter_mut().enumerate() {
            row[t] = fp.sub(row[t], lambda);
        }
        let coords = nullspace(fp, &shifted);
        let mut vectors: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; r];
                for (s, &cs) in c.iter().enumerate() {
                    if cs != 0 {
                        for (vk, &bk) in v.iter_mut().zip(&basis[s]) {
                            *vk = fp.add(*vk, fp.mul(cs, bk));
                        }
                    }
                }
                v
            })
            .collect();
        rref(fp, &mut vectors);
        total += vectors.len();
        out.push(vectors);
    }
    if total != d {
        return Err(table_error(format!("class matrix {j} is not diagonalizable over F_{}", fp.l)));
    }
    Ok(out)
}

/// Character table of an enumerated group from its classes.
pub fn dixon_schneider(g: &Gsp4, classes: &EnumeratedClasses) -> Result<CharacterTable> {
    let r = classes.len();
    let order = classes.group_order();
    let sizes = classes.sizes();
    let orders = classes.orders();
    let e = orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64));
    let bound = 2 * order.isqrt() + 1;
    let l = prime_one_mod(e, bound, order, PRIME_LIMIT).ok_or(Error::NoPrime(PRIME_LIMIT))?;
    let fp = ModPrime::new(l);

    let a: Vec<u64> = classes.class_constants(g).iter().map(|&x| x % l).collect();

    let mut identity = vec![vec![0u64; r]; r];
    for (i, row) in identity.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut spaces = vec![identity];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(fp, &a, r, j, &s)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(table_error(format!(
            "common eigenspaces did not separate ({} found for {r} classes)",
            spaces.len()
        )));
    }

    let inverse = classes.power_map(g, -1);
    // power classes: class of rep_k^t for t < order_k
    let power_classes: Vec<Vec<usize>> = classes
        .representatives()
        .iter()
        .zip(orders)
        .map(|(&code, &o)| {
            let x = g.unpack_element(code);
            let mut cur = g.identity();
            (0..o)
                .map(|_| {
                    let c = classes.class_of_packed(g.pack(&cur.entries)).unwrap();
                    cur = g.mul(&cur, &x);
                    c
                })
                .collect()
        })
        .collect();

    let zeta = fp.pow(fp.primitive_root(), (l - 1) / e);
    let ring = CyclotomicRing::new(e as u32);
    let size_inv: Vec<u64> = sizes.iter().map(|&s| fp.inv(s % l)).collect();
    let mut rows = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(table_error("eigenvector vanishes at the identity class".into()));
        }
        let c = fp.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| fp.mul(x, c)).collect();
        let s = (0..r).fold(0, |acc, k| fp.add(acc, fp.mul(fp.mul(w[k], w[inverse[k]]), size_inv[k])));
        let target = fp.mul(order % l, fp.inv(s));
        let degree = (1..=order.isqrt())
            .find(|&d| fp.mul(d, d) == target && order.is_multiple_of(d))
            .ok_or_else(|| table_error("no admissible degree".into()))?;
        let chi_mod: Vec<u64> = (0..r).map(|k| fp.mul(fp.mul(w[k], degree), size_inv[k])).collect();
        let mut values = Vec::with_capacity(r);
        let mut terms = Vec::with_capacity(r);
        for k in 0..r {
            let o = orders[k] as u64;
            let y = fp.pow(zeta, e / o);
            let o_inv = fp.inv(o % l);
            let mut w_ring = vec![0i64; e as usize];
            let mut spectrum = Vec::new();
            let mut count = 0u64;
            for i in 0..o {
                let yi = fp.inv(fp.pow(y, i));
                let mut sum = 0;
                let mut ypow = 1;
                for t in 0..o as usize {
                    sum = fp.add(sum, fp.mul(chi_mod[power_classes[k][t]], ypow));
                    ypow = fp.mul(ypow, yi);
                }
                let n_i = fp.mul(sum, o_inv);
                if n_i > degree {
                    return Err(table_error(format!("eigenvalue multiplicity {n_i} exceeds degree {degree}")));
                }
                if n_i > 0 {
                    let exp = (i * (e / o)) as usize;
                    w_ring[exp] += n_i as i64;
                    spectrum.push((exp as u32, n_i as i64));
                    count += n_i;
                }
            }
            if count != degree {
                return Err(table_error(format!("multiplicities sum to {count}, not {degree}")));
            }
            values.push(ring.from_group_ring(&w_ring));
            terms.push(spectrum);
        }
        rows.push((degree, values, terms));
    }
    let summary = ClassSummary {
        representatives: classes.representatives().to_vec(),
        sizes: sizes.to_vec(),
        orders: orders.to_vec(),
    };
    CharacterTable::assemble(e as u32, l, order, summary, inverse, rows)
}
