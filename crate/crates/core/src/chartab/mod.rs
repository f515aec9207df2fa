//! Exact complex character tables.

pub mod cyclotomic;
mod dixon;
pub mod modular;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::conj::{ClassData, ClassSummary};
use crate::ffield::{lcm, ComplexRoot, Elem, Field};
use crate::gsp4::Gsp4;
use crate::{Error, Result};
use cyclotomic::{Cyclotomic, CyclotomicRing};

pub use dixon::dixon_schneider;

/// Sparse group-ring form `sum c zeta_e^k` of a value, as `(k, c)` pairs.
type Terms = Vec<(u32, i64)>;

/// Irreducible characters (rows) evaluated on conjugacy classes (columns).
///
/// Rows are sorted by degree, then the trivial character first, then by the
/// value sequence in the order of [`Cyclotomic`]. Even-`q` tables built by
/// [`CharacterTable::even_q_assembly`] instead list `chi (x) lambda_m` with
/// `chi` in `Sp` order and `m` the index of the character of `Z`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    ring: CyclotomicRing,
    prime: u64,
    group_order: u64,
    classes: ClassSummary,
    inverse: Vec<usize>,
    degrees: Vec<u64>,
    values: Vec<Vec<Cyclotomic>>,
    terms: Vec<Vec<Terms>>,
}

fn terms_of(v: &Cyclotomic) -> Terms {
    v.coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k as u32, c)).collect()
}

impl CharacterTable {
    pub(crate) fn assemble(
        conductor: u32,
        prime: u64,
        group_order: u64,
        classes: ClassSummary,
        inverse: Vec<usize>,
        mut rows: Vec<(u64, Vec<Cyclotomic>, Vec<Terms>)>,
    ) -> Result<CharacterTable> {
        let one = Cyclotomic::integer(conductor, 1);
        rows.sort_by(|x, y| {
            let tx = x.1.iter().all(|v| *v == one);
            let ty = y.1.iter().all(|v| *v == one);
            x.0.cmp(&y.0).then(ty.cmp(&tx)).then_with(|| x.1.cmp(&y.1))
        });
        let degrees = rows.iter().map(|r| r.0).collect();
        let mut values = Vec::with_capacity(rows.len());
        let mut terms = Vec::with_capacity(rows.len());
        for (_, v, t) in rows {
            values.push(v);
            terms.push(t);
        }
        let table = CharacterTable {
            ring: CyclotomicRing::new(conductor),
            prime,
            group_order,
            classes,
            inverse,
            degrees,
            values,
            terms,
        };
        table.verify()?;
        Ok(table)
    }

    /// Rebuilds a table from stored values and checks it before returning.
    pub fn from_values(
        conductor: u32,
        prime: u64,
        group_order: u64,
        classes: ClassSummary,
        inverse: Vec<usize>,
        values: Vec<Vec<Cyclotomic>>,
    ) -> Result<CharacterTable> {
        let r = classes.sizes.len();
        if values.len() != r || values.iter().any(|row| row.len() != r) || inverse.len() != r {
            return Err(Error::CharacterTable("table is not square".into()));
        }
        if values.iter().flatten().any(|v| v.conductor() != conductor) {
            return Err(Error::CharacterTable("mixed conductors".into()));
        }
        let degrees = values
            .iter()
            .map(|row| row[0].as_integer().filter(|&d| d > 0).map(|d| d as u64))
            .collect::<Option<Vec<u64>>>()
            .ok_or_else(|| Error::CharacterTable("degree is not a positive integer".into()))?;
        let terms = values.iter().map(|row| row.iter().map(terms_of).collect()).collect();
        let table = CharacterTable {
            ring: CyclotomicRing::new(conductor),
            prime,
            group_order,
            classes,
            inverse,
            degrees,
            values,
            terms,
        };
        table.verify()?;
        Ok(table)
    }

    /// Dixon–Schneider on the enumerated group, followed by the `Sp x Z`
    /// assembly for even `q`.
    pub fn compute(cd: &ClassData) -> Result<CharacterTable> {
        let base = dixon_schneider(cd.group(), cd.base())?;
        if cd.is_center_product() {
            base.even_q_assembly(cd.group())
        } else {
            Ok(base)
        }
    }

    /// Characters of `G = Sp(4, q) x Z` from those of `Sp(4, q)`.
    pub fn even_q_assembly(&self, g: &Gsp4) -> Result<CharacterTable> {
        let f: &Field = g.field();
        if !f.is_even() {
            return Err(Error::WrongParity { expected: "even" });
        }
        let m = f.order() - 1;
        let units: Vec<Elem> = f.units().collect();
        let e_sp = self.ring.conductor();
        let e = lcm(e_sp as u64, m as u64) as u32;
        let ring = CyclotomicRing::new(e);
        let r_sp = self.len();
        let step_sp = e / e_sp;
        let step_z = e / m;
        let mut reps = Vec::with_capacity(r_sp * units.len());
        let mut sizes = Vec::new();
        let mut orders = Vec::new();
        let mut inverse = Vec::new();
        for b in 0..r_sp {
            let rep = g.unpack_element(self.classes.representatives[b]);
            for &z in &units {
                reps.push(g.pack(&g.mul(&g.scalar(z), &rep).entries));
                sizes.push(self.classes.sizes[b]);
                let zo = f.multiplicative_order(z).unwrap() as u64;
                orders.push(lcm(self.classes.orders[b] as u64, zo) as u32);
                inverse.push(self.inverse[b] * units.len() + (f.inv(z).0 as usize - 1));
            }
        }
        let mut rows = Vec::new();
        for rho in 0..r_sp {
            for lambda in 0..m {
                let mut vals = Vec::with_capacity(r_sp * units.len());
                let mut terms = Vec::with_capacity(r_sp * units.len());
                for b in 0..r_sp {
                    for &z in &units {
                        let shift = (lambda * f.log(z).unwrap() % m) * step_z;
                        let t: Terms =
                            self.terms[rho][b].iter().map(|&(k, c)| ((k * step_sp + shift) % e, c)).collect();
                        let mut w = vec![0i64; e as usize];
                        for &(k, c) in &t {
                            w[k as usize] += c;
                        }
                        vals.push(ring.from_group_ring(&w));
                        terms.push(t);
                    }
                }
                rows.push((self.degrees[rho], vals, terms));
            }
        }
        let table = CharacterTable {
            ring,
            prime: self.prime,
            group_order: self.group_order * m as u64,
            classes: ClassSummary { representatives: reps, sizes, orders },
            inverse,
            degrees: rows.iter().map(|r| r.0).collect(),
            values: rows.iter().map(|r| r.1.clone()).collect(),
            terms: rows.into_iter().map(|r| r.2).collect(),
        };
        table.verify()?;
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn ring(&self) -> &CyclotomicRing {
        &self.ring
    }

    pub fn conductor(&self) -> u32 {
        self.ring.conductor()
    }

    /// The prime `l` used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn classes(&self) -> &ClassSummary {
        &self.classes
    }

    pub fn inverse_classes(&self) -> &[usize] {
        &self.inverse
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.degrees[row]
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclotomic {
        &self.values[row][class]
    }

    pub fn row(&self, row: usize) -> &[Cyclotomic] {
        &self.values[row]
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    /// Value at a class as sparse `(k, c)` pairs of `sum c zeta_e^k`.
    pub fn value_terms(&self, row: usize, class: usize) -> &[(u32, i64)] {
        &self.terms[row][class]
    }

    /// Index of the trivial character.
    pub fn trivial_row(&self) -> Option<usize> {
        let one = self.ring.integer(1);
        (0..self.len()).find(|&i| self.values[i].iter().all(|v| *v == one))
    }

    /// `sum_k w_k a_k conj(b_k)` accumulated in the group ring, then reduced.
    fn inner(&self, weights: Option<&[u64]>, lhs: &[Terms], rhs: &[Terms]) -> Cyclotomic {
        let e = self.ring.conductor() as usize;
        let mut acc = vec![0i64; e];
        for (k, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            let w = weights.map_or(1, |ws| ws[k] as i64);
            for &(m, c) in a {
                for &(n, d) in b {
                    let idx = (m as usize + e - n as usize) % e;
                    acc[idx] += w * c * d;
                }
            }
        }
        self.ring.from_group_ring(&acc)
    }

    /// Exact orthogonality of rows and columns, `sum deg^2 = |G|`, degree
    /// divisibility, and `chi(g^-1) = conj(chi(g))`.
    pub fn verify(&self) -> Result<()> {
        let r = self.len();
        let fail = |msg: alloc::string::String| Err(Error::CharacterTable(msg));
        if self.classes.sizes.len() != r {
            return fail(format!("{r} characters for {} classes", self.classes.sizes.len()));
        }
        if self.classes.sizes.iter().sum::<u64>() != self.group_order {
            return fail("class sizes do not sum to the group order".into());
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.group_order {
            return fail(format!("sum of squared degrees is {sum_sq}, expected {}", self.group_order));
        }
        for &d in &self.degrees {
            if !self.group_order.is_multiple_of(d) {
                return fail(format!("degree {d} does not divide {}", self.group_order));
            }
        }
        for i in 0..r {
            if self.values[i][0].as_integer() != Some(self.degrees[i] as i64) {
                return fail(format!("row {i}: value at the identity is not the degree"));
            }
            for k in 0..r {
                if self.ring.conj(&self.values[i][k]) != self.values[i][self.inverse[k]] {
                    return fail(format!("row {i}, class {k}: value at the inverse is not the conjugate"));
                }
            }
        }
        for i in 0..r {
            for j in i..r {
                let v = self.inner(Some(&self.classes.sizes), &self.terms[i], &self.terms[j]);
                let expect = if i == j { self.group_order as i64 } else { 0 };
                if v != self.ring.integer(expect) {
                    return fail(format!("rows {i} and {j} are not orthogonal"));
                }
            }
        }
        let columns: Vec<Vec<Terms>> = (0..r).map(|k| (0..r).map(|i| self.terms[i][k].clone()).collect()).collect();
        for k in 0..r {
            for l in k..r {
                let v = self.inner(None, &columns[k], &columns[l]);
                let expect = if k == l { (self.group_order / self.classes.sizes[k]) as i64 } else { 0 };
                if v != self.ring.integer(expect) {
                    return fail(format!("columns {k} and {l} are not orthogonal"));
                }
            }
        }
        Ok(())
    }

    /// `omega(u) = chi(uI) / chi(1)` for every unit `u`, in field order.
    pub fn central_character(&self, cd: &ClassData, row: usize) -> Result<Vec<(Elem, ComplexRoot)>> {
        let f = cd.group().field();
        let d = self.degrees[row] as i64;
        let e = self.ring.conductor();
        let mut out = Vec::new();
        for u in f.units() {
            let v = &self.values[row][cd.class_of_scalar(u)];
            let k = (0..e as i64)
                .find(|&k| self.ring.root(k).scale(d) == *v)
                .ok_or_else(|| Error::Consistency(format!("row {row}: central value is not a root of unity")))?;
            out.push((u, ComplexRoot::new(e, k)));
        }
        for (i, &(u, wu)) in out.iter().enumerate() {
            for &(v, wv) in &out[i..] {
                let uv = f.mul(u, v);
                let w_uv = out.iter().find(|x| x.0 == uv).unwrap().1;
                if wu.mul(wv) != w_uv {
                    return Err(Error::Consistency(format!("row {row}: central character is not multiplicative")));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsp4::DEFAULT_ELEMENT_BUDGET;

    fn table(p: u32, n: u32) -> (ClassData, CharacterTable) {
        let g = Gsp4::new(Field::new(p, n).unwrap());
        let cd = ClassData::compute(&g, DEFAULT_ELEMENT_BUDGET).unwrap();
        let ct = CharacterTable::compute(&cd).unwrap();
        (cd, ct)
    }

    #[test]
    fn q2_degrees() {
        let (cd, ct) = table(2, 1);
        assert_eq!(ct.len(), cd.len());
        let mut d = ct.degrees().to_vec();
        d.sort();
        assert_eq!(d, vec![1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]);
        assert_eq!(ct.trivial_row(), Some(0));
        let omega = ct.central_character(&cd, 3).unwrap();
        assert_eq!(omega.len(), 1);
        assert!(omega[0].1.is_one());
    }

    #[test]
    fn q3_table_and_central_characters() {
        let (cd, ct) = table(3, 1);
        assert_eq!(ct.group_order(), 103_680);
        assert_eq!(ct.len(), cd.len());
        assert!(ct.degrees().contains(&81));
        for row in 0..ct.len() {
            let omega = ct.central_character(&cd, row).unwrap();
            for (_, w) in omega {
                assert!(w.mul(w).is_one());
            }
        }
    }

    #[test]
    fn stored_values_round_trip() {
        let (_, ct) = table(2, 1);
        let again = CharacterTable::from_values(
            ct.conductor(),
            ct.prime(),
            ct.group_order(),
            ct.classes().clone(),
            ct.inverse_classes().to_vec(),
            ct.values().to_vec(),
        )
        .unwrap();
        assert_eq!(again.degrees(), ct.degrees());
        let mut broken = ct.values().to_vec();
        broken[1][2] = ct.ring().integer(7);
        assert!(CharacterTable::from_values(
            ct.conductor(),
            ct.prime(),
            ct.group_order(),
            ct.classes().clone(),
            ct.inverse_classes().to_vec(),
            broken
        )
        .is_err());
    }
}
