//! The group `G = GSp(4, q)` of 4x4 matrices `g` with `g^t J g = mu(g) J`,
//! for the antidiagonal form `J = antidiag(1, 1, -1, -1)`.

mod subgroups;
mod torus;

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::ffield::{Elem, Field};
use crate::{Error, Result};

pub use subgroups::{classify_datum, BesselDatum, RankClass};
pub use torus::{BesselSubgroup, TorusCharacter, TorusElement, TorusKind, TorusStructure};

pub type Mat4 = [[Elem; 4]; 4];

/// Default cap on the number of elements an enumeration may hold.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 3_000_000;

/// A member of `GSp(4, q)` with its multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub entries: Mat4,
    pub multiplier: Elem,
}

/// Which group an enumeration covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GroupKind {
    /// `GSp(4, q)`.
    Full,
    /// `Sp(4, q)`, the kernel of the multiplier.
    Symplectic,
}

/// `q^4 (q^2 - 1)(q^4 - 1)(q - 1)` for the full group, without the last factor for `Sp`.
pub fn group_order(q: u64, kind: GroupKind) -> u64 {
    let sp = q.pow(4) * (q * q - 1) * (q.pow(4) - 1);
    match kind {
        GroupKind::Full => sp * (q - 1),
        GroupKind::Symplectic => sp,
    }
}

/// Context for matrix arithmetic over a fixed field.
#[derive(Clone, Debug)]
pub struct Gsp4 {
    field: Field,
    bits: u32,
    j: Mat4,
}

impl Gsp4 {
    pub fn new(field: Field) -> Gsp4 {
        let q = field.order();
        let bits = 32 - (q - 1).leading_zeros();
        let one = Elem::ONE;
        let m1 = field.neg(one);
        let z = Elem::ZERO;
        let j = [[z, z, z, one], [z, z, one, z], [z, m1, z, z], [m1, z, z, z]];
        Gsp4 { field, bits, j }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Bits per packed entry, `ceil(log2 q)`.
    pub fn bits_per_entry(&self) -> u32 {
        self.bits
    }

    pub fn form(&self) -> &Mat4 {
        &self.j
    }

    pub fn mat_mul(&self, a: &Mat4, b: &Mat4) -> Mat4 {
        let f = &self.field;
        let mut out = [[Elem::ZERO; 4]; 4];
        for i in 0..4 {
            for k in 0..4 {
                let aik = a[i][k];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..4 {
                    out[i][j] = f.add(out[i][j], f.mul(aik, b[k][j]));
                }
            }
        }
        out
    }

    pub fn transpose(&self, a: &Mat4) -> Mat4 {
        let mut t = *a;
        for i in 0..4 {
            for j in 0..4 {
                t[i][j] = a[j][i];
            }
        }
        t
    }

    pub fn scalar_mat(&self, u: Elem) -> Mat4 {
        let mut m = [[Elem::ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = u;
        }
        m
    }

    pub fn scale_mat(&self, u: Elem, a: &Mat4) -> Mat4 {
        let mut out = *a;
        for row in out.iter_mut() {
            for x in row.iter_mut() {
                *x = self.field.mul(u, *x);
            }
        }
        out
    }

    /// `mu` with `m^t J m = mu J`, or `None` when `m` is not a similitude.
    pub fn multiplier(&self, m: &Mat4) -> Option<Elem> {
        let g = self.mat_mul(&self.transpose(m), &self.mat_mul(&self.j, m));
        let mu = g[0][3];
        if mu.is_zero() {
            return None;
        }
        (g == self.scale_mat(mu, &self.j)).then_some(mu)
    }

    /// `B(x, y) = x^t J y` applied to columns `a` and `b` of `m`.
    fn form_on_columns(&self, m: &Mat4, a: usize, b: usize) -> Elem {
        let f = &self.field;
        let t1 = f.sub(f.mul(m[0][a], m[3][b]), f.mul(m[3][a], m[0][b]));
        let t2 = f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[2][a], m[1][b]));
        f.add(t1, t2)
    }

    /// Fast multiplier for a matrix already known to lie in the group.
    pub fn multiplier_unchecked(&self, m: &Mat4) -> Elem {
        self.form_on_columns(m, 0, 3)
    }

    pub fn element(&self, m: Mat4) -> Result<GroupElement> {
        let multiplier = self.multiplier(&m).ok_or(Error::NotInGroup)?;
        Ok(GroupElement { entries: m, multiplier })
    }

    pub(crate) fn element_unchecked(&self, m: Mat4) -> GroupElement {
        debug_assert!(self.multiplier(&m).is_some());
        GroupElement { entries: m, multiplier: self.multiplier_unchecked(&m) }
    }

    pub fn identity(&self) -> GroupElement {
        self.scalar(Elem::ONE)
    }

    pub fn scalar(&self, u: Elem) -> GroupElement {
        GroupElement { entries: self.scalar_mat(u), multiplier: self.field.mul(u, u) }
    }

    pub fn j_element(&self) -> GroupElement {
        GroupElement { entries: self.j, multiplier: Elem::ONE }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            entries: self.mat_mul(&a.entries, &b.entries),
            multiplier: self.field.mul(a.multiplier, b.multiplier),
        }
    }

    /// `g^-1 = mu^-1 J^-1 g^t J`.
    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let minv = self.field.inv(g.multiplier);
        // J^-1 = -J
        let jt = self.mat_mul(&self.transpose(&g.entries), &self.j);
        let m = self.mat_mul(&self.j, &jt);
        let m = self.scale_mat(self.field.neg(minv), &m);
        GroupElement { entries: m, multiplier: minv }
    }

    pub fn conjugate(&self, h: &GroupElement, g: &GroupElement) -> GroupElement {
        self.mul(&self.mul(h, g), &self.inverse(h))
    }

    pub fn pow(&self, g: &GroupElement, k: u64) -> GroupElement {
        let mut acc = self.identity();
        let mut base = *g;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: &GroupElement) -> u32 {
        let id = self.identity();
        let mut acc = *g;
        let mut k = 1;
        while acc != id {
            acc = self.mul(&acc, g);
            k += 1;
        }
        k
    }

    /// Row-major packing with `bits_per_entry` bits per entry.
    pub fn pack(&self, m: &Mat4) -> u64 {
        let mut out = 0u64;
        for row in m {
            for x in row {
                out = (out << self.bits) | x.0 as u64;
            }
        }
        out
    }

    pub fn unpack(&self, mut code: u64) -> Mat4 {
        let mask = (1u64 << self.bits) - 1;
        let mut m = [[Elem::ZERO; 4]; 4];
        for i in (0..4).rev() {
            for j in (0..4).rev() {
                m[i][j] = Elem((code & mask) as u16);
                code >>= self.bits;
            }
        }
        m
    }

    pub fn unpack_element(&self, code: u64) -> GroupElement {
        let m = self.unpack(code);
        GroupElement { entries: m, multiplier: self.multiplier_unchecked(&m) }
    }

    /// `n(x, y, z)`: the element of the Siegel unipotent radical with
    /// upper-right block `[[y, z], [x, y]]`.
    pub fn n(&self, x: Elem, y: Elem, z: Elem) -> GroupElement {
        let (o, l) = (Elem::ZERO, Elem::ONE);
        GroupElement { entries: [[l, o, y, z], [o, l, x, y], [o, o, l, o], [o, o, o, l]], multiplier: l }
    }

    /// `A' = det(A)^-1 [[a, -b], [-c, d]]` for `A = [[a, b], [c, d]]`.
    pub fn prime_involution(&self, a: [[Elem; 2]; 2]) -> Option<[[Elem; 2]; 2]> {
        let f = &self.field;
        let det = f.sub(f.mul(a[0][0], a[1][1]), f.mul(a[0][1], a[1][0]));
        if det.is_zero() {
            return None;
        }
        let di = f.inv(det);
        Some([[f.mul(di, a[0][0]), f.mul(di, f.neg(a[0][1]))], [f.mul(di, f.neg(a[1][0])), f.mul(di, a[1][1])]])
    }

    /// Block-diagonal `diag(A, u A')`, a Levi element of the Siegel parabolic with multiplier `u`.
    pub fn levi(&self, a: [[Elem; 2]; 2], u: Elem) -> Option<GroupElement> {
        if u.is_zero() {
            return None;
        }
        let ap = self.prime_involution(a)?;
        let f = &self.field;
        let mut m = [[Elem::ZERO; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][j];
                m[i + 2][j + 2] = f.mul(u, ap[i][j]);
            }
        }
        Some(GroupElement { entries: m, multiplier: u })
    }

    pub fn diag(&self, d: [Elem; 4]) -> Mat4 {
        let mut m = [[Elem::ZERO; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        m
    }

    /// Generating set: positive and negative simple root elements at an
    /// `F_p`-basis of `F_q`, the two symplectic torus directions, `J`, and for
    /// the full group the similitude `diag(1, 1, g, g)`.
    pub fn generators(&self, kind: GroupKind) -> Vec<GroupElement> {
        let f = &self.field;
        let (o, l) = (Elem::ZERO, Elem::ONE);
        let g = f.generator();
        let basis: Vec<Elem> = (0..f.degree()).map(|k| f.exp(k as i64)).collect();
        let mut gens = Vec::new();
        for &t in &basis {
            let short = self.levi([[l, t], [o, l]], l).unwrap();
            let long = self.n(t, o, o);
            for m in [short, long] {
                gens.push(m);
                gens.push(self.element_unchecked(self.transpose(&m.entries)));
            }
        }
        let gi = f.inv(g);
        gens.push(self.element_unchecked(self.diag([g, l, l, gi])));
        gens.push(self.element_unchecked(self.diag([l, g, gi, l])));
        gens.push(self.j_element());
        if kind == GroupKind::Full {
            gens.push(self.element_unchecked(self.diag([l, l, g, g])));
        }
        gens.retain(|x| *x != self.identity());
        gens
    }

    /// All elements of `G` (or `Sp`), by breadth-first closure from the generators.
    pub fn enumerate(&self, kind: GroupKind, budget: u64) -> Result<ElementSet> {
        let order = group_order(self.q() as u64, kind);
        if order > budget {
            return Err(Error::BudgetExceeded { order, budget });
        }
        let gens = self.generators(kind);
        let mut seen: HashSet<u64> = HashSet::with_capacity(order as usize);
        let mut queue = VecDeque::new();
        let id = self.identity();
        seen.insert(self.pack(&id.entries));
        queue.push_back(id.entries);
        while let Some(m) = queue.pop_front() {
            for s in &gens {
                let next = self.mat_mul(&m, &s.entries);
                if seen.insert(self.pack(&next)) {
                    queue.push_back(next);
                }
            }
            if seen.len() as u64 > order {
                return Err(Error::Consistency(alloc::format!("closure exceeded the order formula {}", order)));
            }
        }
        let mut packed: Vec<u64> = seen.into_iter().collect();
        packed.sort_unstable();
        if packed.len() as u64 != order {
            return Err(Error::Consistency(alloc::format!(
                "closure produced {} elements, expected {}",
                packed.len(),
                order
            )));
        }
        Ok(ElementSet { kind, packed })
    }
}

/// A sorted list of packed group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSet {
    kind: GroupKind,
    packed: Vec<u64>,
}

impl ElementSet {
    /// Wraps an already sorted, duplicate-free list.
    pub fn from_sorted(kind: GroupKind, packed: Vec<u64>) -> ElementSet {
        debug_assert!(packed.windows(2).all(|w| w[0] < w[1]));
        ElementSet { kind, packed }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.packed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packed.is_empty()
    }

    pub fn packed(&self) -> &[u64] {
        &self.packed
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.packed.binary_search(&code).ok()
    }

    pub fn contains(&self, code: u64) -> bool {
        self.index_of(code).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(p: u32, n: u32) -> Gsp4 {
        Gsp4::new(Field::new(p, n).unwrap())
    }

    #[test]
    fn multiplier_examples() {
        let g = grp(5, 1);
        let f = g.field();
        assert_eq!(g.multiplier(&g.identity().entries), Some(Elem::ONE));
        assert_eq!(g.multiplier(g.form()), Some(Elem::ONE));
        let l = Elem::ONE;
        for u in f.units() {
            assert_eq!(g.multiplier(&g.diag([l, l, u, u])), Some(u));
        }
        assert_eq!(g.multiplier(&g.diag([l, l, l, Elem(2)])), None);
        assert!(g.element(g.diag([l, Elem(2), l, l])).is_err());
    }

    #[test]
    fn packing_round_trips() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)] {
            let g = grp(p, n);
            for s in g.generators(GroupKind::Full) {
                let code = g.pack(&s.entries);
                assert_eq!(g.unpack(code), s.entries);
            }
        }
        assert_eq!(grp(3, 1).bits_per_entry(), 2);
        assert_eq!(grp(2, 2).bits_per_entry(), 2);
        assert_eq!(grp(5, 1).bits_per_entry(), 3);
    }

    #[test]
    fn inverse_and_generators() {
        let g = grp(3, 1);
        for s in g.generators(GroupKind::Full) {
            assert!(g.multiplier(&s.entries) == Some(s.multiplier));
            assert_eq!(g.mul(&s, &g.inverse(&s)), g.identity());
        }
    }

    #[test]
    fn enumerate_small_groups() {
        let g2 = grp(2, 1);
        let all = g2.enumerate(GroupKind::Full, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(all.len(), 720);
        let g3 = grp(3, 1);
        let sp = g3.enumerate(GroupKind::Symplectic, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(sp.len() as u64, group_order(3, GroupKind::Symplectic));
        assert!(matches!(g3.enumerate(GroupKind::Full, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn order_formula_values() {
        assert_eq!(group_order(2, GroupKind::Full), 720);
        assert_eq!(group_order(3, GroupKind::Full), 103_680);
        assert_eq!(group_order(4, GroupKind::Full), 2_937_600);
    }
}
