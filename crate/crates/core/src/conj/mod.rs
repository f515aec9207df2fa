//! Conjugacy classes of `G`, class multiplication constants, the orbits of
//! the Levi action on `N`, and eigenvalue types of elements of `TN`.

mod forms;
mod types;

use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::{lcm, Elem};
use crate::gsp4::{ElementSet, GroupElement, GroupKind, Gsp4};
use crate::{Error, Result};

pub use forms::{act, canonical_form_2x2, exhaustive_orbits, n_orbit_representative, Orbit2x2};
pub use types::{tn_type, TnFamily, TnParameter, TnType};

/// Conjugacy classes of an enumerated group `H` (`G` itself, or `Sp(4, q)`).
///
/// Classes are ordered by element order, then by the least packed encoding,
/// which is also the representative.
#[derive(Clone, Debug)]
pub struct EnumeratedClasses {
    elements: ElementSet,
    class_of: Vec<u32>,
    reps: Vec<u64>,
    sizes: Vec<u64>,
    orders: Vec<u32>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

impl EnumeratedClasses {
    /// Union-find over the elements, joining each element with its conjugates
    /// by every generator.
    pub fn compute(g: &Gsp4, elements: ElementSet) -> Result<EnumeratedClasses> {
        let gens: Vec<(GroupElement, GroupElement)> =
            g.generators(elements.kind()).into_iter().map(|s| (s, g.inverse(&s))).collect();
        let n = elements.len();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        for (i, &code) in elements.packed().iter().enumerate() {
            let m = g.unpack(code);
            for (s, si) in &gens {
                let c = g.mat_mul(&g.mat_mul(&s.entries, &m), &si.entries);
                let j = elements.index_of(g.pack(&c)).ok_or(Error::NotInGroup)?;
                let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j as u32));
                if a != b {
                    // the smaller index (= smaller packed code) stays the root
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
        let mut root_class = vec![u32::MAX; n];
        let mut roots = Vec::new();
        let mut sizes_by_root = Vec::new();
        let mut raw_class = vec![0u32; n];
        for i in 0..n {
            let r = find(&mut parent, i as u32) as usize;
            if root_class[r] == u32::MAX {
                root_class[r] = roots.len() as u32;
                roots.push(r);
                sizes_by_root.push(0u64);
            }
            raw_class[i] = root_class[r];
            sizes_by_root[root_class[r] as usize] += 1;
        }
        // roots are the least index in their class, hence the least packed code
        let orders_by_root: Vec<u32> =
            roots.iter().map(|&r| g.element_order(&g.unpack_element(elements.packed()[r]))).collect();
        let mut perm: Vec<usize> = (0..roots.len()).collect();
        perm.sort_by_key(|&k| (orders_by_root[k], elements.packed()[roots[k]]));
        let mut new_index = vec![0u32; roots.len()];
        for (pos, &k) in perm.iter().enumerate() {
            new_index[k] = pos as u32;
        }
        let class_of: Vec<u32> = raw_class.iter().map(|&c| new_index[c as usize]).collect();
        let reps = perm.iter().map(|&k| elements.packed()[roots[k]]).collect();
        let sizes = perm.iter().map(|&k| sizes_by_root[k]).collect();
        let orders = perm.iter().map(|&k| orders_by_root[k]).collect();
        Ok(EnumeratedClasses { elements, class_of, reps, sizes, orders })
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn representatives(&self) -> &[u64] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn class_of_packed(&self, code: u64) -> Option<usize> {
        self.elements.index_of(code).map(|i| self.class_of[i] as usize)
    }

    /// Class index of every element, aligned with `elements().packed()`.
    pub fn class_map(&self) -> &[u32] {
        &self.class_of
    }

    /// `class_of(rep_i^k)` for every class `i`.
    pub fn power_map(&self, g: &Gsp4, k: i64) -> Vec<usize> {
        self.reps
            .iter()
            .zip(&self.orders)
            .map(|(&code, &o)| {
                let e = k.rem_euclid(o as i64) as u64;
                let x = g.pow(&g.unpack_element(code), e);
                self.class_of_packed(g.pack(&x.entries)).expect("powers stay in the group")
            })
            .collect()
    }

    /// The tensor `a[i][j][k] = #{(x, y) in C_i x C_j : xy = z_k}`, flattened
    /// as `(i * r + j) * r + k`.
    pub fn class_constants(&self, g: &Gsp4) -> Vec<u64> {
        let r = self.len();
        let reps: Vec<GroupElement> = self.reps.iter().map(|&c| g.unpack_element(c)).collect();
        let mut a = vec![0u64; r * r * r];
        for (ix, &code) in self.elements.packed().iter().enumerate() {
            let ci = self.class_of[ix] as usize;
            let xi = g.inverse(&g.unpack_element(code));
            for (k, z) in reps.iter().enumerate() {
                let y = g.mat_mul(&xi.entries, &z.entries);
                let cj = self.class_of_packed(g.pack(&y)).expect("products stay in the group");
                a[(ci * r + cj) * r + k] += 1;
            }
        }
        a
    }

    /// A single constant, counted with an arbitrary member `z` of `C_k`.
    pub fn class_constant_at(&self, g: &Gsp4, i: usize, j: usize, z: &GroupElement) -> u64 {
        let mut count = 0;
        for (ix, &code) in self.elements.packed().iter().enumerate() {
            if self.class_of[ix] as usize != i {
                continue;
            }
            let xi = g.inverse(&g.unpack_element(code));
            let y = g.mat_mul(&xi.entries, &z.entries);
            if self.class_of_packed(g.pack(&y)) == Some(j) {
                count += 1;
            }
        }
        count
    }
}

#[derive(Clone, Debug)]
enum Structure {
    Direct,
    // G = Sp(4, q) x Z; class (i, z) has index i * (q - 1) + (z - 1)
    CenterProduct { units: Vec<Elem> },
}

/// Conjugacy classes of `G = GSp(4, q)`.
///
/// For odd `q` these are computed on `G` directly. For even `q`, `G = Sp x Z`
/// and the classes are pairs of an `Sp` class and a scalar.
#[derive(Clone, Debug)]
pub struct ClassData {
    group: Gsp4,
    base: EnumeratedClasses,
    structure: Structure,
}

/// Compact description of the classes, as stored alongside a character table.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassSummary {
    pub representatives: Vec<u64>,
    pub sizes: Vec<u64>,
    pub orders: Vec<u32>,
}

impl ClassData {
    pub fn compute(g: &Gsp4, budget: u64) -> Result<ClassData> {
        let even = g.field().is_even();
        let kind = if even { GroupKind::Symplectic } else { GroupKind::Full };
        let elements = g.enumerate(kind, budget)?;
        let base = EnumeratedClasses::compute(g, elements)?;
        let structure =
            if even { Structure::CenterProduct { units: g.field().units().collect() } } else { Structure::Direct };
        Ok(ClassData { group: g.clone(), base, structure })
    }

    pub fn group(&self) -> &Gsp4 {
        &self.group
    }

    /// Classes of the enumerated group (`G` for odd `q`, `Sp(4, q)` for even `q`).
    pub fn base(&self) -> &EnumeratedClasses {
        &self.base
    }

    pub fn is_center_product(&self) -> bool {
        matches!(self.structure, Structure::CenterProduct { .. })
    }

    fn center_count(&self) -> usize {
        match &self.structure {
            Structure::Direct => 1,
            Structure::CenterProduct { units } => units.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.base.len() * self.center_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn group_order(&self) -> u64 {
        self.base.group_order() * self.center_count() as u64
    }

    /// `(base class, scalar)` of class `i`.
    pub fn split_index(&self, i: usize) -> (usize, Elem) {
        match &self.structure {
            Structure::Direct => (i, Elem::ONE),
            Structure::CenterProduct { units } => (i / units.len(), units[i % units.len()]),
        }
    }

    pub fn size(&self, i: usize) -> u64 {
        self.base.sizes[self.split_index(i).0]
    }

    pub fn sizes(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.size(i)).collect()
    }

    pub fn order(&self, i: usize) -> u32 {
        let (b, z) = self.split_index(i);
        let zo = self.group.field().multiplicative_order(z).unwrap();
        lcm(self.base.orders[b] as u64, zo as u64) as u32
    }

    pub fn orders(&self) -> Vec<u32> {
        (0..self.len()).map(|i| self.order(i)).collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        (0..self.len()).fold(1u64, |acc, i| lcm(acc, self.order(i) as u64)) as u32
    }

    pub fn representative(&self, i: usize) -> GroupElement {
        let (b, z) = self.split_index(i);
        let rep = self.group.unpack_element(self.base.reps[b]);
        if z == Elem::ONE {
            rep
        } else {
            self.group.mul(&self.group.scalar(z), &rep)
        }
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.group_order() / self.size(i)
    }

    pub fn class_of(&self, x: &GroupElement) -> Option<usize> {
        let g = &self.group;
        match &self.structure {
            Structure::Direct => self.base.class_of_packed(g.pack(&x.entries)),
            Structure::CenterProduct { units } => {
                let f = g.field();
                let z = f.sqrt(x.multiplier)?;
                let x0 = g.scale_mat(f.inv(z), &x.entries);
                let b = self.base.class_of_packed(g.pack(&x0))?;
                Some(b * units.len() + (z.0 as usize - 1))
            }
        }
    }

    /// Class of the scalar `uI`.
    pub fn class_of_scalar(&self, u: Elem) -> usize {
        self.class_of(&self.group.scalar(u)).expect("scalars are central")
    }

    /// `class_of(rep_i^k)`.
    pub fn power_map(&self, k: i64) -> Vec<usize> {
        let base = self.base.power_map(&self.group, k);
        match &self.structure {
            Structure::Direct => base,
            Structure::CenterProduct { units } => {
                let f = self.group.field();
                (0..self.len())
                    .map(|i| {
                        let (b, z) = self.split_index(i);
                        let zk = f.pow(z, k);
                        base[b] * units.len() + (zk.0 as usize - 1)
                    })
                    .collect()
            }
        }
    }

    pub fn inverse_map(&self) -> Vec<usize> {
        self.power_map(-1)
    }

    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            representatives: (0..self.len()).map(|i| self.group.pack(&self.representative(i).entries)).collect(),
            sizes: self.sizes(),
            orders: self.orders(),
        }
    }

    /// Structure constant `a_{ijk}` of `G`, counted at the representative of `C_k`.
    pub fn class_constant(&self, i: usize, j: usize, k: usize) -> u64 {
        let (bi, zi) = self.split_index(i);
        let (bj, zj) = self.split_index(j);
        let (bk, zk) = self.split_index(k);
        if self.group.field().mul(zi, zj) != zk {
            return 0;
        }
        let z = self.group.unpack_element(self.base.reps[bk]);
        self.base.class_constant_at(&self.group, bi, bj, &z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;
    use crate::gsp4::DEFAULT_ELEMENT_BUDGET;

    fn classes(p: u32, n: u32) -> ClassData {
        ClassData::compute(&Gsp4::new(Field::new(p, n).unwrap()), DEFAULT_ELEMENT_BUDGET).unwrap()
    }

    #[test]
    fn q2_has_eleven_classes() {
        let cd = classes(2, 1);
        assert_eq!(cd.len(), 11);
        assert_eq!(cd.group_order(), 720);
        assert_eq!(cd.sizes().iter().sum::<u64>(), 720);
        assert_eq!(cd.size(0), 1);
        assert_eq!(cd.order(0), 1);
        for i in 0..cd.len() {
            let rep = cd.representative(i);
            assert_eq!(cd.class_of(&rep), Some(i));
        }
    }

    #[test]
    fn classes_are_conjugation_invariant_q2() {
        let cd = classes(2, 1);
        let g = cd.group().clone();
        let els = cd.base().elements().packed().to_vec();
        for (idx, &code) in els.iter().enumerate().step_by(11) {
            let x = g.unpack_element(code);
            let cx = cd.class_of(&x).unwrap();
            for &hc in els.iter().skip(idx % 7).step_by(37) {
                let h = g.unpack_element(hc);
                assert_eq!(cd.class_of(&g.conjugate(&h, &x)), Some(cx));
            }
        }
    }

    #[test]
    fn structure_constants_q2() {
        let cd = classes(2, 1);
        let g = cd.group().clone();
        let r = cd.len();
        let a = cd.base().class_constants(&g);
        let sizes = cd.sizes();
        let inv = cd.inverse_map();
        for i in 0..r {
            for j in 0..r {
                // the identity class acts as a unit
                assert_eq!(a[(j * r) * r + i], u64::from(i == j));
                let total: u64 = (0..r).map(|k| a[(i * r + j) * r + k] * sizes[k]).sum();
                assert_eq!(total, sizes[i] * sizes[j]);
                for k in 0..r {
                    // a_{ijk} |C_k| = a_{k j' i} |C_i| with j' the inverse class
                    assert_eq!(a[(i * r + j) * r + k] * sizes[k], a[(k * r + inv[j]) * r + i] * sizes[i]);
                }
            }
        }
        // independence of the chosen member of C_k
        let els = cd.base().elements().packed().to_vec();
        for k in 0..r {
            let other = els.iter().rev().find(|&&c| cd.base().class_of_packed(c) == Some(k)).unwrap();
            let z = g.unpack_element(*other);
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(cd.base().class_constant_at(&g, i, j, &z), a[(i * r + j) * r + k]);
                }
            }
        }
    }

    #[test]
    fn central_elements_q3() {
        let cd = classes(3, 1);
        assert_eq!(cd.group_order(), 103_680);
        let minus = cd.class_of(&cd.group().scalar(Elem(2))).unwrap();
        assert_eq!(cd.size(minus), 1);
        assert_eq!(cd.sizes().iter().sum::<u64>(), 103_680);
        let inv = cd.inverse_map();
        for i in 0..cd.len() {
            assert_eq!(inv[inv[i]], i);
            assert_eq!(cd.size(inv[i]), cd.size(i));
        }
    }

    #[test]
    fn center_product_q4_indexing() {
        // Sp(4, 4) is too large for a unit test; check the index arithmetic on q = 2
        let cd = classes(2, 1);
        assert!(cd.is_center_product());
        assert_eq!(cd.split_index(5), (5, Elem::ONE));
        assert_eq!(cd.class_of_scalar(Elem::ONE), 0);
    }
}
