use alloc::vec::Vec;

use super::{GroupElement, Gsp4};
use crate::ffield::{Elem, Field, SquareClass};

/// The four orbit types of characters `psi_{a,b,c}` of `N`.
///
/// Odd `q` uses the discriminant `b^2 - 4ac`; even `q` uses `b` and the sign
/// `epsilon(ac / b^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RankClass {
    Rank0,
    Rank1,
    Rank2Square,
    Rank2Nonsquare,
    AllZero,
    BZeroAcNonzero,
    BNonzeroEpsPlus,
    BNonzeroEpsMinus,
}

impl RankClass {
    /// Column position (0..4) in the Fourier-coefficient tables.
    pub fn column(self) -> usize {
        match self {
            RankClass::Rank0 | RankClass::AllZero => 0,
            RankClass::Rank1 | RankClass::BZeroAcNonzero => 1,
            RankClass::Rank2Square | RankClass::BNonzeroEpsPlus => 2,
            RankClass::Rank2Nonsquare | RankClass::BNonzeroEpsMinus => 3,
        }
    }

    pub fn all(even: bool) -> [RankClass; 4] {
        if even {
            [RankClass::AllZero, RankClass::BZeroAcNonzero, RankClass::BNonzeroEpsPlus, RankClass::BNonzeroEpsMinus]
        } else {
            [RankClass::Rank0, RankClass::Rank1, RankClass::Rank2Square, RankClass::Rank2Nonsquare]
        }
    }

    /// Data for which the Bessel subgroup is defined.
    pub fn is_nondegenerate(self) -> bool {
        self.column() >= 2
    }

    pub fn is_split(self) -> bool {
        matches!(self, RankClass::Rank2Square | RankClass::BNonzeroEpsPlus)
    }

    pub fn name(self) -> &'static str {
        match self {
            RankClass::Rank0 => "rank0",
            RankClass::Rank1 => "rank1",
            RankClass::Rank2Square => "rank2_square",
            RankClass::Rank2Nonsquare => "rank2_nonsquare",
            RankClass::AllZero => "all_zero",
            RankClass::BZeroAcNonzero => "b_zero_ac_nonzero",
            RankClass::BNonzeroEpsPlus => "b_nonzero_eps_plus",
            RankClass::BNonzeroEpsMinus => "b_nonzero_eps_minus",
        }
    }
}

/// A triple `(a, b, c)` indexing the character `psi(ax + by + cz)` of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BesselDatum {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub rank_class: RankClass,
}

impl BesselDatum {
    pub fn split(&self) -> bool {
        self.rank_class.is_split()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank_class.is_nondegenerate()
    }

    /// `a x + b y + c z`.
    pub fn form(&self, f: &Field, x: Elem, y: Elem, z: Elem) -> Elem {
        f.add(f.add(f.mul(self.a, x), f.mul(self.b, y)), f.mul(self.c, z))
    }
}

pub fn classify_datum(f: &Field, a: Elem, b: Elem, c: Elem) -> BesselDatum {
    let rank_class = if f.is_even() {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            RankClass::AllZero
        } else if b.is_zero() {
            RankClass::BZeroAcNonzero
        } else {
            let t = f.div(f.mul(a, c), f.mul(b, b));
            if f.in_q_circle(t) {
                RankClass::BNonzeroEpsPlus
            } else {
                RankClass::BNonzeroEpsMinus
            }
        }
    } else {
        let four = f.from_int(4);
        let disc = f.sub(f.mul(b, b), f.mul(four, f.mul(a, c)));
        if a.is_zero() && b.is_zero() && c.is_zero() {
            RankClass::Rank0
        } else {
            match f.square_class(disc).unwrap() {
                SquareClass::Zero => RankClass::Rank1,
                SquareClass::Square => RankClass::Rank2Square,
                SquareClass::Nonsquare => RankClass::Rank2Nonsquare,
            }
        }
    };
    BesselDatum { a, b, c, rank_class }
}

impl Gsp4 {
    pub fn classify_datum(&self, a: Elem, b: Elem, c: Elem) -> BesselDatum {
        classify_datum(self.field(), a, b, c)
    }

    /// Every triple `(a, b, c)` in `F_q^3`, in index order.
    pub fn all_data(&self) -> Vec<BesselDatum> {
        let f = self.field();
        let mut out = Vec::with_capacity(f.order().pow(3) as usize);
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    out.push(classify_datum(f, a, b, c));
                }
            }
        }
        out
    }

    /// `N`, listed in `(x, y, z)` index order.
    pub fn subgroup_n(&self) -> Vec<GroupElement> {
        let f = self.field();
        let mut out = Vec::with_capacity(f.order().pow(3) as usize);
        for x in f.elements() {
            for y in f.elements() {
                for z in f.elements() {
                    out.push(self.n(x, y, z));
                }
            }
        }
        out
    }

    /// The scalar matrices.
    pub fn center(&self) -> Vec<GroupElement> {
        self.field().units().map(|u| self.scalar(u)).collect()
    }

    /// `P = { diag(A, uA') n(x, y, z) }`.
    pub fn siegel_parabolic(&self) -> Vec<GroupElement> {
        let f = self.field();
        let n = self.subgroup_n();
        let mut out = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    for d in f.elements() {
                        for u in f.units() {
                            if let Some(l) = self.levi([[a, b], [c, d]], u) {
                                out.extend(n.iter().map(|m| self.mul(&l, m)));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Upper unitriangular elements of `G`: `m_t n(x, y, z)` with
    /// `m_t = diag([[1, t], [0, 1]], [[1, -t], [0, 1]])`.
    pub fn unipotent_radical_borel(&self) -> Vec<GroupElement> {
        let f = self.field();
        let (o, l) = (Elem::ZERO, Elem::ONE);
        let n = self.subgroup_n();
        let mut out = Vec::with_capacity(n.len() * f.order() as usize);
        for t in f.elements() {
            let m = self.levi([[l, t], [o, l]], l).unwrap();
            out.extend(n.iter().map(|x| self.mul(&m, x)));
        }
        out
    }

    /// Unipotent radical of the stabilizer of the line `<e_1>`: the elements
    /// of the Borel radical acting trivially on `e_1^perp / <e_1>`.
    pub fn klingen_radical(&self) -> Vec<GroupElement> {
        self.unipotent_radical_borel().into_iter().filter(|u| u.entries[1][2].is_zero()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::GroupKind;
    use super::*;

    #[test]
    fn datum_classification() {
        let f3 = Field::new(3, 1).unwrap();
        let (o, l) = (Elem::ZERO, Elem::ONE);
        assert_eq!(classify_datum(&f3, o, o, o).rank_class, RankClass::Rank0);
        assert_eq!(classify_datum(&f3, l, o, l).rank_class, RankClass::Rank2Nonsquare);
        assert_eq!(classify_datum(&f3, l, o, Elem(2)).rank_class, RankClass::Rank2Square);
        assert_eq!(classify_datum(&f3, l, o, o).rank_class, RankClass::Rank1);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(classify_datum(&f4, o, l, o).rank_class, RankClass::BNonzeroEpsPlus);
        assert_eq!(classify_datum(&f4, Elem(2), l, l).rank_class, RankClass::BNonzeroEpsMinus);
        assert_eq!(classify_datum(&f4, l, o, o).rank_class, RankClass::BZeroAcNonzero);
    }

    #[test]
    fn n_is_an_abelian_symplectic_subgroup() {
        let g = Gsp4::new(Field::new(3, 1).unwrap());
        let f = g.field().clone();
        let n = g.subgroup_n();
        assert_eq!(n.len(), 27);
        for a in &n {
            assert_eq!(g.multiplier(&a.entries), Some(Elem::ONE));
        }
        for x1 in f.elements() {
            for y2 in f.elements() {
                let a = g.n(x1, Elem(1), Elem(2));
                let b = g.n(Elem(2), y2, x1);
                let ab = g.mul(&a, &b);
                assert_eq!(ab, g.mul(&b, &a));
                assert_eq!(ab, g.n(f.add(x1, Elem(2)), f.add(Elem(1), y2), f.add(Elem(2), x1)));
            }
        }
    }

    #[test]
    fn auxiliary_subgroup_orders_q3() {
        let g = Gsp4::new(Field::new(3, 1).unwrap());
        assert_eq!(g.center().len(), 2);
        let all = g.enumerate(GroupKind::Full, 1 << 22).unwrap();
        let u = g.unipotent_radical_borel();
        assert_eq!(u.len(), 81);
        let mut u_codes: Vec<u64> = u.iter().map(|x| g.pack(&x.entries)).collect();
        u_codes.sort();
        u_codes.dedup();
        assert_eq!(u_codes.len(), 81);
        // the same set, found by filtering the whole group
        let filtered: Vec<u64> = all
            .packed()
            .iter()
            .copied()
            .filter(|&c| {
                let m = g.unpack(c);
                (0..4).all(|i| m[i][i] == Elem::ONE && (0..i).all(|j| m[i][j].is_zero()))
            })
            .collect();
        assert_eq!(filtered, u_codes);
        let k = g.klingen_radical();
        assert_eq!(k.len(), 27);
        for a in &k {
            for b in &k {
                assert!(k.contains(&g.mul(a, b)));
            }
        }
        let p = g.siegel_parabolic();
        assert_eq!(p.len(), 48 * 2 * 27);
        for x in &p {
            assert!(all.contains(g.pack(&x.entries)));
            assert!(x.entries[2][0].is_zero() && x.entries[3][1].is_zero());
        }
    }

    #[test]
    fn levi_multiplier_and_involution() {
        let g = Gsp4::new(Field::new(5, 1).unwrap());
        let f = g.field().clone();
        for a in [[Elem(1), Elem(2)], [Elem(3), Elem(4)]].iter().map(|r| [*r, [Elem(2), Elem(2)]]) {
            let ap = g.prime_involution(a).unwrap();
            assert_eq!(g.prime_involution(ap).unwrap(), a);
            for u in f.units() {
                let l = g.levi(a, u).unwrap();
                assert_eq!(g.multiplier(&l.entries), Some(u));
            }
        }
        assert!(g.prime_involution([[Elem(1), Elem(2)], [Elem(2), Elem(4)]]).is_none());
    }
}
