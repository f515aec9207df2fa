use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::{Elem, Field, SquareClass};

type Mat2 = [[Elem; 2]; 2];

/// Orbits of `X = [[y, z], [x, y]]` under `X -> u A X (A')^-1`.
///
/// These are the `G`-classes met by `N`: `n(x, y, z)` is conjugate to the
/// representative returned by [`n_orbit_representative`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Orbit2x2 {
    Zero,
    Rank1,
    /// Odd `q`, `y^2 - xz` a nonzero square.
    DetSquare,
    /// Odd `q`, `y^2 - xz` a nonsquare.
    DetNonsquare,
    /// Even `q`, invertible with `x = z = 0`.
    Scalar,
    /// Even `q`, invertible with `(x, z) != (0, 0)`.
    Unipotent,
}

impl Orbit2x2 {
    pub fn all(even: bool) -> [Orbit2x2; 4] {
        if even {
            [Orbit2x2::Zero, Orbit2x2::Rank1, Orbit2x2::Scalar, Orbit2x2::Unipotent]
        } else {
            [Orbit2x2::Zero, Orbit2x2::Rank1, Orbit2x2::DetSquare, Orbit2x2::DetNonsquare]
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Orbit2x2::Zero => "zero",
            Orbit2x2::Rank1 => "rank1",
            Orbit2x2::DetSquare => "det_square",
            Orbit2x2::DetNonsquare => "det_nonsquare",
            Orbit2x2::Scalar => "scalar",
            Orbit2x2::Unipotent => "unipotent",
        }
    }
}

pub fn canonical_form_2x2(f: &Field, x: Elem, y: Elem, z: Elem) -> Orbit2x2 {
    let det = f.sub(f.mul(y, y), f.mul(x, z));
    if x.is_zero() && y.is_zero() && z.is_zero() {
        Orbit2x2::Zero
    } else if det.is_zero() {
        Orbit2x2::Rank1
    } else if f.is_even() {
        if x.is_zero() && z.is_zero() {
            Orbit2x2::Scalar
        } else {
            Orbit2x2::Unipotent
        }
    } else if f.square_class(det).unwrap() == SquareClass::Square {
        Orbit2x2::DetSquare
    } else {
        Orbit2x2::DetNonsquare
    }
}

/// `(x, y, z)` of the representative: the identity, `z = 1`, `y = 1`, and
/// `(x, z) = (1, -xi)` for odd `q` or `(x, y, z) = (0, 1, 1)` for even `q`.
pub fn n_orbit_representative(f: &Field, o: Orbit2x2) -> (Elem, Elem, Elem) {
    let (zero, one) = (Elem::ZERO, Elem::ONE);
    match o {
        Orbit2x2::Zero => (zero, zero, zero),
        Orbit2x2::Rank1 => (zero, zero, one),
        Orbit2x2::DetSquare | Orbit2x2::Scalar => (zero, one, zero),
        Orbit2x2::DetNonsquare => (one, zero, f.neg(f.xi())),
        Orbit2x2::Unipotent => (zero, one, one),
    }
}

fn mul2(f: &Field, a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Elem::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = f.add(f.mul(a[i][0], b[0][j]), f.mul(a[i][1], b[1][j]));
        }
    }
    out
}

fn inv2(f: &Field, a: &Mat2) -> Option<Mat2> {
    let det = f.sub(f.mul(a[0][0], a[1][1]), f.mul(a[0][1], a[1][0]));
    let di = f.try_inv(det).ok()?;
    Some([[f.mul(di, a[1][1]), f.mul(di, f.neg(a[0][1]))], [f.mul(di, f.neg(a[1][0])), f.mul(di, a[0][0])]])
}

/// `A' = det(A)^-1 [[a, -b], [-c, d]]`.
fn prime(f: &Field, a: &Mat2) -> Option<Mat2> {
    let det = f.sub(f.mul(a[0][0], a[1][1]), f.mul(a[0][1], a[1][0]));
    let di = f.try_inv(det).ok()?;
    Some([[f.mul(di, a[0][0]), f.mul(di, f.neg(a[0][1]))], [f.mul(di, f.neg(a[1][0])), f.mul(di, a[1][1])]])
}

/// `u A X (A')^-1` applied to `X = [[y, z], [x, y]]`; the result has the same
/// shape and is returned as `(x, y, z)`.
pub fn act(f: &Field, a: &Mat2, u: Elem, xyz: (Elem, Elem, Elem)) -> Option<(Elem, Elem, Elem)> {
    let (x, y, z) = xyz;
    let m = [[y, z], [x, y]];
    let api = inv2(f, &prime(f, a)?)?;
    let r = mul2(f, &mul2(f, a, &m), &api);
    let r = [[f.mul(u, r[0][0]), f.mul(u, r[0][1])], [f.mul(u, r[1][0]), f.mul(u, r[1][1])]];
    (r[0][0] == r[1][1]).then_some((r[1][0], r[0][0], r[0][1]))
}

/// Orbits of the action on all `q^3` triples, each listed as sorted triple
/// indices `x q^2 + y q + z`; orbits are ordered by their least member.
pub fn exhaustive_orbits(f: &Field) -> Vec<Vec<usize>> {
    let q = f.order() as usize;
    let idx = |t: (Elem, Elem, Elem)| t.0.index() * q * q + t.1.index() * q + t.2.index();
    let mut moves: Vec<(Mat2, Elem)> = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let m = [[a, b], [c, d]];
                    if prime(f, &m).is_some() {
                        for u in f.units() {
                            moves.push((m, u));
                        }
                    }
                }
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; q * q * q];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for x in f.elements() {
        for y in f.elements() {
            for z in f.elements() {
                let start = (x, y, z);
                if orbit_of[idx(start)] != usize::MAX {
                    continue;
                }
                let id = orbits.len();
                let mut members: Vec<usize> = Vec::new();
                for (m, u) in &moves {
                    let t = act(f, m, *u, start).expect("the action preserves the shape");
                    let k = idx(t);
                    if orbit_of[k] == usize::MAX {
                        orbit_of[k] = id;
                        members.push(k);
                    }
                }
                members.sort_unstable();
                orbits.push(members);
            }
        }
    }
    orbits
}
