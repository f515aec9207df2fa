//! Symbolic rows of the Fourier-coefficient tables of `GSp(4, q)` and the
//! constant entries of the Bessel tables, instantiated at a given `q`.

use alloc::string::String;
use alloc::vec::Vec;

/// `(c0 + c1 q + ... + c4 q^4) / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: [i64; 5],
    pub den: i64,
}

impl Poly {
    pub const fn new(coeffs: [i64; 5], den: i64) -> Poly {
        Poly { coeffs, den }
    }

    /// `c0 + c1 q`.
    pub const fn linear(c0: i64, c1: i64) -> Poly {
        Poly { coeffs: [c0, c1, 0, 0, 0], den: 1 }
    }

    pub fn eval(&self, q: i64) -> Option<i64> {
        let num = self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * q + c);
        (num % self.den == 0).then_some(num / self.den)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let body = match (k, mag) {
                (0, m) => alloc::format!("{m}"),
                (1, 1) => "q".into(),
                (1, m) => alloc::format!("{m}q"),
                (_, 1) => alloc::format!("q^{k}"),
                (_, m) => alloc::format!("{m}q^{k}"),
            };
            out.push_str(sign);
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        if self.den != 1 {
            out = alloc::format!("({out})/{}", self.den);
        }
        out
    }
}

/// A Bessel-table entry of the form `constant + delta * [j = 0]`, where `j`
/// indexes the character of `T cap Sp(4, q)`. Odd-`q` entries use `delta = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaEntry {
    pub constant: i64,
    pub delta: i64,
}

impl DeltaEntry {
    pub fn at(&self, j: u32) -> i64 {
        self.constant + if j == 0 { self.delta } else { 0 }
    }
}

/// One family of irreducible characters.
#[derive(Clone, Copy, Debug)]
pub struct SymbolicRow {
    pub name: &'static str,
    pub degree: Poly,
    pub dims: [Poly; 4],
    pub cuspidal: bool,
    pub generic: bool,
    /// Bessel dimensions in the split and nonsplit columns, where they do not
    /// depend on the family parameters.
    pub bessel: [Option<DeltaEntry>; 2],
}

const fn l(c0: i64, c1: i64) -> Poly {
    Poly::linear(c0, c1)
}

const fn k(c: i64) -> Option<DeltaEntry> {
    Some(DeltaEntry { constant: c, delta: 0 })
}

const fn kd(c: i64, d: i64) -> Option<DeltaEntry> {
    Some(DeltaEntry { constant: c, delta: d })
}

const P_X1: Poly = Poly::new([1, 2, 2, 2, 1], 1);
const P_Q4M1: Poly = Poly::new([-1, 0, 0, 0, 1], 1);
const P_Q2M1SQ: Poly = Poly::new([1, 0, -2, 0, 1], 1);
const P_X5: Poly = Poly::new([1, -2, 2, -2, 1], 1);
const P_QP1Q2P1: Poly = Poly::new([1, 1, 1, 1, 0], 1);
const P_QQP1Q2P1: Poly = Poly::new([0, 1, 1, 1, 1], 1);
const P_QM1Q2P1: Poly = Poly::new([-1, 1, -1, 1, 0], 1);
const P_QQM1Q2P1: Poly = Poly::new([0, -1, 1, -1, 1], 1);
const P_HALF_QP1SQ: Poly = Poly::new([0, 1, 2, 1, 0], 2);
const P_HALF_QM1SQ: Poly = Poly::new([0, 1, -2, 1, 0], 2);
const P_HALF_Q2P1: Poly = Poly::new([0, 1, 0, 1, 0], 2);
const P_Q4: Poly = Poly::new([0, 0, 0, 0, 1], 1);
const P_ONE: Poly = Poly::new([1, 0, 0, 0, 0], 1);

const fn row(
    name: &'static str,
    degree: Poly,
    dims: [Poly; 4],
    cuspidal: bool,
    generic: bool,
    bessel: [Option<DeltaEntry>; 2],
) -> SymbolicRow {
    SymbolicRow { name, degree, dims, cuspidal, generic, bessel }
}

/// Odd `q`: columns rank 0, rank 1, rank 2 square, rank 2 nonsquare.
pub const ODD_ROWS: [SymbolicRow; 24] = [
    row("X1", P_X1, [l(4, 4), l(3, 1), l(3, 1), l(1, 1)], false, true, [None, k(1)]),
    row("X2", P_Q4M1, [l(-2, 2), l(-1, 1), l(1, 1), l(-1, 1)], false, true, [None, None]),
    row("X3", P_Q4M1, [l(0, 0), l(1, 1), l(-1, 1), l(1, 1)], false, true, [k(1), k(1)]),
    row("X4", P_Q2M1SQ, [l(0, 0), l(-1, 1), l(-1, 1), l(1, 1)], true, true, [k(1), k(1)]),
    row("X5", P_X5, [l(0, 0), l(-1, 1), l(-1, 1), l(-3, 1)], true, true, [k(1), None]),
    row("chi1", P_QP1Q2P1, [l(2, 2), l(1, 0), l(2, 0), l(0, 0)], false, false, [None, k(0)]),
    row("chi2", P_QQP1Q2P1, [l(2, 2), l(2, 1), l(1, 1), l(1, 1)], false, true, [None, k(1)]),
    row("chi3", P_QP1Q2P1, [l(3, 1), l(2, 0), l(1, 0), l(1, 0)], false, false, [None, None]),
    row("chi4", P_QQP1Q2P1, [l(1, 3), l(1, 1), l(2, 1), l(0, 1)], false, true, [None, None]),
    row("chi5", P_QM1Q2P1, [l(-1, 1), l(0, 0), l(1, 0), l(1, 0)], false, false, [None, None]),
    row("chi6", P_QQM1Q2P1, [l(-1, 1), l(-1, 1), l(0, 1), l(-2, 1)], false, true, [None, None]),
    row("chi7", P_QM1Q2P1, [l(0, 0), l(1, 0), l(0, 0), l(2, 0)], false, false, [k(0), None]),
    row("chi8", P_QQM1Q2P1, [l(0, 0), l(0, 1), l(-1, 1), l(-1, 1)], false, true, [k(1), None]),
    row("tau1", Poly::new([1, 0, 1, 0, 0], 1), [l(2, 0), l(1, 0), l(0, 0), l(0, 0)], false, false, [k(0), k(0)]),
    row("tau2", Poly::new([0, 1, 0, 1, 0], 1), [l(1, 1), l(1, 0), l(1, 0), l(1, 0)], false, false, [None, None]),
    row("tau3", Poly::new([0, 0, 1, 0, 1], 1), [l(0, 2), l(0, 1), l(1, 1), l(-1, 1)], false, true, [None, None]),
    row("tau4", Poly::new([-1, 0, 1, 0, 0], 1), [l(0, 0), l(1, 0), l(0, 0), l(0, 0)], false, false, [k(0), k(0)]),
    row("tau5", Poly::new([0, 0, -1, 0, 1], 1), [l(0, 0), l(0, 1), l(-1, 1), l(1, 1)], false, true, [k(1), k(1)]),
    row("theta1", P_HALF_QP1SQ, [l(1, 1), l(1, 0), l(1, 0), l(0, 0)], false, false, [None, k(0)]),
    row("theta2", P_HALF_QM1SQ, [l(0, 0), l(0, 0), l(0, 0), l(1, 0)], true, false, [k(0), None]),
    row("theta3", P_HALF_Q2P1, [l(1, 0), l(1, 0), l(0, 0), l(1, 0)], false, false, [k(0), None]),
    row("theta4", P_HALF_Q2P1, [l(0, 1), l(0, 0), l(1, 0), l(0, 0)], false, false, [None, k(0)]),
    row("theta5", P_Q4, [l(0, 1), l(0, 1), l(0, 1), l(0, 1)], false, true, [None, None]),
    row("theta0", P_ONE, [l(1, 0), l(0, 0), l(0, 0), l(0, 0)], false, false, [k(0), k(0)]),
];

/// Even `q`: columns `b = 0, (a, c) = 0`; `b = 0, (a, c) != 0`;
/// `b != 0, eps = 1`; `b != 0, eps = -1`. Rows are characters of `Sp(4, q)`.
pub const EVEN_ROWS: [SymbolicRow; 19] = [
    row("theta0", P_ONE, [l(1, 0), l(0, 0), l(0, 0), l(0, 0)], false, false, [k(0), k(0)]),
    row("theta1", P_HALF_QP1SQ, [l(1, 1), l(1, 0), l(1, 0), l(0, 0)], false, false, [kd(0, 1), k(0)]),
    row("theta2", P_HALF_Q2P1, [l(1, 0), l(1, 0), l(0, 0), l(1, 0)], false, false, [k(0), kd(0, 1)]),
    row("theta3", P_HALF_Q2P1, [l(0, 1), l(0, 0), l(1, 0), l(0, 0)], false, false, [kd(0, 1), k(0)]),
    row("theta4", P_Q4, [l(0, 1), l(0, 1), l(0, 1), l(0, 1)], false, true, [kd(1, 1), kd(1, -1)]),
    row("theta5", P_HALF_QM1SQ, [l(0, 0), l(0, 0), l(0, 0), l(1, 0)], true, false, [k(0), kd(0, 1)]),
    row("chi1", P_X1, [l(4, 4), l(3, 1), l(3, 1), l(1, 1)], false, true, [None, k(1)]),
    row("chi2", P_Q4M1, [l(-2, 2), l(-1, 1), l(1, 1), l(-1, 1)], false, true, [None, None]),
    row("chi3", P_Q4M1, [l(0, 0), l(1, 1), l(-1, 1), l(1, 1)], false, true, [k(1), k(1)]),
    row("chi4", P_X5, [l(0, 0), l(-1, 1), l(-1, 1), l(-3, 1)], true, true, [k(1), None]),
    row("chi5", P_Q2M1SQ, [l(0, 0), l(-1, 1), l(-1, 1), l(1, 1)], true, true, [k(1), k(1)]),
    row("chi6", P_QP1Q2P1, [l(3, 1), l(2, 0), l(1, 0), l(1, 0)], false, false, [kd(0, 1), kd(0, 1)]),
    row("chi7", P_QP1Q2P1, [l(2, 2), l(1, 0), l(2, 0), l(0, 0)], false, false, [None, k(0)]),
    row("chi8", P_QM1Q2P1, [l(-1, 1), l(0, 0), l(1, 0), l(1, 0)], false, false, [kd(0, 1), kd(0, 1)]),
    row("chi9", P_QM1Q2P1, [l(0, 0), l(1, 0), l(0, 0), l(2, 0)], false, false, [k(0), None]),
    row("chi10", P_QQP1Q2P1, [l(1, 3), l(1, 1), l(2, 1), l(0, 1)], false, true, [None, kd(1, -1)]),
    row("chi11", P_QQP1Q2P1, [l(2, 2), l(2, 1), l(1, 1), l(1, 1)], false, true, [None, k(1)]),
    row("chi12", P_QQM1Q2P1, [l(-1, 1), l(-1, 1), l(0, 1), l(-2, 1)], false, true, [kd(1, 1), None]),
    row("chi13", P_QQM1Q2P1, [l(0, 0), l(0, 1), l(-1, 1), l(-1, 1)], false, true, [k(1), None]),
];

pub fn symbolic_rows(even: bool) -> &'static [SymbolicRow] {
    if even {
        &EVEN_ROWS
    } else {
        &ODD_ROWS
    }
}

/// `(degree, dims, cuspidal, generic)` of a row at `q`, or `None` if some
/// entry is negative or not an integer (the family is empty there).
pub fn instantiate(r: &SymbolicRow, q: i64) -> Option<(u64, [u64; 4], bool, bool)> {
    let degree = r.degree.eval(q).filter(|&d| d > 0)?;
    let mut dims = [0u64; 4];
    for (d, p) in dims.iter_mut().zip(&r.dims) {
        *d = u64::try_from(p.eval(q)?).ok()?;
    }
    Some((degree as u64, dims, r.cuspidal, r.generic))
}

/// Names of the rows whose instantiation at `q` has the given key.
pub fn matching_rows(even: bool, q: i64, key: (u64, [u64; 4], bool, bool)) -> Vec<&'static str> {
    symbolic_rows(even).iter().filter(|r| instantiate(r, q) == Some(key)).map(|r| r.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_and_evaluation() {
        assert_eq!(P_X1.eval(3), Some(160));
        assert_eq!(P_HALF_QM1SQ.eval(3), Some(6));
        assert_eq!(P_HALF_QP1SQ.render(), "(q^3+2q^2+q)/2");
        assert_eq!(l(-3, 1).render(), "q-3");
    }

    #[test]
    fn small_q_spot_rows() {
        let theta5 = ODD_ROWS.iter().find(|r| r.name == "theta5").unwrap();
        assert_eq!(instantiate(theta5, 3), Some((81, [3, 3, 3, 3], false, true)));
        let x5 = ODD_ROWS.iter().find(|r| r.name == "X5").unwrap();
        assert_eq!(instantiate(x5, 3), Some((40, [0, 2, 2, 0], true, true)));
        let chi4 = EVEN_ROWS.iter().find(|r| r.name == "chi4").unwrap();
        assert_eq!(instantiate(chi4, 2), None);
        assert_eq!(matching_rows(true, 2, (16, [2, 2, 2, 2], false, true)), ["theta4"]);
    }
}
