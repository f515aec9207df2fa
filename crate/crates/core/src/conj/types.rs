use crate::ffield::Elem;
use crate::gsp4::{TorusElement, TorusStructure};

/// Class families met by `tn` with `t` not central.
///
/// Odd `q`: `D0`/`D1` for split tori, `F0`/`F1` for nonsplit ones, the index
/// recording whether `ax + by + cz` vanishes (`0`) or not (`1`). Even `q`:
/// `C2`/`D2` (split) and `C4`/`D4` (nonsplit), in the same order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TnFamily {
    D0,
    D1,
    F0,
    F1,
    C2,
    D2,
    C4,
    D4,
}

impl TnFamily {
    pub fn name(self) -> &'static str {
        match self {
            TnFamily::D0 => "D0",
            TnFamily::D1 => "D1",
            TnFamily::F0 => "F0",
            TnFamily::F1 => "F1",
            TnFamily::C2 => "C2",
            TnFamily::D2 => "D2",
            TnFamily::C4 => "C4",
            TnFamily::D4 => "D4",
        }
    }
}

/// Eigenvalue data, normalized so that equal labels mean equal data up to the
/// `+-` and Galois symmetries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TnParameter {
    /// `{a_+, a_-}` in `F_q`, sorted by index.
    Pair(Elem, Elem),
    /// `{a, a^q}` in `F_{q^2}`, sorted by index.
    Galois(Elem, Elem),
    /// `i` with eigenvalues `gamma^(+-i)` or `eta^(+-i)`, reduced to `min(i, m - i)`.
    Exponent(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TnType {
    /// `s = 0`: `tn` is a scalar times an element of `N`.
    Central,
    Typed {
        family: TnFamily,
        parameter: TnParameter,
    },
}

fn sorted(a: Elem, b: Elem) -> (Elem, Elem) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Type of `t n(x, y, z)`. For even `q` the label describes `mu^(-1/2) t n`.
pub fn tn_type(torus: &TorusStructure, t: &TorusElement, x: Elem, y: Elem, z: Elem) -> TnType {
    if t.s.is_zero() {
        return TnType::Central;
    }
    let f = torus.field();
    let zero_form = torus.datum().form(f, x, y, z).is_zero();
    if f.is_even() {
        let (_, k) = torus.even_decomposition(t.r, t.s).expect("even torus element decomposes");
        let m = torus.sp_order();
        let i = k.min(m - k);
        let family = match (torus.is_split(), zero_form) {
            (true, true) => TnFamily::C2,
            (true, false) => TnFamily::D2,
            (false, true) => TnFamily::C4,
            (false, false) => TnFamily::D4,
        };
        return TnType::Typed { family, parameter: TnParameter::Exponent(i) };
    }
    if torus.is_split() {
        let (p, m) = torus.alpha_pm(t.r, t.s).unwrap();
        let (lo, hi) = sorted(p, m);
        let family = if zero_form { TnFamily::D0 } else { TnFamily::D1 };
        TnType::Typed { family, parameter: TnParameter::Pair(lo, hi) }
    } else {
        let (a, aq) = torus.eigenvalues(t.r, t.s);
        let (lo, hi) = sorted(a, aq);
        let family = if zero_form { TnFamily::F0 } else { TnFamily::F1 };
        TnType::Typed { family, parameter: TnParameter::Galois(lo, hi) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;
    use crate::gsp4::Gsp4;

    #[test]
    fn identity_n_gives_zero_form_family() {
        let g = Gsp4::new(Field::new(3, 1).unwrap());
        let o = Elem::ZERO;
        let split = g.classify_datum(Elem(1), o, Elem(2));
        let t = g.torus(&split).unwrap();
        let x = t.elements().iter().find(|e| !e.s.is_zero()).unwrap();
        let ty = tn_type(&t, x, o, o, o);
        assert!(matches!(ty, TnType::Typed { family: TnFamily::D0, .. }));
        let ns = g.classify_datum(Elem(1), o, Elem(1));
        let t = g.torus(&ns).unwrap();
        let x = t.elements().iter().find(|e| !e.s.is_zero()).unwrap();
        assert!(matches!(tn_type(&t, x, Elem(1), o, o), TnType::Typed { family: TnFamily::F1, .. }));
        assert_eq!(tn_type(&t, t.find(Elem(1), o).unwrap(), o, o, o), TnType::Central);
    }

    #[test]
    fn even_nonsplit_families() {
        let g = Gsp4::new(Field::new(2, 2).unwrap());
        let d = g.all_data().into_iter().find(|d| d.is_nondegenerate() && !d.split()).unwrap();
        let t = g.torus(&d).unwrap();
        let x = t.elements().iter().find(|e| !e.s.is_zero()).unwrap();
        let f = g.field();
        // pick n with a nonzero form value
        let (nx, ny, nz) =
            if !d.a.is_zero() { (Elem::ONE, Elem::ZERO, Elem::ZERO) } else { (Elem::ZERO, Elem::ONE, Elem::ZERO) };
        assert!(!d.form(f, nx, ny, nz).is_zero());
        assert!(matches!(tn_type(&t, x, nx, ny, nz), TnType::Typed { family: TnFamily::D4, .. }));
    }
}
