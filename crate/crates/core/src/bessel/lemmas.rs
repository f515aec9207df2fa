//! Exponential sums of `psi(-ax - by - cz)` over the loci of `y^2 - xz`.
//!
//! Each sum has a closed form by case and a brute-force evaluation in
//! `Z[zeta_p]`; the two must agree.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::conj::{canonical_form_2x2, Orbit2x2};
use crate::ffield::{Elem, Field};
use crate::gsp4::{classify_datum, RankClass};
use crate::{Error, Result};

fn require_odd(f: &Field) -> Result<()> {
    if f.is_even() {
        Err(Error::WrongParity { expected: "odd" })
    } else {
        Ok(())
    }
}

fn require_even(f: &Field) -> Result<()> {
    if f.is_even() {
        Ok(())
    } else {
        Err(Error::WrongParity { expected: "even" })
    }
}

/// `sum psi(-ax - by - cz)` over the triples with the given orbit label,
/// evaluated in `Z[zeta_p]` and reduced to an integer.
pub fn brute_force_sum(f: &Field, a: Elem, b: Elem, c: Elem, locus: Orbit2x2) -> Result<i64> {
    let p = f.characteristic() as usize;
    let mut counts = vec![0i64; p];
    for x in f.elements() {
        for y in f.elements() {
            for z in f.elements() {
                if canonical_form_2x2(f, x, y, z) != locus {
                    continue;
                }
                let form = f.add(f.add(f.mul(a, x), f.mul(b, y)), f.mul(c, z));
                counts[f.trace(f.neg(form)) as usize] += 1;
            }
        }
    }
    // sum_j counts[j] zeta_p^j is rational iff counts[1..] are all equal
    if counts[1..].iter().any(|&k| k != counts[1]) {
        return Err(Error::Consistency(format!("character sum over {} is not rational", locus.name())));
    }
    Ok(counts[0] - if p > 1 { counts[1] } else { 0 })
}

/// `sum psi(-ax - by - cz)` over all of `F_q^3`.
pub fn total_sum(f: &Field, a: Elem, b: Elem, c: Elem) -> i64 {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        (f.order() as i64).pow(3)
    } else {
        0
    }
}

/// Sum over the nonzero cone `y^2 = xz`.
pub fn cone_sum(f: &Field, a: Elem, b: Elem, c: Elem) -> i64 {
    let q = f.order() as i64;
    match classify_datum(f, a, b, c).rank_class {
        RankClass::Rank0 | RankClass::AllZero => q * q - 1,
        RankClass::Rank1 | RankClass::BZeroAcNonzero => -1,
        RankClass::Rank2Square | RankClass::BNonzeroEpsPlus => q - 1,
        RankClass::Rank2Nonsquare | RankClass::BNonzeroEpsMinus => -q - 1,
    }
}

/// Sum over `y^2 - xz` a nonzero square (odd `q`).
pub fn square_locus_sum(f: &Field, a: Elem, b: Elem, c: Elem) -> Result<i64> {
    require_odd(f)?;
    let q = f.order() as i64;
    Ok(match classify_datum(f, a, b, c).rank_class {
        RankClass::Rank0 => q * (q * q - 1) / 2,
        RankClass::Rank1 => q * (q - 1) / 2,
        RankClass::Rank2Square => -q,
        _ => 0,
    })
}

/// Sum over `y^2 - xz` a nonsquare (odd `q`), as the total minus the other loci.
pub fn nonsquare_locus_sum(f: &Field, a: Elem, b: Elem, c: Elem) -> Result<i64> {
    Ok(total_sum(f, a, b, c) - 1 - cone_sum(f, a, b, c) - square_locus_sum(f, a, b, c)?)
}

/// The nonsquare-locus sum read off case by case.
pub fn nonsquare_locus_closed_form(f: &Field, a: Elem, b: Elem, c: Elem) -> Result<i64> {
    require_odd(f)?;
    let q = f.order() as i64;
    Ok(match classify_datum(f, a, b, c).rank_class {
        RankClass::Rank0 => q * (q - 1) * (q - 1) / 2,
        RankClass::Rank1 => -q * (q - 1) / 2,
        RankClass::Rank2Square => 0,
        _ => q,
    })
}

/// Even `q`: the sums over `y^2 - xz != 0` with `(x, z) = (0, 0)` and with
/// `(x, z) != (0, 0)`.
pub fn even_locus_sums(f: &Field, a: Elem, b: Elem, c: Elem) -> Result<(i64, i64)> {
    require_even(f)?;
    let q = f.order() as i64;
    Ok(match classify_datum(f, a, b, c).rank_class {
        RankClass::AllZero => (q - 1, (q - 1) * (q * q - 1)),
        RankClass::BZeroAcNonzero => (q - 1, 1 - q),
        RankClass::BNonzeroEpsPlus => (-1, 1 - q),
        _ => (-1, q + 1),
    })
}

/// Closed-form sums indexed like [`Orbit2x2::all`]; the zero orbit contributes `1`.
pub fn orbit_sums(f: &Field, a: Elem, b: Elem, c: Elem) -> [i64; 4] {
    let cone = cone_sum(f, a, b, c);
    if f.is_even() {
        let (s, u) = even_locus_sums(f, a, b, c).unwrap();
        [1, cone, s, u]
    } else {
        [1, cone, square_locus_sum(f, a, b, c).unwrap(), nonsquare_locus_closed_form(f, a, b, c).unwrap()]
    }
}

/// Number of `(x, y)` with `y^2 - xi x^2 = 1` (odd `q`).
pub fn norm_one_count(f: &Field) -> Result<u64> {
    require_odd(f)?;
    let xi = f.xi();
    let mut n = 0;
    for x in f.elements() {
        for y in f.elements() {
            if f.sub(f.mul(y, y), f.mul(xi, f.mul(x, x))) == Elem::ONE {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// `|{x^2 + x : x in F_q}|` by enumeration (even `q`).
pub fn artin_schreier_image_size(f: &Field) -> Result<u64> {
    require_even(f)?;
    let mut image: Vec<Elem> = f.elements().map(|x| f.add(f.mul(x, x), x)).collect();
    image.sort_unstable();
    image.dedup();
    Ok(image.len() as u64)
}

/// A triple where the closed form and the direct sum disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaMismatch {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub locus: &'static str,
    pub closed_form: i64,
    pub brute_force: i64,
}

/// Checks every closed form against brute force for all `q^3` triples.
/// Returns the number of comparisons made, or the first mismatch.
pub fn check_all_triples(f: &Field) -> Result<core::result::Result<usize, LemmaMismatch>> {
    let mut checked = 0;
    let loci = Orbit2x2::all(f.is_even());
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                let mut expected: Vec<(Orbit2x2, i64)> =
                    loci[1..].iter().copied().zip(orbit_sums(f, a, b, c)[1..].iter().copied()).collect();
                if !f.is_even() {
                    // the subtraction route must land on the same value
                    expected.push((Orbit2x2::DetNonsquare, nonsquare_locus_sum(f, a, b, c)?));
                }
                for (locus, closed) in expected {
                    let brute = brute_force_sum(f, a, b, c, locus)?;
                    checked += 1;
                    if brute != closed {
                        return Ok(Err(LemmaMismatch {
                            a: a.0 as u32,
                            b: b.0 as u32,
                            c: c.0 as u32,
                            locus: locus.name(),
                            closed_form: closed,
                            brute_force: brute,
                        }));
                    }
                }
            }
        }
    }
    Ok(Ok(checked))
}
