use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use super::lemmas::orbit_sums;
use crate::chartab::CharacterTable;
use crate::conj::{n_orbit_representative, ClassData, Orbit2x2};
use crate::ffield::{ComplexRoot, Elem, Field};
use crate::gsp4::{BesselDatum, GroupElement, Gsp4, TorusCharacter, TorusElement, TorusStructure};
use crate::{Error, Result};

/// Multiset of `(class, k)` with `k` the exponent of `zeta_e` weighting the class.
type Histogram = Vec<(usize, u32, i64)>;

fn histogram(entries: impl IntoIterator<Item = (usize, u32)>) -> Histogram {
    let mut counts: BTreeMap<(usize, u32), i64> = BTreeMap::new();
    for key in entries {
        *counts.entry(key).or_insert(0) += 1;
    }
    counts.into_iter().map(|((c, k), n)| (c, k, n)).collect()
}

/// Character-table data shared by the Hom-space computations of one group.
#[derive(Clone, Debug)]
pub struct BesselContext<'a> {
    cd: &'a ClassData,
    ct: &'a CharacterTable,
    e: u32,
    n_classes: Vec<usize>,
    omega: Vec<Vec<(Elem, ComplexRoot)>>,
}

/// `R = TN` for one datum with the classes of its elements tabulated.
#[derive(Clone, Debug)]
pub struct BesselModel {
    torus: TorusStructure,
    // one histogram per torus element, over n in N: class of tn and psi(-form)
    per_t: Vec<Histogram>,
}

impl BesselModel {
    pub fn torus(&self) -> &TorusStructure {
        &self.torus
    }

    pub fn datum(&self) -> &BesselDatum {
        self.torus.datum()
    }
}

impl<'a> BesselContext<'a> {
    pub fn new(cd: &'a ClassData, ct: &'a CharacterTable) -> Result<BesselContext<'a>> {
        if ct.classes() != &cd.summary() {
            return Err(Error::Consistency("character table and class data disagree".into()));
        }
        let g = cd.group();
        let f = g.field();
        let e = ct.conductor();
        if !e.is_multiple_of(f.characteristic()) {
            return Err(Error::Consistency(format!("conductor {e} has no p-th roots of unity")));
        }
        let mut n_classes = Vec::with_capacity(f.order().pow(3) as usize);
        for x in f.elements() {
            for y in f.elements() {
                for z in f.elements() {
                    n_classes.push(cd.class_of(&g.n(x, y, z)).ok_or(Error::NotInGroup)?);
                }
            }
        }
        let omega = (0..ct.len()).map(|row| ct.central_character(cd, row)).collect::<Result<Vec<_>>>()?;
        Ok(BesselContext { cd, ct, e, n_classes, omega })
    }

    pub fn classes(&self) -> &ClassData {
        self.cd
    }

    pub fn table(&self) -> &CharacterTable {
        self.ct
    }

    pub fn group(&self) -> &Gsp4 {
        self.cd.group()
    }

    pub fn field(&self) -> &Field {
        self.cd.group().field()
    }

    fn q(&self) -> u64 {
        self.field().order() as u64
    }

    fn n_index(&self, x: Elem, y: Elem, z: Elem) -> usize {
        let q = self.q() as usize;
        (x.index() * q + y.index()) * q + z.index()
    }

    fn exp_in(&self, r: ComplexRoot) -> Result<u32> {
        if !self.e.is_multiple_of(r.order()) {
            return Err(Error::Consistency(format!("zeta_{} is not a power of zeta_{}", r.order(), self.e)));
        }
        Ok(r.exponent_in(self.e))
    }

    /// Exponent of `psi(v)` as a power of `zeta_e`.
    fn psi_exp(&self, v: Elem) -> u32 {
        self.field().trace(v) * (self.e / self.field().characteristic())
    }

    fn class_of(&self, x: &GroupElement) -> Result<usize> {
        self.cd.class_of(x).ok_or(Error::NotInGroup)
    }

    /// Adds `sum n zeta^(k + shift) theta(class)` to `acc`.
    fn accumulate(&self, acc: &mut [i64], row: usize, hist: &Histogram, shift: u32) {
        let e = self.e as usize;
        for &(class, k, n) in hist {
            let s = (k + shift) as usize;
            for &(m, c) in self.ct.value_terms(row, class) {
                acc[(m as usize + s) % e] += n * c;
            }
        }
    }

    /// `acc / order`, required to be a nonnegative integer.
    fn exact_average(&self, acc: &[i64], order: u64, what: &str) -> Result<u64> {
        let v = self.ct.ring().from_group_ring(acc);
        let total =
            v.as_integer().ok_or_else(|| Error::Consistency(format!("{what}: the character sum is not rational")))?;
        if total < 0 || total % order as i64 != 0 {
            return Err(Error::Consistency(format!("{what}: {total} / {order} is not a nonnegative integer")));
        }
        Ok((total / order as i64) as u64)
    }

    fn rational(&self, acc: &[i64], denom: u64, what: &str) -> Result<Ratio<i64>> {
        let v = self.ct.ring().from_group_ring(acc);
        let total =
            v.as_integer().ok_or_else(|| Error::Consistency(format!("{what}: the character sum is not rational")))?;
        Ok(Ratio::new(total, denom as i64))
    }

    /// Central character of a row as `(u, omega(u))` over the units.
    pub fn central_character(&self, row: usize) -> &[(Elem, ComplexRoot)] {
        &self.omega[row]
    }

    /// Histogram of `n(x, y, z)` weighted by `psi(-scale (ax + by + cz))`.
    fn n_histogram(&self, a: Elem, b: Elem, c: Elem, scale: Elem) -> Histogram {
        let f = self.field();
        let mut entries = Vec::with_capacity(self.n_classes.len());
        for x in f.elements() {
            for y in f.elements() {
                for z in f.elements() {
                    let form = f.add(f.add(f.mul(a, x), f.mul(b, y)), f.mul(c, z));
                    let k = self.psi_exp(f.neg(f.mul(scale, form)));
                    entries.push((self.n_classes[self.n_index(x, y, z)], k));
                }
            }
        }
        histogram(entries)
    }

    /// `dim Hom_N(V, C_{a,b,c}) = q^-3 sum psi(-ax - by - cz) theta(n(x, y, z))`.
    pub fn hom_dim_n(&self, row: usize, a: Elem, b: Elem, c: Elem) -> Result<u64> {
        self.hom_dim_n_scaled(row, a, b, c, Elem::ONE)
    }

    /// As [`BesselContext::hom_dim_n`] with `psi` replaced by `x -> psi(lambda x)`.
    pub fn hom_dim_n_scaled(&self, row: usize, a: Elem, b: Elem, c: Elem, lambda: Elem) -> Result<u64> {
        let hist = self.n_histogram(a, b, c, lambda);
        let mut acc = vec![0i64; self.e as usize];
        self.accumulate(&mut acc, row, &hist, 0);
        self.exact_average(&acc, self.q().pow(3), "Hom_N")
    }

    /// `dim Hom_N` of every row for one datum.
    pub fn hom_dims_n(&self, a: Elem, b: Elem, c: Elem) -> Result<Vec<u64>> {
        let hist = self.n_histogram(a, b, c, Elem::ONE);
        (0..self.ct.len())
            .map(|row| {
                let mut acc = vec![0i64; self.e as usize];
                self.accumulate(&mut acc, row, &hist, 0);
                self.exact_average(&acc, self.q().pow(3), "Hom_N")
            })
            .collect()
    }

    /// `dim Hom_N` from the four orbit representatives weighted by the closed
    /// form sums. `f` may differ from the group's field in its choice of `xi`.
    pub fn hom_dim_n_by_orbits(&self, row: usize, f: &Field, a: Elem, b: Elem, c: Elem) -> Result<u64> {
        let g = self.group();
        let ring = self.ct.ring();
        let sums = orbit_sums(f, a, b, c);
        let mut total = ring.zero();
        for (o, w) in Orbit2x2::all(f.is_even()).into_iter().zip(sums) {
            let (x, y, z) = n_orbit_representative(f, o);
            let class = self.class_of(&g.n(x, y, z))?;
            total += &self.ct.value(row, class).scale(w);
        }
        let total =
            total.as_integer().ok_or_else(|| Error::Consistency("Hom_N by orbits: the sum is not rational".into()))?;
        let q3 = self.q().pow(3) as i64;
        if total < 0 || total % q3 != 0 {
            return Err(Error::Consistency(format!("Hom_N by orbits: {total} / {q3} is not a nonnegative integer")));
        }
        Ok((total / q3) as u64)
    }

    /// `dim Hom_H(V, lambda)` for every row, with `H` listed with the values of `lambda`.
    fn hom_dims_subgroup(&self, elements: &[GroupElement], lambda: impl Fn(&GroupElement) -> Elem) -> Result<Vec<u64>> {
        let f = self.field();
        let entries = elements
            .iter()
            .map(|h| Ok((self.class_of(h)?, self.psi_exp(f.neg(lambda(h))))))
            .collect::<Result<Vec<_>>>()?;
        let hist = histogram(entries);
        (0..self.ct.len())
            .map(|row| {
                let mut acc = vec![0i64; self.e as usize];
                self.accumulate(&mut acc, row, &hist, 0);
                self.exact_average(&acc, elements.len() as u64, "Hom_H")
            })
            .collect()
    }

    /// `dim Hom_U(V, psi_U)` for `psi_U(u) = psi(u_12 + u_23)`, nondegenerate on
    /// both simple root groups of the upper unitriangular `U`.
    pub fn whittaker_dims(&self) -> Result<Vec<u64>> {
        let f = self.field();
        let u = self.group().unipotent_radical_borel();
        self.hom_dims_subgroup(&u, |h| f.add(h.entries[0][1], h.entries[1][2]))
    }

    /// Generic rows; a Whittaker space of dimension above one is an error.
    pub fn generic_flags(&self) -> Result<Vec<bool>> {
        self.whittaker_dims()?
            .into_iter()
            .enumerate()
            .map(|(row, d)| match d {
                0 | 1 => Ok(d == 1),
                _ => Err(Error::Consistency(format!("row {row}: Whittaker space of dimension {d}"))),
            })
            .collect()
    }

    /// Rows without vectors fixed by the Siegel radical `N` or the Klingen radical.
    pub fn cuspidal_flags(&self) -> Result<Vec<bool>> {
        let zero = Elem::ZERO;
        let siegel = self.hom_dims_n(zero, zero, zero)?;
        let klingen = self.hom_dims_subgroup(&self.group().klingen_radical(), |_| Elem::ZERO)?;
        Ok(siegel.iter().zip(&klingen).map(|(&s, &k)| s == 0 && k == 0).collect())
    }

    pub fn bessel_model(&self, datum: &BesselDatum) -> Result<BesselModel> {
        self.bessel_model_scaled(datum, Elem::ONE)
    }

    /// `R` with `psi` replaced by `x -> psi(lambda x)` on `N`.
    pub fn bessel_model_scaled(&self, datum: &BesselDatum, lambda: Elem) -> Result<BesselModel> {
        let g = self.group();
        let f = self.field();
        let torus = g.torus(datum)?;
        let n: Vec<(GroupElement, u32)> = {
            let mut out = Vec::with_capacity(self.n_classes.len());
            for x in f.elements() {
                for y in f.elements() {
                    for z in f.elements() {
                        out.push((g.n(x, y, z), self.psi_exp(f.neg(f.mul(lambda, datum.form(f, x, y, z))))));
                    }
                }
            }
            out
        };
        let per_t = torus
            .elements()
            .iter()
            .map(|t| {
                let entries = n
                    .iter()
                    .map(|(m, k)| Ok((self.class_of(&g.mul(&t.element, m))?, *k)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(histogram(entries))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BesselModel { torus, per_t })
    }

    /// Whether `chi|_Z` is the central character of the row.
    pub fn central_match(&self, row: usize, torus: &TorusStructure, chi: TorusCharacter) -> Result<bool> {
        for &(u, w) in &self.omega[row] {
            if torus.central_value(chi, u)? != w {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `sum_n psi(-form) theta(tn)` for each torus element, unreduced.
    fn torus_sums(&self, model: &BesselModel, row: usize) -> Vec<Vec<i64>> {
        model
            .per_t
            .iter()
            .map(|hist| {
                let mut acc = vec![0i64; self.e as usize];
                self.accumulate(&mut acc, row, hist, 0);
                acc
            })
            .collect()
    }

    fn combine(&self, model: &BesselModel, sums: &[Vec<i64>], chi: TorusCharacter) -> Result<Vec<i64>> {
        let e = self.e as usize;
        let mut acc = vec![0i64; e];
        for (t, s) in model.torus.elements().iter().zip(sums) {
            let k = self.exp_in(model.torus.character_value(chi, t.r, t.s)?.inverse())? as usize;
            for (i, &c) in s.iter().enumerate() {
                if c != 0 {
                    acc[(i + k) % e] += c;
                }
            }
        }
        Ok(acc)
    }

    fn r_order(&self, model: &BesselModel) -> u64 {
        model.torus.len() as u64 * self.q().pow(3)
    }

    /// `dim Hom_R(V, C_{chi,a,b,c})`, summed over all of `R`.
    pub fn hom_dim_r(&self, model: &BesselModel, row: usize, chi: TorusCharacter) -> Result<u64> {
        if !self.central_match(row, &model.torus, chi)? {
            return Ok(0);
        }
        let sums = self.torus_sums(model, row);
        let acc = self.combine(model, &sums, chi)?;
        self.exact_average(&acc, self.r_order(model), "Hom_R")
    }

    /// `dim Hom_R` for every character of `T`, in [`TorusStructure::characters`] order.
    pub fn hom_dims_r(&self, model: &BesselModel, row: usize) -> Result<Vec<(TorusCharacter, u64)>> {
        let sums = self.torus_sums(model, row);
        model
            .torus
            .characters()
            .into_iter()
            .map(|chi| {
                if !self.central_match(row, &model.torus, chi)? {
                    return Ok((chi, 0));
                }
                let acc = self.combine(model, &sums, chi)?;
                Ok((chi, self.exact_average(&acc, self.r_order(model), "Hom_R")?))
            })
            .collect()
    }

    /// `(S_1, S_2)`: the contributions of `Z` and of `T \ Z` to `dim Hom_R`.
    pub fn s1_s2(&self, model: &BesselModel, row: usize, chi: TorusCharacter) -> Result<(Ratio<i64>, Ratio<i64>)> {
        if !self.central_match(row, &model.torus, chi)? {
            return Ok((Ratio::from_integer(0), Ratio::from_integer(0)));
        }
        let d = model.datum();
        let dim_n = self.hom_dim_n(row, d.a, d.b, d.c)?;
        Ok((self.s1(model, dim_n), self.s2(model, row, chi)?))
    }

    /// `S_1 = (q - 1) dim Hom_N / |T|`, assuming `chi|_Z = omega`.
    pub fn s1(&self, model: &BesselModel, dim_n: u64) -> Ratio<i64> {
        Ratio::new((self.q() as i64 - 1) * dim_n as i64, model.torus.len() as i64)
    }

    /// `S_2` from the difference of the two `tn` class values over a
    /// transversal of `(T \ Z) / Z`: `T_+` for split odd `q`, `T cap Sp` for
    /// even `q`, all of `T \ Z` for nonsplit odd `q`. Assumes `chi|_Z = omega`.
    pub fn s2(&self, model: &BesselModel, row: usize, chi: TorusCharacter) -> Result<Ratio<i64>> {
        let torus = &model.torus;
        let d = torus.datum();
        let f = self.field();
        let q = self.q();
        let g = self.group();
        let n1 = if !d.a.is_zero() {
            g.n(Elem::ONE, Elem::ZERO, Elem::ZERO)
        } else if !d.b.is_zero() {
            g.n(Elem::ZERO, Elem::ONE, Elem::ZERO)
        } else {
            g.n(Elem::ZERO, Elem::ZERO, Elem::ONE)
        };
        let (ts, denom): (Vec<TorusElement>, u64) = if f.is_even() {
            (torus.sp_part(), q * torus.sp_order() as u64)
        } else if torus.is_split() {
            (torus.t_plus(), q * (q - 1))
        } else {
            (torus.elements().to_vec(), q * (q * q - 1))
        };
        let e = self.e as usize;
        let mut acc = vec![0i64; e];
        for t in ts.iter().filter(|t| !t.s.is_zero()) {
            let k = self.exp_in(torus.character_value(chi, t.r, t.s)?.inverse())? as usize;
            let c0 = self.class_of(&t.element)?;
            let c1 = self.class_of(&g.mul(&t.element, &n1))?;
            for (class, sign) in [(c0, 1i64), (c1, -1)] {
                for &(m, c) in self.ct.value_terms(row, class) {
                    acc[(m as usize + k) % e] += sign * c;
                }
            }
        }
        self.rational(&acc, denom, "S_2")
    }
}
