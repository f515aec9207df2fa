//! Arithmetic in `F_q`, `q = p^n`, by table lookup.
//!
//! Elements are indices in `[0, q)`: index `k` is the polynomial
//! `sum c_i X^i` whose coefficients are the base-`p` digits of `k`, reduced
//! modulo the lexicographically least monic irreducible polynomial of degree
//! `n`. Index 0 is zero and index 1 is one.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest field order accepted by [`Field::new`].
pub const DEFAULT_MAX_ORDER: u32 = 16;

/// Largest order any table-driven field may have.
const HARD_MAX_ORDER: u32 = 1 << 12;

const NONE: u16 = u16::MAX;

/// An element of some [`Field`], identified by its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The complex number `zeta_order^exponent`, kept symbolically.
///
/// Equality and ordering are by value: `zeta_2^1 == zeta_4^2`.
#[derive(Clone, Copy, Debug)]
pub struct ComplexRoot {
    order: u32,
    exponent: u32,
}

impl ComplexRoot {
    pub fn new(order: u32, exponent: i64) -> Self {
        assert!(order > 0, "root of unity of order zero");
        let exponent = exponent.rem_euclid(order as i64) as u32;
        ComplexRoot { order, exponent }
    }

    pub fn one() -> Self {
        ComplexRoot { order: 1, exponent: 0 }
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    /// Exponent of this root when written as a power of `zeta_n`.
    ///
    /// Panics if `self.order` does not divide `n`.
    pub fn exponent_in(self, n: u32) -> u32 {
        assert!(n.is_multiple_of(self.order), "zeta_{} is not a power of zeta_{}", self.order, n);
        self.exponent * (n / self.order)
    }

    pub fn mul(self, other: ComplexRoot) -> ComplexRoot {
        let n = lcm(self.order as u64, other.order as u64) as u32;
        ComplexRoot::new(n, self.exponent_in(n) as i64 + other.exponent_in(n) as i64)
    }

    pub fn inverse(self) -> ComplexRoot {
        ComplexRoot::new(self.order, -(self.exponent as i64))
    }

    /// `(exponent, order)` in lowest terms.
    fn reduced(self) -> (u32, u32) {
        let d = gcd(self.exponent as u64, self.order as u64) as u32;
        (self.exponent / d, self.order / d)
    }
}

impl PartialEq for ComplexRoot {
    fn eq(&self, other: &Self) -> bool {
        self.reduced() == other.reduced()
    }
}

impl Eq for ComplexRoot {}

impl core::hash::Hash for ComplexRoot {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.reduced().hash(state);
    }
}

impl PartialOrd for ComplexRoot {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ComplexRoot {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let (a, m) = self.reduced();
        let (b, n) = other.reduced();
        (a as u64 * n as u64).cmp(&(b as u64 * m as u64))
    }
}

/// Character `g^k -> zeta_order^(index * k)` of a cyclic group with a fixed
/// generator `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CyclicCharacter {
    pub order: u32,
    pub index: u32,
}

impl CyclicCharacter {
    pub fn new(order: u32, index: u32) -> Result<Self> {
        if order == 0 || index >= order {
            return Err(Error::CharacterIndex { index, order });
        }
        Ok(CyclicCharacter { order, index })
    }

    /// Value on `g^k`.
    pub fn at_power(self, k: u64) -> ComplexRoot {
        let e = (self.index as u64 * (k % self.order as u64)) % self.order as u64;
        ComplexRoot::new(self.order, e as i64)
    }

    pub fn is_trivial(self) -> bool {
        self.index == 0
    }
}

/// Square class of an element of a field of odd order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Zero,
    Square,
    Nonsquare,
}

/// Arithmetic operations accepted by [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(i64),
}

/// A finite field of order `p^n` with precomputed tables.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    generator: Elem,
    exp: Vec<u16>,
    log: Vec<u32>,
    trace: Vec<u32>,
    xi: Elem,
    q_circle: Vec<Elem>,
}

/// Serializable description of a field: enough to rebuild it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FieldRecord {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub generator: u16,
    pub xi: u16,
}

impl Field {
    /// `F_{p^n}` with `p^n <= DEFAULT_MAX_ORDER`.
    pub fn new(p: u32, n: u32) -> Result<Field> {
        Field::with_max_order(p, n, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(p: u32, n: u32, bound: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let bound = bound.min(HARD_MAX_ORDER);
        let q = (p as u64).checked_pow(n).filter(|&q| q <= bound as u64);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, n, bound });
        };
        let q = q as u32;
        let modulus = least_irreducible(p, n);
        let qs = q as usize;

        let digits: Vec<Vec<u32>> = (0..q).map(|k| to_digits(k, p, n)).collect();
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for x in 0..qs {
            for y in 0..qs {
                let s: Vec<u32> = digits[x].iter().zip(&digits[y]).map(|(a, b)| (a + b) % p).collect();
                add[x * qs + y] = from_digits(&s, p) as u16;
                let prod = poly_rem(&poly_mul(&digits[x], &digits[y], p), &modulus, p);
                let mut padded = prod;
                padded.resize(n as usize, 0);
                mul[x * qs + y] = from_digits(&padded, p) as u16;
            }
        }
        let neg: Vec<u16> = (0..qs).map(|x| (0..qs).find(|&y| add[x * qs + y] == 0).unwrap() as u16).collect();
        let mut inv = vec![NONE; qs];
        for x in 1..qs {
            inv[x] = (1..qs).find(|&y| mul[x * qs + y] == 1).unwrap() as u16;
        }

        let order_of = |x: usize| -> u32 {
            let mut acc = x;
            let mut k = 1;
            while acc != 1 {
                acc = mul[acc * qs + x] as usize;
                k += 1;
            }
            k
        };
        let generator = (1..qs).find(|&x| order_of(x) == q - 1).unwrap();
        let mut exp = Vec::with_capacity(qs - 1);
        let mut log = vec![u32::MAX; qs];
        let mut acc = 1usize;
        for k in 0..q - 1 {
            exp.push(acc as u16);
            log[acc] = k;
            acc = mul[acc * qs + generator] as usize;
        }

        let mut field = Field {
            p,
            n,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            generator: Elem(generator as u16),
            exp,
            log,
            trace: Vec::new(),
            xi: Elem::ZERO,
            q_circle: Vec::new(),
        };
        field.trace = (0..q)
            .map(|x| {
                let mut t = Elem::ZERO;
                let mut y = Elem(x as u16);
                for _ in 0..n {
                    t = field.add(t, y);
                    y = field.pow(y, p as i64);
                }
                debug_assert!((t.0 as u32) < p);
                t.0 as u32
            })
            .collect();
        if p == 2 {
            let mut circle: Vec<Elem> = field.elements().map(|t| field.add(field.mul(t, t), t)).collect();
            circle.sort();
            circle.dedup();
            field.xi = field.elements().find(|x| circle.binary_search(x).is_err()).unwrap();
            field.q_circle = circle;
        } else {
            field.xi = field.elements().find(|&x| field.square_class_unchecked(x) == SquareClass::Nonsquare).unwrap();
        }
        Ok(field)
    }

    /// Rebuilds a field from its record, checking that every stored choice
    /// matches the deterministic construction.
    pub fn from_record(rec: &FieldRecord, bound: u32) -> Result<Field> {
        let f = Field::with_max_order(rec.p, rec.n, bound)?;
        if f.record() != *rec {
            return Err(Error::Consistency(alloc::format!(
                "field record {:?} does not match the canonical construction",
                rec
            )));
        }
        Ok(f)
    }

    pub fn record(&self) -> FieldRecord {
        FieldRecord { p: self.p, n: self.n, modulus: self.modulus.clone(), generator: self.generator.0, xi: self.xi.0 }
    }

    /// Same field with a different distinguished element `xi`.
    ///
    /// Odd `q`: `xi` must be a nonsquare. Even `q`: `xi` must lie outside `F_q°`.
    pub fn with_xi(&self, xi: Elem) -> Result<Field> {
        self.check(xi)?;
        let ok = if self.is_even() {
            !self.in_q_circle(xi)
        } else {
            self.square_class_unchecked(xi) == SquareClass::Nonsquare
        };
        if !ok {
            return Err(Error::Consistency(alloc::format!("{:?} is not an admissible xi", xi)));
        }
        let mut f = self.clone();
        f.xi = xi;
        Ok(f)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    /// Coefficients of the modulus, constant term first; the last entry is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn xi(&self) -> Elem {
        self.xi
    }

    /// The image of `t -> t^2 + t` (even `q` only; empty otherwise).
    pub fn q_circle(&self) -> &[Elem] {
        &self.q_circle
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q as u16).map(Elem)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q as u16).map(Elem)
    }

    /// The element whose polynomial has constant term `c` (a prime-field element).
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u16)
    }

    /// Coefficients (constant term first) of the polynomial representing `x`.
    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        to_digits(x.0 as u32, self.p, self.n)
    }

    fn check(&self, x: Elem) -> Result<()> {
        if (x.0 as u32) < self.q {
            Ok(())
        } else {
            Err(Error::ForeignElement { index: x.0 as u32, q: self.q })
        }
    }

    #[inline]
    fn at(&self, x: Elem, y: Elem) -> usize {
        x.index() * self.q as usize + y.index()
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.add[self.at(x, y)])
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.neg[x.index()])
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.mul[self.at(x, y)])
    }

    /// Multiplicative inverse. Panics on zero; see [`Field::try_inv`].
    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        let y = self.inv[x.index()];
        assert!(y != NONE, "inverse of zero");
        Elem(y)
    }

    pub fn try_inv(&self, x: Elem) -> Result<Elem> {
        self.check(x)?;
        match self.inv[x.index()] {
            NONE => Err(Error::DivisionByZero),
            y => Ok(Elem(y)),
        }
    }

    #[inline]
    pub fn div(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, self.inv(y))
    }

    /// `x^k` for any integer `k`; negative powers of zero panic.
    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        if x.is_zero() {
            assert!(k >= 0, "negative power of zero");
            return if k == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let m = (self.q - 1) as i64;
        let e = (self.log[x.index()] as i64 * k.rem_euclid(m)).rem_euclid(m);
        Elem(self.exp[e as usize])
    }

    /// Checked arithmetic: validates operands and reports division by zero.
    pub fn arith(&self, x: Elem, y: Elem, op: ArithOp) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Div => self.mul(x, self.try_inv(y)?),
            ArithOp::Inv => self.try_inv(x)?,
            ArithOp::Pow(k) => {
                if x.is_zero() && k < 0 {
                    return Err(Error::DivisionByZero);
                }
                self.pow(x, k)
            }
        })
    }

    /// Discrete logarithm to the base [`Field::generator`].
    pub fn log(&self, x: Elem) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.index()])
        }
    }

    /// `generator^k`.
    pub fn exp(&self, k: i64) -> Elem {
        let m = (self.q - 1) as i64;
        Elem(self.exp[k.rem_euclid(m) as usize])
    }

    pub fn multiplicative_order(&self, x: Elem) -> Option<u32> {
        let l = self.log(x)?;
        Some((self.q - 1) / gcd(l as u64, (self.q - 1) as u64) as u32)
    }

    /// Absolute trace to `Z/p`, returned as an integer in `[0, p)`.
    pub fn trace(&self, x: Elem) -> u32 {
        self.trace[x.index()]
    }

    /// The fixed additive character `psi(x) = zeta_p^Tr(x)`.
    pub fn psi(&self, x: Elem) -> ComplexRoot {
        ComplexRoot::new(self.p, self.trace(x) as i64)
    }

    pub fn additive_character(&self, x: Elem) -> ComplexRoot {
        self.psi(x)
    }

    fn square_class_unchecked(&self, x: Elem) -> SquareClass {
        if x.is_zero() {
            SquareClass::Zero
        } else if self.log[x.index()].is_multiple_of(2) {
            SquareClass::Square
        } else {
            SquareClass::Nonsquare
        }
    }

    /// Zero / square / nonsquare, for odd `q`.
    pub fn square_class(&self, x: Elem) -> Result<SquareClass> {
        if self.is_even() {
            return Err(Error::WrongParity { expected: "odd" });
        }
        self.check(x)?;
        let e = self.pow(x, ((self.q - 1) / 2) as i64);
        Ok(if x.is_zero() {
            SquareClass::Zero
        } else if e == Elem::ONE {
            SquareClass::Square
        } else {
            debug_assert_eq!(e, self.neg(Elem::ONE));
            SquareClass::Nonsquare
        })
    }

    pub fn in_q_circle(&self, x: Elem) -> bool {
        self.q_circle.binary_search(&x).is_ok()
    }

    /// The Artin–Schreier sign: `+1` on `F_q°`, `-1` elsewhere (even `q`).
    pub fn epsilon(&self, x: Elem) -> Result<i8> {
        if !self.is_even() {
            return Err(Error::WrongParity { expected: "even" });
        }
        self.check(x)?;
        Ok(if self.in_q_circle(x) { 1 } else { -1 })
    }

    /// Square root in `F_q`, if any (smallest index when there are two).
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        self.elements().find(|&y| self.mul(y, y) == x)
    }

    /// Character `g^k -> zeta_{q-1}^(j k)` of `F_q^x`, evaluated at `x`.
    pub fn unit_character(&self, j: u32, x: Elem) -> Result<ComplexRoot> {
        let chi = CyclicCharacter::new(self.q - 1, j)?;
        let k = self.log(x).ok_or(Error::DivisionByZero)?;
        Ok(chi.at_power(k as u64))
    }

    /// Human-readable polynomial form, e.g. `X^2+2X+1`; prime fields print digits.
    pub fn render(&self, x: Elem) -> alloc::string::String {
        use alloc::string::ToString;
        if self.n == 1 {
            return x.0.to_string();
        }
        let c = self.coefficients(x);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let coef = if ci == 1 && i > 0 { alloc::string::String::new() } else { ci.to_string() };
            parts.push(match i {
                0 => ci.to_string(),
                1 => alloc::format!("{coef}X"),
                _ => alloc::format!("{coef}X^{i}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// `F_{q^2}` together with an embedding of `F_q` and the elements `gamma`
/// (order `q-1`) and `eta` (order `q+1`).
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    base_q: u32,
    big: Field,
    embed: Vec<Elem>,
    restrict: Vec<u16>,
    gamma: Elem,
    eta: Elem,
}

impl QuadraticExtension {
    pub fn new(base: &Field) -> Result<QuadraticExtension> {
        let big = Field::with_max_order(base.p, 2 * base.n, HARD_MAX_ORDER)?;
        let q = base.q;
        // A root of the base modulus fixes the embedding.
        let eval = |beta: Elem| -> Elem {
            let mut acc = Elem::ZERO;
            for &c in base.modulus.iter().rev() {
                acc = big.add(big.mul(acc, beta), Elem(c as u16));
            }
            acc
        };
        let beta = big.elements().find(|&b| eval(b).is_zero()).unwrap();
        let embed: Vec<Elem> = base
            .elements()
            .map(|x| {
                let mut acc = Elem::ZERO;
                for &c in base.coefficients(x).iter().rev() {
                    acc = big.add(big.mul(acc, beta), Elem(c as u16));
                }
                acc
            })
            .collect();
        let mut restrict = vec![NONE; big.q as usize];
        for (i, e) in embed.iter().enumerate() {
            restrict[e.index()] = i as u16;
        }
        let g = big.generator;
        let gamma = big.pow(g, (q + 1) as i64);
        let eta = big.pow(g, (q - 1) as i64);
        Ok(QuadraticExtension { base_q: q, big, embed, restrict, gamma, eta })
    }

    pub fn field(&self) -> &Field {
        &self.big
    }

    pub fn base_order(&self) -> u32 {
        self.base_q
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.embed[x.index()]
    }

    /// Inverse of [`QuadraticExtension::embed`] on its image.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        match self.restrict[x.index()] {
            NONE => None,
            y => Some(Elem(y)),
        }
    }

    pub fn frobenius(&self, x: Elem) -> Elem {
        self.big.pow(x, self.base_q as i64)
    }

    /// `N(x) = x^(q+1)`, as an element of the base field.
    pub fn norm(&self, x: Elem) -> Elem {
        self.restrict(self.big.pow(x, (self.base_q + 1) as i64)).expect("norm lands in the base field")
    }

    /// `x + x^q`, as an element of the base field.
    pub fn relative_trace(&self, x: Elem) -> Elem {
        self.restrict(self.big.add(x, self.frobenius(x))).expect("trace lands in the base field")
    }

    pub fn gamma(&self) -> Elem {
        self.gamma
    }

    pub fn eta(&self) -> Elem {
        self.eta
    }

    /// A square root of a base-field element inside `F_{q^2}` (always exists).
    pub fn sqrt_of_base(&self, x: Elem) -> Option<Elem> {
        let t = self.embed(x);
        self.big.sqrt(t)
    }

    /// Character `G^k -> zeta_{q^2-1}^(j k)` of `F_{q^2}^x` at `x`.
    pub fn unit_character(&self, j: u32, x: Elem) -> Result<ComplexRoot> {
        self.big.unit_character(j, x)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn to_digits(mut k: u32, p: u32, n: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(n as usize);
    for _ in 0..n {
        d.push(k % p);
        k /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn inv_mod(x: u32, p: u32) -> u32 {
    (1..p).find(|&y| x * y % p == 1).unwrap()
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !r.is_empty() {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(&poly_mul(&result, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// `f` has no factor of degree `d <= deg f / 2`, tested by
/// `gcd(f, X^(p^d) - X) = 1`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    let x = vec![0, 1];
    for d in 1..=n / 2 {
        let mut xp = poly_powmod(&x, (p as u64).pow(d as u32), &f, p);
        xp.resize(xp.len().max(2), 0);
        xp[1] = (xp[1] + p - 1) % p;
        let g = poly_gcd(&f, &xp, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn least_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = p.pow(n);
    for low in 0..count {
        let mut f = to_digits(low, p, n);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_basics() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.generator(), Elem(2));
        assert_eq!(f.xi(), Elem(2));
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(1));
        assert_eq!(f.square_class(Elem(0)).unwrap(), SquareClass::Zero);
        assert_eq!(f.square_class(Elem(1)).unwrap(), SquareClass::Square);
        assert_eq!(f.square_class(Elem(2)).unwrap(), SquareClass::Nonsquare);
        assert_eq!(f.psi(Elem(1)), ComplexRoot::new(3, 1));
        assert!(f.epsilon(Elem(0)).is_err());
    }

    #[test]
    fn f2_and_f4_circle() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.q_circle(), &[Elem(0)]);
        assert_eq!(f2.xi(), Elem(1));
        assert_eq!(f2.epsilon(Elem(1)).unwrap(), -1);

        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // brute force over the four elements
        let mut image: Vec<Elem> = f4.elements().map(|t| f4.add(f4.mul(t, t), t)).collect();
        image.sort();
        image.dedup();
        assert_eq!(image, vec![Elem(0), Elem(1)]);
        assert_eq!(f4.q_circle(), &[Elem(0), Elem(1)]);
        let w = Elem(2);
        assert_eq!(f4.epsilon(Elem(1)).unwrap(), 1);
        assert_eq!(f4.epsilon(w).unwrap(), -1);
        // w * w = w + 1 under X^2 + X + 1
        assert_eq!(f4.mul(w, w), Elem(3));
        assert_eq!(f4.trace(w), 1);
        assert_eq!(f4.psi(w), ComplexRoot::new(2, 1));
        assert!(f4.square_class(w).is_err());
    }

    #[test]
    fn moduli_are_least_irreducible() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 3));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(Field::new(5, 2), Err(Error::FieldTooLarge { .. })));
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn checked_arith() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.arith(Elem(3), Elem(0), ArithOp::Div), Err(Error::DivisionByZero));
        assert_eq!(f.arith(Elem(0), Elem(0), ArithOp::Inv), Err(Error::DivisionByZero));
        assert!(matches!(f.arith(Elem(7), Elem(1), ArithOp::Add), Err(Error::ForeignElement { .. })));
        assert_eq!(f.arith(Elem(2), Elem(0), ArithOp::Pow(-1)).unwrap(), Elem(3));
        assert_eq!(f.arith(Elem(4), Elem(0), ArithOp::Add).unwrap(), Elem(4));
    }

    #[test]
    fn psi_is_a_nontrivial_homomorphism() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)] {
            let f = Field::new(p, n).unwrap();
            let mut counts = vec![0u32; p as usize];
            for x in f.elements() {
                counts[f.psi(x).exponent_in(p) as usize] += 1;
                for y in f.elements() {
                    assert_eq!(f.psi(f.add(x, y)), f.psi(x).mul(f.psi(y)));
                }
            }
            // sum of psi vanishes iff every exponent is hit equally often
            assert!(counts.iter().all(|&c| c == f.order() / p), "q = {}", f.order());
        }
    }

    #[test]
    fn square_and_circle_counts() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let f = Field::new(p, n).unwrap();
            let q = f.order();
            let squares = f.units().filter(|&x| f.square_class(x).unwrap() == SquareClass::Square).count();
            assert_eq!(squares as u32, (q - 1) / 2);
            for x in f.units() {
                if f.square_class(x).unwrap() == SquareClass::Square {
                    assert_eq!(f.square_class(f.mul(f.xi(), x)).unwrap(), SquareClass::Nonsquare);
                }
            }
            let xi = f.xi();
            let sols = f
                .elements()
                .flat_map(|x| f.elements().map(move |y| (x, y)))
                .filter(|&(x, y)| f.sub(f.mul(y, y), f.mul(f.mul(x, x), xi)) == Elem::ONE)
                .count();
            assert_eq!(sols as u32, q + 1);
        }
        for n in 1..=4 {
            let f = Field::new(2, n).unwrap();
            assert_eq!(f.q_circle().len() as u32, f.order() / 2);
            for t in f.elements() {
                let s = f.add(f.mul(t, t), t);
                assert_eq!(f.epsilon(s).unwrap(), 1);
                assert_eq!(f.epsilon(f.add(s, f.xi())).unwrap(), -1);
                for u in f.elements() {
                    assert_eq!(f.epsilon(f.add(t, u)).unwrap(), f.epsilon(t).unwrap() * f.epsilon(u).unwrap());
                }
            }
        }
    }

    #[test]
    fn quadratic_extension_structure() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)] {
            let f = Field::new(p, n).unwrap();
            let e = QuadraticExtension::new(&f).unwrap();
            let big = e.field();
            let q = f.order();
            assert_eq!(big.order(), q * q);
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(e.embed(f.add(x, y)), big.add(e.embed(x), e.embed(y)));
                    assert_eq!(e.embed(f.mul(x, y)), big.mul(e.embed(x), e.embed(y)));
                }
                assert_eq!(e.norm(e.embed(x)), f.mul(x, x));
                let r = e.sqrt_of_base(x).unwrap();
                assert_eq!(big.mul(r, r), e.embed(x));
            }
            assert_eq!(big.multiplicative_order(e.gamma()), Some(q - 1));
            assert_eq!(big.multiplicative_order(e.eta()), Some(q + 1));
            let mut fibres = vec![0u32; q as usize];
            for x in big.units() {
                fibres[e.norm(x).index()] += 1;
            }
            assert_eq!(fibres[0], 0);
            assert!(fibres[1..].iter().all(|&c| c == q + 1));
        }
        let f3 = Field::new(3, 1).unwrap();
        let e = QuadraticExtension::new(&f3).unwrap();
        assert_eq!(e.field().multiplicative_order(e.eta()), Some(4));
        assert_eq!(e.field().mul(e.eta(), e.eta()), e.embed(Elem(2)));
        assert!(f3.sqrt(Elem(2)).is_none());
        assert!(e.sqrt_of_base(Elem(2)).is_some());
    }

    #[test]
    fn cyclic_characters() {
        assert!(CyclicCharacter::new(8, 8).is_err());
        let triv = CyclicCharacter::new(8, 0).unwrap();
        assert!((0..8).all(|k| triv.at_power(k).is_one()));
        let f9 = Field::new(3, 2).unwrap();
        for x in f9.units() {
            let v = f9.unit_character(4, x).unwrap();
            let expected = match f9.square_class(x).unwrap() {
                SquareClass::Square => ComplexRoot::new(2, 0),
                _ => ComplexRoot::new(2, 1),
            };
            assert_eq!(ComplexRoot::new(2, (v.exponent_in(8) / 4) as i64), expected);
            for y in f9.units() {
                let lhs = f9.unit_character(3, f9.mul(x, y)).unwrap();
                let rhs = f9.unit_character(3, x).unwrap().mul(f9.unit_character(3, y).unwrap());
                assert_eq!(lhs.exponent_in(8), rhs.exponent_in(8));
            }
        }
    }

    #[test]
    fn record_round_trip_and_xi_override() {
        let f = Field::new(3, 2).unwrap();
        let rec = f.record();
        assert_eq!(Field::from_record(&rec, 16).unwrap().record(), rec);
        let mut bad = rec.clone();
        bad.generator += 1;
        assert!(Field::from_record(&bad, 16).is_err());
        assert!(f.with_xi(Elem(1)).is_err());
        let other = f.units().filter(|&x| f.square_class(x).unwrap() == SquareClass::Nonsquare).nth(1).unwrap();
        assert_eq!(f.with_xi(other).unwrap().xi(), other);
    }
}
