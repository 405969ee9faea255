//! Arithmetic in `F_{p^e}` over a fixed polynomial basis.
//!
//! Elements are identified with their integer labels `m = Σ μ_i p^{i-1}`,
//! where `(μ_1, …, μ_e)` are the coordinates in the basis `1, z, …, z^{e-1}`
//! modulo a monic irreducible polynomial. The label of an element is therefore
//! also the digit that element contributes to a q-ary expansion.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest field order accepted unless a different bound is requested.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 16;

/// Fields up to this order multiply through log/antilog tables.
const LOG_TABLE_MAX: u32 = 1 << 12;

/// Fields up to this order keep a full addition table.
const ADD_TABLE_MAX: u32 = 256;

/// A field element, stored as its integer label in `0..q`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn label(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field `F_q`, `q = p^e`, together with its multiplication tables.
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
    // exp has length 2(q-1) so products of logs never need a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    inv_table: Vec<u32>,
    fact: Vec<u32>,
    inv_fact: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes a label as its `e` base-`p` digits, least significant first.
fn to_digits(mut m: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = vec![0; e as usize];
    for d in out.iter_mut() {
        *d = m % p;
        m /= p;
    }
    out
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p` (coefficients low to high).
fn poly_rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let dm = m.len() - 1;
    let p64 = p as u64;
    while r.len() > dm {
        let lead = r.pop().unwrap() % p64;
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                // subtract lead * c * z^(off+i)
                r[off + i] = (r[off + i] + p64 - (lead * c as u64) % p64) % p64;
            }
        }
    }
    r.into_iter().map(|x| (x % p64) as u32).collect()
}

/// Irreducibility by trial division with every monic polynomial of degree at most `deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = to_digits(low as u32, p, d as u32);
            divisor.push(1);
            if poly_rem_monic(m, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `e` over `F_p`, comparing the
/// coefficient vectors (constant term first) as base-`p` integers.
pub fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    let base = (p as u64).pow(e);
    for low in 0..base {
        let mut m = to_digits(low as u32, p, e);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn mod_pow(mut b: u64, mut exp: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    r
}

impl Field {
    /// `F_{p^e}` with the default (lexicographically smallest) modulus.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        Self::with_bound(p, e, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(p: u32, e: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > bound || q > u32::MAX as u64 {
            return Err(Error::FieldTooLarge { q, bound });
        }
        Self::build(p, default_modulus(p, e), bound)
    }

    /// Prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `F_{p^e}` with an explicit modulus (constant term first, monic, degree `e`).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        Self::with_modulus_bounded(p, modulus, DEFAULT_MAX_ORDER)
    }

    pub fn with_modulus_bounded(p: u32, modulus: &[u32], bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::ZeroDegree);
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(format!("coefficients must lie in 0..{p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        let e = (modulus.len() - 1) as u32;
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > bound || q > u32::MAX as u64 {
            return Err(Error::FieldTooLarge { q, bound });
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::NotIrreducible);
        }
        Self::build(p, modulus.to_vec(), bound)
    }

    fn build(p: u32, modulus: Vec<u32>, _bound: u64) -> Result<Self> {
        let e = (modulus.len() - 1) as u32;
        let q = p.pow(e);
        let mut field = Field {
            p,
            e,
            q,
            modulus,
            add_table: None,
            neg_table: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
            inv_table: Vec::new(),
            fact: Vec::new(),
            inv_fact: Vec::new(),
        };
        field.neg_table = (0..q).map(|a| field.neg_digits(a)).collect();
        if q <= ADD_TABLE_MAX {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(t);
        }
        if q <= LOG_TABLE_MAX && q > 2 {
            field.build_log_tables();
        }
        field.inv_table = if q <= LOG_TABLE_MAX {
            (0..q)
                .map(|a| if a == 0 { 0 } else { field.inv_slow(a) })
                .collect()
        } else {
            Vec::new()
        };
        let p64 = p as u64;
        let mut fact = vec![1u32; p as usize];
        for i in 1..p as usize {
            fact[i] = ((fact[i - 1] as u64 * i as u64) % p64) as u32;
        }
        let inv_fact = fact
            .iter()
            .map(|&f| mod_pow(f as u64, p64 - 2, p64) as u32)
            .collect();
        field.fact = fact;
        field.inv_fact = inv_fact;
        Ok(field)
    }

    fn build_log_tables(&mut self) {
        let order = self.q - 1;
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(2 * order as usize);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = self.mul_slow(x, g);
            }
            if !ok || x != 1 {
                continue;
            }
            let mut log = vec![0u32; self.q as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            let head = exp.clone();
            exp.extend(head);
            self.exp = exp;
            self.log = log;
            return;
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_digits(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
        }
        out
    }

    /// Schoolbook product of the basis representations followed by reduction.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let da = to_digits(a, self.p, self.e);
        let db = to_digits(b, self.p, self.e);
        let p = self.p as u64;
        let mut prod = vec![0u64; (2 * self.e - 1) as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
        let mut r = poly_rem_monic(&prod, &self.modulus, self.p);
        r.resize(self.e as usize, 0);
        from_digits(&r, self.p)
    }

    fn inv_slow(&self, a: u32) -> u32 {
        // a^(q-2)
        let mut result = 1u32;
        let mut base = a;
        let mut exp = self.q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul_slow(result, base);
            }
            base = self.mul_slow(base, base);
            exp >>= 1;
        }
        result
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `"p e c_0 … c_e"`, the serialized field description.
    pub fn description(&self) -> alloc::string::String {
        let mut s = format!("{} {}", self.p, self.e);
        for c in &self.modulus {
            s.push_str(&format!(" {c}"));
        }
        s
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Element with integer label `m`.
    pub fn elem_of(&self, m: u64) -> Result<Elem> {
        if m >= self.q as u64 {
            return Err(Error::LabelOutOfRange { label: m, q: self.q });
        }
        Ok(Elem(m as u32))
    }

    #[inline]
    pub fn int_of(&self, a: Elem) -> u32 {
        a.0
    }

    /// Coordinates `(μ^{(1)}, …, μ^{(e)})` of `a` in the polynomial basis.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        to_digits(a.0, self.p, self.e)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.e as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates in 0..{}",
                self.e, self.p
            )));
        }
        Ok(Elem(from_digits(coords, self.p)))
    }

    /// Image of the integer `c` in the prime subfield.
    #[inline]
    pub fn from_int(&self, c: u64) -> Elem {
        Elem((c % self.p as u64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_table {
            Some(t) => Elem(t[(a.0 * self.q + b.0) as usize]),
            None => Elem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.e == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if !self.log.is_empty() {
            let i = self.log[a.0 as usize] + self.log[b.0 as usize];
            return Elem(self.exp[i as usize]);
        }
        Elem(self.mul_slow(a.0, b.0))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.inv_table.is_empty() {
            return Ok(Elem(self.inv_table[a.0 as usize]));
        }
        if self.e == 1 {
            let p = self.p as u64;
            return Ok(Elem(mod_pow(a.0 as u64, p - 2, p) as u32));
        }
        Ok(Elem(self.inv_slow(a.0)))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut result = Elem::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    /// Frobenius automorphism `a ↦ a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Absolute trace `a + a^p + … + a^{p^{e-1}}`; always lies in the prime subfield.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.e {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// `true` when `a` lies in `F_p` (label below `p`).
    #[inline]
    pub fn in_prime_subfield(&self, a: Elem) -> bool {
        a.0 < self.p
    }

    /// Binomial coefficient `C(i, j)` reduced mod `p` (Lucas), as a field element.
    pub fn binom(&self, i: u64, j: u64) -> Elem {
        if j > i {
            return Elem::ZERO;
        }
        let p = self.p as u64;
        let (mut i, mut j) = (i, j);
        let mut acc = 1u64;
        while j > 0 || i > 0 {
            let (a, b) = (i % p, j % p);
            if b > a {
                return Elem::ZERO;
            }
            let c = self.fact[a as usize] as u64 * self.inv_fact[b as usize] as u64 % p
                * self.inv_fact[(a - b) as usize] as u64
                % p;
            acc = acc * c % p;
            i /= p;
            j /= p;
        }
        Elem(acc as u32)
    }

    /// Linear combination `α·x + β·y` of two equally long vectors.
    pub fn axpby(&self, alpha: Elem, x: &[Elem], beta: Elem, y: &[Elem]) -> Vec<Elem> {
        x.iter()
            .zip(y)
            .map(|(&a, &b)| self.add(self.mul(alpha, a), self.mul(beta, b)))
            .collect()
    }
}

/// A field element bundled with its field, for checked mixed-field arithmetic.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<Field>,
    value: Elem,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

fn same_field(a: &Arc<Field>, b: &Arc<Field>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElement {
    pub fn new(field: &Arc<Field>, label: u64) -> Result<Self> {
        let value = field.elem_of(label)?;
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn from_coords(field: &Arc<Field>, coords: &[u32]) -> Result<Self> {
        let value = field.from_coords(coords)?;
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn int_of(&self) -> u32 {
        self.value.0
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn trace(&self) -> Self {
        self.wrap(self.field.trace(self.value))
    }
}
