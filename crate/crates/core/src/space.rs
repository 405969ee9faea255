//! The matrix space `Mat_{n,s}(F_q)`, identified with the grid `Q^n(q^s)` of points
//! whose coordinates have `s` base-`q` digits.
//!
//! Row `j` of a word holds coordinate `x_j`; column `i` (0-based) holds the digit
//! `ξ_{i+1}`, whose place value is `q^{i-s}`. The last column is therefore the most
//! significant digit. Files use the opposite (usual radix) order.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Shape and field of a word space.
#[derive(Clone, Debug)]
pub struct Space {
    field: Arc<Field>,
    n: usize,
    s: usize,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.s == other.s && *self.field == *other.field
    }
}

impl Eq for Space {}

/// An `n × s` digit matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeWord {
    n: usize,
    s: usize,
    entries: Vec<Elem>,
}

impl CodeWord {
    pub fn zero(n: usize, s: usize) -> Self {
        CodeWord { n, s, entries: vec![Elem::ZERO; n * s] }
    }

    pub fn from_flat(n: usize, s: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != n * s {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {n}x{s} word",
                entries.len()
            )));
        }
        Ok(CodeWord { n, s, entries })
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self> {
        let n = rows.len();
        let s = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != s) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(CodeWord { n, s, entries: rows.concat() })
    }

    /// Rows given as integer labels in `ξ` order.
    pub fn from_labels(rows: &[&[u32]]) -> Result<Self> {
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Elem(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn flat(&self) -> &[Elem] {
        &self.entries
    }

    pub fn into_flat(self) -> Vec<Elem> {
        self.entries
    }

    pub fn row(&self, j: usize) -> &[Elem] {
        &self.entries[j * self.s..(j + 1) * self.s]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Elem]> {
        self.entries.chunks(self.s.max(1)).take(self.n)
    }

    /// `ξ_{i+1}` of coordinate `j`.
    #[inline]
    pub fn get(&self, j: usize, i: usize) -> Elem {
        self.entries[j * self.s + i]
    }

    #[inline]
    pub fn set(&mut self, j: usize, i: usize, v: Elem) {
        self.entries[j * self.s + i] = v;
    }

    /// Digits of coordinate `j` in radix order `η_1, …, η_s` (most significant first).
    pub fn eta_row(&self, j: usize) -> Vec<Elem> {
        self.row(j).iter().rev().copied().collect()
    }

    pub fn from_eta_rows(rows: &[Vec<Elem>]) -> Result<Self> {
        let rev: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Self::from_rows(&rev)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

/// `ρ` of a single row: the 1-based index of the last nonzero entry, 0 for a zero row.
pub fn row_rho(row: &[Elem]) -> usize {
    row.iter().rposition(|e| !e.is_zero()).map_or(0, |i| i + 1)
}

/// Sum of row `ρ`-weights.
pub fn rho_weight(w: &CodeWord) -> usize {
    w.rows().map(row_rho).sum()
}

/// Number of nonzero entries.
pub fn hamming_weight(w: &CodeWord) -> usize {
    w.entries.iter().filter(|e| !e.is_zero()).count()
}

impl Space {
    pub fn new(field: Arc<Field>, n: usize, s: usize) -> Result<Self> {
        if n == 0 || s == 0 {
            return Err(Error::InvalidParameter(format!("n = {n} and s = {s} must be positive")));
        }
        Ok(Space { field, n, s })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn s(&self) -> usize {
        self.s
    }

    /// `n·s`, the dimension over `F_q`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.n * self.s
    }

    /// `q^{ns}` if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.q() as u64).checked_pow(self.dim() as u32)
    }

    pub fn zero(&self) -> CodeWord {
        CodeWord::zero(self.n, self.s)
    }

    pub fn check(&self, w: &CodeWord) -> Result<()> {
        if w.n != self.n || w.s != self.s {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} word in a {}x{} space",
                w.n, w.s, self.n, self.s
            )));
        }
        if let Some(e) = w.entries.iter().find(|e| e.0 >= self.q()) {
            return Err(Error::LabelOutOfRange { label: e.0 as u64, q: self.q() });
        }
        Ok(())
    }

    pub fn word(&self, entries: Vec<Elem>) -> Result<CodeWord> {
        let w = CodeWord::from_flat(self.n, self.s, entries)?;
        self.check(&w)?;
        Ok(w)
    }

    /// The word whose flat entries are the base-`q` digits of `index`, first entry least significant.
    pub fn word_at(&self, mut index: u64) -> CodeWord {
        let q = self.q() as u64;
        let mut w = self.zero();
        for e in w.entries.iter_mut() {
            *e = Elem((index % q) as u32);
            index /= q;
        }
        w
    }

    /// Every word of the space, in `word_at` order.
    pub fn words(&self) -> Result<impl Iterator<Item = CodeWord> + '_> {
        let size = self
            .size()
            .ok_or_else(|| Error::TooLarge(format!("q^{} words", self.dim())))?;
        Ok((0..size).map(move |i| self.word_at(i)))
    }

    pub fn rho(&self, w: &CodeWord) -> usize {
        rho_weight(w)
    }

    pub fn kappa(&self, w: &CodeWord) -> usize {
        hamming_weight(w)
    }

    /// `ρ(x − y)`, the metric itself.
    pub fn rho_distance(&self, x: &CodeWord, y: &CodeWord) -> Result<usize> {
        Ok(rho_weight(&self.sub(x, y)?))
    }

    /// Digitwise `α·X + β·Y`.
    pub fn linear_combine(&self, alpha: Elem, x: &CodeWord, beta: Elem, y: &CodeWord) -> Result<CodeWord> {
        self.check(x)?;
        self.check(y)?;
        let entries = self.field.axpby(alpha, &x.entries, beta, &y.entries);
        Ok(CodeWord { n: self.n, s: self.s, entries })
    }

    pub fn add(&self, x: &CodeWord, y: &CodeWord) -> Result<CodeWord> {
        self.linear_combine(Elem::ONE, x, Elem::ONE, y)
    }

    pub fn sub(&self, x: &CodeWord, y: &CodeWord) -> Result<CodeWord> {
        let minus_one = self.field.neg(Elem::ONE);
        self.linear_combine(Elem::ONE, x, minus_one, y)
    }

    pub fn scale(&self, alpha: Elem, x: &CodeWord) -> Result<CodeWord> {
        self.linear_combine(alpha, x, Elem::ZERO, x)
    }

    /// The reversal pairing `Σ_j Σ_i ξ'_i ξ''_{s+1-i}`.
    pub fn inner_product(&self, a: &CodeWord, b: &CodeWord) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner_unchecked(a.flat(), b.flat()))
    }

    pub(crate) fn inner_unchecked(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let f = &self.field;
        let s = self.s;
        let mut acc = Elem::ZERO;
        for (ra, rb) in a.chunks(s).zip(b.chunks(s)) {
            for i in 0..s {
                acc = f.add(acc, f.mul(ra[i], rb[s - 1 - i]));
            }
        }
        acc
    }

    /// Numerator of coordinate `j` over the common denominator `q^s`.
    pub fn numerator(&self, w: &CodeWord, j: usize) -> u128 {
        let q = self.q() as u128;
        w.row(j)
            .iter()
            .rev()
            .fold(0u128, |acc, e| acc * q + e.0 as u128)
    }

    /// Coordinate `x_j = Σ ξ_i q^{i-s-1}` as an exact rational.
    pub fn coordinate(&self, w: &CodeWord, j: usize) -> Ratio<BigInt> {
        let mut num = BigInt::zero();
        let q = BigInt::from(self.q());
        for e in w.row(j).iter().rev() {
            num = num * &q + BigInt::from(e.0);
        }
        Ratio::new(num, q.pow(self.s as u32))
    }

    pub fn point(&self, w: &CodeWord) -> Vec<Ratio<BigInt>> {
        (0..self.n).map(|j| self.coordinate(w, j)).collect()
    }

    /// Inverse of `point` on `Q^n(q^s)`; coordinates must lie in `[0,1)` with denominator dividing `q^s`.
    pub fn word_of(&self, point: &[Ratio<BigInt>]) -> Result<CodeWord> {
        if point.len() != self.n {
            return Err(Error::ShapeMismatch(format!("{} coordinates, expected {}", point.len(), self.n)));
        }
        let scale = BigInt::from(self.q()).pow(self.s as u32);
        let q = BigInt::from(self.q());
        let mut w = self.zero();
        for (j, x) in point.iter().enumerate() {
            let scaled = x * Ratio::from_integer(scale.clone());
            if !scaled.is_integer() || x < &Ratio::zero() || x >= &Ratio::one() {
                return Err(Error::InvalidParameter(format!("coordinate {x} is not in Q(q^s)")));
            }
            let mut num = scaled.to_integer();
            for i in 0..self.s {
                let d = &num % &q;
                num /= &q;
                w.set(j, i, Elem(u32::try_from(d).unwrap_or(0)));
            }
        }
        Ok(w)
    }
}

/// Truncation of `x ∈ [0,1)` to its first `s` base-`q` digits.
pub fn tau_project(x: &Ratio<BigInt>, q: u32, s: usize) -> Ratio<BigInt> {
    let scale = BigInt::from(q).pow(s as u32);
    let scaled = x * Ratio::from_integer(scale.clone());
    Ratio::new(scaled.floor().to_integer(), scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(p: u32, e: u32, n: usize, s: usize) -> Space {
        Space::new(Arc::new(Field::new(p, e).unwrap()), n, s).unwrap()
    }

    #[test]
    fn rho_examples() {
        let w = CodeWord::from_labels(&[&[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(rho_weight(&w), 5);
        assert_eq!(hamming_weight(&w), 3);
        assert_eq!(rho_weight(&CodeWord::zero(2, 3)), 0);
        let ones = CodeWord::from_flat(3, 4, vec![Elem(1); 12]).unwrap();
        assert_eq!(rho_weight(&ones), 12);
        let mut diag = CodeWord::zero(3, 3);
        for j in 0..3 {
            diag.set(j, j, Elem(1));
        }
        assert_eq!(hamming_weight(&diag), 3);
    }

    #[test]
    fn combine_examples() {
        let sp = space(2, 1, 1, 2);
        let half = sp.word(vec![Elem(0), Elem(1)]).unwrap();
        assert_eq!(sp.coordinate(&half, 0), Ratio::new(BigInt::from(1), BigInt::from(2)));
        assert!(sp.add(&half, &half).unwrap().is_zero());
        assert_eq!(sp.linear_combine(Elem(1), &half, Elem(0), &sp.zero()).unwrap(), half);
        let sp3 = space(3, 1, 2, 2);
        let x = sp3.word_at(40);
        assert!(sp3.sub(&x, &x).unwrap().is_zero());
        let other = space(3, 1, 1, 4);
        assert!(sp3.add(&x, &other.zero()).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let sp = space(2, 1, 1, 3);
        let a = sp.word(vec![Elem(1), Elem(0), Elem(0)]).unwrap();
        let b = sp.word(vec![Elem(0), Elem(0), Elem(1)]).unwrap();
        assert_eq!(sp.inner_product(&a, &b).unwrap(), Elem(1));
        assert_eq!(sp.inner_product(&a, &sp.zero()).unwrap(), Elem(0));
        let sp3 = space(3, 1, 1, 2);
        let a = sp3.word(vec![Elem(1), Elem(2)]).unwrap();
        let b = sp3.word(vec![Elem(2), Elem(1)]).unwrap();
        assert_eq!(sp3.inner_product(&a, &b).unwrap(), Elem(2));
    }

    #[test]
    fn tau_examples() {
        let r = |a: i64, b: i64| Ratio::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(tau_project(&r(3, 4), 2, 1), r(1, 2));
        assert_eq!(tau_project(&r(0, 1), 3, 2), r(0, 1));
        assert_eq!(tau_project(&r(5, 9), 3, 2), r(5, 9));
        assert_eq!(tau_project(&r(5, 9), 3, 1), r(1, 3));
        for num in 0..64 {
            let x = r(num, 64);
            let t = tau_project(&x, 2, 3);
            let diff = &x - &t;
            assert!(diff >= r(0, 1) && diff < r(1, 8));
            assert_eq!(tau_project(&t, 2, 3), t);
        }
    }

    #[test]
    fn metric_axioms_exhaustive_small() {
        for (n, s) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let sp = space(2, 1, n, s);
            let words: Vec<CodeWord> = sp.words().unwrap().collect();
            for x in &words {
                assert_eq!(rho_weight(x) == 0, x.is_zero());
                for y in &words {
                    let sum = sp.add(x, y).unwrap();
                    assert!(rho_weight(&sum) <= rho_weight(x) + rho_weight(y));
                }
            }
        }
        let sp = space(3, 1, 2, 2);
        for x in sp.words().unwrap() {
            assert_eq!(rho_weight(&sp.scale(Elem(2), &x).unwrap()), rho_weight(&x));
        }
    }

    #[test]
    fn kappa_rho_sandwich_exhaustive() {
        for (p, e, n, s) in [(2, 1, 2, 3), (3, 1, 2, 2), (2, 2, 1, 3), (2, 1, 3, 2)] {
            let sp = space(p, e, n, s);
            for w in sp.words().unwrap() {
                let (k, r) = (hamming_weight(&w), rho_weight(&w));
                assert!(k <= r && r <= s * k);
            }
        }
    }

    #[test]
    fn inner_product_nondegenerate_exhaustive() {
        for (p, e, n, s) in [(2, 1, 2, 2), (3, 1, 1, 2), (2, 2, 1, 2), (2, 1, 1, 3)] {
            let sp = space(p, e, n, s);
            let words: Vec<CodeWord> = sp.words().unwrap().collect();
            for a in &words {
                let orth = words
                    .iter()
                    .all(|b| sp.inner_product(a, b).unwrap().is_zero());
                assert_eq!(orth, a.is_zero());
                for b in &words {
                    assert_eq!(sp.inner_product(a, b).unwrap(), sp.inner_product(b, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn point_bounds_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            for s in 1..=4usize {
                let sp = space(p, e, 1, s);
                let q = sp.q() as u128;
                let den = q.pow(s as u32);
                for w in sp.words().unwrap() {
                    let r = rho_weight(&w);
                    let num = sp.numerator(&w, 0);
                    if num == 0 {
                        continue;
                    }
                    // q^{r-s-1} ≤ x < q^{r-s}, scaled by q^{s+1}
                    assert!(q.pow(r as u32) <= num * q);
                    assert!(num * q < q.pow(r as u32 + 1));
                    assert!(num < den);
                }
            }
        }
    }

    #[test]
    fn point_round_trip() {
        let sp = space(3, 2, 2, 2);
        for i in (0..sp.size().unwrap()).step_by(97) {
            let w = sp.word_at(i);
            assert_eq!(sp.word_of(&sp.point(&w)).unwrap(), w);
        }
        let bad = [Ratio::new(BigInt::from(1), BigInt::from(2)), Ratio::zero()];
        assert!(sp.word_of(&bad).is_err());
    }

    proptest! {
        // A nonsingular lower-triangular v preserves the ρ-weight of a row: ρ(ωv) = ρ(ω).
        #[test]
        fn lower_triangular_invariance(
            row in proptest::collection::vec(0u32..5, 5),
            low in proptest::collection::vec(0u32..5, 10),
            diag in proptest::collection::vec(1u32..5, 5),
        ) {
            let f = Field::prime(5).unwrap();
            let s = 5;
            let mut v = vec![vec![Elem::ZERO; s]; s];
            let mut it = low.into_iter();
            for r in 0..s {
                v[r][r] = Elem(diag[r]);
                for c in 0..r {
                    v[r][c] = Elem(it.next().unwrap());
                }
            }
            let w: Vec<Elem> = row.iter().map(|&x| Elem(x)).collect();
            let prod: Vec<Elem> = (0..s)
                .map(|c| (0..s).fold(Elem::ZERO, |acc, r| f.add(acc, f.mul(w[r], v[r][c]))))
                .collect();
            prop_assert_eq!(row_rho(&prod), row_rho(&w));
        }

        #[test]
        fn kappa_rho_sandwich_random(idx in 0u64..(1u64 << 40)) {
            let sp = space(3, 1, 4, 6);
            let w = sp.word_at(idx * 7919 % sp.size().unwrap());
            let (k, r) = (hamming_weight(&w), rho_weight(&w));
            prop_assert!(k <= r && r <= 6 * k);
        }
    }
}
