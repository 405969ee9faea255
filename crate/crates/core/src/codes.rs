//! Linear codes in `Mat_{n,s}(F_q)`: weights, duality under the reversal pairing,
//! parity checks, box and weight enumerators, and the one-dimensional MacWilliams identity.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{compositions, Distribution};
use crate::gf::Elem;
use crate::linalg::{self, Matrix};
use crate::space::{hamming_weight, rho_weight, CodeWord, Space};

/// Codes with at most this many words are weighed by enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 22;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Metric {
    Rho,
    Kappa,
}

impl Metric {
    pub fn weight(self, w: &CodeWord) -> usize {
        match self {
            Metric::Rho => rho_weight(w),
            Metric::Kappa => hamming_weight(w),
        }
    }
}

/// Reverses the entries inside each length-`s` block.
pub fn reverse_blocks(v: &[Elem], s: usize) -> Vec<Elem> {
    v.chunks(s).flat_map(|b| b.iter().rev().copied()).collect()
}

/// A subspace of `Mat_{n,s}(F_q)` held as a reduced row echelon basis of flattened words.
#[derive(Clone, Debug)]
pub struct LinearCode {
    space: Space,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.basis == other.basis
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Row space of `rows` (any spanning set).
    pub fn new(space: Space, rows: &[Vec<Elem>]) -> Result<Self> {
        for r in rows {
            if r.len() != space.dim() {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a space of dimension {}",
                    r.len(),
                    space.dim()
                )));
            }
            if let Some(e) = r.iter().find(|e| e.0 >= space.q()) {
                return Err(Error::LabelOutOfRange { label: e.0 as u64, q: space.q() });
            }
        }
        let (basis, pivots) = linalg::rref(space.field(), rows);
        Ok(LinearCode { space, basis, pivots })
    }

    pub fn from_words(space: Space, words: &[CodeWord]) -> Result<Self> {
        for w in words {
            space.check(w)?;
        }
        let rows: Vec<Vec<Elem>> = words.iter().map(|w| w.flat().to_vec()).collect();
        Self::new(space, &rows)
    }

    pub fn zero(space: Space) -> Self {
        LinearCode { space, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn whole(space: Space) -> Self {
        let d = space.dim();
        let rows: Matrix = (0..d)
            .map(|i| {
                let mut r = vec![Elem::ZERO; d];
                r[i] = Elem::ONE;
                r
            })
            .collect();
        LinearCode { space, basis: rows, pivots: (0..d).collect() }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Dimension over `F_q`.
    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_words(&self) -> Vec<CodeWord> {
        self.basis
            .iter()
            .map(|r| CodeWord::from_flat(self.space.n(), self.space.s(), r.clone()).unwrap())
            .collect()
    }

    /// `q^k` if it fits in a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        (self.space.q() as u64).checked_pow(self.k() as u32)
    }

    pub fn contains(&self, w: &CodeWord) -> bool {
        self.space.check(w).is_ok()
            && linalg::in_row_space(self.space.field(), &self.basis, &self.pivots, w.flat())
    }

    /// Whether `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.basis_words().iter().all(|w| other.contains(w))
    }

    /// All code words, first basis coefficient varying fastest.
    pub fn codewords(&self, bound: u64) -> Result<Vec<CodeWord>> {
        let (n, s) = (self.space.n(), self.space.s());
        Ok(linalg::span(self.space.field(), &self.basis, self.space.dim(), bound)?
            .into_iter()
            .map(|v| CodeWord::from_flat(n, s, v).unwrap())
            .collect())
    }

    pub fn distribution(&self, bound: u64) -> Result<Distribution> {
        Distribution::new(self.space.clone(), self.codewords(bound)?)
    }

    /// Minimum weight of a nonzero word. Small codes are enumerated; larger ones are
    /// weighed through column dependencies of a parity check.
    pub fn weight(&self, metric: Metric) -> Result<usize> {
        self.weight_bounded(metric, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn weight_bounded(&self, metric: Metric, bound: u64) -> Result<usize> {
        if self.k() == 0 {
            return Err(Error::ZeroCode);
        }
        match self.cardinality() {
            Some(size) if size <= bound => self.weight_enumerated(metric, bound),
            _ => {
                let h = self.parity_check();
                let w = match metric {
                    Metric::Rho => h.rho_sharp(),
                    Metric::Kappa => h.kappa_sharp(),
                };
                Ok(w.expect("a nonzero code has a dependency"))
            }
        }
    }

    pub fn weight_enumerated(&self, metric: Metric, bound: u64) -> Result<usize> {
        if self.k() == 0 {
            return Err(Error::ZeroCode);
        }
        Ok(self
            .codewords(bound)?
            .iter()
            .filter(|w| !w.is_zero())
            .map(|w| metric.weight(w))
            .min()
            .unwrap())
    }

    /// `ρ(C)`, with the zero code assigned `ns + 1`.
    pub fn rho_or_infinity(&self) -> Result<usize> {
        if self.k() == 0 {
            return Ok(self.space.dim() + 1);
        }
        self.weight(Metric::Rho)
    }

    /// `ρ(C) = ns − k + 1`.
    pub fn is_mds(&self) -> Result<bool> {
        Ok(self.weight(Metric::Rho)? == self.space.dim() - self.k() + 1)
    }

    /// Annihilator under the reversal pairing.
    pub fn dual(&self) -> LinearCode {
        let s = self.space.s();
        let null = linalg::nullspace(self.space.field(), &self.basis, self.space.dim());
        let rows: Matrix = null.iter().map(|v| reverse_blocks(v, s)).collect();
        let (basis, pivots) = linalg::rref(self.space.field(), &rows);
        LinearCode { space: self.space.clone(), basis, pivots }
    }

    /// `H` with `C = {Ω : H vec(Ω) = 0}`; column `(j, i)` multiplies `ξ_{i+1}` of row `j`.
    pub fn parity_check(&self) -> ParityCheck {
        let h = linalg::nullspace(self.space.field(), &self.basis, self.space.dim());
        ParityCheck { space: self.space.clone(), h }
    }

    pub fn from_parity_check(h: &ParityCheck) -> LinearCode {
        let rows = linalg::nullspace(h.space.field(), &h.h, h.space.dim());
        let (basis, pivots) = linalg::rref(h.space.field(), &rows);
        LinearCode { space: h.space.clone(), basis, pivots }
    }

    /// Dimension of the intersection with `V^0_A`, the words whose top `a_j` digits vanish in each row.
    fn corner_dim(&self, a: &[usize]) -> usize {
        let s = self.space.s();
        let cols: Vec<usize> = a
            .iter()
            .enumerate()
            .flat_map(|(j, &aj)| (s - aj..s).map(move |i| j * s + i))
            .collect();
        let restricted: Matrix = self
            .basis
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        self.k() - linalg::rank(self.space.field(), &restricted)
    }

    /// `φ(D; z) = Σ_A #(D ∩ Δ^0_A) z^A` over `A ∈ [0,s]^n`.
    pub fn box_enumerator(&self) -> Result<BoxEnumerator> {
        let (n, s) = (self.space.n(), self.space.s());
        let q = self.space.q() as u128;
        let mut coeffs = Vec::new();
        for a in box_shapes(n, s) {
            let d = self.corner_dim(&a);
            coeffs.push(q.checked_pow(d as u32).ok_or_else(|| Error::TooLarge("box count".into()))?);
        }
        Ok(BoxEnumerator { n, s, coeffs })
    }

    /// `W(D; z) = Σ_r w_r z^r` for the spectrum anchored at zero, by enumeration.
    pub fn weight_enumerator(&self, bound: u64) -> Result<Vec<u128>> {
        let mut w = vec![0u128; self.space.dim() + 1];
        for x in self.codewords(bound)? {
            w[rho_weight(&x)] += 1;
        }
        Ok(w)
    }
}

/// `[0,s]^n` in mixed-radix order with `a_1` fastest.
pub fn box_shapes(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    loop {
        out.push(a.clone());
        let mut j = 0;
        loop {
            if j == n {
                return out;
            }
            if a[j] < s {
                a[j] += 1;
                break;
            }
            a[j] = 0;
            j += 1;
        }
    }
}

/// Box enumerator coefficients indexed like [`box_shapes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxEnumerator {
    pub n: usize,
    pub s: usize,
    pub coeffs: Vec<u128>,
}

impl BoxEnumerator {
    fn index(&self, a: &[usize]) -> usize {
        a.iter().rev().fold(0, |acc, &x| acc * (self.s + 1) + x)
    }

    pub fn coeff(&self, a: &[usize]) -> u128 {
        self.coeffs[self.index(a)]
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, u128)> + '_ {
        box_shapes(self.n, self.s).into_iter().zip(self.coeffs.iter().copied())
    }
}

/// Whether `φ(D; z) = #D (z_1⋯z_n/q^n)^s φ(D^⊥; q/z_1, …, q/z_n)`, compared coefficientwise as
/// `q^{Σa} c_A = #D · c^⊥_{A*}` with `A* = (s − a_1, …, s − a_n)`.
pub fn box_duality_holds(code: &LinearCode, dual: &LinearCode) -> Result<bool> {
    let phi = code.box_enumerator()?;
    let phi_dual = dual.box_enumerator()?;
    let q = BigInt::from(code.space.q());
    let size = q.pow(code.k() as u32);
    let s = code.space.s();
    for (a, c) in phi.terms() {
        let star: Vec<usize> = a.iter().map(|&x| s - x).collect();
        let sum: usize = a.iter().sum();
        let lhs = BigInt::from(c) * q.pow(sum as u32);
        let rhs = &size * BigInt::from(phi_dual.coeff(&star));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_n1(code: &LinearCode) -> Result<()> {
    if code.space.n() != 1 {
        return Err(Error::IdentityUnavailable);
    }
    Ok(())
}

/// For `n = 1`: `W(D; z) = (1 − z) Σ_a c_a z^{s−a} + #D z^{s+1}`.
pub fn weight_from_boxes_n1(code: &LinearCode) -> Result<Vec<BigInt>> {
    require_n1(code)?;
    let s = code.space.s();
    let phi = code.box_enumerator()?;
    let mut w = vec![BigInt::zero(); s + 2];
    for (a, c) in phi.terms() {
        let e = s - a[0];
        w[e] += BigInt::from(c);
        w[e + 1] -= BigInt::from(c);
    }
    w[s + 1] += BigInt::from(code.space.q()).pow(code.k() as u32);
    Ok(w)
}

/// `v(D; z) = (qz − 1) W(D; z) + 1 − z` as integer coefficients.
pub fn v_polynomial(q: u32, w: &[u128]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); w.len() + 1];
    let q = BigInt::from(q);
    for (i, &c) in w.iter().enumerate() {
        let c = BigInt::from(c);
        v[i + 1] += &q * &c;
        v[i] -= c;
    }
    v[0] += BigInt::one();
    v[1] -= BigInt::one();
    v
}

/// Checks `v(D; z) = #D q z^{s+2} v(D^⊥; 1/(qz))` for `n = 1` after multiplying both
/// sides by `q^{s+1}`.
pub fn macwilliams_n1_check(code: &LinearCode, dual: &LinearCode, bound: u64) -> Result<bool> {
    require_n1(code)?;
    require_n1(dual)?;
    let s = code.space.s();
    let q = code.space.q();
    let qb = BigInt::from(q);
    let v = v_polynomial(q, &code.weight_enumerator(bound)?);
    let v_dual = v_polynomial(q, &dual.weight_enumerator(bound)?);
    let size = qb.pow(code.k() as u32);
    let mut lhs = vec![BigInt::zero(); s + 3];
    for (i, c) in v.iter().enumerate() {
        lhs[i] += c * qb.pow(s as u32 + 1);
    }
    let mut rhs = vec![BigInt::zero(); s + 3];
    for (i, c) in v_dual.iter().enumerate() {
        rhs[s + 2 - i] += &size * &qb * c * qb.pow((s + 1 - i) as u32);
    }
    Ok(lhs == rhs)
}

/// A parity-check matrix: `k'` rows of length `ns`, in `n` blocks of `s` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheck {
    space: Space,
    h: Matrix,
}

impl ParityCheck {
    pub fn new(space: Space, h: Matrix) -> Result<Self> {
        if h.iter().any(|r| r.len() != space.dim()) {
            return Err(Error::ShapeMismatch("parity-check rows must have length ns".into()));
        }
        Ok(ParityCheck { space, h })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.h
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.space.field(), &self.h)
    }

    fn columns_dependent(&self, cols: &[usize]) -> bool {
        if cols.len() > self.h.len() {
            return true;
        }
        let rows: Matrix = cols
            .iter()
            .map(|&c| self.h.iter().map(|r| r[c]).collect())
            .collect();
        linalg::rank(self.space.field(), &rows) < cols.len()
    }

    /// Smallest `Σ d_j` over `d ≠ 0` for which the first `d_j` columns of every block are
    /// jointly dependent; `None` when no such `d` exists (the code is zero).
    pub fn rho_sharp(&self) -> Option<usize> {
        let (n, s) = (self.space.n(), self.space.s());
        for total in 1..=n * s {
            for d in compositions(n, total, s) {
                let cols: Vec<usize> = d
                    .iter()
                    .enumerate()
                    .flat_map(|(j, &dj)| (0..dj).map(move |i| j * s + i))
                    .collect();
                if self.columns_dependent(&cols) {
                    return Some(total);
                }
            }
        }
        None
    }

    /// Smallest number of dependent columns.
    pub fn kappa_sharp(&self) -> Option<usize> {
        let m = self.space.dim();
        for size in 1..=m {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                if self.columns_dependent(&idx) {
                    return Some(size);
                }
                // next combination
                let mut i = size;
                while i > 0 && idx[i - 1] == m - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for t in i..size {
                    idx[t] = idx[t - 1] + 1;
                }
            }
        }
        None
    }
}

/// Minimum pairwise ρ-distance of a multiset of points; 0 when a point repeats.
pub fn rho_of_distribution(d: &Distribution) -> Option<usize> {
    let pts = d.points();
    let space = d.space();
    let mut best: Option<usize> = None;
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            let r = space.rho_distance(x, y).ok()?;
            best = Some(best.map_or(r, |b| b.min(r)));
        }
    }
    best
}

/// Result of evaluating `Σ_{X∈D} Ψ(Y, X)` with `Ψ = exp(2πi Tr⟨Y,X⟩ / p)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterSumReport {
    pub evaluated: u64,
    /// `Y` in the dual whose sum was `#D`.
    pub full: u64,
    /// `Y` outside the dual whose sum vanished.
    pub vanishing: u64,
    /// `Y` contradicting the dichotomy.
    pub failures: u64,
    pub box_duality: bool,
}

impl CharacterSumReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.box_duality
    }
}

/// Counts of `Tr⟨Y,X⟩` values in `F_p` over `X ∈ D`. The character sum equals `#D`
/// when every trace is zero and vanishes when the counts are all equal.
pub fn trace_counts(code: &LinearCode, words: &[CodeWord], y: &CodeWord) -> Vec<u64> {
    let field = code.space.field();
    let mut counts = vec![0u64; field.p() as usize];
    for x in words {
        let t = field.trace(code.space.inner_unchecked(y.flat(), x.flat()));
        counts[t.0 as usize] += 1;
    }
    counts
}

fn classify(report: &mut CharacterSumReport, counts: &[u64], size: u64, in_dual: bool) {
    report.evaluated += 1;
    let full = counts[0] == size;
    let vanishing = counts.iter().all(|&c| c == counts[0]);
    match (in_dual, full, vanishing) {
        (true, true, _) => report.full += 1,
        (false, false, true) => report.vanishing += 1,
        _ => report.failures += 1,
    }
}

/// Character-sum dichotomy for every `Y` of the space, plus the box-count duality.
pub fn character_sum_check(code: &LinearCode, bound: u64) -> Result<CharacterSumReport> {
    let words = code.codewords(bound)?;
    let dual = code.dual();
    let size = words.len() as u64;
    let mut report = CharacterSumReport::default();
    for y in code.space.words()? {
        let counts = trace_counts(code, &words, &y);
        classify(&mut report, &counts, size, dual.contains(&y));
    }
    report.box_duality = box_duality_holds(code, &dual)?;
    Ok(report)
}

/// As [`character_sum_check`] on `samples` random `Y`, half of them drawn from the dual.
pub fn character_sum_sample<R: Rng + ?Sized>(
    code: &LinearCode,
    rng: &mut R,
    samples: usize,
    bound: u64,
) -> Result<CharacterSumReport> {
    let words = code.codewords(bound)?;
    let dual = code.dual();
    let field = code.space.field();
    let size = words.len() as u64;
    let mut report = CharacterSumReport::default();
    for i in 0..samples {
        let y = if i % 2 == 0 && dual.k() > 0 {
            let coeffs: Vec<Elem> = (0..dual.k()).map(|_| Elem(rng.gen_range(0..field.q()))).collect();
            let flat = linalg::combine(field, &coeffs, dual.basis(), code.space.dim());
            code.space.word(flat)?
        } else {
            let flat = (0..code.space.dim()).map(|_| Elem(rng.gen_range(0..field.q()))).collect();
            code.space.word(flat)?
        };
        let counts = trace_counts(code, &words, &y);
        classify(&mut report, &counts, size, dual.contains(&y));
    }
    report.box_duality = box_duality_holds(code, &dual)?;
    Ok(report)
}

/// Distinct words of a code, as a set.
pub fn word_set(words: &[CodeWord]) -> BTreeSet<CodeWord> {
    words.iter().cloned().collect()
}
