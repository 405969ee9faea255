//! Elementary boxes, nets, optimum distributions and exact star discrepancy.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::space::{CodeWord, Space};

/// Default cap on grid corners times points for the exact discrepancy.
pub const DEFAULT_DISCREPANCY_BOUND: u128 = 10_000_000;

/// `Δ^M_A = Π_j [m_j q^{-a_j}, (m_j + 1) q^{-a_j})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryBox {
    pub a: Vec<usize>,
    pub m: Vec<u64>,
}

impl ElementaryBox {
    pub fn new(a: Vec<usize>, m: Vec<u64>) -> Self {
        ElementaryBox { a, m }
    }

    /// The box `Δ^0_A` at the origin.
    pub fn corner(a: Vec<usize>) -> Self {
        let m = vec![0; a.len()];
        ElementaryBox { a, m }
    }

    /// `Σ a_j`; the volume is `q^{-Σa}`.
    pub fn volume_exponent(&self) -> usize {
        self.a.iter().sum()
    }

    /// Digit test: the leading `a_j` radix digits of `x_j` spell `m_j`. Digits past the
    /// depth of the word are zero.
    pub fn contains(&self, q: u32, w: &CodeWord) -> bool {
        let s = w.s();
        let q = q as u64;
        for (j, (&a, &m)) in self.a.iter().zip(&self.m).enumerate() {
            let mut rest = m;
            for i in (0..a).rev() {
                let want = rest % q;
                rest /= q;
                let have = if i < s { w.get(j, s - 1 - i).0 as u64 } else { 0 };
                if want != have {
                    return false;
                }
            }
            if rest != 0 {
                return false;
            }
        }
        true
    }
}

/// A multiset of points of `Q^n(q^s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    space: Space,
    points: Vec<CodeWord>,
}

/// A box whose population differs from the required one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxViolation {
    pub region: ElementaryBox,
    pub count: u64,
    pub expected: BoxRule,
}

/// Population rule a box must satisfy.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoxRule {
    Exactly(u64),
    AtMost(u64),
}

impl BoxRule {
    fn allows(self, count: u64) -> bool {
        match self {
            BoxRule::Exactly(c) => count == c,
            BoxRule::AtMost(c) => count <= c,
        }
    }
}

/// Outcome of a box-population check; `violation` is the first failing box in
/// enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub shapes: u64,
    pub violation: Option<BoxViolation>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Parameters `(δ, s, n)` of a net.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct NetParams {
    pub delta: usize,
    pub depth: usize,
    pub n: usize,
}

/// Compositions `A ∈ [0, max]^n` with `Σ a_j = total`, with `a_1` varying fastest.
pub fn compositions(n: usize, total: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut a = vec![0usize; n];
    loop {
        if a.iter().sum::<usize>() == total {
            out.push(a.clone());
        }
        let mut j = 0;
        loop {
            if j == n {
                return out;
            }
            if a[j] < max.min(total) {
                a[j] += 1;
                break;
            }
            a[j] = 0;
            j += 1;
        }
    }
}

fn checked_pow_u128(q: u32, e: usize) -> Option<u128> {
    (q as u128).checked_pow(e as u32)
}

impl Distribution {
    pub fn new(space: Space, points: Vec<CodeWord>) -> Result<Self> {
        for p in &points {
            space.check(p)?;
        }
        Ok(Distribution { space, points })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn points(&self) -> &[CodeWord] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    pub fn box_count(&self, region: &ElementaryBox) -> u64 {
        let q = self.q();
        self.points.iter().filter(|w| region.contains(q, w)).count() as u64
    }

    /// Mixed-radix key of the box of shape `a` holding `w`; `m_1` is least significant.
    fn key(&self, a: &[usize], w: &CodeWord) -> u128 {
        let q = self.q() as u128;
        let s = w.s();
        let mut key = 0u128;
        for j in (0..a.len()).rev() {
            for i in 0..a[j] {
                let d = if i < s { w.get(j, s - 1 - i).0 as u128 } else { 0 };
                key = key * q + d;
            }
        }
        key
    }

    fn decode(&self, a: &[usize], mut key: u128) -> Vec<u64> {
        let q = self.q() as u128;
        a.iter()
            .map(|&aj| {
                let base = q.pow(aj as u32);
                let m = key % base;
                key /= base;
                m as u64
            })
            .collect()
    }

    /// Checks every box of shape `a` against `rule`; returns the first offender.
    pub fn scan_shape(&self, a: &[usize], rule: BoxRule) -> Result<Option<BoxViolation>> {
        let total_digits: usize = a.iter().sum();
        let boxes = checked_pow_u128(self.q(), total_digits)
            .filter(|&b| b < u128::MAX / 2)
            .ok_or_else(|| Error::TooLarge(format!("q^{total_digits} boxes of one shape")))?;
        let mut keys: Vec<u128> = self.points.iter().map(|w| self.key(a, w)).collect();
        keys.sort_unstable();
        let violation = |key: u128, count: u64| BoxViolation {
            region: ElementaryBox::new(a.to_vec(), self.decode(a, key)),
            count,
            expected: rule,
        };
        let mut next = 0u128;
        let mut i = 0;
        while i < keys.len() {
            let key = keys[i];
            let mut run = 0u64;
            while i < keys.len() && keys[i] == key {
                run += 1;
                i += 1;
            }
            if next < key && !rule.allows(0) {
                return Ok(Some(violation(next, 0)));
            }
            if !rule.allows(run) {
                return Ok(Some(violation(key, run)));
            }
            next = key + 1;
        }
        if next < boxes && !rule.allows(0) {
            return Ok(Some(violation(next, 0)));
        }
        Ok(None)
    }

    fn scan_shapes(&self, shapes: &[Vec<usize>], rule: impl Fn(&[usize]) -> BoxRule) -> Result<Check> {
        for a in shapes {
            if let Some(v) = self.scan_shape(a, rule(a))? {
                return Ok(Check { shapes: shapes.len() as u64, violation: Some(v) });
            }
        }
        Ok(Check { shapes: shapes.len() as u64, violation: None })
    }

    fn expect_len(&self, expected: u128) -> Result<()> {
        if self.points.len() as u128 != expected {
            return Err(Error::CardinalityMismatch {
                expected: expected.min(u64::MAX as u128) as u64,
                found: self.points.len() as u64,
            });
        }
        Ok(())
    }

    /// `(δ, s, n)`-net test at the point depth `s`.
    pub fn is_net(&self, delta: usize) -> Result<Check> {
        self.is_net_depth(delta, self.space.s())
    }

    /// Net test for `q^depth` points: every box of volume `q^{δ-depth}` holds `q^δ` points.
    pub fn is_net_depth(&self, delta: usize, depth: usize) -> Result<Check> {
        if delta > depth {
            return Err(Error::InvalidParameter(format!("δ = {delta} exceeds {depth}")));
        }
        let q = self.q();
        let n_points = checked_pow_u128(q, depth)
            .ok_or_else(|| Error::TooLarge(format!("q^{depth} points")))?;
        self.expect_len(n_points)?;
        let per_box = checked_pow_u128(q, delta).unwrap() as u64;
        let shapes = compositions(self.space.n(), depth - delta, depth - delta);
        self.scan_shapes(&shapes, |_| BoxRule::Exactly(per_box))
    }

    /// Every box of `E_s(q,n)` of volume `q^{-k}` holds exactly one point.
    pub fn is_optimum(&self, k: usize) -> Result<Check> {
        self.check_k(k)?;
        let shapes = compositions(self.space.n(), k, self.space.s());
        self.scan_shapes(&shapes, |_| BoxRule::Exactly(1))
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.space.dim() {
            return Err(Error::InvalidParameter(format!("k = {k} exceeds ns = {}", self.space.dim())));
        }
        let n_points = checked_pow_u128(self.q(), k).ok_or_else(|| Error::TooLarge(format!("q^{k} points")))?;
        self.expect_len(n_points)
    }

    /// Boxes of volume at least `q^{-k}` hold `q^{k-Σa}` points; smaller boxes at most one.
    pub fn check_counts(&self, k: usize) -> Result<Check> {
        self.check_k(k)?;
        let (n, s) = (self.space.n(), self.space.s());
        let q = self.q();
        let shapes: Vec<Vec<usize>> = (0..=n * s).flat_map(|t| compositions(n, t, s)).collect();
        self.scan_shapes(&shapes, |a| {
            let t: usize = a.iter().sum();
            if t <= k {
                BoxRule::Exactly(checked_pow_u128(q, k - t).unwrap() as u64)
            } else {
                BoxRule::AtMost(1)
            }
        })
    }

    /// An optimum `[ns,k]_s` distribution with `k ≥ s` is a `(k-s, k, n)`-net; returns the
    /// parameters together with the direct net check.
    pub fn net_from_optimum(&self, k: usize) -> Result<(NetParams, Check)> {
        let s = self.space.s();
        if k < s {
            return Err(Error::InvalidParameter(format!("k = {k} below s = {s}; rescale instead")));
        }
        self.check_k(k)?;
        let params = NetParams { delta: k - s, depth: k, n: self.space.n() };
        let check = self.is_net_depth(params.delta, params.depth)?;
        Ok((params, check))
    }

    /// Rewrites every digit over `F_{p^e}` as `e` digits over `F_p`, least significant
    /// coordinate first within each digit. The real points are unchanged.
    pub fn to_base_p(&self) -> Result<Distribution> {
        let field = self.space.field();
        let prime = Arc::new(Field::prime(field.p())?);
        let e = field.e() as usize;
        let (n, s) = (self.space.n(), self.space.s());
        let space = Space::new(prime, n, s * e)?;
        let points = self
            .points
            .iter()
            .map(|w| word_to_base_p(field, w))
            .collect();
        Ok(Distribution { space, points })
    }

    /// Checks that a `(δ, s, n)`-net in base `p^e` is a `(eδ + (e-1)(n-1), es, n)`-net in base `p`.
    pub fn base_reduce_net(&self, delta: usize) -> Result<(NetParams, Check)> {
        let e = self.space.field().e() as usize;
        let n = self.space.n();
        let s = self.space.s();
        let delta_p = (e * delta + (e - 1) * (n - 1)).min(e * s);
        let reduced = self.to_base_p()?;
        let check = reduced.is_net_depth(delta_p, e * s)?;
        Ok((NetParams { delta: delta_p, depth: e * s, n }, check))
    }

    /// Coordinate numerators over the common denominator `q^s`.
    fn numerators(&self) -> Vec<Vec<u128>> {
        self.points
            .iter()
            .map(|w| (0..self.space.n()).map(|j| self.space.numerator(w, j)).collect())
            .collect()
    }

    /// `sup_Y |#(D ∩ [0,Y)) − N vol[0,Y)|`, exact.
    pub fn local_discrepancy_sup(&self) -> Result<Ratio<BigInt>> {
        self.discrepancy_parts(DEFAULT_DISCREPANCY_BOUND)
            .map(|(num, den_scale, _)| Ratio::new(BigInt::from(num), BigInt::from(den_scale)))
    }

    /// Star discrepancy normalized by `N`.
    pub fn star_discrepancy(&self) -> Result<Ratio<BigInt>> {
        self.star_discrepancy_bounded(DEFAULT_DISCREPANCY_BOUND)
    }

    pub fn star_discrepancy_bounded(&self, bound: u128) -> Result<Ratio<BigInt>> {
        let (num, den_scale, n_points) = self.discrepancy_parts(bound)?;
        Ok(Ratio::new(
            BigInt::from(num),
            BigInt::from(den_scale) * BigInt::from(n_points),
        ))
    }

    /// Returns `(L·Q^n, Q^n, N)` where `Q = q^s`. Only corners built from point
    /// coordinates, 0 and 1 matter: counts are constant between them and the volume is
    /// monotone, so the excess is maximized with closed counts and the deficit with open ones.
    fn discrepancy_parts(&self, bound: u128) -> Result<(i128, i128, u64)> {
        let n_points = self.points.len();
        if n_points == 0 {
            return Err(Error::InvalidParameter("empty distribution".into()));
        }
        let n = self.space.n();
        let big_q = checked_pow_u128(self.q(), self.space.s())
            .ok_or_else(|| Error::TooLarge("q^s".into()))?;
        let too_large = || Error::TooLarge("discrepancy arithmetic exceeds 128 bits".into());
        let scale = big_q
            .checked_pow(n as u32)
            .and_then(|v| i128::try_from(v).ok())
            .ok_or_else(too_large)?;
        let nums = self.numerators();
        let mut axes: Vec<Vec<u128>> = Vec::with_capacity(n);
        let mut grid = 1u128;
        for j in 0..n {
            let mut v: Vec<u128> = nums.iter().map(|x| x[j]).collect();
            v.push(0);
            v.push(big_q);
            v.sort_unstable();
            v.dedup();
            grid = grid.saturating_mul(v.len() as u128);
            axes.push(v);
        }
        if grid.saturating_mul(n_points as u128) > bound {
            return Err(Error::TooLarge(format!(
                "{grid} grid corners for {n_points} points; use a sampled estimate"
            )));
        }
        let np = n_points as i128;
        let mut best = 0i128;
        let mut idx = vec![0usize; n];
        loop {
            let y: Vec<u128> = idx.iter().zip(&axes).map(|(&i, ax)| ax[i]).collect();
            let mut vol = 1i128;
            for &c in &y {
                vol = vol.checked_mul(c as i128).ok_or_else(too_large)?;
            }
            let mut closed = 0i128;
            let mut open = 0i128;
            for x in &nums {
                if x.iter().zip(&y).all(|(a, b)| a <= b) {
                    closed += 1;
                    if x.iter().zip(&y).all(|(a, b)| a < b) {
                        open += 1;
                    }
                }
            }
            let nvol = np.checked_mul(vol).ok_or_else(too_large)?;
            let excess = closed.checked_mul(scale).ok_or_else(too_large)? - nvol;
            let deficit = nvol - open * scale;
            best = best.max(excess).max(deficit);
            let mut j = 0;
            loop {
                if j == n {
                    return Ok((best, scale, n_points as u64));
                }
                idx[j] += 1;
                if idx[j] < axes[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }
}

/// Digit re-expression of one word: `q`-digit `ξ_i` becomes `p`-digits
/// `θ_{e(i-1)+d} = μ^{(d)}_i`.
pub fn word_to_base_p(field: &Field, w: &CodeWord) -> CodeWord {
    let e = field.e() as usize;
    let (n, s) = (w.n(), w.s());
    let mut out = Vec::with_capacity(n * s * e);
    for j in 0..n {
        for i in 0..s {
            out.extend(field.coords(w.get(j, i)).into_iter().map(Elem));
        }
    }
    CodeWord::from_flat(n, s * e, out).expect("shape is consistent")
}
