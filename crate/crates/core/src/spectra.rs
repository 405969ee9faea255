//! Spheres and balls in the ρ metric, the composition counters `σ_s` and `σ̃_s`,
//! and closed-form weight spectra of MDS codes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::space::{rho_weight, CodeWord, Space};

/// Where a spectrum came from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SpectrumSource {
    BruteForce,
    /// General MDS formula.
    Mds,
    /// Specialization to `k = s`.
    Net,
}

impl SpectrumSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectrumSource::BruteForce => "bruteforce",
            SpectrumSource::Mds => "mds-formula",
            SpectrumSource::Net => "net-formula",
        }
    }
}

/// `(w_0, …, w_{ns})`: the number of elements at each ρ-distance from an anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumVector {
    pub q: u32,
    pub n: usize,
    pub s: usize,
    pub w: Vec<BigInt>,
    pub source: SpectrumSource,
}

impl SpectrumVector {
    pub fn total(&self) -> BigInt {
        self.w.iter().sum()
    }

    /// Smallest positive index with a nonzero entry.
    pub fn min_weight(&self) -> Option<usize> {
        self.w.iter().skip(1).position(|x| !x.is_zero()).map(|i| i + 1)
    }

    /// Same values regardless of provenance.
    pub fn same_values(&self, other: &SpectrumVector) -> bool {
        self.q == other.q && self.n == other.n && self.s == other.s && self.w == other.w
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn pow(q: u32, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

/// Memoized `σ_s(l, r)`, the number of compositions of `r` into exactly `l` parts in `[1, s]`.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    s: usize,
    rows: Vec<Vec<BigInt>>,
}

impl SigmaTable {
    pub fn new(s: usize, max_l: usize) -> Self {
        let width = max_l * s + 1;
        let mut rows = vec![vec![BigInt::zero(); width]];
        rows[0][0] = BigInt::one();
        for l in 1..=max_l {
            let mut row = vec![BigInt::zero(); width];
            for r in l..=l * s {
                let mut acc = BigInt::zero();
                for part in 1..=s.min(r) {
                    acc += &rows[l - 1][r - part];
                }
                row[r] = acc;
            }
            rows.push(row);
        }
        SigmaTable { s, rows }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn get(&self, l: usize, r: usize) -> BigInt {
        self.rows
            .get(l)
            .and_then(|row| row.get(r))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

pub fn sigma(l: usize, r: usize, s: usize) -> BigInt {
    if r > l * s || l > r {
        return BigInt::zero();
    }
    SigmaTable::new(s, l).get(l, r)
}

/// `σ̃_s(n, r)`: vectors in `[0, s]^n` with coordinate sum `r`.
pub fn sigma_tilde(n: usize, r: usize, s: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); r + 1];
    row[0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); r + 1];
        for (total, slot) in next.iter_mut().enumerate() {
            for part in 0..=s.min(total) {
                *slot += &row[total - part];
            }
        }
        row = next;
    }
    row[r].clone()
}

/// `#S(r) = Σ_l C(n,l) σ_s(l,r) (q−1)^l q^{r−l}`.
pub fn sphere_size(q: u32, n: usize, s: usize, r: usize) -> Result<BigInt> {
    if r > n * s {
        return Err(Error::InvalidParameter(format!("radius {r} exceeds ns = {}", n * s)));
    }
    let table = SigmaTable::new(s, n);
    Ok(sphere_with(&table, q, n, r))
}

fn sphere_with(table: &SigmaTable, q: u32, n: usize, r: usize) -> BigInt {
    (0..=n.min(r))
        .map(|l| binomial(n, l) * table.get(l, r) * pow(q - 1, l) * pow(q, r - l))
        .sum()
}

/// Number of points within ρ-distance `t` of a point.
pub fn ball_volume(q: u32, n: usize, s: usize, t: usize) -> BigInt {
    let table = SigmaTable::new(s, n);
    (0..=t.min(n * s)).map(|r| sphere_with(&table, q, n, r)).sum()
}

/// Sphere packing: `N` disjoint balls of radius `t` fit only if `N · vol B(t) ≤ q^{ns}`.
pub fn ball_packing_check(count: &BigInt, t: usize, n: usize, s: usize, q: u32) -> bool {
    count * ball_volume(q, n, s, t) <= pow(q, n * s)
}

/// Histogram of `ρ(w − anchor)` over `words`; the anchor must be one of them.
pub fn spectrum_bruteforce(space: &Space, words: &[CodeWord], anchor: &CodeWord) -> Result<SpectrumVector> {
    space.check(anchor)?;
    if !words.contains(anchor) {
        return Err(Error::AnchorNotMember);
    }
    let mut w = vec![0u64; space.dim() + 1];
    for x in words {
        w[rho_weight(&space.sub(x, anchor)?)] += 1;
    }
    Ok(SpectrumVector {
        q: space.q(),
        n: space.n(),
        s: space.s(),
        w: w.into_iter().map(BigInt::from).collect(),
        source: SpectrumSource::BruteForce,
    })
}

fn check_mds_params(n: usize, s: usize, k: usize, q: u32) -> Result<()> {
    if n == 0 || s == 0 || q < 2 {
        return Err(Error::InvalidParameter(format!("n = {n}, s = {s}, q = {q}")));
    }
    if k == 0 || k > n * s {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={}", n * s)));
    }
    Ok(())
}

fn empty_spectrum(q: u32, n: usize, s: usize, source: SpectrumSource) -> SpectrumVector {
    let mut w = vec![BigInt::zero(); n * s + 1];
    w[0] = BigInt::one();
    SpectrumVector { q, n, s, w, source }
}

fn sign(t: usize) -> BigInt {
    if t % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Weight spectrum of any MDS `[ns,k]_s` code:
/// `w_r = Σ_l C(n,l) σ_s(l,r) Σ_{t=0}^{r−ρ} (−1)^t C(l,t) (q^{r−ρ+1−t} − 1)` for `r ≥ ρ = ns−k+1`.
pub fn spectrum_mds_formula(n: usize, s: usize, k: usize, q: u32) -> Result<SpectrumVector> {
    check_mds_params(n, s, k, q)?;
    let rho = n * s - k + 1;
    let table = SigmaTable::new(s, n);
    let mut out = empty_spectrum(q, n, s, SpectrumSource::Mds);
    for r in rho..=n * s {
        let d = r - rho;
        let mut wr = BigInt::zero();
        for l in 1..=n {
            let inner: BigInt = (0..=d)
                .map(|t| sign(t) * binomial(l, t) * (pow(q, d + 1 - t) - 1))
                .sum();
            wr += binomial(n, l) * table.get(l, r) * inner;
        }
        out.w[r] = wr;
    }
    Ok(out)
}

/// The same spectrum in its factored form
/// `w_r = (q−1) Σ_l C(n,l) σ_s(l,r) Σ_{t=0}^{r−ρ} (−1)^t C(l−1,t) q^{r−ρ−t}`.
pub fn spectrum_mds_formula_factored(n: usize, s: usize, k: usize, q: u32) -> Result<SpectrumVector> {
    check_mds_params(n, s, k, q)?;
    let rho = n * s - k + 1;
    let table = SigmaTable::new(s, n);
    let mut out = empty_spectrum(q, n, s, SpectrumSource::Mds);
    for r in rho..=n * s {
        let d = r - rho;
        let mut wr = BigInt::zero();
        for l in 1..=n {
            let inner: BigInt = (0..=d)
                .map(|t| sign(t) * binomial(l - 1, t) * pow(q, d - t))
                .sum();
            wr += binomial(n, l) * table.get(l, r) * inner;
        }
        out.w[r] = wr * BigInt::from(q - 1);
    }
    Ok(out)
}

/// Spectrum of a `(0,s,n)`-net (`k = s`, `ρ = (n−1)s+1`):
/// `w_r = σ̃_s(n,r) Σ_{t=0}^{r−ρ} (−1)^t C(n,t) (q^{r−ρ+1−t} − 1)`.
pub fn spectrum_net_formula(n: usize, s: usize, q: u32) -> Result<SpectrumVector> {
    check_mds_params(n, s, s, q)?;
    let rho = (n - 1) * s + 1;
    let mut out = empty_spectrum(q, n, s, SpectrumSource::Net);
    for r in rho..=n * s {
        let d = r - rho;
        let inner: BigInt = (0..=d)
            .map(|t| sign(t) * binomial(n, t) * (pow(q, d + 1 - t) - 1))
            .sum();
        out.w[r] = sigma_tilde(n, r, s) * inner;
    }
    Ok(out)
}

/// Factored net spectrum `w_r = σ̃_s(n,r) (q−1) Σ_{t=0}^{r−ρ} (−1)^t C(n−1,t) q^{r−ρ−t}`.
pub fn spectrum_net_formula_factored(n: usize, s: usize, q: u32) -> Result<SpectrumVector> {
    check_mds_params(n, s, s, q)?;
    let rho = (n - 1) * s + 1;
    let mut out = empty_spectrum(q, n, s, SpectrumSource::Net);
    for r in rho..=n * s {
        let d = r - rho;
        let inner: BigInt = (0..=d)
            .map(|t| sign(t) * binomial(n - 1, t) * pow(q, d - t))
            .sum();
        out.w[r] = sigma_tilde(n, r, s) * BigInt::from(q - 1) * inner;
    }
    Ok(out)
}

/// Net spectrum tail `w_r = σ̃_s(n,r) (q−1)^n q^{r−ρ−n+1}`, valid for `ρ+n−1 ≤ r ≤ ns`.
pub fn net_tail(n: usize, s: usize, q: u32, r: usize) -> Option<BigInt> {
    let rho = (n - 1) * s + 1;
    if r + 1 < rho + n || r > n * s {
        return None;
    }
    Some(sigma_tilde(n, r, s) * pow(q - 1, n) * pow(q, r + 1 - rho - n))
}

/// First nonzero weight `w_ρ = σ̃_s(n,ρ)(q−1)`.
pub fn first_weight(n: usize, s: usize, k: usize, q: u32) -> Result<BigInt> {
    check_mds_params(n, s, k, q)?;
    let rho = n * s - k + 1;
    Ok(sigma_tilde(n, rho, s) * BigInt::from(q - 1))
}

/// `w_{ρ+1} = (q−1) Σ_l C(n,l) (q+1−l) σ_s(l,ρ+1)`, defined when `ρ+1 ≤ ns`.
pub fn second_weight(n: usize, s: usize, k: usize, q: u32) -> Result<Option<BigInt>> {
    check_mds_params(n, s, k, q)?;
    let rho = n * s - k + 1;
    if rho + 1 > n * s {
        return Ok(None);
    }
    let table = SigmaTable::new(s, n);
    let sum: BigInt = (1..=n)
        .map(|l| binomial(n, l) * (BigInt::from(q) + 1 - BigInt::from(l)) * table.get(l, rho + 1))
        .sum();
    Ok(Some(sum * BigInt::from(q - 1)))
}

/// `w_{ρ+1} = (q−1) σ_s(n,ρ+1) (q−n+1)` for `k = s`; negative exactly when no
/// `(0,s,n)`-net can exist (and `s > 1`).
pub fn second_weight_net(n: usize, s: usize, q: u32) -> BigInt {
    let rho = (n - 1) * s + 1;
    BigInt::from(q - 1) * sigma(n, rho + 1, s) * (BigInt::from(q) + 1 - BigInt::from(n))
}

/// `q ≥ n − 1`.
pub fn existence_condition(n: usize, q: u32) -> bool {
    q as usize + 1 >= n
}

/// Whether every entry of a formula spectrum is nonnegative.
pub fn is_realizable(spec: &SpectrumVector) -> bool {
    !spec.w.iter().any(|x| x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use alloc::sync::Arc;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn compositions_brute(l: usize, r: usize, lo: usize, hi: usize) -> u64 {
        fn go(l: usize, r: usize, lo: usize, hi: usize) -> u64 {
            if l == 0 {
                return (r == 0) as u64;
            }
            (lo..=hi.min(r)).map(|a| go(l - 1, r - a, lo, hi)).sum()
        }
        go(l, r, lo, hi)
    }

    #[test]
    fn sigma_examples() {
        for l in 0..5 {
            for r in 0..7 {
                assert_eq!(sigma(l, r, 1), bi((l == r) as i64));
            }
        }
        assert_eq!(sigma(0, 0, 3), bi(1));
        assert_eq!(sigma(0, 2, 3), bi(0));
        assert_eq!(sigma(2, 3, 2), bi(2));
        for s in 1..5 {
            for l in 0..5 {
                for r in 0..=l * s + 1 {
                    assert_eq!(sigma(l, r, s), bi(compositions_brute(l, r, 1, s) as i64));
                }
            }
        }
    }

    #[test]
    fn sigma_tilde_examples() {
        assert_eq!(sigma_tilde(3, 0, 2), bi(1));
        assert_eq!(sigma_tilde(2, 2, 2), bi(3));
        for n in 1..6 {
            for r in 0..=n {
                assert_eq!(sigma_tilde(n, r, 1), binomial(n, r));
            }
        }
        for s in 1..4 {
            for n in 1..5 {
                for r in 1..=n * s {
                    let via: BigInt = (1..=n).map(|l| binomial(n, l) * sigma(l, r, s)).sum();
                    assert_eq!(sigma_tilde(n, r, s), via);
                    assert_eq!(sigma_tilde(n, r, s), bi(compositions_brute(n, r, 0, s) as i64));
                }
            }
        }
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_size(2, 1, 3, 0).unwrap(), bi(1));
        assert_eq!(sphere_size(2, 1, 3, 2).unwrap(), bi(2));
        assert!(sphere_size(2, 1, 3, 4).is_err());
        for q in 2..=4u32 {
            for n in 1..=3 {
                for s in 1..=3 {
                    let total: BigInt = (0..=n * s).map(|r| sphere_size(q, n, s, r).unwrap()).sum();
                    assert_eq!(total, pow(q, n * s));
                }
            }
        }
    }

    #[test]
    fn sphere_matches_enumeration() {
        for (p, e, n, s) in [(2, 1, 2, 2), (3, 1, 2, 2), (2, 2, 1, 3), (2, 1, 3, 2)] {
            let space = Space::new(Arc::new(Field::new(p, e).unwrap()), n, s).unwrap();
            let words: Vec<CodeWord> = space.words().unwrap().collect();
            let spec = spectrum_bruteforce(&space, &words, &space.zero()).unwrap();
            for r in 0..=n * s {
                assert_eq!(spec.w[r], sphere_size(space.q(), n, s, r).unwrap());
            }
        }
    }

    #[test]
    fn packing_examples() {
        assert!(ball_packing_check(&pow(2, 4), 0, 2, 2, 2));
        assert!(!ball_packing_check(&(pow(2, 4) + 1), 0, 2, 2, 2));
        // q=2, n=2, s=2, t=1: ball volume 1 + 2 = 3
        assert_eq!(ball_volume(2, 2, 2, 1), bi(3));
        assert!(ball_packing_check(&bi(4), 1, 2, 2, 2));
        assert!(ball_packing_check(&bi(5), 1, 2, 2, 2));
        assert!(!ball_packing_check(&bi(6), 1, 2, 2, 2));
        // s = 1 gives the Hamming bound Σ_{i≤t} C(n,i)(q−1)^i
        for q in 2..=5u32 {
            for n in 1..=6 {
                for t in 0..=n {
                    let hamming: BigInt = (0..=t).map(|i| binomial(n, i) * pow(q - 1, i)).sum();
                    assert_eq!(ball_volume(q, n, 1, t), hamming);
                }
            }
        }
    }

    #[test]
    fn mds_formula_forms_agree() {
        for q in 2..=7u32 {
            for n in 1..=4 {
                for s in 1..=4 {
                    for k in 1..=n * s {
                        let a = spectrum_mds_formula(n, s, k, q).unwrap();
                        let b = spectrum_mds_formula_factored(n, s, k, q).unwrap();
                        assert_eq!(a, b, "q={q} n={n} s={s} k={k}");
                        assert_eq!(a.total(), pow(q, k));
                        let rho = n * s - k + 1;
                        assert!(a.w[1..rho].iter().all(|x| x.is_zero()));
                        assert_eq!(a.w[rho], first_weight(n, s, k, q).unwrap());
                        if let Some(w2) = second_weight(n, s, k, q).unwrap() {
                            assert_eq!(a.w[rho + 1], w2);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hamming_reduction() {
        // s = 1: the classical MDS weight distribution
        for q in 2..=5u32 {
            for n in 1..=5 {
                for k in 1..=n {
                    let spec = spectrum_mds_formula(n, 1, k, q).unwrap();
                    let d = n - k + 1;
                    for r in d..=n {
                        let inner: BigInt = (0..=r - d)
                            .map(|j| sign(j) * binomial(r, j) * (pow(q, r - d + 1 - j) - 1))
                            .sum();
                        assert_eq!(spec.w[r], binomial(n, r) * inner);
                    }
                }
            }
        }
    }

    #[test]
    fn net_formula_consistency() {
        for q in 2..=4u32 {
            for n in 1..=3 {
                for s in 1..=3 {
                    let net = spectrum_net_formula(n, s, q).unwrap();
                    let fact = spectrum_net_formula_factored(n, s, q).unwrap();
                    let mds = spectrum_mds_formula(n, s, s, q).unwrap();
                    assert!(net.same_values(&mds));
                    assert!(fact.same_values(&mds));
                    let rho = (n - 1) * s + 1;
                    for r in rho + n - 1..=n * s {
                        assert_eq!(net_tail(n, s, q, r).unwrap(), net.w[r]);
                    }
                }
            }
        }
        assert!(net_tail(2, 3, 3, 4).is_none());
        assert_eq!(net_tail(2, 3, 3, 5).unwrap(), spectrum_net_formula(2, 3, 3).unwrap().w[5]);
    }

    #[test]
    fn existence_examples() {
        assert!(existence_condition(3, 2));
        assert!(!existence_condition(4, 2));
        assert_eq!(second_weight_net(4, 2, 2), bi(-1));
        assert!(!is_realizable(&spectrum_net_formula(4, 2, 2).unwrap()));
        for q in 2..=5u32 {
            for n in 1..=q as usize + 1 {
                assert!(existence_condition(n, q));
                assert!(second_weight_net(n, 2, q) >= bi(0));
            }
        }
    }
}
