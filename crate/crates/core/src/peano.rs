//! Peano digit interleaving between `Mat_{gn,s}` and `Mat_{n,gs}`, the block row
//! reversal `J`, composite constructions, and base change `q = p^e → p`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::codes::{LinearCode, Metric};
use crate::construct::{build_mds_code, NodeSet};
use crate::error::{Error, Result};
use crate::geometry::{word_to_base_p, Check, Distribution};
use crate::gf::{Elem, Field};
use crate::space::{hamming_weight, rho_weight, row_rho, CodeWord, Space};

/// How the `g` rows of a block are merged into one row of length `gs`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum PeanoOrder {
    /// `(ξ^{(1)}_1, …, ξ^{(g)}_1, …, ξ^{(1)}_s, …, ξ^{(g)}_s)`: column by column.
    #[default]
    Interleave,
    /// `(ω_1, …, ω_g)`: the rows one after another.
    Concatenate,
}

impl PeanoOrder {
    /// Position in the merged row of digit `c` of block row `l` (both 0-based).
    #[inline]
    fn position(self, g: usize, s: usize, l: usize, c: usize) -> usize {
        match self {
            PeanoOrder::Interleave => c * g + l,
            PeanoOrder::Concatenate => l * s + c,
        }
    }
}

fn check_rows(w: &CodeWord, g: usize) -> Result<usize> {
    if g == 0 || w.n() % g != 0 {
        return Err(Error::ShapeMismatch(format!("{} rows are not a multiple of g = {g}", w.n())));
    }
    Ok(w.n() / g)
}

/// `π_{g,n}`: each block of `g` consecutive rows becomes one row of length `gs`.
pub fn peano_forward(w: &CodeWord, g: usize, order: PeanoOrder) -> Result<CodeWord> {
    let n = check_rows(w, g)?;
    let s = w.s();
    let mut out = CodeWord::zero(n, g * s);
    for j in 0..n {
        for l in 0..g {
            for c in 0..s {
                out.set(j, order.position(g, s, l, c), w.get(j * g + l, c));
            }
        }
    }
    Ok(out)
}

/// Inverse of [`peano_forward`]: an `n × gs` word back to `gn × s`.
pub fn peano_inverse(w: &CodeWord, g: usize, order: PeanoOrder) -> Result<CodeWord> {
    if g == 0 || w.s() % g != 0 {
        return Err(Error::ShapeMismatch(format!("{} columns are not a multiple of g = {g}", w.s())));
    }
    let n = w.n();
    let s = w.s() / g;
    let mut out = CodeWord::zero(n * g, s);
    for j in 0..n {
        for l in 0..g {
            for c in 0..s {
                out.set(j * g + l, c, w.get(j, order.position(g, s, l, c)));
            }
        }
    }
    Ok(out)
}

/// `J_{g,n}`: reverses the order of rows inside each block of `g`.
pub fn j_involution(w: &CodeWord, g: usize) -> Result<CodeWord> {
    let n = check_rows(w, g)?;
    let s = w.s();
    let mut out = CodeWord::zero(w.n(), s);
    for j in 0..n {
        for l in 0..g {
            for c in 0..s {
                out.set(j * g + (g - 1 - l), c, w.get(j * g + l, c));
            }
        }
    }
    Ok(out)
}

/// `ρ` of the merged row of one `g × s` block, predicted from its rows.
///
/// For `Concatenate` this is `ρ(ω_l) + (l−1)s` with `l` the last nonzero row. For
/// `Interleave` it is `max_j ((ρ(ω_j) − 1) g + j)` over nonzero rows.
pub fn block_rho(rows: &[&[Elem]], order: PeanoOrder) -> usize {
    let g = rows.len();
    let s = rows.first().map_or(0, |r| r.len());
    match order {
        PeanoOrder::Concatenate => match rows.iter().rposition(|r| row_rho(r) != 0) {
            Some(l) => row_rho(rows[l]) + l * s,
            None => 0,
        },
        PeanoOrder::Interleave => rows
            .iter()
            .enumerate()
            .filter_map(|(j, r)| match row_rho(r) {
                0 => None,
                rho => Some((rho - 1) * g + j + 1),
            })
            .max()
            .unwrap_or(0),
    }
}

/// `ρ(ω_l) + (l−1)s` with `l` the last nonzero row, whatever the merge order.
pub fn last_row_formula(rows: &[&[Elem]]) -> usize {
    block_rho(rows, PeanoOrder::Concatenate)
}

/// Weights of a word before and after `π_{g,n}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WeightTransport {
    pub kappa_before: usize,
    pub kappa_after: usize,
    pub rho_before: usize,
    pub rho_after: usize,
    /// Blockwise prediction of `rho_after` for the chosen order.
    pub rho_predicted: usize,
    /// Blockwise `ρ(ω_l) + (l−1)s`.
    pub rho_last_row: usize,
}

impl WeightTransport {
    /// `κ` unchanged, `ρ` not decreased, and the prediction exact.
    pub fn holds(&self) -> bool {
        self.kappa_before == self.kappa_after
            && self.rho_after >= self.rho_before
            && self.rho_after == self.rho_predicted
    }
}

pub fn weight_transport(w: &CodeWord, g: usize, order: PeanoOrder) -> Result<WeightTransport> {
    let n = check_rows(w, g)?;
    let after = peano_forward(w, g, order)?;
    let mut predicted = 0;
    let mut last_row = 0;
    for j in 0..n {
        let rows: Vec<&[Elem]> = (0..g).map(|l| w.row(j * g + l)).collect();
        predicted += block_rho(&rows, order);
        last_row += last_row_formula(&rows);
    }
    Ok(WeightTransport {
        kappa_before: hamming_weight(w),
        kappa_after: hamming_weight(&after),
        rho_before: rho_weight(w),
        rho_after: rho_weight(&after),
        rho_predicted: predicted,
        rho_last_row: last_row,
    })
}

/// The target space `Mat_{n,gs}` of `π_{g,n}` on `Mat_{gn,s}`.
pub fn peano_space(space: &Space, g: usize) -> Result<Space> {
    if g == 0 || space.n() % g != 0 {
        return Err(Error::ShapeMismatch(format!("n = {} is not a multiple of g = {g}", space.n())));
    }
    Space::new(space.field().clone(), space.n() / g, space.s() * g)
}

fn map_code(code: &LinearCode, target: Space, f: impl Fn(&CodeWord) -> Result<CodeWord>) -> Result<LinearCode> {
    let words = code
        .basis_words()
        .iter()
        .map(f)
        .collect::<Result<Vec<_>>>()?;
    LinearCode::from_words(target, &words)
}

pub fn peano_code(code: &LinearCode, g: usize, order: PeanoOrder) -> Result<LinearCode> {
    let target = peano_space(code.space(), g)?;
    map_code(code, target, |w| peano_forward(w, g, order))
}

pub fn j_code(code: &LinearCode, g: usize) -> Result<LinearCode> {
    map_code(code, code.space().clone(), |w| j_involution(w, g))
}

pub fn peano_distribution(d: &Distribution, g: usize, order: PeanoOrder) -> Result<Distribution> {
    let target = peano_space(d.space(), g)?;
    let points = d
        .points()
        .iter()
        .map(|w| peano_forward(w, g, order))
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(target, points)
}

/// Both sides of `(π C)^⊥ = π(J C^⊥)`, computed independently.
#[derive(Clone, Debug)]
pub struct DualTransport {
    pub dual_of_image: LinearCode,
    pub image_of_dual: LinearCode,
}

impl DualTransport {
    pub fn holds(&self) -> bool {
        self.dual_of_image == self.image_of_dual
    }
}

pub fn dual_transport(code: &LinearCode, g: usize, order: PeanoOrder) -> Result<DualTransport> {
    let dual_of_image = peano_code(code, g, order)?.dual();
    let image_of_dual = peano_code(&j_code(&code.dual(), g)?, g, order)?;
    Ok(DualTransport { dual_of_image, image_of_dual })
}

/// Measured and predicted weights of a composite construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeReport {
    pub g: usize,
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub rho: usize,
    pub kappa: usize,
    pub dual_rho: usize,
    pub dual_kappa: usize,
    /// `(ns − k)g + 1`.
    pub rho_expected: usize,
    /// `(n − t)g + 1`.
    pub kappa_bound: usize,
    /// `kg + 1`.
    pub dual_rho_expected: usize,
    /// `tg + 1`.
    pub dual_kappa_bound: usize,
}

impl CompositeReport {
    pub fn holds(&self) -> bool {
        self.rho == self.rho_expected
            && self.kappa >= self.kappa_bound
            && self.dual_rho == self.dual_rho_expected
            && self.dual_kappa >= self.dual_kappa_bound
    }
}

/// The code `C^{(g)}` on `gn` nodes of degree below `gk`, `k = st`, and its Peano image.
#[derive(Clone, Debug)]
pub struct Composite {
    pub inner: LinearCode,
    pub code: LinearCode,
    pub report: CompositeReport,
}

pub fn build_composite(
    field: &Arc<Field>,
    g: usize,
    n: usize,
    s: usize,
    t: usize,
    nodes: Option<&NodeSet>,
    order: PeanoOrder,
) -> Result<Composite> {
    if g == 0 || n < 2 || t == 0 || t >= n {
        return Err(Error::InvalidParameter(format!(
            "need g ≥ 1 and 1 ≤ t ≤ n − 1, got g = {g}, n = {n}, t = {t}"
        )));
    }
    if (field.q() as usize) + 1 < g * n {
        return Err(Error::ExistenceCondition { q: field.q(), n: g * n });
    }
    let k = s * t;
    let inner_space = Space::new(field.clone(), g * n, s)?;
    let inner = build_mds_code(&inner_space, g * k, nodes)?;
    let code = peano_code(&inner, g, order)?;
    let dual = code.dual();
    let report = CompositeReport {
        g,
        n,
        s,
        t,
        rho: code.weight(Metric::Rho)?,
        kappa: code.weight(Metric::Kappa)?,
        dual_rho: dual.weight(Metric::Rho)?,
        dual_kappa: dual.weight(Metric::Kappa)?,
        rho_expected: (n * s - k) * g + 1,
        kappa_bound: (n - t) * g + 1,
        dual_rho_expected: k * g + 1,
        dual_kappa_bound: t * g + 1,
    };
    Ok(Composite { inner, code, report })
}

/// Weights of one word in base `q = p^e` and after rewriting its digits in base `p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeWeights {
    pub e: usize,
    pub n: usize,
    pub rho_q: usize,
    pub rho_p: usize,
    pub kappa_q: usize,
    pub kappa_p: usize,
}

impl BaseChangeWeights {
    /// `e(ρ_q − 1) + 1 − (e − 1)(n − 1)`, clamped at zero.
    pub fn rho_lower(&self) -> usize {
        if self.rho_q == 0 {
            return 0;
        }
        (self.e * (self.rho_q - 1) + 1).saturating_sub((self.e - 1) * (self.n - 1))
    }

    pub fn holds(&self) -> bool {
        self.rho_lower() <= self.rho_p
            && self.rho_p <= self.e * self.rho_q
            && self.kappa_q <= self.kappa_p
            && self.kappa_p <= self.e * self.kappa_q
    }
}

/// Per-row bounds `e(ρ_q − 1) + 1 ≤ ρ_p ≤ e ρ_q` of a single row word.
pub fn row_base_change_holds(field: &Field, row: &[Elem]) -> bool {
    let e = field.e() as usize;
    let w = CodeWord::from_rows(&[row.to_vec()]).unwrap();
    let rho_q = row_rho(row);
    let rho_p = rho_weight(&word_to_base_p(field, &w));
    if rho_q == 0 {
        return rho_p == 0;
    }
    e * (rho_q - 1) < rho_p && rho_p <= e * rho_q
}

pub fn base_change_weights(field: &Field, w: &CodeWord) -> BaseChangeWeights {
    let wp = word_to_base_p(field, w);
    BaseChangeWeights {
        e: field.e() as usize,
        n: w.n(),
        rho_q: rho_weight(w),
        rho_p: rho_weight(&wp),
        kappa_q: hamming_weight(w),
        kappa_p: hamming_weight(&wp),
    }
}

/// The same set of points as an `F_p`-linear code in `Mat_{n,es}(F_p)`.
pub fn base_p_code(code: &LinearCode) -> Result<LinearCode> {
    let space = code.space();
    let field = space.field();
    let prime = Arc::new(Field::prime(field.p())?);
    let target = Space::new(prime, space.n(), space.s() * field.e() as usize)?;
    let mut words = Vec::new();
    for b in code.basis_words() {
        for d in 0..field.e() {
            let alpha = Elem(field.p().pow(d));
            words.push(word_to_base_p(field, &space.scale(alpha, &b)?));
        }
    }
    LinearCode::from_words(target, &words)
}

/// Code-level weights in both bases.
pub fn base_change_code(code: &LinearCode) -> Result<BaseChangeWeights> {
    let p_code = base_p_code(code)?;
    Ok(BaseChangeWeights {
        e: code.space().field().e() as usize,
        n: code.space().n(),
        rho_q: code.weight(Metric::Rho)?,
        rho_p: p_code.weight(Metric::Rho)?,
        kappa_q: code.weight(Metric::Kappa)?,
        kappa_p: p_code.weight(Metric::Kappa)?,
    })
}

/// Base-`p` weights of a composite `π C^{(g)}` and of its dual, with the four lower bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeBaseReport {
    pub image: BaseChangeWeights,
    pub dual: BaseChangeWeights,
    /// `(ns − k)eg + 1 − (e − 1)(n − 1)`.
    pub rho_bound: usize,
    /// `(n − t)g + 1`.
    pub kappa_bound: usize,
    /// `keg + 1 − (e − 1)(n − 1)`.
    pub dual_rho_bound: usize,
    /// `tg + 1`, the bound that follows from the base-`q` weight.
    pub dual_kappa_bound: usize,
    /// `teg + 1`.
    pub dual_kappa_printed_bound: usize,
}

impl CompositeBaseReport {
    /// The three ρ/κ bounds for the image and the ρ bound and derivable κ bound for the dual.
    pub fn holds(&self) -> bool {
        self.image.rho_p >= self.rho_bound
            && self.image.kappa_p >= self.kappa_bound
            && self.dual.rho_p >= self.dual_rho_bound
            && self.dual.kappa_p >= self.dual_kappa_bound
    }

    pub fn printed_dual_kappa_holds(&self) -> bool {
        self.dual.kappa_p >= self.dual_kappa_printed_bound
    }
}

pub fn composite_base_p(composite: &Composite) -> Result<CompositeBaseReport> {
    let r = &composite.report;
    let e = composite.code.space().field().e() as usize;
    let (g, n, s, t) = (r.g, r.n, r.s, r.t);
    let k = s * t;
    let slack = (e - 1) * (n - 1);
    Ok(CompositeBaseReport {
        image: base_change_code(&composite.code)?,
        dual: base_change_code(&composite.code.dual())?,
        rho_bound: ((n * s - k) * e * g + 1).saturating_sub(slack),
        kappa_bound: (n - t) * g + 1,
        dual_rho_bound: (k * e * g + 1).saturating_sub(slack),
        dual_kappa_bound: t * g + 1,
        dual_kappa_printed_bound: t * e * g + 1,
    })
}

/// Convenience: is the Peano image of a distribution optimum for `k` total digits.
pub fn image_is_optimum(d: &Distribution, g: usize, k: usize, order: PeanoOrder) -> Result<Check> {
    peano_distribution(d, g, order)?.is_optimum(k)
}
