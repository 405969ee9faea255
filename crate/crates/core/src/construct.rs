//! MDS codes and optimum distributions from hyperderivative evaluation maps.
//!
//! A polynomial `f` of degree below `k` is sent to the `n × s` word whose row `i` is
//! `(∂^{s−1} f(β_i), …, ∂f(β_i), f(β_i))`. The image of all such `f` is an MDS code; read as
//! digits, the same words are an optimum distribution.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::geometry::Distribution;
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::{Node, Poly};
use crate::space::{CodeWord, Space};

/// Pairwise distinct evaluation nodes in `F_q ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSet {
    nodes: Vec<Node>,
}

impl NodeSet {
    pub fn new(field: &Field, nodes: Vec<Node>) -> Result<Self> {
        for (i, node) in nodes.iter().enumerate() {
            if let Node::Finite(b) = node {
                if b.0 >= field.q() {
                    return Err(Error::LabelOutOfRange { label: b.0 as u64, q: field.q() });
                }
            }
            if nodes[..i].contains(node) {
                return Err(Error::DuplicateNodes);
            }
        }
        if nodes.is_empty() {
            return Err(Error::InvalidParameter("empty node set".into()));
        }
        Ok(NodeSet { nodes })
    }

    /// `0, 1, …, n−1` by label, with `∞` as the last node when `n = q + 1`.
    pub fn default_for(field: &Field, n: usize) -> Result<Self> {
        let q = field.q() as usize;
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if n > q + 1 {
            return Err(Error::ExistenceCondition { q: field.q(), n });
        }
        let mut nodes: Vec<Node> = (0..n.min(q)).map(|i| Node::Finite(Elem(i as u32))).collect();
        if n == q + 1 {
            nodes.push(Node::Infinity);
        }
        Ok(NodeSet { nodes })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// The word of `f`: row `i` holds `∂^{s−1−c} f(β_i)` in column `c`. Evaluation at `∞`
/// takes place in the space of polynomials of degree below `ambient`.
pub fn gamma_word(field: &Field, f: &Poly, nodes: &NodeSet, s: usize, ambient: usize) -> Result<CodeWord> {
    let n = nodes.len();
    let mut w = CodeWord::zero(n, s);
    for (i, &node) in nodes.nodes.iter().enumerate() {
        match node {
            Node::Finite(beta) => {
                let taylor = f.taylor_expand(field, beta);
                for c in 0..s {
                    let j = s - 1 - c;
                    w.set(i, c, taylor.get(j).copied().unwrap_or(Elem::ZERO));
                }
            }
            Node::Infinity => {
                for c in 0..s {
                    w.set(i, c, f.eval_node(field, node, s - 1 - c, ambient)?);
                }
            }
        }
    }
    Ok(w)
}

/// The `ns × k` matrix taking `(f_0, …, f_{k−1})` to the flattened word of `f`. Entry for
/// derivative order `j` at a finite `β` and monomial `z^l` is `C(l, j) β^{l−j}` (zero for
/// `l < j`, and `0^0 = 1`); at `∞` it is `1` exactly when `l = k − 1 − j`.
pub fn coefficient_matrix(field: &Field, nodes: &NodeSet, s: usize, k: usize) -> Matrix {
    let mut m = Vec::with_capacity(nodes.len() * s);
    for &node in &nodes.nodes {
        for c in 0..s {
            let j = s - 1 - c;
            let row: Vec<Elem> = (0..k)
                .map(|l| match node {
                    Node::Finite(beta) => {
                        if l < j {
                            Elem::ZERO
                        } else {
                            field.mul(field.binom(l as u64, j as u64), field.pow(beta, (l - j) as u64))
                        }
                    }
                    Node::Infinity => {
                        if j < k && l == k - 1 - j {
                            Elem::ONE
                        } else {
                            Elem::ZERO
                        }
                    }
                })
                .collect();
            m.push(row);
        }
    }
    m
}

fn check_params(field: &Field, n: usize, s: usize, k: usize, nodes: &NodeSet) -> Result<()> {
    if nodes.len() != n {
        return Err(Error::ShapeMismatch(format!("{} nodes for n = {n}", nodes.len())));
    }
    if k == 0 || k > n * s {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={}", n * s)));
    }
    if (field.q() as usize) + 1 < n {
        return Err(Error::ExistenceCondition { q: field.q(), n });
    }
    Ok(())
}

fn resolve_nodes(field: &Field, n: usize, nodes: Option<&NodeSet>) -> Result<NodeSet> {
    match nodes {
        Some(ns) => Ok(ns.clone()),
        None => NodeSet::default_for(field, n),
    }
}

/// Span of the words of `1, z, …, z^{k−1}`.
pub fn build_mds_code(space: &Space, k: usize, nodes: Option<&NodeSet>) -> Result<LinearCode> {
    let field = space.field();
    let (n, s) = (space.n(), space.s());
    let nodes = resolve_nodes(field, n, nodes)?;
    check_params(field, n, s, k, &nodes)?;
    let rows: Vec<Vec<Elem>> = (0..k)
        .map(|l| {
            gamma_word(field, &Poly::monomial(Elem::ONE, l), &nodes, s, k).map(CodeWord::into_flat)
        })
        .collect::<Result<_>>()?;
    let code = LinearCode::new(space.clone(), &rows)?;
    debug_assert_eq!(code.k(), k);
    Ok(code)
}

/// The `q^k` words of all `f` with `deg f < k`, coefficient vectors in order with `f_0` fastest.
pub fn build_optimum_distribution(
    space: &Space,
    k: usize,
    nodes: Option<&NodeSet>,
    bound: u64,
) -> Result<Distribution> {
    let field = space.field();
    let (n, s) = (space.n(), space.s());
    let nodes = resolve_nodes(field, n, nodes)?;
    check_params(field, n, s, k, &nodes)?;
    let q = field.q() as u64;
    let total = q
        .checked_pow(k as u32)
        .filter(|&t| t <= bound)
        .ok_or_else(|| Error::TooLarge(format!("{q}^{k} points")))?;
    let mut coeffs = vec![Elem::ZERO; k];
    let mut points = Vec::with_capacity(total as usize);
    for _ in 0..total {
        let f = Poly::from_coeffs(coeffs.clone());
        points.push(gamma_word(field, &f, &nodes, s, k)?);
        for c in coeffs.iter_mut() {
            c.0 += 1;
            if c.0 < field.q() {
                break;
            }
            c.0 = 0;
        }
    }
    Distribution::new(space.clone(), points)
}
