//! Dense polynomials over `F_q`, Hasse hyperderivatives and Hermite interpolation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// A polynomial `Σ f_i z^i`, coefficients low to high, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

/// An interpolation node: a field element or the point at infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Finite(Elem),
    Infinity,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Finite(a) => write!(f, "{a}"),
            Node::Infinity => f.write_str("inf"),
        }
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Elem, degree: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from integer labels, checking each against the field.
    pub fn from_labels(field: &Field, labels: &[u64]) -> Result<Self> {
        let coeffs = labels
            .iter()
            .map(|&m| field.elem_of(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn labels(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `z^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(z − β)^i`.
    pub fn linear_power(field: &Field, beta: Elem, i: usize) -> Self {
        let base = Poly::from_coeffs(vec![field.neg(beta), Elem::ONE]);
        let mut acc = Poly::constant(Elem::ONE);
        for _ in 0..i {
            acc = acc.mul(field, &base);
        }
        acc
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &Field, c: Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, field: &Field, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = field.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = field.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = field.sub(rem[idx], field.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, field: &Field, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(field, divisor)?.1)
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// Hasse hyperderivative: coefficient of `z^{i-j}` is `C(i, j) f_i` with the binomial mod `p`.
    pub fn hyperderivative(&self, field: &Field, j: usize) -> Poly {
        if j == 0 {
            return self.clone();
        }
        if j >= self.coeffs.len() {
            return Poly::zero();
        }
        Poly::from_coeffs(
            (j..self.coeffs.len())
                .map(|i| field.mul(field.binom(i as u64, j as u64), self.coeffs[i]))
                .collect(),
        )
    }

    /// Formal derivative.
    pub fn derivative(&self, field: &Field) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.mul(field.from_int(i as u64), c))
                .collect(),
        )
    }

    /// `∂^j f` evaluated at a node. At infinity the value is `f_{t-1-j}` inside the
    /// ambient space of polynomials of degree below `t`, and zero when `j ≥ t`.
    pub fn eval_node(&self, field: &Field, node: Node, j: usize, t: usize) -> Result<Elem> {
        match node {
            Node::Finite(beta) => Ok(self.hyperderivative(field, j).eval(field, beta)),
            Node::Infinity => {
                if self.coeffs.len() > t {
                    return Err(Error::AmbientDegreeTooSmall {
                        degree: self.coeffs.len() - 1,
                        ambient: t,
                    });
                }
                if j >= t {
                    return Ok(Elem::ZERO);
                }
                Ok(self.coeff(t - 1 - j))
            }
        }
    }

    /// Taylor coefficients `(∂^0 f(β), …, ∂^{deg f} f(β))`.
    pub fn taylor_expand(&self, field: &Field, beta: Elem) -> Vec<Elem> {
        // repeated synthetic division by (z - β)
        let mut cur = self.coeffs.clone();
        let mut out = Vec::with_capacity(cur.len());
        while !cur.is_empty() {
            let mut carry = Elem::ZERO;
            let mut quot = vec![Elem::ZERO; cur.len() - 1];
            for i in (0..cur.len()).rev() {
                let v = field.add(cur[i], field.mul(carry, beta));
                if i == 0 {
                    out.push(v);
                } else {
                    quot[i - 1] = v;
                }
                carry = v;
            }
            cur = quot;
        }
        out
    }

    /// Extended Euclid: `(g, u, v)` with `u·a + v·b = g`, `g` monic.
    pub fn ext_gcd(field: &Field, a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::constant(Elem::ONE), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(Elem::ONE));
        while !r1.is_zero() {
            let (quo, rem) = r0.div_rem(field, &r1)?;
            let s2 = s0.sub(field, &quo.mul(field, &s1));
            let t2 = t0.sub(field, &quo.mul(field, &t1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
            t0 = core::mem::replace(&mut t1, t2);
        }
        match r0.degree() {
            None => Ok((r0, s0, t0)),
            Some(d) => {
                let c = field.inv(r0.coeffs[d])?;
                Ok((r0.scale(field, c), s0.scale(field, c), t0.scale(field, c)))
            }
        }
    }
}

/// Prescribed hyperderivative values `∂^j f(β_i) = a_i^{(j)}` for `j < t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteProblem {
    pub nodes: Vec<Node>,
    /// `targets[i]` has length `t_i`.
    pub targets: Vec<Vec<Elem>>,
    /// Dimension of the solution space: `deg f < t`.
    pub t: usize,
}

impl HermiteProblem {
    pub fn new(nodes: Vec<Node>, targets: Vec<Vec<Elem>>, t: usize) -> Self {
        HermiteProblem { nodes, targets, t }
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.targets.iter().map(Vec::len).collect()
    }

    fn validate(&self, field: &Field) -> Result<()> {
        if self.nodes.len() != self.targets.len() {
            return Err(Error::ShapeMismatch("one target vector per node".into()));
        }
        if self.t == 0 || self.targets.iter().any(Vec::is_empty) {
            return Err(Error::InvalidParameter("multiplicities must be positive".into()));
        }
        let total: usize = self.targets.iter().map(Vec::len).sum();
        if total != self.t {
            return Err(Error::ShapeMismatch(alloc::format!(
                "multiplicities sum to {total}, expected {}",
                self.t
            )));
        }
        for (i, a) in self.nodes.iter().enumerate() {
            if let Node::Finite(b) = a {
                if b.0 >= field.q() {
                    return Err(Error::LabelOutOfRange { label: b.0 as u64, q: field.q() });
                }
            }
            if self.nodes[..i].contains(a) {
                return Err(Error::DuplicateNodes);
            }
        }
        let bad = self
            .targets
            .iter()
            .flatten()
            .find(|a| a.0 >= field.q());
        if let Some(a) = bad {
            return Err(Error::LabelOutOfRange { label: a.0 as u64, q: field.q() });
        }
        Ok(())
    }

    /// Checks every constraint of the problem against `f`.
    pub fn is_solved_by(&self, field: &Field, f: &Poly) -> Result<bool> {
        if f.coeffs.len() > self.t {
            return Ok(false);
        }
        for (node, targets) in self.nodes.iter().zip(&self.targets) {
            for (j, &a) in targets.iter().enumerate() {
                if f.eval_node(field, *node, j, self.t)? != a {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The unique `f` of degree below `t` meeting all constraints. The node at infinity,
/// if any, fixes the top coefficients; the finite nodes are then combined by the
/// Chinese remainder theorem on the moduli `(z − β_i)^{t_i}`.
pub fn hermite_interpolate(field: &Field, prob: &HermiteProblem) -> Result<Poly> {
    prob.validate(field)?;
    let t = prob.t;
    let mut r_inf = Poly::zero();
    if let Some(i) = prob.nodes.iter().position(|n| *n == Node::Infinity) {
        let mut coeffs = vec![Elem::ZERO; t];
        for (j, &a) in prob.targets[i].iter().enumerate() {
            coeffs[t - 1 - j] = a;
        }
        r_inf = Poly::from_coeffs(coeffs);
    }
    let mut acc = Poly::zero();
    let mut modulus = Poly::constant(Elem::ONE);
    for (node, targets) in prob.nodes.iter().zip(&prob.targets) {
        let beta = match node {
            Node::Finite(b) => *b,
            Node::Infinity => continue,
        };
        let ti = targets.len();
        let shift = r_inf.taylor_expand(field, beta);
        let mut residue = Poly::zero();
        for (j, &a) in targets.iter().enumerate() {
            let b = field.sub(a, shift.get(j).copied().unwrap_or(Elem::ZERO));
            residue = residue.add(field, &Poly::linear_power(field, beta, j).scale(field, b));
        }
        let m_i = Poly::linear_power(field, beta, ti);
        // acc' = acc + modulus · ((residue − acc) · modulus^{-1} mod m_i)
        let (g, u, _) = Poly::ext_gcd(field, &modulus.rem(field, &m_i)?, &m_i)?;
        if g.degree() != Some(0) {
            return Err(Error::DuplicateNodes);
        }
        let diff = residue.sub(field, &acc).rem(field, &m_i)?;
        let lift = diff.mul(field, &u).rem(field, &m_i)?;
        acc = acc.add(field, &modulus.mul(field, &lift));
        modulus = modulus.mul(field, &m_i);
    }
    Ok(acc.add(field, &r_inf))
}
