//! The finite translation set I_(β,d) and the labeled relation automaton.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebraic::{AlgebraicNumber, NumberField, RationalCombination};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DigitParams {
    pub b: u32,
    pub d: u32,
    /// (d-1)/(β-1)
    pub alpha_mu: RationalCombination,
}

impl DigitParams {
    /// Digit data for convolution alphabet {0..d-1}; b is the least integer ≥ β.
    pub fn new(field: &Arc<NumberField>, d: u32) -> Result<Self> {
        let beta = AlgebraicNumber::beta(field);
        let guess = field.beta_f64().ceil() as i64;
        let mut b = None;
        for cand in [guess - 1, guess, guess + 1] {
            if cand < 2 {
                continue;
            }
            let above = (&beta - &AlgebraicNumber::from_integer(field, cand - 1)).sign()?;
            let below = (&AlgebraicNumber::from_integer(field, cand) - &beta).sign()?;
            if above > 0 && below >= 0 {
                b = Some(cand as u32);
                break;
            }
        }
        let b = b.ok_or_else(|| Error::Digits("could not place β between integers".into()))?;
        if d < b {
            return Err(Error::Digits(format!("need b ≤ d, got b = {b}, d = {d}")));
        }
        let alpha_mu = RationalCombination::new(
            AlgebraicNumber::from_integer(field, d as i64 - 1),
            &beta - &AlgebraicNumber::one(field),
        )?;
        Ok(DigitParams { b, d, alpha_mu })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationEdge {
    pub h: usize,
    pub i: u32,
    pub k: usize,
    pub j: u32,
}

#[derive(Clone, Debug)]
pub struct ISet {
    elements: Vec<AlgebraicNumber>,
    index: HashMap<Vec<BigInt>, usize>,
}

impl ISet {
    pub fn elements(&self) -> &[AlgebraicNumber] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &AlgebraicNumber) -> Option<usize> {
        self.index.get(x.coeffs()).copied()
    }

    fn push(&mut self, x: AlgebraicNumber) -> bool {
        if self.index.contains_key(x.coeffs()) {
            return false;
        }
        self.index.insert(x.coeffs().to_vec(), self.elements.len());
        self.elements.push(x);
        true
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_iters: usize,
    pub max_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_iters: 64, max_size: 4096 }
    }
}

/// -1 < y < α_μ, decided exactly.
fn in_window(y: &AlgebraicNumber, params: &DigitParams) -> Result<bool> {
    let f = y.field();
    if (y + &AlgebraicNumber::one(f)).sign()? <= 0 {
        return Ok(false);
    }
    // y < (d-1)/(β-1)  <=>  (d-1) - y(β-1) > 0
    let bm1 = &AlgebraicNumber::beta(f) - &AlgebraicNumber::one(f);
    let rhs = &AlgebraicNumber::from_integer(f, params.d as i64 - 1) - &(y * &bm1);
    Ok(rhs.sign()? > 0)
}

/// Breadth-first fixed-point construction; ties broken by (k, i, j).
pub fn build_iset(field: &Arc<NumberField>, params: &DigitParams, caps: Caps) -> Result<(ISet, Vec<RelationEdge>)> {
    let beta = AlgebraicNumber::beta(field);
    let mut set = ISet { elements: Vec::new(), index: HashMap::new() };
    set.push(AlgebraicNumber::zero(field));
    let mut frontier_start = 0;
    let mut iters = 0;
    loop {
        let frontier_end = set.len();
        if frontier_start == frontier_end {
            break;
        }
        iters += 1;
        if iters > caps.max_iters {
            return Err(Error::CapExceeded(format!("I-set did not stabilize in {} iterations", caps.max_iters)));
        }
        for k in frontier_start..frontier_end {
            let bx = &beta * &set.elements[k];
            for i in 0..params.b {
                for j in 0..params.d {
                    let y = &bx + &AlgebraicNumber::from_integer(field, i as i64 - j as i64);
                    if in_window(&y, params)? && set.push(y) && set.len() > caps.max_size {
                        return Err(Error::CapExceeded(format!("I-set exceeds {} elements", caps.max_size)));
                    }
                }
            }
        }
        frontier_start = frontier_end;
    }
    let edges = relation_edges(&set, params);
    Ok((set, edges))
}

/// Every (h, i, k, j) with j = i + β i_h - i_k ∈ D, sorted by (h, i, k).
pub fn relation_edges(set: &ISet, params: &DigitParams) -> Vec<RelationEdge> {
    let mut edges = Vec::new();
    let Some(first) = set.elements.first() else { return edges };
    let field = first.field();
    let beta = AlgebraicNumber::beta(field);
    for (h, x) in set.elements.iter().enumerate() {
        let bx = &beta * x;
        for i in 0..params.b {
            let shifted = &bx + &AlgebraicNumber::from_integer(field, i as i64);
            for (k, y) in set.elements.iter().enumerate() {
                let z = &shifted - y;
                if let Some(j) = z.as_integer().and_then(|j| j.to_u32()) {
                    if j < params.d {
                        edges.push(RelationEdge { h, i, k, j });
                    }
                }
            }
        }
    }
    edges
}

/// The elements 0, 1 and β^{k-1} - (β^{k-2} + ... + 1), k = 2..m, of the multinacci I-set.
pub fn multinacci_closed_form(field: &Arc<NumberField>, m: usize) -> Vec<AlgebraicNumber> {
    let mut out = vec![AlgebraicNumber::zero(field), AlgebraicNumber::one(field)];
    for k in 2..=m {
        let mut c = vec![BigInt::from(-1); k];
        c[k - 1] = BigInt::from(1);
        out.push(AlgebraicNumber::from_coeffs(field, c));
    }
    out
}

pub fn export_automaton(set: &ISet, edges: &[RelationEdge]) -> String {
    let mut s = String::from("digraph iset {\n  rankdir=LR;\n");
    for (n, x) in set.elements.iter().enumerate() {
        let _ = writeln!(s, "  n{n} [label=\"{x}\"];");
    }
    let mut sorted = edges.to_vec();
    sorted.sort();
    for e in &sorted {
        let _ = writeln!(s, "  n{} -> n{} [label=\"{}/{}\"];", e.h, e.k, e.i, e.j);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_iset() {
        let f = NumberField::golden();
        let p = DigitParams::new(&f, 2).unwrap();
        assert_eq!(p.b, 2);
        let (set, edges) = build_iset(&f, &p, Caps::default()).unwrap();
        let want = multinacci_closed_form(&f, 2);
        assert_eq!(set.elements(), &want[..]);
        // loop 0 ▷ 0 with (i, j) = (0, 0)
        assert!(edges.contains(&RelationEdge { h: 0, i: 0, k: 0, j: 0 }));
    }

    #[test]
    fn integer_base() {
        let f = NumberField::integer(3).unwrap();
        let p = DigitParams::new(&f, 5).unwrap();
        assert_eq!(p.b, 3);
        let (set, _) = build_iset(&f, &p, Caps::default()).unwrap();
        // a - 1 < (d-1)/(β-1) = 2 ≤ a
        let v: Vec<i64> = set.elements().iter().map(|x| x.as_integer().unwrap().try_into().unwrap()).collect();
        assert_eq!(v, vec![0, 1]);
    }

    #[test]
    fn caps() {
        let f = NumberField::from_descriptor("x^3-3x^2+1@2.8").unwrap();
        let p = DigitParams::new(&f, 3).unwrap();
        let r = build_iset(&f, &p, Caps { max_iters: 64, max_size: 4 });
        assert!(matches!(r, Err(Error::CapExceeded(_))));
    }

    #[test]
    fn d_below_b_rejected() {
        let f = NumberField::from_descriptor("x^2-5x-3@5.5").unwrap();
        assert!(DigitParams::new(&f, 3).is_err());
    }
}
