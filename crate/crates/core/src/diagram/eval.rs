use std::collections::BTreeMap;

use super::{DecoratedDiagram, Decoration, Endpoint, Flavor, Side};
use crate::error::{Error, Result};
use crate::numkernel::{Matrix, C64, ONE, ZERO};

/// Label to matrix lookup used when evaluating decorations.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OperatorTable {
    ops: BTreeMap<String, Matrix>,
}

impl OperatorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: impl Into<String>, m: Matrix) -> &mut Self {
        self.ops.insert(label.into(), m);
        self
    }

    pub fn with(mut self, label: impl Into<String>, m: Matrix) -> Self {
        self.insert(label, m);
        self
    }

    pub fn get(&self, label: &str) -> Result<&Matrix> {
        self.ops
            .get(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(String::as_str)
    }

    /// The matrix a decoration contributes, checked to be `d x d`.
    pub fn resolve(&self, x: &Decoration, d: usize) -> Result<Matrix> {
        let m = self.get(&x.op)?;
        if m.shape() != (d, d) {
            return Err(Error::Dimension {
                op: "decoration",
                left: m.shape(),
                right: (d, d),
            });
        }
        Ok(match x.flavor {
            Flavor::Plain => m.clone(),
            Flavor::Transpose => m.transpose(),
            Flavor::Dagger => m.dagger(),
            Flavor::Conjugate => m.conj(),
        })
    }

    /// `D_k ... D_1` for decorations listed in walking order.
    fn path(&self, decorations: &[Decoration], d: usize) -> Result<Matrix> {
        let mut w = Matrix::identity(d);
        for x in decorations {
            w = self.resolve(x, d)?.checked_mul(&w)?;
        }
        Ok(w)
    }
}

fn check_d(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::ZeroDimension)
    } else {
        Ok(())
    }
}

/// The `d^bottom x d^top` matrix of a diagram: inputs on the top row, outputs
/// on the bottom row, big-endian digits, scalar and loop traces included.
pub fn evaluate(diag: &DecoratedDiagram, d: usize, ops: &OperatorTable) -> Result<Matrix> {
    check_d(d)?;
    let mut factor = diag.scalar.value(d);
    for cycle in &diag.loops {
        factor *= ops.path(cycle, d)?.trace()?;
    }
    let rows = d.pow(diag.bottom as u32);
    let cols = d.pow(diag.top as u32);
    let mut out = Matrix::zeros(rows, cols);
    if factor == ZERO {
        return Ok(out);
    }
    let stride = |e: Endpoint| -> (bool, usize) {
        match e.side {
            Side::Top => (false, d.pow((diag.top - 1 - e.index) as u32)),
            Side::Bottom => (true, d.pow((diag.bottom - 1 - e.index) as u32)),
        }
    };
    // each strand: nonzero entries W[end, start] as (row, col, value) offsets
    let mut pieces: Vec<Vec<(usize, usize, C64)>> = Vec::with_capacity(diag.strands.len());
    for s in &diag.strands {
        let w = ops.path(&s.decorations, d)?;
        let (s_row, s_stride) = stride(s.start);
        let (e_row, e_stride) = stride(s.end);
        let mut entries = Vec::new();
        for e in 0..d {
            for b in 0..d {
                let v = w.get(e, b);
                if v == ZERO {
                    continue;
                }
                let (mut r, mut c) = (0, 0);
                if s_row {
                    r += b * s_stride
                } else {
                    c += b * s_stride
                }
                if e_row {
                    r += e * e_stride
                } else {
                    c += e * e_stride
                }
                entries.push((r, c, v));
            }
        }
        pieces.push(entries);
    }
    fn fill(pieces: &[Vec<(usize, usize, C64)>], r: usize, c: usize, v: C64, out: &mut Matrix) {
        match pieces.split_first() {
            None => out.set(r, c, v),
            Some((head, rest)) => {
                for &(dr, dc, w) in head {
                    fill(rest, r + dr, c + dc, v * w, out);
                }
            }
        }
    }
    fill(&pieces, 0, 0, factor, &mut out);
    Ok(out)
}

/// Dense tensor whose legs all have dimension `d`; big-endian over `legs`.
struct Tensor {
    legs: Vec<usize>,
    data: Vec<C64>,
}

impl Tensor {
    fn scalar(v: C64) -> Self {
        Tensor {
            legs: Vec::new(),
            data: vec![v],
        }
    }

    /// A matrix `m[out, in]` as a two-leg tensor.
    fn matrix(m: &Matrix, out_leg: usize, in_leg: usize) -> Self {
        Tensor {
            legs: vec![out_leg, in_leg],
            data: m.data().to_vec(),
        }
    }

    fn strides(legs: &[usize], d: usize) -> Vec<usize> {
        let mut s = vec![1; legs.len()];
        for i in (0..legs.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * d;
        }
        s
    }

    /// Sum over every leg the two tensors share.
    fn contract(&self, other: &Tensor, d: usize) -> Tensor {
        let shared: Vec<usize> = self.legs.iter().copied().filter(|l| other.legs.contains(l)).collect();
        let free: Vec<usize> = self
            .legs
            .iter()
            .chain(&other.legs)
            .copied()
            .filter(|l| !shared.contains(l))
            .collect();
        let sa = Self::strides(&self.legs, d);
        let sb = Self::strides(&other.legs, d);
        let offset = |legs: &[usize], strides: &[usize], leg: usize| -> usize {
            legs.iter().position(|&l| l == leg).map_or(0, |p| strides[p])
        };
        let free_a: Vec<usize> = free.iter().map(|&l| offset(&self.legs, &sa, l)).collect();
        let free_b: Vec<usize> = free.iter().map(|&l| offset(&other.legs, &sb, l)).collect();
        let shared_a: Vec<usize> = shared.iter().map(|&l| offset(&self.legs, &sa, l)).collect();
        let shared_b: Vec<usize> = shared.iter().map(|&l| offset(&other.legs, &sb, l)).collect();

        let enumerate = |sa: &[usize], sb: &[usize]| -> Vec<(usize, usize)> {
            let n = d.pow(sa.len() as u32);
            (0..n)
                .map(|mut k| {
                    let (mut oa, mut ob) = (0, 0);
                    for p in (0..sa.len()).rev() {
                        let digit = k % d;
                        k /= d;
                        oa += digit * sa[p];
                        ob += digit * sb[p];
                    }
                    (oa, ob)
                })
                .collect()
        };
        let inner = enumerate(&shared_a, &shared_b);
        let outer = enumerate(&free_a, &free_b);
        let data = outer
            .iter()
            .map(|&(ba, bb)| {
                inner
                    .iter()
                    .map(|&(ia, ib)| self.data[ba + ia] * other.data[bb + ib])
                    .sum()
            })
            .collect();
        Tensor { legs: free, data }
    }
}

/// Contract a vertical stack of diagrams as a tensor network: every
/// decoration is a matrix on its own segment of wire, every arc or bare
/// strand a Kronecker delta, every loop a closed ring of both. No strand is
/// ever traced through a gluing interface.
pub fn brute_force_evaluate_stack(layers: &[DecoratedDiagram], d: usize, ops: &OperatorTable) -> Result<Matrix> {
    check_d(d)?;
    let first = layers.first().ok_or_else(|| Error::Diagram("empty stack".into()))?;
    for w in layers.windows(2) {
        if w[0].bottom != w[1].top {
            return Err(Error::Diagram(format!(
                "stack arity mismatch: {} vs {}",
                w[0].bottom, w[1].top
            )));
        }
    }
    // legs 0.. are wire positions on the boundaries between layers
    let mut boundary_base = Vec::with_capacity(layers.len() + 1);
    let mut next = 0;
    boundary_base.push(0);
    next += first.top;
    for layer in layers {
        boundary_base.push(next);
        next += layer.bottom;
    }
    let delta = Matrix::identity(d);
    let mut acc = Tensor::scalar(ONE);
    for (l, layer) in layers.iter().enumerate() {
        acc = acc.contract(&Tensor::scalar(layer.scalar.value(d)), d);
        let leg = |e: Endpoint| match e.side {
            Side::Top => boundary_base[l] + e.index,
            Side::Bottom => boundary_base[l + 1] + e.index,
        };
        for s in &layer.strands {
            let mut from = leg(s.start);
            for (k, x) in s.decorations.iter().enumerate() {
                let to = if k + 1 == s.decorations.len() { leg(s.end) } else { next };
                if to == next {
                    next += 1;
                }
                acc = acc.contract(&Tensor::matrix(&ops.resolve(x, d)?, to, from), d);
                from = to;
            }
            if s.decorations.is_empty() {
                acc = acc.contract(&Tensor::matrix(&delta, leg(s.end), from), d);
            }
        }
        for cycle in &layer.loops {
            let origin = next;
            next += 1;
            let mut ring = Tensor::matrix(&delta, next, origin);
            let mut from = next;
            next += 1;
            for (k, x) in cycle.iter().enumerate() {
                let to = if k + 1 == cycle.len() { origin } else { next };
                if to == next {
                    next += 1;
                }
                ring = ring.contract(&Tensor::matrix(&ops.resolve(x, d)?, to, from), d);
                from = to;
            }
            if cycle.is_empty() {
                ring = ring.contract(&Tensor::matrix(&delta, origin, from), d);
            }
            acc = acc.contract(&ring, d);
        }
    }
    let last = layers.last().expect("non-empty");
    let outputs: Vec<usize> = (0..last.bottom).map(|k| boundary_base[layers.len()] + k).collect();
    let inputs: Vec<usize> = (0..first.top).collect();
    let strides = Tensor::strides(&acc.legs, d);
    let pos = |leg: usize| -> Result<usize> {
        acc.legs
            .iter()
            .position(|&l| l == leg)
            .map(|p| strides[p])
            .ok_or_else(|| Error::Diagram("boundary leg missing after contraction".into()))
    };
    if acc.legs.len() != outputs.len() + inputs.len() {
        return Err(Error::Diagram("dangling internal legs after contraction".into()));
    }
    let out_strides: Vec<usize> = outputs.iter().map(|&l| pos(l)).collect::<Result<_>>()?;
    let in_strides: Vec<usize> = inputs.iter().map(|&l| pos(l)).collect::<Result<_>>()?;
    let offset = |mut k: usize, strides: &[usize]| -> usize {
        let mut o = 0;
        for s in strides.iter().rev() {
            o += (k % d) * s;
            k /= d;
        }
        o
    };
    let rows = d.pow(outputs.len() as u32);
    let cols = d.pow(inputs.len() as u32);
    Ok(Matrix::from_fn(rows, cols, |r, c| {
        acc.data[offset(r, &out_strides) + offset(c, &in_strides)]
    }))
}

/// Tensor-network contraction of a single diagram.
pub fn brute_force_evaluate(diag: &DecoratedDiagram, d: usize, ops: &OperatorTable) -> Result<Matrix> {
    brute_force_evaluate_stack(std::slice::from_ref(diag), d, ops)
}
