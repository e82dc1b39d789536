//! Decorated Temperley-Lieb / Brauer diagrams.
//!
//! A diagram has `top` input points and `bottom` output points. Every point
//! belongs to exactly one strand; a strand carries an ordered list of
//! operator decorations read from its canonical start, the smaller endpoint
//! in the order `T0 < T1 < ... < B0 < B1 < ...`.
//!
//! A strand with decorations `D_1, ..., D_k` stands for the two-leg tensor
//! `W[end, start]` with `W = D_k ... D_1`. Arcs are bare index identities;
//! the `d^{-1/2}` normalization of every cup and cap lives in
//! [`ScalarFactor::half_power`]. Closed loops produced by composition are
//! kept as decoration cycles whose value is the trace of their product.
//!
//! Composition glues the bottom row of the first diagram to the top row of
//! the second, so `evaluate(compose(a, b)) = evaluate(b) * evaluate(a)`.

mod checks;
mod eval;
mod render;
mod serial;

pub use checks::{
    check_brauer_mixed, check_tl_axioms, check_tl_decorated, flow_closed_form, flow_diagram, flow_layers,
    flow_layers_with, quantum_flow, quantum_flow_check, FlowOutcome, FlowWiring, FLOW_WIRING,
};
pub use eval::{brute_force_evaluate, brute_force_evaluate_stack, evaluate, OperatorTable};
pub use render::render;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numkernel::{C64, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Top,
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub side: Side,
    pub index: usize,
}

impl Endpoint {
    pub const fn top(index: usize) -> Self {
        Endpoint { side: Side::Top, index }
    }

    pub const fn bottom(index: usize) -> Self {
        Endpoint {
            side: Side::Bottom,
            index,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Top => 'T',
            Side::Bottom => 'B',
        };
        write!(f, "{s}{}", self.index)
    }
}

/// How a decoration's matrix enters the strand product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Plain,
    Transpose,
    Dagger,
    Conjugate,
}

impl Flavor {
    /// Flavor seen when the strand is walked the other way.
    pub fn transposed(self) -> Flavor {
        match self {
            Flavor::Plain => Flavor::Transpose,
            Flavor::Transpose => Flavor::Plain,
            Flavor::Dagger => Flavor::Conjugate,
            Flavor::Conjugate => Flavor::Dagger,
        }
    }

    /// Flavor of the complex conjugate.
    pub fn conjugated(self) -> Flavor {
        match self {
            Flavor::Plain => Flavor::Conjugate,
            Flavor::Conjugate => Flavor::Plain,
            Flavor::Transpose => Flavor::Dagger,
            Flavor::Dagger => Flavor::Transpose,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decoration {
    pub op: String,
    pub flavor: Flavor,
}

impl Decoration {
    pub fn new(op: impl Into<String>, flavor: Flavor) -> Self {
        Decoration { op: op.into(), flavor }
    }

    pub fn plain(op: impl Into<String>) -> Self {
        Decoration::new(op, Flavor::Plain)
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = match self.flavor {
            Flavor::Plain => "",
            Flavor::Transpose => "^T",
            Flavor::Dagger => "†",
            Flavor::Conjugate => "*",
        };
        write!(f, "{}{mark}", self.op)
    }
}

/// Decorations of a path walked backwards.
fn reversed(decorations: &[Decoration]) -> Vec<Decoration> {
    decorations
        .iter()
        .rev()
        .map(|x| Decoration::new(x.op.clone(), x.flavor.transposed()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strand {
    start: Endpoint,
    end: Endpoint,
    decorations: Vec<Decoration>,
}

impl Strand {
    /// A strand walked from `from` to `to`; reoriented to start at the
    /// smaller endpoint.
    pub fn new(from: Endpoint, to: Endpoint, decorations: Vec<Decoration>) -> Self {
        if from <= to {
            Strand {
                start: from,
                end: to,
                decorations,
            }
        } else {
            Strand {
                start: to,
                end: from,
                decorations: reversed(&decorations),
            }
        }
    }

    pub fn bare(a: Endpoint, b: Endpoint) -> Self {
        Strand::new(a, b, Vec::new())
    }

    pub fn start(&self) -> Endpoint {
        self.start
    }

    pub fn end(&self) -> Endpoint {
        self.end
    }

    pub fn decorations(&self) -> &[Decoration] {
        &self.decorations
    }

    pub fn is_through(&self) -> bool {
        self.start.side != self.end.side
    }

    /// Decorations in the order met when walking away from `from`.
    fn walked_from(&self, from: Endpoint) -> Vec<Decoration> {
        if from == self.start {
            self.decorations.clone()
        } else {
            reversed(&self.decorations)
        }
    }

    fn other(&self, e: Endpoint) -> Endpoint {
        if e == self.start {
            self.end
        } else {
            self.start
        }
    }
}

/// `coeff * d^(half_power / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarFactor {
    pub coeff: C64,
    pub half_power: i32,
}

impl ScalarFactor {
    pub const ONE: ScalarFactor = ScalarFactor {
        coeff: ONE,
        half_power: 0,
    };

    pub fn new(coeff: C64, half_power: i32) -> Self {
        ScalarFactor { coeff, half_power }
    }

    pub fn d_power(half_power: i32) -> Self {
        ScalarFactor { coeff: ONE, half_power }
    }

    pub fn times(self, other: ScalarFactor) -> ScalarFactor {
        ScalarFactor {
            coeff: self.coeff * other.coeff,
            half_power: self.half_power + other.half_power,
        }
    }

    pub fn value(self, d: usize) -> C64 {
        let d = d as f64;
        let k = self.half_power;
        let mag = if k % 2 == 0 {
            d.powi(k / 2)
        } else {
            d.powi(k.div_euclid(2)) * d.sqrt()
        };
        self.coeff * mag
    }
}

impl fmt::Display for ScalarFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i) d^({}/2)", self.coeff.re, self.coeff.im, self.half_power)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoratedDiagram {
    top: usize,
    bottom: usize,
    strands: Vec<Strand>,
    loops: Vec<Vec<Decoration>>,
    scalar: ScalarFactor,
}

fn slot(e: Endpoint, top: usize) -> usize {
    match e.side {
        Side::Top => e.index,
        Side::Bottom => top + e.index,
    }
}

impl DecoratedDiagram {
    /// Validates that `strands` is a perfect matching of the `top + bottom`
    /// points.
    pub fn new(
        top: usize,
        bottom: usize,
        strands: Vec<Strand>,
        loops: Vec<Vec<Decoration>>,
        scalar: ScalarFactor,
    ) -> Result<Self> {
        if !scalar.coeff.re.is_finite() || !scalar.coeff.im.is_finite() {
            return Err(Error::NonFinite("scalar coefficient"));
        }
        let mut seen = vec![false; top + bottom];
        for s in &strands {
            for e in [s.start, s.end] {
                let arity = match e.side {
                    Side::Top => top,
                    Side::Bottom => bottom,
                };
                if e.index >= arity {
                    return Err(Error::Diagram(format!("endpoint {e} out of range")));
                }
                let k = slot(e, top);
                if seen[k] {
                    return Err(Error::Diagram(format!("endpoint {e} used twice")));
                }
                seen[k] = true;
            }
        }
        if let Some(k) = seen.iter().position(|x| !x) {
            let e = if k < top {
                Endpoint::top(k)
            } else {
                Endpoint::bottom(k - top)
            };
            return Err(Error::Diagram(format!("endpoint {e} is not on any strand")));
        }
        let mut d = DecoratedDiagram {
            top,
            bottom,
            strands,
            loops,
            scalar,
        };
        d.strands.sort_by_key(|s| s.start);
        Ok(d)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn loops(&self) -> &[Vec<Decoration>] {
        &self.loops
    }

    pub fn scalar(&self) -> ScalarFactor {
        self.scalar
    }

    pub fn strand_at(&self, e: Endpoint) -> Option<&Strand> {
        self.strands.iter().find(|s| s.start == e || s.end == e)
    }

    pub fn with_scalar(mut self, scalar: ScalarFactor) -> Self {
        self.scalar = scalar;
        self
    }

    pub fn scaled(mut self, factor: ScalarFactor) -> Self {
        self.scalar = self.scalar.times(factor);
        self
    }

    pub fn is_decorated(&self) -> bool {
        self.strands.iter().any(|s| !s.decorations.is_empty()) || self.loops.iter().any(|l| !l.is_empty())
    }

    /// Endpoint pairs, ignoring decorations.
    pub fn matching(&self) -> Vec<(Endpoint, Endpoint)> {
        self.strands.iter().map(|s| (s.start, s.end)).collect()
    }

    /// Same matching with every decoration and loop removed and scalar 1.
    pub fn shape(&self) -> DecoratedDiagram {
        DecoratedDiagram {
            top: self.top,
            bottom: self.bottom,
            strands: self.strands.iter().map(|s| Strand::bare(s.start, s.end)).collect(),
            loops: Vec::new(),
            scalar: ScalarFactor::ONE,
        }
    }

    /// Every label used on a strand or loop.
    pub fn labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .strands
            .iter()
            .flat_map(|s| s.decorations.iter())
            .chain(self.loops.iter().flatten())
            .map(|x| x.op.as_str())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Undecorated loops folded into the scalar (each is worth `d`).
    pub fn normalized(&self) -> DecoratedDiagram {
        let mut out = self.clone();
        let before = out.loops.len();
        out.loops.retain(|l| !l.is_empty());
        out.scalar.half_power += 2 * (before - out.loops.len()) as i32;
        out
    }

    /// Structural equality, defined for undecorated diagrams only.
    pub fn structural_eq(&self, other: &DecoratedDiagram) -> Option<bool> {
        let (a, b) = (self.normalized(), other.normalized());
        if a.is_decorated() || b.is_decorated() {
            return None;
        }
        Some(a == b)
    }

    /// `s` with `self = s * other`, when both are undecorated with the same
    /// matching.
    pub fn ratio_to(&self, other: &DecoratedDiagram) -> Option<ScalarFactor> {
        let (a, b) = (self.normalized(), other.normalized());
        if a.is_decorated() || b.is_decorated() || a.top != b.top || a.bottom != b.bottom {
            return None;
        }
        if a.matching() != b.matching() || b.scalar.coeff == C64::new(0.0, 0.0) {
            return None;
        }
        Some(ScalarFactor::new(
            a.scalar.coeff / b.scalar.coeff,
            a.scalar.half_power - b.scalar.half_power,
        ))
    }

    /// No two strands cross when drawn inside the rectangle.
    pub fn is_planar(&self) -> bool {
        // boundary order: top left to right, then bottom right to left
        let pos = |e: Endpoint| match e.side {
            Side::Top => e.index,
            Side::Bottom => self.top + (self.bottom - 1 - e.index),
        };
        let chords: Vec<(usize, usize)> = self
            .strands
            .iter()
            .map(|s| {
                let (a, b) = (pos(s.start), pos(s.end));
                (a.min(b), a.max(b))
            })
            .collect();
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                let c_in = a < c && c < b;
                let d_in = a < d && d < b;
                if c_in != d_in {
                    return false;
                }
            }
        }
        true
    }

    /// Vertical mirror image with every decoration conjugated: the diagram of
    /// the adjoint matrix.
    pub fn adjoint(&self) -> DecoratedDiagram {
        let flip = |e: Endpoint| Endpoint {
            side: match e.side {
                Side::Top => Side::Bottom,
                Side::Bottom => Side::Top,
            },
            index: e.index,
        };
        let conj = |ds: &[Decoration]| -> Vec<Decoration> {
            ds.iter()
                .map(|x| Decoration::new(x.op.clone(), x.flavor.conjugated()))
                .collect()
        };
        let strands = self
            .strands
            .iter()
            .map(|s| Strand::new(flip(s.start), flip(s.end), conj(&s.decorations)))
            .collect();
        let loops = self.loops.iter().map(|l| conj(l)).collect();
        let scalar = ScalarFactor::new(self.scalar.coeff.conj(), self.scalar.half_power);
        DecoratedDiagram::new(self.bottom, self.top, strands, loops, scalar).expect("mirror of a valid diagram")
    }
}

fn check_position(i: usize, n: usize) -> Result<()> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::IndexOutOfRange {
            what: "generator position",
            index: i,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// `n` vertical strands.
pub fn identity_diagram(n: usize) -> DecoratedDiagram {
    let strands = (0..n)
        .map(|k| Strand::bare(Endpoint::top(k), Endpoint::bottom(k)))
        .collect();
    DecoratedDiagram::new(n, n, strands, Vec::new(), ScalarFactor::ONE).expect("identity")
}

fn generator(n: usize, i: usize, arcs: bool, decoration: Option<&str>) -> Result<DecoratedDiagram> {
    check_position(i, n)?;
    let (a, b) = (i - 1, i);
    let mut strands: Vec<Strand> = (0..n)
        .filter(|&k| k != a && k != b)
        .map(|k| Strand::bare(Endpoint::top(k), Endpoint::bottom(k)))
        .collect();
    let scalar = if arcs {
        let (cap, cup) = match decoration {
            Some(u) => (
                vec![Decoration::new(u, Flavor::Dagger)],
                vec![Decoration::new(u, Flavor::Transpose)],
            ),
            None => (Vec::new(), Vec::new()),
        };
        strands.push(Strand::new(Endpoint::top(a), Endpoint::top(b), cap));
        strands.push(Strand::new(Endpoint::bottom(a), Endpoint::bottom(b), cup));
        ScalarFactor::d_power(-2)
    } else {
        strands.push(Strand::bare(Endpoint::top(a), Endpoint::bottom(b)));
        strands.push(Strand::bare(Endpoint::top(b), Endpoint::bottom(a)));
        ScalarFactor::ONE
    };
    DecoratedDiagram::new(n, n, strands, Vec::new(), scalar)
}

/// `E_i = 1 x ... x omega x ... x 1`, with `omega` on strands `i, i+1` (1-based).
pub fn e_gen(i: usize, n: usize) -> Result<DecoratedDiagram> {
    generator(n, i, true, None)
}

/// The virtual crossing: swap of strands `i, i+1` (1-based).
pub fn v_gen(i: usize, n: usize) -> Result<DecoratedDiagram> {
    generator(n, i, false, None)
}

/// `|Phi><Phi|` on strands `i, i+1` with `|Phi> = (U x 1)|Omega>`.
pub fn projector(label: &str, i: usize, n: usize) -> Result<DecoratedDiagram> {
    generator(n, i, true, Some(label))
}

/// `|Omega>`: no inputs, two outputs.
pub fn cup() -> DecoratedDiagram {
    DecoratedDiagram::new(
        0,
        2,
        vec![Strand::bare(Endpoint::bottom(0), Endpoint::bottom(1))],
        Vec::new(),
        ScalarFactor::d_power(-1),
    )
    .expect("cup")
}

/// `<Omega|`: two inputs, no outputs.
pub fn cap() -> DecoratedDiagram {
    DecoratedDiagram::new(
        2,
        0,
        vec![Strand::bare(Endpoint::top(0), Endpoint::top(1))],
        Vec::new(),
        ScalarFactor::d_power(-1),
    )
    .expect("cap")
}

/// `(U x 1)|Omega>`.
pub fn decorated_cup(label: &str) -> DecoratedDiagram {
    let s = Strand::new(
        Endpoint::bottom(0),
        Endpoint::bottom(1),
        vec![Decoration::new(label, Flavor::Transpose)],
    );
    DecoratedDiagram::new(0, 2, vec![s], Vec::new(), ScalarFactor::d_power(-1)).expect("cup")
}

/// `<Omega|(U^dag x 1)`.
pub fn decorated_cap(label: &str) -> DecoratedDiagram {
    let s = Strand::new(
        Endpoint::top(0),
        Endpoint::top(1),
        vec![Decoration::new(label, Flavor::Dagger)],
    );
    DecoratedDiagram::new(2, 0, vec![s], Vec::new(), ScalarFactor::d_power(-1)).expect("cap")
}

/// Identity on `n` strands with one decoration on strand `k` (0-based).
pub fn operator_box(decoration: Decoration, k: usize, n: usize) -> Result<DecoratedDiagram> {
    if k >= n {
        return Err(Error::IndexOutOfRange {
            what: "strand",
            index: k,
            min: 0,
            max: n.saturating_sub(1),
        });
    }
    decorate(&identity_diagram(n), Endpoint::top(k), 0, decoration)
}

/// Glue `top`'s output row onto `bottom`'s input row.
pub fn compose(top: &DecoratedDiagram, bottom: &DecoratedDiagram) -> Result<DecoratedDiagram> {
    if top.bottom != bottom.top {
        return Err(Error::Diagram(format!(
            "cannot compose: upper diagram emits {} points, lower consumes {}",
            top.bottom, bottom.top
        )));
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Part {
        Upper,
        Lower,
    }
    let parts = [top, bottom];
    let lookup = |part: Part, e: Endpoint| -> usize {
        let d = parts[part as usize];
        d.strands
            .iter()
            .position(|s| s.start == e || s.end == e)
            .expect("perfect matching")
    };
    let mut used = [vec![false; top.strands.len()], vec![false; bottom.strands.len()]];

    // walk from (part, endpoint) until an external point; returns the exit and
    // the decorations met
    let walk = |mut part: Part, mut at: Endpoint, used: &mut [Vec<bool>; 2]| -> (Endpoint, Vec<Decoration>) {
        let mut decorations = Vec::new();
        loop {
            let idx = lookup(part, at);
            let strand = &parts[part as usize].strands[idx];
            used[part as usize][idx] = true;
            decorations.extend(strand.walked_from(at));
            let out = strand.other(at);
            match (part, out.side) {
                (Part::Upper, Side::Bottom) => {
                    part = Part::Lower;
                    at = Endpoint::top(out.index);
                }
                (Part::Lower, Side::Top) => {
                    part = Part::Upper;
                    at = Endpoint::bottom(out.index);
                }
                _ => return (out, decorations),
            }
        }
    };

    let mut strands = Vec::new();
    let externals = (0..top.top)
        .map(|k| (Part::Upper, Endpoint::top(k)))
        .chain((0..bottom.bottom).map(|k| (Part::Lower, Endpoint::bottom(k))));
    for (part, e) in externals {
        if used[part as usize][lookup(part, e)] {
            continue;
        }
        let (exit, decorations) = walk(part, e, &mut used);
        strands.push(Strand::new(e, exit, decorations));
    }

    let mut loops = top.loops.clone();
    loops.extend(bottom.loops.iter().cloned());
    for idx in 0..top.strands.len() {
        if used[0][idx] {
            continue;
        }
        // a closed cycle through the interface: every upper strand on it has
        // both ends on the upper diagram's bottom row
        let mut cycle = Vec::new();
        let first = top.strands[idx].start;
        let mut part = Part::Upper;
        let mut at = first;
        loop {
            let i = lookup(part, at);
            let strand = &parts[part as usize].strands[i];
            used[part as usize][i] = true;
            cycle.extend(strand.walked_from(at));
            let out = strand.other(at);
            (part, at) = match part {
                Part::Upper => (Part::Lower, Endpoint::top(out.index)),
                Part::Lower => (Part::Upper, Endpoint::bottom(out.index)),
            };
            if part == Part::Upper && at == first {
                break;
            }
        }
        loops.push(cycle);
    }
    debug_assert!(used[1].iter().all(|x| *x));
    DecoratedDiagram::new(top.top, bottom.bottom, strands, loops, top.scalar.times(bottom.scalar))
}

/// Compose a sequence top to bottom.
pub fn compose_all<'a>(layers: impl IntoIterator<Item = &'a DecoratedDiagram>) -> Result<DecoratedDiagram> {
    let mut it = layers.into_iter();
    let first = it.next().ok_or_else(|| Error::Diagram("empty stack".into()))?.clone();
    it.try_fold(first, |acc, next| compose(&acc, next))
}

/// The operator product `ops[0] * ops[1] * ...`: the rightmost factor acts first.
pub fn product(ops: &[&DecoratedDiagram]) -> Result<DecoratedDiagram> {
    compose_all(ops.iter().rev().copied())
}

/// `a` to the left of `b`.
pub fn tensor(a: &DecoratedDiagram, b: &DecoratedDiagram) -> DecoratedDiagram {
    let shift = |e: Endpoint| match e.side {
        Side::Top => Endpoint::top(e.index + a.top),
        Side::Bottom => Endpoint::bottom(e.index + a.bottom),
    };
    let mut strands = a.strands.clone();
    strands.extend(b.strands.iter().map(|s| Strand {
        start: shift(s.start),
        end: shift(s.end),
        decorations: s.decorations.clone(),
    }));
    let mut loops = a.loops.clone();
    loops.extend(b.loops.iter().cloned());
    DecoratedDiagram::new(
        a.top + b.top,
        a.bottom + b.bottom,
        strands,
        loops,
        a.scalar.times(b.scalar),
    )
    .expect("side by side placement of valid diagrams")
}

/// Insert `decoration` into the strand touching `at`, at `position` counted
/// from that strand's canonical start.
pub fn decorate(
    diag: &DecoratedDiagram,
    at: Endpoint,
    position: usize,
    decoration: Decoration,
) -> Result<DecoratedDiagram> {
    let mut out = diag.clone();
    let strand = out
        .strands
        .iter_mut()
        .find(|s| s.start == at || s.end == at)
        .ok_or_else(|| Error::Diagram(format!("no strand touches {at}")))?;
    if position > strand.decorations.len() {
        return Err(Error::IndexOutOfRange {
            what: "decoration position",
            index: position,
            min: 0,
            max: strand.decorations.len(),
        });
    }
    strand.decorations.insert(position, decoration);
    Ok(out)
}

/// A random diagram: uniform perfect matching of the `top + bottom` points,
/// up to `max_decorations` decorations per strand drawn from `labels` with
/// random flavors, and a random coefficient and half power.
pub fn random_diagram<R: Rng + ?Sized>(
    top: usize,
    bottom: usize,
    labels: &[&str],
    max_decorations: usize,
    rng: &mut R,
) -> Result<DecoratedDiagram> {
    if !(top + bottom).is_multiple_of(2) {
        return Err(Error::Diagram(format!(
            "{top} + {bottom} points cannot be perfectly matched"
        )));
    }
    let mut points: Vec<Endpoint> = (0..top)
        .map(Endpoint::top)
        .chain((0..bottom).map(Endpoint::bottom))
        .collect();
    // Fisher-Yates, then pair neighbours
    for i in (1..points.len()).rev() {
        points.swap(i, rng.random_range(0..=i));
    }
    const FLAVORS: [Flavor; 4] = [Flavor::Plain, Flavor::Transpose, Flavor::Dagger, Flavor::Conjugate];
    let strands = points
        .chunks(2)
        .map(|pair| {
            let k = if labels.is_empty() {
                0
            } else {
                rng.random_range(0..=max_decorations)
            };
            let decorations = (0..k)
                .map(|_| {
                    let op = labels[rng.random_range(0..labels.len())];
                    Decoration::new(op, FLAVORS[rng.random_range(0..4)])
                })
                .collect();
            Strand::new(pair[0], pair[1], decorations)
        })
        .collect();
    let coeff = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let scalar = ScalarFactor::new(coeff, rng.random_range(-2..=1));
    DecoratedDiagram::new(top, bottom, strands, Vec::new(), scalar)
}
