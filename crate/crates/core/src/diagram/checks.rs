use super::{
    brute_force_evaluate_stack, compose_all, decorated_cap, decorated_cup, e_gen, evaluate, identity_diagram, product,
    projector, tensor, v_gen, DecoratedDiagram, OperatorTable, ScalarFactor,
};
use crate::error::{Error, Result};
use crate::maxent::weyl_basis;
use crate::numkernel::{Matrix, StateVector, Tolerance, C64};
use crate::report::VerificationReport;

fn need_strands(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::ContractViolation(format!(
            "need at least {min} strands, got {n}"
        )));
    }
    Ok(())
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Accumulates a max residual and an all-true flag per relation so each
/// relation lands in the report once.
#[derive(Default)]
struct Tally {
    worst: f64,
    holds: bool,
    seen: bool,
}

impl Tally {
    fn residual(&mut self, r: f64) {
        self.worst = self.worst.max(r);
        self.seen = true;
    }

    fn exact(&mut self, ok: bool) {
        self.holds = if self.seen { self.holds && ok } else { ok };
        self.seen = true;
    }
}

struct Relation {
    name: &'static str,
    diagram: Tally,
    matrix: Tally,
}

impl Relation {
    fn new(name: &'static str) -> Self {
        Relation {
            name,
            diagram: Tally::default(),
            matrix: Tally::default(),
        }
    }

    fn emit(self, report: &mut VerificationReport, tol: Tolerance) {
        if self.diagram.seen {
            report.record_exact(format!("{} [diagram]", self.name), self.diagram.holds);
        }
        if self.matrix.seen {
            report.record(format!("{} [matrix]", self.name), self.matrix.worst, tol);
        }
    }
}

/// Scaling `d^(k/2)` matched exactly, coefficient 1.
fn is_power(ratio: Option<ScalarFactor>, half_power: i32) -> bool {
    matches!(ratio, Some(s) if s.half_power == half_power && s.coeff == real(1.0))
}

/// Temperley-Lieb relations for the `E_i` with loop value `d`, checked by
/// composing diagrams and by multiplying their matrices.
pub fn check_tl_axioms(n: usize, d: usize, tol: Tolerance) -> Result<VerificationReport> {
    need_strands(n, 2)?;
    let ops = OperatorTable::new();
    let gens: Vec<DecoratedDiagram> = (1..n).map(|i| e_gen(i, n)).collect::<Result<_>>()?;
    let mats: Vec<Matrix> = gens.iter().map(|g| evaluate(g, d, &ops)).collect::<Result<_>>()?;
    let inv_d2 = real(1.0 / (d * d) as f64);

    let mut idem = Relation::new("E_i E_i = E_i");
    let mut herm = Relation::new("E_i^dag = E_i");
    let mut adjacent = Relation::new("E_i E_j E_i = d^-2 E_i, |i-j| = 1");
    let mut far = Relation::new("E_i E_j = E_j E_i, |i-j| > 1");
    let mut functor = Relation::new("evaluate(compose) = matrix product");

    for (i, (e, m)) in gens.iter().zip(&mats).enumerate() {
        let ee = product(&[e, e])?;
        idem.diagram.exact(is_power(ee.ratio_to(e), 0));
        let mm = m * m;
        idem.matrix.residual(mm.max_residual(m)?);
        functor.matrix.residual(evaluate(&ee, d, &ops)?.max_residual(&mm)?);

        herm.diagram.exact(e.adjoint().structural_eq(e) == Some(true));
        herm.matrix.residual(m.dagger().max_residual(m)?);

        for (j, (f, p)) in gens.iter().zip(&mats).enumerate() {
            if i.abs_diff(j) == 1 {
                let efe = product(&[e, f, e])?;
                adjacent.diagram.exact(is_power(efe.ratio_to(e), -4));
                let mpm = &(m * p) * m;
                adjacent.matrix.residual(mpm.max_residual(&m.scale(inv_d2))?);
                functor.matrix.residual(evaluate(&efe, d, &ops)?.max_residual(&mpm)?);
            } else if i.abs_diff(j) > 1 {
                let ef = product(&[e, f])?;
                let fe = product(&[f, e])?;
                far.diagram.exact(ef.structural_eq(&fe) == Some(true));
                far.matrix.residual((m * p).max_residual(&(p * m))?);
            }
        }
    }
    let mut report = VerificationReport::new(format!("tl n={n} d={d}"));
    for r in [idem, herm, adjacent, far, functor] {
        r.emit(&mut report, tol);
    }
    Ok(report)
}

/// The same relations for the projectors `|Omega_k><Omega_k|` built from one
/// basis unitary `U_k` (1-based), which decorates every cup and cap.
pub fn check_tl_decorated(n: usize, d: usize, basis_index: usize, tol: Tolerance) -> Result<VerificationReport> {
    need_strands(n, 2)?;
    let basis = weyl_basis(d)?;
    let ops = OperatorTable::new().with("U", basis.get(basis_index)?.clone());
    let gens: Vec<DecoratedDiagram> = (1..n).map(|i| projector("U", i, n)).collect::<Result<_>>()?;
    let mats: Vec<Matrix> = gens.iter().map(|g| evaluate(g, d, &ops)).collect::<Result<_>>()?;
    let inv_d2 = real(1.0 / (d * d) as f64);

    let mut idem = Relation::new("E~_i E~_i = E~_i");
    let mut herm = Relation::new("E~_i^dag = E~_i");
    let mut adjacent = Relation::new("E~_i E~_j E~_i = d^-2 E~_i, |i-j| = 1");
    let mut far = Relation::new("E~_i E~_j = E~_j E~_i, |i-j| > 1");
    let mut functor = Relation::new("evaluate(compose) = matrix product");

    for (i, (e, m)) in gens.iter().zip(&mats).enumerate() {
        let ee = product(&[e, e])?;
        // one loop carrying U^dag U, worth tr(1) = d, against two extra arcs
        idem.diagram
            .exact(ee.shape().ratio_to(&e.shape()).is_some() && ee.scalar().half_power == -4 && ee.loops().len() == 1);
        let mm = m * m;
        idem.matrix.residual(mm.max_residual(m)?);
        functor.matrix.residual(evaluate(&ee, d, &ops)?.max_residual(&mm)?);

        herm.diagram.exact(e.adjoint() == *e);
        herm.matrix.residual(m.dagger().max_residual(m)?);

        for (j, (f, p)) in gens.iter().zip(&mats).enumerate() {
            if i.abs_diff(j) == 1 {
                let efe = product(&[e, f, e])?;
                adjacent
                    .diagram
                    .exact(efe.matching() == e.matching() && efe.scalar().half_power - e.scalar().half_power == -4);
                let mpm = &(m * p) * m;
                adjacent.matrix.residual(mpm.max_residual(&m.scale(inv_d2))?);
                functor.matrix.residual(evaluate(&efe, d, &ops)?.max_residual(&mpm)?);
            } else if i.abs_diff(j) > 1 {
                let ef = product(&[e, f])?;
                let fe = product(&[f, e])?;
                far.diagram.exact(ef == fe);
                far.matrix.residual((m * p).max_residual(&(p * m))?);
            }
        }
    }
    let mut report = VerificationReport::new(format!("tl-decorated n={n} d={d} U_{basis_index}"));
    for r in [idem, herm, adjacent, far, functor] {
        r.emit(&mut report, tol);
    }
    Ok(report)
}

/// Brauer mixed relations between the `E_i` and the virtual crossings `v_i`,
/// loop value `d`.
pub fn check_brauer_mixed(n: usize, d: usize, tol: Tolerance) -> Result<VerificationReport> {
    need_strands(n, 3)?;
    let ops = OperatorTable::new();
    let es: Vec<DecoratedDiagram> = (1..n).map(|i| e_gen(i, n)).collect::<Result<_>>()?;
    let vs: Vec<DecoratedDiagram> = (1..n).map(|i| v_gen(i, n)).collect::<Result<_>>()?;
    let em: Vec<Matrix> = es.iter().map(|g| evaluate(g, d, &ops)).collect::<Result<_>>()?;
    let vm: Vec<Matrix> = vs.iter().map(|g| evaluate(g, d, &ops)).collect::<Result<_>>()?;
    let dd = real(d as f64);

    let mut absorb = Relation::new("E_i v_i = v_i E_i = E_i");
    let mut far = Relation::new("E_i v_j = v_j E_i, |i-j| > 1");
    let mut slide = Relation::new("v_j v_i E_j = d E_i E_j, |i-j| = 1");
    let mut config = Relation::new("E_i v_j v_i = d E_i E_j, |i-j| = 1");

    for i in 0..n - 1 {
        let (e, v) = (&es[i], &vs[i]);
        let ev = product(&[e, v])?;
        let ve = product(&[v, e])?;
        absorb
            .diagram
            .exact(ev.structural_eq(e) == Some(true) && ve.structural_eq(e) == Some(true));
        absorb.matrix.residual((&em[i] * &vm[i]).max_residual(&em[i])?);
        absorb.matrix.residual((&vm[i] * &em[i]).max_residual(&em[i])?);
        for j in 0..n - 1 {
            if i.abs_diff(j) > 1 {
                let a = product(&[e, &vs[j]])?;
                let b = product(&[&vs[j], e])?;
                far.diagram.exact(a.structural_eq(&b) == Some(true));
                far.matrix.residual((&em[i] * &vm[j]).max_residual(&(&vm[j] * &em[i]))?);
            } else if i.abs_diff(j) == 1 {
                let target = product(&[e, &es[j]])?;
                let target_m = (&em[i] * &em[j]).scale(dd);
                let lhs = product(&[&vs[j], v, &es[j]])?;
                slide.diagram.exact(is_power(lhs.ratio_to(&target), 2));
                slide
                    .matrix
                    .residual((&(&vm[j] * &vm[i]) * &em[j]).max_residual(&target_m)?);
                let lhs = product(&[e, &vs[j], v])?;
                config.diagram.exact(is_power(lhs.ratio_to(&target), 2));
                config
                    .matrix
                    .residual((&(&em[i] * &vm[j]) * &vm[i]).max_residual(&target_m)?);
            }
        }
    }
    let mut report = VerificationReport::new(format!("brauer n={n} d={d}"));
    for r in [absorb, far, slide, config] {
        r.emit(&mut report, tol);
    }
    Ok(report)
}

/// Wiring of the five-strand information-flow diagram. Positions are the
/// left strand (0-based) of the pair a cup, cap or projector occupies; the
/// labels index the eight unitaries `U_1..U_8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowWiring {
    /// Cups `(U x 1)|Omega>` prepared next to the input strand 0.
    pub prepare: [(usize, usize); 2],
    /// Projectors `|Phi_k><Phi_k|`, first applied first.
    pub projectors: [(usize, usize); 8],
    /// Caps `<Omega|(U^dag x 1)` closing everything but strand 4.
    pub readout: [(usize, usize); 2],
}

/// Found by exhaustive search over projector positions; see the
/// `flow_wiring_search` test.
pub const FLOW_WIRING: FlowWiring = FlowWiring {
    prepare: [(6, 1), (8, 3)],
    projectors: [(6, 1), (8, 3), (7, 2), (4, 2), (5, 1), (2, 1), (3, 2), (1, 0)],
    readout: [(1, 0), (3, 2)],
};

fn label(k: usize) -> String {
    format!("U{k}")
}

/// Pieces of the flow diagram from input to output, for a given
/// projector placement.
pub fn flow_layers_with(projectors: &[(usize, usize)]) -> Result<Vec<DecoratedDiagram>> {
    let w = FLOW_WIRING;
    let [(p6, _), (p8, _)] = w.prepare;
    let [(r1, _), (r3, _)] = w.readout;
    let mut layers = Vec::with_capacity(projectors.len() + 2);
    layers.push(tensor(
        &identity_diagram(1),
        &tensor(&decorated_cup(&label(p6)), &decorated_cup(&label(p8))),
    ));
    for &(k, pos) in projectors {
        layers.push(projector(&label(k), pos + 1, 5)?);
    }
    layers.push(tensor(
        &tensor(&decorated_cap(&label(r1)), &decorated_cap(&label(r3))),
        &identity_diagram(1),
    ));
    Ok(layers)
}

pub fn flow_layers() -> Vec<DecoratedDiagram> {
    flow_layers_with(&FLOW_WIRING.projectors).expect("frozen wiring is valid")
}

/// The whole flow as a single one-strand diagram.
pub fn flow_diagram() -> DecoratedDiagram {
    compose_all(&flow_layers()).expect("frozen wiring composes")
}

fn flow_table(ops: &[Matrix], d: usize) -> Result<OperatorTable> {
    if ops.len() != 8 {
        return Err(Error::ContractViolation(format!(
            "flow needs eight operators, got {}",
            ops.len()
        )));
    }
    let mut table = OperatorTable::new();
    for (k, u) in ops.iter().enumerate() {
        if u.shape() != (d, d) {
            return Err(Error::Dimension {
                op: "flow operator",
                left: u.shape(),
                right: (d, d),
            });
        }
        if !u.is_unitary(Tolerance::LONG_CHAIN) {
            return Err(Error::ContractViolation(format!("U{} is not unitary", k + 1)));
        }
        table.insert(label(k + 1), u.clone());
    }
    Ok(table)
}

/// `(1/d^6) tr(U2^dag U5) tr(U4^dag U7) U8^T U7^dag U6^T U5^* U4 U3^dag U2^T U1^dag phi`.
pub fn flow_closed_form(ops: &[Matrix], phi: &StateVector) -> Result<StateVector> {
    if ops.len() != 8 {
        return Err(Error::ContractViolation(format!(
            "flow needs eight operators, got {}",
            ops.len()
        )));
    }
    let u = |k: usize| &ops[k - 1];
    let d = u(1).rows();
    let chain = [
        u(8).transpose(),
        u(7).dagger(),
        u(6).transpose(),
        u(5).conj(),
        u(4).clone(),
        u(3).dagger(),
        u(2).transpose(),
        u(1).dagger(),
    ];
    let mut m = Matrix::identity(d);
    for f in &chain {
        m = m.checked_mul(f)?;
    }
    let t25 = (&u(2).dagger() * u(5)).trace()?;
    let t47 = (&u(4).dagger() * u(7)).trace()?;
    let scale = t25 * t47 / (d as f64).powi(6);
    Ok(m.apply(phi)?.scale(scale))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowOutcome {
    /// `phi_B` from evaluating the composed diagram.
    pub output: StateVector,
    pub closed_form: StateVector,
    /// Diagram evaluation against the closed form.
    pub residual: f64,
    /// Diagram evaluation against the tensor-network contraction of the
    /// uncomposed layers.
    pub oracle_residual: f64,
}

/// Runs `phi` through the flow diagram and checks the result against the
/// closed form and the contraction oracle.
pub fn quantum_flow(ops: &[Matrix], phi: &StateVector, d: usize, tol: Tolerance) -> Result<FlowOutcome> {
    let table = flow_table(ops, d)?;
    if phi.dim() != d {
        return Err(Error::Dimension {
            op: "flow input",
            left: (phi.dim(), 1),
            right: (d, 1),
        });
    }
    let layers = flow_layers();
    let m = evaluate(&compose_all(&layers)?, d, &table)?;
    let oracle = brute_force_evaluate_stack(&layers, d, &table)?;
    let output = m.apply(phi)?;
    let closed_form = flow_closed_form(ops, phi)?;
    let residual = output.max_residual(&closed_form)?;
    let oracle_residual = m.max_residual(&oracle)?;
    for (what, r) in [
        ("flow closed form", residual),
        ("flow contraction oracle", oracle_residual),
    ] {
        if !tol.accepts(r) {
            return Err(Error::IdentityViolated {
                identity: what.into(),
                residual: r,
            });
        }
    }
    Ok(FlowOutcome {
        output,
        closed_form,
        residual,
        oracle_residual,
    })
}

/// The flow formula for `samples` seeded random unitary octuples plus the
/// all-identity and trace-orthogonal special cases.
pub fn quantum_flow_check(d: usize, samples: usize, seed: u64, tol: Tolerance) -> Result<VerificationReport> {
    use crate::random::{random_state, random_unitary, seeded};
    let mut rng = seeded(seed);
    let mut report = VerificationReport::new(format!("flow d={d}"));
    let layers = flow_layers();
    let diagram = compose_all(&layers)?;
    let (mut closed, mut oracle) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let ops: Vec<Matrix> = (0..8).map(|_| random_unitary(d, &mut rng)).collect();
        let phi = random_state(d, &mut rng);
        let table = flow_table(&ops, d)?;
        let m = evaluate(&diagram, d, &table)?;
        closed = closed.max(m.apply(&phi)?.max_residual(&flow_closed_form(&ops, &phi)?)?);
        oracle = oracle.max(m.max_residual(&brute_force_evaluate_stack(&layers, d, &table)?)?);
    }
    report.record("phi_B = closed form (random unitaries)", closed, tol);
    report.record("diagram = contraction oracle (random unitaries)", oracle, tol);

    let phi = random_state(d, &mut rng);
    let ids = vec![Matrix::identity(d); 8];
    let out = quantum_flow(&ids, &phi, d, tol)?;
    let expect = phi.scale(real((d as f64).powi(-4)));
    report.record(
        "all identities: phi_B = d^-4 phi_C",
        out.output.max_residual(&expect)?,
        tol,
    );

    if d >= 2 {
        let mut orth = ids.clone();
        orth[4] = crate::maxent::shift(d);
        let out = quantum_flow(&orth, &phi, d, tol)?;
        report.record("tr(U2^dag U5) = 0: phi_B = 0", out.output.norm(), tol);
    }
    Ok(report)
}
