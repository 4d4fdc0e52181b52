//! The optimization pipeline behind `qcwidth optimize`.

use std::sync::Arc;
use std::time::Instant;

use qcwidth_core::degadget::{choose_kept_pairs, degadgetize, EXACT_FVS_CAP};
use qcwidth_core::gadget::{extract_gadget_form, gadgetize_hadamards, internal_hadamards, GadgetizedCircuit};
use qcwidth_core::layout::{
    layout_problem, layout_signature, optimize_diagram, prepare_for_layout, reorder_diagram_cutwidth,
};
use qcwidth_core::oracle::sim::corrected_measurements;
use qcwidth_core::zx::{circuit_to_zx, zx_to_circuit, ZxDiagram};
use qcwidth_core::{Budget, Circuit, CoreError, Gate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact layouts are tried up to this many vertices.
pub const EXACT_LAYOUT_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Degadget,
    Pathwidth,
    Cutwidth,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Exact,
    Greedy,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub method: Method,
    pub solver: Solver,
    /// Wall-clock limit for each exact search.
    pub budget_ms: Option<u64>,
    pub fvs_cap: usize,
    pub layout_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            method: Method::Degadget,
            solver: Solver::Exact,
            budget_ms: None,
            fvs_cap: EXACT_FVS_CAP,
            layout_cap: EXACT_LAYOUT_CAP,
        }
    }
}

impl Options {
    fn budget(&self) -> Budget {
        match self.budget_ms {
            None => Budget::unlimited(),
            Some(ms) => {
                let start = Instant::now();
                Budget::unlimited().with_expiry(Arc::new(move || start.elapsed().as_millis() as u64 >= ms))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub degadget_ms: f64,
    pub pathwidth_ms: f64,
    pub cutwidth_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizeReport {
    pub schema: u32,
    pub circuit: String,
    pub method: Method,
    pub solver: Solver,
    /// Qubits of the input.
    pub n: usize,
    /// Internal Hadamard gates turned into gadgets.
    pub h: usize,
    pub initial_qubits: usize,
    pub degadget_qubits: Option<usize>,
    pub pathwidth_qubits: Option<usize>,
    pub cutwidth_qubits: Option<usize>,
    /// Pairs still gadgetized after degadgetization, `|X|`.
    pub kept_pairs: Option<usize>,
    /// Pairs added to the feedback vertex set to make a schedule.
    pub repaired_pairs: Option<usize>,
    /// Vertex separation of the layout ordering.
    pub pathwidth: Option<usize>,
    pub degadget_exact: Option<bool>,
    pub pathwidth_exact: Option<bool>,
    pub cutwidth_exact: Option<bool>,
    /// An exact search was requested and ran out of time.
    pub budget_exhausted: bool,
    pub timings: Timings,
    pub warnings: Vec<String>,
}

impl OptimizeReport {
    fn new(name: &str, opts: &Options, n: usize, h: usize) -> Self {
        OptimizeReport {
            schema: 1,
            circuit: name.to_string(),
            method: opts.method,
            solver: opts.solver,
            n,
            h,
            initial_qubits: n + h,
            degadget_qubits: None,
            pathwidth_qubits: None,
            cutwidth_qubits: None,
            kept_pairs: None,
            repaired_pairs: None,
            pathwidth: None,
            degadget_exact: None,
            pathwidth_exact: None,
            cutwidth_exact: None,
            budget_exhausted: false,
            timings: Timings::default(),
            warnings: Vec::new(),
        }
    }
}

/// What `optimize` produced besides the report.
#[derive(Clone, Debug)]
pub enum Product {
    Circuit(Circuit),
    /// The cutwidth route only reorders a diagram.
    Diagram(ZxDiagram),
}

#[derive(Clone, Debug)]
pub struct Optimized {
    pub product: Product,
    pub report: OptimizeReport,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub struct DegadgetRun {
    pub circuit: Circuit,
    pub kept: usize,
    pub repaired: usize,
    pub optimal: bool,
    pub exact_used: bool,
    pub out_of_budget: bool,
}

/// X measurements or classically controlled gates. A trailing Z
/// measurement of an ancilla does not count.
fn is_gadgetized(c: &Circuit) -> bool {
    c.gates
        .iter()
        .any(|g| matches!(g, Gate::MeasX(_) | Gate::CtrlX { .. } | Gate::CtrlZ { .. }))
}

/// Gadget form of `c`. A circuit with gadget measurements is taken to be
/// gadgetized already; otherwise its internal Hadamards are gadgetized.
pub fn gadget_form(c: &Circuit) -> Result<GadgetizedCircuit> {
    if is_gadgetized(c) {
        Ok(extract_gadget_form(c)?)
    } else {
        Ok(extract_gadget_form(&gadgetize_hadamards(c)?)?)
    }
}

/// `(n, h)`: qubits before gadgetization and gadgetized Hadamards. For an
/// already gadgetized input, `h` counts its pairs and `n` is the rest.
pub fn qubit_counts(c: &Circuit) -> Result<(usize, usize)> {
    if is_gadgetized(c) {
        let h = extract_gadget_form(c)?.pairs.len();
        Ok((c.num_qubits.saturating_sub(h), h))
    } else {
        Ok((c.num_qubits, internal_hadamards(c).len()))
    }
}

/// Gadgetizes internal Hadamards, then turns back every pair outside a
/// minimum feedback vertex set of the conflict graph.
pub fn run_degadget(c: &Circuit, opts: &Options, warnings: &mut Vec<String>) -> Result<DegadgetRun> {
    let form = gadget_form(c)?;
    let mut exact = opts.solver == Solver::Exact;
    if exact && form.pairs.len() > opts.fvs_cap {
        warnings.push(format!(
            "{} hadamard pairs exceed the exact cap {}; using the greedy feedback vertex set",
            form.pairs.len(),
            opts.fvs_cap
        ));
        exact = false;
    }
    let kept = choose_kept_pairs(&form, exact, &opts.budget());
    let d = degadgetize(&form, &kept.kept)?;
    Ok(DegadgetRun {
        circuit: d.circuit,
        kept: d.kept.len(),
        repaired: d.repaired.len(),
        optimal: kept.optimal && d.repaired.is_empty(),
        exact_used: exact,
        out_of_budget: exact && !kept.optimal,
    })
}

pub struct PathwidthRun {
    pub circuit: Circuit,
    pub pathwidth: usize,
    pub optimal: bool,
    pub exact_used: bool,
}

fn layout_size(d: &ZxDiagram) -> usize {
    let p = prepare_for_layout(d);
    layout_problem(&layout_signature(&p)).0.len()
}

/// Lays a diagram out along a small-pathwidth ordering and reads the result
/// back as a circuit.
pub fn run_pathwidth(d: &ZxDiagram, opts: &Options, warnings: &mut Vec<String>) -> Result<PathwidthRun> {
    let mut exact = opts.solver == Solver::Exact;
    let size = layout_size(d);
    if exact && size > opts.layout_cap {
        warnings.push(format!(
            "layout instance has {size} vertices, above the exact cap {}; using the greedy ordering",
            opts.layout_cap
        ));
        exact = false;
    }
    let o = match optimize_diagram(d, exact, &opts.budget()) {
        Err(CoreError::CapExceeded { .. }) if exact => {
            warnings.push("exact layout over its cap; using the greedy ordering".into());
            exact = false;
            optimize_diagram(d, false, &Budget::unlimited())?
        }
        r => r?,
    };
    Ok(PathwidthRun {
        circuit: zx_to_circuit(&o.diagram)?,
        pathwidth: o.pathwidth,
        optimal: o.optimal,
        exact_used: exact,
    })
}

pub fn optimize(name: &str, c: &Circuit, opts: &Options) -> Result<Optimized> {
    let (n, h) = qubit_counts(c)?;
    let mut report = OptimizeReport::new(name, opts, n, h);
    let mut warnings = Vec::new();
    let exact = opts.solver == Solver::Exact;

    let mut degadgeted = None;
    if matches!(opts.method, Method::Degadget | Method::Both) {
        let t = Instant::now();
        let r = run_degadget(c, opts, &mut warnings)?;
        report.timings.degadget_ms = ms(t);
        report.degadget_qubits = Some(r.circuit.num_qubits);
        report.kept_pairs = Some(r.kept);
        report.repaired_pairs = Some(r.repaired);
        report.degadget_exact = Some(r.exact_used && r.optimal);
        report.budget_exhausted |= r.out_of_budget;
        degadgeted = Some(r.circuit);
    }

    let mut laid_out = None;
    if matches!(opts.method, Method::Pathwidth | Method::Both | Method::Cutwidth) {
        if !corrected_measurements(c).is_empty() {
            warnings.push("input has corrected measurements; the diagram follows the all-zero branch".into());
        }
    }
    if matches!(opts.method, Method::Pathwidth | Method::Both) {
        let t = Instant::now();
        let d = circuit_to_zx(c, &[])?;
        let r = run_pathwidth(&d, opts, &mut warnings)?;
        report.timings.pathwidth_ms = ms(t);
        report.pathwidth_qubits = Some(r.circuit.num_qubits);
        report.pathwidth = Some(r.pathwidth);
        report.pathwidth_exact = Some(r.exact_used && r.optimal);
        report.budget_exhausted |= r.exact_used && !r.optimal;
        laid_out = Some(r.circuit);
    }

    let mut reordered = None;
    if opts.method == Method::Cutwidth {
        let t = Instant::now();
        let d = circuit_to_zx(c, &[])?;
        let size = layout_size(&d);
        let mut ex = exact;
        if ex && size > opts.layout_cap {
            warnings.push(format!(
                "layout instance has {size} vertices, above the exact cap {}; using the greedy ordering",
                opts.layout_cap
            ));
            ex = false;
        }
        let r = match reorder_diagram_cutwidth(&d, ex, &opts.budget()) {
            Err(CoreError::CapExceeded { .. }) if ex => {
                ex = false;
                reorder_diagram_cutwidth(&d, false, &Budget::unlimited())?
            }
            r => r?,
        };
        report.timings.cutwidth_ms = ms(t);
        report.cutwidth_qubits = Some(r.width);
        report.cutwidth_exact = Some(ex && r.optimal);
        report.budget_exhausted |= ex && !r.optimal;
        reordered = Some(r.diagram);
    }

    report.warnings = warnings;
    let product = match (degadgeted, laid_out, reordered) {
        (Some(a), Some(b), _) => Product::Circuit(if b.num_qubits < a.num_qubits { b } else { a }),
        (Some(a), None, _) | (None, Some(a), _) => Product::Circuit(a),
        (None, None, Some(d)) => Product::Diagram(d),
        (None, None, None) => unreachable!("every method runs a stage"),
    };
    Ok(Optimized { product, report })
}

/// Lays out a diagram given directly rather than as a circuit.
pub fn optimize_diagram_input(name: &str, d: &ZxDiagram, opts: &Options) -> Result<Optimized> {
    let mut warnings = Vec::new();
    let inputs = d.inputs().len();
    let mut report = OptimizeReport::new(name, opts, inputs, 0);
    match opts.method {
        Method::Pathwidth => {
            let t = Instant::now();
            let r = run_pathwidth(d, opts, &mut warnings)?;
            report.timings.pathwidth_ms = ms(t);
            report.pathwidth_qubits = Some(r.circuit.num_qubits);
            report.pathwidth = Some(r.pathwidth);
            report.pathwidth_exact = Some(r.exact_used && r.optimal);
            report.budget_exhausted |= r.exact_used && !r.optimal;
            report.warnings = warnings;
            Ok(Optimized {
                product: Product::Circuit(r.circuit),
                report,
            })
        }
        Method::Cutwidth => {
            let t = Instant::now();
            let exact = opts.solver == Solver::Exact;
            let r = reorder_diagram_cutwidth(d, exact, &opts.budget())?;
            report.timings.cutwidth_ms = ms(t);
            report.cutwidth_qubits = Some(r.width);
            report.cutwidth_exact = Some(exact && r.optimal);
            report.budget_exhausted |= exact && !r.optimal;
            Ok(Optimized {
                product: Product::Diagram(r.diagram),
                report,
            })
        }
        m => Err(Error::Usage(format!("method {m:?} needs a circuit, not a diagram"))),
    }
}
