//! One line per acceptance check. Runs without the libtest harness so the
//! lines show up in `cargo test` output.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use qcwidth::bench::{bench_dir, render, TableFormat};
use qcwidth::formats::{parse_diagram_json, parse_qc, read_text, write_qc};
use qcwidth::pipeline::{optimize, Method, Options, Product, Solver};
use qcwidth::verify::verify;
use qcwidth_core::degadget::{build_precedence_graph, choose_kept_pairs, degadgetize, hadamard_conflict_graph};
use qcwidth_core::fvs::min_fvs_exact;
use qcwidth_core::gadget::{
    extract_gadget_form, gadgetize_hadamards, internal_hadamards, replay, Event, Gadget, GadgetizedCircuit, HPair,
};
use qcwidth_core::layout::{
    layout_problem, layout_signature, optimize_diagram, prepare_for_layout, reorder_diagram_cutwidth, solve_cutwidth,
    solve_pathwidth, Constraints, WidthKind,
};
use qcwidth_core::linalg::distance_up_to_scalar;
use qcwidth_core::oracle::random::{random_circuit, random_digraph, random_gadget_form, random_graph, random_zx, rng};
use qcwidth_core::oracle::{branch_matrix, brute_fvs, brute_width};
use qcwidth_core::parity::{Affine, Parity};
use qcwidth_core::zx::{circuit_to_zx, evaluate_tensor, zx_to_circuit, NodeKind, ZxDiagram};
use qcwidth_core::{Angle, Budget, Circuit};
use rand::seq::SliceRandom;
use rand::Rng;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

struct Check {
    name: &'static str,
    failures: Vec<String>,
    notes: String,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            failures: Vec::new(),
            notes: String::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn width_solvers() -> Check {
    let mut ck = Check::new("exact cutwidth and pathwidth equal brute force");
    let mut r = rng(1);
    let mut count = 0;
    for n in 4..=9 {
        for i in 0..200 {
            let p = 0.2 + 0.6 * r.random::<f64>();
            let g = random_graph(&mut r, n, p);
            let u = r.random_range(0..n);
            let w = (u + r.random_range(1..n)) % n;
            let c = Constraints::endpoints(Some(u), Some(w));
            let want = brute_width(&g, WidthKind::Cutwidth, &c).unwrap();
            let got = solve_cutwidth(&g, Some(u), Some(w), true, &Budget::unlimited()).unwrap();
            let real = WidthKind::Cutwidth.width(&g, &got.ordering);
            let ends = got.ordering.order()[0] == u && got.ordering.order()[n - 1] == w;
            ck.expect(got.width == want && real == want && ends, || {
                format!("cutwidth |V|={n} #{i}: got {} (ordering {real}), brute {want}", got.width)
            });

            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(&mut r);
            let a = r.random_range(0..=2);
            let b = r.random_range(0..=2);
            let (head, tail) = (&vs[..a], &vs[a..a + b]);
            let c = Constraints::endbags(head, tail);
            let want = brute_width(&g, WidthKind::Pathwidth, &c).unwrap();
            let got = solve_pathwidth(&g, head, tail, true, &Budget::unlimited()).unwrap();
            let real = WidthKind::Pathwidth.width(&g, &got.ordering);
            ck.expect(got.width == want && real == want, || {
                format!("pathwidth |V|={n} #{i}: got {} (ordering {real}), brute {want}", got.width)
            });
            count += 2;
        }
    }
    ck.notes = format!("{count} instances");
    ck
}

fn fvs_solver() -> Check {
    let mut ck = Check::new("exact feedback vertex set equals brute force");
    let mut r = rng(2);
    let mut count = 0;
    for n in 4..=12 {
        for i in 0..200 {
            let p = 0.1 + 0.3 * r.random::<f64>();
            let g = random_digraph(&mut r, n, p);
            let want = brute_fvs(&g).unwrap().len();
            let got = min_fvs_exact(&g, &Budget::unlimited());
            let mut removed = vec![false; n];
            for &v in &got.set {
                removed[v] = true;
            }
            ck.expect(got.set.len() == want && got.optimal && g.is_acyclic_without(&removed), || {
                format!("|V|={n} #{i}: got {:?}, brute size {want}", got.set)
            });
            count += 1;
        }
    }
    ck.notes = format!("{count} instances");
    ck
}

/// Pathwidth of the layout instance of `d`, by brute force.
fn brute_pw(d: &ZxDiagram) -> Option<usize> {
    let sig = layout_signature(&prepare_for_layout(d));
    let (g, c) = layout_problem(&sig);
    brute_width(&g, WidthKind::Pathwidth, &c).ok()
}

fn sandwich() -> Check {
    let mut ck = Check::new("pw <= vertical cut of the layout <= pw + 2 on random diagrams");
    let mut r = rng(3);
    let (mut done, mut skipped) = (0, 0);
    let mut pws = std::collections::BTreeMap::new();
    while done < 100 {
        let spiders = r.random_range(3..=10);
        let (ins, outs, extra) = (r.random_range(0..=3), r.random_range(0..=3), r.random_range(2..=10));
        let d = random_zx(&mut r, spiders, ins, outs, extra);
        let Some(pw) = brute_pw(&d) else {
            skipped += 1;
            continue;
        };
        *pws.entry(pw).or_insert(0) += 1;
        let o = optimize_diagram(&d, true, &Budget::unlimited()).unwrap();
        let cut = o.diagram.max_vertical_cut().unwrap();
        ck.expect(pw <= cut && cut <= pw + 2, || format!("#{done}: pw {pw}, cut {cut}"));
        done += 1;
    }
    ck.notes = format!("{done} diagrams, {skipped} over the brute-force cap, pw counts {pws:?}");
    ck
}

fn track_bracket() -> Check {
    let mut ck = Check::new("circuit from a circuit diagram has pw to pw + 1 qubits");
    let mut r = rng(4);
    let (mut done, mut skipped) = (0, 0);
    let mut pws = std::collections::BTreeMap::new();
    while done < 100 {
        let n = r.random_range(2..=4);
        let len = r.random_range(4..=16);
        let c = random_circuit(&mut r, n, len);
        let d = circuit_to_zx(&c, &[]).unwrap();
        let Some(pw) = brute_pw(&d) else {
            skipped += 1;
            continue;
        };
        *pws.entry(pw).or_insert(0) += 1;
        let o = optimize_diagram(&d, true, &Budget::unlimited()).unwrap();
        let out = zx_to_circuit(&o.diagram).unwrap();
        let q = out.num_qubits;
        ck.expect(pw <= q && q <= pw + 1, || format!("#{done}: pw {pw}, qubits {q}"));
        done += 1;
    }
    ck.notes = format!("{done} circuits, {skipped} over the brute-force cap, pw counts {pws:?}");
    ck
}

fn semantics() -> Check {
    let mut ck = Check::new("pipeline outputs are equivalent to their inputs on every branch");
    let mut r = rng(5);
    let (mut circuits, mut outputs) = (0, 0);
    let mut worst: f64 = 0.0;
    while circuits < 50 {
        let n = r.random_range(1..=3);
        let len = r.random_range(6..=16);
        let c = random_circuit(&mut r, n, len);
        if n + internal_hadamards(&c).len() > 6 {
            continue;
        }
        let mut candidates: Vec<(String, Circuit)> = vec![("gadgetized".into(), gadgetize_hadamards(&c).unwrap())];
        for (method, solver) in [
            (Method::Degadget, Solver::Exact),
            (Method::Degadget, Solver::Greedy),
            (Method::Pathwidth, Solver::Exact),
            (Method::Pathwidth, Solver::Greedy),
        ] {
            let opts = Options {
                method,
                solver,
                ..Options::default()
            };
            match optimize("random", &c, &opts) {
                Ok(o) => {
                    let Product::Circuit(out) = o.product else { unreachable!() };
                    candidates.push((format!("{method:?}/{solver:?}"), out));
                }
                Err(e) => ck.failures.push(format!("circuit {circuits} {method:?}/{solver:?}: {e}")),
            }
        }
        for (what, out) in candidates {
            if out.num_qubits > 6 {
                continue;
            }
            match verify(&c, &out, 6) {
                Ok(v) => {
                    worst = worst.max(v.deviation);
                    ck.expect(v.equivalent, || format!("circuit {circuits} {what}: deviation {:.3e}", v.deviation));
                }
                Err(e) => ck.failures.push(format!("circuit {circuits} {what}: {e}")),
            }
            outputs += 1;
        }
        circuits += 1;
    }
    ck.notes = format!("{circuits} circuits, {outputs} outputs, max deviation {worst:.1e}");
    ck
}

/// Three inputs, four Hadamard pairs, three pi/4 gadgets.
fn four_pairs_form() -> GadgetizedCircuit {
    let n = 3;
    let pairs = [(0, 3), (4, 5), (1, 4), (2, 6)];
    let gadgets: [&[usize]; 3] = [&[3, 4], &[5, 0, 1], &[2, 6]];
    let nv = n + pairs.len();
    let live: Vec<usize> = (0..nv).filter(|v| pairs.iter().all(|p| p.0 != *v)).collect();
    GadgetizedCircuit {
        num_wires: nv,
        num_vars: nv,
        leading: Vec::new(),
        start_wires: (0..n).collect(),
        birth_extra: vec![Parity::new(); nv],
        gadgets: gadgets
            .iter()
            .map(|p| Gadget {
                parity: Parity::from_vars(p.iter().copied()),
                angle: Angle::pi_frac(1, 4),
            })
            .collect(),
        pairs: pairs
            .iter()
            .map(|&(a, b)| HPair {
                a,
                b,
                a_extra: Parity::new(),
            })
            .collect(),
        event_order: {
            use Event::*;
            vec![Gadget(1), Pair(0), Pair(2), Gadget(0), Pair(1), Gadget(2), Pair(3)]
        },
        final_map: live.iter().map(|&v| (v, Affine::var(v))).collect(),
        trailing: Vec::new(),
        inputs: (0..n).collect(),
        outputs: live,
    }
}

fn four_pairs() -> Check {
    let mut ck = Check::new("four-pair example: feedback set of size 2, two ancillas removed");
    let c = parse_qc(&read_text(&fixtures().join("four_pairs.qc")).unwrap()).unwrap();
    let built = replay(&four_pairs_form()).unwrap();
    ck.expect(c == parse_qc(&write_qc(&built)).unwrap(), || "fixture differs from the built form".into());

    let form = extract_gadget_form(&c).unwrap();
    let conflicts = hadamard_conflict_graph(&build_precedence_graph(&form));
    let brute = brute_fvs(&conflicts).unwrap();
    let exact = min_fvs_exact(&conflicts, &Budget::unlimited());
    ck.expect(brute.len() == 2 && exact.set.len() == 2, || {
        format!("feedback sets: brute {brute:?}, exact {:?}", exact.set)
    });
    let kept = choose_kept_pairs(&form, true, &Budget::unlimited());
    let d = degadgetize(&form, &kept.kept).unwrap();
    ck.expect(c.num_qubits == 7 && d.circuit.num_qubits == 5, || {
        format!("{} qubits before, {} after", c.num_qubits, d.circuit.num_qubits)
    });
    let o = optimize("four_pairs", &c, &Options::default()).unwrap();
    ck.expect(o.report.degadget_qubits == Some(5) && o.report.kept_pairs == Some(2), || {
        format!("report: {:?} qubits, {:?} kept", o.report.degadget_qubits, o.report.kept_pairs)
    });
    let v = verify(&c, &d.circuit, 8).unwrap();
    ck.expect(v.equivalent, || format!("deviation {:.3e}", v.deviation));
    ck.notes = format!("kept pairs {:?}, 7 -> {} qubits", d.kept, d.circuit.num_qubits);
    ck
}

/// Smallest largest vertical cut over all column orders of the spiders,
/// boundaries held at the two ends.
fn brute_reorder_cut(d: &ZxDiagram) -> usize {
    let spiders = d.spiders();
    let k = spiders.len() as i64;
    let mut e = d.clone();
    for (v, n) in d.nodes() {
        match n.kind {
            NodeKind::Input => e.columns.insert(v, 0),
            NodeKind::Output => e.columns.insert(v, k + 1),
            _ => None,
        };
    }
    let mut perm: Vec<usize> = (0..spiders.len()).collect();
    let mut best = usize::MAX;
    // Heap's algorithm.
    let mut stack = vec![0usize; perm.len()];
    let mut visit = |perm: &[usize], e: &mut ZxDiagram| {
        for (i, &s) in spiders.iter().enumerate() {
            e.columns.insert(s, perm[i] as i64 + 1);
        }
        best = best.min(e.max_vertical_cut().unwrap());
    };
    visit(&perm, &mut e);
    let mut i = 0;
    while i < perm.len() {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            visit(&perm, &mut e);
            stack[i] += 1;
            i = 0;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    best
}

fn layout_examples() -> Check {
    let mut ck = Check::new("reordering example needs 5 qubits instead of 9, layout example needs 4");
    let d = parse_diagram_json(&read_text(&fixtures().join("nine_to_five.json")).unwrap()).unwrap();
    let before = d.max_vertical_cut().unwrap();
    let oracle = brute_reorder_cut(&d);
    let re = reorder_diagram_cutwidth(&d, true, &Budget::unlimited()).unwrap();
    let after = re.diagram.max_vertical_cut().unwrap();
    ck.expect(before == 9 && oracle == 5 && re.width == 5 && after == 5, || {
        format!("cut {before}, brute {oracle}, solver {}, result cut {after}", re.width)
    });
    let same = distance_up_to_scalar(&evaluate_tensor(&d, 12).unwrap(), &evaluate_tensor(&re.diagram, 12).unwrap());
    ck.expect(same.is_some_and(|x| x < 1e-9), || "reordered diagram changed its map".into());

    let d = parse_diagram_json(&read_text(&fixtures().join("four_track_layout.json")).unwrap()).unwrap();
    let o = optimize_diagram(&d, true, &Budget::unlimited()).unwrap();
    let out = zx_to_circuit(&o.diagram).unwrap();
    let pw = brute_pw(&d).unwrap();
    ck.expect(out.num_qubits == 4 && pw <= 4, || format!("{} qubits, pw {pw}", out.num_qubits));
    let same = distance_up_to_scalar(&evaluate_tensor(&d, 12).unwrap(), &branch_matrix(&out, &[], 12).unwrap());
    ck.expect(same.is_some_and(|x| x < 1e-9), || "laid-out circuit changed the map".into());
    ck.notes = format!("9 -> {after}; {} cut -> {} qubits (pw {pw})", d.max_vertical_cut().unwrap(), out.num_qubits);
    ck
}

fn bench_identity() -> Check {
    let mut ck = Check::new("bench rows satisfy initial = n + h; three-control Toffoli starts at 7");
    let dir = fixtures().join("bench");
    let opts = Options {
        method: Method::Both,
        ..Options::default()
    };
    let rows = bench_dir(&dir, &opts).unwrap();
    for row in &rows {
        ck.expect(row.errors.is_empty(), || format!("{}: {:?}", row.circuit, row.errors));
        ck.expect(row.initial == Some(row.n.unwrap_or(0) + row.h.unwrap_or(0)), || {
            format!("{}: initial {:?} vs n {:?} + h {:?}", row.circuit, row.initial, row.n, row.h)
        });
        ck.expect(row.degadget <= row.initial, || format!("{}: degadget above initial", row.circuit));
    }
    let tof3 = rows.iter().find(|r| r.circuit == "tof3");
    ck.expect(
        tof3.is_some_and(|r| (r.n, r.h, r.initial) == (Some(5), Some(2), Some(7))),
        || format!("tof3 row {tof3:?}"),
    );
    let again = render(&bench_dir(&dir, &opts).unwrap(), TableFormat::Tsv);
    ck.expect(render(&rows, TableFormat::Tsv) == again, || "two runs differ".into());
    ck.notes = format!("{} rows", rows.len());
    ck
}

fn accounting() -> Check {
    let mut ck = Check::new("degadgetized width = n + |X|, exact |X| <= greedy |X|");
    let mut r = rng(9);
    let mut runs = 0;
    let mut kept_total = (0, 0);
    let mut forms: Vec<(usize, GadgetizedCircuit)> = Vec::new();
    for i in 0..100 {
        let n = 2 + i % 3;
        let c = random_circuit(&mut r, n, 24);
        forms.push((n, extract_gadget_form(&gadgetize_hadamards(&c).unwrap()).unwrap()));
    }
    for i in 0..100 {
        let n = 1 + i % 3;
        forms.push((n, random_gadget_form(&mut r, n, 1 + i % 5, 2 + i % 4)));
    }
    for (i, (n, form)) in forms.iter().enumerate() {
        let mut sizes = [0; 2];
        for (k, exact) in [true, false].into_iter().enumerate() {
            let kept = choose_kept_pairs(form, exact, &Budget::unlimited());
            let d = degadgetize(form, &kept.kept).unwrap();
            ck.expect(d.circuit.num_qubits == n + d.kept.len(), || {
                format!("#{i}: width {} with n {n}, |X| {}", d.circuit.num_qubits, d.kept.len())
            });
            sizes[k] = d.kept.len();
            runs += 1;
        }
        ck.expect(sizes[0] <= sizes[1], || format!("#{i}: exact {} > greedy {}", sizes[0], sizes[1]));
        kept_total.0 += sizes[0];
        kept_total.1 += sizes[1];
    }
    ck.notes = format!("{runs} runs, |X| total exact {} greedy {}", kept_total.0, kept_total.1);
    ck
}

fn main() -> ExitCode {
    let checks: [fn() -> Check; 9] = [
        width_solvers,
        fvs_solver,
        sandwich,
        track_bracket,
        semantics,
        four_pairs,
        layout_examples,
        bench_identity,
        accounting,
    ];
    let mut failed = 0;
    for f in checks {
        let t = Instant::now();
        let ck = f();
        let status = if ck.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} {} ({}; {:.1}s)", ck.name, ck.notes, t.elapsed().as_secs_f64());
        for m in ck.failures.iter().take(5) {
            println!("    {m}");
        }
        if !ck.failures.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} checks failed");
        ExitCode::FAILURE
    }
}
