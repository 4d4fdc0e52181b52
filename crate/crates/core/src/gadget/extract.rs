use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{Event, Gadget, GadgetizedCircuit, HPair};
use crate::angle::Angle;
use crate::circuit::{Circuit, Gate};
use crate::error::CoreError;
use crate::parity::{Affine, Parity};

fn unsupported(index: usize, reason: &str) -> CoreError {
    CoreError::UnsupportedStructure {
        index,
        reason: reason.to_string(),
    }
}

const UNSET: usize = usize::MAX;

struct Frame {
    content: BTreeMap<usize, Affine>,
    alive: BTreeSet<usize>,
    rank: Vec<usize>,
    births: usize,
    /// Full birth content of each variable in the current coordinates.
    birth: Vec<Parity>,
    gadgets: Vec<Gadget>,
    events: Vec<Event>,
    pairs: Vec<HPair>,
    /// `a` side at the CZ, until the gadget is measured.
    pending: Vec<Option<Parity>>,
}

impl Frame {
    fn new_var(&mut self, v: usize) {
        if self.rank.len() <= v {
            self.rank.resize(v + 1, UNSET);
            self.birth.resize(v + 1, Parity::new());
        }
        self.rank[v] = self.births;
        self.births += 1;
        self.birth[v] = Parity::single(v);
        self.alive.insert(v);
    }

    fn get(&self, w: usize, index: usize) -> Result<Affine, CoreError> {
        self.content
            .get(&w)
            .cloned()
            .ok_or_else(|| unsupported(index, "gate on a wire that is not live"))
    }

    fn phase(&mut self, f: &Affine, angle: Angle) {
        if f.vars.is_empty() || angle.is_zero() {
            return;
        }
        let angle = if f.constant { -angle } else { angle };
        self.events.push(Event::Gadget(self.gadgets.len()));
        self.gadgets.push(Gadget {
            parity: f.vars.clone(),
            angle,
        });
    }

    /// Rewrites every recorded parity for `x_u := x_u ^ x_v`, `u` in `phi - v`.
    fn substitute(&mut self, phi: &Parity, v: usize) {
        let mut rest = phi.clone();
        rest.flip(v);
        if rest.is_empty() {
            return;
        }
        let fix = |p: &mut Parity| {
            if p.overlap(&rest) % 2 == 1 {
                p.flip(v);
            }
        };
        self.gadgets.iter_mut().for_each(|g| fix(&mut g.parity));
        self.content.values_mut().for_each(|c| fix(&mut c.vars));
        self.pending.iter_mut().flatten().for_each(fix);
        self.pairs.iter_mut().for_each(|p| fix(&mut p.a_extra));
        self.birth.iter_mut().for_each(fix);
    }

    /// Removes wire `w`. Changes variables so that exactly one variable
    /// leaves the span of the remaining wires, and returns it.
    fn consume(&mut self, w: usize, index: usize) -> Result<usize, CoreError> {
        let g = self.content.remove(&w).map(|c| c.vars).unwrap_or_default();
        if g.is_empty() {
            return Err(unsupported(index, "measured wire holds no variable"));
        }
        // phi with <c, phi> = 0 on the other wires and <g, phi> = 1.
        let mut rows: Vec<(Parity, bool)> = self
            .content
            .values()
            .filter(|c| !c.vars.is_empty())
            .map(|c| (c.vars.clone(), false))
            .collect();
        rows.push((g, true));
        let mut reduced: Vec<(usize, Parity, bool)> = Vec::new();
        for (mut r, mut b) in rows {
            for (p, pr, pb) in &reduced {
                if r.contains(*p) {
                    r.xor_with(pr);
                    b ^= pb;
                }
            }
            let Some(p) = r.min_var() else {
                if b {
                    return Err(unsupported(index, "measured value is still held by another wire"));
                }
                continue;
            };
            for (_, pr, pb) in reduced.iter_mut() {
                if pr.contains(p) {
                    pr.xor_with(&r);
                    *pb ^= b;
                }
            }
            reduced.push((p, r, b));
        }
        let phi = Parity::from_vars(reduced.iter().filter(|x| x.2).map(|x| x.0));
        let v = phi.iter().min_by_key(|&u| self.rank[u]).unwrap();
        self.substitute(&phi, v);
        self.alive.remove(&v);
        Ok(v)
    }
}

/// Reads a circuit in the shape produced by [`super::gadgetize_hadamards`]
/// (or by a replay of a gadget form) into its gadget form.
///
/// The middle runs from the first non-Clifford gate or gadget CZ to the
/// last one, widened over neighbouring gates that the variable frame can
/// absorb. Everything before and after is kept as plain gates.
pub fn extract_gadget_form(c: &Circuit) -> Result<GadgetizedCircuit, CoreError> {
    c.validate()?;
    let gates = &c.gates;
    // Each X measurement closes the gadget whose CZ last touched its wire.
    let mut pair_cz: BTreeMap<usize, usize> = BTreeMap::new(); // CZ index -> a wire
    let mut pair_meas: BTreeSet<usize> = BTreeSet::new();
    let mut last_cz: BTreeMap<usize, usize> = BTreeMap::new();
    let mut meas_index: Vec<usize> = Vec::new();
    for (i, g) in gates.iter().enumerate() {
        match g {
            Gate::Cz(a, b) => {
                last_cz.insert(*a, i);
                last_cz.insert(*b, i);
            }
            Gate::MeasX(u) => {
                if let Some(s) = last_cz.remove(u) {
                    if let Gate::Cz(x, y) = gates[s] {
                        let other = if x == *u { y } else { x };
                        if last_cz.get(&other) == Some(&s) {
                            last_cz.remove(&other);
                        }
                    }
                    pair_cz.insert(s, *u);
                    pair_meas.insert(i);
                }
            }
            _ => {}
        }
        if g.is_measurement() {
            meas_index.push(i);
        }
    }
    let frame_gate = |i: usize| -> bool {
        match &gates[i] {
            Gate::H(_) | Gate::Rx(..) | Gate::MeasZ(_) | Gate::CtrlZ { .. } => false,
            Gate::MeasX(_) => pair_meas.contains(&i),
            Gate::CtrlX { outcome, .. } => meas_index
                .get(*outcome)
                .is_some_and(|m| pair_meas.contains(m)),
            _ => true,
        }
    };
    let anchor = |i: usize| gates[i].is_non_clifford() || pair_cz.contains_key(&i);
    let first = (0..gates.len()).find(|&i| anchor(i));
    let last = (0..gates.len()).rev().find(|&i| anchor(i));
    let (lo, hi) = match (first, last) {
        (Some(f), Some(l)) => (
            (0..f).rev().find(|&i| !frame_gate(i)).map_or(0, |i| i + 1),
            (l + 1..gates.len()).find(|&i| !frame_gate(i)).unwrap_or(gates.len()),
        ),
        _ => (gates.len(), gates.len()),
    };
    if let Some(i) = (lo..hi).find(|&i| !frame_gate(i)) {
        return Err(unsupported(
            i,
            &format!("{} between non-Clifford gates cannot be absorbed", gates[i].name()),
        ));
    }

    let mut live = vec![false; c.num_qubits];
    for &q in &c.inputs {
        live[q] = true;
    }
    for g in &gates[..lo] {
        match g {
            Gate::PrepPlus(q) | Gate::PrepZero(q) => live[*q] = true,
            Gate::MeasX(q) | Gate::MeasZ(q) => live[*q] = false,
            _ => {}
        }
    }
    let start_wires: Vec<usize> = (0..c.num_qubits).filter(|&q| live[q]).collect();
    let mut fr = Frame {
        content: BTreeMap::new(),
        alive: BTreeSet::new(),
        rank: vec![UNSET; c.num_qubits],
        births: 0,
        birth: vec![Parity::new(); c.num_qubits],
        gadgets: Vec::new(),
        events: Vec::new(),
        pairs: Vec::new(),
        pending: Vec::new(),
    };
    for &q in &start_wires {
        fr.new_var(q);
        fr.content.insert(q, Affine::var(q));
    }
    let mut next_var = c.num_qubits;
    // Variables from PrepPlus that no gadget has claimed as its `b` yet.
    let mut unclaimed: BTreeSet<usize> = BTreeSet::new();
    let mut open: BTreeMap<usize, usize> = BTreeMap::new(); // a wire -> pair
    let mut pair_of_outcome: BTreeMap<usize, usize> = BTreeMap::new();
    for i in lo..hi {
        let g = &gates[i];
        match g {
            Gate::PrepPlus(q) => {
                let v = if fr.rank[*q] == UNSET {
                    *q
                } else {
                    next_var += 1;
                    next_var - 1
                };
                fr.new_var(v);
                unclaimed.insert(v);
                fr.content.insert(*q, Affine::var(v));
            }
            Gate::PrepZero(q) => {
                fr.content.insert(*q, Affine::zero());
            }
            Gate::X(q) => {
                let mut f = fr.get(*q, i)?;
                f.constant ^= true;
                fr.content.insert(*q, f);
            }
            Gate::Cnot(a, b) => {
                let fa = fr.get(*a, i)?;
                let mut fb = fr.get(*b, i)?;
                fb.xor_with(&fa);
                fr.content.insert(*b, fb);
            }
            Gate::Cz(u, v) if pair_cz.contains_key(&i) => {
                let (aw, bw) = if pair_cz[&i] == *u { (*u, *v) } else { (*v, *u) };
                let fa = fr.get(aw, i)?;
                let fb = fr.get(bw, i)?;
                let b = fb
                    .vars
                    .as_single()
                    .filter(|b| unclaimed.contains(b))
                    .ok_or_else(|| unsupported(i, "gadget CZ does not act on a fresh |+> wire"))?;
                if fa.vars.is_empty() {
                    return Err(unsupported(i, "gadget CZ acts on a wire that holds no variable"));
                }
                unclaimed.remove(&b);
                let j = fr.pairs.len();
                fr.events.push(Event::Pair(j));
                fr.pairs.push(HPair {
                    a: UNSET,
                    b,
                    a_extra: Parity::new(),
                });
                fr.pending.push(Some(fa.vars.clone()));
                open.insert(aw, j);
                if fa.constant {
                    fr.phase(&Affine::var(b), Angle::pi());
                }
                if fb.constant {
                    let f = Affine {
                        vars: fa.vars.clone(),
                        constant: false,
                    };
                    fr.phase(&f, Angle::pi());
                }
            }
            Gate::Cz(u, v) => {
                let fu = fr.get(*u, i)?;
                let fv = fr.get(*v, i)?;
                let mut both = fu.clone();
                both.xor_with(&fv);
                fr.phase(&fu, Angle::pi_frac(1, 2));
                fr.phase(&fv, Angle::pi_frac(1, 2));
                fr.phase(&both, Angle::pi_frac(3, 2));
            }
            Gate::MeasX(q) => {
                let j = open
                    .remove(q)
                    .ok_or_else(|| unsupported(i, "X measurement outside a gadget"))?;
                let a = fr.consume(*q, i)?;
                let mut f = fr.pending[j].take().unwrap();
                if !f.contains(a) {
                    return Err(CoreError::NonLocalHadamard { index: i });
                }
                f.flip(a);
                fr.pairs[j].a = a;
                fr.pairs[j].a_extra = f;
                let m = meas_index.iter().position(|&x| x == i).unwrap();
                pair_of_outcome.insert(m, j);
            }
            Gate::CtrlX { outcome, target } => {
                let j = pair_of_outcome
                    .get(outcome)
                    .copied()
                    .ok_or_else(|| unsupported(i, "correction of an unknown measurement"))?;
                if !fr.get(*target, i)?.vars.contains(fr.pairs[j].b) {
                    return Err(unsupported(i, "correction does not act on the gadget's new wire"));
                }
            }
            _ => {
                let a = g
                    .z_phase()
                    .ok_or_else(|| unsupported(i, "gate cannot be absorbed"))?;
                let f = fr.get(g.qubits()[0], i)?;
                fr.phase(&f, a);
            }
        }
    }
    if let Some((&w, _)) = open.iter().next() {
        return Err(unsupported(hi, &format!("gadget on wire {w} is not measured before the end")));
    }

    // Merge gadgets on equal parities into the first one; drop zero angles.
    let mut first_of: BTreeMap<Parity, usize> = BTreeMap::new();
    let mut merged: Vec<Gadget> = Vec::new();
    let mut slot = vec![UNSET; fr.gadgets.len()];
    for (i, g) in fr.gadgets.iter().enumerate() {
        match first_of.get(&g.parity) {
            Some(&k) => merged[k].angle += g.angle.clone(),
            None => {
                first_of.insert(g.parity.clone(), merged.len());
                slot[i] = merged.len();
                merged.push(g.clone());
            }
        }
    }
    let mut renumber = vec![UNSET; merged.len()];
    let mut gadgets = Vec::new();
    for (k, g) in merged.into_iter().enumerate() {
        if !g.angle.is_zero() {
            renumber[k] = gadgets.len();
            gadgets.push(g);
        }
    }
    let event_order = fr
        .events
        .iter()
        .filter_map(|e| match *e {
            Event::Gadget(i) => {
                let k = slot[i];
                (k != UNSET && renumber[k] != UNSET).then(|| Event::Gadget(renumber[k]))
            }
            p => Some(p),
        })
        .collect();
    let mut birth_extra = fr.birth;
    birth_extra.resize(next_var, Parity::new());
    for (v, p) in birth_extra.iter_mut().enumerate() {
        if p.contains(v) {
            p.flip(v);
        }
    }
    Ok(GadgetizedCircuit {
        num_wires: c.num_qubits,
        num_vars: next_var,
        leading: gates[..lo].to_vec(),
        start_wires,
        birth_extra,
        gadgets,
        pairs: fr.pairs,
        event_order,
        final_map: fr.content.into_iter().collect(),
        trailing: gates[hi..].to_vec(),
        inputs: c.inputs.clone(),
        outputs: c.outputs.clone(),
    })
}
