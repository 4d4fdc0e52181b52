use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{Event, GadgetizedCircuit, HPair};
use crate::circuit::{Circuit, Gate};
use crate::error::CoreError;
use crate::parity::Parity;

const NONE: usize = usize::MAX;

fn invalid(msg: &str) -> CoreError {
    CoreError::InvalidOrdering(msg.to_string())
}

/// Row operations `(target, control)` taking `rows` to the identity, where
/// row `k` must end as the unit vector of `cols[k]`.
fn reduce_to_identity(mut rows: Vec<Parity>, cols: &[usize]) -> Result<Vec<(usize, usize)>, CoreError> {
    let k = rows.len();
    let mut ops = Vec::new();
    for c in 0..k {
        if !rows[c].contains(cols[c]) {
            let r = (c + 1..k)
                .find(|&r| rows[r].contains(cols[c]))
                .ok_or_else(|| invalid("wire contents are not independent"))?;
            let src = rows[r].clone();
            rows[c].xor_with(&src);
            ops.push((c, r));
        }
        for r in 0..k {
            if r != c && rows[r].contains(cols[c]) {
                let src = rows[c].clone();
                rows[r].xor_with(&src);
                ops.push((r, c));
            }
        }
    }
    if rows.iter().zip(cols).any(|(r, &c)| *r != Parity::single(c)) {
        return Err(invalid("wire contents use variables outside the live set"));
    }
    Ok(ops)
}

struct Emitter<'a> {
    g: &'a GadgetizedCircuit,
    phys: Vec<usize>,
    alive: Vec<bool>,
    gone: Vec<bool>,
    out: Vec<Gate>,
}

impl Emitter<'_> {
    fn need(&self, vars: impl IntoIterator<Item = usize>) -> Result<(), CoreError> {
        if vars.into_iter().all(|v| self.alive[v]) {
            Ok(())
        } else {
            Err(invalid("a variable is used outside its lifetime"))
        }
    }

    /// XORs `vars` into the wire of `v`.
    fn ladder(&mut self, vars: &Parity, v: usize) -> Result<(), CoreError> {
        self.need(vars.iter())?;
        for e in vars.iter() {
            self.out.push(Gate::Cnot(self.phys[e], self.phys[v]));
        }
        Ok(())
    }

    fn birth(&mut self, v: usize) -> Result<(), CoreError> {
        self.out.push(Gate::PrepPlus(self.phys[v]));
        self.ladder(&self.g.birth_extra[v].clone(), v)?;
        self.alive[v] = true;
        Ok(())
    }
}

/// Writes out the gadget form with events in `schedule` order. Pair `j`
/// becomes a plain Hadamard gate when `plain[j]` is set; otherwise it keeps
/// its ancilla, which is prepared just before its first use and whose `a`
/// side is measured after its last use. A kept pair gets its classical
/// correction only when its preparation, CZ and measurement are adjacent;
/// otherwise the emitted circuit is exact on the all-zero outcome branch.
pub fn emit(g: &GadgetizedCircuit, schedule: &[Event], plain: &[bool]) -> Result<Circuit, CoreError> {
    let nv = g.num_vars;
    let h = g.pairs.len();
    if plain.len() != h {
        return Err(invalid("one flag per pair is required"));
    }
    let mut seen = vec![false; g.gadgets.len() + h];
    for e in schedule {
        let k = match *e {
            Event::Gadget(i) if i < g.gadgets.len() => i,
            Event::Pair(j) if j < h => g.gadgets.len() + j,
            _ => return Err(invalid("schedule refers to an unknown event")),
        };
        if core::mem::replace(&mut seen[k], true) {
            return Err(invalid("schedule repeats an event"));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(invalid("schedule misses an event"));
    }

    // A plain pair's b reuses a's wire.
    let pair_of_b = g.pair_of_b();
    let mut phys: Vec<usize> = (0..nv).collect();
    for (v, slot) in phys.iter_mut().enumerate() {
        let mut r = v;
        for _ in 0..=nv {
            match pair_of_b[r] {
                Some(j) if plain[j] => r = g.pairs[j].a,
                _ => break,
            }
        }
        *slot = r;
    }
    let mut is_start = vec![false; nv];
    for &w in &g.start_wires {
        is_start[w] = true;
    }
    let plain_b = |v: usize| pair_of_b[v].is_some_and(|j| plain[j]);
    let floating = |v: usize| !is_start[v] && !plain_b(v);
    let mut kept_a = vec![false; nv];
    for (j, p) in g.pairs.iter().enumerate() {
        if !plain[j] {
            kept_a[p.a] = true;
        }
    }

    let event_vars = |e: Event| -> Vec<usize> {
        match e {
            Event::Gadget(i) => g.gadgets[i].parity.iter().collect(),
            Event::Pair(j) => {
                let HPair { a, b, a_extra } = &g.pairs[j];
                let mut v = vec![*a, *b];
                v.extend(a_extra.iter());
                v.extend(g.birth_extra[*b].iter());
                v
            }
        }
    };
    let mut first = vec![NONE; nv];
    let mut last = vec![NONE; nv];
    for (pos, &e) in schedule.iter().enumerate() {
        for v in event_vars(e) {
            first[v] = first[v].min(pos);
            last[v] = if last[v] == NONE { pos } else { last[v].max(pos) };
        }
    }
    // A floating birth uses its extra variables.
    for _ in 0..nv {
        let mut changed = false;
        for u in 0..nv {
            if !floating(u) || first[u] == NONE {
                continue;
            }
            for e in g.birth_extra[u].iter() {
                if first[e] > first[u] {
                    first[e] = first[u];
                    changed = true;
                }
                if last[e] == NONE || last[e] < first[u] {
                    last[e] = first[u];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut at_end = vec![false; nv];
    for (_, f) in &g.final_map {
        for v in f.vars.iter() {
            at_end[v] = true;
        }
    }

    let mut em = Emitter {
        g,
        phys,
        alive: is_start.clone(),
        gone: vec![false; nv],
        out: g.leading.clone(),
    };
    let lead_meas = g.leading.iter().filter(|x| x.is_measurement()).count();
    let mut measured = lead_meas;

    // Bring the start wires to one variable each.
    let rows: Vec<Parity> = g
        .start_wires
        .iter()
        .map(|&q| {
            let mut r = g.birth_extra[q].clone();
            r.flip(q);
            r
        })
        .collect();
    for (t, c) in reduce_to_identity(rows, &g.start_wires)? {
        em.out.push(Gate::Cnot(g.start_wires[c], g.start_wires[t]));
    }

    let births_at = |em: &mut Emitter, due: &dyn Fn(usize) -> bool| -> Result<(), CoreError> {
        let mut todo: Vec<usize> = (0..nv).filter(|&v| due(v) && !em.alive[v] && !em.gone[v]).collect();
        while !todo.is_empty() {
            let ready = todo
                .iter()
                .position(|&v| g.birth_extra[v].iter().all(|e| em.alive[e]))
                .ok_or_else(|| invalid("a variable is born before the variables it depends on"))?;
            let v = todo.remove(ready);
            em.birth(v)?;
        }
        Ok(())
    };

    for (pos, &e) in schedule.iter().enumerate() {
        let own_b = match e {
            Event::Pair(j) => Some(g.pairs[j].b),
            _ => None,
        };
        births_at(&mut em, &|v| floating(v) && first[v] == pos && Some(v) != own_b)?;
        match e {
            Event::Gadget(i) => {
                let vars: Vec<usize> = g.gadgets[i].parity.iter().collect();
                em.need(vars.iter().copied())?;
                let pivot = em.phys[vars[0]];
                for &v in &vars[1..] {
                    em.out.push(Gate::Cnot(em.phys[v], pivot));
                }
                if let Some(r) = Gate::z_rotation(pivot, g.gadgets[i].angle.clone()) {
                    em.out.push(r);
                }
                for &v in vars[1..].iter().rev() {
                    em.out.push(Gate::Cnot(em.phys[v], pivot));
                }
            }
            Event::Pair(j) if plain[j] => {
                let HPair { a, b, a_extra } = &g.pairs[j];
                let (a, b) = (*a, *b);
                em.need([a])?;
                if first[b] != pos || last[a] != pos || at_end[a] {
                    return Err(invalid("a Hadamard is placed inside the lifetime of its variables"));
                }
                em.ladder(a_extra, a)?;
                em.out.push(Gate::H(em.phys[a]));
                em.alive[a] = false;
                em.gone[a] = true;
                em.ladder(&g.birth_extra[b], b)?;
                em.alive[b] = true;
            }
            Event::Pair(j) => {
                let HPair { a, b, a_extra } = &g.pairs[j];
                let (a, b) = (*a, *b);
                em.need([a])?;
                let fresh = !em.alive[b];
                if fresh {
                    em.out.push(Gate::PrepPlus(em.phys[b]));
                    em.alive[b] = true;
                } else {
                    em.ladder(&g.birth_extra[b], b)?;
                }
                em.ladder(a_extra, a)?;
                em.out.push(Gate::Cz(em.phys[a], em.phys[b]));
                if fresh && last[a] == pos && !at_end[a] {
                    em.out.push(Gate::MeasX(em.phys[a]));
                    em.out.push(Gate::CtrlX {
                        outcome: measured,
                        target: em.phys[b],
                    });
                    measured += 1;
                    em.alive[a] = false;
                    em.gone[a] = true;
                } else {
                    em.ladder(a_extra, a)?;
                }
                em.ladder(&g.birth_extra[b], b)?;
            }
        }
        for v in event_vars(e) {
            if kept_a[v] && em.alive[v] && last[v] == pos && !at_end[v] {
                em.out.push(Gate::MeasX(em.phys[v]));
                measured += 1;
                em.alive[v] = false;
                em.gone[v] = true;
            }
        }
    }
    // Variables only needed by the output map.
    births_at(&mut em, &|v| floating(v) && at_end[v] && first[v] == NONE)?;
    if (0..nv).any(|v| at_end[v] && !em.alive[v]) {
        return Err(invalid("the output map needs a variable that is no longer live"));
    }
    if let Some(v) = (0..nv).find(|&v| em.alive[v] && !at_end[v] && !kept_a[v]) {
        return Err(invalid(&alloc::format!("variable {v} is live at the end but unused")));
    }
    // Kept a's still live were used by the output map; otherwise they were measured.

    // Output map by CNOT synthesis.
    let live: Vec<usize> = (0..nv).filter(|&v| em.alive[v]).collect();
    let end_a: Vec<usize> = live.iter().copied().filter(|&v| kept_a[v]).collect();
    let (mut linear, constant): (Vec<_>, Vec<_>) =
        g.final_map.iter().partition(|(_, f)| !f.vars.is_empty());
    if linear.len() + end_a.len() != live.len() {
        return Err(invalid("output map does not match the live variables"));
    }
    if !end_a.is_empty() {
        return Err(invalid("the output map needs a measured variable"));
    }
    linear.sort_by_key(|(w, _)| *w);
    let mut row_of: Vec<Option<Parity>> = vec![None; live.len()];
    let mut slot_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pending = Vec::new();
    for (w, f) in &linear {
        match live.iter().position(|&v| em.phys[v] == *w) {
            Some(s) if row_of[s].is_none() => {
                row_of[s] = Some(f.vars.clone());
                slot_of.insert(*w, s);
            }
            _ => pending.push((*w, f)),
        }
    }
    for (w, f) in pending {
        let s = row_of.iter().position(|r| r.is_none()).unwrap();
        row_of[s] = Some(f.vars.clone());
        slot_of.insert(w, s);
    }
    let rows: Vec<Parity> = row_of.into_iter().map(Option::unwrap).collect();
    let ops = reduce_to_identity(rows, &live)?;
    for &(t, c) in ops.iter().rev() {
        em.out.push(Gate::Cnot(em.phys[live[c]], em.phys[live[t]]));
    }
    let mut wire_map: BTreeMap<usize, usize> =
        slot_of.into_iter().map(|(w, s)| (w, em.phys[live[s]])).collect();
    for (w, f) in &linear {
        if f.constant {
            em.out.push(Gate::X(wire_map[w]));
        }
    }
    let mut next_free = nv.max(g.num_wires);
    for (w, f) in constant {
        em.out.push(Gate::PrepZero(next_free));
        if f.constant {
            em.out.push(Gate::X(next_free));
        }
        wire_map.insert(*w, next_free);
        next_free += 1;
    }

    let middle_meas = g.pairs.len();
    for gate in &g.trailing {
        let mut gate = gate.clone();
        if let Gate::CtrlX { outcome, .. } | Gate::CtrlZ { outcome, .. } = &mut gate {
            if *outcome >= lead_meas {
                if *outcome < lead_meas + middle_meas {
                    return Err(invalid("trailing correction refers to a gadget measurement"));
                }
                *outcome = *outcome - lead_meas - middle_meas + measured;
            }
        }
        for q in gate.qubits() {
            wire_map.entry(q).or_insert_with(|| {
                next_free += 1;
                next_free - 1
            });
        }
        if gate.is_measurement() {
            measured += 1;
        }
        em.out.push(gate.map_qubits(|q| wire_map[&q]));
    }
    let outputs: Vec<usize> = g
        .outputs
        .iter()
        .map(|w| wire_map.get(w).copied().unwrap_or(*w))
        .collect();

    // Compact wire indices.
    let mut used: Vec<usize> = em.out.iter().flat_map(|x| x.qubits()).collect();
    used.extend(g.inputs.iter().chain(&outputs));
    used.sort_unstable();
    used.dedup();
    let index = |q: usize| used.binary_search(&q).unwrap();
    let out = Circuit {
        num_qubits: used.len(),
        gates: em.out.iter().map(|x| x.map_qubits(index)).collect(),
        inputs: g.inputs.iter().map(|&q| index(q)).collect(),
        outputs: outputs.iter().map(|&q| index(q)).collect(),
    };
    out.validate()?;
    Ok(out)
}

/// Writes the gadget form back out in source order with every ancilla kept.
pub fn replay(g: &GadgetizedCircuit) -> Result<Circuit, CoreError> {
    emit(g, &g.event_order, &vec![false; g.pairs.len()])
}
