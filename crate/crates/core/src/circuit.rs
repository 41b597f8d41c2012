//! CNOT + Hadamard circuits acting on sign-free stabilizer tableaux.
//!
//! Conjugating a generator set by a gate is a column operation on its binary
//! symplectic matrix:
//!
//! * `CX(c, t)`: X column `t` += X column `c`; Z column `c` += Z column `t`.
//! * `H(q)`: swap X column `q` with Z column `q`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Cx { control: usize, target: usize },
    H(usize),
}

impl Gate {
    pub fn cx(control: usize, target: usize) -> Self {
        Gate::Cx { control, target }
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Gate::Cx { control, target } => (control, Some(target)),
            Gate::H(q) => (q, None),
        };
        std::iter::once(a).chain(b)
    }

    fn check(&self, qubits: usize) -> Result<()> {
        let bad = |reason: String| Error::InvalidGate {
            gate: self.to_string(),
            reason,
        };
        if let Some(q) = self.qubits().find(|&q| q >= qubits) {
            return Err(bad(format!("qubit {q} out of range for {qubits} qubits")));
        }
        if let Gate::Cx { control, target } = *self {
            if control == target {
                return Err(bad("control equals target".into()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cx { control, target } => write!(f, "CX {control} {target}"),
            Gate::H(q) => write!(f, "H {q}"),
        }
    }
}

/// Gates in execution order (first gate acts first).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliffordCircuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl CliffordCircuit {
    pub fn new(qubits: usize) -> Self {
        Self {
            qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.check(qubits)?;
        }
        Ok(Self { qubits, gates })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn cx_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cx { .. })).count()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.check(self.qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Expands `CNOT(control, {targets})` into CX gates in ascending target order.
    pub fn push_fanout(&mut self, control: usize, targets: &[usize]) -> Result<()> {
        let mut ts = targets.to_vec();
        ts.sort_unstable();
        for t in ts {
            self.push(Gate::cx(control, t))?;
        }
        Ok(())
    }

    /// Appends `other` (which must act on the same number of qubits).
    pub fn extend(&mut self, other: &CliffordCircuit) {
        assert_eq!(self.qubits, other.qubits, "qubit count mismatch");
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn concat(parts: &[&CliffordCircuit]) -> CliffordCircuit {
        let qubits = parts.first().map_or(0, |c| c.qubits);
        let mut out = CliffordCircuit::new(qubits);
        for p in parts {
            out.extend(p);
        }
        out
    }

    /// Inverse circuit. CX and H are self-inverse, so only the order flips.
    pub fn dagger(&self) -> CliffordCircuit {
        CliffordCircuit {
            qubits: self.qubits,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }

    /// Renames qubit `q` to `map[q]`, over `qubits` wires.
    pub fn relabel(&self, map: &[usize], qubits: usize) -> Result<CliffordCircuit> {
        let gates = self
            .gates
            .iter()
            .map(|g| match *g {
                Gate::Cx { control, target } => Gate::cx(map[control], map[target]),
                Gate::H(q) => Gate::H(map[q]),
            })
            .collect();
        CliffordCircuit::from_gates(qubits, gates)
    }

    /// Fan-out groups: maximal runs of consecutive CX gates sharing a control,
    /// as `(control, targets)`. Hadamards split runs and are skipped.
    pub fn fanouts(&self) -> Vec<(usize, Vec<usize>)> {
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut open = false;
        for g in &self.gates {
            match *g {
                Gate::Cx { control, target } => match out.last_mut() {
                    Some((c, ts)) if open && *c == control => ts.push(target),
                    _ => {
                        out.push((control, vec![target]));
                        open = true;
                    }
                },
                Gate::H(_) => open = false,
            }
        }
        out
    }

    /// Text form: `QUBITS n` then one gate per line.
    pub fn serialize(&self) -> String {
        let mut s = format!("QUBITS {}\n", self.qubits);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<CliffordCircuit> {
        let mut qubits = None;
        let mut gates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let col = raw.len() - raw.trim_start().len() + 1;
            let num = |k: usize| -> Result<usize> {
                toks.get(k)
                    .ok_or_else(|| Error::parse(ln, col, format!("'{}' is missing an operand", toks[0])))?
                    .parse()
                    .map_err(|_| Error::parse(ln, col, format!("bad qubit index '{}'", toks[k])))
            };
            let arity = |n: usize| -> Result<()> {
                if toks.len() == n + 1 {
                    Ok(())
                } else {
                    Err(Error::parse(ln, col, format!("'{}' takes {n} operand(s)", toks[0])))
                }
            };
            match toks[0] {
                "QUBITS" => {
                    if qubits.is_some() {
                        return Err(Error::parse(ln, col, "duplicate QUBITS header"));
                    }
                    arity(1)?;
                    qubits = Some(num(1)?);
                }
                "CX" => {
                    arity(2)?;
                    gates.push((ln, Gate::cx(num(1)?, num(2)?)));
                }
                "H" => {
                    arity(1)?;
                    gates.push((ln, Gate::H(num(1)?)));
                }
                other => return Err(Error::parse(ln, col, format!("unknown gate '{other}'"))),
            }
            if qubits.is_none() {
                return Err(Error::parse(ln, col, "QUBITS header must come first"));
            }
        }
        let qubits = qubits.ok_or_else(|| Error::parse(1, 1, "missing QUBITS header"))?;
        let mut c = CliffordCircuit::new(qubits);
        for (ln, g) in gates {
            c.push(g).map_err(|e| Error::parse(ln, 1, e.to_string()))?;
        }
        Ok(c)
    }
}

/// Binary symplectic matrix `[xpart | zpart]` of a generator list. Signs are not tracked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    xpart: BitMatrix,
    zpart: BitMatrix,
}

impl StabilizerTableau {
    pub fn new(xpart: BitMatrix, zpart: BitMatrix) -> Result<Self> {
        if xpart.shape() != zpart.shape() {
            return Err(Error::DimensionMismatch {
                what: "tableau",
                left: xpart.shape(),
                right: zpart.shape(),
            });
        }
        Ok(Self { xpart, zpart })
    }

    /// `[hx | 0]` over `[0 | hz]`.
    pub fn from_css(hx: &BitMatrix, hz: &BitMatrix) -> Self {
        let n = hx.cols();
        let xpart = hx.vstack(&BitMatrix::zeros(hz.rows(), n));
        let zpart = BitMatrix::zeros(hx.rows(), n).vstack(hz);
        Self { xpart, zpart }
    }

    pub fn xpart(&self) -> &BitMatrix {
        &self.xpart
    }

    pub fn zpart(&self) -> &BitMatrix {
        &self.zpart
    }

    pub fn rows(&self) -> usize {
        self.xpart.rows()
    }

    pub fn qubits(&self) -> usize {
        self.xpart.cols()
    }

    /// `[xpart | zpart]`.
    pub fn symplectic(&self) -> BitMatrix {
        self.xpart.hstack(&self.zpart)
    }

    pub fn rank(&self) -> usize {
        self.symplectic().rank()
    }

    /// In-place conjugation by one gate.
    pub fn apply_gate(&mut self, g: Gate) {
        match g {
            Gate::Cx { control, target } => {
                self.xpart.add_col(control, target);
                self.zpart.add_col(target, control);
            }
            Gate::H(q) => {
                for r in 0..self.rows() {
                    let (x, z) = (self.xpart.get(r, q), self.zpart.get(r, q));
                    self.xpart.set(r, q, z);
                    self.zpart.set(r, q, x);
                }
            }
        }
    }

    pub fn conjugate(&self, g: Gate) -> Self {
        let mut t = self.clone();
        t.apply_gate(g);
        t
    }

    pub fn apply_circuit_mut(&mut self, c: &CliffordCircuit) {
        assert_eq!(c.qubits(), self.qubits(), "circuit/tableau width mismatch");
        for &g in c.gates() {
            self.apply_gate(g);
        }
    }

    pub fn apply_circuit(&self, c: &CliffordCircuit) -> Self {
        let mut t = self.clone();
        t.apply_circuit_mut(c);
        t
    }

    /// Row pairs `(i, j)` whose symplectic product is 1.
    pub fn anticommuting_pairs(&self) -> Vec<(usize, usize)> {
        let gram = self.xpart.mul(&self.zpart.transpose());
        let mut out = Vec::new();
        for i in 0..self.rows() {
            for j in i + 1..self.rows() {
                if gram.get(i, j) != gram.get(j, i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_commuting(&self) -> bool {
        self.anticommuting_pairs().is_empty()
    }

    pub fn row_space_equal(&self, other: &StabilizerTableau) -> bool {
        gf2::row_space_equal(&self.symplectic(), &other.symplectic()).unwrap_or(false)
    }

    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Self {
            xpart: self.xpart.permute_columns(perm),
            zpart: self.zpart.permute_columns(perm),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self {
            xpart: self.xpart.select_rows(rows),
            zpart: self.zpart.select_rows(rows),
        }
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows() {
            for c in 0..self.qubits() {
                write!(f, "{}", u8::from(self.xpart.get(r, c)))?;
            }
            write!(f, " | ")?;
            for c in 0..self.qubits() {
                write!(f, "{}", u8::from(self.zpart.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
