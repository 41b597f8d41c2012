//! Block-transversal encoder synthesis.
//!
//! The transmitter data columns are cut into `g` contiguous blocks. Each block
//! gets `rho = max(rho1, rho2)` extra columns, one share of a `g`-party GHZ
//! resource per stabilizer, and every CNOT stays inside one block.
//!
//! Column layout (0-based): block `j`'s data columns, then its `rho` entangled
//! columns, for `j = 0..g`; the `c` receiver columns come last.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::circuit::{CliffordCircuit, Gate, StabilizerTableau};
use crate::code::{min_distance, ColumnLayout, ColumnRole, EaCssCode};
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};

/// Contiguous cover of the data columns `0..n_data`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    blocks: Vec<Range<usize>>,
}

impl BlockPartition {
    /// Near-equal sizes; the first `n_data % g` blocks take one extra column.
    pub fn plan(n_data: usize, g: usize) -> Result<Self> {
        if g == 0 || g > n_data {
            return Err(Error::BadPartition(format!("need 1 <= g <= {n_data} blocks, got {g}")));
        }
        let (base, extra) = (n_data / g, n_data % g);
        let mut blocks = Vec::with_capacity(g);
        let mut start = 0;
        for j in 0..g {
            let len = base + usize::from(j < extra);
            blocks.push(start..start + len);
            start += len;
        }
        Ok(Self { blocks })
    }

    /// Blocks ending after each listed (1-based) data qubit, plus a final block.
    pub fn from_boundaries(n_data: usize, cuts: &[usize]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(cuts.len() + 1);
        let mut start = 0;
        for &cut in cuts {
            if cut <= start || cut >= n_data {
                return Err(Error::BadPartition(format!(
                    "boundary {cut} must be increasing and inside 1..{n_data}"
                )));
            }
            blocks.push(start..cut);
            start = cut;
        }
        blocks.push(start..n_data);
        Self::from_ranges(n_data, blocks)
    }

    pub fn from_ranges(n_data: usize, blocks: Vec<Range<usize>>) -> Result<Self> {
        let mut next = 0;
        for b in &blocks {
            if b.start != next || b.is_empty() {
                return Err(Error::BadPartition(format!(
                    "blocks must be nonempty and contiguous; {b:?} does not start at {next}"
                )));
            }
            next = b.end;
        }
        if next != n_data || blocks.is_empty() {
            return Err(Error::BadPartition(format!(
                "blocks cover 0..{next}, expected 0..{n_data}"
            )));
        }
        Ok(Self { blocks })
    }

    pub fn g(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn n_data(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.end)
    }
}

pub fn plan_blocks(n_data: usize, g: usize) -> Result<BlockPartition> {
    BlockPartition::plan(n_data, g)
}

/// Column bookkeeping for a block-transversal encoder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FtLayout {
    pub partition: BlockPartition,
    pub rho1: usize,
    pub rho2: usize,
    pub ebits: usize,
    /// Data columns used as extra generators in a Z stage (or as repair controls);
    /// their final contents are left as synthesized.
    pub consumed: Vec<usize>,
    pub roles: ColumnLayout,
}

impl FtLayout {
    pub fn rho(&self) -> usize {
        self.rho1.max(self.rho2)
    }

    pub fn g(&self) -> usize {
        self.partition.g()
    }

    pub fn n_data(&self) -> usize {
        self.partition.n_data()
    }

    /// Transmitter columns: data plus entangled.
    pub fn transmitters(&self) -> usize {
        self.n_data() + self.g() * self.rho()
    }

    pub fn total(&self) -> usize {
        self.transmitters() + self.ebits
    }

    fn block_of_data(&self, d: usize) -> usize {
        self.partition
            .blocks()
            .iter()
            .position(|b| b.contains(&d))
            .expect("data index in range")
    }

    /// Column of data qubit `d`.
    pub fn data_col(&self, d: usize) -> usize {
        d + self.rho() * self.block_of_data(d)
    }

    pub fn block_data_cols(&self, j: usize) -> Vec<usize> {
        self.partition.blocks()[j].clone().map(|d| self.data_col(d)).collect()
    }

    /// Resource column for stabilizer `i` in block `j`.
    pub fn entangled_col(&self, i: usize, j: usize) -> usize {
        self.partition.blocks()[j].end + self.rho() * j + i
    }

    pub fn block_entangled_cols(&self, j: usize) -> Vec<usize> {
        (0..self.rho()).map(|i| self.entangled_col(i, j)).collect()
    }

    /// Data and entangled columns of block `j`.
    pub fn block_cols(&self, j: usize) -> Vec<usize> {
        let mut v = self.block_data_cols(j);
        v.extend(self.block_entangled_cols(j));
        v
    }

    pub fn receiver_cols(&self) -> Vec<usize> {
        (self.transmitters()..self.total()).collect()
    }

    /// Columns that take no injected faults (entangled and receiver).
    pub fn protected_cols(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.g()).flat_map(|j| self.block_entangled_cols(j)).collect();
        v.extend(self.receiver_cols());
        v
    }

    /// Block owning column `col`, or `None` for receivers.
    pub fn block_of_col(&self, col: usize) -> Option<usize> {
        (0..self.g()).find(|&j| {
            let b = &self.partition.blocks()[j];
            let first = b.start + self.rho() * j;
            (first..b.end + self.rho() * (j + 1)).contains(&col)
        })
    }

    /// Places an `rows x (n_data + ebits)` matrix on the data and receiver columns.
    pub fn embed(&self, m: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(m.rows(), self.total());
        let nd = self.n_data();
        for c in 0..m.cols() {
            let to = if c < nd {
                self.data_col(c)
            } else {
                self.transmitters() + c - nd
            };
            for r in 0..m.rows() {
                if m.get(r, c) {
                    out.set(r, to, true);
                }
            }
        }
        out
    }

    /// Data columns whose final contents must match the target code.
    pub fn realized_cols(&self) -> Vec<usize> {
        (0..self.n_data())
            .map(|d| self.data_col(d))
            .filter(|c| !self.consumed.contains(c))
            .collect()
    }
}

/// Before-encoding tableau and layout.
///
/// Data qubits `0..rho1+rho2` alternate X ancilla (`|+>`) and Z ancilla (`|0>`)
/// while both kinds remain; the last `c` data qubits are the transmitter halves
/// of the preshared pairs; the rest carry information. X row `i` also holds X
/// on every entangled column of stabilizer `i`; Z row `i` holds Z on the
/// entangled columns of stabilizer `i` in every block, except for odd `g`,
/// where the block holding the row's own ancilla is left out so the seed has
/// even weight.
pub fn initial_tableau_ft(ea: &EaCssCode, part: &BlockPartition) -> Result<(StabilizerTableau, FtLayout)> {
    let (rho1, rho2, c, nd) = (ea.rho1(), ea.rho2(), ea.c(), ea.n());
    if part.n_data() != nd {
        return Err(Error::BadPartition(format!(
            "partition covers {} data columns, code has {nd}",
            part.n_data()
        )));
    }
    if rho1 + rho2 + c > nd {
        return Err(Error::InvalidArgument(format!(
            "{nd} data qubits cannot hold {} ancillas and {c} pair halves",
            rho1 + rho2
        )));
    }

    let mut x_anc = Vec::with_capacity(rho1);
    let mut z_anc = Vec::with_capacity(rho2);
    for d in 0..rho1 + rho2 {
        let take_x = z_anc.len() >= rho2 || (x_anc.len() < rho1 && x_anc.len() <= z_anc.len());
        if take_x {
            x_anc.push(d);
        } else {
            z_anc.push(d);
        }
    }

    let rho = rho1.max(rho2);
    let g = part.g();
    let mut layout = FtLayout {
        partition: part.clone(),
        rho1,
        rho2,
        ebits: c,
        consumed: Vec::new(),
        roles: ColumnLayout::new(Vec::new())?,
    };
    let mut roles = vec![ColumnRole::Info; layout.total()];
    for &d in &x_anc {
        roles[layout.data_col(d)] = ColumnRole::AncillaPlus;
    }
    for &d in &z_anc {
        roles[layout.data_col(d)] = ColumnRole::AncillaZero;
    }
    let tx = |e: usize| layout.data_col(nd - c + e);
    let rx = |e: usize| layout.transmitters() + e;
    for e in 0..c {
        roles[tx(e)] = ColumnRole::EpairTx { pair: e };
        roles[rx(e)] = ColumnRole::EpairRx { pair: e };
    }
    for j in 0..g {
        for i in 0..rho {
            roles[layout.entangled_col(i, j)] = ColumnRole::Entangled {
                stabilizer: i,
                block: j,
            };
        }
    }

    // Pair content: receiver columns of the extended checks.
    let rx_x = ea.code().hx().select_columns(&ea.receiver_cols());
    let rx_z = ea.code().hz().select_columns(&ea.receiver_cols());

    let n = layout.total();
    let mut xp = BitMatrix::zeros(rho1 + rho2, n);
    let mut zp = BitMatrix::zeros(rho1 + rho2, n);
    for (i, &d) in x_anc.iter().enumerate() {
        xp.set(i, layout.data_col(d), true);
        for e in (0..c).filter(|&e| rx_x.get(i, e)) {
            xp.set(i, tx(e), true);
            xp.set(i, rx(e), true);
        }
        for j in 0..g {
            xp.set(i, layout.entangled_col(i, j), true);
        }
    }
    for (i, &d) in z_anc.iter().enumerate() {
        let r = rho1 + i;
        zp.set(r, layout.data_col(d), true);
        for e in (0..c).filter(|&e| rx_z.get(i, e)) {
            zp.set(r, tx(e), true);
            zp.set(r, rx(e), true);
        }
        let home = layout.block_of_data(d);
        for j in (0..g).filter(|&j| g.is_multiple_of(2) || j != home) {
            zp.set(r, layout.entangled_col(i, j), true);
        }
    }
    layout.roles = ColumnLayout::new(roles)?;
    Ok((StabilizerTableau::new(xp, zp)?, layout))
}

/// Target checks placed on the FT columns (zero on entangled columns).
pub fn target_checks(ea: &EaCssCode, layout: &FtLayout) -> (BitMatrix, BitMatrix) {
    (layout.embed(ea.code().hx()), layout.embed(ea.code().hz()))
}

fn column_over(m: &BitMatrix, rows: &[usize], col: usize) -> Vec<bool> {
    rows.iter().map(|&r| m.get(r, col)).collect()
}

/// One `U_j` per block: `CNOT(entangled(i, j), targets)` with targets the data
/// columns where X row `i` still differs from the target code.
pub fn synth_ft_x(t: &StabilizerTableau, layout: &FtLayout, ea: &EaCssCode) -> Vec<CliffordCircuit> {
    let (hx, _) = target_checks(ea, layout);
    (0..layout.g())
        .map(|j| {
            let mut c = CliffordCircuit::new(layout.total());
            for i in 0..layout.rho1 {
                let targets: Vec<usize> = layout
                    .block_data_cols(j)
                    .into_iter()
                    .filter(|&q| hx.get(i, q) != t.xpart().get(i, q))
                    .collect();
                c.push_fanout(layout.entangled_col(i, j), &targets)
                    .expect("layout columns are in range");
            }
            c
        })
        .collect()
}

/// The linear system solved for one block's Z stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSystem {
    pub block: usize,
    /// Augmentation columns (descending) followed by the block's entangled columns.
    pub generators: Vec<usize>,
    /// Data columns being corrected, ascending.
    pub corrected: Vec<usize>,
    /// Current Z columns of `generators` over the Z rows.
    pub lhs: BitMatrix,
    /// Target plus current Z columns of `corrected`.
    pub rhs: BitMatrix,
    pub solution: BitMatrix,
}

/// Z stage of block `j`: solve, emit `O_j`, apply it to `t`.
fn z_stage(
    t: &mut StabilizerTableau,
    layout: &FtLayout,
    hz: &BitMatrix,
    j: usize,
) -> Result<(CliffordCircuit, ZSystem)> {
    let zrows: Vec<usize> = (layout.rho1..layout.rho1 + layout.rho2).collect();
    let ents = layout.block_entangled_cols(j);
    let data = layout.block_data_cols(j);

    let build = |aug: &[usize], t: &StabilizerTableau| {
        let generators: Vec<usize> = aug.iter().chain(&ents).copied().collect();
        let corrected: Vec<usize> = data.iter().copied().filter(|q| !aug.contains(q)).collect();
        let gen_cols: Vec<Vec<bool>> = generators.iter().map(|&c| column_over(t.zpart(), &zrows, c)).collect();
        let rhs_cols: Vec<Vec<bool>> = corrected
            .iter()
            .map(|&q| {
                (0..zrows.len())
                    .map(|r| hz.get(r, q) ^ t.zpart().get(zrows[r], q))
                    .collect()
            })
            .collect();
        (
            generators,
            corrected,
            BitMatrix::from_columns(zrows.len(), &gen_cols),
            BitMatrix::from_columns(zrows.len(), &rhs_cols),
        )
    };

    let mut aug: Vec<usize> = Vec::new();
    let mut candidates = data.iter().rev();
    let (generators, corrected, lhs, rhs, solution) = loop {
        let (generators, corrected, lhs, rhs) = build(&aug, t);
        match gf2::solve(&lhs, &rhs) {
            Ok(x) => break (generators, corrected, lhs, rhs, x),
            Err(Error::NoSolution { .. }) => {}
            Err(e) => return Err(e),
        }
        let rank = lhs.rank();
        let next = candidates.find(|&&q| {
            let col = BitMatrix::from_columns(zrows.len(), &[column_over(t.zpart(), &zrows, q)]);
            lhs.hstack(&col).rank() > rank
        });
        match next {
            Some(&q) => aug.push(q),
            None => return Err(Error::Unsolvable { block: j }),
        }
    };

    let mut circuit = CliffordCircuit::new(layout.total());
    for (k, &q) in corrected.iter().enumerate() {
        let targets: Vec<usize> = (0..generators.len())
            .filter(|&g| solution.get(g, k))
            .map(|g| generators[g])
            .collect();
        circuit.push_fanout(q, &targets)?;
    }
    t.apply_circuit_mut(&circuit);
    Ok((
        circuit,
        ZSystem {
            block: j,
            generators,
            corrected,
            lhs,
            rhs,
            solution,
        },
    ))
}

/// Gives every entangled column of block `j` with an all-zero X column some X
/// support. Controls come from the block's other entangled columns or its
/// consumed data columns (lowest index first), falling back to a data column,
/// which then joins `consumed`.
fn repair_stage(
    t: &mut StabilizerTableau,
    layout: &FtLayout,
    consumed: &mut Vec<usize>,
    j: usize,
) -> Result<CliffordCircuit> {
    let mut circuit = CliffordCircuit::new(layout.total());
    let ents = layout.block_entangled_cols(j);
    let data = layout.block_data_cols(j);
    for &e in &ents {
        if !t.xpart().column_is_zero(e) {
            continue;
        }
        let live = |c: &usize| *c != e && !t.xpart().column_is_zero(*c);
        let free = ents
            .iter()
            .chain(data.iter().filter(|q| consumed.contains(q)))
            .copied()
            .filter(live)
            .min();
        let control = match free {
            Some(c) => c,
            None => {
                let q = data.iter().copied().find(live).ok_or(Error::Unsolvable { block: j })?;
                consumed.push(q);
                q
            }
        };
        let g = Gate::cx(control, e);
        circuit.push(g)?;
        t.apply_gate(g);
    }
    Ok(circuit)
}

/// Z stages and repairs for every block, applied to `t` in ascending block order.
#[derive(Debug, Clone)]
pub struct ZStage {
    pub o: Vec<CliffordCircuit>,
    pub r: Vec<CliffordCircuit>,
    pub systems: Vec<ZSystem>,
    pub consumed: Vec<usize>,
}

pub fn synth_ft_z(t: &StabilizerTableau, layout: &FtLayout, ea: &EaCssCode) -> Result<ZStage> {
    let mut work = t.clone();
    run_z(&mut work, layout, ea, |_, _| {})
}

fn run_z(
    t: &mut StabilizerTableau,
    layout: &FtLayout,
    ea: &EaCssCode,
    mut snap: impl FnMut(String, &StabilizerTableau),
) -> Result<ZStage> {
    let (_, hz) = target_checks(ea, layout);
    let mut out = ZStage {
        o: Vec::new(),
        r: Vec::new(),
        systems: Vec::new(),
        consumed: Vec::new(),
    };
    for j in 0..layout.g() {
        let (o, sys) = z_stage(t, layout, &hz, j)?;
        snap(format!("O{}", j + 1), t);
        out.consumed.extend(
            sys.generators
                .iter()
                .filter(|c| !layout.block_entangled_cols(j).contains(c)),
        );
        let r = repair_stage(t, layout, &mut out.consumed, j)?;
        snap(format!("R{}", j + 1), t);
        out.o.push(o);
        out.r.push(r);
        out.systems.push(sys);
    }
    out.consumed.sort_unstable();
    Ok(out)
}

/// Stage circuits, tableau snapshots, and fan-out weights of one synthesis.
#[derive(Debug, Clone)]
pub struct FtSynthesisTrace {
    pub u: Vec<CliffordCircuit>,
    pub o: Vec<CliffordCircuit>,
    pub r: Vec<CliffordCircuit>,
    pub systems: Vec<ZSystem>,
    /// `("initial" | "U1".. | "O1" | "R1" ..., tableau after that stage)`.
    pub snapshots: Vec<(String, StabilizerTableau)>,
    /// `weights_x[j][i]`: fan-out size of `U_j` for stabilizer `i`.
    pub weights_x: Vec<Vec<usize>>,
    /// `weights_z[j][i]`: weight of Z row `i` of the target plus the initial
    /// tableau, on block `j`'s data columns.
    pub weights_z: Vec<Vec<usize>>,
    pub warnings: Vec<String>,
}

impl FtSynthesisTrace {
    pub fn snapshot(&self, stage: &str) -> Option<&StabilizerTableau> {
        self.snapshots.iter().find(|(s, _)| s == stage).map(|(_, t)| t)
    }
}

#[derive(Debug, Clone)]
pub struct FtEncoder {
    pub encoder: CliffordCircuit,
    pub layout: FtLayout,
    pub trace: FtSynthesisTrace,
    pub initial: StabilizerTableau,
    pub final_tableau: StabilizerTableau,
}

impl FtEncoder {
    /// `(n, k)` of the block code, counting transmitter columns only.
    pub fn parameters(&self) -> (usize, usize) {
        let n = self.layout.transmitters();
        let k = self.layout.total() - self.final_tableau.xpart().rank() - self.final_tableau.zpart().rank();
        (n, k)
    }

    /// Minimum distance of the final code with errors on transmitter columns.
    pub fn distance(&self) -> Result<Option<usize>> {
        let rows_x: Vec<usize> = (0..self.layout.rho1).collect();
        let rows_z: Vec<usize> = (self.layout.rho1..self.layout.rho1 + self.layout.rho2).collect();
        let hx = self.final_tableau.xpart().select_rows(&rows_x);
        let hz = self.final_tableau.zpart().select_rows(&rows_z);
        let support: Vec<usize> = (0..self.layout.transmitters()).collect();
        min_distance(&hx, &hz, &support)
    }
}

/// Encoder `U_1 .. U_g, O_1, R_1, .., O_g, R_g` in execution order.
pub fn synth_ft(ea: &EaCssCode, part: &BlockPartition) -> Result<FtEncoder> {
    let (initial, mut layout) = initial_tableau_ft(ea, part)?;
    let mut snapshots = vec![("initial".to_string(), initial.clone())];
    let mut warnings = Vec::new();
    if layout.g() % 2 == 1 && layout.rho2 > 0 {
        warnings.push(format!(
            "odd block count {}: each Z row is unseeded in its ancilla's block",
            layout.g()
        ));
    }

    let u = synth_ft_x(&initial, &layout, ea);
    let mut t = initial.clone();
    for (j, uj) in u.iter().enumerate() {
        t.apply_circuit_mut(uj);
        snapshots.push((format!("U{}", j + 1), t.clone()));
    }
    let z = run_z(&mut t, &layout, ea, |s, tab| snapshots.push((s, tab.clone())))?;
    layout.consumed = z.consumed.clone();

    let mut encoder = CliffordCircuit::new(layout.total());
    for uj in &u {
        encoder.extend(uj);
    }
    for (o, r) in z.o.iter().zip(&z.r) {
        encoder.extend(o);
        encoder.extend(r);
    }

    let hz_target = layout.embed(ea.code().hz());
    let weights_x = u
        .iter()
        .map(|uj| {
            let mut w = vec![0; layout.rho1];
            for g in uj.gates() {
                if let Gate::Cx { control, .. } = *g {
                    let j = layout.block_of_col(control).expect("U controls sit in a block");
                    w[control - layout.entangled_col(0, j)] += 1;
                }
            }
            w
        })
        .collect();
    let weights_z = (0..layout.g())
        .map(|j| {
            (0..layout.rho2)
                .map(|i| {
                    layout
                        .block_data_cols(j)
                        .into_iter()
                        .filter(|&q| hz_target.get(i, q) != initial.zpart().get(layout.rho1 + i, q))
                        .count()
                })
                .collect()
        })
        .collect();

    let final_tableau = t;
    let enc = FtEncoder {
        encoder,
        layout,
        trace: FtSynthesisTrace {
            u,
            o: z.o,
            r: z.r,
            systems: z.systems,
            snapshots,
            weights_x,
            weights_z,
            warnings,
        },
        initial,
        final_tableau,
    };
    verify_ft(ea, &enc.layout, &enc.encoder)?;
    Ok(enc)
}

fn fail(criterion: &str, detail: impl Into<String>) -> Error {
    Error::Verification {
        criterion: criterion.into(),
        detail: detail.into(),
    }
}

/// Gates coupling two blocks (or touching a receiver), in circuit order.
pub fn cross_block_gates(circuit: &CliffordCircuit, layout: &FtLayout) -> Vec<Gate> {
    circuit
        .gates()
        .iter()
        .copied()
        .filter(|g| {
            let blocks: Vec<Option<usize>> = g.qubits().map(|q| layout.block_of_col(q)).collect();
            blocks.iter().any(Option::is_none) || blocks.windows(2).any(|w| w[0] != w[1])
        })
        .collect()
}

/// Checks transversality, commutation, rank, X/Z realization on the
/// non-consumed data and receiver columns, and that no entangled column ends
/// with an empty X column. Returns the final tableau.
pub fn verify_ft(ea: &EaCssCode, layout: &FtLayout, encoder: &CliffordCircuit) -> Result<StabilizerTableau> {
    if encoder.qubits() != layout.total() {
        return Err(fail(
            "width",
            format!("circuit has {} qubits, layout has {}", encoder.qubits(), layout.total()),
        ));
    }
    if let Some(g) = cross_block_gates(encoder, layout).first() {
        return Err(fail("transversality", format!("gate '{g}' leaves its block")));
    }
    let (initial, _) = initial_tableau_ft(ea, &layout.partition)?;
    let fin = initial.apply_circuit(encoder);
    if let Some((a, b)) = fin.anticommuting_pairs().first() {
        return Err(fail("commutation", format!("rows {a} and {b} anticommute")));
    }
    let want = layout.rho1 + layout.rho2;
    if fin.rank() != want {
        return Err(fail("rank", format!("rank {} != {want}", fin.rank())));
    }
    let (hx, hz) = target_checks(ea, layout);
    let mut cols = layout.realized_cols();
    cols.extend(layout.receiver_cols());
    for &c in &cols {
        for i in 0..layout.rho1 {
            if fin.xpart().get(i, c) != hx.get(i, c) || fin.zpart().get(i, c) {
                return Err(fail("x-realization", format!("X row {i} differs at column {c}")));
            }
        }
        for i in 0..layout.rho2 {
            let r = layout.rho1 + i;
            if fin.zpart().get(r, c) != hz.get(i, c) || fin.xpart().get(r, c) {
                return Err(fail("z-realization", format!("Z row {i} differs at column {c}")));
            }
        }
    }
    for j in 0..layout.g() {
        if let Some(e) = layout
            .block_entangled_cols(j)
            .into_iter()
            .find(|&e| fin.xpart().column_is_zero(e))
        {
            return Err(fail("entangled-support", format!("X column {e} of block {j} is empty")));
        }
    }
    Ok(fin)
}
