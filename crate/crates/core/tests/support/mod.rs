//! Shared fixtures and brute-force oracles. Nothing here calls into the
//! library's linear algebra, tableau or simulation code.

#![allow(dead_code)]

use qef_core::circuit::{CliffordCircuit, Gate};
use qef_core::gf2::BitMatrix;

pub fn bits(rows: &[&str]) -> Vec<Vec<u8>> {
    rows.iter()
        .map(|r| {
            r.bytes()
                .filter(|b| !b.is_ascii_whitespace())
                .map(|b| b - b'0')
                .collect()
        })
        .collect()
}

pub fn to_matrix(rows: &[Vec<u8>]) -> BitMatrix {
    BitMatrix::from_rows(rows)
}

pub fn from_matrix(m: &BitMatrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| u8::from(m.get(r, c))).collect())
        .collect()
}

pub const EXAMPLE_HX: [&str; 3] = ["100010001", "010001100", "001100010"];
pub const EXAMPLE_HZ: [&str; 3] = ["100001010", "010100001", "001010100"];

/// Stage snapshots of the worked example, 16 columns each: `(name, X rows, Z rows)`.
pub const GOLDEN: [(&str, [&str; 3], [&str; 3]); 6] = [
    (
        "initial",
        ["1000001000011001", "0010000100010101", "0000100010010011"],
        ["0100001000011001", "0001000100010101", "0000010010010011"],
    ),
    (
        "U1",
        ["1000101000011001", "0100010100010101", "0011000010010011"],
        ["0100001100011001", "0001000110010101", "0000010110010011"],
    ),
    (
        "U2",
        ["1000101000011001", "0100010101000101", "0011000010100011"],
        ["0100001100011111", "0001000110010011", "0000010110010101"],
    ),
    (
        "O1",
        ["1000110000011001", "0100000001000101", "0011011100100011"],
        ["1000001100011111", "0101000110010011", "0010110110010101"],
    ),
    (
        "R1",
        ["1000110010011001", "0100000001000101", "0011011110100011"],
        ["1000001100011111", "0101011010010011", "0010101010010101"],
    ),
    (
        "O2",
        ["1000110010011101", "0100000001001001", "0011011110101011"],
        ["1000001100101111", "0101011010010011", "0010101011000101"],
    ),
];

/// The worked example's encoder as published (1-based fan-outs, execution order).
pub const REFERENCE_ENCODER: [(usize, &[usize]); 16] = [
    (7, &[5]),
    (8, &[2, 3, 6]),
    (9, &[3, 4, 5]),
    (14, &[10, 12]),
    (15, &[11, 12]),
    (1, &[7]),
    (2, &[6, 8]),
    (3, &[6]),
    (4, &[7, 8, 9]),
    (5, &[6]),
    (6, &[9]),
    (7, &[9]),
    (8, &[9]),
    (10, &[13, 14]),
    (11, &[13]),
    (12, &[14]),
];

/// Gate counts of the stages in [`REFERENCE_ENCODER`]: U1, U2, O1, R1, O2.
pub const REFERENCE_STAGES: [(&str, usize); 5] = [("U1", 7), ("U2", 4), ("O1", 8), ("R1", 3), ("O2", 4)];

pub fn reference_encoder() -> CliffordCircuit {
    let mut c = CliffordCircuit::new(16);
    for (ctrl, ts) in REFERENCE_ENCODER {
        for &t in ts {
            c.push(Gate::cx(ctrl - 1, t - 1)).unwrap();
        }
    }
    c
}

// ---------------------------------------------------------------- GF(2)

pub fn naive_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] == 1 {
                let pivot = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn naive_mul(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(0, |acc, k| acc ^ (row[k] & b[k][c])))
                .collect()
        })
        .collect()
}

pub fn naive_transpose(a: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|c| a.iter().map(|r| r[c]).collect()).collect()
}

pub fn same_row_space(a: &[Vec<u8>], b: &[Vec<u8>]) -> bool {
    let both: Vec<Vec<u8>> = a.iter().chain(b).cloned().collect();
    let r = naive_rank(a);
    r == naive_rank(b) && r == naive_rank(&both)
}

// ---------------------------------------------------------------- Paulis

/// Pauli strings over `I X Y Z`, conjugated letter by letter.
pub fn pauli_rows(x: &[Vec<u8>], z: &[Vec<u8>]) -> Vec<Vec<char>> {
    x.iter()
        .zip(z)
        .map(|(xr, zr)| {
            xr.iter()
                .zip(zr)
                .map(|(&a, &b)| match (a, b) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (1, 1) => 'Y',
                    _ => 'Z',
                })
                .collect()
        })
        .collect()
}

pub fn pauli_to_bits(rows: &[Vec<char>]) -> (Vec<Vec<u8>>, Vec<Vec<u8>>) {
    let x = rows
        .iter()
        .map(|r| r.iter().map(|&p| u8::from(p == 'X' || p == 'Y')).collect())
        .collect();
    let z = rows
        .iter()
        .map(|r| r.iter().map(|&p| u8::from(p == 'Z' || p == 'Y')).collect())
        .collect();
    (x, z)
}

/// Heisenberg-picture image of `(control, target)` letters under CNOT, up to sign.
fn cnot_letters(c: char, t: char) -> (char, char) {
    let has_x = |p: char| p == 'X' || p == 'Y';
    let has_z = |p: char| p == 'Z' || p == 'Y';
    let letter = |x: bool, z: bool| match (x, z) {
        (false, false) => 'I',
        (true, false) => 'X',
        (true, true) => 'Y',
        (false, true) => 'Z',
    };
    let cx = has_x(c);
    let cz = has_z(c) ^ has_z(t);
    let tx = has_x(t) ^ has_x(c);
    let tz = has_z(t);
    (letter(cx, cz), letter(tx, tz))
}

pub fn conjugate_paulis(rows: &mut [Vec<char>], circuit: &CliffordCircuit) {
    for g in circuit.gates() {
        for row in rows.iter_mut() {
            match *g {
                Gate::Cx { control, target } => {
                    let (a, b) = cnot_letters(row[control], row[target]);
                    row[control] = a;
                    row[target] = b;
                }
                Gate::H(q) => {
                    row[q] = match row[q] {
                        'X' => 'Z',
                        'Z' => 'X',
                        p => p,
                    };
                }
            }
        }
    }
}

pub fn paulis_commute(a: &[char], b: &[char]) -> bool {
    let anti = a
        .iter()
        .zip(b)
        .filter(|(&p, &q)| p != 'I' && q != 'I' && p != q)
        .count();
    anti % 2 == 0
}

// ---------------------------------------------------------------- faults

/// Fault sites in execution order: one injection point per (group, qubit),
/// groups being maximal runs of CX gates sharing a control (`per_fanout`) or single CX gates.
#[derive(Debug, Clone)]
pub enum Step {
    Inject(usize),
    Cx(usize, usize),
    H(usize),
}

pub fn fault_steps(c: &CliffordCircuit, protected: &[usize], per_fanout: bool) -> Vec<Step> {
    let gates = c.gates();
    let mut steps = Vec::new();
    let mut i = 0;
    while i < gates.len() {
        match gates[i] {
            Gate::H(q) => {
                steps.push(Step::H(q));
                i += 1;
            }
            Gate::Cx { control, .. } => {
                let mut j = i + 1;
                if per_fanout {
                    while j < gates.len() && matches!(gates[j], Gate::Cx { control: c2, .. } if c2 == control) {
                        j += 1;
                    }
                }
                let mut touched = vec![control];
                for g in &gates[i..j] {
                    if let Gate::Cx { target, .. } = *g {
                        touched.push(target);
                    }
                }
                for q in touched {
                    if !protected.contains(&q) {
                        steps.push(Step::Inject(q));
                    }
                }
                for g in &gates[i..j] {
                    if let Gate::Cx { control, target } = *g {
                        steps.push(Step::Cx(control, target));
                    }
                }
                i = j;
            }
        }
    }
    steps
}

/// Exact propagation-event probability by enumerating all `4^L` fault patterns.
pub fn exact_event_probability(c: &CliffordCircuit, p: f64, protected: &[usize], per_fanout: bool) -> f64 {
    let steps = fault_steps(c, protected, per_fanout);
    let sites = steps.iter().filter(|s| matches!(s, Step::Inject(_))).count();
    assert!(sites <= 10, "too many fault sites for enumeration");
    let n = c.qubits();
    let mut total = 0.0;
    for pattern in 0..4usize.pow(sites as u32) {
        let mut weight = 1.0;
        let mut x = vec![false; n];
        let mut z = vec![false; n];
        let mut hit = vec![false; n];
        let mut k = 0;
        for s in &steps {
            match *s {
                Step::Inject(q) => {
                    let kind = (pattern / 4usize.pow(k)) % 4;
                    k += 1;
                    if kind == 0 {
                        weight *= 1.0 - p;
                    } else {
                        weight *= p / 3.0;
                        hit[q] = true;
                        x[q] ^= kind == 1 || kind == 2;
                        z[q] ^= kind == 2 || kind == 3;
                    }
                }
                Step::Cx(a, b) => {
                    x[b] ^= x[a];
                    z[a] ^= z[b];
                }
                Step::H(q) => {
                    std::mem::swap(&mut x[q], &mut z[q]);
                }
            }
        }
        if (0..n).any(|q| (x[q] || z[q]) && !hit[q]) {
            total += weight;
        }
    }
    total
}

/// Probability that a lone fan-out `CNOT(c, {t_1..t_w})` spreads nothing:
/// the control carries no X component and an even number of targets carry a Z component.
pub fn exact_fanout_factor(w: usize, p: f64) -> f64 {
    let mut total = 0.0;
    for pattern in 0..4usize.pow(w as u32 + 1) {
        let kinds: Vec<usize> = (0..=w).map(|i| (pattern / 4usize.pow(i as u32)) % 4).collect();
        let weight: f64 = kinds.iter().map(|&k| if k == 0 { 1.0 - p } else { p / 3.0 }).product();
        let control_x = kinds[0] == 1 || kinds[0] == 2;
        let target_z = kinds[1..].iter().filter(|&&k| k == 2 || k == 3).count();
        if !control_x && target_z % 2 == 0 {
            total += weight;
        }
    }
    total
}

// ---------------------------------------------------------------- distance

/// Minimum weight of an X- or Z-type logical supported on `support`, by full enumeration.
pub fn brute_force_distance(hx: &[Vec<u8>], hz: &[Vec<u8>], support: &[usize]) -> Option<usize> {
    let n = hx.first().or(hz.first()).map_or(0, Vec::len);
    let (rx, rz) = (naive_rank(hx), naive_rank(hz));
    let mut best: Option<usize> = None;
    for mask in 1u64..(1u64 << support.len()) {
        let w = mask.count_ones() as usize;
        if best.is_some_and(|b| w >= b) {
            continue;
        }
        let mut v = vec![0u8; n];
        for (i, &c) in support.iter().enumerate() {
            if mask >> i & 1 == 1 {
                v[c] = 1;
            }
        }
        let orth = |m: &[Vec<u8>]| {
            m.iter()
                .all(|r| r.iter().zip(&v).filter(|(a, b)| **a & **b == 1).count() % 2 == 0)
        };
        let outside = |m: &[Vec<u8>], r: usize| {
            let mut ext = m.to_vec();
            ext.push(v.clone());
            naive_rank(&ext) > r
        };
        if (orth(hz) && outside(hx, rx)) || (orth(hx) && outside(hz, rz)) {
            best = Some(w);
        }
    }
    best
}

// ---------------------------------------------------------------- corpus

/// Codes used by the corpus-wide checks: `(n, rho1, rho2, seed)` with `n <= 24`.
pub fn corpus() -> Vec<(usize, usize, usize, u64)> {
    (0..100u64)
        .map(|seed| {
            let n = 8 + (seed as usize * 7) % 17;
            let rho1 = 1 + (seed as usize) % (n / 3);
            let rho2 = 1 + (seed as usize / 3) % (n / 3);
            (n, rho1, rho2, seed)
        })
        .collect()
}
