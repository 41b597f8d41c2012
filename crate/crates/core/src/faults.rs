//! Error-propagation bounds and Pauli-frame Monte Carlo.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{CliffordCircuit, Gate};
use crate::code::EaCssCode;
use crate::encoder::{synth_nonft, NonFtEncoder, StandardForm};
use crate::error::{Error, Result};
use crate::ftencoder::{plan_blocks, synth_ft, FtSynthesisTrace};

/// Depolarizing channel: X, Y, Z each with probability `p / 3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultModel {
    p: f64,
}

impl FaultModel {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("p = {p} is outside [0, 1]")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Probability of an even number of hits among `w` sites each hit with probability `q`.
fn even_hits(w: usize, q: f64) -> f64 {
    (0..=w)
        .step_by(2)
        .map(|c| binom(w, c) * q.powi(c as i32) * (1.0 - q).powi((w - c) as i32))
        .sum()
}

/// No-propagation probability of one fan-out `CNOT(c, {t_1..t_w})`: the
/// control takes no X-type fault and an even number of targets take Z-type
/// faults, each of which happens with probability `2p/3`.
pub fn no_prop_factor(w: usize, p: f64) -> f64 {
    let q = 2.0 * p / 3.0;
    (1.0 - q) * even_hits(w, q)
}

/// The additive form `(1 - 2p/3) + sum_even(...)`. Not a probability (it is 2 at `p = 0`).
pub fn no_prop_factor_literal(w: usize, p: f64) -> f64 {
    let q = 2.0 * p / 3.0;
    (1.0 - q) + even_hits(w, q)
}

/// Which per-fan-out factor a bound multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorForm {
    #[default]
    Product,
    Literal,
}

/// `1 - prod factor(w)` over `weights`, clamped to `[0, 1]`.
pub fn bound_from_weights(weights: impl IntoIterator<Item = usize>, p: f64, form: FactorForm) -> f64 {
    let f = match form {
        FactorForm::Product => no_prop_factor,
        FactorForm::Literal => no_prop_factor_literal,
    };
    let prod: f64 = weights.into_iter().map(|w| f(w, p)).product();
    (1.0 - prod).clamp(0.0, 1.0)
}

/// `(|C_i|, |O_i|)`: fan-out sizes of `U` per X row and of `W` per information column.
///
/// With `A_z = I` in standard form, `O_i` is the support of column `i` of `B_z`.
pub fn nonft_weights(sf: &StandardForm) -> (Vec<usize>, Vec<usize>) {
    let ab = (0..sf.rho1()).map(|i| sf.hx_tilde.row_weight(i) - 1).collect();
    let hz_t = sf.hz_tilde.transpose();
    let a = sf.info_positions().map(|c| hz_t.row_weight(c)).collect();
    (ab, a)
}

pub fn bound_nonft(sf: &StandardForm, p: f64) -> f64 {
    let (ab, a) = nonft_weights(sf);
    bound_from_weights(ab.into_iter().chain(a), p, FactorForm::Product)
}

pub fn bound_ft(trace: &FtSynthesisTrace, p: f64) -> f64 {
    let x = trace.weights_x.iter().flatten().copied();
    let z = trace.weights_z.iter().flatten().copied();
    bound_from_weights(x.chain(z), p, FactorForm::Product)
}

/// Where faults are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InjectionMode {
    /// Once per fan-out group (a maximal run of CX gates sharing a control),
    /// on the control and every target.
    #[default]
    PerFanout,
    /// Before every elementary CX, on its control and target.
    PerGate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Op {
    H(usize),
    Fan { control: usize, targets: Vec<usize> },
}

fn compile(c: &CliffordCircuit, mode: InjectionMode) -> Vec<Op> {
    let mut ops: Vec<Op> = Vec::new();
    let mut open = false;
    for g in c.gates() {
        match *g {
            Gate::H(q) => {
                ops.push(Op::H(q));
                open = false;
            }
            Gate::Cx { control, target } => {
                if let (InjectionMode::PerFanout, true, Some(Op::Fan { control: c0, targets })) =
                    (mode, open, ops.last_mut())
                {
                    if *c0 == control {
                        targets.push(target);
                        continue;
                    }
                }
                ops.push(Op::Fan {
                    control,
                    targets: vec![target],
                });
                open = true;
            }
        }
    }
    ops
}

/// Number of places a fault can be injected.
pub fn fault_locations(c: &CliffordCircuit, protected: &[usize], mode: InjectionMode) -> usize {
    compile(c, mode)
        .iter()
        .map(|op| match op {
            Op::H(_) => 0,
            Op::Fan { control, targets } => std::iter::once(control)
                .chain(targets)
                .filter(|q| !protected.contains(q))
                .count(),
        })
        .sum()
}

/// Monte Carlo estimate of the propagation-event probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub estimate: f64,
    pub stderr: f64,
}

const CHUNK: u64 = 4096;

struct Frame {
    x: Vec<bool>,
    z: Vec<bool>,
    hit: Vec<bool>,
}

/// Runs `trials` independent shots of `circuit` under `model`.
///
/// A shot is an event when some qubit ends with a nonidentity Pauli frame
/// without ever having been hit directly. Protected qubits are never hit but
/// do carry propagated errors. Trials are split into fixed chunks with
/// per-chunk streams, so the result does not depend on the thread count.
pub fn simulate(
    circuit: &CliffordCircuit,
    model: FaultModel,
    trials: u64,
    seed: u64,
    protected: &[usize],
    mode: InjectionMode,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let n = circuit.qubits();
    let ops = compile(circuit, mode);
    let mut guarded = vec![false; n];
    for &q in protected {
        if q >= n {
            return Err(Error::InvalidArgument(format!("protected qubit {q} out of range")));
        }
        guarded[q] = true;
    }
    let p = model.p();
    let chunks = trials.div_ceil(CHUNK);

    let events: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let shots = CHUNK.min(trials - k * CHUNK);
            let mut f = Frame {
                x: vec![false; n],
                z: vec![false; n],
                hit: vec![false; n],
            };
            let mut count = 0;
            for _ in 0..shots {
                f.x.fill(false);
                f.z.fill(false);
                f.hit.fill(false);
                for op in &ops {
                    match op {
                        Op::H(q) => {
                            let (a, b) = (f.x[*q], f.z[*q]);
                            f.x[*q] = b;
                            f.z[*q] = a;
                        }
                        Op::Fan { control, targets } => {
                            for &q in std::iter::once(control).chain(targets) {
                                if guarded[q] {
                                    continue;
                                }
                                let u: f64 = rng.random();
                                if u < p {
                                    // 0 = X, 1 = Y, 2 = Z
                                    let kind = ((3.0 * u / p) as u8).min(2);
                                    f.hit[q] = true;
                                    f.x[q] ^= kind < 2;
                                    f.z[q] ^= kind > 0;
                                }
                            }
                            for &t in targets {
                                f.x[t] ^= f.x[*control];
                                f.z[*control] ^= f.z[t];
                            }
                        }
                    }
                }
                if (0..n).any(|q| (f.x[q] || f.z[q]) && !f.hit[q]) {
                    count += 1;
                }
            }
            count
        })
        .sum();

    let estimate = events as f64 / trials as f64;
    Ok(McEstimate {
        p,
        trials,
        seed,
        estimate,
        stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
    })
}

/// Fan-out weights behind both bounds.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Factors {
    pub nonft_ab: Vec<usize>,
    pub nonft_a: Vec<usize>,
    /// `[block][stabilizer]`
    pub ft_x: Vec<Vec<usize>>,
    pub ft_z: Vec<Vec<usize>>,
}

impl Factors {
    pub fn new(nonft: &NonFtEncoder, ft: Option<&FtSynthesisTrace>) -> Self {
        let (nonft_ab, nonft_a) = nonft_weights(&nonft.standard);
        Self {
            nonft_ab,
            nonft_a,
            ft_x: ft.map(|t| t.weights_x.clone()).unwrap_or_default(),
            ft_z: ft.map(|t| t.weights_z.clone()).unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationReport {
    pub bound_nf: f64,
    pub bound_ft: f64,
    pub factors: Factors,
    pub mc: Option<McEstimate>,
}

/// Smallest `g` in `1..=g_max` whose block bound is strictly below the
/// non-fault-tolerant bound, using near-equal blocks.
pub fn min_blocks(ea: &EaCssCode, p: f64, g_max: usize) -> Result<Option<usize>> {
    if g_max > ea.n() {
        return Err(Error::BadPartition(format!(
            "g_max = {g_max} exceeds {} data qubits",
            ea.n()
        )));
    }
    let nf = bound_nonft(&synth_nonft(ea.code())?.standard, p);
    for g in 1..=g_max {
        let ft = synth_ft(ea, &plan_blocks(ea.n(), g)?)?;
        if bound_ft(&ft.trace, p) < nf {
            return Ok(Some(g));
        }
    }
    Ok(None)
}
