//! Non-fault-tolerant encoder synthesis.
//!
//! The decoder `D` runs `U`, then `T`, then `W`; the encoder is `D` reversed.
//! Stage circuits act on standard-form positions; the assembled decoder and
//! encoder are relabelled to the code's own columns.

use crate::circuit::{CliffordCircuit, Gate, StabilizerTableau};
use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};

/// Column-permuted, row-reduced check matrices.
///
/// Column blocks: `J1 = 0..rho1`, `J2 = rho1..rho1+rho2`, `J3` the rest.
/// `hx_tilde = [I | A_x | B_x]` and `hz_tilde = [D_z | I | B_z]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub hx_tilde: BitMatrix,
    pub hz_tilde: BitMatrix,
    /// Standard position `j` holds original column `column_perm[j]`.
    pub column_perm: Vec<usize>,
}

impl StandardForm {
    pub fn n(&self) -> usize {
        self.hx_tilde.cols()
    }

    pub fn rho1(&self) -> usize {
        self.hx_tilde.rows()
    }

    pub fn rho2(&self) -> usize {
        self.hz_tilde.rows()
    }

    /// Information positions `J3`.
    pub fn info_positions(&self) -> std::ops::Range<usize> {
        self.rho1() + self.rho2()..self.n()
    }

    /// `A_z`, the `rho2 x rho2` block of `hz_tilde` on `J2`.
    pub fn a_z(&self) -> BitMatrix {
        let j2: Vec<usize> = (self.rho1()..self.rho1() + self.rho2()).collect();
        self.hz_tilde.select_columns(&j2)
    }

    pub fn tableau(&self) -> StabilizerTableau {
        StabilizerTableau::from_css(&self.hx_tilde, &self.hz_tilde)
    }
}

pub fn standard_form(code: &CssCode) -> Result<StandardForm> {
    let n = code.n();
    let (rho1, rho2) = (code.rho1(), code.rho2());

    let mut hx = code.hx().clone();
    let all: Vec<usize> = (0..n).collect();
    let piv_x = gf2::eliminate(&mut hx, &all);
    if piv_x.len() < rho1 {
        return Err(Error::RankDeficient {
            which: "hx",
            rank: piv_x.len(),
            rows: rho1,
        });
    }
    let mut perm = piv_x.clone();
    perm.extend((0..n).filter(|c| !piv_x.contains(c)));
    let hx = hx.permute_columns(&perm);

    let mut hz = code.hz().permute_columns(&perm);
    let rest: Vec<usize> = (rho1..n).collect();
    let piv_z = gf2::eliminate(&mut hz, &rest);
    if piv_z.len() < rho2 {
        return Err(Error::RankDeficient {
            which: "hz",
            rank: piv_z.len(),
            rows: rho2,
        });
    }
    let mut second: Vec<usize> = (0..rho1).collect();
    second.extend(&piv_z);
    second.extend((rho1..n).filter(|c| !piv_z.contains(c)));

    Ok(StandardForm {
        hx_tilde: hx.permute_columns(&second),
        hz_tilde: hz.permute_columns(&second),
        column_perm: second.iter().map(|&j| perm[j]).collect(),
    })
}

/// `CNOT(i, C_i)` for each X row `i`, where `C_i` is the support of `[A_x | B_x]` in row `i`.
pub fn synth_u(sf: &StandardForm) -> CliffordCircuit {
    let mut c = CliffordCircuit::new(sf.n());
    for i in 0..sf.rho1() {
        let targets: Vec<usize> = sf.hx_tilde.row_support(i).into_iter().filter(|&t| t != i).collect();
        c.push_fanout(i, &targets).expect("standard-form indices are in range");
    }
    c
}

/// Hadamard on the first `rho1` qubits.
pub fn synth_t(rho1: usize, n: usize) -> CliffordCircuit {
    let gates = (0..rho1).map(Gate::H).collect();
    CliffordCircuit::from_gates(n, gates).expect("rho1 <= n")
}

/// Clears `B_z` given the tableau after `U` and `T`.
///
/// Solves `A_z P = B_z` on the Z rows and emits `CNOT(i, O_i)` for each
/// information position `i`, `O_i` being the `J2` positions selected by column `i` of `P`.
pub fn synth_w(t: &StabilizerTableau, sf: &StandardForm) -> Result<CliffordCircuit> {
    let (rho1, rho2, n) = (sf.rho1(), sf.rho2(), sf.n());
    let zrows: Vec<usize> = (rho1..rho1 + rho2).collect();
    let z = t.zpart().select_rows(&zrows);
    let j2: Vec<usize> = (rho1..rho1 + rho2).collect();
    let j3: Vec<usize> = sf.info_positions().collect();
    let p = gf2::solve(&z.select_columns(&j2), &z.select_columns(&j3))?;
    let mut c = CliffordCircuit::new(n);
    for (k, &info) in j3.iter().enumerate() {
        let targets: Vec<usize> = (0..rho2).filter(|&j| p.get(j, k)).map(|j| rho1 + j).collect();
        c.push_fanout(info, &targets)?;
    }
    Ok(c)
}

/// `Z` on the first `rho1 + rho2` qubits; information qubits carry no rows.
pub fn initial_tableau_nonft(n: usize, rho1: usize, rho2: usize) -> StabilizerTableau {
    let w = rho1 + rho2;
    let supports: Vec<Vec<usize>> = (0..w).map(|i| vec![i]).collect();
    StabilizerTableau::new(BitMatrix::zeros(w, n), BitMatrix::from_supports(w, n, &supports)).expect("shapes agree")
}

/// Result of [`synth_nonft`].
#[derive(Debug, Clone)]
pub struct NonFtEncoder {
    pub standard: StandardForm,
    /// Stage circuits on standard-form positions.
    pub u: CliffordCircuit,
    pub t: CliffordCircuit,
    pub w: CliffordCircuit,
    /// `U, T, W` in the code's own column labels.
    pub decoder: CliffordCircuit,
    pub encoder: CliffordCircuit,
}

impl NonFtEncoder {
    /// Fan-out sizes `|C_i|` of `U`, one per X row.
    pub fn weights_ab(&self) -> Vec<usize> {
        (0..self.standard.rho1())
            .map(|i| self.standard.hx_tilde.row_weight(i) - 1)
            .collect()
    }

    /// Fan-out sizes `|O_i|` of `W`, one per information position.
    pub fn weights_a(&self) -> Vec<usize> {
        let mut w = vec![0; self.standard.info_positions().len()];
        let first = self.standard.rho1() + self.standard.rho2();
        for g in self.w.gates() {
            if let Gate::Cx { control, .. } = *g {
                w[control - first] += 1;
            }
        }
        w
    }

    /// Ancilla tableau in the code's column labels.
    pub fn initial_tableau(&self) -> StabilizerTableau {
        let sf = &self.standard;
        let w = sf.rho1() + sf.rho2();
        let supports: Vec<Vec<usize>> = (0..w).map(|i| vec![sf.column_perm[i]]).collect();
        StabilizerTableau::new(
            BitMatrix::zeros(w, sf.n()),
            BitMatrix::from_supports(w, sf.n(), &supports),
        )
        .expect("shapes agree")
    }
}

pub fn synth_nonft(code: &CssCode) -> Result<NonFtEncoder> {
    let sf = standard_form(code)?;
    let u = synth_u(&sf);
    let t = synth_t(sf.rho1(), sf.n());
    let after = sf.tableau().apply_circuit(&u).apply_circuit(&t);
    let w = synth_w(&after, &sf)?;
    let decoder = CliffordCircuit::concat(&[&u, &t, &w]).relabel(&sf.column_perm, sf.n())?;
    let encoder = decoder.dagger();
    Ok(NonFtEncoder {
        standard: sf,
        u,
        t,
        w,
        decoder,
        encoder,
    })
}

fn fail(criterion: &str, detail: impl Into<String>) -> Error {
    Error::Verification {
        criterion: criterion.into(),
        detail: detail.into(),
    }
}

/// Checks an encoder against the code: running it backwards must map the code
/// onto `Z` on the ancilla columns `ancillas` (X part zero), and running it
/// forwards on those ancillas must reproduce the code's row space.
pub fn verify_nonft(code: &CssCode, encoder: &CliffordCircuit, ancillas: &[usize]) -> Result<()> {
    let n = code.n();
    if encoder.qubits() != n {
        return Err(fail(
            "width",
            format!("circuit has {} qubits, code has {n}", encoder.qubits()),
        ));
    }
    if ancillas.len() != code.rho1() + code.rho2() {
        return Err(fail(
            "ancillas",
            format!(
                "{} ancilla columns for {} generators",
                ancillas.len(),
                code.rho1() + code.rho2()
            ),
        ));
    }
    let image = StabilizerTableau::from_css(code.hx(), code.hz()).apply_circuit(&encoder.dagger());
    if let Some(r) = (0..image.rows()).find(|&r| !image.xpart().row_is_zero(r)) {
        return Err(fail(
            "x-cleared",
            format!("decoded row {r} keeps X support {:?}", image.xpart().row_support(r)),
        ));
    }
    let supports: Vec<Vec<usize>> = ancillas.iter().map(|&a| vec![a]).collect();
    let canon = BitMatrix::from_supports(ancillas.len(), n, &supports);
    if !gf2::row_space_equal(image.zpart(), &canon)? {
        return Err(fail("canonical-z", "decoded Z rows do not span the ancilla columns"));
    }
    let start = StabilizerTableau::new(BitMatrix::zeros(ancillas.len(), n), canon)?;
    let encoded = start.apply_circuit(encoder);
    if !encoded.row_space_equal(&StabilizerTableau::from_css(code.hx(), code.hz())) {
        return Err(fail("code-image", "encoded ancillas do not span the code"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{ea_extend, random_css};

    fn example() -> CssCode {
        let hx = BitMatrix::from_rows(&[
            [1, 0, 0, 0, 1, 0, 0, 0, 1],
            [0, 1, 0, 0, 0, 1, 1, 0, 0],
            [0, 0, 1, 1, 0, 0, 0, 1, 0],
        ]);
        let hz = BitMatrix::from_rows(&[
            [1, 0, 0, 0, 0, 1, 0, 1, 0],
            [0, 1, 0, 1, 0, 0, 0, 0, 1],
            [0, 0, 1, 0, 1, 0, 1, 0, 0],
        ]);
        ea_extend(&hx, &hz).unwrap().code().clone()
    }

    #[test]
    fn example_is_already_standard_on_x() {
        let sf = standard_form(&example()).unwrap();
        assert_eq!(&sf.column_perm[..3], &[0, 1, 2]);
        assert_eq!(sf.a_z().rank(), 3);
    }

    #[test]
    fn stages_clear_what_they_should() {
        let sf = standard_form(&example()).unwrap();
        let u = synth_u(&sf);
        let after_u = sf.tableau().apply_circuit(&u);
        for r in 0..sf.rho1() {
            assert_eq!(after_u.xpart().row_support(r), vec![r]);
        }
        for c in 0..sf.rho1() {
            assert!(after_u.zpart().column_is_zero(c));
        }
        let after_t = after_u.apply_circuit(&synth_t(sf.rho1(), sf.n()));
        assert!(after_t.xpart().is_zero());
        let w = synth_w(&after_t, &sf).unwrap();
        let done = after_t.apply_circuit(&w);
        for c in sf.info_positions() {
            assert!(done.zpart().column_is_zero(c));
        }
    }

    #[test]
    fn example_weights() {
        let enc = synth_nonft(&example()).unwrap();
        assert_eq!(enc.weights_ab(), vec![3, 3, 3]);
        assert_eq!(enc.weights_a(), vec![1, 1, 1, 3]);
        assert_eq!(enc.u.cx_count(), 9);
        assert_eq!(enc.w.cx_count(), 6);
    }

    #[test]
    fn synthesized_encoders_verify() {
        for seed in 0..20 {
            let code = random_css(12, 4, 5, seed);
            let enc = synth_nonft(&code).unwrap();
            let anc = &enc.standard.column_perm[..9];
            verify_nonft(&code, &enc.encoder, anc).unwrap();
        }
    }

    #[test]
    fn deleting_a_gate_breaks_verification() {
        let code = example();
        let enc = synth_nonft(&code).unwrap();
        let mut gates = enc.encoder.gates().to_vec();
        gates.remove(0);
        let broken = CliffordCircuit::from_gates(code.n(), gates).unwrap();
        assert!(verify_nonft(&code, &broken, &enc.standard.column_perm[..6]).is_err());
    }

    #[test]
    fn empty_code_gives_empty_circuits() {
        let code = crate::code::build_css(BitMatrix::zeros(0, 4), BitMatrix::zeros(0, 4)).unwrap();
        let enc = synth_nonft(&code).unwrap();
        assert!(enc.encoder.is_empty());
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let hx = BitMatrix::from_rows(&[[1, 1, 0, 0], [1, 1, 0, 0]]);
        let code = crate::code::build_css(hx, BitMatrix::zeros(0, 4)).unwrap();
        assert!(matches!(
            standard_form(&code),
            Err(Error::RankDeficient { which: "hx", .. })
        ));
    }
}
