//! CSS and entanglement-assisted CSS codes.

mod distance;
mod format;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};

pub use distance::{min_distance, DISTANCE_LIMIT};
pub use format::{parse_matrix, write_matrix, MatrixFormat};

/// A CSS code given by its X checks `hx` and Z checks `hz` with `hx * hz^T = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
}

impl CssCode {
    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    /// Number of qubits (columns).
    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn rho1(&self) -> usize {
        self.hx.rows()
    }

    pub fn rho2(&self) -> usize {
        self.hz.rows()
    }

    /// `n - rank(hx) - rank(hz)`.
    pub fn k(&self) -> usize {
        self.n() - gf2::rank(&self.hx) - gf2::rank(&self.hz)
    }

    /// Exact distance over all qubits; `None` when the code encodes nothing.
    pub fn distance(&self) -> Result<Option<usize>> {
        let support: Vec<usize> = (0..self.n()).collect();
        min_distance(&self.hx, &self.hz, &support)
    }
}

/// Checks the dual-containing condition and wraps `(h1, h2)` as a CSS code.
pub fn build_css(h1: BitMatrix, h2: BitMatrix) -> Result<CssCode> {
    if h1.cols() != h2.cols() {
        return Err(Error::DimensionMismatch {
            what: "build_css",
            left: h1.shape(),
            right: h2.shape(),
        });
    }
    let gram = h1.mul(&h2.transpose());
    if !gram.is_zero() {
        return Err(Error::NotDualContaining { c: gram.rank() });
    }
    Ok(CssCode { hx: h1, hz: h2 })
}

/// What a qubit column is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "role")]
pub enum ColumnRole {
    Data,
    AncillaPlus,
    AncillaZero,
    Info,
    EpairTx {
        pair: usize,
    },
    EpairRx {
        pair: usize,
    },
    /// Shared resource qubit for stabilizer `stabilizer` in block `block` (both 0-based).
    Entangled {
        stabilizer: usize,
        block: usize,
    },
}

/// Role of every column of a matrix or circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnLayout {
    roles: Vec<ColumnRole>,
}

impl ColumnLayout {
    pub fn new(roles: Vec<ColumnRole>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for r in &roles {
            if let ColumnRole::Entangled { .. } | ColumnRole::EpairRx { .. } | ColumnRole::EpairTx { .. } = r {
                if !seen.insert(*r) {
                    return Err(Error::InvalidArgument(format!("duplicate column role {r:?}")));
                }
            }
        }
        Ok(Self { roles })
    }

    pub fn roles(&self) -> &[ColumnRole] {
        &self.roles
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn columns_where(&self, pred: impl Fn(&ColumnRole) -> bool) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| pred(r))
            .map(|(i, _)| i)
            .collect()
    }
}

/// An entanglement-assisted CSS code.
///
/// The wrapped [`CssCode`] spans `n + c` columns: the `n` transmitter columns
/// followed by the `c` receiver halves of the preshared pairs. Over all
/// `n + c` columns the checks commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EaCssCode {
    code: CssCode,
    transmitters: usize,
    ebits: usize,
    layout: ColumnLayout,
}

impl EaCssCode {
    /// Extended code over transmitter and receiver columns.
    pub fn code(&self) -> &CssCode {
        &self.code
    }

    /// Transmitter qubit count `n`.
    pub fn n(&self) -> usize {
        self.transmitters
    }

    /// Preshared pair count `c`.
    pub fn c(&self) -> usize {
        self.ebits
    }

    pub fn rho1(&self) -> usize {
        self.code.rho1()
    }

    pub fn rho2(&self) -> usize {
        self.code.rho2()
    }

    /// `n - rank(hx) - rank(hz) + c`.
    pub fn k(&self) -> usize {
        self.code.k()
    }

    pub fn receiver_cols(&self) -> Vec<usize> {
        (self.transmitters..self.transmitters + self.ebits).collect()
    }

    pub fn layout(&self) -> &ColumnLayout {
        &self.layout
    }

    /// Distance with errors confined to the transmitter columns.
    pub fn distance(&self) -> Result<Option<usize>> {
        let support: Vec<usize> = (0..self.transmitters).collect();
        min_distance(self.code.hx(), self.code.hz(), &support)
    }
}

/// Appends `c = rank(h1 h2^T)` receiver columns so that the checks commute.
///
/// With `h1 h2^T = P Q` (rank factorization), `h1` gains `P` and `h2` gains `Q^T`.
pub fn ea_extend(h1: &BitMatrix, h2: &BitMatrix) -> Result<EaCssCode> {
    if h1.cols() != h2.cols() {
        return Err(Error::DimensionMismatch {
            what: "ea_extend",
            left: h1.shape(),
            right: h2.shape(),
        });
    }
    let n = h1.cols();
    let gram = h1.mul(&h2.transpose());
    let (p, q) = gf2::rank_factorize(&gram);
    let c = p.cols();
    let hx = h1.hstack(&p);
    let hz = h2.hstack(&q.transpose());
    let code = build_css(hx, hz)?;
    let mut roles = vec![ColumnRole::Data; n];
    roles.extend((0..c).map(|pair| ColumnRole::EpairRx { pair }));
    Ok(EaCssCode {
        code,
        transmitters: n,
        ebits: c,
        layout: ColumnLayout::new(roles)?,
    })
}

impl From<CssCode> for EaCssCode {
    fn from(code: CssCode) -> Self {
        let n = code.n();
        EaCssCode {
            code,
            transmitters: n,
            ebits: 0,
            layout: ColumnLayout {
                roles: vec![ColumnRole::Data; n],
            },
        }
    }
}

/// `h1 = [I | A]`, `h2 = [A^T | I]` with `A` uniform; reproducible from `seed`.
///
/// # Panics
///
/// Panics unless `0 < rho1 < n`.
pub fn random_dual_containing(n: usize, rho1: usize, seed: u64) -> (BitMatrix, BitMatrix) {
    assert!(rho1 > 0 && rho1 < n, "need 0 < rho1 < n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = n - rho1;
    let mut a = BitMatrix::zeros(rho1, m);
    for r in 0..rho1 {
        for c in 0..m {
            a.set(r, c, rng.random::<bool>());
        }
    }
    let h1 = BitMatrix::identity(rho1).hstack(&a);
    let h2 = a.transpose().hstack(&BitMatrix::identity(m));
    (h1, h2)
}

/// Random CSS code with `k = n - rho1 - rho2`, columns shuffled.
///
/// `hz` is a random full-rank combination of the rows of the dual of `hx`, so
/// standard-form reduction needs column swaps on both sides.
pub fn random_css(n: usize, rho1: usize, rho2: usize, seed: u64) -> CssCode {
    assert!(rho1 > 0 && rho1 < n && rho2 <= n - rho1, "bad code dimensions");
    let (h1, dual) = random_dual_containing(n, rho1, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let m = n - rho1;
    let mix = loop {
        let mut r = BitMatrix::zeros(rho2, m);
        for i in 0..rho2 {
            for j in 0..m {
                r.set(i, j, rng.random::<bool>());
            }
        }
        if r.rank() == rho2 {
            break r;
        }
    };
    let h2 = mix.mul(&dual);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    CssCode {
        hx: h1.permute_columns(&perm),
        hz: h2.permute_columns(&perm),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_pair() -> (BitMatrix, BitMatrix) {
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
        (hx, hz)
    }

    #[test]
    fn example_needs_one_pair() {
        let (hx, hz) = example_pair();
        assert_eq!(build_css(hx, hz), Err(Error::NotDualContaining { c: 1 }));
    }

    #[test]
    fn empty_checks_encode_everything() {
        let code = build_css(BitMatrix::zeros(0, 5), BitMatrix::zeros(0, 5)).unwrap();
        assert_eq!(code.k(), 5);
    }

    #[test]
    fn ea_extend_appends_all_ones_column() {
        let (hx, hz) = example_pair();
        let ea = ea_extend(&hx, &hz).unwrap();
        assert_eq!(ea.c(), 1);
        assert_eq!(ea.n(), 9);
        assert_eq!(ea.k(), 4);
        assert_eq!(ea.code().hx(), &hx.hstack(&BitMatrix::ones(3, 1)));
        assert_eq!(ea.code().hz(), &hz.hstack(&BitMatrix::ones(3, 1)));
        assert_eq!(ea.receiver_cols(), vec![9]);
    }

    #[test]
    fn ea_extend_is_identity_on_css_input() {
        let (h1, h2) = random_dual_containing(8, 3, 5);
        let ea = ea_extend(&h1, &h2).unwrap();
        assert_eq!(ea.c(), 0);
        assert_eq!(ea.code().hx(), &h1);
        assert_eq!(ea.code().hz(), &h2);
    }

    #[test]
    fn random_dual_containing_is_seeded() {
        let a = random_dual_containing(8, 3, 42);
        assert_eq!(a, random_dual_containing(8, 3, 42));
        assert_eq!(a.0.rank(), 3);
        assert_eq!(a.1.rank(), 5);
        assert!(a.0.mul(&a.1.transpose()).is_zero());
    }

    #[test]
    fn random_css_has_requested_shape() {
        let code = random_css(14, 4, 5, 3);
        assert_eq!((code.rho1(), code.rho2(), code.k()), (4, 5, 5));
        assert!(code.hx().mul(&code.hz().transpose()).is_zero());
    }

    #[test]
    fn layout_rejects_duplicate_entangled_role() {
        let r = ColumnRole::Entangled {
            stabilizer: 0,
            block: 1,
        };
        assert!(ColumnLayout::new(vec![r, ColumnRole::Data, r]).is_err());
    }
}
