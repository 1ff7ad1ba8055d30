//! Active-space VQE pipeline over electronic-structure integrals.
//!
//! The crate covers the full workflow from an FCIDUMP integral file to a
//! variational ground-state energy on an exact statevector simulator:
//!
//! * [`fcidump`] / [`integrals`] — integral I/O, active-space reduction with
//!   the frozen-core scalar and effective one-electron operator.
//! * [`selector`] — MP2 natural-orbital occupation analysis and
//!   threshold-based active-space selection, plus the four-index integral
//!   rotation into the natural-orbital basis.
//! * [`pauli`] / [`jw`] — Pauli-string algebra and the Jordan-Wigner mapping
//!   of the second-quantized Hamiltonian.
//! * [`ansatz`] — UCCSD, UCCGSD and k-UpCCGSD generator programs with a
//!   single Trotter step.
//! * [`circuit`] / [`statevector`] — gate synthesis, resource metrics, and
//!   exact statevector simulation (gate path and direct generator path).
//! * [`vqe`] / [`lbfgs`] — adjoint-mode analytic gradients and a
//!   limited-memory quasi-Newton optimizer with optional box bounds.
//! * [`casci`] — determinant-basis exact diagonalization (dense and
//!   Davidson) used as the ground-truth oracle.
//! * [`units`] — pinned unit conversions and the intercalation-voltage
//!   formula.

pub mod ansatz;
pub mod casci;
pub mod circuit;
pub mod fcidump;
pub mod integrals;
pub mod jw;
pub mod lbfgs;
pub mod pauli;
pub mod selector;
pub mod statevector;
pub mod units;
pub mod vqe;

mod util;

// pub use ansatz::{build_kupccgsd, build_uccgsd, build_uccsd, AnsatzFamily, AnsatzProgram, MappedAnsatz};
// pub use casci::{build_basis, ground_energy, sector_spectrum, DeterminantBasis};
// pub use circuit::{synthesize, GateCircuit, ResourceReport};
// pub use fcidump::{parse_fcidump, write_fcidump};
// pub use integrals::{build_active_space, reference_energy, ActiveSpaceProblem, SpatialIntegrals};
// pub use jw::map_hamiltonian;
// pub use pauli::{PauliString, PauliSum};
// pub use selector::{mp2_energy_and_density, noon_spectrum, rotate_integrals, select_active, DensityMatrix1P, NoonSpectrum};
// pub use statevector::Statevector;
// pub use vqe::{minimize, VqeConfig, VqeResult};
