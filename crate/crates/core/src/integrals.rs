//! Spatial-orbital integrals and the active-space reduction.
//!
//! Integrals are stored over spatial orbitals in chemists' notation: `h(p,q)`
//! is the one-electron matrix and `eri(p,q,r,s)` is `(pq|rs)`, 8-fold
//! permutation symmetric for real orbitals. All in-memory indices are
//! 0-based.

use thiserror::Error;

/// Tolerance for symmetry checks on externally constructed integrals.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum IntegralsError {
    #[error("electron count {n_elec} outside (0, {max}] for {n_orb} orbitals")]
    BadElectronCount { n_elec: usize, n_orb: usize, max: usize },
    #[error("n_elec = {n_elec} and ms2 = {ms2} have different parity")]
    SpinParityMismatch { n_elec: usize, ms2: i32 },
    #[error("one-electron matrix not symmetric: |h[{p}][{q}] - h[{q}][{p}]| = {delta:e}")]
    AsymmetricOneElectron { p: usize, q: usize, delta: f64 },
    #[error("two-electron tensor violates 8-fold symmetry at ({p}{q}|{r}{s}): delta = {delta:e}")]
    AsymmetricTwoElectron { p: usize, q: usize, r: usize, s: usize, delta: f64 },
}

#[derive(Debug, Error)]
pub enum ActiveSpaceError {
    #[error("n_elec - n_active_elec = {0} must be even and nonnegative")]
    OddInactiveElectrons(i64),
    #[error("active list entry {index} out of range for {n_orb} orbitals")]
    ActiveIndexOutOfRange { index: usize, n_orb: usize },
    #[error("active list contains duplicate index {0}")]
    DuplicateActiveIndex(usize),
    #[error("need {needed} inactive orbitals but only {available} are outside the active list")]
    NotEnoughInactive { needed: usize, available: usize },
    #[error("{n_active_elec} electrons exceed capacity of {n_active} active orbitals")]
    TooManyActiveElectrons { n_active_elec: usize, n_active: usize },
    #[error("open-shell reference (n_active_elec = {0} odd) unsupported")]
    OpenShellReference(usize),
}

/// Core energy, one- and two-electron integrals over spatial orbitals.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialIntegrals {
    pub n_orb: usize,
    pub n_elec: usize,
    /// Twice the total spin projection.
    pub ms2: i32,
    /// Scalar energy in hartree (nuclear repulsion plus any frozen constant).
    pub e_core: f64,
    /// Optional per-orbital energies in hartree.
    pub orb_energies: Option<Vec<f64>>,
    h_one: Vec<f64>,
    eri: Vec<f64>,
}

impl SpatialIntegrals {
    /// All-zero integrals with the given metadata.
    pub fn new(n_orb: usize, n_elec: usize, ms2: i32) -> Self {
        Self {
            n_orb,
            n_elec,
            ms2,
            e_core: 0.0,
            orb_energies: None,
            h_one: vec![0.0; n_orb * n_orb],
            eri: vec![0.0; n_orb * n_orb * n_orb * n_orb],
        }
    }

    #[inline]
    pub fn h(&self, p: usize, q: usize) -> f64 {
        self.h_one[p * self.n_orb + q]
    }

    /// Sets `h[p][q]` and its symmetric partner.
    pub fn set_h(&mut self, p: usize, q: usize, v: f64) {
        let n = self.n_orb;
        self.h_one[p * n + q] = v;
        self.h_one[q * n + p] = v;
    }

    /// Chemists' notation `(pq|rs)`.
    #[inline]
    pub fn eri(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_orb;
        self.eri[((p * n + q) * n + r) * n + s]
    }

    /// Sets `(pq|rs)` and all 8 real-integral permutations.
    pub fn set_eri(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        let n = self.n_orb;
        for (a, b, c, d) in [
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ] {
            self.eri[((a * n + b) * n + c) * n + d] = v;
        }
    }

    /// Raw one-electron matrix, row-major `n_orb x n_orb`.
    pub fn h_matrix(&self) -> &[f64] {
        &self.h_one
    }

    /// Validates the metadata and symmetry invariants.
    pub fn validate(&self) -> Result<(), IntegralsError> {
        let max = 2 * self.n_orb;
        if self.n_elec == 0 || self.n_elec > max {
            return Err(IntegralsError::BadElectronCount { n_elec: self.n_elec, n_orb: self.n_orb, max });
        }
        if (self.n_elec as i64 - self.ms2 as i64) % 2 != 0 {
            return Err(IntegralsError::SpinParityMismatch { n_elec: self.n_elec, ms2: self.ms2 });
        }
        let n = self.n_orb;
        for p in 0..n {
            for q in 0..p {
                let delta = (self.h(p, q) - self.h(q, p)).abs();
                if delta > SYMMETRY_TOL {
                    return Err(IntegralsError::AsymmetricOneElectron { p, q, delta });
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let v = self.eri(p, q, r, s);
                        for (a, b, c, d) in [(q, p, r, s), (p, q, s, r), (r, s, p, q)] {
                            let delta = (v - self.eri(a, b, c, d)).abs();
                            if delta > SYMMETRY_TOL {
                                return Err(IntegralsError::AsymmetricTwoElectron { p, q, r, s, delta });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Energy of the closed-shell determinant with the `n_occ` lowest
    /// orbitals doubly occupied: `e_core + 2 Σ h_tt + Σ [2(tt|uu) - (tu|ut)]`.
    pub(crate) fn closed_shell_determinant_energy(&self, n_occ: usize) -> f64 {
        let mut e = self.e_core;
        for t in 0..n_occ {
            e += 2.0 * self.h(t, t);
        }
        for t in 0..n_occ {
            for u in 0..n_occ {
                e += 2.0 * self.eri(t, t, u, u) - self.eri(t, u, u, t);
            }
        }
        e
    }
}

/// Integrals reduced to an active orbital window, with the inactive
/// (doubly occupied) orbitals folded into the scalar `e_core` and an
/// effective one-electron operator.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveSpaceProblem {
    /// Integrals over active orbitals only; `e_core` holds the inactive
    /// scalar energy.
    pub active_integrals: SpatialIntegrals,
    pub n_active_elec: usize,
    /// Parent-space indices of frozen doubly occupied orbitals, ascending.
    pub inactive_list: Vec<usize>,
    /// Parent-space indices of active orbitals, ascending; position in this
    /// list is the active orbital index.
    pub active_list: Vec<usize>,
    /// Reference determinant over interleaved spin orbitals of the active
    /// space (alpha of active orbital m at 2m, beta at 2m+1).
    pub reference_occupation: Vec<bool>,
}

impl ActiveSpaceProblem {
    pub fn n_active(&self) -> usize {
        self.active_list.len()
    }

    /// Qubit count after Jordan-Wigner: two spin orbitals per active orbital.
    pub fn n_qubits(&self) -> usize {
        2 * self.n_active()
    }
}

/// Treats the whole orbital space as active.
pub fn full_space_problem(parent: &SpatialIntegrals) -> Result<ActiveSpaceProblem, ActiveSpaceError> {
    build_active_space(parent, &(0..parent.n_orb).collect::<Vec<_>>(), parent.n_elec)
}

/// Freezes the lowest-index non-active orbitals as a doubly occupied core
/// and restricts the integrals to `active_list`.
///
/// The inactive scalar is
/// `E_I = e_core + Σ_i 2 h_ii + Σ_ij [2(ii|jj) - (ij|ji)]` and the effective
/// one-electron matrix is `f_tu = h_tu + Σ_i [2(tu|ii) - (ti|ui)]`, with `i`
/// running over inactive orbitals.
pub fn build_active_space(
    parent: &SpatialIntegrals,
    active_list: &[usize],
    n_active_elec: usize,
) -> Result<ActiveSpaceProblem, ActiveSpaceError> {
    let diff = parent.n_elec as i64 - n_active_elec as i64;
    if diff < 0 || diff % 2 != 0 {
        return Err(ActiveSpaceError::OddInactiveElectrons(diff));
    }
    let n_inactive = (diff / 2) as usize;

    let mut active = active_list.to_vec();
    active.sort_unstable();
    for &t in &active {
        if t >= parent.n_orb {
            return Err(ActiveSpaceError::ActiveIndexOutOfRange { index: t, n_orb: parent.n_orb });
        }
    }
    if active.windows(2).any(|w| w[0] == w[1]) {
        let dup = active.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
        return Err(ActiveSpaceError::DuplicateActiveIndex(dup));
    }
    if n_active_elec > 2 * active.len() {
        return Err(ActiveSpaceError::TooManyActiveElectrons { n_active_elec, n_active: active.len() });
    }

    let inactive: Vec<usize> = (0..parent.n_orb).filter(|p| !active.contains(p)).take(n_inactive).collect();
    if inactive.len() < n_inactive {
        return Err(ActiveSpaceError::NotEnoughInactive { needed: n_inactive, available: inactive.len() });
    }

    let mut e_inactive = parent.e_core;
    for &i in &inactive {
        e_inactive += 2.0 * parent.h(i, i);
    }
    for &i in &inactive {
        for &j in &inactive {
            e_inactive += 2.0 * parent.eri(i, i, j, j) - parent.eri(i, j, j, i);
        }
    }

    let n_active = active.len();
    let mut reduced = SpatialIntegrals::new(n_active, n_active_elec, parent.ms2);
    reduced.e_core = e_inactive;
    for (t_new, &t) in active.iter().enumerate() {
        for (u_new, &u) in active.iter().enumerate() {
            let mut f = parent.h(t, u);
            for &i in &inactive {
                f += 2.0 * parent.eri(t, u, i, i) - parent.eri(t, i, u, i);
            }
            reduced.h_one[t_new * n_active + u_new] = f;
        }
    }
    for (a, &p) in active.iter().enumerate() {
        for (b, &q) in active.iter().enumerate() {
            for (c, &r) in active.iter().enumerate() {
                for (d, &s) in active.iter().enumerate() {
                    reduced.eri[((a * n_active + b) * n_active + c) * n_active + d] = parent.eri(p, q, r, s);
                }
            }
        }
    }
    if let Some(eps) = &parent.orb_energies {
        reduced.orb_energies = Some(active.iter().map(|&t| eps[t]).collect());
    }

    let n_alpha = n_active_elec.div_ceil(2);
    let n_beta = n_active_elec / 2;
    let mut reference_occupation = vec![false; 2 * n_active];
    for m in 0..n_alpha {
        reference_occupation[2 * m] = true;
    }
    for m in 0..n_beta {
        reference_occupation[2 * m + 1] = true;
    }

    Ok(ActiveSpaceProblem {
        active_integrals: reduced,
        n_active_elec,
        inactive_list: inactive,
        active_list: active,
        reference_occupation,
    })
}

/// Energy of the reference determinant `|phi0>` of an active-space problem.
///
/// Returns `E_I + Σ_t 2 f_tt + Σ_tu [2(tt|uu) - (tu|ut)]` over the occupied
/// active orbitals. Open-shell references are rejected.
pub fn reference_energy(problem: &ActiveSpaceProblem) -> Result<f64, ActiveSpaceError> {
    if problem.n_active_elec % 2 != 0 {
        return Err(ActiveSpaceError::OpenShellReference(problem.n_active_elec));
    }
    Ok(problem.active_integrals.closed_shell_determinant_energy(problem.n_active_elec / 2))
}
