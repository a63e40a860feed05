//! S-matrix in the penta-diagonal J-matrix representation.
//!
//! The inner space `0..N` carries `H0 + U - E Omega` (reference wave operator
//! plus the quadrature potential matrix). Beyond it the solution is
//! `q_n = F_n^+ - S F_n^-`, and matching the last inner row gives
//!
//! `S = T_{N-1} [1 + X R_N^+ + Y R_{N+1}^+ R_N^+] / [1 + X R_N^- + Y R_{N+1}^- R_N^-]`
//!
//! with `X = G_{N-1,N-1} J_{N-1,N} + G_{N-1,N-2} J_{N-2,N}` and
//! `Y = G_{N-1,N-1} J_{N-1,N+1}`. Dropping the second-band couplings gives the
//! classic tridiagonal formula.

use crate::error::{Error, Result};
use crate::greens::FiniteGreen;
use crate::potmat::{potential_matrix_with, default_quadrature_order, tail_ratio, PotentialModel, TAIL_TOLERANCE};
use crate::refsol::{
    expand_coefficients_with, overlap_operator, recursion_coefficients, reference_hamiltonian, BasisSpec,
    ExpansionCoefficients, Method, PhysicalParams, Precision,
};
use crate::linalg::SymMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest `N` for which the eigenvalue-only Green cross-check runs by
/// default in debug builds.
const CROSS_CHECK_MAX_N: usize = 64;
/// Tolerance of [`phase_shift`] on `||S| - 1|`.
pub const PHASE_UNITARITY_TOLERANCE: f64 = 1e-6;
/// Extra outer coefficients kept beyond `N + 1` for row-residual checks.
const OUTER_EXTRA: usize = 4;

/// `T_n = F_n^+ / F_n^-` and `R_n^+- = F_n^+- / F_{n-1}^+-`.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicCoefficients {
    t: Vec<Complex64>,
    r_plus: Vec<Complex64>,
    r_minus: Vec<Complex64>,
}

impl KinematicCoefficients {
    pub fn upto(&self) -> usize {
        self.t.len() - 1
    }

    pub fn t(&self, n: usize) -> Complex64 {
        self.t[n]
    }

    /// `R_n^+`, defined for `n >= 1`.
    pub fn r_plus(&self, n: usize) -> Complex64 {
        assert!(n >= 1, "R_n is defined for n >= 1");
        self.r_plus[n - 1]
    }

    /// `R_n^-`, defined for `n >= 1`.
    pub fn r_minus(&self, n: usize) -> Complex64 {
        assert!(n >= 1, "R_n is defined for n >= 1");
        self.r_minus[n - 1]
    }
}

fn usable(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite() && z.norm() > 0.0
}

pub fn kinematic_coefficients(coeffs: &ExpansionCoefficients, upto: usize) -> Result<KinematicCoefficients> {
    if upto > coeffs.n_max() {
        return Err(Error::InvalidInput(format!("upto {upto} exceeds available n_max {}", coeffs.n_max())));
    }
    let (fp, fm) = (coeffs.plus(), coeffs.minus());
    let mut t = Vec::with_capacity(upto + 1);
    let mut r_plus = Vec::with_capacity(upto);
    let mut r_minus = Vec::with_capacity(upto);
    for n in 0..=upto {
        if !usable(fm[n]) || !usable(fp[n]) {
            return Err(Error::ZeroDenominator { index: n });
        }
        t.push(fp[n] / fm[n]);
        if n >= 1 {
            r_plus.push(fp[n] / fp[n - 1]);
            r_minus.push(fm[n] / fm[n - 1]);
        }
    }
    Ok(KinematicCoefficients { t, r_plus, r_minus })
}

/// Everything the boundary formulas consume, at one energy and one `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryInputs {
    /// `G_{N-1,N-1}`
    pub g_last: f64,
    /// `G_{N-1,N-2}`
    pub g_cross: f64,
    /// `J_{N-1,N}`
    pub j_last_next: f64,
    /// `J_{N-2,N}`
    pub j_prev_next: f64,
    /// `J_{N-1,N+1}`
    pub j_last_next2: f64,
    /// `T_{N-1}`
    pub t_last: Complex64,
    /// `R_N^+`, `R_N^-`
    pub r_next: (Complex64, Complex64),
    /// `R_{N+1}^+`, `R_{N+1}^-`
    pub r_next2: (Complex64, Complex64),
}

/// Numerator and denominator brackets of the penta-diagonal formula.
pub fn boundary_brackets(b: &BoundaryInputs) -> (Complex64, Complex64) {
    let x = b.g_last * b.j_last_next + b.g_cross * b.j_prev_next;
    let y = b.g_last * b.j_last_next2;
    let bracket = |r1: Complex64, r2: Complex64| 1.0 + x * r1 + y * r2 * r1;
    (bracket(b.r_next.0, b.r_next2.0), bracket(b.r_next.1, b.r_next2.1))
}

pub fn s_from_boundary_penta(b: &BoundaryInputs) -> Complex64 {
    let (num, den) = boundary_brackets(b);
    b.t_last * num / den
}

pub fn s_from_boundary_tridiagonal(b: &BoundaryInputs) -> Complex64 {
    let x = b.g_last * b.j_last_next;
    b.t_last * (1.0 + x * b.r_next.0) / (1.0 + x * b.r_next.1)
}

/// Which boundary formula produces `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    Penta,
    Tridiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterOptions {
    /// Quadrature order for the potential matrix; `None` uses the default.
    pub quadrature_order: Option<usize>,
    /// Evaluate the Green elements a second time by the eigenvalue-only route.
    pub green_cross_check: bool,
    pub precision: Precision,
}

impl Default for ScatterOptions {
    fn default() -> Self {
        Self { quadrature_order: None, green_cross_check: cfg!(debug_assertions), precision: Precision::Double }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringResult {
    pub s: Complex64,
    /// `arg(S) / 2` in `(-pi/2, pi/2]`.
    pub delta: f64,
    pub unitarity_defect: f64,
    /// Inner-space size `N`.
    pub size: usize,
    pub basis: BasisSpec,
    pub energy: f64,
    pub k: f64,
    pub formula: Formula,
    /// Relative mismatch `|p_{N-2} - q_{N-2}|` between the solved inner
    /// system and the outer solution.
    pub boundary_defect_prev: f64,
    /// Same at `N - 1`; vanishes by construction of `S`.
    pub boundary_defect_last: f64,
    /// `|num - conj(den)| / |den|` for the two brackets.
    pub conjugacy_defect: f64,
    pub tail_ratio: f64,
    pub tail_warning: bool,
    /// Largest relative difference between spectral-sum and eigenvalue-only
    /// Green elements, when the cross-check ran.
    pub green_route_discrepancy: Option<f64>,
    /// Largest relative residual of rows `N-2 ..= N+3` of the full system.
    pub row_residual: f64,
    /// Inner coefficients `p_0 .. p_{N-1}`.
    pub inner: Vec<Complex64>,
    /// Outer coefficients `q_{N-2} ..= q_{N+1+OUTER_EXTRA}`.
    pub outer: Vec<Complex64>,
}

impl ScatteringResult {
    /// `q_n` for `n >= N - 2` as stored.
    pub fn q(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(self.size - 2).and_then(|i| self.outer.get(i).copied())
    }
}

/// `q_n = F_n^+ - S F_n^-` for `n = N-2 ..= coeffs.n_max()`.
pub fn outer_coefficients(result: &ScatteringResult, coeffs: &ExpansionCoefficients) -> Vec<Complex64> {
    (result.size - 2..=coeffs.n_max()).map(|n| coeffs.plus()[n] - result.s * coeffs.minus()[n]).collect()
}

/// `arg(S) / 2`, refusing values that are visibly non-unitary.
pub fn phase_shift(s: Complex64) -> Result<f64> {
    let defect = (s.norm() - 1.0).abs();
    if !(defect <= PHASE_UNITARITY_TOLERANCE) {
        return Err(Error::UnitarityViolation { defect });
    }
    Ok(s.arg() / 2.0)
}

/// Nearest-branch continuation of phase shifts defined modulo `pi`.
/// Non-finite entries are passed through and skipped.
pub fn unwrap_phases(deltas: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(deltas.len());
    let mut last: Option<f64> = None;
    for &d in deltas {
        if !d.is_finite() {
            out.push(d);
            continue;
        }
        let v = match last {
            Some(prev) => d - PI * ((d - prev) / PI).round(),
            None => d,
        };
        out.push(v);
        last = Some(v);
    }
    out
}

/// Difference of two phase shifts modulo `pi`, in `[-pi/2, pi/2]`.
pub fn phase_difference(a: f64, b: f64) -> f64 {
    let d = a - b;
    d - PI * (d / PI).round()
}

/// `<phi_n|(H0 + U - E)|phi_m>` for `n, m < size` at the energy in `params`.
pub fn assemble_inner_operator(
    basis: &BasisSpec,
    params: &PhysicalParams,
    model: &PotentialModel,
    size: usize,
) -> Result<SymMatrix> {
    if size < 5 {
        return Err(Error::InvalidInput(format!("inner size must be at least 5, got {size}")));
    }
    let h0 = reference_hamiltonian(basis, params, size).to_sym();
    let u = potential_matrix_with(basis, model, params.lambda(), size, default_quadrature_order(size))?;
    let omega = overlap_operator(basis, size).to_sym();
    Ok(h0.add_scaled(1.0, &u).add_scaled(-params.energy(), &omega))
}

/// Energy-independent inner problem: decomposed once, evaluated at any `k`.
#[derive(Debug)]
pub struct InnerProblem {
    basis: BasisSpec,
    params: PhysicalParams,
    size: usize,
    green: FiniteGreen,
    tail_ratio: f64,
    options: ScatterOptions,
}

impl InnerProblem {
    pub fn new(
        basis: &BasisSpec,
        params: &PhysicalParams,
        model: &PotentialModel,
        size: usize,
        options: ScatterOptions,
    ) -> Result<Self> {
        if size < 5 {
            return Err(Error::InvalidInput(format!("inner size must be at least 5, got {size}")));
        }
        let order = options.quadrature_order.unwrap_or_else(|| default_quadrature_order(size));
        let u = potential_matrix_with(basis, model, params.lambda(), size, order)?;
        let ratio = tail_ratio(&u);
        if ratio > TAIL_TOLERANCE {
            log::warn!("potential tail ratio {ratio:e} at N = {size} exceeds {TAIL_TOLERANCE:e}");
        }
        let h = reference_hamiltonian(basis, params, size).to_sym().add_scaled(1.0, &u);
        let omega = overlap_operator(basis, size).to_sym();
        let green = FiniteGreen::generalized(h, omega)?;
        Ok(Self { basis: *basis, params: *params, size, green, tail_ratio: ratio, options })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn green(&self) -> &FiniteGreen {
        &self.green
    }

    pub fn tail_ratio(&self) -> f64 {
        self.tail_ratio
    }

    /// Energies at which `S` is undefined for this `N`.
    pub fn poles(&self) -> &[f64] {
        self.green.eigenvalues()
    }

    pub fn scatter(&self, k: f64) -> Result<ScatteringResult> {
        self.scatter_with(k, Formula::Penta)
    }

    pub fn scatter_with(&self, k: f64, formula: Formula) -> Result<ScatteringResult> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidInput(format!("scattering needs k > 0, got {k}")));
        }
        let n = self.size;
        let params = self.params.with_k(k)?;
        let energy = params.energy();
        let top = n + 1 + OUTER_EXTRA;
        let coeffs = expand_coefficients_with(&self.basis, &params, top, Method::Ratio, self.options.precision)?;
        let kin = kinematic_coefficients(&coeffs, n + 1)?;
        let scale = -0.5 * params.lambda() * params.lambda();
        let coupling = |row: usize| recursion_coefficients(&self.basis, &params, row as i64);
        let (_, b_last, c_last) = coupling(n - 1);
        let (_, _, c_prev) = coupling(n - 2);

        let g_last = self.green.element(n - 1, n - 1, energy)?;
        let g_cross = self.green.element(n - 1, n - 2, energy)?;
        let inputs = BoundaryInputs {
            g_last,
            g_cross,
            j_last_next: scale * b_last,
            j_prev_next: scale * c_prev,
            j_last_next2: scale * c_last,
            t_last: kin.t(n - 1),
            r_next: (kin.r_plus(n), kin.r_minus(n)),
            r_next2: (kin.r_plus(n + 1), kin.r_minus(n + 1)),
        };
        let (num, den) = boundary_brackets(&inputs);
        let s = match formula {
            Formula::Penta => s_from_boundary_penta(&inputs),
            Formula::Tridiagonal => s_from_boundary_tridiagonal(&inputs),
        };
        let conjugacy_defect = (num - den.conj()).norm() / den.norm();

        let green_route_discrepancy = if self.options.green_cross_check && n <= CROSS_CHECK_MAX_N {
            let mut worst = 0.0f64;
            for (a, b, spectral) in [(n - 1, n - 1, g_last), (n - 1, n - 2, g_cross)] {
                let alt = self.green.element_eigenvalue_only(a, b, energy)?;
                worst = worst.max((alt - spectral).abs() / spectral.abs().max(f64::MIN_POSITIVE));
            }
            if worst > 1e-6 {
                log::warn!("Green route discrepancy {worst:e} at N = {n}, E = {energy}");
            }
            Some(worst)
        } else {
            None
        };

        let outer: Vec<Complex64> = (n - 2..=top).map(|m| coeffs.plus()[m] - s * coeffs.minus()[m]).collect();
        let q = |m: usize| outer[m - (n - 2)];
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        rhs[n - 2] = -inputs.j_prev_next * q(n);
        rhs[n - 1] = -inputs.j_last_next * q(n) - inputs.j_last_next2 * q(n + 1);
        let inner = self.green.apply(&rhs, energy)?;
        let q_scale = q(n - 2).norm().max(q(n - 1).norm());
        let boundary_defect_prev = (inner[n - 2] - q(n - 2)).norm() / q_scale;
        let boundary_defect_last = (inner[n - 1] - q(n - 1)).norm() / q_scale;
        let row_residual = self.row_residual(&params, &inner, &outer);

        Ok(ScatteringResult {
            s,
            delta: s.arg() / 2.0,
            unitarity_defect: (s.norm() - 1.0).abs(),
            size: n,
            basis: self.basis,
            energy,
            k,
            formula,
            boundary_defect_prev,
            boundary_defect_last,
            conjugacy_defect,
            tail_ratio: self.tail_ratio,
            tail_warning: self.tail_ratio > TAIL_TOLERANCE,
            green_route_discrepancy,
            row_residual,
            inner,
            outer,
        })
    }

    /// Rows `N-2 ..= N+3` of the full system with `p_j` for `j < N-2` and
    /// `q_j` from `N-2` on.
    fn row_residual(&self, params: &PhysicalParams, inner: &[Complex64], outer: &[Complex64]) -> f64 {
        let n = self.size;
        let energy = params.energy();
        let scale = -0.5 * params.lambda() * params.lambda();
        let value = |j: usize| if j + 2 < n { inner[j] } else { outer[j + 2 - n] };
        let h = self.green.hamiltonian();
        let o = self.green.overlap();
        let entry = |i: usize, j: usize| -> f64 {
            if i < n && j < n {
                h.get(i, j) - energy * o.map_or(f64::from(u8::from(i == j)), |m| m.get(i, j))
            } else {
                let (lo, hi) = (i.min(j), i.max(j));
                let (a, b, c) = recursion_coefficients(&self.basis, params, lo as i64);
                scale
                    * match hi - lo {
                        0 => a,
                        1 => b,
                        2 => c,
                        _ => 0.0,
                    }
            }
        };
        let last_col = n + 1 + OUTER_EXTRA;
        let mut worst = 0.0f64;
        for i in n - 2..=n + 3 {
            let cols: Vec<usize> = if i < n { (0..=(i + 2).min(last_col)).collect() } else { (i - 2..=i + 2).collect() };
            let mut sum = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for j in cols {
                let t = value(j) * entry(i, j);
                sum += t;
                mag += t.norm();
            }
            if mag > 0.0 {
                worst = worst.max(sum.norm() / mag);
            }
        }
        worst
    }
}

/// One-shot `S` at the `k` stored in `params`.
pub fn s_matrix(basis: &BasisSpec, params: &PhysicalParams, model: &PotentialModel, size: usize) -> Result<ScatteringResult> {
    InnerProblem::new(basis, params, model, size, ScatterOptions::default())?.scatter(params.k())
}

/// Same inputs as [`s_matrix`] but `S` from the tridiagonal formula.
pub fn s_matrix_tridiagonal_limit(
    basis: &BasisSpec,
    params: &PhysicalParams,
    model: &PotentialModel,
    size: usize,
) -> Result<ScatteringResult> {
    InnerProblem::new(basis, params, model, size, ScatterOptions::default())?.scatter_with(params.k(), Formula::Tridiagonal)
}

/// Settings of the doubling loop over `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutoSize {
    pub start: usize,
    pub max: usize,
    /// Stop when the largest phase change between successive sizes is below
    /// this value (radians).
    pub tolerance: f64,
}

#[derive(Debug)]
pub struct AutoSizeOutcome {
    pub size: usize,
    pub converged: bool,
    /// `(N, max |delta(N) - delta(N/2)|)` for every size after the first.
    pub history: Vec<(usize, f64)>,
    pub results: Vec<Result<ScatteringResult>>,
}

/// Doubles `N` from `auto.start` until the phase shifts at all `ks` change by
/// less than `auto.tolerance`, or `auto.max` is passed. `sweep` evaluates one
/// inner problem on the whole grid, so callers may parallelize it.
pub fn converge_size_with(
    basis: &BasisSpec,
    params: &PhysicalParams,
    model: &PotentialModel,
    ks: &[f64],
    auto: AutoSize,
    options: ScatterOptions,
    sweep: &dyn Fn(&InnerProblem, &[f64]) -> Vec<Result<ScatteringResult>>,
) -> Result<AutoSizeOutcome> {
    if auto.start < 5 || auto.max < auto.start || !(auto.tolerance > 0.0) {
        return Err(Error::InvalidInput("auto size needs 5 <= start <= max and tolerance > 0".into()));
    }
    let mut size = auto.start;
    let mut history = Vec::new();
    let mut prev: Option<Vec<Result<ScatteringResult>>> = None;
    loop {
        let problem = InnerProblem::new(basis, params, model, size, options)?;
        let results = sweep(&problem, ks);
        if let Some(p) = &prev {
            let change = p
                .iter()
                .zip(&results)
                .filter_map(|(a, b)| match (a, b) {
                    (Ok(a), Ok(b)) => Some(phase_difference(a.delta, b.delta).abs()),
                    _ => None,
                })
                .fold(0.0f64, f64::max);
            history.push((size, change));
            if change < auto.tolerance {
                return Ok(AutoSizeOutcome { size, converged: true, history, results });
            }
        }
        if size * 2 > auto.max {
            return Ok(AutoSizeOutcome { size, converged: false, history, results });
        }
        prev = Some(results);
        size *= 2;
    }
}

pub fn converge_size(
    basis: &BasisSpec,
    params: &PhysicalParams,
    model: &PotentialModel,
    ks: &[f64],
    auto: AutoSize,
    options: ScatterOptions,
) -> Result<AutoSizeOutcome> {
    converge_size_with(basis, params, model, ks, auto, options, &|p, ks| ks.iter().map(|&k| p.scatter(k)).collect())
}
