//! Coordinate shifts on truncated models, their adjoints, and certified
//! checks of the operator inequalities and commutation relations behind
//! the wandering subspace theorems.
//!
//! Every matrix is stored in isometric coordinates, so the Hilbert-space
//! adjoint is the conjugate transpose and operator norms are spectral norms.
//! Checks that involve a shift only quantify over the *interior* of the
//! grid (caps reduced by a margin), where the compressed shift agrees with
//! multiplication by `z_i` on the untruncated space.

use std::ops::Mul;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::spaces::{SpaceModel, TruncationGrid, C64};

/// A linear map between two truncation grids, in isometric coordinates.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    domain: Arc<TruncationGrid>,
    codomain: Arc<TruncationGrid>,
    matrix: CMatrix,
}

impl OperatorMatrix {
    pub fn new(domain: Arc<TruncationGrid>, codomain: Arc<TruncationGrid>, matrix: CMatrix) -> Result<Self> {
        if matrix.shape() != (codomain.size(), domain.size()) {
            return Err(Error::Shape(format!(
                "matrix is {:?}, grids need {}x{}",
                matrix.shape(),
                codomain.size(),
                domain.size()
            )));
        }
        Ok(Self { domain, codomain, matrix })
    }

    pub fn identity(grid: Arc<TruncationGrid>) -> Self {
        let n = grid.size();
        Self { domain: Arc::clone(&grid), codomain: grid, matrix: CMatrix::identity(n, n) }
    }

    pub fn domain(&self) -> &TruncationGrid {
        &self.domain
    }

    pub fn codomain(&self) -> &TruncationGrid {
        &self.codomain
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_square(&self) -> bool {
        self.domain == self.codomain
    }

    /// Conjugate transpose; the Hilbert-space adjoint in isometric coordinates.
    pub fn adjoint(&self) -> Self {
        Self {
            domain: Arc::clone(&self.codomain),
            codomain: Arc::clone(&self.domain),
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<Self> {
        if *rhs.codomain != *self.domain {
            return Err(Error::Shape("composition of operators on different grids".into()));
        }
        Ok(Self {
            domain: Arc::clone(&rhs.domain),
            codomain: Arc::clone(&self.codomain),
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self { matrix: &self.matrix * c, ..self.clone() }
    }

    /// `T^p` for a square operator.
    pub fn power(&self, p: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square operator".into()));
        }
        let mut acc = Self::identity(Arc::clone(&self.domain));
        for _ in 0..p {
            acc.matrix = &self.matrix * &acc.matrix;
        }
        Ok(acc)
    }

    /// Apply to a vector given in isometric coordinates.
    pub fn apply(&self, iso: &crate::spaces::Coeffs) -> Result<crate::spaces::Coeffs> {
        if iso.len() != self.domain.size() {
            return Err(Error::Shape("vector length does not match operator domain".into()));
        }
        Ok(&self.matrix * iso)
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.compose(rhs).expect("operator grids must match")
    }
}

fn check_var(model: &SpaceModel, var: usize) -> Result<()> {
    if var >= model.n() {
        return Err(Error::Range(format!("variable {var} but the model has n = {}", model.n())));
    }
    Ok(())
}

/// Multiplication by `z_var` (zero-based) from `F_d` into `F_{d+e_var}`,
/// with no truncation loss.
pub fn shift_exact(model: &SpaceModel, var: usize) -> Result<OperatorMatrix> {
    check_var(model, var)?;
    let mut caps = model.grid().caps().to_vec();
    caps[var] += 1;
    let target = model.with_caps(caps)?;
    let src = model.grid();
    let mut m = CMatrix::zeros(target.size(), src.size());
    for (col, k) in src.indices().iter().enumerate() {
        let up = k.raised(var);
        let row = target.grid().position(&up).expect("raised index lies in the enlarged grid");
        m[(row, col)] = C64::new((target.weight_at(row) / model.weight_at(col)).sqrt(), 0.0);
    }
    OperatorMatrix::new(model.shared_grid(), target.shared_grid(), m)
}

/// Multiplication by `z_var` followed by dropping monomials whose exponent
/// in `var` exceeds the cap.
pub fn shift_compressed(model: &SpaceModel, var: usize) -> Result<OperatorMatrix> {
    check_var(model, var)?;
    let grid = model.grid();
    let mut m = CMatrix::zeros(grid.size(), grid.size());
    for (col, k) in grid.indices().iter().enumerate() {
        if let Some(row) = grid.position(&k.raised(var)) {
            m[(row, col)] = C64::new((model.weight_at(row) / model.weight_at(col)).sqrt(), 0.0);
        }
    }
    OperatorMatrix::new(model.shared_grid(), model.shared_grid(), m)
}

/// Which operator inequality an [`InequalityReport`] certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InequalityKind {
    /// `‖Tx + y‖² ≤ 2(‖x‖² + ‖Ty‖²)`
    Shimorin,
    /// `‖T²x‖² + ‖x‖² ≤ 2‖Tx‖²`
    Concave,
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub psd: bool,
    pub tolerance: f64,
    pub interior_dim: usize,
}

impl InequalityReport {
    fn from_form(kind: InequalityKind, form: &CMatrix, tolerance: f64, interior_dim: usize) -> Self {
        let ev = linalg::hermitian_eigenvalues(form);
        let min_eigenvalue = ev.first().copied().unwrap_or(0.0);
        let max_eigenvalue = ev.last().copied().unwrap_or(0.0);
        Self {
            kind,
            min_eigenvalue,
            max_eigenvalue,
            psd: min_eigenvalue >= -tolerance,
            tolerance,
            interior_dim,
        }
    }
}

fn square_interior(t: &OperatorMatrix, margin: usize, min_margin: usize) -> Result<Vec<usize>> {
    if !t.is_square() {
        return Err(Error::Shape("inequality checks need an operator on a single grid".into()));
    }
    if margin < min_margin {
        return Err(Error::Config(format!(
            "margin {margin} is below the {min_margin} shift application(s) in the inequality"
        )));
    }
    let interior = t.domain().interior_positions(margin)?;
    if interior.is_empty() {
        return Err(Error::Config("empty interior".into()));
    }
    Ok(interior)
}

/// Certifies `2‖x‖² + 2‖Ty‖² − ‖Tx + y‖² ≥ 0` for all interior `x, y` through
/// the minimum eigenvalue of the Hermitian block form
/// `[[2I − T*T, −T*], [−T, 2T*T − I]]` compressed to the interior.
pub fn check_shimorin(t: &OperatorMatrix, margin: usize, tol: f64) -> Result<InequalityReport> {
    let p = square_interior(t, margin, 1)?;
    let m = t.matrix();
    let n = m.nrows();
    let id = CMatrix::identity(n, n);
    let two = C64::new(2.0, 0.0);
    let gram = m.adjoint() * m;

    let a = linalg::select(&(&id * two - &gram), &p, &p);
    let b = linalg::select(&(-m.adjoint()), &p, &p);
    let c = linalg::select(&(-m), &p, &p);
    let d = linalg::select(&(&gram * two - &id), &p, &p);

    let k = p.len();
    let mut form = CMatrix::zeros(2 * k, 2 * k);
    form.view_mut((0, 0), (k, k)).copy_from(&a);
    form.view_mut((0, k), (k, k)).copy_from(&b);
    form.view_mut((k, 0), (k, k)).copy_from(&c);
    form.view_mut((k, k), (k, k)).copy_from(&d);
    Ok(InequalityReport::from_form(InequalityKind::Shimorin, &form, tol, k))
}

/// Certifies `2T*T − T*²T² − I ⪰ 0` on the interior.
pub fn check_concave(t: &OperatorMatrix, margin: usize, tol: f64) -> Result<InequalityReport> {
    let p = square_interior(t, margin, 2)?;
    Ok(InequalityReport::from_form(InequalityKind::Concave, &concavity_form(t, &p), tol, p.len()))
}

/// The concavity form `2T*T − T*²T² − I` restricted to the given positions.
pub fn concavity_form(t: &OperatorMatrix, positions: &[usize]) -> CMatrix {
    let m = t.matrix();
    let n = m.nrows();
    let sq = m * m;
    let form = m.adjoint() * m * C64::new(2.0, 0.0) - sq.adjoint() * &sq - CMatrix::identity(n, n);
    linalg::select(&form, positions, positions)
}

/// The compressed coordinate shifts `C_1, …, C_n` of a model, with the
/// margin that defines where they are exact.
#[derive(Clone, Debug)]
pub struct ShiftTuple {
    model: SpaceModel,
    shifts: Vec<OperatorMatrix>,
    margin: usize,
}

impl ShiftTuple {
    pub fn new(model: SpaceModel, margin: usize) -> Result<Self> {
        let shifts = (0..model.n())
            .map(|i| shift_compressed(&model, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { model, shifts, margin })
    }

    pub fn model(&self) -> &SpaceModel {
        &self.model
    }

    pub fn n(&self) -> usize {
        self.shifts.len()
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn shift(&self, var: usize) -> Result<&OperatorMatrix> {
        self.shifts
            .get(var)
            .ok_or_else(|| Error::Range(format!("variable {var} but the tuple has n = {}", self.n())))
    }

    pub fn shifts(&self) -> &[OperatorMatrix] {
        &self.shifts
    }

    pub fn interior_positions(&self) -> Result<Vec<usize>> {
        self.model.grid().interior_positions(self.margin)
    }

    /// `C^l = Π C_i^{l_i}` for a full exponent vector `l`.
    pub fn monomial_operator(&self, exponents: &[usize]) -> Result<CMatrix> {
        if exponents.len() != self.n() {
            return Err(Error::Shape("exponent vector length differs from n".into()));
        }
        let size = self.model.size();
        let mut acc = CMatrix::identity(size, size);
        for (var, &p) in exponents.iter().enumerate() {
            for _ in 0..p {
                acc = self.shifts[var].matrix() * acc;
            }
        }
        Ok(acc)
    }
}

/// Result of a commutation check.
#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub residual: f64,
    pub worst_pair: Option<(usize, usize)>,
    pub tolerance: f64,
    pub pass: bool,
}

/// `max_{i<j} ‖E*(A_i A_j* − A_j* A_i)E‖` for operators on a common space,
/// with `E` an isometric embedding of the interior.
pub fn doubly_commuting_residual(ops: &[CMatrix], embed: &CMatrix) -> Result<(f64, Option<(usize, usize)>)> {
    if ops.len() < 2 {
        return Err(Error::NotApplicable("double commutativity needs at least two operators".into()));
    }
    let mut worst = (0.0, None);
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let comm = &ops[i] * ops[j].adjoint() - ops[j].adjoint() * &ops[i];
            let r = linalg::operator_norm(&(embed.adjoint() * comm * embed));
            if worst.1.is_none() || r > worst.0 {
                worst = (r, Some((i, j)));
            }
        }
    }
    Ok(worst)
}

/// Double commutativity of the full compressed shift tuple on its interior.
pub fn check_doubly_commuting(tuple: &ShiftTuple, tol: f64) -> Result<CommutationReport> {
    let interior = tuple.interior_positions()?;
    let embed = linalg::coordinate_embedding(tuple.model().size(), &interior);
    let ops: Vec<CMatrix> = tuple.shifts().iter().map(|s| s.matrix().clone()).collect();
    let (residual, worst_pair) = doubly_commuting_residual(&ops, &embed)?;
    Ok(CommutationReport { residual, worst_pair, tolerance: tol, pass: residual <= tol })
}

/// `‖E*(A (B*B) − (B*B) A)E‖`.
pub fn modulus_commutator_residual(a: &CMatrix, b: &CMatrix, embed: &CMatrix) -> f64 {
    let modulus = b.adjoint() * b;
    let comm = a * &modulus - &modulus * a;
    linalg::operator_norm(&(embed.adjoint() * comm * embed))
}

/// Residual of `T_i (T_j* T_j) = (T_j* T_j) T_i` on the interior of the
/// common grid.
pub fn commutes_with_modulus(ti: &OperatorMatrix, tj: &OperatorMatrix, margin: usize) -> Result<f64> {
    if !ti.is_square() || !tj.is_square() || ti.domain() != tj.domain() {
        return Err(Error::Shape("operators must act on the same grid".into()));
    }
    let interior = ti.domain().interior_positions(margin)?;
    let embed = linalg::coordinate_embedding(ti.domain().size(), &interior);
    Ok(modulus_commutator_residual(ti.matrix(), tj.matrix(), &embed))
}

/// Rank decay of `T^m`. On a finite grid every compressed shift is
/// nilpotent, so this is only a truncation proxy for `⋂ T^m H = {0}`; it
/// separates shift-like operators from ones with a non-vanishing core
/// (the identity, for instance) but proves nothing about the untruncated
/// operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyticityProxy {
    /// `rank(T^m)` for `m = 1..=max_power`, stopping at the first zero.
    pub ranks: Vec<usize>,
    /// First `m` with `T^m = 0`, if reached.
    pub vanishes_at: Option<usize>,
}

pub fn analyticity_proxy(t: &OperatorMatrix, max_power: usize) -> Result<AnalyticityProxy> {
    if !t.is_square() {
        return Err(Error::Shape("analyticity proxy needs a square operator".into()));
    }
    let scale = linalg::operator_norm(t.matrix()).max(1.0);
    let mut ranks = Vec::with_capacity(max_power);
    let mut pow = t.matrix().clone();
    let mut vanishes_at = None;
    for m in 1..=max_power {
        let r = linalg::rank(&pow, 1e-10 * scale.powi(m as i32));
        ranks.push(r);
        if r == 0 {
            vanishes_at = Some(m);
            break;
        }
        pow = t.matrix() * pow;
    }
    Ok(AnalyticityProxy { ranks, vanishes_at })
}
