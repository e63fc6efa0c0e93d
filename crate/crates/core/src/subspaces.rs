//! Closed subspaces of a truncated model, held as orthonormal bases in
//! isometric coordinates, and the operations the wandering subspace
//! theory is phrased in: spans, intersections, relative orthogonal
//! complements, invariant closures, `W_α = ⋂ (S ⊖ z_{α_i} S)`, Wold
//! splittings and principal-angle comparison.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::operators::{self, CommutationReport, OperatorMatrix, ShiftTuple};
use crate::spaces::{Coeffs, SpaceModel, TruncationGrid, C64};
use crate::tolerance;

#[derive(Clone, Debug)]
pub struct Subspace {
    grid: Arc<TruncationGrid>,
    basis: CMatrix,
}

impl Subspace {
    pub fn zero(grid: Arc<TruncationGrid>) -> Self {
        let n = grid.size();
        Self { grid, basis: CMatrix::zeros(n, 0) }
    }

    pub fn full(grid: Arc<TruncationGrid>) -> Self {
        let n = grid.size();
        Self { grid, basis: CMatrix::identity(n, n) }
    }

    /// Span of the coordinate vectors at the given positions.
    pub fn coordinate(grid: Arc<TruncationGrid>, positions: &[usize]) -> Self {
        let basis = linalg::coordinate_embedding(grid.size(), positions);
        Self { grid, basis }
    }

    /// Span of columns given in isometric coordinates.
    pub fn from_isometric_columns(grid: Arc<TruncationGrid>, columns: &CMatrix, rank_tol: f64) -> Result<Self> {
        if columns.nrows() != grid.size() {
            return Err(Error::Shape(format!(
                "columns have length {}, grid has size {}",
                columns.nrows(),
                grid.size()
            )));
        }
        Ok(Self { basis: linalg::orth(columns, rank_tol), grid })
    }

    /// Span of functions given by raw Taylor coefficients.
    pub fn from_generators(model: &SpaceModel, vectors: &[Coeffs], rank_tol: f64) -> Result<Self> {
        let mut cols = CMatrix::zeros(model.size(), vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            cols.set_column(j, &model.to_isometric(v)?);
        }
        Self::from_isometric_columns(model.shared_grid(), &cols, rank_tol)
    }

    pub fn grid(&self) -> &TruncationGrid {
        &self.grid
    }

    pub fn shared_grid(&self) -> Arc<TruncationGrid> {
        Arc::clone(&self.grid)
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Orthonormal basis, one column per direction.
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// Basis vectors converted back to raw Taylor coefficients.
    pub fn raw_basis(&self, model: &SpaceModel) -> Result<Vec<Coeffs>> {
        self.basis
            .column_iter()
            .map(|c| model.from_isometric(&c.into_owned()))
            .collect()
    }

    /// `‖(I − P) v‖` for an isometric vector.
    pub fn distance_to(&self, iso: &Coeffs) -> f64 {
        (iso - &self.basis * (self.basis.adjoint() * iso)).norm()
    }

    /// Orthogonal projection of the subspace onto the interior sub-grid
    /// `{k : k_i ≤ d_i − margin}`, as a subspace of that sub-grid.
    pub fn project_to_interior(&self, margin: usize, rank_tol: f64) -> Result<Subspace> {
        let caps = self.grid.interior_caps(margin)?;
        let positions = self.grid.interior_positions(margin)?;
        let inner = Arc::new(TruncationGrid::new(caps)?);
        let rows: Vec<usize> = (0..self.dim()).collect();
        let cut = linalg::select(&self.basis, &positions, &rows);
        Ok(Subspace { basis: linalg::orth_abs(&cut, rank_tol), grid: inner })
    }

    /// Elements of the subspace supported on the interior sub-grid, kept on
    /// the full grid.
    pub fn interior_part(&self, margin: usize) -> Result<Subspace> {
        let positions = self.grid.interior_positions(margin)?;
        intersect(self, &Subspace::coordinate(self.shared_grid(), &positions))
    }

    /// Columns-orthonormality defect `‖B*B − I‖`.
    pub fn orthonormality_defect(&self) -> f64 {
        let r = self.dim();
        (self.basis.adjoint() * &self.basis - CMatrix::identity(r, r)).norm()
    }

    fn check_same_grid(&self, other: &Subspace) -> Result<()> {
        if *self.grid != *other.grid {
            return Err(Error::Shape("subspaces live on different grids".into()));
        }
        Ok(())
    }
}

/// `A ∩ B`: the directions of `A` with vanishing distance to `B`.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_same_grid(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Subspace::zero(a.shared_grid()));
    }
    let residual = &a.basis - &b.basis * (b.basis.adjoint() * &a.basis);
    let coeffs = linalg::null_space(&residual, tolerance::SPAN);
    let basis = linalg::orth(&(&a.basis * coeffs), tolerance::RANK);
    Ok(Subspace { grid: a.shared_grid(), basis })
}

/// `S ⊖ A = S ∩ A^⊥`.
pub fn ominus(s: &Subspace, a: &Subspace) -> Result<Subspace> {
    s.check_same_grid(a)?;
    if a.is_zero() || s.is_zero() {
        return Ok(s.clone());
    }
    let coeffs = linalg::null_space(&(a.basis.adjoint() * &s.basis), tolerance::SPAN);
    let basis = linalg::orth(&(&s.basis * coeffs), tolerance::RANK);
    Ok(Subspace { grid: s.shared_grid(), basis })
}

/// Principal angles between `A` and `B`, largest first; `min(dim A, dim B)`
/// of them. Small angles come from sines, large ones from cosines, so both
/// ends stay accurate.
pub fn principal_angles(a: &Subspace, b: &Subspace) -> Result<Vec<f64>> {
    a.check_same_grid(b)?;
    let (big, small) = if a.dim() >= b.dim() { (a, b) } else { (b, a) };
    if small.is_zero() {
        return Ok(Vec::new());
    }
    let cosines = linalg::singular_values(&(big.basis.adjoint() * &small.basis));
    let residual = &small.basis - &big.basis * (big.basis.adjoint() * &small.basis);
    let mut sines = linalg::singular_values(&residual);
    sines.resize(small.dim(), 0.0);
    sines.reverse();

    let mut angles: Vec<f64> = cosines
        .iter()
        .zip(&sines)
        .map(|(&c, &s)| {
            let c = c.clamp(0.0, 1.0);
            if c * c < 0.5 {
                c.acos()
            } else {
                s.clamp(0.0, 1.0).asin()
            }
        })
        .collect();
    angles.sort_by(|x, y| y.total_cmp(x));
    Ok(angles)
}

/// Largest principal angle; `π/2` when exactly one side is zero.
pub fn largest_angle(a: &Subspace, b: &Subspace) -> Result<f64> {
    if a.is_zero() != b.is_zero() {
        a.check_same_grid(b)?;
        return Ok(FRAC_PI_2);
    }
    Ok(principal_angles(a, b)?.first().copied().unwrap_or(0.0))
}

/// Equal dimensions and largest principal angle at most `tol`.
pub fn subspace_equal(a: &Subspace, b: &Subspace, tol: f64) -> Result<bool> {
    a.check_same_grid(b)?;
    Ok(a.dim() == b.dim() && largest_angle(a, b)? <= tol)
}

/// Smallest subspace containing `gens` and invariant under the given
/// matrices. New directions are found Krylov-style: only the images of the
/// directions added in the previous round are orthogonalised against the
/// current basis, so the loop ends as soon as a round adds nothing.
fn closure_under(gens: &Subspace, ops: &[&CMatrix], rank_tol: f64) -> Subspace {
    let mut basis = gens.basis.clone();
    let mut frontier = gens.basis.clone();
    // the frontier is orthonormal, so images are at most ‖op‖ long
    let scale = ops.iter().map(|op| linalg::operator_norm(op)).fold(0.0, f64::max);
    while frontier.ncols() > 0 && scale > 0.0 {
        let k = frontier.ncols();
        let mut images = CMatrix::zeros(basis.nrows(), k * ops.len());
        for (i, op) in ops.iter().enumerate() {
            images.view_mut((0, i * k), (basis.nrows(), k)).copy_from(&(*op * &frontier));
        }
        // two passes of block Gram–Schmidt
        for _ in 0..2 {
            images -= &basis * (basis.adjoint() * &images);
        }
        let fresh = linalg::orth_abs(&images, rank_tol * scale);
        // guard against leakage from poorly conditioned directions
        let fresh = linalg::orth_abs(&(&fresh - &basis * (basis.adjoint() * &fresh)), 0.5);
        if fresh.ncols() == 0 {
            break;
        }
        let mut grown = CMatrix::zeros(basis.nrows(), basis.ncols() + fresh.ncols());
        grown.view_mut((0, 0), basis.shape()).copy_from(&basis);
        grown.view_mut((0, basis.ncols()), fresh.shape()).copy_from(&fresh);
        basis = grown;
        frontier = fresh;
    }
    Subspace { grid: gens.shared_grid(), basis }
}

fn check_alpha(alpha: &[usize], n: usize) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::Argument("the variable subset α must be non-empty".into()));
    }
    if let Some(&bad) = alpha.iter().find(|&&i| i >= n) {
        return Err(Error::Range(format!("variable {bad} in α but n = {n}")));
    }
    Ok(())
}

/// `[gens]_{T_α}`: the smallest subspace containing `gens` and invariant
/// under the compressed shifts `C_i`, `i ∈ α` (zero-based variables).
pub fn invariant_closure(gens: &Subspace, alpha: &[usize], tuple: &ShiftTuple) -> Result<Subspace> {
    check_alpha(alpha, tuple.n())?;
    if *gens.grid != *tuple.model().grid() {
        return Err(Error::Shape("generators and tuple live on different grids".into()));
    }
    let ops: Vec<&CMatrix> = alpha.iter().map(|&i| tuple.shifts()[i].matrix()).collect();
    Ok(closure_under(gens, &ops, tolerance::RANK))
}

/// The image `C S` as a subspace.
pub fn image(op: &CMatrix, s: &Subspace) -> Subspace {
    let cut = tolerance::RANK * linalg::operator_norm(op);
    Subspace { grid: s.shared_grid(), basis: linalg::orth_abs(&(op * &s.basis), cut) }
}

/// `W_α^S = ⋂_{i∈α} (S ⊖ C_i S)`.
///
/// Computed twice: through `ominus`/`intersect`, and as the joint kernel
/// `S ∩ ⋂ ker R_i*` of the adjoint restrictions `R_i = P_S C_i|_S`. The two
/// must agree to within the default angle tolerance.
pub fn wandering_subspace(s: &Subspace, tuple: &ShiftTuple, alpha: &[usize]) -> Result<Subspace> {
    let by_complements = wandering_subspace_by_complements(s, tuple, alpha)?;
    let by_kernels = wandering_subspace_by_kernels(s, tuple, alpha)?;
    if !subspace_equal(&by_complements, &by_kernels, tolerance::ANGLE)? {
        return Err(Error::RouteMismatch(format!(
            "complement route gives dim {}, kernel route dim {} (largest angle {:e})",
            by_complements.dim(),
            by_kernels.dim(),
            largest_angle(&by_complements, &by_kernels)?
        )));
    }
    Ok(by_complements)
}

pub fn wandering_subspace_by_complements(s: &Subspace, tuple: &ShiftTuple, alpha: &[usize]) -> Result<Subspace> {
    check_alpha(alpha, tuple.n())?;
    let mut w: Option<Subspace> = None;
    for &i in alpha {
        let wi = ominus(s, &image(tuple.shifts()[i].matrix(), s))?;
        w = Some(match w {
            None => wi,
            Some(acc) => intersect(&acc, &wi)?,
        });
    }
    Ok(w.expect("α is non-empty"))
}

pub fn wandering_subspace_by_kernels(s: &Subspace, tuple: &ShiftTuple, alpha: &[usize]) -> Result<Subspace> {
    check_alpha(alpha, tuple.n())?;
    let r = s.dim();
    if r == 0 {
        return Ok(s.clone());
    }
    let mut stacked = CMatrix::zeros(alpha.len() * r, r);
    for (slot, &i) in alpha.iter().enumerate() {
        let restricted = s.basis.adjoint() * tuple.shifts()[i].matrix() * &s.basis;
        stacked.view_mut((slot * r, 0), (r, r)).copy_from(&restricted.adjoint());
    }
    let coeffs = linalg::null_space(&stacked, tolerance::SPAN);
    Ok(Subspace { grid: s.shared_grid(), basis: linalg::orth(&(&s.basis * coeffs), tolerance::RANK) })
}

/// The tuple `(P_S C_1|_S, …, P_S C_n|_S)` in coordinates of the basis of
/// `S`, together with how far each `C_i` actually moves `S` out of itself.
#[derive(Clone, Debug)]
pub struct ShiftRestriction {
    subspace: Subspace,
    restrictions: Vec<CMatrix>,
    invariance_defects: Vec<f64>,
    margin: usize,
    // orthonormal basis (in S-coordinates) of the elements of S supported
    // on the interior sub-grid
    interior: CMatrix,
}

impl ShiftRestriction {
    pub fn new(tuple: &ShiftTuple, subspace: &Subspace) -> Result<Self> {
        if *subspace.grid != *tuple.model().grid() {
            return Err(Error::Shape("subspace and tuple live on different grids".into()));
        }
        let b = &subspace.basis;
        let mut restrictions = Vec::with_capacity(tuple.n());
        let mut invariance_defects = Vec::with_capacity(tuple.n());
        for shift in tuple.shifts() {
            let moved = shift.matrix() * b;
            let inside = b.adjoint() * &moved;
            invariance_defects.push(linalg::operator_norm(&(moved - b * &inside)));
            restrictions.push(inside);
        }
        let interior_part = subspace.interior_part(tuple.margin())?;
        let interior = linalg::orth(&(b.adjoint() * interior_part.basis()), tolerance::RANK);
        Ok(Self {
            subspace: subspace.clone(),
            restrictions,
            invariance_defects,
            margin: tuple.margin(),
            interior,
        })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn restrictions(&self) -> &[CMatrix] {
        &self.restrictions
    }

    /// `‖(I − P_S) C_i P_S‖` per variable.
    pub fn invariance_defects(&self) -> &[f64] {
        &self.invariance_defects
    }

    pub fn max_invariance_defect(&self) -> f64 {
        self.invariance_defects.iter().copied().fold(0.0, f64::max)
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Embedding of the interior part of `S` in `S`-coordinates.
    pub fn interior_embedding(&self) -> &CMatrix {
        &self.interior
    }

    pub fn check_doubly_commuting(&self, tol: f64) -> Result<CommutationReport> {
        let (residual, worst_pair) = operators::doubly_commuting_residual(&self.restrictions, &self.interior)?;
        Ok(CommutationReport { residual, worst_pair, tolerance: tol, pass: residual <= tol })
    }

    /// Residual of `R_i (R_j* R_j) = (R_j* R_j) R_i` on the interior of `S`.
    pub fn modulus_residual(&self, i: usize, j: usize) -> Result<f64> {
        let (a, b) = match (self.restrictions.get(i), self.restrictions.get(j)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Range(format!("variables ({i}, {j}) out of range"))),
        };
        Ok(operators::modulus_commutator_residual(a, b, &self.interior))
    }

    /// `(‖(I − P_W) R_j P_W‖, ‖(I − P_W) R_j* P_W‖)` for `W ⊆ S`, with the
    /// right-hand `P_W` restricted to the interior part of `W`.
    pub fn reducing_residuals(&self, w: &Subspace, j: usize) -> Result<(f64, f64)> {
        let r = self
            .restrictions
            .get(j)
            .ok_or_else(|| Error::Range(format!("variable {j} out of range")))?;
        if *w.grid != *self.subspace.grid {
            return Err(Error::Shape("W and S live on different grids".into()));
        }
        let b = &self.subspace.basis;
        let ws = b.adjoint() * &w.basis;
        let wi = b.adjoint() * w.interior_part(self.margin)?.basis();
        if wi.ncols() == 0 {
            return Ok((0.0, 0.0));
        }
        let outside = CMatrix::identity(b.ncols(), b.ncols()) - &ws * ws.adjoint();
        let inv = linalg::operator_norm(&(&outside * r * &wi));
        let coinv = linalg::operator_norm(&(&outside * r.adjoint() * &wi));
        Ok((inv, coinv))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WanderingReport {
    /// `max ‖P_W C^l P_W‖` over `0 < |l| ≤ depth`, `l` supported on `α`.
    pub orthogonality_residual: f64,
    pub depth: usize,
    /// `‖(I − P_S) P_W‖`.
    pub containment_residual: f64,
    /// Largest principal angle between the interior projections of
    /// `[W]_{T_α}` and `S`.
    pub closure_angle: f64,
    pub closure_dim_interior: usize,
    pub subspace_dim_interior: usize,
    pub orthogonality_pass: bool,
    pub closure_pass: bool,
    pub pass: bool,
}

impl WanderingReport {
    /// `dim(interior S) − dim(interior [W])`, clamped at zero.
    pub fn closure_deficit(&self) -> usize {
        self.subspace_dim_interior.saturating_sub(self.closure_dim_interior)
    }
}

/// All exponent vectors supported on `alpha` with `1 ≤ |l| ≤ depth`,
/// graded by total degree.
pub fn multi_exponents(n: usize, alpha: &[usize], depth: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer = vec![vec![0usize; n]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for l in &layer {
            // raise only variables at or after the last raised one so each
            // exponent is produced once
            let last = alpha.iter().rposition(|&i| l[i] > 0).unwrap_or(0);
            for &i in &alpha[last..] {
                let mut m = l.clone();
                m[i] += 1;
                next.push(m);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Checks that `W` is wandering for `(C_i)_{i∈α}` on `S`: `W ⊥ C^l W` for all
/// `0 < |l| ≤ depth`, and `[W]_{T_α}` equals `S` once both are projected to
/// the interior grid of the tuple's margin.
///
/// The compressed powers `C^l` agree with `P_{F_d} z^l` exactly, so the
/// orthogonality part is truncation-exact at any depth; the depth is only
/// capped by the grid (beyond the smallest cap in `α`, pure powers vanish
/// identically and the check degenerates).
pub fn check_wandering(
    s: &Subspace,
    tuple: &ShiftTuple,
    alpha: &[usize],
    w: &Subspace,
    depth: usize,
    tol: &tolerance::Tolerances,
) -> Result<WanderingReport> {
    check_alpha(alpha, tuple.n())?;
    s.check_same_grid(w)?;
    let caps = tuple.model().grid().caps();
    let capacity = alpha.iter().map(|&i| caps[i]).min().unwrap_or(0);
    if depth == 0 || depth > capacity {
        return Err(Error::Config(format!(
            "orthogonality depth {depth} must lie in 1..={capacity} for caps {caps:?}"
        )));
    }

    let containment_residual = linalg::operator_norm(&(&w.basis - &s.basis * (s.basis.adjoint() * &w.basis)));

    let mut orthogonality_residual: f64 = 0.0;
    if !w.is_zero() {
        // images C^l B_W, grown one shift at a time along the same ordering
        // as `multi_exponents`
        let mut layer: Vec<(Vec<usize>, CMatrix)> = vec![(vec![0; tuple.n()], w.basis.clone())];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (l, img) in &layer {
                let last = alpha.iter().rposition(|&i| l[i] > 0).unwrap_or(0);
                for &i in &alpha[last..] {
                    let mut m = l.clone();
                    m[i] += 1;
                    let moved = tuple.shifts()[i].matrix() * img;
                    orthogonality_residual =
                        orthogonality_residual.max(linalg::operator_norm(&(w.basis.adjoint() * &moved)));
                    next.push((m, moved));
                }
            }
            layer = next;
        }
    }

    let closure = invariant_closure(w, alpha, tuple)?;
    let margin = tuple.margin();
    let closure_inner = closure.project_to_interior(margin, tol.rank)?;
    let s_inner = s.project_to_interior(margin, tol.rank)?;
    let closure_angle = largest_angle(&closure_inner, &s_inner)?;

    let orthogonality_pass = orthogonality_residual <= tol.residual && containment_residual <= tol.residual;
    let closure_pass = closure_inner.dim() == s_inner.dim() && closure_angle <= tol.angle;
    Ok(WanderingReport {
        orthogonality_residual,
        depth,
        containment_residual,
        closure_angle,
        closure_dim_interior: closure_inner.dim(),
        subspace_dim_interior: s_inner.dim(),
        orthogonality_pass,
        closure_pass,
        pass: orthogonality_pass && closure_pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WoldReport {
    pub invariance_defect: f64,
    pub wandering_dim: usize,
    pub closure_dim: usize,
    pub residual_dim: usize,
    pub subspace_dim: usize,
    /// `‖B_closure* B_residual‖`.
    pub parts_orthogonality: f64,
    /// Largest principal angle between `closure ⊕ residual` and `S` on the
    /// interior.
    pub sum_angle: f64,
    pub sum_dim_interior: usize,
    pub subspace_dim_interior: usize,
    /// `T` is nilpotent on the grid, so an empty residual part is forced by
    /// the truncation and says nothing about the untruncated operator.
    pub nilpotent_truncation: bool,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct WoldSplit {
    /// `[S ⊖ TS]_T`.
    pub closure: Subspace,
    /// `⋂_{m≥1} T^m S`.
    pub residual: Subspace,
    pub report: WoldReport,
}

/// Wold-type splitting of an invariant subspace `S` for one operator `T` on
/// its grid. `margin` selects the interior on which the sum of the two
/// parts is compared with `S`.
pub fn wold(s: &Subspace, t: &OperatorMatrix, margin: usize, tol: &tolerance::Tolerances) -> Result<WoldSplit> {
    if !t.is_square() || *s.grid != *t.domain() {
        return Err(Error::Shape("operator must act on the subspace's grid".into()));
    }
    let m = t.matrix();
    let moved = m * &s.basis;
    let invariance_defect = linalg::operator_norm(&(&moved - &s.basis * (s.basis.adjoint() * &moved)));

    let w = ominus(s, &image(m, s))?;
    let closure = closure_under(&w, &[m], tol.rank);

    // ⋂ T^m S by iterated intersection of ranges until the dimension settles
    let mut residual = intersect(s, &image(m, s))?;
    loop {
        let next = intersect(&residual, &image(m, &residual))?;
        if next.dim() == residual.dim() {
            break;
        }
        residual = next;
    }

    let parts_orthogonality = linalg::operator_norm(&(closure.basis.adjoint() * &residual.basis));
    let mut both = CMatrix::zeros(s.grid.size(), closure.dim() + residual.dim());
    both.view_mut((0, 0), closure.basis.shape()).copy_from(&closure.basis);
    both.view_mut((0, closure.dim()), residual.basis.shape()).copy_from(&residual.basis);
    let sum = Subspace { grid: s.shared_grid(), basis: linalg::orth_abs(&both, tol.rank) };
    let sum_inner = sum.project_to_interior(margin, tol.rank)?;
    let s_inner = s.project_to_interior(margin, tol.rank)?;
    let sum_angle = largest_angle(&sum_inner, &s_inner)?;

    let proxy = operators::analyticity_proxy(t, s.grid.size() + 1)?;
    let pass = invariance_defect <= tol.residual
        && parts_orthogonality <= tol.residual
        && sum_inner.dim() == s_inner.dim()
        && sum_angle <= tol.angle;
    let report = WoldReport {
        invariance_defect,
        wandering_dim: w.dim(),
        closure_dim: closure.dim(),
        residual_dim: residual.dim(),
        subspace_dim: s.dim(),
        parts_orthogonality,
        sum_angle,
        sum_dim_interior: sum_inner.dim(),
        subspace_dim_interior: s_inner.dim(),
        nilpotent_truncation: proxy.vanishes_at.is_some(),
        pass,
    };
    Ok(WoldSplit { closure, residual, report })
}

/// `(‖(I − P_W) T P_W E‖, ‖(I − P_W) T* P_W E‖)` with `E` the interior
/// coordinates of the margin: how far `T` and `T*` move `W` out of itself.
pub fn reducing_check(w: &Subspace, t: &OperatorMatrix, margin: usize) -> Result<(f64, f64)> {
    if !t.is_square() || *w.grid != *t.domain() {
        return Err(Error::Shape("operator must act on the subspace's grid".into()));
    }
    if w.is_zero() {
        return Ok((0.0, 0.0));
    }
    let interior = w.grid.interior_positions(margin)?;
    let embed = linalg::coordinate_embedding(w.grid.size(), &interior);
    let n = w.grid.size();
    let outside = CMatrix::identity(n, n) - w.projector();
    let pw_e = w.projector() * embed;
    let inv = linalg::operator_norm(&(&outside * t.matrix() * &pw_e));
    let coinv = linalg::operator_norm(&(&outside * t.matrix().adjoint() * &pw_e));
    Ok((inv, coinv))
}

/// Convenience for unit vectors in isometric coordinates.
pub fn unit_isometric(model: &SpaceModel, raw: &Coeffs) -> Result<Coeffs> {
    let iso = model.to_isometric(raw)?;
    let norm = iso.norm();
    if norm == 0.0 {
        return Err(Error::Argument("zero vector has no direction".into()));
    }
    Ok(iso / C64::new(norm, 0.0))
}
