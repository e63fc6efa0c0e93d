//! Multi-index bookkeeping and the weighted coefficient models of the Hardy,
//! Bergman and Dirichlet spaces over the polydisc, truncated to a box of
//! monomial exponents.
//!
//! A function `f = Σ f_k z^k` is stored by its raw Taylor coefficients. The
//! squared norm of a monomial is a product of one-variable weights,
//!
//! | space     | ω(m)        |
//! |-----------|-------------|
//! | Hardy     | 1           |
//! | Bergman   | 1 / (m + 1) |
//! | Dirichlet | m + 1       |
//!
//! and `⟨f, g⟩ = Σ_k w(k) f_k conj(g_k)` with `w(k) = Π_i ω_i(k_i)`.
//! Operators and subspaces elsewhere in the crate work in *isometric
//! coordinates* `c_k = sqrt(w(k)) f_k`, where this inner product becomes the
//! Euclidean one.

use std::fmt;
use std::sync::Arc;

use nalgebra::{Complex, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Coefficient vector indexed by a grid's enumeration.
pub type Coeffs = DVector<C64>;

/// Exponent tuple of a monomial `z_1^{k_1} ⋯ z_n^{k_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(exponents: Vec<usize>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Argument("multi-index must have at least one entry".into()));
        }
        Ok(Self(exponents))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n.max(1)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Total degree `|k|`.
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// `k + e_i` (zero-based variable).
    pub fn raised(&self, var: usize) -> Self {
        let mut k = self.0.clone();
        k[var] += 1;
        Self(k)
    }

    /// `k - e_i`, or `None` when `k_i = 0`.
    pub fn lowered(&self, var: usize) -> Option<Self> {
        let mut k = self.0.clone();
        k[var] = k[var].checked_sub(1)?;
        Some(Self(k))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl From<&[usize]> for MultiIndex {
    fn from(k: &[usize]) -> Self {
        Self(k.to_vec())
    }
}

/// The box `{k : 0 ≤ k_i ≤ d_i}` of exponents, enumerated in graded
/// lexicographic order (total degree first, then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationGrid {
    caps: Vec<usize>,
    indices: Vec<MultiIndex>,
    // mixed-radix code of k -> position in `indices`
    strides: Vec<usize>,
    position_of_code: Vec<usize>,
}

impl TruncationGrid {
    pub fn new(caps: Vec<usize>) -> Result<Self> {
        if caps.is_empty() {
            return Err(Error::Argument("grid needs at least one variable".into()));
        }
        let n = caps.len();
        let mut strides = vec![1usize; n];
        for i in (0..n - 1).rev() {
            strides[i] = strides[i + 1] * (caps[i + 1] + 1);
        }
        let size = strides[0] * (caps[0] + 1);

        let mut indices: Vec<MultiIndex> = (0..size)
            .map(|code| {
                let k = (0..n).map(|i| (code / strides[i]) % (caps[i] + 1)).collect();
                MultiIndex(k)
            })
            .collect();
        indices.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));

        let mut position_of_code = vec![0; size];
        for (pos, k) in indices.iter().enumerate() {
            let code: usize = k.0.iter().zip(&strides).map(|(a, s)| a * s).sum();
            position_of_code[code] = pos;
        }
        Ok(Self { caps, indices, strides, position_of_code })
    }

    pub fn n(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    /// Basis size `Π (d_i + 1)`.
    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn index(&self, pos: usize) -> &MultiIndex {
        &self.indices[pos]
    }

    pub fn contains(&self, k: &MultiIndex) -> bool {
        k.len() == self.n() && k.0.iter().zip(&self.caps).all(|(a, d)| a <= d)
    }

    pub fn position(&self, k: &MultiIndex) -> Option<usize> {
        if !self.contains(k) {
            return None;
        }
        let code: usize = k.0.iter().zip(&self.strides).map(|(a, s)| a * s).sum();
        Some(self.position_of_code[code])
    }

    /// Caps reduced by `margin` in every variable.
    pub fn interior_caps(&self, margin: usize) -> Result<Vec<usize>> {
        self.caps
            .iter()
            .map(|&d| d.checked_sub(margin))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::Config(format!(
                    "margin {margin} leaves an empty interior for caps {:?}",
                    self.caps
                ))
            })
    }

    /// Positions of the interior sub-grid `{k : k_i ≤ d_i - margin}`, in
    /// enumeration order.
    pub fn interior_positions(&self, margin: usize) -> Result<Vec<usize>> {
        let inner = self.interior_caps(margin)?;
        Ok(self.positions_where(|k| k.0.iter().zip(&inner).all(|(a, d)| a <= d)))
    }

    pub fn positions_where(&self, mut keep: impl FnMut(&MultiIndex) -> bool) -> Vec<usize> {
        self.indices
            .iter()
            .enumerate()
            .filter_map(|(pos, k)| keep(k).then_some(pos))
            .collect()
    }
}

/// Enumerates the grid's monomial exponents in graded-lex order.
pub fn enumerate_basis(grid: &TruncationGrid) -> Vec<MultiIndex> {
    grid.indices().to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Hardy,
    Bergman,
    Dirichlet,
    /// Per-variable weight sequences `ω_i(0..=d_i)`.
    Custom(Vec<Vec<f64>>),
}

impl SpaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::Hardy => "hardy",
            SpaceKind::Bergman => "bergman",
            SpaceKind::Dirichlet => "dirichlet",
            SpaceKind::Custom(_) => "custom",
        }
    }

    /// `ω_var(m)`, the squared norm of `z_var^m` in one variable.
    pub fn one_variable_weight(&self, var: usize, m: usize) -> Result<f64> {
        let m_f = m as f64;
        match self {
            SpaceKind::Hardy => Ok(1.0),
            SpaceKind::Bergman => Ok(1.0 / (m_f + 1.0)),
            SpaceKind::Dirichlet => Ok(m_f + 1.0),
            SpaceKind::Custom(seqs) => seqs
                .get(var)
                .and_then(|s| s.get(m))
                .copied()
                .ok_or_else(|| {
                    Error::Range(format!("custom weights missing for variable {var}, exponent {m}"))
                }),
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A truncated weighted-monomial space: kind, grid, and the monomial
/// weights in enumeration order.
#[derive(Clone, Debug)]
pub struct SpaceModel {
    kind: SpaceKind,
    grid: Arc<TruncationGrid>,
    weights: Vec<f64>,
}

impl SpaceModel {
    pub fn new(kind: SpaceKind, caps: Vec<usize>) -> Result<Self> {
        let grid = TruncationGrid::new(caps)?;
        if let SpaceKind::Custom(seqs) = &kind {
            if seqs.len() != grid.n() {
                return Err(Error::Shape(format!(
                    "custom weights given for {} variables, grid has {}",
                    seqs.len(),
                    grid.n()
                )));
            }
            if let Some(bad) = seqs.iter().flatten().find(|w| !(w.is_finite() && **w > 0.0)) {
                return Err(Error::Argument(format!("custom weight {bad} is not positive and finite")));
            }
        }
        let weights = grid
            .indices()
            .iter()
            .map(|k| {
                k.as_slice()
                    .iter()
                    .enumerate()
                    .map(|(var, &m)| kind.one_variable_weight(var, m))
                    .product::<Result<f64>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { kind, grid: Arc::new(grid), weights })
    }

    /// Same space kind on a different box.
    pub fn with_caps(&self, caps: Vec<usize>) -> Result<Self> {
        Self::new(self.kind.clone(), caps)
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn grid(&self) -> &TruncationGrid {
        &self.grid
    }

    pub fn shared_grid(&self) -> Arc<TruncationGrid> {
        Arc::clone(&self.grid)
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn size(&self) -> usize {
        self.grid.size()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_at(&self, pos: usize) -> f64 {
        self.weights[pos]
    }

    /// `‖z^k‖²`.
    pub fn monomial_weight(&self, k: &MultiIndex) -> Result<f64> {
        self.grid
            .position(k)
            .map(|p| self.weights[p])
            .ok_or_else(|| Error::Range(format!("{k} is outside caps {:?}", self.grid.caps())))
    }

    fn check_len(&self, v: &Coeffs) -> Result<()> {
        if v.len() != self.size() {
            return Err(Error::Shape(format!(
                "vector of length {} on a grid of size {}",
                v.len(),
                self.size()
            )));
        }
        Ok(())
    }

    pub fn inner_product(&self, f: &Coeffs, g: &Coeffs) -> Result<C64> {
        self.check_len(f)?;
        self.check_len(g)?;
        Ok(f.iter()
            .zip(g.iter())
            .zip(&self.weights)
            .map(|((a, b), w)| a * b.conj() * *w)
            .sum())
    }

    pub fn norm_squared(&self, f: &Coeffs) -> Result<f64> {
        Ok(self.inner_product(f, f)?.re)
    }

    pub fn to_isometric(&self, f: &Coeffs) -> Result<Coeffs> {
        self.check_len(f)?;
        Ok(Coeffs::from_iterator(
            f.len(),
            f.iter().zip(&self.weights).map(|(a, w)| a * w.sqrt()),
        ))
    }

    pub fn from_isometric(&self, c: &Coeffs) -> Result<Coeffs> {
        self.check_len(c)?;
        Ok(Coeffs::from_iterator(
            c.len(),
            c.iter().zip(&self.weights).map(|(a, w)| a / w.sqrt()),
        ))
    }

    /// Raw coefficient vector of `z^k`.
    pub fn monomial(&self, k: &MultiIndex) -> Result<Coeffs> {
        self.from_terms(&[(k.clone(), C64::new(1.0, 0.0))])
    }

    /// Raw coefficient vector of `Σ c · z^k` over the given terms.
    pub fn from_terms(&self, terms: &[(MultiIndex, C64)]) -> Result<Coeffs> {
        let mut v = Coeffs::zeros(self.size());
        for (k, c) in terms {
            let pos = self.grid.position(k).ok_or_else(|| {
                Error::Range(format!("{k} is outside caps {:?}", self.grid.caps()))
            })?;
            v[pos] += c;
        }
        Ok(v)
    }
}
