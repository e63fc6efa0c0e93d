use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::operators::ShiftTuple;
use crate::spaces::{Coeffs, SpaceKind, SpaceModel, C64};
use crate::subspaces::{invariant_closure, Subspace};
use crate::tolerance;

/// Isometric coordinates of a one-variable polynomial given by ascending
/// raw coefficients.
pub fn poly_1d(model: &SpaceModel, coeffs: &[C64]) -> Result<Coeffs> {
    if model.n() != 1 {
        return Err(Error::Shape("poly_1d needs a one-variable model".into()));
    }
    let size = model.size();
    if let Some(deg) = coeffs.iter().rposition(|c| c.norm() != 0.0) {
        if deg >= size {
            return Err(Error::Range(format!("degree {deg} exceeds the cap {}", size - 1)));
        }
    }
    let raw = Coeffs::from_fn(size, |i, _| coeffs.get(i).copied().unwrap_or_default());
    model.to_isometric(&raw)
}

fn one_variable_kind(kind: &SpaceKind, var: usize) -> SpaceKind {
    match kind {
        SpaceKind::Custom(seqs) => SpaceKind::Custom(vec![seqs[var].clone()]),
        other => other.clone(),
    }
}

/// `[θ_1] ⊗ … ⊗ [θ_n]` where `[θ_i]` is the one-variable shift-invariant
/// closure of the `i`-th generator list. Such products are invariant and
/// doubly commuting for the coordinate shifts.
pub fn gen_tensor_invariant_subspace(model: &SpaceModel, factors: &[Vec<Vec<C64>>]) -> Result<Subspace> {
    if factors.len() != model.n() {
        return Err(Error::Shape(format!("{} factors for n = {}", factors.len(), model.n())));
    }
    let caps = model.grid().caps().to_vec();
    let mut bases = Vec::with_capacity(factors.len());
    for (var, gens) in factors.iter().enumerate() {
        if gens.is_empty() {
            return Err(Error::Argument(format!("no generators for variable {}", var + 1)));
        }
        let m1 = SpaceModel::new(one_variable_kind(model.kind(), var), vec![caps[var]])?;
        let t1 = ShiftTuple::new(m1.clone(), 1)?;
        let vectors = gens.iter().map(|p| poly_1d(&m1, p)).collect::<Result<Vec<_>>>()?;
        let span = Subspace::from_generators(&m1, &vectors, tolerance::RANK)?;
        if span.is_zero() {
            return Err(Error::Argument(format!("generators for variable {} are all zero", var + 1)));
        }
        bases.push(invariant_closure(&span, &[0], &t1)?.basis().clone());
    }

    let grid = model.grid();
    let cols: usize = bases.iter().map(|b| b.ncols()).product();
    let mut mat = CMatrix::zeros(grid.size(), cols);
    let mut pick = vec![0usize; bases.len()];
    for col in 0..cols {
        // mixed-radix counter over one column per factor
        let mut rest = col;
        for (slot, b) in pick.iter_mut().zip(&bases).rev() {
            *slot = rest % b.ncols();
            rest /= b.ncols();
        }
        for (pos, k) in grid.indices().iter().enumerate() {
            mat[(pos, col)] = k
                .as_slice()
                .iter()
                .zip(&bases)
                .zip(&pick)
                .map(|((&ki, b), &j)| b[(ki, j)])
                .product();
        }
    }
    Subspace::from_isometric_columns(model.shared_grid(), &mat, tolerance::RANK)
}

/// `[z_1, …, z_n]`: polynomials vanishing at the origin. Invariant but not
/// doubly commuting once `n ≥ 2`.
pub fn gen_vanishing_ideal_subspace(tuple: &ShiftTuple) -> Result<Subspace> {
    let model = tuple.model();
    if model.n() < 2 {
        return Err(Error::Argument("the vanishing ideal example needs n >= 2".into()));
    }
    let gens = (0..model.n())
        .map(|var| {
            let mut e = vec![0; model.n()];
            e[var] = 1;
            model.to_isometric(&model.monomial(&crate::spaces::MultiIndex::new(e)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let span = Subspace::from_generators(model, &gens, tolerance::RANK)?;
    let all: Vec<usize> = (0..model.n()).collect();
    invariant_closure(&span, &all, tuple)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_of_shifted_monomials_is_a_monomial_tail() {
        let model = SpaceModel::new(SpaceKind::Hardy, vec![4, 4]).unwrap();
        let z = |p: usize| {
            let mut v = vec![C64::new(0.0, 0.0); p + 1];
            v[p] = C64::new(1.0, 0.0);
            v
        };
        let s = gen_tensor_invariant_subspace(&model, &[vec![z(1)], vec![z(2)]]).unwrap();
        // k_1 ≥ 1 and k_2 ≥ 2 in a 5 × 5 box
        assert_eq!(s.dim(), 4 * 3);
        let tail = Subspace::coordinate(
            model.shared_grid(),
            &model.grid().positions_where(|k| k.as_slice()[0] >= 1 && k.as_slice()[1] >= 2),
        );
        assert!(crate::subspaces::subspace_equal(&s, &tail, 1e-12).unwrap());
    }

    #[test]
    fn constant_term_closes_to_everything() {
        let model = SpaceModel::new(SpaceKind::Bergman, vec![5, 3]).unwrap();
        let half = vec![C64::new(-0.5, 0.0), C64::new(1.0, 0.0)];
        let one = vec![C64::new(1.0, 0.0)];
        let s = gen_tensor_invariant_subspace(&model, &[vec![half], vec![one]]).unwrap();
        assert_eq!(s.dim(), model.size());
    }

    #[test]
    fn errors() {
        let model = SpaceModel::new(SpaceKind::Hardy, vec![3, 3]).unwrap();
        assert!(matches!(
            gen_tensor_invariant_subspace(&model, &[vec![], vec![vec![C64::new(1.0, 0.0)]]]),
            Err(Error::Argument(_))
        ));
        let one = SpaceModel::new(SpaceKind::Hardy, vec![3]).unwrap();
        let t = ShiftTuple::new(one, 1).unwrap();
        assert!(matches!(gen_vanishing_ideal_subspace(&t), Err(Error::Argument(_))));
    }
}
