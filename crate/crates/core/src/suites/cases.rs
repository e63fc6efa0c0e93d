use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::operators::ShiftTuple;
use crate::spaces::{MultiIndex, SpaceKind, SpaceModel, C64};
use crate::subspaces::{invariant_closure, Subspace};
use crate::tolerance::Tolerances;

use super::generators::{gen_tensor_invariant_subspace, gen_vanishing_ideal_subspace};

/// A coefficient: either a real number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    pub fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => C64::new(x, 0.0),
            Scalar::Complex([re, im]) => C64::new(re, im),
        }
    }
}

/// One monomial term `coeff · z^index` of a multivariable generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub index: Vec<usize>,
    pub coeff: Scalar,
}

/// How the invariant subspace of a case is produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SubspaceRecipe {
    /// The whole truncated space.
    Full,
    /// `⊗_i [θ_i]`: per variable, a list of one-variable polynomials given
    /// as ascending coefficient lists.
    Tensor { factors: Vec<Vec<Vec<Scalar>>> },
    /// Joint invariant closure of multivariable polynomials.
    Generators { generators: Vec<Vec<Term>> },
    /// Polynomials vanishing at the origin, `[z_1, …, z_n]`.
    VanishingIdeal,
}

impl SubspaceRecipe {
    /// Total degree of the generators, used for the default depth.
    pub fn generator_degree(&self) -> usize {
        fn deg(p: &[Scalar]) -> usize {
            p.iter().rposition(|c| c.value().norm() != 0.0).unwrap_or(0)
        }
        match self {
            SubspaceRecipe::Full => 0,
            SubspaceRecipe::VanishingIdeal => 1,
            SubspaceRecipe::Tensor { factors } => {
                factors.iter().map(|gens| gens.iter().map(|p| deg(p)).max().unwrap_or(0)).sum()
            }
            SubspaceRecipe::Generators { generators } => generators
                .iter()
                .flatten()
                .filter(|t| t.coeff.value().norm() != 0.0)
                .map(|t| t.index.iter().sum::<usize>())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn build(&self, model: &SpaceModel, tuple: &ShiftTuple) -> Result<Subspace> {
        match self {
            SubspaceRecipe::Full => Ok(Subspace::full(model.shared_grid())),
            SubspaceRecipe::VanishingIdeal => gen_vanishing_ideal_subspace(tuple),
            SubspaceRecipe::Tensor { factors } => {
                let factors: Vec<Vec<Vec<C64>>> = factors
                    .iter()
                    .map(|gens| gens.iter().map(|p| p.iter().map(|c| c.value()).collect()).collect())
                    .collect();
                gen_tensor_invariant_subspace(model, &factors)
            }
            SubspaceRecipe::Generators { generators } => {
                if generators.is_empty() {
                    return Err(Error::Argument("generator list is empty".into()));
                }
                let vectors = generators
                    .iter()
                    .map(|terms| {
                        let terms = terms
                            .iter()
                            .map(|t| Ok((MultiIndex::new(t.index.clone())?, t.coeff.value())))
                            .collect::<Result<Vec<_>>>()?;
                        model.to_isometric(&model.from_terms(&terms)?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let gens = Subspace::from_generators(model, &vectors, crate::tolerance::RANK)?;
                if gens.is_zero() {
                    return Err(Error::Argument("generators are all zero".into()));
                }
                let all: Vec<usize> = (0..model.n()).collect();
                invariant_closure(&gens, &all, tuple)
            }
        }
    }
}

/// Everything needed to reproduce one verification case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaseSpec {
    pub label: String,
    pub space: SpaceKind,
    pub n: usize,
    pub caps: Vec<usize>,
    /// one-based variable indices
    pub alpha: Vec<usize>,
    pub recipe: SubspaceRecipe,
    pub margin: usize,
    /// Orthogonality depth; derived from the caps when absent.
    pub depth: Option<usize>,
    pub tolerances: Tolerances,
    pub seed: u64,
}

impl Default for CaseSpec {
    fn default() -> Self {
        Self {
            label: "full space".into(),
            space: SpaceKind::Bergman,
            n: 2,
            caps: vec![10, 10],
            alpha: vec![1, 2],
            recipe: SubspaceRecipe::Full,
            margin: 2,
            depth: None,
            tolerances: Tolerances::default(),
            seed: 42,
        }
    }
}

impl CaseSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.caps.len() != self.n {
            return Err(Error::Config(format!("{} caps given for n = {}", self.caps.len(), self.n)));
        }
        if self.caps.contains(&0) {
            return Err(Error::Config("every cap must be at least 1".into()));
        }
        if self.alpha.is_empty() {
            return Err(Error::Config("alpha must be non-empty".into()));
        }
        for (pos, &a) in self.alpha.iter().enumerate() {
            if a == 0 || a > self.n {
                return Err(Error::Config(format!("alpha contains {a} but n = {}", self.n)));
            }
            if self.alpha[..pos].contains(&a) {
                return Err(Error::Config(format!("alpha repeats {a}")));
            }
        }
        let t = &self.tolerances;
        for (name, v) in [("residual", t.residual), ("angle", t.angle), ("psd", t.psd), ("rank", t.rank)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("tolerance {name} = {v} must be positive")));
            }
        }
        if self.margin == 0 {
            return Err(Error::Config("margin must be at least 1".into()));
        }
        if self.caps.iter().any(|&d| d < self.margin) {
            return Err(Error::Config(format!("margin {} leaves an empty interior", self.margin)));
        }
        if let SubspaceRecipe::Tensor { factors } = &self.recipe {
            if factors.len() != self.n {
                return Err(Error::Config(format!("tensor recipe has {} factors for n = {}", factors.len(), self.n)));
            }
        }
        if self.recipe == SubspaceRecipe::VanishingIdeal && self.n < 2 {
            return Err(Error::Config("the vanishing-ideal example needs n >= 2".into()));
        }
        if let Some(depth) = self.depth {
            let cap = self.alpha.iter().map(|&a| self.caps[a - 1]).min().unwrap_or(0);
            if depth == 0 || depth > cap {
                return Err(Error::Config(format!("depth {depth} outside 1..={cap}")));
            }
        }
        Ok(())
    }

    pub fn alpha_zero_based(&self) -> Vec<usize> {
        self.alpha.iter().map(|&a| a - 1).collect()
    }

    /// SHA-256 of the case's canonical JSON encoding, hex.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("case specs always serialize");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The same geometry with `S` replaced by the vanishing ideal.
    pub fn vanishing_ideal_variant(&self) -> Self {
        Self {
            label: format!("vanishing ideal {} d={:?}", self.space, self.caps),
            recipe: SubspaceRecipe::VanishingIdeal,
            alpha: (1..=self.n).collect(),
            depth: None,
            ..self.clone()
        }
    }
}

/// Full space plus a tensor-product subspace `[z − 1/2] ⊗ [z²] ⊗ [z] ⊗ …`.
pub(crate) fn tensor_catalogue(kind: &SpaceKind, caps: &[usize]) -> Vec<CaseSpec> {
    let n = caps.len();
    let base = CaseSpec {
        space: kind.clone(),
        n,
        caps: caps.to_vec(),
        alpha: (1..=n).collect(),
        ..CaseSpec::default()
    };
    let factors: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|i| {
            let poly = match i {
                0 => vec![Scalar::Real(-0.5), Scalar::Real(1.0)],
                1 => vec![Scalar::Real(0.0), Scalar::Real(0.0), Scalar::Real(1.0)],
                _ => vec![Scalar::Real(0.0), Scalar::Real(1.0)],
            };
            vec![poly]
        })
        .collect();
    let tensor = CaseSpec {
        label: format!("tensor {kind} d={caps:?}"),
        recipe: SubspaceRecipe::Tensor { factors },
        ..base.clone()
    };
    vec![CaseSpec { label: format!("full {kind} d={caps:?}"), ..base }, tensor]
}
