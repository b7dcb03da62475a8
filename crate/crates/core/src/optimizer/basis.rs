//! Interaction bases for the search space of `H_int`, selectable by name.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{tensor_product, ComplexMatrix};
use crate::qstate::CompositeDims;

/// Name of the basis used when none is requested.
pub const DEFAULT_BASIS: &str = "gell-mann";

/// A family of Hermitian operators on `A (x) B` spanning the searched
/// interactions.
pub trait InteractionBasis: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn elements(&self, dims: CompositeDims) -> Result<Vec<ComplexMatrix>>;
}

/// Generalized Gell-Mann matrices plus the identity: a complete Hermitian
/// basis of size `(d_A d_B)^2`.
pub struct GellMann;

impl InteractionBasis for GellMann {
    fn name(&self) -> &'static str {
        "gell-mann"
    }

    fn summary(&self) -> &'static str {
        "full Hermitian operator basis of A(x)B (identity + generalized Gell-Mann)"
    }

    fn elements(&self, dims: CompositeDims) -> Result<Vec<ComplexMatrix>> {
        Ok(gell_mann(dims.total()))
    }
}

/// Product projectors `|i><i| (x) |j><j|`: diagonal interactions in the
/// computational basis.
pub struct ProductDiagonal;

impl InteractionBasis for ProductDiagonal {
    fn name(&self) -> &'static str {
        "product-diagonal"
    }

    fn summary(&self) -> &'static str {
        "diagonal product projectors |i><i| (x) |j><j|"
    }

    fn elements(&self, dims: CompositeDims) -> Result<Vec<ComplexMatrix>> {
        let mut out = Vec::with_capacity(dims.total());
        for i in 0..dims.a {
            for j in 0..dims.b {
                out.push(tensor_product(
                    &unit_projector(dims.a, i),
                    &unit_projector(dims.b, j),
                )?);
            }
        }
        Ok(out)
    }
}

/// The single operator `sum_k |k><k| (x) |k><k|` over `k < min(d_A, d_B)`.
pub struct MatchedProjector;

impl InteractionBasis for MatchedProjector {
    fn name(&self) -> &'static str {
        "matched-projector"
    }

    fn summary(&self) -> &'static str {
        "one direction: sum_k |k><k| (x) |k><k|"
    }

    fn elements(&self, dims: CompositeDims) -> Result<Vec<ComplexMatrix>> {
        let mut acc = ComplexMatrix::zeros(dims.total());
        for k in 0..dims.a.min(dims.b) {
            acc = &acc + &tensor_product(&unit_projector(dims.a, k), &unit_projector(dims.b, k))?;
        }
        Ok(vec![acc])
    }
}

fn unit_projector(dim: usize, k: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |i, j| {
        if i == k && j == k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Identity, then symmetric, antisymmetric and diagonal generators.
pub fn gell_mann(dim: usize) -> Vec<ComplexMatrix> {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![ComplexMatrix::identity(dim)];
    for j in 0..dim {
        for k in j + 1..dim {
            out.push(ComplexMatrix::from_fn(dim, |r, c| {
                if (r, c) == (j, k) || (r, c) == (k, j) {
                    Complex64::new(1.0, 0.0)
                } else {
                    zero
                }
            }));
            out.push(ComplexMatrix::from_fn(dim, |r, c| {
                if (r, c) == (j, k) {
                    Complex64::new(0.0, -1.0)
                } else if (r, c) == (k, j) {
                    Complex64::new(0.0, 1.0)
                } else {
                    zero
                }
            }));
        }
    }
    for l in 1..dim {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let diag: Vec<f64> = (0..dim)
            .map(|r| match r.cmp(&l) {
                std::cmp::Ordering::Less => norm,
                std::cmp::Ordering::Equal => -(l as f64) * norm,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        out.push(ComplexMatrix::from_real_diagonal(&diag));
    }
    out
}

/// Name-indexed collection of interaction bases.
pub struct BasisRegistry {
    entries: Vec<Box<dyn InteractionBasis>>,
}

impl BasisRegistry {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    /// Registry holding every built-in basis.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        for b in [
            Box::new(GellMann) as Box<dyn InteractionBasis>,
            Box::new(ProductDiagonal),
            Box::new(MatchedProjector),
        ] {
            r.register(b).expect("built-in names are unique");
        }
        r
    }

    pub fn register(&mut self, basis: Box<dyn InteractionBasis>) -> Result<()> {
        if self.get(basis.name()).is_some() {
            return Err(Error::InvalidArgument(format!(
                "basis {:?} is already registered",
                basis.name()
            )));
        }
        self.entries.push(basis);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn InteractionBasis> {
        self.entries
            .iter()
            .find(|b| b.name() == name)
            .map(|b| b.as_ref())
    }

    /// Looks up `name`, listing the known names on failure.
    pub fn resolve(&self, name: &str) -> Result<&dyn InteractionBasis> {
        self.get(name).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "unknown basis {name:?}; known: {}",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|b| b.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn InteractionBasis> {
        self.entries.iter().map(|b| b.as_ref())
    }
}

impl Default for BasisRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
