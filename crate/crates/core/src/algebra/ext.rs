//! Ext groups as the cohomology of `Hom_A(P_*, N)`.
//!
//! A homomorphism `P_n = A^{b_n} -> N` is stored as the concatenation of
//! the images of the `b_n` generators, a field vector of length
//! `b_n * dim N`.

use crate::exactmath::{DenseMatrix, Field, LinearSolver, MathError, SeriesWindow, Subspace};

use super::basis::BasisAlgebra;
use super::free::FreeMap;
use super::module::FDModule;
use super::resolution::{minimal_resolution, MinimalResolution};
use super::{AlgebraError, Limits};

/// Matrix of `g -> g . phi` from `Hom(target, N)` to `Hom(source, N)`.
///
/// Block `(t, u)` is the action of the algebra entry `phi_{tu}` on `N`.
pub fn hom_pullback<F: Field>(alg: &BasisAlgebra<F>, phi: &FreeMap<F>, n: &FDModule<F>) -> DenseMatrix<F> {
    let f = alg.field();
    let nd = n.dim();
    let mut out = DenseMatrix::zeros(f.clone(), phi.source_rank() * nd, phi.target_rank() * nd);
    for t in 0..phi.source_rank() {
        for u in 0..phi.target_rank() {
            let entry = phi.entry(alg, t, u);
            if entry.iter().all(|c| f.is_zero(c)) {
                continue;
            }
            let block = n.act_element(alg, entry);
            for r in 0..nd {
                for c in 0..nd {
                    let v = block.get(r, c);
                    if !f.is_zero(v) {
                        out.set(t * nd + r, u * nd + c, v.clone());
                    }
                }
            }
        }
    }
    out
}

/// `Ext^n(M, N)` with an explicit basis of cocycle representatives.
#[derive(Debug)]
pub struct ExtGroup<F: Field> {
    degree: usize,
    cochain_dim: usize,
    representatives: Vec<Vec<F::Elem>>,
    boundary_dim: usize,
    /// Solves against the columns `[coboundary basis | representatives]`.
    solver: LinearSolver<F>,
    cocycles: Subspace<F>,
}

impl<F: Field> ExtGroup<F> {
    fn build(
        field: &F,
        degree: usize,
        cochain_dim: usize,
        cocycle_basis: Vec<Vec<F::Elem>>,
        boundaries: Subspace<F>,
    ) -> Self {
        let mut span = boundaries.clone();
        let representatives: Vec<Vec<F::Elem>> =
            cocycle_basis.iter().filter(|z| span.insert(z)).cloned().collect();
        let columns: Vec<Vec<F::Elem>> = boundaries
            .basis()
            .iter()
            .chain(representatives.iter())
            .cloned()
            .collect();
        let solver = LinearSolver::new(&DenseMatrix::from_columns(field.clone(), cochain_dim, &columns));
        ExtGroup {
            degree,
            cochain_dim,
            representatives,
            boundary_dim: boundaries.dim(),
            solver,
            cocycles: Subspace::spanned_by(field.clone(), cochain_dim, cocycle_basis.iter()),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Dimension of `Hom(P_n, N)`.
    pub fn cochain_dim(&self) -> usize {
        self.cochain_dim
    }

    /// Cocycles whose classes form a basis.
    pub fn representatives(&self) -> &[Vec<F::Elem>] {
        &self.representatives
    }

    pub fn is_cocycle(&self, v: &[F::Elem]) -> bool {
        self.cocycles.contains(v)
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    /// `None` when `v` is not a cocycle.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.cocycles.contains(v) {
            return None;
        }
        let x = self.solver.solve(v)?;
        Some(x[self.boundary_dim..].to_vec())
    }
}

/// Dimensions of `Ext^n(M, N)` for `0 <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSequence {
    pub dims: SeriesWindow,
    /// Betti numbers of the resolution used, `b_0 .. b_{n_max + 1}`.
    pub betti: Vec<usize>,
    /// Whether the resolution was minimal (local algebra).
    pub minimal: bool,
}

/// `Ext^n(M, N)` for `0 <= n < res.length()`.
pub fn ext_groups<F: Field>(
    alg: &BasisAlgebra<F>,
    res: &MinimalResolution<F>,
    n: &FDModule<F>,
) -> Vec<ExtGroup<F>> {
    ext_groups_upto(alg, res, n, res.length().saturating_sub(1))
        .expect("range lies inside the resolution")
}

pub(crate) fn ext_groups_upto<F: Field>(
    alg: &BasisAlgebra<F>,
    res: &MinimalResolution<F>,
    n: &FDModule<F>,
    top: usize,
) -> Result<Vec<ExtGroup<F>>, AlgebraError> {
    if res.length() == 0 || top + 1 > res.length() {
        return Err(AlgebraError::RangeExceedsResolution(format!(
            "Ext^{top} needs P_{} but the resolution stops at P_{}",
            top + 1,
            res.length()
        )));
    }
    let f = alg.field();
    let nd = n.dim();
    let mut groups = Vec::with_capacity(top + 1);
    // image of delta_n : Hom(P_{n-1}, N) -> Hom(P_n, N); zero for n = 0
    let mut boundaries = Subspace::new(f.clone(), res.betti()[0] * nd);
    for deg in 0..=top {
        let cochain_dim = res.betti()[deg] * nd;
        let delta_next = hom_pullback(alg, res.differential(deg + 1), n);
        let cocycles = delta_next.kernel();
        groups.push(ExtGroup::build(f, deg, cochain_dim, cocycles, boundaries));
        let columns: Vec<Vec<F::Elem>> = (0..delta_next.cols()).map(|c| delta_next.column(c)).collect();
        boundaries = Subspace::spanned_by(f.clone(), delta_next.rows(), columns.iter());
    }
    Ok(groups)
}

/// Dimensions of `Ext^n(M, N)` for `0 <= n <= n_max`.
pub fn ext_dims<F: Field>(
    alg: &BasisAlgebra<F>,
    m: &FDModule<F>,
    n: &FDModule<F>,
    n_max: usize,
    limits: &Limits,
) -> Result<ExtSequence, AlgebraError> {
    let res = minimal_resolution(alg, m, n_max + 1, limits)?;
    let groups = ext_groups_upto(alg, &res, n, n_max)?;
    let dims = groups.iter().map(|g| g.dim() as u64).collect();
    Ok(ExtSequence {
        dims: SeriesWindow::new(0, dims).map_err(|e: MathError| AlgebraError::Math(e))?,
        betti: res.betti().to_vec(),
        minimal: res.is_minimal(),
    })
}
