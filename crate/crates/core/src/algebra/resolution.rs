use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{DenseMatrix, Field, LinearSolver, Subspace};

use super::basis::BasisAlgebra;
use super::free::{left_mul_free, FreeMap, ModuleMap};
use super::module::FDModule;
use super::{AlgebraError, Limits};

/// A free resolution `... -> P_1 -> P_0 -> M` with `P_n = A^{b_n}`.
///
/// Over a local algebra the resolution is minimal: every differential has
/// entries in the radical and the `b_n` are the Betti numbers of `M`. Over
/// a non-local algebra the same construction gives a free resolution whose
/// ranks are small but not invariants.
#[derive(Debug)]
pub struct MinimalResolution<F: Field> {
    module: FDModule<F>,
    betti: Vec<usize>,
    augmentation: ModuleMap<F>,
    /// `differentials[n - 1]` is `d_n : P_n -> P_{n-1}`.
    differentials: Vec<FreeMap<F>>,
    /// `[0]` is the augmentation, `[n]` is `d_n`.
    field_matrices: Vec<DenseMatrix<F>>,
    top_kernel: Vec<Vec<F::Elem>>,
    minimal: bool,
    solvers: Vec<OnceLock<LinearSolver<F>>>,
}

/// Resolves `m` through `P_{n_max}`.
pub fn minimal_resolution<F: Field>(
    alg: &BasisAlgebra<F>,
    m: &FDModule<F>,
    n_max: usize,
    limits: &Limits,
) -> Result<MinimalResolution<F>, AlgebraError> {
    let d = alg.dim();
    if d > limits.max_algebra_dim {
        return Err(AlgebraError::DimensionCap(format!(
            "algebra dimension {d} exceeds {}",
            limits.max_algebra_dim
        )));
    }
    let f = alg.field();
    let local = alg.is_local();

    let module_basis: Vec<Vec<F::Elem>> = (0..m.dim())
        .map(|i| {
            let mut v = vec![f.zero(); m.dim()];
            v[i] = f.one();
            v
        })
        .collect();
    let gens = choose_generators(alg, local, 0, &module_basis, |a, v| m.act_vector(alg, a, v));
    check_cap(gens.len(), d, limits)?;
    let augmentation = ModuleMap::new(gens);
    let aug_matrix = augmentation.field_matrix(alg, m);
    let mut kernel = aug_matrix.kernel();

    let mut betti = vec![augmentation.images().len()];
    let mut differentials = Vec::with_capacity(n_max);
    let mut field_matrices = vec![aug_matrix];

    for n in 1..=n_max {
        let prev_rank = betti[n - 1];
        let gens = choose_generators(alg, local, n, &kernel, |a, v| left_mul_free(alg, a, v));
        check_cap(gens.len(), d, limits)?;
        let dn = FreeMap::new(alg, gens.len(), prev_rank, gens);
        let fm = dn.field_matrix(alg);
        kernel = fm.kernel();
        betti.push(dn.source_rank());
        differentials.push(dn);
        field_matrices.push(fm);
    }

    let solvers = (0..field_matrices.len()).map(|_| OnceLock::new()).collect();
    Ok(MinimalResolution {
        module: m.clone(),
        betti,
        augmentation,
        differentials,
        field_matrices,
        top_kernel: kernel,
        minimal: local,
        solvers,
    })
}

fn check_cap(rank: usize, d: usize, limits: &Limits) -> Result<(), AlgebraError> {
    if rank * d > limits.max_free_dim {
        return Err(AlgebraError::DimensionCap(format!(
            "free module of rank {rank} has field dimension {} > {}",
            rank * d,
            limits.max_free_dim
        )));
    }
    Ok(())
}

/// Generators of the submodule spanned by `basis`.
///
/// Local case: lifts of a basis of `K / JK`, taken greedily from `basis`
/// in echelon order. Otherwise: greedily add the candidate whose cyclic
/// submodule grows the span most, until all of `K` is reached.
fn choose_generators<F, Act>(
    alg: &BasisAlgebra<F>,
    local: bool,
    degree: usize,
    basis: &[Vec<F::Elem>],
    act: Act,
) -> Vec<Vec<F::Elem>>
where
    F: Field,
    Act: Fn(&[F::Elem], &[F::Elem]) -> Vec<F::Elem>,
{
    let f = alg.field();
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let ambient = first.len();
    let mut span = Subspace::new(f.clone(), ambient);
    for x in alg.radical_generators() {
        for v in basis {
            span.insert(&act(x, v));
        }
    }
    if local {
        return basis.iter().filter(|v| span.insert(v)).cloned().collect();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ degree as u64);
    let mut gens = Vec::new();
    while span.dim() < basis.len() {
        let mut candidates: Vec<Vec<F::Elem>> =
            basis.iter().filter(|v| !span.contains(v)).take(8).cloned().collect();
        for _ in 0..8 {
            let mut v = vec![f.zero(); ambient];
            for b in basis {
                let c = f.random(&mut rng);
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.mul_add(x, &c, y);
                }
            }
            candidates.push(v);
        }
        let cyclic = |v: &Vec<F::Elem>| -> Vec<Vec<F::Elem>> {
            (0..alg.dim()).map(|i| act(&alg.basis_element(i), v)).collect()
        };
        let best = candidates
            .iter()
            .map(|v| {
                let mut trial = span.clone();
                for w in cyclic(v) {
                    trial.insert(&w);
                }
                (trial.dim(), v)
            })
            .max_by_key(|(dim, _)| *dim)
            .map(|(_, v)| v.clone())
            .expect("candidates are nonempty");
        for w in cyclic(&best) {
            span.insert(&w);
        }
        gens.push(best);
    }
    gens
}

impl<F: Field> MinimalResolution<F> {
    pub fn module(&self) -> &FDModule<F> {
        &self.module
    }

    /// Index of the last computed free module.
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn augmentation(&self) -> &ModuleMap<F> {
        &self.augmentation
    }

    /// `d_n : P_n -> P_{n-1}` for `1 <= n <= length`.
    pub fn differential(&self, n: usize) -> &FreeMap<F> {
        &self.differentials[n - 1]
    }

    /// Field matrix of the augmentation (`n = 0`) or of `d_n`.
    pub fn field_matrix(&self, n: usize) -> &DenseMatrix<F> {
        &self.field_matrices[n]
    }

    /// Cached solver for `field_matrix(n)`.
    pub fn solver(&self, n: usize) -> &LinearSolver<F> {
        self.solvers[n].get_or_init(|| LinearSolver::new(&self.field_matrices[n]))
    }

    /// Basis of the kernel of the last map, i.e. of the next syzygy.
    pub fn top_kernel(&self) -> &[Vec<F::Elem>] {
        &self.top_kernel
    }

    /// `d_{n-1} d_n = 0` and `eps d_1 = 0`, exactly.
    pub fn check_complex(&self) -> bool {
        (1..=self.length()).all(|n| self.field_matrices[n - 1].mul(&self.field_matrices[n]).is_zero())
    }

    /// Exactness at `P_n` for `0 <= n < length`, plus surjectivity of the
    /// augmentation.
    pub fn check_exactness(&self) -> bool {
        let ranks: Vec<usize> = self.field_matrices.iter().map(|m| m.rank()).collect();
        let d = self.field_matrices[0].cols() / self.betti[0].max(1);
        let surjective = ranks[0] == self.module.dim();
        surjective
            && (0..self.length()).all(|n| {
                let dim_pn = self.betti[n] * d;
                ranks[n] + ranks[n + 1] == dim_pn
            })
    }

    /// Every differential has entries in the radical.
    pub fn check_minimality(&self, alg: &BasisAlgebra<F>) -> bool {
        self.differentials.iter().all(|d| d.is_minimal(alg))
    }
}
