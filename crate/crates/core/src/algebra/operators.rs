//! Chain-level operators on a resolution and their action on Ext.

use std::collections::BTreeMap;

use crate::exactmath::{DenseMatrix, Field, Subspace};
use crate::vanishing::{GradedWindow, WindowOperator};

use super::basis::BasisAlgebra;
use super::ext::{ext_groups_upto, hom_pullback, ExtGroup};
use super::free::{FreeMap, ModuleMap};
use super::module::FDModule;
use super::resolution::MinimalResolution;
use super::AlgebraError;

/// A chain map of degree `m` from a resolution to itself: `maps[i]` is
/// `Phi_{from + i} : P_{from + i + m} -> P_{from + i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainOperator<F: Field> {
    degree: usize,
    from: usize,
    maps: Vec<FreeMap<F>>,
}

impl<F: Field> ChainOperator<F> {
    pub fn new(degree: usize, from: usize, maps: Vec<FreeMap<F>>) -> Self {
        ChainOperator { degree, from, maps }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Smallest `n` with `Phi_n` stored.
    pub fn from(&self) -> usize {
        self.from
    }

    /// Largest `n` with `Phi_n` stored, `None` if nothing is stored.
    pub fn last(&self) -> Option<usize> {
        (!self.maps.is_empty()).then(|| self.from + self.maps.len() - 1)
    }

    pub fn map(&self, n: usize) -> Option<&FreeMap<F>> {
        n.checked_sub(self.from).and_then(|i| self.maps.get(i))
    }

    pub fn maps(&self) -> &[FreeMap<F>] {
        &self.maps
    }

    pub fn is_zero(&self, alg: &BasisAlgebra<F>) -> bool {
        self.maps.iter().all(|m| m.is_zero(alg))
    }

    /// `d_n Phi_n = Phi_{n-1} d_{n+m}` on every stored pair.
    pub fn check_chain_identity(&self, alg: &BasisAlgebra<F>, res: &MinimalResolution<F>) -> bool {
        let Some(last) = self.last() else {
            return true;
        };
        (self.from + 1..=last).all(|n| {
            let lhs = self.maps[n - self.from].then(alg, res.differential(n));
            let rhs = res.differential(n + self.degree).then(alg, &self.maps[n - 1 - self.from]);
            lhs == rhs
        })
    }

    /// `self . other` as a chain map of degree `m + m'`, defined wherever
    /// both factors are.
    pub fn compose(&self, alg: &BasisAlgebra<F>, other: &ChainOperator<F>) -> ChainOperator<F> {
        // (self . other)_n = self_n . other_{n + deg self}
        let mut maps = Vec::new();
        let from = self.from.max(other.from.saturating_sub(self.degree));
        let mut n = from;
        while let (Some(a), Some(b)) = (self.map(n), other.map(n + self.degree)) {
            maps.push(b.then(alg, a));
            n += 1;
        }
        ChainOperator {
            degree: self.degree + other.degree,
            from,
            maps,
        }
    }
}

/// Lifts the cocycle `P_m -> M` (generator images in `M`) to a chain map of
/// degree `m` on `res`, as far as the resolution reaches.
pub fn lift_chain_map<F: Field>(
    alg: &BasisAlgebra<F>,
    res: &MinimalResolution<F>,
    degree: usize,
    cocycle: &[Vec<F::Elem>],
) -> Result<ChainOperator<F>, AlgebraError> {
    if degree > res.length() {
        return Err(AlgebraError::RangeExceedsResolution(format!(
            "cocycle of degree {degree} on a resolution of length {}",
            res.length()
        )));
    }
    let module = res.module();
    if cocycle.len() != res.betti()[degree] || cocycle.iter().any(|v| v.len() != module.dim()) {
        return Err(AlgebraError::InvalidParameters("cocycle has the wrong shape".into()));
    }
    let f = ModuleMap::new(cocycle.to_vec());
    if degree < res.length() {
        let next = res.differential(degree + 1);
        let field = alg.field();
        for img in next.images() {
            if f.apply(alg, module, img).iter().any(|x| !field.is_zero(x)) {
                return Err(AlgebraError::NotACocycle);
            }
        }
    }

    let b = res.betti();
    let solve = |n: usize, rhs: &[F::Elem]| {
        res.solver(n)
            .solve(rhs)
            .ok_or_else(|| AlgebraError::Internal(format!("lifting obstruction in degree {n}")))
    };

    let phi0 = (0..b[degree])
        .map(|t| solve(0, &cocycle[t]))
        .collect::<Result<Vec<_>, _>>()?;
    let mut maps = vec![FreeMap::new(alg, b[degree], b[0], phi0)];
    for n in 1..=res.length() - degree {
        let prev = &maps[n - 1];
        let dn = res.differential(n + degree);
        let images = dn
            .images()
            .iter()
            .map(|img| solve(n, &prev.apply(alg, img)))
            .collect::<Result<Vec<_>, _>>()?;
        maps.push(FreeMap::new(alg, b[n + degree], b[n], images));
    }
    Ok(ChainOperator::new(degree, 0, maps))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Periodicity<F: Field> {
    /// `d_{n + period} = d_n` for all `n >= tail_start` in the computed
    /// range; `operator` is the degree-2 comparison map.
    Periodic {
        operator: ChainOperator<F>,
        tail_start: usize,
        period: usize,
    },
    NotPeriodic,
}

/// Looks for a tail on which the differentials repeat with period two.
pub fn detect_periodicity<F: Field>(alg: &BasisAlgebra<F>, res: &MinimalResolution<F>) -> Periodicity<F> {
    let len = res.length();
    if len < 4 {
        return Periodicity::NotPeriodic;
    }
    let repeats = |n: usize, p: usize| res.differential(n) == res.differential(n + p);
    // at least two comparisons: s + 1 + 2 <= len
    for s in 1..=len - 3 {
        if (s..=len - 2).all(|n| repeats(n, 2)) {
            let period = if (s..len).all(|n| repeats(n, 1)) { 1 } else { 2 };
            let maps = (s - 1..=len - 2)
                .map(|n| FreeMap::identity(alg, res.betti()[n]))
                .collect();
            return Periodicity::Periodic {
                operator: ChainOperator::new(2, s - 1, maps),
                tail_start: s,
                period,
            };
        }
    }
    Periodicity::NotPeriodic
}

/// Minimal generators of the Yoneda algebra `Ext^*(M, M)` up to a degree,
/// where `M` is the module resolved.
#[derive(Clone, Debug)]
pub struct ExtGenerators<F: Field> {
    pub degrees: Vec<usize>,
    /// Representing cocycles, as generator images in `M`.
    pub cocycles: Vec<Vec<Vec<F::Elem>>>,
    pub operators: Vec<ChainOperator<F>>,
}

/// Greedy generator search through degree `max_degree`: in each degree the
/// products `y . g` with earlier generators `g` span a subspace, and a
/// complement is added as new generators. Needs `res.length() > max_degree`.
pub fn ext_ring_generators<F: Field>(
    alg: &BasisAlgebra<F>,
    res: &MinimalResolution<F>,
    max_degree: usize,
) -> Result<ExtGenerators<F>, AlgebraError> {
    let module = res.module();
    let groups = ext_groups_upto(alg, res, module, max_degree)?;
    let field = alg.field();
    let md = module.dim();
    let mut out = ExtGenerators {
        degrees: Vec::new(),
        cocycles: Vec::new(),
        operators: Vec::new(),
    };
    for n in 1..=max_degree {
        let group = &groups[n];
        let mut span = Subspace::new(field.clone(), group.dim());
        for (g, op) in out.degrees.iter().zip(&out.operators) {
            let phi = op.map(n - g).expect("operators reach max_degree");
            let pull = hom_pullback(alg, phi, module);
            for y in groups[n - g].representatives() {
                let coords = group
                    .coordinates(&pull.mul_vec(y))
                    .ok_or_else(|| AlgebraError::Internal("Yoneda product is not a cocycle".into()))?;
                span.insert(&coords);
            }
        }
        for (i, rep) in group.representatives().iter().enumerate() {
            let mut e = vec![field.zero(); group.dim()];
            e[i] = field.one();
            if !span.insert(&e) {
                continue;
            }
            let cocycle: Vec<Vec<F::Elem>> = rep.chunks(md).map(|c| c.to_vec()).collect();
            let op = lift_chain_map(alg, res, n, &cocycle)?;
            out.degrees.push(n);
            out.cocycles.push(cocycle);
            out.operators.push(op);
        }
    }
    Ok(out)
}

fn operator_matrix<F: Field>(
    alg: &BasisAlgebra<F>,
    op: &ChainOperator<F>,
    n: usize,
    source: &ExtGroup<F>,
    target: &ExtGroup<F>,
    coefficients: &FDModule<F>,
) -> Result<DenseMatrix<F>, AlgebraError> {
    let phi = op.map(n).ok_or_else(|| {
        AlgebraError::RangeExceedsResolution(format!("operator of degree {} has no map at {n}", op.degree()))
    })?;
    let pull = hom_pullback(alg, phi, coefficients);
    let columns = source
        .representatives()
        .iter()
        .map(|y| {
            target
                .coordinates(&pull.mul_vec(y))
                .ok_or_else(|| AlgebraError::Internal("operator image is not a cocycle".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DenseMatrix::from_columns(alg.field().clone(), target.dim(), &columns))
}

/// Ext pieces `Ext^n(M, N)` for `n0 <= n <= n1`, with the matrices of each
/// operator `Ext^n -> Ext^{n + deg}` wherever `n + deg <= n1`.
pub fn operator_window<F: Field>(
    alg: &BasisAlgebra<F>,
    res: &MinimalResolution<F>,
    coefficients: &FDModule<F>,
    ops: &[ChainOperator<F>],
    n0: usize,
    n1: usize,
) -> Result<GradedWindow<F>, AlgebraError> {
    if n0 > n1 {
        return Err(AlgebraError::InvalidParameters(format!("empty range [{n0}, {n1}]")));
    }
    let groups = ext_groups_upto(alg, res, coefficients, n1)?;
    let mut operators = Vec::with_capacity(ops.len());
    for op in ops {
        let mut matrices = BTreeMap::new();
        for n in n0..=n1 {
            if n + op.degree() > n1 {
                break;
            }
            let m = operator_matrix(alg, op, n, &groups[n], &groups[n + op.degree()], coefficients)?;
            matrices.insert(n as u64, m);
        }
        operators.push(WindowOperator::new(op.degree(), matrices));
    }
    let window = &groups[n0..=n1];
    GradedWindow::new(
        alg.field().clone(),
        n0 as u64,
        window.iter().map(|g| g.representatives().to_vec()).collect(),
        operators,
    )
    .map_err(|e| AlgebraError::Internal(e.to_string()))
}
