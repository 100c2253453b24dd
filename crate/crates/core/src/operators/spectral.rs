use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, ComplexMatrix, HermitianOperator, Projector, UnitaryOperator, C64};

/// Cluster-width used to group eigenvalues of `(U + U^H)/2` before the
/// sign of the phase is resolved; independent of the final clustering.
const COSINE_GROUP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralKind {
    /// `H = sum_n value_n P_n`
    HermitianEigenvalues,
    /// `U = sum_n exp(-i value_n) P_n`, values in `(-pi, pi]`
    UnitaryEigenphases,
}

#[derive(Debug, Clone)]
pub struct SpectralEntry {
    pub value: f64,
    pub projector: Projector,
}

/// Spectral projections after degeneracy clustering, ordered by value.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    entries: Vec<SpectralEntry>,
    kind: SpectralKind,
}

impl SpectralDecomposition {
    /// Build directly from entries. Orthogonality and completeness are not
    /// re-checked here; see [`Self::orthogonality_defect`] and
    /// [`Self::completeness_defect`].
    pub fn from_entries(entries: Vec<SpectralEntry>, kind: SpectralKind) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::invalid("entries", "decomposition needs at least one projector"));
        };
        let dim = first.projector.dim();
        for e in &entries {
            if e.projector.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.projector.dim() });
            }
        }
        Ok(SpectralDecomposition { entries, kind })
    }

    /// Single projector `I`, the trivial decomposition.
    pub fn trivial(dim: usize, value: f64, kind: SpectralKind) -> Self {
        SpectralDecomposition { entries: vec![SpectralEntry { value, projector: Projector::identity(dim) }], kind }
    }

    pub fn entries(&self) -> &[SpectralEntry] {
        &self.entries
    }

    pub fn kind(&self) -> SpectralKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.entries[0].projector.dim()
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn projectors(&self) -> impl Iterator<Item = &Projector> {
        self.entries.iter().map(|e| &e.projector)
    }

    /// `sum_n f(value_n) P_n`
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim());
        for e in &self.entries {
            acc = &acc + &e.projector.matrix().scale(f(e.value));
        }
        acc
    }

    /// The operator the decomposition came from.
    pub fn reconstruct(&self) -> ComplexMatrix {
        match self.kind {
            SpectralKind::HermitianEigenvalues => self.apply_fn(|v| C64::new(v, 0.0)),
            SpectralKind::UnitaryEigenphases => self.apply_fn(|v| C64::new(0.0, -v).exp()),
        }
    }

    /// `U^n = sum_k exp(-i n value_k) P_k` for the unitary kind (negative `n`
    /// gives inverse powers).
    pub fn unitary_power(&self, n: i64) -> ComplexMatrix {
        debug_assert_eq!(self.kind, SpectralKind::UnitaryEigenphases);
        let n = n as f64;
        self.apply_fn(|v| C64::new(0.0, -n * v).exp())
    }

    /// `|sum_n P_n - I|_F`
    pub fn completeness_defect(&self) -> f64 {
        let sum = self.apply_fn(|_| C64::new(1.0, 0.0));
        (&sum - &ComplexMatrix::identity(self.dim())).frob_norm()
    }

    /// `max_{n != m} |P_n P_m|_F`
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                worst = worst.max((a.projector.matrix() * b.projector.matrix()).frob_norm());
            }
        }
        worst
    }

    /// `sum_{n != m} P_n M P_m`, the part of `M` coupling different sectors.
    pub fn off_block(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim());
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in self.entries.iter().enumerate() {
                if i != j {
                    acc = &acc + &(&(a.projector.matrix() * m) * b.projector.matrix());
                }
            }
        }
        acc
    }
}

fn check_cluster_tol(cluster_tol: f64) -> Result<()> {
    if !(cluster_tol > 0.0) || !cluster_tol.is_finite() {
        return Err(Error::invalid("cluster_tol", format!("must be positive and finite, got {cluster_tol}")));
    }
    Ok(())
}

/// Groups of consecutive indices whose neighbouring gaps are at most `tol`.
fn chain_clusters(sorted: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        match clusters.last_mut() {
            Some(c) if x - sorted[*c.last().unwrap()] <= tol => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    clusters
}

/// Eigenvalues of `h` within `cluster_tol` of a neighbour share one projector.
pub fn spectral_projections(h: &HermitianOperator, cluster_tol: f64) -> Result<SpectralDecomposition> {
    check_cluster_tol(cluster_tol)?;
    let eig = eig_hermitian(h)?;
    let v = eig.vectors.matrix();
    let n = h.dim();
    let mut entries = Vec::new();
    for cluster in chain_clusters(&eig.values, cluster_tol) {
        let value = cluster.iter().map(|&k| eig.values[k]).sum::<f64>() / cluster.len() as f64;
        let cols: Vec<Vec<C64>> = cluster.iter().map(|&k| v.column(k)).collect();
        entries.push(SpectralEntry { value, projector: Projector::from_orthonormal(n, &cols)? });
    }
    Ok(SpectralDecomposition { entries, kind: SpectralKind::HermitianEigenvalues })
}

/// Map an angle into `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let mut y = x.rem_euclid(TAU);
    if y > PI {
        y -= TAU;
    }
    if y <= -PI {
        y += TAU;
    }
    y
}

/// Eigenphases `lambda_n` with `U = sum_n exp(-i lambda_n) P_n`, clustered on
/// the circle. Phases on both sides of the `+-pi` seam can merge.
///
/// Eigenvectors come from the commuting Hermitian pair `(U + U^H)/2` and
/// `(U - U^H)/2i`: the first is diagonalized and grouped, then the second is
/// diagonalized inside each group to separate `+lambda` from `-lambda`.
pub fn spectral_projections_unitary(u: &UnitaryOperator, cluster_tol: f64) -> Result<SpectralDecomposition> {
    check_cluster_tol(cluster_tol)?;
    let m = u.matrix();
    let n = m.dim();
    let adj = m.adjoint();
    let cos_part = HermitianOperator::from_trusted((m + &adj).scale_real(0.5));
    let sin_part = HermitianOperator::from_trusted((m - &adj).scale(C64::new(0.0, -0.5)));

    let cos_eig = eig_hermitian(&cos_part)?;
    let w_all = cos_eig.vectors.matrix();
    let mut vectors: Vec<Vec<C64>> = Vec::with_capacity(n);
    for group in chain_clusters(&cos_eig.values, COSINE_GROUP_TOL) {
        let basis: Vec<Vec<C64>> = group.iter().map(|&k| w_all.column(k)).collect();
        if basis.len() == 1 {
            vectors.push(basis.into_iter().next().unwrap());
            continue;
        }
        // compress sin_part onto the group: S_ab = <w_a| S |w_b>
        let g = basis.len();
        let s_w: Vec<Vec<C64>> = basis.iter().map(|w| sin_part.matrix().matvec(w)).collect();
        let compressed =
            ComplexMatrix::from_fn(g, |a, b| basis[a].iter().zip(&s_w[b]).map(|(x, y)| x.conj() * y).sum());
        let inner = eig_hermitian(&HermitianOperator::from_trusted(compressed))?;
        let y = inner.vectors.matrix();
        for col in 0..g {
            let mut v = vec![C64::new(0.0, 0.0); n];
            for (a, w) in basis.iter().enumerate() {
                let coeff = y[(a, col)];
                for (vi, wi) in v.iter_mut().zip(w) {
                    *vi += coeff * wi;
                }
            }
            vectors.push(v);
        }
    }

    let mut phased: Vec<(f64, Vec<C64>)> = vectors
        .into_iter()
        .map(|v| {
            let uv = m.matvec(&v);
            let expectation: C64 = v.iter().zip(&uv).map(|(a, b)| a.conj() * b).sum();
            (wrap_phase(-expectation.arg()), v)
        })
        .collect();
    phased.sort_by(|a, b| a.0.total_cmp(&b.0));
    let phases: Vec<f64> = phased.iter().map(|p| p.0).collect();

    let mut clusters = chain_clusters(&phases, cluster_tol);
    if clusters.len() > 1 {
        let first = phases[0];
        let last = phases[phases.len() - 1];
        if first + TAU - last <= cluster_tol {
            let head = clusters.remove(0);
            clusters.last_mut().unwrap().extend(head);
        }
    }

    let mut entries = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let mean: C64 = cluster.iter().map(|&k| C64::new(0.0, -phases[k]).exp()).sum();
        let mut value = wrap_phase(-mean.arg());
        if value <= -PI + cluster_tol {
            value = PI;
        }
        let cols: Vec<Vec<C64>> = cluster.iter().map(|&k| phased[k].1.clone()).collect();
        entries.push(SpectralEntry { value, projector: Projector::from_orthonormal(n, &cols)? });
    }
    entries.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(SpectralDecomposition { entries, kind: SpectralKind::UnitaryEigenphases })
}

/// `H_Z = sum_n P_n H P_n`
pub fn zeno_hamiltonian(h: &HermitianOperator, decomp: &SpectralDecomposition) -> Result<HermitianOperator> {
    if decomp.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: decomp.dim() });
    }
    let mut acc = ComplexMatrix::zeros(h.dim());
    for p in decomp.projectors() {
        acc = &acc + &p.compress(h.matrix());
    }
    Ok(HermitianOperator::from_trusted(acc))
}

/// `P H P`
pub fn zeno_hamiltonian_single(h: &HermitianOperator, p: &Projector) -> Result<HermitianOperator> {
    if p.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: p.dim() });
    }
    Ok(HermitianOperator::from_trusted(p.compress(h.matrix())))
}
