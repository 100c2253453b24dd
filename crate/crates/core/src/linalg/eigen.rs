use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

use super::matrix::{ComplexMatrix, C64};
use super::types::{HermitianOperator, UnitaryOperator};

/// Eigenpairs of a Hermitian operator: ascending eigenvalues and the unitary
/// whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: UnitaryOperator,
}

impl Eigen {
    /// `V diag(f(lambda)) V^H`
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let v = self.vectors.matrix();
        let n = v.dim();
        let fl: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum())
    }
}

/// Hermitian eigendecomposition with default tolerances.
pub fn eig_hermitian(h: &HermitianOperator) -> Result<Eigen> {
    eig_hermitian_with(h, &Tolerances::default())
}

/// Cyclic Jacobi on a complex Hermitian matrix.
///
/// Each rotation first removes the phase of `a_pq` with `diag(1, e^{-i phi})`
/// and then applies the real symmetric Jacobi rotation, so one step is
/// `A <- J^H A J` with `J = D R`. Sweeps stop once the off-diagonal Frobenius
/// mass drops to `jacobi_off_diagonal * |H|_F`.
pub fn eig_hermitian_with(h: &HermitianOperator, tol: &Tolerances) -> Result<Eigen> {
    let mut a = h.matrix().clone();
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol.jacobi_off_diagonal * a.frob_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&a);
        if off <= threshold {
            break;
        }
        if sweeps == tol.jacobi_max_sweeps {
            return Err(Error::NoConvergence { sweeps, off_diagonal: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    reorthonormalize(&mut vectors);
    Ok(Eigen { values, vectors: UnitaryOperator::from_trusted(vectors) })
}

/// Two passes of modified Gram-Schmidt over the columns. Accumulated
/// rotations leave `|V^H V - I|` growing with the rotation count; this
/// brings it back to rounding level without moving the columns measurably.
fn reorthonormalize(v: &mut ComplexMatrix) {
    let n = v.dim();
    for _ in 0..2 {
        for j in 0..n {
            for k in 0..j {
                let dot: C64 = (0..n).map(|i| v[(i, k)].conj() * v[(i, j)]).sum();
                for i in 0..n {
                    let vik = v[(i, k)];
                    v[(i, j)] -= dot * vik;
                }
            }
            let norm = (0..n).map(|i| v[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            for i in 0..n {
                v[(i, j)] /= norm;
            }
        }
    }
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase_conj = (apq / r).conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = phase_conj * (-s);
    let jqq = phase_conj * c;

    let n = a.dim();
    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    // A <- J^H A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
