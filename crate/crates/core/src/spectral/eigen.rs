use alloc::vec::Vec;

use super::{LaplacianMatrix, SpectralError, Tolerances};

const MAX_SWEEPS: usize = 100;

/// Eigenpairs the Fiedler report shows by default: the constant vector, the
/// Fiedler pair, and one more to judge multiplicity.
const REPORTED_PAIRS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit Euclidean norm.
    pub vector: Vec<f64>,
}

/// Spectral summary of a connected component's Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct FiedlerInfo {
    /// Second-smallest eigenvalue.
    pub value: f64,
    pub multiplicity: usize,
    /// Representative Fiedler vector, sign fixed so the first entry larger
    /// than `tie_tol` in magnitude is positive.
    pub vector: Vec<f64>,
    /// Distance from the Fiedler value to the next distinct eigenvalue, if any.
    pub eigengap: Option<f64>,
    /// Eigenspace basis when `multiplicity > 1`, empty otherwise.
    pub basis: Vec<Vec<f64>>,
    /// Smallest eigenvalues, ascending: at least three (when the order allows)
    /// and always one past the Fiedler eigenspace.
    pub smallest: Vec<f64>,
}

/// Full decomposition by cyclic Jacobi rotations, eigenvalues ascending.
fn jacobi(l: &LaplacianMatrix) -> Result<Vec<EigenPair>, SpectralError> {
    let n = l.order();
    let mut a = l.entries().to_vec();
    let mut v = alloc::vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob2: f64 = a.iter().map(|x| x * x).sum();
    let target = f64::EPSILON * f64::EPSILON * frob2;

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        let off2: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off2 <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(SpectralError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]).then(i.cmp(&j)));
    Ok(order
        .into_iter()
        .map(|j| EigenPair {
            value: a[j * n + j],
            vector: (0..n).map(|k| v[k * n + j]).collect(),
        })
        .collect())
}

fn residual(l: &LaplacianMatrix, pair: &EigenPair) -> f64 {
    let n = l.order();
    (0..n)
        .map(|i| {
            let lv: f64 = (0..n).map(|j| l.get(i, j) * pair.vector[j]).sum();
            (lv - pair.value * pair.vector[i]).abs()
        })
        .fold(0.0, f64::max)
}

fn solve_checked(l: &LaplacianMatrix, tol: &Tolerances) -> Result<Vec<EigenPair>, SpectralError> {
    let pairs = jacobi(l)?;
    let bound = tol.eig_tol * l.norm_inf().max(1.0);
    for pair in &pairs {
        let r = residual(l, pair);
        if r.is_nan() || r > bound {
            return Err(SpectralError::Residual { residual: r, bound });
        }
    }
    Ok(pairs)
}

/// The `k` smallest eigenpairs, ascending, with orthonormal vectors. Every
/// pair's residual `‖Lv − λv‖∞` is checked against `eig_tol·max(1, ‖L‖∞)`.
pub fn smallest_eigenpairs(
    l: &LaplacianMatrix,
    k: usize,
    tol: &Tolerances,
) -> Result<Vec<EigenPair>, SpectralError> {
    if k > l.order() {
        return Err(SpectralError::TooManyEigenpairs {
            requested: k,
            order: l.order(),
        });
    }
    let mut pairs = solve_checked(l, tol)?;
    pairs.truncate(k);
    Ok(pairs)
}

fn fix_sign(v: &mut [f64], tie_tol: f64) {
    if let Some(first) = v.iter().find(|x| x.abs() > tie_tol) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Fiedler value, its multiplicity and a representative vector.
///
/// `l` must be the Laplacian of a connected graph; a second zero eigenvalue
/// is reported as [`SpectralError::Disconnected`].
pub fn fiedler_info(l: &LaplacianMatrix, tol: &Tolerances) -> Result<FiedlerInfo, SpectralError> {
    let n = l.order();
    if n < 2 {
        return Err(SpectralError::TooSmall(n));
    }
    let pairs = solve_checked(l, tol)?;
    let value = pairs[1].value;
    let scale = l.norm_inf().max(1.0);
    if value <= tol.mult_tol * scale {
        return Err(SpectralError::Disconnected { value });
    }
    let same = |x: f64| (x - value).abs() <= tol.mult_tol * value.abs().max(1.0);
    let multiplicity = 1 + pairs[2..].iter().take_while(|p| same(p.value)).count();
    let next = 1 + multiplicity;
    let eigengap = pairs.get(next).map(|p| p.value - value);

    let mut vector = pairs[1].vector.clone();
    fix_sign(&mut vector, tol.tie_tol);
    let basis = if multiplicity > 1 {
        pairs[1..next]
            .iter()
            .map(|p| {
                let mut b = p.vector.clone();
                fix_sign(&mut b, tol.tie_tol);
                b
            })
            .collect()
    } else {
        Vec::new()
    };
    let shown = REPORTED_PAIRS.max(next + 1).min(n);
    Ok(FiedlerInfo {
        value,
        multiplicity,
        vector,
        eigengap,
        basis,
        smallest: pairs[..shown].iter().map(|p| p.value).collect(),
    })
}
