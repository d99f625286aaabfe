use nalgebra::{Matrix3, Vector3};

/// Eigen-decomposition of a real symmetric 3x3 matrix by cyclic Jacobi sweeps.
/// Eigenvalues come back ascending with eigenvectors as matching columns.
pub fn symmetric_eigen3(m: &Matrix3<f64>) -> (Vector3<f64>, Matrix3<f64>) {
    let mut a = (m + m.transpose()) * 0.5;
    let mut v = Matrix3::<f64>::identity();
    let scale = a.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    if scale == 0.0 {
        return (Vector3::zeros(), v);
    }
    for _ in 0..64 {
        let off = a[(0, 1)].powi(2) + a[(0, 2)].powi(2) + a[(1, 2)].powi(2);
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[(p, q)];
            if apq.abs() <= 1e-300 {
                continue;
            }
            let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let mut rot = Matrix3::<f64>::identity();
            rot[(p, p)] = c;
            rot[(q, q)] = c;
            rot[(p, q)] = s;
            rot[(q, p)] = -s;
            a = rot.transpose() * a * rot;
            a[(p, q)] = 0.0;
            a[(q, p)] = 0.0;
            v *= rot;
        }
    }
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let vals = Vector3::new(a[(idx[0], idx[0])], a[(idx[1], idx[1])], a[(idx[2], idx[2])]);
    let vecs = Matrix3::from_columns(&[v.column(idx[0]), v.column(idx[1]), v.column(idx[2])]);
    (vals, vecs)
}
