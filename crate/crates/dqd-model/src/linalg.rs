use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

pub type C = Complex64;
pub type M2 = Matrix2<C>;
pub type M4 = Matrix4<C>;

pub const fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Pauli matrices indexed 0..3 as x, y, z.
pub fn pauli(i: usize) -> M2 {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match i {
        0 => M2::new(z, o, o, z),
        1 => M2::new(z, c(0.0, -1.0), c(0.0, 1.0), z),
        2 => M2::new(o, z, z, -o),
        _ => panic!("pauli index {i} out of range"),
    }
}

pub fn kron(a: &M2, b: &M2) -> M4 {
    M4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

pub fn trace_product(a: &M4, b: &M4) -> C {
    let mut s = c(0.0, 0.0);
    for i in 0..4 {
        for k in 0..4 {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s
}

pub fn max_abs_diff(a: &M4, b: &M4) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian 4x4 matrix in ascending order.
pub fn hermitian_eigenvalues(m: &M4) -> [f64; 4] {
    let h = (m + m.adjoint()).scale(0.5);
    let ev = h.symmetric_eigenvalues();
    let mut out = [ev[0], ev[1], ev[2], ev[3]];
    out.sort_by(|a, b| a.total_cmp(b));
    out
}
