//! Fixed-size matrix helpers for the 4x4 spacetime metric and 3x3 induced
//! metrics. Everything is deterministic: pivoting always takes the largest
//! absolute entry.

pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn inv3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = det3(m);
    let scale = m.iter().flatten().fold(0.0f64, |a, &v| a.max(v.abs()));
    if det.abs() <= 1e-14 * scale.powi(3).max(1e-300) {
        return None;
    }
    let inv_det = 1.0 / det;
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    let mut out = [[0.0; 3]; 3];
    out[0][0] = cof(1, 2, 1, 2) * inv_det;
    out[0][1] = -cof(0, 2, 1, 2) * inv_det;
    out[0][2] = cof(0, 1, 1, 2) * inv_det;
    out[1][0] = -cof(1, 2, 0, 2) * inv_det;
    out[1][1] = cof(0, 2, 0, 2) * inv_det;
    out[1][2] = -cof(0, 1, 0, 2) * inv_det;
    out[2][0] = cof(1, 2, 0, 1) * inv_det;
    out[2][1] = -cof(0, 2, 0, 1) * inv_det;
    out[2][2] = cof(0, 1, 0, 1) * inv_det;
    Some(out)
}

pub fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn inv4(m: &[[f64; 4]; 4]) -> Option<[[f64; 4]; 4]> {
    let mut a = *m;
    let mut inv = [[0.0; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale = m.iter().flatten().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() <= 1e-13 * scale.max(1e-300) {
            return None;
        }
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let f = 1.0 / a[col][col];
        for k in 0..4 {
            a[col][k] *= f;
            inv[col][k] *= f;
        }
        for row in 0..4 {
            if row != col {
                let f = a[row][col];
                for k in 0..4 {
                    a[row][k] -= f * a[col][k];
                    inv[row][k] -= f * inv[col][k];
                }
            }
        }
    }
    Some(inv)
}

/// Eigenvalues of a symmetric 4x4 matrix by cyclic Jacobi rotations,
/// sorted ascending. Used for signature checks.
pub fn sym_eigenvalues4(m: &[[f64; 4]; 4]) -> [f64; 4] {
    let mut a = *m;
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig = [a[0][0], a[1][1], a[2][2], a[3][3]];
    eig.sort_by(f64::total_cmp);
    eig
}
