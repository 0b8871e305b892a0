#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::Rng;
use vqc_core::statevec::{Angle, GateOp, StateVector};

pub type Mat = Vec<Vec<C>>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn h2() -> [[C; 2]; 2] {
    let s = 1.0 / 2f64.sqrt();
    [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]
}

pub fn ry2(t: f64) -> [[C; 2]; 2] {
    let (s, co) = (t / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

pub fn rz2(t: f64) -> [[C; 2]; 2] {
    [
        [C::from_polar(1.0, -t / 2.0), c(0.0, 0.0)],
        [c(0.0, 0.0), C::from_polar(1.0, t / 2.0)],
    ]
}

pub fn p2(l: f64) -> [[C; 2]; 2] {
    [
        [c(1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), C::from_polar(1.0, l)],
    ]
}

pub fn x2() -> [[C; 2]; 2] {
    [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn y2() -> [[C; 2]; 2] {
    [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]
}

pub fn z2() -> [[C; 2]; 2] {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
}

fn bit(i: usize, q: usize, n: usize) -> usize {
    (i >> (n - 1 - q)) & 1
}

fn same_except(i: usize, j: usize, qs: &[usize], n: usize) -> bool {
    let mask: usize = qs.iter().map(|&q| 1 << (n - 1 - q)).sum();
    (i & !mask) == (j & !mask)
}

/// Full `2^n × 2^n` matrix of a single-qubit gate `u` on qubit `q`.
pub fn embed1(u: [[C; 2]; 2], q: usize, n: usize) -> Mat {
    let d = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); d]; d];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if same_except(i, j, &[q], n) {
                *v = u[bit(i, q, n)][bit(j, q, n)];
            }
        }
    }
    m
}

/// Full matrix of controlled-`u` with control `ctl` and target `tgt`.
pub fn embed_controlled(u: [[C; 2]; 2], ctl: usize, tgt: usize, n: usize) -> Mat {
    let d = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); d]; d];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if bit(j, ctl, n) == 0 {
                if i == j {
                    *v = c(1.0, 0.0);
                }
            } else if bit(i, ctl, n) == 1 && same_except(i, j, &[tgt], n) {
                *v = u[bit(i, tgt, n)][bit(j, tgt, n)];
            }
        }
    }
    m
}

pub fn bound(a: &Angle) -> f64 {
    match a {
        Angle::Value(v) => *v,
        other => panic!("oracle needs bound angles, got {other:?}"),
    }
}

pub fn op_matrix(op: &GateOp, n: usize) -> Mat {
    match op {
        GateOp::H(q) => embed1(h2(), *q, n),
        GateOp::Ry(q, a) => embed1(ry2(bound(a)), *q, n),
        GateOp::Rz(q, a) => embed1(rz2(bound(a)), *q, n),
        GateOp::P(q, a) => embed1(p2(bound(a)), *q, n),
        GateOp::Cx(ct, t) => embed_controlled(x2(), *ct, *t, n),
        GateOp::Cy(ct, t) => embed_controlled(y2(), *ct, *t, n),
        GateOp::Cz(ct, t) => embed_controlled(z2(), *ct, *t, n),
    }
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut out = vec![vec![c(0.0, 0.0); d]; d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i][k];
            if aik == c(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn identity(d: usize) -> Mat {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect()
}

/// Product of all op matrices, later ops on the left.
pub fn circuit_unitary(ops: &[GateOp], n: usize) -> Mat {
    ops.iter()
        .fold(identity(1 << n), |acc, op| matmul(&op_matrix(op, n), &acc))
}

pub fn matvec(m: &Mat, v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Dense-oracle state after running `ops` from |0…0⟩.
pub fn oracle_state(ops: &[GateOp], n: usize) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(1.0, 0.0);
    matvec(&circuit_unitary(ops, n), &v)
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn random_op<R: Rng>(rng: &mut R, n: usize) -> GateOp {
    let q = rng.random_range(0..n);
    let theta = rng.random_range(-2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI);
    let kinds = if n >= 2 { 7 } else { 4 };
    let kind = rng.random_range(0..kinds);
    let t = if n >= 2 {
        (q + 1 + rng.random_range(0..n - 1)) % n
    } else {
        q
    };
    match kind {
        0 => GateOp::H(q),
        1 => GateOp::Ry(q, Angle::Value(theta)),
        2 => GateOp::Rz(q, Angle::Value(theta)),
        3 => GateOp::P(q, Angle::Value(theta)),
        4 => GateOp::Cx(q, t),
        5 => GateOp::Cy(q, t),
        _ => GateOp::Cz(q, t),
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<GateOp> {
    (0..len).map(|_| random_op(rng, n)).collect()
}

pub fn run_ops(ops: &[GateOp], n: usize) -> StateVector {
    let mut s = vqc_core::statevec::zero_state(n).unwrap();
    for op in ops {
        s.apply(op).unwrap();
    }
    s
}

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
/// Returns eigenvalues (descending) and matching unit eigenvectors.
pub fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = cs * mkp - sn * mkq;
                    m[k][q] = sn * mkp + cs * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = cs * mpk - sn * mqk;
                    m[q][k] = sn * mpk + cs * mqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = cs * vp - sn * vq;
                    row[q] = sn * vp + cs * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j][j].partial_cmp(&m[i][i]).unwrap());
    let values = order.iter().map(|&i| m[i][i]).collect();
    let vectors = order
        .iter()
        .map(|&i| (0..n).map(|k| v[k][i]).collect())
        .collect();
    (values, vectors)
}

/// Sample covariance (denominator n − 1).
pub fn covariance(x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    let d = x[0].len();
    let mean: Vec<f64> = (0..d)
        .map(|j| x.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();
    (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    x.iter()
                        .map(|r| (r[a] - mean[a]) * (r[b] - mean[b]))
                        .sum::<f64>()
                        / (n - 1) as f64
                })
                .collect()
        })
        .collect()
}

/// `Σ_i v_i v_iᵀ` over the given row vectors.
pub fn projector(vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = vs[0].len();
    (0..d)
        .map(|a| {
            (0..d)
                .map(|b| vs.iter().map(|v| v[a] * v[b]).sum())
                .collect()
        })
        .collect()
}

/// Pairwise Mann–Whitney count: `(wins + ties/2) / (P·N)`.
pub fn brute_auroc(y: &[u8], s: &[f64]) -> f64 {
    let mut twice = 0u64;
    let mut pairs = 0u64;
    for i in 0..y.len() {
        for j in 0..y.len() {
            if y[i] == 1 && y[j] == 0 {
                pairs += 1;
                if s[i] > s[j] {
                    twice += 2;
                } else if s[i] == s[j] {
                    twice += 1;
                }
            }
        }
    }
    twice as f64 / (2 * pairs) as f64
}

/// Even-parity probability mass on `measured`, enumerating every basis state.
pub fn brute_even_parity(amps: &[C], n: usize, measured: &[usize]) -> f64 {
    let mut p = 0.0;
    for (i, a) in amps.iter().enumerate() {
        let ones: usize = measured.iter().map(|&q| bit(i, q, n)).sum();
        if ones % 2 == 0 {
            p += a.norm_sqr();
        }
    }
    p
}
