//! Small univariate polynomial helpers used by the decomposition machinery.
//! Coefficients low to high; the zero polynomial is the empty vector.

use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub fn trim<F: Scalar>(mut p: Vec<F>) -> Vec<F> {
    while p.last().map_or(false, F::is_zero) {
        p.pop();
    }
    p
}

pub fn degree<F: Scalar>(p: &[F]) -> Option<usize> {
    if p.is_empty() { None } else { Some(p.len() - 1) }
}

pub fn eval<F: Scalar>(p: &[F], x: &F) -> F {
    let mut acc = F::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

pub fn derivative<F: Scalar>(p: &[F]) -> Vec<F> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_i64(i as i64)))
            .collect(),
    )
}

pub fn monic<F: Scalar>(p: &[F]) -> Vec<F> {
    let p = trim(p.to_vec());
    match p.last() {
        None => p,
        Some(l) => {
            let inv = l.inv().expect("leading coefficient nonzero");
            p.iter().map(|c| c.mul(&inv)).collect()
        }
    }
}

/// Euclidean division: (quotient, remainder).
pub fn divrem<F: Scalar>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().inv().unwrap();
    let mut q = vec![F::zero(); r.len().saturating_sub(db)];
    while r.len() > db || (r.len() == b.len() && !r.is_empty() && db == 0) {
        if r.is_empty() || r.len() - 1 < db {
            break;
        }
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap().mul(&lead_inv);
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&c.mul(bc));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn gcd<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Evaluate p at a square matrix.
pub fn eval_matrix<F: Scalar>(p: &[F], m: &Matrix<F>) -> Matrix<F> {
    let n = m.rows;
    let mut acc = Matrix::zero(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            acc.set(i, i, acc.at(i, i).add(c));
        }
    }
    acc
}

/// Product of two polynomials.
pub fn mul_poly<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, ac) in a.iter().enumerate() {
        if ac.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ac.mul(bc));
        }
    }
    trim(out)
}

/// v * p(M) for a row vector v, by Horner on vectors.
fn apply_poly_row<F: Scalar>(p: &[F], m: &Matrix<F>, v: &[F]) -> Vec<F> {
    let mut acc = vec![F::zero(); v.len()];
    for c in p.iter().rev() {
        acc = m.apply_row(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            *a = a.add(&c.mul(x));
        }
    }
    acc
}

/// Minimal polynomial of a square matrix, as the least common multiple of
/// the annihilators of the standard basis vectors: each step computes the
/// Krylov sequence of the current residual vector, never a full matrix
/// power. Monic.
pub fn min_poly<F: Scalar>(m: &Matrix<F>) -> Vec<F> {
    let n = m.rows;
    assert!(m.is_square());
    if n == 0 {
        return vec![F::one()];
    }
    let mut p = vec![F::one()];
    for i in 0..n {
        let mut e = vec![F::zero(); n];
        e[i] = F::one();
        // residual: p(M) applied to e_i; its order q gives p*q = lcm(p, ord e_i)
        let v = apply_poly_row(&p, m, &e);
        if v.iter().all(F::is_zero) {
            continue;
        }
        let mut rows = vec![v.clone()];
        let mut cur = v;
        let q = loop {
            cur = m.apply_row(&cur);
            let a = Matrix::from_rows(rows.clone()).transpose();
            let b = Matrix::from_fn(n, 1, |r, _| cur[r].clone());
            if let Some(x) = a.solve(&b).expect("dims agree") {
                let k = rows.len();
                let mut q: Vec<F> = (0..k).map(|j| x.at(j, 0).neg()).collect();
                q.push(F::one());
                break q;
            }
            rows.push(cur.clone());
            assert!(rows.len() <= n + 1, "Krylov sequence exceeded dimension");
        };
        p = mul_poly(&p, &q);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn p(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_i64(x)).collect()
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[2, 0, -3, 1]); // t^3 - 3t^2 + 2
        let b = p(&[-1, 1]); // t - 1
        let (q, r) = divrem(&a, &b);
        // a = q*b + r
        let mut back = vec![Q::from_i64(0); a.len()];
        for (i, qc) in q.iter().enumerate() {
            for (j, bc) in b.iter().enumerate() {
                back[i + j] = back[i + j].add(&qc.mul(bc));
            }
        }
        for (i, rc) in r.iter().enumerate() {
            back[i] = back[i].add(rc);
        }
        assert_eq!(trim(back), trim(a));
    }

    #[test]
    fn gcd_of_common_factor() {
        // (t-1)(t-2) and (t-1)(t+5)
        let a = p(&[2, -3, 1]);
        let b = p(&[-5, 4, 1]);
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn min_poly_of_projection() {
        // diag(1,1,0): minimal polynomial t^2 - t
        let m: Matrix<Q> = Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert_eq!(min_poly(&m), p(&[0, -1, 1]));
        assert!(eval_matrix(&min_poly(&m), &m).is_zero());
    }

    #[test]
    fn min_poly_nilpotent() {
        let m: Matrix<Q> = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(min_poly(&m), p(&[0, 0, 1]));
    }
}
