//! Bimodules and the tensor/Hom functors between module categories.
//!
//! An A-B-bimodule is stored as two module structures on one space: the
//! right B-structure directly, and the left A-structure as a right module
//! over the opposite algebra (row-vector convention throughout).

use crate::algebra::{opposite, AlgRef};
use crate::error::{Error, Result};
use crate::linalg::{coords_in, Matrix};
use crate::module::{dual_module, hom_space, kernel_module, same_owner, FDModule};
use crate::homological::minimal_resolution_prefix;
use crate::scalar::Scalar;
use std::sync::Arc;

/// An A-B-bimodule: `left` is the left A-structure (a module over A^op),
/// `right` the right B-structure, on the same underlying space.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Scalar> {
    pub left: FDModule<F>,
    pub right: FDModule<F>,
}

impl<F: Scalar> Bimodule<F> {
    pub fn dim(&self) -> usize {
        self.right.dim
    }

    /// Algebra acting on the left (not its opposite).
    pub fn left_algebra(&self) -> AlgRef<F> {
        opposite(&self.left.algebra)
    }

    pub fn right_algebra(&self) -> AlgRef<F> {
        self.right.algebra.clone()
    }

    /// Matrix of v -> a_i * v for the i-th basis element of the left algebra.
    pub fn left_basis_action(&self, i: usize) -> Matrix<F> {
        self.left.basis_action(i)
    }

    /// Matrix of v -> v * b_j for the j-th basis element of the right algebra.
    pub fn right_basis_action(&self, j: usize) -> Matrix<F> {
        self.right.basis_action(j)
    }

    /// Both structures are modules and the two actions commute.
    pub fn check(&self) -> bool {
        if self.left.dim != self.right.dim {
            return false;
        }
        if !self.left.check_module() || !self.right.check_module() {
            return false;
        }
        for l in &self.left.gen_actions {
            for r in &self.right.gen_actions {
                if l.mul(r) != r.mul(l) {
                    return false;
                }
            }
        }
        true
    }
}

/// A as an A-A-bimodule.
pub fn regular_bimodule<F: Scalar>(a: &AlgRef<F>) -> Bimodule<F> {
    let opp = opposite(a);
    let left_actions =
        opp.generators.iter().map(|&g| a.left_mult_matrix(&a.basis_vec(g))).collect();
    Bimodule {
        left: FDModule::new(opp, left_actions, format!("{}(l)", a.name)),
        right: FDModule::regular(a.clone()),
    }
}

/// DA as an A-A-bimodule: (f * a)(x) = f(a x) and (a * f)(x) = f(x a).
pub fn dual_regular_bimodule<F: Scalar>(a: &AlgRef<F>) -> Bimodule<F> {
    let opp = opposite(a);
    let left_actions: Vec<Matrix<F>> =
        opp.generators.iter().map(|&g| a.right_mult_matrix(&a.basis_vec(g)).transpose()).collect();
    let right_actions: Vec<Matrix<F>> =
        a.generators.iter().map(|&g| a.left_mult_matrix(&a.basis_vec(g)).transpose()).collect();
    Bimodule {
        left: FDModule::new(opp, left_actions, format!("D{}(l)", a.name)),
        right: FDModule::new(a.clone(), right_actions, format!("D{}", a.name)),
    }
}

/// The k-linear dual of a B-A-bimodule as an A-B-bimodule: both actions
/// transpose and swap sides.
pub fn dual_bimodule<F: Scalar>(t: &Bimodule<F>) -> Bimodule<F> {
    Bimodule { left: dual_module(&t.right), right: dual_module(&t.left) }
}

/// Hom_A(T, X) as a right module over the left algebra B of the B-A-bimodule
/// T, acting by precomposition. Returns the module and the hom basis
/// realizing its elements.
pub fn hom_functor<F: Scalar>(
    t: &Bimodule<F>,
    x: &FDModule<F>,
) -> Result<(FDModule<F>, Vec<Matrix<F>>)> {
    if !same_owner(&t.right, x) {
        return Err(Error::OwnerMismatch { context: format!("hom_functor({})", x.name) });
    }
    let b_op = t.left.algebra.clone(); // = opposite of the left algebra B
    let b = opposite(&b_op);
    let homs = hom_space(&t.right, x)?;
    let mut gen_actions = Vec::with_capacity(b.generators.len());
    for (k, _) in b.generators.iter().enumerate() {
        // phi * b = phi after left multiplication by b on T
        let lam = &t.left.gen_actions[k];
        let imgs: Vec<Matrix<F>> = homs.iter().map(|h| lam.mul(h)).collect();
        gen_actions.push(coords_in(&homs, &imgs));
    }
    let md = FDModule::new(b, gen_actions, format!("Hom(T,{})", x.name));
    Ok((md, homs))
}

/// Y tensor_B T for Y a right B-module and T a B-A-bimodule, as a right
/// A-module. Returns the module, the projection from the plain tensor
/// product space (index y_i tensor t_k -> i * dim T + k), and a section of
/// that projection.
pub fn tensor_functor<F: Scalar>(
    y: &FDModule<F>,
    t: &Bimodule<F>,
) -> Result<(FDModule<F>, Matrix<F>, Matrix<F>)> {
    let b_op = &t.left.algebra;
    let b = opposite(b_op);
    if !Arc::ptr_eq(&y.algebra, &b) {
        return Err(Error::OwnerMismatch { context: format!("tensor_functor({})", y.name) });
    }
    let a = t.right_algebra();
    let (dy, dt) = (y.dim, t.dim());
    let big = dy * dt;
    // plain tensor space with the A-action on the second factor
    let actions: Vec<Matrix<F>> = a
        .generators
        .iter()
        .enumerate()
        .map(|(k, _)| {
            let r = &t.right.gen_actions[k];
            Matrix::from_fn(big, big, |p, q| {
                if p / dt == q / dt { r.at(p % dt, q % dt).clone() } else { F::zero() }
            })
        })
        .collect();
    let plain = FDModule::new(a, actions, format!("{}(x){}", y.name, t.right.name));
    // balancing relations y*b (x) t - y (x) b*t over the generators of B
    let mut rel_rows: Vec<Vec<F>> = Vec::new();
    for (k, _) in b.generators.iter().enumerate() {
        let rb = &y.gen_actions[k];
        let lb = &t.left.gen_actions[k];
        for i in 0..dy {
            for j in 0..dt {
                let mut row = vec![F::zero(); big];
                for c in 0..dy {
                    let v = rb.at(i, c);
                    if !v.is_zero() {
                        row[c * dt + j] = row[c * dt + j].add(v);
                    }
                }
                for c in 0..dt {
                    let v = lb.at(j, c);
                    if !v.is_zero() {
                        row[i * dt + c] = row[i * dt + c].sub(v);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rel_rows.push(row);
                }
            }
        }
    }
    let span = if rel_rows.is_empty() {
        Matrix::zero(0, big)
    } else {
        Matrix::from_rows(rel_rows)
    };
    let (q, proj, section) = plain.quotient(&span, format!("{}(x)_B{}", y.name, t.right.name));
    Ok((q, proj, section))
}

/// dim Tor_1^B(Y, T) for Y a right B-module and T a B-A-bimodule, from a
/// minimal projective presentation of Y tensored with T.
pub fn tor1<F: Scalar>(y: &FDModule<F>, t: &Bimodule<F>) -> Result<usize> {
    // terms P2 -> P1 -> P0 -> Y
    let res = minimal_resolution_prefix(y, 2)?;
    let tens = |i: usize| -> Result<Option<(FDModule<F>, Matrix<F>, Matrix<F>)>> {
        match res.terms.get(i) {
            None => Ok(None),
            Some(p) if p.is_zero() => Ok(None),
            Some(p) => Ok(Some(tensor_functor(p, t)?)),
        }
    };
    let Some((q1, proj1, sec1)) = tens(1)? else { return Ok(0) };
    let (_, proj0, _) = tens(0)?.expect("P0 nonzero when P1 is");
    let dt = t.dim();
    let expand = |d: &Matrix<F>| -> Matrix<F> {
        // d (x) id on the plain tensor spaces
        Matrix::from_fn(d.rows * dt, d.cols * dt, |p, q| {
            if p % dt == q % dt { d.at(p / dt, q / dt).clone() } else { F::zero() }
        })
    };
    // induced maps on the quotients, via representatives
    let d1q = sec1.mul(&expand(&res.maps[0])).mul(&proj0);
    let (ker, _) = kernel_module(&q1, &d1q);
    let im2_rank = match tens(2)? {
        None => 0,
        Some((_, _, sec2)) => sec2.mul(&expand(&res.maps[1])).mul(&proj1).rank(),
    };
    Ok(ker.dim - im2_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{ka2, ka3};
    use crate::decomp::iso_test;
    use crate::module::{projective_module, simple_module};

    #[test]
    fn regular_and_dual_regular_are_bimodules() {
        for alg in [ka2(), ka3()] {
            assert!(regular_bimodule(&alg).check());
            assert!(dual_regular_bimodule(&alg).check());
        }
    }

    #[test]
    fn hom_functor_of_regular_is_identity() {
        // Hom_A(A, X) = X as right A-modules
        let a = ka3();
        let t = regular_bimodule(&a);
        for i in 0..3 {
            let x = projective_module(&a, i);
            let (h, _) = hom_functor(&t, &x).unwrap();
            assert!(h.check_module());
            assert!(iso_test(&h, &x).unwrap().is_some());
        }
    }

    #[test]
    fn tensor_with_regular_is_identity() {
        let a = ka3();
        let t = regular_bimodule(&a);
        for i in 0..3 {
            let y = projective_module(&a, i);
            let (q, _, _) = tensor_functor(&y, &t).unwrap();
            assert!(q.check_module());
            assert!(iso_test(&q, &y).unwrap().is_some());
        }
        let s = simple_module(&a, 1).unwrap();
        let (q, _, _) = tensor_functor(&s, &t).unwrap();
        assert!(iso_test(&q, &s).unwrap().is_some());
    }

    #[test]
    fn tor_vanishes_against_regular() {
        let a = ka2();
        let t = regular_bimodule(&a);
        for i in 0..2 {
            assert_eq!(tor1(&simple_module(&a, i).unwrap(), &t).unwrap(), 0);
        }
    }

    #[test]
    fn tor_against_dual_regular() {
        // Tor_1(S1, DA) = D Ext^1(S1, A), which is 1-dimensional over kA2:
        // from 0 -> P2 -> P1 -> S1 -> 0, Ext^1(S1, P2) = 1 and Ext^1(S1, P1) = 0
        let a = ka2();
        let t = dual_regular_bimodule(&a);
        let s1 = simple_module(&a, 0).unwrap();
        assert_eq!(tor1(&s1, &t).unwrap(), 1);
        let s2 = simple_module(&a, 1).unwrap();
        assert_eq!(tor1(&s2, &t).unwrap(), 0);
    }
}
