//! Right modules over an FDAlgebra, given by action matrices.
//!
//! Conventions, used everywhere downstream:
//! - elements are row vectors; the action of an algebra element x is
//!   v |-> v * act(x), so act(x*y) = act(x) * act(y);
//! - only the actions of the algebra's generators are stored; the action of
//!   a basis element is the product along its generator word (this keeps
//!   modules over large endomorphism algebras affordable);
//! - a morphism M -> N is a dim(M) x dim(N) matrix f with v |-> v * f, and
//!   the intertwining law act_M(g) * f = f * act_N(g); "f then g" is f * g.

use std::sync::Arc;

use crate::algebra::{opposite, AlgRef, FDAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct FDModule<F: Scalar> {
    pub algebra: AlgRef<F>,
    pub dim: usize,
    /// gen_actions[g] acts for algebra.generators[g]
    pub gen_actions: Vec<Matrix<F>>,
    pub name: String,
}

pub fn same_owner<F: Scalar>(m: &FDModule<F>, n: &FDModule<F>) -> bool {
    Arc::ptr_eq(&m.algebra, &n.algebra)
}

impl<F: Scalar> FDModule<F> {
    pub fn new(algebra: AlgRef<F>, gen_actions: Vec<Matrix<F>>, name: String) -> Self {
        assert_eq!(gen_actions.len(), algebra.generators.len());
        let dim = gen_actions.first().map_or(0, |m| m.rows);
        for a in &gen_actions {
            assert!(a.rows == dim && a.cols == dim, "action matrices must be square of one size");
        }
        FDModule { algebra, dim, gen_actions, name }
    }

    pub fn zero(algebra: AlgRef<F>) -> Self {
        let g = algebra.generators.len();
        FDModule { algebra, dim: 0, gen_actions: vec![Matrix::zero(0, 0); g], name: "0".into() }
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// The right regular module A_A.
    pub fn regular(algebra: AlgRef<F>) -> Self {
        let gen_actions = algebra
            .generators
            .iter()
            .map(|&g| algebra.right_mult_matrix(&algebra.basis_vec(g)))
            .collect();
        let name = algebra.name.clone();
        FDModule::new(algebra, gen_actions, name)
    }

    pub fn basis_action(&self, b: usize) -> Matrix<F> {
        let mut acc = Matrix::identity(self.dim);
        for &g in &self.algebra.words[b] {
            acc = acc.mul(&self.gen_actions[g]);
        }
        acc
    }

    /// Action of a general algebra element (coordinates over the basis).
    pub fn elem_action(&self, x: &[F]) -> Matrix<F> {
        let mut acc = Matrix::zero(self.dim, self.dim);
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.basis_action(b).scale(c));
            }
        }
        acc
    }

    pub fn idempotent_action(&self, vertex: usize) -> &Matrix<F> {
        // path-algebra style constructions list the idempotents first among
        // the generators, in vertex order
        let pos = self
            .algebra
            .generators
            .iter()
            .position(|&g| g == self.algebra.idempotents[vertex])
            .expect("idempotent is a generator");
        &self.gen_actions[pos]
    }

    /// dim(M e_i) for each vertex i.
    pub fn dimension_vector(&self) -> Vec<usize> {
        (0..self.algebra.idempotents.len()).map(|i| self.idempotent_action(i).rank()).collect()
    }

    /// Full check that the generator actions extend to the algebra: the
    /// word-induced basis actions must reproduce the structure constants.
    pub fn check_module(&self) -> bool {
        let a = &self.algebra;
        let acts: Vec<Matrix<F>> = (0..a.dim).map(|b| self.basis_action(b)).collect();
        let one = a
            .idempotents
            .iter()
            .fold(Matrix::zero(self.dim, self.dim), |acc, &e| acc.add(&acts[e]));
        if one != Matrix::identity(self.dim) {
            return false;
        }
        for i in 0..a.dim {
            for j in 0..a.dim {
                let mut rhs = Matrix::zero(self.dim, self.dim);
                for (k, c) in &a.mult[i][j] {
                    rhs = rhs.add(&acts[*k].scale(c));
                }
                if acts[i].mul(&acts[j]) != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn direct_sum(parts: &[&FDModule<F>]) -> Self {
        assert!(!parts.is_empty());
        let algebra = parts[0].algebra.clone();
        for p in parts {
            assert!(Arc::ptr_eq(&p.algebra, &algebra), "direct sum across algebras");
        }
        let g = algebra.generators.len();
        let gen_actions = (0..g)
            .map(|gi| {
                parts
                    .iter()
                    .skip(1)
                    .fold(parts[0].gen_actions[gi].clone(), |acc, p| acc.block_diag(&p.gen_actions[gi]))
            })
            .collect();
        let name = parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join("+");
        FDModule::new(algebra, gen_actions, name)
    }

    /// Inclusion of the k-th summand into direct_sum(parts).
    pub fn summand_inclusion(parts: &[&FDModule<F>], k: usize) -> Matrix<F> {
        let total: usize = parts.iter().map(|p| p.dim).sum();
        let before: usize = parts[..k].iter().map(|p| p.dim).sum();
        Matrix::from_fn(parts[k].dim, total, |i, j| {
            if j == before + i { F::one() } else { F::zero() }
        })
    }

    /// Projection of direct_sum(parts) onto the k-th summand.
    pub fn summand_projection(parts: &[&FDModule<F>], k: usize) -> Matrix<F> {
        Self::summand_inclusion(parts, k).transpose()
    }

    /// Smallest submodule containing the given row span, as a canonical
    /// (rref) row basis.
    pub fn sub_closure(&self, span: &Matrix<F>) -> Matrix<F> {
        assert_eq!(span.cols, self.dim);
        let mut basis = span.row_space_basis();
        loop {
            if basis.rows == 0 {
                return Matrix::zero(0, self.dim);
            }
            let mut rows: Vec<Vec<F>> = (0..basis.rows).map(|i| basis.row_vec(i)).collect();
            for a in &self.gen_actions {
                for i in 0..basis.rows {
                    rows.push(a.apply_row(basis.row(i)));
                }
            }
            let next = Matrix::from_rows(rows).row_space_basis();
            if next.rows == basis.rows {
                return next;
            }
            basis = next;
        }
    }

    /// Submodule spanned (and closed) by the given rows: the module together
    /// with its inclusion morphism.
    pub fn submodule(&self, span: &Matrix<F>, name: String) -> (FDModule<F>, Matrix<F>) {
        let basis = self.sub_closure(span);
        let gen_actions = self
            .gen_actions
            .iter()
            .map(|a| {
                basis
                    .solve_left(&basis.mul(a))
                    .expect("dims agree")
                    .expect("closed under the action")
            })
            .collect();
        (FDModule::new(self.algebra.clone(), gen_actions, name), basis)
    }

    /// Quotient by the submodule generated by the rows: the module, the
    /// projection morphism, and a linear section of it.
    pub fn quotient(&self, span: &Matrix<F>, name: String) -> (FDModule<F>, Matrix<F>, Matrix<F>) {
        let basis = self.sub_closure(span);
        let (rref, pivots) = basis.rref();
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let q = free.len();
        // projection: reduce a vector modulo the rref basis, read free coords
        let mut proj = Matrix::zero(self.dim, q);
        for j in 0..self.dim {
            let mut v = vec![F::zero(); self.dim];
            v[j] = F::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                if !v[pc].is_zero() {
                    let c = v[pc].clone();
                    for t in 0..self.dim {
                        v[t] = v[t].sub(&c.mul(rref.at(ri, t)));
                    }
                }
            }
            for (k, &fc) in free.iter().enumerate() {
                proj.set(j, k, v[fc].clone());
            }
        }
        let section = Matrix::from_fn(q, self.dim, |i, j| {
            if j == free[i] { F::one() } else { F::zero() }
        });
        let gen_actions = self
            .gen_actions
            .iter()
            .map(|a| {
                proj.solve(&a.mul(&proj))
                    .expect("dims agree")
                    .expect("span is action-invariant")
            })
            .collect();
        (FDModule::new(self.algebra.clone(), gen_actions, name), proj, section)
    }

    /// Submodule M * rad(A).
    pub fn radical_span(&self) -> Result<Matrix<F>> {
        let rad = self.algebra.radical_basis()?;
        let mats: Vec<Matrix<F>> = rad.iter().map(|x| self.elem_action(x)).collect();
        if mats.is_empty() {
            return Ok(Matrix::zero(0, self.dim));
        }
        Ok(Matrix::vstack_all(&mats, self.dim).row_space_basis())
    }

    /// top(M) = M / M rad, with the projection.
    pub fn top(&self) -> Result<(FDModule<F>, Matrix<F>, Matrix<F>)> {
        let span = self.radical_span()?;
        Ok(self.quotient(&span, format!("top({})", self.name)))
    }

    /// socle(M) = annihilator of rad(A), the largest semisimple submodule.
    pub fn socle(&self) -> Result<(FDModule<F>, Matrix<F>)> {
        let rad = self.algebra.radical_basis()?;
        let mut constraints: Vec<Matrix<F>> = Vec::new();
        for x in rad {
            constraints.push(self.elem_action(x));
        }
        let span = if constraints.is_empty() {
            Matrix::identity(self.dim)
        } else {
            let stacked = constraints
                .iter()
                .skip(1)
                .fold(constraints[0].clone(), |acc, c| acc.hstack(c));
            stacked.left_kernel_basis()
        };
        Ok(self.submodule(&span, format!("soc({})", self.name)))
    }
}

/// Kernel of a morphism f: M -> N, with its inclusion into M.
pub fn kernel_module<F: Scalar>(m: &FDModule<F>, f: &Matrix<F>) -> (FDModule<F>, Matrix<F>) {
    assert_eq!(f.rows, m.dim);
    let span = f.left_kernel_basis();
    m.submodule(&span, format!("ker<{}>", m.name))
}

/// Image of f: M -> N as a submodule of N, with its inclusion.
pub fn image_module<F: Scalar>(n: &FDModule<F>, f: &Matrix<F>) -> (FDModule<F>, Matrix<F>) {
    assert_eq!(f.cols, n.dim);
    n.submodule(&f.row_space_basis(), format!("im<{}>", n.name))
}

/// Cokernel of f: M -> N, with the projection N -> coker and a section.
pub fn cokernel_module<F: Scalar>(
    n: &FDModule<F>,
    f: &Matrix<F>,
) -> (FDModule<F>, Matrix<F>, Matrix<F>) {
    assert_eq!(f.cols, n.dim);
    n.quotient(&f.row_space_basis(), format!("coker<{}>", n.name))
}

/// Basis of Hom_A(M, N) as matrices, canonical for fixed inputs.
///
/// Both modules are first vertex-adapted; a morphism is then block-diagonal
/// over the vertices and the intertwining constraints of each non-idempotent
/// generator couple only two blocks at a time, which keeps the linear system
/// small even when the raw action matrices are dense.
pub fn hom_space<F: Scalar>(m: &FDModule<F>, n: &FDModule<F>) -> Result<Vec<Matrix<F>>> {
    if !same_owner(m, n) {
        return Err(Error::OwnerMismatch { context: format!("hom({}, {})", m.name, n.name) });
    }
    if m.dim == 0 || n.dim == 0 {
        return Ok(vec![]);
    }
    let alg = &m.algebra;
    let nv = alg.idempotents.len();
    let (mad, um) = vertex_adapted(m);
    let (nad, un) = vertex_adapted(n);
    let um_inv = um.inverse().expect("base change invertible");
    let dm: Vec<usize> = (0..nv).map(|v| mad.idempotent_action(v).rank()).collect();
    let dn: Vec<usize> = (0..nv).map(|v| nad.idempotent_action(v).rank()).collect();
    let m_off: Vec<usize> = dm.iter().scan(0, |a, &d| { let o = *a; *a += d; Some(o) }).collect();
    let n_off: Vec<usize> = dn.iter().scan(0, |a, &d| { let o = *a; *a += d; Some(o) }).collect();
    // unknown: block f_v of size dm[v] x dn[v] per vertex
    let f_off: Vec<usize> =
        (0..nv).scan(0, |a, v| { let o = *a; *a += dm[v] * dn[v]; Some(o) }).collect();
    let unknowns = (0..nv).map(|v| dm[v] * dn[v]).sum::<usize>();
    let idx = |v: usize, a: usize, b: usize| f_off[v] + a * dn[v] + b;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (g, &gb) in alg.generators.iter().enumerate() {
        if alg.idempotents.contains(&gb) {
            continue; // encoded by the block structure
        }
        let am = &mad.gen_actions[g];
        let an = &nad.gen_actions[g];
        for s in 0..nv {
            for t in 0..nv {
                // constraint A[s,t] f_t = f_s B[s,t] entrywise
                let a_blk = |p: usize, k: usize| am.at(m_off[s] + p, m_off[t] + k);
                let b_blk = |l: usize, q: usize| an.at(n_off[s] + l, n_off[t] + q);
                let mut nontrivial = false;
                'chk: for p in 0..dm[s] {
                    for k in 0..dm[t] {
                        if !a_blk(p, k).is_zero() {
                            nontrivial = true;
                            break 'chk;
                        }
                    }
                }
                if !nontrivial {
                    'chk2: for l in 0..dn[s] {
                        for q in 0..dn[t] {
                            if !b_blk(l, q).is_zero() {
                                nontrivial = true;
                                break 'chk2;
                            }
                        }
                    }
                }
                if !nontrivial {
                    continue;
                }
                for p in 0..dm[s] {
                    for q in 0..dn[t] {
                        let mut row = vec![F::zero(); unknowns];
                        for k in 0..dm[t] {
                            row[idx(t, k, q)] = row[idx(t, k, q)].add(a_blk(p, k));
                        }
                        for l in 0..dn[s] {
                            row[idx(s, p, l)] = row[idx(s, p, l)].sub(b_blk(l, q));
                        }
                        if row.iter().any(|c| !c.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let ker = if rows.is_empty() {
        Matrix::identity(unknowns)
    } else {
        Matrix::from_rows(rows).kernel_basis().transpose()
    };
    let mut out = Vec::with_capacity(ker.rows);
    for r in 0..ker.rows {
        let mut fad = Matrix::zero(m.dim, n.dim);
        for v in 0..nv {
            for a in 0..dm[v] {
                for b in 0..dn[v] {
                    fad.set(m_off[v] + a, n_off[v] + b, ker.at(r, idx(v, a, b)).clone());
                }
            }
        }
        out.push(um_inv.mul(&fad).mul(&un));
    }
    Ok(out)
}

pub fn hom_dim<F: Scalar>(m: &FDModule<F>, n: &FDModule<F>) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// k-linear dual as a module over the opposite algebra: actions transpose.
pub fn dual_module<F: Scalar>(m: &FDModule<F>) -> FDModule<F> {
    let op = opposite(&m.algebra);
    let gen_actions = m.gen_actions.iter().map(Matrix::transpose).collect();
    FDModule::new(op, gen_actions, format!("D({})", m.name))
}

/// Indecomposable projective P_i = e_i A, cut out of the regular module.
/// Also returns the basis rows of P_i as algebra-element coordinates.
pub fn projective_with_basis<F: Scalar>(algebra: &AlgRef<F>, i: usize) -> (FDModule<F>, Matrix<F>) {
    let reg = FDModule::regular(algebra.clone());
    let e = algebra.basis_vec(algebra.idempotents[i]);
    let span = algebra.left_mult_matrix(&e);
    reg.submodule(&span, format!("P_{}", i + 1))
}

pub fn projective_module<F: Scalar>(algebra: &AlgRef<F>, i: usize) -> FDModule<F> {
    projective_with_basis(algebra, i).0
}

/// Simple top of P_i.
pub fn simple_module<F: Scalar>(algebra: &AlgRef<F>, i: usize) -> Result<FDModule<F>> {
    let p = projective_module(algebra, i);
    let (mut s, _, _) = p.top()?;
    s.name = format!("S_{}", i + 1);
    Ok(s)
}

/// Indecomposable injective I_i = D(e_i A^op).
pub fn injective_module<F: Scalar>(algebra: &AlgRef<F>, i: usize) -> FDModule<F> {
    let op = opposite(algebra);
    let p = projective_module(&op, i);
    let mut m = dual_module(&p);
    assert!(Arc::ptr_eq(&m.algebra, algebra), "double opposite returns the original");
    m.name = format!("I_{}", i + 1);
    m
}

/// Source and target vertex of each non-idempotent generator, when those are
/// determined (e_s g = g = g e_t for unique s, t). Path-algebra owners and
/// the triangular constructions satisfy this.
pub fn generator_vertices<F: Scalar>(a: &FDAlgebra<F>) -> Result<Vec<(usize, usize)>> {
    let nv = a.idempotents.len();
    let mut out = Vec::new();
    for &g in a.generators.iter().skip(nv) {
        let gv = a.basis_vec(g);
        let mut st = None;
        for s in 0..nv {
            for t in 0..nv {
                let es = a.basis_vec(a.idempotents[s]);
                let et = a.basis_vec(a.idempotents[t]);
                if a.mul_elems(&es, &gv) == gv && a.mul_elems(&gv, &et) == gv {
                    if st.is_some() {
                        return Err(Error::Internal("generator with ambiguous vertices".into()));
                    }
                    st = Some((s, t));
                }
            }
        }
        out.push(st.ok_or_else(|| Error::Internal("generator not between idempotents".into()))?);
    }
    Ok(out)
}

/// Build a module from a quiver representation: one dimension per vertex and
/// one d_s x d_t matrix per non-idempotent generator g (with e_s g = g e_t).
pub fn module_from_representation<F: Scalar>(
    algebra: &AlgRef<F>,
    dims: &[usize],
    arrow_mats: &[Matrix<F>],
    name: String,
) -> Result<FDModule<F>> {
    let nv = algebra.idempotents.len();
    if dims.len() != nv {
        return Err(Error::DimensionMismatch { context: "one dimension per vertex".into() });
    }
    let verts = generator_vertices(algebra)?;
    if arrow_mats.len() != verts.len() {
        return Err(Error::DimensionMismatch { context: "one matrix per arrow generator".into() });
    }
    let total: usize = dims.iter().sum();
    let offset: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let mut gen_actions = Vec::new();
    for v in 0..nv {
        let mut m = Matrix::zero(total, total);
        for i in 0..dims[v] {
            m.set(offset[v] + i, offset[v] + i, F::one());
        }
        gen_actions.push(m);
    }
    for (k, mat) in arrow_mats.iter().enumerate() {
        let (s, t) = verts[k];
        if mat.rows != dims[s] || mat.cols != dims[t] {
            return Err(Error::DimensionMismatch {
                context: format!("arrow matrix {k} must be {} x {}", dims[s], dims[t]),
            });
        }
        let mut m = Matrix::zero(total, total);
        for i in 0..mat.rows {
            for j in 0..mat.cols {
                m.set(offset[s] + i, offset[t] + j, mat.at(i, j).clone());
            }
        }
        gen_actions.push(m);
    }
    let module = FDModule::new(algebra.clone(), gen_actions, name);
    if !module.check_module() {
        return Err(Error::BadInput("representation violates the relations".into()));
    }
    Ok(module)
}

/// Base change making every idempotent act as a coordinate projection onto a
/// consecutive block (vertex order). Returns the adapted module and the
/// change-of-coordinates u with new = u_inv-coords; old row v corresponds to
/// new row w with v = w * u.
pub fn vertex_adapted<F: Scalar>(m: &FDModule<F>) -> (FDModule<F>, Matrix<F>) {
    let nv = m.algebra.idempotents.len();
    let mut rows: Vec<Vec<F>> = Vec::new();
    for v in 0..nv {
        let img = m.idempotent_action(v).row_space_basis();
        for i in 0..img.rows {
            rows.push(img.row_vec(i));
        }
    }
    let u = Matrix::from_rows(rows);
    assert_eq!(u.rows, m.dim, "idempotent images span the module");
    let u_inv = u.inverse().expect("base change invertible");
    let gen_actions = m.gen_actions.iter().map(|a| u.mul(a).mul(&u_inv)).collect();
    (FDModule::new(m.algebra.clone(), gen_actions, m.name.clone()), u)
}

/// Extract the quiver representation of a module over a quiver-presented
/// algebra: per-vertex dimensions and one matrix per arrow generator.
pub fn representation_of_module<F: Scalar>(
    m: &FDModule<F>,
) -> Result<(Vec<usize>, Vec<Matrix<F>>)> {
    let nv = m.algebra.idempotents.len();
    let verts = generator_vertices(&m.algebra)?;
    let (ad, _) = vertex_adapted(m);
    let dims: Vec<usize> = (0..nv).map(|v| ad.idempotent_action(v).rank()).collect();
    let offset: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let mats = verts
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            let a = &ad.gen_actions[nv + k];
            Matrix::from_fn(dims[s], dims[t], |i, j| a.at(offset[s] + i, offset[t] + j).clone())
        })
        .collect();
    Ok((dims, mats))
}
