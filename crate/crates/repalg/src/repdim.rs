//! Right and left add(M)-approximations, add(M)-resolutions with the
//! Hom-exactness condition, Auslander generator bundles, and representation
//! dimension bounds via gl.dim End(M) <= n + 2.

use crate::algebra::AlgRef;
use crate::bimodule::{dual_bimodule, tensor_functor};
use crate::constructions::{
    ind_modules, mor_generators, triangular_matrix_algebra, Subcategory, TriangularAlgebra,
    TripleModule,
};
use crate::decomp::{decompose, end_radical_coords};
use crate::error::{Error, Result};
use crate::homological::global_dimension;
use crate::linalg::Matrix;
use crate::module::{
    dual_module, hom_space, injective_module, kernel_module, projective_module, FDModule,
};
use crate::scalar::Scalar;
use crate::tilting::{tilting_bimodule, TiltingModule};
use crate::{endomorphism_algebra, t2_algebra};

/// Where a generator bundle came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Thm31,
    Thm32,
    Thm47,
    Additive,
    Custom,
}

/// A generator-cogenerator candidate M, kept as its indecomposable summands.
pub struct GeneratorBundle<F: Scalar> {
    pub summands: Subcategory<F>,
    pub provenance: Provenance,
}

/// Contains every indecomposable projective and every indecomposable
/// injective of the owner, up to isomorphism.
pub fn is_generator_cogenerator<F: Scalar>(s: &Subcategory<F>) -> Result<bool> {
    let a = &s.algebra;
    for v in 0..a.idempotents.len() {
        if !s.contains(&projective_module(a, v))? {
            return Ok(false);
        }
        if !s.contains(&injective_module(a, v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An approximation morphism between x and a sum of bundle summands. For a
/// right approximation `map` is domain.dim by x.dim; for a left one it is
/// x.dim by domain.dim (the sum is then the codomain).
pub struct Approximation<F: Scalar> {
    pub domain: FDModule<F>,
    /// bundle index of each copy, in block order
    pub parts: Vec<usize>,
    pub map: Matrix<F>,
}

fn flat_row<F: Scalar>(m: &Matrix<F>) -> Vec<F> {
    let mut v = Vec::with_capacity(m.rows * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            v.push(m.at(i, j).clone());
        }
    }
    v
}

fn sum_of<F: Scalar>(reps: &[FDModule<F>], parts: &[usize]) -> FDModule<F> {
    let refs: Vec<&FDModule<F>> = parts.iter().map(|&i| &reps[i]).collect();
    FDModule::direct_sum(&refs)
}

/// Hom(M_j, domain) -> Hom(M_j, x) surjective for every bundle summand M_j.
pub fn is_right_approximation<F: Scalar>(
    reps: &[FDModule<F>],
    domain: &FDModule<F>,
    f: &Matrix<F>,
    x: &FDModule<F>,
) -> Result<bool> {
    for mj in reps {
        let want = hom_space(mj, x)?.len();
        if want == 0 {
            continue;
        }
        let dom_homs = hom_space(mj, domain)?;
        let rows: Vec<Vec<F>> = dom_homs.iter().map(|h| flat_row(&h.mul(f))).collect();
        let got = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
        if got < want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hom(domain, M_j) -> Hom(x, M_j) surjective for every bundle summand M_j.
pub fn is_left_approximation<F: Scalar>(
    reps: &[FDModule<F>],
    x: &FDModule<F>,
    f: &Matrix<F>,
    codomain: &FDModule<F>,
) -> Result<bool> {
    for mj in reps {
        let want = hom_space(x, mj)?.len();
        if want == 0 {
            continue;
        }
        let cod_homs = hom_space(codomain, mj)?;
        let rows: Vec<Vec<F>> = cod_homs.iter().map(|h| flat_row(&f.mul(h))).collect();
        let got = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
        if got < want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The universal right add(M)-approximation: one copy of M_i per basis
/// element of Hom(M_i, x), mapping by that basis element.
pub fn right_approximation<F: Scalar>(
    s: &Subcategory<F>,
    x: &FDModule<F>,
) -> Result<Approximation<F>> {
    if x.is_zero() {
        return Ok(Approximation {
            domain: FDModule::zero(x.algebra.clone()),
            parts: vec![],
            map: Matrix::zero(0, 0),
        });
    }
    let mut parts = Vec::new();
    let mut blocks: Vec<Matrix<F>> = Vec::new();
    for (i, mi) in s.reps.iter().enumerate() {
        for h in hom_space(mi, x)? {
            parts.push(i);
            blocks.push(h);
        }
    }
    if parts.is_empty() {
        return Err(Error::BadInput(format!("no maps from the bundle onto {}", x.name)));
    }
    let domain = sum_of(&s.reps, &parts);
    let map = Matrix::vstack_all(&blocks, x.dim);
    Ok(Approximation { domain, parts, map })
}

/// The universal left add(M)-approximation.
pub fn left_approximation<F: Scalar>(
    s: &Subcategory<F>,
    x: &FDModule<F>,
) -> Result<Approximation<F>> {
    if x.is_zero() {
        return Ok(Approximation {
            domain: FDModule::zero(x.algebra.clone()),
            parts: vec![],
            map: Matrix::zero(0, 0),
        });
    }
    let mut parts = Vec::new();
    let mut map = Matrix::zero(x.dim, 0);
    for (i, mi) in s.reps.iter().enumerate() {
        for h in hom_space(x, mi)? {
            parts.push(i);
            map = map.hstack(&h);
        }
    }
    if parts.is_empty() {
        return Err(Error::BadInput(format!("no maps from {} into the bundle", x.name)));
    }
    let domain = sum_of(&s.reps, &parts);
    Ok(Approximation { domain, parts, map })
}

/// Every endomorphism g with g . f = 0 lies in rad End(domain); with the
/// greedy removal certificate this verifies right minimality.
fn kernel_endos_are_radical<F: Scalar>(
    end_homs: &[Matrix<F>],
    rows_of: impl Fn(&Matrix<F>) -> Vec<F>,
) -> Result<bool> {
    let rows: Vec<Vec<F>> = end_homs.iter().map(&rows_of).collect();
    let hom_mat = Matrix::from_rows(rows);
    let ker = hom_mat.left_kernel_basis();
    if ker.rows == 0 {
        return Ok(true);
    }
    let rad = end_radical_coords(end_homs);
    let base_rank = rad.rank();
    for i in 0..ker.rows {
        let mut stacked: Vec<Vec<F>> = (0..rad.rows).map(|r| rad.row_vec(r)).collect();
        stacked.push(ker.row_vec(i));
        if Matrix::from_rows(stacked).rank() != base_rank {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_right_minimal<F: Scalar>(domain: &FDModule<F>, f: &Matrix<F>) -> Result<bool> {
    let end_homs = hom_space(domain, domain)?;
    kernel_endos_are_radical(&end_homs, |g| flat_row(&g.mul(f)))
}

pub fn is_left_minimal<F: Scalar>(f: &Matrix<F>, codomain: &FDModule<F>) -> Result<bool> {
    let end_homs = hom_space(codomain, codomain)?;
    kernel_endos_are_radical(&end_homs, |g| flat_row(&f.mul(g)))
}

fn copy_offsets<F: Scalar>(reps: &[FDModule<F>], parts: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &p in parts {
        off.push(acc);
        acc += reps[p].dim;
    }
    off
}

/// Greedy minimization of the universal right approximation: drop copies in
/// canonical order while the approximation property survives, then certify
/// right minimality.
pub fn minimal_right_approximation<F: Scalar>(
    s: &Subcategory<F>,
    x: &FDModule<F>,
) -> Result<Approximation<F>> {
    let full = right_approximation(s, x)?;
    if full.parts.is_empty() {
        return Ok(full);
    }
    let mut parts = full.parts;
    let mut map = full.map;
    let mut k = 0;
    while k < parts.len() {
        let off = copy_offsets(&s.reps, &parts);
        let d = s.reps[parts[k]].dim;
        let keep_rows: Vec<usize> = (0..map.rows)
            .filter(|&r| r < off[k] || r >= off[k] + d)
            .collect();
        let cand_map = Matrix::from_fn(keep_rows.len(), map.cols, |i, j| {
            map.at(keep_rows[i], j).clone()
        });
        let mut cand_parts = parts.clone();
        cand_parts.remove(k);
        if !cand_parts.is_empty() {
            let cand_domain = sum_of(&s.reps, &cand_parts);
            if is_right_approximation(&s.reps, &cand_domain, &cand_map, x)? {
                parts = cand_parts;
                map = cand_map;
                continue;
            }
        }
        k += 1;
    }
    let domain = sum_of(&s.reps, &parts);
    if !is_right_minimal(&domain, &map)? {
        return Err(Error::Internal(format!(
            "greedy right approximation of {} is not minimal",
            x.name
        )));
    }
    Ok(Approximation { domain, parts, map })
}

/// Greedy minimization of the universal left approximation.
pub fn minimal_left_approximation<F: Scalar>(
    s: &Subcategory<F>,
    x: &FDModule<F>,
) -> Result<Approximation<F>> {
    let full = left_approximation(s, x)?;
    if full.parts.is_empty() {
        return Ok(full);
    }
    let mut parts = full.parts;
    let mut map = full.map;
    let mut k = 0;
    while k < parts.len() {
        let off = copy_offsets(&s.reps, &parts);
        let d = s.reps[parts[k]].dim;
        let keep_cols: Vec<usize> = (0..map.cols)
            .filter(|&c| c < off[k] || c >= off[k] + d)
            .collect();
        let cand_map = Matrix::from_fn(map.rows, keep_cols.len(), |i, j| {
            map.at(i, keep_cols[j]).clone()
        });
        let mut cand_parts = parts.clone();
        cand_parts.remove(k);
        if !cand_parts.is_empty() {
            let cand_domain = sum_of(&s.reps, &cand_parts);
            if is_left_approximation(&s.reps, x, &cand_map, &cand_domain)? {
                parts = cand_parts;
                map = cand_map;
                continue;
            }
        }
        k += 1;
    }
    let domain = sum_of(&s.reps, &parts);
    if !is_left_minimal(&map, &domain)? {
        return Err(Error::Internal(format!(
            "greedy left approximation of {} is not minimal",
            x.name
        )));
    }
    Ok(Approximation { domain, parts, map })
}

/// x decomposes into summands isomorphic to bundle representatives.
pub fn is_in_add<F: Scalar>(s: &Subcategory<F>, x: &FDModule<F>) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    let dec = decompose(x)?;
    for (class, _) in &dec.classes {
        if !s.contains(class)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An exact sequence 0 -> M_n -> ... -> M_0 -> x -> 0 with all terms in
/// add M, built from minimal right approximations; Hom(M,-) exactness holds
/// at every step by the approximation property.
pub struct AddMResolution<F: Scalar> {
    pub target: FDModule<F>,
    /// M_0, ..., M_n
    pub terms: Vec<FDModule<F>>,
    /// maps[0]: M_0 -> target; maps[k]: M_k -> M_{k-1}
    pub maps: Vec<Matrix<F>>,
}

impl<F: Scalar> AddMResolution<F> {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// Composites vanish and ranks certify exactness at every position.
    pub fn check_exact(&self) -> bool {
        let n = self.terms.len();
        if self.maps.len() != n {
            return false;
        }
        for k in 1..n {
            if !self.maps[k].mul(&self.maps[k - 1]).is_zero() {
                return false;
            }
        }
        // exact at target: M_0 -> x epi
        if self.maps[0].rank() != self.target.dim {
            return false;
        }
        // exact at M_{k-1}: rank d_k = dim M_{k-1} - rank d_{k-1}
        for k in 1..n {
            if self.maps[k].rank() != self.terms[k - 1].dim - self.maps[k - 1].rank() {
                return false;
            }
        }
        // exact at M_n: d_n mono
        self.maps[n - 1].rank() == self.terms[n - 1].dim
    }
}

/// Iterated minimal right approximation resolution; None when no resolution
/// of length <= maxlen exists along the minimal tower.
pub fn add_m_resolution<F: Scalar>(
    s: &Subcategory<F>,
    x: &FDModule<F>,
    maxlen: usize,
) -> Result<Option<AddMResolution<F>>> {
    let mut terms: Vec<FDModule<F>> = Vec::new();
    let mut maps: Vec<Matrix<F>> = Vec::new();
    let mut cur = x.clone();
    let mut pre: Option<Matrix<F>> = None;
    loop {
        let ap = minimal_right_approximation(s, &cur)?;
        if ap.map.rank() != cur.dim {
            return Err(Error::Internal(format!(
                "approximation of {} is not epi; bundle misses a projective",
                cur.name
            )));
        }
        let d = match &pre {
            None => ap.map.clone(),
            Some(inc) => ap.map.mul(inc),
        };
        let (ker, incl) = kernel_module(&ap.domain, &ap.map);
        terms.push(ap.domain);
        maps.push(d);
        if ker.is_zero() {
            break;
        }
        if is_in_add(s, &ker)? {
            terms.push(ker);
            maps.push(incl);
            break;
        }
        if terms.len() > maxlen {
            return Ok(None);
        }
        pre = Some(incl);
        cur = ker;
    }
    let res = AddMResolution { target: x.clone(), terms, maps };
    if res.length() > maxlen {
        return Ok(None);
    }
    if !res.check_exact() {
        return Err(Error::Internal(format!("resolution of {} fails exactness", x.name)));
    }
    Ok(Some(res))
}

/// Outcome of a Lemma 2.1 bound run over all indecomposables.
pub struct RepDimReport {
    /// max resolution length over ind(a), when all resolved
    pub n_star: Option<usize>,
    /// n_star + 2
    pub bound: Option<usize>,
    /// gl.dim End(M) computed directly, as a cross-check
    pub end_gldim: Option<usize>,
    /// indecomposables with no resolution within maxlen
    pub unresolved: Vec<String>,
}

/// rep.dim(a) <= n* + 2 where n* is the maximal add(M)-resolution length
/// over all indecomposables, certified by a complete AR quiver; the direct
/// gl.dim End(M) computation is reported alongside.
pub fn repdim_bound<F: Scalar>(
    a: &AlgRef<F>,
    s: &Subcategory<F>,
    maxlen: usize,
    cutoff: usize,
) -> Result<RepDimReport> {
    let ind = ind_modules(a, cutoff)?;
    let mut n_star = 0usize;
    let mut unresolved = Vec::new();
    for x in &ind.reps {
        match add_m_resolution(s, x, maxlen)? {
            Some(res) => n_star = n_star.max(res.length()),
            None => unresolved.push(x.name.clone()),
        }
    }
    let (n_star, bound) = if unresolved.is_empty() {
        (Some(n_star), Some(n_star + 2))
    } else {
        (None, None)
    };
    // the gl.dim cross-check is exact-arithmetic heavy; the resolution bound
    // above is the certificate, so skip the cross-check on large generators
    let m = s.direct_sum();
    let end_gldim = if m.dim <= 80 {
        let (end, _) = endomorphism_algebra(&m)?;
        global_dimension(&end, bound.unwrap_or(maxlen + 2) + 2)?
    } else {
        None
    };
    if let (Some(b), Some(g)) = (bound, end_gldim) {
        if g > b {
            return Err(Error::Internal(format!(
                "gl.dim End(M) = {g} exceeds the certified bound {b}"
            )));
        }
    }
    Ok(RepDimReport { n_star, bound, end_gldim, unresolved })
}

/// Theorem 3.1 generator over T2(a) for Dynkin hereditary a: the additive
/// generators of Mor(add A) and Mor(add DA) together.
pub fn generator_thm31<F: Scalar>(
    a: &AlgRef<F>,
    cutoff: usize,
) -> Result<(TriangularAlgebra<F>, GeneratorBundle<F>)> {
    let (t2, adda, addda) = mor_generators(a, cutoff)?;
    let mut summands = adda;
    for m in &addda.reps {
        summands.add(m)?;
    }
    if !is_generator_cogenerator(&summands)? {
        return Err(Error::Internal("thm31 bundle misses a projective or injective".into()));
    }
    Ok((t2, GeneratorBundle { summands, provenance: Provenance::Thm31 }))
}

/// Theorem 3.2 generator over T2(a): T2(a) + D T2(a), i.e. all indecomposable
/// projectives and injectives.
pub fn generator_thm32<F: Scalar>(
    a: &AlgRef<F>,
) -> Result<(TriangularAlgebra<F>, GeneratorBundle<F>)> {
    let t2 = t2_algebra(a)?;
    let mut summands = Subcategory::new(t2.lambda.clone());
    for v in 0..t2.lambda.idempotents.len() {
        summands.add(&projective_module(&t2.lambda, v))?;
    }
    for v in 0..t2.lambda.idempotents.len() {
        summands.add(&injective_module(&t2.lambda, v))?;
    }
    Ok((t2, GeneratorBundle { summands, provenance: Provenance::Thm32 }))
}

/// Add the indecomposable summand classes of m to the subcategory.
fn add_classes<F: Scalar>(sub: &mut Subcategory<F>, m: &FDModule<F>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    for (class, _) in decompose(m)?.classes {
        sub.add(&class)?;
    }
    Ok(())
}

/// Move a morphism g: X -> Y between A-modules to the triple (X, Y (x) DT,
/// g (x) id) over the (B, A, DT) triangular algebra.
fn transported_triple<F: Scalar>(
    tri: &TriangularAlgebra<F>,
    x: &FDModule<F>,
    y: &FDModule<F>,
    g: &Matrix<F>,
) -> Result<TripleModule<F>> {
    let md = tri.m.dim();
    let (yd, proj, _) = tensor_functor(y, &tri.m)?;
    let f = (0..md)
        .map(|k| {
            let embed = Matrix::from_fn(y.dim, yd.dim, |j, c| proj.at(j * md + k, c).clone());
            g.mul(&embed)
        })
        .collect();
    Ok(TripleModule { x: x.clone(), y: yd, f })
}

/// Theorem 4.7 generator over End(T-bar), realized as the triangular algebra
/// on (B, A, DT): the transported Mor(add A) generator, the induced triple of
/// T, the A-side injectives, zero-map triples on DB + DT and on T, and the
/// B-side projectives.
pub fn generator_thm47<F: Scalar>(
    a: &AlgRef<F>,
    t: &TiltingModule<F>,
    cutoff: usize,
) -> Result<(TriangularAlgebra<F>, GeneratorBundle<F>)> {
    let (b, bim) = tilting_bimodule(t)?;
    let tri = triangular_matrix_algebra(&b, a, dual_bimodule(&bim))?;
    let md = tri.m.dim();
    let mut summands = Subcategory::new(tri.lambda.clone());
    // (P1, DT2, f): Mor(add A) transported through add A = add DT
    let (t2, adda, _) = mor_generators(a, cutoff)?;
    for v in &adda.reps {
        let triple = t2.unflatten(v)?;
        let mut g = Matrix::zero(triple.x.dim, triple.y.dim);
        for &e in &a.idempotents {
            g = g.add(&triple.f[e]);
        }
        let tm = transported_triple(&tri, &triple.x, &triple.y, &g)?;
        add_classes(&mut summands, &tri.flatten(&tm)?)?;
    }
    // (T, DB, id)
    let induced = tri.induced_triple(&t.module)?;
    add_classes(&mut summands, &tri.flatten(&induced)?)?;
    // (DA, 0, 0) and (T, 0, 0)
    for v in 0..a.idempotents.len() {
        let tm = TripleModule::with_zero_map(injective_module(a, v), FDModule::zero(b.clone()), md);
        add_classes(&mut summands, &tri.flatten(&tm)?)?;
    }
    for ti in &t.summands {
        let tm = TripleModule::with_zero_map(ti.clone(), FDModule::zero(b.clone()), md);
        add_classes(&mut summands, &tri.flatten(&tm)?)?;
    }
    // (0, DB + DT, 0) and (0, B, 0)
    for w in 0..b.idempotents.len() {
        let inj = TripleModule::with_zero_map(FDModule::zero(a.clone()), injective_module(&b, w), md);
        add_classes(&mut summands, &tri.flatten(&inj)?)?;
        add_classes(&mut summands, &tri.flatten(&tri.projective_triple_b(w))?)?;
    }
    let dt_b = dual_module(&bim.left);
    for (class, _) in decompose(&dt_b)?.classes {
        let tm = TripleModule::with_zero_map(FDModule::zero(a.clone()), class, md);
        add_classes(&mut summands, &tri.flatten(&tm)?)?;
    }
    if !is_generator_cogenerator(&summands)? {
        return Err(Error::Internal("thm47 bundle misses a projective or injective".into()));
    }
    Ok((tri, GeneratorBundle { summands, provenance: Provenance::Thm47 }))
}
