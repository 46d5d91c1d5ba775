//! Linear group actions on `n` copies of an `m`-dimensional module.
//!
//! The coordinate ring is `k[x_{i,j}]` with `i` the coordinate and `j` the
//! copy. A matrix `g` acts contragrediently: `x_{i,j} ↦ Σ_k g_{k,i} x_{k,j}`,
//! i.e. each copy of the coordinate vector is multiplied by `gᵀ`. Every
//! invariance statement in the crate is made with respect to [`act`].
//!
//! Because the action is the same on every copy, it preserves the
//! multidegree in the copies. Fixed spaces and Lie-algebra kernels are
//! therefore computed block by block on monomials of a fixed copy multidegree,
//! which keeps the dense linear algebra small.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, PolynomialRing};

/// Explicit list of invertible `m×m` matrices forming a group.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup<F: Field> {
    m: usize,
    elements: Vec<Matrix<F>>,
}

impl<F: Field> FiniteMatrixGroup<F> {
    /// Validates identity, closure under products and inverses, and that the
    /// order is invertible in `F`.
    pub fn new(elements: Vec<Matrix<F>>) -> Result<Self> {
        let first = elements.first().ok_or_else(|| Error::NotAGroup("empty element list".into()))?;
        let m = first.rows();
        if elements.iter().any(|g| g.rows() != m || g.cols() != m) {
            return Err(Error::Dimension("group elements must all be m×m".into()));
        }
        let set: HashSet<&Matrix<F>> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(Error::NotAGroup("duplicate elements".into()));
        }
        if !set.contains(&Matrix::identity(m)) {
            return Err(Error::NotAGroup("identity missing".into()));
        }
        for (i, g) in elements.iter().enumerate() {
            let inv = g.inverse().ok_or_else(|| Error::NotAGroup(format!("element {i} is singular")))?;
            if !set.contains(&inv) {
                return Err(Error::NotAGroup(format!("inverse of element {i} missing")));
            }
            for (j, h) in elements.iter().enumerate() {
                if !set.contains(&g.mul(h)?) {
                    return Err(Error::NotAGroup(format!("product of elements {i} and {j} missing")));
                }
            }
        }
        let order = F::from_usize(elements.len());
        if order.is_zero() {
            return Err(Error::Characteristic {
                characteristic: F::characteristic(),
                what: format!("group order {} is not invertible", elements.len()),
            });
        }
        Ok(FiniteMatrixGroup { m, elements })
    }

    /// Closure of a set of generators under multiplication.
    pub fn generate(generators: &[Matrix<F>], limit: usize) -> Result<Self> {
        let m = generators.first().map(Matrix::rows).ok_or_else(|| Error::NotAGroup("no generators".into()))?;
        let id = Matrix::identity(m);
        let mut seen: HashSet<Matrix<F>> = HashSet::from([id.clone()]);
        let mut elements = vec![id];
        let mut frontier = 0;
        while frontier < elements.len() {
            let g = elements[frontier].clone();
            frontier += 1;
            for s in generators {
                let h = g.mul(s)?;
                if seen.insert(h.clone()) {
                    elements.push(h);
                    if elements.len() > limit {
                        return Err(Error::NotAGroup(format!("closure exceeds {limit} elements")));
                    }
                }
            }
        }
        Self::new(elements)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix<F>] {
        &self.elements
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassicalKind {
    Sl,
    Sp,
    O,
    SO,
}

impl ClassicalKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Sl" | "SL" => Ok(ClassicalKind::Sl),
            "Sp" | "SP" => Ok(ClassicalKind::Sp),
            "O" => Ok(ClassicalKind::O),
            "SO" => Ok(ClassicalKind::SO),
            other => Err(Error::Invalid(format!("unknown group kind `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassicalKind::Sl => "Sl",
            ClassicalKind::Sp => "Sp",
            ClassicalKind::O => "O",
            ClassicalKind::SO => "SO",
        }
    }
}

/// A classical group given by its type, dimension and (for Sp, O, SO) the
/// Gram matrix `B` of the preserved form.
///
/// With the contragredient substitution above, the pairing `x_iᵀ B x_j` is
/// invariant under `act(g)` exactly when `g B gᵀ = B`; that is the group
/// meant here, and its Lie algebra is `{X : X B + B Xᵀ = 0}`. For the
/// standard forms (`B = I`, or the standard symplectic matrix) this is the
/// usual `O(B)` / `Sp(B)`.
#[derive(Clone, Debug)]
pub struct ClassicalGroupSpec<F: Field> {
    kind: ClassicalKind,
    m: usize,
    form: Option<Matrix<F>>,
}

impl<F: Field> ClassicalGroupSpec<F> {
    pub fn new(kind: ClassicalKind, m: usize, form: Option<Matrix<F>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("m must be at least 1".into()));
        }
        let form = match (kind, form) {
            (ClassicalKind::Sl, None) => None,
            (ClassicalKind::Sl, Some(_)) => return Err(Error::Invalid("Sl takes no form matrix".into())),
            (ClassicalKind::Sp, b) => {
                if m % 2 != 0 {
                    return Err(Error::Invalid(format!("Sp needs even m, got {m}")));
                }
                let b = b.unwrap_or_else(|| standard_symplectic(m));
                if !b.is_skew_symmetric() {
                    return Err(Error::Invalid("Sp form must be skew-symmetric".into()));
                }
                Some(b)
            }
            (ClassicalKind::O | ClassicalKind::SO, b) => {
                if F::characteristic() == 2 {
                    return Err(Error::Characteristic {
                        characteristic: 2,
                        what: "orthogonal groups".into(),
                    });
                }
                let b = b.unwrap_or_else(|| Matrix::identity(m));
                if !b.is_symmetric() {
                    return Err(Error::Invalid("orthogonal form must be symmetric".into()));
                }
                Some(b)
            }
        };
        if let Some(b) = &form {
            if b.rows() != m || b.cols() != m {
                return Err(Error::Dimension(format!("form must be {m}×{m}")));
            }
            if b.det()?.is_zero() {
                return Err(Error::Invalid("form matrix must be invertible".into()));
            }
        }
        Ok(ClassicalGroupSpec { kind, m, form })
    }

    pub fn sl(m: usize) -> Self {
        Self::new(ClassicalKind::Sl, m, None).expect("valid Sl spec")
    }

    pub fn kind(&self) -> ClassicalKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn form(&self) -> Option<&Matrix<F>> {
        self.form.as_ref()
    }

    /// Basis of the Lie algebra used by the infinitesimal invariance test.
    pub fn lie_algebra_basis(&self) -> Vec<Matrix<F>> {
        let m = self.m;
        match (self.kind, &self.form) {
            (ClassicalKind::Sl, _) => {
                let mut out = Vec::new();
                for i in 0..m {
                    for j in 0..m {
                        if i != j {
                            let mut e = Matrix::zeros(m, m);
                            e[(i, j)] = F::one();
                            out.push(e);
                        }
                    }
                }
                for i in 0..m.saturating_sub(1) {
                    let mut h = Matrix::zeros(m, m);
                    h[(i, i)] = F::one();
                    h[(i + 1, i + 1)] = -F::one();
                    out.push(h);
                }
                out
            }
            (_, Some(b)) => {
                // unknown X flattened row-major; equation (XB + BXᵀ)_{r,s} = 0
                let mut eq = Matrix::<F>::zeros(m * m, m * m);
                for r in 0..m {
                    for s in 0..m {
                        let row = r * m + s;
                        for k in 0..m {
                            // (XB)_{r,s} = Σ_k X_{r,k} B_{k,s}
                            eq[(row, r * m + k)] += b[(k, s)].clone();
                            // (B Xᵀ)_{r,s} = Σ_k B_{r,k} X_{s,k}
                            eq[(row, s * m + k)] += b[(r, k)].clone();
                        }
                    }
                }
                eq.nullspace()
                    .into_iter()
                    .map(|v| Matrix::from_fn(m, m, |i, j| v[i * m + j].clone()))
                    .collect()
            }
            (_, None) => unreachable!("form present for Sp, O and SO"),
        }
    }

    /// A reflection `h` with `h B hᵀ = B` and `det h = -1` (orthogonal types only).
    pub fn reflection(&self) -> Option<Matrix<F>> {
        if !matches!(self.kind, ClassicalKind::O | ClassicalKind::SO) {
            return None;
        }
        let b = self.form.as_ref()?;
        let m = self.m;
        // look for a non-isotropic vector among e_i and e_i + e_j
        let mut candidates: Vec<Vec<F>> = Vec::new();
        for i in 0..m {
            let mut v = vec![F::zero(); m];
            v[i] = F::one();
            candidates.push(v);
        }
        for i in 0..m {
            for j in i + 1..m {
                let mut v = vec![F::zero(); m];
                v[i] = F::one();
                v[j] = F::one();
                candidates.push(v);
            }
        }
        for v in candidates {
            let bv = b.mul_vec(&v).ok()?;
            let c: F = v.iter().zip(&bv).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b);
            if c.is_zero() {
                continue;
            }
            let two_over_c = F::from_i64(2) * c.inv()?;
            // h = I - 2 (Bv) vᵀ / (vᵀ B v)
            let h = Matrix::from_fn(m, m, |i, j| {
                let id = if i == j { F::one() } else { F::zero() };
                id - two_over_c.clone() * &bv[i] * &v[j]
            });
            return Some(h);
        }
        None
    }
}

pub fn standard_symplectic<F: Field>(m: usize) -> Matrix<F> {
    let mut j = Matrix::zeros(m, m);
    for k in (0..m).step_by(2) {
        j[(k, k + 1)] = F::one();
        j[(k + 1, k)] = -F::one();
    }
    j
}

#[derive(Clone, Debug)]
pub enum GroupActionSpec<F: Field> {
    Finite(FiniteMatrixGroup<F>),
    Classical(ClassicalGroupSpec<F>),
}

impl<F: Field> GroupActionSpec<F> {
    pub fn m(&self) -> usize {
        match self {
            GroupActionSpec::Finite(g) => g.m(),
            GroupActionSpec::Classical(c) => c.m(),
        }
    }

    /// Parses the group input JSON:
    /// `{"kind":"finite","matrices":[...]}` or `{"kind":"Sl"|"Sp"|"O"|"SO","m":int,"form":[[...]]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let kind = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::Parse("group file needs a string `kind`".into()))?;
        if kind == "finite" {
            let mats = value
                .get("matrices")
                .and_then(|m| m.as_array())
                .ok_or_else(|| Error::Parse("finite group needs `matrices`".into()))?;
            let elements = mats.iter().map(Matrix::from_json).collect::<Result<Vec<_>>>()?;
            return Ok(GroupActionSpec::Finite(FiniteMatrixGroup::new(elements)?));
        }
        let kind = ClassicalKind::parse(kind)?;
        let m = value
            .get("m")
            .and_then(|m| m.as_u64())
            .ok_or_else(|| Error::Parse("classical group needs integer `m`".into()))? as usize;
        let form = match value.get("form") {
            None | Some(serde_json::Value::Null) => None,
            Some(f) => Some(Matrix::from_json(f)?),
        };
        Ok(GroupActionSpec::Classical(ClassicalGroupSpec::new(kind, m, form)?))
    }
}

/// The action of a group on `n` copies of `k^m` and its coordinate ring.
#[derive(Clone, Debug)]
pub struct InducedAction<F: Field> {
    spec: GroupActionSpec<F>,
    m: usize,
    n: usize,
    ring: Arc<PolynomialRing>,
}

/// Name of the coordinate `x_{i,j}` (1-based); compact `x12` when both indices are single digits.
pub fn coordinate_name(i: usize, j: usize, m: usize, n: usize) -> String {
    if m < 10 && n < 10 {
        format!("x{i}{j}")
    } else {
        format!("x{i}_{j}")
    }
}

impl<F: Field> InducedAction<F> {
    pub fn new(spec: GroupActionSpec<F>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        let m = spec.m();
        let mut names = Vec::with_capacity(m * n);
        for i in 1..=m {
            for j in 1..=n {
                names.push(coordinate_name(i, j, m, n));
            }
        }
        let ring = PolynomialRing::standard(names)?;
        Ok(InducedAction { spec, m, n, ring })
    }

    pub fn spec(&self) -> &GroupActionSpec<F> {
        &self.spec
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    /// Variable index of `x_{i,j}` (0-based coordinate `i`, copy `j`).
    pub fn var(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn x(&self, i: usize, j: usize) -> Polynomial<F> {
        Polynomial::var(&self.ring, self.var(i, j))
    }

    /// Monomials of total degree `d` grouped by copy multidegree, each block ascending.
    pub fn monomial_blocks(&self, d: u32) -> Vec<Vec<Monomial>> {
        let mut blocks: HashMap<Vec<u32>, Vec<Monomial>> = HashMap::new();
        for mono in self.ring.monomials_of_degree(d) {
            let mut key = vec![0u32; self.n];
            for i in 0..self.m {
                for (j, k) in key.iter_mut().enumerate() {
                    *k += mono.exps()[self.var(i, j)];
                }
            }
            blocks.entry(key).or_default().push(mono);
        }
        let mut keys: Vec<_> = blocks.keys().cloned().collect();
        keys.sort_unstable_by(|a, b| b.cmp(a));
        keys.into_iter().map(|k| blocks.remove(&k).unwrap()).collect()
    }

    fn check_element(&self, g: &Matrix<F>) -> Result<()> {
        if g.rows() != self.m || g.cols() != self.m {
            return Err(Error::Dimension(format!(
                "group element is {}×{}, action needs {}×{}",
                g.rows(),
                g.cols(),
                self.m,
                self.m
            )));
        }
        Ok(())
    }

    fn check_poly(&self, f: &Polynomial<F>) -> Result<()> {
        if !f.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch("polynomial is not over the action's coordinate ring".into()));
        }
        Ok(())
    }

    fn substitution_images(&self, g: &Matrix<F>) -> Vec<Polynomial<F>> {
        let mut images = Vec::with_capacity(self.m * self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                let mut p = Polynomial::zero(&self.ring);
                for k in 0..self.m {
                    p.add_term(self.ring.var_monomial(self.var(k, j)), g[(k, i)].clone());
                }
                images.push(p);
            }
        }
        images
    }
}

/// Contragredient action: `x_{i,j} ↦ Σ_k g_{k,i} x_{k,j}`.
pub fn act<F: Field>(action: &InducedAction<F>, g: &Matrix<F>, f: &Polynomial<F>) -> Result<Polynomial<F>> {
    action.check_element(g)?;
    action.check_poly(f)?;
    if g.det()?.is_zero() {
        return Err(Error::Invalid("group element is singular".into()));
    }
    f.substitute(&action.ring, &action.substitution_images(g))
}

/// Group average `(1/|G|) Σ_g act(g, f)`.
pub fn reynolds<F: Field>(group: &FiniteMatrixGroup<F>, action: &InducedAction<F>, f: &Polynomial<F>) -> Result<Polynomial<F>> {
    let inv = F::from_usize(group.order()).inv().ok_or_else(|| Error::Characteristic {
        characteristic: F::characteristic(),
        what: format!("|G| = {} vanishes", group.order()),
    })?;
    let mut acc = Polynomial::zero(&action.ring);
    for g in group.elements() {
        acc = acc.checked_add(&act(action, g, f)?)?;
    }
    Ok(acc.scale(&inv))
}

/// Matrix of a linear operator on a block: column `c` holds the image of `block[c]`.
fn operator_on_block<F: Field>(
    block: &[Monomial],
    index: &HashMap<&Monomial, usize>,
    image: impl Fn(&Monomial) -> Polynomial<F>,
) -> Matrix<F> {
    let mut mat = Matrix::zeros(block.len(), block.len());
    for (c, mono) in block.iter().enumerate() {
        for (out, coeff) in image(mono).terms() {
            let r = *index.get(out).expect("operator preserves the block");
            mat[(r, c)] += coeff.clone();
        }
    }
    mat
}

fn kernel_polynomials<F: Field>(ring: &Arc<PolynomialRing>, block: &[Monomial], stacked: &Matrix<F>) -> Vec<Polynomial<F>> {
    stacked
        .nullspace()
        .into_iter()
        .map(|v| Polynomial::from_terms(ring, v.into_iter().zip(block.iter().cloned())))
        .collect()
}

/// Basis of the degree-`d` invariants of a finite group, as the joint kernel
/// of `act(g) - id` over all elements.
pub fn fixed_space_basis<F: Field>(group: &FiniteMatrixGroup<F>, action: &InducedAction<F>, d: u32) -> Result<Vec<Polynomial<F>>> {
    if group.m() != action.m() {
        return Err(Error::Dimension("group and action disagree on m".into()));
    }
    let images: Vec<Vec<Polynomial<F>>> = group.elements().iter().map(|g| action.substitution_images(g)).collect();
    let blocks = action.monomial_blocks(d);
    let per_block: Vec<Result<Vec<Polynomial<F>>>> = blocks
        .par_iter()
        .map(|block| {
            let index: HashMap<&Monomial, usize> = block.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let id = Matrix::identity(block.len());
            let mut parts = Vec::with_capacity(images.len());
            for im in &images {
                let op = operator_on_block(block, &index, |mono| {
                    Polynomial::term(&action.ring, F::one(), mono.clone())
                        .substitute(&action.ring, im)
                        .expect("images live in the action ring")
                });
                parts.push(op.sub(&id)?);
            }
            let stacked = Matrix::vstack(&parts, block.len())?;
            Ok(kernel_polynomials(&action.ring, block, &stacked))
        })
        .collect();
    let mut out = Vec::new();
    for r in per_block {
        out.extend(r?);
    }
    Ok(out)
}

/// Coefficients `c_0..=c_D` of `(1/|G|) Σ_g 1/det(1 - t g)`.
pub fn molien_series<F: Field>(group: &FiniteMatrixGroup<F>, max_degree: usize) -> Result<Vec<u64>> {
    if F::characteristic() != 0 {
        return Err(Error::Characteristic {
            characteristic: F::characteristic(),
            what: "Molien series".into(),
        });
    }
    let mut total = vec![F::zero(); max_degree + 1];
    for g in group.elements() {
        let q = det_one_minus_tg(g);
        // invert 1 + q_1 t + ... + q_m t^m as a power series
        let mut inv = vec![F::zero(); max_degree + 1];
        inv[0] = F::one();
        for n in 1..=max_degree {
            let mut acc = F::zero();
            for k in 1..q.len().min(n + 1) {
                acc -= q[k].clone() * &inv[n - k];
            }
            inv[n] = acc;
        }
        for (t, v) in total.iter_mut().zip(inv) {
            *t += v;
        }
    }
    let scale = F::from_usize(group.order()).inv().expect("char 0");
    total
        .into_iter()
        .enumerate()
        .map(|(d, c)| {
            let c = (c * &scale).to_rational().expect("char 0");
            if !c.is_integer() || c < num_rational::BigRational::from_integer(0.into()) {
                return Err(Error::Invalid(format!("Molien coefficient c_{d} = {c} is not a natural number")));
            }
            num_traits::ToPrimitive::to_u64(c.numer())
                .ok_or_else(|| Error::Invalid(format!("Molien coefficient c_{d} overflows")))
        })
        .collect()
}

/// Coefficients of `det(I - t g)`, lowest degree first (Faddeev–LeVerrier).
fn det_one_minus_tg<F: Field>(g: &Matrix<F>) -> Vec<F> {
    let m = g.rows();
    // characteristic polynomial det(tI - g) = Σ c_k t^k, c_m = 1
    let mut c = vec![F::zero(); m + 1];
    c[m] = F::one();
    let mut mk = Matrix::<F>::zeros(m, m);
    for k in 1..=m {
        let mut next = g.mul(&mk).expect("square");
        for i in 0..m {
            next[(i, i)] += c[m - k + 1].clone();
        }
        let gm = g.mul(&next).expect("square");
        let tr = (0..m).fold(F::zero(), |acc, i| acc + &gm[(i, i)]);
        c[m - k] = -(tr * F::from_usize(k).inv().expect("char 0"));
        mk = next;
    }
    // det(I - t g) = t^m det(t^{-1} I - g): reverse the coefficients
    c.reverse();
    c
}

/// Derivation induced by a Lie algebra element `X`: `x_{i,j} ↦ Σ_k X_{k,i} x_{k,j}`.
fn derivation_images<F: Field>(action: &InducedAction<F>, x: &Matrix<F>) -> Vec<Polynomial<F>> {
    action.substitution_images(x)
}

fn apply_derivation<F: Field>(ring: &Arc<PolynomialRing>, images: &[Polynomial<F>], mono: &Monomial) -> Polynomial<F> {
    let mut out = Polynomial::zero(ring);
    for (v, &e) in mono.exps().iter().enumerate() {
        if e == 0 || images[v].is_zero() {
            continue;
        }
        let mut exps = mono.exps().to_vec();
        exps[v] -= 1;
        let rest = ring.monomial(exps);
        for (m, c) in images[v].terms() {
            out.add_term(rest.mul(m), c.clone() * F::from_i64(e as i64));
        }
    }
    out
}

/// Basis of the degree-`d` polynomials killed by the derivations of the Lie
/// algebra of a classical group (and, for `O`, fixed by one reflection).
pub fn infinitesimal_invariant_basis<F: Field>(
    spec: &ClassicalGroupSpec<F>,
    action: &InducedAction<F>,
    d: u32,
) -> Result<Vec<Polynomial<F>>> {
    if F::characteristic() != 0 {
        return Err(Error::Characteristic {
            characteristic: F::characteristic(),
            what: "Lie-algebra invariants".into(),
        });
    }
    if spec.m() != action.m() {
        return Err(Error::Dimension("group and action disagree on m".into()));
    }
    let derivations: Vec<Vec<Polynomial<F>>> =
        spec.lie_algebra_basis().iter().map(|x| derivation_images(action, x)).collect();
    let reflection = match spec.kind() {
        ClassicalKind::O => Some(action.substitution_images(&spec.reflection().expect("orthogonal form"))),
        _ => None,
    };
    let ring = action.ring.clone();
    let blocks = action.monomial_blocks(d);
    let per_block: Vec<Result<Vec<Polynomial<F>>>> = blocks
        .par_iter()
        .map(|block| {
            let index: HashMap<&Monomial, usize> = block.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut parts = Vec::new();
            for images in &derivations {
                parts.push(operator_on_block(block, &index, |mono| apply_derivation(&ring, images, mono)));
            }
            if let Some(images) = &reflection {
                let op = operator_on_block(block, &index, |mono| {
                    Polynomial::term(&ring, F::one(), mono.clone()).substitute(&ring, images).expect("same ring")
                });
                parts.push(op.sub(&Matrix::identity(block.len()))?);
            }
            if parts.is_empty() {
                // trivial Lie algebra and no reflection: everything is invariant
                parts.push(Matrix::zeros(0, block.len()));
            }
            let stacked = Matrix::vstack(&parts, block.len())?;
            Ok(kernel_polynomials(&ring, block, &stacked))
        })
        .collect();
    let mut out = Vec::new();
    for r in per_block {
        out.extend(r?);
    }
    Ok(out)
}

/// Whether `f` is annihilated by every Lie algebra derivation (and fixed by the reflection for `O`).
pub fn is_infinitesimally_invariant<F: Field>(
    spec: &ClassicalGroupSpec<F>,
    action: &InducedAction<F>,
    f: &Polynomial<F>,
) -> Result<bool> {
    action.check_poly(f)?;
    for x in spec.lie_algebra_basis() {
        let images = derivation_images(action, &x);
        let mut acc = Polynomial::zero(&action.ring);
        for (m, c) in f.terms() {
            acc = acc.checked_add(&apply_derivation(&action.ring, &images, m).scale(c))?;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    if spec.kind() == ClassicalKind::O {
        let h = spec.reflection().expect("orthogonal form");
        if act(action, &h, f)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(rows)
    }

    fn plus_minus_identity(m: usize) -> FiniteMatrixGroup<Q> {
        FiniteMatrixGroup::new(vec![Matrix::identity(m), Matrix::identity(m).scale(&-Q::one())]).unwrap()
    }

    fn c3() -> FiniteMatrixGroup<Q> {
        FiniteMatrixGroup::generate(&[q(&[&[0, -1], &[1, -1]])], 10).unwrap()
    }

    fn s3() -> FiniteMatrixGroup<Q> {
        let swap = q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let cycle = q(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        FiniteMatrixGroup::generate(&[swap, cycle], 10).unwrap()
    }

    fn action(g: &FiniteMatrixGroup<Q>, n: usize) -> InducedAction<Q> {
        InducedAction::new(GroupActionSpec::Finite(g.clone()), n).unwrap()
    }

    fn random_poly(rng: &mut ChaCha8Rng, a: &InducedAction<Q>, max_deg: u32) -> Polynomial<Q> {
        let mut p = Polynomial::zero(a.ring());
        for _ in 0..rng.gen_range(1..6) {
            let d = rng.gen_range(0..=max_deg);
            let monos = a.ring().monomials_of_degree(d);
            let m = monos[rng.gen_range(0..monos.len())].clone();
            p.add_term(m, Q::new(rng.gen_range(-5..6), rng.gen_range(1..4)));
        }
        p
    }

    fn random_invertible(rng: &mut ChaCha8Rng, m: usize) -> Matrix<Q> {
        loop {
            let g = Matrix::from_fn(m, m, |_, _| Q::new(rng.gen_range(-3..4), rng.gen_range(1..3)));
            if !g.det().unwrap().is_zero() {
                return g;
            }
        }
    }

    #[test]
    fn group_validation() {
        assert!(FiniteMatrixGroup::new(vec![q(&[&[-1]])]).is_err());
        assert!(FiniteMatrixGroup::new(vec![q(&[&[1]]), q(&[&[2]])]).is_err());
        assert_eq!(c3().order(), 3);
        assert_eq!(s3().order(), 6);
        // |G| = 2 is zero in GF(2)
        let g2 = vec![Matrix::<Fp<2>>::identity(2), Matrix::from_i64(&[&[0, 1], &[1, 0]])];
        assert!(matches!(FiniteMatrixGroup::new(g2), Err(Error::Characteristic { .. })));
    }

    #[test]
    fn identity_and_sign_action() {
        let g = plus_minus_identity(1);
        let a = action(&g, 1);
        let x = a.x(0, 0);
        assert_eq!(act(&a, &Matrix::identity(1), &x).unwrap(), x);
        assert_eq!(act(&a, &q(&[&[-1]]), &x).unwrap(), -x);
    }

    #[test]
    fn transpose_rule() {
        let a = action(&plus_minus_identity(2), 1);
        let g = q(&[&[0, 1], &[-1, 0]]);
        assert_eq!(act(&a, &g, &a.x(0, 0)).unwrap(), -a.x(1, 0));
        assert!(act(&a, &Matrix::identity(3), &a.x(0, 0)).is_err());
    }

    #[test]
    fn action_composes_and_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = action(&plus_minus_identity(2), 2);
        for _ in 0..20 {
            let (g, h) = (random_invertible(&mut rng, 2), random_invertible(&mut rng, 2));
            let (f1, f2) = (random_poly(&mut rng, &a, 3), random_poly(&mut rng, &a, 2));
            let lhs = act(&a, &g, &act(&a, &h, &f1).unwrap()).unwrap();
            assert_eq!(lhs, act(&a, &g.mul(&h).unwrap(), &f1).unwrap());
            let prod = &f1 * &f2;
            assert_eq!(act(&a, &g, &prod).unwrap(), &act(&a, &g, &f1).unwrap() * &act(&a, &g, &f2).unwrap());
        }
    }

    #[test]
    fn reynolds_parity() {
        let g = plus_minus_identity(2);
        let a = action(&g, 1);
        let x = a.x(0, 0);
        assert_eq!(reynolds(&g, &a, &(&x * &x)).unwrap(), &x * &x);
        assert!(reynolds(&g, &a, &x).unwrap().is_zero());
    }

    #[test]
    fn reynolds_c3_square() {
        let g = c3();
        let a = action(&g, 1);
        let x = a.x(0, 0);
        let r = reynolds(&g, &a, &(&x * &x)).unwrap();
        // orbit of x^2 under the transpose rule: x^2, y^2, (x+y)^2
        let expected = Polynomial::parse(a.ring(), "2/3*x11^2 + 2/3*x11*x21 + 2/3*x21^2").unwrap();
        assert_eq!(r, expected);
        for gen in g.elements() {
            assert_eq!(act(&a, gen, &r).unwrap(), r);
        }
    }

    #[test]
    fn reynolds_is_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for g in [plus_minus_identity(2), c3(), s3()] {
            let a = action(&g, 1);
            for _ in 0..20 {
                let f = random_poly(&mut rng, &a, 4);
                let r = reynolds(&g, &a, &f).unwrap();
                assert_eq!(reynolds(&g, &a, &r).unwrap(), r);
                for h in g.elements() {
                    assert_eq!(act(&a, h, &r).unwrap(), r);
                }
            }
            for d in 0..5 {
                for b in fixed_space_basis(&g, &a, d).unwrap() {
                    assert_eq!(reynolds(&g, &a, &b).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn fixed_space_small_cases() {
        let g = plus_minus_identity(2);
        let a = action(&g, 1);
        assert!(fixed_space_basis(&g, &a, 1).unwrap().is_empty());
        assert_eq!(fixed_space_basis(&g, &a, 2).unwrap().len(), 3);
    }

    #[test]
    fn molien_closed_forms() {
        let trivial = FiniteMatrixGroup::new(vec![Matrix::<Q>::identity(1)]).unwrap();
        assert_eq!(molien_series(&trivial, 5).unwrap(), vec![1; 6]);
        assert_eq!(molien_series(&plus_minus_identity(2), 8).unwrap(), vec![1, 0, 3, 0, 5, 0, 7, 0, 9]);
        // series of 1/((1-t)(1-t^2)(1-t^3)): partitions into parts of size <= 3
        assert_eq!(molien_series(&s3(), 10).unwrap(), vec![1, 1, 2, 3, 4, 5, 7, 8, 10, 12, 14]);
        // (1/3)(1/(1-t)^2 + 2/(1+t+t^2)), expanded with sympy
        assert_eq!(molien_series(&c3(), 10).unwrap(), vec![1, 0, 1, 2, 1, 2, 3, 2, 3, 4, 3]);
    }

    #[test]
    fn molien_rejects_prime_fields() {
        let g = FiniteMatrixGroup::new(vec![Matrix::<Fp<7>>::identity(2), Matrix::identity(2).scale(&-Fp::<7>::one())]).unwrap();
        assert!(molien_series(&g, 3).is_err());
    }

    #[test]
    fn fixed_space_matches_molien() {
        for g in [plus_minus_identity(2), c3(), s3()] {
            let a = action(&g, 1);
            let series = molien_series(&g, 10).unwrap();
            for d in 0..=10 {
                assert_eq!(fixed_space_basis(&g, &a, d).unwrap().len() as u64, series[d as usize], "d={d}");
            }
        }
    }

    #[test]
    fn sl2_infinitesimal_invariants() {
        let spec = ClassicalGroupSpec::<Q>::sl(2);
        let a2 = InducedAction::new(GroupActionSpec::Classical(spec.clone()), 2).unwrap();
        let basis = infinitesimal_invariant_basis(&spec, &a2, 2).unwrap();
        assert_eq!(basis.len(), 1);
        let minor = Polynomial::parse(a2.ring(), "x11*x22 - x12*x21").unwrap();
        assert_eq!(basis[0].monic(), minor.monic());
        let a1 = InducedAction::new(GroupActionSpec::Classical(spec.clone()), 1).unwrap();
        for d in 1..6 {
            assert!(infinitesimal_invariant_basis(&spec, &a1, d).unwrap().is_empty());
        }
    }

    #[test]
    fn sp2_pairing_is_the_only_quadratic_invariant() {
        let spec = ClassicalGroupSpec::<Q>::new(ClassicalKind::Sp, 2, Some(q(&[&[0, 1], &[-1, 0]]))).unwrap();
        let a = InducedAction::new(GroupActionSpec::Classical(spec.clone()), 2).unwrap();
        let basis = infinitesimal_invariant_basis(&spec, &a, 2).unwrap();
        assert_eq!(basis.len(), 1);
        let pairing = Polynomial::parse(a.ring(), "x11*x22 - x21*x12").unwrap();
        assert_eq!(basis[0].monic(), pairing.monic());
    }

    #[test]
    fn orthogonal_reflection_preserves_form() {
        let b = q(&[&[1, 0], &[0, 2]]);
        let spec = ClassicalGroupSpec::<Q>::new(ClassicalKind::O, 2, Some(b.clone())).unwrap();
        let h = spec.reflection().unwrap();
        assert_eq!(h.mul(&b).unwrap().mul(&h.transpose()).unwrap(), b);
        assert_eq!(h.det().unwrap(), -Q::one());
        for x in spec.lie_algebra_basis() {
            let lhs = x.mul(&b).unwrap();
            let rhs = b.mul(&x.transpose()).unwrap();
            assert!(lhs.sub(&rhs.scale(&-Q::one())).unwrap().to_rows().iter().flatten().all(Q::is_zero));
        }
        let hyperbolic = q(&[&[0, 1], &[1, 0]]);
        let spec = ClassicalGroupSpec::<Q>::new(ClassicalKind::O, 2, Some(hyperbolic.clone())).unwrap();
        let h = spec.reflection().unwrap();
        assert_eq!(h.mul(&hyperbolic).unwrap().mul(&h.transpose()).unwrap(), hyperbolic);
    }

    #[test]
    fn classical_spec_validation() {
        assert!(ClassicalGroupSpec::<Q>::new(ClassicalKind::Sp, 3, None).is_err());
        assert!(ClassicalGroupSpec::<Q>::new(ClassicalKind::Sp, 2, Some(Matrix::identity(2))).is_err());
        assert!(ClassicalGroupSpec::<Q>::new(ClassicalKind::O, 2, Some(q(&[&[1, 1], &[1, 1]]))).is_err());
        assert!(ClassicalGroupSpec::<Fp<2>>::new(ClassicalKind::SO, 2, None).is_err());
        assert_eq!(ClassicalGroupSpec::<Q>::new(ClassicalKind::Sl, 3, None).unwrap().lie_algebra_basis().len(), 8);
        assert_eq!(ClassicalGroupSpec::<Q>::new(ClassicalKind::Sp, 4, None).unwrap().lie_algebra_basis().len(), 10);
        assert_eq!(ClassicalGroupSpec::<Q>::new(ClassicalKind::SO, 3, None).unwrap().lie_algebra_basis().len(), 3);
    }

    #[test]
    fn group_json() {
        let v: serde_json::Value =
            serde_json::from_str(r#"{"kind":"finite","matrices":[[["1","0"],["0","1"]],[["-1","0"],["0","-1"]]]}"#).unwrap();
        match GroupActionSpec::<Q>::from_json(&v).unwrap() {
            GroupActionSpec::Finite(g) => assert_eq!(g.order(), 2),
            _ => panic!("expected finite"),
        }
        let v: serde_json::Value = serde_json::from_str(r#"{"kind":"Sp","m":2,"form":[["0","1"],["-1","0"]]}"#).unwrap();
        assert_eq!(GroupActionSpec::<Q>::from_json(&v).unwrap().m(), 2);
        let v: serde_json::Value = serde_json::from_str(r#"{"kind":"Gl","m":2}"#).unwrap();
        assert!(GroupActionSpec::<Q>::from_json(&v).is_err());
    }
}
