//! Graded presentations and bounded t-pgg certificates.
//!
//! A [`GradedPresentation`] is a weighted polynomial ring in generator
//! symbols modulo homogeneous relations. Everything here is computed one
//! degree at a time: the degree-`d` piece of the relation ideal is spanned by
//! relation × monomial products, so no Gröbner basis is needed.
//!
//! The truncated symmetric algebra `S(A_{≤t})` is modelled by formal
//! products of basis elements of the pieces `A_1..A_t`. A presentation is
//! certified t-pgg up to `D` when, for every `d ≤ D`, the multiplication map
//! `μ_d` is onto and its kernel is generated by kernel elements of degree
//! at most `t`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{sparse_from_pairs, Matrix, SparseEchelon, SparseVec};
use crate::poly::{Monomial, Polynomial, PolynomialRing};

/// Generator symbols with positive degrees and homogeneous relations among them.
#[derive(Clone, Debug)]
pub struct GradedPresentation<F: Field> {
    ring: Arc<PolynomialRing>,
    relations: Vec<Polynomial<F>>,
    t_claimed: Option<u32>,
}

impl<F: Field> GradedPresentation<F> {
    pub fn new(ring: Arc<PolynomialRing>, relations: Vec<Polynomial<F>>, t_claimed: Option<u32>) -> Result<Self> {
        let mut kept = Vec::with_capacity(relations.len());
        for r in relations {
            if !r.ring().same_as(&ring) {
                return Err(Error::RingMismatch("relation is not over the generator ring".into()));
            }
            match r.homogeneous_degree()? {
                None => continue,
                Some(0) => return Err(Error::Invalid(format!("relation `{r}` has degree 0"))),
                Some(_) => kept.push(r),
            }
        }
        Ok(GradedPresentation { ring, relations: kept, t_claimed })
    }

    /// Polynomial ring on the given symbols with no relations.
    pub fn free(generators: &[(&str, u32)]) -> Result<Self> {
        Self::parse(generators, &[], None)
    }

    pub fn parse(generators: &[(&str, u32)], relations: &[&str], t_claimed: Option<u32>) -> Result<Self> {
        let ring = PolynomialRing::new(
            generators.iter().map(|(n, _)| n.to_string()).collect(),
            generators.iter().map(|(_, d)| *d).collect(),
        )?;
        let rels = relations.iter().map(|s| Polynomial::parse(&ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, rels, t_claimed)
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn generator_names(&self) -> &[String] {
        self.ring.names()
    }

    pub fn generator_degrees(&self) -> &[u32] {
        self.ring.weights()
    }

    pub fn relations(&self) -> &[Polynomial<F>] {
        &self.relations
    }

    pub fn t_claimed(&self) -> Option<u32> {
        self.t_claimed
    }

    pub fn with_t_claimed(mut self, t: Option<u32>) -> Self {
        self.t_claimed = t;
        self
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.ring.weights().iter().copied().max().unwrap_or(0)
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// `max{generator degree, relation degree}`.
    pub fn t_ambient(&self) -> u32 {
        self.max_generator_degree().max(self.max_relation_degree())
    }

    /// The claimed bound when present, otherwise [`t_ambient`](Self::t_ambient).
    pub fn t_bound(&self) -> u32 {
        self.t_claimed.unwrap_or_else(|| self.t_ambient())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "generators": self.ring.names().iter().zip(self.ring.weights())
                .map(|(n, d)| json!({"name": n, "degree": d}))
                .collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "t_claimed": self.t_claimed,
            "t_ambient": self.t_ambient(),
        })
    }

    /// Reads `{"generators":[{"name","degree"}],"relations":[string],"t_claimed"?:int}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let gens = value
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("presentation needs a `generators` array".into()))?;
        let mut names = Vec::with_capacity(gens.len());
        let mut degrees = Vec::with_capacity(gens.len());
        for g in gens {
            let name = g.get("name").and_then(Value::as_str).ok_or_else(|| Error::Parse("generator needs a `name`".into()))?;
            let degree = g
                .get("degree")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("generator `{name}` needs an integer `degree`")))?;
            names.push(name.to_string());
            degrees.push(u32::try_from(degree).map_err(|_| Error::Parse("degree too large".into()))?);
        }
        let ring = PolynomialRing::new(names, degrees)?;
        let mut rels = Vec::new();
        if let Some(list) = value.get("relations") {
            let list = list.as_array().ok_or_else(|| Error::Parse("`relations` must be an array".into()))?;
            for r in list {
                let s = r.as_str().ok_or_else(|| Error::Parse("relations must be strings".into()))?;
                rels.push(Polynomial::parse(&ring, s)?);
            }
        }
        let t_claimed = match value.get("t_claimed") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| Error::Parse("`t_claimed` must be an integer".into()))? as u32),
        };
        Self::new(ring, rels, t_claimed)
    }
}

impl<F: Field> fmt::Display for GradedPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[")?;
        for (i, (n, d)) in self.ring.names().iter().zip(self.ring.weights()).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{d}")?;
        }
        write!(f, "]")?;
        if !self.relations.is_empty() {
            write!(f, "/(")?;
            for (i, r) in self.relations.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Degree-`d` piece of a presented algebra.
///
/// The basis consists of the monomials that are not leading terms of the
/// relation span, taken from the ascending monomial order, so it is the
/// greedy choice of first independent monomials.
#[derive(Clone, Debug)]
pub struct GradedPieceBasis<F: Field> {
    degree: u32,
    monomials: Vec<Monomial>,
    basis: Vec<usize>,
    position: HashMap<Monomial, usize>,
    coords: Vec<SparseVec<F>>,
    ideal_dim: usize,
}

impl<F: Field> GradedPieceBasis<F> {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal_dim
    }

    /// All generator monomials of this degree, ascending.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.basis.iter().map(|&i| &self.monomials[i])
    }

    pub fn basis_monomial(&self, k: usize) -> &Monomial {
        &self.monomials[self.basis[k]]
    }

    /// Coordinates of a monomial of this degree in the basis.
    pub fn reduce_monomial(&self, m: &Monomial) -> Option<&SparseVec<F>> {
        self.position.get(m).map(|&i| &self.coords[i])
    }

    /// Coordinates of a homogeneous polynomial of this degree (zero allowed).
    pub fn reduce(&self, p: &Polynomial<F>) -> Result<SparseVec<F>> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (m, c) in p.terms() {
            let v = self
                .reduce_monomial(m)
                .ok_or_else(|| Error::NotHomogeneous(format!("term of degree {} in the degree-{} piece", m.degree(), self.degree)))?;
            for (i, x) in v {
                *acc.entry(*i).or_insert_with(F::zero) += x.clone() * c;
            }
        }
        Ok(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }
}

/// Degree-`d` piece of the presented algebra.
pub fn algebra_piece<F: Field>(p: &GradedPresentation<F>, d: u32) -> GradedPieceBasis<F> {
    let ring = &p.ring;
    let monomials = ring.monomials_of_degree(d);
    let position: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = SparseEchelon::new(monomials.len());
    for r in &p.relations {
        let rd = r.degree().expect("relations are nonzero");
        if rd > d {
            continue;
        }
        for cof in ring.monomials_of_degree(d - rd) {
            let row = sparse_from_pairs(r.terms().map(|(m, c)| (position[&m.mul(&cof)], c.clone())));
            ech.insert(row);
        }
    }
    let ideal_dim = ech.rank();
    let reduced = ech.into_reduced();
    let basis: Vec<usize> = (0..monomials.len()).filter(|i| !reduced.contains_key(i)).collect();
    let basis_pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let coords = (0..monomials.len())
        .map(|i| match reduced.get(&i) {
            None => vec![(basis_pos[&i], F::one())],
            Some(row) => row
                .iter()
                .filter(|(c, _)| *c != i)
                .map(|(c, x)| (basis_pos[c], -x.clone()))
                .collect(),
        })
        .collect();
    GradedPieceBasis { degree: d, monomials, basis, position, coords, ideal_dim }
}

/// Pieces `A_0..=A_d`, computed in parallel.
pub fn algebra_pieces<F: Field>(p: &GradedPresentation<F>, d: u32) -> Vec<Arc<GradedPieceBasis<F>>> {
    (0..=d).into_par_iter().map(|k| Arc::new(algebra_piece(p, k))).collect()
}

/// Basis element of `A_i` used as a factor of a formal product: `(i, index in A_i)`.
pub type Atom = (u32, usize);

/// Degree-`d` piece of `S(A_{≤t})`: formal commutative products of atoms
/// whose degrees sum to `d`.
///
/// Elements are ordered by number of factors, then lexicographically, so
/// products with many factors sit at the high indices.
#[derive(Clone, Debug)]
pub struct SymPiece {
    t: u32,
    degree: u32,
    elements: Vec<Vec<Atom>>,
    index: HashMap<Vec<Atom>, usize>,
}

impl SymPiece {
    /// Needs `pieces[i]` for `1 ≤ i ≤ min(t, d)`.
    pub fn new<F: Field>(pieces: &[Arc<GradedPieceBasis<F>>], t: u32, d: u32) -> Self {
        let top = t.min(d);
        let atoms: Vec<Atom> =
            (1..=top).flat_map(|i| (0..pieces[i as usize].dim()).map(move |k| (i, k))).collect();
        let mut elements = Vec::new();
        let mut current = Vec::new();
        collect_multisets(&atoms, 0, d, &mut current, &mut elements);
        elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        SymPiece { t, degree: d, elements, index }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<Atom>] {
        &self.elements
    }

    pub fn index_of(&self, e: &[Atom]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Formal product of two elements as an index into `self`.
    pub fn product_index(&self, a: &[Atom], b: &[Atom]) -> Option<usize> {
        let mut merged = Vec::with_capacity(a.len() + b.len());
        merged.extend_from_slice(a);
        merged.extend_from_slice(b);
        merged.sort_unstable();
        self.index_of(&merged)
    }

    /// Generator-ring monomial representing element `k`.
    pub fn representative<F: Field>(&self, pieces: &[Arc<GradedPieceBasis<F>>], ring: &PolynomialRing, k: usize) -> Monomial {
        self.elements[k]
            .iter()
            .fold(ring.one_monomial(), |acc, &(i, j)| acc.mul(pieces[i as usize].basis_monomial(j)))
    }

    /// Text form `[m1]*[m2]*...` of element `k`; `1` for the empty product.
    pub fn describe<F: Field>(&self, pieces: &[Arc<GradedPieceBasis<F>>], ring: &Arc<PolynomialRing>, k: usize) -> String {
        let e = &self.elements[k];
        if e.is_empty() {
            return "1".into();
        }
        e.iter()
            .map(|&(i, j)| format!("[{}]", Polynomial::<F>::term(ring, F::one(), pieces[i as usize].basis_monomial(j).clone())))
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn collect_multisets(atoms: &[Atom], start: usize, remaining: u32, current: &mut Vec<Atom>, out: &mut Vec<Vec<Atom>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (k, &a) in atoms.iter().enumerate().skip(start) {
        if a.0 <= remaining {
            current.push(a);
            collect_multisets(atoms, k, remaining - a.0, current, out);
            current.pop();
        }
    }
}

/// `Σ_{|d̲| = d} Π_i C(dims[i] + d_i - 1, d_i)` over tuples with `i ≤ t`.
pub fn sym_dimension_formula(dims: &[usize], t: u32, d: u32) -> u128 {
    fn go(dims: &[usize], i: u32, t: u32, remaining: u32) -> u128 {
        if remaining == 0 {
            return 1;
        }
        if i > t {
            return 0;
        }
        let dim = dims.get(i as usize).copied().unwrap_or(0) as u128;
        let mut total = 0;
        let mut di = 0u32;
        while di * i <= remaining {
            total += multiset_count(dim, di as u128) * go(dims, i + 1, t, remaining - di * i);
            di += 1;
        }
        total
    }
    go(dims, 1, t, d)
}

fn multiset_count(n: u128, k: u128) -> u128 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    // C(n + k - 1, k)
    let mut acc = 1u128;
    for j in 0..k {
        acc = acc * (n + j) / (j + 1);
    }
    acc
}

/// Degree-`d` piece of `S(A_{≤t})` for a presentation.
pub fn sym_truncated_piece<F: Field>(p: &GradedPresentation<F>, t: u32, d: u32) -> Result<SymPiece> {
    if t == 0 {
        return Err(Error::Invalid("t must be at least 1".into()));
    }
    let pieces = algebra_pieces(p, t.min(d));
    Ok(SymPiece::new(&pieces, t, d))
}

fn mult_columns<F: Field>(
    pieces: &[Arc<GradedPieceBasis<F>>],
    ring: &PolynomialRing,
    sym: &SymPiece,
) -> Vec<SparseVec<F>> {
    let target = &pieces[sym.degree() as usize];
    (0..sym.dim())
        .into_par_iter()
        .map(|k| {
            target
                .reduce_monomial(&sym.representative(pieces, ring, k))
                .expect("representative has the right degree")
                .clone()
        })
        .collect()
}

fn dense_from_columns<F: Field>(rows: usize, cols: &[SparseVec<F>]) -> Matrix<F> {
    let mut m = Matrix::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            m[(*i, j)] = x.clone();
        }
    }
    m
}

/// Matrix of `μ_d : S(A_{≤t})_d → A_d` in the two chosen bases.
pub fn mult_map<F: Field>(p: &GradedPresentation<F>, t: u32, d: u32) -> Result<Matrix<F>> {
    if t == 0 {
        return Err(Error::Invalid("t must be at least 1".into()));
    }
    let pieces = algebra_pieces(p, d);
    let sym = SymPiece::new(&pieces, t, d);
    let cols = mult_columns(&pieces, &p.ring, &sym);
    Ok(dense_from_columns(pieces[d as usize].dim(), &cols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedCondition {
    Surjectivity,
    KernelGeneration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified { up_to: u32 },
    Refuted { degree: u32, failed: FailedCondition },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified { up_to } => write!(f, "certified-up-to-{up_to}"),
            Verdict::Refuted { degree, .. } => write!(f, "refuted-at-degree-{degree}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub d: u32,
    pub dim_sym: usize,
    #[serde(rename = "dim_A")]
    pub dim_a: usize,
    pub dim_kernel: usize,
    pub surjective: bool,
    /// `None` when surjectivity already failed at this degree.
    pub kernel_generated: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PggCertificate {
    pub t: u32,
    pub max_degree: u32,
    pub degrees: Vec<DegreeRecord>,
    pub verdict: Verdict,
}

impl PggCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict.is_certified()
    }

    pub fn to_json(&self) -> Value {
        let failed = match self.verdict {
            Verdict::Refuted { failed, .. } => serde_json::to_value(failed).expect("serializable"),
            Verdict::Certified { .. } => Value::Null,
        };
        json!({
            "t": self.t,
            "D": self.max_degree,
            "degrees": self.degrees,
            "verdict": self.verdict.to_string(),
            "failed_condition": failed,
        })
    }
}

/// Decides, degree by degree up to `max_degree`, whether the presented
/// algebra is t-pgg. Stops at the first failing degree.
pub fn check_tpgg<F: Field>(p: &GradedPresentation<F>, t: u32, max_degree: u32) -> Result<PggCertificate> {
    if t == 0 {
        return Err(Error::Invalid("t must be at least 1".into()));
    }
    if max_degree < t {
        return Err(Error::Invalid(format!("verification bound {max_degree} is below t = {t}")));
    }
    let pieces = algebra_pieces(p, max_degree);
    let syms: Vec<SymPiece> = (0..=max_degree).into_par_iter().map(|d| SymPiece::new(&pieces, t, d)).collect();
    // kernel elements of degree ≤ t not generated by lower ones, as sparse vectors over syms[e]
    let mut fresh: Vec<Vec<SparseVec<F>>> = vec![Vec::new(); t as usize + 1];
    let mut degrees = Vec::new();
    for d in 0..=max_degree {
        let sym = &syms[d as usize];
        let dim_a = pieces[d as usize].dim();
        let cols = mult_columns(&pieces, &p.ring, sym);
        let mut image = SparseEchelon::new(dim_a);
        for c in &cols {
            if image.rank() == dim_a {
                break;
            }
            image.insert(c.clone());
        }
        let rank = image.rank();
        let surjective = rank == dim_a;
        let dim_kernel = sym.dim() - rank;
        if !surjective {
            degrees.push(DegreeRecord { d, dim_sym: sym.dim(), dim_a, dim_kernel, surjective, kernel_generated: None });
            return Ok(PggCertificate {
                t,
                max_degree,
                degrees,
                verdict: Verdict::Refuted { degree: d, failed: FailedCondition::Surjectivity },
            });
        }
        let generated = if d <= t {
            if d > 0 && dim_kernel > 0 {
                fresh[d as usize] = fresh_kernel_generators(&syms, &fresh, d, dim_a, &cols);
            }
            true
        } else {
            let lower = products_of_lower(&syms, &fresh, d, t, Some(dim_kernel));
            lower.rank() == dim_kernel
        };
        degrees.push(DegreeRecord {
            d,
            dim_sym: sym.dim(),
            dim_a,
            dim_kernel,
            surjective,
            kernel_generated: Some(generated),
        });
        if !generated {
            return Ok(PggCertificate {
                t,
                max_degree,
                degrees,
                verdict: Verdict::Refuted { degree: d, failed: FailedCondition::KernelGeneration },
            });
        }
    }
    Ok(PggCertificate { t, max_degree, degrees, verdict: Verdict::Certified { up_to: max_degree } })
}

/// Span of `fresh[e] × syms[d - e]` for `1 ≤ e ≤ min(top, d - 1)`; stops once `stop_at` is reached.
fn products_of_lower<F: Field>(
    syms: &[SymPiece],
    fresh: &[Vec<SparseVec<F>>],
    d: u32,
    top: u32,
    stop_at: Option<usize>,
) -> SparseEchelon<F> {
    let target = &syms[d as usize];
    let mut ech = SparseEchelon::new(target.dim());
    for e in (1..=top.min(d.saturating_sub(1))).rev() {
        let source = &syms[e as usize];
        let cofactors = &syms[(d - e) as usize];
        for k in &fresh[e as usize] {
            for s in cofactors.elements() {
                if stop_at.is_some_and(|n| ech.rank() >= n) {
                    return ech;
                }
                let row = sparse_from_pairs(k.iter().map(|(i, c)| {
                    let col = target.product_index(&source.elements()[*i], s).expect("product stays in the piece");
                    (col, c.clone())
                }));
                ech.insert(row);
            }
        }
    }
    ech
}

fn fresh_kernel_generators<F: Field>(
    syms: &[SymPiece],
    fresh: &[Vec<SparseVec<F>>],
    d: u32,
    dim_a: usize,
    cols: &[SparseVec<F>],
) -> Vec<SparseVec<F>> {
    let mut ech = products_of_lower(syms, fresh, d, d - 1, None);
    let kernel = dense_from_columns(dim_a, cols).nullspace();
    let mut out = Vec::new();
    for v in kernel {
        let sv = sparse_from_pairs(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()));
        if ech.insert(sv.clone()) {
            out.push(sv);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinT {
    Determined { t: u32, certificate: PggCertificate },
    Undetermined { max_degree: u32 },
}

impl MinT {
    pub fn t(&self) -> Option<u32> {
        match self {
            MinT::Determined { t, .. } => Some(*t),
            MinT::Undetermined { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            MinT::Determined { t, certificate } => json!({
                "status": "determined",
                "t_min": t,
                "D": certificate.max_degree,
                "certificate": certificate.to_json(),
            }),
            MinT::Undetermined { max_degree } => json!({
                "status": "undetermined",
                "t_min": null,
                "D": max_degree,
                "certificate": null,
            }),
        }
    }
}

/// Smallest `t ≤ max_degree` certified up to `max_degree`.
pub fn min_tpgg<F: Field>(p: &GradedPresentation<F>, max_degree: u32) -> Result<MinT> {
    if max_degree < p.max_generator_degree() {
        return Err(Error::Invalid(format!(
            "verification bound {max_degree} is below the largest generator degree {}",
            p.max_generator_degree()
        )));
    }
    for t in 1..=max_degree.max(1) {
        let cert = check_tpgg(p, t, max_degree.max(t))?;
        if cert.is_certified() {
            return Ok(MinT::Determined { t, certificate: cert });
        }
    }
    Ok(MinT::Undetermined { max_degree })
}

fn disjoint_names(taken: &[String], names: &[String]) -> Vec<String> {
    let mut out: Vec<String> = names.to_vec();
    let clash = |out: &[String]| out.iter().any(|n| taken.contains(n));
    while clash(&out) {
        out = out
            .iter()
            .map(|n| match n.find('[') {
                Some(b) => format!("{}_b{}", &n[..b], &n[b..]),
                None => format!("{n}_b"),
            })
            .collect();
    }
    out
}

/// Presentation of the tensor product. Clashing symbols of `q` get a `_b` suffix.
/// The attached bound is the sum of the two factors' bounds.
pub fn tensor_presentation<F: Field>(p: &GradedPresentation<F>, q: &GradedPresentation<F>) -> Result<GradedPresentation<F>> {
    let q_names = disjoint_names(p.ring.names(), q.ring.names());
    let mut names = p.ring.names().to_vec();
    names.extend(q_names);
    let mut weights = p.ring.weights().to_vec();
    weights.extend_from_slice(q.ring.weights());
    let ring = PolynomialRing::new(names, weights)?;
    let np = p.ring.nvars();
    let left: Vec<_> = (0..np).map(|i| Polynomial::var(&ring, i)).collect();
    let right: Vec<_> = (0..q.ring.nvars()).map(|i| Polynomial::var(&ring, np + i)).collect();
    let mut rels = Vec::new();
    for r in &p.relations {
        rels.push(r.substitute(&ring, &left)?);
    }
    for r in &q.relations {
        rels.push(r.substitute(&ring, &right)?);
    }
    GradedPresentation::new(ring, rels, Some(p.t_bound() + q.t_bound()))
}

/// Adds homogeneous relations; the bound becomes `max{t_P, max degree of extra}`.
pub fn quotient_presentation<F: Field>(p: &GradedPresentation<F>, extra: &[Polynomial<F>]) -> Result<GradedPresentation<F>> {
    let mut bound = p.t_bound();
    let mut rels = p.relations.clone();
    for r in extra {
        if !r.ring().same_as(&p.ring) {
            return Err(Error::RingMismatch("extra relation is not over the generator ring".into()));
        }
        if !r.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("extra relation `{r}`")));
        }
        if let Some(d) = r.degree() {
            bound = bound.max(d);
            rels.push(r.clone());
        }
    }
    let t_claimed = if extra.is_empty() { p.t_claimed } else { Some(bound) };
    GradedPresentation::new(p.ring.clone(), rels, t_claimed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    type P = GradedPresentation<Q>;

    fn gr24() -> P {
        P::parse(
            &[("p12", 2), ("p13", 2), ("p14", 2), ("p23", 2), ("p24", 2), ("p34", 2)],
            &["p12*p34 - p13*p24 + p14*p23"],
            Some(4),
        )
        .unwrap()
    }

    fn circle() -> P {
        P::parse(&[("x", 1), ("y", 1)], &["x^2 + y^2"], None).unwrap()
    }

    fn sign_invariants() -> P {
        P::parse(&[("a", 2), ("b", 2), ("c", 2)], &["b^2 - a*c"], None).unwrap()
    }

    #[test]
    fn presentation_validation() {
        assert!(P::parse(&[("x", 1), ("y", 2)], &["x + y"], None).is_err());
        assert!(P::parse(&[("x", 1), ("y", 2)], &["x^2 + y"], None).is_ok());
        assert!(P::parse(&[("x", 0)], &[], None).is_err());
        assert!(P::parse(&[("x", 1)], &["3"], None).is_err());
        let p = P::parse(&[("x", 1), ("y", 2)], &["x^2 - y", "0"], None).unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.t_ambient(), 2);
    }

    #[test]
    fn json_round_trip() {
        let p = gr24();
        let q = P::from_json(&p.to_json()).unwrap();
        assert_eq!(q.to_json(), p.to_json());
        assert!(P::from_json(&json!({"relations": []})).is_err());
    }

    #[test]
    fn algebra_piece_examples() {
        let line = P::free(&[("x", 1)]).unwrap();
        assert_eq!(algebra_piece(&line, 5).dim(), 1);
        let g = gr24();
        let a4 = algebra_piece(&g, 4);
        assert_eq!((a4.monomials().len(), a4.ideal_dim(), a4.dim()), (21, 1, 20));
        assert_eq!(algebra_piece(&g, 3).dim(), 0);
        assert_eq!(algebra_piece(&circle(), 2).dim(), 2);
        for d in 0..12 {
            let a = algebra_piece(&g, d);
            assert_eq!(a.dim() + a.ideal_dim(), a.monomials().len());
        }
        let dims: Vec<usize> = (0..=5).map(|k| algebra_piece(&g, 2 * k).dim()).collect();
        assert_eq!(dims, vec![1, 6, 20, 50, 105, 196]);
    }

    #[test]
    fn reduction_respects_relations() {
        let c = circle();
        let a2 = algebra_piece(&c, 2);
        let rel = &c.relations()[0];
        assert!(a2.reduce(rel).unwrap().is_empty());
        let xy = Polynomial::parse(c.ring(), "x*y").unwrap();
        assert_eq!(a2.reduce(&xy).unwrap().len(), 1);
        assert!(a2.reduce(&Polynomial::parse(c.ring(), "x").unwrap()).is_err());
    }

    #[test]
    fn sym_piece_examples() {
        let plane = P::free(&[("x", 1), ("y", 1)]).unwrap();
        assert_eq!(sym_truncated_piece(&plane, 2, 2).unwrap().dim(), 6);
        let line = P::free(&[("x", 1)]).unwrap();
        assert_eq!(sym_truncated_piece(&line, 1, 6).unwrap().dim(), 1);
        for p in [gr24(), circle(), sign_invariants()] {
            assert_eq!(sym_truncated_piece(&p, 3, 1).unwrap().dim(), algebra_piece(&p, 1).dim());
        }
        let c = circle();
        assert_eq!(sym_truncated_piece(&c, 2, 4).unwrap().dim(), 14);
    }

    #[test]
    fn sym_dimension_matches_formula() {
        for p in [gr24(), circle(), sign_invariants(), P::free(&[("x", 1), ("y", 2), ("z", 3)]).unwrap()] {
            let pieces = algebra_pieces(&p, 10);
            let dims: Vec<usize> = pieces.iter().map(|a| a.dim()).collect();
            for t in 1..=4 {
                for d in 0..=10 {
                    let sym = SymPiece::new(&pieces, t, d);
                    assert_eq!(sym.dim() as u128, sym_dimension_formula(&dims, t, d), "t={t} d={d}");
                }
            }
        }
        assert_eq!(sym_dimension_formula(&[1, 0, 6, 0, 20], 4, 10), 2632);
    }

    #[test]
    fn mult_map_examples() {
        let plane = P::free(&[("x", 1), ("y", 1)]).unwrap();
        let m = mult_map(&plane, 2, 2).unwrap();
        assert_eq!((m.rows(), m.cols(), m.rank()), (3, 6, 3));
        assert_eq!(m.nullspace().len(), 3);
        let m1 = mult_map(&plane, 2, 1).unwrap();
        assert_eq!(m1, Matrix::identity(2));
        let g = gr24();
        let m = mult_map(&g, 4, 4).unwrap();
        assert_eq!(m.rank(), 20);
        assert_eq!(m.nullspace().len(), sym_truncated_piece(&g, 4, 4).unwrap().dim() - 20);
    }

    #[test]
    fn commutativity_elements_lie_in_kernel() {
        // a_i ⊗ a_j − m(a_i a_j) is killed by μ_2 for every pair of degree-1 atoms
        let plane = P::free(&[("x", 1), ("y", 1)]).unwrap();
        let pieces = algebra_pieces(&plane, 2);
        let sym = SymPiece::new(&pieces, 2, 2);
        let m = mult_map(&plane, 2, 2).unwrap();
        for i in 0..2 {
            for j in i..2 {
                let prod = sym.index_of(&[(1, i), (1, j)]).unwrap();
                let mono = pieces[1].basis_monomial(i).mul(pieces[1].basis_monomial(j));
                let k = pieces[2].basis_monomials().position(|b| *b == mono).unwrap();
                let single = sym.index_of(&[(2, k)]).unwrap();
                let mut v = vec![Q::zero(); sym.dim()];
                v[prod] = Q::one();
                v[single] = -Q::one();
                assert!(m.mul_vec(&v).unwrap().iter().all(Q::is_zero));
            }
        }
    }

    #[test]
    fn circle_is_two_pgg() {
        let cert = check_tpgg(&circle(), 2, 8).unwrap();
        assert!(cert.is_certified());
        assert_eq!(cert.degrees.len(), 9);
        for r in &cert.degrees {
            assert_eq!(r.dim_kernel + r.dim_a, r.dim_sym);
        }
        // degree-2 relation is not visible with t = 1
        let cert = check_tpgg(&circle(), 1, 8).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted { degree: 2, failed: FailedCondition::KernelGeneration });
    }

    #[test]
    fn grassmannian_bounds() {
        let g = gr24();
        assert!(check_tpgg(&g, 4, 10).unwrap().is_certified());
        let cert = check_tpgg(&g, 3, 10).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted { degree: 4, failed: FailedCondition::KernelGeneration });
        let cert = check_tpgg(&g, 1, 10).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted { degree: 2, failed: FailedCondition::Surjectivity });
        assert_eq!(min_tpgg(&g, 10).unwrap().t(), Some(4));
    }

    #[test]
    fn free_algebras_certify_at_top_generator_degree() {
        assert_eq!(min_tpgg(&P::free(&[("x", 1)]).unwrap(), 6).unwrap().t(), Some(1));
        let p = P::free(&[("x", 1), ("y", 3)]).unwrap();
        assert_eq!(min_tpgg(&p, 8).unwrap().t(), Some(3));
        assert!(check_tpgg(&p, 3, 9).unwrap().is_certified());
    }

    #[test]
    fn sign_invariants_need_degree_four() {
        let p = sign_invariants();
        assert_eq!(min_tpgg(&p, 8).unwrap().t(), Some(4));
        assert!(!check_tpgg(&p, 3, 8).unwrap().is_certified());
    }

    #[test]
    fn evidence_is_bounded_by_max_degree() {
        // relation of degree 6 is invisible below degree 6
        let p = P::parse(&[("x", 1), ("y", 1)], &["x^6 - y^6"], None).unwrap();
        assert_eq!(min_tpgg(&p, 5).unwrap().t(), Some(1));
        assert_eq!(min_tpgg(&p, 8).unwrap().t(), Some(6));
        assert!(check_tpgg(&p, 4, 3).is_err());
        assert!(min_tpgg(&P::free(&[("x", 3)]).unwrap(), 2).is_err());
    }

    #[test]
    fn monotone_in_t() {
        for p in [gr24(), circle(), sign_invariants()] {
            for dmax in 4..=8 {
                let verdicts: Vec<bool> = (1..=dmax).map(|t| check_tpgg(&p, t, dmax).unwrap().is_certified()).collect();
                if let Some(first) = verdicts.iter().position(|&c| c) {
                    assert!(verdicts[first..].iter().all(|&c| c), "{p} D={dmax}");
                }
            }
        }
    }

    #[test]
    fn tensor_bounds() {
        let x = P::free(&[("x", 1)]).unwrap();
        let y = P::free(&[("y", 1)]).unwrap();
        let xy = tensor_presentation(&x, &y).unwrap();
        assert_eq!(xy.t_claimed(), Some(2));
        assert_eq!(min_tpgg(&xy, 6).unwrap().t(), Some(1));
        let cc = tensor_presentation(&circle(), &circle()).unwrap();
        assert_eq!(cc.generator_names(), ["x", "y", "x_b", "y_b"]);
        assert_eq!(cc.t_claimed(), Some(4));
        assert_eq!(min_tpgg(&cc, 6).unwrap().t(), Some(2));
        let gt = tensor_presentation(&gr24(), &P::free(&[("T", 1)]).unwrap()).unwrap();
        assert_eq!(gt.t_claimed(), Some(5));
        assert_eq!(min_tpgg(&gt, 10).unwrap().t(), Some(4));
    }

    #[test]
    fn quotient_bounds() {
        let plane = P::free(&[("x", 1), ("y", 1)]).unwrap();
        let rel = Polynomial::parse(plane.ring(), "x^2 + y^2").unwrap();
        let c = quotient_presentation(&plane, &[rel]).unwrap();
        assert_eq!(c.t_claimed(), Some(2));
        assert!(check_tpgg(&c, 2, 8).unwrap().is_certified());
        let g = gr24();
        let p12 = Polynomial::parse(g.ring(), "p12").unwrap();
        let h = quotient_presentation(&g, &[p12]).unwrap();
        assert_eq!(h.t_claimed(), Some(4));
        assert!(check_tpgg(&h, 4, 8).unwrap().is_certified());
        let same = quotient_presentation(&g, &[]).unwrap();
        assert_eq!(same.to_json(), g.to_json());
        let bad = Polynomial::parse(g.ring(), "p12 + p12*p34").unwrap();
        assert!(matches!(quotient_presentation(&g, &[bad]), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn certificate_json_shape() {
        let v = check_tpgg(&circle(), 1, 4).unwrap().to_json();
        assert_eq!(v["verdict"], "refuted-at-degree-2");
        assert_eq!(v["failed_condition"], "kernel_generation");
        assert_eq!(v["degrees"][2]["dim_A"], 2);
        let v = check_tpgg(&circle(), 2, 4).unwrap().to_json();
        assert_eq!(v["verdict"], "certified-up-to-4");
        assert!(v["failed_condition"].is_null());
    }
}
