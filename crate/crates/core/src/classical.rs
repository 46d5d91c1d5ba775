//! Generators and relations for invariant rings.
//!
//! For the classical groups the generators are brackets `d[J]` (maximal
//! minors of the `m×n` coordinate matrix) and pairings `p[i,j]`, and the
//! relations are the quadratic Plücker relations, Pfaffians of principal
//! submatrices of the skew pairing matrix, and minors of the symmetric
//! pairing matrix. For finite groups a presentation is computed directly
//! from fixed spaces.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{
    fixed_space_basis, infinitesimal_invariant_basis, is_infinitesimally_invariant, ClassicalGroupSpec, ClassicalKind,
    FiniteMatrixGroup, GroupActionSpec, InducedAction,
};
use crate::linalg::{sparse_from_pairs, Matrix, SparseEchelon};
use crate::pgg::{algebra_pieces, check_tpgg, GradedPresentation, PggCertificate};
use crate::poly::{Monomial, Polynomial, PolynomialRing};

#[derive(Clone, Debug)]
pub struct GeneratorEntry<F: Field> {
    pub name: String,
    pub degree: u32,
    pub realization: Polynomial<F>,
}

/// Named invariants together with their realizations in the coordinate ring.
#[derive(Clone, Debug)]
pub struct GeneratorTable<F: Field> {
    label: String,
    action: InducedAction<F>,
    entries: Vec<GeneratorEntry<F>>,
    symbols: Arc<PolynomialRing>,
}

impl<F: Field> GeneratorTable<F> {
    pub fn new(label: String, action: InducedAction<F>, entries: Vec<GeneratorEntry<F>>) -> Result<Self> {
        for e in &entries {
            if !e.realization.ring().same_as(action.ring()) {
                return Err(Error::RingMismatch(format!("realization of `{}`", e.name)));
            }
            if e.realization.homogeneous_degree()? != Some(e.degree) {
                return Err(Error::NotHomogeneous(format!("`{}` is not homogeneous of degree {}", e.name, e.degree)));
            }
        }
        let symbols = PolynomialRing::new(
            entries.iter().map(|e| e.name.clone()).collect(),
            entries.iter().map(|e| e.degree).collect(),
        )?;
        Ok(GeneratorTable { label, action, entries, symbols })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action(&self) -> &InducedAction<F> {
        &self.action
    }

    pub fn entries(&self) -> &[GeneratorEntry<F>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Weighted polynomial ring on the generator symbols.
    pub fn symbol_ring(&self) -> &Arc<PolynomialRing> {
        &self.symbols
    }

    pub fn symbol(&self, name: &str) -> Option<Polynomial<F>> {
        self.symbols.var_index(name).map(|i| Polynomial::var(&self.symbols, i))
    }

    pub fn realizations(&self) -> Vec<Polynomial<F>> {
        self.entries.iter().map(|e| e.realization.clone()).collect()
    }

    /// Substitutes realizations for symbols.
    pub fn realize(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        let p = if p.ring().same_as(&self.symbols) { p.with_ring(&self.symbols)? } else {
            return Err(Error::RingMismatch("polynomial is not over the generator symbols".into()));
        };
        p.substitute(self.action.ring(), &self.realizations())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.label,
            "m": self.action.m(),
            "n": self.action.n(),
            "generators": self.generators_json(),
        })
    }

    pub fn generators_json(&self) -> Vec<Value> {
        self.entries
            .iter()
            .map(|e| json!({"name": e.name, "degree": e.degree, "realization": e.realization.to_string()}))
            .collect()
    }
}

pub fn group_label<F: Field>(spec: &ClassicalGroupSpec<F>) -> String {
    format!("{}({})", spec.kind().name(), spec.m())
}

fn bracket_name(cols: &[usize]) -> String {
    format!("d[{}]", cols.iter().map(|c| (c + 1).to_string()).join(","))
}

fn pairing_name(i: usize, j: usize) -> String {
    format!("p[{},{}]", i + 1, j + 1)
}

/// Determinant of a square matrix of polynomials by cofactor expansion along the first row.
pub fn poly_det<F: Field>(ring: &Arc<PolynomialRing>, m: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let k = m.len();
    if k == 0 {
        return Polynomial::one(ring);
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<F>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][c] * &poly_det(ring, &minor);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Pfaffian of the skew matrix `entry(a, b)` restricted to `idx`.
fn pfaffian<F: Field>(ring: &Arc<PolynomialRing>, idx: &[usize], entry: &impl Fn(usize, usize) -> Polynomial<F>) -> Polynomial<F> {
    if idx.is_empty() {
        return Polynomial::one(ring);
    }
    let mut acc = Polynomial::zero(ring);
    for k in 1..idx.len() {
        let rest: Vec<usize> = idx.iter().enumerate().filter(|(i, _)| *i != 0 && *i != k).map(|(_, &v)| v).collect();
        let term = &entry(idx[0], idx[k]) * &pfaffian(ring, &rest, entry);
        acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn brackets<F: Field>(action: &InducedAction<F>) -> Vec<GeneratorEntry<F>> {
    let (m, n) = (action.m(), action.n());
    (0..n)
        .combinations(m)
        .map(|cols| {
            let mat: Vec<Vec<Polynomial<F>>> = (0..m).map(|i| cols.iter().map(|&j| action.x(i, j)).collect()).collect();
            GeneratorEntry { name: bracket_name(&cols), degree: m as u32, realization: poly_det(action.ring(), &mat) }
        })
        .collect()
}

fn pairing<F: Field>(action: &InducedAction<F>, b: &Matrix<F>, i: usize, j: usize) -> Polynomial<F> {
    let m = action.m();
    let mut p = Polynomial::zero(action.ring());
    for a in 0..m {
        for c in 0..m {
            if !b[(a, c)].is_zero() {
                p = &p + &(&action.x(a, i) * &action.x(c, j)).scale(&b[(a, c)]);
            }
        }
    }
    p
}

fn pairings<F: Field>(action: &InducedAction<F>, b: &Matrix<F>, strict: bool) -> Vec<GeneratorEntry<F>> {
    let n = action.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if strict && i == j {
                continue;
            }
            out.push(GeneratorEntry { name: pairing_name(i, j), degree: 2, realization: pairing(action, b, i, j) });
        }
    }
    out
}

/// Generators of the invariants of a classical group on `n` copies.
pub fn fft_generators<F: Field>(spec: &ClassicalGroupSpec<F>, n: usize) -> Result<GeneratorTable<F>> {
    let action = InducedAction::new(GroupActionSpec::Classical(spec.clone()), n)?;
    let entries = match spec.kind() {
        ClassicalKind::Sl => brackets(&action),
        ClassicalKind::Sp => pairings(&action, spec.form().expect("Sp form"), true),
        ClassicalKind::O => pairings(&action, spec.form().expect("O form"), false),
        ClassicalKind::SO => {
            let mut e = pairings(&action, spec.form().expect("SO form"), false);
            e.extend(brackets(&action));
            e
        }
    };
    GeneratorTable::new(group_label(spec), action, entries)
}

/// Sign of sorting `seq` and the sorted sequence; `None` with a repeated entry.
fn sort_with_sign(seq: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut v = seq.to_vec();
    let mut negative = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((negative, v))
}

fn signed_bracket<F: Field>(table: &GeneratorTable<F>, seq: &[usize]) -> Polynomial<F> {
    match sort_with_sign(seq) {
        None => Polynomial::zero(table.symbol_ring()),
        Some((neg, sorted)) => {
            let d = table.symbol(&bracket_name(&sorted)).expect("bracket symbol");
            if neg {
                -d
            } else {
                d
            }
        }
    }
}

fn plucker_relations<F: Field>(table: &GeneratorTable<F>, m: usize, n: usize) -> Vec<Polynomial<F>> {
    if m > n || m == 0 || m + 1 > n {
        return Vec::new();
    }
    let ring = table.symbol_ring();
    let mut out = Vec::new();
    for j in (0..n).combinations(m - 1) {
        for k in (0..n).combinations(m + 1) {
            let mut rel = Polynomial::zero(ring);
            for (u, &ku) in k.iter().enumerate() {
                let mut left = j.clone();
                left.push(ku);
                let right: Vec<usize> = k.iter().copied().filter(|&x| x != ku).collect();
                let term = &signed_bracket(table, &left) * &signed_bracket(table, &right);
                // (-1)^u with u counted from 1
                rel = if u % 2 == 1 { &rel + &term } else { &rel - &term };
            }
            out.push(rel);
        }
    }
    out
}

fn pairing_entry<F: Field>(table: &GeneratorTable<F>, i: usize, j: usize, skew: bool) -> Polynomial<F> {
    if i == j && skew {
        return Polynomial::zero(table.symbol_ring());
    }
    let p = table.symbol(&pairing_name(i.min(j), i.max(j))).expect("pairing symbol");
    if skew && i > j {
        -p
    } else {
        p
    }
}

fn pfaffian_relations<F: Field>(table: &GeneratorTable<F>, m: usize, n: usize) -> Vec<Polynomial<F>> {
    let entry = |a: usize, b: usize| pairing_entry(table, a, b, true);
    (0..n).combinations(m + 2).map(|idx| pfaffian(table.symbol_ring(), &idx, &entry)).collect()
}

fn symmetric_minor_relations<F: Field>(table: &GeneratorTable<F>, m: usize, n: usize) -> Vec<Polynomial<F>> {
    let mut out = Vec::new();
    for rows in (0..n).combinations(m + 1) {
        for cols in (0..n).combinations(m + 1) {
            let mat: Vec<Vec<Polynomial<F>>> =
                rows.iter().map(|&i| cols.iter().map(|&j| pairing_entry(table, i, j, false)).collect()).collect();
            out.push(poly_det(table.symbol_ring(), &mat));
        }
    }
    out
}

/// Drops zero and linearly dependent relations, keeping the first of each
/// dependent family, and makes leading coefficients positive.
pub fn independent_relations<F: Field>(relations: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let monomials: BTreeSet<Monomial> = relations.iter().flat_map(|r| r.terms().map(|(m, _)| m.clone())).collect();
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = SparseEchelon::new(monomials.len());
    let mut out = Vec::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let row = sparse_from_pairs(r.terms().map(|(m, c)| (index[m], c.clone())));
        if ech.insert(row) {
            let negative = r.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false);
            out.push(if negative { -r } else { r });
        }
    }
    out
}

/// Relations among the generators of [`fft_generators`].
///
/// For `SO` only the pairing minors are produced; relations involving
/// brackets are left out and show up as dimension mismatches in
/// [`verify_presentation`].
pub fn sft_relations<F: Field>(spec: &ClassicalGroupSpec<F>, n: usize) -> Result<Vec<Polynomial<F>>> {
    let table = fft_generators(spec, n)?;
    Ok(relations_for_table(spec, &table))
}

fn relations_for_table<F: Field>(spec: &ClassicalGroupSpec<F>, table: &GeneratorTable<F>) -> Vec<Polynomial<F>> {
    let (m, n) = (spec.m(), table.action().n());
    let raw = match spec.kind() {
        ClassicalKind::Sl => plucker_relations(table, m, n),
        ClassicalKind::Sp => pfaffian_relations(table, m, n),
        ClassicalKind::O | ClassicalKind::SO => symmetric_minor_relations(table, m, n),
    };
    independent_relations(raw)
}

/// Stated generation and relation bound: `2m` for `Sl`, `m + 2` otherwise.
pub fn claimed_t<F: Field>(spec: &ClassicalGroupSpec<F>) -> u32 {
    match spec.kind() {
        ClassicalKind::Sl => 2 * spec.m() as u32,
        _ => spec.m() as u32 + 2,
    }
}

/// Presentation with generators, relations and the claimed bound.
pub fn build_presentation<F: Field>(spec: &ClassicalGroupSpec<F>, n: usize) -> Result<GradedPresentation<F>> {
    let table = fft_generators(spec, n)?;
    presentation_of(spec, &table)
}

fn presentation_of<F: Field>(spec: &ClassicalGroupSpec<F>, table: &GeneratorTable<F>) -> Result<GradedPresentation<F>> {
    let rels = relations_for_table(spec, table);
    GradedPresentation::new(table.symbol_ring().clone(), rels, Some(claimed_t(spec)))
}

/// JSON with realizations: `{"generators":[{"name","degree","realization"}],"relations","t_claimed","t_ambient"}`.
pub fn presentation_json<F: Field>(table: &GeneratorTable<F>, p: &GradedPresentation<F>) -> Value {
    let mut v = p.to_json();
    v["generators"] = Value::Array(table.generators_json());
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionComparison {
    pub d: u32,
    pub presentation_dim: usize,
    pub invariant_dim: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub m: usize,
    pub n: usize,
    pub max_degree: u32,
    pub generator_count: usize,
    pub relation_count: usize,
    /// Generators that failed the invariance check.
    pub non_invariant_generators: Vec<String>,
    /// Relations that do not vanish on the realizations.
    pub non_vanishing_relations: Vec<String>,
    pub degrees: Vec<DimensionComparison>,
    pub t_claimed: u32,
    pub t_ambient: u32,
}

impl VerificationReport {
    pub fn generators_invariant(&self) -> bool {
        self.non_invariant_generators.is_empty()
    }

    pub fn relations_vanish(&self) -> bool {
        self.non_vanishing_relations.is_empty()
    }

    pub fn dimensions_agree(&self) -> bool {
        self.degrees.iter().all(|r| r.agree)
    }

    pub fn first_dimension_mismatch(&self) -> Option<u32> {
        self.degrees.iter().find(|r| !r.agree).map(|r| r.d)
    }

    pub fn passed(&self) -> bool {
        self.generators_invariant() && self.relations_vanish() && self.dimensions_agree()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["checks"] = json!({
            "generators_invariant": self.generators_invariant(),
            "relations_vanish": self.relations_vanish(),
            "dimensions_agree": self.dimensions_agree(),
        });
        v["first_dimension_mismatch"] = json!(self.first_dimension_mismatch());
        v["passed"] = json!(self.passed());
        v
    }
}

/// Checks invariance of the generators, vanishing of the relations, and
/// that the presented algebra has the dimensions of the invariant ring in
/// every degree up to `max_degree`.
pub fn verify_presentation<F: Field>(spec: &ClassicalGroupSpec<F>, n: usize, max_degree: u32) -> Result<VerificationReport> {
    if F::characteristic() != 0 {
        return Err(Error::Characteristic { characteristic: F::characteristic(), what: "presentation verification".into() });
    }
    let table = fft_generators(spec, n)?;
    let pres = presentation_of(spec, &table)?;
    let action = table.action();
    let mut non_invariant = Vec::new();
    for e in table.entries() {
        if !is_infinitesimally_invariant(spec, action, &e.realization)? {
            non_invariant.push(e.name.clone());
        }
    }
    let mut non_vanishing = Vec::new();
    for r in pres.relations() {
        if !table.realize(r)?.is_zero() {
            non_vanishing.push(r.to_string());
        }
    }
    let pieces = algebra_pieces(&pres, max_degree);
    let invariant_dims: Vec<Result<usize>> =
        (0..=max_degree).into_par_iter().map(|d| Ok(infinitesimal_invariant_basis(spec, action, d)?.len())).collect();
    let mut degrees = Vec::new();
    for (d, inv) in invariant_dims.into_iter().enumerate() {
        let inv = inv?;
        let pd = pieces[d].dim();
        degrees.push(DimensionComparison { d: d as u32, presentation_dim: pd, invariant_dim: inv, agree: pd == inv });
    }
    Ok(VerificationReport {
        group: group_label(spec),
        m: spec.m(),
        n,
        max_degree,
        generator_count: table.len(),
        relation_count: pres.relations().len(),
        non_invariant_generators: non_invariant,
        non_vanishing_relations: non_vanishing,
        degrees,
        t_claimed: claimed_t(spec),
        t_ambient: pres.t_ambient(),
    })
}

/// Certificates at the claimed bound and at the syzygy bound of a presentation.
#[derive(Clone, Debug)]
pub struct TBoundExperiment {
    pub group: String,
    pub n: usize,
    pub max_degree: u32,
    pub t_claimed: u32,
    pub t_ambient: u32,
    pub at_claimed: PggCertificate,
    pub at_ambient: Option<PggCertificate>,
    pub note: String,
}

impl TBoundExperiment {
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "n": self.n,
            "D": self.max_degree,
            "t_claimed": self.t_claimed,
            "t_ambient": self.t_ambient,
            "verdict_at_claimed": self.at_claimed.verdict.to_string(),
            "verdict_at_ambient": self.at_ambient.as_ref().map(|c| c.verdict.to_string()),
            "certificate_at_claimed": self.at_claimed.to_json(),
            "certificate_at_ambient": self.at_ambient.as_ref().map(PggCertificate::to_json),
            "note": self.note,
        })
    }
}

/// Runs the t-pgg check at the claimed bound and at `max{generator degree, relation degree}`.
pub fn t_bound_experiment<F: Field>(spec: &ClassicalGroupSpec<F>, n: usize, max_degree: u32) -> Result<TBoundExperiment> {
    let pres = build_presentation(spec, n)?;
    let t_claimed = claimed_t(spec);
    let t_ambient = pres.t_ambient().max(1);
    let at_claimed = check_tpgg(&pres, t_claimed, max_degree.max(t_claimed))?;
    let at_ambient = if t_ambient <= max_degree { Some(check_tpgg(&pres, t_ambient, max_degree)?) } else { None };
    let describe = |c: &Option<PggCertificate>| c.as_ref().map_or("not checked".to_string(), |c| c.verdict.to_string());
    let note = match spec.kind() {
        ClassicalKind::O | ClassicalKind::SO => format!(
            "open question: the stated orthogonal bound t = m+2 = {} disagrees with the minor relation degree 2(m+1) = {}; \
             observed {} at t = {} and {} at t = {}; recorded here, not resolved",
            t_claimed,
            2 * (spec.m() + 1),
            at_claimed.verdict,
            t_claimed,
            describe(&at_ambient),
            t_ambient
        ),
        _ => format!(
            "claimed t = {} gives {}; syzygy bound t = {} gives {}",
            t_claimed,
            at_claimed.verdict,
            t_ambient,
            describe(&at_ambient)
        ),
    };
    Ok(TBoundExperiment { group: group_label(spec), n, max_degree, t_claimed, t_ambient, at_claimed, at_ambient, note })
}

/// Presentation of the invariants of a finite group on `n` copies: minimal
/// generators in degrees `≤ |G|` and minimal relations in degrees `≤ 2|G|`,
/// both found degree by degree with linear algebra. Symbols are `f[d,k]`.
pub fn finite_group_presentation<F: Field>(
    group: &FiniteMatrixGroup<F>,
    n: usize,
) -> Result<(GeneratorTable<F>, GradedPresentation<F>)> {
    let action = InducedAction::new(GroupActionSpec::Finite(group.clone()), n)?;
    let order = group.order() as u32;
    let mut entries: Vec<GeneratorEntry<F>> = Vec::new();
    for d in 1..=order {
        let invariants = fixed_space_basis(group, &action, d)?;
        if invariants.is_empty() {
            continue;
        }
        let monos = action.ring().monomials_of_degree(d);
        let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_row = |p: &Polynomial<F>| sparse_from_pairs(p.terms().map(|(m, c)| (index[m], c.clone())));
        let mut span = SparseEchelon::new(monos.len());
        if !entries.is_empty() {
            let partial = GeneratorTable::new(String::new(), action.clone(), entries.clone())?;
            for m in partial.symbol_ring().monomials_of_degree(d) {
                let prod = partial.realize(&Polynomial::term(partial.symbol_ring(), F::one(), m))?;
                span.insert(to_row(&prod));
            }
        }
        let mut k = 0;
        for b in invariants {
            if span.insert(to_row(&b)) {
                k += 1;
                entries.push(GeneratorEntry { name: format!("f[{d},{k}]"), degree: d, realization: b });
            }
        }
    }
    let table = GeneratorTable::new(format!("finite group of order {order}"), action, entries)?;
    let symbols = table.symbol_ring().clone();
    let mut relations: Vec<Polynomial<F>> = Vec::new();
    for d in 1..=2 * order {
        let gens = symbols.monomials_of_degree(d);
        if gens.len() < 2 {
            continue;
        }
        let coords = table.action().ring().monomials_of_degree(d);
        let cindex: HashMap<&Monomial, usize> = coords.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut eval = Matrix::zeros(coords.len(), gens.len());
        for (j, g) in gens.iter().enumerate() {
            let image = table.realize(&Polynomial::term(&symbols, F::one(), g.clone()))?;
            for (m, c) in image.terms() {
                eval[(cindex[m], j)] = c.clone();
            }
        }
        let kernel = eval.nullspace();
        if kernel.is_empty() {
            continue;
        }
        let gindex: HashMap<&Monomial, usize> = gens.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut lower = SparseEchelon::new(gens.len());
        for r in &relations {
            let rd = r.degree().expect("nonzero relation");
            for cof in symbols.monomials_of_degree(d - rd) {
                lower.insert(sparse_from_pairs(r.terms().map(|(m, c)| (gindex[&m.mul(&cof)], c.clone()))));
            }
        }
        for v in kernel {
            let row = sparse_from_pairs(v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()));
            if lower.insert(row) {
                let rel = Polynomial::from_terms(&symbols, v.into_iter().zip(gens.iter().cloned()));
                let negative = rel.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false);
                relations.push(if negative { -rel } else { rel });
            }
        }
    }
    let pres = GradedPresentation::new(symbols, relations, Some(2 * order))?;
    Ok((table, pres))
}
