//! Veronese coordinates, image equations, and semistability of points.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseEchelon, SparseVec};
use crate::pgg::{algebra_pieces, tensor_presentation, GradedPieceBasis, GradedPresentation, SymPiece};
use crate::poly::{Monomial, Polynomial, PolynomialRing};

/// Exponents `e ≤ cap` of the form `n·m` with `n ≥ t` and `m` a multiple of
/// `lcm(1..=t)`; these are exactly the multiples `L·j` with `j ≥ t`.
pub fn admissible_exponents(t: u32, cap: u64) -> Vec<u64> {
    let l = (1..=t as u64).fold(1u64, |acc, k| acc.lcm(&k));
    (t.max(1) as u64..).map(|j| l * j).take_while(|&e| e <= cap).collect()
}

/// Largest dense matrix built for a single power.
const MAX_DENSE_CELLS: usize = 20_000_000;

/// Degree-`e` coordinates of the truncated symmetric algebra and their images in `A_e`.
struct Coordinates<F: Field> {
    pieces: Vec<Arc<GradedPieceBasis<F>>>,
    sym: SymPiece,
    representatives: Vec<Monomial>,
    images: Vec<SparseVec<F>>,
    basic: Vec<usize>,
}

impl<F: Field> Coordinates<F> {
    fn new(p: &GradedPresentation<F>, t: u32, e: u32, top: u32) -> Result<Self> {
        if t == 0 || e == 0 {
            return Err(Error::Invalid("t and e must be positive".into()));
        }
        let pieces = algebra_pieces(p, e * top.max(1));
        let sym = SymPiece::new(&pieces, t, e);
        let representatives: Vec<Monomial> = (0..sym.dim()).map(|k| sym.representative(&pieces, p.ring(), k)).collect();
        let target = &pieces[e as usize];
        let images: Vec<SparseVec<F>> =
            representatives.iter().map(|m| target.reduce_monomial(m).expect("degree e").clone()).collect();
        let mut ech = SparseEchelon::new(target.dim());
        let basic = (0..images.len()).filter(|&k| ech.insert(images[k].clone())).collect();
        Ok(Coordinates { pieces, sym, representatives, images, basic })
    }

    /// Columns: products of `k` basic coordinates, reduced in `A_{k e}`.
    fn power_columns(&self, k: usize) -> Result<(Vec<Vec<usize>>, Matrix<F>)> {
        let target = &self.pieces[k * self.sym.degree() as usize];
        let combos: Vec<Vec<usize>> = self.basic.iter().copied().combinations_with_replacement(k).collect();
        if target.dim().saturating_mul(combos.len()) > MAX_DENSE_CELLS {
            return Err(Error::Invalid(format!(
                "products of {k} coordinates give a {}×{} matrix; lower the exponent or the degree bound",
                target.dim(),
                combos.len()
            )));
        }
        let mut m = Matrix::zeros(target.dim(), combos.len());
        for (j, c) in combos.iter().enumerate() {
            let mono = c.iter().skip(1).fold(self.representatives[c[0]].clone(), |acc, &i| acc.mul(&self.representatives[i]));
            for (i, x) in target.reduce_monomial(&mono).expect("degree k e") {
                m[(*i, j)] = x.clone();
            }
        }
        Ok((combos, m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCheck {
    pub n: u32,
    pub dim_target: usize,
    pub rank: usize,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeroneseReport {
    pub t: u32,
    pub e: u32,
    pub admissible: bool,
    pub powers: Vec<PowerCheck>,
    pub first_failure: Option<u32>,
}

impl VeroneseReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks that products of `n` degree-`e` coordinates span `A_{n e}` for `1 ≤ n ≤ max_power`.
pub fn veronese_generation_check<F: Field>(p: &GradedPresentation<F>, t: u32, e: u32, max_power: u32) -> Result<VeroneseReport> {
    let coords = Coordinates::new(p, t, e, max_power)?;
    let mut powers = Vec::new();
    let mut first_failure = None;
    for n in 1..=max_power {
        let (_, m) = coords.power_columns(n as usize)?;
        let rank = m.rank();
        let surjective = rank == m.rows();
        if !surjective && first_failure.is_none() {
            first_failure = Some(n);
        }
        powers.push(PowerCheck { n, dim_target: m.rows(), rank, surjective });
    }
    Ok(VeroneseReport {
        t,
        e,
        admissible: admissible_exponents(t, e as u64).contains(&(e as u64)),
        powers,
        first_failure,
    })
}

/// Coordinates of the degree-`e` Veronese chart and equations of the image.
///
/// Coordinate `z_k` is the `k`-th element of the degree-`e` piece of the
/// truncated symmetric algebra. Linear equations span the kernel of the
/// coordinate map; in degrees `2..=dmax` the equations span the kernel on
/// products of the basic coordinates (a maximal subset with independent
/// images), which together with the linear equations generate the same
/// ideal as the full kernel.
#[derive(Clone, Debug)]
pub struct EmbeddingChart<F: Field> {
    presentation: GradedPresentation<F>,
    t: u32,
    e: u32,
    dmax: u32,
    coordinates: Vec<String>,
    coordinate_ring: Arc<PolynomialRing>,
    representatives: Vec<Monomial>,
    basic: Vec<usize>,
    equations: Vec<Polynomial<F>>,
    pieces: Vec<Arc<GradedPieceBasis<F>>>,
}

impl<F: Field> EmbeddingChart<F> {
    pub fn presentation(&self) -> &GradedPresentation<F> {
        &self.presentation
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn coordinate_ring(&self) -> &Arc<PolynomialRing> {
        &self.coordinate_ring
    }

    pub fn basic_coordinates(&self) -> &[usize] {
        &self.basic
    }

    pub fn equations(&self) -> &[Polynomial<F>] {
        &self.equations
    }

    pub fn equations_of_degree(&self, k: u32) -> usize {
        self.equations.iter().filter(|q| q.degree() == Some(k)).count()
    }

    /// Substitutes coordinate representatives into `form` and reduces in `A`.
    pub fn pullback_is_zero(&self, form: &Polynomial<F>) -> Result<bool> {
        let ring = self.presentation.ring();
        let images: Vec<Polynomial<F>> =
            self.representatives.iter().map(|m| Polynomial::term(ring, F::one(), m.clone())).collect();
        let pulled = form.substitute(ring, &images)?;
        for (d, part) in pulled.homogeneous_components() {
            let piece = match self.pieces.get(d as usize) {
                Some(p) => p.clone(),
                None => Arc::new(crate::pgg::algebra_piece(&self.presentation, d)),
            };
            if !piece.reduce(&part)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every equation maps to zero in `A`.
    pub fn verify(&self) -> Result<bool> {
        for q in &self.equations {
            if !self.pullback_is_zero(q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "t": self.t,
            "e": self.e,
            "dmax": self.dmax,
            "coordinates": self.coordinates,
            "basic_coordinates": self.basic.iter().map(|&k| self.coordinate_ring.names()[k].clone()).collect::<Vec<_>>(),
            "equations": self.equations.iter()
                .map(|q| json!({"degree": q.degree().unwrap_or(0), "form": q.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Degree-`e` Veronese chart with image equations of degree `≤ dmax`.
pub fn image_equations<F: Field>(p: &GradedPresentation<F>, t: u32, e: u32, dmax: u32) -> Result<EmbeddingChart<F>> {
    if dmax == 0 {
        return Err(Error::Invalid("dmax must be positive".into()));
    }
    let check = veronese_generation_check(p, t, e, dmax)?;
    if let Some(n) = check.first_failure {
        return Err(Error::Generation(format!("degree-{e} coordinates do not generate A_{} (power {n})", n * e)));
    }
    let coords = Coordinates::new(p, t, e, dmax)?;
    let ncoords = coords.sym.dim();
    let coordinate_ring = PolynomialRing::standard((0..ncoords).map(|k| format!("z{k}")))?;
    let mut equations = Vec::new();
    let dim_e = coords.pieces[e as usize].dim();
    let mut linear = Matrix::zeros(dim_e, ncoords);
    for (j, col) in coords.images.iter().enumerate() {
        for (i, x) in col {
            linear[(*i, j)] = x.clone();
        }
    }
    for v in linear.nullspace() {
        equations.push(Polynomial::from_terms(
            &coordinate_ring,
            v.into_iter().enumerate().map(|(k, c)| (c, coordinate_ring.var_monomial(k))),
        ));
    }
    for k in 2..=dmax as usize {
        let (combos, m) = coords.power_columns(k)?;
        let monos: Vec<Monomial> = combos
            .iter()
            .map(|c| {
                let mut exps = vec![0u32; ncoords];
                for &i in c {
                    exps[i] += 1;
                }
                coordinate_ring.monomial(exps)
            })
            .collect();
        for v in m.nullspace() {
            equations.push(Polynomial::from_terms(&coordinate_ring, v.into_iter().zip(monos.iter().cloned())));
        }
    }
    let coordinates = (0..ncoords).map(|k| coords.sym.describe(&coords.pieces, p.ring(), k)).collect();
    Ok(EmbeddingChart {
        presentation: p.clone(),
        t,
        e,
        dmax,
        coordinates,
        coordinate_ring,
        representatives: coords.representatives,
        basic: coords.basic,
        equations,
        pieces: coords.pieces,
    })
}

/// Chart of the affine variety through the homogenising variable `T` of degree 1;
/// closure equations go up to degree `max{t + 1, 2}`.
pub fn spec_embedding_data<F: Field>(p: &GradedPresentation<F>, t: u32, e: u32) -> Result<EmbeddingChart<F>> {
    let line = GradedPresentation::free(&[("T", 1)])?;
    let augmented = tensor_presentation(p, &line)?;
    image_equations(&augmented, t, e, (t + 1).max(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistabilityReport<F: Field> {
    pub m: usize,
    pub n: usize,
    pub matrix: Matrix<F>,
    pub rank: usize,
    /// Column sets (1-based) whose maximal minor is nonzero.
    pub witnesses: Vec<Vec<usize>>,
    pub semistable: bool,
}

impl<F: Field> SemistabilityReport<F> {
    pub fn verdict(&self) -> &'static str {
        if self.semistable {
            "semistable"
        } else {
            "unstable"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "n": self.n,
            "matrix": self.matrix.to_json(),
            "rank": self.rank,
            "witnesses": self.witnesses,
            "verdict": self.verdict(),
        })
    }
}

/// Maximal minors `d_J(p)` for `J` increasing in lexicographic order.
pub fn maximal_minors<F: Field>(p: &Matrix<F>) -> Result<Vec<(Vec<usize>, F)>> {
    let (m, n) = (p.rows(), p.cols());
    let rows: Vec<usize> = (0..m).collect();
    (0..n).combinations(m).map(|j| Ok((j.clone(), p.select(&rows, &j).det()?))).collect()
}

fn check_shape<F: Field>(m: usize, n: usize, p: &Matrix<F>) -> Result<()> {
    if p.rows() != m || p.cols() != n {
        return Err(Error::Dimension(format!("expected a {m}×{n} matrix, got {}×{}", p.rows(), p.cols())));
    }
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    Ok(())
}

/// Semistable iff the rank is `m`, equivalently some maximal minor is nonzero.
pub fn semistable_test<F: Field>(m: usize, n: usize, p: &Matrix<F>) -> Result<SemistabilityReport<F>> {
    check_shape(m, n, p)?;
    let rank = p.rank();
    let witnesses: Vec<Vec<usize>> = maximal_minors(p)?
        .into_iter()
        .filter(|(_, d)| !d.is_zero())
        .map(|(j, _)| j.into_iter().map(|c| c + 1).collect())
        .collect();
    let semistable = rank == m;
    if semistable == witnesses.is_empty() {
        return Err(Error::Invalid("rank and minor criteria disagree".into()));
    }
    Ok(SemistabilityReport { m, n, matrix: p.clone(), rank, witnesses, semistable })
}

/// Plücker coordinates of the row space of a semistable `m×n` matrix.
pub fn plucker_point<F: Field>(m: usize, n: usize, p: &Matrix<F>) -> Result<Vec<F>> {
    let report = semistable_test(m, n, p)?;
    if !report.semistable {
        return Err(Error::Unstable(format!("rank {} < {m}", report.rank)));
    }
    Ok(maximal_minors(p)?.into_iter().map(|(_, d)| d).collect())
}

/// `m`-th compound matrix: entry `(K, J)` is the minor of `h` on rows `K`, columns `J`.
pub fn compound_matrix<F: Field>(h: &Matrix<F>, m: usize) -> Result<Matrix<F>> {
    let subsets: Vec<Vec<usize>> = (0..h.rows()).combinations(m).collect();
    let cols: Vec<Vec<usize>> = (0..h.cols()).combinations(m).collect();
    let mut out = Matrix::zeros(subsets.len(), cols.len());
    for (a, k) in subsets.iter().enumerate() {
        for (b, j) in cols.iter().enumerate() {
            out[(a, b)] = h.select(k, j).det()?;
        }
    }
    Ok(out)
}

/// Whether two nonzero vectors are proportional.
pub fn projectively_equal<F: Field>(a: &[F], b: &[F]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[k].is_zero() {
        return false;
    }
    let ratio = b[k].clone() * a[k].inv().expect("nonzero");
    a.iter().zip(b).all(|(x, y)| x.clone() * &ratio == *y)
}

/// Map from coordinate names to indices, for callers building forms by hand.
pub fn coordinate_index<F: Field>(chart: &EmbeddingChart<F>) -> HashMap<String, usize> {
    chart.coordinate_ring().names().iter().cloned().enumerate().map(|(i, n)| (n, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{fft_generators, sft_relations};
    use crate::field::Q;
    use crate::group::ClassicalGroupSpec;
    use crate::pgg::{algebra_piece, sym_dimension_formula};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(rows)
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible_exponents(1, 6), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(admissible_exponents(2, 12), vec![4, 6, 8, 10, 12]);
        assert_eq!(admissible_exponents(3, 30), vec![18, 24, 30]);
        for t in 1..=4u32 {
            let fact: u64 = (1..=(t as u64 + 1)).product();
            assert!(admissible_exponents(t, fact).contains(&fact));
        }
    }

    #[test]
    fn admissible_matches_brute_force() {
        for t in 1..=4u32 {
            let l = (1..=t as u64).fold(1, |a, k| a.lcm(&k));
            let mut brute: Vec<u64> = Vec::new();
            for n in t as u64..=200 {
                for mult in 1..=200 {
                    let e = n * l * mult;
                    if e <= 200 && !brute.contains(&e) {
                        brute.push(e);
                    }
                }
            }
            brute.sort();
            assert_eq!(admissible_exponents(t, 200), brute);
        }
    }

    #[test]
    fn veronese_line() {
        let line = P::free(&[("x", 1)]).unwrap();
        assert!(veronese_generation_check(&line, 1, 2, 4).unwrap().passed());
    }

    #[test]
    fn veronese_weighted_plane() {
        let p = P::free(&[("x", 1), ("y", 2)]).unwrap();
        assert!(veronese_generation_check(&p, 2, 6, 3).unwrap().passed());
        assert!(veronese_generation_check(&p, 2, 4, 3).unwrap().passed());
        let bad = veronese_generation_check(&p, 2, 5, 3).unwrap();
        assert_eq!(bad.first_failure, Some(2));
        assert!(!bad.admissible);
    }

    #[test]
    fn veronese_grassmannian_equal_degrees() {
        assert!(veronese_generation_check(&gr24(), 4, 2, 5).unwrap().passed());
    }

    #[test]
    fn line_chart_is_a_point() {
        let line = P::free(&[("x", 1)]).unwrap();
        let c = image_equations(&line, 1, 2, 2).unwrap();
        assert_eq!(c.coordinates().len(), 1);
        assert!(c.equations().is_empty());
    }

    #[test]
    fn grassmannian_chart_is_one_quadric() {
        let c = image_equations(&gr24(), 4, 2, 2).unwrap();
        assert_eq!(c.coordinates().len(), 6);
        assert_eq!(c.equations().len(), 1);
        assert_eq!(c.equations_of_degree(2), 1);
        assert!(c.verify().unwrap());
    }

    #[test]
    fn circle_chart_bookkeeping() {
        let p = circle();
        let c = image_equations(&p, 2, 4, 2).unwrap();
        let dims: Vec<usize> = algebra_pieces(&p, 8).iter().map(|a| a.dim()).collect();
        assert_eq!(c.coordinates().len() as u128, sym_dimension_formula(&dims, 2, 4));
        assert_eq!(c.coordinates().len(), 14);
        let basic = c.basic_coordinates().len();
        assert_eq!(basic, algebra_piece(&p, 4).dim());
        assert_eq!(c.equations_of_degree(1), 14 - basic);
        assert_eq!(c.equations_of_degree(2), basic * (basic + 1) / 2 - algebra_piece(&p, 8).dim());
        assert!(c.verify().unwrap());
    }

    /// Degree-2 piece of the ideal generated by the chart equations has the
    /// dimension of the full kernel `S^2(coords) → A_{2e}`.
    #[test]
    fn chart_equations_generate_full_quadratic_kernel() {
        for (p, t, e) in [(circle(), 2u32, 4u32), (P::free(&[("x", 1), ("y", 2)]).unwrap(), 2, 4), (gr24(), 4, 2)] {
            let c = image_equations(&p, t, e, 2).unwrap();
            let ring = c.coordinate_ring();
            let quad = ring.monomials_of_degree(2);
            let index: HashMap<&Monomial, usize> = quad.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ech = SparseEchelon::new(quad.len());
            for q in c.equations() {
                let multipliers = if q.degree() == Some(1) { ring.monomials_of_degree(1) } else { vec![ring.one_monomial()] };
                for mul in multipliers {
                    let prod = q.mul_monomial(&mul);
                    ech.insert(crate::linalg::sparse_from_pairs(prod.terms().map(|(m, x)| (index[m], x.clone()))));
                }
            }
            let dim_a = algebra_piece(&p, 2 * e).dim();
            assert_eq!(ech.rank(), quad.len() - dim_a);
        }
    }

    #[test]
    fn spec_chart_of_the_line_is_a_conic() {
        let line = P::free(&[("x", 1)]).unwrap();
        let c = spec_embedding_data(&line, 1, 2).unwrap();
        assert_eq!(c.coordinates(), ["[T]*[T]", "[T]*[x]", "[x]*[x]"]);
        assert_eq!(c.equations().len(), 1);
        assert_eq!(c.equations()[0].degree(), Some(2));
        assert!(c.verify().unwrap());
    }

    #[test]
    fn spec_chart_of_a_point() {
        let point = P::free(&[]).unwrap();
        let c = spec_embedding_data(&point, 1, 2).unwrap();
        assert_eq!(c.coordinates().len(), 1);
        assert!(c.equations().is_empty());
    }

    #[test]
    fn spec_chart_of_the_circle() {
        let c = spec_embedding_data(&circle(), 2, 6).unwrap();
        assert_eq!(c.dmax(), 3);
        assert!(c.equations().iter().all(|q| q.degree().unwrap() <= 3));
        assert!(c.verify().unwrap());
    }

    #[test]
    fn inadmissible_exponent_is_rejected() {
        let p = P::free(&[("x", 1), ("y", 2)]).unwrap();
        assert!(matches!(image_equations(&p, 2, 5, 2), Err(Error::Generation(_))));
    }

    #[test]
    fn semistability_examples() {
        let r = semistable_test(2, 3, &q(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert!(r.semistable);
        assert_eq!(r.witnesses, vec![vec![1, 2]]);
        let r = semistable_test(2, 3, &q(&[&[1, 2, 3], &[2, 4, 6]])).unwrap();
        assert!(!r.semistable);
        assert_eq!((r.rank, r.witnesses.len()), (1, 0));
        assert!(semistable_test(2, 3, &q(&[&[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn exhaustive_small_matrices() {
        let mut count = 0;
        for code in 0..729u32 {
            let mut c = code;
            let entries: Vec<i64> = (0..6)
                .map(|_| {
                    let v = (c % 3) as i64 - 1;
                    c /= 3;
                    v
                })
                .collect();
            let p = q(&[&entries[0..3], &entries[3..6]]);
            let r = semistable_test(2, 3, &p).unwrap();
            assert_eq!(r.semistable, !r.witnesses.is_empty());
            count += 1;
        }
        assert_eq!(count, 729);
    }

    #[test]
    fn plucker_examples() {
        let p = plucker_point(2, 4, &q(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        assert_eq!(p, [1, 0, 0, 0, 0, 0].map(|v| Q::from_i64(v)));
        let p = plucker_point(2, 4, &q(&[&[1, 0, 1, 0], &[0, 1, 0, 1]])).unwrap();
        assert_eq!(p, [1, 0, 1, -1, 0, 1].map(|v| Q::from_i64(v)));
        assert!(matches!(plucker_point(2, 4, &q(&[&[1, 2, 3, 4], &[2, 4, 6, 8]])), Err(Error::Unstable(_))));
    }

    #[test]
    fn random_plucker_points_satisfy_quadrics() {
        let spec = ClassicalGroupSpec::<Q>::sl(2);
        let rels = sft_relations(&spec, 4).unwrap();
        assert_eq!(fft_generators(&spec, 4).unwrap().symbol_ring().nvars(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let p = Matrix::from_fn(2, 4, |_, _| Q::new(rng.gen_range(-9..10), rng.gen_range(1..6)));
            if let Ok(pt) = plucker_point(2, 4, &p) {
                for r in &rels {
                    assert!(r.evaluate(&pt).is_zero());
                }
            }
        }
    }

    #[test]
    fn column_action_is_the_compound_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = q(&[&[1, 2, 0, -1], &[0, 1, 3, 1]]);
        let base = plucker_point(2, 4, &p).unwrap();
        for _ in 0..10 {
            let h = Matrix::from_fn(4, 4, |_, _| Q::from_i64(rng.gen_range(-3..4)));
            let moved = p.mul(&h).unwrap();
            let c = compound_matrix(&h, 2).unwrap();
            let expected = c.transpose().mul_vec(&base).unwrap();
            let got = maximal_minors(&moved).unwrap().into_iter().map(|(_, d)| d).collect::<Vec<_>>();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn projective_equality() {
        let a = [Q::from_i64(1), Q::from_i64(2)];
        let b = [Q::from_i64(-3), Q::from_i64(-6)];
        assert!(projectively_equal(&a, &b));
        assert!(!projectively_equal(&a, &[Q::from_i64(1), Q::from_i64(3)]));
        assert!(!projectively_equal(&[Q::zero(), Q::zero()], &[Q::zero(), Q::zero()]));
    }
}
