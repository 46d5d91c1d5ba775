use std::fs;
use std::path::Path;

use invariant_rings::classical::{finite_group_presentation, presentation_json, t_bound_experiment};
use invariant_rings::embed::{maximal_minors, veronese_generation_check};
use invariant_rings::group::{fixed_space_basis, infinitesimal_invariant_basis};
use invariant_rings::{
    build_presentation, check_tpgg, fft_generators, image_equations, min_tpgg, molien_series, plucker_point,
    semistable_test, sft_relations, spec_embedding_data, verify_presentation, ClassicalKind, Error, Field,
    FiniteMatrixGroup, GeneratorTable, GradedPresentation, GroupActionSpec, InducedAction, Matrix, Polynomial,
    Result,
};
use serde_json::{json, Value};

use crate::{Kind, Opts};

/// Result of a successful computation; `refuted` selects exit status 1.
pub struct Outcome {
    pub body: Value,
    pub refuted: bool,
}

impl Outcome {
    fn holds(body: Value) -> Self {
        Outcome { body, refuted: false }
    }
}

/// Field-independent inputs, read and range-checked before any computation.
pub struct Params {
    group: Option<Value>,
    presentation: Option<Value>,
    matrix: Option<Value>,
    m: Option<usize>,
    n: Option<usize>,
    t: Option<u32>,
    max_degree: Option<u32>,
    exponent: Option<u32>,
    dmax: Option<u32>,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn missing(flag: &str, kind: Kind) -> Error {
    Error::Invalid(format!("{} requires --{flag}", kind.name()))
}

impl Params {
    pub fn from_opts(kind: Kind, o: &Opts) -> Result<Self> {
        for (flag, v) in [("m", o.m), ("n", o.n)] {
            if v == Some(0) {
                return Err(Error::Invalid(format!("--{flag} must be at least 1")));
            }
        }
        for (flag, v) in [("t", o.t), ("exponent", o.exponent), ("dmax", o.dmax)] {
            if v == Some(0) {
                return Err(Error::Invalid(format!("--{flag} must be at least 1")));
            }
        }
        if let (Some(t), Some(d)) = (o.t, o.max_degree) {
            if d < t {
                return Err(Error::Invalid(format!("--max-degree {d} is below --t {t}")));
            }
        }
        let group = match &o.group {
            None => None,
            Some(g) if ClassicalKind::parse(g).is_ok() => {
                let m = o.m.ok_or_else(|| missing("m", kind))?;
                Some(json!({ "kind": g, "m": m }))
            }
            Some(g) => Some(read_json(Path::new(g))?),
        };
        let presentation = o.presentation.as_deref().map(read_json).transpose()?;
        let matrix = match &o.matrix {
            None => None,
            Some(s) => Some(match serde_json::from_str(s) {
                Ok(v) => v,
                Err(_) => read_json(Path::new(s))?,
            }),
        };
        let p = Params {
            group,
            presentation,
            matrix,
            m: o.m,
            n: o.n,
            t: o.t,
            max_degree: o.max_degree,
            exponent: o.exponent,
            dmax: o.dmax,
        };
        p.check_required(kind)?;
        Ok(p)
    }

    fn check_required(&self, kind: Kind) -> Result<()> {
        let has_source = self.presentation.is_some() || (self.group.is_some() && self.n.is_some());
        let need = |ok: bool, flag: &str| if ok { Ok(()) } else { Err(missing(flag, kind)) };
        match kind {
            Kind::Fft | Kind::Sft | Kind::Present => {
                need(self.group.is_some(), "group")?;
                need(self.n.is_some(), "n")
            }
            Kind::Verify | Kind::Invariants => {
                need(self.group.is_some(), "group")?;
                need(self.n.is_some(), "n")?;
                need(self.max_degree.is_some(), "max-degree")
            }
            Kind::Molien => {
                need(self.group.is_some(), "group")?;
                need(self.max_degree.is_some(), "max-degree")
            }
            Kind::PggCheck => {
                need(has_source, "presentation (or --group and --n)")?;
                need(self.t.is_some(), "t")?;
                need(self.max_degree.is_some(), "max-degree")
            }
            Kind::PggMin => {
                need(has_source, "presentation (or --group and --n)")?;
                need(self.max_degree.is_some(), "max-degree")
            }
            Kind::Embed | Kind::EmbedSpec => {
                need(has_source, "presentation (or --group and --n)")?;
                need(self.t.is_some(), "t")
            }
            Kind::Semistable | Kind::Plucker => need(self.matrix.is_some(), "matrix"),
        }
    }

    fn group<F: Field>(&self) -> Result<GroupActionSpec<F>> {
        let spec = GroupActionSpec::from_json(self.group.as_ref().expect("checked"))?;
        if let Some(m) = self.m {
            if m != spec.m() {
                return Err(Error::Invalid(format!("--m {m} disagrees with the group's dimension {}", spec.m())));
            }
        }
        Ok(spec)
    }

    fn n(&self) -> usize {
        self.n.expect("checked")
    }

    fn max_degree(&self) -> u32 {
        self.max_degree.expect("checked")
    }

    fn t(&self) -> u32 {
        self.t.expect("checked")
    }

    fn matrix<F: Field>(&self) -> Result<Matrix<F>> {
        let p = Matrix::from_json(self.matrix.as_ref().expect("checked"))?;
        for (flag, want, got) in [("m", self.m, p.rows()), ("n", self.n, p.cols())] {
            if want.is_some_and(|w| w != got) {
                return Err(Error::Invalid(format!("--{flag} disagrees with the matrix shape {}×{}", p.rows(), p.cols())));
            }
        }
        Ok(p)
    }
}

fn finite_label<F: Field>(g: &FiniteMatrixGroup<F>) -> String {
    format!("finite(order {}, m {})", g.order(), g.m())
}

fn table_and_presentation<F: Field>(params: &Params) -> Result<(GeneratorTable<F>, GradedPresentation<F>)> {
    match params.group::<F>()? {
        GroupActionSpec::Classical(spec) => {
            let table = fft_generators(&spec, params.n())?;
            let p = build_presentation(&spec, params.n())?;
            Ok((table, p))
        }
        GroupActionSpec::Finite(g) => finite_group_presentation(&g, params.n()),
    }
}

fn presentation<F: Field>(params: &Params) -> Result<GradedPresentation<F>> {
    match &params.presentation {
        Some(v) => GradedPresentation::from_json(v),
        None => Ok(table_and_presentation::<F>(params)?.1),
    }
}

fn polys<F: Field>(ps: &[Polynomial<F>]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

/// `n` diagonal copies of each element.
fn diagonal<F: Field>(g: &FiniteMatrixGroup<F>, n: usize) -> Result<FiniteMatrixGroup<F>> {
    let m = g.m();
    let blocks = g
        .elements()
        .iter()
        .map(|e| Matrix::from_fn(m * n, m * n, |i, j| if i / m == j / m { e[(i % m, j % m)].clone() } else { F::zero() }))
        .collect();
    FiniteMatrixGroup::new(blocks)
}

/// The common generator degree when there is one, otherwise `(t+1)!`.
fn default_exponent<F: Field>(p: &GradedPresentation<F>, t: u32) -> Result<u32> {
    let degrees = p.generator_degrees();
    if let Some(&g) = degrees.first() {
        if degrees.iter().all(|&d| d == g) {
            return Ok(g);
        }
    }
    factorial_exponent(t)
}

/// `(t+1)!`.
fn factorial_exponent(t: u32) -> Result<u32> {
    (2..=t + 1).try_fold(1u32, |acc, k| acc.checked_mul(k)).ok_or_else(|| Error::Invalid("(t+1)! overflows".into()))
}

pub fn run<F: Field>(kind: Kind, params: &Params) -> Result<Outcome> {
    match kind {
        Kind::Fft => {
            let (table, _) = table_and_presentation::<F>(params)?;
            Ok(Outcome::holds(table.to_json()))
        }
        Kind::Sft => {
            let (table, p) = table_and_presentation::<F>(params)?;
            let relations = match params.group::<F>()? {
                GroupActionSpec::Classical(spec) => sft_relations(&spec, params.n())?,
                GroupActionSpec::Finite(_) => p.relations().to_vec(),
            };
            let label = table.label().to_string();
            Ok(Outcome::holds(json!({
                "group": label,
                "n": params.n(),
                "relations": relations.iter()
                    .map(|r| json!({"degree": r.degree().unwrap_or(0), "form": r.to_string()}))
                    .collect::<Vec<_>>(),
            })))
        }
        Kind::Present => {
            let (table, p) = table_and_presentation::<F>(params)?;
            let mut body = presentation_json(&table, &p);
            body["group"] = json!(table.label());
            body["n"] = json!(params.n());
            Ok(Outcome::holds(body))
        }
        Kind::Verify => {
            let GroupActionSpec::Classical(spec) = params.group::<F>()? else {
                return Err(Error::Invalid("verify needs a classical group".into()));
            };
            let report = verify_presentation(&spec, params.n(), params.max_degree())?;
            let mut body = report.to_json();
            body["t_bound_experiment"] = match spec.kind() {
                ClassicalKind::O | ClassicalKind::SO => t_bound_experiment(&spec, params.n(), params.max_degree())?.to_json(),
                _ => Value::Null,
            };
            Ok(Outcome { refuted: !report.passed(), body })
        }
        Kind::Invariants => {
            let spec = params.group::<F>()?;
            let action = InducedAction::new(spec.clone(), params.n())?;
            let (label, method) = match &spec {
                GroupActionSpec::Finite(g) => (finite_label(g), "reynolds"),
                GroupActionSpec::Classical(c) => (invariant_rings::classical::group_label(c), "lie-algebra"),
            };
            let mut degrees = Vec::new();
            for d in 0..=params.max_degree() {
                let basis = match &spec {
                    GroupActionSpec::Finite(g) => fixed_space_basis(g, &action, d)?,
                    GroupActionSpec::Classical(c) => infinitesimal_invariant_basis(c, &action, d)?,
                };
                degrees.push(json!({"d": d, "dim": basis.len(), "basis": polys(&basis)}));
            }
            Ok(Outcome::holds(json!({
                "group": label,
                "m": spec.m(),
                "n": params.n(),
                "D": params.max_degree(),
                "method": method,
                "degrees": degrees,
            })))
        }
        Kind::Molien => {
            let GroupActionSpec::Finite(g) = params.group::<F>()? else {
                return Err(Error::Invalid("molien needs a finite group".into()));
            };
            let n = params.n.unwrap_or(1);
            let series = molien_series(&diagonal(&g, n)?, params.max_degree() as usize)?;
            Ok(Outcome::holds(json!({
                "group": finite_label(&g),
                "order": g.order(),
                "m": g.m(),
                "n": n,
                "D": params.max_degree(),
                "series": series,
            })))
        }
        Kind::PggCheck => {
            let p = presentation::<F>(params)?;
            let cert = check_tpgg(&p, params.t(), params.max_degree())?;
            let mut body = cert.to_json();
            body["presentation"] = p.to_json();
            Ok(Outcome { refuted: !cert.is_certified(), body })
        }
        Kind::PggMin => {
            let p = presentation::<F>(params)?;
            let min = min_tpgg(&p, params.max_degree())?;
            let mut body = min.to_json();
            body["presentation"] = p.to_json();
            Ok(Outcome { refuted: min.t().is_none(), body })
        }
        Kind::Embed => {
            let p = presentation::<F>(params)?;
            let t = params.t();
            let e = params.exponent.map_or_else(|| default_exponent(&p, t), Ok)?;
            let dmax = params.dmax.unwrap_or((t + 1).max(2));
            let veronese = veronese_generation_check(&p, t, e, dmax)?;
            let chart = match image_equations(&p, t, e, dmax) {
                Ok(chart) => chart.to_json(),
                Err(Error::Generation(_)) => Value::Null,
                Err(other) => return Err(other),
            };
            Ok(Outcome {
                refuted: chart.is_null(),
                body: json!({ "veronese": veronese, "chart": chart }),
            })
        }
        Kind::EmbedSpec => {
            let p = presentation::<F>(params)?;
            let t = params.t();
            let e = params.exponent.map_or_else(|| factorial_exponent(t), Ok)?;
            match spec_embedding_data(&p, t, e) {
                Ok(chart) => Ok(Outcome::holds(json!({ "chart": chart.to_json(), "detail": null }))),
                Err(Error::Generation(why)) => {
                    Ok(Outcome { refuted: true, body: json!({ "chart": null, "detail": why }) })
                }
                Err(other) => Err(other),
            }
        }
        Kind::Semistable => {
            let p = params.matrix::<F>()?;
            let report = semistable_test(p.rows(), p.cols(), &p)?;
            Ok(Outcome { refuted: !report.semistable, body: report.to_json() })
        }
        Kind::Plucker => {
            let p = params.matrix::<F>()?;
            let (m, n) = (p.rows(), p.cols());
            let head = json!({ "m": m, "n": n, "matrix": p.to_json() });
            let mut body = head;
            match plucker_point(m, n, &p) {
                Ok(point) => {
                    let columns = maximal_minors(&p)?.into_iter().map(|(j, _)| j.iter().map(|c| c + 1).collect::<Vec<_>>());
                    body["verdict"] = json!("semistable");
                    body["coordinates"] = columns
                        .zip(point)
                        .map(|(cols, v)| json!({"columns": cols, "value": v.to_string()}))
                        .collect();
                    Ok(Outcome::holds(body))
                }
                Err(Error::Unstable(_)) => {
                    body["verdict"] = json!("unstable");
                    body["coordinates"] = Value::Null;
                    Ok(Outcome { refuted: true, body })
                }
                Err(other) => Err(other),
            }
        }
    }
}
