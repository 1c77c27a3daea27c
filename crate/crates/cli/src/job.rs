//! Orchestration: build the algebra, the relative window and the spectral
//! sequence, run the requested reports and render them.

use std::fmt::Write;
use std::str::FromStr;

use thiserror::Error;
use trispec_core::algebra::{Bimodule, TBimodule, TriangularAlgebra};
use trispec_core::hochcomplex::{
    build_bar_complex, build_relative_complex, reliable_cohomology, CochainWindow,
};
use trispec_core::quiver::{compute_levels, incidence_algebra, path_algebra};
use trispec_core::spectral::{
    check_d1_against_cup, check_degeneration_a2k, e1_structure_report, SpectralSequence,
};
use trispec_core::{Error, Field, PrimeField, Rationals};

use crate::input::{
    detect_kind, parse_quiver_file, parse_simplicial_file, parse_triangular_file, InputKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "rat" {
            return Ok(FieldChoice::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .ok_or_else(|| format!("expected `rat` or `fp:<p>`, got `{s}`"))?;
        p.parse()
            .map(FieldChoice::Prime)
            .map_err(|_| format!("bad prime `{p}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Report {
    Pages,
    Hochschild,
    E1Structure,
    OracleCheck,
    DegenerationCheck,
}

impl FromStr for Report {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pages" => Ok(Report::Pages),
            "hochschild" => Ok(Report::Hochschild),
            "e1-structure" => Ok(Report::E1Structure),
            "oracle-check" => Ok(Report::OracleCheck),
            "degeneration-check" => Ok(Report::DegenerationCheck),
            other => Err(format!("unknown report `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Table,
    Tsv,
}

impl FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Emit::Table),
            "tsv" => Ok(Emit::Tsv),
            other => Err(format!("unknown output format `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    /// `None` detects the kind from the first keyword.
    pub kind: Option<InputKind>,
    pub field: FieldChoice,
    /// Degrees `0 .. max_degree` are reported.
    pub max_degree: usize,
    pub reports: Vec<Report>,
    pub emit: Emit,
    pub oracle_budget: u64,
}

impl Default for JobSpec {
    fn default() -> Self {
        JobSpec {
            kind: None,
            field: FieldChoice::Rationals,
            max_degree: 4,
            reports: vec![Report::Hochschild],
            emit: Emit::Table,
            oracle_budget: trispec_core::hochcomplex::DEFAULT_ORACLE_BUDGET,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JobError {
    #[error("{0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl JobError {
    pub fn exit_code(&self) -> u8 {
        match self {
            JobError::Input(_) => 1,
            JobError::Invariant(_) => 2,
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(msg) => JobError::Invariant(msg),
            other => JobError::Input(other.to_string()),
        }
    }
}

/// Rendered output, and whether some check disagreed with its oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOutput {
    pub text: String,
    pub mismatch: bool,
}

impl JobOutput {
    pub fn exit_code(&self) -> u8 {
        if self.mismatch {
            3
        } else {
            0
        }
    }
}

pub fn load_algebra(kind: Option<InputKind>, text: &str) -> Result<TriangularAlgebra, JobError> {
    let kind = kind
        .or_else(|| detect_kind(text))
        .ok_or_else(|| JobError::Input("cannot tell the input format; pass --kind".into()))?;
    let input = |e: crate::input::ParseError| JobError::Input(e.to_string());
    Ok(match kind {
        InputKind::Quiver => {
            let q = parse_quiver_file(text).map_err(input)?;
            path_algebra(&q, &compute_levels(&q)?)?
        }
        InputKind::Triangular => parse_triangular_file(text).map_err(input)?,
        InputKind::Simplicial => incidence_algebra(&parse_simplicial_file(text).map_err(input)?)?,
    })
}

pub fn run_job(spec: &JobSpec, text: &str) -> Result<JobOutput, JobError> {
    if spec.max_degree < 1 {
        return Err(JobError::Input("--max-degree must be at least 1".into()));
    }
    let t = load_algebra(spec.kind, text)?;
    match spec.field {
        FieldChoice::Rationals => run_with(&Rationals, &t, spec),
        FieldChoice::Prime(p) => run_with(&PrimeField::new(p)?, &t, spec),
    }
}

/// Collects lines in either format.
struct Sink {
    emit: Emit,
    text: String,
}

impl Sink {
    fn line(&mut self, s: impl AsRef<str>) {
        if self.emit == Emit::Table {
            self.text.push_str(s.as_ref());
            self.text.push('\n');
        }
    }

    fn row(
        &mut self,
        report: &str,
        r: impl ToString,
        p: impl ToString,
        q: impl ToString,
        value: impl ToString,
    ) {
        if self.emit == Emit::Tsv {
            writeln!(
                self.text,
                "{report}\t{}\t{}\t{}\t{}",
                r.to_string(),
                p.to_string(),
                q.to_string(),
                value.to_string()
            )
            .unwrap();
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_with<F: Field>(
    field: &F,
    t: &TriangularAlgebra,
    spec: &JobSpec,
) -> Result<JobOutput, JobError> {
    let cutoff = spec.max_degree - 1;
    let x = TBimodule::regular(t);
    let w = build_relative_complex(field, t, &x, cutoff)?;
    w.check_d_squared(field)?;
    w.check_filtration()?;
    let hh = reliable_cohomology(field, &w);
    let needs_pages = spec.reports.iter().any(|r| *r != Report::Hochschild);
    let seq = if needs_pages {
        let seq = SpectralSequence::compute(field, &w)?;
        seq.check_d_squared(field)?;
        seq.check_recurrence(field)?;
        Some(seq)
    } else {
        None
    };

    let mut sink = Sink {
        emit: spec.emit,
        text: String::new(),
    };
    let mut mismatch = false;
    let mut first = true;
    for report in &spec.reports {
        if !first {
            sink.line("");
        }
        first = false;
        match report {
            Report::Hochschild => {
                sink.line(format!("HH: {}", join(&hh)));
                for (l, d) in hh.iter().enumerate() {
                    sink.row("hochschild", "-", "-", l, d);
                }
            }
            Report::Pages => pages(&mut sink, seq.as_ref().expect("computed")),
            Report::E1Structure => {
                mismatch |= e1(&mut sink, field, t, &x, seq.as_ref().expect("computed"))?
            }
            Report::OracleCheck => {
                mismatch |= oracle(
                    &mut sink,
                    field,
                    t,
                    &x,
                    &w,
                    seq.as_ref().expect("computed"),
                    &hh,
                    spec,
                )?
            }
            Report::DegenerationCheck => {
                mismatch |= degeneration(&mut sink, field, t, &w, seq.as_ref().expect("computed"))?
            }
        }
    }
    Ok(JobOutput {
        text: sink.text,
        mismatch,
    })
}

/// Pages `E_0 ..` up to the first one after which nothing changes.
fn pages<E: Clone + PartialEq + Send + Sync>(sink: &mut Sink, seq: &SpectralSequence<E>) {
    let n = seq.columns();
    let cutoff = seq.cutoff();
    let dims = |r: usize| -> Vec<Option<usize>> {
        (0..=cutoff)
            .flat_map(|l| (0..n).map(move |p| (p, l)))
            .map(|(p, l)| seq.page(r).dim(p, l))
            .collect()
    };
    let last = (0..=n)
        .find(|&r| (r..=n).all(|s| dims(s) == dims(n)))
        .unwrap_or(n);
    for r in 0..=last {
        let page = seq.page(r);
        let suffix = if r == last { " = E_inf" } else { "" };
        sink.line(format!("E_{r}{suffix}"));
        let mut header = format!("{:>5}", "q\\p");
        for p in 0..n {
            write!(header, "{p:>6}").unwrap();
        }
        sink.line(header);
        for q in (0..=cutoff).rev() {
            let mut row = format!("{q:>5}");
            for p in 0..n {
                let cell = if p + q <= cutoff {
                    page.dim_pq(p, q).map_or("?".to_string(), |d| d.to_string())
                } else {
                    "?".to_string()
                };
                write!(row, "{cell:>6}").unwrap();
                sink.row("pages", r, p, q, cell);
            }
            sink.line(row);
        }
    }
}

fn e1<F: Field>(
    sink: &mut Sink,
    field: &F,
    t: &TriangularAlgebra,
    x: &TBimodule,
    seq: &SpectralSequence<F::Elem>,
) -> Result<bool, JobError> {
    let report = e1_structure_report(field, t, x, seq)?;
    sink.line("E_1 structure");
    for c in &report.cells {
        let q = c.l - c.p;
        let terms: Vec<String> = c
            .summands
            .iter()
            .map(|(name, d)| format!("{name}={d}"))
            .collect();
        let verdict = match (c.agrees(), c.hypothesis) {
            (true, _) => "agrees",
            (false, true) => "MISMATCH",
            (false, false) => "differs (intermediate algebra not separable)",
        };
        sink.line(format!(
            "  E_1^({},{q}): computed {}, predicted {} [{}] {verdict}",
            c.p,
            c.computed,
            c.predicted(),
            terms.join(" + ")
        ));
        sink.row("e1-computed", 1, c.p, q, c.computed);
        sink.row("e1-predicted", 1, c.p, q, c.predicted());
    }
    for (j, i) in &report.zero_blocks {
        sink.line(format!("  note: block M{}{} is zero", j + 1, i + 1));
    }
    Ok(!report.consistent())
}

fn agreement(ok: bool) -> &'static str {
    if ok {
        "agrees"
    } else {
        "MISMATCH"
    }
}

#[allow(clippy::too_many_arguments)]
fn oracle<F: Field>(
    sink: &mut Sink,
    field: &F,
    t: &TriangularAlgebra,
    x: &TBimodule,
    w: &CochainWindow<F::Elem>,
    seq: &SpectralSequence<F::Elem>,
    hh: &[usize],
    spec: &JobSpec,
) -> Result<bool, JobError> {
    let bar_window = build_bar_complex(
        field,
        t.total(),
        &Bimodule::regular(t.total()),
        w.cutoff(),
        spec.oracle_budget,
    )
    .map_err(|e| match e {
        Error::BudgetExceeded { required, budget } => JobError::Input(format!(
            "bar oracle needs {required} entries, budget is {budget}; raise --oracle-budget"
        )),
        other => other.into(),
    })?;
    let bar = reliable_cohomology(field, &bar_window);
    let abutment = seq.abutment();
    let d1 = check_d1_against_cup(field, t, x, w, seq)?;
    sink.line(format!(
        "oracle: bar complex HH {} {}",
        join(&bar),
        agreement(bar == hh)
    ));
    sink.line(format!(
        "oracle: E_inf totals {} {}",
        join(&abutment),
        agreement(abutment == hh)
    ));
    sink.line(format!(
        "oracle: d_1 against cup products on {} representatives {}",
        d1.checked,
        agreement(d1.mismatches.is_empty())
    ));
    for (l, d) in bar.iter().enumerate() {
        sink.row("oracle-bar", "-", "-", l, d);
    }
    for (l, d) in abutment.iter().enumerate() {
        sink.row("oracle-abutment", "inf", "-", l, d);
    }
    sink.row("oracle-d1-mismatches", 1, "-", "-", d1.mismatches.len());
    Ok(bar != hh || abutment != hh || !d1.mismatches.is_empty())
}

fn degeneration<F: Field>(
    sink: &mut Sink,
    field: &F,
    t: &TriangularAlgebra,
    w: &CochainWindow<F::Elem>,
    seq: &SpectralSequence<F::Elem>,
) -> Result<bool, JobError> {
    let r = match check_degeneration_a2k(field, t, w, seq) {
        Ok(r) => r,
        Err(Error::Hypothesis(why)) => {
            sink.line(format!("degeneration: not applicable ({why})"));
            sink.row("degeneration", 2, "-", "-", "n/a");
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    match &r.nonzero_d2 {
        Some(bad) if bad.is_empty() => {
            sink.line("degeneration: A2 = k and every d_2 vanishes, so E_2 = E_inf")
        }
        Some(bad) => sink.line(format!(
            "degeneration: MISMATCH, d_2 is nonzero at (p,l) {bad:?}"
        )),
        None => sink.line("degeneration: A2 is not k, no global claim"),
    }
    if r.lemma_failures.is_empty() {
        sink.line(format!(
            "degeneration: d_2 vanishes on the HH(A1) + HH(A3) classes in degrees {}",
            join(&r.checked_degrees)
        ));
    } else {
        sink.line(format!(
            "degeneration: MISMATCH on diagonal classes in degrees {}",
            join(&r.lemma_failures)
        ));
    }
    sink.row(
        "degeneration-nonzero-d2",
        2,
        "-",
        "-",
        r.nonzero_d2
            .as_ref()
            .map_or("n/a".into(), |b| b.len().to_string()),
    );
    sink.row(
        "degeneration-lemma-failures",
        2,
        "-",
        "-",
        r.lemma_failures.len(),
    );
    Ok(!r.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_values() {
        assert_eq!("rat".parse::<FieldChoice>(), Ok(FieldChoice::Rationals));
        assert_eq!("fp:7".parse::<FieldChoice>(), Ok(FieldChoice::Prime(7)));
        assert!("fp:x".parse::<FieldChoice>().is_err());
        assert!("q".parse::<FieldChoice>().is_err());
        assert_eq!("e1-structure".parse::<Report>(), Ok(Report::E1Structure));
        assert!("pagez".parse::<Report>().is_err());
        assert_eq!("tsv".parse::<Emit>(), Ok(Emit::Tsv));
    }

    #[test]
    fn non_prime_field_is_an_input_error() {
        let spec = JobSpec {
            field: FieldChoice::Prime(6),
            ..JobSpec::default()
        };
        let e = run_job(&spec, "vertex a").unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn zero_max_degree_is_rejected() {
        let spec = JobSpec {
            max_degree: 0,
            ..JobSpec::default()
        };
        assert_eq!(run_job(&spec, "vertex a").unwrap_err().exit_code(), 1);
    }

    #[test]
    fn cyclic_quiver_is_rejected() {
        let e = run_job(&JobSpec::default(), "vertex a\narrow x : a -> a").unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }
}
