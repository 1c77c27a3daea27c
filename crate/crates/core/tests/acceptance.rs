//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every comparison is exact; the only
//! tolerance is the wall-clock bound on the golden quiver run.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use trispec_core::algebra::{
    center, tensor_over, Bilinear, Bimodule, FiniteDimAlgebra, TBimodule, TriangularAlgebra,
};
use trispec_core::field::qi;
use trispec_core::hochcomplex::{
    build_bar_complex, build_relative_complex, reliable_cohomology, CochainWindow,
};
use trispec_core::linalg::{kernel, rank, subspace_intersect, subspace_sum, Matrix};
use trispec_core::quiver::{incidence_algebra, simplicial_cohomology, SimplicialComplex};
use trispec_core::spectral::{check_d1_against_cup, check_degeneration_a2k, SpectralSequence};
use trispec_core::{zoo, Rationals, SparseVec, Subspace};

type Q = BigRational;

/// Reliable degrees checked against the oracles.
const ORACLE_CUTOFF: usize = 3;
/// Bar oracle entry budget for the suites.
const BAR_BUDGET: u64 = 50_000_000;
/// Golden run: `L = 4` reports `HH^0 .. HH^3`, so the engine cutoff is 3.
const GOLDEN_CUTOFF: usize = 3;
const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(1);
const MIN_ORACLE_SUITE: usize = 20;
const MAX_ORACLE_DIM: usize = 8;
const MIN_DEGENERATION_SUITE: usize = 5;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn relative(t: &TriangularAlgebra, cutoff: usize) -> Result<(TBimodule, CochainWindow<Q>), String> {
    let x = TBimodule::regular(t);
    let w = build_relative_complex(&Rationals, t, &x, cutoff).map_err(|e| e.to_string())?;
    Ok((x, w))
}

fn bar_hh(t: &TriangularAlgebra, cutoff: usize) -> Result<Vec<usize>, String> {
    let w = build_bar_complex(
        &Rationals,
        t.total(),
        &Bimodule::regular(t.total()),
        cutoff,
        BAR_BUDGET,
    )
    .map_err(|e| e.to_string())?;
    Ok(reliable_cohomology(&Rationals, &w))
}

fn sequence(w: &CochainWindow<Q>) -> Result<SpectralSequence<Q>, String> {
    SpectralSequence::compute(&Rationals, w).map_err(|e| e.to_string())
}

fn golden() -> Outcome {
    let start = Instant::now();
    let t = zoo::quiver_algebra(&zoo::two_level_fan()).map_err(|e| e.to_string())?;
    let (_, w) = relative(&t, GOLDEN_CUTOFF)?;
    let seq = sequence(&w)?;
    let hh = reliable_cohomology(&Rationals, &w);
    let elapsed = start.elapsed();

    let row = |r: usize, q: usize| -> Vec<Option<usize>> {
        (0..3).map(|p| seq.page(r).dim_pq(p, q)).collect()
    };
    ensure(row(1, 0) == [Some(4), Some(17), Some(8)], || {
        format!("E1 q=0 row {:?}", row(1, 0))
    })?;
    for q in 1..=GOLDEN_CUTOFF {
        for p in 0..3 {
            if let Some(d) = seq.page(1).dim_pq(p, q) {
                ensure(d == 0, || format!("E1^({p},{q}) = {d}"))?;
            }
        }
    }
    ensure(row(2, 0) == [Some(1), Some(6), Some(0)], || {
        format!("E2 q=0 row {:?}", row(2, 0))
    })?;
    ensure(hh == [1, 6, 0, 0], || format!("HH {hh:?}"))?;
    ensure(seq.abutment() == hh, || {
        format!("abutment {:?}", seq.abutment())
    })?;
    ensure(elapsed < GOLDEN_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "HH = {hh:?}, {:.0} ms",
        elapsed.as_secs_f64() * 1e3
    ))
}

fn oracle_equivalence() -> Outcome {
    let suite = zoo::oracle_suite();
    ensure(suite.len() >= MIN_ORACLE_SUITE, || {
        format!("only {} instances", suite.len())
    })?;
    let mut has_dual = false;
    for (name, t) in &suite {
        ensure(t.dim() <= MAX_ORACLE_DIM, || {
            format!("{name} has dim {}", t.dim())
        })?;
        has_dual |= t.diag(0) == &FiniteDimAlgebra::dual_numbers();
        let (_, w) = relative(t, ORACLE_CUTOFF)?;
        let rel = reliable_cohomology(&Rationals, &w);
        let bar = bar_hh(t, ORACLE_CUTOFF).map_err(|e| format!("{name}: {e}"))?;
        ensure(rel == bar, || {
            format!("{name}: relative {rel:?}, bar {bar:?}")
        })?;
    }
    ensure(has_dual, || "no instance with A1 = k[x]/(x^2)".into())?;
    Ok(format!("{} instances, l <= {ORACLE_CUTOFF}", suite.len()))
}

fn convergence() -> Outcome {
    let suite = zoo::oracle_suite();
    for (name, t) in &suite {
        let (_, w) = relative(t, ORACLE_CUTOFF)?;
        let seq = sequence(&w)?;
        let hh = reliable_cohomology(&Rationals, &w);
        ensure(seq.abutment() == hh, || {
            format!("{name}: E_n {:?}, HH {hh:?}", seq.abutment())
        })?;
    }
    Ok(format!("{} instances", suite.len()))
}

fn d1_cup() -> Outcome {
    let mut instances = 0;
    let mut checked = 0;
    for (name, t) in zoo::oracle_suite().iter().filter(|(_, t)| t.n() <= 4) {
        let (x, w) = relative(t, ORACLE_CUTOFF)?;
        let seq = sequence(&w)?;
        let report =
            check_d1_against_cup(&Rationals, t, &x, &w, &seq).map_err(|e| e.to_string())?;
        ensure(report.mismatches.is_empty(), || {
            format!("{name}: mismatches at {:?}", report.mismatches)
        })?;
        instances += 1;
        checked += report.checked;
    }
    Ok(format!("{instances} instances, {checked} representatives"))
}

fn degeneration() -> Outcome {
    let suite = zoo::degeneration_suite();
    ensure(suite.len() >= MIN_DEGENERATION_SUITE, || {
        format!("only {} instances", suite.len())
    })?;
    for (name, t) in &suite {
        ensure(t.diag(1).dim() == 1, || format!("{name}: A2 is not k"))?;
        let (_, w) = relative(t, ORACLE_CUTOFF)?;
        let seq = sequence(&w)?;
        let r =
            check_degeneration_a2k(&Rationals, t, &w, &seq).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.nonzero_d2.as_deref() == Some(&[]), || {
            format!("{name}: nonzero d2 at {:?}", r.nonzero_d2)
        })?;
        ensure(r.holds(), || {
            format!("{name}: lemma fails in degrees {:?}", r.lemma_failures)
        })?;
    }
    let lemma = zoo::lemma_suite();
    ensure(lemma.len() >= MIN_DEGENERATION_SUITE, || {
        format!("only {} lemma instances", lemma.len())
    })?;
    let mut middle_dims = Vec::new();
    for (name, t) in &lemma {
        let (_, w) = relative(t, ORACLE_CUTOFF)?;
        let seq = sequence(&w)?;
        let r =
            check_degeneration_a2k(&Rationals, t, &w, &seq).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.lemma_failures.is_empty(), || {
            format!("{name}: lemma fails in degrees {:?}", r.lemma_failures)
        })?;
        middle_dims.push(t.diag(1).dim());
    }
    Ok(format!(
        "{} with A2 = k, {} with dim A2 in {middle_dims:?}",
        suite.len(),
        lemma.len()
    ))
}

fn small_cases() -> Outcome {
    let mut cases = vec![("kronecker".to_string(), zoo::kronecker(), vec![1, 3, 0])];
    for n in 1..=5 {
        cases.push((format!("chain{n}"), zoo::chain(n), vec![1, 0, 0]));
    }
    for (name, q, golden) in cases {
        let t = zoo::quiver_algebra(&q).map_err(|e| e.to_string())?;
        let bar = bar_hh(&t, 2)?;
        ensure(bar == golden, || format!("{name}: bar oracle {bar:?}"))?;
        let (_, w) = relative(&t, 2)?;
        let rel = reliable_cohomology(&Rationals, &w);
        ensure(rel == golden, || format!("{name}: relative {rel:?}"))?;
    }
    Ok("kronecker [1, 3, 0], chains 1..=5 [1, 0, 0]".into())
}

fn incidence() -> Outcome {
    let triangle =
        SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]);
    let tetra = SimplicialComplex::from_facets(&[
        vec!["a", "b", "c"],
        vec!["a", "b", "d"],
        vec!["a", "c", "d"],
        vec!["b", "c", "d"],
    ]);
    let mut details = Vec::new();
    for (name, s) in [("triangle", triangle), ("tetrahedron", tetra)] {
        let s = s.map_err(|e| e.to_string())?;
        let t = incidence_algebra(&s).map_err(|e| e.to_string())?;
        let (_, w) = relative(&t, ORACLE_CUTOFF)?;
        let hh = reliable_cohomology(&Rationals, &w);
        let simplicial = simplicial_cohomology(&Rationals, &s, ORACLE_CUTOFF);
        ensure(hh == simplicial, || {
            format!("{name}: HH {hh:?}, simplicial {simplicial:?}")
        })?;
        details.push(format!("{name} {hh:?}"));
    }
    Ok(details.join(", "))
}

/// `T` as a bimodule over `R = k^n` through its block decomposition.
fn over_diagonal(t: &TriangularAlgebra) -> Bimodule {
    let d = t.dim();
    let lact = (0..d).map(|b| (t.block_of(b).target, b, b, qi(1)));
    let ract = (0..d).map(|b| (b, t.block_of(b).source, b, qi(1)));
    Bimodule::new(
        Bilinear::from_entries(&Rationals, t.n(), d, d, lact).expect("shape"),
        Bilinear::from_entries(&Rationals, d, t.n(), d, ract).expect("shape"),
    )
    .expect("bimodule")
}

fn corner_dim(v: &Bimodule, j: usize, i: usize) -> usize {
    let e = |k: usize| -> SparseVec<Q> { vec![(k, qi(1))] };
    let cols = (0..v.dim())
        .map(|b| v.act_right(&v.act_left(&e(j), &vec![(b, qi(1))]), &e(i)))
        .collect();
    rank(&Rationals, &Matrix::from_columns(v.dim(), cols))
}

/// `dim C^l = dim Hom_{R-R}(T^{(x)_R l}, T)`, with the tensor powers built
/// by `tensor_over` rather than from trajectories.
fn decomposition_identity(t: &TriangularAlgebra, w: &CochainWindow<Q>) -> Result<(), String> {
    let r = FiniteDimAlgebra::diagonal(t.n());
    let tr = over_diagonal(t);
    let mut power = Bimodule::regular(&r);
    for l in 0..=w.cutoff() + 1 {
        let mut expected = 0;
        for j in 0..t.n() {
            for i in 0..=j {
                expected += corner_dim(&power, j, i) * t.block_dim(j, i);
            }
        }
        ensure(expected == w.dim(l), || {
            format!("dim C^{l} = {}, tensor powers give {expected}", w.dim(l))
        })?;
        power = tensor_over(&r, &tr, &power)
            .map_err(|e| e.to_string())?
            .module;
    }
    Ok(())
}

fn grassmann(a: &Subspace<Q>, b: &Subspace<Q>) -> Result<(), String> {
    let sum = subspace_sum(&Rationals, a, b).map_err(|e| e.to_string())?;
    let meet = subspace_intersect(&Rationals, a, b).map_err(|e| e.to_string())?;
    ensure(sum.dim() + meet.dim() == a.dim() + b.dim(), || {
        format!(
            "{} + {} != {} + {}",
            sum.dim(),
            meet.dim(),
            a.dim(),
            b.dim()
        )
    })
}

fn invariants() -> Outcome {
    let mut all: Vec<(String, TriangularAlgebra)> = Vec::new();
    all.extend(zoo::oracle_suite());
    all.extend(zoo::degeneration_suite());
    all.extend(zoo::lemma_suite());
    all.push((
        "two-level-fan".into(),
        zoo::quiver_algebra(&zoo::two_level_fan()).map_err(|e| e.to_string())?,
    ));
    for (name, t) in &all {
        let fail = |e: String| format!("{name}: {e}");
        let (_, w) = relative(t, ORACLE_CUTOFF)?;
        w.check_d_squared(&Rationals)
            .map_err(|e| fail(e.to_string()))?;
        w.check_filtration().map_err(|e| fail(e.to_string()))?;
        for l in 0..=w.cutoff() {
            let ker = kernel(&Rationals, w.differential(l));
            for p in 0..w.columns() {
                let coords: Vec<usize> = (0..w.dim(l)).filter(|&c| w.tags(l)[c] >= p).collect();
                let filt = Subspace::coordinate(&Rationals, w.dim(l), coords);
                grassmann(&filt, &ker).map_err(|e| fail(format!("l={l} p={p}: {e}")))?;
            }
        }
        let hh = reliable_cohomology(&Rationals, &w);
        let z = center(&Rationals, t.total()).map_err(|e| e.to_string())?;
        ensure(hh[0] == z.dim(), || {
            fail(format!("HH^0 = {}, center {}", hh[0], z.dim()))
        })?;
        decomposition_identity(t, &w).map_err(fail)?;
        let seq = sequence(&w)?;
        seq.check_d_squared(&Rationals)
            .map_err(|e| fail(e.to_string()))?;
        seq.check_recurrence(&Rationals)
            .map_err(|e| fail(e.to_string()))?;
    }
    Ok(format!("{} instances", all.len()))
}

fn run(id: usize, title: &str, f: fn() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    match outcome {
        Ok(detail) => {
            println!("PASS {id} {title}: {detail}");
            true
        }
        Err(why) => {
            println!("FAIL {id} {title}: {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden two-level quiver", golden),
        ("relative complex = bar oracle", oracle_equivalence),
        ("convergence to HH", convergence),
        ("d1 = cup products", d1_cup),
        ("degeneration at E2", degeneration),
        ("Kronecker and chain quivers", small_cases),
        ("incidence algebras = simplicial cohomology", incidence),
        ("structural invariants", invariants),
    ];
    let mut ok = true;
    for (k, (title, f)) in criteria.into_iter().enumerate() {
        ok &= run(k + 1, title, f);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
