//! One function per subcommand; each maps an input document to an output
//! document.

use std::io::Write;

use ritz_fibre::control::{controllable, is_regular, observable, solve_unique_completion};
use ritz_fibre::coords::{
    diagonal_similarity_coords, extract_coords, extract_coords_ordered, reconstruct, transpose_coords,
    ExtractedCoords, FiberCoords,
};
use ritz_fibre::fiber::{genericity_report, hessenberg_representative, ritz_values, strong_regularity_check};
use ritz_fibre::gzflow::{eigen_flow, gz_flow, gz_generator, poisson_bracket, FlowParam};
use ritz_fibre::{ComplexMatrix, MonicPoly, Tolerances, C64};
use serde_json::{json, Map, Value};

use crate::args::{ConjArgs, ControlArgs, FlowArgs};
use crate::doc;
use crate::CliError;

/// Largest order accepted by `poisson`; the generators grow like `n^n`.
pub const POISSON_MAX_N: usize = 5;

type Doc = Map<String, Value>;

pub fn ritz(input: &Value, tol: &Tolerances) -> Result<Doc, CliError> {
    let x = doc::read_matrix(input)?;
    doc::ritz(&ritz_values(&x, tol)?)
}

pub fn check(input: &Value, tol: &Tolerances) -> Result<Doc, CliError> {
    let x = doc::read_matrix(input)?;
    let r = ritz_values(&x, tol)?;
    let report = genericity_report(&r, tol);
    let mut out = doc::ritz(&r)?;
    out.insert("generic".into(), json!(report.generic));
    out.insert("g1".into(), json!(report.g1));
    out.insert("g2".into(), json!(report.g2));
    out.insert(
        "first_failure".into(),
        report.first_failure().map_or(Value::Null, |c| json!(c.to_string())),
    );
    out.insert("ill_conditioned".into(), json!(report.ill_conditioned));
    out.insert("min_relative_gap".into(), doc::number(report.min_relative_gap)?);
    out.insert("strongly_regular".into(), json!(strong_regularity_check(&x, tol)?));
    Ok(out)
}

pub fn hess(input: &Value) -> Result<Doc, CliError> {
    let r = doc::read_ritz(input)?;
    doc::matrix(&hessenberg_representative(&r))
}

/// Coordinates of the matrix in `input`, honouring a `"ritz"` field there
/// as the level orderings.
fn extract(input: &Value, x: &ComplexMatrix, tol: &Tolerances) -> Result<ExtractedCoords, CliError> {
    if input.get("ritz").is_some() {
        let r = doc::read_ritz(input)?;
        Ok(extract_coords_ordered(x, &r, tol)?)
    } else {
        Ok(extract_coords(x, tol)?)
    }
}

pub fn coords(input: &Value, tol: &Tolerances, err: &mut dyn Write) -> Result<Doc, CliError> {
    let x = doc::read_matrix(input)?;
    let ex = extract(input, &x, tol)?;
    if ex.report.ill_conditioned {
        let _ = writeln!(
            err,
            "warning: nearly coinciding Ritz values (relative gap {:.3e}); coordinates may be inaccurate",
            ex.report.min_relative_gap
        );
    }
    doc::coords(&ex.coords)
}

pub fn reconstruct_cmd(input: &Value, tol: &Tolerances) -> Result<Doc, CliError> {
    let fc = doc::read_coords(input, tol)?;
    doc::matrix(&reconstruct(&fc, tol)?)
}

pub fn flow(input: &Value, args: &FlowArgs, tol: &Tolerances) -> Result<Doc, CliError> {
    let x = doc::read_matrix(input)?;
    let y = match (args.m, args.k, args.j) {
        (Some(m), Some(k), None) => gz_flow(&x, FlowParam::new(m, k, args.q))?,
        (None, None, Some(j)) => eigen_flow(&x, j, args.q, tol)?,
        _ => return Err(CliError::Usage("flow takes either --m and --k, or --j".into())),
    };
    let before = ritz_values(&x, tol)?;
    let after = ritz_values(&y, tol)?;
    let dev = after.distance(&before);
    let mut out = doc::matrix(&y)?;
    out.insert(
        "conservation".into(),
        json!({
            "max_ritz_deviation": doc::number(dev)?,
            "relative": doc::number(dev / before.scale().max(f64::MIN_POSITIVE))?,
        }),
    );
    Ok(out)
}

fn max_rel(a: &[C64], b: &[C64]) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

pub fn conj(input: &Value, args: &ConjArgs, tol: &Tolerances) -> Result<Doc, CliError> {
    let (x, fc): (ComplexMatrix, FiberCoords) = if doc::is_matrix_file(input) {
        let x = doc::read_matrix(input)?;
        let fc = extract(input, &x, tol)?.coords;
        (x, fc)
    } else {
        let fc = doc::read_coords(input, tol)?;
        (reconstruct(&fc, tol)?, fc)
    };
    let (predicted, y) = match &args.diag {
        Some(d) => {
            let predicted = diagonal_similarity_coords(&fc, &d.0, tol)?;
            let dm = ComplexMatrix::from_diag(&d.0);
            let dinv = ComplexMatrix::from_diag(&d.0.iter().map(|z| z.inv()).collect::<Vec<_>>());
            (predicted, &(&dm * &x) * &dinv)
        }
        None => (transpose_coords(&fc, tol)?, x.transpose()),
    };
    let direct = extract_coords_ordered(&y, fc.ritz(), tol)?.coords;
    let mut out = doc::coords(&predicted)?;
    out.insert(
        "residual".into(),
        doc::number(max_rel(&predicted.flat_b(), &direct.flat_b()))?,
    );
    Ok(out)
}

pub fn control(input: &Value, args: &ControlArgs, tol: &Tolerances) -> Result<Doc, CliError> {
    let x = doc::read_matrix(input)?;
    let n = x.rows();
    if n < 2 {
        return Err(CliError::Usage("control needs a bordered matrix of order at least 2".into()));
    }
    let m = n - 1;
    let b = x.block(m, m);
    let row = x.row(m)[..m].to_vec();
    let col: Vec<C64> = (0..m).map(|i| x[(i, m)]).collect();
    let mut out = Map::new();
    if args.row {
        out.insert("observable".into(), json!(observable(&b, &row, tol)?));
    } else if args.col {
        out.insert("controllable".into(), json!(controllable(&b, &col, tol)?));
    } else if args.regular {
        out.insert("regular".into(), json!(is_regular(&b, tol)?));
    } else if let Some(target) = &args.complete {
        if target.0.len() != n {
            return Err(CliError::Usage(format!(
                "--complete needs {n} coefficients c_0..c_{m} for order {n}, got {}",
                target.0.len()
            )));
        }
        let comp = solve_unique_completion(&b, &row, &MonicPoly::new(target.0.clone()), tol)?;
        let mut y = x.clone();
        for i in 0..m {
            y[(i, m)] = comp.col[i];
        }
        y[(m, m)] = comp.delta;
        out = doc::matrix(&y)?;
        out.insert("col".into(), doc::complex_vec(&comp.col)?);
        out.insert("delta".into(), doc::complex(comp.delta)?);
    }
    Ok(out)
}

pub fn poisson(n: usize) -> Result<Doc, CliError> {
    if n == 0 || n > POISSON_MAX_N {
        return Err(CliError::Usage(format!("poisson supports 1 ≤ n ≤ {POISSON_MAX_N}, got {n}")));
    }
    let gens = (1..=n)
        .flat_map(|m| (1..=m).map(move |k| (m, k)))
        .map(|(m, k)| Ok(((m, k), gz_generator(n, m, k)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut pairs = 0;
    let mut nonzero = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            pairs += 1;
            if !poisson_bracket(&gens[a].1, &gens[b].1).is_zero() {
                let ((m1, k1), (m2, k2)) = (gens[a].0, gens[b].0);
                nonzero.push(json!({"m1": m1, "k1": k1, "m2": m2, "k2": k2}));
            }
        }
    }
    let mut out = Map::new();
    out.insert("n".into(), json!(n));
    out.insert("generators".into(), json!(gens.len()));
    out.insert("pairs".into(), json!(pairs));
    out.insert("all_commute".into(), json!(nonzero.is_empty()));
    out.insert("nonzero".into(), Value::Array(nonzero));
    Ok(out)
}
