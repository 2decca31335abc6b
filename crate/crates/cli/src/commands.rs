use crate::error::CliError;
use crate::family::run_family;
use crate::output::{read, Sink};
use crate::{Check, Cli, Command, Scale};
use discrete_orthopoly::io::{
    from_json, order_from, to_json, BasisFile, FloatBasisFile, MeasureFile, PointSetFile, RecurrenceFile,
    StaircaseFile, WeightsFile,
};
use discrete_orthopoly::orthogonalize::{construct_orthogonal, orthonormalize, MomentFunctional, OrthoBasis, Scaling};
use discrete_orthopoly::rational::format_rational;
use discrete_orthopoly::recurrence::{
    christoffel_darboux, commute_check, compute_recurrence, duality_violation, favard_reconstruct, jacobi_operators,
    leading_violation, rank_condition, recover_measure, verify_three_term, RecoveryOptions,
};
use discrete_orthopoly::staircase::{compute_staircase, Interpolator, MonomialOrder, PointSet};
use serde_json::{json, Map, Value};
use std::path::Path;

/// Point pairs examined by the Christoffel–Darboux check.
const CD_POINT_LIMIT: usize = 12;

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let sink = Sink { out: cli.out.clone() };
    match &cli.command {
        Command::Staircase { points } => cmd_staircase(cli, &sink, points),
        Command::Construct { points, weights } => cmd_construct(cli, &sink, points, weights),
        Command::Verify { basis, points, weights } => cmd_verify(cli, &sink, basis, points, weights),
        Command::Recurrence { basis, points, weights } => cmd_recurrence(&sink, basis, points, weights),
        Command::Favard { recurrence, staircase, candidates, attempts } => {
            cmd_favard(cli, &sink, recurrence, staircase, candidates.as_deref(), *attempts)
        }
        Command::Family { spec } => run_family(cli, &sink, spec),
    }
}

fn load_points(path: &Path) -> Result<PointSet, CliError> {
    Ok(from_json::<PointSetFile>(&read(path)?)?.into_points()?)
}

fn load_functional(points: &Path, weights: &Path) -> Result<MomentFunctional, CliError> {
    let v = load_points(points)?;
    let w = from_json::<WeightsFile>(&read(weights)?)?.into_weights(v.len())?;
    Ok(MomentFunctional::new(v, w)?)
}

fn load_basis(path: &Path, l: &MomentFunctional) -> Result<OrthoBasis, CliError> {
    Ok(from_json::<BasisFile>(&read(path)?)?.into_basis(l)?)
}

fn order(cli: &Cli, dim: usize) -> Result<MonomialOrder, CliError> {
    Ok(order_from(cli.order, dim, cli.precedence.clone())?)
}

fn sizes_line(sizes: &[usize]) -> String {
    let total: usize = sizes.iter().sum();
    let list: Vec<String> = sizes.iter().map(usize::to_string).collect();
    format!("r = ({}), |Λ| = {total}", list.join(", "))
}

fn cmd_staircase(cli: &Cli, sink: &Sink, points: &Path) -> Result<(), CliError> {
    let v = load_points(points)?;
    let lambda = compute_staircase(&v, &order(cli, v.dim())?).map_err(|e| CliError::Input(e.to_string()))?;
    sink.emit(&to_json(&StaircaseFile::from_staircase(&lambda)))?;
    sink.say(&sizes_line(&lambda.block_sizes()));
    Ok(())
}

fn cmd_construct(cli: &Cli, sink: &Sink, points: &Path, weights: &Path) -> Result<(), CliError> {
    let l = load_functional(points, weights)?;
    let lambda = compute_staircase(l.points(), &order(cli, l.dim())?).map_err(|e| CliError::Input(e.to_string()))?;
    let scaling = match cli.scale {
        Scale::Canonical => Scaling::Canonical,
        Scale::Raw => Scaling::Raw,
    };
    let basis = construct_orthogonal(&l, &lambda, scaling)?;
    let orthonormal = if cli.orthonormal { Some(orthonormalize(&basis, &l)?) } else { None };
    sink.emit(&to_json(&BasisFile::from_basis(&basis)))?;
    if let Some(fb) = orthonormal {
        let path = sink.emit_sibling("orthonormal", &to_json(&FloatBasisFile::from_basis(&fb)))?;
        sink.say(&format!("orthonormal basis written to {}", path.display()));
    }
    sink.say(&sizes_line(&basis.block_sizes()));
    for (k, block) in basis.blocks().iter().enumerate() {
        for (j, p) in block.iter().enumerate() {
            sink.say(&format!("P_{j}^{k} = {}", p.display_with(lambda.order())));
        }
    }
    Ok(())
}

fn cmd_recurrence(sink: &Sink, basis: &Path, points: &Path, weights: &Path) -> Result<(), CliError> {
    let l = load_functional(points, weights)?;
    let basis = load_basis(basis, &l)?;
    let report = basis.orthogonality_report(&l);
    if !report.pass() {
        return Err(CliError::Input(format!("basis is not orthogonal for the given weights: {report:?}")));
    }
    let rec = compute_recurrence(&basis, &l)?;
    sink.emit(&to_json(&RecurrenceFile::from_recurrence(&rec)))?;
    sink.say(&sizes_line(rec.sizes()));
    Ok(())
}

fn cmd_verify(cli: &Cli, sink: &Sink, basis: &Path, points: &Path, weights: &Path) -> Result<(), CliError> {
    let l = load_functional(points, weights)?;
    let basis = load_basis(basis, &l)?;
    let checks = cli.checks.clone().unwrap_or_else(|| Check::ALL.to_vec());
    let mut sections = Map::new();
    let recurrence = compute_recurrence(&basis, &l);
    for check in Check::ALL.into_iter().filter(|c| checks.contains(c)) {
        let section = match (&recurrence, check) {
            (_, Check::Orthogonality) => {
                let r = basis.orthogonality_report(&l);
                json!({
                    "pass": r.pass(),
                    "first_violation": r.first_violation.map(|(k, j)| json!({"k": k, "j": j})),
                    "singular_gram": r.singular_gram,
                    "singular_leading": r.singular_leading,
                })
            }
            (Err(e), _) => json!({"pass": false, "error": e.to_string()}),
            (Ok(rec), Check::ThreeTerm) => {
                let r = verify_three_term(rec, &basis, l.points())?;
                let duality = duality_violation(rec, &basis);
                let leading = leading_violation(rec, &basis)?;
                json!({
                    "pass": r.pass() && duality.is_none() && leading.is_none(),
                    "checked": r.checked,
                    "max_residual": format_rational(&r.max_residual),
                    "first_failure": r.first_failure.map(|f| json!({
                        "k": f.degree,
                        "i": f.coordinate,
                        "point": f.point,
                        "row": f.row,
                        "residual": format_rational(&f.residual),
                    })),
                    "duality_violation": duality.map(|(k, i)| json!({"k": k, "i": i})),
                    "leading_violation": leading.map(|(k, i)| json!({"k": k, "i": i})),
                })
            }
            (Ok(rec), Check::Rank) => {
                let rows = rank_condition(rec);
                json!({
                    "pass": rows.iter().all(|r| r.pass()),
                    "degrees": rows.iter().map(|r| json!({
                        "k": r.degree,
                        "r_next": r.next_size,
                        "rank_A": r.rank_a,
                        "rank_C": r.rank_c,
                        "dimension_bound": r.dimension_bound,
                        "pass": r.pass(),
                    })).collect::<Vec<_>>(),
                })
            }
            (Ok(rec), Check::Cd) => cd_section(&basis, rec, l.points())?,
            (Ok(rec), Check::Jacobi) => {
                let ops = jacobi_operators(rec)?;
                let r = commute_check(&ops);
                json!({
                    "pass": r.pass(),
                    "size": ops.first().map_or(0, |j| j.matrix.rows()),
                    "pairs": r.pairs,
                    "failures": r.failures.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
                })
            }
        };
        sections.insert(check.name().to_string(), section);
    }
    let pass = sections.values().all(|s| s["pass"] == Value::Bool(true));
    let report = json!({"pass": pass, "checks": Value::Object(sections.clone())});
    sink.emit(&to_json(&report))?;
    for (name, s) in &sections {
        sink.say(&format!("{name}: {}", if s["pass"] == Value::Bool(true) { "pass" } else { "FAIL" }));
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

fn cd_section(
    basis: &OrthoBasis,
    rec: &discrete_orthopoly::Recurrence,
    v: &PointSet,
) -> Result<Value, CliError> {
    let pts = &v.points()[..v.len().min(CD_POINT_LIMIT)];
    let mut checked = 0usize;
    let mut failure = None;
    'outer: for (a, x) in pts.iter().enumerate() {
        for (b, y) in pts.iter().enumerate().skip(a + 1) {
            for i in 0..rec.dim() {
                if x[i] == y[i] {
                    continue;
                }
                for k in 0..=rec.top_degree() {
                    let (lhs, rhs) = christoffel_darboux(basis, rec, x, y, i, k)?;
                    checked += 1;
                    if lhs != rhs {
                        failure = Some(json!({"x": a, "y": b, "i": i, "k": k}));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(json!({"pass": failure.is_none(), "checked": checked, "first_failure": failure}))
}

fn cmd_favard(
    cli: &Cli,
    sink: &Sink,
    recurrence: &Path,
    staircase: &Path,
    candidates: Option<&Path>,
    attempts: usize,
) -> Result<(), CliError> {
    if sink.out.is_none() {
        return Err(CliError::Input("favard writes a basis and a measure file and needs --out".into()));
    }
    let rec = from_json::<RecurrenceFile>(&read(recurrence)?)?.into_recurrence()?;
    let lambda = from_json::<StaircaseFile>(&read(staircase)?)?.into_staircase()?;
    if let Some(row) = rank_condition(&rec).iter().find(|r| r.rank_a != r.next_size) {
        return Err(CliError::RankDeficient(row.degree));
    }
    let pool = candidates.map(load_points).transpose()?;
    let raw = favard_reconstruct(&rec, &lambda, None)?;
    let options = RecoveryOptions { seed: cli.seed, max_attempts: attempts, ..RecoveryOptions::default() };
    let l = recover_measure(&rec, &raw, pool.as_ref(), &options)?;
    let interp = Interpolator::new(l.points(), &lambda)
        .map_err(|e| CliError::Internal(format!("staircase does not index the recovered point set: {e}")))?;
    let reduced = raw
        .iter()
        .map(|b| b.iter().map(|p| interp.normal_form(p)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let basis = OrthoBasis::from_blocks(lambda, reduced, &l)?;
    let report = basis.orthogonality_report(&l);
    sink.emit(&to_json(&BasisFile::from_basis(&basis)))?;
    let path = sink.emit_sibling("measure", &to_json(&MeasureFile::from_functional(&l)))?;
    sink.say(&format!("measure written to {}", path.display()));
    sink.say(&format!("recovered {} points; orthogonality {}", l.points().len(), if report.pass() { "pass" } else { "FAIL" }));
    if report.pass() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}
