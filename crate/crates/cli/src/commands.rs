//! One function per subcommand; each validates its parameters before computing.

use std::collections::BTreeMap;
use std::path::Path;

use polyorbit::algebra::{prime_power_decomposition, validate_field_spec};
use polyorbit::counting::{
    orbit_count_formula, p_count_formula, total_count_formula, BoundVector, RecursionCache,
};
use polyorbit::lemma_moves::{
    applicable_truncations, triangular_fixtures, triangularize, verify_count_preservation,
    MoveKind, MoveRecord,
};
use polyorbit::oracle::{census_by_det_degree, count_orbit_bruteforce, count_p_bruteforce};
use polyorbit::polymat::{det, hnf};
use polyorbit::report::params;
use polyorbit::verify::{
    all_pass, run_grid, verify_census, verify_lemma2, verify_orbits, verify_recursions, GridSpec,
    VerifyOptions,
};
use polyorbit::zcase::{class_inventory, drs_constant, orbit_ratio_experiment, AsymptoticParams};
use polyorbit::{CountReport, Degree, EnumerationBudget, Error, Field, PolyMatrix, Result};
use serde_json::{json, Value};

use crate::output::Report;
use crate::{Command, ZcaseCommand};

pub fn run(command: Command, budget: &EnumerationBudget) -> Result<Report> {
    match command {
        Command::Formula { n, q, t, k } => formula(n, q, t, k),
        Command::Verify {
            n,
            q,
            k,
            bounds,
            modulus,
            inject_mismatch,
        } => {
            let opts = VerifyOptions {
                budget: *budget,
                inject_mismatch,
            };
            verify(n, q, k, bounds, modulus, &opts)
        }
        Command::Brute {
            n,
            q,
            k,
            modulus,
            input,
        } => match input {
            Some(path) => brute_orbit(&read_matrix(&path)?, k, budget),
            None => {
                let field = field(q.expect("required by the parser"), modulus)?;
                brute_census(&field, n.expect("required by the parser"), k, budget)
            }
        },
        Command::Hnf { input } => hnf_report(&read_matrix(&input)?),
        Command::Lemma2 {
            bounds,
            field: f,
            formula_only,
        } => lemma2(bounds, &field(f.q, f.modulus)?, formula_only, budget),
        Command::VerifyMoves {
            input,
            n,
            q,
            max_degree,
            k,
        } => verify_moves(input.as_deref(), n, q, max_degree, k, budget),
        Command::Zcase { command } => zcase(command, budget),
    }
}

/// F_q from its size and, for proper prime powers, the defining polynomial.
pub fn field(q: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
    let (p, e) = prime_power_decomposition(q as u64)
        .ok_or_else(|| Error::InvalidParams(format!("q = {q} is not a prime power")))?;
    Ok(Field::new(validate_field_spec(p, e, modulus.as_deref())?))
}

fn read_matrix(path: &Path) -> Result<PolyMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn reports(check: &str, reports: Vec<CountReport>) -> Report {
    let passed = all_pass(&reports);
    Report::table(
        json!({ "command": check, "passed": passed, "reports": reports }),
        serde_json::to_value(&reports).expect("reports serialize"),
        passed,
    )
}

fn formula(n: usize, q: u32, t: u32, k: u32) -> Result<Report> {
    if k < t {
        return Err(Error::BoundTooSmall { k, t });
    }
    let p = || {
        params([
            ("n", n.to_string()),
            ("q", q.to_string()),
            ("t", t.to_string()),
            ("k", k.to_string()),
        ])
    };
    Ok(reports(
        "formula",
        vec![
            CountReport::formula_only("orbit", p(), orbit_count_formula(n, q, t, k)?),
            CountReport::formula_only("total", p(), total_count_formula(n, q, t, k)?),
        ],
    ))
}

fn verify(
    n: Option<usize>,
    q: Option<u32>,
    k: Option<u32>,
    bounds: Option<Vec<u32>>,
    modulus: Option<Vec<u32>>,
    opts: &VerifyOptions,
) -> Result<Report> {
    let out = match (n, q, k, bounds) {
        (None, None, None, None) => run_grid(&GridSpec::default(), opts)?,
        (Some(n), Some(q), Some(k), None) => {
            let f = field(q, modulus)?;
            let mut out = Vec::new();
            for k in 0..=k {
                out.extend(verify_orbits(&f, n, k, opts)?);
                out.extend(verify_census(&f, n, k, opts)?);
            }
            out
        }
        (None, Some(q), None, Some(bounds)) => {
            let f = field(q, modulus)?;
            let b = BoundVector::new(bounds)?;
            let mut out = verify_lemma2(&f, &b, opts)?;
            out.extend(verify_recursions(&f, &b, opts)?);
            out
        }
        _ => {
            return Err(Error::InvalidParams(
                "give no parameters, or --n --q --k, or --q --bounds".into(),
            ))
        }
    };
    Ok(reports("verify", out))
}

fn brute_census(field: &Field, n: usize, k: u32, budget: &EnumerationBudget) -> Result<Report> {
    let census = census_by_det_degree(field, n, k, budget)?;
    let q = field.q();
    let checks = (0..=k)
        .map(|t| {
            let p = params([
                ("n", n.to_string()),
                ("q", q.to_string()),
                ("t", t.to_string()),
                ("k", k.to_string()),
            ]);
            Ok(CountReport::checked(
                "census",
                p,
                total_count_formula(n, q, t, k)?,
                census.bucket(t),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = all_pass(&checks);
    Ok(Report::table(
        json!({ "command": "brute", "passed": passed, "census": census, "reports": checks }),
        serde_json::to_value(&checks).expect("reports serialize"),
        passed,
    ))
}

fn brute_orbit(rep: &PolyMatrix, k: u32, budget: &EnumerationBudget) -> Result<Report> {
    let t = match det(rep)?.degree() {
        Degree::Finite(t) => t,
        Degree::NegInf => return Err(Error::SingularRepresentative),
    };
    let n = rep.rows();
    let q = rep.field().q();
    let count = count_orbit_bruteforce(rep, k, budget)?;
    let p = params([
        ("n", n.to_string()),
        ("q", q.to_string()),
        ("t", t.to_string()),
        ("k", k.to_string()),
        ("rep", rep.to_string()),
    ]);
    let report = if t <= k {
        CountReport::checked("orbit", p, orbit_count_formula(n, q, t, k)?, count)
    } else {
        CountReport::formula_only("orbit_scan", p, count)
    };
    Ok(reports("brute", vec![report]))
}

fn hnf_report(m: &PolyMatrix) -> Result<Report> {
    let form = hnf(m)?;
    let doc = json!({
        "command": "hnf",
        "input": m,
        "h": form.h,
        "u": form.u,
        "det_degree": form.det_degree,
        "det_u": form.unit.value(),
    });
    Ok(Report::single(doc, true))
}

fn lemma2(
    bounds: Vec<u32>,
    field: &Field,
    formula_only: bool,
    budget: &EnumerationBudget,
) -> Result<Report> {
    let b = BoundVector::new(bounds)?;
    let q = field.q();
    let p = || params([("q", q.to_string()), ("bounds", b.to_string())]);
    let closed = p_count_formula(&b, q)?;
    let recursive = RecursionCache::new().p_count(&b, q)?;
    let out = if formula_only {
        vec![
            CountReport::formula_only("lemma2", p(), closed),
            CountReport::formula_only("lemma2_recursion", p(), recursive),
        ]
    } else {
        let scan = count_p_bruteforce(&b, field, budget)?;
        vec![
            CountReport::checked("lemma2", p(), closed, scan.clone()),
            CountReport::checked("lemma2_recursion", p(), recursive, scan),
        ]
    };
    Ok(reports("lemma2", out))
}

fn move_records(
    m: &PolyMatrix,
    k_max: Option<u32>,
    budget: &EnumerationBudget,
) -> Result<Vec<MoveRecord>> {
    let t = match det(m)?.degree() {
        Degree::Finite(t) => t,
        Degree::NegInf => return Err(Error::SingularRepresentative),
    };
    let range = t..=k_max.unwrap_or(t + 2).max(t);
    let mut out = Vec::new();
    let base = if m.is_upper_triangular() {
        m.clone()
    } else {
        let tri = triangularize(m)?;
        out.push(verify_count_preservation(
            m,
            &tri,
            MoveKind::Triangularize,
            range.clone(),
            budget,
        )?);
        tri
    };
    for mv in applicable_truncations(&base) {
        let after = mv.apply(&base)?;
        out.push(verify_count_preservation(
            &base,
            &after,
            mv,
            range.clone(),
            budget,
        )?);
    }
    Ok(out)
}

fn verify_moves(
    input: Option<&Path>,
    n: usize,
    q: u32,
    max_degree: u32,
    k: Option<u32>,
    budget: &EnumerationBudget,
) -> Result<Report> {
    let fixtures = match input {
        Some(path) => vec![read_matrix(path)?],
        None => triangular_fixtures(&field(q, None)?, n, max_degree, budget)?,
    };
    let mut records = Vec::new();
    for m in &fixtures {
        records.extend(move_records(m, k, budget)?);
    }
    let passed = records.iter().all(MoveRecord::preserved);
    let rows: Vec<Value> = records
        .iter()
        .flat_map(|r| {
            r.counts_checked.iter().map(move |c| {
                json!({
                    "before": r.before.to_string(),
                    "after": r.after.to_string(),
                    "move": r.move_kind,
                    "k": c.k,
                    "count_before": c.count_before.to_string(),
                    "count_after": c.count_after.to_string(),
                    "method": c.method,
                })
            })
        })
        .collect();
    Ok(Report::table(
        json!({
            "command": "verify-moves",
            "passed": passed,
            "fixtures": fixtures.len(),
            "records": records,
        }),
        Value::Array(rows),
        passed,
    ))
}

fn parse_zeta(items: &[String]) -> Result<BTreeMap<usize, f64>> {
    items
        .iter()
        .map(|item| {
            let bad = || Error::Parse(format!("expected j=value, got `{item}`"));
            let (j, v) = item.split_once('=').ok_or_else(bad)?;
            Ok((
                j.trim().parse().map_err(|_| bad())?,
                v.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn zcase(command: ZcaseCommand, budget: &EnumerationBudget) -> Result<Report> {
    match command {
        ZcaseCommand::Classes { det, t } => {
            let inv = class_inventory(det, t, budget)?;
            let rows = serde_json::to_value(&inv.left_classes).expect("classes serialize");
            Ok(Report::table(
                serde_json::to_value(&inv).expect("inventory serializes"),
                rows,
                true,
            ))
        }
        ZcaseCommand::Ratio { det, t } => {
            let ladder = match t.as_slice() {
                [] => return Err(Error::InvalidParams("--T needs a value".into())),
                &[top] => {
                    let mut l = vec![top / 4, top / 2, top];
                    l.retain(|&v| v > 0);
                    l.dedup();
                    l
                }
                many => many.to_vec(),
            };
            let report = orbit_ratio_experiment(det, &ladder, budget)?;
            let rows = serde_json::to_value(&report.points).expect("points serialize");
            Ok(Report::table(
                serde_json::to_value(&report).expect("report serializes"),
                rows,
                true,
            ))
        }
        ZcaseCommand::Constant { n, k, zeta } => {
            let params = AsymptoticParams::new(n, k)?;
            let value = drs_constant(&params, &parse_zeta(&zeta)?)?;
            Ok(Report::single(
                json!({ "command": "zcase constant", "n": n, "k": k, "constant": value }),
                true,
            ))
        }
    }
}
