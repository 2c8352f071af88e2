use std::fmt::Write as _;

use fischerlab::fischer::DegreeVerdict;
use fischerlab::{dirichlet, fischer};
use fischerlab::{
    dirichlet_solve, fischer_decompose, fischer_theorem_check, format_polynomial, khavinson_psi, parse_polynomial,
    sample_residuals, verify_solution, Error, Poly, ProfileMode, QuadricDomain, RankProfile, Scalar, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::report::{float, poly_value, Outcome, Report};
use crate::{CliError, RunConfig};

fn parse(cfg: &RunConfig, text: &str) -> Result<Poly, CliError> {
    Ok(parse_polynomial(text, &cfg.vars, cfg.field)?)
}

fn base_config(cfg: &RunConfig) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("field".into(), json!(cfg.field.to_string()));
    m.insert("vars".into(), json!(cfg.vars));
    m.insert("seed".into(), json!(cfg.seed.to_string()));
    m.insert("tol_root".into(), json!(float(cfg.tol_root)));
    m.insert("tol_boundary".into(), json!(float(cfg.tol_boundary)));
    m.insert("format".into(), json!(cfg.format.to_string()));
    m
}

fn checks<const N: usize>(items: [(&str, bool); N]) -> Map<String, Value> {
    items.into_iter().map(|(k, v)| (k.to_string(), Value::Bool(v))).collect()
}

fn outcome_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Verified
    } else {
        Outcome::Failed
    }
}

fn scalar_value(c: &Scalar) -> Value {
    json!({ "text": c.to_string(), "value": serde_json::to_value(c).expect("scalars serialize") })
}

fn interior_point(cfg: &RunConfig, interior: &[f64]) -> Result<Vec<f64>, CliError> {
    if interior.len() != cfg.vars.len() {
        return Err(CliError::Usage(format!(
            "--interior has {} coordinates but there are {} variables",
            interior.len(),
            cfg.vars.len()
        )));
    }
    Ok(interior.to_vec())
}

pub fn decompose(cfg: &RunConfig, psi: &str, f: &str, slack: u32) -> Result<Report, CliError> {
    let (psi_p, f_p) = (parse(cfg, psi)?, parse(cfg, f)?);
    let mut config = base_config(cfg);
    config.insert("psi".into(), json!(psi));
    config.insert("f".into(), json!(f));
    config.insert("slack".into(), json!(slack));
    let v = &cfg.vars;
    match fischer_decompose(&psi_p, &f_p, slack) {
        Ok(cert) => {
            let c = cert.verify();
            let mut text = String::new();
            let _ = writeln!(text, "psi = {}", format_polynomial(&cert.psi, v));
            let _ = writeln!(text, "f   = {}", format_polynomial(&cert.f, v));
            let _ = writeln!(text, "q   = {}", format_polynomial(&cert.q, v));
            let _ = writeln!(text, "h   = {}", format_polynomial(&cert.h, v));
            let _ = writeln!(text, "slack used: {}", cert.slack_used);
            let _ = writeln!(text, "f = psi*q + h exactly: {}", c.identity_exact);
            let _ = writeln!(text, "h harmonic exactly: {}", c.h_harmonic_exact);
            Ok(Report {
                command: "decompose",
                config,
                result: json!({
                    "status": "DECOMPOSED",
                    "psi": poly_value(&cert.psi, v),
                    "f": poly_value(&cert.f, v),
                    "q": poly_value(&cert.q, v),
                    "h": poly_value(&cert.h, v),
                    "slack_used": cert.slack_used,
                }),
                checks: checks([("identity_exact", c.identity_exact), ("h_harmonic_exact", c.h_harmonic_exact)]),
                text,
                table: None,
                outcome: outcome_if(c.passed()),
            })
        }
        Err(Error::NoDecompositionFound { slack }) => Ok(Report {
            command: "decompose",
            config,
            result: json!({ "status": "UNDETERMINED", "max_slack_tried": slack }),
            checks: Map::new(),
            text: format!("UNDETERMINED: no decomposition found with slack <= {slack}\n"),
            table: None,
            outcome: Outcome::Undetermined,
        }),
        Err(e) => Err(e.into()),
    }
}

fn verdict_value(v: &DegreeVerdict, vars: &[String]) -> Value {
    match &v.verdict {
        Verdict::SurjectiveWithSlack { slack } => {
            json!({ "target_degree": v.target_degree, "status": "SURJECTIVE_WITH_SLACK", "slack": slack })
        }
        Verdict::NotSurjective { witness } => {
            json!({ "target_degree": v.target_degree, "status": "NOT_SURJECTIVE", "witness": poly_value(witness, vars) })
        }
        Verdict::Undetermined { witness } => {
            json!({ "target_degree": v.target_degree, "status": "UNDETERMINED", "witness": poly_value(witness, vars) })
        }
    }
}

fn profile_report(cfg: &RunConfig, command: &'static str, config: Map<String, Value>, prof: &RankProfile) -> Report {
    let v = &cfg.vars;
    let rows: Vec<Value> = prof.rows.iter().map(|r| serde_json::to_value(r).expect("rank rows serialize")).collect();
    let verdicts: Vec<Value> = prof.verdicts.iter().map(|d| verdict_value(d, v)).collect();
    let not_surjective = prof.verdicts.iter().any(|d| matches!(d.verdict, Verdict::NotSurjective { .. }));
    let outcome = if not_surjective {
        Outcome::Failed
    } else if prof.any_undetermined() {
        Outcome::Undetermined
    } else {
        Outcome::Verified
    };

    let mode = match prof.mode {
        ProfileMode::Homogeneous => "homogeneous",
        ProfileMode::Filtered => "filtered",
    };
    let mut text = format!("psi = {}\nmode: {mode}\n", format_polynomial(&prof.psi, v));
    text.push_str("  n  source  slack  dim_src  dim_tgt  rank  surjective\n");
    for r in &prof.rows {
        let _ = writeln!(
            text,
            "{:>3}  {:>6}  {:>5}  {:>7}  {:>7}  {:>4}  {}",
            r.target_degree, r.source_degree, r.slack, r.dim_source, r.dim_target, r.rank, r.surjective_onto_target
        );
    }
    for d in &prof.verdicts {
        let line = match &d.verdict {
            Verdict::SurjectiveWithSlack { slack } => format!("SURJECTIVE_WITH_SLACK {slack}"),
            Verdict::NotSurjective { witness } => format!("NOT_SURJECTIVE, witness {}", format_polynomial(witness, v)),
            Verdict::Undetermined { witness } => format!("UNDETERMINED, witness {}", format_polynomial(witness, v)),
        };
        let _ = writeln!(text, "degree {}: {line}", d.target_degree);
    }

    let header = ["target_degree", "source_degree", "slack", "dim_source", "dim_target", "rank", "surjective"];
    let table_rows = prof
        .rows
        .iter()
        .map(|r| {
            vec![
                r.target_degree.to_string(),
                r.source_degree.to_string(),
                r.slack.to_string(),
                r.dim_source.to_string(),
                r.dim_target.to_string(),
                r.rank.to_string(),
                r.surjective_onto_target.to_string(),
            ]
        })
        .collect();

    Report {
        command,
        config,
        result: json!({
            "psi": poly_value(&prof.psi, v),
            "mode": prof.mode,
            "rows": rows,
            "verdicts": verdicts,
            "max_slack_used": prof.max_slack_used(),
        }),
        checks: checks([("all_surjective", prof.all_surjective()), ("any_undetermined", prof.any_undetermined())]),
        text,
        table: Some((header.iter().map(|s| s.to_string()).collect(), table_rows)),
        outcome,
    }
}

pub fn rank_profile(
    cfg: &RunConfig,
    psi: &str,
    max_degree: u32,
    slack: u32,
    mode: ProfileMode,
) -> Result<Report, CliError> {
    let psi_p = parse(cfg, psi)?;
    let prof = fischer::rank_profile(&psi_p, max_degree, slack, mode)?;
    let mut config = base_config(cfg);
    config.insert("psi".into(), json!(psi));
    config.insert("max_degree".into(), json!(max_degree));
    config.insert("slack".into(), json!(slack));
    config.insert("mode".into(), json!(mode));
    Ok(profile_report(cfg, "rank-profile", config, &prof))
}

pub fn khavinson(cfg: &RunConfig, phi: &[String], max_degree: u32, slack: u32) -> Result<Report, CliError> {
    if cfg.vars.len() != 3 {
        return Err(CliError::Usage("khavinson needs exactly three variables".into()));
    }
    if phi.is_empty() {
        return Err(CliError::Usage("--phi needs at least one coefficient".into()));
    }
    let coeffs = phi
        .iter()
        .map(|t| {
            let c = parse(cfg, t)?;
            if !c.is_constant() {
                return Err(CliError::Usage(format!("phi coefficient `{t}` is not a constant")));
            }
            Ok(c.constant_term())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let psi = khavinson_psi(&coeffs)?;
    let prof = fischer::rank_profile(&psi, max_degree, slack, ProfileMode::Filtered)?;
    let mut config = base_config(cfg);
    config.insert("phi".into(), json!(phi));
    config.insert("max_degree".into(), json!(max_degree));
    config.insert("slack".into(), json!(slack));
    config.insert("mode".into(), json!(ProfileMode::Filtered));
    Ok(profile_report(cfg, "khavinson", config, &prof))
}

pub fn dirichlet(cfg: &RunConfig, psi: &str, f: &str, interior: &[f64], samples: usize) -> Result<Report, CliError> {
    let (psi_p, f_p) = (parse(cfg, psi)?, parse(cfg, f)?);
    let point = interior_point(cfg, interior)?;
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let domain = QuadricDomain::new(psi_p, point)?;
    let sol = dirichlet_solve(&domain, &f_p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // A cloned generator makes both calls see the same boundary points.
    let ver = verify_solution(&sol, samples, cfg.tol_boundary, cfg.tol_root, &mut rng.clone())?;
    let pts = sample_residuals(&sol, samples, cfg.tol_root, &mut rng)?;
    let within = ver.boundary_max_error < cfg.tol_boundary;

    let v = &cfg.vars;
    let mut config = base_config(cfg);
    config.insert("psi".into(), json!(psi));
    config.insert("f".into(), json!(f));
    config.insert("interior".into(), json!(interior.iter().map(|x| float(*x)).collect::<Vec<_>>()));
    config.insert("samples".into(), json!(samples));

    let mut text = String::new();
    let _ = writeln!(text, "psi = {}", format_polynomial(domain.psi(), v));
    let _ = writeln!(text, "f   = {}", format_polynomial(&sol.f, v));
    let _ = writeln!(text, "h   = {}", format_polynomial(&sol.h, v));
    let _ = writeln!(text, "q   = {}", format_polynomial(&sol.q, v));
    let _ = writeln!(text, "h harmonic exactly: {}", ver.harmonic_exact);
    let _ = writeln!(text, "f - h = psi*q exactly: {}", ver.identity_exact);
    let _ = writeln!(text, "max |f - h| on {} boundary samples: {:e}", ver.samples, ver.boundary_max_error);

    let mut header = v.clone();
    header.push("psi".into());
    header.push("residual".into());
    let table_rows = pts
        .iter()
        .map(|s| {
            let mut r: Vec<String> = s.point.iter().map(|x| float(*x)).collect();
            r.push(float(s.psi));
            r.push(float(s.residual));
            r
        })
        .collect();
    let sample_values: Vec<Value> = pts
        .iter()
        .map(|s| {
            json!({
                "point": s.point.iter().map(|x| float(*x)).collect::<Vec<_>>(),
                "psi": float(s.psi),
                "residual": float(s.residual),
            })
        })
        .collect();

    Ok(Report {
        command: "dirichlet",
        config,
        result: json!({
            "psi": poly_value(domain.psi(), v),
            "ellipsoidal": domain.is_ellipsoidal(),
            "f": poly_value(&sol.f, v),
            "h": poly_value(&sol.h, v),
            "q": poly_value(&sol.q, v),
            "boundary_max_error": float(ver.boundary_max_error),
            "samples": sample_values,
        }),
        checks: checks([
            ("harmonic_exact", ver.harmonic_exact),
            ("identity_exact", ver.identity_exact),
            ("boundary_within_tolerance", within),
        ]),
        text,
        table: Some((header, table_rows)),
        outcome: outcome_if(ver.passed),
    })
}

pub fn fischer_theorem(cfg: &RunConfig, p: &str, max_degree: u32) -> Result<Report, CliError> {
    let p_poly = parse(cfg, p)?;
    let rep = fischer_theorem_check(&p_poly, max_degree)?;
    let ok = rep.all_nonsingular();
    let mut config = base_config(cfg);
    config.insert("p".into(), json!(p));
    config.insert("max_degree".into(), json!(max_degree));

    let mut text = format!("P = {}\n  m   dim  rank  nonsingular\n", format_polynomial(&rep.p, &cfg.vars));
    for r in &rep.rows {
        let _ = writeln!(text, "{:>3}  {:>4}  {:>4}  {}", r.degree, r.dim, r.rank, r.nonsingular);
    }
    let header = ["degree", "dim", "rank", "nonsingular"].iter().map(|s| s.to_string()).collect();
    let table_rows = rep
        .rows
        .iter()
        .map(|r| vec![r.degree.to_string(), r.dim.to_string(), r.rank.to_string(), r.nonsingular.to_string()])
        .collect();
    Ok(Report {
        command: "fischer-theorem",
        config,
        result: json!({
            "p": poly_value(&rep.p, &cfg.vars),
            "rows": serde_json::to_value(&rep.rows).expect("rows serialize"),
        }),
        checks: checks([("all_nonsingular", ok)]),
        text,
        table: Some((header, table_rows)),
        outcome: outcome_if(ok),
    })
}

pub fn ks_residual(cfg: &RunConfig, psi: &str, interior: &[f64]) -> Result<Report, CliError> {
    let psi_p = parse(cfg, psi)?;
    let point = interior_point(cfg, interior)?;
    let domain = QuadricDomain::new(psi_p, point)?;
    let r = dirichlet::ks_residual(&domain)?;
    let v = &cfg.vars;
    let mut config = base_config(cfg);
    config.insert("psi".into(), json!(psi));
    config.insert("interior".into(), json!(interior.iter().map(|x| float(*x)).collect::<Vec<_>>()));

    let mut text = String::new();
    let _ = writeln!(text, "psi = {}", format_polynomial(domain.psi(), v));
    let _ = writeln!(text, "|x|^2 - h = {}", format_polynomial(&r.residual, v));
    match &r.factor {
        Some(c) => {
            let _ = writeln!(text, "factor c = {c}");
        }
        None => text.push_str("factor c: none\n"),
    }
    let _ = writeln!(text, "|x|^2 - h = c*psi exactly: {}", r.proportional_to_psi);
    Ok(Report {
        command: "ks-residual",
        config,
        result: json!({
            "psi": poly_value(domain.psi(), v),
            "residual": poly_value(&r.residual, v),
            "factor": r.factor.as_ref().map(scalar_value),
        }),
        checks: checks([("proportional_to_psi", r.proportional_to_psi)]),
        text,
        table: None,
        outcome: outcome_if(r.proportional_to_psi),
    })
}
