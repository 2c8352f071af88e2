//! Browser bindings for the fischerlab demo page.
//!
//! Each exported function takes plain strings and numbers and returns a JSON
//! document. The `api` functions hold the logic and are usable natively.

use wasm_bindgen::prelude::*;

pub mod api {
    use fischerlab::expr::validate_var_names;
    use fischerlab::fischer::{rank_profile as profile, Verdict};
    use fischerlab::{
        dirichlet_solve, fischer_decompose, format_polynomial, parse_polynomial, sample_residuals, Error, Field, Poly,
        ProfileMode, QuadricDomain,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use serde_json::{json, Value};

    /// Largest grid side accepted by [`dirichlet`].
    pub const MAX_GRID: usize = 200;

    fn vars(list: &str) -> Result<Vec<String>, String> {
        let v: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
        validate_var_names(&v).map_err(|e| e.to_string())?;
        Ok(v)
    }

    fn field(name: &str) -> Result<Field, String> {
        name.parse()
    }

    fn poly(text: &str, vars: &[String], f: Field) -> Result<Poly, String> {
        parse_polynomial(text, vars, f).map_err(|e| e.to_string())
    }

    fn err(e: Error) -> String {
        e.to_string()
    }

    fn render(v: Value) -> String {
        serde_json::to_string(&v).expect("json values serialize")
    }

    pub fn decompose(psi: &str, f: &str, var_list: &str, field_name: &str, slack: u32) -> Result<String, String> {
        let (vs, fld) = (vars(var_list)?, field(field_name)?);
        let (psi_p, f_p) = (poly(psi, &vs, fld)?, poly(f, &vs, fld)?);
        match fischer_decompose(&psi_p, &f_p, slack) {
            Ok(cert) => {
                let c = cert.verify();
                Ok(render(json!({
                    "status": "DECOMPOSED",
                    "psi": format_polynomial(&cert.psi, &vs),
                    "f": format_polynomial(&cert.f, &vs),
                    "q": format_polynomial(&cert.q, &vs),
                    "h": format_polynomial(&cert.h, &vs),
                    "slack_used": cert.slack_used,
                    "identity_exact": c.identity_exact,
                    "h_harmonic_exact": c.h_harmonic_exact,
                })))
            }
            Err(Error::NoDecompositionFound { slack }) => {
                Ok(render(json!({ "status": "UNDETERMINED", "max_slack_tried": slack })))
            }
            Err(e) => Err(err(e)),
        }
    }

    pub fn rank_profile(
        psi: &str,
        var_list: &str,
        field_name: &str,
        max_degree: u32,
        slack: u32,
        mode: &str,
    ) -> Result<String, String> {
        let (vs, fld) = (vars(var_list)?, field(field_name)?);
        let mode: ProfileMode = mode.parse()?;
        let prof = profile(&poly(psi, &vs, fld)?, max_degree, slack, mode).map_err(err)?;
        let rows: Vec<Value> =
            prof.rows.iter().map(|r| serde_json::to_value(r).expect("rank rows serialize")).collect();
        let verdicts: Vec<Value> = prof
            .verdicts
            .iter()
            .map(|d| match &d.verdict {
                Verdict::SurjectiveWithSlack { slack } => {
                    json!({ "target_degree": d.target_degree, "status": "SURJECTIVE_WITH_SLACK", "slack": slack })
                }
                Verdict::NotSurjective { witness } => json!({
                    "target_degree": d.target_degree,
                    "status": "NOT_SURJECTIVE",
                    "witness": format_polynomial(witness, &vs),
                }),
                Verdict::Undetermined { witness } => json!({
                    "target_degree": d.target_degree,
                    "status": "UNDETERMINED",
                    "witness": format_polynomial(witness, &vs),
                }),
            })
            .collect();
        Ok(render(json!({
            "psi": format_polynomial(&prof.psi, &vs),
            "rows": rows,
            "verdicts": verdicts,
            "all_surjective": prof.all_surjective(),
        })))
    }

    /// Solves the Dirichlet problem on a planar quadric and returns `h`, boundary
    /// samples and `h` on a `grid x grid` lattice over the box spanned by the
    /// samples (`null` outside the domain).
    #[allow(clippy::too_many_arguments)]
    pub fn dirichlet(
        psi: &str,
        f: &str,
        var_list: &str,
        interior: &[f64],
        samples: usize,
        seed: u64,
        tol_root: f64,
        grid: usize,
    ) -> Result<String, String> {
        let vs = vars(var_list)?;
        if vs.len() != 2 {
            return Err("the demo plots planar domains: use two variables".into());
        }
        if samples == 0 || !(2..=MAX_GRID).contains(&grid) {
            return Err(format!("need samples > 0 and 2 <= grid <= {MAX_GRID}"));
        }
        let (psi_p, f_p) = (poly(psi, &vs, Field::Q)?, poly(f, &vs, Field::Q)?);
        let domain = QuadricDomain::new(psi_p, interior.to_vec()).map_err(err)?;
        let sol = dirichlet_solve(&domain, &f_p).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = sample_residuals(&sol, samples, tol_root, &mut rng).map_err(err)?;
        let max_error = pts.iter().map(|s| s.residual.abs()).fold(0.0, f64::max);

        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for s in &pts {
            for k in 0..2 {
                lo[k] = lo[k].min(s.point[k]);
                hi[k] = hi[k].max(s.point[k]);
            }
        }
        let mut values = Vec::with_capacity(grid * grid);
        for j in 0..grid {
            for i in 0..grid {
                let p = [
                    lo[0] + (hi[0] - lo[0]) * i as f64 / (grid - 1) as f64,
                    lo[1] + (hi[1] - lo[1]) * j as f64 / (grid - 1) as f64,
                ];
                let inside = domain.psi().evaluate_f64(&p).map_err(err)? <= 0.0;
                values.push(if inside { Some(sol.h.evaluate_f64(&p).map_err(err)?) } else { None });
            }
        }

        let boundary: Vec<Value> = pts
            .iter()
            .map(|s| {
                let f_val = f_p.evaluate_f64(&s.point).unwrap_or(f64::NAN);
                json!({ "x": s.point[0], "y": s.point[1], "f": f_val, "residual": s.residual })
            })
            .collect();
        Ok(render(json!({
            "psi": format_polynomial(domain.psi(), &vs),
            "f": format_polynomial(&sol.f, &vs),
            "h": format_polynomial(&sol.h, &vs),
            "q": format_polynomial(&sol.q, &vs),
            "harmonic_exact": sol.verification.harmonic_exact,
            "identity_exact": sol.verification.identity_exact,
            "boundary_max_error": max_error,
            "boundary": boundary,
            "grid": { "n": grid, "min": lo, "max": hi, "h": values },
        })))
    }
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn decompose(psi: &str, f: &str, vars: &str, field: &str, slack: u32) -> Result<String, JsValue> {
    js(api::decompose(psi, f, vars, field, slack))
}

#[wasm_bindgen(js_name = rankProfile)]
pub fn rank_profile(
    psi: &str,
    vars: &str,
    field: &str,
    max_degree: u32,
    slack: u32,
    mode: &str,
) -> Result<String, JsValue> {
    js(api::rank_profile(psi, vars, field, max_degree, slack, mode))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn dirichlet(
    psi: &str,
    f: &str,
    vars: &str,
    interior_x: f64,
    interior_y: f64,
    samples: usize,
    seed: u32,
    grid: usize,
) -> Result<String, JsValue> {
    let tol = fischerlab::dirichlet::DEFAULT_TOL_ROOT;
    js(api::dirichlet(psi, f, vars, &[interior_x, interior_y], samples, seed as u64, tol, grid))
}
