//! Subcommand bodies. Each returns the text to print and the exit code.

use std::fmt::Write as _;
use std::sync::Arc;

use hyperell_core::integrate::{
    differentiate, hyperelliptic_to_elliptic_with, EllipticExpression, HyperellipticIntegrand,
    IntegrateOptions, SCHEMA_VERSION,
};
use hyperell_core::morphisms::{
    elliptic_factors_with, independence_rank, verify_morphism, EllipticMorphism, SearchOptions,
};
use hyperell_core::poly::RationalFunction;
use hyperell_core::solve::SolveOptions;
use hyperell_core::text::{field_definitions, field_to_json, parse_poly, parse_tower};
use hyperell_core::zeta::{
    best_rank_bound, normalize_curve, odd_primes_up_to, psi_power, rank_bound_with_budget,
    zeta_psi, HyperellipticCurve, ZetaPsi, DEFAULT_COUNT_BUDGET,
};
use hyperell_core::{Error, NumberField};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;
pub const EXIT_FAIL: u8 = 4;

pub struct Config {
    pub fields: Vec<String>,
    pub json: bool,
    pub budget_tower: Option<usize>,
    pub budget_count: Option<u128>,
}

impl Config {
    fn count_budget(&self) -> u128 {
        self.budget_count.unwrap_or(DEFAULT_COUNT_BUDGET)
    }

    fn solve_options(&self) -> SolveOptions {
        let mut o = SolveOptions::default();
        if let Some(t) = self.budget_tower {
            o.tower_budget = t;
        }
        o
    }
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => EXIT_RESOURCE,
            Error::NotDecomposable { .. } => EXIT_FAIL,
            _ => EXIT_PARSE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<Outcome, CliError>;

fn ok(stdout: String) -> CliResult {
    Ok(Outcome {
        stdout,
        code: EXIT_OK,
    })
}

fn parse_err(message: String) -> CliError {
    CliError {
        code: EXIT_PARSE,
        message,
    }
}

fn emit_json(v: &Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("serializable")
    )
}

fn base_field(cfg: &Config) -> Result<Arc<NumberField>, CliError> {
    Ok(parse_tower(&cfg.fields)?)
}

fn parse_curve(s: &str, field: &Arc<NumberField>) -> Result<HyperellipticCurve, CliError> {
    Ok(normalize_curve(&parse_poly(s, "x", field)?)?)
}

/// One line describing the change of variables, when there is one.
fn model_line(c: &HyperellipticCurve) -> String {
    let rec = c.record();
    if rec.is_identity() {
        String::new()
    } else {
        format!(
            "model: {c} with x_raw = {}, y_raw = ({})*y\n",
            rec.x_of_u().fmt_var("x"),
            rec.rho.fmt_var("x")
        )
    }
}

fn curve_json(c: &HyperellipticCurve) -> Value {
    json!({ "field": field_to_json(c.field()), "S": c.s().fmt_var("x") })
}

fn primes_or_default(primes: &[u64]) -> Vec<u64> {
    if primes.is_empty() {
        odd_primes_up_to(31)
    } else {
        primes.to_vec()
    }
}

pub fn rank_bound(curve: &str, primes: &[u64], cfg: &Config) -> CliResult {
    let field = base_field(cfg)?;
    let c = parse_curve(curve, &field)?;
    let mut bounds = vec![];
    for p in primes_or_default(primes) {
        bounds.push(rank_bound_with_budget(&c, p, cfg.count_budget())?);
    }
    let min = bounds.iter().filter_map(|b| b.value).min();
    if cfg.json {
        let min = min.map(|v| json!(v)).unwrap_or_else(|| json!("UNBOUNDED"));
        let bs: Vec<Value> = bounds.iter().map(|b| b.to_json()).collect();
        return ok(emit_json(
            &json!({ "schemaVersion": SCHEMA_VERSION, "curve": curve_json(&c), "bounds": bs, "min": min }),
        ));
    }
    let mut out = model_line(&c);
    let _ = writeln!(out, "curve: {c}");
    for b in &bounds {
        let _ = writeln!(out, "p = {}: {b}", b.p);
    }
    match min {
        Some(v) => {
            let _ = writeln!(out, "bound: {v}");
        }
        None => out.push_str("bound: UNBOUNDED\n"),
    }
    ok(out)
}

fn rank_hint(
    c: &HyperellipticCurve,
    primes: &[u64],
    cfg: &Config,
) -> Result<Option<usize>, CliError> {
    if c.rational_coeffs().is_err() {
        return Ok(None);
    }
    Ok(best_rank_bound(c, &primes_or_default(primes), cfg.count_budget())?.and_then(|b| b.value))
}

fn search(
    c: &HyperellipticCurve,
    bound: usize,
    primes: &[u64],
    cfg: &Config,
) -> Result<Vec<EllipticMorphism>, CliError> {
    if bound < 2 {
        return Err(parse_err("the degree bound must be at least 2".into()));
    }
    let opts = SearchOptions {
        solve: cfg.solve_options(),
        rank_hint: rank_hint(c, primes, cfg)?,
        ..Default::default()
    };
    let found = elliptic_factors_with(c, bound, &opts)?;
    if let Some(i) = found.iter().position(|m| !verify_morphism(c, m)) {
        return Err(CliError {
            code: EXIT_FAIL,
            message: format!("morphism {i} failed verification"),
        });
    }
    Ok(found)
}

fn morphism_text(i: usize, m: &EllipticMorphism) -> String {
    let defs = field_definitions(m.field());
    let field = if defs.is_empty() {
        String::new()
    } else {
        format!("\n  where {} = 0", defs.join(" = 0, "))
    };
    format!(
        "{i}: kappa = {}, F = {}, G = {}, j = {}{field}\n",
        m.kappa,
        m.f,
        m.g,
        m.j_invariant()
    )
}

pub fn factors(curve: &str, bound: usize, primes: &[u64], cfg: &Config) -> CliResult {
    let field = base_field(cfg)?;
    let c = parse_curve(curve, &field)?;
    let found = search(&c, bound, primes, cfg)?;
    if cfg.json {
        let ms: Vec<Value> = found.iter().map(|m| m.to_json()).collect();
        return ok(emit_json(
            &json!({ "schemaVersion": SCHEMA_VERSION, "curve": curve_json(&c), "morphisms": ms }),
        ));
    }
    let mut out = model_line(&c);
    let _ = writeln!(out, "curve: {c}");
    let _ = writeln!(
        out,
        "morphisms: {} (independent: {})",
        found.len(),
        independence_rank(&found)?
    );
    for (i, m) in found.iter().enumerate() {
        out.push_str(&morphism_text(i, m));
    }
    ok(out)
}

fn read_json(path: &str) -> Result<Value, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| parse_err(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{path} is not valid JSON: {e}")))
}

fn load_morphisms(path: &str, c: &HyperellipticCurve) -> Result<Vec<EllipticMorphism>, CliError> {
    let v = read_json(path)?;
    let list = v.get("morphisms").unwrap_or(&v);
    let items = list
        .as_array()
        .ok_or_else(|| parse_err("expected a list of morphisms".into()))?;
    let mut out = vec![];
    for (i, item) in items.iter().enumerate() {
        let m = EllipticMorphism::from_json(item)?;
        if !verify_morphism(c, &m) {
            return Err(parse_err(format!(
                "morphism {i} does not satisfy S*G^2 = F(F-1)(F-kappa) on {c}"
            )));
        }
        out.push(m);
    }
    Ok(out)
}

fn fail(stage: &str, reason: &str, cfg: &Config) -> CliResult {
    let stdout = if cfg.json {
        emit_json(
            &json!({ "schemaVersion": SCHEMA_VERSION, "oracle": "FAIL", "stage": stage, "reason": reason }),
        )
    } else {
        format!("FAIL ({stage}): {reason}\n")
    };
    Ok(Outcome {
        stdout,
        code: EXIT_FAIL,
    })
}

fn oracle_passes(e: &EllipticExpression, i: &HyperellipticIntegrand) -> Result<bool, Error> {
    let d = differentiate(e)?;
    let base = &e.base;
    let f = i.f.try_map(&base.zero(), |c| base.embed(c))?;
    let expect = HyperellipticIntegrand::from_rational(f, i.curve.clone())?.to_curve_function()?;
    Ok(d == expect)
}

pub fn integrate(
    num: &str,
    den: &str,
    radicand: &str,
    morphisms: Option<&str>,
    bound: usize,
    primes: &[u64],
    cfg: &Config,
) -> CliResult {
    let field = base_field(cfg)?;
    let p = parse_poly(num, "x", &field)?;
    let q = parse_poly(den, "x", &field)?;
    let raw = parse_poly(radicand, "x", &field)?;
    let f = RationalFunction::new(p, q)?;
    let i = HyperellipticIntegrand::normalized(&f, &raw)?;
    let l = match morphisms {
        Some(path) => load_morphisms(path, &i.curve)?,
        None => search(&i.curve, bound, primes, cfg)?,
    };
    let opts = IntegrateOptions {
        solve: cfg.solve_options(),
    };
    let e = match hyperelliptic_to_elliptic_with(&i, &l, &opts) {
        Ok(e) => e,
        Err(Error::NotDecomposable { stage, reason }) => {
            return fail(&stage.to_string(), &reason, cfg)
        }
        Err(Error::Resource(r)) => {
            return Err(CliError {
                code: EXIT_RESOURCE,
                message: r,
            })
        }
        Err(Error::Parse(r)) => return Err(parse_err(r)),
        Err(other) => return fail("oracle", &other.to_string(), cfg),
    };
    match oracle_passes(&e, &i) {
        Ok(true) => {}
        Ok(false) => return fail("oracle", "derivative differs from the integrand", cfg),
        Err(err) => return fail("oracle", &err.to_string(), cfg),
    }
    if cfg.json {
        let v = json!({
            "schemaVersion": SCHEMA_VERSION,
            "integrand": { "num": i.p().fmt_var("x"), "den": i.q().fmt_var("x") },
            "expression": e.to_json(),
            "oracle": "PASS",
        });
        return ok(emit_json(&v));
    }
    let mut out = model_line(&i.curve);
    let _ = writeln!(out, "integrand: {i}");
    let _ = writeln!(out, "{}", e.to_text());
    out.push_str("PASS\n");
    ok(out)
}

pub fn verify(path: &str, num: Option<&str>, den: Option<&str>, cfg: &Config) -> CliResult {
    let v = read_json(path)?;
    let e = EllipticExpression::from_json(v.get("expression").unwrap_or(&v))?;
    let d = match differentiate(&e) {
        Ok(d) => d,
        Err(err) => return fail("oracle", &err.to_string(), cfg),
    };
    let derived = HyperellipticIntegrand::from_curve_function(&d, &e.curve);
    let given = v.get("integrand");
    let text_of = |key: &str, arg: Option<&str>| -> Option<String> {
        arg.map(String::from)
            .or_else(|| given.and_then(|g| g[key].as_str().map(String::from)))
    };
    let (num, den) = (text_of("num", num), text_of("den", den));
    let verdict = match (&derived, num.as_deref(), den.as_deref()) {
        (Err(_), _, _) => false,
        (Ok(_), None, None) => true,
        (Ok(_), n, d) => {
            let p = parse_poly(n.unwrap_or("1"), "x", &e.base)?;
            let q = parse_poly(d.unwrap_or("1"), "x", &e.base)?;
            oracle_passes(&e, &HyperellipticIntegrand::new(p, q, e.curve.clone())?)?
        }
    };
    let shown = derived
        .as_ref()
        .map(|g| g.to_string())
        .unwrap_or_else(|_| d.to_string());
    if cfg.json {
        let status = if verdict { "PASS" } else { "FAIL" };
        let v = json!({ "schemaVersion": SCHEMA_VERSION, "derivative": shown, "oracle": status });
        return Ok(Outcome {
            stdout: emit_json(&v),
            code: if verdict { EXIT_OK } else { EXIT_FAIL },
        });
    }
    let status = if verdict { "PASS" } else { "FAIL" };
    Ok(Outcome {
        stdout: format!("derivative: {shown}\n{status}\n"),
        code: if verdict { EXIT_OK } else { EXIT_FAIL },
    })
}

fn psi_text(psi: &ZetaPsi) -> String {
    let coeffs: Vec<String> = psi.coefficients.iter().map(|c| c.to_string()).collect();
    let mut out = format!("q = {}: Psi = [{}]", psi.q(), coeffs.join(", "));
    if !psi.counts.is_empty() {
        let counts: Vec<String> = psi.counts.iter().map(|c| c.to_string()).collect();
        let _ = write!(out, ", N = [{}]", counts.join(", "));
    }
    let _ = writeln!(
        out,
        ", functional equation: {}",
        if psi.satisfies_functional_equation() {
            "ok"
        } else {
            "FAILS"
        }
    );
    out
}

pub fn zeta(curve: &str, primes: &[u64], power: Option<u32>, cfg: &Config) -> CliResult {
    let field = base_field(cfg)?;
    let c = parse_curve(curve, &field)?;
    let mut psis: Vec<ZetaPsi> = vec![];
    for &p in primes {
        let psi = zeta_psi(&c, p, cfg.count_budget())?;
        if let Some(k) = power {
            let pk = psi_power(&psi, k)?;
            psis.push(psi);
            psis.push(pk);
        } else {
            psis.push(psi);
        }
    }
    if cfg.json {
        let ps: Vec<Value> = psis.iter().map(|p| p.to_json()).collect();
        return ok(emit_json(
            &json!({ "schemaVersion": SCHEMA_VERSION, "curve": curve_json(&c), "psi": ps }),
        ));
    }
    let mut out = model_line(&c);
    let _ = writeln!(out, "curve: {c}");
    for psi in &psis {
        out.push_str(&psi_text(psi));
    }
    ok(out)
}
