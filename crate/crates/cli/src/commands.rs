use std::collections::BTreeMap;
use std::io::Write;

use mgk_core::exact::{higher_stirling_coeffs, weierstrass_bundle, ConstTag};
use mgk_core::multigamma::{
    log_gn, log_gn_euler_maclaurin, log_gn_higher_stirling, log_gn_weierstrass,
    vigneras_property_check, GnMethod, GnRequest, Truncation, DEFAULT_K,
};
use mgk_core::qgamma::{
    classical_limit_sweep, log_qgamma_moak, log_qgn_euler_maclaurin, log_qgn_product,
    log_qgn_product_adaptive, SweepTable,
};
use mgk_core::zeta::zeta_deriv_neg_eval;
use mgk_core::{Complex64, EvalResult, QContext};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;

/// Residual floor for `xcheck`.
pub const XCHECK_TOL: f64 = 1e-6;

/// Failure classes with their exit statuses.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    NotConverged(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
            CliError::NotConverged(_) => 3,
        }
    }
}

impl From<mgk_core::Error> for CliError {
    fn from(e: mgk_core::Error) -> Self {
        match e {
            e @ mgk_core::Error::Divergent(_) => CliError::NotConverged(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

type Res<T> = Result<T, CliError>;

/// Emitted artifact plus whether every numeric part converged.
pub struct Artifact {
    pub body: String,
    pub converged: bool,
}

pub fn run(cmd: Command) -> Res<()> {
    let (out, artifact) = match cmd {
        Command::Eval(a) => (a.output.clone(), eval(&a)?),
        Command::Qeval(a) => (a.output.clone(), qeval(&a)?),
        Command::Xcheck(a) => (a.output.clone(), xcheck(&a)?),
        Command::Sweep(a) => (a.output.clone(), sweep(&a)?),
        Command::Coeffs(a) => (a.output.clone(), coeffs(&a)?),
        Command::ZetaTable(a) => (a.output.clone(), zeta_table(&a)?),
        Command::Props(a) => (a.output.clone(), props(&a)?),
    };
    write_out(&out, &artifact.body)?;
    if artifact.converged {
        Ok(())
    } else {
        Err(CliError::NotConverged("a result did not meet its stopping rule".into()))
    }
}

fn write_out(out: &OutputArgs, body: &str) -> Res<()> {
    match &out.out {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(body.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn format_of(out: &OutputArgs, default: Format, allowed: &[Format]) -> Res<Format> {
    let f = out.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("format {f:?} is not available for this verb").to_lowercase()))
    }
}

fn forbid(present: bool, what: &str, context: &str) -> Res<()> {
    if present {
        Err(CliError::Usage(format!("{what} is not valid with {context}")))
    } else {
        Ok(())
    }
}

/// Product length from `MGK_DEFAULT_K`, falling back to `fallback`.
pub fn default_k(fallback: usize) -> Res<usize> {
    match std::env::var("MGK_DEFAULT_K") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(k),
            _ => Err(CliError::Usage(format!("MGK_DEFAULT_K must be a positive integer, got '{s}'"))),
        },
        Err(_) => Ok(fallback),
    }
}

fn json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn csv_string<T: Serialize>(rows: &[T]) -> Res<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn value_json(v: Complex64, real: bool) -> Value {
    if real {
        json!(v.re)
    } else {
        json!([v.re, v.im])
    }
}

#[derive(Serialize)]
struct EvalOut {
    n: usize,
    z: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<f64>,
    method: String,
    value: Value,
    error_bound: f64,
    terms_used: usize,
    converged: bool,
}

impl EvalOut {
    fn new(n: usize, z: Complex64, q: Option<f64>, r: &EvalResult<Complex64>) -> Self {
        EvalOut {
            n,
            z: [z.re, z.im],
            q,
            method: r.method.to_string(),
            value: value_json(r.value, z.im == 0.0),
            error_bound: r.error_bound,
            terms_used: r.terms_used,
            converged: r.converged,
        }
    }

    fn render(&self, f: Format) -> String {
        match f {
            Format::Text => format!(
                "value = {}\nerror_bound = {:?}\nmethod = {}\nterms_used = {}\nconverged = {}\n",
                self.value, self.error_bound, self.method, self.terms_used, self.converged
            ),
            _ => json_string(self),
        }
    }
}

fn eval(a: &EvalArgs) -> Res<Artifact> {
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Text])?;
    let m = a.method;
    forbid(a.k.is_some() && m != GnMethodArg::Weierstrass, "--K", "this method")?;
    forbid(a.m.is_some() && m != GnMethodArg::Em, "--m", "this method")?;
    forbid(a.terms.is_some() && m != GnMethodArg::Stirling, "--terms", "this method")?;
    let (method, budget) = match m {
        GnMethodArg::Auto => (GnMethod::Auto, None),
        GnMethodArg::Weierstrass => (GnMethod::Weierstrass, Some(a.k.map_or_else(|| default_k(DEFAULT_K), Ok)?)),
        GnMethodArg::Stirling => (GnMethod::Stirling, a.terms),
        GnMethodArg::Em => (GnMethod::EulerMaclaurin, a.m),
    };
    let mut req = GnRequest::new(a.n, a.z).method(method);
    if let Some(b) = budget {
        req = req.budget(b);
    }
    let r = req.evaluate()?;
    let out = EvalOut::new(a.n, a.z, None, &r);
    Ok(Artifact { body: out.render(f), converged: r.converged })
}

fn to_complex(r: EvalResult<f64>) -> EvalResult<Complex64> {
    EvalResult {
        value: Complex64::new(r.value, 0.0),
        error_bound: r.error_bound,
        terms_used: r.terms_used,
        method: r.method,
        converged: r.converged,
    }
}

fn qeval(a: &QevalArgs) -> Res<Artifact> {
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Text])?;
    let m = a.method;
    forbid(a.k.is_some() && m != QMethodArg::Product, "--K", "this method")?;
    forbid(a.m.is_some() && m == QMethodArg::Product, "--m", "the product method")?;
    if m == QMethodArg::Moak && (a.n != 1 || a.z.im != 0.0) {
        return Err(CliError::Usage("the moak form takes n = 1 and real z".into()));
    }
    let ctx = QContext::new(a.q)?;
    let real = a.z.im == 0.0;
    let r = match m {
        QMethodArg::Product => {
            let k = match a.k {
                Some(k) => Some(k),
                None if std::env::var_os("MGK_DEFAULT_K").is_some() => Some(default_k(DEFAULT_K)?),
                None => None,
            };
            match (k, real) {
                (Some(k), true) => to_complex(log_qgn_product(a.n, a.z.re, &ctx, k)?),
                (Some(k), false) => log_qgn_product(a.n, a.z, &ctx, k)?,
                (None, true) => to_complex(log_qgn_product_adaptive(a.n, a.z.re, &ctx)?),
                (None, false) => log_qgn_product_adaptive(a.n, a.z, &ctx)?,
            }
        }
        QMethodArg::Em => {
            let order = a.m.unwrap_or(a.n + 2);
            if real {
                to_complex(log_qgn_euler_maclaurin(a.n, a.z.re, &ctx, order)?)
            } else {
                log_qgn_euler_maclaurin(a.n, a.z, &ctx, order)?
            }
        }
        QMethodArg::Moak => to_complex(log_qgamma_moak(a.z.re, &ctx, a.m.unwrap_or(3))?),
    };
    let out = EvalOut::new(a.n, a.z, Some(a.q), &r);
    Ok(Artifact { body: out.render(f), converged: r.converged })
}

#[derive(Serialize)]
struct XPoint {
    n: usize,
    z: f64,
    methods: Vec<String>,
    values: Vec<f64>,
    error_bounds: Vec<f64>,
    converged: Vec<bool>,
    /// `residuals[i][j] = |values[i] - values[j]|`.
    residuals: Vec<Vec<f64>>,
    max_residual: f64,
    within_budget: bool,
}

#[derive(Serialize)]
struct XRow {
    n: usize,
    z: f64,
    method_a: String,
    method_b: String,
    residual: f64,
    error_bound_a: f64,
    error_bound_b: f64,
    budget: f64,
}

fn xpoint(n: usize, z: f64, k: usize) -> Res<XPoint> {
    let mut rs = vec![log_gn_weierstrass(n, z, k)?, log_gn_euler_maclaurin(n, z, n + 2)?];
    // The asymptotic series is only meaningful away from the origin.
    if z.abs() >= 5.0 {
        rs.push(log_gn_higher_stirling(n, z, Truncation::Auto)?);
    }
    let residuals: Vec<Vec<f64>> =
        rs.iter().map(|a| rs.iter().map(|b| (a.value - b.value).abs()).collect()).collect();
    let mut within = true;
    let mut max_residual: f64 = 0.0;
    for i in 0..rs.len() {
        for j in i + 1..rs.len() {
            max_residual = max_residual.max(residuals[i][j]);
            within &= residuals[i][j] <= XCHECK_TOL.max(rs[i].error_bound + rs[j].error_bound);
        }
    }
    Ok(XPoint {
        n,
        z,
        methods: rs.iter().map(|r| r.method.to_string()).collect(),
        values: rs.iter().map(|r| r.value).collect(),
        error_bounds: rs.iter().map(|r| r.error_bound).collect(),
        converged: rs.iter().map(|r| r.converged).collect(),
        residuals,
        max_residual,
        within_budget: within,
    })
}

fn xcheck(a: &XcheckArgs) -> Res<Artifact> {
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Csv])?;
    if a.n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let k = a.k.map_or_else(|| default_k(DEFAULT_K), Ok)?;
    let jobs: Vec<(usize, f64)> =
        (1..=a.n_max).flat_map(|n| a.grid.0.iter().map(move |&z| (n, z))).collect();
    let points = jobs.par_iter().map(|&(n, z)| xpoint(n, z, k)).collect::<Res<Vec<_>>>()?;
    let converged = points.iter().all(|p| p.converged.iter().all(|c| *c));
    let body = match f {
        Format::Csv => {
            let mut rows = Vec::new();
            for p in &points {
                for i in 0..p.methods.len() {
                    for j in i + 1..p.methods.len() {
                        let (ea, eb) = (p.error_bounds[i], p.error_bounds[j]);
                        rows.push(XRow {
                            n: p.n,
                            z: p.z,
                            method_a: p.methods[i].clone(),
                            method_b: p.methods[j].clone(),
                            residual: p.residuals[i][j],
                            error_bound_a: ea,
                            error_bound_b: eb,
                            budget: XCHECK_TOL.max(ea + eb),
                        });
                    }
                }
            }
            csv_string(&rows)?
        }
        _ => json_string(&json!({
            "n_max": a.n_max,
            "grid": a.grid.0,
            "product_length": k,
            "tolerance": XCHECK_TOL,
            "points": points,
        })),
    };
    Ok(Artifact { body, converged })
}

fn sweep(a: &SweepArgs) -> Res<Artifact> {
    let f = format_of(&a.output, Format::Csv, &[Format::Json, Format::Csv])?;
    let qs = &a.q_seq.0;
    let parts = qs
        .par_iter()
        .map(|&q| classical_limit_sweep(a.n, a.z, &[q]))
        .collect::<Result<Vec<_>, _>>()?;
    let first = &parts[0];
    let table = SweepTable {
        n: first.n,
        z: first.z,
        classical: first.classical,
        classical_error_bound: first.classical_error_bound,
        rows: parts.iter().flat_map(|t| t.rows.iter().cloned()).collect(),
    };
    let converged = table.rows.iter().all(|r| r.converged);
    let body = match f {
        Format::Csv => table.to_csv()?,
        _ => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
    };
    Ok(Artifact { body, converged })
}

fn coeffs(a: &CoeffsArgs) -> Res<Artifact> {
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Text])?;
    if a.n == 0 {
        return Err(CliError::Domain("order n must be at least 1".into()));
    }
    let body = match a.form {
        Form::Stirling => {
            let b = higher_stirling_coeffs(a.n, a.r_max.unwrap_or(4));
            let mut consts = BTreeMap::new();
            for (t, p) in b.const_part.iter() {
                let key = const_name(*t);
                consts.insert(key, p.to_text("z"));
            }
            let series: Vec<String> = b
                .series_terms
                .iter()
                .map(|t| format!("B_{}/{}! ({}) / (z+1)^{}", 2 * t.r, 2 * t.r, t.numerator.to_text("z"), 2 * t.r - 1))
                .collect();
            match f {
                Format::Text => {
                    let mut s = format!("log_coeff: {}\npoly_part: {}\n", b.log_coeff.to_text("z"), b.poly_part.to_text("z"));
                    for (k, v) in &consts {
                        s += &format!("const[{k}]: {v}\n");
                    }
                    for (t, line) in b.series_terms.iter().zip(&series) {
                        s += &format!("series[r={}]: {line}\n", t.r);
                    }
                    s
                }
                _ => json_string(&json!({
                    "n": a.n,
                    "form": "stirling",
                    "error_bound": 0.0,
                    "bundle": b.to_json(),
                    "text": {
                        "log_coeff": b.log_coeff.to_text("z"),
                        "poly_part": b.poly_part.to_text("z"),
                        "const_part": consts,
                        "series_terms": series,
                    },
                })),
            }
        }
        Form::Weierstrass => {
            if a.r_max.is_some() {
                return Err(CliError::Usage("--r-max is not valid with the weierstrass form".into()));
            }
            let b = weierstrass_bundle(a.n);
            let phi: BTreeMap<String, String> =
                b.phi_n.iter().map(|(e, p)| (e.to_string(), p.to_text("z"))).collect();
            let mut fz = BTreeMap::new();
            for (t, p) in b.f_n.iter() {
                let key = const_name(*t);
                fz.insert(key, p.to_text("z"));
            }
            match f {
                Format::Text => {
                    let mut s = format!("factor_exponent: {}\n", b.factor_exponent.to_text("k"));
                    for (e, p) in &phi {
                        s += &format!("phi_n[k^{e}]: {p}\n");
                    }
                    for (k, v) in &fz {
                        s += &format!("f_n[{k}]: {v}\n");
                    }
                    s
                }
                _ => json_string(&json!({
                    "n": a.n,
                    "form": "weierstrass",
                    "error_bound": 0.0,
                    "bundle": b,
                    "text": {
                        "factor_exponent": b.factor_exponent.to_text("k"),
                        "phi_n": phi,
                        "f_n": fz,
                    },
                })),
            }
        }
    };
    Ok(Artifact { body, converged: true })
}

fn const_name(t: ConstTag) -> String {
    match t {
        ConstTag::One => "1".into(),
        ConstTag::Gamma => "gamma".into(),
        ConstTag::ZetaD(0) => "zeta'(0)".into(),
        ConstTag::ZetaD(j) => format!("zeta'(-{j})"),
    }
}

#[derive(Serialize)]
struct ZetaRow {
    j: usize,
    value: f64,
    error_bound: f64,
    terms_used: usize,
    converged: bool,
}

fn zeta_table(a: &ZetaTableArgs) -> Res<Artifact> {
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
    let rows: Vec<ZetaRow> = (0..=a.j_max)
        .into_par_iter()
        .map(|j| {
            let r = zeta_deriv_neg_eval(j);
            ZetaRow { j, value: r.value, error_bound: r.error_bound, terms_used: r.terms_used, converged: r.converged }
        })
        .collect();
    let converged = rows.iter().all(|r| r.converged);
    let body = match f {
        Format::Csv => csv_string(&rows)?,
        Format::Text => rows
            .iter()
            .map(|r| format!("zeta'({}) = {:?} +- {:?}\n", -(r.j as i64), r.value, r.error_bound))
            .collect(),
        Format::Json => json_string(&json!({ "rows": rows })),
    };
    Ok(Artifact { body, converged })
}

/// Residual and derivative tolerances for `props`.
const PROPS_TOL: (f64, f64) = (1e-8, 1e-6);

fn props(a: &PropsArgs) -> Res<Artifact> {
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Text])?;
    let report = vigneras_property_check(a.n, &a.grid.0)?;
    let evals =
        a.grid.0.par_iter().map(|&z| log_gn(a.n, z)).collect::<Result<Vec<_>, _>>()?;
    let error_bound = evals.iter().fold(0.0f64, |m, r| m.max(r.error_bound));
    let converged = evals.iter().all(|r| r.converged);
    let holds = report.holds(PROPS_TOL.0, PROPS_TOL.1);
    let body = match f {
        Format::Text => format!(
            "n = {}\nholds = {holds}\nmax_functional_residual = {:?}\nunit_value = {:?}\nmax_base_residual = {:?}\nmin_derivative = {:?}\nerror_bound = {error_bound:?}\n",
            a.n,
            report.max_functional_residual(),
            report.unit_value,
            report.max_base_residual(),
            report.min_derivative(),
        ),
        _ => json_string(&json!({
            "holds": holds,
            "residual_tolerance": PROPS_TOL.0,
            "derivative_tolerance": PROPS_TOL.1,
            "error_bound": error_bound,
            "report": report,
        })),
    };
    Ok(Artifact { body, converged })
}
