use serde_json::{json, Value};

use ylab_core::arith::parse_rational;
use ylab_core::battery::is_dominant;
use ylab_core::drinfeld::{
    classify_kind, closed_form_data, data_from_eigen_series, data_of_module, realize, reduce_minimal,
    spec_of_pairs, DrinfeldData, PairSet,
};
use ylab_core::dualiso::{composite_analysis, composite_exponent, iso_covector, SignCounters};
use ylab_core::intertwiner::{
    build_i, dominance_violation, highest_vector_check, image_analysis_with, intertwine_check_with,
    word_independence_check, ReducedWord,
};
use ylab_core::yangian::{
    eigen_closed_form, eigen_series, eigenform_check, rtt_check, rtt_min_samples, ModuleAction, ModuleSpec,
};
use ylab_core::Error;

/// Failure classes with their exit codes.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Dominance(Value),
    Singular(Value),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) | Failure::Internal(_) => 2,
            Failure::Dominance(_) => 3,
            Failure::Singular(_) => 4,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Failure::Invalid(msg) => json!({"error": "invalid_input", "message": msg}),
            Failure::Internal(msg) => json!({"error": "internal", "message": msg}),
            Failure::Dominance(v) | Failure::Singular(v) => v.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::NotDominant { a, b, diff } => {
                Failure::Dominance(json!({"error": "not_dominant", "a": a, "b": b, "diff": diff, "message": message}))
            }
            Error::ForbiddenWeightDifference { a, b, diff } => Failure::Singular(
                json!({"error": "forbidden_weight_difference", "a": a, "b": b, "diff": diff, "message": message}),
            ),
            _ => Failure::Invalid(message),
        }
    }
}

/// A finished command: its JSON result and whether every checked identity
/// held.
pub struct Outcome {
    pub result: Value,
    pub passed: bool,
}

impl Outcome {
    fn ok(result: Value) -> Outcome {
        Outcome { result, passed: true }
    }
}

pub fn parse_list<T, F>(text: &str, parse: F) -> Result<Vec<T>, Failure>
where
    F: Fn(&str) -> Result<T, String>,
{
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| parse(s).map_err(Failure::Invalid))
        .collect()
}

pub fn spec_from_flags(n: usize, m: Option<usize>, mu: Option<&str>, nu: &str) -> Result<ModuleSpec, Failure> {
    let nu = parse_list(nu, |s| s.parse::<i64>().map_err(|e| format!("nu entry {s:?}: {e}")))?;
    let mu = match mu {
        Some(text) => parse_list(text, |s| parse_rational(s).map_err(|e| format!("mu entry {s:?}: {e}")))?,
        None => vec![num_zero(); nu.len()],
    };
    if let Some(m) = m {
        if m != nu.len() || m != mu.len() {
            return Err(Failure::Invalid(format!(
                "m = {m} but mu has {} and nu has {} entries",
                mu.len(),
                nu.len()
            )));
        }
    }
    ModuleSpec::new(n, mu, nu).map_err(Failure::from)
}

fn num_zero() -> ylab_core::Rational {
    ylab_core::arith::int(0)
}

pub fn parse_word(text: &str, m: usize) -> Result<ReducedWord, Failure> {
    let letters = parse_list(text, |s| s.parse::<usize>().map_err(|e| format!("word letter {s:?}: {e}")))?;
    ReducedWord::new(m, letters).map_err(Failure::from)
}

fn strings(xs: &[ylab_core::Rational]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn build(spec: &ModuleSpec) -> Result<Outcome, Failure> {
    let violation = |w: &[ylab_core::Rational]| {
        dominance_violation(w).map(|(a, b, d)| json!({"a": a, "b": b, "diff": d.to_string()}))
    };
    Ok(Outcome::ok(json!({
        "spec": spec,
        "dim": spec.dim(),
        "lambda": strings(&spec.lambda()),
        "lambda_bar": strings(&spec.lambda_bar()),
        "nu_bar": spec.nu_bar(),
        "eps": spec.eps().as_slice(),
        "polynomial": spec.is_polynomial(),
        "lambda_dominant": violation(&spec.lambda()).is_none(),
        "lambda_bar_dominant": violation(&spec.lambda_bar()).is_none(),
        "lambda_bar_violation": violation(&spec.lambda_bar()),
    })))
}

pub fn intertwine(spec: &ModuleSpec, word: &ReducedWord) -> Result<Outcome, Failure> {
    let op = build_i(spec, word)?;
    let target = ModuleAction::new(&op.target);
    let image = image_analysis_with(&op, &target)?;
    let hv = highest_vector_check(&op);
    Ok(Outcome {
        passed: hv.is_ok(),
        result: json!({
            "word": word.letters(),
            "intertwiner": op,
            "image_dim": image.rank,
            "highest_vector_ok": hv.is_ok(),
        }),
    })
}

pub fn drinfeld(spec: &ModuleSpec) -> Result<Outcome, Failure> {
    let data = data_of_module(spec)?;
    Ok(Outcome::ok(json!({
        "data": data,
        "kind": classify_kind(&data),
        "pairs": PairSet::of_spec(spec),
    })))
}

pub fn realize_data(data: &DrinfeldData) -> Result<Outcome, Failure> {
    let spec = realize(data)?;
    Ok(Outcome::ok(json!({
        "spec": spec,
        "kind": classify_kind(data),
        "dim": spec.dim(),
    })))
}

pub fn reduce(spec: &ModuleSpec) -> Result<Outcome, Failure> {
    let pairs = PairSet::of_spec(spec);
    let reduced = reduce_minimal(&pairs, spec.n());
    let reduced_spec = spec_of_pairs(&reduced, spec.n())?;
    let before = data_of_module(spec)?;
    let after = data_of_module(&reduced_spec)?;
    Ok(Outcome {
        passed: before == after,
        result: json!({
            "pairs": pairs,
            "reduced": reduced,
            "spec": reduced_spec,
            "data_preserved": before == after,
        }),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Rtt,
    Intertwine,
    Words,
    Eigen,
    Lemma41,
    Iso,
    Composite,
    Drinfeld,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Rtt => "rtt",
            Suite::Intertwine => "intertwine",
            Suite::Words => "words",
            Suite::Eigen => "eigen",
            Suite::Lemma41 => "lemma41",
            Suite::Iso => "iso",
            Suite::Composite => "composite",
            Suite::Drinfeld => "drinfeld",
        }
    }
}

struct Checks {
    list: Vec<Value>,
}

impl Checks {
    fn push(&mut self, name: &str, result: Result<Value, String>) {
        self.list.push(match result {
            Ok(detail) => json!({"name": name, "pass": true, "detail": detail}),
            Err(e) => json!({"name": name, "pass": false, "detail": e}),
        });
    }

    fn passed(&self) -> bool {
        self.list.iter().all(|c| c["pass"] == json!(true))
    }
}

/// Errors that make a whole suite inapplicable; identity failures are
/// recorded as failed checks instead.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotDominant { .. }
            | Error::ForbiddenWeightDifference { .. }
            | Error::InvalidSpec(_)
            | Error::Precondition(_)
            | Error::NotReduced(_)
            | Error::NotPolynomial
    )
}

fn check<T>(result: ylab_core::Result<T>, detail: impl FnOnce(T) -> Value) -> Result<Result<Value, String>, Failure> {
    match result {
        Ok(v) => Ok(Ok(detail(v))),
        Err(e) if is_input_error(&e) => Err(Failure::from(e)),
        Err(e) => Ok(Err(e.to_string())),
    }
}

pub fn verify(spec: &ModuleSpec, suite: Suite, samples: Option<usize>, word: &ReducedWord) -> Result<Outcome, Failure> {
    let mut checks = Checks { list: Vec::new() };
    match suite {
        Suite::Rtt => {
            let action = ModuleAction::new(spec);
            let samples = samples.unwrap_or_else(|| rtt_min_samples(spec.m()));
            let r = check(rtt_check(&action, samples), |r| json!(r))?;
            checks.push("rtt", r);
            let bound = action.denominator_bound_holds();
            checks.push(
                "denominator_degree",
                if bound { Ok(json!(null)) } else { Err("deg D(u) exceeds m".into()) },
            );
        }
        Suite::Intertwine => {
            let op = build_i(spec, word)?;
            let source = ModuleAction::new(&op.source);
            let target = ModuleAction::new(&op.target);
            checks.push("intertwining", check(intertwine_check_with(&op, &source, &target), |_| json!(null))?);
            checks.push("highest_vector", check(highest_vector_check(&op), |_| json!(null))?);
            let image = check(image_analysis_with(&op, &target), |r| json!(r))?;
            let irreducible = match image {
                Ok(r) if r["irreducible"] == json!(true) => Ok(r),
                Ok(r) => Err(format!("image not certified irreducible: {r}")),
                Err(e) => Err(e),
            };
            checks.push("irreducible_image", irreducible);
        }
        Suite::Words => {
            checks.push("word_independence", check(word_independence_check(spec), |count| json!({"words": count}))?);
        }
        Suite::Eigen => {
            let action = ModuleAction::new(spec);
            for i in 1..=spec.n() {
                let r = match check(eigen_series(&action, i), |a| json!(a))? {
                    Ok(got) => {
                        let want = json!(eigen_closed_form(spec, i));
                        if got == want {
                            Ok(got)
                        } else {
                            Err(format!("A_{i} = {got}, formula gives {want}"))
                        }
                    }
                    Err(e) => Err(e),
                };
                checks.push(&format!("A_{i}"), r);
            }
        }
        Suite::Lemma41 => {
            let action = ModuleAction::new(spec);
            checks.push("eigenform", check(eigenform_check(&action), |r| json!(r))?);
        }
        Suite::Iso => {
            if spec.m() != 1 || spec.nu()[0] > 0 {
                return Err(Failure::Invalid("suite iso needs m = 1 and nu = (-d), 0 <= d <= n".into()));
            }
            let d = (-spec.nu()[0]) as usize;
            let op = iso_covector(spec.n(), d, &spec.mu()[0])?;
            let source = ModuleAction::new(&op.source);
            let target = ModuleAction::new(&op.target);
            checks.push(
                "bijective",
                if op.rank() == op.source.dim() { Ok(json!(null)) } else { Err("rank deficit".into()) },
            );
            checks.push("intertwining", check(intertwine_check_with(&op, &source, &target), |_| json!(null))?);
        }
        Suite::Composite => {
            if !is_dominant(spec) {
                build_i(spec, word)?;
            }
            let report = check(composite_analysis(spec, word), |r| json!(r))?;
            let counters = SignCounters::of(spec);
            let mut entry = |name: &str, got: &str, want: i64| {
                let r = match &report {
                    Ok(r) => {
                        let sign = if want.rem_euclid(2) == 0 { 1 } else { -1 };
                        if r[got] == json!(sign) {
                            Ok(json!({"sign": sign}))
                        } else {
                            Err(format!("observed {}, expected {sign}", r[got]))
                        }
                    }
                    Err(e) => Err(e.clone()),
                };
                checks.push(name, r);
            };
            entry("composite_(-1)^(K+L)", "composite_sign", counters.k + counters.l);
            entry("source_hv_(-1)^(K+M)", "source_hv_sign", counters.k + counters.m);
            entry("target_hv_(-1)^(L+M)", "target_hv_sign", counters.l + counters.m);
            entry("composite_exact_exponent", "composite_sign", composite_exponent(spec));
            let mut out = finish(suite, spec, checks);
            out.result["counters"] = json!(counters);
            if let Ok(r) = report {
                out.result["analysis"] = r;
            }
            return Ok(out);
        }
        Suite::Drinfeld => {
            let closed = closed_form_data(spec);
            let action = ModuleAction::new(spec);
            let series = check(data_from_eigen_series(&action), |d| json!(d))?;
            checks.push(
                "two_routes_agree",
                match series {
                    Ok(d) if d == json!(closed) => Ok(d),
                    Ok(d) => Err(format!("eigenvalue route {d}, closed form {}", json!(closed))),
                    Err(e) => Err(e),
                },
            );
            let back = realize(&closed).and_then(|s| data_of_module(&s));
            checks.push(
                "round_trip",
                match back {
                    Ok(d) if d == closed => Ok(json!(d)),
                    Ok(d) => Err(format!("realization has data {}", json!(d))),
                    Err(e) => Err(e.to_string()),
                },
            );
        }
    }
    Ok(finish(suite, spec, checks))
}

fn finish(suite: Suite, spec: &ModuleSpec, checks: Checks) -> Outcome {
    let passed = checks.passed();
    Outcome {
        passed,
        result: json!({
            "suite": suite.name(),
            "spec": spec,
            "pass": passed,
            "checks": checks.list,
        }),
    }
}
