use std::collections::BTreeMap;

use mfcat_core::cohomology::{default_window, ext_table, is_nullhomotopic, random_closed_morphism, tyurina_annihilation};
use mfcat_core::functors::{
    coker_presentation, knorrer_lift, koszul_brane, rees_degenerate, segal_canonicalize, segal_hom_dimension,
    tensor_product, BigradedLabel,
};
use mfcat_core::groebner::{buchberger, Dimension, Ideal, MonomialOrder, StandardMonomials};
use mfcat_core::mfcore::{cone, MFMorphism, MatrixFactorization, Parity};
use mfcat_core::ring::{GradeVector, Polynomial, Rational};
use mfcat_core::singularity::{euler_identity_check, jacobi_ideal, milnor_number, tyurina_ideal, tyurina_number};
use mfcat_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::document::{emit_factorization, emit_morphism, emit_ring, parse_parity, Context, Degree, ProblemDocument};
use crate::report::{table, Diagnostic};
use crate::{CliError, Command, Flags};

pub struct CommandOutput {
    pub result: Value,
    pub human: String,
    pub diagnostics: Vec<Diagnostic>,
    /// A check ran and came out negative.
    pub failed: bool,
}

impl CommandOutput {
    fn ok(result: Value, human: String) -> Self {
        CommandOutput {
            result,
            human,
            diagnostics: Vec::new(),
            failed: false,
        }
    }
}

type Res = Result<CommandOutput, CliError>;

pub fn dispatch(command: Command, ctx: &Context, flags: &Flags) -> Res {
    let args = Args { ctx };
    match command {
        Command::Verify => verify(&args),
        Command::Suspend => unary(&args, "suspension", |mf| Ok(mf.suspension())),
        Command::Dual => unary(&args, "dual", |mf| Ok(mf.dual())),
        Command::Twist => {
            let by = args.degree("by")?;
            unary(&args, "twist", move |mf| Ok(mf.twist(&by)))
        }
        Command::Sum => binary(&args, "sum", |a, b| a.direct_sum(b)),
        Command::Tensor => binary(&args, "tensor", tensor_product),
        Command::Cone => cone_cmd(&args, flags),
        Command::Koszul => koszul(&args),
        Command::Knorrer => knorrer(&args),
        Command::Coker => coker(&args, flags),
        Command::Ext => ext(&args, flags),
        Command::Nullhomotopy => nullhomotopy(&args, flags),
        Command::Annihilation => annihilation(&args, flags),
        Command::Jacobi => jacobi(&args),
        Command::Milnor => milnor(&args),
        Command::Segal => segal(&args),
        Command::Degenerate => degenerate(&args),
    }
}

fn core(at: &str) -> impl FnOnce(Error) -> CliError + '_ {
    move |error| CliError::Core { at: at.to_string(), error }
}

/// Access to `command.args`.
struct Args<'a> {
    ctx: &'a Context,
}

impl Args<'_> {
    fn raw(&self, key: &str) -> Option<&Value> {
        self.ctx.doc.command.args.get(key)
    }

    fn string(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.raw(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(v) => Err(CliError::Schema(format!("command.args.{key} must be a string, got {v}"))),
        }
    }

    fn typed<T: serde::de::DeserializeOwned>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.raw(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| CliError::Schema(format!("command.args.{key}: {e}"))),
        }
    }

    fn degree(&self, key: &str) -> Result<GradeVector, CliError> {
        let d: Degree = self
            .typed(key)?
            .ok_or_else(|| CliError::Schema(format!("command.args.{key} is required")))?;
        let d = d.to_vector();
        if d.len() != self.ctx.ring.channels() {
            return Err(CliError::Schema(format!("command.args.{key}: degree {d} has the wrong number of channels")));
        }
        Ok(d)
    }

    /// A factorization name: the argument if given, else the only one in
    /// the document.
    fn factorization_name(&self, key: &str) -> Result<String, CliError> {
        if let Some(n) = self.string(key)? {
            return Ok(n);
        }
        let names: Vec<&String> = self.ctx.doc.factorizations.keys().chain(self.ctx.doc.koszul.keys()).collect();
        match names.as_slice() {
            [only] => Ok((*only).clone()),
            _ => Err(CliError::Schema(format!("command.args.{key} is required"))),
        }
    }

    fn only_name<V>(&self, key: &str, map: &BTreeMap<String, V>) -> Result<String, CliError> {
        if let Some(n) = self.string(key)? {
            return Ok(n);
        }
        match map.keys().collect::<Vec<_>>().as_slice() {
            [only] => Ok((*only).clone()),
            _ => Err(CliError::Schema(format!("command.args.{key} is required"))),
        }
    }

    fn factorization(&self, key: &str) -> Result<(String, MatrixFactorization), CliError> {
        let name = self.factorization_name(key)?;
        let mf = self.ctx.factorization(&name)?;
        Ok((name, mf))
    }

    fn window(&self, flags: &Flags, mf: &MatrixFactorization, at: &str) -> Result<(i64, i64), CliError> {
        if let Some(w) = flags.window {
            return Ok(w);
        }
        if let Some((lo, hi)) = self.typed::<(i64, i64)>("window")? {
            if lo > hi {
                return Err(CliError::Schema(format!("command.args.window: empty window {lo}..{hi}")));
            }
            return Ok((lo, hi));
        }
        default_window(mf).map_err(core(at))
    }
}

fn cell(d: Dimension) -> Value {
    match d {
        Dimension::Finite(n) => json!(n),
        Dimension::Infinite => json!("infinite"),
    }
}

fn dim_text(d: Dimension) -> String {
    match d {
        Dimension::Finite(n) => n.to_string(),
        Dimension::Infinite => "infinite".into(),
    }
}

/// A complete document holding one factorization, so that the output of
/// one command can be fed to the next.
fn document_for(name: &str, mf: &MatrixFactorization) -> Value {
    let mut spec = emit_factorization(mf);
    spec.potential = None;
    let doc = ProblemDocument {
        ring: emit_ring(mf.ring()),
        potential: Some(mf.potential().to_string()),
        w: Some(Degree::from_vector(mf.w())),
        factorizations: BTreeMap::from([(name.to_string(), spec)]),
        koszul: BTreeMap::new(),
        morphisms: BTreeMap::new(),
        labels: BTreeMap::new(),
        charts: BTreeMap::new(),
        base_modules: BTreeMap::new(),
        command: Default::default(),
    };
    serde_json::to_value(doc).expect("document serializes")
}

fn matrix_text(rows: &[Vec<Polynomial>]) -> String {
    rows.iter()
        .map(|r| format!("  [{}]", r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn shifts_text(mf: &MatrixFactorization) -> String {
    let show = |s: &mfcat_core::mfcore::ShiftList| s.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
    format!("shifts0: {}\nshifts1: {}", show(mf.shifts0()), show(mf.shifts1()))
}

fn factorization_output(name: &str, mf: &MatrixFactorization) -> CommandOutput {
    let (r0, r1) = mf.rank();
    let human = format!(
        "{name}: rank ({r0}, {r1}) over W = {}\n{}\nalpha:\n{}\nbeta:\n{}\n",
        mf.potential(),
        shifts_text(mf),
        matrix_text(mf.alpha().entries()),
        matrix_text(mf.beta().entries()),
    );
    CommandOutput::ok(
        json!({ "rank": [r0, r1], "document": document_for(name, mf) }),
        human,
    )
}

fn verify(args: &Args) -> Res {
    let ctx = args.ctx;
    let names: Vec<String> = match args.string("factorization")? {
        Some(n) => vec![n],
        None => ctx.doc.factorizations.keys().cloned().collect(),
    };
    if names.is_empty() {
        return Err(CliError::Schema("no factorizations to verify".into()));
    }
    let mut results = serde_json::Map::new();
    let mut human = String::new();
    let mut diagnostics = Vec::new();
    let mut failed = false;
    for name in &names {
        let (w, _, alpha, beta) = ctx.raw_factorization(name)?;
        let mut homogeneity = json!("ok");
        for (m, label) in [(&alpha, "alpha"), (&beta, "beta")] {
            if let Err(Error::HomogeneityViolation { row, col, expected, .. }) = m.check_homogeneity(label) {
                let entry = m.entry(row, col).to_string();
                let loc = format!("factorizations.{name}.{label}[{row}][{col}]");
                diagnostics.push(Diagnostic::error(
                    Some(&loc),
                    "HomogeneityViolation",
                    format!("entry `{entry}` is not homogeneous of degree {expected}"),
                ));
                homogeneity = json!({ "matrix": label, "row": row, "col": col, "entry": entry, "expected": Degree::from_vector(&expected) });
                break;
            }
        }
        let mut curvature = json!("ok");
        for (product, p) in [("alpha*beta", alpha.mul(&beta)), ("beta*alpha", beta.mul(&alpha))] {
            if let Some((row, col)) = p.first_deviation_from_scalar(&w) {
                let entry = p.entry(row, col).to_string();
                let expected = if row == col { w.to_string() } else { "0".into() };
                diagnostics.push(Diagnostic::error(
                    Some(&format!("factorizations.{name}")),
                    "CurvatureMismatch",
                    format!("{product} has `{entry}` at entry ({row}, {col}), expected `{expected}`"),
                ));
                curvature = json!({ "product": product, "row": row, "col": col, "entry": entry, "expected": expected });
                break;
            }
        }
        let word = |v: &Value| if v == "ok" { "ok".to_string() } else { "FAILED".to_string() };
        let summary = format!("curvature: {}, homogeneity: {}", word(&curvature), word(&homogeneity));
        failed |= curvature != "ok" || homogeneity != "ok";
        human.push_str(&format!("{name}: {summary}\n"));
        if let Value::Object(o) = &homogeneity {
            human.push_str(&format!(
                "  homogeneity fails at {}[{}][{}] = {}, expected degree {}\n",
                o["matrix"].as_str().unwrap_or_default(),
                o["row"],
                o["col"],
                o["entry"].as_str().unwrap_or_default(),
                o["expected"]
            ));
        }
        if let Value::Object(o) = &curvature {
            human.push_str(&format!(
                "  curvature fails: {} has {} at entry ({}, {}), expected {}\n",
                o["product"].as_str().unwrap_or_default(),
                o["entry"].as_str().unwrap_or_default(),
                o["row"],
                o["col"],
                o["expected"].as_str().unwrap_or_default()
            ));
        }
        results.insert(
            name.clone(),
            json!({
                "rank": [alpha.ncols(), alpha.nrows()],
                "curvature": curvature,
                "homogeneity": homogeneity,
                "summary": summary,
            }),
        );
    }
    Ok(CommandOutput {
        result: json!({ "factorizations": results }),
        human,
        diagnostics,
        failed,
    })
}

fn unary(args: &Args, out: &str, f: impl FnOnce(&MatrixFactorization) -> mfcat_core::Result<MatrixFactorization>) -> Res {
    let (name, mf) = args.factorization("factorization")?;
    let res = f(&mf).map_err(core(&format!("factorizations.{name}")))?;
    Ok(factorization_output(out, &res))
}

fn binary(
    args: &Args,
    out: &str,
    f: impl FnOnce(&MatrixFactorization, &MatrixFactorization) -> mfcat_core::Result<MatrixFactorization>,
) -> Res {
    let left = args.factorization_name("left")?;
    let right = args.factorization_name("right")?;
    let (a, b) = (args.ctx.factorization(&left)?, args.ctx.factorization(&right)?);
    let res = f(&a, &b).map_err(core("command.args"))?;
    Ok(factorization_output(out, &res))
}

/// A named morphism, or a random closed one between `source` and `target`.
fn morphism_arg(args: &Args, flags: &Flags, default_parity: Parity) -> Result<(MFMorphism, Value), CliError> {
    if let Some(name) = args.string("morphism")? {
        let phi = args.ctx.morphism(&name)?;
        return Ok((phi, json!(name)));
    }
    let src = args.factorization_name("source")?;
    let tgt = match args.string("target")? {
        Some(t) => t,
        None => src.clone(),
    };
    let (p, q) = (args.ctx.factorization(&src)?, args.ctx.factorization(&tgt)?);
    let parity = match args.string("parity")? {
        Some(s) => parse_parity(&s)?,
        None => default_parity,
    };
    let weight = match args.raw("weight") {
        Some(_) => args.degree("weight")?,
        None => args.ctx.ring.zero_degree(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let phi = random_closed_morphism(&p, &q, parity, &weight, &mut rng).map_err(core("command.args"))?;
    let emitted = serde_json::to_value(emit_morphism(&phi, &src, &tgt)).expect("morphism serializes");
    Ok((phi, json!({ "random": { "seed": flags.seed, "morphism": emitted } })))
}

fn cone_cmd(args: &Args, flags: &Flags) -> Res {
    let (phi, from) = morphism_arg(args, flags, Parity::Even)?;
    let c = cone(&phi).map_err(core("command.args.morphism"))?;
    let mut out = factorization_output("cone", &c);
    out.result["morphism"] = from;
    Ok(out)
}

fn koszul(args: &Args) -> Res {
    let name = args.only_name("koszul", &args.ctx.doc.koszul)?;
    let data = args.ctx.koszul(&name)?;
    let k = koszul_brane(&data).map_err(core(&format!("koszul.{name}")))?;
    Ok(factorization_output(&name, &k))
}

fn knorrer(args: &Args) -> Res {
    let kname = args.only_name("koszul", &args.ctx.doc.koszul)?;
    let bname = args.only_name("base_module", &args.ctx.doc.base_modules)?;
    let data = args.ctx.koszul(&kname)?;
    let base = args.ctx.base_module(&bname)?;
    let lift = knorrer_lift(&base, &data).map_err(core(&format!("base_modules.{bname}")))?;
    Ok(factorization_output("lift", &lift))
}

fn coker(args: &Args, flags: &Flags) -> Res {
    let (name, mf) = args.factorization("factorization")?;
    let at = format!("factorizations.{name}");
    let (lo, hi) = args.window(flags, &mf, &at)?;
    let c = coker_presentation(&mf).map_err(core(&at))?;
    let dims = c.hilbert_range(lo, hi).map_err(core(&at))?;
    let rows: Vec<Vec<String>> = (lo..=hi).zip(&dims).map(|(k, d)| vec![k.to_string(), d.to_string()]).collect();
    let pres = c.presentation();
    let human = format!(
        "coker of beta for {name}, presentation:\n{}\n{}",
        matrix_text(pres.entries()),
        table(&["degree", "dim"], &rows)
    );
    Ok(CommandOutput::ok(
        json!({
            "presentation": pres.entries().iter().map(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "generators": pres.rows().iter().map(Degree::from_vector).collect::<Vec<_>>(),
            "relations": pres.cols().iter().map(Degree::from_vector).collect::<Vec<_>>(),
            "window": [lo, hi],
            "hilbert": (lo..=hi).zip(&dims).map(|(k, d)| json!({ "degree": k, "dim": d })).collect::<Vec<_>>(),
        }),
        human,
    ))
}

fn source_target(args: &Args) -> Result<(String, String), CliError> {
    let src = match args.string("factorization")? {
        Some(n) => n,
        None => args.factorization_name("source")?,
    };
    let tgt = match args.string("target")? {
        Some(t) => t,
        None => src.clone(),
    };
    Ok((src, tgt))
}

fn ext(args: &Args, flags: &Flags) -> Res {
    let (src, tgt) = source_target(args)?;
    let (p, q) = (args.ctx.factorization(&src)?, args.ctx.factorization(&tgt)?);
    let (lo, hi) = args.window(flags, &p, "command.args")?;
    let t = ext_table(&p, &q, lo, hi).map_err(core("command.args"))?;
    let rows: Vec<Vec<String>> = (lo..=hi)
        .zip(&t.slices)
        .map(|(k, s)| {
            vec![
                k.to_string(),
                s.dim_even.to_string(),
                s.dim_odd.to_string(),
                s.h_even.to_string(),
                s.h_odd.to_string(),
            ]
        })
        .collect();
    let (te, to) = t.totals();
    let nonzero: Vec<String> = (lo..=hi).zip(&t.slices).filter(|(_, s)| !s.is_zero()).map(|(k, _)| k.to_string()).collect();
    let mut human = format!("Hom({src}, {tgt}), slices {lo}..{hi}\n");
    human.push_str(&table(&["slice", "dim_even", "dim_odd", "H_even", "H_odd"], &rows));
    human.push_str(&format!(
        "nonzero slices: {} ({}); total H_even = {te}, H_odd = {to}\n",
        nonzero.len(),
        if nonzero.is_empty() { "none".into() } else { nonzero.join(", ") }
    ));
    let mut diagnostics = Vec::new();
    if !t.coverage.lower_complete {
        diagnostics.push(Diagnostic::warning(format!("nonzero slices exist below {lo}")));
    }
    if !t.coverage.upper_complete {
        diagnostics.push(Diagnostic::note(format!("slices above {hi} were not computed")));
    }
    Ok(CommandOutput {
        result: json!({
            "source": src,
            "target": tgt,
            "window": [lo, hi],
            "slices": (lo..=hi).zip(&t.slices).map(|(k, s)| json!({
                "degree": k,
                "dim_even": s.dim_even,
                "dim_odd": s.dim_odd,
                "h_even": s.h_even,
                "h_odd": s.h_odd,
            })).collect::<Vec<_>>(),
            "nonzero": (lo..=hi).zip(&t.slices).filter(|(_, s)| !s.is_zero()).map(|(k, s)| json!({
                "degree": k,
                "h_even": s.h_even,
                "h_odd": s.h_odd,
            })).collect::<Vec<_>>(),
            "totals": { "h_even": te, "h_odd": to },
            "coverage": { "lower_complete": t.coverage.lower_complete, "upper_complete": t.coverage.upper_complete },
        }),
        human,
        diagnostics,
        failed: false,
    })
}

fn nullhomotopy(args: &Args, flags: &Flags) -> Res {
    let (phi, from) = morphism_arg(args, flags, Parity::Even)?;
    let n = is_nullhomotopic(&phi).map_err(core("command.args.morphism"))?;
    let witness = n.witness.as_ref().map(|h| {
        serde_json::to_value(emit_morphism(h, "source", "target")).expect("morphism serializes")
    });
    let mut human = format!(
        "{} morphism of weight {}: {}\n",
        phi.parity(),
        phi.weight(),
        if n.nullhomotopic { "null-homotopic" } else { "not null-homotopic" }
    );
    if let Some(h) = &n.witness {
        human.push_str(&format!(
            "witness h ({} of weight {}):\nblock0:\n{}\nblock1:\n{}\n",
            h.parity(),
            h.weight(),
            matrix_text(h.block0().entries()),
            matrix_text(h.block1().entries())
        ));
    }
    Ok(CommandOutput::ok(
        json!({ "morphism": from, "nullhomotopic": n.nullhomotopic, "witness": witness }),
        human,
    ))
}

fn annihilation(args: &Args, flags: &Flags) -> Res {
    let (src, tgt) = source_target(args)?;
    let (p, q) = (args.ctx.factorization(&src)?, args.ctx.factorization(&tgt)?);
    let (lo, hi) = args.window(flags, &p, "command.args")?;
    let r = tyurina_annihilation(&p, &q, lo, hi).map_err(core("command.args"))?;
    let mut human = format!(
        "Tyurina annihilation on Hom({src}, {tgt}), slices {lo}..{hi}: {}\n{} checks, {} failures\n",
        if r.passed { "passed" } else { "FAILED" },
        r.checks,
        r.failures.len()
    );
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            human.push_str(&format!(
                "  {} on {} representative {} of slice {}: {}\n",
                f.generator, f.parity, f.representative, f.degree, f.reason
            ));
            json!({
                "generator": f.generator,
                "slice": f.degree,
                "parity": f.parity.to_string(),
                "representative": f.representative,
                "reason": f.reason,
            })
        })
        .collect();
    let diagnostics = if r.passed {
        Vec::new()
    } else {
        vec![Diagnostic::error(None, "AnnihilationFailure", format!("{} representatives not killed", r.failures.len()))]
    };
    Ok(CommandOutput {
        result: json!({
            "passed": r.passed,
            "square_zero": r.square_zero,
            "generators": r.generators,
            "checks": r.checks,
            "failures": failures,
            "window": [lo, hi],
        }),
        human,
        diagnostics,
        failed: !r.passed,
    })
}

fn potential_arg(args: &Args) -> Result<Polynomial, CliError> {
    match args.string("potential")? {
        Some(p) => args.ctx.poly(&p, "command.args.potential"),
        None => args.ctx.potential(),
    }
}

fn ideal_summary(label: &str, ideal: &Ideal, human: &mut String) -> Value {
    let ring = ideal.ring();
    let gb = buchberger(ideal, &MonomialOrder::degrevlex(ring));
    let basis: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
    let (colength, standard) = match gb.standard_monomials(None) {
        StandardMonomials::Finite(ms) => {
            let ms: Vec<String> = ms
                .into_iter()
                .map(|m| Polynomial::monomial(ring, m, Rational::from_integer(1.into())).to_string())
                .collect();
            (json!(ms.len()), json!(ms))
        }
        StandardMonomials::Infinite => (json!("infinite"), Value::Null),
    };
    human.push_str(&format!("{label} ideal ({}):\n", ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")));
    human.push_str(&format!("  reduced Groebner basis (degrevlex): {}\n", basis.join(", ")));
    human.push_str(&format!("  colength: {}\n", colength.as_u64().map_or("infinite".into(), |n| n.to_string())));
    if let Value::Array(ms) = &standard {
        let names: Vec<&str> = ms.iter().filter_map(Value::as_str).collect();
        human.push_str(&format!("  standard monomials: {}\n", names.join(", ")));
    }
    json!({
        "generators": ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "groebner_basis": basis,
        "colength": colength,
        "standard_monomials": standard,
    })
}

fn jacobi(args: &Args) -> Res {
    let w = potential_arg(args)?;
    let mut human = format!("W = {w}\n");
    let j = ideal_summary("Jacobi", &jacobi_ideal(&w), &mut human);
    let t = ideal_summary("Tyurina", &tyurina_ideal(&w), &mut human);
    Ok(CommandOutput::ok(json!({ "potential": w.to_string(), "jacobi": j, "tyurina": t }), human))
}

fn milnor(args: &Args) -> Res {
    let w = potential_arg(args)?;
    let (mu, tau) = (milnor_number(&w), tyurina_number(&w));
    let mut diagnostics = Vec::new();
    let euler = match euler_identity_check(&w) {
        Ok(b) => Some(b),
        Err(Error::InhomogeneousInput(_)) => {
            diagnostics.push(Diagnostic::note("W is not quasi-homogeneous; Euler identity not checked"));
            None
        }
        Err(e) => return Err(CliError::Core { at: "potential".into(), error: e }),
    };
    let rows = vec![
        vec!["milnor".to_string(), dim_text(mu)],
        vec!["tyurina".to_string(), dim_text(tau)],
        vec!["euler identity".to_string(), euler.map_or("n/a".into(), |b| b.to_string())],
    ];
    let human = format!("W = {w}\n{}", table(&["invariant", "value"], &rows));
    Ok(CommandOutput {
        result: json!({ "potential": w.to_string(), "milnor": cell(mu), "tyurina": cell(tau), "euler_identity": euler }),
        human,
        diagnostics,
        failed: false,
    })
}

fn label_json(l: BigradedLabel) -> Value {
    json!({ "a": l.a, "b": l.b, "n": l.n })
}

fn label_text(l: BigradedLabel) -> String {
    format!("{l} N={}", l.n)
}

fn segal(args: &Args) -> Res {
    let ctx = args.ctx;
    if let Some(name) = args.string("label")? {
        let l = ctx.label(&name)?;
        let c = segal_canonicalize(l);
        return Ok(CommandOutput::ok(
            json!({ "label": label_json(l), "canonical": label_json(c) }),
            format!("{name}: {} is {}\n", label_text(l), label_text(c)),
        ));
    }
    let from_name = args.string("from")?.ok_or_else(|| CliError::Schema("command.args.from is required".into()))?;
    let to_name = args.string("to")?.ok_or_else(|| CliError::Schema("command.args.to is required".into()))?;
    let (from, to) = (ctx.label(&from_name)?, ctx.label(&to_name)?);
    let dim = segal_hom_dimension(from, to, &ctx.ring).map_err(core("command.args"))?;
    let (cf, ct) = (segal_canonicalize(from), segal_canonicalize(to));
    let rows = vec![
        vec![from_name.clone(), label_text(from), label_text(cf)],
        vec![to_name.clone(), label_text(to), label_text(ct)],
    ];
    let human = format!(
        "{}dim Hom({from_name}, {to_name}) in degree (0, 1) = {dim}\n",
        table(&["label", "given", "canonical"], &rows)
    );
    Ok(CommandOutput::ok(
        json!({
            "from": { "given": label_json(from), "canonical": label_json(cf) },
            "to": { "given": label_json(to), "canonical": label_json(ct) },
            "hom_dimension": dim,
        }),
        human,
    ))
}

fn degenerate(args: &Args) -> Res {
    let ctx = args.ctx;
    let chart_name = args.only_name("chart", &ctx.doc.charts)?;
    let chart = ctx.chart(&chart_name)?;
    let at = format!("charts.{chart_name}");
    let w = ctx.potential()?;
    let brane = match args.string("factorization")? {
        Some(n) => Some((n.clone(), ctx.factorization(&n)?)),
        None => None,
    };
    let fam = rees_degenerate(&w, &chart, brane.as_ref().map(|(_, b)| b)).map_err(core(&at))?;
    let at_values: Vec<i64> = args.typed("at")?.unwrap_or_else(|| vec![0, 1]);
    let t = fam.parameter_name().to_string();
    let mut human = format!("W_{t} = {}\n", fam.potential_t());
    let mut fibers = Vec::new();
    let mut diagnostics = Vec::new();
    let mut failed = false;
    for c in &at_values {
        let wc = fam.specialize_int(*c);
        human.push_str(&format!("{t} = {c}: W = {wc}"));
        let mut fiber = json!({ "at": c, "potential": wc.to_string() });
        if let Some(res) = fam.specialize_brane(&Rational::from_integer((*c).into())) {
            match res {
                Ok(b) => {
                    human.push_str(", brane verifies");
                    fiber["brane"] = document_for("fiber", &b);
                }
                Err(e) => {
                    failed = true;
                    human.push_str(&format!(", brane FAILS: {e}"));
                    diagnostics.push(Diagnostic::error(Some(&format!("{at} at {t} = {c}")), format!("{e:?}").split(|ch: char| !ch.is_alphanumeric()).next().unwrap_or_default(), e.to_string()));
                    fiber["brane"] = Value::Null;
                }
            }
        }
        human.push('\n');
        fibers.push(fiber);
    }
    let family_brane = fam.brane().map(|b| {
        human.push_str(&format!("family brane over {t}:\n{}\nalpha:\n{}\nbeta:\n{}\n", shifts_text(b), matrix_text(b.alpha().entries()), matrix_text(b.beta().entries())));
        document_for("family", b)
    });
    if fam.leading_form_vanishes() {
        diagnostics.push(Diagnostic::warning("leading form vanishes; the order is below the true vanishing order"));
    }
    Ok(CommandOutput {
        result: json!({
            "parameter": t,
            "ring": emit_ring(fam.ring_t()),
            "potential": fam.potential_t().to_string(),
            "fibers": fibers,
            "brane": family_brane,
        }),
        human,
        diagnostics,
        failed,
    })
}
