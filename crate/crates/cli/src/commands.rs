use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use yangian_core::block::{dim_l, representation_type, support_box};
use yangian_core::linalg::Matrix;
use yangian_core::module::{
    build_verma, build_window_module, central_character_check, verify_defining_relations,
    ModuleJson, ModuleParams, WindowModule,
};
use yangian_core::poly::Scalar;
use yangian_core::quiver::{
    decompose, identify_class, is_indecomposable_probe, module_to_quiver_rep, skeleton, ClassLabel,
    QuiverRep, QuiverRepJson, Verdict,
};
use yangian_core::yangian::{displacement_set, Generator, NCPolynomial, QdetExpression, Yangian};

use crate::{parse_label, parse_window, CliError, Command, ParamArgs};

type Failure = (CliError, Option<Value>);

fn fail<T>(e: impl Into<CliError>) -> Result<T, Failure> {
    Err((e.into(), None))
}

pub(crate) fn execute(cmd: Command) -> Result<Value, Failure> {
    match cmd {
        Command::Qdet { p } => qdet(p),
        Command::CentralCheck { p, word } => central_check(p, word.as_deref()),
        Command::Straighten { p, word, x, z } => straighten(p, word.as_deref(), x.as_deref(), z),
        Command::Module {
            params,
            alpha,
            window,
            margin,
            out,
            check,
        } => match check {
            Some(path) => check_module(&path, margin),
            None => module(&params, alpha, window.as_deref(), margin, out.as_deref()),
        },
        Command::Analyze { params } => analyze(&params),
        Command::Skeleton {
            params,
            window,
            out,
        } => skeleton_cmd(&params, window.as_deref(), out.as_deref()),
        Command::Indecomposables {
            families,
            seed,
            out,
        } => indecomposables(&families, seed, out.as_deref()),
        Command::Identify {
            input,
            seed,
            trials,
        } => identify(&input, seed, trials),
        Command::Decompose {
            input,
            seed,
            trials,
            out,
        } => decompose_cmd(&input, seed, trials, out.as_deref()),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

fn write_json(path: &Path, value: &Value) -> Result<(), Failure> {
    fs::write(path, crate::render(value))
        .or_else(|e| fail(CliError::BadParams(format!("{}: {e}", path.display()))))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .or_else(|e| fail(CliError::Usage(format!("{}: {e}", path.display()))))?;
    serde_json::from_str(&text)
        .or_else(|e| fail(CliError::BadParams(format!("{}: {e}", path.display()))))
}

fn algebra(p: u32) -> Result<Yangian, Failure> {
    if !(1..=3).contains(&p) {
        return fail(CliError::Usage(format!("--p must be 1, 2 or 3, got {p}")));
    }
    Ok(Yangian::new(p))
}

fn qdet(p: u32) -> Result<Value, Failure> {
    let y = algebra(p)?;
    let d = y.quantum_determinant();
    let agree = QdetExpression::ALL
        .iter()
        .all(|&e| y.qdet_coefficients(e) == d);
    let central = d.iter().all(|x| y.is_central(x));
    Ok(json!({
        "p": p,
        "coefficients": to_value(&d),
        "presentations_agree": agree,
        "central": central,
    }))
}

fn parse_word(p: u32, word: &str) -> Result<Vec<Generator>, Failure> {
    let gens: Vec<Generator> = word
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()
        .or_else(|e| fail(CliError::Usage(e)))?;
    if let Some(g) = gens.iter().find(|g| g.r == 0 || g.r > p) {
        return fail(CliError::BadParams(format!("{g} is outside level {p}")));
    }
    Ok(gens)
}

fn central_check(p: u32, word: Option<&str>) -> Result<Value, Failure> {
    let y = algebra(p)?;
    match word {
        Some(w) => {
            let x = y
                .word(&parse_word(p, w)?)
                .or_else(|e| fail(CliError::BadParams(e.to_string())))?;
            Ok(json!({
                "p": p,
                "checks": [{"element": w, "central": y.is_central(&x)}],
            }))
        }
        None => {
            let d = y.quantum_determinant();
            let checks: Vec<Value> = d
                .iter()
                .enumerate()
                .map(
                    |(i, x)| json!({"element": format!("d_{}", i + 1), "central": y.is_central(x)}),
                )
                .collect();
            let gamma = y.gamma_generators();
            let commutative = gamma
                .iter()
                .enumerate()
                .all(|(i, a)| gamma[i + 1..].iter().all(|b| y.bracket(a, b).is_zero()));
            Ok(json!({"p": p, "checks": checks, "gamma_commutative": commutative}))
        }
    }
}

fn straighten(
    p: u32,
    word: Option<&str>,
    x: Option<&str>,
    z: Option<u32>,
) -> Result<Value, Failure> {
    let y = algebra(p)?;
    if let Some(x) = x {
        let g = parse_word(p, x)?;
        let [g] = g.as_slice() else {
            return fail(CliError::Usage("--x takes a single generator".into()));
        };
        let cert = y
            .straightening_certificate(*g, z.unwrap_or(p), &displacement_set(p, *g))
            .or_else(|e| fail(CliError::BadParams(e.to_string())))?;
        let value = json!({"p": p, "certificate": to_value(&cert)});
        if !cert.verified {
            return Err((
                CliError::Relation("certificate residual is nonzero".into()),
                Some(value),
            ));
        }
        return Ok(value);
    }
    let Some(word) = word else {
        return fail(CliError::Usage("straighten needs --word or --x".into()));
    };
    let gens = parse_word(p, word)?;
    let nf: NCPolynomial = y
        .word(&gens)
        .or_else(|e| fail(CliError::BadParams(e.to_string())))?;
    Ok(json!({
        "p": p,
        "word": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "normal_form": to_value(&nf),
    }))
}

fn params(args: &ParamArgs) -> Result<ModuleParams, Failure> {
    if args.beta.is_empty() {
        return fail(CliError::Usage("--beta is required".into()));
    }
    if let Some(p) = args.p {
        if p as usize != args.beta.len() {
            return fail(CliError::BadParams(format!(
                "--p {p} but {} β entries",
                args.beta.len()
            )));
        }
    }
    ModuleParams::new(args.beta.clone(), args.gamma.clone()).or_else(fail)
}

fn verification(module: &WindowModule, margin: i64) -> Result<Value, Failure> {
    let rel = verify_defining_relations(module, margin).or_else(fail)?;
    let central = central_character_check(module, margin).or_else(fail)?;
    let value = json!({
        "kind": to_value(&module.kind),
        "p": module.params.p,
        "beta": to_value(&module.params.beta),
        "gamma": to_value(&module.params.gamma),
        "window": module.window.to_string(),
        "margin": margin,
        "witnesses": rel.witnesses,
        "relations_checked": rel.relations_checked,
        "violations": rel.violations.len(),
        "first_violations": rel.violations.iter().take(3).map(|v| json!({
            "relation": format!("[t{}{}^({}), t{}{}^({})]", v.i, v.j, v.r, v.k, v.l, v.s),
            "witness": v.witness,
        })).collect::<Vec<_>>(),
        "central_checked": central.checked,
        "central_failures": central.failures.len(),
        "spill": module.spill().len(),
    });
    if !rel.is_ok() || !central.is_ok() {
        return Err((
            CliError::Relation(format!(
                "{} relation violations, {} central-character failures",
                rel.violations.len(),
                central.failures.len()
            )),
            Some(value),
        ));
    }
    Ok(value)
}

fn module(
    args: &ParamArgs,
    alpha: Option<Vec<Scalar>>,
    window: Option<&str>,
    margin: i64,
    out: Option<&Path>,
) -> Result<Value, Failure> {
    let module = match alpha {
        Some(alpha) => {
            if args.beta.is_empty() {
                return fail(CliError::Usage("--beta is required".into()));
            }
            let mut w = parse_window(window, args.beta.len()).or_else(fail)?;
            if window.is_none() {
                w = yangian_core::module::Window::new(
                    vec![0; args.beta.len()],
                    vec![6; args.beta.len()],
                )
                .or_else(fail)?;
            }
            build_verma(&alpha, &args.beta, &w).or_else(fail)?
        }
        None => {
            let params = params(args)?;
            let w = parse_window(window, params.level()).or_else(fail)?;
            build_window_module(&params, &w).or_else(fail)?
        }
    };
    if let Some(path) = out {
        write_json(path, &to_value(&module.to_json()))?;
    }
    verification(&module, margin)
}

fn check_module(path: &Path, margin: i64) -> Result<Value, Failure> {
    let json: ModuleJson = read_json(path)?;
    let module = WindowModule::from_json(json).or_else(fail)?;
    verification(&module, margin)
}

fn analyze(args: &ParamArgs) -> Result<Value, Failure> {
    let params = params(args)?;
    let profile = representation_type(&params).or_else(fail)?;
    let bx = support_box(&params).or_else(fail)?;
    let dim = dim_l(&params).or_else(fail)?;
    Ok(json!({
        "I": profile.offsets,
        "X": profile.axes,
        "type": to_value(&profile.rep_type),
        "box": to_value(&bx),
        "dim": to_value(&dim),
    }))
}

fn skeleton_cmd(
    args: &ParamArgs,
    window: Option<&str>,
    out: Option<&Path>,
) -> Result<Value, Failure> {
    let params = params(args)?;
    let pres = skeleton(&params).or_else(fail)?;
    let w = parse_window(window, params.level()).or_else(fail)?;
    let module = build_window_module(&params, &w).or_else(fail)?;
    let rep = module_to_quiver_rep(&module).or_else(fail)?;
    let form = pres.standard_form();
    let shown = form
        .as_ref()
        .map_or_else(|| rep.clone(), |f| f.transport(&rep));
    let rep_json = to_value(&shown.to_json());
    if let Some(path) = out {
        write_json(path, &rep_json)?;
    }
    let q = &pres.quiver;
    Ok(json!({
        "I": pres.offsets,
        "objects": q.vertices,
        "arrows": q.arrows.iter().map(|a| json!({
            "name": a.name,
            "source": q.vertices[a.source],
            "target": q.vertices[a.target],
        })).collect::<Vec<_>>(),
        "relations": q.relations.iter().map(|r| q.relation_label(r)).collect::<Vec<_>>(),
        "standard_form": form.as_ref().map(|f| to_value(&f.target.kind)),
        "presentation_isomorphism": form.as_ref().map(|f| f.is_presentation_isomorphism()),
        "rep": rep_json,
        "relations_ok": shown.verify_relations().is_ok(),
    }))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Scalar::from(rng.gen_range(-2i64..=2)))
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows_shaped(n, n, rows).expect("square");
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn indecomposables(
    families: &[String],
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<Value, Failure> {
    let labels: Vec<ClassLabel> = families
        .iter()
        .map(|f| parse_label(f))
        .collect::<Result<_, _>>()
        .or_else(|e| fail(CliError::Usage(e)))?;
    let mut parts = Vec::with_capacity(labels.len());
    for l in &labels {
        parts.push(l.construct().or_else(fail)?);
    }
    if parts.windows(2).any(|w| w[0].quiver != w[1].quiver) {
        return fail(CliError::BadParams(
            "labels live on different quivers".into(),
        ));
    }
    let mut rep: QuiverRep = parts[1..]
        .iter()
        .fold(parts[0].clone(), |acc, m| acc.direct_sum(m));
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g: Vec<Matrix> = rep
            .dims
            .iter()
            .map(|&d| random_invertible(&mut rng, d))
            .collect();
        rep = rep.conjugate(&g).expect("invertible change of basis");
    }
    let rep_json = to_value(&rep.to_json());
    if let Some(path) = out {
        write_json(path, &rep_json)?;
    }
    Ok(json!({
        "labels": to_value(&labels),
        "seed": seed,
        "total_dim": rep.total_dim(),
        "relations_ok": rep.verify_relations().is_ok(),
        "rep": rep_json,
    }))
}

fn load_rep(path: &Path) -> Result<QuiverRep, Failure> {
    let json: QuiverRepJson = read_json(path)?;
    let rep = QuiverRep::from_json(&json).or_else(fail)?;
    let check = rep.verify_relations();
    if !check.is_ok() {
        return Err((
            CliError::Relation(format!("{} relations fail", check.violations.len())),
            Some(json!({"violations": check.violations})),
        ));
    }
    Ok(rep)
}

fn with_seed(label: &ClassLabel, seed: u64) -> Value {
    let mut v = to_value(label);
    v["seed"] = json!(seed);
    v
}

fn identify(path: &Path, seed: u64, trials: usize) -> Result<Value, Failure> {
    let rep = load_rep(path)?;
    match identify_class(&rep, trials, seed) {
        Ok(label) => Ok(with_seed(&label, seed)),
        Err(e) => Err((
            e.into(),
            Some(json!({"seed": seed, "error": "NotIndecomposable"})),
        )),
    }
}

fn decompose_cmd(
    path: &Path,
    seed: u64,
    trials: usize,
    out: Option<&Path>,
) -> Result<Value, Failure> {
    let rep = load_rep(path)?;
    let pieces = decompose(&rep, trials, seed);
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .or_else(|e| fail(CliError::BadParams(format!("{}: {e}", dir.display()))))?;
    }
    let mut summands = Vec::with_capacity(pieces.len());
    for (n, piece) in pieces.iter().enumerate() {
        let label = identify_class(piece, trials, seed).unwrap_or(ClassLabel::Unknown);
        let verdict = match is_indecomposable_probe(piece, trials, seed) {
            Verdict::LikelyIndecomposable { certified: true } => "certified",
            Verdict::LikelyIndecomposable { certified: false } => "likely",
            Verdict::Decomposable(..) => "decomposable",
            Verdict::Inconclusive(_) => "inconclusive",
        };
        let mut entry = json!({
            "dims": piece.dims,
            "class": to_value(&label),
            "probe": verdict,
        });
        if let Some(dir) = out {
            let file = dir.join(format!("summand_{}.json", n + 1));
            write_json(&file, &to_value(&piece.to_json()))?;
            entry["file"] = json!(file.file_name().map(|f| f.to_string_lossy().into_owned()));
        }
        summands.push(entry);
    }
    Ok(json!({"seed": seed, "summands": summands}))
}
