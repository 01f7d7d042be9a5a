use std::path::Path;
use std::process::ExitCode;

use milnor::construct::{build_e_member, build_euler, deform, snap_nonfaithful};
use milnor::discreteness::{generator_scan, nondiscreteness_certificate};
use milnor::homology::{relation_matrix_h, relation_matrix_z, Order};
use milnor::io::{representation_from_json, representation_to_json, to_json};
use milnor::realize::{realize_signature, verify_realization_with};
use milnor::signature::enumerate_by_capacity;
use milnor::{Error, Representation, Signature};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::config::ToleranceConfig;
use crate::{Command, ConstructArgs, PerturbArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_FAILED: u8 = 3;

pub struct Report {
    pub body: Value,
    pub status: u8,
}

impl Report {
    fn ok(body: Value) -> Self {
        Self {
            body,
            status: EXIT_OK,
        }
    }

    fn checked(body: Value, passed: bool) -> Self {
        Self {
            body,
            status: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

pub enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Exit code for a library error: numerical failures are 3, bad input is 2.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::RelationViolated { .. }
        | Error::RoundingAmbiguous { .. }
        | Error::SignAmbiguous { .. }
        | Error::SolverNoConvergence(_)
        | Error::NoRationalInRange { .. }
        | Error::FirstCommutatorNotHyperbolic
        | Error::DefectOutOfRange(_) => EXIT_FAILED,
        _ => EXIT_INVALID,
    }
}

pub fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    let body = json!({
        "error": kind,
        "message": message,
        "exit_code": code,
        "version": milnor::VERSION,
    });
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&body).expect("error serializes")
    );
    ExitCode::from(code)
}

pub fn fail_with(e: &Error) -> ExitCode {
    let debug = format!("{e:?}");
    let kind: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    fail(&kind, &e.to_string(), exit_code(e))
}

pub fn fail_failure(f: &Failure) -> ExitCode {
    match f {
        Failure::Lib(e) => fail_with(e),
        Failure::Io(msg) => fail("Io", msg, EXIT_INVALID),
    }
}

pub fn run(command: &Command, config: &ToleranceConfig) -> Result<Report, Failure> {
    match command {
        Command::Euler { rep } => euler(&read_rep(rep)?, config),
        Command::Parity { rep } => parity(&read_rep(rep)?, config),
        Command::Siginfo { signature, n } => siginfo(&parse_sig(signature)?, *n),
        Command::Enumerate { euler_max } => enumerate(*euler_max),
        Command::OracleZ { signature } => oracle_z(&parse_sig(signature)?),
        Command::OracleH { signature } => oracle_h(&parse_sig(signature)?),
        Command::Realize { signature, output } => {
            realize(&parse_sig(signature)?, output.as_deref(), config)
        }
        Command::Construct(args) => construct(args, config),
        Command::Perturb(args) => perturb(args, config),
        Command::Verify {
            rep,
            jorgensen_depth,
        } => {
            let depth = jorgensen_depth.unwrap_or(config.jorgensen_depth);
            verify(&read_rep(rep)?, depth, config)
        }
    }
}

fn read_rep(path: &Path) -> Result<Representation, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(representation_from_json(&text)?)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, format!("{text}\n"))
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_sig(text: &str) -> Result<Signature, Failure> {
    Ok(text.parse::<Signature>()?)
}

/// Integers that fit in `i64` as JSON numbers, larger ones as decimal strings.
fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn order(o: &Order) -> Value {
    match o {
        Order::Finite(n) => big(n),
        Order::Infinite => json!("infinite"),
    }
}

fn euler(rho: &Representation, config: &ToleranceConfig) -> Result<Report, Failure> {
    let tol = &config.tolerances;
    let e = rho.euler_class_with(tol, 0.0)?;
    let p = rho.parity_with(tol)?;
    Ok(Report::ok(json!({
        "genus": rho.genus,
        "euler": e,
        "parity": p,
        "lifted_turns": rho.lifted_product().turns_at(0.0),
        "residual": rho.relation_residual(),
    })))
}

fn parity(rho: &Representation, config: &ToleranceConfig) -> Result<Report, Failure> {
    let p = rho.parity_with(&config.tolerances)?;
    Ok(Report::ok(
        json!({ "genus": rho.genus, "parity": p, "residual": rho.relation_residual() }),
    ))
}

fn siginfo(sig: &Signature, n: u64) -> Result<Report, Failure> {
    let e = sig.e_gamma()?;
    let (m, count) = match sig.two_power_data() {
        Ok((m, c)) => (json!(m), json!(c)),
        Err(_) => (Value::Null, Value::Null),
    };
    let bounds = match sig.genus_bounds(n) {
        Ok((lo, hi)) => json!({ "n": n, "lower": big(&lo), "upper": big(&hi) }),
        Err(Error::NotCocompact) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(Report::ok(json!({
        "signature": sig.to_string(),
        "coarea": sig.coarea().to_string(),
        "e": big(&e),
        "lcm": big(&sig.lcm()),
        "m": m,
        "n": count,
        "admits_odd": sig.admits_odd()?,
        "genus_bounds": bounds,
    })))
}

fn enumerate(kmax: u64) -> Result<Report, Failure> {
    if kmax == 0 {
        return Err(Error::InvalidSignature("--euler-max must be at least 1".into()).into());
    }
    let sigs = enumerate_by_capacity(kmax);
    let list: Vec<Value> = sigs
        .iter()
        .map(|s| {
            json!({
                "signature": s.to_string(),
                "e": big(&s.e_gamma().expect("enumerated signatures are valid")),
                "coarea": s.coarea().to_string(),
            })
        })
        .collect();
    Ok(Report::ok(
        json!({ "euler_max": kmax, "count": list.len(), "signatures": list }),
    ))
}

fn oracle_z(sig: &Signature) -> Result<Report, Failure> {
    let matrix = relation_matrix_z(sig)?;
    let o = matrix.central_order();
    let formula = sig.e_gamma()?;
    let oracle = match &o {
        Order::Finite(n) => n.clone(),
        Order::Infinite => BigInt::from(0),
    };
    Ok(Report::checked(
        json!({
            "signature": sig.to_string(),
            "order": order(&o),
            "oracle_e": big(&oracle),
            "e_gamma": big(&formula),
            "agrees": oracle == formula,
            "matrix": matrix,
        }),
        oracle == formula,
    ))
}

fn oracle_h(sig: &Signature) -> Result<Report, Failure> {
    let matrix = relation_matrix_h(sig)?;
    let o = matrix.central_order();
    let trivial = o == Order::Finite(BigInt::from(1));
    let admits = sig.admits_odd()?;
    Ok(Report::checked(
        json!({
            "signature": sig.to_string(),
            "order": order(&o),
            "trivial": trivial,
            "admits_odd": admits,
            "agrees": trivial == admits,
            "matrix": matrix,
        }),
        trivial == admits,
    ))
}

fn realize(
    sig: &Signature,
    output: Option<&Path>,
    config: &ToleranceConfig,
) -> Result<Report, Failure> {
    let gens = realize_signature(sig)?;
    let certificate = verify_realization_with(&gens, &config.tolerances);
    let mut file = serde_json::to_value(&gens).expect("generators serialize");
    file["certificate"] = serde_json::to_value(&certificate).expect("certificate serializes");
    let mut body = json!({ "signature": sig.to_string(), "certificate": certificate });
    match output {
        Some(path) => {
            write(path, &to_json(&file))?;
            body["output"] = json!(path.display().to_string());
        }
        None => body["generators"] = file,
    }
    let passed = certificate.passed;
    Ok(Report::checked(body, passed))
}

fn construct(args: &ConstructArgs, config: &ToleranceConfig) -> Result<Report, Failure> {
    let rho = if args.elliptic_first {
        build_e_member(args.genus, args.euler)?
    } else {
        build_euler(args.genus, args.euler)?
    };
    let tol = &config.tolerances;
    let e = rho.euler_class_with(tol, 0.0)?;
    let mut body = json!({
        "genus": rho.genus,
        "requested_euler": args.euler,
        "euler": e,
        "parity": rho.parity_with(tol)?,
        "residual": rho.relation_residual(),
    });
    emit_rep(&mut body, &rho, args.output.as_deref())?;
    Ok(Report::checked(body, e == args.euler))
}

fn emit_rep(body: &mut Value, rho: &Representation, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            write(path, &representation_to_json(rho))?;
            body["output"] = json!(path.display().to_string());
        }
        None => {
            body["representation"] = serde_json::to_value(rho).expect("representation serializes")
        }
    }
    Ok(())
}

fn perturb(args: &PerturbArgs, config: &ToleranceConfig) -> Result<Report, Failure> {
    let rho = read_rep(&args.rep)?;
    let tol = &config.tolerances;
    let before = rho.euler_class_with(tol, 0.0)?;
    let mut body = json!({ "genus": rho.genus, "euler_before": before });
    let out = if args.snap {
        let snap = snap_nonfaithful(&rho, args.qmax)?;
        let witness = json!({
            "word": format!("a1^{}", snap.q),
            "letters": snap.witness.letters,
            "residual": snap.witness.residual,
            "p": snap.p,
            "q": snap.q,
            "t": snap.t,
        });
        if let Some(path) = &args.witness {
            write(path, &to_json(&witness))?;
        }
        body["qmax"] = json!(args.qmax);
        body["witness"] = witness;
        snap.representation
    } else {
        let t = args.t.expect("clap requires --snap or --t");
        body["t"] = json!(t);
        deform(&rho, t)?
    };
    let after = out.euler_class_with(tol, 0.0)?;
    body["euler"] = json!(after);
    body["residual"] = json!(out.relation_residual());
    body["distance"] = json!(out.distance(&rho));
    emit_rep(&mut body, &out, args.output.as_deref())?;
    Ok(Report::checked(body, after == before))
}

fn verify(rho: &Representation, depth: usize, config: &ToleranceConfig) -> Result<Report, Failure> {
    if depth == 0 {
        return Err(Error::InvalidDepth.into());
    }
    let tol = &config.tolerances;
    let residual = rho.relation_residual();
    let relation_ok = rho.check_relation(tol).is_ok();
    let euler = rho.euler_class_with(tol, 0.0).ok();
    let parity = rho.parity_with(tol).ok();
    let parity_consistent = match (euler, parity) {
        (Some(e), Some(p)) => p == if e % 2 == 0 { 1 } else { -1 },
        _ => false,
    };
    let bound = 2 * rho.genus as i64 - 2;
    let milnor_wood = euler.is_some_and(|e| e.abs() <= bound.max(0));
    let scan = generator_scan(rho);
    let certificate = nondiscreteness_certificate(rho, depth)?;
    let passed = relation_ok && euler.is_some() && parity_consistent && milnor_wood;
    Ok(Report::checked(
        json!({
            "genus": rho.genus,
            "residual": residual,
            "relation_ok": relation_ok,
            "euler": euler,
            "parity": parity,
            "parity_consistent": parity_consistent,
            "milnor_wood": milnor_wood,
            "jorgensen": {
                "depth": depth,
                "generator_min": scan,
                "nondiscreteness_certificate": certificate,
            },
            "passed": passed,
        }),
        passed,
    ))
}
