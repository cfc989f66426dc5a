mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dlfq::checks::{run_desk_profile, CheckConfig};
use dlfq::dickson::{dickson_by_product, dickson_vector};
use dlfq::field::ord_mod;
use dlfq::json::{point_json, to_csv, SCHEMA_VERSION};
use dlfq::presentations::{presentation, Variant};
use dlfq::strata::census;
use dlfq::unipotent::seeded_trials;
use dlfq::variety::{
    check_action, enumerate_variety, fiber_census, scaling_cover, sign_variants_coincide,
    torsor_check, GroupKind, VarietyKind, VarietySpec,
};
use dlfq::{make_field, Fe, FieldCtx, FieldSpec};

use config::{parse_format, Format, Settings};

/// Exact finite-field checks for Dickson invariants, the Coxeter-element
/// hypersurfaces of GL_n and their cohomology ledgers.
///
/// Field elements are written as integers: the element Σ c_k α^k of
/// F_p[α]/(f) is Σ c_k p^k.
#[derive(Parser)]
#[command(name = "dlfq", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_parser = parse_format_arg)]
    format: Option<Format>,
    /// key=value settings file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Cap on enumerated points.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Include wall-clock times (reports are then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

fn parse_format_arg(s: &str) -> Result<Format, String> {
    parse_format(s).map_err(|e| e.to_string())
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Base field F_q as p^s (or p).
    #[arg(long)]
    field: String,
    /// Extension degree m of the working field F_{q^m}.
    #[arg(long, default_value_t = 1)]
    ext: u32,
}

impl FieldArgs {
    fn build(&self) -> Result<FieldCtx> {
        let (p, s) = FieldSpec::parse_base(&self.field)?;
        Ok(make_field(FieldSpec::new(p, s, self.ext))?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Describe a field: modulus, primitive element, sizes.
    Field {
        #[command(flatten)]
        field: FieldArgs,
        /// Also report r = ord_ell(q).
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Points and group actions on Q, Q′ and X(1).
    #[command(subcommand)]
    Variety(VarietyCommand),
    /// Moore determinant and Dickson invariants at points.
    Invariants {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated element codes; every point of X(1) when absent.
        #[arg(long, value_delimiter = ',')]
        point: Option<Vec<u32>>,
    },
    /// Seeded runs of the last-column normal form on U*.
    NormalForm {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Strata of the F_q-hyperplane arrangement.
    #[command(subcommand)]
    Strata(StrataCommand),
    /// Graded presentation of a mod-ell cohomology ring with its series.
    Presentation {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        field: String,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value = "gl")]
        variant: String,
        #[arg(long, default_value_t = 40)]
        series_degree: usize,
    },
    /// Run a verification profile.
    VerifyAll {
        #[arg(long, default_value = "desk")]
        profile: String,
    },
}

#[derive(Args, Clone)]
struct VarietyArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    field: FieldArgs,
    /// Use the (-1)^{n-1}-twisted defining equation.
    #[arg(long)]
    sign_variant: bool,
}

impl VarietyArgs {
    fn spec(&self, kind: VarietyKind) -> Result<VarietySpec> {
        let (p, s) = FieldSpec::parse_base(&self.field.field)?;
        Ok(VarietySpec::new(kind, self.n, p, s).with_sign_variant(self.sign_variant))
    }
}

#[derive(Subcommand)]
enum VarietyCommand {
    /// Count points and orbits.
    Census {
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        args: VarietyArgs,
        /// gl or sl; SL for Q, GL otherwise.
        #[arg(long)]
        group: Option<String>,
        /// List the points.
        #[arg(long)]
        points: bool,
    },
    /// Cover X(1) from Q by scaling, up an extension ladder.
    Cover {
        #[command(flatten)]
        args: VarietyArgs,
        #[arg(long)]
        ladder: Option<u32>,
    },
    /// Scalar action on Q′ and the cover of X(1) from Q′.
    Torsor {
        #[command(flatten)]
        args: VarietyArgs,
        #[arg(long)]
        ladder: Option<u32>,
    },
    /// Points of Q′ over a Dickson target, up an extension ladder.
    Fiber {
        #[command(flatten)]
        args: VarietyArgs,
        /// Comma-separated codes of (c_{n,1}, ..., c_{n,n-1}).
        #[arg(long, value_delimiter = ',')]
        target: Vec<u32>,
        #[arg(long)]
        ladder: Option<u32>,
    },
}

#[derive(Subcommand)]
enum StrataCommand {
    /// Corank histogram against the closed form.
    Census {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = match settings(&cli.global) {
        Ok(s) => s,
        Err(err) => {
            eprintln!("dlfq: {err:#}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let (name, outcome) = run(&cli.command, &settings);
    let mut doc = json!({ "schema": SCHEMA_VERSION, "command": name });
    let pass = match outcome {
        Ok((report, pass)) => {
            doc["report"] = report;
            pass
        }
        Err(err) => {
            doc["error"] = json!(format!("{err:#}"));
            false
        }
    };
    doc["pass"] = json!(pass);
    if settings.timings {
        doc["wall_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    let text = match settings.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        Format::Csv => to_csv(&doc),
    };
    // a closed reader (e.g. `| head`) is not a failure of the run
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn settings(global: &GlobalArgs) -> Result<Settings> {
    let mut s = Settings::default();
    if let Some(path) = &global.config {
        s.apply_file(path)?;
    }
    if let Some(v) = global.seed {
        s.seed = v;
    }
    if let Some(v) = global.trials {
        s.trials = v;
    }
    if let Some(v) = global.bound {
        s.bound = v;
    }
    if let Some(v) = global.format {
        s.format = v;
    }
    s.timings |= global.timings;
    Ok(s)
}

fn run(command: &Command, s: &Settings) -> (&'static str, Result<(Value, bool)>) {
    match command {
        Command::Field { field, ell } => ("field", field_report(field, *ell)),
        Command::Variety(v) => ("variety", variety(v, s)),
        Command::Invariants { n, field, point } => ("invariants", invariants(*n, field, point.as_deref(), s)),
        Command::NormalForm { n, field } => ("normal-form", normal_form(*n, field, s)),
        Command::Strata(StrataCommand::Census { n, field }) => ("strata", strata(*n, field, s)),
        Command::Presentation {
            n,
            field,
            ell,
            variant,
            series_degree,
        } => ("presentation", presentation_report(*n, field, *ell, variant, *series_degree)),
        Command::VerifyAll { profile } => ("verify-all", verify_all(profile, s)),
    }
}

fn field_report(args: &FieldArgs, ell: Option<u64>) -> Result<(Value, bool)> {
    let ctx = args.build()?;
    let spec = ctx.spec();
    let mut report = json!({
        "field": spec.to_string(),
        "p": spec.p, "s": spec.s, "m": spec.m,
        "q": ctx.q(), "size": ctx.size(),
        "modulus": ctx.modulus(),
        "primitive": ctx.primitive().index(),
        "primitive_order": ctx.mult_order(ctx.primitive())?,
        "base_generator": ctx.base_generator().index(),
    });
    if let Some(ell) = ell {
        report["ell"] = json!(ell);
        report["r"] = json!(ord_mod(ctx.q(), ell)?);
    }
    Ok((report, true))
}

fn element(ctx: &FieldCtx, code: u32) -> Result<Fe> {
    if (code as u64) >= ctx.size() {
        bail!("element code {code} out of range for {}", ctx.spec());
    }
    Ok(ctx.elem(code))
}

fn codes(xs: &[Fe]) -> Vec<u32> {
    xs.iter().map(|a| a.index()).collect()
}

fn variety(command: &VarietyCommand, s: &Settings) -> Result<(Value, bool)> {
    match command {
        VarietyCommand::Census {
            kind,
            args,
            group,
            points,
        } => {
            let kind: VarietyKind = kind.parse()?;
            let spec = args.spec(kind)?;
            let ctx = args.field.build()?;
            let group = match group {
                Some(g) => g.parse()?,
                None if kind == VarietyKind::Q => GroupKind::Sl,
                None => GroupKind::Gl,
            };
            let orbit = check_action(&ctx, &spec, group, s.bound)?;
            let mut report = serde_json::to_value(&orbit)?;
            report["sign_variant"] = json!(spec.sign_variant);
            report["variants_coincide"] = json!(sign_variants_coincide(&ctx, &spec, s.bound)?);
            if *points {
                let pts: Vec<Vec<u32>> = enumerate_variety(&ctx, &spec, s.bound)?
                    .iter()
                    .map(|x| codes(x))
                    .collect();
                report["points"] = json!(pts);
            }
            let pass = orbit.violations.is_empty() || !orbit.free_claimed;
            Ok((report, pass))
        }
        VarietyCommand::Cover { args, ladder } => {
            let ctx = args.field.build()?;
            let cover = scaling_cover(&ctx, &args.spec(VarietyKind::Q)?, ladder.unwrap_or(s.ladder), s.bound)?;
            let pass = cover.all_fibers_full();
            Ok((serde_json::to_value(cover)?, pass))
        }
        VarietyCommand::Torsor { args, ladder } => {
            let ctx = args.field.build()?;
            let report = torsor_check(&ctx, &args.spec(VarietyKind::QPrime)?, ladder.unwrap_or(s.ladder), s.bound)?;
            let pass = report.passed();
            Ok((serde_json::to_value(report)?, pass))
        }
        VarietyCommand::Fiber {
            args,
            target,
            ladder,
        } => {
            let ctx = args.field.build()?;
            let target: Vec<Fe> = target
                .iter()
                .map(|&c| element(&ctx, c))
                .collect::<Result<_>>()?;
            let report = fiber_census(
                &ctx,
                &args.spec(VarietyKind::QPrime)?,
                &target,
                ladder.unwrap_or(s.ladder),
                s.bound,
            )?;
            let pass = report.single_orbit;
            Ok((serde_json::to_value(report)?, pass))
        }
    }
}

fn invariants(n: usize, args: &FieldArgs, point: Option<&[u32]>, s: &Settings) -> Result<(Value, bool)> {
    let ctx = args.build()?;
    let points: Vec<Vec<Fe>> = match point {
        Some(codes) => {
            if codes.len() != n {
                bail!("point has {} coordinates, expected {n}", codes.len());
            }
            vec![codes.iter().map(|&c| element(&ctx, c)).collect::<Result<_>>()?]
        }
        None => {
            let (p, sdeg) = FieldSpec::parse_base(&args.field)?;
            enumerate_variety(&ctx, &VarietySpec::new(VarietyKind::X1, n, p, sdeg), s.bound)?
        }
    };
    let mut rows = Vec::with_capacity(points.len());
    let mut pass = true;
    for x in &points {
        let d = dickson_vector(&ctx, x, s.bound)?;
        let agree = ctx.q().checked_pow(n as u32).is_none_or(|size| size > s.bound)
            || dickson_by_product(&ctx, x, s.bound)? == d;
        pass &= agree;
        rows.push(json!({
            "x": codes(x),
            "x_coeffs": point_json(&ctx, x),
            "e": d.e.index(),
            "c": codes(&d.c),
            "routes_agree": agree,
        }));
    }
    Ok((json!({ "field": ctx.spec().to_string(), "n": n, "points": rows }), pass))
}

fn normal_form(n: usize, args: &FieldArgs, s: &Settings) -> Result<(Value, bool)> {
    if n < 2 {
        bail!("normal-form needs n >= 2");
    }
    let ctx = args.build()?;
    let trials = seeded_trials(&ctx, n, s.seed, s.trials)?;
    let pass = trials.iter().all(|t| t.orbit_invariant);
    Ok((
        json!({ "field": ctx.spec().to_string(), "n": n, "seed": s.seed, "trials": trials }),
        pass,
    ))
}

fn strata(n: usize, args: &FieldArgs, s: &Settings) -> Result<(Value, bool)> {
    let ctx = args.build()?;
    let c = census(&ctx, n, s.bound)?;
    let pass = c.pass;
    Ok((serde_json::to_value(c)?, pass))
}

fn presentation_report(n: u32, field: &str, ell: u64, variant: &str, degree: usize) -> Result<(Value, bool)> {
    let (p, s) = FieldSpec::parse_base(field)?;
    let q = (p as u64).pow(s);
    let variant: Variant = variant.parse()?;
    let pres = presentation(variant, n, q, ell)?;
    let mut report = serde_json::to_value(&pres)?;
    report["series"] = json!(pres.poincare_series::<i64>(degree).coeffs());
    if variant == Variant::Motivic {
        let weights = degree.max(1);
        report["bigraded_series"] = json!(pres.bigraded_series(degree, weights));
    }
    Ok((report, true))
}

fn verify_all(profile: &str, s: &Settings) -> Result<(Value, bool)> {
    if profile != "desk" {
        bail!("unknown profile {profile}; available: desk");
    }
    let config = CheckConfig {
        seed: s.seed,
        trials: s.trials,
        bound: s.bound,
        ladder: CheckConfig::default().ladder,
    };
    let reports = run_desk_profile(&config);
    let pass = reports.iter().all(|r| r.pass);
    let checks: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).context("serializing report")?;
            if s.timings {
                v["wall_ms"] = json!(r.elapsed.as_millis() as u64);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Ok((json!({ "profile": profile, "config": config, "checks": checks }), pass))
}
