use std::path::Path;

use clusteralg::bimodule::{dual_bimodule, restrict_bimodule, semidirect_sum, semidirect_sum_unchecked};
use clusteralg::bundle::{AlgebraRecord, BimoduleRecord, FormRecord, TensorRecord};
use clusteralg::catalog::{self, list, random_form, random_tensor2};
use clusteralg::cluster::project;
use clusteralg::forms::{classify_form, finer_from_form, finer_from_form_unverified, tensor_to_form};
use clusteralg::operators::{
    compatible_from_invertible_with, induce_on_module_with, rb_finer_with, rb_pair_quadri_with,
    rb_triple_octo_with, Verify,
};
use clusteralg::yang_baxter::{
    canonical_double_solution, check_equation, double_product, induce_dual_product_with,
    lift_o_operator, DoubleVariant,
};
use clusteralg::{
    BilinearForm, Bimodule, Bundle, ClusterAlgebra, Error, Level, Parity, Report, Result, Tensor2,
};
use serde_json::json;

use crate::context::{read_bundle, Context};
use crate::{CatalogAction, Cli, Command, Construction, DeriveOpts};

// stdout may be a closed pipe (`| head`); that is not an error
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! say_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const USAGE: u8 = 2;

/// 1 for failed mathematical checks, 2 for everything that is a usage,
/// lookup or parse problem.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotBimodule(_)
        | Error::NotOOperator(_)
        | Error::NotRotaBaxter(_)
        | Error::NotCommuting
        | Error::PostVerification(_)
        | Error::EquationFailed(_)
        | Error::MissingFlag(_)
        | Error::Singular => VIOLATION,
        _ => USAGE,
    }
}

fn fail(e: &Error, as_json: bool) -> u8 {
    if as_json {
        let mut v = json!({ "ok": false, "error": e.to_string() });
        if let Some(r) = e.report() {
            v["violations"] = r.to_json()["violations"].clone();
        }
        say!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        eprintln!("error: {e}");
        if let Some(r) = e.report() {
            eprint!("{r}");
        }
    }
    exit_code(e)
}

pub fn run(cli: Cli) -> u8 {
    let json = cli.json;
    let result = Context::new(&cli.bundle).and_then(|mut ctx| match cli.command {
        Command::Check { names } => check(&mut ctx, names, !cli.bundle.is_empty(), json),
        Command::Derive { construction, out } => derive(&mut ctx, construction, out, json),
        Command::Classify { algebra, form } => classify(&mut ctx, &algebra, &form, json),
        Command::RandomTensor { dim, symmetry, seed, algebra, name, out } => {
            random_tensor(&mut ctx, dim, &symmetry, seed, algebra, &name, out.as_deref(), json)
        }
        Command::RandomForm { dim, symmetry, seed, name, out } => {
            let b = random_form(dim, Parity::parse(&symmetry)?, seed);
            let mut bundle = Bundle::default();
            bundle.forms.insert(name, FormRecord { form: b, algebra: None, require: vec![] });
            emit(&bundle, None, out.as_deref(), json)
        }
        Command::Catalog { action } => catalog_cmd(&ctx, action, json),
    });
    match result {
        Ok(code) => code,
        Err(e) => fail(&e, json),
    }
}

// ---- check ----

fn check(ctx: &mut Context, names: Vec<String>, from_bundles: bool, json: bool) -> Result<u8> {
    let names = if !names.is_empty() {
        names
    } else if from_bundles {
        let u = &ctx.user;
        u.algebras
            .keys()
            .chain(u.bimodules.keys())
            .chain(u.maps.keys())
            .chain(u.tensors.keys())
            .chain(u.forms.keys())
            .cloned()
            .collect()
    } else {
        list(ctx.catalog_dir())?
    };
    let mut todo: Vec<String> = Vec::new();
    for n in &names {
        ctx.ensure(n)?;
        for m in std::iter::once(n.clone()).chain(ctx.references(n)) {
            if !todo.contains(&m) {
                todo.push(m);
            }
        }
    }
    let mut results = Vec::new();
    for n in &todo {
        let kind = ctx.bundle.kind_of(n).unwrap_or("object");
        results.push((n.clone(), kind, ctx.bundle.check(n)?));
    }
    let all_ok = results.iter().all(|r| r.2.is_ok());
    if json {
        let objects: Vec<serde_json::Value> = results
            .iter()
            .map(|(n, k, r)| {
                let mut v = r.to_json();
                v["name"] = json!(n);
                v["kind"] = json!(k);
                v
            })
            .collect();
        let doc = json!({ "ok": all_ok, "objects": objects });
        say!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        for (n, k, r) in &results {
            if r.is_ok() {
                say!("{n} ({k}): ok");
            } else {
                say_raw!("{n} ({k}): FAIL, {r}");
            }
        }
    }
    Ok(if all_ok { OK } else { VIOLATION })
}

// ---- classify ----

fn classify(ctx: &mut Context, algebra: &str, form: &str, json: bool) -> Result<u8> {
    let a = ctx.algebra(algebra)?;
    let b = ctx.form(form, a.dim())?;
    let c = classify_form(&a, &b)?;
    if json {
        say!("{}", serde_json::to_string_pretty(&c.to_json()).expect("json"));
    } else {
        say_raw!("{c}");
    }
    Ok(OK)
}

// ---- random ----

#[allow(clippy::too_many_arguments)]
fn random_tensor(
    ctx: &mut Context,
    dim: usize,
    symmetry: &str,
    seed: u64,
    algebra: Option<String>,
    name: &str,
    out: Option<&Path>,
    json: bool,
) -> Result<u8> {
    let parity = Parity::parse(symmetry)?;
    let r = random_tensor2(dim, parity, seed);
    let mut bundle = Bundle::default();
    if let Some(an) = &algebra {
        let a = ctx.algebra(an)?;
        let rep = check_equation(&a, &r)?;
        if !json {
            eprintln!("{name} on {an}: equation {}", if rep.is_ok() { "holds" } else { "fails" });
        }
        bundle.algebras.insert(an.clone(), AlgebraRecord { algebra: a });
    }
    let rec = TensorRecord { tensor: r, algebra, parity: Some(parity), solves: false };
    bundle.tensors.insert(name.to_string(), rec);
    emit(&bundle, None, out, json)
}

// ---- catalog ----

fn catalog_cmd(ctx: &Context, action: CatalogAction, json: bool) -> Result<u8> {
    match action {
        CatalogAction::List => {
            let mut rows = Vec::new();
            for n in list(ctx.catalog_dir())? {
                let e = catalog::load_from(ctx.catalog_dir(), &n)?;
                let a = e.algebra()?;
                let kind = if e.is_map() { "map" } else { "algebra" };
                rows.push((n, kind, a.level().value(), a.dim(), e.provenance.clone()));
            }
            if json {
                let v: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(n, k, l, d, p)| json!({"name": n, "kind": k, "level": l, "dim": d, "provenance": p}))
                    .collect();
                say!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                for (n, k, l, d, p) in rows {
                    say!("{n:<26} {k:<8} level {l} dim {d}  {p}");
                }
            }
        }
        CatalogAction::Show { name } => {
            let e = catalog::load_from(ctx.catalog_dir(), &name)?;
            say!("{}", e.bundle.to_json_string());
        }
        CatalogAction::Export { out } => {
            catalog::export(&out)?;
            if !json {
                say!("exported {} entries to {}", catalog::shipped().count(), out.display());
            }
        }
    }
    Ok(OK)
}

// ---- derive ----

enum Obj {
    Algebra(ClusterAlgebra),
    Bimodule(Bimodule, String),
    Tensor(Tensor2, String, Parity, bool),
    Form(BilinearForm, String, Vec<String>),
}

fn parse_level_symmetry(s: &str) -> Result<Parity> {
    match Parity::parse(s)? {
        Parity::Any => Err(Error::Parity("lift needs sym or skew".into())),
        p => Ok(p),
    }
}

/// The cocycle flag carried by the form of a canonical solution.
fn cocycle_flag(level: Level) -> &'static str {
    match level {
        Level::Assoc => "connes_cocycle",
        Level::Dend => "dend_2cocycle",
        _ => "quadri_2cocycle",
    }
}

fn derive(ctx: &mut Context, c: Construction, opts: DeriveOpts, json: bool) -> Result<u8> {
    let verify = if opts.no_verify { Verify::Skip } else { Verify::Full };
    let full = verify == Verify::Full;
    let named = |default: String| opts.name.clone().unwrap_or(default);
    let mut objs: Vec<(String, Obj)> = Vec::new();
    match c {
        Construction::Project { algebra, target } => {
            let a = ctx.algebra(&algebra)?;
            objs.push((named(format!("{algebra}_{target}")), Obj::Algebra(project(&a, &target)?)));
        }
        Construction::DualBimodule { algebra, bimodule } => {
            let a = ctx.algebra(&algebra)?;
            let m = ctx.bimodule(&bimodule, &a)?;
            ensure_algebra_in(ctx, &algebra, &a);
            let name = named(format!("{algebra}_{bimodule}_dual"));
            objs.push((name, Obj::Bimodule(dual_bimodule(&a, &m)?, algebra)));
        }
        Construction::Restrict { algebra, bimodule, rule } => {
            let a = ctx.algebra(&algebra)?;
            let m = ctx.bimodule(&bimodule, &a)?;
            let (b, r) = restrict_bimodule(&a, &m, &rule)?;
            let an = named(format!("{algebra}_{rule}"));
            objs.push((format!("{an}_module"), Obj::Bimodule(r, an.clone())));
            objs.insert(0, (an, Obj::Algebra(b)));
        }
        Construction::Semidirect { algebra, bimodule } => {
            let a = ctx.algebra(&algebra)?;
            let m = ctx.bimodule(&bimodule, &a)?;
            let s = if full { semidirect_sum(&a, &m)? } else { semidirect_sum_unchecked(&a, &m)? };
            objs.push((named(format!("{algebra}_x_{bimodule}")), Obj::Algebra(s)));
        }
        Construction::Induce { algebra, bimodule, map } => {
            let a = ctx.algebra(&algebra)?;
            let m = ctx.bimodule(&bimodule, &a)?;
            let t = ctx.map(&map)?;
            let fine = induce_on_module_with(&a, &m, &t, verify)?;
            objs.push((named(format!("induced_{map}")), Obj::Algebra(fine)));
        }
        Construction::RbFiner { algebra, map } => {
            let a = ctx.algebra(&algebra)?;
            let r = ctx.map(&map)?;
            objs.push((named(format!("{algebra}_rb_{map}")), Obj::Algebra(rb_finer_with(&a, &r, verify)?)));
        }
        Construction::RbPair { algebra, map1, map2 } => {
            let a = ctx.algebra(&algebra)?;
            let (r1, r2) = (ctx.map(&map1)?, ctx.map(&map2)?);
            let q = rb_pair_quadri_with(&a, &r1, &r2, verify)?;
            objs.push((named(format!("{algebra}_rb_{map1}_{map2}")), Obj::Algebra(q)));
        }
        Construction::RbTriple { algebra, map1, map2, map3 } => {
            let a = ctx.algebra(&algebra)?;
            let (r1, r2, r3) = (ctx.map(&map1)?, ctx.map(&map2)?, ctx.map(&map3)?);
            let o = rb_triple_octo_with(&a, &r1, &r2, &r3, verify)?;
            objs.push((named(format!("{algebra}_rb_{map1}_{map2}_{map3}")), Obj::Algebra(o)));
        }
        Construction::Compatible { algebra, bimodule, map } => {
            let a = ctx.algebra(&algebra)?;
            let m = ctx.bimodule(&bimodule, &a)?;
            let t = ctx.map(&map)?;
            let fine = compatible_from_invertible_with(&a, &m, &t, verify)?;
            objs.push((named(format!("{algebra}_compatible_{map}")), Obj::Algebra(fine)));
        }
        Construction::FinerFromForm { algebra, form } => {
            let a = ctx.algebra(&algebra)?;
            let b = ctx.form(&form, a.dim())?;
            let fine = if full { finer_from_form(&a, &b)? } else { finer_from_form_unverified(&a, &b)? };
            objs.push((named(format!("{algebra}_from_{form}")), Obj::Algebra(fine)));
        }
        Construction::DualProduct { algebra, tensor } => {
            let a = ctx.algebra(&algebra)?;
            let r = ctx.tensor(&tensor)?;
            let d = induce_dual_product_with(&a, &r, verify)?;
            objs.push((named(format!("{algebra}_dual_{tensor}")), Obj::Algebra(d)));
        }
        Construction::DoubleProduct { algebra, dual, variant } => {
            let a = ctx.algebra(&algebra)?;
            let ad = ctx.algebra(&dual)?;
            let d = double_product(&a, &ad, DoubleVariant::parse(&variant)?)?;
            objs.push((named(format!("{algebra}_double_{dual}")), Obj::Algebra(d)));
        }
        Construction::CanonicalSolution { algebra, variant } => {
            let a = ctx.algebra(&algebra)?;
            let s = canonical_double_solution(&a, &variant)?;
            if full && !s.equation.is_ok() {
                return Err(Error::EquationFailed(s.equation));
            }
            let dn = named(format!("{algebra}_{variant}"));
            let b = tensor_to_form(&s.r)?;
            let flag = cocycle_flag(s.double.level()).to_string();
            objs.push((format!("{dn}_r"), Obj::Tensor(s.r, dn.clone(), s.parity, true)));
            objs.push((format!("{dn}_form"), Obj::Form(b, dn.clone(), vec!["nondegenerate".into(), flag])));
            objs.insert(0, (dn, Obj::Algebra(s.double)));
        }
        Construction::Lift { algebra, bimodule, map, symmetry } => {
            let a = ctx.algebra(&algebra)?;
            let m = ctx.bimodule(&bimodule, &a)?;
            let t = ctx.map(&map)?;
            let lift = lift_o_operator(&a, &m, &t, parse_level_symmetry(&symmetry)?)?;
            if full && !lift.equation.is_ok() {
                return Err(Error::EquationFailed(lift.equation));
            }
            let dn = named(format!("{algebra}_lift_{map}"));
            let parity = if lift.r.is_symmetric() { Parity::Sym } else { Parity::Skew };
            objs.push((format!("{dn}_r"), Obj::Tensor(lift.r, dn.clone(), parity, true)));
            objs.insert(0, (dn, Obj::Algebra(lift.double)));
        }
    }
    let mut bundle = Bundle::default();
    let mut referenced = Vec::new();
    for (name, obj) in objs.iter() {
        match obj {
            Obj::Algebra(a) => {
                bundle.algebras.insert(name.clone(), AlgebraRecord { algebra: a.clone() });
            }
            Obj::Bimodule(m, over) => {
                referenced.push(over.clone());
                let rec = BimoduleRecord { bimodule: m.clone(), algebra: Some(over.clone()) };
                bundle.bimodules.insert(name.clone(), rec);
            }
            Obj::Tensor(r, over, p, solves) => {
                referenced.push(over.clone());
                let rec = TensorRecord { tensor: r.clone(), algebra: Some(over.clone()), parity: Some(*p), solves: *solves };
                bundle.tensors.insert(name.clone(), rec);
            }
            Obj::Form(b, over, require) => {
                referenced.push(over.clone());
                let rec = FormRecord { form: b.clone(), algebra: Some(over.clone()), require: require.clone() };
                bundle.forms.insert(name.clone(), rec);
            }
        }
    }
    for an in referenced {
        if !bundle.algebras.contains_key(&an) {
            let a = ctx.bundle.algebra(&an)?.clone();
            bundle.algebras.insert(an, AlgebraRecord { algebra: a });
        }
    }
    let names: Vec<String> = objs.into_iter().map(|(n, _)| n).collect();
    emit(&bundle, if full { Some(&names) } else { None }, opts.out.as_deref(), json)
}

/// Bimodule records refer to their algebra by name; make sure the name resolves.
fn ensure_algebra_in(ctx: &mut Context, name: &str, a: &ClusterAlgebra) {
    if ctx.bundle.algebra(name).is_err() {
        ctx.bundle.algebras.insert(name.to_string(), AlgebraRecord { algebra: a.clone() });
    }
}

/// Serialize, optionally re-parse and re-check `verify` names, then print the
/// bundle or merge it into `out`.
fn emit(bundle: &Bundle, verify: Option<&[String]>, out: Option<&Path>, json: bool) -> Result<u8> {
    let text = bundle.to_json_string();
    if let Some(names) = verify {
        let back = Bundle::parse(&text)?;
        let mut failed = Report::ok();
        for n in names {
            failed.merge(back.check(n)?);
        }
        if !failed.is_ok() {
            return Err(Error::PostVerification(failed));
        }
    }
    match out {
        None => say_raw!("{text}"),
        Some(path) => {
            let mut merged = if path.exists() { read_bundle(path)? } else { Bundle::default() };
            merged.merge(bundle.clone());
            std::fs::write(path, merged.to_json_string())
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let summary = summarize(bundle);
            if json {
                say!("{}", serde_json::to_string_pretty(&json!({ "ok": true, "wrote": summary })).expect("json"));
            } else {
                for s in summary {
                    say!("wrote {s} to {}", path.display());
                }
            }
        }
    }
    Ok(OK)
}

fn summarize(b: &Bundle) -> Vec<String> {
    let mut out = Vec::new();
    for (n, r) in &b.algebras {
        out.push(format!("algebra {n} (level {}, dim {})", r.algebra.level().value(), r.algebra.dim()));
    }
    for n in b.bimodules.keys() {
        out.push(format!("bimodule {n}"));
    }
    for n in b.maps.keys() {
        out.push(format!("map {n}"));
    }
    for n in b.tensors.keys() {
        out.push(format!("tensor {n}"));
    }
    for n in b.forms.keys() {
        out.push(format!("form {n}"));
    }
    out
}
