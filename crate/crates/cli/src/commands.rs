use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Map, Value};
use witt_burnside::burnside::{
    ap_ghost, ap_ghost_inv, ap_op, gamma, gamma_inv, ind_ap, ind_nr, nr_ghost, nr_ghost_inv, nr_op, res_ap, res_nr,
    teichmuller, teichmuller_inv, theta, theta_inv, wg_ghost, wg_op,
};
use witt_burnside::cyclic::{
    cyc_ap_ghost, cyc_ap_ghost_inv, cyc_ap_op, cyc_frobenius, cyc_nr_ghost, cyc_nr_ghost_inv, cyc_nr_op,
    cyc_teichmuller, cyc_teichmuller_inv, cyc_theta, cyc_theta_inv, cyc_verschiebung, cyc_witt_ghost, cyc_witt_op,
};
use witt_burnside::qdeform::{
    artin_hasse, p_table, q_ap_ghost, q_ap_ghost_inv, q_ap_op, q_frobenius, q_nr_ghost, q_nr_ghost_inv, q_nr_op,
    q_teichmuller, q_teichmuller_inv, q_theta, q_theta_inv, q_verschiebung, q_witt_ghost, q_witt_op,
};
use witt_burnside::{
    CyclicVector, Flavor, GroupContext, IndexedVector, Op, QParam, RingSpec, RingValue, TruncationSet,
    UniversalPolySet,
};

use crate::args::*;
use crate::files::{GroupDescriptor, VectorFile};
use crate::{cache, to_json, verify, CliError, Outcome, EXIT_VERIFY_FAILED};

type CmdResult = Result<Outcome, CliError>;

pub fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Group { cmd: GroupCmd::Info { group } } => group_info(&group),
        Command::Witt(a) => arith(Flavor::Witt, a),
        Command::Necklace(a) => arith(Flavor::Necklace, a),
        Command::Aperiodic(a) => arith(Flavor::Aperiodic, a),
        Command::Ghost(a) => ghost(a),
        Command::Teichmuller(a) => teich(a),
        Command::Theta(a) => theta_cmd(a),
        Command::Ind(a) => ind_res(a, true),
        Command::Res(a) => ind_res(a, false),
        Command::Universal(a) => universal(a),
        Command::Cyclic { cmd } => cyclic(None, cmd),
        Command::Qpoly { cmd: QpolyCmd::P { n } } => qpoly_p(n),
        Command::Quniversal(a) => quniversal(a),
        Command::Qwitt { q, cmd } => {
            let q = q.ok_or_else(|| CliError::Usage("qwitt needs --q <int|q>".into()))?;
            cyclic(Some(QParam::parse(&q)?), cmd)
        }
        Command::Artinhasse(a) => artinhasse(a),
        Command::Verify(a) => {
            let report = verify::run_cli(&a)?;
            let code = if report.failures.is_empty() { 0 } else { EXIT_VERIFY_FAILED };
            Ok(Outcome { stdout: to_json(&report), code })
        }
    }
}

fn op_of(op: OpArg) -> Op {
    match op {
        OpArg::Add => Op::Add,
        OpArg::Mul => Op::Mul,
        OpArg::Neg => Op::Neg,
    }
}

fn universal_op(op: UniversalOp) -> Op {
    match op {
        UniversalOp::Sum => Op::Add,
        UniversalOp::Prod => Op::Mul,
        UniversalOp::Neg => Op::Neg,
    }
}

fn ring(s: &str) -> Result<Arc<RingSpec>, CliError> {
    Ok(RingSpec::parse(s)?.arc())
}

fn group(s: &str) -> Result<Arc<GroupContext>, CliError> {
    Ok(GroupContext::parse(s)?)
}

/// `--ring` together with the rings an inverse map may receive its input over.
fn with_covers(r: &Arc<RingSpec>) -> Vec<Arc<RingSpec>> {
    let mut out = vec![r.clone()];
    for extra in [r.rationalization(), r.cover()] {
        if out.iter().all(|o| **o != extra) {
            out.push(extra.arc());
        }
    }
    out
}

fn binary_required(op: Op, rhs: &Option<std::path::PathBuf>) -> Result<(), CliError> {
    match (op, rhs) {
        (Op::Neg, Some(_)) => Err(CliError::Usage("neg takes no --rhs".into())),
        (Op::Add | Op::Mul, None) => Err(CliError::Usage("add and mul need --rhs".into())),
        _ => Ok(()),
    }
}

fn emit_indexed(v: &IndexedVector, descriptor: &str) -> CmdResult {
    Ok(Outcome::ok(to_json(&VectorFile::from_indexed(v, descriptor))))
}

fn emit_cyclic(v: &CyclicVector) -> CmdResult {
    Ok(Outcome::ok(to_json(&VectorFile::from_cyclic(v))))
}

fn read_indexed(
    path: &Path,
    ctx: &Arc<GroupContext>,
    descriptor: &str,
    rings: &[Arc<RingSpec>],
    flavor: Option<Flavor>,
) -> Result<IndexedVector, CliError> {
    VectorFile::read(path)?.to_indexed(ctx, descriptor, rings, flavor)
}

fn group_info(spec: &str) -> CmdResult {
    let ctx = group(spec)?;
    let classes: Vec<Value> = ctx
        .table()
        .classes()
        .iter()
        .map(|c| json!({"label": c.label, "index": c.index, "normalizer_index": c.normalizer_index}))
        .collect();
    let mobius: Vec<Vec<String>> =
        ctx.marks().mu().rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let doc = json!({"classes": classes, "marks": ctx.marks().rows(), "mobius": mobius});
    Ok(Outcome::ok(to_json(&doc)))
}

fn arith(flavor: Flavor, a: ArithArgs) -> CmdResult {
    let op = op_of(a.op);
    binary_required(op, &a.rhs)?;
    let ctx = group(&a.group)?;
    let r = ring(&a.ring)?;
    let x = read_indexed(&a.lhs, &ctx, &a.group, &[r.clone()], Some(flavor))?;
    let y = a.rhs.as_deref().map(|p| read_indexed(p, &ctx, &a.group, &[r.clone()], Some(flavor))).transpose()?;
    let out = match flavor {
        Flavor::Witt => {
            cache::universal(&ctx, op);
            wg_op(op, &x, y.as_ref())?
        }
        Flavor::Necklace => nr_op(op, &x, y.as_ref())?,
        _ => ap_op(op, &x, y.as_ref())?,
    };
    emit_indexed(&out, &a.group)
}

fn ghost(a: GhostArgs) -> CmdResult {
    let ctx = group(&a.group)?;
    let r = ring(&a.ring)?;
    let flavor = Flavor::parse(&a.flavor)?;
    let out = if a.inverse {
        let g = read_indexed(&a.input, &ctx, &a.group, &[r.clone()], Some(Flavor::Ghost))?;
        match flavor {
            Flavor::Witt => teichmuller_inv(&nr_ghost_inv(&g.rationalize())?, &r)?,
            Flavor::Necklace => nr_ghost_inv(&g)?,
            Flavor::Aperiodic => ap_ghost_inv(&g)?,
            Flavor::Ghost => return Err(CliError::Usage("--flavor must be W, Nr or Ap".into())),
        }
    } else {
        let x = read_indexed(&a.input, &ctx, &a.group, &[r], Some(flavor))?;
        match flavor {
            Flavor::Witt => wg_ghost(&x)?,
            Flavor::Necklace => nr_ghost(&x)?,
            Flavor::Aperiodic => ap_ghost(&x)?,
            Flavor::Ghost => return Err(CliError::Usage("--flavor must be W, Nr or Ap".into())),
        }
    };
    emit_indexed(&out, &a.group)
}

fn teich(a: TeichArgs) -> CmdResult {
    let ctx = group(&a.group)?;
    let r = ring(&a.ring)?;
    let out = if a.inverse {
        let flavor = if a.aperiodic { Flavor::Aperiodic } else { Flavor::Necklace };
        let x = read_indexed(&a.input, &ctx, &a.group, &with_covers(&r), Some(flavor))?;
        if a.aperiodic {
            gamma_inv(&x, &r)?
        } else {
            teichmuller_inv(&x, &r)?
        }
    } else {
        let x = read_indexed(&a.input, &ctx, &a.group, &[r], Some(Flavor::Witt))?;
        if a.aperiodic {
            gamma(&x)?
        } else {
            teichmuller(&x)?
        }
    };
    emit_indexed(&out, &a.group)
}

fn theta_cmd(a: ThetaArgs) -> CmdResult {
    let ctx = group(&a.group)?;
    let r = ring(&a.ring)?;
    let flavor = if a.inverse { Flavor::Aperiodic } else { Flavor::Necklace };
    let x = read_indexed(&a.input, &ctx, &a.group, &[r], Some(flavor))?;
    let out = if a.inverse { theta_inv(&x)? } else { theta(&x)? };
    emit_indexed(&out, &a.group)
}

fn ind_res(a: IndResArgs, induce: bool) -> CmdResult {
    let ctx = group(&a.group)?;
    let r = ring(&a.ring)?;
    let u = ctx
        .table()
        .find_label(&a.subgroup)
        .ok_or_else(|| CliError::Usage(format!("{} has no subgroup class '{}'", a.group, a.subgroup)))?;
    let flavor = Flavor::parse(&a.flavor)?;
    if !matches!(flavor, Flavor::Necklace | Flavor::Aperiodic) {
        return Err(CliError::Usage("--flavor must be Nr or Ap".into()));
    }
    let sub = ctx.subgroup_context(u);
    let sub_desc = format!("{}>{}", a.group, a.subgroup);
    if induce {
        let x = read_indexed(&a.input, &sub, &sub_desc, &[r], Some(flavor))?;
        let out = if flavor == Flavor::Necklace { ind_nr(&ctx, u, &x)? } else { ind_ap(&ctx, u, &x)? };
        emit_indexed(&out, &a.group)
    } else {
        let x = read_indexed(&a.input, &ctx, &a.group, &[r], Some(flavor))?;
        let out = if flavor == Flavor::Necklace { res_nr(&ctx, u, &x)? } else { res_ap(&ctx, u, &x)? };
        emit_indexed(&out, &sub_desc)
    }
}

#[derive(Serialize)]
struct TermDoc {
    coeff: String,
    exponents: Map<String, Value>,
}

#[derive(Serialize)]
struct PolyDoc {
    class: String,
    text: String,
    terms: Vec<TermDoc>,
}

#[derive(Serialize)]
struct UniversalDoc {
    group: GroupDescriptor,
    op: String,
    variables: Vec<String>,
    polynomials: Vec<PolyDoc>,
}

fn universal_doc(group: GroupDescriptor, labels: &[String], set: &UniversalPolySet) -> UniversalDoc {
    let names = &set.var_names;
    let polynomials = labels
        .iter()
        .zip(&set.polys)
        .map(|(label, p)| PolyDoc {
            class: label.clone(),
            text: p.to_string_with(names),
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| TermDoc {
                    coeff: c.to_string(),
                    exponents: m
                        .iter()
                        .zip(names)
                        .filter(|(e, _)| **e > 0)
                        .map(|(e, n)| (n.clone(), Value::from(*e)))
                        .collect(),
                })
                .collect(),
        })
        .collect();
    UniversalDoc { group, op: set.op.poly_name().to_string(), variables: names.clone(), polynomials }
}

fn universal(a: UniversalArgs) -> CmdResult {
    let ctx = group(&a.group)?;
    let set = cache::universal(&ctx, universal_op(a.op));
    let doc = universal_doc(GroupDescriptor::Named(a.group.clone()), &ctx.labels(), &set);
    Ok(Outcome::ok(to_json(&doc)))
}

fn truncation(t: &TruncArgs) -> Result<Arc<TruncationSet>, CliError> {
    Ok(match (&t.trunc, &t.trunc_set) {
        (Some(n), None) => TruncationSet::divisors_of(*n)?,
        (None, Some(set)) => TruncationSet::new(set)?,
        _ => return Err(CliError::Usage("give exactly one of --trunc and --trunc-set".into())),
    })
}

fn cyc_descriptor(t: &TruncationSet) -> GroupDescriptor {
    GroupDescriptor::Cyclic { cyclic_trunc: t.members().to_vec() }
}

fn read_cyclic(
    path: &Path,
    t: &Arc<TruncationSet>,
    rings: &[Arc<RingSpec>],
    flavor: Option<Flavor>,
) -> Result<CyclicVector, CliError> {
    VectorFile::read(path)?.to_cyclic(t, rings, flavor)
}

fn cyclic(q: Option<QParam>, cmd: CyclicCmd) -> CmdResult {
    match cmd {
        CyclicCmd::Witt(a) => cyc_arith(q, Flavor::Witt, a),
        CyclicCmd::Necklace(a) => cyc_arith(q, Flavor::Necklace, a),
        CyclicCmd::Aperiodic(a) => cyc_arith(q, Flavor::Aperiodic, a),
        CyclicCmd::Ghost { flavor, inverse, args } => {
            let t = truncation(&args.trunc)?;
            let r = ring(&args.ring)?;
            let flavor = Flavor::parse(&flavor)?;
            let out = if inverse {
                let g = read_cyclic(&args.input, &t, &[r.clone()], Some(Flavor::Ghost))?;
                match (flavor, q) {
                    (Flavor::Witt, None) => cyc_teichmuller_inv(&cyc_nr_ghost_inv(&g.rationalize())?, &r)?,
                    (Flavor::Witt, Some(q)) => q_teichmuller_inv(q, &q_nr_ghost_inv(q, &g.rationalize())?, &r)?,
                    (Flavor::Necklace, None) => cyc_nr_ghost_inv(&g)?,
                    (Flavor::Necklace, Some(q)) => q_nr_ghost_inv(q, &g)?,
                    (Flavor::Aperiodic, None) => cyc_ap_ghost_inv(&g)?,
                    (Flavor::Aperiodic, Some(q)) => q_ap_ghost_inv(q, &g)?,
                    (Flavor::Ghost, _) => return Err(CliError::Usage("--flavor must be W, Nr or Ap".into())),
                }
            } else {
                let x = read_cyclic(&args.input, &t, &[r], Some(flavor))?;
                match (flavor, q) {
                    (Flavor::Witt, None) => cyc_witt_ghost(&x)?,
                    (Flavor::Witt, Some(q)) => q_witt_ghost(q, &x)?,
                    (Flavor::Necklace, None) => cyc_nr_ghost(&x)?,
                    (Flavor::Necklace, Some(q)) => q_nr_ghost(q, &x)?,
                    (Flavor::Aperiodic, None) => cyc_ap_ghost(&x)?,
                    (Flavor::Aperiodic, Some(q)) => q_ap_ghost(q, &x)?,
                    (Flavor::Ghost, _) => return Err(CliError::Usage("--flavor must be W, Nr or Ap".into())),
                }
            };
            emit_cyclic(&out)
        }
        CyclicCmd::Teichmuller { inverse, args } => {
            let t = truncation(&args.trunc)?;
            let r = ring(&args.ring)?;
            let out = if inverse {
                let x = read_cyclic(&args.input, &t, &with_covers(&r), Some(Flavor::Necklace))?;
                match q {
                    None => cyc_teichmuller_inv(&x, &r)?,
                    Some(q) => q_teichmuller_inv(q, &x, &r)?,
                }
            } else {
                let x = read_cyclic(&args.input, &t, &[r], Some(Flavor::Witt))?;
                match q {
                    None => cyc_teichmuller(&x)?,
                    Some(q) => q_teichmuller(q, &x)?,
                }
            };
            emit_cyclic(&out)
        }
        CyclicCmd::Theta { inverse, args } => {
            let t = truncation(&args.trunc)?;
            let r = ring(&args.ring)?;
            let flavor = if inverse { Flavor::Aperiodic } else { Flavor::Necklace };
            let x = read_cyclic(&args.input, &t, &[r], Some(flavor))?;
            let out = match (inverse, q.is_some()) {
                (false, false) => cyc_theta(&x)?,
                (true, false) => cyc_theta_inv(&x)?,
                (false, true) => q_theta(&x)?,
                (true, true) => q_theta_inv(&x)?,
            };
            emit_cyclic(&out)
        }
        CyclicCmd::Frobenius { r: k, args } => {
            let t = truncation(&args.trunc)?;
            let x = read_cyclic(&args.input, &t, &[ring(&args.ring)?], None)?;
            let out = match q {
                None => cyc_frobenius(k, &x)?,
                Some(q) => q_frobenius(q, k, &x)?,
            };
            emit_cyclic(&out)
        }
        CyclicCmd::Verschiebung { r: k, args } => {
            let t = truncation(&args.trunc)?;
            let x = read_cyclic(&args.input, &t, &[ring(&args.ring)?], None)?;
            let out = match q {
                None => cyc_verschiebung(k, &x)?,
                Some(q) => q_verschiebung(q, k, &x)?,
            };
            emit_cyclic(&out)
        }
        CyclicCmd::Universal { op, trunc } => {
            let t = truncation(&trunc)?;
            let op = universal_op(op);
            let set = match q {
                None => t.universal(op),
                Some(QParam::Int(k)) => t.q_universal_at(op, k)?,
                Some(QParam::Indeterminate) => t.q_universal(op),
            };
            let doc = universal_doc(cyc_descriptor(&t), &t.labels(), &set);
            Ok(Outcome::ok(to_json(&doc)))
        }
    }
}

fn cyc_arith(q: Option<QParam>, flavor: Flavor, a: CycArithArgs) -> CmdResult {
    let op = op_of(a.op);
    binary_required(op, &a.rhs)?;
    let t = truncation(&a.trunc)?;
    let r = ring(&a.ring)?;
    let x = read_cyclic(&a.lhs, &t, &[r.clone()], Some(flavor))?;
    let y = a.rhs.as_deref().map(|p| read_cyclic(p, &t, &[r.clone()], Some(flavor))).transpose()?;
    let y = y.as_ref();
    let out = match (flavor, q) {
        (Flavor::Witt, None) => cyc_witt_op(op, &x, y)?,
        (Flavor::Witt, Some(q)) => q_witt_op(q, op, &x, y)?,
        (Flavor::Necklace, None) => cyc_nr_op(op, &x, y)?,
        (Flavor::Necklace, Some(q)) => q_nr_op(q, op, &x, y)?,
        (_, None) => cyc_ap_op(op, &x, y)?,
        (_, Some(q)) => q_ap_op(q, op, &x, y)?,
    };
    emit_cyclic(&out)
}

fn qpoly_p(n: u64) -> CmdResult {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let table: Map<String, Value> =
        p_table(n)?.into_iter().map(|((n, i, j), p)| (format!("({n},{i},{j})"), Value::from(p.to_string()))).collect();
    Ok(Outcome::ok(to_json(&table)))
}

fn quniversal(a: QuniversalArgs) -> CmdResult {
    let t = truncation(&a.trunc)?;
    let set = t.q_universal(universal_op(a.op));
    let doc = universal_doc(cyc_descriptor(&t), &t.labels(), &set);
    Ok(Outcome::ok(to_json(&doc)))
}

fn artinhasse(a: ArtinArgs) -> CmdResult {
    let q = QParam::parse(&a.q)?;
    if a.deg == 0 {
        return Err(CliError::Usage("--deg must be positive".into()));
    }
    let members: Vec<u64> = (1..=a.deg).collect();
    let t = TruncationSet::new(&members)?;
    let x = match &a.input {
        Some(path) => read_cyclic(path, &t, &[ring(&a.ring)?], Some(Flavor::Witt))?,
        None => {
            let mut vars: Vec<String> = members.iter().map(|n| format!("x{n}")).collect();
            if q == QParam::Indeterminate {
                vars.insert(0, "q".into());
            }
            let r = ring(&format!("ZPoly({})", vars.join(",")))?;
            let comps = members.iter().map(|n| RingValue::var(&r, &format!("x{n}"))).collect::<Result<_, _>>()?;
            CyclicVector::new(&t, Flavor::Witt, &r, comps)?
        }
    };
    let curve = artin_hasse(q, &x)?;
    let doc = json!({
        "q": q.to_string(),
        "ring": x.ring().to_string(),
        "degree": a.deg,
        "coefficients": curve.to_strings(),
    });
    Ok(Outcome::ok(to_json(&doc)))
}
