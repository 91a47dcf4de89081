use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use sofic_core::instance::{parse_group_table, parse_instance, Directive, GroupDescriptor, Instance};
use sofic_core::sofic::{verify_approximation, SoficError};
use sofic_core::transfer::{default_kernel_search, ApproxSpec, Limits, Mode, TransferReport, Verdict};
use sofic_core::{GroupKind, GroupModel, LabeledDigraph, Rational, VertexSet, WeissSelection};

use crate::report::{list, InputDigest, Outcome, Table};
use crate::{CliError, LimitArgs};

fn read(path: &Path, digest: &mut InputDigest) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    digest.add("file", text.as_bytes());
    Ok(text)
}

/// Resolves a `Z^k` or `finite:<path>` descriptor; relative table paths are
/// taken from `base`.
fn load_group(desc: &str, base: &Path, digest: &mut InputDigest) -> Result<GroupModel, CliError> {
    match GroupDescriptor::parse(desc) {
        Some(GroupDescriptor::FreeAbelian(k)) => Ok(GroupModel::free_abelian(k)),
        Some(GroupDescriptor::Finite(path)) => {
            let full = base.join(&path);
            let text = read(&full, digest)?;
            Ok(parse_group_table(&text, &path)?.with_description(format!("finite:{path}")))
        }
        None => Err(CliError::Parse(format!(
            "bad group descriptor {desc:?}: expected Z^k (k >= 1) or finite:<path>"
        ))),
    }
}

fn load_instance(path: &Path, digest: &mut InputDigest) -> Result<Instance, CliError> {
    let text = read(path, digest)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut table_err = None;
    let parsed = parse_instance(&text, |p| {
        load_group(&format!("finite:{p}"), &base, digest).map_err(|e| {
            let msg = e.to_string();
            table_err = Some(e);
            sofic_core::InstanceError::Table {
                path: p.to_string(),
                message: msg,
            }
        })
    });
    match (parsed, table_err) {
        (Ok(inst), _) => Ok(inst),
        (Err(_), Some(e)) => Err(e),
        (Err(e), None) => Err(CliError::Parse(format!("{}: {e}", path.display()))),
    }
}

fn element<'a>(inst: &'a Instance, name: &str) -> Result<&'a sofic_core::GroupRingKernel, CliError> {
    inst.element(name)
        .ok_or_else(|| CliError::Parse(format!("instance has no element named {name}")))
}

fn load_graph(path: &Path, group: &GroupModel, digest: &mut InputDigest) -> Result<LabeledDigraph, CliError> {
    let text = read(path, digest)?;
    LabeledDigraph::parse_text(&text, group.labels().to_vec())
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse()
        .map_err(|_| CliError::Parse(format!("bad rational {s:?}: expected a/b")))
}

enum GoodSpec {
    Auto,
    All,
    List(Vec<usize>),
}

fn parse_good(s: &str) -> Result<GoodSpec, CliError> {
    match s {
        "auto" => Ok(GoodSpec::Auto),
        "all" => Ok(GoodSpec::All),
        _ => s
            .split(',')
            .map(|v| v.trim().parse())
            .collect::<Result<_, _>>()
            .map(GoodSpec::List)
            .map_err(|_| CliError::Parse(format!("bad vertex list {s:?}"))),
    }
}

/// Vertices whose `radius`-ball is isomorphic to the Cayley ball.
fn cayley_vertices(
    graph: &LabeledDigraph,
    group: &GroupModel,
    radius: usize,
    limits: &LimitArgs,
) -> Result<VertexSet, CliError> {
    let ball = group.cayley_ball_with_limit(radius, limits.max_ball)?;
    let mut out = Vec::new();
    for v in 0..graph.vertex_count() {
        if graph.ball_isomorphism(v, &ball)?.is_some() {
            out.push(v);
        }
    }
    Ok(VertexSet::new(out))
}

fn resolve_good(
    spec: &str,
    graph: &LabeledDigraph,
    group: &GroupModel,
    radius: usize,
    limits: &LimitArgs,
) -> Result<VertexSet, CliError> {
    Ok(match parse_good(spec)? {
        GoodSpec::Auto => cayley_vertices(graph, group, radius, limits)?,
        GoodSpec::All => VertexSet::all(graph.vertex_count()),
        GoodSpec::List(v) => VertexSet::checked(v, graph.vertex_count())?,
    })
}

fn check_vertex_limit(graph: &LabeledDigraph, limits: &LimitArgs) -> Result<(), CliError> {
    if graph.vertex_count() > limits.max_vertices {
        return Err(SoficError::TooManyVertices {
            count: graph.vertex_count(),
            limit: limits.max_vertices,
        }
        .into());
    }
    Ok(())
}

fn payload(x: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn cwd() -> PathBuf {
    PathBuf::from(".")
}

pub fn cayley_ball(desc: &str, radius: usize, limits: &LimitArgs) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    digest.arg("group", desc).arg("radius", radius).arg("max_ball", limits.max_ball);
    let group = load_group(desc, &cwd(), &mut digest)?;
    let ball = group.cayley_ball_with_limit(radius, limits.max_ball)?;
    let layers: Vec<usize> = (0..=radius)
        .map(|r| ball.prefix_len(r) - if r == 0 { 0 } else { ball.prefix_len(r - 1) })
        .collect();
    let edges = ball.graph().edge_count();
    let mut t = Table::default();
    t.row("group", group.description())
        .row("radius", radius)
        .row("generators", group.labels().join(" "))
        .row("size", ball.len())
        .row("edges", edges)
        .row("layer sizes", list(&layers, 24));
    Ok(Outcome {
        subcommand: "cayley-ball",
        inputs_digest: digest.finish(),
        payload: json!({
            "group": group.description(),
            "radius": radius,
            "generators": group.labels(),
            "size": ball.len(),
            "edge_count": edges,
            "layer_sizes": layers,
        }),
        table: t.render(),
        success: true,
    })
}

pub fn sofic_verify(
    desc: &str,
    graph_path: &Path,
    radius: usize,
    good: &str,
    epsilon: Option<&str>,
    limits: &LimitArgs,
) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    digest
        .arg("group", desc)
        .arg("radius", radius)
        .arg("good", good)
        .arg("epsilon", epsilon.unwrap_or("default"))
        .arg("max_ball", limits.max_ball)
        .arg("max_vertices", limits.max_vertices);
    let group = Arc::new(load_group(desc, &cwd(), &mut digest)?);
    let graph = load_graph(graph_path, &group, &mut digest)?;
    check_vertex_limit(&graph, limits)?;
    let good = resolve_good(good, &graph, &group, radius, limits)?;
    let total = graph.vertex_count();
    let eps = match epsilon {
        Some(s) => parse_rational(s)?,
        None => Rational::new((total - good.len() + 1) as i128, total as i128 + 1).expect("nonzero"),
    };
    let (verified, failure) = match verify_approximation(graph.clone(), good.clone(), eps, radius, group.clone()) {
        Ok(_) => (true, serde_json::Value::Null),
        Err(e @ (SoficError::BallMismatch { .. }
        | SoficError::CardinalityViolation { .. }
        | SoficError::EpsilonOutOfRange(_))) => {
            let kind = match e {
                SoficError::BallMismatch { .. } => "BallMismatch",
                SoficError::CardinalityViolation { .. } => "CardinalityViolation",
                _ => "EpsilonOutOfRange",
            };
            let vertex = match e {
                SoficError::BallMismatch { vertex, .. } => Some(vertex),
                _ => None,
            };
            (false, json!({ "kind": kind, "vertex": vertex, "message": e.to_string() }))
        }
        Err(e) => return Err(e.into()),
    };
    let mut t = Table::default();
    t.row("group", group.description())
        .row("vertices", total)
        .row("edges", graph.edge_count())
        .row("radius", radius)
        .row("good vertices", good.len())
        .row("epsilon", eps)
        .row("verified", verified);
    if let Some(msg) = failure.get("message") {
        t.row("failure", msg.as_str().unwrap_or_default());
    }
    Ok(Outcome {
        subcommand: "sofic-verify",
        inputs_digest: digest.finish(),
        payload: json!({
            "group": group.description(),
            "vertex_count": total,
            "edge_count": graph.edge_count(),
            "radius": radius,
            "epsilon": eps,
            "good_count": good.len(),
            "good": good,
            "verified": verified,
            "failure": failure,
        }),
        table: t.render(),
        success: verified,
    })
}

#[derive(Serialize)]
struct WeissReport<'a> {
    group: &'a str,
    vertex_count: usize,
    good_count: usize,
    ball_size: usize,
    selection: &'a WeissSelection,
    density_bound_holds: bool,
    separation_holds: bool,
}

pub fn weiss_select(
    desc: &str,
    graph_path: &Path,
    r0: usize,
    good: &str,
    limits: &LimitArgs,
) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    digest
        .arg("group", desc)
        .arg("r0", r0)
        .arg("good", good)
        .arg("max_ball", limits.max_ball)
        .arg("max_vertices", limits.max_vertices);
    let group = load_group(desc, &cwd(), &mut digest)?;
    let graph = load_graph(graph_path, &group, &mut digest)?;
    check_vertex_limit(&graph, limits)?;
    let radius = 2 * r0 + 1;
    let good = resolve_good(good, &graph, &group, radius, limits)?;
    let ball = group.cayley_ball_with_limit(radius, limits.max_ball)?;
    let sel = sofic_core::weiss_select(&graph, &good, r0, &ball)?;
    let total = graph.vertex_count();
    // weiss_select already re-verified both; recorded here for the report.
    let report = WeissReport {
        group: group.description(),
        vertex_count: total,
        good_count: good.len(),
        ball_size: ball.len(),
        selection: &sel,
        density_bound_holds: sel.selected.len() * 2 * ball.len() >= total,
        separation_holds: sel.min_pairwise_distance.map_or(true, |d| d >= radius),
    };
    let mut t = Table::default();
    t.row("group", group.description())
        .row("vertices", total)
        .row("good vertices", good.len())
        .row("r0", r0)
        .row("|N_{2r0+1}(B)|", ball.len())
        .row("selected", sel.selected.len())
        .row("V1", list(sel.selected.iter(), 16))
        .row("density", format!("{} >= {}", sel.achieved_density, sel.density_bound))
        .row(
            "min distance",
            sel.min_pairwise_distance.map_or("-".to_string(), |d| format!("{d} >= {radius}")),
        );
    Ok(Outcome {
        subcommand: "weiss-select",
        inputs_digest: digest.finish(),
        payload: payload(&report),
        table: t.render(),
        success: report.density_bound_holds && report.separation_holds,
    })
}

pub fn df_check(instance: &Path, names: Option<(&str, &str)>) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    let inst = load_instance(instance, &mut digest)?;
    let (xn, yn) = match names {
        Some((x, y)) => (x.to_string(), y.to_string()),
        None => inst
            .directives
            .iter()
            .find_map(|d| match d {
                Directive::Check { x, y } => Some((x.clone(), y.clone())),
                _ => None,
            })
            .ok_or_else(|| CliError::Parse("no --x/--y given and no `check` directive".into()))?,
    };
    digest.arg("x", &xn).arg("y", &yn);
    let x = element(&inst, &xn)?;
    let y = element(&inst, &yn)?;
    let xy = x.check_right_inverse(y)?;
    let yx = y.check_right_inverse(x)?;
    let consistent = xy == yx;
    let mut t = Table::default();
    t.row("ring", format!("Mat_{}(F_{}[{}])", inst.d, inst.p, inst.group.description()))
        .row(format!("{xn}{yn} = 1"), xy)
        .row(format!("{yn}{xn} = 1"), yx);
    if !consistent {
        t.row("result", "one-sided inverse found: direct finiteness fails");
    }
    Ok(Outcome {
        subcommand: "df-check",
        inputs_digest: digest.finish(),
        payload: json!({
            "group": inst.group.description(),
            "p": inst.p,
            "d": inst.d,
            "x": xn,
            "y": yn,
            "xy_is_identity": xy,
            "yx_is_identity": yx,
        }),
        table: t.render(),
        success: consistent,
    })
}

pub fn transfer_run(
    instance: &Path,
    names: Option<(&str, Option<&str>)>,
    mode: Mode,
    torus_n: Option<usize>,
    max_kernel_radius: Option<usize>,
    limits: &LimitArgs,
) -> Result<Outcome, CliError> {
    let mut digest = InputDigest::default();
    let inst = load_instance(instance, &mut digest)?;
    let (phi_name, psi_name) = match names {
        Some((phi, psi)) => (phi.to_string(), psi.map(str::to_string)),
        None => inst
            .directives
            .iter()
            .find_map(|d| match d {
                Directive::Transfer { phi, psi } => Some((phi.clone(), psi.clone())),
                _ => None,
            })
            .ok_or_else(|| CliError::Parse("no --phi given and no `transfer` directive".into()))?,
    };
    let phi = element(&inst, &phi_name)?;
    let psi = psi_name.as_deref().map(|n| element(&inst, n)).transpose()?;
    let search = max_kernel_radius.unwrap_or_else(|| default_kernel_search(phi));
    digest
        .arg("phi", &phi_name)
        .arg("psi", psi_name.as_deref().unwrap_or("-"))
        .arg("mode", format!("{mode:?}"))
        .arg("torus_n", torus_n.map_or("auto".to_string(), |n| n.to_string()))
        .arg("max_kernel_radius", search)
        .arg("max_ball", limits.max_ball)
        .arg("max_vertices", limits.max_vertices);
    let approx = match inst.group.kind() {
        GroupKind::FreeAbelian { .. } => ApproxSpec::Torus { n: torus_n },
        GroupKind::FiniteByTable(_) if torus_n.is_none() => ApproxSpec::FiniteGroup,
        GroupKind::FiniteByTable(_) => {
            return Err(CliError::Parse("--torus-n applies to Z^k groups only".into()))
        }
    };
    let lim = Limits {
        max_ball: limits.max_ball,
        max_vertices: limits.max_vertices,
        max_kernel_radius: Some(search),
    };
    let report = sofic_core::run_experiment(phi, psi, approx, mode, lim)?;
    let success = report.verdict != Verdict::Neither;
    Ok(Outcome {
        subcommand: "transfer-run",
        inputs_digest: digest.finish(),
        table: transfer_table(&report, &phi_name, psi_name.as_deref()),
        payload: payload(&report),
        success,
    })
}

fn transfer_table(r: &TransferReport, phi: &str, psi: Option<&str>) -> String {
    let mut t = Table::default();
    t.row("ring", format!("Mat_{}(F_{}[{}])", r.d, r.p, r.group))
        .row("phi / psi", format!("{phi} / {}", psi.unwrap_or("-")))
        .row("mode", format!("{:?}", r.mode).to_lowercase())
        .row("r1", r.r1)
        .row(
            "r2",
            r.r2.map_or(format!("kernel not found up to {}", r.kernel_search_bound), |x| x.to_string()),
        )
        .row("r0", r.r0)
        .row("epsilon", r.epsilon)
        .row("approximation radius", r.approximation_radius)
        .row("|V| / |V0|", format!("{} / {}", r.vertex_count, r.v0_count))
        .row("|V'| / |V''|", format!("{} / {}", r.vprime.len(), r.vdoubleprime.len()));
    if let Some(l) = &r.lower {
        t.row("phi bar psi bar = 1 on V''", l.identity_on_vpp)
            .row("rank phi bar", l.bar_phi_rank)
            .row("lower chain", format!(
                "{} >= {} >= {} >= {}",
                l.bar_phi_rank, l.d_times_vpp, l.d_times_v0, l.lower_bound
            ));
    }
    if let Some(u) = &r.upper {
        let worst = u.per_vertex.iter().map(|v| v.restricted_rank).max().unwrap_or(0);
        t.row("|V1|", u.weiss.selected.len())
            .row("max restricted rank", format!("{worst} <= {}", u.eq3_bound))
            .row("rank phi bar", u.bar_phi_rank)
            .row("rank <= d|V'| - |V1|", format!("{} <= {}", u.bar_phi_rank, u.intermediate_bound))
            .row("rank <= d|V| - |V|/2|N|", format!("{} <= {}", u.bar_phi_rank, u.upper_bound))
            .row("rank < (1-eps)|V|d", format!("{} < {}", u.bar_phi_rank, u.strict_bound));
    }
    t.row("verdict", match r.verdict {
        Verdict::LowerHolds => "LOWER_HOLDS",
        Verdict::UpperHolds => "UPPER_HOLDS",
        Verdict::Neither => "NEITHER",
    });
    t.render()
}
