//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::VecDeque;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sofic_core::corpus::{invertible_pair, random_kernel, singular_kernel};
use sofic_core::instance::{Directive, GroupDescriptor, Instance};
use sofic_core::sofic::{finite_group_approximation, torus_approximation, torus_graph, verify_approximation, SoficError};
use sofic_core::transfer::{build_instance, default_kernel_search, ApproxSpec, Limits, Mode, Verdict};
use sofic_core::{
    mat_mul, run_experiment, weiss_select, FpMatrix, GroupModel, GroupRingKernel, LabeledDigraph, Rational,
    SoficApproximation, VertexSet,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z(k: usize) -> Arc<GroupModel> {
    Arc::new(GroupModel::free_abelian(k))
}

fn s3() -> GroupModel {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |q: [usize; 3]| perms.iter().position(|&x| x == q).unwrap();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    GroupModel::finite(table, vec![1, 2]).unwrap().with_description("S3")
}

/// Z/a × Z/b with generators (±1, 0), (0, ±1).
fn cyclic_product(a: usize, b: usize) -> GroupModel {
    let n = a * b;
    let table = (0..n)
        .map(|x| (0..n).map(|y| ((x / b + y / b) % a) * b + (x % b + y % b) % b).collect())
        .collect();
    let mut gens = vec![b % n, ((a - 1) * b) % n, 1 % b, (b - 1) % b];
    gens.sort();
    gens.dedup();
    GroupModel::finite(table, gens).unwrap()
}

/// Directed distances by plain BFS over all labels.
fn bfs(graph: &LabeledDigraph, v: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; graph.vertex_count()];
    dist[v] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for l in 0..graph.alphabet_size() {
            if let Some(w) = graph.out_neighbor(u, l) {
                if dist[w].is_none() {
                    dist[w] = Some(dist[u].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

fn c1_ball_sizes() -> Check {
    let z1 = GroupModel::free_abelian(1);
    for n in 0..=50 {
        let size = z1.cayley_ball(n).map_err(|e| e.to_string())?.len();
        ensure(size == 2 * n + 1, || format!("Z^1 n={n}: {size} != {}", 2 * n + 1))?;
    }
    let z2 = GroupModel::free_abelian(2);
    for n in 0..=20i64 {
        let brute = (-n..=n)
            .flat_map(|x| (-n..=n).map(move |y| (x, y)))
            .filter(|(x, y)| x.abs().max(y.abs()) <= n && x.abs() + y.abs() <= n)
            .count();
        let size = z2.cayley_ball(n as usize).map_err(|e| e.to_string())?.len();
        ensure(size == brute, || format!("Z^2 n={n}: {size} != {brute}"))?;
    }
    Ok("Z^1 n<=50, Z^2 n<=20 match".into())
}

fn c2_torus_threshold() -> Check {
    let g = z(1);
    let mut checked = 0;
    for n in 1..=40usize {
        let graph = torus_graph(&g, n).map_err(|e| e.to_string())?;
        for r in 0..=10usize {
            let eps = Rational::new(1, n as i128 + 1).unwrap();
            let result = verify_approximation(graph.clone(), VertexSet::all(n), eps, r, g.clone());
            let expect_ok = n >= 2 * r + 2;
            ensure(result.is_ok() == expect_ok, || format!("n={n} r={r}: got {result:?}"))?;
            if n == 2 * r + 1 {
                ensure(matches!(result, Err(SoficError::BallMismatch { vertex: 0, .. })), || {
                    format!("n={n} r={r}: expected BallMismatch, got {result:?}")
                })?;
                // the vertex set embeds; the failure is the extra wrap-around edge
                let ball = g.cayley_ball(r).unwrap();
                let hood = graph.neighborhood(0, r).unwrap();
                ensure(hood.len() == ball.len(), || format!("n={n} r={r}: |N_r(0)| = {}", hood.len()))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, r) pairs"))
}

fn random_approximation(rng: &mut ChaCha8Rng, i: usize, r0: usize) -> SoficApproximation {
    let radius = 2 * r0 + 1;
    match i % 4 {
        0 => torus_approximation(1, 2 * radius + 2 + rng.gen_range(0..10), radius).unwrap(),
        1 => torus_approximation(2, 2 * radius + 2 + rng.gen_range(0..4), radius).unwrap(),
        2 => {
            let m = rng.gen_range(3..24);
            let g = Arc::new(GroupModel::cyclic(m, vec![1, m - 1]).unwrap());
            finite_group_approximation(g, radius).unwrap()
        }
        _ => {
            let g = if rng.gen_bool(0.5) {
                s3()
            } else {
                cyclic_product(rng.gen_range(2..5), rng.gen_range(2..6))
            };
            finite_group_approximation(Arc::new(g), radius).unwrap()
        }
    }
}

fn c3_weiss() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut selected_total = 0;
    for i in 0..200 {
        let r0 = if i % 4 == 1 { rng.gen_range(0..2) } else { rng.gen_range(0..3) };
        let a = random_approximation(&mut rng, i, r0);
        let total = a.graph().vertex_count();
        let mut order: Vec<usize> = (0..total).collect();
        order.shuffle(&mut rng);
        let take = total.div_ceil(2) + rng.gen_range(0..=total / 2);
        let good = VertexSet::new(order[..take].to_vec());
        let sel = weiss_select(a.graph(), &good, r0, a.ball()).map_err(|e| format!("case {i}: {e}"))?;
        let ball_size = a.ball().len();
        ensure(sel.selected.len() * 2 * ball_size >= total, || {
            format!("case {i}: |V1| = {} with |V| = {total}, |N| = {ball_size}", sel.selected.len())
        })?;
        ensure(sel.selected.is_subset(&good), || format!("case {i}: selection leaves V0"))?;
        for u in sel.selected.iter() {
            let dist = bfs(a.graph(), u);
            for w in sel.selected.iter().filter(|&w| w != u) {
                if let Some(d) = dist[w] {
                    ensure(d >= 2 * r0 + 1, || format!("case {i}: d({u}, {w}) = {d} < {}", 2 * r0 + 1))?;
                }
            }
        }
        selected_total += sel.selected.len();
    }
    Ok(format!("200 approximations, {selected_total} selected vertices, 0 failures"))
}

/// `(φ∘ψ)_{x,1} = Σ_h φ_{x,h} ψ_{h,1}`, through the equivariant entries.
fn convolve_by_entries(phi: &GroupRingKernel, psi: &GroupRingKernel) -> Result<Vec<(sofic_core::GroupElement, FpMatrix)>, String> {
    let g = phi.group();
    let outer = g.cayley_ball(phi.support_radius() + psi.support_radius()).unwrap();
    let inner = g.cayley_ball(psi.support_radius()).unwrap();
    let mut out = Vec::new();
    for x in outer.elements() {
        let mut acc = FpMatrix::zeros(phi.dim(), phi.dim(), phi.modulus()).unwrap();
        for h in inner.elements() {
            let a = phi.equivariant_entry(x, h).map_err(|e| e.to_string())?;
            acc = acc.add(&mat_mul(&a, &psi.column(h)).unwrap()).unwrap();
        }
        out.push((x.clone(), acc));
    }
    Ok(out)
}

fn c4_group_ring() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let groups = [(z(1), 2u64), (z(2), 3), (Arc::new(GroupModel::cyclic(6, vec![1, 5]).unwrap()), 2)];
    let mut kernels = Vec::new();
    for i in 0..500 {
        let (g, p) = &groups[i % 3];
        let d = 1 + (i / 3) % 3;
        let (radius, terms) = (rng.gen_range(0..=2), rng.gen_range(1..5));
        kernels.push(random_kernel(&mut rng, g, d, *p, radius, terms));
    }
    let mut triples = 0;
    for i in 0..500 {
        let a = &kernels[i];
        let one = GroupRingKernel::identity(a.group().clone(), a.dim(), a.modulus()).unwrap();
        ensure(a.compose(&one).unwrap() == *a && one.compose(a).unwrap() == *a, || format!("identity law fails on kernel {i}"))?;
        // partners with the same group, d and p
        let (b, c) = if i + 18 < 500 { (i + 9, i + 18) } else { (i - 9, i - 18) };
        let (b, c) = (&kernels[b], &kernels[c]);
        let ab = a.compose(b).unwrap();
        ensure(ab.compose(c).unwrap() == a.compose(&b.compose(c).unwrap()).unwrap(), || {
            format!("associativity fails at {i}")
        })?;
        for (x, m) in convolve_by_entries(a, b)? {
            ensure(ab.column(&x) == m, || format!("convolution oracle disagrees at {i}, x = {x}"))?;
        }
        triples += 1;
    }
    let mut pairs = 0;
    for i in 0..100 {
        let (a, b) = (&kernels[i], &kernels[i + 9]);
        let (ra, rb) = (a.support_radius(), b.support_radius());
        let g = a.group();
        let ball = |r| g.cayley_ball(r).unwrap();
        let n = i % 3;
        let whole = a.compose(b).unwrap().restriction_matrix(&ball(n), &ball(n + ra + rb)).unwrap();
        let split = mat_mul(
            &a.restriction_matrix(&ball(n + rb), &ball(n + ra + rb)).unwrap(),
            &b.restriction_matrix(&ball(n), &ball(n + rb)).unwrap(),
        )
        .unwrap();
        ensure(whole == split, || format!("restriction naturality fails on pair {i}"))?;
        pairs += 1;
    }
    Ok(format!("{triples} triples, {pairs} naturality pairs"))
}

/// The 100 invertible pairs: d ≤ 3, k ≤ 2, p ∈ {2, 3}, ≤ 6 factors.
fn invertible_corpus() -> Vec<(GroupRingKernel, GroupRingKernel)> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..100)
        .map(|i| {
            let k = 1 + i % 2;
            let d = 1 + (i / 2) % 3;
            let p = [2, 3][(i / 6) % 2];
            invertible_pair(&mut rng, &z(k), d, p, 6, 1)
        })
        .collect()
}

fn write_instance(dir: &Path, name: &str, elements: Vec<(&str, &GroupRingKernel)>, directives: Vec<Directive>) -> PathBuf {
    let k = elements[0].1;
    let descriptor = match k.group().kind() {
        sofic_core::GroupKind::FreeAbelian { rank } => GroupDescriptor::FreeAbelian(*rank),
        _ => unreachable!("corpus instances are over Z^k"),
    };
    let inst = Instance {
        p: k.modulus(),
        d: k.dim(),
        descriptor,
        group: k.group().clone(),
        elements: elements.into_iter().map(|(n, k)| (n.to_string(), k.clone())).collect(),
        directives,
    };
    let path = dir.join(name);
    std::fs::write(&path, inst.to_text()).unwrap();
    path
}

fn c5_direct_finiteness(corpus: &[(GroupRingKernel, GroupRingKernel)], dir: &Path) -> Check {
    for (i, (x, y)) in corpus.iter().enumerate() {
        let check = Directive::Check { x: "x".into(), y: "y".into() };
        let path = write_instance(dir, &format!("df{i}.txt"), vec![("x", x), ("y", y)], vec![check]);
        let out = sofic_cli::commands::df_check(&path, None).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(out.payload["xy_is_identity"] == true && out.payload["yx_is_identity"] == true, || {
            format!("pair {i}: {}", out.payload)
        })?;
        let bound = default_kernel_search(x);
        let r2 = x.kernel_radius(bound).map_err(|e| e.to_string())?;
        ensure(r2.is_none(), || format!("pair {i}: kernel found at radius {r2:?}"))?;
    }
    Ok(format!("{} pairs: xy = yx = 1, no kernel up to 3·r+3", corpus.len()))
}

fn c6_lower(corpus: &[(GroupRingKernel, GroupRingKernel)]) -> Check {
    let mut done = 0;
    let mut largest = 0;
    for (i, (x, y)) in corpus.iter().enumerate().take(50) {
        let report = run_experiment(x, Some(y), ApproxSpec::Torus { n: None }, Mode::Lower, Limits::default())
            .map_err(|e| format!("pair {i}: {e}"))?;
        let low = report.lower.as_ref().ok_or_else(|| format!("pair {i}: no lower report"))?;
        ensure(report.verdict == Verdict::LowerHolds && low.identity_on_vpp, || format!("pair {i}: {report:?}"))?;
        let total = report.vertex_count as i128;
        let d = report.d as i128;
        let n_big = x.group().cayley_ball(2 * report.r0 + 1).unwrap().len() as i128;
        let eps = Rational::new(1, 2 * d * n_big + 1).unwrap();
        ensure(report.epsilon == eps, || format!("pair {i}: epsilon {}", report.epsilon))?;
        let bound = (Rational::one() - eps) * Rational::from_integer(total * d);
        ensure(Rational::from_integer(low.bar_phi_rank as i128) >= bound, || {
            format!("pair {i}: rank {} < {bound}", low.bar_phi_rank)
        })?;
        // dense recomputation of φ̄ψ̄ restricted to V''
        let radius = 2 * report.r0 + 1;
        let n = 2 * radius + 2;
        let k = match x.group().kind() {
            sofic_core::GroupKind::FreeAbelian { rank } => *rank,
            _ => unreachable!(),
        };
        ensure(n >= 2 * report.r0 + 2, || "torus too small".into())?;
        let inst = build_instance(x, Some(y), torus_approximation(k, n, radius).unwrap(), 0).unwrap();
        let prod = mat_mul(&inst.build_bar_phi(), &inst.build_bar_psi().unwrap()).unwrap();
        let rows: Vec<usize> = inst
            .vdoubleprime()
            .iter()
            .flat_map(|v| (0..x.dim()).map(move |j| v * x.dim() + j))
            .collect();
        let cols: Vec<usize> = (0..prod.cols()).collect();
        ensure(prod.select(&rows, &cols).is_identity(), || format!("pair {i}: dense product is not the identity on V''"))?;
        largest = largest.max(report.vertex_count * report.d);
        done += 1;
    }
    Ok(format!("{done} pairs, largest d|V| = {largest}"))
}

/// 50 kernels with a kernel vector in a ball of radius ≤ 2.
fn singular_corpus() -> Vec<GroupRingKernel> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let finite: Vec<Arc<GroupModel>> = vec![
        Arc::new(GroupModel::cyclic(6, vec![1, 5]).unwrap()),
        Arc::new(s3()),
        Arc::new(cyclic_product(2, 3)),
    ];
    (0..50)
        .map(|i| match i % 5 {
            0 | 1 => singular_kernel(&mut rng, &z(1), 2 + i % 2, [2, 3][(i / 5) % 2], 1 + (i / 2) % 2, 2),
            2 => singular_kernel(&mut rng, &z(2), 2, [2, 3][(i / 5) % 2], 1, 2),
            3 => {
                let g = &finite[(i / 5) % 3];
                singular_kernel(&mut rng, g, 2, [2, 3][(i / 5) % 2], 2, 2)
            }
            _ => {
                // Σ_{g ∈ G} g kills δ_1 - δ_b for any generator b
                let g = &finite[(i / 5) % 3];
                let p = [2, 3][(i / 5) % 2];
                let one = FpMatrix::identity(1, p).unwrap();
                let sum = GroupRingKernel::from_terms(
                    g.clone(),
                    1,
                    p,
                    (0..g.order().unwrap()).map(|e| (sofic_core::GroupElement::Index(e), one.clone())),
                )
                .unwrap();
                random_kernel(&mut rng, g, 1, p, 1, 2).compose(&sum).unwrap()
            }
        })
        .collect()
}

fn approx_for(phi: &GroupRingKernel) -> ApproxSpec {
    match phi.group().kind() {
        sofic_core::GroupKind::FreeAbelian { .. } => ApproxSpec::Torus { n: None },
        _ => ApproxSpec::FiniteGroup,
    }
}

fn c7_upper(corpus: &[GroupRingKernel]) -> Check {
    let mut largest = 0;
    for (i, phi) in corpus.iter().enumerate() {
        let report = run_experiment(phi, None, approx_for(phi), Mode::Upper, Limits::default())
            .map_err(|e| format!("kernel {i}: {e}"))?;
        let r2 = report.r2.ok_or_else(|| format!("kernel {i}: no kernel found"))?;
        ensure(r2 <= 2, || format!("kernel {i}: r2 = {r2}"))?;
        let up = report.upper.as_ref().ok_or_else(|| format!("kernel {i}: no upper report"))?;
        let d = report.d;
        let n_r0 = phi.group().cayley_ball(report.r0).unwrap().len();
        let n_big = phi.group().cayley_ball(2 * report.r0 + 1).unwrap().len() as i128;
        for v in &up.per_vertex {
            ensure(v.restricted_rank <= d * n_r0 - 1 && v.square_matches, || {
                format!("kernel {i}: vertex {} has restricted rank {}", v.vertex, v.restricted_rank)
            })?;
        }
        let total = report.vertex_count as i128;
        let rank = Rational::from_integer(up.bar_phi_rank as i128);
        let global = Rational::from_integer(d as i128 * total) - Rational::new(total, 2 * n_big).unwrap();
        let eps = Rational::new(1, 2 * d as i128 * n_big + 1).unwrap();
        let strict = (Rational::one() - eps) * Rational::from_integer(total * d as i128);
        ensure(rank <= global && rank < strict, || format!("kernel {i}: rank {rank}, bounds {global} / {strict}"))?;
        largest = largest.max(report.vertex_count * d);
    }
    Ok(format!("{} kernels, largest d|V| = {largest}", corpus.len()))
}

fn c8_exclusion(pairs: &[(GroupRingKernel, GroupRingKernel)], singular: &[GroupRingKernel]) -> Check {
    let mut both = 0;
    let mut instances = 0;
    let mut candidates: Vec<&GroupRingKernel> = pairs.iter().flat_map(|(x, y)| [x, y]).collect();
    candidates.extend(singular);
    for (x, y) in pairs.iter().take(50) {
        let right_inverse = x.check_right_inverse(y).unwrap();
        let kernel = x.kernel_radius(default_kernel_search(x)).unwrap().is_some();
        both += usize::from(right_inverse && kernel);
        let r = run_experiment(x, Some(y), ApproxSpec::Torus { n: None }, Mode::Both, Limits::default())
            .map_err(|e| e.to_string())?;
        ensure(r.lower.is_none() || r.upper.is_none(), || "both chains ran".into())?;
        instances += 1;
    }
    for phi in singular {
        let kernel = phi.kernel_radius(default_kernel_search(phi)).unwrap().is_some();
        // every same-ring candidate from either corpus, plus the identity
        let one = GroupRingKernel::identity(phi.group().clone(), phi.dim(), phi.modulus()).unwrap();
        let right_inverse = candidates
            .iter()
            .copied()
            .chain([&one])
            .filter(|c| c.dim() == phi.dim() && c.modulus() == phi.modulus() && **c.group() == **phi.group())
            .any(|c| phi.check_right_inverse(c).unwrap());
        both += usize::from(right_inverse && kernel);
        let r = run_experiment(phi, None, approx_for(phi), Mode::Both, Limits::default()).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::UpperHolds, || format!("verdict {:?}", r.verdict))?;
        instances += 1;
    }
    ensure(both == 0, || format!("{both} instances satisfy both preconditions"))?;
    Ok(format!("{instances} instances, none with a right inverse and a kernel"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sofic"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code().is_none_or(|c| c > 1) {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn c9_determinism(pairs: &[(GroupRingKernel, GroupRingKernel)], singular: &[GroupRingKernel], dir: &Path) -> Check {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    let f = |name: &str| data.join(name).to_string_lossy().into_owned();
    let table = format!("finite:{}", f("s3.table"));
    let mut runs: Vec<Vec<String>> = vec![
        vec!["cayley-ball".into(), "--group".into(), "Z^2".into(), "--radius".into(), "6".into()],
        vec!["cayley-ball".into(), "--group".into(), table, "--radius".into(), "2".into()],
        vec!["sofic-verify".into(), "--group".into(), "Z^1".into(), "--graph".into(), f("c12.graph"), "--radius".into(), "5".into()],
        vec!["sofic-verify".into(), "--group".into(), "Z^1".into(), "--graph".into(), f("c5.graph"), "--radius".into(), "2".into(), "--good".into(), "all".into()],
        vec!["weiss-select".into(), "--group".into(), "Z^1".into(), "--graph".into(), f("c12.graph"), "--r0".into(), "1".into()],
        vec!["df-check".into(), f("involution.txt")],
        vec!["df-check".into(), f("one_plus_t.txt")],
        vec!["transfer-run".into(), f("involution.txt"), "--mode".into(), "lower".into()],
        vec!["transfer-run".into(), f("singular.txt"), "--mode".into(), "upper".into()],
        vec!["transfer-run".into(), f("s3_swap.txt")],
    ];
    for (i, (x, y)) in pairs.iter().enumerate().take(5) {
        let path = write_instance(dir, &format!("det{i}.txt"), vec![("x", x), ("y", y)], vec![
            Directive::Transfer { phi: "x".into(), psi: Some("y".into()) },
        ]);
        runs.push(vec!["transfer-run".into(), path.to_string_lossy().into_owned()]);
    }
    for (i, phi) in singular.iter().enumerate().filter(|(_, k)| k.group().order().is_none()).take(5) {
        let path = write_instance(dir, &format!("dets{i}.txt"), vec![("phi", phi)], vec![
            Directive::Transfer { phi: "phi".into(), psi: None },
        ]);
        runs.push(vec!["transfer-run".into(), path.to_string_lossy().into_owned(), "--mode".into(), "upper".into()]);
    }
    for (i, args) in runs.iter().enumerate() {
        let out_file = dir.join(format!("report{i}.json"));
        let mut with_json: Vec<&str> = args.iter().map(String::as_str).collect();
        with_json.push("--json");
        let first = run_cli(&with_json)?;
        let second = run_cli(&with_json)?;
        with_json.pop();
        with_json.extend(["--out", out_file.to_str().unwrap()]);
        run_cli(&with_json)?;
        let third = std::fs::read(&out_file).map_err(|e| e.to_string())?;
        ensure(!first.is_empty() && first == second && first == third, || format!("output differs for {args:?}"))?;
        serde_json_check(&first).map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(format!("{} invocations, each byte-identical across 3 runs", runs.len()))
}

/// The report must parse as JSON with the envelope fields present.
fn serde_json_check(bytes: &[u8]) -> Result<(), String> {
    let text = std::str::from_utf8(bytes).map_err(|e| e.to_string())?;
    for key in ["\"inputs_digest\"", "\"payload\"", "\"subcommand\"", "\"tool\"", "\"version\""] {
        ensure(text.contains(key), || format!("missing {key}"))?;
    }
    Ok(())
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let pairs = invertible_corpus();
    let singular = singular_corpus();
    let criteria: Vec<(usize, &str, u64, Box<dyn FnOnce() -> Check + '_>)> = vec![
        (1, "ball-size oracle", 5, Box::new(c1_ball_sizes)),
        (2, "sofic verifier threshold", 5, Box::new(c2_torus_threshold)),
        (3, "Weiss guarantees", 30, Box::new(c3_weiss)),
        (4, "group-ring algebra", 60, Box::new(c4_group_ring)),
        (5, "direct finiteness", 120, Box::new(|| c5_direct_finiteness(&pairs, dir.path()))),
        (6, "transfer lower bound", 120, Box::new(|| c6_lower(&pairs))),
        (7, "transfer upper bound", 120, Box::new(|| c7_upper(&singular))),
        (8, "exclusion", 120, Box::new(|| c8_exclusion(&pairs, &singular))),
        (9, "determinism", 120, Box::new(|| c9_determinism(&pairs, &singular, dir.path()))),
    ];
    let mut failed = 0;
    for (n, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(budget);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        failed += usize::from(status == "FAIL");
        println!("criterion {n} ({name}): {status} [{elapsed:.2?}] {detail}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
