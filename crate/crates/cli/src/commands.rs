use std::path::Path;

use hodgewalk::complex::{clique_complex, parse_edge_list, Graph, OrientedSimplicialComplex};
use hodgewalk::encode::*;
use hodgewalk::fmt::{format_float, matrix_csv};
use hodgewalk::hodge::{betti, hodge_laplacian, spectral_kernel, spectrum, Regularizer, Variant};
use hodgewalk::isotest::*;
use hodgewalk::walk::*;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use serde_json::json;

use crate::args::*;
use crate::error::{require, CliError};
use crate::output::{emit, json_text, read_input, Artifacts, InputDigest};

type Res<T = ()> = Result<T, CliError>;

struct Loaded {
    sc: OrientedSimplicialComplex,
    inputs: Vec<InputDigest>,
}

fn read_graph(path: &Path) -> Res<(Graph, InputDigest)> {
    let (text, digest) = read_input(path)?;
    let g = parse_edge_list(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok((g, digest))
}

fn load(a: &InputArgs) -> Res<Loaded> {
    if let Some(path) = &a.input {
        let (g, d) = read_graph(path)?;
        return Ok(Loaded { sc: clique_complex(&g, a.max_dim)?, inputs: vec![d] });
    }
    if let Some(path) = &a.complex {
        let (text, d) = read_input(path)?;
        let sc = OrientedSimplicialComplex::from_json(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        return Ok(Loaded { sc, inputs: vec![d] });
    }
    if let Some(name) = &a.gallery {
        return Ok(Loaded { sc: gallery(name)?.complex(a.max_dim)?, inputs: Vec::new() });
    }
    Err(CliError::Usage("one of --input, --complex or --gallery is required".into()))
}

fn variant(v: VariantArg) -> Variant {
    match v {
        VariantArg::Standard => Variant::Standard,
        VariantArg::Normalized => Variant::Normalized,
    }
}

fn snake<T: serde::Serialize>(v: T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn check_order(sc: &OrientedSimplicialComplex, k: usize) -> Res {
    require(k <= sc.dim(), || format!("order {k} exceeds the complex dimension {}", sc.dim()))
}

fn labels(sc: &OrientedSimplicialComplex, k: usize) -> Vec<String> {
    sc.faces(k).iter().map(|f| simplex_label(f)).collect()
}

pub fn run(cmd: &Command) -> Res {
    match cmd {
        Command::Build(a) => build(a),
        Command::Laplacian(a) => laplacian(a),
        Command::Spectrum(a) => spectrum_cmd(a),
        Command::Betti(a) => betti_cmd(a),
        Command::Walk(a) => walk(a),
        Command::Encode(a) => encode(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Distinguish(a) => distinguish_cmd(a),
        Command::Gallery(a) => gallery_cmd(a),
        Command::Cycles(a) => cycles(a),
    }
}

fn build(a: &BuildArgs) -> Res {
    let l = load(&a.input)?;
    let summary = format!("complex of dimension {} with face counts {:?}", l.sc.dim(), l.sc.counts());
    emit(a.out.out.as_deref(), "build", a, &l.inputs, Artifacts::new(l.sc.to_json() + "\n", summary))
}

fn laplacian(a: &LaplacianArgs) -> Res {
    let l = load(&a.input)?;
    check_order(&l.sc, a.k)?;
    let reg = a.kernel.as_deref().map(str::parse::<Regularizer>).transpose()?;
    require(reg.is_none() || a.part == Part::Full, || "--kernel applies to the full operator only".into())?;
    let op = hodge_laplacian(&l.sc, a.k, variant(a.variant))?;
    let m = match (&reg, a.part) {
        (Some(r), _) => spectral_kernel(&op, r)?,
        (None, Part::Full) => op.matrix.clone(),
        (None, Part::Down) => op.down_part.clone(),
        (None, Part::Up) => op.up_part.clone(),
    };
    let names = labels(&l.sc, a.k);
    let header: Vec<String> = std::iter::once("simplex".to_string()).chain(names.iter().cloned()).collect();
    let csv = matrix_csv(&header, &m, |i| names[i].clone());
    let summary = format!("{0}x{0} L{1} ({2}, {3})", m.nrows(), a.k, snake(a.variant), snake(a.part));
    emit(a.out.out.as_deref(), "laplacian", a, &l.inputs, Artifacts::new(csv, summary))
}

fn spectrum_cmd(a: &SpectrumArgs) -> Res {
    let l = load(&a.input)?;
    check_order(&l.sc, a.k)?;
    require(!(a.exact && a.variant == VariantArg::Normalized), || {
        "--exact needs the standard (integer) variant".into()
    })?;
    require(a.zero_tol.is_none_or(|t| t >= 0.0), || "--zero-tol must be non-negative".into())?;
    let art = if a.exact {
        let (poly, warning) = laplacian_char_poly(&l.sc, a.k)?;
        let coefficients: Vec<String> = poly.iter().map(ToString::to_string).collect();
        let doc = json!({
            "k": a.k,
            "order": "ascending",
            "coefficients": coefficients,
            "warning": warning,
        });
        Artifacts::new(json_text(&doc), format!("degree {} characteristic polynomial of L{}", poly.len() - 1, a.k))
    } else {
        let s = spectrum(&hodge_laplacian(&l.sc, a.k, variant(a.variant))?, a.zero_tol)?;
        let summary = format!("{} eigenpairs of L{}, kernel dimension {}", s.len(), a.k, s.kernel_dim());
        Artifacts::new(s.to_csv(), summary)
    };
    emit(a.out.out.as_deref(), "spectrum", a, &l.inputs, art)
}

fn betti_cmd(a: &BettiArgs) -> Res {
    let l = load(&a.input)?;
    let b = (0..=l.sc.dim()).map(|k| betti(&l.sc, k)).collect::<hodgewalk::Result<Vec<_>>>()?;
    let doc = json!({ "betti": b, "counts": l.sc.counts() });
    emit(a.out.out.as_deref(), "betti", a, &l.inputs, Artifacts::new(json_text(&doc), format!("betti numbers {b:?}")))
}

fn build_walk(sc: &OrientedSimplicialComplex, w: &WalkSelect) -> Res<TransitionMatrix> {
    let lifted = matches!(w.kind, WalkKind::LiftedEdge | WalkKind::Lifted);
    require(!w.merged || lifted, || "--merged applies to lifted walks only".into())?;
    let g = sc.graph();
    let p = match w.kind {
        WalkKind::Node => node_transition(&g, true)?,
        WalkKind::LiftedEdge => {
            check_order(sc, 1)?;
            lifted_edge_transition(sc)?
        }
        WalkKind::Lifted => {
            check_order(sc, w.k)?;
            k_transition(sc, w.k)?
        }
        WalkKind::Up => {
            check_order(sc, w.k)?;
            up_transition(sc, w.k)?
        }
        WalkKind::DownDirected | WalkKind::DownUndirected => {
            require(g.m() > 0, || "down walks need at least one edge".into())?;
            let v = if w.kind == WalkKind::DownDirected { DownVariant::Directed } else { DownVariant::Undirected };
            down_transition(&g, v)?
        }
        WalkKind::Inter => {
            check_order(sc, w.k)?;
            inter_transition(sc, w.k)?
        }
        WalkKind::Cellular => {
            require(w.max_ring >= 3, || format!("--max-ring must be at least 3, got {}", w.max_ring))?;
            cellular_transition(&g, w.max_ring)?
        }
    };
    Ok(if w.merged { p.merged() } else { p })
}

fn walk(a: &WalkArgs) -> Res {
    let l = load(&a.input)?;
    let p = build_walk(&l.sc, &a.walk)?;
    let summary = format!("{} walk with {} states", snake(a.walk.kind), p.n_states());
    emit(a.out.out.as_deref(), "walk", a, &l.inputs, Artifacts::new(p.to_csv(), summary))
}

fn simulate_cmd(a: &SimulateArgs) -> Res {
    let l = load(&a.input)?;
    require(a.trials >= 1, || "--trials must be at least 1".into())?;
    require(a.steps >= 1, || "--steps must be at least 1".into())?;
    let p = build_walk(&l.sc, &a.walk)?;
    require(a.start < p.n_states(), || format!("--start {} outside 0..{}", a.start, p.n_states()))?;
    let sim = simulate(&p, a.start, a.steps, a.trials, a.seed)?;
    let summary = format!("{} trials of {} steps from state {}", a.trials, a.steps, p.states()[a.start]);
    let mut art = Artifacts::new(sim.to_csv(p.states()), summary);
    art.seed = Some(a.seed);
    emit(a.out.out.as_deref(), "simulate", a, &l.inputs, art)
}

fn read_preimage(path: &Path, m: usize) -> Res<(DMatrix<f64>, InputDigest)> {
    let (text, digest) = read_input(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let parsed: Result<Vec<f64>, _> = line.split(',').map(|x| x.trim().parse::<f64>()).collect();
        match parsed {
            Ok(r) => rows.push(r),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(CliError::Usage(format!("{} line {}: not numeric", path.display(), i + 1))),
        }
    }
    require(rows.len() == m, || format!("preimage has {} rows for {m} edges", rows.len()))?;
    let cols = rows.first().map_or(0, Vec::len);
    require(cols > 0 && rows.iter().all(|r| r.len() == cols), || {
        "preimage rows must have equal, nonzero width".into()
    })?;
    Ok((DMatrix::from_fn(m, cols, |i, j| rows[i][j]), digest))
}

fn encode(a: &EncodeArgs) -> Res {
    let l = load(&a.input)?;
    let mut inputs = l.inputs.clone();
    let sc = &l.sc;
    let g = sc.graph();
    require(a.t >= 1, || "-T must be at least 1".into())?;
    let mode_for = |allowed: &[&str]| -> Res<Option<String>> {
        match &a.mode {
            Some(m) if !allowed.contains(&m.as_str()) => Err(CliError::Usage(format!(
                "--mode {m} is not valid for {}; expected one of {allowed:?}",
                snake(a.method)
            ))),
            m => Ok(m.clone()),
        }
    };
    require(a.preimage.is_none() || a.method == EncodeMethod::Hodge1lap, || {
        "--preimage applies to hodge1lap only".into()
    })?;
    let sidecar;
    let (csv, rows) = match a.method {
        EncodeMethod::Rwse => {
            let mode = match mode_for(&["diag", "full"])?.as_deref() {
                Some("full") => RwseMode::Full,
                _ => RwseMode::Diag,
            };
            let f = rwse_node(&g, a.t, mode)?;
            sidecar = Some(f.sidecar_json());
            (f.to_csv(), f.nrows())
        }
        EncodeMethod::LapPe => {
            mode_for(&[])?;
            require(a.n_eigen <= g.n(), || format!("--n-eigen {} exceeds {} nodes", a.n_eigen, g.n()))?;
            let f = lap_pe_node(&g, a.n_eigen)?.features;
            sidecar = Some(f.sidecar_json());
            (f.to_csv(), f.nrows())
        }
        EncodeMethod::Resistance => {
            mode_for(&[])?;
            let f = resistance_distance(&g)?;
            sidecar = Some(f.sidecar_json());
            (f.to_csv(), f.nrows())
        }
        EncodeMethod::Spd => {
            mode_for(&[])?;
            let d = shortest_path_distance(&g);
            sidecar = Some(json_text(&json!({ "encoding": "shortest_path_distance", "unreachable": "inf" })));
            (d.to_csv(), g.n())
        }
        EncodeMethod::EdgeRwse => {
            mode_for(&[])?;
            let v: EdgeWalk = a.variant.parse()?;
            if v == EdgeWalk::Up || v == EdgeWalk::Full {
                check_order(sc, 1)?;
            }
            let f = edge_rwse(sc, v, a.t, a.row_stats)?;
            sidecar = Some(f.sidecar_json());
            (f.to_csv(), f.nrows())
        }
        EncodeMethod::Hodge1lap => {
            check_order(sc, 1)?;
            let mode: Hodge1LapMode = mode_for(&["proj", "abs", "sim"])?.as_deref().unwrap_or("proj").parse()?;
            require(a.preimage.is_none() || mode == Hodge1LapMode::Proj, || "--preimage needs --mode proj".into())?;
            let preimage = match &a.preimage {
                Some(p) => {
                    let (x, d) = read_preimage(p, sc.count(1))?;
                    inputs.push(d);
                    Preimage::EdgeFeatures(x)
                }
                None => Preimage::Unit,
            };
            let params = Hodge1LapParams {
                mode,
                n_eigen: a.n_eigen,
                preimage,
                n_random_proj: a.n_random_proj,
                seed: a.seed,
                ..Default::default()
            };
            let f = hodge1lap(sc, &params)?;
            sidecar = Some(f.sidecar_json());
            (f.to_csv(), f.nrows())
        }
        EncodeMethod::KRwse => {
            mode_for(&[])?;
            check_order(sc, a.k)?;
            let f = k_rwse(sc, a.k, a.t)?;
            sidecar = Some(f.sidecar_json());
            (f.to_csv(), f.nrows())
        }
        EncodeMethod::InterRwse => {
            mode_for(&[])?;
            check_order(sc, a.max_order)?;
            let f = inter_rwse(sc, a.max_order, a.t)?;
            sidecar = Some(f.sidecar_json());
            (f.to_csv(), f.nrows())
        }
        EncodeMethod::CellularRwse => {
            mode_for(&[])?;
            require(a.max_ring >= 3, || format!("--max-ring must be at least 3, got {}", a.max_ring))?;
            let f = cellular_rwse(&g, a.t, a.max_ring)?;
            sidecar = Some(f.sidecar_json());
            (f.to_csv(), f.nrows())
        }
    };
    let mut art = Artifacts::new(csv, format!("{}: {rows} rows", snake(a.method)));
    if let Some(s) = sidecar {
        art.extra.push(("meta.json".into(), s));
    }
    if a.method == EncodeMethod::Hodge1lap {
        art.seed = Some(a.seed);
    }
    emit(a.out.out.as_deref(), "encode", a, &inputs, art)
}

fn parse_coefficients(s: &str) -> Res<Vec<BigInt>> {
    s.split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("bad coefficient {c:?}"))))
        .collect()
}

fn distinguish_cmd(a: &DistinguishArgs) -> Res {
    let methods = Method::parse_list(&a.methods)?;
    require(a.t >= 1, || "-T must be at least 1".into())?;
    require(a.max_iter >= 1, || "--max-iter must be at least 1".into())?;
    require(a.tol >= 0.0, || "--tol must be non-negative".into())?;
    let params =
        DistinguishParams { t: a.t, max_iter: a.max_iter, fwl2_cap: a.fwl2_cap, n_eigen: a.n_eigen, tol: a.tol };

    if let Some(poly) = &a.search_l0 {
        let target = parse_coefficients(poly)?;
        let graphs = graphs_with_l0_poly(&target)?;
        let pairs = all_order_isospectral_pairs(&graphs)?;
        let mut out = Vec::new();
        for (i, p) in pairs.iter().enumerate() {
            let (sa, sb) = (clique_complex(&p.a, a.max_dim)?, clique_complex(&p.b, a.max_dim)?);
            let report = distinguish(&format!("pair{i}"), &sa, &sb, &methods, &params)?;
            out.push(json!({
                "a": p.a.edges(),
                "b": p.b.edges(),
                "polynomials": p.polys,
                "report": report,
            }));
        }
        let doc = json!({
            "target": target.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "graphs": graphs.iter().map(|g| g.edges().to_vec()).collect::<Vec<_>>(),
            "pairs": out,
        });
        let summary = format!("{} graphs, {} all-order isospectral pairs", graphs.len(), pairs.len());
        return emit(a.out.out.as_deref(), "distinguish", a, &[], Artifacts::new(json_text(&doc), summary));
    }

    let (label, sa, sb, inputs) = if let Some(names) = &a.gallery {
        let (x, y) = (gallery(&names[0])?, gallery(&names[1])?);
        (format!("{}/{}", names[0], names[1]), x.complex(a.max_dim)?, y.complex(a.max_dim)?, Vec::new())
    } else if let Some(paths) = &a.inputs {
        let ((ga, da), (gb, db)) = (read_graph(&paths[0])?, read_graph(&paths[1])?);
        let label = format!("{}/{}", paths[0].display(), paths[1].display());
        (label, clique_complex(&ga, a.max_dim)?, clique_complex(&gb, a.max_dim)?, vec![da, db])
    } else {
        return Err(CliError::Usage("one of --gallery A B, --inputs A B or --search-l0 is required".into()));
    };
    let report = distinguish(&label, &sa, &sb, &methods, &params)?;
    let separated = report.results.iter().filter(|r| r.verdict == Verdict::Separated).count();
    let summary = format!("{label}: {separated} of {} methods separate the pair", report.results.len());
    let text = match a.format {
        ReportFormat::Json => json_text(&report),
        ReportFormat::Text => report.to_text(),
    };
    emit(a.out.out.as_deref(), "distinguish", a, &inputs, Artifacts::new(text, summary))
}

fn gallery_cmd(a: &GalleryArgs) -> Res {
    if a.list {
        require(a.name.is_none(), || "--list takes no name".into())?;
        let text = GALLERY_NAMES.join("\n") + "\n";
        return emit(
            a.out.out.as_deref(),
            "gallery",
            a,
            &[],
            Artifacts::new(text, format!("{} objects", GALLERY_NAMES.len())),
        );
    }
    let name = a.name.as_deref().ok_or_else(|| CliError::Usage("a gallery name or --list is required".into()))?;
    let obj = gallery(name)?;
    let format =
        a.format.unwrap_or(if obj.has_explicit_complex() { GalleryFormat::Json } else { GalleryFormat::Edges });
    let text = match format {
        GalleryFormat::Edges => obj.graph.to_edge_list(),
        GalleryFormat::Json => obj.complex(a.max_dim)?.to_json() + "\n",
    };
    let summary = format!("{}: {} nodes, {} edges", obj.name, obj.graph.n(), obj.graph.m());
    emit(a.out.out.as_deref(), "gallery", a, &[], Artifacts::new(text, summary))
}

fn cycles(a: &CyclesArgs) -> Res {
    let l = load(&a.input)?;
    let sc = &l.sc;
    check_order(sc, 1)?;
    if let Some(r) = a.max_ring {
        require(r >= 3, || format!("--max-ring must be at least 3, got {r}"))?;
    }
    let g = sc.graph();
    let params = CycleParams { n_random_proj: a.n_random_proj, seed: a.seed, ..Default::default() };
    let labels = detect_cycles(sc, &params)?;
    let as_pairs = |c: &Vec<usize>| c.iter().map(|&e| g.edges()[e]).collect::<Vec<_>>();
    let mcb: Vec<_> = minimum_cycle_basis(&g).iter().map(as_pairs).collect();
    let edges: Vec<_> = (0..sc.count(1))
        .map(|e| {
            json!({
                "edge": sc.faces(1)[e],
                "in_cycle": labels.in_cycle[e],
                "group": labels.group[e],
                "shared": labels.shared[e],
            })
        })
        .collect();
    let mut doc = json!({ "edges": edges, "minimum_cycle_basis": mcb });
    if let Some(r) = a.max_ring {
        doc["relevant_cycles"] = json!(relevant_cycles(&g, r).iter().map(as_pairs).collect::<Vec<_>>());
    }
    if a.eigen_one {
        let s = spectrum(&hodge_laplacian(sc, 1, Variant::Standard)?, None)?;
        let near_one = |l: f64| (l - 1.0).abs() < 1e-7;
        let multiplicity = s.eigenvalues.iter().filter(|&&l| near_one(l)).count();
        let p = s.apply(|l| if near_one(l) { 1.0 } else { 0.0 });
        let marker: Vec<String> =
            (0..p.nrows()).map(|i| format_float(p.row(i).iter().map(|x| x.abs()).sum())).collect();
        doc["eigenvalue_one"] = json!({ "multiplicity": multiplicity, "abs_projection_row_sums": marker });
    }
    let n_cycle = labels.in_cycle.iter().filter(|&&c| c).count();
    let summary = format!("{n_cycle} of {} edges on cycles; cycle rank {}", sc.count(1), mcb.len());
    emit(a.out.out.as_deref(), "cycles", a, &l.inputs, Artifacts::new(json_text(&doc), summary))
}
