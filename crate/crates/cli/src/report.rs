use crate::args::{Command, Common, Degree};
use crate::CliError;
use arrtopo::arrangement::{
    catalog_lookup, mobius_poincare, parse_arrangement, parse_polynomial, Arrangement, Lattice, Multiplicity,
};
use arrtopo::boundary::{
    alexander_boundary, bdf_invariants, build_graph, formality_report, poincare_boundary, westlund_presentation,
    VertexKind,
};
use arrtopo::braid::{presentation_complement, projectivize_presentation};
use arrtopo::milnor::{abelian_cover_betti, abelian_cover_monodromy, integral_cover_homology, CyclicCoverSpec, MilnorFiber};
use arrtopo::multinet::{combine, enumerate_r1_components, find_pointed_multinets, search_multinets, to_field, SearchOptions};
use arrtopo::os::OsDegree2;
use arrtopo::scalar::field::{is_prime, Field, Fq, Rationals};
use arrtopo::scalar::roots::{consensus, find_cyclotomic_prime, RootOfUnityContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub enum Output {
    Report(Value),
    Raw(String),
}

struct Input {
    name: String,
    arrangement: Arrangement,
    multiplicities: Option<Multiplicity>,
}

fn load(c: &Common) -> Result<Input, CliError> {
    let (name, arrangement, mut multiplicities) = match (&c.catalog, &c.input) {
        (Some(name), _) => {
            let e = catalog_lookup(name)?;
            (name.clone(), e.arrangement, e.multiplicities)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            let (a, m) = if text.trim_start().starts_with('{') { parse_arrangement(&text)? } else { parse_polynomial(&text)? };
            (path.display().to_string(), a, m)
        }
        (None, None) => return Err(CliError::Usage("give --catalog or --input".into())),
    };
    if let Some(m) = &c.multiplicities {
        multiplicities = Some(Multiplicity::new(m.clone(), arrangement.n())?);
    }
    Ok(Input { name, arrangement, multiplicities })
}

/// Planar model used by the commands that need braid monodromy.
fn planar(a: &Arrangement, seed: u64) -> Result<Arrangement, CliError> {
    Ok(a.generic_section(seed)?)
}

fn header(command: &str, input: &Input, c: &Common) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("input".into(), json!(input.name));
    m.insert("n".into(), json!(input.arrangement.n()));
    m.insert("seed".into(), json!(c.seed));
    m
}

/// An explicit prime from `--field`, or `None` for `auto`.
fn explicit_prime(c: &Common) -> Result<Option<u64>, CliError> {
    if c.field == "auto" {
        return Ok(None);
    }
    match c.field.parse::<u64>() {
        Ok(p) if is_prime(p) => Ok(Some(p)),
        _ => Err(CliError::Usage(format!("--field expects a prime or `auto`, got `{}`", c.field))),
    }
}

fn auto_contexts(n: u64, k: usize) -> Vec<RootOfUnityContext> {
    (0..k.max(1)).map(|s| find_cyclotomic_prime(n, s)).collect()
}

pub fn dispatch(cmd: &Command) -> Result<(Common, Output), CliError> {
    let (c, out) = match cmd {
        Command::Catalog => unreachable!("handled by the caller"),
        Command::Invariants(c) => (c, invariants(c)?),
        Command::Resonance(c) => (c, resonance(c)?),
        Command::Multinets(c) => (c, multinets(c)?),
        Command::Milnor(c) => (c, milnor(c)?),
        Command::Boundary(c) => (c, boundary(c)?),
        Command::Covers(c) => (c, covers(c)?),
        Command::Presentation(c) => (c, presentation(c)?),
    };
    Ok((c.clone(), out))
}

fn invariants(c: &Common) -> Result<Output, CliError> {
    let input = load(c)?;
    let a = &input.arrangement;
    let lat = Lattice::new(a)?;
    let s = mobius_poincare(a, &lat);
    let mut sizes: BTreeMap<String, usize> = BTreeMap::new();
    for f in lat.flats() {
        *sizes.entry(f.size().to_string()).or_default() += 1;
    }
    let mut r = header("invariants", &input, c);
    r.insert("dim".into(), json!(a.dim()));
    r.insert("rank".into(), json!(s.rank));
    r.insert("essential".into(), json!(s.essential));
    r.insert("labels".into(), json!(a.labels()));
    r.insert("flats_by_size".into(), json!(sizes));
    r.insert("multiple_points".into(), json!(lat.multiple_points().map(|f| f.lines.clone()).collect::<Vec<_>>()));
    r.insert("poincare_m".into(), json!(s.poincare_m));
    r.insert("poincare_u".into(), json!(s.poincare_u));
    r.insert("euler_u".into(), json!(s.euler_u));
    r.insert("mu_center".into(), json!(s.mu_center));
    r.insert("shape".into(), json!(lat.shape().name()));
    Ok(Output::Report(Value::Object(r)))
}

fn depth_samples<F: Field + Clone>(
    f: &F,
    os: &OsDegree2<F>,
    basis: &[Vec<i64>],
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    while out.len() < count {
        let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-5..=5)).collect();
        let v = combine(basis, &coeffs);
        let a = to_field(f, &v);
        if a.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        out.push(os.resonance_depth(&a)?);
    }
    Ok(out)
}

fn resonance(c: &Common) -> Result<Output, CliError> {
    let input = load(c)?;
    let a = planar(&input.arrangement, c.seed)?;
    let lat = Lattice::new(&a)?;
    let opts = SearchOptions { node_budget: c.budget_nodes, ..SearchOptions::default() };
    let comps = enumerate_r1_components(&a, 0, &opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let n = a.n();
    // projective vectors e_i − e_{n−1} span the ambient space for controls
    let ambient: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| (0..n).map(|j| i64::from(j == i) - i64::from(j == n - 1)).collect())
        .collect();
    let (field_name, rows, control) = match explicit_prime(c)? {
        Some(p) => {
            let f = Fq::prime(p);
            let os = OsDegree2::new(f.clone(), &lat);
            let rows = comps.iter().map(|k| depth_samples(&f, &os, &k.basis, &mut rng, 10)).collect::<Result<Vec<_>, _>>()?;
            (format!("GF({p})"), rows, depth_samples(&f, &os, &ambient, &mut rng, 10)?)
        }
        None => {
            let os = OsDegree2::new(Rationals, &lat);
            let rows = comps.iter().map(|k| depth_samples(&Rationals, &os, &k.basis, &mut rng, 10)).collect::<Result<Vec<_>, _>>()?;
            ("Q".to_string(), rows, depth_samples(&Rationals, &os, &ambient, &mut rng, 10)?)
        }
    };
    let listed: Vec<Value> = comps
        .iter()
        .zip(&rows)
        .map(|(k, depths)| {
            json!({
                "kind": format!("{:?}", k.kind).to_lowercase(),
                "support": k.support,
                "dim": k.dim,
                "parts": k.parts,
                "essential": k.essential,
                "min_sampled_depth": depths.iter().min(),
                "partition": k.multinet.as_ref().map(|m| m.partition_string()),
            })
        })
        .collect();
    let local = comps.iter().filter(|k| !k.essential && k.multinet.is_none()).count();
    let mut by_dim: BTreeMap<String, usize> = BTreeMap::new();
    for k in comps.iter().filter(|k| k.multinet.is_some()) {
        *by_dim.entry(format!("{}{}", if k.essential { "essential_dim" } else { "sub_dim" }, k.dim)).or_default() += 1;
    }
    let mut r = header("resonance", &input, c);
    r.insert("field".into(), json!(field_name));
    r.insert("local".into(), json!(local));
    r.insert("essential".into(), json!(comps.iter().filter(|k| k.essential).count()));
    r.insert("nonlocal_by_dim".into(), json!(by_dim));
    r.insert("components".into(), json!(listed));
    r.insert("random_point_depths".into(), json!(control));
    Ok(Output::Report(Value::Object(r)))
}

fn multinets(c: &Common) -> Result<Output, CliError> {
    let input = load(c)?;
    let lat = Lattice::new(&input.arrangement)?;
    let opts = SearchOptions { node_budget: c.budget_nodes, ..SearchOptions::default() };
    let mut found = Vec::new();
    for k in [3, 4] {
        found.extend(search_multinets(&lat, k, &opts)?);
    }
    let listed: Vec<Value> = found
        .iter()
        .map(|m| json!({"classes": m.classes, "partition": m.partition_string(), "m": m.m, "k": m.k, "ell": m.ell, "net": m.is_net(), "base_points": m.base_locus.len()}))
        .collect();
    let pointed: Vec<Value> = find_pointed_multinets(&lat, &opts)?
        .iter()
        .map(|p| json!({"partition": p.multinet.partition_string(), "m": p.multinet.m, "pointed_at": p.distinguished}))
        .collect();
    let mut r = header("multinets", &input, c);
    r.insert("nets".into(), json!(found.iter().filter(|m| m.is_net()).count()));
    r.insert("multinets".into(), json!(found.len()));
    r.insert("found".into(), json!(listed));
    r.insert("pointed".into(), json!(pointed));
    Ok(Output::Report(Value::Object(r)))
}

fn milnor(c: &Common) -> Result<Output, CliError> {
    let input = load(c)?;
    let a = planar(&input.arrangement, c.seed)?;
    let m = input.multiplicities.clone().unwrap_or_else(|| Multiplicity::ones(a.n()));
    let fiber = MilnorFiber::new(&a, m.clone())?;
    let mut primes: Vec<u64> = auto_contexts(fiber.n_cover, c.primes).iter().map(|x| x.p()).collect();
    let chosen = explicit_prime(c)?;
    primes.extend(chosen);
    let inv = fiber.invariants(&primes, c.budget_cols)?;
    let mut r = header("milnor", &input, c);
    r.insert("multiplicities".into(), json!(m.as_slice()));
    if let Value::Object(body) = inv.to_json() {
        r.extend(body);
    }
    let (q, poly) = match c.q {
        Degree::One => (1, &inv.charpoly_q1),
        Degree::Two => (2, &inv.charpoly_q2),
    };
    r.insert("q".into(), json!(q));
    r.insert("charpoly".into(), json!(poly.to_string()));
    r.insert("degree".into(), json!(poly.degree()));
    r.insert("integral_h1_text".into(), json!(inv.integral_h1.as_ref().map(|h| h.to_string())));
    if let Some(p) = chosen {
        let ctx = fiber.context(p)?;
        let local = fiber.charpoly_q1(&ctx)?;
        r.insert(
            "field_charpoly_q1".into(),
            json!({"p": p, "q": ctx.field.order(), "factors": local.to_json_value(), "text": local.to_string()}),
        );
    }
    Ok(Output::Report(Value::Object(r)))
}

fn boundary(c: &Common) -> Result<Output, CliError> {
    let input = load(c)?;
    let a = planar(&input.arrangement, c.seed)?;
    let g = build_graph(&a)?;
    if c.dot {
        return Ok(Output::Raw(g.to_dot()));
    }
    let alex = alexander_boundary(&g);
    let pres = westlund_presentation(&g).simplified?;
    let bdf = bdf_invariants(&a, c.budget_cols)?;
    let form = formality_report(&a, c.seed)?;
    let points: Vec<Value> = g
        .vertices
        .iter()
        .filter_map(|v| match &v.kind {
            VertexKind::Point { lines, .. } => Some(json!(lines)),
            VertexKind::Line(_) => None,
        })
        .collect();
    let mut r = header("boundary", &input, c);
    r.insert(
        "graph".into(),
        json!({
            "vertices": g.vertices.len(),
            "edges": g.edges.len(),
            "cycles": g.cycle_count(),
            "weights": g.vertices.iter().map(|v| v.weight).collect::<Vec<_>>(),
            "points": points,
        }),
    );
    r.insert("poincare".into(), json!(poincare_boundary(&a)?));
    r.insert("alexander".into(), json!(alex.to_string()));
    r.insert("v1_components".into(), json!(alex.v1_components()));
    r.insert("presentation".into(), json!({"gens": pres.gens(), "relators": pres.relators.len()}));
    r.insert(
        "milnor_boundary".into(),
        json!({
            "N": bdf.cover.n,
            "charpoly": bdf.charpoly.to_json_value(),
            "charpoly_text": bdf.charpoly.to_string(),
            "matches_cover": bdf.charpoly.same_factors(&bdf.charpoly_from_cover),
            "b1": bdf.b1,
            "integral_h1": bdf.integral_h1,
            "integral_h1_text": bdf.integral_h1.as_ref().map(|h| h.to_string()),
        }),
    );
    r.insert(
        "formality".into(),
        json!({
            "shape": form.shape.name(),
            "formal": form.formal,
            "boundary_type": form.boundary_type,
            "milnor_boundary_type": form.milnor_boundary_type,
            "witness": form.witness.map(|w| json!({
                "b1": w.b1,
                "random_class_depth": w.random_class_depth,
                "codim_one_components": w.codim_one_components,
            })),
        }),
    );
    Ok(Output::Report(Value::Object(r)))
}

fn covers(c: &Common) -> Result<Output, CliError> {
    let input = load(c)?;
    let a = planar(&input.arrangement, c.seed)?;
    let (Some(chi), Some(n)) = (&c.chi, c.modulus) else {
        return Err(CliError::Usage("covers needs --chi and --mod".into()));
    };
    if n < 2 {
        return Err(CliError::Usage("--mod must be at least 2".into()));
    }
    let residues: Vec<u64> = chi.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect();
    let p = projectivize_presentation(&presentation_complement(&a)?)?;
    let spec = CyclicCoverSpec::new(p, n, residues.clone())?;
    let table: Vec<Vec<u64>> = residues.iter().map(|&x| vec![x]).collect();
    let contexts = auto_contexts(n, c.primes);
    let mut per_prime = Map::new();
    let mut char0 = Vec::new();
    for ctx in &contexts {
        let b = abelian_cover_betti(&spec.presentation, &table, &[n], ctx)?;
        per_prime.insert(ctx.p().to_string(), json!(b));
        char0.push(b);
    }
    if let Some(q) = explicit_prime(c)? {
        let ctx = RootOfUnityContext::in_characteristic(n, q).ok_or(arrtopo::Error::BadPrime { p: q, n })?;
        per_prime.insert(q.to_string(), json!(abelian_cover_betti(&spec.presentation, &table, &[n], &ctx)?));
    }
    let agreed = consensus(&char0);
    let poly = abelian_cover_monodromy(&spec.presentation, &residues, n, &contexts[0])?;
    let integral = match integral_cover_homology(&spec, c.budget_cols) {
        Ok(h) => Some(h),
        Err(arrtopo::Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mut r = header("covers", &input, c);
    r.insert("N".into(), json!(n));
    r.insert("chi".into(), json!(residues));
    r.insert("b1".into(), json!(agreed.value));
    r.insert("unanimous".into(), json!(agreed.unanimous));
    r.insert("per_prime".into(), Value::Object(per_prime));
    r.insert("charpoly".into(), poly.to_json_value());
    r.insert("charpoly_text".into(), json!(poly.to_string()));
    r.insert("integral_h1_text".into(), json!(integral.as_ref().map(|h| h.to_string())));
    r.insert("integral_h1".into(), json!(integral));
    Ok(Output::Report(Value::Object(r)))
}

fn presentation(c: &Common) -> Result<Output, CliError> {
    let input = load(c)?;
    let a = planar(&input.arrangement, c.seed)?;
    let p = presentation_complement(&a)?;
    let proj = projectivize_presentation(&p)?;
    let mut r = header("presentation", &input, c);
    r.insert("complement".into(), serde_json::from_str(&p.to_json()).expect("valid json"));
    r.insert("projective".into(), serde_json::from_str(&proj.to_json()).expect("valid json"));
    r.insert("commutator_relators".into(), json!(p.is_commutator_relators()));
    Ok(Output::Report(Value::Object(r)))
}
