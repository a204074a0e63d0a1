//! Command layer of the `gpoincare` binary: every command maps scenes to a
//! JSON report.

pub mod scene;

use gpoincare::algebra::{AbelianGroup, Character, Elem, LocalChar, Subgroup};
use gpoincare::blowup::{Centre, Mode, Position};
use gpoincare::grring::{AcampoForm, GRClass, GRSeries, PlainFactors, PlainSeries};
use gpoincare::poincare::{
    check_determination_hypotheses, compare_series, equivariant_poincare, infer_representation, jets_oracle, plain_poincare,
    SeriesVerdict, TailLabel,
};
use gpoincare::resgraph::{compare_topology, evaluate_strata, quotient_dot, ResolutionGraph, StratumKind, TopologyVerdict};
use gpoincare::{Error, Result};
use serde_json::{json, Value};

pub use scene::Scene;

/// Which parts of the Poincaré series to report.
#[derive(Clone, Copy, Debug, Default)]
pub struct PoincareOpts {
    pub plain: bool,
    pub equivariant: bool,
    /// Report only the finite products, without expansions.
    pub factor_only: bool,
}

/// Which comparisons to run.
#[derive(Clone, Copy, Debug)]
pub struct CompareOpts {
    pub series: bool,
    pub topology: bool,
}

fn elem(g: &AbelianGroup, x: Elem) -> Value {
    json!(g.decode(x))
}

fn subgroup(g: &AbelianGroup, h: &Subgroup) -> Value {
    Value::Array(h.elements().iter().map(|&x| elem(g, x)).collect())
}

fn position(p: &Position) -> Value {
    json!(p.to_string())
}

fn local_char(g: &AbelianGroup, h: &Subgroup, a: &LocalChar) -> Value {
    let residues = if h.order() == g.order() {
        Character::from_values(g, a).ok().map(|c| json!(c.residues()))
    } else {
        None
    };
    json!({ "values": a.values(), "residues": residues })
}

fn action_json(graph: &ResolutionGraph) -> Value {
    let a = &graph.res.action;
    json!({
        "group": a.group().orders(),
        "chi_x": a.chi_x().residues(),
        "chi_y": a.chi_y().residues(),
        "cyclotomic_modulus": a.field().modulus(),
    })
}

pub fn class_json(g: &AbelianGroup, t: &GRClass) -> Value {
    let h = t.stabilizer();
    let reps = h.coset_reps(g);
    json!({
        "stabilizer": subgroup(g, h),
        "size": t.size(),
        "points": reps.iter().zip(t.w()).map(|(&x, w)| json!({"at": elem(g, x), "w": w})).collect::<Vec<_>>(),
        "alpha": local_char(g, h, t.alpha()),
    })
}

pub fn form_json(g: &AbelianGroup, form: &AcampoForm) -> Value {
    Value::Array(form.factors().map(|(t, s)| json!({"exponent": s, "class": class_json(g, t)})).collect())
}

fn gr_series_json(g: &AbelianGroup, s: &GRSeries) -> Value {
    Value::Array(s.coeffs().iter().map(|(t, c)| json!({"coeff": c, "class": class_json(g, t)})).collect())
}

pub fn plain_series_json(s: &PlainSeries) -> Value {
    json!({
        "r": s.r,
        "degree_bound": s.bound,
        "terms": s.coeffs().iter().map(|(e, c)| json!({"exponent": e, "coeff": c})).collect::<Vec<_>>(),
        "text": s.to_string(),
    })
}

fn plain_factors_json(f: &PlainFactors) -> Value {
    json!({
        "factors": f.factors().iter().map(|(w, s)| json!({"w": w, "exponent": s})).collect::<Vec<_>>(),
        "text": f.to_string(),
    })
}

/// The resolution, its quotient graph, strata and the correspondence
/// between tails and the points of E₁ they grow from.
pub fn cmd_resolve(scene: &Scene) -> Result<(Value, String)> {
    let graph = scene.valuations.resolve()?;
    let res = &graph.res;
    let g = res.action.group();
    let comps: Vec<Value> = res
        .components
        .iter()
        .map(|c| {
            let centre = match &c.centre {
                Centre::Origin => json!("origin"),
                Centre::On(list) => Value::Array(
                    list.iter().map(|(k, p)| json!({"component": k + 1, "position": position(p)})).collect(),
                ),
            };
            json!({
                "id": c.id + 1,
                "orbit_size": res.orbit_size(c.id),
                "stabilizer": subgroup(g, &c.stabilizer),
                "generic_stabilizer": subgroup(g, &c.generic_stabilizer),
                "nu": c.nu,
                "self_intersection": c.self_intersection,
                "centre": centre,
                "special_points": c.has_special_points(),
                "e1_position": c.e1_position.as_ref().map(position),
            })
        })
        .collect();
    let crossings: Vec<Value> = res
        .crossings
        .iter()
        .map(|x| json!({"a": x.a + 1, "position_on_a": position(&x.pos_a), "b": x.b + 1, "position_on_b": position(&x.pos_b)}))
        .collect();
    let arrows: Vec<Value> = res
        .attachments
        .iter()
        .map(|a| {
            json!({
                "component": a.component + 1,
                "position": position(&a.position),
                "branches": a.labels.iter().map(|(i, h)| json!({"branch": res.branches[*i].name(), "shift": elem(g, *h)})).collect::<Vec<_>>(),
            })
        })
        .collect();
    let marked: Vec<Value> = res
        .marked
        .iter()
        .zip(&scene.names)
        .map(|((c, h), n)| json!({"divisor": n, "component": c + 1, "shift": elem(g, *h)}))
        .collect();
    let strata: Vec<Value> = evaluate_strata(&graph)?
        .iter()
        .map(|e| {
            json!({
                "kind": match e.stratum.kind { StratumKind::Point => "point", StratumKind::Generic => "generic" },
                "component": e.stratum.component + 1,
                "position": position(&e.stratum.position),
                "chi": e.stratum.chi,
                "stabilizer": subgroup(g, &e.stratum.stabilizer),
                "w": e.w,
                "alpha": local_char(g, &e.stratum.stabilizer, &e.alpha),
            })
        })
        .collect();
    let tails: Vec<Value> = res
        .components
        .iter()
        .filter(|c| c.id != 0)
        .map(|c| {
            let label = match &c.e1_position {
                _ if !res.components[0].has_special_points() => "scalar",
                Some(Position::Infinity) => "x",
                Some(Position::Finite(z)) if z.is_zero() => "y",
                _ => "generic",
            };
            json!({"component": c.id + 1, "e1_position": c.e1_position.as_ref().map(position), "tail": label})
        })
        .collect();
    let out = json!({
        "action": action_json(&graph),
        "mode": res.mode.to_string(),
        "valuations": scene.names,
        "components": comps,
        "crossings": crossings,
        "arrows": arrows,
        "marked": marked,
        "strata": strata,
        "tails": tails,
        "expanded": {
            "vertices": graph.vertices.iter().map(|(c, h)| json!([c + 1, elem(g, *h)])).collect::<Vec<_>>(),
            "intersection_matrix": graph.matrix,
            "neg_inverse": graph.neg_inverse,
        },
    });
    Ok((out, quotient_dot(&graph)))
}

pub fn cmd_poincare(scene: &Scene, bound: u64, opts: PoincareOpts) -> Result<Value> {
    let graph = scene.valuations.resolve()?;
    let g = graph.res.action.group();
    let both = !opts.plain && !opts.equivariant;
    let mut out = serde_json::Map::new();
    out.insert("action".into(), action_json(&graph));
    out.insert("valuations".into(), json!(scene.names));
    out.insert("degree_bound".into(), json!(bound));
    if opts.equivariant || both {
        let (form, series) = equivariant_poincare(&graph, bound)?;
        let mut e = json!({"factors": form_json(g, &form), "text": form.to_string()});
        if !opts.factor_only {
            e["series"] = gr_series_json(g, &series);
        }
        out.insert("equivariant".into(), e);
    }
    if opts.plain || both {
        let (f, s) = plain_poincare(&graph, bound)?;
        let mut p = plain_factors_json(&f);
        if !opts.factor_only {
            p["series"] = plain_series_json(&s);
        }
        out.insert("plain".into(), p);
    }
    Ok(Value::Object(out))
}

pub fn cmd_compare(a: &Scene, b: &Scene, bound: u64, opts: CompareOpts) -> Result<Value> {
    let ga = a.valuations.resolve()?;
    let gb = b.valuations.resolve()?;
    let (aa, ab) = (&ga.res.action, &gb.res.action);
    if aa.group() != ab.group() || ga.r() != gb.r() || ga.res.mode != gb.res.mode {
        return Err(Error::Input("scenes differ in group, mode or number of valuations".into()));
    }
    let both = !opts.series && !opts.topology;
    let mut out = serde_json::Map::new();
    if opts.series || both {
        let (fa, _) = equivariant_poincare(&ga, bound)?;
        let (fb, _) = equivariant_poincare(&gb, bound)?;
        let v = match compare_series(&fa, &fb) {
            SeriesVerdict::Equal => json!({"verdict": "equal"}),
            SeriesVerdict::Different { class, left, right } => json!({
                "verdict": "different",
                "witness": {"class": class_json(aa.group(), &class), "exponent_left": left, "exponent_right": right},
            }),
        };
        out.insert("series".into(), v);
    }
    if opts.topology || both {
        let v = match compare_topology(&ga, &gb)? {
            TopologyVerdict::Equivalent { witness } => json!({
                "verdict": "equivalent",
                "component_map": witness.iter().map(|k| k + 1).collect::<Vec<_>>(),
            }),
            TopologyVerdict::NotEquivalent { obstruction } => {
                json!({"verdict": "not_equivalent", "obstruction": obstruction})
            }
        };
        out.insert("topology".into(), v);
    }
    Ok(Value::Object(out))
}

pub fn cmd_infer(scene: &Scene, bound: u64) -> Result<Value> {
    let graph = scene.valuations.resolve()?;
    let (form, _) = equivariant_poincare(&graph, bound)?;
    let inf = infer_representation(&form, &graph)?;
    let chars = |c: &Option<Character>| c.as_ref().map(|c| json!(c.residues()));
    let factors: Vec<&GRClass> = form.factors().map(|(t, _)| t).collect();
    Ok(json!({
        "chi_x": chars(&inf.chi_x),
        "chi_y": chars(&inf.chi_y),
        "scalar": chars(&inf.scalar),
        "ambiguous_tails": inf.ambiguous,
        "evidence": inf.evidence.iter().map(|(k, c, l)| json!({
            "factor": k,
            "w": factors[*k].w()[0],
            "component": c + 1,
            "tail": match l { TailLabel::X => "x", TailLabel::Y => "y", TailLabel::Scalar => "scalar" },
        })).collect::<Vec<_>>(),
    }))
}

pub fn cmd_oracle(scene: &Scene, bound: u64) -> Result<Value> {
    if scene.valuations.mode != Mode::Curves {
        return Err(Error::Precondition("the jets oracle handles curve valuations only".into()));
    }
    let s = jets_oracle(&scene.valuations.branches, bound)?;
    Ok(json!({"valuations": scene.names, "series": plain_series_json(&s)}))
}

pub fn cmd_check(scene: &Scene) -> Result<Value> {
    let reasons = check_determination_hypotheses(&scene.valuations.branches, &scene.valuations.action)?;
    Ok(json!({"pass": reasons.is_empty(), "reasons": reasons}))
}

/// Canonical rendering used for stdout, files and golden comparisons.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
