use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use groupoid_burnside::burnside::grothendieck::{
    grothendieck_equal, pair_add, pair_mul, GrothendieckPair, Naturals,
};
use groupoid_burnside::burnside::product_decomposition;
use groupoid_burnside::ghost::{
    ghost_injective, ghost_matrix, ghost_of_gset, primitive_idempotents,
};
use groupoid_burnside::gset::{decompose, isomorphic, IsoOutcome};
use groupoid_burnside::random::{self, GroupoidBounds};
use groupoid_burnside::subconj::{conjugally_equivalent, conjugated_isotropy_subgroups};
use groupoid_burnside::{BurnsideRing, MarkTable, OneObjectSubgroupoid, RightGSet, Subgroupoid};

use crate::report::{Format, Report};
use crate::{read_file, CliError, Context};

type Outcome = Result<Report, CliError>;

fn table(ctx: &Context) -> Result<Arc<MarkTable>, CliError> {
    Ok(Arc::new(MarkTable::new(ctx.groupoid()?, &ctx.options)?))
}

fn build_ring(ctx: &Context) -> Result<BurnsideRing, CliError> {
    Ok(BurnsideRing::from_table(table(ctx)?)?)
}

fn load_gset(ctx: &Context, path: &PathBuf) -> Result<RightGSet, CliError> {
    Ok(RightGSet::from_json(
        &read_file(path)?,
        Arc::clone(ctx.groupoid()?),
    )?)
}

fn load_subgroupoid(ctx: &Context, path: &PathBuf) -> Result<Subgroupoid, CliError> {
    Ok(Subgroupoid::from_json(
        &read_file(path)?,
        Arc::clone(ctx.groupoid()?),
    )?)
}

fn subgroup_json(h: &OneObjectSubgroupoid) -> Value {
    let g = h.parent();
    json!({
        "base": g.object_label(h.base()),
        "order": h.order(),
        "arrows": h.arrows().iter().map(|&x| g.arrow_label(x)).collect::<Vec<_>>(),
    })
}

fn labelled_matrix(labels: &[String], rows: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut out = vec![std::iter::once(String::new())
        .chain(labels.iter().cloned())
        .collect()];
    for (l, r) in labels.iter().zip(rows) {
        out.push(
            std::iter::once(l.clone())
                .chain(r.iter().cloned())
                .collect(),
        );
    }
    out
}

pub fn validate(ctx: &Context) -> Outcome {
    let g = ctx.groupoid()?;
    let j = json!({
        "valid": true,
        "objects": g.num_objects(),
        "arrows": g.num_arrows(),
        "components": g.connected_components().len(),
    });
    let text = format!(
        "valid groupoid: {} objects, {} arrows, {} components\n",
        g.num_objects(),
        g.num_arrows(),
        g.connected_components().len()
    );
    Ok(Report::new(j).pretty(text))
}

pub fn components(ctx: &Context) -> Outcome {
    let g = ctx.groupoid()?;
    let mut rows = vec![vec![
        "component".into(),
        "objects".into(),
        "isotropy_order".into(),
    ]];
    let mut list = Vec::new();
    for (i, c) in g.connected_components().iter().enumerate() {
        let labels: Vec<&str> = c.iter().map(|&a| g.object_label(a)).collect();
        let order = g.hom(c[0], c[0]).count();
        rows.push(vec![i.to_string(), labels.join(" "), order.to_string()]);
        list.push(json!({ "component": i, "objects": labels, "isotropy_order": order }));
    }
    Ok(Report::new(Value::Array(list)).table(rows))
}

pub fn isotropy(ctx: &Context) -> Outcome {
    let g = ctx.groupoid()?;
    let mut rows = vec![vec!["object".into(), "order".into(), "arrows".into()]];
    let mut list = Vec::new();
    for a in g.objects() {
        let h = OneObjectSubgroupoid::isotropy(Arc::clone(g), a);
        let arrows: Vec<&str> = h.arrows().iter().map(|&x| g.arrow_label(x)).collect();
        rows.push(vec![
            g.object_label(a).into(),
            h.order().to_string(),
            arrows.join(";"),
        ]);
        list.push(subgroup_json(&h));
    }
    Ok(Report::new(Value::Array(list)).table(rows))
}

pub fn subgroupoids(ctx: &Context) -> Outcome {
    let t = table(ctx)?;
    let mut rows = vec![vec![
        "index".into(),
        "label".into(),
        "component".into(),
        "order".into(),
    ]];
    let mut list = Vec::new();
    for (k, rep) in t.reps().iter().enumerate() {
        rows.push(vec![
            k.to_string(),
            t.label(k),
            t.block_of(k).to_string(),
            rep.order().to_string(),
        ]);
        let mut j = subgroup_json(rep);
        j["index"] = json!(k);
        j["label"] = json!(t.label(k));
        j["component"] = json!(t.block_of(k));
        list.push(j);
    }
    Ok(Report::new(Value::Array(list)).table(rows))
}

pub fn conjugate(ctx: &Context, h: &PathBuf, k: &PathBuf) -> Outcome {
    let g = ctx.groupoid()?;
    let (h, k) = (load_subgroupoid(ctx, h)?, load_subgroupoid(ctx, k)?);
    let witness = conjugally_equivalent(&h, &k, ctx.search_cap)?;
    let isotropy = match (h.as_one_object(), k.as_one_object()) {
        (Some(a), Some(b)) => Some(conjugated_isotropy_subgroups(&a, &b)),
        _ => None,
    };
    let mut j = json!({ "conjugally_equivalent": witness.is_some(), "witness": Value::Null });
    let mut text = format!("conjugally equivalent: {}\n", witness.is_some());
    if let Some(w) = &witness {
        let u: BTreeMap<&str, &str> =
            w.u.iter()
                .map(|(&b, &a)| (g.object_label(b), g.object_label(a)))
                .collect();
        let arrows: BTreeMap<&str, &str> =
            w.g.iter()
                .map(|(&b, &x)| (g.object_label(b), g.arrow_label(x)))
                .collect();
        for (b, a) in &u {
            text.push_str(&format!("  {b} <- {a} via {}\n", arrows[b]));
        }
        j["witness"] = json!({ "u": u, "g": arrows });
    }
    if let Some(d) = isotropy {
        j["isotropy_conjugate"] = json!(d.is_some());
        j["isotropy_conjugator"] = json!(d.map(|x| g.arrow_label(x)));
        text.push_str(&format!("isotropy groups conjugate: {}\n", d.is_some()));
    }
    Ok(Report::new(j).pretty(text))
}

pub fn marks(ctx: &Context) -> Outcome {
    let t = table(ctx)?;
    let rows: Vec<Vec<String>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(u64::to_string).collect())
        .collect();
    let j = serde_json::to_value(t.export()).expect("serializable");
    Ok(Report::new(j)
        .table(labelled_matrix(&t.labels(), &rows))
        .default_format(Format::Csv))
}

pub fn ring(ctx: &Context) -> Outcome {
    let r = build_ring(ctx)?;
    let labels = r.table().labels();
    let mut rows = vec![vec![
        "h".into(),
        "k".into(),
        "l".into(),
        "coefficient".into(),
    ]];
    for (h, k, l, c) in r.constants().sparse() {
        rows.push(vec![
            labels[h].clone(),
            labels[k].clone(),
            labels[l].clone(),
            c.to_string(),
        ]);
    }
    let j = serde_json::to_value(r.export()).expect("serializable");
    Ok(Report::new(j).table(rows).pretty(r.multiplication_table()))
}

pub fn decompose_ring(ctx: &Context) -> Outcome {
    let r = build_ring(ctx)?;
    let d = product_decomposition(&r)?;
    let g = r.groupoid();
    let labels = r.table().labels();
    let mut list = Vec::new();
    let mut text = String::new();
    for (i, c) in d.components.iter().enumerate() {
        let local = c.ring.table().labels();
        let basis: Vec<Value> = c
            .global
            .iter()
            .zip(&local)
            .map(|(&k, l)| json!({ "groupoid": labels[k], "group": l }))
            .collect();
        text.push_str(&format!(
            "component {i} at {}: isotropy order {}, rank {}\n",
            g.object_label(c.base),
            c.vertex.source().num_arrows(),
            c.ring.rank()
        ));
        for (&k, l) in c.global.iter().zip(&local) {
            text.push_str(&format!("  {} <-> {l}\n", labels[k]));
        }
        list.push(json!({
            "component": i,
            "base": g.object_label(c.base),
            "isotropy_order": c.vertex.source().num_arrows(),
            "rank": c.ring.rank(),
            "basis": basis,
            "ring": serde_json::to_value(c.ring.export()).expect("serializable"),
        }));
    }
    text.push_str("structure constants agree with the product of the component rings\n");
    Ok(Report::new(json!({ "components": list, "verified": true })).pretty(text))
}

pub fn gset_validate(ctx: &Context, x: &PathBuf) -> Outcome {
    let x = load_gset(ctx, x)?;
    let text = format!(
        "valid groupoid-set: {} elements, {} orbits\n",
        x.len(),
        x.orbits().len()
    );
    Ok(
        Report::new(json!({ "valid": true, "elements": x.len(), "orbits": x.orbits().len() }))
            .pretty(text),
    )
}

pub fn gset_orbits(ctx: &Context, x: &PathBuf) -> Outcome {
    let x = load_gset(ctx, x)?;
    let mut rows = vec![vec![
        "orbit".into(),
        "elements".into(),
        "stabilizer_base".into(),
        "stabilizer_order".into(),
    ]];
    let mut list = Vec::new();
    for (i, orbit) in x.orbits().iter().enumerate() {
        let stab = x.stabilizer(orbit[0])?;
        let labels: Vec<&str> = orbit.iter().map(|&e| x.label(e)).collect();
        rows.push(vec![
            i.to_string(),
            labels.join(" "),
            x.groupoid().object_label(stab.base()).into(),
            stab.order().to_string(),
        ]);
        list.push(json!({ "elements": labels, "representative": x.label(orbit[0]), "stabilizer": subgroup_json(&stab) }));
    }
    Ok(Report::new(Value::Array(list)).table(rows))
}

pub fn gset_decompose(ctx: &Context, x: &PathBuf) -> Outcome {
    let t = table(ctx)?;
    let x = load_gset(ctx, x)?;
    let d = decompose(&x, &t)?;
    let labels = t.labels();
    let mut rows = vec![vec!["class".into(), "multiplicity".into()]];
    let mut coeffs = BTreeMap::new();
    for (k, &c) in d.coefficients.iter().enumerate().filter(|(_, &c)| c != 0) {
        rows.push(vec![labels[k].clone(), c.to_string()]);
        coeffs.insert(labels[k].clone(), c);
    }
    let orbits: Vec<Value> = d
        .orbit_representatives
        .iter()
        .zip(&d.orbit_classes)
        .map(|(&e, &k)| json!({ "representative": x.label(e), "class": labels[k] }))
        .collect();
    let j = json!({
        "coefficients": coeffs,
        "orbits": orbits,
        "size": x.len(),
        "reconstructed_size": d.reconstructed_size(&t),
    });
    Ok(Report::new(j).table(rows))
}

pub fn gset_isomorphic(ctx: &Context, x: &PathBuf, y: &PathBuf) -> Outcome {
    let t = table(ctx)?;
    let (x, y) = (load_gset(ctx, x)?, load_gset(ctx, y)?);
    match isomorphic(&x, &y, &t)? {
        IsoOutcome::Isomorphic(f) => {
            let map: BTreeMap<&str, &str> = x
                .elements()
                .map(|e| (x.label(e), y.label(f.apply(e))))
                .collect();
            let mut text = String::from("isomorphic\n");
            for (a, b) in &map {
                text.push_str(&format!("  {a} -> {b}\n"));
            }
            Ok(Report::new(json!({ "isomorphic": true, "witness": map })).pretty(text))
        }
        IsoOutcome::NotIsomorphic(c) => {
            let label = t.label(c.index);
            let text = format!(
                "not isomorphic: {label} fixes {} elements on the left and {} on the right\n",
                c.left_count, c.right_count
            );
            let j = json!({
                "isomorphic": false,
                "certificate": { "subgroupoid": label, "left_fixed": c.left_count, "right_fixed": c.right_count },
            });
            Ok(Report::new(j).pretty(text))
        }
    }
}

pub fn gset_fixed(ctx: &Context, x: &PathBuf, h: &PathBuf) -> Outcome {
    let x = load_gset(ctx, x)?;
    let h = load_subgroupoid(ctx, h)?;
    let fixed = x.fixed_points_of(&h)?;
    let labels: Vec<&str> = fixed.iter().map(|&e| x.label(e)).collect();
    let rows = std::iter::once(vec!["element".to_string()])
        .chain(labels.iter().map(|l| vec![l.to_string()]))
        .collect();
    Ok(Report::new(json!({ "count": labels.len(), "fixed": labels })).table(rows))
}

pub fn ghost(ctx: &Context, gset: Option<&PathBuf>) -> Outcome {
    let t = table(ctx)?;
    let labels = t.labels();
    if let Some(path) = gset {
        let x = load_gset(ctx, path)?;
        let v = ghost_of_gset(&x, &t);
        let mut rows = vec![vec!["subgroupoid".into(), "fixed_points".into()]];
        rows.extend(
            labels
                .iter()
                .zip(&v.entries)
                .map(|(l, e)| vec![l.clone(), e.to_string()]),
        );
        let j = json!({ "order": labels, "entries": v.entries });
        return Ok(Report::new(j).table(rows).default_format(Format::Csv));
    }
    let m = ghost_matrix(&t);
    let cert = ghost_injective(&t)?;
    let rows: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect())
        .collect();
    let j = json!({
        "order": labels,
        "matrix": m,
        "determinant": cert.determinant.to_string(),
        "diagonal": cert.diagonal,
        "injective": cert.is_injective(),
    });
    let matrix = labelled_matrix(&labels, &rows);
    let text = format!(
        "{}determinant: {}\n",
        crate::report::aligned(&matrix),
        cert.determinant
    );
    Ok(Report::new(j)
        .table(matrix)
        .pretty(text)
        .default_format(Format::Csv))
}

pub fn idempotents(ctx: &Context) -> Outcome {
    let r = build_ring(ctx)?;
    let es = primitive_idempotents(&r)?;
    let labels = r.table().labels();
    let mut rows = vec![vec![
        "idempotent".into(),
        "class".into(),
        "coefficient".into(),
    ]];
    let mut text = String::new();
    let mut list = Vec::new();
    for (i, e) in es.iter().enumerate() {
        let coeffs = e.export();
        for (class, c) in &coeffs {
            rows.push(vec![labels[i].clone(), class.clone(), c.clone()]);
        }
        let terms: Vec<String> = coeffs
            .iter()
            .map(|(class, c)| format!("({c})·[{class}]"))
            .collect();
        text.push_str(&format!("e[{}] = {}\n", labels[i], terms.join(" + ")));
        list.push(json!(coeffs));
    }
    Ok(Report::new(Value::Array(list)).table(rows).pretty(text))
}

pub fn grothendieck_demo(ctx: &Context, count: usize) -> Outcome {
    use rand::Rng;
    let mut rng = random::rng(ctx.seed);
    let n = Naturals;
    let mut failures = Vec::new();
    for i in 0..count {
        let (a, b, c, d): (u64, u64, u64, u64) = (
            rng.gen_range(0..100),
            rng.gen_range(0..100),
            rng.gen_range(0..100),
            rng.gen_range(0..100),
        );
        let (p, q) = (GrothendieckPair::new(a, b), GrothendieckPair::new(c, d));
        let (x, y) = (a as i64 - b as i64, c as i64 - d as i64);
        let ok = Naturals::to_integer(&pair_add(&n, &p, &q)) == x + y
            && Naturals::to_integer(&pair_mul(&n, &p, &q)) == x * y
            && grothendieck_equal(&n, &p, &q).expect("cancellative") == (x == y)
            && grothendieck_equal(&n, &p, &Naturals::from_integer(x)).expect("cancellative");
        if !ok {
            failures.push(i);
        }
    }
    if !failures.is_empty() {
        return Err(CliError::domain(
            "GrothendieckMismatch",
            format!("pairs {failures:?} disagree with integer arithmetic"),
        ));
    }
    let text = format!("{count} pairs over the naturals agree with integer arithmetic\n");
    Ok(Report::new(json!({ "pairs": count, "seed": ctx.seed, "consistent": true })).pretty(text))
}

pub fn fuzz(
    ctx: &Context,
    count: usize,
    max_arrows: usize,
    max_isotropy: usize,
    gset_size: Option<usize>,
) -> Outcome {
    let mut rng = random::rng(ctx.seed);
    let bounds = GroupoidBounds {
        max_arrows,
        max_isotropy,
        ..Default::default()
    };
    let mut list = Vec::new();
    for _ in 0..count {
        let g = Arc::new(random::random_groupoid(&mut rng, &bounds));
        let mut j = json!({ "groupoid": g.to_raw() });
        if let Some(size) = gset_size {
            j["gset"] = serde_json::to_value(random::random_gset(&mut rng, &g, size).to_raw())
                .expect("serializable");
        }
        list.push(j);
    }
    Ok(Report::new(Value::Array(list)).default_format(Format::Json))
}
