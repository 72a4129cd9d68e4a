//! The `analyze` report: one `key: value` line per quantity.

use oredeg::hgf::HgfFile;
use oredeg::hypergraph::validate_proper_coloring;
use oredeg::matching::max_matching;
use oredeg::VertexSet;

fn sets(s: &[VertexSet]) -> String {
    s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

/// Quantities in report order; predicates of the empty family are `n/a`.
pub fn fields(file: &HgfFile) -> Vec<(&'static str, String)> {
    let h = &file.hypergraph;
    let empty = h.is_empty();
    let na = || "n/a".to_string();
    let mut out: Vec<(&'static str, String)> = vec![
        ("n", h.n().to_string()),
        ("r", h.r().to_string()),
        ("edges", h.len().to_string()),
        ("min-degree", h.min_degree().to_string()),
        ("max-degree", h.max_degree().to_string()),
    ];
    let ore = h.ore_degree();
    out.push(("sigma", ore.value.to_string()));
    out.push((
        "sigma-witness",
        ore.witness.map_or_else(|| "none".to_string(), |w| w.to_string()),
    ));
    let (nu, m) = max_matching(h);
    out.push(("nu", nu.to_string()));
    out.push((
        "matching",
        if m.edges.is_empty() {
            "none".to_string()
        } else {
            sets(&m.edges)
        },
    ));
    if empty {
        for key in [
            "intersecting",
            "t-intersecting",
            "trivial-star",
            "hm-subfamily",
            "regular",
        ] {
            out.push((key, na()));
        }
    } else {
        let intersecting = h.is_intersecting();
        out.push(("intersecting", if intersecting { "yes".into() } else { "no".into() }));
        if let Some((a, b)) = h.disjoint_pair() {
            out.push(("disjoint-pair", format!("{a} {b}")));
        }
        let t = h.min_pairwise_intersection().map_or_else(|_| na(), |t| t.to_string());
        out.push(("t-intersecting", t));
        let star = match h.trivial_star_center() {
            Ok(Some(c)) => format!("center {c}"),
            _ => "no".to_string(),
        };
        out.push(("trivial-star", star));
        let hm = match h.hm_subfamily_witness() {
            Some((x, s)) => format!("center {x} base {s}"),
            None => "no".to_string(),
        };
        out.push(("hm-subfamily", hm));
        out.push((
            "regular",
            h.regular_degree().map_or_else(|| "no".to_string(), |d| d.to_string()),
        ));
    }
    if let Some(c) = &file.coloring {
        out.push(("colors", c.num_colors.to_string()));
        let proper = validate_proper_coloring(h, &c.colors).unwrap_or(false);
        out.push(("proper-coloring", if proper { "yes".into() } else { "no".into() }));
    }
    out
}

pub fn analyze(file: &HgfFile, kv: bool) -> String {
    let sep = if kv { "=" } else { ": " };
    fields(file)
        .into_iter()
        .map(|(k, v)| {
            let key = if kv { k.replace('-', "_") } else { k.to_string() };
            format!("{key}{sep}{v}\n")
        })
        .collect()
}
