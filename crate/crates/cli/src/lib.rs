//! Commands behind the `odd-szabo` binary. Each command returns a JSON
//! report and a plain text rendering of it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use odd_szabo::cube::{Complex, Flavor};
use odd_szabo::error::{Error, Result};
use odd_szabo::zlinalg::homology::{table_rows, TableRow};
use odd_szabo::zlinalg::{bigraded, format_laurent, jones, Coefficients, Filtered};
use odd_szabo::{Kind, PlanarDiagram};
use serde_json::{json, Value};

pub mod verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Homology,
    Spectral,
    Jones,
    Verify,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// `None` only for `verify`, which then runs the fixture corpus.
    pub diagram: Option<PlanarDiagram>,
    pub kind: Kind,
    pub coeffs: Coefficients,
    pub r_max: usize,
    pub orient_seed: Option<u64>,
    /// Test hook: corrupt one sign of the assembled cube before checking.
    pub inject_fault: bool,
}

pub struct Report {
    pub json: Value,
    pub text: String,
    /// False when `verify` found a failing check.
    pub ok: bool,
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    match cfg.command {
        Command::Verify => verify::run(cfg),
        _ => {
            let d = cfg.diagram.as_ref().ok_or_else(|| Error::Parse("no diagram given".into()))?;
            match cfg.command {
                Command::Homology => homology(cfg, d),
                Command::Spectral => spectral(cfg, d),
                _ => jones_report(cfg, d),
            }
        }
    }
}

fn coeff_name(c: Coefficients) -> &'static str {
    match c {
        Coefficients::Z => "Z",
        Coefficients::Z2 => "Z2",
    }
}

pub fn group_string(free: usize, torsion: &[u64]) -> String {
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        n => parts.push(format!("Z^{n}")),
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Bigraded homology of the edge-map complex, zero groups dropped.
pub fn homology_rows(d: &PlanarDiagram, kind: Kind, coeffs: Coefficients, seed: Option<u64>) -> Result<Vec<TableRow>> {
    let g = Complex::for_diagram(d, Flavor::Gamma, kind, seed)?;
    let mut t = bigraded(g.chain(), coeffs)?;
    t.retain(|_, g| !g.is_zero());
    Ok(table_rows(&t))
}

fn homology(cfg: &RunConfig, d: &PlanarDiagram) -> Result<Report> {
    let g = Complex::for_diagram(d, Flavor::Gamma, cfg.kind, cfg.orient_seed)?;
    let mut t = bigraded(g.chain(), cfg.coeffs)?;
    let j = jones(&bigraded(g.chain(), Coefficients::Z)?);
    t.retain(|_, g| !g.is_zero());
    let rows = table_rows(&t);
    let mut text = format!("{d}\n  h    q  group\n");
    for r in &rows {
        let _ = writeln!(text, "{:>3} {:>4}  {}", r.h, r.q, group_string(r.free, &r.torsion));
    }
    let _ = writeln!(text, "jones: {}", format_laurent(&j));
    let json = json!({
        "command": "homology",
        "diagram": d.to_string(),
        "kind": cfg.kind.to_string(),
        "coeffs": coeff_name(cfg.coeffs),
        "table": rows,
        "jones": format_laurent(&j),
    });
    Ok(Report { json, text, ok: true })
}

fn omega(d: &PlanarDiagram, kind: Kind, seed: Option<u64>) -> Result<Complex> {
    let flavor = match kind {
        Kind::Y => Flavor::Omega,
        Kind::X => Flavor::OmegaPrime,
    };
    Complex::for_diagram(d, flavor, kind, seed)
}

fn spectral(cfg: &RunConfig, d: &PlanarDiagram) -> Result<Report> {
    let c = omega(d, cfg.kind, cfg.orient_seed)?;
    let f = Filtered::new(c.chain())?;
    let pages = f.pages(cfg.r_max)?;
    let conv = f.convergence(&pages)?;
    let mut rows: Vec<_> = pages.rows();
    rows.retain(|r| r.free > 0 || !r.torsion.is_empty());
    let stable: Vec<Value> = pages
        .stable_from
        .iter()
        .map(|(&(p, q), &r)| json!({"p": p, "q": q, "r": r}))
        .collect();
    let mut text = format!("{d}\n");
    let mut by_page: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for r in &rows {
        by_page
            .entry(r.page.clone())
            .or_default()
            .push(format!("({},{}) {}", r.p, r.q, group_string(r.free, &r.torsion)));
    }
    for (page, entries) in &by_page {
        let _ = writeln!(text, "E^{page}: {}", entries.join(", "));
    }
    let converged = conv.iter().all(|r| r.agree);
    let _ = writeln!(text, "E^inf agrees with graded total homology: {converged}");
    let json = json!({
        "command": "spectral",
        "diagram": d.to_string(),
        "kind": cfg.kind.to_string(),
        "r_max": cfg.r_max,
        "pages": rows,
        "stable_from": stable,
        "convergence": conv,
    });
    Ok(Report { json, text, ok: converged })
}

fn jones_report(cfg: &RunConfig, d: &PlanarDiagram) -> Result<Report> {
    let g = Complex::for_diagram(d, Flavor::Gamma, cfg.kind, cfg.orient_seed)?;
    let j = jones(&bigraded(g.chain(), Coefficients::Z)?);
    let terms: Vec<Value> = j.iter().map(|(e, c)| json!([e, c])).collect();
    Ok(Report {
        json: json!({"command": "jones", "diagram": d.to_string(), "jones": format_laurent(&j), "terms": terms}),
        text: format!("{}\n", format_laurent(&j)),
        ok: true,
    })
}
