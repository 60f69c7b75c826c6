//! The `verify` command: every structural and oracle check on one diagram,
//! or on the whole fixture corpus plus the Reidemeister pairs.

use std::fmt::Write as _;

use odd_szabo::cube::{Complex, Flavor};
use odd_szabo::error::{Error, Result};
use odd_szabo::fixtures;
use odd_szabo::invariants::{
    check_convergence, check_duality, check_e2, check_face_parity, check_filtration, check_reorientation,
    pages_from,
};
use odd_szabo::oracle::{enumerate_small_configs, even_khovanov_mod2, kauffman_jones};
use odd_szabo::signs::solve_edge_assignment;
use odd_szabo::zlinalg::{bigraded, jones, uct_mod2, Coefficients, Filtered};
use odd_szabo::{Kind, PlanarDiagram};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::{Report, RunConfig};

/// Configurations with more arcs are not enumerated for the local rules.
const MAX_ARCS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn check(name: &'static str, r: Result<()>) -> Check {
    match r {
        Ok(()) => Check { name, ok: true, detail: None },
        Err(e) => Check { name, ok: false, detail: Some(e.to_string()) },
    }
}

fn ensure(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(msg.into()))
    }
}

fn local_rules(d: &PlanarDiagram) -> Result<()> {
    let configs = enumerate_small_configs(std::slice::from_ref(d), MAX_ARCS);
    configs.par_iter().try_for_each(|c| {
        if c.dim() == 3 {
            check_face_parity(c)?;
        }
        let s = solve_edge_assignment(c, Kind::Y)?;
        check_filtration(c, &s)?;
        check_duality(c)
    })
}

fn omega_pages(d: &PlanarDiagram, flavor: Flavor, r_max: usize) -> Result<(Filtered, odd_szabo::zlinalg::PageTable)> {
    let kind = if flavor == Flavor::OmegaPrime { Kind::X } else { Kind::Y };
    let c = Complex::for_diagram(d, flavor, kind, None)?;
    let f = Filtered::new(c.chain())?;
    let p = f.pages(r_max)?;
    Ok((f, p))
}

/// All checks for one diagram.
pub fn diagram_checks(d: &PlanarDiagram, r_max: usize, inject_fault: bool) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("d_squared", (|| {
        for (flavor, kind) in [
            (Flavor::Gamma, Kind::X),
            (Flavor::Gamma, Kind::Y),
            (Flavor::Omega, Kind::Y),
            (Flavor::OmegaPrime, Kind::X),
        ] {
            let mut c = Complex::for_diagram(d, flavor, kind, None)?;
            if inject_fault && flavor == Flavor::Omega {
                c.inject_sign_fault();
            }
            c.check_d_squared()?;
            c.check_gradings()?;
            c.assignment().validate(c.config())?;
        }
        Ok(())
    })()));
    if inject_fault {
        return out;
    }
    out.push(check("local_rules", local_rules(d)));
    out.push(check("reorientation", (|| {
        let c = odd_szabo::Configuration::zero_smoothing(d);
        let s = solve_edge_assignment(&c, Kind::Y)?;
        (0..c.dim()).into_par_iter().try_for_each(|i| check_reorientation(&c, &s, i, d.sign_counts()))
    })()));
    let gamma = Complex::for_diagram(d, Flavor::Gamma, Kind::Y, None).and_then(|g| bigraded(g.chain(), Coefficients::Z));
    out.push(check("mod2_oracle", (|| {
        let t = gamma.clone()?;
        let mut ours = uct_mod2(&t);
        ours.retain(|_, v| *v != 0);
        let mut theirs = even_khovanov_mod2(d)?.homology();
        theirs.retain(|_, v| *v != 0);
        ensure(ours == theirs, "mod 2 homology differs from the even oracle")
    })()));
    out.push(check("jones_oracle", (|| {
        ensure(jones(&gamma.clone()?) == kauffman_jones(d)?, "Euler characteristic differs from the state sum")
    })()));
    out.push(check("kind_x_equals_y", (|| {
        let x = Complex::for_diagram(d, Flavor::Gamma, Kind::X, None)?;
        ensure(bigraded(x.chain(), Coefficients::Z)? == gamma.clone()?, "tables differ")
    })()));
    let omega = omega_pages(d, Flavor::Omega, r_max);
    out.push(check("e2_page", (|| {
        let (_, p) = omega.as_ref().map_err(Clone::clone)?;
        check_e2(p, &gamma.clone()?)
    })()));
    out.push(check("convergence", (|| {
        let (f, p) = omega.as_ref().map_err(Clone::clone)?;
        check_convergence(f, p)
    })()));
    out.push(check("omega_prime", (|| {
        let (_, p) = omega.as_ref().map_err(Clone::clone)?;
        let (_, q) = omega_pages(d, Flavor::OmegaPrime, r_max)?;
        ensure(pages_from(p, 2) == pages_from(&q, 2), "pages from r = 2 differ")
    })()));
    out
}

/// Homology tables and pages from `r = 2` agree for two diagrams.
pub fn pair_checks(a: &PlanarDiagram, b: &PlanarDiagram, r_max: usize) -> Vec<Check> {
    let table = |d: &PlanarDiagram| -> Result<_> {
        let g = Complex::for_diagram(d, Flavor::Gamma, Kind::Y, None)?;
        let mut t = bigraded(g.chain(), Coefficients::Z)?;
        t.retain(|_, g| !g.is_zero());
        Ok(t)
    };
    vec![
        check("homology", (|| ensure(table(a)? == table(b)?, "tables differ"))()),
        check("pages", (|| {
            let (_, p) = omega_pages(a, Flavor::Omega, r_max)?;
            let (_, q) = omega_pages(b, Flavor::Omega, r_max)?;
            ensure(pages_from(&p, 2) == pages_from(&q, 2), "pages from r = 2 differ")
        })()),
    ]
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut results = Vec::new();
    match &cfg.diagram {
        Some(d) => results.push((d.to_string(), diagram_checks(d, cfg.r_max, cfg.inject_fault))),
        None => {
            for (name, d) in fixtures::corpus() {
                results.push((name, diagram_checks(&d, cfg.r_max, cfg.inject_fault)));
            }
            if !cfg.inject_fault {
                for (name, a, b) in fixtures::reidemeister_pairs() {
                    results.push((name.to_string(), pair_checks(&a, &b, cfg.r_max)));
                }
            }
        }
    }
    let ok = results.iter().all(|(_, cs)| cs.iter().all(|c| c.ok));
    let mut text = String::new();
    for (name, cs) in &results {
        let bad: Vec<String> = cs
            .iter()
            .filter(|c| !c.ok)
            .map(|c| format!("{} ({})", c.name, c.detail.as_deref().unwrap_or("")))
            .collect();
        if bad.is_empty() {
            let _ = writeln!(text, "ok    {name}: {} checks", cs.len());
        } else {
            let _ = writeln!(text, "FAIL  {name}: {}", bad.join(", "));
        }
    }
    let json = json!({
        "command": "verify",
        "ok": ok,
        "results": results.iter().map(|(n, cs)| json!({"name": n, "checks": cs})).collect::<Vec<_>>(),
    });
    Ok(Report { json, text, ok })
}
