//! Graded homology of free complexes and the graded Euler characteristic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::lattice::AbelianGroup;
use super::reduce::{cancel, Chain, Coefficients};
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// Laurent polynomial in `q`: exponent to coefficient, zero terms omitted.
pub type Laurent = BTreeMap<i64, i64>;

/// Homology groups keyed by `(h, q)`.
pub type Table = BTreeMap<(i64, i64), AbelianGroup>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub h: i64,
    pub q: i64,
    pub free: usize,
    pub torsion: Vec<u64>,
}

pub fn table_rows(t: &Table) -> Vec<TableRow> {
    t.iter()
        .map(|(&(h, q), g)| TableRow { h, q, free: g.free, torsion: g.torsion.clone() })
        .collect()
}

/// Homology of a complex graded by `key(h, δ, q)`, where `d` maps key `k`
/// into `succ(k)`. Keys without generators are absent; zero groups are kept.
pub fn homology_by<K, F, S>(c: &Chain, coeffs: Coefficients, key: F, succ: S) -> Result<BTreeMap<K, AbelianGroup>>
where
    K: Ord + Copy + Send + Sync,
    F: Fn(i64, i64, i64) -> K,
    S: Fn(K) -> K + Sync,
{
    let key_of = |c: &Chain, i: usize| key(c.h[i], c.delta[i], c.q[i]);
    let all_keys: std::collections::BTreeSet<K> = (0..c.len()).map(|i| key_of(c, i)).collect();
    let reduced = cancel(c, coeffs, |_, _| true)?;
    if !reduced.d.mul(&reduced.d)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for i in 0..reduced.len() {
        groups.entry(key_of(&reduced, i)).or_default().push(i);
    }
    if coeffs == Coefficients::Z2 {
        if !reduced.d.mod2().is_zero() {
            return Err(Error::Invariant("mod 2 reduction left a nonzero differential".into()));
        }
        return Ok(all_keys
            .iter()
            .map(|k| (*k, AbelianGroup::free(groups.get(k).map_or(0, Vec::len))))
            .collect());
    }
    // Invariant factors of every block k -> succ(k).
    let blocks: Vec<(K, K, Vec<BigInt>)> = groups
        .par_iter()
        .filter_map(|(k, src)| {
            let t = succ(*k);
            let dst = groups.get(&t)?;
            let m = reduced.d.select(dst, src).to_dense();
            Some((*k, t, invariant_factors(&m, src.len())))
        })
        .collect();
    let mut rank_out: BTreeMap<K, usize> = BTreeMap::new();
    let mut incoming: BTreeMap<K, Vec<BigInt>> = BTreeMap::new();
    for (k, t, f) in blocks {
        rank_out.insert(k, f.len());
        incoming.insert(t, f);
    }
    let mut out = BTreeMap::new();
    for k in &all_keys {
        let n = groups.get(k).map_or(0, Vec::len);
        let r_out = rank_out.get(k).copied().unwrap_or(0);
        let inc = incoming.get(k).cloned().unwrap_or_default();
        out.insert(*k, AbelianGroup::from_factors(n - r_out, &inc)?);
    }
    Ok(out)
}

/// Homology of the `d_1` part of `c`, bigraded by `(h, q)`.
pub fn bigraded(c: &Chain, coeffs: Coefficients) -> Result<Table> {
    homology_by(&c.part(1), coeffs, |h, _, q| (h, q), |(h, q)| (h + 1, q))
}

/// Homology of the whole differential, graded by `δ`.
pub fn total(c: &Chain, coeffs: Coefficients) -> Result<BTreeMap<i64, AbelianGroup>> {
    homology_by(c, coeffs, |_, d, _| d, |j| j - 2)
}

/// `Σ (-1)^h rank · q^q`.
pub fn jones(t: &Table) -> Laurent {
    let mut p = Laurent::new();
    for (&(h, q), g) in t {
        let s = if h.rem_euclid(2) == 0 { 1 } else { -1 };
        *p.entry(q).or_insert(0) += s * g.free as i64;
    }
    p.retain(|_, v| *v != 0);
    p
}

/// Dimensions of homology with `Z/2` coefficients from the integral table.
/// The differential raises `h`, so `Tor` comes from degree `h + 1`.
pub fn uct_mod2(t: &Table) -> BTreeMap<(i64, i64), usize> {
    let mut out = BTreeMap::new();
    for (&(h, q), g) in t {
        let tor = t.get(&(h + 1, q)).map_or(0, AbelianGroup::tor_mod2);
        out.insert((h, q), g.dim_mod2() + tor);
    }
    out
}

pub fn format_laurent(p: &Laurent) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (&e, &c)) in p.iter().enumerate() {
        let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
        if i > 0 {
            s.push(' ');
        }
        s.push_str(sign);
        if i > 0 {
            s.push(' ');
        }
        let a = c.abs();
        let mono = match e {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{e}"),
        };
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else if a == 1 {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{a}{mono}"));
        }
    }
    s
}
