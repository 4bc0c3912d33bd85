//! Enumeration helpers shared by the campaigns and the CLI.

use std::collections::BTreeSet;

use hodiff_core::rational::{self, Q};
use hodiff_core::rootsys::{Family, RootDatum, Weight};
use hodiff_core::{Error, Result};

pub fn datum(family: &str, rank: usize) -> Result<RootDatum> {
    let f = Family::parse(family).ok_or_else(|| Error::InvalidType {
        family: family.into(),
        rank,
    })?;
    RootDatum::new(f, rank)
}

/// Nonzero dominant small weights, in increasing fundamental coordinates.
pub fn small_weights(datum: &RootDatum) -> Result<Vec<Weight>> {
    let r = datum.rank();
    let mut out = Vec::new();
    let mut c = vec![0i64; r];
    loop {
        let mut i = 0;
        while i < r {
            c[i] += 1;
            if c[i] <= 2 {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
        let w = datum.from_fundamental(&c)?;
        if datum.is_small(&w)? {
            out.push(w);
        }
    }
    out.sort_by_key(|w| {
        let mut k = datum.fundamental_coords(w);
        k.reverse();
        k
    });
    Ok(out)
}

pub fn small_fundamental_weights(datum: &RootDatum) -> Vec<Weight> {
    datum
        .small_fundamental_indices()
        .into_iter()
        .map(|i| datum.fundamental_weights()[i].clone())
        .collect()
}

/// Dominant weights of simple-root height at most `bound`, sorted.
pub fn dominant_up_to_height(datum: &RootDatum, bound: &Q) -> Result<Vec<Weight>> {
    let zero = Weight::zero(datum.dim());
    let mut seen = BTreeSet::new();
    let mut stack = vec![zero.clone()];
    seen.insert(zero);
    while let Some(w) = stack.pop() {
        for f in datum.fundamental_weights() {
            let next = &w + f;
            let h = rational::from_r64(&datum.height(&next));
            if &h <= bound && seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by_key(|w| (datum.height(w), datum.fundamental_coords(w)));
    Ok(out)
}

/// `sum_i c_i omega_i`: the point with `<xi, alpha_i^vee> = c_i`.
pub fn from_simple_pairings(datum: &RootDatum, c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; datum.dim()];
    for (ci, w) in c.iter().zip(datum.fundamental_weights()) {
        for (o, x) in out.iter_mut().zip(datum.coords_f64(w)) {
            *o += ci * x;
        }
    }
    out
}

/// Partitions with `n` parts (zeros allowed) and largest part at most `max`.
pub fn partitions(n: usize, max: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=max {
            prefix.push(v);
            rec(n, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::new(), &mut out);
    out
}

pub fn system_name(datum: &RootDatum) -> String {
    format!("{}{}", datum.family().name(), datum.rank())
}

pub fn describe(datum: &RootDatum, w: &Weight) -> String {
    let c: Vec<String> = datum.fundamental_coords(w).iter().map(|x| x.to_string()).collect();
    format!("[{}]", c.join(","))
}
