//! Enumeration of the supports of limit square roots of the dualizing
//! sheaf, their isomorphism-class counts and scheme multiplicities.
//!
//! A node subset `Delta` supports a limit square root exactly when the
//! twisted pull-back of the dualizing sheaf has even degree on every
//! component of the non-exceptional part; the roots over a fixed support
//! form a torsor under the 2-torsion of the Picard group of that part, of
//! order `2^(2 * sum g_v + b1)` per connected component. The weighted total
//! over all supports is `2^(2g)`.

use serde::Serialize;
use std::collections::BTreeSet;

use crate::dualgraph::DualGraph;
use crate::{Error, Result};

/// One support row: a blow-up subset with its root count and multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct SpinSupport {
    /// Edge ids of the blown-up nodes, sorted.
    pub delta: Vec<usize>,
    /// Per component of `X~` (keyed by vertex id of the curve): degree of
    /// the pulled-back dualizing sheaf minus the exceptional attachments.
    pub per_component_degree: Vec<(String, i64)>,
    /// Number of isomorphism classes of limit square roots on this support.
    pub root_count: u128,
    /// Scheme multiplicity `2^(b1(Sigma_X))`.
    pub multiplicity: u64,
    /// Two-smooth-component case only: whether the moduli space is singular
    /// at spin curves with this support.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_singular_point: Option<bool>,
    /// Two-smooth-component case only: order of the automorphism group of a
    /// spin curve with this support (1 or 2).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<u8>,
}

/// The full spin table of a curve: all supports and the degree identity.
#[derive(Clone, Debug, Serialize)]
pub struct SpinTable {
    pub genus: u32,
    pub supports: Vec<SpinSupport>,
    /// `sum(root_count * multiplicity) = 2^(2g)`.
    pub weighted_total: u128,
}

/// Endpoint count of `delta`-edges at a vertex; a loop in `delta`
/// contributes 2.
fn delta_endpoints(g: &DualGraph, delta: &BTreeSet<usize>, v: usize) -> usize {
    delta
        .iter()
        .map(|&e| g.edges()[e].iter().filter(|&&x| x == v).count())
        .sum()
}

/// Whether `delta` supports a limit square root: the residual degree
/// `2 g_v - 2 + valence(v) - e_v(delta)` must be even at every vertex.
pub fn is_valid_support(g: &DualGraph, delta: &BTreeSet<usize>) -> bool {
    (0..g.vertex_count()).all(|v| (g.valence(v) - delta_endpoints(g, delta, v)) % 2 == 0)
}

/// All valid supports, by full subset iteration, sorted by
/// `(|Delta|, lexicographic edge ids)`.
pub fn valid_supports(g: &DualGraph) -> Vec<BTreeSet<usize>> {
    let m = g.edge_count();
    assert!(m <= 20, "support enumeration capped at 20 edges");
    let mut out: Vec<BTreeSet<usize>> = (0u32..1 << m)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|delta| is_valid_support(g, delta))
        .collect();
    out.sort_by_key(|d| (d.len(), d.iter().copied().collect::<Vec<_>>()));
    out
}

/// Number of isomorphism classes of limit square roots on a valid support:
/// the product over connected components `K` of `X~` of
/// `2^(2 * sum_{v in K} g_v + b1(K))`.
pub fn root_count(g: &DualGraph, delta: &BTreeSet<usize>) -> Result<u128> {
    if !is_valid_support(g, delta) {
        return Err(Error::OddComponentDegree(format!("{delta:?}")));
    }
    let x = g.blow_up(delta)?;
    let mut exponent: u32 = 0;
    for comp in x.tilde_components() {
        let genus_sum: u32 = comp.iter().map(|&v| g.vertices()[v].genus).sum();
        exponent += 2 * genus_sum + x.tilde_component_b1(&comp);
    }
    Ok(1u128 << exponent)
}

/// Scheme multiplicity of the support: `2^(b1(Sigma_X))`.
pub fn multiplicity(g: &DualGraph, delta: &BTreeSet<usize>) -> Result<u64> {
    let x = g.blow_up(delta)?;
    Ok(1u64 << x.sigma_graph().b1())
}

/// Assemble the full spin table and assert the degree identity.
pub fn spin_table(g: &DualGraph) -> Result<SpinTable> {
    let genus = g.genus();
    let two_component = g.is_two_component();
    let delta_total = g.edge_count();
    let mut supports = Vec::new();
    let mut weighted_total: u128 = 0;
    for delta in valid_supports(g) {
        let roots = root_count(g, &delta)?;
        let mult = multiplicity(g, &delta)?;
        weighted_total += roots * mult as u128;
        let x = g.blow_up(&delta)?;
        let per_component_degree = (0..g.vertex_count())
            .map(|v| {
                let deg = 2 * g.vertices()[v].genus as i64 - 2 + g.valence(v) as i64
                    - delta_endpoints(g, &delta, v) as i64;
                (g.vertices()[v].id.clone(), deg)
            })
            .collect();
        let (is_singular_point, aut_order) = if two_component {
            let full = delta.len() == delta_total && delta_total >= 2;
            (Some(full), Some(if delta.len() == delta_total { 2 } else { 1 }))
        } else {
            (None, None)
        };
        let _ = x;
        supports.push(SpinSupport {
            delta: delta.iter().copied().collect(),
            per_component_degree,
            root_count: roots,
            multiplicity: mult,
            is_singular_point,
            aut_order,
        });
    }
    let expected = 1u128 << (2 * genus);
    if weighted_total != expected {
        return Err(Error::Internal(format!(
            "degree identity failed: {weighted_total} != 2^(2*{genus})"
        )));
    }
    Ok(SpinTable { genus, supports, weighted_total })
}

/// Number of singular spin curves of a two-smooth-component curve:
/// `2^(2(g1+g2))`, the size of the 2-torsion of the Jacobian of the
/// normalization.
pub fn singular_spin_count(g: &DualGraph) -> Result<u128> {
    if !g.is_two_component() || g.edge_count() < 2 {
        return Err(Error::NotTwoComponentShape);
    }
    let genus_sum: u32 = g.vertices().iter().map(|v| v.genus).sum();
    let count = 1u128 << (2 * genus_sum);
    let full: BTreeSet<usize> = (0..g.edge_count()).collect();
    debug_assert_eq!(count, root_count(g, &full)?);
    Ok(count)
}
