//! Torsor labels for enriched spin curves on two-smooth-component curves
//! and their stratum-by-stratum correspondence with the exceptional
//! projective space of the local model.
//!
//! An enriched spin curve supported on the blow-up at a proper node subset
//! `I` is named by a label: the subset, a direction vector of nonzero
//! scalars (normalized so the first free coordinate is 1), an element of
//! the abstract 2-torsion group of the normalization, and a sign vector
//! picking one limit square root among `2^(delta-|I|-1)`. The map `chi`
//! sends a label to a point of the exceptional space over the quadratic
//! extension, landing exactly in the stratum cut out by the hyperplanes
//! indexed by `I`.

use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

use crate::localalgebra::ProjPoint;
use crate::scalars::{canonical_sqrt, FqElem, Fq2, Fq2Elem};
use crate::{Error, Result};

/// A stable curve with two smooth components of genus at least 1 joined at
/// `delta` nodes. Trivial automorphism group is an assumed modeling
/// hypothesis, not checkable from the numerical data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoComponentCurve {
    pub g1: u32,
    pub g2: u32,
    pub delta: usize,
}

impl TwoComponentCurve {
    pub fn new(g1: u32, g2: u32, delta: usize) -> Result<Self> {
        if g1 < 1 || g2 < 1 {
            return Err(Error::Bounds("component genera must be >= 1".into()));
        }
        if delta < 1 {
            return Err(Error::Bounds("delta must be >= 1".into()));
        }
        Ok(TwoComponentCurve { g1, g2, delta })
    }

    pub fn genus(&self) -> u32 {
        self.g1 + self.g2 + self.delta as u32 - 1
    }

    /// Rank of the abstract 2-torsion group of the normalization.
    pub fn j2_rank(&self) -> u32 {
        2 * (self.g1 + self.g2)
    }

    pub fn j2_order(&self) -> u128 {
        1u128 << self.j2_rank()
    }
}

/// Torsor coordinates naming one enriched spin curve class supported on the
/// blow-up at the proper node subset `I`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EnrichedSpinLabel {
    /// Blown-up node indices, 0-based, `|I| < delta`.
    pub support: BTreeSet<usize>,
    /// Nonzero scalars `(alpha_{h+2}, ..., alpha_delta)` after the
    /// order-preserving reordering placing `I` first; the first free node
    /// carries the normalization `alpha_{h+1} = 1` and is not stored.
    pub direction: Vec<FqElem>,
    /// Element of `(Z/2)^(2(g1+g2))` as a bitmask.
    pub j2: u64,
    /// Element of `(Z/2)^(delta-|I|-1)` as a bitmask.
    pub signs: u64,
}

impl EnrichedSpinLabel {
    pub fn new(
        curve: &TwoComponentCurve,
        support: BTreeSet<usize>,
        direction: Vec<FqElem>,
        j2: u64,
        signs: u64,
    ) -> Result<Self> {
        if support.len() >= curve.delta || support.iter().any(|&i| i >= curve.delta) {
            return Err(Error::Bounds("support must be a proper subset of the nodes".into()));
        }
        let free_dim = curve.delta - support.len() - 1;
        if direction.len() != free_dim {
            return Err(Error::Bounds(format!(
                "direction must have {free_dim} entries, got {}",
                direction.len()
            )));
        }
        if let Some(k) = direction.iter().position(|a| a.is_zero()) {
            return Err(Error::ZeroDirectionEntry(k));
        }
        if free_dim < 64 && signs >= 1 << free_dim {
            return Err(Error::Bounds("sign vector out of range".into()));
        }
        Ok(EnrichedSpinLabel { support, direction, j2, signs })
    }
}

/// A point of one copy (indexed by the singular spin curve) of the
/// exceptional projective space over `F_{q^2}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StratumPoint {
    /// Which singular spin curve the copy belongs to, as a 2-torsion label.
    pub xi_index: u64,
    pub point: ProjPoint,
}

impl StratumPoint {
    /// Bitmask of the coordinate hyperplanes containing the point.
    pub fn incidence(&self) -> u64 {
        self.point.incidence()
    }
}

/// The correspondence sending a label to its limit point: zero on the
/// blown-up nodes, 1 on the first free node, and a chosen square root of
/// each direction entry on the rest.
pub fn chi_map(label: &EnrichedSpinLabel, curve: &TwoComponentCurve, q: u64) -> Result<StratumPoint> {
    let ext = Fq2::new(q)?;
    let free: Vec<usize> =
        (0..curve.delta).filter(|i| !label.support.contains(i)).collect();
    let mut coords = vec![ext.zero(); curve.delta];
    coords[free[0]] = ext.one();
    for (k, &node) in free.iter().enumerate().skip(1) {
        let alpha = label.direction[k - 1];
        if alpha.is_zero() {
            return Err(Error::ZeroDirectionEntry(k - 1));
        }
        let root = canonical_sqrt(alpha)?;
        let flip = label.signs >> (k - 1) & 1 == 1;
        coords[node] = if flip { root.neg() } else { root };
    }
    Ok(StratumPoint { xi_index: label.j2, point: ProjPoint::new(coords)? })
}

/// All labels of the stratum `I`, in canonical order.
pub fn stratum_labels(
    curve: &TwoComponentCurve,
    support: &BTreeSet<usize>,
    q: u64,
) -> Result<Vec<EnrichedSpinLabel>> {
    if support.len() >= curve.delta {
        return Err(Error::Bounds("support must be proper".into()));
    }
    let free_dim = curve.delta - support.len() - 1;
    if curve.j2_rank() > 40 || free_dim > 20 {
        return Err(Error::Bounds("stratum too large for exhaustive enumeration".into()));
    }
    let units: Vec<FqElem> = (1..q).map(|v| FqElem::new(v, q)).collect::<Result<_>>()?;
    let mut directions: Vec<Vec<FqElem>> = vec![vec![]];
    for _ in 0..free_dim {
        directions = directions
            .into_iter()
            .flat_map(|d| {
                units.iter().map(move |&u| {
                    let mut d2 = d.clone();
                    d2.push(u);
                    d2
                })
            })
            .collect();
    }
    let mut labels = Vec::new();
    for j2 in 0..(1u64 << curve.j2_rank()) {
        for signs in 0..(1u64 << free_dim) {
            for dir in &directions {
                labels.push(EnrichedSpinLabel::new(
                    curve,
                    support.clone(),
                    dir.clone(),
                    j2,
                    signs,
                )?);
            }
        }
    }
    Ok(labels)
}

/// Predicted label count of the stratum `I` over `F_q`:
/// `2^(2(g1+g2)) * 2^(delta-|I|-1) * (q-1)^(delta-|I|-1)`.
pub fn stratum_label_count(curve: &TwoComponentCurve, support_size: usize, q: u64) -> u128 {
    let free_dim = (curve.delta - support_size - 1) as u32;
    curve.j2_order() * (1u128 << free_dim) * (q as u128 - 1).pow(free_dim)
}

/// Per-stratum and total enriched-spin label counts over `F_q`.
pub fn enriched_count(curve: &TwoComponentCurve, q: u64) -> Vec<(Vec<usize>, u128)> {
    let mut out = Vec::new();
    for support in proper_subsets(curve.delta) {
        out.push((
            support.iter().copied().collect(),
            stratum_label_count(curve, support.len(), q),
        ));
    }
    out
}

/// Proper subsets of `{0..delta-1}` sorted by `(|I|, lexicographic)`.
pub fn proper_subsets(delta: usize) -> Vec<BTreeSet<usize>> {
    let mut subsets: Vec<BTreeSet<usize>> = (0u32..(1 << delta) - 1)
        .map(|mask| (0..delta).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    subsets
}

/// A candidate twister: a multidegree over the vertices and a gluing
/// direction over the edges.
#[derive(Clone, Debug)]
pub struct TwisterCandidate {
    pub multidegree: Vec<i64>,
    pub direction: Vec<FqElem>,
}

/// Check the twister characterization on a general dual graph: one
/// candidate per vertex, each with the forced multidegree (minus the number
/// of non-loop edges at its own vertex, plus the edge count towards every
/// other vertex), multidegrees summing to zero, and gluing directions whose
/// componentwise product is trivial modulo global scaling.
pub fn check_twister_tuple(
    graph: &crate::dualgraph::DualGraph,
    tuple: &[TwisterCandidate],
) -> Result<bool> {
    let n = graph.vertex_count();
    if tuple.len() != n {
        return Err(Error::TwisterArity { expected: n, got: tuple.len() });
    }
    let m = graph.edge_count();
    for cand in tuple {
        if cand.multidegree.len() != n || cand.direction.len() != m {
            return Err(Error::TwisterArity { expected: n, got: cand.multidegree.len() });
        }
    }
    // edge counts between vertex pairs, loops excluded
    let mut between = vec![vec![0i64; n]; n];
    for e in graph.edges() {
        if e[0] != e[1] {
            between[e[0]][e[1]] += 1;
            between[e[1]][e[0]] += 1;
        }
    }
    for (i, cand) in tuple.iter().enumerate() {
        let n_i: i64 = between[i].iter().sum();
        if n_i == 0 && n >= 2 {
            // connected with >= 2 components forces n_i >= 1, so a trivial
            // multidegree can never satisfy condition (i)
            return Ok(false);
        }
        for (j, &deg) in cand.multidegree.iter().enumerate() {
            let expected = if i == j { -n_i } else { between[i][j] };
            if deg != expected {
                return Ok(false);
            }
        }
    }
    // sum of multidegrees must vanish
    for j in 0..n {
        if tuple.iter().map(|c| c.multidegree[j]).sum::<i64>() != 0 {
            return Ok(false);
        }
    }
    // product of gluing directions trivial modulo scaling: constant vector
    if m > 0 {
        let mut product = vec![tuple[0].direction[0]; m];
        for (k, slot) in product.iter_mut().enumerate() {
            let mut acc = FqElem::new(1, tuple[0].direction[0].modulus())?;
            for cand in tuple {
                if cand.direction[k].is_zero() {
                    return Err(Error::ZeroDirectionEntry(k));
                }
                acc = acc.mul(&cand.direction[k]);
            }
            *slot = acc;
        }
        let first = product[0];
        if product.iter().any(|&x| x != first) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One row of the stratification report.
#[derive(Clone, Debug, Serialize)]
pub struct StratumRow {
    /// Blown-up node indices (0-based).
    pub support: Vec<usize>,
    /// `C` for the empty subset, otherwise `X_{i,...}` with 1-based nodes.
    pub support_name: String,
    pub torus_dim: usize,
    pub sign_exponent: usize,
    pub j2_order: u128,
    /// Hyperplanes containing the matching exceptional-space stratum.
    pub contained_in: Vec<usize>,
    /// Hyperplanes the stratum avoids.
    pub avoids: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StratificationReport {
    pub g1: u32,
    pub g2: u32,
    pub delta: usize,
    pub genus: u32,
    pub singular_spin_count: u128,
    /// Trivial automorphism group of the curve is assumed, not derived.
    pub assumes_trivial_automorphisms: bool,
    pub rows: Vec<StratumRow>,
}

/// The partition of enriched spin curves by support, one row per proper
/// node subset, with the matching stratum of the exceptional space.
pub fn stratification_report(curve: &TwoComponentCurve) -> StratificationReport {
    let rows = proper_subsets(curve.delta)
        .into_iter()
        .map(|support| {
            let dim = curve.delta - support.len() - 1;
            let name = if support.is_empty() {
                "C".to_string()
            } else {
                format!(
                    "X_{{{}}}",
                    support.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
                )
            };
            StratumRow {
                support: support.iter().copied().collect(),
                support_name: name,
                torus_dim: dim,
                sign_exponent: dim,
                j2_order: curve.j2_order(),
                contained_in: support.iter().map(|i| i + 1).collect(),
                avoids: (0..curve.delta).filter(|i| !support.contains(i)).map(|i| i + 1).collect(),
            }
        })
        .collect();
    StratificationReport {
        g1: curve.g1,
        g2: curve.g2,
        delta: curve.delta,
        genus: curve.genus(),
        singular_spin_count: curve.j2_order(),
        assumes_trivial_automorphisms: true,
        rows,
    }
}

/// Outcome of the exhaustive torsor verification for one stratum.
#[derive(Clone, Debug, Serialize)]
pub struct TorsorReport {
    pub support: Vec<usize>,
    pub q: u64,
    pub label_count: u128,
    pub injective: bool,
    pub image_matches_prediction: bool,
    pub per_xi_cardinality: u128,
    pub expected_per_xi_cardinality: u128,
    pub action_free_transitive: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_witness: Option<String>,
}

/// Exhaustively verify the stratum-`I` correspondence over `F_q`:
/// injectivity of `chi`, exact image, per-fiber cardinality, and a free and
/// transitive label-group action transported to the image.
pub fn verify_torsor_bijection(
    curve: &TwoComponentCurve,
    support: &BTreeSet<usize>,
    q: u64,
) -> Result<TorsorReport> {
    let ext = Fq2::new(q)?;
    let labels = stratum_labels(curve, support, q)?;
    let label_count = labels.len() as u128;
    let free_dim = curve.delta - support.len() - 1;

    let mut image = BTreeSet::new();
    let mut per_xi: BTreeMap<u64, BTreeSet<ProjPoint>> = BTreeMap::new();
    for label in &labels {
        let pt = chi_map(label, curve, q)?;
        per_xi.entry(pt.xi_index).or_default().insert(pt.point.clone());
        image.insert(pt);
    }
    let injective = image.len() as u128 == label_count;

    // predicted image: zero exactly on I, first free coordinate 1, the
    // rest nonzero with square in the base field
    let free: Vec<usize> = (0..curve.delta).filter(|i| !support.contains(i)).collect();
    let slot_values: Vec<Fq2Elem> = ext
        .elements()
        .filter(|x| {
            if x.is_zero() {
                return false;
            }
            let sq = x.square();
            sq.is_in_base() && !sq.base_part().is_zero()
        })
        .collect();
    let mut predicted: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut stack: Vec<Vec<Fq2Elem>> = vec![vec![]];
    for _ in 0..free_dim {
        stack = stack
            .into_iter()
            .flat_map(|partial| {
                slot_values.iter().map(move |&v| {
                    let mut p = partial.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    for tail in stack {
        let mut coords = vec![ext.zero(); curve.delta];
        coords[free[0]] = ext.one();
        for (k, &node) in free.iter().enumerate().skip(1) {
            coords[node] = tail[k - 1];
        }
        predicted.insert(ProjPoint::new(coords)?);
    }
    let image_points: BTreeSet<ProjPoint> =
        per_xi.values().next().cloned().unwrap_or_default();
    let image_matches_prediction = per_xi.len() as u128 == curve.j2_order()
        && per_xi.values().all(|pts| *pts == predicted)
        && image_points == predicted;

    let expected_per_xi_cardinality =
        (1u128 << free_dim) * (q as u128 - 1).pow(free_dim as u32);
    let per_xi_cardinality = per_xi.values().next().map(|s| s.len() as u128).unwrap_or(0);

    // label-group action: xor on j2 and signs, multiplication on direction.
    // The group has the same order as the label set, so free + transitive
    // is equivalent to the orbit of any base label being all labels with no
    // repeats; transport to the image is well-defined by injectivity.
    let action_free_transitive = if labels.is_empty() {
        false
    } else {
        let base = &labels[0];
        let mut orbit = BTreeSet::new();
        for g in &labels {
            // g encodes the group element acting on the base label
            let moved = EnrichedSpinLabel {
                support: base.support.clone(),
                direction: base
                    .direction
                    .iter()
                    .zip(&g.direction)
                    .map(|(a, b)| a.mul(b))
                    .collect(),
                j2: base.j2 ^ g.j2,
                signs: base.signs ^ g.signs,
            };
            orbit.insert(moved);
        }
        let label_set: BTreeSet<&EnrichedSpinLabel> = labels.iter().collect();
        orbit.len() as u128 == label_count
            && orbit.iter().all(|l| label_set.contains(l))
    };

    let passed = injective
        && image_matches_prediction
        && per_xi_cardinality == expected_per_xi_cardinality
        && action_free_transitive;
    let failure_witness = if passed {
        None
    } else {
        Some(format!(
            "injective={injective} image_match={image_matches_prediction} \
             per_xi={per_xi_cardinality} expected={expected_per_xi_cardinality} \
             action={action_free_transitive}"
        ))
    };
    Ok(TorsorReport {
        support: support.iter().copied().collect(),
        q,
        label_count,
        injective,
        image_matches_prediction,
        per_xi_cardinality,
        expected_per_xi_cardinality,
        action_free_transitive,
        passed,
        failure_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::DualGraph;

    fn set(ids: &[usize]) -> BTreeSet<usize> {
        ids.iter().copied().collect()
    }

    fn fq(v: u64, q: u64) -> FqElem {
        FqElem::new(v, q).unwrap()
    }

    #[test]
    fn curve_construction() {
        let c = TwoComponentCurve::new(1, 1, 3).unwrap();
        assert_eq!(c.genus(), 4);
        assert_eq!(c.j2_order(), 16);
        assert!(TwoComponentCurve::new(0, 1, 3).is_err());
        assert!(TwoComponentCurve::new(1, 1, 0).is_err());
    }

    #[test]
    fn enriched_count_examples() {
        let c = TwoComponentCurve::new(1, 1, 3).unwrap();
        assert_eq!(stratum_label_count(&c, 0, 5), 1024); // 16 * 4 * 16
        assert_eq!(stratum_label_count(&c, 2, 5), 16);
        let d1 = TwoComponentCurve::new(1, 1, 1).unwrap();
        assert_eq!(stratum_label_count(&d1, 0, 5), 16);

        // total for the three-node banana curve over F_5
        let total: u128 = enriched_count(&c, 5).iter().map(|(_, n)| n).sum();
        assert_eq!(total, 1024 + 3 * 128 + 3 * 16);
        assert_eq!(total, 1456);
    }

    #[test]
    fn counts_match_exhaustive_enumeration() {
        let c = TwoComponentCurve::new(1, 1, 3).unwrap();
        for support in proper_subsets(3) {
            let labels = stratum_labels(&c, &support, 5).unwrap();
            assert_eq!(labels.len() as u128, stratum_label_count(&c, support.len(), 5));
        }
    }

    #[test]
    fn chi_map_examples() {
        let q = 5;
        // delta=2, I=empty, alpha_2=1: sqrt(1) = +-1
        let c = TwoComponentCurve::new(1, 1, 2).unwrap();
        let plus =
            EnrichedSpinLabel::new(&c, set(&[]), vec![fq(1, q)], 0, 0).unwrap();
        let minus =
            EnrichedSpinLabel::new(&c, set(&[]), vec![fq(1, q)], 0, 1).unwrap();
        let p = chi_map(&plus, &c, q).unwrap();
        let m = chi_map(&minus, &c, q).unwrap();
        let parts =
            |s: &StratumPoint| s.point.coords().iter().map(|x| x.parts()).collect::<Vec<_>>();
        assert_eq!(parts(&p), vec![(1, 0), (1, 0)]);
        assert_eq!(parts(&m), vec![(1, 0), (4, 0)]);

        // delta=3, I={1,2} (0-based {0,1}): single point [0:0:1]
        let c3 = TwoComponentCurve::new(1, 1, 3).unwrap();
        let zerodim = EnrichedSpinLabel::new(&c3, set(&[0, 1]), vec![], 7, 0).unwrap();
        let pt = chi_map(&zerodim, &c3, q).unwrap();
        assert_eq!(parts(&pt), vec![(0, 0), (0, 0), (1, 0)]);
        assert_eq!(pt.xi_index, 7);
        assert_eq!(pt.incidence(), 0b011);

        // delta=3, I={1} (0-based {0}), alpha_3=4, sign flip: [0:1:-2]=[0:1:3]
        let label = EnrichedSpinLabel::new(&c3, set(&[0]), vec![fq(4, q)], 0, 1).unwrap();
        let pt = chi_map(&label, &c3, q).unwrap();
        assert_eq!(parts(&pt), vec![(0, 0), (1, 0), (3, 0)]);
    }

    #[test]
    fn chi_map_agrees_with_line_limit() {
        // the two sign labels for delta=2, alpha=1 hit exactly the points
        // of line_limit((1,1))
        let q = 5;
        let c = TwoComponentCurve::new(1, 1, 2).unwrap();
        let oracle = crate::localalgebra::line_limit(&[fq(1, q), fq(1, q)]).unwrap();
        let mut images = Vec::new();
        for signs in 0..2 {
            let label = EnrichedSpinLabel::new(&c, set(&[]), vec![fq(1, q)], 0, signs).unwrap();
            images.push(chi_map(&label, &c, q).unwrap().point);
        }
        images.sort();
        assert_eq!(images, oracle);
    }

    #[test]
    fn label_validation() {
        let c = TwoComponentCurve::new(1, 1, 2).unwrap();
        assert!(EnrichedSpinLabel::new(&c, set(&[0, 1]), vec![], 0, 0).is_err());
        assert!(matches!(
            EnrichedSpinLabel::new(&c, set(&[]), vec![fq(0, 5)], 0, 0),
            Err(Error::ZeroDirectionEntry(0))
        ));
    }

    #[test]
    fn torsor_bijection_small() {
        let q = 5;
        let c = TwoComponentCurve::new(1, 1, 2).unwrap();
        let report = verify_torsor_bijection(&c, &set(&[]), q).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.label_count, 128); // 16 * 2 * 4
        assert_eq!(report.per_xi_cardinality, 8);

        let c3 = TwoComponentCurve::new(1, 1, 3).unwrap();
        let report = verify_torsor_bijection(&c3, &set(&[0, 1]), q).unwrap();
        assert!(report.passed);
        assert_eq!(report.label_count, 16); // one point per xi
        assert_eq!(report.per_xi_cardinality, 1);

        let report = verify_torsor_bijection(&c3, &set(&[]), q).unwrap();
        assert!(report.passed);
        assert_eq!(report.per_xi_cardinality, 64); // 2^2 * 4^2
    }

    #[test]
    fn distinct_strata_have_disjoint_images() {
        let q = 5;
        let c = TwoComponentCurve::new(1, 1, 3).unwrap();
        let mut seen: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for support in proper_subsets(3) {
            let mask = support.iter().fold(0u64, |acc, &i| acc | 1 << i);
            let label = stratum_labels(&c, &support, q).unwrap().swap_remove(0);
            let incidence = chi_map(&label, &c, q).unwrap().incidence();
            assert_eq!(incidence, mask);
            assert!(seen.insert(incidence, label.support.iter().copied().collect()).is_none());
        }
    }

    #[test]
    fn direction_scaling_transports_coordinatewise() {
        // scaling alpha by lambda multiplies the image coordinate by a
        // square root of lambda, up to the sign carried by the sign factor
        let q = 13;
        let c = TwoComponentCurve::new(1, 1, 2).unwrap();
        for alpha in 1..q {
            for lambda in 1..q {
                let l0 =
                    EnrichedSpinLabel::new(&c, set(&[]), vec![fq(alpha, q)], 0, 0).unwrap();
                let l1 = EnrichedSpinLabel::new(
                    &c,
                    set(&[]),
                    vec![fq(alpha, q).mul(&fq(lambda, q))],
                    0,
                    0,
                )
                .unwrap();
                let x0 = chi_map(&l0, &c, q).unwrap().point.coords()[1];
                let x1 = chi_map(&l1, &c, q).unwrap().point.coords()[1];
                let r = canonical_sqrt(fq(lambda, q)).unwrap();
                assert!(x1 == x0.mul(&r) || x1 == x0.mul(&r).neg());
            }
        }
    }

    #[test]
    fn twister_tuple_checks() {
        let q = 5;
        let g = DualGraph::two_component(1, 1, 3).unwrap();
        let v = vec![fq(2, q), fq(3, q), fq(1, q)];
        let v_inv: Vec<FqElem> = v.iter().map(|x| x.inv()).collect();
        let good = vec![
            TwisterCandidate { multidegree: vec![-3, 3], direction: v.clone() },
            TwisterCandidate { multidegree: vec![3, -3], direction: v_inv },
        ];
        assert!(check_twister_tuple(&g, &good).unwrap());

        let bad_degree = vec![
            TwisterCandidate { multidegree: vec![-2, 3], direction: v.clone() },
            TwisterCandidate { multidegree: vec![3, -3], direction: v.clone() },
        ];
        assert!(!check_twister_tuple(&g, &bad_degree).unwrap());

        // trivial twisters are never enriched data on a connected curve
        let trivial = vec![
            TwisterCandidate { multidegree: vec![0, 0], direction: v.clone() },
            TwisterCandidate { multidegree: vec![0, 0], direction: v.clone() },
        ];
        assert!(!check_twister_tuple(&g, &trivial).unwrap());

        // non-constant product of directions
        let skew = vec![
            TwisterCandidate { multidegree: vec![-3, 3], direction: v.clone() },
            TwisterCandidate {
                multidegree: vec![3, -3],
                direction: vec![fq(1, q), fq(1, q), fq(1, q)],
            },
        ];
        assert!(!check_twister_tuple(&g, &skew).unwrap());

        assert!(matches!(
            check_twister_tuple(&g, &good[..1]),
            Err(Error::TwisterArity { .. })
        ));
    }

    #[test]
    fn stratification_report_shapes() {
        let c = TwoComponentCurve::new(1, 1, 3).unwrap();
        let report = stratification_report(&c);
        assert_eq!(report.rows.len(), 7);
        let dims: Vec<usize> = report.rows.iter().map(|r| r.torus_dim).collect();
        assert_eq!(dims, vec![2, 1, 1, 1, 0, 0, 0]);
        assert_eq!(report.rows[0].support_name, "C");
        assert_eq!(report.singular_spin_count, 16);

        let d1 = TwoComponentCurve::new(1, 1, 1).unwrap();
        assert_eq!(stratification_report(&d1).rows.len(), 1);
        let d2 = TwoComponentCurve::new(1, 1, 2).unwrap();
        let dims: Vec<usize> =
            stratification_report(&d2).rows.iter().map(|r| r.torus_dim).collect();
        assert_eq!(dims, vec![1, 0, 0]);
    }

    #[test]
    fn hyperplane_stratification_identity() {
        // sum over proper I of (q-1)^(delta-|I|-1) counts the points of
        // projective (delta-1)-space over F_q
        for q in [5u128, 13] {
            for delta in 1..=6usize {
                let total: u128 = proper_subsets(delta)
                    .iter()
                    .map(|s| (q - 1).pow((delta - s.len() - 1) as u32))
                    .sum();
                assert_eq!(total, (q.pow(delta as u32) - 1) / (q - 1));
            }
        }
    }
}
