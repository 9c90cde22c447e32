//! The exact local model of the spin moduli space at a singular point.
//!
//! At a spin curve supported on the blow-up at all `delta >= 2` nodes, the
//! local model `D_X` is the quotient of affine `delta`-space by the sign
//! involution `t -> -t`. In the invariants `w_ij = t_i t_j` it is cut out
//! by the quadrics `w_ii w_jj - w_ij^2` and the cubics
//! `w_ii w_jj w_kk - w_ij w_jk w_ik`. Blowing up the ideal
//! `(w_11, ..., w_1delta)` resolves the singularity: each of the `delta`
//! charts is affine space in the slope coordinates, which is certified here
//! by exact substitution. The exceptional divisor is a projective space
//! carrying the coordinate hyperplanes that cut out the strata of line
//! limits.

pub mod poly;

use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

use crate::scalars::{rat, sqrt_in_ext, FqElem, Fq2Elem, Rational};
use crate::{Error, Result};
use poly::{Monomial, Poly, Var};

/// The ideal of `D_X` in the `w`-variables.
#[derive(Clone, Debug)]
pub struct IdealPresentation {
    pub delta: usize,
    pub generators: Vec<Poly>,
}

/// Generators of the local model ideal: `C(delta,2)` quadrics followed by
/// `C(delta,3)` cubics, in lexicographic index order.
pub fn dx_ideal(delta: usize) -> Result<IdealPresentation> {
    if delta < 2 {
        return Err(Error::SmoothLocalModel);
    }
    let mut generators = Vec::new();
    for i in 1..=delta {
        for j in (i + 1)..=delta {
            // w_ii w_jj - w_ij^2
            generators.push(
                Poly::monomial(&[Var::w(i, i), Var::w(j, j)])
                    .sub(&Poly::monomial(&[Var::w(i, j), Var::w(i, j)])),
            );
        }
    }
    for i in 1..=delta {
        for j in (i + 1)..=delta {
            for k in (j + 1)..=delta {
                // w_ii w_jj w_kk - w_ij w_jk w_ik
                generators.push(
                    Poly::monomial(&[Var::w(i, i), Var::w(j, j), Var::w(k, k)])
                        .sub(&Poly::monomial(&[Var::w(i, j), Var::w(j, k), Var::w(i, k)])),
                );
            }
        }
    }
    Ok(IdealPresentation { delta, generators })
}

/// One affine chart of the blow-up at `(w_11, ..., w_1delta)`.
///
/// The chart `U_s` has free coordinates `{a_is : i != s}` and `w_ss`; the
/// substitution expresses every `w_ij` in them and sends each ideal
/// generator to the exact zero polynomial, which is the smoothness
/// certificate. The exceptional locus is `{w_ss = 0}`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub s: usize,
    pub delta: usize,
    substitution: BTreeMap<(usize, usize), Poly>,
}

impl Chart {
    /// The image of `w_ij` in chart coordinates.
    pub fn image(&self, i: usize, j: usize) -> &Poly {
        let key = if i <= j { (i, j) } else { (j, i) };
        &self.substitution[&key]
    }

    pub fn substitution(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.substitution.iter()
    }

    /// Apply the chart substitution to a polynomial in the `w`-variables.
    pub fn substitute(&self, p: &Poly) -> Poly {
        p.substitute(&|v| match v {
            Var::W(i, j) => Some(self.image(i, j).clone()),
            _ => None,
        })
    }
}

/// The `delta` blow-up charts; every ideal generator must die under every
/// chart substitution.
pub fn blowup_charts(delta: usize) -> Result<Vec<Chart>> {
    let ideal = dx_ideal(delta)?;
    let mut charts = Vec::with_capacity(delta);
    for s in 1..=delta {
        let mut substitution = BTreeMap::new();
        for i in 1..=delta {
            for j in i..=delta {
                let image = if i == s && j == s {
                    Poly::var(Var::w(s, s))
                } else if i == s {
                    // w_sj = a_js w_ss, s < j
                    Poly::monomial(&[Var::Alpha(j, s), Var::w(s, s)])
                } else if j == s {
                    // w_is = a_is w_ss, i < s
                    Poly::monomial(&[Var::Alpha(i, s), Var::w(s, s)])
                } else {
                    Poly::monomial(&[Var::Alpha(i, s), Var::Alpha(j, s), Var::w(s, s)])
                };
                substitution.insert((i, j), image);
            }
        }
        let chart = Chart { s, delta, substitution };
        for (idx, g) in ideal.generators.iter().enumerate() {
            let residual = chart.substitute(g);
            if !residual.is_zero() {
                return Err(Error::Internal(format!(
                    "chart U_{s} leaves generator {idx} nonzero: {residual}"
                )));
            }
        }
        charts.push(chart);
    }
    Ok(charts)
}

/// Rank of the Jacobian matrix of the generators at the origin: the linear
/// parts, row-reduced over the rationals. Zero rank together with positive
/// codimension certifies a singular point.
pub fn jacobian_rank_at_origin(ideal: &IdealPresentation) -> Result<usize> {
    let mut wvars = Vec::new();
    for i in 1..=ideal.delta {
        for j in i..=ideal.delta {
            wvars.push(Var::w(i, j));
        }
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in &ideal.generators {
        if !g.constant_term().is_zero() {
            return Err(Error::Internal("generator has a constant term".into()));
        }
        rows.push(wvars.iter().map(|&v| g.linear_coefficient(v)).collect());
    }
    Ok(rank(rows))
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let p = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone() / p.clone();
                for k in c..cols {
                    let delta = factor.clone() * rows[r][k].clone();
                    rows[i][k] = rows[i][k].clone() - delta;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Report of the invariant-ring presentation check for the quotient by the
/// sign involution.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub delta: usize,
    pub degree_bound: u32,
    /// Every ideal generator vanishes under `w_ij -> t_i t_j`.
    pub generators_vanish: bool,
    /// Number of even-degree `t`-monomials up to the bound, all of which
    /// were expressed as products of degree-2 monomials.
    pub even_monomials_checked: usize,
    pub even_monomials_expressed: usize,
    /// Every odd-degree monomial changes sign under `t -> -t`.
    pub odd_monomials_noninvariant: bool,
    pub passed: bool,
}

fn substitute_w_to_t(p: &Poly) -> Poly {
    p.substitute(&|v| match v {
        Var::W(i, j) => Some(Poly::monomial(&[Var::T(i), Var::T(j)])),
        _ => None,
    })
}

/// All exponent vectors of total degree `d` in `delta` variables.
fn exponent_vectors(delta: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(slots: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(slots - 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(delta, d, &mut Vec::new(), &mut out);
    out
}

/// Greedy pairing: factor an even-degree exponent vector into degree-2
/// monomials `t_i t_j`. Always succeeds for even total degree.
fn pair_exponents(mut e: Vec<u32>) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    loop {
        let total: u32 = e.iter().sum();
        if total == 0 {
            return pairs;
        }
        let i = (0..e.len()).max_by_key(|&i| e[i]).unwrap();
        e[i] -= 1;
        let j = (0..e.len()).max_by_key(|&j| e[j]).unwrap();
        e[j] -= 1;
        pairs.push((i.min(j) + 1, i.max(j) + 1));
    }
}

/// Verify that the `w`-presentation really is the ring of sign-invariants
/// up to the degree bound.
pub fn invariant_presentation_check(delta: usize, degree_bound: u32) -> Result<InvariantReport> {
    let ideal = dx_ideal(delta)?;
    let generators_vanish = ideal.generators.iter().all(|g| substitute_w_to_t(g).is_zero());

    let mut checked = 0;
    let mut expressed = 0;
    for d in (2..=degree_bound).step_by(2) {
        for e in exponent_vectors(delta, d) {
            checked += 1;
            let pairs = pair_exponents(e.clone());
            // reassemble and compare symbolically
            let mut product = Poly::one();
            for (i, j) in pairs {
                product = product.mul(&Poly::monomial(&[Var::T(i), Var::T(j)]));
            }
            let target = Poly::term(
                rat(1),
                Monomial::from_pairs(
                    &e.iter().enumerate().map(|(i, &k)| (Var::T(i + 1), k)).collect::<Vec<_>>(),
                ),
            );
            if product == target {
                expressed += 1;
            }
        }
    }

    // beta: t -> -t negates odd-degree monomials
    let mut odd_ok = true;
    for d in (1..=degree_bound).step_by(2) {
        for e in exponent_vectors(delta, d) {
            let m = Poly::term(
                rat(1),
                Monomial::from_pairs(
                    &e.iter().enumerate().map(|(i, &k)| (Var::T(i + 1), k)).collect::<Vec<_>>(),
                ),
            );
            let image = m.substitute(&|v| match v {
                Var::T(i) => Some(Poly::var(Var::T(i)).neg()),
                _ => None,
            });
            if image != m.neg() {
                odd_ok = false;
            }
        }
    }

    let passed = generators_vanish && checked == expressed && odd_ok;
    Ok(InvariantReport {
        delta,
        degree_bound,
        generators_vanish,
        even_monomials_checked: checked,
        even_monomials_expressed: expressed,
        odd_monomials_noninvariant: odd_ok,
        passed,
    })
}

/// The exceptional projective space of the blow-up, with its coordinate
/// hyperplanes `H_i = {x_i = 0}`.
#[derive(Clone, Copy, Debug)]
pub struct ExceptionalSpace {
    pub delta: usize,
}

impl ExceptionalSpace {
    pub fn hyperplane_count(&self) -> usize {
        self.delta
    }
}

/// A point of the exceptional projective space over `F_{q^2}`, normalized
/// so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ProjPoint {
    coords: Vec<Fq2Elem>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Fq2Elem>) -> Result<Self> {
        let first = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::DegenerateDirection)?
            .clone();
        let inv = first.inv();
        Ok(ProjPoint { coords: coords.iter().map(|c| c.mul(&inv)).collect() })
    }

    pub fn coords(&self) -> &[Fq2Elem] {
        &self.coords
    }

    /// Bitmask of the coordinate hyperplanes containing the point
    /// (bit `i` set when `x_{i+1} = 0`).
    pub fn incidence(&self) -> u64 {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

/// Limit points on the exceptional space of the strict transforms of the
/// lines over a direction `d` in the base.
///
/// With `I = {i : d_i = 0}`, the limits are the points `x_i = 0` on `I` and
/// `x_i = +-sqrt(d_i)` off `I`, modulo global sign: exactly
/// `2^(delta - |I| - 1)` distinct projective points, lying on `H_i` exactly
/// when `d_i = 0`.
pub fn line_limit(d: &[FqElem]) -> Result<Vec<ProjPoint>> {
    let nonzero: Vec<usize> = (0..d.len()).filter(|&i| !d[i].is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::DegenerateDirection);
    }
    let roots: BTreeMap<usize, (Fq2Elem, Fq2Elem)> = nonzero
        .iter()
        .map(|&i| Ok((i, sqrt_in_ext(d[i])?)))
        .collect::<Result<_>>()?;
    let zero = crate::scalars::Fq2::new(d[nonzero[0]].modulus())?.zero();
    let free = &nonzero[1..];
    let mut points = BTreeSet::new();
    for mask in 0u64..(1 << free.len()) {
        let mut coords = vec![zero; d.len()];
        // global sign quotient: the first nonzero coordinate takes the
        // canonical root, the rest carry the sign choices
        coords[nonzero[0]] = roots[&nonzero[0]].0;
        for (bit, &i) in free.iter().enumerate() {
            let (plus, minus) = roots[&i];
            coords[i] = if mask >> bit & 1 == 0 { plus } else { minus };
        }
        points.insert(ProjPoint::new(coords)?);
    }
    Ok(points.into_iter().collect())
}

/// Rational square root, when it exists.
fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (num, den) = (x.numer(), x.denom());
    let rn = num.sqrt();
    let rd = den.sqrt();
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Line limits over the rationals; every nonzero entry must be a perfect
/// square, otherwise the caller is pointed at the quadratic extension.
pub fn line_limit_rational(d: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let nonzero: Vec<usize> = (0..d.len()).filter(|&i| !d[i].is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::DegenerateDirection);
    }
    let roots: BTreeMap<usize, Rational> = nonzero
        .iter()
        .map(|&i| rational_sqrt(&d[i]).map(|r| (i, r)).ok_or(Error::NoRationalRoot))
        .collect::<Result<_>>()?;
    let free = &nonzero[1..];
    let mut points = BTreeSet::new();
    for mask in 0u64..(1 << free.len()) {
        let mut coords = vec![rat(0); d.len()];
        coords[nonzero[0]] = roots[&nonzero[0]].clone();
        for (bit, &i) in free.iter().enumerate() {
            let r = roots[&i].clone();
            coords[i] = if mask >> bit & 1 == 0 { r } else { -r };
        }
        // normalize: first nonzero coordinate 1
        let scale = coords[nonzero[0]].clone();
        let normalized: Vec<Rational> = coords.into_iter().map(|c| c / scale.clone()).collect();
        points.insert(normalized);
    }
    Ok(points.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fq2;

    #[test]
    fn dx_ideal_counts() {
        let i2 = dx_ideal(2).unwrap();
        assert_eq!(i2.generators.len(), 1);
        assert_eq!(i2.generators[0].to_string(), "w11*w22 - w12^2");

        let i3 = dx_ideal(3).unwrap();
        assert_eq!(i3.generators.len(), 4); // 3 quadrics + 1 cubic

        let i4 = dx_ideal(4).unwrap();
        assert_eq!(i4.generators.len(), 10); // C(4,2) + C(4,3)

        assert!(matches!(dx_ideal(1), Err(Error::SmoothLocalModel)));
    }

    #[test]
    fn charts_kill_every_generator() {
        for delta in 2..=6 {
            let charts = blowup_charts(delta).unwrap();
            assert_eq!(charts.len(), delta);
            // blowup_charts already certifies the residuals; spot-check the
            // documented delta=2, s=1 substitution
            if delta == 2 {
                let c = &charts[0];
                assert_eq!(c.image(1, 2).to_string(), "w11*a21");
                assert_eq!(c.image(2, 2).to_string(), "w11*a21^2");
                assert_eq!(c.image(1, 1).to_string(), "w11");
            }
        }
    }

    #[test]
    fn chart_center_coordinate_fixed() {
        for delta in 2..=4 {
            for chart in blowup_charts(delta).unwrap() {
                assert_eq!(
                    chart.image(chart.s, chart.s),
                    &Poly::var(Var::w(chart.s, chart.s))
                );
            }
        }
    }

    #[test]
    fn quotient_consistency() {
        // substituting a_is -> t_i and w_ss -> t_s^2 into each chart image
        // of w_ij must give t_i t_j t_s^(alpha-degree), i.e. the relation
        // a_is = t_i / t_s after clearing denominators.
        for delta in 2..=5 {
            for chart in blowup_charts(delta).unwrap() {
                let s = chart.s;
                for (&(i, j), image) in chart.substitution() {
                    let alpha_degree: u32 = image
                        .terms()
                        .map(|(m, _)| {
                            m.vars()
                                .filter(|(v, _)| matches!(v, Var::Alpha(_, _)))
                                .map(|(_, e)| e)
                                .sum()
                        })
                        .max()
                        .unwrap();
                    let cleared = image.substitute(&|v| match v {
                        Var::Alpha(l, _) => Some(Poly::var(Var::T(l))),
                        Var::W(a, b) if (a, b) == (s, s) => {
                            Some(Poly::monomial(&[Var::T(s), Var::T(s)]))
                        }
                        _ => None,
                    });
                    let mut expected = Poly::monomial(&[Var::T(i), Var::T(j)]);
                    for _ in 0..alpha_degree {
                        expected = expected.mul(&Poly::var(Var::T(s)));
                    }
                    assert_eq!(cleared, expected, "w{i}{j} in chart U_{s}");
                }
            }
        }
    }

    #[test]
    fn jacobian_vanishes_at_origin() {
        for delta in 2..=6 {
            assert_eq!(jacobian_rank_at_origin(&dx_ideal(delta).unwrap()).unwrap(), 0);
        }
        // sanity of the rank computation itself: a linear ideal has rank 1
        let linear = IdealPresentation { delta: 2, generators: vec![Poly::var(Var::w(1, 1))] };
        assert_eq!(jacobian_rank_at_origin(&linear).unwrap(), 1);
    }

    #[test]
    fn invariant_check_small_cases() {
        for delta in 2..=4 {
            let report = invariant_presentation_check(delta, 6).unwrap();
            assert!(report.passed, "{report:?}");
            assert_eq!(report.even_monomials_checked, report.even_monomials_expressed);
        }
    }

    #[test]
    fn pairing_factors_even_monomials() {
        // t1^3 t2 -> two degree-2 factors
        let pairs = pair_exponents(vec![3, 1]);
        assert_eq!(pairs.len(), 2);
        let pairs = pair_exponents(vec![1, 1]);
        assert_eq!(pairs, vec![(1, 2)]);
    }

    #[test]
    fn line_limit_counts_and_incidence() {
        let q = 5;
        let d: Vec<FqElem> = [1u64, 4, 4].iter().map(|&v| FqElem::new(v, q).unwrap()).collect();
        let pts = line_limit(&d).unwrap();
        // 2^(3-0-1) = 4 points [1:+-2:+-2]
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert_eq!(p.incidence(), 0);
            assert_eq!(p.coords()[0].parts(), (1, 0));
        }

        let with_zero: Vec<FqElem> =
            [0u64, 0, 1].iter().map(|&v| FqElem::new(v, q).unwrap()).collect();
        let pts = line_limit(&with_zero).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].incidence(), 0b011);

        let all_zero: Vec<FqElem> =
            [0u64, 0].iter().map(|&v| FqElem::new(v, q).unwrap()).collect();
        assert!(matches!(line_limit(&all_zero), Err(Error::DegenerateDirection)));
    }

    #[test]
    fn line_limit_exhaustive_sizes() {
        // point count 2^(delta - |I| - 1) whenever roots come in pairs
        let q = 13;
        for delta in 2..=4usize {
            for zeros in 0..delta {
                let d: Vec<FqElem> = (0..delta)
                    .map(|i| FqElem::new(if i < zeros { 0 } else { (i as u64 % 12) + 1 }, q).unwrap())
                    .collect();
                let pts = line_limit(&d).unwrap();
                assert_eq!(pts.len(), 1 << (delta - zeros - 1));
                for p in &pts {
                    assert_eq!(p.incidence(), (1u64 << zeros) - 1);
                }
            }
        }
    }

    #[test]
    fn line_limit_scaling_invariance() {
        // scaling d by a square of the field leaves the point set unchanged
        let q = 5;
        let fq = |v: u64| FqElem::new(v, q).unwrap();
        let d = vec![fq(1), fq(2), fq(3)];
        let scaled: Vec<FqElem> = d.iter().map(|x| x.mul(&fq(4))).collect(); // 4 = 2^2
        assert_eq!(line_limit(&d).unwrap(), line_limit(&scaled).unwrap());
    }

    #[test]
    fn rational_line_limits() {
        let pts = line_limit_rational(&[rat(1), rat(1)]).unwrap();
        assert_eq!(pts, vec![vec![rat(1), -rat(1)], vec![rat(1), rat(1)]]);
        assert!(matches!(
            line_limit_rational(&[rat(1), rat(2)]),
            Err(Error::NoRationalRoot)
        ));
        let pts = line_limit_rational(&[rat(0), rat(4)]).unwrap();
        assert_eq!(pts, vec![vec![rat(0), rat(1)]]);
    }

    #[test]
    fn proj_point_normalization() {
        let ext = Fq2::new(5).unwrap();
        let p = ProjPoint::new(vec![ext.from_parts(2, 0), ext.from_parts(3, 0)]).unwrap();
        assert_eq!(p.coords()[0], ext.one());
        assert_eq!(p.coords()[1], ext.from_parts(4, 0)); // 3/2 = 3*3 = 4 mod 5
    }
}
