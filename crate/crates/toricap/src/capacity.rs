//! The lattice capacity bounds `l_k` and `u_k` and their relatives.
//!
//! For a strongly convex rational moment domain the bounds reduce to an
//! unbounded covering knapsack over the positive rays of the smooth
//! refinement of the normal fan: ray `rho` is an item with exact rational
//! cost `||v_rho||` (the support value) and integer weight
//! `1 + v_rho,1 + v_rho,2` (the anticanonical degree of its cocharacter
//! class), and `l_k` is the cheapest multiset of items of total weight at
//! least `k + 1`.
//!
//! `u_k` minimizes over the same multisets minus the pure fiber columns:
//! solutions supported on the ray `e1` alone or `e2` alone are excluded,
//! while the single primitive fiber pair (admissible exactly when
//! `k <= 1`) is added back explicitly. The DP tracks a four-state support
//! class (empty / pure e1 / pure e2 / mixed) to enforce the exclusion.
//!
//! Witnesses: among minimal-cost solutions the DP prefers smaller total
//! weight, then expands deterministic backpointers (the first minimizing
//! ray in counterclockwise order at each step). The numeric value is the
//! contract; the witness is a valid certificate, deterministic but not
//! otherwise canonical.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{normal_fan, omega_divisor, DivisorOnFan, Fan2D};
use crate::geom::{LatticeVector, RationalPolytope, VertexDomain, Widths};
use crate::rational::Rational;
use crate::tangency::TangencyConstraint;
use crate::toric::{cocharacter_relation, CurveClass};

/// A positive ray viewed as a covering-knapsack item.
#[derive(Clone, Debug)]
struct Item {
    ray: usize,
    cost: Rational,
    weight: u64,
}

#[derive(Clone, Debug)]
struct LEntry {
    cost: Rational,
    weight: u64,
    choice: Option<usize>,
}

#[derive(Clone, Debug)]
struct UEntry {
    cost: Rational,
    weight: u64,
    step: Option<(usize, usize)>,
}

const EMPTY: usize = 0;
const PURE_E1: usize = 1;
const PURE_E2: usize = 2;
const MIXED: usize = 3;
const CLASSES: usize = 4;

/// Memoized solver state for one domain: both DP tables for targets
/// `0 ..= k_max + 1`, reusable across every `k <= k_max`.
#[derive(Clone, Debug)]
pub struct CapacityTable {
    omega: RationalPolytope,
    fan: Fan2D,
    divisor: DivisorOnFan,
    widths: Widths,
    items: Vec<Item>,
    neg_e1: usize,
    neg_e2: usize,
    k_max: usize,
    l: Vec<LEntry>,
    u: Vec<[Option<UEntry>; CLASSES]>,
}

impl CapacityTable {
    /// Builds the tables on the smooth refinement of the normal fan.
    pub fn build(omega: &RationalPolytope, k_max: usize) -> Result<Self> {
        if !omega.is_strongly_convex() {
            return Err(Error::UnsupportedDomain(
                "domain is not strongly convex; use the brute-force oracle".into(),
            ));
        }
        let fan = normal_fan(omega).refine_smooth();
        Self::on_fan(omega, fan, k_max)
    }

    /// Builds the tables on a caller-supplied smooth strongly convex
    /// refinement; any such refinement yields the same values.
    pub fn build_on_fan(omega: &RationalPolytope, fan: &Fan2D, k_max: usize) -> Result<Self> {
        if !omega.is_strongly_convex() {
            return Err(Error::UnsupportedDomain(
                "domain is not strongly convex; use the brute-force oracle".into(),
            ));
        }
        if !fan.is_smooth() {
            return Err(Error::UnsupportedFan("solver fan must be smooth".into()));
        }
        if !fan.is_strongly_convex() {
            return Err(Error::UnsupportedFan(
                "solver fan must be strongly convex".into(),
            ));
        }
        if !fan.refines(&normal_fan(omega)) {
            return Err(Error::UnsupportedFan(
                "solver fan must refine the normal fan of the domain".into(),
            ));
        }
        Self::on_fan(omega, fan.clone(), k_max)
    }

    fn on_fan(omega: &RationalPolytope, fan: Fan2D, k_max: usize) -> Result<Self> {
        if k_max < 1 {
            return Err(Error::InvalidArgument("k_max must be at least 1".into()));
        }
        let divisor = omega_divisor(&fan, omega);
        let widths = omega.widths()?;
        let neg_e1 = fan
            .ray_index(&LatticeVector::xy(-1, 0))
            .expect("strongly convex complete fan contains -e1");
        let neg_e2 = fan
            .ray_index(&LatticeVector::xy(0, -1))
            .expect("strongly convex complete fan contains -e2");
        let items: Vec<Item> = fan
            .positive_ray_indices()
            .into_iter()
            .map(|ray| {
                let v = &fan.rays()[ray];
                let weight = 1 + u64::try_from(v.x() + v.y()).expect("small positive ray");
                let cost = divisor.coefficient(ray).clone();
                debug_assert!(cost.is_positive(), "positive rays have positive cost");
                Item { ray, cost, weight }
            })
            .collect();
        assert!(!items.is_empty(), "complete fan has a positive ray");

        let mut table = CapacityTable {
            omega: omega.clone(),
            fan,
            divisor,
            widths,
            items,
            neg_e1,
            neg_e2,
            k_max,
            l: Vec::new(),
            u: Vec::new(),
        };
        table.fill(k_max + 1);
        Ok(table)
    }

    fn item_class(&self, item: usize) -> usize {
        let ray = &self.fan.rays()[self.items[item].ray];
        if *ray == LatticeVector::xy(1, 0) {
            PURE_E1
        } else if *ray == LatticeVector::xy(0, 1) {
            PURE_E2
        } else {
            MIXED
        }
    }

    fn combine(&self, class: usize, item: usize) -> usize {
        match (class, self.item_class(item)) {
            (EMPTY, c) => c,
            (PURE_E1, PURE_E1) => PURE_E1,
            (PURE_E2, PURE_E2) => PURE_E2,
            _ => MIXED,
        }
    }

    fn fill(&mut self, t_max: usize) {
        // Lower-bound table.
        self.l.push(LEntry {
            cost: Rational::zero(),
            weight: 0,
            choice: None,
        });
        for t in 1..=t_max {
            let mut best: Option<LEntry> = None;
            for (idx, item) in self.items.iter().enumerate() {
                let prev = &self.l[t.saturating_sub(item.weight as usize)];
                let cand_cost = &prev.cost + &item.cost;
                let cand_weight = prev.weight + item.weight;
                let better = match &best {
                    None => true,
                    Some(b) => {
                        cand_cost < b.cost || (cand_cost == b.cost && cand_weight < b.weight)
                    }
                };
                if better {
                    best = Some(LEntry {
                        cost: cand_cost,
                        weight: cand_weight,
                        choice: Some(idx),
                    });
                }
            }
            self.l.push(best.expect("at least one item"));
        }

        // Support-class table. Layer 0 has intra-layer edges (adding items
        // without raising the remaining target); the class only moves up
        // the lattice empty -> pure -> mixed, so relaxing in class order
        // reaches the fixed point in one pass.
        let mut layer0: [Option<UEntry>; CLASSES] = [None, None, None, None];
        layer0[EMPTY] = Some(UEntry {
            cost: Rational::zero(),
            weight: 0,
            step: None,
        });
        for class in [EMPTY, PURE_E1, PURE_E2] {
            for idx in 0..self.items.len() {
                let target = self.combine(class, idx);
                if target == class {
                    continue;
                }
                if let Some(prev) = layer0[class].clone() {
                    let cand = UEntry {
                        cost: &prev.cost + &self.items[idx].cost,
                        weight: prev.weight + self.items[idx].weight,
                        step: Some((idx, class)),
                    };
                    let better = match &layer0[target] {
                        None => true,
                        Some(b) => {
                            cand.cost < b.cost
                                || (cand.cost == b.cost && cand.weight < b.weight)
                        }
                    };
                    if better {
                        layer0[target] = Some(cand);
                    }
                }
            }
        }
        self.u.push(layer0);
        for t in 1..=t_max {
            let mut layer: [Option<UEntry>; CLASSES] = [None, None, None, None];
            for prev_class in 0..CLASSES {
                for (idx, item) in self.items.iter().enumerate() {
                    let target = self.combine(prev_class, idx);
                    let prev_t = t.saturating_sub(item.weight as usize);
                    if let Some(prev) = &self.u[prev_t][prev_class] {
                        let cand = UEntry {
                            cost: &prev.cost + &item.cost,
                            weight: prev.weight + item.weight,
                            step: Some((idx, prev_class)),
                        };
                        let better = match &layer[target] {
                            None => true,
                            Some(b) => {
                                cand.cost < b.cost
                                    || (cand.cost == b.cost && cand.weight < b.weight)
                            }
                        };
                        if better {
                            layer[target] = Some(cand);
                        }
                    }
                }
            }
            self.u.push(layer);
        }
    }

    pub fn omega(&self) -> &RationalPolytope {
        &self.omega
    }

    /// The smooth strongly convex fan the DP runs on.
    pub fn fan(&self) -> &Fan2D {
        &self.fan
    }

    pub fn divisor(&self) -> &DivisorOnFan {
        &self.divisor
    }

    pub fn widths(&self) -> &Widths {
        &self.widths
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k < 1 {
            return Err(Error::InvalidArgument("capacity index k must be >= 1".into()));
        }
        if k > self.k_max {
            return Err(Error::InvalidArgument(format!(
                "k = {k} exceeds the table bound k_max = {}",
                self.k_max
            )));
        }
        Ok(())
    }

    /// Minimal cost of covering target `t` (the value `f(t)` of the DP).
    pub fn cost_at_target(&self, t: usize) -> Result<&Rational> {
        if t >= self.l.len() {
            return Err(Error::InvalidArgument(format!(
                "target {t} exceeds the table bound {}",
                self.l.len() - 1
            )));
        }
        Ok(&self.l[t].cost)
    }

    /// Item multiset achieving `cost_at_target(t)`, as
    /// (positive ray, multiplicity) pairs.
    pub fn witness_at_target(&self, t: usize) -> Result<Vec<(LatticeVector, u64)>> {
        if t >= self.l.len() {
            return Err(Error::InvalidArgument(format!(
                "target {t} exceeds the table bound {}",
                self.l.len() - 1
            )));
        }
        let mut counts = vec![0u64; self.items.len()];
        let mut t = t;
        while t > 0 {
            let idx = self.l[t].choice.expect("positive targets have a choice");
            counts[idx] += 1;
            t = t.saturating_sub(self.items[idx].weight as usize);
        }
        Ok(self.named_counts(&counts))
    }

    fn named_counts(&self, counts: &[u64]) -> Vec<(LatticeVector, u64)> {
        self.items
            .iter()
            .zip(counts)
            .filter(|(_, &c)| c > 0)
            .map(|(item, &c)| (self.fan.rays()[item.ray].clone(), c))
            .collect()
    }

    /// Expands an item multiset into the curve class
    /// `sum b_rho * R_rho` on the solver fan.
    fn expand_class(&self, counts: &[u64]) -> CurveClass {
        let mut mult = vec![0u64; self.fan.ray_count()];
        for (item, &b) in self.items.iter().zip(counts) {
            if b == 0 {
                continue;
            }
            let v = &self.fan.rays()[item.ray];
            mult[item.ray] += b;
            mult[self.neg_e1] += b * u64::try_from(v.x()).expect("small positive ray");
            mult[self.neg_e2] += b * u64::try_from(v.y()).expect("small positive ray");
        }
        CurveClass::new(self.fan.clone(), mult)
            .expect("expanded cocharacter combinations satisfy the kernel condition")
    }

    /// The lower bound `l_k` with a witness curve class.
    pub fn l_k(&self, k: usize) -> Result<(Rational, CurveClass)> {
        self.check_k(k)?;
        let t = k + 1;
        let mut counts = vec![0u64; self.items.len()];
        let mut cursor = t;
        while cursor > 0 {
            let idx = self.l[cursor].choice.expect("positive targets have a choice");
            counts[idx] += 1;
            cursor = cursor.saturating_sub(self.items[idx].weight as usize);
        }
        Ok((self.l[t].cost.clone(), self.expand_class(&counts)))
    }

    /// The curve class of the lattice fiber pair `(e_j, -e_j)`.
    fn axis_pair_class(&self, axis: usize) -> CurveClass {
        let e = if axis == 0 {
            LatticeVector::xy(1, 0)
        } else {
            LatticeVector::xy(0, 1)
        };
        match self.fan.ray_index(&e) {
            Some(i) => {
                let neg = if axis == 0 { self.neg_e1 } else { self.neg_e2 };
                let mut mult = vec![0u64; self.fan.ray_count()];
                mult[i] = 1;
                mult[neg] = 1;
                CurveClass::new(self.fan.clone(), mult).expect("fiber pair is in the kernel")
            }
            None => cocharacter_relation(&self.fan, &e)
                .expect("solver fan is smooth")
                .to_curve_class(),
        }
    }

    /// The upper bound `u_k` with a witness curve class.
    pub fn u_k(&self, k: usize) -> Result<(Rational, CurveClass)> {
        self.check_k(k)?;
        let t = k + 1;
        let mixed = self.u[t][MIXED]
            .as_ref()
            .expect("mixed solutions exist for strongly convex domains");

        // The single primitive fiber pair has anticanonical degree 2, so it
        // is admissible exactly when k <= 1.
        if k <= 1 {
            let (axis, fiber_cost) = if self.widths.a <= self.widths.b {
                (0, self.widths.a.clone())
            } else {
                (1, self.widths.b.clone())
            };
            if fiber_cost < mixed.cost {
                return Ok((fiber_cost, self.axis_pair_class(axis)));
            }
        }

        // Walk the (item, previous class) backpointers.
        let mut counts = vec![0u64; self.items.len()];
        let mut cursor = (t, MIXED);
        loop {
            let entry = self.u[cursor.0][cursor.1]
                .as_ref()
                .expect("backpointer chain stays on reachable states");
            match entry.step {
                None => break,
                Some((idx, prev_class)) => {
                    counts[idx] += 1;
                    cursor = (
                        cursor.0.saturating_sub(self.items[idx].weight as usize),
                        prev_class,
                    );
                }
            }
        }
        Ok((mixed.cost.clone(), self.expand_class(&counts)))
    }
}

/// One-shot `l_k`.
pub fn l_k(omega: &RationalPolytope, k: usize) -> Result<(Rational, CurveClass)> {
    CapacityTable::build(omega, k.max(1))?.l_k(k)
}

/// One-shot `u_k`.
pub fn u_k(omega: &RationalPolytope, k: usize) -> Result<(Rational, CurveClass)> {
    CapacityTable::build(omega, k.max(1))?.u_k(k)
}

/// The k-th Gutt-Hutchings capacity: the minimal support value over
/// nonnegative integer vectors with coordinate sum `k`.
pub fn gh_capacity(omega: &RationalPolytope, k: usize) -> Result<Rational> {
    if !omega.is_strongly_convex() {
        return Err(Error::UnsupportedDomain(
            "Gutt-Hutchings capacities need a strongly convex domain".into(),
        ));
    }
    gh_capacity_nd(&omega.to_vertex_domain(), k)
}

/// Dimension-generic Gutt-Hutchings minimum over compositions of `k`.
pub fn gh_capacity_nd(domain: &VertexDomain, k: usize) -> Result<Rational> {
    if k < 1 {
        return Err(Error::InvalidArgument("capacity index k must be >= 1".into()));
    }
    let k = i64::try_from(k).expect("index fits in i64");
    let dim = domain.dim();
    let mut best: Option<Rational> = None;
    let mut parts = vec![0i64; dim];
    fn walk(
        domain: &VertexDomain,
        parts: &mut Vec<i64>,
        axis: usize,
        remaining: i64,
        best: &mut Option<Rational>,
    ) {
        if axis + 1 == parts.len() {
            parts[axis] = remaining;
            let v = LatticeVector::new(parts.iter().map(|&p| BigInt::from(p)).collect()).unwrap();
            let value = domain.support_value(&v);
            if best.as_ref().map_or(true, |b| value < *b) {
                *best = Some(value);
            }
            return;
        }
        for take in 0..=remaining {
            parts[axis] = take;
            walk(domain, parts, axis + 1, remaining - take, best);
        }
    }
    walk(domain, &mut parts, 0, k, &mut best);
    Ok(best.expect("at least one composition"))
}

/// `lim l_k / k = lim u_k / k`: the minimum of `||v_rho|| / (1 + v_rho,1 +
/// v_rho,2)` over the positive rays of the (unresolved) normal fan, with
/// the first minimizing ray in counterclockwise order as witness.
pub fn asymptotic_slope(omega: &RationalPolytope) -> Result<(Rational, LatticeVector)> {
    if !omega.is_strongly_convex() {
        return Err(Error::UnsupportedDomain(
            "asymptotic slope needs a strongly convex domain".into(),
        ));
    }
    let fan = normal_fan(omega);
    let mut best: Option<(Rational, LatticeVector)> = None;
    for i in fan.positive_ray_indices() {
        let v = &fan.rays()[i];
        let denom = Rational::from_integer(BigInt::from(1) + v.x() + v.y());
        let ratio = omega.support_value(v) / denom;
        if best.as_ref().map_or(true, |(b, _)| ratio < *b) {
            best = Some((ratio, v.clone()));
        }
    }
    best.ok_or_else(|| Error::InvalidDomain("fan has no positive ray".into()))
}

/// Cross-check form of the slope: the same minimum scanned over the
/// integer box `[0, bound]^2` minus the origin. Agrees with
/// [`asymptotic_slope`] as soon as the box contains every positive ray
/// generator of the normal fan.
pub fn asymptotic_slope_box(omega: &RationalPolytope, bound: i64) -> Result<Rational> {
    if !omega.is_strongly_convex() {
        return Err(Error::UnsupportedDomain(
            "asymptotic slope needs a strongly convex domain".into(),
        ));
    }
    if bound < 1 {
        return Err(Error::InvalidArgument("box bound must be >= 1".into()));
    }
    let mut best: Option<Rational> = None;
    for x in 0..=bound {
        for y in 0..=bound {
            if x == 0 && y == 0 {
                continue;
            }
            let v = LatticeVector::xy(x, y);
            let denom = Rational::from_integer(BigInt::from(1 + x + y));
            let ratio = omega.support_value(&v) / denom;
            if best.as_ref().map_or(true, |b| ratio < *b) {
                best = Some(ratio);
            }
        }
    }
    Ok(best.expect("box contains a nonzero vector"))
}

/// The Gromov width `min(a, b)`, cross-checked against `l_1` and `u_1`.
pub fn gromov_width(omega: &RationalPolytope) -> Result<Rational> {
    if !omega.is_strongly_convex() {
        return Err(Error::UnsupportedDomain(
            "Gromov width formula needs a strongly convex domain".into(),
        ));
    }
    let w = omega.widths()?;
    let width = w.a.clone().min(w.b.clone());
    let table = CapacityTable::build(omega, 1)?;
    let (l1, _) = table.l_k(1)?;
    let (u1, _) = table.u_k(1)?;
    if l1 != width || u1 != width {
        return Err(Error::Verification(format!(
            "gromov width {width} disagrees with l_1 = {l1}, u_1 = {u1}"
        )));
    }
    Ok(width)
}

/// Capacity interval attached to a tangency constraint of codimension
/// `2k`: always the lower bound `l_k`; the upper bound `u_k` only for lax
/// constraints; for one-point constraints `((k0))` also the bound
/// `u_{k0+1}` valid for stable embeddings into a product with a closed
/// factor. `exact` records `a = b`, in which case the interval collapses
/// and pins the capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsftInterval {
    pub k: usize,
    pub lower: Rational,
    pub upper: Option<Rational>,
    pub stable_upper: Option<Rational>,
    pub exact: bool,
    pub lax: bool,
}

pub fn rsft_interval(
    omega: &RationalPolytope,
    constraint: &TangencyConstraint,
) -> Result<RsftInterval> {
    if constraint.dim() != 4 {
        return Err(Error::InvalidArgument(format!(
            "capacity intervals need a 4-dimensional constraint, got dim {}",
            constraint.dim()
        )));
    }
    let codim = constraint.codim();
    if codim % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "constraint codimension {codim} is odd"
        )));
    }
    let k = usize::try_from(codim / 2).expect("codimension fits in usize");
    if k < 1 {
        return Err(Error::InvalidArgument(
            "constraint codimension must be at least 2".into(),
        ));
    }
    let lax = constraint.is_lax();

    // The stable bound applies to one-point constraints ((k0)) and equals
    // u_{k0 + 1}; in dimension 4 that index is again codim/2.
    let single_order = match constraint.points() {
        [point] if point.len() == 1 => Some(usize::try_from(point[0]).unwrap() + 1),
        _ => None,
    };

    let table = CapacityTable::build(omega, k.max(single_order.unwrap_or(1)))?;
    let (lower, _) = table.l_k(k)?;
    let widths = table.widths();
    let exact = widths.a == widths.b;
    let (upper, stable_upper) = if lax {
        let (u, _) = table.u_k(k)?;
        let stable = match single_order {
            Some(k0_plus_1) => Some(table.u_k(k0_plus_1)?.0),
            None => None,
        };
        (Some(u), stable)
    } else {
        (None, None)
    };
    Ok(RsftInterval {
        k,
        lower,
        upper,
        stable_upper,
        exact,
        lax,
    })
}

/// Per-k record of the computed quantities.
#[derive(Clone, Debug)]
pub struct CapacityReport {
    pub k: usize,
    pub lk: Rational,
    pub uk: Rational,
    pub gh: Rational,
    pub lk_witness: CurveClass,
    pub uk_witness: CurveClass,
    pub exact: bool,
}

/// Builds the DP tables once and reads off all `k = 1 ..= k_max`.
pub fn compute_report(omega: &RationalPolytope, k_max: usize) -> Result<Vec<CapacityReport>> {
    let table = CapacityTable::build(omega, k_max)?;
    let exact = table.widths().a == table.widths().b;
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let (lk, lk_witness) = table.l_k(k)?;
        let (uk, uk_witness) = table.u_k(k)?;
        let gh = gh_capacity(omega, k)?;
        rows.push(CapacityReport {
            k,
            lk,
            uk,
            gh,
            lk_witness,
            uk_witness,
            exact,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::testutil::*;
    use crate::rational::{int, ratio};

    fn lk_values(omega: &RationalPolytope, k_max: usize) -> Vec<Rational> {
        let table = CapacityTable::build(omega, k_max).unwrap();
        (1..=k_max).map(|k| table.l_k(k).unwrap().0).collect()
    }

    fn uk_values(omega: &RationalPolytope, k_max: usize) -> Vec<Rational> {
        let table = CapacityTable::build(omega, k_max).unwrap();
        (1..=k_max).map(|k| table.u_k(k).unwrap().0).collect()
    }

    #[test]
    fn square_lower_bounds() {
        let expect: Vec<Rational> = [1, 2, 2, 3, 3, 4].iter().map(|&n| int(n)).collect();
        assert_eq!(lk_values(&unit_square(), 6), expect);
    }

    #[test]
    fn ball_lower_bounds() {
        let expect: Vec<Rational> = [1, 1, 2, 2, 2].iter().map(|&n| int(n)).collect();
        assert_eq!(lk_values(&unit_triangle(), 5), expect);
    }

    #[test]
    fn omega4_lower_bounds_match_published_row() {
        let expect = vec![int(1), ratio(7, 4), int(2), ratio(11, 4), int(3)];
        assert_eq!(lk_values(&omega4(), 5), expect);
    }

    #[test]
    fn omega4_upper_bounds_collapse() {
        assert_eq!(uk_values(&omega4(), 5), lk_values(&omega4(), 5));
    }

    #[test]
    fn rectangle_excludes_the_double_fiber() {
        let rect = rectangle_1_2();
        assert_eq!(lk_values(&rect, 2), vec![int(1), int(2)]);
        assert_eq!(uk_values(&rect, 2), vec![int(1), int(3)]);
    }

    #[test]
    fn first_bound_is_the_smaller_width() {
        for omega in [unit_square(), unit_triangle(), rectangle_1_2(), omega4()] {
            let w = omega.widths().unwrap();
            let expected = w.a.clone().min(w.b.clone());
            assert_eq!(l_k(&omega, 1).unwrap().0, expected);
            assert_eq!(u_k(&omega, 1).unwrap().0, expected);
            assert_eq!(gh_capacity(&omega, 1).unwrap(), expected);
            assert_eq!(gromov_width(&omega).unwrap(), expected);
        }
    }

    #[test]
    fn gh_capacities() {
        let expect = vec![int(1), ratio(7, 4), ratio(5, 2), ratio(13, 4), int(4)];
        let got: Vec<Rational> = (1..=5).map(|k| gh_capacity(&omega4(), k).unwrap()).collect();
        assert_eq!(got, expect);
        assert_eq!(gh_capacity(&unit_square(), 3).unwrap(), int(3));
        assert_eq!(gh_capacity(&unit_triangle(), 4).unwrap(), int(2));
    }

    #[test]
    fn witnesses_certify_their_values() {
        for omega in [unit_square(), unit_triangle(), rectangle_1_2(), omega4()] {
            let k_max = 6;
            let table = CapacityTable::build(&omega, k_max).unwrap();
            for k in 1..=k_max {
                for (value, witness) in [table.l_k(k).unwrap(), table.u_k(k).unwrap()] {
                    assert_eq!(
                        witness.intersect_divisor(table.divisor()).unwrap(),
                        value,
                        "witness value mismatch for k = {k}"
                    );
                    assert!(witness.anticanonical_degree() >= (k + 1) as u64);
                    let polygon = witness.polygon(table.divisor()).unwrap();
                    assert_eq!(polygon.affine_perimeter, witness.anticanonical_degree());
                    assert_eq!(polygon.omega_length, value);
                }
            }
        }
    }

    #[test]
    fn u_witnesses_avoid_excluded_fibers() {
        for omega in [unit_square(), rectangle_1_2(), omega4()] {
            let table = CapacityTable::build(&omega, 8).unwrap();
            for k in 1..=8 {
                let (_, witness) = table.u_k(k).unwrap();
                if let Some((_, m)) = witness.fiber_multiple() {
                    assert_eq!(m, 1, "u_{k} witness is a higher fiber multiple");
                    assert!(k <= 1, "single fiber admissible only for k <= 1");
                }
            }
        }
    }

    #[test]
    fn bounds_are_monotone_and_ordered() {
        for omega in [unit_square(), unit_triangle(), rectangle_1_2(), omega4()] {
            let table = CapacityTable::build(&omega, 10).unwrap();
            let mut prev_l = int(0);
            let mut prev_u = int(0);
            for k in 1..=10 {
                let (lk, _) = table.l_k(k).unwrap();
                let (uk, _) = table.u_k(k).unwrap();
                assert!(lk <= uk);
                assert!(prev_l <= lk);
                assert!(prev_u <= uk);
                prev_l = lk;
                prev_u = uk;
            }
        }
    }

    #[test]
    fn dp_costs_are_monotone_in_target() {
        let table = CapacityTable::build(&omega4(), 10).unwrap();
        assert_eq!(table.cost_at_target(0).unwrap(), &int(0));
        for t in 1..=11 {
            assert!(table.cost_at_target(t - 1).unwrap() <= table.cost_at_target(t).unwrap());
            let witness = table.witness_at_target(t).unwrap();
            let total: Rational = witness
                .iter()
                .map(|(ray, c)| {
                    omega4().support_value(ray) * Rational::from_integer(BigInt::from(*c))
                })
                .sum();
            assert_eq!(&total, table.cost_at_target(t).unwrap());
        }
    }

    #[test]
    fn scaling_is_exact() {
        let c = ratio(7, 3);
        for omega in [unit_square(), omega4()] {
            let scaled = omega.scale(&c).unwrap();
            for k in 1..=6 {
                assert_eq!(l_k(&scaled, k).unwrap().0, &c * l_k(&omega, k).unwrap().0);
                assert_eq!(u_k(&scaled, k).unwrap().0, &c * u_k(&omega, k).unwrap().0);
                assert_eq!(
                    gh_capacity(&scaled, k).unwrap(),
                    &c * gh_capacity(&omega, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn non_strongly_convex_domains_are_routed_to_the_oracle() {
        let skew = crate::geom::testutil::poly(&[(0, 0, 1), (1, 0, 1), (2, 1, 1), (0, 1, 1)]);
        assert!(matches!(
            CapacityTable::build(&skew, 3),
            Err(Error::UnsupportedDomain(_))
        ));
        assert!(matches!(
            gh_capacity(&skew, 2),
            Err(Error::UnsupportedDomain(_))
        ));
    }

    #[test]
    fn slopes_of_examples() {
        let (s, witness) = asymptotic_slope(&unit_square()).unwrap();
        assert_eq!(s, ratio(1, 2));
        assert_eq!(witness, LatticeVector::xy(1, 0));

        let (s, witness) = asymptotic_slope(&unit_triangle()).unwrap();
        assert_eq!(s, ratio(1, 3));
        assert_eq!(witness, LatticeVector::xy(1, 1));

        let (s, witness) = asymptotic_slope(&omega4()).unwrap();
        assert_eq!(s, ratio(1, 2));
        assert_eq!(witness, LatticeVector::xy(0, 1));

        for omega in [unit_square(), unit_triangle(), rectangle_1_2(), omega4()] {
            let (s, _) = asymptotic_slope(&omega).unwrap();
            assert_eq!(asymptotic_slope_box(&omega, 6).unwrap(), s);
        }
    }

    #[test]
    fn interval_reports() {
        let pt = TangencyConstraint::single(0, 4).unwrap();
        let r = rsft_interval(&omega4(), &pt).unwrap();
        assert_eq!(r.k, 1);
        assert_eq!(r.lower, int(1));
        assert_eq!(r.upper, Some(int(1)));
        assert_eq!(r.stable_upper, Some(int(1)));
        assert!(r.exact && r.lax);

        let two_points = TangencyConstraint::new(vec![vec![0], vec![0]], 4).unwrap();
        let r = rsft_interval(&omega4(), &two_points).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(r.lower, ratio(7, 4));
        assert_eq!(r.upper, Some(ratio(7, 4)));
        assert_eq!(r.stable_upper, None);
        assert!(r.exact);

        let r = rsft_interval(&rectangle_1_2(), &two_points).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(r.lower, int(2));
        assert_eq!(r.upper, Some(int(3)));
        assert!(!r.exact);

        // Non-lax: lower bound only.
        let non_lax = TangencyConstraint::new(vec![vec![0, 0]], 4).unwrap();
        let r = rsft_interval(&omega4(), &non_lax).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(r.lower, ratio(7, 4));
        assert_eq!(r.upper, None);
        assert!(!r.lax);

        let bad_dim = TangencyConstraint::single(0, 6).unwrap();
        assert!(rsft_interval(&omega4(), &bad_dim).is_err());
    }

    #[test]
    fn refinement_leaves_values_unchanged() {
        let omega = omega4();
        let base = normal_fan(&omega).refine_smooth();
        // Stellar subdivision of a smooth positive cone stays smooth and
        // strongly convex.
        let mut rays: Vec<LatticeVector> = base.rays().to_vec();
        rays.push(LatticeVector::xy(5, 2)); // (4,1) + (1,1)
        rays.push(LatticeVector::xy(1, 2)); // (1,1) + (0,1)
        let finer = Fan2D::new(rays).unwrap();
        assert!(finer.is_smooth());
        let t0 = CapacityTable::build(&omega, 8).unwrap();
        let t1 = CapacityTable::build_on_fan(&omega, &finer, 8).unwrap();
        for k in 1..=8 {
            assert_eq!(t0.l_k(k).unwrap().0, t1.l_k(k).unwrap().0);
            assert_eq!(t0.u_k(k).unwrap().0, t1.u_k(k).unwrap().0);
        }
    }

    #[test]
    fn report_rows_are_consistent() {
        let rows = compute_report(&omega4(), 5).unwrap();
        assert_eq!(rows.len(), 5);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.k, i + 1);
            assert!(row.lk <= row.uk);
            assert!(row.exact);
            assert_eq!(row.lk, row.uk);
        }
    }
}
