//! Brute-force lattice oracle for the capacity bounds.
//!
//! Enumerates the defining optimization directly: sequences of nonzero
//! integer vectors summing to zero, at least `k + 1` of them, minimizing
//! the total support value. Completely independent of the fan machinery,
//! so it can cross-check the DP and it also covers weakly convex domains
//! the DP refuses.
//!
//! The search is exact because the optimum lives in a finite box:
//! `ceil((k+1)/2)` copies of the cheaper axis pair give an upper bound
//! `B` on the optimum, and any vector with `i`-th coordinate `c > 0`
//! already costs at least `width_i * c` (the axis point `width_i * e_i`
//! is in the domain). So an optimal solution has total positive mass at
//! most `B / width_i` in coordinate `i`; the negative mass per coordinate
//! equals the positive mass, which also bounds every partial sum taken in
//! any order. A shortest-path search over (partial sum, count) states
//! inside that box is therefore exhaustive.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geom::{LatticeVector, RationalPolytope, VertexDomain};
use crate::rational::Rational;

/// Hard cap on `(states) * (moves)` before the search refuses to run.
const BUDGET: u64 = 200_000_000;

/// Exact `l_k` (or, with `restrict_to_u`, `u_k`) of a weakly convex
/// planar moment domain by bounded enumeration.
pub fn l_k_bruteforce(
    omega: &RationalPolytope,
    k: usize,
    restrict_to_u: bool,
) -> Result<Rational> {
    if !omega.is_weakly_convex() {
        return Err(Error::InvalidDomain(
            "oracle needs a weakly convex moment domain".into(),
        ));
    }
    search(&omega.to_vertex_domain(), k, restrict_to_u)
}

/// The dimension-generic lower bound through the same search;
/// supported in dimensions 2 and 3.
pub fn l_k_bruteforce_nd(domain: &VertexDomain, k: usize) -> Result<Rational> {
    if domain.dim() > 3 {
        return Err(Error::InvalidArgument(
            "oracle search is limited to dimensions 2 and 3".into(),
        ));
    }
    if !domain.is_weakly_convex() {
        return Err(Error::InvalidDomain(
            "oracle needs a weakly convex moment domain".into(),
        ));
    }
    search(domain, k, false)
}

/// Search state: partial coordinate sums, vectors used so far (saturating
/// at the count target), and whether every vector so far lies on the
/// first / second coordinate axis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct State {
    sums: Vec<i64>,
    count: u8,
    on_axis: [bool; 2],
}

fn search(domain: &VertexDomain, k: usize, restrict_to_u: bool) -> Result<Rational> {
    if k < 1 {
        return Err(Error::InvalidArgument("capacity index k must be >= 1".into()));
    }
    if restrict_to_u && domain.dim() != 2 {
        return Err(Error::InvalidArgument(
            "the restricted optimization is defined in dimension 2".into(),
        ));
    }
    let dim = domain.dim();
    let target = k + 1;
    let widths: Vec<Rational> = (0..dim).map(|i| domain.axis_width(i)).collect();

    // Seeded upper bound from an admissible solution. Unrestricted:
    // ceil((k+1)/2) copies of the cheapest axis pair (e_j, -e_j); the
    // reverse vector costs nothing for a weakly convex domain. Restricted:
    // pure-axis solutions are excluded, so seed with ceil((k+1)/4) copies
    // of the mixed quadruple (e_1, -e_1, e_2, -e_2) instead.
    let axis_costs: Vec<Rational> = (0..dim)
        .map(|i| domain.support_value(&axis_vector(dim, i)))
        .collect();
    let bound = if restrict_to_u {
        let quads = Rational::from_integer(BigInt::from(target.div_ceil(4) as u64));
        quads * (&axis_costs[0] + &axis_costs[1])
    } else {
        let pairs = Rational::from_integer(BigInt::from(target.div_ceil(2) as u64));
        let cheapest = axis_costs.iter().min().expect("positive dimension");
        pairs * cheapest
    };

    // Per-coordinate positive mass bound.
    let mass: Vec<i64> = widths
        .iter()
        .map(|w| {
            (bound.clone() / w)
                .floor()
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::ResourceExceeded("mass bound overflows".into()))
        })
        .collect::<Result<_>>()?;

    // Candidate moves: nonzero vectors in the box, each with its cost.
    let mut moves: Vec<(Vec<i64>, Rational)> = Vec::new();
    let mut cursor: Vec<i64> = mass.iter().map(|&m| -m).collect();
    loop {
        if cursor.iter().any(|&c| c != 0) {
            let v = LatticeVector::new(cursor.iter().map(|&c| BigInt::from(c)).collect())?;
            moves.push((cursor.clone(), domain.support_value(&v)));
        }
        // Odometer over the box.
        let mut axis = 0;
        loop {
            if axis == dim {
                break;
            }
            cursor[axis] += 1;
            if cursor[axis] <= mass[axis] {
                break;
            }
            cursor[axis] = -mass[axis];
            axis += 1;
        }
        if axis == dim {
            break;
        }
    }

    let state_count: u64 = mass
        .iter()
        .map(|&m| 2 * m as u64 + 1)
        .product::<u64>()
        .saturating_mul((target + 1) as u64)
        .saturating_mul(4);
    let work = state_count.saturating_mul(moves.len() as u64);
    if work > BUDGET {
        return Err(Error::ResourceExceeded(format!(
            "bounded search needs ~{work} relaxations (box {mass:?}, target {target})"
        )));
    }

    // Dijkstra from the empty state; costs are nonnegative and the only
    // zero-cost moves strictly decrease some coordinate sum, so there are
    // no zero-cost cycles.
    let start = State {
        sums: vec![0; dim],
        count: 0,
        on_axis: [true, true],
    };
    let mut dist: HashMap<State, Rational> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(Rational, State)>> = BinaryHeap::new();
    dist.insert(start.clone(), Rational::zero());
    heap.push(Reverse((Rational::zero(), start)));
    let mut best: Option<Rational> = None;

    while let Some(Reverse((cost, state))) = heap.pop() {
        if let Some(known) = dist.get(&state) {
            if *known < cost {
                continue;
            }
        }
        if let Some(b) = &best {
            if cost >= *b {
                continue;
            }
        }
        let done = state.sums.iter().all(|&s| s == 0) && state.count as usize >= target;
        if done {
            let admissible = if restrict_to_u {
                // Everything on one axis is excluded here; the single
                // primitive pair is added back below.
                !(state.on_axis[0] || state.on_axis[1])
            } else {
                true
            };
            if admissible {
                best = Some(match best {
                    None => cost.clone(),
                    Some(b) => b.min(cost.clone()),
                });
                continue;
            }
        }
        for (step, step_cost) in &moves {
            let mut sums = state.sums.clone();
            let mut ok = true;
            for (s, (&c, &m)) in sums.iter_mut().zip(step.iter().zip(&mass)) {
                *s += c;
                if s.abs() > m {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let next_cost = &cost + step_cost;
            if next_cost > bound {
                continue;
            }
            let next = State {
                sums,
                count: (state.count + 1).min(target as u8),
                on_axis: [
                    state.on_axis[0] && step.iter().skip(1).all(|&c| c == 0),
                    state.on_axis[1]
                        && step[0] == 0
                        && step.iter().skip(2).all(|&c| c == 0),
                ],
            };
            let improved = match dist.get(&next) {
                None => true,
                Some(known) => next_cost < *known,
            };
            if improved {
                dist.insert(next.clone(), next_cost.clone());
                heap.push(Reverse((next_cost, next)));
            }
        }
    }

    if restrict_to_u && k <= 1 {
        // The single primitive fiber pair (e_j, -e_j) has length 2 >= k+1.
        let fiber = axis_costs.iter().min().cloned().expect("positive dimension");
        best = Some(match best {
            None => fiber,
            Some(b) => b.min(fiber),
        });
    }

    best.ok_or_else(|| {
        Error::ResourceExceeded("no admissible solution within the search bound".into())
    })
}

fn axis_vector(dim: usize, axis: usize) -> LatticeVector {
    let mut coords = vec![BigInt::zero(); dim];
    coords[axis] = BigInt::from(1);
    LatticeVector::new(coords).expect("dim >= 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::testutil::*;
    use crate::rational::{int, ratio};

    #[test]
    fn matches_known_values() {
        assert_eq!(l_k_bruteforce(&unit_square(), 3, false).unwrap(), int(2));
        assert_eq!(l_k_bruteforce(&omega4(), 2, false).unwrap(), ratio(7, 4));
        assert_eq!(l_k_bruteforce(&rectangle_1_2(), 2, true).unwrap(), int(3));
        assert_eq!(l_k_bruteforce(&rectangle_1_2(), 2, false).unwrap(), int(2));
    }

    #[test]
    fn covers_weakly_convex_domains() {
        // Mixed normal (1,-1): the DP refuses this domain, the oracle works.
        let skew = poly(&[(0, 0, 1), (1, 0, 1), (2, 1, 1), (0, 1, 1)]);
        assert!(crate::capacity::l_k(&skew, 1).is_err());
        assert_eq!(l_k_bruteforce(&skew, 1, false).unwrap(), int(1));
        // Not weakly convex: detached from the axes.
        let shifted = poly(&[(1, 1, 1), (2, 1, 1), (2, 2, 1), (1, 2, 1)]);
        assert!(matches!(
            l_k_bruteforce(&shifted, 1, false),
            Err(Error::InvalidDomain(_))
        ));
    }

    #[test]
    fn agrees_with_the_dp_on_examples() {
        for omega in [unit_square(), unit_triangle(), rectangle_1_2(), omega4()] {
            let table = crate::capacity::CapacityTable::build(&omega, 4).unwrap();
            for k in 1..=4 {
                assert_eq!(
                    l_k_bruteforce(&omega, k, false).unwrap(),
                    table.l_k(k).unwrap().0,
                    "l_{k} mismatch"
                );
                assert_eq!(
                    l_k_bruteforce(&omega, k, true).unwrap(),
                    table.u_k(k).unwrap().0,
                    "u_{k} mismatch"
                );
            }
        }
    }

    #[test]
    fn three_dimensional_ball() {
        // Moment simplex of the round ball: l_k = ceil((k+1)/4) * capacity
        // is false in general, but the k = 1 width and the k <= 3 pattern
        // follow from the single positive diagonal of weight 4.
        let ball3 = VertexDomain::new(
            vec![
                vec![int(0), int(0), int(0)],
                vec![int(1), int(0), int(0)],
                vec![int(0), int(1), int(0)],
                vec![int(0), int(0), int(1)],
            ],
            3,
        )
        .unwrap();
        assert_eq!(l_k_bruteforce_nd(&ball3, 1).unwrap(), int(1));
        assert_eq!(l_k_bruteforce_nd(&ball3, 2).unwrap(), int(1));
        assert_eq!(l_k_bruteforce_nd(&ball3, 3).unwrap(), int(1));
        assert_eq!(l_k_bruteforce_nd(&ball3, 4).unwrap(), int(2));
        let dim4 = VertexDomain::new(vec![vec![int(0); 4], vec![int(1); 4]], 4);
        assert!(l_k_bruteforce_nd(&dim4.unwrap(), 1).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            l_k_bruteforce(&unit_square(), 60, false),
            Err(Error::ResourceExceeded(_))
        ));
    }
}
