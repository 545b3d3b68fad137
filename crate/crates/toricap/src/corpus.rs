//! Deterministic random domains and fans for cross-checking.
//!
//! Everything here is seeded (ChaCha8 streams): the same seed always
//! produces the same domain, so failures are reproducible. The generators
//! are used by the test suites and the `oracle_check` example; they are
//! not part of the computational contract.
//!
//! Strongly convex polygons are built from their upper-right boundary: a
//! chain of up-left edge vectors `(-p_i, q_i)` with `p_i, q_i > 0`,
//! sorted by angle, walks from `(a, 0)` to `(0, b)`; the outward normals
//! `(q_i, p_i)` are then strictly positive, and the bottom and left sides
//! close the polygon along the axes.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fan::{primitive, Fan2D};
use crate::geom::{LatticeVector, RationalPolytope};
use crate::rational::Rational;

/// A reproducible generator for the given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A positive rational with numerator in `1..=max_numer` and denominator
/// dividing `denom` (so vertex coordinates stay `p/denom`).
fn positive_rational(rng: &mut impl Rng, max_numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(1..=max_numer)), BigInt::from(denom))
}

/// A random strongly convex rational polygon. All vertex denominators
/// divide `denom`; the boundary chain has 1 to 4 edges off the axes.
pub fn strongly_convex_polytope(rng: &mut impl Rng, denom: i64) -> RationalPolytope {
    loop {
        let edge_count = rng.gen_range(1..=4usize);
        let mut steps: Vec<(Rational, Rational)> = (0..edge_count)
            .map(|_| {
                (
                    positive_rational(rng, 3 * denom, denom),
                    positive_rational(rng, 3 * denom, denom),
                )
            })
            .collect();
        // Sort the up-left edge vectors (-p, q) by angle: increasing q/p.
        steps.sort_by(|(p1, q1), (p2, q2)| (q1 * p2).cmp(&(q2 * p1)));
        let zero = Rational::new(0.into(), 1.into());
        let a: Rational = steps.iter().map(|(p, _)| p.clone()).sum();
        let mut vertices = vec![[zero.clone(), zero.clone()], [a.clone(), zero.clone()]];
        let mut current = [a, zero];
        for (p, q) in &steps {
            current = [&current[0] - p, &current[1] + q];
            vertices.push(current.clone());
        }
        // Parallel steps merge inside the hull constructor.
        if let Ok(poly) = RationalPolytope::new(vertices) {
            debug_assert!(poly.is_strongly_convex());
            return poly;
        }
    }
}

/// A random strongly convex polygon with equal axis widths, obtained by
/// rescaling the vertical axis (which preserves strong convexity).
pub fn equal_width_polytope(rng: &mut impl Rng, denom: i64) -> RationalPolytope {
    let poly = strongly_convex_polytope(rng, denom);
    let w = poly.widths().expect("strongly convex domains have widths");
    let stretch = w.a / w.b;
    let vertices = poly
        .vertices()
        .iter()
        .map(|v| [v[0].clone(), &v[1] * &stretch])
        .collect();
    let poly = RationalPolytope::new(vertices).expect("axis rescaling keeps full dimension");
    debug_assert!(poly.is_strongly_convex());
    poly
}

/// A nested pair `(inner, outer)` of strongly convex polygons: the outer
/// domain is the hull of the inner one and a second random domain.
pub fn nested_pair(rng: &mut impl Rng, denom: i64) -> (RationalPolytope, RationalPolytope) {
    loop {
        let inner = strongly_convex_polytope(rng, denom);
        let bigger = strongly_convex_polytope(rng, denom);
        let mut vertices: Vec<[Rational; 2]> = inner.vertices().to_vec();
        vertices.extend(bigger.vertices().iter().cloned());
        let outer = RationalPolytope::new(vertices).expect("union hull is full-dimensional");
        if outer.is_strongly_convex() && outer.contains(&inner) {
            return (inner, outer);
        }
    }
}

/// A random smooth strongly convex fan: the resolved normal fan of a
/// random domain.
pub fn smooth_strongly_convex_fan(rng: &mut impl Rng, denom: i64) -> Fan2D {
    crate::fan::normal_fan(&strongly_convex_polytope(rng, denom)).refine_smooth()
}

/// One stellar subdivision of a random positive-quadrant cone of a smooth
/// strongly convex fan: inserting `u + w` keeps the fan smooth (the two
/// new cones still have determinant 1) and strongly convex.
pub fn subdivide_positive_cone(rng: &mut impl Rng, fan: &Fan2D) -> Fan2D {
    let candidates: Vec<usize> = (0..fan.ray_count())
        .filter(|&i| {
            let j = (i + 1) % fan.ray_count();
            fan.rays()[i].is_nonnegative() && fan.rays()[j].is_nonnegative()
        })
        .collect();
    assert!(!candidates.is_empty(), "no positive cone to subdivide");
    let i = candidates[rng.gen_range(0..candidates.len())];
    let j = (i + 1) % fan.ray_count();
    let sum = fan.rays()[i].add(&fan.rays()[j]);
    let mut rays = fan.rays().to_vec();
    rays.push(primitive(&sum).expect("sum of adjacent rays is nonzero"));
    Fan2D::new(rays).expect("subdivision keeps the fan complete")
}

/// A random primitive nonzero vector with coordinates in `[-bound, bound]`.
pub fn primitive_vector(rng: &mut impl Rng, bound: i64) -> LatticeVector {
    loop {
        let v = LatticeVector::xy(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if v.is_zero() {
            continue;
        }
        return primitive(&v).expect("nonzero");
    }
}
