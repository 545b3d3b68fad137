//! Complete fans in the plane and their smooth refinements.
//!
//! A [`Fan2D`] is the set of rays of a complete fan in `R^2`: primitive
//! integer generators, pairwise distinct, sorted counterclockwise starting
//! at the positive x-axis, with every adjacent pair spanning a strictly
//! convex cone. Adjacency is implicit: cone `i` is spanned by rays `i` and
//! `i+1 mod n`.
//!
//! [`Fan2D::refine_smooth`] inserts the Hirzebruch-Jung subdivision rays of
//! every singular cone, giving the minimal smooth refinement.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{LatticeVector, RationalPolytope};
use crate::rational::Rational;

/// Divides a nonzero vector by the gcd of its coordinates.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    if v.is_zero() {
        return Err(Error::InvalidArgument(
            "the zero vector has no primitive direction".into(),
        ));
    }
    let g = v
        .coords()
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    LatticeVector::new(v.coords().iter().map(|c| c / &g).collect())
}

/// Rays of a complete fan in `R^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan2D {
    rays: Vec<LatticeVector>,
}

impl Fan2D {
    /// Canonicalizes the input: directions are made primitive, duplicates
    /// dropped, rays sorted counterclockwise from the positive x-axis.
    /// Rejects fans that are not complete (some adjacent gap is >= 180
    /// degrees).
    pub fn new(rays: Vec<LatticeVector>) -> Result<Self> {
        let mut canon = Vec::with_capacity(rays.len());
        for r in &rays {
            if r.dim() != 2 {
                return Err(Error::InvalidArgument("fan rays must be 2D".into()));
            }
            canon.push(primitive(r)?);
        }
        canon.sort_by(|a, b| a.cmp_ccw(b));
        canon.dedup();
        if canon.len() < 3 {
            return Err(Error::InvalidArgument(
                "a complete fan needs at least 3 distinct rays".into(),
            ));
        }
        for i in 0..canon.len() {
            let j = (i + 1) % canon.len();
            if !canon[i].cross(&canon[j]).is_positive() {
                return Err(Error::InvalidArgument(format!(
                    "rays {} and {} do not span a convex cone; fan is not complete",
                    canon[i], canon[j]
                )));
            }
        }
        Ok(Fan2D { rays: canon })
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    /// Indices of the rays in the closed nonnegative quadrant.
    pub fn positive_ray_indices(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| self.rays[i].is_nonnegative())
            .collect()
    }

    /// Every ray is `-e1`, `-e2`, or sits in the nonnegative quadrant.
    pub fn is_strongly_convex(&self) -> bool {
        let neg_e1 = LatticeVector::xy(-1, 0);
        let neg_e2 = LatticeVector::xy(0, -1);
        self.rays
            .iter()
            .all(|r| *r == neg_e1 || *r == neg_e2 || r.is_nonnegative())
    }

    fn det(&self, i: usize, j: usize) -> BigInt {
        self.rays[i].cross(&self.rays[j])
    }

    /// True when every adjacent pair of generators is a `Z`-basis.
    pub fn is_smooth(&self) -> bool {
        (0..self.ray_count()).all(|i| self.det(i, (i + 1) % self.ray_count()).is_one())
    }

    /// Whether every ray of `other` is also a ray of `self`.
    pub fn refines(&self, other: &Fan2D) -> bool {
        other.rays.iter().all(|r| self.ray_index(r).is_some())
    }

    /// The minimal smooth refinement: each singular cone is subdivided
    /// along its Hirzebruch-Jung rays (the lattice points on the bounded
    /// faces of the hull of the nonzero lattice points of the cone).
    ///
    /// The subdivision of one cone never touches another, so the result
    /// does not depend on the order in which cones are processed, and
    /// refining a smooth fan returns it unchanged.
    pub fn refine_smooth(&self) -> Fan2D {
        let mut rays = self.rays.clone();
        for i in 0..self.ray_count() {
            let j = (i + 1) % self.ray_count();
            rays.extend(subdivide_cone(&self.rays[i], &self.rays[j]));
        }
        Fan2D::new(rays).expect("refinement of a complete fan is complete")
    }

    /// Rays of `refined` that are not rays of `self`.
    pub fn inserted_rays<'a>(&self, refined: &'a Fan2D) -> Vec<&'a LatticeVector> {
        refined
            .rays
            .iter()
            .filter(|r| self.ray_index(r).is_none())
            .collect()
    }

    /// Locates the cone containing the nonzero vector `v` and returns
    /// `(i, alpha, beta)` with `v = alpha * ray[i] + beta * ray[i+1]`,
    /// `alpha, beta >= 0`. A vector parallel to a ray resolves to that ray
    /// (`beta = 0`).
    pub fn cone_coordinates(&self, v: &LatticeVector) -> Result<(usize, Rational, Rational)> {
        if v.is_zero() {
            return Err(Error::InvalidArgument(
                "cannot locate the zero vector in a fan".into(),
            ));
        }
        let n = self.ray_count();
        for i in 0..n {
            let j = (i + 1) % n;
            let from = self.rays[i].cross(v);
            if from.is_negative() {
                continue;
            }
            if from.is_zero() {
                // Parallel to ray i; primitivity gives v = t * ray with
                // t > 0 exactly when the dot product is positive.
                let t = parallel_multiple(&self.rays[i], v);
                if t.is_positive() {
                    return Ok((i, t, Rational::zero()));
                }
                continue;
            }
            let to = v.cross(&self.rays[j]);
            if to.is_positive() {
                let d = Rational::from_integer(self.det(i, j));
                let alpha = Rational::from_integer(to) / d.clone();
                let beta = Rational::from_integer(from) / d;
                return Ok((i, alpha, beta));
            }
        }
        unreachable!("a complete fan covers every nonzero vector")
    }
}

/// For `v` parallel to the primitive `ray`, the rational `t` with
/// `v = t * ray`.
fn parallel_multiple(ray: &LatticeVector, v: &LatticeVector) -> Rational {
    if ray.x().is_zero() {
        Rational::new(v.y().clone(), ray.y().clone())
    } else {
        Rational::new(v.x().clone(), ray.x().clone())
    }
}

/// Hirzebruch-Jung rays strictly inside the cone spanned by the adjacent
/// primitive pair `(u, w)` (counterclockwise, `det(u, w) > 0`).
///
/// While `d = det(u, w) > 1`, there is a unique primitive `m` inside the
/// cone with `det(u, m) = 1` and `det(m, w) = d' in [1, d-1]`; the cone
/// `(u, m)` is then smooth and the subdivision recurses on `(m, w)`. The
/// value `d' = d` is impossible: writing `m = (d'*u + w)/d`, integrality
/// would force `d` to divide the primitive vector `w`.
fn subdivide_cone(u: &LatticeVector, w: &LatticeVector) -> Vec<LatticeVector> {
    let mut inserted = Vec::new();
    let mut u = u.clone();
    loop {
        let d = u.cross(w);
        assert!(d.is_positive(), "cone is not convex");
        if d.is_one() {
            return inserted;
        }
        // Solve det(u, x0) = u.x * t - u.y * s = 1 by the extended gcd.
        let ext = u.x().extended_gcd(&(-u.y()));
        assert!(ext.gcd.is_one(), "ray generator is primitive");
        let x0 = LatticeVector::new(vec![ext.y.clone(), ext.x.clone()]).unwrap();
        debug_assert!(u.cross(&x0).is_one());
        // Shift by a multiple of u so that det(m, w) lands in [1, d].
        let r = x0.cross(w);
        let shift = (&d - &r).div_floor(&d);
        let m = LatticeVector::new(vec![x0.x() + &shift * u.x(), x0.y() + &shift * u.y()]).unwrap();
        let dm = m.cross(w);
        assert!(dm.is_positive() && dm < d, "subdivision must make progress");
        inserted.push(m.clone());
        u = m;
    }
}

/// A fan together with one rational coefficient per ray: the values of a
/// piecewise linear support function on the ray generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorOnFan {
    fan: Fan2D,
    coefficients: Vec<Rational>,
}

impl DivisorOnFan {
    pub fn new(fan: Fan2D, coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.len() != fan.ray_count() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a fan with {} rays",
                coefficients.len(),
                fan.ray_count()
            )));
        }
        Ok(DivisorOnFan { fan, coefficients })
    }

    pub fn fan(&self) -> &Fan2D {
        &self.fan
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, ray: usize) -> &Rational {
        &self.coefficients[ray]
    }

    /// Evaluates the support function at a nonzero vector by linear
    /// extension on the cone containing it.
    pub fn support_eval(&self, v: &LatticeVector) -> Result<Rational> {
        let (i, alpha, beta) = self.fan.cone_coordinates(v)?;
        let j = (i + 1) % self.fan.ray_count();
        Ok(alpha * &self.coefficients[i] + beta * &self.coefficients[j])
    }
}

/// The outer normal fan of a polytope: one primitive outward normal per
/// edge.
pub fn normal_fan(omega: &RationalPolytope) -> Fan2D {
    Fan2D::new(omega.edge_normals()).expect("normal fan of a full-dimensional polytope")
}

/// The divisor on `fan` whose coefficients are the support values of
/// `omega`. When `fan` refines the normal fan of `omega`, the associated
/// support function agrees with the support function of the polytope
/// everywhere.
pub fn omega_divisor(fan: &Fan2D, omega: &RationalPolytope) -> DivisorOnFan {
    let coefficients = fan.rays().iter().map(|r| omega.support_value(r)).collect();
    DivisorOnFan::new(fan.clone(), coefficients).expect("one coefficient per ray")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::testutil::*;
    use crate::rational::{int, ratio};

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::xy(x, y)
    }

    fn fan_of(rays: &[(i64, i64)]) -> Fan2D {
        Fan2D::new(rays.iter().map(|&(x, y)| v(x, y)).collect()).unwrap()
    }

    #[test]
    fn primitive_directions() {
        assert_eq!(primitive(&v(4, 2)).unwrap(), v(2, 1));
        assert_eq!(primitive(&v(0, -3)).unwrap(), v(0, -1));
        assert_eq!(primitive(&v(5, 3)).unwrap(), v(5, 3));
        assert_eq!(primitive(&v(-6, -4)).unwrap(), v(-3, -2));
        assert!(primitive(&v(0, 0)).is_err());
    }

    #[test]
    fn normal_fans_of_examples() {
        assert_eq!(
            normal_fan(&unit_square()).rays(),
            &[v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]
        );
        assert_eq!(
            normal_fan(&unit_triangle()).rays(),
            &[v(1, 1), v(-1, 0), v(0, -1)]
        );
        assert_eq!(
            normal_fan(&omega4()).rays(),
            &[v(4, 1), v(0, 1), v(-1, 0), v(0, -1)]
        );
    }

    #[test]
    fn fan_constructor_validates() {
        // Not complete: all rays in a halfplane.
        assert!(Fan2D::new(vec![v(1, 0), v(0, 1), v(1, 1)]).is_err());
        assert!(Fan2D::new(vec![v(1, 0), v(-1, 0)]).is_err());
        // Canonicalization: non-primitive input, duplicates, any order.
        let f = Fan2D::new(vec![v(0, -2), v(2, 0), v(0, 1), v(-3, 0), v(1, 0)]).unwrap();
        assert_eq!(f.rays(), &[v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]);
    }

    #[test]
    fn smoothness() {
        assert!(normal_fan(&unit_square()).is_smooth());
        assert!(normal_fan(&unit_triangle()).is_smooth());
        // Weighted projective plane P(1,1,2): dets 2 on the top-left cone.
        assert!(!fan_of(&[(-1, 0), (1, 2), (0, -1)]).is_smooth());
        // det((4,1),(0,1)) = 4.
        assert!(!normal_fan(&omega4()).is_smooth());
    }

    #[test]
    fn p112_resolves_with_one_ray() {
        let fan = fan_of(&[(-1, 0), (1, 2), (0, -1)]);
        let refined = fan.refine_smooth();
        assert!(refined.is_smooth());
        assert_eq!(fan.inserted_rays(&refined), vec![&v(0, 1)]);
    }

    #[test]
    fn omega4_resolution() {
        let fan = normal_fan(&omega4());
        let refined = fan.refine_smooth();
        assert!(refined.is_smooth());
        let inserted: Vec<_> = fan.inserted_rays(&refined).into_iter().cloned().collect();
        assert_eq!(inserted, vec![v(1, 0), v(3, 1), v(2, 1), v(1, 1)]);
        assert_eq!(
            refined.rays(),
            &[
                v(1, 0),
                v(4, 1),
                v(3, 1),
                v(2, 1),
                v(1, 1),
                v(0, 1),
                v(-1, 0),
                v(0, -1)
            ]
        );
    }

    #[test]
    fn refinement_is_idempotent_and_minimal() {
        for fan in [
            normal_fan(&unit_square()),
            normal_fan(&omega4()),
            fan_of(&[(-1, 0), (1, 2), (0, -1)]),
            fan_of(&[(1, 0), (2, 5), (-1, 0), (0, -1)]),
            fan_of(&[(3, 7), (-1, 0), (0, -1)]),
        ] {
            let refined = fan.refine_smooth();
            assert!(refined.is_smooth());
            assert!(refined.refines(&fan));
            assert_eq!(refined.refine_smooth(), refined);
            // Minimality: dropping any inserted ray breaks smoothness.
            for dropped in fan.inserted_rays(&refined) {
                let rays: Vec<_> = refined
                    .rays()
                    .iter()
                    .filter(|r| *r != dropped)
                    .cloned()
                    .collect();
                assert!(!Fan2D::new(rays).unwrap().is_smooth());
            }
        }
    }

    #[test]
    fn refinement_of_strongly_convex_stays_strongly_convex() {
        for fan in [
            normal_fan(&omega4()),
            fan_of(&[(1, 0), (2, 5), (-1, 0), (0, -1)]),
            fan_of(&[(5, 2), (1, 4), (-1, 0), (0, -1)]),
        ] {
            assert!(fan.is_strongly_convex());
            assert!(fan.refine_smooth().is_strongly_convex());
        }
    }

    #[test]
    fn normal_fan_is_scale_invariant() {
        let omega = omega4();
        let scaled = omega.scale(&ratio(5, 3)).unwrap();
        assert_eq!(normal_fan(&omega), normal_fan(&scaled));
    }

    #[test]
    fn support_eval_examples() {
        // Square with A_Omega coefficients (1, 1, 0, 0).
        let d = omega_divisor(&normal_fan(&unit_square()), &unit_square());
        assert_eq!(d.support_eval(&v(1, 1)).unwrap(), int(2));
        assert!(d.support_eval(&v(0, 0)).is_err());

        // Omega_4 fan, v = (2,1) lands in the singular cone ((4,1),(0,1)):
        // (2,1) = 1/2 (4,1) + 1/2 (0,1).
        let d = omega_divisor(&normal_fan(&omega4()), &omega4());
        assert_eq!(d.support_eval(&v(2, 1)).unwrap(), ratio(5, 2));
        assert_eq!(d.support_eval(&v(2, 1)).unwrap(), omega4().support_value(&v(2, 1)));

        // A ray evaluates to its own coefficient.
        for (ray, coeff) in d.fan().rays().iter().zip(d.coefficients()) {
            assert_eq!(&d.support_eval(ray).unwrap(), coeff);
        }
        // And so does any positive multiple of a ray.
        assert_eq!(
            d.support_eval(&v(8, 2)).unwrap(),
            int(2) * d.coefficient(0)
        );
    }

    #[test]
    fn support_eval_matches_polytope_support_everywhere() {
        let omega = omega4();
        let fan = normal_fan(&omega).refine_smooth();
        let d = omega_divisor(&fan, &omega);
        for x in -5i64..=5 {
            for y in -5i64..=5 {
                if x == 0 && y == 0 {
                    continue;
                }
                assert_eq!(
                    d.support_eval(&v(x, y)).unwrap(),
                    omega.support_value(&v(x, y)),
                    "mismatch at ({x},{y})"
                );
            }
        }
    }

    #[test]
    fn divisor_length_mismatch_is_rejected() {
        let fan = normal_fan(&unit_square());
        assert!(DivisorOnFan::new(fan, vec![int(1)]).is_err());
    }
}
