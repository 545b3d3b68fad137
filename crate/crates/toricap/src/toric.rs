//! Curve classes on a smooth toric surface.
//!
//! A [`CurveClass`] is a nonnegative multiplicity vector over the rays of a
//! fan, constrained to the kernel of the ray map (`sum a_rho * v_rho = 0`).
//! Classes are anchored to their fan; mixing classes or divisors from
//! different fans is rejected rather than coerced.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fan::{DivisorOnFan, Fan2D};
use crate::geom::LatticeVector;
use crate::rational::Rational;

/// A nonnegative ray-multiplicity vector in the kernel of the ray map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass {
    fan: Fan2D,
    multiplicities: Vec<u64>,
}

impl CurveClass {
    /// Validates the kernel condition exactly.
    pub fn new(fan: Fan2D, multiplicities: Vec<u64>) -> Result<Self> {
        if multiplicities.len() != fan.ray_count() {
            return Err(Error::InvalidArgument(format!(
                "{} multiplicities for a fan with {} rays",
                multiplicities.len(),
                fan.ray_count()
            )));
        }
        let mut sum = (BigInt::zero(), BigInt::zero());
        for (ray, &m) in fan.rays().iter().zip(&multiplicities) {
            sum.0 += ray.x() * m;
            sum.1 += ray.y() * m;
        }
        if !sum.0.is_zero() || !sum.1.is_zero() {
            return Err(Error::InvalidArgument(
                "multiplicity vector is not in the kernel of the ray map".into(),
            ));
        }
        Ok(CurveClass {
            fan,
            multiplicities,
        })
    }

    /// Builds a class from (ray, multiplicity) pairs; absent rays get 0.
    pub fn from_pairs(fan: Fan2D, pairs: &[(LatticeVector, u64)]) -> Result<Self> {
        let mut multiplicities = vec![0u64; fan.ray_count()];
        for (ray, m) in pairs {
            match fan.ray_index(ray) {
                Some(i) => multiplicities[i] += m,
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "{ray} is not a ray of the fan"
                    )))
                }
            }
        }
        CurveClass::new(fan, multiplicities)
    }

    pub fn fan(&self) -> &Fan2D {
        &self.fan
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 0)
    }

    pub fn add(&self, other: &CurveClass) -> Result<CurveClass> {
        if self.fan != other.fan {
            return Err(Error::InvalidArgument(
                "cannot add curve classes on different fans".into(),
            ));
        }
        let multiplicities = self
            .multiplicities
            .iter()
            .zip(&other.multiplicities)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CurveClass {
            fan: self.fan.clone(),
            multiplicities,
        })
    }

    /// Pairing with a divisor on the same fan: `sum a_rho * phi(v_rho)`.
    pub fn intersect_divisor(&self, divisor: &DivisorOnFan) -> Result<Rational> {
        if *divisor.fan() != self.fan {
            return Err(Error::InvalidArgument(
                "divisor lives on a different fan".into(),
            ));
        }
        Ok(self
            .multiplicities
            .iter()
            .zip(divisor.coefficients())
            .map(|(&m, c)| c * Rational::from_integer(BigInt::from(m)))
            .sum())
    }

    /// Pairing with the anticanonical divisor: the sum of multiplicities.
    pub fn anticanonical_degree(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    /// Writes the class as a nonnegative combination of the cocharacter
    /// classes of the positive-quadrant rays: `b_rho = a_rho` there, with
    /// the leftover forced onto `-e1` and `-e2`. Returns the pairs
    /// `(ray index, b_rho)` for the positive rays, in fan order.
    pub fn movable_decompose(&self) -> Result<Vec<(usize, u64)>> {
        if !self.fan.is_smooth() {
            return Err(Error::UnsupportedFan(
                "movable decomposition needs a smooth fan".into(),
            ));
        }
        if !self.fan.is_strongly_convex() {
            return Err(Error::UnsupportedFan(
                "movable decomposition needs a strongly convex fan".into(),
            ));
        }
        let decomposition: Vec<(usize, u64)> = self
            .fan
            .positive_ray_indices()
            .into_iter()
            .map(|i| (i, self.multiplicities[i]))
            .filter(|&(_, b)| b > 0)
            .collect();
        // Recompose and require an exact match on the negative rays.
        let mut recomposed = CurveClass {
            fan: self.fan.clone(),
            multiplicities: vec![0; self.fan.ray_count()],
        };
        for &(i, b) in &decomposition {
            let relation = cocharacter_relation(&self.fan, &self.fan.rays()[i])?;
            for (slot, entry) in recomposed
                .multiplicities
                .iter_mut()
                .zip(&relation.entries)
            {
                *slot += b * entry;
            }
        }
        if recomposed.multiplicities != self.multiplicities {
            return Err(Error::NotMovable(
                "class is not a nonnegative combination of positive cocharacters".into(),
            ));
        }
        Ok(decomposition)
    }

    /// `Some((j, m))` when the class is supported exactly on `{e_j, -e_j}`
    /// with equal multiplicity `m`; the axis `j` is 1-based.
    pub fn fiber_multiple(&self) -> Option<(usize, u64)> {
        for (j, axis) in [LatticeVector::xy(1, 0), LatticeVector::xy(0, 1)]
            .iter()
            .enumerate()
        {
            let pos = self.fan.ray_index(axis)?;
            let neg = self.fan.ray_index(&axis.neg())?;
            let m = self.multiplicities[pos];
            if m > 0
                && self.multiplicities[neg] == m
                && self
                    .multiplicities
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| a == 0 || i == pos || i == neg)
            {
                return Some((j + 1, m));
            }
        }
        None
    }

    /// The (possibly degenerate) convex lattice polygon whose edge of
    /// lattice length `a_rho` is orthogonal to `v_rho`, traversed in
    /// counterclockwise normal order. The edge cycle closes by the kernel
    /// condition. The affine perimeter and the `omega`-length of the
    /// boundary are recomputed from the traversed edges and checked
    /// against the intersection numbers of the class.
    pub fn polygon(&self, omega_divisor: &DivisorOnFan) -> Result<ClassPolygon> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "the zero class has no polygon".into(),
            ));
        }
        if *omega_divisor.fan() != self.fan {
            return Err(Error::InvalidArgument(
                "divisor lives on a different fan".into(),
            ));
        }
        // Fan rays are already in counterclockwise angular order.
        let mut path = vec![(BigInt::zero(), BigInt::zero())];
        let mut affine_perimeter = BigInt::zero();
        let mut omega_length = Rational::zero();
        for (i, ray) in self.fan.rays().iter().enumerate() {
            let m = self.multiplicities[i];
            if m == 0 {
                continue;
            }
            // Edge direction: outward normal rotated +90 degrees.
            let step_x = -(ray.y() * m);
            let step_y = ray.x() * m;
            let (last_x, last_y) = path.last().cloned().unwrap();
            path.push((last_x + &step_x, last_y + &step_y));
            // Lattice length and normal recomputed from the edge itself.
            let edge = LatticeVector::new(vec![step_x, step_y]).unwrap();
            let length = gcd_abs(&edge);
            let normal = LatticeVector::new(vec![edge.y().clone(), -edge.x()]).unwrap();
            let normal = crate::fan::primitive(&normal)?;
            affine_perimeter += &length;
            omega_length += omega_divisor.support_eval(&normal)?
                * Rational::from_integer(length);
        }
        let closed = path.pop().unwrap();
        if !closed.0.is_zero() || !closed.1.is_zero() {
            return Err(Error::InvalidArgument(
                "edge cycle does not close; class is not in the kernel".into(),
            ));
        }
        // Translate into the nonnegative quadrant touching both axes.
        let min_x = path.iter().map(|(x, _)| x.clone()).min().unwrap();
        let min_y = path.iter().map(|(_, y)| y.clone()).min().unwrap();
        let vertices: Vec<[BigInt; 2]> = path
            .into_iter()
            .map(|(x, y)| [x - &min_x, y - &min_y])
            .collect();
        let degenerate = vertices.len() < 3;

        let affine_perimeter = affine_perimeter
            .to_u64()
            .expect("perimeter fits in u64 for u64 multiplicities");
        if affine_perimeter != self.anticanonical_degree() {
            return Err(Error::Verification(
                "affine perimeter does not match the anticanonical degree".into(),
            ));
        }
        if omega_length != self.intersect_divisor(omega_divisor)? {
            return Err(Error::Verification(
                "omega length does not match the divisor pairing".into(),
            ));
        }
        Ok(ClassPolygon {
            vertices,
            affine_perimeter,
            omega_length,
            degenerate,
        })
    }
}

fn gcd_abs(v: &LatticeVector) -> BigInt {
    use num_integer::Integer;
    v.x().gcd(v.y())
}

/// The boundary polygon of a curve class, with its two boundary measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPolygon {
    /// Lattice vertices in counterclockwise order (two points for a
    /// degenerate segment), translated to touch both axes.
    pub vertices: Vec<[BigInt; 2]>,
    /// Total lattice length of the boundary.
    pub affine_perimeter: u64,
    /// Total `omega`-weighted length of the boundary.
    pub omega_length: Rational,
    pub degenerate: bool,
}

/// The curve class of the closure of the one-parameter subgroup `u`:
/// `u` is decomposed over the rays of its cone, `-u` over the rays of its
/// cone, and the two nonnegative coefficient vectors are added. On a
/// smooth fan the coefficients are integers.
///
/// When the two cones share a ray the entries accumulate, matching the
/// total intersection multiplicity of the curve with that ray's divisor;
/// with this convention the pairing identity
/// `R_u . D = phi_D(u) + phi_D(-u)` holds for every primitive `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterRelation {
    fan: Fan2D,
    u: LatticeVector,
    entries: Vec<u64>,
}

pub fn cocharacter_relation(fan: &Fan2D, u: &LatticeVector) -> Result<CocharacterRelation> {
    if !fan.is_smooth() {
        return Err(Error::UnsupportedFan(
            "cocharacter relations need a smooth fan".into(),
        ));
    }
    if u.is_zero() {
        return Err(Error::InvalidArgument("zero cocharacter".into()));
    }
    if crate::fan::primitive(u)? != *u {
        return Err(Error::InvalidArgument(format!(
            "cocharacter {u} is not primitive"
        )));
    }
    let mut entries = vec![0u64; fan.ray_count()];
    for direction in [u.clone(), u.neg()] {
        let (i, alpha, beta) = fan.cone_coordinates(&direction)?;
        let j = (i + 1) % fan.ray_count();
        entries[i] += rational_to_u64(&alpha)?;
        entries[j] += rational_to_u64(&beta)?;
    }
    Ok(CocharacterRelation {
        fan: fan.clone(),
        u: u.clone(),
        entries,
    })
}

fn rational_to_u64(value: &Rational) -> Result<u64> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::UnsupportedFan(
            "cone coordinates are not nonnegative integers; fan is not smooth".into(),
        ));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("cocharacter entry overflows u64".into()))
}

impl CocharacterRelation {
    pub fn fan(&self) -> &Fan2D {
        &self.fan
    }

    pub fn cocharacter(&self) -> &LatticeVector {
        &self.u
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Nonzero entries as (ray, multiplicity) pairs.
    pub fn support(&self) -> Vec<(&LatticeVector, u64)> {
        self.fan
            .rays()
            .iter()
            .zip(&self.entries)
            .filter(|(_, &e)| e > 0)
            .map(|(r, &e)| (r, e))
            .collect()
    }

    pub fn to_curve_class(&self) -> CurveClass {
        CurveClass::new(self.fan.clone(), self.entries.clone())
            .expect("cocharacter relations satisfy the kernel condition")
    }

    pub fn intersect_divisor(&self, divisor: &DivisorOnFan) -> Result<Rational> {
        self.to_curve_class().intersect_divisor(divisor)
    }

    pub fn anticanonical_degree(&self) -> u64 {
        self.entries.iter().sum()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (ray, &m) in self.fan.rays().iter().zip(&self.multiplicities) {
            if m == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "C{ray}")?;
            } else {
                write!(f, "{m} C{ray}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{normal_fan, omega_divisor};
    use crate::geom::testutil::*;
    use crate::rational::{int, ratio};

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::xy(x, y)
    }

    fn square_fan() -> Fan2D {
        normal_fan(&unit_square())
    }

    fn omega4_refined() -> Fan2D {
        normal_fan(&omega4()).refine_smooth()
    }

    fn class(fan: &Fan2D, pairs: &[((i64, i64), u64)]) -> CurveClass {
        CurveClass::from_pairs(
            fan.clone(),
            &pairs
                .iter()
                .map(|&((x, y), m)| (v(x, y), m))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_condition_is_enforced() {
        let fan = square_fan();
        assert!(CurveClass::from_pairs(fan.clone(), &[(v(1, 0), 1)]).is_err());
        assert!(CurveClass::from_pairs(fan.clone(), &[(v(1, 0), 1), (v(-1, 0), 1)]).is_ok());
        assert!(CurveClass::from_pairs(fan, &[(v(1, 1), 1)]).is_err());
    }

    #[test]
    fn cocharacter_relations_on_examples() {
        let fan = square_fan();
        let r = cocharacter_relation(&fan, &v(1, 0)).unwrap();
        assert_eq!(r.support(), vec![(&v(1, 0), 1), (&v(-1, 0), 1)]);

        let fan = omega4_refined();
        let r = cocharacter_relation(&fan, &v(1, 1)).unwrap();
        assert_eq!(
            r.support(),
            vec![(&v(1, 1), 1), (&v(-1, 0), 1), (&v(0, -1), 1)]
        );
        assert_eq!(r.anticanonical_degree(), 3);

        let r = cocharacter_relation(&fan, &v(4, 1)).unwrap();
        assert_eq!(
            r.support(),
            vec![(&v(4, 1), 1), (&v(-1, 0), 4), (&v(0, -1), 1)]
        );
        assert_eq!(r.anticanonical_degree(), 6);
    }

    #[test]
    fn cocharacter_requires_smooth_primitive() {
        let singular = normal_fan(&omega4());
        assert!(matches!(
            cocharacter_relation(&singular, &v(1, 1)),
            Err(Error::UnsupportedFan(_))
        ));
        let fan = square_fan();
        assert!(cocharacter_relation(&fan, &v(2, 2)).is_err());
        assert!(cocharacter_relation(&fan, &v(0, 0)).is_err());
    }

    #[test]
    fn intersection_numbers() {
        let fan = square_fan();
        let a = omega_divisor(&fan, &unit_square());
        let r = cocharacter_relation(&fan, &v(1, 0)).unwrap();
        assert_eq!(r.intersect_divisor(&a).unwrap(), int(1));

        let fan = omega4_refined();
        let a = omega_divisor(&fan, &omega4());
        let r = cocharacter_relation(&fan, &v(1, 1)).unwrap();
        assert_eq!(r.intersect_divisor(&a).unwrap(), ratio(7, 4));

        // Zero divisor pairs to zero.
        let zero = DivisorOnFan::new(fan.clone(), vec![int(0); fan.ray_count()]).unwrap();
        assert_eq!(r.intersect_divisor(&zero).unwrap(), int(0));

        // Mismatched fans are rejected.
        let other = omega_divisor(&square_fan(), &unit_square());
        assert!(r.intersect_divisor(&other).is_err());
    }

    #[test]
    fn intersection_is_bilinear() {
        let fan = omega4_refined();
        let a = omega_divisor(&fan, &omega4());
        let c1 = cocharacter_relation(&fan, &v(2, 1)).unwrap().to_curve_class();
        let c2 = cocharacter_relation(&fan, &v(0, 1)).unwrap().to_curve_class();
        let sum = c1.add(&c2).unwrap();
        assert_eq!(
            sum.intersect_divisor(&a).unwrap(),
            c1.intersect_divisor(&a).unwrap() + c2.intersect_divisor(&a).unwrap()
        );
    }

    #[test]
    fn area_identity_with_shared_ray() {
        // u = (2,1) on the fan of the triangle: the cones of u and -u share
        // the ray (0,-1); the additive convention keeps the identity exact.
        let fan = normal_fan(&unit_triangle());
        let a = omega_divisor(&fan, &unit_triangle());
        let u = v(2, 1);
        let r = cocharacter_relation(&fan, &u).unwrap();
        let expected = unit_triangle().support_value(&u)
            + unit_triangle().support_value(&u.neg());
        assert_eq!(r.intersect_divisor(&a).unwrap(), expected);
    }

    #[test]
    fn movable_decomposition_examples() {
        let fan = square_fan();
        let c = class(&fan, &[((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)]);
        let d = c.movable_decompose().unwrap();
        let named: Vec<_> = d.iter().map(|&(i, b)| (fan.rays()[i].clone(), b)).collect();
        assert_eq!(named, vec![(v(1, 0), 1), (v(0, 1), 1)]);

        let fan = omega4_refined();
        let c = class(&fan, &[((1, 1), 1), ((-1, 0), 1), ((0, -1), 1)]);
        let d = c.movable_decompose().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(fan.rays()[d[0].0], v(1, 1));
        assert_eq!(d[0].1, 1);

        let c = class(
            &fan,
            &[((1, 1), 1), ((0, 1), 1), ((-1, 0), 1), ((0, -1), 2)],
        );
        let named: Vec<_> = c
            .movable_decompose()
            .unwrap()
            .iter()
            .map(|&(i, b)| (fan.rays()[i].clone(), b))
            .collect();
        assert_eq!(named, vec![(v(1, 1), 1), (v(0, 1), 1)]);
    }

    #[test]
    fn decomposition_round_trips() {
        let fan = omega4_refined();
        let c = class(
            &fan,
            &[((2, 1), 2), ((1, 0), 1), ((0, 1), 3), ((-1, 0), 5), ((0, -1), 5)],
        );
        let decomposition = c.movable_decompose().unwrap();
        let mut rebuilt = CurveClass::new(fan.clone(), vec![0; fan.ray_count()]).unwrap();
        for (i, b) in decomposition {
            let r = cocharacter_relation(&fan, &fan.rays()[i]).unwrap();
            for _ in 0..b {
                rebuilt = rebuilt.add(&r.to_curve_class()).unwrap();
            }
        }
        assert_eq!(rebuilt, c);
    }

    #[test]
    fn fiber_detection() {
        let fan = square_fan();
        assert_eq!(class(&fan, &[((1, 0), 2), ((-1, 0), 2)]).fiber_multiple(), Some((1, 2)));
        assert_eq!(
            class(&fan, &[((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)]).fiber_multiple(),
            None
        );
        let fan = omega4_refined();
        assert_eq!(class(&fan, &[((0, 1), 3), ((0, -1), 3)]).fiber_multiple(), Some((2, 3)));
    }

    #[test]
    fn polygons_of_classes() {
        let fan = square_fan();
        let a = omega_divisor(&fan, &unit_square());
        let c = class(&fan, &[((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)]);
        let p = c.polygon(&a).unwrap();
        assert!(!p.degenerate);
        assert_eq!(p.affine_perimeter, 4);
        assert_eq!(p.omega_length, int(2));
        assert_eq!(p.vertices.len(), 4);

        // Degenerate: a single fiber pair gives a vertical segment.
        let c = class(&fan, &[((1, 0), 1), ((-1, 0), 1)]);
        let p = c.polygon(&a).unwrap();
        assert!(p.degenerate);
        assert_eq!(p.affine_perimeter, 2);
        assert_eq!(p.omega_length, int(1));
        assert_eq!(p.vertices.len(), 2);

        // The triangle class on the refined Omega_4 fan.
        let fan = omega4_refined();
        let a = omega_divisor(&fan, &omega4());
        let c = cocharacter_relation(&fan, &v(1, 1)).unwrap().to_curve_class();
        let p = c.polygon(&a).unwrap();
        assert_eq!(p.affine_perimeter, 3);
        assert_eq!(p.omega_length, ratio(7, 4));
        let unit = |x: i64, y: i64| [BigInt::from(x), BigInt::from(y)];
        assert_eq!(p.vertices, vec![unit(1, 0), unit(0, 1), unit(0, 0)]);

        // The zero class has no polygon.
        let zero = CurveClass::new(fan.clone(), vec![0; fan.ray_count()]).unwrap();
        assert!(zero.polygon(&a).is_err());
    }

    #[test]
    fn polygon_identities_match_intersections() {
        let fan = omega4_refined();
        let a = omega_divisor(&fan, &omega4());
        for u in [v(1, 1), v(4, 1), v(3, 1), v(1, 0), v(0, 1), v(5, 2), v(1, 3)] {
            let c = cocharacter_relation(&fan, &u).unwrap().to_curve_class();
            let p = c.polygon(&a).unwrap();
            assert_eq!(p.affine_perimeter, c.anticanonical_degree());
            assert_eq!(p.omega_length, c.intersect_divisor(&a).unwrap());
        }
    }
}
