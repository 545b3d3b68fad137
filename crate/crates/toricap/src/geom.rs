//! Exact planar geometry for moment domains.
//!
//! [`RationalPolytope`] is a full-dimensional convex polygon with rational
//! vertices, stored counterclockwise starting from the lexicographically
//! smallest vertex. The constructor canonicalizes arbitrary input (dedupe,
//! convex hull, drop collinear points) and rejects anything with zero area,
//! so every value of the type satisfies the invariants.
//!
//! [`VertexDomain`] is the minimal n-dimensional counterpart (a bare vertex
//! set with support values and axis widths) used by the brute-force oracle
//! in dimension 3 and by the Gutt-Hutchings enumeration up to dimension 4.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An integer vector in `Z^n`, `n >= 2`.
///
/// Coordinates are arbitrary precision. The zero vector is representable;
/// operations that need a direction reject it explicitly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "lattice vector needs dimension >= 2, got {}",
                coords.len()
            )));
        }
        Ok(LatticeVector(coords))
    }

    /// 2D convenience constructor.
    pub fn xy(x: i64, y: i64) -> Self {
        LatticeVector(vec![BigInt::from(x), BigInt::from(y)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn x(&self) -> &BigInt {
        &self.0[0]
    }

    pub fn y(&self) -> &BigInt {
        &self.0[1]
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        LatticeVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `x1*y2 - y1*x2`, for 2D vectors.
    pub fn cross(&self, other: &Self) -> BigInt {
        assert_eq!(self.dim(), 2);
        assert_eq!(other.dim(), 2);
        self.x() * other.y() - self.y() * other.x()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Exact pairing with a rational point of the same dimension.
    pub fn dot(&self, point: &[Rational]) -> Rational {
        assert_eq!(self.dim(), point.len());
        self.0
            .iter()
            .zip(point)
            .map(|(c, p)| p * Rational::from_integer(c.clone()))
            .sum()
    }

    /// Angular sector of a nonzero 2D vector, counterclockwise from the
    /// positive x-axis: 0 = +x axis, 1 = open first quadrant, 2 = +y axis,
    /// and so on through 7.
    fn sector(&self) -> u8 {
        assert_eq!(self.dim(), 2);
        assert!(!self.is_zero());
        let (xs, ys) = (self.x().sign(), self.y().sign());
        use num_bigint::Sign::*;
        match (xs, ys) {
            (Plus, NoSign) => 0,
            (Plus, Plus) => 1,
            (NoSign, Plus) => 2,
            (Minus, Plus) => 3,
            (Minus, NoSign) => 4,
            (Minus, Minus) => 5,
            (NoSign, Minus) => 6,
            (Plus, Minus) => 7,
            (NoSign, NoSign) => unreachable!(),
        }
    }

    /// Exact counterclockwise angle comparison of nonzero 2D vectors,
    /// starting at the positive x-axis. Parallel vectors compare equal.
    pub fn cmp_ccw(&self, other: &Self) -> Ordering {
        match self.sector().cmp(&other.sector()) {
            Ordering::Equal => {
                let c = self.cross(other);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
            ord => ord,
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Axis widths of a moment domain: `a = max {x : (x,0) in domain}` and
/// `b = max {y : (0,y) in domain}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Widths {
    pub a: Rational,
    pub b: Rational,
}

/// A full-dimensional convex polygon with exact rational vertices, in
/// counterclockwise order starting from the lexicographically smallest
/// vertex. Every vertex is an extreme point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    vertices: Vec<[Rational; 2]>,
}

fn orient(p: &[Rational; 2], q: &[Rational; 2], r: &[Rational; 2]) -> Rational {
    (&q[0] - &p[0]) * (&r[1] - &p[1]) - (&q[1] - &p[1]) * (&r[0] - &p[0])
}

impl RationalPolytope {
    /// Builds the polygon from an arbitrary list of points: duplicates are
    /// dropped, the convex hull is taken, collinear boundary points are
    /// removed. Input whose hull has zero area is rejected.
    pub fn new(points: Vec<[Rational; 2]>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidDomain("empty vertex list".into()));
        }
        let mut points = points;
        points.sort();
        points.dedup();
        if points.len() < 3 {
            return Err(Error::DegenerateDomain(
                "fewer than 3 distinct vertices".into(),
            ));
        }
        // Andrew's monotone chain; popping on orient <= 0 keeps only
        // extreme points.
        let mut lower: Vec<[Rational; 2]> = Vec::new();
        for p in &points {
            while lower.len() >= 2
                && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<[Rational; 2]> = Vec::new();
        for p in points.iter().rev() {
            while upper.len() >= 2
                && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return Err(Error::DegenerateDomain("vertex set has zero area".into()));
        }
        Ok(RationalPolytope { vertices: lower })
    }

    /// Skips canonicalization; callers must supply vertices already in
    /// canonical form (used by operations that preserve the invariants).
    fn from_canonical(vertices: Vec<[Rational; 2]>) -> Self {
        RationalPolytope { vertices }
    }

    pub fn vertices(&self) -> &[[Rational; 2]] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        2
    }

    /// Edges as (tail, head) pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&[Rational; 2], &[Rational; 2])> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> Rational {
        let two = Rational::from_integer(BigInt::from(2));
        self.edges()
            .map(|(p, q)| &p[0] * &q[1] - &p[1] * &q[0])
            .sum::<Rational>()
            / two
    }

    /// The support value `max over vertices u of <u, v>`. Attained at a
    /// vertex, so a finite scan is exact.
    pub fn support_value(&self, v: &LatticeVector) -> Rational {
        assert_eq!(v.dim(), 2, "support_value expects a 2D direction");
        self.vertices
            .iter()
            .map(|u| v.dot(u))
            .max()
            .expect("polytope has vertices")
    }

    fn min_coord(&self, axis: usize) -> Rational {
        self.vertices
            .iter()
            .map(|u| u[axis].clone())
            .min()
            .expect("polytope has vertices")
    }

    pub fn in_nonnegative_orthant(&self) -> bool {
        self.vertices
            .iter()
            .all(|u| !u[0].is_negative() && !u[1].is_negative())
    }

    pub fn contains_point(&self, p: &[Rational; 2]) -> bool {
        self.edges()
            .all(|(a, b)| !orient(a, b, p).is_negative())
    }

    /// Vertex containment test; by convexity this decides inclusion.
    pub fn contains(&self, other: &RationalPolytope) -> bool {
        other.vertices.iter().all(|p| self.contains_point(p))
    }

    pub fn contains_origin(&self) -> bool {
        let zero = [Rational::zero(), Rational::zero()];
        self.contains_point(&zero)
    }

    /// Exact axis widths. Requires a moment domain: contained in the
    /// nonnegative quadrant with `0` in the polygon.
    pub fn widths(&self) -> Result<Widths> {
        if !self.in_nonnegative_orthant() {
            return Err(Error::InvalidDomain(
                "domain leaves the nonnegative quadrant".into(),
            ));
        }
        if !self.contains_origin() {
            return Err(Error::InvalidDomain("domain does not contain 0".into()));
        }
        // Inside the quadrant the intersection with an axis is a face, so
        // the width is attained at a vertex lying on that axis.
        let a = self
            .vertices
            .iter()
            .filter(|u| u[1].is_zero())
            .map(|u| u[0].clone())
            .max()
            .unwrap_or_else(Rational::zero);
        let b = self
            .vertices
            .iter()
            .filter(|u| u[0].is_zero())
            .map(|u| u[1].clone())
            .max()
            .unwrap_or_else(Rational::zero);
        Ok(Widths { a, b })
    }

    /// Outward primitive normal of the edge `(p, q)`.
    fn edge_normal(p: &[Rational; 2], q: &[Rational; 2]) -> LatticeVector {
        // Rotate the edge vector by -90 degrees, then clear denominators.
        let nx = &q[1] - &p[1];
        let ny = &p[0] - &q[0];
        let scale = nx.denom().lcm(ny.denom());
        let ix = (nx * Rational::from_integer(scale.clone())).to_integer();
        let iy = (ny * Rational::from_integer(scale)).to_integer();
        let g = ix.gcd(&iy);
        LatticeVector(vec![ix / &g, iy / &g])
    }

    /// Outward primitive edge normals in counterclockwise edge order.
    pub fn edge_normals(&self) -> Vec<LatticeVector> {
        self.edges().map(|(p, q)| Self::edge_normal(p, q)).collect()
    }

    /// Fan criterion for strong convexity: the domain sits in the
    /// nonnegative quadrant, touches both axes, and every outward edge
    /// normal is `-e1`, `-e2`, or has both coordinates nonnegative.
    pub fn is_strongly_convex(&self) -> bool {
        if !self.in_nonnegative_orthant() {
            return false;
        }
        if !self.min_coord(0).is_zero() || !self.min_coord(1).is_zero() {
            return false;
        }
        self.edge_normals().iter().all(|n| {
            *n == LatticeVector::xy(-1, 0) || *n == LatticeVector::xy(0, -1) || n.is_nonnegative()
        })
    }

    /// Weak convexity, interpreted relative to the quadrant: the domain
    /// contains `0` together with segments of positive length on both axes.
    pub fn is_weakly_convex(&self) -> bool {
        if !self.in_nonnegative_orthant() || !self.contains_origin() {
            return false;
        }
        match self.widths() {
            Ok(w) => w.a.is_positive() && w.b.is_positive(),
            Err(_) => false,
        }
    }

    /// Scales every vertex by `c > 0`.
    pub fn scale(&self, c: &Rational) -> Result<RationalPolytope> {
        if !c.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be positive, got {c}"
            )));
        }
        // Positive scaling preserves hull, orientation and starting vertex.
        Ok(RationalPolytope::from_canonical(
            self.vertices
                .iter()
                .map(|u| [&u[0] * c, &u[1] * c])
                .collect(),
        ))
    }

    pub fn to_vertex_domain(&self) -> VertexDomain {
        VertexDomain {
            vertices: self.vertices.iter().map(|u| u.to_vec()).collect(),
            dim: 2,
        }
    }
}

/// A bare exact vertex set in the nonnegative orthant of `R^n`,
/// `2 <= n <= 4`. Supports just what the n-dimensional solvers need:
/// support values and axis widths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexDomain {
    vertices: Vec<Vec<Rational>>,
    dim: usize,
}

impl VertexDomain {
    pub fn new(vertices: Vec<Vec<Rational>>, dim: usize) -> Result<Self> {
        if !(2..=4).contains(&dim) {
            return Err(Error::InvalidDomain(format!(
                "vertex domain supports dimension 2..=4, got {dim}"
            )));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidDomain("empty vertex list".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::InvalidDomain(format!(
                    "vertex of length {} in dimension {dim}",
                    v.len()
                )));
            }
            if v.iter().any(|c| c.is_negative()) {
                return Err(Error::InvalidDomain(
                    "vertex leaves the nonnegative orthant".into(),
                ));
            }
        }
        Ok(VertexDomain { vertices, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn support_value(&self, v: &LatticeVector) -> Rational {
        assert_eq!(v.dim(), self.dim);
        self.vertices
            .iter()
            .map(|u| v.dot(u))
            .max()
            .expect("domain has vertices")
    }

    /// In the nonnegative orthant the axis is a face of the orthant, so
    /// the axis reach is attained at a vertex supported on that axis.
    pub fn axis_width(&self, axis: usize) -> Rational {
        assert!(axis < self.dim);
        self.vertices
            .iter()
            .filter(|u| {
                u.iter()
                    .enumerate()
                    .all(|(i, c)| i == axis || c.is_zero())
            })
            .map(|u| u[axis].clone())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn contains_origin(&self) -> bool {
        self.vertices.iter().any(|u| u.iter().all(|c| c.is_zero()))
    }

    /// Contains `0` and a positive segment on every axis.
    pub fn is_weakly_convex(&self) -> bool {
        self.contains_origin() && (0..self.dim).all(|i| self.axis_width(i).is_positive())
    }
}
