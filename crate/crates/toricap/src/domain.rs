//! JSON domain specifications and their lowering to moment polytopes.
//!
//! Wire forms (all rationals are `"p"` / `"p/q"` strings):
//!
//! ```json
//! {"kind": "polytope", "vertices": [["0","0"],["1","0"],["0","1"]]}
//! {"kind": "example_r", "r": "4"}
//! {"kind": "ball", "capacity": "1"}
//! {"kind": "ellipsoid", "a": "1", "b": "2"}
//! {"kind": "polydisk", "a": "1", "b": "2"}
//! ```

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::RationalPolytope;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    /// Explicit vertex list; canonicalized on resolution.
    Polytope { vertices: Vec<[String; 2]> },
    /// The one-parameter family `conv{(0,0),(1,0),((r-1)/r,1),(0,1)}`,
    /// `r >= 1`. Equal axis widths, so its capacity intervals collapse.
    ExampleR { r: String },
    /// Moment simplex of the round ball: `conv{0,(c,0),(0,c)}`.
    Ball { capacity: String },
    /// Moment simplex of an ellipsoid: `conv{0,(a,0),(0,b)}`.
    Ellipsoid { a: String, b: String },
    /// Moment box of a polydisk: `[0,a] x [0,b]`.
    Polydisk { a: String, b: String },
}

/// Parses a domain file, keeping serde's line/column context in the error.
pub fn parse_domain(text: &str) -> Result<DomainSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("domain spec: {e}")))
}

fn positive(name: &str, text: &str) -> Result<Rational> {
    let value = parse_rational(text)?;
    if !value.is_positive() {
        return Err(Error::InvalidDomain(format!(
            "parameter {name} must be positive, got {text}"
        )));
    }
    Ok(value)
}

/// The moment region `conv{(0,0),(1,0),((r-1)/r,1),(0,1)}` for `r >= 1`;
/// at `r = 1` the fourth vertex merges and the region degenerates to the
/// unit triangle.
pub fn example_region(r: &Rational) -> Result<RationalPolytope> {
    if *r < Rational::one() {
        return Err(Error::InvalidDomain(format!(
            "family parameter r must be at least 1, got {}",
            format_rational(r)
        )));
    }
    let zero = Rational::new(0.into(), 1.into());
    let one = Rational::one();
    let shoulder = (r - &one) / r;
    RationalPolytope::new(vec![
        [zero.clone(), zero.clone()],
        [one.clone(), zero],
        [shoulder, one.clone()],
        [Rational::new(0.into(), 1.into()), one],
    ])
}

impl DomainSpec {
    /// Lowers the spec to its moment polytope.
    pub fn resolve(&self) -> Result<RationalPolytope> {
        match self {
            DomainSpec::Polytope { vertices } => {
                let mut points = Vec::with_capacity(vertices.len());
                for [x, y] in vertices {
                    points.push([parse_rational(x)?, parse_rational(y)?]);
                }
                RationalPolytope::new(points)
            }
            DomainSpec::ExampleR { r } => {
                let r = parse_rational(r)?;
                example_region(&r)
            }
            DomainSpec::Ball { capacity } => {
                let c = positive("capacity", capacity)?;
                let zero = Rational::new(0.into(), 1.into());
                RationalPolytope::new(vec![
                    [zero.clone(), zero.clone()],
                    [c.clone(), zero.clone()],
                    [zero, c],
                ])
            }
            DomainSpec::Ellipsoid { a, b } => {
                let a = positive("a", a)?;
                let b = positive("b", b)?;
                let zero = Rational::new(0.into(), 1.into());
                RationalPolytope::new(vec![
                    [zero.clone(), zero.clone()],
                    [a, zero.clone()],
                    [zero, b],
                ])
            }
            DomainSpec::Polydisk { a, b } => {
                let a = positive("a", a)?;
                let b = positive("b", b)?;
                let zero = Rational::new(0.into(), 1.into());
                RationalPolytope::new(vec![
                    [zero.clone(), zero.clone()],
                    [a.clone(), zero.clone()],
                    [a, b.clone()],
                    [zero, b],
                ])
            }
        }
    }

    /// Builds the spec describing an explicit polytope.
    pub fn from_polytope(omega: &RationalPolytope) -> DomainSpec {
        DomainSpec::Polytope {
            vertices: omega
                .vertices()
                .iter()
                .map(|v| [format_rational(&v[0]), format_rational(&v[1])])
                .collect(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            DomainSpec::Polytope { vertices } => format!("polytope with {} vertices", vertices.len()),
            DomainSpec::ExampleR { r } => format!("example region r = {r}"),
            DomainSpec::Ball { capacity } => format!("ball of capacity {capacity}"),
            DomainSpec::Ellipsoid { a, b } => format!("ellipsoid E({a}, {b})"),
            DomainSpec::Polydisk { a, b } => format!("polydisk P({a}, {b})"),
        }
    }
}
