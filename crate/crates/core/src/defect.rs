//! Defects: how far a vertex set is from having `θ` common neighbors in a
//! part, scored in exact arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::skeleton::set_neighborhood;

/// A non-negative exact rational or `+∞`. `∞` absorbs addition and
/// multiplication, except that `∞ · 0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Defect {
    Finite(BigRational),
    Infinite,
}

impl Defect {
    pub fn zero() -> Self {
        Defect::Finite(BigRational::zero())
    }

    pub fn from_integer(x: u64) -> Self {
        Defect::Finite(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Defect::Finite(r) if r.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Defect::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Defect::Finite(r) => Some(r),
            Defect::Infinite => None,
        }
    }

    /// `self^t`, with `x^0 = 1` for every `x` including `∞`.
    pub fn pow(&self, t: u32) -> Self {
        if t == 0 {
            return Defect::Finite(BigRational::one());
        }
        match self {
            Defect::Finite(r) => Defect::Finite(num_traits::pow(r.clone(), t as usize)),
            Defect::Infinite => Defect::Infinite,
        }
    }

    /// Division by a positive integer.
    pub fn div_integer(&self, m: u64) -> Self {
        assert!(m > 0, "division by zero");
        match self {
            Defect::Finite(r) => Defect::Finite(r / BigRational::from_integer(BigInt::from(m))),
            Defect::Infinite => Defect::Infinite,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Defect::Finite(r) => r.to_f64().unwrap_or(f64::INFINITY),
            Defect::Infinite => f64::INFINITY,
        }
    }
}

impl Add for Defect {
    type Output = Defect;

    fn add(self, rhs: Defect) -> Defect {
        match (self, rhs) {
            (Defect::Finite(a), Defect::Finite(b)) => Defect::Finite(a + b),
            _ => Defect::Infinite,
        }
    }
}

impl Mul for Defect {
    type Output = Defect;

    fn mul(self, rhs: Defect) -> Defect {
        match (self, rhs) {
            (Defect::Finite(a), Defect::Finite(b)) => Defect::Finite(a * b),
            (Defect::Finite(a), Defect::Infinite) | (Defect::Infinite, Defect::Finite(a))
                if a.is_zero() =>
            {
                Defect::zero()
            }
            _ => Defect::Infinite,
        }
    }
}

impl std::iter::Sum for Defect {
    fn sum<I: Iterator<Item = Defect>>(iter: I) -> Defect {
        iter.fold(Defect::zero(), Add::add)
    }
}

impl PartialOrd for Defect {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Defect {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Defect::Finite(a), Defect::Finite(b)) => a.cmp(b),
            (Defect::Finite(_), Defect::Infinite) => Ordering::Less,
            (Defect::Infinite, Defect::Finite(_)) => Ordering::Greater,
            (Defect::Infinite, Defect::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Defect::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Defect::Infinite => f.write_str("inf"),
        }
    }
}

/// Serialized as its display string, so exact values survive JSON.
impl Serialize for Defect {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `a/b` as a rational.
pub fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn check_theta(theta: &BigRational) -> Result<()> {
    if theta.is_positive() {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "theta must be positive, got {theta}"
        )))
    }
}

/// `ω_θ(x)`: `∞` at 0, `θ/x` strictly between 0 and `θ`, 0 from `θ` on.
pub fn omega_theta(x: u64, theta: &BigRational) -> Result<Defect> {
    check_theta(theta)?;
    if x == 0 {
        return Ok(Defect::Infinite);
    }
    let x = BigRational::from_integer(BigInt::from(x));
    Ok(if &x < theta {
        Defect::Finite(theta / x)
    } else {
        Defect::zero()
    })
}

/// `|N(PE_Q(G); G) ∩ V_i|`.
pub fn neighborhood_in_part(g: &Hypergraph, q: &[Vertex], i: usize) -> Result<usize> {
    let layout = g.require_layout()?;
    if i >= layout.num_parts() {
        return Err(Error::Index {
            index: i,
            lo: 0,
            hi: layout.num_parts(),
        });
    }
    if let Some(&v) = q.iter().find(|&&v| v >= g.n() || layout.part_of(v) == i) {
        return Err(Error::Argument(format!(
            "Q contains vertex {v}, which is not in V(G) minus part {i}"
        )));
    }
    Ok(set_neighborhood(g, q)
        .into_iter()
        .filter(|&v| layout.part_of(v) == i)
        .count())
}

/// `ω_θ(Q, V_i; G)`.
pub fn set_defect(g: &Hypergraph, q: &[Vertex], i: usize, theta: &BigRational) -> Result<Defect> {
    check_theta(theta)?;
    omega_theta(neighborhood_in_part(g, q, i)? as u64, theta)
}

/// `Σ_{Q ∈ qs} ω_θ(Q, V_i; G)^t`.
pub fn defect_power_sum(
    g: &Hypergraph,
    qs: &[Vec<Vertex>],
    i: usize,
    theta: &BigRational,
    t: u32,
) -> Result<Defect> {
    let mut total = Defect::zero();
    for q in qs {
        total = total + set_defect(g, q, i, theta)?.pow(t);
    }
    Ok(total)
}

/// `μ_{θ,t}(qs, V_i; G)`.
pub fn average_defect(
    g: &Hypergraph,
    qs: &[Vec<Vertex>],
    i: usize,
    theta: &BigRational,
    t: u32,
) -> Result<Defect> {
    if qs.is_empty() {
        return Err(Error::Argument(
            "average defect over an empty family".into(),
        ));
    }
    Ok(defect_power_sum(g, qs, i, theta, t)?.div_integer(qs.len() as u64))
}

/// Whether every `Q ∈ qs` has at least `θ / (|qs| · μ_{θ,t})^{1/t}` common
/// neighbors in `V_i` (at least `θ` when `μ = 0`). Checked exactly as
/// `x^t · |qs| · μ ≥ θ^t`.
pub fn defect_lower_bound_check(
    g: &Hypergraph,
    qs: &[Vec<Vertex>],
    i: usize,
    theta: &BigRational,
    t: u32,
) -> Result<bool> {
    if qs.is_empty() {
        return Err(Error::Argument(
            "lower bound check over an empty family".into(),
        ));
    }
    check_theta(theta)?;
    let sum = match defect_power_sum(g, qs, i, theta, t)? {
        Defect::Infinite => return Ok(true),
        Defect::Finite(s) => s,
    };
    for q in qs {
        let x = BigRational::from_integer(BigInt::from(neighborhood_in_part(g, q, i)?));
        let ok = if sum.is_zero() {
            &x >= theta
        } else {
            num_traits::pow(x, t as usize) * &sum >= num_traits::pow(theta.clone(), t as usize)
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
