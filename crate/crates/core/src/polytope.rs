//! Vertices of and membership in the order polytope `O(P)` and the chain
//! polytope `C(P)`, in exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::lattice::IdealLattice;
use crate::poset::Poset;
use crate::subset::Subset;

/// A point of `Q^n`, one coordinate per poset element (index order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    coords: Vec<BigRational>,
}

impl LatticePoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        LatticePoint { coords }
    }

    pub fn origin(n: usize) -> Self {
        LatticePoint {
            coords: vec![BigRational::zero(); n],
        }
    }

    /// The 0/1 indicator vector of `s`.
    pub fn indicator(n: usize, s: Subset) -> Self {
        LatticePoint {
            coords: (0..n)
                .map(|i| if s.contains(i) { BigRational::one() } else { BigRational::zero() })
                .collect(),
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Parses coordinates written as `"1"`, `"0"`, `"1/2"`, `"-3/4"`.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| {
                let s = s.as_ref().trim();
                BigRational::from_str(s).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint::new)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        let two = BigRational::from_integer(2.into());
        LatticePoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) / &two)
                .collect(),
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

/// `Σ_{p_i ∈ α} e_i` for every ideal `α`, in lattice order.
pub fn order_polytope_vertices(lattice: &IdealLattice) -> Vec<LatticePoint> {
    let n = lattice.poset().len();
    lattice
        .ideals()
        .iter()
        .map(|a| LatticePoint::indicator(n, a.members()))
        .collect()
}

/// `Σ_{p_i ∈ A} e_i` for every antichain `A`. Antichains are listed as
/// `max α` with `α` running through the lattice order.
pub fn chain_polytope_vertices(lattice: &IdealLattice) -> Vec<LatticePoint> {
    let n = lattice.poset().len();
    lattice
        .ideals()
        .iter()
        .map(|&a| LatticePoint::indicator(n, lattice.max_elements(a)))
        .collect()
}

fn check_dim(poset: &Poset, x: &LatticePoint) -> Result<()> {
    if x.dim() != poset.len() {
        return Err(Error::DimensionMismatch {
            expected: poset.len(),
            found: x.dim(),
        });
    }
    Ok(())
}

/// `0 <= x_i <= 1` and `x_i >= x_j` whenever `p_i <= p_j`.
pub fn point_in_order_polytope(poset: &Poset, x: &LatticePoint) -> Result<bool> {
    check_dim(poset, x)?;
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let c = x.coords();
    if c.iter().any(|v| *v < zero || *v > one) {
        return Ok(false);
    }
    Ok(poset
        .covers()
        .into_iter()
        .all(|(i, j)| c[i] >= c[j]))
}

/// `x >= 0` and every maximal chain sums to at most 1.
pub fn point_in_chain_polytope(poset: &Poset, x: &LatticePoint) -> Result<bool> {
    check_dim(poset, x)?;
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let c = x.coords();
    if c.iter().any(|v| *v < zero) {
        return Ok(false);
    }
    Ok(poset.maximal_chains().iter().all(|chain| {
        let sum: BigRational = chain.elements().iter().map(|&i| &c[i]).sum();
        sum <= one
    }))
}
