use std::fmt;

use num_traits::{One, Zero};

use crate::exact_linalg::rational::format_rational;
use crate::exact_linalg::BigRational;

/// Element of the even numerical ring `⊕_q H^{q,q}`, one coordinate vector per codimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedClass {
    parts: Vec<Vec<BigRational>>,
}

impl GradedClass {
    pub fn from_parts(parts: Vec<Vec<BigRational>>) -> Self {
        Self { parts }
    }

    pub fn zero(ranks: &[usize]) -> Self {
        Self {
            parts: ranks.iter().map(|&r| vec![BigRational::zero(); r]).collect(),
        }
    }

    pub fn unit(ranks: &[usize]) -> Self {
        Self::basis(ranks, 0, 0)
    }

    pub fn basis(ranks: &[usize], codim: usize, index: usize) -> Self {
        let mut c = Self::zero(ranks);
        c.parts[codim][index] = BigRational::one();
        c
    }

    /// Class concentrated in one codimension.
    pub fn homogeneous(ranks: &[usize], codim: usize, coords: Vec<BigRational>) -> Self {
        let mut c = Self::zero(ranks);
        c.parts[codim] = coords;
        c
    }

    /// Splits a flat coordinate vector (codimension-major) back into parts.
    pub fn from_flat(ranks: &[usize], flat: &[BigRational]) -> Self {
        let mut offset = 0;
        let parts = ranks
            .iter()
            .map(|&r| {
                let part = flat[offset..offset + r].to_vec();
                offset += r;
                part
            })
            .collect();
        Self { parts }
    }

    pub fn flatten(&self) -> Vec<BigRational> {
        self.parts.iter().flatten().cloned().collect()
    }

    pub fn parts(&self) -> &[Vec<BigRational>] {
        &self.parts
    }

    pub fn part(&self, codim: usize) -> &[BigRational] {
        &self.parts[codim]
    }

    pub fn part_mut(&mut self, codim: usize) -> &mut Vec<BigRational> {
        &mut self.parts[codim]
    }

    pub fn shape(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn conforms_to(&self, ranks: &[usize]) -> bool {
        self.parts.len() == ranks.len() && self.parts.iter().zip(ranks).all(|(p, &r)| p.len() == r)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().flatten().all(Zero::is_zero)
    }

    /// Whether every nonzero coordinate sits in `codim`.
    pub fn is_concentrated_in(&self, codim: usize) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(q, p)| q == codim || p.iter().all(Zero::is_zero))
    }

    /// Component-wise sum; both classes must share a shape.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|x| x * factor).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Dual in the Chern-character sense: codimension `q` picks up `(-1)^q`.
    pub fn dual(&self) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .enumerate()
                .map(|(q, p)| {
                    if q % 2 == 0 {
                        p.clone()
                    } else {
                        p.iter().map(|x| -x).collect()
                    }
                })
                .collect(),
        }
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (q, p) in self.parts.iter().enumerate() {
            if q > 0 {
                write!(f, " | ")?;
            }
            let coords: Vec<String> = p.iter().map(format_rational).collect();
            write!(f, "{}", coords.join(", "))?;
        }
        write!(f, ")")
    }
}
