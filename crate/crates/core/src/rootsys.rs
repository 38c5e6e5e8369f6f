//! Exact rational models of the classical root systems.
//!
//! Type A_{n-1} lives in the sum-zero hyperplane of R^n. Types B_n, C_n, D_n
//! use the 2n-coordinate model with x_i + x_{ī} = 0 (ī := 2n+1-i), stored via
//! the first n coordinates; the mirror coordinates are derived on demand.
//! Dual vectors in type A are normalized to coordinate-sum zero so that
//! equality is coordinate-wise.

use crate::error::{Error, Result};
use crate::linalg;
use num::Zero;
use std::collections::BTreeMap;

pub type Rat = num::rational::Ratio<i64>;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::BadInput(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RSType {
    pub family: Family,
    /// Number of coordinates; the rank is n-1 for A and n for B/C/D.
    pub n: usize,
}

impl RSType {
    pub fn new(family: Family, n: usize) -> Result<RSType> {
        if n < 2 {
            return Err(Error::InvalidRank(format!("{family:?} needs n >= 2, got {n}")));
        }
        Ok(RSType { family, n })
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => self.n - 1,
            _ => self.n,
        }
    }

    /// Dimension of the ambient space E (equals the polytope dimension).
    pub fn dim(&self) -> usize {
        self.rank()
    }

    /// Ground set size: n for type A, 2n (elements i and ī) otherwise.
    pub fn ground_size(&self) -> usize {
        match self.family {
            Family::A => self.n,
            _ => 2 * self.n,
        }
    }

    /// ī = 2n+1-i on the signed ground set; identity in type A.
    pub fn mirror(&self, i: usize) -> usize {
        match self.family {
            Family::A => i,
            _ => 2 * self.n + 1 - i,
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let fact = |m: usize| (1..=m as u128).product::<u128>();
        let n = self.n;
        match self.family {
            Family::A => fact(n),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
        }
    }

    /// Paper-style label: "A_2" means type A with n = 3 coordinates.
    pub fn label(&self) -> String {
        match self.family {
            Family::A => format!("A_{}", self.n - 1),
            Family::B => format!("B_{}", self.n),
            Family::C => format!("C_{}", self.n),
            Family::D => format!("D_{}", self.n),
        }
    }
}

/// Vector in E or E*, as n exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RVec(pub Vec<Rat>);

impl RVec {
    pub fn zero(n: usize) -> RVec {
        RVec(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> RVec {
        let mut v = vec![Rat::zero(); n];
        v[i - 1] = Rat::from_integer(1);
        RVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &RVec) -> RVec {
        RVec(self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, other: &RVec) -> RVec {
        RVec(self.0.iter().zip(&other.0).map(|(a, b)| *a - *b).collect())
    }

    pub fn neg(&self) -> RVec {
        RVec(self.0.iter().map(|a| -*a).collect())
    }

    pub fn scale(&self, c: Rat) -> RVec {
        RVec(self.0.iter().map(|a| *a * c).collect())
    }

    pub fn dot(&self, other: &RVec) -> Rat {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| *a * *b)
            .fold(Rat::zero(), |s, x| s + x)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub rstype: RSType,
    pub simple_roots: Vec<RVec>,
    /// Coroots as functionals on E (type A representatives sum to zero).
    pub coroots: Vec<RVec>,
    /// Dual basis to the simple roots under the pairing.
    pub fundamental_coweights: Vec<RVec>,
    /// Vectors in E dual to the coroots: ⟨ϖ_k, α_j^∨⟩ = δ_kj.
    pub fundamental_weights: Vec<RVec>,
    pub positive_roots: Vec<RVec>,
}

pub fn build_root_system(rstype: RSType) -> Result<RootSystem> {
    rstype.validate()?;
    let n = rstype.n;
    let r = rstype.rank();
    let e = |i: usize| RVec::unit(n, i);

    let mut simple_roots: Vec<RVec> = (1..r.min(n - 1) + 1)
        .map(|i| e(i).sub(&e(i + 1)))
        .collect();
    let mut coroots = simple_roots.clone();
    match rstype.family {
        Family::A => {}
        Family::B => {
            simple_roots.push(e(n));
            coroots.push(e(n).scale(Rat::from_integer(2)));
        }
        Family::C => {
            simple_roots.push(e(n).scale(Rat::from_integer(2)));
            coroots.push(e(n));
        }
        Family::D => {
            simple_roots.push(e(n - 1).add(&e(n)));
            coroots.push(e(n - 1).add(&e(n)));
        }
    }

    let mut positive_roots = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            positive_roots.push(e(i).sub(&e(j)));
            if rstype.family != Family::A {
                positive_roots.push(e(i).add(&e(j)));
            }
        }
    }
    match rstype.family {
        Family::B => (1..=n).for_each(|i| positive_roots.push(e(i))),
        Family::C => (1..=n).for_each(|i| positive_roots.push(e(i).scale(Rat::from_integer(2)))),
        _ => {}
    }

    // coweights: solve <alpha_i, w_j> = delta_ij; type A additionally
    // constrains representatives to coordinate-sum zero
    let mut rows: Vec<Vec<Rat>> = simple_roots.iter().map(|a| a.0.clone()).collect();
    if rstype.family == Family::A {
        rows.push(vec![Rat::from_integer(1); n]);
    }
    let mut fundamental_coweights = Vec::with_capacity(r);
    for j in 0..r {
        let mut rhs = vec![Rat::zero(); rows.len()];
        rhs[j] = Rat::from_integer(1);
        let w = linalg::solve_square(&rows, &rhs)
            .expect("simple roots are linearly independent");
        fundamental_coweights.push(RVec(w));
    }

    // weights: same duality with coroots in place of simple roots
    let mut wrows: Vec<Vec<Rat>> = coroots.iter().map(|a| a.0.clone()).collect();
    if rstype.family == Family::A {
        wrows.push(vec![Rat::from_integer(1); n]);
    }
    let mut fundamental_weights = Vec::with_capacity(r);
    for j in 0..r {
        let mut rhs = vec![Rat::zero(); wrows.len()];
        rhs[j] = Rat::from_integer(1);
        let w = linalg::solve_square(&wrows, &rhs)
            .expect("coroots are linearly independent");
        fundamental_weights.push(RVec(w));
    }

    Ok(RootSystem {
        rstype,
        simple_roots,
        coroots,
        fundamental_coweights,
        fundamental_weights,
        positive_roots,
    })
}

impl RSType {
    fn validate(&self) -> Result<()> {
        RSType::new(self.family, self.n).map(|_| ())
    }
}

impl RootSystem {
    /// Is v a positive root (exact comparison)?
    pub fn is_positive_root(&self, v: &RVec) -> bool {
        self.positive_roots.iter().any(|p| p == v)
    }

    /// Is v plus or minus a simple root with index in ks?
    pub fn is_signed_simple(&self, v: &RVec, negate: bool) -> bool {
        self.simple_roots
            .iter()
            .any(|a| if negate { &a.neg() == v } else { a == v })
    }
}

/// Expand v in the coroots {α_k^∨ : k ∈ ks}; `None` when v is outside their
/// span. Indices in ks are 1-based simple-root numbers.
pub fn coroot_span_expand(
    v: &RVec,
    ks: &[usize],
    rs: &RootSystem,
) -> Option<BTreeMap<usize, Rat>> {
    let cols: Vec<Vec<Rat>> = ks.iter().map(|&k| rs.coroots[k - 1].0.clone()).collect();
    if cols.is_empty() {
        return if v.is_zero() { Some(BTreeMap::new()) } else { None };
    }
    let sol = linalg::solve_columns(&cols, &v.0)?;
    Some(ks.iter().copied().zip(sol).collect())
}
