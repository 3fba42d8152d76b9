//! f- and h-vectors, affine edge lengths and the divisibility constraints
//! the index places on Betti numbers of toric manifolds.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, int, UniPoly};
use crate::error::{Error, Result};
use crate::localization::DivisionOutcome;

fn binom(n: i64, k: i64) -> Result<i64> {
    binomial(n, k).to_i64().ok_or_else(|| Error::InvalidArgument(format!("C({n},{k}) overflows")))
}

/// `h_j = Σ_{r ≤ j} (-1)^{j-r} C(n-r, j-r) f_{n-r}`; `f[i]` counts `i`-faces.
pub fn h_from_f(f: &[i64], n: usize) -> Result<Vec<i64>> {
    if f.len() != n + 1 {
        return Err(Error::LengthMismatch { expected: n + 1, got: f.len() });
    }
    let n = n as i64;
    (0..=n)
        .map(|j| {
            (0..=j).try_fold(0i64, |acc, r| {
                let sign = if (j - r) % 2 == 0 { 1 } else { -1 };
                Ok(acc + sign * binom(n - r, j - r)? * f[(n - r) as usize])
            })
        })
        .collect()
}

/// Inverse transform: `f_{n-r} = Σ_{j ≤ r} C(n-j, r-j) h_j`.
pub fn f_from_h(h: &[i64], n: usize) -> Result<Vec<i64>> {
    if h.len() != n + 1 {
        return Err(Error::LengthMismatch { expected: n + 1, got: h.len() });
    }
    let n = n as i64;
    let mut f = vec![0; n as usize + 1];
    for r in 0..=n {
        f[(n - r) as usize] = (0..=r).try_fold(0i64, |acc, j| Ok::<_, Error>(acc + binom(n - j, r - j)? * h[j as usize]))?;
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FHVectors {
    pub n: usize,
    pub f: Vec<i64>,
    pub h: Vec<i64>,
}

impl FHVectors {
    /// Requires `f_n = 1` and non-negative counts.
    pub fn from_f(f: Vec<i64>) -> Result<Self> {
        let n = f.len().checked_sub(1).ok_or(Error::LengthMismatch { expected: 1, got: 0 })?;
        if f[n] != 1 {
            return Err(Error::InvalidArgument(format!("f_{n} must be 1, got {}", f[n])));
        }
        if let Some(i) = f.iter().position(|&c| c < 0) {
            return Err(Error::InvalidArgument(format!("f_{i} is negative")));
        }
        let h = h_from_f(&f, n)?;
        Ok(FHVectors { n, f, h })
    }

    /// Dehn–Sommerville symmetry, expected of simple polytopes.
    pub fn is_palindromic(&self) -> bool {
        self.h.iter().eq(self.h.iter().rev())
    }
}

/// `f_j = C(n+1, j+1)`.
pub fn simplex_f(n: usize) -> Vec<i64> {
    (0..=n as i64).map(|j| binom(n as i64 + 1, j + 1).expect("small simplex")).collect()
}

/// `f_j = C(n, j) 2^{n-j}`.
pub fn cube_f(n: usize) -> Vec<i64> {
    (0..=n as i64).map(|j| binom(n as i64, j).expect("small cube") << (n as i64 - j)).collect()
}

/// Faces of `P × Q` are products of faces: `f_k = Σ_{i+j=k} f_i(P) f_j(Q)`.
pub fn product_f(p: &[i64], q: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[Vec<i64>; 2]", into = "[Vec<i64>; 2]")]
pub struct LatticeEdge {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl LatticeEdge {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
        }
        if a == b {
            return Err(Error::DegenerateEdge);
        }
        Ok(LatticeEdge { a, b })
    }

    pub fn endpoints(&self) -> (&[i64], &[i64]) {
        (&self.a, &self.b)
    }
}

impl TryFrom<[Vec<i64>; 2]> for LatticeEdge {
    type Error = Error;
    fn try_from([a, b]: [Vec<i64>; 2]) -> Result<Self> {
        LatticeEdge::new(a, b)
    }
}

impl From<LatticeEdge> for [Vec<i64>; 2] {
    fn from(e: LatticeEdge) -> Self {
        [e.a, e.b]
    }
}

/// `l(e)` with `b - a = l(e) · w`, `w` primitive.
pub fn affine_length(e: &LatticeEdge) -> i64 {
    e.a.iter().zip(&e.b).fold(0i64, |g, (x, y)| g.gcd(&(y - x)))
}

/// `gcd` of the affine lengths of all edges.
pub fn combinatorial_index(edges: &[LatticeEdge]) -> Result<i64> {
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    Ok(edges.iter().fold(0i64, |g, e| g.gcd(&affine_length(e))))
}

/// Edges of `conv{0, s·e_1, …, s·e_n}`.
pub fn simplex_edges(n: usize, scale: i64) -> Vec<LatticeEdge> {
    let mut verts = vec![vec![0; n]];
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = scale;
        verts.push(v);
    }
    let mut out = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            out.push(LatticeEdge::new(verts[i].clone(), verts[j].clone()).expect("distinct vertices"));
        }
    }
    out
}

/// Edges of `[0, s]^n`.
pub fn cube_edges(n: usize, scale: i64) -> Vec<LatticeEdge> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let v: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { scale } else { 0 }).collect();
        for i in (0..n).filter(|i| mask >> i & 1 == 0) {
            let mut w = v.clone();
            w[i] = scale;
            out.push(LatticeEdge::new(v.clone(), w).expect("distinct vertices"));
        }
    }
    out
}

fn h_poly(h: &[i64]) -> UniPoly {
    UniPoly::from_ints('y', h)
}

/// Divides `Σ h_j y^j` by `1 + y + … + y^{k_0 - 1}`.
pub fn h_divisibility(h: &[i64], k0: u32) -> Result<DivisionOutcome> {
    if k0 == 0 {
        return Err(Error::InvalidArgument("index must be positive".into()));
    }
    let divisor = UniPoly::new('y', vec![int(1); k0 as usize]);
    let (q, r) = h_poly(h).div_rem(&divisor)?;
    Ok(if r.is_zero() { DivisionOutcome::Quotient(q) } else { DivisionOutcome::Remainder(r) })
}

/// Which of the four index cases a Betti vector falls under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BettiVerdict {
    /// Case 1 to 4 for `k_0 = n+1, n, n-1, n-2`; `m` for cases 3 and 4.
    Case { case: u8, m: Option<i64> },
    /// `k_0 < n - 2`: only divisibility is predicted.
    OutOfScope { divisible: bool },
    Violation(String),
}

/// Checks `b = (b_0, b_2, …, b_{2n})` against the pattern forced by index `k_0`.
pub fn betti_pattern(n: usize, k0: u32, b: &[i64]) -> BettiVerdict {
    if b.len() != n + 1 {
        return BettiVerdict::Violation(format!("expected {} Betti numbers, got {}", n + 1, b.len()));
    }
    if b[0] != 1 || b[n] != 1 {
        return BettiVerdict::Violation("b_0 and b_2n must be 1".into());
    }
    if !b.iter().eq(b.iter().rev()) {
        return BettiVerdict::Violation("Betti vector is not palindromic".into());
    }
    let k = k0 as i64;
    let n_i = n as i64;
    if k0 == 0 {
        return BettiVerdict::Violation("index must be positive".into());
    }
    if k > n_i + 1 {
        return BettiVerdict::Violation(format!("index {k0} exceeds n + 1 = {}", n + 1));
    }
    let m = b.get(1).map(|b1| b1 - 1).unwrap_or(0);
    let (case, factor): (u8, Vec<i64>) = match n_i + 1 - k {
        0 => (1, vec![1]),
        1 => (2, vec![1, 1]),
        2 => (3, vec![1, m, 1]),
        3 => (4, vec![1, m, m, 1]),
        _ => {
            let divisible = matches!(h_divisibility(b, k0), Ok(DivisionOutcome::Quotient(_)));
            return BettiVerdict::OutOfScope { divisible };
        }
    };
    if case >= 3 && m < 0 {
        return BettiVerdict::Violation(format!("m = b_2 - 1 = {m} is negative"));
    }
    let expected = product_f(&factor, &vec![1; k as usize]);
    if let Some(i) = (0..=n).find(|&i| expected[i] != b[i]) {
        return BettiVerdict::Violation(format!("b_{} = {} but case ({case}) predicts {}", 2 * i, b[i], expected[i]));
    }
    BettiVerdict::Case { case, m: (case >= 3).then_some(m) }
}

/// CLI input: either an f-vector or an edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolytopeInput {
    F { f: Vec<i64> },
    Edges { edges: Vec<LatticeEdge> },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: &[i64], b: &[i64]) -> LatticeEdge {
        LatticeEdge::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn h_vectors() {
        assert_eq!(h_from_f(&simplex_f(3), 3).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(h_from_f(&[8, 12, 6, 1], 3).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(cube_f(3), vec![8, 12, 6, 1]);
        assert_eq!(h_from_f(&[2, 1], 1).unwrap(), vec![1, 1]);
        assert_eq!(h_from_f(&[2, 1], 2), Err(Error::LengthMismatch { expected: 3, got: 2 }));
        let sq = FHVectors::from_f(product_f(&simplex_f(2), &simplex_f(2))).unwrap();
        assert_eq!(sq.h, vec![1, 2, 3, 2, 1]);
        assert!(sq.is_palindromic());
    }

    #[test]
    fn lengths_and_index() {
        assert_eq!(affine_length(&e(&[0, 0], &[3, 0])), 3);
        assert_eq!(affine_length(&e(&[0, 0], &[2, 4])), 2);
        assert_eq!(affine_length(&e(&[1, 1, 1], &[4, 7, 10])), 3);
        assert_eq!(combinatorial_index(&simplex_edges(3, 4)).unwrap(), 4);
        assert_eq!(combinatorial_index(&cube_edges(3, 1)).unwrap(), 1);
        let mixed = [e(&[0], &[2]), e(&[0], &[4]), e(&[0], &[6])];
        assert_eq!(combinatorial_index(&mixed).unwrap(), 2);
        assert_eq!(combinatorial_index(&[]), Err(Error::NoEdges));
        assert_eq!(LatticeEdge::new(vec![1], vec![1]), Err(Error::DegenerateEdge));
    }

    #[test]
    fn divisibility() {
        let q = |h: &[i64], k| match h_divisibility(h, k).unwrap() {
            DivisionOutcome::Quotient(q) => q,
            DivisionOutcome::Remainder(r) => panic!("remainder {r}"),
        };
        assert_eq!(q(&[1, 1, 1, 1], 4), UniPoly::from_ints('y', &[1]));
        assert_eq!(q(&[1, 3, 3, 1], 2), UniPoly::from_ints('y', &[1, 2, 1]));
        assert_eq!(q(&[1, 2, 1], 2), UniPoly::from_ints('y', &[1, 1]));
        assert!(matches!(h_divisibility(&[1, 3, 3, 1], 3).unwrap(), DivisionOutcome::Remainder(_)));
    }

    #[test]
    fn betti_cases() {
        assert_eq!(betti_pattern(3, 4, &[1, 1, 1, 1]), BettiVerdict::Case { case: 1, m: None });
        assert_eq!(betti_pattern(3, 3, &[1, 2, 2, 1]), BettiVerdict::Case { case: 2, m: None });
        assert_eq!(betti_pattern(4, 3, &[1, 2, 3, 2, 1]), BettiVerdict::Case { case: 3, m: Some(1) });
        assert_eq!(betti_pattern(6, 4, &[1, 3, 5, 6, 5, 3, 1]), BettiVerdict::Case { case: 4, m: Some(2) });
        assert!(matches!(betti_pattern(3, 3, &[1, 3, 3, 1]), BettiVerdict::Violation(_)));
        assert!(matches!(betti_pattern(3, 5, &[1, 1, 1, 1]), BettiVerdict::Violation(_)));
        assert_eq!(betti_pattern(6, 2, &[1, 3, 5, 7, 5, 3, 1]), BettiVerdict::OutOfScope { divisible: false });
        assert_eq!(betti_pattern(6, 2, &[1, 3, 5, 6, 5, 3, 1]), BettiVerdict::OutOfScope { divisible: true });
    }

    #[test]
    fn input_json() {
        let p: PolytopeInput = serde_json::from_str(r#"{"edges": [[[0,0],[2,4]]]}"#).unwrap();
        assert_eq!(p, PolytopeInput::Edges { edges: vec![e(&[0, 0], &[2, 4])] });
        let p: PolytopeInput = serde_json::from_str(r#"{"f": [2, 1]}"#).unwrap();
        assert_eq!(p, PolytopeInput::F { f: vec![2, 1] });
    }
}
