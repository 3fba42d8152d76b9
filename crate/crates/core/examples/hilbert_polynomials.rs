//! Hilbert polynomials `H_m(k) = ind(Λ^m T^* ⊗ L^k)` of projective spaces,
//! computed from fixed points alone.

use genus_forge::arith::int;
use genus_forge::localization::{cpn_fixed_points, hilbert_polynomial};

pub fn main() -> genus_forge::Result<()> {
    for n in 1..=4usize {
        let weights: Vec<i64> = (1..=n as i64).map(|j| j * j).collect();
        let fpd = cpn_fixed_points(n, &weights)?;
        for m in 0..=n {
            let h = hilbert_polynomial(&fpd, n as u32 + 1, m)?;
            println!("CP^{n}, m = {m}: H = {}", h.polynomial);
        }
        // Serre duality: H_m(x) = (-1)^n H_{n-m}(-x).
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        for m in 0..=n {
            let h = hilbert_polynomial(&fpd, n as u32 + 1, m)?.polynomial;
            let dual = hilbert_polynomial(&fpd, n as u32 + 1, n - m)?.polynomial;
            for x in -3..=3 {
                assert_eq!(h.eval(&int(x)), &sign * dual.eval(&int(-x)));
            }
        }
    }
    Ok(())
}
