//! f- and h-vectors of simple polytopes, the combinatorial index of a lattice
//! polytope, and the Betti patterns that index forces.

use genus_forge::localization::DivisionOutcome;
use genus_forge::polytope::{
    betti_pattern, combinatorial_index, cube_edges, cube_f, h_divisibility, product_f, simplex_edges, simplex_f,
    FHVectors,
};

pub fn main() -> genus_forge::Result<()> {
    for (name, f) in [("3-simplex", simplex_f(3)), ("3-cube", cube_f(3)), ("triangle x square", product_f(&simplex_f(2), &cube_f(2)))] {
        let v = FHVectors::from_f(f)?;
        println!("{name}: f = {:?}, h = {:?}", v.f, v.h);
        assert!(v.is_palindromic());
    }

    let k_simplex = combinatorial_index(&simplex_edges(3, 2))?;
    // The reflexive cube [-1, 1]^3 is the polytope of (CP^1)^3, of index 2.
    let k_cube = combinatorial_index(&cube_edges(3, 2))?;
    println!("index of 2*simplex: {k_simplex}, index of the reflexive cube: {k_cube}");
    assert_eq!((k_simplex, k_cube), (2, 2));

    let h_cube = FHVectors::from_f(cube_f(3))?.h;
    match h_divisibility(&h_cube, 2)? {
        DivisionOutcome::Quotient(q) => println!("cube h-polynomial = (1 + y)({q})"),
        DivisionOutcome::Remainder(r) => println!("cube h-polynomial leaves remainder {r}"),
    }

    for (n, k0, b) in [(3, 4, vec![1, 1, 1, 1]), (3, 3, vec![1, 2, 2, 1]), (4, 3, vec![1, 2, 3, 2, 1])] {
        println!("n = {n}, k0 = {k0}, b = {b:?}: {:?}", betti_pattern(n, k0, &b));
    }
    Ok(())
}
