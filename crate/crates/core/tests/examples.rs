//! Each example doubles as a smoke test: its `main` runs here and must succeed.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[path = $path]
        mod $name;

        #[test]
        fn $name() {
            $name::main().expect(stringify!($name));
        }
    };
}

example!(eisenstein_series, "../examples/eisenstein_series.rs");
example!(f_lambda_table, "../examples/f_lambda_table.rs");
example!(cp2_relations, "../examples/cp2_relations.rs");
example!(hilbert_polynomials, "../examples/hilbert_polynomials.rs");
example!(coadjoint_crosscheck, "../examples/coadjoint_crosscheck.rs");
example!(polytope_betti, "../examples/polytope_betti.rs");
