mod common;

macro_rules! suite {
    ($name:ident) => {
        #[test]
        fn $name() {
            if let Err(e) = common::$name() {
                panic!("{e}");
            }
        }
    };
}

suite!(field_axioms);
suite!(conductor_coercion);
suite!(root_orders);
suite!(rewrite_associativity);
suite!(automorphism_multiplicativity);
suite!(skew_associativity);
suite!(molien_nonnegativity);
suite!(fiber_associativity);
suite!(stabilizers_are_subgroups);
