//! Every runnable example is compiled into this test binary and executed.

mod numeric_field {
    include!("../examples/numeric_field.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod polynomials {
    include!("../examples/polynomials.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod plucker_lines {
    include!("../examples/plucker_lines.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod membership {
    include!("../examples/membership.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod deformation {
    include!("../examples/deformation.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod census {
    include!("../examples/census.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod identities {
    include!("../examples/identities.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod schubert {
    include!("../examples/schubert.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod certificate_cli {
    include!("../examples/certificate_cli.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}
