//! Property-based invariants and cross-route consistency checks.

mod common;

use common::{random_amplitude_pair, seeded_rng};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use susy_modular::entanglement::{
    concurrence_via_modular, concurrence_wootters, spin_reduced_density, supermultiplet_state,
};
use susy_modular::fock::{
    commutator, interior_projector, ladder_a, ladder_a_dag, FockSpec, LinearOp,
};
use susy_modular::modular::{modular_conjugation, modular_flow, ModularData};
use susy_modular::report::{CheckEntry, RunConfig, VerificationReport};
use susy_modular::susy::{build_system, supermultiplet, Side};

proptest! {
    #[test]
    fn basis_index_is_a_bijection(na in 2usize..10, nb in 2usize..10, pick in 0usize..1000) {
        let spec = FockSpec::new(na, nb).unwrap();
        let index = pick % spec.total_dim();
        let label = spec.label(index).unwrap();
        prop_assert_eq!(spec.index(label).unwrap(), index);
    }

    #[test]
    fn canonical_commutator_is_exact_on_the_interior(na in 3usize..9, nb in 3usize..9) {
        let spec = FockSpec::new(na, nb).unwrap();
        let defect = commutator(&ladder_a(spec), &ladder_a_dag(spec))
            .unwrap()
            .sub(&LinearOp::identity(spec))
            .unwrap();
        prop_assert!(defect.interior_residual(1).unwrap() <= 1e-13);
    }

    #[test]
    fn projector_is_idempotent_and_selfadjoint(na in 2usize..8, nb in 2usize..8, margin in 0usize..4) {
        let spec = FockSpec::new(na, nb).unwrap();
        prop_assume!(margin < spec.min_cut());
        let p = interior_projector(spec, margin).unwrap();
        prop_assert_eq!(p.mul(&p).unwrap(), p.clone());
        prop_assert_eq!(p.adjoint(), p);
    }

    #[test]
    fn concurrence_is_phase_invariant(
        weight in 0.01f64..0.99,
        phase_a in 0.0f64..std::f64::consts::TAU,
        phase_b in 0.0f64..std::f64::consts::TAU,
        k in 1usize..7,
    ) {
        let spec = FockSpec::square(8).unwrap();
        let j = modular_conjugation(spec).unwrap();
        let alpha = Complex64::from_polar(weight.sqrt(), phase_a);
        let beta = Complex64::from_polar((1.0 - weight).sqrt(), phase_b);
        let phi = supermultiplet_state(spec, k, alpha, beta).unwrap();
        let conc = concurrence_via_modular(&j, phi.state()).unwrap();
        let expected = 2.0 * (alpha * beta).norm();
        prop_assert!((conc - expected).abs() <= 1e-12);
    }

    #[test]
    fn flow_satisfies_the_group_law(beta in 0.2f64..3.0, t in -2.0f64..2.0, s in -2.0f64..2.0) {
        let spec = FockSpec::square(6).unwrap();
        let ft = modular_flow(spec, beta, t).unwrap();
        let fs = modular_flow(spec, beta, s).unwrap();
        let fts = modular_flow(spec, beta, t + s).unwrap();
        prop_assert!(ft.mul(&fs).unwrap().sub(&fts).unwrap().spectral_norm() <= 1e-12);
    }

    #[test]
    fn float_encoding_roundtrips(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let text = susy_modular::report::format_float_17(x);
        let back: f64 = text.parse().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }
}

#[test]
fn spectral_norm_cross_check_on_operators() {
    let spec = FockSpec::new(4, 3).unwrap();
    let mut rng = seeded_rng(11, 3);
    for _ in 0..20 {
        use rand::Rng;
        let dim = spec.total_dim();
        let m = DMatrix::<Complex64>::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let op = LinearOp::new(spec, m.clone()).unwrap();
        let exact = nalgebra::SymmetricEigen::new(m.adjoint() * &m)
            .eigenvalues
            .iter()
            .fold(0.0f64, |acc, &v| acc.max(v))
            .max(0.0)
            .sqrt();
        assert!(
            (op.spectral_norm() - exact).abs() <= 1e-9 * exact.max(1.0),
            "power iteration diverged from the dense eigensolve"
        );
    }
}

#[test]
fn every_doublet_is_an_exact_eigenpair() {
    let spec = FockSpec::square(16).unwrap();
    for side in [Side::A, Side::B] {
        let sys = build_system(spec, side);
        for k in 1..=13usize {
            let (up, down) = supermultiplet(spec, side, k, 1).unwrap();
            for member in [&up, &down] {
                let img = sys.hamiltonian().apply_state(member).unwrap();
                let defect = (img - member.amplitudes() * Complex64::new(k as f64, 0.0)).norm();
                assert!(defect <= 1e-12, "side {side:?} k={k}");
            }
        }
    }
}

#[test]
fn tomita_s_squares_to_identity_on_sampled_states() {
    let spec = FockSpec::square(16).unwrap();
    let data = ModularData::new(spec, 1.0).unwrap();
    let ss = data.s().compose_antilinear(data.s()).unwrap();
    let mut rng = seeded_rng(42, 9);
    for _ in 0..100 {
        let v = common::random_unit_vector(spec, &mut rng);
        assert!((ss.apply(&v) - &v).norm() <= 1e-10);
    }
}

#[test]
fn wootters_oracle_agrees_across_random_sweep() {
    let spec = FockSpec::square(12).unwrap();
    let j = modular_conjugation(spec).unwrap();
    let mut rng = seeded_rng(7, 1);
    for i in 0..100 {
        let (alpha, beta) = random_amplitude_pair(&mut rng);
        let k = 1 + (i % (spec.min_cut() - 1));
        let phi = supermultiplet_state(spec, k, alpha, beta).unwrap();
        let via_j = concurrence_via_modular(&j, phi.state()).unwrap();
        let via_trace = concurrence_wootters(phi.state());
        assert!((via_j - via_trace).abs() <= 1e-10);
        let rho = spin_reduced_density(phi.state());
        assert!(rho.validate(1e-12));
    }
}

#[test]
fn report_json_and_csv_encode_the_same_records() {
    let entries = vec![
        CheckEntry::new("alpha_check", "A = B on interior", 3.07e-13, 1e-10),
        CheckEntry::new("beta_check", "\u{0394} \u{03a9}' = \u{03a9}'", 0.0, 1.1e-6),
        CheckEntry::new("gamma_check", "norm bound", 0.2024, 1e-3),
    ];
    let report =
        VerificationReport::from_entries("demo", RunConfig::default(), entries, 100.0);

    let parsed_json: VerificationReport =
        serde_json::from_str(&report.to_json_string()).unwrap();
    assert_eq!(parsed_json, report);

    let csv_text = report.to_csv_string();
    let mut reader = csv::ReaderBuilder::new().from_reader(csv_text.as_bytes());
    let mut csv_entries = Vec::new();
    for row in reader.records() {
        let row = row.unwrap();
        assert_eq!(&row[0], "demo");
        csv_entries.push(CheckEntry {
            check_id: row[1].to_string(),
            paper_anchor: row[2].to_string(),
            residual: row[3].parse().unwrap(),
            tolerance: row[4].parse().unwrap(),
            pass: row[5].parse().unwrap(),
        });
    }
    assert_eq!(csv_entries, report.entries);
}
