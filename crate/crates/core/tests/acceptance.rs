//! Acceptance gate: every structural result is re-derived here at desk
//! scale (16 x 16 x 2, dimension 512) and held to its pinned tolerance.
//! One criterion per test, one printed verdict line each.

mod common;

use common::{criterion_line, random_amplitude_pair, seeded_rng};
use num_complex::Complex64;

use susy_modular::entanglement::{
    concurrence_via_modular, concurrence_wootters, entanglement_of_formation, supermultiplet_state,
};
use susy_modular::fock::FockSpec;
use susy_modular::modular::{
    flow_conjugate, modular_conjugation, modular_flow, omega_truncation_deficit, verify_modular,
    ModularData,
};
use susy_modular::models::{verify_jc_mapping, verify_nonlinear_susy};
use susy_modular::report::RunConfig;
use susy_modular::susy::{build_system, supermultiplet, verify_superalgebra, Side};

fn desk_config() -> RunConfig {
    RunConfig::default()
}

fn desk_spec() -> FockSpec {
    desk_config().spec().unwrap()
}

#[test]
fn criterion_1_superalgebra_suite() {
    let config = desk_config();
    let spec = desk_spec();
    let report = verify_superalgebra(
        &build_system(spec, Side::A),
        &build_system(spec, Side::B),
        &config,
    )
    .unwrap();
    let ok = report.overall_pass;
    criterion_line(
        1,
        ok,
        "superalgebra residuals pass at interior margin 2, tolerance 1e-10",
    );
    // the suite covers every listed identity; the two like-type mixed
    // anticommutators are held to their nonvanishing closed forms
    for id in [
        "anticomm_qa_qadag_eq_ha",
        "anticomm_qb_qbdag_eq_hb",
        "qa_squared",
        "qb_squared",
        "comm_ha_qa",
        "comm_ha_qadag",
        "comm_hb_qb",
        "comm_hb_qbdag",
        "comm_ha_hb",
        "mixed_anticomm_qa_qbdag",
        "mixed_anticomm_qadag_qb",
        "mixed_anticomm_qa_qb_closed_form",
        "mixed_anticomm_qadag_qbdag_closed_form",
        "ha_eq_qsusy_squared",
        "hb_eq_qsusy_squared",
    ] {
        let entry = report.entry(id).unwrap_or_else(|| panic!("missing {id}"));
        assert!(
            entry.pass && entry.residual <= 1e-10,
            "{id}: residual {}",
            entry.residual
        );
    }
    assert!(ok, "failing: {:?}", report.failing().collect::<Vec<_>>());
}

#[test]
fn criterion_2_spectrum_doublets() {
    let spec = desk_spec();
    let sys = build_system(spec, Side::A);
    let mut ok = true;
    for k in 1..=13usize {
        let (up, down) = supermultiplet(spec, Side::A, k, 0).unwrap();
        let energy = Complex64::new(k as f64, 0.0);
        for member in [&up, &down] {
            let img = sys.hamiltonian().apply_state(member).unwrap();
            let defect = (img - member.amplitudes() * energy).norm();
            ok &= defect <= 1e-12;
            assert!(defect <= 1e-12, "k={k}: eigenstate defect {defect}");
        }
        let root = Complex64::new((k as f64).sqrt(), 0.0);
        let up_img = sys.q_susy().apply_state(&down).unwrap();
        let defect_up = (up_img - up.amplitudes() * root).norm();
        let down_img = sys.q_susy().apply_state(&up).unwrap();
        let defect_down = (down_img - down.amplitudes() * root).norm();
        ok &= defect_up <= 1e-12 && defect_down <= 1e-12;
        assert!(
            defect_up <= 1e-12 && defect_down <= 1e-12,
            "k={k}: sqrt-k exchange defects {defect_up}, {defect_down}"
        );
    }
    criterion_line(
        2,
        ok,
        "doublets k=1..13 are degenerate eigenpairs exchanged with factor sqrt(k)",
    );
}

#[test]
fn criterion_3_modular_suite() {
    let config = desk_config();
    let spec = desk_spec();
    let data = ModularData::new(spec, config.beta).unwrap();
    let report = verify_modular(
        &data,
        &build_system(spec, Side::A),
        &build_system(spec, Side::B),
        &config,
    )
    .unwrap();
    let tail_tol = 10.0 * (-config.beta * 16.0).exp();
    let ok = report.overall_pass;
    criterion_line(3, ok, "modular suite: J, Delta, S identities at pinned tolerances");

    assert_eq!(report.entry("j_squared_identity").unwrap().residual, 0.0);
    assert!(report.entry("j_antiunitarity").unwrap().residual <= 1e-12);
    assert!(report.entry("j_maps_qa_to_qb").unwrap().residual <= 1e-13);
    assert!(report.entry("j_maps_qadag_to_qbdag").unwrap().residual <= 1e-13);
    assert!(report.entry("j_maps_ha_to_hb").unwrap().residual <= 1e-13);
    assert!(report.entry("j_maps_hb_to_ha").unwrap().residual <= 1e-13);
    assert_eq!(report.entry("j_fixes_omega").unwrap().residual, 0.0);
    // Delta-invariance holds on the doublet-paired thermal vector; the
    // equal-occupation vector sits outside the kernel of H_a - H_b
    assert!(report.entry("delta_fixes_paired_omega").unwrap().residual <= tail_tol);
    assert!(report.entry("j_delta_half_conjugation").unwrap().residual <= 1e-12);
    for id in ["s_action_qa", "s_action_qadag", "s_action_qb", "s_action_qbdag"] {
        assert!(
            report.entry(id).unwrap().residual <= tail_tol.max(1e-10),
            "{id} above tail tolerance"
        );
    }
    assert!(ok, "failing: {:?}", report.failing().collect::<Vec<_>>());
}

#[test]
fn criterion_4_modular_flow_phases() {
    let spec = desk_spec();
    let sys_a = build_system(spec, Side::A);
    let mut ok = true;
    for beta in [0.5, 1.0, 2.0] {
        for t in [0.3, 1.0, 2.7] {
            // fast elementwise route
            let flowed = flow_conjugate(spec, beta, t, sys_a.q()).unwrap();
            // oracle route: the literal triple product of flow matrices
            let ft = modular_flow(spec, beta, t).unwrap();
            let ft_inv = modular_flow(spec, beta, -t).unwrap();
            let triple = ft.mul(sys_a.q()).unwrap().mul(&ft_inv).unwrap();
            let expected = sys_a.q().scaled(Complex64::new(0.0, -beta * t).exp());
            let fast_defect = flowed.sub(&expected).unwrap().spectral_norm();
            let oracle_defect = triple.sub(&expected).unwrap().spectral_norm();
            ok &= fast_defect <= 1e-12 && oracle_defect <= 1e-12;
            assert!(
                fast_defect <= 1e-12 && oracle_defect <= 1e-12,
                "beta={beta} t={t}: defects {fast_defect}, {oracle_defect}"
            );
        }
    }
    criterion_line(
        4,
        ok,
        "flow rotates Q_a by e^{-i beta t} for t in {0.3,1,2.7}, beta in {0.5,1,2}",
    );
}

#[test]
fn criterion_5_concurrence_sweep() {
    let spec = desk_spec();
    let j = modular_conjugation(spec).unwrap();
    let mut rng = seeded_rng(42, 5);
    let mut ok = true;
    for i in 0..100 {
        let (alpha, beta) = random_amplitude_pair(&mut rng);
        let k = 1 + (i % 13);
        let phi = supermultiplet_state(spec, k, alpha, beta).unwrap();
        let modular = concurrence_via_modular(&j, phi.state()).unwrap();
        let closed = 2.0 * (alpha * beta).norm();
        let wootters = concurrence_wootters(phi.state());
        ok &= (modular - closed).abs() <= 1e-12;
        ok &= (modular - wootters).abs() <= 1e-10;
        assert!(
            (modular - closed).abs() <= 1e-12,
            "k={k}: modular {modular} vs closed {closed}"
        );
        assert!(
            (modular - wootters).abs() <= 1e-10,
            "k={k}: modular {modular} vs wootters {wootters}"
        );
    }
    let inv_sqrt2 = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
    let maximal = supermultiplet_state(spec, 1, inv_sqrt2, inv_sqrt2).unwrap();
    let c_max = concurrence_via_modular(&j, maximal.state()).unwrap();
    ok &= (c_max - 1.0).abs() <= 1e-12;
    assert!((c_max - 1.0).abs() <= 1e-12);
    let product = supermultiplet_state(
        spec,
        1,
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
    )
    .unwrap();
    let c_product = concurrence_via_modular(&j, product.state()).unwrap();
    ok &= c_product == 0.0;
    assert_eq!(c_product, 0.0);
    // formation endpoints ride on the same sweep
    assert_eq!(entanglement_of_formation(c_product).unwrap(), 0.0);
    assert!((entanglement_of_formation(c_max.min(1.0)).unwrap() - 1.0).abs() <= 1e-9);
    criterion_line(
        5,
        ok,
        "concurrence = 2|alpha beta| on 100 seeded pairs, matching the partial-trace oracle",
    );
}

#[test]
fn criterion_6_dirac_sector() {
    let config = desk_config();
    let spec = desk_spec();
    let report = verify_nonlinear_susy(spec, &config).unwrap();
    let ok = report.overall_pass;
    criterion_line(
        6,
        ok,
        "Dirac spectra match ±omega_d sqrt(n), squares reduce to H_a, J closes the family",
    );
    // spectrum containment at 1e-9 for n = 1..13 (covers the required 1..12)
    for id in [
        "dirac_spectrum_aplus",
        "dirac_spectrum_aminus",
        "dirac_spectrum_bplus",
        "dirac_spectrum_bminus",
    ] {
        assert!(report.entry(id).unwrap().residual <= 1e-9, "{id}");
    }
    assert!(report.entry("dirac_aplus_squared_eq_ha").unwrap().residual <= 1e-12);
    assert!(report.entry("dirac_aminus_squared_eq_transposed").unwrap().residual <= 1e-12);
    for id in [
        "j_dirac_aplus_to_bminus",
        "j_dirac_bminus_to_aplus",
        "j_dirac_aminus_to_bplus",
        "j_dirac_bplus_to_aminus",
    ] {
        assert!(report.entry(id).unwrap().residual <= 1e-13, "{id}");
    }
    assert!(ok, "failing: {:?}", report.failing().collect::<Vec<_>>());
}

#[test]
fn criterion_7_jaynes_cummings_sector() {
    let config = desk_config();
    let spec = desk_spec();
    let report = verify_jc_mapping(spec, &config).unwrap();
    let ok = report.overall_pass;
    criterion_line(
        7,
        ok,
        "JC energies omega*l ± g sqrt(l) - omega/2 match, dressed vectors align, J maps JC to AJC",
    );
    assert!(report.entry("jc_spectrum_match").unwrap().residual <= 1e-9);
    assert!(report.entry("ajc_spectrum_match").unwrap().residual <= 1e-9);
    // overlap defect 1 - |<v|pattern>| at most 1e-9
    assert!(report.entry("jc_dressed_eigenvectors").unwrap().residual <= 1e-9);
    assert!(report.entry("j_jc_to_ajc").unwrap().residual <= 1e-13);
    assert!(report.entry("j_ajc_to_jc").unwrap().residual <= 1e-13);
    assert!(ok, "failing: {:?}", report.failing().collect::<Vec<_>>());
}

#[test]
fn criterion_8_truncation_convergence() {
    let beta = 1.0;
    let mut previous = f64::INFINITY;
    let mut ok = true;
    for cut in [8usize, 16, 32] {
        let spec = FockSpec::square(cut).unwrap();
        let deficit = omega_truncation_deficit(spec, beta).unwrap();
        let bound = (-beta * cut as f64).exp();
        ok &= deficit < previous && deficit <= bound;
        assert!(
            deficit < previous,
            "cut={cut}: deficit {deficit} did not decrease from {previous}"
        );
        assert!(deficit <= bound, "cut={cut}: deficit {deficit} above e^-beta*cut {bound}");
        previous = deficit;
    }
    criterion_line(
        8,
        ok,
        "thermal truncation deficit decreases monotonically over cutoffs 8, 16, 32 within e^{-beta*cut}",
    );
}
