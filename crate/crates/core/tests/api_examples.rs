//! The snippets shown in the README, kept compiling.

use std::f64::consts::PI;

use qwalk_core::spectrum::spectrum_arcs;
use qwalk_core::{
    cis, classify, transfer_eigenfunction, verify_stationary, CoinMatrix, InitialVector, PeriodVerdict,
    StationaryClass, C64,
};

#[test]
fn classify_example() -> qwalk_core::Result<()> {
    let phi = InitialVector::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))?;
    match classify(PI / 6.0, phi)? {
        StationaryClass::BoundedOscillatory { period, .. } => {
            assert_eq!(period, PeriodVerdict::Finite { m_min: 4 });
        }
        other => panic!("unexpected class {}", other.name()),
    }
    Ok(())
}

#[test]
fn eigenfunction_example() -> qwalk_core::Result<()> {
    let coin = CoinMatrix::hadamard();
    let phi = InitialVector::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8))?;
    let psi = transfer_eigenfunction(&coin, cis(1.0), phi, -20, 20)?;
    let mu = psi.measure();
    assert_eq!(mu.values().len(), 41);

    let report = verify_stationary(&coin, cis(1.0), phi, 64, 10, 1e-10)?;
    assert!(report.passed);
    Ok(())
}

#[test]
fn spectrum_example() -> qwalk_core::Result<()> {
    let arcs = spectrum_arcs(&CoinMatrix::hadamard(), 4096)?;
    assert_eq!(arcs.len(), 3);
    assert!((arcs[0].hi - PI / 4.0).abs() < 1e-12);
    Ok(())
}
