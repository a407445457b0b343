use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oddtrans::generators::{self, fixtures};
use oddtrans::spectral::{self, SpectralOptions};

#[test]
fn radius_lies_between_average_and_max_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = 0;
    for _ in 0..400 {
        let Some(g) = generators::random_uniform(9, 4, 7, &mut rng) else { continue };
        if g.degrees().contains(&0) || !g.is_connected() {
            continue;
        }
        seen += 1;
        let p = spectral::spectral_radius(&g, 1e-10, 100_000).unwrap();
        let d = g.degrees();
        let avg = d.iter().sum::<usize>() as f64 / d.len() as f64;
        let max = *d.iter().max().unwrap() as f64;
        assert!(p.converged);
        assert!(p.rho_lower <= p.rho && p.rho - p.rho_lower < 1e-10);
        assert!(avg - 1e-9 <= p.rho && p.rho <= max + 1e-9);
        assert!(p.residual < 1e-8);
        assert!(p.vector.iter().all(|&x| x > 0.0));
    }
    assert!(seen > 20);
}

#[test]
fn nonregular_example_bounds_hold() {
    let g = &fixtures()["nonregular_9v"];
    let b = spectral::bound_report(g, &SpectralOptions::default()).unwrap();
    assert!(b.lambda_min_upper <= b.bound2 + 1e-8);
    assert!(b.lambda_min_upper <= b.bound1 + 1e-8);
    assert!(b.lambda_min_upper >= -b.rho - 1e-8);
    assert!(b.flip_identity_error < 1e-10);
    assert!(b.beta > 0.0 && b.beta < 1.0);
}

#[test]
fn estimate_is_reproducible_for_a_seed() {
    let g = generators::cycle_power(7, 4).unwrap();
    let opts = SpectralOptions { seed: 3, ..SpectralOptions::default() };
    let a = spectral::bound_report(&g, &opts).unwrap();
    let b = spectral::bound_report(&g, &opts).unwrap();
    assert_eq!(a, b);
}

#[test]
fn non_minimal_inputs_are_refused_by_bound_report() {
    let g = generators::cayley(9, 6).unwrap();
    assert_eq!(
        spectral::bound_report(&g, &SpectralOptions::default()),
        Err(spectral::SpectralError::NotMinimal)
    );
    let odd = generators::cayley(7, 3).unwrap();
    assert!(matches!(
        spectral::bound_report(&odd, &SpectralOptions::default()),
        Err(spectral::SpectralError::OddUniformity(3))
    ));
}
