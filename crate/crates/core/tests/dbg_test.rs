use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siklos_core::ambient::{AmbientGeometry, DefiningFunction};
use siklos_core::hypersurface::{gauss_codazzi_residuals, Immersion};

#[test]
fn bisect_random_immersions() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let h_sources = ["x3^2 + x2*x4", "x3^3", "x3^2 * sin(x2)"];
    for idx in 0..10 {
        let geo = AmbientGeometry::new(
            1.0,
            DefiningFunction::parse(h_sources[idx % h_sources.len()]).unwrap(),
        )
        .unwrap();
        let mut c = || rng.random_range(-0.6..0.6);
        let f4 = format!(
            "({}) * u2^2 + ({}) * u2 * u3 + ({}) * sin(u2) + ({}) * u1 + ({}) * u3",
            c(), c(), c(), c(), c()
        );
        let f = Immersion::parse(["u1", "u2", "u3", &f4]).unwrap();
        let mut worst = (0.0f64, 0.0f64);
        let mut wu = [0.0; 3];
        for _ in 0..20 {
            let u = [
                rng.random_range(-1.5..1.5),
                rng.random_range(-1.5..1.5),
                rng.random_range(0.6..2.5),
            ];
            let r = gauss_codazzi_residuals(&geo, &f, u).unwrap();
            if r.gauss.max(r.codazzi) > worst.0.max(worst.1) {
                worst = (r.gauss, r.codazzi);
                wu = u;
            }
        }
        println!("imm {idx}: H={} gauss={:.2e} codazzi={:.2e} at {:?} f4={}",
                 h_sources[idx % h_sources.len()], worst.0, worst.1, wu, f4);
    }
}
