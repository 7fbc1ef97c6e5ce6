use crate::source::gaussian_pulse;

/// Free-space field of a Gaussian launched at `z = 0`: two counter-propagating
/// halves `½·g(t − z/c) + ½·g(t + z/c)`. `t`, `t0` and `spread` share one
/// time unit; `z / c` must be in that unit too.
pub fn dalembert_gaussian(z: f64, t: f64, t0: f64, spread: f64, c: f64) -> f64 {
    let delay = z / c;
    0.5 * gaussian_pulse(t - delay, t0, spread) + 0.5 * gaussian_pulse(t + delay, t0, spread)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::C0;
    use proptest::prelude::*;

    const T0: f64 = 4e-9;
    const SPREAD: f64 = 1e-9;

    #[test]
    fn peak_and_halves() {
        assert_eq!(dalembert_gaussian(0.0, T0, T0, SPREAD, C0), 1.0);
        let t = 30e-9;
        let v = dalembert_gaussian(C0 * (t - T0), t, T0, SPREAD, C0);
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn satisfies_wave_equation_to_second_order() {
        let (z, t) = (0.4, 5.5e-9);
        let f = |z: f64, t: f64| dalembert_gaussian(z, t, T0, SPREAD, C0);
        // half the characteristic time step, so the truncation error does not cancel
        let residual = |h: f64| {
            let ht = 0.5 * h / C0;
            let ftt = (f(z, t + ht) - 2.0 * f(z, t) + f(z, t - ht)) / (ht * ht);
            let fzz = (f(z + h, t) - 2.0 * f(z, t) + f(z - h, t)) / (h * h);
            (ftt - C0 * C0 * fzz).abs()
        };
        let (e1, e2) = (residual(0.02), residual(0.01));
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
    }

    proptest! {
        #[test]
        fn even_in_z(z in -3.0f64..3.0, t in 0.0f64..2e-8) {
            prop_assert_eq!(
                dalembert_gaussian(z, t, T0, SPREAD, C0),
                dalembert_gaussian(-z, t, T0, SPREAD, C0)
            );
        }
    }
}
