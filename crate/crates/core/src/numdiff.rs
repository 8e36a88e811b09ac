//! Richardson-extrapolated central differences (Ridders' tableau).

/// Central difference approximation of `f^(k)(x)` with step `h`, `1 <= k <= 4`.
fn central<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64, k: usize) -> f64 {
    match k {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        3 => {
            (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h.powi(3))
        }
        4 => {
            (f(x + 2.0 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h))
                / h.powi(4)
        }
        _ => panic!("central differences implemented for orders 1..=4, got {k}"),
    }
}

/// Half-width of the central stencil for order `k`, in units of the step.
pub fn stencil_reach(k: usize) -> f64 {
    if k <= 2 {
        1.0
    } else {
        2.0
    }
}

/// Estimates `f^(k)(x)` starting from step `h`; returns `(estimate, error estimate)`.
pub fn richardson<F: Fn(f64) -> f64>(f: F, x: f64, h: f64, k: usize) -> (f64, f64) {
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    const NTAB: usize = 12;
    const SAFE: f64 = 2.0;

    let mut table = [[0.0f64; NTAB]; NTAB];
    let mut step = h;
    table[0][0] = central(&f, x, step, k);
    let mut best = table[0][0];
    let mut err = f64::INFINITY;
    for i in 1..NTAB {
        step /= CON;
        table[0][i] = central(&f, x, step, k);
        let mut fac = CON2;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let errt = (table[j][i] - table[j - 1][i])
                .abs()
                .max((table[j][i] - table[j - 1][i - 1]).abs());
            if errt <= err {
                err = errt;
                best = table[j][i];
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= SAFE * err {
            break;
        }
    }
    (best, err)
}
