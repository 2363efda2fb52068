/// Neumaier-compensated sum.
pub(crate) fn sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut total = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = total + v;
        if total.abs() >= v.abs() {
            comp += (total - t) + v;
        } else {
            comp += (v - t) + total;
        }
        total = t;
    }
    total + comp
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    sum(values.iter().copied()) / values.len() as f64
}

/// Trapezoidal integral of `values` sampled at strictly increasing `grid`.
pub(crate) fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    sum(grid
        .windows(2)
        .zip(values.windows(2))
        .map(|(f, v)| 0.5 * (f[1] - f[0]) * (v[0] + v[1])))
}
