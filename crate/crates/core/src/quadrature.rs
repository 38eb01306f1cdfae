//! Global adaptive Gauss–Kronrod (7/15) quadrature, with semi-infinite
//! ranges compactified by x = a + w/(1 − w) and 2-D integrals done by nesting.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for (j, &x) in XGK[..7].iter().enumerate() {
        let s = f(c - h * x) + f(c + h * x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// ∫_a^b f on a finite interval, refined until the summed error estimate is
/// below `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Estimate {
    let (v, e) = gk15(&mut f, a, b);
    let mut segs = vec![(a, b, v, e)];
    let mut error = e;
    while error > tol && segs.len() < MAX_SEGMENTS {
        let worst = (0..segs.len()).max_by(|&i, &j| segs[i].3.total_cmp(&segs[j].3)).unwrap();
        let (lo, hi, _, e) = segs.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        error += e1 + e2 - e;
        segs.push((lo, mid, v1, e1));
        segs.push((mid, hi, v2, e2));
    }
    Estimate { value: segs.iter().map(|s| s.2).sum(), error: segs.iter().map(|s| s.3).sum() }
}

/// ∫_a^∞ f.
pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(mut f: F, a: f64, tol: f64) -> Estimate {
    integrate(
        |w| {
            if w >= 1.0 {
                return 0.0;
            }
            let d = 1.0 - w;
            f(a + w / d) / (d * d)
        },
        0.0,
        1.0,
        tol,
    )
}

/// ∫_{x0}^{x1} ∫_{y0(x)}^{y1(x)} f(x, y) dy dx.
pub fn integrate_2d<F, L, U>(f: F, x0: f64, x1: f64, y0: L, y1: U, tol: f64) -> Estimate
where
    F: Fn(f64, f64) -> f64,
    L: Fn(f64) -> f64,
    U: Fn(f64) -> f64,
{
    let width = (x1 - x0).abs().max(1e-300);
    let mut inner_err = 0.0;
    let outer = integrate(
        |x| {
            let e = integrate(|y| f(x, y), y0(x), y1(x), 0.1 * tol / width);
            inner_err = f64::max(inner_err, e.error);
            e.value
        },
        x0,
        x1,
        0.5 * tol,
    );
    Estimate { value: outer.value, error: outer.error + inner_err * width }
}

/// ∫_0^∞ ∫_0^∞ f(u, v) du dv on the compactified unit square.
pub fn integrate_quadrant<F: Fn(f64, f64) -> f64>(f: F, tol: f64) -> Estimate {
    let g = |s: f64, t: f64| {
        if s >= 1.0 || t >= 1.0 {
            return 0.0;
        }
        let (ds, dt) = (1.0 - s, 1.0 - t);
        f(s / ds, t / dt) / (ds * ds * dt * dt)
    };
    integrate_2d(g, 0.0, 1.0, |_| 0.0, |_| 1.0, tol)
}
