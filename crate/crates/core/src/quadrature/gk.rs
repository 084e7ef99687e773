//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::QuadratureSpec;
use crate::error::{Error, Result};

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
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value + o.value,
            error: self.error + o.error,
            evaluations: self.evaluations + o.evaluations,
            intervals: self.intervals + o.intervals,
        }
    }
}

impl Estimate {
    pub fn zero() -> Self {
        Estimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
            intervals: 0,
        }
    }

    pub fn scale(self, c: Complex64) -> Self {
        Estimate {
            value: self.value * c,
            error: self.error * c.norm(),
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    floor: f64,
    // insertion counter; ties on error are broken by age so runs are reproducible
    seq: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // panels already at their rounding floor are refined last
        (self.error - self.floor)
            .total_cmp(&(other.error - other.floor))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
pub fn kronrod15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let (v, e, _) = kronrod15_floor(f, a, b);
    (v, e)
}

/// As [`kronrod15`], also returning the rounding floor `50ε∫|f|` the error is clamped to.
fn kronrod15_floor<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let centr = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let fc = f(centr);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.norm();
    let mut fv1 = [Complex64::new(0.0, 0.0); 7];
    let mut fv2 = [Complex64::new(0.0, 0.0); 7];
    for j in 0..3 {
        let jtw = 2 * j + 1;
        let x = hl * XGK[jtw];
        let f1 = f(centr - x);
        let f2 = f(centr + x);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += (f1 + f2) * WG[j];
        resk += (f1 + f2) * WGK[jtw];
        resabs += WGK[jtw] * (f1.norm() + f2.norm());
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let x = hl * XGK[jtwm1];
        let f1 = f(centr - x);
        let f2 = f(centr + x);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += (f1 + f2) * WGK[jtwm1];
        resabs += WGK[jtwm1] * (f1.norm() + f2.norm());
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).norm() + (fv2[j] - reskh).norm());
    }
    let ahl = hl.abs();
    let result = resk * hl;
    resabs *= ahl;
    resasc *= ahl;
    let mut err = ((resk - resg) * hl).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let mut floor = 0.0;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        floor = 50.0 * f64::EPSILON * resabs;
        err = err.max(floor);
    }
    if !result.re.is_finite() || !result.im.is_finite() {
        err = f64::INFINITY;
    }
    (result, err, floor)
}

/// Integrates `f` over `[breaks[0], breaks[last]]`, starting from the panels between
/// consecutive break points. Break points must be non-decreasing; zero-width panels are skipped.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, breaks: &[f64], spec: &QuadratureSpec) -> Result<Estimate> {
    integrate_recording(f, breaks, spec).map(|(e, _)| e)
}

/// As [`integrate`], also returning the final panel partition.
pub fn integrate_recording<F: Fn(f64) -> Complex64>(
    f: F,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<(Estimate, Vec<[f64; 2]>)> {
    if breaks.len() < 2 {
        return Ok((Estimate::zero(), Vec::new()));
    }
    let mut heap = BinaryHeap::new();
    let mut seq = 0usize;
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut frozen_err = 0.0;
    // sum of the per-panel rounding floors; once the estimate is within twice this the
    // integral (typically one that cancels to near zero) cannot be resolved further
    let mut total_floor = 0.0;
    let mut evals = 0usize;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let (v, e, fl) = kronrod15_floor(&f, a, b);
        evals += 15;
        total += v;
        total_err += e;
        total_floor += fl;
        heap.push(Panel { a, b, value: v, error: e, floor: fl, seq });
        seq += 1;
    }
    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * total.norm());
        if total_err <= tol || total_err <= 2.0 * total_floor {
            break;
        }
        if heap.len() >= spec.max_subdivisions {
            return Err(Error::Precision {
                achieved: total_err,
                requested: tol,
                value: total,
            });
        }
        let Some(p) = heap.pop() else { break };
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) || (p.b - p.a) < 64.0 * f64::EPSILON * p.a.abs().max(p.b.abs()) {
            // cannot be refined further in double precision; keep it and stop refining it
            frozen_err += p.error;
            if total_err - frozen_err <= 0.0 || heap.is_empty() {
                if total_err <= tol.max(frozen_err * 1.0001) {
                    break;
                }
                return Err(Error::Precision {
                    achieved: total_err,
                    requested: tol,
                    value: total,
                });
            }
            continue;
        }
        let (v1, e1, f1) = kronrod15_floor(&f, p.a, mid);
        let (v2, e2, f2) = kronrod15_floor(&f, mid, p.b);
        total_floor += f1 + f2 - p.floor;
        evals += 30;
        total += v1 + v2 - p.value;
        total_err += e1 + e2 - p.error;
        heap.push(Panel { a: p.a, b: mid, value: v1, error: e1, floor: f1, seq });
        heap.push(Panel { a: mid, b: p.b, value: v2, error: e2, floor: f2, seq: seq + 1 });
        seq += 2;
    }
    // re-sum to remove drift from the running updates
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = frozen_err;
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    for p in &panels {
        value += p.value;
        error += p.error;
    }
    let est = Estimate {
        value,
        error,
        evaluations: evals,
        intervals: panels.len(),
    };
    Ok((est, panels.iter().map(|p| [p.a, p.b]).collect()))
}

/// Applies the 15-point rule on a fixed partition, without adaptation.
pub fn apply_panels<F: Fn(f64) -> Complex64>(f: F, panels: &[[f64; 2]]) -> Estimate {
    let mut e = Estimate::zero();
    for p in panels {
        let (v, err) = kronrod15(&f, p[0], p[1]);
        e.value += v;
        e.error += err;
        e.evaluations += 15;
        e.intervals += 1;
    }
    e
}

/// Drives a sequence of integrations either adaptively, recording the partitions, or by
/// replaying previously recorded partitions on a different integrand.
#[derive(Debug, Clone, Default)]
pub(crate) struct Runner {
    replay: bool,
    panels: Vec<Vec<[f64; 2]>>,
    cursor: usize,
}

impl Runner {
    pub(crate) fn adaptive() -> Self {
        Runner::default()
    }

    pub(crate) fn into_replay(self) -> Self {
        Runner {
            replay: true,
            panels: self.panels,
            cursor: 0,
        }
    }

    pub(crate) fn run<F: Fn(f64) -> Complex64>(&mut self, f: F, breaks: &[f64], spec: &QuadratureSpec) -> Result<Estimate> {
        if self.replay {
            let p = self
                .panels
                .get(self.cursor)
                .ok_or_else(|| Error::Domain("replayed integration has a different structure".into()))?;
            self.cursor += 1;
            Ok(apply_panels(f, p))
        } else {
            let (e, p) = integrate_recording(f, breaks, spec)?;
            self.panels.push(p);
            Ok(e)
        }
    }
}
