use super::{check_start, Objective, OptimizerConfig, OptimizerTrace, TerminalReason, TraceRecord};
use crate::error::Result;

const GOLD: f64 = 1.618_034;
const CGOLD: f64 = 0.381_966_0;
const GROW_LIMIT: f64 = 100.0;
const TINY: f64 = 1e-20;
const LINE_TOLERANCE: f64 = 1.48e-8;
const LINE_ZEPS: f64 = 1e-12;
const MAX_BRACKET_STEPS: usize = 60;
const MAX_BRENT_STEPS: usize = 200;

/// `f(x + t·d)` with evaluation counting.
struct Line<'o, 'a> {
    obj: &'o mut Objective<'a>,
    x: &'o [f64],
    d: &'o [f64],
}

impl Line<'_, '_> {
    fn at(&mut self, t: f64) -> Result<f64> {
        let p: Vec<f64> = self.x.iter().zip(self.d).map(|(xi, di)| xi + t * di).collect();
        self.obj.evaluate(&p)
    }
}

fn with_sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Downhill bracketing from `(0, f0)` with golden growth and parabolic
/// extrapolation. Returns `(a, b, c, f(b))` with `f(b)` no larger than `f0`.
fn bracket(line: &mut Line<'_, '_>, f0: f64) -> Result<(f64, f64, f64, f64)> {
    let (mut ax, mut bx) = (0.0, 1.0);
    let mut fa = f0;
    let mut fb = line.at(bx)?;
    if fb > fa {
        std::mem::swap(&mut ax, &mut bx);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut cx = bx + GOLD * (bx - ax);
    let mut fc = line.at(cx)?;
    let mut steps = 0;
    while fb > fc && steps < MAX_BRACKET_STEPS {
        steps += 1;
        let r = (bx - ax) * (fb - fc);
        let q = (bx - cx) * (fb - fa);
        let mut u = bx - ((bx - cx) * q - (bx - ax) * r) / (2.0 * with_sign((q - r).abs().max(TINY), q - r));
        let ulim = bx + GROW_LIMIT * (cx - bx);
        let mut fu;
        if (bx - u) * (u - cx) > 0.0 {
            fu = line.at(u)?;
            if fu < fc {
                return Ok((bx, u, cx, fu));
            } else if fu > fb {
                return Ok((ax, bx, u, fb));
            }
            u = cx + GOLD * (cx - bx);
            fu = line.at(u)?;
        } else if (cx - u) * (u - ulim) > 0.0 {
            fu = line.at(u)?;
            if fu < fc {
                bx = cx;
                cx = u;
                u = cx + GOLD * (cx - bx);
                fb = fc;
                fc = fu;
                fu = line.at(u)?;
            }
        } else if (u - ulim) * (ulim - cx) >= 0.0 {
            u = ulim;
            fu = line.at(u)?;
        } else {
            u = cx + GOLD * (cx - bx);
            fu = line.at(u)?;
        }
        ax = bx;
        bx = cx;
        cx = u;
        fa = fb;
        fb = fc;
        fc = fu;
    }
    let _ = fa;
    Ok((ax, bx, cx, fb))
}

/// Brent's parabolic/golden-section search inside a bracket.
fn brent(line: &mut Line<'_, '_>, ax: f64, bx: f64, cx: f64, fbx: f64) -> Result<(f64, f64)> {
    let (mut a, mut b) = if ax < cx { (ax, cx) } else { (cx, ax) };
    let (mut x, mut w, mut v) = (bx, bx, bx);
    let (mut fx, mut fw, mut fv) = (fbx, fbx, fbx);
    let (mut d, mut e): (f64, f64) = (0.0, 0.0);
    for _ in 0..MAX_BRENT_STEPS {
        let xm = 0.5 * (a + b);
        let tol1 = LINE_TOLERANCE * x.abs() + LINE_ZEPS;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if !(p.abs() >= (0.5 * q * etemp).abs() || p <= q * (a - x) || p >= q * (b - x)) {
                golden = false;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = with_sign(tol1, xm - x);
                }
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + with_sign(tol1, d) };
        let fu = line.at(u)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            w = x;
            x = u;
            fv = fw;
            fw = fx;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                w = u;
                fv = fw;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx))
}

/// Minimizes along `d` from `x` (where the value is `fx`); moves `x` in place.
fn line_minimize(obj: &mut Objective<'_>, x: &mut [f64], d: &[f64], fx: f64) -> Result<f64> {
    let (t, f) = {
        let mut line = Line { obj, x, d };
        let (a, b, c, fb) = bracket(&mut line, fx)?;
        brent(&mut line, a, b, c, fb)?
    };
    if f < fx {
        for (xi, di) in x.iter_mut().zip(d) {
            *xi += t * di;
        }
        Ok(f)
    } else {
        Ok(fx)
    }
}

/// Powell's conjugate direction-set method.
///
/// Each iteration is one sweep of line minimizations over the current
/// direction set, starting from the coordinate axes. After the sweep the
/// net displacement replaces the direction of largest decrease when
/// Powell's test says it is worth it. Stops when a sweep improves the
/// value by less than `f_tolerance`, moves no coordinate by more than
/// `x_tolerance`, or after `max_iterations` sweeps.
pub fn powell(obj: &mut Objective<'_>, x0: &[f64], cfg: &OptimizerConfig) -> Result<OptimizerTrace> {
    check_start(x0, cfg)?;
    let n = x0.len();
    let mut directions: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut x = x0.to_vec();
    let mut fx = obj.evaluate(&x)?;
    let mut records = Vec::new();
    let mut reason = TerminalReason::MaxIterations;

    for iteration in 1..=cfg.max_iterations {
        let start = x.clone();
        let f_start = fx;
        let mut biggest = 0;
        let mut biggest_drop = 0.0;
        for (i, d) in directions.iter().enumerate() {
            let before = fx;
            fx = line_minimize(obj, &mut x, d, fx)?;
            if before - fx > biggest_drop {
                biggest_drop = before - fx;
                biggest = i;
            }
        }

        let f_drop = f_start - fx;
        let x_move = x.iter().zip(&start).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if f_drop < cfg.f_tolerance || x_move < cfg.x_tolerance {
            records.push(TraceRecord {
                iteration,
                best_energy: fx,
                incumbent: x.clone(),
            });
            reason = if f_drop < cfg.f_tolerance {
                TerminalReason::ConvergedF
            } else {
                TerminalReason::ConvergedX
            };
            break;
        }

        let shift: Vec<f64> = x.iter().zip(&start).map(|(a, b)| a - b).collect();
        let extrapolated: Vec<f64> = x.iter().zip(&shift).map(|(a, s)| a + s).collect();
        let f_ext = obj.evaluate(&extrapolated)?;
        if f_ext < f_start {
            let t = 2.0 * (f_start - 2.0 * fx + f_ext) * (f_start - fx - biggest_drop).powi(2)
                - biggest_drop * (f_start - f_ext).powi(2);
            if t < 0.0 {
                fx = line_minimize(obj, &mut x, &shift, fx)?;
                directions[biggest] = directions[n - 1].clone();
                directions[n - 1] = shift;
            }
        }
        records.push(TraceRecord {
            iteration,
            best_energy: fx,
            incumbent: x.clone(),
        });
    }

    Ok(OptimizerTrace {
        method: cfg.method,
        final_point: x,
        records,
        terminal_reason: reason,
        evaluations: obj.evaluation_count(),
        shrinks: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimize::Method;

    #[test]
    fn line_search_finds_parabola_vertex() {
        let mut obj = Objective::from_fn(|x| (x[0] - 3.7).powi(2) + 1.0);
        let mut x = vec![0.0];
        let f = line_minimize(&mut obj, &mut x, &[1.0], 3.7f64.powi(2) + 1.0).unwrap();
        assert!((x[0] - 3.7).abs() < 1e-7);
        assert!((f - 1.0).abs() < 1e-13);
    }

    #[test]
    fn line_search_never_worsens() {
        let mut obj = Objective::from_fn(|x| x[0].abs());
        let mut x = vec![0.0];
        let f = line_minimize(&mut obj, &mut x, &[1.0], 0.0).unwrap();
        assert_eq!(f, 0.0);
        assert!(x[0].abs() < 1e-6);
    }

    #[test]
    fn coupled_quadratic() {
        let mut obj = Objective::from_fn(|x| {
            let (a, b) = (x[0] - 1.0, x[1] + 2.0);
            a * a + b * b + 1.5 * a * b
        });
        let trace = powell(&mut obj, &[0.0, 0.0], &OptimizerConfig::new(Method::Powell)).unwrap();
        assert!(trace.best_energy() < 1e-12, "{}", trace.best_energy());
    }

    #[test]
    fn constant_objective_converges_immediately() {
        let mut obj = Objective::from_fn(|_| -1.0);
        let trace = powell(&mut obj, &[0.3, 0.1], &OptimizerConfig::new(Method::Powell)).unwrap();
        assert_eq!(trace.iterations(), 1);
        assert_eq!(trace.terminal_reason, TerminalReason::ConvergedF);
    }
}
