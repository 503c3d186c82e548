//! Nelder–Mead downhill simplex over `R^N`.

/// Coefficients and stopping rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMead {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Stop once every vertex is within this sup-norm distance of the best one.
    pub diameter_tol: f64,
    /// Hard cap on function evaluations, the initial simplex included.
    pub max_evals: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            diameter_tol: 1e-9,
            max_evals: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum<const N: usize> {
    pub x: [f64; N],
    pub value: f64,
    pub evals: usize,
}

fn lerp<const N: usize>(from: &[f64; N], to: &[f64; N], s: f64) -> [f64; N] {
    core::array::from_fn(|i| from[i] + s * (to[i] - from[i]))
}

impl NelderMead {
    /// Minimizes `f` starting from `x0` with an axis-aligned initial simplex of the given
    /// `steps`. Deterministic: identical inputs give identical trajectories, so raising
    /// `max_evals` only extends a run.
    ///
    /// `D` must equal `N + 1` (the vertex count).
    pub fn minimize<const N: usize, const D: usize>(
        &self,
        mut f: impl FnMut(&[f64; N]) -> f64,
        x0: [f64; N],
        steps: [f64; N],
    ) -> Minimum<N> {
        assert_eq!(D, N + 1, "simplex needs N + 1 vertices");
        let f0 = f(&x0);
        let mut evals = 1;
        if self.max_evals < D {
            return Minimum {
                x: x0,
                value: f0,
                evals,
            };
        }
        let mut pts = [x0; D];
        let mut vals = [f0; D];
        for i in 0..N {
            pts[i + 1][i] += steps[i];
            vals[i + 1] = f(&pts[i + 1]);
            evals += 1;
        }

        loop {
            // order vertices best first; a stable sort keeps ties in insertion order
            let mut order: [usize; D] = core::array::from_fn(|i| i);
            order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
            pts = order.map(|i| pts[i]);
            vals = order.map(|i| vals[i]);

            let diameter = pts[1..]
                .iter()
                .flat_map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if diameter < self.diameter_tol || evals >= self.max_evals {
                break;
            }

            let mut centroid = [0.0; N];
            for p in &pts[..N] {
                for i in 0..N {
                    centroid[i] += p[i] / N as f64;
                }
            }
            let worst = pts[N];
            let xr = lerp(&centroid, &worst, -self.reflection);
            let fr = f(&xr);
            evals += 1;

            if fr < vals[0] {
                if evals >= self.max_evals {
                    pts[N] = xr;
                    vals[N] = fr;
                    continue;
                }
                let xe = lerp(&centroid, &worst, -self.reflection * self.expansion);
                let fe = f(&xe);
                evals += 1;
                if fe < fr {
                    pts[N] = xe;
                    vals[N] = fe;
                } else {
                    pts[N] = xr;
                    vals[N] = fr;
                }
                continue;
            }
            if fr < vals[N - 1] {
                pts[N] = xr;
                vals[N] = fr;
                continue;
            }
            if evals >= self.max_evals {
                continue;
            }
            // contraction: outside if the reflection beat the worst vertex, inside otherwise
            let (xc, fc) = if fr < vals[N] {
                let xc = lerp(&centroid, &xr, self.contraction);
                (xc, f(&xc))
            } else {
                let xc = lerp(&centroid, &worst, self.contraction);
                (xc, f(&xc))
            };
            evals += 1;
            if fc < vals[N].min(fr) {
                pts[N] = xc;
                vals[N] = fc;
                continue;
            }
            for k in 1..D {
                if evals >= self.max_evals {
                    break;
                }
                pts[k] = lerp(&pts[0], &pts[k], self.shrink);
                vals[k] = f(&pts[k]);
                evals += 1;
            }
        }
        Minimum {
            x: pts[0],
            value: vals[0],
            evals,
        }
    }
}
