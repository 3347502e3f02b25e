//! Unconstrained Nelder–Mead simplex search.

use alloc::vec::Vec;

pub(crate) struct NelderMead {
    pub max_iterations: usize,
    /// Stop once the spread of objective values across the simplex drops below this.
    pub f_tolerance: f64,
    pub initial_step: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self { max_iterations: 4000, f_tolerance: 1e-30, initial_step: 0.35 }
    }
}

pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
}

impl NelderMead {
    pub fn minimize(&self, f: impl Fn(&[f64]) -> f64, start: &[f64]) -> Minimum {
        let n = start.len();
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((start.to_vec(), f(start)));
        for i in 0..n {
            let mut x = start.to_vec();
            x[i] += self.initial_step;
            let fx = f(&x);
            simplex.push((x, fx));
        }

        for _ in 0..self.max_iterations {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[n].1;
            if worst - best <= self.f_tolerance || best == 0.0 {
                break;
            }

            let centroid: Vec<f64> =
                (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64).collect();
            let toward =
                |t: f64| -> Vec<f64> { centroid.iter().zip(&simplex[n].0).map(|(c, w)| c + t * (w - c)).collect() };

            let reflected = toward(-1.0);
            let f_reflected = f(&reflected);
            if f_reflected < best {
                let expanded = toward(-2.0);
                let f_expanded = f(&expanded);
                simplex[n] = if f_expanded < f_reflected { (expanded, f_expanded) } else { (reflected, f_reflected) };
                continue;
            }
            if f_reflected < simplex[n - 1].1 {
                simplex[n] = (reflected, f_reflected);
                continue;
            }
            let (contracted, f_contracted) = if f_reflected < worst {
                let x = toward(-0.5);
                let fx = f(&x);
                (x, fx)
            } else {
                let x = toward(0.5);
                let fx = f(&x);
                (x, fx)
            };
            if f_contracted < worst.min(f_reflected) {
                simplex[n] = (contracted, f_contracted);
                continue;
            }
            // shrink toward the best vertex
            let anchor = simplex[0].0.clone();
            for (x, fx) in simplex.iter_mut().skip(1) {
                for (xi, ai) in x.iter_mut().zip(&anchor) {
                    *xi = ai + 0.5 * (*xi - ai);
                }
                *fx = f(x);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, f) = simplex.swap_remove(0);
        Minimum { x, f }
    }
}
