use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::LassoChain;
use crate::automaton::{Automaton, LassoWord};
use crate::error::{Error, Result};
use crate::prob::to_f64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub accept_fraction: f64,
    pub half_width_95: f64,
}

const STEP_CAP: usize = 10_000_000;

/// Monte Carlo estimate of the acceptance probability. Each run is sampled
/// until it enters a recurrent class of the product chain and is then
/// classified by that class.
pub fn simulate_runs(a: &Automaton, w: &LassoWord, samples: usize, seed: u64) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    let (view, p) = a.parity_view()?;
    let chain = LassoChain::new(&view, w, view.initial())?;
    let accepted = chain.accepted_classes(&p);
    let n = view.num_states();

    let weighted = |row: Vec<f64>| WeightedIndex::new(row).map_err(|e| Error::Internal(e.to_string()));
    let init = weighted(view.initial().weights.iter().map(to_f64).collect())?;
    let letters = (0..view.num_letters())
        .map(|l| {
            (0..n)
                .map(|q| weighted(view.matrix(l).row(q).iter().map(to_f64).collect()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let mut q = init.sample(&mut rng);
        for &l in &w.prefix {
            q = letters[l][q].sample(&mut rng);
        }
        let mut phase = 0;
        let mut steps = 0;
        let class = loop {
            if let Some(c) = chain.class_of(phase * n + q) {
                break c;
            }
            q = letters[w.period[phase]][q].sample(&mut rng);
            phase = (phase + 1) % w.period.len();
            steps += 1;
            if steps > STEP_CAP {
                return Err(Error::Budget { what: "simulation step", limit: STEP_CAP });
            }
        };
        if accepted[class] {
            hits += 1;
        }
    }
    let (n, p) = (samples as f64, hits as f64 / samples as f64);
    Ok(Estimate {
        accept_fraction: p,
        half_width_95: wilson_half_width(p, n),
    })
}

/// Half-width of the 95% Wilson score interval.
fn wilson_half_width(p: f64, n: f64) -> f64 {
    const Z: f64 = 1.959_963_984_540_054;
    let z2 = Z * Z;
    Z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt()
}
