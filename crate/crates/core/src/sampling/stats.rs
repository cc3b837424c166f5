use rayon::prelude::*;

use super::rng::RandomStream;

/// Summary of a batch of draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
    pub ks: Option<f64>,
}

/// Running mean and centred sum of squares; merging follows the pairwise
/// update of Chan, Golub and LeVeque.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Accumulator) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        self.mean += d * w;
        self.m2 += other.m2 + d * d * self.n as f64 * w;
        self.n = n;
    }

    pub fn finish(&self) -> SampleStats {
        let variance = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        SampleStats {
            n: self.n,
            mean: self.mean,
            variance,
            stderr: if self.n > 0 {
                (variance / self.n as f64).sqrt()
            } else {
                f64::NAN
            },
            ks: None,
        }
    }
}

impl SampleStats {
    pub fn from_values(xs: &[f64]) -> SampleStats {
        let mut acc = Accumulator::default();
        xs.iter().for_each(|&x| acc.push(x));
        acc.finish()
    }

    pub fn with_ks(mut self, ks: f64) -> Self {
        self.ks = Some(ks);
        self
    }
}

/// Draws per Monte Carlo chunk; chunk `i` uses stream `stream_base + i`.
pub const CHUNK: usize = 1 << 16;

fn chunk_bounds(n: usize) -> Vec<(usize, usize)> {
    (0..n.div_ceil(CHUNK)).map(|i| (i, CHUNK.min(n - i * CHUNK))).collect()
}

/// Mean statistics of `f` over `n` draws, bitwise reproducible for a given
/// `(seed, stream_base, n)` regardless of thread count.
pub fn monte_carlo<F>(n: usize, seed: u64, stream_base: u64, f: F) -> SampleStats
where
    F: Fn(&mut RandomStream) -> f64 + Sync,
{
    let parts: Vec<Accumulator> = chunk_bounds(n)
        .into_par_iter()
        .map(|(i, len)| {
            let mut stream = RandomStream::new(seed, stream_base + i as u64);
            let mut acc = Accumulator::default();
            for _ in 0..len {
                acc.push(f(&mut stream));
            }
            acc
        })
        .collect();
    let mut total = Accumulator::default();
    for p in &parts {
        total.merge(p);
    }
    total.finish()
}

/// Several statistics of the same draws, e.g. one transform per rate.
pub fn monte_carlo_multi<F>(n: usize, seed: u64, stream_base: u64, width: usize, f: F) -> Vec<SampleStats>
where
    F: Fn(&mut RandomStream, &mut [f64]) + Sync,
{
    let parts: Vec<Vec<Accumulator>> = chunk_bounds(n)
        .into_par_iter()
        .map(|(i, len)| {
            let mut stream = RandomStream::new(seed, stream_base + i as u64);
            let mut accs = vec![Accumulator::default(); width];
            let mut row = vec![0.0; width];
            for _ in 0..len {
                f(&mut stream, &mut row);
                for (acc, &x) in accs.iter_mut().zip(&row) {
                    acc.push(x);
                }
            }
            accs
        })
        .collect();
    let mut total = vec![Accumulator::default(); width];
    for p in &parts {
        for (t, a) in total.iter_mut().zip(p) {
            t.merge(a);
        }
    }
    total.iter().map(Accumulator::finish).collect()
}

/// `n` raw draws in chunk order.
pub fn draw_many<F>(n: usize, seed: u64, stream_base: u64, f: F) -> Vec<f64>
where
    F: Fn(&mut RandomStream) -> f64 + Sync,
{
    let parts: Vec<Vec<f64>> = chunk_bounds(n)
        .into_par_iter()
        .map(|(i, len)| {
            let mut stream = RandomStream::new(seed, stream_base + i as u64);
            (0..len).map(|_| f(&mut stream)).collect()
        })
        .collect();
    parts.concat()
}

/// Splits `n` draws into `streams` contiguous blocks; block `k` uses stream id `k`.
pub fn draw_blocks<T, F>(n: usize, seed: u64, streams: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RandomStream) -> T + Sync,
{
    let streams = streams.max(1);
    let base = n / streams;
    let extra = n % streams;
    let parts: Vec<Vec<T>> = (0..streams)
        .into_par_iter()
        .map(|k| {
            let len = base + usize::from(k < extra);
            let mut stream = RandomStream::new(seed, k as u64);
            (0..len).map(|_| f(&mut stream)).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let whole = SampleStats::from_values(&xs);
        let mut a = Accumulator::default();
        let mut b = Accumulator::default();
        xs[..333].iter().for_each(|&x| a.push(x));
        xs[333..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        let merged = a.finish();
        assert!((merged.mean - whole.mean).abs() < 1e-12);
        assert!((merged.variance - whole.variance).abs() < 1e-10);
        assert!((merged.stderr - (merged.variance / 1000.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let f = |s: &mut RandomStream| s.random::<f64>();
        let a = monte_carlo(200_000, 5, 0, f);
        let b = monte_carlo(200_000, 5, 0, f);
        assert_eq!(a, b);
        assert!((a.mean - 0.5).abs() < 4.0 * a.stderr);
    }

    #[test]
    fn blocks_cover_all_draws() {
        let v = draw_blocks(10, 1, 3, |s| s.stream_id());
        assert_eq!(v, vec![0, 0, 0, 0, 1, 1, 1, 2, 2, 2]);
    }
}
