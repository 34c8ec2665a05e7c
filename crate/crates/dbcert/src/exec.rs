use dbcert_core::proof::Executor;
use rayon::prelude::*;

/// Runs sibling checks on a private rayon pool. `collect` on an indexed
/// parallel iterator keeps input order, so output does not depend on `jobs`.
pub struct Rayon {
    pool: rayon::ThreadPool,
}

impl Rayon {
    pub fn new(jobs: usize) -> anyhow::Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
        Ok(Rayon { pool })
    }
}

impl Executor for Rayon {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        self.pool.install(|| items.into_par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order() {
        let r = Rayon::new(4).unwrap();
        let out = r.map((0..1000).collect(), |i: u64| i * i);
        assert!(out.iter().enumerate().all(|(i, x)| *x == (i * i) as u64));
    }
}
