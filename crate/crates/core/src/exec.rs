//! Worker selection for independent experiments.
//!
//! With the `parallel` feature, [`Workers::Threads`] maps items on a
//! dedicated rayon pool; without it every map runs serially.

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "NEMATIC_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workers {
    #[default]
    Serial,
    Threads(usize),
}

impl Workers {
    /// Reads [`WORKERS_ENV`]; absent, empty, unparsable, 0 or 1 mean serial.
    pub fn from_env() -> Self {
        Self::parse(std::env::var(WORKERS_ENV).ok().as_deref())
    }

    pub fn parse(value: Option<&str>) -> Self {
        match value.and_then(|v| v.trim().parse::<usize>().ok()) {
            Some(n) if n > 1 => Workers::Threads(n),
            _ => Workers::Serial,
        }
    }

    pub fn count(self) -> usize {
        match self {
            Workers::Serial => 1,
            Workers::Threads(n) => n,
        }
    }

    /// Apply `f` to every item, keeping input order in the output.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            Workers::Serial => items.into_iter().map(f).collect(),
            Workers::Threads(n) => threaded(n, items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn threaded<T, R, F>(n: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
        Ok(pool) => pool.install(|| items.into_par_iter().map(&f).collect()),
        Err(_) => items.into_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn threaded<T, R, F>(_n: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rules() {
        assert_eq!(Workers::parse(None), Workers::Serial);
        assert_eq!(Workers::parse(Some("")), Workers::Serial);
        assert_eq!(Workers::parse(Some("1")), Workers::Serial);
        assert_eq!(Workers::parse(Some("x")), Workers::Serial);
        assert_eq!(Workers::parse(Some(" 4 ")), Workers::Threads(4));
    }

    #[test]
    fn threads_preserve_order_and_match_serial() {
        let items: Vec<u64> = (0..200).collect();
        let f = |x: u64| x * x + 1;
        let a = Workers::Serial.map(items.clone(), f);
        let b = Workers::Threads(4).map(items, f);
        assert_eq!(a, b);
    }
}
