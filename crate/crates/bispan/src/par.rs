//! Switch between rayon and plain iterators.

/// Execution strategy for the data-parallel loops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Seq,
    #[default]
    Par,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Par
    }
}

pub(crate) fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seq_and_par_agree() {
        let v: Vec<u64> = (0..1000).collect();
        let a = map(Exec::Seq, &v, |x| x * x);
        let b = map(Exec::Par, &v, |x| x * x);
        assert_eq!(a, b);
    }
}
