//! Sharded evaluation of independent work items. Results come back in
//! shard order, so reductions over them are deterministic.

#[cfg(feature = "parallel")]
pub(crate) fn map_shards<T, F>(shards: std::ops::RangeInclusive<i64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    shards.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_shards<T, F>(shards: std::ops::RangeInclusive<i64>, f: F) -> Vec<T>
where
    F: Fn(i64) -> T,
{
    shards.map(f).collect()
}

/// Calls `visit` on every point of the integer box `lo..=hi` (per coordinate)
/// whose first coordinate is fixed to `first`. Coordinates vary in
/// lexicographic order.
pub(crate) fn for_each_in_box(lo: &[i64], hi: &[i64], first: i64, mut visit: impl FnMut(&[i64])) {
    let d = lo.len();
    if d == 0 {
        visit(&[]);
        return;
    }
    if lo[1..].iter().zip(&hi[1..]).any(|(l, h)| l > h) {
        return;
    }
    let mut y: Vec<i64> = lo.to_vec();
    y[0] = first;
    loop {
        visit(&y);
        let mut i = d - 1;
        loop {
            if i == 0 {
                return;
            }
            if y[i] < hi[i] {
                y[i] += 1;
                break;
            }
            y[i] = lo[i];
            i -= 1;
        }
    }
}
