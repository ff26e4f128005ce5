//! Lexicographic enumeration of index subsets.

/// Binomial coefficient `C(n, r)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Iterator over the `r`-subsets of `{0, …, n-1}` as strictly increasing
/// index vectors, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, r: usize) -> Self {
        let current = if r <= n { Some((0..r).collect()) } else { None };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let r = out.len();
        let mut next = out.clone();
        // advance the rightmost index that still has room
        let mut i = r;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - r + i {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Collects `Combinations` into chunks so each chunk can be processed in
/// parallel without materializing the whole enumeration.
pub fn chunked(n: usize, r: usize, chunk: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
    let mut combos = Combinations::new(n, r);
    std::iter::from_fn(move || {
        let batch: Vec<Vec<usize>> = combos.by_ref().take(chunk).collect();
        if batch.is_empty() {
            None
        } else {
            Some(batch)
        }
    })
}
