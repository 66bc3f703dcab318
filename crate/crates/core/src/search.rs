//! Lexicographic search over downward-closed families of index sets.

/// Returns the lexicographically smallest `k`-subset of `0..n` accepted by
/// `accept`, assuming acceptance is inherited by subsets. Partial sets that
/// fail are never extended.
pub fn first_hereditary_set<F>(n: usize, k: usize, mut accept: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    let mut current = Vec::with_capacity(k);
    if k == 0 {
        return accept(&current).then_some(current);
    }
    if descend(n, k, 0, &mut current, &mut accept) {
        Some(current)
    } else {
        None
    }
}

fn descend<F>(n: usize, k: usize, from: usize, current: &mut Vec<usize>, accept: &mut F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    let missing = k - current.len();
    if missing == 0 {
        return true;
    }
    for i in from..=n.saturating_sub(missing) {
        if n < missing {
            break;
        }
        current.push(i);
        if accept(current) && descend(n, k, i + 1, current, accept) {
            return true;
        }
        current.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_lexicographic_minimum() {
        // accept sets with no two consecutive indices
        let ok = |s: &[usize]| s.windows(2).all(|w| w[1] > w[0] + 1);
        assert_eq!(first_hereditary_set(5, 3, ok), Some(vec![0, 2, 4]));
        assert_eq!(first_hereditary_set(4, 3, ok), None);
        assert_eq!(first_hereditary_set(0, 0, |_| true), Some(vec![]));
        assert_eq!(first_hereditary_set(2, 3, |_| true), None);
    }
}
