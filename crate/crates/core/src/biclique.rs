//! Exact search for a complete bipartite subgraph `K_{a,b}`.
//!
//! Branch and bound over `a`-subsets of one side (whichever has fewer
//! subsets to try), keeping the common neighbourhood on the other side as a
//! bitset and cutting as soon as it drops below the required size. Vertices
//! whose degree cannot support the target are peeled off first.

/// Finds `A ⊆ left`, `B ⊆ right` with `|A| = a`, `|B| = b` and `adj(x, y)`
/// for all `x ∈ A`, `y ∈ B`. Both returned lists are in input order; the
/// result is the first one in the search order, so it is deterministic.
pub fn find_biclique(
    left: &[usize],
    right: &[usize],
    a: usize,
    b: usize,
    adj: impl Fn(usize, usize) -> bool,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if left.len() < a || right.len() < b {
        return None;
    }
    if a == 0 || b == 0 {
        return Some((left[..a].to_vec(), right[..b].to_vec()));
    }
    let matrix: Vec<Vec<bool>> = left
        .iter()
        .map(|&x| right.iter().map(|&y| adj(x, y)).collect())
        .collect();
    let (mut alive_l, mut alive_r) = (vec![true; left.len()], vec![true; right.len()]);
    // peel vertices of too-small degree until stable
    loop {
        let mut changed = false;
        for i in 0..left.len() {
            if alive_l[i] && (0..right.len()).filter(|&j| alive_r[j] && matrix[i][j]).count() < b {
                alive_l[i] = false;
                changed = true;
            }
        }
        for j in 0..right.len() {
            if alive_r[j] && (0..left.len()).filter(|&i| alive_l[i] && matrix[i][j]).count() < a {
                alive_r[j] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let ls: Vec<usize> = (0..left.len()).filter(|&i| alive_l[i]).collect();
    let rs: Vec<usize> = (0..right.len()).filter(|&j| alive_r[j]).collect();
    if ls.len() < a || rs.len() < b {
        return None;
    }
    let enumerate_left = binomial(ls.len(), a) <= binomial(rs.len(), b);
    let found = if enumerate_left {
        search(&ls, &rs, a, b, |i, j| matrix[i][j])
    } else {
        search(&rs, &ls, b, a, |j, i| matrix[i][j]).map(|(r, l)| (l, r))
    };
    found.map(|(l, r)| {
        (
            l.into_iter().map(|i| left[i]).collect(),
            r.into_iter().map(|j| right[j]).collect(),
        )
    })
}

/// Enumerates `a`-subsets of `side` in lexicographic order; `other` is
/// tracked as a bitset of common neighbours.
fn search(
    side: &[usize],
    other: &[usize],
    a: usize,
    b: usize,
    adj: impl Fn(usize, usize) -> bool,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let words = other.len().div_ceil(64);
    let rows: Vec<Vec<u64>> = side
        .iter()
        .map(|&x| {
            let mut row = vec![0u64; words];
            for (k, &y) in other.iter().enumerate() {
                if adj(x, y) {
                    row[k / 64] |= 1 << (k % 64);
                }
            }
            row
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|w| {
            let bits = (other.len() - 64 * w).min(64);
            if bits == 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            }
        })
        .collect();

    fn rec(
        rows: &[Vec<u64>],
        start: usize,
        a: usize,
        b: usize,
        common: &[u64],
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<u64>> {
        if chosen.len() == a {
            return Some(common.to_vec());
        }
        let remaining = a - chosen.len();
        for i in start..=rows.len() - remaining {
            let next: Vec<u64> = common.iter().zip(&rows[i]).map(|(c, r)| c & r).collect();
            if next.iter().map(|w| w.count_ones() as usize).sum::<usize>() < b {
                continue;
            }
            chosen.push(i);
            if let Some(done) = rec(rows, i + 1, a, b, &next, chosen) {
                return Some(done);
            }
            chosen.pop();
        }
        None
    }

    let mut chosen = Vec::with_capacity(a);
    let common = rec(&rows, 0, a, b, &full, &mut chosen)?;
    let picked: Vec<usize> = (0..other.len())
        .filter(|&k| common[k / 64] >> (k % 64) & 1 == 1)
        .take(b)
        .map(|k| other[k])
        .collect();
    Some((chosen.into_iter().map(|i| side[i]).collect(), picked))
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
