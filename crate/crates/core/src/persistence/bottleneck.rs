use super::Diagram;

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn to_diagonal(a: (f64, f64)) -> f64 {
    (a.1 - a.0).abs() / 2.0
}

/// Essential classes are matched only among themselves; sorted births give
/// the optimal one-dimensional matching.
fn essential_part(d1: &Diagram, d2: &Diagram) -> f64 {
    let mut a = d1.essential_births();
    let mut b = d2.essential_births();
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Kuhn's augmenting paths on the diagonal-augmented bipartite graph.
fn has_perfect_matching(a: &[(f64, f64)], b: &[(f64, f64)], delta: f64) -> bool {
    let (n1, n2) = (a.len(), b.len());
    let n = n1 + n2;
    // left: a[0..n1], diag(b)[n1..n]; right: b[0..n2], diag(a)[n2..n]
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|l| {
            let mut out = Vec::new();
            if l < n1 {
                for (j, q) in b.iter().enumerate() {
                    if linf(a[l], *q) <= delta {
                        out.push(j);
                    }
                }
                if to_diagonal(a[l]) <= delta {
                    out.push(n2 + l);
                }
            } else {
                let j = l - n1;
                if to_diagonal(b[j]) <= delta {
                    out.push(j);
                }
                out.extend(n2..n);
            }
            out
        })
        .collect();
    let mut match_right = vec![usize::MAX; n];
    for l in 0..n {
        let mut seen = vec![false; n];
        if !augment(l, &adj, &mut match_right, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(l: usize, adj: &[Vec<usize>], match_right: &mut [usize], seen: &mut [bool]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_right[r] == usize::MAX || augment(match_right[r], adj, match_right, seen) {
            match_right[r] = l;
            return true;
        }
    }
    false
}

/// Exact bottleneck distance. The optimum is one of the pairwise ℓ∞
/// distances or distances to the diagonal, so a binary search over that
/// finite candidate set with a matching test is exact.
pub fn bottleneck(d1: &Diagram, d2: &Diagram) -> f64 {
    let ess = essential_part(d1, d2);
    if ess.is_infinite() {
        return ess;
    }
    let a = d1.finite_points();
    let b = d2.finite_points();
    let mut cand = vec![0.0];
    cand.extend(a.iter().map(|&p| to_diagonal(p)));
    cand.extend(b.iter().map(|&p| to_diagonal(p)));
    for &p in &a {
        for &q in &b {
            cand.push(linf(p, q));
        }
    }
    cand.sort_by(f64::total_cmp);
    cand.dedup();
    let (mut lo, mut hi) = (0, cand.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_perfect_matching(&a, &b, cand[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cand[lo].max(ess)
}

/// Minimum over all partial matchings by enumeration; unmatched points go
/// to the diagonal. Exponential, meant for diagrams of a handful of points.
pub fn bottleneck_brute_force(d1: &Diagram, d2: &Diagram) -> f64 {
    let ess = essential_part(d1, d2);
    if ess.is_infinite() {
        return ess;
    }
    let a = d1.finite_points();
    let b = d2.finite_points();
    let mut used = vec![false; b.len()];
    let best = enumerate(&a, &b, 0, &mut used, 0.0);
    best.max(ess)
}

fn enumerate(a: &[(f64, f64)], b: &[(f64, f64)], i: usize, used: &mut [bool], cost: f64) -> f64 {
    if i == a.len() {
        let rest = b
            .iter()
            .zip(used.iter())
            .filter(|(_, &u)| !u)
            .map(|(q, _)| to_diagonal(*q))
            .fold(0.0, f64::max);
        return cost.max(rest);
    }
    let mut best = enumerate(a, b, i + 1, used, cost.max(to_diagonal(a[i])));
    for j in 0..b.len() {
        if !used[j] {
            used[j] = true;
            best = best.min(enumerate(a, b, i + 1, used, cost.max(linf(a[i], b[j]))));
            used[j] = false;
        }
    }
    best
}
