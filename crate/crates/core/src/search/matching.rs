//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

/// A matching between left vertices `0..left` and right vertices `0..right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pair_left: Vec<Option<usize>>,
    pub pair_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(left: usize, right: usize) -> Matching {
        Matching {
            pair_left: vec![None; left],
            pair_right: vec![None; right],
        }
    }

    pub fn size(&self) -> usize {
        self.pair_left.iter().filter(|p| p.is_some()).count()
    }

    /// True when every left vertex is matched.
    pub fn is_left_perfect(&self) -> bool {
        self.pair_left.iter().all(Option::is_some)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pair_left.iter().enumerate().filter_map(|(u, p)| p.map(|v| (u, v)))
    }
}

/// Maximum matching of the bipartite graph whose left vertex `u` is
/// adjacent to the right vertices `adj[u]`.
pub fn max_bipartite_matching(adj: &[Vec<usize>], right: usize) -> Matching {
    extend_matching(adj, right, Matching::empty(adj.len(), right))
}

/// Grow `start` to a maximum matching by augmenting paths. Pairs of `start`
/// that are not edges of `adj` are dropped first.
pub fn extend_matching(adj: &[Vec<usize>], right: usize, start: Matching) -> Matching {
    let left = adj.len();
    let mut m = Matching::empty(left, right);
    for (u, p) in start.pair_left.iter().enumerate().take(left) {
        if let Some(v) = *p {
            if v < right && m.pair_right[v].is_none() && adj[u].contains(&v) {
                m.pair_left[u] = Some(v);
                m.pair_right[v] = Some(u);
            }
        }
    }
    let mut dist = vec![usize::MAX; left];
    while bfs(adj, &m, &mut dist) {
        for u in 0..left {
            if m.pair_left[u].is_none() {
                dfs(adj, &mut m, &mut dist, u);
            }
        }
    }
    m
}

fn bfs(adj: &[Vec<usize>], m: &Matching, dist: &mut [usize]) -> bool {
    let mut queue = VecDeque::new();
    for (u, d) in dist.iter_mut().enumerate() {
        if m.pair_left[u].is_none() {
            *d = 0;
            queue.push_back(u);
        } else {
            *d = usize::MAX;
        }
    }
    let mut reachable_free = false;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            match m.pair_right[v] {
                None => reachable_free = true,
                Some(w) if dist[w] == usize::MAX => {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                Some(_) => {}
            }
        }
    }
    reachable_free
}

fn dfs(adj: &[Vec<usize>], m: &mut Matching, dist: &mut [usize], u: usize) -> bool {
    for i in 0..adj[u].len() {
        let v = adj[u][i];
        let ok = match m.pair_right[v] {
            None => true,
            Some(w) => dist[w] == dist[u].wrapping_add(1) && dfs(adj, m, dist, w),
        };
        if ok {
            m.pair_left[u] = Some(v);
            m.pair_right[v] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite_is_perfect() {
        let adj: Vec<Vec<usize>> = (0..5).map(|_| (0..5).collect()).collect();
        let m = max_bipartite_matching(&adj, 5);
        assert!(m.is_left_perfect());
        assert_eq!(m.size(), 5);
    }

    #[test]
    fn star_matches_once() {
        let adj = vec![vec![0, 1, 2, 3]];
        assert_eq!(max_bipartite_matching(&adj, 4).size(), 1);
        let adj = vec![vec![0], vec![0], vec![0]];
        assert_eq!(max_bipartite_matching(&adj, 1).size(), 1);
    }

    #[test]
    fn augmenting_path_reroutes_greedy_start() {
        // greedy 0-0 blocks 1; augmenting path moves 0 to 1
        let adj = vec![vec![0, 1], vec![0]];
        let mut start = Matching::empty(2, 2);
        start.pair_left[0] = Some(0);
        start.pair_right[0] = Some(0);
        let m = extend_matching(&adj, 2, start);
        assert_eq!(m.pair_left, vec![Some(1), Some(0)]);
    }

    #[test]
    fn invalid_start_pairs_are_dropped() {
        let adj = vec![vec![1], vec![0]];
        let mut start = Matching::empty(2, 2);
        start.pair_left[0] = Some(0);
        start.pair_right[0] = Some(0);
        let m = extend_matching(&adj, 2, start);
        assert!(m.is_left_perfect());
    }
}
