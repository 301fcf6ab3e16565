//! Finite permutations: cycle decomposition, orders, involutions.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("mapping is not a bijection on 0..{0}")]
    NotBijective(usize),
}

/// A permutation of `0..n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn new(map: Vec<usize>) -> Result<Self, PermError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(PermError::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Perm { map })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            map: (0..n).collect(),
        }
    }

    /// The transposition `(a b)` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a, b);
        Perm { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other` (`other` applied first).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Perm { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_involution(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| self.map[v] == i)
    }

    /// Cycles in canonical form: each starts at its minimal element,
    /// cycles ordered by that element. Fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.map[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.map[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// The order (lcm of cycle lengths) if it does not exceed `bound`.
    pub fn order_bounded(&self, bound: u128) -> Option<u128> {
        let mut acc: u128 = 1;
        for cycle in self.cycles() {
            let len = cycle.len() as u128;
            acc = lcm(acc, len);
            if acc > bound {
                return None;
            }
        }
        Some(acc)
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// All involutive permutations of `0..n`, in a deterministic order.
pub fn involutive_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    fill(&mut map, 0, n, &mut out);
    out
}

fn fill(map: &mut Vec<usize>, from: usize, n: usize, out: &mut Vec<Perm>) {
    let Some(i) = (from..n).find(|&i| map[i] == usize::MAX) else {
        out.push(Perm { map: map.clone() });
        return;
    };
    // Fixed point first, then pair with each larger free element.
    map[i] = i;
    fill(map, i + 1, n, out);
    map[i] = usize::MAX;
    for j in i + 1..n {
        if map[j] == usize::MAX {
            map[i] = j;
            map[j] = i;
            fill(map, i + 1, n, out);
            map[i] = usize::MAX;
            map[j] = usize::MAX;
        }
    }
}
