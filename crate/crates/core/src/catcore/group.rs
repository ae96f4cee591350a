use serde::{Deserialize, Serialize};

use crate::report::{Rule, ValidationReport};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub elements: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.order()).find(|&e| (0..self.order()).all(|a| self.table[e][a] == a && self.table[a][e] == a))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.identity()?;
        (0..self.order()).find(|&b| self.table[a][b] == e && self.table[b][a] == e)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with elements labelled `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        FiniteGroup {
            elements: (0..n).map(|k| k.to_string()).collect(),
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    /// Dihedral group of order `2n`: element `(k, s)` is `r^k s^s`, labelled `rk` / `rks`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let idx = |k: usize, s: usize| k * 2 + s;
        let mut elements = vec![String::new(); 2 * n];
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for k in 0..n {
            for s in 0..2 {
                elements[idx(k, s)] = if s == 0 { format!("r{k}") } else { format!("r{k}s") };
                for l in 0..n {
                    for t in 0..2 {
                        // r^k s^s · r^l s^t = r^(k ± l) s^(s+t)
                        let kl = if s == 0 { (k + l) % n } else { (k + n - l) % n };
                        table[idx(k, s)][idx(l, t)] = idx(kl, (s + t) % 2);
                    }
                }
            }
        }
        FiniteGroup { elements, table }
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let mut elements = Vec::with_capacity(na * nb);
        let mut table = vec![vec![0; na * nb]; na * nb];
        for x in 0..na {
            for y in 0..nb {
                elements.push(format!("{}.{}", a.elements[x], b.elements[y]));
                for u in 0..na {
                    for v in 0..nb {
                        table[x * nb + y][u * nb + v] = a.mul(x, u) * nb + b.mul(y, v);
                    }
                }
            }
        }
        FiniteGroup { elements, table }
    }

    /// Checks closure, associativity, unit and inverses.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new("group");
        let n = self.order();
        if n == 0 || self.table.len() != n || self.table.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            r.push(Rule::Composability, std::iter::empty::<String>(), "multiplication table is not closed");
            return r;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (l, rr) = (self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c)));
                    r.check(l == rr, Rule::Associativity, [&self.elements[a], &self.elements[b], &self.elements[c]], || {
                        "(ab)c != a(bc)".to_string()
                    });
                }
            }
        }
        match self.identity() {
            None => r.push(Rule::UnitLaw, std::iter::empty::<String>(), "no two-sided identity"),
            Some(_) => {
                for a in 0..n {
                    r.check(self.inverse(a).is_some(), Rule::InverseLaw, [&self.elements[a]], || {
                        "no two-sided inverse".to_string()
                    });
                }
            }
        }
        r
    }

    /// Brute-force isomorphism search; returns the element bijection `self → other`.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        let n = self.order();
        if n != other.order() {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(a: &FiniteGroup, b: &FiniteGroup, k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let n = a.order();
            if k == n {
                return true;
            }
            for cand in 0..n {
                if used[cand] {
                    continue;
                }
                map[k] = cand;
                let consistent = (0..=k).all(|x| {
                    (0..=k).all(|y| {
                        let xy = a.mul(x, y);
                        xy > k || b.mul(map[x], map[y]) == map[xy]
                    })
                });
                if consistent {
                    used[cand] = true;
                    if go(a, b, k + 1, map, used) {
                        return true;
                    }
                    used[cand] = false;
                }
            }
            map[k] = usize::MAX;
            false
        }
        go(self, other, 0, &mut map, &mut used).then_some(map)
    }

    /// All homomorphisms to `{±1}`, encoded as 0/1 parity vectors.
    pub fn sign_characters(&self) -> Vec<Vec<u8>> {
        let n = self.order();
        if n > 16 {
            return vec![vec![0; n]];
        }
        (0u32..(1 << n))
            .map(|mask| (0..n).map(|k| ((mask >> k) & 1) as u8).collect::<Vec<u8>>())
            .filter(|chi| (0..n).all(|a| (0..n).all(|b| chi[self.mul(a, b)] == (chi[a] ^ chi[b]))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_are_groups() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(5),
            FiniteGroup::dihedral(3),
            FiniteGroup::dihedral(4),
            FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        ] {
            assert!(g.validate().is_valid(), "{:?}", g.elements);
        }
    }

    #[test]
    fn s3_is_not_abelian_and_not_z6() {
        let s3 = FiniteGroup::dihedral(3);
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        assert!(s3.find_isomorphism(&FiniteGroup::cyclic(6)).is_none());
        let z6 = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        assert!(z6.find_isomorphism(&FiniteGroup::cyclic(6)).is_some());
    }

    #[test]
    fn broken_table_reported() {
        let mut g = FiniteGroup::cyclic(3);
        g.table[1][1] = 1;
        assert!(!g.validate().is_valid());
    }

    #[test]
    fn sign_characters_of_s3() {
        // trivial and sign
        assert_eq!(FiniteGroup::dihedral(3).sign_characters().len(), 2);
        assert_eq!(FiniteGroup::cyclic(3).sign_characters().len(), 1);
    }
}
