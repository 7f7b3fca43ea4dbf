//! Permutations of {0, …, n−1} and their orbit partitions.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of {0, …, n−1}; composition is `(gh)(i) = g(h(i))`.
/// Displayed and parsed 1-based in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Blocks sorted internally and by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a == 0 || a > n || used[a - 1] {
                    return Err(Error::Domain(format!("bad cycle {c:?} for n = {n}")));
                }
                used[a - 1] = true;
                images[a - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses `(1 2)(3 4)`, `(1,2)` or, for n ≤ 9, `(12)`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "e" || s == "id" {
            return Ok(Self::identity(n));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for part in s.split(')') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let body = part
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let tokens: Vec<&str> = if body.contains([',', ' ']) {
                body.split([',', ' ']).filter(|t| !t.is_empty()).collect()
            } else {
                body.split("").filter(|t| !t.is_empty()).collect()
            };
            let cycle = tokens
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?} in {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// k g k⁻¹.
    pub fn conjugate_by(&self, k: &Permutation) -> Permutation {
        k.compose(self).compose(&k.inverse())
    }

    /// n − |O(g)|.
    pub fn age(&self) -> usize {
        self.n() - orbits(self).blocks.len()
    }

    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(|images| Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = orbits(self).blocks.into_iter().filter(|b| b.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for b in cycles {
            let mut cyc = vec![b[0]];
            let mut i = self.apply(b[0]);
            while i != b[0] {
                cyc.push(i);
                i = self.apply(i);
            }
            write!(f, "({})", cyc.iter().map(|i| (i + 1).to_string()).join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.images.iter().map(|i| i + 1).collect();
        one_based.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let one_based = Vec::<usize>::deserialize(d)?;
        if one_based.contains(&0) {
            return Err(serde::de::Error::custom("permutation images are 1-based"));
        }
        Permutation::new(one_based.into_iter().map(|i| i - 1).collect()).map_err(serde::de::Error::custom)
    }
}

impl FromStr for Permutation {
    type Err = Error;
    /// Image list such as `2 1 3` (1-based).
    fn from_str(s: &str) -> Result<Self> {
        let imgs = s
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v - 1),
                _ => Err(Error::Parse(format!("bad image {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(imgs)
    }
}

impl OrbitPartition {
    fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let k = *index.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[k].push(i);
        }
        OrbitPartition { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&i)).expect("point in range")
    }

    pub fn position(&self, block: &[usize]) -> Option<usize> {
        let mut b = block.to_vec();
        b.sort_unstable();
        self.blocks.iter().position(|x| *x == b)
    }

    /// 1-based rendering, e.g. `{1,2}{3}`.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect()
    }
}

fn components(n: usize, gens: &[&Permutation]) -> OrbitPartition {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for g in gens {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    OrbitPartition::from_labels(&labels)
}

pub fn orbits(g: &Permutation) -> OrbitPartition {
    components(g.n(), &[g])
}

pub fn joint_orbits(g: &Permutation, h: &Permutation) -> Result<OrbitPartition> {
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch(format!("permutations of {} and {} points", g.n(), h.n())));
    }
    Ok(components(g.n(), &[g, h]))
}

fn orbits_inside(p: &OrbitPartition, t: &[usize]) -> usize {
    p.blocks.iter().filter(|b| t.contains(&b[0])).count()
}

/// 2 d(t) = 2 + |t| − |t/g| − |t/h| − |t/gh| for a joint orbit t, unchecked.
pub fn graph_defect_twice(g: &Permutation, h: &Permutation, t: &[usize]) -> Result<i64> {
    let joint = joint_orbits(g, h)?;
    if joint.position(t).is_none() {
        return Err(Error::Domain(format!("{t:?} is not an orbit of <g, h>")));
    }
    let gh = g.compose(h);
    Ok(2 + t.len() as i64
        - orbits_inside(&orbits(g), t) as i64
        - orbits_inside(&orbits(h), t) as i64
        - orbits_inside(&orbits(&gh), t) as i64)
}

/// d(t) = (2 + |t| − |t/g| − |t/h| − |t/gh|)/2 for a joint orbit t.
pub fn graph_defect(g: &Permutation, h: &Permutation, t: &[usize]) -> Result<usize> {
    let twice = graph_defect_twice(g, h, t)?;
    assert!(twice >= 0 && twice % 2 == 0, "graph defect {twice}/2 for {g}, {h}, {t:?}");
    Ok((twice / 2) as usize)
}

/// ε(g, h) = (−1)^{(n − |O(g)| − |O(h)| + |O(gh)|)/2}.
pub fn epsilon_sign(g: &Permutation, h: &Permutation) -> Result<i8> {
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch("permutations of different degree".into()));
    }
    let e = epsilon_exponent_twice(g, h);
    assert!(e % 2 == 0, "odd exponent {e} in epsilon for {g}, {h}");
    Ok(if (e / 2) % 2 == 0 { 1 } else { -1 })
}

/// n − |O(g)| − |O(h)| + |O(gh)|.
pub fn epsilon_exponent_twice(g: &Permutation, h: &Permutation) -> i64 {
    g.n() as i64 - orbits(g).len() as i64 - orbits(h).len() as i64 + orbits(&g.compose(h)).len() as i64
}
