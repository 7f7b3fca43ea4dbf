//! The orbifold product with discrete torsion on ⊕_g A^{⊗O(g)}.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::perm::{epsilon_sign, graph_defect, joint_orbits, orbits, OrbitPartition, Permutation};
use crate::error::{Error, Result};
use crate::frobenius::{GradedFrobeniusAlgebra, Vector};
use crate::rational::Rational;

/// Sparse element of A^{⊗k}: basis multi-index ↦ coefficient.
pub type SparseTensor = BTreeMap<Vec<usize>, Rational>;

type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorElement {
    pub sector: Permutation,
    /// Slots follow the blocks of `orbits(sector)`.
    #[serde(with = "terms_serde")]
    pub terms: SparseTensor,
}

mod terms_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &SparseTensor, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(&Vec<usize>, &Rational)> = t.iter().collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<SparseTensor, D::Error> {
        let v = Vec::<(Vec<usize>, Rational)>::deserialize(d)?;
        let mut out = SparseTensor::new();
        for (k, c) in v {
            *out.entry(k).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

impl SectorElement {
    pub fn zero(sector: Permutation) -> Self {
        SectorElement { sector, terms: SparseTensor::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// 2 · age(g).
    pub fn shift(&self) -> usize {
        2 * self.sector.age()
    }

    pub fn arity(&self) -> usize {
        orbits(&self.sector).len()
    }

    pub fn add_term(&mut self, index: Vec<usize>, c: Rational) {
        let e = self.terms.entry(index.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&index);
        }
    }
}

/// Coefficient algebra A together with the data the product needs.
#[derive(Debug)]
pub struct SymmetricPower {
    pub n: usize,
    pub algebra: Arc<GradedFrobeniusAlgebra>,
    point: Vector,
    euler: Rational,
    /// δ^{(k)} of basis vectors, filled on demand for k = 1..=n.
    pushes: Vec<OnceLock<Vec<Vec<(Vec<usize>, Rational)>>>>,
}

fn sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

impl SymmetricPower {
    /// A must be concentrated in even degrees and have a point class.
    pub fn new(n: usize, algebra: Arc<GradedFrobeniusAlgebra>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        if algebra.degrees().iter().any(|d| d % 2 == 1) {
            return Err(Error::Domain("coefficient algebra must live in even degrees".into()));
        }
        let point = algebra.point_class().ok_or_else(|| Error::Domain("coefficient algebra has no point class".into()))?;
        let e = algebra.euler_class()?;
        let k = point.iter().position(|c| !c.is_zero()).unwrap();
        let euler = &e[k] / &point[k];
        if !e.iter().zip(&point).all(|(x, y)| *x == &euler * y) {
            return Err(Error::Domain("Euler class is not a multiple of the point class".into()));
        }
        Ok(SymmetricPower { n, algebra, point, euler, pushes: (0..=n).map(|_| OnceLock::new()).collect() })
    }

    /// χ, the coefficient of o in the obstruction factor.
    pub fn euler_number(&self) -> &Rational {
        &self.euler
    }

    fn check(&self, x: &SectorElement) -> Result<()> {
        if x.sector.n() != self.n {
            return Err(Error::DimensionMismatch(format!("sector in S_{}, expected S_{}", x.sector.n(), self.n)));
        }
        let k = x.arity();
        let d = self.algebra.dim();
        if x.terms.keys().any(|idx| idx.len() != k || idx.iter().any(|&i| i >= d)) {
            return Err(Error::DimensionMismatch(format!("tensor index does not fit {k} slots of dimension {d}")));
        }
        Ok(())
    }

    pub fn unit(&self) -> SectorElement {
        let mut x = SectorElement::zero(Permutation::identity(self.n));
        let u = sparse(self.algebra.unit());
        for idx in product_of(&vec![u; self.n]) {
            x.add_term(idx.0, idx.1);
        }
        x
    }

    fn push_table(&self, k: usize) -> &Vec<Vec<(Vec<usize>, Rational)>> {
        self.pushes[k].get_or_init(|| {
            let a = &self.algebra;
            (0..a.dim())
                .map(|b| {
                    if k == 1 {
                        return vec![(vec![b], Rational::one())];
                    }
                    let prev = self.push_table(k - 1);
                    let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
                    let delta = a.comultiply(&a.basis(b)).expect("nondegenerate pairing");
                    for i in 0..a.dim() {
                        for j in 0..a.dim() {
                            let c = &delta[(i, j)];
                            if c.is_zero() {
                                continue;
                            }
                            for (rest, s) in &prev[j] {
                                let mut idx = Vec::with_capacity(k);
                                idx.push(i);
                                idx.extend_from_slice(rest);
                                *acc.entry(idx).or_insert_with(Rational::zero) += c * s;
                            }
                        }
                    }
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                })
                .collect()
        })
    }

    fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in self.algebra.basis_product(*i, *j) {
                    *out.entry(*k).or_insert_with(Rational::zero) += a * b * c;
                }
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// c_{g,h} on the joint orbits: `None` if some defect is at least 2,
    /// otherwise the slots carrying χ·o.
    fn obstruction_slots(&self, g: &Permutation, h: &Permutation, joint: &OrbitPartition) -> Result<Option<Vec<bool>>> {
        let mut slots = Vec::with_capacity(joint.len());
        for t in &joint.blocks {
            match graph_defect(g, h, t)? {
                0 => slots.push(false),
                1 => slots.push(true),
                _ => return Ok(None),
            }
        }
        Ok(Some(slots))
    }

    /// Obstruction class in A^{⊗O(g,h)}.
    pub fn obstruction_class(&self, g: &Permutation, h: &Permutation) -> Result<SparseTensor> {
        let joint = joint_orbits(g, h)?;
        let mut out = SparseTensor::new();
        let Some(slots) = self.obstruction_slots(g, h, &joint)? else {
            return Ok(out);
        };
        let u = sparse(self.algebra.unit());
        let o: SparseVec = sparse(&self.point).into_iter().map(|(i, c)| (i, c * &self.euler)).collect();
        let factors: Vec<SparseVec> = slots.iter().map(|&d| if d { o.clone() } else { u.clone() }).collect();
        for (idx, c) in product_of(&factors) {
            out.insert(idx, c);
        }
        Ok(out)
    }

    pub fn star(&self, x: &SectorElement, y: &SectorElement) -> Result<SectorElement> {
        self.check(x)?;
        self.check(y)?;
        let (g, h) = (&x.sector, &y.sector);
        let gh = g.compose(h);
        let mut out = SectorElement::zero(gh.clone());
        let joint = joint_orbits(g, h)?;
        let Some(obstructed) = self.obstruction_slots(g, h, &joint)? else {
            return Ok(out);
        };
        let (og, oh, ogh) = (orbits(g), orbits(h), orbits(&gh));
        let slot_of = |p: &OrbitPartition| -> Vec<usize> { p.blocks.iter().map(|b| joint.block_of(b[0])).collect() };
        let (g_slot, h_slot, gh_slot) = (slot_of(&og), slot_of(&oh), slot_of(&ogh));
        // gh-orbits inside each joint orbit, in order.
        let mut targets: Vec<Vec<usize>> = vec![Vec::new(); joint.len()];
        for (s, &t) in gh_slot.iter().enumerate() {
            targets[t].push(s);
        }
        let sign = Rational::from(epsilon_sign(g, h)? as i64);
        let scale = &sign * self.euler.pow(obstructed.iter().filter(|&&d| d).count() as i32);
        let point = sparse(&self.point);
        for (xi, xc) in &x.terms {
            for (yi, yc) in &y.terms {
                let coeff = xc * yc * &scale;
                let mut slot_values = Vec::with_capacity(joint.len());
                let mut dead = false;
                for t in 0..joint.len() {
                    let mut v: SparseVec = vec![(self.algebra_unit_index(), Rational::one())];
                    let mut first = true;
                    for (s, &ts) in g_slot.iter().enumerate() {
                        if ts == t {
                            v = if first { vec![(xi[s], Rational::one())] } else { self.mul_sparse(&v, &vec![(xi[s], Rational::one())]) };
                            first = false;
                        }
                    }
                    for (s, &ts) in h_slot.iter().enumerate() {
                        if ts == t {
                            v = self.mul_sparse(&v, &vec![(yi[s], Rational::one())]);
                        }
                    }
                    if obstructed[t] {
                        v = self.mul_sparse(&v, &point);
                    }
                    if v.is_empty() {
                        dead = true;
                        break;
                    }
                    slot_values.push(v);
                }
                if dead {
                    continue;
                }
                // Push each slot along the diagonal into its gh-orbits.
                let mut partial: Vec<(Vec<usize>, Rational)> = vec![(vec![usize::MAX; ogh.len()], coeff)];
                for (t, v) in slot_values.iter().enumerate() {
                    let table = self.push_table(targets[t].len());
                    let mut next = Vec::new();
                    for (idx, c) in &partial {
                        for (b, vb) in v {
                            for (pushed, s) in &table[*b] {
                                let mut idx = idx.clone();
                                for (pos, &slot) in targets[t].iter().enumerate() {
                                    idx[slot] = pushed[pos];
                                }
                                next.push((idx, c * vb * s));
                            }
                        }
                    }
                    partial = next;
                }
                for (idx, c) in partial {
                    out.add_term(idx, c);
                }
            }
        }
        Ok(out)
    }

    fn algebra_unit_index(&self) -> usize {
        self.algebra.unit().iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Sum of two elements of the same sector.
    pub fn add(&self, x: &SectorElement, y: &SectorElement) -> Result<SectorElement> {
        if x.sector != y.sector {
            return Err(Error::Domain("elements lie in different sectors".into()));
        }
        let mut out = x.clone();
        for (k, c) in &y.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Homogeneous degree (internal degree plus shift) of every term, if it is
    /// the same for all of them.
    pub fn degree(&self, x: &SectorElement) -> Option<u32> {
        let mut deg = None;
        for idx in x.terms.keys() {
            let d = idx.iter().map(|&i| self.algebra.degree(i)).sum::<u32>() + x.shift() as u32;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Monomial with at most one non-unit factor: the point, one of the first
    /// three degree-2 classes, or a uniform basis vector. Uniform monomials
    /// make almost every product vanish.
    fn random_monomial(&self, rng: &mut impl Rng, k: usize) -> Vec<usize> {
        let d = self.algebra.dim();
        let unit = self.algebra_unit_index();
        let pt = self.point.iter().position(|c| !c.is_zero()).unwrap();
        let pool: Vec<usize> = (0..d).filter(|&i| i != unit && i != pt).take(3).collect();
        let mut idx = vec![unit; k];
        if rng.gen_range(0..4) > 0 {
            idx[rng.gen_range(0..k)] = match rng.gen_range(0..5) {
                0 => pt,
                1 | 2 if !pool.is_empty() => pool[rng.gen_range(0..pool.len())],
                _ => rng.gen_range(0..d),
            };
        }
        idx
    }

    /// Random element with up to `terms` monomials and small integer coefficients.
    pub fn random_element(&self, rng: &mut impl Rng, terms: usize) -> SectorElement {
        let perms: Vec<Permutation> = Permutation::all(self.n).collect();
        let sector = perms[rng.gen_range(0..perms.len())].clone();
        let k = orbits(&sector).len();
        let mut x = SectorElement::zero(sector);
        for _ in 0..rng.gen_range(1..=terms) {
            let idx = self.random_monomial(rng, k);
            let c = loop {
                let c = rng.gen_range(-3i64..=3);
                if c != 0 {
                    break c;
                }
            };
            x.add_term(idx, Rational::from(c));
        }
        x
    }
}

/// Expands a tensor product of sparse vectors.
fn product_of(factors: &[SparseVec]) -> Vec<(Vec<usize>, Rational)> {
    let mut acc: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), Rational::one())];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (idx, c) in &acc {
            for (i, v) in f {
                let mut idx = idx.clone();
                idx.push(*i);
                next.push((idx, c * v));
            }
        }
        acc = next;
    }
    acc
}

/// k · x: sector k g k⁻¹, slot of the g-orbit B moved to the slot of k(B).
pub fn conjugation_action(k: &Permutation, x: &SectorElement) -> Result<SectorElement> {
    if k.n() != x.sector.n() {
        return Err(Error::DimensionMismatch("conjugating permutation has the wrong degree".into()));
    }
    let g2 = x.sector.conjugate_by(k);
    let (src, dst) = (orbits(&x.sector), orbits(&g2));
    let perm: Vec<usize> = src.blocks.iter().map(|b| dst.block_of(k.apply(b[0]))).collect();
    let mut out = SectorElement::zero(g2);
    for (idx, c) in &x.terms {
        let mut new = vec![0; idx.len()];
        for (s, &i) in idx.iter().enumerate() {
            new[perm[s]] = i;
        }
        out.add_term(new, c.clone());
    }
    Ok(out)
}
