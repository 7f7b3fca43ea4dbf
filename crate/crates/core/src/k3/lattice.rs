//! Integral lattices and the built-in catalog.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::forms::QuadraticForm;
use crate::linalg::{dot, RatMatrix};
use crate::rational::Rational;

/// An integral symmetric Gram matrix with a name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub label: String,
    gram: RatMatrix,
}

#[derive(Deserialize)]
struct GramFile {
    gram: RatMatrix,
    #[serde(default)]
    label: Option<String>,
}

pub const CATALOG_NAMES: [&str; 5] = ["U", "E8_minus", "K3_Lambda", "FermatT", "FermatNS"];

impl Lattice {
    pub fn new(label: impl Into<String>, gram: RatMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return domain("lattice Gram matrix is not symmetric");
        }
        if (0..gram.rows()).any(|i| (0..gram.cols()).any(|j| !gram[(i, j)].is_integer())) {
            return domain("lattice Gram matrix has non-integral entries");
        }
        Ok(Lattice { label: label.into(), gram })
    }

    pub fn from_i64(label: &str, rows: &[Vec<i64>]) -> Self {
        Self::new(label, RatMatrix::from_i64(rows)).expect("valid integral Gram matrix")
    }

    /// Parses `{"gram": [[...]], "label": ...}`.
    pub fn from_json(text: &str, default_label: &str) -> Result<Self> {
        let f: GramFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(f.label.unwrap_or_else(|| default_label.to_string()), f.gram)
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("square").to_integer().expect("integral determinant")
    }

    pub fn is_even(&self) -> bool {
        let two = BigInt::from(2);
        (0..self.rank()).all(|i| {
            let d = self.gram[(i, i)].to_integer().unwrap();
            (d % &two) == BigInt::from(0)
        })
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.det();
        d == BigInt::from(1) || d == BigInt::from(-1)
    }

    pub fn form(&self) -> QuadraticForm {
        QuadraticForm::new(self.gram.clone()).expect("symmetric")
    }

    pub fn signature(&self) -> Result<(usize, usize)> {
        self.form().signature()
    }

    pub fn direct_sum(&self, other: &Lattice, label: &str) -> Lattice {
        Lattice { label: label.into(), gram: RatMatrix::block_diag(&[&self.gram, &other.gram]) }
    }

    pub fn sum_of(label: &str, parts: &[&Lattice]) -> Lattice {
        let grams: Vec<&RatMatrix> = parts.iter().map(|l| &l.gram).collect();
        Lattice { label: label.into(), gram: RatMatrix::block_diag(&grams) }
    }

    pub fn twist(&self, c: i64) -> Result<Lattice> {
        if c == 0 {
            return domain("twist by zero");
        }
        Ok(Lattice { label: format!("{}({c})", self.label), gram: self.gram.scale(&Rational::from(c)) })
    }
}

pub fn hyperbolic_plane() -> Lattice {
    Lattice::from_i64("U", &[vec![0, 1], vec![1, 0]])
}

/// Negated Cartan matrix of E8 in Bourbaki numbering: the chain
/// 1-3-4-5-6-7-8 with node 2 attached to node 4.
pub fn e8_minus() -> Lattice {
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in edges {
        g[a - 1][b - 1] = 1;
        g[b - 1][a - 1] = 1;
    }
    Lattice::from_i64("E8_minus", &g)
}

pub fn k3_lattice() -> Lattice {
    let e8 = e8_minus();
    let u = hyperbolic_plane();
    Lattice::sum_of("K3_Lambda", &[&e8, &e8, &u, &u, &u])
}

pub fn fermat_transcendental() -> Lattice {
    Lattice::from_i64("FermatT", &[vec![8, 0], vec![0, 8]])
}

/// E8(−1)² ⊕ U ⊕ ⟨−8⟩², with U in coordinates 16, 17.
pub fn fermat_neron_severi() -> Lattice {
    let e8 = e8_minus();
    let u = hyperbolic_plane();
    let m8 = Lattice::from_i64("<-8>", &[vec![-8]]);
    Lattice::sum_of("FermatNS", &[&e8, &e8, &u, &m8, &m8])
}

pub fn catalog(name: &str) -> Result<Lattice> {
    match name {
        "U" => Ok(hyperbolic_plane()),
        "E8_minus" => Ok(e8_minus()),
        "K3_Lambda" => Ok(k3_lattice()),
        "FermatT" => Ok(fermat_transcendental()),
        "FermatNS" => Ok(fermat_neron_severi()),
        other => Err(Error::UnknownLattice(other.to_string())),
    }
}

/// One vector of an orthogonal basis with `(D, D) = 2d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalVector {
    pub vector: Vec<Rational>,
    pub d: Rational,
}

/// Orthogonal Q-basis of the Fermat Néron-Severi space starting with
/// D₁ = e + 2f in U (d₁ = 2) and D₂ a root of the first E8(−1) (d₂ = −1).
pub fn fermat_ns_orthogonal_basis() -> Vec<OrthogonalVector> {
    let ns = fermat_neron_severi();
    let g = ns.gram();
    let n = ns.rank();
    let unit = |i: usize, c: i64| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::from(c);
        v
    };
    let mut d1 = unit(16, 1);
    d1[17] = Rational::from(2);
    let d2 = unit(0, 1);
    let lead = [d1, d2];

    let constraints: Vec<Vec<Rational>> = lead.iter().map(|v| g.mul_vec(v).unwrap()).collect();
    let k = RatMatrix::from_columns(&RatMatrix::from_rows(constraints).unwrap().kernel()).unwrap();
    let restricted = QuadraticForm::new(k.transpose().mul(g).unwrap().mul(&k).unwrap()).unwrap();
    let diag = restricted.diagonalize().expect("complement is nondegenerate");
    let rest = k.mul(&diag.congruence).unwrap();

    let half = Rational::new(1, 2);
    lead.into_iter()
        .chain((0..rest.cols()).map(|j| rest.column(j)))
        .map(|v| {
            let norm = dot(&v, &g.mul_vec(&v).unwrap());
            OrthogonalVector { d: norm * &half, vector: v }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn catalog_properties() {
        let l = catalog("K3_Lambda").unwrap();
        assert_eq!(l.rank(), 22);
        assert_eq!(l.signature().unwrap(), (3, 19));
        assert_eq!(l.det(), BigInt::from(-1));
        assert!(l.is_even());

        let e8 = catalog("E8_minus").unwrap();
        assert_eq!(e8.rank(), 8);
        assert_eq!(e8.det(), BigInt::from(1));
        assert!(e8.is_even() && e8.is_unimodular());
        assert_eq!(e8.signature().unwrap(), (0, 8));

        let u = catalog("U").unwrap();
        assert_eq!(u.det(), BigInt::from(-1));

        let t = catalog("FermatT").unwrap();
        assert_eq!(t.gram(), &RatMatrix::from_i64(&[vec![8, 0], vec![0, 8]]));

        let ns = catalog("FermatNS").unwrap();
        assert_eq!(ns.rank(), 20);
        assert_eq!(ns.signature().unwrap(), (1, 19));
        assert_eq!(ns.det(), BigInt::from(-64));

        assert_eq!(catalog("D4"), Err(Error::UnknownLattice("D4".into())));
    }

    #[test]
    fn fermat_basis_is_orthogonal() {
        let basis = fermat_ns_orthogonal_basis();
        let g = fermat_neron_severi();
        assert_eq!(basis.len(), 20);
        assert_eq!(basis[0].d, q(2, 1));
        assert_eq!(basis[1].d, q(-1, 1));
        for (i, a) in basis.iter().enumerate() {
            assert!(!a.d.is_zero());
            for b in &basis[i + 1..] {
                assert!(g.gram().bilinear(&a.vector, &b.vector).unwrap().is_zero());
            }
        }
        let positive = basis.iter().filter(|v| v.d.is_positive()).count();
        assert_eq!(positive, 1);
    }

    #[test]
    fn user_lattice_from_json() {
        let l = Lattice::from_json(r#"{"gram":[["2","1"],["1","2"]]}"#, "A2").unwrap();
        assert_eq!(l.det(), BigInt::from(3));
        assert!(Lattice::from_json(r#"{"gram":[["1/2"]]}"#, "x").is_err());
    }
}
