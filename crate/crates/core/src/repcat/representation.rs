use std::sync::Arc;

use crate::exactla::{Matrix, Rational};
use crate::quiveralg::{BoundQuiverAlgebra, Path};

use super::RepError;

/// A right module over a bound quiver algebra, given as a representation:
/// one vector space per vertex and, for each arrow `a: i -> j`, a
/// `dim_j x dim_i` matrix acting on column vectors.
#[derive(Clone)]
pub struct Representation {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checked constructor: shapes and relations are validated.
    pub fn new(algebra: Arc<BoundQuiverAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, RepError> {
        let m = Representation { algebra, dims, maps };
        m.validate()?;
        Ok(m)
    }

    /// Constructor for internally produced data already known to be valid.
    pub(crate) fn from_parts(algebra: Arc<BoundQuiverAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        debug_assert!(Representation { algebra: algebra.clone(), dims: dims.clone(), maps: maps.clone() }
            .validate()
            .is_ok());
        Representation { algebra, dims, maps }
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Self {
        let dims = vec![0; algebra.num_vertices()];
        let maps = algebra.quiver().arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation { algebra, dims, maps }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Offsets of each vertex block inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// Shape and relation check.
    pub fn validate(&self) -> Result<(), RepError> {
        let q = self.algebra.quiver();
        if self.dims.len() != q.num_vertices() {
            return Err(RepError::ShapeMismatch(format!(
                "{} vertex dimensions for {} vertices",
                self.dims.len(),
                q.num_vertices()
            )));
        }
        if self.maps.len() != q.num_arrows() {
            return Err(RepError::ShapeMismatch(format!(
                "{} arrow matrices for {} arrows",
                self.maps.len(),
                q.num_arrows()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            let want = (self.dims[a.target], self.dims[a.source]);
            if m.shape() != want {
                return Err(RepError::ShapeMismatch(format!(
                    "arrow {:?} has a {}x{} matrix, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        for (k, r) in self.algebra.relations().iter().enumerate() {
            let (s, t) = (r.source(), r.target());
            let mut acc = Matrix::zeros(self.dims[t], self.dims[s]);
            for (c, p) in &r.terms {
                acc = acc.add(&self.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                let names: Vec<String> = r
                    .terms
                    .iter()
                    .map(|(c, p)| format!("{}*{}", c, q.path_names(p).join(".")))
                    .collect();
                return Err(RepError::RelationViolated(format!("relation {k}: {}", names.join(" + "))));
            }
        }
        Ok(())
    }

    /// Matrix of a path: `M_{a_k} ... M_{a_1}` for the path `a_1 ... a_k`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Action of the `e_s A e_t` component of an algebra element, `M_s -> M_t`.
    pub fn element_action(&self, x: &[Rational], s: usize, t: usize) -> Matrix {
        let mut acc = Matrix::zeros(self.dims[t], self.dims[s]);
        for i in self.algebra.basis_between(s, t) {
            if !x[i].is_zero() {
                acc = acc.add(&self.path_matrix(&self.algebra.basis()[i]).scale(&x[i]));
            }
        }
        acc
    }

    /// Does the element act as zero on the module?
    pub fn kills(&self, x: &[Rational]) -> bool {
        let n = self.algebra.num_vertices();
        (0..n).all(|s| (0..n).all(|t| self.element_action(x, s, t).is_zero()))
    }

    /// Same data, reinterpreted over another (structurally equal) algebra handle.
    pub(crate) fn with_algebra(&self, algebra: Arc<BoundQuiverAlgebra>) -> Self {
        Representation { algebra, dims: self.dims.clone(), maps: self.maps.clone() }
    }

    /// Subrepresentation spanned by per-vertex column bases (assumed stable
    /// under the arrows and independent).
    pub fn subrepresentation(&self, bases: &[Matrix]) -> Representation {
        let q = self.algebra.quiver();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let img = self.maps[k].mul(&bases[a.source]);
                bases[a.target].solve_matrix(&img).expect("subspace is arrow-stable")
            })
            .collect();
        Representation::from_parts(self.algebra.clone(), dims, maps)
    }

    /// Quotient by a subrepresentation with per-vertex column bases. Returns
    /// the quotient and the per-vertex projection matrices.
    pub fn quotient(&self, bases: &[Matrix]) -> (Representation, Vec<Matrix>) {
        let q = self.algebra.quiver();
        let projs: Vec<Matrix> = bases.iter().map(Matrix::cokernel_projection).collect();
        // Right inverses of the projections.
        let sections: Vec<Matrix> = projs
            .iter()
            .map(|p| {
                let pt = p.transpose();
                let gram = p.mul(&pt);
                pt.mul(&gram.inverse().expect("projection has full row rank"))
            })
            .collect();
        let dims: Vec<usize> = projs.iter().map(Matrix::rows).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| projs[a.target].mul(&self.maps[k]).mul(&sections[a.source]))
            .collect();
        (Representation::from_parts(self.algebra.clone(), dims, maps), projs)
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.dims == other.dims && self.maps == other.maps
    }
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation").field("dims", &self.dims).field("maps", &self.maps).finish()
    }
}

/// A module homomorphism: one matrix per vertex (`dim N_v x dim M_v`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Morphism {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        Morphism { blocks: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect() }
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&first.blocks).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Morphism {
        Morphism { blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let blocks: Option<Vec<Matrix>> = self.blocks.iter().map(Matrix::inverse).collect();
        blocks.map(|blocks| Morphism { blocks })
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// Stacked entries, vertex by vertex, row-major.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn total_matrix(&self) -> Matrix {
        let refs: Vec<&Matrix> = self.blocks.iter().collect();
        Matrix::block_diag(&refs)
    }

    /// Checks the intertwining squares `f_j M_a = N_a f_i`.
    pub fn is_homomorphism(&self, m: &Representation, n: &Representation) -> bool {
        if self.blocks.len() != m.dims.len() {
            return false;
        }
        for (v, b) in self.blocks.iter().enumerate() {
            if b.shape() != (n.dims[v], m.dims[v]) {
                return false;
            }
        }
        m.algebra.quiver().arrows().iter().enumerate().all(|(k, a)| {
            self.blocks[a.target].mul(&m.maps[k]) == n.maps[k].mul(&self.blocks[a.source])
        })
    }

    pub fn linear_combination(basis: &[Morphism], coeffs: &[Rational], m: &Representation, n: &Representation) -> Morphism {
        let mut acc = Morphism::zero(m, n);
        for (f, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }
}
