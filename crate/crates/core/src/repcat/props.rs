use std::ops::Add;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactla::Matrix;
use crate::quiveralg::{BoundQuiverAlgebra, Element, QuotientData};

use super::{RepError, Representation};

/// Class in the Grothendieck group: composition-factor multiplicities, which
/// for a representation are its vertex dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassVector(pub Vec<usize>);

impl Add for &ClassVector {
    type Output = ClassVector;
    fn add(self, other: &ClassVector) -> ClassVector {
        ClassVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

pub fn class_vector(m: &Representation) -> ClassVector {
    ClassVector(m.dims().to_vec())
}

pub fn is_sincere(m: &Representation) -> bool {
    m.dims().iter().all(|&d| d > 0)
}

/// Basis of `ann(M) = {x | Mx = 0}` as algebra elements.
pub fn annihilator(m: &Representation) -> Vec<Element> {
    let a = m.algebra();
    let n = a.dim();
    // Each basis path acts on exactly one block; stack the flattened actions.
    let offsets = m.offsets();
    let total = m.total_dim();
    let mut action = Matrix::zeros(total * total, n);
    for (i, p) in a.basis().iter().enumerate() {
        let mat = m.path_matrix(p);
        for r in 0..mat.rows() {
            for c in 0..mat.cols() {
                let x = &mat[(r, c)];
                if !x.is_zero() {
                    action[((offsets[p.target] + r) * total + offsets[p.source] + c, i)] = x.clone();
                }
            }
        }
    }
    action.kernel_basis().columns()
}

pub fn is_faithful(m: &Representation) -> bool {
    annihilator(m).is_empty()
}

/// A `B`-module viewed as an `A`-module through `A -> B = A/I`.
pub fn inflate_from_quotient(
    m: &Representation,
    a: &Arc<BoundQuiverAlgebra>,
    data: &QuotientData,
) -> Result<Representation, RepError> {
    let q = a.quiver();
    let dims: Vec<usize> = data.vertex_map.iter().map(|v| v.map_or(0, |j| m.dim_at(j))).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, ar)| match (data.vertex_map[ar.source], data.vertex_map[ar.target]) {
            (Some(s), Some(t)) => {
                let x = data.image(&a.path_element(&q.arrow_path(k)));
                m.element_action(&x, s, t)
            }
            _ => Matrix::zeros(dims[ar.target], dims[ar.source]),
        })
        .collect();
    Representation::new(a.clone(), dims, maps)
}

/// An `A`-module killed by `I`, viewed as a module over `B = A/I`.
pub fn restrict_to_quotient(
    m: &Representation,
    b: &Arc<BoundQuiverAlgebra>,
    data: &QuotientData,
) -> Result<Representation, RepError> {
    if !data.ideal.iter().all(|x| m.kills(x)) {
        return Err(RepError::IdealActsNonzero);
    }
    let dims: Vec<usize> = data.surviving.iter().map(|&v| m.dim_at(v)).collect();
    let maps = b
        .quiver()
        .arrows()
        .iter()
        .zip(&data.arrow_lifts)
        .map(|(ar, lift)| m.element_action(lift, data.surviving[ar.source], data.surviving[ar.target]))
        .collect();
    Representation::new(b.clone(), dims, maps)
}
