//! Face counts of P_W(K) from the facet intersection graph. The polytope is
//! simple and flag, so its codimension-d faces correspond to d-cliques of
//! the graph; the f-vector and h-polynomial follow by pure counting.

use crate::error::{Error, Result};
use crate::facetcomb::{intersection_graph, IntersectionGraph};
use crate::poly::GradedIntPolynomial;
use crate::weyl::ParabolicK;

/// Face counts by dimension: fvec[i] = number of i-dimensional faces,
/// i = 0..=dim, with fvec[dim] = 1 for the polytope itself.
pub type FVector = Vec<u64>;

/// Number of d-cliques in the graph (d = 0 counts the empty clique).
pub fn count_cliques(g: &IntersectionGraph, d: usize) -> u64 {
    fn go(adj: &[u128], mut cand: u128, need: usize) -> u64 {
        if need == 0 {
            return 1;
        }
        let mut count = 0;
        while cand != 0 {
            if (cand.count_ones() as usize) < need {
                break;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            count += go(adj, cand & adj[v], need - 1);
        }
        count
    }
    let m = g.vertex_count();
    let all = if m == 128 { !0u128 } else { (1u128 << m) - 1 };
    go(&g.adj, all, d)
}

pub fn f_vector_from_graph(g: &IntersectionGraph, dim: usize) -> Result<FVector> {
    if count_cliques(g, dim + 1) != 0 {
        return Err(Error::NonSimple(format!(
            "found a {}-clique in a dimension-{dim} intersection graph",
            dim + 1
        )));
    }
    let mut fvec = vec![0u64; dim + 1];
    for d in 0..=dim {
        fvec[dim - d] = count_cliques(g, d);
    }
    if fvec[0] == 0 {
        return Err(Error::NonSimple(format!(
            "no {dim}-clique: polytope has no vertices at the expected dimension"
        )));
    }
    Ok(fvec)
}

pub fn f_vector(pk: &ParabolicK) -> Result<FVector> {
    let g = intersection_graph(pk)?;
    f_vector_from_graph(&g, pk.rstype.dim())
}

pub fn f_polynomial(fvec: &FVector) -> GradedIntPolynomial {
    GradedIntPolynomial::from_coeffs(fvec.iter().map(|&c| c as i128).collect())
}

/// h(t) = f(t-1).
pub fn h_polynomial_faces(pk: &ParabolicK) -> Result<GradedIntPolynomial> {
    Ok(f_polynomial(&f_vector(pk)?).compose_t_minus_1())
}
