use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::setcore::{binom_u, mul, ExactInt};
use crate::vset::VertexSet;

/// Lower bound on `Σ_{v∈X} deg(v)` for a vertex set `X` spanning no edge.
///
/// Each of the `C(|X|, r)` non-edges inside `X` has degree sum at least `σ`,
/// and each vertex of `X` lies in `C(|X|-1, r-1)` of them, so
/// `Σ_{v∈X} deg(v) >= floor(C(|X|,r)·σ / C(|X|-1,r-1)) = floor(|X|·σ/r)`.
/// The actual sum is compared against the bound before returning it.
pub fn averaging_lower_bound(h: &Hypergraph, x: VertexSet) -> Result<ExactInt> {
    let (n, r) = (h.n(), h.r());
    if !x.is_subset(h.vertices()) {
        return Err(Error::invalid(format!("{x} is not inside [{n}]")));
    }
    let k = x.len();
    if r == 0 || k < r {
        return Err(Error::invalid(format!("|X| = {k} is smaller than r = {r}")));
    }
    if let Some(&e) = h.edges().iter().find(|e| e.is_subset(x)) {
        return Err(Error::invalid(format!("X spans the edge {e}")));
    }
    let sigma = h
        .ore_degree()
        .value
        .finite()
        .ok_or_else(|| Error::invalid("sigma is unbounded"))?;
    let bound = mul(binom_u(k, r)?, sigma)? / binom_u(k - 1, r - 1)?;
    let actual = h.degree_sum(x);
    if actual < bound {
        return Err(Error::SelfCheck(format!(
            "degree sum {actual} over {x} is below the averaging bound {bound}"
        )));
    }
    Ok(bound)
}

/// Degree sum over `X` recomputed from the `r`-subsets of `X`, for tests.
#[cfg(test)]
fn degree_sum_by_subsets(h: &Hypergraph, x: VertexSet) -> u128 {
    let members = x.to_vec();
    let k = members.len();
    let r = h.r();
    use crate::setcore::enumerate_subsets;
    // Σ_{S⊆X,|S|=r} deg(S) = C(k-1, r-1) Σ_{v∈X} deg(v)
    let total: u128 = enumerate_subsets(k, r)
        .unwrap()
        .map(|s| s.iter().map(|i| h.degree(members[i - 1]) as u128).sum::<u128>())
        .sum();
    total / binom_u(k - 1, r - 1).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::one_star;

    #[test]
    fn star_complement_of_an_edge() {
        let h = one_star(10, 3, 1).unwrap();
        let x = VertexSet::range(4, 10);
        let b = averaging_lower_bound(&h, x).unwrap();
        let sigma = h.ore_degree().value.finite().unwrap();
        assert_eq!(sigma, 3 * 8);
        assert_eq!(b, 7 * sigma / 3);
        assert_eq!(degree_sum_by_subsets(&h, x), h.set_degree(x).unwrap());
        assert!(h.set_degree(x).unwrap() >= b);
    }

    #[test]
    fn single_non_edge_gives_sigma() {
        let h = one_star(8, 3, 1).unwrap();
        let x = VertexSet::from_vertices(8, &[2, 3, 4]).unwrap();
        let sigma = h.ore_degree().value.finite().unwrap();
        assert_eq!(averaging_lower_bound(&h, x).unwrap(), sigma);
    }

    #[test]
    fn isolated_set_forces_zero() {
        let h = Hypergraph::new(8, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(averaging_lower_bound(&h, VertexSet::range(3, 8)).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let h = one_star(8, 3, 1).unwrap();
        assert!(averaging_lower_bound(&h, VertexSet::range(1, 4)).is_err());
        assert!(averaging_lower_bound(&h, VertexSet::range(2, 3)).is_err());
        let complete = Hypergraph::complete(5, 2).unwrap();
        assert!(averaging_lower_bound(&complete, VertexSet::range(1, 2)).is_err());
    }
}
