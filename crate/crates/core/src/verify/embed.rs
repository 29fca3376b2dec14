//! Coordinate embedding oracle: reconstruct point positions from edge
//! lengths and recompute circumradius and center distance geometrically,
//! independent of every formula route.

use crate::scalar::FLOAT_REL_TOL;
use crate::simplex::EdgeLengthMatrix;

use super::VerifyError;

/// n+1 points in n-dimensional space whose pairwise distances reproduce a
/// source edge matrix. Vertex 0 sits at the origin.
#[derive(Debug, Clone)]
pub struct PointConfiguration {
    dim: usize,
    /// Row i holds the coordinates of vertex i.
    points: Vec<Vec<f64>>,
}

/// Circumradius and center-centroid data measured from coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircumData {
    pub circumradius_sq: f64,
    pub og_sq: f64,
}

/// Embed an edge set by factoring the Gram matrix anchored at vertex 0:
/// G_ij = (a_0i^2 + a_0j^2 - a_ij^2) / 2 for i, j in 1..=n, factored by a
/// Cholesky decomposition. Fails when the Gram matrix has a negative
/// eigenvalue beyond tolerance or when the reconstructed distances do not
/// reproduce the input.
pub fn embed(edges: &EdgeLengthMatrix<f64>) -> Result<PointConfiguration, VerifyError> {
    let n = edges.dim();
    let sq = |v: f64| v * v;
    let mut gram = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = (sq(*edges.length(0, i + 1)) + sq(*edges.length(0, j + 1))
                - sq(*edges.length(i + 1, j + 1)))
                / 2.0;
        }
    }
    let scale = (0..n).map(|i| gram[i][i].abs()).fold(1.0f64, f64::max);
    let tol = 1e-12 * scale;

    // In-place Cholesky; row i of the factor is the coordinate vector of
    // vertex i+1.
    let mut chol = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut acc = gram[i][j];
            for k in 0..j {
                acc -= chol[i][k] * chol[j][k];
            }
            if i == j {
                if acc < -tol {
                    return Err(VerifyError::NotEmbeddable {
                        residual: acc,
                        pivot: i,
                    });
                }
                chol[i][i] = acc.max(0.0).sqrt();
            } else if chol[j][j] == 0.0 {
                if acc.abs() > tol {
                    return Err(VerifyError::NotEmbeddable {
                        residual: acc,
                        pivot: j,
                    });
                }
                chol[i][j] = 0.0;
            } else {
                chol[i][j] = acc / chol[j][j];
            }
        }
    }

    let mut points = Vec::with_capacity(n + 1);
    points.push(vec![0.0; n]);
    points.extend(chol);
    let config = PointConfiguration { dim: n, points };

    for i in 0..=n {
        for j in i + 1..=n {
            let want = *edges.length(i, j);
            let got = config.distance(i, j);
            if (got - want).abs() > FLOAT_REL_TOL * want.max(1.0) {
                return Err(VerifyError::DistanceMismatch {
                    i,
                    j,
                    expected: want,
                    actual: got,
                });
            }
        }
    }
    Ok(config)
}

impl PointConfiguration {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Circumcenter coordinates, solved from the equidistance linear system
    /// relative to vertex 0.
    pub fn circumcenter(&self) -> Result<Vec<f64>, VerifyError> {
        let n = self.dim;
        // With vertex 0 at the origin: 2 p_i . c = |p_i|^2 for i = 1..=n.
        let mut a = vec![vec![0.0f64; n + 1]; n];
        for i in 0..n {
            for k in 0..n {
                a[i][k] = 2.0 * self.points[i + 1][k];
            }
            a[i][n] = self.points[i + 1].iter().map(|v| v * v).sum::<f64>();
        }
        solve(&mut a).ok_or(VerifyError::SingularSystem)
    }

    /// Coordinate mean of the vertices.
    pub fn centroid(&self) -> Vec<f64> {
        let n = self.dim;
        let mut centroid = vec![0.0f64; n];
        for p in &self.points {
            for k in 0..n {
                centroid[k] += p[k] / (n as f64 + 1.0);
            }
        }
        centroid
    }

    /// Measure R^2 and |OG|^2 directly from coordinates.
    pub fn circumdata(&self) -> Result<CircumData, VerifyError> {
        let center = self.circumcenter()?;
        let circumradius_sq = center.iter().map(|v| v * v).sum::<f64>();
        let og_sq = center
            .iter()
            .zip(&self.centroid())
            .map(|(c, g)| (c - g) * (c - g))
            .sum::<f64>();
        Ok(CircumData {
            circumradius_sq,
            og_sq,
        })
    }
}

/// Gaussian elimination with partial pivoting on an n x (n+1) augmented
/// system. Returns None when singular.
fn solve(a: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let n = a.len();
    for k in 0..n {
        let pivot = (k..n).max_by(|&r, &s| a[r][k].abs().total_cmp(&a[s][k].abs()))?;
        if a[pivot][k] == 0.0 {
            return None;
        }
        a.swap(k, pivot);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..=n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    let mut x = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut acc = a[i][n];
        for j in i + 1..n {
            acc -= a[i][j] * x[j];
        }
        x[i] = acc / a[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::BalloonRadii;

    #[test]
    fn embeds_345_triangle() {
        let e = BalloonRadii::new(vec![1.0f64, 2.0, 3.0])
            .unwrap()
            .edge_lengths();
        let p = embed(&e).unwrap();
        assert!((p.distance(0, 1) - 3.0).abs() < 1e-12);
        assert!((p.distance(0, 2) - 4.0).abs() < 1e-12);
        assert!((p.distance(1, 2) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn embeds_regular_tetrahedron() {
        let e = BalloonRadii::new(vec![1.0f64; 4]).unwrap().edge_lengths();
        let p = embed(&e).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                assert!((p.distance(i, j) - 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn circumdata_of_345_triangle() {
        let e = BalloonRadii::new(vec![1.0f64, 2.0, 3.0])
            .unwrap()
            .edge_lengths();
        let data = embed(&e).unwrap().circumdata().unwrap();
        // Hypotenuse midpoint is the circumcenter: R^2 = 25/4, |OG|^2 = 25/36.
        assert!((data.circumradius_sq - 6.25).abs() < 1e-9);
        assert!((data.og_sq - 25.0 / 36.0).abs() < 1e-9);
    }

    #[test]
    fn circumdata_of_regular_simplices() {
        for n in 2..=6usize {
            let e = BalloonRadii::new(vec![1.0f64; n + 1]).unwrap().edge_lengths();
            let data = embed(&e).unwrap().circumdata().unwrap();
            assert!(data.og_sq.abs() < 1e-12, "n={n}: og_sq={}", data.og_sq);
        }
    }

    #[test]
    fn boundary_family_fails_or_degenerates() {
        // Just below the degeneracy root the Gram matrix is indefinite.
        let eps = (2.0 * 3.0f64.sqrt() - 3.0) / 3.0 - 0.01;
        let e = BalloonRadii::new(vec![eps, 1.0, 1.0, 1.0])
            .unwrap()
            .edge_lengths();
        assert!(matches!(
            embed(&e),
            Err(VerifyError::NotEmbeddable { .. }) | Err(VerifyError::DistanceMismatch { .. })
        ));
    }
}
