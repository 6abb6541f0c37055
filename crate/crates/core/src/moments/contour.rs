use crate::interval::{enclose_pi, enclose_sincos, CInterval, RInterval};

/// Circle `γ + ρ·e^{iθ}` discretized by the `N`-point trapezoidal rule with
/// nodes `θ_j = (2j − 1)π/N`.
#[derive(Clone, Debug)]
pub struct Contour {
    pub gamma: f64,
    pub rho: f64,
    pub n_nodes: usize,
    pub theta: Vec<RInterval>,
    pub nodes: Vec<CInterval>,
}

pub fn contour_from_interval(a: f64, b: f64, n_nodes: usize) -> Contour {
    assert!(a < b && n_nodes >= 1, "contour needs a < b and N ≥ 1");
    let gamma = 0.5 * a + 0.5 * b;
    let rho = 0.5 * b - 0.5 * a;
    let pi = enclose_pi();
    let nn = RInterval::point(n_nodes as f64);
    let theta: Vec<RInterval> =
        (1..=n_nodes).map(|j| (pi.scale((2 * j - 1) as f64)).checked_div(nn).expect("N ≥ 1")).collect();
    let mut nodes = vec![CInterval::ZERO; n_nodes];
    for j in 0..n_nodes {
        let mirror = n_nodes - 1 - j;
        if mirror < j {
            // θ_{N+1−j} = 2π − θ_j
            nodes[j] = nodes[mirror].conj();
            continue;
        }
        let (s, c) = enclose_sincos(theta[j]);
        // the self-mirrored node of odd N sits at θ = π
        let s = if mirror == j { RInterval::ZERO } else { s };
        let e = CInterval::new(c, s);
        nodes[j] = CInterval::real(RInterval::point(gamma)) + e.scale(RInterval::point(rho));
    }
    Contour { gamma, rho, n_nodes, theta, nodes }
}

impl Contour {
    /// Quadrature weight `(z_j − γ)^{k+1} / N = ρ^{k+1} e^{i(k+1)θ_j} / N`.
    /// Weights of mirrored nodes are exact conjugates.
    pub fn weight(&self, j: usize, k: usize) -> CInterval {
        let mirror = self.n_nodes - 1 - j;
        if mirror < j {
            return self.weight(mirror, k).conj();
        }
        let p = (k + 1) as f64;
        let (s, c) = enclose_sincos(self.theta[j].scale(p));
        let s = if mirror == j { RInterval::ZERO } else { s };
        let scale = RInterval::point(self.rho)
            .powi(k as u32 + 1)
            .checked_div(RInterval::point(self.n_nodes as f64))
            .expect("N ≥ 1");
        CInterval::new(c, s).scale(scale)
    }

    /// Index of the node mirrored across the real axis.
    pub fn mirror(&self, j: usize) -> usize {
        self.n_nodes - 1 - j
    }
}
