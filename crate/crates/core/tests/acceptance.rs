//! Acceptance suite: every release-gating identity and inequality, one test
//! per criterion, each printing a pass line (visible with `--nocapture`).
//!
//! Exact-backend criteria run at zero tolerance: assertions are exact
//! rational equality. Float-backend criteria run at 1e-9 relative slack.

use edgetangent::metrics::{
    circumradius_sq_closed, circumradius_sq_det, circumradius_sq_vol, edge_inradius_sq_closed,
    edge_inradius_sq_det, inradius, og_distance_sq, volume_sq_cm, volume_sq_from_radii,
};
use edgetangent::scalar::{factorial, pow, sign_pow, Scalar};
use edgetangent::structured::{
    balloon_det_closed, balloon_inverse_closed, balloon_matrix, squared_edge_det_closed,
    squared_edge_matrix,
};
use edgetangent::verify::instance_seed;
use edgetangent::{
    check_chain, embed, random_radii, run_campaign, BalloonRadii, CampaignConfig, Profile,
    Rational, SimplexError,
};

const IDENTITY_SEED: u64 = 0xED6E_7A96;
const IDENTITY_COUNT: u64 = 1000;
const CHAIN_SEED: u64 = 42;
const CHAIN_COUNT: u64 = 10_000;

fn rat(p: i64, q: i64) -> Rational {
    <Rational as Scalar>::from_ratio(p, q)
}

/// Shared instance stream for the identity criteria: instance i of dimension
/// n is always the same realizable rational radii vector.
fn identity_instance(dim: usize, index: u64) -> BalloonRadii<Rational> {
    random_radii(dim, instance_seed(IDENTITY_SEED, dim, index), Profile::Uniform)
        .expect("uniform sampling within budget")
        .radii
}

fn pass(number: u32, what: &str) {
    println!("acceptance {number:02}: {what}: pass");
}

#[test]
fn acceptance_01_circumradius_closed_equals_determinant_quotient() {
    for dim in 2..=8 {
        for index in 0..IDENTITY_COUNT {
            let radii = identity_instance(dim, index);
            let closed = circumradius_sq_closed(&radii.symmetric_sums()).unwrap();
            let quotient = circumradius_sq_det(&radii).unwrap();
            assert_eq!(
                closed,
                quotient,
                "dim {dim} instance {index}: radii {:?}",
                radii.radii()
            );
        }
    }
    pass(1, "closed circumradius formula equals determinant quotient, zero tolerance");
}

#[test]
fn acceptance_02_balloon_determinant_and_inverse_closed_forms() {
    for dim in 2..=8 {
        for index in 0..IDENTITY_COUNT {
            let radii = identity_instance(dim, index);
            let matrix = balloon_matrix(&radii);
            assert_eq!(
                matrix.determinant(),
                balloon_det_closed(&radii),
                "dim {dim} instance {index}"
            );
            assert!(
                matrix
                    .mul(&balloon_inverse_closed(&radii))
                    .unwrap()
                    .is_identity(),
                "dim {dim} instance {index}: closed inverse failed"
            );
        }
    }
    pass(2, "balloon matrix closed determinant and closed inverse are exact");
}

#[test]
fn acceptance_03_squared_edge_determinant_closed_form() {
    for dim in 2..=8 {
        for index in 0..IDENTITY_COUNT {
            let radii = identity_instance(dim, index);
            assert_eq!(
                squared_edge_matrix(&radii).determinant(),
                squared_edge_det_closed(&radii),
                "dim {dim} instance {index}"
            );
        }
    }
    pass(3, "squared-edge matrix closed determinant is exact");
}

#[test]
fn acceptance_04_edge_inradius_closed_equals_determinant_quotient() {
    for dim in 2..=8 {
        for index in 0..IDENTITY_COUNT {
            let radii = identity_instance(dim, index);
            assert_eq!(
                edge_inradius_sq_closed(&radii.symmetric_sums()).unwrap(),
                edge_inradius_sq_det(&radii).unwrap(),
                "dim {dim} instance {index}"
            );
        }
    }
    pass(4, "closed edge-inradius formula equals determinant quotient, zero tolerance");
}

#[test]
fn acceptance_05_volume_radius_determinant_identities() {
    for dim in 2..=8 {
        let fact_sq = {
            let f = factorial::<Rational>(dim);
            f.clone() * f
        };
        for index in 0..IDENTITY_COUNT {
            let radii = identity_instance(dim, index);
            let edges = radii.edge_lengths();
            let vol_sq = volume_sq_cm(&edges);
            let circ_sq = circumradius_sq_closed(&radii.symmetric_sums()).unwrap();
            let rho_sq = edge_inradius_sq_closed(&radii.symmetric_sums()).unwrap();

            // (n!)^2 V^2 R^2 = (-1)^n |squared edge| / 2^(n+1)
            let lhs = fact_sq.clone() * vol_sq.clone() * circ_sq;
            let rhs = sign_pow::<Rational>(dim) * squared_edge_matrix(&radii).determinant()
                / pow(&rat(2, 1), (dim + 1) as u32);
            assert_eq!(lhs, rhs, "dim {dim} instance {index}: volume-circumradius");

            // (n!)^2 V^2 rho^2 = 2^n (n-1) (prod x_i)^2
            let lhs = fact_sq.clone() * vol_sq * rho_sq;
            let prod = radii.product();
            let rhs = pow(&rat(2, 1), dim as u32) * rat(dim as i64 - 1, 1) * prod.clone() * prod;
            assert_eq!(lhs, rhs, "dim {dim} instance {index}: volume-edge-inradius");
        }
    }
    pass(5, "volume ties circumradius and edge-inradius determinant identities exactly");
}

#[test]
fn acceptance_06_classical_anchors_and_triangle_formula() {
    // 3-4-5 triangle from radii (1,2,3).
    let triangle = BalloonRadii::new(vec![rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
    let sums = triangle.symmetric_sums();
    assert_eq!(circumradius_sq_closed(&sums).unwrap(), rat(25, 4));
    assert_eq!(edge_inradius_sq_closed(&sums).unwrap(), rat(1, 1));
    let rho = edge_inradius_sq_closed(&sums).unwrap();
    assert_eq!(volume_sq_from_radii(&triangle, &rho).unwrap(), rat(36, 1));
    assert_eq!(
        og_distance_sq(&rat(25, 4), &triangle.edge_lengths()).unwrap(),
        rat(25, 36)
    );

    // Regular tetrahedron with edge 2 from radii (1,1,1,1).
    let tetra = BalloonRadii::new(vec![rat(1, 1); 4]).unwrap();
    let sums = tetra.symmetric_sums();
    assert_eq!(circumradius_sq_closed(&sums).unwrap(), rat(3, 2));
    assert_eq!(edge_inradius_sq_closed(&sums).unwrap(), rat(1, 2));
    let rho = edge_inradius_sq_closed(&sums).unwrap();
    assert_eq!(volume_sq_from_radii(&tetra, &rho).unwrap(), rat(8, 9));

    // Triangle circumradius formula
    // R = (x0+x1)(x1+x2)(x2+x0) / (4 sqrt(x0 x1 x2 (x0+x1+x2)))
    // squared, against the general closed form, on 1000 random triples.
    for index in 0..IDENTITY_COUNT {
        let radii = identity_instance(2, index);
        let x = radii.radii();
        let num = (x[0].clone() + x[1].clone())
            * (x[1].clone() + x[2].clone())
            * (x[2].clone() + x[0].clone());
        let den = rat(16, 1)
            * x[0].clone()
            * x[1].clone()
            * x[2].clone()
            * (x[0].clone() + x[1].clone() + x[2].clone());
        let remark_r_sq = num.clone() * num / den;
        assert_eq!(
            remark_r_sq,
            circumradius_sq_closed(&radii.symmetric_sums()).unwrap(),
            "instance {index}"
        );
    }
    pass(6, "classical anchors and the triangle circumradius formula agree exactly");
}

#[test]
fn acceptance_07_inequality_chain_exact_backend() {
    let cfg = CampaignConfig {
        dims: (2..=8).collect(),
        count: CHAIN_COUNT,
        seed: CHAIN_SEED,
        profile: Profile::Uniform,
        workers: 8,
        cross_check: false,
        tolerance: 1e-9,
    };
    let summary = run_campaign::<Rational>(&cfg).unwrap();
    assert_eq!(summary.violations, 0, "{:#?}", summary.per_dim);
    assert_eq!(summary.instances, 7 * CHAIN_COUNT);

    // Equal radii attain every bound exactly.
    for dim in 2..=8usize {
        let regular = BalloonRadii::new(vec![rat(7, 4); dim + 1]).unwrap();
        let report = check_chain(&regular).unwrap();
        assert!(report.chain_lower_slack.is_zero(), "dim {dim}");
        assert!(report.chain_upper_slack.is_zero(), "dim {dim}");
        assert!(report.discriminant_slack.is_zero(), "dim {dim}");

        // Any unequal perturbation moves the discriminant strictly above its
        // floor.
        let mut values = vec![rat(7, 4); dim + 1];
        values[0] = rat(2, 1);
        let irregular = BalloonRadii::new(values).unwrap();
        let report = check_chain(&irregular).unwrap();
        assert!(report.discriminant_slack.is_positive(), "dim {dim}");
    }
    pass(7, "chain 0 <= R^2 - (2n/(n-1)) rho^2 <= (n+1)^2 |OG|^2 on 10^4 exact instances per n");
}

#[test]
fn acceptance_08_inequality_chain_float_backend() {
    let cfg = CampaignConfig {
        dims: (2..=8).collect(),
        count: CHAIN_COUNT,
        seed: CHAIN_SEED,
        profile: Profile::Uniform,
        workers: 8,
        cross_check: false,
        tolerance: 1e-9,
    };
    let summary = run_campaign::<f64>(&cfg).unwrap();
    assert_eq!(summary.violations, 0, "{:#?}", summary.per_dim);
    for dim_summary in &summary.per_dim {
        assert!(dim_summary.min_euler_slack.is_some(), "dim {}", dim_summary.dim);
        assert!(
            dim_summary.min_edge_euler_slack.is_some(),
            "dim {}",
            dim_summary.dim
        );
    }

    // Regular simplices sit on the Euler equality R = n r.
    for dim in 2..=8usize {
        let regular = BalloonRadii::new(vec![1.25f64; dim + 1]).unwrap();
        let edges = regular.edge_lengths();
        let r = inradius(&edges).unwrap();
        let big_r = circumradius_sq_closed(&regular.symmetric_sums())
            .unwrap()
            .sqrt();
        assert!(
            (big_r - dim as f64 * r).abs() <= 1e-9 * big_r,
            "dim {dim}: R = {big_r}, n r = {}",
            dim as f64 * r
        );
    }
    pass(8, "chain R >= sqrt(2n/(n-1)) rho >= n r on 10^4 float instances per n");
}

#[test]
fn acceptance_09_degeneracy_boundary() {
    // The root of 3 eps^2 + 6 eps - 1 = 0: margin of (eps, 1, 1, 1) vanishes.
    let eps = (2.0 * 3.0f64.sqrt() - 3.0) / 3.0;
    let boundary = BalloonRadii::new(vec![eps, 1.0, 1.0, 1.0]).unwrap();
    let margin = boundary.realizability().margin;
    assert!(margin.abs() <= 1e-12, "margin {margin}");
    let vol_sq = volume_sq_cm(&boundary.edge_lengths());
    assert!(vol_sq.abs() <= 1e-9, "vol_sq {vol_sq}");

    // Below the root: still circumscriptible, no longer realizable, margin
    // exactly -37 for radii (1/10, 1, 1, 1).
    let below = BalloonRadii::new(vec![rat(1, 10), rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap();
    let edges = below.edge_lengths();
    let recovered = edges.balloon_radii().expect("circumscriptible");
    assert_eq!(recovered, below);
    let realizability = recovered.realizability();
    assert!(!realizability.realizable);
    assert_eq!(realizability.margin, rat(-37, 1));
    assert!(edge_inradius_sq_closed(&recovered.symmetric_sums()).is_err());

    // Same edges, non-circumscriptible control: mangle one entry.
    let mangled = {
        let mut rows: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| edges.length(i, j).clone()).collect())
            .collect();
        rows[0][1] = rat(10, 1);
        rows[1][0] = rat(10, 1);
        edgetangent::EdgeLengthMatrix::new(rows).unwrap()
    };
    assert!(matches!(
        mangled.balloon_radii(),
        Err(SimplexError::NotCircumscriptible(_))
    ));
    pass(9, "degeneracy boundary: zero margin and vanishing volume at the root");
}

#[test]
fn acceptance_10_embedding_oracle_agreement() {
    for dim in 3..=6 {
        for index in 0..1000u64 {
            let radii = random_radii::<f64>(
                dim,
                instance_seed(0x0E3B, dim, index),
                Profile::Uniform,
            )
            .unwrap()
            .radii;
            let sums = radii.symmetric_sums();
            let circ_sq = circumradius_sq_closed(&sums).unwrap();
            let edges = radii.edge_lengths();
            let og_sq = og_distance_sq(&circ_sq, &edges).unwrap();
            let vol_route = circumradius_sq_vol(&edges).unwrap();

            let data = embed(&edges).unwrap().circumdata().unwrap();
            let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
            assert!(
                rel(data.circumradius_sq, circ_sq) <= 1e-9,
                "dim {dim} instance {index}: embedded R^2 {} vs formula {}",
                data.circumradius_sq,
                circ_sq
            );
            assert!(
                rel(data.og_sq, og_sq) <= 1e-9,
                "dim {dim} instance {index}: embedded |OG|^2 {} vs formula {}",
                data.og_sq,
                og_sq
            );
            assert!(
                rel(vol_route, circ_sq) <= 1e-9,
                "dim {dim} instance {index}: volume-route R^2 {vol_route} vs {circ_sq}"
            );
        }
    }
    pass(10, "embedding oracle matches formula routes within 1e-9 on 10^3 instances per n");
}

#[test]
fn acceptance_11_campaign_determinism_across_workers() {
    let base = CampaignConfig {
        dims: vec![2, 3, 4, 5],
        count: 200,
        seed: 0xD00D,
        profile: Profile::Uniform,
        workers: 1,
        cross_check: true,
        tolerance: 1e-9,
    };
    let mut parallel = base.clone();
    parallel.workers = 8;

    let exact_single = run_campaign::<Rational>(&base).unwrap();
    let exact_parallel = run_campaign::<Rational>(&parallel).unwrap();
    assert_eq!(exact_single, exact_parallel);
    assert_eq!(
        serde_json::to_string(&exact_single).unwrap(),
        serde_json::to_string(&exact_parallel).unwrap()
    );
    assert_eq!(exact_single.violations, 0);

    let float_single = run_campaign::<f64>(&base).unwrap();
    let float_parallel = run_campaign::<f64>(&parallel).unwrap();
    assert_eq!(float_single, float_parallel);
    assert_eq!(
        serde_json::to_string(&float_single).unwrap(),
        serde_json::to_string(&float_parallel).unwrap()
    );
    assert_eq!(float_single.violations, 0);
    pass(11, "fixed-seed campaigns are bit-identical across 1 and 8 workers");
}
