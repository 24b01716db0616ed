//! Seeded randomness: random cones and the sample stream used by the pair
//! checkers.
//!
//! All randomness comes from [`ConeRng`] (xoshiro256**, a 64-bit member of
//! the xorshift family) seeded through `seed_from_u64`, so identical seeds
//! give bit-identical cones and samples on every platform.

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256StarStar;

use crate::cone::PolyhedralCone;
use crate::error::{GeomError, Result};
use crate::linalg::Vector;

use super::PointSet;

pub type ConeRng = Xoshiro256StarStar;

pub fn rng_from_seed(seed: u64) -> ConeRng {
    ConeRng::seed_from_u64(seed)
}

pub fn gaussian_vector(rng: &mut ConeRng, dim: usize, scale: f64) -> Vector {
    let coords = (0..dim)
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect();
    Vector::new(coords).expect("gaussian samples are finite")
}

/// Uniform direction on the unit sphere.
pub fn random_unit(rng: &mut ConeRng, dim: usize) -> Vector {
    loop {
        if let Some(u) = gaussian_vector(rng, dim, 1.0).normalized() {
            return u;
        }
    }
}

pub const MAX_RANDOM_DIM: usize = 8;
pub const MAX_RANDOM_RAYS: usize = 16;

/// Shape of a random cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomConeSpec {
    pub ambient_dim: usize,
    pub n_rays: usize,
    /// Number of random lineality directions injected next to the rays.
    pub lineality_rank: usize,
    /// Flip every ray into one random open halfspace so the cone is pointed.
    pub pointed: bool,
}

impl RandomConeSpec {
    pub fn new(ambient_dim: usize, n_rays: usize) -> Self {
        RandomConeSpec {
            ambient_dim,
            n_rays,
            lineality_rank: 0,
            pointed: false,
        }
    }

    pub fn with_lineality(mut self, rank: usize) -> Self {
        self.lineality_rank = rank;
        self
    }

    pub fn pointed(mut self) -> Self {
        self.pointed = true;
        self
    }
}

/// `Cl Pos` of `n_rays` directions drawn uniformly from the unit sphere.
pub fn random_cone(ambient_dim: usize, n_rays: usize, seed: u64) -> Result<PolyhedralCone> {
    random_cone_with(RandomConeSpec::new(ambient_dim, n_rays), seed)
}

pub fn random_cone_with(spec: RandomConeSpec, seed: u64) -> Result<PolyhedralCone> {
    if !(1..=MAX_RANDOM_DIM).contains(&spec.ambient_dim) {
        return Err(GeomError::ParameterOutOfRange(format!(
            "ambient dimension {} outside 1..={MAX_RANDOM_DIM}",
            spec.ambient_dim
        )));
    }
    if spec.n_rays > MAX_RANDOM_RAYS {
        return Err(GeomError::ParameterOutOfRange(format!(
            "{} rays exceeds {MAX_RANDOM_RAYS}",
            spec.n_rays
        )));
    }
    if spec.lineality_rank >= spec.ambient_dim && spec.lineality_rank > 0 {
        return Err(GeomError::ParameterOutOfRange(format!(
            "lineality rank {} must be below the ambient dimension",
            spec.lineality_rank
        )));
    }
    let mut rng = rng_from_seed(seed);
    let n = spec.ambient_dim;
    let mut rays: Vec<Vector> = (0..spec.n_rays).map(|_| random_unit(&mut rng, n)).collect();
    let lineality: Vec<Vector> = (0..spec.lineality_rank)
        .map(|_| random_unit(&mut rng, n))
        .collect();
    if spec.pointed {
        let axis = random_unit(&mut rng, n);
        for r in &mut rays {
            if r.dot(&axis) < 0.0 {
                *r = -&*r;
            }
        }
    }
    PolyhedralCone::from_generators(n, &rays, &lineality)
}

/// Default sampling radius for the Gaussian part of the stream.
pub const SAMPLE_RADIUS: f64 = 4.0;

/// Deterministic sample stream for the pair checkers: structured points first
/// (origin, reference points of both sets, their pairwise sums and
/// differences), then Gaussian points of standard deviation `radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampler {
    pub seed: u64,
    pub radius: f64,
    pub structured: bool,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            seed,
            radius: SAMPLE_RADIUS,
            structured: true,
        }
    }

    pub fn gaussian_only(seed: u64) -> Self {
        Sampler {
            structured: false,
            ..Self::new(seed)
        }
    }

    pub fn rng(&self) -> ConeRng {
        rng_from_seed(self.seed)
    }

    pub fn points<E, F>(&self, e: &E, f: &F, n_samples: usize) -> Vec<Vector>
    where
        E: PointSet + ?Sized,
        F: PointSet + ?Sized,
    {
        let dim = e.ambient_dim();
        let mut out: Vec<Vector> = Vec::with_capacity(n_samples);
        if self.structured {
            let mut refs = e.reference_points();
            refs.extend(f.reference_points());
            let mut structured = vec![Vector::zeros(dim)];
            structured.extend(refs.iter().cloned());
            for (i, a) in refs.iter().enumerate() {
                for b in &refs[i + 1..] {
                    structured.push(a + b);
                    structured.push(a - b);
                }
            }
            // at most half of the budget goes to structured points
            let cap = n_samples.div_ceil(2);
            for p in structured {
                if out.len() >= cap {
                    break;
                }
                if !out.iter().any(|q| q.distance(&p) <= 1e-12) {
                    out.push(p);
                }
            }
        }
        let mut rng = self.rng();
        while out.len() < n_samples {
            out.push(gaussian_vector(&mut rng, dim, self.radius));
        }
        out
    }
}
