//! Seeded random instance generators for tests and benchmarks.
//!
//! Matrices are assembled from real Jordan-type blocks and hidden behind
//! random well-conditioned similarity (or equivalence, for pencils)
//! transforms, so the spectrum is known exactly while the matrices are dense.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{complexify, cond1, Complex64, RealMatrix};
use crate::pencil::{Band, DescriptorPair};
use crate::sysnorm::StateSpace;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Spectral building block of a real pencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Block {
    /// Real finite eigenvalue.
    Real(f64),
    /// Complex conjugate pair `z, z̄` as a 2×2 real rotation-scaling block.
    Pair(Complex64),
    /// Nilpotent Jordan block of the given size: eigenvalue 0, singular `A`.
    JordanZero(usize),
    /// Infinite eigenvalues of the given index: nilpotent `E`, identity `A`.
    Infinite(usize),
}

impl Block {
    pub fn size(&self) -> usize {
        match *self {
            Block::Real(_) => 1,
            Block::Pair(_) => 2,
            Block::JordanZero(k) | Block::Infinite(k) => k,
        }
    }
}

/// Dense matrix with entries uniform in `[-1, 1]`.
pub fn uniform(rng: &mut TestRng, rows: usize, cols: usize) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

/// Random invertible matrix with 1-norm condition at most `max_cond`.
pub fn well_conditioned(rng: &mut TestRng, n: usize, max_cond: f64) -> RealMatrix {
    loop {
        let m = RealMatrix::identity(n, n) + uniform(rng, n, n) * 0.6;
        if cond1(&complexify(&m)) <= max_cond {
            return m;
        }
    }
}

fn block_diagonal(blocks: &[Block]) -> (RealMatrix, RealMatrix) {
    let n: usize = blocks.iter().map(Block::size).sum();
    let mut e = RealMatrix::zeros(n, n);
    let mut a = RealMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        match *b {
            Block::Real(x) => {
                e[(at, at)] = 1.0;
                a[(at, at)] = x;
            }
            Block::Pair(z) => {
                e[(at, at)] = 1.0;
                e[(at + 1, at + 1)] = 1.0;
                a[(at, at)] = z.re;
                a[(at, at + 1)] = z.im;
                a[(at + 1, at)] = -z.im;
                a[(at + 1, at + 1)] = z.re;
            }
            Block::JordanZero(k) => {
                for i in 0..k {
                    e[(at + i, at + i)] = 1.0;
                    if i + 1 < k {
                        a[(at + i, at + i + 1)] = 1.0;
                    }
                }
            }
            Block::Infinite(k) => {
                for i in 0..k {
                    a[(at + i, at + i)] = 1.0;
                    if i + 1 < k {
                        e[(at + i, at + i + 1)] = 1.0;
                    }
                }
            }
        }
        at += b.size();
    }
    (e, a)
}

/// Dense real matrix similar to the block-diagonal matrix described by
/// `blocks` (`Infinite` blocks are not allowed here).
pub fn matrix_from_blocks(rng: &mut TestRng, blocks: &[Block]) -> RealMatrix {
    assert!(
        blocks.iter().all(|b| !matches!(b, Block::Infinite(_))),
        "standard matrices have no infinite eigenvalues"
    );
    let (_, a) = block_diagonal(blocks);
    let n = a.nrows();
    let v = well_conditioned(rng, n, 50.0);
    let vinv = v.clone().try_inverse().expect("well-conditioned");
    v * a * vinv
}

/// Dense real pencil strictly equivalent to the block-diagonal pencil.
pub fn pencil_from_blocks(rng: &mut TestRng, blocks: &[Block]) -> DescriptorPair {
    let (e, a) = block_diagonal(blocks);
    let n = a.nrows();
    let s = well_conditioned(rng, n, 30.0);
    let t = well_conditioned(rng, n, 30.0);
    DescriptorPair::new(&s * e * &t, &s * a * &t).expect("square blocks")
}

/// Random eigenvalue with modulus in `[rmin, rmax]`.
pub fn eigen_in_annulus(rng: &mut TestRng, rmin: f64, rmax: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(rmin..=rmax), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

/// Blocks for `n` states drawn from `pick` (which returns a candidate
/// eigenvalue); complex candidates become conjugate pairs.
pub fn blocks_from<F>(rng: &mut TestRng, n: usize, mut pick: F) -> Vec<Block>
where
    F: FnMut(&mut TestRng) -> Complex64,
{
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let z = pick(rng);
        if left >= 2 && rng.gen_bool(0.5) && z.im.abs() > 1e-3 {
            blocks.push(Block::Pair(z));
            left -= 2;
        } else {
            let sign = if z.re < 0.0 { -1.0 } else { 1.0 };
            blocks.push(Block::Real(sign * z.norm()));
            left -= 1;
        }
    }
    blocks
}

/// Schur-stable `n × n` matrix with spectral radius at most `max_radius`.
pub fn random_schur_matrix(rng: &mut TestRng, n: usize, max_radius: f64) -> RealMatrix {
    let blocks = blocks_from(rng, n, |r| eigen_in_annulus(r, 0.0, max_radius));
    matrix_from_blocks(rng, &blocks)
}

/// Stable strictly proper system (`D = 0`).
pub fn random_stable_system(rng: &mut TestRng, n: usize, m: usize, p: usize, max_radius: f64) -> StateSpace {
    let a = random_schur_matrix(rng, n, max_radius);
    let b = uniform(rng, n, m);
    let c = uniform(rng, p, n);
    StateSpace::strictly_proper(a, b, c).expect("consistent shapes")
}

/// Strictly proper system with poles both inside and outside the unit
/// circle whose clearance from `band` and its mirror image is at least
/// `min_clearance`.
pub fn random_mixed_system(
    rng: &mut TestRng,
    n: usize,
    m: usize,
    p: usize,
    band: Band,
    min_clearance: f64,
) -> StateSpace {
    let mirrored = Band::new(-band.theta2, -band.theta1).expect("mirror of a band is a band");
    loop {
        let mut inside = false;
        let mut outside = false;
        let blocks = blocks_from(rng, n, |r| {
            if r.gen_bool(0.5) {
                eigen_in_annulus(r, 0.1, 0.97)
            } else {
                eigen_in_annulus(r, 1.03, 3.0)
            }
        });
        for b in &blocks {
            let modulus = match *b {
                Block::Real(x) => x.abs(),
                Block::Pair(z) => z.norm(),
                _ => 0.0,
            };
            inside |= modulus < 1.0;
            outside |= modulus > 1.0;
        }
        if n >= 2 && !(inside && outside) {
            continue;
        }
        let a = matrix_from_blocks(rng, &blocks);
        let pair = DescriptorPair::standard(a.clone()).expect("square");
        let clearance = pair
            .arc_clearance(&band)
            .and_then(|c1| pair.arc_clearance(&mirrored).map(|c2| c1.min(c2)));
        match clearance {
            Ok(c) if c >= min_clearance => {
                let b = uniform(rng, n, m);
                let c = uniform(rng, p, n);
                return StateSpace::strictly_proper(a, b, c).expect("consistent shapes");
            }
            _ => continue,
        }
    }
}

/// Band with `−π < θ1 < θ2 < π` and width at least `min_width`.
pub fn random_interior_band(rng: &mut TestRng, min_width: f64) -> Band {
    use std::f64::consts::PI;
    loop {
        let a = rng.gen_range(-PI * 0.999..PI * 0.999);
        let b = rng.gen_range(-PI * 0.999..PI * 0.999);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi - lo >= min_width {
            return Band::new(lo, hi).expect("ordered");
        }
    }
}
