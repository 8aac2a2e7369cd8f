//! Min-entropy density of permutation-tuple distributions: how far the worst
//! coordinate set falls short of the nice-randomness chain entropy.

use super::dist::{rational_to_f64, Coord, PermDistribution};

/// Numerical slack for entropy comparisons; a violation must clear the
/// threshold strictly so exact-uniform boundary cases never trigger.
pub const ENTROPY_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// The worst coordinate set found in one direction.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub direction: Direction,
    pub delta: f64,
    /// Witness coordinate set and its most likely value pattern, when some
    /// set has positive defect.
    pub witness: Option<DensityWitness>,
}

#[derive(Clone, Debug)]
pub struct DensityWitness {
    pub coords: Vec<Coord>,
    pub values: Vec<usize>,
    pub min_entropy: f64,
    pub chain_entropy: f64,
}

fn free_coords(dist: &PermDistribution, fixed: &[(Coord, usize)]) -> Vec<Coord> {
    let mut out = Vec::new();
    for (c, &n) in dist.sizes().iter().enumerate() {
        for x in 0..n {
            if !fixed.iter().any(|&((fc, fx), _)| fc == c && fx == x) {
                out.push((c, x));
            }
        }
    }
    out
}

fn subsets(coords: &[Coord]) -> impl Iterator<Item = Vec<Coord>> + '_ {
    let k = coords.len();
    assert!(k <= 20, "subset scan is exponential; keep coordinate sets small");
    (1usize..1 << k).map(move |mask| {
        (0..k).filter(|i| mask >> i & 1 == 1).map(|i| coords[i]).collect()
    })
}

/// Max-defect density scan. `fixed` is the conditioning set I (in the
/// forward orientation of `dist`); for the inverse direction the
/// distribution and fixings are inverted first and the scan runs forward.
pub fn density_report(
    dist: &PermDistribution,
    direction: Direction,
    fixed: &[(Coord, usize)],
) -> DensityReport {
    let (d, fx);
    let (dist, fixed) = match direction {
        Direction::Forward => (dist, fixed),
        Direction::Inverse => {
            d = dist.invert();
            fx = invert_fixings(fixed);
            (&d, fx.as_slice())
        }
    };
    let free = free_coords(dist, fixed);
    let mut delta = 0.0f64;
    let mut witness = None;
    for coords in subsets(&free) {
        let h = dist.chain_entropy(&fixed_coords(fixed), &coords);
        if h <= ENTROPY_SLACK {
            continue;
        }
        let (pmax, values) = dist.max_marginal_prob(&coords);
        let hmin = -rational_to_f64(&pmax).log2();
        let defect = 1.0 - hmin / h;
        if defect > delta {
            delta = defect;
            witness = Some(DensityWitness {
                coords,
                values,
                min_entropy: hmin,
                chain_entropy: h,
            });
        }
    }
    DensityReport { direction, delta, witness }
}

/// First strict violation of `(1 - delta)`-scaled chain entropy, if any, in
/// a deterministic scan order (small sets first, then lexicographic). Used
/// by the decomposition loop.
pub fn find_violation(
    dist: &PermDistribution,
    direction: Direction,
    fixed: &[(Coord, usize)],
    delta: f64,
) -> Option<Vec<(Coord, usize)>> {
    let (d, fx);
    let (sdist, sfixed) = match direction {
        Direction::Forward => (dist, fixed),
        Direction::Inverse => {
            d = dist.invert();
            fx = invert_fixings(fixed);
            (&d, fx.as_slice())
        }
    };
    let free = free_coords(sdist, sfixed);
    let mut candidates: Vec<Vec<Coord>> = subsets(&free).collect();
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for coords in candidates {
        let h = sdist.chain_entropy(&fixed_coords(sfixed), &coords);
        if h <= ENTROPY_SLACK {
            continue;
        }
        let (pmax, values) = sdist.max_marginal_prob(&coords);
        if rational_to_f64(&pmax).log2() > -(1.0 - delta) * h + ENTROPY_SLACK {
            let fixings: Vec<(Coord, usize)> =
                coords.into_iter().zip(values).collect();
            return Some(match direction {
                Direction::Forward => fixings,
                // Translate an inverse-side fixing P^{-1}(y) = x into the
                // forward fixing P(x) = y.
                Direction::Inverse => invert_fixings(&fixings),
            });
        }
    }
    None
}

pub fn invert_fixings(fixings: &[(Coord, usize)]) -> Vec<(Coord, usize)> {
    fixings.iter().map(|&((c, x), v)| ((c, v), x)).collect()
}

fn fixed_coords(fixed: &[(Coord, usize)]) -> Vec<Coord> {
    fixed.iter().map(|&(c, _)| c).collect()
}

/// Overall density defect: the larger of the two directional scans.
pub fn delta_both(dist: &PermDistribution, fixed: &[(Coord, usize)]) -> f64 {
    density_report(dist, Direction::Forward, fixed)
        .delta
        .max(density_report(dist, Direction::Inverse, fixed).delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermTuple, Permutation};

    #[test]
    fn uniform_is_exactly_dense() {
        let d = PermDistribution::uniform(&[4]).unwrap();
        let rep = density_report(&d, Direction::Forward, &[]);
        assert!(rep.delta.abs() < 1e-9, "delta = {}", rep.delta);
        let rep_inv = density_report(&d, Direction::Inverse, &[]);
        assert!(rep_inv.delta.abs() < 1e-9);
        assert!(find_violation(&d, Direction::Forward, &[], 0.0).is_none());
    }

    #[test]
    fn point_mass_has_full_defect() {
        let d = PermDistribution::uniform_over(vec![PermTuple {
            components: vec![Permutation::identity(3)],
        }])
        .unwrap();
        let rep = density_report(&d, Direction::Forward, &[]);
        assert!((rep.delta - 1.0).abs() < 1e-9);
    }

    #[test]
    fn counterexample_is_half_defective_both_ways() {
        // Uniform over permutations of S4 whose inverse sends 0 to an odd
        // position. The defect is 1/2 in both directions: knowing one output
        // halves the options either way.
        let support: Vec<PermTuple> = Permutation::enumerate(4)
            .into_iter()
            .filter(|p| {
                let pre = p.inverse().apply(0);
                pre == 1 || pre == 3
            })
            .map(|p| PermTuple { components: vec![p] })
            .collect();
        assert_eq!(support.len(), 12);
        let d = PermDistribution::uniform_over(support).unwrap();
        let fwd = density_report(&d, Direction::Forward, &[]);
        let inv = density_report(&d, Direction::Inverse, &[]);
        assert!((fwd.delta - 0.5).abs() < 1e-9, "forward {}", fwd.delta);
        assert!((inv.delta - 0.5).abs() < 1e-9, "inverse {}", inv.delta);
    }

    #[test]
    fn inverse_scan_equals_forward_scan_of_inverted() {
        let support: Vec<PermTuple> = Permutation::enumerate(4)
            .into_iter()
            .filter(|p| p.apply(0) != 0)
            .map(|p| PermTuple { components: vec![p] })
            .collect();
        let d = PermDistribution::uniform_over(support).unwrap();
        let a = density_report(&d, Direction::Inverse, &[]);
        let b = density_report(&d.invert(), Direction::Forward, &[]);
        assert!((a.delta - b.delta).abs() < 1e-12);
    }

    #[test]
    fn conditioning_respects_fixed_set() {
        let d = PermDistribution::uniform(&[4]).unwrap();
        let fix = [((0usize, 0usize), 2usize)];
        let (_, cond) = d.condition(&fix);
        let cond = cond.unwrap();
        let rep = density_report(&cond, Direction::Forward, &fix);
        assert!(rep.delta.abs() < 1e-9);
    }
}
