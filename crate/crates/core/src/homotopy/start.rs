use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::system::{Evaluate, SquareSystem};
use crate::error::{Error, Result};
use crate::polyring::{Poly, RandomSource};

/// Start system `x_i^{d_i} - c_i` for the total-degree homotopy, with `c_i`
/// random positive rationals in `[1/4, 4]`, and its `prod d_i` solutions.
pub fn total_degree_start(system: &SquareSystem, rng: RandomSource) -> (SquareSystem, Vec<Vec<Complex64>>) {
    let mut d = rng.draws();
    let constants: Vec<BigRational> = (0..system.size())
        .map(|_| BigRational::new(d.int_in(1000, 4000).into(), d.int_in(1000, 4000).into()))
        .collect();
    total_degree_start_with(system, &constants)
}

/// [`total_degree_start`] with caller-chosen nonzero constants `c_i`.
pub fn total_degree_start_with(
    system: &SquareSystem,
    constants: &[BigRational],
) -> (SquareSystem, Vec<Vec<Complex64>>) {
    let vars = system.variables();
    let degrees = system.degrees();
    let polys = degrees
        .iter()
        .zip(constants)
        .enumerate()
        .map(|(i, (&deg, c))| Poly::var_at(vars, i).pow(deg) - Poly::constant(vars, c.clone()))
        .collect();
    let start = SquareSystem::new(polys, vars.to_vec()).expect("start system is square");

    // roots of x^d = c: |c|^(1/d) times d-th roots of unity (times a square
    // root of -1 when c < 0)
    let roots: Vec<Vec<Complex64>> = degrees
        .iter()
        .zip(constants)
        .map(|(&deg, c)| {
            let c = c.to_f64().unwrap_or(1.0);
            let r = Complex64::new(c, 0.0).powf(1.0 / deg as f64);
            (0..deg)
                .map(|k| r * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / deg as f64))
                .collect()
        })
        .collect();
    let total: usize = roots.iter().map(Vec::len).product();
    let mut points = Vec::with_capacity(total);
    let mut idx = vec![0usize; roots.len()];
    if roots.iter().all(|r| !r.is_empty()) {
        loop {
            points.push(idx.iter().zip(&roots).map(|(&k, r)| r[k]).collect());
            // odometer with the last coordinate fastest
            let mut pos = roots.len();
            loop {
                if pos == 0 {
                    return (start, points);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < roots[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    (start, points)
}

/// One affine factor `a0 + sum a_j z_j`, restricted to the variables of a
/// single group.
#[derive(Clone, Debug)]
struct Factor {
    group: usize,
    constant: Complex64,
    coeffs: Vec<Complex64>,
}

/// Linear-product start system adapted to a partition of the unknowns into
/// groups: equation `e` is a product of `deg_g(e)` random affine forms in
/// the variables of each group `g`, where `deg_g(e)` is the degree of the
/// target equation in that group. Its solution count is the
/// multihomogeneous Bézout number of the target.
#[derive(Clone, Debug)]
pub struct LinearProductStart {
    nvars: usize,
    /// `members[g]` lists the variable indices of group `g`.
    members: Vec<Vec<usize>>,
    equations: Vec<Vec<Factor>>,
}

impl LinearProductStart {
    pub fn path_count(&self) -> u128 {
        let degs = self.group_degrees();
        count_assignments(&degs, &self.members.iter().map(Vec::len).collect::<Vec<_>>())
    }

    fn group_degrees(&self) -> Vec<Vec<usize>> {
        self.equations
            .iter()
            .map(|fs| {
                let mut d = vec![0; self.members.len()];
                for f in fs {
                    d[f.group] += 1;
                }
                d
            })
            .collect()
    }

    fn factor_value(&self, f: &Factor, x: &[Complex64]) -> Complex64 {
        self.members[f.group]
            .iter()
            .zip(&f.coeffs)
            .fold(f.constant, |acc, (&v, &a)| acc + a * x[v])
    }
}

impl Evaluate for LinearProductStart {
    fn dim(&self) -> usize {
        self.nvars
    }

    fn eval_into(&self, x: &[Complex64], out: &mut [Complex64], mut jac: Option<&mut DMatrix<Complex64>>) {
        let one = Complex64::new(1.0, 0.0);
        if let Some(j) = jac.as_deref_mut() {
            j.fill(Complex64::default());
        }
        let mut vals = Vec::new();
        for (row, fs) in self.equations.iter().enumerate() {
            vals.clear();
            vals.extend(fs.iter().map(|f| self.factor_value(f, x)));
            out[row] = vals.iter().product();
            if let Some(j) = jac.as_deref_mut() {
                for (k, f) in fs.iter().enumerate() {
                    let others: Complex64 = vals
                        .iter()
                        .enumerate()
                        .filter(|&(l, _)| l != k)
                        .fold(one, |acc, (_, &v)| acc * v);
                    for (&v, &a) in self.members[f.group].iter().zip(&f.coeffs) {
                        j[(row, v)] += a * others;
                    }
                }
            }
        }
    }
}

/// Number of ways to pick, for every equation, one group `g` with
/// `degs[e][g] > 0` (and one of its `degs[e][g]` factors) so that group `g`
/// is picked exactly `sizes[g]` times.
fn count_assignments(degs: &[Vec<usize>], sizes: &[usize]) -> u128 {
    fn rec(e: usize, degs: &[Vec<usize>], left: &mut [usize]) -> u128 {
        if e == degs.len() {
            return left.iter().all(|&l| l == 0) as u128;
        }
        let mut total = 0;
        for g in 0..left.len() {
            if degs[e][g] > 0 && left[g] > 0 {
                left[g] -= 1;
                total += degs[e][g] as u128 * rec(e + 1, degs, left);
                left[g] += 1;
            }
        }
        total
    }
    rec(0, degs, &mut sizes.to_vec())
}

/// Builds the linear-product start system for `system` with respect to the
/// variable partition `groups` (`groups[v]` is the group of variable `v`)
/// and returns it with all of its solutions, each found by solving one
/// linear system per group.
pub fn linear_product_start(
    system: &SquareSystem,
    groups: &[usize],
    rng: RandomSource,
) -> Result<(LinearProductStart, Vec<Vec<Complex64>>)> {
    let n = system.size();
    if groups.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: groups.len() });
    }
    let ngroups = groups.iter().max().map_or(0, |&g| g + 1);
    let members: Vec<Vec<usize>> = (0..ngroups)
        .map(|g| (0..n).filter(|&v| groups[v] == g).collect())
        .collect();
    let degs: Vec<Vec<usize>> = system
        .polys()
        .iter()
        .map(|p| {
            (0..ngroups)
                .map(|g| {
                    let mask: Vec<bool> = groups.iter().map(|&h| h == g).collect();
                    p.degree_in(&mask) as usize
                })
                .collect()
        })
        .collect();

    let mut d = rng.draws();
    let equations: Vec<Vec<Factor>> = degs
        .iter()
        .map(|de| {
            de.iter()
                .enumerate()
                .flat_map(|(g, &k)| std::iter::repeat_n(g, k))
                .map(|g| Factor {
                    group: g,
                    constant: d.complex(),
                    coeffs: (0..members[g].len()).map(|_| d.complex()).collect(),
                })
                .collect()
        })
        .collect();
    let start = LinearProductStart { nvars: n, members, equations };

    let mut points = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut left: Vec<usize> = start.members.iter().map(Vec::len).collect();
    enumerate(&start, 0, &mut left, &mut chosen, &mut points);
    Ok((start, points))
}

fn enumerate(
    start: &LinearProductStart,
    e: usize,
    left: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<Complex64>>,
) {
    if e == start.equations.len() {
        if let Some(x) = solve_choice(start, chosen) {
            out.push(x);
        }
        return;
    }
    let fs = &start.equations[e];
    for g in 0..left.len() {
        if left[g] == 0 {
            continue;
        }
        let picks: Vec<usize> = (0..fs.len()).filter(|&k| fs[k].group == g).collect();
        if picks.is_empty() {
            continue;
        }
        left[g] -= 1;
        for k in picks {
            chosen.push((e, k));
            enumerate(start, e + 1, left, chosen, out);
            chosen.pop();
        }
        left[g] += 1;
    }
}

fn solve_choice(start: &LinearProductStart, chosen: &[(usize, usize)]) -> Option<Vec<Complex64>> {
    let mut x = vec![Complex64::default(); start.nvars];
    for (g, vars) in start.members.iter().enumerate() {
        let rows: Vec<&Factor> = chosen
            .iter()
            .map(|&(e, k)| &start.equations[e][k])
            .filter(|f| f.group == g)
            .collect();
        let m = vars.len();
        let a = DMatrix::from_fn(m, m, |r, c| rows[r].coeffs[c]);
        let b = DVector::from_fn(m, |r, _| -rows[r].constant);
        let sol = a.lu().solve(&b)?;
        for (&v, z) in vars.iter().zip(sol.iter()) {
            x[v] = *z;
        }
    }
    Some(x)
}
