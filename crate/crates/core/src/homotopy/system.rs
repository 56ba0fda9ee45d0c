use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::polyring::{eval_complex_with_scale, Poly};

/// A square polynomial system: as many equations as unknowns, every
/// equation nonzero.
#[derive(Clone, Debug)]
pub struct SquareSystem {
    polys: Vec<Poly>,
    variables: Vec<String>,
}

impl SquareSystem {
    pub fn new(polys: Vec<Poly>, variables: Vec<String>) -> Result<Self> {
        if polys.len() != variables.len() {
            return Err(Error::NotSquare { equations: polys.len(), unknowns: variables.len() });
        }
        for (i, p) in polys.iter().enumerate() {
            if p.is_zero() {
                return Err(Error::InvalidInput(format!("equation {i} is the zero polynomial")));
            }
            if p.variables() != variables.as_slice() {
                return Err(Error::InvalidInput(format!(
                    "equation {i} is over {:?}, expected {:?}",
                    p.variables(),
                    variables
                )));
            }
        }
        Ok(SquareSystem { polys, variables })
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn size(&self) -> usize {
        self.polys.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(Poly::total_degree).collect()
    }

    /// Relative backward error `max_i |f_i(x)| / sum_t |c_t x^a_t|`,
    /// evaluated with compensated arithmetic.
    pub fn relative_residual(&self, x: &[Complex64]) -> f64 {
        self.values_and_scales(x)
            .into_iter()
            .map(|(v, scale)| if scale == 0.0 { 0.0 } else { v / scale })
            .fold(0.0, f64::max)
    }

    /// `(|f_i(x)|, sum_t |c_t x^a_t|)` for every equation.
    pub fn values_and_scales(&self, x: &[Complex64]) -> Vec<(f64, f64)> {
        self.polys
            .iter()
            .map(|p| {
                let (v, scale) = eval_complex_with_scale(p, x).expect("point length checked by caller");
                (v.norm(), scale)
            })
            .collect()
    }

    pub fn compile(&self) -> CompiledSystem {
        CompiledSystem::new(&self.polys, self.size())
    }
}

/// Product of the total degrees of the equations.
pub fn bezout_bound(system: &SquareSystem) -> u128 {
    system.degrees().iter().map(|&d| d as u128).product()
}

/// Something that can be evaluated together with its Jacobian at a complex
/// point. Implementations must be pure so paths can be tracked in parallel.
pub trait Evaluate: Sync {
    fn dim(&self) -> usize;
    fn eval_into(&self, x: &[Complex64], f: &mut [Complex64], jac: Option<&mut DMatrix<Complex64>>);
}

#[derive(Clone, Debug)]
struct Term {
    coef: Complex64,
    /// Range into `CompiledSystem::factors`.
    start: u32,
    len: u32,
}

/// Floating-point image of a polynomial system, laid out for fast
/// evaluation of values and Jacobians.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    nvars: usize,
    eq_ranges: Vec<(usize, usize)>,
    terms: Vec<Term>,
    /// (flat power-table index of `x_v^e`, exponent `e`) for `e >= 1`; the
    /// variable is recovered through `var_of`.
    factors: Vec<(u32, u32)>,
    max_exp: Vec<u32>,
    /// Offset of `x_v^0` in the flat power table.
    pow_offset: Vec<usize>,
    pow_len: usize,
}

impl CompiledSystem {
    pub fn new(polys: &[Poly], nvars: usize) -> Self {
        let mut eq_ranges = Vec::with_capacity(polys.len());
        let mut terms = Vec::new();
        let mut factors = Vec::new();
        let mut max_exp = vec![0u32; nvars];
        for p in polys {
            let begin = terms.len();
            for (m, c) in p.terms() {
                let start = factors.len() as u32;
                for (v, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        factors.push((v as u32, e));
                        max_exp[v] = max_exp[v].max(e);
                    }
                }
                terms.push(Term {
                    coef: Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0),
                    start,
                    len: factors.len() as u32 - start,
                });
            }
            eq_ranges.push((begin, terms.len()));
        }
        let mut pow_offset = Vec::with_capacity(nvars);
        let mut pow_len = 0;
        for &m in &max_exp {
            pow_offset.push(pow_len);
            pow_len += m as usize + 1;
        }
        for t in &terms {
            for f in &mut factors[t.start as usize..(t.start + t.len) as usize] {
                // store the flat index of x_v^e in place of the variable id
                f.0 = (pow_offset[f.0 as usize] + f.1 as usize) as u32;
            }
        }
        CompiledSystem { nvars, eq_ranges, terms, factors, max_exp, pow_offset, pow_len }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn neqs(&self) -> usize {
        self.eq_ranges.len()
    }

    fn powers(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut pw = Vec::with_capacity(self.pow_len);
        for (&xi, &m) in x.iter().zip(&self.max_exp) {
            let mut acc = Complex64::new(1.0, 0.0);
            pw.push(acc);
            for _ in 0..m {
                acc *= xi;
                pw.push(acc);
            }
        }
        pw
    }

    fn var_of(&self, flat: u32, e: u32) -> usize {
        let base = flat as usize - e as usize;
        self.pow_offset.partition_point(|&o| o <= base) - 1
    }
}

impl Evaluate for CompiledSystem {
    fn dim(&self) -> usize {
        self.nvars
    }

    fn eval_into(&self, x: &[Complex64], f: &mut [Complex64], mut jac: Option<&mut DMatrix<Complex64>>) {
        let pw = self.powers(x);
        let zero = Complex64::new(0.0, 0.0);
        if let Some(j) = jac.as_deref_mut() {
            j.fill(zero);
        }
        let mut prefix: Vec<Complex64> = Vec::with_capacity(16);
        for (row, &(b, e)) in self.eq_ranges.iter().enumerate() {
            let mut val = zero;
            for term in &self.terms[b..e] {
                let fs = &self.factors[term.start as usize..(term.start + term.len) as usize];
                // prefix[k] = product of the first k factors
                prefix.clear();
                let mut acc = Complex64::new(1.0, 0.0);
                for &(k, _) in fs {
                    prefix.push(acc);
                    acc *= pw[k as usize];
                }
                val += term.coef * acc;
                if let Some(j) = jac.as_deref_mut() {
                    let mut suffix = term.coef;
                    for (i, &(k, ex)) in fs.iter().enumerate().rev() {
                        let d = pw[k as usize - 1] * (ex as f64);
                        j[(row, self.var_of(k, ex))] += prefix[i] * d * suffix;
                        suffix *= pw[k as usize];
                    }
                }
            }
            f[row] = val;
        }
    }
}
