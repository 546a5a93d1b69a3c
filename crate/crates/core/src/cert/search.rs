//! Branch-and-bound lower bounds for `F(z) = Σ |f_i(z)|²` over unions of
//! polar product regions, and local minimization for witnesses.
//!
//! A cell fixes, per variable, a modulus interval `[ρ0, ρ1]` and an angle
//! interval `[θ0, θ1]`. Every point of the cell lies within
//! `rad_j = (ρ1 − ρ0)/2 + ρ1 (θ1 − θ0)/2` of the center in coordinate `j`, and
//! the segment to the center stays in the polydisc of radii `ρ1`. With
//! `D_ij` the coefficient bound of `|∂_j f_i|` on that polydisc,
//! `|f_i(z)| ≥ |f_i(center)| − Σ_j D_ij rad_j`, which gives a lower bound on `F`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::poly::FloatPoly;

/// Polynomial flattened for repeated evaluation.
#[derive(Debug, Clone)]
pub(crate) struct CompiledPoly {
    nvars: usize,
    terms: Vec<([u32; 3], Complex64, f64)>,
}

impl CompiledPoly {
    pub fn new(p: &FloatPoly) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut e = [0u32; 3];
                e[..m.0.len()].copy_from_slice(&m.0);
                (e, *c, c.norm())
            })
            .collect();
        Self {
            nvars: p.nvars(),
            terms,
        }
    }

    /// Exponents and coefficients of the terms.
    pub fn term_list(&self) -> impl Iterator<Item = ([u32; 3], Complex64)> + '_ {
        self.terms.iter().map(|(e, c, _)| (*e, *c))
    }

    /// `Σ |c|` over all coefficients.
    pub fn coefficient_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.2).sum()
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c, _) in &self.terms {
            let mut t = *c;
            for v in 0..self.nvars {
                if e[v] > 0 {
                    t *= z[v].powu(e[v]);
                }
            }
            acc += t;
        }
        acc
    }

    /// `∂f/∂z_j` at `z`.
    pub fn partial(&self, z: &[Complex64], j: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c, _) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut t = *c * e[j] as f64;
            for v in 0..self.nvars {
                let k = if v == j { e[v] - 1 } else { e[v] };
                if k > 0 {
                    t *= z[v].powu(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Bound on `sup |∂f/∂z_j|` over the polydisc of radii `rho`.
    pub fn partial_sup(&self, rho: &[f64], j: usize) -> f64 {
        let mut acc = 0.0;
        for (e, _, a) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut t = a * e[j] as f64;
            for v in 0..self.nvars {
                let k = if v == j { e[v] - 1 } else { e[v] };
                if k > 0 {
                    t *= rho[v].powi(k as i32);
                }
            }
            acc += t;
        }
        acc
    }
}

pub(crate) fn objective(symbols: &[CompiledPoly], z: &[Complex64]) -> f64 {
    symbols.iter().map(|f| f.eval(z).norm_sqr()).sum()
}

/// Per-variable modulus range of a region; angles always cover the full circle.
pub(crate) type Face = Vec<(f64, f64)>;

#[derive(Debug, Clone, Copy)]
struct Cell {
    rho: [(f64, f64); 3],
    theta: [(f64, f64); 3],
    /// Halvings so far, per variable and per axis (0 radial, 1 angular).
    depth: [[u8; 2]; 3],
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SearchConfig {
    pub base_mesh: f64,
    pub max_halvings: u8,
    pub budget: usize,
    /// Cells are refined until their bound reaches this fraction of the
    /// smallest sampled value (or the halving limit).
    pub tightness: f64,
    /// Objective value below which a polished point counts as a zero.
    pub vanishing: f64,
    /// Polishing iterations per unresolved cell.
    pub polish_iterations: usize,
    /// Search stops after this many unresolved cells.
    pub max_unresolved: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome {
    /// Smallest accepted cell bound (`+∞` if no cell was accepted).
    pub lower_bound: f64,
    pub min_sample: f64,
    pub min_point: Vec<Complex64>,
    /// Centers of cells whose bound stayed non-positive at the halving limit,
    /// lowest objective first.
    pub unresolved: Vec<(f64, Vec<Complex64>)>,
    pub evaluations: usize,
    pub budget_exhausted: bool,
    /// Largest cell radius among accepted cells.
    pub mesh: f64,
    /// Polished point with objective below `vanishing`; ends the search.
    pub witness: Option<(Vec<Complex64>, f64)>,
}

/// Number of base cells for the faces at the given mesh.
pub(crate) fn base_cell_count(faces: &[Face], mesh: f64) -> usize {
    faces
        .iter()
        .map(|f| {
            f.iter()
                .map(|&(a, b)| splits(b - a, mesh) * splits(TAU * b, mesh))
                .product::<usize>()
        })
        .sum()
}

fn splits(len: f64, mesh: f64) -> usize {
    ((len / mesh).ceil() as usize).max(1)
}

fn center(cell: &Cell, nvars: usize) -> Vec<Complex64> {
    (0..nvars)
        .map(|v| {
            let r = 0.5 * (cell.rho[v].0 + cell.rho[v].1);
            let t = 0.5 * (cell.theta[v].0 + cell.theta[v].1);
            Complex64::from_polar(r, t)
        })
        .collect()
}

fn base_cells<'a>(face: &'a Face, nvars: usize, mesh: f64) -> impl Iterator<Item = Cell> + 'a {
    let counts: Vec<(usize, usize)> = face
        .iter()
        .map(|&(a, b)| (splits(b - a, mesh), splits(TAU * b, mesh)))
        .collect();
    let total: usize = counts.iter().map(|(a, b)| a * b).product();
    (0..total).map(move |flat| {
        let mut cell = Cell {
            rho: [(0.0, 0.0); 3],
            theta: [(0.0, 0.0); 3],
            depth: [[0; 2]; 3],
        };
        let mut idx = flat;
        for v in (0..nvars).rev() {
            let (nr, nt) = counts[v];
            let it = idx % nt;
            idx /= nt;
            let ir = idx % nr;
            idx /= nr;
            let (a, b) = face[v];
            let hr = (b - a) / nr as f64;
            let ht = TAU / nt as f64;
            cell.rho[v] = (a + ir as f64 * hr, a + (ir + 1) as f64 * hr);
            cell.theta[v] = (it as f64 * ht, (it + 1) as f64 * ht);
        }
        cell
    })
}

pub(crate) fn search(symbols: &[CompiledPoly], nvars: usize, faces: &[Face], cfg: &SearchConfig) -> SearchOutcome {
    let mut out = SearchOutcome {
        lower_bound: f64::INFINITY,
        min_sample: f64::INFINITY,
        min_point: vec![Complex64::new(0.0, 0.0); nvars],
        unresolved: Vec::new(),
        evaluations: 0,
        budget_exhausted: false,
        mesh: 0.0,
        witness: None,
    };
    // coarse pass: the smallest center value sets the refinement target
    for face in faces {
        for cell in base_cells(face, nvars, cfg.base_mesh) {
            let zc = center(&cell, nvars);
            let v = objective(symbols, &zc);
            out.evaluations += 1;
            if v < out.min_sample {
                out.min_sample = v;
                out.min_point = zc;
            }
        }
    }
    let mut stack: Vec<Cell> = Vec::new();
    'faces: for face in faces {
        for cell in base_cells(face, nvars, cfg.base_mesh) {
            stack.push(cell);
            while let Some(cell) = stack.pop() {
                if out.evaluations >= cfg.budget {
                    out.budget_exhausted = true;
                    break 'faces;
                }
                process(symbols, nvars, face, cell, cfg, &mut out, &mut stack);
                if out.witness.is_some() || out.unresolved.len() >= cfg.max_unresolved {
                    break 'faces;
                }
            }
        }
    }
    out.unresolved.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn process(
    symbols: &[CompiledPoly],
    nvars: usize,
    face: &Face,
    cell: Cell,
    cfg: &SearchConfig,
    out: &mut SearchOutcome,
    stack: &mut Vec<Cell>,
) {
    out.evaluations += 1;
    let zc = center(&cell, nvars);
    let outer: Vec<f64> = (0..nvars).map(|v| cell.rho[v].1).collect();
    let mut radial = [0.0; 3];
    let mut angular = [0.0; 3];
    for v in 0..nvars {
        radial[v] = 0.5 * (cell.rho[v].1 - cell.rho[v].0);
        angular[v] = 0.5 * cell.rho[v].1 * (cell.theta[v].1 - cell.theta[v].0);
    }
    let mut value = 0.0;
    let mut lb = 0.0;
    // weighted contributions per (variable, axis), used to choose the split
    let mut weight = [[0.0; 2]; 3];
    for f in symbols {
        let fz = f.eval(&zc).norm();
        value += fz * fz;
        let mut delta = 0.0;
        for v in 0..nvars {
            let d = f.partial_sup(&outer, v);
            delta += d * (radial[v] + angular[v]);
            weight[v][0] += d * radial[v];
            weight[v][1] += d * angular[v];
        }
        let low = (fz - delta).max(0.0);
        lb += low * low;
    }
    if value < out.min_sample {
        out.min_sample = value;
        out.min_point = zc.clone();
    }
    let cell_radius = (0..nvars)
        .map(|v| radial[v] + angular[v])
        .fold(0.0, f64::max);
    let splittable = |v: usize, a: usize| cell.depth[v][a] < cfg.max_halvings && weight[v][a] > 0.0;
    if lb > 0.0 && lb >= cfg.tightness * out.min_sample {
        accept(out, lb, cell_radius);
        return;
    }
    let mut best: Option<(usize, usize)> = None;
    for v in 0..nvars {
        for a in 0..2 {
            if splittable(v, a) && best.is_none_or(|(bv, ba)| weight[v][a] > weight[bv][ba]) {
                best = Some((v, a));
            }
        }
    }
    match best {
        Some((v, a)) => {
            let mut lo = cell;
            let mut hi = cell;
            lo.depth[v][a] += 1;
            hi.depth[v][a] += 1;
            if a == 0 {
                let mid = 0.5 * (cell.rho[v].0 + cell.rho[v].1);
                lo.rho[v].1 = mid;
                hi.rho[v].0 = mid;
            } else {
                let mid = 0.5 * (cell.theta[v].0 + cell.theta[v].1);
                lo.theta[v].1 = mid;
                hi.theta[v].0 = mid;
            }
            stack.push(hi);
            stack.push(lo);
        }
        None if lb > 0.0 => accept(out, lb, cell_radius),
        None => {
            let (pt, v) = polish(symbols, &zc, face, cfg.polish_iterations);
            if v < cfg.vanishing {
                out.witness = Some((pt, v));
            } else {
                out.unresolved.push((value, zc));
            }
        }
    }
}

fn accept(out: &mut SearchOutcome, lb: f64, radius: f64) {
    out.lower_bound = out.lower_bound.min(lb);
    out.mesh = out.mesh.max(radius);
}

/// Projects `z` onto the face: `|z_v| ∈ [a_v, b_v]`.
fn project(z: &mut [Complex64], face: &Face) {
    for (zv, &(a, b)) in z.iter_mut().zip(face) {
        let r = zv.norm();
        if r > b {
            *zv *= b / r;
        } else if r < a {
            *zv = if r > 0.0 {
                *zv * (a / r)
            } else {
                Complex64::new(a, 0.0)
            };
        }
    }
}

/// Projected descent on `F` with Polyak steps (target value 0) and
/// backtracking, restricted to `face`. Returns the best point and value.
pub(crate) fn polish(symbols: &[CompiledPoly], start: &[Complex64], face: &Face, iterations: usize) -> (Vec<Complex64>, f64) {
    let nvars = start.len();
    let mut z = start.to_vec();
    project(&mut z, face);
    let mut fz = objective(symbols, &z);
    for _ in 0..iterations {
        if fz == 0.0 {
            break;
        }
        // G_j = ∂F/∂z̄_j = Σ_i f_i conj(∂_j f_i); real gradient is 2 G
        let fvals: Vec<Complex64> = symbols.iter().map(|f| f.eval(&z)).collect();
        let g: Vec<Complex64> = (0..nvars)
            .map(|j| {
                symbols
                    .iter()
                    .zip(&fvals)
                    .map(|(f, fv)| fv * f.partial(&z, j).conj())
                    .sum()
            })
            .collect();
        let gnorm2: f64 = g.iter().map(|x| 4.0 * x.norm_sqr()).sum();
        if gnorm2 == 0.0 {
            break;
        }
        let mut step = fz / gnorm2;
        let mut improved = false;
        for _ in 0..30 {
            let mut trial: Vec<Complex64> = z.iter().zip(&g).map(|(zv, gv)| zv - gv * (2.0 * step)).collect();
            project(&mut trial, face);
            let ft = objective(symbols, &trial);
            if ft < fz {
                z = trial;
                fz = ft;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (z, fz)
}
