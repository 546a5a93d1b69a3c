//! Sparse multivariate polynomials and symbol tuples.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::scalar::{ArithmeticMode, Coefficient, ExactComplex, FLOAT_PRUNE_RELATIVE};
use crate::error::{Error, Result};

/// Largest supported variable count.
pub const MAX_NVARS: usize = 3;

/// Exponent tuple, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

/// Sparse polynomial in `nvars` complex variables.
///
/// Terms are kept in a `BTreeMap`, so iteration order and serialized forms
/// are canonical. Zero coefficients are never stored; float polynomials also
/// drop coefficients below `FLOAT_PRUNE_RELATIVE` times the largest one.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C: Coefficient> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type ExactPoly = MultiPoly<ExactComplex>;
pub type FloatPoly = MultiPoly<Complex64>;

/// Binary and unary operations accepted by [`poly_arith`].
pub enum PolyOp<'a, C: Coefficient> {
    Add(&'a MultiPoly<C>),
    Mul(&'a MultiPoly<C>),
    PartialDerivative(usize),
}

/// Applies `op` to `p`. Operand variable counts must match.
pub fn poly_arith<C: Coefficient>(p: &MultiPoly<C>, op: PolyOp<'_, C>) -> Result<MultiPoly<C>> {
    match op {
        PolyOp::Add(q) => {
            check_nvars(p, q)?;
            Ok(p.add(q))
        }
        PolyOp::Mul(q) => {
            check_nvars(p, q)?;
            Ok(p.mul(q))
        }
        PolyOp::PartialDerivative(var) => p.derivative(var),
    }
}

/// Evaluates `p` at `z` in floating point.
pub fn poly_eval<C: Coefficient>(p: &MultiPoly<C>, z: &[Complex64]) -> Result<Complex64> {
    p.eval(z)
}

fn check_nvars<C: Coefficient>(p: &MultiPoly<C>, q: &MultiPoly<C>) -> Result<()> {
    if p.nvars != q.nvars {
        return Err(Error::NvarsMismatch(p.nvars, q.nvars));
    }
    Ok(())
}

impl<C: Coefficient> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)]).expect("valid constant")
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The coordinate function `z_index`.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::VariableOutOfRange { index, nvars });
        }
        Self::from_terms(nvars, [(Monomial::var(nvars, index), C::one())])
    }

    /// Builds a polynomial, summing repeated exponents.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Result<Self> {
        if nvars == 0 || nvars > MAX_NVARS {
            return Err(Error::UnsupportedNvars(nvars));
        }
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            match map.get_mut(&m) {
                Some(existing) => *existing = existing.plus(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Ok(Self::normalized(nvars, map))
    }

    /// Univariate polynomial `Σ coeffs[k] z_var^k` embedded in `nvars` variables.
    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[C]) -> Result<Self> {
        if var >= nvars {
            return Err(Error::VariableOutOfRange { index: var, nvars });
        }
        Self::from_terms(
            nvars,
            coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                (Monomial(e), c.clone())
            }),
        )
    }

    fn normalized(nvars: usize, mut terms: BTreeMap<Monomial, C>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if C::MODE == ArithmeticMode::Float && !terms.is_empty() {
            let max = terms.values().map(|c| c.abs()).fold(0.0, f64::max);
            let floor = FLOAT_PRUNE_RELATIVE * max;
            terms.retain(|_, c| c.abs() >= floor);
        }
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mode(&self) -> ArithmeticMode {
        C::MODE
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// Degree in variable `var`; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Largest single-variable exponent appearing in any term (0 for the zero polynomial).
    pub fn max_var_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Variables with a positive exponent in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    pub fn depends_only_on(&self, var: usize) -> bool {
        self.support_vars().iter().all(|&v| v == var)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(existing) => *existing = existing.plus(c),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Self::normalized(self.nvars, terms)
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.times(cb);
                match terms.get_mut(&m) {
                    Some(existing) => *existing = existing.plus(&c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        Self::normalized(self.nvars, terms)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::normalized(
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a.times(c))).collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    /// Partial derivative with respect to `z_var`.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] -= 1;
            (Monomial(e), c.times(&C::from_u32(k)))
        });
        Ok(Self::normalized(self.nvars, terms.collect()))
    }

    /// Polynomial whose coefficients are the complex conjugates of these.
    pub fn conj_coeffs(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// Explicit one-way conversion to floating coefficients.
    pub fn to_float(&self) -> FloatPoly {
        MultiPoly::normalized(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), c.to_complex())).collect(),
        )
    }

    /// Coefficients in `z_var`: entry `k` is the coefficient polynomial of `z_var^k`
    /// (still in `nvars` variables, with zero exponent at `var`).
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].insert(Monomial(e), c.clone());
        }
        out.into_iter().map(|t| Self::normalized(self.nvars, t)).collect()
    }

    /// Drops to fewer variables, keeping only `keep` (in that order).
    /// Fails if a dropped variable appears.
    pub fn restrict_vars(&self, keep: &[usize]) -> Result<Self> {
        let dropped: Vec<usize> = (0..self.nvars).filter(|v| !keep.contains(v)).collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if dropped.iter().any(|&v| m.0[v] > 0) {
                return Err(Error::Unsupported(format!(
                    "polynomial depends on a dropped variable among {dropped:?}"
                )));
            }
            terms.insert(Monomial(keep.iter().map(|&v| m.0[v]).collect()), c.clone());
        }
        MultiPoly::from_terms(keep.len(), terms)
    }

    /// Embeds into `nvars` variables, sending variable `i` of `self` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Result<Self> {
        if map.len() != self.nvars {
            return Err(Error::NvarsMismatch(map.len(), self.nvars));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars];
            for (i, &v) in map.iter().enumerate() {
                e[v] += m.0[i];
            }
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(nvars, terms.collect::<Vec<_>>())
    }

    /// Floating evaluation by nested Horner accumulation (outermost variable first).
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: z.len(),
            });
        }
        let terms: Vec<(&[u32], Complex64)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0.as_slice(), c.to_complex()))
            .collect();
        Ok(horner(&terms, 0, z))
    }

    /// Like [`MultiPoly::eval`], panicking on a dimension mismatch. For hot loops
    /// where the point dimension is already validated.
    pub(crate) fn eval_unchecked(&self, z: &[Complex64]) -> Complex64 {
        self.eval(z).expect("dimension checked by caller")
    }
}

/// Horner over variable `var` for terms sorted lexicographically by exponent.
fn horner(terms: &[(&[u32], Complex64)], var: usize, z: &[Complex64]) -> Complex64 {
    if terms.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    if var == z.len() {
        return terms.iter().map(|(_, c)| c).sum();
    }
    // groups of equal exponent in `var` are contiguous under lex order
    let mut groups: Vec<(u32, &[(&[u32], Complex64)])> = Vec::new();
    let mut start = 0;
    for i in 1..=terms.len() {
        if i == terms.len() || terms[i].0[var] != terms[start].0[var] {
            groups.push((terms[start].0[var], &terms[start..i]));
            start = i;
        }
    }
    let x = z[var];
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = groups.last().map(|g| g.0).unwrap_or(0);
    for &(e, group) in groups.iter().rev() {
        acc = acc * x.powu(prev - e) + horner(group, var + 1, z);
        prev = e;
    }
    acc * x.powu(prev)
}

impl ExactPoly {
    /// Exact evaluation at a rational-complex point.
    pub fn eval_exact(&self, z: &[ExactComplex]) -> Result<ExactComplex> {
        if z.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: z.len(),
            });
        }
        let mut acc = ExactComplex::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (zi, &e) in z.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &zi.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `z_var = value`, keeping the variable count.
    pub fn specialize(&self, var: usize, value: &ExactComplex) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] = 0;
            (Monomial(e), c * &value.pow(k))
        });
        MultiPoly::from_terms(self.nvars, terms.collect::<Vec<_>>()).expect("same nvars")
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        use num_traits::Zero;
        self.terms.values().all(|c| c.im.is_zero())
    }
}

impl<C: Coefficient> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c:?}")?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*z{}", i + 1)?,
                    _ => write!(f, "*z{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Ordered tuple of exact symbols sharing a variable count.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolTuple {
    nvars: usize,
    symbols: Vec<ExactPoly>,
    variable_assignment: Option<BTreeMap<usize, usize>>,
}

impl SymbolTuple {
    pub fn new(symbols: Vec<ExactPoly>) -> Result<Self> {
        let nvars = symbols
            .first()
            .map(|s| s.nvars())
            .ok_or_else(|| Error::Unsupported("empty symbol tuple".into()))?;
        if let Some(s) = symbols.iter().find(|s| s.nvars() != nvars) {
            return Err(Error::NvarsMismatch(nvars, s.nvars()));
        }
        Ok(Self {
            nvars,
            symbols,
            variable_assignment: None,
        })
    }

    /// Attaches a symbol-index to variable-index map; each assigned symbol must
    /// depend only on its variable.
    pub fn with_assignment(mut self, assignment: BTreeMap<usize, usize>) -> Result<Self> {
        for (&s, &v) in &assignment {
            let sym = self.symbols.get(s).ok_or(Error::VariableOutOfRange {
                index: s,
                nvars: self.symbols.len(),
            })?;
            if v >= self.nvars {
                return Err(Error::VariableOutOfRange {
                    index: v,
                    nvars: self.nvars,
                });
            }
            if !sym.depends_only_on(v) {
                return Err(Error::Unsupported(format!(
                    "symbol {s} is assigned to z{} but depends on other variables",
                    v + 1
                )));
            }
        }
        self.variable_assignment = Some(assignment);
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[ExactPoly] {
        &self.symbols
    }

    pub fn variable_assignment(&self) -> Option<&BTreeMap<usize, usize>> {
        self.variable_assignment.as_ref()
    }

    pub fn to_float(&self) -> Vec<FloatPoly> {
        self.symbols.iter().map(ExactPoly::to_float).collect()
    }

    /// Largest per-variable exponent over all symbols.
    pub fn max_var_degree(&self) -> u32 {
        self.symbols.iter().map(|s| s.max_var_degree()).max().unwrap_or(0)
    }

    /// Tuple `(f_1 − λ_1, …)`.
    pub fn shifted(&self, lambda: &[ExactComplex]) -> Result<Self> {
        if lambda.len() != self.symbols.len() {
            return Err(Error::DimensionMismatch {
                expected: self.symbols.len(),
                found: lambda.len(),
            });
        }
        let symbols = self
            .symbols
            .iter()
            .zip(lambda)
            .map(|(s, l)| s.sub(&ExactPoly::constant(self.nvars, l.clone())))
            .collect();
        Self::new(symbols)
    }

    /// When every symbol depends on a single variable and the variables are
    /// pairwise distinct, the symbol-to-variable map (constants excluded).
    pub fn separated_variables(&self) -> Option<Vec<usize>> {
        if let Some(a) = &self.variable_assignment {
            if a.len() == self.symbols.len() {
                return Some((0..self.symbols.len()).map(|i| a[&i]).collect());
            }
        }
        let mut vars = Vec::with_capacity(self.symbols.len());
        for s in &self.symbols {
            match s.support_vars().as_slice() {
                [v] => vars.push(*v),
                _ => return None,
            }
        }
        let mut sorted = vars.clone();
        sorted.sort_unstable();
        sorted.dedup();
        (sorted.len() == vars.len()).then_some(vars)
    }
}
