//! Homogeneous symmetric functions over `Q(t)`, stored by their Schur
//! coefficients.
//!
//! Schur is the internal basis: the Hall scalar product is a dot product on
//! Schur coefficients and `ω` relabels `s_λ` to `s_{λ'}`. The classical bases
//! reach Schur through Kostka numbers and Murnaghan-Nakayama characters.
//! Products go through power sums, where `p_λ p_μ = p_{λ∪μ}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hlwhittaker;
use crate::linalg::{self, Matrix};
use crate::memo::Memo;
use crate::partitions::{partitions_of, Partition, WeakComposition};
use crate::ratfunc::{BigQ, RatFunc};
use crate::tableaux::kostka_number;

pub const DEFAULT_DEGREE_CAP: usize = 12;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_cap(degree: usize) -> Result<()> {
    let cap = degree_cap();
    if degree > cap {
        Err(Error::DegreeCap { degree, cap })
    } else {
        Ok(())
    }
}

/// Basis families. The first five are classical; the rest are the
/// Hall-Littlewood and q-Whittaker families built in [`crate::hlwhittaker`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
    /// Hall-Littlewood `P_λ(x;t)`.
    HallLittlewoodP,
    /// Transformed Hall-Littlewood `H_λ(x;t)`.
    TransformedH,
    /// Modified Hall-Littlewood `H̃_λ(x;t)`.
    ModifiedH,
    /// q-Whittaker `W_λ(x;t)`.
    Whittaker,
    /// Dual q-Whittaker `W̃_λ(x;t)`.
    DualWhittaker,
}

impl Basis {
    pub const ALL: [Basis; 10] = [
        Basis::M,
        Basis::E,
        Basis::H,
        Basis::P,
        Basis::S,
        Basis::HallLittlewoodP,
        Basis::TransformedH,
        Basis::ModifiedH,
        Basis::Whittaker,
        Basis::DualWhittaker,
    ];

    pub fn is_classical(self) -> bool {
        matches!(self, Basis::M | Basis::E | Basis::H | Basis::P | Basis::S)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::S => "s",
            Basis::HallLittlewoodP => "P",
            Basis::TransformedH => "H",
            Basis::ModifiedH => "Hmod",
            Basis::Whittaker => "W",
            Basis::DualWhittaker => "Wdual",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Basis::ALL
            .iter()
            .copied()
            .find(|b| b.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown basis {s:?}")))
    }
}

/// A homogeneous symmetric function of fixed degree, as Schur coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    degree: usize,
    coeffs: BTreeMap<Partition, RatFunc>,
}

impl SymFunc {
    pub fn zero(degree: usize) -> Self {
        SymFunc {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The degree-zero unit `1`.
    pub fn unit() -> Self {
        SymFunc::schur(&Partition::empty())
    }

    pub fn schur(lambda: &Partition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lambda.clone(), RatFunc::one());
        SymFunc {
            degree: lambda.size(),
            coeffs,
        }
    }

    /// Builds from Schur coefficients, dropping zeros. Every key must have size `degree`.
    pub fn from_schur(degree: usize, coeffs: impl IntoIterator<Item = (Partition, RatFunc)>) -> Result<Self> {
        let mut out = SymFunc::zero(degree);
        for (k, v) in coeffs {
            if k.size() != degree {
                return Err(Error::SizeMismatch(format!("{k} in degree {degree}")));
            }
            out.add_term(k, &v);
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Schur coefficient of `s_λ`.
    pub fn coeff(&self, lambda: &Partition) -> RatFunc {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, k: Partition, v: &RatFunc) {
        if v.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k.clone()).or_default();
        *e = &*e + v;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn scale(&self, c: &RatFunc) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.degree);
        }
        SymFunc {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> SymFunc {
        SymFunc {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Evaluates every coefficient at `t = q`, returning a symmetric
    /// function with constant coefficients.
    pub fn specialize(&self, q: &BigQ) -> Result<SymFunc> {
        let mut out = SymFunc::zero(self.degree);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), &RatFunc::from_bigq(v.eval_at(q)?));
        }
        Ok(out)
    }

    pub fn add(&self, o: &SymFunc) -> Result<SymFunc> {
        if self.degree != o.degree {
            if self.is_zero() {
                return Ok(o.clone());
            }
            if o.is_zero() {
                return Ok(self.clone());
            }
            return Err(Error::SizeMismatch(format!(
                "adding degrees {} and {}",
                self.degree, o.degree
            )));
        }
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            let e = out.coeffs.entry(k.clone()).or_default();
            *e = &*e + v;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, o: &SymFunc) -> Result<SymFunc> {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    /// Sum of `c_i * f_i` over terms of one degree.
    pub fn linear_combination<'a>(
        degree: usize,
        terms: impl IntoIterator<Item = (RatFunc, &'a SymFunc)>,
    ) -> Result<SymFunc> {
        let mut acc: BTreeMap<Partition, RatFunc> = BTreeMap::new();
        for (c, f) in terms {
            if c.is_zero() || f.is_zero() {
                continue;
            }
            if f.degree != degree {
                return Err(Error::SizeMismatch(format!(
                    "term of degree {} in a degree-{degree} combination",
                    f.degree
                )));
            }
            for (k, v) in &f.coeffs {
                let e = acc.entry(k.clone()).or_default();
                *e = &*e + &(&c * v);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SymFunc { degree, coeffs: acc })
    }

    /// Coefficients on the power sums `p_ρ`.
    pub fn to_power_sums(&self) -> BTreeMap<Partition, RatFunc> {
        let n = self.degree;
        let mut out: BTreeMap<Partition, RatFunc> = BTreeMap::new();
        for rho in partitions_of(n) {
            let zr = z_factor(&rho);
            let mut acc = RatFunc::zero();
            for (lam, c) in &self.coeffs {
                let chi = character(lam, &rho);
                if !chi.is_zero() {
                    acc = &acc + &c.scale(&BigQ::from_integer(chi));
                }
            }
            if !acc.is_zero() {
                out.insert(rho, acc.scale(&zr.recip()));
            }
        }
        out
    }

    /// Inverse of [`SymFunc::to_power_sums`].
    pub fn from_power_sums(degree: usize, coeffs: &BTreeMap<Partition, RatFunc>) -> Result<SymFunc> {
        let mut out = SymFunc::zero(degree);
        for lam in partitions_of(degree) {
            let mut acc = RatFunc::zero();
            for (rho, c) in coeffs {
                if rho.size() != degree {
                    return Err(Error::SizeMismatch(format!("p_{rho} in degree {degree}")));
                }
                let chi = character(&lam, rho);
                if !chi.is_zero() {
                    acc = &acc + &c.scale(&BigQ::from_integer(chi));
                }
            }
            if !acc.is_zero() {
                out.coeffs.insert(lam, acc);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFunc[deg {}]", self.degree)?;
        let mut first = true;
        for (k, v) in &self.coeffs {
            write!(f, "{} ({v})*s{k}", if first { "" } else { " +" })?;
            first = false;
        }
        Ok(())
    }
}

/// `z_ρ = Π_i i^{m_i} m_i!`.
pub fn z_factor(rho: &Partition) -> BigQ {
    let mut z = BigInt::one();
    for (i, &m) in rho.multiplicities().iter().enumerate() {
        for j in 1..=m {
            z *= BigInt::from((i + 1) * j);
        }
    }
    BigQ::from_integer(z)
}

/// Irreducible character `χ^λ(ρ)` by Murnaghan-Nakayama rim-hook removal
/// on beta-sets.
pub fn character(lambda: &Partition, rho: &Partition) -> BigInt {
    static MEMO: Memo<(Partition, Partition), BigInt> = Memo::new();
    if lambda.size() != rho.size() {
        return BigInt::zero();
    }
    if rho.is_empty() {
        return BigInt::one();
    }
    (*MEMO.get_or_insert_with(&(lambda.clone(), rho.clone()), || {
        let r = rho.first();
        let rest = rho.tail();
        let len = lambda.len();
        let beta: Vec<usize> = (0..len).map(|i| lambda.get(i) + (len - 1 - i)).collect();
        let mut acc = BigInt::zero();
        for (idx, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
            let mut nb = beta.clone();
            nb[idx] = b - r;
            nb.sort_unstable_by(|x, y| y.cmp(x));
            let parts: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (len - 1 - i)).collect();
            let smaller = Partition::new(parts).expect("rim hook removal leaves a partition");
            let v = character(&smaller, &rest);
            if between % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        acc
    }))
    .clone()
}

struct ClassicalTables {
    parts: Vec<Partition>,
    /// `kostka[i][j] = K_{λ_i μ_j}`.
    kostka: Matrix<BigQ>,
    kostka_inv: Matrix<BigQ>,
}

fn classical_tables(n: usize) -> Arc<ClassicalTables> {
    static MEMO: Memo<usize, ClassicalTables> = Memo::new();
    MEMO.get_or_insert_with(&n, || {
        let parts = partitions_of(n);
        let kostka: Matrix<BigQ> = parts
            .iter()
            .map(|l| {
                parts
                    .iter()
                    .map(|m| {
                        let k = kostka_number(l, &WeakComposition::from(m)).expect("sizes match");
                        BigQ::from_integer(BigInt::from(k))
                    })
                    .collect()
            })
            .collect();
        let kostka_inv = linalg::inverse(&kostka).expect("Kostka matrix is unitriangular");
        ClassicalTables {
            parts,
            kostka,
            kostka_inv,
        }
    })
}

fn index_of(parts: &[Partition], l: &Partition) -> usize {
    parts.binary_search(l).expect("partition of the table's degree")
}

fn from_bigq_row(degree: usize, parts: &[Partition], row: impl Iterator<Item = BigQ>) -> SymFunc {
    let mut out = SymFunc::zero(degree);
    for (l, c) in parts.iter().zip(row) {
        if !c.is_zero() {
            out.coeffs.insert(l.clone(), RatFunc::from_bigq(c));
        }
    }
    out
}

/// The basis element indexed by `λ`, in Schur coordinates.
pub fn from_basis(tag: Basis, lambda: &Partition) -> Result<SymFunc> {
    let n = lambda.size();
    check_cap(n)?;
    if !tag.is_classical() {
        return hlwhittaker::basis_element(tag, lambda);
    }
    let tab = classical_tables(n);
    let parts = &tab.parts;
    let j = index_of(parts, lambda);
    Ok(match tag {
        Basis::S => SymFunc::schur(lambda),
        // h_μ = Σ_λ K_{λμ} s_λ
        Basis::H => from_bigq_row(n, parts, (0..parts.len()).map(|i| tab.kostka[i][j].clone())),
        // e_μ = Σ_λ K_{λ'μ} s_λ
        Basis::E => from_bigq_row(
            n,
            parts,
            parts
                .iter()
                .map(|l| tab.kostka[index_of(parts, &l.conjugate())][j].clone()),
        ),
        // m_μ = Σ_λ (K^{-1})_{μλ} s_λ
        Basis::M => from_bigq_row(n, parts, tab.kostka_inv[j].iter().cloned()),
        // p_ρ = Σ_λ χ^λ(ρ) s_λ
        Basis::P => from_bigq_row(
            n,
            parts,
            parts.iter().map(|l| BigQ::from_integer(character(l, lambda))),
        ),
        _ => unreachable!(),
    })
}

fn dual_inverse(tag: Basis, n: usize) -> Result<Arc<Matrix<RatFunc>>> {
    static MEMO: Memo<(Basis, usize), Matrix<RatFunc>> = Memo::new();
    MEMO.try_get_or_insert_with(&(tag, n), || {
        let parts = partitions_of(n);
        let m: Matrix<RatFunc> = parts
            .iter()
            .map(|l| {
                let b = from_basis(tag, l)?;
                Ok(parts.iter().map(|k| b.coeff(k)).collect())
            })
            .collect::<Result<_>>()?;
        linalg::inverse(&m).ok_or_else(|| Error::InvalidArgument(format!("basis {tag} is singular in degree {n}")))
    })
}

/// Coefficients of `f` in the requested basis.
pub fn to_basis(f: &SymFunc, tag: Basis) -> Result<BTreeMap<Partition, RatFunc>> {
    let n = f.degree;
    check_cap(n)?;
    let parts = partitions_of(n);
    let mut out = BTreeMap::new();
    match tag {
        Basis::S => return Ok(f.coeffs.clone()),
        Basis::P => return Ok(f.to_power_sums()),
        Basis::M | Basis::H => {
            let tab = classical_tables(n);
            for (j, mu) in parts.iter().enumerate() {
                let mut acc = RatFunc::zero();
                for (lam, c) in &f.coeffs {
                    let i = index_of(&parts, lam);
                    // m-coefficient: Σ_λ f_λ K_{λμ}; h-coefficient: Σ_λ f_λ (K^{-1})_{μλ}
                    let w = if tag == Basis::M {
                        &tab.kostka[i][j]
                    } else {
                        &tab.kostka_inv[j][i]
                    };
                    if !w.is_zero() {
                        acc = &acc + &c.scale(w);
                    }
                }
                if !acc.is_zero() {
                    out.insert(mu.clone(), acc);
                }
            }
        }
        _ => {
            // f = Σ_λ c_λ b_λ with B[λ][κ] = <b_λ, s_κ>, so c = f_s B^{-1}.
            let inv = dual_inverse(tag, n)?;
            for (j, mu) in parts.iter().enumerate() {
                let mut acc = RatFunc::zero();
                for (lam, c) in &f.coeffs {
                    let w = &inv[index_of(&parts, lam)][j];
                    if !w.is_zero() {
                        acc = &acc + &(c * w);
                    }
                }
                if !acc.is_zero() {
                    out.insert(mu.clone(), acc);
                }
            }
        }
    }
    Ok(out)
}

/// Rebuilds a symmetric function from coefficients in any basis.
pub fn from_coefficients(
    degree: usize,
    tag: Basis,
    coeffs: &BTreeMap<Partition, RatFunc>,
) -> Result<SymFunc> {
    if tag == Basis::P {
        return SymFunc::from_power_sums(degree, coeffs);
    }
    let elems: Vec<(RatFunc, SymFunc)> = coeffs
        .iter()
        .map(|(k, c)| {
            if k.size() != degree {
                return Err(Error::SizeMismatch(format!("{tag}{k} in degree {degree}")));
            }
            Ok((c.clone(), from_basis(tag, k)?))
        })
        .collect::<Result<_>>()?;
    SymFunc::linear_combination(degree, elems.iter().map(|(c, f)| (c.clone(), f)))
}

pub fn multiply(f: &SymFunc, g: &SymFunc) -> Result<SymFunc> {
    let degree = f.degree + g.degree;
    check_cap(degree)?;
    if f.degree == 0 {
        return Ok(g.scale(&f.coeff(&Partition::empty())));
    }
    if g.degree == 0 {
        return Ok(f.scale(&g.coeff(&Partition::empty())));
    }
    let fp = f.to_power_sums();
    let gp = g.to_power_sums();
    let mut prod: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    for (a, ca) in &fp {
        for (b, cb) in &gp {
            let e = prod.entry(a.union(b)).or_default();
            *e = &*e + &(ca * cb);
        }
    }
    prod.retain(|_, c| !c.is_zero());
    SymFunc::from_power_sums(degree, &prod)
}

/// Product of several symmetric functions; the empty product is `1`.
pub fn product<'a>(fs: impl IntoIterator<Item = &'a SymFunc>) -> Result<SymFunc> {
    fs.into_iter()
        .try_fold(SymFunc::unit(), |acc, f| multiply(&acc, f))
}

/// Hall scalar product; zero across different degrees.
pub fn hall_inner(f: &SymFunc, g: &SymFunc) -> RatFunc {
    if f.degree != g.degree {
        return RatFunc::zero();
    }
    f.coeffs
        .iter()
        .filter_map(|(k, v)| g.coeffs.get(k).map(|w| v * w))
        .sum()
}

pub fn omega(f: &SymFunc) -> SymFunc {
    SymFunc {
        degree: f.degree,
        coeffs: f
            .coeffs
            .iter()
            .map(|(k, v)| (k.conjugate(), v.clone()))
            .collect(),
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    part: Partition,
    value: RatFunc,
}

#[derive(Serialize, Deserialize)]
struct SymFuncWire {
    degree: usize,
    basis: String,
    coeffs: Vec<TermWire>,
}

/// JSON form with coefficients expressed in `basis`.
pub fn to_json(f: &SymFunc, basis: Basis) -> Result<serde_json::Value> {
    let coeffs = to_basis(f, basis)?
        .into_iter()
        .map(|(part, value)| TermWire { part, value })
        .collect();
    Ok(serde_json::to_value(SymFuncWire {
        degree: f.degree,
        basis: basis.tag().to_string(),
        coeffs,
    })?)
}

pub fn from_json(v: &serde_json::Value) -> Result<SymFunc> {
    let w: SymFuncWire = serde_json::from_value(v.clone())?;
    let basis: Basis = w.basis.parse()?;
    let mut map = BTreeMap::new();
    for t in w.coeffs {
        let e: &mut RatFunc = map.entry(t.part).or_default();
        *e = &*e + &t.value;
    }
    from_coefficients(w.degree, basis, &map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::p;
    use proptest::prelude::*;

    fn s(parts: &[usize]) -> SymFunc {
        SymFunc::schur(&p(parts))
    }

    fn lin(terms: &[(i64, &[usize])]) -> SymFunc {
        let n = terms[0].1.iter().sum();
        SymFunc::from_schur(n, terms.iter().map(|(c, k)| (p(k), RatFunc::from_int(*c)))).unwrap()
    }

    #[test]
    fn classical_elements() {
        assert_eq!(from_basis(Basis::H, &p(&[2])).unwrap(), s(&[2]));
        assert_eq!(from_basis(Basis::P, &p(&[2])).unwrap(), lin(&[(1, &[2]), (-1, &[1, 1])]));
        assert_eq!(from_basis(Basis::M, &p(&[1, 1])).unwrap(), s(&[1, 1]));
        assert_eq!(from_basis(Basis::E, &p(&[2])).unwrap(), s(&[1, 1]));
    }

    #[test]
    fn characters_of_s3() {
        // character table of S_3, rows λ = (3),(2,1),(1,1,1); columns ρ = (1^3),(2,1),(3)
        let table = [[1, 1, 1], [2, 0, -1], [1, -1, 1]];
        let lams = [p(&[3]), p(&[2, 1]), p(&[1, 1, 1])];
        let rhos = [p(&[1, 1, 1]), p(&[2, 1]), p(&[3])];
        for (i, l) in lams.iter().enumerate() {
            for (j, r) in rhos.iter().enumerate() {
                assert_eq!(character(l, r), BigInt::from(table[i][j]));
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        // Σ_λ χ^λ(ρ) χ^λ(σ) = z_ρ δ_{ρσ}
        for n in 0..=7 {
            let ps = partitions_of(n);
            for r in &ps {
                for q in &ps {
                    let sum: BigInt = ps.iter().map(|l| character(l, r) * character(l, q)).sum();
                    let expect = if r == q { z_factor(r).to_integer() } else { BigInt::zero() };
                    assert_eq!(sum, expect);
                }
            }
        }
    }

    #[test]
    fn to_basis_examples() {
        let sm = to_basis(&s(&[2]), Basis::M).unwrap();
        assert_eq!(sm.len(), 2);
        assert!(sm[&p(&[2])].is_one() && sm[&p(&[1, 1])].is_one());
        let hp = to_basis(&from_basis(Basis::H, &p(&[2])).unwrap(), Basis::P).unwrap();
        let half = RatFunc::from_bigq(crate::ratfunc::bigq_frac(1, 2));
        assert_eq!(hp[&p(&[2])], half);
        assert_eq!(hp[&p(&[1, 1])], half);
    }

    #[test]
    fn round_trips_classical() {
        for n in 0..=8 {
            for tag in [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S] {
                for l in partitions_of(n) {
                    let f = from_basis(tag, &l).unwrap();
                    let c = to_basis(&f, tag).unwrap();
                    assert_eq!(c.len(), 1, "{tag}{l}");
                    assert!(c[&l].is_one());
                }
            }
        }
    }

    #[test]
    fn products() {
        let h1 = from_basis(Basis::H, &p(&[1])).unwrap();
        assert_eq!(multiply(&h1, &h1).unwrap(), lin(&[(1, &[2]), (1, &[1, 1])]));
        let f = s(&[2, 1]);
        assert_eq!(multiply(&f, &SymFunc::unit()).unwrap(), f);
        let p2 = from_basis(Basis::P, &p(&[2])).unwrap();
        let pp = to_basis(&multiply(&p2, &p2).unwrap(), Basis::P).unwrap();
        assert_eq!(pp.len(), 1);
        assert!(pp[&p(&[2, 2])].is_one());
        set_degree_cap(3);
        let err = multiply(&s(&[2]), &s(&[2]));
        set_degree_cap(DEFAULT_DEGREE_CAP);
        assert!(matches!(err, Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn inner_products() {
        assert!(hall_inner(&s(&[2, 1]), &s(&[2, 1])).is_one());
        assert!(hall_inner(&s(&[2, 1]), &s(&[3])).is_zero());
        for n in 0..=6 {
            for l in partitions_of(n) {
                let m = from_basis(Basis::M, &l).unwrap();
                for k in partitions_of(n) {
                    let h = from_basis(Basis::H, &k).unwrap();
                    let v = hall_inner(&m, &h);
                    assert_eq!(v.is_one(), l == k);
                    assert_eq!(v.is_zero(), l != k);
                }
            }
        }
        let p2 = from_basis(Basis::P, &p(&[2])).unwrap();
        assert_eq!(hall_inner(&p2, &p2), RatFunc::from_int(2));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&s(&[2])), s(&[1, 1]));
        assert_eq!(omega(&from_basis(Basis::H, &p(&[2])).unwrap()), from_basis(Basis::E, &p(&[2])).unwrap());
        let p2 = from_basis(Basis::P, &p(&[2])).unwrap();
        assert_eq!(omega(&p2), p2.scale(&RatFunc::from_int(-1)));
    }

    #[test]
    fn omega_involution_and_isometry() {
        for n in 0..=8 {
            for l in partitions_of(n) {
                let f = from_basis(Basis::P, &l).unwrap().add(&from_basis(Basis::M, &l).unwrap()).unwrap();
                assert_eq!(omega(&omega(&f)), f);
                if n <= 6 {
                    for k in partitions_of(n) {
                        let g = from_basis(Basis::H, &k).unwrap();
                        assert_eq!(hall_inner(&omega(&f), &omega(&g)), hall_inner(&f, &g));
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = lin(&[(3, &[2, 1]), (-1, &[1, 1, 1])]).scale(&RatFunc::t());
        for tag in [Basis::S, Basis::M, Basis::P] {
            let v = to_json(&f, tag).unwrap();
            assert_eq!(v["basis"], tag.tag());
            assert_eq!(from_json(&v).unwrap(), f);
        }
        let v = to_json(&s(&[1]), Basis::S).unwrap();
        assert_eq!(
            v.to_string(),
            r#"{"basis":"s","coeffs":[{"part":[1],"value":{"den":["1/1"],"num":["1/1"]}}],"degree":1}"#
        );
    }

    fn arb_element() -> impl Strategy<Value = SymFunc> {
        (1usize..=3, 0usize..5, 0usize..5).prop_map(|(n, i, tag)| {
            let ps = partitions_of(n);
            let l = &ps[i % ps.len()];
            let tag = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S][tag];
            from_basis(tag, l).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn multiply_commutative_associative(a in arb_element(), b in arb_element(), c in arb_element()) {
            prop_assert_eq!(multiply(&a, &b).unwrap(), multiply(&b, &a).unwrap());
            if a.degree() + b.degree() + c.degree() <= 6 {
                let l = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
                let r = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
                prop_assert_eq!(l, r);
            }
        }
    }
}
