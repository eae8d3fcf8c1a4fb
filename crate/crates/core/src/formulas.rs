//! Closed-form counts, evaluated exactly with big integers and rationals.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{check_dimension, Error, Result};
use crate::exec::{self, Exec};
use crate::lattice::MAX_FORMULA_N;

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let mut total = 0;
    let mut acc = BigUint::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

fn formula_n(n: usize) -> Result<()> {
    check_dimension("formula", n, 0, MAX_FORMULA_N)
}

/// `⌈n/2⌉·C(n,⌊n/2⌋)`: most 2-chains in a butterfly-free family.
pub fn butterfly_p2(n: usize) -> Result<BigUint> {
    formula_n(n)?;
    Ok(binomial(n, n / 2) * n.div_ceil(2))
}

/// `5·C(n−2,⌊n/2⌋−1)`: 2-chains of the `𝒫_5`-free construction.
pub fn p5(n: usize) -> Result<BigUint> {
    check_dimension("p5", n, 2, MAX_FORMULA_N)?;
    Ok(binomial(n - 2, n / 2 - 1) * 5u32)
}

/// `2·C(n,⌊n/2⌋)+1`: 2-chains of the `{W,M}`-free construction.
pub fn p6_lower(n: usize) -> Result<BigUint> {
    formula_n(n)?;
    Ok(binomial(n, n / 2) * 2u32 + 1u32)
}

/// `C(n,⌊n/2⌋)`: most 2-chains in an N-free family.
pub fn n_free(n: usize) -> Result<BigUint> {
    formula_n(n)?;
    Ok(binomial(n, n / 2))
}

/// Full chains through the closed interval `{F : A ⊆ F ⊆ B}` with `|A| = a`,
/// `|B| = b`: `n! / C(n−b+a, a)`.
pub fn sublattice(n: usize, a: usize, b: usize) -> Result<BigUint> {
    formula_n(n)?;
    if !(a < b && b <= n) {
        return Err(Error::BadParameter(format!(
            "sublattice needs 0 <= a < b <= n, got a={a}, b={b}, n={n}"
        )));
    }
    let num = factorial(n);
    let den = binomial(n - b + a, a);
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "n!={num} not divisible by C({},{a})={den}", n - b + a);
    Ok(q)
}

/// `(t − t(t−1)/n)·⌊n/2⌋!·⌈n/2⌉!`, the lower bound on full chains meeting a
/// family of `t` sets.
pub fn katona_nagy(n: usize, t: usize) -> Result<BigRational> {
    check_dimension("katona_nagy", n, 1, MAX_FORMULA_N)?;
    let t_r = BigRational::from_integer(BigInt::from(t));
    let correction = BigRational::new(BigInt::from(t * t.saturating_sub(1)), BigInt::from(n));
    let scale = BigInt::from(factorial(n / 2) * factorial(n.div_ceil(2)));
    Ok((t_r - correction) * BigRational::from_integer(scale))
}

/// Exact value of a closed formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaValue {
    Integer(BigUint),
    Rational(BigRational),
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaValue::Integer(v) => write!(f, "{v}"),
            FormulaValue::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            FormulaValue::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Formula identifiers with their parameter names (after `n`).
pub const FORMULA_IDS: &[(&str, &[&str])] = &[
    ("butterfly_p2", &[]),
    ("p5", &[]),
    ("p6_lower", &[]),
    ("n_free", &[]),
    ("sublattice", &["a", "b"]),
    ("katona_nagy", &["t"]),
];

/// Evaluate formula `id` at `n` with extra parameters in the order listed in
/// [`FORMULA_IDS`].
pub fn closed_formula(id: &str, n: usize, extra: &[usize]) -> Result<FormulaValue> {
    let arity = FORMULA_IDS
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, params)| params.len())
        .ok_or_else(|| Error::UnknownFormula(id.to_string()))?;
    if extra.len() != arity {
        return Err(Error::BadParameter(format!(
            "{id} takes {arity} parameters besides n, got {}",
            extra.len()
        )));
    }
    let int = FormulaValue::Integer;
    Ok(match id {
        "butterfly_p2" => int(butterfly_p2(n)?),
        "p5" => int(p5(n)?),
        "p6_lower" => int(p6_lower(n)?),
        "n_free" => int(n_free(n)?),
        "sublattice" => int(sublattice(n, extra[0], extra[1])?),
        "katona_nagy" => FormulaValue::Rational(katona_nagy(n, extra[0])?),
        _ => unreachable!("checked against FORMULA_IDS"),
    })
}

/// TSV rows `id<TAB>n<TAB>value` for `n` in `lo..=hi`, with a header line.
pub fn formula_sweep(id: &str, lo: usize, hi: usize, extra: &[usize]) -> Result<String> {
    if lo > hi {
        return Err(Error::BadParameter(format!("empty sweep {lo}..{hi}")));
    }
    let mut out = String::from("id\tn\tvalue\n");
    for n in lo..=hi {
        let v = closed_formula(id, n, extra)?;
        out.push_str(&format!("{id}\t{n}\t{v}\n"));
    }
    Ok(out)
}

/// Strictly increasing level indices `0 ≤ i_1 < … < i_r ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LevelTuple {
    n: usize,
    levels: Vec<usize>,
}

impl LevelTuple {
    pub fn new(n: usize, levels: Vec<usize>) -> Result<Self> {
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadParameter(format!(
                "levels {levels:?} not strictly increasing"
            )));
        }
        if let Some(&bad) = levels.iter().find(|&&l| l > n) {
            return Err(Error::LevelOutOfRange { level: bad, n });
        }
        Ok(LevelTuple { n, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Gaps `i_1, i_2−i_1, …, n−i_r`.
    pub fn parts(&self) -> Vec<usize> {
        let mut prev = 0;
        let mut parts = Vec::with_capacity(self.levels.len() + 1);
        for &l in &self.levels {
            parts.push(l - prev);
            prev = l;
        }
        parts.push(self.n - prev);
        parts
    }

    /// All parts within one of each other.
    pub fn is_balanced(&self) -> bool {
        let parts = self.parts();
        let lo = parts.iter().min().copied().unwrap_or(0);
        let hi = parts.iter().max().copied().unwrap_or(0);
        hi - lo <= 1
    }
}

/// ℓ-chains in the union of the levels in `tuple`: the sum over ℓ-subsets of
/// levels `j_1 < … < j_ℓ` of `n!/((n−j_ℓ)!·(j_ℓ−j_{ℓ−1})!·…·j_1!)`.
pub fn chain_count_in_levels(n: usize, chain_len: usize, tuple: &LevelTuple) -> Result<BigUint> {
    formula_n(n)?;
    if tuple.n != n {
        return Err(Error::BadParameter(format!(
            "tuple built for n={} used with n={n}",
            tuple.n
        )));
    }
    let r = tuple.levels.len();
    if chain_len == 0 || chain_len > r {
        return Err(Error::BadParameter(format!(
            "chain length {chain_len} needs 1..={r} levels"
        )));
    }
    let mut total = BigUint::zero();
    let mut pick: Vec<usize> = (0..chain_len).collect();
    loop {
        let sub = LevelTuple {
            n,
            levels: pick.iter().map(|&i| tuple.levels[i]).collect(),
        };
        total += multinomial(&sub.parts());
        let mut p = chain_len;
        while p > 0 && pick[p - 1] == r - chain_len + p - 1 {
            p -= 1;
        }
        if p == 0 {
            return Ok(total);
        }
        pick[p - 1] += 1;
        for q in p..chain_len {
            pick[q] = pick[q - 1] + 1;
        }
    }
}

/// Maximum of [`chain_count_in_levels`] over `(k−1)`-tuples of levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelMax {
    #[serde(with = "crate::bignum")]
    pub value: BigUint,
    /// Every maximizing tuple, lexicographic.
    pub argmax: Vec<LevelTuple>,
    /// For `k = ℓ+1`: whether every maximizer has balanced parts.
    pub balanced: Option<bool>,
}

/// All strictly increasing `r`-tuples from `0..=n`, lexicographic.
pub(crate) fn level_tuples(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n + 1 {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut p = r;
        while p > 0 && cur[p - 1] == n + 1 - r + p - 1 {
            p -= 1;
        }
        if p == 0 {
            return out;
        }
        cur[p - 1] += 1;
        for q in p..r {
            cur[q] = cur[q - 1] + 1;
        }
    }
}

pub fn la_chain_levels_max(n: usize, k: usize, chain_len: usize) -> Result<LevelMax> {
    la_chain_levels_max_with(Exec::default(), n, k, chain_len)
}

pub fn la_chain_levels_max_with(
    exec: Exec,
    n: usize,
    k: usize,
    chain_len: usize,
) -> Result<LevelMax> {
    check_dimension("la_chain_levels_max", n, 0, 20)?;
    if !(k > chain_len && chain_len >= 1 && k <= 6) {
        return Err(Error::BadParameter(format!(
            "need 6 >= k > l >= 1, got k={k}, l={chain_len}"
        )));
    }
    if k - 1 > n + 1 {
        return Err(Error::BadParameter(format!("no {}-tuple of levels in 0..={n}", k - 1)));
    }
    let tuples = level_tuples(n, k - 1);
    let values: Vec<BigUint> = exec::map_slice(exec, &tuples, |t| {
        let tuple = LevelTuple { n, levels: t.clone() };
        chain_count_in_levels(n, chain_len, &tuple).expect("valid tuple")
    });
    let value = values.iter().max().cloned().unwrap_or_default();
    let argmax: Vec<LevelTuple> = tuples
        .into_iter()
        .zip(&values)
        .filter(|(_, v)| **v == value)
        .map(|(levels, _)| LevelTuple { n, levels })
        .collect();
    let balanced = (k == chain_len + 1).then(|| argmax.iter().all(LevelTuple::is_balanced));
    Ok(LevelMax {
        value,
        argmax,
        balanced,
    })
}

/// Ceiling of a non-negative rational as an integer.
pub fn ceil_to_biguint(r: &BigRational) -> BigUint {
    let c = r.ceil().to_integer();
    c.to_biguint().unwrap_or_default()
}

/// Rational to f64 for display only.
pub fn approx(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{count_k_chains, level_family};

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn basic_combinatorics() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(10), big(3_628_800));
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(multinomial(&[2, 1, 3]), big(60));
        // 21! exceeds u64.
        assert_eq!(factorial(21).to_string(), "51090942171709440000");
    }

    #[test]
    fn formula_examples() {
        assert_eq!(butterfly_p2(5).unwrap(), big(30));
        assert_eq!(sublattice(4, 1, 3).unwrap(), big(12));
        assert_eq!(
            katona_nagy(4, 2).unwrap(),
            BigRational::from_integer(BigInt::from(6))
        );
        assert_eq!(p6_lower(2).unwrap(), big(5));
        assert_eq!(n_free(4).unwrap(), big(6));
        assert_eq!(p5(6).unwrap(), big(30));
        assert!(sublattice(4, 3, 3).is_err());
        assert!(sublattice(4, 1, 5).is_err());
        assert!(butterfly_p2(63).is_err());
        assert!(butterfly_p2(62).is_ok());
    }

    #[test]
    fn closed_formula_dispatch() {
        assert_eq!(closed_formula("butterfly_p2", 7, &[]).unwrap().to_string(), "140");
        assert_eq!(closed_formula("katona_nagy", 5, &[3]).unwrap().to_string(), "108/5");
        assert_eq!(closed_formula("katona_nagy", 4, &[2]).unwrap().to_string(), "6");
        assert!(matches!(closed_formula("nope", 3, &[]), Err(Error::UnknownFormula(_))));
        assert!(matches!(closed_formula("sublattice", 3, &[1]), Err(Error::BadParameter(_))));
        let tsv = formula_sweep("butterfly_p2", 2, 10, &[]).unwrap();
        let rows: Vec<&str> = tsv.lines().skip(1).collect();
        assert_eq!(rows.len(), 9);
        assert!(rows.contains(&"butterfly_p2\t5\t30"));
    }

    #[test]
    fn level_chain_examples() {
        let t = LevelTuple::new(6, vec![3, 4]).unwrap();
        assert_eq!(chain_count_in_levels(6, 2, &t).unwrap(), big(60));
        assert_eq!(
            count_k_chains(&level_family(6, &[3, 4]).unwrap(), 2),
            big(60)
        );
        let t = LevelTuple::new(4, vec![1, 2]).unwrap();
        assert_eq!(chain_count_in_levels(4, 2, &t).unwrap(), big(12));
        for n in 0..8 {
            for k in 0..=n {
                let t = LevelTuple::new(n, vec![k]).unwrap();
                assert_eq!(chain_count_in_levels(n, 1, &t).unwrap(), binomial(n, k));
            }
        }
        assert!(LevelTuple::new(4, vec![2, 2]).is_err());
        assert!(LevelTuple::new(4, vec![5]).is_err());
        assert!(chain_count_in_levels(4, 3, &t).is_err());
    }

    #[test]
    fn level_scan_examples() {
        let r = la_chain_levels_max(4, 3, 2).unwrap();
        assert_eq!(r.value, big(12));
        let arg: Vec<&[usize]> = r.argmax.iter().map(|t| t.levels()).collect();
        // Parts (1,1,2) in every order: {1,2}, {1,3}, {2,3}.
        assert_eq!(arg, vec![&[1, 2][..], &[1, 3], &[2, 3]]);
        assert_eq!(r.balanced, Some(true));

        let r = la_chain_levels_max(5, 2, 1).unwrap();
        assert_eq!(r.value, big(10));
        let arg: Vec<&[usize]> = r.argmax.iter().map(|t| t.levels()).collect();
        assert_eq!(arg, vec![&[2][..], &[3]]);

        // Balanced parts (2,2,2) beat the middle pair {3,4} (value 60).
        let r = la_chain_levels_max(6, 3, 2).unwrap();
        assert_eq!(r.value, big(90));
        assert_eq!(r.argmax, vec![LevelTuple::new(6, vec![2, 4]).unwrap()]);

        assert!(la_chain_levels_max(4, 2, 2).is_err());
        assert!(la_chain_levels_max(21, 3, 2).is_err());
    }

    #[test]
    fn scan_is_mode_independent() {
        for (n, k, l) in [(8, 4, 2), (10, 3, 1), (9, 5, 3)] {
            assert_eq!(
                la_chain_levels_max_with(Exec::Sequential, n, k, l).unwrap(),
                la_chain_levels_max_with(Exec::Parallel, n, k, l).unwrap()
            );
        }
    }

    #[test]
    fn adjacent_argmax_is_balanced() {
        for n in 1..=14 {
            for k in 2..=5 {
                if let Ok(r) = la_chain_levels_max(n, k, k - 1) {
                    assert_eq!(r.balanced, Some(true), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn rational_helpers() {
        let r = katona_nagy(5, 3).unwrap();
        assert_eq!(ceil_to_biguint(&r), big(22));
        assert!((approx(&r) - 21.6).abs() < 1e-12);
    }
}
