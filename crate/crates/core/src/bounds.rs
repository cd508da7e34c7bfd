//! Closed-form size bounds for complete arcs and the integer threshold solver
//! behind the lower bounds.
//!
//! Every returned integer is computed in exact arithmetic. Square roots are
//! removed by squaring both sides of the defining inequality, and the
//! polynomial thresholds are evaluated with [`Rational`].

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::prime_power;

pub type Rational = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("{what} needs {requirement}, got q = {q}")]
    OutOfRange {
        what: &'static str,
        requirement: &'static str,
        q: u32,
    },
    #[error("no solution for k in {start}..={end}")]
    NoSolution { start: i64, end: i64 },
    #[error("left-hand side decreases from k = {k} to k = {}", k + 1)]
    NotMonotone { k: i64 },
    #[error("malformed known-values data: {0}")]
    Data(String),
}

fn r(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Generalized binomial coefficient `t(t-1)...(t-n+1)/n!`.
pub fn binom_poly(t: Rational, n: u32) -> Rational {
    let mut acc = r(1);
    for i in 0..n {
        acc *= t - r(i as i128);
    }
    for i in 1..=n {
        acc /= r(i as i128);
    }
    acc
}

fn binom_at(k: i64, n: u32) -> Rational {
    binom_poly(r(k as i128), n)
}

/// Smallest integer `k` in `range` with `f(k) >= rhs`. The scan fails with
/// [`BoundsError::NotMonotone`] if `f` decreases anywhere before the
/// crossing, since the answer would then not be the ceiling of the smallest
/// real solution.
pub fn threshold_ceiling(
    f: impl Fn(i64) -> Rational,
    rhs: Rational,
    range: RangeInclusive<i64>,
) -> Result<i64, BoundsError> {
    let (start, end) = (*range.start(), *range.end());
    let mut prev: Option<Rational> = None;
    for k in range {
        let v = f(k);
        if let Some(p) = prev {
            if v < p {
                return Err(BoundsError::NotMonotone { k: k - 1 });
            }
        }
        if v >= rhs {
            return Ok(k);
        }
        prev = Some(v);
    }
    Err(BoundsError::NoSolution { start, end })
}

fn plane_size(q: u32) -> i128 {
    let q = q as i128;
    q * q + q + 1
}

fn scan_end(q: u32) -> i64 {
    plane_size(q) as i64
}

fn require_prime_power(q: u32) -> Result<(u32, u32), BoundsError> {
    prime_power(q).ok_or(BoundsError::NotPrimePower(q))
}

fn require_q5(q: u32, what: &'static str) -> Result<(), BoundsError> {
    require_prime_power(q)?;
    if q < 5 {
        return Err(BoundsError::OutOfRange {
            what,
            requirement: "q >= 5",
            q,
        });
    }
    Ok(())
}

/// `floor(sqrt(2q) + 2)`.
pub fn ball_sqrt2(q: u32) -> u32 {
    (2 * q as u64).isqrt() as u32 + 2
}

/// `ceil(sqrt(3q) + 1/2)`: smallest `n` with `(2n - 1)^2 >= 12q`.
pub fn ball_sqrt3_value(q: u32) -> u32 {
    let mut n = 1u64;
    while (2 * n - 1).pow(2) < 12 * q as u64 {
        n += 1;
    }
    n as u32
}

/// Both classical lower bounds on `t(2,q)`; the second applies only when
/// `q = p` or `q = p^2`.
pub fn lower_t_ball(q: u32) -> Result<(u32, Option<u32>), BoundsError> {
    let (_, e) = require_prime_power(q)?;
    let second = (e <= 2).then(|| ball_sqrt3_value(q));
    Ok((ball_sqrt2(q), second))
}

/// `ceil(sqrt(2q + 1/4) + 3/2)`: smallest `n >= 2` with `(2n - 3)^2 >= 8q + 1`.
pub fn lower_t_prop(q: u32) -> u32 {
    let mut n = 2u64;
    while (2 * n - 3).pow(2) < 8 * q as u64 + 1 {
        n += 1;
    }
    n as u32
}

/// Left-hand side of the complete Veronesian arc inequality.
pub fn lhs_t0(q: u32, k: i64) -> Rational {
    let q = q as i128;
    binom_at(k, 5) * r(q - 4) + binom_at(k, 2) * r(q - 1) + r(k as i128)
}

/// Left-hand side for generalized arcs without 3-secants.
pub fn lhs_t1(q: u32, k: i64) -> Rational {
    binom_at(k, 5) * r(q as i128 - 4) + r(k as i128)
}

/// Left-hand side for generalized arcs with a 3-secant, compared with
/// `q^2 + 3`.
pub fn lhs_t2(q: u32, k: i64) -> Rational {
    let q = q as i128;
    binom_at(k - 3, 5) * r(q - 4)
        + binom_at(k - 2, 4) * r(6 * q - 12)
        + binom_at(k - 3, 2) * r(q - 2)
        + r(k as i128)
}

/// The covering count `S(k)` in its unsimplified form, compared with
/// `q^2 + q + 1`. It differs from [`lhs_t2`] by the constant `q - 2`.
pub fn covering_count_s(q: u32, k: i64) -> Rational {
    let q = q as i128;
    binom_at(k - 3, 5) * r(q - 4)
        + binom_at(k - 2, 4) * r(6 * q - 12)
        + (binom_at(k - 3, 2) + r(1)) * r(q - 2)
        + r(k as i128)
}

/// Left-hand side for generalized arcs with exactly `t` 3-secants.
pub fn lhs_t3(q: u32, t: u32, k: i64) -> Rational {
    let (q, t, k) = (q as i128, t as i128, k as i128);
    binom_at(k as i64, 5) * r(q - 4)
        + Rational::new(t, 2) * r((k - 3) * (k - 4) + 1 - t) * r(q)
        + r(k)
}

/// First `k` scanned. Forms built on three collinear points start at 3.
const SCAN_START_PLAIN: i64 = 1;
const SCAN_START_COLLINEAR: i64 = 3;

/// `ceil(t0)`, the lower bound on `t_v(2,q)`.
pub fn lower_tv(q: u32) -> Result<u32, BoundsError> {
    require_q5(q, "the Veronesian threshold")?;
    let k = threshold_ceiling(|k| lhs_t0(q, k), r(plane_size(q)), SCAN_START_PLAIN..=scan_end(q))?;
    Ok(k as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedLower {
    pub ceil_t1: u32,
    pub ceil_t2: u32,
    pub min: u32,
}

pub fn lower_tg(q: u32) -> Result<GeneralizedLower, BoundsError> {
    require_q5(q, "the generalized thresholds")?;
    let t1 = threshold_ceiling(|k| lhs_t1(q, k), r(plane_size(q)), SCAN_START_PLAIN..=scan_end(q))?;
    let t2 = threshold_ceiling(
        |k| lhs_t2(q, k),
        r((q as i128).pow(2) + 3),
        SCAN_START_COLLINEAR..=scan_end(q),
    )?;
    Ok(GeneralizedLower {
        ceil_t1: t1 as u32,
        ceil_t2: t2 as u32,
        min: t1.min(t2) as u32,
    })
}

/// `ceil(t2)` computed from `S(k) >= q^2 + q + 1` instead of the simplified
/// inequality. Both must agree.
pub fn lower_tg_from_covering_count(q: u32) -> Result<u32, BoundsError> {
    require_q5(q, "the generalized thresholds")?;
    let k = threshold_ceiling(
        |k| covering_count_s(q, k),
        r(plane_size(q)),
        SCAN_START_COLLINEAR..=scan_end(q),
    )?;
    Ok(k as u32)
}

/// `ceil(t3)` for a generalized arc with `t` 3-secants.
pub fn lower_tg_with_secants(q: u32, t: u32) -> Result<u32, BoundsError> {
    require_q5(q, "the 3-secant threshold")?;
    let start = if t == 0 { SCAN_START_PLAIN } else { SCAN_START_COLLINEAR };
    let k = threshold_ceiling(|k| lhs_t3(q, t, k), r(plane_size(q)), start..=scan_end(q))?;
    Ok(k as u32)
}

/// Largest integer `n` with `n <= a - b*sqrt(q)`, for `b >= 0`.
fn floor_minus_sqrt(a: Rational, b: Rational, q: u32) -> i128 {
    let mut n = a.floor().to_integer();
    loop {
        let gap = a - r(n);
        if gap >= r(0) && b * b * r(q as i128) <= gap * gap {
            return n;
        }
        n -= 1;
    }
}

/// A value together with a description of where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sourced {
    pub value: u32,
    pub source: String,
}

impl Sourced {
    fn new(value: u32, source: impl Into<String>) -> Self {
        Sourced {
            value,
            source: source.into(),
        }
    }
}

/// Best known upper value for `m(5,q)`, the largest `(k,5)`-arc in PG(5,q).
pub fn reference_m5(q: u32) -> Option<Sourced> {
    let (p, _) = prime_power(q)?;
    if p == 2 && q >= 8 {
        Some(Sourced::new(q + 1, "m(5,q) = q+1 for even q >= 8"))
    } else if p != 2 && q >= 7 {
        if (23..=83).contains(&q) {
            Some(Sourced::new(q + 2, "m(5,q) <= q+2, odd 23 <= q <= 83 unresolved"))
        } else {
            Some(Sourced::new(q + 1, "m(5,q) = q+1 for odd q >= 7"))
        }
    } else {
        None
    }
}

/// Each literature bound on `m'(2,q)` that applies to `q`.
pub fn m2_prime_formulas(q: u32) -> Vec<Sourced> {
    let Some((p, e)) = prime_power(q) else {
        return Vec::new();
    };
    let qr = r(q as i128);
    let mut out = Vec::new();
    if q >= 7 {
        out.push(Sourced::new(q - 1, "Segre-Tallini q-1"));
    }
    if p != 2 {
        let v = floor_minus_sqrt(qr + Rational::new(25, 16), Rational::new(1, 4), q);
        out.push(Sourced::new(v as u32, "Thas q-sqrt(q)/4+25/16"));
    }
    if e == 1 {
        let v = (Rational::new(44, 45) * qr + Rational::new(8, 9)).floor().to_integer();
        out.push(Sourced::new(v as u32, "Voloch 44q/45+8/9"));
    }
    if p >= 5 {
        let v = floor_minus_sqrt(qr + r(5), Rational::new(1, 2), q);
        out.push(Sourced::new(v as u32, "Hirschfeld-Korchmaros q-sqrt(q)/2+5"));
    }
    out
}

/// `m'(2,q)`: the printed exact value when there is one, else the smallest
/// applicable literature bound.
pub fn reference_m2_prime(q: u32, known: &KnownValues) -> Option<Sourced> {
    if let Some(v) = known.get(q, "m_prime") {
        return Some(Sourced::new(v.value, format!("exact, {}", v.source)));
    }
    m2_prime_formulas(q).into_iter().min_by_key(|s| s.value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperMg {
    pub value: u32,
    /// Every term of the minimum, labelled.
    pub terms: Vec<Sourced>,
    /// Label of the term that attains the minimum.
    pub attained_by: String,
}

/// Upper bound on `m_g(2,q)` for odd `q >= 7` or even `q >= 16`.
pub fn upper_mg(q: u32, known: &KnownValues) -> Result<UpperMg, BoundsError> {
    let (p, _) = require_prime_power(q)?;
    let qr = r(q as i128);
    let mut terms = Vec::new();
    if p == 2 {
        if q < 16 {
            return Err(BoundsError::OutOfRange {
                what: "the m_g upper bound",
                requirement: "q >= 16 when q is even",
                q,
            });
        }
        let m5 = reference_m5(q).expect("even q >= 16");
        terms.push(Sourced::new(m5.value, m5.source));
        let v = floor_minus_sqrt(qr + Rational::new(17, 4), Rational::new(1, 2), q);
        terms.push(Sourced::new(v as u32, "floor(q-sqrt(q)/2+17/4)"));
    } else {
        if q < 7 {
            return Err(BoundsError::OutOfRange {
                what: "the m_g upper bound",
                requirement: "q >= 7 when q is odd",
                q,
            });
        }
        let m5 = reference_m5(q).expect("odd q >= 7");
        terms.push(Sourced::new(m5.value, m5.source));
        let m2 = reference_m2_prime(q, known).expect("odd q >= 7 has a Segre bound");
        terms.push(Sourced::new(m2.value + 3, format!("m'(2,q)+3 with {}", m2.source)));
        let v = floor_minus_sqrt(qr + Rational::new(19, 4), Rational::new(1, 4), q);
        terms.push(Sourced::new(v as u32, "floor(q-sqrt(q)/4+19/4)"));
    }
    let best = terms.iter().min_by_key(|t| t.value).expect("nonempty").clone();
    Ok(UpperMg {
        value: best.value,
        terms,
        attained_by: best.source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
pub struct KnownRecord {
    pub q: u32,
    pub source: String,
    #[serde(flatten)]
    pub values: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
pub struct Discrepancy {
    pub source: String,
    pub q: u32,
    pub quantity: String,
    pub printed: u32,
    pub computed: u32,
    pub note: String,
}

/// A single printed value and where it was printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownValue<'a> {
    pub value: u32,
    pub source: &'a str,
}

/// Read-only reference data shipped with the crate.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
pub struct KnownValues {
    pub version: u32,
    #[serde(rename = "value", default)]
    pub records: Vec<KnownRecord>,
    #[serde(rename = "discrepancy", default)]
    pub discrepancies: Vec<Discrepancy>,
}

const BUILTIN_KNOWN: &str = include_str!("../data/known_values.toml");

impl KnownValues {
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN_KNOWN).expect("bundled known values parse")
    }

    pub fn from_toml(text: &str) -> Result<Self, BoundsError> {
        toml::from_str(text).map_err(|e| BoundsError::Data(e.to_string()))
    }

    /// First record for `q` carrying `quantity`, in file order.
    pub fn get(&self, q: u32, quantity: &str) -> Option<KnownValue<'_>> {
        self.records
            .iter()
            .filter(|rec| rec.q == q)
            .find_map(|rec| {
                rec.values.get(quantity).map(|&value| KnownValue {
                    value,
                    source: &rec.source,
                })
            })
    }

    /// Value printed in a specific table.
    pub fn get_from(&self, source: &str, q: u32, quantity: &str) -> Option<u32> {
        self.records
            .iter()
            .find(|rec| rec.q == q && rec.source == source)
            .and_then(|rec| rec.values.get(quantity).copied())
    }

    /// Whether `source` prints a row for `q` at all.
    pub fn has_row(&self, source: &str, q: u32) -> bool {
        self.records.iter().any(|rec| rec.q == q && rec.source == source)
    }

    pub fn rows_of(&self, source: &str) -> Vec<u32> {
        self.records
            .iter()
            .filter(|rec| rec.source == source)
            .map(|rec| rec.q)
            .collect()
    }

    pub fn discrepancy(&self, source: &str, q: u32, quantity: &str) -> Option<&Discrepancy> {
        self.discrepancies
            .iter()
            .find(|d| d.source == source && d.q == q && d.quantity == quantity)
    }
}

/// All bound values for one `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u32,
    pub lower_t_ball_sqrt2: u32,
    pub lower_t_ball_sqrt3: Option<u32>,
    pub lower_t_prop: u32,
    pub lower_tv_t0: Option<u32>,
    pub lower_tg_t1: Option<u32>,
    pub lower_tg_t2: Option<u32>,
    pub lower_tg_min: Option<u32>,
    pub upper_mg: Option<UpperMg>,
    pub reference_m5q: Option<Sourced>,
    pub reference_m2q_prime: Option<Sourced>,
    /// Printed cells that disagree with a computed value but are listed as
    /// known discrepancies.
    pub flags: Vec<String>,
    /// Disagreements with the reference data that are not explained.
    pub inconsistencies: Vec<String>,
}

impl BoundReport {
    /// Column names of [`BoundReport::csv_row`].
    pub const CSV_HEADER: &'static str = "q,ball_sqrt2,ball_sqrt3,t_prop,ceil_t0,ceil_t1,ceil_t2,min_t1_t2,upper_mg,upper_mg_source,m5q,m2q_prime,flags";

    pub fn csv_row(&self) -> String {
        fn o(v: Option<u32>) -> String {
            v.map_or("-".into(), |v| v.to_string())
        }
        fn quote(s: &str) -> String {
            format!("\"{}\"", s.replace('"', "\"\""))
        }
        [
            self.q.to_string(),
            self.lower_t_ball_sqrt2.to_string(),
            o(self.lower_t_ball_sqrt3),
            self.lower_t_prop.to_string(),
            o(self.lower_tv_t0),
            o(self.lower_tg_t1),
            o(self.lower_tg_t2),
            o(self.lower_tg_min),
            o(self.upper_mg.as_ref().map(|u| u.value)),
            self.upper_mg.as_ref().map_or("-".into(), |u| quote(&u.attained_by)),
            o(self.reference_m5q.as_ref().map(|s| s.value)),
            o(self.reference_m2q_prime.as_ref().map(|s| s.value)),
            quote(&self.flags.join("; ")),
        ]
        .join(",")
    }
}

pub fn full_report(q: u32, known: &KnownValues) -> Result<BoundReport, BoundsError> {
    let (sqrt2, sqrt3) = lower_t_ball(q)?;
    let prop = lower_t_prop(q);
    let tv = (q >= 5).then(|| lower_tv(q)).transpose()?;
    let tg = (q >= 5).then(|| lower_tg(q)).transpose()?;
    let upper = upper_mg(q, known).ok();
    let mut report = BoundReport {
        q,
        lower_t_ball_sqrt2: sqrt2,
        lower_t_ball_sqrt3: sqrt3,
        lower_t_prop: prop,
        lower_tv_t0: tv,
        lower_tg_t1: tg.map(|g| g.ceil_t1),
        lower_tg_t2: tg.map(|g| g.ceil_t2),
        lower_tg_min: tg.map(|g| g.min),
        upper_mg: upper,
        reference_m5q: reference_m5(q),
        reference_m2q_prime: reference_m2_prime(q, known),
        flags: Vec::new(),
        inconsistencies: Vec::new(),
    };
    cross_check(&mut report, known);
    Ok(report)
}

fn cross_check(rep: &mut BoundReport, known: &KnownValues) {
    let q = rep.q;
    let cells: [(&str, Option<u32>); 7] = [
        ("ball_sqrt2", Some(rep.lower_t_ball_sqrt2)),
        ("ball_sqrt3", rep.lower_t_ball_sqrt3),
        ("t_prop", Some(rep.lower_t_prop)),
        ("ceil_t0", rep.lower_tv_t0),
        ("ceil_t1", rep.lower_tg_t1),
        ("ceil_t2", rep.lower_tg_t2),
        ("upper_mg", rep.upper_mg.as_ref().map(|u| u.value)),
    ];
    for rec in known.records.iter().filter(|rec| rec.q == q) {
        for (name, computed) in cells {
            let printed = rec.values.get(name).copied();
            // A table with Ball columns prints "-" for an inapplicable bound.
            let printed_here = printed.is_some()
                || (name == "ball_sqrt3" && rec.values.contains_key("ball_sqrt2"));
            if !printed_here || printed == computed {
                continue;
            }
            let describe = |v: Option<u32>| v.map_or("-".to_string(), |v| v.to_string());
            let msg = format!(
                "{} q={q} {name}: printed {} computed {}",
                rec.source,
                describe(printed),
                describe(computed)
            );
            match known.discrepancy(&rec.source, q, name) {
                Some(d) if Some(d.printed) == printed && Some(d.computed) == computed => {
                    rep.flags.push(format!("{msg} (known discrepancy)"))
                }
                _ => rep.inconsistencies.push(msg),
            }
        }
    }
    let t = known.get(q, "t").map(|v| v.value);
    let m = known.get(q, "m").map(|v| v.value);
    if let Some(t) = t {
        for (name, lower) in [
            ("ball_sqrt2", Some(rep.lower_t_ball_sqrt2)),
            ("ball_sqrt3", rep.lower_t_ball_sqrt3),
            ("t_prop", Some(rep.lower_t_prop)),
        ] {
            if let Some(l) = lower {
                if l > t {
                    rep.inconsistencies.push(format!("q={q} {name} = {l} exceeds t(2,q) = {t}"));
                }
            }
        }
        if let Some(m) = m {
            if t > m {
                rep.inconsistencies.push(format!("q={q} t(2,q) = {t} exceeds m(2,q) = {m}"));
            }
        }
    }
    if let (Some(tv), Some(known_tv)) = (rep.lower_tv_t0, known.get(q, "t_v")) {
        if tv > known_tv.value {
            rep.inconsistencies
                .push(format!("q={q} ceil(t0) = {tv} exceeds t_v(2,q) = {}", known_tv.value));
        }
    }
    if let (Some(tg), Some(known_tg)) = (rep.lower_tg_min, known.get(q, "t_g")) {
        if tg > known_tg.value {
            rep.inconsistencies.push(format!(
                "q={q} min(ceil t1, ceil t2) = {tg} exceeds t_g(2,q) = {}",
                known_tg.value
            ));
        }
    }
    if let (Some(u), Some(mg)) = (&rep.upper_mg, known.get(q, "m_g")) {
        if u.value < mg.value {
            rep.inconsistencies
                .push(format!("q={q} upper bound {} below m_g(2,q) = {}", u.value, mg.value));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_with_rational_argument() {
        assert_eq!(binom_poly(r(5), 5), r(1));
        assert_eq!(binom_poly(r(4), 5), r(0));
        assert_eq!(binom_poly(Rational::new(9, 2), 2), Rational::new(63, 8));
        for n in 0..5u32 {
            for t in 0..12i128 {
                let expect = (0..n as i128).fold(1i128, |acc, i| acc * (t - i) / (i + 1));
                assert_eq!(binom_poly(r(t), n), r(expect));
            }
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(lower_tv(7), Ok(5));
        assert_eq!(lower_tg(5).unwrap().ceil_t1, 8);
        assert_eq!(lower_tg(7).unwrap().ceil_t2, 7);
        assert_eq!(
            threshold_ceiling(|k| r(-(k as i128)), r(5), 1..=4),
            Err(BoundsError::NotMonotone { k: 1 })
        );
        assert_eq!(
            threshold_ceiling(|k| r(k as i128), r(50), 1..=4),
            Err(BoundsError::NoSolution { start: 1, end: 4 })
        );
    }

    #[test]
    fn q8_veronesian_threshold_evaluates_to_five() {
        assert_eq!(lhs_t0(8, 5), r(79));
        assert!(lhs_t0(8, 4) < r(73));
        assert_eq!(lower_tv(8), Ok(5));
    }

    #[test]
    fn ball_and_prop_examples() {
        assert_eq!(lower_t_ball(8), Ok((6, None)));
        assert_eq!(lower_t_ball(25), Ok((9, Some(10))));
        assert_eq!(lower_t_ball(2), Ok((4, Some(3))));
        assert_eq!(lower_t_prop(4), 5);
        assert_eq!(lower_t_prop(11), 7);
        assert_eq!(lower_t_prop(19), 8);
        assert_eq!(lower_t_ball(6), Err(BoundsError::NotPrimePower(6)));
    }

    #[test]
    fn secant_threshold_reduces_to_t1() {
        for q in (5..=31).filter(|&q| prime_power(q).is_some()) {
            assert_eq!(lower_tg_with_secants(q, 0).unwrap(), lower_tg(q).unwrap().ceil_t1, "q={q}");
        }
    }

    #[test]
    fn upper_mg_cases() {
        let known = KnownValues::builtin();
        let u9 = upper_mg(9, &known).unwrap();
        assert_eq!(u9.value, 10);
        assert_eq!(u9.terms.iter().map(|t| t.value).collect::<Vec<_>>(), vec![10, 11, 13]);
        assert_eq!(upper_mg(64, &known).unwrap().value, 64);
        assert_eq!(upper_mg(25, &known).unwrap().value, 27);
        assert_eq!(upper_mg(89, &known).unwrap().value, 90);
        assert!(upper_mg(8, &known).is_err());
        assert!(upper_mg(5, &known).is_err());
    }

    #[test]
    fn sqrt_floors_are_exact_at_perfect_squares() {
        assert_eq!(floor_minus_sqrt(r(64) + Rational::new(17, 4), Rational::new(1, 2), 64), 64);
        assert_eq!(floor_minus_sqrt(r(19), r(1), 16), 15);
        assert_eq!(floor_minus_sqrt(r(19), r(1), 17), 14);
    }

    #[test]
    fn builtin_data_loads() {
        let known = KnownValues::builtin();
        assert_eq!(known.get(9, "m_g").unwrap().value, 8);
        assert_eq!(known.get_from("table4", 8, "ceil_t0"), Some(6));
        assert!(known.discrepancy("table4", 8, "ceil_t0").is_some());
        assert!(KnownValues::from_toml("version = \"x\"").is_err());
    }
}
