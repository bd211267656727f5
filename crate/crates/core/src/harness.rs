//! Experiments: exhaustive censuses, the influence bounds for monotone,
//! threshold and plateaued functions, and report formats.
//!
//! Every pass/fail row compares exact dyadic quantities. Bounds involving
//! square roots are compared after squaring. Rows that concern asymptotic
//! statements with unknown constants are marked report-only.

use std::collections::BTreeMap;
use std::io::Write;

use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuits::Circuit;
use crate::classify::{
    classify_with_spectrum, is_bent, is_monotone, lhe_bound, max_pc_degree_from_spectrum, plateaued_order,
    satisfies_sac, BentVerdict, ClassReport,
};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::generate::{
    monotone_words, mm_bent, padded_plateaued, random_function_stream, random_ltf, random_ptf, MmSpec, RandomModel,
    WeightDistribution,
};
use crate::influence::{average_sensitivity, total_influence, InfluenceProfile};
use crate::spectral::{wht, Spectrum};
use crate::threshold::is_ltf;
use crate::truth_table::TruthTable;
use crate::Budget;

/// Version tag of the JSON report layouts.
pub const SCHEMA_VERSION: u32 = 1;

/// Witnesses kept per intersection cell.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Value {
    Exact(Dyadic),
    Float(f64),
}

impl From<Dyadic> for Value {
    fn from(d: Dyadic) -> Self {
        Value::Exact(d)
    }
}

/// One line of experiment output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub experiment: String,
    pub n: usize,
    /// `k` or `d`, where the experiment has one.
    pub param: Option<u32>,
    pub statistic: String,
    pub value: Value,
    pub bound: Option<Value>,
    pub status: Status,
}

impl ExperimentRow {
    /// Pass/fail row; only exact values can decide a verdict.
    pub fn check(
        experiment: &str,
        n: usize,
        param: Option<u32>,
        statistic: &str,
        value: Dyadic,
        bound: Dyadic,
        pass: bool,
    ) -> Self {
        ExperimentRow {
            experiment: experiment.into(),
            n,
            param,
            statistic: statistic.into(),
            value: Value::Exact(value),
            bound: Some(Value::Exact(bound)),
            status: if pass { Status::Pass } else { Status::Fail },
        }
    }

    pub fn report(
        experiment: &str,
        n: usize,
        param: Option<u32>,
        statistic: &str,
        value: Value,
        bound: Option<Value>,
    ) -> Self {
        ExperimentRow {
            experiment: experiment.into(),
            n,
            param,
            statistic: statistic.into(),
            value,
            bound,
            status: Status::ReportOnly,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Flat CSV layout of [`ExperimentRow`].
#[derive(Serialize)]
struct CsvRow<'a> {
    experiment: &'a str,
    n: usize,
    param: Option<u32>,
    statistic: &'a str,
    value_numerator: Option<String>,
    value_exponent: Option<u32>,
    value_float: f64,
    bound_numerator: Option<String>,
    bound_exponent: Option<u32>,
    bound_float: Option<f64>,
    status: &'static str,
}

fn split(v: Option<&Value>) -> (Option<String>, Option<u32>, Option<f64>) {
    match v {
        Some(Value::Exact(d)) => (Some(d.numerator().to_string()), Some(d.exponent()), Some(d.to_f64())),
        Some(Value::Float(f)) => (None, None, Some(*f)),
        None => (None, None, None),
    }
}

/// Write rows as CSV: one header row, then one record per row.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        let (vn, ve, vf) = split(Some(&row.value));
        let (bn, be, bf) = split(row.bound.as_ref());
        w.serialize(CsvRow {
            experiment: &row.experiment,
            n: row.n,
            param: row.param,
            statistic: &row.statistic,
            value_numerator: vn,
            value_exponent: ve,
            value_float: vf.unwrap_or(f64::NAN),
            bound_numerator: bn,
            bound_exponent: be,
            bound_float: bf,
            status: match row.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::ReportOnly => "report-only",
            },
        })
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn csv_string(rows: &[ExperimentRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv writer emits UTF-8"))
}

/// Full JSON analysis of one function.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub n: usize,
    pub truth_table: String,
    pub spectrum: Spectrum,
    pub influence: InfluenceProfile,
    pub average_sensitivity: Dyadic,
    pub entropy: f64,
    pub classes: ClassReport,
}

/// Spectrum, cross-checked influences, entropy and class verdicts.
pub fn analyze(tt: &TruthTable) -> Result<AnalysisReport> {
    let spectrum = wht(tt);
    let influence = InfluenceProfile::compute_checked(tt, &spectrum)?;
    let avg = average_sensitivity(tt);
    if avg != influence.total {
        return Err(Error::InconsistentInfluence {
            what: "I(f) vs s(f)".into(),
            flip: influence.total.to_string(),
            fourier: avg.to_string(),
        });
    }
    let classes = classify_with_spectrum(tt, &spectrum)?;
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        n: tt.n(),
        truth_table: tt.to_hex(),
        entropy: spectrum.fourier_entropy(),
        spectrum,
        influence,
        average_sensitivity: avg,
        classes,
    })
}

/// `C(n, ⌊n/2⌋) ⌈n/2⌉ / 2^{n-1}`, the monotone total-influence bound.
pub fn monotone_influence_bound(n: usize) -> Dyadic {
    let c = binomial(n as u128, (n / 2) as u128) * n.div_ceil(2) as u128;
    Dyadic::new(c as i128, n as u32 - 1)
}

pub fn half_n(n: usize) -> Dyadic {
    Dyadic::new(n as i128, 1)
}

/// `I <= 2 sqrt(n)` decided as `(2I)^2 <= 16 n`.
pub fn within_ltf_bound(total: Dyadic, n: usize) -> bool {
    let two_i = total.scale_pow2(1);
    two_i * two_i <= Dyadic::from_int(16 * n as i128)
}

/// `I <= d sqrt(n)` decided as `I^2 <= d^2 n`.
pub fn within_ptf_conjecture(total: Dyadic, n: usize, d: usize) -> bool {
    total * total <= Dyadic::from_int((d * d * n) as i128)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub bent: u64,
    pub sac: u64,
    pub pc_ge1: u64,
    /// Bent, SAC or PC(≥1).
    pub bsp: u64,
    pub monotone: u64,
    pub ltf: u64,
    pub plateaued: BTreeMap<u32, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Intersection {
    pub name: &'static str,
    pub count: u64,
    /// Hex tables, smallest first, at most [`MAX_WITNESSES`].
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extremal {
    pub class: &'static str,
    pub min_total_influence: Option<Dyadic>,
    pub max_total_influence: Option<Dyadic>,
}

/// Exhaustive classification of every `n`-variable function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusResult {
    pub schema: u32,
    pub n: usize,
    pub functions: u64,
    pub counts: ClassCounts,
    pub intersections: Vec<Intersection>,
    pub extremal: Vec<Extremal>,
    pub rows: Vec<ExperimentRow>,
}

impl CensusResult {
    pub fn passed(&self) -> bool {
        !self.rows.iter().any(ExperimentRow::failed)
    }

    pub fn intersection(&self, name: &str) -> Option<&Intersection> {
        self.intersections.iter().find(|i| i.name == name)
    }
}

const INTERSECTIONS: [&str; 6] = [
    "monotone-bent",
    "monotone-sac",
    "monotone-pc1",
    "monotone-bsp",
    "ltf-bsp",
    "bsp-influence-not-half-n",
];
const CLASSES: [&str; 6] = ["bent", "sac", "pc1", "bsp", "monotone", "ltf"];

#[derive(Clone, Default)]
struct CensusAcc {
    counts: ClassCounts,
    cells: [(u64, Vec<u64>); 6],
    extremal: [Option<(Dyadic, Dyadic)>; 6],
    monotone_nonconstant_max: Option<Dyadic>,
}

impl CensusAcc {
    fn note(&mut self, cell: usize, word: u64) {
        let (count, w) = &mut self.cells[cell];
        *count += 1;
        if w.len() < MAX_WITNESSES {
            w.push(word);
        }
    }

    fn extend(&mut self, class: usize, i: Dyadic) {
        let e = &mut self.extremal[class];
        *e = Some(match *e {
            None => (i, i),
            Some((lo, hi)) => (lo.min(i), hi.max(i)),
        });
    }

    fn merge(mut self, other: CensusAcc) -> CensusAcc {
        let c = &mut self.counts;
        let o = other.counts;
        c.bent += o.bent;
        c.sac += o.sac;
        c.pc_ge1 += o.pc_ge1;
        c.bsp += o.bsp;
        c.monotone += o.monotone;
        c.ltf += o.ltf;
        for (k, v) in o.plateaued {
            *c.plateaued.entry(k).or_default() += v;
        }
        for (mine, theirs) in self.cells.iter_mut().zip(other.cells) {
            mine.0 += theirs.0;
            mine.1.extend(theirs.1);
            mine.1.sort_unstable();
            mine.1.truncate(MAX_WITNESSES);
        }
        for (mine, theirs) in self.extremal.iter_mut().zip(other.extremal) {
            *mine = match (*mine, theirs) {
                (None, x) | (x, None) => x,
                (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            };
        }
        self.monotone_nonconstant_max = match (self.monotone_nonconstant_max, other.monotone_nonconstant_max) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(a.max(b)),
        };
        self
    }
}

fn census_one(n: usize, word: u64, acc: &mut CensusAcc) {
    let tt = TruthTable::from_word(n, word).expect("n <= 5");
    let spec = wht(&tt);
    let i = total_influence(&tt);
    let bent = is_bent(&spec) == BentVerdict::Yes;
    let sac = satisfies_sac(&tt);
    let pc1 = max_pc_degree_from_spectrum(&spec) >= 1;
    let bsp = bent || sac || pc1;
    let monotone = is_monotone(&tt);
    let ltf = is_ltf(&tt).expect("n within threshold limits").is_member();
    if let Some(k) = plateaued_order(&spec) {
        *acc.counts.plateaued.entry(k).or_default() += 1;
    }
    for (idx, member) in [bent, sac, pc1, bsp, monotone, ltf].into_iter().enumerate() {
        if member {
            acc.extend(idx, i);
        }
    }
    let c = &mut acc.counts;
    c.bent += bent as u64;
    c.sac += sac as u64;
    c.pc_ge1 += pc1 as u64;
    c.bsp += bsp as u64;
    c.monotone += monotone as u64;
    c.ltf += ltf as u64;
    let cells = [
        monotone && bent,
        monotone && sac,
        monotone && pc1,
        monotone && bsp,
        ltf && bsp,
        bsp && i != half_n(n),
    ];
    for (idx, hit) in cells.into_iter().enumerate() {
        if hit {
            acc.note(idx, word);
        }
    }
    if monotone && !tt.is_constant() {
        acc.monotone_nonconstant_max = Some(acc.monotone_nonconstant_max.map_or(i, |m| m.max(i)));
    }
}

/// Classify every `n`-variable function. `n <= 4` by default, `n = 5` with
/// [`Budget::Long`].
pub fn census(n: usize, budget: Budget) -> Result<CensusResult> {
    let max = match budget {
        Budget::Standard => 4,
        Budget::Long => 5,
    };
    if n == 0 {
        return Err(Error::VarCount(0));
    }
    if n > max {
        return Err(Error::Guard {
            what: "census",
            n,
            max,
            hint: if n == 5 { " (n=5 needs the long-run flag)" } else { "" },
        });
    }
    let total: u64 = 1 << (1u64 << n);
    let chunk = 1u64 << 12;
    let acc = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut acc = CensusAcc::default();
            for word in c * chunk..((c + 1) * chunk).min(total) {
                census_one(n, word, &mut acc);
            }
            acc
        })
        .reduce(CensusAcc::default, CensusAcc::merge);

    let hex = |w: u64| TruthTable::from_word(n, w).expect("n <= 5").to_hex();
    let intersections: Vec<Intersection> = INTERSECTIONS
        .iter()
        .zip(&acc.cells)
        .map(|(&name, (count, words))| Intersection {
            name,
            count: *count,
            witnesses: words.iter().map(|&w| hex(w)).collect(),
        })
        .collect();
    let extremal = CLASSES
        .iter()
        .zip(acc.extremal)
        .map(|(&class, e)| Extremal {
            class,
            min_total_influence: e.map(|x| x.0),
            max_total_influence: e.map(|x| x.1),
        })
        .collect();

    let mut rows = Vec::new();
    let bad_prop1 = acc.cells[5].0;
    rows.push(ExperimentRow::check(
        "census",
        n,
        None,
        "bsp-members-with-influence-not-half-n",
        Dyadic::from_int(bad_prop1 as i128),
        Dyadic::ZERO,
        bad_prop1 == 0,
    ));
    let meet = acc.cells[3].0;
    if n >= 4 {
        rows.push(ExperimentRow::check(
            "census",
            n,
            None,
            "monotone-bsp-intersection",
            Dyadic::from_int(meet as i128),
            Dyadic::ZERO,
            meet == 0,
        ));
    } else if n >= 2 {
        // Below the threshold the classes meet; the census must exhibit it.
        rows.push(ExperimentRow::check(
            "census",
            n,
            None,
            "monotone-bsp-intersection-nonempty",
            Dyadic::from_int(meet as i128),
            Dyadic::ONE,
            meet >= 1,
        ));
    } else {
        rows.push(ExperimentRow::report(
            "census",
            n,
            None,
            "monotone-bsp-intersection",
            Dyadic::from_int(meet as i128).into(),
            None,
        ));
    }
    let bound = monotone_influence_bound(n);
    if let Some(max_i) = acc.monotone_nonconstant_max {
        rows.push(ExperimentRow::check(
            "census",
            n,
            None,
            "monotone-max-total-influence",
            max_i,
            bound,
            max_i <= bound,
        ));
    }
    rows.push(ExperimentRow::report(
        "census",
        n,
        None,
        "ltf-bsp-intersection",
        Dyadic::from_int(acc.cells[4].0 as i128).into(),
        None,
    ));

    Ok(CensusResult {
        schema: SCHEMA_VERSION,
        n,
        functions: total,
        counts: acc.counts,
        intersections,
        extremal,
        rows,
    })
}

/// Monotone influence bound, checked over every monotone function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fact2Result {
    pub n: usize,
    pub monotone_count: u64,
    pub bound: Dyadic,
    pub max_total_influence: Dyadic,
    /// Smallest table attaining the maximum.
    pub argmax: TruthTable,
    pub rows: Vec<ExperimentRow>,
}

pub fn fact2_experiment(n: usize, budget: Budget) -> Result<Fact2Result> {
    let words = monotone_words(n, budget)?;
    let bound = monotone_influence_bound(n);
    let mut best: Option<(Dyadic, u64)> = None;
    let mut violations = 0u64;
    for &w in &words {
        let t = TruthTable::from_word(n, w)?;
        if t.is_constant() {
            continue;
        }
        let i = total_influence(&t);
        if i > bound {
            violations += 1;
        }
        if best.is_none_or(|(b, _)| i > b) {
            best = Some((i, w));
        }
    }
    let (max_i, argmax) = best.ok_or(Error::Parameter {
        name: "n",
        value: n.to_string(),
        reason: "no non-constant monotone functions".into(),
    })?;
    let mut rows = vec![
        ExperimentRow::report(
            "fact2",
            n,
            None,
            "monotone-count",
            Dyadic::from_int(words.len() as i128).into(),
            None,
        ),
        ExperimentRow::check("fact2", n, None, "max-total-influence", max_i, bound, max_i <= bound),
        ExperimentRow::check(
            "fact2",
            n,
            None,
            "violations",
            Dyadic::from_int(violations as i128),
            Dyadic::ZERO,
            violations == 0,
        ),
    ];
    if n >= 4 {
        rows.push(ExperimentRow::check("fact2", n, None, "bound-below-half-n", bound, half_n(n), bound < half_n(n)));
    } else {
        rows.push(ExperimentRow::check(
            "fact2",
            n,
            None,
            "bound-not-below-half-n",
            bound,
            half_n(n),
            bound >= half_n(n),
        ));
    }
    Ok(Fact2Result {
        n,
        monotone_count: words.len() as u64,
        bound,
        max_total_influence: max_i,
        argmax: TruthTable::from_word(n, argmax)?,
        rows,
    })
}

/// Random LTFs against `I <= 2 sqrt(n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fact3Result {
    pub n: usize,
    pub samples: usize,
    pub rows: Vec<ExperimentRow>,
    /// Total influence per sample, per model, in sample order.
    #[serde(skip)]
    pub influences: Vec<(WeightDistribution, Vec<Dyadic>)>,
}

pub fn fact3_experiment(n: usize, samples: usize, seed: u64) -> Result<Fact3Result> {
    fact3_experiment_with(n, samples, &[RandomModel::uniform(seed), RandomModel::normal(seed)])
}

pub fn fact3_experiment_with(n: usize, samples: usize, models: &[RandomModel]) -> Result<Fact3Result> {
    if n == 0 || n > 16 {
        return Err(Error::Guard {
            what: "LTF sampling",
            n,
            max: 16,
            hint: "",
        });
    }
    let mut rows = Vec::new();
    let mut influences = Vec::new();
    let cap = Dyadic::from_int(16 * n as i128);
    for model in models {
        let values: Vec<Dyadic> = (0..samples as u64)
            .into_par_iter()
            .map(|i| random_ltf(n, &model.with_stream(i)).map(|(t, _)| total_influence(&t)))
            .collect::<Result<_>>()?;
        let param = None;
        let label = match model.distribution {
            WeightDistribution::Uniform => "fact3-uniform",
            WeightDistribution::StandardNormal => "fact3-normal",
            WeightDistribution::Fixed(_) => "fact3-fixed",
        };
        let violations = values.iter().filter(|&&i| !within_ltf_bound(i, n)).count();
        let max_i = values.iter().copied().max().unwrap_or(Dyadic::ZERO);
        let two_max = max_i.scale_pow2(1);
        rows.push(ExperimentRow::check(
            label,
            n,
            param,
            "violations",
            Dyadic::from_int(violations as i128),
            Dyadic::ZERO,
            violations == 0,
        ));
        rows.push(ExperimentRow::check(
            label,
            n,
            param,
            "max-squared-twice-influence",
            two_max * two_max,
            cap,
            two_max * two_max <= cap,
        ));
        rows.push(ExperimentRow::report(label, n, param, "max-total-influence", max_i.into(), None));
        let mean = values.iter().map(Dyadic::to_f64).sum::<f64>() / samples.max(1) as f64;
        rows.push(ExperimentRow::report(
            label,
            n,
            param,
            "mean-influence-over-sqrt-n",
            Value::Float(mean / (n as f64).sqrt()),
            None,
        ));
        influences.push((model.distribution.clone(), values));
    }
    rows.extend(ltf_threshold_rows());
    Ok(Fact3Result {
        n,
        samples,
        rows,
        influences,
    })
}

/// `2 sqrt(n) < n/2` first holds at `n = 17`; compared as `4n` vs `n^2/4`.
pub fn ltf_threshold_rows() -> Vec<ExperimentRow> {
    [16usize, 17]
        .iter()
        .map(|&n| {
            let lhs = Dyadic::from_int(4 * n as i128);
            let rhs = Dyadic::new((n * n) as i128, 2);
            if n == 17 {
                ExperimentRow::check("ltf-threshold", n, None, "squared-2sqrt-n-below-squared-half-n", lhs, rhs, lhs < rhs)
            } else {
                ExperimentRow::check("ltf-threshold", n, None, "squared-2sqrt-n-not-below-squared-half-n", lhs, rhs, lhs >= rhs)
            }
        })
        .collect()
}

/// Padded bent witnesses for `k`-plateaued functions.
pub fn fact4_experiment(k: usize, n_list: &[usize]) -> Result<Vec<ExperimentRow>> {
    let mut rows = Vec::new();
    for &n in n_list {
        if n > 14 || n < k + 2 || !(n - k).is_multiple_of(2) {
            return Err(Error::Parameter {
                name: "n-list",
                value: n.to_string(),
                reason: format!("need n <= 14, n - k >= 2 and n - k even (k={k})"),
            });
        }
        let g = mm_bent(&MmSpec::identity((n - k) / 2))?;
        let f = padded_plateaued(&g, k)?;
        let param = Some(k as u32);
        let order = plateaued_order(&wht(&f));
        rows.push(ExperimentRow::check(
            "fact4",
            n,
            param,
            "plateaued-order",
            Dyadic::from_int(order.map_or(-1, |o| o as i128)),
            Dyadic::from_int(k as i128),
            order == Some(k as u32),
        ));
        let i = total_influence(&f);
        let expected = Dyadic::new((n - k) as i128, 1);
        rows.push(ExperimentRow::check("fact4", n, param, "total-influence", i, expected, i == expected));
        let mono = monotone_influence_bound(n);
        rows.push(ExperimentRow::report(
            "fact4",
            n,
            param,
            "excess-over-monotone-bound",
            (i - mono).into(),
            Some(mono.into()),
        ));
        rows.push(ExperimentRow::report(
            "fact4",
            n,
            param,
            "squared-influence-minus-4n",
            (i * i - Dyadic::from_int(4 * n as i128)).into(),
            Some(Dyadic::from_int(4 * n as i128).into()),
        ));
    }
    Ok(rows)
}

/// Random PTFs against the conjectured `I <= d sqrt(n)`.
pub fn conjecture_probe(n: usize, d: usize, samples: usize, seed: u64) -> Result<Vec<ExperimentRow>> {
    if n == 0 || n > 12 || d == 0 || d > 3 {
        return Err(Error::Parameter {
            name: "n/d",
            value: format!("n={n}, d={d}"),
            reason: "probe needs 1 <= n <= 12 and 1 <= d <= 3".into(),
        });
    }
    let model = RandomModel::normal(seed);
    let values: Vec<Dyadic> = (0..samples as u64)
        .into_par_iter()
        .map(|i| random_ptf(n, d, &model.with_stream(i)).map(|t| total_influence(&t)))
        .collect::<Result<_>>()?;
    let param = Some(d as u32);
    let above = values.iter().filter(|&&i| !within_ptf_conjecture(i, n, d)).count();
    let max_i = values.iter().copied().max().unwrap_or(Dyadic::ZERO);
    let mut rows = vec![
        ExperimentRow::report("probe", n, param, "max-total-influence", max_i.into(), Some(Value::Float(d as f64 * (n as f64).sqrt()))),
        ExperimentRow::report("probe", n, param, "samples-above-d-sqrt-n", Dyadic::from_int(above as i128).into(), None),
        ExperimentRow::report(
            "probe",
            n,
            param,
            "fraction-above-d-sqrt-n",
            Value::Float(above as f64 / samples.max(1) as f64),
            None,
        ),
    ];
    if d == 1 {
        let violations = values.iter().filter(|&&i| !within_ltf_bound(i, n)).count();
        rows.push(ExperimentRow::check(
            "probe",
            n,
            param,
            "ltf-bound-violations",
            Dyadic::from_int(violations as i128),
            Dyadic::ZERO,
            violations == 0,
        ));
    }
    Ok(rows)
}

/// Total influence of explicit bounded-depth families next to the
/// `(log2 n)^{d-1}` shape. Report-only: the constant is unknown.
pub fn fact1_trend() -> Result<Vec<ExperimentRow>> {
    let mut circuits = Vec::new();
    for (w, c) in [(2, 2), (2, 4), (3, 3), (2, 8), (4, 4), (3, 5)] {
        circuits.push(("tribes", Circuit::tribes(w, c)?));
    }
    for (d, fanin) in [(2, 3), (2, 4), (3, 2), (4, 2)] {
        circuits.push(("read-once", Circuit::read_once_alternating(d, fanin)?));
    }
    Ok(circuits
        .iter()
        .map(|(family, c)| {
            let n = c.n();
            let d = c.depth();
            let shape = (n as f64).log2().powi(d as i32 - 1);
            ExperimentRow::report(
                "fact1",
                n,
                Some(d as u32),
                &format!("{family}-size-{}-total-influence", c.size()),
                total_influence(&c.evaluate()).into(),
                Some(Value::Float(shape)),
            )
        })
        .collect())
}

/// Sampled check of the entropy/influence inequality on `LHE_c` members.
pub fn lhe_experiment(n: usize, c: f64, samples: usize, seed: u64) -> Result<Vec<ExperimentRow>> {
    let reports = (0..samples as u64)
        .into_par_iter()
        .map(|i| random_function_stream(n, seed, i).and_then(|t| lhe_bound(&t, c)))
        .collect::<Result<Vec<_>>>()?;
    let members = reports.iter().filter(|r| r.member).count();
    let violations = reports.iter().filter(|r| r.member && !r.holds).count();
    let min_slack = reports
        .iter()
        .filter(|r| r.member)
        .map(|r| r.bound - r.entropy)
        .fold(f64::INFINITY, f64::min);
    Ok(vec![
        ExperimentRow::report("lhe", n, None, &format!("members-c={c}"), Dyadic::from_int(members as i128).into(), None),
        ExperimentRow::report("lhe", n, None, &format!("violations-c={c}"), Dyadic::from_int(violations as i128).into(), None),
        ExperimentRow::report("lhe", n, None, &format!("min-slack-c={c}"), Value::Float(min_slack), None),
    ])
}
