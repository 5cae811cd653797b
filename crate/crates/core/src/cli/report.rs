//! The analysis report and the driver that fills it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::character::{
    induce_trivial, ingest_character_table, inner_product, restricted_trivial_multiplicity, CharacterTable,
    RawCharacterTable, TableSource,
};
use crate::cli::problem::ProblemSpec;
use crate::dixon::dixon_character_table;
use crate::equivariant::{default_q_max, Analysis, Verdict};
use crate::error::Error;
use crate::group::{generate_group, FiniteMatrixGroup, DEFAULT_MAX_ORDER};
use crate::oracle::{differential_check, point_cap};
use crate::quasipoly::{integer_value, GcdQuasiPolynomial};

pub const CONSTITUENT_CONVENTION: &str = "constituents are indexed by gcd(ñ, q) with gcd(ñ, 0) = ñ, so the value at q = 0 \
     and at negative q comes from extending each constituent polynomially; this extension is a convention";

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub q_max: Option<u64>,
    pub max_order: Option<usize>,
    pub verify: bool,
    pub point_cap: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { q_max: None, max_order: None, verify: true, point_cap: point_cap() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub index: usize,
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
    pub rank: usize,
    /// Elementary divisors of R − I other than 1.
    pub elementary_divisors: Vec<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub exponent: usize,
    pub class_count: usize,
    pub classes: Vec<ClassReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterReport {
    pub source: TableSource,
    pub conductor: u64,
    pub degrees: Vec<u64>,
    pub trivial: usize,
    /// Rendered values, one row per irreducible, one column per class.
    pub values: Vec<Vec<String>>,
    pub raw: RawCharacterTable,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReciprocityReport {
    pub index: usize,
    pub values: Vec<i64>,
    /// twist[i] is the index of χ_i ⊗ δ.
    pub twist: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstituentReport {
    pub gcd: Value,
    pub polynomial: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityReport {
    pub character: usize,
    pub degree: u64,
    pub minimal_period: Value,
    pub constituents: Vec<ConstituentReport>,
    pub quasi_polynomial: Value,
    #[serde(skip)]
    pub qp: GcdQuasiPolynomial,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitCountReport {
    pub character: usize,
    pub constituents: Vec<ConstituentReport>,
    pub quasi_polynomial: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    pub group: GroupReport,
    pub period: Value,
    pub character_table: CharacterReport,
    pub reciprocity: ReciprocityReport,
    pub multiplicities: Vec<MultiplicityReport>,
    pub orbit_counts: Vec<OrbitCountReport>,
    pub q_max: u64,
    pub oracle: bool,
    pub conventions: Vec<String>,
    pub verdicts: Vec<Verdict>,
    pub all_passed: bool,
    #[serde(skip)]
    pub tilde_n: BigInt,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn verdict(&self, check: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.check == check)
    }
}

fn constituent_reports(qp: &GcdQuasiPolynomial) -> Vec<ConstituentReport> {
    qp.constituents()
        .into_iter()
        .map(|(d, p)| ConstituentReport { gcd: integer_value(&d), polynomial: p.render("q") })
        .collect()
}

pub fn build_group(spec: &ProblemSpec, options: &RunOptions) -> Result<FiniteMatrixGroup, Error> {
    spec.validate()?;
    let cap = options.max_order.or(spec.options.max_order).unwrap_or(DEFAULT_MAX_ORDER);
    Ok(generate_group(spec.rank, &spec.generator_matrices(), cap)?)
}

pub fn build_table(spec: &ProblemSpec, group: &FiniteMatrixGroup) -> Result<CharacterTable, Error> {
    Ok(match &spec.character_table {
        Some(raw) => ingest_character_table(group, raw)?,
        None => dixon_character_table(group)?,
    })
}

/// Orthogonality and Frobenius reciprocity on every cyclic subgroup.
pub fn character_verdicts(group: &FiniteMatrixGroup, table: &CharacterTable) -> Result<Vec<Verdict>, Error> {
    let field = table.field();
    let mut failures = Vec::new();
    for i in 0..table.len() {
        for j in 0..table.len() {
            let ip = inner_product(group, table.row(i), table.row(j))?;
            let expected = if i == j { field.one() } else { field.zero() };
            if ip != expected {
                failures.push(format!("(χ_{i}, χ_{j}) = {ip}"));
            }
        }
    }
    let sizes = group.class_sizes();
    let order = group.order() as i64;
    for a in 0..table.len() {
        for b in 0..table.len() {
            let mut acc = field.zero();
            for i in 0..table.len() {
                acc = &acc + &(table.row(i).value(a) * &table.row(i).value(b).conj());
            }
            let expected = if a == b { field.from_integer(order / sizes[a] as i64) } else { field.zero() };
            if acc != expected {
                failures.push(format!("column relation ({a}, {b}) = {acc}"));
            }
        }
    }
    let orthogonality = Verdict::new(
        "character-orthogonality",
        "rows and columns of the character table are orthogonal",
        "exact cyclotomic inner products over all pairs",
        failures,
    );

    let cyclic: BTreeSet<Vec<usize>> = (0..group.order()).map(|g| group.subgroup_generated(&[g])).collect();
    let mut failures = Vec::new();
    for h in &cyclic {
        let induced = induce_trivial(group, field, h)?;
        for i in 0..table.len() {
            let lhs = inner_product(group, &induced, table.row(i))?;
            let rhs = restricted_trivial_multiplicity(group, table.row(i), h)?;
            if lhs != rhs {
                failures.push(format!("H = {h:?}, χ_{i}: {lhs} vs {rhs}"));
            }
        }
    }
    let frobenius = Verdict::new(
        "frobenius-reciprocity",
        "(Ind_H 𝟏, χ_i)_G = (𝟏, Res_H χ_i)_H",
        &format!("every cyclic subgroup ({} subgroups)", cyclic.len()),
        failures,
    );
    Ok(vec![orthogonality, frobenius])
}

pub fn run_analyze(spec: &ProblemSpec, options: &RunOptions) -> Result<AnalysisReport, Error> {
    let group = build_group(spec, options)?;
    let table = build_table(spec, &group)?;
    let mut verdicts = character_verdicts(&group, &table)?;
    let analysis = Analysis::new(group, table)?;
    let q_max = options
        .q_max
        .or(spec.options.q_max)
        .unwrap_or_else(|| default_q_max(&analysis.period) as u64);
    verdicts.extend(analysis.structural_verdicts(q_max as i64));
    if options.verify {
        verdicts.extend(differential_check(&analysis, q_max, options.point_cap)?);
    }
    Ok(assemble(spec, &analysis, q_max, options.verify, verdicts))
}

pub fn assemble(spec: &ProblemSpec, analysis: &Analysis, q_max: u64, oracle: bool, verdicts: Vec<Verdict>) -> AnalysisReport {
    let group = &analysis.group;
    let table = &analysis.table;
    let classes = group
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let d = analysis.data.class(i);
            ClassReport {
                index: i,
                representative: c.representative,
                size: c.size(),
                element_order: group.element_order(c.representative),
                rank: d.rank,
                elementary_divisors: d.nontrivial().iter().map(integer_value).collect(),
            }
        })
        .collect();

    let multiplicities = analysis
        .multiplicities
        .components()
        .iter()
        .enumerate()
        .map(|(i, qp)| MultiplicityReport {
            character: i,
            degree: table.degrees()[i],
            minimal_period: integer_value(&qp.minimal_period()),
            constituents: constituent_reports(qp),
            quasi_polynomial: qp.to_json(),
            qp: qp.clone(),
        })
        .collect();
    let orbit_counts = analysis
        .orbit_counts()
        .into_iter()
        .map(|(i, qp)| OrbitCountReport { character: i, constituents: constituent_reports(&qp), quasi_polynomial: qp.to_json() })
        .collect();

    let all_passed = verdicts.iter().all(|v| v.passed);
    AnalysisReport {
        name: spec.name.clone(),
        rank: spec.rank,
        generators: spec.generators.clone(),
        group: GroupReport {
            order: group.order(),
            exponent: group.exponent(),
            class_count: group.class_count(),
            classes,
        },
        period: integer_value(&analysis.period),
        character_table: CharacterReport {
            source: table.source(),
            conductor: table.field().conductor(),
            degrees: table.degrees().to_vec(),
            trivial: table.trivial_index(),
            values: table.rows().iter().map(|r| r.values().iter().map(|v| v.to_string()).collect()).collect(),
            raw: table.to_raw(group),
        },
        reciprocity: ReciprocityReport {
            index: analysis.reciprocity_index,
            values: analysis
                .reciprocity
                .values()
                .iter()
                .map(|v| v.to_integer().and_then(|n| n.to_i64()).expect("±1"))
                .collect(),
            twist: analysis.twist.clone(),
        },
        multiplicities,
        orbit_counts,
        q_max,
        oracle,
        conventions: vec![CONSTITUENT_CONVENTION.to_string()],
        verdicts,
        all_passed,
        tilde_n: analysis.period.clone(),
    }
}
