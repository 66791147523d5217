use std::fmt::Write as _;
use std::ops::RangeInclusive;

use fatgin::nef_reduction::{closed_form_h, reduce_to_nef};
use fatgin::{build_staircase, closed_form_table, generator_table, Configuration};

use crate::analyze::{generator_check, gin_check, hilbert_check};
use crate::report::Check;

pub struct VerifyOptions {
    pub gin: bool,
    pub no_oracle: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Pass,
    Fail(String),
    Skipped,
}

impl Cell {
    fn from_check(c: Check) -> Cell {
        match c.first_failure {
            None if c.passed => Cell::Pass,
            failure => Cell::Fail(failure.unwrap_or_default()),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Cell::Pass => "PASS",
            Cell::Fail(_) => "FAIL",
            Cell::Skipped => "-",
        }
    }
}

pub struct CaseResult {
    pub l: u32,
    pub m: u64,
    pub closed_form: Cell,
    pub hilbert: Cell,
    pub generators: Cell,
    pub gin: Cell,
    pub gin_generators: Option<u64>,
}

impl CaseResult {
    fn cells(&self) -> [(&'static str, &Cell); 4] {
        [
            ("closed-form", &self.closed_form),
            ("hilbert", &self.hilbert),
            ("generators", &self.generators),
            ("gin", &self.gin),
        ]
    }

    pub fn first_failure(&self) -> Option<(&'static str, &str)> {
        self.cells().into_iter().find_map(|(name, c)| match c {
            Cell::Fail(why) => Some((name, why.as_str())),
            _ => None,
        })
    }
}

/// Procedure against closed form on `0..=lm+3`, then the scanned table
/// against the closed-form table. Needs `l(l-1) | m`.
fn closed_form_cell(c: &Configuration, m: u64) -> fatgin::Result<Cell> {
    if !m.is_multiple_of(c.period()) {
        return Ok(Cell::Skipped);
    }
    for d in 0..=u64::from(c.l()) * m + 3 {
        let f = c.fatpoint_class(d, m)?;
        let slow = reduce_to_nef(c, &f)?;
        let fast = closed_form_h(c, m, d)?;
        if !slow.same_outcome(&fast) {
            return Ok(Cell::Fail(format!(
                "d={d}: procedure {:?}, closed form {:?}",
                slow.nef_class().map(|h| h.to_string()),
                fast.nef_class().map(|h| h.to_string())
            )));
        }
        if slow.reconstruct() != f || fast.reconstruct() != f {
            return Ok(Cell::Fail(format!("d={d}: trace does not reconstruct {f}")));
        }
    }
    let scanned = generator_table(c, m)?;
    let closed = closed_form_table(c.l(), m)?;
    let degrees = scanned.counts.keys().chain(closed.counts.keys());
    if let Some(d) = degrees
        .copied()
        .find(|&d| scanned.count(d) != closed.count(d))
    {
        return Ok(Cell::Fail(format!(
            "d={d}: scanned table {}, closed-form table {}",
            scanned.count(d),
            closed.count(d)
        )));
    }
    let alpha = 2 * m - m / u64::from(c.l());
    if scanned.alpha != alpha || scanned.total != alpha + 1 || !scanned.cwl_certified {
        return Ok(Cell::Fail(format!(
            "d={}: alpha {}, total {}, expected alpha {alpha} and total {}",
            alpha.min(scanned.alpha),
            scanned.alpha,
            scanned.total,
            alpha + 1
        )));
    }
    Ok(Cell::Pass)
}

pub fn run_case(l: u32, m: u64, opts: &VerifyOptions) -> fatgin::Result<CaseResult> {
    let c = Configuration::new(l)?;
    let table = generator_table(&c, m)?;
    let closed_form = closed_form_cell(&c, m)?;
    let (hilbert, generators) = if opts.no_oracle {
        (Cell::Skipped, Cell::Skipped)
    } else {
        (
            Cell::from_check(hilbert_check(&c, m)?),
            Cell::from_check(generator_check(&c, m, &table)?),
        )
    };
    let mut gin_generators = None;
    let gin = if opts.gin && !opts.no_oracle && table.cwl_certified {
        let staircase = build_staircase(&table)?;
        gin_generators = Some(staircase.num_generators());
        Cell::from_check(gin_check(&c, m, &staircase, opts.seed)?)
    } else {
        Cell::Skipped
    };
    Ok(CaseResult {
        l,
        m,
        closed_form,
        hilbert,
        generators,
        gin,
        gin_generators,
    })
}

pub fn run(
    ls: RangeInclusive<u32>,
    ms: RangeInclusive<u64>,
    opts: &VerifyOptions,
) -> fatgin::Result<Vec<CaseResult>> {
    let mut results = Vec::new();
    for l in ls {
        for m in ms.clone() {
            results.push(run_case(l, m, opts)?);
        }
    }
    Ok(results)
}

pub fn matrix(results: &[CaseResult]) -> String {
    let mut out = String::new();
    let row = |cells: [&str; 6]| {
        format!(
            "{:>3} {:>4}  {:<11}  {:<7}  {:<10}  {}",
            cells[0], cells[1], cells[2], cells[3], cells[4], cells[5]
        )
    };
    let _ = writeln!(
        out,
        "{}",
        row(["l", "m", "closed-form", "hilbert", "generators", "gin"])
    );
    for r in results {
        let (l, m) = (r.l.to_string(), r.m.to_string());
        let line = row([
            &l,
            &m,
            r.closed_form.label(),
            r.hilbert.label(),
            r.generators.label(),
            r.gin.label(),
        ]);
        let _ = writeln!(out, "{line}");
    }
    for r in results {
        if let Some(n) = r.gin_generators {
            let status = if r.gin == Cell::Pass {
                "OK"
            } else {
                "MISMATCH"
            };
            let _ = writeln!(out, "gin: {status} ({n} generators) at l={} m={}", r.l, r.m);
        }
    }
    let passed = results
        .iter()
        .filter(|r| r.first_failure().is_none())
        .count();
    let _ = writeln!(out, "{passed}/{} cases pass", results.len());
    out
}
