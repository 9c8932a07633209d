//! Reference data: the published node labels `m_k` and the transcribed
//! Heisenberg-chart tables, with the gauge-aware comparison against
//! generated tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::heisenberg::{table_labels, HeisenbergTable};
use crate::polyring::Poly;
use crate::rootsys::{Family, SimpleType};

/// Published `m_k` in Bourbaki node order.
pub fn published_marks(ty: SimpleType) -> Option<Vec<i64>> {
    let n = ty.rank;
    Some(match ty.family {
        Family::A => vec![1; n],
        Family::B if n >= 2 => (0..n).map(|i| if i == 0 || i == n - 1 { 1 } else { 2 }).collect(),
        Family::C if n >= 2 => vec![1; n],
        Family::D if n >= 4 => (0..n).map(|i| if i == 0 || i >= n - 2 { 1 } else { 2 }).collect(),
        Family::E if n == 6 => vec![1, 2, 2, 3, 2, 1],
        Family::E if n == 7 => vec![2, 2, 3, 4, 3, 2, 1],
        Family::E if n == 8 => vec![2, 3, 4, 6, 5, 4, 3, 2],
        Family::F if n == 4 => vec![2, 3, 2, 1],
        Family::G if n == 2 => vec![1, 2],
        _ => return None,
    })
}

/// The types whose labels appear in the published figure.
pub fn figure_types() -> Vec<SimpleType> {
    let mut v = Vec::new();
    for n in 1..=8 {
        v.push(SimpleType::new(Family::A, n).unwrap());
    }
    for n in 2..=8 {
        v.push(SimpleType::new(Family::B, n).unwrap());
    }
    for n in 2..=8 {
        v.push(SimpleType::new(Family::C, n).unwrap());
    }
    for n in 4..=8 {
        v.push(SimpleType::new(Family::D, n).unwrap());
    }
    for (f, n) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
        v.push(SimpleType::new(f, n).unwrap());
    }
    v
}

#[derive(Debug, Clone)]
pub struct GoldenCell {
    pub order: u32,
    /// 1-based node.
    pub node: usize,
    pub poly: Poly,
    /// Cells known to be misprinted; a mismatch there is a warning.
    pub discrepancy: bool,
}

#[derive(Debug, Clone)]
pub struct GoldenTable {
    pub ty: SimpleType,
    pub cells: Vec<GoldenCell>,
}

const GOLDEN: [&str; 7] = [
    include_str!("../testdata/heisenberg/b2.txt"),
    include_str!("../testdata/heisenberg/d3.txt"),
    include_str!("../testdata/heisenberg/b3.txt"),
    include_str!("../testdata/heisenberg/d4.txt"),
    include_str!("../testdata/heisenberg/b4.txt"),
    include_str!("../testdata/heisenberg/d5.txt"),
    include_str!("../testdata/heisenberg/g2.txt"),
];

/// Parses one golden file: `type <T>` then `cell <order> <node> [discrepancy]: <poly>`.
pub fn parse_golden(text: &str) -> Result<GoldenTable> {
    let bad = |l: &str| Error::OutOfRange(format!("bad golden line `{l}`"));
    let mut ty: Option<SimpleType> = None;
    let mut cells = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(t) = line.strip_prefix("type ") {
            ty = Some(t.trim().parse()?);
        } else if let Some(rest) = line.strip_prefix("cell ") {
            let (head, poly) = rest.split_once(':').ok_or_else(|| bad(line))?;
            let words: Vec<&str> = head.split_whitespace().collect();
            if words.len() < 2 {
                return Err(bad(line));
            }
            let order = words[0].parse().map_err(|_| bad(line))?;
            let node = words[1].parse().map_err(|_| bad(line))?;
            let discrepancy = words.get(2) == Some(&"discrepancy");
            let t = ty.ok_or_else(|| bad(line))?;
            let nv = table_labels(t).map_or(0, |l| l.len());
            cells.push(GoldenCell { order, node, poly: Poly::parse(poly, nv)?, discrepancy });
        } else {
            return Err(bad(line));
        }
    }
    Ok(GoldenTable { ty: ty.ok_or_else(|| bad("missing type"))?, cells })
}

pub fn golden_tables() -> Vec<GoldenTable> {
    GOLDEN.iter().map(|t| parse_golden(t).expect("shipped golden files parse")).collect()
}

pub fn golden_table(ty: SimpleType) -> Option<GoldenTable> {
    golden_tables().into_iter().find(|g| g.ty == ty)
}

/// `p(s_0 x_0, s_1 x_1, ...)` for signs `s_i = +-1`.
pub fn apply_signs(p: &Poly, signs: &[i8]) -> Poly {
    let mut out = Poly::zero(p.nvars);
    for (m, c) in p.terms() {
        let odd = m.vars().filter(|&(v, e)| signs[v] < 0 && e % 2 == 1).count() % 2 == 1;
        out.add_term(m.clone(), if odd { -c.clone() } else { c.clone() });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    Match,
    Mismatch,
    /// Mismatch in a cell flagged as misprinted.
    Warning,
    /// Flagged cell that matches anyway.
    MatchFlagged,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellResult {
    pub order: u32,
    pub node: usize,
    pub status: CellStatus,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableComparison {
    pub r#type: String,
    /// Per-variable sign applied to the generated table.
    pub signs: Vec<i8>,
    /// Number of sign vectors consistent with the order-1 row.
    pub gauge_candidates: usize,
    pub cells: Vec<CellResult>,
}

impl TableComparison {
    pub fn passed(&self) -> bool {
        self.gauge_candidates > 0 && self.cells.iter().all(|c| c.status != CellStatus::Mismatch)
    }

    pub fn warnings(&self) -> usize {
        self.cells.iter().filter(|c| c.status == CellStatus::Warning).count()
    }
}

fn computed_cell<'a>(table: &'a HeisenbergTable, c: &GoldenCell) -> Option<&'a Poly> {
    table.cells.get(c.order as usize - 1)?.get(c.node - 1)
}

/// Compares a generated table (in table order) with a golden one. The sign
/// gauge is fitted on the order-1 row; among the fitting gauges the first one
/// that also fits the unflagged higher-order cells is kept, and that single
/// gauge is used for every cell.
pub fn compare_table(table: &HeisenbergTable, golden: &GoldenTable) -> TableComparison {
    let nv = table.labels.len();
    let order1: Vec<&GoldenCell> = golden.cells.iter().filter(|c| c.order == 1).collect();
    let higher: Vec<&GoldenCell> = golden.cells.iter().filter(|c| c.order > 1 && !c.discrepancy).collect();
    let fits = |signs: &[i8], cells: &[&GoldenCell]| {
        cells.iter().all(|c| computed_cell(table, c).is_some_and(|p| apply_signs(p, signs) == c.poly))
    };
    let mut candidates: Vec<Vec<i8>> = Vec::new();
    for mask in 0u32..(1u32 << nv) {
        let signs: Vec<i8> = (0..nv).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        if fits(&signs, &order1) {
            candidates.push(signs);
        }
    }
    let signs =
        candidates.iter().find(|s| fits(s, &higher)).or(candidates.first()).cloned().unwrap_or_else(|| vec![1; nv]);
    let cells = golden
        .cells
        .iter()
        .map(|c| {
            let got = computed_cell(table, c).map(|p| apply_signs(p, &signs));
            let ok = !candidates.is_empty() && got.as_ref() == Some(&c.poly);
            let status = match (ok, c.discrepancy) {
                (true, false) => CellStatus::Match,
                (true, true) => CellStatus::MatchFlagged,
                (false, true) => CellStatus::Warning,
                (false, false) => CellStatus::Mismatch,
            };
            CellResult {
                order: c.order,
                node: c.node,
                status,
                expected: c.poly.render(),
                computed: got.map_or_else(|| "missing".to_string(), |p| p.render()),
            }
        })
        .collect();
    TableComparison { r#type: golden.ty.to_string(), signs, gauge_candidates: candidates.len(), cells }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn golden_files_parse() {
        let g = golden_tables();
        assert_eq!(g.len(), 7);
        let b4 = g.iter().find(|t| t.ty.to_string() == "B4").unwrap();
        assert_eq!(b4.cells.iter().filter(|c| c.discrepancy).count(), 2);
        // the duplicated pair cancels as printed
        let c23 = b4.cells.iter().find(|c| c.order == 2 && c.node == 3).unwrap();
        assert_eq!(c23.poly.len(), 12);
    }

    #[test]
    fn marks_sum() {
        let e7: SimpleType = "E7".parse().unwrap();
        assert_eq!(published_marks(e7).unwrap().iter().sum::<i64>(), 17);
        assert_eq!(figure_types().len(), 8 + 7 + 7 + 5 + 5);
    }

    #[test]
    fn sign_substitution() {
        let p = Poly::parse("x0*x1 + x0^2 + 3*x2", 3).unwrap();
        let s = apply_signs(&p, &[-1, 1, -1]);
        assert_eq!(s, Poly::parse("-x0*x1 + x0^2 - 3*x2", 3).unwrap());
        assert_eq!(apply_signs(&s, &[-1, 1, -1]).coeff(&crate::polyring::Mono::var(2)), q(3));
    }
}
