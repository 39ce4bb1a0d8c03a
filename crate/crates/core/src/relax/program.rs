//! The BLP/AIP equation system of an instance over a template.
//!
//! Variables: `μ_v(a)` for every element `v` of the instance and `a` of the
//! template, and `μ_{v̄,R}(ā)` for every tuple `v̄ ∈ R^I` and `ā ∈ R^A`.
//! Rows, in this order:
//!
//! 1. `Σ_a μ_v(a) = 1` for every `v`;
//! 2. `Σ_ā μ_{v̄,R}(ā) = 1` for every constraint tuple;
//! 3. `Σ_{ā: āᵢ = a} μ_{v̄,R}(ā) − μ_{v̄ᵢ}(a) = 0` for every constraint
//!    tuple, position `i` and value `a`.

use std::fmt::Write as _;

use super::numeric::{Int, Rational};
use crate::error::Result;
use crate::structure::Structure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bounds {
    /// Every variable in `[0, 1]` (BLP).
    UnitInterval,
    /// Unrestricted integers (AIP).
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramKind {
    Blp,
    Aip,
}

/// `M x = c` with a bound kind on `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    columns: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    bounds: Bounds,
}

impl LinearSystem {
    pub fn new(columns: usize, bounds: Bounds) -> Self {
        LinearSystem {
            columns,
            rows: Vec::new(),
            rhs: Vec::new(),
            bounds,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, rhs: Vec<Rational>, columns: usize, bounds: Bounds) -> Self {
        assert_eq!(rows.len(), rhs.len());
        assert!(rows.iter().all(|r| r.len() == columns));
        LinearSystem {
            columns,
            rows,
            rhs,
            bounds,
        }
    }

    /// Integer matrix convenience constructor.
    pub fn from_integers(rows: &[Vec<i64>], rhs: &[i64], bounds: Bounds) -> Self {
        let columns = rows.first().map_or(0, Vec::len);
        LinearSystem::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect(),
            rhs.iter().map(|&x| Rational::from(x)).collect(),
            columns,
            bounds,
        )
    }

    pub fn push_row(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.columns);
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Adds the row `x_j = value`.
    pub fn fix_column(&mut self, j: usize, value: Rational) {
        let mut row = vec![Rational::zero(); self.columns];
        row[j] = Rational::one();
        self.push_row(row, value);
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    /// Whether `x` satisfies every row exactly, and the bounds.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.columns {
            return false;
        }
        let in_bounds = match self.bounds {
            Bounds::UnitInterval => x.iter().all(|v| !v.is_negative() && *v <= Rational::one()),
            Bounds::Integer => x.iter().all(Rational::is_integer),
        };
        in_bounds
            && self.rows.iter().zip(&self.rhs).all(|(row, c)| {
                let mut acc = Rational::zero();
                for (a, v) in row.iter().zip(x) {
                    if !a.is_zero() && !v.is_zero() {
                        acc = acc + a * v;
                    }
                }
                acc == *c
            })
    }

    pub fn satisfied_by_integers(&self, x: &[Int]) -> bool {
        let r: Vec<Rational> = x.iter().cloned().map(Rational::from).collect();
        self.satisfied_by(&r)
    }

    /// One line per row: coefficients in column order, `|`, right-hand side.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (row, c) in self.rows.iter().zip(&self.rhs) {
            for (j, a) in row.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{a}");
            }
            let _ = writeln!(out, " | {c}");
        }
        out
    }
}

/// Column layout of a program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramVariables {
    template_size: usize,
    vertices: usize,
    /// First column of each constraint tuple's block, by symbol then tuple.
    block_start: Vec<Vec<usize>>,
    /// `|R^A|` per symbol.
    block_len: Vec<usize>,
    columns: usize,
}

impl ProgramVariables {
    pub fn vertex(&self, v: usize, a: usize) -> usize {
        v * self.template_size + a
    }

    /// Column of `μ_{v̄,R}(ā)` where `v̄` is tuple number `tuple` of `R^I`
    /// and `ā` is tuple number `a_index` of `R^A`.
    pub fn constraint(&self, symbol: usize, tuple: usize, a_index: usize) -> usize {
        self.block_start[symbol][tuple] + a_index
    }

    pub fn vertex_columns(&self) -> usize {
        self.vertices * self.template_size
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn block_len(&self, symbol: usize) -> usize {
        self.block_len[symbol]
    }

    /// The vertex block of a point: `μ_v(a)` for each `v`, `a`.
    pub fn vertex_values<'a, T>(&self, x: &'a [T], v: usize) -> &'a [T] {
        &x[v * self.template_size..(v + 1) * self.template_size]
    }
}

/// The program of instance `i` over template `a`.
pub fn build_program(a: &Structure, i: &Structure, kind: ProgramKind) -> Result<(LinearSystem, ProgramVariables)> {
    i.require_similar(a)?;
    let na = a.domain_size();
    let ni = i.domain_size();
    let mut columns = ni * na;
    let mut block_start = Vec::new();
    let mut block_len = Vec::new();
    for (ri, ra) in i.relations().iter().zip(a.relations()) {
        let mut starts = Vec::with_capacity(ri.len());
        for _ in 0..ri.len() {
            starts.push(columns);
            columns += ra.len();
        }
        block_start.push(starts);
        block_len.push(ra.len());
    }
    let vars = ProgramVariables {
        template_size: na,
        vertices: ni,
        block_start,
        block_len,
        columns,
    };
    let bounds = match kind {
        ProgramKind::Blp => Bounds::UnitInterval,
        ProgramKind::Aip => Bounds::Integer,
    };
    let mut sys = LinearSystem::new(columns, bounds);
    let zero_row = || vec![Rational::zero(); columns];

    for v in 0..ni {
        let mut row = zero_row();
        for x in 0..na {
            row[vars.vertex(v, x)] = Rational::one();
        }
        sys.push_row(row, Rational::one());
    }
    for (r, (ri, ra)) in i.relations().iter().zip(a.relations()).enumerate() {
        for t in 0..ri.len() {
            let mut row = zero_row();
            for ai in 0..ra.len() {
                row[vars.constraint(r, t, ai)] = Rational::one();
            }
            sys.push_row(row, Rational::one());
        }
    }
    for (r, (ri, ra)) in i.relations().iter().zip(a.relations()).enumerate() {
        for (t, vt) in ri.tuples().enumerate() {
            for (pos, &v) in vt.iter().enumerate() {
                for x in 0..na {
                    let mut row = zero_row();
                    for (ai, at) in ra.tuples().enumerate() {
                        if at[pos] == x {
                            row[vars.constraint(r, t, ai)] = Rational::one();
                        }
                    }
                    let c = vars.vertex(v, x);
                    row[c] = &row[c] - &Rational::one();
                    sys.push_row(row, Rational::zero());
                }
            }
        }
    }
    Ok((sys, vars))
}

/// The 0/1 point of a homomorphism `h: I → A`.
pub fn integral_point(a: &Structure, i: &Structure, h: &[usize], vars: &ProgramVariables) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); vars.columns()];
    for (v, &hv) in h.iter().enumerate() {
        x[vars.vertex(v, hv)] = Rational::one();
    }
    let mut image = Vec::new();
    for (r, (ri, ra)) in i.relations().iter().zip(a.relations()).enumerate() {
        for (t, vt) in ri.tuples().enumerate() {
            image.clear();
            image.extend(vt.iter().map(|&v| h[v]));
            if let Some(ai) = ra.tuples().position(|at| at == image.as_slice()) {
                x[vars.constraint(r, t, ai)] = Rational::one();
            }
        }
    }
    x
}
