//! Linear expressions over the family parameters and a small exact integer
//! solver for the systems that come out of pattern matching.

use std::fmt;

/// Family parameter names, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    N,
    M,
    R,
    S,
    K,
    L,
}

pub const PARAM_COUNT: usize = 6;

impl Param {
    pub const ALL: [Param; PARAM_COUNT] = [Param::N, Param::M, Param::R, Param::S, Param::K, Param::L];

    pub fn name(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::M => "m",
            Param::R => "r",
            Param::S => "s",
            Param::K => "k",
            Param::L => "l",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `constant + Σ coeffs[p] * p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LinExpr {
    pub constant: i64,
    pub coeffs: [i64; PARAM_COUNT],
}

impl LinExpr {
    pub fn constant(c: i64) -> Self {
        LinExpr {
            constant: c,
            ..Default::default()
        }
    }

    pub fn eval(&self, values: &[i64; PARAM_COUNT]) -> i64 {
        self.constant + self.coeffs.iter().zip(values).map(|(a, x)| a * x).sum::<i64>()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    pub fn sub(&self, other: &LinExpr) -> LinExpr {
        let mut out = *self;
        out.constant -= other.constant;
        for (a, b) in out.coeffs.iter_mut().zip(other.coeffs) {
            *a -= b;
        }
        out
    }

    pub fn add(&self, other: &LinExpr) -> LinExpr {
        let mut out = *self;
        out.constant += other.constant;
        for (a, b) in out.coeffs.iter_mut().zip(other.coeffs) {
            *a += b;
        }
        out
    }

    /// Parses sums like `n+1-r-s`, `2`, `m`.
    pub fn parse(text: &str) -> Result<LinExpr, String> {
        let mut out = LinExpr::default();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(format!("empty expression in {text:?}"));
        }
        let mut chars = s.chars().peekable();
        let mut sign = 1;
        let mut expect_term = true;
        while let Some(c) = chars.next() {
            match c {
                '+' | '-' if expect_term && c == '-' => sign = -sign,
                '+' | '-' if !expect_term => {
                    sign = if c == '-' { -1 } else { 1 };
                    expect_term = true;
                }
                d if d.is_ascii_digit() && expect_term => {
                    let mut v = d.to_digit(10).unwrap() as i64;
                    while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                        v = v * 10 + d as i64;
                        chars.next();
                    }
                    out.constant += sign * v;
                    expect_term = false;
                }
                p if expect_term => {
                    let param = Param::from_name(&p.to_string())
                        .ok_or_else(|| format!("unknown parameter {p:?} in {text:?}"))?;
                    out.coeffs[param.index()] += sign;
                    expect_term = false;
                }
                other => return Err(format!("unexpected {other:?} in {text:?}")),
            }
        }
        if expect_term {
            return Err(format!("dangling operator in {text:?}"));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `expr >= 0`
    NonNegative,
    /// `expr == 0`
    Zero,
}

/// A parsed constraint, keeping its source text for error messages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub expr: LinExpr,
    pub relation: Relation,
    pub text: &'static str,
}

impl Constraint {
    /// Parses `lhs >= rhs`, `lhs <= rhs` or `lhs = rhs`.
    pub fn parse(text: &'static str) -> Result<Constraint, String> {
        let (lhs, rhs, relation, flip) = if let Some((a, b)) = text.split_once(">=") {
            (a, b, Relation::NonNegative, false)
        } else if let Some((a, b)) = text.split_once("<=") {
            (a, b, Relation::NonNegative, true)
        } else if let Some((a, b)) = text.split_once('=') {
            (a, b, Relation::Zero, false)
        } else {
            return Err(format!("no relation in {text:?}"));
        };
        let (lhs, rhs) = (LinExpr::parse(lhs)?, LinExpr::parse(rhs)?);
        let expr = if flip { rhs.sub(&lhs) } else { lhs.sub(&rhs) };
        Ok(Constraint { expr, relation, text })
    }

    pub fn holds(&self, values: &[i64; PARAM_COUNT]) -> bool {
        let v = self.expr.eval(values);
        match self.relation {
            Relation::NonNegative => v >= 0,
            Relation::Zero => v == 0,
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Row `[constant, coeffs...]` meaning `constant + Σ coeffs·x = 0` (or `>= 0`).
type Row = [i128; PARAM_COUNT + 1];

fn to_row(e: &LinExpr) -> Row {
    let mut r = [0i128; PARAM_COUNT + 1];
    r[0] = e.constant as i128;
    for (i, &a) in e.coeffs.iter().enumerate() {
        r[i + 1] = a as i128;
    }
    r
}

fn normalize(row: &mut Row) {
    let g = row.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// Cancels column `col` of `r` against `pivot`, whose entry there is
/// positive, so `r` is only ever scaled by a positive factor.
fn eliminate(r: &mut Row, pivot: &Row, col: usize) {
    let a = r[col];
    if a != 0 {
        for (x, y) in r.iter_mut().zip(pivot.iter()) {
            *x = pivot[col] * *x - a * y;
        }
        normalize(r);
    }
}

/// Integer solutions of `eqs == 0`, `ineqs >= 0`, `0 <= x_p <= cap` over the
/// variables in `vars`; other parameters are fixed at zero.
///
/// Equalities are eliminated first; the remaining free variables are
/// enumerated in `vars` order, each within the interval implied by the
/// inequalities that mention no later free variable. Solutions come out in
/// lexicographic order of the free variables.
pub struct System {
    vars: Vec<Param>,
    /// `(pivot, row)`: `row` has a nonzero coefficient for `pivot` and zero
    /// for every other pivot.
    pivots: Vec<(Param, Row)>,
    free: Vec<Param>,
    /// Inequalities rewritten over free variables only, scaled by a
    /// positive factor.
    ineqs: Vec<Row>,
    inconsistent: bool,
    cap: i64,
}

impl System {
    pub fn new(vars: &[Param], eqs: &[LinExpr], ineqs: &[LinExpr], cap: i64) -> System {
        let declared = |e: &LinExpr| {
            let mut r = to_row(e);
            for q in Param::ALL {
                if !vars.contains(&q) {
                    r[q.index() + 1] = 0;
                }
            }
            r
        };
        let mut rows: Vec<Row> = eqs.iter().map(declared).collect();
        let mut pivots: Vec<(Param, Row)> = Vec::new();
        let mut free = Vec::new();
        for &p in vars {
            let col = p.index() + 1;
            let Some(at) = rows.iter().position(|r| r[col] != 0) else {
                free.push(p);
                continue;
            };
            let mut prow = rows.swap_remove(at);
            normalize(&mut prow);
            if prow[col] < 0 {
                prow.iter_mut().for_each(|x| *x = -*x);
            }
            for r in rows.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
                eliminate(r, &prow, col);
            }
            pivots.push((p, prow));
        }
        // Whatever is left mentions no variable at all.
        let inconsistent = rows.iter().any(|r| r[0] != 0);

        let mut system = System {
            vars: vars.to_vec(),
            pivots,
            free,
            ineqs: Vec::new(),
            inconsistent,
            cap,
        };
        let mut all: Vec<LinExpr> = ineqs.to_vec();
        for &p in vars {
            let mut lo = LinExpr::default();
            lo.coeffs[p.index()] = 1;
            let mut hi = LinExpr::constant(cap);
            hi.coeffs[p.index()] = -1;
            all.push(lo);
            all.push(hi);
        }
        system.ineqs = all.iter().map(|e| system.over_free(&declared(e))).collect();
        system
    }

    /// Substitutes every pivot in `row`, multiplying by positive pivot
    /// coefficients to stay integral.
    fn over_free(&self, row: &Row) -> Row {
        let mut r = *row;
        for (p, prow) in &self.pivots {
            eliminate(&mut r, prow, p.index() + 1);
        }
        r
    }

    /// Calls `visit` on each solution until it returns `false`.
    pub fn solve(&self, visit: &mut dyn FnMut(&[i64; PARAM_COUNT]) -> bool) {
        if self.inconsistent {
            return;
        }
        let mut values = [0i64; PARAM_COUNT];
        self.descend(0, &mut values, visit);
    }

    fn descend(
        &self,
        depth: usize,
        values: &mut [i64; PARAM_COUNT],
        visit: &mut dyn FnMut(&[i64; PARAM_COUNT]) -> bool,
    ) -> bool {
        if depth == self.free.len() {
            return match self.complete(values) {
                Some(full) => visit(&full),
                None => true,
            };
        }
        let f = self.free[depth];
        let later: Vec<usize> = self.free[depth + 1..].iter().map(|p| p.index() + 1).collect();
        let (mut lo, mut hi) = (0i128, self.cap as i128);
        for r in &self.ineqs {
            if later.iter().any(|&c| r[c] != 0) {
                continue;
            }
            let mut b = r[0];
            for q in &self.free[..depth] {
                b += r[q.index() + 1] * values[q.index()] as i128;
            }
            let a = r[f.index() + 1];
            if a > 0 {
                lo = lo.max((-b).div_euclid(a) + i128::from((-b).rem_euclid(a) != 0));
            } else if a < 0 {
                hi = hi.min(b.div_euclid(-a));
            } else if b < 0 {
                return true;
            }
        }
        let mut x = lo;
        while x <= hi {
            values[f.index()] = x as i64;
            if !self.descend(depth + 1, values, visit) {
                return false;
            }
            x += 1;
        }
        values[f.index()] = 0;
        true
    }

    /// Fills in pivots from the free values; `None` when not integral or an
    /// inequality fails.
    fn complete(&self, free_values: &[i64; PARAM_COUNT]) -> Option<[i64; PARAM_COUNT]> {
        let mut full = *free_values;
        for (p, row) in &self.pivots {
            let mut rest = row[0];
            for q in &self.free {
                rest += row[q.index() + 1] * free_values[q.index()] as i128;
            }
            let a = row[p.index() + 1];
            if rest % a != 0 {
                return None;
            }
            full[p.index()] = i64::try_from(-rest / a).ok()?;
        }
        let ok = self.ineqs.iter().all(|r| {
            let v = r[0]
                + self
                    .free
                    .iter()
                    .map(|q| r[q.index() + 1] * free_values[q.index()] as i128)
                    .sum::<i128>();
            v >= 0
        });
        debug_assert!(self.vars.iter().all(|p| full[p.index()] >= 0 || !ok));
        ok.then_some(full)
    }
}
