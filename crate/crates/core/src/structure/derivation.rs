//! Replayable derivations about small real algebras.
//!
//! A [`ContradictionReport`] is data: a list of rewriting steps, each of which
//! must hold under the report's product rules, and a conclusion that is
//! recomputed on replay. Nothing in a report is free text except the
//! justification labels.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::structure::rules::{basis_element, AlgExpr, Element, ProductRules};
use crate::structure::symbolic::SymPoly;
use crate::structure::table::ji_plus_k_table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// A basis element is forced to be a combination of the others.
    LinearDependence,
    /// A non-zero element is forced to vanish or two non-zero elements
    /// multiply to zero.
    ZeroDivisor,
    /// The forced equations have no real solution.
    NoRealSolution,
    Consistent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivationStep {
    pub expression: AlgExpr,
    pub rewritten: AlgExpr,
    pub justification: String,
}

/// Equality of the coefficients of one basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub component: usize,
    pub lhs: SymPoly,
    pub rhs: SymPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Conclusion {
    /// `left` and `right` bracket the same word differently; associativity
    /// forces `relation = eval(left) - eval(right)` to vanish.
    AssociativityClash {
        left: AlgExpr,
        right: AlgExpr,
        relation: Element,
        equations: Vec<Equation>,
    },
    /// Two non-zero elements whose product is zero.
    ZeroProduct { left: Element, right: Element },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContradictionReport {
    pub case_label: String,
    pub rules: ProductRules,
    pub derivation: Vec<DerivationStep>,
    pub conclusion: Conclusion,
    pub verdict: Verdict,
}

/// Why a report failed to replay.
#[derive(Debug, Clone, PartialEq)]
pub enum ReplayFailure {
    StepMismatch { index: usize },
    StepUndetermined { index: usize, message: String },
    NotARebracketing,
    RelationMismatch,
    EquationMismatch,
    TrivialFactor,
    NonZeroProduct,
    VerdictMismatch { stored: Verdict, recomputed: Verdict },
}

/// A parametric equation `lhs = rhs` with no real solution.
fn unsolvable(e: &Equation) -> bool {
    let d = &e.lhs - &e.rhs;
    !d.is_constant() && (d.is_positive_definite_sum_of_squares() || (-&d).is_positive_definite_sum_of_squares())
}

fn classify_relation(relation: &Element, equations: &[Equation]) -> Verdict {
    if equations.iter().any(unsolvable) {
        return Verdict::NoRealSolution;
    }
    if relation.iter().all(SymPoly::is_zero) {
        return Verdict::Consistent;
    }
    if relation.iter().all(SymPoly::is_constant) {
        let nonzero = relation.iter().filter(|c| !c.is_zero()).count();
        return if nonzero == 1 { Verdict::ZeroDivisor } else { Verdict::LinearDependence };
    }
    Verdict::Consistent
}

impl ContradictionReport {
    /// Re-evaluates every step and recomputes the conclusion and verdict.
    pub fn replay(&self) -> Result<(), ReplayFailure> {
        for (index, step) in self.derivation.iter().enumerate() {
            let undetermined = |e: crate::error::StructureError| ReplayFailure::StepUndetermined { index, message: e.to_string() };
            let a = self.rules.eval(&step.expression).map_err(undetermined)?;
            let b = self.rules.eval(&step.rewritten).map_err(undetermined)?;
            if a != b {
                return Err(ReplayFailure::StepMismatch { index });
            }
        }
        let recomputed = match &self.conclusion {
            Conclusion::AssociativityClash { left, right, relation, equations } => {
                if left.leaves() != right.leaves() || left == right {
                    return Err(ReplayFailure::NotARebracketing);
                }
                let (l, r) = self.clash_values(left, right).map_err(|message| ReplayFailure::StepUndetermined {
                    index: self.derivation.len(),
                    message,
                })?;
                let rel: Element = l.iter().zip(&r).map(|(a, b)| a - b).collect();
                if &rel != relation {
                    return Err(ReplayFailure::RelationMismatch);
                }
                if equations != &component_equations(&l, &r) {
                    return Err(ReplayFailure::EquationMismatch);
                }
                classify_relation(relation, equations)
            }
            Conclusion::ZeroProduct { left, right } => {
                if left.iter().all(SymPoly::is_zero) || right.iter().all(SymPoly::is_zero) {
                    return Err(ReplayFailure::TrivialFactor);
                }
                let p = self.rules.mul(left, right).map_err(|e| ReplayFailure::StepUndetermined {
                    index: self.derivation.len(),
                    message: e.to_string(),
                })?;
                if !p.iter().all(SymPoly::is_zero) {
                    return Err(ReplayFailure::NonZeroProduct);
                }
                Verdict::ZeroDivisor
            }
        };
        if recomputed != self.verdict {
            return Err(ReplayFailure::VerdictMismatch { stored: self.verdict, recomputed });
        }
        Ok(())
    }

    fn clash_values(&self, left: &AlgExpr, right: &AlgExpr) -> Result<(Element, Element), String> {
        let l = self.rules.eval(left).map_err(|e| e.to_string())?;
        let r = self.rules.eval(right).map_err(|e| e.to_string())?;
        Ok((l, r))
    }

    /// One-line statement of what the conclusion forces.
    pub fn summary(&self) -> String {
        let r = &self.rules;
        match &self.conclusion {
            Conclusion::AssociativityClash { left, right, relation, equations } => {
                let l = r.render_expr(left);
                let rr = r.render_expr(right);
                match self.verdict {
                    Verdict::NoRealSolution => {
                        let bad = equations
                            .iter()
                            .find(|e| unsolvable(e))
                            .map(|e| render_equation(r, e))
                            .unwrap_or_default();
                        format!("associativity {l} = {rr} forces {bad}, which has no real solution")
                    }
                    Verdict::Consistent => format!("associativity {l} = {rr} imposes no contradiction"),
                    _ => {
                        let (name, value) = solve_for_last(r, relation);
                        let tail = if self.verdict == Verdict::ZeroDivisor {
                            format!("the non-zero element {name} would vanish")
                        } else {
                            format!("{name} is a linear combination of the other basis elements, so they are not linearly independent")
                        };
                        format!("associativity {l} = {rr} forces {name} = {value}: {tail}")
                    }
                }
            }
            Conclusion::ZeroProduct { left, right } => format!(
                "({})({}) = 0 with both factors non-zero: zero divisors",
                r.render_element(left),
                r.render_element(right)
            ),
        }
    }

    pub fn render_text(&self) -> String {
        let r = &self.rules;
        let mut out = format!("case {}\n", self.case_label);
        let width = self.derivation.iter().map(|s| r.render_expr(&s.expression).len() + r.render_expr(&s.rewritten).len()).max().unwrap_or(0);
        for s in &self.derivation {
            let body = format!("{} = {}", r.render_expr(&s.expression), r.render_expr(&s.rewritten));
            let _ = writeln!(out, "  {body:<w$}   [{}]", s.justification, w = width + 3);
        }
        if let Conclusion::AssociativityClash { equations, .. } = &self.conclusion {
            for e in equations {
                let _ = writeln!(out, "  coefficient of {}: {}", r.basis()[e.component], render_equation(r, e));
            }
        }
        let _ = writeln!(out, "  => {}", self.summary());
        let _ = writeln!(out, "  verdict: {:?}", self.verdict);
        out
    }

    pub fn to_json(&self) -> Value {
        let r = &self.rules;
        let steps: Vec<Value> = self
            .derivation
            .iter()
            .map(|s| {
                json!({
                    "expression": r.render_expr(&s.expression),
                    "rewritten": r.render_expr(&s.rewritten),
                    "justification": s.justification,
                })
            })
            .collect();
        let conclusion = match &self.conclusion {
            Conclusion::AssociativityClash { left, right, relation, equations } => json!({
                "kind": "associativity",
                "left": r.render_expr(left),
                "right": r.render_expr(right),
                "relation": r.render_element(relation),
                "equations": equations.iter().map(|e| json!({
                    "component": r.basis()[e.component],
                    "equation": render_equation(r, e),
                })).collect::<Vec<_>>(),
            }),
            Conclusion::ZeroProduct { left, right } => json!({
                "kind": "zero-product",
                "left": r.render_element(left),
                "right": r.render_element(right),
            }),
        };
        json!({
            "case": self.case_label,
            "basis": r.basis(),
            "params": r.params(),
            "derivation": steps,
            "conclusion": conclusion,
            "summary": self.summary(),
            "verdict": self.verdict,
            "replayed": self.replay().is_ok(),
        })
    }
}

pub fn render_equation(r: &ProductRules, e: &Equation) -> String {
    format!("{} = {}", e.lhs.render(r.params()), e.rhs.render(r.params()))
}

fn component_equations(l: &Element, r: &Element) -> Vec<Equation> {
    l.iter()
        .zip(r)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(component, (a, b))| Equation { component, lhs: a.clone(), rhs: b.clone() })
        .collect()
}

/// Solves the constant relation `Σ c_t e_t = 0` for its last basis element.
fn solve_for_last(r: &ProductRules, relation: &Element) -> (String, String) {
    let consts: Vec<BigRational> = relation.iter().map(|c| c.as_constant().unwrap_or_else(BigRational::zero)).collect();
    let last = consts.iter().rposition(|c| !c.is_zero()).expect("non-zero relation");
    let value: Element = consts
        .iter()
        .enumerate()
        .map(|(t, c)| if t == last { SymPoly::zero() } else { SymPoly::constant(-c / &consts[last]) })
        .collect();
    (r.basis()[last].clone(), r.render_element(&value))
}

/// Replaces every product `e_a e_b` of basis symbols by `value`.
fn substitute(e: &AlgExpr, pair: (usize, usize), value: &AlgExpr) -> AlgExpr {
    match e {
        AlgExpr::Mul(a, b) => {
            if let (AlgExpr::Basis(x), AlgExpr::Basis(y)) = (&**a, &**b) {
                if (*x, *y) == pair {
                    return value.clone();
                }
            }
            AlgExpr::mul(substitute(a, pair, value), substitute(b, pair, value))
        }
        AlgExpr::Scale(c, inner) => AlgExpr::Scale(c.clone(), Box::new(substitute(inner, pair, value))),
        AlgExpr::Neg(inner) => AlgExpr::Neg(Box::new(substitute(inner, pair, value))),
        AlgExpr::Sum(parts) => AlgExpr::Sum(parts.iter().map(|p| substitute(p, pair, value)).collect()),
        other => other.clone(),
    }
}

/// Distributes a product over sums and pulls real scalars out, one level.
fn distribute(e: &AlgExpr) -> AlgExpr {
    match e {
        AlgExpr::Mul(a, b) => match (&**a, &**b) {
            (x, AlgExpr::Sum(parts)) => AlgExpr::Sum(parts.iter().map(|p| distribute(&AlgExpr::mul(x.clone(), p.clone()))).collect()),
            (AlgExpr::Sum(parts), y) => AlgExpr::Sum(parts.iter().map(|p| distribute(&AlgExpr::mul(p.clone(), y.clone()))).collect()),
            (x, AlgExpr::Scale(c, z)) => AlgExpr::Scale(c.clone(), Box::new(AlgExpr::mul(x.clone(), (**z).clone()))),
            (x, AlgExpr::Scalar(c)) => AlgExpr::Scale(c.clone(), Box::new(x.clone())),
            (x, AlgExpr::Neg(z)) => AlgExpr::Neg(Box::new(AlgExpr::mul(x.clone(), (**z).clone()))),
            (AlgExpr::Neg(z), y) => AlgExpr::Neg(Box::new(AlgExpr::mul((**z).clone(), y.clone()))),
            _ => e.clone(),
        },
        other => other.clone(),
    }
}

struct Builder {
    rules: ProductRules,
    steps: Vec<DerivationStep>,
}

impl Builder {
    fn step(&mut self, from: &AlgExpr, to: AlgExpr, why: impl Into<String>) -> AlgExpr {
        if &to != from {
            self.steps.push(DerivationStep { expression: from.clone(), rewritten: to.clone(), justification: why.into() });
        }
        to
    }

    fn normalize(&mut self, from: &AlgExpr, why: &str) -> AlgExpr {
        let value = self.rules.eval(from).expect("determined by the rules");
        self.step(from, AlgExpr::from_element(&value), why)
    }

    fn clash(self, label: String, left: AlgExpr, right: AlgExpr) -> ContradictionReport {
        let l = self.rules.eval(&left).expect("determined");
        let r = self.rules.eval(&right).expect("determined");
        let relation: Element = l.iter().zip(&r).map(|(a, b)| a - b).collect();
        let equations = component_equations(&l, &r);
        let verdict = classify_relation(&relation, &equations);
        ContradictionReport {
            case_label: label,
            rules: self.rules,
            derivation: self.steps,
            conclusion: Conclusion::AssociativityClash { left, right, relation, equations },
            verdict,
        }
    }
}

const I: usize = 1;
const J: usize = 2;

fn triplet_rules(params: &[&str]) -> ProductRules {
    let mut r = ProductRules::new(&["1", "i", "j"], params);
    let minus_one = vec![SymPoly::int(-1), SymPoly::zero(), SymPoly::zero()];
    r.set(I, I, minus_one.clone());
    r.set(J, J, minus_one);
    r
}

fn basis(b: usize) -> AlgExpr {
    AlgExpr::Basis(b)
}

/// The seven cases `ij ∈ {+1, -1, +i, -i, +j, -j, 0}` for a hypothetical
/// three-dimensional algebra on `{1, i, j}` with `i² = j² = -1`.
///
/// Cases `±1` and `±i` compare `i(ij)` with `(ii)j`; cases `±j` and `0`
/// compare `(ij)j` with `i(jj)`. Associativity then forces a linear relation
/// between basis elements (or forces `i = 0`).
pub fn triplet_case_analysis() -> Vec<ContradictionReport> {
    let cases: [(&str, i64, usize); 7] = [
        ("ij=+1", 1, 0),
        ("ij=-1", -1, 0),
        ("ij=+i", 1, I),
        ("ij=-i", -1, I),
        ("ij=+j", 1, J),
        ("ij=-j", -1, J),
        ("ij=0", 0, 0),
    ];
    cases
        .into_iter()
        .map(|(label, sign, target)| {
            let mut rules = triplet_rules(&[]);
            let value: Element = if sign == 0 {
                vec![SymPoly::zero(); 3]
            } else {
                let mut v = basis_element(3, target);
                v[target] = SymPoly::int(sign);
                v
            };
            rules.set(I, J, value.clone());
            let value_expr = AlgExpr::from_element(&value);
            let mut b = Builder { rules, steps: Vec::new() };
            let minus_one = AlgExpr::int(-1);
            let (left, right) = if target == J || sign == 0 {
                // (ij)j against i(jj)
                (AlgExpr::mul(AlgExpr::mul(basis(I), basis(J)), basis(J)), AlgExpr::mul(basis(I), AlgExpr::mul(basis(J), basis(J))))
            } else {
                // i(ij) against (ii)j
                (AlgExpr::mul(basis(I), AlgExpr::mul(basis(I), basis(J))), AlgExpr::mul(AlgExpr::mul(basis(I), basis(I)), basis(J)))
            };
            let value_text = b.rules.render_expr(&value_expr);
            let s = b.step(&left, substitute(&left, (I, J), &value_expr), format!("case ij = {value_text}"));
            let s = b.step(&s, substitute(&s, (I, I), &minus_one), "i² = -1");
            let s = b.step(&s, substitute(&s, (J, J), &minus_one), "j² = -1");
            b.normalize(&s, "expand");
            let s = b.step(&right, substitute(&right, (I, I), &minus_one), "i² = -1");
            let s = b.step(&s, substitute(&s, (J, J), &minus_one), "j² = -1");
            b.normalize(&s, "expand");
            b.clash(label.to_string(), left, right)
        })
        .collect()
}

/// The case `ij = α + βi + γj` with real unknowns: comparing `i(ij)` with
/// `(ii)j = -j` gives three coefficient equations, the last being `γ² = -1`.
pub fn triplet_general_obstruction() -> ContradictionReport {
    let mut rules = triplet_rules(&["α", "β", "γ"]);
    let value = vec![SymPoly::param(0), SymPoly::param(1), SymPoly::param(2)];
    rules.set(I, J, value.clone());
    let value_expr = AlgExpr::Sum(vec![
        AlgExpr::Scalar(SymPoly::param(0)),
        AlgExpr::Scale(SymPoly::param(1), Box::new(basis(I))),
        AlgExpr::Scale(SymPoly::param(2), Box::new(basis(J))),
    ]);
    debug_assert_eq!(rules.eval(&value_expr).unwrap(), value);
    let mut b = Builder { rules, steps: Vec::new() };
    let minus_one = AlgExpr::int(-1);
    let left = AlgExpr::mul(basis(I), AlgExpr::mul(basis(I), basis(J)));
    let right = AlgExpr::mul(AlgExpr::mul(basis(I), basis(I)), basis(J));
    let s = b.step(&left, substitute(&left, (I, J), &value_expr), "ij = α+βi+γj");
    let s = b.step(&s, distribute(&s), "distribute");
    let s = b.step(&s, substitute(&s, (I, I), &minus_one), "i² = -1");
    let s = b.step(&s, substitute(&s, (I, J), &value_expr), "ij = α+βi+γj");
    b.normalize(&s, "collect coefficients");
    let s = b.step(&right, substitute(&right, (I, I), &minus_one), "i² = -1");
    b.normalize(&s, "expand");
    b.clash("ij=α+βi+γj".to_string(), left, right)
}

/// Assumes `ij = k` and `ji = k`. Then `k² = (ij)(ij) = i(ji)j = i(ij)j =
/// (ii)(jj) = 1`, and `(1+k)(1-k) = 1 - k² = 0`.
pub fn ji_equals_k_zero_divisors() -> ContradictionReport {
    let table = ji_plus_k_table();
    let rules = table.to_rules();
    let k = 3;
    let mut b = Builder { rules, steps: Vec::new() };
    let ij = || AlgExpr::mul(basis(I), basis(J));
    let ji = || AlgExpr::mul(basis(J), basis(I));
    let kk = AlgExpr::mul(basis(k), basis(k));
    let s = b.step(&kk, AlgExpr::mul(ij(), ij()), "k = ij");
    let s = b.step(&s, AlgExpr::mul(AlgExpr::mul(basis(I), ji()), basis(J)), "associativity");
    let s = b.step(&s, AlgExpr::mul(AlgExpr::mul(basis(I), ij()), basis(J)), "ji = k = ij");
    let s = b.step(&s, AlgExpr::mul(AlgExpr::mul(basis(I), basis(I)), AlgExpr::mul(basis(J), basis(J))), "associativity");
    let s = b.step(&s, AlgExpr::mul(AlgExpr::int(-1), AlgExpr::int(-1)), "i² = j² = -1");
    b.normalize(&s, "arithmetic");

    let one_plus_k = AlgExpr::Sum(vec![basis(0), basis(k)]);
    let one_minus_k = AlgExpr::Sum(vec![basis(0), AlgExpr::Neg(Box::new(basis(k)))]);
    let prod = AlgExpr::mul(one_plus_k, one_minus_k);
    let minus_kk = AlgExpr::Neg(Box::new(kk.clone()));
    let s = b.step(&prod, AlgExpr::Sum(vec![basis(0), minus_kk]), "distribute; -k + k cancel");
    let s = b.step(&s, AlgExpr::Sum(vec![basis(0), AlgExpr::int(-1)]), "k² = 1");
    b.normalize(&s, "arithmetic");

    let mut left = vec![SymPoly::zero(); 4];
    left[0] = SymPoly::int(1);
    left[k] = SymPoly::int(1);
    let mut right = left.clone();
    right[k] = SymPoly::int(-1);
    ContradictionReport {
        case_label: "ji=+k".to_string(),
        rules: b.rules,
        derivation: b.steps,
        conclusion: Conclusion::ZeroProduct { left, right },
        verdict: Verdict::ZeroDivisor,
    }
}
