//! Cross-checks between equation-side and parametrisation-side invariants.

use serde::Serialize;

use super::equation::{eq_invariants, inflection_count_eq, vertex_count_eq, InvariantReport};
use super::param::{param_invariants, ParamInvariants, Trunc};
use crate::arith::{eval_on_curve, BiPoly, ExtendedNat, Finite, Infinite, ParamCurve};
use crate::catalog::minima;
use crate::error::{CurveError, Result};
use crate::intersection::{intersection_multiplicity, milnor_number, teissier_check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// `=`, `<=` or `>=`, read as `computed <relation> expected`.
    pub relation: &'static str,
    pub expected: Option<ExtendedNat>,
    pub computed: Option<ExtendedNat>,
    pub status: Status,
    pub informational: bool,
    pub detail: String,
}

impl Check {
    fn compare(
        name: &str,
        relation: &'static str,
        computed: ExtendedNat,
        expected: ExtendedNat,
        detail: String,
    ) -> Check {
        let both_finite = computed.is_finite() && expected.is_finite();
        let ok = match relation {
            "=" => computed == expected,
            "<=" => computed <= expected,
            ">=" => computed >= expected,
            _ => unreachable!(),
        };
        Check {
            name: name.to_string(),
            relation,
            expected: Some(expected),
            computed: Some(computed),
            status: if relation != "=" && !both_finite {
                Status::NotApplicable
            } else if ok {
                Status::Pass
            } else {
                Status::Fail
            },
            informational: false,
            detail,
        }
    }

    fn skipped(name: &str, detail: &str) -> Check {
        Check {
            name: name.to_string(),
            relation: "=",
            expected: None,
            computed: None,
            status: Status::NotApplicable,
            informational: false,
            detail: detail.to_string(),
        }
    }

    fn informational(mut self) -> Check {
        self.informational = true;
        self
    }

    /// A failed check that is not informational.
    pub fn is_hard_failure(&self) -> bool {
        self.status == Status::Fail && !self.informational
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<Check>,
}

impl RelationReport {
    pub fn hard_failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.is_hard_failure()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub trunc: Trunc,
    pub seed: u64,
    /// Defining equations of the branches, in branch order, when known.
    pub factors: Vec<BiPoly>,
}

/// Everything the report needs, with both sides of each identity computed separately.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub equation: InvariantReport,
    pub branches: Vec<ParamInvariants>,
    pub relations: RelationReport,
}

/// Fails with `BranchMismatch` unless every branch lies on `f = 0`.
pub fn check_branches(f: &BiPoly, branches: &[ParamCurve]) -> Result<()> {
    for (index, g) in branches.iter().enumerate() {
        let on_curve = match g.annihilated_by(f) {
            Some(v) => v,
            None => eval_on_curve(f, g).is_zero(),
        };
        if !on_curve {
            let s = eval_on_curve(f, g);
            return Err(CurveError::BranchMismatch {
                index,
                detail: format!(
                    "f o gamma has order {}",
                    s.order().map(|k| k.to_string()).unwrap_or_else(|_| "?".into())
                ),
            });
        }
    }
    Ok(())
}

fn sum(v: impl Iterator<Item = ExtendedNat>) -> ExtendedNat {
    v.sum()
}

fn pairwise(factors: &[BiPoly]) -> Result<ExtendedNat> {
    let mut total = Finite(0);
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            total = total + intersection_multiplicity(&factors[i], &factors[j])?;
        }
    }
    Ok(total)
}

fn times(k: u64, v: ExtendedNat) -> ExtendedNat {
    match v {
        Finite(n) => Finite(k * n),
        Infinite => Infinite,
    }
}

/// `a + b - c` in N ∪ {∞}, `None` when it would go negative.
fn plus_minus(a: ExtendedNat, b: u64, c: u64) -> ExtendedNat {
    match a {
        Finite(n) => Finite((n + b).saturating_sub(c)),
        Infinite => Infinite,
    }
}

pub fn relation_report(f: &BiPoly, branches: &[ParamCurve], opts: &ReportOptions) -> Result<Verification> {
    check_branches(f, branches)?;
    let eq = eq_invariants(f, (!branches.is_empty()).then_some(branches.len()))?;
    let params: Vec<ParamInvariants> = branches
        .iter()
        .map(|g| param_invariants(g, opts.trunc))
        .collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let mu = eq.milnor;
    let n = branches.len() as u64;

    let t = teissier_check(f, opts.seed)?;
    checks.push(Check::compare(
        "teissier",
        "=",
        t.lhs,
        t.rhs,
        match &t.change {
            Some(c) => format!("m(f, f_y) against mu + ord f(0,y) - 1 after {}", c),
            None => "m(f, f_y) against mu + ord f(0,y) - 1".to_string(),
        },
    ));

    if branches.is_empty() {
        checks.push(Check::skipped(
            "inflection_bridge",
            "no branch parametrisation supplied",
        ));
        checks.push(Check::skipped("vertex_bridge", "no branch parametrisation supplied"));
    } else if !eq.i_f.is_finite() || !mu.is_finite() {
        checks.push(Check::skipped("inflection_bridge", "I_f or mu infinite"));
        checks.push(Check::skipped("vertex_bridge", "I_f or mu infinite"));
    } else {
        let correction = mu + (n - 1);
        let ig = sum(params.iter().map(|p| p.i_gamma));
        let vg = sum(params.iter().map(|p| p.v_gamma));
        checks.push(Check::compare(
            "inflection_bridge",
            "=",
            eq.i_f,
            ig + times(3, correction),
            format!("I_f against sum I_gamma + 3(mu + {} - 1)", n),
        ));
        if eq.v_f.is_finite() {
            checks.push(Check::compare(
                "vertex_bridge",
                "=",
                eq.v_f,
                vg + times(6, correction),
                format!("V_f against sum V_gamma + 6(mu + {} - 1)", n),
            ));
        } else {
            checks.push(Check::skipped("vertex_bridge", "V_f infinite"));
        }
    }

    for (i, p) in params.iter().enumerate() {
        let name = format!("lambda_bridge[{}]", i);
        if p.i_gamma.is_finite() && p.v_gamma.is_finite() && p.lambda.is_finite() {
            let lam = p.lambda.finite().unwrap();
            checks.push(Check::compare(
                &name,
                "=",
                p.v_gamma,
                plus_minus(p.i_gamma, lam, 3),
                "V_gamma against I_gamma + lambda - 3".to_string(),
            ));
        } else {
            checks.push(Check::skipped(&name, "an entry is infinite"));
        }
        let name = format!("lambda_closed_form[{}]", i);
        match p.lambda_closed_form {
            Some(l) => checks.push(Check::compare(
                &name,
                "=",
                p.lambda,
                l,
                "staircase lambda against the pure-power closed form".to_string(),
            )),
            None => checks.push(Check::skipped(&name, "closed form does not apply")),
        }
    }

    if opts.factors.len() >= 2 {
        let m_sum = pairwise(&opts.factors)?;
        let mut fi = Vec::new();
        let mut fv = Vec::new();
        let mut fm = Vec::new();
        for g in &opts.factors {
            fi.push(inflection_count_eq(g)?.value);
            fv.push(vertex_count_eq(g)?.value);
            fm.push(milnor_number(g)?);
        }
        checks.push(Check::compare(
            "inflection_product",
            "=",
            eq.i_f,
            sum(fi.into_iter()) + times(6, m_sum),
            "I_f against sum I_{f_i} + 6 sum m(f_i, f_j)".to_string(),
        ));
        checks.push(Check::compare(
            "vertex_product",
            "=",
            eq.v_f,
            sum(fv.into_iter()) + times(12, m_sum),
            "V_f against sum V_{f_i} + 12 sum m(f_i, f_j)".to_string(),
        ));
        let k = opts.factors.len() as u64;
        checks.push(Check::compare(
            "milnor_branch_identity",
            "=",
            mu,
            plus_minus(sum(fm.into_iter()) + times(2, m_sum), 1, k),
            "mu against sum mu_i + 2 sum m(f_i, f_j) - n + 1".to_string(),
        ));
    }

    if eq.mult == 1 {
        let tangent = f.tangent_cone()?;
        let contact = intersection_multiplicity(f, &tangent)?;
        checks.push(Check::compare(
            "smooth_contact",
            "=",
            contact,
            eq.i_f + 2,
            "order of contact with the tangent line against I_f + 2".to_string(),
        ));
    }

    if let [p] = params.as_slice() {
        if p.m >= 2 {
            irreducible_checks(&eq, p, &mut checks);
        }
    }

    Ok(Verification {
        equation: eq,
        branches: params,
        relations: RelationReport { checks },
    })
}

fn irreducible_checks(eq: &InvariantReport, p: &ParamInvariants, checks: &mut Vec<Check>) {
    let (Finite(mu), Finite(beta), Finite(lam)) = (eq.milnor, p.beta, p.lambda) else {
        checks.push(Check::skipped("vertex_inflection_identity", "an entry is infinite"));
        return;
    };
    let m = p.m;
    checks.push(Check::compare(
        "vertex_inflection_identity",
        "=",
        eq.v_f,
        eq.i_f + (3 * mu + lam).saturating_sub(3),
        "V_f against I_f + 3 mu + lambda - 3".to_string(),
    ));
    checks.push(
        Check::compare(
            "vertex_inflection_identity_without_shift",
            "=",
            eq.v_f,
            eq.i_f + (3 * mu + lam),
            "V_f against I_f + 3 mu + lambda (printed form without the -3)".to_string(),
        )
        .informational(),
    );
    checks.push(
        Check::compare(
            "inflection_upper_bound",
            "<=",
            eq.i_f,
            Finite((3 * mu + m + beta).saturating_sub(3)),
            "I_f against 3 mu + m + beta - 3".to_string(),
        )
        .informational(),
    );
    checks.push(
        Check::compare(
            "vertex_upper_bound",
            "<=",
            eq.v_f,
            Finite((6 * mu + m + 2 * beta).saturating_sub(6)),
            "V_f against 6 mu + m + 2 beta - 6".to_string(),
        )
        .informational(),
    );
    let (min_i, min_v) = minima(m, beta, mu);
    checks.push(Check::compare(
        "inflection_minimum",
        ">=",
        eq.i_f,
        Finite(min_i),
        "I_f against its minimal value for this (mu, m, beta)".to_string(),
    ));
    checks.push(
        Check::compare(
            "vertex_minimum",
            ">=",
            eq.v_f,
            Finite(min_v),
            "V_f against the stated minimal value for this (mu, m, beta)".to_string(),
        )
        .informational(),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(v)
    }

    #[test]
    fn cusp_identities_pass() {
        let f = p(&[(1, 0, 2), (-1, 3, 0)]);
        let g = ParamCurve::from_int_terms(&[(1, 2)], &[(1, 3)], 64).unwrap();
        let r = relation_report(&f, &[g], &ReportOptions::default()).unwrap();
        assert!(r.relations.hard_failures().is_empty(), "{:?}", r.relations);
        assert_eq!(r.relations.get("inflection_bridge").unwrap().status, Status::Pass);
        assert_eq!(r.relations.get("vertex_bridge").unwrap().status, Status::Pass);
        assert_eq!(r.relations.get("lambda_bridge[0]").unwrap().status, Status::Pass);
    }

    #[test]
    fn e6_bound_is_informational_fail() {
        let f = p(&[(1, 3, 0), (1, 0, 4)]);
        let g = ParamCurve::from_int_terms(&[(-1, 4)], &[(1, 3)], 64).unwrap();
        let r = relation_report(&f, &[g], &ReportOptions::default()).unwrap();
        let b = r.relations.get("vertex_upper_bound").unwrap();
        assert_eq!((b.status, b.informational), (Status::Fail, true));
        assert_eq!(b.computed, Some(Finite(43)));
        assert_eq!(b.expected, Some(Finite(41)));
        assert!(r.relations.hard_failures().is_empty(), "{:?}", r.relations);
    }

    #[test]
    fn mismatched_branch_rejected() {
        let f = p(&[(1, 0, 2), (-1, 3, 0)]);
        let g = ParamCurve::from_int_terms(&[(1, 2)], &[(1, 5)], 64).unwrap();
        assert!(matches!(
            relation_report(&f, &[g], &ReportOptions::default()),
            Err(CurveError::BranchMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn line_pair_is_not_applicable() {
        let r = relation_report(&p(&[(1, 1, 1)]), &[], &ReportOptions::default()).unwrap();
        assert_eq!(r.equation.i_f, Infinite);
        assert_eq!(
            r.relations.get("inflection_bridge").unwrap().status,
            Status::NotApplicable
        );
    }
}
