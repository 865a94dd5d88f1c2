//! Evaluation of the sectional genus and second Hilbert coefficient
//! inequalities on an invariant report, with ring classification gated on the
//! hypotheses the user asserted.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::VerdictError;
use crate::hilbert::InvariantReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assumption {
    Unmixed,
    NonRegular,
    CParameter,
    /// `q ⊆ m^{g(R)}`.
    DeepInGPower,
}

impl Assumption {
    pub const ALL: [Assumption; 4] = [
        Assumption::Unmixed,
        Assumption::NonRegular,
        Assumption::CParameter,
        Assumption::DeepInGPower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Assumption::Unmixed => "unmixed",
            Assumption::NonRegular => "non_regular",
            Assumption::CParameter => "c_parameter",
            Assumption::DeepInGPower => "deep_in_g_power",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Assumption::ALL.into_iter().find(|a| a.name() == s)
    }
}

pub type Assumptions = BTreeSet<Assumption>;

const STRUCTURAL: &[Assumption] = &[Assumption::Unmixed, Assumption::NonRegular, Assumption::CParameter];
const STRUCTURAL_DEEP: &[Assumption] = &Assumption::ALL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckId {
    SgChain,
    E2Chain,
    Gorenstein,
    QuasiBuchsbaum,
    Lemma31,
    GotoNishida,
}

impl CheckId {
    pub fn name(self) -> &'static str {
        match self {
            CheckId::SgChain => "SG_CHAIN",
            CheckId::E2Chain => "E2_CHAIN",
            CheckId::Gorenstein => "GORENSTEIN",
            CheckId::QuasiBuchsbaum => "QUASI_BUCHSBAUM",
            CheckId::Lemma31 => "LEMMA31",
            CheckId::GotoNishida => "GOTO_NISHIDA",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }

    fn eval(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

/// One evaluated comparison `lhs rel rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub label: String,
    pub lhs: i64,
    pub relation: Relation,
    pub rhs: i64,
    pub holds: bool,
    pub equality: bool,
}

impl Link {
    fn new(label: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Self {
        Link {
            label: label.into(),
            lhs,
            relation,
            rhs,
            holds: relation.eval(lhs, rhs),
            equality: lhs == rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    CohenMacaulay,
    NotCohenMacaulay,
    Gorenstein,
    NotGorenstein,
    QuasiBuchsbaum,
    NotQuasiBuchsbaum,
    IdentityHolds,
    InequalityHolds,
}

impl Conclusion {
    pub fn name(self) -> &'static str {
        match self {
            Conclusion::CohenMacaulay => "cohen_macaulay",
            Conclusion::NotCohenMacaulay => "not_cohen_macaulay",
            Conclusion::Gorenstein => "gorenstein",
            Conclusion::NotGorenstein => "not_gorenstein",
            Conclusion::QuasiBuchsbaum => "quasi_buchsbaum",
            Conclusion::NotQuasiBuchsbaum => "not_quasi_buchsbaum",
            Conclusion::IdentityHolds => "identity_holds",
            Conclusion::InequalityHolds => "inequality_holds",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictRecord {
    pub check: CheckId,
    pub links: Vec<Link>,
    pub assumptions_required: Vec<Assumption>,
    pub assumptions_asserted: Vec<Assumption>,
    pub conclusion: Option<Conclusion>,
    /// Names the criterion behind the conclusion.
    pub basis: Option<&'static str>,
    pub notes: Vec<String>,
}

impl VerdictRecord {
    fn new(check: CheckId, links: Vec<Link>, required: &[Assumption], asserted: &Assumptions) -> Self {
        VerdictRecord {
            check,
            links,
            assumptions_required: required.to_vec(),
            assumptions_asserted: asserted.iter().copied().collect(),
            conclusion: None,
            basis: None,
            notes: Vec::new(),
        }
    }

    pub fn all_hold(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }

    pub fn any_equality(&self) -> bool {
        self.links.iter().any(|l| l.equality)
    }

    fn missing(&self) -> Vec<Assumption> {
        self.assumptions_required
            .iter()
            .filter(|a| !self.assumptions_asserted.contains(a))
            .copied()
            .collect()
    }

    /// Records the conclusion when the required hypotheses were asserted,
    /// otherwise a note naming the missing ones.
    fn conclude(&mut self, conclusion: Conclusion, basis: &'static str) {
        let missing = self.missing();
        if missing.is_empty() {
            self.conclusion = Some(conclusion);
            self.basis = Some(basis);
        } else {
            let names: Vec<_> = missing.iter().map(|a| a.name()).collect();
            self.notes
                .push(format!("not asserted: {}; no conclusion", names.join(", ")));
        }
    }

    fn hypotheses_violated(&mut self) {
        self.notes.push(
            "inequality violated: hypotheses not satisfied (ring not unmixed or q not a C-parameter ideal)".into(),
        );
    }
}

fn require_r(rep: &InvariantReport) -> Result<i64, VerdictError> {
    rep.r.map(|r| r as i64).ok_or(VerdictError::MissingType)
}

fn require_dim2(rep: &InvariantReport) -> Result<(), VerdictError> {
    if rep.dim < 2 {
        return Err(VerdictError::DimensionTooSmall(rep.dim));
    }
    Ok(())
}

/// `r - ir <= sg(q:m) <= sg(q)`, either equality iff Cohen-Macaulay.
pub fn check_sg_chain(rep: &InvariantReport, asserted: &Assumptions) -> Result<VerdictRecord, VerdictError> {
    require_dim2(rep)?;
    let r = require_r(rep)?;
    let ir = rep.ir as i64;
    let links = vec![
        Link::new("r - ir <= sg_colon", r - ir, Relation::Le, rep.sg_colon),
        Link::new("sg_colon <= sg_q", rep.sg_colon, Relation::Le, rep.sg_q),
    ];
    let mut rec = VerdictRecord::new(CheckId::SgChain, links, STRUCTURAL_DEEP, asserted);
    if !rec.all_hold() {
        rec.hypotheses_violated();
    } else if rec.any_equality() {
        rec.conclude(Conclusion::CohenMacaulay, "sectional genus chain equality");
    } else {
        rec.conclude(Conclusion::NotCohenMacaulay, "sectional genus chain strict");
    }
    Ok(rec)
}

/// `e2(q:m) <= e2(q) <= sg(q:m) + ir - r <= sg(q) + ir - r`, plus the
/// auxiliary link `e2(q:m) <= sg(q)`. Any equality iff Cohen-Macaulay.
pub fn check_e2_chain(rep: &InvariantReport, asserted: &Assumptions) -> Result<VerdictRecord, VerdictError> {
    require_dim2(rep)?;
    let r = require_r(rep)?;
    let ir = rep.ir as i64;
    let e2q = rep.e_q.e(2);
    let e2c = rep.e_colon.e(2);
    let links = vec![
        Link::new("e2_colon <= e2_q", e2c, Relation::Le, e2q),
        Link::new("e2_q <= sg_colon + ir - r", e2q, Relation::Le, rep.sg_colon + ir - r),
        Link::new("sg_colon + ir - r <= sg_q + ir - r", rep.sg_colon + ir - r, Relation::Le, rep.sg_q + ir - r),
        Link::new("e2_colon <= sg_q", e2c, Relation::Le, rep.sg_q),
    ];
    let mut rec = VerdictRecord::new(CheckId::E2Chain, links, STRUCTURAL_DEEP, asserted);
    if !rec.all_hold() {
        rec.hypotheses_violated();
    } else if rec.any_equality() {
        rec.conclude(Conclusion::CohenMacaulay, "second Hilbert coefficient equality");
    } else {
        rec.conclude(Conclusion::NotCohenMacaulay, "second Hilbert coefficient chain strict");
    }
    Ok(rec)
}

/// `sg(q:m) <= 1 - ir` iff Gorenstein.
pub fn check_gorenstein(rep: &InvariantReport, asserted: &Assumptions) -> VerdictRecord {
    let links = vec![Link::new("sg_colon <= 1 - ir", rep.sg_colon, Relation::Le, 1 - rep.ir as i64)];
    let mut rec = VerdictRecord::new(CheckId::Gorenstein, links, STRUCTURAL_DEEP, asserted);
    if rec.all_hold() {
        rec.conclude(Conclusion::Gorenstein, "colon sectional genus bound");
    } else {
        rec.conclude(Conclusion::NotGorenstein, "colon sectional genus bound fails");
    }
    rec
}

/// `sg(q:m) = e1(q)` iff quasi-Buchsbaum.
pub fn check_quasi_buchsbaum(rep: &InvariantReport, asserted: &Assumptions) -> VerdictRecord {
    let links = vec![Link::new("sg_colon = e1_q", rep.sg_colon, Relation::Eq, rep.e_q.e(1))];
    let mut rec = VerdictRecord::new(CheckId::QuasiBuchsbaum, links, STRUCTURAL, asserted);
    if rec.all_hold() {
        rec.conclude(Conclusion::QuasiBuchsbaum, "colon sectional genus equals first coefficient");
    } else {
        rec.conclude(Conclusion::NotQuasiBuchsbaum, "colon sectional genus differs from first coefficient");
    }
    rec
}

/// `sg(q:m) = I(q) + e1(q:m) - ir`.
pub fn check_lemma31(rep: &InvariantReport, asserted: &Assumptions) -> VerdictRecord {
    let rhs = rep.i_q + rep.e_colon.e(1) - rep.ir as i64;
    let links = vec![Link::new("sg_colon = I_q + e1_colon - ir", rep.sg_colon, Relation::Eq, rhs)];
    let mut rec = VerdictRecord::new(
        CheckId::Lemma31,
        links,
        &[Assumption::NonRegular, Assumption::CParameter],
        asserted,
    );
    if !rep.e0_agreement {
        rec.notes.push("e0(q) differs from e0(q:m); identity not applicable".into());
    } else if rec.all_hold() {
        rec.conclusion = Some(Conclusion::IdentityHolds);
        rec.basis = Some("colon sectional genus identity");
    } else {
        rec.notes
            .push("identity fails: input is not a C-parameter ideal or hypotheses fail".into());
    }
    rec
}

/// `sg(q:m) >= e1(q)`.
pub fn check_goto_nishida(rep: &InvariantReport, asserted: &Assumptions) -> VerdictRecord {
    let links = vec![Link::new("sg_colon >= e1_q", rep.sg_colon, Relation::Ge, rep.e_q.e(1))];
    let mut rec = VerdictRecord::new(CheckId::GotoNishida, links, &[], asserted);
    if !rep.e0_agreement {
        rec.notes
            .push("q is not a reduction of q:m (e0 differs); inequality not applicable".into());
    } else if rec.all_hold() {
        rec.conclusion = Some(Conclusion::InequalityHolds);
        rec.basis = Some("generalized Northcott inequality");
    } else {
        rec.notes
            .push("violation: computation defect or invalid input".into());
    }
    rec
}

/// Fills a missing type with `ir` when the hypotheses are asserted and
/// `sg(q:m) >= sg(q)` already forces Cohen-Macaulayness.
pub fn fill_type(rep: &mut InvariantReport, asserted: &Assumptions) -> Option<String> {
    if rep.r.is_none()
        && rep.dim >= 2
        && STRUCTURAL.iter().all(|a| asserted.contains(a))
        && rep.sg_colon >= rep.sg_q
    {
        rep.r = Some(rep.ir);
        return Some(format!("type r not given; ring is Cohen-Macaulay, using r = ir = {}", rep.ir));
    }
    None
}

/// Runs every check; checks that cannot run are reported as diagnostics.
pub fn run_checks(rep: &InvariantReport, asserted: &Assumptions) -> (Vec<VerdictRecord>, Vec<String>) {
    let mut diagnostics = Vec::new();
    let mut out = Vec::new();
    for check in [check_sg_chain, check_e2_chain] {
        match check(rep, asserted) {
            Ok(rec) => out.push(rec),
            Err(e) => diagnostics.push(e.to_string()),
        }
    }
    out.push(check_gorenstein(rep, asserted));
    out.push(check_quasi_buchsbaum(rep, asserted));
    out.push(check_lemma31(rep, asserted));
    out.push(check_goto_nishida(rep, asserted));
    (out, diagnostics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertData;

    fn report(e_q: Vec<i64>, e_colon: Vec<i64>, len_q: u64, len_colon: u64, r: Option<u64>) -> InvariantReport {
        let sg = |len: u64, e: &[i64]| len as i64 - e[0] + e[1];
        InvariantReport {
            dim: e_q.len() - 1,
            len_q,
            len_colon,
            sg_q: sg(len_q, &e_q),
            sg_colon: sg(len_colon, &e_colon),
            i_q: len_q as i64 - e_q[0],
            ir: len_q - len_colon,
            r,
            origin_supported: true,
            e0_agreement: e_q[0] == e_colon[0],
            e_q: HilbertData { e: e_q, n0: 0 },
            e_colon: HilbertData { e: e_colon, n0: 0 },
        }
    }

    fn all() -> Assumptions {
        Assumption::ALL.into_iter().collect()
    }

    fn example_25() -> InvariantReport {
        report(vec![72, -2, 0], vec![72, 1, -1], 74, 70, Some(2))
    }

    fn cone() -> InvariantReport {
        report(vec![2, 0, 0], vec![2, 1, 0], 2, 1, Some(1))
    }

    #[test]
    fn sg_chain_examples() {
        let rec = check_sg_chain(&example_25(), &all()).unwrap();
        assert_eq!((rec.links[0].lhs, rec.links[0].rhs, rec.links[1].rhs), (-2, -1, 0));
        assert!(rec.all_hold() && !rec.any_equality());
        assert_eq!(rec.conclusion, Some(Conclusion::NotCohenMacaulay));

        let rec = check_sg_chain(&cone(), &all()).unwrap();
        assert_eq!(rec.conclusion, Some(Conclusion::CohenMacaulay));

        let mut bad = cone();
        bad.sg_colon = 3;
        let rec = check_sg_chain(&bad, &all()).unwrap();
        assert!(!rec.all_hold());
        assert_eq!(rec.conclusion, None);

        let mut no_r = cone();
        no_r.r = None;
        assert_eq!(check_sg_chain(&no_r, &all()), Err(VerdictError::MissingType));
    }

    #[test]
    fn e2_chain_examples() {
        let rec = check_e2_chain(&example_25(), &all()).unwrap();
        assert_eq!((rec.links[0].lhs, rec.links[0].rhs, rec.links[1].rhs), (-1, 0, 1));
        assert_eq!(rec.conclusion, Some(Conclusion::NotCohenMacaulay));
        assert_eq!(check_e2_chain(&cone(), &all()).unwrap().conclusion, Some(Conclusion::CohenMacaulay));
    }

    #[test]
    fn conclusions_need_assertions() {
        let partial: Assumptions = [Assumption::NonRegular, Assumption::CParameter].into_iter().collect();
        let rec = check_sg_chain(&cone(), &partial).unwrap();
        assert_eq!(rec.conclusion, None);
        assert!(rec.notes[0].contains("unmixed"));
        let rec = check_gorenstein(&cone(), &Assumptions::new());
        assert!(rec.all_hold());
        assert_eq!(rec.conclusion, None);
    }

    #[test]
    fn gorenstein_and_quasi_buchsbaum() {
        assert_eq!(check_gorenstein(&cone(), &all()).conclusion, Some(Conclusion::Gorenstein));
        let rec = check_gorenstein(&example_25(), &all());
        assert_eq!((rec.links[0].lhs, rec.links[0].rhs), (-1, -3));
        assert_eq!(rec.conclusion, Some(Conclusion::NotGorenstein));
        assert_eq!(check_quasi_buchsbaum(&cone(), &all()).conclusion, Some(Conclusion::QuasiBuchsbaum));
        assert_eq!(
            check_quasi_buchsbaum(&example_25(), &all()).conclusion,
            Some(Conclusion::NotQuasiBuchsbaum)
        );
    }

    #[test]
    fn identities() {
        for rep in [example_25(), cone()] {
            assert!(check_lemma31(&rep, &all()).all_hold());
            assert!(check_goto_nishida(&rep, &all()).all_hold());
        }
        let rec = check_goto_nishida(&cone(), &all());
        assert!(rec.links[0].equality);
    }

    #[test]
    fn type_filled_for_cohen_macaulay() {
        let mut rep = cone();
        rep.r = None;
        let note = fill_type(&mut rep, &all()).unwrap();
        assert!(note.contains("r = ir = 1"));
        let (recs, diags) = run_checks(&rep, &all());
        assert_eq!(recs.len(), 6);
        assert!(diags.is_empty());
        assert_eq!(recs[0].conclusion, Some(Conclusion::CohenMacaulay));

        let mut rep = example_25();
        rep.r = None;
        assert_eq!(fill_type(&mut rep, &all()), None);
        let (recs, diags) = run_checks(&rep, &all());
        assert_eq!(recs.len(), 4);
        assert_eq!(diags.len(), 2);
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_checks(&example_25(), &all()), run_checks(&example_25(), &all()));
    }
}
