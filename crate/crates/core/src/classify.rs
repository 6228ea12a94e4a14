//! Configuration predicates for fat point schemes and consistency checks of
//! the theorems relating them to the ACM property.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::acm::{is_acm, AcmError};
use crate::scheme::GridScheme;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("theorem violation: {}", .0.violations.join("; "))]
    TheoremViolation(Box<TheoremReport>),
    #[error(transparent)]
    Acm(#[from] AcmError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// `Some(m)` when every positive multiplicity equals `m`.
    pub homogeneous: Option<usize>,
    /// `Some(m)` when every positive multiplicity lies in `{m, m − 1}`, `m`
    /// the largest.
    pub almost_homogeneous: Option<usize>,
    /// `Some(t)` with `t_1 ≥ … ≥ t_r` the sizes of the row sets
    /// `{j : m_ij = m}` when the scheme is quasi-homogeneous.
    pub quasi_homogeneous: Option<Vec<usize>>,
    pub support_ci: bool,
    pub support_acm: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: Option<usize>| b.map_or("no".to_string(), |m| format!("yes (m = {m})"));
        writeln!(f, "homogeneous:        {}", flag(self.homogeneous))?;
        writeln!(f, "almost homogeneous: {}", flag(self.almost_homogeneous))?;
        match &self.quasi_homogeneous {
            Some(t) => {
                write!(f, "quasi-homogeneous:  yes (t = ")?;
                crate::partition::write_tuple(f, t)?;
                writeln!(f, ")")?;
            }
            None => writeln!(f, "quasi-homogeneous:  no")?,
        }
        writeln!(f, "support CI:         {}", yes_no(self.support_ci))?;
        write!(f, "support ACM:        {}", yes_no(self.support_acm))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn positive(scheme: &GridScheme) -> impl Iterator<Item = usize> + '_ {
    scheme.points().map(|(_, _, m)| m)
}

/// Two positive entries on a diagonal whose anti-diagonal is empty.
fn has_diagonal_pair(scheme: &GridScheme) -> bool {
    let (r, t) = (scheme.rows(), scheme.cols());
    for i in 0..r {
        for k in i + 1..r {
            for j in 0..t {
                for l in 0..t {
                    if j != l
                        && scheme.get(i, j) > 0
                        && scheme.get(k, l) > 0
                        && scheme.get(i, l) == 0
                        && scheme.get(k, j) == 0
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn quasi_sequence(scheme: &GridScheme, m: usize, support_ci: bool) -> Option<Vec<usize>> {
    if m >= 2 && !support_ci {
        return None;
    }
    let sets: Vec<Vec<bool>> = scheme
        .grid()
        .iter()
        .map(|row| row.iter().map(|&x| x == m).collect())
        .collect();
    let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
    for a in &sets {
        for b in &sets {
            if !subset(a, b) && !subset(b, a) {
                return None;
            }
        }
    }
    let mut t: Vec<usize> = sets.iter().map(|s| s.iter().filter(|&&x| x).count()).collect();
    t.sort_unstable_by(|a, b| b.cmp(a));
    Some(t)
}

pub fn classify(scheme: &GridScheme) -> Classification {
    let m = scheme.max_mult();
    let homogeneous = positive(scheme).all(|x| x == m).then_some(m);
    let almost_homogeneous = positive(scheme).all(|x| x + 1 >= m).then_some(m);
    let support_ci = scheme.grid().iter().flatten().all(|&x| x > 0);
    let support_acm = !has_diagonal_pair(scheme);
    let quasi_homogeneous = almost_homogeneous.and_then(|m| quasi_sequence(scheme, m, support_ci));
    Classification {
        homogeneous,
        almost_homogeneous,
        quasi_homogeneous,
        support_ci,
        support_acm,
    }
}

/// One implication and whether it applied and held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    pub name: String,
    pub applies: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub classification: Classification,
    pub acm: bool,
    pub implications: Vec<Implication>,
    /// Instances showing a hypothesis cannot be dropped.
    pub notes: Vec<String>,
    pub violations: Vec<String>,
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.classification)?;
        writeln!(f, "ACM:                {}", yes_no(self.acm))?;
        for imp in &self.implications {
            let status = match (imp.applies, imp.holds) {
                (false, _) => "n/a",
                (true, true) => "ok",
                (true, false) => "VIOLATED",
            };
            writeln!(f, "  {:<52} {status}", imp.name)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Evaluates the classification theorems on one scheme.
pub fn check_theorems(scheme: &GridScheme) -> Result<TheoremReport, ClassifyError> {
    let c = classify(scheme);
    let acm = is_acm(scheme)?.acm;
    let homog_m = c.homogeneous.filter(|&m| m >= 2);
    let almost_m = c.almost_homogeneous;
    let quasi = c.quasi_homogeneous.is_some();
    let implications = vec![
        Implication {
            name: "ACM ⟹ support ACM".into(),
            applies: acm,
            holds: c.support_acm,
        },
        Implication {
            name: "homogeneous, m ≥ 2: ACM ⟺ support CI".into(),
            applies: homog_m.is_some(),
            holds: acm == c.support_ci,
        },
        Implication {
            name: "almost homogeneous, ACM, m ≥ 4 ⟹ quasi-homogeneous".into(),
            applies: acm && almost_m.is_some_and(|m| m >= 4),
            holds: quasi,
        },
        Implication {
            name: "quasi-homogeneous ⟹ ACM".into(),
            applies: quasi,
            holds: acm,
        },
    ];
    let mut notes = Vec::new();
    if let Some(m) = almost_m {
        if acm && m < 4 && !quasi && c.homogeneous.is_none() {
            notes.push(format!(
                "ACM and almost homogeneous with m = {m} but not quasi-homogeneous: the bound m ≥ 4 is needed"
            ));
        }
    }
    let violations: Vec<String> = implications
        .iter()
        .filter(|i| i.applies && !i.holds)
        .map(|i| format!("{scheme}: {}", i.name))
        .collect();
    let report = TheoremReport {
        classification: c,
        acm,
        implications,
        notes,
        violations,
    };
    if report.violations.is_empty() {
        Ok(report)
    } else {
        Err(ClassifyError::TheoremViolation(Box::new(report)))
    }
}
