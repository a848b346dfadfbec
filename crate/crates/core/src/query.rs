//! Method selection over the three evaluation routes, plus bundled
//! summaries and cross-method verification.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::apery::{apery_general, AperyTable, ArithProgression, Generators};
use crate::arithprog::{frobenius_ap, genus_ap, power_sum_ap, weighted_sum_ap};
use crate::exact::BigInt;
use crate::numberfield::{LambdaSpec, RingElement};
use crate::oracle::{gap_set, oracle_power_sum, oracle_weighted_sum, GapSet};
use crate::sylvester::{self, Method};
use crate::{Error, Result};

/// Requested evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// Closed form for progressions, else residue table.
    #[default]
    Auto,
    Apery,
    ClosedForm,
    Oracle,
}

impl FromStr for MethodChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "apery" => Ok(MethodChoice::Apery),
            "closed-form" => Ok(MethodChoice::ClosedForm),
            "oracle" => Ok(MethodChoice::Oracle),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

enum Route<'a> {
    Apery,
    ClosedForm(&'a ArithProgression),
    Oracle,
}

/// A generator set together with lazily built residue table and gap set.
pub struct Problem {
    gens: Generators,
    ap: Option<ArithProgression>,
    table: OnceLock<AperyTable>,
    gaps: OnceLock<GapSet>,
}

impl Problem {
    /// Detects whether the generators form a progression with `k <= a`.
    pub fn from_generators(gens: Generators) -> Self {
        let ap = gens.as_progression();
        Problem { gens, ap, table: OnceLock::new(), gaps: OnceLock::new() }
    }

    pub fn from_progression(ap: ArithProgression) -> Self {
        Problem { gens: ap.generators(), ap: Some(ap), table: OnceLock::new(), gaps: OnceLock::new() }
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn progression(&self) -> Option<&ArithProgression> {
        self.ap.as_ref()
    }

    pub fn apery(&self) -> &AperyTable {
        self.table.get_or_init(|| apery_general(&self.gens))
    }

    pub fn gaps(&self) -> &GapSet {
        self.gaps.get_or_init(|| gap_set(&self.gens))
    }

    fn route(&self, choice: MethodChoice) -> Result<Route<'_>> {
        match (choice, &self.ap) {
            (MethodChoice::Auto, Some(ap)) | (MethodChoice::ClosedForm, Some(ap)) => Ok(Route::ClosedForm(ap)),
            (MethodChoice::Auto, None) | (MethodChoice::Apery, _) => Ok(Route::Apery),
            (MethodChoice::ClosedForm, None) => Err(Error::InvalidProgression(format!(
                "{} is not an arithmetic progression with k <= a",
                self.gens
            ))),
            (MethodChoice::Oracle, _) => Ok(Route::Oracle),
        }
    }

    /// The residue table; the closed-form route fills it row by row.
    pub fn apery_with(&self, choice: MethodChoice) -> Result<(AperyTable, Method)> {
        Ok(match self.route(choice)? {
            Route::Apery => (self.apery().clone(), Method::GeneralApery),
            Route::ClosedForm(ap) => (crate::apery::apery_arith(ap), Method::ClosedForm),
            Route::Oracle => {
                // least representable per residue, read off the sieve
                let a = self.gens.smallest();
                let rep = crate::oracle::representable(&self.gens, self.gaps().bound() + a);
                let mut m = vec![u64::MAX; a as usize];
                for (n, _) in rep.iter().enumerate().filter(|(_, r)| **r) {
                    let slot = &mut m[n % a as usize];
                    *slot = (*slot).min(n as u64);
                }
                (AperyTable::from_residues(m)?, Method::Oracle)
            }
        })
    }

    pub fn frobenius(&self, choice: MethodChoice) -> Result<(i64, Method)> {
        Ok(match self.route(choice)? {
            Route::Apery => (sylvester::frobenius(self.apery()), Method::GeneralApery),
            Route::ClosedForm(ap) => (frobenius_ap(ap), Method::ClosedForm),
            Route::Oracle => (self.gaps().frobenius(), Method::Oracle),
        })
    }

    pub fn genus(&self, choice: MethodChoice) -> Result<(BigInt, Method)> {
        Ok(match self.route(choice)? {
            Route::Apery => (sylvester::genus(self.apery())?, Method::GeneralApery),
            Route::ClosedForm(ap) => (genus_ap(ap)?, Method::ClosedForm),
            Route::Oracle => (BigInt::from(self.gaps().len()), Method::Oracle),
        })
    }

    pub fn power_sum(&self, mu: u32, choice: MethodChoice) -> Result<(BigInt, Method)> {
        Ok(match self.route(choice)? {
            Route::Apery => (sylvester::power_sum(self.apery(), mu)?, Method::GeneralApery),
            Route::ClosedForm(ap) => (power_sum_ap(ap, mu)?, Method::ClosedForm),
            Route::Oracle => (oracle_power_sum(self.gaps(), mu), Method::Oracle),
        })
    }

    pub fn weighted_sum(&self, mu: u32, lambda: &RingElement, choice: MethodChoice) -> Result<(RingElement, Method)> {
        if lambda.is_zero() {
            return Err(Error::InvalidLambda("weight must be nonzero".into()));
        }
        if lambda.is_one() {
            return Err(Error::LambdaIsOne);
        }
        if mu == 0 {
            return Err(Error::InvalidLambda("weighted sums need mu >= 1".into()));
        }
        match self.route(choice)? {
            Route::Apery => sylvester::weighted_sum_with_table(self.apery(), mu, lambda),
            Route::ClosedForm(ap) => {
                let (v, branch) = weighted_sum_ap(ap, mu, lambda)?;
                Ok((v, branch.method()))
            }
            Route::Oracle => Ok((oracle_weighted_sum(self.gaps(), mu, lambda), Method::Oracle)),
        }
    }

    /// Every route that applies to this problem.
    pub fn available_methods(&self) -> Vec<MethodChoice> {
        let mut out = vec![MethodChoice::Apery];
        if self.ap.is_some() {
            out.push(MethodChoice::ClosedForm);
        }
        out.push(MethodChoice::Oracle);
        out
    }

    /// Evaluates every quantity by every applicable route.
    pub fn verify(&self, mus: &[u32], lambdas: &[LambdaSpec]) -> Result<Vec<Check>> {
        let methods = self.available_methods();
        let mut checks = Vec::new();
        let mut push = |quantity: String, values: Vec<(Method, String)>| {
            checks.push(Check { quantity, values });
        };
        let collect = |f: &dyn Fn(MethodChoice) -> Result<(String, Method)>| -> Result<Vec<(Method, String)>> {
            methods.iter().map(|&m| f(m).map(|(v, t)| (t, v))).collect()
        };
        push("apery".into(), collect(&|m| {
            self.apery_with(m).map(|(t, tag)| (format!("{:?}", t.residues()), tag))
        })?);
        push("frobenius".into(), collect(&|m| self.frobenius(m).map(|(v, t)| (v.to_string(), t)))?);
        push("genus".into(), collect(&|m| self.genus(m).map(|(v, t)| (v.to_string(), t)))?);
        for &mu in mus {
            push(format!("power-sum mu={mu}"), collect(&|m| self.power_sum(mu, m).map(|(v, t)| (v.to_string(), t)))?);
        }
        for spec in lambdas {
            let lambda = spec.to_element()?;
            for &mu in mus.iter().filter(|&&mu| mu >= 1) {
                push(
                    format!("weighted-sum mu={mu} lambda={spec}"),
                    collect(&|m| self.weighted_sum(mu, &lambda, m).map(|(v, t)| (v.to_string(), t)))?,
                );
            }
        }
        Ok(checks)
    }
}

/// One quantity evaluated by several routes.
#[derive(Debug, Clone)]
pub struct Check {
    pub quantity: String,
    pub values: Vec<(Method, String)>,
}

impl Check {
    pub fn agrees(&self) -> bool {
        self.values.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

/// A weighted sum recorded in a [`GapSummary`].
#[derive(Debug, Clone)]
pub struct WeightedEntry {
    pub mu: u32,
    pub lambda: LambdaSpec,
    pub value: RingElement,
    pub method: Method,
}

/// Frobenius number, genus, power sums and weighted sums for one generator
/// set, each tagged with the route that produced it.
#[derive(Debug, Clone)]
pub struct GapSummary {
    pub generators: Generators,
    pub frobenius: (i64, Method),
    pub genus: (BigInt, Method),
    pub power_sums: BTreeMap<u32, (BigInt, Method)>,
    pub weighted_sums: Vec<WeightedEntry>,
}

impl GapSummary {
    pub fn compute(problem: &Problem, choice: MethodChoice, mus: &[u32], lambdas: &[LambdaSpec]) -> Result<Self> {
        let frobenius = problem.frobenius(choice)?;
        let genus = problem.genus(choice)?;
        if genus.0.sign() == num_bigint::Sign::Minus {
            return Err(Error::Internal(format!("negative genus {}", genus.0)));
        }
        let power_sums = mus
            .iter()
            .map(|&mu| problem.power_sum(mu, choice).map(|v| (mu, v)))
            .collect::<Result<_>>()?;
        let mut weighted_sums = Vec::new();
        for spec in lambdas {
            let lambda = spec.to_element()?;
            for &mu in mus.iter().filter(|&&mu| mu >= 1) {
                let (value, method) = problem.weighted_sum(mu, &lambda, choice)?;
                weighted_sums.push(WeightedEntry { mu, lambda: spec.clone(), value, method });
            }
        }
        Ok(GapSummary { generators: problem.generators().clone(), frobenius, genus, power_sums, weighted_sums })
    }

    /// Recomputes every entry by brute force and reports the first mismatch.
    pub fn check_against_oracle(&self) -> Result<()> {
        let gs = gap_set(&self.generators);
        let mismatch = |what: String| Err(Error::Internal(format!("oracle disagrees on {what}")));
        if gs.frobenius() != self.frobenius.0 {
            return mismatch("frobenius".into());
        }
        if BigInt::from(gs.len()) != self.genus.0 {
            return mismatch("genus".into());
        }
        for (&mu, (v, _)) in &self.power_sums {
            if oracle_power_sum(&gs, mu) != *v {
                return mismatch(format!("s_{mu}"));
            }
        }
        for e in &self.weighted_sums {
            let lambda = e.lambda.to_element()?;
            if oracle_weighted_sum(&gs, e.mu, &lambda) != e.value {
                return mismatch(format!("s_{}^({})", e.mu, e.lambda));
            }
        }
        Ok(())
    }
}
