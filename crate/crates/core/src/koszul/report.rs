use std::fmt;

/// Outcome of one axiom over all basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub fn new(axiom: &'static str) -> AxiomCheck {
        AxiomCheck { axiom, passed: true, counterexample: None }
    }

    pub fn fail(&mut self, witness: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(witness);
        }
    }
}

impl fmt::Display for AxiomCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{} ok", self.axiom),
            Some(w) => write!(f, "{} FAIL at {}", self.axiom, w),
        }
    }
}

/// One line per axiom, in checking order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn push(&mut self, c: AxiomCheck) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
