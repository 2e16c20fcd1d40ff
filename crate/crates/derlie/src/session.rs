use std::fmt::Write as _;

use derlie_core::{check_closure, Derivation, Error, LieAlgebra, QSpan};
use indexmap::IndexMap;

use crate::error::{CliError, Result};
use crate::parse::parse_dexpr;

/// A parsed session file: declared variables, named derivations and named
/// algebras (lists of derivation names), all in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Session {
    variables: Vec<String>,
    definitions: IndexMap<String, Derivation>,
    algebras: IndexMap<String, Vec<String>>,
}

// Order matters for round-tripping, so compare entry sequences.
impl PartialEq for Session {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables
            && self.definitions.iter().eq(other.definitions.iter())
            && self.algebras.iter().eq(other.algebras.iter())
    }
}

impl Eq for Session {}

impl Session {
    pub(crate) fn from_parts(
        variables: Vec<String>,
        definitions: IndexMap<String, Derivation>,
        algebras: IndexMap<String, Vec<String>>,
    ) -> Self {
        Session {
            variables,
            definitions,
            algebras,
        }
    }

    /// Session over `variables` with no definitions yet.
    pub fn with_variables(variables: Vec<String>) -> Self {
        Session {
            variables,
            ..Session::default()
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn definitions(&self) -> &IndexMap<String, Derivation> {
        &self.definitions
    }

    pub fn algebras(&self) -> &IndexMap<String, Vec<String>> {
        &self.algebras
    }

    /// Adds a derivation; its arity must match the declared variables.
    pub fn define(&mut self, name: &str, d: Derivation) -> Result<()> {
        if d.nvars() != self.variables.len() {
            return Err(Error::AmbientMismatch {
                expected: self.variables.len(),
                found: d.nvars(),
            }
            .into());
        }
        self.check_fresh(name)?;
        self.definitions.insert(name.to_string(), d);
        Ok(())
    }

    /// Adds a derivation written in the session syntax.
    pub fn define_text(&mut self, name: &str, text: &str) -> Result<()> {
        let d = parse_dexpr(text, &self.variables)?;
        self.define(name, d)
    }

    pub fn add_algebra(&mut self, name: &str, members: Vec<String>) -> Result<()> {
        self.check_fresh(name)?;
        if let Some(m) = members.iter().find(|m| !self.definitions.contains_key(*m)) {
            return Err(CliError::Usage(format!("algebra `{name}` refers to undefined `{m}`")));
        }
        self.algebras.insert(name.to_string(), members);
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if self.definitions.contains_key(name) || self.algebras.contains_key(name) {
            return Err(CliError::Usage(format!("`{name}` is defined twice")));
        }
        Ok(())
    }

    /// The closed algebra spanned by the members of `name`.
    pub fn algebra(&self, name: &str) -> Result<LieAlgebra> {
        let members = self
            .algebras
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no algebra named `{name}`")))?;
        let gens = members.iter().map(|m| self.definitions[m].clone());
        check_closure(QSpan::spanned_by(self.variables.len(), gens)).map_err(|failure| {
            CliError::Usage(format!(
                "algebra `{name}` is not closed: bracket of basis elements {} and {} is {}",
                failure.left + 1,
                failure.right + 1,
                failure.bracket.display(&self.variables)
            ))
        })
    }

    /// Canonical session text; parsing it gives back an equal session.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.variables.is_empty() {
            let _ = writeln!(out, "vars {};", self.variables.join(", "));
        }
        for (name, d) in &self.definitions {
            let _ = writeln!(out, "{name} = {};", d.display(&self.variables));
        }
        for (name, members) in &self.algebras {
            let _ = writeln!(out, "{name} = algebra({});", members.join(", "));
        }
        out
    }
}
