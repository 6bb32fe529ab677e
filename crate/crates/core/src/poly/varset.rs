use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    params: Vec<bool>,
}

/// Ordered set of variable names. The declaration order fixes the
/// graded-lex monomial order (first variable is the most significant).
///
/// Parameter variables behave like ordinary ring variables, but every
/// derivation built over the set has coefficient zero on them.
#[derive(Clone)]
pub struct VarSet(Arc<Inner>);

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::with_params(names, &[] as &[&str])
    }

    /// Builds a set from `names`, flagging every name in `params` as a
    /// parameter. Parameters missing from `names` are appended in order.
    pub fn with_params<S: AsRef<str>, P: AsRef<str>>(names: &[S], params: &[P]) -> Result<Self> {
        let mut all: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for p in params {
            if !all.iter().any(|n| n == p.as_ref()) {
                all.push(p.as_ref().to_string());
            }
        }
        if all.is_empty() {
            return Err(Error::InvalidVarSet("no variables".into()));
        }
        for (i, name) in all.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidVarSet(format!(
                    "`{name}` is not an identifier"
                )));
            }
            if all[..i].contains(name) {
                return Err(Error::InvalidVarSet(format!("duplicate variable `{name}`")));
            }
        }
        let flags = all
            .iter()
            .map(|n| params.iter().any(|p| p.as_ref() == n))
            .collect();
        Ok(VarSet(Arc::new(Inner {
            names: all,
            params: flags,
        })))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn is_param(&self, i: usize) -> bool {
        self.0.params[i]
    }

    pub fn param_names(&self) -> Vec<&str> {
        (0..self.len())
            .filter(|&i| self.is_param(i))
            .map(|i| self.name(i))
            .collect()
    }

    /// Indices of the non-parameter variables, in declaration order.
    pub fn free_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.is_param(i)).collect()
    }

    /// A copy of this set with `name` added as a parameter (no-op when the
    /// parameter is already present).
    pub fn with_extra_param(&self, name: &str) -> Result<Self> {
        if let Some(i) = self.index_of(name) {
            if self.is_param(i) {
                return Ok(self.clone());
            }
            return Err(Error::InvalidVarSet(format!(
                "`{name}` is already an ordinary variable"
            )));
        }
        let mut params: Vec<&str> = self.param_names();
        params.push(name);
        VarSet::with_params(self.names(), &params)
    }

    pub fn ensure_same(&self, other: &VarSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet{:?}", self.0.names)?;
        let params = self.param_names();
        if !params.is_empty() {
            write!(f, " params {params:?}")?;
        }
        Ok(())
    }
}
