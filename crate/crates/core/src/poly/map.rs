use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};

/// A polynomial map `𝔸^m → 𝔸^n`: `n` components in the `m` input variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    field: FieldDescriptor,
    inputs: Vec<String>,
    outputs: Vec<MultiPoly>,
}

impl PolyMap {
    pub fn new<S: AsRef<str>>(field: &FieldDescriptor, inputs: &[S], outputs: Vec<MultiPoly>) -> Result<Self> {
        let inputs: Vec<String> = inputs.iter().map(|s| s.as_ref().to_string()).collect();
        let outputs = outputs
            .into_iter()
            .map(|p| {
                if p.field() != field {
                    return Err(Error::DescriptorMismatch(alloc::format!("component over {}", p.field())));
                }
                p.with_vars(&inputs)
            })
            .collect::<Result<_>>()?;
        Ok(PolyMap { field: field.clone(), inputs, outputs })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[MultiPoly] {
        &self.outputs
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.outputs.iter().map(|p| p.eval(point)).collect()
    }

    /// `self ∘ inner`: substitute `inner`'s components for this map's inputs.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.outputs.len() != self.inputs.len() {
            return Err(Error::ArityMismatch { expected: self.inputs.len(), actual: inner.outputs.len() });
        }
        // rename to fresh names first so substitutions do not collide
        let fresh: Vec<(String, String)> =
            self.inputs.iter().enumerate().map(|(i, v)| (v.clone(), alloc::format!("__in{i}"))).collect();
        let outputs = self
            .outputs
            .iter()
            .map(|p| {
                let mut q = p.rename_vars(&fresh);
                for (k, (_, name)) in fresh.iter().enumerate() {
                    q = q.substitute(name, &inner.outputs[k])?;
                }
                q.with_vars(&inner.inputs)
            })
            .collect::<Result<_>>()?;
        PolyMap::new(&self.field, &inner.inputs, outputs)
    }
}
