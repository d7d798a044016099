use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{dense, FieldDescriptor, FieldElement};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// A simple extension `L = K(α)` together with the full list of conjugates
/// `σ(α)`, one per automorphism of `L/K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisExtensionData {
    base: FieldDescriptor,
    ext: FieldDescriptor,
    automorphisms: Vec<FieldElement>,
    /// Powers `σ(α)^j`, `j < d`, per automorphism.
    power_tables: Vec<Vec<FieldElement>>,
}

impl GaloisExtensionData {
    /// Validate user-supplied conjugates: each is a root of the minimal
    /// polynomial, they are pairwise distinct, there are `d` of them and `α`
    /// itself is among them.
    pub fn new(ext: &FieldDescriptor, conjugates: Vec<FieldElement>) -> Result<Self> {
        let data = ext
            .extension_data()
            .ok_or_else(|| Error::GaloisDataInvalid(format!("{ext} is not a simple extension")))?;
        let d = data.degree();
        if conjugates.len() != d {
            return Err(Error::GaloisDataInvalid(format!("expected {d} conjugates, got {}", conjugates.len())));
        }
        let minpoly: Vec<FieldElement> = data.minpoly.iter().map(|c| ext.embed(c)).collect::<Result<_>>()?;
        for (i, s) in conjugates.iter().enumerate() {
            if s.field() != ext {
                return Err(Error::GaloisDataInvalid(format!("conjugate {s} lies outside {ext}")));
            }
            if !dense::eval(&minpoly, s).is_zero() {
                return Err(Error::GaloisDataInvalid(format!("{s} is not a root of the minimal polynomial")));
            }
            if conjugates[..i].contains(s) {
                return Err(Error::GaloisDataInvalid(format!("conjugate {s} repeated")));
            }
        }
        let alpha = ext.generator().expect("extension has a generator");
        if !conjugates.contains(&alpha) {
            return Err(Error::GaloisDataInvalid("identity automorphism missing".into()));
        }
        let power_tables = conjugates
            .iter()
            .map(|s| {
                let mut row = Vec::with_capacity(d);
                let mut acc = ext.one();
                for _ in 0..d {
                    row.push(acc.clone());
                    acc = &acc * s;
                }
                row
            })
            .collect();
        Ok(GaloisExtensionData {
            base: data.base.clone(),
            ext: ext.clone(),
            automorphisms: conjugates,
            power_tables,
        })
    }

    pub fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    pub fn ext(&self) -> &FieldDescriptor {
        &self.ext
    }

    pub fn degree(&self) -> usize {
        self.automorphisms.len()
    }

    /// The images `σ(α)`.
    pub fn automorphisms(&self) -> &[FieldElement] {
        &self.automorphisms
    }

    /// `σ_k(x)` for `x = Σ c_j α^j`, i.e. `Σ c_j σ_k(α)^j`.
    pub fn apply(&self, k: usize, x: &FieldElement) -> FieldElement {
        let coords = x.coords().expect("element of the extension");
        let mut acc = self.ext.zero();
        for (c, pw) in coords.iter().zip(&self.power_tables[k]) {
            if !c.is_zero() {
                acc = &acc + &(&self.ext.embed(c).expect("base embeds") * pw);
            }
        }
        acc
    }
}

/// Galois data of `𝔽_p[u]/(minpoly)`: the Frobenius orbit `α, α^p, …, α^{p^{d-1}}`.
pub fn frobenius_galois_data(p: u64, d: usize, minpoly: &MultiPoly) -> Result<GaloisExtensionData> {
    let base = FieldDescriptor::prime(p)?;
    let vars = minpoly.support_vars();
    let var = vars.first().cloned().unwrap_or_else(|| "u".into());
    if vars.len() > 1 {
        return Err(Error::NotUnivariate(minpoly.to_string()));
    }
    let mp = minpoly.change_field(&base)?;
    let coeffs = mp.to_dense(&var)?;
    if coeffs.len() != d + 1 || !coeffs[d].is_one() {
        return Err(Error::NotIrreducible);
    }
    let ext = match FieldDescriptor::extension(&base, coeffs, &var) {
        Ok(ext) => ext,
        Err(Error::Reducible(_)) => return Err(Error::NotIrreducible),
        Err(e) => return Err(e),
    };
    finite_galois_data(&ext)
}

/// Frobenius Galois data for any finite simple extension `L/K`, with `q = |K|`.
pub fn finite_galois_data(ext: &FieldDescriptor) -> Result<GaloisExtensionData> {
    let data = ext
        .extension_data()
        .ok_or_else(|| Error::GaloisDataInvalid(format!("{ext} is not a simple extension")))?;
    let q = data.base.cardinality().ok_or(Error::InfiniteField)?;
    let q = u64::try_from(q).map_err(|_| Error::BoundExceeded("base field too large".into()))?;
    let alpha = ext.generator().expect("extension generator");
    let mut conj = Vec::with_capacity(data.degree());
    let mut cur = alpha;
    for _ in 0..data.degree() {
        conj.push(cur.clone());
        cur = cur.pow(q);
    }
    GaloisExtensionData::new(ext, conj).map_err(|e| match e {
        Error::GaloisDataInvalid(_) => Error::NotIrreducible,
        other => other,
    })
}
