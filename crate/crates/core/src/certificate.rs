//! Machine-checkable evidence records.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::units::Member;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    ExactInverse,
    ExactFinite,
    LeadingTerm,
    LogRank,
    IndexCount,
    LatticeRank,
    Hypothesis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Unit,
    NotAUnit,
    Independent,
    Dependent,
    Indeterminate,
    Holds,
    Fails,
    Match,
    Mismatch,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(
            self,
            Verdict::Unit | Verdict::Independent | Verdict::Holds | Verdict::Match
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    None,
    Inverse {
        inverse: Member,
    },
    /// `Π u_i^{e_i} = 1` (or a root of unity, for log-rank certificates).
    Relation {
        exponents: Vec<i64>,
    },
    /// Orders of an independent family and the order of the group it generates.
    Orders {
        orders: Vec<u64>,
        #[serde(
            serialize_with = "crate::bigser::serialize_one",
            deserialize_with = "crate::bigser::deserialize_one"
        )]
        group_order: BigInt,
    },
    Rank {
        rank: usize,
        expected: usize,
    },
    Index {
        #[serde(
            serialize_with = "crate::bigser::serialize_one",
            deserialize_with = "crate::bigser::deserialize_one"
        )]
        computed: BigInt,
        #[serde(
            serialize_with = "crate::bigser::serialize_one",
            deserialize_with = "crate::bigser::deserialize_one"
        )]
        expected: BigInt,
    },
    Hypothesis(Box<HypothesisEvidence>),
}

/// Evidence that `e = 1 − (−1)^p λ x^{p^{n-1}-1}` lies outside `Im(f̄₁)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisEvidence {
    /// `λ` as a decimal string, absent when it is not an integer.
    pub lambda: Option<String>,
    /// `e` in the x-basis, absent when `λ` is not an integer.
    pub e: Option<String>,
    /// `f̄₂(v)` for `v = (−1)^p μ_t^{φ(p^{n-1})/2}`, in the x-basis.
    pub f2_v: String,
    /// Sifted basis of `Im(f̄₁)` (including `h̄`), in the x-basis.
    pub image_basis: Vec<String>,
    #[serde(
        serialize_with = "crate::bigser::serialize_one",
        deserialize_with = "crate::bigser::deserialize_one"
    )]
    pub image_order: BigInt,
    /// Whether `e ∈ Im(f̄₁)`.
    pub e_in_image: Option<bool>,
    /// Whether `f̄₂(v) ∈ Im(f̄₁)`.
    pub f2_v_in_image: bool,
    /// Whether `f̄₁(ϖ) = f̄₂(v)·e` holds.
    pub varpi_identity: Option<bool>,
    /// Whether `⟨e⟩ ∩ ⟨basis⟩ = 1`.
    pub e_independent: Option<bool>,
    /// Whether the leading-term criterion alone separates `e` from the basis.
    pub leading_term: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    /// Canonical text of each input.
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    pub witness: Witness,
    /// Mantissa bits of both passes, for log-rank certificates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_used: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    pub fn new(kind: CertKind, inputs: Vec<String>, verdict: Verdict, witness: Witness) -> Self {
        Certificate {
            kind,
            inputs,
            verdict,
            witness,
            precision_used: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}
