//! JSON file formats. Rationals are strings, agents are 1-based.

use std::collections::HashSet;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FairError, Result};
use crate::fairness::FairnessReport;
use crate::model::{Advice, Allocation, Instance};
use crate::value::{ExtendedFactor, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub goods: Vec<GoodEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advice: Option<AdviceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodEntry {
    pub id: String,
    pub values: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AdviceEntry {
    None,
    Totals { totals: Vec<Value> },
    Intervals { intervals: Vec<(Value, Value)> },
    Frequency { multisets: Vec<Vec<Value>> },
}

impl From<&Advice> for AdviceEntry {
    fn from(a: &Advice) -> Self {
        match a {
            Advice::None => AdviceEntry::None,
            Advice::Totals(t) => AdviceEntry::Totals { totals: t.clone() },
            Advice::TotalIntervals(iv) => AdviceEntry::Intervals { intervals: iv.clone() },
            Advice::Frequency(f) => AdviceEntry::Frequency { multisets: f.clone() },
        }
    }
}

impl From<AdviceEntry> for Advice {
    fn from(a: AdviceEntry) -> Self {
        match a {
            AdviceEntry::None => Advice::None,
            AdviceEntry::Totals { totals } => Advice::Totals(totals),
            AdviceEntry::Intervals { intervals } => Advice::TotalIntervals(intervals),
            AdviceEntry::Frequency { multisets } => Advice::Frequency(multisets),
        }
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FairError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }

    /// Goods get ids `g1`, `g2`, ...
    pub fn from_instance(instance: &Instance, advice: Option<&Advice>) -> Self {
        InstanceFile {
            n: instance.n(),
            goods: instance
                .goods()
                .iter()
                .enumerate()
                .map(|(t, v)| GoodEntry {
                    id: format!("g{}", t + 1),
                    values: v.clone(),
                })
                .collect(),
            advice: advice.map(AdviceEntry::from),
        }
    }

    pub fn ids(&self) -> Vec<String> {
        self.goods.iter().map(|g| g.id.clone()).collect()
    }

    pub fn instance(&self) -> Result<Instance> {
        let mut seen = HashSet::new();
        if let Some(g) = self.goods.iter().find(|g| !seen.insert(g.id.as_str())) {
            return Err(FairError::Parse(format!("duplicate good id {:?}", g.id)));
        }
        Instance::new(self.n, self.goods.iter().map(|g| g.values.clone()).collect())
    }

    /// The advice in the file, checked against `n`.
    pub fn advice(&self) -> Result<Option<Advice>> {
        let Some(entry) = &self.advice else {
            return Ok(None);
        };
        let advice = Advice::from(entry.clone());
        advice.validate(self.n)?;
        Ok(Some(advice))
    }
}

/// Good id to 1-based agent, kept in arrival order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AllocationMap(pub Vec<(String, usize)>);

impl AllocationMap {
    pub fn from_allocation(allocation: &Allocation, ids: &[String]) -> Self {
        AllocationMap(ids.iter().cloned().zip(allocation.owner().iter().map(|a| a + 1)).collect())
    }

    /// Resolves against the instance's ids; a good without an owner is an
    /// incomplete allocation.
    pub fn to_allocation(&self, n: usize, ids: &[String]) -> Result<Allocation> {
        let mut owner: Vec<Option<usize>> = vec![None; ids.len()];
        for (id, agent) in &self.0 {
            let t = ids
                .iter()
                .position(|x| x == id)
                .ok_or_else(|| FairError::Parse(format!("allocation names unknown good {id:?}")))?;
            if *agent == 0 || *agent > n {
                return Err(FairError::InvalidIndex(format!("good {id:?} assigned to agent {agent}, n = {n}")));
            }
            owner[t] = Some(agent - 1);
        }
        Allocation::from_partial(n, &owner)
    }
}

impl Serialize for AllocationMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (id, agent) in &self.0 {
            map.serialize_entry(id, agent)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for AllocationMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = AllocationMap;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from good id to 1-based agent")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<AllocationMap, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, usize>()? {
                    out.push((k, v));
                }
                Ok(AllocationMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factors {
    pub ef1: ExtendedFactor,
    pub efx: ExtendedFactor,
    pub prop1: ExtendedFactor,
    /// A factor, or `skipped(budget)`.
    pub mms: String,
}

impl From<&FairnessReport> for Factors {
    fn from(r: &FairnessReport) -> Self {
        Factors {
            ef1: r.ef1.clone(),
            efx: r.efx.clone(),
            prop1: r.prop1.clone(),
            mms: r.mms.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRow {
    pub good: String,
    pub values: Vec<Value>,
    pub agent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub property: String,
    pub ceiling: Value,
    pub measured: ExtendedFactor,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoisyNormEntry {
    pub rho: Vec<Value>,
    pub kappa: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub additive_ef1_margin: Option<Value>,
    pub kappa_prop1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoisyFreqEntry {
    pub eta: Vec<Value>,
    pub eps: Vec<Value>,
    pub wasserstein: Vec<Value>,
    pub guarantee_holds: bool,
    pub additive_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adversary: Option<String>,
    pub n: usize,
    pub factors: Factors,
    pub allocation: AllocationMap,
    pub bundle_values: Vec<Value>,
    /// Per-agent share promised by a frequency oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benchmark: Option<Vec<Value>>,
    pub transcript: Vec<TranscriptRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advice_violation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noisy_norm: Option<NoisyNormEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noisy_freq: Option<NoisyFreqEntry>,
}

impl ReportFile {
    pub fn new(
        algorithm: &str,
        instance: &Instance,
        ids: &[String],
        allocation: &Allocation,
        report: &FairnessReport,
    ) -> Self {
        ReportFile {
            algorithm: algorithm.to_owned(),
            adversary: None,
            n: instance.n(),
            factors: Factors::from(report),
            allocation: AllocationMap::from_allocation(allocation, ids),
            bundle_values: allocation.bundle_values(instance),
            benchmark: None,
            transcript: ids
                .iter()
                .zip(instance.goods())
                .zip(allocation.owner())
                .map(|((id, v), a)| TranscriptRow {
                    good: id.clone(),
                    values: v.clone(),
                    agent: a + 1,
                })
                .collect(),
            bound: None,
            advice_violation: None,
            noisy_norm: None,
            noisy_freq: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FairError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Reads the `allocation` field of any JSON document.
pub fn read_allocation_field(text: &str) -> Result<AllocationMap> {
    let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| FairError::Parse(e.to_string()))?;
    let field = doc
        .get("allocation")
        .ok_or_else(|| FairError::Parse("no \"allocation\" field".into()))?;
    AllocationMap::deserialize(field).map_err(|e| FairError::Parse(e.to_string()))
}

/// `{"intervals": [[lo, hi], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalsFile {
    pub intervals: Vec<(Value, Value)>,
}

/// `{"multisets": [[v, ...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionsFile {
    pub multisets: Vec<Vec<Value>>,
}
