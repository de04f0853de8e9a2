//! Manually curated keyword clusters and their mention shares per category.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ngram::AnalyzedDocument;
use crate::text::{normalize, StemRuleSet, TermMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeywordCluster {
    pub name: String,
    pub members: BTreeSet<String>,
}

impl KeywordCluster {
    pub fn new<I, S>(name: impl Into<String>, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let name = name.into();
        let mut set = BTreeSet::new();
        for raw in members {
            let word = normalize(raw.as_ref());
            if word.is_empty() {
                continue;
            }
            if word.contains(' ') {
                return Err(Error::Parameter(format!(
                    "cluster {name:?}: member {:?} is not a single word",
                    raw.as_ref()
                )));
            }
            set.insert(word);
        }
        if set.is_empty() {
            return Err(Error::EmptyCluster(name));
        }
        Ok(KeywordCluster { name, members: set })
    }

    /// The same cluster with every member replaced by its stem.
    pub fn stemmed(&self, rules: &StemRuleSet) -> KeywordCluster {
        KeywordCluster {
            name: self.name.clone(),
            members: self.members.iter().map(|m| rules.stem_str(m).to_string()).collect(),
        }
    }
}

/// Fails with the first term claimed by two clusters.
pub fn check_disjoint(clusters: &[KeywordCluster]) -> Result<()> {
    let mut owner: HashMap<&str, &str> = HashMap::new();
    for cluster in clusters {
        for member in &cluster.members {
            if let Some(first) = owner.insert(member, &cluster.name) {
                return Err(Error::ClusterConflict {
                    term: member.clone(),
                    first: first.to_string(),
                    second: cluster.name.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Parses a JSON object of cluster name to word list. Clusters come back in
/// name order.
pub fn load_clusters(json: &str) -> Result<Vec<KeywordCluster>> {
    let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(json)?;
    let clusters = raw
        .into_iter()
        .map(|(name, words)| KeywordCluster::new(name, words))
        .collect::<Result<Vec<_>>>()?;
    check_disjoint(&clusters)?;
    Ok(clusters)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Every matching token occurrence counts.
    #[default]
    Tokens,
    /// A document counts once per cluster it mentions.
    Documents,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryFilter<'a> {
    Any,
    Uncategorized,
    Label(&'a str),
}

impl CategoryFilter<'_> {
    fn matches(&self, category: Option<&str>) -> bool {
        match self {
            CategoryFilter::Any => true,
            CategoryFilter::Uncategorized => category.is_none(),
            CategoryFilter::Label(label) => category == Some(*label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterCount {
    pub cluster: String,
    pub count: u64,
}

/// Mentions of each cluster over documents matching `filter`, in cluster order.
/// Tokens are compared in `mode` form; pass stemmed clusters for stem mode.
pub fn cluster_mentions(
    documents: &[AnalyzedDocument],
    clusters: &[KeywordCluster],
    filter: &CategoryFilter<'_>,
    mode: TermMode,
    count_mode: CountMode,
) -> Vec<ClusterCount> {
    let lookup: HashMap<&str, usize> = clusters
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.members.iter().map(move |m| (m.as_str(), i)))
        .collect();
    let mut counts = vec![0u64; clusters.len()];
    for doc in documents.iter().filter(|d| filter.matches(d.category.as_deref())) {
        let mut per_doc = vec![0u64; clusters.len()];
        for token in doc.runs.iter().flat_map(|r| r.tokens.iter()) {
            if let Some(&i) = lookup.get(token.term(mode)) {
                per_doc[i] += 1;
            }
        }
        for (total, hits) in counts.iter_mut().zip(per_doc) {
            *total += match count_mode {
                CountMode::Tokens => hits,
                CountMode::Documents => u64::from(hits > 0),
            };
        }
    }
    clusters
        .iter()
        .zip(counts)
        .map(|(c, count)| ClusterCount {
            cluster: c.name.clone(),
            count,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterShare {
    pub cluster: String,
    pub count: u64,
    /// Percentage of all mentions in the category; `None` when there are none.
    pub share: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryBreakdown {
    pub category: String,
    pub no_data: bool,
    pub clusters: Vec<ClusterShare>,
}

pub fn category_share(category: impl Into<String>, counts: &[ClusterCount]) -> Result<CategoryBreakdown> {
    if counts.is_empty() {
        return Err(Error::Parameter("at least one cluster is required".into()));
    }
    let total: u64 = counts.iter().map(|c| c.count).sum();
    let clusters = counts
        .iter()
        .map(|c| ClusterShare {
            cluster: c.cluster.clone(),
            count: c.count,
            share: (total > 0).then(|| 100.0 * c.count as f64 / total as f64),
        })
        .collect();
    Ok(CategoryBreakdown {
        category: category.into(),
        no_data: total == 0,
        clusters,
    })
}
