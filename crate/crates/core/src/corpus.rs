//! Transcript corpus loading and metadata filtering.
//!
//! A corpus is read from JSON Lines files: one object per line with the
//! fields `id`, `title`, `subcase`, `role` and `text`. Either a single file
//! or a directory of `.jsonl` / `.ndjson` / `.json` files is accepted;
//! directory entries are read in file-name order.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Territorial subcase a transcript belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subcase {
    Antioquia,
    Casanare,
    CostaCaribe,
    Huila,
    Meta,
    NorteDeSantander,
    Unassigned,
}

impl Subcase {
    /// The six assigned regions, in report order.
    pub const REGIONS: [Subcase; 6] = [
        Subcase::Antioquia,
        Subcase::Casanare,
        Subcase::CostaCaribe,
        Subcase::Huila,
        Subcase::Meta,
        Subcase::NorteDeSantander,
    ];

    /// Region name as written in transcript metadata. `None` for `Unassigned`.
    pub fn region_name(self) -> Option<&'static str> {
        match self {
            Subcase::Antioquia => Some("Antioquia"),
            Subcase::Casanare => Some("Casanare"),
            Subcase::CostaCaribe => Some("Costa Caribe"),
            Subcase::Huila => Some("Huila"),
            Subcase::Meta => Some("Meta"),
            Subcase::NorteDeSantander => Some("Norte de Santander"),
            Subcase::Unassigned => None,
        }
    }

    /// Short identifier used in file names and scope keys.
    pub fn slug(self) -> &'static str {
        match self {
            Subcase::Antioquia => "antioquia",
            Subcase::Casanare => "casanare",
            Subcase::CostaCaribe => "costa_caribe",
            Subcase::Huila => "huila",
            Subcase::Meta => "meta",
            Subcase::NorteDeSantander => "norte_de_santander",
            Subcase::Unassigned => "unassigned",
        }
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.region_name().unwrap_or("Unassigned"))
    }
}

impl FromStr for Subcase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .flat_map(char::to_lowercase)
            .collect();
        Ok(match key.as_str() {
            "antioquia" => Subcase::Antioquia,
            "casanare" => Subcase::Casanare,
            "costacaribe" => Subcase::CostaCaribe,
            "huila" => Subcase::Huila,
            "meta" => Subcase::Meta,
            "nortedesantander" => Subcase::NorteDeSantander,
            "unassigned" => Subcase::Unassigned,
            _ => return Err(Error::InvalidArgument(format!("unknown subcase `{s}`"))),
        })
    }
}

/// Speaker role of a transcript.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    Victim,
    Appearer,
    Unknown,
}

impl Role {
    pub fn wire_name(self) -> Option<&'static str> {
        match self {
            Role::Victim => Some("victima"),
            Role::Appearer => Some("compareciente"),
            Role::Unknown => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Victim => "Victim",
            Role::Appearer => "Appearer",
            Role::Unknown => "Unknown",
        })
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_lowercase().as_str() {
            "victima" | "víctima" | "victim" => Role::Victim,
            "compareciente" | "appearer" => Role::Appearer,
            "unknown" => Role::Unknown,
            _ => return Err(Error::InvalidArgument(format!("unknown role `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub subcase: Subcase,
    pub role: Role,
    pub text: String,
    /// Set for documents whose transcript is empty; they are kept for
    /// bookkeeping but excluded from every analysis.
    pub skipped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub source_path: String,
}

#[derive(Deserialize)]
struct Record {
    id: Option<String>,
    #[serde(default)]
    title: Option<String>,
    #[serde(default)]
    subcase: Option<String>,
    #[serde(default)]
    role: Option<String>,
    #[serde(default)]
    text: Option<String>,
}

#[derive(Serialize)]
struct RecordOut<'a> {
    id: &'a str,
    title: &'a str,
    subcase: Option<&'static str>,
    role: Option<&'static str>,
    text: &'a str,
}

/// Loads every record under `path` (a file or a directory of files).
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let meta = fs::metadata(path).map_err(|e| Error::io(path, e))?;
    let files: Vec<PathBuf> = if meta.is_dir() {
        let mut files = Vec::new();
        for entry in fs::read_dir(path).map_err(|e| Error::io(path, e))? {
            let p = entry.map_err(|e| Error::io(path, e))?.path();
            let ext = p.extension().and_then(|e| e.to_str()).unwrap_or("");
            if p.is_file() && matches!(ext, "jsonl" | "ndjson" | "json") {
                files.push(p);
            }
        }
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };

    let mut documents = Vec::new();
    let mut seen = HashSet::new();
    for file in &files {
        let content = fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
        for (idx, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let doc = parse_record(line).map_err(|message| Error::Malformed {
                path: file.clone(),
                line: idx + 1,
                message,
            })?;
            if !seen.insert(doc.id.clone()) {
                return Err(Error::DuplicateId(doc.id));
            }
            documents.push(doc);
        }
    }
    Ok(Corpus {
        documents,
        source_path: path.display().to_string(),
    })
}

fn parse_record(line: &str) -> std::result::Result<Document, String> {
    let rec: Record = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let id = rec.id.filter(|s| !s.is_empty()).ok_or("missing or empty `id`")?;
    let subcase = match rec.subcase.as_deref() {
        None | Some("") => Subcase::Unassigned,
        Some(s) => s.parse().map_err(|e: Error| e.to_string())?,
    };
    let role = match rec.role.as_deref() {
        None | Some("") => Role::Unknown,
        Some(s) => s.parse().map_err(|e: Error| e.to_string())?,
    };
    let text = rec.text.unwrap_or_default();
    Ok(Document {
        skipped: text.trim().is_empty(),
        id,
        title: rec.title.unwrap_or_default(),
        subcase,
        role,
        text,
    })
}

/// Writes the corpus back in the JSON Lines transcript format.
pub fn write_corpus(corpus: &Corpus, mut out: impl Write) -> std::io::Result<()> {
    for doc in &corpus.documents {
        let rec = RecordOut {
            id: &doc.id,
            title: &doc.title,
            subcase: doc.subcase.region_name(),
            role: doc.role.wire_name(),
            text: &doc.text,
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn count(&self, subcase: Option<Subcase>, role: Option<Role>) -> usize {
        self.documents
            .iter()
            .filter(|d| matches_filter(d, subcase, role))
            .count()
    }
}

fn matches_filter(doc: &Document, subcase: Option<Subcase>, role: Option<Role>) -> bool {
    subcase.is_none_or(|s| doc.subcase == s) && role.is_none_or(|r| doc.role == r)
}

/// Documents matching every given criterion, in corpus order.
pub fn filter_corpus(corpus: &Corpus, subcase: Option<Subcase>, role: Option<Role>) -> Corpus {
    Corpus {
        documents: corpus
            .documents
            .iter()
            .filter(|d| matches_filter(d, subcase, role))
            .cloned()
            .collect(),
        source_path: corpus.source_path.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibilityCell {
    pub subcase: Subcase,
    pub role: Role,
    pub documents: usize,
    pub eligible: bool,
}

/// Role-split eligibility for every region and the two labelled roles.
pub fn role_analysis_eligibility(corpus: &Corpus, min_docs: usize) -> Vec<EligibilityCell> {
    let mut cells = Vec::new();
    for subcase in Subcase::REGIONS {
        for role in [Role::Appearer, Role::Victim] {
            let documents = corpus.count(Some(subcase), Some(role));
            cells.push(EligibilityCell {
                subcase,
                role,
                documents,
                eligible: documents >= min_docs.max(1),
            });
        }
    }
    cells
}
