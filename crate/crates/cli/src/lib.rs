//! Rendering and serialization for certificates and scans: the fixed text
//! format, CSV, and a JSON schema with all bigints as decimal strings so
//! fundamental-unit coordinates survive any JSON consumer.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use k3corr_core::k3class::{Certificate, NotInDReason, Status, Tag, H1};
use k3corr_core::lattice2::Elem2;
use k3corr_core::quadorder::FundamentalUnit;

/// Renders (x, y) as `(<x>h+<y>a)/2`, folding the sign of y.
fn pair(x: &BigInt, y: &BigInt) -> String {
    if y.is_negative() {
        format!("({x}h-{}a)/2", -y)
    } else {
        format!("({x}h+{y}a)/2")
    }
}

pub fn status_str(status: Status) -> String {
    match status {
        Status::Both => "both".to_string(),
        Status::PlusOnly => "plus".to_string(),
        Status::MinusOnly => "minus".to_string(),
        Status::SpecialD1 => "special1".to_string(),
        Status::SpecialD9 => "special9".to_string(),
        Status::NotInD(reason) => format!("not-in-D:{}", reason_str(reason)),
    }
}

fn reason_str(reason: NotInDReason) -> &'static str {
    match reason {
        NotInDReason::NotOneMod8 => "not-one-mod-8",
        NotInDReason::Square => "square",
        NotInDReason::LocalObstruction => "local-obstruction",
        NotInDReason::NoBoundedSolution => "no-bounded-solution",
    }
}

/// The fixed one-line-per-field text format of a certificate.
pub fn certificate_text(cert: &Certificate) -> String {
    let mut out = format!("d={} status={}\n", cert.d, status_str(cert.status));
    if let Some(u) = &cert.eps0 {
        out += &format!("eps0={} norm={:+}\n", pair(&u.s, &u.t), u.norm);
    }
    if let Some(cl) = cert.cl {
        out += &format!("cl={cl}\n");
    }
    if let Some(h1) = &cert.h1 {
        out += &format!("h1={} sq={:+}\n", pair(&h1.a, &h1.b), h1.sq);
    }
    if let Some(r) = &cert.r_or_hprime {
        let key = if cert.status == Status::Both { "r" } else { "hp" };
        out += &format!("{key}={}\n", pair(r.x(), r.y()));
    }
    if let Some(ht1) = &cert.h1_tilde {
        out += &format!("ht1={}\n", pair(ht1.x(), ht1.y()));
    }
    if let Some(h) = &cert.h_cap {
        out += &format!("H={}\n", pair(h.x(), h.y()));
    }
    out
}

const CSV_HEADER: &str = "d,status,reason,mu,eps0_s,eps0_t,eps0_norm,cl,h1_a,h1_b,h1_sq,r_x,r_y,hprime_x,hprime_y,ht1_x,ht1_y,H_x,H_y,notes";

/// One CSV row per certificate, empty cells for absent fields.
pub fn certificate_csv(cert: &Certificate) -> String {
    let mut cells: Vec<String> = Vec::with_capacity(20);
    cells.push(cert.d.to_string());
    match cert.status {
        Status::NotInD(reason) => {
            cells.push("not-in-D".to_string());
            cells.push(reason_str(reason).to_string());
        }
        other => {
            cells.push(status_str(other));
            cells.push(String::new());
        }
    }
    cells.push(cert.mu.map(|m| m.to_string()).unwrap_or_default());
    match &cert.eps0 {
        Some(u) => {
            cells.push(u.s.to_string());
            cells.push(u.t.to_string());
            cells.push(format!("{:+}", u.norm));
        }
        None => cells.extend([String::new(), String::new(), String::new()]),
    }
    cells.push(cert.cl.map(|c| c.to_string()).unwrap_or_default());
    match &cert.h1 {
        Some(h1) => {
            cells.push(h1.a.to_string());
            cells.push(h1.b.to_string());
            cells.push(format!("{:+}", h1.sq));
        }
        None => cells.extend([String::new(), String::new(), String::new()]),
    }
    let (r, hp) = match cert.status {
        Status::Both => (cert.r_or_hprime.as_ref(), None),
        _ => (None, cert.r_or_hprime.as_ref()),
    };
    for e in [r, hp] {
        match e {
            Some(v) => {
                cells.push(v.x().to_string());
                cells.push(v.y().to_string());
            }
            None => cells.extend([String::new(), String::new()]),
        }
    }
    for e in [cert.h1_tilde.as_ref(), cert.h_cap.as_ref()] {
        match e {
            Some(v) => {
                cells.push(v.x().to_string());
                cells.push(v.y().to_string());
            }
            None => cells.extend([String::new(), String::new()]),
        }
    }
    cells.push(cert.notes.join("; "));
    format!("{CSV_HEADER}\n{}\n", cells.join(","))
}

/// `1(±), 9(-), ...` scan rendering.
pub fn scan_text(entries: &[(BigInt, Tag)]) -> String {
    let items: Vec<String> = entries
        .iter()
        .map(|(d, tag)| format!("{d}({})", tag.symbol()))
        .collect();
    format!("{}\n", items.join(", "))
}

/// CSV scan rendering with a `d,tag` header.
pub fn scan_csv(entries: &[(BigInt, Tag)]) -> String {
    let mut out = String::from("d,tag\n");
    for (d, tag) in entries {
        out += &format!("{d},{}\n", tag.symbol());
    }
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct UnitJson {
    pub s: String,
    pub t: String,
    pub norm: i8,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct H1Json {
    pub a: String,
    pub b: String,
    pub sq: i8,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct XyJson {
    pub x: String,
    pub y: String,
}

/// JSON image of a certificate; every bigint is a decimal string.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertJson {
    pub d: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps0: Option<UnitJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cl: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<H1Json>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<XyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hprime: Option<XyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ht1: Option<XyJson>,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none")]
    pub h_cap: Option<XyJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn xy(e: &Elem2) -> XyJson {
    XyJson {
        x: e.x().to_string(),
        y: e.y().to_string(),
    }
}

impl From<&Certificate> for CertJson {
    fn from(cert: &Certificate) -> Self {
        let (status, reason) = match cert.status {
            Status::NotInD(r) => ("not-in-D".to_string(), Some(reason_str(r).to_string())),
            other => (status_str(other), None),
        };
        let (r, hprime) = match cert.status {
            Status::Both => (cert.r_or_hprime.as_ref().map(xy), None),
            _ => (None, cert.r_or_hprime.as_ref().map(xy)),
        };
        CertJson {
            d: cert.d.to_string(),
            status,
            reason,
            mu: cert.mu,
            eps0: cert.eps0.as_ref().map(|u| UnitJson {
                s: u.s.to_string(),
                t: u.t.to_string(),
                norm: u.norm,
            }),
            cl: cert.cl,
            h1: cert.h1.as_ref().map(|h| H1Json {
                a: h.a.to_string(),
                b: h.b.to_string(),
                sq: h.sq,
            }),
            r,
            hprime,
            ht1: cert.h1_tilde.as_ref().map(xy),
            h_cap: cert.h_cap.as_ref().map(xy),
            notes: cert.notes.clone(),
        }
    }
}

fn parse_big(s: &str, what: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("bad {what}: {s:?}"))
}

impl CertJson {
    /// Reconstructs the exact certificate; fails on malformed data.
    pub fn to_certificate(&self) -> Result<Certificate, String> {
        let d = parse_big(&self.d, "d")?;
        let status = match (self.status.as_str(), self.reason.as_deref()) {
            ("both", _) => Status::Both,
            ("plus", _) => Status::PlusOnly,
            ("minus", _) => Status::MinusOnly,
            ("special1", _) => Status::SpecialD1,
            ("special9", _) => Status::SpecialD9,
            ("not-in-D", Some("not-one-mod-8")) => Status::NotInD(NotInDReason::NotOneMod8),
            ("not-in-D", Some("square")) => Status::NotInD(NotInDReason::Square),
            ("not-in-D", Some("local-obstruction")) => {
                Status::NotInD(NotInDReason::LocalObstruction)
            }
            ("not-in-D", Some("no-bounded-solution")) => {
                Status::NotInD(NotInDReason::NoBoundedSolution)
            }
            (s, r) => return Err(format!("bad status {s:?} / reason {r:?}")),
        };
        let elem = |v: &XyJson| -> Result<Elem2, String> {
            Ok(Elem2::new(
                d.clone(),
                parse_big(&v.x, "x")?,
                parse_big(&v.y, "y")?,
            ))
        };
        let r_or_hprime = match (&self.r, &self.hprime) {
            (Some(v), None) => Some(elem(v)?),
            (None, Some(v)) => Some(elem(v)?),
            (None, None) => None,
            _ => return Err("both r and hprime present".to_string()),
        };
        Ok(Certificate {
            d: d.clone(),
            status,
            mu: self.mu,
            eps0: match &self.eps0 {
                Some(u) => Some(FundamentalUnit {
                    s: parse_big(&u.s, "s")?,
                    t: parse_big(&u.t, "t")?,
                    norm: u.norm,
                }),
                None => None,
            },
            cl: self.cl,
            h1: match &self.h1 {
                Some(h) => Some(H1 {
                    a: parse_big(&h.a, "a")?,
                    b: parse_big(&h.b, "b")?,
                    sq: h.sq,
                }),
                None => None,
            },
            r_or_hprime,
            h1_tilde: self.ht1.as_ref().map(&elem).transpose()?,
            h_cap: self.h_cap.as_ref().map(&elem).transpose()?,
            notes: self.notes.clone(),
        })
    }
}

/// Pretty JSON for one certificate.
pub fn certificate_json(cert: &Certificate) -> String {
    serde_json::to_string_pretty(&CertJson::from(cert)).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScanEntryJson {
    pub d: String,
    pub tag: String,
    pub certificate: CertJson,
}

/// Pretty JSON array of scan entries with embedded certificates.
pub fn scan_json(entries: &[(BigInt, Tag, Certificate)]) -> String {
    let rows: Vec<ScanEntryJson> = entries
        .iter()
        .map(|(d, tag, cert)| ScanEntryJson {
            d: d.to_string(),
            tag: tag.symbol().to_string(),
            certificate: CertJson::from(cert),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("serializable")
}
