//! Versioned JSON snapshot format for spectral fields.
//!
//! Only half-lattice representatives (`k3>0`, or `k3=0, k2>0`, or
//! `k3=k2=0, k1>0`) are stored; the other half is reconstructed from the
//! reality condition `U_{-k} = conj(U_k)` on load.

use crate::domain::{DomainParams, Grid, WaveVector};
use crate::field::SpectralField;
use crate::{Result, SpectralError};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const SNAPSHOT_VERSION: &str = "spectral-snapshot-v1";

#[derive(Debug, Serialize, Deserialize)]
struct ModeRecord {
    k: [i32; 3],
    re: [f64; 4],
    im: [f64; 4],
}

#[derive(Debug, Serialize, Deserialize)]
struct SnapshotRecord {
    version: String,
    cutoff: u32,
    l1: f64,
    l2: f64,
    eta: f64,
    modes: Vec<ModeRecord>,
}

pub fn to_json(field: &SpectralField) -> String {
    let mut modes = Vec::new();
    for k in field.grid().iter_representatives() {
        let v = field.get(k);
        if v.iter().all(|c| *c == Complex64::ZERO) {
            continue;
        }
        modes.push(ModeRecord {
            k: [k.k1, k.k2, k.k3],
            re: [v[0].re, v[1].re, v[2].re, v[3].re],
            im: [v[0].im, v[1].im, v[2].im, v[3].im],
        });
    }
    let rec = SnapshotRecord {
        version: SNAPSHOT_VERSION.to_string(),
        cutoff: field.cutoff() as u32,
        l1: field.dom().l1(),
        l2: field.dom().l2(),
        eta: field.dom().eta(),
        modes,
    };
    serde_json::to_string(&rec).expect("snapshot serialization")
}

pub fn from_json(text: &str) -> Result<SpectralField> {
    let rec: SnapshotRecord =
        serde_json::from_str(text).map_err(|e| SpectralError::Snapshot(e.to_string()))?;
    if rec.version != SNAPSHOT_VERSION {
        return Err(SpectralError::Snapshot(format!(
            "unsupported version {:?}, expected {SNAPSHOT_VERSION:?}",
            rec.version
        )));
    }
    let dom = DomainParams::new(rec.l1, rec.l2, rec.eta)?;
    let mut field = SpectralField::zeros(rec.cutoff, dom);
    for m in &rec.modes {
        let k = WaveVector::new(m.k[0], m.k[1], m.k[2]);
        if !Grid::is_representative(k) {
            return Err(SpectralError::Snapshot(format!(
                "mode {k} is not a half-lattice representative"
            )));
        }
        if !field.grid().contains(k) {
            return Err(SpectralError::Snapshot(format!(
                "mode {k} outside the stored cutoff {}",
                rec.cutoff
            )));
        }
        let v = [
            Complex64::new(m.re[0], m.im[0]),
            Complex64::new(m.re[1], m.im[1]),
            Complex64::new(m.re[2], m.im[2]),
            Complex64::new(m.re[3], m.im[3]),
        ];
        field.set(k, v);
        field.set(-k, [v[0].conj(), v[1].conj(), v[2].conj(), v[3].conj()]);
    }
    Ok(field)
}

pub fn write_file(field: &SpectralField, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, to_json(field))
        .map_err(|e| SpectralError::Snapshot(format!("write {}: {e}", path.display())))
}

pub fn read_file(path: &std::path::Path) -> Result<SpectralField> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpectralError::Snapshot(format!("read {}: {e}", path.display())))?;
    from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_preserves_field() {
        let dom = DomainParams::new(1.3, 0.7, 0.4).unwrap();
        let mut f = SpectralField::zeros(2, dom);
        let k = WaveVector::new(1, -2, 2);
        let v = [
            Complex64::new(0.1, 0.2),
            Complex64::new(-0.3, 0.4),
            Complex64::new(0.5, -0.6),
            Complex64::new(0.7, 0.8),
        ];
        f.set(k, v);
        f.set(-k, [v[0].conj(), v[1].conj(), v[2].conj(), v[3].conj()]);
        let g = from_json(&to_json(&f)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn version_is_checked() {
        let bad = r#"{"version":"nope","cutoff":1,"l1":1.0,"l2":1.0,"eta":2.0,"modes":[]}"#;
        assert!(from_json(bad).is_err());
    }
}
