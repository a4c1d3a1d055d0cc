use anyhow::Result;
use serde::Serialize;

/// 17 significant digits, '.' decimal point, no locale.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

pub fn angle_out(rad: f64, radians: bool) -> f64 {
    if radians {
        rad
    } else {
        rad.to_degrees()
    }
}

pub fn angle_in(x: f64, radians: bool) -> f64 {
    if radians {
        x
    } else {
        x.to_radians()
    }
}

pub fn unit_name(radians: bool) -> &'static str {
    if radians {
        "rad"
    } else {
        "deg"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(76.0), "7.6000000000000000e1");
        let x = 0.09016994374947424;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_header_first() {
        let b = csv_bytes(&["a", "b"], &[vec!["1".into(), "2".into()]]).unwrap();
        assert_eq!(String::from_utf8(b).unwrap(), "a,b\r\n1,2\r\n");
    }
}
