//! Text and JSON serialization: polynomial files, parameter files, balance
//! reports and trajectory CSV.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::balance::BalanceReport;
use crate::coeff::{format_rational, parse_rational, GaussianRational as Gq};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::mechanism::{DesignParams, Poly};
use crate::sim::Sample;

/// Parses the whitespace-separated polynomial format: one term per line,
/// `e1 e2 re im`, with `#` starting a comment and blank lines ignored.
/// Repeated exponents accumulate.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut terms: Vec<(i64, i64, Gq)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 4 fields 'e1 e2 re im', found {}", fields.len()),
            });
        }
        let e1: i64 = fields[0].parse().map_err(|_| Error::Parse {
            line: idx + 1,
            msg: format!("bad exponent '{}'", fields[0]),
        })?;
        let e2: i64 = fields[1].parse().map_err(|_| Error::Parse {
            line: idx + 1,
            msg: format!("bad exponent '{}'", fields[1]),
        })?;
        let re = parse_rational(fields[2]).map_err(|msg| Error::Parse { line: idx + 1, msg })?;
        let im = parse_rational(fields[3]).map_err(|msg| Error::Parse { line: idx + 1, msg })?;
        terms.push((e1, e2, Gq::new(re, im)));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Inverse of [`parse_poly`]; terms come out in exponent order.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "# zero polynomial\n".into();
    }
    let mut out = String::new();
    for (e, c) in p.terms() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            e.e1,
            e.e2,
            format_rational(&c.re),
            format_rational(&c.im)
        ));
    }
    out
}

fn rat_value(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn gq_value(g: &Gq) -> Value {
    json!([format_rational(&g.re), format_rational(&g.im)])
}

/// Serializes the design parameters as JSON with exact rational strings;
/// the unit points `p_i` are `[re, im]` pairs.
pub fn params_to_json(p: &DesignParams) -> String {
    let v = json!({
        "lengths": {
            "l1": rat_value(&p.l1),
            "l2": rat_value(&p.l2),
            "l3": rat_value(&p.l3),
            "d": rat_value(&p.d),
        },
        "masses": {
            "m1": rat_value(&p.m1),
            "m2": rat_value(&p.m2),
            "m3": rat_value(&p.m3),
        },
        "com_radii": {
            "r1": rat_value(&p.r1),
            "r2": rat_value(&p.r2),
            "r3": rat_value(&p.r3),
        },
        "com_directions": {
            "p1": gq_value(&p.p1),
            "p2": gq_value(&p.p2),
            "p3": gq_value(&p.p3),
        },
        "inertias": {
            "I1": rat_value(&p.i1),
            "I2": rat_value(&p.i2),
            "I3": rat_value(&p.i3),
        },
    });
    serde_json::to_string_pretty(&v).expect("static structure") + "\n"
}

fn obj<'a>(v: &'a Value, key: &str) -> Result<&'a Map<String, Value>> {
    v.get(key)
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing object '{key}'"),
        })
}

fn rat_field(m: &Map<String, Value>, key: &str) -> Result<BigRational> {
    let v = m.get(key).ok_or_else(|| Error::Parse {
        line: 0,
        msg: format!("missing field '{key}'"),
    })?;
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => {
            return Err(Error::Parse {
                line: 0,
                msg: format!("field '{key}' must be a rational string, got {other}"),
            })
        }
    };
    parse_rational(&s).map_err(|msg| Error::Parse {
        line: 0,
        msg: format!("field '{key}': {msg}"),
    })
}

fn gq_field(m: &Map<String, Value>, key: &str) -> Result<Gq> {
    let v = m.get(key).ok_or_else(|| Error::Parse {
        line: 0,
        msg: format!("missing field '{key}'"),
    })?;
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse {
        line: 0,
        msg: format!("field '{key}' must be a [re, im] pair"),
    })?;
    let part = |v: &Value, which: &str| -> Result<BigRational> {
        let s = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            other => {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("{which} part of '{key}' must be a rational, got {other}"),
                })
            }
        };
        parse_rational(&s).map_err(|msg| Error::Parse {
            line: 0,
            msg: format!("{which} part of '{key}': {msg}"),
        })
    };
    Ok(Gq::new(part(&arr[0], "real")?, part(&arr[1], "imaginary")?))
}

/// Parses and validates a parameter JSON document.
pub fn params_from_json(text: &str) -> Result<DesignParams> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let lengths = obj(&v, "lengths")?;
    let masses = obj(&v, "masses")?;
    let radii = obj(&v, "com_radii")?;
    let dirs = obj(&v, "com_directions")?;
    let inertias = obj(&v, "inertias")?;
    let params = DesignParams {
        l1: rat_field(lengths, "l1")?,
        l2: rat_field(lengths, "l2")?,
        l3: rat_field(lengths, "l3")?,
        d: rat_field(lengths, "d")?,
        m1: rat_field(masses, "m1")?,
        m2: rat_field(masses, "m2")?,
        m3: rat_field(masses, "m3")?,
        r1: rat_field(radii, "r1")?,
        r2: rat_field(radii, "r2")?,
        r3: rat_field(radii, "r3")?,
        p1: gq_field(dirs, "p1")?,
        p2: gq_field(dirs, "p2")?,
        p3: gq_field(dirs, "p3")?,
        i1: rat_field(inertias, "I1")?,
        i2: rat_field(inertias, "I2")?,
        i3: rat_field(inertias, "I3")?,
    };
    params.validate()?;
    Ok(params)
}

/// Human-readable balance report.
pub fn report_to_text(r: &BalanceReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("kinematic case: {}\n", r.case));
    for m in &r.modes {
        out.push_str(&format!(
            "mode {} ({}): static {}, dynamic {}\n",
            m.label,
            m.constraint,
            if m.static_ok { "balanced" } else { "unbalanced" },
            if m.dynamic_ok { "balanced" } else { "unbalanced" },
        ));
        if !m.static_ok {
            out.push_str(&format!("  static witness: {}\n", m.static_witness));
        } else if !m.dynamic_ok {
            out.push_str(&format!("  dynamic witness: {}\n", m.dynamic_witness));
        }
    }
    if !r.residuals.is_empty() {
        out.push_str("closed-form residuals:\n");
        for res in &r.residuals {
            out.push_str(&format!(
                "  {}: {} [{}]\n",
                res.name,
                format_rational(&res.value),
                if res.satisfied() { "ok" } else { "violated" },
            ));
        }
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out.push_str(&format!(
        "verdict: {}\n",
        if r.balanced {
            "dynamically balanced in at least one mode"
        } else {
            "not dynamically balanced in any mode"
        }
    ));
    out
}

/// JSON balance report.
pub fn report_to_json(r: &BalanceReport) -> String {
    let modes: Vec<Value> = r
        .modes
        .iter()
        .map(|m| {
            json!({
                "label": m.label,
                "constraint": m.constraint,
                "static_balanced": m.static_ok,
                "dynamic_balanced": m.dynamic_ok,
                "static_witness": m.static_witness.to_string(),
                "dynamic_witness": m.dynamic_witness.to_string(),
            })
        })
        .collect();
    let residuals: Vec<Value> = r
        .residuals
        .iter()
        .map(|res| {
            json!({
                "name": res.name,
                "value": format_rational(&res.value),
                "satisfied": res.satisfied(),
            })
        })
        .collect();
    let v = json!({
        "case": r.case.to_string(),
        "modes": modes,
        "residuals": residuals,
        "notes": r.notes,
        "balanced": r.balanced,
    });
    serde_json::to_string_pretty(&v).expect("static structure") + "\n"
}

/// Trajectory CSV with a fixed header.
pub fn samples_to_csv(samples: &[Sample]) -> String {
    let mut out = String::from(
        "t,theta1,theta2,theta3,com_re,com_im,H_form,H_direct,closure_residual\n",
    );
    for s in samples {
        out.push_str(&format!(
            "{:.12},{:.12},{:.12},{:.12},{:.15e},{:.15e},{:.15e},{:.15e},{:.3e}\n",
            s.t,
            s.theta1,
            s.theta2,
            s.theta3,
            s.com.re,
            s.com.im,
            s.h_form,
            s.h_direct,
            s.config.closure_residual,
        ));
    }
    out
}
