//! Text form of proximity-map specs, e.g. `pe:r=2,M=CM,method=lines`,
//! `cs:tau=1,M=CM`, `as:M=CC`, `dd:M=CM`, `dx`, `sph`. A custom center is
//! written `M=(x;y)` in basic coordinates.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::geom::Point2;
use crate::partitions::{CenterSpec, Method};
use crate::proximity::{ProximityMapSpec, Ratio};

impl fmt::Display for CenterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterSpec::CC => write!(f, "CC"),
            CenterSpec::IC => write!(f, "IC"),
            CenterSpec::CM => write!(f, "CM"),
            CenterSpec::OC => write!(f, "OC"),
            CenterSpec::Custom(p) => write!(f, "({};{})", p.x, p.y),
        }
    }
}

impl FromStr for CenterSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<CenterSpec, Error> {
        match s {
            "CC" => Ok(CenterSpec::CC),
            "IC" => Ok(CenterSpec::IC),
            "CM" => Ok(CenterSpec::CM),
            "OC" => Ok(CenterSpec::OC),
            _ => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown center '{s}'")))?;
                let (x, y) = inner.split_once(';').ok_or_else(|| Error::Parse(format!("bad center '{s}'")))?;
                Ok(CenterSpec::Custom(Point2::try_new(num(x)?, num(y)?)?))
            }
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Lines => "lines",
            Method::Orthogonal => "orthogonal",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method, Error> {
        match s {
            "lines" => Ok(Method::Lines),
            "orthogonal" | "orth" => Ok(Method::Orthogonal),
            _ => Err(Error::Parse(format!("unknown method '{s}'"))),
        }
    }
}

fn num(s: &str) -> Result<f64, Error> {
    s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{s}'")))
}

impl fmt::Display for ProximityMapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProximityMapSpec::Spherical => write!(f, "sph"),
            ProximityMapSpec::DoubleX => write!(f, "dx"),
            ProximityMapSpec::ArcSlice { center, method } => write!(f, "as:M={center},method={method}"),
            ProximityMapSpec::PropEdge { r, center, method } => {
                let r = match r {
                    Ratio::Finite(r) => r.to_string(),
                    Ratio::Infinite => "inf".to_string(),
                };
                write!(f, "pe:r={r},M={center},method={method}")
            }
            ProximityMapSpec::CentralSim { tau, center } => write!(f, "cs:tau={tau},M={center}"),
            ProximityMapSpec::DirDouble { center } => write!(f, "dd:M={center}"),
        }
    }
}

impl FromStr for ProximityMapSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<ProximityMapSpec, Error> {
        let s = s.trim();
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut r = None;
        let mut tau = None;
        let mut center = None;
        let mut method = None;
        for kv in rest.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got '{kv}'")))?;
            match k.trim() {
                "r" => {
                    r = Some(match v.trim() {
                        "inf" | "∞" => Ratio::Infinite,
                        t => Ratio::Finite(num(t)?),
                    })
                }
                "tau" => tau = Some(num(v)?),
                "M" => center = Some(v.trim().parse::<CenterSpec>()?),
                "method" => method = Some(v.trim().parse::<Method>()?),
                other => return Err(Error::Parse(format!("unknown key '{other}'"))),
            }
        }
        let no_keys = |name: &str| -> Result<(), Error> {
            if r.is_some() || tau.is_some() || center.is_some() || method.is_some() {
                return Err(Error::Parse(format!("'{name}' takes no parameters")));
            }
            Ok(())
        };
        let only = |allowed_r: bool, allowed_tau: bool, allowed_method: bool| -> Result<(), Error> {
            if (!allowed_r && r.is_some()) || (!allowed_tau && tau.is_some()) || (!allowed_method && method.is_some()) {
                return Err(Error::Parse(format!("parameter not valid for '{family}'")));
            }
            Ok(())
        };
        let spec = match family.trim() {
            "sph" => {
                no_keys("sph")?;
                ProximityMapSpec::Spherical
            }
            "dx" => {
                no_keys("dx")?;
                ProximityMapSpec::DoubleX
            }
            "pe" => {
                only(true, false, true)?;
                ProximityMapSpec::PropEdge {
                    r: r.ok_or_else(|| Error::Parse("pe needs r".into()))?,
                    center: center.unwrap_or(CenterSpec::CM),
                    method: method.unwrap_or(Method::Lines),
                }
            }
            "cs" => {
                only(false, true, false)?;
                ProximityMapSpec::CentralSim {
                    tau: tau.ok_or_else(|| Error::Parse("cs needs tau".into()))?,
                    center: center.unwrap_or(CenterSpec::CM),
                }
            }
            "as" => {
                only(false, false, true)?;
                ProximityMapSpec::ArcSlice {
                    center: center.unwrap_or(CenterSpec::CC),
                    method: method.unwrap_or(Method::Orthogonal),
                }
            }
            "dd" => {
                only(false, false, false)?;
                ProximityMapSpec::DirDouble { center: center.unwrap_or(CenterSpec::CM) }
            }
            other => return Err(Error::Parse(format!("unknown family '{other}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl TryFrom<String> for ProximityMapSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<ProximityMapSpec, Error> {
        s.parse()
    }
}

impl From<ProximityMapSpec> for String {
    fn from(s: ProximityMapSpec) -> String {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_parse() {
        for s in ["pe:r=2,M=CM,method=lines", "cs:tau=1,M=CM", "as:M=CC", "dd:M=CM", "dx", "sph", "pe:r=inf", "pe:r=1.25,M=(0.3;0.17320508075688773)"] {
            let spec: ProximityMapSpec = s.parse().unwrap();
            let again: ProximityMapSpec = spec.to_string().parse().unwrap();
            assert_eq!(spec, again, "{s}");
        }
    }

    #[test]
    fn errors() {
        assert!("xx:r=1".parse::<ProximityMapSpec>().is_err());
        assert!("pe".parse::<ProximityMapSpec>().is_err());
        assert!("pe:r=0.5".parse::<ProximityMapSpec>().is_err());
        assert!("cs:tau=1,method=lines".parse::<ProximityMapSpec>().is_err());
        assert!("dx:M=CM".parse::<ProximityMapSpec>().is_err());
    }
}
