//! Line-oriented shape definitions (`.pc` curves, `.ps` surfaces).
//!
//! ```text
//! curve helix
//! param t in [0, 2*pi]
//! const a = 1
//! const b = 0.5
//! x = a*cos(t)
//! y = a*sin(t)
//! z = b*t
//! ```

use super::{is_reserved, parse_str, BoundExpr, Expr, ExprError};
use crate::numerics::{Scalar, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Curve,
    Surface,
}

impl ShapeKind {
    pub fn arity(self) -> usize {
        match self {
            ShapeKind::Curve => 1,
            ShapeKind::Surface => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamDomain {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeDefinition {
    pub kind: ShapeKind,
    pub name: String,
    pub params: Vec<ParamDomain>,
    pub consts: Vec<(String, f64)>,
    pub components: [Expr; 3],
    bound: [BoundExpr; 3],
}

fn def_err(line: usize, message: impl Into<String>) -> ExprError {
    ExprError::Definition {
        line,
        message: message.into(),
    }
}

fn check_identifier(line: usize, name: &str) -> Result<(), ExprError> {
    let mut chars = name.chars();
    let ok_start = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    if !ok_start || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(def_err(line, format!("invalid identifier {name:?}")));
    }
    if is_reserved(name) || name == "pi" || name == "e" {
        return Err(def_err(line, format!("{name:?} is reserved")));
    }
    Ok(())
}

fn const_value(line: usize, text: &str, consts: &[(String, f64)]) -> Result<f64, ExprError> {
    let e = parse_str(text)?;
    let pairs: Vec<(&str, f64)> = consts.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    let v = e.bind(&[], &pairs)?.eval::<f64>(&[])?;
    if !v.is_finite() {
        return Err(def_err(line, format!("{text:?} is not finite")));
    }
    Ok(v)
}

/// Parses a definition file.
pub fn load_definition(text: &str) -> Result<ShapeDefinition, ExprError> {
    let mut header: Option<(ShapeKind, String)> = None;
    let mut param_lines: Vec<(usize, String, String)> = Vec::new();
    let mut consts: Vec<(String, f64)> = Vec::new();
    let mut comps: [Option<Expr>; 3] = [None, None, None];

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        if header.is_none() {
            let kind = match word {
                "curve" => ShapeKind::Curve,
                "surface" => ShapeKind::Surface,
                _ => return Err(def_err(line, "expected `curve <name>` or `surface <name>` header")),
            };
            if rest.is_empty() || rest.contains(char::is_whitespace) {
                return Err(def_err(line, "header needs a single-word name"));
            }
            header = Some((kind, rest.to_string()));
            continue;
        }
        match word {
            "param" => {
                let (name, range) = rest
                    .split_once(" in ")
                    .ok_or_else(|| def_err(line, "expected `param <id> in [a, b]`"))?;
                let name = name.trim();
                check_identifier(line, name)?;
                param_lines.push((line, name.to_string(), range.trim().to_string()));
            }
            "const" => {
                let (name, value) = rest
                    .split_once('=')
                    .ok_or_else(|| def_err(line, "expected `const <id> = <number>`"))?;
                let name = name.trim();
                check_identifier(line, name)?;
                if consts.iter().any(|(n, _)| n == name) {
                    return Err(def_err(line, format!("constant {name} declared twice")));
                }
                let v = const_value(line, value.trim(), &consts)?;
                consts.push((name.to_string(), v));
            }
            _ => {
                let (lhs, rhs) = content
                    .split_once('=')
                    .ok_or_else(|| def_err(line, format!("unrecognized line {content:?}")))?;
                let slot = match lhs.trim() {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    other => return Err(def_err(line, format!("unrecognized line starting {other:?}"))),
                };
                if comps[slot].is_some() {
                    return Err(def_err(line, format!("component {} defined twice", lhs.trim())));
                }
                comps[slot] = Some(parse_str(rhs.trim())?);
            }
        }
    }

    let (kind, name) = header.ok_or_else(|| def_err(0, "empty definition"))?;
    if param_lines.len() != kind.arity() {
        return Err(def_err(
            0,
            format!("a {:?} needs exactly {} parameter(s), found {}", kind, kind.arity(), param_lines.len()),
        ));
    }
    let mut params = Vec::new();
    for (line, pname, range) in param_lines {
        if consts.iter().any(|(c, _)| *c == pname) || params.iter().any(|p: &ParamDomain| p.name == pname) {
            return Err(def_err(line, format!("{pname} declared twice")));
        }
        let inner = range
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| def_err(line, "domain must be written [a, b]"))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| def_err(line, "domain must be written [a, b]"))?;
        let lo = const_value(line, a.trim(), &consts)?;
        let hi = const_value(line, b.trim(), &consts)?;
        if !(lo < hi) {
            return Err(def_err(line, format!("empty domain [{lo}, {hi}]")));
        }
        params.push(ParamDomain { name: pname, lo, hi });
    }
    let [x, y, z] = comps;
    let missing = |c: &str| def_err(0, format!("component {c} missing"));
    let components = [x.ok_or_else(|| missing("x"))?, y.ok_or_else(|| missing("y"))?, z.ok_or_else(|| missing("z"))?];
    ShapeDefinition::build(kind, name, params, consts, components)
}

impl ShapeDefinition {
    pub fn build(
        kind: ShapeKind,
        name: String,
        params: Vec<ParamDomain>,
        consts: Vec<(String, f64)>,
        components: [Expr; 3],
    ) -> Result<Self, ExprError> {
        let names: Vec<&str> = params.iter().map(|p| p.name.as_str()).collect();
        let pairs: Vec<(&str, f64)> = consts.iter().map(|(n, v)| (n.as_str(), *v)).collect();
        let bound = [
            components[0].bind(&names, &pairs)?,
            components[1].bind(&names, &pairs)?,
            components[2].bind(&names, &pairs)?,
        ];
        Ok(ShapeDefinition {
            kind,
            name,
            params,
            consts,
            components,
            bound,
        })
    }

    /// Replaces constant values, e.g. from command-line overrides.
    pub fn with_consts(&self, overrides: &[(String, f64)]) -> Result<Self, ExprError> {
        let mut consts = self.consts.clone();
        for (k, v) in overrides {
            match consts.iter_mut().find(|(n, _)| n == k) {
                Some(slot) => slot.1 = *v,
                None => return Err(ExprError::Name { name: k.clone() }),
            }
        }
        ShapeDefinition::build(self.kind, self.name.clone(), self.params.clone(), consts, self.components.clone())
    }

    /// The components with parameters bound to slots in declaration order.
    pub fn bound(&self) -> &[BoundExpr; 3] {
        &self.bound
    }

    pub fn eval<S: Scalar>(&self, args: &[S]) -> Result<Vec3<S>, ExprError> {
        Ok(Vec3::new(
            self.bound[0].eval(args)?,
            self.bound[1].eval(args)?,
            self.bound[2].eval(args)?,
        ))
    }

    pub fn eval_unchecked<S: Scalar>(&self, args: &[S]) -> Vec3<S> {
        Vec3::new(
            self.bound[0].eval_unchecked(args),
            self.bound[1].eval_unchecked(args),
            self.bound[2].eval_unchecked(args),
        )
    }

    /// Checks parameter values against the declared domain, optionally
    /// clamping instead of rejecting.
    pub fn check_domain(&self, args: &[f64], clamp: bool) -> Result<Vec<f64>, ExprError> {
        args.iter()
            .zip(&self.params)
            .map(|(&v, p)| {
                if v >= p.lo && v <= p.hi {
                    Ok(v)
                } else if clamp && v.is_finite() {
                    Ok(v.clamp(p.lo, p.hi))
                } else {
                    Err(ExprError::OutOfDomain {
                        name: p.name.clone(),
                        value: v,
                        lo: p.lo,
                        hi: p.hi,
                    })
                }
            })
            .collect()
    }

    /// Serializes back to the definition format.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {}\n",
            match self.kind {
                ShapeKind::Curve => "curve",
                ShapeKind::Surface => "surface",
            },
            self.name
        );
        for p in &self.params {
            s += &format!("param {} in [{:?}, {:?}]\n", p.name, p.lo, p.hi);
        }
        for (n, v) in &self.consts {
            s += &format!("const {n} = {v:?}\n");
        }
        for (c, e) in ["x", "y", "z"].iter().zip(&self.components) {
            s += &format!("{c} = {e}\n");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Jet1, Jet2};

    const HELIX: &str = "# circular helix\ncurve helix\nparam t in [0, 2*pi]\nconst a = 1\nconst b = 0.5\nx = a*cos(t)\ny = a*sin(t)\nz = b*t\n";

    #[test]
    fn helix_position_and_velocity() {
        let d = load_definition(HELIX).unwrap();
        assert_eq!(d.kind, ShapeKind::Curve);
        assert_eq!(d.params[0].hi, 2.0 * std::f64::consts::PI);
        let r = d.eval(&[Jet1::variable(0.0)]).unwrap();
        assert_eq!(r.derivative(0), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(r.derivative(1), Vec3::new(0.0, 1.0, 0.5));
    }

    #[test]
    fn plane_tangents() {
        let d = load_definition("surface plane\nparam u in [-1,1]\nparam v in [-1,1]\nx=u\ny=v\nz=0").unwrap();
        let r = d.eval(&[Jet2::var_u(0.3), Jet2::var_v(-0.2)]).unwrap();
        assert_eq!(r.partial(1, 0), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(r.partial(0, 1), Vec3::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn monge_patch_u_tangent() {
        let d = load_definition("surface monge\nparam u in [-2,2]\nparam v in [-2,2]\nx=u\ny=v\nz=u^2+v^2").unwrap();
        let r = d.eval(&[Jet2::var_u(1.0), Jet2::var_v(0.0)]).unwrap();
        assert_eq!(r.partial(1, 0), Vec3::new(1.0, 0.0, 2.0));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            load_definition("curve c\nparam t in [0,1]\nx=t\ny=t"),
            Err(ExprError::Definition { .. })
        ));
        assert!(matches!(
            load_definition("curve c\nparam t in [0,1]\nparam s in [0,1]\nx=t\ny=t\nz=s"),
            Err(ExprError::Definition { .. })
        ));
        assert!(matches!(
            load_definition("curve c\nparam t in [0,1]\nx=t\ny=q\nz=t"),
            Err(ExprError::Name { .. })
        ));
        assert!(matches!(
            load_definition("curve c\nparam sin in [0,1]\nx=1\ny=1\nz=1"),
            Err(ExprError::Definition { line: 2, .. })
        ));
    }

    #[test]
    fn domain_rejection_and_clamping() {
        let d = load_definition(HELIX).unwrap();
        assert!(d.check_domain(&[7.0], false).is_err());
        assert_eq!(d.check_domain(&[-1.0], true).unwrap(), vec![0.0]);
    }

    #[test]
    fn text_round_trip() {
        let d = load_definition(HELIX).unwrap();
        let again = load_definition(&d.to_text()).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn const_overrides() {
        let d = load_definition(HELIX).unwrap().with_consts(&[("a".into(), 2.0)]).unwrap();
        assert_eq!(d.eval(&[0.0]).unwrap(), Vec3::new(2.0, 0.0, 0.0));
        assert!(d.with_consts(&[("zz".into(), 1.0)]).is_err());
    }
}
