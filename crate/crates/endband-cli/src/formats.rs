//! Serialized forms of sequences, operators, loops, and cocycles, plus the
//! CLI shorthand parsers.
//!
//! Exact values stay exact on the wire: integer sequences are JSON integer
//! arrays, rationals are `"p/q"` strings, complex entries are `[re, im]`
//! pairs.

use std::collections::BTreeMap;

use endband::band::{EPBandOp, ExponentSpec, MonomialLoop};
use endband::bundle::EndCocycle;
use endband::rational::Rational;
use endband::seq::{iota_rep, EPSeq, Functional};
use endband::Complex64;
use serde::{Deserialize, Serialize};

/// Parse failure for a wire form or shorthand; the CLI maps this to a usage
/// error.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecError(pub String);

impl core::fmt::Display for SpecError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for SpecError {}

fn err<T>(msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError(msg.into()))
}

/// `{"left": [...], "core": [...], "core_offset": n, "right": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SeqSpec {
    pub left: Vec<i64>,
    pub core: Vec<i64>,
    pub core_offset: i64,
    pub right: Vec<i64>,
}

impl SeqSpec {
    pub fn from_seq(seq: &EPSeq<i64>) -> Self {
        Self {
            left: seq.left_cycle().to_vec(),
            core: seq.core().to_vec(),
            core_offset: seq.core_offset(),
            right: seq.right_cycle().to_vec(),
        }
    }

    pub fn into_seq(self) -> Result<EPSeq<i64>, SpecError> {
        if self.left.is_empty() || self.right.is_empty() {
            return err("sequence cycles must be nonempty");
        }
        Ok(EPSeq::new(self.left, self.core, self.core_offset, self.right))
    }
}

/// Complex-entried sequence; entries are `[re, im]`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SeqSpecC {
    pub left: Vec<[f64; 2]>,
    pub core: Vec<[f64; 2]>,
    pub core_offset: i64,
    pub right: Vec<[f64; 2]>,
}

fn c(v: &[f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn uncomplex(v: &Complex64) -> [f64; 2] {
    [v.re, v.im]
}

impl SeqSpecC {
    pub fn from_seq(seq: &EPSeq<Complex64>) -> Self {
        Self {
            left: seq.left_cycle().iter().map(uncomplex).collect(),
            core: seq.core().iter().map(uncomplex).collect(),
            core_offset: seq.core_offset(),
            right: seq.right_cycle().iter().map(uncomplex).collect(),
        }
    }

    pub fn into_seq(self) -> Result<EPSeq<Complex64>, SpecError> {
        if self.left.is_empty() || self.right.is_empty() {
            return err("sequence cycles must be nonempty");
        }
        Ok(EPSeq::new(
            self.left.iter().map(c).collect(),
            self.core.iter().map(c).collect(),
            self.core_offset,
            self.right.iter().map(c).collect(),
        ))
    }
}

/// `{"band": L, "diagonals": {"-1": SeqSpecC, ...}}`; omitted offsets are
/// zero.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OpSpec {
    pub band: i64,
    pub diagonals: BTreeMap<String, SeqSpecC>,
}

impl OpSpec {
    pub fn from_op(op: &EPBandOp) -> Self {
        let mut diagonals = BTreeMap::new();
        for d in -op.band()..=op.band() {
            let seq = op.diagonal_at(d).canonicalize();
            if !seq.is_constant(&Complex64::ZERO) {
                diagonals.insert(d.to_string(), SeqSpecC::from_seq(&seq));
            }
        }
        Self {
            band: op.band(),
            diagonals,
        }
    }

    pub fn into_op(self) -> Result<EPBandOp, SpecError> {
        if self.band < 0 {
            return err("band must be nonnegative");
        }
        let zero = EPSeq::constant(Complex64::ZERO);
        let mut diagonals = vec![zero; (2 * self.band + 1) as usize];
        for (key, spec) in self.diagonals {
            let d: i64 = match key.parse() {
                Ok(d) => d,
                Err(_) => return err(format!("diagonal key {key:?} is not an integer")),
            };
            if d.abs() > self.band {
                return err(format!("diagonal {d} lies outside band {}", self.band));
            }
            diagonals[(d + self.band) as usize] = spec.into_seq()?;
        }
        Ok(EPBandOp::from_diagonals(self.band, diagonals))
    }
}

/// `{"shift": s, "exponents": SeqSpec, "phase": [re, im]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LoopSpec {
    pub shift: i64,
    pub exponents: SeqSpec,
    pub phase: [f64; 2],
}

impl LoopSpec {
    pub fn from_loop(l: &MonomialLoop) -> Self {
        Self {
            shift: l.shift_power(),
            exponents: SeqSpec::from_seq(l.exponents()),
            phase: uncomplex(&l.phase()),
        }
    }

    pub fn into_loop(self) -> Result<MonomialLoop, SpecError> {
        let phase = c(&self.phase);
        if (phase.norm() - 1.0).abs() > 1e-9 {
            return err("loop phase must lie on the unit circle");
        }
        Ok(MonomialLoop::new(self.shift, self.exponents.into_seq()?, phase))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum TransitionSpec {
    Op(OpSpec),
    Loop(LoopSpec),
}

/// `{"base": "circle" | "sphere" | "torus", "transitions": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CocycleSpec {
    pub base: String,
    pub transitions: Vec<TransitionSpec>,
}

impl CocycleSpec {
    pub fn from_cocycle(c: &EndCocycle) -> Self {
        match c {
            EndCocycle::Circle { on_a, on_b } => Self {
                base: "circle".into(),
                transitions: vec![
                    TransitionSpec::Op(OpSpec::from_op(on_a)),
                    TransitionSpec::Op(OpSpec::from_op(on_b)),
                ],
            },
            EndCocycle::Sphere { equator } => Self {
                base: "sphere".into(),
                transitions: vec![TransitionSpec::Loop(LoopSpec::from_loop(equator))],
            },
            EndCocycle::Torus { transitions } => Self {
                base: "torus".into(),
                transitions: transitions
                    .iter()
                    .map(|l| TransitionSpec::Loop(LoopSpec::from_loop(l)))
                    .collect(),
            },
        }
    }

    pub fn into_cocycle(self) -> Result<EndCocycle, SpecError> {
        let take_op = |t: TransitionSpec| match t {
            TransitionSpec::Op(op) => op.into_op(),
            TransitionSpec::Loop(_) => err("expected a constant operator transition"),
        };
        let take_loop = |t: TransitionSpec| match t {
            TransitionSpec::Loop(l) => l.into_loop(),
            TransitionSpec::Op(_) => err("expected a loop transition"),
        };
        match self.base.as_str() {
            "circle" => {
                let mut it = self.transitions.into_iter();
                match (it.next(), it.next(), it.next()) {
                    (Some(a), Some(b), None) => Ok(EndCocycle::Circle {
                        on_a: take_op(a)?,
                        on_b: take_op(b)?,
                    }),
                    _ => err("circle cocycles carry exactly two transitions"),
                }
            }
            "sphere" => {
                let mut it = self.transitions.into_iter();
                match (it.next(), it.next()) {
                    (Some(l), None) => Ok(EndCocycle::Sphere {
                        equator: take_loop(l)?,
                    }),
                    _ => err("sphere cocycles carry exactly one equator loop"),
                }
            }
            "torus" => {
                if self.transitions.len() != 4 {
                    return err("torus cocycles carry exactly four transitions");
                }
                let mut loops = Vec::with_capacity(4);
                for t in self.transitions {
                    loops.push(take_loop(t)?);
                }
                Ok(EndCocycle::Torus {
                    transitions: [
                        loops[0].clone(),
                        loops[1].clone(),
                        loops[2].clone(),
                        loops[3].clone(),
                    ],
                })
            }
            other => err(format!("unknown base complex {other:?}")),
        }
    }
}

// ---------------------------------------------------------------------------
// shorthand parsers
// ---------------------------------------------------------------------------

/// `"p/q"` or `"n"`.
pub fn parse_rational(s: &str) -> Result<Rational, SpecError> {
    let parse_int = |t: &str| -> Result<i64, SpecError> {
        t.trim()
            .parse()
            .map_err(|_| SpecError(format!("{t:?} is not an integer")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom == 0 {
                return err("rational denominator is zero");
            }
            Ok(Rational::new(parse_int(p)?, denom))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

pub fn render_rational(r: &Rational) -> String {
    format!("{r}")
}

/// `"c_minus,c_plus"` with rational components.
pub fn parse_functional(s: &str) -> Result<Functional, SpecError> {
    match s.split_once(',') {
        Some((a, b)) => Ok(Functional::new(parse_rational(a)?, parse_rational(b)?)),
        None => err(format!("functional {s:?} must be \"c-,c+\"")),
    }
}

/// Sequence shorthand or inline JSON.
///
/// Shorthands: `delta:k`, `step:m`, `constant:c`, `halfhalf`, `alternating`,
/// `iota:p/q`, `periodic:a,b,c[@anchor]`; anything starting with `{` is
/// parsed as a [`SeqSpec`].
pub fn parse_seq(s: &str) -> Result<EPSeq<i64>, SpecError> {
    let s = s.trim();
    if s.starts_with('{') {
        let spec: SeqSpec =
            serde_json::from_str(s).map_err(|e| SpecError(format!("sequence JSON: {e}")))?;
        return spec.into_seq();
    }
    let int = |t: &str| -> Result<i64, SpecError> {
        t.parse()
            .map_err(|_| SpecError(format!("{t:?} is not an integer")))
    };
    match s.split_once(':') {
        None => match s {
            "halfhalf" => Ok(EPSeq::tails(&[1], &[-1], 0)),
            "alternating" => Ok(EPSeq::periodic(&[1, -1], 0)),
            other => err(format!("unknown sequence shorthand {other:?}")),
        },
        Some(("delta", k)) => Ok(EPSeq::delta(int(k)?)),
        Some(("step", m)) => Ok(EPSeq::step(int(m)?)),
        Some(("constant", v)) => Ok(EPSeq::constant(int(v)?)),
        Some(("iota", q)) => Ok(iota_rep(parse_rational(q)?, 0)),
        Some(("periodic", rest)) => {
            let (pattern, anchor) = match rest.split_once('@') {
                Some((p, a)) => (p, int(a)?),
                None => (rest, 0),
            };
            let entries: Result<Vec<i64>, _> = pattern.split(',').map(int).collect();
            let entries = entries?;
            if entries.is_empty() {
                return err("periodic pattern is empty");
            }
            Ok(EPSeq::periodic(&entries, anchor))
        }
        Some((tag, _)) => err(format!("unknown sequence shorthand {tag:?}")),
    }
}

/// Operator shorthand or inline JSON: `identity`, `shift:k`,
/// `diag:<sequence>`, or an [`OpSpec`] object.
pub fn parse_op(s: &str) -> Result<EPBandOp, SpecError> {
    let s = s.trim();
    if s.starts_with('{') {
        let spec: OpSpec =
            serde_json::from_str(s).map_err(|e| SpecError(format!("operator JSON: {e}")))?;
        return spec.into_op();
    }
    if s == "identity" {
        return Ok(EPBandOp::identity());
    }
    match s.split_once(':') {
        Some(("shift", k)) => {
            let k: i64 = k
                .parse()
                .map_err(|_| SpecError(format!("{k:?} is not an integer")))?;
            Ok(EPBandOp::shift_op(k))
        }
        Some(("diag", seq)) => {
            let entries = parse_seq(seq)?.map(|&n| Complex64::new(n as f64, 0.0));
            Ok(EPBandOp::diagonal(entries))
        }
        _ => err(format!("unknown operator shorthand {s:?}")),
    }
}

/// Exponent family shorthand: `linear:slope[,intercept]` or any sequence
/// shorthand/JSON (read as an eventually periodic family).
pub fn parse_exponent_spec(s: &str) -> Result<ExponentSpec, SpecError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("linear:") {
        let mut parts = rest.split(',');
        let slope: i64 = parts
            .next()
            .unwrap_or("")
            .parse()
            .map_err(|_| SpecError(format!("linear slope in {s:?}")))?;
        let intercept: i64 = match parts.next() {
            Some(t) => t
                .parse()
                .map_err(|_| SpecError(format!("linear intercept in {s:?}")))?,
            None => 0,
        };
        return Ok(ExponentSpec::Linear { slope, intercept });
    }
    Ok(ExponentSpec::Ep(parse_seq(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use endband::rational::rat;

    #[test]
    fn seq_round_trip() {
        let seq = EPSeq::new(vec![1, 0], vec![3, -2], -1, vec![0, 0, 2]);
        let json = serde_json::to_string(&SeqSpec::from_seq(&seq)).unwrap();
        let back: SeqSpec = serde_json::from_str(&json).unwrap();
        assert!(back.into_seq().unwrap().obs_eq(&seq));
    }

    #[test]
    fn seq_spec_shape() {
        let json = r#"{"left":[1],"core":[2,3],"core_offset":-1,"right":[0]}"#;
        let seq = parse_seq(json).unwrap();
        assert_eq!(seq.eval(-1), 2);
        assert_eq!(seq.eval(0), 3);
        assert_eq!(seq.eval(-2), 1);
    }

    #[test]
    fn op_round_trip() {
        let op = EPBandOp::shift_op(2).compose(&EPBandOp::diagonal(
            EPSeq::periodic(&[1, -1], 0).map(|&n| Complex64::new(n as f64, 0.0)),
        ));
        let spec = OpSpec::from_op(&op);
        let back = spec.clone().into_op().unwrap();
        assert!(back.obs_eq(&op));
        let json = serde_json::to_string(&spec).unwrap();
        let reparsed: OpSpec = serde_json::from_str(&json).unwrap();
        assert!(reparsed.into_op().unwrap().obs_eq(&op));
    }

    #[test]
    fn cocycle_round_trip() {
        for c in [
            endband::bundle::pushforward_universal_cover(),
            endband::fourier::l1_bundle(),
            endband::fourier::l2_torus_bundle(),
        ] {
            let spec = CocycleSpec::from_cocycle(&c);
            let json = serde_json::to_string(&spec).unwrap();
            let back: CocycleSpec = serde_json::from_str(&json).unwrap();
            let rebuilt = back.into_cocycle().unwrap();
            assert_eq!(rebuilt.base(), c.base());
            assert_eq!(rebuilt.beta1().ok(), c.beta1().ok());
        }
    }

    #[test]
    fn shorthands() {
        assert!(parse_seq("delta:3").unwrap().obs_eq(&EPSeq::delta(3)));
        assert!(parse_seq("halfhalf").unwrap().obs_eq(&EPSeq::tails(&[1], &[-1], 0)));
        assert!(parse_seq("periodic:1,0,0").unwrap().obs_eq(&EPSeq::periodic(&[1, 0, 0], 0)));
        assert!(parse_op("shift:-2").unwrap().obs_eq(&EPBandOp::shift_op(-2)));
        assert!(parse_op("identity").unwrap().obs_eq(&EPBandOp::identity()));
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2, 1));
        let f = parse_functional("1/2,-1/2").unwrap();
        assert_eq!(f, Functional::tail_split());
        assert!(matches!(
            parse_exponent_spec("linear:1"),
            Ok(ExponentSpec::Linear { slope: 1, intercept: 0 })
        ));
        assert!(parse_seq("bogus").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rationals_render_verbatim() {
        assert_eq!(render_rational(&rat(1, 3)), "1/3");
        assert_eq!(render_rational(&rat(2, 1)), "2");
        assert_eq!(render_rational(&rat(-1, 2)), "-1/2");
    }
}
