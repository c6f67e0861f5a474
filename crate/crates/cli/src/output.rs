use levelpeaks_core::geom::Interval;
use levelpeaks_core::peak::Peak;
use levelpeaks_core::pmst::BoundaryExtremum;
use levelpeaks_core::rational::{format_rational, Rational};
use serde_json::{json, Value};

/// What the two ids of a peak refer to.
#[derive(Debug, Clone, Copy)]
pub enum Pieces {
    Lines,
    Edges,
}

impl Pieces {
    fn key(self) -> &'static str {
        match self {
            Pieces::Lines => "lines",
            Pieces::Edges => "edges",
        }
    }
}

pub fn num(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn range(r: &Interval) -> Value {
    json!({ "from": num(&r.lo), "to": num(&r.hi) })
}

pub fn peak(p: &Peak, pieces: Pieces) -> Value {
    let mut v = json!({
        "x": num(&p.at.x),
        "y": num(&p.at.y),
        "kind": p.kind.as_str(),
        "on_boundary": p.on_boundary,
    });
    v[pieces.key()] = json!([p.left, p.right]);
    v
}

pub fn peaks(ps: &[Peak], pieces: Pieces) -> Value {
    Value::Array(ps.iter().map(|p| peak(p, pieces)).collect())
}

pub fn boundary(b: &BoundaryExtremum) -> Value {
    json!({ "x": num(&b.at.x), "y": num(&b.at.y), "kind": b.kind.as_str(), "edge": b.edge })
}

pub fn perturbation(eps: Option<&Rational>) -> Value {
    eps.map_or(Value::Null, num)
}
