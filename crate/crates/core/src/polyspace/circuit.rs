//! Arithmetic circuits over length-`τ` vectors of naturals.
//!
//! Gates are singleton constants, pointwise additions and convolutions.
//! Every gate carries an upper bound on the length of its output (the index
//! of its last nonzero entry): the index for a singleton, the maximum of the
//! children for an addition and their sum for a convolution. The vector
//! length `τ` is the smallest power of two above every bound, so no
//! convolution ever wraps around.

use crate::instance::Instance;
use crate::preprocess;
use crate::rng::Rng;
use crate::solver::{self, SetAlgebra};

pub type GateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// The vector with `value` at `index` and zeros elsewhere.
    Singleton { index: usize, value: u64 },
    /// Pointwise sum of two gates.
    Add(GateId, GateId),
    /// Convolution of two gates.
    Conv(GateId, GateId),
}

impl Gate {
    pub fn children(&self) -> Option<(GateId, GateId)> {
        match *self {
            Gate::Singleton { .. } => None,
            Gate::Add(a, b) | Gate::Conv(a, b) => Some((a, b)),
        }
    }
}

/// Where a circuit came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CircuitMeta {
    pub n: usize,
    pub t: usize,
    pub seed: u64,
}

/// A gate DAG in topological order: children always precede their parents.
#[derive(Clone, Debug)]
pub struct Circuit {
    gates: Vec<Gate>,
    len_bounds: Vec<usize>,
    output: GateId,
    vec_len: usize,
    meta: CircuitMeta,
}

impl Circuit {
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len_bound(&self, g: GateId) -> usize {
        self.len_bounds[g]
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    /// Vector length `τ`, a power of two above every gate's length bound.
    pub fn vec_len(&self) -> usize {
        self.vec_len
    }

    pub fn meta(&self) -> CircuitMeta {
        self.meta
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Nodes plus edges.
    pub fn size(&self) -> usize {
        self.gates.len()
            + 2 * self
                .gates
                .iter()
                .filter(|g| g.children().is_some())
                .count()
    }

    /// Checks topological order, arity and the no-overflow property.
    pub fn validate(&self) -> Result<(), String> {
        if self.output >= self.gates.len() {
            return Err(format!("output gate {} out of range", self.output));
        }
        for (id, gate) in self.gates.iter().enumerate() {
            let expect = match *gate {
                Gate::Singleton { index, .. } => index,
                Gate::Add(a, b) | Gate::Conv(a, b) => {
                    if a >= id || b >= id {
                        return Err(format!("gate {id} reads a later gate"));
                    }
                    if matches!(gate, Gate::Add(..)) {
                        self.len_bounds[a].max(self.len_bounds[b])
                    } else {
                        self.len_bounds[a] + self.len_bounds[b]
                    }
                }
            };
            if self.len_bounds[id] != expect {
                return Err(format!("gate {id} has inconsistent length bound"));
            }
            if self.len_bounds[id] >= self.vec_len {
                return Err(format!("gate {id} overflows τ = {}", self.vec_len));
            }
        }
        Ok(())
    }
}

/// Incremental construction of a [`Circuit`].
///
/// As a [`SetAlgebra`] it records union as addition and every capped sumset
/// as a plain convolution. Convolving with the shared `e_0` gate is the
/// identity, so those convolutions are skipped.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
    len_bounds: Vec<usize>,
    unit: Option<GateId>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, gate: Gate, len: usize) -> GateId {
        self.gates.push(gate);
        self.len_bounds.push(len);
        self.gates.len() - 1
    }

    pub fn singleton(&mut self, index: usize, value: u64) -> GateId {
        self.push(Gate::Singleton { index, value }, index)
    }

    pub fn add(&mut self, a: GateId, b: GateId) -> GateId {
        let len = self.len_bounds[a].max(self.len_bounds[b]);
        self.push(Gate::Add(a, b), len)
    }

    pub fn conv(&mut self, a: GateId, b: GateId) -> GateId {
        let len = self.len_bounds[a] + self.len_bounds[b];
        self.push(Gate::Conv(a, b), len)
    }

    /// The shared `e_0` gate.
    pub fn unit(&mut self) -> GateId {
        match self.unit {
            Some(g) => g,
            None => {
                let g = self.singleton(0, 1);
                self.unit = Some(g);
                g
            }
        }
    }

    fn conv_or_identity(&mut self, a: GateId, b: GateId) -> GateId {
        match (Some(a) == self.unit, Some(b) == self.unit) {
            (true, _) => b,
            (_, true) => a,
            _ => self.conv(a, b),
        }
    }

    /// Vector representing `elems ∪ {0}`: `e_0 ⊞ e_{z_1} ⊞ …`.
    pub fn leaf(&mut self, elems: &[usize]) -> GateId {
        let mut g = self.unit();
        for &e in elems {
            let s = self.singleton(e, 1);
            g = self.add(g, s);
        }
        g
    }

    pub fn finish(self, output: GateId, meta: CircuitMeta) -> Circuit {
        let max_len = self.len_bounds.iter().copied().max().unwrap_or(0);
        let vec_len = (max_len + 1).next_power_of_two().max(2);
        Circuit {
            gates: self.gates,
            len_bounds: self.len_bounds,
            output,
            vec_len,
            meta,
        }
    }
}

impl SetAlgebra for CircuitBuilder {
    type Set = GateId;

    fn zero(&mut self, _cap: usize) -> GateId {
        self.unit()
    }

    fn extend(&mut self, acc: GateId, elems: &[usize], _cap: usize) -> GateId {
        if elems.is_empty() {
            return acc;
        }
        let leaf = self.leaf(elems);
        self.conv_or_identity(acc, leaf)
    }

    fn union(&mut self, a: GateId, b: GateId) -> GateId {
        self.add(a, b)
    }

    fn sumset(&mut self, a: GateId, b: GateId, _cap: usize) -> GateId {
        self.conv_or_identity(a, b)
    }

    fn restrict(&mut self, a: GateId, _cap: usize) -> GateId {
        a
    }
}

/// Error probability used for circuits over `n` items: `1/n`, at most `1/4`.
pub fn circuit_delta(n: usize) -> f64 {
    (1.0 / n.max(1) as f64).min(solver::MAX_DELTA)
}

/// Records one random run of the randomized solver on the set `z` as a
/// circuit. Its output represents a superset of what that run returns,
/// intersected with `[0, t]` it is a subset of `SS_t(z)`.
pub fn build_circuit(z: &[usize], t: usize, seed: u64) -> Circuit {
    let mut b = CircuitBuilder::new();
    let out = if z.is_empty() {
        b.unit()
    } else {
        let delta = circuit_delta(z.len());
        solver::faster_subset_sum_in(&mut b, z, t, delta, &mut Rng::new(seed))
    };
    b.finish(
        out,
        CircuitMeta {
            n: z.len(),
            t,
            seed,
        },
    )
}

/// Circuit for a multiset instance: the instance is reduced to two sets and
/// their circuits are joined by one convolution.
pub fn build_instance_circuit(inst: &Instance, seed: u64) -> Circuit {
    let t = inst.target();
    let (z1, z2) = preprocess::to_two_sets(inst);
    let n = z1.len() + z2.len();
    let delta = circuit_delta(n);
    let mut rng = Rng::new(seed);
    let mut r1 = rng.split();
    let mut r2 = rng.split();
    let mut b = CircuitBuilder::new();
    let side = |b: &mut CircuitBuilder, z: &[usize], r: &mut Rng| {
        if z.is_empty() {
            b.unit()
        } else {
            solver::faster_subset_sum_in(b, z, t, delta, r)
        }
    };
    let g1 = side(&mut b, &z1, &mut r1);
    let g2 = side(&mut b, &z2, &mut r2);
    let out = b.conv_or_identity(g1, g2);
    b.finish(out, CircuitMeta { n, t, seed })
}
