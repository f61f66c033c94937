"""Exact inference: factor elimination plus a full-joint enumeration oracle.

`posterior` answers queries by variable elimination over factors. As a
cross-check, `joint_enumerate` builds the complete joint table over every
state assignment without using the factor machinery at all; the two paths
share nothing but the network definition, so agreement between them is a
meaningful test of both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

import numpy as np

from .errors import (
    InvalidNetworkError,
    JointSizeError,
    UnknownStateError,
    ZeroProbabilityEvidenceError,
)
from .model import (
    NetworkSpec,
    NodeState,
    state_enumeration,
    toposort,
    validate,
)

# joint_enumerate refuses to build tables above this many cells
JOINT_SIZE_LIMIT = 10_000_000

Evidence = Mapping[str, NodeState]


@dataclass(frozen=True, eq=False)
class Distribution:
    """A probability vector over one node's states, in enumeration order."""

    node: str
    states: tuple[NodeState, ...]
    probs: np.ndarray

    def p(self, state: NodeState) -> float:
        for s, value in zip(self.states, self.probs):
            if s == state:
                return float(value)
        raise UnknownStateError(self.node, _state_text(state), [repr(s) for s in self.states])

    def argmax(self) -> NodeState:
        """Most probable state; the earliest state wins a tie."""
        return self.states[int(np.argmax(self.probs))]

    def items(self) -> Iterator[tuple[NodeState, float]]:
        for s, value in zip(self.states, self.probs):
            yield s, float(value)


def _state_text(state: NodeState) -> str:
    if state.interval_index is None:
        return state.value
    return f"{state.value}@interval#{state.interval_index}"


@dataclass(frozen=True, eq=False)
class Factor:
    """A nonnegative table whose axes are node indices, kept sorted."""

    scope: tuple[int, ...]
    values: np.ndarray


def _expand(f: Factor, scope: tuple[int, ...]) -> np.ndarray:
    # f.scope is a sorted subsequence of scope, so inserting singleton axes
    # at the missing positions is a plain reshape.
    shape = [1] * len(scope)
    for ax, idx in enumerate(scope):
        if idx in f.scope:
            shape[ax] = f.values.shape[f.scope.index(idx)]
    return f.values.reshape(shape)


def _multiply(a: Factor, b: Factor) -> Factor:
    scope = tuple(sorted(set(a.scope) | set(b.scope)))
    return Factor(scope, _expand(a, scope) * _expand(b, scope))


def _sum_out(f: Factor, idx: int) -> Factor:
    ax = f.scope.index(idx)
    return Factor(f.scope[:ax] + f.scope[ax + 1:], f.values.sum(axis=ax))


def _reduce(f: Factor, idx: int, state_pos: int) -> Factor:
    ax = f.scope.index(idx)
    return Factor(f.scope[:ax] + f.scope[ax + 1:], np.take(f.values, state_pos, axis=ax))


@dataclass(frozen=True, eq=False)
class CompiledNetwork:
    """A validated network with per-node state tables and CPT factors."""

    spec: NetworkSpec
    topo: tuple[str, ...]
    states: Mapping[str, tuple[NodeState, ...]]
    factors: tuple[Factor, ...]

    @property
    def node_ids(self) -> tuple[str, ...]:
        return self.spec.node_ids()

    def index(self, node_id: str) -> int:
        self.spec.node(node_id)  # raises UnknownNodeError
        return self.node_ids.index(node_id)

    def state_index(self, node_id: str, state: NodeState) -> int:
        node = self.spec.node(node_id)  # raises UnknownNodeError
        for i, s in enumerate(self.states[node_id]):
            if s == state:
                return i
        raise UnknownStateError(node_id, _state_text(state), node.state_labels())


def compile_network(spec: NetworkSpec) -> CompiledNetwork:
    """Validate and compile; raises InvalidNetworkError with the full report."""
    violations = validate(spec)
    if violations:
        raise InvalidNetworkError(violations)
    ids = spec.node_ids()
    index = {n: i for i, n in enumerate(ids)}
    states = {n: state_enumeration(spec.node(n)) for n in ids}
    pos = {n: {s: i for i, s in enumerate(states[n])} for n in ids}
    card = {n: len(states[n]) for n in ids}

    factors = []
    for nid in ids:
        table = spec.tables[nid]
        scope = tuple(sorted([index[p] for p in table.parent_order] + [index[nid]]))
        arr = np.zeros(tuple(card[ids[i]] for i in scope))
        for key, probs in table.rows.items():
            at = {index[p]: pos[p][s] for p, s in zip(table.parent_order, key)}
            for ci, p in enumerate(probs):
                at[index[nid]] = ci
                arr[tuple(at[i] for i in scope)] = p
        factors.append(Factor(scope, arr))

    order = toposort(spec)
    assert order is not None  # a cycle would have failed validation
    return CompiledNetwork(spec, order, states, tuple(factors))


def _evidence_positions(net: CompiledNetwork, evidence: Optional[Evidence]) -> dict[str, int]:
    return {nid: net.state_index(nid, st) for nid, st in dict(evidence or {}).items()}


def _reduced_factors(net: CompiledNetwork, ev_pos: Mapping[str, int]) -> list[Factor]:
    out = []
    for f in net.factors:
        for nid, p in ev_pos.items():
            i = net.index(nid)
            if i in f.scope:
                f = _reduce(f, i, p)
        out.append(f)
    return out


def _eliminate(factors: list[Factor], keep: set[int]) -> list[Factor]:
    """Sum out every variable not in `keep`, smallest factor-graph degree
    first; ties go to the lowest node index."""
    factors = list(factors)
    while True:
        present: set[int] = set()
        for f in factors:
            present.update(f.scope)
        candidates = present - keep
        if not candidates:
            return factors
        best: Optional[tuple[int, int]] = None
        for v in sorted(candidates):
            neighbors: set[int] = set()
            for f in factors:
                if v in f.scope:
                    neighbors.update(f.scope)
            neighbors.discard(v)
            if best is None or len(neighbors) < best[0]:
                best = (len(neighbors), v)
        v = best[1]
        touching = [f for f in factors if v in f.scope]
        rest = [f for f in factors if v not in f.scope]
        product = touching[0]
        for f in touching[1:]:
            product = _multiply(product, f)
        rest.append(_sum_out(product, v))
        factors = rest


def posterior(net: CompiledNetwork, query: str, evidence: Optional[Evidence] = None) -> Distribution:
    """P(query | evidence) by variable elimination.

    Evidence on the query node itself yields the matching point mass.
    Evidence whose probability is zero raises ZeroProbabilityEvidenceError.
    """
    net.spec.node(query)  # raises UnknownNodeError for unknown ids
    ev_pos = _evidence_positions(net, evidence)
    qstates = net.states[query]
    if query in ev_pos:
        probs = np.zeros(len(qstates))
        probs[ev_pos[query]] = 1.0
        return Distribution(query, qstates, probs)
    qidx = net.index(query)
    remaining = _eliminate(_reduced_factors(net, ev_pos), keep={qidx})
    total = Factor((), np.array(1.0))
    for f in remaining:
        total = _multiply(total, f)
    z = float(total.values.sum())
    if not z > 0.0:
        raise ZeroProbabilityEvidenceError(
            "the given evidence has probability zero under the model"
        )
    return Distribution(query, qstates, np.asarray(total.values, dtype=float) / z)


def evidence_probability(net: CompiledNetwork, evidence: Optional[Evidence] = None) -> float:
    """P(evidence): the normalizing constant after reducing every factor."""
    ev_pos = _evidence_positions(net, evidence)
    remaining = _eliminate(_reduced_factors(net, ev_pos), keep=set())
    total = 1.0
    for f in remaining:
        total *= float(f.values)
    return total


@dataclass(frozen=True, eq=False)
class JointTable:
    """The full joint over all nodes; axis i enumerates node i's states."""

    nodes: tuple[str, ...]
    states: tuple[tuple[NodeState, ...], ...]
    values: np.ndarray

    def total(self) -> float:
        return float(self.values.sum())

    def marginal(self, node_id: str) -> np.ndarray:
        ax = self.nodes.index(node_id)
        other = tuple(i for i in range(len(self.nodes)) if i != ax)
        return self.values.sum(axis=other)

    def distribution(self, node_id: str) -> Distribution:
        vec = self.marginal(node_id)
        z = float(vec.sum())
        if not z > 0.0:
            raise ZeroProbabilityEvidenceError(
                "the given evidence has probability zero under the model"
            )
        return Distribution(node_id, self.states[self.nodes.index(node_id)], vec / z)


def joint_enumerate(spec: NetworkSpec, evidence: Optional[Evidence] = None) -> JointTable:
    """Brute-force oracle: enumerate the joint probability of every complete
    state assignment, optionally zeroing assignments that contradict evidence.

    Kept deliberately independent of the factor code above. Refuses joints
    larger than JOINT_SIZE_LIMIT cells.
    """
    violations = validate(spec)
    if violations:
        raise InvalidNetworkError(violations)
    ids = spec.node_ids()
    enums = tuple(state_enumeration(spec.node(n)) for n in ids)
    cards = [len(e) for e in enums]
    if ids and int(np.prod(cards, dtype=np.int64)) > JOINT_SIZE_LIMIT:
        raise JointSizeError(
            f"joint table over {len(ids)} nodes would have "
            f"{int(np.prod(cards, dtype=np.int64))} cells "
            f"(limit {JOINT_SIZE_LIMIT})"
        )
    joint = np.ones(cards)
    for nid in ids:
        table = spec.tables[nid]
        axes = [ids.index(p) for p in table.parent_order] + [ids.index(nid)]
        block = np.zeros([cards[a] for a in axes])
        for key, probs in table.rows.items():
            where = tuple(
                enums[ids.index(p)].index(s) for p, s in zip(table.parent_order, key)
            )
            block[where] = probs
        shape = [1] * len(ids)
        for a in axes:
            shape[a] = cards[a]
        joint = joint * np.transpose(block, np.argsort(axes)).reshape(shape)
    if evidence:
        for nid, st in dict(evidence).items():
            spec.node(nid)  # raises UnknownNodeError
            ax = ids.index(nid)
            try:
                keep = enums[ax].index(st)
            except ValueError:
                raise UnknownStateError(
                    nid, _state_text(st), spec.node(nid).state_labels()
                ) from None
            mask = np.zeros(cards[ax])
            mask[keep] = 1.0
            joint = joint * mask.reshape([c if i == ax else 1 for i, c in enumerate(cards)])
    return JointTable(ids, enums, joint)
