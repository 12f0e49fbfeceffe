"""Search for graphs with no s-clique and no independent t-set.

Such (s, t, n)-graphs exist exactly when n is below the Ramsey number
R(s, t).  Small cases are settled exactly by enumerating every labeled graph;
beyond that, simulated annealing walks the space of graphs on n vertices,
flipping one edge at a time, scoring a graph by the number of violating
subsets (s-cliques plus independent t-sets) and cooling geometrically until
a zero-violation graph appears.  A census helper converts "we kept finding
the same solutions" into a confidence statement: if there were one more
equally findable solution than the c seen, r uniform draws would all have
missed it with probability (c/(c+1))**r.

Adjacency is one bitmask per vertex, which keeps the subset-counting inner
loops at word speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations

from .rng import SplitMix64

MAX_VERTICES = 24  # exact violation counting beyond this is not desk-scale
EXHAUSTIVE_EDGE_LIMIT = 21  # enumerate at most 2^21 labeled graphs
CANONICAL_EXACT_LIMIT = 10  # brute-force relabelings up to this many vertices
STAGNATION_LIMIT = 10**5  # moves without improvement before a restart


class GraphColoring:
    """Undirected graph on n vertices as per-vertex neighbor bitmasks."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: list[int] | None = None):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.adj = list(adj) if adj is not None else [0] * n

    @classmethod
    def from_edges(cls, n: int, edges) -> "GraphColoring":
        g = cls(n)
        for u, v in edges:
            g.set_edge(u, v, True)
        return g

    @classmethod
    def random(cls, n: int, rng: SplitMix64) -> "GraphColoring":
        g = cls(n)
        for u in range(n):
            for v in range(u + 1, n):
                if rng.next_u64() & 1:
                    g.set_edge(u, v, True)
        return g

    def copy(self) -> "GraphColoring":
        return GraphColoring(self.n, self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def set_edge(self, u: int, v: int, present: bool) -> None:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError("bad edge (%d, %d)" % (u, v))
        if present:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
        else:
            self.adj[u] &= ~(1 << v)
            self.adj[v] &= ~(1 << u)

    def flip_edge(self, u: int, v: int) -> None:
        self.set_edge(u, v, not self.has_edge(u, v))

    def complement(self) -> "GraphColoring":
        full = (1 << self.n) - 1
        return GraphColoring(self.n, [(~self.adj[v] & full) & ~(1 << v) for v in range(self.n)])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.adj[u] >> v & 1]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GraphColoring)
                and self.n == other.n and self.adj == other.adj)


def _count_cliques(adj: list[int], size: int, candidates: int) -> int:
    """Number of ``size``-subsets of the candidate set that are cliques."""
    if size == 0:
        return 1
    if size == 1:
        return bin(candidates).count("1")
    total = 0
    m = candidates
    while m:
        low = m & -m
        m ^= low
        v = low.bit_length() - 1
        total += _count_cliques(adj, size - 1, m & adj[v])
    return total


def _check_params(n: int, s: int, t: int) -> None:
    if not (2 <= s <= n and 2 <= t <= n):
        raise ValueError("need 2 <= s, t <= n")
    if n > MAX_VERTICES:
        raise ValueError("n > %d is beyond exact counting" % MAX_VERTICES)


def count_violations(g: GraphColoring, s: int, t: int) -> int:
    """Exact count of s-cliques plus independent t-sets in g."""
    _check_params(g.n, s, t)
    full = (1 << g.n) - 1
    comp = g.complement().adj
    return (_count_cliques(g.adj, s, full) + _count_cliques(comp, t, full))


def _flip_delta(g: GraphColoring, u: int, v: int, s: int, t: int) -> int:
    """Energy change from flipping edge (u, v); counts only affected subsets.

    Subsets not containing both endpoints are untouched, so the delta is the
    number of (s-2)-cliques among common neighbors (cliques gained or lost)
    against the (t-2)-independent-sets among common non-neighbors.
    """
    comp = g.complement().adj
    cliques = _count_cliques(g.adj, s - 2, g.adj[u] & g.adj[v])
    indeps = _count_cliques(comp, t - 2, comp[u] & comp[v])
    if g.has_edge(u, v):  # flipping removes the edge
        return indeps - cliques
    return cliques - indeps


@dataclass
class AnnealConfig:
    """Schedule knobs; None fields are derived from the instance at run time.

    Defaults: starting temperature calibrated to the mean |delta| of 100
    random moves, cooling 0.995 per block, C(n,2) moves per block (one
    nominal sweep; slower block-cooling cannot reach low temperature inside
    the step budget on the hard instances), a restart from a fresh random
    graph after 10**5 moves without improvement, and at most 10**7 moves
    overall.
    """

    initial_temperature: float | None = None
    cooling: float = 0.995
    steps_per_temperature: int | None = None
    max_total_steps: int = 10**7
    restarts: int = 1000

    def validate(self) -> None:
        if self.initial_temperature is not None and self.initial_temperature <= 0:
            raise ValueError("initial_temperature must be positive")
        if not 0 < self.cooling < 1:
            raise ValueError("cooling must be in (0, 1)")
        if self.steps_per_temperature is not None and self.steps_per_temperature < 1:
            raise ValueError("steps_per_temperature must be positive")
        if self.max_total_steps < 1 or self.restarts < 0:
            raise ValueError("step budget and restarts must be positive")


@dataclass(frozen=True)
class AnnealOutcome:
    graph: GraphColoring | None  # None: budget exhausted with no solution
    steps: int
    restarts_used: int
    best_energy: int

    @property
    def found(self) -> bool:
        return self.graph is not None


def _calibrate_temperature(g: GraphColoring, pairs, s: int, t: int,
                           rng: SplitMix64) -> float:
    total = 0
    for _ in range(100):
        u, v = pairs[rng.uniform_below(len(pairs))]
        total += abs(_flip_delta(g, u, v, s, t))
    return max(total / 100.0, 1.0)


def anneal(n: int, s: int, t: int, cfg: AnnealConfig | None,
           rng: SplitMix64, debug: bool = False) -> AnnealOutcome:
    """Anneal from a random graph toward zero violations.

    Single-edge-flip moves; downhill always accepted, uphill with
    probability exp(-delta/T).  Any zero-energy graph is re-checked with the
    exact counter before being returned.  ``debug`` audits the incremental
    energy against a full recount every 1000 moves.
    """
    _check_params(n, s, t)
    if cfg is None:
        cfg = AnnealConfig()
    cfg.validate()
    pairs = list(combinations(range(n), 2))
    block = cfg.steps_per_temperature or len(pairs)

    g = GraphColoring.random(n, rng)
    energy = count_violations(g, s, t)
    temperature = cfg.initial_temperature or _calibrate_temperature(g, pairs, s, t, rng)
    best = energy
    steps = 0
    restarts_used = 0
    since_improvement = 0
    in_block = 0

    while steps < cfg.max_total_steps:
        if energy == 0:
            if count_violations(g, s, t) != 0:
                raise RuntimeError("internal error: incremental energy drifted")
            return AnnealOutcome(g, steps, restarts_used, 0)
        u, v = pairs[rng.uniform_below(len(pairs))]
        delta = _flip_delta(g, u, v, s, t)
        if delta <= 0 or rng.next_float() < math.exp(-delta / temperature):
            g.flip_edge(u, v)
            energy += delta
        steps += 1
        in_block += 1
        if debug and steps % 1000 == 0:
            if energy != count_violations(g, s, t):
                raise RuntimeError("internal error: incremental energy drifted")
        if energy < best:
            best = energy
            since_improvement = 0
        else:
            since_improvement += 1
        if in_block >= block:
            in_block = 0
            temperature = max(temperature * cfg.cooling, 1e-9)
        if since_improvement >= STAGNATION_LIMIT and restarts_used < cfg.restarts:
            restarts_used += 1
            since_improvement = 0
            in_block = 0
            g = GraphColoring.random(n, rng)
            energy = count_violations(g, s, t)
            temperature = cfg.initial_temperature or _calibrate_temperature(g, pairs, s, t, rng)
            if energy < best:
                best = energy
    if energy == 0:
        if count_violations(g, s, t) != 0:
            raise RuntimeError("internal error: incremental energy drifted")
        return AnnealOutcome(g, steps, restarts_used, 0)
    return AnnealOutcome(None, steps, restarts_used, best)


def exhaustive_search(n: int, s: int, t: int) -> list[GraphColoring]:
    """Every labeled graph on n vertices with zero violations (n <= 7)."""
    _check_params(n, s, t)
    pairs = list(combinations(range(n), 2))
    if len(pairs) > EXHAUSTIVE_EDGE_LIMIT:
        raise ValueError(
            "C(%d, 2) = %d edge slots is past the 2^%d enumeration limit; use anneal"
            % (n, len(pairs), EXHAUSTIVE_EDGE_LIMIT)
        )
    out = []
    for mask in range(1 << len(pairs)):
        g = GraphColoring(n)
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                g.set_edge(u, v, True)
        if count_violations(g, s, t) == 0:
            out.append(g)
    return out


def census_confidence(distinct_found: int, total_runs: int) -> float:
    """P(an extra equally likely solution would have shown up in the runs).

    With c found and one hypothetical unseen solution, each of r uniform
    draws misses it with probability c/(c+1); the confidence is
    1 - (c/(c+1))**r.
    """
    if total_runs < 1 or distinct_found < 1:
        raise ValueError("need at least one run and one found solution")
    if distinct_found > total_runs:
        raise ValueError("cannot find more distinct solutions than runs")
    c = distinct_found
    return 1.0 - (c / (c + 1.0)) ** total_runs


def _bitstring(g: GraphColoring, order) -> int:
    bits = 0
    for u, v in combinations(range(g.n), 2):
        bits <<= 1
        if g.adj[order[u]] >> order[v] & 1:
            bits |= 1
    return bits


def canonical_form(g: GraphColoring) -> bytes:
    """Representative bytes equal across relabelings and complementation.

    Exact (minimum adjacency bit-string over all vertex orders, then over
    the complement as well) up to 10 vertices; larger graphs fall back to
    the labeled bit-string, still minimized against the complement.
    """
    if g.n > 255:
        raise ValueError("canonical_form supports at most 255 vertices")
    comp = g.complement()
    if g.n <= CANONICAL_EXACT_LIMIT:
        best = min(min(_bitstring(g, p) for p in permutations(range(g.n))),
                   min(_bitstring(comp, p) for p in permutations(range(g.n))))
    else:
        identity = list(range(g.n))
        best = min(_bitstring(g, identity), _bitstring(comp, identity))
    width = (g.n * (g.n - 1) // 2 + 7) // 8
    return bytes([g.n]) + best.to_bytes(width, "big")


def graph_to_text(g: GraphColoring) -> str:
    """Adjacency-list text: first line n, then one "v: neighbors" line each."""
    lines = ["%d" % g.n]
    for v in range(g.n):
        nbrs = [str(u) for u in range(g.n) if g.adj[v] >> u & 1]
        lines.append("%d: %s" % (v, " ".join(nbrs)))
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> GraphColoring:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    g = GraphColoring(int(lines[0]))
    for line in lines[1:]:
        head, _, rest = line.partition(":")
        v = int(head)
        for u in rest.split():
            if int(u) != v:
                g.set_edge(v, int(u), True)
    return g
