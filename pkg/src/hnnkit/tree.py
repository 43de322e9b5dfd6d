"""Lazily generated Bass-Serre tree of an HNN extension.

Vertices are the cosets g L of the base group; an oriented edge g H runs from
g L to g t L, so every vertex has one outgoing edge per H-coset and one
incoming edge per K-coset.  A vertex is named by its backtrack-free path word
from the base vertex (a sequence of coset-representative steps), which makes
the tree metric a prefix computation and the ball enumeration free of
equality checks.

Isometries are classified through the cyclic core: a word with trivial core
fixes a vertex, otherwise it translates along an axis by the core's
stable-letter length.  A brute-force minimum-displacement search over a ball
is kept alongside as an independent oracle, so the identity between the two
is a tested theorem rather than an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .calculus import (
    BaseOracle,
    HnnWord,
    base_word,
    britton_reduce,
    cyclic_reduce,
    equals,
    format_word,
    identity_word,
    inv,
    mul,
    stable_word,
)
from .bs import make_bs

__all__ = [
    "ELLIPTIC",
    "HYPERBOLIC",
    "VertexLabel",
    "EdgeRef",
    "IsometryClass",
    "DeltaPoint",
    "NotEllipticError",
    "NotHyperbolicError",
    "TrivialElementError",
    "base_vertex",
    "label_str",
    "neighbors",
    "to_vertex_label",
    "act",
    "distance",
    "ball",
    "classify",
    "min_displacement_bfs",
    "fixed_subtree",
    "unbounded_fixed_witness_bs",
    "center",
    "delta",
    "axes_overlap",
    "tree_dot",
]

ELLIPTIC = "ELLIPTIC"
HYPERBOLIC = "HYPERBOLIC"


class NotEllipticError(ValueError):
    """Operation requires an elliptic isometry."""


class NotHyperbolicError(ValueError):
    """Operation requires hyperbolic isometries."""


class TrivialElementError(ValueError):
    """The trivial element has no attracting point or fixed-tree center."""


@dataclass(frozen=True)
class VertexLabel:
    """Backtrack-free path word naming a vertex coset.

    ``path`` entries are (representative, sign): a step (r, +1) crosses the
    outgoing edge g r H, a step (r, -1) the incoming edge g r t^-1 K-side.
    The empty path is the base vertex; the distance to it is the path length.
    """

    oracle: BaseOracle
    path: tuple[tuple[object, int], ...] = ()

    @property
    def depth(self) -> int:
        return len(self.path)

    def word(self) -> HnnWord:
        if not self.path:
            return identity_word(self.oracle)
        head = self.path[0][0]
        pairs = []
        for i, (_, sign) in enumerate(self.path):
            nxt = self.path[i + 1][0] if i + 1 < len(self.path) else self.oracle.identity
            pairs.append((sign, nxt))
        return HnnWord(self.oracle, head, tuple(pairs))

    def parent(self) -> Optional["VertexLabel"]:
        if not self.path:
            return None
        return VertexLabel(self.oracle, self.path[:-1])

    def step(self, rep, sign: int) -> "VertexLabel":
        """Move across one edge; a backtracking step pops to the parent."""
        if (
            self.path
            and self.oracle.is_identity(rep)
            and self.path[-1][1] == -sign
        ):
            return VertexLabel(self.oracle, self.path[:-1])
        return VertexLabel(self.oracle, self.path + ((rep, sign),))

    def __str__(self) -> str:
        return label_str(self)


@dataclass(frozen=True)
class EdgeRef:
    """Oriented edge reference; ``sign`` +1 is an outgoing edge g H from g L
    to g t L, -1 an incoming edge traversed backwards."""

    source: VertexLabel
    rep: object
    sign: int

    @property
    def target(self) -> VertexLabel:
        return self.source.step(self.rep, self.sign)


def base_vertex(oracle: BaseOracle) -> VertexLabel:
    return VertexLabel(oracle, ())


def label_str(v: VertexLabel) -> str:
    return "1" if not v.path else format_word(v.word())


def neighbors(v: VertexLabel) -> list[EdgeRef]:
    """[L:H] outgoing then [L:K] incoming edges, in transversal order."""
    oracle = v.oracle
    edges = [EdgeRef(v, rep, 1) for rep in oracle.h_transversal()]
    edges += [EdgeRef(v, rep, -1) for rep in oracle.k_transversal()]
    return edges


def to_vertex_label(g: HnnWord) -> VertexLabel:
    """Canonical label of the coset g L.

    Britton-reduce, then push subgroup parts rightward through the stable
    letters (h t = t phi(h), k t^-1 = t^-1 phi^-1(k)), emitting left-coset
    representatives; the trailing base element is absorbed by L.
    """
    oracle = g.oracle
    w = britton_reduce(g)
    path = []
    x = w.head
    for sign, lam in w.tail:
        if sign == 1:
            rep, s = oracle.decompose_right_H(x)
            carry = oracle.phi(s)
        else:
            rep, s = oracle.decompose_right_K(x)
            carry = oracle.phi_inv(s)
        path.append((rep, sign))
        x = oracle.mul(carry, lam)
    return VertexLabel(oracle, tuple(path))


def act(g: HnnWord, v: VertexLabel) -> VertexLabel:
    """Left translation of the vertex g L by a group element."""
    return to_vertex_label(mul(g, v.word()))


def distance(u: VertexLabel, v: VertexLabel) -> int:
    """Tree metric: strip the longest common prefix, add remaining lengths."""
    if u.oracle != v.oracle:
        raise ValueError("labels belong to different oracles")
    common = 0
    for a, b in zip(u.path, v.path):
        if a != b:
            break
        common += 1
    return (len(u.path) - common) + (len(v.path) - common)


def _displacement(gamma: HnnWord, vword: HnnWord, vword_inv: HnnWord) -> int:
    moved = mul(mul(vword_inv, gamma), vword)
    return len(moved.tail)


@lru_cache(maxsize=16)
def _ball_with_words(
    oracle: BaseOracle, radius: int
) -> tuple[tuple[VertexLabel, HnnWord, HnnWord], ...]:
    """BFS enumeration of the radius ball with each vertex's word and its
    inverse precomputed."""
    start = base_vertex(oracle)
    rows = [(start, identity_word(oracle), identity_word(oracle))]
    seen = {start.path}
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for edge in neighbors(v):
                u = edge.target
                if len(u.path) <= len(v.path) or u.path in seen:
                    continue
                seen.add(u.path)
                w = u.word()
                rows.append((u, w, inv(w)))
                nxt.append(u)
        frontier = nxt
    return tuple(rows)


def ball(oracle: BaseOracle, radius: int) -> list[VertexLabel]:
    """Vertices within the given distance of the base vertex, in BFS order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return [row[0] for row in _ball_with_words(oracle, radius)]


def min_displacement_bfs(gamma: HnnWord, radius: int) -> tuple[int, VertexLabel]:
    """Minimum of distance(v, gamma v) over the radius ball, with the first
    BFS witness.  Independent of the cyclic-core classification."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    best: Optional[tuple[int, VertexLabel]] = None
    for v, w, w_inv in _ball_with_words(gamma.oracle, radius):
        d = _displacement(gamma, w, w_inv)
        if best is None or d < best[0]:
            best = (d, v)
            if d == 0:
                break
    return best


@dataclass(frozen=True)
class IsometryClass:
    """ELLIPTIC with a fixed vertex witness and the cyclic-reduction
    conjugator, or HYPERBOLIC with translation length and an axis sample."""

    kind: str
    fixed_vertex: Optional[VertexLabel] = None
    conjugator: Optional[HnnWord] = None
    translation_length: Optional[int] = None
    axis_sample: Optional[tuple[VertexLabel, ...]] = None


def _core_syllable_words(core: HnnWord) -> list[HnnWord]:
    oracle = core.oracle
    return [HnnWord(oracle, oracle.identity, (pair,)) for pair in core.tail]


def _axis_labels(
    conj: HnnWord, core: HnnWord, periods: int, backward: bool = False
) -> list[VertexLabel]:
    """Labels of conj * (prefixes of core^periods), the start vertex first.

    The core's head is folded in before each period's syllables; it does not
    move the vertex (the base group is absorbed) but it is needed so that
    deeper prefixes name the true axis vertices.
    """
    oracle = core.oracle
    word = core if not backward else inv(core)
    head = base_word(oracle, word.head)
    g = conj
    labels = [to_vertex_label(g)]
    for _ in range(periods):
        g = mul(g, head)
        for syll in _core_syllable_words(word):
            g = mul(g, syll)
            labels.append(to_vertex_label(g))
    return labels


def classify(gamma: HnnWord, sample_periods: int = 3) -> IsometryClass:
    """Elliptic when the cyclic core is a base element, else hyperbolic with
    translation length the core's stable-letter count."""
    core, conj = cyclic_reduce(gamma)
    if not core.tail:
        witness = to_vertex_label(conj)
        assert act(gamma, witness) == witness, "elliptic witness must be fixed"
        return IsometryClass(ELLIPTIC, fixed_vertex=witness, conjugator=conj)
    tl = len(core.tail)
    sample = tuple(_axis_labels(conj, core, sample_periods))
    for v in sample:
        assert distance(v, act(gamma, v)) == tl, "axis sample must realize the translation length"
    return IsometryClass(
        HYPERBOLIC, conjugator=conj, translation_length=tl, axis_sample=sample
    )


def _is_fixed(gamma: HnnWord, v: VertexLabel) -> bool:
    w = v.word()
    return not mul(mul(inv(w), gamma), w).tail


def fixed_subtree(gamma: HnnWord, radius: int) -> tuple[frozenset[VertexLabel], bool]:
    """All vertices of the radius ball fixed by an elliptic gamma, plus a
    flag telling whether the fixed set reaches the ball boundary (in which
    case unboundedness cannot be refuted at this radius).

    The fixed set is the intersection of two subtrees, hence connected, so a
    search restricted to fixed vertices starting at the projection of the
    base vertex is complete.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    cls = classify(gamma)
    if cls.kind != ELLIPTIC:
        raise NotEllipticError("fixed subtrees exist only for elliptic elements")
    witness = cls.fixed_vertex
    # the geodesic from a fixed vertex to the base consists of its prefixes;
    # the last fixed one is the projection of the base onto the fixed subtree
    entry = None
    for k in range(len(witness.path), -1, -1):
        v = VertexLabel(gamma.oracle, witness.path[:k])
        if _is_fixed(gamma, v):
            entry = v
        else:
            break
    assert entry is not None
    if entry.depth > radius:
        return frozenset(), False
    fixed = {entry}
    frontier = [entry]
    while frontier:
        nxt = []
        for v in frontier:
            for edge in neighbors(v):
                u = edge.target
                if u in fixed or u.depth > radius:
                    continue
                if _is_fixed(gamma, u):
                    fixed.add(u)
                    nxt.append(u)
        frontier = nxt
    touches = any(v.depth == radius for v in fixed)
    return frozenset(fixed), touches


def unbounded_fixed_witness_bs(
    m: int, n: int, check_range: int = 5
) -> tuple[HnnWord, Callable[[int], VertexLabel]]:
    """A nontrivial element fixing an unbounded family of vertices, with the
    family as an explicit map index -> vertex.

    When n | m, b^n fixes a^l L for every l; when m | n (and not the previous
    case), b^m fixes a^-l L; otherwise b^n commutes with the commutator
    c = a b a^-1 b^-1 and fixes c^l L at distance 2l.
    """
    oracle = make_bs(m, n)
    b = 1

    if m % n == 0:
        gamma = base_word(oracle, n)

        def family(l: int) -> VertexLabel:
            return to_vertex_label(stable_word(oracle, 1, l))

        expected_distance = lambda l: l
    elif n % m == 0:
        gamma = base_word(oracle, m)

        def family(l: int) -> VertexLabel:
            return to_vertex_label(stable_word(oracle, -1, l))

        expected_distance = lambda l: l
    else:
        gamma = base_word(oracle, n)
        comm = HnnWord(oracle, oracle.identity, ((1, b), (-1, -b)))

        def family(l: int) -> VertexLabel:
            g = identity_word(oracle)
            for _ in range(l):
                g = mul(g, comm)
            return to_vertex_label(g)

        expected_distance = lambda l: 2 * l

    origin = base_vertex(oracle)
    for l in range(check_range + 1):
        v = family(l)
        if act(gamma, v) != v or distance(origin, v) != expected_distance(l):
            raise AssertionError(f"unbounded fixed family fails at index {l}")
    return gamma, family


def _geodesic(u: VertexLabel, v: VertexLabel) -> list[VertexLabel]:
    common = 0
    for a, b in zip(u.path, v.path):
        if a != b:
            break
        common += 1
    up = [VertexLabel(u.oracle, u.path[:k]) for k in range(len(u.path), common, -1)]
    down = [VertexLabel(u.oracle, v.path[:k]) for k in range(common, len(v.path) + 1)]
    return up + down


def center(labels: Iterable[VertexLabel]) -> VertexLabel:
    """Center of a nonempty finite vertex set by double sweep: the midpoint
    of a diametral pair, taking the lexicographically least of the two middle
    vertices on odd diameters."""
    vs = sorted(set(labels), key=label_str)
    if not vs:
        raise ValueError("center of an empty set")
    if len(vs) == 1:
        return vs[0]

    def farthest(src: VertexLabel) -> VertexLabel:
        best = max(distance(src, v) for v in vs)
        return min((v for v in vs if distance(src, v) == best), key=label_str)

    u = farthest(vs[0])
    w = farthest(u)
    geo = _geodesic(u, w)
    diameter = len(geo) - 1
    if diameter % 2 == 0:
        return geo[diameter // 2]
    a, b = geo[diameter // 2], geo[diameter // 2 + 1]
    return min(a, b, key=label_str)


@dataclass(frozen=True)
class DeltaPoint:
    """Attracting point of an isometry: an end descriptor for hyperbolic
    elements, the center of the fixed subtree for elliptic ones whose fixed
    set is certified bounded at the exploration radius, and an explicit
    possibly-unbounded report otherwise."""

    kind: str  # "end" | "vertex" | "possibly_unbounded"
    vertex: Optional[VertexLabel] = None
    ray: Optional[tuple[VertexLabel, ...]] = None
    period: Optional[HnnWord] = None
    note: str = ""


def delta(gamma: HnnWord, radius: int) -> DeltaPoint:
    """Equivariant attracting-point assignment, computed at a finite radius.

    Hyperbolic: the attracting end, described by the axis ray in the
    attracting direction with its eventual period (the cyclic core).
    Elliptic: the center of the fixed subtree when that set stays strictly
    inside the ball; when it reaches the boundary the fixed subtree may be
    unbounded and no center is guessed.
    """
    oracle = gamma.oracle
    if equals(gamma, identity_word(oracle)):
        raise TrivialElementError("delta is undefined on the trivial element")
    cls = classify(gamma)
    if cls.kind == HYPERBOLIC:
        core, conj = cyclic_reduce(gamma)
        periods = max(2, -(-radius // max(1, len(core.tail))))
        ray = tuple(_axis_labels(conj, core, periods))
        return DeltaPoint(kind="end", ray=ray, period=core)
    fixed, touches = fixed_subtree(gamma, radius)
    if touches or not fixed:
        note = (
            "fixed subtree reaches the exploration boundary"
            if fixed
            else "fixed subtree lies outside the explored ball"
        )
        return DeltaPoint(kind="possibly_unbounded", note=f"{note} (radius {radius})")
    return DeltaPoint(kind="vertex", vertex=center(fixed))


def axes_overlap(gamma1: HnnWord, gamma2: HnnWord, radius: int) -> int:
    """Number of common axis vertices of two hyperbolic isometries inside
    the radius ball."""
    sets = []
    for gamma in (gamma1, gamma2):
        core, conj = cyclic_reduce(gamma)
        if not core.tail:
            raise NotHyperbolicError("axes exist only for hyperbolic elements")
        offset = to_vertex_label(conj).depth
        periods = -(-(radius + offset) // len(core.tail)) + 1
        pts = set(_axis_labels(conj, core, periods))
        pts |= set(_axis_labels(conj, core, periods, backward=True))
        sets.append({v for v in pts if v.depth <= radius})
    return len(sets[0] & sets[1])


def tree_dot(oracle: BaseOracle, radius: int, gamma: Optional[HnnWord] = None) -> str:
    """DOT digraph of the radius ball: nodes in BFS order, solid oriented
    edges within the ball, and optionally dashed edges v -> gamma v."""
    vs = ball(oracle, radius)
    inside = {v.path for v in vs}
    lines = ["digraph bass_serre_ball {"]
    for v in vs:
        lines.append(f'  "{label_str(v)}";')
    for v in vs:
        for rep in oracle.h_transversal():
            u = v.step(rep, 1)
            if u.path in inside:
                lines.append(f'  "{label_str(v)}" -> "{label_str(u)}";')
    if gamma is not None:
        for v in vs:
            u = act(gamma, v)
            if u.path in inside:
                lines.append(f'  "{label_str(v)}" -> "{label_str(u)}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
