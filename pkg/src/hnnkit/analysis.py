"""ICC decision procedures, conjugacy-orbit sampling, Folner-type chains and
escape exponents.

The two decision procedures (Baumslag-Solitar parameters, integer-matrix
ascending extensions) return exact verdicts with verified finite-class
witnesses in the negative cases; empirical orbit-growth evidence is produced
only by the sampling probe and never upgraded to a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .calculus import (
    BaseOracle,
    DomainError,
    HnnWord,
    NormalForm,
    base_word,
    britton_reduce,
    conjugate,
    format_word,
    identity_word,
    mul,
    normalize,
    phi_iter,
    stable_word,
)
from .bs import BsOracle, BsParams, dom_phi_j_closed_form, make_bs
from .zd import has_root_of_unity_eigenvalue, integer_fixed_vector, make_zd

__all__ = [
    "ICC",
    "NOT_ICC",
    "EMPIRICAL",
    "IccVerdict",
    "FolnerChain",
    "VerificationError",
    "HypothesisViolationError",
    "EscapeExhaustionError",
    "icc_decide_bs",
    "icc_decide_zd",
    "icc_probe_orbit",
    "thm1_hypothesis_bs",
    "orbit_sample",
    "folner_chain_bs",
    "folner_chain_ascending",
    "symdiff_ratio",
    "escape_exponent",
]

ICC = "ICC"
NOT_ICC = "NOT_ICC"
EMPIRICAL = "EMPIRICAL"


class VerificationError(ValueError):
    """A certificate failed its own consistency check (arithmetic bug)."""


class HypothesisViolationError(ValueError):
    """The arithmetic premise of an operation does not hold."""


class EscapeExhaustionError(ValueError):
    """No stable escape exponent found within the search budget."""

    def __init__(self, message: str, trace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class IccVerdict:
    """status ICC / NOT_ICC / EMPIRICAL, with a finite-conjugacy-class
    witness for NOT_ICC and an orbit-growth table for EMPIRICAL."""

    status: str
    witness: Optional[tuple[HnnWord, ...]] = None
    evidence: Optional[tuple[tuple[int, int], ...]] = None

    def witness_strings(self) -> Optional[list[str]]:
        if self.witness is None:
            return None
        return sorted(format_word(w) for w in self.witness)


def generator_letter_words(oracle: BaseOracle) -> list[HnnWord]:
    words = [stable_word(oracle, 1), stable_word(oracle, -1)]
    for g in oracle.generators():
        words.append(base_word(oracle, g))
        words.append(base_word(oracle, oracle.inv(g)))
    return words


def verify_finite_class(oracle: BaseOracle, words: Sequence[HnnWord]) -> None:
    """Check that ``words`` is a nonempty identity-free set closed under
    conjugation by every group generator; raises VerificationError."""
    if not words:
        raise VerificationError("witness set is empty")
    keys = {normalize(w).key() for w in words}
    if normalize(identity_word(oracle)).key() in keys:
        raise VerificationError("witness set contains the identity")
    for gen in generator_letter_words(oracle):
        for w in words:
            if normalize(conjugate(gen, w)).key() not in keys:
                raise VerificationError(
                    f"witness set is not closed under conjugation by {format_word(gen)}"
                )


def icc_decide_bs(m: int, n: int) -> IccVerdict:
    """BS(m, n) has infinite conjugacy classes exactly when |m| != |n|.

    When m = n the class of b^m is {b^m} (central element); when m = -n it is
    {b^m, b^-m}.  Witness closure is verified before returning.
    """
    params = BsParams(m, n)
    if abs(m) != abs(n):
        return IccVerdict(ICC)
    oracle = make_bs(m, n)
    if m == n:
        witness = (base_word(oracle, m),)
    else:
        witness = (base_word(oracle, m), base_word(oracle, -m))
    verify_finite_class(oracle, witness)
    return IccVerdict(NOT_ICC, witness=witness)


def icc_decide_zd(matrix) -> IccVerdict:
    """The ascending extension of Z^d by an injective integer matrix is ICC
    exactly when no eigenvalue is a root of unity.  In the negative case the
    witness is the phi-orbit of a nonzero integer vector fixed by phi^k."""
    oracle = make_zd(matrix)
    k = has_root_of_unity_eigenvalue(oracle.matrix)
    if k is None:
        return IccVerdict(ICC)
    lam = integer_fixed_vector(oracle.matrix, k)
    if lam is None:
        raise VerificationError(f"phi^{k} should have a nonzero fixed vector")
    orbit = [lam]
    v = oracle.phi(lam)
    while v != lam:
        orbit.append(v)
        v = oracle.phi(v)
    witness = tuple(base_word(oracle, x) for x in orbit)
    verify_finite_class(oracle, witness)
    return IccVerdict(NOT_ICC, witness=witness)


def icc_probe_orbit(x: HnnWord, radii: Sequence[int] = (2, 4, 6)) -> IccVerdict:
    """Orbit-growth evidence for a single element; never a decision."""
    evidence = tuple((r, len(orbit_sample(x, r))) for r in radii)
    return IccVerdict(EMPIRICAL, evidence=evidence)


def thm1_hypothesis_bs(m: int, n: int, j_max: int) -> bool:
    """True when every phi^j with j <= j_max is fixed-point-free away from
    the identity.

    For BS(m, n) a fixed point z * (m/n)^j = z with z != 0 forces
    m1^j = n1^j, so the arithmetic test is exact; the closed-form domain
    generator is cross-checked through the oracle as a guard.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    params = BsParams(m, n)
    oracle = make_bs(m, n)
    result = True
    for j in range(1, j_max + 1):
        arithmetic_fixed = params.m1 ** j == params.n1 ** j
        g = dom_phi_j_closed_form(params, j)
        oracle_fixed = phi_iter(oracle, g, j) == g
        if arithmetic_fixed != oracle_fixed:
            raise VerificationError(f"fixed-point routes disagree at j = {j}")
        if arithmetic_fixed:
            result = False
    return result


@lru_cache(maxsize=32)
def _conjugator_ball(oracle: BaseOracle, radius: int) -> tuple[HnnWord, ...]:
    """All group elements expressible with at most ``radius`` generator
    letters, one normal-form word each, in deterministic order."""
    gens = generator_letter_words(oracle)
    start = normalize(identity_word(oracle))
    seen = {start.key(): start.word}
    frontier = [start.word]
    order = [start.word]
    for _ in range(radius):
        new = []
        for g in frontier:
            for letter in gens:
                h = normalize(mul(g, letter))
                if h.key() not in seen:
                    seen[h.key()] = h.word
                    new.append(h.word)
                    order.append(h.word)
        frontier = new
    return tuple(order)


def orbit_sample(x: HnnWord, radius: int) -> tuple[NormalForm, ...]:
    """Normal forms of g x g^-1 over all g in the generator ball of the given
    radius, deduplicated, sorted by canonical serialization."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    oracle = x.oracle
    found: dict[tuple, NormalForm] = {}
    for g in _conjugator_ball(oracle, radius):
        nf = normalize(conjugate(g, x))
        found.setdefault(nf.key(), nf)
    return tuple(sorted(found.values(), key=lambda nf: format_word(nf.word)))


@dataclass(frozen=True)
class FolnerChain:
    """A verified sequence h_0, ..., h_k of central base elements with
    h_i = phi(h_{i-1}); the inner-amenability witness."""

    oracle: BaseOracle
    label: str
    elements: tuple

    @property
    def k(self) -> int:
        return len(self.elements) - 1

    def words(self) -> tuple[HnnWord, ...]:
        return tuple(base_word(self.oracle, h) for h in self.elements)

    def verify(self, require_distinct: bool, interior_only: bool = False) -> None:
        """Check the phi-links, nontriviality, centrality and H/K membership.

        ``interior_only`` relaxes the H-and-K requirement to the window
        h_1..h_{k-1} (plus h_0 in H and h_k in K), which is what ascending
        chains starting from an arbitrary nontrivial element provide.
        """
        ora = self.oracle
        hs = self.elements
        if len(hs) < 2:
            raise VerificationError("chain needs at least two elements")
        for i, h in enumerate(hs):
            if ora.is_identity(h):
                raise VerificationError(f"h_{i} is trivial")
            if not ora.is_central(h):
                raise VerificationError(f"h_{i} is not central")
            need_h = not interior_only or i < len(hs) - 1
            need_k = not interior_only or i > 0
            if need_h and not ora.in_H(h):
                raise VerificationError(f"h_{i} is not in H")
            if need_k and not ora.in_K(h):
                raise VerificationError(f"h_{i} is not in K")
        for i in range(1, len(hs)):
            if ora.phi(hs[i - 1]) != hs[i]:
                raise VerificationError(f"h_{i} != phi(h_{i - 1})")
        if require_distinct and len(set(hs)) != len(hs):
            raise VerificationError("chain elements are not pairwise distinct")


def folner_chain_bs(m: int, n: int, k: int) -> FolnerChain:
    """The chain h_i = b^(m^(i+1) n^(k-i+1)), i = 0..k, verified.

    Distinctness is asserted only when |m| != |n| (the ICC case); with
    |m| = |n| all elements share one exponent magnitude and the chain is
    still a valid certificate.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    oracle = make_bs(m, n)
    elements = tuple(m ** (i + 1) * n ** (k - i + 1) for i in range(k + 1))
    chain = FolnerChain(oracle, f"BS({m},{n})", elements)
    chain.verify(require_distinct=abs(m) != abs(n))
    return chain


def folner_chain_ascending(
    oracle: BaseOracle, lam, k: int, require_distinct: bool = False
) -> FolnerChain:
    """The chain phi^0(lam), ..., phi^k(lam) for an ascending oracle
    (H = whole base group) with abelian base; verified."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if oracle.is_identity(lam):
        raise ValueError("lam must be nontrivial")
    elements = [lam]
    cur = lam
    for _ in range(k):
        if not oracle.in_H(cur):
            raise DomainError(
                f"oracle is not ascending: {oracle.format_element(cur)} left H"
            )
        cur = oracle.phi(cur)
        elements.append(cur)
    chain = FolnerChain(oracle, f"{oracle.name} ascending", tuple(elements))
    chain.verify(require_distinct=require_distinct, interior_only=True)
    return chain


def symdiff_ratio(chain: FolnerChain, g: HnnWord) -> Fraction:
    """|g F g^-1 symdiff F| / |F| for the interior window
    F = {h_1, ..., h_{k-1}}, as an exact rational."""
    if chain.k < 2:
        raise ValueError("chain must have k >= 2")
    if g.oracle != chain.oracle:
        raise ValueError("word belongs to a different oracle")
    window = chain.elements[1:-1]
    f_keys = {normalize(base_word(chain.oracle, h)).key() for h in window}
    conj_keys = {
        normalize(conjugate(g, base_word(chain.oracle, h))).key() for h in window
    }
    return Fraction(len(f_keys ^ conj_keys), len(window))


def escape_exponent(F: Sequence[HnnWord], n_max: int) -> int:
    """Smallest n0 such that a^-n x a^n stays outside the base group for all
    x in F and all n in [n0, n_max].

    Only meaningful when iterating phi eventually expels every nontrivial
    base element from H, which for BS(m, n) holds exactly when n does not
    divide m (some prime has a strictly larger valuation in n than in m, so
    the valuation drops at every step; if n | m the element b^n never
    leaves H).  Refuses otherwise.
    """
    words = list(F)
    if not words:
        raise ValueError("F must be nonempty")
    oracle = words[0].oracle
    if not isinstance(oracle, BsOracle):
        raise ValueError("escape exponents are implemented for BS oracles only")
    if any(w.oracle != oracle for w in words):
        raise ValueError("words belong to different oracles")
    m, n = oracle.params.m, oracle.params.n
    if m % n == 0:
        raise HypothesisViolationError(
            f"BS({m},{n}): {n} divides {m}, so phi^k(b^{n}) stays in H forever"
        )
    current = [britton_reduce(w) for w in words]
    for w in current:
        if not w.tail and oracle.is_identity(w.head):
            raise ValueError("every element of F must be nontrivial")
    a = stable_word(oracle, 1)
    a_inv = stable_word(oracle, -1)
    run_start: Optional[int] = None
    trace: list[tuple[int, list[str]]] = []
    for step in range(1, n_max + 1):
        current = [mul(mul(a_inv, w), a) for w in current]
        inside = [format_word(w) for w in current if not w.tail]
        trace.append((step, inside))
        if inside:
            run_start = None
        elif run_start is None:
            run_start = step
    if run_start is None:
        raise EscapeExhaustionError(
            f"no escape exponent up to n_max = {n_max}; "
            f"still inside the base group: {trace[-1][1]}",
            trace,
        )
    return run_start
