"""Exact word calculus for HNN extensions over a pluggable base-group oracle.

Elements of ``HNN(L, H, K, phi) = <L, t | t^-1 h t = phi(h), h in H>`` are
alternating words

    lam_0 t^e1 lam_1 ... t^en lam_n        (lam_i in L, e_i = +-1)

and everything here is parameterized by a :class:`BaseOracle` supplying exact
arithmetic in the base group L together with H/K membership, the isomorphism
phi and canonical coset representatives.  The module implements Britton
reduction (pinch removal), the normal form with canonical representatives,
multiplication, inversion, conjugation, equality, cyclic reduction with an
explicit conjugator certificate, and the iterated partial maps phi^j.

All values are immutable and all operations are pure functions, so the whole
calculus is safe for unrestricted concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional

__all__ = [
    "BaseOracle",
    "HnnWord",
    "NormalForm",
    "WordParseError",
    "DomainError",
    "UnboundedIndexError",
    "identity_word",
    "base_word",
    "stable_word",
    "britton_reduce",
    "length",
    "normalize",
    "mul",
    "inv",
    "conjugate",
    "equals",
    "cyclic_reduce",
    "phi_iter_domain",
    "phi_iter",
    "fixed_by_some_phi_j",
    "parse_word",
    "format_word",
]


class WordParseError(ValueError):
    """Malformed word text.  Carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DomainError(ValueError):
    """phi or phi^-1 was queried outside its domain."""


class UnboundedIndexError(ValueError):
    """A coset transversal was requested for a subgroup of infinite index."""


class BaseOracle:
    """Exact arithmetic and subgroup data for the base group of an HNN extension.

    A concrete oracle provides a group L with subgroups H and K, an
    isomorphism ``phi: H -> K``, and canonical coset representatives.  The
    decomposition contract is

    * ``decompose_left_H(x) == (h, r)`` with ``x == h * r``, ``h`` in H, and
      ``r`` the canonical representative of the right coset ``H x`` (``r`` is
      the identity exactly when ``x`` lies in H);
    * ``decompose_right_H(x) == (r, h)`` with ``x == r * h`` and ``r`` the
      canonical representative of the left coset ``x H``;

    and the same two shapes for K.  Every transversal contains the identity,
    which represents the subgroup's own coset.

    Element values must be canonical hashable Python values, so that
    ``eq(x, y)`` coincides with ``x == y``.  That makes words and labels
    directly usable as dictionary keys.
    """

    name = "base"
    stable_letter = "t"

    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def eq(self, x, y) -> bool:
        return x == y

    def is_identity(self, x) -> bool:
        return x == self.identity

    def in_H(self, x) -> bool:
        raise NotImplementedError

    def in_K(self, x) -> bool:
        raise NotImplementedError

    def phi(self, x):
        raise NotImplementedError

    def phi_inv(self, x):
        raise NotImplementedError

    def decompose_left_H(self, x):
        raise NotImplementedError

    def decompose_right_H(self, x):
        raise NotImplementedError

    def decompose_left_K(self, x):
        raise NotImplementedError

    def decompose_right_K(self, x):
        raise NotImplementedError

    def is_central(self, x) -> bool:
        raise NotImplementedError

    def h_transversal(self) -> tuple:
        raise UnboundedIndexError(f"[L:H] is not finite for oracle {self.name!r}")

    def k_transversal(self) -> tuple:
        raise UnboundedIndexError(f"[L:K] is not finite for oracle {self.name!r}")

    def base_letters(self) -> dict[str, Any]:
        """Letter name -> base element, for the word grammar."""
        return {}

    def generators(self) -> tuple:
        """Base-group generators used for orbit and ball enumeration."""
        return tuple(self.base_letters().values())

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        acc = self.identity
        while k:
            if k & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            k >>= 1
        return acc

    def format_element(self, x) -> str:
        raise NotImplementedError

    def sort_key(self, x) -> str:
        """Total order on base elements via their canonical serialization."""
        return self.format_element(x)


@dataclass(frozen=True, eq=False)
class HnnWord:
    """A word ``head t^s1 e1 t^s2 e2 ...`` over an oracle's base group.

    ``tail`` holds the pairs ``(s_i, lam_i)`` with ``s_i = +-1`` and ``lam_i``
    the base element following the i-th stable letter.  Words compare by
    identity; use :func:`equals` for group equality and :meth:`key` for
    structural keys.
    """

    oracle: BaseOracle
    head: Any
    tail: tuple[tuple[int, Any], ...] = ()

    def key(self) -> tuple:
        return (self.head, self.tail)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"HnnWord({format_word(self)!r})"


@dataclass(frozen=True, eq=False)
class NormalForm:
    """A pinch-free word whose inter-letter segments are canonical coset
    representatives.  Two normal forms are componentwise equal exactly when
    they represent the same group element, so ``==`` here is group equality.
    """

    word: HnnWord

    def key(self) -> tuple:
        return self.word.key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.word.oracle == other.word.oracle and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        return format_word(self.word)

    def __repr__(self) -> str:
        return f"NormalForm({format_word(self.word)!r})"


def identity_word(oracle: BaseOracle) -> HnnWord:
    return HnnWord(oracle, oracle.identity)


def base_word(oracle: BaseOracle, x) -> HnnWord:
    return HnnWord(oracle, x)


def stable_word(oracle: BaseOracle, sign: int = 1, count: int = 1) -> HnnWord:
    """The word t^(sign*count), printed with the oracle's stable letter."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if count < 0:
        raise ValueError("count must be nonnegative")
    e = oracle.identity
    return HnnWord(oracle, e, ((sign, e),) * count)


def _same_oracle(u: HnnWord, v: HnnWord) -> BaseOracle:
    if u.oracle != v.oracle:
        raise ValueError("words belong to different oracles")
    return u.oracle


def _reduce(oracle: BaseOracle, head, tail):
    """One full leftmost-innermost pinch-removal pass over a token stream."""
    in_H, in_K = oracle.in_H, oracle.in_K
    phi, phi_inv, omul = oracle.phi, oracle.phi_inv, oracle.mul
    stack: list[tuple[int, Any]] = []
    for sign, elem in tail:
        if stack:
            tsign, telem = stack[-1]
            if tsign == -1 and sign == 1 and in_H(telem):
                stack.pop()
                merged = omul(phi(telem), elem)
                if stack:
                    psign, pelem = stack[-1]
                    stack[-1] = (psign, omul(pelem, merged))
                else:
                    head = omul(head, merged)
                continue
            if tsign == 1 and sign == -1 and in_K(telem):
                stack.pop()
                merged = omul(phi_inv(telem), elem)
                if stack:
                    psign, pelem = stack[-1]
                    stack[-1] = (psign, omul(pelem, merged))
                else:
                    head = omul(head, merged)
                continue
        stack.append((sign, elem))
    return head, tuple(stack)


def britton_reduce(w: HnnWord) -> HnnWord:
    """Remove every pinch ``t^-1 h t`` (h in H) and ``t k t^-1`` (k in K).

    Returns a pinch-free word representing the same group element; adjacent
    base elements are merged eagerly.  Idempotent and total.
    """
    head, tail = _reduce(w.oracle, w.head, w.tail)
    if head == w.head and tail == w.tail:
        return w
    return HnnWord(w.oracle, head, tail)


def length(w: HnnWord) -> int:
    """Number of stable letters of the reduced form of ``w``."""
    return len(britton_reduce(w).tail)


def _concat(oracle: BaseOracle, words: Iterable[HnnWord]):
    """Token-level concatenation with eager merging; no reduction."""
    head = oracle.identity
    tail: list[tuple[int, Any]] = []
    for w in words:
        if tail:
            psign, pelem = tail[-1]
            tail[-1] = (psign, oracle.mul(pelem, w.head))
        else:
            head = oracle.mul(head, w.head)
        tail.extend(w.tail)
    return head, tail


def mul(u: HnnWord, v: HnnWord) -> HnnWord:
    """Product ``u * v``, Britton-reduced."""
    oracle = _same_oracle(u, v)
    head, tail = _concat(oracle, (u, v))
    head, tail = _reduce(oracle, head, tail)
    return HnnWord(oracle, head, tuple(tail))


def inv(u: HnnWord) -> HnnWord:
    """Formal inverse (reverse, negate signs, invert base letters), reduced."""
    oracle = u.oracle
    elems = [u.head] + [e for _, e in u.tail]
    signs = [s for s, _ in u.tail]
    head = oracle.inv(elems[-1])
    tail = tuple((-signs[i], oracle.inv(elems[i])) for i in range(len(signs) - 1, -1, -1))
    head, tail = _reduce(oracle, head, tail)
    return HnnWord(oracle, head, tail)


def conjugate(g: HnnWord, x: HnnWord) -> HnnWord:
    """``g * x * g^-1``, reduced."""
    return mul(mul(g, x), inv(g))


def normalize(w: HnnWord) -> NormalForm:
    """Britton-reduce, then canonicalize in one right-to-left pass.

    For i = n down to 1 the segment ``lam_i`` is split as ``s * r`` (``s`` in
    K when the preceding letter is t, in H when it is t^-1; ``r`` the
    canonical right-coset representative), ``lam_i`` is replaced by ``r`` and
    ``phi^-1(s)`` resp. ``phi(s)`` is pushed into ``lam_{i-1}``.  A left push
    never re-creates a pinch because a representative lies in the subgroup
    only when it is the identity.
    """
    oracle = w.oracle
    r = britton_reduce(w)
    head = r.head
    tail = list(r.tail)
    for j in range(len(tail) - 1, -1, -1):
        sign, elem = tail[j]
        if sign == 1:
            s, rep = oracle.decompose_left_K(elem)
            carry = oracle.phi_inv(s)
        else:
            s, rep = oracle.decompose_left_H(elem)
            carry = oracle.phi(s)
        tail[j] = (sign, rep)
        if j:
            psign, pelem = tail[j - 1]
            tail[j - 1] = (psign, oracle.mul(pelem, carry))
        else:
            head = oracle.mul(head, carry)
    for j in range(len(tail) - 1):
        s1, e1 = tail[j]
        s2 = tail[j + 1][0]
        if s1 == -s2:
            assert not oracle.is_identity(e1), "pinch re-created during canonicalization"
    return NormalForm(HnnWord(oracle, head, tuple(tail)))


def equals(u: HnnWord, v: HnnWord) -> bool:
    """Group equality, decided through normal forms."""
    _same_oracle(u, v)
    return normalize(u).key() == normalize(v).key()


def cyclic_reduce(w: HnnWord) -> tuple[HnnWord, HnnWord]:
    """Return ``(core, g)`` with ``w = g * core * g^-1`` and ``core`` of
    minimal stable-letter length among conjugates reachable by iterated
    wrap-pinch removal.

    While the reduced word has opposite first and last signs and the wrap
    product ``lam_n * lam_0`` lies in H (last sign -1, first +1) or K (last
    +1, first -1), the word is rotated by its leading syllable and re-reduced.
    Among the surviving same-length rotations the one with lexicographically
    least normal-form serialization is returned, so the choice of core is
    canonical for a given input word.
    """
    oracle = w.oracle
    c = britton_reduce(w)
    g = identity_word(oracle)
    while c.tail:
        first_sign = c.tail[0][0]
        last_sign, last_elem = c.tail[-1]
        if first_sign != -last_sign:
            break
        wrap = oracle.mul(last_elem, c.head)
        if last_sign == -1 and first_sign == 1:
            if not oracle.in_H(wrap):
                break
        else:
            if not oracle.in_K(wrap):
                break
        prefix = HnnWord(oracle, c.head, ((first_sign, oracle.identity),))
        rotated_tail = c.tail[1:-1] + ((last_sign, wrap), (first_sign, oracle.identity))
        head, tail = _reduce(oracle, c.tail[0][1], rotated_tail)
        c = HnnWord(oracle, head, tail)
        g = mul(g, prefix)
    if not c.tail:
        return c, g
    # canonical rotation: shift the head away, then pick the lexicographically
    # least normal form among the syllable rotations
    g = mul(g, base_word(oracle, c.head))
    syllables = c.tail[:-1] + ((c.tail[-1][0], oracle.mul(c.tail[-1][1], c.head)),)
    best = None
    for k in range(len(syllables)):
        candidate = britton_reduce(
            HnnWord(oracle, oracle.identity, syllables[k:] + syllables[:k])
        )
        assert len(candidate.tail) == len(syllables), "rotation of a cyclic core must stay reduced"
        nf = normalize(candidate)
        ser = format_word(nf.word)
        if best is None or ser < best[0]:
            best = (ser, nf.word, k)
    _, core, k = best
    conj = mul(g, HnnWord(oracle, oracle.identity, syllables[:k]))
    return core, conj


def phi_iter_domain(oracle: BaseOracle, x, j: int) -> bool:
    """Membership of ``x`` in Dom(phi^j), by the recursion
    Dom(phi^1) = H, Dom(phi^j) = phi^-1(Dom(phi^{j-1}) intersect K)."""
    if j < 1:
        raise ValueError("j must be >= 1")
    y = x
    for _ in range(j):
        if not oracle.in_H(y):
            return False
        y = oracle.phi(y)
    return True


def phi_iter(oracle: BaseOracle, x, j: int):
    """Apply phi j times; requires ``x`` in Dom(phi^j)."""
    if j < 1:
        raise ValueError("j must be >= 1")
    y = x
    for step in range(j):
        if not oracle.in_H(y):
            raise DomainError(
                f"{oracle.format_element(x)} is not in Dom(phi^{j}) "
                f"(leaves H after {step} applications)"
            )
        y = oracle.phi(y)
    return y


def fixed_by_some_phi_j(oracle: BaseOracle, x, j_max: int) -> Optional[int]:
    """Smallest ``j <= j_max`` with ``x`` in Dom(phi^j) and ``phi^j(x) == x``.

    Elements outside Dom(phi^j) are not fixed points of phi^j, so the scan
    stops as soon as the iterates leave H.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    y = x
    for j in range(1, j_max + 1):
        if not oracle.in_H(y):
            return None
        y = oracle.phi(y)
        if y == x:
            return j
    return None


# ---------------------------------------------------------------------------
# word grammar:  word := term*;  term := letter ('^' signed-integer)?
# letter := stable letter | base letter (oracle-defined) | '1'
# ---------------------------------------------------------------------------


def _letter_table(oracle: BaseOracle):
    table: list[tuple[str, str, Any]] = [
        (oracle.stable_letter, "stable", None),
        ("t", "stable", None),
        ("1", "identity", None),
    ]
    for name, value in oracle.base_letters().items():
        table.append((name, "base", value))
    # longest match first so e.g. "e12" is not read as "e1" "2"
    table.sort(key=lambda item: len(item[0]), reverse=True)
    return table


def parse_word(oracle: BaseOracle, text: str) -> HnnWord:
    """Parse word text; raises :class:`WordParseError` with the position on
    malformed input.  The written form is preserved (no reduction)."""
    table = _letter_table(oracle)
    n = len(text)
    i = 0
    head = oracle.identity
    tail: list[tuple[int, Any]] = []

    def push_elem(e):
        nonlocal head
        if tail:
            s, last = tail[-1]
            tail[-1] = (s, oracle.mul(last, e))
        else:
            head = oracle.mul(head, e)

    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        for name, kind, value in table:
            if text.startswith(name, i):
                break
        else:
            raise WordParseError(f"unknown letter {text[i]!r}", i)
        i += len(name)
        exp = 1
        j = i
        while j < n and text[j].isspace():
            j += 1
        if j < n and text[j] == "^":
            j += 1
            while j < n and text[j].isspace():
                j += 1
            k = j
            if k < n and text[k] in "+-":
                k += 1
            start_digits = k
            while k < n and text[k].isdigit():
                k += 1
            if k == start_digits:
                raise WordParseError("expected an integer exponent after '^'", j)
            exp = int(text[j:k])
            i = k
        if kind == "identity":
            continue
        if kind == "stable":
            sign = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                tail.append((sign, oracle.identity))
        elif exp != 0:
            push_elem(oracle.power(value, exp))
    return HnnWord(oracle, head, tuple(tail))


def format_word(w: HnnWord) -> str:
    """Canonical serialization; consecutive stable letters of equal sign with
    identity segments between them are printed as one power."""
    oracle = w.oracle
    parts: list[str] = []
    if not oracle.is_identity(w.head):
        parts.append(oracle.format_element(w.head))
    pairs = w.tail
    i = 0
    letter = oracle.stable_letter
    while i < len(pairs):
        sign = pairs[i][0]
        run = 1
        while (
            i + run < len(pairs)
            and pairs[i + run][0] == sign
            and oracle.is_identity(pairs[i + run - 1][1])
        ):
            run += 1
        exp = sign * run
        parts.append(letter if exp == 1 else f"{letter}^{exp}")
        last_elem = pairs[i + run - 1][1]
        if not oracle.is_identity(last_elem):
            parts.append(oracle.format_element(last_elem))
        i += run
    if not parts:
        return "1"
    return " ".join(parts)
