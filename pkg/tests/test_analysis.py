import random
from fractions import Fraction

import pytest

from hnnkit import (
    DomainError,
    EMPIRICAL,
    EscapeExhaustionError,
    HypothesisViolationError,
    ICC,
    NOT_ICC,
    VerificationError,
    base_word,
    conjugate,
    escape_exponent,
    folner_chain_ascending,
    folner_chain_bs,
    icc_decide_bs,
    icc_decide_zd,
    icc_probe_orbit,
    length,
    make_bs,
    mul,
    normalize,
    orbit_sample,
    parse_word,
    stable_word,
    symdiff_ratio,
    thm1_hypothesis_bs,
)
from hnnkit.analysis import generator_letter_words, verify_finite_class


# --- ICC decisions --------------------------------------------------------


def test_icc_bs_examples():
    assert icc_decide_bs(2, 3).status == ICC
    v = icc_decide_bs(2, 2)
    assert v.status == NOT_ICC and v.witness_strings() == ["b^2"]
    v = icc_decide_bs(3, -3)
    assert v.status == NOT_ICC and v.witness_strings() == ["b^-3", "b^3"]


def test_icc_bs_rejects_zero():
    with pytest.raises(ValueError):
        icc_decide_bs(0, 2)


def test_icc_bs_grid_matches_predicate():
    values = [x for x in range(-6, 7) if x != 0]
    for m in values:
        for n in values:
            verdict = icc_decide_bs(m, n)
            assert (verdict.status == ICC) == (abs(m) != abs(n)), (m, n)


def test_witness_closed_under_generators():
    for m, n in [(2, 2), (3, -3), (5, 5), (4, -4)]:
        v = icc_decide_bs(m, n)
        oracle = make_bs(m, n)
        keys = {normalize(w).key() for w in v.witness}
        for gen in generator_letter_words(oracle):
            for w in v.witness:
                assert normalize(conjugate(gen, w)).key() in keys
        assert normalize(base_word(oracle, 0)).key() not in keys


def test_verify_finite_class_rejects_bad_sets(bs23):
    with pytest.raises(VerificationError):
        verify_finite_class(bs23, ())
    with pytest.raises(VerificationError):
        verify_finite_class(bs23, (base_word(bs23, 0),))
    with pytest.raises(VerificationError):
        verify_finite_class(bs23, (base_word(bs23, 3),))  # not closed: a^-1 b^3 a = b^2


def test_icc_zd_examples():
    v = icc_decide_zd([[0, -1], [1, 1]])
    assert v.status == NOT_ICC
    assert 1 <= len(v.witness) <= 6
    assert icc_decide_zd([[2, 1], [1, 1]]).status == ICC
    v = icc_decide_zd([[1]])
    assert v.status == NOT_ICC and len(v.witness) == 1


def test_icc_zd_rejects_singular():
    with pytest.raises(ValueError):
        icc_decide_zd([[1, 1], [1, 1]])


# --- theorem-1 hypothesis ---------------------------------------------------


def test_thm1_examples():
    assert thm1_hypothesis_bs(2, 3, 10)
    assert not thm1_hypothesis_bs(2, -2, 2)  # j = 2 fixes b^2
    assert not thm1_hypothesis_bs(2, 2, 1)


def test_thm1_grid_iff_magnitudes_differ():
    values = [x for x in range(-6, 7) if x != 0]
    for m in values:
        for n in values:
            assert thm1_hypothesis_bs(m, n, 12) == (abs(m) != abs(n)), (m, n)


# --- orbit sampling ---------------------------------------------------------


def test_orbit_central_element(bs22):
    for radius in (0, 2, 4):
        orbit = orbit_sample(base_word(bs22, 2), radius)
        assert [str(nf) for nf in orbit] == ["b^2"]


def test_orbit_two_element_class(bs2m2):
    orbit = orbit_sample(base_word(bs2m2, 2), 1)
    assert [str(nf) for nf in orbit] == ["b^-2", "b^2"]


def test_orbit_icc_sample(bs23):
    orbit = orbit_sample(base_word(bs23, 3), 4)
    strings = {str(nf) for nf in orbit}
    assert len(orbit) >= 3
    assert {"b^3", "b^2"} <= strings
    assert str(normalize(parse_word(bs23, "a^-1 b^2 a"))) in strings


def test_orbit_growth_strict_for_icc(bs23):
    for text in ["b", "b^3", "a"]:
        x = parse_word(bs23, text)
        sizes = [len(orbit_sample(x, r)) for r in (2, 4, 6)]
        assert sizes[0] < sizes[1] < sizes[2], (text, sizes)
        for small, big in [(0, 1), (1, 2), (3, 4), (5, 6)]:
            assert len(orbit_sample(x, small)) <= len(orbit_sample(x, big))


def test_orbit_zd_recovers_witness_class():
    verdict = icc_decide_zd([[0, -1], [1, 1]])
    witness_strings = set(verdict.witness_strings())
    lam = verdict.witness[0]
    orbit = orbit_sample(lam, 3)
    assert {str(nf) for nf in orbit} == witness_strings


def test_icc_probe_is_empirical(bs23):
    verdict = icc_probe_orbit(base_word(bs23, 1), radii=(1, 2, 3))
    assert verdict.status == EMPIRICAL
    assert verdict.witness is None
    radii = [r for r, _ in verdict.evidence]
    sizes = [s for _, s in verdict.evidence]
    assert radii == [1, 2, 3]
    assert sizes == sorted(sizes)


# --- Folner chains -----------------------------------------------------------


def test_folner_bs_exponents():
    assert folner_chain_bs(2, 3, 2).elements == (54, 36, 24)
    assert folner_chain_bs(2, 3, 1).elements == (18, 12)
    assert folner_chain_bs(2, 2, 2).elements == (16, 16, 16)


def test_folner_bs_big_integers():
    chain = folner_chain_bs(2, 3, 50)
    assert chain.k == 50
    assert chain.elements[0] == 2 * 3**51
    assert chain.elements[-1] == 2**51 * 3


def test_folner_chain_invariants(bs23):
    chain = folner_chain_bs(2, 3, 6)
    ora = chain.oracle
    for prev, cur in zip(chain.elements, chain.elements[1:]):
        assert ora.phi(prev) == cur
    for h in chain.elements:
        assert ora.in_H(h) and ora.in_K(h) and ora.is_central(h) and h != 0
    assert len(set(chain.elements)) == len(chain.elements)


def test_folner_ascending_bs():
    chain = folner_chain_ascending(make_bs(2, 1), 1, 2)
    assert chain.elements == (1, 2, 4)


def test_folner_ascending_zd(zd_fib):
    chain = folner_chain_ascending(zd_fib, (1, 0), 2)
    assert chain.elements == ((1, 0), (2, 1), (5, 3))


def test_folner_ascending_rejects_identity(zd_fib):
    with pytest.raises(ValueError):
        folner_chain_ascending(zd_fib, (0, 0), 3)


def test_folner_ascending_guards_non_ascending(bs23):
    # H = 3Z is proper, iterates of b leave it immediately
    with pytest.raises(DomainError):
        folner_chain_ascending(bs23, 1, 2)


# --- symmetric difference ratios ---------------------------------------------


def test_symdiff_frozen_values(bs23):
    chain = folner_chain_bs(2, 3, 10)
    assert symdiff_ratio(chain, base_word(bs23, 1)) == 0
    assert symdiff_ratio(chain, stable_word(bs23)) == Fraction(2, 9)
    assert symdiff_ratio(chain, stable_word(bs23, 1, 2)) == Fraction(4, 9)


def test_symdiff_bound_random_words(bs23):
    chain = folner_chain_bs(2, 3, 10)
    rng = random.Random(42)
    letters = ["a", "a^-1", "b", "b^-1"]
    for _ in range(100):
        text = " ".join(rng.choice(letters) for _ in range(rng.randint(0, 5)))
        g = parse_word(bs23, text)
        assert symdiff_ratio(chain, g) <= Fraction(2 * length(g), 9)


def test_symdiff_bound_other_windows(bs23):
    for k in (5, 20):
        chain = folner_chain_bs(2, 3, k)
        rng = random.Random(k)
        letters = ["a", "a^-1", "b", "b^-1"]
        for _ in range(30):
            text = " ".join(rng.choice(letters) for _ in range(rng.randint(0, 5)))
            g = parse_word(bs23, text)
            assert symdiff_ratio(chain, g) <= Fraction(2 * length(g), k - 1)


def test_symdiff_requires_window(bs23):
    with pytest.raises(ValueError):
        symdiff_ratio(folner_chain_bs(2, 3, 1), base_word(bs23, 1))


# --- escape exponents ---------------------------------------------------------


def test_escape_frozen_values(bs23):
    assert escape_exponent([base_word(bs23, 1)], 10) == 1
    assert escape_exponent([base_word(bs23, 3)], 10) == 2


def test_escape_accepts_bs_2_4():
    oracle = make_bs(2, 4)  # 4 does not divide 2, premise holds
    assert escape_exponent([base_word(oracle, 1)], 10) >= 1


def test_escape_rejects_divisible():
    oracle = make_bs(4, 2)
    with pytest.raises(HypothesisViolationError):
        escape_exponent([base_word(oracle, 2)], 10)


def test_escape_persistence(bs23):
    for exponent in (1, 3, 9):
        words = [base_word(bs23, exponent)]
        n0 = escape_exponent(words, 12)
        a = stable_word(bs23)
        for n in range(n0, n0 + 6):
            for w in words:
                moved = mul(mul(stable_word(bs23, -1, n), w), stable_word(bs23, 1, n))
                assert moved.tail, (exponent, n)


def test_escape_mixed_set(bs23):
    n0 = escape_exponent([base_word(bs23, 1), base_word(bs23, 3), base_word(bs23, 9)], 12)
    assert n0 == 3  # b^9 -> b^6 -> b^4 needs three steps


def test_escape_exhaustion(bs23):
    with pytest.raises(EscapeExhaustionError) as exc:
        escape_exponent([base_word(bs23, 3**40)], 5)
    assert exc.value.trace


def test_escape_rejects_trivial(bs23):
    with pytest.raises(ValueError):
        escape_exponent([base_word(bs23, 0)], 5)
