import pytest
from hypothesis import strategies as st

from hnnkit import HnnWord, make_bs, make_zd

FUZZ_GROUPS = [(2, 3), (3, 2), (2, -2), (2, 2)]


@pytest.fixture(scope="session")
def bs23():
    return make_bs(2, 3)


@pytest.fixture(scope="session")
def bs22():
    return make_bs(2, 2)


@pytest.fixture(scope="session")
def bs2m2():
    return make_bs(2, -2)


@pytest.fixture(scope="session")
def zd_fib():
    return make_zd([[2, 1], [1, 1]])


def bs_word_strategy(oracle, max_syllables=4, max_exp=9):
    pair = st.tuples(st.sampled_from([1, -1]), st.integers(-max_exp, max_exp))
    return st.builds(
        lambda head, tail: HnnWord(oracle, head, tuple(tail)),
        st.integers(-max_exp, max_exp),
        st.lists(pair, max_size=max_syllables),
    )


def bs_oracles_strategy():
    return st.sampled_from([make_bs(m, n) for m, n in FUZZ_GROUPS])


@st.composite
def oracle_and_words(draw, count=1, max_syllables=4):
    oracle = draw(bs_oracles_strategy())
    words = tuple(draw(bs_word_strategy(oracle, max_syllables)) for _ in range(count))
    return (oracle, *words)
