from fractions import Fraction

import pytest
from hypothesis import strategies as st

from grossturing import corpus
from grossturing.grossnum import GrossExponent, GrossNumber, Monomial

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_fracs = small_fracs.filter(lambda q: q != 0)
bases = st.sampled_from([Fraction(1), Fraction(1), Fraction(2), Fraction(3), Fraction(3, 2)])
rs = st.sampled_from([Fraction(0), Fraction(0), Fraction(0), Fraction(1), Fraction(1, 2)])
fs = st.builds(Fraction, st.integers(-3, 3), st.sampled_from([1, 1, 2]))

monomials = st.builds(Monomial, nonzero_fracs, bases, st.builds(GrossExponent, rs, fs))
gross_numbers = st.lists(monomials, max_size=3).map(GrossNumber)
nonzero_gross = gross_numbers.filter(lambda x: not x.is_zero())
positive_fracs = st.builds(Fraction, st.integers(1, 50), st.integers(1, 50))


@pytest.fixture(scope="session")
def machines():
    return {name: corpus.load(name) for name in corpus.MULTI_TAPE + corpus.STRESS + corpus.SINGLE_TAPE}


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
