import pytest

from fpw.bs import ST, bs_presentation, BS23
from fpw.words import Alphabet, parse_word


@pytest.fixture
def st():
    return ST


@pytest.fixture
def bs23_pres():
    return bs_presentation(BS23)


def w(text, alphabet=ST):
    """Shorthand word constructor used throughout the suite."""
    return parse_word(alphabet, text)


def alpha(*names):
    return Alphabet.of(*names)
