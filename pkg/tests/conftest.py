import pytest

from slatdec.core import Semilattice, chain, direct_product
from slatdec.io import parse_slat

# N5 as 0 < a < 1 and 0 < b < c < 1, with indices 0, a=1, b=2, c=3, 1=4
N5_TEXT = """\
n 5
elements 0 a b c 1
cover 0 a
cover 0 b
cover b c
cover a 1
cover c 1
"""

B2_TEXT = """\
n 4
elements 0 a b 1
cover 0 a
cover 0 b
cover a 1
cover b 1
"""

# a, b atoms with a v b = 1 and no bottom
V_TEXT = """\
n 3
elements a b 1
cover a 1
cover b 1
"""


@pytest.fixture
def N5() -> Semilattice:
    return parse_slat(N5_TEXT)


@pytest.fixture
def B2() -> Semilattice:
    return parse_slat(B2_TEXT)


@pytest.fixture
def V() -> Semilattice:
    return parse_slat(V_TEXT)


@pytest.fixture
def C2() -> Semilattice:
    return chain(2)


@pytest.fixture
def C3() -> Semilattice:
    return chain(3)


@pytest.fixture
def cube() -> Semilattice:
    C2 = chain(2)
    return direct_product(direct_product(C2, C2).semilattice, C2).semilattice
