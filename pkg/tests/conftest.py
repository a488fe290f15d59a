import numpy as np
import pytest

from goa import constructions as cx
from goa import designs as dz
from goa import gf
from goa.cli import main as cli_main


@pytest.fixture(scope="session")
def catalog_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("catalog")
    assert cli_main(["catalog", "--out", str(out)]) == 0
    return out


@pytest.fixture(scope="session")
def thm1_3():
    return cx.construct_thm1(3)


@pytest.fixture(scope="session")
def ebert3():
    return cx.construct_ebert(gf.ext_field(3, 4, (2, 1, 0, 0, 1)))


@pytest.fixture(scope="session")
def ebert2():
    return cx.construct_ebert(gf.ext_field(2, 4, gf.find_primitive_polys(2, 4)[0]))


@pytest.fixture(scope="session")
def oa_81_10_3_3(ebert3):
    """Strength-3 base array: the first Ebert cap of GF(3^4)."""
    return dz.subset_design(ebert3.design, range(10))


@pytest.fixture(scope="session")
def oa_27_4_3_3(thm1_3):
    """Strength-3 base array: the oval group of the 27-run construction."""
    return dz.subset_design(thm1_3.design, range(4))


@pytest.fixture(scope="session")
def eq21_generator():
    return dz.GeneratorMatrix(2, [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])


def oracle_wlp(gen: dz.GeneratorMatrix) -> tuple[int, ...]:
    """Brute-force wordlength pattern: try every nonzero coefficient vector.

    Independent of the null-space path used by the library; only feasible
    for s^m up to a few thousand.
    """
    import itertools

    field = gf.level_field(gen.s)
    m = gen.m
    counts = [0] * (m + 1)
    for coeffs in itertools.product(range(gen.s), repeat=m):
        if not any(coeffs):
            continue
        acc = np.zeros(gen.k, dtype=np.int64)
        for j, c in enumerate(coeffs):
            acc = field.add(acc, field.mul(c, gen.matrix[:, j]))
        if not acc.any():
            counts[sum(1 for c in coeffs if c)] += 1
    pattern = []
    for j in range(1, m + 1):
        q, r = divmod(counts[j], gen.s - 1)
        assert r == 0
        pattern.append(q)
    return tuple(pattern)
