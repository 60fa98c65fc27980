import math

import numpy as np
import pytest

from sol3.errors import QuadratureError
from sol3.quadrature import adaptive_simpson, gauss_legendre


@pytest.mark.parametrize("fun, vfun, a, b, exact", [
    (math.exp, np.exp, 0.0, 1.0, math.e - 1),
    (math.sin, np.sin, 0.0, math.pi, 2.0),
    (lambda x: 1 / (1 + x * x), lambda x: 1 / (1 + x * x), -3.0, 3.0, 2 * math.atan(3.0)),
])
def test_both_rules_on_known_integrals(fun, vfun, a, b, exact):
    assert adaptive_simpson(fun, a, b, tol=1e-13) == pytest.approx(exact, abs=1e-12)
    assert gauss_legendre(vfun, a, b) == pytest.approx(exact, abs=1e-13)


def test_orientation_and_empty_interval():
    assert adaptive_simpson(math.cos, 1.0, 0.0) == pytest.approx(-math.sin(1.0), abs=1e-12)
    assert adaptive_simpson(math.cos, 2.0, 2.0) == 0.0
    assert gauss_legendre(np.cos, 2.0, 2.0) == 0.0


def test_simpson_exact_on_cubics():
    assert adaptive_simpson(lambda x: x**3 - 2 * x, -1.0, 2.0) == pytest.approx(3.75 - 3.0, abs=1e-14)


def test_simpson_gives_up_at_depth():
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda x: math.sqrt(abs(x - 0.3)), 0.0, 1.0, tol=1e-15, max_depth=3)
