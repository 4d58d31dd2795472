"""Quick check that the d7py extension loads and agrees with known values."""

import math
from fractions import Fraction

import d7py


def main():
    lat = d7py.Lattice(max_index=12)

    u1 = lat.solution(1).u
    assert u1.numerator() == [(0, "-1/6", "0"), (2, "1/2", "0")], u1.numerator()
    assert u1.denominator() == [(1, "1", "0")]
    z = 1.7 + 0.3j
    assert abs(u1(z) - (z / 2 - 1 / (6 * z))) < 1e-14

    s5 = lat.solution(5)
    assert all(ok for _, ok in s5.validate())
    assert not all(ok for _, ok in s5.perturbed("P").validate())
    assert s5.step_up().step_down().u == s5.u
    weight, _ = s5.component("Q")
    assert weight == 1

    r = lat.ohyama(3)
    assert [(k, Fraction(re)) for k, re, _ in r[2]] == [(1, Fraction(-1, 6)), (3, Fraction(1, 2))]
    zeta, scaled = lat.ohyama_roots(2)
    assert abs(zeta[2].real - 1 / math.sqrt(3)) < 1e-15 and abs(scaled[2].real - 1 / math.sqrt(6)) < 1e-15

    yc = d7py.critical_y()
    assert abs(yc - 0.29177) < 1e-4
    s, d, _ = d7py.spectral(1.0)
    assert abs(s * (s - 1) ** 2 + 1) < 1e-12 and abs(2 * d + s - 1) < 1e-14
    assert abs(d7py.l_of_s(0.5)) < 1e-8
    u = d7py.equilibrium_u(1.2j)
    assert abs(8 * u**3 + 2 * u - (1.2j) ** 3) < 1e-12

    rows = lat.compare([4, 8], y=1.0)
    assert rows[1][3] < rows[0][3]

    try:
        lat.solution(13)
    except OverflowError:
        pass
    else:
        raise AssertionError("budget not enforced")

    segments, corners = d7py.boundary(64, 120)
    assert len(corners) == 4 and all(abs(abs(complex(*c)) - d7py.CORNER_RADIUS) < 1e-14 for c in corners)
    assert {k for k, _ in segments} <= set(d7py.SEGMENT_KINDS)

    print(f"d7py {d7py.__version__}: smoke test passed (y_c = {yc:.10f})")


if __name__ == "__main__":
    main()
