#!/usr/bin/env python3
"""Independent high-precision reference values for the test suite.

Run once; the printed constants are frozen in tests/oracle_values.hpp.
Uses exact rational arithmetic and mpmath at 60 digits, sharing no code with
the C++ library.
"""

from fractions import Fraction
import json

import mpmath as mp

mp.mp.dps = 60


def convergents(quotients):
    p2, q2, p1, q1 = 1, 0, 0, 1
    out = []
    for a in quotients:
        p, q = a * p1 + p2, a * q1 + q2
        out.append((p, q))
        p2, q2, p1, q1 = p1, q1, p, q
    return out


def golden_tail_alpha(quotients):
    conv = convergents(quotients)
    g = (1 + mp.sqrt(5)) / 2
    (pk, qk), (pk1, qk1) = conv[-1], conv[-2] if len(conv) > 1 else (0, 1)
    return (pk * g + pk1) / (qk * g + qk1)


def star_discrepancy(points):
    y = sorted(points)
    n = len(y)
    return max(max(abs(v - mp.mpf(i) / n), abs(mp.mpf(i + 1) / n - v)) for i, v in enumerate(y))


def golden_discrepancy(nmax):
    alpha = (mp.sqrt(5) - 1) / 2
    conv = convergents([1] * (nmax + 1))
    rows = []
    for n in range(1, nmax + 1):
        p, q = conv[n - 1]
        qn1 = conv[n][1]
        delta = alpha - mp.mpf(p) / q
        gamma = (q * abs(delta) + mp.mpf(1) / qn1) / 2
        beta = (mp.mpf(1) / q - mp.sign(delta) * gamma) / 2
        pts = [mp.frac(mp.frac(k * alpha) + beta) for k in range(q)]
        rows.append({"n": n, "q": q, "Q": float(star_discrepancy(pts)),
                     "bound": float((Fraction(1, q) + Fraction(1, qn1)) / 2)})
    return rows


def schroder_quadratic(order):
    """psi(lambda xi) = f(psi(xi)) for f(z) = lambda z + z^2, psi'(0) = 1."""
    lam = mp.expj(2 * mp.pi * (mp.sqrt(5) - 1) / 2)
    c = [mp.mpc(0), mp.mpc(1)]
    for m in range(2, order + 1):
        s = sum(c[i] * c[m - i] for i in range(1, m))
        c.append(s / (lam ** m - lam))
    return c


def example2(quotients, n):
    conv = convergents(quotients)
    p, q = conv[n - 1]
    inv = mp.mpf(2) ** (-q)
    omega = mp.expj(2 * mp.pi * mp.mpf(p) / q)
    lam0 = mp.expj(2 * mp.pi * golden_tail_alpha(quotients))

    def iterate(mult):
        def g(z):
            for _ in range(q):
                z = mult * (z + z ** (q + 1)) / (1 + inv)
            return z
        return g

    g_tilde = iterate(omega)
    g = iterate(lam0)
    l_closed = ((1 + (q + 1) * inv) / (1 + inv)) ** q
    l_diff = mp.diff(g_tilde, mp.mpf(1) / 2)
    # Newton from 1/2 on g(z) = z; kept only if it is a nontrivial fixed point.
    z_out = None
    z = mp.findroot(lambda w: g(w) - w, mp.mpc(0.5, 0), solver="newton", verify=False, maxsteps=200)
    if abs(z) > 0.1 and abs(g(z) - z) < mp.mpf(10) ** -40:
        z_out = [float(z.real), float(z.imag)]
    return {"q": q, "p": p, "fixed_gap": float(abs(g_tilde(mp.mpf(1) / 2) - mp.mpf(1) / 2)),
            "l_closed": float(l_closed), "l_diff_gap": float(abs(l_diff - l_closed)),
            "z_star": z_out}


def main():
    psi = schroder_quadratic(64)
    out = {
        "golden_discrepancy": golden_discrepancy(15),
        "schroder_c2": [float(psi[2].real), float(psi[2].imag)],
        "schroder_c3": [float(psi[3].real), float(psi[3].imag)],
        "schroder_c64": [float(psi[64].real), float(psi[64].imag)],
        "schroder_c32": [float(psi[32].real), float(psi[32].imag)],
        "example2_golden": [example2([1] * 8, n) for n in (2, 3, 4, 5)],
        "example2_liouville": example2([1, 1, 1, 1, 1, 32], 5),
        "example2_small": example2([1, 1, 100], 2),
    }
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
