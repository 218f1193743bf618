"""Independent high-precision reference values frozen into the C++ tests.

Run with `python3 tests/oracles/generate.py`; it prints the numbers that the
test sources embed. Nothing here shares code with the library: the Weierstrass
functions come from their Laurent series with argument halving and the
duplication formula, periods from direct quadrature, roots from mpmath.
"""
import mpmath as mp

mp.mp.dps = 40


def laurent_coeffs(g2, g3, n=40):
    c = {2: g2 / 20, 3: g3 / 28}
    for k in range(4, n):
        c[k] = 3 * sum(c[m] * c[k - m] for m in range(2, k - 1)) / ((2 * k + 1) * (k - 3))
    return c


def wp_series(g2, g3, z):
    c = laurent_coeffs(g2, g3)
    p = 1 / z**2 + sum(c[k] * z ** (2 * k - 2) for k in c)
    dp = -2 / z**3 + sum((2 * k - 2) * c[k] * z ** (2 * k - 3) for k in c)
    zeta = 1 / z - sum(c[k] * z ** (2 * k - 1) / (2 * k - 1) for k in c)
    logsig = mp.log(z) - sum(c[k] * z ** (2 * k) / ((2 * k - 1) * (2 * k)) for k in c)
    return p, dp, zeta, logsig


def wp_dup(g2, g3, z, halvings=4):
    """P and P' at z from the series at z / 2^h and h duplication steps."""
    p, dp, _, _ = wp_series(g2, g3, z / 2**halvings)
    for _ in range(halvings):
        d2p = 6 * p**2 - g2 / 2
        d3p = 12 * p * dp
        p2 = -2 * p + (d2p / (2 * dp)) ** 2
        # derivative of the duplication formula with respect to the doubled argument
        dp2 = (-2 * dp + 2 * (d2p / (2 * dp)) * (d3p * dp - d2p * d2p) / (2 * dp**2)) / 2
        p, dp = p2, dp2
    return p, dp


def omega1(g2, g3):
    e = sorted([r.real for r in mp.polyroots([4, 0, -g2, -g3], maxsteps=200, extraprec=200)], reverse=True)
    return mp.quad(lambda x: 1 / mp.sqrt(4 * x**3 - g2 * x - g3), [e[0], e[0] + 1, mp.inf]), e


def shorthand(p, c):
    q = p / (p - 1)
    b1 = (p + q - 1) / 3
    b2 = (p * q - p - q) / 3
    b3 = c**2 / (4 * (p + q)) - p * q
    g2 = mp.mpf(3) / 4 * (b1**2 - b2)
    g3 = (3 * b1 * b2 - 2 * b1**3 - b3) / 16
    return q, (b1, b2, b3), g2, g3


def k2(p, c):
    _, _, g2, g3 = shorthand(mp.mpf(p), mp.mpf(c))
    e = sorted([r.real for r in mp.polyroots([4, 0, -g2, -g3], maxsteps=200, extraprec=200)], reverse=True)
    return (e[1] - e[2]) / (e[0] - e[2])


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


if __name__ == "__main__":
    g2, g3 = mp.mpf(4), mp.mpf(0)
    w1, e = omega1(g2, g3)
    show("ctx(4,0) omega1", w1)
    p, dp, zeta, logsig = wp_series(g2, g3, mp.mpf("0.7"))
    show("ctx(4,0) wp(0.7)", p)
    show("ctx(4,0) wp'(0.7)", dp)
    show("ctx(4,0) zeta(0.7)", zeta)
    show("ctx(4,0) sigma(0.7)", mp.exp(logsig))
    pd, dpd = wp_dup(g2, g3, mp.mpf("0.7"))
    show("ctx(4,0) wp(0.7) via duplication", pd)
    z = mp.mpc("0.6", "0.45")
    p, dp, zeta, logsig = wp_series(g2, g3, z)
    print("ctx(4,0) at 0.6+0.45i:", mp.nstr(p, 20), mp.nstr(dp, 20), mp.nstr(zeta, 20), mp.nstr(mp.exp(logsig), 20))
    a = mp.findroot(lambda x: wp_series(g2, g3, x)[0] - 2, mp.mpf("0.8"))
    show("ctx(4,0) wp^-1(2), wp' < 0", a)

    q, b, g2, g3 = shorthand(mp.mpf(3), mp.mpf(1))
    print("p=3 c=1: b =", [mp.nstr(x, 20) for x in b], "g2 =", mp.nstr(g2, 20), "g3 =", mp.nstr(g3, 20))
    w1, e = omega1(g2, g3)
    print("p=3 c=1: e =", [mp.nstr(x, 20) for x in e], "omega1 =", mp.nstr(w1, 20))
    show("p=3 c=1: wp(a1) = (b1 - p)/4", (b[0] - 3) / 4)

    q, b, g2, g3 = shorthand(mp.mpf(3), mp.mpf(-1))
    w1, e = omega1(g2, g3)
    print("p=3 c=-1: g2 =", mp.nstr(g2, 20), "g3 =", mp.nstr(g3, 20), "omega1 =", mp.nstr(w1, 20))
    show("p=3 c=-1: wp(0.9) by duplication", wp_dup(g2, g3, mp.mpf("0.9"))[0])

    target = k2(3, 1)
    show("k2(3, 1)", target)
    c = mp.findroot(lambda c: k2(2, c) - target, mp.mpf(4.4))
    show("modulus match (3, 1, 2): c", c)
    show("modulus match (3, 1, 2): k2", k2(2, c))

    x = y = mp.mpf(1)
    L = (4 * x + 3) * (2 * x + 3) ** 2 / (8 * x ** mp.mpf(4.5) * y * (1 + x) ** mp.mpf(1.5))
    show("case1 L(1,1)", L)
    show("case1 M(1,1) 75/(4 sqrt2)", 75 / (4 * mp.sqrt(2)))
    show("case1 N(1,1) 75/(2 sqrt2)", 75 / (2 * mp.sqrt(2)))
    M, N = 75 / (4 * mp.sqrt(2)), 75 / (2 * mp.sqrt(2))
    d = abs(L * N - M**2) ** mp.mpf(0.25)
    E, F, G = L / d, M / d, N / d
    lam = (E + G + 2 * mp.sqrt(E * G - F**2)) / 4
    mu = (E - G + 2j * F) / (4 * lam)
    print("case1 beltrami mu(1,1) =", mp.nstr(mu, 20))
    E, F, G = mp.mpf(2), 0, mp.mpf(1)
    d = mp.mpf(2) ** mp.mpf(0.25)
    E, G = E / d, G / d
    lam = (E + G + 2 * mp.sqrt(E * G)) / 4
    show("beltrami mu(2,0,1)", (E - G) / (4 * lam))

    for p in (2, 3, 5):
        p = mp.mpf(p)
        print(f"p={mp.nstr(p, 3)}: coth |U| =", mp.nstr(mp.sqrt(3) / 72 * ((p * p - p + 1) / (p - 1)) ** 1.5, 20))
    p, c = mp.mpf(3), mp.mpf(-1)
    u2 = c**2 * (p - 1) / (32 * p) ** 2 + (p - 2) ** 2 * (2 * p - 1) ** 2 * (p + 1) ** 2 / (4 * (12 * (p - 1)) ** 3)
    show("|U|(3, -1)", mp.sqrt(u2))
