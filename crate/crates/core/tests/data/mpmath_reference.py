"""Reference values frozen into the Rust test suites.

Run with `python3 mpmath_reference.py > mpmath_reference.txt`; the Rust
test suites parse that file. Working precision is 40
digits so the printed 20 significant digits are exact.
"""
from mpmath import (mp, mpf, hyp2f1, besselj, besselk, loggamma, gamma, quad,
                    quadosc, besseljzero, cosh, sinh, tanh, sin, asin, pi, exp,
                    inf, sqrt)

mp.dps = 40


def fmt(v):
    return mp.nstr(v, 20)


def fwd(a, c, n, x):
    return hyp2f1(a + 1j * n / 2, a - 1j * n / 2, c, -x * x).real


def inv(a, c, z):
    return hyp2f1(c - a + mpf(1) / 2, c - a + 1, c, z)


print("# forward kernel F_n(x)")
for a, c, n, x in [(0.75, 1.2, 2, 0.5), (0.75, 1.2, 1, 1), (0.75, 1.2, 1, 3),
                   (0.75, 1.2, 2, 10), (0.75, 1.2, 3, 50), (0.75, 1.2, 0.5, 5),
                   (0.75, 1.2, 0, 2.5), (0.6, 1.0, 2, 2), (0.9, 1.6, 3, 0.7),
                   (0.75, 1.2, 1, 1e3), (0.75, 1.2, 2, 1e6), (0.75, 1.2, 8, 0.6),
                   (0.4, 0.9, 4, 2.9), (0.75, 1.2, 1e-4, 4)]:
    a, c, x = mpf(a), mpf(c), mpf(x)
    print(f"({a}, {c}, {n}, {x}) => {fmt(fwd(a, c, n, x))}")

print("# inverse kernel G(z)")
for a, c, z in [(0.75, 1.2, -0.25), (0.75, 1.2, -1), (0.75, 1.2, -100),
                (0.75, 1.2, -1e6), (0.6, 1.0, -3), (0.9, 1.6, -20),
                (0.4, 0.9, -50), (0.5, 1.0, -40), (1.0, 1.8, -15)]:
    a, c, z = mpf(a), mpf(c), mpf(z)
    print(f"({a}, {c}, {z}) => {fmt(inv(a, c, z))}")

print("# bessel J")
for nu in [-0.5, -0.3, 0, 0.2, 0.6, 1.5, 3.7]:
    for x in [1e-3, 0.5, 1.5, 2, 7.3, 15, 30, 100, 1000]:
        print(f"({nu}, {x}) => {fmt(besselj(nu, x))}")

print("# bessel K_{in}")
for n in [0, 0.5, 1, 2, 3, 4]:
    for x in [0.01, 0.5, 1, 2, 5, 20]:
        print(f"({n}, {x}) => {fmt(besselk(1j * n, x).real)}")

print("# log gamma")
for x in [1e-3, 0.1, 0.5, 1.5, 2.5, 7.25, 23.5, 49.9]:
    print(f"{x} => {fmt(loggamma(x))}")

print("# |Gamma(a + i n/2)|^2")
for a, n in [(0.75, 1), (0.75, 8), (0.6, 3), (0.9, 40), (1.0, 2)]:
    print(f"({a}, {n}) => {fmt(abs(gamma(mpf(a) + 1j * mpf(n) / 2)) ** 2)}")

a, c = mpf('0.75'), mpf('1.2')
print("# Phi_n(x)")
for n, x in [(1, 0), (1, 1), (2, 0.5), (3, 2)]:
    x = mpf(x)
    v = 2 * quad(lambda u: inv(a, c, -x * x / cosh(u) ** 2) * tanh(u) * sin(n * u)
                 * cosh(u) ** (2 * (a - c)), [0, pi / 2, pi])
    print(f"({n}, {x}) => {fmt(v)}")


def ramp(u):
    t = 2 / pi * asin(sin(u))
    return max(-1, min(1, 2 * t))


print("# ramp profile: int_{-pi}^{pi} psi(u) sin(nu) du")
for n in [1, 2, 3]:
    pts = [-pi, -3 * pi / 4, -pi / 4, 0, pi / 4, 3 * pi / 4, pi]
    print(f"{n} => {fmt(quad(lambda u: ramp(u) * sin(n * u), pts))}")

print("# Hankel-type integral int_0^inf y^c J_{c-1}(xy) G(y, u) dy")
for u, x in [(0.5, 1), (0, 1), (0.5, 3), (1, 0.5)]:
    x = mpf(x)
    f = lambda y: y ** c * besselj(c - 1, x * y) * inv(a, c, -y * y / cosh(u) ** 2)
    v = quadosc(f, [0, inf], zeros=lambda m: besseljzero(c - 1, m) / x)
    print(f"({u}, {x}) => {fmt(v)}")
