"""Abstract higher-spin structure constants and central charges.

Generators of spin s = i + 2 are indexed by i >= 0.  The quantum algebra
closes as

    [V^i_m, V^j_n] = sum_{l>0} g^{ij}_{2l}(m, n) V^{i+j-2l}_{m+n}
                     + c_i(m) delta^{ij} delta_{m+n,0}

with

    c_i(m) = m (m^2 - 1)(m^2 - 4) ... (m^2 - (i+1)^2) c_i
    c_i    = 2^{2i-3} i! (i+1)! / ((2i+1)!! (2i+3)!!)
    g^{ij}_{2l}(m, n) = phi^{ij}_l N^{ij}_l(m, n) / (2 (l + 1))

The printed N and phi formulas contain garbled factors, so both a literal
transcription and the standard corrected reading are computed side by side;
which one is used is recorded, never silently chosen.  All of this is
standalone: the realized algebra is centerless and these values are never
compared against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PoleInPochhammer

N_READINGS = ("literal", "alt")
PHI_READINGS = ("literal", "alt")
PHI_SERIES_CAP = 64


def falling(x: float, n: int) -> float:
    """Falling factorial [x]_n = x (x-1) ... (x-n+1); [x]_0 = 1."""
    out = 1.0
    for k in range(n):
        out *= x - k
    return out


def rising(x: float, n: int) -> float:
    """Pochhammer symbol (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1."""
    out = 1.0
    for k in range(n):
        out *= x + k
    return out


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def central_charge(i: int) -> Fraction:
    """Exact rational c_i = 2^{2i-3} i! (i+1)! / ((2i+1)!! (2i+3)!!)."""
    if i < 0:
        raise ValueError(f"spin index must be >= 0, got {i}")
    num = Fraction(2) ** (2 * i - 3) * math.factorial(i) * math.factorial(i + 1)
    den = double_factorial(2 * i + 1) * double_factorial(2 * i + 3)
    return num / den


def central_term(i: int, m: int) -> Fraction:
    """c_i(m) = m (m^2-1)(m^2-4)...(m^2-(i+1)^2) c_i; zero for |m| <= i+1."""
    acc = Fraction(m)
    for k in range(1, i + 2):
        acc *= m * m - k * k
    return acc * central_charge(i)


def mode_factor(i: int, j: int, l: int, m: int, n: int, reading: str = "literal") -> float:
    """Mode-dependent factor N^{ij}_l(m, n).

    reading 'literal' keeps the doubled [i+1+m] factor exactly as printed;
    'alt' uses the mixed-sign pattern [i+1+m] [i+1-m] [j+1+n] [j+1-n], the
    standard form (and the one whose l = 0 value reproduces the classical
    bracket coefficient m (j+1) - n (i+1)).
    """
    if reading not in N_READINGS:
        raise ValueError(f"unknown N reading {reading!r}")
    acc = 0.0
    for k in range(l + 2):
        second = falling(i + 1 + m, k) if reading == "literal" else falling(i + 1 - m, k)
        acc += (
            (-1) ** k
            * math.comb(l + 1, k)
            * falling(i + 1 + m, l + 1 - k)
            * second
            * falling(j + 1 + n, k)
            * falling(j + 1 - n, l + 1 - k)
        )
    return acc


def phi_factor(i: int, j: int, l: int, reading: str = "literal", cap: int = PHI_SERIES_CAP) -> float:
    """Hypergeometric-type factor phi^{ij}_l.

    reading 'literal' is the cleanest transcription of the printed series,

        sum_k [ (-1/2)_k (3/2)_k (-l/2 - 1/2)_k (-l/2)_k ]
            / [ k! (-i - 1/2)_k (-j - 1/2)_k (i + j - l + 5/2)_k ],

    'alt' shifts the garbled half-integer offsets the other way
    ((-l/2 + 1/2)_k upstairs, (-i + 1/2)_k and (-j + 1/2)_k downstairs).
    The series truncates once a numerator Pochhammer hits zero; a zero
    denominator factor before that raises PoleInPochhammer.
    """
    if reading not in PHI_READINGS:
        raise ValueError(f"unknown phi reading {reading!r}")
    if reading == "literal":
        num_bases = (-0.5, 1.5, -l / 2 - 0.5, -l / 2)
        den_bases = (-i - 0.5, -j - 0.5, i + j - l + 2.5)
    else:
        num_bases = (-0.5, 1.5, -l / 2 + 0.5, -l / 2)
        den_bases = (-i + 0.5, -j + 0.5, i + j - l + 2.5)
    total = 0.0
    for k in range(cap + 1):
        num = 1.0
        for b in num_bases:
            num *= rising(b, k)
        if num == 0.0:
            break
        den = math.factorial(k)
        for b in den_bases:
            piece = rising(b, k)
            if piece == 0.0:
                raise PoleInPochhammer(
                    f"denominator Pochhammer ({b})_{k} vanished in phi({i},{j},{l})"
                )
            den *= piece
        total += num / den
    return total


@dataclass(frozen=True)
class WInfConstants:
    """One structure-constant evaluation, with dual readings recorded."""

    i: int
    j: int
    l: int
    m: int
    n: int
    c_i: Fraction
    c_i_m: Fraction
    value_N: float
    value_phi: float
    value_g: float
    n_reading: str
    phi_reading: str


def winf_structure(
    i: int,
    j: int,
    l: int,
    m: int,
    n: int,
    n_reading: str = "literal",
    phi_reading: str = "literal",
) -> WInfConstants:
    """Evaluate c_i, c_i(m), N^{ij}_l(m,n), phi^{ij}_l and g^{ij}_{2l}(m,n)."""
    if min(i, j, l) < 0:
        raise ValueError("indices i, j, l must be non-negative")
    value_n = mode_factor(i, j, l, m, n, n_reading)
    value_phi = phi_factor(i, j, l, phi_reading)
    value_g = value_phi * value_n / (2.0 * (l + 1))
    return WInfConstants(
        i=i,
        j=j,
        l=l,
        m=m,
        n=n,
        c_i=central_charge(i),
        c_i_m=central_term(i, m),
        value_N=value_n,
        value_phi=value_phi,
        value_g=value_g,
        n_reading=n_reading,
        phi_reading=phi_reading,
    )


def classical_coefficient(s: int, m: int, t: int, n: int) -> int:
    """Leading bracket coefficient (t-1) m - (s-1) n of the spin-s/t algebra."""
    return (t - 1) * m - (s - 1) * n
