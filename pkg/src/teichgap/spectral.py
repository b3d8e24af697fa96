"""Spectral-gap bounds for the congruence-type groups +-Gamma_6(2k) and Gamma_2(N)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .group_words import Mat2

SELBERG = 3 / 16
TOL = 1e-9


def acosh(z: float) -> float:
    """arccosh via ln(z + sqrt(z^2 - 1)); for large z uses ln(2z) - 1/(4z^2) to avoid overflow."""
    if z < 1:
        raise ValueError("arccosh needs z >= 1")
    if z > 1e8:
        return math.log(2 * z) - 1 / (4 * z * z)
    return math.log(z + math.sqrt(z * z - 1))


ACOSH_17 = acosh(17)


def geodesic_length(m: Mat2) -> float:
    """Length 2 arccosh(|tr m| / 2) of the closed geodesic of a hyperbolic element."""
    tr = abs(m.trace)
    if tr <= 2:
        raise ValueError(f"{m} is not hyperbolic (|trace| = {tr})")
    return 2 * acosh(tr / 2)


def area_for_index(index: int) -> float:
    """Hyperbolic area of H/Gamma for a subgroup of index ``index`` in PSL(2,Z)."""
    return index * math.pi / 3


def buser_lambda(h: float) -> float:
    """Largest lambda allowed by sqrt(10 lambda + 1) <= 10 h + 1."""
    return ((10 * h + 1) ** 2 - 1) / 10


@dataclass(frozen=True)
class SpectralBound:
    k: int
    ell_c1: float
    h_bound: float
    lambda_bound: float
    gap_bound: float | None
    gap_chain: float | None
    gap_coarse: float
    complementary_series_certified: bool
    noncongruence_certified: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def bounds_for_k(k: int) -> SpectralBound:
    if k < 1:
        raise ValueError("k must be at least 1")
    ell = 2 * ACOSH_17  # length of the geodesic of x y x y, trace 34
    area = area_for_index(72)  # PGamma_6 has index 72 in PSL(2,Z)
    h = 2 * ell / (k * area)
    lam = 10 * h * h + 2 * h
    if lam < 0.25:
        root = math.sqrt(1 - 4 * lam)
        gap, chain = 1 - root, 2 * lam / root
    else:
        gap = chain = None
    return SpectralBound(
        k=k, ell_c1=ell, h_bound=h, lambda_bound=lam, gap_bound=gap, gap_chain=chain,
        gap_coarse=math.sqrt(3) / k,
        complementary_series_certified=lam < 0.25,
        noncongruence_certified=lam <= 1 / 6 + TOL and lam < SELBERG)


def lambda_closed_form(k: int) -> float:
    """The same bound written out in terms of arccosh(17) and 2k."""
    c, n = ACOSH_17, 2 * k
    return 10 * c * c / (9 * math.pi ** 2 * n * n) + 2 * c / (3 * math.pi * n)


# ------------------------------------------------------------ Gamma_2(N)

def appendix_K_tilde() -> float:
    e = math.e
    return (32 + math.sqrt(2)) / (3 * e ** 3 * (1 - e ** -4) ** 2) + (1 + 2 * math.sqrt(2)) * e


def appendix_t(n: int) -> float:
    """Distance parameter t_N = arccosh(1 + 2 (floor(N/2) - 1)^2)."""
    if n < 4:
        raise ValueError("N must be at least 4")
    return acosh(1 + 2 * (n // 2 - 1) ** 2)


def appendix_area(n: int) -> float:
    return (2 * math.pi - 2) / (2 * math.pi * n)


def appendix_predicate(n: int, with_complement: bool = True) -> bool:
    """True when Area(U) exceeds the decay estimate, i.e. complementary series are forced.

    With ``with_complement`` the estimate carries the factor (1 - Area(U)); without it the
    cruder bound K t e^-t is used.
    """
    t, area = appendix_t(n), appendix_area(n)
    rhs = appendix_K_tilde() * t * math.exp(-t)
    if with_complement:
        rhs *= 1 - area
    return area > rhs


def appendix_min_N(with_complement: bool = True, start: int = 4) -> int:
    """Least N for which the predicate holds, by increasing scan."""
    n = start
    while not appendix_predicate(n, with_complement):
        n += 1
    return n


def appendix_stable_from(n: int, with_complement: bool = True, count: int = 100) -> bool:
    return all(appendix_predicate(m, with_complement) for m in range(n, n + count + 1))


def area_check() -> list[tuple[str, bool, str]]:
    rows = []
    for label, index, expected in (("PSL(2,Z)", 1, math.pi / 3), ("PGamma_2", 6, 2 * math.pi),
                                   ("PGamma_6", 72, 24 * math.pi)):
        got = area_for_index(index)
        rows.append((f"area of H/{label} (index {index})", abs(got - expected) < TOL, f"{got:.9f}"))
    # |PSL(2, Z/2)| * |PSL(2, Z/3)| = 6 * 12
    rows.append(("index of PGamma_6 = 6 * 12", 6 * 12 == 72 == _psl2_order(2) * _psl2_order(3), "72"))
    return rows


def _psl2_order(p: int) -> int:
    """Order of PSL(2, Z/p) for a prime p, by counting determinant-one matrices."""
    count = sum(1 for a in range(p) for b in range(p) for c in range(p) for d in range(p)
                if (a * d - b * c) % p == 1)
    return count // (1 if p == 2 else 2)
