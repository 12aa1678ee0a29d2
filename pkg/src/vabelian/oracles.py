"""Brute-force reference computations used to cross-check the constructive routines."""

from __future__ import annotations

from math import isqrt

import numpy as np

from .core import Element, FiniteQuotient, VAPresentation, multiply
from .finite import FiniteGroup, Subgroup, cyclic


def min_norm_kernel_hom(p: int, generator: tuple[int, int]) -> tuple[int, tuple[int, int]] | None:
    """Smallest u^2 + v^2 < 2p among h = (u, v) whose mod-p kernel is <generator>."""
    x, y = generator
    top = isqrt(2 * p)
    us = np.arange(-top, top + 1, dtype=np.int64)
    U, V = np.meshgrid(us, us, indexing="ij")
    N = U * U + V * V
    ok = (N < 2 * p) & ((U * x + V * y) % p == 0) & ~((U % p == 0) & (V % p == 0))
    if not ok.any():
        return None
    idx = np.argwhere(ok)
    best = min(idx.tolist(), key=lambda ij: (int(N[ij[0], ij[1]]), ij))
    i, j = best
    return int(N[i, j]), (int(us[i]), int(us[j]))


def quotient_product(fq: FiniteQuotient, x: int, y: int) -> int:
    """Product in G / mA through the group law on sections."""
    P = fq.presentation
    return fq.project(multiply(P, fq.section(x), fq.section(y)))


def case_tag_from_scratch(fq: FiniteQuotient, H: Subgroup) -> str:
    """Recompute the case of H by building H -> Q as a map of standalone groups."""
    Hg, emb = H.as_group()
    k = fq.presentation.Q.order
    images = {fq.section(x).q for x in emb}
    kernel = [i for i, x in enumerate(emb) if fq.section(x).q == 0 and fq.section(x).vec != (0,) * fq.presentation.rank]
    if k == 1:
        return "Iso" if Hg.order == 1 else "NotOnto"
    if len(images) != k:
        return "NotOnto"
    return "OntoNotInjective" if kernel else "Iso"


def metacyclic_exponent_naive(p: int, s: int, w: int, n: int) -> int:
    """Element orders by repeated multiplication (x, j)(y, l) = (x + u^j y, j + l)."""
    ps, pw = p**s, p**w
    u = (1 + p * n) % ps
    best = 1
    for x in range(ps):
        for j in range(pw):
            cur, k = (x, j), 1
            while cur != (0, 0):
                cur = ((cur[0] + pow(u, cur[1], ps) * x) % ps, (cur[1] + j) % pw)
                k += 1
            best = max(best, k)
    return best


def units_of_order_dividing(p: int, k: int) -> list[int]:
    return [u for u in range(1, p) if pow(u, k, p) == 1]


def cyclic_action(p: int, k: int, u: int) -> tuple[FiniteGroup, list[int]]:
    """Z/k acting on Z/p through t -> u."""
    return cyclic(k), [pow(u, i, p) for i in range(k)]


def random_elements(P: VAPresentation, rng, count: int, bound: int = 6) -> list[Element]:
    return [
        Element(tuple(rng.randint(-bound, bound) for _ in range(P.rank)), rng.randrange(P.Q.order))
        for _ in range(count)
    ]
