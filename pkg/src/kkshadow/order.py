"""Antilexicographic (colex) order and the Kruskal–Katona bounds.

For sets of a fixed size the antilex order compares two sets by the largest
element of their symmetric difference, which is the colex order.  Ranks are
0-based: ``antilex_rank({1..k}) == 0``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import PreconditionError, UniformityError

Family = tuple[tuple[int, ...], ...]


def colex_key(a: Sequence[int]) -> tuple:
    """Sort key realising the antilex order (size first, then reversed tuple)."""
    return (len(a), tuple(sorted(a, reverse=True)))


def sort_family(sets: Iterable[Iterable[int]]) -> Family:
    """Deduplicate and sort a family of vertex sets into canonical antilex order."""
    uniq = {tuple(sorted(s)) for s in sets}
    return tuple(sorted(uniq, key=colex_key))


def antilex_less(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a < b`` by the max-difference rule (both sets of equal size)."""
    sa, sb = set(a), set(b)
    if sa == sb:
        return False
    return max(sa - sb) < max(sb - sa)


def antilex_rank(a: Iterable[int]) -> int:
    """Number of |a|-sets of positive integers strictly below ``a``.

    >>> antilex_rank({1, 2, 5})
    4
    """
    elems = sorted(a)
    if not elems:
        raise PreconditionError("cannot rank the empty set")
    if elems[0] < 1 or len(set(elems)) != len(elems):
        raise PreconditionError(f"not a set of positive integers: {elems}")
    return sum(math.comb(x - 1, i) for i, x in enumerate(elems, start=1))


def antilex_unrank(m: int, k: int) -> tuple[int, ...]:
    """Inverse of :func:`antilex_rank`."""
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if m < 0:
        raise PreconditionError(f"rank must be >= 0, got {m}")
    out = []
    for i in range(k, 0, -1):
        # largest c with C(c, i) <= m; c >= i - 1
        c = i - 1
        while math.comb(c + 1, i) <= m:
            c += 1
        out.append(c + 1)
        m -= math.comb(c, i)
    return tuple(reversed(out))


def initial_segment(m: int, k: int) -> Family:
    """The ``m`` antilex-smallest ``k``-sets."""
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if m < 0:
        raise PreconditionError(f"m must be >= 0, got {m}")
    return tuple(antilex_unrank(i, k) for i in range(m))


def as_rational(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string, ``"p/q"`` or float.

    Floats go through their shortest repr, so ``3.2`` becomes ``16/5``.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise PreconditionError(f"not a finite number: {x}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"cannot parse {x!r} as a rational") from exc
    raise TypeError(f"unsupported numeric type {type(x).__name__}")


def gen_binomial(x, k: int):
    """x(x-1)...(x-k+1)/k!, exact for int/Fraction input and float otherwise.

    ``gen_binomial(x, 0) == 1`` for every x.
    """
    if k < 0:
        raise PreconditionError(f"k must be >= 0, got {k}")
    if isinstance(x, float):
        num = 1.0
        for i in range(k):
            num *= x - i
        return num / math.factorial(k)
    x = as_rational(x)
    num = Fraction(1)
    for i in range(k):
        num *= x - i
    return num / math.factorial(k)


def lovasz_x(m: int, k: int, tol: float = 1e-9) -> float:
    """The real ``x >= k`` with ``C(x, k) == m``, by bisection on ``[k, k + m]``.

    When the root is an integer it is returned exactly.
    """
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}")
    lo, hi = float(k), float(k + m)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if gen_binomial(mid, k) < m:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * 1e-3 * max(1.0, hi):
            break
    x = 0.5 * (lo + hi)
    xi = round(x)
    if abs(x - xi) <= tol and math.comb(xi, k) == m:
        return float(xi)
    return x


def lovasz_bound(m: int, k: int, s: int) -> float:
    """Real lower bound ``C(x, s)`` on the ``s``-shadow of ``m`` ``k``-sets."""
    if not 0 <= s <= k:
        raise PreconditionError(f"need 0 <= s <= k, got s={s}, k={k}")
    return gen_binomial(lovasz_x(m, k), s)


def cascade(m: int, k: int) -> list[tuple[int, int]]:
    """k-cascade of m: pairs ``(a_i, i)`` with m = sum C(a_i, i), a_k > a_{k-1} > ... >= a_j >= j."""
    out = []
    i = k
    while m > 0 and i >= 1:
        a = i
        while math.comb(a + 1, i) <= m:
            a += 1
        out.append((a, i))
        m -= math.comb(a, i)
        i -= 1
    return out


def kk_min_shadow(m: int, k: int, s: int) -> int:
    """Minimum size of the ``s``-shadow over all families of ``m`` ``k``-sets.

    Computed from the cascade of ``m``; equals the shadow size of
    ``initial_segment(m, k)``.
    """
    if m < 0:
        raise PreconditionError(f"m must be >= 0, got {m}")
    if not 1 <= s <= k:
        raise PreconditionError(f"need 1 <= s <= k, got s={s}, k={k}")
    drop = k - s
    total = 0
    for a, i in cascade(m, k):
        j = i - drop
        if j >= 0:
            total += math.comb(a, j)
    return total


def compress(family: Iterable[Iterable[int]]) -> Family:
    """Replace a uniform family by the antilex initial segment of the same size."""
    fam = sort_family(family)
    if not fam:
        return ()
    sizes = {len(a) for a in fam}
    if len(sizes) != 1:
        raise UniformityError(f"family is not uniform: sizes {sorted(sizes)}")
    (k,) = sizes
    if k == 0:
        return fam
    return initial_segment(len(fam), k)
