"""Integer linear algebra for unit-group membership.

Membership of ``x`` in the subgroup generated by ``g_1..g_k`` of an abelian
group ``Z^a x Z/m_1 x ... `` is the integer system ``sum n_i log(g_i) = log(x)``
with one extra column per torsion coordinate.  Solved by column Hermite
elimination with a tracked unimodular transform.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence, TypeVar

T = TypeVar("T")


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def solve_integer_system(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list[int]]:
    """Find integers ``y`` with ``sum y_j * columns[j] == target``, or ``None``."""
    d = len(target)
    c = len(columns)
    if c == 0:
        return [] if all(t == 0 for t in target) else None
    H = [list(col) for col in columns]  # stored column-major
    U = [[int(i == j) for j in range(c)] for i in range(c)]  # U[j] is column j

    def combine(a: int, b: int, s: int, t: int, u: int, v: int) -> None:
        # col_a, col_b <- s*col_a + t*col_b, u*col_a + v*col_b
        ca, cb = H[a], H[b]
        H[a] = [s * x + t * y for x, y in zip(ca, cb)]
        H[b] = [u * x + v * y for x, y in zip(ca, cb)]
        ua, ub = U[a], U[b]
        U[a] = [s * x + t * y for x, y in zip(ua, ub)]
        U[b] = [u * x + v * y for x, y in zip(ua, ub)]

    pivots: list[tuple[int, int]] = []
    pc = 0
    for r in range(d):
        if pc >= c:
            break
        for j in range(pc + 1, c):
            x, y = H[pc][r], H[j][r]
            if y == 0:
                continue
            if x == 0:
                H[pc], H[j] = H[j], H[pc]
                U[pc], U[j] = U[j], U[pc]
                continue
            g, s, t = _xgcd(x, y)
            combine(pc, j, s, t, -y // g, x // g)
        if H[pc][r] != 0:
            if H[pc][r] < 0:
                H[pc] = [-v for v in H[pc]]
                U[pc] = [-v for v in U[pc]]
            pivots.append((r, pc))
            pc += 1

    y = [0] * c
    pivot_rows = dict(pivots)
    for r in range(d):
        acc = sum(H[j][r] * y[j] for j in range(c))
        if r in pivot_rows:
            j = pivot_rows[r]
            rest = target[r] - acc
            if rest % H[j][r]:
                return None
            y[j] = rest // H[j][r]
        elif acc != target[r]:
            return None
    return [sum(U[j][i] * y[j] for j in range(c)) for i in range(c)]


def solve_in_group(
    generators: Sequence[Sequence[int]], target: Sequence[int], moduli: Sequence[int]
) -> Optional[list[int]]:
    """Exponents ``n`` with ``sum n_i generators[i] == target`` modulo ``moduli``.

    ``moduli[k] == 0`` marks a free coordinate.
    """
    d = len(target)
    torsion_cols = []
    for k, m in enumerate(moduli):
        if m:
            col = [0] * d
            col[k] = m
            torsion_cols.append(col)
    sol = solve_integer_system(list(generators) + torsion_cols, target)
    if sol is None:
        return None
    return sol[: len(generators)]


def coprime_base(
    items: Sequence[T],
    gcd: Callable[[T, T], T],
    divexact: Callable[[T, T], T],
    is_unit: Callable[[T], bool],
) -> list[T]:
    """Pairwise coprime non-units such that every item is a unit times a product of them."""
    base: list[T] = []
    stack = [x for x in items if not is_unit(x)]
    while stack:
        a = stack.pop()
        for i, b in enumerate(base):
            g = gcd(a, b)
            if not is_unit(g):
                base.pop(i)
                stack.extend(p for p in (g, divexact(a, g), divexact(b, g)) if not is_unit(p))
                break
        else:
            base.append(a)
    return base


def factor_over_base(
    x: T, base: Sequence[T], try_div: Callable[[T, T], Optional[T]]
) -> tuple[list[int], T]:
    """Exponents of ``x`` over ``base`` and the leftover cofactor."""
    exps = []
    for b in base:
        e = 0
        while True:
            q = try_div(x, b)
            if q is None:
                break
            x, e = q, e + 1
        exps.append(e)
    return exps, x
