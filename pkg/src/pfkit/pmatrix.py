"""Exact determinants, weak/strong P-matrix checks and matroid extraction."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .homs import PFHom, Status, verify_strong_hom
from .partial_field import DEFAULT_BOUND, PartialField, pf_contains
from .rings import NumberRing, Ring, RingValue, Verdict, ring_from_json

STRONG_COLUMN_LIMIT = 12  # strong-minor scans beyond this many columns need an override


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class PMatrix:
    ring: Ring
    rows: tuple[tuple[RingValue, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(self.ring.element(x) for x in row) for row in self.rows)
        if len({len(r) for r in rows}) > 1:
            raise MatrixError("rows of unequal length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, ring: Ring, rows: Iterable[Iterable]) -> "PMatrix":
        return cls(ring, tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def column(self, j: int) -> tuple[RingValue, ...]:
        return tuple(r[j] for r in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PMatrix":
        return PMatrix(self.ring, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def map(self, f, ring: Ring) -> "PMatrix":
        return PMatrix(ring, tuple(tuple(f(x) for x in r) for r in self.rows))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)

    def to_text(self) -> str:
        r, n = self.shape
        head = f"ring {json.dumps(self.ring.to_json())}\nrows {r} cols {n}\n"
        return head + "".join(" ".join(str(x) for x in row) + "\n" for row in self.rows)

    @classmethod
    def from_text(cls, text: str, ring: Optional[Ring] = None) -> "PMatrix":
        """First line ``ring <json>``, second ``rows r cols n``, then r rows of value texts."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines or not lines[0].startswith("ring "):
            raise MatrixError("first line must be 'ring <json descriptor>'")
        declared = ring_from_json(json.loads(lines[0][5:]))
        ring = ring or declared
        parts = lines[1].split() if len(lines) > 1 else []
        if len(parts) != 4 or parts[0] != "rows" or parts[2] != "cols":
            raise MatrixError("second line must be 'rows r cols n'")
        r, n = int(parts[1]), int(parts[3])
        body = lines[2:]
        if len(body) != r:
            raise MatrixError(f"expected {r} rows, found {len(body)}")
        rows = []
        for ln in body:
            cells = ln.split()
            if len(cells) != n:
                raise MatrixError(f"expected {n} entries in row {ln!r}")
            rows.append(tuple(ring.parse(c) for c in cells))
        return cls(ring, tuple(rows))


# ---------------------------------------------------------------------------
# determinants


def _bareiss_div(ring: Ring, a: RingValue, b: RingValue) -> RingValue:
    # Bareiss quotients are minors, hence in the ring; skip membership proofs
    # the number-ring backend cannot always give.
    if isinstance(ring, NumberRing):
        return RingValue(ring, ring._amul(a.data, ring._ainverse(b.data)))
    return ring.exact_div(a, b)


def det_bareiss(A: PMatrix) -> RingValue:
    """Fraction-free elimination; needs an integral domain."""
    n, m = A.shape
    if n != m:
        raise MatrixError(f"determinant of a {n}x{m} matrix")
    R = A.ring
    if n == 0:
        return R.one()
    M = [list(r) for r in A.rows]
    sign, prev = 1, R.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return R.zero()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = _bareiss_div(R, M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def det_cofactor(A: PMatrix) -> RingValue:
    """Laplace expansion memoized over column subsets; valid in any commutative ring."""
    n, m = A.shape
    if n != m:
        raise MatrixError(f"determinant of a {n}x{m} matrix")
    R = A.ring

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> RingValue:
        if row == n:
            return R.one()
        total = R.zero()
        for pos, j in enumerate(sorted(cols)):
            a = A.rows[row][j]
            if a.is_zero():
                continue
            t = a * minor(row + 1, cols - {j})
            total = total - t if pos % 2 else total + t
        return total

    return minor(0, frozenset(range(n)))


def det(A: PMatrix) -> RingValue:
    return det_bareiss(A) if A.ring.is_domain() else det_cofactor(A)


# ---------------------------------------------------------------------------
# P-matrix checks


@dataclass(frozen=True)
class MatrixCheck:
    status: str  # "pass", "fail" or "inconclusive"
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()  # 1-based labels
    value: Optional[RingValue] = None
    kind: str = "weak"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __str__(self) -> str:
        if self.status == "pass":
            return "pass"
        k = len(self.cols)
        where = (
            f"columns {{{','.join(map(str, self.cols))}}}"
            if self.kind == "weak"
            else (
                f"({self.rows[0]},{self.cols[0]})"
                if k == 1
                else f"rows {{{','.join(map(str, self.rows))}}} columns {{{','.join(map(str, self.cols))}}}"
            )
        )
        label = "maximal minor" if self.kind == "weak" else f"{k}×{k} minor"
        verb = "undecided" if self.status == "inconclusive" else "fail"
        return f"{verb}: {label} at {where} = {self.value}"

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "kind": self.kind}
        if self.status != "pass":
            out.update(rows=list(self.rows), cols=list(self.cols), value=str(self.value))
        return out


def _check_dims(A: PMatrix, P: PartialField) -> None:
    if A.ring != P.ring:
        raise MatrixError(f"matrix over {A.ring}, partial field over {P.ring}")
    r, n = A.shape
    if r > n:
        raise MatrixError(f"{r} rows exceed {n} columns")


def is_weak_pmatrix(A: PMatrix, P: PartialField, bound: int = DEFAULT_BOUND) -> MatrixCheck:
    """Every maximal minor in P; first failing column set in lexicographic order."""
    _check_dims(A, P)
    r, n = A.shape
    rows = tuple(range(r))
    pending: Optional[MatrixCheck] = None
    for cols in itertools.combinations(range(n), r):
        d = det(A.submatrix(rows, cols))
        verdict = pf_contains(P, d, bound)
        labels = tuple(j + 1 for j in cols)
        if verdict is Verdict.NO:
            return MatrixCheck("fail", tuple(i + 1 for i in rows), labels, d)
        if verdict is Verdict.UNKNOWN and pending is None:
            pending = MatrixCheck("inconclusive", tuple(i + 1 for i in rows), labels, d)
    return pending or MatrixCheck("pass")


def is_strong_pmatrix(
    A: PMatrix, P: PartialField, bound: int = DEFAULT_BOUND, allow_large: bool = False
) -> MatrixCheck:
    """Every square minor in P, scanned by size, then row set, then column set."""
    _check_dims(A, P)
    r, n = A.shape
    if n > STRONG_COLUMN_LIMIT and not allow_large:
        raise MatrixError(f"strong scan over {n} > {STRONG_COLUMN_LIMIT} columns needs an explicit override")
    pending: Optional[MatrixCheck] = None
    for k in range(1, r + 1):
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(n), k):
                d = det(A.submatrix(rows, cols))
                verdict = pf_contains(P, d, bound)
                if verdict is Verdict.YES:
                    continue
                w = MatrixCheck(
                    "fail" if verdict is Verdict.NO else "inconclusive",
                    tuple(i + 1 for i in rows),
                    tuple(j + 1 for j in cols),
                    d,
                    "strong",
                )
                if verdict is Verdict.NO:
                    return w
                pending = pending or w
    return pending or MatrixCheck("pass", kind="strong")


# ---------------------------------------------------------------------------
# matroids


@dataclass(frozen=True)
class Matroid:
    ground_size: int
    bases: tuple[tuple[int, ...], ...]  # sorted 1-based column sets

    def __post_init__(self):
        bases = tuple(sorted({tuple(sorted(b)) for b in self.bases}))
        if not bases:
            raise MatrixError("a matroid needs at least one basis")
        if len({len(b) for b in bases}) != 1:
            raise MatrixError("bases of unequal size")
        if any(not 1 <= e <= self.ground_size for b in bases for e in b):
            raise MatrixError("basis element outside the ground set")
        object.__setattr__(self, "bases", bases)

    @property
    def rank(self) -> int:
        return len(self.bases[0])

    def text(self) -> str:
        return "\n".join(" ".join(map(str, b)) if b else "{}" for b in self.bases)

    def to_json(self) -> dict:
        return {"ground_size": self.ground_size, "rank": self.rank, "bases": [list(b) for b in self.bases]}


def matroid_of(A: PMatrix, P: PartialField, bound: int = DEFAULT_BOUND) -> Matroid:
    """Column sets of size r with nonzero maximal minor (A must be a weak P-matrix)."""
    check = is_weak_pmatrix(A, P, bound)
    if check.status == "fail":
        raise MatrixError(f"not a weak P-matrix: {check}")
    return _bases(A)


def _bases(A: PMatrix) -> Matroid:
    r, n = A.shape
    rows = tuple(range(r))
    bases = [
        tuple(j + 1 for j in cols)
        for cols in itertools.combinations(range(n), r)
        if not det(A.submatrix(rows, cols)).is_zero()
    ]
    if not bases:
        raise MatrixError("all maximal minors vanish: rows are dependent")
    return Matroid(n, tuple(bases))


@dataclass(frozen=True)
class AxiomCheck:
    passed: bool
    witness: Optional[tuple] = None  # (B1, B2, e)

    def __str__(self) -> str:
        if self.passed:
            return "pass"
        b1, b2, e = self.witness
        return f"fail: exchange violated for B1={set(b1)}, B2={set(b2)}, e={e}"


def matroid_axiom_check(M: Matroid) -> AxiomCheck:
    """Basis exchange: for B1, B2 and e in B1 - B2 some f in B2 - B1 has B1 - e + f a basis."""
    bases = {frozenset(b) for b in M.bases}
    for b1, b2 in itertools.product(M.bases, repeat=2):
        s1, s2 = set(b1), set(b2)
        for e in sorted(s1 - s2):
            if not any(frozenset(s1 - {e} | {f}) in bases for f in s2 - s1):
                return AxiomCheck(False, (b1, b2, e))
    return AxiomCheck(True)


# ---------------------------------------------------------------------------
# transport and P-graphic matrices


@dataclass(frozen=True)
class TransportReport:
    status: Status
    summary: str
    source_bases: tuple = ()
    image_bases: tuple = ()
    lost: tuple = ()
    gained: tuple = ()
    image_check: Optional[MatrixCheck] = None

    @property
    def ok(self) -> bool:
        return self.status is Status.EXACT

    def __str__(self) -> str:
        out = [f"{self.status.value}: {self.summary}"]
        if self.lost:
            out.append(f"  bases lost: {[set(b) for b in self.lost]}")
        if self.gained:
            out.append(f"  bases gained: {[set(b) for b in self.gained]}")
        return "\n".join(out)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "summary": self.summary,
            "source_bases": [list(b) for b in self.source_bases],
            "image_bases": [list(b) for b in self.image_bases],
            "lost": [list(b) for b in self.lost],
            "gained": [list(b) for b in self.gained],
        }


def transport_check(A: PMatrix, P: PartialField, phi: PFHom, bound: int = DEFAULT_BOUND) -> TransportReport:
    """Apply a strong hom entrywise; the image is a weak P'-matrix with the same matroid."""
    if phi.source != P:
        raise MatrixError("hom does not start at the matrix's partial field")
    if phi.ring_map is None or phi.kind != "strong":
        raise MatrixError("transport needs a strong hom with a ring-level map")
    ver = verify_strong_hom(phi)
    if ver.status is not Status.EXACT:
        raise MatrixError(f"hom not verified strong: {ver}")
    pre = is_weak_pmatrix(A, P, bound)
    if pre.status != "pass":
        return TransportReport(Status.FAIL, f"source is not a weak P-matrix ({pre})")
    B = A.map(phi.ring_map.apply, phi.target.ring)
    image = is_weak_pmatrix(B, phi.target, bound)
    if image.status == "fail":
        return TransportReport(Status.FAIL, f"image is not a weak P'-matrix ({image})", image_check=image)
    src = _bases(A)
    try:
        dst = _bases(B)
        dst_bases = dst.bases
    except MatrixError:
        dst_bases = ()
    lost = tuple(b for b in src.bases if b not in set(dst_bases))
    gained = tuple(b for b in dst_bases if b not in set(src.bases))
    if lost or gained:
        return TransportReport(Status.FAIL, "basis discrepancy", src.bases, dst_bases, lost, gained, image)
    if image.status == "inconclusive":
        return TransportReport(Status.INCONCLUSIVE, f"image membership undecided ({image})", src.bases, dst_bases)
    return TransportReport(Status.EXACT, f"{len(src.bases)} bases preserved", src.bases, dst_bases, image_check=image)


def p_graphic_check(A: PMatrix) -> bool:
    """Every column has at most two nonzero entries."""
    r, n = A.shape
    return all(sum(not x.is_zero() for x in A.column(j)) <= 2 for j in range(n))
