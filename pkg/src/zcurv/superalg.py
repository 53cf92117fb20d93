"""Parity-graded matrices: graded commutator, supertrace, bracket tables.

The matrix fixtures below are the ground truth for every sign convention in
the derivation engine.  ``sl2`` is the usual triple (X-, H, X+) in 2x2
matrices; ``osp12`` is a 3x3 realisation with parity vector
(even, odd, even), the unique assignment that makes H, X+- even and the
odd generators d+- homogeneous.  The rank-1 relation tables consumed by
the zero-curvature engine are computed from these matrices, never written
by hand.
"""

from dataclasses import dataclass
from fractions import Fraction

EVEN = "even"
ODD = "odd"

_PNUM = {EVEN: 0, ODD: 1}


@dataclass(frozen=True)
class SuperMatrix:
    """Square rational matrix with one parity per row (= per column)."""

    entries: tuple[tuple[Fraction, ...], ...]
    row_parities: tuple[str, ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("supermatrix must be square")
        if len(self.row_parities) != n:
            raise ValueError("parity vector length must equal matrix size")
        if any(p not in (EVEN, ODD) for p in self.row_parities):
            raise ValueError("parities must be 'even' or 'odd'")

    @staticmethod
    def from_rows(rows, parities) -> "SuperMatrix":
        return SuperMatrix(
            tuple(tuple(Fraction(v) for v in row) for row in rows),
            tuple(parities))

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry_parity(self, i: int, j: int) -> int:
        return (_PNUM[self.row_parities[i]] + _PNUM[self.row_parities[j]]) % 2

    def parity(self) -> int:
        """Parity of a homogeneous matrix (zero counts as even)."""
        seen = {self.entry_parity(i, j)
                for i in range(self.size) for j in range(self.size)
                if self.entries[i][j]}
        if len(seen) > 1:
            raise ValueError("matrix is not homogeneous")
        return seen.pop() if seen else 0

    def is_homogeneous(self) -> bool:
        try:
            self.parity()
            return True
        except ValueError:
            return False

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_compatible(other)
        return SuperMatrix(
            tuple(tuple(a + b for a, b in zip(ra, rb))
                  for ra, rb in zip(self.entries, other.entries)),
            self.row_parities)

    def __neg__(self) -> "SuperMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def scale(self, c) -> "SuperMatrix":
        c = Fraction(c)
        return SuperMatrix(
            tuple(tuple(c * v for v in row) for row in self.entries),
            self.row_parities)

    def matmul(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_compatible(other)
        n = self.size
        rows = tuple(
            tuple(sum((self.entries[i][k] * other.entries[k][j]
                       for k in range(n)), Fraction(0))
                  for j in range(n))
            for i in range(n))
        return SuperMatrix(rows, self.row_parities)

    def _check_compatible(self, other: "SuperMatrix"):
        if self.row_parities != other.row_parities:
            raise ValueError("size/parity-vector mismatch")

    def __str__(self):
        cells = [[str(v) for v in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def supercommutator(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """Graded bracket  XY - (-1)^{p(X)p(Y)} YX  of homogeneous matrices."""
    x._check_compatible(y)
    px, py = x.parity(), y.parity()
    sign = -1 if px * py else 1
    return x.matmul(y) - y.matmul(x).scale(sign)


def supertrace(x: SuperMatrix) -> Fraction:
    """Sum of (-1)^{row parity} times the diagonal entries."""
    return sum(((-1) ** _PNUM[p]) * x.entries[i][i]
               for i, p in enumerate(x.row_parities))


@dataclass(frozen=True)
class BracketTable:
    """All ordered graded brackets of a named basis, expanded in the basis.

    ``table[(a, b)]`` is a tuple of (coefficient, name) pairs.
    """

    names: tuple[str, ...]
    table: dict[tuple[str, str], tuple[tuple[Fraction, str], ...]]

    def bracket(self, a: str, b: str) -> tuple[tuple[Fraction, str], ...]:
        return self.table[(a, b)]


def _expand_in_basis(m: SuperMatrix, basis: dict[str, SuperMatrix]):
    """Write m as a linear combination of the basis matrices.

    The fixture bases have pairwise disjoint supports, so matching each
    basis element on one of its nonzero positions is exact; closure is
    verified by reconstructing m.  Raises ValueError outside the span.
    """
    coeffs = []
    residue = m
    for name, b in basis.items():
        pos = next(((i, j) for i in range(b.size) for j in range(b.size)
                    if b.entries[i][j]), None)
        if pos is None:
            continue
        c = residue.entries[pos[0]][pos[1]] / b.entries[pos[0]][pos[1]]
        if c:
            coeffs.append((c, name))
            residue = residue - b.scale(c)
    if not residue.is_zero():
        raise ValueError("bracket value lies outside the span of the basis")
    return tuple(coeffs)


def bracket_table(basis: dict[str, SuperMatrix]) -> BracketTable:
    """Graded brackets of all ordered pairs of a homogeneous basis."""
    for name, b in basis.items():
        if not b.is_zero() and not b.is_homogeneous():
            raise ValueError(f"basis element {name} is not homogeneous")
    table = {}
    for a_name, a in basis.items():
        for b_name, b in basis.items():
            table[(a_name, b_name)] = _expand_in_basis(
                supercommutator(a, b), basis)
    return BracketTable(tuple(basis), table)


def sl2_basis() -> dict[str, SuperMatrix]:
    even2 = (EVEN, EVEN)
    return {
        "H": SuperMatrix.from_rows([[1, 0], [0, -1]], even2),
        "X+": SuperMatrix.from_rows([[0, 1], [0, 0]], even2),
        "X-": SuperMatrix.from_rows([[0, 0], [1, 0]], even2),
    }


def osp12_basis() -> dict[str, SuperMatrix]:
    pars = (EVEN, ODD, EVEN)
    return {
        "H": SuperMatrix.from_rows(
            [[1, 0, 0], [0, 0, 0], [0, 0, -1]], pars),
        "X+": SuperMatrix.from_rows(
            [[0, 0, 1], [0, 0, 0], [0, 0, 0]], pars),
        "X-": SuperMatrix.from_rows(
            [[0, 0, 0], [0, 0, 0], [1, 0, 0]], pars),
        "d+": SuperMatrix.from_rows(
            [[0, 1, 0], [0, 0, -1], [0, 0, 0]], pars),
        "d-": SuperMatrix.from_rows(
            [[0, 0, 0], [1, 0, 0], [0, 1, 0]], pars),
    }


_GEN_PARITY = {"H": 0, "X+": 0, "X-": 0, "d+": 1, "d-": 1}


def generator_parity(name: str) -> int:
    return _GEN_PARITY[name]
