"""Cartan-matrix data model, file format, and admissibility checks.

A Cartan matrix here is any square matrix of exact rationals together with
a parity (even/odd) per node.  Two diagonal conditions select the matrices
for which the two known solvable Toda-type superizations apply:

* scheme ``lse1``: every diagonal entry is 0 or 1;
* scheme ``lse2``: every diagonal entry is 2 or 1.

The file format is a strict JSON subset parsed with a hand-rolled reader so
that every error, including semantic ones (non-square matrix, parity-length
mismatch, non-rational entry), carries a line/column position.  Grammar::

    document  = object
    object    = '{' pair (',' pair)* '}'
    pair      = string ':' value
    value     = matrix rows / parities / name, per key:
      "matrix"   : array of equal-length arrays of rationals (required)
      "parities" : array of "even" / "odd" strings (optional, default even)
      "name"     : string (optional)
    rational  = integer literal, or string "p/q" with integer p, q

The renderer emits a canonical form (fixed key order, no whitespace), and
``parse_cartan(render_cartan(A)) == A`` for every valid ``A``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

EVEN = "even"
ODD = "odd"


class CartanFormatError(ValueError):
    """Malformed Cartan-matrix document, with 1-based line/column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    parities: tuple[str, ...]
    name: str | None = None

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise ValueError("cartan matrix must have rank >= 1")
        if any(len(row) != n for row in self.entries):
            raise ValueError("cartan matrix must be square")
        if len(self.parities) != n:
            raise ValueError(
                f"parity list has length {len(self.parities)}, expected {n}")
        if any(p not in (EVEN, ODD) for p in self.parities):
            raise ValueError("parities must be 'even' or 'odd'")

    @staticmethod
    def from_rows(rows, parities=None, name=None) -> "CartanMatrix":
        entries = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if parities is None:
            parities = (EVEN,) * len(entries)
        return CartanMatrix(entries, tuple(parities), name)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.entries[i][i] for i in range(self.rank))

    def is_all_even(self) -> bool:
        return all(p == EVEN for p in self.parities)

    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        """Exact inverse; raises ValueError when singular."""
        return invert_rational(self.entries)


@dataclass(frozen=True)
class AdmissibilityReport:
    scheme: str
    admissible: bool
    offending_indices: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.admissible != (not self.offending_indices):
            raise ValueError("admissible must mirror empty offending_indices")


_ALLOWED_DIAGONAL = {"lse1": (Fraction(0), Fraction(1)),
                     "lse2": (Fraction(2), Fraction(1))}


def check_admissible(a: CartanMatrix, scheme: str) -> AdmissibilityReport:
    """Diagonal membership test for the given superization scheme."""
    scheme = scheme.lower()
    if scheme not in _ALLOWED_DIAGONAL:
        raise ValueError(f"unknown scheme {scheme!r}; expected lse1 or lse2")
    allowed = _ALLOWED_DIAGONAL[scheme]
    bad = tuple(i for i, d in enumerate(a.diagonal) if d not in allowed)
    return AdmissibilityReport(scheme, not bad, bad)


def parse_family(descriptor: str) -> tuple[str, int, int]:
    """Split 'family(p|q)' into its parts; family in {sl, osp, osp_a}."""
    text = descriptor.strip()
    for family in ("osp_a", "osp", "sl"):
        if text.startswith(family + "("):
            break
    else:
        raise ValueError(f"unparseable family descriptor {descriptor!r}")
    body = text[len(family) + 1:]
    if not body.endswith(")") or body.count("|") != 1:
        raise ValueError(f"unparseable family descriptor {descriptor!r}")
    left, right = body[:-1].split("|")
    try:
        p, q = int(left), int(right)
    except ValueError:
        raise ValueError(
            f"unparseable family descriptor {descriptor!r}") from None
    if p < 0 or q < 0:
        raise ValueError(f"unparseable family descriptor {descriptor!r}")
    return family, p, q


def whitelist_superprincipal(descriptor: str) -> bool:
    """Whether the named simple Lie superalgebra family admits a
    superprincipal osp(1|2) embedding.

    True exactly for sl(n|n+-1), osp(2n+-1|2n), osp(2n|2n), osp(2n+2|2n)
    and the one-parameter family osp_a(4|2).
    """
    family, p, q = parse_family(descriptor)
    if family == "sl":
        return p >= 1 and q >= 1 and abs(p - q) == 1
    if family == "osp_a":
        return (p, q) == (4, 2)
    # osp(p|q): q = 2n with n >= 1
    if q < 2 or q % 2:
        return False
    return p in (q - 1, q + 1, q, q + 2) and p >= 1


def standard_cartan(name: str) -> CartanMatrix:
    """Convenience constructors: sl2, osp12, and slN for small N."""
    if name == "osp12":
        return CartanMatrix.from_rows([[1]], [ODD], name="osp12")
    if name.startswith("sl"):
        try:
            n = int(name[2:])
        except ValueError:
            raise ValueError(f"unknown standard cartan matrix {name!r}") from None
        if n < 2:
            raise ValueError(f"unknown standard cartan matrix {name!r}")
        size = n - 1
        rows = [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                 for j in range(size)] for i in range(size)]
        return CartanMatrix.from_rows(rows, name=name)
    raise ValueError(f"unknown standard cartan matrix {name!r}")


def invert_rational(rows) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a square rational matrix by Gauss-Jordan."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


# ---------------------------------------------------------------------------
# file format


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str):
        raise CartanFormatError(message, self.line, self.col)

    def mark(self) -> tuple[int, int]:
        return self.line, self.col

    def error_at(self, message: str, mark: tuple[int, int]):
        raise CartanFormatError(message, mark[0], mark[1])

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def skip_ws(self):
        while self.peek() in " \t\r\n" and self.peek():
            self.advance()

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            got = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {got!r}")
        self.advance()

    def read_string(self) -> str:
        self.expect('"')
        out = []
        while True:
            if not self.peek():
                self.error("unterminated string")
            ch = self.advance()
            if ch == '"':
                return "".join(out)
            if ch == "\\":
                esc = self.advance() if self.peek() else self.error("unterminated escape")
                if esc not in '"\\/':
                    self.error(f"unsupported escape \\{esc}")
                out.append(esc)
            else:
                out.append(ch)

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.advance()
        if not self.peek().isdigit():
            self.error("expected an integer")
        while self.peek().isdigit():
            self.advance()
        return int(self.text[start:self.pos])

    def read_rational(self) -> Fraction:
        self.skip_ws()
        mark = self.mark()
        if self.peek() == '"':
            raw = self.read_string()
            parts = raw.split("/")
            try:
                if len(parts) == 2:
                    num, den = int(parts[0]), int(parts[1])
                    if den == 0:
                        raise ZeroDivisionError
                    return Fraction(num, den)
                if len(parts) == 1:
                    return Fraction(int(parts[0]))
            except (ValueError, ZeroDivisionError):
                pass
            self.error_at(f"non-rational entry {raw!r}", mark)
        if self.peek() == "-" or self.peek().isdigit():
            n = self.read_int()
            if self.peek() in ".eE":
                self.error_at("non-rational entry: floats are not allowed; "
                              'write "p/q"', mark)
            return Fraction(n)
        got = self.peek() or "end of input"
        self.error(f"expected a rational entry, found {got!r}")

    def read_array(self, read_item):
        self.expect("[")
        items = []
        self.skip_ws()
        if self.peek() == "]":
            self.advance()
            return items
        while True:
            items.append(read_item())
            self.skip_ws()
            if self.peek() == ",":
                self.advance()
                continue
            self.expect("]")
            return items


def parse_cartan(text: str) -> CartanMatrix:
    """Parse a Cartan-matrix document; all errors carry line/column."""
    r = _Reader(text)
    r.expect("{")
    matrix = None
    matrix_mark = None
    parities = None
    parity_mark = None
    name = None
    seen: set[str] = set()
    while True:
        r.skip_ws()
        key_mark = r.mark()
        key = r.read_string()
        if key in seen:
            r.error_at(f"duplicate key {key!r}", key_mark)
        seen.add(key)
        r.expect(":")
        if key == "matrix":
            r.skip_ws()
            matrix_mark = r.mark()
            rows = r.read_array(lambda: (r.mark(), r.read_array(r.read_rational)))
            matrix = rows
        elif key == "parities":
            r.skip_ws()
            parity_mark = r.mark()

            def read_parity():
                m = r.mark()
                raw = r.read_string()
                if raw not in (EVEN, ODD):
                    r.error_at(f"parity must be 'even' or 'odd', got {raw!r}", m)
                return raw

            parities = r.read_array(read_parity)
        elif key == "name":
            r.skip_ws()
            name = r.read_string()
        else:
            r.error_at(f"unknown key {key!r}", key_mark)
        r.skip_ws()
        if r.peek() == ",":
            r.advance()
            continue
        r.expect("}")
        break
    r.skip_ws()
    if r.peek():
        r.error("trailing content after document")
    if matrix is None:
        raise CartanFormatError("missing required key 'matrix'", 1, 1)
    n = len(matrix)
    if n == 0:
        r.error_at("matrix must have at least one row", matrix_mark)
    for row_mark, row in matrix:
        if len(row) != n:
            r.error_at(
                f"non-square matrix: row has {len(row)} entries, expected {n}",
                row_mark)
    if parities is not None and len(parities) != n:
        r.error_at(
            f"parity list has length {len(parities)}, expected {n}",
            parity_mark)
    rows = tuple(tuple(row) for _, row in matrix)
    pars = tuple(parities) if parities is not None else (EVEN,) * n
    return CartanMatrix(rows, pars, name)


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f'"{q}"'


def render_cartan(a: CartanMatrix) -> str:
    """Canonical document form: fixed key order, no whitespace."""
    rows = ",".join(
        "[" + ",".join(_render_rational(v) for v in row) + "]"
        for row in a.entries)
    parts = [f'"matrix":[{rows}]']
    parts.append('"parities":[' + ",".join(f'"{p}"' for p in a.parities) + "]")
    if a.name is not None:
        parts.append(f'"name":"{a.name}"')
    return "{" + ",".join(parts) + "}"
