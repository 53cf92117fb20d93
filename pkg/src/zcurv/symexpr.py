"""Symbolic differential superalgebra for the derivation engine.

Expressions are Q-linear combinations of monomials; a monomial is an
ordered product of atoms.  An atom is either

* a derivative of a named indeterminate function,
  ``dx^i dy^j (D+)^e+ (D-)^e- f`` with ``e+, e- in {0, 1}`` (the operator
  word is kept in the normal order with D+ outermost, using
  ``(D+)^2 = dx``, ``(D-)^2 = dy`` and ``D+ D- = -D- D+``), or
* an opaque ``exp(...)`` of a rational-linear combination of names, used
  only on the right-hand sides of derived systems and never differentiated.

Odd atoms anticommute and square to zero; even atoms commute with
everything.  D+ and D- act as odd derivations, dx and dy as even ones.
All sign bookkeeping is literal algebra on these monomials.
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Atom:
    name: str
    dx: int = 0
    dy: int = 0
    dp: int = 0
    dm: int = 0
    base_parity: int = 0

    @property
    def parity(self) -> int:
        return (self.base_parity + self.dp + self.dm) % 2

    def render(self) -> str:
        out = self.name
        if self.dm:
            out = f"D-({out})"
        if self.dp:
            out = f"D+({out})"
        if self.dx or self.dy:
            out += "_" + "x" * self.dx + "y" * self.dy
        return out


@dataclass(frozen=True)
class ExpAtom:
    """exp of a rational-linear combination of names; parity even."""

    args: tuple[tuple[Fraction, str], ...]

    @property
    def parity(self) -> int:
        return 0

    def render(self) -> str:
        parts = []
        for coeff, name in self.args:
            parts.append((coeff, name))
        return "exp(" + _linear_str(parts) + ")"


def _atom_sort_key(a):
    if isinstance(a, ExpAtom):
        return (1, a.args, 0, 0, 0, 0, "")
    lower_first = 0 if a.name[:1].islower() else 1
    return (0, (lower_first, a.name.lower(), a.name), a.dx, a.dy, a.dp, a.dm, "")


def _mul_monomials(m1: tuple, m2: tuple):
    """Merge two canonical monomials; returns (sign, monomial) or None."""
    out = []
    sign = 1
    i = j = 0
    odd_left = sum(a.parity for a in m1)
    while i < len(m1) and j < len(m2):
        a, b = m1[i], m2[j]
        if _atom_sort_key(a) <= _atom_sort_key(b):
            odd_left -= a.parity
            out.append(a)
            i += 1
        else:
            if b.parity:
                if odd_left % 2:
                    sign = -sign
            out.append(b)
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    for k in range(len(out) - 1):
        if out[k] == out[k + 1] and out[k].parity:
            return None  # odd atom squared
    return sign, tuple(out)


class Expr:
    """Q-linear combination of atom monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    self.terms[mono] = c

    # -- constructors -----------------------------------------------------

    @staticmethod
    def rational(q) -> "Expr":
        q = Fraction(q)
        return Expr({(): q} if q else {})

    @staticmethod
    def atom(a) -> "Expr":
        return Expr({(a,): Fraction(1)})

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "Expr") -> "Expr":
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return Expr(terms)

    def __neg__(self) -> "Expr":
        return Expr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Expr") -> "Expr":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Expr({m: c * q for m, c in self.terms.items()})
        terms: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                merged = _mul_monomials(m1, m2)
                if merged is None:
                    continue
                sign, mono = merged
                terms[mono] = terms.get(mono, Fraction(0)) + sign * c1 * c2
        return Expr(terms)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        seen = {sum(a.parity for a in m) % 2 for m in self.terms}
        if not seen:
            return 0
        if len(seen) > 1:
            return None
        return seen.pop()

    # -- derivations --------------------------------------------------------

    def _derive(self, op: str) -> "Expr":
        op_parity = 1 if op in ("dp", "dm") else 0
        out = Expr()
        for mono, c in self.terms.items():
            for i, a in enumerate(mono):
                if isinstance(a, ExpAtom):
                    raise ValueError("cannot differentiate an exp(...) atom")
                sign, new_atom = _derive_atom(a, op)
                if op_parity and sum(b.parity for b in mono[:i]) % 2:
                    sign = -sign
                head = _mul_monomials(mono[:i], (new_atom,))
                if head is None:
                    continue
                s1, partial = head
                merged = _mul_monomials(partial, mono[i + 1:])
                if merged is None:
                    continue
                s2, new_mono = merged
                out = out + Expr({new_mono: c * sign * s1 * s2})
        return out

    def deriv_x(self) -> "Expr":
        return self._derive("dx")

    def deriv_y(self) -> "Expr":
        return self._derive("dy")

    def d_plus(self) -> "Expr":
        return self._derive("dp")

    def d_minus(self) -> "Expr":
        return self._derive("dm")

    def substitute(self, mapping: dict[str, "Expr"]) -> "Expr":
        """Replace named indeterminates, re-applying their derivative words."""
        out = Expr()
        for mono, c in self.terms.items():
            acc = Expr.rational(c)
            for a in mono:
                if isinstance(a, ExpAtom) or a.name not in mapping:
                    acc = acc * Expr({(a,): Fraction(1)})
                    continue
                rep = mapping[a.name]
                for _ in range(a.dm):
                    rep = rep.d_minus()
                for _ in range(a.dp):
                    rep = rep.d_plus()
                for _ in range(a.dx):
                    rep = rep.deriv_x()
                for _ in range(a.dy):
                    rep = rep.deriv_y()
                acc = acc * rep
            out = out + acc
        return out

    # -- rendering ------------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        def term_key(mono):
            return (len(mono),
                    tuple(_term_atom_key(a) for a in mono))
        parts = []
        for mono in sorted(self.terms, key=term_key):
            c = self.terms[mono]
            parts.append(_render_term(c, mono))
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __eq__(self, other):
        if not isinstance(other, Expr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Expr({self.render()})"


def _derive_atom(a: Atom, op: str) -> tuple[int, Atom]:
    if op == "dx":
        return 1, Atom(a.name, a.dx + 1, a.dy, a.dp, a.dm, a.base_parity)
    if op == "dy":
        return 1, Atom(a.name, a.dx, a.dy + 1, a.dp, a.dm, a.base_parity)
    if op == "dp":
        if a.dp:  # D+ D+ = dx
            return 1, Atom(a.name, a.dx + 1, a.dy, 0, a.dm, a.base_parity)
        return 1, Atom(a.name, a.dx, a.dy, 1, a.dm, a.base_parity)
    if op == "dm":
        sign = -1 if a.dp else 1  # D- passes D+ in the normal order
        if a.dm:  # D- D- = dy
            return sign, Atom(a.name, a.dx, a.dy + 1, a.dp, 0, a.base_parity)
        return sign, Atom(a.name, a.dx, a.dy, a.dp, 1, a.base_parity)
    raise ValueError(f"unknown derivation {op!r}")


def _term_atom_key(a):
    if isinstance(a, ExpAtom):
        return (1, 0, 0, "", 0, 0, 0, a.args)
    upper_first = 0 if not a.name[:1].islower() else 1
    return (0, -a.dp, -a.dm, a.name.lower(), upper_first, a.dx, a.dy, ())


def _render_term(c: Fraction, mono: tuple) -> str:
    bits = []
    run_atom = None
    run = 0
    for a in mono + (None,):
        if a is not None and a == run_atom:
            run += 1
            continue
        if run_atom is not None:
            bits.append(run_atom.render() if run == 1
                        else f"{run_atom.render()}^{run}")
        run_atom, run = a, 1
    coeff = ""
    if not bits:
        return str(c)
    if c == -1:
        coeff = "-"
    elif c != 1:
        coeff = _frac_str(c) + "*"
    return coeff + "*".join(bits)


def _frac_str(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"({c})"


def _linear_str(pairs) -> str:
    text = ""
    for coeff, name in pairs:
        piece = name if abs(coeff) == 1 else f"{_frac_str(abs(coeff))}*{name}"
        if not text:
            text = piece if coeff > 0 else f"-{piece}"
        else:
            text += f" + {piece}" if coeff > 0 else f" - {piece}"
    return text or "0"


def fn(name: str, parity: int = 0) -> Expr:
    return Expr.atom(Atom(name, base_parity=parity))


def exp_linear(pairs) -> Expr:
    """exp(sum coeff*name) as an opaque atom (canonically sorted args)."""
    args = tuple(sorted(((Fraction(c), n) for c, n in pairs if c),
                        key=lambda t: t[1]))
    return Expr.atom(ExpAtom(args))
