"""Exact multivariate polynomials over Q with a block multigrading.

Variables are organized into `blocks` blocks of `vars_per_block` variables
each; block a, slot j is the canonical index a*vars_per_block + j.  The
multidegree of a monomial is the tuple of its total degrees per block.
Term order everywhere is graded lexicographic on exponent vectors
(descending), which makes every serialization and basis deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence

from .linalg import frac

Q = Fraction


@dataclass(frozen=True)
class VariableLayout:
    """n blocks of m variables; block a, slot j has canonical index a*m + j."""

    blocks: int
    vars_per_block: int

    def __post_init__(self):
        if self.blocks < 1 or self.vars_per_block < 1:
            raise ValueError("layout needs at least one block and one variable per block")

    @property
    def total(self) -> int:
        return self.blocks * self.vars_per_block

    def index(self, block: int, slot: int) -> int:
        if not (0 <= block < self.blocks and 0 <= slot < self.vars_per_block):
            raise ValueError("variable position out of range")
        return block * self.vars_per_block + slot

    def block_of(self, index: int) -> int:
        return index // self.vars_per_block

    def var_name(self, index: int) -> str:
        a, j = divmod(index, self.vars_per_block)
        return f"x{a + 1}_{j + 1}"

    def block_degrees(self, exponents: Sequence[int]) -> tuple:
        m = self.vars_per_block
        return tuple(sum(exponents[a * m : (a + 1) * m]) for a in range(self.blocks))


def glex_key(exponents: Sequence[int]):
    """Sort key for graded lexicographic order (use reverse=True for descending)."""
    return (sum(exponents), tuple(exponents))


class Poly:
    """Sparse exact polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("layout", "_terms")

    def __init__(self, layout: VariableLayout, terms: Optional[Dict[tuple, Fraction]] = None):
        clean: Dict[tuple, Fraction] = {}
        if terms:
            n = layout.total
            for exps, c in terms.items():
                if len(exps) != n:
                    raise ValueError("exponent tuple length does not match layout")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                c = frac(c)
                if c != 0:
                    exps = tuple(exps)
                    acc = clean.get(exps)
                    c = c if acc is None else acc + c
                    if c == 0:
                        clean.pop(exps, None)
                    else:
                        clean[exps] = c
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "_terms", clean)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, layout: VariableLayout) -> "Poly":
        return cls(layout)

    @classmethod
    def constant(cls, layout: VariableLayout, c) -> "Poly":
        return cls(layout, {tuple([0] * layout.total): frac(c)})

    @classmethod
    def variable(cls, layout: VariableLayout, index: int) -> "Poly":
        if not (0 <= index < layout.total):
            raise ValueError("variable index out of range")
        exps = [0] * layout.total
        exps[index] = 1
        return cls(layout, {tuple(exps): Q(1)})

    @classmethod
    def monomial(cls, layout: VariableLayout, exponents: Sequence[int], coeff=1) -> "Poly":
        return cls(layout, {tuple(exponents): frac(coeff)})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list:
        """Terms as (exponents, coefficient) pairs in graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda t: glex_key(t[0]), reverse=True)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Q(0))

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def multidegree(self) -> Optional[tuple]:
        """The common block multidegree, or None if not multihomogeneous.

        The zero polynomial counts as multihomogeneous of every multidegree
        and returns None as well; callers that need a degree must check
        is_zero first.
        """
        degs = {self.layout.block_degrees(e) for e in self._terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    # -- ring operations ----------------------------------------------------

    def _check_layout(self, other: "Poly"):
        if self.layout != other.layout:
            raise ValueError("layout mismatch")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.layout, other)
        self._check_layout(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, Q(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        out = Poly.__new__(Poly)
        object.__setattr__(out, "layout", self.layout)
        object.__setattr__(out, "_terms", terms)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        object.__setattr__(out, "layout", self.layout)
        object.__setattr__(out, "_terms", {e: -c for e, c in self._terms.items()})
        return out

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.layout, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = frac(other)
            if c == 0:
                return Poly.zero(self.layout)
            out = Poly.__new__(Poly)
            object.__setattr__(out, "layout", self.layout)
            object.__setattr__(out, "_terms", {e: c * v for e, v in self._terms.items()})
            return out
        self._check_layout(other)
        terms: Dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Q(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = Poly.__new__(Poly)
        object.__setattr__(out, "layout", self.layout)
        object.__setattr__(out, "_terms", terms)
        return out

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(self.layout, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if self._terms and len(self._terms) > 1:
                return False
            return self == Poly.constant(self.layout, other)
        return self.layout == other.layout and self._terms == other._terms

    def __hash__(self):
        return hash((self.layout, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Poly({poly_to_string(self)!r})"

    # -- calculus and structure ---------------------------------------------

    def derivative(self, var: int) -> "Poly":
        if not (0 <= var < self.layout.total):
            raise ValueError("variable index out of range")
        terms: Dict[tuple, Fraction] = {}
        for e, c in self._terms.items():
            k = e[var]
            if k:
                ne = list(e)
                ne[var] = k - 1
                terms[tuple(ne)] = c * k
        return Poly(self.layout, terms)

    def substitute(self, images: Dict[int, "Poly"]) -> "Poly":
        """Substitute polynomials for variables.

        All image polynomials must share one layout (the target).  Variables
        without an image map to the variable with the same canonical index in
        the target layout, so the identity substitution is the default.
        """
        if not images:
            return self
        target = None
        for p in images.values():
            if target is None:
                target = p.layout
            elif p.layout != target:
                raise ValueError("substitution images live in different layouts")
        pow_cache: Dict[tuple, Poly] = {}

        def image_power(j: int, e: int) -> Poly:
            key = (j, e)
            got = pow_cache.get(key)
            if got is None:
                base = images.get(j)
                if base is None:
                    if j >= target.total:
                        raise ValueError("unmapped variable has no counterpart in target layout")
                    base = Poly.variable(target, j)
                got = base ** e
                pow_cache[key] = got
            return got

        result = Poly.zero(target)
        for exps, c in self._terms.items():
            term = Poly.constant(target, c)
            for j, e in enumerate(exps):
                if e:
                    term = term * image_power(j, e)
            result = result + term
        return result

    def multidegree_components(self) -> Dict[tuple, "Poly"]:
        """Split into multihomogeneous parts; the values sum back to self."""
        buckets: Dict[tuple, Dict[tuple, Fraction]] = {}
        for e, c in self._terms.items():
            buckets.setdefault(self.layout.block_degrees(e), {})[e] = c
        return {deg: Poly(self.layout, terms) for deg, terms in sorted(buckets.items(), key=lambda kv: glex_key(kv[0]))}

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.layout.total:
            raise ValueError("point length does not match layout")
        point = [frac(x) for x in point]
        total = Q(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total


def is_scalar_multiple(p: Poly, q: Poly) -> bool:
    """True when p = c*q for a nonzero rational c (zero is a multiple of zero only)."""
    if p.layout != q.layout:
        return False
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    if set(p._terms) != set(q._terms):
        return False
    e0 = next(iter(p._terms))
    c = p._terms[e0] / q._terms[e0]
    return all(cp == c * q._terms[e] for e, cp in p._terms.items())


# ---------------------------------------------------------------------------
# Text grammar:  signed terms  c*x{a}_{j}^e*...   e.g.  3/2*x1_2^2*x2_1 - x1_1
# Aliases x1..xm (block 1) and y1..ym (block 2) are accepted when blocks <= 2.
# ---------------------------------------------------------------------------

_COEFF_RE = re.compile(r"^\d+(/\d+)?$")
_VAR_RE = re.compile(r"^(x|y)(\d+)(?:_(\d+))?(?:\^(\d+))?$")


def _resolve_var(layout: VariableLayout, letter: str, a: int, j: Optional[int]) -> int:
    if j is not None:
        # canonical x{block}_{slot}
        if letter != "x":
            raise ValueError(f"unknown variable '{letter}{a}_{j}'")
        return layout.index(a - 1, j - 1)
    # alias form, only for one or two blocks
    if layout.blocks > 2:
        raise ValueError("variable aliases x1..xm / y1..ym need at most two blocks")
    block = 0 if letter == "x" else 1
    if block >= layout.blocks:
        raise ValueError("alias 'y' needs a second block")
    return layout.index(block, a - 1)


def parse_poly(text: str, layout: VariableLayout) -> Poly:
    """Parse the polynomial text grammar exactly (no floating point)."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial text")
    chunks = re.findall(r"[+-]?[^+-]+", s)
    if "".join(chunks) != s:
        raise ValueError(f"cannot parse polynomial text: {text!r}")
    result = Poly.zero(layout)
    for chunk in chunks:
        sign = Q(1)
        body = chunk
        if body[0] in "+-":
            if body[0] == "-":
                sign = Q(-1)
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exps = [0] * layout.total
        saw_var = False
        factors = body.split("*")
        for pos, factor in enumerate(factors):
            if pos == 0 and _COEFF_RE.match(factor):
                coeff = coeff * Fraction(factor)
                continue
            m = _VAR_RE.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            letter, a, j, e = m.group(1), int(m.group(2)), m.group(3), m.group(4)
            idx = _resolve_var(layout, letter, a, int(j) if j else None)
            exps[idx] += int(e) if e else 1
            saw_var = True
        if not saw_var and not _COEFF_RE.match(factors[0]):
            raise ValueError(f"bad term {chunk!r} in {text!r}")
        result = result + Poly.monomial(layout, exps, coeff)
    return result


def poly_to_string(p: Poly) -> str:
    """Serialize in graded-lex descending order using canonical names."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.terms():
        factors = []
        for j, e in enumerate(exps):
            if e:
                name = p.layout.var_name(j)
                factors.append(name if e == 1 else f"{name}^{e}")
        mag = abs(c)
        if not factors:
            core = str(mag)
        elif mag == 1:
            core = "*".join(factors)
        else:
            core = str(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + core)
        else:
            parts.append(("- " if c < 0 else "+ ") + core)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Homogeneous gcd in two variables
# ---------------------------------------------------------------------------

def _uni_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _uni_mod(a: list, b: list) -> list:
    # remainder of a by b, coefficient lists ascending in degree, b nonzero
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lead
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= q * bc
        _uni_trim(a)
        if not a:
            break
    return a


def _uni_gcd(a: list, b: list) -> list:
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        a, b = b, _uni_mod(a, b)
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def homogeneous_bivariate_gcd(polys: Iterable[Poly]) -> Poly:
    """Monic gcd of homogeneous polynomials in two variables.

    Gcds over Q stay correct over the algebraic closure, so this decides
    common roots exactly.  Each input must be homogeneous; zero inputs are
    ignored and all-zero input is an error.
    """
    ps = [p for p in polys if not p.is_zero()]
    if not ps:
        raise ValueError("gcd of all-zero inputs")
    layout = ps[0].layout
    if layout.total != 2:
        raise ValueError("homogeneous gcd needs exactly two variables")
    if any(p.layout != layout for p in ps):
        raise ValueError("layout mismatch")
    if any(not p.is_homogeneous() for p in ps):
        raise ValueError("inputs must be homogeneous")
    g = None
    k_common = None
    for p in ps:
        d = p.total_degree()
        k = min(e[1] for e in p._terms)  # largest common power of the second variable
        u = [Q(0)] * (d - k + 1)
        for (i, j), c in p._terms.items():
            u[i] = c
        g = u if g is None else _uni_gcd(g, u)
        k_common = k if k_common is None else min(k_common, k)
    g = _uni_trim(list(g))
    deg = len(g) - 1
    terms = {}
    for i, c in enumerate(g):
        if c != 0:
            terms[(i, deg - i + k_common)] = c
    return Poly(layout, terms)
