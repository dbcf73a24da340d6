"""Finite matrix groups acting diagonally on polynomial rings.

Groups are given by rational generator matrices and enumerated to a full
element list by breadth-first closure.  The polynomial action follows the
left-action convention (g.p)(v) = p(g^{-1} v), applied per block.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Optional, Sequence, Tuple

from .limits import CapExceededError, DEFAULT_CAPS
from .linalg import Matrix, frac, inverse, rank
from .poly import Poly, VariableLayout

Q = Fraction


@dataclass(frozen=True)
class MatrixGroup:
    """A finite group of invertible rational matrices, fully enumerated."""

    dimension: int
    generators: Tuple[Matrix, ...]
    elements: Tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def enumerate_group(generators: Sequence[Matrix], cap: int = DEFAULT_CAPS.group_order) -> MatrixGroup:
    """Close the generators under multiplication, breadth-first from the identity.

    The element order is deterministic: BFS layer by layer, multiplying on the
    right by the generators in the order given.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].rows
    for g in gens:
        if g.rows != g.cols or g.rows != n:
            raise ValueError("generators must be square matrices of equal size")
        if rank(g) != n:
            raise ValueError("generator is not invertible")
    ident = Matrix.identity(n)
    elements = [ident]
    seen = {ident.entries}
    queue = deque([ident])
    while queue:
        e = queue.popleft()
        for g in gens:
            f = e @ g
            if f.entries not in seen:
                if len(elements) >= cap:
                    raise CapExceededError("group too large", "group_order", cap)
                seen.add(f.entries)
                elements.append(f)
                queue.append(f)
    return MatrixGroup(n, tuple(gens), tuple(elements))


def _perm_matrix(perm: Sequence[int]) -> Matrix:
    n = len(perm)
    return Matrix(n, n, tuple(Q(1) if i == perm[j] else Q(0)
                              for i in range(n) for j in range(n)))


def builtin_family(name: str, m: int, cap: int = DEFAULT_CAPS.group_order) -> MatrixGroup:
    """Standard reflection representations as signed permutation matrices.

    S = symmetric group permuting coordinates, B = all signed permutations,
    D = permutations with an even number of sign changes (needs m >= 2).
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    gens: List[Matrix] = []
    if m >= 2:
        swap = list(range(m))
        swap[0], swap[1] = 1, 0
        gens.append(_perm_matrix(swap))
        if m >= 3:
            gens.append(_perm_matrix([(i + 1) % m for i in range(m)]))
    if name == "S":
        if m == 1:
            gens = [Matrix.identity(1)]
    elif name == "B":
        diag = [Q(1)] * m
        diag[0] = Q(-1)
        gens.append(Matrix(m, m, tuple(diag[i] if i == j else Q(0)
                                       for i in range(m) for j in range(m))))
    elif name == "D":
        if m < 2:
            raise ValueError("family D needs m >= 2")
        diag = [Q(1)] * m
        diag[0] = diag[1] = Q(-1)
        gens.append(Matrix(m, m, tuple(diag[i] if i == j else Q(0)
                                       for i in range(m) for j in range(m))))
    else:
        raise ValueError(f"unsupported family {name!r} (expected S, B or D)")
    return enumerate_group(gens, cap)


@dataclass(frozen=True)
class DiagonalAction:
    """A group acting identically on each block of a layout (the action on V^n)."""

    group: MatrixGroup
    layout: VariableLayout

    def __post_init__(self):
        if self.layout.vars_per_block != self.group.dimension:
            raise ValueError("layout block size must equal the group dimension")


@lru_cache(maxsize=None)
def _inverse_cached(g: Matrix) -> Matrix:
    return inverse(g)


@lru_cache(maxsize=None)
def _substitution_images(g: Matrix, layout: VariableLayout):
    """Variable images realizing p |-> p(g^{-1} .) blockwise."""
    inv = _inverse_cached(g)
    m = layout.vars_per_block
    images = {}
    for a in range(layout.blocks):
        for j in range(m):
            terms = {}
            for i in range(m):
                c = inv.at(j, i)
                if c != 0:
                    exps = [0] * layout.total
                    exps[a * m + i] = 1
                    terms[tuple(exps)] = c
            images[a * m + j] = Poly(layout, terms)
    return images


@lru_cache(maxsize=None)
def _signed_perm_map(g: Matrix):
    """(perm, signs) when g^{-1} maps each variable to a signed variable, else None.

    For signed permutation matrices the substitution is a monomial map, which
    lets act() remap exponent tuples directly instead of expanding products.
    """
    inv = _inverse_cached(g)
    perm, signs = [], []
    for j in range(inv.rows):
        row = inv.row(j)
        nz = [(i, c) for i, c in enumerate(row) if c != 0]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            return None
        perm.append(nz[0][0])
        signs.append(1 if nz[0][1] > 0 else -1)
    return tuple(perm), tuple(signs)


def act(g: Matrix, p: Poly, action: DiagonalAction) -> Poly:
    """(g.p)(v) = p(g^{-1} v), applied to every block of the layout."""
    if p.layout != action.layout:
        raise ValueError("polynomial layout does not match the action")
    sp = _signed_perm_map(g)
    if sp is None:
        return p.substitute(_substitution_images(g, action.layout))
    perm, signs = sp
    layout = action.layout
    m = layout.vars_per_block
    total = layout.total
    terms = {}
    for e, c in p._terms.items():
        ne = [0] * total
        flip = False
        for a in range(layout.blocks):
            base = a * m
            for j in range(m):
                k = e[base + j]
                if k:
                    ne[base + perm[j]] = k
                    if signs[j] < 0 and (k & 1):
                        flip = not flip
        terms[tuple(ne)] = -c if flip else c
    out = Poly.__new__(Poly)
    object.__setattr__(out, "layout", layout)
    object.__setattr__(out, "_terms", terms)
    return out


def reynolds(p: Poly, action: DiagonalAction) -> Poly:
    """Average over the group: (1/|G|) sum_g g.p.  Projects onto invariants."""
    total = Poly.zero(p.layout)
    for g in action.group.elements:
        total = total + act(g, p, action)
    return total * Fraction(1, action.group.order)


def is_invariant(p: Poly, action: DiagonalAction) -> bool:
    return all(act(g, p, action) == p for g in action.group.generators)


def _compositions(total: int, parts: int):
    """All tuples of `parts` non-negative integers summing to `total`, lex descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials_of_multidegree(layout: VariableLayout, deg: Sequence[int]) -> List[tuple]:
    """Exponent tuples with the given total degree in each block, deterministic order."""
    if len(deg) != layout.blocks:
        raise ValueError("multidegree length does not match layout")
    blocks: List[List[tuple]] = [list(_compositions(d, layout.vars_per_block)) for d in deg]
    out = [()]
    for options in blocks:
        out = [prefix + opt for prefix in out for opt in options]
    return out


def count_monomials(layout: VariableLayout, deg: Sequence[int]) -> int:
    m = layout.vars_per_block
    n = 1
    for d in deg:
        n *= comb(d + m - 1, m - 1)
    return n


def invariant_dimension(action: DiagonalAction, deg: Sequence[int],
                        monomial_cap: int = DEFAULT_CAPS.monomials) -> int:
    """Exact dimension of the invariant subspace in one multidegree.

    Computed as the rank of the Reynolds images of all monomials of that
    multidegree.  Refuses with a cap error instead of degrading when the
    monomial basis is too large.
    """
    deg = tuple(deg)
    n_mono = count_monomials(action.layout, deg)
    if n_mono > monomial_cap:
        raise CapExceededError("degree too large", "monomials", monomial_cap)
    monos = monomials_of_multidegree(action.layout, deg)
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    seen = set()
    for e in monos:
        image = reynolds(Poly.monomial(action.layout, e), action)
        if image.is_zero():
            continue
        vec = [Q(0)] * n_mono
        for ee, c in image._terms.items():
            vec[index[ee]] = c
        # normalize so scalar-multiple images collapse to one row
        lead = next(x for x in vec if x != 0)
        key = tuple(x / lead for x in vec)
        if key not in seen:
            seen.add(key)
            rows.append(key)
    if not rows:
        return 0
    return rank(Matrix.from_rows(rows))


def same_orbit(v: Sequence, w: Sequence, action: DiagonalAction) -> bool:
    """True when some group element maps v to w, blockwise matrix action."""
    total = action.layout.total
    if len(v) != total or len(w) != total:
        raise ValueError("vector length does not match layout")
    m = action.layout.vars_per_block
    v = [frac(x) for x in v]
    w = tuple(frac(x) for x in w)
    for g in action.group.elements:
        image = []
        for a in range(action.layout.blocks):
            image.extend(g.matvec(v[a * m : (a + 1) * m]))
        if tuple(image) == w:
            return True
    return False


# ---------------------------------------------------------------------------
# Group spec files:  {"builtin": {"family": "D", "m": 4}}
#                or  {"generators": [["1","0","0","1"], ...]}  (row-major)
# ---------------------------------------------------------------------------

def group_from_spec(spec: dict, cap: int = DEFAULT_CAPS.group_order) -> MatrixGroup:
    if "builtin" in spec:
        b = spec["builtin"]
        return builtin_family(b["family"], int(b["m"]), cap)
    if "generators" in spec:
        gens = []
        for flat in spec["generators"]:
            k = len(flat)
            n = int(round(k ** 0.5))
            if n * n != k:
                raise ValueError("generator entry count is not a perfect square")
            gens.append(Matrix(n, n, tuple(frac(str(x)) for x in flat)))
        return enumerate_group(gens, cap)
    raise ValueError("group spec needs a 'builtin' or 'generators' key")


def load_group_file(path: str, cap: int = DEFAULT_CAPS.group_order) -> MatrixGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return group_from_spec(json.load(fh), cap)
