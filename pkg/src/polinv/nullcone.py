"""Hilbert-Mumford nullcone membership tests.

Torus modules are handled through strict separating functionals on the
weights that support a vector; binary forms through the classical root
multiplicity criterion, decided exactly by gcds of iterated partials;
matrices through identically vanishing characteristic coefficients.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .limits import DEFAULT_SEED
from .linalg import Matrix, frac, strict_positive_functional
from .poly import Poly, VariableLayout, homogeneous_bivariate_gcd

Q = Fraction


# ---------------------------------------------------------------------------
# Torus modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightSystem:
    """A diagonalized torus module: one integer weight vector per coordinate."""

    torus_rank: int
    weights: Tuple[tuple, ...]

    def __post_init__(self):
        for w in self.weights:
            if len(w) != self.torus_rank:
                raise ValueError("weight length does not match the torus rank")
            if any(not isinstance(x, int) for x in w):
                raise ValueError("weights must be integer vectors")

    @property
    def coordinates(self) -> int:
        return len(self.weights)


def torus_nullcone_member(ws: WeightSystem, v: Sequence) -> Optional[tuple]:
    """A cocharacter gamma positive on the support of v, or None.

    v lies in the nullcone exactly when such a gamma exists; the zero vector
    returns (1, ..., 1) by the empty-support convention.
    """
    if len(v) != ws.coordinates:
        raise ValueError("vector length does not match the module")
    support = []
    seen = set()
    for x, w in zip(v, ws.weights):
        if frac(x) != 0 and w not in seen:
            seen.add(w)
            support.append(w)
    return strict_positive_functional(support, dim=ws.torus_rank)


def v_gamma(ws: WeightSystem, gamma: Sequence[int]) -> tuple:
    """Indices of the coordinates with positive gamma-weight, sorted."""
    if len(gamma) != ws.torus_rank:
        raise ValueError("cocharacter length does not match the torus rank")
    return tuple(i for i, w in enumerate(ws.weights)
                 if sum(g * x for g, x in zip(gamma, w)) > 0)


@dataclass(frozen=True)
class SubspaceSpec:
    """A linear subspace given by spanning vectors in a fixed ambient space."""

    ambient_dim: int
    spanning_vectors: Tuple[tuple, ...]

    def __post_init__(self):
        for v in self.spanning_vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("spanning vector length does not match the ambient dimension")


def subspace_in_common_vgamma(ws: WeightSystem, L: SubspaceSpec) -> Optional[tuple]:
    """A single gamma positive on every support weight of the spanning vectors.

    When it exists the whole subspace lies in the corresponding positive part,
    hence in the nullcone.
    """
    if L.ambient_dim != ws.coordinates:
        raise ValueError("ambient dimension does not match the module")
    support = []
    seen = set()
    for v in L.spanning_vectors:
        for x, w in zip(v, ws.weights):
            if frac(x) != 0 and w not in seen:
                seen.add(w)
                support.append(w)
    return strict_positive_functional(support, dim=ws.torus_rank)


# --- independent brute-force oracle (used by agreement certificates) --------

_GRID_CACHE: dict = {}


def _grid(dim: int, bound: int) -> np.ndarray:
    key = (dim, bound)
    got = _GRID_CACHE.get(key)
    if got is None:
        axis = np.arange(-bound, bound + 1, dtype=np.int64)
        mesh = np.meshgrid(*([axis] * dim), indexing="ij")
        got = np.stack([m.ravel() for m in mesh], axis=1)
        _GRID_CACHE[key] = got
    return got


def brute_box_functional(points: Sequence[Sequence[int]], dim: int,
                         bound: int = 20) -> Optional[tuple]:
    """First integer gamma in the box [-bound, bound]^dim with all <gamma, p> > 0.

    Exhaustive integer enumeration (exact int64 arithmetic), independent of
    the Fourier-Motzkin path.  Empty input follows the (1, ..., 1) convention.
    """
    if not points:
        return tuple([1] * dim)
    pts = np.array([[int(x) for x in p] for p in points], dtype=np.int64)
    if pts.shape[1] != dim:
        raise ValueError("dimension mismatch")
    grid = _grid(dim, bound)
    feasible = (grid @ pts.T > 0).all(axis=1)
    idx = int(np.argmax(feasible))
    if not feasible[idx]:
        return None
    return tuple(int(x) for x in grid[idx])


# ---------------------------------------------------------------------------
# Binary forms
# ---------------------------------------------------------------------------

_BINARY_LAYOUT = VariableLayout(1, 2)


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form of degree d in x, y; coeffs[i] multiplies x^(d-i) y^i."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("need degree + 1 coefficients")
        object.__setattr__(self, "coeffs", tuple(frac(c) for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_poly(self) -> Poly:
        d = self.degree
        return Poly(_BINARY_LAYOUT, {(d - i, i): c for i, c in enumerate(self.coeffs) if c != 0})

    @classmethod
    def from_poly(cls, p: Poly, degree: Optional[int] = None) -> "BinaryForm":
        if p.layout.total != 2:
            raise ValueError("expected a polynomial in two variables")
        d = p.total_degree() if degree is None else degree
        if not p.is_zero() and (not p.is_homogeneous() or p.total_degree() != d):
            raise ValueError("polynomial is not homogeneous of the stated degree")
        return cls(d, tuple(p.coefficient((d - i, i)) for i in range(d + 1)))

    def evaluate(self, x, y) -> Fraction:
        x, y = frac(x), frac(y)
        d = self.degree
        return sum((c * x ** (d - i) * y ** i for i, c in enumerate(self.coeffs)), Q(0))

    def multiply(self, other: "BinaryForm") -> "BinaryForm":
        d = self.degree + other.degree
        out = [Q(0)] * (d + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BinaryForm(d, tuple(out))

    def scale(self, c) -> "BinaryForm":
        c = frac(c)
        return BinaryForm(self.degree, tuple(c * a for a in self.coeffs))

    def add(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def divide_linear(self, a, b) -> Optional["BinaryForm"]:
        """Exact quotient by the linear form a*x + b*y, or None if not divisible."""
        a, b = frac(a), frac(b)
        if a == 0 and b == 0:
            raise ValueError("division by the zero form")
        d = self.degree
        if d == 0:
            return None
        c = self.coeffs
        if a == 0:
            if c[0] != 0:
                return None
            return BinaryForm(d - 1, tuple(x / b for x in c[1:]))
        q = [Q(0)] * d
        q[0] = c[0] / a
        for i in range(1, d):
            q[i] = (c[i] - b * q[i - 1]) / a
        if c[d] - b * q[d - 1] != 0:
            return None
        return BinaryForm(d - 1, tuple(q))


def _multiplicity_partials(f: BinaryForm) -> List[Poly]:
    """All mixed partials of order floor(d/2); their common roots are exactly
    the roots of multiplicity exceeding d/2."""
    order = f.degree // 2
    p = f.to_poly()
    base = [p]
    for _ in range(order):
        nxt = []
        for q in base:
            nxt.append(q.derivative(0))
        nxt.append(base[-1].derivative(1))
        base = nxt
    return base


def binary_form_nullcone_member(f: BinaryForm) -> bool:
    """True when f has a linear factor of multiplicity at least floor(d/2)+1.

    The zero form is in the nullcone by convention.  Decided exactly: the
    homogeneous gcd of all partials of order floor(d/2) has positive degree
    if and only if such a factor exists (rational arithmetic is faithful to
    the algebraic closure here).
    """
    if f.is_zero():
        return True
    if f.degree < 1:
        return False
    partials = [p for p in _multiplicity_partials(f) if not p.is_zero()]
    g = homogeneous_bivariate_gcd(partials)
    return g.total_degree() >= 1


def binary_nullcone_witness(f: BinaryForm) -> Optional[BinaryForm]:
    """The rational linear form l with l^(floor(d/2)+1) dividing f, if any.

    A multiplicity-exceeding root is unique, hence Galois-stable, hence
    rational or at infinity; the witness is returned with integer coefficients
    and verified by exact division.
    """
    if f.is_zero():
        raise ValueError("witness of the zero form")
    if f.degree < 1:
        return None
    partials = [p for p in _multiplicity_partials(f) if not p.is_zero()]
    g = homogeneous_bivariate_gcd(partials)
    e = g.total_degree()
    if e < 1:
        return None
    top = g.coefficient((e, 0))
    if top != 0:
        t = g.coefficient((e - 1, 1)) / (e * top)
        a, b = t.denominator, t.numerator
    else:
        a, b = 0, 1
    m = f.degree // 2 + 1
    quotient = f
    for _ in range(m):
        quotient = quotient.divide_linear(a, b)
        if quotient is None:
            raise AssertionError("internal error: witness fails to divide the form")
    return BinaryForm(1, (a, b))


# ---------------------------------------------------------------------------
# Matrix nilpotency
# ---------------------------------------------------------------------------

def _lift_entries(mat) -> Tuple[list, Optional[VariableLayout]]:
    if isinstance(mat, Matrix):
        rows = mat.to_rows()
    else:
        rows = [list(r) for r in mat]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    layout = None
    for r in rows:
        for x in r:
            if isinstance(x, Poly):
                layout = x.layout
                break
        if layout:
            break
    if layout is None:
        return [[frac(x) for x in r] for r in rows], None
    lifted = []
    for r in rows:
        lifted.append([x if isinstance(x, Poly) else Poly.constant(layout, x) for x in r])
    return lifted, layout


def _det(rows) -> object:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        a = rows[0][j]
        if isinstance(a, Poly):
            if a.is_zero():
                continue
        elif a == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det(minor)
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    if total is None:
        total = rows[0][0] * 0
    return total


def matrix_nilpotent(mat) -> bool:
    """True when every characteristic coefficient vanishes identically.

    Entries may be rationals or polynomials; for size n this checks that the
    sums of principal minors of every order 1..n are (identically) zero.
    """
    rows, layout = _lift_entries(mat)
    n = len(rows)
    for k in range(1, n + 1):
        total = None
        for subset in combinations(range(n), k):
            sub = [[rows[i][j] for j in subset] for i in subset]
            d = _det(sub)
            total = d if total is None else total + d
        if layout is None:
            if total != 0:
                return False
        else:
            if not total.is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# One-sided span probing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeVerdict:
    """Outcome of random probing of a span against a membership test.

    escaped=True is a proof that the span is not contained in the nullcone;
    escaped=False only reports that all probes stayed inside (never a proof).
    """

    escaped: bool
    witness_coefficients: Optional[tuple]
    witness_vector: Optional[tuple]
    trials: int
    seed: int


def span_probe_nullcone(member: Callable[[tuple], bool], L: SubspaceSpec,
                        trials: int = 64, seed: int = DEFAULT_SEED) -> ProbeVerdict:
    """Probe random rational combinations of the spanning vectors.

    Coefficients are drawn from the integers -9..9; the verdict records the
    seed for reproducibility.
    """
    rng = random.Random(seed)
    k = len(L.spanning_vectors)
    vs = [tuple(frac(x) for x in v) for v in L.spanning_vectors]
    for _ in range(trials):
        coeffs = tuple(rng.randint(-9, 9) for _ in range(k))
        combo = tuple(sum((c * v[i] for c, v in zip(coeffs, vs)), Q(0))
                      for i in range(L.ambient_dim))
        if not member(combo):
            return ProbeVerdict(True, coeffs, combo, trials, seed)
    return ProbeVerdict(False, None, None, trials, seed)


# ---------------------------------------------------------------------------
# Packaged certificate: torus nullcone membership against brute force
# ---------------------------------------------------------------------------

def _random_weight_system(rng: random.Random) -> WeightSystem:
    tr = rng.randint(1, 3)
    ncoords = rng.randint(1, 6)
    weights = tuple(tuple(rng.randint(-3, 3) for _ in range(tr)) for _ in range(ncoords))
    return WeightSystem(tr, weights)


def _random_vector(rng: random.Random, ncoords: int) -> tuple:
    # half the entries are zero so the supports actually vary
    out = []
    for _ in range(ncoords):
        zero = rng.randint(0, 1)
        sign = 1 if rng.randint(0, 1) else -1
        value = rng.randint(1, 9)
        out.append(0 if zero else sign * value)
    return tuple(out)


def certify_torus(seed: int = DEFAULT_SEED, caps=None, systems: int = 50,
                  vectors_per_system: int = 20, subspaces_per_system: int = 3,
                  probe_trials: int = 64, box_bound: int = 20) -> dict:
    """Torus nullcone certificates on seeded random weight systems.

    For every system the decision procedure is compared with the exhaustive
    integer box search; every returned cocharacter is re-validated on the
    support; and random planes whose probes all stay in the nullcone must
    admit one common positive cocharacter (and conversely).
    """
    from .limits import DEFAULT_CAPS
    from .reports import check, make_report

    caps = caps or DEFAULT_CAPS
    rng = random.Random(seed)
    vector_queries = 0
    agreements = 0
    witness_valid = 0
    witnesses_returned = 0
    planes = 0
    planes_contained = 0
    lemma_ok = True
    soundness_ok = True
    for _ in range(systems):
        ws = _random_weight_system(rng)
        cache: dict = {}

        def brute_feasible(support) -> bool:
            key = tuple(sorted(set(support)))
            got = cache.get(key)
            if got is None:
                got = brute_box_functional(key, ws.torus_rank, box_bound) is not None
                cache[key] = got
            return got

        for _ in range(vectors_per_system):
            v = _random_vector(rng, ws.coordinates)
            gamma = torus_nullcone_member(ws, v)
            support = [w for x, w in zip(v, ws.weights) if x != 0]
            vector_queries += 1
            if (gamma is not None) == brute_feasible(support):
                agreements += 1
            if gamma is not None:
                witnesses_returned += 1
                if all(sum(g * x for g, x in zip(gamma, w)) > 0 for w in support):
                    witness_valid += 1
        for _ in range(subspaces_per_system):
            v1 = _random_vector(rng, ws.coordinates)
            v2 = _random_vector(rng, ws.coordinates)
            L = SubspaceSpec(ws.coordinates, (v1, v2))
            gamma = subspace_in_common_vgamma(ws, L)
            probe = span_probe_nullcone(
                lambda vec: torus_nullcone_member(ws, vec) is not None,
                L, trials=probe_trials, seed=seed)
            planes += 1
            if not probe.escaped:
                planes_contained += 1
                if gamma is None:
                    lemma_ok = False
            if gamma is not None and probe.escaped:
                soundness_ok = False

    checks = [
        check("box_oracle_agreement", agreements == vector_queries,
              agreements=agreements, queries=vector_queries),
        check("witnesses_strictly_positive", witness_valid == witnesses_returned,
              witnesses=witnesses_returned),
        check("contained_planes_admit_common_cocharacter", lemma_ok,
              planes=planes, contained=planes_contained),
        check("common_cocharacter_implies_containment", soundness_ok),
    ]
    return make_report(
        "torus", seed, caps, checks,
        systems=systems,
        vectors_per_system=vectors_per_system,
        subspaces_per_system=subspaces_per_system,
        box_bound=box_bound,
        conclusion="torus nullcone membership matches exhaustive search and "
                   "planes inside the nullcone lie in one positive part",
    )


# ---------------------------------------------------------------------------
# Spec files
# ---------------------------------------------------------------------------

def weight_system_from_spec(spec: dict) -> WeightSystem:
    return WeightSystem(int(spec["torus_rank"]),
                        tuple(tuple(int(x) for x in w) for w in spec["weights"]))


def binary_form_from_spec(spec: dict) -> BinaryForm:
    return BinaryForm(int(spec["degree"]), tuple(frac(str(c)) for c in spec["coeffs"]))


def load_weight_system(path: str) -> WeightSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return weight_system_from_spec(json.load(fh))


def load_binary_form(path: str) -> BinaryForm:
    with open(path, "r", encoding="utf-8") as fh:
        return binary_form_from_spec(json.load(fh))
