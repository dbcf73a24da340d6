"""Matrix Lie algebras and the nilpotency / polarization-index certificates.

Covers sl_n and so5 (realized as skew-symmetric 5x5 matrices), bracket
closures of subspaces, invariant dimensions of SL2 on binary-form modules via
the joint kernel of the e, f, h derivations, the so5 trace invariants with
their order-2 polarizations, and the packaged certificates built from them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

from .limits import CapExceededError, Caps, DEFAULT_CAPS, DEFAULT_SEED
from .linalg import Matrix, frac, rank, rref, solve_in_span
from .nullcone import SubspaceSpec, matrix_nilpotent, span_probe_nullcone
from .poly import Poly, VariableLayout
from .polarization import polarize
from .reports import check, make_report

Q = Fraction


def unit_matrix(n: int, i: int, j: int) -> Matrix:
    """E_ij, the matrix with a single 1 in row i, column j."""
    return Matrix(n, n, tuple(Q(1) if (r, c) == (i, j) else Q(0)
                              for r in range(n) for c in range(n)))


def bracket(a: Matrix, b: Matrix) -> Matrix:
    """Commutator ab - ba, exactly."""
    if a.rows != a.cols or a.rows != b.rows or b.rows != b.cols:
        raise ValueError("bracket needs square matrices of equal size")
    return a @ b - b @ a


@dataclass(frozen=True)
class LieAlgebraBasis:
    """A matrix Lie algebra given by a basis, checked to be bracket-closed."""

    name: str
    matrix_size: int
    basis: Tuple[Matrix, ...]

    def __post_init__(self):
        flat = [list(b.entries) for b in self.basis]
        if rank(Matrix.from_rows(flat)) != len(self.basis):
            raise ValueError("basis matrices are linearly dependent")
        for x in self.basis:
            for y in self.basis:
                if solve_in_span(flat, list(bracket(x, y).entries)) is None:
                    raise ValueError("basis is not closed under the bracket")

    @property
    def dimension(self) -> int:
        return len(self.basis)


def sl(n: int) -> LieAlgebraBasis:
    """Traceless n x n matrices: E_ij (i != j) and E_ii - E_{i+1,i+1}."""
    basis = [unit_matrix(n, i, j) for i in range(n) for j in range(n) if i != j]
    basis += [unit_matrix(n, i, i) - unit_matrix(n, i + 1, i + 1) for i in range(n - 1)]
    return LieAlgebraBasis(f"sl_{n}", n, tuple(basis))


def so5() -> LieAlgebraBasis:
    """Skew-symmetric 5 x 5 matrices, basis E_ij - E_ji for i < j."""
    basis = [unit_matrix(5, i, j) - unit_matrix(5, j, i)
             for i in range(5) for j in range(i + 1, 5)]
    return LieAlgebraBasis("so5", 5, tuple(basis))


@dataclass(frozen=True)
class LieSubspace:
    """A subspace of a matrix Lie algebra spanned by rational matrices."""

    algebra: LieAlgebraBasis
    spanning: Tuple[Matrix, ...]

    def __post_init__(self):
        flat = [list(b.entries) for b in self.algebra.basis]
        for m in self.spanning:
            if solve_in_span(flat, list(m.entries)) is None:
                raise ValueError("spanning matrix lies outside the algebra")


def subalgebra_closure(sub: LieSubspace, cap: Optional[int] = None) -> List[Matrix]:
    """Smallest bracket-closed subspace containing the span, as a deterministic
    basis (reduced row echelon rows of flattened matrices)."""
    if cap is None:
        cap = sub.algebra.dimension
    n = sub.algebra.matrix_size

    def reduce(rows):
        red, rk, _ = rref(Matrix.from_rows(rows))
        return [list(red.row(i)) for i in range(rk)]

    rows = reduce([list(m.entries) for m in sub.spanning])
    while True:
        mats = [Matrix(n, n, tuple(r)) for r in rows]
        candidates = list(rows)
        for i, x in enumerate(mats):
            for y in mats[i + 1:]:
                candidates.append(list(bracket(x, y).entries))
        new_rows = reduce(candidates)
        if len(new_rows) > cap:
            raise CapExceededError("closure exceeds the algebra dimension cap",
                                   "closure_dimension", cap)
        if len(new_rows) == len(rows):
            return [Matrix(n, n, tuple(r)) for r in new_rows]
        rows = new_rows


# ---------------------------------------------------------------------------
# SL2 invariants on binary-form modules, via the e, f, h derivations
# ---------------------------------------------------------------------------
#
# On R_d with monomial basis m_i = x^(d-i) y^i the standard operators act as
# e.m_i = i m_{i-1}, f.m_i = (d-i) m_{i+1}, h.m_i = (d-2i) m_i.  The induced
# derivations on the coefficient variables carry a global minus sign so that
# [e, f] = h holds at the operator level; either sign gives the same kernel.

def sl2_derivation_rules(module: Sequence[int]):
    """Rules (target var, source var, coefficient) for the e, f, h derivations
    on the coefficient variables of R_{d_1} + ... + R_{d_k}."""
    rules_e, rules_f, rules_h = [], [], []
    offset = 0
    for d in module:
        for i in range(d + 1):
            if i >= 1:
                rules_e.append((offset + i - 1, offset + i, -Q(i)))
            if i <= d - 1:
                rules_f.append((offset + i + 1, offset + i, -Q(d - i)))
            if d - 2 * i != 0:
                rules_h.append((offset + i, offset + i, -Q(d - 2 * i)))
        offset += d + 1
    return rules_e, rules_f, rules_h


def apply_derivation(rules, layout: VariableLayout, exps: tuple) -> Poly:
    """Apply a derivation (given by rules) to a single monomial."""
    terms = {}
    for j, i, a in rules:
        k = exps[j]
        if k:
            ne = list(exps)
            ne[j] = k - 1
            ne[i] += 1
            key = tuple(ne)
            c = terms.get(key, Q(0)) + a * k
            if c == 0:
                terms.pop(key, None)
            else:
                terms[key] = c
    return Poly(layout, terms)


_SL2_SELFTEST_DONE = False


def _sl2_selftest():
    """Convention check: the discriminant of R_2 must be annihilated."""
    global _SL2_SELFTEST_DONE
    if _SL2_SELFTEST_DONE:
        return
    layout = VariableLayout(1, 3)
    c0, c1, c2 = (Poly.variable(layout, i) for i in range(3))
    disc = c1 * c1 - 4 * c0 * c2
    for rules in sl2_derivation_rules((2,)):
        image = Poly.zero(layout)
        for exps, c in disc.terms():
            image = image + apply_derivation(rules, layout, exps) * c
        if not image.is_zero():
            raise AssertionError("sl2 derivation convention broken: discriminant not annihilated")
    _SL2_SELFTEST_DONE = True


def _module_monomials(module: Sequence[int], deg: Sequence[int]):
    """Exponent tuples with the given total degree in each summand's variables."""
    from .groups import _compositions
    parts = [list(_compositions(d, m + 1)) for d, m in zip(deg, module)]
    out = [()]
    for options in parts:
        out = [prefix + opt for prefix in out for opt in options]
    return out


def sl2_invariant_dimension(module: Sequence[int], deg: Sequence[int],
                            monomial_cap: int = DEFAULT_CAPS.monomials) -> int:
    """Dimension of the SL2-invariants of multidegree `deg` in the coefficients
    of R_{d_1} + ... + R_{d_k}, as the joint kernel of the e, f, h derivations."""
    module = tuple(int(d) for d in module)
    deg = tuple(int(x) for x in deg)
    if len(deg) != len(module):
        raise ValueError("multidegree length does not match the module")
    if any(d < 1 for d in module):
        raise ValueError("summand degrees must be at least 1")
    _sl2_selftest()
    count = 1
    for d, k in zip(module, deg):
        count *= comb(k + d, d)
    if count > monomial_cap:
        raise CapExceededError("degree too large", "monomials", monomial_cap)
    nvars = sum(d + 1 for d in module)
    layout = VariableLayout(1, nvars)
    monos = _module_monomials(module, deg)
    index = {e: i for i, e in enumerate(monos)}
    rule_sets = sl2_derivation_rules(module)
    rows = []
    for e in monos:
        row = []
        for rules in rule_sets:
            image = apply_derivation(rules, layout, e)
            vec = [Q(0)] * len(monos)
            for ee, c in image._terms.items():
                vec[index[ee]] = c
            row.extend(vec)
        rows.append(row)
    return len(monos) - rank(Matrix.from_rows(rows))


# ---------------------------------------------------------------------------
# so5 trace invariants and their order-2 polarizations
# ---------------------------------------------------------------------------

_SKEW_POSITIONS = [(i, j) for i in range(5) for j in range(i + 1, 5)]


def _skew_symbolic(layout: VariableLayout, block: int):
    """The generic skew-symmetric 5x5 matrix over one block of ten variables."""
    var = {pos: Poly.variable(layout, layout.index(block, k))
           for k, pos in enumerate(_SKEW_POSITIONS)}
    rows = []
    for i in range(5):
        row = []
        for j in range(5):
            if i == j:
                row.append(Poly.zero(layout))
            elif i < j:
                row.append(var[(i, j)])
            else:
                row.append(-var[(j, i)])
        rows.append(row)
    return rows


def _poly_mat_mul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def _poly_trace_product(a, b) -> Poly:
    """tr(a b) without forming the full product."""
    n = len(a)
    acc = None
    for i in range(n):
        for k in range(n):
            term = a[i][k] * b[k][i]
            acc = term if acc is None else acc + term
    return acc


def so5_trace_invariants() -> Tuple[Poly, Poly]:
    """tr(A^2) and tr(A^4) for the generic skew 5x5 matrix A, as polynomials
    in the ten entries above the diagonal.  These generate the invariant ring."""
    layout = VariableLayout(1, 10)
    A = _skew_symbolic(layout, 0)
    A2 = _poly_mat_mul(A, A)
    tr2 = A2[0][0]
    for i in range(1, 5):
        tr2 = tr2 + A2[i][i]
    tr4 = _poly_trace_product(A2, A2)
    return tr2, tr4


SO5_POL2_BIDEGREES = ((2, 0), (1, 1), (0, 2), (4, 0), (3, 1), (2, 2), (1, 3), (0, 4))


def so5_pol2_generators() -> List[Poly]:
    """The eight generators of the order-2 polarization algebra of so5:
    tr(B^2), tr(BC), tr(C^2), tr(B^4), tr(B^3 C), 2 tr(B^2 C^2) + tr((BC)^2),
    tr(B C^3), tr(C^4), in this order."""
    layout = VariableLayout(2, 10)
    B = _skew_symbolic(layout, 0)
    C = _skew_symbolic(layout, 1)
    B2 = _poly_mat_mul(B, B)
    C2 = _poly_mat_mul(C, C)
    BC = _poly_mat_mul(B, C)
    gens = [
        _poly_trace_product(B, B),
        _poly_trace_product(B, C),
        _poly_trace_product(C, C),
        _poly_trace_product(B2, B2),
        _poly_trace_product(B2, BC),
        2 * _poly_trace_product(B2, C2) + _poly_trace_product(BC, BC),
        _poly_trace_product(BC, C2),
        _poly_trace_product(C2, C2),
    ]
    return gens


def jacobian_rank(polys: Sequence[Poly], point: Sequence) -> int:
    """Rank of the matrix of partial derivatives evaluated at the point."""
    if not polys:
        return 0
    layout = polys[0].layout
    if len(point) != layout.total:
        raise ValueError("point length does not match the variable count")
    point = [frac(x) for x in point]
    rows = []
    for p in polys:
        if p.layout != layout:
            raise ValueError("layout mismatch")
        rows.append([p.derivative(j).evaluate(point) for j in range(layout.total)])
    return rank(Matrix.from_rows(rows))


def generic_orbit_dimension(alg: LieAlgebraBasis, point: Sequence[Matrix]) -> int:
    """Rank of x -> ([x, a_1], ..., [x, a_n]) at the point (a_1, ..., a_n).

    This is the orbit dimension of the diagonal adjoint action at the point;
    at any rational point it lower-bounds the generic orbit dimension.
    """
    rows = []
    for b in alg.basis:
        row = []
        for a in point:
            row.extend(bracket(b, a).entries)
        rows.append(row)
    return rank(Matrix.from_rows(rows))


def random_algebra_element(alg: LieAlgebraBasis, rng: random.Random) -> Matrix:
    """Integer combination of the basis with coefficients in -9..9."""
    out = None
    for b in alg.basis:
        c = rng.randint(-9, 9)
        term = b.scale(c)
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------
# Packaged certificates
# ---------------------------------------------------------------------------

def certify_sl3(seed: int = DEFAULT_SEED, caps: Caps = DEFAULT_CAPS) -> dict:
    """The nilpotent nontriangularizable plane in sl3.

    The plane spanned by E12 + E23 and E21 - E32 consists of nilpotent
    matrices (checked symbolically), yet the subalgebra it generates is all
    of sl3 and contains the non-nilpotent diag(1, -2, 1).
    """
    algebra = sl(3)
    A = unit_matrix(3, 0, 1) + unit_matrix(3, 1, 2)
    B = unit_matrix(3, 1, 0) - unit_matrix(3, 2, 1)

    layout = VariableLayout(1, 2)
    a = Poly.variable(layout, 0)
    b = Poly.variable(layout, 1)
    z = Poly.zero(layout)
    symbolic_plane = [[z, a, z], [b, z, a], [z, -b, z]]
    nilpotent = matrix_nilpotent(symbolic_plane)

    witness = bracket(A, B)
    expected_witness = Matrix.from_rows([[1, 0, 0], [0, -2, 0], [0, 0, 1]])
    closure = subalgebra_closure(LieSubspace(algebra, (A, B)))

    def member(vec):
        rows = [list(vec[0:3]), list(vec[3:6]), list(vec[6:9])]
        return matrix_nilpotent(rows)

    probe = span_probe_nullcone(member, SubspaceSpec(9, (A.entries, B.entries)),
                                trials=64, seed=seed)

    checks = [
        check("plane_nilpotent_symbolic", nilpotent),
        check("bracket_is_diag_1_m2_1", witness == expected_witness),
        check("closure_is_all_of_sl3", len(closure) == 8, closure_dimension=len(closure)),
        check("witness_not_nilpotent", not matrix_nilpotent(witness)),
        check("probes_stay_nilpotent", not probe.escaped, trials=probe.trials),
    ]
    return make_report(
        "sl3", seed, caps, checks,
        closure_dimension=len(closure),
        witness_matrix=[str(x) for x in witness.entries],
        conclusion="the plane is nilpotent but not triangularizable",
    )


def certify_so5(seed: int = DEFAULT_SEED, caps: Caps = DEFAULT_CAPS) -> dict:
    """The polarization-index obstruction for so5.

    The order-2 polarization algebra has eight generators, so transcendence
    degree at most 8, while the invariant field of two copies has
    transcendence degree 10; hence no integrality, and the index is 1.
    """
    algebra = so5()
    tr2, tr4 = so5_trace_invariants()
    gens = so5_pol2_generators()
    bidegrees = tuple(p.multidegree() for p in gens)

    # the polarization components of tr(A^2), tr(A^4) match the generator
    # list up to the multinomial coefficients of the formal expansion
    pol2 = polarize(tr2, 2)
    pol4 = polarize(tr4, 2)
    expansion_ok = (
        pol2.get((2, 0)) == gens[0]
        and pol2.get((1, 1)) == 2 * gens[1]
        and pol2.get((0, 2)) == gens[2]
        and pol4.get((4, 0)) == gens[3]
        and pol4.get((3, 1)) == 4 * gens[4]
        and pol4.get((2, 2)) == 2 * gens[5]
        and pol4.get((1, 3)) == 4 * gens[6]
        and pol4.get((0, 4)) == gens[7]
    )

    seeds = (seed, seed + 1, seed + 2)
    jac_ranks = []
    orbit_dims = []
    for s in seeds:
        rng = random.Random(s)
        point = [rng.randint(-9, 9) for _ in range(20)]
        jac_ranks.append(jacobian_rank(gens, point))
        rng2 = random.Random(s + 1000)
        a1 = random_algebra_element(algebra, rng2)
        a2 = random_algebra_element(algebra, rng2)
        orbit_dims.append(generic_orbit_dimension(algebra, (a1, a2)))

    generator_bound = len(gens)
    orbit_dim = max(orbit_dims)
    trdeg_invariants = 2 * algebra.dimension - orbit_dim

    checks = [
        check("generator_count_is_8", len(gens) == 8),
        check("bidegrees_match", bidegrees == SO5_POL2_BIDEGREES,
              bidegrees=list(bidegrees)),
        check("trace_expansion_matches_generators", expansion_ok),
        check("jacobian_rank_at_most_8", all(r <= 8 for r in jac_ranks),
              ranks=list(jac_ranks)),
        check("orbit_dimension_reaches_10", orbit_dim == 10, dims=list(orbit_dims)),
        check("no_integrality", generator_bound < trdeg_invariants,
              transcendence_bound_pol=generator_bound,
              transcendence_invariants=trdeg_invariants),
    ]
    return make_report(
        "so5", seed, caps, checks,
        seeds=list(seeds),
        jacobian_ranks=list(jac_ranks),
        orbit_dimensions=list(orbit_dims),
        polarization_index=1,
        conclusion="the invariants of two copies are not integral over the "
                   "order-2 polarization algebra, so the polarization index is 1",
    )


def certify_sl2_r1(seed: int = DEFAULT_SEED, caps: Caps = DEFAULT_CAPS) -> dict:
    """Polarization index 1 for the defining SL2-module R_1: no invariants on
    one copy in low degree, but an invariant (the determinant) on two copies."""
    single = [sl2_invariant_dimension((1,), (k,), caps.monomials) for k in range(1, 5)]
    pair = sl2_invariant_dimension((1, 1), (1, 1), caps.monomials)
    checks = [
        check("r1_no_invariants_deg_1_to_4", single == [0, 0, 0, 0], dims=single),
        check("r1_pair_determinant", pair == 1, dim=pair),
    ]
    return make_report(
        "sl2-r1", seed, caps, checks,
        single_copy_dims=single,
        two_copy_dim_bidegree_1_1=pair,
        polarization_index=1,
        conclusion="one copy of R_1 has only constant invariants while two "
                   "copies do not, so the polarization index of R_1 is 1",
    )
