"""Command line front end.

Every subcommand prints one deterministic report (text or structured JSON)
and exits with: 0 when all checks pass, 1 when any check fails (for query
commands the query itself is the check, grep-style), 2 on malformed input,
3 when a size cap is exceeded.  Seed and caps can be set by environment
variables (POLINV_SEED, POLINV_CAP_GROUP_ORDER, POLINV_CAP_SPAN_PRODUCTS,
POLINV_CAP_MONOMIALS); command line flags win over the environment.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .limits import CapExceededError, Caps, DEFAULT_SEED
from .linalg import frac
from .groups import DiagonalAction, group_from_spec, invariant_dimension, count_monomials
from .poly import VariableLayout, parse_poly, poly_to_string
from .polarization import (certificate_combination, certify_dm, classical_generators,
                           compare_graded_dims, copies_layout, GeneratorSet,
                           membership, polarization_generators, polarize)
from .nullcone import (binary_form_from_spec, binary_form_nullcone_member,
                       binary_nullcone_witness, certify_torus, torus_nullcone_member,
                       v_gamma, weight_system_from_spec)
from .liealg import certify_sl2_r1, certify_sl3, certify_so5
from .reports import check, make_report, render_structured, render_text


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(raw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polinv",
        description="exact polarization, invariant dimension and nullcone certificates")
    parser.add_argument("--seed", type=int,
                        default=_env_int("POLINV_SEED", DEFAULT_SEED))
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--cap-group-order", type=int,
                        default=_env_int("POLINV_CAP_GROUP_ORDER", Caps().group_order))
    parser.add_argument("--cap-span-products", type=int,
                        default=_env_int("POLINV_CAP_SPAN_PRODUCTS", Caps().span_products))
    parser.add_argument("--cap-monomials", type=int,
                        default=_env_int("POLINV_CAP_MONOMIALS", Caps().monomials))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polarize", help="polarize a polynomial onto n copies")
    p.add_argument("poly_file")
    p.add_argument("--copies", type=int, required=True)

    p = sub.add_parser("invariant-dims", help="invariant dimensions per multidegree")
    p.add_argument("group_file")
    p.add_argument("--copies", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("compare", help="invariant vs polarization span dimensions")
    p.add_argument("group_file")
    p.add_argument("--copies", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("membership", help="membership in the graded polarization span")
    p.add_argument("poly_file")
    p.add_argument("gens_file")

    p = sub.add_parser("nullcone", help="Hilbert-Mumford nullcone tests")
    nsub = p.add_subparsers(dest="nullcone_kind", required=True)
    pt = nsub.add_parser("torus")
    pt.add_argument("module_file")
    pt.add_argument("vector", help="comma-separated rational coordinates")
    pb = nsub.add_parser("binary")
    pb.add_argument("form_file")

    p = sub.add_parser("certify", help="run a packaged certificate scenario")
    p.add_argument("scenario", choices=("dm", "so5", "sl3", "torus", "sl2-r1"))
    return parser


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _layout_from_spec(spec: dict) -> VariableLayout:
    if "vars" in spec:
        return VariableLayout(1, int(spec["vars"]))
    return VariableLayout(int(spec["blocks"]), int(spec["vars_per_block"]))


def _load_poly_file(path: str):
    spec = _load_json(path)
    layout = _layout_from_spec(spec)
    return layout, parse_poly(spec["poly"], layout)


def _load_gens_file(path: str, span_cap: int, group_cap: int) -> GeneratorSet:
    spec = _load_json(path)
    if "family" in spec:
        family, m, n = spec["family"], int(spec["m"]), int(spec["copies"])
        invs = classical_generators(family, m)
        return polarization_generators(invs, n)
    if "invariants" in spec:
        layout = VariableLayout(1, int(spec["vars"]))
        invs = [parse_poly(s, layout) for s in spec["invariants"]]
        return polarization_generators(invs, int(spec["copies"]))
    if "generators" in spec:
        layout = _layout_from_spec(spec)
        gens = []
        for s in spec["generators"]:
            p = parse_poly(s, layout)
            deg = p.multidegree()
            if deg is None:
                raise ValueError(f"generator {s!r} is not multihomogeneous")
            gens.append((p, deg))
        return GeneratorSet(layout, tuple(gens))
    raise ValueError("generator spec needs a 'family', 'invariants' or 'generators' key")


def _parse_vector(text: str):
    return tuple(frac(part) for part in text.split(","))


def cmd_polarize(args, caps: Caps) -> dict:
    layout, f = _load_poly_file(args.poly_file)
    if layout.blocks != 1:
        raise ValueError("polarize expects a single-block polynomial file")
    comps = polarize(f, args.copies)
    rng = random.Random(args.seed)
    m = layout.vars_per_block
    trials_ok = True
    for _ in range(5):
        points = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(args.copies)]
        alphas = [rng.randint(-4, 4) for _ in range(args.copies)]
        combined = [sum(a * p[j] for a, p in zip(alphas, points)) for j in range(m)]
        lhs = f.evaluate(combined)
        flat = [x for p in points for x in p]
        rhs = Fraction(0)
        for deg, comp in comps.items():
            coeff = Fraction(1)
            for a, d in zip(alphas, deg):
                coeff *= Fraction(a) ** d
            rhs += coeff * comp.evaluate(flat)
        trials_ok = trials_ok and lhs == rhs
    checks = [check("expansion_identity_spot_check", trials_ok, trials=5)]
    components = [{"multidegree": list(deg), "polynomial": poly_to_string(p)}
                  for deg, p in comps.items()]
    return make_report("polarize", args.seed, caps, checks,
                       copies=args.copies, component_count=len(components),
                       components=components)


def cmd_invariant_dims(args, caps: Caps) -> dict:
    group = group_from_spec(_load_json(args.group_file), caps.group_order)
    layout = copies_layout(group.dimension, args.copies)
    action = DiagonalAction(group, layout)
    from .polarization import _compositions_all
    rows = []
    bounded = True
    for total in range(args.max_degree + 1):
        for deg in sorted(_compositions_all(total, args.copies)):
            dim = invariant_dimension(action, deg, caps.monomials)
            n_mono = count_monomials(layout, deg)
            bounded = bounded and dim <= n_mono
            rows.append({"multidegree": list(deg), "dim_invariants": dim,
                         "monomials": n_mono})
    checks = [check("dims_bounded_by_monomial_count", bounded)]
    return make_report("invariant-dims", args.seed, caps, checks,
                       group_order=group.order, copies=args.copies,
                       max_degree=args.max_degree, table=rows)


def cmd_compare(args, caps: Caps) -> dict:
    spec = _load_json(args.group_file)
    if "builtin" not in spec:
        raise ValueError("compare needs a builtin group file "
                         "(the classical invariant generators are wired in for S, B, D)")
    family, m = spec["builtin"]["family"], int(spec["builtin"]["m"])
    group = group_from_spec(spec, caps.group_order)
    invs = classical_generators(family, m)
    rows = compare_graded_dims(group, invs, args.copies, args.max_degree,
                               caps.span_products, caps.monomials)
    checks = [check("pol_dims_bounded_by_invariant_dims",
                    all(dp <= di for _, di, dp in rows))]
    for deg, di, dp in rows:
        name = "equal_at_" + "_".join(str(d) for d in deg)
        checks.append(check(name, di == dp, dim_invariants=di, dim_pol_span=dp))
    table = [{"multidegree": list(deg), "dim_invariants": di, "dim_pol_span": dp}
             for deg, di, dp in rows]
    return make_report("compare", args.seed, caps, checks,
                       family=family, m=m, copies=args.copies,
                       max_degree=args.max_degree, table=table)


def cmd_membership(args, caps: Caps) -> dict:
    layout, f = _load_poly_file(args.poly_file)
    gens = _load_gens_file(args.gens_file, caps.span_products, caps.group_order)
    if gens.layout != layout:
        raise ValueError("polynomial and generator layouts differ")
    cert = membership(f, gens, caps.span_products)
    checks = [check("member", cert is not None)]
    payload = {"polynomial": poly_to_string(f),
               "multidegree": list(f.multidegree() or ()),
               "member": cert is not None}
    if cert is not None:
        checks.append(check("certificate_reconstructs",
                            certificate_combination(gens, cert) == f,
                            certificate_terms=len(cert)))
        payload["certificate"] = [{"exponents": list(e), "coefficient": str(c)}
                                  for e, c in cert]
    return make_report("membership", args.seed, caps, checks, **payload)


def cmd_nullcone(args, caps: Caps) -> dict:
    if args.nullcone_kind == "torus":
        ws = weight_system_from_spec(_load_json(args.module_file))
        v = _parse_vector(args.vector)
        gamma = torus_nullcone_member(ws, v)
        checks = [check("in_nullcone", gamma is not None)]
        payload = {"vector": [str(x) for x in v], "member": gamma is not None}
        if gamma is not None:
            support = [w for x, w in zip(v, ws.weights) if x != 0]
            valid = all(sum(g * x for g, x in zip(gamma, w)) > 0 for w in support)
            checks.append(check("cocharacter_strictly_positive_on_support", valid))
            payload["cocharacter"] = list(gamma)
            payload["positive_part"] = list(v_gamma(ws, gamma))
        return make_report("nullcone-torus", args.seed, caps, checks, **payload)
    form = binary_form_from_spec(_load_json(args.form_file))
    member = binary_form_nullcone_member(form)
    checks = [check("in_nullcone", member)]
    payload = {"degree": form.degree, "coeffs": [str(c) for c in form.coeffs],
               "member": member}
    if member and not form.is_zero():
        witness = binary_nullcone_witness(form)
        m = form.degree // 2 + 1
        quotient = form
        divides = True
        for _ in range(m):
            quotient = quotient.divide_linear(witness.coeffs[0], witness.coeffs[1])
            if quotient is None:
                divides = False
                break
        checks.append(check("witness_power_divides_form", divides,
                            required_multiplicity=m))
        payload["witness"] = [str(c) for c in witness.coeffs]
    return make_report("nullcone-binary", args.seed, caps, checks, **payload)


def cmd_certify(args, caps: Caps) -> dict:
    scenario = args.scenario
    if scenario == "dm":
        return certify_dm(args.seed, caps)
    if scenario == "so5":
        return certify_so5(args.seed, caps)
    if scenario == "sl3":
        return certify_sl3(args.seed, caps)
    if scenario == "torus":
        return certify_torus(args.seed, caps)
    return certify_sl2_r1(args.seed, caps)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    caps = Caps(args.cap_group_order, args.cap_span_products, args.cap_monomials)
    handlers = {
        "polarize": cmd_polarize,
        "invariant-dims": cmd_invariant_dims,
        "compare": cmd_compare,
        "membership": cmd_membership,
        "nullcone": cmd_nullcone,
        "certify": cmd_certify,
    }
    try:
        report = handlers[args.command](args, caps)
    except CapExceededError as exc:
        print(f"error: {exc} (cap {exc.cap_name}={exc.cap_value})", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render_structured(report) if args.format == "structured" else render_text(report)
    sys.stdout.write(text)
    return 0 if report["result"] == "PASS" else 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
