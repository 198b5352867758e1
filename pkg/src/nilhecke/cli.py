"""Command-line front end, installed as ``nh``.

Exit codes: 0 when the command ran and every checked property holds, 1 when
a checked property fails (the report carries the witness), 2 on invalid
input.  JSON reports are deterministic: keys are sorted and every report
echoes the run configuration, so identical arguments give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import warnings
from typing import List, Optional, Sequence, Tuple

from . import gkm as gkm_mod
from .algebra import CLASSICAL, CONVENTIONS, PAPER, NilHecke, staircase_monomials
from .expr import EvaluationError, ParseError, evaluate, parse_expr, parse_polynomial
from .parabolic import corner_project, freeness_experiment
from .polyring import Polynomial, monomials_up_to_degree
from .reineke import ReinekeConfig, corner_presentation, equivariance_check, verify_relations
from .sampling import random_element, random_expression
from .schubert import (
    NotStabilized,
    coinvariant_hilbert,
    flowup_check,
    free_basis_failure,
    schubert_family,
    staircase,
)
from .weyl import GroupTooLarge, RankMismatch, min_coset_reps, parse_parabolic

OK, FAILED, INVALID = 0, 1, 2


class InputError(ValueError):
    pass


class Report:
    """A report body plus the exit code it implies."""

    def __init__(self, body: dict, code: int = OK, text: Optional[List[str]] = None):
        self.body = body
        self.code = code
        self.text = text


# -- argument helpers ---------------------------------------------------------------


def _index_list(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    if text is None:
        return None
    try:
        return parse_parabolic(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _algebra(args) -> NilHecke:
    try:
        return NilHecke.of(args.group)
    except (ValueError, RankMismatch, GroupTooLarge) as exc:
        raise InputError(f"bad --group {args.group!r}: {exc}") from None


def _parabolic(args, nh: NilHecke) -> Tuple[int, ...]:
    J = _index_list(args.parabolic) or ()
    for j in J:
        if not 1 <= j <= nh.group.rank:
            raise InputError(f"parabolic index {j} outside 1..{nh.group.rank}")
    return J


def _require(args, name: str):
    value = getattr(args, name)
    if value is None or value == []:
        raise InputError(f"--{name.replace('_', '-')} is required")
    return value


def _poly(nh: NilHecke, text: str):
    return parse_polynomial(text, nh.nvars)


def _element(nh: NilHecke, text: str, convention: str):
    return evaluate(parse_expr(text), nh, convention)


def _run_config(args) -> dict:
    keys = ("command", "group", "parabolic", "convention", "max_degree", "seed")
    return {k: getattr(args, k, None) for k in keys if getattr(args, k, None) is not None}


# -- commands -------------------------------------------------------------------------


def cmd_apply(args) -> Report:
    nh = _algebra(args)
    h = _element(nh, _require(args, "expr")[0], args.convention)
    f = _poly(nh, _require(args, "poly"))
    result = nh.apply(h, f)
    return Report({"expr": args.expr[0], "poly": str(f), "result": str(result)}, text=[str(result)])


def cmd_normal_form(args) -> Report:
    nh = _algebra(args)
    h = _element(nh, _require(args, "expr")[0], args.convention)
    text = h.to_text(args.convention)
    return Report({"expr": args.expr[0], "normal_form": text, "element": h.to_json()}, text=[text])


def cmd_mul(args) -> Report:
    nh = _algebra(args)
    exprs = _require(args, "expr")
    if len(exprs) < 2:
        raise InputError("mul needs at least two --expr operands")
    product = nh.one()
    for src in exprs:
        product = product * _element(nh, src, args.convention)
    text = product.to_text(args.convention)
    return Report({"operands": exprs, "product": text, "element": product.to_json()}, text=[text])


def cmd_corner(args) -> Report:
    nh = _algebra(args)
    J = _parabolic(args, nh)
    h = _element(nh, _require(args, "expr")[0], args.convention)
    c = corner_project(h, J)
    degree = 4 if args.max_degree is None else args.max_degree
    preserves = c.preserves_invariants(degree)
    body = {
        "expr": args.expr[0],
        "projection": c.carrier.to_text(args.convention),
        "already_in_corner": c.carrier == h,
        "preserves_invariants": preserves,
        "checked_degree": degree,
    }
    return Report(body, OK if preserves else FAILED, text=[body["projection"]])


def cmd_freeness(args) -> Report:
    nh = _algebra(args)
    J = _parabolic(args, nh)
    report = freeness_experiment(nh, J, 8 if args.max_degree is None else args.max_degree)
    body = report.to_json()
    body["consistent"] = report.consistent
    if args.figure:
        from .plots import plot_freeness

        body["figure"] = plot_freeness(report, args.figure)
    lines = [f"{row['degree']}: kernel {row['kernel_dim']}, span {row['span_count']} / {row['free_prediction']}" for row in report.per_degree]
    lines.append(report.verdict)
    return Report(body, OK if report.consistent else FAILED, text=lines)


def _tuple_text(args) -> Optional[str]:
    if args.values is not None:
        return args.values
    if args.input is not None and args.input != "-" and not os.path.isfile(args.input):
        return args.input
    return None


def _parse_tuple(nh: NilHecke, text: str) -> List[Polynomial]:
    return [_poly(nh, part) for part in text.strip().strip("()").replace(";", ",").split(",")]


def _read_gkm(args, nh: NilHecke, J, check: bool = True) -> "gkm_mod.GKMClass":
    """The GKM class given by ``--values`` / ``--input``, in the ``--gkm-convention`` reading."""
    conv = args.gkm_convention
    text = _tuple_text(args)
    try:
        if text is not None:
            return gkm_mod.GKMClass.build(nh, _parse_tuple(nh, text), J, check=check, convention=conv)
        if args.input is None:
            raise InputError("one of --values or --input is required")
        if args.input == "-":
            raw = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                raw = fh.read()
        data = json.loads(raw)
        data.setdefault("convention", conv)
        return gkm_mod.GKMClass.from_json(data, nh, check=check)
    except gkm_mod.NotGKM as exc:
        raise InputError(f"input is not a GKM class: {exc}") from None
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InputError(f"bad GKM input: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _gkm_values(p) -> List[dict]:
    return [{"rep": str(w), "poly": str(v)} for w, v in p.values]


def cmd_gkm(args) -> Report:
    nh = _algebra(args)
    J = _parabolic(args, nh)
    action = args.action
    i = args.index
    if action != "member" and not 1 <= i <= nh.group.rank:
        raise InputError(f"--index {i} outside 1..{nh.group.rank}")
    if action == "localized":
        return _cmd_localized(args, nh, i)
    if action == "member":
        p = _read_gkm(args, nh, J, check=False)
        m = p.is_member()
        body = {"member": m.holds, "witness": list(m.witness) if m.witness else None, "gkm_convention": p.convention}
        text = [f"member: {str(m.holds).lower()}"] + ([f"witness: w={m.witness[0]}, s={m.witness[1]}"] if m.witness else [])
        return Report(body, OK if m else FAILED, text=text)
    p = _read_gkm(args, nh, J)
    body = {"input": _gkm_values(p), "index": i, "gkm_convention": p.convention}
    if action == "tym":
        r = gkm_mod.tym_apply_literal(i, p)
        body.update(r.to_json())
        text = ["(" + ", ".join(map(str, r.values)) + ")", f"member: {str(r.member.holds).lower()}"]
        return Report(body, OK if r.member else FAILED, text=text)
    fn = gkm_mod.kk_apply if action == "kk" else gkm_mod.tym_apply_corrected
    try:
        out = fn(i, p)
    except gkm_mod.ClosureViolation as exc:
        body.update({"error": str(exc), "witness": list(exc.witness), "member": False})
        return Report(body, FAILED, text=[str(exc)])
    except ValueError as exc:
        raise InputError(str(exc)) from None
    body.update({"values": [str(v) for v in out.polys()], "member": True})
    return Report(body, text=["(" + ", ".join(map(str, out.polys())) + ")", "member: true"])


def _cmd_localized(args, nh: NilHecke, i: int) -> Report:
    text = _tuple_text(args)
    if text is None:
        raise InputError("--values is required for localized (one polynomial per Weyl group element)")
    values = _parse_tuple(nh, text)
    elements = nh.group.elements
    if len(values) != len(elements):
        raise InputError(f"expected {len(elements)} values, one per element of W, got {len(values)}")
    v = gkm_mod.FixedPointVector(nh, dict(zip(elements, values)))
    out = gkm_mod.localized_apply(i, v)
    rows = [{"w": str(w), "value": str(out.values[w]) if w in out.values else "0"} for w in elements]
    return Report({"index": i, "values": rows}, text=[str(out)])


def cmd_schubert(args) -> Report:
    if args.n is not None:
        n = args.n
    else:
        nh = _algebra(args)
        if nh.group.datum.cartan_type != "A":
            raise InputError("schubert needs a type A group or --n")
        n = nh.nvars
    if not 2 <= n <= 5:
        raise InputError("schubert supports 2 <= n <= 5")
    args.group = f"A{n - 1}"
    family = schubert_family(n, args.convention)
    nh = NilHecke.of(f"A{n - 1}")
    top = staircase(n).degree()
    failure = free_basis_failure(nh, list(family.values()), tuple(range(1, n)), top)
    rows = [{"w": str(w), "word": list(w.word), "poly": str(p)} for w, p in family.items()]
    body = {"n": n, "family": rows, "basis": failure is None, "checked_degree": top}
    if failure is not None:
        body["failure"] = {"degree": failure.degree, "reason": failure.reason, "detail": failure.detail}
    text = [f"{r['w']}: {r['poly']}" for r in rows]
    return Report(body, OK if failure is None else FAILED, text=text)


def cmd_flowup(args) -> Report:
    nh = _algebra(args)
    J = _parabolic(args, nh)
    seed = _poly(nh, args.poly) if args.poly is not None else staircase(nh.nvars)
    D = 6 if args.max_degree is None else args.max_degree
    result = flowup_check(nh, seed, J, D, args.convention)
    if hasattr(result, "generators"):
        rows = [{"v": str(v), "poly": str(p)} for v, p in result.generators.items()]
        body = {"seed": str(seed), "valid": True, "degree": D, "generators": rows}
        return Report(body, text=[f"{r['v']}: {r['poly']}" for r in rows] + [f"free basis up to degree {D}"])
    body = {"seed": str(seed), "valid": False, "degree": result.degree, "reason": result.reason, "detail": result.detail}
    return Report(body, FAILED, text=[f"not a basis at degree {result.degree}: {result.reason} {result.detail}".strip()])


def cmd_coinvariant_dim(args) -> Report:
    nh = _algebra(args)
    J = _parabolic(args, nh)
    D = len(nh.group.positive_roots()) if args.max_degree is None else args.max_degree
    dims = coinvariant_hilbert(nh, J, D + 1)
    expected = len(min_coset_reps(nh.group, J))
    stabilized = dims[-1] == 0
    total = sum(dims)
    body = {"hilbert": dims, "stabilized": stabilized, "dimension": total if stabilized else None, "expected": expected}
    if args.figure:
        from .plots import plot_hilbert

        body["figure"] = plot_hilbert(dims, args.figure, f"{nh.group.datum.name}, J={{{','.join(map(str, J))}}}")
    ok = stabilized and total == expected
    if not stabilized:
        text = [str(NotStabilized(dims, D + 1))]
    else:
        text = [f"dimension {total} (expected {expected})", "hilbert " + " ".join(map(str, dims))]
    return Report(body, OK if ok else FAILED, text=text)


def _reineke_config(args) -> ReinekeConfig:
    if args.d1 is None or args.d2 is None:
        raise InputError("--d1 and --d2 are required")
    try:
        if args.literal:
            return ReinekeConfig.literal(args.d1, args.d2)
        return ReinekeConfig(
            args.d1,
            args.d2,
            _index_list(args.euler_range),
            _index_list(args.delta_indices),
            _index_list(args.parabolic),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_reineke(args) -> Report:
    cfg = _reineke_config(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.action == "relations":
            reports = verify_relations(cfg)
            witness = equivariance_check(cfg)
            body = {
                "config": cfg.to_json(),
                "prefactor_order": cfg.prefactor_order,
                "subgroup_order": cfg.subgroup_order,
                "prefactor_consistent": cfg.prefactor_consistent,
                "relations": [r.to_json() for r in reports],
                "equivariant": witness is None,
            }
            if witness is not None:
                body["equivariance_witness"] = {"generator": witness[0], "invariant": str(witness[1])}
            ok = all(r.holds for r in reports) and witness is None and cfg.prefactor_consistent
            text = []
            for r in reports:
                text.append(f"{r.relation}: {'holds' if r.holds else 'fails'}")
                for k, v in sorted(r.coefficients.items()):
                    text.append(f"  {k} = {v}")
                if not r.holds:
                    text.append(f"  residual {r.residual.to_text()}")
            text.append(f"equivariant: {str(witness is None).lower()}")
        else:
            pres = corner_presentation(cfg, args.length_bound, args.max_degree)
            body = pres.to_json()
            if args.figure:
                from .plots import plot_corner

                body["figure"] = plot_corner(pres, args.figure)
            ok = pres.closed
            text = [f"{row['degree']}: {row['span_dimension']}" for row in pres.per_degree]
            text.append(f"closed: {str(pres.closed).lower()}")
    body["warnings"] = sorted(str(w.message) for w in caught)
    return Report(body, OK if ok else FAILED, text=text)


def cmd_selfcheck(args) -> Report:
    """Seeded spot checks: product/action agreement and expression round trips."""
    nh = _algebra(args)
    rng = random.Random(args.seed)
    samples = args.samples
    if nh.group.datum.cartan_type == "A":
        probes = [Polynomial.monomial(e) for e in staircase_monomials(nh.nvars)]
    else:
        probes = [Polynomial.monomial(e) for e in monomials_up_to_degree(nh.nvars, 3)]
    mul_fail = None
    for k in range(samples):
        a, b = random_element(nh, rng), random_element(nh, rng)
        ab = a * b
        for m in probes:
            if ab(m) != a(b(m)):
                mul_fail = {"sample": k, "a": a.to_text(), "b": b.to_text(), "probe": str(m)}
                break
        if mul_fail:
            break
    rt_fail = None
    for k in range(samples):
        src = random_expression(rng, nh.group.rank, nh.nvars)
        h = _element(nh, src, args.convention)
        again = _element(nh, h.to_text(args.convention), args.convention)
        if again != h:
            rt_fail = {"sample": k, "expr": src}
            break
    body = {
        "samples": samples,
        "product_matches_composition": mul_fail is None,
        "round_trip": rt_fail is None,
    }
    if mul_fail:
        body["product_witness"] = mul_fail
    if rt_fail:
        body["round_trip_witness"] = rt_fail
    ok = mul_fail is None and rt_fail is None
    return Report(body, OK if ok else FAILED, text=[f"{k}: {v}" for k, v in sorted(body.items())])


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="A1", help="A3, B2, ... or a JSON Cartan matrix (default A1)")
    common.add_argument("--parabolic", default=None, help="comma-separated simple indices, e.g. 1,3")
    common.add_argument(
        "--convention",
        choices=CONVENTIONS,
        default=None,
        help="Demazure sign convention (default paper; classical for schubert)",
    )
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write the report to this file instead of stdout")
    common.add_argument("--figure", default=None, help="also render a bar chart to this file (where supported)")

    parser = argparse.ArgumentParser(prog="nh", description="Exact computations in nil Hecke algebras and their parabolic corners.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, **kw):
        p = sub.add_parser(name, parents=[common], help=help_text, **kw)
        p.set_defaults(func=fn, default_convention=CLASSICAL if name == "schubert" else PAPER)
        return p

    for name, fn, help_text in (
        ("apply", cmd_apply, "apply an operator expression to a polynomial"),
        ("normal-form", cmd_normal_form, "print the normal form of an operator expression"),
        ("mul", cmd_mul, "multiply operator expressions left to right"),
        ("corner", cmd_corner, "project an expression into the parabolic corner"),
    ):
        p = add(name, fn, help_text)
        p.add_argument("--expr", action="append", default=[])
        if name == "apply":
            p.add_argument("--poly")

    add("freeness", cmd_freeness, "kernel dimensions of the parabolic Demazure module map")

    p = add("gkm", cmd_gkm, "GKM classes and divided-difference operators")
    p.add_argument("action", choices=("member", "kk", "tym", "tym-corrected", "localized"))
    p.add_argument("--values", help="tuple of polynomials, e.g. \"0; t1 - t2\"")
    p.add_argument("--input", help="GKM class JSON file ('-' for stdin) or a tuple like \"(0, t1 - t2)\"")
    p.add_argument("--index", type=int, default=1, help="simple reflection index (default 1)")
    p.add_argument(
        "--gkm-convention",
        choices=gkm_mod.CONVENTIONS,
        default=gkm_mod.LEFT_SIMPLE,
        help="membership condition (default left-simple)",
    )

    p = add("schubert", cmd_schubert, "Schubert polynomials of S_n")
    p.add_argument("--n", type=int, default=None)

    p = add("flowup", cmd_flowup, "check a divided-difference flow-up basis")
    p.add_argument("--poly", help="seed polynomial (default: staircase monomial)")

    add("coinvariant-dim", cmd_coinvariant_dim, "dimension of W_J-invariants modulo positive W-invariants")

    p = add("reineke", cmd_reineke, "Reineke's quiver example")
    p.add_argument("action", choices=("relations", "corner"))
    p.add_argument("--d1", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--euler-range", default=None)
    p.add_argument("--delta-indices", default=None)
    p.add_argument("--length-bound", type=int, default=2)
    p.add_argument("--literal", action="store_true", help="use the index sets exactly as printed")

    p = add("selfcheck", cmd_selfcheck, "seeded random consistency checks")
    p.add_argument("--samples", type=int, default=50)
    return parser


def render(report: Report, args) -> str:
    if args.format == "json":
        body = dict(report.body)
        body["config"] = _run_config(args)
        body["exit_code"] = report.code
        return json.dumps(body, sort_keys=True, indent=2, default=str) + "\n"
    lines = report.text if report.text is not None else [json.dumps(report.body, sort_keys=True)]
    return "\n".join(lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    if args.convention is None:
        args.convention = args.default_convention
    try:
        report = args.func(args)
    except (InputError, ParseError, EvaluationError) as exc:
        msg = f"nh {args.command}: {exc}"
        if args.format == "json":
            sys.stdout.write(json.dumps({"error": str(exc), "exit_code": INVALID}, sort_keys=True) + "\n")
        print(msg, file=sys.stderr)
        return INVALID
    out = render(report, args)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return report.code


if __name__ == "__main__":
    sys.exit(main())
