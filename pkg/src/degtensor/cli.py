"""Command-line front end.

Commands read JSON space/tensor files, run an analysis, and print a report:
line-oriented `key: value` text by default, the same data as one JSON object
with `--json`. Output is deterministic byte for byte. Exit codes: 0 success,
2 parse or validation error, 3 mathematical gate failure (a covariant slot
that is not radical-annihilator, or an invalid screen).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .dual import annih_view, choose_screen
from .errors import (
    AlgebraError,
    BadScreen,
    NotRadicalAnnihilator,
)
from .exact_linalg import rank
from .files import format_scalar, load_screen, load_space, load_tensor, tensor_payload
from .space import orthogonal_radical_basis, radical, signature
from .tensor import (
    Tensor,
    contract_covariant,
    contract_mixed,
    insert_covector,
    insert_vector,
    lower_index,
    _covector_to_frame,
    _vector_to_frame,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GATE = 3


def _fmt_vector(v) -> str:
    return " ".join(format_scalar(x) for x in v)


def _emit(lines: list[str], payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _tensor_report(t: Tensor) -> tuple[list[str], dict]:
    lines = [
        f"type: ({t.contra}, {t.cova})",
        f"dim: {t.dim}",
        f"components: {_fmt_vector(t.components)}",
    ]
    return lines, tensor_payload(t)


def cmd_analyze(args) -> int:
    space = load_space(args.space)
    sig = signature(space)
    rk = rank(space.gram)
    rad = radical(space)
    rb = orthogonal_radical_basis(space)
    alphas = rb.alphas()
    view = annih_view(space)
    cometric_diag = [1 / a for a in alphas[rb.radical_count :]]

    lines = [
        f"dim: {space.n}",
        f"signature: {sig}",
        f"rank: {rk}",
    ]
    for i, z in enumerate(rad.basis, start=1):
        lines.append(f"radical[{i}]: {_fmt_vector(z)}")
    for i, (v, a) in enumerate(zip(rb.vectors, alphas), start=1):
        lines.append(f"basis[{i}]: {_fmt_vector(v)}")
        lines.append(f"alpha[{i}]: {format_scalar(a)}")
    for i, c in enumerate(cometric_diag, start=rb.radical_count + 1):
        lines.append(f"cometric[{i}]: {format_scalar(c)}")

    payload = {
        "dim": space.n,
        "signature": list(sig),
        "rank": rk,
        "radical_basis": [[format_scalar(x) for x in z] for z in rad.basis],
        "orthogonal_radical_basis": [[format_scalar(x) for x in v] for v in rb.vectors],
        "alpha": [format_scalar(a) for a in alphas],
        "cometric_diagonal": [format_scalar(c) for c in cometric_diag],
        "annihilator_basis": [[format_scalar(x) for x in w.components] for w in view.basis],
    }
    _emit(lines, payload, args.json)
    return EXIT_OK


def cmd_lower(args) -> int:
    space = load_space(args.space)
    t = load_tensor(args.tensor, space)
    lowered = lower_index(t, args.slot)
    zero = lowered.is_zero()
    lines, tpayload = _tensor_report(lowered)
    lines.append(f"zero: {'true' if zero else 'false'}")
    payload = {"tensor": tpayload, "zero": zero}
    _emit(lines, payload, args.json)
    return EXIT_OK


def cmd_contract(args) -> int:
    space = load_space(args.space)
    t = load_tensor(args.tensor, space)
    lines: list[str] = [f"mode: {args.mode}", f"k: {args.k}", f"l: {args.l}"]
    payload: dict = {"mode": args.mode, "k": args.k, "l": args.l}
    if args.mode == "mixed":
        result = contract_mixed(t, args.k, args.l)
    else:
        screen = None
        screen_name = "canonical"
        if args.screen:
            hint = load_screen(args.screen, space)
            screen = choose_screen(space, hint)
            screen_name = "custom"
        result = contract_covariant(t, args.k, args.l, screen)
        gates = [args.k, args.l]
        for slot in gates:
            lines.append(f"gate[{slot}]: radical-annihilator")
        lines.append(f"screen: {screen_name}")
        payload["gates_checked"] = gates
        payload["screen"] = screen_name
    tlines, tpayload = _tensor_report(result)
    lines.extend(tlines)
    payload["tensor"] = tpayload
    if result.order == 0:
        lines.append(f"scalar: {format_scalar(result.components[0])}")
        payload["scalar"] = format_scalar(result.components[0])
    _emit(lines, payload, args.json)
    return EXIT_OK


def cmd_check(args) -> int:
    space = load_space(args.space)
    t = load_tensor(args.tensor, space)
    lines = [f"predicate: {args.predicate}", f"slot: {args.slot}"]
    probes = []
    result = True
    if args.predicate == "radical":
        for omega in annih_view(space).basis:
            probe = _covector_to_frame(t, omega.components)
            zero = insert_covector(t, args.slot, probe).is_zero()
            probes.append((omega.components, zero))
            result = result and zero
    else:
        for z in radical(space).basis:
            probe = _vector_to_frame(t, z)
            zero = insert_vector(t, args.slot, probe).is_zero()
            probes.append((z, zero))
            result = result and zero
    for i, (v, zero) in enumerate(probes, start=1):
        lines.append(f"probe[{i}]: {_fmt_vector(v)} -> {'zero' if zero else 'nonzero'}")
    lines.append(f"result: {'true' if result else 'false'}")
    payload = {
        "predicate": args.predicate,
        "slot": args.slot,
        "probes": [{"vector": [format_scalar(x) for x in v], "zero": zero} for v, zero in probes],
        "result": result,
    }
    _emit(lines, payload, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degtensor",
        description="Exact tensor algebra over possibly degenerate metrics.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="signature, radical and cometric of a space")
    p.add_argument("space")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lower", parents=[common], help="lower a contravariant slot with the metric")
    p.add_argument("space")
    p.add_argument("tensor")
    p.add_argument("--slot", type=int, required=True, help="contravariant slot (1-based)")
    p.set_defaults(func=cmd_lower)

    p = sub.add_parser("contract", parents=[common], help="mixed or covariant contraction")
    p.add_argument("space")
    p.add_argument("tensor")
    p.add_argument("--mode", choices=["mixed", "covariant"], required=True)
    p.add_argument("--k", type=int, required=True, help="first slot (1-based)")
    p.add_argument("--l", type=int, required=True, help="second slot (1-based)")
    p.add_argument("--screen", help="screen file for the covariant mode")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("check", parents=[common], help="radical / radical-annihilator slot predicates")
    p.add_argument("space")
    p.add_argument("tensor")
    p.add_argument("--predicate", choices=["radical", "radannih"], required=True)
    p.add_argument("--slot", type=int, required=True, help="slot number (1-based)")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NotRadicalAnnihilator, BadScreen) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GATE
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
