"""Command line: ``boussinesq {reduce,theorem1,verify}``.

Exit codes: 0 success, 1 failed check or inapplicable state, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .engine import Reducer, RecursionInapplicable
from .state import EtaFactor, UState
from .verification import DEFAULT_SAMPLES, VerifyConfig, verify


def parse_etas(text: str) -> tuple[EtaFactor, ...]:
    """``"0:1,1:2"`` -> sorted eta factors; the empty string is no etas."""
    if not text.strip():
        return ()
    out = []
    for item in text.split(","):
        try:
            label, weight = (int(x) for x in item.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad eta {item!r}, expected m:a") from None
        if label not in (0, 1) or weight < 1:
            raise argparse.ArgumentTypeError(f"bad eta {item!r}: need m in {{0,1}}, a >= 1")
        out.append(EtaFactor(label, weight))
    return tuple(sorted(out))


def parse_samples(text: str) -> tuple[int, ...]:
    try:
        samples = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sample list {text!r}") from None
    if any(x < 0 for x in samples) or len(set(samples)) != len(samples):
        raise argparse.ArgumentTypeError("samples must be distinct nonnegative integers")
    return samples


def nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boussinesq",
        description="Exact genus descent for one-point 3-spin intersection numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text")

    red = sub.add_parser("reduce", parents=[fmt],
                         help="reduce one U-number to genus-zero correlators")
    red.add_argument("--genus", type=nonneg_int, required=True)
    red.add_argument("--dn", type=int, required=True, help="psi power offset from n")
    red.add_argument("--m", type=int, choices=[0, 1], required=True)
    red.add_argument("--dp", type=int, required=True, help="tau_{0,1} tail offset from k")
    red.add_argument("--etas", type=parse_etas, required=True,
                     help='comma list of m:a, e.g. "0:1,0:1"')

    th1 = sub.add_parser("theorem1", parents=[fmt],
                         help="assemble 3! <tau_{n,m} tau_{0,1}^k tau_{0,0}^l>_3")
    th1.add_argument("--m", type=int, choices=[0, 1], required=True)

    ver = sub.add_parser("verify", parents=[fmt],
                         help="check printed constants and the concrete oracle")
    ver.add_argument("--interp-samples", type=parse_samples, default=DEFAULT_SAMPLES,
                     help='k values for the oracle, e.g. "8,9,10"')
    return parser


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "reduce":
        state = UState(args.genus, args.dn, args.m, args.dp, args.etas)
        try:
            value = Reducer().reduce(state)
        except RecursionInapplicable as exc:
            print(exc, file=sys.stderr)
            return 1
        if args.format == "json":
            _emit(json.dumps({"state": state.to_json(), "value": value.to_json()}))
        else:
            _emit(str(value))
        return 0

    if args.command == "theorem1":
        value = Reducer().theorem1_assemble(args.m)
        genus3 = value / 6
        if args.format == "json":
            _emit(json.dumps({"m": args.m, "theorem1": value.to_json(),
                              "genus3": genus3.to_json()}))
        else:
            _emit(str(value))
            _emit(f"⟨τ⟩₃ = {genus3}")
        return 0

    try:
        report = verify(VerifyConfig(samples=args.interp_samples))
    except ValueError as exc:
        parser.error(str(exc))
    _emit(report.dumps() if args.format == "json" else report.render())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
