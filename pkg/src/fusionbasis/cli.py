"""Command-line interface.

Every command first builds a JSON-ready payload; ``--json`` prints it and
text mode renders it, so both modes always carry the same data.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from typing import Callable, Sequence

from .affine import kac_walton, threshold_levels
from .basis import (
    MAX_RANK,
    FusionDecomposition,
    construct_fusion_basis,
    decompose_fusion,
    elementary_tensor_couplings,
    fusion_elementaries,
    verify_basis,
)
from .errors import DomainError, FusionBasisError
from .tableaux import InequalitySystem, LRTableau, enumerate_lr, tensor_decompose, weights_of
from .weights import affine_extend, format_affine, format_finite, parse_finite

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rank(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"N must be an integer, got {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError("N must be at least 2")
    return n


def _basis_rank(n: int) -> int:
    if n > MAX_RANK:
        raise UsageError(f"N must be between 2 and {MAX_RANK} for this command")
    return n


def _weight(n: int, text: str):
    try:
        w = parse_finite(text, n)
    except DomainError as exc:
        raise UsageError(str(exc))
    if not w.is_integrable():
        raise UsageError(f"weight {text} has a negative label")
    return w


# -- payloads ----------------------------------------------------------------


def tensor_payload(args) -> dict:
    lam, mu = _weight(args.N, args.lam), _weight(args.N, args.mu)
    prod = tensor_decompose(lam, mu)
    return {
        "N": args.N,
        "lambda": list(lam.labels),
        "mu": list(mu.labels),
        "product": [{"weight": list(nu.labels), "multiplicity": c} for nu, c in prod.items()],
    }


def render_tensor(p: dict) -> str:
    return " ".join(f"{format_finite(t['weight'])}:{t['multiplicity']}" for t in p["product"])


def fuse_payload(args) -> dict:
    lam, mu = _weight(args.N, args.lam), _weight(args.N, args.mu)
    for w in (lam, mu):
        if w.total > args.k:
            raise UsageError(f"weight {w} does not fit at level {args.k}")
    res = kac_walton(affine_extend(lam, args.k), affine_extend(mu, args.k))
    terms = sorted(res.coefficients.items(), key=lambda item: item[0].labels[1:])
    return {
        "N": args.N,
        "k": args.k,
        "lambda": list(lam.labels),
        "mu": list(mu.labels),
        "fusion": [{"weight": list(w.labels), "coefficient": c} for w, c in terms],
    }


def render_fuse(p: dict) -> str:
    return " ".join(f"{format_affine(t['weight'])}:{t['coefficient']}" for t in p["fusion"])


def threshold_payload(args) -> dict:
    lam, mu, nu = (_weight(args.N, t) for t in (args.lam, args.mu, args.nu))
    return {
        "N": args.N,
        "lambda": list(lam.labels),
        "mu": list(mu.labels),
        "nu": list(nu.labels),
        "thresholds": threshold_levels(lam, mu, nu),
    }


def render_threshold(p: dict) -> str:
    return " ".join(str(k) for k in p["thresholds"])


def lr_payload(args) -> dict:
    lam, mu = _weight(args.N, args.lam), _weight(args.N, args.mu)
    tabs = []
    for t in enumerate_lr(lam, mu):
        entry = t.to_json_dict()
        entry["nu"] = list(weights_of(t)[2].labels)
        tabs.append(entry)
    return {"N": args.N, "lambda": list(lam.labels), "mu": list(mu.labels), "tableaux": tabs}


def render_lr(p: dict) -> str:
    blocks = []
    for entry in p["tableaux"]:
        t = LRTableau.from_json_dict(p["N"], entry)
        blocks.append(f"nu={format_finite(entry['nu'])}\n{t.render() or '(empty)'}")
    return "\n\n".join(blocks)


def elementary_payload(args) -> dict:
    n = _basis_rank(args.N)
    elems = fusion_elementaries(n) if args.fusion else elementary_tensor_couplings(n)
    return {"N": n, "fusion": bool(args.fusion), "couplings": [e.to_json_dict() for e in elems]}


def _coupling_line(c: dict, fusion: bool) -> str:
    vec = "(" + ",".join(map(str, c["vector"])) + ")"
    if fusion:
        lam, mu, nu = (format_affine(w) for w in c["affine_triple"])
    else:
        lam, mu, nu = (format_finite(w) for w in c["triple"])
    return f"{c['name']} {vec} {lam}x{mu}>{nu} k0={c['threshold']}"


def render_elementary(p: dict) -> str:
    return "\n".join(_coupling_line(c, p["fusion"]) for c in p["couplings"])


def _workers(args) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


def basis_payload(args) -> dict:
    n = _basis_rank(args.N)
    basis = construct_fusion_basis(n, resolve_ambiguous=args.resolve_ambiguous)
    report = verify_basis(basis, args.verify_labels, args.verify_level, workers=_workers(args))
    return replace(basis, report=report).to_json_dict()


def render_basis(p: dict) -> str:
    system = InequalitySystem.from_json_dict(p)
    prov = p["provenance"]
    lines = [str(system), "", "elementary couplings:"]
    lines += [_coupling_line(c, True) for c in prov["elementaries"]]
    lines.append("V:")
    lines += ["  " + " ".join(f"{a:2d}" for a in row) for row in prov["V"]]
    for label, key in (("ambiguous", "ambiguous_candidates"), ("excluded", "excluded_candidates")):
        for v in prov[key]:
            lines.append(f"{label}: (" + ",".join(map(str, v)) + ")")
    ver = prov["verification"]
    lines.append(f"verified: labels <= {ver['max_label']}, k <= {ver['max_level']}, cells {ver['cells']}")
    for m in ver["mismatch_list"]:
        lines.append(
            "mismatch: {} x {} > {} at k={}: basis {} vs fusion {}".format(
                format_finite(m["lambda"]), format_finite(m["mu"]), format_finite(m["nu"]),
                m["k"], m["basis"], m["fusion"],
            )
        )
    lines.append(f"mismatches: {ver['mismatches']}")
    return "\n".join(lines)


def decompose_payload(args) -> dict:
    n = _basis_rank(args.N)
    try:
        data = json.loads(args.tableau)
        t = LRTableau.from_json_dict(n, data)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad tableau JSON: {exc}")
    basis = construct_fusion_basis(n)
    dec = decompose_fusion(t, args.k, basis)
    lam, mu, nu = weights_of(t)
    return {
        "N": n,
        "k": args.k,
        "triple": [list(affine_extend(w, args.k).labels) for w in (lam, mu, nu)],
        "names": list(dec.names),
        "decompositions": [list(e) for e in dec.exponents],
        "threshold": dec.threshold,
    }


def render_decompose(p: dict) -> str:
    dec = FusionDecomposition(tuple(p["names"]), tuple(map(tuple, p["decompositions"])), p["threshold"])
    terms = " | ".join(dec.monomial(i) for i in range(len(dec.exponents)))
    lam, mu, nu = (format_affine(w) for w in p["triple"])
    return f"{lam}x{mu}>{nu}: {terms} k0={p['threshold']}"


COMMANDS: dict[str, tuple[Callable, Callable]] = {
    "tensor": (tensor_payload, render_tensor),
    "fuse": (fuse_payload, render_fuse),
    "threshold": (threshold_payload, render_threshold),
    "lr": (lr_payload, render_lr),
    "elementary": (elementary_payload, render_elementary),
    "basis": (basis_payload, render_basis),
    "decompose": (decompose_payload, render_decompose),
}


def render(command: str, payload: dict) -> str:
    return COMMANDS[command][1](payload)


def exit_status(command: str, payload: dict) -> int:
    if command == "basis" and payload["provenance"]["verification"]["mismatches"]:
        return EXIT_MISMATCH
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionbasis",
        description="su(N) tensor products, affine fusion rules, threshold levels and fusion bases.",
    )
    parser.add_argument("--json", action="store_true", help="print JSON instead of text")
    parser.add_argument("--threads", type=int, default=None, help="worker processes for verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tensor", help="decompose lambda (x) mu")
    p.add_argument("N", type=_rank)
    p.add_argument("lam")
    p.add_argument("mu")

    p = sub.add_parser("fuse", help="fusion product at level k (Kac-Walton)")
    p.add_argument("N", type=_rank)
    p.add_argument("k", type=int)
    p.add_argument("lam")
    p.add_argument("mu")

    p = sub.add_parser("threshold", help="threshold levels of lambda (x) mu > nu")
    p.add_argument("N", type=_rank)
    p.add_argument("lam")
    p.add_argument("mu")
    p.add_argument("nu")

    p = sub.add_parser("lr", help="list the LR tableaux of lambda (x) mu")
    p.add_argument("N", type=_rank)
    p.add_argument("lam")
    p.add_argument("mu")

    p = sub.add_parser("elementary", help="elementary couplings")
    p.add_argument("N", type=_rank)
    p.add_argument("--fusion", action="store_true", help="fusion instead of tensor couplings")

    p = sub.add_parser("basis", help="construct and verify the fusion basis")
    p.add_argument("N", type=_rank)
    p.add_argument("--verify-labels", type=int, default=2)
    p.add_argument("--verify-level", type=int, default=4)
    p.add_argument(
        "--resolve-ambiguous",
        action="store_true",
        help="drop surplus tableaux of ambiguous rotated triples, checked against Kac-Walton",
    )

    p = sub.add_parser("decompose", help="decompose a level-k coupling over fusion elementaries")
    p.add_argument("N", type=_rank)
    p.add_argument("k", type=int)
    p.add_argument("tableau", help='tableau JSON, e.g. {"lambda": [2], "n": [[3, 1]]}')
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    payload_fn, render_fn = COMMANDS[args.command]
    try:
        payload = payload_fn(args)
    except (UsageError, DomainError) as exc:
        print(f"fusionbasis {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FusionBasisError as exc:
        print(f"fusionbasis {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = json.dumps(payload, sort_keys=True, ensure_ascii=False) if args.json else render_fn(payload)
    if text:
        sys.stdout.write(text + "\n")
    return exit_status(args.command, payload)


if __name__ == "__main__":
    sys.exit(main())
