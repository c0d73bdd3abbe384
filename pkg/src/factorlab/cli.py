"""Command-line front end: ``factorlab <command> [flags]``.

Every command prints a short text report, or with ``--json`` a single JSON
document (``"schema": 1``, sorted keys, big integers as decimal strings).
Exit codes: 0 success, 2 invalid input, 3 budget or cap exceeded, 4 a
verified property failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import factor_core, hurwitz, matorder, zerosum
from .abelian import parse_group
from .arith import big_omega
from .errors import BudgetExceeded

SCHEMA = 1
EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_VIOLATION = 0, 2, 3, 4


class PropertyViolation(Exception):
    def __init__(self, payload):
        super().__init__("property violation")
        self.payload = payload


def _lengths_payload(L):
    cls = zerosum.classify_lengths(L) if L else None
    return {
        "lengths": list(L),
        "distances": list(factor_core.distances_of(L)),
        "classification": None if cls is None else {"kind": cls.kind, "difference": cls.difference},
    }


def _table_for(G, max_len, args):
    if max_len is None:
        return zerosum._exhaustive_table(G)
    return zerosum.cached_atom_table(G, max_len, args.cache_dir)


def cmd_zs_atoms(args):
    G = parse_group(args.group)
    if args.max_len is None:
        max_len = zerosum.davenport_constant(G)
    else:
        max_len = args.max_len
    table = zerosum.cached_atom_table(G, max_len, args.cache_dir)
    return {
        "group": G.literal(),
        "max_length": max_len,
        "exhaustive": table.exhaustive,
        "count": len(table),
        "atoms": [str(a) for a in table.atoms],
    }


def cmd_zs_davenport(args):
    G = parse_group(args.group)
    return {"group": G.literal(), "order": str(G.order), "davenport": zerosum.davenport_constant(G)}


def cmd_zs_lengths(args):
    G = parse_group(args.group)
    S = zerosum.parse_sequence(G, args.elem)
    table = _table_for(G, args.max_len, args)
    L = zerosum.lengths_zs(S, table)
    out = {"group": G.literal(), "sequence": str(S), "atom_table_max_length": table.max_length}
    out.update(_lengths_payload(L))
    return out


def cmd_zs_delta(args):
    G = parse_group(args.group)
    table = zerosum._exhaustive_table(G)
    delta = zerosum.monoid_delta(G, args.bound, table=table)
    uk = zerosum.union_k(G, args.k, args.bound, table=table)
    return {
        "group": G.literal(),
        "davenport": table.max_atom_length,
        "bound": delta.bound,
        "note": delta.note,
        "sequences_examined": delta.sequences_examined,
        "delta": list(delta.values),
        "k": args.k,
        "union_k": list(uk.values),
    }


def _factor_payload(x, oracle, fmt, cap):
    zs = factor_core.rigid_factorizations(x, oracle, cap=cap)
    L = factor_core.lengths(x, oracle)
    out = {"count": len(zs), "cap": cap, "factorizations": [[fmt(u) for u in z.atoms] for z in zs]}
    out.update(_lengths_payload(L))
    return out


def cmd_hq_factor(args):
    x = hurwitz.parse_quaternion(args.elem)
    out = {"element": hurwitz.format_quaternion(x), "norm": str(hurwitz.norm(x))}
    out.update(_factor_payload(x, hurwitz.oracle(), hurwitz.format_quaternion, args.cap))
    return out


def cmd_hq_lengths(args):
    x = hurwitz.parse_quaternion(args.elem)
    n = hurwitz.norm(x)
    if n == 0:
        raise ValueError("zero has no factorizations")
    out = {"element": hurwitz.format_quaternion(x), "norm": str(n), "omega_norm": big_omega(n)}
    out.update(_lengths_payload(factor_core.lengths(x, hurwitz.oracle())))
    return out


def cmd_hq_classes(args):
    reps = hurwitz.elements_of_norm(args.prime)
    return {
        "norm": str(args.prime),
        "side": "left",
        "count": len(reps),
        "representatives": [hurwitz.format_quaternion(x) for x in reps],
    }


def _one_matrix(args):
    if not args.matrix or len(args.matrix) != 1:
        raise ValueError("exactly one --matrix required")
    A = matorder.parse_matrix(args.matrix[0])
    if A.det() == 0:
        raise ValueError("matrix must be nonsingular")
    return A


def cmd_mat_factor(args):
    A = _one_matrix(args)
    out = {"matrix": matorder.format_matrix(A), "det": str(A.det()), "hnf": str(matorder.hnf(A))}
    out.update(_factor_payload(A, matorder.oracle(), matorder.format_matrix, args.cap))
    return out


def cmd_mat_ideals(args):
    ideals = matorder.maximal_left_ideals_over(args.prime)
    return {"prime": str(args.prime), "count": len(ideals), "ideals": [str(I) for I in ideals]}


def cmd_mat_transpose(args):
    if not args.matrix or len(args.matrix) != 2:
        raise ValueError("mat-transpose takes two --matrix flags (u, then v)")
    u, v = (matorder.parse_matrix(m) for m in args.matrix)
    t = matorder.transpose(u, v)
    sols = matorder.transposition_solutions(u, v)
    out = {
        "u": str(u), "v": str(v), "v_prime": str(t.v_prime), "u_prime": str(t.u_prime),
        "checks": t.checks, "ideal_level_solutions": len(sols),
    }
    if not all(t.checks.values()) or len(sols) != 1:
        raise PropertyViolation(out)
    return out


def _transfer_samples(instance, n, rng):
    if instance == "hurwitz":
        return [hurwitz.random_element(rng, 10**4) for _ in range(n)], hurwitz.oracle(), hurwitz.transfer_map
    return [matorder.random_matrix(rng, 10**4) for _ in range(n)], matorder.oracle(), matorder.transfer_map


def cmd_verify_transfer(args):
    from .abelian import FiniteAbelianGroup

    rng = random.Random(args.seed)
    out = {"seed": args.seed, "samples": args.samples, "broken": args.broken, "instances": {}}
    ok = True
    for inst in (["hurwitz", "matrix"] if args.instance == "both" else [args.instance]):
        samples, oracle, theta = _transfer_samples(inst, args.samples, rng)
        if args.broken:
            good = theta

            def theta(x, good=good):
                s = good(x)
                return zerosum.ZsSequence(s.group, (((), s.length + 1),))

        report = factor_core.verify_transfer(theta, samples, oracle, FiniteAbelianGroup(()))
        out["instances"][inst] = report.summary()
        ok = ok and report.passed
    if not ok:
        raise PropertyViolation(out)
    return out


COMMANDS = {
    "zs-atoms": cmd_zs_atoms,
    "zs-davenport": cmd_zs_davenport,
    "zs-lengths": cmd_zs_lengths,
    "zs-delta": cmd_zs_delta,
    "hq-factor": cmd_hq_factor,
    "hq-lengths": cmd_hq_lengths,
    "hq-classes": cmd_hq_classes,
    "mat-factor": cmd_mat_factor,
    "mat-ideals": cmd_mat_ideals,
    "mat-transpose": cmd_mat_transpose,
    "verify-transfer": cmd_verify_transfer,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="factorlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cache-dir", default=None, help="atom cache directory (default $FACTORLAB_CACHE or .factorlab-cache)")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name.startswith("zs-"):
            p.add_argument("--group", required=True, help='invariant factors, e.g. "2,2"; "" for trivial')
        if name in ("zs-atoms", "zs-lengths"):
            p.add_argument("--max-len", type=int, default=None)
        if name == "zs-lengths":
            p.add_argument("--elem", required=True, help='sequence, e.g. "(1)^3*(2)^3"')
        if name == "zs-delta":
            p.add_argument("--bound", type=int, default=None)
            p.add_argument("--k", type=int, default=2)
        if name in ("hq-factor", "hq-lengths"):
            p.add_argument("--elem", required=True, help='quaternion, e.g. "1/2+1/2*i+1/2*j+1/2*k"')
        if name in ("hq-classes", "mat-ideals"):
            p.add_argument("--prime", type=int, required=True)
        if name.startswith("mat-") and name != "mat-ideals":
            p.add_argument("--matrix", action="append", help='matrix, e.g. "[[1,2],[3,4]]"')
        if name in ("hq-factor", "mat-factor"):
            p.add_argument("--cap", type=int, default=factor_core.DEFAULT_FACTORIZATION_CAP)
        if name == "verify-transfer":
            p.add_argument("--samples", type=int, default=100)
            p.add_argument("--instance", choices=["hurwitz", "matrix", "both"], default="both")
            p.add_argument("--broken", action="store_true", help="use a deliberately wrong map (negative control)")
    return parser


def _stringify(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, int) and abs(obj) >= 2**53:
        return str(obj)
    return obj


def _render(command, payload, args, status, out):
    if args.json:
        doc = {"schema": SCHEMA, "command": command, "status": status, "seed": args.seed, "result": payload}
        out.write(json.dumps(_stringify(doc), sort_keys=True) + "\n")
        return
    out.write(f"{command}: {status}\n")
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list) and value and isinstance(value[0], (list, str)):
            out.write(f"  {key}:\n")
            for item in value:
                out.write(f"    {item}\n")
        else:
            out.write(f"  {key}: {value}\n")


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    handler = COMMANDS[args.command]
    try:
        payload = handler(args)
    except PropertyViolation as exc:
        _render(args.command, exc.payload, args, "violation", out)
        return EXIT_VIOLATION
    except BudgetExceeded as exc:
        _render(args.command, {"error": str(exc)}, args, "budget-exceeded", out)
        return EXIT_BUDGET
    except (ValueError, ZeroDivisionError) as exc:
        _render(args.command, {"error": str(exc)}, args, "invalid", out)
        return EXIT_INVALID
    _render(args.command, payload, args, "ok", out)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
