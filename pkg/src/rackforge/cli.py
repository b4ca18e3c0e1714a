"""Command-line front end: ``rackforge <subcommand> ...``.

Exit status 0 on success, 1 on malformed input, 2 when a verification
reports failures.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from fractions import Fraction

from . import averaging, cubical, homology, ik, ratseries
from .errors import AxiomViolation, RackforgeError
from .quandle import (inner_group, is_connected, is_left_homogeneous, make_quandle,
                      orbits, quandle_type)

OK, BAD_INPUT, FAILED = 0, 1, 2


class InputError(Exception):
    pass


def _quandle(desc: str):
    try:
        return make_quandle(desc)
    except (OSError, ValueError, RackforgeError) as exc:
        raise InputError(str(exc)) from None


def _int_list(s: str) -> list:
    try:
        return [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise InputError("expected comma-separated integers, got %r" % s) from None


def _tuple_key(key: str) -> tuple:
    """Parse a tuple written as "0,1,2", "(0, 1, 2)" or "[0,1,2]"."""
    if not re.fullmatch(r"[\s()\[\],\d]*", key):
        raise InputError("bad tuple key %r" % key)
    return tuple(int(v) for v in re.findall(r"\d+", key))


def _fmt_key(t: tuple) -> str:
    return ",".join(map(str, t))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("%s: %s" % (path, exc)) from None


def _ring(name: str):
    if name in ("QQ", "Q"):
        return homology.QQ
    if name in ("ZZ", "Z"):
        return homology.ZZ
    if name in ("CmodZ", "C/Z"):
        return homology.CmodZ
    m = re.fullmatch(r"Z/(\d+)", name)
    if m and int(m.group(1)) > 1:
        return homology.ZMod(int(m.group(1)))
    raise InputError("unknown coefficient ring %r (use QQ, ZZ, Z/k or C/Z)" % name)


def _parse_value(ring, v):
    try:
        return ring.parse(v)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError("bad value %r for %r" % (v, ring)) from None


def _check_tuple(t: tuple, size: int, length: int):
    if len(t) != length or any(not 0 <= x < size for x in t):
        raise InputError("tuple %r is not an element of Q^%d" % (t, length))


# -- subcommands --------------------------------------------------------------

def cmd_check(args, out):
    try:
        Q = make_quandle(args.quandle)
    except AxiomViolation as exc:
        print("not a quandle: %s" % exc, file=out)
        return FAILED
    except (OSError, ValueError, RackforgeError) as exc:
        raise InputError(str(exc)) from None
    print("quandle: %s" % Q, file=out)
    print("order: %d" % Q.size, file=out)
    print("orbits: %d" % len(orbits(Q)), file=out)
    print("connected: %s" % ("yes" if is_connected(Q) else "no"), file=out)
    print("left-homogeneous: %s" % ("yes" if is_left_homogeneous(Q) else "no"), file=out)
    print("type: %d" % quandle_type(Q), file=out)
    print("|Inn|: %d" % inner_group(Q).order, file=out)
    return OK


def cmd_homology(args, out):
    Q = _quandle(args.quandle)
    if args.degree < 0:
        raise InputError("degree must be non-negative")
    H = homology.rack_homology(Q, args.degree)
    if args.json:
        print(json.dumps(H.record(args.quandle)), file=out)
    else:
        print("H_%d(%s) = %s" % (args.degree, args.quandle, H), file=out)
    return OK


def cmd_triangulate(args, out):
    Q = _quandle(args.quandle)
    P = args.truncate
    if P < 2:
        raise InputError("--truncate must be at least 2")
    try:
        X = cubical.rack_space(Q, None, P)
    except RackforgeError as exc:
        raise InputError(str(exc)) from None
    T = cubical.triangulate(X)
    print("cells: %s" % " ".join(str(X.num_cells(p)) for p in range(P + 1)), file=out)
    print("simplices: %s" % " ".join(str(T.num_simplices(k)) for k in range(P + 1)),
          file=out)
    status = OK
    if args.compare:
        top = P - 2
        bad = []
        for n in range(top + 1):
            a, b = cubical.cubical_homology(X, n), cubical.delta_homology(T, n)
            print("H_%d: cubical %s, simplicial %s" % (n, a, b), file=out)
            if (a.betti, a.torsion) != (b.betti, b.torsion):
                bad.append(n)
        if bad:
            print("cubical == simplicial: FAILED in degrees %s" % bad, file=out)
            status = FAILED
        else:
            print("cubical == simplicial: OK (degrees 0..%d)" % top, file=out)
    if args.export is not None:
        path, k = args.export
        try:
            k = int(k)
        except ValueError:
            raise InputError("--export expects PATH DEGREE") from None
        if not 0 <= k <= P:
            raise InputError("export degree %d outside 0..%d" % (k, P))
        with open(path, "w") as fh:
            json.dump(cubical.export_delta_set(T, k), fh)
    return status


def cmd_ranks(args, out):
    betti = _int_list(args.betti)
    if not betti or betti[0] != 1:
        raise InputError("--betti must start with b_0 = 1")
    N = args.depth
    if N < 1:
        raise InputError("--depth must be positive")
    try:
        if args.group_betti:
            F = ratseries.bgq_series(betti, _int_list(args.group_betti), N)
        else:
            F = ratseries.bq_series(betti, N)
        ranks = ratseries.extract_ranks(F, N)
    except RackforgeError as exc:
        raise InputError(str(exc)) from None
    out.write(ratseries.ranks_tsv(ranks))
    return OK


def cmd_ik_verify(args, out):
    Q = _quandle(args.quandle)
    if not is_connected(Q):
        print("warning: %s is not connected" % Q, file=sys.stderr)
    status = OK
    for n in range(1, args.max_degree + 1):
        if n <= args.exhaustive:
            gens, how = None, "all %d generators" % Q.size ** n
        else:
            gens = ik.random_generators(Q, n, args.samples, args.seed)
            how = "%d seeded generators" % args.samples
        bad = ik.chain_map_failures(Q, n, gens, args.basepoint)
        if bad:
            status = FAILED
            print("degree %d: FAILED on %d (%s), first %r" % (n, len(bad), how, bad[0]),
                  file=out)
        else:
            print("degree %d: OK (%s)" % (n, how), file=out)
    return status


def cmd_ik_pullback(args, out):
    Q = _quandle(args.quandle)
    ring = _ring(args.ring)
    raw = _load_json(args.cocycle)
    if not isinstance(raw, dict) or not raw:
        raise InputError("cocycle file must be a non-empty JSON object")
    data = {}
    for k, v in raw.items():
        t = _tuple_key(k)
        _check_tuple(t, Q.size, len(t))
        data[t] = _parse_value(ring, v)
    lengths = {len(t) for t in data}
    if len(lengths) != 1 or lengths == {0}:
        raise InputError("cocycle tuples must all have the same positive length")
    q = lengths.pop() - 1
    try:
        f = ik.coinvariant_cochain(Q, q, data, ring)
    except RackforgeError as exc:
        raise InputError(str(exc)) from None
    if not ik.is_homogeneous_cocycle(f, Q):
        print("warning: input is not a cocycle of the homogeneous complex", file=sys.stderr)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = ik.pullback_cocycle(f, Q, args.basepoint)
    cocycle = homology.is_rack_cocycle(g, Q)
    record = {"quandle": args.quandle, "degree": q, "basepoint": args.basepoint,
              "is_cocycle": cocycle,
              "values": {_fmt_key(t): ring.format(v) for t, v in sorted(g.values.items())}}
    print(json.dumps(record, indent=1), file=out)
    return OK


def cmd_trivialize(args, out):
    Q = _quandle(args.quandle)
    n = args.degree
    if n < 1:
        raise InputError("--degree must be at least 1")
    raw = _load_json(args.cocycle)
    if not isinstance(raw, dict):
        raise InputError("cocycle file must be a JSON object")
    vals = {}
    for k, v in raw.items():
        t = _tuple_key(k)
        _check_tuple(t, Q.size, n)
        vals[t] = _parse_value(homology.QQ, v)
    f = averaging.rational_cochain(Q, n, vals)
    try:
        triv = averaging.trivialize_cocycle(f, Q)
    except RackforgeError as exc:
        raise InputError(str(exc)) from None
    ok = averaging.reconstruct(triv, Q).values == f.values
    record = {"c": str(triv.constant),
              "g": {_fmt_key(t): str(v) for t, v in sorted(triv.primitive.values.items())}}
    print(json.dumps(record, indent=1), file=out)
    return OK if ok else FAILED


def cmd_cocycle(args, out):
    if args.det:
        triples = homology.random_rational_triples(args.samples, args.seed)
        report = homology.det_cocycle_check(triples)
        bad = [r for r in report if not r[2]]
        print("determinant cocycle: %d/%d triples with zero coboundary"
              % (len(report) - len(bad), len(report)), file=out)
        for t, v, _ in bad[:5]:
            print("  failure at %r: %s" % (t, v), file=out)
        return FAILED if bad else OK
    if not (args.quandle and args.file):
        raise InputError("give --det, or both --quandle and --file")
    Q = _quandle(args.quandle)
    ring = _ring(args.ring)
    raw = _load_json(args.file)
    if not isinstance(raw, dict) or not raw:
        raise InputError("cocycle file must be a non-empty JSON object")
    vals = {}
    for k, v in raw.items():
        t = _tuple_key(k)
        _check_tuple(t, Q.size, len(t))
        vals[t] = _parse_value(ring, v)
    lengths = {len(t) for t in vals}
    if len(lengths) != 1:
        raise InputError("cocycle tuples must all have the same length")
    n = lengths.pop()
    f = homology.Cochain.from_function(Q.size, n, lambda t: vals.get(t, ring.zero), ring)
    df = homology.coboundary(f, Q)
    bad = [t for t, v in df.values.items() if v != ring.zero]
    if bad:
        print("not a cocycle: %d nonzero values of the coboundary, first at %s"
              % (len(bad), _fmt_key(bad[0])), file=out)
        return FAILED
    print("cocycle: OK (degree %d, %s)" % (n, ring), file=out)
    return OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rackforge",
                                description="Rack homology and related computations "
                                            "for finite quandles.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    qhelp = "trivial:n, dihedral:n, alexander:N:w or table:<path>"

    s = sub.add_parser("check", help="validate a quandle and print its invariants")
    s.add_argument("--quandle", required=True, help=qhelp)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("homology", help="rack homology in one degree")
    s.add_argument("--quandle", required=True, help=qhelp)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--json", action="store_true", help="emit a JSON record")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("triangulate", help="triangulate a truncated rack space")
    s.add_argument("--quandle", required=True, help=qhelp)
    s.add_argument("--truncate", type=int, default=3, metavar="P")
    s.add_argument("--compare", action="store_true",
                   help="compare cubical and simplicial homology in degrees 0..P-2")
    s.add_argument("--export", nargs=2, metavar=("PATH", "DEGREE"),
                   help="write the degree-k simplices as JSON")
    s.set_defaults(func=cmd_triangulate)

    s = sub.add_parser("ranks", help="rational homotopy ranks of a rack space")
    s.add_argument("--betti", required=True, help="Betti numbers of Q, e.g. 1,0,1")
    s.add_argument("--depth", type=int, default=17)
    s.add_argument("--group-betti", help="Betti numbers of the structure group G")
    s.set_defaults(func=cmd_ranks)

    s = sub.add_parser("ik", help="Inoue-Kabaya chain map")
    iks = s.add_subparsers(dest="ik_command", required=True, metavar="ACTION")
    v = iks.add_parser("verify", help="check the chain-map identity")
    v.add_argument("--quandle", required=True, help=qhelp)
    v.add_argument("--max-degree", type=int, default=3)
    v.add_argument("--exhaustive", type=int, default=3,
                   help="use every generator up to this degree, samples above")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--basepoint", type=int, default=0)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_ik_verify)
    pb = iks.add_parser("pullback", help="pull a coinvariant cocycle back to the rack complex")
    pb.add_argument("--quandle", required=True, help=qhelp)
    pb.add_argument("--cocycle", required=True, help='JSON {"orbit-rep tuple": value}')
    pb.add_argument("--ring", default="QQ", help="QQ, ZZ, Z/k or C/Z")
    pb.add_argument("--basepoint", type=int, default=0)
    pb.set_defaults(func=cmd_ik_pullback)

    s = sub.add_parser("trivialize", help="write a rational cocycle as constant + coboundary")
    s.add_argument("--quandle", required=True, help=qhelp)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--cocycle", required=True, help='JSON {"tuple": "p/q"}')
    s.set_defaults(func=cmd_trivialize)

    s = sub.add_parser("cocycle", help="check a rack cocycle, or the determinant cocycle")
    s.add_argument("--quandle", help=qhelp)
    s.add_argument("--file", help='JSON {"tuple": value}')
    s.add_argument("--ring", default="QQ", help="QQ, ZZ, Z/k or C/Z")
    s.add_argument("--det", action="store_true",
                   help="check the determinant cocycle on seeded rational triples")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_cocycle)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors exit with 2
        return OK if exc.code == 0 else BAD_INPUT
    basepoint = getattr(args, "basepoint", None)
    try:
        if basepoint is not None and hasattr(args, "quandle"):
            Q = _quandle(args.quandle)
            if not 0 <= basepoint < Q.size:
                raise InputError("basepoint %d outside 0..%d" % (basepoint, Q.size - 1))
        return args.func(args, out)
    except InputError as exc:
        print("rackforge: error: %s" % exc, file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
