"""Command-line front end.

Subcommands read a JSON document (a bare quiver, or an object with
``quiver`` and optional ``triangulation`` keys) from ``--input``, a shipped
``--fixture`` or standard input, and write JSON to standard output or
``--out``.  Pipelines such as ``mutlab genus 2 | mutlab mu`` therefore compose.

Exit codes: 0 success, 2 cap or budget exhausted, 1 any other error (an
error object is written to standard error).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from pathlib import Path

from . import __version__
from .class_p import is_in_P, is_in_P_prime
from .errors import CapExceeded, InvalidPoint, MutlabError
from .fixtures import fixture_names, load_fixture
from .index import IndexVector, coeff_sum_walk, random_walk, sigma_obstruction
from .laurent import specialize
from .potential import build_W0, build_W1
from .quiver import Quiver, canonical_key, enumerate_mutation_class, mutate
from .surface import (
    Triangulation,
    angle_sum,
    build_genus,
    flip,
    incident_arcs,
    mu_element,
    triangulation_seed,
)

__all__ = ["main", "build_parser", "export_dot", "load_cached_class", "save_class"]


class UsageError(MutlabError):
    code = "usage"


# input / output


def _read_document(args):
    if args.fixture:
        if args.fixture not in fixture_names():
            raise UsageError(f"unknown fixture {args.fixture!r}")
        return load_fixture(args.fixture)
    text = Path(args.input).read_text() if args.input else sys.stdin.read()
    if not text.strip():
        raise UsageError("no input: pass --fixture, --input or pipe JSON on stdin")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not JSON: {exc}") from exc
    if "quiver" in data:
        tri = data.get("triangulation")
        return Quiver.from_dict(data["quiver"]), (Triangulation.from_dict(tri) if tri else None)
    return Quiver.from_dict(data), None


def _document(q, T=None):
    return {"quiver": q.to_dict(), "triangulation": T.to_dict() if T else None}


def _emit(args, payload):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=1)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _need_triangulation(T):
    if T is None:
        raise UsageError("this command needs a triangulation in the input")
    return T


# cache


def _cache_dir(args):
    d = args.cache_dir or os.environ.get("MUTLAB_CACHE")
    return Path(d) if d else None


def _cache_stem(q: Quiver):
    # keys of large quivers exceed file-name limits, so files are named by digest
    key = canonical_key(q)
    return key.hex(), hashlib.sha256(key).hexdigest()[:32]


def save_class(cache_dir, q: Quiver, keys, cap, complete):
    """Write one hex key per line plus a manifest naming the start key and cap."""
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    start, stem = _cache_stem(q)
    (cache_dir / f"{stem}.keys").write_text("".join(k.hex() + "\n" for k in keys))
    manifest = {"start_key": start, "cap": cap, "size": len(keys), "complete": complete}
    (cache_dir / f"{stem}.manifest.json").write_text(json.dumps(manifest) + "\n")


def load_cached_class(cache_dir, q: Quiver):
    """Return ``(keys, manifest)`` for a cached class of ``q``, or ``None``."""
    start, stem = _cache_stem(q)
    man = Path(cache_dir) / f"{stem}.manifest.json"
    keys = Path(cache_dir) / f"{stem}.keys"
    if not (man.is_file() and keys.is_file()):
        return None
    manifest = json.loads(man.read_text())
    if manifest.get("start_key") != start:
        return None
    return [bytes.fromhex(line) for line in keys.read_text().split()], manifest


def export_dot(q: Quiver, path=None, name="Q"):
    """DOT text for ``q``; written to ``path`` when given."""
    text = q.to_dot(name)
    if path is not None:
        Path(path).write_text(text)
    return text


# subcommands


def cmd_genus(args):
    T, q = build_genus(args.g)
    _emit(args, _document(q, T))
    return 0


def cmd_mutate(args):
    q, T = _read_document(args)
    for k in args.k:
        q = mutate(q, k)
        if T is not None:
            T = flip(T, k)
    _emit(args, _document(q, T))
    return 0


def cmd_class(args):
    q, _ = _read_document(args)
    cache = _cache_dir(args)
    if cache is not None:
        hit = load_cached_class(cache, q)
        if hit is not None and hit[1]["complete"]:
            keys, man = hit
            _emit(args, {"size": len(keys), "complete": True, "cap": args.cap, "cached": True})
            return 0
    try:
        cls = enumerate_mutation_class(q, cap=args.cap)
    except CapExceeded as exc:
        if cache is not None:
            save_class(cache, q, exc.partial.keys, args.cap, False)
        _emit(args, {"size": len(exc.partial), "complete": False, "cap": args.cap, "cached": False})
        return 2
    if cache is not None:
        save_class(cache, q, cls.keys, args.cap, True)
    _emit(args, {"size": len(cls), "complete": True, "cap": args.cap, "cached": False})
    return 0


def cmd_classp(args):
    q, _ = _read_document(args)
    fn = is_in_P_prime if args.prime else is_in_P
    verdict = fn(q, budget=args.budget)
    _emit(args, verdict.to_dict())
    return 2 if verdict.answer == "budget-exhausted" else 0


def cmd_mu(args):
    q, T = _read_document(args)
    T = _need_triangulation(T)
    s = triangulation_seed(T)
    mu = mu_element(s, T)
    terms = [
        f"({'+'.join(f'x{i}^2' for i in t)})/({'*'.join(f'x{i}' for i in t)})"
        for t in sorted(tuple(sorted(t)) for t in T.triangles)
    ]
    _emit(args, {"mu": str(mu), "terms": terms})
    return 0


def _find_point(T, text):
    for p in T.marked_points:
        if str(p) == str(text):
            return p
    raise InvalidPoint(f"unknown marked point {text!r}; have {list(T.marked_points)}")


def cmd_angles(args):
    q, T = _read_document(args)
    T = _need_triangulation(T)
    s = triangulation_seed(T)
    points = [_find_point(T, args.point)] if args.point is not None else list(T.marked_points)
    ones = {i: 1 for i in range(T.n_arcs + 1, T.m + 1)}
    out = []
    for p in points:
        f = angle_sum(s, T, p)
        if args.specialize_frozen and ones:
            f = specialize(f, ones)
        seq, boundary = incident_arcs(T, p)
        out.append({"point": p, "boundary": boundary, "incident": seq, "angle_sum": str(f)})
    _emit(args, out if args.point is None else out[0])
    return 0


def cmd_index(args):
    q, _ = _read_document(args)
    rng = random.Random(args.seed)
    ks = random_walk(q, args.walk, rng)
    sums = coeff_sum_walk(IndexVector((-1,) * q.n_mutable, q), ks)
    _emit(args, {"steps": args.walk, "seed": args.seed, "first": sums[0], "last": sums[-1],
                 "constant": len(set(sums)) == 1})
    return 0


def cmd_obstruction(args):
    q, _ = _read_document(args)
    cap = args.cap if args.check_class else None
    _emit(args, sigma_obstruction(q, class_cap=cap).to_dict())
    return 0


def cmd_potential(args):
    q, T = _read_document(args)
    T = _need_triangulation(T)
    W = build_W0(T) if args.which == "w0" else build_W1(T, args.beta)
    _emit(args, W.to_dict() if args.json else str(W))
    return 0


def cmd_export_dot(args):
    q, _ = _read_document(args)
    text = export_dot(q)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixture", help=f"shipped input: {', '.join(fixture_names())}")
    common.add_argument("--input", help="JSON input file (default: stdin)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--cap", type=int, default=10**6, help="mutation class size cap")
    common.add_argument("--budget", type=int, default=100_000, help="per-class budget for class P")
    common.add_argument("--cache-dir", help="class cache directory (default: $MUTLAB_CACHE)")

    p = argparse.ArgumentParser(prog="mutlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("genus", parents=[common], help="build the genus-g quiver and triangulation")
    s.add_argument("g", type=int)
    s.set_defaults(func=cmd_genus)

    s = sub.add_parser("mutate", parents=[common], help="mutate (and flip) at the given vertices")
    s.add_argument("-k", type=int, nargs="+", required=True)
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("class", parents=[common], help="enumerate the mutation class")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("classp", parents=[common], help="decide membership in class P")
    s.add_argument("--prime", action="store_true", help="only one-point extensions")
    s.set_defaults(func=cmd_classp)

    s = sub.add_parser("mu", parents=[common], help="the angle sum at the puncture")
    s.set_defaults(func=cmd_mu)

    s = sub.add_parser("angles", parents=[common], help="angle sums at marked points")
    s.add_argument("--point", help="marked point id (default: all)")
    s.add_argument("--specialize-frozen", action="store_true", help="set boundary variables to 1")
    s.set_defaults(func=cmd_angles)

    s = sub.add_parser("index", parents=[common], help="coefficient sums along a random walk")
    s.add_argument("--walk", type=int, default=100)
    s.set_defaults(func=cmd_index)

    s = sub.add_parser("obstruction", parents=[common], help="index-sum reachability report")
    s.add_argument("--check-class", action="store_true",
                   help="confirm every mutation class member is 2-regular (up to --cap)")
    s.set_defaults(func=cmd_obstruction)

    s = sub.add_parser("potential", parents=[common], help="the potentials W0 or W1")
    s.add_argument("--which", choices=["w0", "w1"], default="w0")
    s.add_argument("--beta", type=int, default=0, help="arrow id starting the psi-cycle")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_potential)

    s = sub.add_parser("export-dot", parents=[common], help="Graphviz DOT export")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        sys.stderr.write(json.dumps(exc.to_json()) + "\n")
        return 2
    except MutlabError as exc:
        sys.stderr.write(json.dumps(exc.to_json()) + "\n")
        return 1
    except (OSError, ValueError, KeyError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
