"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.
The default worker count for ``enumerate`` comes from ``CSM_JOBS``.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections import Counter

from . import construct as cons
from .canon import canonical_form, canonical_map_form
from .complex import (Complex, PolyhedralMap, euler_characteristic, face_vector,
                      is_closed_pseudomanifold, is_combinatorial_3manifold,
                      is_combinatorial_surface, is_connected, is_polyhedral_map,
                      map_orientation, vertex_link_failures)
from .homology import HomologyGroups, homology, is_orientable
from .notation import ParseError, format_object, parse_object, record_to_json
from .symmetry import is_centrally_symmetric

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("csmanifolds")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror}") from None
    return parse_object(text).build()


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror}") from None


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def _tuple_key(h):
    return HomologyGroups.parse(h).tuple_text()


def _summary(records):
    hist = Counter(r["homology"] for r in records)
    lines = [f"# classes: {len(records)}"]
    for h, k in sorted(hist.items(), key=lambda kv: (-HomologyGroups.parse(kv[0]).euler_characteristic(), kv[0])):
        lines.append(f"# {_tuple_key(h)}: {k}")
    ori = sum(1 for r in records if r["orientable"])
    lines.append(f"# orientable: {ori}, non-orientable: {len(records) - ori}")
    return "\n".join(lines) + "\n"


def _record_text(rec):
    return (f"n={rec['n']} f={tuple(rec['f_vector'])} H={_tuple_key(rec['homology'])} "
            f"{'orientable' if rec['orientable'] else 'non-orientable'} "
            f"[{rec['canonical']}] {rec['orbits']}")


def cmd_enumerate(args):
    from .enumerate import enumerate_cs
    if args.m < 1:
        raise UsageError("--m must be positive")
    if args.dim == 2 and args.m < 3 or args.dim == 3 and args.m < 4:
        raise UsageError(f"--m must be at least {3 if args.dim == 2 else 4} for --dim {args.dim}")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if args.output not in (None, "-"):
        # fail before hours of work, not after
        try:
            open(args.output, "a").close()
        except OSError as e:
            raise OSError(f"cannot write {args.output}: {e.strerror}") from None

    def progress(done, total, found):
        if args.verbose:
            print(f"start {done}/{total}, classes {found}", file=sys.stderr)

    run = enumerate_cs(args.m, args.dim, classify=args.classify, jobs=args.jobs,
                       checkpoint=args.checkpoint, resume=args.resume,
                       checkpoint_every=args.checkpoint_every, progress=progress)
    records = [r.record() for r in run]
    if args.homology:
        want = str(HomologyGroups.parse(args.homology))
        records = [r for r in records if r["homology"] == want]
    if args.format == "json":
        body = "".join(record_to_json(r) + "\n" for r in records)
    else:
        body = "".join(_record_text(r) + "\n" for r in records)
    _emit(body, args.output)
    sys.stdout.write(_summary(records))
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

_SEEDS = {
    "cube": cons.cube,
    "subdivided-cube": cons.subdivided_cube,
    "dodecahedron": cons.dodecahedron,
    "hexagonal-torus": cons.hexagonal_torus,
    "example-torus": cons.example_torus,
}


def _as_csmap(obj, inv):
    from .symmetry import Involution
    if inv is None:
        inv = Involution.canonical(obj.n)
    return cons.CsMap(obj, inv)


def _verification(cs):
    """Lines of the verification block and whether every check passed."""
    pm = cs.as_map()
    cs_ok = is_centrally_symmetric(cs.map, cs.involution)
    poly = is_polyhedral_map(pm)
    ori = map_orientation(pm) is not None
    chi = euler_characteristic(pm)
    lines = [
        f"n: {cs.n}",
        f"f-vector: {pm.f_vector}",
        f"chi: {chi}",
        f"face sizes: {','.join(map(str, cs.face_sizes()))}",
        f"CS: {'yes' if cs_ok else 'no'}",
        f"polyhedral: {'yes' if poly else 'no'}",
        f"orientable: {'yes' if ori else 'no'}"
        + (f", genus {(2 - chi) // 2}" if ori else f", genus {2 - chi}"),
    ]
    return lines, cs_ok and poly and ori


def cmd_construct(args):
    kind = args.kind
    if kind in ("quad", "pentagon"):
        if args.genus is None or args.genus < 0:
            raise UsageError(f"{kind} needs --genus >= 0")
        fn = cons.quad_genus_surface if kind == "quad" else cons.pentagon_genus_surface
        cs = fn(args.genus)
    elif kind == "hexagon":
        if args.k is None or args.k < 1:
            raise UsageError("hexagon needs --k >= 1 (genus 2k-1 must be odd)")
        cs = cons.hexagon_genus_surface(args.k)
    elif kind == "seed":
        if args.name not in _SEEDS:
            raise UsageError(f"seed --name must be one of {', '.join(_SEEDS)}")
        cs = _SEEDS[args.name]()
    elif kind == "dual":
        if not args.input or len(args.input) != 1:
            raise UsageError("dual needs exactly one --input")
        cs = cons.dual_map(_as_csmap(*_read(args.input[0])))
    elif kind == "connected-sum":
        if not args.input or len(args.input) != 2:
            raise UsageError("connected-sum needs two --input files")
        a = _as_csmap(*_read(args.input[0]))
        b = _as_csmap(*_read(args.input[1]))
        g = cons.GluingSpec.from_text(args.glue) if args.glue else None
        cs = cons.cs_connected_sum(a, b, g)
    else:  # argparse restricts the choices
        raise UsageError(f"unknown kind {kind}")
    lines, ok = _verification(cs)
    _emit(format_object(cs.map, cs.involution), args.output)
    sys.stdout.write("".join(f"# {x}\n" for x in lines))
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# verify / homology / canon
# ---------------------------------------------------------------------------

def _manifold_line(c):
    if c.dim == 2:
        ok = is_combinatorial_surface(c)
    elif c.dim == 3:
        ok = is_combinatorial_3manifold(c)
    else:
        return False, f"manifold: not checked in dimension {c.dim}"
    if ok:
        return True, "manifold: yes"
    bad = vertex_link_failures(c)
    if c.dim == 2:
        why = f"link of {bad[0]} not a single cycle" if bad else "not closed"
    else:
        why = f"link of {bad[0]} not a 2-sphere" if bad else "not closed"
    return False, f"manifold: no ({why})"


def cmd_verify(args):
    obj, inv = _read(args.input)
    out = []
    ok = True
    if isinstance(obj, PolyhedralMap):
        poly = is_polyhedral_map(obj)
        chi = euler_characteristic(obj)
        ori = poly and map_orientation(obj) is not None
        out += [f"polyhedral map: {'yes' if poly else 'no'}",
                f"f-vector: {obj.f_vector}", f"chi: {chi}",
                f"orientable: {'yes' if ori else 'no'}"]
        ok = poly
        if inv is not None:
            cs = is_centrally_symmetric(obj, inv)
            out.append(f"CS: {'yes' if cs else 'no'}")
            ok = ok and cs
    else:
        c = obj
        man, line = _manifold_line(c)
        out.append(line)
        conn = is_connected(c)
        out.append(f"connected: {'yes' if conn else 'no'}")
        out.append(f"f-vector: {face_vector(c)}")
        chi = euler_characteristic(c)
        out.append(f"chi: {chi}")
        h = homology(c)
        out.append(f"homology: {h.tuple_text()}")
        ori = None
        if is_closed_pseudomanifold(c) and conn:
            ori = is_orientable(c, h)
            text = "yes" if ori else "no"
            if c.dim == 2:
                text += f" genus {(2 - chi) // 2}" if ori else f" genus {2 - chi}"
            out.append(f"orientable: {text}")
        else:
            out.append("orientable: n/a")
        ok = man and conn
        if inv is not None:
            cs = is_centrally_symmetric(c, inv)
            out.append(f"CS: {'yes' if cs else 'no'}")
            ok = ok and cs
        if c.dim == 2 and man:
            rep = cons.tightness_check(c, inv)
            out += [f"tightness: {x}" for x in rep.lines()]
    sys.stdout.write("".join(x + "\n" for x in out))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_homology(args):
    obj, _ = _read(args.input)
    if isinstance(obj, PolyhedralMap):
        obj = obj.to_complex()
    h = homology(obj)
    print(h.tuple_text() if args.tuple else str(h))
    return EXIT_OK


def cmd_canon(args):
    obj, inv = _read(args.input)
    if isinstance(obj, PolyhedralMap):
        form = canonical_map_form(obj)
    else:
        kw = {"max_vertices": max(16, obj.n)}
        if args.classify != "plain":
            from .symmetry import Involution
            inv = inv or Involution.canonical(obj.n)
            kw["involution"] = inv
            if args.classify == "pointed":
                kw["marked"] = inv.pairs()[0]
        form = canonical_form(obj, **kw)
    print(form.digest)
    if args.full:
        print(form.text)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="csmanifolds",
                description="Centrally symmetric surfaces, 3-manifolds and maps.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="enumerate CS manifolds on 2m vertices")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--dim", type=int, choices=(2, 3), default=2)
    e.add_argument("--jobs", type=int, default=int(os.environ.get("CSM_JOBS", "1")))
    e.add_argument("--checkpoint")
    e.add_argument("--resume", action="store_true")
    e.add_argument("--checkpoint-every", type=int, default=10 ** 6)
    e.add_argument("--classify", choices=("pointed", "equivariant", "plain"),
                   default="pointed")
    e.add_argument("--homology", help="keep only classes with this homology, e.g. 1,1,1,1")
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("construct", help="build a CS map")
    c.add_argument("kind", choices=("quad", "pentagon", "hexagon", "dual",
                                    "connected-sum", "seed"))
    c.add_argument("--genus", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--name", help="seed name: " + ", ".join(_SEEDS))
    c.add_argument("--input", action="append")
    c.add_argument("--glue", help="gluing faces, 'faceA > faceB'")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check and classify one object file")
    v.add_argument("input")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("homology", help="integral homology of an object file")
    h.add_argument("input")
    h.add_argument("--tuple", action="store_true", help="print as (1, 3+Z2, 0)")
    h.set_defaults(func=cmd_homology)

    k = sub.add_parser("canon", help="canonical form of an object file")
    k.add_argument("input")
    k.add_argument("--classify", choices=("pointed", "equivariant", "plain"),
                   default="plain")
    k.add_argument("--full", action="store_true")
    k.set_defaults(func=cmd_canon)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help and argument errors; hand back the code instead of exiting
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"csmanifolds: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"csmanifolds: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"csmanifolds: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, cons.GluingError) as e:
        print(f"csmanifolds: {e}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
