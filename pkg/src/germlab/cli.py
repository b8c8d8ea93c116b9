"""Command line front end.

Germ files are line oriented:

    # a comment
    vars: x, y, z
    kind: general
    matrix:
    [ x, y, z ]
    [ y, z, x^2 ]

`vars:` must precede the matrix block; `kind:` is optional and defaults to
general.  Entries follow the polynomial grammar of ring.parse_poly, and a
`#` starts a comment anywhere on a line.

Exit codes: 0 success, 1 malformed input, 2 a computation refused to
certify within the jet-order budget, 3 table verification found
mismatches.  Every dimension printed by the human output carries its
certification order, so a plain number is never an uncertified guess.
The flag --max-order (or the environment variable GERMLAB_MAX_ORDER)
bounds the certification walk; --json switches to a stable structured
output with top-level keys command/input/options/result/wall_time.
"""

import argparse
import json
import os
import sys
import time

from . import geom
from . import tables
from .detideal import minors, pfaffians, det, pfaffian, parse_matrix
from .invariants import (
    ade_recognize,
    boundary_milnor,
    milnor,
    milnor_icis,
    quasi_homogeneous,
    quasi_homogeneous_matrix,
    tjurina_number,
)
from .jetlin import DEFAULT_MAX_ORDER, UncertifiedError
from .ring import ParseError, format_poly
from .tangent import determinacy_bound, miniversal_unfolding, tau
from .tjurina import b3_threefold, tjurina_transform

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNCERTIFIED = 2
EXIT_MISMATCH = 3


class GermFileError(ValueError):
    """Malformed germ file, with a position-annotated message."""


# ---------------------------------------------------------------------------
#  germ files
# ---------------------------------------------------------------------------


def parse_germ_file(text, source="<germ>"):
    """Parse the line-oriented germ format into a MatrixGerm."""
    vars_names = None
    kind = "general"
    rows = []
    seen_matrix = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = "%s:%d" % (source, lineno)
        if line.startswith("vars:"):
            if seen_matrix:
                raise GermFileError("%s: vars after matrix block" % where)
            vars_names = [v.strip() for v in line[5:].split(",") if v.strip()]
            if not vars_names:
                raise GermFileError("%s: empty vars declaration" % where)
            for v in vars_names:
                if not v.isidentifier():
                    raise GermFileError(
                        "%s: '%s' is not a variable name" % (where, v))
        elif line.startswith("kind:"):
            if seen_matrix:
                raise GermFileError("%s: kind after matrix block" % where)
            kind = line[5:].strip()
            if kind not in ("general", "symmetric", "skew"):
                raise GermFileError(
                    "%s: kind must be general, symmetric or skew, not '%s'"
                    % (where, kind))
        elif line == "matrix:":
            if vars_names is None:
                raise GermFileError("%s: matrix before vars" % where)
            seen_matrix = True
        elif line.startswith("[") and line.endswith("]"):
            if not seen_matrix:
                raise GermFileError(
                    "%s: matrix row outside a matrix block" % where)
            cells = [c.strip() for c in line[1:-1].split(",")]
            if not all(cells):
                raise GermFileError("%s: empty matrix entry" % where)
            rows.append((where, cells))
        else:
            raise GermFileError("%s: unrecognized line '%s'" % (where, line))
    if vars_names is None:
        raise GermFileError("%s: missing vars declaration" % source)
    if not rows:
        raise GermFileError("%s: missing matrix rows" % source)
    width = len(rows[0][1])
    for where, cells in rows:
        if len(cells) != width:
            raise GermFileError(
                "%s: row has %d entries, expected %d"
                % (where, len(cells), width))
    try:
        return parse_matrix([cells for _, cells in rows], vars_names, kind)
    except (ParseError, ValueError) as exc:
        raise GermFileError("%s: %s" % (source, exc))


def _load_germ(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GermFileError(str(exc))
    return parse_germ_file(text, source=path)


def _hypersurface_of(A):
    """det for a square germ, the Pfaffian for a skew one."""
    if A.kind == "skew":
        return pfaffian([list(r) for r in A.entries])
    if A.m != A.n:
        raise GermFileError(
            "this command needs a square matrix germ (the hypersurface is "
            "its determinant); got %d x %d" % (A.m, A.n))
    return det(A.submatrix(range(A.m), range(A.n)))


def _entries_row_major(A):
    return [A.entries[i][j] for i in range(A.m) for j in range(A.n)]


def _germ_echo(A, path):
    return {
        "source": path,
        "vars": list(A.vars.names),
        "kind": A.kind,
        "matrix": [[format_poly(f) for f in row] for row in A.entries],
    }


# ---------------------------------------------------------------------------
#  emission
# ---------------------------------------------------------------------------


class Emitter:
    """Collects the report of one command and prints it once, as text or
    as the stable JSON object."""

    def __init__(self, command, as_json):
        self.as_json = as_json
        self.doc = {"command": command, "input": None, "options": {},
                    "result": None, "wall_time": None}
        self.lines = []
        self.t0 = time.time()

    def say(self, line):
        self.lines.append(line)

    def finish(self, code):
        self.doc["wall_time"] = round(time.time() - self.t0, 6)
        if self.as_json:
            print(json.dumps(self.doc, indent=2))
        else:
            for line in self.lines:
                print(line)
        return code

    def fail_uncertified(self, message):
        self.doc["result"] = {"certified": False, "reason": str(message)}
        self.say("not certified: %s" % message)
        return self.finish(EXIT_UNCERTIFIED)


def _cert(res):
    return "(certified at jet order %d)" % res.certified_at


# ---------------------------------------------------------------------------
#  the commands
# ---------------------------------------------------------------------------


def _cmd_tau(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    res = tau(A, args.group, max_order=args.max_order,
              strict_units=args.strict_units)
    if not res.certified:
        return em.fail_uncertified(res.reason)
    em.doc["result"] = {"group": args.group, "value": res.dim,
                        "certified_at": res.certified_at}
    em.say("tau_%s = %d  %s" % (args.group, res.dim, _cert(res)))
    return em.finish(EXIT_OK)


def _cmd_mu(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    f = _hypersurface_of(A)
    res = milnor(f, max_order=args.max_order)
    if not res.certified:
        return em.fail_uncertified(res.reason)
    em.doc["result"] = {"value": res.dim, "certified_at": res.certified_at}
    em.say("mu = %d  %s" % (res.dim, _cert(res)))
    return em.finish(EXIT_OK)


def _cmd_tjurina(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    f = _hypersurface_of(A)
    res = tjurina_number(f, max_order=args.max_order)
    if not res.certified:
        return em.fail_uncertified(res.reason)
    em.doc["result"] = {"value": res.dim, "certified_at": res.certified_at}
    em.say("tau = %d  %s" % (res.dim, _cert(res)))
    return em.finish(EXIT_OK)


def _cmd_mu_boundary(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    f = _hypersurface_of(A)
    names = list(A.vars.names)
    if args.boundary not in names:
        raise GermFileError(
            "boundary variable '%s' is not among vars %s"
            % (args.boundary, ", ".join(names)))
    bm = boundary_milnor(f, boundary=names.index(args.boundary),
                         max_order=args.max_order)
    em.doc["result"] = {"mu": bm.mu, "mu_section": bm.mu_section,
                        "mu_boundary": bm.mu_boundary,
                        "boundary": args.boundary}
    em.say("(%d,%d,%d)  (mu, mu_section, mu_boundary along %s = 0; "
           "all colengths certified)"
           % (bm.mu, bm.mu_section, bm.mu_boundary, args.boundary))
    return em.finish(EXIT_OK)


def _cmd_mu_icis(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    value = milnor_icis(_entries_row_major(A), max_order=args.max_order)
    em.doc["result"] = {"value": value}
    em.say("mu_icis = %d  (all Le-Greuel colengths certified)" % value)
    return em.finish(EXIT_OK)


def _cmd_determinacy(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    group = args.group or _default_group(A)
    k = determinacy_bound(A, group, max_order=args.max_order,
                          strict_units=args.strict_units)
    em.doc["result"] = {"group": group, "jet_order": k}
    em.say("%d-determined under %s  (certified)" % (k, group))
    return em.finish(EXIT_OK)


def _cmd_unfold(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    group = args.group or _default_group(A)
    basis = miniversal_unfolding(A, group, max_order=args.max_order,
                                 strict_units=args.strict_units)
    em.doc["result"] = {
        "group": basis.group,
        "tau": basis.tau,
        "certified_at": basis.certified_at,
        "matrices": [[[format_poly(f) for f in row] for row in M.entries]
                     for M in basis.matrices],
    }
    em.say("tau_%s = %d  (certified at jet order %d)"
           % (basis.group, basis.tau, basis.certified_at))
    em.say("miniversal unfolding directions:")
    for i, M in enumerate(basis.matrices, start=1):
        body = "; ".join("[ %s ]" % ", ".join(format_poly(f) for f in row)
                         for row in M.entries)
        em.say("  %2d: %s" % (i, body))
    return em.finish(EXIT_OK)


def _cmd_minors(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    gens = minors(A, args.t)
    em.doc["result"] = {"t": args.t,
                        "generators": [format_poly(g) for g in gens]}
    em.say("%d minors of size %d:" % (len(gens), args.t))
    for g in gens:
        em.say("  %s" % format_poly(g))
    return em.finish(EXIT_OK)


def _cmd_pfaffians(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    gens = pfaffians(A, args.s)
    em.doc["result"] = {
        "s": args.s,
        "generators": [{"index": list(idx), "pfaffian": format_poly(g)}
                       for idx, g in gens],
    }
    em.say("%d principal Pfaffians of size %d:" % (len(gens), 2 * args.s))
    for idx, g in gens:
        em.say("  %s: %s" % ("".join(str(i + 1) for i in idx), format_poly(g)))
    return em.finish(EXIT_OK)


def _cmd_tjurina_transform(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    charts = tjurina_transform(A, max_order=args.max_order)
    out = []
    for an in charts:
        rec = {
            "chart": an.chart.index + 1,
            "params": list(an.chart.params),
            "eliminated": {v: format_poly(g)
                           for v, g in sorted(an.eliminated.items())},
            "residual_vars": (list(an.residual_vars.names)
                              if an.residual_vars is not None else []),
            "residual": [format_poly(g) for g in an.residual],
            "smooth": an.smooth,
            "mu": an.mu,
            "tau": an.tau,
            "label": str(an.label) if an.label is not None else None,
            "exceptional_clear": an.exceptional_clear,
            "elimination_order": an.elimination_order,
        }
        out.append(rec)
        head = "chart %d" % rec["chart"]
        if an.smooth:
            em.say("%s: smooth point" % head)
        else:
            bits = []
            if an.mu is not None:
                bits.append("mu = %d" % an.mu)
            if an.tau is not None:
                bits.append("tau = %d" % an.tau)
            if an.label is not None:
                bits.append("type %s" % an.label)
            em.say("%s: %s  (eliminated to %d equations in %s; certified "
                   "at jet order %d)"
                   % (head, ", ".join(bits) if bits else "singular",
                      len(an.residual),
                      ", ".join(rec["residual_vars"]) or "no variables",
                      an.elimination_order))
            for g in rec["residual"]:
                em.say("    %s" % g)
        if an.exceptional_clear is False:
            em.say("    warning: singular point on the exceptional line "
                   "away from the chart origin")
    em.doc["result"] = {"charts": out}
    return em.finish(EXIT_OK)


def _cmd_b3(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    value = b3_threefold(A, max_order=args.max_order)
    em.doc["result"] = {"b3": value, "betti": [1, 0, 1, value]}
    em.say("b3 = %d  (all chart Milnor numbers certified)" % value)
    em.say("betti = (1, 0, 1, %d)" % value)
    return em.finish(EXIT_OK)


def _cmd_recognize(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    f = _hypersurface_of(A)
    label = ade_recognize(f, max_order=args.max_order)
    em.doc["result"] = {"label": str(label), "family": label.family,
                        "index": label.index, "mu": label.mu}
    if label.simple:
        em.say("%s  (mu = %d, certified)" % (label, label.mu))
    else:
        em.say(str(label))
    return em.finish(EXIT_OK)


def _cmd_qh(args, em):
    A = _load_germ(args.germ)
    em.doc["input"] = _germ_echo(A, args.germ)
    if A.m == 1 and A.n == 1:
        w = quasi_homogeneous(A.entries[0][0])
        if w is None:
            em.doc["result"] = None
            em.say("not quasi-homogeneous")
        else:
            em.doc["result"] = {"weights": list(w.weights),
                                "degree": w.degree}
            em.say("weights %s, degree %d"
                   % (", ".join("%s: %d" % (v, wt) for v, wt
                                in zip(A.vars.names, w.weights)), w.degree))
    else:
        w = quasi_homogeneous_matrix(A)
        if w is None:
            em.doc["result"] = None
            em.say("not quasi-homogeneous")
        else:
            em.doc["result"] = {"weights": list(w.weights),
                                "row_degrees": list(w.row_degrees),
                                "col_degrees": list(w.col_degrees)}
            em.say("weights %s"
                   % ", ".join("%s: %d" % (v, wt) for v, wt
                               in zip(A.vars.names, w.weights)))
            em.say("row degrees %s, column degrees %s"
                   % (list(w.row_degrees), list(w.col_degrees)))
    return em.finish(EXIT_OK)


def _default_group(A):
    if A.kind == "symmetric":
        return "sym"
    if A.kind == "skew":
        return "sk"
    return "gl"


# ---------------------------------------------------------------------------
#  geom subcommands
# ---------------------------------------------------------------------------


def _cmd_geom(args, em):
    if args.geom_command == "profile":
        prof = geom.generic_profile(args.kind, args.m, args.n, args.s, args.p)
        em.doc["input"] = {"kind": args.kind, "m": args.m, "n": args.n,
                           "s": args.s, "p": args.p}
        em.doc["result"] = {
            "expected_codim": prof.expected_codim,
            "ambient_dim": prof.ambient_dim,
            "variety_dim": prof.variety_dim,
            "isolated": prof.isolated,
            "smoothable": prof.smoothable,
            "link_reduced_euler": prof.link_reduced_euler,
            "euler_obstruction": prof.euler_obstruction,
        }
        em.say("type (%d, %d, %d) %s in (C^%d, 0):"
               % (prof.m, prof.n, prof.s, prof.kind, prof.p))
        em.say("  expected codimension %d, variety dimension %d"
               % (prof.expected_codim, prof.variety_dim))
        em.say("  isolated: %s, smoothable: %s"
               % (prof.isolated, prof.smoothable))
        if prof.link_reduced_euler is not None:
            em.say("  chi-bar(link) = %d, Euler obstruction = %d"
                   % (prof.link_reduced_euler, prof.euler_obstruction))
    elif args.geom_command == "link2xn":
        desc = geom.link_homotopy_2xn(args.n, args.p)
        em.doc["input"] = {"n": args.n, "p": args.p}
        em.doc["result"] = {"descriptor": str(desc),
                            "reduced_euler": desc.reduced_euler(),
                            "resolved": desc.resolved}
        em.say(str(desc))
    elif args.geom_command == "euler":
        em.doc["input"] = {"mode": args.mode, "m": args.m, "n": args.n,
                           "s": args.s, "p": args.p}
        if args.mode == "bouquet":
            lambdas = _parse_assignments(args.lam, "--lam", int)
            em.doc["input"]["lambdas"] = {str(k): v
                                          for k, v in sorted(lambdas.items())}
            em.doc["input"]["link_euler"] = args.link_euler
            chi = geom.euler_characteristic(
                "bouquet", args.m, args.n, args.s, args.p, lambdas,
                link_euler_L=args.link_euler)
            em.say("chi-bar = %d" % chi)
        else:
            mult = {}
            for key, v in _parse_assignments(args.mult, "--mult", str).items():
                try:
                    r, i = (int(t) for t in key.split(","))
                except ValueError:
                    raise GermFileError(
                        "--mult expects R,I=VALUE, got '%s=%s'" % (key, v))
                mult[(r, i)] = int(v)
            em.doc["input"]["multiplicities"] = {
                "%d,%d" % k: v for k, v in sorted(mult.items())}
            chi = geom.euler_characteristic(
                "polar", args.m, args.n, args.s, args.p, mult)
            em.say("chi = %d" % chi)
        em.doc["result"] = {"value": chi}
    else:  # fiber
        top = geom.milnor_fiber_topology(args.kind, args.m)
        em.doc["input"] = {"kind": args.kind, "m": args.m}
        em.doc["result"] = {
            "symmetric_space": top.symmetric_space,
            "generator_degrees": list(top.generator_degrees),
            "extra_module_generator": top.extra_module_generator,
            "mod2_generator_degrees":
                (list(top.mod2_generator_degrees)
                 if top.mod2_generator_degrees is not None else None),
            "stable_range": top.stable_range,
            "ambient_dim": top.ambient_dim,
            "link_sphere_dim": top.link_sphere_dim,
        }
        em.say("Milnor fiber of the %s determinantal hypersurface, m = %d"
               % (args.kind, args.m))
        em.say("  homotopy type of %s" % top.symmetric_space)
        em.say("  rational cohomology: exterior algebra on degrees %s"
               % (list(top.generator_degrees),))
        if top.extra_module_generator is not None:
            em.say("  free module over {1, e_%d}" % top.extra_module_generator)
        em.say("  stable range: pi_j stable for j < %d" % top.stable_range)
        em.say("  complex link: S^%d" % top.link_sphere_dim)
    return em.finish(EXIT_OK)


def _parse_assignments(pairs, flag, keytype):
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise GermFileError("%s expects KEY=VALUE, got '%s'"
                                % (flag, item))
        k, v = item.split("=", 1)
        try:
            out[keytype(k)] = int(v)
        except ValueError:
            raise GermFileError("%s: bad assignment '%s'" % (flag, item))
    return out


# ---------------------------------------------------------------------------
#  verify
# ---------------------------------------------------------------------------


def _cmd_verify(args, em):
    path = args.table
    if os.path.exists(path):
        rows = tables.load_tables(path)
    else:
        try:
            rows = tables.load_shipped(path)
        except (FileNotFoundError, ModuleNotFoundError):
            raise GermFileError("no such file or shipped table: %s" % path)
    report = tables.verify(rows, param_bound=args.max_param, jobs=args.jobs,
                           max_order=args.max_order)
    em.doc["input"] = {"table": path, "rows": len(rows),
                       "max_param": args.max_param, "jobs": args.jobs}
    em.doc["result"] = {
        "summary": {
            "checks": len(report.outcomes),
            "passed": report.passed,
            "failed": report.failed,
            "skipped": report.skipped,
        },
        "outcomes": [
            {
                "table": o.table,
                "row": o.row,
                "params": {k: v for k, v in o.params},
                "check": o.check,
                "status": o.status,
                "expected": o.expected,
                "got": o.got,
                "reason": o.reason,
            }
            for o in report.outcomes
        ],
    }
    em.say(report.summary())
    uncertified = 0
    for o in report.outcomes:
        if o.status == "fail":
            em.say(o.describe())
        elif o.status == "skipped":
            if o.reason and o.reason.startswith("uncertified"):
                uncertified += 1
            em.say(o.describe())
    if report.failed:
        return em.finish(EXIT_MISMATCH)
    if uncertified:
        return em.finish(EXIT_UNCERTIFIED)
    return em.finish(EXIT_OK)


# ---------------------------------------------------------------------------
#  argument plumbing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse exits usage errors with status 2, which this tool
    reserves for uncertified computations; route them to status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "germlab: error: %s\n" % message)


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, metavar="N",
                        default=argparse.SUPPRESS,
                        help="jet-order budget for certification "
                             "(default %d, or GERMLAB_MAX_ORDER)"
                             % DEFAULT_MAX_ORDER)
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS,
                        help="emit the stable JSON report")
    common.add_argument("--strict-units", action="store_true",
                        default=argparse.SUPPRESS,
                        help="refuse matrices with unit entries instead of "
                             "splitting them off")
    return common


def build_parser():
    common = _common_flags()
    parser = _Parser(
        prog="germlab",
        description="Exact invariants of determinantal singularities.",
        parents=[common])
    # the common flags use SUPPRESS defaults so that a flag given before
    # the subcommand survives the subparser pass (the parent actions are
    # shared objects; setting defaults on them would clobber it); main()
    # fills in the fallbacks with getattr instead
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def germ_command(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("germ", metavar="FILE", help="germ file")
        p.set_defaults(fn=fn)
        return p

    p = germ_command("tau", _cmd_tau, "codimension under a matrix group")
    p.add_argument("--group", required=True, choices=("gl", "sl", "sym", "sk"))
    germ_command("mu", _cmd_mu, "Milnor number of det (Pf for skew)")
    germ_command("tjurina", _cmd_tjurina, "Tjurina number of det (Pf)")
    p = germ_command("mu-boundary", _cmd_mu_boundary,
                     "boundary Milnor triple (mu, mu_section, mu_boundary)")
    p.add_argument("--boundary", required=True, metavar="VAR",
                   help="coordinate whose zero set is the boundary")
    germ_command("mu-icis", _cmd_mu_icis,
                 "Milnor number of the ICIS cut out by all entries")
    p = germ_command("determinacy", _cmd_determinacy,
                     "certified finite-determinacy order")
    p.add_argument("--group", choices=("gl", "sl", "sym", "sk"),
                   help="defaults to the natural group of the kind")
    p = germ_command("unfold", _cmd_unfold, "miniversal unfolding basis")
    p.add_argument("--group", choices=("gl", "sl", "sym", "sk"),
                   help="defaults to the natural group of the kind")
    p = germ_command("minors", _cmd_minors, "t x t minor generators")
    p.add_argument("-t", type=int, required=True, metavar="K")
    p = germ_command("pfaffians", _cmd_pfaffians,
                     "2s x 2s principal Pfaffians of a skew germ")
    p.add_argument("-s", type=int, required=True, metavar="K")
    germ_command("tjurina-transform", _cmd_tjurina_transform,
                 "chart-by-chart analysis of the Tjurina transform")
    germ_command("b3", _cmd_b3,
                 "third Betti number of a 2 x 3 determinantal 3-fold")
    germ_command("recognize", _cmd_recognize,
                 "A-D-E type of det (Pf) when simple")
    germ_command("qh", _cmd_qh, "quasi-homogeneous weights, if any")

    g = sub.add_parser("geom", parents=[common],
                       help="closed-form geometry of generic determinantal "
                            "varieties")
    g.set_defaults(fn=_cmd_geom)
    gsub = g.add_subparsers(dest="geom_command", metavar="WHAT",
                            required=True)
    gp = gsub.add_parser("profile", parents=[common],
                         help="codimension/smoothability profile")
    gp.add_argument("kind", choices=("general", "symmetric", "skew"))
    gp.add_argument("m", type=int)
    gp.add_argument("n", type=int)
    gp.add_argument("s", type=int)
    gp.add_argument("p", type=int)
    gl = gsub.add_parser("link2xn", parents=[common],
                         help="homotopy type of the link of a 2 x n germ")
    gl.add_argument("n", type=int)
    gl.add_argument("p", type=int)
    ge = gsub.add_parser("euler", parents=[common],
                         help="Euler characteristic of the essential "
                              "smoothing")
    ge.add_argument("mode", choices=("bouquet", "polar"))
    ge.add_argument("m", type=int)
    ge.add_argument("n", type=int)
    ge.add_argument("s", type=int)
    ge.add_argument("p", type=int)
    ge.add_argument("--lam", action="append", metavar="R=V",
                    help="lambda(r) sphere count (bouquet mode)")
    ge.add_argument("--link-euler", type=int, metavar="E",
                    help="chi-bar of the link L (bouquet mode)")
    ge.add_argument("--mult", action="append", metavar="R,I=V",
                    help="polar multiplicity m_i of stratum r (polar mode)")
    gf = gsub.add_parser("fiber", parents=[common],
                         help="topology of the generic determinantal "
                              "Milnor fiber")
    gf.add_argument("kind", choices=("sq", "sym", "sk"))
    gf.add_argument("m", type=int)

    v = sub.add_parser("verify", parents=[common],
                       help="recompute a classification table")
    v.add_argument("table", metavar="FILE",
                   help="table file, or the name of a shipped table")
    v.add_argument("--max-param", type=int, default=4, metavar="K",
                   help="verify parametrized rows up to this value")
    v.add_argument("--jobs", type=int, default=1, metavar="J",
                   help="parallel worker processes")
    v.set_defaults(fn=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) is None:
        parser.print_help()
        return EXIT_INPUT
    args.json = getattr(args, "json", False)
    args.strict_units = getattr(args, "strict_units", False)
    args.max_order = getattr(args, "max_order", None)
    if args.max_order is None:
        env = os.environ.get("GERMLAB_MAX_ORDER")
        if env is not None:
            try:
                args.max_order = int(env)
            except ValueError:
                print("germlab: GERMLAB_MAX_ORDER must be an integer, "
                      "got '%s'" % env, file=sys.stderr)
                return EXIT_INPUT
    em = Emitter(args.command, args.json)
    em.doc["options"] = {
        "max_order": (args.max_order if args.max_order is not None
                      else DEFAULT_MAX_ORDER),
        "strict_units": args.strict_units,
    }
    try:
        return args.fn(args, em)
    except UncertifiedError as exc:
        return em.fail_uncertified(exc)
    except (GermFileError, ParseError, tables.TableFormatError) as exc:
        print("germlab: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print("germlab: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
