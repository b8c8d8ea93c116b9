"""Machine-readable classification tables and their verification harness.

A dataset file is a sequence of records separated by blank lines, one per
row family of a classification table.  Each record looks like

    table: cm2_threefolds
    name: A_k
    note: transform has a single A_k point at a chart origin
    vars: x, y, z, v, w
    kind: general
    matrix:
    [ x, y, z ]
    [ v, w, x^(k+1) + y^2 ]
    param: k 1
    where: k <= l
    expected: tau_gl = k + 2
    expected: b3 = k
    check: tau_gl
    check: b3

`matrix` rows are in the germ grammar of the cli module, except that an
exponent may also be a parameter name or a parenthesised integer
expression in the parameters, e.g. ``x^(k+1)`` or ``y^k``.  Parameters
never occur at coefficient level.  `param` lines give the name, the
smallest admissible value, and optionally a largest one; families open at
the top are capped by the verification bound.  `where` lines carry side
conditions coupling several parameters.  `expected` lines give integer
expressions (+, -, * only) for the printed columns, and `check` lines say
how to recompute them:

    tau_gl | tau_sl | tau_sym | tau_sk
        group codimension of the germ; tau_gl of a symmetric germ is
        taken on the matrix viewed as a plain square matrix
    mu | tau
        Milnor/Tjurina number of the determinant (Pfaffian for skew
        germs) as a hypersurface germ
    mu_icis VAR.. / tau_icis
        Milnor/Tjurina number of the complete intersection cut out by
        all matrix entries, in row-major order
    mu_boundary VAR
        the triple (mu, mu_section, mu_boundary) relative to VAR = 0
    b3
        middle Betti number of the determinantal 3-fold, by the Tjurina
        transform
    label FAMILY INDEX-EXPR
        ADE type of the determinant/Pfaffian (D3 and A3 are the same
        germ and compare equal)
    recorded COLUMN REASON...
        a printed column kept for the record but not recomputed here;
        verification reports it as skipped with the reason

Every expected column must be covered by exactly one check.  Reports are
deterministic: outcomes are ordered by record position, then parameter
tuple, then check position, regardless of the worker count.
"""

import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .detideal import MatrixGerm, det, pfaffian
from .invariants import (ade_recognize, boundary_milnor, milnor, milnor_icis,
                         tjurina_number)
from .jetlin import DEFAULT_MAX_ORDER, UncertifiedError
from .ring import ParseError, Poly, VariableSet, parse_poly
from .tangent import tau, tau_icis
from .tjurina import b3_threefold

CHECK_KINDS = ("tau_gl", "tau_sl", "tau_sym", "tau_sk", "mu", "tau",
               "mu_icis", "tau_icis", "mu_boundary", "b3", "label",
               "recorded")

# columns read by each computing check; `recorded` names its column itself
CHECK_COLUMNS = {
    "tau_gl": ("tau_gl",),
    "tau_sl": ("tau_sl",),
    "tau_sym": ("tau_sym",),
    "tau_sk": ("tau_sk",),
    "mu": ("mu",),
    "tau": ("tau",),
    "mu_icis": ("mu_icis",),
    "tau_icis": ("tau_icis",),
    "mu_boundary": ("mu", "mu_section", "mu_boundary"),
    "b3": ("b3",),
    "label": (),
}


class TableFormatError(ValueError):
    """A dataset file violating the record schema, with a locator."""


def eval_int_expr(expr, values):
    """Evaluate an integer expression in the given parameters.

    The expression language is the polynomial grammar restricted to
    integer coefficients and the operations +, -, *; the parameters are
    substituted and the result must come out an integer.
    """
    names = tuple(sorted(values))
    f = parse_poly(expr, VariableSet(names) if names else VariableSet(("k",)))
    total = 0
    for exps, c in f.terms.items():
        if c.denominator != 1:
            raise TableFormatError(
                "expected-value expression %r is not integral" % expr)
        term = int(c)
        for nm, e in zip(names, exps):
            term *= values[nm] ** e
        total += term
    return total


_EXPONENT = re.compile(r"\^\s*(\(([^()]*)\)|([A-Za-z_][A-Za-z_0-9]*)|(\d+))")


def instantiate_entry(entry, values):
    """Replace parametrised exponents by their integer values.

    Exponents may be a literal, a parameter name, or a parenthesised
    expression in the parameters; everything else in the entry is already
    in the plain germ grammar.
    """
    def sub(mt):
        if mt.group(4) is not None:
            return mt.group(0)
        expr = mt.group(2) if mt.group(2) is not None else mt.group(3)
        if mt.group(3) is not None and mt.group(3) not in values:
            raise TableFormatError(
                "exponent %r is not a declared parameter" % mt.group(3))
        e = eval_int_expr(expr, values)
        if e < 0:
            raise TableFormatError(
                "exponent %r evaluates to %d < 0 at %r" % (expr, e, values))
        return "^%d" % e

    return _EXPONENT.sub(sub, entry)


_OPS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


@dataclass
class TableRow:
    """One row family of a classification table.

    matrix entries are kept as template strings; params are (name, min,
    max-or-None) in declaration order, wheres are (left, op, right) side
    conditions with right a parameter name or an integer.
    """

    table: str
    name: str
    vars: tuple
    kind: str
    matrix: list
    params: list = field(default_factory=list)
    wheres: list = field(default_factory=list)
    expected: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def param_names(self):
        return tuple(nm for nm, _, _ in self.params)

    def admissible(self, bound):
        """All parameter tuples within the declared ranges capped by
        `bound` and satisfying the side conditions."""
        ranges = []
        for nm, lo, hi in self.params:
            top = bound if hi is None else min(hi, bound)
            ranges.append(range(lo, top + 1))
        out = []
        for tup in product(*ranges):
            values = dict(zip(self.param_names(), tup))
            ok = True
            for left, op, right in self.wheres:
                rv = values[right] if right in values else int(right)
                if not _OPS[op](values[left], rv):
                    ok = False
                    break
            if ok:
                out.append(tup)
        return out

    def instantiate(self, values):
        """The MatrixGerm at one parameter point."""
        vars = VariableSet(self.vars)
        entries = [
            [parse_poly(instantiate_entry(e, values), vars) for e in row]
            for row in self.matrix
        ]
        return MatrixGerm(entries, self.kind)

    def expected_value(self, column, values):
        if column not in self.expected:
            raise KeyError("row %s has no expected column %r"
                           % (self.name, column))
        return eval_int_expr(self.expected[column], values)


_FIELD = re.compile(r"^([a-z_0-9]+):\s*(.*?)\s*$")


def loads(text, source="<string>"):
    """Parse dataset text into a list of TableRow."""
    rows = []
    record = []
    start = 1
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip()
        if line.strip() == "":
            if record:
                rows.append(_parse_record(record, source, start))
                record = []
            start = lineno + 1
            continue
        record.append((lineno, line))
    if record:
        rows.append(_parse_record(record, source, start))
    return rows


def _fail(source, lineno, msg):
    raise TableFormatError("%s:%d: %s" % (source, lineno, msg))


def _parse_record(lines, source, start):
    fields = []
    in_matrix = False
    matrix = []
    for lineno, line in lines:
        if in_matrix and line.lstrip().startswith("["):
            body = line.strip()
            if not body.endswith("]"):
                _fail(source, lineno, "matrix row must end with ']'")
            cells = [c.strip() for c in body[1:-1].split(",")]
            if any(c == "" for c in cells):
                _fail(source, lineno, "empty matrix entry")
            matrix.append(cells)
            continue
        in_matrix = False
        mt = _FIELD.match(line)
        if not mt:
            _fail(source, lineno, "expected 'field: value', got %r" % line)
        key, value = mt.group(1), mt.group(2)
        if key == "matrix":
            if value != "":
                _fail(source, lineno, "matrix: takes no inline value")
            in_matrix = True
            continue
        fields.append((lineno, key, value))

    data = {}
    notes = []
    params = []
    wheres = []
    expected = {}
    expected_order = []
    checks = []
    for lineno, key, value in fields:
        if key in ("table", "name", "vars", "kind"):
            if key in data:
                _fail(source, lineno, "duplicate field %r" % key)
            data[key] = value
        elif key == "note":
            notes.append(value)
        elif key == "param":
            bits = value.split()
            if len(bits) not in (2, 3) or not bits[0].isidentifier():
                _fail(source, lineno,
                      "param wants 'name min [max]', got %r" % value)
            try:
                lo = int(bits[1])
                hi = int(bits[2]) if len(bits) == 3 else None
            except ValueError:
                _fail(source, lineno, "param bounds must be integers")
            params.append((bits[0], lo, hi))
        elif key == "where":
            mt = re.match(r"^(\w+)\s*(<=|>=|==|!=|<|>)\s*(\w+)$", value)
            if not mt:
                _fail(source, lineno, "bad side condition %r" % value)
            wheres.append((mt.group(1), mt.group(2), mt.group(3)))
        elif key == "expected":
            mt = re.match(r"^(\w+)\s*=\s*(.+)$", value)
            if not mt:
                _fail(source, lineno, "expected wants 'column = expr'")
            if mt.group(1) in expected:
                _fail(source, lineno, "duplicate column %r" % mt.group(1))
            expected[mt.group(1)] = mt.group(2).strip()
            expected_order.append(mt.group(1))
        elif key == "check":
            bits = value.split()
            if not bits or bits[0] not in CHECK_KINDS:
                _fail(source, lineno, "unknown check kind %r" % value)
            checks.append((bits[0], tuple(bits[1:])))
        else:
            _fail(source, lineno, "unknown field %r" % key)

    for want in ("table", "name", "vars", "kind"):
        if want not in data:
            _fail(source, start, "record is missing field %r" % want)
    if not matrix:
        _fail(source, start, "record has no matrix block")
    if len({len(r) for r in matrix}) != 1:
        _fail(source, start, "matrix rows of unequal length")
    if data["kind"] not in ("general", "symmetric", "skew"):
        _fail(source, start, "unknown kind %r" % data["kind"])

    row = TableRow(
        table=data["table"],
        name=data["name"],
        vars=tuple(v.strip() for v in data["vars"].split(",")),
        kind=data["kind"],
        matrix=matrix,
        params=params,
        wheres=wheres,
        expected=expected,
        checks=checks,
        notes=notes,
    )
    row._expected_order = expected_order

    _validate_row(row, source, start)
    return row


def _validate_row(row, source, start):
    if any(v == "" or not v.isidentifier() for v in row.vars):
        _fail(source, start, "bad vars declaration %r" % (row.vars,))
    names = row.param_names()
    if len(set(names)) != len(names):
        _fail(source, start, "duplicate parameter name")
    clash = set(names) & set(row.vars)
    if clash:
        _fail(source, start, "parameter shadows variable: %s" % sorted(clash))
    for left, _, right in row.wheres:
        if left not in names:
            _fail(source, start, "side condition on unknown parameter %r" % left)
        if right not in names:
            try:
                int(right)
            except ValueError:
                _fail(source, start, "side condition against unknown %r" % right)
    covered = set()
    for kind, args in row.checks:
        if kind == "recorded":
            if not args:
                _fail(source, start, "recorded check wants 'column reason...'")
            covered.add(args[0])
        elif kind == "label":
            if len(args) < 1 or args[0] not in ("A", "D", "E"):
                _fail(source, start, "label check wants 'FAMILY [index expr]'")
        elif kind == "mu_boundary":
            if len(args) != 1 or args[0] not in row.vars:
                _fail(source, start, "mu_boundary wants a boundary variable")
            covered.update(CHECK_COLUMNS[kind])
        else:
            covered.update(CHECK_COLUMNS[kind])
    missing = [c for c in row.expected if c not in covered]
    if missing:
        _fail(source, start, "expected columns with no check: %s" % missing)
    # instantiating at the smallest declared point catches template typos
    # (side conditions are irrelevant to parseability, so they are ignored)
    if row.params:
        probe = {nm: lo for nm, lo, _ in row.params}
        try:
            row.instantiate(probe)
            for col in row.expected:
                row.expected_value(col, probe)
        except (ParseError, TableFormatError) as e:
            _fail(source, start, "row %s does not instantiate: %s"
                  % (row.name, e))
    else:
        try:
            row.instantiate({})
        except (ParseError, TableFormatError) as e:
            _fail(source, start, "row %s does not parse: %s" % (row.name, e))


def load_tables(path):
    """Parse a dataset file into a list of TableRow."""
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), source=str(path))


def dumps(rows):
    """Canonical text of a list of TableRow; load o dump is the identity
    on files written in this form."""
    chunks = []
    for row in rows:
        lines = ["table: %s" % row.table, "name: %s" % row.name]
        for note in row.notes:
            lines.append("note: %s" % note)
        lines.append("vars: %s" % ", ".join(row.vars))
        lines.append("kind: %s" % row.kind)
        lines.append("matrix:")
        for r in row.matrix:
            lines.append("[ %s ]" % ", ".join(r))
        for nm, lo, hi in row.params:
            lines.append("param: %s %d%s" % (nm, lo, "" if hi is None
                                             else " %d" % hi))
        for left, op, right in row.wheres:
            lines.append("where: %s %s %s" % (left, op, right))
        order = getattr(row, "_expected_order", None) or list(row.expected)
        for col in order:
            lines.append("expected: %s = %s" % (col, row.expected[col]))
        for kind, args in row.checks:
            lines.append("check: %s" % " ".join((kind,) + tuple(args)))
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def dump_tables(rows, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(rows))


def shipped_path(name):
    """Path of a dataset file shipped inside the package."""
    from importlib.resources import files

    return files("germlab").joinpath("data", name + ".tbl")


def load_shipped(name):
    return loads(shipped_path(name).read_text(encoding="utf-8"),
                 source=name + ".tbl")


def shipped_names():
    from importlib.resources import files

    out = []
    for entry in files("germlab").joinpath("data").iterdir():
        if entry.name.endswith(".tbl"):
            out.append(entry.name[:-4])
    return sorted(out)


# -- the checks ----------------------------------------------------------


def _hypersurface(A):
    """The determinant (Pfaffian for skew kinds) as a hypersurface germ."""
    rows = [list(r) for r in A.entries]
    if A.kind == "skew":
        return pfaffian(rows)
    if A.m != A.n:
        raise ValueError("no determinant: %d x %d matrix" % (A.m, A.n))
    return det(rows)


def _entries_row_major(A):
    return [A.entries[i][j] for i in range(A.m) for j in range(A.n)]


def _normalize_label(family, index):
    # D3 and A3 name the same germ x^2 y + y^2; the recogniser says A3
    if family == "D" and index == 3:
        return ("A", 3)
    return (family, index)


def run_check(row, values, kind, args, max_order=None):
    """Recompute one printed value; returns (status, expected, got, reason).

    status is "pass", "fail", or "skipped"; uncertified computations are
    reported as skipped so that a too-small jet order never counts as a
    mismatch (nor as a confirmation).
    """
    max_order = max_order or DEFAULT_MAX_ORDER
    if kind == "recorded":
        column = args[0]
        reason = " ".join(args[1:]) or "recorded only"
        return ("skipped", row.expected.get(column), None,
                "%s: %s" % (column, reason))
    try:
        A = row.instantiate(values)
        if kind in ("tau_gl", "tau_sl", "tau_sym", "tau_sk"):
            group = kind.split("_")[1]
            B = A.as_general() if group in ("gl", "sl") else A
            got = tau(B, group, max_order=max_order).require(kind)
            want = row.expected_value(kind, values)
        elif kind == "mu":
            got = milnor(_hypersurface(A), max_order).require("mu")
            want = row.expected_value("mu", values)
        elif kind == "tau":
            got = tjurina_number(_hypersurface(A), max_order).require("tau")
            want = row.expected_value("tau", values)
        elif kind == "mu_icis":
            got = milnor_icis(_entries_row_major(A), max_order)
            want = row.expected_value("mu_icis", values)
        elif kind == "tau_icis":
            got = tau_icis(_entries_row_major(A), max_order).require("tau_icis")
            want = row.expected_value("tau_icis", values)
        elif kind == "mu_boundary":
            b = row.vars.index(args[0])
            data = boundary_milnor(_hypersurface(A), b, max_order)
            got = (data.mu, data.mu_section, data.mu_boundary)
            want = (row.expected_value("mu", values),
                    row.expected_value("mu_section", values),
                    row.expected_value("mu_boundary", values))
        elif kind == "b3":
            got = b3_threefold(A, max_order)
            want = row.expected_value("b3", values)
        elif kind == "label":
            lab = ade_recognize(_hypersurface(A), max_order)
            got = _normalize_label(lab.family, lab.index)
            want_index = (eval_int_expr(" ".join(args[1:]), values)
                          if len(args) > 1 else None)
            want = _normalize_label(args[0], want_index)
        else:
            raise ValueError("unknown check kind %r" % kind)
    except UncertifiedError as e:
        return ("skipped", None, None, "uncertified: %s" % e)
    if got == want:
        return ("pass", want, got, None)
    return ("fail", want, got, None)


# -- the report ----------------------------------------------------------


@dataclass
class Outcome:
    table: str
    row: str
    params: tuple  # ((name, value), ...) in declaration order
    check: str
    status: str    # pass | fail | skipped
    expected: object = None
    got: object = None
    reason: str = None

    def describe(self):
        pt = ", ".join("%s=%d" % nv for nv in self.params)
        loc = "%s/%s%s" % (self.table, self.row, " [%s]" % pt if pt else "")
        if self.status == "pass":
            return "pass    %-40s %s = %s" % (loc, self.check, self.got)
        if self.status == "fail":
            return ("FAIL    %-40s %s: expected %s, got %s"
                    % (loc, self.check, self.expected, self.got))
        return "skipped %-40s %s: %s" % (loc, self.check, self.reason)


@dataclass
class VerificationReport:
    outcomes: list
    wall_time: float = 0.0

    @property
    def passed(self):
        return sum(1 for o in self.outcomes if o.status == "pass")

    @property
    def failed(self):
        return sum(1 for o in self.outcomes if o.status == "fail")

    @property
    def skipped(self):
        return sum(1 for o in self.outcomes if o.status == "skipped")

    def failures(self):
        return [o for o in self.outcomes if o.status == "fail"]

    def summary(self):
        return ("%d checks: %d passed, %d failed, %d skipped (%.1fs)"
                % (len(self.outcomes), self.passed, self.failed,
                   self.skipped, self.wall_time))


def _run_task(task):
    row, values, kind, args, max_order = task
    status, want, got, reason = run_check(row, values, kind, args, max_order)
    return status, _plain(want), _plain(got), reason


def _plain(x):
    # tuples of ints and strings pass through pickling unchanged; this is
    # just a hook to keep worker return values simple
    return x


def verify(rows, param_bound=4, jobs=1, max_order=None):
    """Recompute every registered check of every admissible instance.

    Rows with parameters but no admissible tuple under the bound are
    reported skipped, never dropped.  The outcome order is by row, then
    parameter tuple, then check, independent of the worker count.
    """
    t0 = time.time()
    tasks = []
    slots = []
    outcomes = []
    for row in rows:
        names = row.param_names()
        tuples = row.admissible(param_bound) if row.params else [()]
        if row.params and not tuples:
            outcomes.append(Outcome(
                table=row.table, row=row.name, params=(), check="-",
                status="skipped",
                reason="no admissible parameters within bound %d" % param_bound,
            ))
            continue
        for tup in tuples:
            values = dict(zip(names, tup))
            for kind, args in row.checks:
                if kind == "recorded" and tup != tuples[0]:
                    continue  # one skip entry per row says it all
                outcomes.append(Outcome(
                    table=row.table, row=row.name,
                    params=tuple(zip(names, tup)), check=kind,
                    status="pending"))
                slots.append(len(outcomes) - 1)
                tasks.append((row, values, kind, args, max_order))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        results = [_run_task(t) for t in tasks]

    for slot, (status, want, got, reason) in zip(slots, results):
        o = outcomes[slot]
        o.status, o.expected, o.got, o.reason = status, want, got, reason
    return VerificationReport(outcomes=outcomes, wall_time=time.time() - t0)
