"""Line-oriented workbench files.

A file is an optional ``field`` line followed by named blocks::

    field Q

    [algebra dual_numbers]
    basis 1 e
    unit 1 0
    commutative true
    const 0 0 0 1
    const 0 1 1 1
    const 1 0 1 1

    [cochain u.1]
    space dual_numbers
    signature 1 0 0
    value 1 : 0 1

    [sphere_series u]
    algebra dual_numbers
    d 1
    order 4
    terms u.1

Block kinds are ``algebra``, ``morphism``, ``quintuple``, ``cochain``,
``sphere_series`` and ``tertiary_series``.  ``const i j k v`` lists nonzero
structure constants; ``row`` lines give a morphism matrix (target dimension
many rows); ``value`` lines map a basis tuple to a full A-vector.  Scalars are
integers or ``p/q``.  Algebra and quintuple names that are not defined in
the file refer to presets.  :func:`dumps` writes the canonical form, so a
saved file reloads and re-saves byte for byte.
"""

import os
import re

from .algebra import (
    AlgebraMorphism,
    FiniteAlgebra,
    Quintuple,
    validate_algebra,
    validate_quintuple,
)
from .cochains import CochainSpace
from .deform.series import DeformationSeries, ProductFamilySeries
from .errors import SchemaError, ValidationError
from .fields import QQ, field_from_name
from .presets import preset_algebra, preset_quintuple

KINDS = ("algebra", "morphism", "quintuple", "cochain", "sphere_series", "tertiary_series")
_HEADER = re.compile(r"^\[(\w+)\s+([^\s\]]+)\]$")


class Block:
    def __init__(self, kind, name, line):
        self.kind = kind
        self.name = name
        self.line = line
        self.entries = []  # (key, [tokens], line)

    def single(self, key, required=True):
        found = [e for e in self.entries if e[0] == key]
        if len(found) > 1:
            raise SchemaError(f"{self.kind} {self.name}: duplicate '{key}'", found[1][2])
        if not found:
            if required:
                raise SchemaError(f"{self.kind} {self.name}: missing '{key}'", self.line)
            return None
        return found[0]

    def many(self, key):
        return [e for e in self.entries if e[0] == key]


def _parse_blocks(text):
    field_name = None
    blocks = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = _HEADER.match(line)
            if m is None:
                raise SchemaError(f"malformed block header {line!r}", lineno)
            kind, name = m.groups()
            if kind not in KINDS:
                raise SchemaError(f"unknown block kind {kind!r}", lineno)
            cur = Block(kind, name, lineno)
            blocks.append(cur)
            continue
        key, *rest = line.split()
        if cur is None:
            if key != "field" or len(rest) != 1:
                raise SchemaError(f"expected 'field <name>' or a block header, got {line!r}", lineno)
            if field_name is not None:
                raise SchemaError("duplicate field line", lineno)
            field_name = rest[0]
            continue
        cur.entries.append((key, rest, lineno))
    return field_name, blocks


class Document:
    """Objects loaded from one file, by kind and name."""

    def __init__(self, field):
        self.field = field
        self.algebras = {}
        self.morphisms = {}
        self.quintuples = {}
        self.cochains = {}
        self.series = {}


def _scalar(field, tok, lineno):
    try:
        return field(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar {tok!r}: {exc}", lineno) from None


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise SchemaError(f"expected an integer, got {tok!r}", lineno) from None


def loads(text, field=None):
    """Parse a workbench file into a :class:`Document`.

    ``field``, when given, overrides the file's ``field`` line; with
    neither the field is Q.
    """
    field_name, blocks = _parse_blocks(text)
    if field is not None:
        F = field
    elif field_name is not None:
        try:
            F = field_from_name(field_name)
        except ValueError as exc:
            raise SchemaError(str(exc), 1) from None
    else:
        F = QQ
    doc = Document(F)
    by_kind = {k: {} for k in KINDS}
    for b in blocks:
        if b.name in by_kind[b.kind]:
            raise SchemaError(f"duplicate {b.kind} {b.name!r}", b.line)
        by_kind[b.kind][b.name] = b

    def algebra(name, lineno):
        if name not in doc.algebras:
            b = by_kind["algebra"].get(name)
            if b is None:
                try:
                    doc.algebras[name] = preset_algebra(name, F)
                except KeyError as exc:
                    raise SchemaError(str(exc.args[0]), lineno) from None
            else:
                doc.algebras[name] = _build_algebra(b, F)
        return doc.algebras[name]

    def morphism(name, lineno):
        if name not in doc.morphisms:
            b = by_kind["morphism"].get(name)
            if b is None:
                raise SchemaError(f"undefined morphism {name!r}", lineno)
            src = algebra(b.single("source")[1][0], b.line)
            tgt = algebra(b.single("target")[1][0], b.line)
            rows = []
            for _, toks, ln in b.many("row"):
                if len(toks) != src.dim:
                    raise SchemaError(f"row needs {src.dim} entries", ln)
                rows.append([_scalar(F, t, ln) for t in toks])
            if len(rows) != tgt.dim:
                raise SchemaError(f"morphism {name} needs {tgt.dim} rows, got {len(rows)}", b.line)
            doc.morphisms[name] = AlgebraMorphism(src, tgt, rows, name)
        return doc.morphisms[name]

    def quintuple(name, lineno):
        if name not in doc.quintuples:
            b = by_kind["quintuple"].get(name)
            if b is None:
                try:
                    Q = preset_quintuple(name, F)
                except KeyError as exc:
                    raise SchemaError(str(exc.args[0]), lineno) from None
            else:
                parts = {k: b.single(k)[1][0] for k in ("A", "B", "C", "eps", "theta")}
                A, B, C = (algebra(parts[k], b.line) for k in "ABC")
                eps, theta = morphism(parts["eps"], b.line), morphism(parts["theta"], b.line)
                if eps.source is not B or eps.target is not A or theta.source is not C or theta.target is not B:
                    raise SchemaError(f"quintuple {name}: eps must map B -> A and theta C -> B", b.line)
                try:
                    Q = Quintuple(A, B, C, eps, theta, name)
                except ValueError as exc:
                    raise SchemaError(str(exc), b.line) from None
            report = validate_quintuple(Q)
            if report:
                raise ValidationError(f"quintuple {name}", report)
            doc.quintuples[name] = Q
        return doc.quintuples[name]

    def cochain(name, lineno):
        if name not in doc.cochains:
            b = by_kind["cochain"].get(name)
            if b is None:
                raise SchemaError(f"undefined cochain {name!r}", lineno)
            space_name = b.single("space")[1][0]
            _, sig, ln = b.single("signature")
            if len(sig) != 3:
                raise SchemaError("signature needs three counts p q r", ln)
            p, q, r = (_int(t, ln) for t in sig)
            if space_name in by_kind["quintuple"] or (q or r):
                Q = quintuple(space_name, b.line)
                sp = CochainSpace(Q.A, p, q, r, Q.B, Q.C)
            else:
                sp = CochainSpace(algebra(space_name, b.line), p)
            values = {}
            for _, toks, ln in b.many("value"):
                if ":" not in toks:
                    raise SchemaError("value line needs 'indices : vector'", ln)
                cut = toks.index(":")
                tup = tuple(_int(t, ln) for t in toks[:cut])
                vec = [_scalar(F, t, ln) for t in toks[cut + 1:]]
                if len(tup) != sp.arity or len(vec) != sp.A.dim:
                    raise SchemaError(f"value line needs {sp.arity} indices and {sp.A.dim} coordinates", ln)
                if any(not 0 <= t < n for t, n in zip(tup, sp.shape)):
                    raise SchemaError(f"basis index out of range in {tup}", ln)
                if tup in values:
                    raise SchemaError(f"duplicate value for {tup}", ln)
                values[tup] = vec
            doc.cochains[name] = sp.from_values(values)
        return doc.cochains[name]

    for name, b in by_kind["algebra"].items():
        algebra(name, b.line)
    for name, b in by_kind["morphism"].items():
        morphism(name, b.line)
    for name, b in by_kind["quintuple"].items():
        quintuple(name, b.line)
    for name, b in by_kind["cochain"].items():
        cochain(name, b.line)
    for name, b in by_kind["sphere_series"].items():
        A = algebra(b.single("algebra")[1][0], b.line)
        d = _int(b.single("d")[1][0], b.line)
        order = _int(b.single("order")[1][0], b.line)
        entry = b.single("terms", required=False)
        terms = [cochain(t, entry[2]) for t in entry[1]] if entry else []
        for t in terms:
            if t.space.A is not A or t.signature != (1, 0, 0):
                raise SchemaError(f"series {name}: terms must be (1, 0, 0) cochains over {A.name}", b.line)
        try:
            doc.series[name] = DeformationSeries(A, d, order, terms, name)
        except ValueError as exc:
            raise SchemaError(str(exc), b.line) from None
    for name, b in by_kind["tertiary_series"].items():
        Q = quintuple(b.single("quintuple")[1][0], b.line)
        order = _int(b.single("order")[1][0], b.line)
        entry = b.single("terms", required=False)
        terms = [cochain(t, entry[2]) for t in entry[1]] if entry else []
        for t in terms:
            if t.space.A is not Q.A or t.signature != (2, 1, 1):
                raise SchemaError(f"series {name}: terms must be (2, 1, 1) cochains over {Q.name}", b.line)
        try:
            doc.series[name] = ProductFamilySeries(Q, order, terms, name)
        except ValueError as exc:
            raise SchemaError(str(exc), b.line) from None
    return doc


def _build_algebra(b, F):
    labels = b.single("basis")[1]
    n = len(labels)
    _, unit_toks, ln = b.single("unit")
    if len(unit_toks) != n:
        raise SchemaError(f"unit needs {n} coordinates", ln)
    unit = [_scalar(F, t, ln) for t in unit_toks]
    comm = b.single("commutative", required=False)
    commutative = False
    if comm is not None:
        if comm[1] not in (["true"], ["false"]):
            raise SchemaError("commutative must be true or false", comm[2])
        commutative = comm[1] == ["true"]
    consts = []
    for _, toks, ln in b.many("const"):
        if len(toks) != 4:
            raise SchemaError("const line needs 'i j k value'", ln)
        i, j, k = (_int(t, ln) for t in toks[:3])
        if not all(0 <= x < n for x in (i, j, k)):
            raise SchemaError(f"structure index out of range in {toks[:3]}", ln)
        consts.append((i, j, k, _scalar(F, toks[3], ln)))
    try:
        A = FiniteAlgebra.from_constants(F, labels, consts, unit, commutative, b.name)
    except ValueError as exc:
        raise SchemaError(str(exc), b.line) from None
    report = validate_algebra(A)
    if report:
        raise ValidationError(f"algebra {b.name}", report)
    return A


def load(path, field=None):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), field)


def _pick(objs, kind, name, path):
    if name is not None:
        if name not in objs:
            raise SchemaError(f"no {kind} named {name!r} in {path}")
        return objs[name]
    if len(objs) != 1:
        raise SchemaError(f"{path} defines {len(objs)} {kind}s; name one")
    return next(iter(objs.values()))


def load_algebra(source, field=None, name=None):
    """An algebra from a file path, or a preset name when no such file exists."""
    if not os.path.exists(source):
        return preset_algebra(source, field or QQ)
    return _pick(load(source, field).algebras, "algebra", name, source)


def load_quintuple(source, field=None, name=None):
    if not os.path.exists(source):
        return preset_quintuple(source, field or QQ)
    doc = load(source, field)
    return _pick(doc.quintuples, "quintuple", name, source)


def load_series(source, field=None, name=None):
    """A DeformationSeries or ProductFamilySeries from a file."""
    return _pick(load(source, field).series, "series", name, source)


# --------------------------------------------------------------------------
# writing


class _Writer:
    def __init__(self, field):
        self.field = field
        self.blocks = []
        self.names = {}  # id -> name
        self.used = set()

    def fmt(self, x):
        return self.field.format(x)

    def _name(self, obj, wanted):
        if id(obj) in self.names:
            return self.names[id(obj)], False
        name = wanted
        k = 2
        while name in self.used:
            name = f"{wanted}_{k}"
            k += 1
        self.used.add(name)
        self.names[id(obj)] = name
        return name, True

    def algebra(self, A):
        name, new = self._name(A, A.name)
        if new:
            lines = [f"[algebra {name}]", "basis " + " ".join(A.labels),
                     "unit " + " ".join(self.fmt(c) for c in A.unit),
                     "commutative " + ("true" if A.commutative else "false")]
            lines += [f"const {i} {j} {k} {self.fmt(c)}" for i, j, k, c in A.constants()]
            self.blocks.append(lines)
        return name

    def morphism(self, phi, wanted):
        src, tgt = self.algebra(phi.source), self.algebra(phi.target)
        name, new = self._name(phi, wanted)
        if new:
            lines = [f"[morphism {name}]", f"source {src}", f"target {tgt}"]
            lines += ["row " + " ".join(self.fmt(c) for c in row) for row in phi.matrix.to_rows()]
            self.blocks.append(lines)
        return name

    def quintuple(self, Q):
        if id(Q) in self.names:
            return self.names[id(Q)]
        A, B, C = self.algebra(Q.A), self.algebra(Q.B), self.algebra(Q.C)
        eps = self.morphism(Q.eps, f"{Q.name}.eps")
        theta = self.morphism(Q.theta, f"{Q.name}.theta")
        name, _ = self._name(Q, Q.name)
        self.blocks.append([f"[quintuple {name}]", f"A {A}", f"B {B}", f"C {C}", f"eps {eps}", f"theta {theta}"])
        return name

    def cochain(self, c, wanted, space_name):
        name, _ = self._name(c, wanted)
        lines = [f"[cochain {name}]", f"space {space_name}", "signature " + " ".join(map(str, c.signature))]
        for tup, v in c.items():
            if any(v):
                lines.append("value " + " ".join(map(str, tup)) + (" : " if tup else ": ") + " ".join(self.fmt(x) for x in v))
        self.blocks.append(lines)
        return name

    def series(self, S):
        if isinstance(S, DeformationSeries):
            space = self.algebra(S.algebra)
            head = [f"algebra {space}", f"d {S.d}"]
            kind = "sphere_series"
        else:
            space = self.quintuple(S.quintuple)
            head = [f"quintuple {space}"]
            kind = "tertiary_series"
        names = [self.cochain(c, f"{S.name}.{i}", space) for i, c in enumerate(S.terms, 1)]
        sname, _ = self._name(S, S.name)
        self.blocks.append([f"[{kind} {sname}]"] + head + [f"order {S.order}", "terms" + "".join(" " + n for n in names)])

    def text(self):
        out = [f"field {self.field.name}"]
        for b in self.blocks:
            out.append("")
            out.extend(b)
        return "\n".join(out) + "\n"


def dumps(*objs):
    """Canonical text for algebras, quintuples and series, in any mix."""
    if not objs:
        raise ValueError("nothing to write")
    field = objs[0].field if hasattr(objs[0], "field") else objs[0].algebra.field
    w = _Writer(field)
    for obj in objs:
        if isinstance(obj, FiniteAlgebra):
            w.algebra(obj)
        elif isinstance(obj, Quintuple):
            w.quintuple(obj)
        elif isinstance(obj, (DeformationSeries, ProductFamilySeries)):
            w.series(obj)
        else:
            raise TypeError(f"cannot serialise {type(obj).__name__}")
    return w.text()


def save(path, *objs):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(*objs))


def dump_matrix(M):
    """Row-major matrix dump, one row per line, exact entries as ``p/q``."""
    return "".join(" ".join(M.field.format(x) for x in row) + "\n" for row in M.to_rows())
