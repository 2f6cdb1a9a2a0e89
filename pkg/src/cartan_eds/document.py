"""JSON documents describing a system at a point, plus small input files.

An EDS document looks like::

    {
      "schema_version": 1,
      "dimension": 3,
      "coframe": ["w1", "w2", "w3"],
      "structure": {"3": [{"coefficient": "1/1", "index": [1, 2]}]},
      "auxiliaries": [{"name": "a", "value": [...], "differential": [...]}],
      "generators": [[{"coefficient": "1/1", "index": [3]}]],
      "flag": [["1/1", "0/1", "0/1"], ["0/1", "1/1", "0/1"]],
      "split": {"independence": [1, 2], "complement": [3]}
    }

A form is a list of terms; indices are 1-based and strictly increasing, and
may refer to auxiliaries, numbered after the coframe.  Only ``dimension``
and ``generators`` are required.  Scalars are written "p/q" (integers and
"p" are accepted on input).
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cartan import CoframeSplit
from .curvature import RiemannTensor, SecondFundamentalForm
from .exterior import Coframe, Form, StructureDifferential
from .ideal import Flag, GeneratorSet

SCHEMA_VERSION = 1
_SCALAR = re.compile(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


class DocumentError(ValueError):
    """Malformed input, with a location (line/column or JSON path)."""

    def __init__(self, message, where=None):
        super().__init__("%s: %s" % (where, message) if where else message)
        self.where = where


def scalar(x, where=None):
    if isinstance(x, bool) or isinstance(x, float):
        raise DocumentError("expected an exact rational, got %r" % (x,), where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _SCALAR.match(x)
        if m:
            num, den = m.groups()
            if den is not None and int(den) == 0:
                raise DocumentError("zero denominator in %r" % x, where)
            return Fraction(int(num), int(den or 1))
    raise DocumentError("expected a rational 'p/q', got %r" % (x,), where)


def scalar_text(c):
    c = Fraction(c)
    return "%d/%d" % (c.numerator, c.denominator)


def _load(source):
    """Text or path to parsed JSON, with line/column on syntax errors."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        with open(source) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, "line %d, column %d" % (exc.lineno, exc.colno)) from None


def _expect(obj, kind, where):
    if not isinstance(obj, kind):
        names = {list: "a list", dict: "an object", int: "an integer", str: "a string"}
        raise DocumentError("expected %s" % names.get(kind, kind.__name__), where)
    return obj


def parse_terms(obj, coframe, where, degree=None):
    terms = []
    for k, t in enumerate(_expect(obj, list, where)):
        w = "%s[%d]" % (where, k)
        _expect(t, dict, w)
        if set(t) != {"coefficient", "index"}:
            raise DocumentError("a term has exactly the keys 'coefficient' and 'index'", w)
        idx = _expect(t["index"], list, w + ".index")
        if any(isinstance(i, bool) or not isinstance(i, int) for i in idx):
            raise DocumentError("indices must be integers", w + ".index")
        if any(not 1 <= i <= coframe.size for i in idx):
            raise DocumentError("index out of range 1..%d" % coframe.size, w + ".index")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise DocumentError("multi-index %s is not strictly increasing" % idx, w + ".index")
        if degree is None:
            degree = len(idx)
        elif len(idx) != degree:
            raise DocumentError("term of degree %d in a form of degree %d" % (len(idx), degree),
                                w + ".index")
        terms.append((tuple(idx), scalar(t["coefficient"], w + ".coefficient")))
    if degree is None:
        raise DocumentError("empty form; its degree is unknown", where)
    return Form(coframe, degree, terms)


def form_terms(f):
    return [{"coefficient": scalar_text(c), "index": list(k)} for k, c in sorted(f.terms.items())]


@dataclass
class EdsDocument:
    dimension: int
    coframe: Coframe
    generators: list
    structure: dict = field(default_factory=dict)
    auxiliaries: list = field(default_factory=list)
    flag: Optional[list] = None
    split: Optional[dict] = None

    def structure_differential(self):
        aux = {name: (v, d) for name, v, d in self.auxiliaries}
        return StructureDifferential(self.coframe, dict(self.structure), aux)

    def generator_set(self):
        return GeneratorSet(self.coframe, self.generators, self.structure_differential())

    def flag_object(self):
        if self.flag is None:
            return None
        return Flag(self.flag, self.dimension)

    def split_object(self):
        if self.split is None:
            return None
        return CoframeSplit.from_indices(self.coframe, self.split["independence"],
                                         self.split["complement"])

    def to_json(self):
        out = {
            "schema_version": SCHEMA_VERSION,
            "dimension": self.dimension,
            "coframe": list(self.coframe.names),
            "generators": [form_terms(g) for g in self.generators],
        }
        if self.structure:
            out["structure"] = {str(i): form_terms(f) for i, f in sorted(self.structure.items())}
        if self.auxiliaries:
            out["auxiliaries"] = [{"name": n, "value": form_terms(v), "differential": form_terms(d)}
                                  for n, v, d in self.auxiliaries]
        if self.flag is not None:
            out["flag"] = [[scalar_text(x) for x in v] for v in self.flag]
        if self.split is not None:
            out["split"] = {k: list(self.split[k]) for k in ("independence", "complement")}
        return out


def dumps(obj):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def serialize(doc):
    return dumps(doc.to_json())


def _form_or_zero(obj, coframe, where, degree):
    if obj == []:
        return coframe.zero(degree)
    return parse_terms(obj, coframe, where, degree)


def parse(source):
    """Parse and validate an EDS document from JSON text or a file path."""
    data = _expect(_load(source), dict, "document")
    known = {"schema_version", "dimension", "coframe", "structure", "auxiliaries",
             "generators", "flag", "split"}
    extra = sorted(set(data) - known)
    if extra:
        raise DocumentError("unknown field(s) %s" % ", ".join(extra), "document")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise DocumentError("unsupported schema_version %r" % (version,), "schema_version")
    if "dimension" not in data:
        raise DocumentError("missing field 'dimension'", "document")
    n = data["dimension"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError("dimension must be a positive integer", "dimension")
    names = data.get("coframe", ["w%d" % i for i in range(1, n + 1)])
    _expect(names, list, "coframe")
    if len(names) != n or not all(isinstance(x, str) for x in names):
        raise DocumentError("coframe must list %d names" % n, "coframe")
    aux_raw = _expect(data.get("auxiliaries", []), list, "auxiliaries")
    aux_names = []
    for k, a in enumerate(aux_raw):
        w = "auxiliaries[%d]" % k
        _expect(a, dict, w)
        if set(a) != {"name", "value", "differential"}:
            raise DocumentError("an auxiliary has keys 'name', 'value', 'differential'", w)
        aux_names.append(_expect(a["name"], str, w + ".name"))
    try:
        cf = Coframe(names, aux_names)
    except ValueError as exc:
        raise DocumentError(str(exc), "coframe") from None

    structure = {}
    for key, terms in _expect(data.get("structure", {}), dict, "structure").items():
        w = "structure[%s]" % key
        if not key.isdigit() or not 1 <= int(key) <= n:
            raise DocumentError("structure key must be a coframe index 1..%d" % n, w)
        structure[int(key)] = _form_or_zero(terms, cf, w, 2)

    auxiliaries = []
    for k, a in enumerate(aux_raw):
        w = "auxiliaries[%d]" % k
        value = _form_or_zero(a["value"], cf, w + ".value", 1)
        if not value.is_pure():
            raise DocumentError("an auxiliary value may only use coframe indices", w + ".value")
        diff = _form_or_zero(a["differential"], cf, w + ".differential", 2)
        auxiliaries.append((a["name"], value, diff))

    generators = []
    for k, g in enumerate(_expect(data["generators"] if "generators" in data else [],
                                  list, "generators")):
        f = parse_terms(g, cf, "generators[%d]" % k)
        if f.degree < 1:
            raise DocumentError("generators must have positive degree", "generators[%d]" % k)
        generators.append(f)

    flag = None
    if "flag" in data:
        flag = []
        for k, v in enumerate(_expect(data["flag"], list, "flag")):
            w = "flag[%d]" % k
            if not isinstance(v, list) or len(v) != n:
                raise DocumentError("flag vectors have %d components" % n, w)
            flag.append(tuple(scalar(x, "%s[%d]" % (w, j)) for j, x in enumerate(v)))

    split = None
    if "split" in data:
        s = _expect(data["split"], dict, "split")
        if set(s) != {"independence", "complement"}:
            raise DocumentError("split has keys 'independence' and 'complement'", "split")
        ind = _expect(s["independence"], list, "split.independence")
        comp = _expect(s["complement"], list, "split.complement")
        both = ind + comp
        if any(isinstance(i, bool) or not isinstance(i, int) for i in both) \
                or sorted(both) != list(range(1, n + 1)):
            raise DocumentError("independence and complement must partition 1..%d" % n, "split")
        split = {"independence": ind, "complement": comp}

    doc = EdsDocument(dimension=n, coframe=cf, generators=generators, structure=structure,
                      auxiliaries=auxiliaries, flag=flag, split=split)
    try:
        doc.structure_differential()
        doc.flag_object()
    except ValueError as exc:
        raise DocumentError(str(exc), "document") from None
    return doc


def parse_curvature(source):
    """{"m": m, "entries": [[i, j, k, l, "p/q"], ...]}, completed by symmetry."""
    data = _expect(_load(source), dict, "curvature")
    m = data.get("m")
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise DocumentError("m must be an integer >= 2", "m")
    entries = []
    for k, e in enumerate(_expect(data.get("entries", []), list, "entries")):
        w = "entries[%d]" % k
        if not isinstance(e, list) or len(e) != 5:
            raise DocumentError("an entry is [i, j, k, l, value]", w)
        idx = e[:4]
        if any(isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= m for i in idx):
            raise DocumentError("indices must lie in 1..%d" % m, w)
        entries.append((*idx, scalar(e[4], w + "[4]")))
    try:
        return RiemannTensor.from_entries(m, entries)
    except ValueError as exc:
        raise DocumentError(str(exc), "entries") from None


def curvature_json(R):
    return {"m": R.m, "entries": [[i, j, k, l, scalar_text(c)] for i, j, k, l, c in R.entries()]}


def parse_h(source, m, N):
    """A flat list ordered by a, then (i <= j); or {"h": [...]}."""
    data = _load(source)
    if isinstance(data, dict):
        data = data.get("h")
    _expect(data, list, "h")
    want = (N - m) * m * (m + 1) // 2
    if len(data) != want:
        raise DocumentError("expected %d values for m=%d, N=%d, got %d" % (want, m, N, len(data)),
                            "h")
    values = [scalar(x, "h[%d]" % k) for k, x in enumerate(data)]
    return SecondFundamentalForm.from_upper(m, N, values)


def parse_cartan_lemma(source):
    """{"dimension": n, "theta": [form, ...], "omega": [form, ...]}."""
    data = _expect(_load(source), dict, "document")
    n = data.get("dimension")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError("dimension must be a positive integer", "dimension")
    cf = Coframe.standard(n)
    theta = [_form_or_zero(f, cf, "theta[%d]" % k, 1)
             for k, f in enumerate(_expect(data.get("theta"), list, "theta"))]
    omega = [_form_or_zero(f, cf, "omega[%d]" % k, 1)
             for k, f in enumerate(_expect(data.get("omega"), list, "omega"))]
    return theta, omega
