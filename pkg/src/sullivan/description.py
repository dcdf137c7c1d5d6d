"""JSON model descriptions and the polynomial expression grammar.

A description looks like::

    {"name": "heisenberg",
     "generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1},
                    {"name": "c", "degree": 1}],
     "differential": {"c": "a*b"},
     "relations": []}

Generators missing from ``differential`` are closed. Expressions are sums of
terms ``coeff * factor * ...`` where a factor is ``name`` or ``name^k``; the
coefficient is an optional integer or fraction ``p/q``. Factors may come in
any order, signs from graded commutativity are applied automatically.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .cdga import FreeCDGA, PresentedCDGA, ValidationError, validate
from .graded_algebra import Element, GeneratorTable, UnknownGenerator, format_element, word_element
from .models_library import LieAlgebraPresentation


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, expected: str | None = None, context: str = ""):
        self.position = position
        self.expected = expected
        self.context = context
        text = message
        if position is not None:
            text += f" at position {position}"
        if expected:
            text += f" (expected {expected})"
        if context:
            text = f"{context}: {text}"
        super().__init__(text)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    text = text.replace("−", "-")
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, "a number, a name or one of + - * / ^")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, table: GeneratorTable):
        self.tokens = _tokenize(text)
        self.i = 0
        self.table = table

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None, what=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"unexpected {tok[1]!r}" if tok[1] else "unexpected end of input", tok[2], what or kind)
        return tok

    def posint(self):
        tok = self.expect("num", what="a positive integer")
        v = int(tok[1])
        if v <= 0:
            raise ParseError("zero is not allowed here", tok[2], "a positive integer")
        return v

    def expression(self) -> Element:
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term(sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.term(sign)
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], "'+', '-' or end of expression")
        return total

    def term(self, sign: int) -> Element:
        coeff = Fraction(sign)
        word: list[int] = []
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            c = Fraction(int(tok[1]))
            if self.peek()[:2] == ("op", "/"):
                self.take()
                c /= self.posint()
            coeff *= c
        elif tok[0] == "name":
            word.extend(self.factor())
        else:
            raise ParseError(f"unexpected {tok[1]!r}" if tok[1] else "unexpected end of input", tok[2], "a coefficient or a generator name")
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            word.extend(self.factor())
        return word_element(word, self.table, coeff)

    def factor(self) -> list[int]:
        tok = self.expect("name", what="a generator name")
        try:
            gid = self.table.index(tok[1])
        except UnknownGenerator:
            raise ParseError(f"unknown generator {tok[1]!r}", tok[2]) from None
        k = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            k = self.posint()
        return [gid] * k


def parse_expression(text: str, table: GeneratorTable, context: str = "") -> Element:
    """Parse a polynomial expression into a canonical element over ``table``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}", context=context)
    try:
        return _Parser(text, table).expression()
    except ParseError as exc:
        if context and not exc.context:
            raise ParseError(str(exc), context=context) from None
        raise


def load_json(text) -> dict:
    if isinstance(text, dict):
        return text
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(data, dict):
        raise ParseError("a model description must be a JSON object")
    return data


def _table_from(data: dict) -> GeneratorTable:
    gens = data.get("generators")
    if not isinstance(gens, list):
        raise ParseError("missing list", context="generators")
    pairs = []
    for i, g in enumerate(gens):
        ctx = f"generators[{i}]"
        if not isinstance(g, dict) or not isinstance(g.get("name"), str):
            raise ParseError("each generator needs a string 'name'", context=ctx)
        deg = g.get("degree")
        if not isinstance(deg, int) or isinstance(deg, bool):
            raise ParseError("each generator needs an integer 'degree'", context=ctx)
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g["name"]):
            raise ParseError(f"invalid generator name {g['name']!r}", context=ctx)
        pairs.append((g["name"], deg))
    try:
        return GeneratorTable.from_pairs(pairs)
    except ValueError as exc:
        raise ParseError(str(exc), context="generators") from None


def parse_model(text, max_degree: int | None = None, check: bool = True) -> PresentedCDGA:
    """Parse and validate a model description (a JSON string or an already loaded dict)."""
    data = load_json(text)
    table = _table_from(data)
    raw_d = data.get("differential", {}) or {}
    if not isinstance(raw_d, dict):
        raise ParseError("must be an object mapping names to expressions", context="differential")
    for name in raw_d:
        if name not in table.names:
            raise ParseError(f"unknown generator {name!r}", context="differential")
    d = {}
    for g in table:
        expr = raw_d.get(g.name)
        d[g.id] = parse_expression(expr, table, f"differential[{g.name!r}]") if expr is not None else Element.zero()
    raw_rel = data.get("relations", []) or []
    if not isinstance(raw_rel, list):
        raise ParseError("must be a list of expressions", context="relations")
    relations = tuple(parse_expression(r, table, f"relations[{i}]") for i, r in enumerate(raw_rel))
    A = PresentedCDGA(FreeCDGA(table, d), relations)
    if check:
        if max_degree is None:
            degs = [g.degree for g in table] + [r.degree(table) or 0 for r in relations]
            max_degree = max(degs, default=0) + 1
        report = validate(A, max(max_degree, 1))
        if not report.ok:
            raise ValidationError(report)
    return A


def model_name(text, default: str = "model") -> str:
    data = load_json(text)
    name = data.get("name", default)
    return name if isinstance(name, str) else default


def model_to_description(A, name: str = "model") -> dict:
    table = A.table
    return {
        "name": name,
        "generators": [{"name": g.name, "degree": g.degree} for g in table],
        "differential": {g.name: format_element(A.d_generator(g.id), table) for g in table},
        "relations": [format_element(r, table) for r in A.relations],
    }


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def parse_lie_algebra(text) -> LieAlgebraPresentation:
    """Parse ``{"basis": [...], "brackets": [["e1", "e2", "e3"], ...]}``."""
    data = load_json(text)
    basis = data.get("basis")
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise ParseError("must be a list of names", context="basis")
    table = _table_from({"generators": [{"name": b, "degree": 1} for b in basis]})
    brackets: dict = {}
    for n, entry in enumerate(data.get("brackets", []) or []):
        ctx = f"brackets[{n}]"
        if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(x, str) for x in entry)):
            raise ParseError("each bracket is [left, right, value-expression]", context=ctx)
        left, right, value = entry
        try:
            i, j = table.index(left), table.index(right)
        except UnknownGenerator as exc:
            raise ParseError(f"unknown basis element {exc.args[0]!r}", context=ctx) from None
        e = parse_expression(value, table, ctx)
        vec = {}
        for m, c in e.items():
            if len(m) != 1 or m[0][1] != 1:
                raise ParseError("bracket values must be linear in the basis", context=ctx)
            vec[m[0][0]] = c
        key = (i, j)
        if key in brackets or (j, i) in brackets:
            raise ParseError(f"bracket [{left}, {right}] given twice", context=ctx)
        brackets[key] = vec
    try:
        return LieAlgebraPresentation(len(basis), brackets, tuple(basis))
    except ValueError as exc:
        raise ParseError(str(exc), context="brackets") from None
