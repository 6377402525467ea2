"""F-logic AST, canonical printer and parser.

The concrete syntax is the Flora-style fragment the translator emits:
frames (``O:C``, ``C::D``, ``O[P -> V]``), signatures (``C[P{L:H} *=> R]``),
user-defined equality (``A :=: B``), plain predicates, negation as failure
(``\\naf L`` / ``not(...)``) and a handful of builtins.

Printing is canonical and deterministic; ``parse_program`` is the inverse of
``print_program`` on its image.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .diagnostics import Diagnostic, ERROR

# --- terms -------------------------------------------------------------------


class FlTerm:
    pass


_PLAIN_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(:[A-Za-z_][A-Za-z0-9_]*)?$")


@dataclass(frozen=True)
class FlSymbol(FlTerm):
    name: str
    # presentation / provenance only; excluded from equality so that a
    # printed-then-reparsed symbol compares equal to the original
    quoted: bool = field(default=False, compare=False)
    iri: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.name:
            raise ValueError("empty symbol name")


@dataclass(frozen=True)
class FlVariable(FlTerm):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("empty variable name")


@dataclass(frozen=True)
class FlLiteralTerm(FlTerm):
    value: str
    type_tag: str = "_string"


@dataclass(frozen=True)
class FlList(FlTerm):
    elements: Tuple[FlTerm, ...]


# --- class expressions -------------------------------------------------------


class FlClassExpr:
    pass


@dataclass(frozen=True)
class Atom(FlClassExpr):
    term: FlTerm


@dataclass(frozen=True)
class FlUnion(FlClassExpr):
    a: FlClassExpr
    b: FlClassExpr


@dataclass(frozen=True)
class FlIntersection(FlClassExpr):
    a: FlClassExpr
    b: FlClassExpr


@dataclass(frozen=True)
class FlDifference(FlClassExpr):
    a: FlClassExpr
    b: FlClassExpr


def atom(name_or_term) -> Atom:
    if isinstance(name_or_term, FlTerm):
        return Atom(name_or_term)
    return Atom(FlSymbol(name_or_term))


def left_assoc(kind, exprs: List[FlClassExpr]) -> FlClassExpr:
    """Fold an n-ary operand list into left-associated binary nodes."""
    out = exprs[0]
    for e in exprs[1:]:
        out = kind(out, e)
    return out


# --- literals (molecules, predicates, naf, builtins) -------------------------


class FlLit:
    pass


@dataclass(frozen=True)
class FlIsA(FlLit):
    obj: FlTerm
    cls: FlClassExpr


@dataclass(frozen=True)
class FlSubClass(FlLit):
    sub: FlClassExpr
    super: FlClassExpr


@dataclass(frozen=True)
class FlEquiv(FlLit):
    a: FlClassExpr
    b: FlClassExpr


@dataclass(frozen=True)
class FlAttrValue(FlLit):
    obj: FlTerm
    prop: FlTerm
    value: FlTerm


@dataclass(frozen=True)
class FlSignature(FlLit):
    """``C[P *=> R]``, ``C[P{L:H} *=> R]`` or ``C::V[P *=> R]``.

    ``card`` is ``(low, high)`` with ``high=None`` meaning unbounded (printed
    ``*``).
    """

    cls: FlClassExpr
    prop: FlTerm
    range: FlClassExpr
    card: Optional[Tuple[int, Optional[int]]] = None
    via: Optional[FlClassExpr] = None

    def __post_init__(self):
        if self.card is not None:
            low, high = self.card
            if low < 0 or (high is not None and high < low):
                raise ValueError(f"bad cardinality bounds {self.card}")


@dataclass(frozen=True)
class FlPred(FlLit):
    name: str
    args: Tuple[FlTerm, ...] = ()
    quoted: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class FlNaf(FlLit):
    inner: Tuple[FlLit, ...]
    style: str = "naf"  # "naf" prints \naf, "not" prints not(...)

    def __post_init__(self):
        if not self.inner:
            raise ValueError("empty naf")
        if any(isinstance(l, FlNaf) for l in self.inner):
            raise ValueError("naf may not directly wrap naf")


@dataclass(frozen=True)
class FlMember(FlLit):
    item: FlTerm
    collection: FlTerm


@dataclass(frozen=True)
class FlNeq(FlLit):
    a: FlTerm
    b: FlTerm


@dataclass(frozen=True)
class FlFormat(FlLit):
    """A ``format(2, 'msg', [args])@_prolog(format)`` message emission."""

    message: str
    args: Tuple[FlTerm, ...] = ()


MOLECULES = (FlIsA, FlSubClass, FlEquiv, FlAttrValue, FlSignature)


@dataclass(frozen=True)
class FlRule:
    head: FlLit
    body: Tuple[FlLit, ...] = ()
    # provenance marker ("checker", "case-split", "lt-aux", ...); not part of
    # rule identity and lost over a print/parse round trip
    tag: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.head, MOLECULES + (FlPred,)):
            raise ValueError(f"bad rule head: {type(self.head).__name__}")

    @property
    def is_fact(self) -> bool:
        return not self.body


def fact(head: FlLit, tag: Optional[str] = None) -> FlRule:
    return FlRule(head, (), tag)


@dataclass
class FlProgram:
    rules: Tuple[FlRule, ...] = ()
    # prefix map; "" holds the base IRI.  Printed as directives, so it
    # survives a round trip, but it is not part of program equality.
    prefixes: Dict[str, str] = field(default_factory=dict)
    # rule index -> source axiom, filled by the OWL translator
    provenance: Dict[int, object] = field(default_factory=dict)
    # ids of source axioms covered by at least one emitted rule
    covered_axiom_ids: set = field(default_factory=set)

    def __eq__(self, other):
        return isinstance(other, FlProgram) and self.rules == other.rules


# --- printer -----------------------------------------------------------------


def _quote(name: str) -> str:
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


def print_term(t: FlTerm) -> str:
    if isinstance(t, FlSymbol):
        if t.quoted or not _PLAIN_NAME.match(t.name):
            return _quote(t.name)
        return t.name
    if isinstance(t, FlVariable):
        return "?" + t.name
    if isinstance(t, FlLiteralTerm):
        if t.type_tag in ("_integer", "_double"):
            return t.value
        if t.type_tag == "_boolean":
            return t.value
        return _quote(t.value)
    if isinstance(t, FlList):
        return "[" + ",".join(print_term(e) for e in t.elements) + "]"
    raise TypeError(f"not a term: {t!r}")


def print_class_expr(e: FlClassExpr) -> str:
    if isinstance(e, Atom):
        return print_term(e.term)
    if isinstance(e, FlUnion):
        return f"({print_class_expr(e.a)} ; {print_class_expr(e.b)})"
    if isinstance(e, FlIntersection):
        return f"({print_class_expr(e.a)} , {print_class_expr(e.b)})"
    if isinstance(e, FlDifference):
        return f"({print_class_expr(e.a)} - {print_class_expr(e.b)})"
    raise TypeError(f"not a class expression: {e!r}")


def _print_card(card: Optional[Tuple[int, Optional[int]]]) -> str:
    if card is None:
        return ""
    low, high = card
    return "{%d:%s}" % (low, "*" if high is None else str(high))


def print_literal(l: FlLit) -> str:
    if isinstance(l, FlIsA):
        return f"{print_term(l.obj)}:{print_class_expr(l.cls)}"
    if isinstance(l, FlSubClass):
        return f"{print_class_expr(l.sub)}::{print_class_expr(l.super)}"
    if isinstance(l, FlEquiv):
        return f"{print_class_expr(l.a)} :=: {print_class_expr(l.b)}"
    if isinstance(l, FlAttrValue):
        return f"{print_term(l.obj)}[{print_term(l.prop)} -> {print_term(l.value)}]"
    if isinstance(l, FlSignature):
        head = print_class_expr(l.cls)
        if l.via is not None:
            head += "::" + print_class_expr(l.via)
        return (
            f"{head}[{print_term(l.prop)}{_print_card(l.card)}"
            f" *=> {print_class_expr(l.range)}]"
        )
    if isinstance(l, FlPred):
        name = _quote(l.name) if (l.quoted or not _PLAIN_NAME.match(l.name)) else l.name
        if not l.args:
            return name
        return name + "(" + ", ".join(print_term(a) for a in l.args) + ")"
    if isinstance(l, FlNaf):
        inner = ", ".join(print_literal(i) for i in l.inner)
        if l.style == "not":
            return f"not({inner})"
        if len(l.inner) == 1 and not isinstance(l.inner[0], (FlPred,)):
            return f"\\naf {inner}"
        if len(l.inner) == 1:
            return f"\\naf {inner}"
        return f"\\naf ({inner})"
    if isinstance(l, FlMember):
        return f"member({print_term(l.item)}, {print_term(l.collection)})"
    if isinstance(l, FlNeq):
        return f"{print_term(l.a)} != {print_term(l.b)}"
    if isinstance(l, FlFormat):
        args = "[" + ",".join(print_term(a) for a in l.args) + "]"
        return f"format(2, {_quote(l.message)}, {args})@_prolog(format)"
    raise TypeError(f"not a literal: {l!r}")


def _ground_subject(l: FlLit):
    if isinstance(l, FlIsA) and isinstance(l.obj, FlSymbol) and isinstance(l.cls, Atom) \
            and isinstance(l.cls.term, FlSymbol):
        return l.obj
    return None


def print_rule(r: FlRule) -> str:
    head = print_literal(r.head)
    if r.body:
        return head + " :- " + ", ".join(print_literal(b) for b in r.body) + "."
    return head + "."


def print_program(program: FlProgram) -> str:
    """Canonical text: directives first, one rule per line.

    A ground membership fact immediately followed by attribute-value facts on
    the same subject prints as one combined frame,
    e.g. ``x:C[p -> v].``; the parser splits it back into separate facts.
    """
    lines: List[str] = []
    if program.prefixes:
        base = program.prefixes.get("")
        if base:
            lines.append(f":- base({_quote(base)}).")
        for pfx in sorted(k for k in program.prefixes if k):
            lines.append(f":- prefix({pfx}, {_quote(program.prefixes[pfx])}).")
    rules = list(program.rules)
    i = 0
    while i < len(rules):
        r = rules[i]
        subj = _ground_subject(r.head) if r.is_fact else None
        if subj is not None:
            attrs = []
            j = i + 1
            while j < len(rules) and rules[j].is_fact and \
                    isinstance(rules[j].head, FlAttrValue) and rules[j].head.obj == subj:
                attrs.append(rules[j].head)
                j += 1
            if attrs:
                inner = ", ".join(
                    f"{print_term(a.prop)} -> {print_term(a.value)}" for a in attrs
                )
                lines.append(
                    f"{print_term(subj)}:{print_class_expr(r.head.cls)}[{inner}]."
                )
                i = j
                continue
        lines.append(print_rule(r))
        i += 1
    return "\n".join(lines) + ("\n" if lines else "")


# --- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>//[^\n]*)
    | (?P<quoted>'(?:\\.|[^'\\])*')
    | (?P<equiv>:=:)
    | (?P<implies>:-)
    | (?P<subclass>::)
    | (?P<sigarrow>\*=>)
    | (?P<arrow>->)
    | (?P<neq>!=)
    | (?P<naf>\\naf\b)
    | (?P<var>\?[A-Za-z_][A-Za-z0-9_]*)
    | (?P<num>\d+)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<punct>[\[\]{}(),;.@*:]|[-–])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    line: int
    col: int


class FlParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col


def _lex(text: str) -> List[_Tok]:
    toks = []
    pos, line, linestart = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FlParseError(
                f"unexpected character {text[pos]!r}", line, pos - linestart + 1
            )
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            if kind == "punct" and value == "–":
                value = "-"  # accept the typographic dash as set difference
            toks.append(_Tok(kind, value, line, pos - linestart + 1))
        nl = value.count("\n")
        if nl:
            line += nl
            linestart = pos + value.rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - linestart + 1))
    return toks


def _unquote(lexeme: str) -> str:
    body = lexeme[1:-1]
    return re.sub(r"\\(.)", r"\1", body)


# --- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, toks: List[_Tok], prefixes: Dict[str, str]):
        self.toks = toks
        self.i = 0
        self.prefixes = dict(prefixes)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, value: Optional[str] = None) -> _Tok:
        t = self.peek()
        if t.kind != kind or (value is not None and t.value != value):
            want = value or kind
            raise FlParseError(f"expected {want!r}, got {t.value!r}", t.line, t.col)
        return self.next()

    def at(self, kind: str, value: Optional[str] = None) -> bool:
        t = self.peek()
        return t.kind == kind and (value is None or t.value == value)

    # terms

    def parse_term(self, merge_prefixed: bool = False) -> FlTerm:
        # A colon after an identifier is ambiguous only in statement-subject
        # position (`a:B` is membership there).  Everywhere else (class
        # expressions, frame properties/values, predicate arguments, lists)
        # `pfx:local` can only be a prefixed name, so callers pass
        # merge_prefixed=True; subjects merge only declared prefixes.
        t = self.peek()
        if t.kind == "var":
            self.next()
            return FlVariable(t.value[1:])
        if t.kind == "num":
            self.next()
            return FlLiteralTerm(t.value, "_integer")
        if t.kind == "quoted":
            self.next()
            name = _unquote(t.value)
            return FlSymbol(name, quoted=True)
        if t.kind == "ident":
            self.next()
            name = t.value
            if (
                (merge_prefixed or name in self.prefixes)
                and self.toks[self.i].kind == "punct"
                and self.toks[self.i].value == ":"
                and self.toks[self.i + 1].kind == "ident"
            ):
                self.next()
                local = self.next().value
                return FlSymbol(f"{name}:{local}")
            return FlSymbol(name)
        if t.kind == "punct" and t.value == "[":
            self.next()
            elems = []
            if not self.at("punct", "]"):
                elems.append(self.parse_term(merge_prefixed=True))
                while self.at("punct", ","):
                    self.next()
                    elems.append(self.parse_term(merge_prefixed=True))
            self.expect("punct", "]")
            return FlList(tuple(elems))
        raise FlParseError(f"expected a term, got {t.value!r}", t.line, t.col)

    # class expressions

    def parse_class_expr(self) -> FlClassExpr:
        if self.at("punct", "("):
            self.next()
            a = self.parse_class_expr()
            t = self.peek()
            if t.kind == "punct" and t.value in (";", ",", "-"):
                self.next()
                b = self.parse_class_expr()
                self.expect("punct", ")")
                if t.value == ";":
                    return FlUnion(a, b)
                if t.value == ",":
                    return FlIntersection(a, b)
                return FlDifference(a, b)
            self.expect("punct", ")")
            return a
        return Atom(self.parse_term(merge_prefixed=True))

    # frame contents after '[': returns list of literals for subject term
    def parse_frame(self, subject: FlTerm, via: Optional[FlClassExpr],
                    cls: Optional[FlClassExpr]) -> List[FlLit]:
        items: List[FlLit] = []
        while True:
            prop = self.parse_term(merge_prefixed=True)
            card = None
            if self.at("punct", "{"):
                self.next()
                low = int(self.expect("num").value)
                # the ':' between bounds lexes as punct ':'
                t = self.next()
                if not (t.kind == "punct" and t.value == ":"):
                    raise FlParseError("expected ':' in cardinality", t.line, t.col)
                if self.at("punct", "*"):
                    self.next()
                    high: Optional[int] = None
                else:
                    high = int(self.expect("num").value)
                self.expect("punct", "}")
                card = (low, high)
            if self.at("sigarrow"):
                self.next()
                rng = self.parse_class_expr()
                items.append(
                    FlSignature(
                        cls if cls is not None else Atom(subject),
                        prop, rng, card, via,
                    )
                )
            elif self.at("arrow"):
                if card is not None:
                    t = self.peek()
                    raise FlParseError("cardinality on attribute value", t.line, t.col)
                self.next()
                value = self.parse_term(merge_prefixed=True)
                items.append(FlAttrValue(subject, prop, value))
            else:
                t = self.peek()
                raise FlParseError(
                    f"expected '->' or '*=>', got {t.value!r}", t.line, t.col
                )
            if self.at("punct", ","):
                self.next()
                continue
            break
        self.expect("punct", "]")
        return items

    # literals; may return several (combined frame molecules split here)

    def parse_literal(self) -> List[FlLit]:
        t = self.peek()
        if t.kind == "naf" or (t.kind == "ident" and t.value == "naf"):
            self.next()
            if self.at("punct", "("):
                self.next()
                inner: List[FlLit] = []
                inner.extend(self.parse_literal())
                while self.at("punct", ","):
                    self.next()
                    inner.extend(self.parse_literal())
                self.expect("punct", ")")
            else:
                inner = self.parse_literal()
            return [FlNaf(tuple(inner), style="naf")]
        if t.kind == "ident" and t.value == "not":
            self.next()
            self.expect("punct", "(")
            inner = []
            inner.extend(self.parse_literal())
            while self.at("punct", ","):
                self.next()
                inner.extend(self.parse_literal())
            self.expect("punct", ")")
            return [FlNaf(tuple(inner), style="not")]
        if t.kind == "ident" and t.value == "format":
            return [self.parse_format()]
        if t.kind == "ident" and t.value == "member" and \
                self.toks[self.i + 1].kind == "punct" and \
                self.toks[self.i + 1].value == "(":
            self.next()
            self.next()
            item = self.parse_term(merge_prefixed=True)
            self.expect("punct", ",")
            coll = self.parse_term(merge_prefixed=True)
            self.expect("punct", ")")
            return [FlMember(item, coll)]

        if self.at("punct", "("):
            subj_expr: Optional[FlClassExpr] = self.parse_class_expr()
            subj_term: Optional[FlTerm] = None
            quoted = False
        else:
            term = self.parse_term()
            subj_term = term
            subj_expr = None
            quoted = isinstance(term, FlSymbol) and term.quoted

        t = self.peek()
        # predicate application
        if subj_term is not None and isinstance(subj_term, FlSymbol) and \
                t.kind == "punct" and t.value == "(":
            self.next()
            args = []
            if not self.at("punct", ")"):
                args.append(self.parse_term(merge_prefixed=True))
                while self.at("punct", ","):
                    self.next()
                    args.append(self.parse_term(merge_prefixed=True))
            self.expect("punct", ")")
            return [FlPred(subj_term.name, tuple(args), quoted=quoted)]
        if subj_term is not None and t.kind == "neq":
            self.next()
            return [FlNeq(subj_term, self.parse_term(merge_prefixed=True))]

        left = subj_expr if subj_expr is not None else Atom(subj_term)

        if self.at("equiv"):
            self.next()
            return [FlEquiv(left, self.parse_class_expr())]
        if self.at("subclass"):
            self.next()
            sup = self.parse_class_expr()
            if self.at("punct", "["):
                self.next()
                return self.parse_frame(subj_term, via=sup, cls=left)
            return [FlSubClass(left, sup)]
        if self.at("punct", ":"):
            self.next()
            cls = self.parse_class_expr()
            if subj_term is not None and self.at("punct", "["):
                self.next()
                return [FlIsA(subj_term, cls)] + self.parse_frame(
                    subj_term, via=None, cls=None
                )
            if subj_term is None:
                raise FlParseError("membership needs a term subject", t.line, t.col)
            return [FlIsA(subj_term, cls)]
        if self.at("punct", "["):
            self.next()
            return self.parse_frame(
                subj_term if subj_term is not None else None, via=None, cls=left
            )
        if subj_term is not None and isinstance(subj_term, FlSymbol):
            return [FlPred(subj_term.name, (), quoted=quoted)]
        raise FlParseError(f"unexpected {t.value!r}", t.line, t.col)

    def parse_format(self) -> FlFormat:
        self.expect("ident", "format")
        self.expect("punct", "(")
        if self.at("num"):
            self.next()
            self.expect("punct", ",")
        msg_tok = self.expect("quoted")
        message = _unquote(msg_tok.value)
        args: Tuple[FlTerm, ...] = ()
        if self.at("punct", ","):
            self.next()
            arg_term = self.parse_term()
            if isinstance(arg_term, FlList):
                args = arg_term.elements
            else:
                args = (arg_term,)
        self.expect("punct", ")")
        self.expect("punct", "@")
        self.expect("ident", "_prolog")
        self.expect("punct", "(")
        self.expect("ident", "format")
        self.expect("punct", ")")
        return FlFormat(message, args)

    # statements

    def parse_directive(self):
        # ':- base('...').' or ':- prefix(name, '...').'
        self.expect("implies")
        kw = self.expect("ident")
        self.expect("punct", "(")
        if kw.value == "base":
            iri = _unquote(self.expect("quoted").value)
            self.prefixes[""] = iri
        elif kw.value == "prefix":
            name = self.expect("ident").value
            self.expect("punct", ",")
            iri = _unquote(self.expect("quoted").value)
            self.prefixes[name] = iri
        else:
            raise FlParseError(f"unknown directive {kw.value!r}", kw.line, kw.col)
        self.expect("punct", ")")
        self.expect("punct", ".")

    def parse_statement(self) -> List[FlRule]:
        if self.at("implies"):
            self.parse_directive()
            return []
        heads = self.parse_literal()
        if self.at("implies"):
            self.next()
            if len(heads) != 1:
                t = self.peek()
                raise FlParseError("combined molecule as rule head", t.line, t.col)
            body: List[FlLit] = []
            body.extend(self.parse_literal())
            while self.at("punct", ","):
                self.next()
                body.extend(self.parse_literal())
            self.expect("punct", ".")
            return [FlRule(heads[0], tuple(body))]
        self.expect("punct", ".")
        return [FlRule(h) for h in heads]


def parse_program(text: str, prefixes: Optional[Dict[str, str]] = None
                  ) -> Tuple[FlProgram, List[Diagnostic]]:
    """Parse canonical F-logic text; recovery continues at the next ``.``."""
    diagnostics: List[Diagnostic] = []
    try:
        toks = _lex(text)
    except FlParseError as e:
        diagnostics.append(Diagnostic(ERROR, "syntax-error", e.message, (e.line, e.col)))
        return FlProgram(), diagnostics
    p = _Parser(toks, prefixes or {})
    rules: List[FlRule] = []
    while not p.at("eof"):
        try:
            rules.extend(p.parse_statement())
        except FlParseError as e:
            diagnostics.append(
                Diagnostic(ERROR, "syntax-error", e.message, (e.line, e.col))
            )
            # resync: skip to just past the next '.'
            while not p.at("eof") and not p.at("punct", "."):
                p.next()
            if p.at("punct", "."):
                p.next()
    return FlProgram(tuple(rules), p.prefixes), diagnostics
