"""Command-line entry point.

Subcommands: ``translate`` (both directions), ``check`` (integrity
constraints), ``query`` (membership / subsumption / hierarchy), ``insert``
(one ground fact).  Exit codes: 0 = clean, 1 = constraint violations,
2 = errors.  Diagnostics go to stderr; query results and violation messages
go to stdout.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence, Tuple

from .diagnostics import Diagnostic, ERROR, WARNING
from .engine import (
    EngineError, KnowledgeBase, collect_set, insert_fact, load_program,
    query_goal, run_constraint_checks,
)
from .flogic import (
    Atom, FlIsA, FlProgram, FlSubClass, FlSymbol, FlVariable, parse_program,
    print_program, print_term,
)
from .fl_to_owl import translate_program
from .owl_parser import parse_document
from .owl_to_fl import TranslationOptions, translate_ontology
from .owl_writer import serialize_document

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_ERROR = 2


def _report(diags: Sequence[Diagnostic], stream=None):
    stream = stream or sys.stderr
    for d in diags:
        loc = f" ({d.location})" if d.location else ""
        print(f"{d.severity}: {d.code}: {d.message}{loc}", file=stream)


def _has_errors(diags: Sequence[Diagnostic]) -> bool:
    return any(d.severity == ERROR for d in diags)


# --- KB loading --------------------------------------------------------------


def _load_kb(paths: Sequence[str]) -> Tuple[Optional[KnowledgeBase],
                                            List[Diagnostic]]:
    """Parse and merge one or more ``.flr``/``.owl`` files into one KB."""
    diags: List[Diagnostic] = []
    rules = []
    prefixes = {}
    for path in paths:
        try:
            with open(path, encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            diags.append(Diagnostic(ERROR, "io-error", str(e)))
            return None, diags
        if path.endswith(".owl") or text.lstrip().startswith("<"):
            doc, d = parse_document(text)
            diags.extend(d)
            prog, d2 = translate_ontology(doc)
            diags.extend(d2)
        else:
            prog, d = parse_program(text)
            diags.extend(d)
        rules.extend(prog.rules)
        prefixes.update(prog.prefixes)
    if _has_errors(diags):
        return None, diags
    merged = FlProgram(tuple(rules), prefixes)
    try:
        kb = load_program(merged)
        kb.store  # force saturation so stratification errors surface here
    except EngineError as e:
        diags.append(Diagnostic(ERROR, e.code, e.message))
        return None, diags
    return kb, diags


def _parse_name(arg: str) -> FlSymbol:
    if arg.startswith("'") and arg.endswith("'") and len(arg) >= 2:
        return FlSymbol(arg[1:-1], quoted=True)
    return FlSymbol(arg)


def _known_symbols(kb: KnowledgeBase) -> set:
    out = set()
    store = kb.store
    for ind, cls in store.isa:
        out.add(ind)
        out.add(cls)
    for a, b in store.sub:
        out.add(a)
        out.add(b)
    for s, p, v in store.attr:
        out.update((s, p, v))
    for tuples in store.pred.values():
        for t in tuples:
            out.update(x for x in t if isinstance(x, FlSymbol))
    for sig in kb.signatures:
        if isinstance(sig.cls, Atom):
            out.add(sig.cls.term)
        out.add(sig.prop)
        if isinstance(sig.range, Atom):
            out.add(sig.range.term)
    return out


def _warn_unknown(kb: KnowledgeBase, names: Sequence[FlSymbol]) -> bool:
    known = _known_symbols(kb)
    unknown = [n for n in names if n not in known]
    for n in unknown:
        _report([Diagnostic(WARNING, "unknown-name",
                            f"{print_term(n)} does not occur in the KB")])
    return bool(unknown)


# --- translate ---------------------------------------------------------------


def cmd_translate(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        _report([Diagnostic(ERROR, "io-error", str(e))])
        return EXIT_ERROR
    diags: List[Diagnostic] = []
    opts = TranslationOptions(
        emit_checkers=not args.no_checkers,
        owl_domain_range_rules=args.owl_domain_range_rules,
        case_split_rhs_disjunction=not args.no_case_split,
    )
    if args.src == "owl":
        doc, d = parse_document(text)
        diags.extend(d)
    else:
        prog, d = parse_program(text)
        diags.extend(d)
    if args.src == args.dst:
        out_text = serialize_document(doc) if args.src == "owl" \
            else print_program(prog)
    elif args.src == "owl":
        prog, d = translate_ontology(doc, opts)
        diags.extend(d)
        out_text = print_program(prog)
    else:
        doc, d = translate_program(prog)
        diags.extend(d)
        try:
            out_text = serialize_document(doc)
        except TypeError as e:
            diags.append(Diagnostic(ERROR, "unrepresentable-in-owl", str(e)))
            out_text = ""
    try:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(out_text)
    except OSError as e:
        diags.append(Diagnostic(ERROR, "io-error", str(e)))
    _report(diags)
    return EXIT_ERROR if _has_errors(diags) else EXIT_OK


# --- check -------------------------------------------------------------------


def cmd_check(args) -> int:
    kb, diags = _load_kb(args.kb)
    _report(diags)
    if kb is None:
        return EXIT_ERROR
    try:
        violations = run_constraint_checks(
            kb, check_min_cardinality=args.min_cardinality)
    except EngineError as e:
        _report([Diagnostic(ERROR, e.code, e.message)])
        return EXIT_ERROR
    for v in violations:
        print(v.message)
    return EXIT_VIOLATIONS if violations else EXIT_OK


# --- query -------------------------------------------------------------------


def _strict_supers(kb: KnowledgeBase, c: FlSymbol) -> List[FlSymbol]:
    return [s for (a, s) in kb.store.sub if a == c and s != c]


def _strict_subs(kb: KnowledgeBase, c: FlSymbol) -> List[FlSymbol]:
    return [a for (a, s) in kb.store.sub if s == c and a != c]


def _mid_inherited(kb: KnowledgeBase, sub: FlSymbol, sup: FlSymbol) -> bool:
    """True when sup is reachable from sub through a distinct middle class."""
    sub_rel = kb.store.sub
    for (a, mid) in sub_rel:
        if a == sub and mid != sub and mid != sup and (mid, sup) in sub_rel:
            return True
    return False


QUERY_VERBS = ("is", "instances", "classes-of", "subclass", "superclasses",
               "subclasses", "check")


def cmd_query(args) -> int:
    # the KB file list ends at the first recognized verb
    split = next((i for i, a in enumerate(args.rest) if a in QUERY_VERBS), None)
    if split is None or split == 0:
        _report([Diagnostic(ERROR, "bad-arguments",
                            "expected: query <kb...> <verb> [args...]")])
        return EXIT_ERROR
    args.verb = args.rest[split]
    args.args = args.rest[split + 1:]
    kb, diags = _load_kb(args.rest[:split])
    _report(diags)
    if kb is None:
        return EXIT_ERROR
    verb = args.verb
    rest = args.args
    x = FlVariable("X")

    def need(n: int) -> bool:
        if len(rest) != n:
            _report([Diagnostic(ERROR, "bad-arguments",
                                f"'{verb}' takes {n} argument(s)")])
            return False
        return True

    try:
        if verb == "is":
            if not need(2):
                return EXIT_ERROR
            ind, cls = _parse_name(rest[0]), _parse_name(rest[1])
            if _warn_unknown(kb, [ind, cls]):
                print("false")
                return EXIT_OK
            sols = query_goal(kb, FlIsA(ind, Atom(cls)))
            print("true" if sols else "false")
        elif verb == "instances":
            if not need(1):
                return EXIT_ERROR
            cls = _parse_name(rest[0])
            if _warn_unknown(kb, [cls]):
                return EXIT_OK
            for t in collect_set(kb, "X", FlIsA(x, Atom(cls))):
                print(print_term(t))
        elif verb == "classes-of":
            if not need(1):
                return EXIT_ERROR
            ind = _parse_name(rest[0])
            if _warn_unknown(kb, [ind]):
                return EXIT_OK
            for t in collect_set(kb, "X", FlIsA(ind, Atom(x))):
                print(print_term(t))
        elif verb == "subclass":
            if not need(2):
                return EXIT_ERROR
            c, d = _parse_name(rest[0]), _parse_name(rest[1])
            if _warn_unknown(kb, [c, d]):
                print("false")
                return EXIT_OK
            sols = query_goal(kb, FlSubClass(Atom(c), Atom(d)))
            print("true" if sols else "false")
        elif verb == "superclasses":
            if not need(1):
                return EXIT_ERROR
            c = _parse_name(rest[0])
            if _warn_unknown(kb, [c]):
                return EXIT_OK
            supers = _strict_supers(kb, c)
            if args.most_specific:
                supers = [s for s in supers if not _mid_inherited(kb, c, s)]
            for s in sorted(set(supers), key=print_term):
                print(print_term(s))
        elif verb == "subclasses":
            if not need(1):
                return EXIT_ERROR
            c = _parse_name(rest[0])
            if _warn_unknown(kb, [c]):
                return EXIT_OK
            subs = _strict_subs(kb, c)
            if args.most_general:
                subs = [s for s in subs if not _mid_inherited(kb, s, c)]
            for s in sorted(set(subs), key=print_term):
                print(print_term(s))
        elif verb == "check":
            violations = run_constraint_checks(kb)
            print("inconsistent" if violations else "consistent")
            return EXIT_VIOLATIONS if violations else EXIT_OK
        else:
            _report([Diagnostic(ERROR, "bad-arguments",
                                f"unknown query verb {verb!r}")])
            return EXIT_ERROR
    except EngineError as e:
        _report([Diagnostic(ERROR, e.code, e.message)])
        return EXIT_ERROR
    return EXIT_OK


# --- insert ------------------------------------------------------------------


def cmd_insert(args) -> int:
    kb, diags = _load_kb([args.kb])
    _report(diags)
    if kb is None:
        return EXIT_ERROR
    fact_text = args.fact.strip()
    if not fact_text.endswith("."):
        fact_text += "."
    prog, d = parse_program(fact_text, prefixes=kb.prefixes)
    if _has_errors(d) or len(prog.rules) != 1 or not prog.rules[0].is_fact:
        _report(d)
        _report([Diagnostic(ERROR, "non-ground-insert",
                            f"not a single ground fact: {args.fact!r}")])
        return EXIT_ERROR
    before = kb.store.size()
    try:
        insert_fact(kb, prog.rules[0].head)
        after = kb.store.size()
    except EngineError as e:
        _report([Diagnostic(ERROR, e.code, e.message)])
        return EXIT_ERROR
    print(after - before)
    return EXIT_OK


# --- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="owlfl",
        description="Translate between OWL RDF/XML and F-logic, query, and "
                    "check integrity constraints.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("translate", help="translate between formats")
    t.add_argument("--from", dest="src", choices=("owl", "flora"),
                   required=True)
    t.add_argument("--to", dest="dst", choices=("owl", "flora"), required=True)
    t.add_argument("input")
    t.add_argument("-o", "--output", required=True)
    t.add_argument("--no-checkers", action="store_true",
                   help="omit the constraint-checker library")
    t.add_argument("--owl-domain-range-rules", action="store_true",
                   help="also emit OWL-style inference rules for "
                        "domain/range axioms")
    t.add_argument("--no-case-split", action="store_true",
                   help="reject right-hand-side disjunctions instead of "
                        "lowering them to case rules")
    t.set_defaults(func=cmd_translate)

    c = sub.add_parser("check", help="run all integrity checkers")
    c.add_argument("kb", nargs="+")
    c.add_argument("--min-cardinality", action="store_true",
                   help="also enforce lower cardinality bounds")
    c.set_defaults(func=cmd_check)

    q = sub.add_parser("query", help="query the knowledge base")
    q.add_argument("rest", nargs="+",
                   metavar="kb... verb [args...]",
                   help="KB files, then one of: " + ", ".join(QUERY_VERBS))
    q.add_argument("--most-specific", action="store_true",
                   help="keep only direct superclasses")
    q.add_argument("--most-general", action="store_true",
                   help="keep only direct subclasses")
    q.set_defaults(func=cmd_query)

    i = sub.add_parser("insert", help="insert one ground fact")
    i.add_argument("kb")
    i.add_argument("fact")
    i.set_defaults(func=cmd_insert)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
