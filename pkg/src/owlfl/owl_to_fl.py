"""Compile an OntologyDocument into an F-logic program.

Each axiom contributes its translation in document order; the generic
checker library is appended at the end.  Constructs that have no faithful
rule translation are reported as diagnostics instead of being dropped
silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from . import owl_model as om
from .checkers import checker_rules
from .diagnostics import Diagnostic, ERROR, WARNING
from .flogic import (
    Atom, FlAttrValue, FlClassExpr, FlDifference, FlEquiv, FlIntersection,
    FlIsA, FlList, FlNaf, FlPred, FlProgram, FlRule, FlSignature, FlSubClass,
    FlSymbol, FlTerm, FlUnion, FlVariable, fact, left_assoc,
)

OBJ = Atom(FlSymbol("_object"))


@dataclass(frozen=True)
class TranslationOptions:
    emit_checkers: bool = True
    owl_domain_range_rules: bool = False
    case_split_rhs_disjunction: bool = True


# translatability verdicts
DIRECT = "direct"
REQUIRES_NAF_CASES = "requires-naf-cases"
REQUIRES_LLOYD_TOPOR = "requires-lloyd-topor"
UNTRANSLATABLE = "untranslatable"


@dataclass(frozen=True)
class Translatability:
    kind: str
    reason: str = ""

    def __post_init__(self):
        if self.kind == UNTRANSLATABLE and not self.reason:
            raise ValueError("untranslatable verdicts need a reason")


class Context:
    """Per-translation state: naming, options, one-shot rules, provenance."""

    def __init__(self, doc: Optional[om.OntologyDocument] = None,
                 opts: Optional[TranslationOptions] = None):
        self.doc = doc
        self.opts = opts or TranslationOptions()
        self.diagnostics: List[Diagnostic] = []
        self.emitted_transitive_rule = False
        self.emitted_symmetric_rule = False
        self.aux_counter = 0
        self.consumed_range_axioms: set = set()

    # -- naming

    def symbol(self, iri: om.Iri) -> FlSymbol:
        value = iri.value
        if self.doc is not None:
            base = self.doc.base
            if base and value.startswith(base + "#"):
                return FlSymbol(value[len(base) + 1:], iri=value)
            for pfx in sorted(self.doc.prefixes):
                if not pfx:
                    continue
                ns = self.doc.prefixes[pfx]
                if value.startswith(ns + "#"):
                    return FlSymbol(f"{pfx}:{value[len(ns) + 1:]}", iri=value)
        if "#" in value:
            return FlSymbol(value.rsplit("#", 1)[1], iri=value)
        return FlSymbol(value, quoted=True, iri=value)

    def term(self, value: Union[om.Iri, om.OwlLiteral]) -> FlTerm:
        if isinstance(value, om.Iri):
            return self.symbol(value)
        if value.type_tag in ("_integer", "_double", "_boolean"):
            from .flogic import FlLiteralTerm
            return FlLiteralTerm(value.lexical, value.type_tag)
        return FlSymbol(value.lexical, quoted=True)

    def cls_expr(self, expr: om.ClassExpression) -> FlClassExpr:
        if isinstance(expr, om.Named):
            return Atom(self.symbol(expr.iri))
        if isinstance(expr, om.UnionOf):
            return left_assoc(FlUnion, [self.cls_expr(e) for e in expr.operands])
        if isinstance(expr, om.IntersectionOf):
            return left_assoc(FlIntersection,
                              [self.cls_expr(e) for e in expr.operands])
        if isinstance(expr, om.ComplementOf):
            return FlDifference(OBJ, self.cls_expr(expr.operand))
        raise TypeError(f"no class-expression form for {expr!r}")

    def fresh_aux(self) -> FlSymbol:
        self.aux_counter += 1
        return FlSymbol(f"_lt_aux{self.aux_counter}", quoted=True)

    def warn(self, code: str, message: str):
        self.diagnostics.append(Diagnostic(WARNING, code, message))

    def error(self, code: str, message: str):
        self.diagnostics.append(Diagnostic(ERROR, code, message))


def _var(name: str) -> FlVariable:
    return FlVariable(name)


def _is_named(e) -> bool:
    return isinstance(e, om.Named)


# --- class axioms ------------------------------------------------------------


def translate_class_axiom(ax: om.ClassAxiom, ctx: Optional[Context] = None
                          ) -> Tuple[List[FlRule], List[Diagnostic]]:
    ctx = ctx or Context()
    before = len(ctx.diagnostics)
    rules: List[FlRule] = []
    x = _var("X")
    if isinstance(ax, om.SubClassOf):
        if _is_named(ax.sub) and _is_named(ax.super):
            rules.append(fact(FlSubClass(ctx.cls_expr(ax.sub),
                                         ctx.cls_expr(ax.super))))
        elif _is_named(ax.sub) and isinstance(ax.super, om.Restriction):
            rules.extend(translate_restriction(ax.sub.iri, ax.super, ctx))
        else:
            lowered, _, _ = lower_general_inclusion(ax.sub, ax.super, ctx)
            rules.extend(lowered)
    elif isinstance(ax, om.EquivalentClass):
        if _is_named(ax.a) and _is_named(ax.b):
            a = ctx.cls_expr(ax.a)
            b = ctx.cls_expr(ax.b)
            rules.append(fact(FlEquiv(a, b)))
            rules.append(FlRule(FlIsA(x, a), (FlIsA(x, b),)))
            rules.append(FlRule(FlIsA(x, b), (FlIsA(x, a),)))
            rules.append(FlRule(FlSubClass(Atom(x), a), (FlSubClass(Atom(x), b),)))
            rules.append(FlRule(FlSubClass(Atom(x), b), (FlSubClass(Atom(x), a),)))
        elif _is_named(ax.a) and isinstance(
                ax.b, (om.UnionOf, om.IntersectionOf, om.ComplementOf, om.OneOf)):
            rules.extend(translate_class_definition(ax.a.iri, ax.b, ctx))
        else:
            # decompose into two inclusions and lower each
            for sub, sup in ((ax.a, ax.b), (ax.b, ax.a)):
                if _is_named(sub) and isinstance(sup, om.Restriction):
                    rules.extend(translate_restriction(sub.iri, sup, ctx))
                else:
                    lowered, _, _ = lower_general_inclusion(sub, sup, ctx)
                    rules.extend(lowered)
    elif isinstance(ax, om.DisjointWith):
        # argument order mirrors the target syntax: object first, subject second
        rules.append(fact(FlPred("disjoint_classes",
                                 (ctx.symbol(ax.b), ctx.symbol(ax.a)))))
    else:
        ctx.error("unknown-construct", f"unsupported class axiom {ax!r}")
    return rules, ctx.diagnostics[before:]


def translate_class_definition(name: om.Iri, expr: om.ClassExpression,
                               ctx: Optional[Context] = None) -> List[FlRule]:
    ctx = ctx or Context()
    n = Atom(ctx.symbol(name))
    x = _var("X")
    rules: List[FlRule] = []
    if isinstance(expr, om.UnionOf):
        rules.append(fact(FlEquiv(n, ctx.cls_expr(expr))))
        named_ops = [op for op in expr.operands if _is_named(op)]
        if len(named_ops) != len(expr.operands):
            ctx.warn("complex-operand",
                     "non-named union operand: membership rules omitted")
        atoms = [Atom(ctx.symbol(op.iri)) for op in named_ops]
        for a in atoms:
            rules.append(FlRule(FlIsA(x, n), (FlIsA(x, a),)))
        if ctx.opts.case_split_rhs_disjunction and len(atoms) >= 2:
            for i, a in enumerate(atoms):
                nafs = tuple(
                    FlNaf((FlIsA(x, other),))
                    for j, other in enumerate(atoms) if j != i
                )
                rules.append(FlRule(FlIsA(x, a), (FlIsA(x, n),) + nafs,
                                    tag="case-split"))
            ctx.warn("case-split-weakening",
                     "union definition lowered to reasoning by cases; the "
                     "case rules change the semantics")
    elif isinstance(expr, om.IntersectionOf):
        rules.append(fact(FlEquiv(n, ctx.cls_expr(expr))))
        named_ops = [op for op in expr.operands if _is_named(op)]
        if len(named_ops) != len(expr.operands):
            ctx.warn("complex-operand",
                     "non-named intersection operand: membership rules omitted")
        atoms = [Atom(ctx.symbol(op.iri)) for op in named_ops]
        if atoms:
            rules.append(FlRule(FlIsA(x, n), tuple(FlIsA(x, a) for a in atoms)))
            for a in atoms:
                rules.append(FlRule(FlIsA(x, a), (FlIsA(x, n),)))
    elif isinstance(expr, om.ComplementOf):
        c = ctx.cls_expr(expr.operand)
        rules.append(fact(FlEquiv(n, FlDifference(OBJ, c))))
        rules.append(FlRule(FlIsA(x, n), (FlIsA(x, OBJ), FlNaf((FlIsA(x, c),)))))
    elif isinstance(expr, om.OneOf):
        members = [ctx.symbol(i) for i in expr.individuals]
        for m in members:
            rules.append(fact(FlIsA(m, n)))
        rules.append(fact(FlPred("oneOf", (n.term, FlList(tuple(members))))))
    else:
        raise TypeError(f"not a class definition: {expr!r}")
    return rules


def translate_restriction(cls: om.Iri, r: om.Restriction,
                          ctx: Optional[Context] = None) -> List[FlRule]:
    ctx = ctx or Context()
    c = Atom(ctx.symbol(cls))
    p = ctx.symbol(r.property)
    x, y = _var("X"), _var("Y")
    k = r.kind
    if isinstance(k, om.AllValuesFrom):
        f = ctx.cls_expr(k.filler)
        return [
            fact(FlSignature(c, p, f, via=OBJ)),
            FlRule(FlIsA(y, f), (FlIsA(x, c), FlAttrValue(x, p, y))),
        ]
    if isinstance(k, om.SomeValuesFrom):
        f = ctx.cls_expr(k.filler)
        if not isinstance(f, Atom):
            ctx.warn("complex-operand",
                     "someValuesFrom filler flattened to class expression")
        filler_term = f.term if isinstance(f, Atom) else ctx.symbol(
            om.Iri("http://www.w3.org/2002/07/owl#Thing"))
        return [fact(FlPred("someValuesFrom", (c.term, p, filler_term)))]
    if isinstance(k, om.HasValue):
        return [fact(FlPred("hasValue", (c.term, p, ctx.term(k.value))))]
    if isinstance(k, om.MaxCardinality):
        return [fact(FlSignature(c, p, OBJ, card=(0, k.n)))]
    if isinstance(k, om.MinCardinality):
        return [fact(FlSignature(c, p, OBJ, card=(k.n, None)))]
    if isinstance(k, om.ExactCardinality):
        return [fact(FlSignature(c, p, OBJ, card=(k.n, k.n)))]
    raise TypeError(f"unknown restriction kind: {k!r}")


# --- property axioms ---------------------------------------------------------


def _inverse_rules(ctx: Context, p: FlSymbol, q: FlSymbol) -> List[FlRule]:
    x, y = _var("X"), _var("Y")
    return [
        FlRule(FlAttrValue(x, p, y), (FlAttrValue(y, q, x),)),
        FlRule(FlAttrValue(x, q, y), (FlAttrValue(y, p, x),)),
    ]


def translate_property_axiom(ax: om.PropertyAxiom, ctx: Optional[Context] = None
                             ) -> List[FlRule]:
    ctx = ctx or Context()
    x, y = _var("X"), _var("Y")
    rules: List[FlRule] = []
    if isinstance(ax, om.Domain):
        p = ctx.symbol(ax.property)
        c = Atom(ctx.symbol(ax.cls))
        rng = OBJ
        if ctx.doc is not None:
            for other in ctx.doc.property_axioms:
                if isinstance(other, om.Range) and other.property == ax.property:
                    rng = Atom(ctx.symbol(other.cls))
                    ctx.consumed_range_axioms.add(id(other))
                    break
        rules.append(fact(FlSignature(c, p, rng)))
        if ctx.opts.owl_domain_range_rules:
            rules.append(FlRule(FlIsA(x, c), (FlAttrValue(x, p, y),)))
            if rng != OBJ:
                rules.append(FlRule(FlIsA(y, rng), (FlAttrValue(x, p, y),)))
    elif isinstance(ax, om.Range):
        if ctx.doc is not None and id(ax) in ctx.consumed_range_axioms:
            return []
        p = ctx.symbol(ax.property)
        rng = Atom(ctx.symbol(ax.cls))
        rules.append(fact(FlSignature(OBJ, p, rng)))
        if ctx.opts.owl_domain_range_rules:
            rules.append(FlRule(FlIsA(y, rng), (FlAttrValue(x, p, y),)))
    elif isinstance(ax, om.SubPropertyOf):
        p, q = ctx.symbol(ax.sub), ctx.symbol(ax.super)
        rules.append(FlRule(FlAttrValue(x, q, y), (FlAttrValue(x, p, y),)))
    elif isinstance(ax, om.EquivalentProperty):
        p, q = ctx.symbol(ax.a), ctx.symbol(ax.b)
        rules.append(FlRule(FlAttrValue(x, p, y), (FlAttrValue(x, q, y),)))
        rules.append(FlRule(FlAttrValue(x, q, y), (FlAttrValue(x, p, y),)))
    elif isinstance(ax, om.InverseOf):
        rules.extend(_inverse_rules(ctx, ctx.symbol(ax.a), ctx.symbol(ax.b)))
    elif isinstance(ax, om.Characteristic):
        p = ctx.symbol(ax.property)
        if ax.kind == om.FUNCTIONAL:
            rules.append(fact(FlSignature(OBJ, p, OBJ, card=(1, 1))))
        elif ax.kind == om.INVERSE_FUNCTIONAL:
            inverse: Optional[FlSymbol] = None
            if ctx.doc is not None:
                for other in ctx.doc.property_axioms:
                    if isinstance(other, om.InverseOf):
                        if other.a == ax.property:
                            inverse = ctx.symbol(other.b)
                            break
                        if other.b == ax.property:
                            inverse = ctx.symbol(other.a)
                            break
            if inverse is not None:
                rules.append(fact(FlSignature(OBJ, inverse, OBJ, card=(1, 1))))
            else:
                rules.append(fact(FlPred("inverseFunctional", (p,))))
        elif ax.kind == om.TRANSITIVE:
            rules.append(fact(FlPred("TransitiveProperty", (p,), quoted=True)))
            if not ctx.emitted_transitive_rule:
                ctx.emitted_transitive_rule = True
                pv, z = _var("P"), _var("Z")
                rules.append(FlRule(
                    FlAttrValue(x, pv, z),
                    (FlPred("TransitiveProperty", (pv,), quoted=True),
                     FlAttrValue(x, pv, y), FlAttrValue(y, pv, z)),
                    tag="generic-transitive",
                ))
        elif ax.kind == om.SYMMETRIC:
            rules.append(fact(FlPred("SymmetricProperty", (p,), quoted=True)))
            if not ctx.emitted_symmetric_rule:
                ctx.emitted_symmetric_rule = True
                pv = _var("P")
                rules.append(FlRule(
                    FlAttrValue(x, pv, y),
                    (FlPred("SymmetricProperty", (pv,), quoted=True),
                     FlAttrValue(y, pv, x)),
                    tag="generic-symmetric",
                ))
    else:
        ctx.error("unknown-construct", f"unsupported property axiom {ax!r}")
    return rules


# --- assertions --------------------------------------------------------------


def translate_assertion(a: om.Assertion, ctx: Optional[Context] = None
                        ) -> List[FlRule]:
    ctx = ctx or Context()
    if isinstance(a, om.ClassAssertion):
        return [fact(FlIsA(ctx.symbol(a.individual), Atom(ctx.symbol(a.cls))))]
    if isinstance(a, om.PropertyAssertion):
        return [fact(FlAttrValue(ctx.symbol(a.subject), ctx.symbol(a.property),
                                 ctx.term(a.object)))]
    raise TypeError(f"unknown assertion: {a!r}")


# --- general inclusions ------------------------------------------------------


def _contains_existential(expr: om.ClassExpression) -> bool:
    if isinstance(expr, om.Restriction):
        return isinstance(expr.kind, om.SomeValuesFrom)
    if isinstance(expr, (om.UnionOf, om.IntersectionOf)):
        return any(_contains_existential(e) for e in expr.operands)
    if isinstance(expr, om.ComplementOf):
        return _contains_existential(expr.operand)
    return False


def lower_general_inclusion(sub: om.ClassExpression, sup: om.ClassExpression,
                            ctx: Optional[Context] = None
                            ) -> Tuple[List[FlRule], Translatability,
                                       List[Diagnostic]]:
    """Lower an inclusion where at least one side is not a named class."""
    ctx = ctx or Context()
    before = len(ctx.diagnostics)
    x, y = _var("X"), _var("Y")

    def done(rules, verdict):
        return rules, verdict, ctx.diagnostics[before:]

    # existentials in subsumer position have no rule form
    if isinstance(sub, om.Restriction) and isinstance(sub.kind, om.SomeValuesFrom):
        ctx.error("untranslatable-existential",
                  "existential restriction in a general inclusion has no "
                  "rule translation")
        return done([], Translatability(
            UNTRANSLATABLE, "existential restriction used as a subsumer"))
    if _contains_existential(sup) and not _is_named(sub):
        ctx.error("untranslatable-existential",
                  "existential restriction in the subsuming set cannot be "
                  "translated")
        return done([], Translatability(
            UNTRANSLATABLE, "existential restriction used as a subsumer"))

    # union on the left: one Horn rule per disjunct
    if isinstance(sub, om.UnionOf) and _is_named(sup):
        d = Atom(ctx.symbol(sup.iri))
        if all(_is_named(op) for op in sub.operands):
            rules = [FlRule(FlIsA(x, d), (FlIsA(x, Atom(ctx.symbol(op.iri))),))
                     for op in sub.operands]
            return done(rules, Translatability(DIRECT))
    # intersection on the left: conjunctive body
    if isinstance(sub, om.IntersectionOf) and _is_named(sup) and \
            all(_is_named(op) for op in sub.operands):
        d = Atom(ctx.symbol(sup.iri))
        body = tuple(FlIsA(x, Atom(ctx.symbol(op.iri))) for op in sub.operands)
        return done([FlRule(FlIsA(x, d), body)], Translatability(DIRECT))
    # enumeration on the left: membership facts
    if isinstance(sub, om.OneOf) and _is_named(sup):
        d = Atom(ctx.symbol(sup.iri))
        rules = [fact(FlIsA(ctx.symbol(i), d)) for i in sub.individuals]
        return done(rules, Translatability(DIRECT))
    # complement on the left
    if isinstance(sub, om.ComplementOf) and _is_named(sub.operand) and \
            _is_named(sup):
        d = Atom(ctx.symbol(sup.iri))
        c = Atom(ctx.symbol(sub.operand.iri))
        rule = FlRule(FlIsA(x, d), (FlIsA(x, OBJ), FlNaf((FlIsA(x, c),))))
        return done([rule], Translatability(DIRECT))
    # universal restriction on the left: Lloyd-Topor with an auxiliary
    if isinstance(sub, om.Restriction) and \
            isinstance(sub.kind, om.AllValuesFrom) and _is_named(sup):
        f = ctx.cls_expr(sub.kind.filler)
        p = ctx.symbol(sub.property)
        d = Atom(ctx.symbol(sup.iri))
        aux = ctx.fresh_aux()
        rules = [
            FlRule(FlPred(aux.name, (x,), quoted=True),
                   (FlAttrValue(x, p, y), FlNaf((FlIsA(y, f),))),
                   tag="lt-aux"),
            FlRule(FlIsA(x, d),
                   (FlIsA(x, OBJ), FlNaf((FlPred(aux.name, (x,), quoted=True),))),
                   tag="lt-aux"),
        ]
        return done(rules, Translatability(REQUIRES_LLOYD_TOPOR))
    # union on the right: reasoning by cases
    if isinstance(sup, om.UnionOf) and _is_named(sub) and \
            all(_is_named(op) for op in sup.operands):
        if not ctx.opts.case_split_rhs_disjunction:
            ctx.error("untranslatable-disjunction",
                      "disjunction in the subsuming set; case splitting is "
                      "disabled")
            return done([], Translatability(
                UNTRANSLATABLE, "right-hand-side disjunction with case "
                "splitting disabled"))
        d = Atom(ctx.symbol(sub.iri))
        atoms = [Atom(ctx.symbol(op.iri)) for op in sup.operands]
        rules = []
        for i, a in enumerate(atoms):
            nafs = tuple(FlNaf((FlIsA(x, other),))
                         for j, other in enumerate(atoms) if j != i)
            rules.append(FlRule(FlIsA(x, a), (FlIsA(x, d),) + nafs,
                                tag="case-split"))
        ctx.warn("case-split-weakening",
                 "right-hand-side disjunction lowered to reasoning by cases; "
                 "the case rules change the semantics")
        return done(rules, Translatability(REQUIRES_NAF_CASES))
    # intersection on the right: the head conjunction splits
    if isinstance(sup, om.IntersectionOf) and _is_named(sub) and \
            all(_is_named(op) for op in sup.operands):
        d = Atom(ctx.symbol(sub.iri))
        rules = [FlRule(FlIsA(x, Atom(ctx.symbol(op.iri))), (FlIsA(x, d),))
                 for op in sup.operands]
        return done(rules, Translatability(DIRECT))

    ctx.error("untranslatable-construct",
              f"no lowering for the inclusion {sub!r} <= {sup!r}")
    return done([], Translatability(UNTRANSLATABLE, "unsupported inclusion shape"))


def emit_checker_library(program_so_far: Optional[FlProgram] = None
                         ) -> List[FlRule]:
    return checker_rules()


# --- whole documents ---------------------------------------------------------


def translate_ontology(doc: om.OntologyDocument,
                       opts: Optional[TranslationOptions] = None
                       ) -> Tuple[FlProgram, List[Diagnostic]]:
    ctx = Context(doc, opts)
    rules: List[FlRule] = []
    provenance: Dict[int, object] = {}
    covered: set = set()

    def add(axiom, new_rules):
        if new_rules:
            covered.add(id(axiom))
        for r in new_rules:
            provenance[len(rules)] = axiom
            rules.append(r)

    for ax in doc.class_axioms:
        new_rules, _ = translate_class_axiom(ax, ctx)
        add(ax, new_rules)
    for ax in doc.property_axioms:
        add(ax, translate_property_axiom(ax, ctx))
    for a in doc.assertions:
        add(a, translate_assertion(a, ctx))
    # a Range folded into its Domain's signature is covered by that signature
    covered |= ctx.consumed_range_axioms
    if ctx.opts.emit_checkers:
        for r in emit_checker_library():
            rules.append(r)
    program = FlProgram(tuple(rules), dict(doc.prefixes))
    program.provenance = provenance
    program.covered_axiom_ids = covered
    return program, ctx.diagnostics
