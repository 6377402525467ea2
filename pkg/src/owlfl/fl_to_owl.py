"""Recover an OntologyDocument from an F-logic program.

Recognition works by claiming groups of rules that match the known
translation templates, highest-priority (largest / most specific) templates
first.  Rules that belong to a lossy lowering (Lloyd-Topor auxiliaries,
case-split groups) are consumed and reported, never reconstructed.  Anything
left over is reported as unrepresentable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from . import owl_model as om
from .checkers import CHECKER_NAMES
from .diagnostics import Diagnostic, ERROR, INFO, WARNING
from .flogic import (
    Atom, FlAttrValue, FlClassExpr, FlDifference, FlEquiv, FlIntersection,
    FlIsA, FlList, FlLit, FlLiteralTerm, FlNaf, FlPred, FlProgram, FlRule,
    FlSignature, FlSubClass, FlSymbol, FlTerm, FlUnion, FlVariable,
    print_rule,
)

OBJECT_NAME = "_object"


@dataclass(frozen=True)
class TemplateMatch:
    template_id: str
    bindings: Tuple[Tuple[str, str], ...]
    consumed: Tuple[int, ...]


# --- symbol / term mapping ---------------------------------------------------


class _Namer:
    def __init__(self, base: str, prefixes: Dict[str, str]):
        self.base = base
        self.prefixes = prefixes

    def iri(self, sym: FlSymbol) -> om.Iri:
        if sym.iri:
            return om.Iri(sym.iri)
        name = sym.name
        if "://" in name:
            return om.Iri(name)
        if ":" in name:
            pfx, local = name.split(":", 1)
            ns = self.prefixes.get(pfx)
            if ns:
                return om.Iri(ns.rstrip("#") + "#" + local)
        return om.Iri(self.base + "#" + name)

    def value(self, t: FlTerm) -> Union[om.Iri, om.OwlLiteral]:
        """Property-value position: literals print quoted or as numbers."""
        if isinstance(t, FlLiteralTerm):
            return om.OwlLiteral(t.value, t.type_tag)
        if isinstance(t, FlSymbol):
            if t.iri:
                return om.Iri(t.iri)
            if t.quoted and "://" not in t.name:
                return om.OwlLiteral(t.name, "_string")
            return self.iri(t)
        raise TypeError(f"cannot map {t!r} to an OWL value")

    def cls(self, e: FlClassExpr) -> om.ClassExpression:
        if isinstance(e, Atom) and isinstance(e.term, FlSymbol):
            return om.Named(self.iri(e.term))
        if isinstance(e, FlUnion):
            return om.UnionOf(tuple(self._flatten(e, FlUnion)))
        if isinstance(e, FlIntersection):
            return om.IntersectionOf(tuple(self._flatten(e, FlIntersection)))
        if isinstance(e, FlDifference) and _is_object_atom(e.a):
            return om.ComplementOf(self.cls(e.b))
        raise TypeError(f"cannot map {e!r} to a class expression")

    def _flatten(self, e: FlClassExpr, kind) -> List[om.ClassExpression]:
        if isinstance(e, kind):
            return self._flatten(e.a, kind) + self._flatten(e.b, kind)
        return [self.cls(e)]


def _is_object_atom(e: FlClassExpr) -> bool:
    return isinstance(e, Atom) and isinstance(e.term, FlSymbol) and \
        e.term.name == OBJECT_NAME


def _atom_sym(e: FlClassExpr) -> Optional[FlSymbol]:
    if isinstance(e, Atom) and isinstance(e.term, FlSymbol):
        return e.term
    return None


def _union_atoms(e: FlClassExpr) -> Optional[List[FlSymbol]]:
    if isinstance(e, FlUnion):
        a = _union_atoms(e.a)
        b = _union_atoms(e.b)
        if a is None or b is None:
            return None
        return a + b
    s = _atom_sym(e)
    return [s] if s is not None else None


def _intersection_atoms(e: FlClassExpr) -> Optional[List[FlSymbol]]:
    if isinstance(e, FlIntersection):
        a = _intersection_atoms(e.a)
        b = _intersection_atoms(e.b)
        if a is None or b is None:
            return None
        return a + b
    s = _atom_sym(e)
    return [s] if s is not None else None


# --- rule-shape predicates ---------------------------------------------------


def _isa_var(lit: FlLit):
    """(var_name, class_symbol) for ``?V:C`` with C a plain symbol."""
    if isinstance(lit, FlIsA) and isinstance(lit.obj, FlVariable):
        s = _atom_sym(lit.cls)
        if s is not None:
            return lit.obj.name, s
    return None


def _attr_vars(lit: FlLit):
    """(subj_var, prop_symbol, val_var) for ``?S[p -> ?V]``."""
    if isinstance(lit, FlAttrValue) and isinstance(lit.obj, FlVariable) and \
            isinstance(lit.prop, FlSymbol) and isinstance(lit.value, FlVariable):
        return lit.obj.name, lit.prop, lit.value.name
    return None


def _membership_rule(rule: FlRule):
    """``?X:D :- ?X:C1, ..., ?X:Cn`` (all positive, same variable)."""
    h = _isa_var(rule.head)
    if h is None or not rule.body:
        return None
    var, head_cls = h
    body_classes = []
    for lit in rule.body:
        b = _isa_var(lit)
        if b is None or b[0] != var:
            return None
        body_classes.append(b[1])
    return head_cls, body_classes


def _naf_isa(lit: FlLit):
    if isinstance(lit, FlNaf) and len(lit.inner) == 1:
        return _isa_var(lit.inner[0])
    return None


def _case_split_rule(rule: FlRule):
    """``?X:A :- ?X:D, \\naf ?X:B1, ...`` -> (A, D, [B1..])."""
    h = _isa_var(rule.head)
    if h is None or not rule.body:
        return None
    var, head_cls = h
    first = _isa_var(rule.body[0])
    if first is None or first[0] != var:
        return None
    nafs = []
    for lit in rule.body[1:]:
        n = _naf_isa(lit)
        if n is None or n[0] != var:
            return None
        nafs.append(n[1])
    if not nafs:
        return None
    return head_cls, first[1], nafs


def _complement_rule(rule: FlRule):
    """``?X:N :- ?X:_object, \\naf ?X:C`` -> (N, C)."""
    h = _isa_var(rule.head)
    if h is None or len(rule.body) != 2:
        return None
    var, head_cls = h
    first = _isa_var(rule.body[0])
    if first is None or first[0] != var or first[1].name != OBJECT_NAME:
        return None
    n = _naf_isa(rule.body[1])
    if n is None or n[0] != var:
        return None
    return head_cls, n[1]


def _sub_rule(rule: FlRule):
    """``?X::A :- ?X::B`` -> (A, B)."""
    if not isinstance(rule.head, FlSubClass) or len(rule.body) != 1 or \
            not isinstance(rule.body[0], FlSubClass):
        return None
    h, b = rule.head, rule.body[0]
    hs, hv = _atom_sym(h.super), h.sub
    bs, bv = _atom_sym(b.super), b.sub
    if hs is None or bs is None:
        return None
    if isinstance(hv, Atom) and isinstance(hv.term, FlVariable) and \
            isinstance(bv, Atom) and isinstance(bv.term, FlVariable) and \
            hv.term.name == bv.term.name:
        return hs, bs
    return None


def _attr_rule(rule: FlRule):
    """``?X[p -> ?Y] :- ?X[q -> ?Y]`` or inverse orientation.

    Returns (p, q, inverted?) or None.
    """
    if not isinstance(rule.head, FlAttrValue) or len(rule.body) != 1:
        return None
    h = _attr_vars(rule.head)
    b = _attr_vars(rule.body[0])
    if h is None or b is None:
        return None
    hs, hp, hv = h
    bs, bp, bv = b
    if hs == bs and hv == bv:
        return hp, bp, False
    if hs == bv and hv == bs:
        return hp, bp, True
    return None


def _transitive_generic(rule: FlRule) -> bool:
    """``?X[?P -> ?Z] :- 'TransitiveProperty'(?P), ?X[?P->?Y], ?Y[?P->?Z]``."""
    if not isinstance(rule.head, FlAttrValue) or len(rule.body) != 3:
        return False
    guard = rule.body[0]
    return (isinstance(guard, FlPred) and guard.name == "TransitiveProperty"
            and isinstance(rule.head.prop, FlVariable)
            and all(isinstance(l, FlAttrValue) for l in rule.body[1:]))


def _symmetric_generic(rule: FlRule) -> bool:
    if not isinstance(rule.head, FlAttrValue) or len(rule.body) != 2:
        return False
    guard = rule.body[0]
    return (isinstance(guard, FlPred) and guard.name == "SymmetricProperty"
            and isinstance(rule.head.prop, FlVariable)
            and isinstance(rule.body[1], FlAttrValue))


def _avf_dual_rule(rule: FlRule):
    """``?Y:F :- ?X:C, ?X[p -> ?Y]`` -> (C, p, F-expr)."""
    if not isinstance(rule.head, FlIsA) or len(rule.body) != 2:
        return None
    if not isinstance(rule.head.obj, FlVariable):
        return None
    b0 = _isa_var(rule.body[0])
    b1 = _attr_vars(rule.body[1])
    if b0 is None or b1 is None:
        return None
    xvar, cls_sym = b0
    s, p, v = b1
    if s != xvar or v != rule.head.obj.name:
        return None
    return cls_sym, p, rule.head.cls


def _aux_name(name: str) -> bool:
    return name.startswith("_lt_aux")


def _mentions_aux(rule: FlRule) -> bool:
    def lit_mentions(lit: FlLit) -> bool:
        if isinstance(lit, FlPred):
            return _aux_name(lit.name)
        if isinstance(lit, FlNaf):
            return any(lit_mentions(i) for i in lit.inner)
        return False
    return lit_mentions(rule.head) or any(lit_mentions(l) for l in rule.body)


# --- recognition -------------------------------------------------------------


class _Recognizer:
    def __init__(self, program: FlProgram, base: str,
                 prefixes: Dict[str, str]):
        self.rules = list(program.rules)
        self.consumed = [False] * len(self.rules)
        self.namer = _Namer(base, prefixes)
        self.matches: List[TemplateMatch] = []
        self.diagnostics: List[Diagnostic] = []
        self.class_axioms: List[om.ClassAxiom] = []
        self.property_axioms: List[om.PropertyAxiom] = []
        self.assertions: List[om.Assertion] = []

    # -- bookkeeping

    def claim(self, template_id: str, indices: Sequence[int], **bindings):
        for i in indices:
            self.consumed[i] = True
        self.matches.append(TemplateMatch(
            template_id,
            tuple(sorted((k, str(v)) for k, v in bindings.items())),
            tuple(sorted(indices)),
        ))

    def open_indices(self):
        return [i for i, c in enumerate(self.consumed) if not c]

    def fact_head(self, i: int) -> Optional[FlLit]:
        r = self.rules[i]
        return r.head if r.is_fact else None

    # -- template passes, most specific first

    def run(self):
        self.pass_checker_library()
        self.pass_oneof_definitions()
        self.pass_equiv_definitions()
        self.pass_avf_dual_pairs()
        self.pass_characteristics()
        self.pass_inverse_and_equivalent_properties()
        self.pass_fact_predicates()
        self.pass_signatures()
        self.pass_subproperty_rules()
        self.pass_lossy_groups()
        self.pass_subclass_rules()
        self.pass_subclass_facts()
        self.pass_abox()
        self.pass_leftovers()

    def pass_checker_library(self):
        claimed = []
        for i in self.open_indices():
            head = self.rules[i].head
            if isinstance(head, FlPred) and (
                    head.name in CHECKER_NAMES or head.name.startswith("check_")):
                claimed.append(i)
        if claimed:
            self.claim("checker-library", claimed)

    def pass_oneof_definitions(self):
        for i in self.open_indices():
            h = self.fact_head(i)
            if not (isinstance(h, FlPred) and h.name == "oneOf"
                    and len(h.args) == 2 and isinstance(h.args[0], FlSymbol)
                    and isinstance(h.args[1], FlList)):
                continue
            cls_sym = h.args[0]
            members = [m for m in h.args[1].elements if isinstance(m, FlSymbol)]
            if len(members) != len(h.args[1].elements):
                continue
            group = [i]
            member_set = set(members)
            for j in self.open_indices():
                hj = self.fact_head(j)
                if isinstance(hj, FlIsA) and isinstance(hj.obj, FlSymbol) and \
                        hj.obj in member_set and _atom_sym(hj.cls) == cls_sym:
                    group.append(j)
            self.claim("oneof-definition", group, cls=cls_sym.name)
            self.class_axioms.append(om.EquivalentClass(
                om.Named(self.namer.iri(cls_sym)),
                om.OneOf(tuple(self.namer.iri(m) for m in members)),
            ))

    def pass_equiv_definitions(self):
        for i in self.open_indices():
            h = self.fact_head(i)
            if not isinstance(h, FlEquiv):
                continue
            a = _atom_sym(h.a)
            if a is None:
                continue
            b = h.b
            if isinstance(b, FlUnion):
                self._claim_union_definition(i, a, b)
            elif isinstance(b, FlIntersection):
                self._claim_intersection_definition(i, a, b)
            elif isinstance(b, FlDifference) and _is_object_atom(b.a):
                self._claim_complement_definition(i, a, b)
            elif _atom_sym(b) is not None:
                self._claim_named_equivalence(i, a, _atom_sym(b))

    def _claim_union_definition(self, i: int, name: FlSymbol, b: FlUnion):
        ops = _union_atoms(b)
        group = [i]
        if ops is not None:
            op_set = set(ops)
            for j in self.open_indices():
                if j == i:
                    continue
                m = _membership_rule(self.rules[j])
                if m is not None and m[0] == name and len(m[1]) == 1 and \
                        m[1][0] in op_set:
                    group.append(j)
                    continue
                cs = _case_split_rule(self.rules[j])
                if cs is not None and cs[0] in op_set and cs[1] == name and \
                        set(cs[2]) == op_set - {cs[0]}:
                    group.append(j)
        self.claim("union-definition", group, cls=name.name)
        self.class_axioms.append(om.EquivalentClass(
            om.Named(self.namer.iri(name)), self.namer.cls(b)))

    def _claim_intersection_definition(self, i: int, name: FlSymbol,
                                       b: FlIntersection):
        ops = _intersection_atoms(b)
        group = [i]
        if ops is not None:
            op_set = set(ops)
            for j in self.open_indices():
                if j == i:
                    continue
                m = _membership_rule(self.rules[j])
                if m is None:
                    continue
                if m[0] == name and set(m[1]) == op_set:
                    group.append(j)
                elif m[0] in op_set and m[1] == [name]:
                    group.append(j)
        self.claim("intersection-definition", group, cls=name.name)
        self.class_axioms.append(om.EquivalentClass(
            om.Named(self.namer.iri(name)), self.namer.cls(b)))

    def _claim_complement_definition(self, i: int, name: FlSymbol,
                                     b: FlDifference):
        operand = _atom_sym(b.b)
        group = [i]
        if operand is not None:
            for j in self.open_indices():
                if j == i:
                    continue
                c = _complement_rule(self.rules[j])
                if c is not None and c[0] == name and c[1] == operand:
                    group.append(j)
        self.claim("complement-definition", group, cls=name.name)
        self.class_axioms.append(om.EquivalentClass(
            om.Named(self.namer.iri(name)), self.namer.cls(b)))

    def _claim_named_equivalence(self, i: int, a: FlSymbol, b: FlSymbol):
        group = [i]
        for j in self.open_indices():
            if j == i:
                continue
            m = _membership_rule(self.rules[j])
            if m is not None and len(m[1]) == 1 and \
                    {m[0], m[1][0]} == {a, b}:
                group.append(j)
                continue
            s = _sub_rule(self.rules[j])
            if s is not None and {s[0], s[1]} == {a, b}:
                group.append(j)
        self.claim("named-equivalence", group, a=a.name, b=b.name)
        self.class_axioms.append(om.EquivalentClass(
            om.Named(self.namer.iri(a)), om.Named(self.namer.iri(b))))

    def pass_avf_dual_pairs(self):
        for i in self.open_indices():
            h = self.fact_head(i)
            if not (isinstance(h, FlSignature) and h.via is not None
                    and h.card is None):
                continue
            cls_sym = _atom_sym(h.cls)
            if cls_sym is None or not isinstance(h.prop, FlSymbol):
                continue
            group = [i]
            for j in self.open_indices():
                if j == i:
                    continue
                d = _avf_dual_rule(self.rules[j])
                if d is not None and d[0] == cls_sym and d[1] == h.prop and \
                        d[2] == h.range:
                    group.append(j)
                    break
            self.claim("allValuesFrom", group, cls=cls_sym.name,
                       prop=h.prop.name)
            self.class_axioms.append(om.SubClassOf(
                om.Named(self.namer.iri(cls_sym)),
                om.Restriction(self.namer.iri(h.prop),
                               om.AllValuesFrom(self.namer.cls(h.range))),
            ))

    def pass_characteristics(self):
        for kind, pred_name, matcher in (
                (om.TRANSITIVE, "TransitiveProperty", _transitive_generic),
                (om.SYMMETRIC, "SymmetricProperty", _symmetric_generic)):
            prop_facts = []
            for i in self.open_indices():
                h = self.fact_head(i)
                if isinstance(h, FlPred) and h.name == pred_name and \
                        len(h.args) == 1 and isinstance(h.args[0], FlSymbol):
                    prop_facts.append(i)
            generic = [i for i in self.open_indices()
                       if not self.rules[i].is_fact and matcher(self.rules[i])]
            for i in prop_facts:
                p = self.fact_head(i).args[0]
                self.claim(f"{pred_name[0].lower()}{pred_name[1:]}", [i],
                           prop=p.name)
                self.property_axioms.append(
                    om.Characteristic(self.namer.iri(p), kind))
            if prop_facts and generic:
                self.claim(f"generic-{kind}-rule", generic)
            elif generic:
                # a support rule with no property facts is inert but harmless
                self.claim(f"generic-{kind}-rule", generic)

    def pass_inverse_and_equivalent_properties(self):
        open_attr = {}
        for i in self.open_indices():
            r = self.rules[i]
            if r.is_fact:
                continue
            a = _attr_rule(r)
            if a is not None:
                open_attr[i] = a
        done: Set[int] = set()
        indices = sorted(open_attr)
        for i in indices:
            if i in done:
                continue
            p, q, inv = open_attr[i]
            if p == q:
                continue
            for j in indices:
                if j == i or j in done:
                    continue
                p2, q2, inv2 = open_attr[j]
                if p2 == q and q2 == p and inv == inv2:
                    done.add(i)
                    done.add(j)
                    if inv:
                        self.claim("inverse-of", [i, j], a=p.name, b=q.name)
                        self.property_axioms.append(om.InverseOf(
                            self.namer.iri(p), self.namer.iri(q)))
                    else:
                        self.claim("equivalent-property", [i, j],
                                   a=p.name, b=q.name)
                        self.property_axioms.append(om.EquivalentProperty(
                            self.namer.iri(p), self.namer.iri(q)))
                    break

    def pass_fact_predicates(self):
        for i in self.open_indices():
            h = self.fact_head(i)
            if not isinstance(h, FlPred):
                continue
            if h.name == "someValuesFrom" and len(h.args) == 3 and \
                    all(isinstance(a, FlSymbol) for a in h.args):
                c, p, f = h.args
                self.claim("someValuesFrom", [i], cls=c.name, prop=p.name)
                self.class_axioms.append(om.SubClassOf(
                    om.Named(self.namer.iri(c)),
                    om.Restriction(self.namer.iri(p), om.SomeValuesFrom(
                        om.Named(self.namer.iri(f)))),
                ))
            elif h.name == "hasValue" and len(h.args) == 3 and \
                    isinstance(h.args[0], FlSymbol) and \
                    isinstance(h.args[1], FlSymbol):
                c, p, v = h.args
                self.claim("hasValue", [i], cls=c.name, prop=p.name)
                self.class_axioms.append(om.SubClassOf(
                    om.Named(self.namer.iri(c)),
                    om.Restriction(self.namer.iri(p),
                                   om.HasValue(self.namer.value(v))),
                ))
            elif h.name == "disjoint_classes" and len(h.args) == 2 and \
                    all(isinstance(a, FlSymbol) for a in h.args):
                b, a = h.args  # printed object-first; the axiom is (a, b)
                self.claim("disjoint-classes", [i], a=a.name, b=b.name)
                self.class_axioms.append(om.DisjointWith(
                    self.namer.iri(a), self.namer.iri(b)))
            elif h.name == "inverseFunctional" and len(h.args) == 1 and \
                    isinstance(h.args[0], FlSymbol):
                p = h.args[0]
                self.claim("inverse-functional", [i], prop=p.name)
                self.property_axioms.append(om.Characteristic(
                    self.namer.iri(p), om.INVERSE_FUNCTIONAL))

    def pass_signatures(self):
        for i in self.open_indices():
            h = self.fact_head(i)
            if not isinstance(h, FlSignature) or h.via is not None:
                continue
            cls_sym = _atom_sym(h.cls)
            rng_sym = _atom_sym(h.range)
            if cls_sym is None or not isinstance(h.prop, FlSymbol):
                continue
            prop_iri = self.namer.iri(h.prop)
            cls_is_obj = cls_sym.name == OBJECT_NAME
            rng_is_obj = rng_sym is not None and rng_sym.name == OBJECT_NAME
            if h.card is None:
                if cls_is_obj and not rng_is_obj:
                    self.claim("range", [i], prop=h.prop.name)
                    self.property_axioms.append(om.Range(
                        prop_iri, self.namer.iri(rng_sym)))
                elif not cls_is_obj:
                    self.claim("domain-range", [i], cls=cls_sym.name,
                               prop=h.prop.name)
                    self.property_axioms.append(om.Domain(
                        prop_iri, self.namer.iri(cls_sym)))
                    if not rng_is_obj and rng_sym is not None:
                        self.property_axioms.append(om.Range(
                            prop_iri, self.namer.iri(rng_sym)))
                continue
            low, high = h.card
            if cls_is_obj and (low, high) == (1, 1):
                self.claim("functional", [i], prop=h.prop.name)
                self.property_axioms.append(om.Characteristic(
                    prop_iri, om.FUNCTIONAL))
                continue
            if cls_is_obj:
                continue  # leave for the leftover pass
            if low == 0 and high is not None:
                kind = om.MaxCardinality(high)
            elif high is None:
                kind = om.MinCardinality(low)
            elif low == high:
                kind = om.ExactCardinality(low)
            else:
                continue
            self.claim("cardinality-restriction", [i], cls=cls_sym.name,
                       prop=h.prop.name)
            self.class_axioms.append(om.SubClassOf(
                om.Named(self.namer.iri(cls_sym)),
                om.Restriction(prop_iri, kind)))

    def pass_subproperty_rules(self):
        for i in self.open_indices():
            r = self.rules[i]
            if r.is_fact:
                continue
            a = _attr_rule(r)
            if a is None:
                continue
            p, q, inv = a
            if inv:
                continue  # a lone inverse-orientation rule has no OWL axiom
            self.claim("sub-property", [i], sub=q.name, super=p.name)
            self.property_axioms.append(om.SubPropertyOf(
                self.namer.iri(q), self.namer.iri(p)))

    def pass_lossy_groups(self):
        aux = [i for i in self.open_indices()
               if _mentions_aux(self.rules[i])]
        if aux:
            self.claim("lloyd-topor-aux", aux)
            self.diagnostics.append(Diagnostic(
                INFO, "lossy-origin",
                "Lloyd-Topor auxiliary rules come from a lowered universal "
                "restriction and are not reconstructed as OWL axioms",
            ))
        cases = [i for i in self.open_indices()
                 if not self.rules[i].is_fact
                 and _case_split_rule(self.rules[i]) is not None
                 and _complement_rule(self.rules[i]) is None]
        if cases:
            self.claim("case-split-group", cases)
            self.diagnostics.append(Diagnostic(
                INFO, "lossy-origin",
                "case-split rules come from a lowered disjunctive subsumer "
                "and are not reconstructed as OWL axioms",
            ))

    def pass_subclass_rules(self):
        for i in self.open_indices():
            r = self.rules[i]
            if r.is_fact:
                continue
            m = _membership_rule(r)
            if m is not None:
                head_cls, body = m
                sup = om.Named(self.namer.iri(head_cls))
                if len(body) == 1:
                    sub: om.ClassExpression = om.Named(self.namer.iri(body[0]))
                else:
                    sub = om.IntersectionOf(tuple(
                        om.Named(self.namer.iri(b)) for b in body))
                self.claim("membership-rule", [i], cls=head_cls.name)
                self.class_axioms.append(om.SubClassOf(sub, sup))
                continue
            c = _complement_rule(r)
            if c is not None:
                head_cls, operand = c
                self.claim("complement-subclass", [i], cls=head_cls.name)
                self.class_axioms.append(om.SubClassOf(
                    om.ComplementOf(om.Named(self.namer.iri(operand))),
                    om.Named(self.namer.iri(head_cls))))

    def pass_subclass_facts(self):
        for i in self.open_indices():
            h = self.fact_head(i)
            if isinstance(h, FlSubClass):
                a, b = _atom_sym(h.sub), _atom_sym(h.super)
                if a is not None and b is not None:
                    self.claim("subclass-fact", [i], sub=a.name, super=b.name)
                    self.class_axioms.append(om.SubClassOf(
                        om.Named(self.namer.iri(a)),
                        om.Named(self.namer.iri(b))))
            elif isinstance(h, FlEquiv):
                a, b = _atom_sym(h.a), _atom_sym(h.b)
                if a is not None and b is not None:
                    self.claim("named-equivalence", [i], a=a.name, b=b.name)
                    self.class_axioms.append(om.EquivalentClass(
                        om.Named(self.namer.iri(a)),
                        om.Named(self.namer.iri(b))))

    def pass_abox(self):
        for i in self.open_indices():
            h = self.fact_head(i)
            if isinstance(h, FlIsA) and isinstance(h.obj, FlSymbol):
                cls_sym = _atom_sym(h.cls)
                if cls_sym is not None and cls_sym.name != OBJECT_NAME:
                    self.claim("class-assertion", [i], ind=h.obj.name,
                               cls=cls_sym.name)
                    self.assertions.append(om.ClassAssertion(
                        self.namer.iri(h.obj), self.namer.iri(cls_sym)))
            elif isinstance(h, FlAttrValue) and \
                    isinstance(h.obj, FlSymbol) and \
                    isinstance(h.prop, FlSymbol) and \
                    not isinstance(h.value, FlVariable):
                self.claim("property-assertion", [i], subj=h.obj.name,
                           prop=h.prop.name)
                self.assertions.append(om.PropertyAssertion(
                    self.namer.iri(h.obj), self.namer.iri(h.prop),
                    self.namer.value(h.value)))

    def pass_leftovers(self):
        for i in self.open_indices():
            self.diagnostics.append(Diagnostic(
                WARNING, "unrepresentable-in-owl",
                f"no OWL form for: {print_rule(self.rules[i])}",
            ))


# --- public API --------------------------------------------------------------


def recognize_templates(program: FlProgram, base_iri: Optional[str] = None,
                        prefixes: Optional[Dict[str, str]] = None
                        ) -> Tuple[List[TemplateMatch], List[Diagnostic]]:
    rec = _build(program, base_iri, prefixes)
    return rec.matches, rec.diagnostics


def translate_program(program: FlProgram, base_iri: Optional[str] = None,
                      prefixes: Optional[Dict[str, str]] = None
                      ) -> Tuple[om.OntologyDocument, List[Diagnostic]]:
    rec = _build(program, base_iri, prefixes)
    doc_prefixes = {"": rec.namer.base}
    for pfx, ns in rec.namer.prefixes.items():
        if pfx:
            doc_prefixes[pfx] = ns.rstrip("#")
    doc = om.OntologyDocument(
        prefixes=doc_prefixes,
        class_axioms=list(rec.class_axioms),
        property_axioms=list(rec.property_axioms),
        assertions=list(rec.assertions),
    )
    return doc, rec.diagnostics


def _build(program: FlProgram, base_iri, prefixes) -> _Recognizer:
    merged = dict(program.prefixes)
    if prefixes:
        merged.update(prefixes)
    base = base_iri or merged.get("") or "http://example.org/ontology"
    rec = _Recognizer(program, base.rstrip("#"), merged)
    rec.run()
    return rec
