"""Terminating bottom-up evaluation of F-logic programs.

Semi-naive saturation with stratified negation over the finite constant
domain of the loaded program.  Structural rules (subclass transitivity,
membership inheritance, universal ``_object`` membership) are applied inside
every stratum.  Constraint checking is closed-world: no equality inference,
distinct-value counting for cardinality bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .checkers import (
    CARDINALITY_MSG, CHECKER_NAMES, DISJOINT_MSG, HASVALUE_MSG, INVFUNC_MSG,
    ONEOF_MSG, RANGE_MSG, SOMEVALUES_MSG,
)
from .flogic import (
    Atom, FlAttrValue, FlClassExpr, FlDifference, FlEquiv, FlFormat,
    FlIntersection, FlIsA, FlList, FlLit, FlLiteralTerm, FlMember, FlNaf,
    FlNeq, FlPred, FlProgram, FlRule, FlSignature, FlSubClass, FlSymbol,
    FlTerm, FlUnion, FlVariable, print_literal, print_term,
)

OBJECT = FlSymbol("_object")


class EngineError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


Binding = Dict[str, FlTerm]


# --- fact store --------------------------------------------------------------


class FactStore:
    """Ground facts partitioned by family.

    ``isa``: (individual, class) pairs; ``sub``: (class, class);
    ``attr``: (subject, property, value); ``pred``: name -> argument tuples.
    """

    def __init__(self):
        self.isa: Set[Tuple[FlTerm, FlTerm]] = set()
        self.sub: Set[Tuple[FlTerm, FlTerm]] = set()
        self.attr: Set[Tuple[FlTerm, FlTerm, FlTerm]] = set()
        self.pred: Dict[str, Set[Tuple[FlTerm, ...]]] = {}
        self.individuals: Set[FlTerm] = set()

    def add_pred(self, name: str, args: Tuple[FlTerm, ...]) -> bool:
        bucket = self.pred.setdefault(name, set())
        if args in bucket:
            return False
        bucket.add(args)
        return True

    def size(self) -> int:
        return (len(self.isa) + len(self.sub) + len(self.attr)
                + sum(len(v) for v in self.pred.values()))

    def all_facts(self):
        for t in self.isa:
            yield ("isa", t)
        for t in self.sub:
            yield ("sub", t)
        for t in self.attr:
            yield ("attr", t)
        for name, tuples in self.pred.items():
            for t in tuples:
                yield ("pred", (name,) + t)

    def copy(self) -> "FactStore":
        out = FactStore()
        out.isa = set(self.isa)
        out.sub = set(self.sub)
        out.attr = set(self.attr)
        out.pred = {k: set(v) for k, v in self.pred.items()}
        out.individuals = set(self.individuals)
        return out

    def snapshot(self) -> FrozenSet:
        return frozenset(self.all_facts())


@dataclass(frozen=True)
class Stratification:
    strata: Tuple[Tuple[FlRule, ...], ...]
    level: Dict[Tuple, int] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ConstraintViolation:
    checker: str
    message: str
    witnesses: Tuple[Tuple[Tuple[str, str], ...], ...] = ()

    def __str__(self):
        return self.message


class KnowledgeBase:
    def __init__(self, rules, base_facts, signatures, checker_rules, equiv_docs,
                 prefixes):
        self.rules: List[FlRule] = rules
        self.base_facts: List[FlLit] = base_facts
        self.signatures: List[FlSignature] = signatures
        self.checker_rules: List[FlRule] = checker_rules
        self.equiv_docs: List[FlEquiv] = equiv_docs
        self.prefixes = prefixes
        self._stratification: Optional[Stratification] = None
        self._store: Optional[FactStore] = None

    @property
    def store(self) -> FactStore:
        if self._store is None:
            saturate(self)
        return self._store

    def invalidate(self):
        self._store = None


# --- loading -----------------------------------------------------------------


def _literal_vars(lit: FlLit, out: Set[str]):
    def term_vars(t: FlTerm):
        if isinstance(t, FlVariable):
            out.add(t.name)
        elif isinstance(t, FlList):
            for e in t.elements:
                term_vars(e)

    def expr_vars(e: FlClassExpr):
        if isinstance(e, Atom):
            term_vars(e.term)
        elif isinstance(e, (FlUnion, FlIntersection, FlDifference)):
            expr_vars(e.a)
            expr_vars(e.b)

    if isinstance(lit, FlIsA):
        term_vars(lit.obj)
        expr_vars(lit.cls)
    elif isinstance(lit, FlSubClass):
        expr_vars(lit.sub)
        expr_vars(lit.super)
    elif isinstance(lit, FlAttrValue):
        term_vars(lit.obj)
        term_vars(lit.prop)
        term_vars(lit.value)
    elif isinstance(lit, FlPred):
        for a in lit.args:
            term_vars(a)
    elif isinstance(lit, FlNaf):
        for i in lit.inner:
            _literal_vars(i, out)
    elif isinstance(lit, FlMember):
        term_vars(lit.item)
        term_vars(lit.collection)
    elif isinstance(lit, FlNeq):
        term_vars(lit.a)
        term_vars(lit.b)
    elif isinstance(lit, FlFormat):
        for a in lit.args:
            term_vars(a)
    elif isinstance(lit, FlEquiv):
        expr_vars(lit.a)
        expr_vars(lit.b)
    elif isinstance(lit, FlSignature):
        expr_vars(lit.cls)
        term_vars(lit.prop)
        expr_vars(lit.range)


def literal_vars(lit: FlLit) -> Set[str]:
    out: Set[str] = set()
    _literal_vars(lit, out)
    return out


def _positive_body_vars(body) -> Set[str]:
    out: Set[str] = set()
    for lit in body:
        if isinstance(lit, (FlNaf, FlNeq, FlFormat)):
            continue
        _literal_vars(lit, out)
    return out


def _check_no_function_terms(lit: FlLit):
    # lists with variables in rule heads would invent new terms
    vs: Set[str] = set()
    if isinstance(lit, FlPred):
        for a in lit.args:
            if isinstance(a, FlList):
                _literal_vars(lit, vs)
                if vs:
                    raise EngineError(
                        "function-symbols-unsupported",
                        f"non-ground list in head: {print_literal(lit)}",
                    )


def load_program(program: FlProgram) -> KnowledgeBase:
    """Index rules and facts; reject unsafe or term-inventing rules."""
    rules: List[FlRule] = []
    base_facts: List[FlLit] = []
    signatures: List[FlSignature] = []
    checker: List[FlRule] = []
    equiv_docs: List[FlEquiv] = []
    for rule in program.rules:
        head = rule.head
        if isinstance(head, FlPred) and (
                head.name in CHECKER_NAMES or head.name.startswith("check_")):
            checker.append(rule)
            continue
        if rule.is_fact:
            if literal_vars(head):
                raise EngineError("non-range-restricted",
                                  f"fact with variables: {print_literal(head)}")
            if isinstance(head, FlSignature):
                signatures.append(head)
            elif isinstance(head, FlEquiv):
                equiv_docs.append(head)
            else:
                base_facts.append(head)
            continue
        if isinstance(head, (FlSignature, FlEquiv)):
            raise EngineError("unsupported-rule",
                              "signatures and equivalences cannot be derived "
                              "by rules")
        _check_no_function_terms(head)
        pos_vars = _positive_body_vars(rule.body)
        head_vars = literal_vars(head)
        if not head_vars <= pos_vars:
            raise EngineError(
                "non-range-restricted",
                f"head variables {sorted(head_vars - pos_vars)} not bound by "
                f"a positive body literal in: {print_literal(head)}",
            )
        for lit in rule.body:
            if isinstance(lit, FlNaf):
                naf_vars = literal_vars(lit)
                if not naf_vars <= pos_vars:
                    raise EngineError(
                        "non-range-restricted",
                        f"negated variables {sorted(naf_vars - pos_vars)} not "
                        f"bound by a positive body literal",
                    )
        rules.append(rule)
    return KnowledgeBase(rules, base_facts, signatures, checker, equiv_docs,
                         dict(program.prefixes))


# --- stratification ----------------------------------------------------------


def _literal_key(lit: FlLit):
    if isinstance(lit, FlIsA):
        if isinstance(lit.cls, Atom) and isinstance(lit.cls.term, FlSymbol):
            return ("isa", lit.cls.term.name)
        return ("isa", None)
    if isinstance(lit, FlSubClass):
        return ("sub",)
    if isinstance(lit, FlAttrValue):
        return ("attr",)
    if isinstance(lit, FlPred):
        return ("pred", lit.name)
    return None


def _keys_match(body_key, head_key) -> bool:
    if body_key is None or head_key is None:
        return False
    if body_key[0] != head_key[0]:
        return False
    if body_key[0] == "isa":
        return body_key[1] is None or head_key[1] is None or \
            body_key[1] == head_key[1]
    return body_key == head_key


def _rule_deps(rule: FlRule):
    """Yield (body_key, negative?) pairs for a rule."""
    for lit in rule.body:
        if isinstance(lit, FlNaf):
            for inner in lit.inner:
                k = _literal_key(inner)
                if k is not None:
                    yield k, True
        else:
            k = _literal_key(lit)
            if k is not None:
                yield k, False


def stratify(kb: KnowledgeBase) -> Stratification:
    """Assign each rule a stratum; negation below use.

    Only explicit rules enter the dependency graph; the structural closure
    rules run inside every stratum.
    """
    if kb._stratification is not None:
        return kb._stratification
    rules = kb.rules
    n = len(rules)
    head_keys = [_literal_key(r.head) for r in rules]
    edges: List[List[Tuple[int, bool]]] = [[] for _ in range(n)]
    for i, r in enumerate(rules):
        for body_key, neg in _rule_deps(r):
            for j in range(n):
                if _keys_match(body_key, head_keys[j]):
                    edges[i].append((j, neg))

    # Tarjan SCC over the rule graph
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    sccs: List[List[int]] = []
    counter = itertools.count()

    def strongconnect(v):
        work = [(v, 0)]
        while work:
            node, pi = work[-1]
            if pi == 0:
                index[node] = low[node] = next(counter)
                stack.append(node)
                on_stack[node] = True
            advanced = False
            for k in range(pi, len(edges[node])):
                w = edges[node][k][0]
                if index[w] is None:
                    work[-1] = (node, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == node:
                        break
                sccs.append(comp)
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])

    for v in range(n):
        if index[v] is None:
            strongconnect(v)

    comp_of = {}
    for ci, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = ci
    # negative edge inside an SCC => no stratification
    for i in range(n):
        for j, neg in edges[i]:
            if neg and comp_of[i] == comp_of[j]:
                cycle = sorted({str(head_keys[v]) for v in sccs[comp_of[i]]})
                raise EngineError(
                    "non-stratified-program",
                    "negation cycle through " + ", ".join(cycle),
                )

    # level per rule: positive deps same level, negative deps strictly below
    level = [0] * n
    # process SCCs in reverse topological order of Tarjan output
    # (Tarjan emits SCCs in reverse topological order: dependencies first)
    for comp in sccs:
        lv = 0
        for v in comp:
            for j, neg in edges[v]:
                if comp_of[j] == comp_of[v]:
                    continue
                lv = max(lv, level[j] + (1 if neg else 0))
        for v in comp:
            level[v] = lv

    max_level = max(level, default=0)
    strata = tuple(
        tuple(rules[i] for i in range(n) if level[i] == lv)
        for lv in range(max_level + 1)
    )
    key_level: Dict[Tuple, int] = {}
    for i in range(n):
        k = head_keys[i]
        if k is not None:
            key_level[k] = max(key_level.get(k, 0), level[i])
    kb._stratification = Stratification(strata, key_level)
    return kb._stratification


# --- matching / solving ------------------------------------------------------


def _walk(t: FlTerm, b: Binding) -> FlTerm:
    while isinstance(t, FlVariable) and t.name in b:
        t = b[t.name]
    return t


def _unify_term(pattern: FlTerm, value: FlTerm, b: Binding) -> Optional[Binding]:
    pattern = _walk(pattern, b)
    if isinstance(pattern, FlVariable):
        b2 = dict(b)
        b2[pattern.name] = value
        return b2
    if isinstance(pattern, FlList) and isinstance(value, FlList):
        if len(pattern.elements) != len(value.elements):
            return None
        for pe, ve in zip(pattern.elements, value.elements):
            b = _unify_term(pe, ve, b)
            if b is None:
                return None
        return b
    return b if pattern == value else None


def _expr_term(e: FlClassExpr) -> Optional[FlTerm]:
    return e.term if isinstance(e, Atom) else None


def _solve_literal(lit: FlLit, b: Binding, store: FactStore,
                   restrict=None) -> Iterable[Binding]:
    """Enumerate bindings; ``restrict`` limits a positive literal to a
    delta set of fact tuples for semi-naive evaluation."""
    if isinstance(lit, FlIsA):
        cls = lit.cls
        if isinstance(cls, FlUnion):
            yield from _solve_literal(FlIsA(lit.obj, cls.a), b, store, restrict)
            for bb in _solve_literal(FlIsA(lit.obj, cls.b), b, store, restrict):
                yield bb
            return
        if isinstance(cls, FlIntersection):
            for b1 in _solve_literal(FlIsA(lit.obj, cls.a), b, store, restrict):
                yield from _solve_literal(FlIsA(lit.obj, cls.b), b1, store)
            return
        if isinstance(cls, FlDifference):
            for b1 in _solve_literal(FlIsA(lit.obj, cls.a), b, store, restrict):
                hits = list(_solve_literal(FlIsA(lit.obj, cls.b), b1, store))
                if not hits:
                    yield b1
            return
        ct = _expr_term(cls)
        ct_w = _walk(ct, b) if ct is not None else None
        obj_w = _walk(lit.obj, b)
        if ct_w == OBJECT and not isinstance(ct_w, FlVariable):
            source = ((ind, OBJECT) for ind in store.individuals) \
                if restrict is None else restrict
            for ind, c in source:
                if c != OBJECT:
                    continue
                b1 = _unify_term(lit.obj, ind, b)
                if b1 is not None:
                    yield b1
            return
        source = store.isa if restrict is None else restrict
        for ind, c in source:
            b1 = _unify_term(lit.obj, ind, b)
            if b1 is None:
                continue
            b2 = _unify_term(ct, c, b1)
            if b2 is not None:
                yield b2
        return
    if isinstance(lit, FlSubClass):
        st = _expr_term(lit.sub)
        tt = _expr_term(lit.super)
        if st is None or tt is None:
            return
        source = store.sub if restrict is None else restrict
        for a, c in source:
            b1 = _unify_term(st, a, b)
            if b1 is None:
                continue
            b2 = _unify_term(tt, c, b1)
            if b2 is not None:
                yield b2
        return
    if isinstance(lit, FlAttrValue):
        source = store.attr if restrict is None else restrict
        for s, p, v in source:
            b1 = _unify_term(lit.obj, s, b)
            if b1 is None:
                continue
            b2 = _unify_term(lit.prop, p, b1)
            if b2 is None:
                continue
            b3 = _unify_term(lit.value, v, b2)
            if b3 is not None:
                yield b3
        return
    if isinstance(lit, FlPred):
        source = store.pred.get(lit.name, set()) if restrict is None else restrict
        for args in source:
            if len(args) != len(lit.args):
                continue
            b1: Optional[Binding] = b
            for pat, val in zip(lit.args, args):
                b1 = _unify_term(pat, val, b1)
                if b1 is None:
                    break
            if b1 is not None:
                yield b1
        return
    if isinstance(lit, FlNaf):
        for v in literal_vars(lit):
            if _walk(FlVariable(v), b) == FlVariable(v) or \
                    isinstance(_walk(FlVariable(v), b), FlVariable):
                raise EngineError("unsafe-goal",
                                  f"unbound variable ?{v} under negation")
        if not any(True for _ in _solve_conj(list(lit.inner), b, store)):
            yield b
        return
    if isinstance(lit, FlNeq):
        a = _walk(lit.a, b)
        c = _walk(lit.b, b)
        if isinstance(a, FlVariable) or isinstance(c, FlVariable):
            raise EngineError("unsafe-goal", "unbound variable in disequality")
        if a != c:
            yield b
        return
    if isinstance(lit, FlMember):
        coll = _walk(lit.collection, b)
        if not isinstance(coll, FlList):
            return
        for e in coll.elements:
            b1 = _unify_term(lit.item, e, b)
            if b1 is not None:
                yield b1
        return
    if isinstance(lit, FlFormat):
        yield b
        return
    raise EngineError("unsupported-literal",
                      f"cannot evaluate {print_literal(lit)}")


def _solve_conj(literals: Sequence[FlLit], b: Binding, store: FactStore,
                delta_at: Optional[int] = None, delta=None) -> Iterable[Binding]:
    """Left-to-right join; negation and builtins are deferred until their
    variables are bound."""
    # order: positives in place, naf/builtins floated right only if unbound
    def rec(i: int, b: Binding, pending: List[FlLit]):
        if i == len(literals):
            # flush pending guards
            if pending:
                lit = pending[0]
                for b1 in _solve_literal(lit, b, store):
                    yield from rec(i, b1, pending[1:])
                return
            yield b
            return
        lit = literals[i]
        if isinstance(lit, (FlNaf, FlNeq)):
            needed = literal_vars(lit)
            bound = {v for v in needed
                     if not isinstance(_walk(FlVariable(v), b), FlVariable)}
            if needed - bound:
                yield from rec(i + 1, b, pending + [lit])
                return
        restrict = delta if delta_at == i else None
        for b1 in _solve_literal(lit, b, store, restrict):
            yield from rec(i + 1, b1, pending)
    yield from rec(0, b, [])


# --- saturation --------------------------------------------------------------


def _fact_tuple(lit: FlLit, b: Binding):
    """Instantiate a rule head into a (family, tuple) fact."""
    def g(t: FlTerm) -> FlTerm:
        t = _walk(t, b)
        if isinstance(t, FlVariable):
            raise EngineError("non-range-restricted",
                              f"unbound head variable ?{t.name}")
        return t
    if isinstance(lit, FlIsA):
        ct = _expr_term(lit.cls)
        if ct is None:
            raise EngineError("unsupported-rule",
                              "compound class expression in rule head")
        return ("isa", (g(lit.obj), g(ct)))
    if isinstance(lit, FlSubClass):
        st, tt = _expr_term(lit.sub), _expr_term(lit.super)
        if st is None or tt is None:
            raise EngineError("unsupported-rule",
                              "compound class expression in rule head")
        return ("sub", (g(st), g(tt)))
    if isinstance(lit, FlAttrValue):
        return ("attr", (g(lit.obj), g(lit.prop), g(lit.value)))
    if isinstance(lit, FlPred):
        return ("pred", (lit.name,) + tuple(g(a) for a in lit.args))
    raise EngineError("unsupported-rule", f"bad head {print_literal(lit)}")


def _add_fact(store: FactStore, family: str, data) -> bool:
    if family == "isa":
        if data in store.isa:
            return False
        store.isa.add(data)
        return True
    if family == "sub":
        if data in store.sub:
            return False
        store.sub.add(data)
        return True
    if family == "attr":
        if data in store.attr:
            return False
        store.attr.add(data)
        return True
    if family == "pred":
        return store.add_pred(data[0], tuple(data[1:]))
    raise AssertionError(family)


def _collect_individuals(store: FactStore) -> Set[FlTerm]:
    out: Set[FlTerm] = set()
    for ind, _cls in store.isa:
        out.add(ind)
    for s, _p, v in store.attr:
        out.add(s)
        out.add(v)
    for args in store.pred.get("oneOf", set()):
        if len(args) == 2 and isinstance(args[1], FlList):
            out.update(args[1].elements)
    return out


def _structural_closure(store: FactStore) -> List[Tuple[str, tuple]]:
    """Apply the built-in closure rules to a fixpoint; returns new facts."""
    added: List[Tuple[str, tuple]] = []
    changed = True
    while changed:
        changed = False
        store.individuals |= _collect_individuals(store)
        for ind in list(store.individuals):
            t = (ind, OBJECT)
            if t not in store.isa:
                store.isa.add(t)
                added.append(("isa", t))
                changed = True
        # sub transitivity
        by_sub: Dict[FlTerm, Set[FlTerm]] = {}
        for a, c in store.sub:
            by_sub.setdefault(a, set()).add(c)
        new_sub = []
        for a, c in store.sub:
            for d in by_sub.get(c, ()):
                if (a, d) not in store.sub:
                    new_sub.append((a, d))
        for t in new_sub:
            if t not in store.sub:
                store.sub.add(t)
                added.append(("sub", t))
                changed = True
        # isa inheritance along sub
        new_isa = []
        for ind, c in store.isa:
            for d in by_sub.get(c, ()):
                if (ind, d) not in store.isa:
                    new_isa.append((ind, d))
        for t in new_isa:
            if t not in store.isa:
                store.isa.add(t)
                added.append(("isa", t))
                changed = True
    return added


def saturate(kb: KnowledgeBase) -> FactStore:
    """Compute the least fixpoint stratum by stratum."""
    strat = stratify(kb)
    store = FactStore()
    for f in kb.base_facts:
        family, data = _fact_tuple(f, {})
        _add_fact(store, family, data)
    _structural_closure(store)
    for stratum in strat.strata:
        delta: Optional[Set] = None  # None means first pass: use full store
        while True:
            new_facts: Set[Tuple[str, tuple]] = set()
            for rule in stratum:
                body = list(rule.body)
                positions = [i for i, l in enumerate(body)
                             if not isinstance(l, (FlNaf, FlNeq, FlFormat,
                                                   FlMember))]
                if delta is None:
                    passes = [(None, None)]
                else:
                    passes = []
                    for i in positions:
                        d = _delta_for(body[i], delta)
                        if d:
                            passes.append((i, d))
                for pos, d in passes:
                    for b in _solve_conj(body, {}, store, delta_at=pos, delta=d):
                        family, data = _fact_tuple(rule.head, b)
                        if not _fact_present(store, family, data):
                            new_facts.add((family, data))
            applied = []
            for family, data in new_facts:
                if _add_fact(store, family, data):
                    applied.append((family, data))
            applied.extend(_structural_closure(store))
            if not applied and delta is not None:
                break
            if delta is None and not applied:
                # nothing new beyond base facts: still need one delta round?
                break
            delta = set()
            for family, data in applied:
                delta.add((family, data))
            if not delta:
                break
    kb._store = store
    return store


def _fact_present(store: FactStore, family: str, data) -> bool:
    if family == "isa":
        return data in store.isa
    if family == "sub":
        return data in store.sub
    if family == "attr":
        return data in store.attr
    return tuple(data[1:]) in store.pred.get(data[0], set())


def _delta_for(lit: FlLit, delta: Set[Tuple[str, tuple]]):
    """Project the delta set onto the shape a literal enumerates."""
    if isinstance(lit, FlIsA):
        return [d for f, d in delta if f == "isa"]
    if isinstance(lit, FlSubClass):
        return [d for f, d in delta if f == "sub"]
    if isinstance(lit, FlAttrValue):
        return [d for f, d in delta if f == "attr"]
    if isinstance(lit, FlPred):
        return [tuple(d[1:]) for f, d in delta
                if f == "pred" and d[0] == lit.name]
    return []


# --- queries -----------------------------------------------------------------


def query_goal(kb: KnowledgeBase, goal) -> List[Binding]:
    """All substitutions satisfying a literal or conjunction of literals."""
    literals = list(goal) if isinstance(goal, (list, tuple)) else [goal]
    store = kb.store
    # goal safety: naf vars must be bound by earlier positive literals
    bound: Set[str] = set()
    for lit in literals:
        if isinstance(lit, (FlNaf, FlNeq)):
            if not literal_vars(lit) <= bound:
                raise EngineError("unsafe-goal",
                                  "unbound variable under negation in goal")
        else:
            bound |= literal_vars(lit)
    seen = set()
    out: List[Binding] = []
    goal_vars: Set[str] = set()
    for lit in literals:
        goal_vars |= literal_vars(lit)
    for b in _solve_conj(literals, {}, store):
        resolved = {v: _walk(FlVariable(v), b) for v in goal_vars}
        key = tuple(sorted((v, print_term(t)) for v, t in resolved.items()))
        if key not in seen:
            seen.add(key)
            out.append(resolved)
    return out


def collect_set(kb: KnowledgeBase, template_var: str, goal) -> List[FlTerm]:
    """Deduplicated values of one variable over all solutions, sorted by
    printed form."""
    literals = list(goal) if isinstance(goal, (list, tuple)) else [goal]
    all_vars: Set[str] = set()
    for lit in literals:
        all_vars |= literal_vars(lit)
    if template_var not in all_vars:
        raise EngineError("unsafe-goal",
                          f"?{template_var} does not occur in the goal")
    values = {}
    for b in query_goal(kb, literals):
        t = b[template_var]
        values[print_term(t)] = t
    return [values[k] for k in sorted(values)]


# --- constraint checking -----------------------------------------------------


def _fmt(template: str, args) -> str:
    out = template
    for a in args:
        out = out.replace("~w", print_term(a) if isinstance(a, FlTerm) else str(a), 1)
    return out


def _sorted_terms(pairs):
    return sorted(pairs, key=lambda t: tuple(print_term(x) if isinstance(x, FlTerm)
                                             else str(x) for x in t))


def run_constraint_checks(kb: KnowledgeBase,
                          check_min_cardinality: bool = False
                          ) -> List[ConstraintViolation]:
    store = kb.store
    out: List[ConstraintViolation] = []

    def members(cls_term: FlTerm) -> List[FlTerm]:
        if cls_term == OBJECT:
            pool = store.individuals
        else:
            pool = {i for i, c in store.isa if c == cls_term}
        return sorted(pool, key=print_term)

    def values_of(x: FlTerm, p: FlTerm) -> List[FlTerm]:
        return sorted({v for s, q, v in store.attr if s == x and q == p},
                      key=print_term)

    # disjointness
    for c1, c2 in _sorted_terms(store.pred.get("disjoint_classes", set())):
        both = [x for x in members(c1) if (x, c2) in store.isa or c2 == OBJECT]
        for x in both:
            out.append(ConstraintViolation(
                "check_disjoint_constraints", _fmt(DISJOINT_MSG, (c1, c2)),
                ((("X", print_term(x)),),),
            ))
    # enumerations
    for args in _sorted_terms(store.pred.get("oneOf", set())):
        cls_term, lst = args
        if not isinstance(lst, FlList):
            continue
        allowed = set(lst.elements)
        for x in members(cls_term):
            if x not in allowed:
                out.append(ConstraintViolation(
                    "check_oneOf_constraints", _fmt(ONEOF_MSG, (x, cls_term)),
                    ((("X", print_term(x)),),),
                ))
    # existential value requirements
    for cls_term, p, filler in _sorted_terms(
            store.pred.get("someValuesFrom", set())):
        for x in members(cls_term):
            if not any((v, filler) in store.isa or filler == OBJECT
                       for v in values_of(x, p)):
                out.append(ConstraintViolation(
                    "check_someValuesFrom_constraints",
                    _fmt(SOMEVALUES_MSG, (x, cls_term, x, p, filler)),
                    ((("O", print_term(x)),),),
                ))
    # required specific values
    for cls_term, p, value in _sorted_terms(store.pred.get("hasValue", set())):
        for x in members(cls_term):
            if (x, p, value) not in store.attr:
                out.append(ConstraintViolation(
                    "check_hasValue_constraints",
                    _fmt(HASVALUE_MSG, (x, p, value)),
                    ((("O", print_term(x)),),),
                ))
    # signatures: cardinality bounds and range
    for sig in kb.signatures:
        cls_term = _expr_term(sig.cls)
        rng_term = _expr_term(sig.range)
        if cls_term is None or rng_term is None:
            continue
        for x in members(cls_term):
            vals = values_of(x, sig.prop)
            if sig.card is not None:
                low, high = sig.card
                n = len(vals)
                high_txt = "*" if high is None else high
                if high is not None and n > high:
                    out.append(ConstraintViolation(
                        "check_cardinality_constraints",
                        _fmt(CARDINALITY_MSG, (x, sig.prop, n, low, high_txt)),
                        ((("O", print_term(x)),),),
                    ))
                if check_min_cardinality and n < low:
                    out.append(ConstraintViolation(
                        "check_cardinality_constraints",
                        _fmt(CARDINALITY_MSG, (x, sig.prop, n, low, high_txt)),
                        ((("O", print_term(x)),),),
                    ))
            if rng_term != OBJECT:
                for v in vals:
                    if (v, rng_term) not in store.isa:
                        out.append(ConstraintViolation(
                            "check_cardinality_constraints",
                            _fmt(RANGE_MSG, (x, sig.prop, v, rng_term)),
                            ((("O", print_term(x)),),),
                        ))
    # inverse functionality without a declared inverse
    for (p,) in _sorted_terms(store.pred.get("inverseFunctional", set())):
        by_value: Dict[FlTerm, List[FlTerm]] = {}
        for s, q, v in store.attr:
            if q == p:
                by_value.setdefault(v, []).append(s)
        for v in sorted(by_value, key=print_term):
            subjects = sorted(set(by_value[v]), key=print_term)
            if len(subjects) > 1:
                out.append(ConstraintViolation(
                    "check_inverseFunctional_constraints",
                    _fmt(INVFUNC_MSG, (p, subjects[0], subjects[1], v)),
                    tuple((("X", print_term(s)),) for s in subjects),
                ))
    return out


# --- updates -----------------------------------------------------------------


def insert_fact(kb: KnowledgeBase, fact_lit: FlLit) -> KnowledgeBase:
    """Add one ground fact and re-saturate; duplicate inserts are no-ops."""
    if literal_vars(fact_lit):
        raise EngineError("non-ground-insert",
                          f"fact is not ground: {print_literal(fact_lit)}")
    if isinstance(fact_lit, FlSignature):
        kb.signatures.append(fact_lit)
    elif isinstance(fact_lit, FlEquiv):
        kb.equiv_docs.append(fact_lit)
    elif isinstance(fact_lit, (FlIsA, FlSubClass, FlAttrValue, FlPred)):
        if fact_lit not in kb.base_facts:
            kb.base_facts.append(fact_lit)
    else:
        raise EngineError("non-ground-insert",
                          f"not an insertable fact: {print_literal(fact_lit)}")
    kb.invalidate()
    return kb
