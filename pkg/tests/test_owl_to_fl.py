import pytest

from owlfl import owl_model as om
from owlfl.checkers import DISJOINT_MSG, ONEOF_MSG
from owlfl.flogic import (
    Atom, FlIsA, FlNaf, FlPred, FlRule, FlSignature, FlSubClass, FlSymbol,
    FlVariable, print_program, print_rule,
)
from owlfl.owl_parser import parse_document
from owlfl.owl_to_fl import (
    Context, DIRECT, REQUIRES_LLOYD_TOPOR, REQUIRES_NAF_CASES,
    TranslationOptions, UNTRANSLATABLE, lower_general_inclusion,
    translate_class_axiom, translate_ontology, translate_property_axiom,
    translate_restriction,
)

from _table1 import ROWS, normalized_set, wrap

BASE = "http://example.org/wine#"


def iri(local):
    return om.Iri(BASE + local)


def named(local):
    return om.Named(iri(local))


def statements(program):
    return [line for line in print_program(program).splitlines()
            if not line.startswith(":-")]


# --- construct-table golden rows ----------------------------------------------


@pytest.mark.parametrize("row_name,xml,expected",
                         ROWS, ids=[r[0] for r in ROWS])
def test_table1_row(row_name, xml, expected):
    doc, diags = parse_document(wrap(xml))
    assert not [d for d in diags if d.severity == "error"]
    program, _ = translate_ontology(
        doc, TranslationOptions(emit_checkers=False))
    assert normalized_set(statements(program)) == normalized_set(expected)


# --- individual operations ---------------------------------------------------


def test_all_values_from_emits_constraint_and_rule():
    r = om.Restriction(iri("hasMaker"), om.AllValuesFrom(named("Winery")))
    rules = translate_restriction(iri("Wine"), r)
    assert len(rules) == 2
    sig = rules[0].head
    assert isinstance(sig, FlSignature) and sig.via is not None
    assert not rules[0].body
    assert isinstance(rules[1].head, FlIsA) and len(rules[1].body) == 2


def test_min_and_exact_cardinality_bounds():
    low = translate_restriction(
        iri("C"), om.Restriction(iri("p"), om.MinCardinality(2)))[0].head
    assert low.card == (2, None)
    exact = translate_restriction(
        iri("C"), om.Restriction(iri("p"), om.ExactCardinality(3)))[0].head
    assert exact.card == (3, 3)


def test_disjoint_with_argument_order():
    rules, _ = translate_class_axiom(om.DisjointWith(iri("Female"),
                                                     iri("Male")))
    assert print_rule(rules[0]) == "disjoint_classes(Male, Female)."


def test_domain_pairs_with_range():
    doc = om.OntologyDocument(prefixes={"": "http://example.org/wine"})
    doc.property_axioms.extend([
        om.Domain(iri("locatedIn"), iri("Country")),
        om.Range(iri("locatedIn"), iri("Region")),
    ])
    program, diags = translate_ontology(
        doc, TranslationOptions(emit_checkers=False))
    assert statements(program) == ["Country[locatedIn *=> Region]."]
    assert not diags


def test_lone_range_uses_object_domain():
    doc = om.OntologyDocument(prefixes={"": "http://example.org/wine"})
    doc.property_axioms.append(om.Range(iri("locatedIn"), iri("Region")))
    program, _ = translate_ontology(
        doc, TranslationOptions(emit_checkers=False))
    assert statements(program) == ["_object[locatedIn *=> Region]."]


def test_domain_range_rules_option():
    doc = om.OntologyDocument(prefixes={"": "http://example.org/wine"})
    doc.property_axioms.extend([
        om.Domain(iri("locatedIn"), iri("Country")),
        om.Range(iri("locatedIn"), iri("Region")),
    ])
    program, _ = translate_ontology(
        doc, TranslationOptions(emit_checkers=False,
                                owl_domain_range_rules=True))
    texts = statements(program)
    assert "?X:Country :- ?X[locatedIn -> ?Y]." in texts
    assert "?Y:Region :- ?X[locatedIn -> ?Y]." in texts


def test_generic_transitive_rule_emitted_once():
    ctx = Context()
    r1 = translate_property_axiom(
        om.Characteristic(iri("locatedIn"), om.TRANSITIVE), ctx)
    r2 = translate_property_axiom(
        om.Characteristic(iri("adjacentTo"), om.TRANSITIVE), ctx)
    assert len(r1) == 2 and len(r2) == 1


def test_inverse_functional_without_declared_inverse():
    rules = translate_property_axiom(
        om.Characteristic(iri("producesWine"), om.INVERSE_FUNCTIONAL))
    assert print_rule(rules[0]) == "inverseFunctional(producesWine)."


def test_string_assertion_prints_quoted():
    doc = om.OntologyDocument(prefixes={"": "http://example.org/wine"})
    doc.assertions.extend([
        om.ClassAssertion(iri("CabernetSauvignonGrape"), iri("WineGrape")),
        om.PropertyAssertion(iri("CabernetSauvignonGrape"), iri("hasColor"),
                             om.OwlLiteral("Red", "_string")),
    ])
    program, _ = translate_ontology(
        doc, TranslationOptions(emit_checkers=False))
    assert statements(program) == \
        ["CabernetSauvignonGrape:WineGrape[hasColor -> 'Red']."]


# --- general inclusions ------------------------------------------------------


def test_union_on_left_is_two_horn_rules():
    rules, verdict, diags = lower_general_inclusion(
        om.UnionOf((named("C1"), named("C2"))), named("D"))
    assert verdict.kind == DIRECT and not diags
    assert [print_rule(r) for r in rules] == [
        "?X:D :- ?X:C1.",
        "?X:D :- ?X:C2.",
    ]


def test_union_on_right_is_case_split():
    rules, verdict, diags = lower_general_inclusion(
        named("D"), om.UnionOf((named("C1"), named("C2"))))
    assert verdict.kind == REQUIRES_NAF_CASES
    assert [print_rule(r) for r in rules] == [
        "?X:C1 :- ?X:D, \\naf ?X:C2.",
        "?X:C2 :- ?X:D, \\naf ?X:C1.",
    ]
    assert any(d.code == "case-split-weakening" for d in diags)


def test_union_on_right_rejected_without_case_split():
    ctx = Context(opts=TranslationOptions(case_split_rhs_disjunction=False))
    rules, verdict, diags = lower_general_inclusion(
        named("D"), om.UnionOf((named("C1"), named("C2"))), ctx)
    assert verdict.kind == UNTRANSLATABLE and not rules
    assert any(d.code == "untranslatable-disjunction" for d in diags)


def test_intersection_on_right_splits():
    rules, verdict, _ = lower_general_inclusion(
        named("D"), om.IntersectionOf((named("C1"), named("C2"))))
    assert verdict.kind == DIRECT
    assert [print_rule(r) for r in rules] == [
        "?X:C1 :- ?X:D.",
        "?X:C2 :- ?X:D.",
    ]


def test_all_values_from_on_left_lloyd_topor():
    sub = om.Restriction(iri("p"), om.AllValuesFrom(named("F")))
    rules, verdict, _ = lower_general_inclusion(sub, named("D"))
    assert verdict.kind == REQUIRES_LLOYD_TOPOR
    assert len(rules) == 2
    aux = rules[0].head
    assert isinstance(aux, FlPred) and aux.name.startswith("_lt_aux")
    # the second rule negates the auxiliary
    naf = [l for l in rules[1].body if isinstance(l, FlNaf)]
    assert naf and isinstance(naf[0].inner[0], FlPred)


def test_existential_subsumer_is_untranslatable():
    sub = om.Restriction(iri("p"), om.SomeValuesFrom(named("F")))
    rules, verdict, diags = lower_general_inclusion(sub, named("D"))
    assert verdict.kind == UNTRANSLATABLE and rules == []
    assert any(d.code == "untranslatable-existential" and
               d.severity == "error" for d in diags)


# --- checker library ---------------------------------------------------------


def test_checker_library_appended_by_default():
    doc = om.OntologyDocument(prefixes={"": "http://example.org/wine"})
    doc.class_axioms.append(om.DisjointWith(iri("Female"), iri("Male")))
    program, _ = translate_ontology(doc)
    text = print_program(program)
    assert "check_disjoint_constraints :-" in text
    assert "check_all_constraints :-" in text
    assert DISJOINT_MSG in text
    assert ONEOF_MSG in text


def test_no_silent_drops_accounting():
    doc, _ = parse_document(wrap(
        '<owl:ObjectProperty rdf:about="#locatedIn">'
        '<rdfs:domain rdf:resource="#Country"/>'
        '<rdfs:range rdf:resource="#Region"/>'
        '</owl:ObjectProperty>'
        '<owl:Class rdf:about="#Wine">'
        '<rdfs:subClassOf rdf:resource="#food:PotableLiquid"/>'
        '</owl:Class>'
    ))
    program, diags = translate_ontology(doc)
    # every source axiom is either covered by an emitted rule or diagnosed
    for ax in (doc.class_axioms + doc.property_axioms + doc.assertions):
        assert id(ax) in program.covered_axiom_ids, ax
    assert not [d for d in diags if d.severity == "error"]
