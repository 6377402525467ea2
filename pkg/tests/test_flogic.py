import random

import pytest

from owlfl.flogic import (
    Atom, FlAttrValue, FlDifference, FlEquiv, FlIntersection, FlIsA, FlList,
    FlLiteralTerm, FlNaf, FlNeq, FlPred, FlProgram, FlRule, FlSignature,
    FlSubClass, FlSymbol, FlUnion, FlVariable, atom, fact, left_assoc,
    parse_program, print_program, print_rule,
)


def sym(n, **kw):
    return FlSymbol(n, **kw)


def roundtrip(program):
    text = print_program(program)
    parsed, diags = parse_program(text, prefixes=program.prefixes)
    assert not diags, [d.message for d in diags]
    assert parsed == program, text
    return text


# --- printing ----------------------------------------------------------------


def test_print_subclass_fact():
    p = FlProgram((fact(FlSubClass(atom("Wine"), atom("food:PotableLiquid"))),))
    assert print_program(p) == "Wine::food:PotableLiquid.\n"


def test_print_rule_canonical_spacing():
    r = FlRule(
        FlIsA(FlVariable("Y"), atom("Winery")),
        (FlIsA(FlVariable("X"), atom("Wine")),
         FlAttrValue(FlVariable("X"), sym("hasMaker"), FlVariable("Y"))),
    )
    assert print_rule(r) == \
        "?Y:Winery :- ?X:Wine, ?X[hasMaker -> ?Y]."


def test_print_signature_forms():
    assert print_rule(fact(FlSignature(
        atom("Person"), sym("hasParent"), atom("_object"), card=(0, 2)))) == \
        "Person[hasParent{0:2} *=> _object]."
    assert print_rule(fact(FlSignature(
        atom("Country"), sym("locatedIn"), atom("Region")))) == \
        "Country[locatedIn *=> Region]."
    assert print_rule(fact(FlSignature(
        atom("Wine"), sym("hasMaker"), atom("Winery"),
        via=atom("_object")))) == "Wine::_object[hasMaker *=> Winery]."


def test_print_unbounded_cardinality():
    assert print_rule(fact(FlSignature(
        atom("C"), sym("p"), atom("_object"), card=(2, None)))) == \
        "C[p{2:*} *=> _object]."


def test_print_class_expressions():
    assert print_rule(fact(FlEquiv(
        atom("Fruit"), FlUnion(atom("SweetFruit"), atom("NonSweetFruit"))))) \
        == "Fruit :=: (SweetFruit ; NonSweetFruit)."
    assert print_rule(fact(FlEquiv(
        atom("WhiteBurgundy"),
        FlIntersection(atom("Burgundy"), atom("WhiteWine"))))) == \
        "WhiteBurgundy :=: (Burgundy , WhiteWine)."
    assert print_rule(fact(FlEquiv(
        atom("NonConsumableThing"),
        FlDifference(atom("_object"), atom("ConsumableThing"))))) == \
        "NonConsumableThing :=: (_object - ConsumableThing)."


def test_print_quoted_symbols_and_lists():
    assert print_rule(fact(FlPred("TransitiveProperty",
                                  (sym("locatedIn"),), quoted=True))) == \
        "'TransitiveProperty'(locatedIn)."
    assert print_rule(fact(FlPred("oneOf", (
        sym("WineColor"),
        FlList((sym("White"), sym("Rose"), sym("Red"))))))) == \
        "oneOf(WineColor, [White,Rose,Red])."


def test_print_naf_styles():
    r = FlRule(
        FlIsA(FlVariable("X"), atom("A")),
        (FlIsA(FlVariable("X"), atom("D")),
         FlNaf((FlIsA(FlVariable("X"), atom("B")),))),
    )
    assert print_rule(r) == "?X:A :- ?X:D, \\naf ?X:B."


def test_print_merges_ground_membership_with_attr():
    p = FlProgram((
        fact(FlIsA(sym("PinotGrape"), atom("WineGrape"))),
        fact(FlAttrValue(sym("PinotGrape"), sym("hasColor"),
                         sym("White", quoted=True))),
    ))
    assert print_program(p) == "PinotGrape:WineGrape[hasColor -> 'White'].\n"


def test_print_prefix_directives_first():
    p = FlProgram(
        (fact(FlSubClass(atom("Wine"), atom("food:PotableLiquid"))),),
        prefixes={"": "http://example.org/wine",
                  "food": "http://example.org/food"},
    )
    text = print_program(p)
    lines = text.splitlines()
    assert lines[0] == ":- base('http://example.org/wine')."
    assert lines[1] == ":- prefix(food, 'http://example.org/food')."


def test_printer_determinism():
    p = FlProgram((fact(FlIsA(sym("a"), atom("C"))),))
    assert print_program(p) == print_program(p)


# --- parsing -----------------------------------------------------------------


def test_parse_subclass_fact():
    p, diags = parse_program("Wine::food:PotableLiquid.")
    assert not diags
    assert p.rules == (fact(FlSubClass(atom("Wine"),
                                       atom("food:PotableLiquid"))),)


def test_parse_accepts_whitespace_variation():
    a, _ = parse_program("?X[hasWineDescriptor ->?Y] :- ?X[hasColor ->?Y].")
    b, _ = parse_program("?X[hasWineDescriptor -> ?Y]:-?X[hasColor -> ?Y].")
    assert a == b


def test_parse_accepts_en_dash_difference():
    a, _ = parse_program("N :=: (_object – C).")
    b, _ = parse_program("N :=: (_object - C).")
    assert a == b


def test_parse_truncated_statement_reports_error():
    p, diags = parse_program("Wine::")
    assert p.rules == ()
    assert any(d.severity == "error" for d in diags)


def test_parse_recovers_after_error():
    p, diags = parse_program("Wine:: .\na:C.")
    assert any(d.severity == "error" for d in diags)
    assert fact(FlIsA(sym("a"), atom("C"))) in p.rules


def test_parse_splits_combined_frame():
    p, diags = parse_program("PinotGrape:WineGrape[hasColor -> 'White'].")
    assert not diags
    assert p.rules == (
        fact(FlIsA(sym("PinotGrape"), atom("WineGrape"))),
        fact(FlAttrValue(sym("PinotGrape"), sym("hasColor"),
                         sym("White", quoted=True))),
    )


def test_parse_numeric_literal():
    p, _ = parse_program("a[age -> 42].")
    assert p.rules[0].head.value == FlLiteralTerm("42", "_integer")


def test_parse_directives_restore_prefixes():
    text = (":- base('http://example.org/wine').\n"
            ":- prefix(food, 'http://example.org/food').\n"
            "Wine::food:PotableLiquid.\n")
    p, diags = parse_program(text)
    assert not diags
    assert p.prefixes == {"": "http://example.org/wine",
                          "food": "http://example.org/food"}


def test_naf_may_not_wrap_naf():
    with pytest.raises(ValueError):
        FlNaf((FlNaf((FlIsA(sym("a"), atom("C")),)),))


# --- round trips -------------------------------------------------------------


def test_round_trip_representative_program():
    x, y, pv, z = (FlVariable(n) for n in "XYPZ")
    rules = (
        fact(FlSubClass(atom("Wine"), atom("food:PotableLiquid"))),
        fact(FlSignature(atom("Wine"), sym("hasMaker"), atom("Winery"),
                         via=atom("_object"))),
        FlRule(FlIsA(y, atom("Winery")),
               (FlIsA(x, atom("Wine")),
                FlAttrValue(x, sym("hasMaker"), y))),
        fact(FlEquiv(atom("Fruit"),
                     FlUnion(atom("SweetFruit"), atom("NonSweetFruit")))),
        fact(FlPred("disjoint_classes", (sym("Male"), sym("Female")))),
        fact(FlPred("oneOf", (sym("WineColor"),
                              FlList((sym("White"), sym("Rose"),
                                      sym("Red")))))),
        fact(FlSignature(atom("Person"), sym("hasParent"), atom("_object"),
                         card=(0, 2))),
        fact(FlPred("TransitiveProperty", (sym("locatedIn"),), quoted=True)),
        FlRule(FlAttrValue(x, pv, z),
               (FlPred("TransitiveProperty", (pv,), quoted=True),
                FlAttrValue(x, pv, y), FlAttrValue(y, pv, z))),
        FlRule(FlIsA(x, atom("SweetFruit")),
               (FlIsA(x, atom("Fruit")),
                FlNaf((FlIsA(x, atom("NonSweetFruit")),)))),
        FlRule(FlIsA(x, atom("N")),
               (FlIsA(x, atom("_object")),
                FlNaf((FlIsA(x, atom("C")),), style="not"))),
        fact(FlIsA(sym("CabernetSauvignonGrape"), atom("WineGrape"))),
        fact(FlAttrValue(sym("CabernetSauvignonGrape"), sym("hasColor"),
                         sym("Red", quoted=True))),
    )
    roundtrip(FlProgram(rules, prefixes={"": "http://example.org/wine",
                                         "food": "http://example.org/food"}))


def test_round_trip_neq_and_member():
    x, y = FlVariable("X"), FlVariable("Y")
    rules = (
        FlRule(FlPred("clash", (x, y)),
               (FlAttrValue(x, sym("p"), FlVariable("V")),
                FlAttrValue(y, sym("p"), FlVariable("V")),
                FlNeq(x, y))),
    )
    roundtrip(FlProgram(rules))


def _random_program(rng):
    classes = [f"C{i}" for i in range(4)]
    inds = [f"i{i}" for i in range(4)]
    props = ["p", "q"]
    rules = []
    for _ in range(rng.randrange(1, 8)):
        kind = rng.randrange(4)
        if kind == 0:
            rules.append(fact(FlIsA(sym(rng.choice(inds)),
                                    atom(rng.choice(classes)))))
        elif kind == 1:
            rules.append(fact(FlSubClass(atom(rng.choice(classes)),
                                         atom(rng.choice(classes)))))
        elif kind == 2:
            rules.append(fact(FlAttrValue(sym(rng.choice(inds)),
                                          sym(rng.choice(props)),
                                          sym(rng.choice(inds)))))
        else:
            x = FlVariable("X")
            rules.append(FlRule(FlIsA(x, atom(rng.choice(classes))),
                                (FlIsA(x, atom(rng.choice(classes))),)))
    return FlProgram(tuple(rules))


def test_round_trip_randomized():
    rng = random.Random(7)
    for _ in range(50):
        roundtrip(_random_program(rng))


def test_left_assoc_flattening():
    e = left_assoc(FlUnion, [atom("A"), atom("B"), atom("C")])
    assert e == FlUnion(FlUnion(atom("A"), atom("B")), atom("C"))
