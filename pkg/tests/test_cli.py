import pytest

from owlfl.cli import main

OWL_DOC = """<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
         xmlns:owl="http://www.w3.org/2002/07/owl#"
         xmlns="http://example.org/wine#"
         xml:base="http://example.org/wine">
  <owl:Class rdf:about="#RedWine">
    <rdfs:subClassOf rdf:resource="#Wine"/>
  </owl:Class>
  <owl:Class rdf:about="#Female">
    <owl:disjointWith rdf:resource="#Male"/>
  </owl:Class>
</rdf:RDF>
"""

FLR_KB = """RedWine::Wine.
Wine::PotableLiquid.
PotableLiquid::ConsumableThing.
merlot7:RedWine.
chablis2:WhiteWine.
WhiteWine::Wine.
"""


@pytest.fixture
def owl_file(tmp_path):
    p = tmp_path / "kb.owl"
    p.write_text(OWL_DOC)
    return str(p)


@pytest.fixture
def flr_file(tmp_path):
    p = tmp_path / "kb.flr"
    p.write_text(FLR_KB)
    return str(p)


# --- translate ---------------------------------------------------------------


def test_translate_owl_to_flora(owl_file, tmp_path, capsys):
    out = str(tmp_path / "out.flr")
    assert main(["translate", "--from", "owl", "--to", "flora",
                 owl_file, "-o", out]) == 0
    text = open(out).read()
    assert "RedWine::Wine." in text
    assert "disjoint_classes(Male, Female)." in text
    assert "check_disjoint_constraints" in text


def test_translate_flora_to_owl(flr_file, tmp_path):
    out = str(tmp_path / "out.owl")
    assert main(["translate", "--from", "flora", "--to", "owl",
                 flr_file, "-o", out]) == 0
    text = open(out).read()
    assert "rdfs:subClassOf" in text and "merlot7" in text


def test_translate_round_trip_through_files(owl_file, tmp_path):
    mid = str(tmp_path / "mid.flr")
    back = str(tmp_path / "back.owl")
    assert main(["translate", "--from", "owl", "--to", "flora",
                 owl_file, "-o", mid]) == 0
    assert main(["translate", "--from", "flora", "--to", "owl",
                 mid, "-o", back]) == 0
    text = open(back).read()
    assert 'rdf:resource="#Wine"' in text
    assert "owl:disjointWith" in text


def test_translate_existential_subsumer_exits_2(tmp_path, capsys):
    src = tmp_path / "bad.owl"
    src.write_text(OWL_DOC.replace(
        '<rdfs:subClassOf rdf:resource="#Wine"/>',
        '<rdfs:subClassOf><owl:Restriction>'
        '<owl:onProperty rdf:resource="#hasMaker"/>'
        '<owl:someValuesFrom rdf:resource="#Winery"/>'
        '</owl:Restriction></rdfs:subClassOf>').replace(
        'rdf:about="#RedWine"', 'rdf:about="#RedWine2"').replace(
        '<owl:Class rdf:about="#RedWine2">',
        '<owl:Class rdf:about="#RedWine2">'
        '<rdfs:subClassOf rdf:resource="#Wine"/>'))
    # flip the subclass axiom around: complex sub, named super
    src.write_text("""<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
         xmlns:owl="http://www.w3.org/2002/07/owl#"
         xmlns="http://example.org/wine#"
         xml:base="http://example.org/wine">
  <owl:Class rdf:about="#HasAnyMaker">
    <owl:equivalentClass><owl:Restriction>
      <owl:onProperty rdf:resource="#hasMaker"/>
      <owl:someValuesFrom rdf:resource="#Winery"/>
    </owl:Restriction></owl:equivalentClass>
  </owl:Class>
</rdf:RDF>
""")
    out = str(tmp_path / "out.flr")
    code = main(["translate", "--from", "owl", "--to", "flora",
                 str(src), "-o", out])
    err = capsys.readouterr().err
    assert code == 2
    assert "untranslatable-existential" in err


def test_translate_empty_program(tmp_path):
    src = tmp_path / "empty.flr"
    src.write_text("")
    out = str(tmp_path / "out.owl")
    assert main(["translate", "--from", "flora", "--to", "owl",
                 str(src), "-o", out]) == 0


def test_translate_missing_file_exits_2(tmp_path, capsys):
    assert main(["translate", "--from", "flora", "--to", "owl",
                 str(tmp_path / "nope.flr"),
                 "-o", str(tmp_path / "o.owl")]) == 2


# --- check -------------------------------------------------------------------


def test_check_clean_kb(flr_file, capsys):
    assert main(["check", flr_file]) == 0
    assert capsys.readouterr().out == ""


def test_check_violation_printed_verbatim(tmp_path, capsys):
    kb = tmp_path / "v.flr"
    kb.write_text("disjoint_classes(Male, Female).\n"
                  "alex:Male.\nalex:Female.\n")
    assert main(["check", str(kb)]) == 1
    out = capsys.readouterr().out
    assert out == ("[OWL2FLORA] disjointWith constraint violation: "
                   "Male disjoint with Female\n")


def test_check_cardinality_and_min_flag(tmp_path, capsys):
    kb = tmp_path / "c.flr"
    kb.write_text("Wine[hasMaker{1:*} *=> _object].\nw:Wine.\n")
    assert main(["check", str(kb)]) == 0
    assert main(["check", "--min-cardinality", str(kb)]) == 1


def test_check_merges_owl_and_flora_inputs(owl_file, tmp_path, capsys):
    abox = tmp_path / "abox.flr"
    abox.write_text("alex:Male.\nalex:Female.\n")
    assert main(["check", owl_file, str(abox)]) == 1


def test_check_non_stratified_exits_2(tmp_path, capsys):
    kb = tmp_path / "ns.flr"
    kb.write_text("a:C.\n"
                  "?X:A :- ?X:C, \\naf ?X:B.\n"
                  "?X:B :- ?X:C, \\naf ?X:A.\n")
    assert main(["check", str(kb)]) == 2
    assert "non-stratified-program" in capsys.readouterr().err


def test_check_syntax_error_exits_2(tmp_path, capsys):
    kb = tmp_path / "bad.flr"
    kb.write_text("this is :::: not flora\n")
    assert main(["check", str(kb)]) == 2


# --- query -------------------------------------------------------------------


def test_query_is(flr_file, capsys):
    assert main(["query", flr_file, "is", "merlot7", "Wine"]) == 0
    assert capsys.readouterr().out == "true\n"
    assert main(["query", flr_file, "is", "merlot7", "WhiteWine"]) == 0
    assert capsys.readouterr().out == "false\n"


def test_query_instances_sorted(flr_file, capsys):
    assert main(["query", flr_file, "instances", "Wine"]) == 0
    assert capsys.readouterr().out == "chablis2\nmerlot7\n"


def test_query_classes_of(flr_file, capsys):
    assert main(["query", flr_file, "classes-of", "merlot7"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["ConsumableThing", "PotableLiquid", "RedWine",
                     "Wine", "_object"]


def test_query_subclass(flr_file, capsys):
    assert main(["query", flr_file, "subclass", "RedWine",
                 "ConsumableThing"]) == 0
    assert capsys.readouterr().out == "true\n"


def test_query_superclasses_all_vs_most_specific(flr_file, capsys):
    assert main(["query", flr_file, "superclasses", "RedWine"]) == 0
    assert capsys.readouterr().out.splitlines() == \
        ["ConsumableThing", "PotableLiquid", "Wine"]
    assert main(["query", flr_file, "superclasses", "RedWine",
                 "--most-specific"]) == 0
    assert capsys.readouterr().out == "Wine\n"


def test_query_subclasses_most_general(flr_file, capsys):
    assert main(["query", flr_file, "subclasses", "ConsumableThing",
                 "--most-general"]) == 0
    assert capsys.readouterr().out == "PotableLiquid\n"


def test_query_check_verb(flr_file, tmp_path, capsys):
    assert main(["query", flr_file, "check"]) == 0
    assert capsys.readouterr().out == "consistent\n"
    bad = tmp_path / "bad.flr"
    bad.write_text("disjoint_classes(Male, Female).\na:Male.\na:Female.\n")
    assert main(["query", str(bad), "check"]) == 1
    assert capsys.readouterr().out == "inconsistent\n"


def test_query_multiple_kb_files(flr_file, tmp_path, capsys):
    extra = tmp_path / "extra.flr"
    extra.write_text("pinot3:RedWine.\n")
    assert main(["query", flr_file, str(extra), "is", "pinot3", "Wine"]) == 0
    assert capsys.readouterr().out == "true\n"


def test_query_unknown_name_warns_and_exits_0(flr_file, capsys):
    assert main(["query", flr_file, "is", "merlot7", "Beer"]) == 0
    captured = capsys.readouterr()
    assert captured.out == "false\n"
    assert "unknown-name" in captured.err
    assert main(["query", flr_file, "instances", "Beer"]) == 0
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "unknown-name" in captured.err


def test_query_missing_verb_exits_2(flr_file, capsys):
    assert main(["query", flr_file]) == 2
    assert "bad-arguments" in capsys.readouterr().err


def test_query_wrong_arity_exits_2(flr_file, capsys):
    assert main(["query", flr_file, "is", "merlot7"]) == 2


# --- insert ------------------------------------------------------------------


def test_insert_reports_derived_fact_count(flr_file, capsys):
    assert main(["insert", flr_file, "gamay1:RedWine"]) == 0
    # gamay1:RedWine plus inherited Wine/PotableLiquid/ConsumableThing
    # and _object membership
    assert capsys.readouterr().out == "5\n"


def test_insert_duplicate_counts_zero(flr_file, capsys):
    assert main(["insert", flr_file, "merlot7:RedWine."]) == 0
    assert capsys.readouterr().out == "0\n"


def test_insert_non_ground_exits_2(flr_file, capsys):
    assert main(["insert", flr_file, "?X:RedWine"]) == 2
    assert "non-ground" in capsys.readouterr().err


def test_insert_rule_rejected(flr_file, capsys):
    assert main(["insert", flr_file, "?X:A :- ?X:B"]) == 2
