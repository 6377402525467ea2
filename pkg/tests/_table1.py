"""Shared golden corpus: one minimal OWL document per construct row, with
the expected canonical F-logic statements.

Expected texts are the canonical F-logic rendering of each construct
(ASCII `-` for set difference, bracket signature form `C::V[P *=> R]`,
statement-final periods).  Definitional equivalences additionally list their derived membership /
case-analysis rules, which are part of the translation of those constructs.
"""

HEADER = (
    '<?xml version="1.0"?>\n'
    '<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"\n'
    '         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"\n'
    '         xmlns:owl="http://www.w3.org/2002/07/owl#"\n'
    '         xmlns="http://example.org/wine#"\n'
    '         xmlns:food="http://example.org/food#"\n'
    '         xml:base="http://example.org/wine">\n'
)
FOOTER = "</rdf:RDF>\n"


def wrap(body: str) -> str:
    return HEADER + body + FOOTER


def normalize(statement: str) -> str:
    """Whitespace-insensitive canonical form of one statement."""
    return "".join(statement.split()).replace("–", "-")


def normalized_set(statements):
    return {normalize(s) for s in statements if s.strip()}


ROWS = [
    (
        "rdfs:subClassOf",
        '<owl:Class rdf:about="#Wine">'
        '<rdfs:subClassOf rdf:resource="#food:PotableLiquid"/>'
        '</owl:Class>',
        ["Wine::food:PotableLiquid."],
    ),
    (
        "owl:equivalentClass",
        '<owl:Class rdf:about="#Wine">'
        '<owl:equivalentClass rdf:resource="#Vin"/>'
        '</owl:Class>',
        [
            "Wine :=: Vin.",
            "?X:Wine :- ?X:Vin.",
            "?X:Vin :- ?X:Wine.",
            "?X::Wine :- ?X::Vin.",
            "?X::Vin :- ?X::Wine.",
        ],
    ),
    (
        "owl:unionOf",
        '<owl:Class rdf:about="#Fruit">'
        '<owl:unionOf rdf:parseType="Collection">'
        '<owl:Class rdf:about="#SweetFruit"/>'
        '<owl:Class rdf:about="#NonSweetFruit"/>'
        '</owl:unionOf></owl:Class>',
        [
            "Fruit :=: (SweetFruit ; NonSweetFruit).",
            "?X:Fruit :- ?X:SweetFruit.",
            "?X:Fruit :- ?X:NonSweetFruit.",
            "?X:SweetFruit :- ?X:Fruit, \\naf ?X:NonSweetFruit.",
            "?X:NonSweetFruit :- ?X:Fruit, \\naf ?X:SweetFruit.",
        ],
    ),
    (
        "owl:intersectionOf",
        '<owl:Class rdf:about="#WhiteBurgundy">'
        '<owl:intersectionOf rdf:parseType="Collection">'
        '<owl:Class rdf:about="#Burgundy"/>'
        '<owl:Class rdf:about="#WhiteWine"/>'
        '</owl:intersectionOf></owl:Class>',
        [
            "WhiteBurgundy :=: (Burgundy , WhiteWine).",
            "?X:WhiteBurgundy :- ?X:Burgundy, ?X:WhiteWine.",
            "?X:Burgundy :- ?X:WhiteBurgundy.",
            "?X:WhiteWine :- ?X:WhiteBurgundy.",
        ],
    ),
    (
        "owl:complementOf",
        '<owl:Class rdf:about="#NonConsumableThing">'
        '<owl:complementOf rdf:resource="#ConsumableThing"/>'
        '</owl:Class>',
        [
            "NonConsumableThing :=: (_object - ConsumableThing).",
            "?X:NonConsumableThing :- ?X:_object, \\naf ?X:ConsumableThing.",
        ],
    ),
    (
        "owl:disjointWith",
        '<owl:Class rdf:about="#Female">'
        '<owl:disjointWith rdf:resource="#Male"/>'
        '</owl:Class>',
        ["disjoint_classes(Male, Female)."],
    ),
    (
        "owl:oneOf",
        '<owl:Class rdf:about="#WineColor">'
        '<owl:oneOf rdf:parseType="Collection">'
        '<owl:Thing rdf:about="#White"/>'
        '<owl:Thing rdf:about="#Rose"/>'
        '<owl:Thing rdf:about="#Red"/>'
        '</owl:oneOf></owl:Class>',
        [
            "White:WineColor.",
            "Rose:WineColor.",
            "Red:WineColor.",
            "oneOf(WineColor, [White,Rose,Red]).",
        ],
    ),
    (
        "owl:allValuesFrom",
        '<owl:Class rdf:about="#Wine"><rdfs:subClassOf>'
        '<owl:Restriction>'
        '<owl:onProperty rdf:resource="#hasMaker"/>'
        '<owl:allValuesFrom rdf:resource="#Winery"/>'
        '</owl:Restriction>'
        '</rdfs:subClassOf></owl:Class>',
        [
            "Wine::_object[hasMaker *=> Winery].",
            "?Y:Winery :- ?X:Wine, ?X[hasMaker -> ?Y].",
        ],
    ),
    (
        "owl:someValuesFrom",
        '<owl:Class rdf:about="#Wine"><rdfs:subClassOf>'
        '<owl:Restriction>'
        '<owl:onProperty rdf:resource="#hasMaker"/>'
        '<owl:someValuesFrom rdf:resource="#Winery"/>'
        '</owl:Restriction>'
        '</rdfs:subClassOf></owl:Class>',
        ["someValuesFrom(Wine, hasMaker, Winery)."],
    ),
    (
        "owl:hasValue",
        '<owl:Class rdf:about="#Burgundy"><rdfs:subClassOf>'
        '<owl:Restriction>'
        '<owl:onProperty rdf:resource="#hasSugar"/>'
        '<owl:hasValue rdf:resource="#Dry"/>'
        '</owl:Restriction>'
        '</rdfs:subClassOf></owl:Class>',
        ["hasValue(Burgundy, hasSugar, Dry)."],
    ),
    (
        "owl:maxCardinality",
        '<owl:Class rdf:about="#Person"><rdfs:subClassOf>'
        '<owl:Restriction>'
        '<owl:onProperty rdf:resource="#hasParent"/>'
        '<owl:maxCardinality rdf:datatype='
        '"http://www.w3.org/2001/XMLSchema#nonNegativeInteger">2'
        '</owl:maxCardinality>'
        '</owl:Restriction>'
        '</rdfs:subClassOf></owl:Class>',
        ["Person[hasParent{0:2} *=> _object]."],
    ),
    (
        "rdfs:domain, rdfs:range",
        '<owl:ObjectProperty rdf:about="#locatedIn">'
        '<rdfs:domain rdf:resource="#Country"/>'
        '<rdfs:range rdf:resource="#Region"/>'
        '</owl:ObjectProperty>',
        ["Country[locatedIn *=> Region]."],
    ),
    (
        "rdfs:subPropertyOf",
        '<owl:ObjectProperty rdf:about="#hasColor">'
        '<rdfs:subPropertyOf rdf:resource="#hasWineDescriptor"/>'
        '</owl:ObjectProperty>',
        ["?X[hasWineDescriptor -> ?Y] :- ?X[hasColor -> ?Y]."],
    ),
    (
        "owl:equivalentProperty",
        '<owl:ObjectProperty rdf:about="#hasChild">'
        '<owl:equivalentProperty rdf:resource="#hasOffspring"/>'
        '</owl:ObjectProperty>',
        [
            "?X[hasChild -> ?Y] :- ?X[hasOffspring -> ?Y].",
            "?X[hasOffspring -> ?Y] :- ?X[hasChild -> ?Y].",
        ],
    ),
    (
        "owl:inverseOf",
        '<owl:ObjectProperty rdf:about="#producesWine">'
        '<owl:inverseOf rdf:resource="#hasMaker"/>'
        '</owl:ObjectProperty>',
        [
            "?X[producesWine -> ?Y] :- ?Y[hasMaker -> ?X].",
            "?X[hasMaker -> ?Y] :- ?Y[producesWine -> ?X].",
        ],
    ),
    (
        "owl:FunctionalProperty",
        '<owl:ObjectProperty rdf:about="#hasVintageYear">'
        '<rdf:type rdf:resource='
        '"http://www.w3.org/2002/07/owl#FunctionalProperty"/>'
        '</owl:ObjectProperty>',
        ["_object[hasVintageYear{1:1} *=> _object]."],
    ),
    (
        "owl:InverseFunctionalProperty",
        '<owl:ObjectProperty rdf:about="#producesWine">'
        '<rdf:type rdf:resource='
        '"http://www.w3.org/2002/07/owl#InverseFunctionalProperty"/>'
        '<owl:inverseOf rdf:resource="#hasMaker"/>'
        '</owl:ObjectProperty>',
        [
            "?X[producesWine -> ?Y] :- ?Y[hasMaker -> ?X].",
            "?X[hasMaker -> ?Y] :- ?Y[producesWine -> ?X].",
            "_object[hasMaker{1:1} *=> _object].",
        ],
    ),
    (
        "owl:TransitiveProperty",
        '<owl:ObjectProperty rdf:about="#locatedIn">'
        '<rdf:type rdf:resource='
        '"http://www.w3.org/2002/07/owl#TransitiveProperty"/>'
        '</owl:ObjectProperty>',
        [
            "'TransitiveProperty'(locatedIn).",
            "?X[?P -> ?Z] :- 'TransitiveProperty'(?P), "
            "?X[?P -> ?Y], ?Y[?P -> ?Z].",
        ],
    ),
    (
        "owl:SymmetricProperty",
        '<owl:ObjectProperty rdf:about="#adjacentRegion">'
        '<rdf:type rdf:resource='
        '"http://www.w3.org/2002/07/owl#SymmetricProperty"/>'
        '</owl:ObjectProperty>',
        [
            "'SymmetricProperty'(adjacentRegion).",
            "?X[?P -> ?Y] :- 'SymmetricProperty'(?P), ?Y[?P -> ?X].",
        ],
    ),
]
