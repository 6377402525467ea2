"""Parser for the supported RDF/XML OWL subset.

Preprocessing happens here: prefixed names are expanded to full IRIs and XML
schema datatypes are mapped to the builtin type tags (``_string``,
``_integer``, ``_double``, ``_boolean``).

The parser accepts the idiomatic XML shapes of the subset (owl:Class with
nested restrictions and boolean definitions, object/datatype properties with
characteristics, attribute- and element-form ABox assertions), not arbitrary
RDF triple serializations.
"""

from __future__ import annotations

import io
import re
import xml.etree.ElementTree as ET
from typing import Dict, List, Optional, Tuple, Union

from .diagnostics import Diagnostic, ERROR, WARNING
from .owl_model import (
    AllValuesFrom, Assertion, Characteristic, ClassAssertion, ClassAxiom,
    ComplementOf, DisjointWith, Domain, EquivalentClass, EquivalentProperty,
    ExactCardinality, FUNCTIONAL, HasValue, INVERSE_FUNCTIONAL, IntersectionOf,
    InverseOf, Iri, MaxCardinality, MinCardinality, Named, OneOf,
    OntologyDocument, OwlLiteral, PropertyAssertion, PropertyAxiom, Range,
    Restriction, SYMMETRIC, SomeValuesFrom, SubClassOf, SubPropertyOf,
    TRANSITIVE, UnionOf,
)

OWL = "http://www.w3.org/2002/07/owl#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
XML_NS = "http://www.w3.org/XML/1998/namespace"

DEFAULT_BASE = "http://example.org/ontology"

_ABSOLUTE_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*://")


class IriError(Exception):
    """Raised by expand_iri; carries the diagnostic it maps to."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def _join(base: str, local: str) -> str:
    if base.endswith(("#", "/")):
        return base + local
    return base + "#" + local


def expand_iri(name: str, prefixes: Dict[str, str]) -> Iri:
    """Expand ``prefix#local`` / ``prefix:local`` against a prefix map.

    Absolute IRIs pass through unchanged; a bare name resolves against the
    default ("") prefix.
    """
    if _ABSOLUTE_RE.match(name):
        return Iri(name)
    if "#" in name:
        pfx, local = name.split("#", 1)
    elif ":" in name:
        pfx, local = name.split(":", 1)
    else:
        pfx, local = "", name
    if pfx not in prefixes:
        raise IriError(
            Diagnostic(ERROR, "unresolved-prefix", f"unknown prefix {pfx!r} in {name!r}")
        )
    return Iri(_join(prefixes[pfx], local))


# Fixed XML-type mapping table.
_TYPE_MAP = {
    "string": "_string",
    "integer": "_integer",
    "nonNegativeInteger": "_integer",
    "int": "_integer",
    "decimal": "_double",
    "double": "_double",
    "float": "_double",
    "boolean": "_boolean",
}


def map_xml_type(xml_type: Union[Iri, str]) -> Tuple[str, Optional[Diagnostic]]:
    """Map an XSD/XML type IRI to a builtin type tag.

    Unknown types pass through as opaque names, with a warning.
    """
    value = xml_type.value if isinstance(xml_type, Iri) else xml_type
    local = value.rsplit("#", 1)[-1]
    tag = _TYPE_MAP.get(local)
    if tag is None:
        return value, Diagnostic(
            WARNING, "unknown-type", f"no builtin mapping for type {value!r}"
        )
    return tag, None


def _q(ns: str, local: str) -> str:
    return "{%s}%s" % (ns, local)


_CHAR_BY_IRI = {
    OWL + "FunctionalProperty": FUNCTIONAL,
    OWL + "InverseFunctionalProperty": INVERSE_FUNCTIONAL,
    OWL + "TransitiveProperty": TRANSITIVE,
    OWL + "SymmetricProperty": SYMMETRIC,
}

_PROPERTY_TAGS = {
    _q(OWL, "ObjectProperty"),
    _q(OWL, "DatatypeProperty"),
    _q(RDF, "Property"),
    _q(OWL, "FunctionalProperty"),
    _q(OWL, "InverseFunctionalProperty"),
    _q(OWL, "TransitiveProperty"),
    _q(OWL, "SymmetricProperty"),
}


class _DocParser:
    def __init__(self, base: str, prefixes: Dict[str, str]):
        self.base = base
        self.prefixes = prefixes
        self.doc = OntologyDocument(prefixes=dict(prefixes))
        self.diagnostics: List[Diagnostic] = []
        self._blank_counter = 0

    # -- helpers

    def warn(self, code: str, message: str):
        self.diagnostics.append(Diagnostic(WARNING, code, message))

    def error(self, code: str, message: str):
        self.diagnostics.append(Diagnostic(ERROR, code, message))

    def fresh_blank(self) -> Iri:
        self._blank_counter += 1
        return Iri(_join(self.base, f"_:b{self._blank_counter}"))

    def resolve(self, value: str) -> Iri:
        """Resolve an rdf:ID / rdf:about / rdf:resource value."""
        value = value.strip()
        if _ABSOLUTE_RE.match(value):
            return Iri(value)
        if value.startswith("#"):
            value = value[1:]
        if ":" in value:
            pfx, local = value.split(":", 1)
            if pfx in self.prefixes:
                return Iri(_join(self.prefixes[pfx], local))
        return Iri(_join(self.base, value))

    def subject(self, el: ET.Element) -> Iri:
        ident = el.get(_q(RDF, "ID"))
        if ident is not None:
            return self.resolve(ident)
        about = el.get(_q(RDF, "about"))
        if about is not None:
            return self.resolve(about)
        return self.fresh_blank()

    # -- class expressions

    def parse_class_expr(self, el: ET.Element):
        tag = el.tag
        if tag == _q(OWL, "Restriction"):
            return self.parse_restriction(el)
        if tag == _q(OWL, "Class") or tag == _q(RDFS, "Class"):
            about = el.get(_q(RDF, "about")) or el.get(_q(RDF, "ID"))
            expr = self.parse_class_body_expr(el)
            if expr is not None:
                return expr
            if about is not None:
                return Named(self.resolve(about))
        self.warn("unknown-construct", f"unsupported class expression <{tag}>")
        return None

    def parse_class_body_expr(self, el: ET.Element):
        """Boolean/enumeration definition inside an owl:Class element."""
        for child in el:
            ctag = child.tag
            if ctag == _q(OWL, "unionOf"):
                ops = self.parse_collection(child)
                if len(ops) >= 2:
                    return UnionOf(tuple(ops))
            elif ctag == _q(OWL, "intersectionOf"):
                ops = self.parse_collection(child)
                if len(ops) >= 2:
                    return IntersectionOf(tuple(ops))
            elif ctag == _q(OWL, "complementOf"):
                res = child.get(_q(RDF, "resource"))
                if res is not None:
                    return ComplementOf(Named(self.resolve(res)))
                for sub in child:
                    inner = self.parse_class_expr(sub)
                    if inner is not None:
                        return ComplementOf(inner)
            elif ctag == _q(OWL, "oneOf"):
                inds = []
                for sub in child:
                    about = sub.get(_q(RDF, "about")) or sub.get(_q(RDF, "ID"))
                    if about is not None:
                        inds.append(self.resolve(about))
                if inds:
                    return OneOf(tuple(inds))
        return None

    def parse_collection(self, el: ET.Element):
        ops = []
        for child in el:
            expr = self.parse_class_expr(child)
            if expr is not None:
                ops.append(expr)
        return ops

    def parse_restriction(self, el: ET.Element):
        prop: Optional[Iri] = None
        kind = None
        for child in el:
            ctag = child.tag
            if ctag == _q(OWL, "onProperty"):
                res = child.get(_q(RDF, "resource"))
                if res is not None:
                    prop = self.resolve(res)
            elif ctag == _q(OWL, "allValuesFrom"):
                kind = AllValuesFrom(self._filler(child))
            elif ctag == _q(OWL, "someValuesFrom"):
                kind = SomeValuesFrom(self._filler(child))
            elif ctag == _q(OWL, "hasValue"):
                res = child.get(_q(RDF, "resource"))
                if res is not None:
                    kind = HasValue(self.resolve(res))
                else:
                    kind = HasValue(self._literal(child))
            elif ctag in (_q(OWL, "maxCardinality"), _q(OWL, "minCardinality"),
                          _q(OWL, "cardinality")):
                try:
                    n = int((child.text or "").strip())
                except ValueError:
                    self.error("bad-cardinality",
                               f"non-integer cardinality {child.text!r}")
                    continue
                if ctag == _q(OWL, "maxCardinality"):
                    kind = MaxCardinality(n)
                elif ctag == _q(OWL, "minCardinality"):
                    kind = MinCardinality(n)
                else:
                    kind = ExactCardinality(n)
            else:
                self.warn("unknown-construct",
                          f"unsupported restriction facet <{ctag}>")
        if prop is None or kind is None:
            self.warn("unknown-construct", "incomplete owl:Restriction skipped")
            return None
        return Restriction(prop, kind)

    def _filler(self, el: ET.Element):
        res = el.get(_q(RDF, "resource"))
        if res is not None:
            return Named(self.resolve(res))
        for child in el:
            expr = self.parse_class_expr(child)
            if expr is not None:
                return expr
        self.warn("unknown-construct", "missing restriction filler")
        return Named(Iri(OWL + "Thing"))

    def _literal(self, el: ET.Element) -> OwlLiteral:
        datatype = el.get(_q(RDF, "datatype"))
        tag = "_string"
        if datatype:
            tag, diag = map_xml_type(datatype)
            if diag:
                self.diagnostics.append(diag)
        return OwlLiteral((el.text or "").strip(), tag)

    # -- top-level elements

    def parse_class(self, el: ET.Element):
        subj = self.subject(el)
        defined = self.parse_class_body_expr(el)
        if defined is not None:
            self.doc.class_axioms.append(EquivalentClass(Named(subj), defined))
        for child in el:
            ctag = child.tag
            if ctag in (_q(OWL, "unionOf"), _q(OWL, "intersectionOf"),
                        _q(OWL, "complementOf"), _q(OWL, "oneOf")):
                continue  # consumed above
            if ctag == _q(RDFS, "subClassOf"):
                res = child.get(_q(RDF, "resource"))
                if res is not None:
                    self.doc.class_axioms.append(
                        SubClassOf(Named(subj), Named(self.resolve(res)))
                    )
                    continue
                for sub in child:
                    expr = self.parse_class_expr(sub)
                    if expr is not None:
                        self.doc.class_axioms.append(SubClassOf(Named(subj), expr))
            elif ctag == _q(OWL, "equivalentClass"):
                res = child.get(_q(RDF, "resource"))
                if res is not None:
                    self.doc.class_axioms.append(
                        EquivalentClass(Named(subj), Named(self.resolve(res)))
                    )
                    continue
                for sub in child:
                    expr = self.parse_class_expr(sub)
                    if expr is not None:
                        self.doc.class_axioms.append(
                            EquivalentClass(Named(subj), expr)
                        )
            elif ctag == _q(OWL, "disjointWith"):
                res = child.get(_q(RDF, "resource"))
                if res is not None:
                    self.doc.class_axioms.append(
                        DisjointWith(subj, self.resolve(res))
                    )
            else:
                self.warn("unknown-construct",
                          f"unsupported class axiom <{ctag}>")

    def parse_property(self, el: ET.Element):
        subj = self.subject(el)
        # element-form characteristic, e.g. <owl:TransitiveProperty rdf:ID=...>
        tag_iri = el.tag[1:].replace("}", "", 1) if el.tag.startswith("{") else el.tag
        implied = _CHAR_BY_IRI.get(tag_iri)
        if implied is not None:
            self.doc.property_axioms.append(Characteristic(subj, implied))
        for child in el:
            ctag = child.tag
            res = child.get(_q(RDF, "resource"))
            if ctag == _q(RDFS, "domain") and res is not None:
                self.doc.property_axioms.append(Domain(subj, self.resolve(res)))
            elif ctag == _q(RDFS, "range") and res is not None:
                self.doc.property_axioms.append(Range(subj, self.resolve(res)))
            elif ctag == _q(RDFS, "subPropertyOf") and res is not None:
                self.doc.property_axioms.append(
                    SubPropertyOf(subj, self.resolve(res))
                )
            elif ctag == _q(OWL, "equivalentProperty") and res is not None:
                self.doc.property_axioms.append(
                    EquivalentProperty(subj, self.resolve(res))
                )
            elif ctag == _q(OWL, "inverseOf") and res is not None:
                self.doc.property_axioms.append(InverseOf(subj, self.resolve(res)))
            elif ctag == _q(RDF, "type") and res is not None:
                kind = _CHAR_BY_IRI.get(self.resolve(res).value)
                if kind is None:
                    self.warn("unknown-construct",
                              f"unsupported property type {res!r}")
                else:
                    self.doc.property_axioms.append(Characteristic(subj, kind))
            else:
                self.warn("unknown-construct",
                          f"unsupported property axiom <{ctag}>")

    def parse_individual(self, el: ET.Element, implied_class: Optional[Iri]):
        subj = self.subject(el)
        # class memberships first so the printed frame opens with `x:C`
        if implied_class is not None:
            self.doc.assertions.append(ClassAssertion(subj, implied_class))
        for child in el:
            if child.tag == _q(RDF, "type"):
                res = child.get(_q(RDF, "resource"))
                if res is not None:
                    self.doc.assertions.append(
                        ClassAssertion(subj, self.resolve(res))
                    )
        # attribute-form property values
        for attr_name, attr_value in el.attrib.items():
            if attr_name.startswith("{%s}" % RDF) or \
                    attr_name.startswith("{%s}" % XML_NS):
                continue
            prop = self._attr_iri(attr_name)
            self.doc.assertions.append(
                PropertyAssertion(subj, prop, OwlLiteral(attr_value, "_string"))
            )
        for child in el:
            ctag = child.tag
            if ctag == _q(RDF, "type"):
                continue
            prop = self._attr_iri(ctag)
            res = child.get(_q(RDF, "resource"))
            if res is not None:
                self.doc.assertions.append(
                    PropertyAssertion(subj, prop, self.resolve(res))
                )
            elif len(child) > 0:
                # nested (possibly anonymous) individual
                inner = child[0]
                inner_cls = self._individual_class(inner)
                inner_subj = self.subject(inner)
                self.doc.assertions.append(PropertyAssertion(subj, prop, inner_subj))
                self.parse_individual_at(inner, inner_subj, inner_cls)
            else:
                self.doc.assertions.append(
                    PropertyAssertion(subj, prop, self._literal(child))
                )

    def parse_individual_at(self, el, subj, implied_class):
        if implied_class is not None:
            self.doc.assertions.append(ClassAssertion(subj, implied_class))
        # minimal recursion support: attributes only
        for attr_name, attr_value in el.attrib.items():
            if attr_name.startswith("{%s}" % RDF) or \
                    attr_name.startswith("{%s}" % XML_NS):
                continue
            self.doc.assertions.append(
                PropertyAssertion(subj, self._attr_iri(attr_name),
                                  OwlLiteral(attr_value, "_string"))
            )

    def _attr_iri(self, qualified: str) -> Iri:
        if qualified.startswith("{"):
            ns, local = qualified[1:].split("}", 1)
            return Iri(ns + local if ns.endswith(("#", "/")) else _join(ns, local))
        return self.resolve(qualified)

    def _individual_class(self, el: ET.Element) -> Optional[Iri]:
        tag = el.tag
        if tag in (_q(OWL, "Thing"), _q(RDF, "Description")):
            return None
        if tag.startswith("{"):
            ns, local = tag[1:].split("}", 1)
            return Iri(ns + local if ns.endswith(("#", "/")) else _join(ns, local))
        return self.resolve(tag)

    def parse_top(self, el: ET.Element):
        tag = el.tag
        if tag == _q(OWL, "Ontology"):
            return
        if tag == _q(OWL, "Class") or tag == _q(RDFS, "Class"):
            self.parse_class(el)
        elif tag in _PROPERTY_TAGS:
            self.parse_property(el)
        elif tag in (_q(OWL, "Thing"), _q(RDF, "Description")):
            self.parse_individual(el, None)
        else:
            ns = tag[1:].split("}", 1)[0] if tag.startswith("{") else ""
            if ns in (OWL, RDF, RDFS, OWL[:-1], RDF[:-1], RDFS[:-1]):
                self.warn("unknown-construct", f"unsupported element <{tag}>")
            else:
                # ABox shorthand: <WineGrape rdf:ID="..."/> style
                self.parse_individual(el, self._individual_class(el))


def parse_document(text: str) -> Tuple[Optional[OntologyDocument], List[Diagnostic]]:
    """Parse RDF/XML into an OntologyDocument plus diagnostics.

    Malformed XML yields a single error diagnostic and no document.
    """
    prefixes: Dict[str, str] = {}
    try:
        events = ET.iterparse(io.StringIO(text), events=("start-ns", "start"))
        root = None
        for event, payload in events:
            if event == "start-ns":
                name, uri = payload
                prefixes[name] = uri.rstrip("#")
            elif root is None:
                root = payload
    except ET.ParseError as e:
        pos = getattr(e, "position", None)
        return None, [Diagnostic(ERROR, "malformed-xml", str(e), pos)]
    if root is None:
        return None, [Diagnostic(ERROR, "malformed-xml", "empty document")]

    base = root.get(_q(XML_NS, "base")) or DEFAULT_BASE
    base = base.rstrip("#")
    prefixes[""] = base
    parser = _DocParser(base, prefixes)
    if root.tag == _q(RDF, "RDF"):
        for el in root:
            parser.parse_top(el)
    else:
        parser.parse_top(root)
    return parser.doc, parser.diagnostics
