"""Seeded synthetic multi-operator railway dataset with known violations.

Layout mirrors the real register: one named graph per infrastructure manager
under ``.../graph/rinf/XXXX`` (four-character codes) plus shared reference
graphs (ontology, SKOS vocabulary, countries, borders). With ``full`` set the
dataset also carries the duplicated and older ontology/SKOS versions, a
shapes-as-data graph and a metadata graph.

Expected results are tracked while the data is written, per *view*:

``target``    per-operator focus graphs, GRAPH-pinned shapes
``combo``     per-operator graphs unioned with the reference graphs
``baseline``  one merged graph of operators plus reference graphs
``full``      one merged graph of everything
``extra``     the ontology/SKOS/shapes-structure shapes graphs
"""

from __future__ import annotations

import random
import re
import string
from collections import Counter
from dataclasses import dataclass, field

from shaclds.graph import Dataset, Graph
from shaclds.namespaces import ERA, ERA_315, ERA_G, ERA_RINF, ERA_SH, OWL, RDF_TYPE, RDFS, SH, SKOS, XSD
from shaclds.terms import IRI, Literal

VIOLATION_KINDS = ("pattern", "maxCount", "datatype", "skos", "class")
VIEWS = ("target", "combo", "baseline", "full", "extra")
PER_OPERATOR_VIEWS = ("target", "combo")
MERGED_VIEWS = ("baseline", "full")

ONTOLOGY = ERA_G.ontology
SKOS_GRAPH = ERA_G.skos
COUNTRIES = ERA_G.countries
BORDERS = ERA_G.borders
REFERENCE_GRAPHS = (ONTOLOGY, SKOS_GRAPH, COUNTRIES, BORDERS)
RINF_ONTOLOGY = ERA_RINF.ontology
RINF_SKOS = ERA_RINF.skos
V315_ONTOLOGY = ERA_315.ontology
V315_SKOS = ERA_315.skos
V315_SHACL = ERA_315.shacl
RINF_DATASET = ERA_RINF.dataset

CONCEPTS = "http://data.europa.eu/949/concepts/etcs-m-versions/"
SCHEME = IRI(CONCEPTS + "ETCSMVersions")
SCHEME_315 = IRI(CONCEPTS + "v315/ETCSMVersions")
ENTITY_BASE = "http://data.europa.eu/949/functionalInfrastructure/"
COUNTRY_BASE = "http://publications.europa.eu/resource/authority/country/"

# shape IRIs referenced by the ground truth
MAX_TRAIN_CURRENT = ERA_SH.MaximumTrainCurrent
ETCS_SHAPE = ERA_SH.ETCSShape
NOT_APPLICABLE = ERA_SH.NotApplicableProperty
OP_START = ERA_SH.OpStartProperty
LENGTH = ERA_SH.LengthProperty
ONTOLOGY_PROPERTY = ERA_SH.OntologyPropertyShape
CONCEPT_SHAPE = ERA_SH.ConceptShape

_CODE_ALPHABET = string.ascii_uppercase + string.digits
_CONCEPT_COUNT = 12
_V315_MEMBERS = 8  # the older scheme lists only the first concepts


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 1
    operator_count: int = 3
    triples_per_operator: int = 200
    violations: tuple[tuple[str, int], ...] = (("pattern", 1), ("maxCount", 1), ("datatype", 1), ("skos", 1), ("class", 1))
    shared_triple_count: int = 0
    shared_k: int = 2
    shared_violating: bool = False
    divergence: frozenset[str] = frozenset()
    full: bool = False
    unlabelled_properties: int = 1
    unlabelled_concepts: int = 1

    def validate(self) -> None:
        if self.operator_count < 1 or self.triples_per_operator < 1:
            raise GeneratorError("operator_count and triples_per_operator must be positive")
        for kind, count in self.violations:
            if kind not in VIOLATION_KINDS:
                raise GeneratorError(f"unknown violation kind {kind!r}; expected one of {', '.join(VIOLATION_KINDS)}")
            if count < 0:
                raise GeneratorError(f"negative violation count for {kind}")
        if self.shared_triple_count < 0:
            raise GeneratorError("shared_triple_count must be non-negative")
        if self.shared_triple_count and not 2 <= self.shared_k <= self.operator_count:
            raise GeneratorError("shared_k must lie between 2 and operator_count")
        unknown = set(self.divergence) - {"a", "b", "c"}
        if unknown:
            raise GeneratorError(f"unknown divergence flags {sorted(unknown)}")
        if {"a", "b"} & set(self.divergence) and self.operator_count < 2:
            raise GeneratorError("divergence scenarios a/b need at least two operators")
        if self.unlabelled_properties < 0 or self.unlabelled_concepts < 0:
            raise GeneratorError("unlabelled counts must be non-negative")


@dataclass
class GroundTruth:
    """Expected result counts per view, per shape and per (shape, focus graph)."""

    counts: dict[str, Counter] = field(default_factory=lambda: {v: Counter() for v in VIEWS})
    per_graph: dict[str, Counter] = field(default_factory=lambda: {v: Counter() for v in VIEWS})
    categories: dict[IRI, str] = field(default_factory=dict)

    def graphs_of(self, category: str) -> list[IRI]:
        return sorted((g for g, c in self.categories.items() if c == category), key=lambda g: g.value)

    def add(self, view: str, shape: IRI, graph: IRI | None = None, n: int = 1) -> None:
        if n <= 0:
            return
        self.counts[view][shape] += n
        if graph is not None:
            self.per_graph[view][(shape, graph)] += n

    def total(self, view: str) -> int:
        return sum(self.counts[view].values())

    def shape_counts(self, view: str) -> dict[IRI, int]:
        return {k: v for k, v in self.counts[view].items() if v}

    def to_text(self) -> str:
        lines = []
        for view in VIEWS:
            for shape, n in sorted(self.counts[view].items(), key=lambda kv: kv[0].value):
                lines.append(f"{view}\t{shape.value}\t\t{n}")
            for (shape, graph), n in sorted(self.per_graph[view].items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)):
                lines.append(f"{view}\t{shape.value}\t{graph.value}\t{n}")
        return "\n".join(lines) + "\n"


def operator_codes(rng: random.Random, n: int) -> list[str]:
    codes: set[str] = set()
    while len(codes) < n:
        code = "".join(rng.choice(_CODE_ALPHABET) for _ in range(4))
        codes.add(code)
    return sorted(codes)


def _int(n: int) -> Literal:
    return Literal(str(n), str(XSD.integer))


def _label(text: str) -> Literal:
    return Literal(text, language="en")


def _ontology(cfg: GeneratorConfig) -> tuple[list[tuple], list[IRI]]:
    triples = []
    for cls in ("ContactLineSystem", "ETCS", "OperationalPoint", "SectionOfLine", "Country", "Border"):
        triples += [(ERA[cls], RDF_TYPE, OWL.Class), (ERA[cls], RDFS.label, _label(cls))]
    object_props = ["etcsMVersion", "opStart", "inCountry", "notApplicable"]
    datatype_props = ["maxTrainCurrent", "length", "borderCode"]
    for name in object_props:
        triples += [(ERA[name], RDF_TYPE, OWL.ObjectProperty), (ERA[name], RDFS.label, _label(name))]
    for name in datatype_props:
        triples += [(ERA[name], RDF_TYPE, OWL.DatatypeProperty), (ERA[name], RDFS.label, _label(name))]
    for i in range(cfg.unlabelled_properties):
        triples.append((ERA[f"unlabelledProperty{i}"], RDF_TYPE, OWL.DatatypeProperty))
    triples.append((ERA.etcsMVersion, ERA.inSkosConceptScheme, SCHEME))
    valid_not_applicable = [ERA[n] for n in object_props + datatype_props]
    return triples, valid_not_applicable


def _concept(i: int) -> IRI:
    return IRI(f"{CONCEPTS}{i}")


def _skos(cfg: GeneratorConfig, scheme: IRI, members: int) -> list[tuple]:
    triples = [(scheme, RDF_TYPE, SKOS.ConceptScheme)]
    for i in range(members):
        c = _concept(i)
        triples += [(c, RDF_TYPE, SKOS.Concept), (c, SKOS.inScheme, scheme)]
        if i >= cfg.unlabelled_concepts:
            triples.append((c, SKOS.prefLabel, Literal(f"ETCS M version {i}")))
    return triples


def _add_all(g: Graph, triples) -> None:
    for t in triples:
        g.add(*t)


class _Operator:
    def __init__(self, code: str, graph: Graph) -> None:
        self.code = code
        self.iri = ERA_RINF[code]
        self.graph = graph
        self.n = 0

    def entity(self, kind: str) -> IRI:
        self.n += 1
        return IRI(f"{ENTITY_BASE}{kind}/{self.code}_{self.n}")


def generate(cfg: GeneratorConfig) -> tuple[Dataset, GroundTruth]:
    """Build the dataset and its expected per-view result counts."""
    cfg.validate()
    rng = random.Random(cfg.seed)
    ds = Dataset()
    truth = GroundTruth()

    onto, valid_na = _ontology(cfg)
    _add_all(ds.add_graph(ONTOLOGY), onto)
    _add_all(ds.add_graph(SKOS_GRAPH), _skos(cfg, SCHEME, _CONCEPT_COUNT))
    countries = [IRI(COUNTRY_BASE + c) for c in ("BEL", "CHE", "DEU", "ESP", "FRA", "ITA", "NLD")]
    cg = ds.add_graph(COUNTRIES)
    for c in countries:
        cg.add(c, RDF_TYPE, ERA.Country)
        cg.add(c, RDFS.label, Literal(c.value.rsplit("/", 1)[1]))
    bg = ds.add_graph(BORDERS)
    for i, (a, b) in enumerate(zip(countries, countries[1:])):
        border = IRI(f"{ENTITY_BASE}borders/{i}")
        bg.add(border, RDF_TYPE, ERA.Border)
        bg.add(border, ERA.inCountry, a)
        bg.add(border, ERA.inCountry, b)
        bg.add(border, ERA.borderCode, Literal(f"B{i:03d}"))

    # extra shapes graphs: one result per unlabelled property / concept per
    # ontology / skos graph that carries it
    ontology_copies = 3 if cfg.full else 1
    truth.add("extra", ONTOLOGY_PROPERTY, n=cfg.unlabelled_properties * ontology_copies)
    s1_unlabelled = min(cfg.unlabelled_concepts, _CONCEPT_COUNT)
    s2_unlabelled = min(cfg.unlabelled_concepts, _V315_MEMBERS)
    truth.add("extra", CONCEPT_SHAPE, n=s1_unlabelled * (2 if cfg.full else 1) + (s2_unlabelled if cfg.full else 0))

    s2_members = {_concept(i) for i in range(_V315_MEMBERS)}
    concepts = [_concept(i) for i in range(_CONCEPT_COUNT)]
    codes = operator_codes(rng, cfg.operator_count)
    ops = [_Operator(code, ds.add_graph(ERA_RINF[code])) for code in codes]
    plan = dict(cfg.violations)
    truth.categories.update({op.iri: "operator" for op in ops})
    truth.categories.update({ONTOLOGY: "ontology", SKOS_GRAPH: "skos", COUNTRIES: "countries", BORDERS: "borders"})

    def both_merged(shape: IRI, n: int = 1) -> None:
        for view in MERGED_VIEWS:
            truth.add(view, shape, n=n)

    def everywhere(op: _Operator, shape: IRI) -> None:
        for view in PER_OPERATOR_VIEWS:
            truth.add(view, shape, op.iri)
        both_merged(shape)

    def etcs_full_rows(concept: IRI, spoofed: bool) -> int:
        # merged full view sees both schemes; without DISTINCT each missing
        # scheme membership is its own row
        rows = 0
        if concept not in concepts and not spoofed:
            rows += 1
        if concept not in s2_members:
            rows += 1
        return rows

    for op in ops:
        g = op.graph
        budget = cfg.triples_per_operator

        # planted violations first
        for _ in range(plan.get("pattern", 0)):
            e = op.entity("contactLineSystems")
            g.add(e, RDF_TYPE, ERA.ContactLineSystem)
            g.add(e, ERA.maxTrainCurrent, _int(20000 + rng.randrange(80000)))
            everywhere(op, MAX_TRAIN_CURRENT)
        for _ in range(plan.get("maxCount", 0)):
            e = op.entity("contactLineSystems")
            g.add(e, RDF_TYPE, ERA.ContactLineSystem)
            g.add(e, ERA.maxTrainCurrent, _int(1000 + rng.randrange(500)))
            g.add(e, ERA.maxTrainCurrent, _int(1500 + rng.randrange(500)))
            everywhere(op, MAX_TRAIN_CURRENT)
        for _ in range(plan.get("datatype", 0)):
            e = op.entity("contactLineSystems")
            g.add(e, RDF_TYPE, ERA.ContactLineSystem)
            g.add(e, ERA.maxTrainCurrent, Literal(str(1 + rng.randrange(9999))))
            everywhere(op, MAX_TRAIN_CURRENT)
        for _ in range(plan.get("skos", 0)):
            e = op.entity("etcs")
            bogus = IRI(f"{CONCEPTS}unknown-{op.code}-{op.n}")
            g.add(e, RDF_TYPE, ERA.ETCS)
            g.add(e, ERA.etcsMVersion, bogus)
            everywhere(op, ETCS_SHAPE)
            truth.counts["full"][ETCS_SHAPE] += etcs_full_rows(bogus, False) - 1
        for _ in range(plan.get("class", 0)):
            e = op.entity("operationalPoints")
            g.add(e, RDF_TYPE, ERA.OperationalPoint)
            g.add(e, ERA.notApplicable, ERA[f"undeclaredProperty{rng.randrange(1000)}"])
            everywhere(op, NOT_APPLICABLE)

        # filler entities until the triple budget is met
        kinds = ("contactLineSystems", "etcs", "operationalPoints", "sectionsOfLine")
        k = 0
        last_op = None
        while len(g) < budget:
            kind = kinds[k % len(kinds)]
            k += 1
            e = op.entity(kind)
            if kind == "contactLineSystems":
                g.add(e, RDF_TYPE, ERA.ContactLineSystem)
                g.add(e, ERA.maxTrainCurrent, _int(rng.randrange(10000)))
            elif kind == "etcs":
                c = rng.choice(concepts)
                g.add(e, RDF_TYPE, ERA.ETCS)
                g.add(e, ERA.etcsMVersion, c)
                truth.add("full", ETCS_SHAPE, n=etcs_full_rows(c, False))
            elif kind == "operationalPoints":
                g.add(e, RDF_TYPE, ERA.OperationalPoint)
                g.add(e, ERA.inCountry, rng.choice(countries))
                if rng.random() < 0.5:
                    g.add(e, ERA.notApplicable, rng.choice(valid_na))
                last_op = e
            else:
                g.add(e, RDF_TYPE, ERA.SectionOfLine)
                g.add(e, ERA.opStart, last_op if last_op is not None else IRI(f"{ENTITY_BASE}operationalPoints/{op.code}_0"))
                g.add(e, ERA.length, _int(1 + rng.randrange(50000)))
            g.add(e, RDFS.label, Literal(f"{kind} {op.code} {op.n}"))

    # triples repeated verbatim across the first shared_k operator graphs
    for j in range(cfg.shared_triple_count):
        e = IRI(f"{ENTITY_BASE}contactLineSystems/shared_{j}")
        violating = cfg.shared_violating and j == 0
        value = _int(20000 + j) if violating else _int(1 + j % 9999)
        for op in ops[: cfg.shared_k]:
            op.graph.add(e, RDF_TYPE, ERA.ContactLineSystem)
            op.graph.add(e, ERA.maxTrainCurrent, value)
            if violating:
                for view in PER_OPERATOR_VIEWS:
                    truth.add(view, MAX_TRAIN_CURRENT, op.iri)
        if violating:
            both_merged(MAX_TRAIN_CURRENT)

    if cfg.divergence & {"a", "b"}:
        x, y = ops[0], ops[1]
        anchor = IRI(f"{ENTITY_BASE}operationalPoints/shared_anchor")
        for op in (x, y):
            op.graph.add(anchor, RDF_TYPE, ERA.OperationalPoint)
        if "a" in cfg.divergence:
            # one graph declares the start point, the other omits it
            sec = IRI(f"{ENTITY_BASE}sectionsOfLine/shared_missing_ref")
            for op in (x, y):
                op.graph.add(sec, RDF_TYPE, ERA.SectionOfLine)
                op.graph.add(sec, ERA.length, _int(1200))
            x.graph.add(sec, ERA.opStart, anchor)
            for view in PER_OPERATOR_VIEWS:
                truth.add(view, OP_START, y.iri)
        if "b" in cfg.divergence:
            # both graphs declare a length, with different values
            sec = IRI(f"{ENTITY_BASE}sectionsOfLine/shared_conflict")
            for op, length in ((x, 1500), (y, 1550)):
                op.graph.add(sec, RDF_TYPE, ERA.SectionOfLine)
                op.graph.add(sec, ERA.opStart, anchor)
                op.graph.add(sec, ERA.length, _int(length))
            both_merged(LENGTH)

    if "c" in cfg.divergence:
        # an operator graph asserts scheme membership for a concept the
        # vocabulary does not contain
        op = ops[0]
        e = op.entity("etcs")
        bogus = IRI(f"{CONCEPTS}spoofed-{op.code}")
        op.graph.add(e, RDF_TYPE, ERA.ETCS)
        op.graph.add(e, ERA.etcsMVersion, bogus)
        op.graph.add(bogus, SKOS.inScheme, SCHEME)
        truth.add("target", ETCS_SHAPE, op.iri)
        truth.add("full", ETCS_SHAPE, n=etcs_full_rows(bogus, True))

    if cfg.full:
        _add_all(ds.add_graph(RINF_ONTOLOGY), onto)
        _add_all(ds.add_graph(RINF_SKOS), _skos(cfg, SCHEME, _CONCEPT_COUNT))
        v315 = [t for t in onto if t[1] != ERA.inSkosConceptScheme]
        v315.append((ERA.etcsMVersion, ERA.inSkosConceptScheme, SCHEME_315))
        _add_all(ds.add_graph(V315_ONTOLOGY), v315)
        _add_all(ds.add_graph(V315_SKOS), _skos(cfg, SCHEME_315, _V315_MEMBERS))
        from shaclds.bench.shapes import original_shapes_graph

        _add_all(ds.add_graph(V315_SHACL), original_shapes_graph())
        meta = ds.add_graph(RINF_DATASET)
        dcat = "http://www.w3.org/ns/dcat#"
        meta.add(RINF_DATASET, RDF_TYPE, IRI(dcat + "Dataset"))
        meta.add(RINF_DATASET, RDFS.label, Literal(f"synthetic register, seed {cfg.seed}"))
        for op in ops:
            meta.add(RINF_DATASET, IRI(dcat + "dataset"), op.iri)
        truth.categories.update(
            {
                RINF_ONTOLOGY: "ontology",
                V315_ONTOLOGY: "ontology",
                RINF_SKOS: "skos",
                V315_SKOS: "skos",
                V315_SHACL: "shacl",
                RINF_DATASET: "metadata",
            }
        )
    else:
        # without the v3.1.5 scheme the full view equals the baseline view
        truth.counts["full"] = Counter(truth.counts["baseline"])
        truth.per_graph["full"] = Counter(truth.per_graph["baseline"])
    return ds, truth


_OPERATOR_IRI = re.compile(re.escape(str(ERA_RINF)) + "[A-Z0-9]{4}")


def operator_graphs(ds: Dataset) -> list[IRI]:
    return [n for n in ds.graph_names() if _OPERATOR_IRI.fullmatch(n.value)]


def baseline_graphs(ds: Dataset) -> list[IRI]:
    return operator_graphs(ds) + [g for g in REFERENCE_GRAPHS if g in ds.named]


def parse_violation_plan(text: str) -> tuple[tuple[str, int], ...]:
    """``pattern:1,skos:2`` -> (("pattern", 1), ("skos", 2))."""
    plan = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        kind, _, count = part.partition(":")
        try:
            plan.append((kind.strip(), int(count) if count else 1))
        except ValueError:
            raise GeneratorError(f"bad violation plan entry {part!r}") from None
    return tuple(plan)


__all__ = [
    "GeneratorConfig",
    "GeneratorError",
    "GroundTruth",
    "generate",
    "operator_graphs",
    "baseline_graphs",
    "parse_violation_plan",
    "VIOLATION_KINDS",
    "VIEWS",
]
