"""Dataset-level validation: shapes datasets, focus graphs and evaluation views.

A shapes dataset keeps shapes in named graphs and, in its default graph,
declarations linking each shapes graph to focus graphs of the data::

    era-sh:sg-rinf shds:targetGraph era-rinf:0080 .
    era-sh:sg-rinf shds:targetGraphPattern ".*/graph/rinf/[A-Z0-9]{4}$" .
    era-sh:sg-rinf shds:targetGraphCombination [ shds:or ( era-rinf:0080 _:ref ) ] .

Every (shapes graph, focus graph) pair is validated against an evaluation
dataset whose default graph is the focus graph; all named graphs of the data
stay reachable by name, and the data's own default graph is exposed as
``shds:default``.
"""

from __future__ import annotations

import hashlib
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Union

from shaclds.graph import Dataset, Graph, dataset_graph, graph_difference, graph_intersection, union_all
from shaclds.namespaces import SHDS, SHDS_ALL, SHDS_DEFAULT
from shaclds.shacl.loader import ShapeLoadError, load_shapes, read_list
from shaclds.shacl.model import Shape, ValidationReport, ValidationResult
from shaclds.shacl.validator import validate_graph
from shaclds.terms import IRI, BNode, Literal, Term

logger = logging.getLogger(__name__)

TARGET_GRAPH = SHDS.targetGraph
TARGET_GRAPH_PATTERN = SHDS.targetGraphPattern
TARGET_GRAPH_COMBINATION = SHDS.targetGraphCombination
OPERATORS = {SHDS["or"]: "or", SHDS["and"]: "and", SHDS.minus: "minus"}
SKOLEM_PREFIX = "urn:shaclds:combination:"


class ShapesDatasetError(ValueError):
    pass


class PairValidationError(RuntimeError):
    def __init__(self, shapes_graph: IRI, focus_id: Term, cause: BaseException) -> None:
        super().__init__(f"validating shapes graph {shapes_graph.n3()} against focus graph {focus_id.n3()}: {cause}")
        self.shapes_graph = shapes_graph
        self.focus_id = focus_id


Operand = Union[IRI, "CombinationTree"]


@dataclass(frozen=True)
class CombinationTree:
    operator: str  # "or" | "and" | "minus"
    operands: tuple[Operand, ...]

    def canonical(self) -> str:
        parts = [o.canonical() if isinstance(o, CombinationTree) else o.n3() for o in self.operands]
        if self.operator != "minus":
            parts.sort()
        return f"{self.operator}({','.join(parts)})"

    def skolem(self) -> IRI:
        digest = hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()[:32]
        return IRI(SKOLEM_PREFIX + digest)


@dataclass(frozen=True)
class TargetSpec:
    kind: str  # "graph" | "pattern" | "combination"
    value: Union[IRI, str, CombinationTree]

    def __post_init__(self) -> None:
        if self.kind == "pattern":
            try:
                re.compile(self.value)
            except re.error as exc:
                raise ShapesDatasetError(f"invalid target graph pattern {self.value!r}: {exc}") from None


@dataclass
class ShapesDataset:
    declarations: list[tuple[IRI, TargetSpec]] = field(default_factory=list)
    shapes_graphs: dict[IRI, list[Shape]] = field(default_factory=dict)


class _Combinations:
    """Reads combination nodes; blank nodes reused across lists share one tree."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.cache: dict[Term, CombinationTree] = {}
        self.active: set[Term] = set()

    def tree(self, node: Term) -> CombinationTree:
        hit = self.cache.get(node)
        if hit is not None:
            return hit
        if node in self.active:
            raise ShapesDatasetError(f"cycle among combination nodes at {node.n3()}")
        self.active.add(node)
        ops = [p for p in self.g.predicates_of(node) if p in OPERATORS]
        unknown = [p for p in self.g.predicates_of(node) if isinstance(p, IRI) and p.value.startswith(str(SHDS)) and p not in OPERATORS]
        if unknown:
            raise ShapesDatasetError(f"combination node {node.n3()} uses unknown operator {unknown[0].n3()}")
        if len(ops) != 1 or len(self.g.objects(node, ops[0])) != 1:
            raise ShapesDatasetError(f"combination node {node.n3()} must carry exactly one of shds:or, shds:and, shds:minus")
        head = self.g.objects(node, ops[0])[0]
        try:
            items = read_list(self.g, head, node)
        except ShapeLoadError as exc:
            raise ShapesDatasetError(f"malformed operand list on combination node {node.n3()}: {exc}") from None
        if not items:
            raise ShapesDatasetError(f"combination node {node.n3()} has no operands")
        operands: list[Operand] = []
        for item in items:
            if isinstance(item, IRI):
                operands.append(item)
            elif isinstance(item, BNode):
                operands.append(self.tree(item))
            else:
                raise ShapesDatasetError(f"literal operand {item.n3()} in combination node {node.n3()}")
        self.active.discard(node)
        tree = self.cache[node] = CombinationTree(OPERATORS[ops[0]], tuple(operands))
        return tree


def load_shapes_dataset(d: Dataset, diagnostics: list[str] | None = None) -> ShapesDataset:
    """Read target declarations from the default graph and shapes from every
    named graph."""
    decls = d.default
    combos = _Combinations(decls)
    sd = ShapesDataset()
    for s, p, o in decls:
        if p not in (TARGET_GRAPH, TARGET_GRAPH_PATTERN, TARGET_GRAPH_COMBINATION):
            continue
        if not isinstance(s, IRI) or s not in d.named:
            raise ShapesDatasetError(f"declaration names shapes graph {s.n3()} which is not in the shapes dataset")
        if p == TARGET_GRAPH:
            if not isinstance(o, IRI):
                raise ShapesDatasetError(f"shds:targetGraph of {s.n3()} must be an IRI")
            spec = TargetSpec("graph", o)
        elif p == TARGET_GRAPH_PATTERN:
            if not isinstance(o, Literal):
                raise ShapesDatasetError(f"shds:targetGraphPattern of {s.n3()} must be a literal")
            spec = TargetSpec("pattern", o.lexical)
        else:
            spec = TargetSpec("combination", combos.tree(o))
        sd.declarations.append((s, spec))
    for name in d.graph_names():
        try:
            sd.shapes_graphs[name] = load_shapes(d.named[name], diagnostics)
        except ShapeLoadError as exc:
            raise ShapesDatasetError(f"shapes graph {name.n3()}: {exc}") from None
    return sd


def all_graphs(data: Dataset) -> Graph:
    return union_all([data.default, *data.named.values()])


def _operand_graph(op: Operand, data: Dataset) -> Graph:
    if isinstance(op, CombinationTree):
        return fold(op, data)
    if op == SHDS_ALL:
        return all_graphs(data)
    if op == SHDS_DEFAULT:
        return data.default
    return dataset_graph(data, op)


def fold(tree: CombinationTree, data: Dataset) -> Graph:
    graphs = [_operand_graph(o, data) for o in tree.operands]
    if tree.operator == "or":
        return union_all(graphs)
    if tree.operator == "and":
        result = graphs[0]
        for g in graphs[1:]:
            result = graph_intersection(result, g)
        return result if len(graphs) > 1 else result.copy()
    return graph_difference(graphs[0], union_all(graphs[1:]))


def resolve_focus_graphs(spec: TargetSpec, data: Dataset) -> list[tuple[Graph, Term]]:
    if spec.kind == "graph":
        name = spec.value
        return [(data.default if name == SHDS_DEFAULT else dataset_graph(data, name), name)]
    if spec.kind == "pattern":
        rx = re.compile(spec.value)
        return [(data.named[n], n) for n in data.graph_names() if rx.search(n.value)]
    if spec.kind == "combination":
        return [(fold(spec.value, data), spec.value.skolem())]
    raise ValueError(f"unknown target kind {spec.kind!r}")


class EvaluationDataset(Dataset):
    """The focus graph as default graph over the data's named graphs.

    Graphs are shared with the source dataset, never copied.
    """

    __slots__ = ()

    def __init__(self, data: Dataset, focus: Graph) -> None:
        named = dict(data.named)
        named[SHDS_DEFAULT] = data.default
        super().__init__(default=focus, named=named)


def build_evaluation_dataset(data: Dataset, focus: Graph) -> EvaluationDataset:
    return EvaluationDataset(data, focus)


def flatten(data: Dataset, graph_ids: list[Term] | str) -> Graph:
    """Union of the selected named graphs; ``"all"`` adds every named graph
    and the default graph."""
    if graph_ids == "all":
        return all_graphs(data)
    return union_all([dataset_graph(data, g) for g in graph_ids])


@dataclass
class Pair:
    shapes_graph: IRI
    shapes: list[Shape]
    focus: Graph
    focus_id: Term
    eds: EvaluationDataset


def plan_pairs(sd: ShapesDataset, data: Dataset) -> list[Pair]:
    """Resolve every declaration to its (shapes graph, focus graph) pairs;
    combinations are materialized here."""
    pairs = []
    for sg, spec in sd.declarations:
        for focus, focus_id in resolve_focus_graphs(spec, data):
            pairs.append(Pair(sg, sd.shapes_graphs[sg], focus, focus_id, EvaluationDataset(data, focus)))
    pairs.sort(key=lambda p: (p.shapes_graph.sort_key(), p.focus_id.sort_key()))
    return pairs


def _run_pair(pair: Pair) -> list[ValidationResult]:
    try:
        report = validate_graph(pair.shapes, pair.focus, pair.eds)
    except Exception as exc:
        raise PairValidationError(pair.shapes_graph, pair.focus_id, exc) from exc
    return [r.annotate(pair.focus_id, pair.shapes_graph) for r in report.results]


def validate_pairs(pairs: list[Pair], parallel: int = 1) -> ValidationReport:
    if parallel > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            chunks = list(pool.map(_run_pair, pairs))
    else:
        chunks = [_run_pair(p) for p in pairs]
    results = [r for chunk in chunks for r in chunk]
    logger.debug("validated %d pairs, %d results", len(pairs), len(results))
    return ValidationReport(results)


def validate_dataset(sd: ShapesDataset, data: Dataset, parallel: int = 1) -> ValidationReport:
    """Validate every (shapes graph, focus graph) pair and merge the
    provenance-annotated results in (shapes graph, focus graph, result) order."""
    return validate_pairs(plan_pairs(sd, data), parallel)
