"""Where merging hides errors, and where it invents them.

Two operators describe the same sections of line. One omits a start point
the other supplies; merged, the reference is borrowed and the gap vanishes.
Both give a length, with different values; merged, the section suddenly has
two. Finally an operator asserts scheme membership for a concept of its own,
which fools the un-pinned SKOS check once everything is merged, but not the
rewrite that reads the vocabulary from its own graph.
"""

from __future__ import annotations

from shaclds.bench.generator import ETCS_SHAPE, LENGTH, OP_START, GeneratorConfig, generate, operator_graphs
from shaclds.bench.shapes import original_shapes_text, shapes_dataset_text
from shaclds.ds import flatten, load_shapes_dataset, validate_dataset
from shaclds.rdfio import parse_trig, parse_turtle
from shaclds.shacl import load_shapes, validate_graph


def show(title, results, shapes):
    print(title)
    hits = [r for r in results if r.source_shape in shapes]
    for r in hits:
        where = f" in {r.focus_graph.value}" if r.focus_graph else ""
        print(f"  {r.source_shape.value.rsplit('/', 1)[1]:<22} {r.focus_node.value.rsplit('/', 1)[1]}{where}")
    if not hits:
        print("  (nothing)")


def main() -> None:
    data, _ = generate(GeneratorConfig(seed=7, operator_count=2, violations=(), divergence=frozenset("abc")))
    ops = operator_graphs(data)
    watched = {OP_START, LENGTH, ETCS_SHAPE}

    merged = validate_graph(load_shapes(parse_turtle(original_shapes_text()).unwrap().default), flatten(data, "all"))
    show("merged, un-pinned shapes", merged.results, watched)

    sd = load_shapes_dataset(parse_trig(shapes_dataset_text("target", ops)).unwrap())
    show("per operator, GRAPH-pinned shapes", validate_dataset(sd, data).results, watched)


if __name__ == "__main__":
    main()
