"""Classical decision-tree construction.

Trees are grown depth-first by recursive partitioning: each node scores
every attribute with the split scanners, takes the gain-ratio argmax, and
recurses into the partition. Two interchangeable counter backends (dense
arrays, sparse ordered maps) feed the scanners; they produce byte-identical
trees and differ only in their operation tallies.
"""

from dataclasses import dataclass, field

from . import jsonio
from .counters import BASELINE, TREEMAP, make_backend
from .criteria import ClassHistogram, OpTally
from .dataset import (
    DISCRETE,
    REAL,
    Attribute,
    AttributeSchema,
    DataFormatError,
    partition,
)
from .splitscan import SplitTest, process_attribute

QUANTUM = "quantum"
BACKENDS = (BASELINE, TREEMAP, QUANTUM)


@dataclass
class BuildConfig:
    """Knobs shared by the classical and quantum builders.

    max_height bounds node depth (0 forces a single leaf). min_split is the
    smallest subset still worth scanning. repeats overrides the quantum
    searcher's repetition count; verify asks the quantum builder to also
    record each node's classically best attribute; report asks the CLI to
    write the per-node search report.
    """

    max_height: int = 10
    min_split: int = 2
    backend: str = BASELINE
    repeats: int | None = None
    seed: int | None = None
    verify: bool = False
    report: bool = False

    def __post_init__(self):
        if self.max_height < 0:
            raise ValueError("max_height must be >= 0")
        if self.min_split < 2:
            raise ValueError("min_split must be >= 2")
        if self.backend not in BACKENDS:
            raise ValueError("backend must be one of %s" % (", ".join(BACKENDS),))
        if self.repeats is not None and self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.backend == QUANTUM and self.seed is None:
            raise ValueError("the quantum backend needs an explicit seed")


@dataclass
class BuildStats:
    """Instrumentation accumulated over one build.

    evaluations counts scoring passes over (view, attribute) pairs. The
    tally's maintenance_ops is the structure-sized counter work whose growth
    with the class count separates the two backends.
    """

    internal_nodes: int = 0
    leaves: int = 0
    evaluations: int = 0
    tally: OpTally = field(default_factory=OpTally)

    @property
    def counter_ops(self):
        return self.tally.maintenance_ops


@dataclass
class Leaf:
    class_index: int
    support: ClassHistogram


@dataclass
class Internal:
    test: SplitTest
    children: list
    support: ClassHistogram


@dataclass
class DecisionTree:
    root: object
    schema: AttributeSchema
    class_labels: tuple
    height_limit: int
    stats: BuildStats


def choose_split(view, backend, stats=None):
    """Gain-ratio argmax over all attributes of a view.

    Returns (attr, SplitTest, SplitScore) or None when no attribute admits a
    valid candidate. Ties keep the lowest attribute index; threshold ties
    within an attribute were already resolved toward the lowest threshold.
    """
    best = None
    for attr in range(view.base.schema.attribute_count):
        if stats is not None:
            stats.evaluations += 1
        result = process_attribute(view, attr, backend)
        if result is None:
            continue
        score, test = result
        if not score.valid:
            continue
        if best is None or best[2] < score:
            best = (attr, test, score)
    return best


def form_tree(view, level, config, backend, stats):
    """Recursive growth: leaf on purity, height, or exhausted candidates."""
    hist = ClassHistogram.from_labels(view.labels())
    if (
        len(hist.counts) == 1
        or level >= config.max_height
        or len(view) < config.min_split
    ):
        stats.leaves += 1
        return Leaf(hist.majority(), hist)
    backend.tally.level = level
    choice = choose_split(view, backend, stats)
    if choice is None:
        stats.leaves += 1
        return Leaf(hist.majority(), hist)
    attr, test, score = choice
    stats.internal_nodes += 1
    children = []
    for part in partition(view, test):
        if len(part) == 0:
            # a branch no training sample takes: label it with the parent
            # majority; the recorded support is the parent distribution the
            # label came from
            stats.leaves += 1
            children.append(Leaf(hist.majority(), hist))
        else:
            children.append(form_tree(part, level + 1, config, backend, stats))
    return Internal(test, children, hist)


def train(data, config=None):
    """Grows a DecisionTree over the full dataset.

    Baseline and treemap backends produce identical trees; quantum builds
    live in the sibling module of this one.
    """
    config = config if config is not None else BuildConfig()
    if config.backend == QUANTUM:
        raise ValueError("use the quantum builder for quantum-searched trees")
    stats = BuildStats()
    backend = make_backend(config.backend, data.schema.class_count, stats.tally)
    root = form_tree(data.full_view(), 0, config, backend, stats)
    return DecisionTree(root, data.schema, data.class_labels, config.max_height, stats)


def classify(tree, x):
    """Routes one attribute vector from the root to a leaf class index.

    Real tests send x left iff x[attr] <= theta; a discrete test sends x to
    the child matching its value, which must lie in the attribute's domain.
    """
    node = tree.root
    while isinstance(node, Internal):
        test = node.test
        value = x[test.attr]
        if test.kind == REAL:
            node = node.children[0] if float(value) <= test.theta else node.children[1]
        else:
            w = int(value)
            if not 1 <= w <= test.branch_count:
                raise DataFormatError(
                    "value %r of attribute index %d outside 1..%d"
                    % (value, test.attr, test.branch_count)
                )
            node = node.children[w - 1]
    return node.class_index


def training_accuracy(tree, data):
    hits = 0
    for i in range(data.n_rows):
        if classify(tree, data.row(i)) == int(data.labels[i]):
            hits += 1
    return hits / data.n_rows


def tree_height(node):
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_height(child) for child in node.children)


def count_internal(node):
    if isinstance(node, Leaf):
        return 0
    return 1 + sum(count_internal(child) for child in node.children)


def _support_list(hist, class_count):
    return [hist.counts.get(j, 0) for j in range(1, class_count + 1)]


def _node_document(node, class_count):
    if isinstance(node, Leaf):
        return {
            "kind": "leaf",
            "class": node.class_index,
            "support": _support_list(node.support, class_count),
        }
    doc = {"kind": "internal", "attr": node.test.attr}
    if node.test.kind == REAL:
        doc["theta"] = node.test.theta
    else:
        doc["branch_count"] = node.test.branch_count
    doc["support"] = _support_list(node.support, class_count)
    doc["children"] = [_node_document(child, class_count) for child in node.children]
    return doc


def tree_to_document(tree):
    """Plain-data form of a tree, stable field order, ready for emission.

    Attribute indices in the document are 0-based positions in the schema's
    attribute list; class indices are the 1-based internal ones, with
    class_label_mapping[c-1] giving the original label string.
    """
    attrs = []
    for a in tree.schema.attributes:
        entry = {"name": a.name, "kind": a.kind}
        if a.kind == DISCRETE:
            entry["domain_size"] = a.domain_size
        attrs.append(entry)
    return {
        "schema": {"class_count": tree.schema.class_count, "attributes": attrs},
        "class_label_mapping": list(tree.class_labels),
        "root": _node_document(tree.root, tree.schema.class_count),
    }


def _node_from_document(doc, schema):
    support = ClassHistogram(
        {j: c for j, c in enumerate(doc["support"], start=1) if c}
    )
    if doc["kind"] == "leaf":
        return Leaf(int(doc["class"]), support)
    if doc["kind"] != "internal":
        raise DataFormatError("unknown node kind %r" % (doc.get("kind"),))
    attr = int(doc["attr"])
    if "theta" in doc:
        test = SplitTest(attr, REAL, theta=float(doc["theta"]))
    else:
        test = SplitTest(attr, DISCRETE, branch_count=int(doc["branch_count"]))
    children = [_node_from_document(child, schema) for child in doc["children"]]
    return Internal(test, children, support)


def document_to_tree(doc):
    attrs = []
    for entry in doc["schema"]["attributes"]:
        attrs.append(
            Attribute(entry["name"], entry["kind"], entry.get("domain_size"))
        )
    schema = AttributeSchema(tuple(attrs), int(doc["schema"]["class_count"]))
    root = _node_from_document(doc["root"], schema)
    return DecisionTree(
        root=root,
        schema=schema,
        class_labels=tuple(doc["class_label_mapping"]),
        height_limit=tree_height(root),
        stats=BuildStats(),
    )


def serialize_model(tree):
    return jsonio.dumps(tree_to_document(tree)) + "\n"


def save_model(tree, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_model(tree))


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        return document_to_tree(jsonio.loads(fh.read()))


def format_tree(tree):
    """Indented text rendering, one branch condition per line."""
    names = [a.name for a in tree.schema.attributes]
    lines = []

    def leaf_text(node):
        return "=> %s  (n=%d)" % (tree.class_labels[node.class_index - 1], node.support.total)

    def walk(node, pad):
        if isinstance(node, Leaf):
            lines.append(pad + leaf_text(node))
            return
        test = node.test
        if test.kind == REAL:
            conditions = [
                "%s <= %s" % (names[test.attr], test.theta),
                "%s > %s" % (names[test.attr], test.theta),
            ]
        else:
            conditions = [
                "%s = %d" % (names[test.attr], w)
                for w in range(1, test.branch_count + 1)
            ]
        for condition, child in zip(conditions, node.children):
            if isinstance(child, Leaf):
                lines.append("%s%s %s" % (pad, condition, leaf_text(child)))
            else:
                lines.append(pad + condition + ":")
                walk(child, pad + "    ")

    walk(tree.root, "")
    return "\n".join(lines)
