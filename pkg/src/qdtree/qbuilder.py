"""Tree growth with quantum-searched split selection.

Control flow is the classical builder's; the only change is that each node's
attribute argmax runs through repeated simulated quantum maximum finding
instead of a full sweep. When the search returns a suboptimal attribute the
build keeps it and proceeds: the per-node report records the divergence, and
the whole-tree success claim is about exactly this behavior.

One oracle query = one scoring pass over (view, attribute), so per-node
query counts are comparable to the classical builder's d evaluations. The
probability-level simulation needs every attribute's true score to size the
marked set, so each attribute is still scored once per node on the harness
side; query accounting, not wall time, is the quantum-observable ledger.
"""

import random
from dataclasses import dataclass, field

from . import jsonio
from .builder import QUANTUM, BuildStats, DecisionTree, Internal, Leaf
from .counters import TREEMAP, make_backend
from .criteria import ClassHistogram, INVALID_SPLIT
from .dataset import partition
from .qsearch import ScoringOracle, default_repeats, repeated_max
from .splitscan import process_attribute


@dataclass
class NodeRecord:
    """One split-search attempt.

    node_id numbers attempts in the order the build ran them (preorder).
    chosen_attr is None when the search ended in no-split (the view became a
    leaf). true_best_attr and correct are filled only under config.verify;
    correct means the outcome's score order-equals the classical optimum, so
    any member of the argmax set counts as a success.
    """

    node_id: int
    chosen_attr: int | None
    true_best_attr: int | None
    oracle_queries: int
    repeats: int
    correct: bool | None


@dataclass
class QBuildReport:
    """Per-attempt search log for one quantum build.

    Every query the build spends appears in exactly one per_node row, so
    total_oracle_queries equals the row sum. nodes_correct counts only
    verified-correct rows that realized an internal node, which keeps it
    bounded by the internal node count.
    """

    tree: DecisionTree = None
    per_node: list = field(default_factory=list)
    total_oracle_queries: int = 0
    nodes_correct: int = 0
    verified: bool = False


@dataclass
class _QChoice:
    attr: int | None
    test: object
    score: object
    oracle_queries: int
    repeats: int
    true_best_attr: int | None
    correct: bool | None


def q_choose_split(view, backend, rng, repeats=None, stats=None, verify=False):
    """Attribute selection by repeated quantum maximum search.

    Attributes with no candidate split score as the invalid sentinel and
    lose every comparison. If the batch winner is itself invalid, a
    classical sweep over the scores the search already paid for looks for
    any valid candidate; finding none means no-split (attr None). The sweep
    inspects only algorithm-visible knowledge and charges nothing.
    """
    d = view.base.schema.attribute_count
    tests = {}

    def score_attribute(attr):
        if stats is not None:
            stats.evaluations += 1
        result = process_attribute(view, attr, backend)
        if result is None:
            return INVALID_SPLIT
        tests[attr] = result[1]
        return result[0]

    oracle = ScoringOracle(score_attribute, d)
    reps = default_repeats(d) if repeats is None else repeats
    winner, sstats = repeated_max(oracle, reps, rng)
    known = oracle.known()
    score = known[winner]
    if not score.valid:
        winner = None
        for attr in sorted(known):
            if known[attr].valid and (winner is None or known[winner] < known[attr]):
                winner = attr
        score = known[winner] if winner is not None else None

    true_best = None
    correct = None
    if verify:
        for attr in range(d):
            cand = oracle.peek(attr)
            if cand.valid and (true_best is None or oracle.peek(true_best) < cand):
                true_best = attr
        if winner is None:
            correct = true_best is None
        else:
            correct = true_best is not None and not (score < oracle.peek(true_best))

    return _QChoice(
        attr=winner,
        test=tests.get(winner),
        score=score,
        oracle_queries=sstats.oracle_queries,
        repeats=reps,
        true_best_attr=true_best,
        correct=correct,
    )


def q_form_tree(view, level, config, backend, rng, stats, report, repeats):
    hist = ClassHistogram.from_labels(view.labels())
    if (
        len(hist.counts) == 1
        or level >= config.max_height
        or len(view) < config.min_split
    ):
        stats.leaves += 1
        return Leaf(hist.majority(), hist)
    backend.tally.level = level
    choice = q_choose_split(view, backend, rng, repeats, stats, config.verify)
    report.total_oracle_queries += choice.oracle_queries
    report.per_node.append(
        NodeRecord(
            node_id=len(report.per_node),
            chosen_attr=choice.attr,
            true_best_attr=choice.true_best_attr,
            oracle_queries=choice.oracle_queries,
            repeats=choice.repeats,
            correct=choice.correct,
        )
    )
    if choice.attr is None:
        stats.leaves += 1
        return Leaf(hist.majority(), hist)
    stats.internal_nodes += 1
    if choice.correct:
        report.nodes_correct += 1
    children = []
    for part in partition(view, choice.test):
        if len(part) == 0:
            stats.leaves += 1
            children.append(Leaf(hist.majority(), hist))
        else:
            children.append(
                q_form_tree(part, level + 1, config, backend, rng, stats, report, repeats)
            )
    return Internal(choice.test, children, hist)


def q_train(data, config, rng=None):
    """Grows a tree with quantum-searched splits and returns its report.

    Deterministic for a fixed config.seed (or a caller-supplied rng). The
    sparse-counter backend feeds the scanners; counters only ever hold
    integers, so scoring arithmetic is identical to the classical build and
    a fully successful search sequence reproduces the classical tree byte
    for byte.
    """
    if config.backend != QUANTUM:
        raise ValueError("q_train grows quantum-searched trees only")
    if rng is None:
        rng = random.Random("qtree-%d" % (config.seed,))
    stats = BuildStats()
    backend = make_backend(TREEMAP, data.schema.class_count, stats.tally)
    report = QBuildReport(verified=config.verify)
    repeats = (
        config.repeats
        if config.repeats is not None
        else default_repeats(data.schema.attribute_count)
    )
    root = q_form_tree(
        data.full_view(), 0, config, backend, rng, stats, report, repeats
    )
    report.tree = DecisionTree(
        root, data.schema, data.class_labels, config.max_height, stats
    )
    return report


def report_to_document(report):
    """Plain-data form of a QBuildReport, stable field order."""
    rows = []
    for r in report.per_node:
        rows.append(
            {
                "node": r.node_id,
                "chosen_attr": r.chosen_attr,
                "true_best_attr": r.true_best_attr,
                "oracle_queries": r.oracle_queries,
                "repeats": r.repeats,
                "correct": r.correct,
            }
        )
    return {
        "internal_nodes": report.tree.stats.internal_nodes,
        "total_oracle_queries": report.total_oracle_queries,
        "verified": report.verified,
        "nodes_correct": report.nodes_correct if report.verified else None,
        "per_node": rows,
    }


def serialize_report(report):
    return jsonio.dumps(report_to_document(report)) + "\n"


def save_report(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_report(report))
