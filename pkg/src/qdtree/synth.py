"""Seeded synthetic datasets for tests, benchmarks and self-checks.

Two label regimes. Uniform labels drawn independently of the attributes
exercise scoring and backend-identity properties on noise. Planted labels
come from a hidden random tree over the attributes, so grown nodes have a
strict best attribute and search-success accounting is well-defined.

All generators take explicit seeds and derive independent random streams
from them, so the same seed always reproduces the same dataset and varying
one parameter (say, the declared class count) cannot shift another stream.
"""

import random

from .dataset import DISCRETE, REAL, Attribute, AttributeSchema, Dataset


def class_names(count):
    return tuple("c%d" % j for j in range(1, count + 1))


def random_schema(d, class_count, seed, kinds="mixed", max_domain=6):
    """Schema of d attributes; kinds is "real", "discrete" or "mixed"."""
    rng = random.Random("schema-%s" % (seed,))
    attrs = []
    for j in range(d):
        if kinds == "mixed":
            kind = rng.choice((REAL, DISCRETE))
        else:
            kind = kinds
        if kind == REAL:
            attrs.append(Attribute("a%d" % j, REAL))
        else:
            attrs.append(Attribute("a%d" % j, DISCRETE, rng.randint(2, max_domain)))
    return AttributeSchema(tuple(attrs), class_count)


def random_dataset(schema, n, seed):
    """Uniform attribute values and uniform labels, all independent."""
    rng = random.Random("data-%s" % (seed,))
    columns = []
    for a in schema.attributes:
        if a.kind == REAL:
            columns.append([rng.random() for _ in range(n)])
        else:
            columns.append([rng.randint(1, a.domain_size) for _ in range(n)])
    labels = [rng.randint(1, schema.class_count) for _ in range(n)]
    return Dataset(schema, columns, labels, class_names(schema.class_count))


def planted_dataset(n, d, depth, seed):
    """Real attributes labeled by a hidden complete binary tree.

    Level l of the hidden tree tests attribute perm[l] (a seeded sample of
    distinct attributes), each node at its own threshold; the leaf index is
    the class, so there are 2**depth classes. Thresholds sit in the middle
    of the unit interval so every branch keeps a healthy share of samples.
    """
    if not 1 <= depth <= d:
        raise ValueError("depth must be in 1..d")
    rng = random.Random("plant-%s" % (seed,))
    schema = AttributeSchema(
        tuple(Attribute("a%d" % j, REAL) for j in range(d)), 2 ** depth
    )
    perm = rng.sample(range(d), depth)
    thetas = {}
    for node in range(1, 2 ** depth):
        thetas[node] = rng.uniform(0.35, 0.65)
    columns = [[rng.random() for _ in range(n)] for _ in range(d)]
    labels = []
    for i in range(n):
        node = 1
        for level in range(depth):
            right = columns[perm[level]][i] > thetas[node]
            node = 2 * node + (1 if right else 0)
        labels.append(node - 2 ** depth + 1)
    return Dataset(schema, columns, labels, class_names(schema.class_count))


def grid_dataset(n, d, seed, class_count=4):
    """Fixed two-level plant whose columns ignore the declared class count.

    Labels always lie in {1..4} (attribute 0 over attribute 1, thresholds at
    0.5), while the schema declares class_count classes. Generating the same
    (n, d, seed) under different class counts yields identical columns and
    labels, which is exactly what counter-scaling comparisons need: only the
    declared class universe grows.
    """
    if d < 2:
        raise ValueError("need at least 2 attributes")
    if class_count < 4:
        raise ValueError("labels occupy {1..4}; class_count must be >= 4")
    rng = random.Random("grid-%s" % (seed,))
    schema = AttributeSchema(
        tuple(Attribute("a%d" % j, REAL) for j in range(d)), class_count
    )
    columns = [[rng.random() for _ in range(n)] for _ in range(d)]
    labels = [
        1 + 2 * (1 if columns[0][i] > 0.5 else 0) + (1 if columns[1][i] > 0.5 else 0)
        for i in range(n)
    ]
    return Dataset(schema, columns, labels, class_names(class_count))
