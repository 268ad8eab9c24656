"""Growing and reading classical trees.

Trains on the XOR square (which defeats any single split) and on a planted
dataset whose true generating tree is known, then prints both models.
"""

from qdtree.builder import BuildConfig, classify, format_tree, train, training_accuracy
from qdtree.dataset import Attribute, AttributeSchema, Dataset
from qdtree.oracle import exhaustive_depth1_accuracy
from qdtree.synth import planted_dataset

schema = AttributeSchema((Attribute("x1", "real"), Attribute("x2", "real")), 2)
xor = Dataset(
    schema,
    [[0.0, 0.0, 1.0, 1.0], [0.0, 1.0, 0.0, 1.0]],
    [1, 2, 2, 1],
    ("same", "diff"),
)

print("XOR labels: no depth-1 tree beats the majority guess.")
print("best depth-1 training accuracy:", exhaustive_depth1_accuracy(xor.full_view()))

tree = train(xor, BuildConfig(max_height=2))
print()
print(format_tree(tree))
print("training accuracy: %.2f" % training_accuracy(tree, xor))
print("(0,1) ->", tree.class_labels[classify(tree, (0.0, 1.0)) - 1])
print()

# a 6-attribute dataset generated by a hidden depth-2 tree: the builder
# should rediscover splits close to the planted thresholds
data = planted_dataset(n=120, d=6, depth=2, seed=5)
tree = train(data, BuildConfig(max_height=4))
print("planted depth-2 rule over 6 attributes, 120 samples:")
print(format_tree(tree))
print(
    "internal nodes=%d leaves=%d train_acc=%.3f"
    % (
        tree.stats.internal_nodes,
        tree.stats.leaves,
        training_accuracy(tree, data),
    )
)
