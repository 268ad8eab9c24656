"""Splitting-criterion mathematics and the sparse ordered-map counter.

All entropy quantities are measured in bits (base-2 logarithms). The
0 * log(0) = 0 convention applies throughout, so empty classes and empty
branches contribute nothing.
"""

import math
from dataclasses import dataclass, field

#: Partitions whose potential information falls at or below this bound are
#: trivial (essentially every sample on one branch) and must never win the
#: split argmax.
POTENTIAL_EPSILON = 1e-12


def xlog2x(n):
    """n * log2(n) with the 0 * log(0) = 0 convention."""
    return n * math.log2(n) if n > 0 else 0.0


@dataclass
class OpTally:
    """Operation counts for counter structures.

    element_ops counts per-key work (tree-node visits, array-slot touches).
    maintenance_ops counts structure-sized work: allocation, clearing and
    full iteration. Maintenance is also bucketed by the current tree level
    so builds can report where the work happened.
    """

    element_ops: int = 0
    maintenance_ops: int = 0
    level: int = 0
    by_level: dict = field(default_factory=dict)

    def element(self, n=1):
        self.element_ops += n

    def maintenance(self, n=1):
        self.maintenance_ops += n
        self.by_level[self.level] = self.by_level.get(self.level, 0) + n


class ClassHistogram:
    """Non-negative class counts plus their total."""

    __slots__ = ("counts", "total")

    def __init__(self, counts=None):
        self.counts = {}
        self.total = 0
        if counts:
            for key, value in counts.items():
                key, value = int(key), int(value)
                if value < 0:
                    raise ValueError("negative count %d for class %d" % (value, key))
                if value:
                    self.counts[key] = value
                    self.total += value

    @classmethod
    def from_labels(cls, labels):
        hist = cls()
        counts = hist.counts
        for y in labels:
            y = int(y)
            counts[y] = counts.get(y, 0) + 1
        hist.total = sum(counts.values())
        return hist

    def majority(self):
        """Most frequent class; the lowest class index wins ties."""
        if not self.counts:
            raise ValueError("empty histogram has no majority class")
        best = None
        best_count = -1
        for key in sorted(self.counts):
            if self.counts[key] > best_count:
                best, best_count = key, self.counts[key]
        return best

    def __eq__(self, other):
        if not isinstance(other, ClassHistogram):
            return NotImplemented
        return self.counts == other.counts

    def __repr__(self):
        return "ClassHistogram(%r)" % (self.counts,)


def information(hist):
    """Class entropy of a histogram in bits: -sum_j p_j * log2(p_j).

    Always in [0, log2(number of distinct classes)]. Raises on an empty
    histogram, which has no defined entropy.
    """
    if hist.total <= 0:
        raise ValueError("cannot take the information of an empty set")
    n = hist.total
    acc = 0.0
    for c in hist.counts.values():
        p = c / n
        acc -= p * math.log2(p)
    return max(0.0, acc)


def gain(parent, branches):
    """Information gain of partitioning `parent` into `branches`.

    Branch histograms must sum, class by class, to the parent histogram;
    empty branches are legal and contribute nothing.
    """
    total = sum(b.total for b in branches)
    if total != parent.total:
        raise ValueError(
            "branch sizes sum to %d but the parent holds %d samples" % (total, parent.total)
        )
    merged = {}
    for b in branches:
        for key, value in b.counts.items():
            merged[key] = merged.get(key, 0) + value
    if merged != parent.counts:
        raise ValueError("branch class counts do not sum to the parent's counts")
    g = information(parent)
    for b in branches:
        if b.total:
            g -= (b.total / parent.total) * information(b)
    return g


def potential_information(sizes):
    """Entropy of the branch-size distribution: -sum_i (n_i/n) log2(n_i/n)."""
    n = 0
    for s in sizes:
        if s < 0:
            raise ValueError("branch sizes cannot be negative")
        n += s
    if n <= 0:
        raise ValueError("all branch sizes are zero")
    acc = 0.0
    for s in sizes:
        if s:
            f = s / n
            acc -= f * math.log2(f)
    return max(0.0, acc)


@dataclass(frozen=True, eq=False)
class SplitScore:
    """Gain, potential information and their ratio for one candidate test.

    The ordering is total: invalid scores (trivial partitions) compare below
    every valid score, and valid scores compare by ratio alone. Two scores
    are order-equal when neither beats the other, which is what argmax-set
    membership checks use.
    """

    gain: float
    potential: float
    ratio: float
    valid: bool = True

    @property
    def sort_key(self):
        return (1, self.ratio) if self.valid else (0, 0.0)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __le__(self, other):
        return self.sort_key <= other.sort_key

    def __gt__(self, other):
        return self.sort_key > other.sort_key

    def __ge__(self, other):
        return self.sort_key >= other.sort_key

    def __eq__(self, other):
        if not isinstance(other, SplitScore):
            return NotImplemented
        return self.sort_key == other.sort_key

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = object.__hash__


#: The score every trivial split carries; loses every comparison against a
#: valid score. An explicit state, not a NaN or -inf marker.
INVALID_SPLIT = SplitScore(0.0, 0.0, 0.0, valid=False)


def gain_ratio(g, p):
    """Combines gain and potential information into an ordered SplitScore.

    A potential at or below POTENTIAL_EPSILON marks the split invalid instead
    of dividing by (almost) zero.
    """
    if p < 0:
        raise ValueError("potential information cannot be negative")
    if p <= POTENTIAL_EPSILON:
        return SplitScore(g, p, 0.0, valid=False)
    return SplitScore(g, p, g / p, valid=True)


class _AvlNode:
    __slots__ = ("key", "value", "left", "right", "height")

    def __init__(self, key, value):
        self.key = key
        self.value = value
        self.left = None
        self.right = None
        self.height = 1


def _height(node):
    return node.height if node is not None else 0


def _update_height(node):
    node.height = 1 + max(_height(node.left), _height(node.right))


def _balance(node):
    return _height(node.left) - _height(node.right)


class SparseClassCounter:
    """Ordered counter that stores only keys with non-zero counts.

    Backed by an AVL tree, so add/get/remove visit O(log s) nodes and full
    iteration or clearing visits exactly s nodes, where s is the number of
    stored keys. Every node visit is recorded in the attached OpTally, which
    is what the complexity probes measure. Keys may be any mutually ordered
    values (class indices, (class, branch) pairs).
    """

    def __init__(self, tally=None):
        self._root = None
        self._size = 0
        self.tally = tally if tally is not None else OpTally()

    def __len__(self):
        return self._size

    def get(self, key):
        node = self._root
        while node is not None:
            self.tally.element()
            if key == node.key:
                return node.value
            node = node.left if key < node.key else node.right
        return 0

    def add(self, key, delta=1):
        """Adds delta to key's count and returns the new count.

        Keys whose count reaches zero are removed; a count may never go
        negative.
        """
        if delta == 0:
            return self.get(key)
        current = self.get(key)
        new = current + delta
        if new < 0:
            raise ValueError("count for key %r would become negative" % (key,))
        if current == 0:
            self._root = self._insert(self._root, key, new)
            self._size += 1
        elif new == 0:
            self._root = self._delete(self._root, key)
            self._size -= 1
        else:
            self._overwrite(key, new)
        return new

    def items(self):
        """All (key, count) pairs in ascending key order."""
        self.tally.maintenance(self._size)
        out = []
        stack = []
        node = self._root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            out.append((node.key, node.value))
            node = node.right
        return out

    def clear(self):
        self.tally.maintenance(self._size)
        self._root = None
        self._size = 0

    def _overwrite(self, key, value):
        node = self._root
        while True:
            self.tally.element()
            if key == node.key:
                node.value = value
                return
            node = node.left if key < node.key else node.right

    def _insert(self, node, key, value):
        self.tally.element()
        if node is None:
            return _AvlNode(key, value)
        if key < node.key:
            node.left = self._insert(node.left, key, value)
        else:
            node.right = self._insert(node.right, key, value)
        return self._rebalance(node)

    def _delete(self, node, key):
        if node is None:
            return None
        self.tally.element()
        if key < node.key:
            node.left = self._delete(node.left, key)
        elif key > node.key:
            node.right = self._delete(node.right, key)
        else:
            if node.left is None:
                return node.right
            if node.right is None:
                return node.left
            succ = node.right
            while succ.left is not None:
                self.tally.element()
                succ = succ.left
            node.key, node.value = succ.key, succ.value
            node.right = self._delete(node.right, succ.key)
        return self._rebalance(node)

    def _rebalance(self, node):
        _update_height(node)
        b = _balance(node)
        if b > 1:
            if _balance(node.left) < 0:
                node.left = self._rotate_left(node.left)
            return self._rotate_right(node)
        if b < -1:
            if _balance(node.right) > 0:
                node.right = self._rotate_right(node.right)
            return self._rotate_left(node)
        return node

    def _rotate_right(self, y):
        self.tally.element()
        x = y.left
        y.left = x.right
        x.right = y
        _update_height(y)
        _update_height(x)
        return x

    def _rotate_left(self, x):
        self.tally.element()
        y = x.right
        x.right = y.left
        y.left = x
        _update_height(x)
        _update_height(y)
        return y
