"""Training-data model: attribute schema, CSV ingestion and row subsets.

Attributes are either real-valued or discrete over {1..T}. Class labels in
files are arbitrary strings; ingestion maps them to 1..M in order of first
appearance and keeps the mapping on the dataset so models can report the
original names.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

REAL = "real"
DISCRETE = "discrete"


class DataFormatError(ValueError):
    """A CSV or schema file deviates from the declared format."""


@dataclass(frozen=True)
class Attribute:
    """One column of the training matrix."""

    name: str
    kind: str
    domain_size: int | None = None

    def __post_init__(self):
        if self.kind not in (REAL, DISCRETE):
            raise ValueError("attribute kind must be %r or %r, got %r" % (REAL, DISCRETE, self.kind))
        if self.kind == DISCRETE:
            if self.domain_size is None or self.domain_size < 2:
                raise ValueError("discrete attribute %r needs a domain size of at least 2" % (self.name,))
        elif self.domain_size is not None:
            raise ValueError("real attribute %r cannot declare a domain size" % (self.name,))


@dataclass(frozen=True)
class AttributeSchema:
    attributes: tuple
    class_count: int

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        if not self.attributes:
            raise ValueError("a schema needs at least one attribute")
        if self.class_count < 1:
            raise ValueError("a schema needs at least one class")
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError("attribute names must be unique")

    @property
    def attribute_count(self):
        return len(self.attributes)

    @property
    def real_indices(self):
        return tuple(j for j, a in enumerate(self.attributes) if a.kind == REAL)

    @property
    def discrete_indices(self):
        return tuple(j for j, a in enumerate(self.attributes) if a.kind == DISCRETE)

    def is_real(self, attr):
        return self.attributes[attr].kind == REAL

    def domain_size(self, attr):
        return self.attributes[attr].domain_size


class Dataset:
    """Immutable training matrix with labels, stored column-wise."""

    def __init__(self, schema, columns, labels, class_labels):
        self.schema = schema
        self.columns = []
        for j, col in enumerate(columns):
            kind = schema.attributes[j].kind if j < schema.attribute_count else REAL
            dtype = np.float64 if kind == REAL else np.int64
            self.columns.append(np.asarray(col, dtype=dtype))
        self.labels = np.asarray(labels, dtype=np.int64)
        self.class_labels = tuple(class_labels)
        self._validate()

    def _validate(self):
        n = len(self.labels)
        if n < 1:
            raise DataFormatError("empty training set")
        if len(self.columns) != self.schema.attribute_count:
            raise ValueError(
                "%d columns for %d attributes" % (len(self.columns), self.schema.attribute_count)
            )
        for j, col in enumerate(self.columns):
            a = self.schema.attributes[j]
            if len(col) != n:
                raise ValueError("column %r has %d values for %d rows" % (a.name, len(col), n))
            if a.kind == REAL:
                if not np.all(np.isfinite(col)):
                    raise DataFormatError("non-finite value in attribute %r" % (a.name,))
            else:
                if len(col) and (col.min() < 1 or col.max() > a.domain_size):
                    raise DataFormatError(
                        "attribute %r holds values outside 1..%d" % (a.name, a.domain_size)
                    )
        if self.labels.min() < 1 or self.labels.max() > self.schema.class_count:
            raise DataFormatError("class indices outside 1..%d" % (self.schema.class_count,))
        if len(self.class_labels) != self.schema.class_count:
            raise ValueError("need one label name per class")

    @property
    def n_rows(self):
        return len(self.labels)

    def column(self, attr):
        return self.columns[attr]

    def row(self, i):
        return tuple(self.columns[j][i] for j in range(self.schema.attribute_count))

    def full_view(self):
        return SubsetView(self, np.arange(self.n_rows, dtype=np.int64))

    def label_name(self, class_index):
        return self.class_labels[class_index - 1]


class SubsetView:
    """An ordered, duplicate-free selection of dataset rows by index."""

    __slots__ = ("base", "indices")

    def __init__(self, base, indices):
        self.base = base
        self.indices = np.asarray(indices, dtype=np.int64)
        if len(self.indices):
            if self.indices.min() < 0 or self.indices.max() >= base.n_rows:
                raise IndexError("row index outside 0..%d" % (base.n_rows - 1,))
            if len(np.unique(self.indices)) != len(self.indices):
                raise ValueError("duplicate row indices in view")

    def __len__(self):
        return len(self.indices)

    def labels(self):
        return self.base.labels[self.indices]

    def values(self, attr):
        return self.base.column(attr)[self.indices]

    def label_counts(self):
        keys, counts = np.unique(self.labels(), return_counts=True)
        return {int(k): int(c) for k, c in zip(keys, counts)}

    def is_pure(self):
        labels = self.labels()
        return len(labels) > 0 and bool(np.all(labels == labels[0]))


def partition(view, test):
    """Splits a view by a node test, preserving row order.

    Real tests give two views (x <= theta first); discrete tests give one
    view per domain value in value order, empty views permitted.
    """
    values = view.values(test.attr)
    if test.kind == REAL:
        mask = values <= test.theta
        return [
            SubsetView(view.base, view.indices[mask]),
            SubsetView(view.base, view.indices[~mask]),
        ]
    out = []
    for w in range(1, test.branch_count + 1):
        out.append(SubsetView(view.base, view.indices[values == w]))
    return out


def read_schema(path):
    """Parses the sidecar schema: one `name,real` or `name,discrete,T` line per attribute."""
    attrs = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            name = row[0].strip()
            kind = row[1].strip().lower() if len(row) > 1 else ""
            if kind == REAL and len(row) == 2:
                attrs.append(Attribute(name, REAL))
            elif kind == DISCRETE and len(row) == 3:
                try:
                    t = int(row[2])
                except ValueError:
                    raise DataFormatError(
                        "%s line %d: %r is not a domain size" % (path, lineno, row[2])
                    ) from None
                attrs.append(Attribute(name, DISCRETE, t))
            else:
                raise DataFormatError(
                    "%s line %d: expected 'name,real' or 'name,discrete,T'" % (path, lineno)
                )
    if not attrs:
        raise DataFormatError("%s declares no attributes" % (path,))
    return tuple(attrs)


def write_schema(attributes, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for a in attributes:
            if a.kind == REAL:
                fh.write("%s,%s\n" % (a.name, REAL))
            else:
                fh.write("%s,%s,%d\n" % (a.name, DISCRETE, a.domain_size))


def _parse_value(token, attribute, path, lineno):
    token = token.strip()
    if attribute.kind == REAL:
        try:
            v = float(token)
        except ValueError:
            raise DataFormatError(
                "%s line %d, column %r: %r is not a number"
                % (path, lineno, attribute.name, token)
            ) from None
        if not math.isfinite(v):
            raise DataFormatError(
                "%s line %d, column %r: values must be finite" % (path, lineno, attribute.name)
            )
        return v
    try:
        v = int(token)
    except ValueError:
        raise DataFormatError(
            "%s line %d, column %r: %r is not an integer" % (path, lineno, attribute.name, token)
        ) from None
    if not 1 <= v <= attribute.domain_size:
        raise DataFormatError(
            "%s line %d, column %r: value %d outside 1..%d"
            % (path, lineno, attribute.name, v, attribute.domain_size)
        )
    return v


def load_csv(path, attributes):
    """Loads a labeled CSV whose header is the attribute names plus `class`."""
    attributes = tuple(attributes)
    d = len(attributes)
    expected = [a.name for a in attributes] + ["class"]
    cols = [[] for _ in range(d)]
    labels = []
    mapping = {}
    names = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataFormatError("%s: missing header row" % (path,))
        if [h.strip() for h in header] != expected:
            raise DataFormatError(
                "%s: header %r does not match schema columns %r" % (path, header, expected)
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != d + 1:
                raise DataFormatError(
                    "%s line %d: expected %d fields, got %d" % (path, lineno, d + 1, len(row))
                )
            for j, a in enumerate(attributes):
                cols[j].append(_parse_value(row[j], a, path, lineno))
            label = row[d].strip()
            if label not in mapping:
                mapping[label] = len(names) + 1
                names.append(label)
            labels.append(mapping[label])
    if not labels:
        raise DataFormatError("%s: empty training set" % (path,))
    schema = AttributeSchema(attributes, class_count=len(names))
    return Dataset(schema, cols, labels, tuple(names))


def save_csv(data, path):
    """Writes a dataset back out in the load_csv format."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([a.name for a in data.schema.attributes] + ["class"])
        for i in range(data.n_rows):
            row = []
            for j, a in enumerate(data.schema.attributes):
                v = data.columns[j][i]
                row.append(repr(float(v)) if a.kind == REAL else str(int(v)))
            row.append(data.label_name(int(data.labels[i])))
            writer.writerow(row)


def load_feature_rows(path, attributes):
    """Reads feature rows for prediction.

    The header must list the attribute names; a trailing `class` column is
    tolerated and ignored so training files can be fed back in.
    """
    attributes = tuple(attributes)
    d = len(attributes)
    names = [a.name for a in attributes]
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataFormatError("%s: missing header row" % (path,))
        header = [h.strip() for h in header]
        if header == names:
            labeled = False
        elif header == names + ["class"]:
            labeled = True
        else:
            raise DataFormatError(
                "%s: header %r does not match schema columns %r" % (path, header, names)
            )
        width = d + 1 if labeled else d
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width:
                raise DataFormatError(
                    "%s line %d: expected %d fields, got %d" % (path, lineno, width, len(row))
                )
            rows.append(tuple(_parse_value(row[j], a, path, lineno) for j, a in enumerate(attributes)))
    return rows
