"""Reader for the pickled Planetoid ``ind.<name>.*`` files.

Needs numpy and scipy; neither is required by the extension module itself.
"""

import pickle
from pathlib import Path

import numpy as np


def _load(path):
    with open(path, "rb") as fh:
        return pickle.load(fh, encoding="latin1")


def load_planetoid(root, name="cora"):
    """Return ``(edges, features, labels)`` for the whole graph.

    ``edges`` is a list of undirected ``(u, v)`` pairs with ``u < v``,
    ``features`` a dense float64 array and ``labels`` an int array.
    Test nodes missing from the index file (citeseer) get zero features and
    label -1.
    """
    import scipy.sparse as sp

    root = Path(root)
    parts = {k: _load(root / f"ind.{name}.{k}") for k in ("x", "y", "tx", "ty", "allx", "ally", "graph")}
    test_idx = [int(line) for line in (root / f"ind.{name}.test.index").read_text().split()]
    test_sorted = np.sort(test_idx)

    tx, ty = parts["tx"], parts["ty"]
    if name == "citeseer":
        full = np.arange(test_sorted.min(), test_sorted.max() + 1)
        tx_ext = sp.lil_matrix((len(full), tx.shape[1]))
        tx_ext[test_sorted - test_sorted.min(), :] = tx
        ty_ext = np.zeros((len(full), ty.shape[1]))
        ty_ext[test_sorted - test_sorted.min(), :] = ty
        tx, ty = tx_ext, ty_ext

    feats = sp.vstack((parts["allx"], tx)).tolil()
    feats[test_idx, :] = feats[test_sorted, :]
    onehot = np.vstack((parts["ally"], ty))
    onehot[test_idx, :] = onehot[test_sorted, :]

    labels = np.where(onehot.sum(axis=1) > 0, onehot.argmax(axis=1), -1).astype(np.int64)
    n = feats.shape[0]
    edges = set()
    for u, nbrs in parts["graph"].items():
        for v in nbrs:
            if u != v and u < n and v < n:
                edges.add((min(u, v), max(u, v)))
    return sorted(edges), np.asarray(feats.todense(), dtype=np.float64), labels
