"""Graphon kernels: bounded symmetric functions on the unit square.

A graphon is evaluated pointwise on [0,1]^2 and is either analytic (a
closure) or a piecewise-constant grid induced by an adjacency matrix.
Values are immutable after construction, so graphons are safe to share
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graphon",
    "erdos_renyi",
    "sin_product",
    "exp_sum",
    "exp_distance",
    "empirical_graphon",
    "l2_distance",
    "grid_to_csv",
    "grid_from_csv",
]


@dataclass(frozen=True)
class Graphon:
    """Symmetric kernel W : [0,1]^2 -> [0,1].

    ``kind`` is "analytic" (``func`` holds a vectorized closure) or "grid"
    (``grid`` holds a square symmetric matrix of cell values).  Grid cells
    are half-open, [i/M, (i+1)/M) in each coordinate, with the final cell
    closed at 1.0 so evaluation is total on the square.
    """

    kind: str
    label: str
    func: object = None
    grid: np.ndarray = field(default=None, repr=False)

    def eval(self, x, y):
        """Evaluate W(x, y).  Accepts scalars or broadcastable arrays."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if np.any(x < 0) or np.any(x > 1) or np.any(y < 0) or np.any(y > 1):
            raise ValueError("graphon arguments must lie in [0, 1]")
        if self.kind == "grid":
            m = self.grid.shape[0]
            i = np.minimum((x * m).astype(int), m - 1)
            j = np.minimum((y * m).astype(int), m - 1)
            out = self.grid[i, j]
        else:
            out = self.func(x, y)
        if np.ndim(out) == 0 and np.ndim(x) == 0 and np.ndim(y) == 0:
            return float(out)
        return np.broadcast_to(out, np.broadcast_shapes(x.shape, y.shape)).astype(float)

    @property
    def side(self):
        """Grid side M, or None for analytic kernels."""
        return None if self.grid is None else self.grid.shape[0]


def _analytic(label, func):
    return Graphon(kind="analytic", label=label, func=func)


def erdos_renyi(p: float) -> Graphon:
    """Constant kernel W(x,y) = p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"er: edge probability must be in [0,1], got {p}")
    return _analytic(f"er:{p:g}", lambda x, y: np.broadcast_to(float(p), np.broadcast_shapes(np.shape(x), np.shape(y))))


def sin_product(a: float, b: float, c: float) -> Graphon:
    """W(x,y) = a + b*sin(c*pi*x*y).  Requires b >= 0, a-b >= 0, a+b <= 1."""
    if b < 0 or a - b < 0 or a + b > 1:
        raise ValueError(f"sinprod: need b >= 0, a-b >= 0 and a+b <= 1, got a={a}, b={b}")
    return _analytic(f"sinprod:{a:g},{b:g},{c:g}",
                     lambda x, y: a + b * np.sin(c * np.pi * np.asarray(x) * np.asarray(y)))


def exp_sum(alpha: float) -> Graphon:
    """W(x,y) = exp(-alpha*(x+y)).  Requires alpha >= 0."""
    if alpha < 0:
        raise ValueError(f"expsum: decay rate must be nonnegative, got {alpha}")
    return _analytic(f"expsum:{alpha:g}",
                     lambda x, y: np.exp(-alpha * (np.asarray(x) + np.asarray(y))))


def exp_distance(alpha: float) -> Graphon:
    """W(x,y) = exp(-alpha*|x-y|).  Requires alpha >= 0."""
    if alpha < 0:
        raise ValueError(f"expdist: decay rate must be nonnegative, got {alpha}")
    return _analytic(f"expdist:{alpha:g}",
                     lambda x, y: np.exp(-alpha * np.abs(np.asarray(x) - np.asarray(y))))


def grid_graphon(grid: np.ndarray, label: str = "grid") -> Graphon:
    """Wrap a square symmetric matrix of values in [0,1] as a grid graphon."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise ValueError("grid graphon requires a square matrix")
    if not np.allclose(grid, grid.T):
        raise ValueError("grid graphon requires a symmetric matrix")
    if grid.min() < 0 or grid.max() > 1:
        raise ValueError("grid graphon values must lie in [0, 1]")
    g = grid.copy()
    g.flags.writeable = False
    return Graphon(kind="grid", label=label, grid=g)


def empirical_graphon(graph) -> Graphon:
    """Piecewise-constant graphon induced by a graph's adjacency matrix.

    Cell (i, j) holds 1 if the edge exists and 0 otherwise; diagonal cells
    are 0 because the graphs here are simple.
    """
    adj = graph.adjacency.astype(float)
    return grid_graphon(adj, label=f"empirical:{graph.n}")


def eval_graphon(w: Graphon, x, y):
    """Pointwise kernel evaluation; function-call form of ``Graphon.eval``."""
    return w.eval(x, y)


def l2_distance(w1: Graphon, w2: Graphon, grid_side: int) -> float:
    """L2 distance on [0,1]^2 by the midpoint rule on a grid_side^2 mesh.

    Exact for piecewise-constant integrands aligned with the mesh;
    symmetric in its arguments and zero iff the kernels agree on the mesh.
    """
    if grid_side < 1:
        raise ValueError("grid_side must be positive")
    mids = (np.arange(grid_side) + 0.5) / grid_side
    x = mids[:, None]
    y = mids[None, :]
    diff = w1.eval(x, y) - w2.eval(x, y)
    return float(math.sqrt(np.mean(diff ** 2)))


def grid_to_csv(w: Graphon, path) -> None:
    """Write a grid graphon as a dense CSV of reals, one row per line, no header."""
    if w.kind != "grid":
        raise ValueError("only grid graphons serialize to CSV")
    np.savetxt(path, w.grid, delimiter=",")


def grid_from_csv(path, label: str = "file") -> Graphon:
    """Read a grid graphon from a dense headerless CSV."""
    grid = np.loadtxt(path, delimiter=",", ndmin=2)
    return grid_graphon(grid, label=label)
