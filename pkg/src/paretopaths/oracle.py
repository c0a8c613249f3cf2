"""Brute-force sublevel homology over Z/2 for sampled cell models.

Ground truth for calibrating index conventions and verifying region
labels and persistent Betti numbers.  Plain Gaussian elimination with
python-int bitsets; models stay small enough that nothing cleverer is
needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import InvalidInputError, OrderError, PoincarePolynomial
from .geometry import Point


@dataclass
class SampledModel:
    """Finite regular cell complex with mod-2 boundary lists.

    cells[i] = (dim, boundary cell ids); boundary lists may carry
    multiplicity and are reduced mod 2 on construction.  vertex_values
    maps 0-cells to their image points under the sampled map.
    """

    name: str
    cells: list[tuple[int, list[int]]]
    vertex_values: dict[int, Point]
    _closure_verts: list[frozenset[int]] = field(default=None, repr=False)  # type: ignore

    def __post_init__(self):
        raw = [(dim, list(bnd)) for dim, bnd in self.cells]
        reduced = []
        for ci, (dim, bnd) in enumerate(raw):
            counts: dict[int, int] = {}
            for b in bnd:
                counts[b] = counts.get(b, 0) + 1
                if self.cells[b][0] != dim - 1:
                    raise InvalidInputError(
                        f"cell {ci} (dim {dim}) has boundary cell {b} of dim "
                        f"{self.cells[b][0]}")
            reduced.append((dim, sorted(b for b, c in counts.items() if c % 2 == 1)))
        self.cells = reduced
        # d d = 0 over Z/2
        for ci, (dim, bnd) in enumerate(self.cells):
            if dim < 2:
                continue
            counts = {}
            for b in bnd:
                for bb in self.cells[b][1]:
                    counts[bb] = counts.get(bb, 0) + 1
            if any(c % 2 for c in counts.values()):
                raise InvalidInputError(f"boundary of boundary of cell {ci} is nonzero")
        # closure vertices follow the raw lists so mod-2 cancellation cannot
        # detach a cell from its vertices
        closure: list[frozenset[int]] = []
        for ci, (dim, bnd) in enumerate(raw):
            if dim == 0:
                closure.append(frozenset([ci]))
            else:
                acc: set[int] = set()
                for b in bnd:
                    acc |= closure[b]
                closure.append(frozenset(acc))
        self._closure_verts = closure

    @property
    def dim(self) -> int:
        return max((d for d, _ in self.cells), default=0)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "cells": [{"dim": d, "boundary": list(b)} for d, b in self.cells],
            "vertex_values": {str(k): [v[0], v[1]]
                              for k, v in sorted(self.vertex_values.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "SampledModel":
        try:
            cells = [(int(c["dim"]), [int(b) for b in c["boundary"]])
                     for c in data["cells"]]
            vv = {int(k): (float(x), float(y))
                  for k, (x, y) in data["vertex_values"].items()}
            return cls(name=data.get("name", "model"), cells=cells, vertex_values=vv)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed model JSON: {exc}") from exc


def sublevel_complex(model: SampledModel, a: float, b: float) -> list[int]:
    """Lower-star rule: cells whose closure vertices all map into C_(a,b)."""
    vv = model.vertex_values
    ok = {v: (vv[v][0] <= a and vv[v][1] <= b) for v in vv}
    out = []
    for ci, verts in enumerate(model._closure_verts):
        if all(ok.get(v, False) for v in verts):
            out.append(ci)
    return out


def _gf2_rank(columns: list[int]) -> int:
    """Rank of a set of bit-columns over GF(2)."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            p = col.bit_length() - 1
            other = pivots.get(p)
            if other is None:
                pivots[p] = col
                rank += 1
                break
            col ^= other
    return rank


def _boundary_columns(model: SampledModel, cells: list[int], dim: int,
                      row_pos: dict[int, int]) -> list[int]:
    cols = []
    for ci in cells:
        d, bnd = model.cells[ci]
        if d != dim:
            continue
        col = 0
        for b in bnd:
            col |= 1 << row_pos[b]
        cols.append(col)
    return cols


def betti(model: SampledModel, subcells: list[int]) -> PoincarePolynomial:
    """Z/2 Betti numbers of a subcomplex via boundary-matrix elimination."""
    by_dim: dict[int, list[int]] = {}
    for ci in subcells:
        by_dim.setdefault(model.cells[ci][0], []).append(ci)
    if not by_dim:
        return PoincarePolynomial(())
    top = max(by_dim)
    ranks: dict[int, int] = {}
    for d in range(1, top + 1):
        rows = by_dim.get(d - 1, [])
        row_pos = {ci: k for k, ci in enumerate(rows)}
        cols = _boundary_columns(model, by_dim.get(d, []), d, row_pos)
        ranks[d] = _gf2_rank(cols)
    coeffs = []
    for d in range(top + 1):
        n_d = len(by_dim.get(d, []))
        coeffs.append(n_d - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return PoincarePolynomial(tuple(coeffs))


def region_polynomials(model: SampledModel, arr) -> dict[str, PoincarePolynomial]:
    """Betti polynomial of the sublevel set at each face's sample point."""
    out = {}
    for f in arr.faces:
        a, b = f.sample
        out[f.id] = betti(model, sublevel_complex(model, a, b))
    return out


def pbn_oracle(model: SampledModel, p: Point, q: Point, hom_dim: int) -> int:
    """Rank of H_q(sublevel(p)) -> H_q(sublevel(q)) induced by inclusion.

    dim Z_q(X) minus the dimension of boundaries of Y supported on X,
    computed from a column echelon of the Y boundary matrix with X-cells
    packed into the low bit positions.
    """
    if p[0] > q[0] or p[1] > q[1]:
        raise OrderError(f"{p} does not precede {q} in the poset")
    x_cells = set(sublevel_complex(model, p[0], p[1]))
    y_cells = sublevel_complex(model, q[0], q[1])

    xq = [ci for ci in x_cells if model.cells[ci][0] == hom_dim]
    if not xq:
        return 0
    yq = [ci for ci in y_cells if model.cells[ci][0] == hom_dim]
    yq1 = [ci for ci in y_cells if model.cells[ci][0] == hom_dim + 1]

    # rank of the boundary map out of X_q (inside X)
    x_rows = [ci for ci in x_cells if model.cells[ci][0] == hom_dim - 1]
    row_pos_x = {ci: k for k, ci in enumerate(x_rows)}
    z_dim = len(xq) - _gf2_rank(_boundary_columns(model, sorted(xq), hom_dim, row_pos_x))

    # boundaries of Y supported on X-cells: echelon with X cells low
    rows_low = sorted(ci for ci in yq if ci in x_cells)
    rows_high = sorted(ci for ci in yq if ci not in x_cells)
    row_pos_y = {ci: k for k, ci in enumerate(rows_low + rows_high)}
    n_low = len(rows_low)
    pivots: dict[int, int] = {}
    supported = 0
    for col in _boundary_columns(model, sorted(yq1), hom_dim + 1, row_pos_y):
        while col:
            pbit = col.bit_length() - 1
            other = pivots.get(pbit)
            if other is None:
                pivots[pbit] = col
                if pbit < n_low:
                    supported += 1
                break
            col ^= other
    return z_dim - supported
