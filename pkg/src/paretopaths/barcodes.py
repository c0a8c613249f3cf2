"""Path-wise barcodes and the structural equivalence of barcodes.

Bars open at create events and close at kill events; a killing k-handle
closes an open bar of dimension k-1, chosen by the LIFO rule (the
youngest open bar dies) unless the effect annotation names its partner.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import InconsistentLabelingError
from .paths import PersistencePath


@dataclass(frozen=True)
class Bar:
    dim: int
    birth: float
    death: float | None  # None = infinite
    birth_key: str
    death_key: str | None

    @property
    def lifetime(self) -> float:
        return float("inf") if self.death is None else self.death - self.birth


@dataclass(frozen=True)
class Barcode:
    bars: tuple[Bar, ...]

    def bars_in_dim(self, q: int) -> list[Bar]:
        return sorted((b for b in self.bars if b.dim == q), key=lambda b: b.birth)

    def dims(self) -> list[int]:
        return sorted({b.dim for b in self.bars})

    def infinite_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.bars:
            if b.death is None:
                out[b.dim] = out.get(b.dim, 0) + 1
        return out

    def to_json(self) -> dict:
        dims = {}
        for q in self.dims():
            dims[str(q)] = [[b.birth, b.death, b.birth_key, b.death_key]
                            for b in self.bars_in_dim(q)]
        return {"dims": dims}


def compute_barcode(path: PersistencePath) -> Barcode:
    """Sweep the crossing events in s order into bars."""
    open_bars: dict[int, list[dict]] = {}
    closed: list[dict] = []
    for ev in path.crossings:
        if ev.effect == "create":
            open_bars.setdefault(ev.cell_dim, []).append(
                {"dim": ev.cell_dim, "birth": ev.s, "birth_key": ev.key})
        else:
            q = ev.cell_dim - 1
            stack = open_bars.get(q, [])
            if not stack:
                raise InconsistentLabelingError(
                    f"kill {ev.key} at s={ev.s:.4f} with no open bar in dimension {q}")
            pick = len(stack) - 1
            if ev.pairs_with is not None:
                named = [i for i, b in enumerate(stack)
                         if b["birth_key"] == ev.pairs_with
                         or b["birth_key"].split("#")[0] == ev.pairs_with]
                if not named:
                    raise InconsistentLabelingError(
                        f"kill {ev.key} names partner {ev.pairs_with} but no such bar is open")
                pick = named[-1]
            bar = stack.pop(pick)
            bar["death"] = ev.s
            bar["death_key"] = ev.key
            closed.append(bar)
    for q, stack in open_bars.items():
        for bar in stack:
            bar["death"] = None
            bar["death_key"] = None
            closed.append(bar)
    bars = tuple(sorted(
        (Bar(dim=b["dim"], birth=b["birth"], death=b["death"],
             birth_key=b["birth_key"], death_key=b["death_key"]) for b in closed),
        key=lambda b: (b.dim, b.birth)))
    return Barcode(bars=bars)


def _symbol_sequence(bc: Barcode) -> tuple:
    """Structure of the barcode: events in s order with pairing indices.

    Each birth is (dim, "b"); each death is (dim, "d", i) where i is the
    dying bar's rank in its dimension's birth order.  Lengths are ignored.
    """
    events = []
    for q in bc.dims():
        bars = bc.bars_in_dim(q)
        for rank, bar in enumerate(bars):
            events.append((bar.birth, q, 0, ("b", q)))
            if bar.death is not None:
                events.append((bar.death, q, 1, ("d", q, rank)))
    events.sort(key=lambda e: (e[0], e[1], e[2]))
    return tuple(e[3] for e in events)


def barcodes_equivalent(b1: Barcode, b2: Barcode) -> bool:
    """Same bar counts per dimension and the same birth/death sequence.

    Bars may vary by length; only the interleaving order and the pairing
    structure are compared.
    """
    for q in set(b1.dims()) | set(b2.dims()):
        if len(b1.bars_in_dim(q)) != len(b2.bars_in_dim(q)):
            return False
    return _symbol_sequence(b1) == _symbol_sequence(b2)


def equivalence_classes(family) -> list[list[PersistencePath]]:
    """Partition paths by barcode equivalence; classes ordered by first member."""
    paths = list(family.paths if hasattr(family, "paths") else family)
    classes: list[tuple[tuple, list[PersistencePath]]] = []
    for p in paths:
        sym = _symbol_sequence(compute_barcode(p))
        for key, members in classes:
            if key == sym:
                members.append(p)
                break
        else:
            classes.append((sym, [p]))
    return [members for _, members in classes]
