"""Handle counts, the Morse-Conley equation, and Morse inequalities per path."""
from __future__ import annotations

from dataclasses import dataclass

from .core import PoincarePolynomial
from .paths import PersistencePath


@dataclass(frozen=True)
class MorseReport:
    c: tuple[int, ...]  # c[j] = number of j-handles along the path
    q_poly: tuple[int, ...] | None  # Q with sum c_j t^j = P + (1+t) Q; None on failure
    q_failure: str | None
    chi: int
    euler_ok: bool
    weak: tuple[bool, ...]
    strong: tuple[bool, ...]

    @property
    def euler(self) -> bool:
        return self.euler_ok

    @property
    def all_ok(self) -> bool:
        return (self.q_failure is None and self.euler_ok
                and all(self.weak) and all(self.strong))

    def to_json(self) -> dict:
        return {
            "c": list(self.c),
            "Q": None if self.q_poly is None else list(self.q_poly),
            "Q_failure": self.q_failure,
            "chi": self.chi,
            "euler_ok": self.euler_ok,
            "weak": list(self.weak),
            "strong": list(self.strong),
        }


def handle_counts(path: PersistencePath) -> tuple[int, ...]:
    """c_j = number of crossings attaching a j-handle (creates and kills both)."""
    if not path.crossings:
        return ()
    top = max(ev.cell_dim for ev in path.crossings)
    c = [0] * (top + 1)
    for ev in path.crossings:
        c[ev.cell_dim] += 1
    return tuple(c)


def morse_conley(c, total_poly: PoincarePolynomial):
    """Q = (sum c_j t^j - P) / (1+t) by synthetic division.

    Returns (coeffs of Q, None) on success, (None, reason) when the
    division leaves a remainder or Q has a negative coefficient.
    """
    n = max(len(c), len(total_poly.coeffs))
    diff = [(c[k] if k < len(c) else 0) - total_poly.coeff(k) for k in range(n)]
    q = []
    carry = 0
    for k in range(n):
        val = diff[k] - carry
        q.append(val)
        carry = val
    if carry != 0:
        return None, f"nonzero remainder {carry} dividing by (1+t)"
    while q and q[-1] == 0:
        q.pop()
    if any(x < 0 for x in q):
        return None, f"negative coefficient in Q = {q}"
    return tuple(q), None


def inequalities(c, total_poly: PoincarePolynomial):
    """Euler equality plus weak and strong Morse inequalities (exact)."""
    n = max(len(c), len(total_poly.coeffs))
    cc = [c[k] if k < len(c) else 0 for k in range(n)]
    bb = [total_poly.coeff(k) for k in range(n)]
    chi_c = sum((-1) ** k * x for k, x in enumerate(cc))
    chi_b = sum((-1) ** k * x for k, x in enumerate(bb))
    euler = chi_c == chi_b
    weak = tuple(cc[k] >= bb[k] for k in range(n))
    strong = []
    for k in range(n):
        lhs = sum((-1) ** (k - i) * cc[i] for i in range(k + 1))
        rhs = sum((-1) ** (k - i) * bb[i] for i in range(k + 1))
        strong.append(lhs >= rhs)
    return euler, weak, tuple(strong)


def morse_report(path: PersistencePath, total_poly: PoincarePolynomial) -> MorseReport:
    c = handle_counts(path)
    q, failure = morse_conley(c, total_poly)
    euler, weak, strong = inequalities(c, total_poly)
    chi = sum((-1) ** k * x for k, x in enumerate(c))
    return MorseReport(c=c, q_poly=q, q_failure=failure, chi=chi,
                       euler_ok=euler, weak=weak, strong=strong)
