"""Finite posets stored as bitset rows, plus the basic cone and set-preorder operators.

Element sets are plain ``int`` bitmasks: bit ``i`` set means element ``i`` is a
member.  Every poset keeps, for each element, the mask of elements below it
(``down``) and above it (``up``), both reflexive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

MAX_ELEMENTS = 64


class PosetError(ValueError):
    pass


class CycleDetected(PosetError):
    pass


class UnknownLabel(PosetError):
    pass


class DuplicateLabel(PosetError):
    pass


class PosetFormatError(PosetError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Poset:
    name: str
    labels: tuple[str, ...]
    down: tuple[int, ...]
    up: tuple[int, ...]
    bottom: Optional[int] = field(default=None)
    top: Optional[int] = field(default=None)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def carrier(self) -> int:
        return (1 << self.n) - 1

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def names(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs ``(x, y)`` with ``x < y`` and nothing strictly between."""
        out = []
        for y in range(self.n):
            strict = self.down[y] & ~(1 << y)
            for x in bits(strict):
                between = self.up[x] & strict & ~(1 << x)
                if not between:
                    out.append((x, y))
        return sorted(out)

    def relabel(self, perm: Sequence[int], name: str | None = None) -> "Poset":
        """Return the isomorphic poset in which old element ``i`` becomes ``perm[i]``."""
        n = self.n
        labels = [""] * n
        for i in range(n):
            labels[perm[i]] = self.labels[i]
        pairs = [(perm[x], perm[y]) for x, y in self.covers()]
        return from_index_covers(n, pairs, labels=labels, name=name or self.name)

    def dual(self, name: str | None = None) -> "Poset":
        return from_index_covers(
            self.n, [(y, x) for x, y in self.covers()], labels=self.labels,
            name=name or self.name + "-dual",
        )

    def __repr__(self) -> str:
        cov = " ".join(f"{self.labels[x]}<{self.labels[y]}" for x, y in self.covers())
        return f"Poset({self.name!r}, elements={' '.join(self.labels)}, covers={cov})"


def from_index_covers(
    n: int,
    pairs: Iterable[tuple[int, int]],
    labels: Sequence[str] | None = None,
    name: str = "",
) -> Poset:
    """Build a poset on ``range(n)`` from (not necessarily minimal) ``x < y`` pairs."""
    if n < 1:
        raise PosetError("a poset needs at least one element")
    if n > MAX_ELEMENTS:
        raise PosetError(f"at most {MAX_ELEMENTS} elements are supported")
    if labels is None:
        labels = [f"e{i}" for i in range(n)]
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        seen = set()
        for lab in labels:
            if lab in seen:
                raise DuplicateLabel(lab)
            seen.add(lab)
    if len(labels) != n:
        raise PosetError("label count does not match element count")

    succ = [0] * n
    for x, y in pairs:
        if x == y:
            raise CycleDetected(f"{labels[x]}<{labels[x]}")
        succ[x] |= 1 << y

    # Kahn order doubles as the cycle check.
    indeg = [0] * n
    for x in range(n):
        for y in bits(succ[x]):
            indeg[y] += 1
    order = [x for x in range(n) if indeg[x] == 0]
    for x in order:
        for y in bits(succ[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                order.append(y)
    if len(order) != n:
        stuck = [labels[i] for i in range(n) if indeg[i] > 0]
        raise CycleDetected("cycle through " + ", ".join(stuck))

    up = [1 << x for x in range(n)]
    for x in reversed(order):
        for y in bits(succ[x]):
            up[x] |= up[y]
    down = [0] * n
    for x in range(n):
        for y in bits(up[x]):
            down[y] |= 1 << x

    full = (1 << n) - 1
    bottom = next((x for x in range(n) if up[x] == full), None)
    top = next((x for x in range(n) if down[x] == full), None)
    return Poset(name, labels, tuple(down), tuple(up), bottom, top)


def poset_from_covers(
    labels: Sequence[str], covers: Iterable[tuple[str, str]], name: str = ""
) -> Poset:
    """Build a poset from element names and ``(lower, upper)`` cover pairs."""
    labels = list(labels)
    if not labels:
        raise PosetError("labels must be non-empty")
    seen: set[str] = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(lab)
        seen.add(lab)
    pos = {lab: i for i, lab in enumerate(labels)}
    pairs = []
    for a, b in covers:
        for lab in (a, b):
            if lab not in pos:
                raise UnknownLabel(lab)
        pairs.append((pos[a], pos[b]))
    return from_index_covers(len(labels), pairs, labels=labels, name=name)


def chain(n: int) -> Poset:
    return from_index_covers(n, [(i, i + 1) for i in range(n - 1)], name=f"chain{n}")


def antichain(n: int) -> Poset:
    return from_index_covers(n, [], name=f"antichain{n}")


# ---------------------------------------------------------------------------
# cones and extremal elements


def lower_cone(P: Poset, A: int) -> int:
    """L(A): elements below every member of A.  L(empty) is the whole carrier."""
    out = P.carrier
    for a in bits(A):
        out &= P.down[a]
    return out


def upper_cone(P: Poset, A: int) -> int:
    out = P.carrier
    for a in bits(A):
        out &= P.up[a]
    return out


def down_closure(P: Poset, A: int) -> int:
    out = 0
    for a in bits(A):
        out |= P.down[a]
    return out


def up_closure(P: Poset, A: int) -> int:
    out = 0
    for a in bits(A):
        out |= P.up[a]
    return out


def max_of(P: Poset, A: int) -> int:
    out = 0
    for a in bits(A):
        if P.up[a] & A == 1 << a:
            out |= 1 << a
    return out


def min_of(P: Poset, A: int) -> int:
    out = 0
    for a in bits(A):
        if P.down[a] & A == 1 << a:
            out |= 1 << a
    return out


def is_antichain(P: Poset, A: int) -> bool:
    return all(P.up[a] & A == 1 << a for a in bits(A))


# ---------------------------------------------------------------------------
# set relations


def pointwise_le(P: Poset, A: int, B: int) -> bool:
    """A <= B: every member of A lies below every member of B."""
    return all(P.up[a] & B == B for a in bits(A))


def le1(P: Poset, A: int, B: int) -> bool:
    """Every element of A has an upper bound in B."""
    return A & ~down_closure(P, B) == 0


def le2(P: Poset, A: int, B: int) -> bool:
    """Every element of B has a lower bound in A."""
    return B & ~up_closure(P, A) == 0


def eq1(P: Poset, A: int, B: int) -> bool:
    return le1(P, A, B) and le1(P, B, A)


def eq2(P: Poset, A: int, B: int) -> bool:
    return le2(P, A, B) and le2(P, B, A)


# ---------------------------------------------------------------------------
# global predicates


def is_lattice(P: Poset) -> bool:
    for x in range(P.n):
        for y in range(x + 1, P.n):
            ub = P.up[x] & P.up[y]
            lb = P.down[x] & P.down[y]
            sup = min_of(P, ub)
            inf = max_of(P, lb)
            if popcount(sup) != 1 or popcount(inf) != 1:
                return False
    return True


def distributivity_witness(P: Poset) -> Optional[tuple[int, int, int]]:
    """First triple (x, y, z) violating L(U(x,y),z) = LU(L(x,z),L(y,z)), or None."""
    n = P.n
    for x in range(n):
        for y in range(n):
            uxy = P.up[x] & P.up[y]
            for z in range(n):
                lhs = lower_cone(P, uxy | 1 << z)
                inner = (P.down[x] & P.down[z]) | (P.down[y] & P.down[z])
                rhs = lower_cone(P, upper_cone(P, inner))
                if lhs != rhs:
                    return x, y, z
    return None


def is_distributive(P: Poset) -> bool:
    return distributivity_witness(P) is None


# ---------------------------------------------------------------------------
# text format


def parse_poset(text: str) -> Poset:
    """Parse the line-oriented ``poset`` / ``elements`` / ``covers`` format."""
    name = None
    labels = None
    covers: list[tuple[str, str]] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        items = rest.split()
        if head == "poset":
            if name is not None:
                raise PosetFormatError("duplicate 'poset' line", lineno)
            if len(items) != 1:
                raise PosetFormatError("expected 'poset <name>'", lineno)
            name = items[0]
        elif head == "elements":
            if name is None or labels is not None:
                raise PosetFormatError("'elements' out of order", lineno)
            if not items:
                raise PosetFormatError("no elements declared", lineno)
            labels = items
        elif head == "covers":
            if labels is None or covers is not None:
                raise PosetFormatError("'covers' out of order", lineno)
            covers = []
            for item in items:
                a, sep, b = item.partition("<")
                if not sep or not a or not b or "<" in b:
                    raise PosetFormatError(f"bad cover item {item!r}", lineno)
                covers.append((a, b))
        else:
            raise PosetFormatError(f"unknown directive {head!r}", lineno)
    if name is None or labels is None:
        raise PosetFormatError("missing 'poset' or 'elements' line")
    return poset_from_covers(labels, covers or [], name=name)


def format_poset(P: Poset) -> str:
    cov = " ".join(f"{P.labels[x]}<{P.labels[y]}" for x, y in P.covers())
    cov_line = f"covers {cov}" if cov else "covers"
    return f"poset {P.name}\nelements {' '.join(P.labels)}\n{cov_line}\n"


def load_poset(path) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return parse_poset(fh.read())
