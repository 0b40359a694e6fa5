"""Canonical labeling of finite posets.

The canonical labeling is the linear extension that lexicographically
minimises, position by position, the pair ``(invariant, column)`` where the
invariant is ``(|down-set|, |up-set|)`` of the placed element and the column
records which earlier positions lie strictly below it.  Because every search
node at a given depth shares the same prefix, only children achieving the
smallest next pair can lead to the minimum, so the search keeps a single
layer of tied prefixes.  Swapping two incomparable elements with identical
strict neighbourhoods is an automorphism, so only one of each such twin
class is ever expanded.
"""

from __future__ import annotations

from .order import Poset, from_index_covers, popcount


def _invariants(P: Poset) -> list[tuple[int, int]]:
    return [(popcount(P.down[x]), popcount(P.up[x])) for x in range(P.n)]


def _twin_ids(P: Poset) -> list[int]:
    ids: dict[tuple[int, int], int] = {}
    out = []
    for x in range(P.n):
        sig = (P.down[x] & ~(1 << x), P.up[x] & ~(1 << x))
        out.append(ids.setdefault(sig, len(ids)))
    return out


def canonical_labeling(P: Poset) -> tuple[tuple[int, ...], int]:
    """Return ``(order, code)``: ``order[pos]`` is the element placed at ``pos``.

    ``code`` packs the strict-below bits of every column, earliest column
    first, as one integer of ``n(n-1)/2`` bits.
    """
    n = P.n
    inv = _invariants(P)
    twin = _twin_ids(P)
    strict_down = [P.down[x] & ~(1 << x) for x in range(n)]

    # layer entries: (order tuple, placed mask)
    layer: list[tuple[tuple[int, ...], int]] = [((), 0)]
    code = 0
    for depth in range(n):
        best = None
        nxt: list[tuple[tuple[int, ...], int]] = []
        for order, placed in layer:
            seen_twins = set()
            for v in range(n):
                if placed >> v & 1 or strict_down[v] & ~placed:
                    continue
                if twin[v] in seen_twins:
                    continue
                col = 0
                for j, u in enumerate(order):
                    col = (col << 1) | (strict_down[v] >> u & 1)
                key = (inv[v], col)
                if best is None or key < best:
                    best = key
                    nxt = []
                if key == best:
                    seen_twins.add(twin[v])
                    nxt.append((order + (v,), placed | 1 << v))
        layer = nxt
        if depth:
            code = (code << depth) | best[1]
    return layer[0][0], code


def canonical_form(P: Poset) -> bytes:
    """Isomorphism-invariant key: equal keys iff the posets are order-isomorphic."""
    n = P.n
    _, code = canonical_labeling(P)
    nbits = n * (n - 1) // 2
    return bytes([n]) + code.to_bytes((nbits + 7) // 8, "big")


def canonical_poset(P: Poset, name: str | None = None) -> Poset:
    """Relabel ``P`` canonically with labels ``e0..e{n-1}``."""
    order, _ = canonical_labeling(P)
    pos = {v: i for i, v in enumerate(order)}
    pairs = [(pos[x], pos[y]) for x, y in P.covers()]
    key = canonical_form(P)
    return from_index_covers(
        P.n, pairs, name=name if name is not None else key_name(key)
    )


def key_name(key: bytes) -> str:
    return f"n{key[0]}-{key[1:].hex() or '0'}"
