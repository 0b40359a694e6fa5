"""Pseudocomplements, dense elements and the identity battery for one poset.

Every ``check_*`` function returns :class:`Verdict` objects instead of bare
booleans, so a failing clause carries the first failing assignment (in
lexicographic element order) and both evaluated sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .order import (
    Poset,
    PosetError,
    bits,
    eq1,
    eq2,
    is_antichain,
    le1,
    le2,
    lower_cone,
    max_of,
    min_of,
)


class NoBottom(PosetError):
    pass


class NotPseudocomplemented(PosetError):
    def __init__(self, P: Poset, witness: Optional[int]):
        self.witness = witness
        if witness is None:
            msg = f"{P.name or 'poset'} has no bottom element"
        else:
            msg = f"{P.labels[witness]} has no pseudocomplement"
        super().__init__(msg)


@dataclass(frozen=True)
class StarTable:
    star: tuple[int, ...]
    dstar: tuple[int, ...]
    dense: int

    def image(self, A: int) -> int:
        out = 0
        for a in bits(A):
            out |= 1 << self.star[a]
        return out


@dataclass(frozen=True)
class Verdict:
    clause: str
    holds: bool
    checked: int = 0
    witness: Optional[tuple[int, ...]] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    applicable: bool = True

    def describe(self, P: Poset) -> str:
        if not self.applicable:
            return f"{self.clause}: n/a"
        if self.holds:
            return f"{self.clause}: holds ({self.checked} checked)"
        at = ",".join(P.labels[i] for i in self.witness or ())
        text = f"{self.clause}: FAILS at ({at})"
        if self.lhs is not None:
            text += f" lhs={P.fmt(self.lhs)}"
        if self.rhs is not None:
            text += f" rhs={P.fmt(self.rhs)}"
        return text


def pseudocomplement(P: Poset, x: int) -> Optional[int]:
    """Greatest y with L(x, y) = {0}, or None if the candidates have no greatest member."""
    if P.bottom is None:
        raise NoBottom(P.name)
    zero = 1 << P.bottom
    cand = 0
    for y in range(P.n):
        if P.down[x] & P.down[y] == zero:
            cand |= 1 << y
    top = max_of(P, cand)
    if top & (top - 1):
        return None
    return top.bit_length() - 1


def _stars(P: Poset) -> tuple[list[Optional[int]], Optional[int]]:
    if P.bottom is None:
        return [], None
    stars = [pseudocomplement(P, x) for x in range(P.n)]
    bad = next((x for x, s in enumerate(stars) if s is None), None)
    return stars, bad


def is_pseudocomplemented(P: Poset) -> bool:
    if P.bottom is None:
        return False
    stars, bad = _stars(P)
    return bad is None


def star_table(P: Poset) -> StarTable:
    if P.bottom is None:
        raise NotPseudocomplemented(P, None)
    stars, bad = _stars(P)
    if bad is not None:
        raise NotPseudocomplemented(P, bad)
    star = tuple(stars)
    dstar = tuple(star[s] for s in star)
    dense = 0
    for x, s in enumerate(star):
        if s == P.bottom:
            dense |= 1 << x
    return StarTable(star, dstar, dense)


def star_set(P: Poset, T: StarTable, A: int) -> int:
    return T.image(A)


def dense_elements(P: Poset, T: StarTable) -> int:
    return T.dense


# ---------------------------------------------------------------------------
# helpers for pair-quantified clauses


def _ml(P: Poset, a: int, b: int) -> int:
    return max_of(P, P.down[a] & P.down[b])


def _mu(P: Poset, a: int, b: int) -> int:
    return min_of(P, P.up[a] & P.up[b])


Side = Callable[[int, int], int]
Rel = Callable[[Poset, int, int], bool]


def _eq(P: Poset, A: int, B: int) -> bool:
    return A == B


def _sub(P: Poset, A: int, B: int) -> bool:
    return A & ~B == 0


def _pair_clause(P: Poset, clause: str, links: list[tuple[Side, Rel, Side]]) -> Verdict:
    """Check ``lhs rel rhs`` for every link and every pair, first failure wins."""
    checked = 0
    for x in range(P.n):
        for y in range(P.n):
            checked += 1
            for lhs_f, rel, rhs_f in links:
                lhs, rhs = lhs_f(x, y), rhs_f(x, y)
                if not rel(P, lhs, rhs):
                    return Verdict(clause, False, checked, (x, y), lhs, rhs)
    return Verdict(clause, True, checked)


def _elem_clause(P: Poset, clause: str, pred: Callable[[int], bool]) -> Verdict:
    for x in range(P.n):
        if not pred(x):
            return Verdict(clause, False, x + 1, (x,))
    return Verdict(clause, True, P.n)


def _pair_pred(P: Poset, clause: str, pred: Callable[[int, int], bool]) -> Verdict:
    checked = 0
    for x in range(P.n):
        for y in range(P.n):
            checked += 1
            if not pred(x, y):
                return Verdict(clause, False, checked, (x, y))
    return Verdict(clause, True, checked)


# ---------------------------------------------------------------------------
# elementary facts


def check_basic_facts(P: Poset, T: StarTable) -> list[Verdict]:
    s = T.star
    zero, one = P.bottom, P.top
    leq = P.leq

    def meet_zero(a: int, b: int) -> bool:
        return P.down[a] & P.down[b] == 1 << zero

    return [
        _elem_clause(P, "star_meets_zero", lambda x: meet_zero(x, s[x])),
        Verdict("zero_star_is_top", one is not None and s[zero] == one, 1),
        Verdict("top_star_is_zero", one is not None and s[one] == zero, 1),
        Verdict("top_is_dense", one is not None and bool(T.dense >> one & 1), 1),
        _pair_pred(P, "star_antitone", lambda a, b: not leq(a, b) or leq(s[b], s[a])),
        _elem_clause(P, "double_star_extensive", lambda a: leq(a, s[s[a]])),
        _elem_clause(P, "triple_star", lambda a: s[s[s[a]]] == s[a]),
        _pair_pred(
            P,
            "star_adjunction",
            lambda a, b: leq(a, s[b]) == meet_zero(a, b) == leq(b, s[a]),
        ),
    ]


def check_lemma1(P: Poset, T: StarTable) -> list[Verdict]:
    s = T.star
    zero, one = 1 << P.bottom, 1 << P.top

    def clause_i(a: int, b: int) -> bool:
        if P.up[s[a]] & P.up[s[b]] != one:
            return True
        return P.down[a] & P.down[b] == zero

    return [
        _pair_pred(P, "lemma1_i", clause_i),
        _pair_clause(P, "lemma1_ii", [(
            lambda a, b: T.image(P.down[a] & P.down[b]),
            _sub,
            lambda a, b: P.up[s[a]] & P.up[s[b]],
        )]),
        _pair_clause(P, "lemma1_iii", [(
            lambda a, b: T.image(P.up[a] & P.up[b]),
            _sub,
            lambda a, b: P.down[s[a]] & P.down[s[b]],
        )]),
        _elem_clause(P, "lemma1_iv", lambda a: P.up[a] & P.up[s[a]] & ~T.dense == 0),
    ]


def check_set_facts(P: Poset, T: StarTable) -> list[Verdict]:
    """Subset-quantified facts: star transfer across the set preorders, Max/Min
    bounds, the antichain criterion, and the antichain remark.  Cost is 4**n."""
    n = P.n
    size = 1 << n
    dc = [0] * size
    uc = [0] * size
    lcone = [P.carrier] * size
    ucone = [P.carrier] * size
    img = [0] * size
    for A in range(1, size):
        low = A & -A
        i = low.bit_length() - 1
        rest = A ^ low
        dc[A] = dc[rest] | P.down[i]
        uc[A] = uc[rest] | P.up[i]
        lcone[A] = lcone[rest] & P.down[i]
        ucone[A] = ucone[rest] & P.up[i]
        img[A] = img[rest] | 1 << T.star[i]
    anti = [is_antichain(P, A) for A in range(size)]
    one = 1 << P.top

    def l1(A: int, B: int) -> bool:
        return A & ~dc[B] == 0

    def l2(A: int, B: int) -> bool:
        return B & ~uc[A] == 0

    def pw(A: int, B: int) -> bool:
        return B & ~ucone[A] == 0

    names = [
        "star_reverses_le", "star_le1_to_le2", "star_le2_to_le1",
        "star_eq1_to_eq2", "star_eq2_to_eq1", "subset_le1_max", "min_le2_subset",
        "rem1_eq1_subset", "rem1_eq2_subset", "rem1_antichains_equal", "rem1_eq2_top",
    ]
    fails: dict[str, tuple[int, int]] = {}
    zero = 1 << P.bottom
    checked = 0
    for A in range(size):
        sa = img[A]
        for B in range(size):
            checked += 1
            sb = img[B]
            e1 = l1(A, B) and l1(B, A)
            e2 = l2(A, B) and l2(B, A)
            checks = (
                not pw(A, B) or pw(sb, sa),
                not l1(A, B) or l2(sb, sa),
                not l2(A, B) or l1(sb, sa),
                not e1 or (l2(sa, sb) and l2(sb, sa)),
                not e2 or (l1(sa, sb) and l1(sb, sa)),
                A & ~B != 0 or l1(A, max_of(P, B)),
                A & ~B != 0 or l2(min_of(P, B), A),
                not (anti[A] and e1) or A & ~B == 0,
                not (anti[A] and e2) or A & ~B == 0,
                not (anti[A] and anti[B] and (e1 or e2)) or A == B,
                not e2 or ((A == one) == (B == one)),
            )
            for name, ok in zip(names, checks):
                if not ok and name not in fails:
                    fails[name] = (A, B)
        # antichain criterion depends on A only
        ok = True
        for x in bits(A):
            for y in bits(A):
                if x != y and (
                    P.down[T.star[x]] & P.down[y] == zero
                    or P.down[x] & P.down[T.star[y]] == zero
                ):
                    ok = False
        if ok and not (anti[A] and anti[img[A]]) and "antichain_criterion" not in fails:
            fails["antichain_criterion"] = (A, 0)
    names.append("antichain_criterion")
    out = []
    for name in names:
        if name in fails:
            A, B = fails[name]
            out.append(Verdict(name, False, checked, None, A, B))
        else:
            out.append(Verdict(name, True, checked))
    return out


# ---------------------------------------------------------------------------
# the pair identities


def check_th3(P: Poset, T: StarTable) -> list[Verdict]:
    s, ss = T.star, T.dstar
    im = T.image
    ml = lambda a, b: _ml(P, a, b)  # noqa: E731
    mu = lambda a, b: _mu(P, a, b)  # noqa: E731

    def clause_ii_lhs(a: int, b: int) -> int:
        return max_of(P, lower_cone(P, 1 << a | im(ml(s[a], b))))

    return [
        _pair_clause(P, "th3_i", [(
            lambda a, b: ml(s[a], s[b]), eq1, lambda a, b: im(im(ml(s[a], s[b]))))]),
        _pair_clause(P, "th3_ii", [(clause_ii_lhs, _eq, lambda a, b: 1 << a)]),
        _pair_clause(P, "th3_iii", [
            (lambda a, b: ml(a, b), le1, lambda a, b: ml(ss[a], b)),
            (lambda a, b: ml(ss[a], b), le1, lambda a, b: ml(ss[a], ss[b])),
        ]),
        _pair_clause(P, "th3_iv", [
            (lambda a, b: ml(a, b), le1, lambda a, b: ml(a, ss[b])),
            (lambda a, b: ml(a, ss[b]), le1, lambda a, b: ml(ss[a], ss[b])),
        ]),
        _pair_clause(P, "th3_v", [
            (lambda a, b: im(im(ml(a, b))), le1, lambda a, b: ml(ss[a], ss[b]))]),
        _pair_clause(P, "th3_vi", [
            (lambda a, b: mu(a, b), le2, lambda a, b: mu(ss[a], b)),
            (lambda a, b: mu(ss[a], b), le2, lambda a, b: mu(ss[a], ss[b])),
        ]),
        _pair_clause(P, "th3_vii", [
            (lambda a, b: mu(a, b), le2, lambda a, b: mu(a, ss[b])),
            (lambda a, b: mu(a, ss[b]), le2, lambda a, b: mu(ss[a], ss[b])),
        ]),
        _pair_clause(P, "th3_viii", [
            (lambda a, b: mu(ss[a], ss[b]), le2, lambda a, b: im(im(mu(a, b))))]),
        _pair_clause(P, "th3_ix", [
            (lambda a, b: im(mu(a, b)), eq1, lambda a, b: ml(s[a], s[b]))]),
        _pair_clause(P, "th3_x", [
            (lambda a, b: mu(s[a], s[b]), le2, lambda a, b: im(ml(a, b)))]),
    ]


def satisfies_ineq1(P: Poset, T: StarTable) -> Verdict:
    ss = T.dstar
    return _pair_clause(P, "ineq1", [(
        lambda a, b: T.image(_ml(P, a, b)),
        le2,
        lambda a, b: T.image(_ml(P, ss[a], ss[b])),
    )])


def check_cor1(P: Poset, T: StarTable) -> list[Verdict]:
    """The three identities that follow from the inequality; n/a when it fails."""
    ss = T.dstar
    im = T.image
    ml = lambda a, b: _ml(P, a, b)  # noqa: E731
    verdicts = [
        _pair_clause(P, "cor1_i", [
            (lambda a, b: im(ml(a, b)), eq2, lambda a, b: im(ml(ss[a], ss[b])))]),
        _pair_clause(P, "cor1_ii", [
            (lambda a, b: im(im(ml(a, b))), eq1, lambda a, b: ml(ss[a], ss[b]))]),
        _pair_clause(P, "cor1_iii", [
            (lambda a, b: im(ml(a, b)), eq2, lambda a, b: im(ml(ss[a], b))),
            (lambda a, b: im(ml(ss[a], b)), eq2, lambda a, b: im(ml(a, ss[b]))),
        ]),
    ]
    if satisfies_ineq1(P, T).holds:
        return verdicts
    return [Verdict(v.clause, True, v.checked, applicable=False) for v in verdicts]


def is_stone(P: Poset, T: StarTable) -> Verdict:
    s, ss = T.star, T.dstar
    return _pair_clause(P, "stone_def", [(
        lambda a, b: T.image(_ml(P, s[a], s[b])),
        le2,
        lambda a, b: _mu(P, ss[a], ss[b]),
    )])


def satisfies_stone_identity(P: Poset, T: StarTable) -> Verdict:
    s, ss = T.star, T.dstar
    one = 1 << P.top
    for x in range(P.n):
        u = P.up[s[x]] & P.up[ss[x]]
        if u != one:
            return Verdict("stone_identity", False, x + 1, (x,), u, one)
    return Verdict("stone_identity", True, P.n)


def check_th5(P: Poset, T: StarTable) -> list[Verdict]:
    """Clauses (ii) and (iii) plus the agreement of all three characterisations."""
    s, ss = T.star, T.dstar
    im = T.image
    ii = _pair_clause(P, "th5_ii", [(
        lambda a, b: im(_ml(P, s[a], s[b])), eq2, lambda a, b: _mu(P, ss[a], ss[b]))])
    iii = _pair_clause(P, "th5_iii", [(
        lambda a, b: im(im(_mu(P, a, b))), eq2, lambda a, b: _mu(P, ss[a], ss[b]))])
    stone = is_stone(P, T)
    agree = stone.holds == ii.holds == iii.holds
    return [ii, iii, Verdict("th5_equivalence", agree, 3)]


def check_identity2(P: Poset, T: StarTable) -> Verdict:
    ss = T.dstar
    return _pair_clause(P, "identity2", [(
        lambda a, b: T.image(T.image(_mu(P, ss[a], ss[b]))),
        eq2,
        lambda a, b: _mu(P, ss[a], ss[b]),
    )])


def check_stone_consequences(P: Poset, T: StarTable) -> list[Verdict]:
    """Identities derived from clause (iii) of the Stone characterisation."""
    s, ss = T.star, T.dstar
    im = T.image
    mu = lambda a, b: _mu(P, a, b)  # noqa: E731
    return [
        _pair_clause(P, "stone_cons_a", [
            (lambda a, b: im(im(mu(s[a], s[b]))), eq2, lambda a, b: mu(s[a], s[b]))]),
        _pair_clause(P, "stone_cons_b", [
            (lambda a, b: im(mu(a, b)), eq1, lambda a, b: im(mu(ss[a], ss[b])))]),
    ]


def star_rows(P: Poset, T: StarTable) -> str:
    """Render the x / x* / x** table followed by the dense set."""
    width = max(len(lab) for lab in P.labels)
    rows = [
        ("x", range(P.n)),
        ("x*", T.star),
        ("x**", T.dstar),
    ]
    lines = []
    for head, vals in rows:
        cells = " ".join(P.labels[v].rjust(width) for v in vals)
        lines.append(f"{head:<3} | {cells}")
    lines.append(f"D = {P.fmt(T.dense)}")
    return "\n".join(lines) + "\n"


__all__ = [
    "NoBottom",
    "NotPseudocomplemented",
    "StarTable",
    "Verdict",
    "check_basic_facts",
    "check_cor1",
    "check_identity2",
    "check_lemma1",
    "check_set_facts",
    "check_stone_consequences",
    "check_th3",
    "check_th5",
    "dense_elements",
    "is_pseudocomplemented",
    "is_stone",
    "pseudocomplement",
    "satisfies_ineq1",
    "satisfies_stone_identity",
    "star_rows",
    "star_set",
    "star_table",
]
