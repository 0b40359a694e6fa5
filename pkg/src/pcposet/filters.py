"""Filters of a pseudocomplemented poset, the two Galois operators, the pi
operator, and the filter classification battery."""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Optional

from .order import Poset, PosetError, bits, min_of, up_closure
from .pseudo import StarTable, Verdict, is_stone, satisfies_stone_identity

EXHAUSTIVE_FILTER_MAX_N = 12


class NotAFilter(PosetError):
    pass


@dataclass(frozen=True)
class Filter:
    members: int
    generator: Optional[int] = None


@dataclass(frozen=True)
class FilterFlags:
    proper: bool
    principal: bool
    prime: bool
    maximal: bool
    d_filter: bool
    coherent: bool
    strongly_coherent: bool
    closed: bool
    median: bool

    def true_names(self) -> list[str]:
        short = {
            "d_filter": "D",
            "strongly_coherent": "strong",
        }
        return [short.get(f.name, f.name) for f in fields(self)
                if f.name != "principal" and getattr(self, f.name)]


def filter_violation(P: Poset, S: int) -> Optional[tuple[str, tuple[int, ...]]]:
    """Why ``S`` is not a filter: ``('empty', ())``, ``('up', (x, y))`` or
    ``('directed', (x, y))``; None if it is one."""
    if not S:
        return "empty", ()
    for x in bits(S):
        outside = P.up[x] & ~S
        if outside:
            return "up", (x, (outside & -outside).bit_length() - 1)
    for x in bits(S):
        for y in bits(S):
            if P.down[x] & P.down[y] & S == 0:
                return "directed", (x, y)
    return None


def is_filter(P: Poset, S: int) -> bool:
    return filter_violation(P, S) is None


def is_proper(P: Poset, F: int) -> bool:
    return is_filter(P, F) and F != P.carrier


def principal_filter(P: Poset, x: int) -> Filter:
    return Filter(P.up[x], x)


def all_filters(P: Poset) -> list[Filter]:
    """Every filter of a finite poset, i.e. the principal ones, in element order."""
    return [principal_filter(P, x) for x in range(P.n)]


def exhaustive_filters(P: Poset) -> list[int]:
    """All filters found by testing every up-set; only for small posets."""
    if P.n > EXHAUSTIVE_FILTER_MAX_N:
        raise PosetError(f"exhaustive filter search is capped at {EXHAUSTIVE_FILTER_MAX_N}")
    out = []
    seen = set()
    # up-sets are in bijection with antichains of generators
    for S in range(1, 1 << P.n):
        up = up_closure(P, S)
        if up in seen:
            continue
        seen.add(up)
        if is_filter(P, up):
            out.append(up)
    return sorted(out)


# ---------------------------------------------------------------------------
# Galois operators


@lru_cache(maxsize=4096)
def _rows(P: Poset, T: StarTable) -> tuple[tuple[int, ...], tuple[int, ...]]:
    one = 1 << P.top
    ss = T.dstar
    over = []
    dd = []
    for x in range(P.n):
        o = d = 0
        for y in range(P.n):
            if P.up[ss[x]] & P.up[ss[y]] == one:
                o |= 1 << y
            if P.up[x] & P.up[y] & ~T.dense == 0:
                d |= 1 << y
        over.append(o)
        dd.append(d)
    return tuple(over), tuple(dd)


def overline_row(P: Poset, T: StarTable, x: int) -> int:
    return _rows(P, T)[0][x]


def overline_set(P: Poset, T: StarTable, A: int) -> int:
    """Elements x with U(x**, y**) = {1} for every y in A."""
    rows = _rows(P, T)[0]
    out = P.carrier
    for y in bits(A):
        out &= rows[y]
    return out


def d_set(P: Poset, T: StarTable, A: int) -> int:
    """Elements x with U(x, y) contained in D for every y in A."""
    rows = _rows(P, T)[1]
    out = P.carrier
    for y in bits(A):
        out &= rows[y]
    return out


def pi_operator(P: Poset, T: StarTable, A: int) -> int:
    rows = _rows(P, T)[0]
    out = 0
    for x in range(P.n):
        covered = 0
        for z in bits(rows[x]):
            for u in bits(A):
                covered |= min_of(P, P.up[z] & P.up[u])
        if covered == P.carrier:
            out |= 1 << x
    return out


# ---------------------------------------------------------------------------
# classification


def _is_prime(P: Poset, F: int) -> bool:
    if F == P.carrier:
        return False
    for x in range(P.n):
        for y in range(x, P.n):
            if P.up[x] & P.up[y] & ~F == 0 and not (F >> x & 1 or F >> y & 1):
                return False
    return True


def _is_maximal(P: Poset, F: int) -> bool:
    if F == P.carrier:
        return False
    for G in all_filters(P):
        if G.members != P.carrier and G.members != F and F & ~G.members == 0:
            return False
    return True


def _is_coherent(P: Poset, T: StarTable, F: int) -> bool:
    rows = _rows(P, T)[0]
    for x in bits(F):
        for y in range(P.n):
            if rows[x] == rows[y] and not F >> y & 1:
                return False
    return True


def _is_median(P: Poset, T: StarTable, F: int) -> bool:
    rows = _rows(P, T)[0]
    return all(rows[x] & ~F for x in bits(F))


def classify(P: Poset, T: StarTable, F: int | Filter) -> FilterFlags:
    if isinstance(F, Filter):
        F = F.members
    if not is_filter(P, F):
        raise NotAFilter(P.fmt(F))
    proper = F != P.carrier
    return FilterFlags(
        proper=proper,
        principal=any(P.up[x] == F for x in range(P.n)),
        prime=_is_prime(P, F),
        maximal=_is_maximal(P, F),
        d_filter=T.dense & ~F == 0,
        coherent=_is_coherent(P, T, F),
        strongly_coherent=pi_operator(P, T, F) == F,
        closed=overline_set(P, T, overline_set(P, T, F)) == F,
        median=_is_median(P, T, F),
    )


def describe_filters(P: Poset, T: StarTable) -> str:
    lines = []
    for F in all_filters(P):
        flags = classify(P, T, F)
        lines.append(
            f"F_{P.labels[F.generator]} = {P.fmt(F.members)} [{' '.join(flags.true_names())}]"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# theorem checks


class _Tally:
    """Collects per-filter implication outcomes into one verdict per name."""

    def __init__(self) -> None:
        self.checked: dict[str, int] = {}
        self.applied: dict[str, int] = {}
        self.failed: dict[str, Verdict] = {}

    def add(self, name: str, hyp: bool, concl: bool, witness: tuple[int, ...] = (),
            sets: tuple[int, int] | None = None) -> None:
        """``witness`` names elements (filter generator first); ``sets`` are subset masks."""
        self.checked[name] = self.checked.get(name, 0) + 1
        self.applied.setdefault(name, 0)
        if hyp:
            self.applied[name] += 1
            if not concl and name not in self.failed:
                lhs, rhs = sets if sets else (None, None)
                self.failed[name] = Verdict(name, False, 0, witness, lhs, rhs)

    def verdicts(self) -> list[Verdict]:
        out = []
        for name, checked in self.checked.items():
            if name in self.failed:
                v = self.failed[name]
                out.append(Verdict(name, False, checked, v.witness, v.lhs, v.rhs))
            else:
                out.append(Verdict(name, True, checked, applicable=self.applied[name] > 0))
        return out


def check_galois(P: Poset, T: StarTable) -> list[Verdict]:
    """Subset-quantified laws of both Galois operators.  Cost is 4**n."""
    size = 1 << P.n
    ov = [overline_set(P, T, A) for A in range(size)]
    dv = [d_set(P, T, A) for A in range(size)]
    stone = is_stone(P, T).holds
    tally = _Tally()
    for name, op in (("overline", ov), ("dset", dv)):
        for A in range(size):
            tally.add(f"{name}_extensive", True, A & ~op[op[A]] == 0, sets=(A, 0))
            tally.add(f"{name}_triple", True, op[op[op[A]]] == op[A], sets=(A, 0))
            tally.add(f"{name}_up_closed", True, up_closure(P, op[A]) == op[A], sets=(A, 0))
            for B in range(size):
                if A & ~B == 0:
                    tally.add(f"{name}_antitone", True, op[B] & ~op[A] == 0, sets=(A, B))
                tally.add(
                    f"{name}_swap", True,
                    (A & ~op[B] == 0) == (B & ~op[A] == 0), sets=(A, B),
                )
    for A in range(size):
        tally.add("lemma3_i", True, ov[A] & ~dv[A] == 0, sets=(A, 0))
        tally.add("lemma3_ii_equal", stone, ov[A] == dv[A], sets=(A, 0))
    verdicts = tally.verdicts()
    verdicts.append(Verdict(
        "galois_bounds",
        ov[0] == dv[0] == P.carrier and ov[P.carrier] == dv[P.carrier] == T.dense,
        1,
    ))
    return verdicts


def check_filter_theorems(P: Poset, T: StarTable) -> tuple[list[Verdict], list[Verdict]]:
    """Evaluate every filter-level implication on every filter of ``P``.

    Returns ``(asserted, surfaced)``: ``asserted`` are the claims checked under
    their stated hypotheses; ``surfaced`` are variants with a hypothesis
    added or dropped, reported for inspection only.
    """
    n = P.n
    s, ss = T.star, T.dstar
    over = _rows(P, T)[0]
    dsingle = _rows(P, T)[1]
    filters = [F.members for F in all_filters(P)]
    flags = [classify(P, T, F) for F in filters]
    stone = is_stone(P, T).holds
    asserted = _Tally()
    surfaced = _Tally()

    if n <= EXHAUSTIVE_FILTER_MAX_N:
        asserted.add("filters_principal", True,
                     exhaustive_filters(P) == sorted(set(filters)), ())
    for x in range(n):
        for y in range(n):
            asserted.add("filters_dual_iso", True,
                         (filters[x] & ~filters[y] == 0) == P.leq(y, x), (x, y))

    for x in range(n):
        asserted.add("overline_principal", True,
                     overline_set(P, T, filters[x]) == over[x], (x,))
        asserted.add("dset_principal", True,
                     d_set(P, T, filters[x]) == dsingle[x], (x,))
        asserted.add("lemma3_ii_star", stone, dsingle[x] >> s[x] & 1 == 1, (x,))

    # characterisations of Stone posets through the two operators
    st_ii = all(overline_set(P, T, F) == d_set(P, T, F) for F in filters)
    st_iii = all(
        ((F & G & ~T.dense) == 0) == (F & ~overline_set(P, T, G) == 0)
        for F in filters for G in filters
    )
    st_iv = all(overline_set(P, T, over[x]) == over[s[x]] for x in range(n))
    st_v = all(overline_set(P, T, over[x]) & ~over[s[x]] == 0 for x in range(n))
    st_vi = satisfies_stone_identity(P, T).holds
    for name, hyp, concl in (
        ("stonefilter_i_ii", stone, st_ii),
        ("stonefilter_ii_iii", st_ii, st_iii),
        ("stonefilter_iii_ii", st_iii, st_ii),
        ("stonefilter_iii_iv", st_iii, st_iv),
        ("stonefilter_iv_v", st_iv, st_v),
        ("stonefilter_v_vi", st_v, st_vi),
        ("stonefilter_vi_v", st_vi, st_v),
    ):
        asserted.add(name, hyp, concl, ())

    for F, fl, gen in zip(filters, flags, range(n)):
        w = (gen,)
        inF = [bool(F >> x & 1) for x in range(n)]
        if fl.proper:
            for a in range(n):
                asserted.add("lemma2_i", True, not (inF[a] and inF[s[a]]), (gen, a))
                for b in bits(over[a]):
                    asserted.add("lemma2_ii", inF[s[a]], over[b] & ~F != 0, (gen, a, b))

        # coherence lemmas
        fix = all(inF[x] or not inF[ss[x]] for x in range(n))
        asserted.add("coherent_from_double_star", stone and fix, fl.coherent, w)
        asserted.add("coherent_from_strong", fl.strongly_coherent, fl.coherent, w)
        asserted.add("coherent_from_closed", fl.closed, fl.coherent, w)

        # prime filter chain
        t_i = fl.d_filter
        t_ii = all(inF[x] != inF[s[x]] for x in range(n))
        t_iii = all(inF[x] == inF[ss[x]] for x in range(n))
        t_iv = all(inF[y] for x in range(n) if inF[x]
                   for y in range(n) if s[x] == s[y])
        t_v = all(over[x] & ~F == 0 for x in range(n) if not inF[x])
        for name, hyp, concl in (
            ("prime_i_ii", t_i, t_ii),
            ("prime_ii_iii", t_ii, t_iii),
            ("prime_iii_iv", t_iii, t_iv),
            ("prime_iv_i", t_iv, t_i),
            ("prime_i_v", t_i, t_v),
        ):
            asserted.add(name, fl.prime and hyp, concl, w)

        # maximality proposition
        m_i = fl.prime and fl.d_filter
        m_ii = all(inF[s[x]] for x in range(n) if not inF[x])
        asserted.add("maxprop_i_ii", m_i, m_ii, w)
        asserted.add("maxprop_ii_iii", fl.proper and m_ii, fl.maximal, w)
        asserted.add("prime_d_maximal", m_i, fl.maximal, w)
        surfaced.add("maxprop_ii_iii_improper", m_ii, fl.maximal, w)

        # median proposition, for prime D-filters
        md_ii = all(inF[x] == (over[x] & ~F != 0) for x in range(n))
        md_iii = all(over[x] & ~F != 0 for x in range(n) if inF[ss[x]])
        for name, hyp, concl in (
            ("median_i_ii", fl.median, md_ii),
            ("median_ii_iii", md_ii, md_iii),
            ("median_iii_i", md_iii, fl.median),
        ):
            asserted.add(name, m_i and hyp, concl, w)

        # median D-filters
        med_d = fl.median and fl.d_filter
        closes = all(
            inF[x] == (overline_set(P, T, over[x]) & ~F == 0) for x in range(n)
        )
        asserted.add("median_d_prime_closure", med_d and fl.prime, closes, w)
        asserted.add("median_d_coherent", med_d, fl.coherent, w)
        surfaced.add("median_d_prime_coherent", med_d and fl.prime, fl.coherent, w)
        surfaced.add("median_d_closure", med_d, closes, w)

    return asserted.verdicts(), surfaced.verdicts()


__all__ = [
    "Filter",
    "FilterFlags",
    "NotAFilter",
    "all_filters",
    "check_filter_theorems",
    "check_galois",
    "classify",
    "d_set",
    "describe_filters",
    "exhaustive_filters",
    "filter_violation",
    "is_filter",
    "is_proper",
    "overline_row",
    "overline_set",
    "pi_operator",
    "principal_filter",
]
