"""Run every theorem check over all pseudocomplemented posets up to a size."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .catalog import pseudocomplemented_posets
from .filters import check_filter_theorems, check_galois
from .order import Poset, format_poset
from .pseudo import (
    Verdict,
    check_basic_facts,
    check_cor1,
    check_identity2,
    check_lemma1,
    check_set_facts,
    check_stone_consequences,
    check_th3,
    check_th5,
    is_stone,
    satisfies_stone_identity,
    star_table,
)

# subset-quantified checks cost 4**n per poset
SET_CHECK_MAX_N = 6


def _law_implication(name: str, hyp: bool, concl: Verdict) -> Verdict:
    if not hyp:
        return Verdict(name, True, concl.checked, applicable=False)
    return Verdict(name, concl.holds, concl.checked, concl.witness, concl.lhs, concl.rhs)


def run_battery(P: Poset) -> tuple[list[Verdict], list[Verdict]]:
    """All asserted and surfaced verdicts for one pseudocomplemented poset."""
    T = star_table(P)
    asserted: list[Verdict] = [Verdict("finite_acc_dcc", True, 1)]
    asserted += check_basic_facts(P, T)
    asserted += check_lemma1(P, T)
    asserted += check_th3(P, T)
    asserted += check_cor1(P, T)
    asserted += [v for v in check_th5(P, T) if v.clause == "th5_equivalence"]

    stone = is_stone(P, T)
    asserted.append(_law_implication("identity2_implies_stone",
                                     check_identity2(P, T).holds, stone))
    asserted.append(_law_implication("lemma4_stone_identity", stone.holds,
                                     satisfies_stone_identity(P, T)))
    for v in check_stone_consequences(P, T):
        asserted.append(_law_implication(v.clause, stone.holds, v))

    if P.n <= SET_CHECK_MAX_N:
        asserted += check_set_facts(P, T)
        asserted += check_galois(P, T)

    filt, surfaced = check_filter_theorems(P, T)
    asserted += filt
    return asserted, surfaced


@dataclass
class TheoremTally:
    posets: int = 0
    applicable: int = 0
    counterexamples: list[tuple[Poset, Verdict]] = field(default_factory=list)

    def add(self, P: Poset, v: Verdict, keep: int) -> None:
        self.posets += 1
        if v.applicable:
            self.applicable += 1
        if not v.holds and len(self.counterexamples) < keep:
            self.counterexamples.append((P, v))

    @property
    def failed(self) -> bool:
        return bool(self.counterexamples)


@dataclass
class SweepReport:
    max_n: int
    posets: int = 0
    asserted: dict[str, TheoremTally] = field(default_factory=dict)
    surfaced: dict[str, TheoremTally] = field(default_factory=dict)

    def failures(self) -> dict[str, TheoremTally]:
        return {k: t for k, t in self.asserted.items() if t.failed}

    def format(self) -> str:
        lines = [f"sweep max_n={self.max_n} posets={self.posets}"]
        for title, table in (("asserted", self.asserted), ("surfaced", self.surfaced)):
            lines.append(f"[{title}]")
            for name in sorted(table):
                t = table[name]
                status = "FAIL" if t.failed else "ok"
                lines.append(f"{status:4} {name} posets={t.posets} applicable={t.applicable}"
                             f" counterexamples={len(t.counterexamples)}")
                for P, v in t.counterexamples[:1]:
                    lines.append("     " + v.describe(P))
                    lines.extend("     " + row for row in format_poset(P).splitlines())
        return "\n".join(lines) + "\n"


def sweep_theorems(max_n: int, jobs: int = 1, keep: int = 3) -> SweepReport:
    report = SweepReport(max_n)
    posets = list(pseudocomplemented_posets(max_n))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_battery, posets, chunksize=8))
    else:
        results = [run_battery(P) for P in posets]
    for P, (asserted, surfaced) in zip(posets, results):
        report.posets += 1
        for v in asserted:
            report.asserted.setdefault(v.clause, TheoremTally()).add(P, v, keep)
        for v in surfaced:
            report.surfaced.setdefault(v.clause, TheoremTally()).add(P, v, keep)
    return report
