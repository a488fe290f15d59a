"""Randomized grouping search and the consecutive-powers survey driver.

The grouping algorithm starts from a generator matrix of a regular
minimum-aberration design, rewrites its columns as powers of a primitive
element under a randomly chosen primitive polynomial and a random
non-singular change of basis, and then greedily collects translates of the
exponent set that are pairwise disjoint.  Translation preserves the
wordlength pattern, so every group inherits the seed's aberration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf as gflib
from .designs import (
    DEFAULT_WLP_BUDGET,
    GeneratorMatrix,
    Group,
    GroupedDesign,
    annotate,
    expand_generator,
    generator_from_exponents,
    strength_from_wlp,
    wlp,
)
from .errors import NoGroupingError, RankDeficientError
from .constructions import rank_primitive_polys

# Two generator matrices for the minimum-aberration OA(16, 5, 2, 4); they
# span the same wordlength pattern from different independent columns.
SEED_GENERATORS: dict[str, GeneratorMatrix] = {
    "oa16-5-ma": GeneratorMatrix(
        2,
        [
            [1, 0, 0, 0, 1],
            [0, 1, 0, 0, 1],
            [0, 0, 1, 0, 1],
            [0, 0, 0, 1, 1],
        ],
    ),
    "oa16-5-ma-alt": GeneratorMatrix(
        2,
        [
            [1, 1, 1, 0, 1],
            [0, 0, 0, 1, 1],
            [1, 0, 1, 1, 1],
            [1, 1, 0, 0, 0],
        ],
    ),
    # MA OA(243, 6, 3, 5): single defining word of length six.
    "oa243-6-ma": GeneratorMatrix(
        3,
        [
            [1, 0, 0, 0, 0, 2],
            [0, 1, 0, 0, 0, 1],
            [0, 0, 1, 0, 0, 2],
            [0, 0, 0, 1, 0, 2],
            [0, 0, 0, 0, 1, 2],
        ],
    ),
}


@dataclass
class SearchConfig:
    """Knobs for the grouping search; identical configs give identical output."""

    restarts: int = 10_000
    seed: int = 0
    wlp_budget: int = DEFAULT_WLP_BUDGET
    polys: list[gflib.Poly] | None = None
    min_groups: int = 1


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Row rank of a small matrix mod a prime; plain elimination."""
    rows = [row[:] for row in rows]
    n_rows = len(rows)
    n_cols = len(rows[0])
    rank = 0
    for c in range(n_cols):
        piv = None
        for i in range(rank, n_rows):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(n_rows):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def algorithm_42(gen: GeneratorMatrix, cfg: SearchConfig) -> GroupedDesign:
    """Grouping by translated exponent sets (greedy over all shifts).

    Per restart: draw a primitive polynomial (uniformly from the supplied
    list or from all of them), draw a non-singular k x k matrix H by
    rejection, write the columns of H G as PG exponents mod v, then scan
    shifts j = 1, ..., v-1 and keep every translate disjoint from what has
    been collected.  The best restart (largest group count, first found on
    ties) is expanded, re-verified and returned.
    """
    s = gen.s
    k = gen.k
    if not gflib.is_prime(s):
        raise gflib.NonPrimeError(f"grouping search needs a prime level count, got {s}")
    field = gflib.level_field(s)
    if gflib.mat_rank(field, gen.matrix) != k:
        raise RankDeficientError("seed generator must have full row rank")
    polys = cfg.polys or gflib.find_primitive_polys(s, k)
    exts = [gflib.ext_field(s, k, h) for h in polys]
    logs = [ext.log for ext in exts]
    v = (s**k - 1) // (s - 1)

    best: tuple[int, int, list[tuple[int, ...]]] | None = None  # (g, ext index, groups)
    for restart in range(cfg.restarts):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(restart,)))
        which = int(rng.integers(len(exts))) if len(exts) > 1 else 0
        log = logs[which]
        while True:
            h_rows = rng.integers(0, s, size=(k, k)).tolist()
            if _rank_mod_p(h_rows, s) == k:
                break
        h_mat = np.array(h_rows, dtype=np.int64)
        hg = gflib.mat_mul(field, h_mat, gen.matrix)
        base = tuple(log[tuple(int(x) for x in col)] % v for col in hg.T)
        used = set(base)
        groups = [base]
        for j in range(1, v):
            translate = tuple((e + j) % v for e in base)
            if used.isdisjoint(translate):
                used.update(translate)
                groups.append(translate)
        if best is None or len(groups) > best[0]:
            best = (len(groups), which, groups)

    assert best is not None
    g_count, which, groups = best
    if g_count < cfg.min_groups:
        raise NoGroupingError(f"best grouping has g={g_count} < {cfg.min_groups}")
    ext = exts[which]
    exps = [e for grp in groups for e in grp]
    out_gen = generator_from_exponents(ext, exps)
    design = expand_generator(
        out_gen, field,
        origin=f"alg42(s={s},k={k},m={gen.m},h={ext.h},restarts={cfg.restarts},seed={cfg.seed})",
    )
    m = gen.m
    seed_pattern = wlp(gen, cfg.wlp_budget, field)
    claimed = strength_from_wlp(seed_pattern)
    out_groups = []
    for i in range(g_count):
        grp = Group(list(range(i * m, (i + 1) * m)), claimed_strength=claimed)
        grp.wlp = wlp(GeneratorMatrix(s, out_gen.matrix[:, grp.columns]),
                      cfg.wlp_budget, field)
        out_groups.append(grp)
    return annotate(GroupedDesign(design, out_groups, claimed_t0=2, generator=out_gen))


@dataclass
class SurveyRow:
    s: int
    k: int
    m: int
    t: int
    g: int
    wlp_head: tuple[int, int, int, int]  # (A_3, A_4, A_5, A_6), zero padded
    h: gflib.Poly
    max_groups: bool


def survey(s: int, k: int, m_values=None,
           budget: int = DEFAULT_WLP_BUDGET) -> list[SurveyRow]:
    """Best consecutive-powers grouping per group size m in (k, k+4].

    For each m the primitive polynomials are ranked and the winner's group
    parameters are reported; rows whose group count would be zero are
    skipped.  The flag records whether the group count attains the ceiling
    floor(v/m), which the consecutive construction does by design.
    """
    if s**k >= 1000:
        raise ValueError("survey covers run sizes below 1000")
    v = (s**k - 1) // (s - 1)
    rows = []
    for m in m_values or range(k + 1, k + 5):
        g = v // m
        if g < 1:
            continue
        best, pattern = rank_primitive_polys(s, k, m, budget)[0]
        padded = pattern + (0,) * max(0, 6 - len(pattern))
        rows.append(
            SurveyRow(
                s=s, k=k, m=m,
                t=strength_from_wlp(pattern) if m > k else m,
                g=g,
                wlp_head=tuple(padded[2:6]),
                h=best,
                max_groups=(g == v // m),
            )
        )
    return rows


def survey_table(rows: list[SurveyRow]) -> str:
    header = f"{'s':>2} {'k':>2} {'m':>3} {'t':>2} {'g':>4}  {'A3':>4} {'A4':>4} {'A5':>4} {'A6':>4}  h"
    lines = [header]
    for row in rows:
        a3, a4, a5, a6 = row.wlp_head
        flag = "*" if row.max_groups else " "
        lines.append(
            f"{row.s:>2} {row.k:>2} {row.m:>3} {row.t:>2} {row.g:>3}{flag}"
            f"  {a3:>4} {a4:>4} {a5:>4} {a6:>4}  {row.h.format()}"
        )
    return "\n".join(lines)
