"""Design objects and the verification primitives everything else leans on.

Nothing in this module trusts a construction: strength is always checked
combinatorially by projecting onto column subsets and counting level
combinations, wordlength patterns are recovered from explicit null-space
enumeration, and the strength-3 triple proportion p(D) is an exact rational
from exhaustive triple counting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf as gflib
from .errors import (
    BudgetExceededError,
    EmptySelectionError,
    RankDeficientError,
    TooFewColumnsError,
)

DEFAULT_WLP_BUDGET = 20_000


@dataclass
class Design:
    """An N x n level matrix with entries in {0, ..., s-1}."""

    s: int
    matrix: np.ndarray
    origin: str = "external"

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64)
        if self.matrix.ndim != 2 or self.matrix.size == 0:
            raise ValueError("design matrix must be 2-d and nonempty")
        if self.matrix.min() < 0 or self.matrix.max() >= self.s:
            raise ValueError(f"levels must lie in 0..{self.s - 1}")

    @property
    def runs(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]


@dataclass
class GeneratorMatrix:
    """k x m full-row-rank matrix over GF(s) generating a regular design."""

    s: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64)

    @property
    def k(self) -> int:
        return self.matrix.shape[0]

    @property
    def m(self) -> int:
        return self.matrix.shape[1]

    def row_strings(self) -> list[str]:
        """Rows as digit strings, the shape design tables are printed in."""
        return ["".join(str(int(x)) for x in row) for row in self.matrix]


@dataclass
class Group:
    """One column group of a grouped design with its claims and findings."""

    columns: list[int]
    claimed_strength: int
    verified_strength: int | None = None
    wlp: tuple[int, ...] | None = None
    p: Fraction | None = None

    @property
    def size(self) -> int:
        return len(self.columns)


@dataclass
class GroupedDesign:
    """A design plus an ordered partition of (a prefix of) its columns."""

    design: Design
    groups: list[Group]
    claimed_t0: int = 2
    verified_t0: int | None = None
    generator: GeneratorMatrix | None = None

    def __post_init__(self):
        seen: set[int] = set()
        for grp in self.groups:
            if seen & set(grp.columns):
                raise ValueError("groups must be pairwise disjoint")
            seen |= set(grp.columns)

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return tuple(g.size for g in self.groups)

    def label(self) -> str:
        """GOA(N, (m_1,...,m_g), (t_1,...,t_g), s, t0) notation."""
        sizes = ",".join(str(g.size) for g in self.groups)
        strengths = ",".join(str(g.verified_strength) for g in self.groups)
        return (
            f"GOA({self.design.runs}, ({sizes}), ({strengths}), "
            f"{self.design.s}, {self.verified_t0})"
        )


@dataclass
class StrengthCheck:
    ok: bool
    t: int
    witness: tuple[int, ...] | None = None
    counts: np.ndarray | None = None
    expected: int | None = None


def expand_generator(gen: GeneratorMatrix, field: gflib.GF | None = None,
                     origin: str | None = None) -> Design:
    """All s^k GF(s)-linear combinations of the rows of the generator.

    Rows are emitted in lexicographic order of the coefficient vector, so
    the same generator always produces the same file.
    """
    field = field or gflib.level_field(gen.s)
    if gflib.mat_rank(field, gen.matrix) != gen.k:
        raise RankDeficientError(f"generator rank < {gen.k}")
    rows = gflib.span(field, gen.matrix)
    return Design(gen.s, rows, origin or "expanded")


def _projection_counts(matrix: np.ndarray, cols, s: int) -> np.ndarray:
    enc = matrix[:, cols[0]].copy()
    for c in cols[1:]:
        enc = enc * s + matrix[:, c]
    return np.bincount(enc, minlength=s ** len(cols))


def check_strength(design: Design, t: int) -> StrengthCheck:
    """Exhaustive strength-t check.

    Passes iff every t-column projection holds each of the s^t level
    combinations exactly N/s^t times.  On failure the witness is the
    lexicographically first offending column set together with its count
    table; failure is a value, not an error.
    """
    if not 1 <= t <= design.cols:
        raise ValueError(f"need 1 <= t <= {design.cols}")
    s, n = design.s, design.cols
    want, rem = divmod(design.runs, s**t)
    for cols in itertools.combinations(range(n), t):
        counts = _projection_counts(design.matrix, cols, s)
        if rem != 0 or not np.all(counts == want):
            return StrengthCheck(False, t, cols, counts, want)
    return StrengthCheck(True, t)


def max_strength(design: Design, cap: int | None = None) -> int:
    """Largest t for which check_strength passes; 0 if even t=1 fails."""
    limit = design.cols if cap is None else min(cap, design.cols)
    best = 0
    for t in range(1, limit + 1):
        if design.runs % design.s**t:
            break
        if not check_strength(design, t).ok:
            break
        best = t
    return best


def wlp(gen: GeneratorMatrix, budget: int = DEFAULT_WLP_BUDGET,
        field: gflib.GF | None = None) -> tuple[int, ...]:
    """Wordlength pattern (A_1, ..., A_m) of a regular design.

    Enumerates the full null space of the generator; scalar multiples of a
    word are identified, so each raw weight count divides by s - 1.
    """
    field = field or gflib.level_field(gen.s)
    basis = gflib.null_space(field, gen.matrix)
    return _wlp_from_null_basis(field, basis, gen.m, budget)


def _wlp_from_null_basis(field: gflib.GF, basis: np.ndarray, m: int,
                         budget: int) -> tuple[int, ...]:
    size = field.s ** basis.shape[0]
    if size > budget:
        raise BudgetExceededError(f"null space of size {size} exceeds budget {budget}")
    vectors = gflib.span(field, basis) if basis.shape[0] else np.zeros((1, m), dtype=np.int64)
    weights = np.count_nonzero(vectors, axis=1)
    hist = np.bincount(weights, minlength=m + 1)
    pattern = []
    for j in range(1, m + 1):
        count, rem = divmod(int(hist[j]), field.s - 1)
        if rem:
            raise AssertionError("weight count not divisible by s-1")
        pattern.append(count)
    return tuple(pattern)


def strength_from_wlp(pattern: tuple[int, ...]) -> int:
    for j, a in enumerate(pattern, start=1):
        if a:
            return j - 1
    return len(pattern)


def regular_row_basis(field: gflib.GF, matrix: np.ndarray) -> np.ndarray | None:
    """Row-space basis if the rows form a linear space (with equal
    multiplicity), else None."""
    basis = gflib.row_space_basis(field, matrix)
    r = basis.shape[0]
    runs = matrix.shape[0]
    lam, rem = divmod(runs, field.s**r)
    if rem or lam == 0:
        return None
    rows, counts = np.unique(matrix, axis=0, return_counts=True)
    if rows.shape[0] != field.s**r or not np.all(counts == lam):
        return None
    return basis


def wlp_of_columns(design: Design, columns, budget: int = DEFAULT_WLP_BUDGET,
                   field: gflib.GF | None = None) -> tuple[int, ...] | None:
    """Wordlength pattern recovered from the design matrix itself.

    Returns None when the projected rows do not form a linear space, i.e.
    the projection is not regular and has no wordlength pattern.
    """
    field = field or gflib.level_field(design.s)
    sub = design.matrix[:, list(columns)]
    basis = regular_row_basis(field, sub)
    if basis is None:
        return None
    null_basis = gflib.null_space(field, basis)
    return _wlp_from_null_basis(field, null_basis, sub.shape[1], budget)


def p_of_d(design: Design, columns=None) -> Fraction:
    """Exact proportion of column triples that form a strength-3 subarray."""
    cols = list(range(design.cols)) if columns is None else list(columns)
    if len(cols) < 3:
        raise TooFewColumnsError("p(D) needs at least three columns")
    s = design.s
    want, rem = divmod(design.runs, s**3)
    if rem:
        return Fraction(0)
    hits = 0
    total = 0
    for triple in itertools.combinations(cols, 3):
        total += 1
        counts = _projection_counts(design.matrix, triple, s)
        if np.all(counts == want):
            hits += 1
    return Fraction(hits, total)


def pg_points(ext: gflib.ExtField) -> list[tuple[int, ...]]:
    """The (s^k-1)/(s-1) points of PG(k-1, s) as beta^0, beta^1, ..."""
    v = (ext.order - 1) // (ext.s - 1)
    return [ext.antilog[i] for i in range(v)]


def shift_exponents(ext: gflib.ExtField, exps, j: int) -> tuple[int, ...]:
    """Translate PG exponents by j, reduced to representatives mod v."""
    v = (ext.order - 1) // (ext.s - 1)
    return tuple((e + j) % v for e in exps)


def generator_from_exponents(ext: gflib.ExtField, exps) -> GeneratorMatrix:
    cols = [ext.antilog[e % (ext.order - 1)] for e in exps]
    return GeneratorMatrix(ext.s, np.array(cols, dtype=np.int64).T)


def annotate(gd: GroupedDesign) -> GroupedDesign:
    """Fill verified strengths by combinatorial checks, capped at the claims.

    A group (or the whole array) is never credited beyond what
    check_strength confirms; shortfalls are recorded, not raised.
    """
    gd.verified_t0 = max_strength(gd.design, cap=gd.claimed_t0)
    for grp in gd.groups:
        sub = subset_design(gd.design, grp.columns)
        grp.verified_strength = max_strength(sub, cap=grp.claimed_strength)
    return gd


def claims_ok(gd: GroupedDesign) -> bool:
    if gd.verified_t0 is None or gd.verified_t0 < gd.claimed_t0:
        return False
    return all(
        g.verified_strength is not None and g.verified_strength >= g.claimed_strength
        for g in gd.groups
    )


@dataclass
class ClaimCheck:
    subject: str
    claim: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    ok: bool
    checks: list[ClaimCheck]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "PASS" if c.ok else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            out.append(f"{c.subject}: {c.claim}: {mark}{detail}")
        return out


def _sorted_rows(matrix: np.ndarray) -> np.ndarray:
    return matrix[np.lexsort(matrix.T[::-1])]


def verify_claims(gd: GroupedDesign, budget: int = DEFAULT_WLP_BUDGET,
                  field: gflib.GF | None = None) -> VerifyReport:
    """Re-verify every claim a design file carries, from the matrix alone.

    Checks, in order: generator consistency (when a generator is stored,
    its expansion must reproduce the row multiset), the whole-array
    strength claim, then per group the strength claim, the stored
    wordlength pattern (recomputed from the projected rows, which must
    form a linear space) and the stored p value.  Any mismatch makes the
    report fail; recomputation stops early only within a failed check.
    """
    field = field or gflib.level_field(gd.design.s)
    checks: list[ClaimCheck] = []

    if gd.generator is not None:
        try:
            regen = expand_generator(gd.generator, field)
            same = regen.runs == gd.design.runs and np.array_equal(
                _sorted_rows(regen.matrix), _sorted_rows(gd.design.matrix)
            )
        except (RankDeficientError, ValueError):
            same = False
        checks.append(ClaimCheck("array", "generator reproduces rows", same))

    t0 = max(gd.claimed_t0, gd.verified_t0 or 0)
    if t0 >= 1:
        res = check_strength(gd.design, t0)
        detail = "" if res.ok else f"witness columns {res.witness}"
        checks.append(ClaimCheck("array", f"strength {t0}", res.ok, detail))

    for idx, grp in enumerate(gd.groups):
        name = f"group {idx + 1} ({grp.size} cols)"
        t = max(grp.claimed_strength, grp.verified_strength or 0)
        if t >= 1:
            sub = subset_design(gd.design, grp.columns)
            res = check_strength(sub, t)
            detail = "" if res.ok else f"witness columns {res.witness}"
            checks.append(ClaimCheck(name, f"strength {t}", res.ok, detail))
        if grp.wlp is not None:
            try:
                recomputed = wlp_of_columns(gd.design, grp.columns, budget, field)
            except BudgetExceededError:
                recomputed = "over budget"
            ok = recomputed == tuple(grp.wlp)
            checks.append(
                ClaimCheck(name, "wordlength pattern", ok,
                           f"stored {tuple(grp.wlp)} recomputed {recomputed}" if not ok else "")
            )
        if grp.p is not None:
            measured = p_of_d(gd.design, grp.columns) if grp.size >= 3 else None
            ok = measured == grp.p
            checks.append(
                ClaimCheck(name, "triple proportion p", ok,
                           f"stored {grp.p} measured {measured}" if not ok else "")
            )

    return VerifyReport(all(c.ok for c in checks), checks)


def subset_design(design: Design, keep) -> Design:
    keep = list(keep)
    if not keep:
        raise EmptySelectionError("no columns kept")
    return Design(design.s, design.matrix[:, keep], design.origin)


def subset_columns(obj, keep):
    """Column projection for a Design or GroupedDesign.

    For a grouped design the groups are intersected with the kept set
    (empty intersections vanish), claims are capped at the new group sizes
    and verified strengths are recomputed.
    """
    keep = list(keep)
    if isinstance(obj, Design):
        return subset_design(obj, keep)
    gd: GroupedDesign = obj
    design = subset_design(gd.design, keep)
    pos = {old: new for new, old in enumerate(keep)}
    groups = []
    for grp in gd.groups:
        cols = [pos[c] for c in grp.columns if c in pos]
        if not cols:
            continue
        groups.append(Group(cols, min(grp.claimed_strength, len(cols))))
    gen = None
    if gd.generator is not None:
        gen = GeneratorMatrix(gd.generator.s, gd.generator.matrix[:, keep])
    out = GroupedDesign(design, groups, min(gd.claimed_t0, len(keep)), None, gen)
    return annotate(out)
