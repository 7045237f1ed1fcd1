"""Ground-truth scatteredness decisions by exhaustive scan.

A polynomial S is scattered of index t when equal values of S(x)/x^(q^t) at
distinct nonzero points force the points to be F_q-proportional.  The ratio is
constant on F_q^*-classes, and the class of g^a contains exactly one discrete
log below e = (q^n-1)/(q-1), so the scan walks the canonical representatives
g^0 .. g^(e-1), computes each ratio with table lookups, and groups equal
values.  Scattered means every group is a singleton.

The representative range can be partitioned across worker threads (numpy
releases the GIL on the bulk operations); partial results are merged by a
single owner, and the field context is shared read-only.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BadIndex, FieldTooLarge, HypothesisViolated, ZeroPolynomial
from .field import DEFAULT_CAP, FFElement, FieldCtx, build_field
from .linpoly import LinearizedPolynomial, evaluate_many, normalize, rho_transform

_CHUNK = 1 << 15


@dataclass(frozen=True)
class ScatterReport:
    """Outcome of one exhaustive check.

    ``witness`` is present exactly when not scattered: a pair (y, z) with equal
    ratio values and y/z outside F_q, chosen as the lexicographically smallest
    colliding discrete-log pair for determinism.
    """

    scattered: bool
    index: int
    witness: tuple[FFElement, FFElement] | None
    projective_points: int
    distinct_ratio_values: int
    deciding_pair_count: int | None = None


@dataclass(frozen=True)
class DecidingPairCensus:
    """Counts of pairs with equal ratio values.

    ``equal_ratio_pairs`` counts all ordered pairs of distinct nonzero points
    with equal ratios; ``collinear_pairs`` counts the subset whose quotient
    lies in F_q.  The two coincide exactly on scattered instances.
    """

    index: int
    equal_ratio_pairs: int
    collinear_pairs: int
    pairs: tuple[tuple[FFElement, FFElement], ...]
    truncated: bool


@dataclass(frozen=True)
class TowerVerdict:
    """Oracle verdict for one extension step of the tower."""

    m: int
    extension_degree: int
    field_size: int
    report: ScatterReport


def _ratio_ids(ctx: FieldCtx, s: LinearizedPolynomial, t: int,
               dlogs: np.ndarray) -> np.ndarray:
    """Ratio values as integers: the ratio's dlog, or q^n-1 when S(x) = 0."""
    enc = evaluate_many(ctx, s, dlogs)
    num = ctx._log[enc]
    step = pow(ctx.q, t, ctx.order)
    ids = (num - dlogs * step) % ctx.order
    return np.where(num < 0, ctx.order, ids)


def _scan_ratio_ids(ctx: FieldCtx, s: LinearizedPolynomial, t: int,
                    dlogs: np.ndarray, jobs: int) -> np.ndarray:
    if jobs <= 1 or dlogs.size <= _CHUNK:
        return _ratio_ids(ctx, s, t, dlogs)
    chunks = [dlogs[i:i + _CHUNK] for i in range(0, dlogs.size, _CHUNK)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(lambda c: _ratio_ids(ctx, s, t, c), chunks))
    return np.concatenate(parts)


def _check_index(ctx: FieldCtx, t: int) -> None:
    if not 0 <= t < ctx.n:
        raise BadIndex(f"index {t} out of range 0..{ctx.n - 1}")


def _collisions(ids: np.ndarray):
    """Smallest colliding representative pair plus the distinct-value count."""
    order = np.argsort(ids, kind="stable")
    sorted_ids = ids[order]
    dup = np.nonzero(sorted_ids[:-1] == sorted_ids[1:])[0]
    distinct = int(ids.size - dup.size)
    if dup.size == 0:
        return None, distinct
    # consecutive dup positions belong to one run of equal values
    heads = dup[np.insert(np.diff(dup) != 1, 0, True)]
    # representatives within a run are ascending because the sort is stable
    pairs = np.stack([order[heads], order[heads + 1]], axis=1)
    best = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))][0]
    return (int(best[0]), int(best[1])), distinct


def is_scattered_bruteforce(ctx: FieldCtx, s: LinearizedPolynomial, t: int,
                            jobs: int = 1, census: bool = False,
                            limit: int | None = None) -> ScatterReport:
    """Exhaustive decision of scatteredness of index t.

    One ratio evaluation per projective point; equal values are grouped and
    any non-singleton group yields a witness.
    """
    _check_index(ctx, t)
    if limit is not None and ctx.size > limit:
        raise FieldTooLarge(ctx.size, limit)
    e = ctx.subfield_index
    reps = np.arange(e, dtype=np.int64)
    ids = _scan_ratio_ids(ctx, s, t, reps, jobs)
    collision, distinct = _collisions(ids)

    pair_count = None
    if census:
        _, counts = np.unique(ids, return_counts=True)
        sizes = counts * (ctx.q - 1)
        pair_count = int(np.sum(sizes * (sizes - 1)))

    if collision is None:
        return ScatterReport(True, t, None, e, distinct, pair_count)
    y = ctx.element_from_dlog(collision[0])
    z = ctx.element_from_dlog(collision[1])
    return ScatterReport(False, t, (y, z), e, distinct, pair_count)


def deciding_pairs(ctx: FieldCtx, s: LinearizedPolynomial, t: int,
                   limit: int | None = 64, jobs: int = 1) -> DecidingPairCensus:
    """Census of pairs with equal ratio values, with capped enumeration.

    Enumeration walks value groups by their smallest representative and lists
    ordered pairs (y, z) of distinct members in lexicographic dlog order.
    """
    _check_index(ctx, t)
    e = ctx.subfield_index
    q = ctx.q
    reps = np.arange(e, dtype=np.int64)
    ids = _scan_ratio_ids(ctx, s, t, reps, jobs)

    _, counts = np.unique(ids, return_counts=True)
    sizes = counts * (q - 1)
    equal_ratio = int(np.sum(sizes * (sizes - 1)))
    collinear = ctx.order * (q - 2)

    pairs: list[tuple[FFElement, FFElement]] = []
    truncated = False
    if limit is None or limit > 0:
        order = np.argsort(ids, kind="stable")
        boundaries = np.nonzero(np.diff(ids[order]))[0] + 1
        groups = np.split(order, boundaries)
        for group in sorted(groups, key=lambda g: int(g[0])):
            members = sorted(int(rep) + i * e for rep in group for i in range(q - 1))
            for y in members:
                for z in members:
                    if y == z:
                        continue
                    if limit is not None and len(pairs) >= limit:
                        truncated = True
                        break
                    pairs.append((ctx.element_from_dlog(y), ctx.element_from_dlog(z)))
                if truncated:
                    break
            if truncated:
                break
    return DecidingPairCensus(t, equal_ratio, collinear, tuple(pairs), truncated)


def is_permutation(ctx: FieldCtx, poly: LinearizedPolynomial,
                   jobs: int = 1) -> bool:
    """Bijectivity of the induced map; for linearized maps, a trivial kernel.

    A nonzero root exists iff a canonical representative is one, so the scan
    covers g^0 .. g^(e-1).
    """
    e = ctx.subfield_index
    reps = np.arange(e, dtype=np.int64)
    if jobs <= 1 or reps.size <= _CHUNK:
        return not bool(np.any(evaluate_many(ctx, poly, reps) == 0))
    chunks = [reps[i:i + _CHUNK] for i in range(0, reps.size, _CHUNK)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        hits = pool.map(lambda c: bool(np.any(evaluate_many(ctx, poly, c) == 0)),
                        chunks)
        return not any(hits)


def scattered_via_pp(ctx: FieldCtx, s: LinearizedPolynomial, t: int,
                     strict: bool = True, jobs: int = 1) -> bool:
    """Scatteredness of index t via permutation behavior of the rho transforms.

    Valid when every coefficient's order divides q^t - 1 and 0 < t < r_1
    (``strict=False`` additionally admits t = 0 and t = r_1, where the same
    equivalence holds).  A vanished transform counts as a non-permutation.
    """
    r1 = s.min_exponent
    if strict:
        if not 0 < t < r1:
            raise HypothesisViolated(f"index {t} outside the window 0 < t < {r1}")
    elif not 0 <= t <= r1:
        raise HypothesisViolated(f"index {t} outside the window 0 <= t <= {r1}")
    qt1 = ctx.q**t - 1
    for _, a in s.terms:
        o = ctx.element_order(a)
        if qt1 % o != 0:
            raise HypothesisViolated(
                f"coefficient order {o} does not divide q^t-1 = {qt1}")
    e = ctx.subfield_index
    for a in range(ctx.order):
        if a % e == 0:
            continue  # rho in F_q
        rho = ctx.element_from_dlog(a)
        try:
            transformed = rho_transform(ctx, s, t, rho)
        except ZeroPolynomial:
            return False
        if not is_permutation(ctx, transformed, jobs=jobs):
            return False
    return True


def is_exceptional_desk(p: int, m: int, n: int, s_terms, t: int, m_list,
                        cap: int = DEFAULT_CAP, jobs: int = 1,
                        strict: bool = True) -> list[TowerVerdict]:
    """Run the oracle for the same polynomial across extension steps.

    ``s_terms`` are (exponent, dlog) pairs over the base field F_{q^n}; each
    coefficient g_n^a re-embeds into F_{q^(n*m)} as g_{nm}^(a*D) with
    D = (q^(nm)-1)/(q^n-1), the norm-compatible power map.  A full pass is a
    finite certificate consistent with exceptionality, never a proof.
    """
    base_order = p ** (m * n) - 1
    verdicts = []
    for mm in m_list:
        if mm < 1:
            raise ValueError("extension multipliers must be positive")
        ctx = build_field(p, m, n * mm, cap=cap, strict=strict)
        scale = ctx.order // base_order
        terms = [(r, ctx.element_from_dlog(dlog * scale % ctx.order))
                 for r, dlog in s_terms]
        poly = normalize(ctx, terms)
        report = is_scattered_bruteforce(ctx, poly, t, jobs=jobs)
        verdicts.append(TowerVerdict(mm, ctx.n, ctx.size, report))
    return verdicts
