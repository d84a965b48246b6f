"""
Exact minimal cut-and-paste sorting distances for small n.

Breadth-first search over the move graph on S_n, expanded with the
canonical move set.  Distances are stored in a flat byte array indexed by
the factorial-number-system (Lehmer code) rank of each permutation, so a
full table for n has exactly n! entries and persists portably as CSV.

Distances from the identity equal distances to the identity: every
canonical move is undone by another canonical move, so the move graph is
symmetric.  A resource guard rejects n above 9 (9 takes minutes; up to 8
takes seconds).
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from math import factorial

from .metrics import certify_lower_bound, even_before_odd
from .perm import InputError, Permutation, enumerate_moves

DISTANCE_GUARD = 9
TABLE_GUARD = 8
_UNSEEN = 0xFF


class ResourceGuardError(RuntimeError):
    """The request exceeds the configured exhaustive-search limit."""


def rank_permutation(values) -> int:
    """Lehmer-code rank of a permutation of 1..n within 0 .. n!-1."""
    n = len(values)
    rank = 0
    fact = factorial(n - 1) if n else 1
    for i in range(n - 1):
        smaller = 0
        v = values[i]
        for j in range(i + 1, n):
            if values[j] < v:
                smaller += 1
        rank += smaller * fact
        fact //= n - 1 - i
    return rank


def unrank_permutation(n: int, rank: int) -> tuple[int, ...]:
    """Inverse of rank_permutation for the same n."""
    if not 0 <= rank < factorial(n):
        raise InputError(f"rank {rank} out of range for n={n}")
    pool = list(range(1, n + 1))
    out = []
    fact = factorial(n - 1) if n else 1
    for i in range(n - 1):
        digit, rank = divmod(rank, fact)
        out.append(pool.pop(digit))
        fact //= n - 1 - i
    out.extend(pool)
    return tuple(out)


@dataclass
class DistanceTable:
    """Exact distances for every permutation of [n], indexed by rank."""

    n: int
    distances: bytearray
    fmax: int
    witnesses: tuple[Permutation, ...]
    witness_cap: int | None = None

    def distance_of(self, p: Permutation) -> int:
        if p.n != self.n:
            raise InputError(f"table is for n={self.n}, got n={p.n}")
        return self.distances[rank_permutation(p.values)]


def _move_recipes(n: int):
    """Canonical moves as slice recipes (i, j, k, kind-tag) for tuples."""
    recipes = []
    for m in enumerate_moves(n):
        recipes.append((m.i, m.j, m.k, m.kind.value))
    return recipes


def _expand(state: tuple[int, ...], recipes) -> list[tuple[int, ...]]:
    out = []
    for i, j, k, tag in recipes:
        if tag == "swap":
            out.append(state[:i] + state[j:k] + state[i:j] + state[k:])
        elif tag == "swaprl":
            out.append(state[:i] + state[j:k] + state[i:j][::-1] + state[k:])
        elif tag == "swaprr":
            out.append(state[:i] + state[j:k][::-1] + state[i:j] + state[k:])
        else:
            out.append(state[:i] + state[i:k][::-1] + state[k:])
    return out


def bfs_distance(p: Permutation, guard: int = DISTANCE_GUARD) -> int:
    """
    Exact minimum number of canonical moves from p to the identity, by
    forward BFS with early exit.  Rejects n above `guard`.
    """
    n = p.n
    if n > guard:
        raise ResourceGuardError(
            f"exact distance limited to n <= {guard} (got n={n})"
        )
    target = tuple(range(1, n + 1))
    if p.values == target:
        return 0
    recipes = _move_recipes(n)
    seen = {p.values}
    frontier = [p.values]
    dist = 0
    while frontier:
        dist += 1
        nxt = []
        for state in frontier:
            for child in _expand(state, recipes):
                if child == target:
                    return dist
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    raise AssertionError("move graph is connected; unreachable")


def build_table(
    n: int,
    allow_big: bool = False,
    witness_cap: int | None = None,
    progress=None,
) -> DistanceTable:
    """
    Exact distance table for all of S_n by BFS from the identity.

    n <= 8 runs unconditionally; n = 9 needs allow_big=True (minutes).
    `progress`, if given, receives one status line per BFS level.
    """
    limit = DISTANCE_GUARD if allow_big else TABLE_GUARD
    if n > limit:
        hint = "" if allow_big else " (pass the long-run flag for n=9)"
        raise ResourceGuardError(f"table limited to n <= {limit}{hint}")
    total = factorial(n)
    distances = bytearray([_UNSEEN]) * total
    recipes = _move_recipes(n)
    identity = tuple(range(1, n + 1))
    distances[rank_permutation(identity)] = 0
    frontier = [identity]
    dist = 0
    found = 1
    started = time.monotonic()
    while frontier:
        if progress is not None:
            progress(
                f"n={n} depth={dist} frontier={len(frontier)} "
                f"found={found}/{total} t={time.monotonic() - started:.1f}s"
            )
        dist += 1
        nxt = []
        for state in frontier:
            for child in _expand(state, recipes):
                r = rank_permutation(child)
                if distances[r] == _UNSEEN:
                    distances[r] = dist
                    nxt.append(child)
        found += len(nxt)
        frontier = nxt
    fmax = max(distances)
    witnesses = []
    capped = False
    for rank, d in enumerate(distances):
        if d == fmax:
            if witness_cap is not None and len(witnesses) >= witness_cap:
                capped = True
                break
            witnesses.append(Permutation(unrank_permutation(n, rank)))
    return DistanceTable(
        n=n,
        distances=distances,
        fmax=fmax,
        witnesses=tuple(witnesses),
        witness_cap=witness_cap if capped else None,
    )


@dataclass
class VerificationReport:
    n: int
    checked: int
    violations: list[str]
    worst_gap: int  # max (distance - certificate lower bound)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_certificates(table: DistanceTable, sorter=None) -> VerificationReport:
    """
    Cross-check the whole table: certificate <= exact distance, and
    exact distance <= the sorter's move count (default: the anchored
    floor(2n/3) sorter).  Also checks the even-before-odd witness.
    """
    from . import sorter as sorter_mod

    sort = sorter_mod.sort_refined if sorter is None else sorter
    n = table.n
    violations: list[str] = []
    worst_gap = 0
    for rank, d in enumerate(table.distances):
        p = Permutation(unrank_permutation(n, rank))
        cert = certify_lower_bound(p)
        if cert.best > d:
            violations.append(f"certificate {cert.best} exceeds distance {d} for {p}")
        worst_gap = max(worst_gap, d - cert.best)
        moves = sort(p).move_count
        if moves < d:
            violations.append(f"sorter used {moves} < exact distance {d} for {p}")
    if n >= 2:
        ebo = even_before_odd(n)
        if table.distance_of(ebo) < n // 2:
            violations.append(
                f"even-before-odd distance {table.distance_of(ebo)} below {n // 2}"
            )
    return VerificationReport(
        n=n, checked=len(table.distances), violations=violations, worst_gap=worst_gap
    )


def save_table(table: DistanceTable, path: str) -> None:
    """CSV with `rank,distance` rows, preceded by `# n=` / `# fmax=` lines."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# n={table.n}\n")
        fh.write(f"# fmax={table.fmax}\n")
        fh.write("rank,distance\n")
        for rank, d in enumerate(table.distances):
            fh.write(f"{rank},{d}\n")


def load_table(path: str) -> DistanceTable:
    n = fmax = None
    rows: dict[int, int] = {}
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                if key == "n":
                    n = int(value)
                elif key == "fmax":
                    fmax = int(value)
                continue
            if line == "rank,distance":
                continue
            rank_text, _, d_text = line.partition(",")
            rows[int(rank_text)] = int(d_text)
    if n is None:
        raise InputError(f"{path}: missing '# n=' header")
    total = factorial(n)
    if len(rows) != total:
        raise InputError(f"{path}: expected {total} rows, found {len(rows)}")
    distances = bytearray(total)
    for rank, d in rows.items():
        distances[rank] = d
    table_max = max(distances)
    if fmax is not None and fmax != table_max:
        raise InputError(f"{path}: fmax header {fmax} != table maximum {table_max}")
    witnesses = tuple(
        Permutation(unrank_permutation(n, rank))
        for rank, d in enumerate(distances)
        if d == table_max
    )
    return DistanceTable(n=n, distances=distances, fmax=table_max, witnesses=witnesses)


def save_witnesses(table: DistanceTable, path: str) -> None:
    """One worst-case permutation per line, in the standard text format."""
    with open(path, "w", encoding="ascii") as fh:
        for w in table.witnesses:
            fh.write(" ".join(map(str, w.values)) + "\n")


def main_progress(line: str) -> None:
    print(line, file=sys.stderr)
