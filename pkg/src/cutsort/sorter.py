"""
Bounded sorting algorithms emitting verifiable traces.

Two weight-function sorters share one main loop.  While the permutation
keeps an increasing block at the front, each step either

  * BLOCK:  merges two blocks holding consecutive values   (gain >= 1),
  * BONUS / EXTRA_BONUS:  inserts a string between the front block's last
    value l and the following element p so that both junctions become
    adjacencies                                            (gain >= 1), or
  * ABSORBING_PAIR:  two moves, an absorbing insertion followed by a
    double-junction insertion against the front block      (gain >= 2),

so the weight (blocks + 2/3 singletons) falls by at least 1 per move on
average.  `sort_basic` works with the circular value convention and ends
with one rotation: at most floor(2n/3) + 1 moves.  `sort_refined` keeps
value 1 anchored in front, works linearly inside shrinking windows for
the small-first-element special cases, and needs no final rotation: at
most floor(2n/3) moves.

Every step's gain is re-measured before it is committed; a shortfall or
a broken adjacency raises DiagnosticFailure instead of emitting a bad
trace.  Gains are measured on the window the step acted on (recorded in
the step), in integer thirds.

Baselines: `sort_insertion` (<= n-1 moves) and `sort_monotone`
(<= n - ceil(sqrt(n)) + 1 moves via a longest monotone subsequence).
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .metrics import Mode, Orientation, segment_spans, weight_thirds_values
from .perm import (
    Move,
    MoveKind,
    Permutation,
    Trace,
    TraceNote,
    adjacency_count_values,
    apply_move_values,
)


class StepCategory(Enum):
    OPENING = "opening"
    SPECIAL_OPENING = "special_opening"
    BLOCK = "block"
    BONUS = "bonus"
    EXTRA_BONUS = "extra_bonus"
    ABSORBING_PAIR = "absorbing_pair"
    CLOSING = "closing"


# Minimum measured gain per category, in thirds.  Opening and closing
# moves carry their cost in the move-count bound, not a gain claim.
GAIN_FLOORS = {
    StepCategory.BLOCK: 3,
    StepCategory.BONUS: 3,
    StepCategory.EXTRA_BONUS: 4,
    StepCategory.ABSORBING_PAIR: 6,
}


class DiagnosticFailure(RuntimeError):
    """The sorter could not construct a valid step; carries the state."""

    def __init__(self, message: str, values: tuple[int, ...]):
        super().__init__(f"{message}; state: {' '.join(map(str, values))}")
        self.values = values


@dataclass(frozen=True)
class SortStep:
    """One or two moves with their category and measured gain (thirds)."""

    moves: tuple[Move, ...]
    category: StepCategory
    claimed_gain: int | None
    window: tuple[int, int]  # 0-based inclusive position range of the gain frame
    mode: Mode


@dataclass
class SortResult:
    trace: Trace
    move_count: int
    bound: int
    category_histogram: dict[str, int]
    steps: tuple[SortStep, ...]
    algorithm: str


def splice_move(gs: int, gt: int, g: int, reverse: bool) -> Move:
    """
    Move that cuts positions [gs, gt) and pastes them (optionally
    reversed) at gap g of the same indexing.  g must lie outside (gs, gt);
    g == gs or g == gt demands reverse=True and yields in-place REVERSE.
    """
    if g == gs or g == gt:
        if not reverse:
            raise ValueError("no-op splice")
        return Move(gs, gt, gt, MoveKind.REVERSE)
    if g < gs:
        return Move(g, gs, gt, MoveKind.SWAP_REV_RIGHT if reverse else MoveKind.SWAP)
    if g > gt:
        return Move(gs, gt, g, MoveKind.SWAP_REV_LEFT if reverse else MoveKind.SWAP)
    raise ValueError("paste gap inside the cut span")


def _is_block(span: tuple[int, int, Orientation | None]) -> bool:
    return span[1] - span[0] >= 2


class _Run:
    """Mutable sorting state over a position window [lo, hi]."""

    def __init__(self, values, mode: Mode):
        self.vals: list[int] = list(values)
        self.n = len(self.vals)
        self.mode = mode
        self.lo = 0
        self.hi = self.n - 1
        self.moves: list[Move] = []
        self.steps: list[SortStep] = []
        self.notes: list[TraceNote] = []
        self._weight_now: int | None = None

    # The windows used by the anchored sorter always hold the contiguous
    # value range lo+1 .. hi+1 (everything outside is already in place).
    @property
    def vlo(self) -> int:
        return self.lo + 1

    @property
    def vhi(self) -> int:
        return self.hi + 1

    def wsize(self) -> int:
        return self.hi - self.lo + 1

    def succ(self, v: int) -> int | None:
        if self.mode is Mode.CIRCULAR:
            return v % self.n + 1
        return v + 1 if v < self.vhi else None

    def pred(self, v: int) -> int | None:
        if self.mode is Mode.CIRCULAR:
            return self.n if v == 1 else v - 1
        return v - 1 if v > self.vlo else None

    def spans(self, vals=None):
        return segment_spans(
            self.vals if vals is None else vals, self.mode, self.lo, self.hi, self.vlo
        )

    def weight(self, vals=None) -> int:
        return weight_thirds_values(
            self.vals if vals is None else vals, self.mode, self.lo, self.hi, self.vlo
        )

    def structure(self, vals=None):
        vals = self.vals if vals is None else vals
        spans = self.spans(vals)
        seg_of = [0] * (self.hi + 1)
        for idx, (a, b, _) in enumerate(spans):
            for t in range(a, b):
                seg_of[t] = idx
        pos_of = [0] * (self.vhi + 1)
        for t in range(self.lo, self.hi + 1):
            pos_of[vals[t]] = t
        return spans, seg_of, pos_of

    def window_sorted(self, vals=None) -> bool:
        vals = self.vals if vals is None else vals
        return all(vals[t] == t + 1 for t in range(self.lo, self.hi + 1))

    def front_span(self, vals) -> tuple[int, int]:
        """(stop, direction) of the maximal front segment; early-exit scan.

        direction: +1 increasing, -1 decreasing, 0 single element.
        """
        wrap = (self.hi - self.lo) if self.mode is Mode.CIRCULAR else 0
        t = self.lo
        direction = 0
        while t < self.hi:
            d = vals[t + 1] - vals[t]
            if d == 1 or (wrap and d == -wrap):
                step = 1
            elif d == -1 or (wrap and d == wrap):
                step = -1
            else:
                break
            if direction and step != direction:
                break
            direction = step
            t += 1
        return t + 1, direction

    def front_ok(self, vals) -> bool:
        stop, direction = self.front_span(vals)
        if stop - self.lo < 2 or direction != 1:
            return False
        if self.mode is Mode.LINEAR and vals[self.lo] != self.vlo:
            return False
        return True

    def measure(self, moves, start=None, start_weight=None):
        """Apply moves to a copy; None if the adjacency count ever drops.

        Returns (final values, window weight gain in thirds).
        """
        cur = list(self.vals if start is None else start)
        w0 = self.weight(cur) if start_weight is None else start_weight
        prev = adjacency_count_values(cur)
        for m in moves:
            cur = apply_move_values(cur, m)
            count = adjacency_count_values(cur)
            if count < prev:
                return None
            prev = count
        return cur, w0 - self.weight(cur)

    def commit(self, step: SortStep) -> None:
        self.notes.append(
            TraceNote(len(self.moves), step.category.value, step.claimed_gain)
        )
        for m in step.moves:
            self.vals = apply_move_values(self.vals, m)
            self.moves.append(m)
        self.steps.append(step)

    def commit_checked(self, moves, category: StepCategory) -> None:
        measured = self.measure(moves)
        if measured is None:
            raise DiagnosticFailure(
                f"{category.value} move breaks adjacencies", tuple(self.vals)
            )
        _, gain = measured
        self.commit(
            SortStep(tuple(moves), category, gain, (self.lo, self.hi), self.mode)
        )

    # ------------------------------------------------------------------
    # Main-loop step planners.  Each returns a validated SortStep or None.
    # ------------------------------------------------------------------

    def _try_step(self, moves, category: StepCategory) -> SortStep | None:
        measured = self.measure(moves, start_weight=self._weight_now)
        if measured is None:
            return None
        post, gain = measured
        if gain < GAIN_FLOORS[category]:
            return None
        if not self.front_ok(post):
            return None
        return SortStep(tuple(moves), category, gain, (self.lo, self.hi), self.mode)

    def plan_block_merge(self, struct=None) -> SortStep | None:
        """Consecutive values in two distinct blocks: merge them."""
        spans, seg_of, pos_of = struct if struct is not None else self.structure()
        front_seg = seg_of[self.lo]
        if self.mode is Mode.CIRCULAR:
            pairs = [(v, v % self.n + 1) for v in range(1, self.n + 1)]
        else:
            pairs = [(v, v + 1) for v in range(self.vlo, self.vhi)]
        for v, w in pairs:
            pv, pw = pos_of[v], pos_of[w]
            sv, sw = seg_of[pv], seg_of[pw]
            if sv == sw or not _is_block(spans[sv]) or not _is_block(spans[sw]):
                continue
            if sv == front_seg:
                order = [(sw, sv, w, v)]
            elif sw == front_seg:
                order = [(sv, sw, v, w)]
            elif spans[sv][0] < spans[sw][0]:
                order = [(sw, sv, w, v), (sv, sw, v, w)]
            else:
                order = [(sv, sw, v, w), (sw, sv, w, v)]
            for cut_seg, keep_seg, vcut, vkeep in order:
                move = self._merge_move(
                    spans[cut_seg], spans[keep_seg], pos_of[vcut], pos_of[vkeep]
                )
                if move is None:
                    continue
                step = self._try_step([move], StepCategory.BLOCK)
                if step is not None:
                    return step
        return None

    def _merge_move(self, cut, keep, pcut: int, pkeep: int) -> Move | None:
        if pkeep == keep[1] - 1:  # junction on keep's right side
            gap = keep[1]
            reverse = pcut != cut[0]
        elif pkeep == keep[0]:  # junction on keep's left side
            gap = keep[0]
            reverse = pcut != cut[1] - 1
        else:
            return None
        try:
            return splice_move(cut[0], cut[1], gap, reverse)
        except ValueError:
            return None

    def plan_menu(self, struct=None) -> SortStep | None:
        """The bonus / absorbing-pair case analysis at the front block."""
        spans, seg_of, pos_of = struct if struct is not None else self.structure()
        front = spans[0]
        if not self.front_ok(self.vals):
            return None
        gap = front[1]
        if gap > self.hi:
            return None
        last = self.vals[gap - 1]
        front_next = self.succ(last)
        if front_next is None:
            return None
        pos_fn = pos_of[front_next]
        if _is_block(spans[seg_of[pos_fn]]):
            return None  # a block merge was available; planner order was violated
        after = self.vals[gap]

        cands = []
        for cand in (self.pred(after), self.succ(after)):
            if cand is None:
                continue
            pc = pos_of[cand]
            if abs(pc - gap) == 1:
                continue  # located next to `after`
            if pc < front[1]:
                continue  # inside the front block
            cseg = spans[seg_of[pc]]
            singleton = not _is_block(cseg)
            s, t = min(pos_fn, pc), max(pos_fn, pc)
            contained = cseg[0] >= s and cseg[1] - 1 <= t
            enabling = singleton or contained
            cands.append((0 if singleton else (1 if enabling else 2), cand, pc, cseg))
        cands.sort()

        for rank, cand, pc, cseg in cands:
            if rank > 1:
                continue
            s, t = min(pos_fn, pc), max(pos_fn, pc)
            move = splice_move(s, t + 1, gap, reverse=pc < pos_fn)
            category = StepCategory.BONUS if rank == 0 else StepCategory.EXTRA_BONUS
            step = self._try_step([move], category)
            if step is not None:
                return step
        for rank, cand, pc, cseg in cands:
            if rank != 2:
                continue
            step = self._plan_absorbing_pair(gap, front_next, cand, pc, cseg, pos_of)
            if step is not None:
                return step
        return None

    def _plan_absorbing_pair(
        self, gap, front_next, cand, pc, cseg, pos_of
    ) -> SortStep | None:
        far_pos = cseg[1] - 1 if pc == cseg[0] else cseg[0]
        far_end = self.vals[far_pos]
        far_next_cands = [
            x
            for x in (self.pred(far_end), self.succ(far_end))
            if x is not None and not (cseg[0] <= pos_of[x] < cseg[1])
        ]
        move_a = splice_move(cseg[0], cseg[1], gap, reverse=pc == cseg[0])
        first = self.measure([move_a])
        if first is None:
            return None
        mid, _ = first
        p_fn = mid.index(front_next)
        for far_next in far_next_cands:
            p_qn = mid.index(far_next)
            s, t = min(p_fn, p_qn), max(p_fn, p_qn)
            if s <= gap + (cseg[1] - cseg[0]):
                continue  # the string must stay clear of the re-homed block
            move_b = splice_move(s, t + 1, gap, reverse=p_qn < p_fn)
            step = self._try_step([move_a, move_b], StepCategory.ABSORBING_PAIR)
            if step is not None:
                return step
        return None

    def plan_fallback_single(self, min_gain: int, vals=None) -> SortStep | None:
        """
        Deterministic scan for any single insertion that creates matching
        junctions at some slot and measurably gains at least `min_gain`
        thirds.  Covers front-anchored states the primary case analysis
        cannot serve (e.g. the window maximum sitting in a descending
        block right after the front block, which has no free neighbor).
        """
        base = self.vals if vals is None else vals
        spans, seg_of, pos_of = self.structure(base)
        front_stop = spans[0][1]
        for g in range(front_stop, self.hi + 2):
            u = base[g - 1]
            w = base[g] if g <= self.hi else None
            if w is not None and seg_of[g - 1] == seg_of[g]:
                continue
            xs = [x for x in (self.pred(u), self.succ(u)) if x is not None and x != w]
            if w is None:
                for x in xs:
                    xseg = spans[seg_of[pos_of[x]]]
                    if xseg[0] < front_stop or xseg[0] <= g - 1 < xseg[1]:
                        continue
                    move = splice_move(
                        xseg[0], xseg[1], g, reverse=pos_of[x] != xseg[0]
                    )
                    step = self._try_move_on(base, move, min_gain)
                    if step is not None:
                        return step
                continue
            ys = [y for y in (self.pred(w), self.succ(w)) if y is not None and y != u]
            for x in xs:
                px = pos_of[x]
                for y in ys:
                    py = pos_of[y]
                    s, t = min(px, py), max(px, py)
                    if s < front_stop or s <= g - 1 <= t or s <= g <= t:
                        continue
                    move = splice_move(s, t + 1, g, reverse=px > py)
                    step = self._try_move_on(base, move, min_gain)
                    if step is not None:
                        return step
        return None

    def _try_move_on(self, base, move, min_gain) -> SortStep | None:
        measured = self.measure([move], start=base)
        if measured is None:
            return None
        post, gain = measured
        if gain < min_gain or not self.front_ok(post):
            return None
        return SortStep((move,), StepCategory.BONUS, gain, (self.lo, self.hi), self.mode)

    def plan_fallback_pair(self) -> SortStep | None:
        """Absorbing move plus a compensating insertion, found by scan."""
        spans, seg_of, pos_of = self.structure()
        front_stop = spans[0][1]
        for seg in spans[1:]:
            if not _is_block(seg):
                continue
            for end_pos in (seg[0], seg[1] - 1):
                end_val = self.vals[end_pos]
                for target in (self.pred(end_val), self.succ(end_val)):
                    if target is None:
                        continue
                    pt = pos_of[target]
                    if seg[0] <= pt < seg[1] or pt < front_stop:
                        continue
                    if _is_block(spans[seg_of[pt]]):
                        continue
                    for gap, reverse in (
                        (pt + 1, end_pos != seg[0]),
                        (pt, end_pos != seg[1] - 1),
                    ):
                        if not front_stop <= gap <= self.hi + 1:
                            continue
                        if seg[0] <= gap <= seg[1]:
                            continue
                        move_a = splice_move(seg[0], seg[1], gap, reverse)
                        first = self.measure([move_a])
                        if first is None:
                            continue
                        mid, gain_a = first
                        if gain_a < 2 or not self.front_ok(mid):
                            continue
                        follow = self.plan_fallback_single(6 - gain_a, vals=mid)
                        if follow is None:
                            continue
                        moves = (move_a,) + follow.moves
                        step = self._try_step(list(moves), StepCategory.ABSORBING_PAIR)
                        if step is not None:
                            return step
        return None

    def plan_next(self) -> SortStep | None:
        struct = self.structure()
        self._weight_now = self.weight()
        return (
            self.plan_block_merge(struct)
            or self.plan_menu(struct)
            or self.plan_fallback_single(3)
            or self.plan_fallback_pair()
        )

    def main_loop(self, done) -> None:
        budget = 3 * self.n + 16
        while not done():
            step = self.plan_next()
            if step is None:
                raise DiagnosticFailure("no valid step", tuple(self.vals))
            self.commit(step)
            budget -= 1
            if budget <= 0:
                raise DiagnosticFailure("step budget exceeded", tuple(self.vals))

    # ------------------------------------------------------------------
    # Whole-algorithm drivers.
    # ------------------------------------------------------------------

    def run_basic(self) -> None:
        if self.window_sorted():
            return
        spans = self.spans()
        front = spans[0]
        single = len(spans) == 1
        if not (single and front[2] is Orientation.INCREASING):
            if not (_is_block(front) and front[2] is Orientation.INCREASING):
                self._basic_opening()
            self.main_loop(self._basic_done)
        if not self.window_sorted():
            idx_top = self.vals.index(self.n)
            self.commit_checked(
                [splice_move(0, idx_top + 1, self.n, reverse=False)],
                StepCategory.CLOSING,
            )
        if not self.window_sorted():
            raise DiagnosticFailure("closing rotation missed", tuple(self.vals))

    def _basic_done(self) -> bool:
        stop, direction = self.front_span(self.vals)
        return stop == self.hi + 1 and direction == 1

    def _basic_opening(self) -> None:
        """
        One move that establishes an increasing block at the front: reverse
        a decreasing front run in place, or fetch the run holding the front
        value's successor (or predecessor) and paste it against the front.
        Plans are tried in order and validated; wrapped runs can shift a
        boundary value away from its end, so plain runs serve as backups.
        """
        plans: list[Move] = []
        plain = segment_spans(self.vals, Mode.LINEAR, self.lo, self.hi, self.vlo)
        first = self.vals[0]
        for spans in (self.spans(), plain):
            front = spans[0]
            if _is_block(front) and front[2] is Orientation.DECREASING:
                plans.append(splice_move(0, front[1], 0, reverse=True))
        for target, paste_after in ((self.succ(first), True), (self.pred(first), False)):
            for spans in (self.spans(), plain):
                pt = self.vals.index(target)
                seg = next(s for s in spans if s[0] <= pt < s[1])
                if seg[0] == 0:
                    continue  # cutting the front apart is never the opening
                if pt not in (seg[0], seg[1] - 1):
                    continue
                if paste_after:
                    plans.append(splice_move(seg[0], seg[1], 1, reverse=pt != seg[0]))
                else:
                    plans.append(
                        splice_move(seg[0], seg[1], 0, reverse=pt != seg[1] - 1)
                    )
        tried = set()
        for move in plans:
            if move in tried:
                continue
            tried.add(move)
            measured = self.measure([move])
            if measured is None or not self.front_ok(measured[0]):
                continue
            self.commit(
                SortStep(
                    (move,),
                    StepCategory.OPENING,
                    measured[1],
                    (self.lo, self.hi),
                    self.mode,
                )
            )
            return
        raise DiagnosticFailure("no valid opening move", tuple(self.vals))

    def run_refined(self) -> None:
        while self.wsize() > 3:
            if self.window_sorted():
                return
            first = self.vals[self.lo]
            if first == self.vlo:
                self.lo += 1
                continue
            spans, seg_of, pos_of = self.structure()
            p_min = pos_of[self.vlo]
            min_seg = spans[seg_of[p_min]]
            if _is_block(min_seg):
                # the window minimum sits in a block: front the whole block,
                # minimum first, and run the main loop from there
                self.commit_checked(
                    [
                        splice_move(
                            min_seg[0], min_seg[1], self.lo, reverse=p_min != min_seg[0]
                        )
                    ],
                    StepCategory.SPECIAL_OPENING,
                )
                self.main_loop(self.window_sorted)
                return
            if first == self.vlo + 1:
                self.commit_checked(
                    [splice_move(p_min, p_min + 1, self.lo, reverse=False)],
                    StepCategory.SPECIAL_OPENING,
                )
                self.lo += 1
                continue
            outcome = self._refined_general_opening(pos_of)
            if outcome == "loop":
                self.main_loop(self.window_sorted)
                return
            if outcome == "shrink":
                continue
            raise DiagnosticFailure("no valid opening", tuple(self.vals))
        self._tail_lookup()

    def _gap_clean(self, vals, g: int) -> bool:
        """No block junction straddles gap g (window-linear values)."""
        if g <= self.lo or g > self.hi:
            return True
        return abs(vals[g - 1] - vals[g]) != 1

    def _refined_general_opening(self, pos_of) -> str:
        first = self.vals[self.lo]
        p_min = pos_of[self.vlo]
        plans = []
        for idx, near in enumerate((first - 1, first + 1)):
            if near > self.vhi:
                continue
            pa = pos_of[near]
            s, t = min(p_min, pa), max(p_min, pa)
            clean = self._gap_clean(self.vals, s) and self._gap_clean(self.vals, t + 1)
            beside_min = self.vals[p_min + 1] if pa > p_min else self.vals[p_min - 1]
            plans.append((0 if clean else 1, idx, near, pa, s, t, beside_min))
        plans.sort()
        for _, _, near, pa, s, t, beside_min in plans:
            if beside_min == self.vhi:
                if self._try_top_adjacent_special():
                    return "shrink"
                continue
            move1 = splice_move(s, t + 1, self.lo, reverse=pa < p_min)
            first_leg = self.measure([move1])
            if first_leg is None:
                continue
            mid, _ = first_leg
            if mid[self.lo] != self.vlo:
                continue
            if mid[self.lo + 1] == self.vlo + 1:
                if self.front_ok(mid):
                    self.commit_checked([move1], StepCategory.OPENING)
                    return "loop"
                continue
            for move2 in self._second_opening_moves(mid):
                both = self.measure([move1, move2])
                if both is None:
                    continue
                post, _ = both
                if post[self.lo] != self.vlo or post[self.lo + 1] != self.vlo + 1:
                    continue
                if self.weight(post) > 2 * self.wsize() - 3:
                    continue
                if not self.front_ok(post):
                    continue
                self.commit_checked([move1, move2], StepCategory.OPENING)
                return "loop"
        return "fail"

    def _second_opening_moves(self, mid):
        """Candidate second opening moves on the post-first-move state."""
        second = mid[self.lo + 1]
        spans, seg_of, pos_of = self.structure(mid)
        p_two = pos_of[self.vlo + 1]
        cands: list[tuple[int, int, int, int]] = []
        order = 0
        for near in (second - 1, second + 1):
            if not self.vlo + 1 <= near <= self.vhi or near == second:
                continue
            pb = pos_of[near]
            if pb <= self.lo + 1:
                continue
            s, t = min(p_two, pb), max(p_two, pb)
            clean = self._gap_clean(mid, s) and self._gap_clean(mid, t + 1)
            cands.append((0 if clean else 2, order, s, t))
            order += 1
            nseg = spans[seg_of[pb]]
            if _is_block(nseg) and not (nseg[0] <= p_two < nseg[1]):
                s2, t2 = min(s, nseg[0]), max(t, nseg[1] - 1)
                cands.append((3, order, s2, t2))
                order += 1
        two_seg = spans[seg_of[p_two]]
        if _is_block(two_seg):
            cands.append((1, order, two_seg[0], two_seg[1] - 1))
            order += 1
        for far in range(self.vlo + 2, self.vhi + 1):
            if far == second:
                continue
            pf = pos_of[far]
            if pf <= self.lo + 1:
                continue
            cands.append((4, far, min(p_two, pf), max(p_two, pf)))
        cands.sort()
        seen = set()
        for _, _, s, t in cands:
            if s <= self.lo + 1 or (s, t) in seen:
                continue
            seen.add((s, t))
            yield splice_move(s, t + 1, self.lo + 1, reverse=p_two != s)

    def _try_top_adjacent_special(self) -> bool:
        """
        The window minimum sits next to the window maximum.  Front the
        pair (with the maximum's whole block), dump everything before the
        second-smallest value to the back reversed, and shrink the window
        on both sides: min and min+1 are placed in front, max at the back.
        """
        spans, seg_of, pos_of = self.structure()
        p_min, p_top = pos_of[self.vlo], pos_of[self.vhi]
        if abs(p_top - p_min) != 1:
            return False
        top_seg = spans[seg_of[p_top]]
        if p_top > p_min:
            if top_seg[0] != p_top:
                return False
            s, t = p_min, top_seg[1] - 1
        else:
            if top_seg[1] - 1 != p_top:
                return False
            s, t = top_seg[0], p_min
        move1 = splice_move(s, t + 1, self.lo, reverse=p_top < p_min)
        first_leg = self.measure([move1])
        if first_leg is None:
            return False
        mid, _ = first_leg
        if mid[self.lo] != self.vlo or mid[self.lo + 1] != self.vhi:
            return False
        p_two = mid.index(self.vlo + 1)
        move2 = splice_move(self.lo + 1, p_two, self.hi + 1, reverse=True)
        both = self.measure([move1, move2])
        if both is None:
            return False
        post, _ = both
        if not (
            post[self.lo] == self.vlo
            and post[self.lo + 1] == self.vlo + 1
            and post[self.hi] == self.vhi
        ):
            return False
        self.commit_checked([move1, move2], StepCategory.SPECIAL_OPENING)
        self.lo += 2
        self.hi -= 1
        return True

    def _tail_lookup(self) -> None:
        if self.wsize() <= 0 or self.window_sorted():
            return
        lo = self.lo
        rel = tuple(v - lo for v in self.vals[lo : self.hi + 1])
        table = {
            (2, 1): (lo, lo + 2, lo, True),
            (1, 3, 2): (lo + 1, lo + 3, lo + 1, True),
            (2, 1, 3): (lo, lo + 2, lo, True),
            (2, 3, 1): (lo, lo + 2, lo + 3, False),
            (3, 1, 2): (lo, lo + 1, lo + 3, False),
            (3, 2, 1): (lo, lo + 3, lo, True),
        }
        gs, gt, g, rev = table[rel]
        self.commit_checked([splice_move(gs, gt, g, rev)], StepCategory.CLOSING)
        if not self.window_sorted():
            raise DiagnosticFailure("tail lookup missed", tuple(self.vals))


def _finish(
    p: Permutation, run: _Run, bound: int, algorithm: str, final=None
) -> SortResult:
    trace = Trace(p, tuple(run.moves), tuple(run.notes))
    reached = tuple(run.vals if final is None else final)
    if reached != tuple(range(1, p.n + 1)):
        raise DiagnosticFailure("trace does not sort", p.values)
    if len(run.moves) > bound:
        raise DiagnosticFailure(
            f"{algorithm}: {len(run.moves)} moves exceeds bound {bound}", p.values
        )
    histogram: dict[str, int] = {}
    for step in run.steps:
        histogram[step.category.value] = histogram.get(step.category.value, 0) + 1
    return SortResult(
        trace=trace,
        move_count=len(run.moves),
        bound=bound,
        category_histogram=histogram,
        steps=tuple(run.steps),
        algorithm=algorithm,
    )


def sort_basic(p: Permutation) -> SortResult:
    """Sort with the circular-convention loop: at most floor(2n/3)+1 moves."""
    run = _Run(p.values, Mode.CIRCULAR)
    run.run_basic()
    return _finish(p, run, 2 * p.n // 3 + 1, "basic")


def sort_refined(p: Permutation) -> SortResult:
    """Sort keeping value 1 anchored in front: at most floor(2n/3) moves."""
    run = _Run(p.values, Mode.LINEAR)
    run.run_refined()
    return _finish(p, run, 2 * p.n // 3, "refined")


def plan_step(p: Permutation, mode: Mode) -> SortStep:
    """
    One main-loop step for a state with an increasing front block (LINEAR
    mode: anchored at value 1).  Used to inspect the case analysis.
    """
    run = _Run(p.values, mode)
    step = run.plan_next()
    if step is None:
        raise DiagnosticFailure("no valid step", p.values)
    return step


def sort_insertion(p: Permutation) -> SortResult:
    """Insertion sort: each move files one element into the sorted prefix."""
    vals = list(p.values)
    run = _Run(p.values, Mode.LINEAR)  # reused only as a move recorder
    moves: list[Move] = []
    k = 1
    while k < len(vals):
        if vals[k] > vals[k - 1]:
            k += 1
            continue
        slot = bisect_left(vals, vals[k], 0, k)
        move = splice_move(k, k + 1, slot, reverse=False)
        vals = apply_move_values(vals, move)
        moves.append(move)
        k += 1
    run.moves = moves
    return _finish(p, run, max(p.n - 1, 0), "insertion", final=vals)


def longest_monotone(p: Permutation) -> tuple[str, tuple[int, ...]]:
    """
    A maximum-length monotone subsequence: ("increasing" or "decreasing",
    0-based index tuple).  Ties prefer increasing, then the
    lexicographically smallest index sequence.  Length >= ceil(sqrt(n)).
    """
    vals = p.values
    n = len(vals)
    inc_from = _monotone_lengths(vals, increasing=True)
    dec_from = _monotone_lengths(vals, increasing=False)
    best_inc, best_dec = max(inc_from), max(dec_from)
    if best_inc >= best_dec:
        orientation, lengths, length = "increasing", inc_from, best_inc
    else:
        orientation, lengths, length = "decreasing", dec_from, best_dec
    up = orientation == "increasing"
    indices: list[int] = []
    need = length
    last: int | None = None
    for i in range(n):
        if lengths[i] != need:
            continue
        if last is not None and not (vals[i] > last if up else vals[i] < last):
            continue
        indices.append(i)
        last = vals[i]
        need -= 1
        if need == 0:
            break
    return orientation, tuple(indices)


def _monotone_lengths(vals, increasing: bool) -> list[int]:
    """lengths[i] = longest monotone run of the given sense starting at i."""
    n = len(vals)
    tree = [0] * (n + 1)

    def update(i: int, value: int) -> None:
        while i <= n:
            if tree[i] < value:
                tree[i] = value
            i += i & -i

    def query(i: int) -> int:
        best = 0
        while i > 0:
            if tree[i] > best:
                best = tree[i]
            i -= i & -i
        return best

    lengths = [0] * n
    for i in range(n - 1, -1, -1):
        v = vals[i]
        key = (n + 1 - v) if increasing else v
        lengths[i] = 1 + query(key - 1)
        update(key, lengths[i])
    return lengths


def sort_monotone(p: Permutation) -> SortResult:
    """
    Insert every element outside a longest monotone subsequence into its
    place along that subsequence, then reverse once if it was decreasing.
    """
    orientation, indices = longest_monotone(p)
    up = orientation == "increasing"
    vals = list(p.values)
    n = len(vals)
    spine = sorted(vals[i] for i in indices)
    members = set(spine)
    moves: list[Move] = []
    for v in sorted(vv for vv in vals if vv not in members):
        pos = vals.index(v)
        if up:
            rank = bisect_left(spine, v)
            gap = 0 if rank == 0 else vals.index(spine[rank - 1]) + 1
        else:
            rank = bisect_left(spine, v + 1)
            gap = 0 if rank == len(spine) else vals.index(spine[rank]) + 1
        if gap not in (pos, pos + 1):
            move = splice_move(pos, pos + 1, gap, reverse=False)
            vals = apply_move_values(vals, move)
            moves.append(move)
        insort(spine, v)
    if not up and vals != list(range(1, n + 1)):
        move = splice_move(0, n, 0, reverse=True)
        vals = apply_move_values(vals, move)
        moves.append(move)
    run = _Run(p.values, Mode.LINEAR)
    run.moves = moves
    root = isqrt(n)
    sqrt_ceil = root if root * root == n else root + 1
    return _finish(p, run, n - sqrt_ceil + 1, "monotone", final=vals)


def audit_result(result: SortResult) -> list[str]:
    """
    Independent audit of a sort result: replays the trace, checks that no
    move lowers the adjacency count, that steps cover the move list, and
    that every gain category meets its floor as re-measured on the step's
    own window and mode.  Returns human-readable violations (empty = ok).
    """
    problems: list[str] = []
    vals = list(result.trace.initial.values)
    step_moves = [m for step in result.steps for m in step.moves]
    if result.steps and step_moves != list(result.trace.moves):
        problems.append("steps do not cover the trace moves")
    count = adjacency_count_values(vals)
    for step in result.steps:
        lo, hi = step.window
        before = weight_thirds_values(vals, step.mode, lo, hi, lo + 1)
        for m in step.moves:
            vals = apply_move_values(vals, m)
            now = adjacency_count_values(vals)
            if now < count:
                problems.append(f"adjacency count dropped on {m}")
            count = now
        gain = before - weight_thirds_values(vals, step.mode, lo, hi, lo + 1)
        floor = GAIN_FLOORS.get(step.category)
        if floor is not None and gain < floor:
            problems.append(
                f"{step.category.value} gained {gain} thirds, below floor {floor}"
            )
        if step.claimed_gain is not None and gain != step.claimed_gain:
            problems.append(
                f"{step.category.value} claimed {step.claimed_gain}, measured {gain}"
            )
    if not result.steps:
        for m in result.trace.moves:
            vals = apply_move_values(vals, m)
    if vals != list(range(1, len(vals) + 1)):
        problems.append("trace does not replay to the identity")
    if result.move_count > result.bound:
        problems.append(f"{result.move_count} moves exceeds bound {result.bound}")
    return problems
